//! JSJ descriptors of knot exteriors.
//!
//! A descriptor lists the pieces of the torus decomposition and the tree of
//! gluings between them. The toolkit takes the descriptor on trust beyond the
//! tree, degree and parameter checks below; it never computes a decomposition.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsjError {
    #[error("line {line}: cannot parse `{text}`")]
    Syntax { line: usize, text: String },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("gluing graph is not a tree: {0}")]
    NotATree(String),
    #[error("descriptor has several pieces but no `boundary` statement")]
    MissingBoundary,
    #[error("piece index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("hyperbolic piece is not Seifert fibered")]
    NotSeifert,
    #[error("inconsistent descriptor: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Piece {
    Hyperbolic,
    /// Exterior of the `(r, s)` torus knot.
    TorusKnotExterior {
        r: i64,
        s: i64,
    },
    /// Cable space whose cabling curve runs `winding` times around the core.
    CableSpace {
        winding: i64,
        slope: i64,
    },
    ComposingSpace {
        boundary_count: usize,
    },
}

impl Piece {
    pub fn is_seifert(self) -> bool {
        !matches!(self, Piece::Hyperbolic)
    }

    /// Checks the parameter constraints of the piece.
    pub fn validate(self) -> Result<(), JsjError> {
        match self {
            Piece::Hyperbolic => Ok(()),
            Piece::TorusKnotExterior { r, s } => {
                if r < 2 || s < 2 {
                    Err(JsjError::BadParameters(format!(
                        "torus {r} {s}: both parameters must be at least 2"
                    )))
                } else if r.gcd(&s) != 1 {
                    Err(JsjError::BadParameters(format!(
                        "torus {r} {s}: parameters must be coprime"
                    )))
                } else {
                    Ok(())
                }
            }
            Piece::CableSpace { winding, slope } => {
                if winding < 2 {
                    Err(JsjError::BadParameters(format!(
                        "cable {winding} {slope}: winding must be at least 2"
                    )))
                } else if slope == 0 || winding.gcd(&slope) != 1 {
                    Err(JsjError::BadParameters(format!(
                        "cable {winding} {slope}: slope must be nonzero and coprime to the winding"
                    )))
                } else {
                    Ok(())
                }
            }
            Piece::ComposingSpace { boundary_count } => {
                if boundary_count < 3 {
                    Err(JsjError::BadParameters(format!(
                        "composing {boundary_count}: needs at least 3 boundary tori"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Whether a Seifert piece has an exceptional fiber of even index.
    pub fn is_even_type(self) -> Result<bool, JsjError> {
        match self {
            Piece::Hyperbolic => Err(JsjError::NotSeifert),
            Piece::TorusKnotExterior { r, s } => Ok(r % 2 == 0 || s % 2 == 0),
            Piece::CableSpace { winding, .. } => Ok(winding % 2 == 0),
            Piece::ComposingSpace { .. } => Ok(false),
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Hyperbolic => write!(f, "hyperbolic"),
            Piece::TorusKnotExterior { r, s } => write!(f, "torus {r} {s}"),
            Piece::CableSpace { winding, slope } => write!(f, "cable {winding} {slope}"),
            Piece::ComposingSpace { boundary_count } => write!(f, "composing {boundary_count}"),
        }
    }
}

/// Which item of the classification a knot exterior falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KnotCase {
    Unknot,
    HyperbolicOnly,
    TorusKnot,
    /// Seifert and hyperbolic pieces, no two Seifert pieces adjacent.
    MixedNoSS,
    /// Two Seifert pieces share a boundary torus.
    SSGluing,
}

impl fmt::Display for KnotCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KnotCase::Unknot => "unknot",
            KnotCase::HyperbolicOnly => "hyperbolic_only",
            KnotCase::TorusKnot => "torus_knot",
            KnotCase::MixedNoSS => "mixed_no_ss",
            KnotCase::SSGluing => "ss_gluing",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotJsj {
    pieces: Vec<Piece>,
    /// Unordered pairs stored as `(min, max)`.
    gluings: BTreeSet<(usize, usize)>,
    boundary_piece: usize,
    unknot: bool,
}

impl KnotJsj {
    pub fn unknot() -> Self {
        KnotJsj {
            pieces: Vec::new(),
            gluings: BTreeSet::new(),
            boundary_piece: 0,
            unknot: true,
        }
    }

    /// Builds and validates a descriptor of a nontrivial knot.
    pub fn new(
        pieces: Vec<Piece>,
        gluings: impl IntoIterator<Item = (usize, usize)>,
        boundary_piece: usize,
    ) -> Result<Self, JsjError> {
        let mut set = BTreeSet::new();
        for (a, b) in gluings {
            for i in [a, b] {
                if i >= pieces.len() {
                    return Err(JsjError::IndexOutOfRange(i));
                }
            }
            if a == b {
                return Err(JsjError::NotATree(format!("piece {a} glued to itself")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(JsjError::NotATree(format!(
                    "pieces {a} and {b} glued twice"
                )));
            }
        }
        let j = KnotJsj {
            pieces,
            gluings: set,
            boundary_piece,
            unknot: false,
        };
        j.validate()?;
        Ok(j)
    }

    fn validate(&self) -> Result<(), JsjError> {
        let n = self.pieces.len();
        if n == 0 {
            return Err(JsjError::Inconsistent(
                "a nontrivial knot has at least one piece".into(),
            ));
        }
        if self.boundary_piece >= n {
            return Err(JsjError::IndexOutOfRange(self.boundary_piece));
        }
        for p in &self.pieces {
            p.validate()?;
        }
        if self.gluings.len() != n - 1 {
            return Err(JsjError::NotATree(format!(
                "{n} pieces need {} gluings, found {}",
                n - 1,
                self.gluings.len()
            )));
        }
        // n - 1 edges: a tree iff connected
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(JsjError::NotATree(format!(
                "piece {i} is not connected to piece 0"
            )));
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if let Piece::ComposingSpace { boundary_count } = *p {
                let expected = if i == self.boundary_piece {
                    boundary_count - 1
                } else {
                    boundary_count
                };
                if self.degree(i) != expected {
                    return Err(JsjError::NotATree(format!(
                        "composing space {i} with {boundary_count} boundary tori has {} gluings, expected {expected}",
                        self.degree(i)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_unknot(&self) -> bool {
        self.unknot
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn gluings(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.gluings.iter().copied()
    }

    pub fn boundary_piece(&self) -> usize {
        self.boundary_piece
    }

    pub fn degree(&self, i: usize) -> usize {
        self.gluings
            .iter()
            .filter(|&&(a, b)| a == i || b == i)
            .count()
    }

    fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.gluings.iter().filter_map(move |&(a, b)| {
            if a == i {
                Some(b)
            } else if b == i {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Whether some gluing joins two Seifert fibered pieces.
    pub fn has_ss_gluing(&self) -> bool {
        self.gluings
            .iter()
            .any(|&(a, b)| self.pieces[a].is_seifert() && self.pieces[b].is_seifert())
    }

    pub fn has_even_seifert_piece(&self) -> bool {
        self.even_seifert_pieces().next().is_some()
    }

    /// Indices of the Seifert pieces of even type.
    pub fn even_seifert_pieces(&self) -> impl Iterator<Item = usize> + '_ {
        self.pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_seifert() && p.is_even_type().unwrap_or(false))
            .map(|(i, _)| i)
    }

    /// Checks that torus knot exteriors and cable spaces are glued along
    /// exactly the boundary tori they have.
    fn check_boundary_usage(&self) -> Result<(), JsjError> {
        for (i, p) in self.pieces.iter().enumerate() {
            let tori = match p {
                Piece::TorusKnotExterior { .. } => 1,
                Piece::CableSpace { .. } => 2,
                _ => continue,
            };
            let expected = if i == self.boundary_piece {
                tori - 1
            } else {
                tori
            };
            if self.degree(i) != expected {
                return Err(JsjError::Inconsistent(format!(
                    "piece {i} ({p}) has {tori} boundary tori but {} gluings{}",
                    self.degree(i),
                    if i == self.boundary_piece {
                        " besides the knot boundary"
                    } else {
                        ""
                    }
                )));
            }
        }
        Ok(())
    }

    pub fn knot_case(&self) -> Result<KnotCase, JsjError> {
        if self.unknot {
            return Ok(KnotCase::Unknot);
        }
        self.check_boundary_usage()?;
        if let [Piece::TorusKnotExterior { .. }] = self.pieces.as_slice() {
            return Ok(KnotCase::TorusKnot);
        }
        if self.pieces.iter().all(|p| !p.is_seifert()) {
            return Ok(KnotCase::HyperbolicOnly);
        }
        if self.has_ss_gluing() {
            return Ok(KnotCase::SSGluing);
        }
        Ok(KnotCase::MixedNoSS)
    }

    /// Renders the descriptor in the format read by [`parse_jsj`].
    pub fn to_text(&self) -> String {
        if self.unknot {
            return "unknot\n".to_string();
        }
        let mut out = String::new();
        for p in &self.pieces {
            out.push_str(&format!("{p}\n"));
        }
        for (a, b) in &self.gluings {
            out.push_str(&format!("glue {a} {b}\n"));
        }
        out.push_str(&format!("boundary {}\n", self.boundary_piece));
        out
    }
}

/// Parses `;`- or newline-separated statements. A single-piece descriptor may
/// omit `boundary`.
pub fn parse_jsj(text: &str) -> Result<KnotJsj, JsjError> {
    let mut pieces = Vec::new();
    let mut gluings = Vec::new();
    let mut boundary = None;
    let mut unknot = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for stmt in line.split(';') {
            let tokens: Vec<&str> = stmt.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            let syntax = || JsjError::Syntax {
                line: lineno + 1,
                text: stmt.trim().to_string(),
            };
            let int = |t: &str| t.parse::<i64>().map_err(|_| syntax());
            let idx = |t: &str| t.parse::<usize>().map_err(|_| syntax());
            match tokens.as_slice() {
                ["unknot"] => unknot = true,
                ["hyperbolic"] => pieces.push(Piece::Hyperbolic),
                ["torus", r, s] => pieces.push(Piece::TorusKnotExterior {
                    r: int(r)?,
                    s: int(s)?,
                }),
                ["cable", w, q] => pieces.push(Piece::CableSpace {
                    winding: int(w)?,
                    slope: int(q)?,
                }),
                ["composing", b] => pieces.push(Piece::ComposingSpace {
                    boundary_count: idx(b)?,
                }),
                ["glue", a, b] => gluings.push((idx(a)?, idx(b)?)),
                ["boundary", i] => {
                    if boundary.replace(idx(i)?).is_some() {
                        return Err(syntax());
                    }
                }
                _ => return Err(syntax()),
            }
        }
    }
    if unknot {
        if !pieces.is_empty() || !gluings.is_empty() || boundary.is_some() {
            return Err(JsjError::Inconsistent(
                "`unknot` cannot be combined with pieces".into(),
            ));
        }
        return Ok(KnotJsj::unknot());
    }
    let boundary = match (boundary, pieces.len()) {
        (Some(b), _) => b,
        (None, 1) => 0,
        (None, 0) => return Err(JsjError::Inconsistent("empty descriptor".into())),
        (None, _) => return Err(JsjError::MissingBoundary),
    };
    KnotJsj::new(pieces, gluings, boundary)
}
