//! Group presentations of TRAAGs and their abelianizations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::mixed_graph::MixedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word in the free group on indexed generators. Not necessarily reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverted())
    }

    /// Exponent sum of every generator, indexed by generator.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut sums = vec![0; generator_count];
        for l in &self.0 {
            sums[l.generator] += l.sign();
        }
        sums
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("missing `gens:` header")]
    MissingHeader,
    #[error("line {line}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("line {line}: bad letter `{token}`")]
    BadLetter { line: usize, token: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    fn render_word(&self, w: &Word) -> String {
        w.0.iter()
            .map(|l| {
                let g = &self.generators[l.generator];
                if l.inverse {
                    format!("{g}^-1")
                } else {
                    g.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `gens: a b c` followed by one relator per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.generators.join(" "));
        for r in &self.relators {
            out.push_str(&self.render_word(r));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(PresentationError::MissingHeader)?;
        let gens = header
            .trim()
            .strip_prefix("gens:")
            .ok_or(PresentationError::MissingHeader)?;
        let generators: Vec<String> = gens.split_whitespace().map(str::to_string).collect();
        let mut relators = Vec::new();
        for (i, line) in lines {
            let mut word = Word::new();
            for token in line.split_whitespace() {
                let (name, inverse) = match token.split_once('^') {
                    None => (token, false),
                    Some((name, "-1")) => (name, true),
                    Some((name, "1")) => (name, false),
                    Some(_) => {
                        return Err(PresentationError::BadLetter {
                            line: i + 1,
                            token: token.to_string(),
                        })
                    }
                };
                let generator = generators.iter().position(|g| g == name).ok_or_else(|| {
                    PresentationError::UnknownGenerator {
                        line: i + 1,
                        name: name.to_string(),
                    }
                })?;
                word.0.push(Letter { generator, inverse });
            }
            relators.push(word);
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
        write!(
            f,
            "< {} | {} >",
            self.generators.join(", "),
            rels.join(", ")
        )
    }
}

/// The TRAAG presentation of `g`: `x y x^-1 y^-1` for each undirected edge
/// and `x y x y^-1` for each directed edge with tail `x` and head `y`.
pub fn traag_presentation(g: &MixedGraph) -> Presentation {
    let idx = |label: &str| g.vertex_index(label).expect("edge endpoints are vertices");
    let mut relators = Vec::with_capacity(g.edge_count());
    for (a, b) in g.undirected_edges() {
        let (x, y) = (idx(a), idx(b));
        relators.push(Word(vec![
            Letter::new(x),
            Letter::new(y),
            Letter::inv(x),
            Letter::inv(y),
        ]));
    }
    for (tail, head) in g.directed_edges() {
        let (x, y) = (idx(tail), idx(head));
        relators.push(Word(vec![
            Letter::new(x),
            Letter::new(y),
            Letter::new(x),
            Letter::inv(y),
        ]));
    }
    Presentation {
        generators: g.labels().to_vec(),
        relators,
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix, all
/// positive.
pub fn smith_normal_form(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot_row = a[t][t..cols].to_vec();
                for (x, p) in a[i][t..cols].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // pivot must divide the rest of the block
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let other = a[i][t..cols].to_vec();
                    for (x, v) in a[t][t..cols].iter_mut().zip(other) {
                        *x += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn smallest_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Invariants of a finitely generated abelian group `Z^free_rank + sum Z/t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Invariant factors, each at least 2 and dividing the next.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&u| u == t).count();
            if run == 1 {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("(Z/{t})^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Abelianization of a presentation from the relator exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let n = p.generators.len();
    let matrix: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| r.exponent_sums(n).into_iter().map(BigInt::from).collect())
        .collect();
    let factors = smith_normal_form(&matrix);
    let free_rank = n - factors.len();
    let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
    AbelianInvariants { free_rank, torsion }
}
