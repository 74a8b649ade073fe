//! The sink-star group and its embedding into torus knot and cable space
//! groups.
//!
//! `A(S_n) = <a, b_1, ..., b_n | b_i a b_i = a>`. The relation says that
//! conjugation by `a` inverts every `b_i`, so `A(S_n)` is the semidirect
//! product `F_n ⋊ Z` and every element is uniquely `a^k f` with `f` a reduced
//! word in the `b_i`.
//!
//! With `r = 2p`, sending `a` to `x^p` and `b_i` to `z_i = [x^p, (yxy)^i]`
//! defines a homomorphism into the torus knot or cable space group. The
//! relators are checked exactly with the amalgam engine, and injectivity is
//! certified on every element of a bounded ball.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::amalgam::{Gen, GroupSpec, GroupWord};
use crate::mixed_graph::MixedGraph;
use crate::presentation::{traag_presentation, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("leaf index {index} out of range for a sink star with {rank} leaves")]
    BadGeneratorIndex { index: usize, rank: usize },
    #[error("elements of sink star groups with {0} and {1} leaves cannot be multiplied")]
    RankMismatch(usize, usize),
    #[error("{0} is not of even type: the x-exponent of the central element must be even")]
    NotEvenType(GroupSpec),
    #[error("a sink star needs at least one leaf")]
    EmptySinkStar,
    #[error("assignment has no image for generator `{0}`")]
    MissingGenerator(String),
    #[error("relators are not preserved, so the assignment is not a homomorphism")]
    RelatorsNotVerified,
}

pub const HEAD: &str = "a";

pub fn leaf_label(i: usize) -> String {
    format!("b{}", i + 1)
}

/// The sink star with head `a` and leaves `b1..bn`.
pub fn sink_star_graph(n: usize) -> MixedGraph {
    let mut g = MixedGraph::new();
    g.add_vertex(HEAD);
    for i in 0..n {
        g.add_directed(&leaf_label(i), HEAD).expect("fresh leaf");
    }
    g
}

/// `a^a_exp · free_word` in `A(S_rank)`. Letter generator `i` is the leaf `b_(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SinkStarElement {
    rank: usize,
    a_exp: i64,
    free_word: Word,
}

/// The automorphism `b_i -> b_i^-1`: inverts each letter without reversing.
fn flip(w: &Word) -> Word {
    w.letters().iter().map(|l| l.inverted()).collect()
}

impl SinkStarElement {
    pub fn identity(rank: usize) -> Self {
        SinkStarElement {
            rank,
            a_exp: 0,
            free_word: Word::new(),
        }
    }

    /// Normal form of `a^k · raw`.
    pub fn normalize(rank: usize, k: i64, raw: &Word) -> Result<Self, EmbedError> {
        if let Some(l) = raw.letters().iter().find(|l| l.generator >= rank) {
            return Err(EmbedError::BadGeneratorIndex {
                index: l.generator,
                rank,
            });
        }
        Ok(SinkStarElement {
            rank,
            a_exp: k,
            free_word: raw.free_reduce(),
        })
    }

    pub fn head(rank: usize) -> Self {
        SinkStarElement {
            rank,
            a_exp: 1,
            free_word: Word::new(),
        }
    }

    pub fn leaf(rank: usize, i: usize) -> Result<Self, EmbedError> {
        Self::normalize(rank, 0, &Word(vec![Letter::new(i)]))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn a_exp(&self) -> i64 {
        self.a_exp
    }

    pub fn free_word(&self) -> &Word {
        &self.free_word
    }

    pub fn is_identity(&self) -> bool {
        self.a_exp == 0 && self.free_word.is_empty()
    }

    /// `(k, f)(l, g) = (k + l, phi^l(f) g)` where `phi` inverts each leaf.
    pub fn multiply(&self, other: &Self) -> Result<Self, EmbedError> {
        if self.rank != other.rank {
            return Err(EmbedError::RankMismatch(self.rank, other.rank));
        }
        let twisted = if other.a_exp % 2 == 0 {
            self.free_word.clone()
        } else {
            flip(&self.free_word)
        };
        Ok(SinkStarElement {
            rank: self.rank,
            a_exp: self.a_exp + other.a_exp,
            free_word: twisted.concat(&other.free_word).free_reduce(),
        })
    }

    pub fn inverse(&self) -> Self {
        let inv = self.free_word.inverse();
        let free_word = if self.a_exp % 2 == 0 { inv } else { flip(&inv) };
        SinkStarElement {
            rank: self.rank,
            a_exp: -self.a_exp,
            free_word,
        }
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &Self) -> Result<Self, EmbedError> {
        g.inverse().multiply(self)?.multiply(g)
    }
}

impl fmt::Display for SinkStarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a_exp, render_leaves(&self.free_word))
    }
}

fn render_leaves(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.letters()
        .iter()
        .map(|l| {
            let name = leaf_label(l.generator);
            if l.inverse {
                format!("{name}^-1")
            } else {
                name
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Images of TRAAG generators, keyed by vertex label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub spec: GroupSpec,
    pub images: BTreeMap<String, GroupWord>,
}

impl Assignment {
    pub fn new(spec: GroupSpec) -> Self {
        Assignment {
            spec,
            images: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, label: impl Into<String>, image: GroupWord) {
        assert_eq!(image.spec(), self.spec);
        self.images.insert(label.into(), image);
    }

    pub fn image(&self, label: &str) -> Result<&GroupWord, EmbedError> {
        self.images
            .get(label)
            .ok_or_else(|| EmbedError::MissingGenerator(label.to_string()))
    }
}

/// `a -> x^p` and `b_i -> [x^p, (yxy)^i]` where the group has `r = 2p`.
pub fn build_assignment(n: usize, spec: GroupSpec) -> Result<Assignment, EmbedError> {
    if !spec.is_even_type() {
        return Err(EmbedError::NotEvenType(spec));
    }
    if n == 0 {
        return Err(EmbedError::EmptySinkStar);
    }
    let xp = GroupWord::power_of(spec, Gen::X, spec.r() / 2);
    let yxy = GroupWord::parse("y x y", spec).expect("y and x exist in every spec");
    let mut asg = Assignment::new(spec);
    asg.insert(HEAD, xp.clone());
    for i in 0..n {
        let z = xp.commutator(&yxy.pow(i as i64 + 1)).expect("same spec");
        asg.insert(leaf_label(i), z);
    }
    Ok(asg)
}

/// True iff every relator of the TRAAG of `g` maps to the identity.
pub fn verify_relators(asg: &Assignment, g: &MixedGraph) -> Result<bool, EmbedError> {
    let p = traag_presentation(g);
    let images: Vec<&GroupWord> = p
        .generators
        .iter()
        .map(|label| asg.image(label))
        .collect::<Result<_, _>>()?;
    let inverses: Vec<GroupWord> = images.iter().map(|w| w.inverse()).collect();
    for rel in &p.relators {
        let mut w = GroupWord::identity(asg.spec);
        for l in rel.letters() {
            let piece = if l.inverse {
                &inverses[l.generator]
            } else {
                images[l.generator]
            };
            w = w.multiply(piece).expect("same spec");
        }
        if !w.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image of `a^k f` as `asg(a)^k · asg(f)`.
pub fn evaluate(asg: &Assignment, e: &SinkStarElement) -> Result<GroupWord, EmbedError> {
    let head = asg.image(HEAD)?;
    let leaves: Vec<&GroupWord> = (0..e.rank())
        .map(|i| asg.image(&leaf_label(i)))
        .collect::<Result<_, _>>()?;
    let mut w = head.pow(e.a_exp());
    for l in e.free_word().letters() {
        let img = if l.inverse {
            leaves[l.generator].inverse()
        } else {
            leaves[l.generator].clone()
        };
        w = w.multiply(&img).expect("same spec");
    }
    Ok(w)
}

/// Outcome of a bounded injectivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityReport {
    /// Nonidentity elements examined.
    pub checked: usize,
    /// Nonidentity elements mapped to the identity, sorted.
    pub violations: Vec<SinkStarElement>,
}

impl InjectivityReport {
    pub fn is_injective_on_ball(&self) -> bool {
        self.violations.is_empty()
    }

    /// `checked=<N> violations=<M>` followed by one `(k, word)` per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "checked={} violations={}\n",
            self.checked,
            self.violations.len()
        );
        for v in &self.violations {
            out.push_str(&format!("{v}\n"));
        }
        out
    }
}

/// Every reduced word over `rank` generators of length at most `max_len`,
/// shortest first and lexicographic within a length.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (0..rank)
        .flat_map(|i| [Letter::new(i), Letter::inv(i)])
        .collect();
    let mut out = vec![Word::new()];
    let mut frontier = vec![Word::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &alphabet {
                if w.letters().last() == Some(&l.inverted()) {
                    continue;
                }
                let mut v = w.clone();
                v.0.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every nonidentity `a^k f` with `|k| + len(f) <= bound`.
pub fn ball(rank: usize, bound: usize) -> Vec<SinkStarElement> {
    let words = reduced_words(rank, bound);
    let b = bound as i64;
    let mut out = Vec::new();
    for k in -b..=b {
        let max_len = (b - k.abs()) as usize;
        for w in words.iter().take_while(|w| w.len() <= max_len) {
            if k == 0 && w.is_empty() {
                continue;
            }
            out.push(SinkStarElement {
                rank,
                a_exp: k,
                free_word: w.clone(),
            });
        }
    }
    out
}

/// Checks that no nonidentity element of the ball of radius `bound` in
/// `A(S_n)` maps to the identity. Refuses to run unless the relators hold.
pub fn verify_injectivity_bounded(
    asg: &Assignment,
    n: usize,
    bound: usize,
) -> Result<InjectivityReport, EmbedError> {
    if !verify_relators(asg, &sink_star_graph(n))? {
        return Err(EmbedError::RelatorsNotVerified);
    }
    let elements = ball(n, bound);
    let mut violations = elements
        .par_iter()
        .map(|e| evaluate(asg, e).map(|w| (e, w.is_identity())))
        .filter_map(|res| match res {
            Ok((e, true)) => Some(Ok(e.clone())),
            Ok((_, false)) => None,
            Err(err) => Some(Err(err)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    violations.sort();
    Ok(InjectivityReport {
        checked: elements.len(),
        violations,
    })
}
