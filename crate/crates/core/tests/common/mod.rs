//! Shared test support: seeded generators and independent oracles.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use traag::amalgam::{Gen, GroupSpec, GroupWord};
use traag::mixed_graph::MixedGraph;

/// RNG seeded from `TRAAG_SEED` when set, else from `default`.
pub fn rng(default: u64) -> ChaCha8Rng {
    let seed = std::env::var("TRAAG_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default);
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random mixed graph on `n` vertices `v0..`; each pair independently gets no
/// edge, an undirected edge, or a directed edge in a random orientation.
pub fn random_graph(rng: &mut impl Rng, n: usize, edge_prob: f64, arc_prob: f64) -> MixedGraph {
    let mut g = MixedGraph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}"));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !rng.gen_bool(edge_prob) {
                continue;
            }
            let (a, b) = (format!("v{i}"), format!("v{j}"));
            if rng.gen_bool(arc_prob) {
                if rng.gen_bool(0.5) {
                    g.add_directed(&a, &b).unwrap();
                } else {
                    g.add_directed(&b, &a).unwrap();
                }
            } else {
                g.add_undirected(&a, &b).unwrap();
            }
        }
    }
    g
}

/// Number of mixed graphs on `n` labelled vertices.
pub fn graph_count(n: usize) -> usize {
    4usize.pow((n * n.saturating_sub(1) / 2) as u32)
}

/// The `code`-th mixed graph on vertices `v0..v(n-1)`, `code < graph_count(n)`:
/// each pair is absent, undirected, or directed either way.
pub fn graph_from_code(n: usize, mut code: usize) -> MixedGraph {
    let mut g = MixedGraph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}"));
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (format!("v{i}"), format!("v{j}"));
            match code % 4 {
                0 => {}
                1 => g.add_undirected(&a, &b).unwrap(),
                2 => g.add_directed(&a, &b).unwrap(),
                _ => g.add_directed(&b, &a).unwrap(),
            }
            code /= 4;
        }
    }
    g
}

pub fn all_graphs(n: usize) -> impl Iterator<Item = MixedGraph> {
    (0..graph_count(n)).map(move |c| graph_from_code(n, c))
}

/// Random word in the group's alphabet with small nonzero exponents.
pub fn random_word(rng: &mut impl Rng, spec: GroupSpec, max_len: usize) -> GroupWord {
    let gens = spec.generators();
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| {
        let g = gens[rng.gen_range(0..gens.len())];
        let mut e: i64 = rng.gen_range(-5..=5);
        if e == 0 {
            e = 1;
        }
        (g, BigInt::from(e))
    });
    GroupWord::from_letters(spec, letters).unwrap()
}

/// Every word of length `len` over `{x, x^-1, y, y^-1}`, as a letter string
/// with `X`, `Y` for the inverses.
pub fn all_words(len: usize) -> Vec<String> {
    let alphabet = ['x', 'X', 'y', 'Y'];
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| alphabet.iter().map(move |&c| format!("{w}{c}")))
            .collect();
    }
    out
}

pub fn letters_to_word(spec: GroupSpec, s: &str) -> GroupWord {
    let letters = s.chars().map(|c| match c {
        'x' => (Gen::X, BigInt::from(1)),
        'X' => (Gen::X, BigInt::from(-1)),
        'y' => (Gen::Y, BigInt::from(1)),
        'Y' => (Gen::Y, BigInt::from(-1)),
        _ => panic!("bad letter {c}"),
    });
    GroupWord::from_letters(spec, letters).unwrap()
}

/// Naive string-rewriting normal form for `<x, y | x^r = y^s>`.
///
/// Words are strings over `x X y Y`; the central element `h` is tracked as a
/// counter. Rules, applied anywhere until none applies:
/// cancel `xX Xx yY Yy`; rewrite `X -> h^-1 x^(r-1)` and `Y -> h^-1 y^(s-1)`;
/// rewrite a run `x^r` or `y^s` to `h`. The fixpoint is `h^k` times an
/// alternating string of positive runs shorter than `r` and `s`.
pub fn rewrite_normal_form(word: &str, r: usize, s: usize) -> (i64, String) {
    let mut w: Vec<char> = word.chars().collect();
    let mut central = 0i64;
    let xr: Vec<char> = vec!['x'; r];
    let ys: Vec<char> = vec!['y'; s];
    loop {
        if let Some(i) = w.windows(2).position(|p| {
            matches!(
                (p[0], p[1]),
                ('x', 'X') | ('X', 'x') | ('y', 'Y') | ('Y', 'y')
            )
        }) {
            w.drain(i..i + 2);
            continue;
        }
        if let Some(i) = w.iter().position(|&c| c == 'X' || c == 'Y') {
            let (c, n) = if w[i] == 'X' {
                ('x', r - 1)
            } else {
                ('y', s - 1)
            };
            w.splice(i..i + 1, std::iter::repeat_n(c, n));
            central -= 1;
            continue;
        }
        if let Some(i) = w.windows(r).position(|p| p == xr.as_slice()) {
            w.drain(i..i + r);
            central += 1;
            continue;
        }
        if let Some(i) = w.windows(s).position(|p| p == ys.as_slice()) {
            w.drain(i..i + s);
            central += 1;
            continue;
        }
        break;
    }
    (central, w.into_iter().collect())
}

pub fn rewrite_is_identity(word: &str, r: usize, s: usize) -> bool {
    rewrite_normal_form(word, r, s) == (0, String::new())
}

/// Laurent polynomial in `t` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent(BTreeMap<i32, i128>);

impl Laurent {
    pub fn mono(c: i128, deg: i32) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(deg, c);
        }
        Laurent(m)
    }

    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut m = self.0.clone();
        for (&d, &c) in &o.0 {
            let e = m.entry(d).or_insert(0);
            *e += c;
            if *e == 0 {
                m.remove(&d);
            }
        }
        Laurent(m)
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&d1, &c1) in &self.0 {
            for (&d2, &c2) in &o.0 {
                out = out.add(&Laurent::mono(c1 * c2, d1 + d2));
            }
        }
        out
    }
}

pub type Mat2 = [[Laurent; 2]; 2];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_identity() -> Mat2 {
    [
        [Laurent::mono(1, 0), Laurent::zero()],
        [Laurent::zero(), Laurent::mono(1, 0)],
    ]
}

/// Reduced Burau matrices of the braid generators of `B_3` and their inverses.
pub fn burau_sigma() -> [Mat2; 4] {
    let m = |c: i128, d: i32| Laurent::mono(c, d);
    let s1 = [[m(-1, 1), m(1, 0)], [m(0, 0), m(1, 0)]];
    let s1i = [[m(-1, -1), m(1, -1)], [m(0, 0), m(1, 0)]];
    let s2 = [[m(1, 0), m(0, 0)], [m(1, 1), m(-1, 1)]];
    let s2i = [[m(1, 0), m(0, 0)], [m(1, 0), m(-1, -1)]];
    [s1, s1i, s2, s2i]
}

/// Matrices of `x = s1 s2 s1` and `y = s1 s2` and their inverses, under the
/// isomorphism `<x, y | x^2 = y^3>` to `B_3`.
pub struct BurauTrefoil {
    x: Mat2,
    xi: Mat2,
    y: Mat2,
    yi: Mat2,
}

impl BurauTrefoil {
    pub fn new() -> Self {
        let [s1, s1i, s2, s2i] = burau_sigma();
        BurauTrefoil {
            x: mat_mul(&mat_mul(&s1, &s2), &s1),
            xi: mat_mul(&mat_mul(&s1i, &s2i), &s1i),
            y: mat_mul(&s1, &s2),
            yi: mat_mul(&s2i, &s1i),
        }
    }

    pub fn eval(&self, word: &str) -> Mat2 {
        word.chars().fold(mat_identity(), |acc, c| {
            let m = match c {
                'x' => &self.x,
                'X' => &self.xi,
                'y' => &self.y,
                'Y' => &self.yi,
                _ => panic!("bad letter {c}"),
            };
            mat_mul(&acc, m)
        })
    }

    pub fn is_identity(&self, word: &str) -> bool {
        self.eval(word) == mat_identity()
    }
}

/// Invariant factors of a small integer matrix from determinantal divisors:
/// `d_k` is the gcd of all `k x k` minors and the factors are `d_k / d_(k-1)`.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i64;
    for k in 1..=rows.min(cols) {
        let mut g = 0i64;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j]).collect())
                    .collect();
                g = gcd(g, det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Laplace expansion; only for tiny matrices.
fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// Definition-level sink star test: `n + 1` vertices, `n` edges, all
/// directed, one common head.
pub fn is_sink_star_by_definition(g: &MixedGraph) -> Option<usize> {
    let n = g.vertex_count();
    if n < 2 || g.undirected_edges().count() != 0 {
        return None;
    }
    let arcs: Vec<(&str, &str)> = g.directed_edges().collect();
    if arcs.len() != n - 1 {
        return None;
    }
    let head = arcs[0].1;
    if arcs.iter().all(|&(_, h)| h == head) {
        Some(n - 1)
    } else {
        None
    }
}
