//! Exact word problem for torus knot groups and cable space groups.
//!
//! Both groups split as an amalgamated free product `A *_H B` over an
//! infinite cyclic subgroup `H = <h>` that is central:
//!
//! - torus knot group `<x, y | x^r = y^s>`: `A = <x>`, `B = <y>`, `h = x^r = y^s`;
//! - cable space group `<x, y, t | x^r = t^r y^s, [y, t] = 1>`: `A = <x>`,
//!   `B = <y, t> = Z^2`, `h = x^r = t^r y^s`.
//!
//! Because `h` is central, every element has a unique spelling
//! `h^k c_1 c_2 ... c_m` where the `c_i` alternate between nontrivial right
//! coset representatives of `H` in `A` and in `B`. For `A` the
//! representatives are `x^e` with `0 < e < r`. For the torus `B` they are
//! `y^e` with `0 < e < s`. For the cable `B = Z^2` (coordinates: exponent of
//! `y`, exponent of `t`) the subgroup `H` is spanned by `(s, r)`; a vector
//! `(c, d)` with `s d - r c = 1` completes it to a basis, and the
//! representatives are the multiples `m (c, d)` with `m != 0`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmalgamError {
    #[error("bad group selector `{0}` (expected `torus:r,s` or `cable:r,s`)")]
    BadSelector(String),
    #[error("bad group parameters: {0}")]
    BadParameters(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("zero exponent in `{0}`")]
    ZeroExponent(String),
    #[error("cannot parse `{0}`")]
    Syntax(String),
    #[error("words live in different groups")]
    SpecMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X,
    Y,
    T,
}

impl Gen {
    pub fn name(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
            Gen::T => 't',
        }
    }

    fn from_name(s: &str) -> Option<Gen> {
        match s {
            "x" => Some(Gen::X),
            "y" => Some(Gen::Y),
            "t" => Some(Gen::T),
            _ => None,
        }
    }
}

/// Which group the words live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// `<x, y | x^r = y^s>`, `r, s >= 2` coprime.
    Torus { r: i64, s: i64 },
    /// `<x, y, t | x^r = t^r y^s, [y, t] = 1>`, `r >= 2`, `s != 0` coprime.
    /// `transversal = (c, d)` with `s d - r c = 1`.
    Cable {
        r: i64,
        s: i64,
        transversal: (i64, i64),
    },
}

impl GroupSpec {
    pub fn torus(r: i64, s: i64) -> Result<Self, AmalgamError> {
        if r < 2 || s < 2 || r.gcd(&s) != 1 {
            return Err(AmalgamError::BadParameters(format!(
                "torus:{r},{s} needs coprime r, s >= 2"
            )));
        }
        Ok(GroupSpec::Torus { r, s })
    }

    /// Cable space group with the canonical transversal: the solution of
    /// `s d - r c = 1` with `0 <= c < |s|`.
    pub fn cable(r: i64, s: i64) -> Result<Self, AmalgamError> {
        Self::check_cable(r, s)?;
        let m = s.abs();
        let c = if m == 1 {
            0
        } else {
            // r * inv = 1 (mod m), so c = -inv gives r c = -1 (mod m)
            let inv = r.extended_gcd(&m).x;
            (-inv).mod_floor(&m)
        };
        let d = (1 + r * c) / s;
        Ok(GroupSpec::Cable {
            r,
            s,
            transversal: (c, d),
        })
    }

    pub fn cable_with_transversal(
        r: i64,
        s: i64,
        transversal: (i64, i64),
    ) -> Result<Self, AmalgamError> {
        Self::check_cable(r, s)?;
        let (c, d) = transversal;
        if s * d - r * c != 1 {
            return Err(AmalgamError::BadParameters(format!(
                "transversal ({c}, {d}) does not satisfy {s}*d - {r}*c = 1"
            )));
        }
        Ok(GroupSpec::Cable { r, s, transversal })
    }

    fn check_cable(r: i64, s: i64) -> Result<(), AmalgamError> {
        if r < 2 || s == 0 || r.gcd(&s) != 1 {
            return Err(AmalgamError::BadParameters(format!(
                "cable:{r},{s} needs r >= 2 and nonzero s coprime to r"
            )));
        }
        Ok(())
    }

    /// Parses `torus:r,s` or `cable:r,s`.
    pub fn parse(selector: &str) -> Result<Self, AmalgamError> {
        let bad = || AmalgamError::BadSelector(selector.to_string());
        let (kind, params) = selector.trim().split_once(':').ok_or_else(bad)?;
        let (a, b) = params.split_once(',').ok_or_else(bad)?;
        let r: i64 = a.trim().parse().map_err(|_| bad())?;
        let s: i64 = b.trim().parse().map_err(|_| bad())?;
        match kind {
            "torus" => Self::torus(r, s),
            "cable" => Self::cable(r, s),
            _ => Err(bad()),
        }
    }

    /// The power of `x` equal to the central element `h`.
    pub fn r(self) -> i64 {
        match self {
            GroupSpec::Torus { r, .. } | GroupSpec::Cable { r, .. } => r,
        }
    }

    pub fn s(self) -> i64 {
        match self {
            GroupSpec::Torus { s, .. } | GroupSpec::Cable { s, .. } => s,
        }
    }

    pub fn generators(self) -> &'static [Gen] {
        match self {
            GroupSpec::Torus { .. } => &[Gen::X, Gen::Y],
            GroupSpec::Cable { .. } => &[Gen::X, Gen::Y, Gen::T],
        }
    }

    pub fn has_generator(self, g: Gen) -> bool {
        self.generators().contains(&g)
    }

    /// The exceptional fiber `x` has even index.
    pub fn is_even_type(self) -> bool {
        self.r() % 2 == 0
    }

    /// Same group, possibly with a different transversal.
    pub fn same_group(self, other: GroupSpec) -> bool {
        match (self, other) {
            (GroupSpec::Torus { .. }, GroupSpec::Torus { .. }) => self == other,
            (GroupSpec::Cable { r, s, .. }, GroupSpec::Cable { r: r2, s: s2, .. }) => {
                r == r2 && s == s2
            }
            _ => false,
        }
    }

    /// The word `h` spelled as `x^r`.
    pub fn central(self) -> GroupWord {
        GroupWord::power_of(self, Gen::X, self.r())
    }

    /// Splits a `B`-factor element `y^alpha t^beta` into the power of `h` it
    /// contains and its coset representative index.
    fn split_b(self, alpha: &BigInt, beta: &BigInt) -> (BigInt, BigInt) {
        match self {
            GroupSpec::Torus { s, .. } => {
                debug_assert!(beta.is_zero());
                let (k, e) = alpha.div_mod_floor(&BigInt::from(s));
                (k, e)
            }
            GroupSpec::Cable {
                r,
                s,
                transversal: (c, d),
            } => {
                // (alpha, beta) = k (s, r) + m (c, d)
                let k = alpha * d - beta * c;
                let m = beta * s - alpha * r;
                (k, m)
            }
        }
    }

    /// The `B`-factor element `(alpha, beta)` of representative index `m`.
    fn b_element(self, m: &BigInt) -> (BigInt, BigInt) {
        match self {
            GroupSpec::Torus { .. } => (m.clone(), BigInt::zero()),
            GroupSpec::Cable {
                transversal: (c, d),
                ..
            } => (m * c, m * d),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Torus { r, s } => write!(f, "torus:{r},{s}"),
            GroupSpec::Cable { r, s, .. } => write!(f, "cable:{r},{s}"),
        }
    }
}

/// A word in a torus knot or cable space group. Adjacent letters on the same
/// generator are merged and zero exponents dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    spec: GroupSpec,
    letters: Vec<(Gen, BigInt)>,
}

impl GroupWord {
    pub fn identity(spec: GroupSpec) -> Self {
        GroupWord {
            spec,
            letters: Vec::new(),
        }
    }

    pub fn power_of(spec: GroupSpec, g: Gen, exp: impl Into<BigInt>) -> Self {
        assert!(
            spec.has_generator(g),
            "generator {} not in {spec}",
            g.name()
        );
        let mut w = Self::identity(spec);
        w.push(g, exp.into());
        w
    }

    pub fn x(spec: GroupSpec) -> Self {
        Self::power_of(spec, Gen::X, 1)
    }

    pub fn y(spec: GroupSpec) -> Self {
        Self::power_of(spec, Gen::Y, 1)
    }

    pub fn from_letters(
        spec: GroupSpec,
        letters: impl IntoIterator<Item = (Gen, BigInt)>,
    ) -> Result<Self, AmalgamError> {
        let mut w = Self::identity(spec);
        for (g, e) in letters {
            if !spec.has_generator(g) {
                return Err(AmalgamError::UnknownGenerator(g.name().to_string()));
            }
            w.push(g, e);
        }
        Ok(w)
    }

    /// Parses whitespace-separated `gen^exp` tokens; the exponent defaults to 1.
    pub fn parse(text: &str, spec: GroupSpec) -> Result<Self, AmalgamError> {
        let mut w = Self::identity(spec);
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                None => (token, BigInt::one()),
                Some((name, e)) => {
                    let exp: BigInt = e
                        .parse()
                        .map_err(|_| AmalgamError::Syntax(token.to_string()))?;
                    (name, exp)
                }
            };
            let g = Gen::from_name(name)
                .filter(|&g| spec.has_generator(g))
                .ok_or_else(|| AmalgamError::UnknownGenerator(name.to_string()))?;
            if exp.is_zero() {
                return Err(AmalgamError::ZeroExponent(token.to_string()));
            }
            w.push(g, exp);
        }
        Ok(w)
    }

    fn push(&mut self, g: Gen, e: BigInt) {
        if e.is_zero() {
            return;
        }
        if let Some((last, le)) = self.letters.last_mut() {
            if *last == g {
                *le += e;
                if le.is_zero() {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((g, e));
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn letters(&self) -> &[(Gen, BigInt)] {
        &self.letters
    }

    /// Number of merged `gen^exp` tokens.
    pub fn token_count(&self) -> usize {
        self.letters.len()
    }

    fn check_spec(&self, other: &GroupWord) -> Result<(), AmalgamError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(AmalgamError::SpecMismatch)
        }
    }

    /// Concatenation; no normalization happens here.
    pub fn multiply(&self, other: &GroupWord) -> Result<GroupWord, AmalgamError> {
        self.check_spec(other)?;
        let mut w = self.clone();
        for (g, e) in &other.letters {
            w.push(*g, e.clone());
        }
        Ok(w)
    }

    pub fn inverse(&self) -> GroupWord {
        let mut w = Self::identity(self.spec);
        for (g, e) in self.letters.iter().rev() {
            w.push(*g, -e);
        }
        w
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Self::identity(self.spec);
        for _ in 0..n.unsigned_abs() {
            for (g, e) in &base.letters {
                w.push(*g, e.clone());
            }
        }
        w
    }

    /// `g^-1 u g`.
    pub fn conjugate(&self, g: &GroupWord) -> Result<GroupWord, AmalgamError> {
        g.inverse().multiply(self)?.multiply(g)
    }

    /// `u^-1 v^-1 u v`.
    pub fn commutator(&self, v: &GroupWord) -> Result<GroupWord, AmalgamError> {
        self.inverse()
            .multiply(&v.inverse())?
            .multiply(self)?
            .multiply(v)
    }

    pub fn normal_form(&self) -> AmalgamNormalForm {
        let mut nf = Normalizer::new(self.spec);
        for (g, e) in &self.letters {
            nf.push_letter(*g, e);
        }
        nf.finish()
    }

    pub fn is_identity(&self) -> bool {
        self.normal_form().is_identity()
    }

    pub fn equal(&self, other: &GroupWord) -> Result<bool, AmalgamError> {
        Ok(self.multiply(&other.inverse())?.is_identity())
    }

    /// Sum of exponents per generator, in `x, y, t` order.
    pub fn exponent_sums(&self) -> [BigInt; 3] {
        let mut sums = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (g, e) in &self.letters {
            sums[*g as usize] += e;
        }
        sums
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(g, e)| power(g.name(), e))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn power(name: impl fmt::Display, e: &BigInt) -> String {
    if e.is_one() {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

/// A nontrivial coset representative in one of the two factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Syllable {
    /// `x^e`, `0 < e < r`.
    A(BigInt),
    /// Torus: `y^m`, `0 < m < s`. Cable: `y^(c m) t^(d m)`, `m != 0`.
    B(BigInt),
}

/// `h^central_exp` followed by alternating coset representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmalgamNormalForm {
    pub spec: GroupSpec,
    pub central_exp: BigInt,
    pub syllables: Vec<Syllable>,
}

impl AmalgamNormalForm {
    pub fn is_identity(&self) -> bool {
        self.central_exp.is_zero() && self.syllables.is_empty()
    }

    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }

    /// Spells the normal form as a word, `h` written as `x^r`.
    pub fn to_word(&self) -> GroupWord {
        let spec = self.spec;
        let mut w = GroupWord::identity(spec);
        w.push(Gen::X, &self.central_exp * spec.r());
        for syl in &self.syllables {
            match syl {
                Syllable::A(e) => w.push(Gen::X, e.clone()),
                Syllable::B(m) => {
                    let (alpha, beta) = spec.b_element(m);
                    w.push(Gen::Y, alpha);
                    if matches!(spec, GroupSpec::Cable { .. }) {
                        w.push(Gen::T, beta);
                    }
                }
            }
        }
        w
    }
}

impl fmt::Display for AmalgamNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "identity");
        }
        let mut parts = Vec::new();
        if !self.central_exp.is_zero() {
            parts.push(power('h', &self.central_exp));
        }
        for syl in &self.syllables {
            match (syl, self.spec) {
                (Syllable::A(e), _) => parts.push(power('x', e)),
                (Syllable::B(m), GroupSpec::Torus { .. }) => parts.push(power('y', m)),
                (Syllable::B(m), spec) => {
                    let (alpha, beta) = spec.b_element(m);
                    let mut inner = Vec::new();
                    if !alpha.is_zero() {
                        inner.push(power('y', &alpha));
                    }
                    if !beta.is_zero() {
                        inner.push(power('t', &beta));
                    }
                    parts.push(format!("[{}]", inner.join(" ")));
                }
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Left-to-right normalization. The central power accumulates separately;
/// the stack holds alternating nontrivial representatives.
struct Normalizer {
    spec: GroupSpec,
    central: BigInt,
    stack: Vec<Syllable>,
}

impl Normalizer {
    fn new(spec: GroupSpec) -> Self {
        Normalizer {
            spec,
            central: BigInt::zero(),
            stack: Vec::new(),
        }
    }

    fn push_letter(&mut self, g: Gen, e: &BigInt) {
        match g {
            Gen::X => self.push_a(e.clone()),
            Gen::Y => self.push_b(e.clone(), BigInt::zero()),
            Gen::T => self.push_b(BigInt::zero(), e.clone()),
        }
    }

    fn push_a(&mut self, mut e: BigInt) {
        if let Some(Syllable::A(top)) = self.stack.last() {
            e += top;
            self.stack.pop();
        }
        let (k, rem) = e.div_mod_floor(&BigInt::from(self.spec.r()));
        self.central += k;
        if !rem.is_zero() {
            self.stack.push(Syllable::A(rem));
        }
    }

    fn push_b(&mut self, mut alpha: BigInt, mut beta: BigInt) {
        if let Some(Syllable::B(m)) = self.stack.last() {
            let (a0, b0) = self.spec.b_element(m);
            alpha += a0;
            beta += b0;
            self.stack.pop();
        }
        let (k, m) = self.spec.split_b(&alpha, &beta);
        self.central += k;
        if !m.is_zero() {
            self.stack.push(Syllable::B(m));
        }
    }

    fn finish(self) -> AmalgamNormalForm {
        AmalgamNormalForm {
            spec: self.spec,
            central_exp: self.central,
            syllables: self.stack,
        }
    }
}
