//! Sparse Laurent polynomials with arbitrary-precision integer coefficients.
//!
//! [`Laurent<E>`] is generic over its exponent type: `i64` gives the
//! one-variable ring `Z[q, q^-1]` ([`LPoly1`]) and [`Exp2`] gives the
//! two-variable ring `Z[q1^±1, q2^±1]` ([`LPoly2`]). Terms live in a
//! `BTreeMap`, so iteration is always in ascending exponent order
//! (lexicographic for two variables) and no stored coefficient is zero.
//!
//! [`FracPair`] is a numerator/denominator pair that is only ever normalized
//! by monomials; no polynomial GCD is taken anywhere in this crate.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("operands have different arity ({left} vs {right} variables)")]
    ArityMismatch { left: usize, right: usize },
    #[error("substitution `{rule}` needs a {expected}-variable polynomial")]
    WrongArity { rule: &'static str, expected: usize },
    #[error("exponent pairs do not lie on a single line e1 + e2 = c (found sums {0:?})")]
    NotOnLine(Vec<i64>),
    #[error("0/0 is not a fraction")]
    ZeroOverZero,
}

/// Exponent monoid for [`Laurent`].
pub trait Exponent:
    Copy + Ord + Hash + fmt::Debug + Default + Add<Output = Self> + Neg<Output = Self>
{
}

impl Exponent for i64 {}

/// Exponent pair `(e1, e2)` of the monomial `q1^e1 q2^e2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exp2 {
    pub e1: i64,
    pub e2: i64,
}

impl Exp2 {
    pub const fn new(e1: i64, e2: i64) -> Self {
        Exp2 { e1, e2 }
    }

    /// `e1 + e2`, the line the monomial sits on.
    pub fn total(self) -> i64 {
        self.e1 + self.e2
    }
}

impl Add for Exp2 {
    type Output = Exp2;
    fn add(self, rhs: Exp2) -> Exp2 {
        Exp2::new(self.e1 + rhs.e1, self.e2 + rhs.e2)
    }
}

impl Neg for Exp2 {
    type Output = Exp2;
    fn neg(self) -> Exp2 {
        Exp2::new(-self.e1, -self.e2)
    }
}

impl Exponent for Exp2 {}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<E: Exponent> {
    terms: BTreeMap<E, BigInt>,
}

pub type LPoly1 = Laurent<i64>;
pub type LPoly2 = Laurent<Exp2>;

impl<E: Exponent> Laurent<E> {
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(E::default(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(E::default(), c)
    }

    pub fn monomial(exp: E, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents and dropping zero sums.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (E, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: E, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (E, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: E) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<E> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<E> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the smallest exponent.
    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    /// Multiplication by the monomial `x^shift`.
    pub fn shift(&self, shift: E) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e + shift, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    /// Applies an exponent map; colliding images are summed.
    pub fn map_exponents<F: Exponent>(&self, f: impl Fn(E) -> F) -> Laurent<F> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    /// Sum of all coefficients, i.e. the value at every variable equal to 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl LPoly1 {
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q^e` with coefficient one.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, 1)
    }

    /// `q -> q^-1`.
    pub fn invert_q(&self) -> Self {
        self.map_exponents(|e: i64| -e)
    }

    /// Evaluation at an integer point `q = x` with `x` invertible (`±1`), or
    /// at any `x` when all exponents are nonnegative.
    pub fn eval_int(&self, x: i64) -> Option<BigInt> {
        let x = BigInt::from(x);
        let mut acc = BigInt::zero();
        for (e, c) in self.terms() {
            let term = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else if x.abs().is_one() {
                num_traits::pow(x.clone(), (-e) as usize)
            } else {
                return None;
            };
            acc += c * term;
        }
        Some(acc)
    }
}

/// Result of rewriting a two-variable polynomial on one line
/// `e1 + e2 = prefactor` as `q1^prefactor * poly(q1^-1 q2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapsed {
    pub prefactor: i64,
    pub poly: LPoly1,
}

impl Collapsed {
    /// Re-expands into two variables.
    pub fn expand(&self) -> LPoly2 {
        let c = self.prefactor;
        self.poly.map_exponents(|e: i64| Exp2::new(c - e, e))
    }
}

impl LPoly2 {
    pub fn q1() -> Self {
        Self::monomial(Exp2::new(1, 0), 1)
    }

    pub fn q2() -> Self {
        Self::monomial(Exp2::new(0, 1), 1)
    }

    pub fn mono(e1: i64, e2: i64) -> Self {
        Self::monomial(Exp2::new(e1, e2), 1)
    }

    /// `q2 -> q1^n`, giving a one-variable polynomial in `q1`.
    pub fn set_q2_to_q1_pow(&self, n: i64) -> LPoly1 {
        self.map_exponents(|e: Exp2| e.e1 + n * e.e2)
    }

    /// Rewrites in the single variable `q = q1^-1 q2`.
    ///
    /// Every exponent pair must satisfy `e1 + e2 = c` for one common `c`;
    /// the zero polynomial collapses with prefactor 0.
    pub fn collapse_to_single(&self) -> Result<Collapsed, LaurentError> {
        let mut sums: Vec<i64> = self.terms.keys().map(|e| e.total()).collect();
        sums.dedup();
        sums.sort_unstable();
        sums.dedup();
        if sums.len() > 1 {
            return Err(LaurentError::NotOnLine(sums));
        }
        let prefactor = sums.first().copied().unwrap_or(0);
        Ok(Collapsed {
            prefactor,
            poly: self.map_exponents(|e: Exp2| e.e2),
        })
    }

    /// Embeds a polynomial in `q` via `q -> q1^-1 q2`.
    pub fn from_q1inv_q2(p: &LPoly1) -> Self {
        p.map_exponents(|e: i64| Exp2::new(-e, e))
    }
}

impl<E: Exponent> Add for &Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<E: Exponent> Add for Laurent<E> {
    type Output = Laurent<E>;
    fn add(mut self, rhs: Laurent<E>) -> Laurent<E> {
        self += &rhs;
        self
    }
}

impl<E: Exponent> AddAssign<&Laurent<E>> for Laurent<E> {
    fn add_assign(&mut self, rhs: &Laurent<E>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<E: Exponent> Neg for &Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        -&self
    }
}

impl<E: Exponent> Sub for &Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<E: Exponent> Sub for Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, rhs: Laurent<E>) -> Laurent<E> {
        &self - &rhs
    }
}

impl<E: Exponent> Mul for &Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(*ea + *eb, ca * cb);
            }
        }
        out
    }
}

impl<E: Exponent> Mul for Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, rhs: Laurent<E>) -> Laurent<E> {
        &self * &rhs
    }
}

impl<E: Exponent> std::iter::Sum for Laurent<E> {
    fn sum<I: Iterator<Item = Laurent<E>>>(iter: I) -> Self {
        iter.fold(Laurent::zero(), |acc, p| acc + p)
    }
}

// ---------------------------------------------------------------------------
// Dynamic-arity wrapper
// ---------------------------------------------------------------------------

/// A one- or two-variable polynomial, for callers that only know the arity
/// at run time (the CLI, JSON input).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LPoly {
    One(LPoly1),
    Two(LPoly2),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    InvertQ,
    SetQ2ToQ1Pow(i64),
    CollapseToSingle,
}

/// Output of [`LPoly::substitute`]: collapsing also reports the prefactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Substituted {
    Poly(LPoly1),
    Collapsed(Collapsed),
}

impl LPoly {
    pub fn arity(&self) -> usize {
        match self {
            LPoly::One(_) => 1,
            LPoly::Two(_) => 2,
        }
    }

    pub fn arith(&self, rhs: &LPoly, op: ArithOp) -> Result<LPoly, LaurentError> {
        fn apply<E: Exponent>(a: &Laurent<E>, b: &Laurent<E>, op: ArithOp) -> Laurent<E> {
            match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
            }
        }
        match (self, rhs) {
            (LPoly::One(a), LPoly::One(b)) => Ok(LPoly::One(apply(a, b, op))),
            (LPoly::Two(a), LPoly::Two(b)) => Ok(LPoly::Two(apply(a, b, op))),
            _ => Err(LaurentError::ArityMismatch {
                left: self.arity(),
                right: rhs.arity(),
            }),
        }
    }

    pub fn neg(&self) -> LPoly {
        match self {
            LPoly::One(a) => LPoly::One(-a),
            LPoly::Two(a) => LPoly::Two(-a),
        }
    }

    pub fn eval_ones(&self) -> BigInt {
        match self {
            LPoly::One(a) => a.eval_ones(),
            LPoly::Two(a) => a.eval_ones(),
        }
    }

    pub fn substitute(&self, rule: Substitution) -> Result<Substituted, LaurentError> {
        match (self, rule) {
            (LPoly::One(p), Substitution::InvertQ) => Ok(Substituted::Poly(p.invert_q())),
            (LPoly::Two(p), Substitution::SetQ2ToQ1Pow(n)) => {
                Ok(Substituted::Poly(p.set_q2_to_q1_pow(n)))
            }
            (LPoly::Two(p), Substitution::CollapseToSingle) => {
                p.collapse_to_single().map(Substituted::Collapsed)
            }
            (_, Substitution::InvertQ) => Err(LaurentError::WrongArity {
                rule: "invert_q",
                expected: 1,
            }),
            (_, Substitution::SetQ2ToQ1Pow(_)) => Err(LaurentError::WrongArity {
                rule: "set_q2_to_q1_pow",
                expected: 2,
            }),
            (_, Substitution::CollapseToSingle) => Err(LaurentError::WrongArity {
                rule: "collapse_to_single",
                expected: 2,
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Fractions normalized by monomials
// ---------------------------------------------------------------------------

/// `num / den` over `Z[q, q^-1]`. The zero denominator is allowed only as the
/// value infinity (`1/0` after normalization).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracPair {
    pub num: LPoly1,
    pub den: LPoly1,
}

impl FracPair {
    pub fn new(num: LPoly1, den: LPoly1) -> Result<Self, LaurentError> {
        if num.is_zero() && den.is_zero() {
            return Err(LaurentError::ZeroOverZero);
        }
        Ok(FracPair { num, den })
    }

    pub fn infinity() -> Self {
        FracPair {
            num: LPoly1::one(),
            den: LPoly1::zero(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    /// Canonical representative: strip the common power of `q`, then make the
    /// lowest coefficient of the denominator positive (of the numerator when
    /// the denominator is zero).
    pub fn normalize(&self) -> Result<FracPair, LaurentError> {
        let k = match (self.num.min_exp(), self.den.min_exp()) {
            (None, None) => return Err(LaurentError::ZeroOverZero),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        let mut num = self.num.shift(-k);
        let mut den = self.den.shift(-k);
        let sign_source = if den.is_zero() { &num } else { &den };
        if sign_source.lowest_coeff().is_some_and(|c| c.is_negative()) {
            num = -num;
            den = -den;
        }
        Ok(FracPair { num, den })
    }

    /// `num(1) / den(1)` as an integer pair.
    pub fn eval_ones(&self) -> (BigInt, BigInt) {
        (self.num.eval_ones(), self.den.eval_ones())
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Variable naming for rendering a monomial.
pub trait RenderExponent: Exponent {
    /// `None` for the unit monomial.
    fn monomial_text(self, mul: &str) -> Option<String>;
    fn is_unit(self) -> bool {
        self == Self::default()
    }
}

fn power(var: &str, e: i64) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

impl RenderExponent for i64 {
    fn monomial_text(self, _mul: &str) -> Option<String> {
        (self != 0).then(|| power("q", self))
    }
}

impl RenderExponent for Exp2 {
    fn monomial_text(self, mul: &str) -> Option<String> {
        let parts: Vec<String> = [("q1", self.e1), ("q2", self.e2)]
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|(v, e)| power(v, e))
            .collect();
        (!parts.is_empty()).then(|| parts.join(mul))
    }
}

fn term_body<E: RenderExponent>(e: E, mag: &BigInt, mul: &str) -> String {
    match e.monomial_text(mul) {
        None => mag.to_string(),
        Some(m) if mag.is_one() => m,
        Some(m) => format!("{mag}{mul}{m}"),
    }
}

impl<E: RenderExponent> Laurent<E> {
    /// Ascending terms joined by `" + "` / `" − "`, coefficients as `c·q^e`.
    pub fn render_plain(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let body = term_body(e, &c.abs(), "·");
            match (i, c.is_negative()) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push_str("− ");
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" − ");
                    out.push_str(&body);
                }
            }
        }
        out
    }

    /// Descending ASCII form without spaces, e.g. `q^3+q^2+1`.
    pub fn render_compact(&self) -> String {
        self.render_compact_by(|e| e.monomial_text("*"))
    }

    fn render_compact_by(&self, mono: impl Fn(E) -> Option<String>) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            let body = match mono(e) {
                None => mag.to_string(),
                Some(m) if mag.is_one() => m,
                Some(m) => format!("{mag}*{m}"),
            };
            if c.is_negative() {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            out.push_str(&body);
        }
        out
    }
}

impl LPoly1 {
    /// [`render_compact`](Laurent::render_compact) with another variable name.
    pub fn render_compact_var(&self, var: &str) -> String {
        self.render_compact_by(|e| (e != 0).then(|| power(var, e)))
    }
}

impl<E: RenderExponent> fmt::Display for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

impl<E: RenderExponent> fmt::Debug for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self.render_compact())
    }
}

impl FracPair {
    /// `(q^3+q^2+1)/(q^2+1)`, `-(q+1)/q^2`, `0/1`.
    pub fn render_compact(&self) -> String {
        fn wrap(p: &LPoly1) -> String {
            if p.len() > 1 {
                format!("({})", p.render_compact())
            } else {
                p.render_compact()
            }
        }
        let negative = !self.num.is_zero() && self.num.terms().all(|(_, c)| c.is_negative());
        if negative {
            format!("-{}/{}", wrap(&-&self.num), wrap(&self.den))
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Display for FracPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_compact())
    }
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

/// Serializes a `BigInt` as a bare JSON number of any size.
pub(crate) struct BigNumber<'a>(pub &'a BigInt);

impl Serialize for BigNumber<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = self
            .0
            .to_string()
            .parse()
            .map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

struct Terms1<'a>(&'a LPoly1);
struct Terms2<'a>(&'a LPoly2);

impl Serialize for Terms1<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (e, c) in self.0.terms() {
            seq.serialize_element(&(e, BigNumber(c)))?;
        }
        seq.end()
    }
}

impl Serialize for Terms2<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (e, c) in self.0.terms() {
            seq.serialize_element(&([e.e1, e.e2], BigNumber(c)))?;
        }
        seq.end()
    }
}

impl Serialize for LPoly1 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("var", "q")?;
        m.serialize_entry("terms", &Terms1(self))?;
        m.end()
    }
}

impl Serialize for LPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("vars", &["q1", "q2"])?;
        m.serialize_entry("terms", &Terms2(self))?;
        m.end()
    }
}

fn parse_big<E: de::Error>(n: &serde_json::Number) -> Result<BigInt, E> {
    n.to_string()
        .parse()
        .map_err(|_| E::custom(format!("coefficient {n} is not an integer")))
}

#[derive(Deserialize)]
struct Wire1 {
    var: String,
    terms: Vec<(i64, serde_json::Number)>,
}

#[derive(Deserialize)]
struct Wire2 {
    vars: [String; 2],
    terms: Vec<([i64; 2], serde_json::Number)>,
}

impl<'de> Deserialize<'de> for LPoly1 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire1::deserialize(d)?;
        if w.var != "q" {
            return Err(de::Error::custom(format!("unknown variable {:?}", w.var)));
        }
        let mut terms = Vec::with_capacity(w.terms.len());
        for (e, c) in &w.terms {
            terms.push((*e, parse_big::<D::Error>(c)?));
        }
        Ok(LPoly1::from_terms(terms))
    }
}

impl<'de> Deserialize<'de> for LPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire2::deserialize(d)?;
        if w.vars[0] != "q1" || w.vars[1] != "q2" {
            return Err(de::Error::custom(format!("unknown variables {:?}", w.vars)));
        }
        let mut terms = Vec::with_capacity(w.terms.len());
        for ([e1, e2], c) in &w.terms {
            terms.push((Exp2::new(*e1, *e2), parse_big::<D::Error>(c)?));
        }
        Ok(LPoly2::from_terms(terms))
    }
}

impl Serialize for FracPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("num", &self.num)?;
        m.serialize_entry("den", &self.den)?;
        m.end()
    }
}
