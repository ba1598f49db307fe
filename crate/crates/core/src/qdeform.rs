//! Right (`♯`) and left (`♭`) q-deformations of extended rationals.
//!
//! Three independent constructions are provided: the nested continued
//! fraction ([`qdeform_cf`]), the word in the generators `t1`, `t2`
//! ([`qdeform_matrix`]) and the q-Farey recursion ([`qdeform_farey`]). A
//! fourth route through arc intersection polynomials lives in
//! [`crate::arcmodel`]; [`Session::deform`] dispatches to all of them.
//!
//! Values are canonical [`FracPair`]s: the common power of `q` is stripped
//! and the lowest coefficient of the denominator is positive.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arcmodel::{self, ArcCache, ArcError};
use crate::farey::{cf_expand_even, farey_fold, ExtRational, FareyError};
use crate::laurent::{FracPair, LPoly1, LaurentError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error("the flat q-integer [0] is not defined")]
    FlatZero,
    #[error("{0} is negative; use the negation formula")]
    Negative(ExtRational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Sharp,
    Flat,
}

impl Flavor {
    pub const BOTH: [Flavor; 2] = [Flavor::Sharp, Flavor::Flat];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Sharp => "sharp",
            Flavor::Flat => "flat",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Cf,
    Matrix,
    Farey,
    Arc,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Cf, Method::Matrix, Method::Farey, Method::Arc];

    pub fn name(self) -> &'static str {
        match self {
            Method::Cf => "cf",
            Method::Matrix => "matrix",
            Method::Farey => "farey",
            Method::Arc => "arc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A q-deformed rational in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRational {
    pub value: ExtRational,
    pub flavor: Flavor,
    pub frac: FracPair,
}

impl QRational {
    /// Normalizes `num/den` and tags it.
    pub fn new(
        value: ExtRational,
        flavor: Flavor,
        num: LPoly1,
        den: LPoly1,
    ) -> Result<Self, DeformError> {
        let frac = FracPair::new(num, den)?.normalize()?;
        Ok(QRational {
            value,
            flavor,
            frac,
        })
    }

    pub fn num(&self) -> &LPoly1 {
        &self.frac.num
    }

    pub fn den(&self) -> &LPoly1 {
        &self.frac.den
    }

    /// `(num(1), den(1))`.
    pub fn specialize(&self) -> (BigInt, BigInt) {
        self.frac.eval_ones()
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.frac, f)
    }
}

impl Serialize for QRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("value", &self.value)?;
        m.serialize_entry("flavor", &self.flavor)?;
        m.serialize_entry("num", &self.frac.num)?;
        m.serialize_entry("den", &self.frac.den)?;
        m.end()
    }
}

/// `[a]♯ = 1 + q + … + q^(a-1)` and `[a]♭ = 1 + q + … + q^(a-2) + q^a`.
pub fn q_integer(a: i64, flavor: Flavor) -> Result<LPoly1, DeformError> {
    if a < 0 {
        return Err(FareyError::Domain(ExtRational::integer(a), "q-integers need a ≥ 0").into());
    }
    match flavor {
        Flavor::Sharp => Ok(LPoly1::from_terms((0..a).map(|e| (e, 1)))),
        Flavor::Flat if a == 0 => Err(DeformError::FlatZero),
        Flavor::Flat => Ok(LPoly1::from_terms((0..a - 1).chain([a]).map(|e| (e, 1)))),
    }
}

/// `(R, S)` at the atoms `0` and `∞`.
pub fn seed_pair(x: ExtRational, flavor: Flavor) -> (LPoly1, LPoly1) {
    let q = LPoly1::q();
    let one = LPoly1::one();
    match (x.is_infinite(), flavor) {
        (false, Flavor::Sharp) => (LPoly1::zero(), one),
        (true, Flavor::Sharp) => (one, LPoly1::zero()),
        (false, Flavor::Flat) => (&q - &one, q),
        (true, Flavor::Flat) => (one.clone(), &one - &q),
    }
}

fn seed_value(x: ExtRational, flavor: Flavor) -> Result<QRational, DeformError> {
    let (r, s) = seed_pair(x, flavor);
    QRational::new(x, flavor, r, s)
}

/// Evaluates the nested continued fraction from the innermost level out.
pub fn qdeform_cf(x: ExtRational, flavor: Flavor) -> Result<QRational, DeformError> {
    if x.is_negative() {
        return Err(DeformError::Negative(x));
    }
    if x.is_zero() || x.is_infinite() {
        return seed_value(x, flavor);
    }
    let cf = cf_expand_even(x)?;
    let a = cf.terms();
    let n = a.len();
    let mut num = q_integer(a[n - 1], flavor)?.invert_q();
    let mut den = LPoly1::one();
    for i in (0..n - 1).rev() {
        // Odd positions (1-based) use q, even positions q^-1.
        let (p, w) = if i % 2 == 0 {
            (q_integer(a[i], Flavor::Sharp)?, LPoly1::q_pow(a[i]))
        } else {
            (
                q_integer(a[i], Flavor::Sharp)?.invert_q(),
                LPoly1::q_pow(-a[i]),
            )
        };
        let next = &(&p * &num) + &(&w * &den);
        den = num;
        num = next;
    }
    QRational::new(x, flavor, num, den)
}

/// 2×2 matrix over `Z[q, q^-1]`, entries row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub a: LPoly1,
    pub b: LPoly1,
    pub c: LPoly1,
    pub d: LPoly1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    T1,
    T2,
}

impl QMatrix {
    pub fn identity() -> Self {
        QMatrix {
            a: LPoly1::one(),
            b: LPoly1::zero(),
            c: LPoly1::zero(),
            d: LPoly1::one(),
        }
    }

    /// `t1 = [[q, 1], [0, 1]]`, `t2 = [[1, 0], [-q, q]]` and their inverses.
    pub fn generator(g: Generator, inverse: bool) -> Self {
        let q = LPoly1::q;
        let qi = || LPoly1::q_pow(-1);
        let m = match (g, inverse) {
            (Generator::T1, false) => QMatrix {
                a: q(),
                b: LPoly1::one(),
                c: LPoly1::zero(),
                d: LPoly1::one(),
            },
            (Generator::T1, true) => QMatrix {
                a: qi(),
                b: -qi(),
                c: LPoly1::zero(),
                d: LPoly1::one(),
            },
            (Generator::T2, false) => QMatrix {
                a: LPoly1::one(),
                b: LPoly1::zero(),
                c: -q(),
                d: q(),
            },
            (Generator::T2, true) => QMatrix {
                a: LPoly1::one(),
                b: LPoly1::zero(),
                c: LPoly1::one(),
                d: qi(),
            },
        };
        debug_assert_eq!(m.det(), LPoly1::q_pow(if inverse { -1 } else { 1 }));
        m
    }

    pub fn det(&self) -> LPoly1 {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        QMatrix {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    pub fn apply(&self, v: (&LPoly1, &LPoly1)) -> (LPoly1, LPoly1) {
        (
            &(&self.a * v.0) + &(&self.b * v.1),
            &(&self.c * v.0) + &(&self.d * v.1),
        )
    }

    /// Product of `g^e` over the letters, left to right.
    pub fn word(letters: &[(Generator, i64)]) -> QMatrix {
        let mut m = QMatrix::identity();
        for &(g, e) in letters {
            let step = QMatrix::generator(g, e < 0);
            for _ in 0..e.unsigned_abs() {
                m = m.mul(&step);
            }
        }
        m
    }
}

/// Letters `t1^a1 t2^-a2 t1^a3 …` for the even CF of `|x|`, every exponent
/// negated when `x < 0`. `0` uses the expansion `[-1, 1]`; `∞` is the empty
/// word.
pub fn matrix_word(x: ExtRational) -> Result<Vec<(Generator, i64)>, DeformError> {
    if x.is_infinite() {
        return Ok(Vec::new());
    }
    let terms = if x.is_zero() {
        vec![-1, 1]
    } else {
        cf_expand_even(x.abs())?.terms().to_vec()
    };
    let sign = if x.is_negative() { -1 } else { 1 };
    Ok(terms
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            if i % 2 == 0 {
                (Generator::T1, sign * a)
            } else {
                (Generator::T2, -sign * a)
            }
        })
        .collect())
}

/// Applies the matrix word of `x` to `(1, 0)` (sharp) or `(1, 1 - q)` (flat).
pub fn qdeform_matrix(x: ExtRational, flavor: Flavor) -> Result<QRational, DeformError> {
    let m = QMatrix::word(&matrix_word(x)?);
    let one = LPoly1::one();
    let start = match flavor {
        Flavor::Sharp => LPoly1::zero(),
        Flavor::Flat => &one - &LPoly1::q(),
    };
    let (r, s) = m.apply((&one, &start));
    QRational::new(x, flavor, r, s)
}

/// Memo tables for [`qdeform_farey`], one per flavor.
#[derive(Debug, Default, Clone)]
pub struct FareyCache {
    sharp: HashMap<ExtRational, (LPoly1, LPoly1)>,
    flat: HashMap<ExtRational, (LPoly1, LPoly1)>,
}

impl FareyCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn table(&mut self, flavor: Flavor) -> &mut HashMap<ExtRational, (LPoly1, LPoly1)> {
        match flavor {
            Flavor::Sharp => &mut self.sharp,
            Flavor::Flat => &mut self.flat,
        }
    }
}

/// `R(p ⊕ u) = R(p) + w·R(u)` and likewise for `S`, with `w = q^(l+1)`
/// (sharp) or `q^-(l+1)` (flat).
pub fn qdeform_farey_cached(
    x: ExtRational,
    flavor: Flavor,
    cache: &mut FareyCache,
) -> Result<QRational, DeformError> {
    if x.is_negative() {
        return Err(DeformError::Negative(x));
    }
    let (r, s) = farey_fold(
        x,
        cache.table(flavor),
        |atom| seed_pair(atom, flavor),
        |p, u, d| {
            let w = match flavor {
                Flavor::Sharp => LPoly1::q_pow(d.l + 1),
                Flavor::Flat => LPoly1::q_pow(-(d.l + 1)),
            };
            (&p.0 + &(&w * &u.0), &p.1 + &(&w * &u.1))
        },
    )?;
    QRational::new(x, flavor, r, s)
}

pub fn qdeform_farey(x: ExtRational, flavor: Flavor) -> Result<QRational, DeformError> {
    qdeform_farey_cached(x, flavor, &mut FareyCache::new())
}

/// `[-x] = -q^-1 · [x]` evaluated at `q^-1`.
pub fn qdeform_negate(pos: &QRational) -> Result<QRational, DeformError> {
    if !pos.value.is_positive() {
        return Err(FareyError::Domain(pos.value, "negation needs a positive value").into());
    }
    let num = -(&LPoly1::q_pow(-1) * &pos.frac.num.invert_q());
    let den = pos.frac.den.invert_q();
    QRational::new(pos.value.neg(), pos.flavor, num, den)
}

/// Per-session memo tables for the recursive methods.
#[derive(Debug, Default, Clone)]
pub struct Session {
    pub farey: FareyCache,
    pub arcs: ArcCache,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    /// Negative inputs go through the positive value and [`qdeform_negate`]
    /// for `cf` and `farey`; `matrix` runs the negated word and `arc` the
    /// mirrored arc recursion directly.
    pub fn deform(
        &mut self,
        x: ExtRational,
        flavor: Flavor,
        method: Method,
    ) -> Result<QRational, DeformError> {
        match method {
            Method::Matrix => qdeform_matrix(x, flavor),
            Method::Arc => arcmodel::deform_from_arcs(x, flavor, &mut self.arcs),
            Method::Cf | Method::Farey if x.is_negative() => {
                let pos = self.deform(x.neg(), flavor, method)?;
                qdeform_negate(&pos)
            }
            Method::Cf => qdeform_cf(x, flavor),
            Method::Farey => qdeform_farey_cached(x, flavor, &mut self.farey),
        }
    }
}

pub fn qdeform(x: ExtRational, flavor: Flavor, method: Method) -> Result<QRational, DeformError> {
    Session::new().deform(x, flavor, method)
}

/// Exponent sum of the determinant of the matrix word of `x`: each letter
/// `g^e` contributes `e`.
pub fn word_det_exponent(x: ExtRational) -> Result<i64, DeformError> {
    Ok(matrix_word(x)?.iter().map(|&(_, e)| e).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::frac;

    fn p(terms: &[(i64, i64)]) -> LPoly1 {
        LPoly1::from_terms(terms.iter().copied())
    }

    fn show(x: ExtRational, flavor: Flavor, method: Method) -> String {
        qdeform(x, flavor, method).unwrap().to_string()
    }

    #[test]
    fn q_integers() {
        assert_eq!(
            q_integer(3, Flavor::Sharp).unwrap(),
            p(&[(0, 1), (1, 1), (2, 1)])
        );
        assert_eq!(
            q_integer(3, Flavor::Flat).unwrap(),
            p(&[(0, 1), (1, 1), (3, 1)])
        );
        assert_eq!(q_integer(1, Flavor::Flat).unwrap(), LPoly1::q());
        assert!(q_integer(0, Flavor::Sharp).unwrap().is_zero());
        assert_eq!(q_integer(0, Flavor::Flat), Err(DeformError::FlatZero));
    }

    #[test]
    fn continued_fraction_examples() {
        assert_eq!(
            show(frac(3, 2), Flavor::Sharp, Method::Cf),
            "(q^2+q+1)/(q+1)"
        );
        assert_eq!(
            show(frac(3, 2), Flavor::Flat, Method::Cf),
            "(q^3+q^2+1)/(q^2+1)"
        );
        assert_eq!(
            show(frac(5, 2), Flavor::Sharp, Method::Cf),
            "(q^3+q^2+2*q+1)/(q+1)"
        );
        assert_eq!(
            show(frac(5, 3), Flavor::Sharp, Method::Cf),
            "(q^3+2*q^2+q+1)/(q^2+q+1)"
        );
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(
            show(ExtRational::INFINITY, Flavor::Sharp, Method::Matrix),
            "1/0"
        );
        assert_eq!(
            show(frac(-2, 1), Flavor::Flat, Method::Matrix),
            "-(q^2+1)/q^3"
        );
        assert_eq!(
            show(frac(-2, 1), Flavor::Sharp, Method::Matrix),
            "-(q+1)/q^2"
        );
        assert_eq!(
            show(ExtRational::ZERO, Flavor::Flat, Method::Matrix),
            "(q-1)/q"
        );
        assert_eq!(
            show(ExtRational::ZERO, Flavor::Sharp, Method::Matrix),
            "0/1"
        );
    }

    #[test]
    fn farey_examples() {
        assert_eq!(show(ExtRational::ONE, Flavor::Sharp, Method::Farey), "1/1");
        assert_eq!(show(ExtRational::ONE, Flavor::Flat, Method::Farey), "q/1");
        assert_eq!(
            show(frac(3, 2), Flavor::Sharp, Method::Farey),
            "(q^2+q+1)/(q+1)"
        );
        assert_eq!(show(ExtRational::ZERO, Flavor::Sharp, Method::Farey), "0/1");
        assert_eq!(
            show(ExtRational::INFINITY, Flavor::Flat, Method::Farey),
            "1/(-q+1)"
        );
    }

    #[test]
    fn negation_examples() {
        let two_flat = QRational::new(
            frac(2, 1),
            Flavor::Flat,
            p(&[(0, 1), (2, 1)]),
            LPoly1::one(),
        )
        .unwrap();
        assert_eq!(
            qdeform_negate(&two_flat).unwrap().to_string(),
            "-(q^2+1)/q^3"
        );
        let two_sharp = QRational::new(
            frac(2, 1),
            Flavor::Sharp,
            p(&[(0, 1), (1, 1)]),
            LPoly1::one(),
        )
        .unwrap();
        assert_eq!(
            qdeform_negate(&two_sharp).unwrap().to_string(),
            "-(q+1)/q^2"
        );
        let one = QRational::new(
            ExtRational::ONE,
            Flavor::Sharp,
            LPoly1::one(),
            LPoly1::one(),
        )
        .unwrap();
        assert_eq!(qdeform_negate(&one).unwrap().to_string(), "-1/q");
    }

    #[test]
    fn generator_determinants() {
        for g in [Generator::T1, Generator::T2] {
            assert_eq!(QMatrix::generator(g, false).det(), LPoly1::q());
            assert_eq!(QMatrix::generator(g, true).det(), LPoly1::q_pow(-1));
            let id = QMatrix::generator(g, false).mul(&QMatrix::generator(g, true));
            assert_eq!(id, QMatrix::identity());
        }
    }
}
