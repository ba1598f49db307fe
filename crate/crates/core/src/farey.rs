//! Extended rationals, even continued fractions, Farey decomposition and
//! Stern–Brocot enumeration.
//!
//! Everything here works on positive values only; negatives are mirrored by
//! the callers. `0` and `∞` are atoms and never expanded.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("0/0 is not a number")]
    ZeroOverZero,
    #[error("cannot parse {0:?} as a fraction")]
    Parse(String),
    #[error("{0} is outside the domain: {1}")]
    Domain(ExtRational, &'static str),
    #[error("not an even continued fraction: {0:?}")]
    InvalidCf(Vec<i64>),
    #[error("integer overflow while computing with {0}")]
    Overflow(String),
}

/// A reduced fraction `r/s` in `Q ∪ {∞}`. The sign lives on `r`; `∞` is
/// `1/0` and `0` is `0/1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtRational {
    r: i64,
    s: i64,
}

impl ExtRational {
    pub const ZERO: ExtRational = ExtRational { r: 0, s: 1 };
    pub const ONE: ExtRational = ExtRational { r: 1, s: 1 };
    pub const INFINITY: ExtRational = ExtRational { r: 1, s: 0 };

    /// Reduces `num/den` to canonical form.
    pub fn new(num: i64, den: i64) -> Result<Self, FareyError> {
        if num == 0 && den == 0 {
            return Err(FareyError::ZeroOverZero);
        }
        if den == 0 {
            return Ok(Self::INFINITY);
        }
        let g = num.gcd(&den);
        let (mut r, mut s) = (num / g, den / g);
        if s < 0 {
            r = r
                .checked_neg()
                .ok_or_else(|| FareyError::Overflow(format!("{num}/{den}")))?;
            s = -s;
        }
        Ok(ExtRational { r, s })
    }

    pub fn integer(n: i64) -> Self {
        ExtRational { r: n, s: 1 }
    }

    pub fn numer(self) -> i64 {
        self.r
    }

    pub fn denom(self) -> i64 {
        self.s
    }

    pub fn is_infinite(self) -> bool {
        self.s == 0
    }

    pub fn is_zero(self) -> bool {
        self.r == 0
    }

    pub fn is_negative(self) -> bool {
        self.r < 0
    }

    /// Finite and strictly positive.
    pub fn is_positive(self) -> bool {
        self.r > 0 && self.s > 0
    }

    /// `-x`; infinity is its own negative.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        if self.is_infinite() {
            self
        } else {
            ExtRational {
                r: -self.r,
                s: self.s,
            }
        }
    }

    pub fn abs(self) -> Self {
        ExtRational {
            r: self.r.abs(),
            s: self.s,
        }
    }

    /// `(p+u)/(q+v)` without reduction; Farey neighbours are already coprime.
    pub fn mediant(self, other: Self) -> Result<Self, FareyError> {
        let overflow = || FareyError::Overflow(format!("{self} ⊕ {other}"));
        let r = self.r.checked_add(other.r).ok_or_else(overflow)?;
        let s = self.s.checked_add(other.s).ok_or_else(overflow)?;
        Self::new(r, s)
    }

    /// `u·q − p·v` for `self = p/q`, `other = u/v`.
    pub fn det(self, other: Self) -> i128 {
        other.r as i128 * self.s as i128 - self.r as i128 * other.s as i128
    }
}

/// Convenience constructor for tests and literals; panics on `0/0`.
pub fn frac(num: i64, den: i64) -> ExtRational {
    ExtRational::new(num, den).expect("0/0 is not a fraction")
}

/// Same as [`ExtRational::new`].
pub fn reduce_fraction(num: i64, den: i64) -> Result<ExtRational, FareyError> {
    ExtRational::new(num, den)
}

impl Ord for ExtRational {
    /// Numeric order with `∞` above every finite value.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => (self.r as i128 * other.s as i128).cmp(&(other.r as i128 * self.s as i128)),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r, self.s)
    }
}

impl fmt::Debug for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtRational {
    type Err = FareyError;

    fn from_str(text: &str) -> Result<Self, FareyError> {
        let t = text.trim();
        let bad = || FareyError::Parse(text.to_string());
        match t.trim_start_matches(['+', '-']) {
            "inf" | "∞" => return Ok(Self::INFINITY),
            _ => {}
        }
        let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
        match t.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d < 0 {
                    return Err(bad());
                }
                Self::new(parse(n)?, d)
            }
            None => Ok(Self::integer(parse(t)?)),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Even-length continued fraction `[a1, …, a2m]` with `a1 ≥ 0` and every
/// later term `≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvenCF(Vec<i64>);

impl EvenCF {
    pub fn new(terms: Vec<i64>) -> Result<Self, FareyError> {
        let ok = !terms.is_empty()
            && terms.len().is_multiple_of(2)
            && terms[0] >= 0
            && terms[1..].iter().all(|&a| a >= 1);
        if ok {
            Ok(EvenCF(terms))
        } else {
            Err(FareyError::InvalidCf(terms))
        }
    }

    pub fn terms(&self) -> &[i64] {
        &self.0
    }

    /// Number of pairs `m`.
    pub fn pairs(&self) -> usize {
        self.0.len() / 2
    }

    pub fn last(&self) -> i64 {
        *self.0.last().expect("even CF is never empty")
    }
}

/// Euclid's expansion `r/s = [b1, …, bk]` of a finite value (terms after the
/// first are positive).
pub fn cf_expand(x: ExtRational) -> Vec<i64> {
    let (mut r, mut s) = (x.numer(), x.denom());
    let mut out = Vec::new();
    while s != 0 {
        let (q, m) = r.div_mod_floor(&s);
        out.push(q);
        r = s;
        s = m;
    }
    out
}

pub fn cf_expand_even(x: ExtRational) -> Result<EvenCF, FareyError> {
    if !x.is_positive() {
        return Err(FareyError::Domain(x, "needs a finite positive value"));
    }
    let mut a = cf_expand(x);
    if a.len() % 2 == 1 {
        if a == [1] {
            a = vec![0, 1];
        } else if a[a.len() - 1] == 1 {
            // Only reachable for hand-built expansions; Euclid never ends in 1.
            a.pop();
            *a.last_mut().expect("length ≥ 2") += 1;
        } else {
            *a.last_mut().expect("nonempty") -= 1;
            a.push(1);
        }
    }
    EvenCF::new(a)
}

/// Value of `a1 + 1/(a2 + 1/(…))` for any term list; `[]` is `∞`.
pub fn cf_eval(terms: &[i64]) -> Result<ExtRational, FareyError> {
    let overflow = || FareyError::Overflow(format!("{terms:?}"));
    let (mut num, mut den) = (1i64, 0i64);
    for &a in terms.iter().rev() {
        let next = a
            .checked_mul(num)
            .and_then(|v| v.checked_add(den))
            .ok_or_else(overflow)?;
        den = num;
        num = next;
    }
    ExtRational::new(num, den)
}

pub fn cf_value(cf: &EvenCF) -> ExtRational {
    cf_eval(cf.terms()).expect("even CF of representable value")
}

/// `x = left_parent ⊕ right_parent`, with the integer `l` attached to the
/// mediant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FareyDecomp {
    pub left_parent: ExtRational,
    pub right_parent: ExtRational,
    pub l: i64,
}

/// Farey parents and `l` of a positive rational, read off its even
/// continued fraction.
///
/// With `x = [a1, …, a2m]`:
///
/// * left parent: `[a1, …, a(2m-2) + 1]` if `a(2m-1) = 1` and `m > 1`,
///   otherwise `[a1, …, a(2m-1) - 1, 1]` (which is `[-1, 1] = 0` for `x = 1`);
/// * right parent: `[a1, …, a2m - 1]` if `a2m ≥ 2`, otherwise
///   `[a1, …, a(2m-2)]` (empty means `∞`);
/// * `l = 0` if `a2m ≥ 2`; `l = a(2m-1)` if `a2m = 1` and `m > 1`;
///   `l = a1 - 1` for the integers `[a1, 1]`, so `l(1) = -1`.
pub fn farey_decompose(x: ExtRational) -> Result<FareyDecomp, FareyError> {
    let cf = cf_expand_even(x)?;
    let a = cf.terms();
    let n = a.len();
    let m = cf.pairs();

    let left = if a[n - 2] == 1 && m > 1 {
        let mut t = a[..n - 2].to_vec();
        *t.last_mut().expect("m > 1") += 1;
        t
    } else {
        let mut t = a[..n - 1].to_vec();
        *t.last_mut().expect("n ≥ 2") -= 1;
        t.push(1);
        t
    };
    let right = if a[n - 1] >= 2 {
        let mut t = a.to_vec();
        t[n - 1] -= 1;
        t
    } else {
        a[..n - 2].to_vec()
    };
    let l = if a[n - 1] >= 2 {
        0
    } else if m > 1 {
        a[n - 2]
    } else {
        a[0] - 1
    };
    Ok(FareyDecomp {
        left_parent: cf_eval(&left)?,
        right_parent: cf_eval(&right)?,
        l,
    })
}

/// Parents by walking down the Stern–Brocot tree; independent of any
/// continued fraction.
pub fn stern_brocot_parents(x: ExtRational) -> Result<(ExtRational, ExtRational), FareyError> {
    if !x.is_positive() {
        return Err(FareyError::Domain(x, "needs a finite positive value"));
    }
    let (mut lo, mut hi) = (ExtRational::ZERO, ExtRational::INFINITY);
    loop {
        let m = lo.mediant(hi)?;
        match x.cmp(&m) {
            Ordering::Equal => return Ok((lo, hi)),
            Ordering::Less => hi = m,
            Ordering::Greater => lo = m,
        }
    }
}

/// Stern–Brocot nodes down to `depth`, level by level and left to right
/// within a level. Depth `d` yields `2^(d+1) - 1` values.
pub fn stern_brocot_enum(depth: u32) -> Vec<ExtRational> {
    let mut out = Vec::with_capacity((1usize << (depth + 1)) - 1);
    let mut level = vec![(ExtRational::ZERO, ExtRational::INFINITY)];
    for d in 0..=depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for (lo, hi) in level {
            let m = lo.mediant(hi).expect("depth fits in i64");
            out.push(m);
            if d < depth {
                next.push((lo, m));
                next.push((m, hi));
            }
        }
        level = next;
    }
    out
}

/// Memoized evaluation of a recursion over Farey decompositions of
/// nonnegative values.
///
/// `seed` supplies the values at `0` and `∞`; `combine(left, right, d)`
/// builds the value at the mediant from the values at its two parents.
/// Iterative, so deep chains such as `n/1` do not grow the call stack.
pub fn farey_fold<T: Clone>(
    x: ExtRational,
    cache: &mut HashMap<ExtRational, T>,
    mut seed: impl FnMut(ExtRational) -> T,
    mut combine: impl FnMut(&T, &T, &FareyDecomp) -> T,
) -> Result<T, FareyError> {
    if x.is_negative() {
        return Err(FareyError::Domain(x, "needs a nonnegative value"));
    }
    let mut stack = vec![x];
    while let Some(&top) = stack.last() {
        if cache.contains_key(&top) {
            stack.pop();
            continue;
        }
        if top.is_zero() || top.is_infinite() {
            cache.insert(top, seed(top));
            stack.pop();
            continue;
        }
        let d = farey_decompose(top)?;
        let missing: Vec<_> = [d.left_parent, d.right_parent]
            .into_iter()
            .filter(|p| !cache.contains_key(p))
            .collect();
        if missing.is_empty() {
            let v = combine(&cache[&d.left_parent], &cache[&d.right_parent], &d);
            cache.insert(top, v);
            stack.pop();
        } else {
            stack.extend(missing);
        }
    }
    Ok(cache[&x].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_fraction(6, 4).unwrap(), frac(3, 2));
        assert_eq!(reduce_fraction(-4, 2).unwrap().to_string(), "-2/1");
        assert_eq!(reduce_fraction(5, 0).unwrap(), ExtRational::INFINITY);
        assert_eq!(reduce_fraction(3, -6).unwrap().to_string(), "-1/2");
        assert_eq!(reduce_fraction(0, 0), Err(FareyError::ZeroOverZero));
    }

    #[test]
    fn parse_forms() {
        for (text, want) in [
            ("3/2", frac(3, 2)),
            ("-2", frac(-2, 1)),
            ("inf", ExtRational::INFINITY),
            ("∞", ExtRational::INFINITY),
            ("1/0", ExtRational::INFINITY),
            ("0", ExtRational::ZERO),
            ("6/4", frac(3, 2)),
        ] {
            assert_eq!(text.parse::<ExtRational>().unwrap(), want, "{text}");
        }
        assert!("x".parse::<ExtRational>().is_err());
        assert!("0/0".parse::<ExtRational>().is_err());
        assert!("1/-2".parse::<ExtRational>().is_err());
    }

    #[test]
    fn even_cf_examples() {
        assert_eq!(cf_expand_even(frac(3, 2)).unwrap().terms(), [1, 2]);
        assert_eq!(cf_expand_even(frac(2, 1)).unwrap().terms(), [1, 1]);
        assert_eq!(cf_expand_even(frac(5, 3)).unwrap().terms(), [1, 1, 1, 1]);
        assert_eq!(cf_expand_even(ExtRational::ONE).unwrap().terms(), [0, 1]);
        assert_eq!(cf_expand_even(frac(1, 3)).unwrap().terms(), [0, 3]);
        assert!(cf_expand_even(ExtRational::ZERO).is_err());
        assert!(cf_expand_even(ExtRational::INFINITY).is_err());
        assert!(cf_expand_even(frac(-1, 2)).is_err());
    }

    #[test]
    fn cf_values() {
        let v = |t: &[i64]| cf_value(&EvenCF::new(t.to_vec()).unwrap());
        assert_eq!(v(&[1, 2]), frac(3, 2));
        assert_eq!(v(&[2, 2]), frac(5, 2));
        assert_eq!(v(&[0, 1]), ExtRational::ONE);
        assert_eq!(cf_eval(&[-1, 1]).unwrap(), ExtRational::ZERO);
        assert_eq!(cf_eval(&[]).unwrap(), ExtRational::INFINITY);
        assert!(EvenCF::new(vec![1, 2, 3]).is_err());
        assert!(EvenCF::new(vec![1, 0]).is_err());
    }

    #[test]
    fn decompose_examples() {
        let d = farey_decompose(frac(3, 2)).unwrap();
        assert_eq!(
            (d.left_parent, d.right_parent, d.l),
            (frac(1, 1), frac(2, 1), 0)
        );
        let d = farey_decompose(frac(2, 1)).unwrap();
        assert_eq!(
            (d.left_parent, d.right_parent, d.l),
            (frac(1, 1), ExtRational::INFINITY, 0)
        );
        let d = farey_decompose(frac(5, 3)).unwrap();
        assert_eq!(
            (d.left_parent, d.right_parent, d.l),
            (frac(3, 2), frac(2, 1), 1)
        );
        let d = farey_decompose(ExtRational::ONE).unwrap();
        assert_eq!(
            (d.left_parent, d.right_parent, d.l),
            (ExtRational::ZERO, ExtRational::INFINITY, -1)
        );
    }

    #[test]
    fn integer_l_values() {
        for n in 1..40 {
            assert_eq!(
                farey_decompose(ExtRational::integer(n + 1)).unwrap().l,
                n - 1
            );
        }
    }

    #[test]
    fn enumeration_small_depths() {
        assert_eq!(stern_brocot_enum(0), vec![frac(1, 1)]);
        assert_eq!(
            stern_brocot_enum(1),
            vec![frac(1, 1), frac(1, 2), frac(2, 1)]
        );
        assert_eq!(
            stern_brocot_enum(2),
            vec![
                frac(1, 1),
                frac(1, 2),
                frac(2, 1),
                frac(1, 3),
                frac(2, 3),
                frac(3, 2),
                frac(3, 1)
            ]
        );
    }

    #[test]
    fn ordering_puts_infinity_last() {
        let mut v = vec![
            ExtRational::INFINITY,
            frac(3, 2),
            frac(-2, 1),
            ExtRational::ZERO,
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                frac(-2, 1),
                ExtRational::ZERO,
                frac(3, 2),
                ExtRational::INFINITY
            ]
        );
    }
}
