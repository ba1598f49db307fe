//! Decategorified invariants: Grothendieck classes, graded dimensions of Hom
//! spaces from the projectives, Calabi–Yau-N reduction and `occ_q`.
//!
//! The categories are not modelled. `q2` plays the role of the CY shift and
//! only appears through exponents; [`cy_reduce`] sets `q2 = q1^N`.

use std::collections::HashMap;
use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::arcmodel::{
    self, ArcCache, ArcError, Rule, NEGATIVE_A, NEGATIVE_B, POSITIVE_A, POSITIVE_B,
};
use crate::farey::{cf_expand_even, farey_fold, ExtRational, FareyError};
use crate::laurent::{Collapsed, LPoly1, LPoly2, LaurentError};
use crate::qdeform::{qdeform_matrix, DeformError, Flavor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyError {
    #[error("{0} is negative; Grothendieck classes are only defined for x ≥ 0")]
    Negative(ExtRational),
    #[error("CY-N reduction needs N ≥ 2, got {0}")]
    SmallN(i64),
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// `[X_x] = coeff0·[X_0] + coeff_inf·[X_∞]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothClass {
    pub value: ExtRational,
    pub coeff0: LPoly2,
    pub coeff_inf: LPoly2,
}

impl Serialize for GrothClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Class<'a>(&'a GrothClass);
        impl Serialize for Class<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("X0", &self.0.coeff0)?;
                m.serialize_entry("Xinf", &self.0.coeff_inf)?;
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("value", &self.value)?;
        m.serialize_entry("class", &Class(self))?;
        m.end()
    }
}

/// `R♯` and `S♯` of `x` at `q = q1^-1 q2`.
pub fn grothendieck_class(x: ExtRational) -> Result<GrothClass, CyError> {
    if x.is_negative() {
        return Err(CyError::Negative(x));
    }
    let v = qdeform_matrix(x, Flavor::Sharp)?;
    Ok(GrothClass {
        value: x,
        coeff0: LPoly2::from_q1inv_q2(v.num()),
        coeff_inf: LPoly2::from_q1inv_q2(v.den()),
    })
}

/// Builds the class from the exact triangles instead:
/// `class(p ⊕ u) = class(p) + q1^-(l+1) q2^(l+1)·class(u)`, with
/// `class(0) = (0, 1)` and `class(∞) = (1, 0)`.
pub fn grothendieck_class_recursive(
    x: ExtRational,
    cache: &mut HashMap<ExtRational, (LPoly2, LPoly2)>,
) -> Result<GrothClass, CyError> {
    if x.is_negative() {
        return Err(CyError::Negative(x));
    }
    let (coeff0, coeff_inf) = farey_fold(
        x,
        cache,
        |atom| {
            if atom.is_infinite() {
                (LPoly2::one(), LPoly2::zero())
            } else {
                (LPoly2::zero(), LPoly2::one())
            }
        },
        |p, u, d| {
            let w = LPoly2::mono(-(d.l + 1), d.l + 1);
            (&p.0 + &(&w * &u.0), &p.1 + &(&w * &u.1))
        },
    )?;
    Ok(GrothClass {
        value: x,
        coeff0,
        coeff_inf,
    })
}

/// Indecomposable projectives of the zigzag algebra, as tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Projective {
    P0,
    Pinf,
}

impl fmt::Display for Projective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Projective::P0 => "P0",
            Projective::Pinf => "Pinf",
        })
    }
}

/// `qdim Hom(P_i, X_x)`, which is the intersection with `γ̂_i`.
pub fn qdim_hom(
    projective: Projective,
    x: ExtRational,
    cache: &mut ArcCache,
) -> Result<LPoly2, CyError> {
    let d = arcmodel::arc_data_signed(x, cache)?;
    Ok(match projective {
        Projective::P0 => d.b0,
        Projective::Pinf => d.binf,
    })
}

/// `q2 -> q1^N`.
pub fn cy_reduce(p: &LPoly2, n: i64) -> Result<LPoly1, CyError> {
    if n < 2 {
        return Err(CyError::SmallN(n));
    }
    Ok(p.set_q2_to_q1_pow(n))
}

/// The four arc polynomials after CY-N reduction, in the variable `q1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedArcs {
    pub value: ExtRational,
    pub a0: LPoly1,
    pub ainf: LPoly1,
    pub b0: LPoly1,
    pub binf: LPoly1,
}

impl ReducedArcs {
    pub fn polys(&self) -> [(&'static str, &LPoly1); 4] {
        [
            ("A0", &self.a0),
            ("Ainf", &self.ainf),
            ("B0", &self.b0),
            ("Binf", &self.binf),
        ]
    }
}

/// Weight `q1^e1 q2^e2` of a rule at `t`, reduced to `q1^(e1 + N·e2)`.
fn reduced_weight(rule: &Rule, t: i64, n: i64) -> LPoly1 {
    LPoly1::q_pow(rule.e1.0 + rule.e1.1 * t + n * (rule.e2.0 + rule.e2.1 * t))
}

fn reduced_step(rule: &Rule, left: &LPoly1, right: &LPoly1, t: i64, n: i64) -> LPoly1 {
    let w = reduced_weight(rule, t, n);
    match rule.inherit {
        arcmodel::Inherit::Left => left + &(&w * right),
        arcmodel::Inherit::Right => right + &(&w * left),
    }
}

/// Runs the arc recursions directly over `Z[q1, q1^-1]` with reduced seeds
/// and weights: `q1^((l+1)(1-N))` on the `A` side for `x ≥ 0`, its inverse
/// on the `B` side, and `q1^(±a(1-N))` on the negative side.
pub fn reduced_arcs_native(x: ExtRational, n: i64) -> Result<ReducedArcs, CyError> {
    if n < 2 {
        return Err(CyError::SmallN(n));
    }
    let negative = x.is_negative();
    let (s0, sinf) = if negative {
        arcmodel::negative_arc_seeds()
    } else {
        arcmodel::arc_seeds()
    };
    let (ra, rb) = if negative {
        (NEGATIVE_A, NEGATIVE_B)
    } else {
        (POSITIVE_A, POSITIVE_B)
    };
    let reduce = |d: &arcmodel::ArcData| -> [LPoly1; 4] {
        [&d.a0, &d.ainf, &d.b0, &d.binf].map(|p| p.set_q2_to_q1_pow(n))
    };
    let (seed0, seedinf) = (reduce(&s0), reduce(&sinf));
    let mut cache = HashMap::new();
    let mut failure = None;
    let quad = farey_fold(
        x.abs(),
        &mut cache,
        |atom| {
            if atom.is_infinite() {
                seedinf.clone()
            } else {
                seed0.clone()
            }
        },
        |p, u, d| {
            let last = d
                .left_parent
                .mediant(d.right_parent)
                .and_then(cf_expand_even)
                .map(|cf| cf.last())
                .unwrap_or_else(|e| {
                    failure = Some(e);
                    0
                });
            let ta = ra.driver_value(d.l, last);
            let tb = rb.driver_value(d.l, last);
            [
                reduced_step(&ra, &p[0], &u[0], ta, n),
                reduced_step(&ra, &p[1], &u[1], ta, n),
                reduced_step(&rb, &p[2], &u[2], tb, n),
                reduced_step(&rb, &p[3], &u[3], tb, n),
            ]
        },
    )?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    let [a0, ainf, b0, binf] = quad;
    Ok(ReducedArcs {
        value: x,
        a0,
        ainf,
        b0,
        binf,
    })
}

/// [`cy_reduce`] applied to each polynomial of the two-variable arc data.
pub fn reduced_arcs_from_two_variable(
    x: ExtRational,
    n: i64,
    cache: &mut ArcCache,
) -> Result<ReducedArcs, CyError> {
    let d = arcmodel::arc_data_signed(x, cache)?;
    Ok(ReducedArcs {
        value: x,
        a0: cy_reduce(&d.a0, n)?,
        ainf: cy_reduce(&d.ainf, n)?,
        b0: cy_reduce(&d.b0, n)?,
        binf: cy_reduce(&d.binf, n)?,
    })
}

/// `occ_q(X_i, X_x)`: `qdim Hom(P_i, X_x)` in `q1^-1 q2`, read at `q^-1`.
pub fn occ_q_cy2(
    projective: Projective,
    x: ExtRational,
    cache: &mut ArcCache,
) -> Result<LPoly1, CyError> {
    if x.is_negative() {
        return Err(CyError::Negative(x));
    }
    let p = qdim_hom(projective, x, cache)?;
    let Collapsed { poly, .. } = p.collapse_to_single()?;
    Ok(poly.invert_q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::frac;
    use crate::laurent::Exp2;

    fn p1(terms: &[(i64, i64)]) -> LPoly1 {
        LPoly1::from_terms(terms.iter().copied())
    }

    fn p2(terms: &[((i64, i64), i64)]) -> LPoly2 {
        LPoly2::from_terms(terms.iter().map(|&((a, b), c)| (Exp2::new(a, b), c)))
    }

    #[test]
    fn classes() {
        let c = grothendieck_class(ExtRational::ONE).unwrap();
        assert_eq!((c.coeff0, c.coeff_inf), (LPoly2::one(), LPoly2::one()));
        let c = grothendieck_class(frac(3, 2)).unwrap();
        assert_eq!(c.coeff0, p2(&[((0, 0), 1), ((-1, 1), 1), ((-2, 2), 1)]));
        assert_eq!(c.coeff_inf, p2(&[((0, 0), 1), ((-1, 1), 1)]));
        let c = grothendieck_class(ExtRational::ZERO).unwrap();
        assert_eq!((c.coeff0, c.coeff_inf), (LPoly2::zero(), LPoly2::one()));
        assert_eq!(
            grothendieck_class(frac(-1, 2)),
            Err(CyError::Negative(frac(-1, 2)))
        );
    }

    #[test]
    fn hom_dimensions() {
        let mut cache = ArcCache::new();
        assert_eq!(
            qdim_hom(Projective::Pinf, frac(3, 2), &mut cache).unwrap(),
            p2(&[((0, 0), 1), ((-1, 1), 1), ((-2, 2), 1)])
        );
        assert_eq!(
            qdim_hom(Projective::P0, ExtRational::ZERO, &mut cache).unwrap(),
            LPoly2::one()
        );
        assert!(qdim_hom(Projective::Pinf, ExtRational::ZERO, &mut cache)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn reductions() {
        assert_eq!(
            cy_reduce(&p2(&[((0, 0), 1), ((-1, 1), 1)]), 2).unwrap(),
            p1(&[(0, 1), (1, 1)])
        );
        let a0 = p2(&[((1, 0), 1), ((0, 1), 1), ((3, -2), 1)]);
        assert_eq!(cy_reduce(&a0, 2).unwrap(), p1(&[(1, 1), (2, 1), (-1, 1)]));
        assert_eq!(
            cy_reduce(&p2(&[((0, 0), 1), ((-1, 1), -1)]), 2).unwrap(),
            p1(&[(0, 1), (1, -1)])
        );
        assert_eq!(cy_reduce(&a0, 1), Err(CyError::SmallN(1)));
    }

    #[test]
    fn occ_values() {
        let mut cache = ArcCache::new();
        assert_eq!(
            occ_q_cy2(Projective::Pinf, frac(3, 2), &mut cache).unwrap(),
            p1(&[(0, 1), (-1, 1), (-2, 1)])
        );
        assert_eq!(
            occ_q_cy2(Projective::P0, ExtRational::ONE, &mut cache).unwrap(),
            LPoly1::one()
        );
        assert!(occ_q_cy2(Projective::Pinf, ExtRational::ZERO, &mut cache)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn native_reduction_small_cases() {
        let mut cache = ArcCache::new();
        for x in [
            frac(3, 2),
            frac(5, 3),
            frac(-2, 1),
            frac(-7, 5),
            ExtRational::ONE,
        ] {
            for n in 2..=4 {
                assert_eq!(
                    reduced_arcs_native(x, n).unwrap(),
                    reduced_arcs_from_two_variable(x, n, &mut cache).unwrap(),
                    "{x} N={n}"
                );
            }
        }
    }
}
