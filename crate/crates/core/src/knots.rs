//! Jones polynomials of two-bridge knots.
//!
//! [`jones_normalized`] reads the polynomial off the arc data: `A0` of `r/s`
//! collapsed to one variable and normalized. [`jones_oracle`] computes it
//! independently from a Kauffman bracket state sum over a 4-plat diagram.
//!
//! # Diagram
//!
//! Four strand positions `0..4`, capped above and below by the pairs
//! `(0, 1)` and `(2, 3)`. The regular continued fraction of `r/s` is made
//! odd-length and its blocks alternate between twists on positions `(1, 2)`
//! with `/` over and twists on `(0, 1)` with `\` over, which keeps the
//! diagram alternating.
//!
//! A crossing has corners `TL (-1, 1)`, `TR (1, 1)`, `BL (-1, -1)`,
//! `BR (1, -1)`. The A-smoothing joins `TL–TR` and `BL–BR` when `\` is over
//! and `TL–BL`, `TR–BR` when `/` is over. The sign of a crossing is the sign
//! of `o × u` for the oriented over and under directions.
//!
//! # Conventions
//!
//! `V(t) = (-A)^(-3w)⟨D⟩` at `t = A^-4`, then `q = -t^-1`, then
//! [`normalize_jones`]. With these choices the diagram above matches the
//! arc-model value for `r/s` directly, so the oracle uses it unmirrored;
//! [`jones_oracle_mirrors`] returns both chiralities for amphichirality
//! checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::arcmodel::{arc_data, ArcError};
use crate::farey::{cf_expand, ExtRational};
use crate::laurent::{LPoly1, LaurentError};

/// Largest diagram the state sum will enumerate.
pub const CROSSING_BUDGET: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("{0} must be greater than 1")]
    Domain(ExtRational),
    #[error("C({0}) is a two-component link (even numerator)")]
    NotAKnot(ExtRational),
    #[error("{crossings} crossings exceed the state-sum budget of {budget}")]
    Budget { crossings: usize, budget: usize },
    #[error("bracket exponent {0} is not a multiple of 4 after writhe correction")]
    FractionalExponent(i64),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Which diagonal is the over-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Over {
    /// `\`, joining `TL` and `BR`.
    Back,
    /// `/`, joining `BL` and `TR`.
    Forward,
}

impl Over {
    fn flip(self) -> Over {
        match self {
            Over::Back => Over::Forward,
            Over::Forward => Over::Back,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// The crossing sits between positions `left` and `left + 1`.
    pub left: usize,
    pub over: Over,
    pub sign: i8,
}

/// A 4-plat diagram with plat closure on both ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangleDiagram {
    pub value: ExtRational,
    /// Odd-length continued fraction the twist blocks come from.
    pub blocks: Vec<i64>,
    pub crossings: Vec<Crossing>,
    pub writhe: i64,
}

const TL: usize = 0;
const TR: usize = 1;
const BL: usize = 2;
const BR: usize = 3;

fn corner(c: usize) -> (i64, i64) {
    match c {
        TL => (-1, 1),
        TR => (1, 1),
        BL => (-1, -1),
        _ => (1, -1),
    }
}

/// Point graph of a diagram: crossing `k` owns points `4k..4k+4`, then four
/// top cap points and four bottom cup points. Every point has one segment
/// neighbour and one "through" neighbour (across a crossing strand or a cap).
struct Skeleton {
    segment: Vec<usize>,
    through: Vec<usize>,
}

impl Skeleton {
    fn new(crossings: &[Crossing]) -> Self {
        let c = crossings.len();
        let top = |p: usize| 4 * c + p;
        let bottom = |p: usize| 4 * c + 4 + p;
        let n = 4 * c + 8;
        let mut segment = vec![usize::MAX; n];
        let mut through = vec![usize::MAX; n];
        let link = |v: &mut Vec<usize>, a: usize, b: usize| {
            v[a] = b;
            v[b] = a;
        };
        let mut above: [usize; 4] = [top(0), top(1), top(2), top(3)];
        for (k, x) in crossings.iter().enumerate() {
            link(&mut segment, above[x.left], 4 * k + TL);
            link(&mut segment, above[x.left + 1], 4 * k + TR);
            above[x.left] = 4 * k + BL;
            above[x.left + 1] = 4 * k + BR;
            link(&mut through, 4 * k + TL, 4 * k + BR);
            link(&mut through, 4 * k + TR, 4 * k + BL);
        }
        for (p, &a) in above.iter().enumerate() {
            link(&mut segment, a, bottom(p));
        }
        link(&mut through, top(0), top(1));
        link(&mut through, top(2), top(3));
        link(&mut through, bottom(0), bottom(1));
        link(&mut through, bottom(2), bottom(3));
        Skeleton { segment, through }
    }

    /// Walks the closed curve through `top(0)`; returns the visit order.
    fn walk(&self, start: usize) -> Vec<usize> {
        let mut order = vec![start];
        let mut cur = self.segment[start];
        let mut via_segment = true;
        while cur != start {
            order.push(cur);
            cur = if via_segment {
                self.through[cur]
            } else {
                self.segment[cur]
            };
            via_segment = !via_segment;
        }
        order
    }
}

fn orient(crossings: &mut [Crossing], value: ExtRational) -> Result<i64, KnotError> {
    let c = crossings.len();
    let skel = Skeleton::new(crossings);
    let order = skel.walk(4 * c);
    if order.len() != 4 * c + 8 {
        return Err(KnotError::NotAKnot(value));
    }
    // Entry corner of each strand: the first of its two ports visited.
    let mut entry = vec![[usize::MAX; 2]; c];
    for &pt in &order {
        if pt < 4 * c {
            let (k, corner_id) = (pt / 4, pt % 4);
            let strand = if corner_id == TL || corner_id == BR {
                0
            } else {
                1
            };
            if entry[k][strand] == usize::MAX {
                entry[k][strand] = corner_id;
            }
        }
    }
    let dir = |from: usize| {
        let to = match from {
            TL => BR,
            BR => TL,
            TR => BL,
            _ => TR,
        };
        let (a, b) = (corner(from), corner(to));
        (b.0 - a.0, b.1 - a.1)
    };
    let mut writhe = 0;
    for (k, x) in crossings.iter_mut().enumerate() {
        let back = dir(entry[k][0]);
        let forward = dir(entry[k][1]);
        let (o, u) = match x.over {
            Over::Back => (back, forward),
            Over::Forward => (forward, back),
        };
        x.sign = (o.0 * u.1 - o.1 * u.0).signum() as i8;
        writhe += x.sign as i64;
    }
    Ok(writhe)
}

/// The odd-length regular continued fraction used for the twist blocks.
fn odd_blocks(x: ExtRational) -> Vec<i64> {
    let mut b = cf_expand(x);
    if b.len().is_multiple_of(2) {
        *b.last_mut().expect("nonempty") -= 1;
        b.push(1);
    }
    b
}

pub fn two_bridge_diagram(x: ExtRational) -> Result<TangleDiagram, KnotError> {
    if x.is_infinite() || x <= ExtRational::ONE {
        return Err(KnotError::Domain(x));
    }
    let blocks = odd_blocks(x);
    let mut crossings = Vec::new();
    for (i, &n) in blocks.iter().enumerate() {
        let (left, over) = if i % 2 == 0 {
            (1, Over::Forward)
        } else {
            (0, Over::Back)
        };
        crossings.extend((0..n).map(|_| Crossing {
            left,
            over,
            sign: 0,
        }));
    }
    let writhe = orient(&mut crossings, x)?;
    Ok(TangleDiagram {
        value: x,
        blocks,
        crossings,
        writhe,
    })
}

impl TangleDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Same projection with every crossing switched.
    pub fn mirror(&self) -> TangleDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                left: c.left,
                over: c.over.flip(),
                sign: -c.sign,
            })
            .collect();
        TangleDiagram {
            value: self.value,
            blocks: self.blocks.clone(),
            crossings,
            writhe: -self.writhe,
        }
    }
}

/// The Kauffman bracket in the variable `A` (rendered as `q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketPoly(pub LPoly1);

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
        ra != rb
    }
}

/// Number of loops after smoothing every crossing; bit `k` of `state` set
/// means crossing `k` takes the B-smoothing.
pub fn state_loops(d: &TangleDiagram, state: u64) -> usize {
    let c = d.crossings.len();
    let skel = Skeleton::new(&d.crossings);
    loops_with(&skel, d, state, 4 * c + 8)
}

fn loops_with(skel: &Skeleton, d: &TangleDiagram, state: u64, n: usize) -> usize {
    let mut dsu = Dsu((0..n).collect());
    let mut components = n;
    let c = d.crossings.len();
    for pt in 0..n {
        if dsu.union(pt, skel.segment[pt]) {
            components -= 1;
        }
        if pt >= 4 * c && dsu.union(pt, skel.through[pt]) {
            components -= 1;
        }
    }
    for (k, x) in d.crossings.iter().enumerate() {
        let b_smoothing = state >> k & 1 == 1;
        let horizontal = (x.over == Over::Back) != b_smoothing;
        let pairs = if horizontal {
            [(TL, TR), (BL, BR)]
        } else {
            [(TL, BL), (TR, BR)]
        };
        for (a, b) in pairs {
            if dsu.union(4 * k + a, 4 * k + b) {
                components -= 1;
            }
        }
    }
    components
}

/// `⟨D⟩ = Σ A^(#A - #B) (-A^2 - A^-2)^(loops - 1)` over all `2^c` states.
pub fn kauffman_bracket(d: &TangleDiagram) -> Result<BracketPoly, KnotError> {
    let c = d.crossings.len();
    if c > CROSSING_BUDGET {
        return Err(KnotError::Budget {
            crossings: c,
            budget: CROSSING_BUDGET,
        });
    }
    let skel = Skeleton::new(&d.crossings);
    let n = 4 * c + 8;
    let mut counts: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    for state in 0..(1u64 << c) {
        let b = state.count_ones() as i64;
        let loops = loops_with(&skel, d, state, n);
        debug_assert!(loops >= 1);
        *counts.entry((c as i64 - 2 * b, loops)).or_default() += 1;
    }
    let delta = LPoly1::from_terms([(2, -1), (-2, -1)]);
    let mut powers = vec![LPoly1::one()];
    let mut out = LPoly1::zero();
    for ((e, loops), count) in counts {
        while powers.len() < loops {
            let next = powers.last().expect("nonempty") * &delta;
            powers.push(next);
        }
        out += &powers[loops - 1].shift(e).scale(&BigInt::from(count));
    }
    Ok(BracketPoly(out))
}

/// `(-A)^(-3w)⟨D⟩` at `t = A^-4`, as a polynomial in `t`.
pub fn jones_in_t(d: &TangleDiagram) -> Result<LPoly1, KnotError> {
    let bracket = kauffman_bracket(d)?.0;
    let w = d.writhe;
    let sign = if (3 * w).rem_euclid(2) == 0 { 1 } else { -1 };
    let v_a = bracket.shift(-3 * w).scale(&BigInt::from(sign));
    let mut terms = Vec::with_capacity(v_a.len());
    for (e, c) in v_a.terms() {
        if e % 4 != 0 {
            return Err(KnotError::FractionalExponent(e));
        }
        terms.push((-e / 4, c.clone()));
    }
    Ok(LPoly1::from_terms(terms))
}

/// `t^k -> (-1)^k q^-k`, i.e. `q = -t^-1`.
pub fn t_to_q(v: &LPoly1) -> LPoly1 {
    LPoly1::from_terms(
        v.terms()
            .map(|(k, c)| (-k, if k % 2 == 0 { c.clone() } else { -c })),
    )
}

/// Multiplies by `±q^k` so the lowest term is a positive constant.
pub fn normalize_jones(p: &LPoly1) -> LPoly1 {
    match (p.min_exp(), p.lowest_coeff()) {
        (Some(k), Some(c)) => {
            let shifted = p.shift(-k);
            if c < &BigInt::from(0) {
                -shifted
            } else {
                shifted
            }
        }
        _ => LPoly1::zero(),
    }
}

fn oracle_for(d: &TangleDiagram) -> Result<LPoly1, KnotError> {
    Ok(normalize_jones(&t_to_q(&jones_in_t(d)?)))
}

fn knot_diagram(x: ExtRational) -> Result<TangleDiagram, KnotError> {
    if x.is_infinite() || x <= ExtRational::ONE {
        return Err(KnotError::Domain(x));
    }
    if x.numer() % 2 == 0 {
        return Err(KnotError::NotAKnot(x));
    }
    two_bridge_diagram(x)
}

/// Normalized Jones polynomial of `C(x)` from the state sum.
pub fn jones_oracle(x: ExtRational) -> Result<LPoly1, KnotError> {
    oracle_for(&knot_diagram(x)?)
}

/// `(diagram, mirror image)` normalized Jones polynomials.
pub fn jones_oracle_mirrors(x: ExtRational) -> Result<(LPoly1, LPoly1), KnotError> {
    let d = knot_diagram(x)?;
    Ok((oracle_for(&d)?, oracle_for(&d.mirror())?))
}

/// `A0` of `x` at `q = q1^-1 q2`, prefactor dropped, normalized.
pub fn jones_normalized(x: ExtRational) -> Result<LPoly1, KnotError> {
    if x.is_infinite() || x <= ExtRational::ONE {
        return Err(KnotError::Domain(x));
    }
    let a0 = arc_data(x)?.a0;
    Ok(normalize_jones(&a0.collapse_to_single()?.poly))
}

/// Sum of the regular continued fraction terms, the crossing number of the
/// reduced alternating diagram.
pub fn crossing_count(x: ExtRational) -> i64 {
    cf_expand(x).iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::frac;

    fn p(terms: &[(i64, i64)]) -> LPoly1 {
        LPoly1::from_terms(terms.iter().copied())
    }

    #[test]
    fn diagram_sizes() {
        assert_eq!(two_bridge_diagram(frac(3, 1)).unwrap().crossing_count(), 3);
        assert_eq!(two_bridge_diagram(frac(5, 2)).unwrap().crossing_count(), 4);
        assert_eq!(two_bridge_diagram(frac(7, 3)).unwrap().crossing_count(), 5);
        assert!(two_bridge_diagram(ExtRational::ONE).is_err());
    }

    #[test]
    fn crossingless_plat_is_a_two_component_unlink() {
        let d = TangleDiagram {
            value: frac(3, 1),
            blocks: vec![],
            crossings: vec![],
            writhe: 0,
        };
        assert_eq!(kauffman_bracket(&d).unwrap().0, p(&[(2, -1), (-2, -1)]));
    }

    #[test]
    fn one_crossing_unknot() {
        let mut crossings = vec![Crossing {
            left: 1,
            over: Over::Forward,
            sign: 0,
        }];
        let writhe = orient(&mut crossings, frac(2, 1)).unwrap();
        let d = TangleDiagram {
            value: frac(2, 1),
            blocks: vec![1],
            crossings,
            writhe,
        };
        assert_eq!(kauffman_bracket(&d).unwrap().0.len(), 1);
        assert_eq!(jones_in_t(&d).unwrap(), LPoly1::one());
    }

    #[test]
    fn trefoil() {
        let d = two_bridge_diagram(frac(3, 1)).unwrap();
        assert_eq!(d.writhe.abs(), 3);
        assert_eq!(kauffman_bracket(&d).unwrap().0.len(), 3);
        let v = jones_in_t(&d).unwrap();
        let right = p(&[(1, 1), (3, 1), (4, -1)]);
        assert!(v == right || v == right.invert_q(), "{v}");
        assert_eq!(
            jones_oracle(frac(3, 1)).unwrap(),
            p(&[(0, 1), (1, 1), (3, 1)])
        );
    }

    #[test]
    fn figure_eight() {
        let d = two_bridge_diagram(frac(5, 2)).unwrap();
        assert_eq!(
            jones_in_t(&d).unwrap(),
            p(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)])
        );
        let (a, b) = jones_oracle_mirrors(frac(5, 2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, p(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]));
    }

    #[test]
    fn from_arcs() {
        assert_eq!(
            jones_normalized(frac(3, 1)).unwrap(),
            p(&[(0, 1), (1, 1), (3, 1)])
        );
        assert_eq!(
            jones_normalized(frac(3, 2)).unwrap(),
            p(&[(0, 1), (2, 1), (3, 1)])
        );
        assert_eq!(
            jones_normalized(frac(5, 2)).unwrap(),
            p(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)])
        );
        assert!(jones_normalized(ExtRational::ONE).is_err());
    }

    #[test]
    fn seven_thirds_agrees() {
        assert_eq!(
            jones_oracle(frac(7, 3)).unwrap(),
            jones_normalized(frac(7, 3)).unwrap()
        );
    }

    #[test]
    fn links_are_rejected() {
        assert_eq!(
            jones_oracle(frac(4, 1)),
            Err(KnotError::NotAKnot(frac(4, 1)))
        );
    }

    #[test]
    fn every_state_has_a_loop() {
        let d = two_bridge_diagram(frac(7, 3)).unwrap();
        for s in 0..(1u64 << d.crossing_count()) {
            assert!(state_loops(&d, s) >= 1);
        }
    }
}
