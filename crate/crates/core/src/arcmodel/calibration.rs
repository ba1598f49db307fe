//! Brute-force search that fixes the negative-side arc recursion.
//!
//! Each side is searched on its own: the `A` side (`A0`, `Ainf`, left
//! deformation) and the `B` side (`Binf`, `B0`, right deformation). A
//! candidate is a [`Rule`] together with seed values at `-0` and `-∞`.
//!
//! * Rules: inheritance from either parent, weight driver `t ∈ {l+1, a2m}`,
//!   weight `q1^(α0+α1·t) q2^(β0+β1·t)` with every coefficient in `-2..=2`.
//!   That is 2 × 2 × 625 = 2500 rules.
//! * Seeds: each nonzero positive seed polynomial times `±q1^i q2^j` with
//!   `i, j ∈ -1..=1` (18 choices); zero seeds stay zero.
//!
//! Stage one fixes the numerator polynomial (`A0`, resp. `Binf`) against
//! the value at `-2`; stage two adds the denominator polynomial (`Ainf`,
//! resp. `B0`) against `-2`; stage three checks every survivor on all
//! negatives to the requested depth: the twisted ratio must equal the
//! matrix-method deformation, both polynomials must sum to `|r|` and `s` at
//! `q1 = q2 = 1`, and both must lie on one line `e1 + e2 = c`.
//!
//! At depth 6 exactly one candidate survives on each side; it is the
//! `NEGATIVE_A` / `NEGATIVE_B` rule with the seeds of
//! [`negative_arc_seeds`](super::negative_arc_seeds).

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{collapse_ratio, Driver, Inherit, Rule};
use crate::farey::{cf_expand_even, farey_decompose, stern_brocot_enum, ExtRational};
use crate::laurent::{Exp2, LPoly2};
use crate::qdeform::{qdeform_matrix, Flavor, QRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl Side {
    /// Positive seeds as `[numerator, denominator]` at `0` and at `∞`.
    fn positive_seeds(self) -> ([LPoly2; 2], [LPoly2; 2]) {
        let (z, i) = super::arc_seeds();
        match self {
            Side::A => ([z.a0, z.ainf], [i.a0, i.ainf]),
            Side::B => ([z.binf, z.b0], [i.binf, i.b0]),
        }
    }

    /// The polynomials of `-2` that the search must reproduce.
    fn minus_two(self) -> [LPoly2; 2] {
        let m = |e1, e2| LPoly2::mono(e1, e2);
        match self {
            Side::A => [&m(1, 0) + &m(3, -2), m(0, 1)],
            Side::B => [&m(0, 0) + &m(-1, 1), m(-3, 2)],
        }
    }

    fn flavor(self) -> Flavor {
        match self {
            Side::A => Flavor::Flat,
            Side::B => Flavor::Sharp,
        }
    }

    /// Twist applied to the numerator on the negative side.
    fn epsilon(self) -> LPoly2 {
        match self {
            Side::A => -LPoly2::one(),
            Side::B => -LPoly2::mono(-1, 0),
        }
    }
}

/// A fully specified negative-side recursion for one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub rule: Rule,
    /// `[numerator, denominator]` at `-0`.
    pub seed_zero: [LPoly2; 2],
    /// `[numerator, denominator]` at `-∞`.
    pub seed_inf: [LPoly2; 2],
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub side: Side,
    pub depth: u32,
    pub rules_scanned: usize,
    pub after_numerator: usize,
    pub after_denominator: usize,
    pub candidates: Vec<Candidate>,
}

/// Stern–Brocot nodes in an order where parents precede children; slot 0
/// is `0` and slot 1 is `∞`.
struct Plan {
    values: Vec<ExtRational>,
    left: Vec<usize>,
    right: Vec<usize>,
    l: Vec<i64>,
    last: Vec<i64>,
}

impl Plan {
    fn new(depth: u32) -> Self {
        let mut values = vec![ExtRational::ZERO, ExtRational::INFINITY];
        values.extend(stern_brocot_enum(depth));
        let index: HashMap<ExtRational, usize> =
            values.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut plan = Plan {
            values,
            left: vec![0; 2],
            right: vec![0; 2],
            l: vec![0; 2],
            last: vec![0; 2],
        };
        for i in 2..plan.values.len() {
            let x = plan.values[i];
            let d = farey_decompose(x).expect("positive node");
            plan.left.push(index[&d.left_parent]);
            plan.right.push(index[&d.right_parent]);
            plan.l.push(d.l);
            plan.last
                .push(cf_expand_even(x).expect("positive node").last());
        }
        plan
    }

    fn evaluate(&self, rule: &Rule, zero: &LPoly2, inf: &LPoly2) -> Vec<LPoly2> {
        let mut out = Vec::with_capacity(self.values.len());
        out.push(zero.clone());
        out.push(inf.clone());
        for i in 2..self.values.len() {
            let t = rule.driver_value(self.l[i], self.last[i]);
            let v = rule.step(&out[self.left[i]], &out[self.right[i]], t);
            out.push(v);
        }
        out
    }
}

/// All 2500 rules of the search space.
pub fn rule_space() -> Vec<Rule> {
    let r = -2..=2;
    let mut out = Vec::new();
    for inherit in [Inherit::Right, Inherit::Left] {
        for driver in [Driver::LastTerm, Driver::LPlusOne] {
            for a0 in r.clone() {
                for a1 in r.clone() {
                    for b0 in r.clone() {
                        for b1 in r.clone() {
                            out.push(Rule {
                                inherit,
                                driver,
                                e1: (a0, a1),
                                e2: (b0, b1),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// `±q1^i q2^j` for `i, j ∈ -1..=1`.
pub fn multipliers() -> Vec<LPoly2> {
    let mut out = Vec::new();
    for sign in [1, -1] {
        for i in -1..=1 {
            for j in -1..=1 {
                out.push(LPoly2::monomial(Exp2::new(i, j), sign));
            }
        }
    }
    out
}

fn seed_choices(seed: &LPoly2, mults: &[LPoly2]) -> Vec<LPoly2> {
    if seed.is_zero() {
        vec![LPoly2::zero()]
    } else {
        mults.iter().map(|m| m * seed).collect()
    }
}

struct Expected {
    flavor_value: QRational,
    r: BigInt,
    s: BigInt,
}

fn full_check(
    side: Side,
    plan: &Plan,
    expected: &[Expected],
    num: &[LPoly2],
    den: &[LPoly2],
) -> bool {
    let eps = side.epsilon();
    for i in 2..plan.values.len() {
        let e = &expected[i];
        if num[i].eval_ones() != e.r || den[i].eval_ones() != e.s {
            return false;
        }
        let ratio = collapse_ratio(
            e.flavor_value.value,
            side.flavor(),
            &(&eps * &num[i]),
            &den[i],
        );
        match ratio {
            Ok(v) if v == e.flavor_value => {}
            _ => return false,
        }
    }
    true
}

/// Runs the three-stage search for one side.
pub fn search(side: Side, depth: u32) -> SearchReport {
    let rules = rule_space();
    let mults = multipliers();
    let (pos_zero, pos_inf) = side.positive_seeds();
    let target = side.minus_two();

    // Depth 1 holds 1, 1/2 and 2; slot 4 is 2.
    let small = Plan::new(1);
    let slot_two = 4;
    debug_assert_eq!(small.values[slot_two], ExtRational::integer(2));

    let num_zero = seed_choices(&pos_zero[0], &mults);
    let num_inf = seed_choices(&pos_inf[0], &mults);
    let den_zero = seed_choices(&pos_zero[1], &mults);
    let den_inf = seed_choices(&pos_inf[1], &mults);

    let mut stage_one = Vec::new();
    for rule in &rules {
        for z in &num_zero {
            for i in &num_inf {
                if small.evaluate(rule, z, i)[slot_two] == target[0] {
                    stage_one.push((*rule, z.clone(), i.clone()));
                }
            }
        }
    }

    let mut stage_two = Vec::new();
    for (rule, nz, ni) in &stage_one {
        for z in &den_zero {
            for i in &den_inf {
                if small.evaluate(rule, z, i)[slot_two] == target[1] {
                    stage_two.push(Candidate {
                        rule: *rule,
                        seed_zero: [nz.clone(), z.clone()],
                        seed_inf: [ni.clone(), i.clone()],
                    });
                }
            }
        }
    }

    let plan = Plan::new(depth);
    let expected: Vec<Expected> = plan
        .values
        .iter()
        .map(|x| {
            let neg = x.neg();
            let flavor_value = qdeform_matrix(neg, side.flavor()).expect("matrix method is total");
            Expected {
                flavor_value,
                r: BigInt::from(x.numer()),
                s: BigInt::from(x.denom()),
            }
        })
        .collect();

    let candidates = stage_two
        .iter()
        .filter(|c| {
            let num = plan.evaluate(&c.rule, &c.seed_zero[0], &c.seed_inf[0]);
            let den = plan.evaluate(&c.rule, &c.seed_zero[1], &c.seed_inf[1]);
            full_check(side, &plan, &expected, &num, &den)
        })
        .cloned()
        .collect();

    SearchReport {
        side,
        depth,
        rules_scanned: rules.len(),
        after_numerator: stage_one.len(),
        after_denominator: stage_two.len(),
        candidates,
    }
}
