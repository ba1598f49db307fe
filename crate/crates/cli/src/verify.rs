//! Cross-validation sweep over the Stern–Brocot tree.

use std::fmt::Display;

use num_bigint::BigInt;
use num_integer::Integer;
use qdeform_core::arcmodel::{arc_data_signed, negative_arc_data, ArcData};
use qdeform_core::cyx::{
    grothendieck_class, grothendieck_class_recursive, reduced_arcs_from_two_variable,
    reduced_arcs_native,
};
use qdeform_core::farey::{frac, stern_brocot_enum, ExtRational};
use qdeform_core::knots::{crossing_count, jones_normalized, jones_oracle};
use qdeform_core::laurent::{Exp2, LPoly2};
use qdeform_core::qdeform::{Flavor, Method, Session};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub depth: u32,
    pub include_negatives: bool,
    pub include_jones: bool,
    pub jones_max_crossings: i64,
    pub jones_max_numerator: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            depth: 3,
            include_negatives: false,
            include_jones: false,
            jones_max_crossings: 12,
            jones_max_numerator: 13,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub fraction: ExtRational,
    pub check: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    /// Fractions swept (positives plus mirrored negatives).
    pub checked: usize,
    /// Individual checks evaluated, Jones cases included.
    pub checks: usize,
    pub jones_cases: usize,
    pub failures: Vec<Failure>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Collector {
    checks: usize,
    failures: Vec<Failure>,
}

impl Collector {
    fn check<T: PartialEq + Display>(
        &mut self,
        x: ExtRational,
        name: impl Into<String>,
        expected: T,
        actual: T,
    ) {
        self.checks += 1;
        if expected != actual {
            self.failures.push(Failure {
                fraction: x,
                check: name.into(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn error(&mut self, x: ExtRational, name: impl Into<String>, err: impl Display) {
        self.checks += 1;
        self.failures.push(Failure {
            fraction: x,
            check: name.into(),
            expected: "a value".into(),
            actual: format!("error: {err}"),
        });
    }

    fn merge(mut self, other: Collector) -> Collector {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self
    }
}

fn check_fraction(x: ExtRational, session: &mut Session, out: &mut Collector) {
    let (r, s) = (BigInt::from(x.numer()), BigInt::from(x.denom()));

    for flavor in Flavor::BOTH {
        let arbiter = match session.deform(x, flavor, Method::Matrix) {
            Ok(v) => v,
            Err(e) => return out.error(x, format!("deform/{flavor}/matrix"), e),
        };
        for m in [Method::Cf, Method::Farey, Method::Arc] {
            match session.deform(x, flavor, m) {
                Ok(v) => out.check(
                    x,
                    format!("cross-method/{flavor}/{m}"),
                    &arbiter.frac,
                    &v.frac,
                ),
                Err(e) => out.error(x, format!("cross-method/{flavor}/{m}"), e),
            }
        }
        let (num1, den1) = arbiter.specialize();
        out.check(x, format!("specialize/{flavor}/num"), &r, &num1);
        out.check(x, format!("specialize/{flavor}/den"), &s, &den1);
        if !x.is_negative() {
            let positive =
                arbiter.num().all_coeffs_nonnegative() && arbiter.den().all_coeffs_nonnegative();
            out.check(x, format!("positivity/{flavor}"), true, positive);
        }
    }

    let arcs = match arc_data_signed(x, &mut session.arcs) {
        Ok(d) => d,
        Err(e) => return out.error(x, "arcs", e),
    };
    check_arcs(x, &arcs, out);

    if !x.is_negative() {
        match (
            grothendieck_class(x),
            grothendieck_class_recursive(x, &mut Default::default()),
        ) {
            (Ok(a), Ok(b)) => {
                out.check(x, "grothendieck/X0", &a.coeff0, &b.coeff0);
                out.check(x, "grothendieck/Xinf", &a.coeff_inf, &b.coeff_inf);
            }
            (Err(e), _) | (_, Err(e)) => out.error(x, "grothendieck", e),
        }
    }

    for n in 2..=4 {
        let name = format!("cy-reduce/N={n}");
        match (
            reduced_arcs_native(x, n),
            reduced_arcs_from_two_variable(x, n, &mut session.arcs),
        ) {
            (Ok(a), Ok(b)) => {
                for ((which, pa), (_, pb)) in a.polys().into_iter().zip(b.polys()) {
                    out.check(x, format!("{name}/{which}"), pb, pa);
                }
            }
            (Err(e), _) | (_, Err(e)) => out.error(x, name, e),
        }
    }
}

fn check_arcs(x: ExtRational, d: &ArcData, out: &mut Collector) {
    let (r, s) = (BigInt::from(x.numer().abs()), BigInt::from(x.denom()));
    for (name, p) in d.polys() {
        let on_line = p.collapse_to_single().is_ok();
        out.check(x, format!("line/{name}"), true, on_line);
    }
    out.check(x, "total/A0", &r, &d.a0.eval_ones());
    out.check(x, "total/Ainf", &s, &d.ainf.eval_ones());
    out.check(x, "total/Binf", &r, &d.binf.eval_ones());
    out.check(x, "total/B0", &s, &d.b0.eval_ones());
    if !x.is_negative() {
        let positive = d.b0.all_coeffs_nonnegative() && d.binf.all_coeffs_nonnegative();
        out.check(x, "positivity/B", true, positive);
    }
}

/// The four polynomials of `-2` that the negative recursion must reproduce.
fn check_minus_two(out: &mut Collector) {
    let x = frac(-2, 1);
    let p = |t: &[((i64, i64), i64)]| {
        LPoly2::from_terms(t.iter().map(|&((a, b), c)| (Exp2::new(a, b), c)))
    };
    match negative_arc_data(x) {
        Ok(d) => {
            out.check(
                x,
                "negative-calibration/A0",
                &p(&[((1, 0), 1), ((3, -2), 1)]),
                &d.a0,
            );
            out.check(x, "negative-calibration/Ainf", &LPoly2::q2(), &d.ainf);
            out.check(
                x,
                "negative-calibration/Binf",
                &p(&[((0, 0), 1), ((-1, 1), 1)]),
                &d.binf,
            );
            out.check(x, "negative-calibration/B0", &p(&[((-3, 2), 1)]), &d.b0);
        }
        Err(e) => out.error(x, "negative-calibration", e),
    }
}

/// Knots `C(r/s)` with `1 < r/s`, odd `r ≤ max_numerator` and crossing
/// number at most `max_crossings`, in increasing order.
pub fn jones_cases(max_numerator: i64, max_crossings: i64) -> Vec<ExtRational> {
    let mut out = Vec::new();
    for r in (3..=max_numerator).step_by(2) {
        for s in 1..r {
            if r.gcd(&s) == 1 && crossing_count(frac(r, s)) <= max_crossings {
                out.push(frac(r, s));
            }
        }
    }
    out.sort();
    out
}

pub fn run_verify(opts: &VerifyOptions) -> RunReport {
    let mut fractions = stern_brocot_enum(opts.depth);
    if opts.include_negatives {
        let negs: Vec<_> = fractions.iter().map(|x| x.neg()).collect();
        fractions.extend(negs);
    }
    let checked = fractions.len();

    let mut total = fractions
        .par_iter()
        .fold(
            || (Session::new(), Collector::default()),
            |(mut session, mut out), &x| {
                check_fraction(x, &mut session, &mut out);
                (session, out)
            },
        )
        .map(|(_, c)| c)
        .reduce(Collector::default, Collector::merge);

    if opts.include_negatives {
        check_minus_two(&mut total);
    }

    let mut jones_count = 0;
    if opts.include_jones {
        let cases = jones_cases(opts.jones_max_numerator, opts.jones_max_crossings);
        jones_count = cases.len();
        let jones = cases
            .par_iter()
            .map(|&x| {
                let mut c = Collector::default();
                match (jones_normalized(x), jones_oracle(x)) {
                    (Ok(a), Ok(b)) => c.check(x, "jones/oracle", &b, &a),
                    (Err(e), _) | (_, Err(e)) => c.error(x, "jones/oracle", e),
                }
                c
            })
            .reduce(Collector::default, Collector::merge);
        total = total.merge(jones);
    }

    total.failures.sort();
    RunReport {
        checked,
        checks: total.checks,
        jones_cases: jones_count,
        failures: total.failures,
    }
}
