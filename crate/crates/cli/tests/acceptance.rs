//! Acceptance criteria, one PASS/FAIL line each. Runtime limits are part of
//! the criteria.

use std::collections::HashMap;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qdeform_cli::verify::jones_cases;
use qdeform_core::arcmodel::{
    arc_data_signed, left_from_arc_data, negative_arc_data, right_from_arc_data, ArcCache,
};
use qdeform_core::cyx::{
    grothendieck_class, grothendieck_class_recursive, reduced_arcs_from_two_variable,
    reduced_arcs_native,
};
use qdeform_core::farey::{frac, stern_brocot_enum, ExtRational};
use qdeform_core::knots::{jones_normalized, jones_oracle};
use qdeform_core::laurent::{Exp2, LPoly2};
use qdeform_core::qdeform::{qdeform_matrix, Flavor, Method, Session};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p2(terms: &[((i64, i64), i64)]) -> LPoly2 {
    LPoly2::from_terms(terms.iter().map(|&((a, b), c)| (Exp2::new(a, b), c)))
}

fn sweep(depth: u32) -> Vec<ExtRational> {
    stern_brocot_enum(depth)
        .into_iter()
        .flat_map(|x| [x, x.neg()])
        .collect()
}

fn worked_examples() -> Outcome {
    let mut s = Session::new();
    let deform = [
        ("3/2", Flavor::Flat, "(q^3+q^2+1)/(q^2+1)"),
        ("-2", Flavor::Flat, "-(q^2+1)/q^3"),
        ("3/2", Flavor::Sharp, "(q^2+q+1)/(q+1)"),
        ("-2", Flavor::Sharp, "-(q+1)/q^2"),
    ];
    for (x, flavor, want) in deform {
        for m in Method::ALL {
            let got = s
                .deform(x.parse().unwrap(), flavor, m)
                .map_err(|e| e.to_string())?
                .to_string();
            ensure(got == want, || {
                format!("[{x}] {flavor} {m}: {got} != {want}")
            })?;
        }
    }
    let d = arc_data_signed(frac(3, 2), &mut ArcCache::new()).map_err(|e| e.to_string())?;
    let arcs = [
        ("A0", &d.a0, p2(&[((1, 0), 1), ((0, 1), 1), ((3, -2), 1)])),
        ("Ainf", &d.ainf, p2(&[((0, 0), 1), ((2, -2), 1)])),
        (
            "Binf",
            &d.binf,
            p2(&[((0, 0), 1), ((-1, 1), 1), ((-2, 2), 1)]),
        ),
        ("B0", &d.b0, p2(&[((0, 0), 1), ((-1, 1), 1)])),
    ];
    let m = negative_arc_data(frac(-2, 1)).map_err(|e| e.to_string())?;
    let neg = [
        ("A0(-2)", &m.a0, p2(&[((1, 0), 1), ((3, -2), 1)])),
        ("Ainf(-2)", &m.ainf, LPoly2::q2()),
        ("Binf(-2)", &m.binf, p2(&[((0, 0), 1), ((-1, 1), 1)])),
        ("B0(-2)", &m.b0, p2(&[((-3, 2), 1)])),
    ];
    for (name, got, want) in arcs.into_iter().chain(neg) {
        ensure(got == &want, || {
            format!(
                "{name}: {} != {}",
                got.render_compact(),
                want.render_compact()
            )
        })?;
    }
    Ok("4 deformations x 4 methods, 8 arc polynomials".into())
}

/// Criteria 2 to 4 share one sweep.
fn sweep_checks() -> (Outcome, Outcome, Outcome) {
    let mut session = Session::new();
    let (mut cross, mut spec, mut line) = (Ok(()), Ok(()), Ok(()));
    let xs = sweep(10);
    let mut lines = 0;
    for &x in &xs {
        for flavor in Flavor::BOTH {
            let arbiter = session.deform(x, flavor, Method::Matrix).unwrap();
            for m in Method::ALL {
                let v = session.deform(x, flavor, m).unwrap();
                if cross.is_ok() {
                    cross = ensure(v == arbiter, || {
                        format!("{x} {flavor} {m}: {v} != {arbiter}")
                    });
                }
            }
            let (r, s) = arbiter.specialize();
            let positive = x.is_negative()
                || (arbiter.num().all_coeffs_nonnegative()
                    && arbiter.den().all_coeffs_nonnegative());
            if spec.is_ok() {
                spec = ensure(
                    (r, s) == (x.numer().into(), x.denom().into()) && positive,
                    || format!("{x} {flavor}"),
                );
            }
        }
        let d = arc_data_signed(x, &mut session.arcs).unwrap();
        for (name, p) in d.polys() {
            lines += 1;
            if line.is_ok() {
                line = ensure(p.collapse_to_single().is_ok(), || {
                    format!("{x} {name} is off the line")
                });
            }
        }
    }
    let n = xs.len();
    (
        cross.map(|_| format!("{n} fractions x 2 flavors x 4 methods")),
        spec.map(|_| format!("{n} fractions x 2 flavors")),
        line.map(|_| format!("{lines} arc polynomials")),
    )
}

fn grothendieck() -> Outcome {
    let mut cache = HashMap::new();
    let xs = stern_brocot_enum(10);
    for &x in &xs {
        let a = grothendieck_class(x).map_err(|e| e.to_string())?;
        let b = grothendieck_class_recursive(x, &mut cache).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{x}"))?;
    }
    Ok(format!("{} classes", xs.len()))
}

fn cy_commutation() -> Outcome {
    let mut cache = ArcCache::new();
    let xs = sweep(8);
    for &x in &xs {
        for n in 2..=4 {
            let a = reduced_arcs_native(x, n).map_err(|e| e.to_string())?;
            let b = reduced_arcs_from_two_variable(x, n, &mut cache).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{x} N={n}"))?;
        }
    }
    Ok(format!("{} fractions x N in 2..=4", xs.len()))
}

fn jones() -> Outcome {
    let cases = jones_cases(13, 12);
    ensure(
        cases.contains(&frac(3, 1)) && cases.contains(&frac(5, 2)),
        || "anchors missing".into(),
    )?;
    for &x in &cases {
        let a = jones_normalized(x).map_err(|e| e.to_string())?;
        let b = jones_oracle(x).map_err(|e| e.to_string())?;
        ensure(a == b, || {
            format!("C({x}): {} != {}", a.render_compact(), b.render_compact())
        })?;
    }
    let trefoil = jones_normalized(frac(3, 1)).unwrap().render_compact();
    let figure_eight = jones_normalized(frac(5, 2)).unwrap().render_compact();
    ensure(trefoil == "q^3+q+1", || format!("trefoil {trefoil}"))?;
    ensure(figure_eight == "q^4+q^3+q^2+q+1", || {
        format!("figure-eight {figure_eight}")
    })?;
    Ok(format!("{} knots", cases.len()))
}

fn negative_calibration() -> Outcome {
    let m = negative_arc_data(frac(-2, 1)).map_err(|e| e.to_string())?;
    ensure(
        m.a0 == p2(&[((1, 0), 1), ((3, -2), 1)]) && m.ainf == LPoly2::q2(),
        || "A(-2)".into(),
    )?;
    ensure(
        m.binf == p2(&[((0, 0), 1), ((-1, 1), 1)]) && m.b0 == p2(&[((-3, 2), 1)]),
        || "B(-2)".into(),
    )?;
    let mut cache = ArcCache::new();
    let xs: Vec<_> = stern_brocot_enum(6)
        .into_iter()
        .map(ExtRational::neg)
        .collect();
    for &x in &xs {
        let d = arc_data_signed(x, &mut cache).map_err(|e| e.to_string())?;
        let left = left_from_arc_data(&d).map_err(|e| e.to_string())?;
        let right = right_from_arc_data(&d).map_err(|e| e.to_string())?;
        ensure(left == qdeform_matrix(x, Flavor::Flat).unwrap(), || {
            format!("left {x}")
        })?;
        ensure(right == qdeform_matrix(x, Flavor::Sharp).unwrap(), || {
            format!("right {x}")
        })?;
        ensure(d.a0.eval_ones() == BigInt::from(-x.numer()), || {
            format!("A0(1) {x}")
        })?;
    }
    Ok(format!("-2 polynomials and {} negatives", xs.len()))
}

fn verify_command() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_qdeform"))
        .args([
            "verify",
            "--depth",
            "10",
            "--include-negatives",
            "--include-jones",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout).trim().to_string();
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}: {text}", out.status.code())
    })?;
    Ok(text)
}

struct Report {
    all_passed: bool,
}

impl Report {
    fn line(&mut self, id: &str, name: &str, limit: Duration, elapsed: Duration, outcome: Outcome) {
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit:?} limit")),
            Err(e) => (false, e),
        };
        self.all_passed &= ok;
        let status = if ok { "PASS" } else { "FAIL" };
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "[{status}] {id} {name} ({elapsed:.2?}): {detail}");
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

#[test]
fn acceptance() {
    let mut r = Report { all_passed: true };
    let secs = Duration::from_secs;

    let (o, t) = timed(worked_examples);
    r.line("1", "worked examples", secs(1), t, o);

    let ((cross, spec, line), t) = timed(sweep_checks);
    r.line("2", "cross-method equivalence", secs(10), t, cross);
    r.line("3", "specialization and positivity", secs(10), t, spec);
    r.line("4", "single exponent line", secs(10), t, line);

    let (o, t) = timed(grothendieck);
    r.line("5", "Grothendieck linearity", secs(10), t, o);

    let (o, t) = timed(cy_commutation);
    r.line("6", "CY-N reduction commutes", secs(10), t, o);

    let (o, t) = timed(jones);
    r.line("7", "Jones against the bracket oracle", secs(30), t, o);

    let (o, t) = timed(negative_calibration);
    r.line("8", "negative calibration", secs(5), t, o);

    let (o, t) = timed(verify_command);
    r.line(
        "-",
        "verify --depth 10 --include-negatives --include-jones",
        secs(60),
        t,
        o,
    );

    assert!(r.all_passed, "at least one acceptance criterion failed");
}
