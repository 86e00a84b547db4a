//! One function per acceptance criterion. Each returns a short summary on
//! success and the first discrepancy found otherwise.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use nashcert::blowup::{
    cax2_action, chart, discrepancy_of_weight, strict_transform_factorization,
    verify_jacobian_point, verify_quotient_point, Hyperquotient,
};
use nashcert::cax2::{
    certify_nash, normalize_case2, select_weight, validate_cax2, CertifyOptions, CheckStatus,
    PointLocation, Sign, Verdict,
};
use nashcert::dsl::{parse_polynomial, parse_singularity, print_singularity};
use nashcert::lattice::{QuotientLattice, SimplicialCone, DEFAULT_BOX_BOUND};
use nashcert::num::{q, qi, Q};
use nashcert::poly::Weight;
use nashcert::report::RowStatus;
use nashcert::reproduction;
use num_traits::{One, Signed, Zero};

use super::*;

pub type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure!(t < limit, "{what} took {t:?}, limit {limit:?}");
    Ok(())
}

pub fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_nashcert"))
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/sing")
}

pub fn corpus() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory exists")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "sing"))
        .collect();
    files.sort();
    files
}

pub fn cax2(f: &str) -> Hyperquotient {
    let phi = parse_polynomial(&format!("x^2 + y^2 + {f}")).unwrap();
    Hyperquotient::new(phi, cax2_action()).unwrap()
}

fn standard_cone(m: i64, weights: &[i64]) -> SimplicialCone {
    SimplicialCone::standard(QuotientLattice::cyclic(m as u64, weights).unwrap()).unwrap()
}

/// Toric baseline on `Z^3 + Z (1/2)(1,1,1)`.
pub fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cone = standard_cone(2, &[1, 1, 1]);
    let nash = cone.nash_valuations(&qi(2), DEFAULT_BOX_BOUND).map_err(err)?;
    within(start, Duration::from_secs(1), "toric nash")?;
    ensure!(nash.complete, "completeness check failed");
    ensure!(nash.valuations.len() == 1, "{} valuations", nash.valuations.len());
    let v = &nash.valuations[0];
    let half = vec![q(1, 2); 3];
    ensure!(v.point.coordinates == half, "point {}", v.point);
    ensure!(v.discrepancy == q(1, 2), "discrepancy {}", v.discrepancy);

    // brute-force domination over the box [0, 3]^3
    let o = CyclicOracle::new(2, &[1, 1, 1]);
    let pts: Vec<Vec<i64>> = o.box_points(3).into_iter().filter(|p| o.in_s(p)).collect();
    let minimal: Vec<&Vec<i64>> = pts
        .iter()
        .filter(|p| {
            !pts.iter()
                .any(|u| u != *p && u.iter().zip(p.iter()).all(|(a, b)| a <= b))
        })
        .collect();
    ensure!(
        minimal.len() == 1 && o.to_q(minimal[0]) == half,
        "oracle minimal set {minimal:?}"
    );

    // the command-line surface reports the same
    let out = Command::new(binary())
        .args(["toric", "nash", "1/2(1,1,1)", "std"])
        .env_remove("NASHCERT_BOX_BOUND")
        .output()
        .map_err(err)?;
    ensure!(out.status.code() == Some(0), "toric nash exit {:?}", out.status);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(err)?;
    let vals = &v["result"]["nash"]["valuations"];
    ensure!(
        vals.as_array().map(Vec::len) == Some(1)
            && vals[0]["discrepancy"] == "1/2"
            && vals[0]["point"]["coordinates"] == serde_json::json!(["1/2", "1/2", "1/2"]),
        "CLI output {vals}"
    );
    Ok("one valuation (1/2,1/2,1/2), discrepancy 1/2; oracle and CLI agree".into())
}

/// Terminality and minimality sweep over `1/r(1,a,r-a)`, `r <= 12`.
pub fn criterion_2() -> Outcome {
    // only engine calls count towards the runtime limit
    let mut engine_time = Duration::ZERO;
    let mut timed = |f: &mut dyn FnMut() -> Result<bool, String>| {
        let start = Instant::now();
        let r = f();
        engine_time += start.elapsed();
        r
    };
    let mut checked = 0usize;
    for (r, a) in terminal_family() {
        let w = [1, a, r - a];
        let o = CyclicOracle::new(r, &w);
        let mut cone = None;
        let mut low = Vec::new();
        let mut engine = BTreeSet::new();
        let terminal = timed(&mut || {
            let c = standard_cone(r, &w);
            let t = c.is_terminal().terminal;
            for p in c.enumerate_s(&qi(2)).map_err(err)? {
                low.push((c.is_minimal(&p.coordinates).map_err(err)?, p));
            }
            engine = c
                .enumerate_s(&qi(3))
                .map_err(err)?
                .into_iter()
                .map(|p| p.coordinates)
                .collect::<BTreeSet<Vec<Q>>>();
            cone = Some(c);
            Ok(t)
        })?;
        let cone = cone.expect("built above");
        ensure!(terminal, "1/{r}(1,{a},{}) not terminal", r - a);
        for (minimal, p) in &low {
            ensure!(
                *minimal,
                "1/{r}(1,{a},{}): level-{} point {p} not minimal",
                r - a,
                p.level
            );
        }
        let oracle_pts: Vec<Vec<i64>> = o
            .box_points(3)
            .into_iter()
            .filter(|p| o.in_s(p) && o.level(p) <= qi(3))
            .collect();
        let expected: BTreeSet<Vec<Q>> = oracle_pts.iter().map(|p| o.to_q(p)).collect();
        ensure!(engine == expected, "1/{r}(1,{a},{}): S points differ", r - a);
        for p in &oracle_pts {
            let mine = o.is_minimal(p);
            let pq = o.to_q(p);
            let theirs = timed(&mut || cone.is_minimal(&pq).map_err(err))?;
            ensure!(
                mine == theirs,
                "1/{r}(1,{a},{}): is_minimal({pq:?}) = {theirs}, oracle {mine}",
                r - a
            );
            checked += 1;
        }
    }
    let limit = Duration::from_secs(10);
    ensure!(engine_time < limit, "engine time {engine_time:?}, limit {limit:?}");
    Ok(format!(
        "{} cones terminal; {checked} S points of level <= 3 agree with the oracle (engine {engine_time:.2?})",
        terminal_family().len()
    ))
}

/// Minimal discrepancy `1/r` over interior primitive points.
pub fn criterion_3() -> Outcome {
    for (r, a) in terminal_family() {
        let w = [1, a, r - a];
        let cone = standard_cone(r, &w);
        let o = CyclicOracle::new(r, &w);
        let mut engine_min: Option<Q> = None;
        for p in cone.box_points(2) {
            let interior = p.cone_coordinates.iter().all(Signed::is_positive);
            if interior && cone.lattice().is_primitive(&p.coordinates).map_err(err)? {
                let d = cone.discrepancy(&p.coordinates).map_err(err)?;
                engine_min = Some(engine_min.map_or(d.clone(), |m: Q| m.min(d)));
            }
        }
        let oracle_min = o
            .box_points(2)
            .into_iter()
            .filter(|p| p.iter().all(|&x| x > 0) && o.is_primitive(p))
            .map(|p| o.level(&p) - Q::one())
            .min();
        ensure!(
            engine_min == Some(q(1, r)) && oracle_min == Some(q(1, r)),
            "1/{r}(1,{a},{}): engine {engine_min:?}, oracle {oracle_min:?}",
            r - a
        );
    }
    Ok(format!(
        "minimal discrepancy 1/r on all {} cones",
        terminal_family().len()
    ))
}

/// `(model, weight)` for each case and `tau0`.
pub fn cax2_instances() -> Vec<(String, Hyperquotient, Weight)> {
    let mut out = Vec::new();
    for t in [4u32, 6, 8, 10] {
        let f1 = format!("z^{t} + u^{t}");
        let hq = cax2(&f1);
        let w = select_weight(&validate_cax2(&hq).unwrap());
        out.push((format!("case1 tau0={t}"), hq, w));
        // leading form p^2 with p of degree t/2: (z^2+u^2)^(t/4) or z^(t/2)+u^(t/2)
        let p = if t % 4 == 0 {
            format!("(z^2+u^2)^{}", t / 4)
        } else {
            format!("(z^{0}+u^{0})", t / 2)
        };
        let f2 = format!("({p})^2 + z^{}", t + 2);
        let form = validate_cax2(&cax2(&f2)).unwrap();
        let w = select_weight(&form);
        for sign in [Sign::Plus, Sign::Minus] {
            let model = normalize_case2(&form, sign).unwrap().model;
            out.push((format!("case2 tau0={t} sign {sign}"), model, w.clone()));
        }
    }
    out
}

/// Discrepancy `1/2` for every case, parity and `tau0` in `{4,6,8,10}`.
pub fn criterion_4() -> Outcome {
    let start = Instant::now();
    let instances = cax2_instances();
    for (name, hq, w) in &instances {
        let d = discrepancy_of_weight(hq, w).map_err(err)?;
        let wt = o_wt(&oracle(hq.phi()), w).ok_or("zero phi")?;
        let oracle_d = w.total() - Q::one() - wt;
        ensure!(
            d == q(1, 2) && oracle_d == q(1, 2),
            "{name}: engine {d}, oracle {oracle_d}"
        );
    }
    within(start, Duration::from_secs(1), "discrepancies")?;
    Ok(format!("a(E) = 1/2 on {} instances", instances.len()))
}

/// `pull-back(h) = chartvar^k * g` checked with the oracle multiplication.
fn identity_holds(h: &nashcert::poly::SparsePoly, w: &Weight, i: usize) -> Result<(), String> {
    let f = strict_transform_factorization(h, w, i).map_err(err)?;
    let mut e = [Q::zero(), Q::zero(), Q::zero(), Q::zero()];
    e[i - 1] = f.k.clone();
    let mut monomial = OPoly::new();
    monomial.insert(e, Q::one());
    ensure!(
        o_mul(&monomial, &oracle(&f.g)) == o_pullback(&oracle(h), i - 1, w),
        "chart {i}: pull-back of {h} is not chartvar^k * g"
    );
    ensure!(
        o_min_exponent(&oracle(&f.g), i - 1) == Some(Q::zero()),
        "chart {i}: g still divisible by the chart variable"
    );
    Ok(())
}

/// Chart algebra for `f = z^4 + u^4`, `sigma = (1/2)(2,3,1,1)`.
pub fn criterion_5() -> Outcome {
    let hq = cax2("z^4 + u^4");
    let w = Weight::new(2, [2, 3, 1, 1]).unwrap();
    ensure!(
        select_weight(&validate_cax2(&hq).map_err(err)?) == w,
        "selected weight differs from 1/2(2,3,1,1)"
    );
    let h = parse_polynomial("x^2 + y^2 + z^2 + u^2").unwrap();
    let f = strict_transform_factorization(&h, &w, 2).map_err(err)?;
    let g = parse_polynomial("x^2*y + y^2 + z^2 + u^2").unwrap();
    ensure!(f.k == qi(1), "U2: k = {}", f.k);
    ensure!(f.g == g, "U2: g = {}", f.g);

    let u3 = chart(&hq, &w, 3).map_err(err)?;
    let pulled = o_pullback(&oracle(hq.phi()), 2, &w);
    let k = o_min_exponent(&pulled, 2).unwrap();
    let strict: OPoly = pulled
        .into_iter()
        .map(|(mut e, c)| {
            e[2] = &e[2] - &k;
            (e, c)
        })
        .collect();
    ensure!(oracle(&u3.strict_phi) == strict, "U3 strict transform {}", u3.strict_phi);
    let expected = parse_polynomial("x^2 + y^2*z + 1 + u^4").unwrap();
    ensure!(u3.strict_phi == expected, "U3 strict transform {}", u3.strict_phi);

    let table = reproduction::run();
    let row = table
        .rows
        .iter()
        .find(|r| r.id == "case1-u3-h-display")
        .ok_or("reproduction suite lacks the U3 display row")?;
    ensure!(
        row.status == RowStatus::ExpectedWarning,
        "U3 display row is {:?}",
        row.status
    );
    ensure!(
        row.published.as_deref().is_some_and(|p| p.contains("y^2*z^4"))
            && row.actual.contains("y^2*z^2"),
        "U3 display row does not record y^2 z^tau0 against y^2 z^(tau0/2): {row:?}"
    );
    for h in ["x^2 + y^2 + z^2 + u^2", "x^2 + y^2 - z^2 + u^2", "x^2 + y^2 + z^2 - 4*u^2"] {
        let h = parse_polynomial(h).unwrap();
        for i in 1..=4 {
            identity_holds(&h, &w, i)?;
        }
    }
    Ok("U2: k=1, g=x^2y+y^2+z^2+u^2; U3 strict transform and display warning as expected".into())
}

/// Gorenstein indices of the chart quotients.
pub fn criterion_6() -> Outcome {
    let hq = cax2("z^4 + u^4");
    let w = select_weight(&validate_cax2(&hq).map_err(err)?);
    let i1 = chart(&hq, &w, 2).map_err(err)?.quotient_index();
    ensure!(i1 == 3, "case 1 U2 index {i1}, expected tau0/2 + 1 = 3");
    let form = validate_cax2(&cax2("(z^2+u^2)^2 + z^6")).map_err(err)?;
    let w2 = select_weight(&form);
    for sign in [Sign::Plus, Sign::Minus] {
        let model = normalize_case2(&form, sign).map_err(err)?.model;
        let i2 = chart(&model, &w2, 1).map_err(err)?.quotient_index();
        ensure!(i2 == 4, "case 2 ({sign}) U1 index {i2}, expected tau0/2 + 2 = 4");
    }
    Ok("case 1 U2 index 3; case 2 U1 index 4".into())
}

/// End-to-end certificates.
pub fn criterion_7() -> Outcome {
    let runs = [
        ("z^4 + u^4", None),
        ("(z^2+u^2)^2 + z^6", Some(Sign::Plus)),
        ("(z^2+u^2)^2 + z^6", Some(Sign::Minus)),
    ];
    let mut points = 0;
    for (f, sign) in runs {
        let start = Instant::now();
        let opts = CertifyOptions { sign, weight: None };
        let cert = certify_nash(&cax2(f), &opts).map_err(err)?;
        within(start, Duration::from_secs(5), "certify")?;
        let label = format!("{f} ({})", sign.map_or("default".into(), |s| s.to_string()));
        ensure!(
            cert.verdict == Verdict::Verified,
            "{label}: verdict {}, issues {:?}",
            cert.verdict,
            cert.issues
        );
        ensure!(!cert.checks.is_empty(), "{label}: no point checks");
        for c in &cert.checks {
            ensure!(c.status == CheckStatus::Passed, "{label}: {:?}", c.status);
            ensure!(c.val_e_h == Some(qi(1)), "{label}: val_E(h) = {:?}", c.val_e_h);
            ensure!(c.k == Some(qi(1)), "{label}: k = {:?}", c.k);
            ensure!(
                c.residue.as_ref().is_some_and(|r| r.is_zero()),
                "{label}: strict transform of h does not vanish at the point"
            );
            if let (PointLocation::Rational(p), Some(g)) = (&c.location, &c.g) {
                ensure!(o_eval(&oracle(g), p).is_zero(), "{label}: g({p:?}) != 0");
            }
        }
        for (model, report) in cert.charts.iter().zip(&cert.reports) {
            for p in &report.points {
                ensure!(
                    verify_jacobian_point(model, &p.coordinates).map_err(err)?,
                    "{label}: chart {} point {:?} fails the Jacobian check",
                    model.index,
                    p.coordinates
                );
                points += 1;
            }
            for p in &report.quotient_points {
                ensure!(
                    verify_quotient_point(model, &p.coordinates).map_err(err)?,
                    "{label}: chart {} quotient point {:?} fails",
                    model.index,
                    p.coordinates
                );
                points += 1;
            }
            ensure!(report.is_complete(), "{label}: chart {} has obstructions", model.index);
        }
    }
    Ok(format!("3 certificates verified; {points} reported points re-verified"))
}

/// The five randomized property suites.
pub fn criterion_8() -> Outcome {
    let mut total = 0;
    for name in PROPERTIES {
        total += run_property(name).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("5 properties x {PROPERTY_CASES} cases = {total}, zero failures"))
}

fn exit_code(args: &[&str]) -> Result<Option<i32>, String> {
    let out = Command::new(binary()).args(args).output().map_err(err)?;
    Ok(out.status.code())
}

/// Parser round trip on the corpus and documented exit codes.
pub fn criterion_9() -> Outcome {
    let files = corpus();
    ensure!(files.len() >= 5, "corpus has only {} files", files.len());
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(err)?;
        let first = parse_singularity(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let printed = print_singularity(&first);
        let second = parse_singularity(&printed).map_err(err)?;
        ensure!(first == second, "{}: parse(print(s)) != s", path.display());
        ensure!(print_singularity(&second) == printed, "{}: print not canonical", path.display());
    }
    let dir = std::env::temp_dir().join(format!("nashcert-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let syntax = dir.join("syntax.sing");
    std::fs::write(&syntax, "equation: x^2 +;\naction: 1/2 (0,1,1,1);\n").map_err(err)?;
    let semantic = dir.join("semantic.sing");
    std::fs::write(&semantic, "equation: x^2+z;\naction: 1/2 (0,1,1,1);\n").map_err(err)?;
    let s = |p: &Path| p.to_str().unwrap().to_owned();
    let cases: [(Vec<String>, i32); 6] = [
        (vec!["cax2".into(), "certify".into(), s(&syntax)], 2),
        (vec!["cax2".into(), "certify".into(), s(&semantic)], 3),
        (
            vec!["cax2".into(), "certify".into(), s(&corpus_dir().join("wrong_weight.sing"))],
            4,
        ),
        (
            vec![
                "cax2".into(),
                "certify".into(),
                s(&corpus_dir().join("elimination_needed.sing")),
            ],
            5,
        ),
        (
            vec![
                "blowup".into(),
                "chart".into(),
                s(&corpus_dir().join("z4u4.sing")),
                "--weight".into(),
                "1/2(2,2,2,2)".into(),
            ],
            3,
        ),
        (vec!["cax2".into(), "certify".into(), s(&corpus_dir().join("z4u4.sing"))], 0),
    ];
    for (args, want) in &cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = exit_code(&a)?;
        ensure!(got == Some(*want), "{args:?}: exit {got:?}, expected {want}");
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!(
        "{} corpus files round-trip; exit codes 2/3/4/5 and 3 for an inadmissible weight",
        files.len()
    ))
}

pub const CRITERIA: [(&str, fn() -> Outcome); 9] = [
    ("toric baseline", criterion_1),
    ("terminal sweep", criterion_2),
    ("minimal discrepancy", criterion_3),
    ("cAx/2 discrepancy", criterion_4),
    ("chart algebra", criterion_5),
    ("chart quotient indices", criterion_6),
    ("end-to-end certificates", criterion_7),
    ("property suites", criterion_8),
    ("parser and exit codes", criterion_9),
];
