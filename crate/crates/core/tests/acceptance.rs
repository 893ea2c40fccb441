//! Acceptance criteria 1-9: one line per criterion, nonzero exit if any is
//! red. Every identity is exact; the bounds are wall-clock limits.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use heavenly_core::jetspace::chart_names;
use heavenly_core::liealg::{det_rational, pfaffian, poisson, PoissonStructure};
use heavenly_core::plebanski::families::w;
use heavenly_core::plebanski::verify_suite;
use heavenly_core::report::{CheckReport, Status};
use heavenly_core::sample::Sampler;
use heavenly_core::{chart, lie_bracket, parse_poly, prolong, DiffPoly, Sym, VectorField};

const SEED: u64 = 0;
const POINTS: usize = 20;

struct Outcome {
    passed: bool,
    detail: String,
}

fn checks(suite: &str, keep: impl Fn(&str) -> bool) -> Vec<CheckReport> {
    verify_suite(suite, SEED, POINTS)
        .expect("registered suite")
        .checks
        .into_iter()
        .filter(|c| keep(&c.name))
        .collect()
}

fn summarize(reports: Vec<CheckReport>, per_check: Option<Duration>) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.name.clone())
        .collect();
    let slow: Vec<String> = per_check
        .map(|b| {
            reports
                .iter()
                .filter(|c| c.ms > b.as_millis() as u64)
                .map(|c| format!("{} took {} ms", c.name, c.ms))
                .collect()
        })
        .unwrap_or_default();
    let mut detail = format!("{} checks", reports.len());
    if !failed.is_empty() {
        detail += &format!("; failed: {}", failed.join(", "));
    }
    if !slow.is_empty() {
        detail += &format!("; over bound: {}", slow.join(", "));
    }
    Outcome {
        passed: !reports.is_empty() && failed.is_empty() && slow.is_empty(),
        detail,
    }
}

fn cocycles() -> Outcome {
    let mut r = checks("thm1", |n| n.starts_with("zeta1"));
    r.extend(checks("thm2", |_| true));
    r.extend(checks("thm3", |_| true));
    r.extend(checks("thm3x", |n| !n.starts_with("V^(c)")));
    summarize(r, Some(Duration::from_secs(1)))
}

fn homomorphisms() -> Outcome {
    let mut r = checks("thm1", |n| !n.starts_with("zeta1"));
    r.extend(checks("prop2", |_| true));
    r.extend(checks("prop3", |_| true));
    summarize(r, None)
}

fn normalizations() -> Outcome {
    let mut r = checks("thm3x", |n| n.starts_with("V^(c)"));
    r.extend(checks("thm4", |_| true));
    summarize(r, None)
}

fn whole(suite: &'static str) -> impl Fn() -> Outcome {
    move || summarize(checks(suite, |_| true), None)
}

fn jacobi_formal() -> bool {
    let m = chart("M").unwrap();
    let (a, b, c) = (m.f("A"), m.f("B"), m.f("C"));
    let pb = |x: &DiffPoly, y: &DiffPoly| poisson(x, y, PoissonStructure::OmegaM, &m).unwrap();
    let poisson_ok = (pb(&a, &pb(&b, &c)) + pb(&b, &pb(&c, &a)) + pb(&c, &pb(&a, &b))).is_zero();
    let tm = chart("TM").unwrap();
    let (x, y, z) = (w(0, &tm.f("A")).unwrap(), w(1, &tm.f("B")).unwrap(), w(2, &tm.f("C")).unwrap());
    let br = |p: &VectorField, q: &VectorField| lie_bracket(p, q).unwrap();
    let fields_ok = br(&x, &br(&y, &z))
        .add(&br(&y, &br(&z, &x)))
        .unwrap()
        .add(&br(&z, &br(&x, &y)))
        .unwrap()
        .is_zero();
    poisson_ok && fields_ok
}

fn total_derivatives_commute(s: &mut Sampler) -> bool {
    let c = chart("TM").unwrap();
    let mut gens: Vec<Sym> = c.coords().iter().map(|n| Sym::Coord(n.clone())).collect();
    gens.extend([c.u_sym(""), c.u_sym("x"), c.u_sym("tz"), c.fjet("A", &[1, 0]).unwrap()]);
    (0..50).all(|_| {
        let p = s.poly(&gens, 5, 3);
        (0..4).all(|a| {
            (a + 1..4).all(|b| {
                c.total_derivative_at(&c.total_derivative_at(&p, a), b)
                    == c.total_derivative_at(&c.total_derivative_at(&p, b), a)
            })
        })
    })
}

fn random_point_field(s: &mut Sampler) -> VectorField {
    let c = chart("TM").unwrap();
    let mut gens: Vec<Sym> = c.coords().iter().map(|n| Sym::Coord(n.clone())).collect();
    gens.push(c.u_sym(""));
    let mut x = VectorField::zero(c.clone());
    for d in gens.clone() {
        x.set(d, s.poly(&gens, 3, 2)).unwrap();
    }
    x
}

fn prolongation_homomorphism(s: &mut Sampler) -> bool {
    (0..50).all(|i| {
        let (x, y) = (random_point_field(s), random_point_field(s));
        let k = 1 + i % 2;
        let lhs: Vec<(Sym, DiffPoly)> = prolong(&lie_bracket(&x, &y).unwrap(), k).unwrap().directions();
        let rhs = prolong(&x, k).unwrap().bracket(&prolong(&y, k).unwrap()).unwrap();
        let nz = |v: Vec<(Sym, DiffPoly)>| v.into_iter().filter(|(_, p)| !p.is_zero()).collect::<BTreeMap<_, _>>();
        nz(lhs) == nz(rhs)
    })
}

fn pfaffian_squares(s: &mut Sampler) -> bool {
    (0..100).all(|_| {
        let m = s.antisymmetric(6);
        let mp: Vec<Vec<DiffPoly>> = m.iter().map(|r| r.iter().cloned().map(DiffPoly::constant).collect()).collect();
        let pf = pfaffian(&mp).unwrap().as_constant().unwrap();
        &pf * &pf == det_rational(&m).unwrap()
    })
}

fn round_trips(s: &mut Sampler) -> bool {
    chart_names().all(|name| {
        let c = chart(name).unwrap();
        let mut gens: Vec<Sym> = c.coords().iter().map(|n| Sym::Coord(n.clone())).collect();
        gens.extend(c.params().iter().map(|n| Sym::Param(n.clone())));
        gens.push(c.u_sym(""));
        (0..200).all(|_| {
            let p = s.poly(&gens, 5, 3);
            let inv = DiffPoly::var(gens[s.small_int(0, c.dim() as i64 - 1) as usize].clone()).pow(-2).unwrap();
            let p = &p * &inv;
            parse_poly(&p.to_string(), &c).as_ref() == Ok(&p)
        })
    })
}

fn properties() -> Outcome {
    let mut s = Sampler::derived(SEED, "acceptance/properties");
    let parts = [
        ("Jacobi", jacobi_formal()),
        ("total-derivative commutation", total_derivatives_commute(&mut s)),
        ("prolongation homomorphism", prolongation_homomorphism(&mut s)),
        ("Pf^2 = det", pfaffian_squares(&mut s)),
        ("round trip", round_trips(&mut s)),
    ];
    let failed: Vec<&str> = parts.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} property groups", parts.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

type Criterion = (usize, &'static str, Duration, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        (1, "cocycle identities (< 1 s each)", secs(60), Box::new(cocycles)),
        (2, "Hamiltonian homomorphisms, V_0 display, nabla~ and V-table identities", secs(5), Box::new(homomorphisms)),
        (3, "Phi_1, Phi_2 normalizations onto g1, g2; g3 closes", secs(30), Box::new(normalizations)),
        (4, "pr2 invariance of I1..I4", secs(120), Box::new(whole("thm5"))),
        (5, "invariant frame, J1 invariance, structure functions", secs(600), Box::new(whole("frame"))),
        (6, "structure equations of g1 + W0', W0'', W1'; pr2(W0'')(I1) = -2 I1", secs(60), Box::new(whole("thm7"))),
        (7, "contact symmetries of the first heavenly equation", secs(120), Box::new(whole("thm8"))),
        (8, "six-dimensional Pfaffian equation", secs(300), Box::new(whole("sixd"))),
        (9, "property suites", secs(60), Box::new(properties)),
    ];
    let mut all = true;
    for (n, title, bound, run) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let ok = out.passed && took <= bound;
        all &= ok;
        println!(
            "criterion {n} {}: {title} ({}; {} ms, bound {} ms)",
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            took.as_millis(),
            bound.as_millis()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
