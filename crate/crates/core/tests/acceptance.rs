//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singmon_core::arith::divisors;
use singmon_core::catalog::{self, rotation_polynomial, CatalogEntry};
use singmon_core::mckay::{self, RootLabel};
use singmon_core::monodromy::{self, IcisInput};
use singmon_core::seifert::{self, partial_fraction_eval, wagreich3_check, ResidueFormula};
use singmon_core::verify::{brieskorn, brieskorn_sample, hypersurface_checks, kac_identity};
use singmon_core::FrameShape;

const SEED: u64 = 20_240_917;
const MAX_INDEX: u64 = 8;
const BRIESKORN_SAMPLES: usize = 100;
const SERIES_ORDER: usize = 200;
const RESIDUE_POINTS: usize = 20;
const RESIDUE_TOL: f64 = 1e-7;
const NEWTON_TOL: f64 = 1e-9;
const NEWTON_MAX_K: u64 = 60;
const PROPERTY_CASES: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table1() -> Vec<CatalogEntry> {
    catalog::kleinian(MAX_INDEX)
}

fn corpus() -> Vec<([u64; 3], u64, String)> {
    let mut out: Vec<_> = table1()
        .into_iter()
        .chain(catalog::simply_elliptic())
        .filter_map(|e| e.hypersurface().map(|(q, d)| (q, d, e.name)))
        .collect();
    for [a, b, c] in brieskorn_sample(9, BRIESKORN_SAMPLES, SEED) {
        let (q, d) = brieskorn(a, b, c);
        out.push((q, d, format!("x^{a}+y^{b}+z^{c}")));
    }
    out
}

fn criterion1() -> Outcome {
    let entries = table1();
    for e in &entries {
        let (q, d) = e.hypersurface().ok_or(format!("{} not a hypersurface", e.name))?;
        let alphas = seifert::orbit_invariants(q, d).map_err(|x| x.to_string())?;
        check(alphas == e.exceptional_alphas(), || format!("{} orbits {alphas:?}", e.name))?;
        let g = seifert::genus(q, d, &alphas).map_err(|x| x.to_string())?;
        check(g == 0, || format!("{} genus {g}", e.name))?;
        let r = seifert::exponent(q, d);
        check(r == e.r && (r == -1 || r == -2), || format!("{} R = {r}", e.name))?;
        let phi = seifert::bundle(q, d).map_err(|x| x.to_string())?.phi;
        check(phi == e.pi_a, || format!("{} phi_A = {phi}, table {}", e.name, e.pi_a))?;
    }
    let rep = catalog::validate_entries(&entries);
    check(rep.ok(), || format!("{:?}", rep.diffs))?;
    Ok(format!("{} entries, {} fixture checks", entries.len(), rep.checks))
}

fn criterion2() -> Outcome {
    let corpus = corpus();
    for (q, d, name) in &corpus {
        let rep = monodromy::theorem1_verify(*q, *d).map_err(|x| x.to_string())?;
        check(rep.holds, || {
            format!("{name}: dual {} charpoly {} oracle {}", rep.dual, rep.charpoly, rep.oracle)
        })?;
    }
    Ok(format!("{} weight systems, {BRIESKORN_SAMPLES} random Brieskorn (seed {SEED})", corpus.len()))
}

fn criterion3() -> Outcome {
    let mut checked = 0;
    for e in table1() {
        let label = e.root_label().ok_or(format!("{} has no root label", e.name))?;
        let spec = mckay::build_root_system(label).map_err(|x| x.to_string())?;
        let data = e.kleinian_data().map_err(|x| x.to_string())?;
        if label.is_a_even() {
            let dual = data.phi.saito_dual(data.degree).map_err(|x| x.to_string())?;
            check(dual != data.phi, || format!("{label}: phi_A self-dual"))?;
        } else {
            let cox = mckay::coxeter_charpoly(&spec).map_err(|x| x.to_string())?;
            let aff = mckay::affine_coxeter_charpoly(&spec).map_err(|x| x.to_string())?;
            check(cox == data.phi, || format!("{label}: coxeter {cox} vs {}", data.phi))?;
            check(aff == data.psi, || format!("{label}: affine {aff} vs {}", data.psi))?;
            check(cox.div(&aff) == data.p, || format!("{label}: quotient vs p_A {}", data.p))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} root systems"))
}

fn criterion4() -> Outcome {
    for e in table1() {
        let label = e.root_label().ok_or(format!("{} has no root label", e.name))?;
        let spec = mckay::build_root_system(label).map_err(|x| x.to_string())?;
        let data = e.kleinian_data().map_err(|x| x.to_string())?;
        let rep = mckay::mckay_verify(&spec, &data, SERIES_ORDER).map_err(|x| x.to_string())?;
        check(rep.closed_form_matches_recursion && rep.recursion_matches_poincare, || format!("{rep:?}"))?;
        let want_nu = if label.is_a_even() { 1 } else { 2 };
        check(rep.nu == want_nu, || format!("{label}: nu = {}", rep.nu))?;
    }
    let a1 = mckay::build_root_system(RootLabel::A(1)).unwrap();
    let head: Vec<i64> = mckay::pg_series(&a1, 6).iter().map(|v| v[0]).collect();
    check(head == [1, 0, 3, 0, 5, 0, 7], || format!("A1 series {head:?}"))?;
    let e8 = mckay::build_root_system(RootLabel::E8).unwrap();
    let v = mckay::pg_series(&e8, 12);
    let first = (1..=12).find(|&m| v[m][0] != 0);
    check(first == Some(12) && v[12][0] == 1, || format!("E8 first term {first:?}"))?;
    Ok(format!("order {SERIES_ORDER}; A1 1,0,3,0,5,0,7; E8 starts at t^12"))
}

fn criterion5() -> Outcome {
    let corpus = corpus();
    for (q, d, name) in &corpus {
        hypersurface_checks(*q, *d).map_err(|x| format!("{name}: {x}"))?;
        let expected: i64 = q.iter().map(|&qi| *d as i64 - qi as i64).product::<i64>()
            / q.iter().map(|&qi| qi as i64).product::<i64>();
        let mu = monodromy::milnor_number(*q, *d).map_err(|x| x.to_string())?;
        check(mu as i64 == expected, || format!("{name}: mu {mu} vs product {expected}"))?;
    }
    Ok(format!("{} weight systems, Lambda periodic, proof steps re-run for k <= d", corpus.len()))
}

fn d5_input(e: &CatalogEntry) -> Result<IcisInput, String> {
    Ok(IcisInput {
        weights: [e.weights[0], e.weights[1], e.weights[2], e.weights[3]],
        degrees: [e.degrees[0], e.degrees[1]],
        phi_m: e.pi_m.clone().ok_or("no pi_M")?,
        genus: e.g,
        alphas: e.exceptional_alphas(),
    })
}

fn criterion6() -> Outcome {
    let e = catalog::lookup("D̃5", None).map_err(|x| x.to_string())?;
    check(e.weights == [1, 1, 1, 1] && e.degrees == [2, 2] && e.g == 1, || format!("{e:?}"))?;
    let rep = monodromy::theorem4a_verify(&d5_input(&e)?, None).map_err(|x| x.to_string())?;
    check(rep.holds, || format!("dual {} vs flat {}", rep.dual, rep.phi_m_flat))?;
    check(rep.phi_m_flat == "2^4/1^2".parse::<FrameShape>().unwrap(), || rep.phi_m_flat.to_string())?;
    Ok(format!("dual of {} at level {} is {}", rep.phi_tilde, rep.level, rep.dual))
}

fn criterion7() -> Outcome {
    let phi = catalog::lookup("D̃5", None).map_err(|x| x.to_string())?.pi_m.ok_or("no pi_M")?;
    for q in [2u64, 4, 6, 8] {
        let (b, a) = (monodromy::flat_4b(&phi, 2, q), monodromy::flat_4a(&phi));
        check(a == b, || format!("q = {q}: {b} vs {a}"))?;
    }
    Ok("q in {2,4,6,8}".into())
}

fn criterion8() -> Outcome {
    let entries = catalog::simply_elliptic();
    for e in &entries {
        let b = e.b.ok_or(format!("{} has no b", e.name))?;
        let p = e.pi_a.to_polynomial().map_err(|x| x.to_string())?;
        check(p == rotation_polynomial(b), || format!("{}: {p}", e.name))?;
    }
    Ok(format!("{} entries", entries.len()))
}

fn criterion9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let entries: Vec<CatalogEntry> = table1().into_iter().chain(catalog::simply_elliptic()).collect();
    let mut worst = 0.0f64;
    for e in &entries {
        let p = e.weight_system().map_err(|x| x.to_string())?.poincare_series();
        for _ in 0..RESIDUE_POINTS {
            let t = Complex64::from_polar(rng.gen_range(0.3..=0.7), rng.gen_range(0.0..std::f64::consts::TAU));
            let err = (p.eval(t) - partial_fraction_eval(&p, t)).norm();
            worst = worst.max(err);
            check(err < RESIDUE_TOL, || format!("{}: error {err:e} at {t}", e.name))?;
        }
    }
    let mut shapes: Vec<FrameShape> = entries.iter().map(|e| e.pi_a.clone()).collect();
    shapes.extend(entries.iter().filter_map(|e| e.pi_m.clone()));
    let mut newton_checked = 0;
    for s in shapes.iter().filter(|s| s.is_polynomial()) {
        for k in 1..=NEWTON_MAX_K {
            let z = s.roots_power_sum_numeric(k).map_err(|x| x.to_string())?;
            let err = (z - Complex64::new(s.newton_sum(k) as f64, 0.0)).norm();
            check(err < NEWTON_TOL, || format!("{s} k = {k}: {err:e}"))?;
        }
        newton_checked += 1;
    }
    // the printed residue formula, diagnostic only
    let printed_ok = table1()
        .iter()
        .filter_map(|e| e.hypersurface())
        .filter(|&(q, d)| {
            seifert::hypersurface_seifert(q, d)
                .map(|s| wagreich3_check(q, d, &s, ResidueFormula::Printed).all_hold())
                .unwrap_or(false)
        })
        .count();
    Ok(format!(
        "max reconstruction error {worst:.1e} (< {RESIDUE_TOL:e}); {newton_checked} shapes k <= {NEWTON_MAX_K}; printed residue formula agrees on {printed_ok}/{} (diagnostic)",
        table1().len()
    ))
}

fn random_shape(rng: &mut ChaCha8Rng, h: u64) -> FrameShape {
    FrameShape::from_pairs(divisors(h).into_iter().map(|m| (m, rng.gen_range(-4i64..=4))))
}

fn criterion10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..PROPERTY_CASES {
        let h = rng.gen_range(1..=60u64);
        let s = random_shape(&mut rng, h);
        let back = s.saito_dual(h).and_then(|d| d.saito_dual(h)).map_err(|x| x.to_string())?;
        check(back == s, || format!("involution case {i}: {s} at {h}"))?;

        let lambdas: BTreeMap<u64, i64> = divisors(h).into_iter().map(|k| (k, s.newton_sum(k))).collect();
        let back = FrameShape::from_newton_sums(&lambdas, h).map_err(|x| x.to_string())?;
        check(back == s, || format!("Moebius case {i}: {s}"))?;

        let e: BTreeMap<u64, i64> = (0..rng.gen_range(0..4))
            .map(|_| (rng.gen_range(1..=30u64), rng.gen_range(1..=4i64)))
            .collect();
        let poly_shape = FrameShape::from_cyclotomic_multiplicities(&e);
        let p = poly_shape.to_polynomial().map_err(|x| x.to_string())?;
        let back = FrameShape::factor_cyclotomic(&p).map_err(|x| x.to_string())?;
        check(back == poly_shape, || format!("factor case {i}: {poly_shape}"))?;

        let (ha, hb) = (rng.gen_range(1..=24), rng.gen_range(1..=24));
        let (a, b) = (random_shape(&mut rng, ha), random_shape(&mut rng, hb));
        let n = rng.gen_range(0..=64usize);
        let lhs = a.mul(&b).expand_series(n);
        let rhs = a.expand_series(n).mul(&b.expand_series(n));
        check(lhs == rhs, || format!("series case {i}: {a} * {b}"))?;
        check(lhs.coeff(0) == &BigInt::from(1), || "constant term".into())?;
    }
    let labels: Vec<RootLabel> = (1..=10)
        .map(RootLabel::A)
        .chain((4..=10).map(RootLabel::D))
        .chain([RootLabel::E6, RootLabel::E7, RootLabel::E8])
        .collect();
    let mut kac_cases = 0;
    while kac_cases < PROPERTY_CASES {
        let label = labels[rng.gen_range(0..labels.len())];
        kac_identity(label, rng.gen_range(0..=100)).map_err(|x| format!("{label}: {x}"))?;
        kac_cases += 1;
    }
    Ok(format!("{PROPERTY_CASES} cases each: involution, factor, series, Moebius, dimension identity"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Kleinian table reproduction", criterion1),
        ("dual of phi~_A is the monodromy", criterion2),
        ("Coxeter and affine Coxeter polynomials", criterion3),
        ("McKay series identity", criterion4),
        ("Milnor number and power sums", criterion5),
        ("ICIS duality for D~5", criterion6),
        ("suspension form reduces for p=2", criterion7),
        ("rotation polynomial of simply elliptic entries", criterion8),
        ("numerical residue self-consistency", criterion9),
        ("randomized properties", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
