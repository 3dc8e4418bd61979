//! Corpus-wide verification suites. Cases may run in parallel (feature
//! `parallel`), but reports always list them in generation order.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{gcd, lcm};
use crate::catalog::{self, CatalogEntry};
use crate::error::{Error, Result};
use crate::frameshape::FrameShape;
use crate::mckay::{self, RootLabel};
use crate::monodromy::{self, IcisInput, SuspensionCase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kleinian,
    Elliptic,
    Theorem1,
    Theorem4,
    Mckay,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["kleinian", "elliptic", "theorem1", "theorem4", "mckay", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "kleinian" => Suite::Kleinian,
            "elliptic" => Suite::Elliptic,
            "theorem1" => Suite::Theorem1,
            "theorem4" => Suite::Theorem4,
            "mckay" => Suite::Mckay,
            "all" => Suite::All,
            _ => return Err(Error::UnknownEntry(format!("suite {s}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    /// Largest rank of the `A_l` and `D_l` families.
    pub max_index: u64,
    pub seed: u64,
    /// Random Brieskorn triples on top of the exhaustive list.
    pub samples: usize,
    /// Truncation order of the McKay series comparison.
    pub order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_index: 8,
            seed: 0,
            samples: 100,
            order: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub suite: Suite,
    pub case: String,
    pub passed: bool,
    /// Empty when passed.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub options: VerifyOptions,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

type Job = Box<dyn Fn() -> std::result::Result<(), String> + Send + Sync>;

struct Pending {
    suite: Suite,
    case: String,
    job: Job,
}

fn pending(suite: Suite, case: impl Into<String>, job: impl Fn() -> std::result::Result<(), String> + Send + Sync + 'static) -> Pending {
    Pending {
        suite,
        case: case.into(),
        job: Box::new(job),
    }
}

fn run_all(jobs: Vec<Pending>) -> Vec<CaseResult> {
    let run = |p: &Pending| {
        let outcome = (p.job)();
        CaseResult {
            suite: p.suite,
            case: p.case.clone(),
            passed: outcome.is_ok(),
            detail: outcome.err().unwrap_or_default(),
        }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        jobs.iter().map(run).collect()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_str(e: Error) -> String {
    e.to_string()
}

/// Weights and degree of `x^a + y^b + z^c`.
pub fn brieskorn(a: u64, b: u64, c: u64) -> ([u64; 3], u64) {
    let d = lcm(lcm(a, b), c);
    ([d / a, d / b, d / c], d)
}

fn pairwise_coprime(a: u64, b: u64, c: u64) -> bool {
    gcd(a, b) == 1 && gcd(a, c) == 1 && gcd(b, c) == 1
}

/// Every pairwise-coprime triple `2 <= a < b < c <= hi`.
pub fn brieskorn_exhaustive(hi: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 2..=hi {
        for b in a + 1..=hi {
            for c in b + 1..=hi {
                if pairwise_coprime(a, b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// `n` ordered pairwise-coprime triples from `[2, hi]^3`, drawn with
/// replacement from a seeded stream.
pub fn brieskorn_sample(hi: u64, n: usize, seed: u64) -> Vec<[u64; 3]> {
    let mut pool = Vec::new();
    for a in 2..=hi {
        for b in 2..=hi {
            for c in 2..=hi {
                if pairwise_coprime(a, b, c) {
                    pool.push([a, b, c]);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| *pool.choose(&mut rng).expect("pool nonempty")).collect()
}

/// Duality of `phi~_A` against both monodromy routes, the Milnor number three ways,
/// the power-sum proof steps and periodicity of `Lambda_k`.
pub fn hypersurface_checks(q: [u64; 3], d: u64) -> std::result::Result<(), String> {
    let rep = monodromy::theorem1_verify(q, d).map_err(err_str)?;
    ensure(rep.holds, || {
        format!("dual {} vs charpoly {} / oracle {}", rep.dual, rep.charpoly, rep.oracle)
    })?;
    let m = monodromy::charpoly_hypersurface(q, d).map_err(err_str)?;
    let mu = monodromy::milnor_number(q, d).map_err(err_str)?;
    let weighted = m.charpoly.degree();
    let lambda_d = monodromy::lambda_k(q, d, d).map_err(err_str)?;
    ensure(m.mu == mu && weighted == mu as i64 && lambda_d == mu as i64, || {
        format!("mu {mu}, sum m chi_m {weighted}, Lambda_d {lambda_d}")
    })?;
    if let Some((k, tilde, direct)) = monodromy::proof_step_mismatch(q, d).map_err(err_str)? {
        return Err(format!("Lambda~_{k} = {tilde} but Lambda_{k} = {direct}"));
    }
    for k in 1..=2 * d {
        let a = monodromy::lambda_k(q, d, k).map_err(err_str)?;
        let b = monodromy::lambda_k(q, d, k + d).map_err(err_str)?;
        ensure(a == b, || format!("Lambda_{k} = {a} but Lambda_{} = {b}", k + d))?;
    }
    Ok(())
}

fn catalog_entry_checks(e: &CatalogEntry) -> std::result::Result<(), String> {
    let rep = catalog::validate_entries(std::slice::from_ref(e));
    if let Some(diff) = rep.diffs.first() {
        return Err(format!("{}: expected {}, computed {}", diff.field, diff.expected, diff.computed));
    }
    Ok(())
}

fn kleinian_jobs(opts: &VerifyOptions) -> Vec<Pending> {
    let mut jobs = Vec::new();
    for e in catalog::kleinian(opts.max_index) {
        let (q, d) = e.hypersurface().expect("Kleinian rows are hypersurfaces");
        let name = e.name.clone();
        jobs.push(pending(Suite::Kleinian, format!("{name} fixture"), {
            let e = e.clone();
            move || catalog_entry_checks(&e)
        }));
        jobs.push(pending(Suite::Kleinian, format!("{name} monodromy"), move || hypersurface_checks(q, d)));
        if e.r == -2 {
            jobs.push(pending(Suite::Kleinian, format!("{name} phi_A not self-dual"), move || {
                let phi = e.bundle().map_err(err_str)?.phi;
                let dual = phi.saito_dual(d).map_err(err_str)?;
                ensure(dual != phi, || format!("{phi} is self-dual"))
            }));
        }
    }
    jobs
}

fn elliptic_jobs() -> Vec<Pending> {
    let mut jobs = Vec::new();
    for e in catalog::simply_elliptic() {
        let name = e.name.clone();
        if let Some((q, d)) = e.hypersurface() {
            jobs.push(pending(Suite::Elliptic, format!("{name} monodromy"), move || hypersurface_checks(q, d)));
        }
        jobs.push(pending(Suite::Elliptic, format!("{name} fixture"), move || catalog_entry_checks(&e)));
    }
    jobs
}

fn d5_input(phi_m: FrameShape) -> std::result::Result<IcisInput, String> {
    let e = catalog::lookup("D̃5", None).map_err(err_str)?;
    Ok(IcisInput {
        weights: [e.weights[0], e.weights[1], e.weights[2], e.weights[3]],
        degrees: [e.degrees[0], e.degrees[1]],
        phi_m,
        genus: e.g,
        alphas: e.exceptional_alphas(),
    })
}

fn d5_phi_m() -> std::result::Result<FrameShape, String> {
    catalog::lookup("D̃5", None)
        .map_err(err_str)?
        .pi_m
        .ok_or_else(|| "D̃5 fixture has no pi_M".to_string())
}

fn theorem4_jobs() -> Vec<Pending> {
    let mut jobs = vec![
        pending(Suite::Theorem4, "4a D̃5", || {
            let r = monodromy::theorem4a_verify(&d5_input(d5_phi_m()?)?, None).map_err(err_str)?;
            ensure(r.holds, || format!("dual {} vs flat {}", r.dual, r.phi_m_flat))
        }),
        pending(Suite::Theorem4, "4a D̃5 at level 2", || {
            let r = monodromy::theorem4a_verify(&d5_input(d5_phi_m()?)?, Some(2)).map_err(err_str)?;
            ensure(r.holds, || format!("dual {} vs flat {}", r.dual, r.phi_m_flat))
        }),
        pending(Suite::Theorem4, "4a D̃5 perturbed monodromy rejected", || {
            let bad = d5_phi_m()?.mul(&FrameShape::factor(2, -1));
            let r = monodromy::theorem4a_verify(&d5_input(bad)?, None).map_err(err_str)?;
            ensure(!r.holds, || "perturbed fixture accepted".into())
        }),
        pending(Suite::Theorem4, "4b(B) D̃5 p=2 q=2", || {
            let input = d5_input(d5_phi_m()?)?;
            let b = monodromy::theorem4b_verify(SuspensionCase::B, 2, 2, &input, None).map_err(err_str)?;
            let a = monodromy::theorem4a_verify(&input, None).map_err(err_str)?;
            ensure(b.holds && a.phi_m_flat == b.phi_m_flat, || {
                format!("4b dual {} vs flat {}, 4a flat {}", b.dual, b.phi_m_flat, a.phi_m_flat)
            })
        }),
    ];
    for q in [2u64, 4, 6, 8] {
        jobs.push(pending(Suite::Theorem4, format!("4b flat reduces to 4a, p=2 q={q}"), move || {
            let phi = d5_phi_m()?;
            let (b, a) = (monodromy::flat_4b(&phi, 2, q), monodromy::flat_4a(&phi));
            ensure(a == b, || format!("{b} != {a}"))
        }));
    }
    jobs
}

fn mckay_jobs(opts: &VerifyOptions) -> Vec<Pending> {
    let order = opts.order;
    let mut jobs = Vec::new();
    for e in catalog::kleinian(opts.max_index) {
        let Some(label) = e.root_label() else { continue };
        jobs.push(pending(Suite::Mckay, format!("{label} series and Coxeter"), move || {
            mckay_checks(label, &e, order)
        }));
        jobs.push(pending(Suite::Mckay, format!("{label} dimension identity"), move || {
            kac_identity(label, 100)
        }));
    }
    jobs
}

fn mckay_checks(label: RootLabel, e: &CatalogEntry, order: usize) -> std::result::Result<(), String> {
    let spec = mckay::build_root_system(label).map_err(err_str)?;
    let data = e.kleinian_data().map_err(err_str)?;
    let rep = mckay::mckay_verify(&spec, &data, order).map_err(err_str)?;
    ensure(rep.holds(), || format!("{rep:?}"))?;
    if !label.is_a_even() {
        let d = mckay::det_m(&spec);
        ensure(d.first_odd_term().is_none(), || "det M(t) has odd terms".into())?;
        let v = mckay::pg_series(&spec, order);
        ensure(v.iter().skip(1).step_by(2).all(|x| x[0] == 0), || "v_{m,0} nonzero for odd m".into())?;
    }
    Ok(())
}

/// `sum_i v_{m,i} dims_i = m + 1` for `m <= max_m`.
pub fn kac_identity(label: RootLabel, max_m: usize) -> std::result::Result<(), String> {
    let spec = mckay::build_root_system(label).map_err(err_str)?;
    let dims = mckay::kac_dims(&spec).map_err(err_str)?;
    for (m, v) in mckay::pg_series(&spec, max_m).iter().enumerate() {
        ensure(v.iter().all(|&x| x >= 0), || format!("negative entry in v_{m}"))?;
        let s: i64 = v.iter().zip(&dims).map(|(&x, &dim)| x * dim as i64).sum();
        ensure(s == m as i64 + 1, || format!("sum v_{m},i dims_i = {s}"))?;
    }
    Ok(())
}

fn theorem1_jobs(opts: &VerifyOptions) -> Vec<Pending> {
    let mut jobs = Vec::new();
    for e in catalog::all_entries(opts.max_index) {
        if let Some((q, d)) = e.hypersurface() {
            jobs.push(pending(Suite::Theorem1, e.name.to_string(), move || hypersurface_checks(q, d)));
        }
    }
    let exhaustive = brieskorn_exhaustive(9);
    let sampled = brieskorn_sample(9, opts.samples, opts.seed);
    for (tag, triples) in [("brieskorn", exhaustive), ("sample", sampled)] {
        for (i, [a, b, c]) in triples.into_iter().enumerate() {
            let (q, d) = brieskorn(a, b, c);
            let case = if tag == "sample" {
                format!("sample {i:03} ({a},{b},{c})")
            } else {
                format!("brieskorn ({a},{b},{c})")
            };
            jobs.push(pending(Suite::Theorem1, case, move || hypersurface_checks(q, d)));
        }
    }
    jobs
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let jobs = match suite {
        Suite::Kleinian => kleinian_jobs(opts),
        Suite::Elliptic => elliptic_jobs(),
        Suite::Theorem1 => theorem1_jobs(opts),
        Suite::Theorem4 => theorem4_jobs(),
        Suite::Mckay => mckay_jobs(opts),
        Suite::All => {
            let mut all = kleinian_jobs(opts);
            all.extend(elliptic_jobs());
            all.extend(theorem1_jobs(opts));
            all.extend(theorem4_jobs());
            all.extend(mckay_jobs(opts));
            all
        }
    };
    SuiteReport {
        suite,
        options: *opts,
        cases: run_all(jobs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyOptions {
        VerifyOptions {
            max_index: 5,
            samples: 10,
            order: 60,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn suite_names_roundtrip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn brieskorn_weights() {
        assert_eq!(brieskorn(2, 3, 5), ([15, 10, 6], 30));
        assert_eq!(brieskorn(2, 3, 7), ([21, 14, 6], 42));
    }

    #[test]
    fn corpora() {
        let ex = brieskorn_exhaustive(9);
        assert!(ex.contains(&[2, 3, 5]) && ex.contains(&[5, 7, 9]));
        assert!(!ex.contains(&[2, 4, 5]));
        let s = brieskorn_sample(9, 100, 1);
        assert_eq!(s.len(), 100);
        assert!(s.iter().all(|&[a, b, c]| pairwise_coprime(a, b, c)));
        assert_eq!(s, brieskorn_sample(9, 100, 1));
        assert_ne!(s, brieskorn_sample(9, 100, 2));
    }

    #[test]
    fn suites_pass() {
        for suite in [Suite::Kleinian, Suite::Elliptic, Suite::Theorem4, Suite::Mckay, Suite::Theorem1] {
            let rep = run_suite(suite, &small());
            assert!(rep.passed(), "{suite}: {:#?}", rep.failures().collect::<Vec<_>>());
            assert!(!rep.cases.is_empty());
        }
    }

    #[test]
    fn deterministic() {
        let a = run_suite(Suite::All, &small());
        let b = run_suite(Suite::All, &small());
        assert_eq!(a, b);
    }

    #[test]
    fn failing_case_is_reported() {
        let res = run_all(vec![pending(Suite::Theorem1, "broken", || Err("boom".into()))]);
        assert!(!res[0].passed);
        assert_eq!(res[0].detail, "boom");
    }
}
