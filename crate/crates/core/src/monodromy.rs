//! Characteristic polynomials of the classical monodromy of quasihomogeneous
//! hypersurfaces in C^3, the suspension formula for ICIS, and the duality
//! checks between `phi~_A` and the monodromy.
//!
//! Two independent routes compute the monodromy: [`charpoly_hypersurface`]
//! goes through the power sums `Lambda_k` and Möbius inversion,
//! [`charpoly_oracle`] expands the rational function `Phi(T)` into monomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{divisors, gcd, lcm, mobius, totient};
use crate::error::{Error, Result};
use crate::frameshape::FrameShape;
use crate::poly::IntPoly;
use crate::seifert::{self, PoincareBundle, WeightSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonodromyResult {
    /// `phi_M(t) = prod (t^m - 1)^{chi_m}`
    pub charpoly: FrameShape,
    /// Milnor number.
    pub mu: u64,
    /// `Lambda_k` for every `k | d`.
    pub lambdas: BTreeMap<u64, i64>,
}

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_integer(x: &BigRational, what: &str) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::InvalidWeights(format!("{what} = {x} is not an integer")));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidWeights(format!("{what} overflows")))
}

/// `Lambda_k = prod_i (delta(k q_i mod d) d/q_i - 1)`.
///
/// Fails with `InvalidWeights` if the product is not an integer, which
/// cannot happen for a genuine weight system.
pub fn lambda_k(q: [u64; 3], d: u64, k: u64) -> Result<i64> {
    let mut acc = BigRational::one();
    for &qi in &q {
        let factor = if (k * qi) % d == 0 {
            ratio(d, qi) - BigRational::one()
        } else {
            -BigRational::one()
        };
        acc *= factor;
    }
    to_integer(&acc, "Lambda_k")
}

/// `mu = prod (d/q_i - 1)`
pub fn milnor_number(q: [u64; 3], d: u64) -> Result<u64> {
    let mu = q
        .iter()
        .map(|&qi| ratio(d, qi) - BigRational::one())
        .fold(BigRational::one(), |a, b| a * b);
    let mu = to_integer(&mu, "Milnor number")?;
    u64::try_from(mu).map_err(|_| Error::InvalidWeights(format!("negative Milnor number {mu}")))
}

fn check_weights(q: [u64; 3], d: u64) -> Result<()> {
    WeightSystem::hypersurface(q, d)?;
    if q.iter().any(|&qi| qi >= d) {
        return Err(Error::InvalidWeights(format!(
            "every weight must be below the degree, got {q:?} and {d}"
        )));
    }
    Ok(())
}

/// Monodromy from the power sums: `chi_m` by Möbius inversion of
/// `Lambda_k = sum_{m|k} m chi_m` over the divisors of `d`.
pub fn charpoly_hypersurface(q: [u64; 3], d: u64) -> Result<MonodromyResult> {
    check_weights(q, d)?;
    let mut lambdas = BTreeMap::new();
    for k in divisors(d) {
        lambdas.insert(k, lambda_k(q, d, k)?);
    }
    let charpoly = FrameShape::from_newton_sums(&lambdas, d)?;
    let mu = milnor_number(q, d)?;
    if charpoly.degree() != mu as i64 || lambdas[&d] != mu as i64 {
        return Err(Error::InvalidWeights(format!(
            "Milnor number {mu} disagrees with degree {} / Lambda_d {}",
            charpoly.degree(),
            lambdas[&d]
        )));
    }
    Ok(MonodromyResult {
        charpoly,
        mu,
        lambdas,
    })
}

/// The oracle route's intermediate data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleExpansion {
    /// `m_1 <= ... <= m_mu` with `Phi(T) = sum T^{m_i}`.
    pub exponents: Vec<i64>,
    pub result: MonodromyResult,
}

/// Ramanujan sum `c_e(k)`: the sum of k-th powers of the primitive e-th roots
/// of unity.
fn ramanujan_sum(e: u64, k: u64) -> i64 {
    let g = gcd(e, k);
    let r = e / g;
    mobius(r) * (totient(e) / totient(r)) as i64
}

/// Monodromy from `Phi(T) = T^{-d} prod (T^d - T^{q_i}) / prod (T^{q_i} - 1)`
/// by exact polynomial division.
pub fn charpoly_oracle(q: [u64; 3], d: u64) -> Result<OracleExpansion> {
    check_weights(q, d)?;
    // T^d - T^q = T^q (T^{d-q} - 1), so Phi = T^{sum q - d} N(T) / D(T)
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for &qi in &q {
        num = &num * &IntPoly::t_pow_minus_one((d - qi) as usize);
        den = &den * &IntPoly::t_pow_minus_one(qi as usize);
    }
    let quotient = num.div_exact(&den)?;
    let shift = q.iter().sum::<u64>() as i64 - d as i64;

    let mut exponents = Vec::new();
    for (i, c) in quotient.coeffs().iter().enumerate() {
        let count = c
            .to_u64()
            .ok_or_else(|| Error::InvalidWeights(format!("Phi(T) has coefficient {c} at T^{i}")))?;
        exponents.extend(std::iter::repeat_n(i as i64 + shift, count as usize));
    }

    // omega_i = exp(2 pi i m_i / d) has order d / gcd(m_i mod d, d)
    let mut per_residue: BTreeMap<u64, u64> = BTreeMap::new();
    for &m in &exponents {
        *per_residue.entry(m.rem_euclid(d as i64) as u64).or_insert(0) += 1;
    }
    let mut multiplicities: BTreeMap<u64, i64> = BTreeMap::new();
    for order in divisors(d) {
        let step = d / order;
        let class: Vec<u64> = (0..order)
            .filter(|&j| gcd(j, order) == 1)
            .map(|j| j * step)
            .collect();
        let counts: Vec<u64> = class
            .iter()
            .map(|a| per_residue.get(a).copied().unwrap_or(0))
            .collect();
        if counts.iter().any(|&c| c != counts[0]) {
            return Err(Error::NonGaloisStable { order });
        }
        if counts[0] > 0 {
            multiplicities.insert(order, counts[0] as i64);
        }
    }
    let charpoly = FrameShape::from_cyclotomic_multiplicities(&multiplicities);
    let lambdas = divisors(d)
        .into_iter()
        .map(|k| {
            let s = multiplicities
                .iter()
                .map(|(&e, &n)| n * ramanujan_sum(e, k))
                .sum();
            (k, s)
        })
        .collect();
    Ok(OracleExpansion {
        result: MonodromyResult {
            charpoly,
            mu: exponents.len() as u64,
            lambdas,
        },
        exponents,
    })
}

/// Characteristic polynomial of the p-fold suspension of an ICIS with
/// monodromy `phi_M` whose first equation alone has monodromy `phi_M_prime`:
///
/// `prod_m (1-t^{<m,p>})^{(m,p) chi_m} / (1-t^m)^{chi_m} * prod_k (1-t^{<k,p>})^{(k,p) chi'_k}`
pub fn suspension(phi_m: &FrameShape, phi_m_prime: &FrameShape, p: u64) -> FrameShape {
    let mut pairs = Vec::new();
    for (m, e) in phi_m.iter() {
        pairs.push((lcm(m, p), gcd(m, p) as i64 * e));
        pairs.push((m, -e));
    }
    for (k, e) in phi_m_prime.iter() {
        pairs.push((lcm(k, p), gcd(k, p) as i64 * e));
    }
    FrameShape::from_pairs(pairs)
}

/// Outcome of comparing `phi~_A^*` with the monodromy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub weights: [u64; 3],
    pub degree: u64,
    pub phi_tilde: FrameShape,
    pub dual: FrameShape,
    pub charpoly: FrameShape,
    pub oracle: FrameShape,
    pub holds: bool,
}

/// Checks `saito_dual(phi~_A, d) = phi_M` against both monodromy routes.
pub fn theorem1_verify(q: [u64; 3], d: u64) -> Result<Theorem1Report> {
    let bundle = seifert::bundle(q, d)?;
    let dual = bundle.phi_tilde.saito_dual(d)?;
    let charpoly = charpoly_hypersurface(q, d)?.charpoly;
    let oracle = charpoly_oracle(q, d)?.result.charpoly;
    let holds = dual == charpoly && dual == oracle;
    Ok(Theorem1Report {
        weights: q,
        degree: d,
        phi_tilde: bundle.phi_tilde,
        dual,
        charpoly,
        oracle,
        holds,
    })
}

/// The first `k <= d` at which the power sums of `saito_dual(phi~_A, d)`
/// differ from `lambda_k`, if any.
pub fn proof_step_mismatch(q: [u64; 3], d: u64) -> Result<Option<(u64, i64, i64)>> {
    let dual = seifert::bundle(q, d)?.phi_tilde.saito_dual(d)?;
    for k in 1..=d {
        let tilde = dual.newton_sum(k);
        let direct = lambda_k(q, d, k)?;
        if tilde != direct {
            return Ok(Some((k, tilde, direct)));
        }
    }
    Ok(None)
}

/// Inputs shared by the two ICIS duality checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IcisInput {
    pub weights: [u64; 4],
    /// `d_1` for `g`, `d_2` for `f`.
    pub degrees: [u64; 2],
    pub phi_m: FrameShape,
    pub genus: u64,
    pub alphas: Vec<u64>,
}

impl IcisInput {
    fn bundle(&self) -> Result<PoincareBundle> {
        let w = WeightSystem::new(self.weights.to_vec(), self.degrees.to_vec())?;
        Ok(PoincareBundle::assemble(w.poincare_series(), &self.alphas, self.genus))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IcisReport {
    pub phi_a: FrameShape,
    pub phi_tilde: FrameShape,
    pub level: u64,
    pub dual: FrameShape,
    pub phi_m_flat: FrameShape,
    pub holds: bool,
}

fn icis_report(phi_a: FrameShape, phi_tilde: FrameShape, phi_m_flat: FrameShape, level: Option<u64>) -> Result<IcisReport> {
    let level = level.unwrap_or_else(|| phi_tilde.level());
    let dual = phi_tilde.saito_dual(level)?;
    Ok(IcisReport {
        holds: dual == phi_m_flat,
        phi_a,
        phi_tilde,
        level,
        dual,
        phi_m_flat,
    })
}

/// `phi_M / (1 - t)`
pub fn flat_4a(phi_m: &FrameShape) -> FrameShape {
    phi_m.mul(&FrameShape::factor(1, -1))
}

/// `phi_M (1-t^q)^p / ((1-t)^{p-1} (1-t^{<p,q>})^{(p,q)})`
pub fn flat_4b(phi_m: &FrameShape, p: u64, q: u64) -> FrameShape {
    phi_m.mul(&FrameShape::from_pairs([
        (q, p as i64),
        (1, 1 - p as i64),
        (lcm(p, q), -(gcd(p, q) as i64)),
    ]))
}

/// ICIS with `g = z_1 z_4 + z_2 z_3`: `phi~_A = phi_A (1-t^{d_2}) / ((1-t)^{2g} (1-t^{d_1}))`
/// dualizes to `phi_M / (1-t)`. The dual level defaults to the lcm of the
/// support of `phi~_A`.
pub fn theorem4a_verify(input: &IcisInput, level: Option<u64>) -> Result<IcisReport> {
    let bundle = input.bundle()?;
    let [d1, d2] = input.degrees;
    let phi_tilde = bundle.phi_tilde.mul(&FrameShape::from_pairs([(d2, 1), (d1, -1)]));
    icis_report(bundle.phi, phi_tilde, flat_4a(&input.phi_m), level)
}

/// Normal form of a suspended ICIS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SuspensionCase {
    /// `g = z_1^q + z_2 z_3`, `f = f'(z_1,z_2,z_3) + z_4^p` with `q | d_2`.
    A,
    /// `g = z_1^q + (z_2 - z_3) z_4`, `f = a z_1^q + z_2 (z_3 - z_4)`, `p = 2`.
    B,
}

pub fn theorem4b_verify(
    case: SuspensionCase,
    q: u64,
    p: u64,
    input: &IcisInput,
    level: Option<u64>,
) -> Result<IcisReport> {
    if p < 2 || q < 2 {
        return Err(Error::CaseViolation(format!("need p, q >= 2, got p = {p}, q = {q}")));
    }
    let [d1, d2] = input.degrees;
    match case {
        SuspensionCase::A if d2 % q != 0 => {
            return Err(Error::CaseViolation(format!("case (A) needs q = {q} | d_2 = {d2}")))
        }
        SuspensionCase::B if p != 2 => {
            return Err(Error::CaseViolation(format!("case (B) needs p = 2, got {p}")))
        }
        _ => {}
    }
    for (num, den) in [(d1, q), (d2, p), (d2, q)] {
        if num % den != 0 {
            return Err(Error::CaseViolation(format!("{den} does not divide {num}")));
        }
    }
    let bundle = input.bundle()?;
    let phi_tilde = bundle.phi_tilde.mul(&FrameShape::from_pairs([
        (d2, p as i64 - 1),
        (d1 / q, 1),
        (d2 / p, 1),
        (d1, -1),
        (d2 / q, -(p as i64)),
    ]));
    icis_report(bundle.phi, phi_tilde, flat_4b(&input.phi_m, p, q), level)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(s: &str) -> FrameShape {
        s.parse().unwrap()
    }

    /// Independent Lambda_k: sum of k-th powers of exp(2 pi i m_i / d) over
    /// the exponents of Phi(T), numerically.
    fn numeric_lambda(exponents: &[i64], d: u64, k: u64) -> f64 {
        exponents
            .iter()
            .map(|&m| (2.0 * std::f64::consts::PI * (m * k as i64) as f64 / d as f64).cos())
            .sum()
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_k([6, 10, 15], 30, 1).unwrap(), -1);
        assert_eq!(lambda_k([6, 10, 15], 30, 5).unwrap(), 4);
        assert_eq!(lambda_k([6, 10, 15], 30, 30).unwrap(), 8);
        let exps = charpoly_oracle([6, 10, 15], 30).unwrap().exponents;
        for k in 1..=60 {
            let direct = lambda_k([6, 10, 15], 30, k).unwrap() as f64;
            assert!((numeric_lambda(&exps, 30, k) - direct).abs() < 1e-9, "k = {k}");
        }
    }

    #[test]
    fn lambda_with_fractional_factors() {
        // E7: d/q_1 = 18/4 is not an integer, the products still are
        assert_eq!(lambda_k([4, 6, 9], 18, 9).unwrap(), -7);
        assert_eq!(lambda_k([4, 6, 9], 18, 18).unwrap(), 7);
    }

    #[test]
    fn hypersurface_examples() {
        let r = charpoly_hypersurface([6, 10, 15], 30).unwrap();
        assert_eq!(r.charpoly.to_string(), "2*3*5*30/1*6*10*15");
        assert_eq!(r.mu, 8);

        let r = charpoly_hypersurface([1, 1, 1], 2).unwrap();
        assert_eq!(r.charpoly.to_string(), "2/1");
        assert_eq!(r.mu, 1);

        let r = charpoly_hypersurface([2, 3, 3], 6).unwrap();
        assert_eq!(r.charpoly.to_string(), "3/1");
        assert_eq!(r.mu, 2);
        let a2 = seifert::bundle([2, 3, 3], 6).unwrap();
        assert_eq!(a2.phi_tilde.saito_dual(6).unwrap(), r.charpoly);
    }

    #[test]
    fn invalid_weights_rejected() {
        assert!(charpoly_hypersurface([2, 2, 2], 4).is_err());
        assert!(charpoly_hypersurface([1, 2, 6], 6).is_err());
        // not the weights of any isolated singularity
        assert!(charpoly_hypersurface([2, 3, 4], 5).is_err());
        assert!(charpoly_oracle([2, 3, 4], 5).is_err());
    }

    #[test]
    fn oracle_examples() {
        let o = charpoly_oracle([1, 1, 1], 2).unwrap();
        assert_eq!(o.exponents, vec![1]);
        assert_eq!(o.result.charpoly.to_string(), "2/1");

        let o = charpoly_oracle([6, 10, 15], 30).unwrap();
        assert_eq!(o.exponents.len(), 8);
        assert_eq!(o.result.mu, 8);
        assert_eq!(o.result, charpoly_hypersurface([6, 10, 15], 30).unwrap());

        let o = charpoly_oracle([1, 2, 3], 6).unwrap();
        assert_eq!(o.result.charpoly.to_string(), "2*3*6/1");
    }

    #[test]
    fn ramanujan_sums() {
        for e in 1..=12u64 {
            for k in 1..=24u64 {
                let numeric: f64 = (1..=e)
                    .filter(|&j| gcd(j, e) == 1)
                    .map(|j| (2.0 * std::f64::consts::PI * (j * k) as f64 / e as f64).cos())
                    .sum();
                assert!((numeric - ramanujan_sum(e, k) as f64).abs() < 1e-9, "c_{e}({k})");
            }
        }
    }

    /// Brute-force evaluation of the suspension formula through explicit
    /// polynomial products.
    fn suspension_oracle(phi: &FrameShape, phi_prime: &FrameShape, p: u64) -> IntPoly {
        let brute_lcm = |a: u64, b: u64| (1..).map(|k| a * k).find(|x| x % b == 0).unwrap();
        let brute_gcd = |a: u64, b: u64| (1..=a.min(b)).rev().find(|g| a % g == 0 && b % g == 0).unwrap();
        let mut num = IntPoly::one();
        let mut den = IntPoly::one();
        let mut push = |m: u64, e: i64| {
            let f = IntPoly::one_minus_t_pow(m as usize).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &f;
            } else {
                den = &den * &f;
            }
        };
        for (m, e) in phi.iter() {
            push(brute_lcm(m, p), brute_gcd(m, p) as i64 * e);
            push(m, -e);
        }
        for (k, e) in phi_prime.iter() {
            push(brute_lcm(k, p), brute_gcd(k, p) as i64 * e);
        }
        num.div_exact(&den).unwrap()
    }

    #[test]
    fn suspension_examples() {
        assert_eq!(suspension(&FrameShape::trivial(), &fs("2"), 2), fs("2^2"));
        assert_eq!(suspension(&fs("1"), &FrameShape::trivial(), 3), fs("3/1"));
        assert_eq!(suspension(&fs("2"), &fs("1"), 2), fs("2^2"));
        for (a, b, p) in [("2", "1", 2), ("1", "1^0", 3), ("2*3/1", "2", 3), ("6/2", "3", 4)] {
            let s = suspension(&fs(a), &fs(b), p);
            assert_eq!(s.to_polynomial().unwrap(), suspension_oracle(&fs(a), &fs(b), p));
        }
    }

    #[test]
    fn theorem1_examples() {
        let r = theorem1_verify([6, 10, 15], 30).unwrap();
        assert!(r.holds);
        let r = theorem1_verify([1, 2, 3], 6).unwrap();
        assert!(r.holds);
        assert_eq!(r.phi_tilde.to_string(), "6/1*2*3");
        assert_eq!(r.dual.to_string(), "2*3*6/1");
        let r = theorem1_verify([2, 3, 3], 6).unwrap();
        assert!(r.holds);
        assert_eq!(r.phi_tilde.to_string(), "6/2");
        assert_eq!(r.dual.to_string(), "3/1");
    }

    #[test]
    fn proof_steps_e8() {
        assert_eq!(proof_step_mismatch([6, 10, 15], 30).unwrap(), None);
        assert_eq!(proof_step_mismatch([4, 6, 9], 18).unwrap(), None);
    }

    fn d5(phi_m: &str) -> IcisInput {
        IcisInput {
            weights: [1, 1, 1, 1],
            degrees: [2, 2],
            phi_m: fs(phi_m),
            genus: 1,
            alphas: vec![],
        }
    }

    #[test]
    fn theorem4a_examples() {
        let r = theorem4a_verify(&d5("2^4/1"), None).unwrap();
        assert!(r.holds);
        assert_eq!(r.phi_a.to_string(), "2^2/1^2");
        assert!(!theorem4a_verify(&d5("2^3/1"), None).unwrap().holds);

        let r = theorem4a_verify(&d5("2^4/1"), Some(2)).unwrap();
        assert!(r.holds);
        assert_eq!(r.phi_tilde.to_string(), "2^2/1^4");
        assert_eq!(r.dual.to_string(), "2^4/1^2");

        assert_eq!(
            theorem4a_verify(&d5("2^4/1"), Some(3)),
            Err(Error::NonDivisorPeriod { period: 2, level: 3 })
        );
    }

    #[test]
    fn theorem4b_examples() {
        let b = theorem4b_verify(SuspensionCase::B, 2, 2, &d5("2^4/1"), None).unwrap();
        assert!(b.holds);
        let a = theorem4a_verify(&d5("2^4/1"), None).unwrap();
        assert_eq!(a.phi_m_flat, b.phi_m_flat);
        assert_eq!(a.phi_tilde, b.phi_tilde);

        for q in [2u64, 4, 6, 8] {
            for phi in ["2^4/1", "1^0", "3*5/1^2", "12/4*6"] {
                assert_eq!(flat_4b(&fs(phi), 2, q), flat_4a(&fs(phi)), "q = {q}, {phi}");
            }
        }
        // q = 3 does not reduce
        assert_ne!(flat_4b(&fs("2^4/1"), 2, 3), flat_4a(&fs("2^4/1")));
    }

    #[test]
    fn theorem4b_cases() {
        let mut input = d5("2^4/1");
        input.degrees = [3, 4];
        assert!(matches!(
            theorem4b_verify(SuspensionCase::A, 3, 2, &input, None),
            Err(Error::CaseViolation(_))
        ));
        assert!(matches!(
            theorem4b_verify(SuspensionCase::B, 2, 3, &d5("2^4/1"), None),
            Err(Error::CaseViolation(_))
        ));
        // negative controls: mismatched monodromy
        let input = d5("2^3/1");
        assert!(!theorem4b_verify(SuspensionCase::B, 2, 2, &input, None).unwrap().holds);
        let input = IcisInput {
            weights: [2, 3, 3, 2],
            degrees: [6, 6],
            phi_m: fs("2^4/1"),
            genus: 0,
            alphas: vec![],
        };
        assert!(!theorem4b_verify(SuspensionCase::A, 3, 2, &input, None).unwrap().holds);
    }
}
