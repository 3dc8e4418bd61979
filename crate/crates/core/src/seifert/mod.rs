//! Orbit invariants, genus, exponent and Poincaré series of quasihomogeneous
//! surface singularities with good C*-action.

mod residue;
mod wagreich;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{gcd, lcm, mod_inverse};
use crate::error::{Error, Result};
use crate::frameshape::FrameShape;

pub use residue::{
    laurent_principal_part, partial_fraction_eval, residue_at, residue_exact, Residue,
};
pub use wagreich::{wagreich3_check, ConditionC, ResidueFormula, Wagreich3Report};

/// Weights `q_1..q_n` and degrees `d_1..d_{n-2}` of a quasihomogeneous ICIS.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeightSystem {
    weights: Vec<u64>,
    degrees: Vec<u64>,
}

impl WeightSystem {
    pub fn new(weights: Vec<u64>, degrees: Vec<u64>) -> Result<Self> {
        if weights.len() < 3 {
            return Err(Error::InvalidWeights(format!(
                "need at least 3 weights, got {}",
                weights.len()
            )));
        }
        if degrees.len() + 2 != weights.len() {
            return Err(Error::InvalidWeights(format!(
                "{} weights need {} degrees, got {}",
                weights.len(),
                weights.len() - 2,
                degrees.len()
            )));
        }
        if weights.iter().chain(&degrees).any(|&x| x == 0) {
            return Err(Error::InvalidWeights("weights and degrees must be positive".into()));
        }
        if weights.iter().fold(0, |g, &q| gcd(g, q)) != 1 {
            return Err(Error::InvalidWeights(format!("gcd of weights {weights:?} is not 1")));
        }
        Ok(WeightSystem { weights, degrees })
    }

    /// Three weights and one degree.
    pub fn hypersurface(q: [u64; 3], d: u64) -> Result<Self> {
        WeightSystem::new(q.to_vec(), vec![d])
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn as_hypersurface(&self) -> Option<([u64; 3], u64)> {
        match (self.weights.as_slice(), self.degrees.as_slice()) {
            (&[a, b, c], &[d]) => Some(([a, b, c], d)),
            _ => None,
        }
    }

    /// `p_A(t) = prod (1 - t^{d_i}) / prod (1 - t^{q_j})`
    pub fn poincare_series(&self) -> FrameShape {
        FrameShape::from_pairs(
            self.degrees
                .iter()
                .map(|&d| (d, 1))
                .chain(self.weights.iter().map(|&q| (q, -1))),
        )
    }

    /// `sum d_i - sum q_j`, which is `R` for Gorenstein weight systems.
    pub fn exponent(&self) -> i64 {
        self.degrees.iter().sum::<u64>() as i64 - self.weights.iter().sum::<u64>() as i64
    }
}

/// An exceptional orbit `(alpha, beta)`; `beta` is unknown when `R = 0` and
/// no fixture supplies it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertPair {
    pub alpha: u64,
    pub beta: Option<u64>,
}

/// `{g; b; (alpha_1, beta_1), ..., (alpha_r, beta_r)}` together with the
/// exponent `R`. Pairs are sorted by `alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertData {
    pub genus: u64,
    pub b: Option<i64>,
    pub exponent: i64,
    pub pairs: Vec<SeifertPair>,
}

impl SeifertData {
    /// Data without the `beta_i` and `b`.
    pub fn from_alphas(genus: u64, exponent: i64, alphas: &[u64]) -> Self {
        let mut pairs: Vec<SeifertPair> = alphas
            .iter()
            .map(|&alpha| SeifertPair { alpha, beta: None })
            .collect();
        pairs.sort_by_key(|p| p.alpha);
        SeifertData {
            genus,
            b: None,
            exponent,
            pairs,
        }
    }

    pub fn alphas(&self) -> Vec<u64> {
        self.pairs.iter().map(|p| p.alpha).collect()
    }

    pub fn r(&self) -> usize {
        self.pairs.len()
    }

    /// `vdeg = -b + sum beta_i / alpha_i`, when `b` and every `beta_i` are known.
    pub fn vdeg(&self) -> Option<BigRational> {
        let mut v = BigRational::from_integer(BigInt::from(-self.b?));
        for p in &self.pairs {
            v += ratio(p.beta? as i64, p.alpha as i64);
        }
        Some(v)
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `sum 1/alpha_i`
fn reciprocal_sum(alphas: &[u64]) -> BigRational {
    alphas
        .iter()
        .map(|&a| ratio(1, a as i64))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

/// Orbit invariants `alpha` of an isolated quasihomogeneous hypersurface
/// singularity, read off the Orlik–Wagreich table. Returned ascending;
/// `alpha = 1` is never listed.
pub fn orbit_invariants(q: [u64; 3], d: u64) -> Result<Vec<u64>> {
    if q.contains(&0) || d == 0 {
        return Err(Error::InvalidWeights("weights and degree must be positive".into()));
    }
    if gcd(gcd(q[0], q[1]), q[2]) != 1 {
        return Err(Error::InvalidWeights(format!("gcd of weights {q:?} is not 1")));
    }
    // d / q_i = u_i / v_i in lowest terms, so v_i = q_i / gcd(d, q_i)
    let v: Vec<u64> = q.iter().map(|&qi| qi / gcd(d, qi)).collect();
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&i| v[i]);
    let (q1, q2, q3) = (q[order[0]], q[order[1]], q[order[2]]);
    let (v1, v2, v3) = (v[order[0]], v[order[1]], v[order[2]]);
    let (d, q1s, q2s, q3s) = (d as i64, q1 as i64, q2 as i64, q3 as i64);

    // numerators for the pair columns (q2,q3), (q1,q3), (q1,q2) and the
    // singleton columns q3, q2, q1
    let (pair_numerators, singles): ([i64; 3], &[u64]) = if v3 == 1 {
        ([d, d, d], &[])
    } else if v2 == 1 {
        ([d - q2s, d - q1s, d], &[q3])
    } else if v1 == 1 {
        ([d - q2s - q3s, d - q1s, d - q1s], &[q3, q2])
    } else {
        ([d - q2s - q3s, d - q1s - q3s, d - q1s - q2s], &[q3, q2, q1])
    };
    let pairs = [(q2, q3), (q1, q3), (q1, q2)];

    let mut alphas = Vec::new();
    for ((a, b), num) in pairs.into_iter().zip(pair_numerators) {
        let g = gcd(a, b);
        if g < 2 {
            continue;
        }
        let den = lcm(a, b) as i64;
        if num < 0 || num % den != 0 {
            return Err(Error::InvalidGeometry(format!(
                "multiplicity ({num})/{den} of alpha = {g} for weights {q:?}, degree {d} is not a nonnegative integer"
            )));
        }
        alphas.extend(std::iter::repeat_n(g, (num / den) as usize));
    }
    alphas.extend(singles.iter().copied().filter(|&s| s >= 2));
    alphas.sort_unstable();
    Ok(alphas)
}

/// `R = d - q_1 - q_2 - q_3`
pub fn exponent(q: [u64; 3], d: u64) -> i64 {
    d as i64 - q.iter().sum::<u64>() as i64
}

/// Solves `2g - 2 + r - sum 1/alpha_i = R d / (q_1 q_2 q_3)` for `g`.
pub fn genus(q: [u64; 3], d: u64, alphas: &[u64]) -> Result<u64> {
    let r = exponent(q, d);
    let prod = (q[0] * q[1] * q[2]) as i64;
    let two_g = ratio(r * d as i64, prod) + BigRational::from_integer(BigInt::from(2 - alphas.len() as i64))
        + reciprocal_sum(alphas);
    let g = two_g / BigRational::from_integer(BigInt::from(2));
    if !g.is_integer() || g.is_negative() {
        return Err(Error::InvalidGeometry(format!(
            "genus {g} for weights {q:?}, degree {d} is not a nonnegative integer"
        )));
    }
    Ok(g.to_integer().to_u64().expect("genus fits in u64"))
}

/// Fills in `beta_i = R^{-1} mod alpha_i` and `b` from the two relations
/// `R beta_i = 1 mod alpha_i` and `R vdeg = 2 - 2g - r + sum 1/alpha_i`.
pub fn seifert_completion(alphas: &[u64], r: i64, g: u64) -> Result<SeifertData> {
    if r == 0 {
        return Err(Error::ZeroExponent);
    }
    let mut sorted = alphas.to_vec();
    sorted.sort_unstable();
    let mut pairs = Vec::with_capacity(sorted.len());
    let mut beta_sum = BigRational::zero();
    for &alpha in &sorted {
        if alpha < 2 {
            return Err(Error::InvalidGeometry(format!("alpha = {alpha} must be at least 2")));
        }
        let beta = mod_inverse(r, alpha).ok_or(Error::NotCoprime { r, alpha })?;
        beta_sum += ratio(beta as i64, alpha as i64);
        pairs.push(SeifertPair {
            alpha,
            beta: Some(beta),
        });
    }
    let rhs = BigRational::from_integer(BigInt::from(2 - 2 * g as i64 - sorted.len() as i64))
        + reciprocal_sum(&sorted);
    let vdeg = rhs / BigRational::from_integer(BigInt::from(r));
    let b = beta_sum - vdeg;
    if !b.is_integer() {
        return Err(Error::InvalidGeometry(format!("b = {b} is not an integer")));
    }
    Ok(SeifertData {
        genus: g,
        b: Some(b.to_integer().to_i64().expect("b fits in i64")),
        exponent: r,
        pairs,
    })
}

/// `p_A`, `psi_A`, `phi_A = p_A psi_A` and `phi~_A = phi_A / (1-t)^{2g}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoincareBundle {
    pub p: FrameShape,
    pub psi: FrameShape,
    pub phi: FrameShape,
    pub phi_tilde: FrameShape,
}

impl PoincareBundle {
    /// Assembles the bundle from a Poincaré series and orbit data.
    pub fn assemble(p: FrameShape, alphas: &[u64], g: u64) -> Self {
        let psi = psi_shape(alphas);
        let phi = p.mul(&psi);
        let phi_tilde = phi.mul(&FrameShape::factor(1, -2 * g as i64));
        PoincareBundle {
            p,
            psi,
            phi,
            phi_tilde,
        }
    }
}

/// `psi_A(t) = (1-t)^{2-r} prod (1 - t^{alpha_i})`
pub fn psi_shape(alphas: &[u64]) -> FrameShape {
    FrameShape::from_pairs(
        std::iter::once((1, 2 - alphas.len() as i64)).chain(alphas.iter().map(|&a| (a, 1))),
    )
}

/// Hypersurface data computed from weights and degree alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypersurfaceData {
    pub weights: [u64; 3],
    pub degree: u64,
    pub alphas: Vec<u64>,
    pub genus: u64,
    pub exponent: i64,
    pub bundle: PoincareBundle,
}

pub fn bundle(q: [u64; 3], d: u64) -> Result<PoincareBundle> {
    Ok(hypersurface_data(q, d)?.bundle)
}

pub fn hypersurface_data(q: [u64; 3], d: u64) -> Result<HypersurfaceData> {
    let w = WeightSystem::hypersurface(q, d)?;
    let alphas = orbit_invariants(q, d)?;
    let g = genus(q, d, &alphas)?;
    Ok(HypersurfaceData {
        weights: q,
        degree: d,
        genus: g,
        exponent: exponent(q, d),
        bundle: PoincareBundle::assemble(w.poincare_series(), &alphas, g),
        alphas,
    })
}

/// `SeifertData` for a hypersurface, with `beta_i` and `b` when `R != 0`.
pub fn hypersurface_seifert(q: [u64; 3], d: u64) -> Result<SeifertData> {
    let alphas = orbit_invariants(q, d)?;
    let g = genus(q, d, &alphas)?;
    let r = exponent(q, d);
    if r == 0 {
        Ok(SeifertData::from_alphas(g, r, &alphas))
    } else {
        seifert_completion(&alphas, r, g)
    }
}
