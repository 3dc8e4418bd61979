//! Residues and principal parts of Frame-shape rational functions at roots
//! of unity.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::frameshape::FrameShape;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Primitive root `exp(2 pi i j / order)`.
fn root(order: u64, j: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (j % order) as f64 / order as f64)
}

/// `zeta^m` for `zeta = exp(2 pi i j / order)`, reduced exactly mod `order`.
fn root_pow(order: u64, j: u64, m: u64) -> Complex64 {
    root(order, ((j % order) * (m % order)) % order)
}

/// Residue at a root of unity together with the bookkeeping that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residue {
    /// Order of the root of unity.
    pub alpha: u64,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    /// Pole order, `-sum_{alpha | m} chi_m`.
    pub pole_order: i64,
    /// Factors `(m, chi_m)` that vanish at the root.
    pub vanishing: Vec<(u64, i64)>,
}

pub(crate) fn ser_complex<S: serde::Serializer>(
    z: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&z.re)?;
    seq.serialize_element(&z.im)?;
    seq.end()
}

/// Residue at `xi = exp(2 pi i / alpha)`; see [`residue_at`].
pub fn residue_exact(p: &FrameShape, alpha: u64) -> Result<Residue> {
    residue_at(p, alpha, 1)
}

/// Residue at the primitive root `zeta = exp(2 pi i j / alpha)`.
///
/// Each factor `1 - t^m` with `alpha | m` is `(t - zeta) g_m(t)` with
/// `g_m(zeta) = -m zeta^{m-1}`; after cancelling `(t - zeta)` the remaining
/// finite product is evaluated at `zeta`.
pub fn residue_at(p: &FrameShape, alpha: u64, j: u64) -> Result<Residue> {
    assert!(alpha >= 1 && gcd(j, alpha) == 1, "root must be primitive");
    let vanishing: Vec<(u64, i64)> = p.iter().filter(|&(m, _)| m % alpha == 0).collect();
    let pole_order = -vanishing.iter().map(|&(_, e)| e).sum::<i64>();
    if pole_order != 1 {
        return Err(Error::NotSimplePole {
            alpha,
            order: pole_order,
        });
    }
    let mut value = c(1.0);
    for (m, e) in p.iter() {
        let factor = if m % alpha == 0 {
            // zeta^{m-1} = zeta^{-1} since zeta^m = 1
            -(m as f64) * root(alpha, alpha - j % alpha)
        } else {
            c(1.0) - root_pow(alpha, j, m)
        };
        value *= factor.powi(e as i32);
    }
    Ok(Residue {
        alpha,
        value,
        pole_order,
        vanishing,
    })
}

fn series_mul(a: &[Complex64], b: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut out = vec![c(0.0); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (k, y) in b.iter().enumerate().take(len - i) {
            out[i + k] += x * y;
        }
    }
    out
}

fn series_inv(a: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut out = vec![c(0.0); len];
    out[0] = c(1.0) / a[0];
    for k in 1..len {
        let mut acc = c(0.0);
        for i in 1..=k.min(a.len() - 1) {
            acc += a[i] * out[k - i];
        }
        out[k] = -acc * out[0];
    }
    out
}

fn series_pow(a: &[Complex64], e: i64, len: usize) -> Vec<Complex64> {
    let base = if e < 0 { series_inv(a, len) } else { a[..a.len().min(len)].to_vec() };
    let mut acc = vec![c(0.0); len];
    acc[0] = c(1.0);
    for _ in 0..e.unsigned_abs() {
        acc = series_mul(&acc, &base, len);
    }
    acc
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Principal part at `zeta = exp(2 pi i j / order)`: returns `c_1..c_K` with
/// `f(t) = sum_k c_k (t - zeta)^{-k} + O(1)`, `K` the pole order (empty when
/// there is no pole).
///
/// Expands in `u` with `t = zeta (1 + u)`; a vanishing factor becomes
/// `1 - (1+u)^m = -m u (1 + ...)`.
pub fn laurent_principal_part(p: &FrameShape, order: u64, j: u64) -> Vec<Complex64> {
    let pole: i64 = -p.iter().filter(|&(m, _)| m % order == 0).map(|(_, e)| e).sum::<i64>();
    if pole <= 0 {
        return Vec::new();
    }
    let len = pole as usize;
    let mut g = vec![c(0.0); len];
    g[0] = c(1.0);
    for (m, e) in p.iter() {
        let terms = (m as usize + 1).min(len + 1);
        let base: Vec<Complex64> = if m % order == 0 {
            // (1 - (1+u)^m) / u = -sum_{i>=0} C(m, i+1) u^i
            (0..terms.min(m as usize))
                .map(|i| c(-binomial(m, i as u64 + 1)))
                .collect()
        } else {
            let zm = root_pow(order, j, m);
            (0..terms)
                .map(|i| {
                    let v = if i == 0 { c(1.0) } else { c(0.0) };
                    v - zm * binomial(m, i as u64)
                })
                .collect()
        };
        g = series_mul(&g, &series_pow(&base, e, len), len);
    }
    // f = u^{-K} g(u) and u = (t - zeta)/zeta, so u^{-k} = zeta^k (t - zeta)^{-k}
    let zeta = root(order, j);
    (1..=len).map(|k| g[len - k] * zeta.powu(k as u32)).collect()
}

/// Evaluates `p` through its partial-fraction decomposition: the principal
/// parts at every pole plus the polynomial part recovered from the Taylor
/// coefficients at 0.
pub fn partial_fraction_eval(p: &FrameShape, t: Complex64) -> Complex64 {
    let mut orders: Vec<u64> = p.iter().filter(|&(_, e)| e < 0).flat_map(|(m, _)| crate::arith::divisors(m)).collect();
    orders.sort_unstable();
    orders.dedup();

    let poly_degree = p.degree();
    let mut poly_coeffs: Vec<Complex64> = if poly_degree >= 0 {
        p.expand_series(poly_degree as usize)
            .coeffs()
            .iter()
            .map(|x| c(x.to_f64().unwrap()))
            .collect()
    } else {
        Vec::new()
    };

    let mut value = c(0.0);
    for order in orders {
        for j in (1..=order).filter(|&j| gcd(j, order) == 1) {
            let zeta = root(order, j);
            let parts = laurent_principal_part(p, order, j);
            for (k, ck) in parts.iter().enumerate() {
                let k = k as u64 + 1;
                value += ck / (t - zeta).powu(k as u32);
                // Taylor coefficients of c (t - zeta)^{-k} at 0:
                // c (-zeta)^{-k} C(n+k-1, k-1) zeta^{-n}
                for (n, slot) in poly_coeffs.iter_mut().enumerate() {
                    let n = n as u64;
                    *slot -= ck * (-zeta).powi(-(k as i32))
                        * binomial(n + k - 1, k - 1)
                        * zeta.powi(-(n as i32));
                }
            }
        }
    }
    value + poly_coeffs.iter().rev().fold(c(0.0), |acc, a| acc * t + a)
}
