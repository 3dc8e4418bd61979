//! Truncated power series with integer coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, JsonInts};

/// `sum_{k=0}^{order} a_k t^k`; always stores exactly `order + 1` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        PowerSeries { coeffs }
    }

    pub fn from_poly(p: &IntPoly, order: usize) -> Self {
        PowerSeries::from_coeffs(p.coeffs().to_vec(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [BigInt] {
        &mut self.coeffs
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Quotient by a series whose constant term is a unit.
    pub fn div(&self, den: &PowerSeries) -> Result<PowerSeries> {
        let n = self.order().min(den.order());
        let lead = &den.coeffs[0];
        if !(lead.is_one() || (-lead).is_one()) {
            return Err(Error::RemainderNonzero);
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !den.coeffs[j].is_zero() {
                    acc -= &den.coeffs[j] * &out[k - j];
                }
            }
            let (q, r) = acc.div_rem(lead);
            debug_assert!(r.is_zero());
            out.push(q);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `f(t) -> f(t^k)`, keeping the same truncation order.
    pub fn compose_power(&self, k: usize) -> PowerSeries {
        assert!(k > 0);
        let n = self.order();
        let mut out = PowerSeries::zero(n);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j * k > n {
                break;
            }
            out.coeffs[j * k] = c.clone();
        }
        out
    }
}

/// `{"order": N, "coeffs": [a0, ..., aN]}`
impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PowerSeries", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &JsonInts(&self.coeffs))?;
        st.end()
    }
}
