//! Frame shapes: rational functions `prod_m (1 - t^m)^{chi_m}` stored as the
//! sparse exponent map `m -> chi_m`.
//!
//! The same exponent data describes `prod_m (t^m - 1)^{chi_m}`; the two differ
//! by the sign `(-1)^{sum chi_m}`, see [`FrameShape::to_monic_polynomial`].
//!
//! Text form: numerator factors joined by `*`, then `/` and the denominator,
//! each factor `m` or `m^e`, periods ascending. `"2*3*5*30/1*6*10*15"` is
//! `(1-t^2)(1-t^3)(1-t^5)(1-t^30) / ((1-t)(1-t^6)(1-t^10)(1-t^15))`.
//! The trivial shape is `"1^0"`, which is also used as the numerator of a
//! shape that has only negative exponents (`"1^0/2"` is `1/(1-t^2)`).

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeSeq, SerializeStruct, Serializer};

use crate::arith::{divisors, gcd, indices_with_totient_at_most, lcm, mobius, totient};
use crate::error::{Error, Result};
use crate::poly::{CyclotomicCache, IntPoly};
use crate::series::PowerSeries;

/// Canonical form: every key is at least 1 and no stored exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FrameShape {
    chi: BTreeMap<u64, i64>,
}

impl FrameShape {
    /// The constant function 1.
    pub fn trivial() -> Self {
        FrameShape::default()
    }

    /// `(1 - t^m)^e`
    pub fn factor(m: u64, e: i64) -> Self {
        FrameShape::from_pairs([(m, e)])
    }

    /// Duplicate periods are merged and zero exponents dropped.
    ///
    /// Panics on a period of zero.
    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut chi = BTreeMap::new();
        for (m, e) in pairs {
            assert!(m >= 1, "frame shape period must be positive");
            *chi.entry(m).or_insert(0) += e;
        }
        chi.retain(|_, e| *e != 0);
        FrameShape { chi }
    }

    pub fn chi(&self, m: u64) -> i64 {
        self.chi.get(&m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.chi.iter().map(|(&m, &e)| (m, e))
    }

    pub fn is_trivial(&self) -> bool {
        self.chi.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.chi.keys().copied()
    }

    /// `sum m * chi_m`; the polynomial degree for polynomial shapes.
    pub fn degree(&self) -> i64 {
        self.iter().map(|(m, e)| m as i64 * e).sum()
    }

    /// `sum chi_m`, the order of vanishing at `t = 1`.
    pub fn total_exponent(&self) -> i64 {
        self.chi.values().sum()
    }

    /// Least common multiple of the support (1 for the trivial shape).
    pub fn level(&self) -> u64 {
        self.support().fold(1, lcm)
    }

    pub fn inverse(&self) -> Self {
        FrameShape {
            chi: self.chi.iter().map(|(&m, &e)| (m, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        FrameShape::from_pairs(self.iter().map(|(m, e)| (m, e * k)))
    }

    pub fn mul(&self, other: &FrameShape) -> Self {
        FrameShape::from_pairs(self.iter().chain(other.iter()))
    }

    pub fn div(&self, other: &FrameShape) -> Self {
        self.mul(&other.inverse())
    }

    /// Saito dual at level `h`: `chi*_k = -chi_{h/k}`.
    pub fn saito_dual(&self, h: u64) -> Result<Self> {
        let mut pairs = Vec::with_capacity(self.chi.len());
        for (m, e) in self.iter() {
            if h % m != 0 {
                return Err(Error::NonDivisorPeriod { period: m, level: h });
            }
            pairs.push((h / m, -e));
        }
        Ok(FrameShape::from_pairs(pairs))
    }

    /// Saito dual at the smallest admissible level, the lcm of the support.
    pub fn saito_dual_auto(&self) -> Self {
        self.saito_dual(self.level())
            .expect("every period divides the lcm of the support")
    }

    /// `Lambda_k = sum_{m | k} m * chi_m`, the sum of k-th powers of the roots
    /// (with multiplicity, poles counted negatively).
    pub fn newton_sum(&self, k: u64) -> i64 {
        assert!(k >= 1);
        self.iter()
            .filter(|&(m, _)| k % m == 0)
            .map(|(m, e)| m as i64 * e)
            .sum()
    }

    /// Inverts `Lambda_k = sum_{m | k} m chi_m` over the divisors of `d`.
    pub fn from_newton_sums(lambda: &BTreeMap<u64, i64>, d: u64) -> Result<Self> {
        let divs = divisors(d);
        for &k in &divs {
            if !lambda.contains_key(&k) {
                return Err(Error::MissingNewtonSum(k));
            }
        }
        let mut pairs = Vec::new();
        for &m in &divs {
            let s: i64 = divisors(m)
                .into_iter()
                .map(|j| mobius(m / j) * lambda[&j])
                .sum();
            if s % m as i64 != 0 {
                let g = gcd(s.unsigned_abs(), m) as i64;
                return Err(Error::NonIntegralExponent {
                    period: m,
                    numerator: s / g,
                    denominator: m as i64 / g,
                });
            }
            pairs.push((m, s / m as i64));
        }
        Ok(FrameShape::from_pairs(pairs))
    }

    /// Multiplicity `e_d = sum_{d | m} chi_m` of the cyclotomic polynomial
    /// `Phi_d`, for every `d` dividing a period. Zero entries are omitted.
    pub fn cyclotomic_multiplicities(&self) -> BTreeMap<u64, i64> {
        let mut e: BTreeMap<u64, i64> = BTreeMap::new();
        for (m, c) in self.iter() {
            for d in divisors(m) {
                *e.entry(d).or_insert(0) += c;
            }
        }
        e.retain(|_, v| *v != 0);
        e
    }

    /// Inverse of [`cyclotomic_multiplicities`](Self::cyclotomic_multiplicities):
    /// `chi_m = sum_{k >= 1} mu(k) e_{mk}`.
    pub fn from_cyclotomic_multiplicities(e: &BTreeMap<u64, i64>) -> Self {
        let mut candidates: Vec<u64> = e.keys().flat_map(|&d| divisors(d)).collect();
        candidates.sort_unstable();
        candidates.dedup();
        let pairs = candidates.into_iter().map(|m| {
            let chi = e
                .iter()
                .filter(|&(&j, _)| j % m == 0)
                .map(|(&j, &v)| mobius(j / m) * v)
                .sum();
            (m, chi)
        });
        FrameShape::from_pairs(pairs)
    }

    /// A shape is a polynomial iff no cyclotomic factor has negative multiplicity.
    pub fn is_polynomial(&self) -> bool {
        self.cyclotomic_multiplicities().values().all(|&v| v >= 0)
    }

    /// Taylor expansion at `t = 0` up to and including `t^order`.
    pub fn expand_series(&self, order: usize) -> PowerSeries {
        let mut s = PowerSeries::one(order);
        let c = s.coeffs_mut();
        for (m, e) in self.iter() {
            let m = m as usize;
            if m > order {
                continue;
            }
            if e > 0 {
                for _ in 0..e {
                    for i in (m..=order).rev() {
                        let prev = c[i - m].clone();
                        c[i] -= prev;
                    }
                }
            } else {
                for _ in 0..-e {
                    for i in m..=order {
                        let prev = c[i - m].clone();
                        c[i] += prev;
                    }
                }
            }
        }
        s
    }

    /// Exact quotient of the numerator by the denominator product.
    pub fn to_polynomial(&self) -> Result<IntPoly> {
        let mut num = IntPoly::one();
        let mut den = IntPoly::one();
        for (m, e) in self.iter() {
            let f = IntPoly::one_minus_t_pow(m as usize).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &f;
            } else {
                den = &den * &f;
            }
        }
        num.div_exact(&den).map_err(|_| Error::NotAPolynomial)
    }

    /// `prod (t^m - 1)^{chi_m}`, monic when the shape is a polynomial.
    pub fn to_monic_polynomial(&self) -> Result<IntPoly> {
        let p = self.to_polynomial()?;
        Ok(if self.total_exponent() % 2 == 0 { p } else { -p })
    }

    /// Writes `p` as `+- prod (1 - t^m)^{chi_m}` by trial division with the
    /// cyclotomic polynomials up to its degree.
    pub fn factor_cyclotomic(p: &IntPoly) -> Result<Self> {
        let deg = p.degree().ok_or(Error::NotCyclotomicProduct)?;
        let c0 = p.coeff(0);
        if c0 != BigInt::from(1) && c0 != BigInt::from(-1) {
            return Err(Error::NotCyclotomicProduct);
        }
        let mut cache = CyclotomicCache::default();
        let mut rest = p.clone();
        let mut mult = BTreeMap::new();
        for d in indices_with_totient_at_most(deg as u64) {
            if totient(d) as usize > rest.degree().unwrap_or(0) {
                continue;
            }
            let phi = cache.get(d);
            loop {
                if rest.degree().unwrap_or(0) < phi.degree().unwrap() {
                    break;
                }
                match rest.div_rem(phi) {
                    Ok((q, r)) if r.is_zero() => {
                        rest = q;
                        *mult.entry(d).or_insert(0) += 1;
                    }
                    _ => break,
                }
            }
        }
        if rest.degree() != Some(0) {
            return Err(Error::NotCyclotomicProduct);
        }
        Ok(FrameShape::from_cyclotomic_multiplicities(&mult))
    }

    /// Sum of the k-th powers of all roots, computed numerically from the
    /// cyclotomic factorization.
    pub fn roots_power_sum_numeric(&self, k: u64) -> Result<Complex64> {
        let e = self.cyclotomic_multiplicities();
        if e.values().any(|&v| v < 0) {
            return Err(Error::NotAPolynomial);
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (&d, &mult) in &e {
            let mut s = Complex64::new(0.0, 0.0);
            for j in (1..=d).filter(|&j| gcd(j, d) == 1) {
                let angle = 2.0 * PI * ((j * k) % d) as f64 / d as f64;
                s += Complex64::from_polar(1.0, angle);
            }
            total += s * mult as f64;
        }
        Ok(total)
    }

    /// Evaluates the rational function at a complex point.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.iter().fold(Complex64::new(1.0, 0.0), |acc, (m, e)| {
            acc * (Complex64::new(1.0, 0.0) - t.powu(m as u32)).powi(e as i32)
        })
    }

    /// JSON value `{"chi": [[m, chi_m], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("frame shape serializes")
    }
}

impl Mul for &FrameShape {
    type Output = FrameShape;
    fn mul(self, rhs: &FrameShape) -> FrameShape {
        FrameShape::mul(self, rhs)
    }
}

impl fmt::Display for FrameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1^0");
        }
        let write_product = |f: &mut fmt::Formatter<'_>, positive: bool| -> fmt::Result {
            let mut first = true;
            for (m, e) in self.iter().filter(|&(_, e)| (e > 0) == positive) {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                match e.abs() {
                    1 => write!(f, "{m}")?,
                    a => write!(f, "{m}^{a}")?,
                }
            }
            if first {
                write!(f, "1^0")?;
            }
            Ok(())
        };
        write_product(f, true)?;
        if self.chi.values().any(|&e| e < 0) {
            write!(f, "/")?;
            write_product(f, false)?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<u64> {
        let start = self.pos;
        match self.peek() {
            Some(b'1'..=b'9') => {}
            Some(c) => return Err(self.error(format!("expected a positive integer, found {:?}", c as char))),
            None => return Err(self.error("expected a positive integer, found end of input")),
        }
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        digits.parse().map_err(|_| Error::Parse {
            position: start,
            message: "integer out of range".into(),
        })
    }

    /// Returns `None` for the empty product `1^0`.
    fn factor(&mut self) -> Result<Option<(u64, i64)>> {
        let start = self.pos;
        let base = self.int()?;
        if self.peek() != Some(b'^') {
            return Ok(Some((base, 1)));
        }
        self.pos += 1;
        if base == 1 && self.peek() == Some(b'0') {
            self.pos += 1;
            return Ok(None);
        }
        let exp = self.int()?;
        let exp = i64::try_from(exp).map_err(|_| Error::Parse {
            position: start,
            message: "exponent out of range".into(),
        })?;
        Ok(Some((base, exp)))
    }

    fn product(&mut self, sign: i64, allow_empty: bool, out: &mut Vec<(u64, i64)>) -> Result<()> {
        let start = self.pos;
        match self.factor()? {
            None if allow_empty => return Ok(()),
            None => {
                return Err(Error::Parse {
                    position: start,
                    message: "'1^0' is only allowed as the whole numerator".into(),
                })
            }
            Some((m, e)) => out.push((m, sign * e)),
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let start = self.pos;
            match self.factor()? {
                Some((m, e)) => out.push((m, sign * e)),
                None => {
                    return Err(Error::Parse {
                        position: start,
                        message: "'1^0' is only allowed as the whole numerator".into(),
                    })
                }
            }
        }
        Ok(())
    }
}

impl FromStr for FrameShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            text: s.as_bytes(),
            pos: 0,
        };
        let mut pairs = Vec::new();
        p.product(1, true, &mut pairs)?;
        if p.peek() == Some(b'/') {
            p.pos += 1;
            p.product(-1, false, &mut pairs)?;
        }
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected character {:?}", c as char)));
        }
        Ok(FrameShape::from_pairs(pairs))
    }
}

/// `{"chi": [[m, chi_m], ...]}` sorted by ascending `m`.
impl Serialize for FrameShape {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Pairs<'a>(&'a BTreeMap<u64, i64>);
        impl Serialize for Pairs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (m, e) in self.0 {
                    seq.serialize_element(&(m, e))?;
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("FrameShape", 1)?;
        st.serialize_field("chi", &Pairs(&self.chi))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FrameShape {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            chi: Vec<(u64, i64)>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.chi.iter().any(|&(m, _)| m == 0) {
            return Err(serde::de::Error::custom("frame shape period must be positive"));
        }
        Ok(FrameShape::from_pairs(raw.chi))
    }
}
