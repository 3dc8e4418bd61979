//! Simply-laced root systems, McKay matrices and the McKay-correspondence
//! route to Poincaré series of binary polyhedral groups.
//!
//! Vertex 0 is always the affine vertex. Numbering of the extended diagrams:
//!
//! * `A_l`: a cycle; for odd `l = 2n-1` the two colour classes are
//!   `0..n` and `n..2n`, walked as `0, n, 1, n+1, ..., n-1, 2n-1`.
//! * `D_l`: leaves 0 and 1 on vertex 4, a chain `4..=l`, leaves 2 and 3 on `l`.
//! * `E6`: chain `1..=5`, vertex 6 on 3, vertex 0 on 6.
//! * `E7`: chain `0..=6`, vertex 7 on 3.
//! * `E8`: chain `0..=7`, vertex 8 on 5.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frameshape::FrameShape;
use crate::poly::IntPoly;
use crate::series::PowerSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootLabel {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl RootLabel {
    pub fn rank(self) -> usize {
        match self {
            RootLabel::A(l) | RootLabel::D(l) => l,
            RootLabel::E6 => 6,
            RootLabel::E7 => 7,
            RootLabel::E8 => 8,
        }
    }

    /// `A_{2n}`, the cyclic groups of odd order.
    pub fn is_a_even(self) -> bool {
        matches!(self, RootLabel::A(l) if l % 2 == 0)
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLabel::A(l) => write!(f, "A{l}"),
            RootLabel::D(l) => write!(f, "D{l}"),
            RootLabel::E6 => write!(f, "E6"),
            RootLabel::E7 => write!(f, "E7"),
            RootLabel::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for RootLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedLabel(s.to_string());
        let (head, rank) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let rank = rank.trim_start_matches('_');
        let l: usize = rank.parse().map_err(|_| bad())?;
        match (head.trim_end_matches('_'), l) {
            ("A", l) if l >= 1 => Ok(RootLabel::A(l)),
            ("D", l) if l >= 4 => Ok(RootLabel::D(l)),
            ("E", 6) => Ok(RootLabel::E6),
            ("E", 7) => Ok(RootLabel::E7),
            ("E", 8) => Ok(RootLabel::E8),
            _ => Err(bad()),
        }
    }
}

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystemSpec {
    pub label: RootLabel,
    pub rank: usize,
    /// `l x l`, rows and columns `1..=l` of the affine matrix.
    pub cartan: IntMatrix,
    /// `(l+1) x (l+1)`
    pub affine_cartan: IntMatrix,
    /// `B = 2I - C`
    pub mckay: IntMatrix,
}

fn edges(label: RootLabel) -> Vec<(usize, usize)> {
    let chain = |from: usize, to: usize| (from..to).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match label {
        RootLabel::A(l) => {
            let order: Vec<usize> = if l % 2 == 1 {
                let n = l.div_ceil(2);
                (0..n).flat_map(|i| [i, n + i]).collect()
            } else {
                (0..=l).collect()
            };
            let k = order.len();
            (0..k).map(|i| (order[i], order[(i + 1) % k])).collect()
        }
        RootLabel::D(l) => {
            let mut e = vec![(0, 4), (1, 4), (2, l), (3, l)];
            e.extend(chain(4, l));
            e
        }
        RootLabel::E6 => {
            let mut e = chain(1, 5);
            e.extend([(3, 6), (6, 0)]);
            e
        }
        RootLabel::E7 => {
            let mut e = chain(0, 6);
            e.push((3, 7));
            e
        }
        RootLabel::E8 => {
            let mut e = chain(0, 7);
            e.push((5, 8));
            e
        }
    }
}

/// Builds the Cartan and McKay matrices from the extended Dynkin diagram.
pub fn build_root_system(label: RootLabel) -> Result<RootSystemSpec> {
    match label {
        RootLabel::A(0) => return Err(Error::UnsupportedLabel(label.to_string())),
        RootLabel::D(l) if l < 4 => return Err(Error::UnsupportedLabel(label.to_string())),
        _ => {}
    }
    let l = label.rank();
    let mut mckay = vec![vec![0i64; l + 1]; l + 1];
    for (a, b) in edges(label) {
        // the two edges of the A_1 "cycle" give the double bond
        mckay[a][b] += 1;
        mckay[b][a] += 1;
    }
    let affine_cartan: IntMatrix = (0..=l)
        .map(|i| (0..=l).map(|j| 2 * i64::from(i == j) - mckay[i][j]).collect())
        .collect();
    let cartan = affine_cartan[1..].iter().map(|row| row[1..].to_vec()).collect();
    Ok(RootSystemSpec {
        label,
        rank: l,
        cartan,
        affine_cartan,
        mckay,
    })
}

/// Fraction-free (Bareiss) determinant over `Z[t]`.
pub fn det_poly(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss step is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// `det(tI - A)`
pub fn charpoly_int(a: &IntMatrix) -> IntPoly {
    let n = a.len();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = IntPoly::constant(BigInt::from(-a[i][j]));
                    if i == j {
                        &c + &IntPoly::from_i64(&[0, 1])
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    det_poly(m)
}

/// Simple reflection `s_i(alpha_j) = alpha_j - C_{ji} alpha_i` on the root lattice.
pub fn reflection(cartan: &IntMatrix, i: usize) -> IntMatrix {
    let l = cartan.len();
    let mut s: IntMatrix = (0..l).map(|r| (0..l).map(|c| i64::from(r == c)).collect()).collect();
    for j in 0..l {
        s[i][j] -= cartan[j][i];
    }
    s
}

/// Product of the simple reflections in the given order (0-based indices
/// into the finite Cartan matrix).
pub fn coxeter_element(spec: &RootSystemSpec, order: &[usize]) -> IntMatrix {
    let l = spec.rank;
    let mut c: IntMatrix = (0..l).map(|r| (0..l).map(|k| i64::from(r == k)).collect()).collect();
    for &i in order {
        c = mat_mul(&c, &reflection(&spec.cartan, i));
    }
    c
}

/// Characteristic polynomial of the Coxeter element `s_1 ... s_l`.
pub fn coxeter_charpoly(spec: &RootSystemSpec) -> Result<FrameShape> {
    let order: Vec<usize> = (0..spec.rank).collect();
    coxeter_charpoly_ordered(spec, &order)
}

pub fn coxeter_charpoly_ordered(spec: &RootSystemSpec, order: &[usize]) -> Result<FrameShape> {
    FrameShape::factor_cyclotomic(&charpoly_int(&coxeter_element(spec, order)))
}

/// `M(t) = (1 + t^2) I - t B`
pub fn mckay_pencil(spec: &RootSystemSpec) -> Vec<Vec<IntPoly>> {
    let n = spec.rank + 1;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let b = -spec.mckay[i][j];
                    if i == j {
                        IntPoly::from_i64(&[1, b, 1])
                    } else {
                        IntPoly::from_i64(&[0, b])
                    }
                })
                .collect()
        })
        .collect()
}

/// `det M(t)`
pub fn det_m(spec: &RootSystemSpec) -> IntPoly {
    det_poly(mckay_pencil(spec))
}

/// Characteristic polynomial of the affine Coxeter element, defined through
/// `det M(t) = det(t^2 I - c_a)`.
pub fn affine_coxeter_charpoly(spec: &RootSystemSpec) -> Result<FrameShape> {
    let d = det_m(spec);
    if let Some(k) = d.first_odd_term() {
        return Err(Error::OddPowerPresent(k));
    }
    FrameShape::factor_cyclotomic(&d.even_part_in_square())
}

/// `v_0 .. v_N` with `v_0 = e_0` and `v_{m+1} = B v_m - v_{m-1}`.
pub fn pg_series(spec: &RootSystemSpec, n: usize) -> Vec<Vec<i64>> {
    let size = spec.rank + 1;
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
    let mut prev = vec![0i64; size];
    let mut cur = vec![0i64; size];
    cur[0] = 1;
    out.push(cur.clone());
    for _ in 0..n {
        let next: Vec<i64> = (0..size)
            .map(|i| (0..size).map(|j| spec.mckay[i][j] * cur[j]).sum::<i64>() - prev[i])
            .collect();
        prev = std::mem::replace(&mut cur, next);
        out.push(cur.clone());
    }
    out
}

/// `(det M_0(t), det M(t))` where `M_0` has column 0 replaced by `e_0`.
pub fn pg0_closed_form(spec: &RootSystemSpec) -> (IntPoly, IntPoly) {
    let m = mckay_pencil(spec);
    let mut m0 = m.clone();
    for (i, row) in m0.iter_mut().enumerate() {
        row[0] = if i == 0 { IntPoly::one() } else { IntPoly::zero() };
    }
    (det_poly(m0), det_poly(m))
}

/// Solves `C x = 0` with `x_0 = 1`: the dimensions of the irreducible
/// representations in McKay order.
pub fn kac_dims(spec: &RootSystemSpec) -> Result<Vec<u64>> {
    let l = spec.rank;
    // C_fin y = -C[1.., 0]
    let mut aug: Vec<Vec<BigRational>> = (0..l)
        .map(|i| {
            let mut row: Vec<BigRational> = spec.cartan[i]
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(-spec.affine_cartan[i + 1][0])));
            row
        })
        .collect();
    for col in 0..l {
        let pivot = (col..l).find(|&r| !aug[r][col].is_zero()).ok_or(Error::NonIntegralDims)?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..l {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (x, y) in aug[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    let mut dims = vec![1u64];
    for row in &aug {
        let v = &row[l];
        if !v.is_integer() || !v.is_positive() {
            return Err(Error::NonIntegralDims);
        }
        dims.push(v.to_integer().to_u64().ok_or(Error::NonIntegralDims)?);
    }
    // the affine row must be satisfied as well
    let row0: i64 = (0..=l).map(|j| spec.affine_cartan[0][j] * dims[j] as i64).sum();
    if row0 != 0 {
        return Err(Error::NonIntegralDims);
    }
    Ok(dims)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McKayReport {
    pub label: RootLabel,
    pub order: usize,
    pub nu: usize,
    /// `det M_0 / det M` agrees with component 0 of the recursion.
    pub closed_form_matches_recursion: bool,
    /// Component 0 of the recursion agrees with `p_A(t^nu)`.
    pub recursion_matches_poincare: bool,
    /// `None` for `A_{2n}`, where the identities do not apply.
    pub coxeter_is_phi: Option<bool>,
    pub affine_is_psi: Option<bool>,
    pub quotient_is_p: Option<bool>,
    /// For `A_{2n}`: `saito_dual(phi_A, d) != phi_A`.
    pub phi_not_self_dual: Option<bool>,
}

impl McKayReport {
    pub fn holds(&self) -> bool {
        self.closed_form_matches_recursion
            && self.recursion_matches_poincare
            && self.coxeter_is_phi.unwrap_or(true)
            && self.affine_is_psi.unwrap_or(true)
            && self.quotient_is_p.unwrap_or(true)
            && self.phi_not_self_dual.unwrap_or(true)
    }
}

/// The Kleinian data a root system is checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleinianData {
    pub weights: [u64; 3],
    pub degree: u64,
    pub p: FrameShape,
    pub psi: FrameShape,
    pub phi: FrameShape,
}

pub fn mckay_verify(spec: &RootSystemSpec, data: &KleinianData, order: usize) -> Result<McKayReport> {
    let r = data.degree as i64 - data.weights.iter().sum::<u64>() as i64;
    let nu = match r {
        -1 => 2,
        -2 => 1,
        _ => {
            return Err(Error::InvalidGeometry(format!(
                "exponent R = {r} is not Kleinian"
            )))
        }
    };
    let (num, den) = pg0_closed_form(spec);
    let closed = PowerSeries::from_poly(&num, order).div(&PowerSeries::from_poly(&den, order))?;
    let recursion: Vec<BigInt> = pg_series(spec, order).iter().map(|v| BigInt::from(v[0])).collect();
    let recursion = PowerSeries::from_coeffs(recursion, order);
    let poincare = data.p.expand_series(order).compose_power(nu);

    let (coxeter_is_phi, affine_is_psi, quotient_is_p, phi_not_self_dual) = if spec.label.is_a_even() {
        let dual = data.phi.saito_dual(data.degree)?;
        (None, None, None, Some(dual != data.phi))
    } else {
        let cox = coxeter_charpoly(spec)?;
        let aff = affine_coxeter_charpoly(spec)?;
        (
            Some(cox == data.phi),
            Some(aff == data.psi),
            Some(cox.div(&aff) == data.p),
            None,
        )
    };
    Ok(McKayReport {
        label: spec.label,
        order,
        nu,
        closed_form_matches_recursion: closed == recursion,
        recursion_matches_poincare: recursion == poincare,
        coxeter_is_phi,
        affine_is_psi,
        quotient_is_p,
        phi_not_self_dual,
    })
}
