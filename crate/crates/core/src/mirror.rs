//! Hypergeometric series attached to a geometry: `F(w, q)`, the tower
//! `I_p(q) = M^p F(0, q)`, the mirror-map exponent `J(q)`, the disk seed
//! `tau(q)` and the inverse mirror map `q(Q)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::FactorialTable;
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::series::{
    invert_unit_relation, rat, Coefficient, HalfSeries, Jet, JetSeries, QSeries, Series,
    SeriesError,
};

/// `F(w, q) = sum_d q^d prod_k prod_{r=1}^{a_k d} (a_k w + r) / prod_{r=1}^d (w + r)^n`,
/// with each coefficient kept as a w-jet of order `jet_order`.
pub fn hypergeom_f(g: &Geometry, jet_order: usize, trunc: usize) -> JetSeries {
    let one = Jet::constant(BigRational::one(), jet_order);
    let mut coeffs = Vec::with_capacity(trunc + 1);
    coeffs.push(one.clone());
    let mut current = one;
    for d in 1..=trunc as u32 {
        for &a in g.degrees() {
            for r in a * (d - 1) + 1..=a * d {
                current = current * Jet::linear(rat(r.into()), rat(a.into()));
            }
        }
        let w_plus_d = Jet::new(vec![rat(d.into()), BigRational::one()], jet_order);
        let inv = w_plus_d.inverse().expect("w + d is a unit for d >= 1");
        for _ in 0..g.n() {
            current = current * inv.clone();
        }
        coeffs.push(current.clone());
    }
    JetSeries::new(Series::new(coeffs), jet_order)
}

/// `M H = (1 + (q/w) d/dq)(H / H(0, q))`. Lowers the jet order by one.
pub fn apply_m(h: &JetSeries) -> Result<JetSeries> {
    let j = h.jet_order();
    if j == 0 {
        return Err(Error::OutOfRange(
            "the M operator needs jet order at least 1".into(),
        ));
    }
    let base = JetSeries::from_q_series(&h.at_w0(), j);
    let normalized = h.checked_div(&base)?;
    let derivative = normalized.q_log_derivative();
    let shifted = derivative.div_w().map_err(|e| match e {
        SeriesError::NotDivisibleByW => Error::MDivisibility,
        other => other.into(),
    })?;
    Ok(normalized.with_jet_order(j - 1).add(&shifted))
}

/// `I_0, ..., I_p` through `q^trunc`.
pub fn i_tower(g: &Geometry, p: usize, trunc: usize) -> Result<Vec<QSeries>> {
    let mut h = hypergeom_f(g, p, trunc);
    let mut out = Vec::with_capacity(p + 1);
    out.push(h.at_w0());
    for _ in 0..p {
        h = apply_m(&h)?;
        out.push(h.at_w0());
    }
    Ok(out)
}

/// `I_p(q) = M^p F(0, q)` for `0 <= p <= p_max`.
pub fn i_series(g: &Geometry, p: i64, trunc: usize) -> Result<QSeries> {
    let p =
        usize::try_from(p).map_err(|_| Error::OutOfRange(format!("I_p needs p >= 0, got {p}")))?;
    if p > g.p_max() as usize {
        return Err(Error::OutOfRange(format!(
            "I_p needs p <= p_max = {}, got {p}",
            g.p_max()
        )));
    }
    Ok(i_tower(g, p, trunc)?.pop().expect("tower is non-empty"))
}

/// The mirror-map exponent
/// `J(q) = (1/I_0) sum_{d>=1} q^d prod_k (a_k d)! / (d!)^n * sum_k sum_{r=d+1}^{a_k d} a_k / r`.
pub fn j_series(g: &Geometry, trunc: usize) -> Result<QSeries> {
    let mut table = FactorialTable::new();
    let mut coeffs = vec![BigRational::zero()];
    for d in 1..=trunc as u32 {
        let mut num = BigInt::one();
        for &a in g.degrees() {
            num *= table.factorial((a * d) as usize);
        }
        let den = num_traits::pow(table.factorial(d as usize).clone(), g.n() as usize);
        let mut harmonic = BigRational::zero();
        for &a in g.degrees() {
            for r in d + 1..=a * d {
                harmonic += BigRational::new(BigInt::from(a), BigInt::from(r));
            }
        }
        coeffs.push(BigRational::new(num, den) * harmonic);
    }
    let i0 = hypergeom_f(g, 0, trunc).at_w0();
    Ok(QSeries::new(coeffs).checked_div(&i0)?)
}

/// `tau(q) = 2 sum_{d odd} q^{d/2} prod_k (a_k d)!! / (d!!)^n` through `u^trunc_u`.
pub fn tau_series(g: &Geometry, trunc_u: usize) -> HalfSeries {
    let mut table = FactorialTable::new();
    let mut coeffs = vec![BigRational::zero(); trunc_u + 1];
    for d in (1..=trunc_u).step_by(2) {
        let mut num = BigInt::from(2);
        for &a in g.degrees() {
            num *= table.odd_double_factorial(a as usize * d);
        }
        let den = num_traits::pow(table.odd_double_factorial(d).clone(), g.n() as usize);
        coeffs[d] = BigRational::new(num, den);
    }
    HalfSeries::new(coeffs)
}

/// Inverts `Q = q e^{J(q)}` for an arbitrary exponent series `J`.
pub fn q_of_big_q_from_j(j: &QSeries) -> Result<QSeries> {
    Ok(invert_unit_relation(&j.exp()?)?)
}

/// The inverse mirror map `q(Q)` through `Q^trunc`.
pub fn mirror_q_of_big_q(g: &Geometry, trunc: usize) -> Result<QSeries> {
    q_of_big_q_from_j(&j_series(g, trunc)?)
}

/// All series of one geometry at a common truncation.
#[derive(Clone, Debug)]
pub struct MirrorSeries {
    pub i: Vec<QSeries>,
    pub j: QSeries,
    pub tau: HalfSeries,
    pub q_of_big_q: QSeries,
}

impl MirrorSeries {
    pub fn compute(g: &Geometry, trunc_q: usize, trunc_u: usize) -> Result<Self> {
        let i = i_tower(g, g.p_max() as usize, trunc_q)?;
        let j = j_series(g, trunc_q)?;
        let q_of_big_q = q_of_big_q_from_j(&j)?;
        Ok(Self {
            i,
            j,
            tau: tau_series(g, trunc_u),
            q_of_big_q,
        })
    }
}
