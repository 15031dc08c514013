//! The closed nested-derivative formula for the one-point disk potential,
//! its image under the mirror map, and extraction of `N^disk_{1,d}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::geometry::Geometry;
use crate::mirror::{i_tower, mirror_q_of_big_q, tau_series};
use crate::series::{substitute_half, HalfSeries, QSeries};

/// q-truncation needed for a q-series multiplying a u-series through `u^trunc_u`.
pub(crate) fn q_trunc_for(trunc_u: usize) -> usize {
    trunc_u / 2
}

/// q-truncation of the inverse mirror map needed to substitute through `u^trunc_u`.
pub(crate) fn mirror_trunc_for(trunc_u: usize) -> usize {
    trunc_u.div_ceil(2)
}

pub(crate) fn two_pow(k: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(2).pow(k))
}

/// `2^{p_max} (1/I_s) q d/dq { (1/I_{s-1}) q d/dq { ... q d/dq { tau / I_0 } } }`
/// with `s` derivatives, read in q-coordinates.
pub fn nested_potential(g: &Geometry, s: u32, trunc_u: usize) -> Result<HalfSeries> {
    let i = i_tower(g, s as usize, q_trunc_for(trunc_u))?;
    nested_from_tower(g, s, &tau_series(g, trunc_u), &i)
}

pub(crate) fn nested_from_tower(
    g: &Geometry,
    s: u32,
    tau: &HalfSeries,
    i: &[QSeries],
) -> Result<HalfSeries> {
    let mut acc = tau.mul_q(&i[0].inverse()?);
    for ij in &i[1..=s as usize] {
        acc = acc.q_log_derivative().mul_q(&ij.inverse()?);
    }
    Ok(acc.scale(&two_pow(g.p_max())))
}

/// The right-hand side of the disk mirror formula in q-coordinates:
/// [`nested_potential`] at full depth `p_max` (just `tau / I_0` when
/// `p_max = 0`).
pub fn nested_disk_potential_q(g: &Geometry, trunc_u: usize) -> Result<HalfSeries> {
    nested_potential(g, g.p_max(), trunc_u)
}

/// `Z^disk_1` in both coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskPotential {
    pub geometry: Geometry,
    /// Series in `u = q^{1/2}`.
    pub in_q: HalfSeries,
    /// Series in `U = Q^{1/2}`.
    pub in_big_q: HalfSeries,
    pub trunc_u: usize,
}

impl DiskPotential {
    /// Pushes a q-coordinate potential through the mirror map `q(Q)`.
    pub fn from_q_potential(g: &Geometry, in_q: HalfSeries, q_of_big_q: &QSeries) -> Result<Self> {
        let in_big_q = substitute_half(&in_q, q_of_big_q)?;
        let trunc_u = in_big_q.trunc_u();
        Ok(Self {
            geometry: g.clone(),
            in_q: in_q.truncate(trunc_u),
            in_big_q,
            trunc_u,
        })
    }

    /// `d -> N^disk_{1,d}` for odd `d <= trunc_u`.
    pub fn invariants(&self) -> BTreeMap<u32, BigRational> {
        self.in_big_q
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .step_by(2)
            .map(|(d, c)| (d as u32, c.clone()))
            .collect()
    }
}

/// Evaluates the closed formula and changes variables to `Q`.
pub fn disk_potential_big_q(g: &Geometry, trunc_u: usize) -> Result<DiskPotential> {
    let in_q = nested_disk_potential_q(g, trunc_u)?;
    let q_of_big_q = mirror_q_of_big_q(g, mirror_trunc_for(trunc_u))?;
    DiskPotential::from_q_potential(g, in_q, &q_of_big_q)
}

pub fn extract_invariants(dp: &DiskPotential) -> BTreeMap<u32, BigRational> {
    dp.invariants()
}

/// Convenience: `N^disk_{1,d}` for odd `d <= max_degree` from the closed formula.
pub fn disk_invariants(g: &Geometry, max_degree: usize) -> Result<BTreeMap<u32, BigRational>> {
    Ok(disk_potential_big_q(g, max_degree)?.invariants())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::q_of_big_q_from_j;
    use crate::series::rat;

    #[test]
    fn cubic_is_tau_over_i0() {
        let g = Geometry::new(&[3]).unwrap();
        let z = nested_disk_potential_q(&g, 7).unwrap();
        let i0 = crate::mirror::i_series(&g, 0, 3).unwrap();
        assert_eq!(z, tau_series(&g, 7).mul_q(&i0.inverse().unwrap()));
        assert_eq!(z.coeff(1), Some(&rat(6)));
    }

    #[test]
    fn quintic_leading_coefficient() {
        let g = Geometry::new(&[5]).unwrap();
        let z = nested_disk_potential_q(&g, 9).unwrap();
        assert_eq!(z.coeff(1), Some(&rat(30)));
        assert!(z.is_odd_supported());
        assert_eq!(z.trunc_u(), 9);
    }

    #[test]
    fn quintic_and_cubic_invariants() {
        let n5 = disk_invariants(&Geometry::new(&[5]).unwrap(), 9).unwrap();
        assert_eq!(n5[&1], rat(30));
        assert_eq!(n5.keys().copied().collect::<Vec<_>>(), vec![1, 3, 5, 7, 9]);
        let n3 = disk_invariants(&Geometry::new(&[3]).unwrap(), 1).unwrap();
        assert_eq!(n3[&1], rat(6));
    }

    #[test]
    fn identity_mirror_map_keeps_potential() {
        let g = Geometry::new(&[5]).unwrap();
        let in_q = nested_disk_potential_q(&g, 7).unwrap();
        let id = q_of_big_q_from_j(&QSeries::zero(4)).unwrap();
        let dp = DiskPotential::from_q_potential(&g, in_q.clone(), &id).unwrap();
        assert_eq!(dp.in_big_q, in_q);
    }

    #[test]
    fn pipeline_is_linear_in_tau() {
        let g = Geometry::new(&[7]).unwrap();
        let i = i_tower(&g, 2, 4).unwrap();
        let tau = tau_series(&g, 9);
        let once = nested_from_tower(&g, 2, &tau, &i).unwrap();
        let twice = nested_from_tower(&g, 2, &tau.scale(&rat(2)), &i).unwrap();
        assert_eq!(twice, once.scale(&rat(2)));
    }
}
