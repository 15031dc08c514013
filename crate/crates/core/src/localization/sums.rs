//! Fixed-point sums over `(i, gamma)` and their residue-theorem counterpart.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::edge::{disk_edge_factor, ds_y0_chain, EdgeFactorFn};
use super::weights::{alpha_from_lambda, ensure_valid, AlphaVector, WeightAssignment};
use crate::combinat::FactorialTable;
use crate::disk::{mirror_trunc_for, q_trunc_for, two_pow, DiskPotential};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::mirror::{i_tower, mirror_q_of_big_q};
use crate::series::{Coefficient, HalfSeries, Jet, QSeries};

/// One `(i, gamma)` contribution: `hbar = 2 alpha_i / gamma` and the edge
/// factor `D_{1,i,gamma}`. `i` is 0-based and never addresses the zero weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointTerm {
    pub i: usize,
    pub gamma: u32,
    pub hbar: BigRational,
    pub edge: BigRational,
    /// `D^s Y_0(alpha_i, hbar, q)` for `s = 0..=p_max`, through
    /// `q^{(trunc_u - gamma)/2}`.
    pub chain: Vec<QSeries>,
}

/// Evaluates fixed-point sums for one geometry, weight assignment and
/// truncation, sharing the `I_p` tower and edge factors between calls.
#[derive(Clone, Debug)]
pub struct FixedPointEvaluator {
    geometry: Geometry,
    alpha: AlphaVector,
    trunc_u: usize,
    tower: Vec<QSeries>,
    terms: Vec<FixedPointTerm>,
}

impl FixedPointEvaluator {
    pub fn new(g: &Geometry, w: &WeightAssignment, trunc_u: usize) -> Result<Self> {
        Self::with_edge_factor(g, w, trunc_u, disk_edge_factor)
    }

    /// As [`FixedPointEvaluator::new`] but with a substitute edge factor.
    pub fn with_edge_factor(
        g: &Geometry,
        w: &WeightAssignment,
        trunc_u: usize,
        edge: EdgeFactorFn,
    ) -> Result<Self> {
        let alpha = alpha_from_lambda(g.n(), w)?;
        let fixed_points = 2 * g.m() as usize;
        ensure_valid(&alpha, fixed_points, trunc_u)?;
        let tower = i_tower(g, g.p_max() as usize, q_trunc_for(trunc_u))?;
        let mut terms = Vec::new();
        for i in 0..fixed_points {
            for gamma in (1..=trunc_u as u32).step_by(2) {
                let ai = alpha.get(i);
                let hbar = ai * BigRational::new(BigInt::from(2), BigInt::from(gamma));
                let trunc_q = (trunc_u - gamma as usize) / 2;
                let chain = ds_y0_chain(g, g.p_max(), ai, &hbar, &alpha, trunc_q, &tower)?;
                let edge = edge(g, i, gamma, &alpha)?;
                terms.push(FixedPointTerm {
                    i,
                    gamma,
                    hbar,
                    edge,
                    chain,
                });
            }
        }
        Ok(Self {
            geometry: g.clone(),
            alpha,
            trunc_u,
            tower,
            terms,
        })
    }

    pub fn terms(&self) -> &[FixedPointTerm] {
        &self.terms
    }

    pub fn alpha(&self) -> &AlphaVector {
        &self.alpha
    }

    pub fn tower(&self) -> &[QSeries] {
        &self.tower
    }

    /// `sum_{i, gamma odd} q^{gamma/2} D_{1,i,gamma} alpha_i^{-l} hbar^p
    ///   D^s Y_0(alpha_i, hbar, q) |_{hbar = 2 alpha_i / gamma}` through `u^trunc_u`.
    pub fn sum(&self, p: u32, s: u32) -> Result<HalfSeries> {
        let g = &self.geometry;
        if p + s > g.p_max() {
            return Err(Error::OutOfRange(format!(
                "fixed-point sum needs p + s <= p_max = {}, got p={p}, s={s}",
                g.p_max()
            )));
        }
        let mut out = HalfSeries::zero(self.trunc_u);
        for term in &self.terms {
            let ai = self.alpha.get(term.i);
            let series = &term.chain[s as usize];
            let ai_pow_l: BigRational = num_traits::pow::Pow::pow(ai, g.l());
            let hbar_p: BigRational = num_traits::pow::Pow::pow(&term.hbar, p);
            let factor = &term.edge / ai_pow_l * hbar_p;
            for (k, c) in series.coeffs().iter().enumerate() {
                out.add_at(term.gamma as usize + 2 * k, &(c * &factor));
            }
        }
        Ok(out)
    }
}

/// One-shot [`FixedPointEvaluator::sum`].
pub fn fixed_point_sum(
    g: &Geometry,
    p: u32,
    s: u32,
    w: &WeightAssignment,
    trunc_u: usize,
) -> Result<HalfSeries> {
    FixedPointEvaluator::new(g, w, trunc_u)?.sum(p, s)
}

/// `2^p sum_{t odd} q^{t/2} Res_{w=0} [ w^{p_max - 1 - p} prod_k (a_k t)!!
///   / prod_k prod_{s odd <= t} (s - alpha_k w) ]`.
///
/// The residue is the coefficient of `w^{p - p_max}` in the expansion of
/// `prod 1/(s - alpha_k w)` as geometric series in `w`; it vanishes for
/// `p < p_max`.
pub fn residue_oracle(
    g: &Geometry,
    p: u32,
    trunc_u: usize,
    alpha: &AlphaVector,
) -> Result<HalfSeries> {
    if p > g.p_max() {
        return Err(Error::OutOfRange(format!(
            "residue oracle implemented for p <= p_max = {}, got {p}",
            g.p_max()
        )));
    }
    let mut out = HalfSeries::zero(trunc_u);
    if p < g.p_max() {
        // w^{p_max - 1 - p} times a series regular at 0: no w^{-1} term
        return Ok(out);
    }
    let order = (p - g.p_max()) as usize;
    let mut table = FactorialTable::new();
    for t in (1..=trunc_u).step_by(2) {
        let mut expansion = Jet::constant(BigRational::one(), order);
        for s in (1..=t).step_by(2) {
            let s_q = BigRational::from_integer(BigInt::from(s));
            for ak in alpha.alphas() {
                let factor = Jet::new(vec![s_q.clone(), -ak], order);
                expansion = expansion * factor.inverse().expect("s - alpha w is a unit");
            }
        }
        let mut num = BigInt::one();
        for &a in g.degrees() {
            num *= table.odd_double_factorial(a as usize * t);
        }
        let residue = expansion.coeff(order) * BigRational::from_integer(num);
        if !residue.is_zero() {
            out.add_at(t, &(residue * two_pow(p)));
        }
    }
    Ok(out)
}

/// `2 * sum(0, p_max)`: the localization side of the disk potential, in
/// q-coordinates.
pub fn localization_potential_q(
    g: &Geometry,
    w: &WeightAssignment,
    trunc_u: usize,
) -> Result<HalfSeries> {
    Ok(fixed_point_sum(g, 0, g.p_max(), w, trunc_u)?.scale(&BigRational::from_integer(2.into())))
}

/// `N^disk_{1,d}` computed from the localization sum and the mirror map.
pub fn localization_invariants(
    g: &Geometry,
    w: &WeightAssignment,
    trunc_u: usize,
) -> Result<BTreeMap<u32, BigRational>> {
    let in_q = localization_potential_q(g, w, trunc_u)?;
    let q_of_big_q = mirror_q_of_big_q(g, mirror_trunc_for(trunc_u))?;
    Ok(DiskPotential::from_q_potential(g, in_q, &q_of_big_q)?.invariants())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::tau_series;
    use crate::series::rat;

    fn quintic() -> (Geometry, WeightAssignment) {
        (
            Geometry::new(&[5]).unwrap(),
            WeightAssignment::from_integers(&[2, 3]).unwrap(),
        )
    }

    #[test]
    fn terms_skip_zero_weight() {
        let (g, w) = quintic();
        let ev = FixedPointEvaluator::new(&g, &w, 5).unwrap();
        assert_eq!(ev.terms().len(), 4 * 3);
        assert!(ev.terms().iter().all(|t| t.i < 4));
    }

    #[test]
    fn quintic_leading_orders_by_hand() {
        let (g, w) = quintic();
        // u^1: sum_i D_{1,i,1} alpha_i^{-1} hbar^p with hbar = 2 alpha_i and Y_0 = alpha_i / I_0
        let ev = FixedPointEvaluator::new(&g, &w, 3).unwrap();
        let p0 = ev.sum(0, 0).unwrap();
        assert_eq!(p0.coeff(1), Some(&rat(0)));
        let p1 = ev.sum(1, 0).unwrap();
        assert_eq!(p1.coeff(1), Some(&rat(30)));
    }

    #[test]
    fn residue_top_matches_tau() {
        let (g, w) = quintic();
        let a = alpha_from_lambda(5, &w).unwrap();
        let r = residue_oracle(&g, 1, 9, &a).unwrap();
        // 2^{p_max} tau / 2
        assert_eq!(r, tau_series(&g, 9));
        assert_eq!(r.coeff(1), Some(&rat(30)));
        assert!(residue_oracle(&g, 0, 9, &a).unwrap().is_zero());
        assert!(residue_oracle(&g, 2, 9, &a).is_err());
    }

    #[test]
    fn out_of_range_sum() {
        let (g, w) = quintic();
        assert!(fixed_point_sum(&g, 1, 1, &w, 3).is_err());
    }

    #[test]
    fn collisions_block_evaluation() {
        let g = Geometry::new(&[5]).unwrap();
        let w = WeightAssignment::from_integers(&[3, 5]).unwrap();
        assert!(matches!(
            FixedPointEvaluator::new(&g, &w, 5),
            Err(Error::WeightCollision(_))
        ));
    }
}
