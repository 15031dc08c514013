//! Fixed-point ingredients: the disk edge factor `D_{1,i,gamma}`, the
//! hypergeometric series `Y(x, hbar, q)` and the tower `D^s Y_0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::weights::AlphaVector;
use crate::combinat::double_factorial;
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::mirror::i_tower;
use crate::series::QSeries;

/// Signature shared by [`disk_edge_factor`] and test doubles of it.
pub type EdgeFactorFn = fn(&Geometry, usize, u32, &AlphaVector) -> Result<BigRational>;

fn check_edge_args(g: &Geometry, i: usize, gamma: u32, alpha: &AlphaVector) -> Result<()> {
    if alpha.n() != g.n() as usize {
        return Err(Error::InvalidWeights(format!(
            "alpha vector has {} entries, geometry needs {}",
            alpha.n(),
            g.n()
        )));
    }
    if i >= 2 * g.m() as usize {
        return Err(Error::OutOfRange(format!(
            "fixed point index {i} >= 2m = {}",
            2 * g.m()
        )));
    }
    if gamma.is_multiple_of(2) {
        return Err(Error::OutOfRange(format!(
            "edge degree must be odd, got {gamma}"
        )));
    }
    Ok(())
}

/// `D_{1,i,gamma} = prod_k (a_k gamma)!! (alpha_i/gamma)^{(n gamma + l)/2}
///   / (gamma prod_{k, s odd <= gamma, (k,s) != (i,gamma)} (s alpha_i/gamma - alpha_k))`.
///
/// `i` is a 0-based index into `alpha` and must address one of the `2m`
/// nonzero weights.
pub fn disk_edge_factor(
    g: &Geometry,
    i: usize,
    gamma: u32,
    alpha: &AlphaVector,
) -> Result<BigRational> {
    edge_factor_with_exponent(g, i, gamma, alpha, 0)
}

/// [`disk_edge_factor`] with `extra` added to the exponent of `alpha_i/gamma`.
/// Only useful for exercising the verifier with a deliberately wrong factor.
pub fn edge_factor_with_exponent(
    g: &Geometry,
    i: usize,
    gamma: u32,
    alpha: &AlphaVector,
    extra: i32,
) -> Result<BigRational> {
    check_edge_args(g, i, gamma, alpha)?;
    let gamma_q = BigRational::from_integer(BigInt::from(gamma));
    let z = alpha.get(i) / &gamma_q;

    let mut num = BigInt::one();
    for &a in g.degrees() {
        num *= double_factorial(i64::from(a * gamma)).expect("a_k gamma is odd");
    }
    let mut den = gamma_q;
    for s in (1..=gamma).step_by(2) {
        let point = &z * BigRational::from_integer(BigInt::from(s));
        for (k, ak) in alpha.alphas().iter().enumerate() {
            if (k, s) == (i, gamma) {
                continue;
            }
            let factor = &point - ak;
            if factor.is_zero() {
                return Err(Error::WeightCollision(format!(
                    "edge factor i={i} gamma={gamma}: {s}*alpha[{i}]/{gamma} = alpha[{k}]"
                )));
            }
            den *= factor;
        }
    }
    // n and l have the same parity and gamma is odd, so n*gamma + l is even
    let exponent = ((g.n() * gamma + g.l()) / 2) as i32 + extra;
    Ok(BigRational::from_integer(num) / den * num_traits::pow::Pow::pow(&z, exponent))
}

/// `Y(x, hbar, q) = sum_d q^d prod_k prod_{r=1}^{a_k d} (a_k x + r hbar)
///   / prod_{r=1}^d prod_k (x - alpha_k + r hbar)`.
pub fn y_series(
    g: &Geometry,
    x: &BigRational,
    hbar: &BigRational,
    alpha: &AlphaVector,
    trunc_q: usize,
) -> Result<QSeries> {
    let mut coeffs = Vec::with_capacity(trunc_q + 1);
    let mut current = BigRational::one();
    coeffs.push(current.clone());
    for d in 1..=trunc_q as u32 {
        for &a in g.degrees() {
            let a_q = BigRational::from_integer(BigInt::from(a));
            for r in a * (d - 1) + 1..=a * d {
                current *= &a_q * x + hbar * BigRational::from_integer(BigInt::from(r));
            }
        }
        let shift = x + hbar * BigRational::from_integer(BigInt::from(d));
        for (k, ak) in alpha.alphas().iter().enumerate() {
            let factor = &shift - ak;
            if factor.is_zero() {
                return Err(Error::WeightCollision(format!(
                    "Y denominator vanishes at r={d}, k={k}"
                )));
            }
            current /= factor;
        }
        coeffs.push(current.clone());
    }
    Ok(QSeries::new(coeffs))
}

/// `D^0 Y_0, ..., D^s Y_0` given precomputed `I_0..I_s` (any truncation at
/// least `trunc_q`).
pub(crate) fn ds_y0_chain(
    g: &Geometry,
    s: u32,
    x: &BigRational,
    hbar: &BigRational,
    alpha: &AlphaVector,
    trunc_q: usize,
    tower: &[QSeries],
) -> Result<Vec<QSeries>> {
    let y = y_series(g, x, hbar, alpha, trunc_q)?;
    let x_l = num_traits::pow::Pow::pow(x, g.l());
    let mut chain = vec![y.scale(&x_l).checked_div(&tower[0].truncate(trunc_q))?];
    for ip in &tower[1..=s as usize] {
        let prev = chain.last().expect("chain starts non-empty");
        // (x + hbar q d/dq) D^{p-1} Y_0, then divide by I_p
        let lifted = &prev.scale(x) + &prev.q_log_derivative().scale(hbar);
        chain.push(lifted.checked_div(&ip.truncate(trunc_q))?);
    }
    Ok(chain)
}

/// `D^0 Y_0 = x^l Y / I_0`, `D^p Y_0 = (1/I_p)(x + hbar q d/dq) D^{p-1} Y_0`.
pub fn ds_y0_series(
    g: &Geometry,
    s: u32,
    x: &BigRational,
    hbar: &BigRational,
    alpha: &AlphaVector,
    trunc_q: usize,
) -> Result<QSeries> {
    if s > g.p_max() {
        return Err(Error::OutOfRange(format!(
            "D^s Y_0 needs s <= p_max = {}, got {s}",
            g.p_max()
        )));
    }
    let tower = i_tower(g, s as usize, trunc_q)?;
    Ok(ds_y0_chain(g, s, x, hbar, alpha, trunc_q, &tower)?
        .pop()
        .expect("chain is non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::weights::{alpha_from_lambda, WeightAssignment};
    use crate::series::{rat, rat_frac};

    fn quintic_setup() -> (Geometry, AlphaVector) {
        let g = Geometry::new(&[5]).unwrap();
        let w = WeightAssignment::from_integers(&[2, 3]).unwrap();
        let a = alpha_from_lambda(5, &w).unwrap();
        (g, a)
    }

    #[test]
    fn quintic_edge_factors_by_hand() {
        let (g, a) = quintic_setup();
        // 15 * 2^3 / ((2*2)(2-3)(2+3)(2-0)) = 120 / -40
        let hand = rat(15 * 8) / (rat(4) * rat(-1) * rat(5) * rat(2));
        assert_eq!(hand, rat(-3));
        assert_eq!(disk_edge_factor(&g, 0, 1, &a).unwrap(), hand);
        assert_eq!(disk_edge_factor(&g, 1, 1, &a).unwrap(), rat(3));
    }

    #[test]
    fn edge_factor_argument_checks() {
        let (g, a) = quintic_setup();
        assert!(disk_edge_factor(&g, 4, 1, &a).is_err()); // the zero weight
        assert!(disk_edge_factor(&g, 0, 2, &a).is_err());
    }

    #[test]
    fn edge_factor_reports_collision() {
        let g = Geometry::new(&[5]).unwrap();
        let w = WeightAssignment::from_integers(&[1, 3]).unwrap();
        let a = alpha_from_lambda(5, &w).unwrap();
        // i = 2 (alpha = 3), gamma = 3, s = 1: 1 * 3/3 = alpha[0]
        assert!(matches!(
            disk_edge_factor(&g, 2, 3, &a),
            Err(Error::WeightCollision(_))
        ));
    }

    #[test]
    fn edge_exponent_is_integral() {
        let g = Geometry::new(&[3, 3]).unwrap();
        assert_eq!((g.n() * 3 + g.l()) % 2, 0);
        assert_eq!((g.n() * 3 + g.l()) / 2, 10);
    }

    #[test]
    fn y_quintic_linear_coefficient() {
        let (g, a) = quintic_setup();
        let y = y_series(&g, &rat(2), &rat(4), &a, 2).unwrap();
        assert_eq!(y.constant_term(), &rat(1));
        // prod_{r=1}^5 (10 + 4r) / prod_k (2 - alpha_k + 4)
        let num: i64 = (1..=5).map(|r| 10 + 4 * r).product();
        let den: i64 = [2, -2, 3, -3, 0].iter().map(|ak| 6 - ak).product();
        assert_eq!((num, den), (4324320, 5184));
        assert_eq!(y.coeff(1), Some(&rat_frac(5005, 6)));
    }

    #[test]
    fn y_is_homogeneous_of_degree_zero() {
        let (g, a) = quintic_setup();
        let y = y_series(&g, &rat(2), &rat(4), &a, 3).unwrap();
        let a2 = alpha_from_lambda(5, &WeightAssignment::from_integers(&[4, 6]).unwrap()).unwrap();
        assert_eq!(y_series(&g, &rat(4), &rat(8), &a2, 3).unwrap(), y);
    }

    #[test]
    fn ds_y0_constant_terms() {
        let g = Geometry::new(&[7]).unwrap();
        let w = WeightAssignment::from_integers(&[3, 5, 13]).unwrap();
        let a = alpha_from_lambda(7, &w).unwrap();
        let x = rat(3);
        let hbar = rat_frac(1, 3);
        for s in 0..=2 {
            let d = ds_y0_series(&g, s, &x, &hbar, &a, 3).unwrap();
            assert_eq!(d.constant_term(), &num_traits::pow::Pow::pow(&x, g.l() + s));
        }
        assert!(ds_y0_series(&g, 3, &x, &hbar, &a, 3).is_err());
    }
}
