#![allow(dead_code)]

use diskinv::series::{invert_unit_relation, Jet, JetSeries, QSeries, Series};
use diskinv::BigRational;
use num_bigint::BigInt;
use num_traits::Zero;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn series(coeffs: &[i64]) -> QSeries {
    QSeries::new(coeffs.iter().map(|&c| rat(c)).collect())
}

/// `coeffs` with the constant term forced to 1.
pub fn unit_series(coeffs: &[i64]) -> QSeries {
    let mut c = coeffs.to_vec();
    c[0] = 1;
    series(&c)
}

pub fn exp_log_roundtrip(s: &QSeries) -> bool {
    s.log().and_then(|l| l.exp()).as_ref() == Ok(s)
}

pub fn sqrt_squares_back(s: &QSeries) -> bool {
    s.sqrt().map(|r| &r * &r).as_ref() == Ok(s)
}

pub fn inverse_is_two_sided(s: &QSeries) -> bool {
    match s.inverse() {
        Ok(inv) => {
            let one = QSeries::one(s.trunc());
            &inv * s == one && s * &inv == one
        }
        Err(_) => s.constant_term().is_zero(),
    }
}

/// `Q = q U(q)` inverted to `q(Q)`, then checked by composing both ways.
pub fn inversion_is_two_sided(unit: &QSeries) -> bool {
    let t = unit.trunc();
    let Ok(phi) = invert_unit_relation(unit) else {
        return false;
    };
    let q = QSeries::variable(t);
    let big_q = &q * unit;
    let forward = big_q.compose(&phi);
    let backward = phi.compose(&big_q);
    forward.as_ref() == Ok(&q) && backward.as_ref() == Ok(&q)
}

pub fn log_derivative_is_derivation(f: &QSeries, g: &QSeries) -> bool {
    let lhs = (f * g).q_log_derivative();
    let rhs = &(&f.q_log_derivative() * g) + &(f * &g.q_log_derivative());
    lhs == rhs
}

/// Builds a jet series from rows of w-coefficients, one row per q-power.
pub fn jet_series(rows: &[Vec<i64>], jet_order: usize) -> JetSeries {
    let inner = Series::new(
        rows.iter()
            .map(|r| Jet::new(r.iter().map(|&c| rat(c)).collect(), jet_order))
            .collect(),
    );
    JetSeries::new(inner, jet_order)
}

/// Evaluation at `w = 0` commutes with `+`, `-`, `*`, `q d/dq` and division.
pub fn w0_commutes(a: &JetSeries, b: &JetSeries) -> bool {
    let (a0, b0) = (a.at_w0(), b.at_w0());
    let ring = a.add(b).at_w0() == &a0 + &b0
        && a.sub(b).at_w0() == &a0 - &b0
        && a.mul(b).at_w0() == &a0 * &b0
        && a.q_log_derivative().at_w0() == a0.q_log_derivative();
    let div = match (a.checked_div(b), a0.checked_div(&b0)) {
        (Ok(x), Ok(y)) => x.at_w0() == y,
        (Err(_), Err(_)) => true,
        _ => false,
    };
    ring && div
}
