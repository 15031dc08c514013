//! Factorials and odd double factorials, memoized.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("double factorial needs an odd positive argument, got {0}")]
pub struct DoubleFactorialError(pub i64);

/// `k!! = k (k-2) ... 3 * 1` for odd `k >= 1`.
pub fn double_factorial(k: i64) -> Result<BigInt, DoubleFactorialError> {
    if k < 1 || k % 2 == 0 {
        return Err(DoubleFactorialError(k));
    }
    Ok((1..=k).step_by(2).map(BigInt::from).product())
}

/// Grows on demand; one table per computation.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    fact: Vec<BigInt>,
    // odd_dfact[j] = (2j+1)!!
    odd_dfact: Vec<BigInt>,
}

impl Default for FactorialTable {
    fn default() -> Self {
        Self::new()
    }
}

impl FactorialTable {
    pub fn new() -> Self {
        Self {
            fact: vec![BigInt::one()],
            odd_dfact: vec![BigInt::one()],
        }
    }

    pub fn factorial(&mut self, k: usize) -> &BigInt {
        while self.fact.len() <= k {
            let next = self.fact.last().unwrap() * self.fact.len();
            self.fact.push(next);
        }
        &self.fact[k]
    }

    /// `k!!` for odd `k`; panics on even `k`.
    pub fn odd_double_factorial(&mut self, k: usize) -> &BigInt {
        assert!(k % 2 == 1, "odd_double_factorial takes odd arguments");
        let j = k / 2;
        while self.odd_dfact.len() <= j {
            let next = self.odd_dfact.last().unwrap() * (2 * self.odd_dfact.len() + 1);
            self.odd_dfact.push(next);
        }
        &self.odd_dfact[j]
    }
}
