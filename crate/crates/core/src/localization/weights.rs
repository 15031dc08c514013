//! Torus weights: the `T^m` weights `lambda_j`, the induced `alpha` vector
//! on `P^{n-1}`, collision checks, and seeded sampling.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::Geometry;

/// Nonzero rational weights `lambda_1..lambda_m`, pairwise distinct in
/// absolute value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightAssignment {
    lambdas: Vec<BigRational>,
}

impl WeightAssignment {
    pub fn new(lambdas: Vec<BigRational>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::InvalidWeights(
                "at least one weight is required".into(),
            ));
        }
        if lambdas.iter().any(Zero::is_zero) {
            return Err(Error::InvalidWeights("weights must be nonzero".into()));
        }
        let abs: BTreeSet<BigRational> = lambdas.iter().map(Signed::abs).collect();
        if abs.len() != lambdas.len() {
            return Err(Error::InvalidWeights(
                "weights must be distinct in absolute value".into(),
            ));
        }
        Ok(Self { lambdas })
    }

    pub fn from_integers(lambdas: &[i64]) -> Result<Self> {
        Self::new(
            lambdas
                .iter()
                .map(|&l| BigRational::from_integer(BigInt::from(l)))
                .collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[BigRational] {
        &self.lambdas
    }

    /// Every `lambda_j` replaced by `-lambda_j`.
    pub fn negated(&self) -> Self {
        Self {
            lambdas: self.lambdas.iter().map(|l| -l).collect(),
        }
    }
}

impl fmt::Display for WeightAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambdas.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `(alpha_1, ..., alpha_n)` restricted to `T^m`:
/// `(l_1, -l_1, ..., l_m, -l_m)` with a trailing 0 when `n` is odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector {
    alphas: Vec<BigRational>,
}

impl AlphaVector {
    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[BigRational] {
        &self.alphas
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.alphas[i]
    }
}

pub fn alpha_from_lambda(n: u32, w: &WeightAssignment) -> Result<AlphaVector> {
    let m = (n / 2) as usize;
    if w.m() != m {
        return Err(Error::InvalidWeights(format!(
            "n = {n} needs {m} weights, got {}",
            w.m()
        )));
    }
    let mut alphas = Vec::with_capacity(n as usize);
    for l in w.lambdas() {
        alphas.push(l.clone());
        alphas.push(-l);
    }
    if n % 2 == 1 {
        alphas.push(BigRational::zero());
    }
    Ok(AlphaVector { alphas })
}

/// A vanishing factor `s alpha_i / gamma - alpha_k` (indices 0-based).
///
/// Factors with `s <= gamma` sit in the disk edge factor; those with
/// `s > gamma` are the `Y` denominators `alpha_i - alpha_k + r hbar` at
/// `hbar = 2 alpha_i / gamma`, `s = gamma + 2r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub i: usize,
    pub gamma: u32,
    pub k: usize,
    pub s: u32,
}

impl fmt::Display for Collision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let place = if self.s <= self.gamma {
            "edge factor"
        } else {
            "Y denominator"
        };
        write!(
            f,
            "{place}: {s}*alpha[{i}]/{g} = alpha[{k}]",
            s = self.s,
            i = self.i,
            g = self.gamma,
            k = self.k
        )
    }
}

/// Finds every vanishing denominator a localization run through `u^trunc_u`
/// would meet.
pub fn validate_weights(
    g: &Geometry,
    w: &WeightAssignment,
    trunc_u: usize,
) -> Result<Vec<Collision>> {
    let alpha = alpha_from_lambda(g.n(), w)?;
    Ok(collisions(&alpha, 2 * g.m() as usize, trunc_u as u32))
}

pub(crate) fn collisions(alpha: &AlphaVector, fixed_points: usize, trunc_u: u32) -> Vec<Collision> {
    let mut out = Vec::new();
    for i in 0..fixed_points {
        let ai = alpha.get(i);
        for gamma in (1..=trunc_u).step_by(2) {
            for s in (1..=trunc_u).step_by(2) {
                let point = ai * BigRational::new(BigInt::from(s), BigInt::from(gamma));
                for (k, ak) in alpha.alphas().iter().enumerate() {
                    if (k, s) != (i, gamma) && &point == ak {
                        out.push(Collision { i, gamma, k, s });
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn ensure_valid(alpha: &AlphaVector, fixed_points: usize, trunc_u: usize) -> Result<()> {
    match collisions(alpha, fixed_points, trunc_u as u32).first() {
        None => Ok(()),
        Some(c) => Err(Error::WeightCollision(c.to_string())),
    }
}

fn odd_primes_up_to(limit: u32) -> Vec<i64> {
    (3..=limit)
        .step_by(2)
        .filter(|&p| {
            (3..)
                .step_by(2)
                .take_while(|d| d * d <= p)
                .all(|d| p % d != 0)
        })
        .map(i64::from)
        .collect()
}

/// Draws `count` distinct weight assignments of `m` distinct odd primes in
/// `[2, 200]`, rejecting any with a collision through `u^trunc_u`.
/// Deterministic in `seed`.
pub fn sample_weights(
    g: &Geometry,
    trunc_u: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<WeightAssignment>> {
    const MAX_ATTEMPTS: usize = 100_000;
    let primes = odd_primes_up_to(200);
    let m = g.m() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    for _ in 0..MAX_ATTEMPTS {
        if out.len() == count {
            return Ok(out);
        }
        let picked: Vec<i64> = primes.choose_multiple(&mut rng, m).copied().collect();
        let mut key = picked.clone();
        key.sort_unstable();
        if seen.contains(&key) {
            continue;
        }
        let w = WeightAssignment::from_integers(&picked)?;
        if validate_weights(g, &w, trunc_u)?.is_empty() {
            seen.insert(key);
            out.push(w);
        }
    }
    if out.len() == count {
        Ok(out)
    } else {
        Err(Error::InvalidWeights(format!(
            "could not draw {count} collision-free weight samples for {g}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn alpha_patterns() {
        let w = WeightAssignment::from_integers(&[2, 3]).unwrap();
        let a = alpha_from_lambda(5, &w).unwrap();
        assert_eq!(a.alphas(), &[rat(2), rat(-2), rat(3), rat(-3), rat(0)]);
        let w = WeightAssignment::from_integers(&[1, 2, 3]).unwrap();
        let a = alpha_from_lambda(6, &w).unwrap();
        assert_eq!(
            a.alphas(),
            &[rat(1), rat(-1), rat(2), rat(-2), rat(3), rat(-3)]
        );
        let w = WeightAssignment::from_integers(&[7, 11]).unwrap();
        let sum: BigRational = alpha_from_lambda(4, &w).unwrap().alphas().iter().sum();
        assert!(sum.is_zero());
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let w = WeightAssignment::from_integers(&[2, 3]).unwrap();
        assert!(alpha_from_lambda(7, &w).is_err());
    }

    #[test]
    fn weight_invariants() {
        assert!(WeightAssignment::from_integers(&[0, 3]).is_err());
        assert!(WeightAssignment::from_integers(&[3, -3]).is_err());
        assert!(WeightAssignment::from_integers(&[]).is_err());
    }

    #[test]
    fn quintic_small_weights_are_clean() {
        let g = Geometry::new(&[5]).unwrap();
        let w = WeightAssignment::from_integers(&[2, 3]).unwrap();
        // 2 and 3 with odd multipliers: s*2/gamma = 3 needs 2s = 3 gamma, impossible
        assert!(validate_weights(&g, &w, 9).unwrap().is_empty());
    }

    #[test]
    fn tripled_weight_collides() {
        let g = Geometry::new(&[5]).unwrap();
        let w = WeightAssignment::from_integers(&[2, 6]).unwrap();
        let c = validate_weights(&g, &w, 9).unwrap();
        assert!(c.contains(&Collision {
            i: 0,
            gamma: 1,
            k: 2,
            s: 3
        }));
    }

    #[test]
    fn sampling_is_deterministic_and_clean() {
        let g = Geometry::new(&[3, 5]).unwrap();
        let a = sample_weights(&g, 11, 3, 42).unwrap();
        let b = sample_weights(&g, 11, 3, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        for w in &a {
            assert_eq!(w.m(), 4);
            assert!(validate_weights(&g, w, 11).unwrap().is_empty());
        }
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn primes() {
        let p = odd_primes_up_to(200);
        assert_eq!(&p[..5], &[3, 5, 7, 11, 13]);
        assert_eq!(*p.last().unwrap(), 199);
        assert_eq!(p.len(), 45);
    }
}
