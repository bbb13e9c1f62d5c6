use serde::{Deserialize, Serialize};

use super::LogMatrix;
use crate::error::{Error, Result};
use crate::numtheory::lcm;

/// A finite abelian group `C_{n₁} × … × C_{n_r}`.
///
/// Elements and characters are both indexed lexicographically over the
/// factors, first factor most significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroupSpec {
    factors: Vec<u32>,
}

impl AbelianGroupSpec {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument(
                "group needs at least one factor".into(),
            ));
        }
        if let Some(f) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::InvalidArgument(format!(
                "cyclic factor of order {f}"
            )));
        }
        Ok(AbelianGroupSpec { factors })
    }

    pub fn cyclic(n: u32) -> Self {
        AbelianGroupSpec::new(vec![n]).expect("cyclic order must be at least 2")
    }

    /// `C_k^m`.
    pub fn elementary(k: u32, m: usize) -> Self {
        AbelianGroupSpec::new(vec![k; m]).expect("factor must be at least 2")
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&f| f as usize).product()
    }

    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1u64, |acc, &f| lcm(acc, f as u64)) as u32
    }

    /// Mixed-radix digits of the element with the given index.
    pub fn digits(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (index % f as usize) as u32;
            index /= f as usize;
        }
        out
    }
}

/// The character table `F(G)` in log form, phase equal to the exponent of
/// `G`: character `a` at element `b` is `Σ a_i b_i (k / n_i) mod k`.
pub fn character_table(g: &AbelianGroupSpec) -> LogMatrix {
    let k = g.exponent();
    let n = g.order();
    let digits: Vec<Vec<u32>> = (0..n).map(|i| g.digits(i)).collect();
    LogMatrix::from_fn(n, k, |r, c| {
        digits[r]
            .iter()
            .zip(&digits[c])
            .zip(g.factors())
            .map(|((&a, &b), &f)| (a as i64) * (b as i64) * (k / f) as i64)
            .sum()
    })
}

/// `F(C_2^m)`, the `2^m × 2^m` Sylvester matrix.
pub fn sylvester(m: usize) -> LogMatrix {
    if m == 0 {
        return LogMatrix::new(1, 2, vec![0]).expect("1x1");
    }
    character_table(&AbelianGroupSpec::elementary(2, m))
}
