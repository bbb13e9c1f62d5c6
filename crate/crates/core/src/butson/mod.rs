//! Butson Hadamard matrices in logarithmic form.
//!
//! A [`LogMatrix`] stores the exponents `L[i][j] ∈ Z_k` of a matrix
//! `H = [ζ_k^{L[i][j]}]`. Every check here is exact: inner products are
//! formed as group-ring count vectors and tested with cyclotomic reduction.

mod exact;
mod group;
mod io;

pub use exact::CycMatrix;
pub use group::{character_table, sylvester, AbelianGroupSpec};
pub use io::MatrixFile;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bent::LogVector;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::numtheory::{gcd, lcm};

/// An `n × n` matrix over `Z_k`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LogMatrix {
    order: usize,
    phase: u32,
    entries: Vec<u32>,
}

impl LogMatrix {
    pub fn new(order: usize, phase: u32, entries: Vec<u32>) -> Result<Self> {
        if phase == 0 {
            return Err(Error::InvalidArgument("phase must be positive".into()));
        }
        if entries.len() != order * order {
            return Err(Error::Dimension(format!(
                "{} entries for an order-{order} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&e| e >= phase) {
            return Err(Error::InvalidArgument(format!(
                "entry {bad} outside Z_{phase}"
            )));
        }
        Ok(LogMatrix {
            order,
            phase,
            entries,
        })
    }

    pub fn from_rows(phase: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let order = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != order) {
            return Err(Error::Dimension(format!(
                "row of length {} in an order-{order} matrix",
                r.len()
            )));
        }
        LogMatrix::new(order, phase, rows.concat())
    }

    /// Builds a matrix from arbitrary integer exponents, reducing mod `k`.
    pub fn from_fn(order: usize, phase: u32, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j).rem_euclid(phase as i64) as u32);
            }
        }
        LogMatrix {
            order,
            phase,
            entries,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.order.max(1)).take(self.order)
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.order).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> LogMatrix {
        LogMatrix::from_fn(self.order, self.phase, |i, j| self.get(j, i) as i64)
    }

    /// Entrywise complex conjugate `H̄`.
    pub fn conj(&self) -> LogMatrix {
        LogMatrix::from_fn(self.order, self.phase, |i, j| -(self.get(i, j) as i64))
    }

    /// `H* = H̄ᵀ`.
    pub fn conj_transpose(&self) -> LogMatrix {
        LogMatrix::from_fn(self.order, self.phase, |i, j| -(self.get(j, i) as i64))
    }

    /// Multiplies every entry by `ζ^c`.
    pub fn shift(&self, c: i64) -> LogMatrix {
        LogMatrix::from_fn(self.order, self.phase, |i, j| self.get(i, j) as i64 + c)
    }

    /// `−H`; needs an even phase so that `−1` is a `k`-th root of unity.
    pub fn negate(&self) -> Result<LogMatrix> {
        if !self.phase.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "-1 is not a root of unity of odd phase {}",
                self.phase
            )));
        }
        Ok(self.shift(self.phase as i64 / 2))
    }

    /// Re-expresses the matrix over a multiple of its phase.
    pub fn lift_phase(&self, new_phase: u32) -> Result<LogMatrix> {
        if new_phase == 0 || !new_phase.is_multiple_of(self.phase) {
            return Err(Error::InvalidArgument(format!(
                "phase {} does not divide {new_phase}",
                self.phase
            )));
        }
        let m = new_phase / self.phase;
        Ok(LogMatrix {
            order: self.order,
            phase: new_phase,
            entries: self.entries.iter().map(|e| e * m).collect(),
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_dephased(&self) -> bool {
        self.order == 0
            || (self.row(0).iter().all(|&e| e == 0) && self.column(0).iter().all(|&e| e == 0))
    }

    /// Hermitian inner product of rows `i` and `j` of `self` and `other`:
    /// `Σ_l ζ^{a_il − b_jl}` as a group-ring count vector.
    pub fn row_inner(&self, i: usize, other: &LogMatrix, j: usize) -> CycInt {
        let k = self.phase;
        CycInt::from_exponents(
            k,
            self.row(i)
                .iter()
                .zip(other.row(j))
                .map(|(&a, &b)| (a + k - b) % k),
        )
    }
}

/// Kronecker product, log entries adding. Mixed phases are lifted to their
/// lcm first.
pub fn kronecker(a: &LogMatrix, b: &LogMatrix) -> LogMatrix {
    let k = lcm(a.phase as u64, b.phase as u64) as u32;
    let a = a.lift_phase(k).expect("lcm is a multiple");
    let b = b.lift_phase(k).expect("lcm is a multiple");
    let m = b.order;
    LogMatrix::from_fn(a.order * m, k, |r, c| {
        (a.get(r / m, c / m) + b.get(r % m, c % m)) as i64
    })
}

/// `HH* = nI`, tested on row pairs only.
pub fn verify_hadamard(m: &LogMatrix) -> bool {
    let n = m.order;
    let pair_vanishes = |i: usize, j: usize| {
        m.row_inner(i, m, j)
            .is_zero()
            .expect("row counts are bounded by n")
    };
    let row_ok = |i: usize| ((i + 1)..n).all(|j| pair_vanishes(i, j));
    if n < 32 {
        (0..n).all(row_ok)
    } else {
        (0..n).into_par_iter().all(row_ok)
    }
}

/// Subtracts the first row from every row, then the first column from every
/// column.
pub fn dephase(m: &LogMatrix) -> LogMatrix {
    if m.order == 0 {
        return m.clone();
    }
    let first_row = m.row(0).to_vec();
    let rows_done = LogMatrix::from_fn(m.order, m.phase, |i, j| {
        m.get(i, j) as i64 - first_row[j] as i64
    });
    let first_col = rows_done.column(0);
    LogMatrix::from_fn(m.order, m.phase, |i, j| {
        rows_done.get(i, j) as i64 - first_col[i] as i64
    })
}

/// `H[i][j] = x[(i − j) mod n]`.
pub fn circulant_from_row(x: &LogVector) -> LogMatrix {
    let n = x.len();
    let e = x.entries();
    LogMatrix::from_fn(n, x.phase(), |i, j| e[(i + n - j) % n] as i64)
}

/// Exact product `AB` of two log matrices of equal order (mixed phases are
/// lifted to the lcm).
pub fn product(a: &LogMatrix, b: &LogMatrix) -> Result<CycMatrix> {
    if a.order != b.order {
        return Err(Error::Dimension(format!(
            "orders {} and {}",
            a.order, b.order
        )));
    }
    let k = lcm(a.phase as u64, b.phase as u64) as u32;
    let (a, b) = (a.lift_phase(k)?, b.lift_phase(k)?);
    let bt = b.transpose();
    let n = a.order;
    let entries = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            CycInt::from_exponents(
                k,
                a.row(i).iter().zip(bt.row(j)).map(|(&x, &y)| (x + y) % k),
            )
        })
        .collect();
    CycMatrix::from_entries(n, k, entries)
}

/// Decides whether `HK* = zL` with `zz̄ = n` and `L ∈ BH(n, k)`; returns `z`.
pub fn is_unbiased(h: &LogMatrix, kmat: &LogMatrix) -> Result<Option<CycInt>> {
    if h.order != kmat.order {
        return Err(Error::Dimension(format!(
            "orders {} and {}",
            h.order, kmat.order
        )));
    }
    if h.phase != kmat.phase {
        return Err(Error::PhaseMismatch {
            left: h.phase,
            right: kmat.phase,
        });
    }
    let n = h.order;
    let k = h.phase;
    if n == 0 {
        return Ok(None);
    }
    let z = h.row_inner(0, kmat, 0);
    if z.norm_sq_integer()? != Some(n as i128) {
        return Ok(None);
    }
    let z_bar = z.conj();
    let mut logs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let e = h.row_inner(i, kmat, j);
            let Some(unit) = e.mul(&z_bar)?.div_exact(n as i128)? else {
                return Ok(None);
            };
            let exponent = match unit.is_root_of_unity()? {
                Some((1, t)) => t,
                Some((_, t)) if k.is_multiple_of(2) => (t + k / 2) % k,
                _ => return Ok(None),
            };
            logs.push(exponent);
        }
    }
    let l = LogMatrix::new(n, k, logs)?;
    if verify_hadamard(&l) {
        Ok(Some(z))
    } else {
        Ok(None)
    }
}

/// Least `t ≤ max_t` with `M^t = n^{t/2} I`, i.e. the multiplicative order of
/// `M/√n`. Odd `t` are considered only when `n` is a perfect square.
pub fn unitary_order(m: &LogMatrix, max_t: u64) -> Result<Option<u64>> {
    if max_t < 1 {
        return Err(Error::InvalidArgument("max_t must be positive".into()));
    }
    let n = m.order as i128;
    let root = crate::numtheory::exact_sqrt(m.order as u64).map(|r| r as i128);
    let mut power = CycMatrix::from_log(m);
    for t in 1..=max_t {
        if t > 1 {
            power = power.mul_log(m)?.reduce()?;
        }
        let target = if t % 2 == 0 {
            checked_pow(n, t / 2)?
        } else if let Some(r) = root {
            checked_pow(r, t)?
        } else {
            continue;
        };
        if power.is_scalar_identity(target)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

fn checked_pow(base: i128, exp: u64) -> Result<i128> {
    let exp = u32::try_from(exp).map_err(|_| Error::overflow("matrix power target"))?;
    base.checked_pow(exp)
        .ok_or_else(|| Error::overflow("matrix power target"))
}

/// Largest `d` dividing every entry of `m` and its phase; used to report the
/// effective phase of a matrix.
pub fn effective_phase(m: &LogMatrix) -> u32 {
    let g = m
        .entries
        .iter()
        .fold(m.phase as u64, |g, &e| gcd(g, e as u64));
    m.phase / g as u32
}
