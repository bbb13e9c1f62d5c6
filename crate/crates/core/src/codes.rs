//! Codes over `Z_k` from Butson matrices, covering radius and its bounds.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bent::{check_bent, LogVector};
use crate::butson::LogMatrix;
use crate::error::{Error, Result};
use crate::numtheory::{exact_sqrt, is_prime, isqrt};

/// Default cap on the number of ambient vectors an exhaustive scan visits.
pub const DEFAULT_SCAN_BUDGET: u64 = 1 << 30;

/// A nonempty set of distinct words of one length over `Z_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZkCode {
    length: usize,
    modulus: u32,
    words: Vec<Vec<u32>>,
    duplicates_removed: usize,
}

impl ZkCode {
    /// Builds a code, dropping repeated words (first occurrence kept).
    pub fn new(modulus: u32, words: Vec<Vec<u32>>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let length = words
            .first()
            .ok_or_else(|| Error::InvalidArgument("a code needs at least one word".into()))?
            .len();
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(words.len());
        let total = words.len();
        for w in words {
            if w.len() != length {
                return Err(Error::Dimension(format!(
                    "word of length {} in a length-{length} code",
                    w.len()
                )));
            }
            if let Some(e) = w.iter().find(|&&e| e >= modulus) {
                return Err(Error::InvalidArgument(format!(
                    "symbol {e} outside Z_{modulus}"
                )));
            }
            if seen.insert(w.clone()) {
                kept.push(w);
            }
        }
        Ok(ZkCode {
            length,
            modulus,
            duplicates_removed: total - kept.len(),
            words: kept,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// How many repeated words were dropped on construction.
    pub fn duplicates_removed(&self) -> usize {
        self.duplicates_removed
    }

    pub fn contains(&self, w: &[u32]) -> bool {
        self.words.iter().any(|x| x == w)
    }
}

pub fn hamming_distance(v: &[u32], w: &[u32]) -> Result<usize> {
    if v.len() != w.len() {
        return Err(Error::Dimension(format!(
            "lengths {} and {}",
            v.len(),
            w.len()
        )));
    }
    Ok(v.iter().zip(w).filter(|(a, b)| a != b).count())
}

/// `R_H` (the rows of `L(H)`) and `C_H` (all translates `R_H + α·1`).
pub fn code_from_matrix(h: &LogMatrix) -> Result<(ZkCode, ZkCode)> {
    let k = h.phase();
    let rows: Vec<Vec<u32>> = h.rows().map(|r| r.to_vec()).collect();
    let translates = (0..k)
        .flat_map(|alpha| {
            rows.iter()
                .map(move |r| r.iter().map(|&e| (e + alpha) % k).collect())
        })
        .collect();
    Ok((ZkCode::new(k, rows)?, ZkCode::new(k, translates)?))
}

pub fn min_distance(c: &ZkCode) -> Result<usize> {
    if c.size() < 2 {
        return Err(Error::InvalidArgument(
            "minimum distance needs two words".into(),
        ));
    }
    let w = c.words();
    Ok((0..w.len())
        .into_par_iter()
        .map(|i| {
            w[i + 1..]
                .iter()
                .map(|x| w[i].iter().zip(x).filter(|(a, b)| a != b).count())
                .min()
                .unwrap_or(usize::MAX)
        })
        .min()
        .expect("at least two words"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoveringStrategy {
    Exhaustive { budget: u64 },
    Sampled { samples: u64, seed: u64 },
}

impl CoveringStrategy {
    pub fn exhaustive() -> Self {
        CoveringStrategy::Exhaustive {
            budget: DEFAULT_SCAN_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoveringRadius {
    /// The radius when `exact`, otherwise a lower bound.
    pub value: usize,
    pub exact: bool,
    pub examined: u64,
}

/// `max_x min_{y∈C} d(x, y)` over `Z_k^n`.
///
/// The exhaustive scan fixes leading digits per parallel block and walks the
/// remaining digits with an odometer, updating a table of distances to every
/// codeword for each changed coordinate. Sampling only certifies a lower
/// bound.
pub fn covering_radius(c: &ZkCode, strategy: CoveringStrategy) -> Result<CoveringRadius> {
    match strategy {
        CoveringStrategy::Exhaustive { budget } => exhaustive_radius(c, budget),
        CoveringStrategy::Sampled { samples, seed } => sampled_radius(c, samples, seed),
    }
}

fn ambient_size(c: &ZkCode) -> u128 {
    (c.modulus() as u128)
        .checked_pow(c.length() as u32)
        .unwrap_or(u128::MAX)
}

/// Codewords stored coordinate-major.
fn columns(c: &ZkCode) -> Vec<Vec<u32>> {
    (0..c.length())
        .map(|i| c.words().iter().map(|w| w[i]).collect())
        .collect()
}

fn exhaustive_radius(c: &ZkCode, budget: u64) -> Result<CoveringRadius> {
    let size = ambient_size(c);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded {
            size,
            budget: budget as u128,
        });
    }
    let n = c.length();
    let k = c.modulus();
    if n == 0 {
        return Ok(CoveringRadius {
            value: 0,
            exact: true,
            examined: 1,
        });
    }
    let cols = columns(c);
    let words = c.size();
    // enough blocks to keep workers busy without tiny blocks
    let mut prefix = 0;
    while prefix < n && (k as u64).pow(prefix as u32) < 256 {
        prefix += 1;
    }
    let prefix = prefix.min(n.saturating_sub(1)).max(1).min(n);
    let blocks = (k as u64).pow(prefix as u32);
    let value = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut x = vec![0u32; n];
            let mut rest = b;
            for d in x[..prefix].iter_mut().rev() {
                *d = (rest % k as u64) as u32;
                rest /= k as u64;
            }
            let mut dist: Vec<u32> = (0..words)
                .map(|w| (0..n).filter(|&i| cols[i][w] != x[i]).count() as u32)
                .collect();
            let mut best = 0u32;
            loop {
                best = best.max(*dist.iter().min().expect("nonempty code"));
                // odometer over the free suffix
                let mut i = n;
                loop {
                    if i == prefix {
                        return best as usize;
                    }
                    i -= 1;
                    let old = x[i];
                    let new = if old + 1 == k { 0 } else { old + 1 };
                    x[i] = new;
                    for (d, &s) in dist.iter_mut().zip(&cols[i]) {
                        *d = *d + u32::from(s == old) - u32::from(s == new);
                    }
                    if new != 0 {
                        break;
                    }
                }
            }
        })
        .max()
        .unwrap_or(0);
    Ok(CoveringRadius {
        value,
        exact: true,
        examined: size as u64,
    })
}

fn sampled_radius(c: &ZkCode, samples: u64, seed: u64) -> Result<CoveringRadius> {
    const CHUNK: u64 = 4096;
    let n = c.length();
    let k = c.modulus();
    let chunks = samples.div_ceil(CHUNK);
    let value = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = CHUNK.min(samples - chunk * CHUNK);
            let mut x = vec![0u32; n];
            let mut best = 0;
            for _ in 0..count {
                for e in x.iter_mut() {
                    *e = rng.gen_range(0..k);
                }
                let d = c
                    .words()
                    .iter()
                    .map(|w| w.iter().zip(&x).filter(|(a, b)| a != b).count())
                    .min()
                    .expect("nonempty code");
                best = best.max(d);
            }
            best
        })
        .max()
        .unwrap_or(0);
    Ok(CoveringRadius {
        value,
        exact: false,
        examined: samples,
    })
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

/// `(p + s·√m) / q` with `q > 0`, floored and ceiled exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadraticSurd {
    pub p: i128,
    pub s: i128,
    pub m: u64,
    pub q: i128,
}

impl QuadraticSurd {
    pub fn new(p: i128, s: i128, m: u64, q: i128) -> Result<Self> {
        if q <= 0 {
            return Err(Error::InvalidArgument(format!(
                "denominator {q} must be positive"
            )));
        }
        Ok(QuadraticSurd { p, s, m, q })
    }

    /// The value when `√m` is an integer.
    pub fn as_rational(&self) -> Option<Ratio<i128>> {
        exact_sqrt(self.m).map(|r| Ratio::new(self.p + self.s * r as i128, self.q))
    }

    /// `⌊s·√m⌋`.
    fn floor_surd_term(&self) -> i128 {
        let mag_sq = (self.s * self.s) as u128 * self.m as u128;
        let root = isqrt_u128(mag_sq) as i128;
        let exact = (root as u128) * (root as u128) == mag_sq;
        if self.s >= 0 || exact {
            self.s.signum() * root
        } else {
            -root - 1
        }
    }

    pub fn floor(&self) -> i128 {
        floor_div(self.p + self.floor_surd_term(), self.q)
    }

    pub fn ceil(&self) -> i128 {
        -QuadraticSurd {
            p: -self.p,
            s: -self.s,
            ..*self
        }
        .floor()
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n < (1 << 64) {
        return isqrt(n as u64) as u128;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write_ratio(f, &r);
        }
        let sign = if self.s < 0 { "-" } else { "+" };
        let s = self.s.abs();
        let coeff = if s == 1 {
            String::new()
        } else {
            format!("{s}*")
        };
        if self.q == 1 {
            write!(f, "{} {sign} {coeff}sqrt({})", self.p, self.m)
        } else {
            write!(f, "({} {sign} {coeff}sqrt({}))/{}", self.p, self.m, self.q)
        }
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &Ratio<i128>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurdBound {
    pub value: QuadraticSurd,
    /// The bound rounded to the nearest admissible integer radius.
    pub integer: i128,
}

/// `((q−1)/q)·n − (1/q)·√n` and its floor.
pub fn leducq_upper_bound(n: u64, q: u32) -> Result<SurdBound> {
    if q == 2 || !is_prime(q as u64) {
        return Err(Error::InvalidArgument(format!("{q} is not an odd prime")));
    }
    let value = QuadraticSurd::new((q as i128 - 1) * n as i128, -1, n, q as i128)?;
    Ok(SurdBound {
        value,
        integer: value.floor(),
    })
}

/// `⌈(2/3)(n − √n)⌉` written as `(2n − √(4n))/3`.
pub fn bent_lower_bound_value(n: u64) -> SurdBound {
    let value = QuadraticSurd {
        p: 2 * n as i128,
        s: -1,
        m: 4 * n,
        q: 3,
    };
    SurdBound {
        value,
        integer: value.ceil(),
    }
}

/// Real part of `⟨v, w⟩ = Σ ζ₃^{v_i − w_i}`: `s₀ − (s₁ + s₂)/2`.
pub fn phase3_inner_real(v: &[u32], w: &[u32]) -> Result<Ratio<i64>> {
    if v.len() != w.len() {
        return Err(Error::Dimension(format!(
            "lengths {} and {}",
            v.len(),
            w.len()
        )));
    }
    let mut s = [0i64; 3];
    for (a, b) in v.iter().zip(w) {
        s[((a + 3 - b % 3) % 3) as usize] += 1;
    }
    Ok(Ratio::from_integer(s[0]) - Ratio::new(s[1] + s[2], 2))
}

/// `(2/3)(n − R⟨v, w⟩)`, which equals the Hamming distance for phase 3.
pub fn phase3_distance(v: &[u32], w: &[u32]) -> Result<Ratio<i64>> {
    let re = phase3_inner_real(v, w)?;
    Ok(Ratio::new(2, 3) * (Ratio::from_integer(v.len() as i64) - re))
}

#[derive(Debug, Clone, Serialize)]
pub struct BentDistanceWitness {
    /// `⌈(2/3)(n − √n)⌉`.
    pub bound: SurdBound,
    /// Distance from `L(x)` to each word of `C_H`, in code order.
    pub distances: Vec<u64>,
    pub min_distance: u64,
}

impl BentDistanceWitness {
    pub fn witnesses_bound(&self) -> bool {
        self.min_distance as i128 >= self.bound.integer
    }
}

/// The lower bound on `r(C_H)` for phase 3 and the distances from the bent
/// vector `x` to every codeword, computed from exact real parts.
pub fn bent_lower_bound(h: &LogMatrix, x: &LogVector) -> Result<BentDistanceWitness> {
    if h.phase() != 3 || x.phase() != 3 {
        return Err(Error::PhaseMismatch {
            left: 3,
            right: if h.phase() != 3 { h.phase() } else { x.phase() },
        });
    }
    if !check_bent(h, x)?.bent {
        return Err(Error::NotBent);
    }
    let (_, c) = code_from_matrix(h)?;
    let distances = c
        .words()
        .iter()
        .map(|w| {
            let d = phase3_distance(x.entries(), w)?;
            if !d.is_integer() || *d.numer() < 0 {
                return Err(Error::InvalidArgument(format!("non-integral distance {d}")));
            }
            Ok(*d.numer() as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    let min_distance = distances.iter().copied().min().unwrap_or(0);
    Ok(BentDistanceWitness {
        bound: bent_lower_bound_value(h.order() as u64),
        distances,
        min_distance,
    })
}

/// Closed under adding `α·1` for every `α ∈ Z_k` (`α = 1` generates).
pub fn is_self_complementary(c: &ZkCode) -> bool {
    let k = c.modulus();
    let set: HashSet<&[u32]> = c.words().iter().map(|w| w.as_slice()).collect();
    c.words().iter().all(|w| {
        let t: Vec<u32> = w.iter().map(|&e| (e + 1) % k).collect();
        set.contains(t.as_slice())
    })
}

/// Every ordered pair of symbols appears equally often in every pair of
/// coordinates.
pub fn has_strength_2(c: &ZkCode) -> bool {
    let k = c.modulus() as usize;
    if !c.size().is_multiple_of(k * k) {
        return false;
    }
    let target = c.size() / (k * k);
    let n = c.length();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let mut counts = vec![0usize; k * k];
            for w in c.words() {
                counts[w[i] as usize * k + w[j] as usize] += 1;
            }
            counts.iter().all(|&x| x == target)
        })
    })
}

/// Largest `q^m` accepted by [`reed_muller_1`].
pub const REED_MULLER_MAX_LENGTH: u64 = 1 << 16;

/// `R_q(1, m)`: the evaluations of `a₀ + Σ a_i x_i` over `Z_q^m` in
/// lexicographic order, codewords ordered by `(a₀, a₁, …, a_m)`.
pub fn reed_muller_1(q: u32, m: u32) -> Result<ZkCode> {
    if !is_prime(q as u64) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let len = (q as u64)
        .checked_pow(m)
        .filter(|&l| l <= REED_MULLER_MAX_LENGTH)
        .ok_or(Error::BudgetExceeded {
            size: (q as u128).saturating_pow(m),
            budget: REED_MULLER_MAX_LENGTH as u128,
        })?;
    let digits = |mut v: u64, count: u32| {
        let mut d = vec![0u32; count as usize];
        for slot in d.iter_mut().rev() {
            *slot = (v % q as u64) as u32;
            v /= q as u64;
        }
        d
    };
    let points: Vec<Vec<u32>> = (0..len).map(|i| digits(i, m)).collect();
    let words = (0..len * q as u64)
        .map(|idx| {
            let a = digits(idx, m + 1);
            points
                .iter()
                .map(|x| {
                    let s: u64 = x
                        .iter()
                        .zip(&a[1..])
                        .map(|(&xi, &ai)| (xi * ai) as u64)
                        .sum();
                    ((a[0] as u64 + s) % q as u64) as u32
                })
                .collect()
        })
        .collect();
    ZkCode::new(q, words)
}

/// `q^{m−1}(q−1) − q^{m/2−1}` for even `m ≥ 2`.
pub fn schmidt_covering_radius(q: u64, m: u32) -> Option<u64> {
    if m < 2 || !m.is_multiple_of(2) {
        return None;
    }
    Some(q.pow(m - 1) * (q - 1) - q.pow(m / 2 - 1))
}
