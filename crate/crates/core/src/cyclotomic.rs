//! Exact arithmetic in the ring of cyclotomic integers `Z[ζ_k]`.
//!
//! Elements are kept in the group-ring basis `1, ζ, …, ζ^{k-1}`. That basis is
//! redundant (it has `k` entries while the ring has rank `φ(k)`), but products
//! of roots of unity and complex conjugation are plain index permutations in
//! it. Equality and every other decision goes through [`CycInt::reduce`], which
//! takes the remainder modulo the cyclotomic polynomial `Φ_k` and so yields a
//! unique representative.
//!
//! Coefficients are `i128` and every arithmetic step is checked; an overflow
//! surfaces as [`Error::Overflow`] rather than wrapping.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};

/// The monic cyclotomic polynomial `Φ_k`, coefficients low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPolynomial {
    order: u32,
    coefficients: Vec<i128>,
}

impl CyclotomicPolynomial {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Reduces a polynomial (low degree first) in place modulo this
    /// polynomial. Entries at positions `>= degree` are zero afterwards.
    pub fn reduce_in_place(&self, poly: &mut [i128]) -> Result<()> {
        let d = self.degree();
        for top in (d..poly.len()).rev() {
            let lead = poly[top];
            if lead == 0 {
                continue;
            }
            let base = top - d;
            for (j, &c) in self.coefficients.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let delta = lead
                    .checked_mul(c)
                    .ok_or_else(|| Error::overflow("cyclotomic reduction"))?;
                poly[base + j] = poly[base + j]
                    .checked_sub(delta)
                    .ok_or_else(|| Error::overflow("cyclotomic reduction"))?;
            }
            debug_assert_eq!(poly[top], 0);
        }
        Ok(())
    }
}

/// Computes `Φ_k` by exact division of `x^k − 1` by `Φ_d` for every proper
/// divisor `d` of `k`.
pub fn cyclotomic_polynomial(k: u32) -> Result<CyclotomicPolynomial> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "cyclotomic polynomial of order 0".into(),
        ));
    }
    Ok((*cached_polynomial(k)).clone())
}

fn compute_polynomial(k: u32) -> CyclotomicPolynomial {
    let mut poly = vec![0i128; k as usize + 1];
    poly[0] = -1;
    poly[k as usize] = 1;
    for d in 1..k {
        if k.is_multiple_of(d) {
            let phi_d = cached_polynomial(d);
            poly = divide_exact_monic(&poly, &phi_d.coefficients);
        }
    }
    CyclotomicPolynomial {
        order: k,
        coefficients: poly,
    }
}

// Φ_k has small coefficients for every k this crate handles, so the division
// is done unchecked.
fn divide_exact_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut quot = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let q = rem[i + dd];
        quot[i] = q;
        if q != 0 {
            for (j, &c) in den.iter().enumerate() {
                rem[i + j] -= q * c;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u32, Rc<CyclotomicPolynomial>>> = RefCell::new(HashMap::new());
}

fn cached_polynomial(k: u32) -> Rc<CyclotomicPolynomial> {
    if let Some(p) = PHI_CACHE.with(|c| c.borrow().get(&k).cloned()) {
        return p;
    }
    let p = Rc::new(compute_polynomial(k));
    PHI_CACHE.with(|c| c.borrow_mut().insert(k, Rc::clone(&p)));
    p
}

/// An element of `Z[ζ_k]` in the group-ring basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct CycInt {
    phase: u32,
    coeffs: Vec<i128>,
}

impl CycInt {
    pub fn zero(phase: u32) -> Self {
        assert!(phase >= 1, "phase must be positive");
        CycInt {
            phase,
            coeffs: vec![0; phase as usize],
        }
    }

    pub fn constant(phase: u32, value: i128) -> Self {
        let mut z = CycInt::zero(phase);
        z.coeffs[0] = value;
        z
    }

    pub fn one(phase: u32) -> Self {
        CycInt::constant(phase, 1)
    }

    /// `ζ_k^exponent`; the exponent is taken modulo the phase.
    pub fn root(phase: u32, exponent: i64) -> Self {
        let mut z = CycInt::zero(phase);
        z.coeffs[exponent.rem_euclid(phase as i64) as usize] = 1;
        z
    }

    pub fn from_coeffs(phase: u32, coeffs: Vec<i128>) -> Result<Self> {
        if phase == 0 {
            return Err(Error::InvalidArgument("phase must be positive".into()));
        }
        if coeffs.len() != phase as usize {
            return Err(Error::Dimension(format!(
                "expected {} coefficients for phase {}, got {}",
                phase,
                phase,
                coeffs.len()
            )));
        }
        Ok(CycInt { phase, coeffs })
    }

    /// Builds `Σ ζ^{e}` over a list of exponents (the sum of roots of unity
    /// whose logarithms are given).
    pub fn from_exponents<I: IntoIterator<Item = u32>>(phase: u32, exponents: I) -> Self {
        let mut z = CycInt::zero(phase);
        for e in exponents {
            z.coeffs[(e % phase) as usize] += 1;
        }
        z
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    /// Group-ring coefficients: entry `j` multiplies `ζ^j`.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    fn check_phase(&self, other: &CycInt) -> Result<()> {
        if self.phase != other.phase {
            return Err(Error::PhaseMismatch {
                left: self.phase,
                right: other.phase,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt> {
        self.check_phase(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or_else(|| Error::overflow("add")))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycInt {
            phase: self.phase,
            coeffs,
        })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check_phase(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(*b).ok_or_else(|| Error::overflow("sub")))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycInt {
            phase: self.phase,
            coeffs,
        })
    }

    pub fn neg(&self) -> Result<CycInt> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_neg().ok_or_else(|| Error::overflow("neg")))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycInt {
            phase: self.phase,
            coeffs,
        })
    }

    /// Cyclic convolution on exponents: `ζ^i · ζ^j = ζ^{(i+j) mod k}`.
    pub fn mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check_phase(other)?;
        let k = self.phase as usize;
        let mut out = vec![0i128; k];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let idx = (i + j) % k;
                let prod = a.checked_mul(b).ok_or_else(|| Error::overflow("mul"))?;
                out[idx] = out[idx]
                    .checked_add(prod)
                    .ok_or_else(|| Error::overflow("mul"))?;
            }
        }
        Ok(CycInt {
            phase: self.phase,
            coeffs: out,
        })
    }

    pub fn scale(&self, factor: i128) -> Result<CycInt> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                a.checked_mul(factor)
                    .ok_or_else(|| Error::overflow("scale"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CycInt {
            phase: self.phase,
            coeffs,
        })
    }

    /// Multiplication by `ζ^t`, an index rotation.
    pub fn rotate(&self, t: i64) -> CycInt {
        let k = self.phase as usize;
        let shift = t.rem_euclid(k as i64) as usize;
        let mut coeffs = vec![0i128; k];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[(j + shift) % k] = c;
        }
        CycInt {
            phase: self.phase,
            coeffs,
        }
    }

    /// Complex conjugation: `ζ^j ↦ ζ^{-j}`.
    pub fn conj(&self) -> CycInt {
        let k = self.phase as usize;
        let mut coeffs = vec![0i128; k];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[(k - j) % k] = c;
        }
        CycInt {
            phase: self.phase,
            coeffs,
        }
    }

    /// Canonical representative: remainder modulo `Φ_k`, written back into
    /// the length-`k` basis with zeros from position `φ(k)` on.
    pub fn reduce(&self) -> Result<CycInt> {
        let phi = cached_polynomial(self.phase);
        let mut coeffs = self.coeffs.clone();
        phi.reduce_in_place(&mut coeffs)?;
        Ok(CycInt {
            phase: self.phase,
            coeffs,
        })
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.reduce()?.coeffs.iter().all(|&c| c == 0))
    }

    /// Semantic equality in `Z[ζ_k]`.
    pub fn equals(&self, other: &CycInt) -> Result<bool> {
        self.sub(other)?.is_zero()
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Result<Option<i128>> {
        let r = self.reduce()?;
        if r.coeffs[1..].iter().all(|&c| c == 0) {
            Ok(Some(r.coeffs[0]))
        } else {
            Ok(None)
        }
    }

    /// `z · conj(z)`, canonically reduced.
    pub fn norm_sq(&self) -> Result<CycInt> {
        self.mul(&self.conj())?.reduce()
    }

    /// `Some(n)` when `|z|² = n` is a rational integer.
    pub fn norm_sq_integer(&self) -> Result<Option<i128>> {
        self.norm_sq()?.as_integer()
    }

    /// Exact division by a rational integer, when every canonical coefficient
    /// is divisible.
    pub fn div_exact(&self, divisor: i128) -> Result<Option<CycInt>> {
        if divisor == 0 {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        let r = self.reduce()?;
        if r.coeffs.iter().any(|c| c % divisor != 0) {
            return Ok(None);
        }
        Ok(Some(CycInt {
            phase: self.phase,
            coeffs: r.coeffs.iter().map(|c| c / divisor).collect(),
        }))
    }

    /// Recognises `±ζ_k^t`.
    ///
    /// A value written as a single signed monomial is reported as written.
    /// Otherwise the search runs over `t = 0..k`, trying sign `−1` before
    /// `+1`; this returns e.g. `1 + ζ₃` as `(−1, 2)`. For even `k` the pair
    /// is not unique (`−ζ^t = ζ^{t+k/2}`).
    pub fn is_root_of_unity(&self) -> Result<Option<(i8, u32)>> {
        let nonzero: Vec<(usize, i128)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c))
            .collect();
        if let [(j, c)] = nonzero.as_slice() {
            if *c == 1 || *c == -1 {
                return Ok(Some((*c as i8, *j as u32)));
            }
        }
        let reduced = self.reduce()?;
        if reduced.coeffs.iter().all(|&c| c == 0) {
            return Ok(None);
        }
        for sign in [-1i8, 1] {
            for t in 0..self.phase {
                let candidate = CycInt::root(self.phase, t as i64).scale(sign as i128)?;
                if reduced.equals(&candidate)? {
                    return Ok(Some((sign, t)));
                }
            }
        }
        Ok(None)
    }

    /// Image under `Z[ζ_k] → Z[ζ_{k'}]`, `ζ_k ↦ ζ_{k'}^{k'/k}`.
    pub fn embed(&self, new_phase: u32) -> Result<CycInt> {
        if new_phase == 0 || !new_phase.is_multiple_of(self.phase) {
            return Err(Error::InvalidArgument(format!(
                "phase {} does not divide {}",
                self.phase, new_phase
            )));
        }
        let step = (new_phase / self.phase) as usize;
        let mut coeffs = vec![0i128; new_phase as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j * step] = c;
        }
        Ok(CycInt {
            phase: new_phase,
            coeffs,
        })
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let body = match (j, mag) {
                (0, m) => m.to_string(),
                (_, 1) => format!("z^{j}"),
                (_, m) => format!("{m}*z^{j}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
