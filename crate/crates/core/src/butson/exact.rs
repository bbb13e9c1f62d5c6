use rayon::prelude::*;

use super::LogMatrix;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::numtheory::lcm;

/// A square matrix over `Z[ζ_k]`, used for exact matrix products and powers.
#[derive(Debug, Clone)]
pub struct CycMatrix {
    order: usize,
    phase: u32,
    entries: Vec<CycInt>,
}

impl CycMatrix {
    pub fn from_log(m: &LogMatrix) -> CycMatrix {
        CycMatrix {
            order: m.order(),
            phase: m.phase(),
            entries: m
                .entries()
                .iter()
                .map(|&e| CycInt::root(m.phase(), e as i64))
                .collect(),
        }
    }

    pub fn scalar_identity(order: usize, phase: u32, value: i128) -> CycMatrix {
        let entries = (0..order * order)
            .map(|idx| {
                if idx / order == idx % order {
                    CycInt::constant(phase, value)
                } else {
                    CycInt::zero(phase)
                }
            })
            .collect();
        CycMatrix {
            order,
            phase,
            entries,
        }
    }

    pub fn from_entries(order: usize, phase: u32, entries: Vec<CycInt>) -> Result<CycMatrix> {
        if entries.len() != order * order {
            return Err(Error::Dimension(format!(
                "{} entries for order {order}",
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.phase() != phase) {
            return Err(Error::PhaseMismatch {
                left: phase,
                right: e.phase(),
            });
        }
        Ok(CycMatrix {
            order,
            phase,
            entries,
        })
    }

    pub fn add(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.order != other.order {
            return Err(Error::Dimension(format!(
                "orders {} and {}",
                self.order, other.order
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(CycMatrix {
            order: self.order,
            phase: self.phase,
            entries,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn entries(&self) -> &[CycInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &CycInt {
        &self.entries[i * self.order + j]
    }

    fn embed(&self, phase: u32) -> Result<CycMatrix> {
        if phase == self.phase {
            return Ok(self.clone());
        }
        Ok(CycMatrix {
            order: self.order,
            phase,
            entries: self
                .entries
                .iter()
                .map(|e| e.embed(phase))
                .collect::<Result<_>>()?,
        })
    }

    /// `self · M` for a log matrix `M`; each term is an index rotation.
    pub fn mul_log(&self, m: &LogMatrix) -> Result<CycMatrix> {
        if self.order != m.order() {
            return Err(Error::Dimension(format!(
                "orders {} and {}",
                self.order,
                m.order()
            )));
        }
        let k = lcm(self.phase as u64, m.phase() as u64) as u32;
        let lhs = self.embed(k)?;
        let rhs = m.lift_phase(k)?;
        let n = self.order;
        let ku = k as usize;
        let entries = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = vec![0i128; ku];
                for l in 0..n {
                    let shift = rhs.get(l, j) as usize;
                    for (e, &c) in lhs.get(i, l).coeffs().iter().enumerate() {
                        if c != 0 {
                            let slot = &mut acc[(e + shift) % ku];
                            *slot = slot
                                .checked_add(c)
                                .ok_or_else(|| Error::overflow("matrix product"))?;
                        }
                    }
                }
                CycInt::from_coeffs(k, acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix {
            order: n,
            phase: k,
            entries,
        })
    }

    /// General product of two exact matrices.
    pub fn mul(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.order != other.order {
            return Err(Error::Dimension(format!(
                "orders {} and {}",
                self.order, other.order
            )));
        }
        let k = lcm(self.phase as u64, other.phase as u64) as u32;
        let (a, b) = (self.embed(k)?, other.embed(k)?);
        let n = self.order;
        let entries = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                (0..n).try_fold(CycInt::zero(k), |acc, l| {
                    acc.add(&a.get(i, l).mul(b.get(l, j))?)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix {
            order: n,
            phase: k,
            entries,
        })
    }

    pub fn scale(&self, factor: i128) -> Result<CycMatrix> {
        Ok(CycMatrix {
            order: self.order,
            phase: self.phase,
            entries: self
                .entries
                .iter()
                .map(|e| e.scale(factor))
                .collect::<Result<_>>()?,
        })
    }

    pub fn reduce(&self) -> Result<CycMatrix> {
        Ok(CycMatrix {
            order: self.order,
            phase: self.phase,
            entries: self
                .entries
                .par_iter()
                .map(|e| e.reduce())
                .collect::<Result<_>>()?,
        })
    }

    /// Entrywise equality in the cyclotomic ring (phases are unified first).
    pub fn equals(&self, other: &CycMatrix) -> Result<bool> {
        if self.order != other.order {
            return Ok(false);
        }
        let k = lcm(self.phase as u64, other.phase as u64) as u32;
        let (a, b) = (self.embed(k)?, other.embed(k)?);
        a.entries
            .par_iter()
            .zip(b.entries.par_iter())
            .map(|(x, y)| x.equals(y))
            .try_fold(|| true, |ok, r| r.map(|eq| ok && eq))
            .try_reduce(|| true, |x, y| Ok(x && y))
    }

    pub fn is_scalar_identity(&self, value: i128) -> Result<bool> {
        for i in 0..self.order {
            for j in 0..self.order {
                let target = if i == j { value } else { 0 };
                if self.get(i, j).as_integer()? != Some(target) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
