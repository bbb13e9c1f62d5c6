//! Bush-type Butson matrices.
//!
//! A matrix of order `n²` split into `n × n` blocks `H_ij` is Bush-type when
//! `J·H_ij = H_ij·J = δ_ij·n·J`. For an odd prime `p` the projectors
//! `R_a = r_a* r_a` built from the rows of `F(C_p)` give the block-circulant
//! family `B_a` in `BH(p², p)`.

use serde::Serialize;

use crate::bent::{check_bent, BentCertificate, LogVector};
use crate::butson::{product, verify_hadamard, CycMatrix, LogMatrix};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::numtheory::{exact_sqrt, is_prime};

/// Largest prime accepted by [`verify_projector_algebra`].
pub const PROJECTOR_ALGEBRA_MAX_P: u32 = 13;

fn odd_prime(p: u32) -> Result<()> {
    if p == 2 || !is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// `R_a` in log form: entry `(i, j)` is `a(j − i) mod p`.
pub fn projector(p: u32, a: u32) -> Result<LogMatrix> {
    odd_prime(p)?;
    if a >= p {
        return Err(Error::InvalidArgument(format!(
            "residue {a} not reduced mod {p}"
        )));
    }
    Ok(LogMatrix::from_fn(p as usize, p, |i, j| {
        a as i64 * (j as i64 - i as i64)
    }))
}

/// Checks `R_a² = pR_a`, `R_a* = R_a`, `R_aR_b = 0` for `a ≠ b` and
/// `Σ_a R_a² = p²I` with exact block arithmetic.
pub fn verify_projector_algebra(p: u32) -> Result<bool> {
    odd_prime(p)?;
    if p > PROJECTOR_ALGEBRA_MAX_P {
        return Err(Error::InvalidArgument(format!(
            "p = {p} exceeds {PROJECTOR_ALGEBRA_MAX_P}"
        )));
    }
    let rs: Vec<LogMatrix> = (0..p).map(|a| projector(p, a)).collect::<Result<_>>()?;
    let zero = CycMatrix::scalar_identity(p as usize, p, 0);
    let mut sum_sq = zero.clone();
    for (a, ra) in rs.iter().enumerate() {
        if ra.conj_transpose() != *ra {
            return Ok(false);
        }
        for (b, rb) in rs.iter().enumerate() {
            let prod = product(ra, rb)?;
            if a == b {
                if !prod.equals(&CycMatrix::from_log(ra).scale(p as i128)?)? {
                    return Ok(false);
                }
                sum_sq = sum_sq.add(&prod)?;
            } else if !prod.equals(&zero)? {
                return Ok(false);
            }
        }
    }
    sum_sq.is_scalar_identity((p as i128) * (p as i128))
}

/// A Butson matrix of order `n²` with verified Bush block structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BushMatrix {
    base: LogMatrix,
    block_size: usize,
}

impl BushMatrix {
    /// Verifies that `base` is Hadamard and Bush-type with blocks of size
    /// `√order`.
    pub fn new(base: LogMatrix) -> Result<Self> {
        let n = exact_sqrt(base.order() as u64).ok_or_else(|| {
            Error::Dimension(format!("order {} is not a perfect square", base.order()))
        })? as usize;
        if !verify_hadamard(&base) {
            return Err(Error::NotHadamard);
        }
        if let Some(block) = first_bad_block(&base, n) {
            return Err(Error::NotBushType(block));
        }
        Ok(BushMatrix {
            base,
            block_size: n,
        })
    }

    pub fn base(&self) -> &LogMatrix {
        &self.base
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn phase(&self) -> u32 {
        self.base.phase()
    }

    pub fn into_inner(self) -> LogMatrix {
        self.base
    }
}

/// Index `I·n + J` of the first block `H_IJ` breaking the block-sum rule.
pub fn first_bad_block(m: &LogMatrix, n: usize) -> Option<usize> {
    let k = m.phase();
    let target = |bi: usize, bj: usize| if bi == bj { n as i128 } else { 0 };
    for bi in 0..n {
        for bj in 0..n {
            let ok = (0..n).all(|t| {
                let row = CycInt::from_exponents(k, (0..n).map(|s| m.get(bi * n + t, bj * n + s)));
                let col = CycInt::from_exponents(k, (0..n).map(|s| m.get(bi * n + s, bj * n + t)));
                [row, col]
                    .iter()
                    .all(|z| z.as_integer().ok().flatten() == Some(target(bi, bj)))
            });
            if !ok {
                return Some(bi * n + bj);
            }
        }
    }
    None
}

/// `B_a`: block `(I, J)` is `R_{(J−I)a mod p}`.
pub fn bush_circulant(p: u32, a: u32) -> Result<BushMatrix> {
    odd_prime(p)?;
    if a == 0 || a >= p {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ a ≤ {}, got {a}",
            p - 1
        )));
    }
    let n = p as usize;
    let pi = p as i64;
    let base = LogMatrix::from_fn(n * n, p, |r, c| {
        let (bi, i) = ((r / n) as i64, (r % n) as i64);
        let (bj, j) = ((c / n) as i64, (c % n) as i64);
        let b = ((bj - bi) * a as i64).rem_euclid(pi);
        b * (j - i)
    });
    BushMatrix::new(base)
}

/// `M² = √order · M̄`, which makes every column of `M` a conjugate
/// self-dual `M`-bent vector.
pub fn conjugate_self_bent_check(m: &LogMatrix) -> Result<bool> {
    let s = exact_sqrt(m.order() as u64)
        .ok_or_else(|| Error::Dimension(format!("order {} is not a perfect square", m.order())))?;
    let lhs = product(m, m)?;
    let rhs = CycMatrix::from_log(&m.conj()).scale(s as i128)?;
    lhs.equals(&rhs)
}

/// Result of scaling the diagonal blocks of a Bush-type matrix.
#[derive(Debug, Clone, Serialize)]
pub struct BushModification {
    pub matrix: LogMatrix,
    /// Block `i` constant `u_i(k+1)/2`, claimed self-dual.
    pub self_dual_vector: LogVector,
    /// Block `i` constant `u_i(k−1)/2`, claimed conjugate self-dual.
    pub conjugate_vector: LogVector,
    pub self_dual_certificate: BentCertificate,
    pub conjugate_certificate: BentCertificate,
}

impl BushModification {
    pub fn self_dual_claim_holds(&self) -> bool {
        self.self_dual_certificate.self_dual
    }

    pub fn conjugate_claim_holds(&self) -> bool {
        self.conjugate_certificate.conjugate_self_dual
    }

    /// A description of every claim that failed, if any.
    pub fn falsification(&self) -> Option<String> {
        let mut failures = Vec::new();
        if !self.self_dual_claim_holds() {
            failures.push(format!(
                "vector [{}] is {} for the modified matrix, not self_dual",
                self.self_dual_vector,
                self.self_dual_certificate.kind_label()
            ));
        }
        if !self.conjugate_claim_holds() {
            failures.push(format!(
                "vector [{}] is {} for the modified matrix, not conjugate_self_dual",
                self.conjugate_vector,
                self.conjugate_certificate.kind_label()
            ));
        }
        (!failures.is_empty()).then(|| failures.join("; "))
    }
}

/// Multiplies diagonal block `H_ii` by `ζ_k^{u_i}` (odd `k` only) and
/// certifies the two block-constant vectors with `α = (k ± 1)/2`.
pub fn bush_modify(h: &BushMatrix, u: &[u32]) -> Result<BushModification> {
    let k = h.phase();
    if k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("phase {k} is even")));
    }
    let n = h.block_size();
    if u.len() != n {
        return Err(Error::Dimension(format!(
            "{} residues for {n} block rows",
            u.len()
        )));
    }
    let base = h.base();
    let matrix = LogMatrix::from_fn(n * n, k, |r, c| {
        let extra = if r / n == c / n { u[r / n] } else { 0 };
        (base.get(r, c) + extra) as i64
    });
    if !verify_hadamard(&matrix) {
        return Err(Error::NotHadamard);
    }
    let block_vector =
        |alpha: u32| LogVector::from_fn(n * n, k, |i| u[i / n] as i64 * alpha as i64);
    let self_dual_vector = block_vector(k.div_ceil(2));
    let conjugate_vector = block_vector((k - 1) / 2);
    let self_dual_certificate = check_bent(&matrix, &self_dual_vector)?;
    let conjugate_certificate = check_bent(&matrix, &conjugate_vector)?;
    Ok(BushModification {
        matrix,
        self_dual_vector,
        conjugate_vector,
        self_dual_certificate,
        conjugate_certificate,
    })
}

/// The order-4 Bush-type real Hadamard matrix in phase 4: diagonal blocks
/// `J`, off-diagonal blocks `[[1, −1], [−1, 1]]`.
pub fn quaternary_bush_order4() -> BushMatrix {
    let base = LogMatrix::from_rows(
        4,
        &[
            vec![0, 0, 0, 2],
            vec![0, 0, 2, 0],
            vec![0, 2, 0, 0],
            vec![2, 0, 0, 0],
        ],
    )
    .expect("valid entries");
    BushMatrix::new(base).expect("Bush-type BH(4,4)")
}

#[derive(Debug, Clone, Serialize)]
pub struct QuaternaryBent {
    pub vector: LogVector,
    /// Self-dual `H`-bent.
    pub self_dual: bool,
    /// Conjugate self-dual `(−H)`-bent.
    pub conjugate_for_negated: bool,
}

/// The `2^{2m}` block-constant vectors with blocks `±ζ₄` (log `1` or `3`)
/// for a Bush-type `H ∈ BH(4m², 4)`, each certified against `H` and `−H`.
pub fn bush_quaternary_bents(h: &BushMatrix) -> Result<Vec<QuaternaryBent>> {
    if h.phase() != 4 {
        return Err(Error::InvalidArgument(format!(
            "phase {} is not 4",
            h.phase()
        )));
    }
    let blocks = h.block_size();
    if !blocks.is_multiple_of(2) {
        return Err(Error::Dimension(format!("block size {blocks} is odd")));
    }
    if blocks > 20 {
        return Err(Error::BudgetExceeded {
            size: 1u128 << blocks,
            budget: 1 << 20,
        });
    }
    let negated = h.base().negate()?;
    (0..1u64 << blocks)
        .map(|mask| {
            let vector = LogVector::from_fn(blocks * blocks, 4, |i| {
                if mask >> (blocks - 1 - i / blocks) & 1 == 1 {
                    3
                } else {
                    1
                }
            });
            let self_dual = check_bent(h.base(), &vector)?.self_dual;
            let conjugate_for_negated = check_bent(&negated, &vector)?.conjugate_self_dual;
            Ok(QuaternaryBent {
                vector,
                self_dual,
                conjugate_for_negated,
            })
        })
        .collect()
}
