//! Bent, self-dual bent and conjugate self-dual bent vectors.
//!
//! A vector `x` with entries in `⟨ζ_k⟩` is `H`-bent when every entry of `Hx`
//! has modulus `√n`. It is self-dual when `Hx = √n·λ·x` and conjugate
//! self-dual when `Hx = √n·λ·x̄` for one unimodular `λ`. Since `√n` is often
//! irrational, the unit is certified through the products `(Hx)_i·x̄_i` (resp.
//! `(Hx)_i·x_i`), which are cyclotomic integers of norm `n` and must all
//! coincide.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::butson::{
    character_table, circulant_from_row, kronecker, product, AbelianGroupSpec, LogMatrix,
};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::numtheory::{dual_entry_ambient_phase, is_self_conjugate, lcm};

/// A vector over `Z_k` standing for `[ζ_k^{x_i}]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LogVector {
    phase: u32,
    entries: Vec<u32>,
}

impl LogVector {
    pub fn new(phase: u32, entries: Vec<u32>) -> Result<Self> {
        if phase == 0 {
            return Err(Error::InvalidArgument("phase must be positive".into()));
        }
        if let Some(bad) = entries.iter().find(|&&e| e >= phase) {
            return Err(Error::InvalidArgument(format!(
                "entry {bad} outside Z_{phase}"
            )));
        }
        Ok(LogVector { phase, entries })
    }

    pub fn from_fn(len: usize, phase: u32, f: impl FnMut(usize) -> i64) -> Self {
        let entries = (0..len)
            .map(f)
            .map(|e| e.rem_euclid(phase as i64) as u32)
            .collect();
        LogVector { phase, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Multiplies every entry by `ζ^c`.
    pub fn shift(&self, c: i64) -> LogVector {
        LogVector::from_fn(self.len(), self.phase, |i| self.entries[i] as i64 + c)
    }

    pub fn conj(&self) -> LogVector {
        LogVector::from_fn(self.len(), self.phase, |i| -(self.entries[i] as i64))
    }

    pub fn lift_phase(&self, new_phase: u32) -> Result<LogVector> {
        if new_phase == 0 || !new_phase.is_multiple_of(self.phase) {
            return Err(Error::InvalidArgument(format!(
                "phase {} does not divide {new_phase}",
                self.phase
            )));
        }
        let m = new_phase / self.phase;
        Ok(LogVector {
            phase: new_phase,
            entries: self.entries.iter().map(|e| e * m).collect(),
        })
    }

    pub fn to_text(&self) -> String {
        format!(
            "VEC {} {}\n{}\n",
            self.len(),
            self.phase,
            self.entries_line()
        )
    }

    /// The entries as one space-separated line.
    pub fn entries_line(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        parts.join(" ")
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({"n": self.len(), "k": self.phase, "entries": self.entries}).to_string()
    }

    /// Parses `VEC <n> <k>` followed by a line of `n` entries (`#` comments
    /// allowed before the header), or the JSON form
    /// `{"n": …, "k": …, "entries": […]}`.
    pub fn parse(input: &str) -> Result<LogVector> {
        if input.trim_start().starts_with('{') {
            #[derive(Deserialize)]
            struct VectorFile {
                n: usize,
                k: u32,
                entries: Vec<u32>,
            }
            let f: VectorFile = serde_json::from_str(input).map_err(|e| Error::Parse {
                line: e.line(),
                message: e.to_string(),
            })?;
            if f.entries.len() != f.n {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("n={} but {} entries", f.n, f.entries.len()),
                });
            }
            return LogVector::new(f.k, f.entries);
        }
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = loop {
            match lines.next() {
                None => return Err(err(1, "missing `VEC <n> <k>` header".into())),
                Some((_, l)) if l.starts_with('#') => continue,
                Some(h) => break h,
            }
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "VEC" {
            return Err(err(
                hline,
                format!("expected `VEC <n> <k>`, found `{header}`"),
            ));
        }
        let n: usize = fields[1]
            .parse()
            .map_err(|_| err(hline, format!("bad length `{}`", fields[1])))?;
        let k: u32 = fields[2]
            .parse()
            .map_err(|_| err(hline, format!("bad phase `{}`", fields[2])))?;
        if k == 0 {
            return Err(err(hline, "phase must be positive".into()));
        }
        let (eline, body) = match lines.next() {
            Some(line) => line,
            None if n == 0 => (hline + 1, ""),
            None => return Err(err(hline + 1, "missing entry line".into())),
        };
        let entries = body
            .split_whitespace()
            .map(|t| {
                let v: u32 = t
                    .parse()
                    .map_err(|_| err(eline, format!("bad entry `{t}`")))?;
                if v >= k {
                    return Err(err(eline, format!("entry {v} outside Z_{k}")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != n {
            return Err(err(
                eline,
                format!("expected {n} entries, found {}", entries.len()),
            ));
        }
        if let Some((l, extra)) = lines.next() {
            return Err(err(l, format!("unexpected trailing content `{extra}`")));
        }
        LogVector::new(k, entries)
    }
}

impl fmt::Display for LogVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.entries_line())
    }
}

/// A dual entry `y = (Hx)_i/√n` recognised as `±ζ_A^{exponent}`, where `A`
/// is the ambient phase (`2k` for even `k`, `4k` for odd `k`). Found from
/// `y² = (Hx)_i²/n ∈ Z[ζ_k]`, so the sign of `y` is not determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualEntryRoot {
    pub ambient_phase: u32,
    pub exponent: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Any,
    SelfDual,
    ConjugateSelfDual,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(SearchMode::Any),
            "self-dual" | "self_dual" => Ok(SearchMode::SelfDual),
            "conjugate-self-dual" | "conjugate_self_dual" => Ok(SearchMode::ConjugateSelfDual),
            other => Err(Error::InvalidArgument(format!(
                "unknown search mode `{other}`"
            ))),
        }
    }
}

/// The outcome of [`check_bent`]. A vector may be self-dual and conjugate
/// self-dual at once (e.g. real cases), so these are independent flags.
#[derive(Debug, Clone, Serialize)]
pub struct BentCertificate {
    pub bent: bool,
    pub self_dual: bool,
    pub conjugate_self_dual: bool,
    /// `Hx = √n·y`, canonically reduced.
    pub dual: Vec<CycInt>,
    /// The common value of `(Hx)_i·x̄_i` when self-dual (`√n·λ`).
    pub self_dual_unit: Option<CycInt>,
    /// The common value of `(Hx)_i·x_i` when conjugate self-dual (`√n·λ`).
    pub conjugate_unit: Option<CycInt>,
    /// Root-of-unity status of each dual entry (`None` when `y_i` is not a
    /// root of unity). Present for bent vectors only.
    pub dual_entry_roots: Option<Vec<Option<DualEntryRoot>>>,
    /// `n` is self-conjugate modulo `k`, so every dual entry must be a root
    /// of unity of the ambient phase.
    pub self_conjugate_regime: bool,
}

impl BentCertificate {
    pub fn matches(&self, mode: SearchMode) -> bool {
        match mode {
            SearchMode::Any => self.bent,
            SearchMode::SelfDual => self.self_dual,
            SearchMode::ConjugateSelfDual => self.conjugate_self_dual,
        }
    }

    pub fn kind_label(&self) -> &'static str {
        match (self.bent, self.self_dual, self.conjugate_self_dual) {
            (false, _, _) => "not_bent",
            (true, true, true) => "self_dual+conjugate_self_dual",
            (true, true, false) => "self_dual",
            (true, false, true) => "conjugate_self_dual",
            (true, false, false) => "bent",
        }
    }
}

/// Reusable exact bent test against one matrix.
pub struct BentChecker<'a> {
    h: &'a LogMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BentFlags {
    pub bent: bool,
    pub self_dual: bool,
    pub conjugate_self_dual: bool,
}

impl BentFlags {
    pub fn matches(&self, mode: SearchMode) -> bool {
        match mode {
            SearchMode::Any => self.bent,
            SearchMode::SelfDual => self.self_dual,
            SearchMode::ConjugateSelfDual => self.conjugate_self_dual,
        }
    }
}

impl<'a> BentChecker<'a> {
    pub fn new(h: &'a LogMatrix) -> Self {
        BentChecker { h }
    }

    fn check_dims(&self, x: &[u32], phase: u32) -> Result<()> {
        if x.len() != self.h.order() {
            return Err(Error::Dimension(format!(
                "vector of length {} for an order-{} matrix",
                x.len(),
                self.h.order()
            )));
        }
        if phase != self.h.phase() {
            return Err(Error::PhaseMismatch {
                left: self.h.phase(),
                right: phase,
            });
        }
        Ok(())
    }

    /// `(Hx)_i` as a group-ring count vector.
    pub fn dual_entry(&self, i: usize, x: &[u32]) -> CycInt {
        let k = self.h.phase();
        CycInt::from_exponents(k, self.h.row(i).iter().zip(x).map(|(&a, &b)| (a + b) % k))
    }

    /// Fast classification without building a certificate; stops at the
    /// first entry of the wrong modulus.
    pub fn flags(&self, x: &[u32]) -> Result<BentFlags> {
        self.check_dims(x, self.h.phase())?;
        let n = self.h.order() as i128;
        let mut sd_unit: Option<CycInt> = None;
        let mut csd_unit: Option<CycInt> = None;
        let (mut sd, mut csd) = (true, true);
        for (i, &xi) in x.iter().enumerate() {
            let y = self.dual_entry(i, x);
            if y.norm_sq_integer()? != Some(n) {
                return Ok(BentFlags {
                    bent: false,
                    self_dual: false,
                    conjugate_self_dual: false,
                });
            }
            if sd {
                sd = agrees(&mut sd_unit, y.rotate(-(xi as i64)))?;
            }
            if csd {
                csd = agrees(&mut csd_unit, y.rotate(xi as i64))?;
            }
        }
        Ok(BentFlags {
            bent: true,
            self_dual: sd,
            conjugate_self_dual: csd,
        })
    }

    pub fn certify(&self, x: &LogVector) -> Result<BentCertificate> {
        self.check_dims(x.entries(), x.phase())?;
        let n = self.h.order();
        let k = self.h.phase();
        let dual: Vec<CycInt> = (0..n)
            .map(|i| self.dual_entry(i, x.entries()).reduce())
            .collect::<Result<_>>()?;
        let mut bent = true;
        for y in &dual {
            if y.norm_sq_integer()? != Some(n as i128) {
                bent = false;
                break;
            }
        }
        let common = |sign: i64| -> Result<Option<CycInt>> {
            let mut unit = None;
            for (y, &xi) in dual.iter().zip(x.entries()) {
                if !agrees(&mut unit, y.rotate(sign * xi as i64))? {
                    return Ok(None);
                }
            }
            Ok(unit)
        };
        let (self_dual_unit, conjugate_unit) = if bent && n > 0 {
            (common(-1)?, common(1)?)
        } else {
            (None, None)
        };
        let self_conjugate_regime = n > 0 && is_self_conjugate(n as u64, k as u64)?;
        let dual_entry_roots = if bent && n > 0 {
            Some(
                dual.iter()
                    .map(|y| classify_dual_entry(y, n as i128))
                    .collect::<Result<_>>()?,
            )
        } else {
            None
        };
        Ok(BentCertificate {
            bent,
            self_dual: self_dual_unit.is_some(),
            conjugate_self_dual: conjugate_unit.is_some(),
            dual,
            self_dual_unit,
            conjugate_unit,
            dual_entry_roots,
            self_conjugate_regime,
        })
    }
}

fn agrees(slot: &mut Option<CycInt>, value: CycInt) -> Result<bool> {
    let value = value.reduce()?;
    match slot {
        None => {
            *slot = Some(value);
            Ok(true)
        }
        Some(existing) => Ok(existing.coeffs() == value.coeffs()),
    }
}

/// Recognises `y = z/√n` as a root of unity through `y² = z²/n`.
fn classify_dual_entry(z: &CycInt, n: i128) -> Result<Option<DualEntryRoot>> {
    let k = z.phase();
    let Some(y_sq) = z.mul(z)?.div_exact(n)? else {
        return Ok(None);
    };
    let ambient = if k.is_multiple_of(2) { 2 * k } else { 4 * k };
    let half = ambient / 2;
    let Some((sign, t)) = y_sq.embed(half)?.is_root_of_unity()? else {
        return Ok(None);
    };
    // y² = ζ_{A/2}^j  ⇒  y = ±ζ_A^j
    let j = if sign < 0 { (t + half / 2) % half } else { t };
    Ok(Some(DualEntryRoot {
        ambient_phase: ambient,
        exponent: j,
    }))
}

/// Exact certificate for `x` against `h`.
pub fn check_bent(h: &LogMatrix, x: &LogVector) -> Result<BentCertificate> {
    BentChecker::new(h).certify(x)
}

/// The Kumar–Scholtz–Welch vector: `f(c) = c₁c_{t+1} + … + c_t c_{2t}` over
/// `Z_k^{2t}` in lexicographic order.
pub fn ksw_vector(k: u32, m: usize) -> Result<LogVector> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("phase {k} < 2")));
    }
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "m = {m} must be even and positive"
        )));
    }
    let g = AbelianGroupSpec::elementary(k, m);
    let t = m / 2;
    Ok(LogVector::from_fn(g.order(), k, |idx| {
        let c = g.digits(idx);
        (0..t).map(|i| c[i] as i64 * c[i + t] as i64).sum()
    }))
}

/// One vector emitted by [`search_bent`], with its position in the
/// enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub index: u64,
    pub vector: LogVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub mode: SearchMode,
    pub hits: Vec<SearchHit>,
    /// Candidates examined.
    pub examined: u64,
    /// Size of the full candidate space.
    pub total: u64,
}

impl SearchOutcome {
    pub fn complete(&self) -> bool {
        self.examined == self.total
    }
}

/// Exhaustive search for bent vectors of the requested kind.
///
/// Candidates are base-`k` counters over the entries, most significant first.
/// With `SearchMode::Any` the first entry is pinned to 0 (multiplying a bent
/// vector by a root of unity keeps it bent); the self-dual modes scan the
/// whole space. `budget` limits the scan to a prefix of that order. The
/// space is split into blocks by the two leading free digits and searched in
/// parallel on the current rayon pool; hits come back in index order.
pub fn search_bent(h: &LogMatrix, mode: SearchMode, budget: Option<u64>) -> Result<SearchOutcome> {
    let n = h.order();
    let k = h.phase() as u64;
    let pinned = usize::from(mode == SearchMode::Any && n > 0);
    let free = n - pinned;
    let total = (k as u128)
        .checked_pow(free as u32)
        .filter(|&t| t <= u64::MAX as u128)
        .ok_or(Error::BudgetExceeded {
            size: (k as u128).saturating_pow(free as u32),
            budget: u64::MAX as u128,
        })? as u64;
    let limit = budget.map_or(total, |b| b.min(total));
    let block = k.pow(free.saturating_sub(2) as u32);
    let blocks = limit.div_ceil(block.max(1));
    let checker = BentChecker::new(h);

    let per_block: Vec<Vec<SearchHit>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * block;
            let end = (start + block).min(limit);
            let mut hits = Vec::new();
            let mut x = vec![0u32; n];
            decode(start, k, &mut x[pinned..]);
            for index in start..end {
                if checker.flags(&x)?.matches(mode) {
                    hits.push(SearchHit {
                        index,
                        vector: LogVector {
                            phase: k as u32,
                            entries: x.clone(),
                        },
                    });
                }
                increment(&mut x[pinned..], k as u32);
            }
            Ok(hits)
        })
        .collect::<Result<_>>()?;

    Ok(SearchOutcome {
        mode,
        hits: per_block.into_iter().flatten().collect(),
        examined: limit,
        total,
    })
}

fn decode(mut index: u64, k: u64, digits: &mut [u32]) {
    for d in digits.iter_mut().rev() {
        *d = (index % k) as u32;
        index /= k;
    }
}

fn increment(digits: &mut [u32], k: u32) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < k {
            return;
        }
        *d = 0;
    }
}

/// `x ⊗ y` in log form.
pub fn tensor_bent(x: &LogVector, y: &LogVector) -> Result<LogVector> {
    if x.phase != y.phase {
        return Err(Error::PhaseMismatch {
            left: x.phase,
            right: y.phase,
        });
    }
    if x.is_empty() || y.is_empty() {
        return Err(Error::Dimension(
            "tensor product with an empty vector".into(),
        ));
    }
    let m = y.len();
    Ok(LogVector::from_fn(x.len() * m, x.phase, |i| {
        (x.entries[i / m] + y.entries[i % m]) as i64
    }))
}

/// Row-major flattening: `x_{(i−1)n+j} = h_{ij}`.
pub fn vectorize(m: &LogMatrix) -> LogVector {
    LogVector {
        phase: m.phase(),
        entries: m.entries().to_vec(),
    }
}

pub fn devectorize(x: &LogVector, n: usize) -> Result<LogMatrix> {
    if x.len() != n * n {
        return Err(Error::Dimension(format!("length {} is not {n}^2", x.len())));
    }
    LogMatrix::new(n, x.phase, x.entries.clone())
}

/// The three tensor constructions of bent vectors from a Hadamard matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TensorVariant {
    /// `Φ(H)` is conjugate self-dual for `H* ⊗ H*`.
    Adjoint = 1,
    /// For commuting `H, M`: `Φ(M)` is self-dual for `H ⊗ H̄`.
    Commuting = 2,
    /// For amicable `H, M` (`HM* = MH*`) with `M` symmetric: `Φ(M)` is
    /// conjugate self-dual for `H ⊗ Hᵀ`.
    Amicable = 3,
}

impl TryFrom<u8> for TensorVariant {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(TensorVariant::Adjoint),
            2 => Ok(TensorVariant::Commuting),
            3 => Ok(TensorVariant::Amicable),
            _ => Err(Error::InvalidArgument(format!("tensor variant {v}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TensorCheck {
    pub variant: TensorVariant,
    pub matrix: LogMatrix,
    pub vector: LogVector,
    pub certificate: BentCertificate,
    pub predicted: SearchMode,
}

impl TensorCheck {
    pub fn prediction_holds(&self) -> bool {
        self.certificate.matches(self.predicted)
    }
}

/// Builds the tensor matrix and vector of the chosen variant and certifies
/// the vector. The `Adjoint` variant only uses `h`.
pub fn tensor_corollary_check(
    h: &LogMatrix,
    m: &LogMatrix,
    variant: TensorVariant,
) -> Result<TensorCheck> {
    let (matrix, vector, predicted) = match variant {
        TensorVariant::Adjoint => {
            let hs = h.conj_transpose();
            (
                kronecker(&hs, &hs),
                vectorize(h),
                SearchMode::ConjugateSelfDual,
            )
        }
        TensorVariant::Commuting => {
            same_shape(h, m)?;
            if !product(h, m)?.equals(&product(m, h)?)? {
                return Err(Error::NotCommuting);
            }
            (kronecker(h, &h.conj()), vectorize(m), SearchMode::SelfDual)
        }
        TensorVariant::Amicable => {
            same_shape(h, m)?;
            if !m.is_symmetric() {
                return Err(Error::NotSymmetric);
            }
            let lhs = product(h, &m.conj_transpose())?;
            let rhs = product(m, &h.conj_transpose())?;
            if !lhs.equals(&rhs)? {
                return Err(Error::NotAmicable);
            }
            (
                kronecker(h, &h.transpose()),
                vectorize(m),
                SearchMode::ConjugateSelfDual,
            )
        }
    };
    let certificate = check_bent(&matrix, &vector)?;
    Ok(TensorCheck {
        variant,
        matrix,
        vector,
        certificate,
        predicted,
    })
}

fn same_shape(a: &LogMatrix, b: &LogMatrix) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::Dimension(format!(
            "orders {} and {}",
            a.order(),
            b.order()
        )));
    }
    if a.phase() != b.phase() {
        return Err(Error::PhaseMismatch {
            left: a.phase(),
            right: b.phase(),
        });
    }
    Ok(())
}

/// The circulant with first column `x`, together with the certificate of `x`
/// against `F(C_n)` (both lifted to phase `lcm(n, k)`). The circulant is
/// Hadamard exactly when `x` is `F(C_n)`-bent.
pub fn circulant_bent_bridge(x: &LogVector) -> Result<(LogMatrix, BentCertificate)> {
    let n = x.len();
    if n == 0 {
        return Err(Error::Dimension("empty vector".into()));
    }
    let circ = circulant_from_row(x);
    let certificate = if n == 1 {
        check_bent(&LogMatrix::new(1, x.phase, vec![0])?, x)?
    } else {
        let big = lcm(n as u64, x.phase as u64) as u32;
        let fourier = character_table(&AbelianGroupSpec::cyclic(n as u32)).lift_phase(big)?;
        check_bent(&fourier, &x.lift_phase(big)?)?
    };
    Ok((circ, certificate))
}

/// Checks that every dual entry of a bent certificate is a root of unity of
/// the predicted ambient phase whenever `n` is self-conjugate modulo `k`.
/// Returns `None` outside that regime.
pub fn ambient_root_consistency(h: &LogMatrix, cert: &BentCertificate) -> Result<Option<bool>> {
    let Some(ambient) = dual_entry_ambient_phase(h.order() as u64, h.phase() as u64)? else {
        return Ok(None);
    };
    let Some(roots) = &cert.dual_entry_roots else {
        return Ok(None);
    };
    Ok(Some(roots.iter().all(|r| {
        matches!(r, Some(DualEntryRoot { ambient_phase, .. }) if *ambient_phase as u64 == ambient)
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butson::{sylvester, verify_hadamard};
    use crate::cyclotomic::float_oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fourier(factors: Vec<u32>) -> LogMatrix {
        character_table(&AbelianGroupSpec::new(factors).unwrap())
    }

    #[test]
    fn vector_validation_and_format() {
        assert!(LogVector::new(3, vec![0, 3]).is_err());
        let v = LogVector::new(4, vec![0, 0, 0, 2]).unwrap();
        assert_eq!(v.to_text(), "VEC 4 4\n0 0 0 2\n");
        assert_eq!(LogVector::parse(&v.to_text()).unwrap(), v);
        assert_eq!(LogVector::parse(&v.to_json()).unwrap(), v);
        assert_eq!(LogVector::parse("# c\n\nVEC 4 4\n0 0 0 2").unwrap(), v);
        for (bad, line) in [
            ("VEC 4 4\n0 0 0\n", 2),
            ("VEC 2 2\n0 2\n", 2),
            ("VX 2 2\n0 1\n", 1),
            ("VEC 2 2\n", 2),
            ("VEC 2 2\n0 1\n1 1\n", 3),
        ] {
            match LogVector::parse(bad) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{bad:?}"),
                other => panic!("{bad:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn ksw_on_sylvester_16() {
        // f = x1x3 + x2x4 over Z_2^4
        let h = sylvester(4);
        let x = ksw_vector(2, 4).unwrap();
        let g = AbelianGroupSpec::elementary(2, 4);
        for i in 0..16 {
            let c = g.digits(i);
            assert_eq!(x.entries()[i], (c[0] * c[2] + c[1] * c[3]) % 2);
        }
        let cert = check_bent(&h, &x).unwrap();
        assert!(cert.conjugate_self_dual);
        // real vectors: x̄ = x, so both flags hold
        assert!(cert.self_dual);
        assert_eq!(cert.kind_label(), "self_dual+conjugate_self_dual");
    }

    #[test]
    fn all_ones_is_not_bent_for_f3() {
        let cert = check_bent(&fourier(vec![3]), &LogVector::new(3, vec![0; 3]).unwrap()).unwrap();
        assert!(!cert.bent);
        assert_eq!(cert.dual[0].as_integer().unwrap(), Some(3));
        assert!(cert.dual[1].is_zero().unwrap());
        assert_eq!(cert.kind_label(), "not_bent");
    }

    #[test]
    fn ksw_small_cases() {
        let x = ksw_vector(3, 2).unwrap();
        assert_eq!(x.entries(), &[0, 0, 0, 0, 1, 2, 0, 2, 1]);
        assert!(
            check_bent(&fourier(vec![3, 3]), &x)
                .unwrap()
                .conjugate_self_dual
        );
        assert_eq!(ksw_vector(2, 2).unwrap().entries(), &[0, 0, 0, 1]);
        assert!(
            check_bent(&fourier(vec![5, 5]), &ksw_vector(5, 2).unwrap())
                .unwrap()
                .conjugate_self_dual
        );
        assert!(ksw_vector(3, 3).is_err());
        assert!(ksw_vector(3, 0).is_err());
    }

    #[test]
    fn ksw_catalog_is_conjugate_self_dual() {
        for k in 2..=7u32 {
            for m in [2usize, 4] {
                if m == 4 && k > 5 {
                    continue; // k^8 entries, covered by the m = 2 runs
                }
                let h = fourier(vec![k; m]);
                let cert = check_bent(&h, &ksw_vector(k, m).unwrap()).unwrap();
                assert!(cert.conjugate_self_dual, "k={k} m={m}");
                // F(C_k^m) x = k^{m/2} x̄ exactly: the unit is the integer k^{m/2}
                assert_eq!(
                    cert.conjugate_unit.as_ref().unwrap().as_integer().unwrap(),
                    Some((k as i128).pow(m as u32 / 2))
                );
            }
        }
    }

    #[test]
    fn flags_agree_with_certificate() {
        let h = fourier(vec![3, 3]);
        let checker = BentChecker::new(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x = LogVector::from_fn(9, 3, |_| rng.gen_range(0..3));
            let f = checker.flags(x.entries()).unwrap();
            let c = checker.certify(&x).unwrap();
            assert_eq!(
                (f.bent, f.self_dual, f.conjugate_self_dual),
                (c.bent, c.self_dual, c.conjugate_self_dual)
            );
        }
    }

    #[test]
    fn bent_test_matches_float_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for h in [
            fourier(vec![3, 3]),
            fourier(vec![4]),
            fourier(vec![2, 2]),
            fourier(vec![6]),
        ] {
            let n = h.order();
            for _ in 0..100 {
                let x = LogVector::from_fn(n, h.phase(), |_| rng.gen_range(0..h.phase() as i64));
                let cert = check_bent(&h, &x).unwrap();
                let float_bent = cert
                    .dual
                    .iter()
                    .all(|y| (float_oracle::modulus_sq(y) - n as f64).abs() < 1e-9);
                assert_eq!(cert.bent, float_bent);
            }
        }
    }

    #[test]
    fn scalar_invariance_of_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let cases = [
            (fourier(vec![3, 3]), ksw_vector(3, 2).unwrap()),
            (sylvester(4), ksw_vector(2, 4).unwrap()),
            (fourier(vec![4, 4]), ksw_vector(4, 2).unwrap()),
        ];
        for trial in 0..100 {
            let (h, x) = &cases[trial % cases.len()];
            let y = if trial % 2 == 0 {
                x.clone()
            } else {
                LogVector::from_fn(x.len(), x.phase(), |_| rng.gen_range(0..x.phase() as i64))
            };
            let c = rng.gen_range(0..h.phase() as i64);
            let a = check_bent(h, &y).unwrap();
            let b = check_bent(h, &y.shift(c)).unwrap();
            assert_eq!(a.bent, b.bent);
            // the unit picks up ζ^{∓c} resp. ζ^{±c}; the kinds survive
            assert_eq!(a.self_dual, b.self_dual);
            assert_eq!(a.conjugate_self_dual, b.conjugate_self_dual);
        }
    }

    #[test]
    fn search_small_spaces() {
        let out = search_bent(&sylvester(1), SearchMode::Any, None).unwrap();
        assert!(out.hits.is_empty());
        assert!(out.complete());
        assert_eq!(out.total, 2);

        let h = fourier(vec![3, 3]);
        let out = search_bent(&h, SearchMode::ConjugateSelfDual, None).unwrap();
        assert_eq!(out.total, 19683);
        let ksw = ksw_vector(3, 2).unwrap();
        assert!(out.hits.iter().any(|hit| hit.vector == ksw));
        assert!(out.hits.windows(2).all(|w| w[0].index < w[1].index));
    }

    #[test]
    fn search_agrees_with_direct_filter_on_f_c2_squared() {
        let h = sylvester(2);
        let found: Vec<Vec<u32>> = search_bent(&h, SearchMode::Any, None)
            .unwrap()
            .hits
            .into_iter()
            .map(|hit| hit.vector.entries().to_vec())
            .collect();
        // independent filter over all 16 ±1 vectors, integer Walsh sums
        let mut expected = Vec::new();
        for bits in 0..16u32 {
            let x: Vec<i64> = (0..4)
                .map(|j| if bits >> (3 - j) & 1 == 1 { -1 } else { 1 })
                .collect();
            let ok = (0..4).all(|i| {
                let s: i64 = (0..4)
                    .map(|j| if h.get(i, j) == 1 { -x[j] } else { x[j] })
                    .sum();
                s * s == 4
            });
            if ok && x[0] == 1 {
                expected.push((0..4).map(|j| u32::from(x[j] == -1)).collect::<Vec<_>>());
            }
        }
        assert_eq!(found, expected);
        assert_eq!(found.len(), 4);
    }

    #[test]
    fn search_f_c4_count_regression() {
        // Brute force is its own oracle; the count is frozen here.
        let h = fourier(vec![4]);
        let out = search_bent(&h, SearchMode::Any, None).unwrap();
        assert_eq!(out.total, 64);
        assert_eq!(out.hits.len(), F_C4_ANY_COUNT);
        for hit in &out.hits {
            assert!(check_bent(&h, &hit.vector).unwrap().bent);
            assert_eq!(hit.vector.entries()[0], 0);
        }
    }
    const F_C4_ANY_COUNT: usize = 8;

    #[test]
    fn search_budget_is_a_prefix() {
        let h = fourier(vec![3, 3]);
        let full = search_bent(&h, SearchMode::Any, None).unwrap();
        let part = search_bent(&h, SearchMode::Any, Some(1000)).unwrap();
        assert_eq!(part.examined, 1000);
        assert!(!part.complete());
        let expected: Vec<_> = full
            .hits
            .iter()
            .filter(|h| h.index < 1000)
            .cloned()
            .collect();
        assert_eq!(part.hits, expected);
    }

    #[test]
    fn search_is_worker_count_independent() {
        let h = fourier(vec![4, 2]);
        let runs: Vec<Vec<SearchHit>> = [1, 2, 3]
            .iter()
            .map(|&w| {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .unwrap()
                    .install(|| search_bent(&h, SearchMode::Any, None).unwrap().hits)
            })
            .collect();
        assert_eq!(runs[0], runs[1]);
        assert_eq!(runs[0], runs[2]);
    }

    #[test]
    fn no_bent_vectors_for_f_c6() {
        // k = 6 ≡ 2 mod 4 and n_2 = 2 is not a square
        assert!(search_bent(&fourier(vec![6]), SearchMode::Any, None)
            .unwrap()
            .hits
            .is_empty());
    }

    #[test]
    fn tensor_products() {
        let x = ksw_vector(3, 2).unwrap();
        let h = fourier(vec![3, 3]);
        let xx = tensor_bent(&x, &x).unwrap();
        assert!(
            check_bent(&kronecker(&h, &h), &xx)
                .unwrap()
                .conjugate_self_dual
        );
        let y = ksw_vector(2, 2).unwrap();
        let yy = tensor_bent(&y, &y).unwrap();
        let s4 = sylvester(4);
        assert!(check_bent(&s4, &yy).unwrap().conjugate_self_dual);
        assert!(
            check_bent(&s4, &ksw_vector(2, 4).unwrap())
                .unwrap()
                .conjugate_self_dual
        );
        let empty = LogVector::new(3, vec![]).unwrap();
        assert!(tensor_bent(&x, &empty).is_err());
        assert!(tensor_bent(&x, &y).is_err());
    }

    #[test]
    fn vectorize_round_trip() {
        let one = LogMatrix::new(1, 2, vec![1]).unwrap();
        assert_eq!(vectorize(&one).len(), 1);
        let ex = LogMatrix::from_rows(
            8,
            &[
                vec![0, 0, 0, 0],
                vec![0, 2, 4, 6],
                vec![0, 4, 0, 4],
                vec![0, 6, 4, 2],
            ],
        )
        .unwrap();
        let v = vectorize(&ex);
        assert_eq!(
            v.entries(),
            &[0, 0, 0, 0, 0, 2, 4, 6, 0, 4, 0, 4, 0, 6, 4, 2]
        );
        assert_eq!(devectorize(&v, 4).unwrap(), ex);
        assert!(devectorize(&v, 3).is_err());
    }

    #[test]
    fn tensor_corollaries() {
        let f3 = fourier(vec![3]);
        let c1 = tensor_corollary_check(&f3, &f3, TensorVariant::Adjoint).unwrap();
        assert!(c1.prediction_holds());
        assert!(c1.certificate.conjugate_self_dual);
        let f2 = sylvester(1);
        let c2 = tensor_corollary_check(&f2, &f2, TensorVariant::Commuting).unwrap();
        assert!(c2.prediction_holds());
        let c3 = tensor_corollary_check(&f2, &f2, TensorVariant::Amicable).unwrap();
        assert!(c3.prediction_holds());
        assert!(c3.certificate.conjugate_self_dual);
        // F(C_3) is symmetric and commutes with itself
        let c2 = tensor_corollary_check(&f3, &f3, TensorVariant::Commuting).unwrap();
        assert!(c2.prediction_holds());
    }

    #[test]
    fn tensor_corollary_preconditions() {
        let f3 = fourier(vec![3]);
        let shifted_rows =
            LogMatrix::from_fn(3, 3, |i, j| f3.get((i + 1) % 3, j) as i64 + j as i64);
        assert!(verify_hadamard(&shifted_rows));
        assert!(matches!(
            tensor_corollary_check(&f3, &shifted_rows, TensorVariant::Commuting),
            Err(Error::NotCommuting)
        ));
        assert!(matches!(
            tensor_corollary_check(&f3, &shifted_rows, TensorVariant::Amicable),
            Err(Error::NotSymmetric)
        ));
        let m = LogMatrix::from_fn(3, 3, |i, j| f3.get(i, j) as i64 + (i + j) as i64);
        assert!(m.is_symmetric());
        assert!(matches!(
            tensor_corollary_check(&f3, &m, TensorVariant::Amicable),
            Err(Error::NotAmicable)
        ));
        assert_eq!(
            TensorVariant::try_from(2).unwrap(),
            TensorVariant::Commuting
        );
        assert!(TensorVariant::try_from(4).is_err());
    }

    #[test]
    fn circulant_bridge() {
        let x = LogVector::new(4, vec![0, 0, 0, 2]).unwrap();
        let (c, cert) = circulant_bent_bridge(&x).unwrap();
        assert!(verify_hadamard(&c));
        assert!(cert.bent);
        let z = LogVector::new(3, vec![0; 4]).unwrap();
        let (c, cert) = circulant_bent_bridge(&z).unwrap();
        assert!(!verify_hadamard(&c) && !cert.bent);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let n = rng.gen_range(2..7);
            let k = [2u32, 3, 4, 6][rng.gen_range(0..4)];
            let x = LogVector::from_fn(n, k, |_| rng.gen_range(0..k as i64));
            let (c, cert) = circulant_bent_bridge(&x).unwrap();
            assert_eq!(verify_hadamard(&c), cert.bent, "{x:?}");
        }
    }

    #[test]
    fn dual_entries_in_self_conjugate_regime() {
        // n = 9, k = 3: 3 | k so self-conjugacy is vacuous; ambient phase 12
        let h = fourier(vec![3, 3]);
        let out = search_bent(&h, SearchMode::Any, None).unwrap();
        assert!(!out.hits.is_empty());
        for hit in &out.hits {
            let cert = check_bent(&h, &hit.vector).unwrap();
            assert!(cert.self_conjugate_regime);
            assert_eq!(ambient_root_consistency(&h, &cert).unwrap(), Some(true));
        }
        // F(C_4): n = 4, k = 4, ambient 8
        let h = fourier(vec![4]);
        for hit in search_bent(&h, SearchMode::Any, None).unwrap().hits {
            let cert = check_bent(&h, &hit.vector).unwrap();
            assert_eq!(ambient_root_consistency(&h, &cert).unwrap(), Some(true));
        }
    }

    #[test]
    fn dual_root_classification_matches_float() {
        let h = fourier(vec![3, 3]);
        let cert = check_bent(&h, &ksw_vector(3, 2).unwrap()).unwrap();
        for (y, root) in cert.dual.iter().zip(cert.dual_entry_roots.unwrap()) {
            let root = root.unwrap();
            let (re, im) = float_oracle::eval(y);
            let theta =
                2.0 * std::f64::consts::PI * root.exponent as f64 / root.ambient_phase as f64;
            // y/3 = ±(cos θ, sin θ)
            let (a, b) = (re / 3.0, im / 3.0);
            let plus = (a - theta.cos()).abs() + (b - theta.sin()).abs();
            let minus = (a + theta.cos()).abs() + (b + theta.sin()).abs();
            assert!(plus.min(minus) < 1e-9);
        }
    }

    #[test]
    fn dimension_errors() {
        let h = fourier(vec![3]);
        assert!(matches!(
            check_bent(&h, &LogVector::new(3, vec![0, 0]).unwrap()),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            check_bent(&h, &LogVector::new(4, vec![0, 0, 0]).unwrap()),
            Err(Error::PhaseMismatch { .. })
        ));
        assert!("sideways".parse::<SearchMode>().is_err());
    }
}
