//! Integer-level number theory behind the non-existence results: `p`-parts,
//! self-conjugacy of primes modulo `k`, splitting parameters of `p` in
//! `Z[ζ_k]`, and the obstruction predicates built from them.
//!
//! Primality is by trial division, which is adequate for the inputs this
//! crate sees (below `2^32`).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors with multiplicities, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// Exponent of `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("p-part of zero".into()));
    }
    if p < 2 {
        return Err(Error::InvalidArgument(format!("{p} is not a prime")));
    }
    Ok(p.pow(valuation(n, p)))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Least `f ≥ 1` with `a^f ≡ 1 (mod m)`; requires `gcd(a, m) = 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus 0".into()));
    }
    if m == 1 {
        return Ok(1);
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::InvalidArgument(format!("{a} is not a unit mod {m}")));
    }
    let base = a % m;
    let mut x = base;
    let mut f = 1;
    while x != 1 {
        x = mul_mod(x, base, m);
        f += 1;
    }
    Ok(f)
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not a prime")))
    }
}

fn prime_free_part(k: u64, p: u64) -> u64 {
    k / p.pow(valuation(k, p))
}

/// Some power of `p` is `≡ −1 (mod k/k_p)`. Moduli 1 and 2 hold vacuously.
pub fn is_self_conjugate_prime(p: u64, k: u64) -> Result<bool> {
    require_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let m = prime_free_part(k, p);
    if m <= 2 {
        return Ok(true);
    }
    let mut x = 1u64;
    loop {
        if x == m - 1 {
            return Ok(true);
        }
        x = mul_mod(x, p, m);
        if x == 1 {
            return Ok(false);
        }
    }
}

/// Every prime divisor of `n` is self-conjugate modulo `k`.
pub fn is_self_conjugate(n: u64, k: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    for (p, _) in factorize(n) {
        if !is_self_conjugate_prime(p, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How `p` splits in `Z[ζ_k]`: `pZ[ζ_k] = (𝔭₁⋯𝔭_g)^{φ(k_p)}` with each
/// `𝔭_i` of residue degree `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorizationProfile {
    pub p: u64,
    pub k: u64,
    pub f: u64,
    pub g: u64,
    pub ramification_exponent: u64,
}

impl FactorizationProfile {
    pub fn is_ramified(&self) -> bool {
        self.ramification_exponent > 1
    }
}

pub fn splitting_profile(p: u64, k: u64) -> Result<FactorizationProfile> {
    require_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let m = prime_free_part(k, p);
    let f = multiplicative_order(p, m)?;
    Ok(FactorizationProfile {
        p,
        k,
        f,
        g: totient(m) / f,
        ramification_exponent: totient(k / m),
    })
}

/// Necessary condition for a bent vector with a dual entry in `⟨ζ_k⟩`:
/// `n = 9m²` for `k = 3` and `n = 4m²` for `k = 4`. Returns whether it holds.
pub fn entry_root_obstruction(n: u64, k: u64) -> Result<bool> {
    let c = match k {
        3 => 9,
        4 => 4,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "dual-entry condition is stated for k in {{3, 4}}, not {k}"
            )))
        }
    };
    Ok(n.is_multiple_of(c) && exact_sqrt(n / c).is_some())
}

/// True when `n = 4p²` for a prime `p ≡ 3 (mod 8)`: no real circulant
/// Hadamard matrix of that order exists.
pub fn circulant_real_obstruction(n: u64) -> bool {
    if !n.is_multiple_of(4) {
        return false;
    }
    match exact_sqrt(n / 4) {
        Some(p) => is_prime(p) && p % 8 == 3,
        None => false,
    }
}

/// The phase in which every dual entry of a bent vector must be a root of
/// unity when `n` is self-conjugate modulo `k`: `2k` for even `k`, `4k` for
/// odd `k`. This is an implication only; it says nothing about existence.
pub fn dual_entry_ambient_phase(n: u64, k: u64) -> Result<Option<u64>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if !is_self_conjugate(n, k)? {
        return Ok(None);
    }
    Ok(Some(if k.is_multiple_of(2) { 2 * k } else { 4 * k }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    /// A violation rules out every bent vector for every `H ∈ BH(n, k)`.
    Existence,
    /// A violation only rules out bent vectors with some dual entry in `⟨ζ_k⟩`.
    DualEntryRestriction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub rule: &'static str,
    pub kind: RuleKind,
    pub applicable: bool,
    pub violated: bool,
    pub prime: Option<u64>,
    pub prime_part: Option<u64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub n: u64,
    pub k: u64,
    pub verdicts: Vec<Verdict>,
}

impl ObstructionReport {
    /// Some existence rule is violated: `BH(n, k)` admits no bent vectors.
    pub fn rules_out_bent(&self) -> bool {
        self.verdicts
            .iter()
            .any(|v| v.kind == RuleKind::Existence && v.violated)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.violated)
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, k = {}", self.n, self.k)?;
        writeln!(
            f,
            "{:<26} {:<24} {:>10} {:>8} {:>6}  detail",
            "rule", "kind", "applicable", "violated", "prime"
        )?;
        for v in &self.verdicts {
            let kind = match v.kind {
                RuleKind::Existence => "existence",
                RuleKind::DualEntryRestriction => "dual_entry_restriction",
            };
            let prime = v.prime.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:<26} {:<24} {:>10} {:>8} {:>6}  {}",
                v.rule, kind, v.applicable, v.violated, prime, v.detail
            )?;
        }
        write!(
            f,
            "bent vectors ruled out: {}",
            if self.rules_out_bent() { "yes" } else { "no" }
        )
    }
}

pub const RULE_UNRAMIFIED_SQUARE: &str = "unramified_p_part_square";
pub const RULE_TWO_PART_SQUARE: &str = "two_part_square_k2mod4";
pub const RULE_DUAL_ENTRY_ROOT: &str = "dual_entry_in_k_roots";

/// Evaluates every obstruction rule for bent vectors of `H ∈ BH(n, k)`.
///
/// * For each prime `p | n` with `k_p = 1`, `n_p > 1` and `p` self-conjugate
///   modulo `k`, the exponent of `p` in `n` must be even.
/// * For `k ≡ 2 (mod 4)` with `2` self-conjugate modulo `k` and `n_2 > 1`,
///   `n_2` must be a square.
/// * For `k ∈ {3, 4}`, a dual entry in `⟨ζ_k⟩` forces `n = 9m²` resp. `4m²`.
pub fn bent_obstructions(n: u64, k: u64) -> Result<ObstructionReport> {
    if n < 2 || k < 2 {
        return Err(Error::InvalidArgument(format!(
            "obstructions need n, k >= 2 (got n={n}, k={k})"
        )));
    }
    let mut verdicts = Vec::new();
    for (p, e) in factorize(n) {
        let k_p = p_part(k, p)?;
        let self_conj = is_self_conjugate_prime(p, k)?;
        let applicable = k_p == 1 && self_conj;
        let violated = applicable && e % 2 == 1;
        let n_p = p.pow(e);
        let detail = if k_p != 1 {
            format!("{p} divides k (k_p = {k_p})")
        } else if !self_conj {
            format!("{p} not self-conjugate mod {k}")
        } else {
            format!(
                "n_p = {n_p} = {p}^{e} {}",
                if e % 2 == 0 {
                    "is a square"
                } else {
                    "is not a square"
                }
            )
        };
        verdicts.push(Verdict {
            rule: RULE_UNRAMIFIED_SQUARE,
            kind: RuleKind::Existence,
            applicable,
            violated,
            prime: Some(p),
            prime_part: Some(n_p),
            detail,
        });
    }

    if k % 4 == 2 {
        let e = valuation(n, 2);
        let self_conj = is_self_conjugate_prime(2, k)?;
        let applicable = e > 0 && self_conj;
        let n_2 = 1u64 << e;
        verdicts.push(Verdict {
            rule: RULE_TWO_PART_SQUARE,
            kind: RuleKind::Existence,
            applicable,
            violated: applicable && e % 2 == 1,
            prime: Some(2),
            prime_part: Some(n_2),
            detail: if e == 0 {
                "n is odd".into()
            } else if !self_conj {
                format!("2 not self-conjugate mod {k}")
            } else {
                format!("n_2 = {n_2}")
            },
        });
    }

    if k == 3 || k == 4 {
        let holds = entry_root_obstruction(n, k)?;
        let form = if k == 3 { "9m^2" } else { "4m^2" };
        verdicts.push(Verdict {
            rule: RULE_DUAL_ENTRY_ROOT,
            kind: RuleKind::DualEntryRestriction,
            applicable: true,
            violated: !holds,
            prime: None,
            prime_part: None,
            detail: if holds {
                format!("n = {form}")
            } else {
                format!("n is not of the form {form}: no dual entry lies in <zeta_{k}>")
            },
        });
    }

    Ok(ObstructionReport { n, k, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_part_examples() {
        assert_eq!(p_part(12, 2).unwrap(), 4);
        assert_eq!(p_part(12, 5).unwrap(), 1);
        assert_eq!(p_part(4 * 81, 3).unwrap(), 81);
        assert!(p_part(0, 3).is_err());
    }

    #[test]
    fn self_conjugate_prime_examples() {
        assert!(is_self_conjugate_prime(5, 13).unwrap());
        // powers of 2 mod 7 cycle through {1, 2, 4}; 6 never appears
        let cycle: Vec<u64> = (0..3).map(|j| 2u64.pow(j) % 7).collect();
        assert_eq!(cycle, vec![1, 2, 4]);
        assert!(!is_self_conjugate_prime(2, 7).unwrap());
        assert!(is_self_conjugate_prime(3, 9).unwrap());
        assert!(is_self_conjugate_prime(4, 9).is_err());
    }

    #[test]
    fn self_conjugate_examples() {
        assert!(is_self_conjugate(36, 36).unwrap());
        assert_eq!(8, 9 - 1); // 2^3 = 8 ≡ −1 mod 9
        assert!(is_self_conjugate(1, 17).unwrap());
        // mod 13: 2 has order 12 with 2^6 = 64 ≡ −1; 5^2 ≡ −1
        assert_eq!(64 % 13, 12);
        assert!(is_self_conjugate(10, 13).unwrap());
        // mod 7: 2 fails although 5^3 = 125 ≡ −1
        assert!(!is_self_conjugate(10, 7).unwrap());
    }

    #[test]
    fn splitting_examples() {
        let s = splitting_profile(5, 13).unwrap();
        assert_eq!((s.f, s.g, s.ramification_exponent), (4, 3, 1));
        assert!(!s.is_ramified());
        let s = splitting_profile(3, 9).unwrap();
        assert_eq!((s.f, s.g, s.ramification_exponent), (1, 1, 6));
        assert!(s.is_ramified());
        let s = splitting_profile(2, 7).unwrap();
        assert_eq!((s.f, s.g), (3, 2));
    }

    #[test]
    fn entry_root_examples() {
        assert!(entry_root_obstruction(9, 3).unwrap());
        assert!(entry_root_obstruction(36, 3).unwrap());
        assert!(!entry_root_obstruction(6, 3).unwrap());
        assert!(entry_root_obstruction(16, 4).unwrap());
        assert!(!entry_root_obstruction(8, 4).unwrap());
        assert!(entry_root_obstruction(9, 5).is_err());
    }

    #[test]
    fn obstruction_examples() {
        let r = bent_obstructions(6, 6).unwrap();
        assert!(r
            .verdicts
            .iter()
            .filter(|v| v.rule == RULE_UNRAMIFIED_SQUARE)
            .all(|v| !v.applicable && !v.violated));
        let r = bent_obstructions(5, 13).unwrap();
        assert!(r.rules_out_bent());
        let v = r.violations().next().unwrap();
        assert_eq!((v.rule, v.prime), (RULE_UNRAMIFIED_SQUARE, Some(5)));
        assert!(!bent_obstructions(25, 13).unwrap().rules_out_bent());
        assert!(bent_obstructions(1, 13).is_err());
    }

    #[test]
    fn two_part_rule_for_k_2_mod_4() {
        // 2 is self-conjugate mod 3, so n_2 must be a square for k = 6
        let r = bent_obstructions(6, 6).unwrap();
        let v = r
            .verdicts
            .iter()
            .find(|v| v.rule == RULE_TWO_PART_SQUARE)
            .unwrap();
        assert!(v.applicable && v.violated);
        assert!(bent_obstructions(2, 2).unwrap().rules_out_bent());
        assert!(!bent_obstructions(4, 2).unwrap().rules_out_bent());
        assert!(!bent_obstructions(36, 6).unwrap().rules_out_bent());
        // mod 14 the relevant modulus is 7, where 2 is not self-conjugate
        let r = bent_obstructions(2, 14).unwrap();
        assert!(!r.rules_out_bent());
    }

    #[test]
    fn dual_entry_restriction_never_counts_as_existence() {
        let r = bent_obstructions(3, 3).unwrap();
        assert!(r.violations().any(|v| v.rule == RULE_DUAL_ENTRY_ROOT));
        assert!(!r.rules_out_bent());
    }

    #[test]
    fn circulant_examples() {
        assert!(circulant_real_obstruction(36));
        assert!(!circulant_real_obstruction(4));
        assert!(circulant_real_obstruction(4 * 121));
        assert!(!circulant_real_obstruction(4 * 49));
        assert!(!circulant_real_obstruction(4 * 9 * 4));
    }

    #[test]
    fn ambient_phase_examples() {
        assert_eq!(dual_entry_ambient_phase(9, 3).unwrap(), Some(12));
        assert_eq!(dual_entry_ambient_phase(4, 4).unwrap(), Some(8));
        assert_eq!(dual_entry_ambient_phase(5, 13).unwrap(), Some(52));
        assert_eq!(dual_entry_ambient_phase(2, 7).unwrap(), None);
    }

    #[test]
    fn order_divides_totient_and_fg_identity() {
        for p in (2..50).filter(|&p| is_prime(p)) {
            for k in 1..100 {
                let s = splitting_profile(p, k).unwrap();
                let m = prime_free_part(k, p);
                assert_eq!(totient(m) % s.f, 0);
                assert_eq!(s.f * s.g, totient(m));
            }
        }
    }

    #[test]
    fn self_conjugacy_two_formulations_agree() {
        for p in (2..50).filter(|&p| is_prime(p)) {
            for k in 1..100 {
                let m = prime_free_part(k, p);
                let s = splitting_profile(p, k).unwrap();
                let via_order = m <= 2
                    || (s.f.is_multiple_of(2) && {
                        let mut x = 1u64;
                        for _ in 0..s.f / 2 {
                            x = x * p % m;
                        }
                        x == m - 1
                    });
                assert_eq!(
                    is_self_conjugate_prime(p, k).unwrap(),
                    via_order,
                    "p={p} k={k}"
                );
            }
        }
    }

    #[test]
    fn helpers() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(totient(36), 12);
        assert_eq!(isqrt(80), 8);
        assert_eq!(exact_sqrt(81), Some(9));
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert!(multiplicative_order(2, 8).is_err());
        assert!(is_prime(4294967291));
    }
}
