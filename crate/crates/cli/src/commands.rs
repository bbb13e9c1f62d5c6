use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use butson::bent::{self, BentCertificate, LogVector, SearchMode};
use butson::bush::{bush_circulant, verify_projector_algebra, BushMatrix};
use butson::butson::{
    character_table, is_unbiased, kronecker, sylvester, unitary_order, verify_hadamard,
    AbelianGroupSpec, LogMatrix,
};
use butson::codes::{
    bent_lower_bound, code_from_matrix, covering_radius, has_strength_2, is_self_complementary,
    leducq_upper_bound, reed_muller_1, schmidt_covering_radius, CoveringStrategy, ZkCode,
};
use butson::numtheory::{bent_obstructions, factorize, splitting_profile};
use butson::Error;

use crate::{Command, Construct, CoveringArgs, ModeArg, OutArgs, Verify};

/// Whether the checked property held. Failures to compute are errors.
pub enum Outcome {
    Holds,
    Fails,
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Construct { what } => construct(what),
        Command::Verify { what } => verify(what),
        Command::BentCheck {
            matrix,
            vector,
            json,
        } => bent_check(&matrix, &vector, json),
        Command::BentSearch {
            matrix,
            mode,
            budget,
            json,
        } => bent_search(&matrix, mode, budget, json),
        Command::CoveringRadius(args) => covering(args),
        Command::Obstructions { n, k, json } => obstructions(n, k, json),
        Command::Order {
            matrix,
            max_t,
            json,
        } => order(&matrix, max_t, json),
        Command::Bush {
            p,
            a,
            out,
            verify_algebra,
            json,
        } => bush(p, a, out, verify_algebra, json),
    }
}

fn located(path: &Path, e: Error) -> anyhow::Error {
    match e {
        Error::Parse { line, message } => {
            anyhow::anyhow!("{}:{line}: {message}", path.display())
        }
        other => anyhow::anyhow!("{}: {other}", path.display()),
    }
}

fn read_matrix(path: &Path) -> Result<LogMatrix> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    LogMatrix::parse(&text).map_err(|e| located(path, e))
}

fn read_vector(path: &Path) -> Result<LogVector> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    LogVector::parse(&text).map_err(|e| located(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(value: &Value) {
    println!("{value}");
}

fn write_matrix(m: &LogMatrix, out: &OutArgs) -> Result<Outcome> {
    let text = if out.json {
        format!("{}\n", m.to_json())
    } else {
        m.to_text()
    };
    emit(out.out.as_deref(), &text)?;
    Ok(Outcome::Holds)
}

fn construct(what: Construct) -> Result<Outcome> {
    match what {
        Construct::Fourier { n, factors, out } => {
            let factors = match n {
                Some(n) => vec![n],
                None if factors.is_empty() => bail!("give --n or --factors"),
                None => factors,
            };
            let g = AbelianGroupSpec::new(factors)?;
            write_matrix(&character_table(&g), &out)
        }
        Construct::Sylvester { m, out } => write_matrix(&sylvester(m), &out),
        Construct::Kron { left, right, out } => write_matrix(
            &kronecker(&read_matrix(&left)?, &read_matrix(&right)?),
            &out,
        ),
        Construct::Bush { p, a, out } => write_matrix(bush_circulant(p, a)?.base(), &out),
        Construct::Ksw { k, m, out } => {
            let x = bent::ksw_vector(k, m)?;
            let text = if out.json {
                format!("{}\n", x.to_json())
            } else {
                x.to_text()
            };
            emit(out.out.as_deref(), &text)?;
            Ok(Outcome::Holds)
        }
        Construct::Rm { q, m, out } => {
            let c = reed_muller_1(q, m)?;
            let text = if out.json {
                format!(
                    "{}\n",
                    json!({"n": c.length(), "k": c.modulus(), "words": c.words()})
                )
            } else {
                let mut s = format!("CODE {} {} {}\n", c.length(), c.modulus(), c.size());
                for w in c.words() {
                    s.push_str(&join(w));
                    s.push('\n');
                }
                s
            };
            emit(out.out.as_deref(), &text)?;
            Ok(Outcome::Holds)
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn verify(what: Verify) -> Result<Outcome> {
    match what {
        Verify::Hadamard { matrix, json } => {
            let m = read_matrix(&matrix)?;
            let ok = verify_hadamard(&m);
            if json {
                emit_json(&json!({"n": m.order(), "k": m.phase(), "hadamard": ok}));
            } else {
                println!("hadamard: {ok}");
            }
            Ok(ok.into())
        }
        Verify::Bush { matrix, json } => {
            let m = read_matrix(&matrix)?;
            let (ok, detail) = match BushMatrix::new(m) {
                Ok(b) => (true, format!("block size {}", b.block_size())),
                Err(Error::NotBushType(block)) => {
                    (false, format!("block {block} breaks the row/column sums"))
                }
                Err(e @ (Error::NotHadamard | Error::Dimension(_))) => (false, e.to_string()),
                Err(e) => return Err(e.into()),
            };
            if json {
                emit_json(&json!({"bush_type": ok, "detail": detail}));
            } else {
                println!("bush_type: {ok} ({detail})");
            }
            Ok(ok.into())
        }
        Verify::Unbiased { left, right, json } => {
            let h = read_matrix(&left)?;
            let k = read_matrix(&right)?;
            let z = is_unbiased(&h, &k)?;
            if json {
                emit_json(&json!({
                    "unbiased": z.is_some(),
                    "scalar": z.as_ref().map(|z| z.to_string()),
                }));
            } else {
                match &z {
                    Some(z) => println!("unbiased: true\nscalar: {z}"),
                    None => println!("unbiased: false"),
                }
            }
            Ok(z.is_some().into())
        }
    }
}

fn lift_to_common(h: LogMatrix, x: LogVector) -> Result<(LogMatrix, LogVector)> {
    if h.phase() == x.phase() {
        return Ok((h, x));
    }
    let k = butson::numtheory::lcm(h.phase() as u64, x.phase() as u64) as u32;
    Ok((h.lift_phase(k)?, x.lift_phase(k)?))
}

fn certificate_json(c: &BentCertificate) -> Value {
    json!({
        "kind": c.kind_label(),
        "bent": c.bent,
        "self_dual": c.self_dual,
        "conjugate_self_dual": c.conjugate_self_dual,
        "self_dual_unit": c.self_dual_unit.as_ref().map(|z| z.to_string()),
        "conjugate_unit": c.conjugate_unit.as_ref().map(|z| z.to_string()),
        "dual": c.dual.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
        "dual_entry_roots": c.dual_entry_roots.as_ref().map(|roots| roots
            .iter()
            .map(|r| r.map(|r| json!({"ambient_phase": r.ambient_phase, "exponent": r.exponent})))
            .collect::<Vec<_>>()),
        "self_conjugate_regime": c.self_conjugate_regime,
    })
}

fn certificate_text(c: &BentCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "kind: {}", c.kind_label());
    let _ = writeln!(s, "bent: {}", c.bent);
    let _ = writeln!(s, "self_dual: {}", c.self_dual);
    let _ = writeln!(s, "conjugate_self_dual: {}", c.conjugate_self_dual);
    if let Some(u) = &c.self_dual_unit {
        let _ = writeln!(s, "self_dual_unit: {u}");
    }
    if let Some(u) = &c.conjugate_unit {
        let _ = writeln!(s, "conjugate_unit: {u}");
    }
    let dual: Vec<String> = c.dual.iter().map(|z| z.to_string()).collect();
    let _ = writeln!(s, "dual: {}", dual.join(", "));
    if let Some(roots) = &c.dual_entry_roots {
        let shown: Vec<String> = roots
            .iter()
            .map(|r| match r {
                Some(r) => format!("±zeta_{}^{}", r.ambient_phase, r.exponent),
                None => "not a root of unity".into(),
            })
            .collect();
        let _ = writeln!(s, "dual_entry_roots: {}", shown.join(", "));
    }
    let _ = writeln!(s, "self_conjugate_regime: {}", c.self_conjugate_regime);
    s
}

fn bent_check(matrix: &Path, vector: &Path, json: bool) -> Result<Outcome> {
    let h = read_matrix(matrix)?;
    if !verify_hadamard(&h) {
        bail!("{} is not a Butson Hadamard matrix", matrix.display());
    }
    let (h, x) = lift_to_common(h, read_vector(vector)?)?;
    let cert = bent::check_bent(&h, &x)?;
    if json {
        emit_json(&certificate_json(&cert));
    } else {
        print!("{}", certificate_text(&cert));
    }
    Ok(cert.bent.into())
}

fn bent_search(matrix: &Path, mode: ModeArg, budget: Option<u64>, json: bool) -> Result<Outcome> {
    let h = read_matrix(matrix)?;
    if !verify_hadamard(&h) {
        bail!("{} is not a Butson Hadamard matrix", matrix.display());
    }
    let mode = match mode {
        ModeArg::Any => SearchMode::Any,
        ModeArg::SelfDual => SearchMode::SelfDual,
        ModeArg::ConjugateSelfDual => SearchMode::ConjugateSelfDual,
    };
    let out = bent::search_bent(&h, mode, budget)?;
    if json {
        emit_json(&json!({
            "mode": out.mode,
            "examined": out.examined,
            "total": out.total,
            "complete": out.complete(),
            "hits": out.hits.iter().map(|h| json!({
                "index": h.index,
                "entries": h.vector.entries(),
            })).collect::<Vec<_>>(),
        }));
    } else {
        let mut s = String::new();
        for hit in &out.hits {
            let _ = writeln!(s, "{} {}", hit.index, hit.vector);
        }
        print!("{s}");
        eprintln!(
            "examined {} of {} candidates, {} found",
            out.examined,
            out.total,
            out.hits.len()
        );
    }
    Ok(Outcome::Holds)
}

fn covering(args: CoveringArgs) -> Result<Outcome> {
    let (code, matrix): (ZkCode, Option<LogMatrix>) = match (&args.code_from, &args.rm) {
        (Some(path), _) => {
            let h = read_matrix(path)?;
            if !verify_hadamard(&h) {
                bail!("{} is not a Butson Hadamard matrix", path.display());
            }
            (code_from_matrix(&h)?.1, Some(h))
        }
        (None, Some((q, m))) => (reed_muller_1(*q, *m)?, None),
        (None, None) => bail!("give --code-from or --rm"),
    };
    let strategy = match args.sample {
        Some(samples) => CoveringStrategy::Sampled {
            samples,
            seed: args.seed,
        },
        None => CoveringStrategy::Exhaustive {
            budget: args.budget,
        },
    };
    let radius = covering_radius(&code, strategy)?;
    let self_complementary = is_self_complementary(&code);
    let strength_2 = has_strength_2(&code);
    let upper = leducq_upper_bound(code.length() as u64, code.modulus()).ok();
    let lower = match (&args.bent, &matrix) {
        (Some(path), Some(h)) => {
            let x = read_vector(path)?;
            Some(bent_lower_bound(h, &x).map_err(|e| located(path, e))?)
        }
        _ => None,
    };
    let schmidt = args
        .rm
        .as_ref()
        .and_then(|&(q, m)| schmidt_covering_radius(q as u64, m));

    if args.json {
        emit_json(&json!({
            "radius_or_bound": radius.value,
            "exact": radius.exact,
            "examined": radius.examined,
            "code": {
                "length": code.length(),
                "modulus": code.modulus(),
                "size": code.size(),
                "duplicates_removed": code.duplicates_removed(),
            },
            "upper_bound": upper.map(|u| json!({
                "value": u.value.to_string(),
                "integer": u.integer,
            })),
            "lower_bound": lower.as_ref().map(|l| json!({
                "value": l.bound.value.to_string(),
                "integer": l.bound.integer,
                "witness_min_distance": l.min_distance,
            })),
            "schmidt_formula": schmidt,
            "premises": {
                "self_complementary": self_complementary,
                "strength_2": strength_2,
            },
        }));
    } else {
        if radius.exact {
            println!("covering radius: {}", radius.value);
        } else {
            println!(
                "covering radius >= {} (lower bound from {} samples, seed {})",
                radius.value, radius.examined, args.seed
            );
        }
        println!(
            "code: length {}, modulus {}, {} words ({} duplicates removed)",
            code.length(),
            code.modulus(),
            code.size(),
            code.duplicates_removed()
        );
        println!("self_complementary: {self_complementary}");
        println!("strength_2: {strength_2}");
        if let Some(u) = upper {
            println!("upper bound: {} (integer {})", u.value, u.integer);
        }
        if let Some(l) = &lower {
            println!(
                "lower bound: {} (integer {}, witness min distance {})",
                l.bound.value, l.bound.integer, l.min_distance
            );
        }
        if let Some(s) = schmidt {
            println!("schmidt formula: {s}");
        }
    }
    Ok(Outcome::Holds)
}

fn obstructions(n: u64, k: u64, json: bool) -> Result<Outcome> {
    let report = bent_obstructions(n, k)?;
    let profiles = factorize(n)
        .into_iter()
        .map(|(p, _)| splitting_profile(p, k))
        .collect::<butson::Result<Vec<_>>>()?;
    if json {
        emit_json(&json!({
            "n": n,
            "k": k,
            "rules_out_bent": report.rules_out_bent(),
            "verdicts": report.verdicts,
            "profiles": profiles,
        }));
    } else {
        println!("{report}");
        for p in &profiles {
            println!(
                "prime {}: residue degree f = {}, g = {} primes, ramification index {}",
                p.p, p.f, p.g, p.ramification_exponent
            );
        }
    }
    Ok(Outcome::Holds)
}

fn order(matrix: &Path, max_t: u64, json: bool) -> Result<Outcome> {
    let m = read_matrix(matrix)?;
    if !verify_hadamard(&m) {
        bail!("{} is not a Butson Hadamard matrix", matrix.display());
    }
    let t = unitary_order(&m, max_t)?;
    if json {
        emit_json(&json!({"order": t, "max_t": max_t}));
    } else {
        match t {
            Some(t) => println!("order: {t}"),
            None => println!("order: none up to {max_t}"),
        }
    }
    Ok(t.is_some().into())
}

fn bush(
    p: u32,
    a: Option<u32>,
    out: Option<PathBuf>,
    verify_algebra: bool,
    json: bool,
) -> Result<Outcome> {
    if a.is_none() && !verify_algebra {
        bail!("give --a or --verify-algebra");
    }
    let mut ok = true;
    if verify_algebra {
        ok = verify_projector_algebra(p)?;
        if json {
            emit_json(&json!({"p": p, "projector_algebra": ok}));
        } else {
            println!("projector algebra p={p}: {ok}");
        }
    }
    if let Some(a) = a {
        let b = bush_circulant(p, a)?;
        let text = if json && out.is_some() {
            format!("{}\n", b.base().to_json())
        } else {
            b.base().to_text()
        };
        match out {
            Some(path) => emit(Some(&path), &text)?,
            None if json => emit_json(&serde_json::from_str(&b.base().to_json())?),
            None => emit(None, &text)?,
        }
    }
    Ok(ok.into())
}
