use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use scaledss::certifier::{
    audit_certificate, certify_cosegal, certify_inner_horn, certify_lemma_minus,
    certify_lemma_plus, certify_theta, search_decomposition, verify_certificate, Certificate,
    SearchOptions,
};
use scaledss::config::Limits;
use scaledss::io::{read_json, to_canonical_json, write_json};
use scaledss::scaling::{Collapsed, ScaledComplex};
use scaledss::tower::{
    boundary_face, check_tower_identities, fsr, horn_variants, oplax_square, rev_duality_check,
    thin_audit, tilde_ts1, ts, ts_minus, ts_plus, Face, HornVariant, Tower, TsPart, WScaling,
};
use scaledss::Error;

#[derive(Parser)]
#[command(
    name = "scaledss",
    version,
    about = "Scaled simplicial sets, twisted squares and anodyne certificates"
)]
struct Cli {
    /// Accepted for harness compatibility; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an object and write it as scaled-complex JSON.
    Build {
        #[arg(long, value_enum)]
        object: Object,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        face: Option<String>,
        /// Horn variant: full, plus, hat-minus, bar-plus or bar-minus.
        #[arg(long, default_value = "full")]
        variant: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the thin families of TSⁿ.
    Audit {
        #[command(subcommand)]
        what: AuditWhat,
    },
    /// Produce a certificate for one of the lemmas.
    Certify {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate with both replay paths.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Search for a decomposition of A → B into generator steps.
    Search {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long, default_value_t = scaledss::config::DEFAULT_SEARCH_BUDGET)]
        budget: usize,
        /// Admit the special trivial-cofibration generator.
        #[arg(long)]
        special: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the cosimplicial identities of TS^• and its boundary towers.
    CosimplicialCheck {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Check the orientation-reversing duality ∂^B ≅ ∂^R.
    RevCheck {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum AuditWhat {
    Thin {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "full")]
        part: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    Ts,
    TsPlus,
    TsMinus,
    Face,
    Horn,
    Fsr,
    TildeTs1,
    OplaxSquare,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    Plus,
    Minus,
    Inner,
    Cosegal,
    Theta,
}

/// Outcome of a command: JSON for stdout and whether the check held.
struct Report {
    json: Value,
    ok: bool,
}

fn ok(json: Value) -> Report {
    Report { json, ok: true }
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, Error> {
    v.ok_or_else(|| Error::Input(format!("--{flag} is required here")))
}

fn json_value<T: serde::Serialize>(v: &T) -> Result<Value, Error> {
    serde_json::to_value(v).map_err(|e| Error::Input(e.to_string()))
}

fn emit<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => {
            write_json(path, value)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{}", to_canonical_json(value)?);
            Ok(())
        }
    }
}

fn summary(k: &ScaledComplex) -> Value {
    json!({
        "vertices": k.complex().vertices().len(),
        "simplices_by_dim": k.complex().counts(),
        "thin": k.thin().len(),
    })
}

fn build(
    object: Object,
    n: usize,
    i: Option<usize>,
    face: Option<&str>,
    variant: &str,
) -> Result<ScaledComplex, Error> {
    Ok(match object {
        Object::Ts => ts(n).scaled,
        Object::TsPlus => ts_plus(n),
        Object::TsMinus => ts_minus(n),
        Object::Face => {
            let f: Face = face
                .ok_or_else(|| Error::Input("--face is required for face".into()))?
                .parse()?;
            boundary_face(n, f).0
        }
        Object::Horn => horn_variants(n, need(i, "i")?, variant.parse::<HornVariant>()?)?,
        Object::Fsr => fsr(need(i, "i")?, WScaling::Tilde)?,
        Object::TildeTs1 => tilde_ts1(),
        Object::OplaxSquare => oplax_square(),
    })
}

fn certify(
    lemma: Lemma,
    n: Option<usize>,
    i: Option<usize>,
    limits: Limits,
) -> Result<Certificate, Error> {
    if let Some(n) = n {
        if n > limits.certify_nmax && !matches!(lemma, Lemma::Theta) {
            return Err(Error::Input(format!(
                "n = {n} exceeds the certification bound {}",
                limits.certify_nmax
            )));
        }
    }
    match lemma {
        Lemma::Plus => certify_lemma_plus(need(n, "n")?, need(i, "i")?),
        Lemma::Minus => certify_lemma_minus(need(n, "n")?, need(i, "i")?),
        Lemma::Inner => certify_inner_horn(need(n, "n")?, need(i, "i")?),
        Lemma::Cosegal => certify_cosegal(need(n, "n")?),
        Lemma::Theta => certify_theta(need(i, "i")?),
    }
}

fn verdict(c: &Certificate) -> Result<Report, Error> {
    let v = verify_certificate(c);
    let a = audit_certificate(c);
    if v.ok != a.ok {
        eprintln!("warning: the two replay paths disagree");
    }
    let ok = v.ok && a.ok;
    Ok(Report {
        json: json!({ "verify": json_value(&v)?, "audit": json_value(&a)?, "size": c.size() }),
        ok,
    })
}

fn run(cli: Cli) -> Result<Report, Error> {
    let limits = Limits::from_env();
    match cli.command {
        Command::Build {
            object,
            n,
            i,
            face,
            variant,
            out,
        } => {
            let k = build(object, n, i, face.as_deref(), &variant)?;
            if out.is_none() {
                emit(&k, None)?;
                return Ok(Report {
                    json: Value::Null,
                    ok: true,
                });
            }
            emit(&k, out.as_deref())?;
            Ok(ok(summary(&k)))
        }
        Command::Audit {
            what: AuditWhat::Thin { n, part },
        } => {
            if n > limits.audit_nmax {
                return Err(Error::Input(format!(
                    "n = {n} exceeds the audit bound {}",
                    limits.audit_nmax
                )));
            }
            let r = thin_audit(n, part.parse::<TsPart>()?);
            Ok(Report {
                ok: r.passed(),
                json: json_value(&r)?,
            })
        }
        Command::Certify { lemma, n, i, out } => {
            let c = certify(lemma, n, i, limits)?;
            for note in &c.notes {
                eprintln!("note: {note}");
            }
            if out.is_none() {
                emit(&c, None)?;
                return Ok(Report {
                    json: Value::Null,
                    ok: true,
                });
            }
            emit(&c, out.as_deref())?;
            verdict(&c)
        }
        Command::Verify { cert } => {
            let c: Certificate = read_json(&cert)?;
            verdict(&c)
        }
        Command::Search {
            from,
            to,
            budget,
            special,
            out,
        } => {
            let a: Collapsed = read_json(&from)?;
            let b: Collapsed = read_json(&to)?;
            let opts = SearchOptions {
                budget,
                allow_special: special,
            };
            match search_decomposition(&a, &b, opts) {
                Some(c) => {
                    if out.is_none() {
                        emit(&c, None)?;
                        return Ok(Report {
                            json: Value::Null,
                            ok: true,
                        });
                    }
                    emit(&c, out.as_deref())?;
                    let mut r = verdict(&c)?;
                    r.json["found"] = json!(true);
                    Ok(r)
                }
                None => {
                    eprintln!("no decomposition within budget {budget}; this says nothing about the map itself");
                    Ok(Report {
                        json: json!({ "found": false, "budget": budget }),
                        ok: false,
                    })
                }
            }
        }
        Command::CosimplicialCheck { max_n } => {
            let reports: Vec<_> = Tower::ALL
                .iter()
                .map(|t| check_tower_identities(*t, max_n))
                .collect();
            let ok = reports.iter().all(|r| r.passed());
            Ok(Report {
                json: json_value(&reports)?,
                ok,
            })
        }
        Command::RevCheck { max_n } => {
            let mut levels = Vec::new();
            let mut all = true;
            for n in 0..=max_n {
                match rev_duality_check(n) {
                    Ok(phi) => {
                        levels.push(json!({ "n": n, "ok": true, "map": json_value(phi.vmap())? }))
                    }
                    Err(e) => {
                        all = false;
                        levels.push(json!({ "n": n, "ok": false, "reason": e.to_string() }));
                    }
                }
            }
            Ok(Report {
                json: Value::Array(levels),
                ok: all,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.seed.is_some() {
        eprintln!("note: --seed is ignored, all algorithms are deterministic");
    }
    match run(cli) {
        Ok(report) => {
            if !report.json.is_null() {
                match to_canonical_json(&report.json) {
                    Ok(text) => print!("{text}"),
                    Err(e) => eprintln!("error: {e}"),
                }
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Input(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
