//! Command-line surface: verification, classification, derivation, divisors,
//! torsion queries, the genus table and covering branching data.
//!
//! Exit codes: 0 on success or true outcomes, 1 on verification failure or a
//! false predicate, 2 on usage errors. `--json` emits one JSON document.

use clap::{Parser, Subcommand};
use darboux_core::bipoly::parse_bipoly;
use darboux_core::curvefunc::{principal_divisor, CurveFunction};
use darboux_core::darboux::{branching_data, covering, genus_table, BaseValue};
use darboux_core::elliptic::{on_curve, order_of, CurvePoint, WeierstrassCurve};
use darboux_core::evaluations::{
    derive_contiguous, verify, verify_all, Catalog, VerificationReport,
};
use darboux_core::hypergeom::{
    classify_schwartz, exponent_diffs, ExponentDiffs, HpgParams, MAIN_REPRESENTATIVES,
};
use darboux_core::rat::{fmt_rat, parse_rat};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "darboux",
    about = "Exact radical evaluations of algebraic Gauss hypergeometric functions on Darboux curves",
    version
)]
struct Cli {
    /// Catalog file; falls back to $DARBOUX_CATALOG, then the bundled catalog
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Emit a single JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one record by exact Puiseux-coefficient comparison
    Verify {
        #[arg(long)]
        id: String,
        /// comparison order in t (t = x on genus 0, t = sqrt x on E3..E6)
        #[arg(long, default_value_t = 25)]
        order: i64,
    },
    /// Verify every record of the catalog
    VerifyAll {
        #[arg(long, default_value_t = 25)]
        order: i64,
    },
    /// Classify a hypergeometric equation by Schwartz type
    Classify {
        /// exponent differences "e0,e1,einf"
        #[arg(long, conflicts_with = "params")]
        diffs: Option<String>,
        /// parameters "A,B,C"
        #[arg(long)]
        params: Option<String>,
    },
    /// Derive the evaluation of a contiguous 2F1 from a base record
    Derive {
        #[arg(long)]
        base: String,
        /// target parameters "A,B,C" (an integral shift of the base)
        #[arg(long)]
        target: String,
        /// verification order for the derived record
        #[arg(long, default_value_t = 15)]
        order: i64,
        /// append the derived record to this user catalog file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Principal divisor of a function f1 + xi f2 on a Darboux curve
    Divisor {
        /// E3, E4, E5 or E6
        #[arg(long)]
        curve: String,
        /// polynomial in x and xi, e.g. "1 + 21*xi - 117*x + 9*x*xi - 234*x^2"
        #[arg(long)]
        function: String,
    },
    /// Order of a rational point in the curve group, within a bound
    Torsion {
        #[arg(long)]
        curve: String,
        /// "x,xi"
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 16)]
        bound: u32,
    },
    /// Genus of the Darboux curves for all 14 types and 4 covering degrees
    GenusTable,
    /// Branching partition of a covering above a base value
    Branching {
        /// covering key, e.g. icosa12, tetra4, phi3
        #[arg(long)]
        covering: String,
        /// 0, 1 or inf (all three when omitted)
        #[arg(long)]
        value: Option<String>,
    },
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Catalog, String> {
    let chosen = path
        .clone()
        .or_else(|| std::env::var_os("DARBOUX_CATALOG").map(PathBuf::from));
    match chosen {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| format!("cannot read catalog {}: {e}", p.display()))?;
            Catalog::from_json(&text).map_err(|e| format!("catalog {}: {e}", p.display()))
        }
        None => Ok(Catalog::builtin()),
    }
}

fn parse_triple(s: &str) -> Result<[darboux_core::Rat; 3], String> {
    let parts: Vec<_> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated rationals, got {s:?}"
        ));
    }
    let mut out = Vec::new();
    for p in parts {
        out.push(parse_rat(p.trim()).map_err(|e| e.to_string())?);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

fn report_line(r: &VerificationReport) -> String {
    if r.ok {
        format!("ok   {} (order {})", r.id, r.order)
    } else {
        format!(
            "FAIL {} (order {}, first mismatch at t^{})",
            r.id,
            r.order,
            r.mismatch_index.unwrap_or(-1)
        )
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify { id, order } => {
            let cat = load_catalog(&cli.catalog)?;
            let rec = cat
                .find(&id)
                .ok_or_else(|| format!("no record with id {id:?}"))?;
            let rep = verify(rec, order).map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&rep).unwrap());
            } else {
                println!("{}", report_line(&rep));
            }
            Ok(if rep.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::VerifyAll { order } => {
            let cat = load_catalog(&cli.catalog)?;
            let reports = verify_all(&cat, order);
            let mut all_ok = true;
            let mut docs = Vec::new();
            for r in &reports {
                match r {
                    Ok(rep) => {
                        all_ok &= rep.ok;
                        if cli.json {
                            docs.push(serde_json::to_value(rep).unwrap());
                        } else {
                            println!("{}", report_line(rep));
                        }
                    }
                    Err(e) => {
                        all_ok = false;
                        if cli.json {
                            docs.push(json!({ "error": e.to_string() }));
                        } else {
                            println!("ERROR {e}");
                        }
                    }
                }
            }
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "order": order,
                        "ok": all_ok,
                        "reports": docs,
                    }))
                    .unwrap()
                );
            } else {
                println!(
                    "{} of {} records verified at order {order}",
                    reports
                        .iter()
                        .filter(|r| r.as_ref().map_or(false, |x| x.ok))
                        .count(),
                    reports.len()
                );
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Classify { diffs, params } => {
            let e = match (diffs, params) {
                (Some(d), _) => {
                    let t = parse_triple(&d)?;
                    ExponentDiffs::new(t[0].clone(), t[1].clone(), t[2].clone())
                }
                (None, Some(p)) => {
                    let t = parse_triple(&p)?;
                    let hp = HpgParams::new(t[0].clone(), t[1].clone(), t[2].clone())
                        .map_err(|e| e.to_string())?;
                    exponent_diffs(&hp)
                }
                (None, None) => return Err("need --diffs or --params".into()),
            };
            let ty = classify_schwartz(&e);
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "diffs": [fmt_rat(&e.e0), fmt_rat(&e.e1), fmt_rat(&e.einf)],
                        "type": ty.to_string(),
                    }))
                    .unwrap()
                );
            } else {
                println!("{e} : {ty}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Derive {
            base,
            target,
            order,
            out,
        } => {
            let cat = load_catalog(&cli.catalog)?;
            let rec = cat
                .find(&base)
                .ok_or_else(|| format!("no record with id {base:?}"))?;
            let t = parse_triple(&target)?;
            let params = HpgParams::new(t[0].clone(), t[1].clone(), t[2].clone())
                .map_err(|e| e.to_string())?;
            let derived = derive_contiguous(&params, rec).map_err(|e| e.to_string())?;
            let rep = verify(&derived, order).map_err(|e| e.to_string())?;
            if let Some(path) = out {
                // derived records go to a user catalog, never the shipped one
                let mut user = if path.exists() {
                    Catalog::from_json(
                        &std::fs::read_to_string(&path).map_err(|e| e.to_string())?,
                    )
                    .map_err(|e| e.to_string())?
                } else {
                    Catalog { records: vec![] }
                };
                user.records.push(derived.clone());
                std::fs::write(&path, user.to_json()).map_err(|e| e.to_string())?;
            }
            let doc = derived.to_doc();
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "record": doc,
                        "verified": rep.ok,
                        "order": order,
                    }))
                    .unwrap()
                );
            } else {
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                println!("{}", report_line(&rep));
            }
            Ok(if rep.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Divisor { curve, function } => {
            let e = WeierstrassCurve::by_key(&curve).map_err(|e| e.to_string())?;
            let bp = parse_bipoly(&function).map_err(|e| e.to_string())?;
            let f = CurveFunction::from_bipoly(Some(&e), &bp).map_err(|e| e.to_string())?;
            let d = principal_divisor(&f).map_err(|e| e.to_string())?;
            if cli.json {
                let entries: Vec<_> = d
                    .iter()
                    .map(|(p, c)| json!({ "point": p.to_string(), "coeff": fmt_rat(c) }))
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "curve": curve,
                        "function": function,
                        "divisor": entries,
                    }))
                    .unwrap()
                );
            } else {
                println!("div({function}) on {curve}:");
                for (p, c) in d.iter() {
                    println!("  {:>6} at {}", fmt_rat(c), p);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Torsion {
            curve,
            point,
            bound,
        } => {
            let e = WeierstrassCurve::by_key(&curve).map_err(|e| e.to_string())?;
            let parts: Vec<_> = point.split(',').collect();
            if parts.len() != 2 {
                return Err("point must be \"x,xi\"".into());
            }
            let p = CurvePoint::Affine(
                parse_rat(parts[0].trim()).map_err(|e| e.to_string())?,
                parse_rat(parts[1].trim()).map_err(|e| e.to_string())?,
            );
            if !on_curve(&e, &p) {
                return Err(format!("{p} does not lie on {curve}"));
            }
            let ord = order_of(&e, &p, bound);
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "curve": curve,
                        "point": p.to_string(),
                        "bound": bound,
                        "order": ord,
                    }))
                    .unwrap()
                );
            } else {
                match ord {
                    Some(n) => println!("{p} has order {n} on {curve}"),
                    None => println!("{p} is non-torsion within bound {bound} on {curve}"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GenusTable => {
            let table = genus_table().map_err(|e| e.to_string())?;
            if cli.json {
                let rows: Vec<_> = table
                    .iter()
                    .map(|(idx, g)| {
                        json!({
                            "type": MAIN_REPRESENTATIVES[*idx].0,
                            "genera": g,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "rows": rows })).unwrap()
                );
            } else {
                println!(
                    "{:<28} {:>4} {:>4} {:>4} {:>4}",
                    "type", "g1", "g2", "g3", "g4"
                );
                for (idx, g) in &table {
                    println!(
                        "{:<28} {:>4} {:>4} {:>4} {:>4}",
                        MAIN_REPRESENTATIVES[*idx].0, g[0], g[1], g[2], g[3]
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Branching {
            covering: key,
            value,
        } => {
            let cov = covering(&key).map_err(|e| e.to_string())?;
            let values: Vec<BaseValue> = match value.as_deref() {
                None => BaseValue::ALL.to_vec(),
                Some("0") => vec![BaseValue::Zero],
                Some("1") => vec![BaseValue::One],
                Some("inf") | Some("infinity") => vec![BaseValue::Infinity],
                Some(other) => return Err(format!("unknown base value {other:?}")),
            };
            let mut rows = Vec::new();
            for v in &values {
                let parts = branching_data(&cov, *v).map_err(|e| e.to_string())?;
                rows.push((v.to_string(), parts));
            }
            if cli.json {
                let doc: Vec<_> = rows
                    .iter()
                    .map(|(v, p)| json!({ "value": v, "partition": p }))
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "covering": key,
                        "degree": cov.degree,
                        "branching": doc,
                    }))
                    .unwrap()
                );
            } else {
                println!("{key} (degree {}):", cov.degree);
                for (v, p) in rows {
                    println!("  over {v}: {p:?}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
