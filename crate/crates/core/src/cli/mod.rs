//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 internal invariant violation.

pub mod g23;
pub mod report;
pub mod schema;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::groups::DEFAULT_MAX_ORDER;
use crate::intertwiners;
use crate::reps::{self, CatRep, UpTo};
use crate::xmod::CrossedModule;

use report::{sha256_hex, InputDigest, Report};
use schema::{RepJson, XmodJson};

pub const MAX_ORDER_ENV: &str = "CATREP_MAX_GROUP_ORDER";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UpToArg {
    Equality,
    Iso,
}

#[derive(Debug, Parser)]
#[command(name = "catrep", version, about = "Categorical representations of finite crossed modules")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a crossed-module file.
    Validate { xmod: PathBuf },
    /// Enumerate representations of a given dimension.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "equality")]
        up_to: UpToArg,
        xmod: PathBuf,
    },
    /// One-dimensional representations (G-invariant characters of E).
    Chars { xmod: PathBuf },
    /// Monoidal product of two representations.
    Tensor {
        #[arg(long)]
        decompose: bool,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        xmod: PathBuf,
    },
    /// Admissible 1-intertwiner shapes and 2-intertwiner dimensions.
    Hom {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        xmod: PathBuf,
    },
    /// Isomorphism test with an explicit witness.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        xmod: PathBuf,
    },
    /// Regression table for G(2,3).
    VerifyG23,
}

/// Group order cap from the environment.
pub fn max_order() -> Result<usize, CliError> {
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{MAX_ORDER_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

struct Inputs {
    digests: Vec<InputDigest>,
}

impl Inputs {
    fn read<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        self.digests.push(InputDigest { path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        serde_json::from_slice(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    fn xmod(&mut self, path: &Path) -> Result<Arc<CrossedModule>, CliError> {
        let j: XmodJson = self.read(path)?;
        Ok(Arc::new(schema::xmod_from_json(&j, max_order()?)?))
    }

    fn rep(&mut self, path: &Path, m: &Arc<CrossedModule>) -> Result<CatRep, CliError> {
        let j: RepJson = self.read(path)?;
        schema::rep_from_json(&j, m)
    }
}

fn internal<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Internal(e.to_string())
}

fn rep_line(r: &CatRep) -> String {
    format!("dim {} base {:?} chars {:?}", r.dim(), r.base().perms(), r.char_rows())
}

fn execute(cli: &Cli, argv: Vec<String>) -> Result<(Report, bool), CliError> {
    let mut inputs = Inputs { digests: Vec::new() };
    let mut ok = true;
    let (result, summary) = match &cli.command {
        Command::Validate { xmod } => {
            let m = inputs.xmod(xmod)?;
            let c = m.classify();
            let result = json!({
                "valid": true,
                "E_order": m.principal().order(),
                "G_order": m.base().order(),
                "transitive": c.transitive,
                "intransitive": c.intransitive,
                "free": c.free,
            });
            let summary = format!(
                "valid crossed module: |E| = {}, |G| = {}, transitive {}, intransitive {}, free {}",
                m.principal().order(),
                m.base().order(),
                c.transitive,
                c.intransitive,
                c.free
            );
            (result, summary)
        }
        Command::Enumerate { dim, up_to, xmod } => {
            let m = inputs.xmod(xmod)?;
            let (mode, label) = match up_to {
                UpToArg::Equality => (UpTo::Equality, "equality"),
                UpToArg::Iso => (UpTo::Isomorphism, "isomorphism"),
            };
            let all = reps::enumerate_reps(&m, *dim, mode);
            let listed: Vec<Value> = all
                .iter()
                .map(|r| json!({"rep": schema::rep_to_json(r), "indecomposable": r.is_indecomposable()}))
                .collect();
            let mut summary = format!("{} representation(s) of dimension {dim} up to {label}", all.len());
            for r in &all {
                summary.push_str(&format!("\n  {}", rep_line(r)));
            }
            (json!({"dim": dim, "up_to": label, "count": all.len(), "reps": listed}), summary)
        }
        Command::Chars { xmod } => {
            let m = inputs.xmod(xmod)?;
            let one = reps::classify_one_dimensional(&m);
            let chars: Vec<Vec<u32>> = one.iter().map(|r| r.char(0).expmap().to_vec()).collect();
            let exponent = reps::char_exponent(&m);
            let mut summary = format!("{} G-invariant character(s) of E (values ζ_{exponent}^k)", chars.len());
            for c in &chars {
                summary.push_str(&format!("\n  {c:?}"));
            }
            (json!({"exponent": exponent, "count": chars.len(), "characters": chars}), summary)
        }
        Command::Tensor { decompose, a, b, xmod } => {
            let m = inputs.xmod(xmod)?;
            let (ra, rb) = (inputs.rep(a, &m)?, inputs.rep(b, &m)?);
            let prod = reps::boxtimes_rep(&ra, &rb).map_err(internal)?;
            let mut result = json!({"product": schema::rep_to_json(&prod)});
            let mut summary = format!("product: {}", rep_line(&prod));
            if *decompose {
                let (parts, pi) = prod.decompose().map_err(|e| CliError::Input(e.to_string()))?;
                result["parts"] = json!(parts.iter().map(schema::rep_to_json).collect::<Vec<_>>());
                result["permutation"] = json!(pi);
                summary.push_str(&format!("\n{} part(s), permutation {pi:?}", parts.len()));
                for p in &parts {
                    summary.push_str(&format!("\n  {}", rep_line(p)));
                }
            }
            (result, summary)
        }
        Command::Hom { a, b, xmod } => {
            let m = inputs.xmod(xmod)?;
            let (ra, rb) = (inputs.rep(a, &m)?, inputs.rep(b, &m)?);
            hom_report(&ra, &rb)?
        }
        Command::Iso { a, b, xmod } => {
            let m = inputs.xmod(xmod)?;
            let (ra, rb) = (inputs.rep(a, &m)?, inputs.rep(b, &m)?);
            let w = intertwiners::is_isomorphic(&ra, &rb).map_err(internal)?;
            if let Some(w) = &w {
                w.check_all_morphisms().map_err(internal)?;
            }
            let summary = match &w {
                Some(w) => format!("isomorphic; witness shape {}", w.shape()),
                None => "not isomorphic".to_owned(),
            };
            let witness = w.as_ref().map(schema::intertwiner_to_json);
            (json!({"isomorphic": w.is_some(), "witness": witness}), summary)
        }
        Command::VerifyG23 => {
            let checks = g23::verify_g23();
            ok = checks.iter().all(|c| c.pass);
            let width = checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
            let lines: Vec<String> = checks
                .iter()
                .map(|c| {
                    let pad = width - c.name.chars().count();
                    let tag = if c.pass { "PASS" } else { "FAIL" };
                    format!("{tag}  {}{}  {}", c.name, " ".repeat(pad), c.detail)
                })
                .collect();
            (json!({"all_pass": ok, "checks": checks}), lines.join("\n"))
        }
    };
    Ok((Report { command: argv, inputs: inputs.digests, result, summary }, ok))
}

fn hom_report(ra: &CatRep, rb: &CatRep) -> Result<(Value, String), CliError> {
    let orbits = intertwiners::admissible_shapes(ra, rb).map_err(internal)?;
    let mut lines = Vec::new();
    let mut orbit_json = Vec::new();
    for (k, o) in orbits.iter().enumerate() {
        let mut ints = Vec::new();
        for chi in &o.line_characters {
            let h = intertwiners::induced(ra, rb, &[intertwiners::OrbitFiber::line(o.base_cell, chi)])
                .map_err(internal)?;
            let end = intertwiners::two_intertwiner_space(&h, &h).map_err(internal)?;
            ints.push(json!({
                "character": {"exponent": chi.exponent(), "k": chi.expmap()},
                "intertwiner": schema::intertwiner_to_json(&h),
                "end_dimension": end.len(),
                "end_basis": end.iter().map(|p| schema::two_morphism_to_json(p.cell())).collect::<Vec<_>>(),
            }));
        }
        lines.push(format!(
            "orbit {k}: cells {:?}, stabilizer {:?}, permitted {}, line fibers {}",
            o.cells,
            o.stabilizer,
            o.permitted,
            o.line_characters.len()
        ));
        orbit_json.push(json!({
            "cells": o.cells,
            "base_cell": o.base_cell,
            "stabilizer": o.stabilizer,
            "permitted": o.permitted,
            "line_intertwiners": ints,
        }));
    }
    let summary = format!("{} cell orbit(s)\n{}", orbits.len(), lines.join("\n"));
    Ok((json!({"orbits": orbit_json}), summary))
}

/// Runs the command line `args` (program name first), writing to `out` and
/// `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, argv) {
        Ok((report, ok)) => {
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
