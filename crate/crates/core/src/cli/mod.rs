//! Command-line front end.
//!
//! Exit codes: 0 success (pass / globally conjugate), 1 failure (verification
//! failed / not element-conjugate), 2 malformed input or usage error,
//! 3 element-conjugate but not globally conjugate.

pub mod docs;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::conjugacy::{build_rho_2n, compare, so_counterexample_criterion};
use crate::error::{invalid, Result};
use crate::group::GroupElement;
use crate::linalg::sample::reflection;
use crate::linalg::{omega, RationalMatrix};
use crate::pseudochar::{
    verify_gl, verify_go, verify_gsp, verify_o, verify_so_even, verify_so_odd, verify_sp, PseudocharData,
    VerificationReport, VerifyOptions, DEFAULT_BUDGET, DEFAULT_MAX_VIOLATIONS,
};
use crate::relations::{f_relation, g_relation, gl_relation, RelationPolynomial};
use crate::rep::{conjugate_rep, pl_table, similitude_character, Family, Representation, DEFAULT_MAX_ORDER};
use docs::{read_document, read_representation, representation_json, Document, GroupSpec};

#[derive(Debug, Parser)]
#[command(name = "pseudochar", version, about = "Exact pseudocharacter verification and conjugacy tests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RelationFamily {
    Gl,
    O,
    Go,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gl,
    O,
    Go,
    So,
    Sp,
    Gsp,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Gl => Family::GL,
            FamilyArg::O => Family::O,
            FamilyArg::Go => Family::GO,
            FamilyArg::So => Family::SO,
            FamilyArg::Sp => Family::Sp,
            FamilyArg::Gsp => Family::GSp,
        }
    }
}

#[derive(Debug, clap::Args)]
struct SearchArgs {
    /// Relation evaluations per family before sampling.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest group a matrix closure may generate.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the symbolic relation polynomials.
    EmitRelations {
        #[arg(long, value_enum)]
        family: RelationFamily,
        #[arg(long)]
        n: usize,
        /// Only this `j` (default: every admissible one).
        #[arg(long)]
        j: Option<usize>,
    },
    /// Check pseudocharacter axioms for data or for the traces of a representation.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Override the declared dimension.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_VIOLATIONS)]
        max_violations: usize,
        /// Matrix model for the P checks of the even special orthogonal case.
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Decide element conjugacy and global conjugacy of two representations.
    ConjugacyCompare {
        rep1: PathBuf,
        rep2: PathBuf,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Build the Z/4 x Z/4 representation into SO_2n and test the counterexample criterion.
    SoCounterexample {
        #[arg(long)]
        n: usize,
        /// Directory for the representation and report files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI in-process; `args` includes the program name.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => CliOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cmd: Command) -> Result<(i32, String)> {
    match cmd {
        Command::EmitRelations { family, n, j } => emit_relations(family, n, j).map(|s| (0, s)),
        Command::Verify {
            files,
            family,
            dim,
            max_violations,
            model,
            search,
        } => {
            let opts = VerifyOptions {
                budget: search.budget,
                seed: search.seed,
                max_violations,
            };
            cmd_verify(&files, family.into(), dim, model.as_deref(), &search, &opts)
        }
        Command::ConjugacyCompare {
            rep1,
            rep2,
            family,
            search,
        } => cmd_conjugacy(&rep1, &rep2, family.into(), &search),
        Command::SoCounterexample { n, out, search } => cmd_counterexample(n, out.as_deref(), &search),
    }
}

fn emit_relations(family: RelationFamily, n: usize, j: Option<usize>) -> Result<String> {
    let build = |j: usize| -> Result<RelationPolynomial> {
        match family {
            RelationFamily::Gl => gl_relation(n),
            RelationFamily::O => f_relation(n, j),
            RelationFamily::Go => g_relation(n, j),
        }
    };
    let mut out = String::new();
    match (family, j) {
        (RelationFamily::Gl, _) | (_, Some(_)) => {
            writeln!(out, "{}", build(j.unwrap_or(0))?).unwrap();
        }
        (_, None) => {
            let name = if matches!(family, RelationFamily::O) { "F" } else { "G" };
            for j in 0..=n.div_ceil(2) {
                writeln!(out, "{name}[j={j}] = {}", build(j)?).unwrap();
            }
        }
    }
    Ok(out)
}

/// Pseudocharacter data for a representation read in `family`; in the even
/// special orthogonal case `P = pl ∘ ρ` is attached.
fn data_from_rep(rep: &Representation, family: Family) -> Result<PseudocharData> {
    let grp = rep.group().clone();
    let t = rep.traces()?;
    let l = match family {
        Family::GO => Some(similitude_character(rep, &RationalMatrix::identity(rep.dim()))?),
        Family::GSp => Some(similitude_character(rep, &omega(rep.dim())?)?),
        _ => None,
    };
    let d = PseudocharData::new(grp, rep.dim(), t, l)?;
    if family == Family::SO && rep.dim().is_multiple_of(2) {
        d.with_p(pl_table(rep)?)
    } else {
        Ok(d)
    }
}

fn run_verifier(
    d: &PseudocharData,
    family: Family,
    model: Option<&Representation>,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    match family {
        Family::GL => verify_gl(d, opts),
        Family::O => verify_o(d, opts),
        Family::GO => verify_go(d, opts),
        Family::Sp => verify_sp(d, opts),
        Family::GSp => verify_gsp(d, opts),
        Family::SO if d.dim() % 2 == 1 => verify_so_odd(d, opts),
        Family::SO => verify_so_even(d, model, opts),
    }
}

fn cmd_verify(
    files: &[PathBuf],
    family: Family,
    dim: Option<usize>,
    model: Option<&Path>,
    search: &SearchArgs,
    opts: &VerifyOptions,
) -> Result<(i32, String)> {
    let model = model.map(|p| read_representation(p, search.max_order)).transpose()?;
    let mut reports = Vec::new();
    for path in files {
        let (mut d, own_model) = match read_document(path, search.max_order)? {
            Document::Pseudocharacter(d) => (d, None),
            Document::Representation(r) => (data_from_rep(&r, family)?, Some(r)),
            Document::Group(..) => {
                return Err(invalid(format!("{} holds a group, not data to verify", path.display())))
            }
        };
        if let Some(n) = dim {
            d = d.with_dim(n);
        }
        let m = model.as_ref().or(own_model.as_ref()).filter(|m| m.dim() == d.dim());
        reports.push((path, run_verifier(&d, family, m, opts)?));
    }
    let code = if reports.iter().all(|(_, r)| r.passed()) { 0 } else { 1 };
    let out = if search.json {
        let docs: Vec<Value> = reports
            .iter()
            .map(|(p, r)| {
                let mut v = serde_json::to_value(r).expect("report serializes");
                v["file"] = json!(p.display().to_string());
                v
            })
            .collect();
        let v = if docs.len() == 1 { docs[0].clone() } else { Value::Array(docs) };
        serde_json::to_string_pretty(&v).expect("json") + "\n"
    } else {
        let mut s = String::new();
        for (p, r) in &reports {
            writeln!(s, "file {}", p.display()).unwrap();
            write!(s, "{r}").unwrap();
        }
        s
    };
    Ok((code, out))
}

fn cmd_conjugacy(p1: &Path, p2: &Path, family: Family, search: &SearchArgs) -> Result<(i32, String)> {
    let r1 = read_representation(p1, search.max_order)?;
    let r2 = read_representation(p2, search.max_order)?;
    let opts = VerifyOptions {
        budget: search.budget,
        seed: search.seed,
        max_violations: DEFAULT_MAX_VIOLATIONS,
    };
    let v = compare(&r1, &r2, family, &opts)?;
    let out = if search.json {
        serde_json::to_string_pretty(&v).expect("json") + "\n"
    } else {
        v.to_string()
    };
    Ok((v.exit_code(), out))
}

fn z4_squared_spec() -> GroupSpec {
    GroupSpec::Product {
        factors: vec![GroupSpec::Cyclic { m: 4 }, GroupSpec::Cyclic { m: 4 }],
    }
}

fn cmd_counterexample(n: usize, out: Option<&Path>, search: &SearchArgs) -> Result<(i32, String)> {
    let rep = build_rho_2n(n)?;
    let opts = VerifyOptions {
        budget: search.budget,
        seed: search.seed,
        max_violations: DEFAULT_MAX_VIOLATIONS,
    };
    let report = so_counterexample_criterion(&rep, &opts)?;
    let mut text = if search.json {
        serde_json::to_string_pretty(&report).expect("json") + "\n"
    } else {
        report.to_string()
    };
    if let Some(dir) = out {
        let dim = 2 * n;
        let spec = z4_squared_spec();
        let gens = [GroupElement(4), GroupElement(1)];
        let conj = conjugate_rep(&rep, &reflection(dim))?;
        let files = [
            (format!("rho_{dim}.json"), representation_json(&spec, &rep, &gens)),
            (format!("rho_{dim}_conjugate.json"), representation_json(&spec, &conj, &gens)),
            (format!("criterion_{dim}.json"), serde_json::to_value(&report).expect("json")),
        ];
        std::fs::create_dir_all(dir).map_err(|e| invalid(format!("{}: {e}", dir.display())))?;
        for (name, v) in files {
            let path = dir.join(&name);
            let body = serde_json::to_string_pretty(&v).expect("json") + "\n";
            std::fs::write(&path, body).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            if !search.json {
                writeln!(text, "wrote {}", path.display()).unwrap();
            }
        }
    }
    Ok((if report.holds { 0 } else { 1 }, text))
}
