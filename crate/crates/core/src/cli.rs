//! The `csx` command line: build truncations, run the verification suites,
//! compute homology and construct circle bundles.
//!
//! Every command produces one JSON document; `--format text` renders the
//! same content as `key: value` lines.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bundles::{
    boundary_degree, chern_cochain, decorate_from_cochain, e_of, e_via_pullback,
    tetrahedron_boundary, total_space, Decoration, TwoCochain,
};
use crate::checks::{self, CheckResult};
use crate::error::{Error, Result};
use crate::homology::{homology_report, normalized_complex, HomologyReport, OverflowPolicy};
use crate::perm::Permutation;
use crate::simpset::{build_c, build_delta, build_s, build_sc, twisted_product, GroupKind, SimplicialSet};

/// Largest truncation any command will build.
pub const HARD_CAP: usize = 9;
pub const DEFAULT_MAX_DIM: usize = 8;
/// Homology at the full default truncation of S takes minutes.
pub const DEFAULT_HOMOLOGY_MAX_DIM: usize = 7;
pub const CAP_ENV: &str = "CSX_MAX_DIM";

#[derive(Parser, Debug)]
#[command(name = "csx", version, about = "Crossed simplicial groups, circular permutations and circle bundles")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Overflow::Bigint)]
    pub overflow: Overflow,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Overflow {
    Bigint,
    Checked,
}

impl From<Overflow> for OverflowPolicy {
    fn from(o: Overflow) -> Self {
        match o {
            Overflow::Bigint => OverflowPolicy::Bigint,
            Overflow::Checked => OverflowPolicy::Checked,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "S")]
    S,
    #[value(name = "C")]
    C,
    #[value(name = "SC")]
    Sc,
    /// The standard simplex `Delta[--simplex]`.
    Delta,
    /// `C x_t Delta[--simplex]`.
    Twisted,
    /// The orbit `E(circ g)` of `--g`.
    #[value(name = "E")]
    E,
    /// A bundle total space from `--decoration` or `--cochain`.
    Bundle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Crossed,
    Lemma,
    Upsilon,
    All,
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct BundleArgs {
    /// Decoration JSON file.
    #[arg(long)]
    pub decoration: Option<PathBuf>,
    /// Cochain on the base triangles, as `id:value,...`.
    #[arg(long)]
    pub cochain: Option<String>,
    /// Base simplicial set JSON for `--cochain` (default: boundary of the
    /// tetrahedron).
    #[arg(long)]
    pub base: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Total and nondegenerate simplex counts per dimension.
    Enumerate {
        #[arg(value_enum)]
        which: Target,
        #[arg(long)]
        max_dim: Option<usize>,
        /// Permutation word such as `2,0,1`.
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value_t = 1)]
        simplex: usize,
        /// Include the full face and degeneracy tables.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Run a verification suite; exits 1 on the first failing check.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        /// Restrict `identities` to one object.
        #[arg(long, value_enum)]
        target: Option<Target>,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value_t = 2)]
        simplex: usize,
    },
    /// Integer homology of a truncation.
    Homology {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value_t = 2)]
        simplex: usize,
        /// Write each boundary matrix as `boundary_<k>.txt` here.
        #[arg(long)]
        dump_matrices: Option<PathBuf>,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Build a circle bundle and report its cochain, square check and
    /// homology.
    Bundle {
        #[arg(long)]
        max_dim: Option<usize>,
        #[command(flatten)]
        bundle: BundleArgs,
    },
}

/// Result of one command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    /// Preferred text rendering, when generic flattening is not enough.
    pub text: Option<String>,
    pub success: bool,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::Overflow
        | Error::IdentityViolation(_)
        | Error::NotSimplicial(_)
        | Error::NotClosed(_)
        | Error::TargetMismatch => 1,
        _ => 2,
    }
}

/// The cap in force: [`HARD_CAP`], lowered by `CSX_MAX_DIM` if set.
pub fn effective_cap(env: Option<&str>) -> Result<usize> {
    match env {
        None => Ok(HARD_CAP),
        Some(v) => {
            let v: usize = v
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("{CAP_ENV}={v:?}: {e}")))?;
            Ok(v.min(HARD_CAP))
        }
    }
}

fn capped(requested: usize, cap: usize) -> Result<usize> {
    if requested > cap {
        Err(Error::CapExceeded { requested, cap })
    } else {
        Ok(requested)
    }
}

fn parse_g(g: &Option<String>) -> Result<Permutation> {
    g.as_deref()
        .ok_or_else(|| Error::Parse("--g is required for this target".into()))?
        .parse()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_decoration(args: &BundleArgs) -> Result<Decoration> {
    match (&args.decoration, &args.cochain) {
        (Some(_), Some(_)) => Err(Error::Parse("give --decoration or --cochain, not both".into())),
        (Some(path), None) => Decoration::from_json(&read(path)?),
        (None, cochain) => {
            let base = match &args.base {
                Some(path) => Arc::new(SimplicialSet::from_json(&read(path)?)?),
                None => tetrahedron_boundary(),
            };
            let triangles = if base.max_dim() >= 2 { base.count(2) } else { 0 };
            let c = TwoCochain::parse(cochain.as_deref().unwrap_or(""), triangles)?;
            decorate_from_cochain(base, &c)
        }
    }
}

fn top_dim(x: &SimplicialSet) -> usize {
    (0..=x.max_dim()).rev().find(|&n| x.count(n) > 0).unwrap_or(0)
}

fn build_target(
    which: Target,
    max_dim: usize,
    g: &Option<String>,
    simplex: usize,
    bundle: &BundleArgs,
) -> Result<SimplicialSet> {
    Ok(match which {
        Target::S => build_s(max_dim),
        Target::C => build_c(max_dim),
        Target::Sc => build_sc(max_dim),
        Target::Delta => build_delta(simplex, max_dim),
        Target::Twisted => twisted_product(GroupKind::C, &build_delta(simplex, max_dim)),
        Target::E => {
            let g = parse_g(g)?;
            Arc::unwrap_or_clone(e_of(&g, max_dim)?.total)
        }
        Target::Bundle => {
            let d = load_decoration(bundle)?;
            Arc::unwrap_or_clone(total_space(&d, max_dim)?.total)
        }
    })
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::S => "S",
        Target::C => "C",
        Target::Sc => "SC",
        Target::Delta => "delta",
        Target::Twisted => "twisted",
        Target::E => "E",
        Target::Bundle => "bundle",
    }
}

fn bundle_max_dim(requested: Option<usize>, bundle: &BundleArgs) -> Result<usize> {
    match requested {
        Some(m) => Ok(m),
        None => Ok(top_dim(&load_decoration(bundle)?.base) + 2),
    }
}

/// Run a parsed command line.
pub fn run(cli: &Cli, cap: usize) -> Result<Outcome> {
    let policy = OverflowPolicy::from(cli.overflow);
    match &cli.command {
        Command::Enumerate {
            which,
            max_dim,
            g,
            simplex,
            full,
            bundle,
        } => {
            let max_dim = match which {
                Target::Bundle => bundle_max_dim(*max_dim, bundle)?,
                _ => max_dim.unwrap_or(DEFAULT_MAX_DIM),
            };
            let max_dim = capped(max_dim, cap)?;
            let x = build_target(*which, max_dim, g, *simplex, bundle)?;
            let mut report = json!({
                "target": target_name(*which),
                "max_dim": max_dim,
                "totals": x.counts(),
                "nondegenerate": x.nondegenerate_counts(),
            });
            let mut success = true;
            if *which == Target::E {
                let pb = e_via_pullback(&parse_g(g)?, max_dim)?;
                let matches = *pb.total == x;
                report["pullback_totals"] = json!(pb.total.counts());
                report["matches_pullback"] = json!(matches);
                success = matches;
            }
            if *full {
                report["set"] = serde_json::to_value(crate::simpset::json::SimplicialSetJson::from(&x))
                    .expect("plain data serializes");
            }
            Ok(Outcome {
                report,
                text: None,
                success,
            })
        }
        Command::Check {
            suite,
            target,
            max_dim,
            g,
            simplex,
        } => {
            let results = run_suite(*suite, *target, *max_dim, g, *simplex, cli.seed, cap)?;
            let passed = results.iter().all(CheckResult::passed);
            Ok(Outcome {
                report: json!({
                    "suite": format!("{suite:?}").to_lowercase(),
                    "passed": passed,
                    "results": results,
                }),
                text: Some(check_text(&results)),
                success: passed,
            })
        }
        Command::Homology {
            target,
            max_dim,
            g,
            simplex,
            dump_matrices,
            bundle,
        } => {
            let max_dim = match target {
                Target::Bundle => bundle_max_dim(*max_dim, bundle)?,
                _ => max_dim.unwrap_or(DEFAULT_HOMOLOGY_MAX_DIM),
            };
            let max_dim = capped(max_dim, cap)?;
            let x = build_target(*target, max_dim, g, *simplex, bundle)?;
            let cc = normalized_complex(&x)?;
            cc.check_boundary_squared()?;
            if let Some(dir) = dump_matrices {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
                for k in 0..=cc.max_dim() {
                    let path = dir.join(format!("boundary_{k}.txt"));
                    std::fs::write(&path, cc.boundary(k).to_triplet_text())
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                }
            }
            let report = homology_report(&cc, policy)?;
            Ok(Outcome {
                text: Some(report.to_text()),
                report: serde_json::to_value(&report).expect("plain data serializes"),
                success: true,
            })
        }
        Command::Bundle { max_dim, bundle } => {
            let decor = load_decoration(bundle)?;
            let max_dim = capped(max_dim.unwrap_or(top_dim(&decor.base) + 2), cap)?;
            let b = total_space(&decor, max_dim)?;
            b.verify()?;
            let cochain = chern_cochain(&decor);
            let degree = boundary_degree(&decor.base, &cochain).ok();
            let h: HomologyReport = homology_report(&normalized_complex(&b.total)?, policy)?;
            let report = json!({
                "max_dim": max_dim,
                "chern_cochain": cochain.values,
                "cochain_sum": cochain.sum(),
                "degree": degree,
                "square_verified": true,
                "totals": b.total.counts(),
                "nondegenerate": b.total.nondegenerate_counts(),
                "homology": h,
                "total": crate::simpset::json::SimplicialSetJson::from(&*b.total),
            });
            let text = format!(
                "chern_cochain: {:?}\ndegree: {}\nsquare_verified: true\ntotals: {:?}\nnondegenerate: {:?}\n{}",
                cochain.values,
                degree.map_or("n/a".to_string(), |d| d.to_string()),
                b.total.counts(),
                b.total.nondegenerate_counts(),
                h.to_text()
            );
            Ok(Outcome {
                report,
                text: Some(text),
                success: true,
            })
        }
    }
}

fn run_suite(
    suite: Suite,
    target: Option<Target>,
    max_dim: Option<usize>,
    g: &Option<String>,
    simplex: usize,
    seed: u64,
    cap: usize,
) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        let m = capped(max_dim.unwrap_or(DEFAULT_MAX_DIM), cap)?;
        let targets = match target {
            Some(t) => vec![t],
            None => vec![Target::S, Target::C, Target::Sc, Target::Delta, Target::Twisted],
        };
        for t in targets {
            let x = build_target(t, m, g, simplex, &BundleArgs::default())?;
            out.push(checks::check_identities(target_name(t), &x));
        }
    }
    if matches!(suite, Suite::Crossed | Suite::All) {
        let n = capped(max_dim.unwrap_or(4), cap)?;
        out.extend(checks::check_crossed(n, seed));
        out.extend(checks::check_inversion(n));
        out.push(checks::check_cyclic_closure(n));
    }
    if matches!(suite, Suite::Lemma | Suite::All) {
        let n = capped(max_dim.unwrap_or(3), cap)?;
        out.push(checks::check_pullback_lemma(n));
        out.push(checks::check_upsilon(n));
    }
    if suite == Suite::Upsilon {
        let n = capped(max_dim.unwrap_or(3), cap)?;
        out.push(checks::check_upsilon(n));
    }
    Ok(out)
}

fn check_text(results: &[CheckResult]) -> String {
    results
        .iter()
        .map(|r| {
            let mode = if r.exhaustive { "exhaustive" } else { "sampled" };
            match &r.counterexample {
                None => format!("PASS {} ({} cases, {mode})\n", r.name, r.cases),
                Some(c) => format!("FAIL {} ({} cases, {mode}): {c}\n", r.name, r.cases),
            }
        })
        .collect()
}

/// Flatten a JSON value into `key: value` lines.
pub fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{prefix}: {}\n", parts.join(" ")));
            }
            _ => out.push_str(&format!("{prefix}: {}\n", scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

/// Render an outcome in the requested format.
pub fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(&outcome.report).expect("plain data serializes");
            s.push('\n');
            s
        }
        Format::Text => outcome
            .text
            .clone()
            .unwrap_or_else(|| render_text(&outcome.report)),
    }
}

/// Parse, run and print; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let env = std::env::var(CAP_ENV).ok();
    let result = effective_cap(env.as_deref()).and_then(|cap| run(&cli, cap));
    match result {
        Ok(outcome) => {
            let rendered = render(&outcome, cli.format);
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &rendered)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
                Ok(()) if outcome.success => 0,
                Ok(()) => 1,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        let cli = Cli::try_parse_from(std::iter::once("csx").chain(args.iter().copied())).unwrap();
        run(&cli, HARD_CAP)
    }

    #[test]
    fn enumerate_sc() {
        let o = run_args(&["enumerate", "SC", "--max-dim", "4"]).unwrap();
        assert_eq!(o.report["totals"], json!([1, 1, 2, 6, 24]));
        assert_eq!(o.report["nondegenerate"], json!([1, 0, 1, 2, 9]));
    }

    #[test]
    fn enumerate_e_matches_pullback() {
        let o = run_args(&["enumerate", "E", "--g", "2,0,1", "--max-dim", "3"]).unwrap();
        assert!(o.success);
        assert_eq!(o.report["totals"], o.report["pullback_totals"]);
    }

    #[test]
    fn cap_handling() {
        assert_eq!(effective_cap(None).unwrap(), 9);
        assert_eq!(effective_cap(Some("5")).unwrap(), 5);
        assert_eq!(effective_cap(Some("12")).unwrap(), 9);
        assert!(effective_cap(Some("x")).is_err());
        let cli = Cli::try_parse_from(["csx", "enumerate", "S", "--max-dim", "6"]).unwrap();
        let err = run(&cli, 5).unwrap_err();
        assert_eq!(exit_code(&err), 3);
    }

    #[test]
    fn text_mirrors_json() {
        let o = run_args(&["enumerate", "S", "--max-dim", "3"]).unwrap();
        let text = render(&o, Format::Text);
        assert!(text.contains("totals: 1 2 6 24"), "{text}");
    }

    #[test]
    fn bundle_from_cochain() {
        let o = run_args(&["bundle", "--cochain", "3:1"]).unwrap();
        assert_eq!(o.report["degree"], json!(1));
        let h = &o.report["homology"]["H"];
        assert_eq!(h[1]["betti"], json!(0));
        assert_eq!(h[3]["betti"], json!(1));
    }
}
