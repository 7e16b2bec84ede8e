//! Command-line front end for the residue/heat verification engine.
//!
//! Subcommands: `verify` runs identity suites, `wres` prints interior
//! residue densities, `boundary` assembles the boundary term for the
//! three operator pairs, `torus` drives the lattice oracle, and `report`
//! writes the combined JSON artifact. Exit codes: 0 on success (flagged
//! conventions do not fail a run), 1 when a mismatch or runtime error
//! occurs, 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use wres_core::boundary::{
    boundary_phi, conformal_case_expected, mixed_case_expected, BoundaryCase,
};
use wres_core::checks::{catalogue, run_single, Suite};
use wres_core::fixtures::FixtureSet;
use wres_core::gauge::{GaugeContext, PerturbationKind, PerturbationSpec};
use wres_core::heat::{wres_conformal, wres_interior, wres_product_interior};
use wres_core::report::VerificationReport;
use wres_core::sym::ScalarPoly;
use wres_torus::{fit_and_compare, TorusConfig, TorusPerturbation, TorusReport};

#[derive(Parser)]
#[command(
    name = "wres",
    version,
    about = "Symbolic-numeric verifier for perturbed Dirac operator residue and heat identities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lichnerowicz,
    Traces,
    Wres,
    Boundary,
    Heat,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum PerturbArg {
    Scalar,
    OneForm,
    TwoForm,
    General,
    Product,
    Conformal,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    #[value(name = "thm-2.10")]
    FormSquare,
    #[value(name = "prop-2.15")]
    Mixed,
    #[value(name = "thm-3.2")]
    Conformal,
}

#[derive(Clone, Copy, ValueEnum)]
enum TorusPerturbArg {
    None,
    Scalar,
    TwoForm,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an identity suite and emit the verification report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4, value_parser = parse_dim)]
        dim: u8,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Collect wall times per record (off by default so output is
        /// byte-for-byte deterministic).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the interior residue density for a perturbation class.
    Wres {
        #[arg(long, value_enum)]
        perturbation: PerturbArg,
        #[arg(long, default_value_t = 4, value_parser = parse_dim)]
        dim: u8,
        /// Grade of the generic form (only with --perturbation general).
        #[arg(long, default_value_t = 2)]
        grade: u8,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Assemble the boundary term Φ for one of the operator pairs.
    Boundary {
        #[arg(long, value_enum)]
        case: CaseArg,
        /// Fixture file (defaults to the bundled constants).
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Lattice heat-trace oracle on the flat 4-torus.
    Torus {
        #[arg(long, value_enum, default_value = "none")]
        perturbation: TorusPerturbArg,
        /// Scalar value f, or the a_12 coefficient for the two-form.
        #[arg(long, default_value_t = 0.3)]
        value: f64,
        #[arg(long, default_value_t = 30)]
        cutoff: u32,
        #[arg(long, default_value_t = 0.02)]
        tmin: f64,
        #[arg(long, default_value_t = 0.2)]
        tmax: f64,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Reject the run when the lattice tail bound exceeds this
        /// fraction of the heat trace.
        #[arg(long, default_value_t = 1e-8)]
        tail_tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Full machine-readable report: all suites plus boundary cases.
    Report {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 4, value_parser = parse_dim)]
        dim: u8,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Include a torus-oracle run (scalar f = 0.3 at the default
        /// window).
        #[arg(long)]
        with_torus: bool,
    },
}

/// The identity suites and densities are stated for even n with
/// n/2 - 2 >= 0, so the front end accepts 4, 6 and 8.
fn parse_dim(s: &str) -> Result<u8, String> {
    match s {
        "4" => Ok(4),
        "6" => Ok(6),
        "8" => Ok(8),
        other => Err(format!("dimension must be 4, 6 or 8, got {other}")),
    }
}

fn load_fixtures(path: &Option<PathBuf>) -> Result<FixtureSet> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading fixture file {}", p.display()))?;
            Ok(FixtureSet::parse(&text)?)
        }
        None => Ok(FixtureSet::bundled()),
    }
}

fn run_suite(suite: SuiteArg, dim: u8, timings: bool) -> Result<VerificationReport> {
    let ctx = GaugeContext::new(dim)?;
    let wanted = match suite {
        SuiteArg::Lichnerowicz => Some(Suite::Lichnerowicz),
        SuiteArg::Traces => Some(Suite::Traces),
        SuiteArg::Wres => Some(Suite::Wres),
        SuiteArg::Boundary => Some(Suite::Boundary),
        SuiteArg::Heat => Some(Suite::Heat),
        SuiteArg::All => None,
    };
    let defs: Vec<_> = catalogue()
        .into_iter()
        .filter(|d| wanted.is_none_or(|s| d.suite == s))
        .collect();
    let records: Vec<_> = defs
        .par_iter()
        .map(|d| run_single(d, &ctx, timings))
        .collect();
    let name = match wanted {
        Some(s) => s.name().to_string(),
        None => "all".to_string(),
    };
    Ok(VerificationReport::new(&name, dim, records))
}

fn emit<T: Serialize>(
    value: &T,
    text: String,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<()> {
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(value)?,
        Format::Text => text,
    };
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            writeln!(f, "{rendered}")?;
        }
        None => println!("{rendered}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct DensityOutput {
    perturbation: String,
    dim: u8,
    bracket: String,
    density: String,
    statement: String,
    notes: Vec<String>,
}

fn cmd_wres(perturbation: PerturbArg, dim: u8, grade: u8, format: Format) -> Result<bool> {
    let ctx = GaugeContext::new(dim)?;
    let out: DensityOutput = match perturbation {
        PerturbArg::Scalar | PerturbArg::OneForm | PerturbArg::TwoForm | PerturbArg::General => {
            let (kind, name) = match perturbation {
                PerturbArg::Scalar => (PerturbationKind::Scalar, "scalar"),
                PerturbArg::OneForm => (PerturbationKind::OneFormImaginary, "one-form"),
                PerturbArg::TwoForm => (PerturbationKind::TwoForm { imaginary: false }, "two-form"),
                _ => (PerturbationKind::General { grade }, "general"),
            };
            let st = wres_interior(&PerturbationSpec::new(kind), &ctx)?;
            DensityOutput {
                perturbation: name.into(),
                dim,
                bracket: st.bracket.to_string(),
                density: st.density.to_string(),
                statement: st.text.clone(),
                notes: vec![],
            }
        }
        PerturbArg::Product => {
            let st =
                wres_product_interior(&PerturbationSpec::new(PerturbationKind::OneFormReal), &ctx)?;
            let notes = vec![
                "one-form product case: the quartic trace contributes +2|Ψ|² under \
                 c(η)² = -|η|²; the stated closed form carries -2|Ψ|² instead"
                    .to_string(),
            ];
            DensityOutput {
                perturbation: "product".into(),
                dim,
                bracket: st.bracket.to_string(),
                density: st.density.to_string(),
                statement: st.text.clone(),
                notes,
            }
        }
        PerturbArg::Conformal => {
            let w = wres_conformal(&ctx)?;
            let notes = vec!["both the pointwise and integrated-by-parts forms are exact".into()];
            DensityOutput {
                perturbation: "conformal".into(),
                dim,
                bracket: w.pointwise_lap.to_string(),
                density: w.integrated_by_parts.to_string(),
                statement: w.text.clone(),
                notes,
            }
        }
    };
    let mut text = format!(
        "perturbation: {}\ndim: {}\nbracket: {}\ndensity: {}\nstatement: {}\n",
        out.perturbation, out.dim, out.bracket, out.density, out.statement
    );
    for n in &out.notes {
        text.push_str(&format!("note: {n}\n"));
    }
    emit(&out, text, format, &None)?;
    Ok(true)
}

#[derive(Serialize)]
struct BoundaryOutput {
    case: String,
    a_i: String,
    a_ii: String,
    a_iii: String,
    b: String,
    c: String,
    total: String,
    expected: String,
    status: String,
}

fn cmd_boundary(case: CaseArg, fixtures: &FixtureSet, format: Format) -> Result<bool> {
    let (bcase, name, expected): (BoundaryCase, &str, ScalarPoly) = match case {
        CaseArg::FormSquare => (
            BoundaryCase::GeneralFormSquare,
            "thm-2.10",
            ScalarPoly::zero(),
        ),
        CaseArg::Mixed => (
            BoundaryCase::MixedPerturbedUnperturbed,
            "prop-2.15",
            mixed_case_expected(),
        ),
        CaseArg::Conformal => (
            BoundaryCase::ConformalPair,
            "thm-3.2",
            conformal_case_expected(),
        ),
    };
    let phi = boundary_phi(bcase, fixtures)?;
    let ok = phi.total == expected;
    let out = BoundaryOutput {
        case: name.into(),
        a_i: phi.a_i.to_string(),
        a_ii: phi.a_ii.to_string(),
        a_iii: phi.a_iii.to_string(),
        b: phi.b.to_string(),
        c: phi.c.to_string(),
        total: phi.total.to_string(),
        expected: expected.to_string(),
        status: if ok {
            "match".into()
        } else {
            "mismatch".into()
        },
    };
    let text = format!(
        "case: {}\nterm (a I):   {}\nterm (a II):  {}\nterm (a III): {}\nterm (b):     {}\nterm (c):     {}\nPhi = {}\nexpected: {}\nstatus: {}\n",
        out.case, out.a_i, out.a_ii, out.a_iii, out.b, out.c, out.total, out.expected, out.status
    );
    emit(&out, text, format, &None)?;
    Ok(ok)
}

fn torus_perturbation(kind: TorusPerturbArg, value: f64) -> TorusPerturbation {
    match kind {
        TorusPerturbArg::None => TorusPerturbation::None,
        TorusPerturbArg::Scalar => TorusPerturbation::Scalar(value),
        TorusPerturbArg::TwoForm => TorusPerturbation::TwoForm(vec![(1, 2, value)]),
    }
}

fn torus_text(r: &TorusReport) -> String {
    format!(
        "cutoff: {}\nt-grid: [{:.4}, {:.4}] x {}\nfitted  a0 = {:.8}  a2 = {:.8}  a4 = {:.8}\npredicted a0 = {:.8}  a2 = {:.8}\nrelative error a0 = {:.3e}, a2 = {:.3e}\nfit residual = {:.3e}, condition = {:.3e}\nmax tail bound = {:.3e}\n",
        r.config.cutoff,
        r.config.t_min,
        r.config.t_max,
        r.config.steps,
        r.fit.a0,
        r.fit.a2,
        r.fit.a4,
        r.predicted_a0,
        r.predicted_a2,
        r.rel_err_a0,
        r.rel_err_a2,
        r.fit.residual,
        r.fit.condition,
        r.samples.iter().fold(0.0f64, |m, s| m.max(s.tail_bound)),
    )
}

#[derive(Serialize)]
struct FullReport {
    version: u32,
    verification: VerificationReport,
    boundary: Vec<BoundaryOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    torus: Option<TorusReport>,
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Verify {
            suite,
            dim,
            format,
            timings,
            out,
        } => {
            let report = run_suite(suite, dim, timings)?;
            let ok = !report.has_mismatch();
            emit(&report, report.render_text(), format, &out)?;
            Ok(ok)
        }
        Cmd::Wres {
            perturbation,
            dim,
            grade,
            format,
        } => cmd_wres(perturbation, dim, grade, format),
        Cmd::Boundary {
            case,
            fixtures,
            format,
        } => {
            let fx = load_fixtures(&fixtures)?;
            cmd_boundary(case, &fx, format)
        }
        Cmd::Torus {
            perturbation,
            value,
            cutoff,
            tmin,
            tmax,
            steps,
            tail_tol,
            format,
        } => {
            let config = TorusConfig {
                cutoff,
                t_min: tmin,
                t_max: tmax,
                steps,
                perturbation: torus_perturbation(perturbation, value),
                tail_rel_tol: tail_tol,
            };
            let report = fit_and_compare(&config).map_err(|e| anyhow!(e.to_string()))?;
            emit(&report, torus_text(&report), format, &None)?;
            Ok(true)
        }
        Cmd::Report {
            out,
            dim,
            fixtures,
            with_torus,
        } => {
            let fx = load_fixtures(&fixtures)?;
            let verification = run_suite(SuiteArg::All, dim, false)?;
            let mut boundary = Vec::new();
            let mut all_ok = !verification.has_mismatch();
            for (bcase, name, expected) in [
                (
                    BoundaryCase::GeneralFormSquare,
                    "thm-2.10",
                    ScalarPoly::zero(),
                ),
                (
                    BoundaryCase::MixedPerturbedUnperturbed,
                    "prop-2.15",
                    mixed_case_expected(),
                ),
                (
                    BoundaryCase::ConformalPair,
                    "thm-3.2",
                    conformal_case_expected(),
                ),
            ] {
                let phi = boundary_phi(bcase, &fx)?;
                let ok = phi.total == expected;
                all_ok = all_ok && ok;
                boundary.push(BoundaryOutput {
                    case: name.into(),
                    a_i: phi.a_i.to_string(),
                    a_ii: phi.a_ii.to_string(),
                    a_iii: phi.a_iii.to_string(),
                    b: phi.b.to_string(),
                    c: phi.c.to_string(),
                    total: phi.total.to_string(),
                    expected: expected.to_string(),
                    status: if ok {
                        "match".into()
                    } else {
                        "mismatch".into()
                    },
                });
            }
            let torus = if with_torus {
                let config = TorusConfig {
                    perturbation: TorusPerturbation::Scalar(0.3),
                    ..TorusConfig::default()
                };
                Some(fit_and_compare(&config).map_err(|e| anyhow!(e.to_string()))?)
            } else {
                None
            };
            let full = FullReport {
                version: 1,
                verification,
                boundary,
                torus,
            };
            let text = serde_json::to_string_pretty(&full)?;
            emit(&full, text, Format::Json, &out)?;
            Ok(all_ok)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
