//! Command-line front end.
//!
//! Every document written to standard output is JSON and carries the
//! configuration that produced it under `"config"`. The worker count is
//! left out of it, since it never changes the output.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::interrogate::{identify, CandidateFamily, SpectrumOracle};
use crate::io::{read_json, spectrum_csv, to_json, SurfaceFamily};
use crate::mcshane::verify_identity;
use crate::spectrum::{
    enumerate_spectrum, isospectral_compare, with_workers, EnumerationBudget, LengthSpectrum,
    DEFAULT_MERGE_TOLERANCE,
};
use crate::surface::{build_surface, FenchelNielsenSurface, Presentation, Topology};
use crate::MobiusTransform;

#[derive(Parser, Debug)]
#[command(name = "spectrakit", version, about = "Length spectra of hyperbolic surfaces")]
pub struct Cli {
    /// Worker threads for enumeration; defaults to all cores.
    #[arg(long, global = true, env = "SPECTRAKIT_WORKERS")]
    pub workers: Option<usize>,
    /// Also write the JSON document to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the Fuchsian group of a surface.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Enumerate or compare length spectra.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Check the boundary McShane identity on a one-holed torus.
    #[command(subcommand)]
    Mcshane(McShaneCmd),
    /// Evaluate the counting bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Identify a spectrum within a candidate family.
    #[command(subcommand)]
    Interrogate(InterrogateCmd),
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCmd {
    Build {
        #[arg(long)]
        surface: PathBuf,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetArgs {
    #[arg(long)]
    pub cutoff: f64,
    #[arg(long, default_value_t = 64)]
    pub max_word_length: usize,
    #[arg(long, default_value_t = DEFAULT_MERGE_TOLERANCE)]
    pub tolerance: f64,
    /// Return an uncertified spectrum instead of failing.
    #[arg(long)]
    pub allow_uncertified: bool,
}

impl BudgetArgs {
    fn budget(&self) -> EnumerationBudget {
        let mut b = EnumerationBudget::new(self.cutoff).with_max_word_length(self.max_word_length);
        b.merge_tolerance = self.tolerance;
        if self.allow_uncertified {
            b = b.allow_uncertified();
        }
        b
    }
}

#[derive(Subcommand, Debug)]
pub enum SpectrumCmd {
    Compute {
        #[arg(long)]
        surface: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Also write the spectrum as `length,multiplicity` CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    Compare {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
        #[arg(long)]
        cutoff: f64,
        #[arg(long, default_value_t = DEFAULT_MERGE_TOLERANCE)]
        tolerance: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum McShaneCmd {
    Verify {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        cutoff: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    Eval {
        #[arg(long)]
        genus: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum InterrogateCmd {
    Run {
        #[arg(long)]
        family: PathBuf,
        /// Index of the member whose spectrum the oracle holds.
        #[arg(long)]
        truth: usize,
        #[arg(long)]
        sweep: usize,
        #[arg(long)]
        cutoff: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        max_word_length: usize,
        #[arg(long, default_value_t = DEFAULT_MERGE_TOLERANCE)]
        tolerance: f64,
    },
}

/// The settings that determine an output document.
#[derive(Serialize, Debug, Clone, Default)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_word_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<usize>,
}

#[derive(Serialize)]
struct Document<T: Serialize> {
    #[serde(flatten)]
    body: T,
    config: RunConfig,
}

#[derive(Serialize)]
struct GroupReport {
    surface: FenchelNielsenSurface,
    presentation: Presentation,
    generators: Vec<MobiusTransform>,
    cuff_words: Vec<String>,
    relator_error: f64,
}

#[derive(Serialize)]
struct CompareReport {
    isospectral: bool,
    first_discrepancy: Option<usize>,
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn load_surface(path: &Path) -> Result<FenchelNielsenSurface> {
    let s: FenchelNielsenSurface = read_json(path)?;
    s.validate()?;
    Ok(s)
}

fn document<T: Serialize>(body: T, config: RunConfig) -> Result<String> {
    to_json(&Document { body, config })
}

fn execute(cli: &Cli) -> Result<String> {
    let output = cli.output.as_deref().map(path_str);
    match &cli.command {
        Command::Surface(SurfaceCmd::Build { surface }) => {
            let fns = load_surface(surface)?;
            let group = build_surface(&fns)?;
            let report = GroupReport {
                cuff_words: group.cuff_words().iter().map(|w| w.to_string()).collect(),
                relator_error: group.relator_error(),
                presentation: group.presentation,
                generators: group.generators.clone(),
                surface: fns,
            };
            let config = RunConfig {
                command: "surface build".into(),
                inputs: vec![path_str(surface)],
                output,
                ..Default::default()
            };
            document(report, config)
        }
        Command::Spectrum(SpectrumCmd::Compute { surface, budget, csv }) => {
            let fns = load_surface(surface)?;
            let group = build_surface(&fns)?;
            let spectrum = enumerate_spectrum(&group, &budget.budget())?;
            if let Some(path) = csv {
                std::fs::write(path, spectrum_csv(&spectrum))
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            let config = RunConfig {
                command: "spectrum compute".into(),
                inputs: vec![path_str(surface)],
                output,
                cutoff: Some(budget.cutoff),
                tolerance: Some(budget.tolerance),
                max_word_length: Some(budget.max_word_length),
                ..Default::default()
            };
            document(spectrum, config)
        }
        Command::Spectrum(SpectrumCmd::Compare {
            first,
            second,
            cutoff,
            tolerance,
        }) => {
            let a: LengthSpectrum = read_json(first)?;
            let b: LengthSpectrum = read_json(second)?;
            let c = isospectral_compare(&a, &b, *cutoff, *tolerance)?;
            let config = RunConfig {
                command: "spectrum compare".into(),
                inputs: vec![path_str(first), path_str(second)],
                output,
                cutoff: Some(*cutoff),
                tolerance: Some(*tolerance),
                ..Default::default()
            };
            document(
                CompareReport {
                    isospectral: c.isospectral,
                    first_discrepancy: c.first_discrepancy,
                },
                config,
            )
        }
        Command::Mcshane(McShaneCmd::Verify { surface, cutoff }) => {
            let fns = load_surface(surface)?;
            if fns.topology != Topology::OneHoledTorus {
                return Err(Error::Domain("the McShane check needs a one-holed torus".into()));
            }
            let boundary = fns
                .boundary_length
                .ok_or_else(|| Error::Domain("the torus has no boundary length".into()))?;
            let group = build_surface(&fns)?;
            let report = verify_identity(&group, boundary, *cutoff)?;
            let config = RunConfig {
                command: "mcshane verify".into(),
                inputs: vec![path_str(surface)],
                output,
                cutoff: Some(*cutoff),
                ..Default::default()
            };
            document(report, config)
        }
        Command::Bounds(BoundsCmd::Eval { genus }) => {
            let config = RunConfig {
                command: "bounds eval".into(),
                output,
                genus: Some(*genus),
                ..Default::default()
            };
            document(bounds::table(*genus)?, config)
        }
        Command::Interrogate(InterrogateCmd::Run {
            family,
            truth,
            sweep,
            cutoff,
            seed,
            max_word_length,
            tolerance,
        }) => {
            let fam: SurfaceFamily = read_json(family)?;
            if *truth >= fam.members.len() {
                return Err(Error::Domain(format!(
                    "truth index {truth} outside a family of {}",
                    fam.members.len()
                )));
            }
            let mut budget = EnumerationBudget::new(*cutoff).with_max_word_length(*max_word_length);
            budget.merge_tolerance = *tolerance;
            let spectra: Vec<LengthSpectrum> = fam
                .members
                .par_iter()
                .map(|m| {
                    m.surface.validate()?;
                    enumerate_spectrum(&build_surface(&m.surface)?, &budget)
                })
                .collect::<Result<_>>()?;
            let candidates = CandidateFamily::new(
                fam.members.iter().map(|m| m.label.clone()).zip(spectra).collect(),
            )?;
            let mut oracle = SpectrumOracle::with_tolerance(candidates.members[*truth].1.clone(), *tolerance)?;
            let transcript = identify(&mut oracle, &candidates, *sweep, *seed)?;
            let config = RunConfig {
                command: "interrogate run".into(),
                inputs: vec![path_str(family)],
                output,
                cutoff: Some(*cutoff),
                tolerance: Some(*tolerance),
                seed: Some(*seed),
                max_word_length: Some(*max_word_length),
                truth: Some(*truth),
                sweep: Some(*sweep),
                ..Default::default()
            };
            document(transcript, config)
        }
    }
}

/// Parses `args`, runs the command, and returns the process exit code:
/// 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    if cli.workers == Some(0) {
        let _ = writeln!(stderr, "error: --workers must be positive");
        return 2;
    }
    let result = match cli.workers {
        Some(n) => with_workers(n, || execute(&cli)).and_then(|r| r),
        None => execute(&cli),
    };
    let result = result.and_then(|doc| {
        if let Some(path) = &cli.output {
            std::fs::write(path, &doc).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        }
        Ok(doc)
    });
    match result {
        Ok(doc) => {
            let _ = write!(stdout, "{doc}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
