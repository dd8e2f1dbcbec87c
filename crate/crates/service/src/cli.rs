//! The `bwtex` command line.
//!
//! Exit status is 0 on success, 2 on usage and validation errors and 1 on
//! I/O or rendering failures. Results go to stdout or `--out`; findings and
//! errors go to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use bwtex_core::presets::{AssetLibrary, PresetSet};
use bwtex_core::raster::svg_to_png;
use bwtex_core::texture::Severity;
use bwtex_core::{lint_texture_set, render_chart, ChartKind, ChartSpec, Dataset, TextureSpec};
use bwtex_stats::report::{analyze_ratings, analyze_trials, AnalysisOptions};
use bwtex_stats::ExclusionPolicy;
use bwtex_study::records::{read_ratings, read_trials};
use bwtex_study::schedule::schedule_for;
use bwtex_study::stimuli::{export_stimuli, StimulusOptions};
use bwtex_study::validate::Severity as LogSeverity;
use bwtex_study::{generate_datasets, validate_rating_log, validate_trial_log, Violation};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::store::SessionStore;

#[derive(Debug, Parser)]
#[command(name = "bwtex", version, about = "Black-and-white textured charts and study tooling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render a chart to SVG, or PNG with --png.
    Render(RenderArgs),
    /// Inspect the shipped texture sets and chart templates.
    Presets {
        #[command(subcommand)]
        command: PresetsCommand,
    },
    /// Check a texture set for textures that are hard to tell apart.
    Lint {
        /// JSON list of texture specs, or a preset set file.
        #[arg(long)]
        specs: PathBuf,
    },
    /// Datasets, schedules and stimuli for the chart-reading study.
    Study {
        #[command(subcommand)]
        command: StudyCommand,
    },
    /// Summaries and bootstrap intervals from study logs.
    Analyze {
        #[command(subcommand)]
        command: AnalyzeCommand,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: std::net::SocketAddr,
        /// Minutes of inactivity before a session is dropped.
        #[arg(long, default_value_t = 30)]
        idle_minutes: u64,
    },
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Chart spec JSON.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub spec: Option<PathBuf>,
    /// Shipped set or template id, instead of --spec.
    #[arg(long)]
    pub preset: Option<String>,
    /// Chart kind for --preset.
    #[arg(long, default_value = "bar", requires = "preset")]
    pub kind: ChartKind,
    /// Dataset JSON (`{"values": {...}}`); the default dataset otherwise.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write PNG at this many pixels per unit.
    #[arg(long)]
    pub png: Option<f32>,
    /// Replace the jitter seed of every texture.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum PresetsCommand {
    List,
    Show {
        id: String,
        /// Print the chart this preset produces for a chart kind.
        #[arg(long)]
        kind: Option<ChartKind>,
    },
}

#[derive(Debug, Subcommand)]
pub enum StudyCommand {
    GenDatasets {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    GenSchedule {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "bar")]
        kind: ChartKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    ExportStimuli {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "bar")]
        kind: ChartKind,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        png: Option<f32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCommand {
    Trials {
        log: PathBuf,
        #[arg(long, default_value = "refined")]
        policy: String,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also write interval endpoints as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        bootstrap: BootstrapArgs,
    },
    Ratings {
        log: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        bootstrap: BootstrapArgs,
    },
}

#[derive(Debug, Args)]
pub struct BootstrapArgs {
    #[arg(long, default_value_t = 10_000)]
    pub iterations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl BootstrapArgs {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions { iterations: self.iterations, seed: self.seed, ..AnalysisOptions::default() }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit status 2.
    Invalid(String),
    /// Anything else; exit status 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| failed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, bytes: &[u8]) -> CliResult {
    match out {
        Some(p) => fs::write(p, bytes).map_err(|e| failed(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(bytes).map_err(failed),
    }
}

fn to_json(value: &impl serde::Serialize) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s.into_bytes()
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Render(args) => render(args),
        Command::Presets { command } => presets(command),
        Command::Lint { specs } => lint(&specs),
        Command::Study { command } => study(command),
        Command::Analyze { command } => analyze(command),
        Command::Serve { addr, idle_minutes } => {
            let store = SessionStore::new(Duration::from_secs(idle_minutes * 60));
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(crate::api::serve(addr, store)).map_err(failed)
        }
    }
}

fn render(args: RenderArgs) -> CliResult {
    let lib = AssetLibrary::global();
    let mut chart: ChartSpec = match (&args.spec, &args.preset) {
        (Some(path), _) => read_json(path)?,
        (None, Some(id)) => lib.chart_for(id, args.kind).map_err(invalid)?,
        (None, None) => return Err(invalid("either --spec or --preset is required")),
    };
    let data: Dataset = match &args.data {
        Some(path) => read_json(path)?,
        None => lib.default_dataset().clone(),
    };
    if let Some(seed) = args.seed {
        for c in &mut chart.categories {
            if let Some(t) = c.fill.texture_mut() {
                t.seed = seed;
            }
        }
    }
    let svg = render_chart(&chart, &data).map_err(invalid)?;
    match args.png {
        Some(ppu) if !(ppu > 0.0 && ppu <= 32.0) => Err(invalid("--png must be in (0, 32]")),
        Some(ppu) => write_out(args.out.as_deref(), &svg_to_png(&svg, ppu).map_err(failed)?),
        None => write_out(args.out.as_deref(), svg.as_bytes()),
    }
}

fn presets(command: PresetsCommand) -> CliResult {
    let lib = AssetLibrary::global();
    match command {
        PresetsCommand::List => {
            let mut out = String::new();
            for s in lib.sets() {
                out.push_str(&format!("{}\tset\t{}\t{}\n", s.id, fill_name(s.kind), s.name));
            }
            for t in lib.templates() {
                out.push_str(&format!("{}\ttemplate\t{}\t{}\n", t.id, fill_name(t.fill), t.chart_kind.name()));
            }
            write_out(None, out.as_bytes())
        }
        PresetsCommand::Show { id, kind: Some(kind) } => {
            write_out(None, &to_json(&lib.chart_for(&id, kind).map_err(invalid)?))
        }
        PresetsCommand::Show { id, kind: None } => {
            if let Some(s) = lib.set(&id) {
                write_out(None, &to_json(s))
            } else if let Some(t) = lib.template(&id) {
                write_out(None, &to_json(t))
            } else {
                Err(invalid(format!("unknown preset `{id}`")))
            }
        }
    }
}

fn fill_name(kind: bwtex_core::presets::FillKind) -> &'static str {
    match kind {
        bwtex_core::presets::FillKind::Geometric => "geometric",
        bwtex_core::presets::FillKind::Iconic => "iconic",
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SpecsFile {
    List(Vec<TextureSpec>),
    Set(PresetSet),
}

fn lint(path: &Path) -> CliResult {
    let specs = match read_json::<SpecsFile>(path)? {
        SpecsFile::List(l) => l,
        SpecsFile::Set(s) => s.textures,
    };
    for (i, s) in specs.iter().enumerate() {
        s.validate(&Default::default()).map_err(|e| invalid(format!("texture {i}: {e}")))?;
    }
    let report = lint_texture_set(&specs);
    for f in &report.findings {
        eprintln!("{:?} {:?} textures {} and {}: {}", f.severity, f.rule, f.pair.0, f.pair.1, f.message);
    }
    write_out(None, &to_json(&report))?;
    let errors = report.findings.iter().filter(|f| f.severity == Severity::Error).count();
    if errors > 0 {
        return Err(invalid(format!("{errors} lint error(s)")));
    }
    Ok(())
}

fn study(command: StudyCommand) -> CliResult {
    match command {
        StudyCommand::GenDatasets { seed, out } => write_out(out.as_deref(), &to_json(&generate_datasets(seed))),
        StudyCommand::GenSchedule { seed, kind, out } => {
            let schedule = schedule_for(&generate_datasets(seed), seed, kind);
            write_out(out.as_deref(), &to_json(&schedule))
        }
        StudyCommand::ExportStimuli { seed, kind, out, png } => {
            if kind == ChartKind::Map {
                return Err(invalid("the study uses bar and pie charts only"));
            }
            let datasets = generate_datasets(seed);
            let schedule = schedule_for(&datasets, seed, kind);
            let manifest = export_stimuli(
                &schedule,
                &datasets,
                AssetLibrary::global(),
                &out,
                &StimulusOptions { png_px_per_unit: png },
            )
            .map_err(failed)?;
            eprintln!("{} images, {} trials in {}", manifest.images.len(), manifest.trials.len(), out.display());
            Ok(())
        }
    }
}

fn report_violations(violations: &[Violation]) -> CliResult {
    for v in violations {
        let row = v.row.map(|r| format!("row {r}: ")).unwrap_or_default();
        eprintln!("{:?} {row}{} {:?}: {}", v.severity, v.participant_id, v.rule, v.message);
    }
    let errors = violations.iter().filter(|v| v.severity == LogSeverity::Error).count();
    if errors > 0 {
        return Err(invalid(format!("{errors} log error(s)")));
    }
    Ok(())
}

fn open(path: &Path) -> Result<fs::File, CliError> {
    fs::File::open(path).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn analyze(command: AnalyzeCommand) -> CliResult {
    match command {
        AnalyzeCommand::Trials { log, policy, report, csv, bootstrap } => {
            let policy = ExclusionPolicy::by_name(&policy)
                .ok_or_else(|| invalid(format!("unknown policy `{policy}`; use refined or original")))?;
            let rows = read_trials(open(&log)?).map_err(invalid)?;
            report_violations(&validate_trial_log(&rows))?;
            let result = analyze_trials(&rows, &policy, &bootstrap.options()).map_err(invalid)?;
            if let Some(path) = csv {
                result.write_intervals_csv(fs::File::create(path)?).map_err(failed)?;
            }
            write_out(report.as_deref(), &to_json(&result))
        }
        AnalyzeCommand::Ratings { log, report, csv, bootstrap } => {
            let rows = read_ratings(open(&log)?).map_err(invalid)?;
            report_violations(&validate_rating_log(&rows))?;
            let result = analyze_ratings(&rows, &bootstrap.options()).map_err(invalid)?;
            if let Some(path) = csv {
                result.write_intervals_csv(fs::File::create(path)?).map_err(failed)?;
            }
            write_out(report.as_deref(), &to_json(&result))
        }
    }
}
