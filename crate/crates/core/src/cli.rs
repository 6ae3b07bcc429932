//! Command-line front end: argument parsing, output files and manifests.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::presets::{build_preset, Overrides, PresetId};
use crate::sweep::{run_sweep, AxisTransform, ConcurrenceGrid, SweepSpec};
use crate::verify;

pub const TOOL_NAME: &str = "qbath";

#[derive(Debug, Parser)]
#[command(
    name = "qbath",
    version,
    about = "Two-qubit entanglement dynamics in finite qubit baths"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Data file to write. Multi-panel presets insert the panel name before
    /// the extension.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Master seed for white-noise couplings.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads for row evaluation.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    /// Number of time samples.
    #[arg(long, global = true)]
    pub samples: Option<usize>,

    /// End of the time grid.
    #[arg(long = "t-max", global = true)]
    pub t_max: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a sweep described by a JSON spec or manifest file.
    Sweep { spec_file: PathBuf },
    /// Run the sweep behind one figure.
    Preset { id: String },
    /// Compare the closed form with brute-force evolution and check invariants.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Resolved configuration written next to every data file. Feeding it back
/// to `qbath sweep` reproduces the data byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub panel: Option<String>,
    /// True when some parameters are preset defaults.
    pub assumed: bool,
    #[serde(default)]
    pub assumed_parameters: Vec<String>,
    pub spec: SweepSpec,
    pub row_seeds: Vec<u64>,
}

impl Manifest {
    fn plain(spec: SweepSpec) -> Self {
        Manifest {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            label: "sweep".to_string(),
            panel: None,
            assumed: false,
            assumed_parameters: Vec::new(),
            row_seeds: spec.row_seeds(),
            spec,
        }
    }

    fn for_grid(mut self, grid: &ConcurrenceGrid) -> Self {
        self.tool = TOOL_NAME.to_string();
        self.version = env!("CARGO_PKG_VERSION").to_string();
        self.spec = grid.spec.clone();
        self.row_seeds = grid.row_seeds.clone();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDocument {
    pub manifest: Manifest,
    pub axis: Vec<f64>,
    /// Evaluation times. With a reciprocal axis the CSV reports `1/t`; here
    /// they stay as `t`, and the transform is in the manifest.
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

pub fn write_csv(grid: &ConcurrenceGrid, out: &mut impl Write) -> io::Result<()> {
    let reciprocal = grid.spec.time_grid.axis_transform == AxisTransform::Reciprocal;
    writeln!(
        out,
        "axis,{},concurrence",
        if reciprocal { "inv_t" } else { "t" }
    )?;
    for (axis, row) in grid.axis_values.iter().zip(&grid.values) {
        for (t, c) in grid.times.iter().zip(row) {
            let x = if reciprocal { 1.0 / t } else { *t };
            writeln!(out, "{axis:.16e},{x:.16e},{c:.16e}")?;
        }
    }
    Ok(())
}

pub fn write_json(
    grid: &ConcurrenceGrid,
    manifest: Manifest,
    out: &mut impl Write,
) -> io::Result<()> {
    let doc = GridDocument {
        manifest,
        axis: grid.axis_values.clone(),
        times: grid.times.clone(),
        values: grid.values.clone(),
    };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)
}

/// Reads a bare spec, a manifest, or a JSON grid document.
pub fn parse_spec_document(text: &str) -> Result<Manifest> {
    let value: serde_json::Value =
        serde_json::from_str(text).context("spec file is not valid JSON")?;
    if let Some(manifest) = value.get("manifest") {
        return Manifest::deserialize(manifest).context("invalid manifest");
    }
    if value.get("spec").is_some() {
        return Manifest::deserialize(&value).context("invalid manifest");
    }
    let spec = SweepSpec::deserialize(&value).context("invalid sweep spec")?;
    Ok(Manifest::plain(spec))
}

/// `fig3.csv` + `phi` -> `fig3-phi.csv`.
pub fn panel_path(base: &Path, panel: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}-{panel}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{panel}"),
    };
    base.with_file_name(name)
}

/// Sidecar manifest path for CSV output: `<data path>.manifest.json`.
pub fn manifest_path(data: &Path) -> PathBuf {
    let mut name = data.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(file))
}

/// Runs one sweep and writes its data (and, for CSV, the sidecar
/// manifest). Returns the paths written.
pub fn emit(manifest: Manifest, format: Format, path: &Path) -> Result<Vec<PathBuf>> {
    let grid = run_sweep(&manifest.spec)?;
    let manifest = manifest.for_grid(&grid);
    let mut written = vec![path.to_path_buf()];
    let mut out = create(path)?;
    match format {
        Format::Csv => {
            write_csv(&grid, &mut out)?;
            let side = manifest_path(path);
            let mut m = create(&side)?;
            serde_json::to_writer_pretty(&mut m, &manifest)?;
            writeln!(m)?;
            m.flush()?;
            written.push(side);
        }
        Format::Json => write_json(&grid, manifest, &mut out)?,
    }
    out.flush()
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(written)
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            samples: self.samples,
            t_max: self.t_max,
        }
    }

    fn output_or(&self, stem: &str) -> PathBuf {
        self.output
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{stem}.{}", self.format.extension())))
    }
}

fn run_spec_file(cli: &Cli, spec_file: &Path) -> Result<()> {
    let text = std::fs::read_to_string(spec_file)
        .with_context(|| format!("cannot read {}", spec_file.display()))?;
    let mut manifest = parse_spec_document(&text)?;
    cli.overrides().apply(&mut manifest.spec)?;
    let stem = spec_file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep".into());
    for path in emit(
        manifest,
        cli.format,
        &cli.output_or(&format!("{stem}-grid")),
    )? {
        println!("{}", path.display());
    }
    Ok(())
}

fn run_preset(cli: &Cli, id: &str) -> Result<()> {
    let id: PresetId = id.parse()?;
    let preset = build_preset(id, &cli.overrides())?;
    let base = cli.output_or(id.as_str());
    for panel in preset.panels {
        let path = match panel.name {
            Some(name) => panel_path(&base, name),
            None => base.clone(),
        };
        let manifest = Manifest {
            label: id.as_str().to_string(),
            panel: panel.name.map(str::to_string),
            assumed: !preset.assumed.is_empty(),
            assumed_parameters: preset.assumed.iter().map(|s| s.to_string()).collect(),
            ..Manifest::plain(panel.spec)
        };
        for written in emit(manifest, cli.format, &path)? {
            println!("{}", written.display());
        }
    }
    Ok(())
}

fn run_verify() -> bool {
    let report = verify::run_all();
    for check in &report.checks {
        println!("{check}");
    }
    println!(
        "verify: {} passed, {} failed",
        report.passed(),
        report.failed()
    );
    report.is_success()
}

/// Executes a parsed command line. `Ok(false)` means verification failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let work = || -> Result<bool> {
        match &cli.command {
            Command::Sweep { spec_file } => run_spec_file(cli, spec_file).map(|_| true),
            Command::Preset { id } => run_preset(cli, id).map(|_| true),
            Command::Verify => Ok(run_verify()),
        }
    };
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build()
            .context("cannot start worker threads")?
            .install(work),
        None => work(),
    }
}
