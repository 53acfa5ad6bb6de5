//! Command-line front end: dataset generation, scoring, and inspection.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use chartsynth::chart::ChartSpec;
use chartsynth::color::{name_color, NamedColorTable, Rgb};
use chartsynth::dictionary::dictionary_from_metadata;
use chartsynth::eval::{localization_report, score, Prediction, ScoreMode};
use chartsynth::layout::{validate_metadata, ChartMetadata};
use chartsynth::pipeline::{generate_dataset, read_jsonl, Manifest};
use chartsynth::question::QARecord;
use chartsynth::sampler::{GeneratorConfig, Vocabulary};

/// Environment variable overriding the config's master seed.
const SEED_ENV: &str = "CHARTSYNTH_MASTER_SEED";

#[derive(Parser)]
#[command(name = "chartsynth", version, about = "Synthesize bar-chart QA datasets and score predictions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Edit1,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InspectWhat {
    /// Print the chart-local dictionary chain as JSON lines.
    Dem,
    /// Print the named color of every chart element.
    Colors,
    /// Re-check all metadata invariants.
    Validate,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a dataset: images, metadata, QA records, manifest.
    Generate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a prediction file against gold QA records.
    Score {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Also write the machine-readable report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Inspect a metadata file.
    Inspect {
        metadata: PathBuf,
        #[arg(value_enum)]
        what: InspectWhat,
    },
    /// Name an RGB color (hex, e.g. 9370db).
    Color { hex: String },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { config, out } => cmd_generate(&config, &out),
        Command::Score {
            gold,
            pred,
            mode,
            report,
        } => cmd_score(&gold, &pred, mode, report.as_deref()),
        Command::Inspect { metadata, what } => cmd_inspect(&metadata, what),
        Command::Color { hex } => cmd_color(&hex),
    }
}

fn cmd_generate(config_path: &Path, out: &Path) -> Result<ExitCode> {
    let text = std::fs::read_to_string(config_path)
        .with_context(|| format!("reading {}", config_path.display()))?;
    let mut config = GeneratorConfig::parse(&text)?;
    if let Ok(seed) = std::env::var(SEED_ENV) {
        config.master_seed = seed
            .parse()
            .with_context(|| format!("{SEED_ENV} must be an unsigned integer, got {seed:?}"))?;
    }
    let vocab = Vocabulary::bundled();
    let manifest = generate_dataset(&config, &vocab, out)?;
    print_manifest_summary(&manifest);
    Ok(ExitCode::SUCCESS)
}

fn print_manifest_summary(manifest: &Manifest) {
    println!("dataset version {} (seed {})", manifest.dataset_version, manifest.master_seed);
    println!("{:<16} {:>8} {:>10} {:>15}", "split", "images", "questions", "unique answers");
    for (split, summary) in &manifest.splits {
        println!(
            "{split:<16} {:>8} {:>10} {:>15}",
            summary.images, summary.questions, summary.unique_answers
        );
    }
    println!("{} files indexed", manifest.files.len());
}

fn cmd_score(
    gold_path: &Path,
    pred_path: &Path,
    mode: ModeArg,
    report_path: Option<&Path>,
) -> Result<ExitCode> {
    let gold: Vec<QARecord> = read_jsonl(gold_path)?;
    let preds: Vec<Prediction> = read_jsonl(pred_path)?;
    let mode = match mode {
        ModeArg::Exact => ScoreMode::Exact,
        ModeArg::Edit1 => ScoreMode::EditDistance1,
    };
    let accuracy = score(&preds, &gold, mode)?;
    print!("{}", accuracy.render_text());

    let have_boxes = gold.iter().any(|g| g.answer_box.is_some())
        && preds.iter().any(|p| p.predicted_box.is_some());
    let localization = have_boxes.then(|| localization_report(&preds, &gold));
    if let Some(loc) = &localization {
        print!("{}", loc.render_text());
    }

    if let Some(path) = report_path {
        #[derive(serde::Serialize)]
        struct FullReport<'a> {
            accuracy: &'a chartsynth::eval::EvalReport,
            #[serde(skip_serializing_if = "Option::is_none")]
            localization: &'a Option<chartsynth::eval::LocalizationReport>,
        }
        let json = serde_json::to_string_pretty(&FullReport {
            accuracy: &accuracy,
            localization: &localization,
        })? + "\n";
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_inspect(metadata_path: &Path, what: InspectWhat) -> Result<ExitCode> {
    let text = std::fs::read_to_string(metadata_path)
        .with_context(|| format!("reading {}", metadata_path.display()))?;
    let meta: ChartMetadata = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", metadata_path.display()))?;
    match what {
        InspectWhat::Dem => {
            let dict = dictionary_from_metadata(&meta)?;
            for entry in &dict.entries {
                println!("{}", serde_json::to_string(&entry)?);
            }
        }
        InspectWhat::Colors => {
            let table = NamedColorTable::bundled();
            for bar in &meta.bars {
                println!(
                    "bar group={} series={} {} -> {}",
                    bar.group,
                    bar.series,
                    bar.rgb.to_hex(),
                    name_color(bar.rgb, table)
                );
            }
            for entry in &meta.legend_boxes {
                println!(
                    "legend series={} {} -> {}",
                    entry.series,
                    entry.rgb.to_hex(),
                    name_color(entry.rgb, table)
                );
            }
        }
        InspectWhat::Validate => {
            let violations = validate_metadata(&meta);
            // Cross-check against the sibling spec when it is present in
            // the standard dataset layout.
            if let Some(spec_path) = sibling_spec_path(metadata_path) {
                if spec_path.exists() {
                    let spec_text = std::fs::read_to_string(&spec_path)
                        .with_context(|| format!("reading {}", spec_path.display()))?;
                    let spec: ChartSpec = serde_json::from_str(&spec_text)
                        .with_context(|| format!("parsing {}", spec_path.display()))?;
                    for v in chartsynth::chart::validate_spec(&spec) {
                        println!("spec: {v}");
                    }
                }
            }
            if violations.is_empty() {
                println!("ok: all metadata invariants hold");
            } else {
                for v in &violations {
                    println!("{v}");
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Map `out/metadata/<split>/<id>.json` to `out/specs/<split>/<id>.json`.
fn sibling_spec_path(metadata_path: &Path) -> Option<PathBuf> {
    let split_dir = metadata_path.parent()?;
    let meta_root = split_dir.parent()?;
    if meta_root.file_name()? != "metadata" {
        return None;
    }
    Some(
        meta_root
            .parent()?
            .join("specs")
            .join(split_dir.file_name()?)
            .join(metadata_path.file_name()?),
    )
}

fn cmd_color(hex: &str) -> Result<ExitCode> {
    let Some(rgb) = Rgb::from_hex(hex) else {
        bail!("{hex:?} is not a 6-digit hex color");
    };
    println!("{} -> {}", rgb.to_hex(), name_color(rgb, NamedColorTable::bundled()));
    Ok(ExitCode::SUCCESS)
}
