//! End-to-end dataset assembly.
//!
//! Layout on disk:
//!
//! ```text
//! out/
//!   specs/<split>/<chart-id>.json      chart specs (regeneration source)
//!   images/<split>/<chart-id>.svg      rendered charts
//!   metadata/<split>/<chart-id>.json   ground-truth metadata
//!   qa/<split>.jsonl                   balanced question records
//!   templates.json                     the template catalog
//!   manifest.json                      counts, config snapshot, checksums
//! ```
//!
//! The manifest is written last; a directory without one is a failed or
//! partial run. Regenerating with the same config produces byte-identical
//! files, which the manifest checksums make cheap to verify.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chart::{validate_spec, ChartSpec};
use crate::layout::{layout, ChartMetadata};
use crate::question::{balance, generate_for_chart, QARecord};
use crate::rng::{derive_seed, ChartRng, Split};
use crate::sampler::{sample_spec_with, GeneratorConfig, Vocabulary};
use crate::svg::render_svg;

/// Manifest format version.
pub const DATASET_VERSION: &str = "1";

/// Candidate draws allowed per chart slot before giving up.
const MAX_DRAWS_PER_SLOT: u32 = 1000;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Config(#[from] crate::sampler::ConfigError),
    #[error("vocabulary: {0}")]
    Vocabulary(#[from] crate::sampler::VocabularyError),
    #[error("{split} slot {slot}: no accepted chart in {MAX_DRAWS_PER_SLOT} draws")]
    DiscardBudget { split: Split, slot: u64 },
    #[error("generated spec {id} failed validation: {details}")]
    InvalidSpec { id: String, details: String },
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), PipelineError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|source| PipelineError::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, bytes).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Aggregates for one split.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SplitSummary {
    pub images: u64,
    pub questions: u64,
    pub unique_answers: u64,
    pub questions_by_family: BTreeMap<String, u64>,
    pub questions_by_template: BTreeMap<String, u64>,
    /// Candidate charts rejected by the layout stage for this split.
    pub discarded_charts: u64,
}

/// One indexed output file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestFile {
    pub path: String,
    pub sha256: String,
}

/// Dataset index: enough to verify and to regenerate bit-for-bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub dataset_version: String,
    pub master_seed: u64,
    /// Config snapshot in the flat key=value format.
    pub config: String,
    pub splits: BTreeMap<String, SplitSummary>,
    pub files: Vec<ManifestFile>,
}

/// Everything generated for one chart slot.
pub struct GeneratedChart {
    pub spec: ChartSpec,
    pub meta: ChartMetadata,
    pub svg: String,
    pub records: Vec<QARecord>,
    pub draws: u32,
}

/// Generate the chart for one slot: draw candidate specs from the slot's
/// stream until the layout engine accepts one, then generate its questions
/// from the same stream.
pub fn generate_chart(
    config: &GeneratorConfig,
    vocab: &Vocabulary,
    split: Split,
    index: u64,
) -> Result<GeneratedChart, PipelineError> {
    let id = format!("{}-{:06}", split.name(), index);
    let mut rng = ChartRng::from_seed(derive_seed(config.master_seed, split, index));
    for draws in 1..=MAX_DRAWS_PER_SLOT {
        let spec = sample_spec_with(&mut rng, config, vocab, split, id.clone());
        let violations = validate_spec(&spec);
        if !violations.is_empty() {
            return Err(PipelineError::InvalidSpec {
                id,
                details: violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            });
        }
        if let Ok(meta) = layout(&spec) {
            let svg = render_svg(&meta, &spec);
            let records = generate_for_chart(&spec, &meta, &mut rng);
            return Ok(GeneratedChart {
                spec,
                meta,
                svg,
                records,
                draws,
            });
        }
    }
    Err(PipelineError::DiscardBudget { split, slot: index })
}

/// Generate the full dataset under `out_dir` and write the manifest.
pub fn generate_dataset(
    config: &GeneratorConfig,
    vocab: &Vocabulary,
    out_dir: &Path,
) -> Result<Manifest, PipelineError> {
    config.validate()?;
    let mut files: Vec<ManifestFile> = Vec::new();
    let mut splits: BTreeMap<String, SplitSummary> = BTreeMap::new();

    let mut emit = |rel: String, bytes: &[u8], files: &mut Vec<ManifestFile>| {
        let path = out_dir.join(&rel);
        write_file(&path, bytes)?;
        files.push(ManifestFile {
            path: rel,
            sha256: sha256_hex(bytes),
        });
        Ok::<(), PipelineError>(())
    };

    let catalog = serde_json::to_string_pretty(&crate::question::catalog())
        .expect("catalog serializes")
        + "\n";
    emit("templates.json".to_string(), catalog.as_bytes(), &mut files)?;

    for split in Split::ALL {
        let mut summary = SplitSummary::default();
        let mut split_records: Vec<QARecord> = Vec::new();
        for index in 0..config.chart_count(split) {
            let chart = generate_chart(config, vocab, split, index)?;
            summary.images += 1;
            summary.discarded_charts += (chart.draws - 1) as u64;

            let spec_json = serde_json::to_string_pretty(&chart.spec).expect("spec serializes") + "\n";
            let meta_json = serde_json::to_string_pretty(&chart.meta).expect("meta serializes") + "\n";
            let id = &chart.spec.id;
            emit(
                format!("specs/{}/{id}.json", split.name()),
                spec_json.as_bytes(),
                &mut files,
            )?;
            emit(
                format!("metadata/{}/{id}.json", split.name()),
                meta_json.as_bytes(),
                &mut files,
            )?;
            emit(
                format!("images/{}/{id}.svg", split.name()),
                chart.svg.as_bytes(),
                &mut files,
            )?;
            split_records.extend(chart.records);
        }

        let mut balance_rng = ChartRng::from_seed(derive_seed(config.master_seed, split, u64::MAX));
        let kept = balance(split_records, &mut balance_rng);

        let mut qa_lines = String::new();
        let mut answers: BTreeSet<&str> = BTreeSet::new();
        for record in &kept {
            qa_lines.push_str(&serde_json::to_string(record).expect("record serializes"));
            qa_lines.push('\n');
            answers.insert(record.answer.as_str());
            *summary
                .questions_by_family
                .entry(record.family.name().to_string())
                .or_default() += 1;
            *summary
                .questions_by_template
                .entry(record.template_id.clone())
                .or_default() += 1;
        }
        summary.questions = kept.len() as u64;
        summary.unique_answers = answers.len() as u64;
        emit(
            format!("qa/{}.jsonl", split.name()),
            qa_lines.as_bytes(),
            &mut files,
        )?;
        splits.insert(split.name().to_string(), summary);
    }

    files.sort_by(|a, b| a.path.cmp(&b.path));
    let manifest = Manifest {
        dataset_version: DATASET_VERSION.to_string(),
        master_seed: config.master_seed,
        config: config.to_key_value(),
        splits,
        files,
    };
    let manifest_json =
        serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    write_file(&out_dir.join("manifest.json"), manifest_json.as_bytes())?;
    Ok(manifest)
}

/// Error from JSON Lines parsing, carrying the offending line number.
#[derive(Debug, thiserror::Error)]
pub enum JsonlError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

/// Read a JSON Lines file, reporting parse failures with their line number.
pub fn read_jsonl<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>, JsonlError> {
    let text = std::fs::read_to_string(path).map_err(|source| JsonlError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: T = serde_json::from_str(line).map_err(|e| JsonlError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push(value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desk_config(train: u64, test: u64) -> GeneratorConfig {
        GeneratorConfig {
            master_seed: 7,
            train_charts: train,
            test_familiar_charts: test,
            test_novel_charts: test,
            ..GeneratorConfig::default()
        }
    }

    #[test]
    fn manifest_counts_match_emitted_files() {
        let dir = tempfile::tempdir().unwrap();
        let config = desk_config(12, 4);
        let vocab = Vocabulary::bundled();
        let manifest = generate_dataset(&config, &vocab, dir.path()).unwrap();

        for split in Split::ALL {
            let summary = &manifest.splits[split.name()];
            assert_eq!(summary.images, config.chart_count(split));
            let images = std::fs::read_dir(dir.path().join("images").join(split.name()))
                .unwrap()
                .count() as u64;
            assert_eq!(images, summary.images);
            let qa: Vec<QARecord> = read_jsonl(
                &dir.path().join("qa").join(format!("{}.jsonl", split.name())),
            )
            .unwrap();
            assert_eq!(qa.len() as u64, summary.questions);
            let by_family: u64 = summary.questions_by_family.values().sum();
            let by_template: u64 = summary.questions_by_template.values().sum();
            assert_eq!(by_family, summary.questions);
            assert_eq!(by_template, summary.questions);
        }
        assert!(dir.path().join("manifest.json").exists());
        assert!(dir.path().join("templates.json").exists());
    }

    #[test]
    fn regeneration_is_byte_identical() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let config = desk_config(10, 3);
        let vocab = Vocabulary::bundled();
        let a = generate_dataset(&config, &vocab, dir_a.path()).unwrap();
        let b = generate_dataset(&config, &vocab, dir_b.path()).unwrap();
        assert_eq!(a, b);
        for (fa, fb) in a.files.iter().zip(b.files.iter()) {
            assert_eq!(fa, fb);
        }
    }

    #[test]
    fn different_seeds_differ() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let vocab = Vocabulary::bundled();
        let a = generate_dataset(&desk_config(5, 2), &vocab, dir_a.path()).unwrap();
        let mut other = desk_config(5, 2);
        other.master_seed = 8;
        let b = generate_dataset(&other, &vocab, dir_b.path()).unwrap();
        assert_ne!(a.files, b.files);
    }

    #[test]
    fn jsonl_errors_carry_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(&path, "{\"question_id\":\"q\",\"answer\":\"a\"}\nnot json\n").unwrap();
        match read_jsonl::<crate::eval::Prediction>(&path) {
            Err(JsonlError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {:?}", other.map(|v| v.len())),
        }
    }

    #[test]
    fn self_scoring_setup_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let config = desk_config(6, 2);
        let vocab = Vocabulary::bundled();
        generate_dataset(&config, &vocab, dir.path()).unwrap();
        let gold: Vec<QARecord> =
            read_jsonl(&dir.path().join("qa").join("train.jsonl")).unwrap();
        assert!(!gold.is_empty());
        let preds: Vec<crate::eval::Prediction> = gold
            .iter()
            .map(|g| crate::eval::Prediction {
                question_id: g.question_id.clone(),
                answer: g.answer.clone(),
                predicted_box: g.answer_box,
            })
            .collect();
        let report = crate::eval::score(&preds, &gold, crate::eval::ScoreMode::Exact).unwrap();
        assert_eq!(report.overall.percent(), 100.0);
    }
}
