//! Seeded sampling of chart specs: styles, data tables, labels, and themes.
//!
//! Every chart is a pure function of `(config, vocabulary, split, index)`.
//! The random stream is ChaCha8 seeded through [`derive_seed`], with all
//! draws made in a fixed order, so workers can generate any subset of charts
//! in any order and the outputs stay bit-identical.

use std::collections::BTreeSet;
use std::path::Path;

use crate::chart::{
    ChartSpec, ContextTheme, DataScale, Grouping, Hatch, LegendPosition, Orientation,
    RotationPolicy, ScaleKind, StyleSpec, Theme,
};
use crate::color::{NamedColorTable, Rgb};
use crate::rng::{ChartRng, Split};

pub use crate::rng::derive_seed;

/// Knobs and counts steering generation. Fraction defaults follow the
/// published style and data-type distributions.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GeneratorConfig {
    pub master_seed: u64,
    pub train_charts: u64,
    pub test_familiar_charts: u64,
    pub test_novel_charts: u64,
    pub vertical_frac: f64,
    pub stacked_frac: f64,
    pub hatch_frac: f64,
    pub legend_outside_frac: f64,
    pub linear_frac: f64,
    pub percentage_frac: f64,
    pub exponential_frac: f64,
    pub negative_frac: f64,
    pub zero_frac: f64,
    pub normalized_percentage_frac: f64,
    pub multi_column_frac: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            master_seed: 2024,
            train_charts: 1000,
            test_familiar_charts: 250,
            test_novel_charts: 250,
            vertical_frac: 0.70,
            stacked_frac: 0.20,
            hatch_frac: 0.20,
            legend_outside_frac: 0.40,
            linear_frac: 0.70,
            percentage_frac: 0.25,
            exponential_frac: 0.05,
            negative_frac: 0.10,
            zero_frac: 0.10,
            normalized_percentage_frac: 0.50,
            multi_column_frac: 0.50,
        }
    }
}

/// Probability that an individual bar inside a flagged chart is zeroed or
/// negated.
pub const PER_BAR_MUTATE_PROB: f64 = 0.2;

/// Fraction of single-series charts drawn in one color.
const MONOCHROME_FRAC: f64 = 0.25;

/// Fraction of charts with grid lines.
const GRID_FRAC: f64 = 0.5;

/// Fraction of palette picks nudged off the exact named-color RGB.
const JITTER_FRAC: f64 = 0.5;

const BAR_WIDTH_CHOICES: [f64; 5] = [0.5, 0.6, 0.7, 0.8, 0.9];
const FONT_SIZE_CHOICES: [f64; 5] = [9.0, 10.0, 11.0, 12.0, 13.0];

#[derive(Clone, Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("line {0}: expected `key=value`")]
    Malformed(usize),
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for {key}: {value:?}")]
    BadValue {
        line: usize,
        key: String,
        value: String,
    },
    #[error("fraction {0} must lie in [0, 1]")]
    FractionRange(&'static str),
    #[error("data-type fractions must sum to 1 (got {0})")]
    DataTypeSum(f64),
}

impl GeneratorConfig {
    pub fn chart_count(&self, split: Split) -> u64 {
        match split {
            Split::Train => self.train_charts,
            Split::TestFamiliar => self.test_familiar_charts,
            Split::TestNovel => self.test_novel_charts,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let fractions = [
            ("vertical_frac", self.vertical_frac),
            ("stacked_frac", self.stacked_frac),
            ("hatch_frac", self.hatch_frac),
            ("legend_outside_frac", self.legend_outside_frac),
            ("linear_frac", self.linear_frac),
            ("percentage_frac", self.percentage_frac),
            ("exponential_frac", self.exponential_frac),
            ("negative_frac", self.negative_frac),
            ("zero_frac", self.zero_frac),
            ("normalized_percentage_frac", self.normalized_percentage_frac),
            ("multi_column_frac", self.multi_column_frac),
        ];
        for (name, v) in fractions {
            if !(0.0..=1.0).contains(&v) {
                return Err(ConfigError::FractionRange(name));
            }
        }
        let sum = self.linear_frac + self.percentage_frac + self.exponential_frac;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(ConfigError::DataTypeSum(sum));
        }
        Ok(())
    }

    /// Parse the flat `key=value` config format. Blank lines and `#`
    /// comments are ignored; unknown keys are errors.
    pub fn parse(text: &str) -> Result<GeneratorConfig, ConfigError> {
        let mut cfg = GeneratorConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::Malformed(i + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || ConfigError::BadValue {
                line: i + 1,
                key: key.to_string(),
                value: value.to_string(),
            };
            match key {
                "master_seed" => cfg.master_seed = value.parse().map_err(|_| bad())?,
                "train_charts" => cfg.train_charts = value.parse().map_err(|_| bad())?,
                "test_familiar_charts" => cfg.test_familiar_charts = value.parse().map_err(|_| bad())?,
                "test_novel_charts" => cfg.test_novel_charts = value.parse().map_err(|_| bad())?,
                "vertical_frac" => cfg.vertical_frac = parse_frac(value).map_err(|_| bad())?,
                "stacked_frac" => cfg.stacked_frac = parse_frac(value).map_err(|_| bad())?,
                "hatch_frac" => cfg.hatch_frac = parse_frac(value).map_err(|_| bad())?,
                "legend_outside_frac" => {
                    cfg.legend_outside_frac = parse_frac(value).map_err(|_| bad())?
                }
                "linear_frac" => cfg.linear_frac = parse_frac(value).map_err(|_| bad())?,
                "percentage_frac" => cfg.percentage_frac = parse_frac(value).map_err(|_| bad())?,
                "exponential_frac" => cfg.exponential_frac = parse_frac(value).map_err(|_| bad())?,
                "negative_frac" => cfg.negative_frac = parse_frac(value).map_err(|_| bad())?,
                "zero_frac" => cfg.zero_frac = parse_frac(value).map_err(|_| bad())?,
                "normalized_percentage_frac" => {
                    cfg.normalized_percentage_frac = parse_frac(value).map_err(|_| bad())?
                }
                "multi_column_frac" => cfg.multi_column_frac = parse_frac(value).map_err(|_| bad())?,
                other => {
                    return Err(ConfigError::UnknownKey {
                        line: i + 1,
                        key: other.to_string(),
                    })
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Render back to the `key=value` format (the manifest embeds this
    /// snapshot so a dataset can be regenerated from the manifest alone).
    pub fn to_key_value(&self) -> String {
        format!(
            "master_seed={}\ntrain_charts={}\ntest_familiar_charts={}\ntest_novel_charts={}\n\
             vertical_frac={}\nstacked_frac={}\nhatch_frac={}\nlegend_outside_frac={}\n\
             linear_frac={}\npercentage_frac={}\nexponential_frac={}\nnegative_frac={}\n\
             zero_frac={}\nnormalized_percentage_frac={}\nmulti_column_frac={}\n",
            self.master_seed,
            self.train_charts,
            self.test_familiar_charts,
            self.test_novel_charts,
            self.vertical_frac,
            self.stacked_frac,
            self.hatch_frac,
            self.legend_outside_frac,
            self.linear_frac,
            self.percentage_frac,
            self.exponential_frac,
            self.negative_frac,
            self.zero_frac,
            self.normalized_percentage_frac,
            self.multi_column_frac,
        )
    }
}

fn parse_frac(value: &str) -> Result<f64, std::num::ParseFloatError> {
    value.parse::<f64>()
}

/// Required word counts for the two label lists.
pub const FAMILIAR_WORD_COUNT: usize = 1000;
pub const NOVEL_WORD_COUNT: usize = 500;

const FAMILIAR_DATA: &str = include_str!("../data/familiar_words.txt");
const NOVEL_DATA: &str = include_str!("../data/novel_words.txt");

#[derive(Clone, Debug, thiserror::Error, PartialEq)]
pub enum VocabularyError {
    #[error("failed to read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{list} list: non-alphabetic entry {word:?}")]
    NonAlphabetic { list: &'static str, word: String },
    #[error("{list} list: wrong count (expected {expected}, found {found})")]
    WrongCount {
        list: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("vocabulary overlap: {0:?} appears in both lists")]
    Overlap(String),
}

/// Label word lists plus the global question/answer vocabularies derived
/// from a generated train split.
#[derive(Clone, Debug, Default)]
pub struct Vocabulary {
    pub familiar_words: Vec<String>,
    pub novel_words: Vec<String>,
    /// Every token that appears in train-split question text.
    pub global_question_vocab: BTreeSet<String>,
    /// Every answer string seen in the train split, sorted. Size L.
    pub global_answer_vocab: Vec<String>,
}

impl Vocabulary {
    /// Word list used for chart labels in the given split.
    pub fn words_for(&self, split: Split) -> &[String] {
        match split {
            Split::Train | Split::TestFamiliar => &self.familiar_words,
            Split::TestNovel => &self.novel_words,
        }
    }

    /// Parse and verify raw list contents.
    pub fn from_lists(familiar: &str, novel: &str) -> Result<Vocabulary, VocabularyError> {
        let familiar_words = parse_word_list(familiar, "familiar", FAMILIAR_WORD_COUNT)?;
        let novel_words = parse_word_list(novel, "novel", NOVEL_WORD_COUNT)?;
        let familiar_set: BTreeSet<&String> = familiar_words.iter().collect();
        for w in &novel_words {
            if familiar_set.contains(w) {
                return Err(VocabularyError::Overlap(w.clone()));
            }
        }
        Ok(Vocabulary {
            familiar_words,
            novel_words,
            global_question_vocab: BTreeSet::new(),
            global_answer_vocab: Vec::new(),
        })
    }

    /// The word lists compiled into the library.
    pub fn bundled() -> Vocabulary {
        Vocabulary::from_lists(FAMILIAR_DATA, NOVEL_DATA).expect("bundled word lists are valid")
    }
}

fn parse_word_list(
    data: &str,
    list: &'static str,
    expected: usize,
) -> Result<Vec<String>, VocabularyError> {
    let mut words = Vec::new();
    let mut seen = BTreeSet::new();
    for raw in data.lines() {
        let word = raw.trim();
        if word.is_empty() {
            continue;
        }
        if !word.chars().all(|c| c.is_ascii_lowercase()) {
            return Err(VocabularyError::NonAlphabetic {
                list,
                word: word.to_string(),
            });
        }
        if !seen.insert(word.to_string()) {
            return Err(VocabularyError::Overlap(word.to_string()));
        }
        words.push(word.to_string());
    }
    if words.len() != expected {
        return Err(VocabularyError::WrongCount {
            list,
            expected,
            found: words.len(),
        });
    }
    Ok(words)
}

/// Load and verify the two word lists from disk.
pub fn load_vocabulary(
    familiar_path: &Path,
    novel_path: &Path,
) -> Result<Vocabulary, VocabularyError> {
    let read = |path: &Path| {
        std::fs::read_to_string(path).map_err(|e| VocabularyError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    };
    Vocabulary::from_lists(&read(familiar_path)?, &read(novel_path)?)
}

/// Sample the chart spec for `(split, index)`. Bit-identical across runs
/// and platforms for a fixed config and vocabulary.
pub fn sample_chart(
    config: &GeneratorConfig,
    vocab: &Vocabulary,
    split: Split,
    index: u64,
) -> ChartSpec {
    let mut rng = ChartRng::from_seed(derive_seed(config.master_seed, split, index));
    let id = format!("{}-{:06}", split.name(), index);
    sample_spec_with(&mut rng, config, vocab, split, id)
}

/// Draw one spec from an already-positioned stream. The pipeline calls this
/// repeatedly on a per-slot stream until the layout engine accepts a chart.
pub fn sample_spec_with(
    rng: &mut ChartRng,
    config: &GeneratorConfig,
    vocab: &Vocabulary,
    split: Split,
    id: String,
) -> ChartSpec {
    // Draw order is fixed; inserting or reordering draws is a breaking
    // change to the dataset format.
    let u = unit(rng);
    let mut kind = if u < config.linear_frac {
        ScaleKind::Linear
    } else if u < config.linear_frac + config.percentage_frac {
        ScaleKind::Percentage
    } else {
        ScaleKind::Exponential
    };

    let multi = rng.chance(config.multi_column_frac);
    let (groups, series) = if multi {
        (
            rng.range_inclusive(2, 5) as usize,
            rng.range_inclusive(2, 4) as usize,
        )
    } else {
        (rng.range_inclusive(2, 10) as usize, 1)
    };

    if kind == ScaleKind::Percentage && multi && rng.chance(config.normalized_percentage_frac) {
        kind = ScaleKind::PercentageNormalized;
    }

    let grouping = if !multi {
        Grouping::Single
    } else {
        match kind {
            ScaleKind::Linear if rng.chance(config.stacked_frac) => Grouping::StackedAdditive,
            ScaleKind::PercentageNormalized if rng.chance(config.stacked_frac) => {
                Grouping::StackedFractional
            }
            _ => Grouping::Grouped,
        }
    };

    let orientation = if rng.chance(config.vertical_frac) {
        Orientation::Vertical
    } else {
        Orientation::Horizontal
    };

    let mut scale = DataScale::new(kind);
    scale.allow_negative =
        kind == ScaleKind::Linear && !grouping.is_stacked() && rng.chance(config.negative_frac);
    scale.allow_zero = matches!(
        kind,
        ScaleKind::Linear | ScaleKind::Percentage | ScaleKind::PercentageNormalized
    ) && rng.chance(config.zero_frac);

    let words = vocab.words_for(split);
    let picks = rng.sample_distinct(words.len(), groups + series);
    let group_labels: Vec<String> = picks[..groups].iter().map(|&i| words[i].clone()).collect();
    let series_labels: Vec<String> = picks[groups..].iter().map(|&i| words[i].clone()).collect();

    let values = sample_values(rng, &scale, groups, series);

    let theme = *rng.choose(&Theme::ALL);
    let title_context = theme_context(theme, &scale, multi);

    let style = sample_style(rng, config, grouping, groups, series);

    ChartSpec {
        id,
        title_context,
        orientation,
        grouping,
        scale,
        group_labels,
        series_labels,
        values,
        style,
        split,
    }
}

fn unit(rng: &mut ChartRng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn sample_values(rng: &mut ChartRng, scale: &DataScale, groups: usize, series: usize) -> Vec<Vec<i64>> {
    let mut values: Vec<Vec<i64>> = match scale.kind {
        ScaleKind::Linear => (0..groups)
            .map(|_| (0..series).map(|_| rng.range_inclusive(1, 10)).collect())
            .collect(),
        ScaleKind::Percentage => (0..groups)
            .map(|_| {
                (0..series)
                    .map(|_| rng.range_inclusive(1, 10) * 10)
                    .collect()
            })
            .collect(),
        ScaleKind::PercentageNormalized => (0..groups)
            .map(|_| sample_composition(rng, series, scale.allow_zero))
            .collect(),
        ScaleKind::Exponential => (0..groups)
            .map(|_| (0..series).map(|_| rng.range_inclusive(0, 10)).collect())
            .collect(),
    };

    // Per-bar mutations inside flagged charts. Normalized groups keep their
    // sum invariant, so zeroing is handled inside the composition sampler.
    if scale.allow_zero && scale.kind != ScaleKind::PercentageNormalized {
        for row in values.iter_mut() {
            for v in row.iter_mut() {
                if rng.chance(PER_BAR_MUTATE_PROB) {
                    *v = 0;
                }
            }
        }
        // An all-missing chart is useless; keep at least one bar.
        if values.iter().flatten().all(|&v| v == 0) {
            let v = match scale.kind {
                ScaleKind::Linear => rng.range_inclusive(1, 10),
                _ => rng.range_inclusive(1, 10) * 10,
            };
            values[0][0] = v;
        }
    }
    if scale.allow_negative {
        for row in values.iter_mut() {
            for v in row.iter_mut() {
                if *v != 0 && rng.chance(PER_BAR_MUTATE_PROB) {
                    *v = -*v;
                }
            }
        }
    }
    values
}

/// Random composition of 100 into `parts` multiples of ten. With
/// `allow_zero` the parts may be zero, otherwise each part is at least 10.
fn sample_composition(rng: &mut ChartRng, parts: usize, allow_zero: bool) -> Vec<i64> {
    debug_assert!(parts >= 1 && parts <= 10);
    if parts == 1 {
        return vec![100];
    }
    let mut cuts: Vec<i64> = if allow_zero {
        // Weak composition: cut points may coincide.
        (0..parts - 1).map(|_| rng.range_inclusive(0, 10)).collect()
    } else {
        // Strict composition: distinct interior cut points.
        rng.sample_distinct(9, parts - 1)
            .into_iter()
            .map(|c| c as i64 + 1)
            .collect()
    };
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0i64;
    for c in cuts {
        out.push((c - prev) * 10);
        prev = c;
    }
    out.push((10 - prev) * 10);
    out
}

fn theme_context(theme: Theme, scale: &DataScale, multi: bool) -> ContextTheme {
    let (title, axis) = match theme {
        Theme::AlgorithmAccuracy => (
            if multi {
                "Accuracy of algorithms in different datasets"
            } else {
                "Accuracy of different algorithms"
            },
            "Accuracy".to_string(),
        ),
        Theme::ObjectPreference => (
            if multi {
                "Most preferred objects in different categories"
            } else {
                "Most preferred objects"
            },
            if matches!(
                scale.kind,
                ScaleKind::Percentage | ScaleKind::PercentageNormalized
            ) {
                "Percentage of people".to_string()
            } else {
                "Number of people".to_string()
            },
        ),
        Theme::ItemSales => (
            if multi {
                "Sales statistics of items in different stores"
            } else {
                "Sales statistics of different items"
            },
            "Units sold".to_string(),
        ),
        Theme::Generic => ("Title", "Values".to_string()),
    };
    ContextTheme {
        theme,
        title: title.to_string(),
        value_axis_label: axis,
    }
}

/// Named-color RGBs dark enough to read against a white canvas.
fn palette_pool() -> &'static Vec<Rgb> {
    static POOL: std::sync::OnceLock<Vec<Rgb>> = std::sync::OnceLock::new();
    POOL.get_or_init(|| {
        NamedColorTable::bundled()
            .entries()
            .iter()
            .map(|e| e.rgb)
            .filter(|rgb| rgb.luminance() <= 0.8)
            .collect()
    })
}

fn sample_style(
    rng: &mut ChartRng,
    config: &GeneratorConfig,
    grouping: Grouping,
    groups: usize,
    series: usize,
) -> StyleSpec {
    let multi = grouping != Grouping::Single;
    let grid_lines = rng.chance(GRID_FRAC);
    let hatch = if rng.chance(config.hatch_frac) {
        Some(*rng.choose(&Hatch::ALL))
    } else {
        None
    };

    let colors_needed = if multi {
        series
    } else if rng.chance(MONOCHROME_FRAC) {
        1
    } else {
        groups
    };
    let pool = palette_pool();
    let jitter = rng.chance(JITTER_FRAC);
    let palette: Vec<Rgb> = rng
        .sample_distinct(pool.len(), colors_needed)
        .into_iter()
        .map(|i| {
            let base = pool[i];
            if jitter {
                let nudge = |c: u8, r: &mut ChartRng| {
                    let d = r.range_inclusive(-12, 12);
                    (c as i64 + d).clamp(0, 255) as u8
                };
                Rgb(nudge(base.0, rng), nudge(base.1, rng), nudge(base.2, rng))
            } else {
                base
            }
        })
        .collect();

    let legend_position = if !multi {
        LegendPosition::None
    } else if rng.chance(config.legend_outside_frac) {
        if rng.chance(0.5) {
            LegendPosition::Right
        } else {
            LegendPosition::Below
        }
    } else {
        LegendPosition::Inside
    };

    StyleSpec {
        grid_lines,
        hatch,
        palette,
        legend_position,
        bar_width_ratio: *rng.choose(&BAR_WIDTH_CHOICES),
        label_rotation_policy: RotationPolicy::Auto,
        font_size: *rng.choose(&FONT_SIZE_CHOICES),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::validate_spec;

    #[test]
    fn bundled_vocabulary_counts() {
        let vocab = Vocabulary::bundled();
        assert_eq!(vocab.familiar_words.len(), FAMILIAR_WORD_COUNT);
        assert_eq!(vocab.novel_words.len(), NOVEL_WORD_COUNT);
    }

    #[test]
    fn vocabulary_overlap_rejected() {
        let familiar: String = (0..1000).map(|i| format!("word{}\n", word_suffix(i))).collect();
        let mut novel: String = (0..499)
            .map(|i| format!("novel{}\n", word_suffix(i)))
            .collect();
        novel.push_str(&format!("word{}\n", word_suffix(3)));
        match Vocabulary::from_lists(&familiar, &novel) {
            Err(VocabularyError::Overlap(w)) => assert_eq!(w, format!("word{}", word_suffix(3))),
            other => panic!("expected overlap error, got {other:?}"),
        }
    }

    #[test]
    fn vocabulary_count_checked() {
        let familiar: String = (0..1000).map(|i| format!("word{}\n", word_suffix(i))).collect();
        match Vocabulary::from_lists(&familiar, "") {
            Err(VocabularyError::WrongCount { list, found, .. }) => {
                assert_eq!(list, "novel");
                assert_eq!(found, 0);
            }
            other => panic!("expected count error, got {other:?}"),
        }
    }

    #[test]
    fn vocabulary_rejects_non_alphabetic() {
        match Vocabulary::from_lists("abc3\n", "") {
            Err(VocabularyError::NonAlphabetic { word, .. }) => assert_eq!(word, "abc3"),
            other => panic!("expected alphabetic error, got {other:?}"),
        }
    }

    // Spell numbers with letters so list entries stay alphabetic.
    fn word_suffix(mut n: usize) -> String {
        let letters = [
            'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j',
        ];
        let mut s = String::new();
        loop {
            s.push(letters[n % 10]);
            n /= 10;
            if n == 0 {
                break;
            }
        }
        s
    }

    #[test]
    fn sampled_specs_are_valid() {
        let config = GeneratorConfig::default();
        let vocab = Vocabulary::bundled();
        for split in Split::ALL {
            for index in 0..200 {
                let spec = sample_chart(&config, &vocab, split, index);
                let violations = validate_spec(&spec);
                assert!(violations.is_empty(), "{}: {violations:?}", spec.id);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let config = GeneratorConfig::default();
        let vocab = Vocabulary::bundled();
        let a = sample_chart(&config, &vocab, Split::Train, 17);
        let b = sample_chart(&config, &vocab, Split::Train, 17);
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn labels_never_repeat_within_a_chart() {
        let config = GeneratorConfig::default();
        let vocab = Vocabulary::bundled();
        for index in 0..500 {
            let spec = sample_chart(&config, &vocab, Split::Train, index);
            let all: Vec<&str> = spec.all_labels().collect();
            let set: BTreeSet<&str> = all.iter().copied().collect();
            assert_eq!(all.len(), set.len(), "{}", spec.id);
        }
    }

    #[test]
    fn labels_come_from_the_right_split() {
        let config = GeneratorConfig::default();
        let vocab = Vocabulary::bundled();
        let familiar: BTreeSet<&str> = vocab.familiar_words.iter().map(String::as_str).collect();
        let novel: BTreeSet<&str> = vocab.novel_words.iter().map(String::as_str).collect();
        for index in 0..200 {
            let spec = sample_chart(&config, &vocab, Split::TestNovel, index);
            for label in spec.all_labels() {
                assert!(novel.contains(label) && !familiar.contains(label));
            }
            let spec = sample_chart(&config, &vocab, Split::Train, index);
            for label in spec.all_labels() {
                assert!(familiar.contains(label));
            }
        }
    }

    #[test]
    fn normalized_groups_sum_to_100() {
        let mut rng = ChartRng::from_seed(5);
        for _ in 0..500 {
            for &allow_zero in &[false, true] {
                let parts = rng.range_inclusive(2, 4) as usize;
                let comp = sample_composition(&mut rng, parts, allow_zero);
                assert_eq!(comp.iter().sum::<i64>(), 100);
                assert!(comp.iter().all(|&v| v % 10 == 0 && v >= 0));
                if !allow_zero {
                    assert!(comp.iter().all(|&v| v >= 10));
                }
            }
        }
    }

    #[test]
    fn config_parse_round_trip() {
        let cfg = GeneratorConfig {
            master_seed: 99,
            train_charts: 10,
            ..GeneratorConfig::default()
        };
        let text = cfg.to_key_value();
        let back = GeneratorConfig::parse(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn config_rejects_unknown_keys_and_bad_sums() {
        match GeneratorConfig::parse("bogus_key=1\n") {
            Err(ConfigError::UnknownKey { key, .. }) => assert_eq!(key, "bogus_key"),
            other => panic!("unexpected {other:?}"),
        }
        match GeneratorConfig::parse("linear_frac=0.9\npercentage_frac=0.9\n") {
            Err(ConfigError::DataTypeSum(_)) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
