//! Template-based question generation with a symbolic answer oracle.
//!
//! The catalog holds the 25 fixed templates: 7 structure, 8 data retrieval,
//! and 10 reasoning. A template is instantiated against one chart by
//! filling its slots (entities, positions, thresholds, polarity) from the
//! chart's own labels, phrasing the text through the chart's title theme,
//! and computing the answer from the stored value matrix. Answers are never
//! read back from rendered geometry.

mod balance;
mod oracle;
mod phrasing;
mod words;

pub use balance::balance;
pub use oracle::answer_oracle;
pub use words::{count_to_word, ordinal_word, NegativeCount};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::chart::{ChartSpec, Orientation, ScaleKind, Theme};
use crate::layout::{ChartMetadata, PixelBox};
use crate::rng::ChartRng;

/// Question family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Structure,
    Data,
    Reasoning,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Structure, Family::Data, Family::Reasoning];

    pub fn name(self) -> &'static str {
        match self {
            Family::Structure => "structure",
            Family::Data => "data",
            Family::Reasoning => "reasoning",
        }
    }
}

/// What shape of answer a template produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnswerKind {
    YesNo,
    CountWord,
    Value,
    Label,
    ColorDependentLabel,
}

/// One question template.
#[derive(Clone, Debug, Serialize)]
pub struct Template {
    pub id: &'static str,
    pub family: Family,
    pub answer_kind: AnswerKind,
    /// Generic form of the question with slot markers.
    pub pattern: &'static str,
    /// Whether [`balance`] equalizes this template's answers.
    pub balanced: bool,
}

/// The 7 structure, 8 data-retrieval, and 10 reasoning templates.
pub const TEMPLATES: [Template; 25] = [
    Template { id: "S1", family: Family::Structure, answer_kind: AnswerKind::CountWord, pattern: "How many bars are there?", balanced: true },
    Template { id: "S2", family: Family::Structure, answer_kind: AnswerKind::CountWord, pattern: "How many <groups/stacks> of bars are there?", balanced: true },
    Template { id: "S3", family: Family::Structure, answer_kind: AnswerKind::CountWord, pattern: "How many bars are there per <group/stack>?", balanced: true },
    Template { id: "S4", family: Family::Structure, answer_kind: AnswerKind::YesNo, pattern: "Does the chart contain any negative values?", balanced: true },
    Template { id: "S5", family: Family::Structure, answer_kind: AnswerKind::YesNo, pattern: "Are the bars horizontal?", balanced: true },
    Template { id: "S6", family: Family::Structure, answer_kind: AnswerKind::YesNo, pattern: "Does the chart contain stacked bars?", balanced: true },
    Template { id: "S7", family: Family::Structure, answer_kind: AnswerKind::YesNo, pattern: "Is each bar a single solid color without patterns?", balanced: true },
    Template { id: "D1", family: Family::Data, answer_kind: AnswerKind::YesNo, pattern: "Are the values in the chart presented in a logarithmic scale?", balanced: true },
    Template { id: "D2", family: Family::Data, answer_kind: AnswerKind::YesNo, pattern: "Are the values in the chart presented in a percentage scale?", balanced: true },
    Template { id: "D3", family: Family::Data, answer_kind: AnswerKind::Value, pattern: "<What is the value of> <L>?", balanced: false },
    Template { id: "D4", family: Family::Data, answer_kind: AnswerKind::Label, pattern: "What is the label of the <k-th> bar from the <left/bottom>?", balanced: false },
    Template { id: "D5", family: Family::Data, answer_kind: AnswerKind::Label, pattern: "What is the label of the <k-th> <group/stack> of bars from the <left/bottom>?", balanced: false },
    Template { id: "D6", family: Family::Data, answer_kind: AnswerKind::Label, pattern: "What is the label of the <k-th> bar from the <left/bottom> in each <group/stack>?", balanced: false },
    Template { id: "D7", family: Family::Data, answer_kind: AnswerKind::ColorDependentLabel, pattern: "What <entity> does the <C> color represent?", balanced: false },
    Template { id: "D8", family: Family::Data, answer_kind: AnswerKind::Value, pattern: "<What is the value of> <L1> in <L2>?", balanced: false },
    Template { id: "R1", family: Family::Reasoning, answer_kind: AnswerKind::Label, pattern: "Which <entity> has the <highest/lowest> <value>?", balanced: false },
    Template { id: "R2", family: Family::Reasoning, answer_kind: AnswerKind::CountWord, pattern: "How many <entities> have <values> <more/less> than <N>?", balanced: false },
    Template { id: "R3", family: Family::Reasoning, answer_kind: AnswerKind::Value, pattern: "What is the difference between the largest and the smallest value in the chart?", balanced: false },
    Template { id: "R4", family: Family::Reasoning, answer_kind: AnswerKind::CountWord, pattern: "How many <entities> have <values> <more/less> than <N> in at least one <context>?", balanced: false },
    Template { id: "R5", family: Family::Reasoning, answer_kind: AnswerKind::Value, pattern: "What is the sum of the <values> of <L1> and <L2>?", balanced: false },
    Template { id: "R6", family: Family::Reasoning, answer_kind: AnswerKind::YesNo, pattern: "Is the <value> of <L1> <less/more> than <L2>?", balanced: true },
    Template { id: "R7", family: Family::Reasoning, answer_kind: AnswerKind::CountWord, pattern: "How many <groups/stacks> of bars contain at least one bar with value <greater/smaller> than <N>?", balanced: false },
    Template { id: "R8", family: Family::Reasoning, answer_kind: AnswerKind::Label, pattern: "Which <entity> has the <highest/lowest> <value> in any <context>?", balanced: false },
    Template { id: "R9", family: Family::Reasoning, answer_kind: AnswerKind::Label, pattern: "Which <entity> has the <largest/smallest> <value> summed across all the <contexts>?", balanced: false },
    Template { id: "R10", family: Family::Reasoning, answer_kind: AnswerKind::YesNo, pattern: "Is the <value> of <L1> in <C1> <larger/smaller> than <L2> in <C2>?", balanced: true },
];

/// Look up a template by its stable id.
pub fn template_by_id(id: &str) -> Option<&'static Template> {
    TEMPLATES.iter().find(|t| t.id == id)
}

/// One question instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QARecord {
    pub question_id: String,
    pub chart_id: String,
    pub template_id: String,
    pub question: String,
    pub answer: String,
    pub family: Family,
    pub chart_specific_question: bool,
    pub chart_specific_answer: bool,
    pub answer_box: Option<PixelBox>,
}

/// Resolved slot values for one instantiation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Slots {
    pub group_a: Option<usize>,
    pub group_b: Option<usize>,
    pub series_a: Option<usize>,
    pub series_b: Option<usize>,
    /// 1-based position for positional templates.
    pub ordinal: Option<usize>,
    /// Threshold in stored-value units.
    pub threshold: Option<i64>,
    /// Comparison polarity: true means more/higher/larger.
    pub more: Option<bool>,
}

/// Positional phrase for entities laid out along the category axis.
pub(crate) fn category_direction(spec: &ChartSpec) -> &'static str {
    match spec.orientation {
        Orientation::Vertical => "left",
        Orientation::Horizontal => "bottom",
    }
}

/// Positional phrase for bars inside one group or stack.
pub(crate) fn within_group_direction(spec: &ChartSpec) -> &'static str {
    match (spec.orientation, spec.grouping.is_stacked()) {
        (Orientation::Vertical, false) => "left",
        (Orientation::Vertical, true) => "bottom",
        (Orientation::Horizontal, false) => "bottom",
        (Orientation::Horizontal, true) => "left",
    }
}

pub(crate) fn group_collective(spec: &ChartSpec) -> &'static str {
    if spec.grouping.is_stacked() {
        "stack"
    } else {
        "group"
    }
}

fn has_zero_value(spec: &ChartSpec) -> bool {
    spec.scale.kind != ScaleKind::Exponential && spec.cells().any(|(_, _, v)| v == 0)
}

/// Index of the unique optimum, or None on ties.
fn unique_argopt(values: &[i64], want_max: bool) -> Option<usize> {
    let opt = if want_max {
        values.iter().max()?
    } else {
        values.iter().min()?
    };
    let mut hits = values.iter().enumerate().filter(|(_, v)| *v == opt);
    let first = hits.next()?.0;
    if hits.next().is_some() {
        None
    } else {
        Some(first)
    }
}

/// For single-series charts: the per-group magnitudes.
fn single_values(spec: &ChartSpec) -> Vec<i64> {
    spec.values
        .iter()
        .map(|row| spec.scale.magnitude(row[0]))
        .collect()
}

/// Group index holding the global optimum, or None if two groups tie.
fn optimum_group(spec: &ChartSpec, want_max: bool) -> Option<usize> {
    let mags: Vec<(usize, i64)> = spec
        .cells()
        .map(|(g, _, v)| (g, spec.scale.magnitude(v)))
        .collect();
    let opt = if want_max {
        mags.iter().map(|&(_, m)| m).max()?
    } else {
        mags.iter().map(|&(_, m)| m).min()?
    };
    let groups: BTreeSet<usize> = mags
        .iter()
        .filter(|&&(_, m)| m == opt)
        .map(|&(g, _)| g)
        .collect();
    if groups.len() == 1 {
        groups.into_iter().next()
    } else {
        None
    }
}

fn group_sums(spec: &ChartSpec) -> Vec<i64> {
    spec.values
        .iter()
        .map(|row| row.iter().map(|&v| spec.scale.magnitude(v)).sum())
        .collect()
}

/// Distinct color names over the entities a color question can refer to:
/// series for multi-series charts, bars otherwise.
fn color_names_distinct(spec: &ChartSpec, meta: &ChartMetadata) -> bool {
    if spec.is_multi_series() {
        let names: BTreeSet<&str> = meta
            .legend_boxes
            .iter()
            .map(|l| l.color_name.as_str())
            .collect();
        names.len() == spec.series_count()
    } else {
        if spec.style.palette.len() < spec.group_count() {
            return false;
        }
        let names: BTreeSet<&str> = meta.bars.iter().map(|b| b.color_name.as_str()).collect();
        names.len() == spec.group_count()
    }
}

/// Which templates can be asked of this chart. Templates whose referents do
/// not exist, or whose answers would be ill-defined (ties, ambiguous
/// positions), are excluded.
pub fn applicable_templates(spec: &ChartSpec, meta: &ChartMetadata) -> Vec<&'static Template> {
    let multi = spec.is_multi_series();
    let zeros = has_zero_value(spec);
    TEMPLATES
        .iter()
        .filter(|t| match t.id {
            "S1" | "S4" | "S5" | "S6" | "S7" | "D1" | "D2" => true,
            "S2" => multi,
            "S3" => {
                multi && {
                    let counts: Vec<usize> = spec
                        .values
                        .iter()
                        .map(|row| {
                            row.iter()
                                .filter(|&&v| spec.scale.magnitude(v) != 0)
                                .count()
                        })
                        .collect();
                    counts.iter().all(|&c| c == counts[0] && c > 0)
                }
            }
            "D3" => !multi,
            // Positional questions need every slot occupied, otherwise
            // visual position and data index disagree.
            "D4" => !multi && !zeros,
            "D5" => multi && !zeros,
            "D6" => multi && !zeros,
            "D7" => color_names_distinct(spec, meta),
            "D8" => multi,
            "R1" => {
                !multi && {
                    let vals = single_values(spec);
                    unique_argopt(&vals, true).is_some() || unique_argopt(&vals, false).is_some()
                }
            }
            "R2" => !multi,
            "R3" => spec.scale.kind != ScaleKind::Exponential,
            "R4" => multi && spec.title_context.theme != Theme::Generic,
            "R5" => !multi && spec.scale.kind != ScaleKind::Exponential,
            "R6" => !multi,
            "R7" => multi,
            "R8" => {
                multi && (optimum_group(spec, true).is_some() || optimum_group(spec, false).is_some())
            }
            "R9" => {
                multi && {
                    let sums = group_sums(spec);
                    unique_argopt(&sums, true).is_some() || unique_argopt(&sums, false).is_some()
                }
            }
            "R10" => multi,
            other => unreachable!("unknown template {other}"),
        })
        .collect()
}

/// Threshold values a chart's scale can express.
fn threshold_candidates(spec: &ChartSpec) -> Vec<i64> {
    match spec.scale.kind {
        ScaleKind::Linear => (1..=10).collect(),
        ScaleKind::Percentage | ScaleKind::PercentageNormalized => {
            (1..=10).map(|v| v * 10).collect()
        }
        ScaleKind::Exponential => (0..=10).collect(),
    }
}

/// Count entities qualifying against a threshold, for R2 (bars) and
/// R4/R7 (groups with at least one qualifying bar).
fn threshold_count(spec: &ChartSpec, per_group: bool, n: i64, more: bool) -> i64 {
    let hit = |v: i64| if more { v > n } else { v < n };
    if per_group {
        spec.values
            .iter()
            .filter(|row| row.iter().any(|&v| hit(v)))
            .count() as i64
    } else {
        spec.cells().filter(|&(_, _, v)| hit(v)).count() as i64
    }
}

/// Draw a threshold, preferring values whose answer is neither zero nor
/// every entity (three draws in four), so degenerate answers stay present
/// but no longer dominate.
fn draw_threshold(
    spec: &ChartSpec,
    per_group: bool,
    more: bool,
    rng: &mut ChartRng,
) -> i64 {
    let candidates = threshold_candidates(spec);
    let total = if per_group {
        spec.group_count() as i64
    } else {
        (spec.group_count() * spec.series_count()) as i64
    };
    let informative: Vec<i64> = candidates
        .iter()
        .copied()
        .filter(|&n| {
            let c = threshold_count(spec, per_group, n, more);
            c > 0 && c < total
        })
        .collect();
    if !informative.is_empty() && rng.chance(0.75) {
        *rng.choose(&informative)
    } else {
        *rng.choose(&candidates)
    }
}

/// Choose a polarity among those that keep the answer well-defined.
fn draw_polarity(valid_max: bool, valid_min: bool, rng: &mut ChartRng) -> bool {
    match (valid_max, valid_min) {
        (true, true) => rng.chance(0.5),
        (true, false) => true,
        (false, true) => false,
        (false, false) => unreachable!("applicability guarantees a valid polarity"),
    }
}

/// Fill a template's slots for this chart.
fn draw_slots(template: &Template, spec: &ChartSpec, rng: &mut ChartRng) -> Slots {
    let mut slots = Slots::default();
    let groups = spec.group_count();
    let series = spec.series_count();
    match template.id {
        "D3" => slots.group_a = Some(rng.below(groups as u64) as usize),
        "D4" | "D5" => slots.ordinal = Some(1 + rng.below(groups as u64) as usize),
        "D6" => slots.ordinal = Some(1 + rng.below(series as u64) as usize),
        "D7" => {
            if spec.is_multi_series() {
                slots.series_a = Some(rng.below(series as u64) as usize);
            } else {
                slots.group_a = Some(rng.below(groups as u64) as usize);
            }
        }
        "D8" => {
            slots.group_a = Some(rng.below(groups as u64) as usize);
            slots.series_a = Some(rng.below(series as u64) as usize);
        }
        "R1" => {
            let vals = single_values(spec);
            let more = draw_polarity(
                unique_argopt(&vals, true).is_some(),
                unique_argopt(&vals, false).is_some(),
                rng,
            );
            slots.more = Some(more);
        }
        "R2" => {
            let more = rng.chance(0.5);
            slots.more = Some(more);
            slots.threshold = Some(draw_threshold(spec, false, more, rng));
        }
        "R4" => {
            let more = rng.chance(0.5);
            slots.more = Some(more);
            slots.threshold = Some(draw_threshold(spec, true, more, rng));
        }
        "R5" | "R6" => {
            let picks = rng.sample_distinct(groups, 2);
            slots.group_a = Some(picks[0]);
            slots.group_b = Some(picks[1]);
            if template.id == "R6" {
                slots.more = Some(rng.chance(0.5));
            }
        }
        "R7" => {
            let more = rng.chance(0.5);
            slots.more = Some(more);
            slots.threshold = Some(draw_threshold(spec, true, more, rng));
        }
        "R8" => {
            slots.more = Some(draw_polarity(
                optimum_group(spec, true).is_some(),
                optimum_group(spec, false).is_some(),
                rng,
            ));
        }
        "R9" => {
            let sums = group_sums(spec);
            slots.more = Some(draw_polarity(
                unique_argopt(&sums, true).is_some(),
                unique_argopt(&sums, false).is_some(),
                rng,
            ));
        }
        "R10" => {
            let g = rng.sample_distinct(groups, 2);
            let s = rng.sample_distinct(series, 2);
            slots.group_a = Some(g[0]);
            slots.group_b = Some(g[1]);
            slots.series_a = Some(s[0]);
            slots.series_b = Some(s[1]);
            slots.more = Some(rng.chance(0.5));
        }
        _ => {}
    }
    slots
}

/// Instantiate one template against a chart: fills slots, phrases the
/// question through the chart's theme, computes the answer symbolically,
/// and attaches the answer's text box when the answer is a chart label.
pub fn instantiate(
    template: &Template,
    spec: &ChartSpec,
    meta: &ChartMetadata,
    rng: &mut ChartRng,
) -> QARecord {
    let slots = draw_slots(template, spec, rng);
    let question = phrasing::question_text(template, spec, meta, &slots);
    let answer = answer_oracle(template, spec, &slots);

    let (family, csq, csa) = classify_parts(&question, &answer, template, spec);
    let answer_box = if csa {
        let tb = meta
            .find_label_box(&answer)
            .unwrap_or_else(|| panic!("no text box for answer {answer:?} on {}", spec.id));
        Some(tb.bbox)
    } else {
        None
    };

    QARecord {
        question_id: String::new(),
        chart_id: spec.id.clone(),
        template_id: template.id.to_string(),
        question,
        answer,
        family,
        chart_specific_question: csq,
        chart_specific_answer: csa,
        answer_box,
    }
}

/// Lowercased word tokens of a question.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|w| {
            w.trim_matches(|c: char| !(c.is_ascii_alphanumeric() || c == '^' || c == '-'))
                .to_ascii_lowercase()
        })
        .filter(|w| !w.is_empty())
        .collect()
}

fn classify_parts(
    question: &str,
    answer: &str,
    template: &Template,
    spec: &ChartSpec,
) -> (Family, bool, bool) {
    let labels: BTreeSet<&str> = spec.all_labels().collect();
    let csq = tokenize(question).iter().any(|t| labels.contains(t.as_str()));
    let csa = labels.contains(answer);
    (template.family, csq, csa)
}

/// Re-derive the family and chart-specific flags for a record.
pub fn classify(record: &QARecord, spec: &ChartSpec) -> (Family, bool, bool) {
    let template = template_by_id(&record.template_id)
        .unwrap_or_else(|| panic!("unknown template {}", record.template_id));
    classify_parts(&record.question, &record.answer, template, spec)
}

/// Generate the full question set for one accepted chart: one instance per
/// applicable template, in catalog order.
pub fn generate_for_chart(
    spec: &ChartSpec,
    meta: &ChartMetadata,
    rng: &mut ChartRng,
) -> Vec<QARecord> {
    let mut records = Vec::new();
    for template in applicable_templates(spec, meta) {
        let mut record = instantiate(template, spec, meta, rng);
        record.question_id = format!("{}-q{:02}", spec.id, records.len());
        records.push(record);
    }
    records
}

/// Derive the global question vocabulary and answer dictionary from a
/// generated train split.
pub fn build_global_vocabs(records: &[QARecord]) -> (BTreeSet<String>, Vec<String>) {
    let mut question_vocab = BTreeSet::new();
    let mut answers = BTreeSet::new();
    for r in records {
        for token in tokenize(&r.question) {
            question_vocab.insert(token);
        }
        answers.insert(r.answer.clone());
    }
    (question_vocab, answers.into_iter().collect())
}

/// Serializable catalog entry for the exported template listing.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub family: Family,
    pub answer_kind: AnswerKind,
    pub pattern: &'static str,
    pub balanced: bool,
}

pub fn catalog() -> Vec<CatalogEntry> {
    TEMPLATES
        .iter()
        .map(|t| CatalogEntry {
            id: t.id,
            family: t.family,
            answer_kind: t.answer_kind,
            pattern: t.pattern,
            balanced: t.balanced,
        })
        .collect()
}
