//! Scoring of prediction files against gold question records.
//!
//! Exact mode demands string identity after trimming and lowercasing;
//! edit-distance mode also accepts answers within one Levenshtein edit.
//! Reports break accuracy down by question family and by chart-specific
//! questions/answers, and a separate localization report grades predicted
//! answer boxes against the gold boxes over fixed IOU and center-distance
//! threshold tables.

use serde::{Deserialize, Serialize};

use crate::layout::PixelBox;
use crate::question::{Family, QARecord};

/// One model prediction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub question_id: String,
    pub answer: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_box: Option<PixelBox>,
}

/// String-match protocol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScoreMode {
    Exact,
    EditDistance1,
}

impl std::str::FromStr for ScoreMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(ScoreMode::Exact),
            "edit1" => Ok(ScoreMode::EditDistance1),
            other => Err(format!("unknown mode {other:?} (expected exact|edit1)")),
        }
    }
}

/// Levenshtein distance with unit insert/delete/substitute costs.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let cost = usize::from(ca != cb);
            cur[j + 1] = (prev[j + 1] + 1).min(cur[j] + 1).min(prev[j] + cost);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Answers are compared after trimming surrounding whitespace and
/// lowercasing; everything else is exact.
pub fn normalize_answer(s: &str) -> String {
    s.trim().to_lowercase()
}

/// Accuracy counter for one report cell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellStat {
    pub correct: u64,
    pub total: u64,
}

impl CellStat {
    fn add(&mut self, correct: bool) {
        self.total += 1;
        self.correct += u64::from(correct);
    }

    /// Accuracy in percent; empty cells read 0.
    pub fn percent(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * self.correct as f64 / self.total as f64
        }
    }
}

/// Accuracy aggregates for one scored split.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub mode: ScoreMode,
    pub overall: CellStat,
    pub structure: CellStat,
    pub data: CellStat,
    pub reasoning: CellStat,
    pub chart_specific_questions: CellStat,
    pub generic_questions: CellStat,
    pub chart_specific_answers: CellStat,
    pub generic_answers: CellStat,
    /// Gold ids that had no prediction; each was counted as wrong.
    pub missing_predictions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScoreError {
    #[error("duplicate prediction for question {0:?}")]
    DuplicatePrediction(String),
    #[error("prediction for unknown question {0:?}")]
    UnknownQuestion(String),
}

/// Score predictions against gold records. Every gold record is counted
/// exactly once; missing predictions count as wrong and are listed in the
/// report diagnostics.
pub fn score(
    preds: &[Prediction],
    gold: &[QARecord],
    mode: ScoreMode,
) -> Result<EvalReport, ScoreError> {
    let mut by_id: std::collections::HashMap<&str, &Prediction> =
        std::collections::HashMap::with_capacity(preds.len());
    let gold_ids: std::collections::HashSet<&str> =
        gold.iter().map(|g| g.question_id.as_str()).collect();
    for p in preds {
        if by_id.insert(p.question_id.as_str(), p).is_some() {
            return Err(ScoreError::DuplicatePrediction(p.question_id.clone()));
        }
        if !gold_ids.contains(p.question_id.as_str()) {
            return Err(ScoreError::UnknownQuestion(p.question_id.clone()));
        }
    }

    let mut report = EvalReport {
        mode,
        overall: CellStat::default(),
        structure: CellStat::default(),
        data: CellStat::default(),
        reasoning: CellStat::default(),
        chart_specific_questions: CellStat::default(),
        generic_questions: CellStat::default(),
        chart_specific_answers: CellStat::default(),
        generic_answers: CellStat::default(),
        missing_predictions: Vec::new(),
    };

    for record in gold {
        let correct = match by_id.get(record.question_id.as_str()) {
            Some(p) => {
                let want = normalize_answer(&record.answer);
                let got = normalize_answer(&p.answer);
                match mode {
                    ScoreMode::Exact => want == got,
                    ScoreMode::EditDistance1 => edit_distance(&want, &got) <= 1,
                }
            }
            None => {
                report.missing_predictions.push(record.question_id.clone());
                false
            }
        };
        report.overall.add(correct);
        match record.family {
            Family::Structure => report.structure.add(correct),
            Family::Data => report.data.add(correct),
            Family::Reasoning => report.reasoning.add(correct),
        }
        if record.chart_specific_question {
            report.chart_specific_questions.add(correct);
        } else {
            report.generic_questions.add(correct);
        }
        if record.chart_specific_answer {
            report.chart_specific_answers.add(correct);
        } else {
            report.generic_answers.add(correct);
        }
    }
    Ok(report)
}

impl EvalReport {
    /// Human-readable table, percentages to two decimals.
    pub fn render_text(&self) -> String {
        let mode = match self.mode {
            ScoreMode::Exact => "exact",
            ScoreMode::EditDistance1 => "edit-distance-1",
        };
        let row = |name: &str, c: &CellStat| {
            format!("{name:<28} {:>8} {:>8} {:>9.2}\n", c.correct, c.total, c.percent())
        };
        let mut out = String::new();
        out.push_str(&format!("mode: {mode}\n"));
        out.push_str(&format!("{:<28} {:>8} {:>8} {:>9}\n", "cell", "correct", "total", "percent"));
        out.push_str(&row("structure", &self.structure));
        out.push_str(&row("data", &self.data));
        out.push_str(&row("reasoning", &self.reasoning));
        out.push_str(&row("chart-specific questions", &self.chart_specific_questions));
        out.push_str(&row("generic questions", &self.generic_questions));
        out.push_str(&row("chart-specific answers", &self.chart_specific_answers));
        out.push_str(&row("generic answers", &self.generic_answers));
        out.push_str(&row("overall", &self.overall));
        if !self.missing_predictions.is_empty() {
            out.push_str(&format!(
                "missing predictions: {} (counted wrong)\n",
                self.missing_predictions.len()
            ));
        }
        out
    }
}

/// Intersection over union of two boxes; degenerate unions score 0.
pub fn iou(a: &PixelBox, b: &PixelBox) -> f64 {
    let x0 = a.x.max(b.x);
    let y0 = a.y.max(b.y);
    let x1 = a.right().min(b.right());
    let y1 = a.bottom().min(b.bottom());
    if x1 <= x0 || y1 <= y0 {
        return 0.0;
    }
    let inter = (x1 - x0) * (y1 - y0);
    let union = a.area() + b.area() - inter;
    if union <= 0.0 {
        return 0.0;
    }
    inter / union
}

/// IOU thresholds reported by the localization table.
pub const IOU_THRESHOLDS: [f64; 8] = [0.2, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

/// Center-distance thresholds (pixels) reported by the localization table.
pub const DISTANCE_THRESHOLDS: [f64; 5] = [1.0, 8.0, 16.0, 32.0, 64.0];

/// Box localization quality over the chart-specific-answer subset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalizationReport {
    /// `(threshold, percent of boxes with IOU >= threshold)`.
    pub iou_rows: Vec<(f64, f64)>,
    /// `(pixels, percent of boxes whose centers lie within)`.
    pub distance_rows: Vec<(f64, f64)>,
    /// Number of gold boxes scored against a predicted box.
    pub scored: u64,
    /// Gold records with a box but no predicted box.
    pub missing_boxes: Vec<String>,
}

/// Grade predicted boxes against the gold answer boxes. Only gold records
/// carrying a box participate; predictions without a box are listed and
/// skipped.
pub fn localization_report(preds: &[Prediction], gold: &[QARecord]) -> LocalizationReport {
    let by_id: std::collections::HashMap<&str, &Prediction> = preds
        .iter()
        .map(|p| (p.question_id.as_str(), p))
        .collect();

    let mut ious = Vec::new();
    let mut dists = Vec::new();
    let mut missing = Vec::new();
    for record in gold {
        let Some(gold_box) = record.answer_box else {
            continue;
        };
        let pred_box = by_id
            .get(record.question_id.as_str())
            .and_then(|p| p.predicted_box);
        match pred_box {
            Some(pb) => {
                ious.push(iou(&pb, &gold_box));
                let (gx, gy) = gold_box.center();
                let (px, py) = pb.center();
                dists.push(((gx - px).powi(2) + (gy - py).powi(2)).sqrt());
            }
            None => missing.push(record.question_id.clone()),
        }
    }

    let scored = ious.len() as u64;
    let pct = |count: usize| {
        if scored == 0 {
            0.0
        } else {
            100.0 * count as f64 / scored as f64
        }
    };
    LocalizationReport {
        iou_rows: IOU_THRESHOLDS
            .iter()
            .map(|&t| (t, pct(ious.iter().filter(|&&v| v >= t).count())))
            .collect(),
        distance_rows: DISTANCE_THRESHOLDS
            .iter()
            .map(|&d| (d, pct(dists.iter().filter(|&&v| v <= d).count())))
            .collect(),
        scored,
        missing_boxes: missing,
    }
}

impl LocalizationReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("localization over {} boxes\n", self.scored));
        out.push_str("IOU with ground truth     percent of boxes\n");
        for (t, p) in &self.iou_rows {
            out.push_str(&format!(">= {t:<20.1} {p:>10.2}\n"));
        }
        out.push_str("center distance           percent of boxes\n");
        for (d, p) in &self.distance_rows {
            out.push_str(&format!("<= {:<17} px {p:>10.2}\n", d));
        }
        if !self.missing_boxes.is_empty() {
            out.push_str(&format!("missing predicted boxes: {}\n", self.missing_boxes.len()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Plain quadratic DP table, kept independent of the rolling-row
    // implementation above.
    fn edit_distance_oracle(a: &str, b: &str) -> usize {
        let a: Vec<char> = a.chars().collect();
        let b: Vec<char> = b.chars().collect();
        let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
        for (i, row) in d.iter_mut().enumerate() {
            row[0] = i;
        }
        for j in 0..=b.len() {
            d[0][j] = j;
        }
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                let cost = usize::from(a[i - 1] != b[j - 1]);
                d[i][j] = (d[i - 1][j] + 1)
                    .min(d[i][j - 1] + 1)
                    .min(d[i - 1][j - 1] + cost);
            }
        }
        d[a.len()][b.len()]
    }

    fn gold_record(id: &str, answer: &str, family: Family, csq: bool, csa: bool) -> QARecord {
        QARecord {
            question_id: id.to_string(),
            chart_id: "c".into(),
            template_id: "S1".into(),
            question: "How many bars are there?".into(),
            answer: answer.to_string(),
            family,
            chart_specific_question: csq,
            chart_specific_answer: csa,
            answer_box: None,
        }
    }

    fn pred(id: &str, answer: &str) -> Prediction {
        Prediction {
            question_id: id.to_string(),
            answer: answer.to_string(),
            predicted_box: None,
        }
    }

    #[test]
    fn edit_distance_identity_and_known_pairs() {
        assert_eq!(edit_distance("branch", "branch"), 0);
        assert_eq!(edit_distance("lisit", "list"), 1);
        assert_eq!(edit_distance("kitten", "sitting"), 3);
        // Frozen from the quadratic oracle.
        assert_eq!(edit_distance_oracle("whidkw", "widow"), 2);
        assert_eq!(edit_distance("whidkw", "widow"), 2);
    }

    #[test]
    fn edit_distance_agrees_with_oracle_on_random_pairs() {
        let mut rng = crate::rng::ChartRng::from_seed(42);
        let alphabet: Vec<char> = "abcdez".chars().collect();
        for _ in 0..500 {
            let mk = |rng: &mut crate::rng::ChartRng| {
                let len = rng.below(9) as usize;
                (0..len).map(|_| *rng.choose(&alphabet)).collect::<String>()
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            assert_eq!(
                edit_distance(&a, &b),
                edit_distance_oracle(&a, &b),
                "{a:?} vs {b:?}"
            );
        }
    }

    #[test]
    fn perfect_predictions_score_100_everywhere() {
        let gold = vec![
            gold_record("q0", "yes", Family::Structure, false, false),
            gold_record("q1", "7", Family::Data, true, false),
            gold_record("q2", "branch", Family::Reasoning, false, true),
        ];
        let preds: Vec<Prediction> = gold.iter().map(|g| pred(&g.question_id, &g.answer)).collect();
        let report = score(&preds, &gold, ScoreMode::Exact).unwrap();
        assert_eq!(report.overall.percent(), 100.0);
        assert_eq!(report.structure.percent(), 100.0);
        assert_eq!(report.data.percent(), 100.0);
        assert_eq!(report.reasoning.percent(), 100.0);
        assert_eq!(report.chart_specific_answers.percent(), 100.0);
    }

    #[test]
    fn three_of_four_exact_one_off_by_an_edit() {
        let gold = vec![
            gold_record("q0", "list", Family::Data, false, true),
            gold_record("q1", "nine", Family::Data, false, false),
            gold_record("q2", "yes", Family::Structure, false, false),
            gold_record("q3", "widow", Family::Reasoning, false, true),
        ];
        let preds = vec![
            pred("q0", "lisit"), // one edit off
            pred("q1", "nine"),
            pred("q2", "yes"),
            pred("q3", "widow"),
        ];
        // "lisit" vs "list" is a single edit.
        assert_eq!(edit_distance("lisit", "list"), 1);
        let exact = score(&preds, &gold, ScoreMode::Exact).unwrap();
        let within1 = score(&preds, &gold, ScoreMode::EditDistance1).unwrap();
        assert_eq!(format!("{:.2}", exact.overall.percent()), "75.00");
        assert_eq!(format!("{:.2}", within1.overall.percent()), "100.00");
    }

    #[test]
    fn exact_accuracy_never_exceeds_edit1() {
        let gold: Vec<QARecord> = (0..50)
            .map(|i| gold_record(&format!("q{i}"), &format!("word{i}"), Family::Data, false, false))
            .collect();
        let preds: Vec<Prediction> = (0..50)
            .map(|i| {
                let answer = match i % 3 {
                    0 => format!("word{i}"),
                    1 => format!("word{i}x"),
                    _ => "other".to_string(),
                };
                pred(&format!("q{i}"), &answer)
            })
            .collect();
        let exact = score(&preds, &gold, ScoreMode::Exact).unwrap();
        let edit1 = score(&preds, &gold, ScoreMode::EditDistance1).unwrap();
        assert!(exact.overall.percent() <= edit1.overall.percent());
    }

    #[test]
    fn constant_yes_on_balanced_subset_scores_half() {
        let mut gold = Vec::new();
        for i in 0..40 {
            gold.push(gold_record(
                &format!("q{i}"),
                if i % 2 == 0 { "yes" } else { "no" },
                Family::Structure,
                false,
                false,
            ));
        }
        let preds: Vec<Prediction> = gold.iter().map(|g| pred(&g.question_id, "yes")).collect();
        let report = score(&preds, &gold, ScoreMode::Exact).unwrap();
        assert_eq!(report.structure.percent(), 50.0);
    }

    #[test]
    fn missing_predictions_counted_wrong_and_listed() {
        let gold = vec![
            gold_record("q0", "yes", Family::Structure, false, false),
            gold_record("q1", "no", Family::Structure, false, false),
        ];
        let preds = vec![pred("q0", "yes")];
        let report = score(&preds, &gold, ScoreMode::Exact).unwrap();
        assert_eq!(report.overall.correct, 1);
        assert_eq!(report.overall.total, 2);
        assert_eq!(report.missing_predictions, vec!["q1".to_string()]);
    }

    #[test]
    fn duplicate_and_unknown_ids_are_errors() {
        let gold = vec![gold_record("q0", "yes", Family::Structure, false, false)];
        let dup = vec![pred("q0", "yes"), pred("q0", "no")];
        assert_eq!(
            score(&dup, &gold, ScoreMode::Exact),
            Err(ScoreError::DuplicatePrediction("q0".into()))
        );
        let unknown = vec![pred("qX", "yes")];
        assert_eq!(
            score(&unknown, &gold, ScoreMode::Exact),
            Err(ScoreError::UnknownQuestion("qX".into()))
        );
    }

    #[test]
    fn score_is_permutation_invariant() {
        let gold: Vec<QARecord> = (0..20)
            .map(|i| gold_record(&format!("q{i}"), "yes", Family::Structure, false, false))
            .collect();
        let mut preds: Vec<Prediction> = (0..20)
            .map(|i| pred(&format!("q{i}"), if i < 9 { "yes" } else { "no" }))
            .collect();
        let a = score(&preds, &gold, ScoreMode::Exact).unwrap();
        preds.reverse();
        let b = score(&preds, &gold, ScoreMode::Exact).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn answer_comparison_trims_and_lowercases() {
        let gold = vec![gold_record("q0", "Branch", Family::Data, false, false)];
        let preds = vec![pred("q0", "  branch ")];
        let report = score(&preds, &gold, ScoreMode::Exact).unwrap();
        assert_eq!(report.overall.correct, 1);
    }

    #[test]
    fn iou_identity_disjoint_and_third() {
        let a = PixelBox::new(0.0, 0.0, 10.0, 10.0);
        assert_eq!(iou(&a, &a), 1.0);
        let far = PixelBox::new(30.0, 30.0, 10.0, 10.0);
        assert_eq!(iou(&a, &far), 0.0);
        // Areas 100 each, intersection 50, union 150.
        let half = PixelBox::new(5.0, 0.0, 10.0, 10.0);
        let v = iou(&a, &half);
        assert!((v - 1.0 / 3.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn localization_identical_boxes_hit_every_threshold() {
        let bbox = PixelBox::new(10.0, 20.0, 40.0, 14.0);
        let mut gold = gold_record("q0", "branch", Family::Data, false, true);
        gold.answer_box = Some(bbox);
        let preds = vec![Prediction {
            question_id: "q0".into(),
            answer: "branch".into(),
            predicted_box: Some(bbox),
        }];
        let report = localization_report(&preds, &[gold]);
        for (t, p) in &report.iou_rows {
            assert_eq!(*p, 100.0, "iou >= {t}");
        }
        for (d, p) in &report.distance_rows {
            assert_eq!(*p, 100.0, "dist <= {d}");
        }
    }

    #[test]
    fn localization_20px_shift_matches_hand_arithmetic() {
        let gold_box = PixelBox::new(100.0, 200.0, 40.0, 14.0);
        let shifted = PixelBox::new(120.0, 200.0, 40.0, 14.0);
        let mut gold = gold_record("q0", "branch", Family::Data, false, true);
        gold.answer_box = Some(gold_box);
        let preds = vec![Prediction {
            question_id: "q0".into(),
            answer: "branch".into(),
            predicted_box: Some(shifted),
        }];
        let report = localization_report(&preds, &[gold]);
        let by_d: std::collections::BTreeMap<String, f64> = report
            .distance_rows
            .iter()
            .map(|(d, p)| (format!("{d}"), *p))
            .collect();
        assert_eq!(by_d["1"], 0.0);
        assert_eq!(by_d["8"], 0.0);
        assert_eq!(by_d["16"], 0.0);
        assert_eq!(by_d["32"], 100.0);
        assert_eq!(by_d["64"], 100.0);
    }

    #[test]
    fn localization_rows_are_monotone_on_random_boxes() {
        let mut rng = crate::rng::ChartRng::from_seed(5);
        let mut gold = Vec::new();
        let mut preds = Vec::new();
        for i in 0..200 {
            let mk = |rng: &mut crate::rng::ChartRng| {
                PixelBox::new(
                    rng.below(300) as f64,
                    rng.below(300) as f64,
                    1.0 + rng.below(100) as f64,
                    1.0 + rng.below(40) as f64,
                )
            };
            let mut g = gold_record(&format!("q{i}"), "w", Family::Data, false, true);
            g.answer_box = Some(mk(&mut rng));
            gold.push(g);
            preds.push(Prediction {
                question_id: format!("q{i}"),
                answer: "w".into(),
                predicted_box: Some(mk(&mut rng)),
            });
        }
        let report = localization_report(&preds, &gold);
        for pair in report.iou_rows.windows(2) {
            assert!(pair[0].1 >= pair[1].1, "iou rows must be non-increasing");
        }
        for pair in report.distance_rows.windows(2) {
            assert!(pair[0].1 <= pair[1].1, "distance rows must be non-decreasing");
        }
    }
}
