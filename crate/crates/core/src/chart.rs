//! Symbolic chart representation shared by the sampler, layout engine,
//! question engine, and scorer.
//!
//! Values are exact integers end to end: linear and percentage charts store
//! the plotted value itself, exponential charts store the decade exponent.
//! Rendering converts to pixels late, so answer strings never pick up
//! floating-point drift.

use serde::{Deserialize, Serialize};

use crate::color::Rgb;
use crate::rng::Split;

/// Scale family for the value axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleKind {
    /// Values 0..=10 (0 = missing bar), optionally negated.
    Linear,
    /// Values 0, 10, 20, ..., 100.
    Percentage,
    /// Percentage values that sum to exactly 100 within each group.
    PercentageNormalized,
    /// Decade values 10^0..=10^10, stored as the exponent.
    Exponential,
}

/// Value-axis scale plus the per-chart flags that widen the legal range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataScale {
    pub kind: ScaleKind,
    /// Bars may carry negated values (non-stacked linear charts only).
    pub allow_negative: bool,
    /// Bars may be zero, which renders as a missing bar.
    pub allow_zero: bool,
}

impl DataScale {
    pub fn new(kind: ScaleKind) -> Self {
        DataScale {
            kind,
            allow_negative: false,
            allow_zero: false,
        }
    }

    /// The plotted magnitude of a stored value: `10^v` for exponential
    /// charts, `v` otherwise. Used wherever sums or differences of actual
    /// quantities are needed.
    pub fn magnitude(&self, v: i64) -> i64 {
        match self.kind {
            ScaleKind::Exponential => 10i64.pow(v as u32),
            _ => v,
        }
    }

    /// Range legality of a single stored value under this scale kind,
    /// ignoring the per-chart flags.
    pub fn value_in_range(&self, v: i64) -> bool {
        match self.kind {
            ScaleKind::Linear => (-10..=10).contains(&v),
            ScaleKind::Percentage | ScaleKind::PercentageNormalized => {
                (0..=100).contains(&v) && v % 10 == 0
            }
            ScaleKind::Exponential => (0..=10).contains(&v),
        }
    }
}

/// Bar direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Vertical,
    Horizontal,
}

/// How multiple series are arranged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grouping {
    /// One series; each group is a lone bar with its own label.
    Single,
    /// Series drawn side by side within each group.
    Grouped,
    /// Series stacked on top of one another; axis max set by the tallest stack.
    StackedAdditive,
    /// Stacked series normalized so every stack totals 100.
    StackedFractional,
}

impl Grouping {
    pub fn is_stacked(self) -> bool {
        matches!(self, Grouping::StackedAdditive | Grouping::StackedFractional)
    }
}

/// Title theme; drives how question templates are phrased.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theme {
    AlgorithmAccuracy,
    ObjectPreference,
    ItemSales,
    Generic,
}

impl Theme {
    pub const ALL: [Theme; 4] = [
        Theme::AlgorithmAccuracy,
        Theme::ObjectPreference,
        Theme::ItemSales,
        Theme::Generic,
    ];
}

/// Chart title and value-axis label, tied to the phrasing theme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextTheme {
    pub theme: Theme,
    pub title: String,
    pub value_axis_label: String,
}

/// Hatch patterns available for textured bars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hatch {
    Stripes,
    Dots,
    Circles,
    CrossHatch,
    Stars,
    Grid,
}

impl Hatch {
    pub const ALL: [Hatch; 6] = [
        Hatch::Stripes,
        Hatch::Dots,
        Hatch::Circles,
        Hatch::CrossHatch,
        Hatch::Stars,
        Hatch::Grid,
    ];
}

/// Legend placement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LegendPosition {
    Below,
    Right,
    Inside,
    None,
}

/// Label rotation is always resolved by the layout engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RotationPolicy {
    Auto,
}

/// Visual style knobs for one chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StyleSpec {
    pub grid_lines: bool,
    pub hatch: Option<Hatch>,
    pub palette: Vec<Rgb>,
    pub legend_position: LegendPosition,
    pub bar_width_ratio: f64,
    pub label_rotation_policy: RotationPolicy,
    pub font_size: f64,
}

/// Full symbolic description of one chart.
///
/// `values[group][series]` pairs with `group_labels[group]` and
/// `series_labels[series]`. Immutable after construction; instances are
/// freely shared between worker threads.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartSpec {
    pub id: String,
    pub title_context: ContextTheme,
    pub orientation: Orientation,
    pub grouping: Grouping,
    pub scale: DataScale,
    pub group_labels: Vec<String>,
    pub series_labels: Vec<String>,
    pub values: Vec<Vec<i64>>,
    pub style: StyleSpec,
    pub split: Split,
}

impl ChartSpec {
    pub fn group_count(&self) -> usize {
        self.group_labels.len()
    }

    pub fn series_count(&self) -> usize {
        self.series_labels.len()
    }

    pub fn is_multi_series(&self) -> bool {
        self.series_count() > 1
    }

    pub fn value(&self, group: usize, series: usize) -> i64 {
        self.values[group][series]
    }

    /// Iterate `(group, series, stored value)` over every cell.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .flat_map(|(g, row)| row.iter().enumerate().map(move |(s, &v)| (g, s, v)))
    }

    /// All label words on the chart (group labels then series labels).
    pub fn all_labels(&self) -> impl Iterator<Item = &str> {
        self.group_labels
            .iter()
            .chain(self.series_labels.iter())
            .map(String::as_str)
    }
}

/// One broken invariant: which field, which rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub field: String,
    pub rule: String,
}

impl Violation {
    fn new(field: &str, rule: impl Into<String>) -> Self {
        Violation {
            field: field.to_string(),
            rule: rule.into(),
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.rule)
    }
}

/// Check every structural invariant of a [`ChartSpec`].
///
/// Violations are data, not faults: an empty list means the spec is valid.
/// Pure and deterministic.
pub fn validate_spec(spec: &ChartSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let groups = spec.group_count();
    let series = spec.series_count();

    if groups == 0 {
        out.push(Violation::new("group_labels", "at least one group required"));
    }
    if series == 0 {
        out.push(Violation::new("series_labels", "at least one series required"));
    }
    if spec.values.len() != groups {
        out.push(Violation::new(
            "values",
            format!("row count {} != group count {}", spec.values.len(), groups),
        ));
    }
    for (g, row) in spec.values.iter().enumerate() {
        if row.len() != series {
            out.push(Violation::new(
                "values",
                format!("group {g} has {} values, expected {series}", row.len()),
            ));
        }
    }

    match spec.grouping {
        Grouping::Single => {
            if series != 1 {
                out.push(Violation::new("grouping", "single grouping requires exactly one series"));
            }
        }
        Grouping::Grouped => {
            if series < 2 {
                out.push(Violation::new("grouping", "grouped charts require more than one series"));
            }
        }
        Grouping::StackedAdditive => {
            if series < 2 {
                out.push(Violation::new("grouping", "stacked charts require more than one series"));
            }
            if spec.scale.kind != ScaleKind::Linear {
                out.push(Violation::new("grouping", "additive stacking requires the linear scale"));
            }
        }
        Grouping::StackedFractional => {
            if series < 2 {
                out.push(Violation::new("grouping", "stacked charts require more than one series"));
            }
            if spec.scale.kind != ScaleKind::PercentageNormalized {
                out.push(Violation::new(
                    "grouping",
                    "fractional stacking requires the percentage-normalized scale",
                ));
            }
        }
    }

    if spec.scale.allow_negative {
        if spec.scale.kind != ScaleKind::Linear {
            out.push(Violation::new("scale", "negative values only on linear charts"));
        }
        if spec.grouping.is_stacked() {
            out.push(Violation::new("scale", "negative values not allowed on stacked charts"));
        }
    }
    if spec.scale.allow_zero && spec.scale.kind == ScaleKind::Exponential {
        out.push(Violation::new("scale", "exponential charts cannot carry missing bars"));
    }

    for (g, s, v) in spec.cells() {
        let field = format!("values[{g}][{s}]");
        match spec.scale.kind {
            ScaleKind::Linear => {
                if !(-10..=10).contains(&v) {
                    out.push(Violation::new(&field, "linear out of range"));
                } else {
                    if v == 0 && !spec.scale.allow_zero {
                        out.push(Violation::new(&field, "zero without missing-bar flag"));
                    }
                    if v < 0 && !spec.scale.allow_negative {
                        out.push(Violation::new(&field, "negative without negative flag"));
                    }
                }
            }
            ScaleKind::Percentage | ScaleKind::PercentageNormalized => {
                if !spec.scale.value_in_range(v) {
                    out.push(Violation::new(&field, "percentage out of range"));
                } else if v == 0 && !spec.scale.allow_zero {
                    out.push(Violation::new(&field, "zero without missing-bar flag"));
                }
            }
            ScaleKind::Exponential => {
                if !(0..=10).contains(&v) {
                    out.push(Violation::new(&field, "exponent out of range"));
                }
            }
        }
    }

    if spec.scale.kind == ScaleKind::PercentageNormalized {
        for (g, row) in spec.values.iter().enumerate() {
            let sum: i64 = row.iter().sum();
            if sum != 100 {
                out.push(Violation::new(
                    &format!("values[{g}]"),
                    "group sum != 100",
                ));
            }
        }
    }

    let mut seen = std::collections::BTreeSet::new();
    for label in spec.all_labels() {
        if !seen.insert(label) {
            out.push(Violation::new("labels", format!("label {label:?} used twice")));
        }
        if label.is_empty() || !label.chars().all(|c| c.is_ascii_lowercase()) {
            out.push(Violation::new(
                "labels",
                format!("label {label:?} is not a lowercase word"),
            ));
        }
    }

    if spec.style.palette.len() < series {
        out.push(Violation::new("style.palette", "palette shorter than series count"));
    }
    if !(spec.style.bar_width_ratio > 0.0 && spec.style.bar_width_ratio <= 1.0) {
        out.push(Violation::new("style.bar_width_ratio", "ratio outside (0, 1]"));
    }
    if spec.style.font_size <= 0.0 {
        out.push(Violation::new("style.font_size", "font size must be positive"));
    }
    if spec.is_multi_series() {
        if spec.style.legend_position == LegendPosition::None {
            out.push(Violation::new("style.legend_position", "multi-series charts need a legend"));
        }
    } else if spec.style.legend_position != LegendPosition::None {
        out.push(Violation::new("style.legend_position", "single-series charts have no legend"));
    }

    out
}

/// Error from [`answer_value_format`] when the value cannot occur on the scale.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("value {value} is not legal on a {kind:?} scale")]
pub struct ValueFormatError {
    pub value: i64,
    pub kind: ScaleKind,
}

/// Render a stored bar value the way it appears in answers: plain digits for
/// linear and percentage scales, `10^k` for exponential, leading minus for
/// negated values.
pub fn answer_value_format(v: i64, scale: &DataScale) -> Result<String, ValueFormatError> {
    if !scale.value_in_range(v) {
        return Err(ValueFormatError {
            value: v,
            kind: scale.kind,
        });
    }
    Ok(match scale.kind {
        ScaleKind::Exponential => format!("10^{v}"),
        _ => v.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn small_spec() -> ChartSpec {
        ChartSpec {
            id: "t-0".into(),
            title_context: ContextTheme {
                theme: Theme::Generic,
                title: "Title".into(),
                value_axis_label: "Values".into(),
            },
            orientation: Orientation::Vertical,
            grouping: Grouping::Single,
            scale: DataScale::new(ScaleKind::Linear),
            group_labels: vec!["branch".into(), "sister".into(), "guest".into()],
            series_labels: vec!["aspect".into()],
            values: vec![vec![3], vec![7], vec![2]],
            style: StyleSpec {
                grid_lines: false,
                hatch: None,
                palette: vec![Rgb(31, 119, 180), Rgb(255, 127, 14), Rgb(44, 160, 44)],
                legend_position: LegendPosition::None,
                bar_width_ratio: 0.8,
                label_rotation_policy: RotationPolicy::Auto,
                font_size: 11.0,
            },
            split: Split::Train,
        }
    }

    #[test]
    fn valid_spec_passes() {
        assert!(validate_spec(&small_spec()).is_empty());
    }

    #[test]
    fn linear_out_of_range_flagged() {
        let mut spec = small_spec();
        spec.values[1][0] = 11;
        let v = validate_spec(&spec);
        assert!(v.iter().any(|x| x.rule == "linear out of range"), "{v:?}");
    }

    #[test]
    fn normalized_group_sum_checked() {
        let mut spec = small_spec();
        spec.grouping = Grouping::Grouped;
        spec.scale = DataScale::new(ScaleKind::PercentageNormalized);
        spec.series_labels = vec!["wine".into(), "stone".into(), "cloud".into()];
        spec.style.palette = vec![Rgb(0, 0, 0), Rgb(1, 1, 1), Rgb(2, 2, 2)];
        spec.style.legend_position = LegendPosition::Right;
        spec.values = vec![vec![30, 30, 30], vec![30, 30, 40], vec![20, 30, 50]];
        let v = validate_spec(&spec);
        assert!(v.iter().any(|x| x.rule == "group sum != 100"), "{v:?}");
        // only the first group is off
        assert_eq!(v.iter().filter(|x| x.rule == "group sum != 100").count(), 1);
    }

    #[test]
    fn zero_requires_flag() {
        let mut spec = small_spec();
        spec.values[0][0] = 0;
        assert!(validate_spec(&spec)
            .iter()
            .any(|x| x.rule == "zero without missing-bar flag"));
        spec.scale.allow_zero = true;
        assert!(validate_spec(&spec).is_empty());
    }

    #[test]
    fn negative_requires_flag_and_no_stacking() {
        let mut spec = small_spec();
        spec.values[2][0] = -4;
        assert!(!validate_spec(&spec).is_empty());
        spec.scale.allow_negative = true;
        assert!(validate_spec(&spec).is_empty());
    }

    #[test]
    fn duplicate_labels_flagged() {
        let mut spec = small_spec();
        spec.group_labels[1] = "branch".into();
        assert!(validate_spec(&spec)
            .iter()
            .any(|x| x.rule.contains("used twice")));
    }

    #[test]
    fn stacking_scale_restrictions() {
        let mut spec = small_spec();
        spec.grouping = Grouping::StackedFractional;
        spec.series_labels = vec!["wine".into(), "stone".into()];
        spec.style.palette = vec![Rgb(0, 0, 0), Rgb(1, 1, 1), Rgb(2, 2, 2)];
        spec.style.legend_position = LegendPosition::Inside;
        spec.values = vec![vec![3, 7], vec![2, 8], vec![5, 5]];
        let v = validate_spec(&spec);
        assert!(v
            .iter()
            .any(|x| x.rule.contains("fractional stacking requires")));
    }

    #[test]
    fn validate_is_deterministic() {
        let mut spec = small_spec();
        spec.values[1][0] = 42;
        assert_eq!(validate_spec(&spec), validate_spec(&spec));
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = small_spec();
        let json = serde_json::to_string(&spec).unwrap();
        let back: ChartSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(validate_spec(&spec), validate_spec(&back));
        assert_eq!(spec, back);
    }

    #[test]
    fn value_format_digits_and_decades() {
        let linear = DataScale::new(ScaleKind::Linear);
        let expo = DataScale::new(ScaleKind::Exponential);
        assert_eq!(answer_value_format(9, &linear).unwrap(), "9");
        assert_eq!(answer_value_format(0, &linear).unwrap(), "0");
        assert_eq!(answer_value_format(9, &expo).unwrap(), "10^9");
        let mut neg = linear;
        neg.allow_negative = true;
        assert_eq!(answer_value_format(-3, &neg).unwrap(), "-3");
        assert!(answer_value_format(11, &linear).is_err());
        assert!(answer_value_format(15, &DataScale::new(ScaleKind::Percentage)).is_err());
    }
}
