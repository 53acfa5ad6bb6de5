//! Theme-dependent question text for each template.
//!
//! The same chart reads differently under different titles: a value lookup
//! becomes "What is the accuracy of the algorithm X?" on an accuracy chart
//! and "How many units of the item X were sold?" on a sales chart. Slot
//! words always come from the chart's own labels.

use crate::chart::{ChartSpec, ScaleKind, Theme};
use crate::layout::ChartMetadata;

use super::words::ordinal_word;
use super::{category_direction, group_collective, within_group_direction, Slots, Template};

fn percentage_scaled(spec: &ChartSpec) -> bool {
    matches!(
        spec.scale.kind,
        ScaleKind::Percentage | ScaleKind::PercentageNormalized
    )
}

fn threshold_text(spec: &ChartSpec, n: i64) -> String {
    crate::chart::answer_value_format(n, &spec.scale).expect("threshold drawn from scale range")
}

pub(super) fn question_text(
    template: &Template,
    spec: &ChartSpec,
    meta: &ChartMetadata,
    slots: &Slots,
) -> String {
    let theme = spec.title_context.theme;
    let g_label = |slot: Option<usize>| spec.group_labels[slot.expect("group slot")].clone();
    let s_label = |slot: Option<usize>| spec.series_labels[slot.expect("series slot")].clone();
    let more = || slots.more.expect("polarity slot");
    let n_text = || threshold_text(spec, slots.threshold.expect("threshold slot"));

    match template.id {
        "S1" => "How many bars are there?".to_string(),
        "S2" => format!("How many {}s of bars are there?", group_collective(spec)),
        "S3" => format!("How many bars are there per {}?", group_collective(spec)),
        "S4" => "Does the chart contain any negative values?".to_string(),
        "S5" => "Are the bars horizontal?".to_string(),
        "S6" => "Does the chart contain stacked bars?".to_string(),
        "S7" => "Is each bar a single solid color without patterns?".to_string(),
        "D1" => "Are the values in the chart presented in a logarithmic scale?".to_string(),
        "D2" => "Are the values in the chart presented in a percentage scale?".to_string(),
        "D3" => {
            let label = g_label(slots.group_a);
            match theme {
                Theme::AlgorithmAccuracy => {
                    format!("What is the accuracy of the algorithm {label}?")
                }
                Theme::ObjectPreference if percentage_scaled(spec) => {
                    format!("What percentage of people prefer the object {label}?")
                }
                Theme::ObjectPreference => {
                    format!("How many people prefer the object {label}?")
                }
                Theme::ItemSales => format!("How many units of the item {label} were sold?"),
                Theme::Generic => format!("What is the value of {label}?"),
            }
        }
        "D4" => format!(
            "What is the label of the {} bar from the {}?",
            ordinal_word(slots.ordinal.expect("ordinal slot")),
            category_direction(spec)
        ),
        "D5" => format!(
            "What is the label of the {} {} of bars from the {}?",
            ordinal_word(slots.ordinal.expect("ordinal slot")),
            group_collective(spec),
            category_direction(spec)
        ),
        "D6" => format!(
            "What is the label of the {} bar from the {} in each {}?",
            ordinal_word(slots.ordinal.expect("ordinal slot")),
            within_group_direction(spec),
            group_collective(spec)
        ),
        "D7" => {
            let color = if spec.is_multi_series() {
                let s = slots.series_a.expect("series slot");
                meta.legend_boxes[s].color_name.clone()
            } else {
                let g = slots.group_a.expect("group slot");
                meta.bar(g, 0).expect("bar meta").color_name.clone()
            };
            let entity = match theme {
                Theme::AlgorithmAccuracy => {
                    if spec.is_multi_series() {
                        "dataset"
                    } else {
                        "algorithm"
                    }
                }
                Theme::ObjectPreference => {
                    if spec.is_multi_series() {
                        "category"
                    } else {
                        "object"
                    }
                }
                Theme::ItemSales => {
                    if spec.is_multi_series() {
                        "store"
                    } else {
                        "item"
                    }
                }
                Theme::Generic => "element",
            };
            format!("What {entity} does the {color} color represent?")
        }
        "D8" => {
            let g = g_label(slots.group_a);
            let s = s_label(slots.series_a);
            match theme {
                Theme::AlgorithmAccuracy => {
                    format!("What is the accuracy of the algorithm {g} in the dataset {s}?")
                }
                Theme::ObjectPreference if percentage_scaled(spec) => {
                    format!("What percentage of people prefer the object {g} in the category {s}?")
                }
                Theme::ObjectPreference => {
                    format!("How many people prefer the object {g} in the category {s}?")
                }
                Theme::ItemSales => {
                    format!("How many units of the item {g} were sold in the store {s}?")
                }
                Theme::Generic => format!("What is the value of {g} in {s}?"),
            }
        }
        "R1" => match theme {
            Theme::AlgorithmAccuracy => format!(
                "Which algorithm has the {} accuracy?",
                if more() { "highest" } else { "lowest" }
            ),
            Theme::ObjectPreference => format!(
                "Which object is preferred by the {} number of people?",
                if more() { "most" } else { "least" }
            ),
            Theme::ItemSales => format!(
                "Which item sold the {} units?",
                if more() { "most" } else { "least" }
            ),
            Theme::Generic => format!(
                "Which bar has the {} value?",
                if more() { "largest" } else { "smallest" }
            ),
        },
        "R2" => match theme {
            Theme::AlgorithmAccuracy => format!(
                "How many algorithms have accuracies {} than {}?",
                if more() { "higher" } else { "lower" },
                n_text()
            ),
            Theme::ObjectPreference => format!(
                "How many objects are preferred by {} than {} people?",
                if more() { "more" } else { "less" },
                n_text()
            ),
            Theme::ItemSales => format!(
                "How many items sold {} than {} units?",
                if more() { "more" } else { "less" },
                n_text()
            ),
            Theme::Generic => format!(
                "How many bars have values {} than {}?",
                if more() { "larger" } else { "smaller" },
                n_text()
            ),
        },
        "R3" => "What is the difference between the largest and the smallest value in the chart?"
            .to_string(),
        "R4" => match theme {
            Theme::AlgorithmAccuracy => format!(
                "How many algorithms have accuracy {} than {} in at least one dataset?",
                if more() { "higher" } else { "lower" },
                n_text()
            ),
            Theme::ObjectPreference => format!(
                "How many objects are preferred by {} than {} people in at least one category?",
                if more() { "more" } else { "less" },
                n_text()
            ),
            Theme::ItemSales => format!(
                "How many items sold {} than {} units in at least one store?",
                if more() { "more" } else { "less" },
                n_text()
            ),
            Theme::Generic => unreachable!("R4 is not asked of generic charts"),
        },
        "R5" => {
            let a = g_label(slots.group_a);
            let b = g_label(slots.group_b);
            match theme {
                Theme::AlgorithmAccuracy => {
                    format!("What is the sum of the accuracies of the algorithms {a} and {b}?")
                }
                Theme::ObjectPreference if percentage_scaled(spec) => format!(
                    "What is the sum of the percentages of people who prefer the objects {a} and {b}?"
                ),
                Theme::ObjectPreference => {
                    format!("How many people prefer the objects {a} and {b} combined?")
                }
                Theme::ItemSales => format!("How many units of the items {a} and {b} were sold?"),
                Theme::Generic => format!("What is the sum of the values of {a} and {b}?"),
            }
        }
        "R6" => {
            let a = g_label(slots.group_a);
            let b = g_label(slots.group_b);
            match theme {
                Theme::AlgorithmAccuracy => format!(
                    "Is the accuracy of the algorithm {a} {} than the accuracy of the algorithm {b}?",
                    if more() { "larger" } else { "smaller" }
                ),
                Theme::ObjectPreference => format!(
                    "Is the object {a} preferred by {} people than the object {b}?",
                    if more() { "more" } else { "less" }
                ),
                Theme::ItemSales => format!(
                    "Did the item {a} sell {} units than the item {b}?",
                    if more() { "more" } else { "less" }
                ),
                Theme::Generic => format!(
                    "Is the value of {a} {} than {b}?",
                    if more() { "larger" } else { "smaller" }
                ),
            }
        }
        "R7" => format!(
            "How many {}s of bars contain at least one bar with value {} than {}?",
            group_collective(spec),
            if more() { "greater" } else { "smaller" },
            n_text()
        ),
        "R8" => match theme {
            Theme::AlgorithmAccuracy => format!(
                "Which algorithm has the {} accuracy for any dataset?",
                if more() { "highest" } else { "lowest" }
            ),
            Theme::ObjectPreference => format!(
                "Which object is preferred by the {} people in any category?",
                if more() { "most" } else { "least" }
            ),
            Theme::ItemSales => format!(
                "Which item sold the {} units in any store?",
                if more() { "most" } else { "least" }
            ),
            Theme::Generic => format!(
                "Which {} of bars contains the {} valued bar in the whole chart?",
                group_collective(spec),
                if more() { "largest" } else { "smallest" }
            ),
        },
        "R9" => match theme {
            Theme::AlgorithmAccuracy => format!(
                "Which algorithm has the {} accuracy summed across all the datasets?",
                if more() { "largest" } else { "smallest" }
            ),
            Theme::ObjectPreference => format!(
                "Which object is preferred by the {} number of people summed across all the categories?",
                if more() { "most" } else { "least" }
            ),
            Theme::ItemSales => format!(
                "Which item sold the {} number of units summed across all the stores?",
                if more() { "most" } else { "least" }
            ),
            Theme::Generic => format!(
                "Which {} of bars has the {} total value?",
                group_collective(spec),
                if more() { "largest" } else { "smallest" }
            ),
        },
        "R10" => {
            let g1 = g_label(slots.group_a);
            let g2 = g_label(slots.group_b);
            let s1 = s_label(slots.series_a);
            let s2 = s_label(slots.series_b);
            let cmp = if more() { "larger" } else { "smaller" };
            match theme {
                Theme::AlgorithmAccuracy => format!(
                    "Is the accuracy of the algorithm {g1} in the dataset {s1} {cmp} than the accuracy of the algorithm {g2} in the dataset {s2}?"
                ),
                Theme::ObjectPreference => format!(
                    "Is the number of people who prefer the object {g1} in the category {s1} {cmp} than the number of people who prefer the object {g2} in the category {s2}?"
                ),
                Theme::ItemSales => format!(
                    "Did the item {g1} in the store {s1} sell {} units than the item {g2} in the store {s2}?",
                    if more() { "more" } else { "less" }
                ),
                Theme::Generic => format!(
                    "Is the value of {g1} in {s1} {cmp} than the value of {g2} in {s2}?"
                ),
            }
        }
        other => unreachable!("unknown template {other}"),
    }
}
