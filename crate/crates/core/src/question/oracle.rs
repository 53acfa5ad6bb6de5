//! Symbolic answer computation from the stored value matrix.
//!
//! Every answer is computed from the spec's exact integers, never from
//! rendered geometry. Missing bars participate as the value zero, matching
//! what the chart shows. Exponential charts compute over actual magnitudes
//! (`10^k`) wherever sums or differences matter.

use crate::chart::{answer_value_format, ChartSpec, Orientation, ScaleKind};

use super::words::count_to_word;
use super::{Slots, Template};

fn single_values(spec: &ChartSpec) -> Vec<i64> {
    spec.values
        .iter()
        .map(|row| spec.scale.magnitude(row[0]))
        .collect()
}

fn argopt(values: &[i64], want_max: bool) -> usize {
    let opt = if want_max {
        values.iter().max()
    } else {
        values.iter().min()
    }
    .expect("non-empty values");
    values.iter().position(|v| v == opt).unwrap()
}

fn yes_no(cond: bool) -> String {
    if cond { "yes" } else { "no" }.to_string()
}

fn count(n: i64) -> String {
    count_to_word(n).expect("counts are non-negative")
}

/// Compute the gold answer for a filled template.
pub fn answer_oracle(template: &Template, spec: &ChartSpec, slots: &Slots) -> String {
    let more = || slots.more.expect("polarity slot");
    match template.id {
        "S1" => count(
            spec.cells()
                .filter(|&(_, _, v)| spec.scale.magnitude(v) != 0)
                .count() as i64,
        ),
        "S2" => count(spec.group_count() as i64),
        "S3" => {
            let per_group = spec.values[0]
                .iter()
                .filter(|&&v| spec.scale.magnitude(v) != 0)
                .count();
            count(per_group as i64)
        }
        "S4" => yes_no(spec.cells().any(|(_, _, v)| v < 0)),
        "S5" => yes_no(spec.orientation == Orientation::Horizontal),
        "S6" => yes_no(spec.grouping.is_stacked()),
        "S7" => yes_no(spec.style.hatch.is_none()),
        "D1" => yes_no(spec.scale.kind == ScaleKind::Exponential),
        "D2" => yes_no(matches!(
            spec.scale.kind,
            ScaleKind::Percentage | ScaleKind::PercentageNormalized
        )),
        "D3" => {
            let g = slots.group_a.expect("group slot");
            answer_value_format(spec.value(g, 0), &spec.scale).expect("stored value is legal")
        }
        "D4" | "D5" => {
            let k = slots.ordinal.expect("ordinal slot");
            spec.group_labels[k - 1].clone()
        }
        "D6" => {
            let k = slots.ordinal.expect("ordinal slot");
            spec.series_labels[k - 1].clone()
        }
        "D7" => {
            if spec.is_multi_series() {
                spec.series_labels[slots.series_a.expect("series slot")].clone()
            } else {
                spec.group_labels[slots.group_a.expect("group slot")].clone()
            }
        }
        "D8" => {
            let g = slots.group_a.expect("group slot");
            let s = slots.series_a.expect("series slot");
            answer_value_format(spec.value(g, s), &spec.scale).expect("stored value is legal")
        }
        "R1" => {
            let vals = single_values(spec);
            spec.group_labels[argopt(&vals, more())].clone()
        }
        "R2" => {
            let n = slots.threshold.expect("threshold slot");
            let hit = |v: i64| if more() { v > n } else { v < n };
            count(spec.cells().filter(|&(_, _, v)| hit(v)).count() as i64)
        }
        "R3" => {
            let mags: Vec<i64> = spec.cells().map(|(_, _, v)| spec.scale.magnitude(v)).collect();
            let max = mags.iter().max().unwrap();
            let min = mags.iter().min().unwrap();
            (max - min).to_string()
        }
        "R4" | "R7" => {
            let n = slots.threshold.expect("threshold slot");
            let hit = |v: i64| if more() { v > n } else { v < n };
            count(
                spec.values
                    .iter()
                    .filter(|row| row.iter().any(|&v| hit(v)))
                    .count() as i64,
            )
        }
        "R5" => {
            let a = slots.group_a.expect("group slot");
            let b = slots.group_b.expect("group slot");
            let sum = spec.scale.magnitude(spec.value(a, 0)) + spec.scale.magnitude(spec.value(b, 0));
            sum.to_string()
        }
        "R6" => {
            let a = spec.scale.magnitude(spec.value(slots.group_a.expect("group slot"), 0));
            let b = spec.scale.magnitude(spec.value(slots.group_b.expect("group slot"), 0));
            yes_no(if more() { a > b } else { a < b })
        }
        "R8" => {
            let opt = spec
                .cells()
                .map(|(g, _, v)| (g, spec.scale.magnitude(v)))
                .reduce(|best, cand| {
                    let better = if more() { cand.1 > best.1 } else { cand.1 < best.1 };
                    if better {
                        cand
                    } else {
                        best
                    }
                })
                .expect("non-empty chart");
            spec.group_labels[opt.0].clone()
        }
        "R9" => {
            let sums: Vec<i64> = spec
                .values
                .iter()
                .map(|row| row.iter().map(|&v| spec.scale.magnitude(v)).sum())
                .collect();
            spec.group_labels[argopt(&sums, more())].clone()
        }
        "R10" => {
            let a = spec.scale.magnitude(spec.value(
                slots.group_a.expect("group slot"),
                slots.series_a.expect("series slot"),
            ));
            let b = spec.scale.magnitude(spec.value(
                slots.group_b.expect("group slot"),
                slots.series_b.expect("series slot"),
            ));
            yes_no(if more() { a > b } else { a < b })
        }
        other => unreachable!("unknown template {other}"),
    }
}
