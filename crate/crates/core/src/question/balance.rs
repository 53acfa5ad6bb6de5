//! Bias-balancing subsample over generated question sets.
//!
//! Structural priors make some answers dominate ("Does the chart contain
//! stacked bars?" is usually no). For every template where yes/no is the
//! answer the majority class is randomly thinned until both classes match
//! exactly; the counting structure templates get the same treatment on
//! their top two answers. Removal is seeded, so a split balances the same
//! way on every run.

use std::collections::{BTreeMap, BTreeSet};

use crate::rng::ChartRng;

use super::{template_by_id, AnswerKind, QARecord};

/// Randomly pick `k` entries of `pool` to drop.
fn pick_removals(pool: &[usize], k: usize, rng: &mut ChartRng) -> Vec<usize> {
    let mut candidates = pool.to_vec();
    rng.shuffle(&mut candidates);
    candidates.truncate(k);
    candidates
}

/// Balance a split's records. Preserves input order; returns the retained
/// subset.
pub fn balance(records: Vec<QARecord>, rng: &mut ChartRng) -> Vec<QARecord> {
    let mut by_template: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        by_template.entry(r.template_id.as_str()).or_default().push(i);
    }

    let mut removed: BTreeSet<usize> = BTreeSet::new();
    for (tid, indices) in &by_template {
        let template = match template_by_id(tid) {
            Some(t) if t.balanced => t,
            _ => continue,
        };
        match template.answer_kind {
            AnswerKind::YesNo => {
                let yes: Vec<usize> = indices
                    .iter()
                    .copied()
                    .filter(|&i| records[i].answer == "yes")
                    .collect();
                let no: Vec<usize> = indices
                    .iter()
                    .copied()
                    .filter(|&i| records[i].answer == "no")
                    .collect();
                let (majority, minority_len) = if yes.len() >= no.len() {
                    (&yes, no.len())
                } else {
                    (&no, yes.len())
                };
                removed.extend(pick_removals(majority, majority.len() - minority_len, rng));
            }
            AnswerKind::CountWord => {
                // Equalize the two most frequent answers.
                let mut by_answer: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
                for &i in indices.iter() {
                    by_answer.entry(records[i].answer.as_str()).or_default().push(i);
                }
                if by_answer.len() < 2 {
                    continue;
                }
                let mut ranked: Vec<(&str, &Vec<usize>)> = by_answer.iter().map(|(a, v)| (*a, v)).collect();
                ranked.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(b.0)));
                let top = ranked[0].1;
                let second_len = ranked[1].1.len();
                removed.extend(pick_removals(top, top.len() - second_len, rng));
            }
            _ => {}
        }
    }

    records
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, r)| r)
        .collect()
}
