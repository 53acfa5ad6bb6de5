//! Chart-local word dictionary built by spatial chaining, plus the hybrid
//! local/global index space used to encode questions and decode answers.
//!
//! The dictionary starts at the text box in the lower-left corner of the
//! image and repeatedly appends the unassigned box nearest to the one
//! assigned last. Chart-specific words therefore land on stable small
//! indices that a model can predict without ever having seen the word.
//!
//! Index space: slots 0..=30 are local (at most 30 are ever occupied),
//! global entries start at 31, and one trailing slot marks unknown tokens.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::layout::{ChartMetadata, PixelBox};

/// Local dictionaries hold at most this many entries.
pub const MAX_LOCAL_ENTRIES: usize = 30;

/// Local slots occupy indices `0..=30`; the first global slot is 31.
pub const GLOBAL_SLOT_BASE: usize = 31;

/// One chained text box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalEntry {
    pub index: usize,
    pub word: String,
    #[serde(rename = "box")]
    pub bbox: PixelBox,
}

/// Ordered chart-specific word list.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct LocalDictionary {
    pub entries: Vec<LocalEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DictionaryError {
    #[error("local dictionary overflow: {0} boxes exceed the {MAX_LOCAL_ENTRIES}-entry cap")]
    Overflow(usize),
    #[error("empty local slot {slot} (dictionary has {len} entries)")]
    EmptySlot { slot: usize, len: usize },
    #[error("slot {0} is beyond the hybrid index space")]
    SlotOutOfRange(usize),
}

impl LocalDictionary {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Case-insensitive lookup of a word's local slot.
    pub fn slot_of(&self, word: &str) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.word.eq_ignore_ascii_case(word))
            .map(|e| e.index)
    }

    pub fn word_at(&self, slot: usize) -> Option<&str> {
        self.entries.get(slot).map(|e| e.word.as_str())
    }
}

/// Squared distance between box centers. Comparisons only, so the square
/// root is never taken.
fn center_dist2(a: &PixelBox, b: &PixelBox) -> f64 {
    let (ax, ay) = a.center();
    let (bx, by) = b.center();
    (ax - bx) * (ax - bx) + (ay - by) * (ay - by)
}

/// Build the local dictionary over `(word, box)` pairs.
///
/// Index 0 goes to the lower-left-most box: smallest center x, ties broken
/// toward the larger center y (lower on the image). Each later index goes
/// to the unassigned box nearest (Euclidean center distance) to the box
/// assigned just before it; distance ties break toward smaller center x,
/// then smaller center y.
pub fn build_local_dictionary(
    boxes: &[(String, PixelBox)],
) -> Result<LocalDictionary, DictionaryError> {
    if boxes.len() > MAX_LOCAL_ENTRIES {
        return Err(DictionaryError::Overflow(boxes.len()));
    }
    if boxes.is_empty() {
        return Ok(LocalDictionary::default());
    }

    let mut remaining: Vec<usize> = (0..boxes.len()).collect();
    let start = *remaining
        .iter()
        .min_by(|&&a, &&b| {
            let (ax, ay) = boxes[a].1.center();
            let (bx, by) = boxes[b].1.center();
            ax.partial_cmp(&bx)
                .unwrap()
                .then(by.partial_cmp(&ay).unwrap())
        })
        .unwrap();
    remaining.retain(|&i| i != start);

    let mut order = vec![start];
    while !remaining.is_empty() {
        let last = &boxes[*order.last().unwrap()].1;
        let next = *remaining
            .iter()
            .min_by(|&&a, &&b| {
                let da = center_dist2(last, &boxes[a].1);
                let db = center_dist2(last, &boxes[b].1);
                let (ax, ay) = boxes[a].1.center();
                let (bx, by) = boxes[b].1.center();
                da.partial_cmp(&db)
                    .unwrap()
                    .then(ax.partial_cmp(&bx).unwrap())
                    .then(ay.partial_cmp(&by).unwrap())
            })
            .unwrap();
        remaining.retain(|&i| i != next);
        order.push(next);
    }

    Ok(LocalDictionary {
        entries: order
            .into_iter()
            .enumerate()
            .map(|(index, i)| LocalEntry {
                index,
                word: boxes[i].0.clone(),
                bbox: boxes[i].1,
            })
            .collect(),
    })
}

/// Oracle variant: chain every text box straight out of the metadata.
pub fn dictionary_from_metadata(meta: &ChartMetadata) -> Result<LocalDictionary, DictionaryError> {
    let boxes: Vec<(String, PixelBox)> = meta
        .text_boxes
        .iter()
        .map(|tb| (tb.text.clone(), tb.bbox))
        .collect();
    build_local_dictionary(&boxes)
}

/// Noisy-input variant: apply the OCR pre-filters before chaining.
/// Keeps alphabetic multi-character words recognized with at least 50%
/// confidence.
pub fn dictionary_from_ocr(
    detections: &[(String, PixelBox, f64)],
) -> Result<LocalDictionary, DictionaryError> {
    let boxes: Vec<(String, PixelBox)> = detections
        .iter()
        .filter(|(word, _, confidence)| {
            *confidence >= 0.5
                && word.chars().count() > 1
                && word.chars().all(|c| c.is_ascii_alphabetic())
        })
        .map(|(word, bbox, _)| (word.clone(), *bbox))
        .collect();
    build_local_dictionary(&boxes)
}

/// Encode question tokens into the hybrid index space. Local words win over
/// global ones; anything else maps to the unknown slot past the global
/// range.
pub fn encode_question(
    tokens: &[String],
    global_vocab: &BTreeSet<String>,
    local: &LocalDictionary,
) -> Vec<usize> {
    let globals: Vec<&String> = global_vocab.iter().collect();
    let unknown = GLOBAL_SLOT_BASE + globals.len();
    tokens
        .iter()
        .map(|token| {
            if let Some(slot) = local.slot_of(token) {
                slot
            } else if let Ok(i) = globals.binary_search_by(|g| g.as_str().cmp(token.as_str())) {
                GLOBAL_SLOT_BASE + i
            } else {
                unknown
            }
        })
        .collect()
}

/// Decode an output slot into an answer string.
pub fn decode_answer(
    slot: usize,
    local: &LocalDictionary,
    global_answers: &[String],
) -> Result<String, DictionaryError> {
    if slot < GLOBAL_SLOT_BASE {
        if slot >= MAX_LOCAL_ENTRIES + 1 {
            return Err(DictionaryError::SlotOutOfRange(slot));
        }
        local
            .word_at(slot)
            .map(str::to_string)
            .ok_or(DictionaryError::EmptySlot {
                slot,
                len: local.len(),
            })
    } else {
        global_answers
            .get(slot - GLOBAL_SLOT_BASE)
            .cloned()
            .ok_or(DictionaryError::SlotOutOfRange(slot))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(x: f64, y: f64) -> PixelBox {
        // 2x2 box centered on (x, y).
        PixelBox::new(x - 1.0, y - 1.0, 2.0, 2.0)
    }

    #[test]
    fn single_box_gets_index_zero() {
        let dict = build_local_dictionary(&[("branch".into(), bx(100.0, 200.0))]).unwrap();
        assert_eq!(dict.len(), 1);
        assert_eq!(dict.word_at(0), Some("branch"));
    }

    #[test]
    fn chain_follows_nearest_neighbor() {
        // Start at the lower-left box (10,440); (10,400) is 40 away while
        // (200,440) is 190 away; the remaining box comes last.
        let boxes = vec![
            ("a".to_string(), bx(10.0, 440.0)),
            ("b".to_string(), bx(10.0, 400.0)),
            ("c".to_string(), bx(200.0, 440.0)),
        ];
        let dict = build_local_dictionary(&boxes).unwrap();
        let words: Vec<&str> = dict.entries.iter().map(|e| e.word.as_str()).collect();
        assert_eq!(words, ["a", "b", "c"]);
    }

    #[test]
    fn lower_left_tie_prefers_lower_box() {
        // Same x: the box lower on the image (larger y) starts the chain.
        let boxes = vec![
            ("upper".to_string(), bx(10.0, 100.0)),
            ("lower".to_string(), bx(10.0, 300.0)),
        ];
        let dict = build_local_dictionary(&boxes).unwrap();
        assert_eq!(dict.word_at(0), Some("lower"));
    }

    #[test]
    fn overflow_is_an_error() {
        let boxes: Vec<(String, PixelBox)> = (0..31)
            .map(|i| (format!("w{i}"), bx(10.0 + i as f64, 10.0)))
            .collect();
        match build_local_dictionary(&boxes) {
            Err(DictionaryError::Overflow(31)) => {}
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn chain_is_a_bijection_and_rebuilds_identically() {
        let boxes: Vec<(String, PixelBox)> = (0..20)
            .map(|i| {
                (
                    format!("w{i}"),
                    bx(
                        40.0 + 19.0 * ((i * 7) % 20) as f64,
                        50.0 + 17.0 * ((i * 13) % 20) as f64,
                    ),
                )
            })
            .collect();
        let a = build_local_dictionary(&boxes).unwrap();
        let b = build_local_dictionary(&boxes).unwrap();
        assert_eq!(a, b);
        let indices: std::collections::BTreeSet<usize> =
            a.entries.iter().map(|e| e.index).collect();
        assert_eq!(indices.len(), 20);
        assert_eq!(*indices.iter().max().unwrap(), 19);
    }

    #[test]
    fn encode_prefers_local_over_global() {
        let dict = build_local_dictionary(&[("branch".into(), bx(10.0, 400.0))]).unwrap();
        let mut global = BTreeSet::new();
        global.insert("branch".to_string());
        global.insert("the".to_string());
        let slots = encode_question(
            &["the".to_string(), "branch".to_string(), "quorne".to_string()],
            &global,
            &dict,
        );
        // "the" is global, "branch" local slot 0, "quorne" unknown.
        assert_eq!(slots[1], 0);
        assert!(slots[0] >= GLOBAL_SLOT_BASE);
        assert_eq!(slots[2], GLOBAL_SLOT_BASE + global.len());
    }

    #[test]
    fn decode_local_global_and_errors() {
        let dict = build_local_dictionary(&[
            ("sister".into(), bx(10.0, 400.0)),
            ("branch".into(), bx(30.0, 400.0)),
        ])
        .unwrap();
        let answers: Vec<String> = vec!["yes".into(), "no".into()];
        assert_eq!(decode_answer(0, &dict, &answers).unwrap(), "sister");
        assert_eq!(decode_answer(GLOBAL_SLOT_BASE, &dict, &answers).unwrap(), "yes");
        match decode_answer(12, &dict, &answers) {
            Err(DictionaryError::EmptySlot { slot: 12, len: 2 }) => {}
            other => panic!("expected empty slot, got {other:?}"),
        }
        match decode_answer(GLOBAL_SLOT_BASE + 2, &dict, &answers) {
            Err(DictionaryError::SlotOutOfRange(_)) => {}
            other => panic!("expected range error, got {other:?}"),
        }
    }

    #[test]
    fn ocr_filters_apply() {
        let detections = vec![
            ("branch".to_string(), bx(10.0, 400.0), 0.9),
            ("x".to_string(), bx(30.0, 400.0), 0.9),      // single char
            ("10".to_string(), bx(50.0, 400.0), 0.9),     // not alphabetic
            ("sister".to_string(), bx(70.0, 400.0), 0.4), // low confidence
            ("guest".to_string(), bx(90.0, 400.0), 0.5),
        ];
        let dict = dictionary_from_ocr(&detections).unwrap();
        let words: Vec<&str> = dict.entries.iter().map(|e| e.word.as_str()).collect();
        assert_eq!(words, ["branch", "guest"]);
    }
}
