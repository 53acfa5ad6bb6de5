//! Deterministic text measurement from a bundled glyph advance table.
//!
//! Real font metrics vary by platform and rasterizer; layout instead uses a
//! fixed Helvetica-style advance table (thousandths of an em per glyph) so
//! overlap checks and discard decisions reproduce exactly everywhere.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

const GLYPH_DATA: &str = include_str!("../data/glyph_advances.csv");

/// Advance used for glyphs missing from the table.
pub const DEFAULT_ADVANCE: u32 = 600;

/// Line height as a multiple of the font size.
pub const LINE_HEIGHT_FACTOR: f64 = 1.2;

fn advance_table() -> &'static HashMap<char, u32> {
    static TABLE: OnceLock<HashMap<char, u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        GLYPH_DATA
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let (cp, adv) = l.split_once(',').expect("glyph table line");
                let cp: u32 = cp.parse().expect("glyph codepoint");
                let adv: u32 = adv.parse().expect("glyph advance");
                (char::from_u32(cp).expect("valid codepoint"), adv)
            })
            .collect()
    })
}

/// Advance width of one glyph in thousandths of an em.
pub fn glyph_advance(c: char) -> u32 {
    *advance_table().get(&c).unwrap_or(&DEFAULT_ADVANCE)
}

/// Text rotation steps applied by the layout engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rotation {
    #[serde(rename = "0")]
    Deg0,
    #[serde(rename = "45")]
    Deg45,
    #[serde(rename = "90")]
    Deg90,
}

impl Rotation {
    pub fn degrees(self) -> u32 {
        match self {
            Rotation::Deg0 => 0,
            Rotation::Deg45 => 45,
            Rotation::Deg90 => 90,
        }
    }

    /// Next escalation step, if any.
    pub fn escalate(self) -> Option<Rotation> {
        match self {
            Rotation::Deg0 => Some(Rotation::Deg45),
            Rotation::Deg45 => Some(Rotation::Deg90),
            Rotation::Deg90 => None,
        }
    }
}

/// Width/height of a measured text run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extent {
    pub width: f64,
    pub height: f64,
}

/// Unrotated width of a text run at the given font size, in pixels.
pub fn text_width(text: &str, font_size: f64) -> f64 {
    let units: u32 = text.chars().map(glyph_advance).sum();
    units as f64 / 1000.0 * font_size
}

/// Line height at the given font size, in pixels.
pub fn line_height(font_size: f64) -> f64 {
    font_size * LINE_HEIGHT_FACTOR
}

/// Axis-aligned extent of a text run after rotation.
///
/// 90 degrees swaps width and height; 45 degrees takes the bounding box of
/// the rotated rectangle. Empty text has zero extent.
pub fn measure_text(text: &str, font_size: f64, rotation: Rotation) -> Extent {
    if text.is_empty() {
        return Extent {
            width: 0.0,
            height: 0.0,
        };
    }
    let w = text_width(text, font_size);
    let h = line_height(font_size);
    match rotation {
        Rotation::Deg0 => Extent {
            width: w,
            height: h,
        },
        Rotation::Deg90 => Extent {
            width: h,
            height: w,
        },
        Rotation::Deg45 => {
            let d = (w + h) * std::f64::consts::FRAC_1_SQRT_2;
            Extent {
                width: d,
                height: d,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_has_zero_extent() {
        let e = measure_text("", 10.0, Rotation::Deg0);
        assert_eq!(e.width, 0.0);
        assert_eq!(e.height, 0.0);
    }

    #[test]
    fn width_is_monotone_in_length() {
        let a = measure_text("a", 10.0, Rotation::Deg0);
        let ab = measure_text("ab", 10.0, Rotation::Deg0);
        let abc = measure_text("abc", 10.0, Rotation::Deg0);
        assert!(ab.width > a.width);
        assert!(abc.width > ab.width);
    }

    #[test]
    fn rotation_90_swaps_dimensions() {
        let flat = measure_text("abc", 10.0, Rotation::Deg0);
        let turned = measure_text("abc", 10.0, Rotation::Deg90);
        assert_eq!(turned.width, flat.height);
        assert_eq!(turned.height, flat.width);
    }

    #[test]
    fn rotation_45_bounding_box() {
        let flat = measure_text("widow", 12.0, Rotation::Deg0);
        let diag = measure_text("widow", 12.0, Rotation::Deg45);
        let want = (flat.width + flat.height) * std::f64::consts::FRAC_1_SQRT_2;
        assert!((diag.width - want).abs() < 1e-12);
        assert!((diag.height - want).abs() < 1e-12);
    }

    #[test]
    fn unknown_glyph_uses_default_advance() {
        assert_eq!(glyph_advance('\u{00e9}'), DEFAULT_ADVANCE);
        assert_eq!(glyph_advance('m'), 833);
        assert_eq!(glyph_advance('i'), 222);
    }

    #[test]
    fn width_scales_with_font_size() {
        let small = text_width("sample", 10.0);
        let large = text_width("sample", 20.0);
        assert!((large - 2.0 * small).abs() < 1e-12);
    }
}
