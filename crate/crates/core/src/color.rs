//! Nearest-named-color lookup over the 138 X11/CSS3 named colors.
//!
//! Colors are compared in CIE L*a*b* (D65, 2-degree observer) under the
//! CIEDE2000 difference formula with kL = kC = kH = 1. The named-color table
//! ships as a data file; its checksum is pinned in the test suite.

use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// 8-bit sRGB triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub fn from_hex(hex: &str) -> Option<Rgb> {
        let hex = hex.strip_prefix('#').unwrap_or(hex);
        if hex.len() != 6 {
            return None;
        }
        let v = u32::from_str_radix(hex, 16).ok()?;
        Some(Rgb((v >> 16) as u8, (v >> 8) as u8, v as u8))
    }

    pub fn to_hex(self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }

    /// Relative luminance of the linearized color, in [0, 1].
    pub fn luminance(self) -> f64 {
        let lin = |c: u8| srgb_linearize(c as f64 / 255.0);
        0.2126729 * lin(self.0) + 0.7151522 * lin(self.1) + 0.0721750 * lin(self.2)
    }
}

/// CIE L*a*b* coordinates (D65 reference white).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabColor {
    pub l: f64,
    pub a: f64,
    pub b: f64,
}

fn srgb_linearize(c: f64) -> f64 {
    if c <= 0.04045 {
        c / 12.92
    } else {
        ((c + 0.055) / 1.055).powf(2.4)
    }
}

/// Convert an 8-bit sRGB triple to L*a*b* via the standard
/// sRGB -> XYZ(D65) -> L*a*b* pipeline with the piecewise sRGB gamma.
pub fn srgb_to_lab(rgb: Rgb) -> LabColor {
    let r = srgb_linearize(rgb.0 as f64 / 255.0);
    let g = srgb_linearize(rgb.1 as f64 / 255.0);
    let b = srgb_linearize(rgb.2 as f64 / 255.0);

    let x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    let y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    let z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

    // D65 reference white.
    let xr = x / 0.95047;
    let yr = y / 1.0;
    let zr = z / 1.08883;

    let eps = (6.0f64 / 29.0).powi(3);
    let f = |t: f64| {
        if t > eps {
            t.cbrt()
        } else {
            t / (3.0 * (6.0f64 / 29.0).powi(2)) + 4.0 / 29.0
        }
    };
    let (fx, fy, fz) = (f(xr), f(yr), f(zr));

    LabColor {
        l: 116.0 * fy - 16.0,
        a: 500.0 * (fx - fy),
        b: 200.0 * (fy - fz),
    }
}

/// CIEDE2000 color difference, including the hue-rotation term.
/// Symmetric, zero iff the inputs are identical. Parametric factors are
/// fixed at kL = kC = kH = 1.
pub fn delta_e_2000(c1: LabColor, c2: LabColor) -> f64 {
    let chroma1 = (c1.a * c1.a + c1.b * c1.b).sqrt();
    let chroma2 = (c2.a * c2.a + c2.b * c2.b).sqrt();
    let chroma_mean = 0.5 * (chroma1 + chroma2);

    let pow7 = |v: f64| v.powi(7);
    let g = 0.5 * (1.0 - (pow7(chroma_mean) / (pow7(chroma_mean) + pow7(25.0))).sqrt());

    let a1p = (1.0 + g) * c1.a;
    let a2p = (1.0 + g) * c2.a;
    let c1p = (a1p * a1p + c1.b * c1.b).sqrt();
    let c2p = (a2p * a2p + c2.b * c2.b).sqrt();

    let hue = |a: f64, b: f64| {
        if a == 0.0 && b == 0.0 {
            0.0
        } else {
            let h = b.atan2(a).to_degrees();
            if h < 0.0 {
                h + 360.0
            } else {
                h
            }
        }
    };
    let h1p = hue(a1p, c1.b);
    let h2p = hue(a2p, c2.b);

    let dl = c2.l - c1.l;
    let dc = c2p - c1p;

    let dh = if c1p * c2p == 0.0 {
        0.0
    } else {
        let diff = h2p - h1p;
        if diff.abs() <= 180.0 {
            diff
        } else if diff > 180.0 {
            diff - 360.0
        } else {
            diff + 360.0
        }
    };
    let dh_big = 2.0 * (c1p * c2p).sqrt() * (dh.to_radians() / 2.0).sin();

    let l_mean = 0.5 * (c1.l + c2.l);
    let cp_mean = 0.5 * (c1p + c2p);
    let h_mean = if c1p * c2p == 0.0 {
        h1p + h2p
    } else {
        let sum = h1p + h2p;
        if (h1p - h2p).abs() <= 180.0 {
            0.5 * sum
        } else if sum < 360.0 {
            0.5 * (sum + 360.0)
        } else {
            0.5 * (sum - 360.0)
        }
    };

    let t = 1.0 - 0.17 * (h_mean - 30.0).to_radians().cos()
        + 0.24 * (2.0 * h_mean).to_radians().cos()
        + 0.32 * (3.0 * h_mean + 6.0).to_radians().cos()
        - 0.20 * (4.0 * h_mean - 63.0).to_radians().cos();

    let dtheta = 30.0 * (-((h_mean - 275.0) / 25.0).powi(2)).exp();
    let rc = 2.0 * (pow7(cp_mean) / (pow7(cp_mean) + pow7(25.0))).sqrt();
    let rt = -(2.0 * dtheta).to_radians().sin() * rc;

    let l50 = (l_mean - 50.0).powi(2);
    let sl = 1.0 + 0.015 * l50 / (20.0 + l50).sqrt();
    let sc = 1.0 + 0.045 * cp_mean;
    let sh = 1.0 + 0.015 * cp_mean * t;

    ((dl / sl).powi(2)
        + (dc / sc).powi(2)
        + (dh_big / sh).powi(2)
        + rt * (dc / sc) * (dh_big / sh))
        .sqrt()
}

/// One named color.
#[derive(Clone, Debug)]
pub struct NamedColor {
    pub name: String,
    pub rgb: Rgb,
    lab: LabColor,
}

/// The 138 X11/CSS3 named colors, one spelling per RGB value
/// (cyan over aqua, magenta over fuchsia, the "gray" spellings).
#[derive(Clone, Debug)]
pub struct NamedColorTable {
    entries: Vec<NamedColor>,
}

/// Raw table data compiled into the library.
pub const NAMED_COLOR_DATA: &str = include_str!("../data/named_colors.csv");

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum ColorTableError {
    #[error("line {0}: expected `name,hex`")]
    Malformed(usize),
    #[error("line {0}: bad hex value")]
    BadHex(usize),
    #[error("duplicate color name {0:?}")]
    DuplicateName(String),
    #[error("expected 138 entries, found {0}")]
    WrongCount(usize),
}

impl NamedColorTable {
    /// Parse a `name,hex` table and verify the invariants.
    pub fn parse(data: &str) -> Result<NamedColorTable, ColorTableError> {
        let mut entries = Vec::new();
        let mut names = std::collections::BTreeSet::new();
        for (i, line) in data.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (name, hex) = line
                .split_once(',')
                .ok_or(ColorTableError::Malformed(i + 1))?;
            let rgb = Rgb::from_hex(hex).ok_or(ColorTableError::BadHex(i + 1))?;
            if !names.insert(name.to_string()) {
                return Err(ColorTableError::DuplicateName(name.to_string()));
            }
            entries.push(NamedColor {
                name: name.to_string(),
                rgb,
                lab: srgb_to_lab(rgb),
            });
        }
        if entries.len() != 138 {
            return Err(ColorTableError::WrongCount(entries.len()));
        }
        Ok(NamedColorTable { entries })
    }

    /// The bundled table.
    pub fn bundled() -> &'static NamedColorTable {
        static TABLE: OnceLock<NamedColorTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            NamedColorTable::parse(NAMED_COLOR_DATA).expect("bundled color table is valid")
        })
    }

    pub fn entries(&self) -> &[NamedColor] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&NamedColor> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Name an arbitrary RGB color with the nearest table entry under
/// CIEDE2000. Exact ties resolve to the earliest table entry.
pub fn name_color(rgb: Rgb, table: &NamedColorTable) -> &str {
    let lab = srgb_to_lab(rgb);
    let mut best: (&str, f64) = ("", f64::INFINITY);
    for entry in &table.entries {
        let d = delta_e_2000(lab, entry.lab);
        if d < best.1 {
            best = (&entry.name, d);
        }
    }
    best.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn white_and_black_endpoints() {
        let white = srgb_to_lab(Rgb(255, 255, 255));
        assert!((white.l - 100.0).abs() < 1e-3);
        assert!(white.a.abs() < 1e-3 && white.b.abs() < 1e-3);
        let black = srgb_to_lab(Rgb(0, 0, 0));
        assert!(black.l.abs() < 1e-9 && black.a.abs() < 1e-9 && black.b.abs() < 1e-9);
    }

    #[test]
    fn primary_conversions_match_reference() {
        // Frozen from an independent step-by-step conversion using the
        // published sRGB->XYZ(D65) matrix and CIE f() cutover.
        let cases = [
            (Rgb(255, 0, 0), (53.240794, 80.092460, 67.203197)),
            (Rgb(0, 255, 0), (87.734722, -86.182716, 83.179321)),
            (Rgb(0, 0, 255), (32.297011, 79.187520, -107.860162)),
            (Rgb(147, 112, 219), (54.974804, 36.797759, -50.089467)),
        ];
        for (rgb, (l, a, b)) in cases {
            let lab = srgb_to_lab(rgb);
            assert!((lab.l - l).abs() < 1e-3, "{rgb:?} L {} vs {l}", lab.l);
            assert!((lab.a - a).abs() < 1e-3, "{rgb:?} a {} vs {a}", lab.a);
            assert!((lab.b - b).abs() < 1e-3, "{rgb:?} b {} vs {b}", lab.b);
        }
    }

    #[test]
    fn delta_e_identity_and_symmetry() {
        let x = srgb_to_lab(Rgb(12, 200, 97));
        assert_eq!(delta_e_2000(x, x), 0.0);
        let mut rng = crate::rng::ChartRng::from_seed(11);
        for _ in 0..1000 {
            let a = srgb_to_lab(Rgb(
                rng.below(256) as u8,
                rng.below(256) as u8,
                rng.below(256) as u8,
            ));
            let b = srgb_to_lab(Rgb(
                rng.below(256) as u8,
                rng.below(256) as u8,
                rng.below(256) as u8,
            ));
            let ab = delta_e_2000(a, b);
            let ba = delta_e_2000(b, a);
            assert!((ab - ba).abs() < 1e-12);
            assert!(ab >= 0.0);
        }
    }

    #[test]
    fn bundled_table_loads() {
        let table = NamedColorTable::bundled();
        assert_eq!(table.entries().len(), 138);
        for canonical in ["red", "blue", "green", "mediumpurple", "skyblue", "navy"] {
            assert!(table.get(canonical).is_some(), "missing {canonical}");
        }
        assert_eq!(table.get("red").unwrap().rgb, Rgb(255, 0, 0));
    }

    #[test]
    fn named_colors_map_to_themselves() {
        let table = NamedColorTable::bundled();
        for entry in table.entries() {
            assert_eq!(name_color(entry.rgb, table), entry.name, "{:?}", entry.rgb);
        }
    }

    #[test]
    fn mediumpurple_named_from_its_rgb() {
        let table = NamedColorTable::bundled();
        let mp = table.get("mediumpurple").unwrap().rgb;
        assert_eq!(mp, Rgb(147, 112, 219));
        assert_eq!(name_color(mp, table), "mediumpurple");
    }

    #[test]
    fn table_rejects_wrong_count_and_duplicates() {
        match NamedColorTable::parse("red,ff0000\n") {
            Err(ColorTableError::WrongCount(1)) => {}
            other => panic!("unexpected {:?}", other.map(|t| t.entries().len())),
        }
        match NamedColorTable::parse("red,ff0000\nred,ee0000\n") {
            Err(ColorTableError::DuplicateName(n)) => assert_eq!(n, "red"),
            other => panic!("unexpected {:?}", other.map(|t| t.entries().len())),
        }
    }
}
