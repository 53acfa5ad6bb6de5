//! SVG 1.1 emission from layout metadata.
//!
//! Bar rectangles copy their metadata boxes verbatim, so golden-file and
//! geometry assertions hold without a rasterizer. Output is built in one
//! fixed order with fixed number formatting; re-rendering the same chart
//! yields a byte-identical document.

use std::fmt::Write;

use crate::chart::{ChartSpec, Hatch, Orientation, ScaleKind};
use crate::color::Rgb;
use crate::layout::{AxisModel, ChartMetadata, PixelBox, TextRole};
use crate::text::Rotation;

/// Hatch strokes switch between dark and light depending on bar fill.
const HATCH_DARK: &str = "hatch-dark";
const HATCH_LIGHT: &str = "hatch-light";

fn fmt(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.2}")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Render an accepted chart to an SVG document.
pub fn render_svg(meta: &ChartMetadata, spec: &ChartSpec) -> String {
    let mut out = String::with_capacity(16 * 1024);
    let w = meta.canvas_width;
    let h = meta.canvas_height;
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt(w),
        fmt(h),
        fmt(w),
        fmt(h)
    );
    let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>", fmt(w), fmt(h));

    if let Some(hatch) = spec.style.hatch {
        out.push_str("<defs>\n");
        write_hatch_pattern(&mut out, hatch, HATCH_DARK, "#000000");
        write_hatch_pattern(&mut out, hatch, HATCH_LIGHT, "#ffffff");
        out.push_str("</defs>\n");
    }

    let axis = AxisModel::for_spec(spec);
    let plot = &meta.plot_area;

    if spec.style.grid_lines {
        for (pos, _) in &axis.ticks {
            let f = axis.frac(*pos);
            match spec.orientation {
                Orientation::Vertical => {
                    let y = plot.bottom() - f * plot.height;
                    let _ = writeln!(
                        out,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>",
                        fmt(plot.x),
                        fmt(y),
                        fmt(plot.right()),
                        fmt(y)
                    );
                }
                Orientation::Horizontal => {
                    let x = plot.x + f * plot.width;
                    let _ = writeln!(
                        out,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>",
                        fmt(x),
                        fmt(plot.y),
                        fmt(x),
                        fmt(plot.bottom())
                    );
                }
            }
        }
    }

    // Axis spines and tick marks.
    match spec.orientation {
        Orientation::Vertical => {
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>",
                fmt(plot.x),
                fmt(plot.y),
                fmt(plot.x),
                fmt(plot.bottom())
            );
            let baseline_y = plot.bottom() - axis.frac(axis.baseline.max(axis.vmin)) * plot.height;
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>",
                fmt(plot.x),
                fmt(plot.bottom()),
                fmt(plot.right()),
                fmt(plot.bottom())
            );
            if spec.scale.allow_negative {
                let _ = writeln!(
                    out,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"0.75\"/>",
                    fmt(plot.x),
                    fmt(baseline_y),
                    fmt(plot.right()),
                    fmt(baseline_y)
                );
            }
            for (pos, _) in &axis.ticks {
                let y = plot.bottom() - axis.frac(*pos) * plot.height;
                let _ = writeln!(
                    out,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>",
                    fmt(plot.x - 3.0),
                    fmt(y),
                    fmt(plot.x),
                    fmt(y)
                );
            }
        }
        Orientation::Horizontal => {
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>",
                fmt(plot.x),
                fmt(plot.y),
                fmt(plot.x),
                fmt(plot.bottom())
            );
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>",
                fmt(plot.x),
                fmt(plot.bottom()),
                fmt(plot.right()),
                fmt(plot.bottom())
            );
            if spec.scale.allow_negative {
                let x0 = plot.x + axis.frac(0.0) * plot.width;
                let _ = writeln!(
                    out,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"0.75\"/>",
                    fmt(x0),
                    fmt(plot.y),
                    fmt(x0),
                    fmt(plot.bottom())
                );
            }
            for (pos, _) in &axis.ticks {
                let x = plot.x + axis.frac(*pos) * plot.width;
                let _ = writeln!(
                    out,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>",
                    fmt(x),
                    fmt(plot.bottom()),
                    fmt(x),
                    fmt(plot.bottom() + 3.0)
                );
            }
        }
    }

    // Bars: geometry equals the metadata boxes exactly.
    for bar in &meta.bars {
        let Some(bbox) = bar.bbox else { continue };
        write_bar_rect(&mut out, &bbox, bar.rgb, bar.hatch);
    }

    // Legend patches.
    for entry in &meta.legend_boxes {
        write_bar_rect(&mut out, &entry.bbox, entry.rgb, spec.style.hatch);
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.5\"/>",
            fmt(entry.bbox.x),
            fmt(entry.bbox.y),
            fmt(entry.bbox.width),
            fmt(entry.bbox.height)
        );
    }

    // Text runs, anchored inside their metadata boxes.
    for tb in &meta.text_boxes {
        let font = if tb.role == TextRole::Title {
            spec.style.font_size + 2.0
        } else {
            spec.style.font_size
        };
        let ascent = 0.8 * font;
        match tb.rotation {
            Rotation::Deg0 => {
                let _ = writeln!(
                    out,
                    "<text x=\"{}\" y=\"{}\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"{}\" fill=\"#000000\">{}</text>",
                    fmt(tb.bbox.x),
                    fmt(tb.bbox.y + ascent),
                    fmt(font),
                    escape(&tb.text)
                );
            }
            Rotation::Deg90 => {
                // Reads bottom-up, centered in the box.
                let (cx, cy) = tb.bbox.center();
                let _ = writeln!(
                    out,
                    "<text x=\"{}\" y=\"{}\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"{}\" fill=\"#000000\" text-anchor=\"middle\" transform=\"rotate(-90 {} {})\">{}</text>",
                    fmt(cx),
                    fmt(cy + 0.3 * font),
                    fmt(font),
                    fmt(cx),
                    fmt(cy),
                    escape(&tb.text)
                );
            }
            Rotation::Deg45 => {
                // Slants up toward the anchor at the box's top-right corner.
                let px = tb.bbox.right() - 2.0;
                let py = tb.bbox.y + 0.7 * font;
                let _ = writeln!(
                    out,
                    "<text x=\"{}\" y=\"{}\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"{}\" fill=\"#000000\" text-anchor=\"end\" transform=\"rotate(-45 {} {})\">{}</text>",
                    fmt(px),
                    fmt(py),
                    fmt(font),
                    fmt(px),
                    fmt(py),
                    escape(&tb.text)
                );
            }
        }
    }

    out.push_str("</svg>\n");
    out
}

fn write_bar_rect(out: &mut String, bbox: &PixelBox, rgb: Rgb, hatch: Option<Hatch>) {
    let _ = writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
        fmt(bbox.x),
        fmt(bbox.y),
        fmt(bbox.width),
        fmt(bbox.height),
        rgb.to_hex()
    );
    if hatch.is_some() {
        let pattern = if rgb.luminance() > 0.45 {
            HATCH_DARK
        } else {
            HATCH_LIGHT
        };
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"url(#{})\"/>",
            fmt(bbox.x),
            fmt(bbox.y),
            fmt(bbox.width),
            fmt(bbox.height),
            pattern
        );
    }
}

fn write_hatch_pattern(out: &mut String, hatch: Hatch, id: &str, stroke: &str) {
    let _ = writeln!(
        out,
        "<pattern id=\"{id}\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\">"
    );
    match hatch {
        Hatch::Stripes => {
            let _ = writeln!(
                out,
                "<path d=\"M0,8 L8,0\" stroke=\"{stroke}\" stroke-width=\"1\"/>"
            );
        }
        Hatch::Dots => {
            let _ = writeln!(out, "<circle cx=\"4\" cy=\"4\" r=\"1.2\" fill=\"{stroke}\"/>");
        }
        Hatch::Circles => {
            let _ = writeln!(
                out,
                "<circle cx=\"4\" cy=\"4\" r=\"2.5\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1\"/>"
            );
        }
        Hatch::CrossHatch => {
            let _ = writeln!(
                out,
                "<path d=\"M0,8 L8,0 M0,0 L8,8\" stroke=\"{stroke}\" stroke-width=\"1\"/>"
            );
        }
        Hatch::Stars => {
            let _ = writeln!(
                out,
                "<path d=\"M4,1 L4,7 M1,4 L7,4 M2,2 L6,6 M6,2 L2,6\" stroke=\"{stroke}\" stroke-width=\"0.8\"/>"
            );
        }
        Hatch::Grid => {
            let _ = writeln!(
                out,
                "<path d=\"M0,4 L8,4 M4,0 L4,8\" stroke=\"{stroke}\" stroke-width=\"1\"/>"
            );
        }
    }
    out.push_str("</pattern>\n");
}

/// Convenience check used by tests: does the scale kind render a log axis?
pub fn is_log_axis(kind: ScaleKind) -> bool {
    kind == ScaleKind::Exponential
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::layout;
    use crate::rng::Split;
    use crate::sampler::{sample_chart, GeneratorConfig, Vocabulary};

    fn first_accepted(seed_base: u64) -> (crate::chart::ChartSpec, ChartMetadata) {
        let config = GeneratorConfig::default();
        let vocab = Vocabulary::bundled();
        for i in seed_base..seed_base + 100 {
            let spec = sample_chart(&config, &vocab, Split::Train, i);
            if let Ok(meta) = layout(&spec) {
                return (spec, meta);
            }
        }
        panic!("no accepted chart in range");
    }

    #[test]
    fn document_declares_448_viewport() {
        let (spec, meta) = first_accepted(0);
        let svg = render_svg(&meta, &spec);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("width=\"448.00\" height=\"448.00\""));
        assert!(svg.contains("viewBox=\"0 0 448.00 448.00\""));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn bar_rects_match_metadata_exactly() {
        let (spec, meta) = first_accepted(0);
        let svg = render_svg(&meta, &spec);
        for bar in &meta.bars {
            if let Some(bbox) = bar.bbox {
                let rect = format!(
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                    fmt(bbox.x),
                    fmt(bbox.y),
                    fmt(bbox.width),
                    fmt(bbox.height),
                    bar.rgb.to_hex()
                );
                assert!(svg.contains(&rect), "missing rect for bar {:?}", (bar.group, bar.series));
            }
        }
    }

    #[test]
    fn zero_value_bar_has_no_rect() {
        let config = GeneratorConfig::default();
        let vocab = Vocabulary::bundled();
        // Find a chart with a missing bar.
        for i in 0..2000 {
            let spec = sample_chart(&config, &vocab, Split::Train, i);
            if !spec.scale.allow_zero || !spec.cells().any(|(_, _, v)| v == 0) {
                continue;
            }
            if let Ok(meta) = layout(&spec) {
                let svg = render_svg(&meta, &spec);
                let rect_count = svg.matches("<rect").count();
                let visible_bars = meta.bars.iter().filter(|b| b.bbox.is_some()).count();
                assert!(visible_bars < meta.bars.len(), "expected a missing bar");
                // background + bars (+hatch overlays) + legend patches(+overlay+outline)
                let hatched = spec.style.hatch.is_some();
                let legend_rects = meta.legend_boxes.len() * if hatched { 3 } else { 2 };
                let expected = 1 + visible_bars * if hatched { 2 } else { 1 } + legend_rects;
                assert_eq!(rect_count, expected, "chart {}", spec.id);
                return;
            }
        }
        panic!("no chart with missing bars found");
    }

    #[test]
    fn rendering_is_byte_identical() {
        let (spec, meta) = first_accepted(7);
        let a = render_svg(&meta, &spec);
        let b = render_svg(&meta, &spec);
        assert_eq!(a, b);
    }

    #[test]
    fn text_anchor_lies_inside_its_box() {
        let (spec, meta) = first_accepted(3);
        let svg = render_svg(&meta, &spec);
        for tb in &meta.text_boxes {
            assert!(
                svg.contains(&format!(">{}</text>", escape(&tb.text))),
                "missing text {:?}",
                tb.text
            );
        }
    }

    #[test]
    fn hatched_charts_define_patterns() {
        let config = GeneratorConfig::default();
        let vocab = Vocabulary::bundled();
        for i in 0..500 {
            let spec = sample_chart(&config, &vocab, Split::Train, i);
            if spec.style.hatch.is_none() {
                continue;
            }
            if let Ok(meta) = layout(&spec) {
                let svg = render_svg(&meta, &spec);
                assert!(svg.contains("<pattern id=\"hatch-dark\""));
                assert!(svg.contains("url(#hatch-"));
                return;
            }
        }
        panic!("no hatched chart found");
    }
}
