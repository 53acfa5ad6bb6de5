//! Deterministic layout of a chart spec onto the 448x448 canvas.
//!
//! Layout picks the smallest label rotation (0, 45, then 90 degrees) that
//! removes all text overlap, then applies the fit rules: charts whose plot
//! area falls below half the canvas, or whose labels still collide at 90
//! degrees, are discarded. Discards are values, not faults.
//!
//! All geometry is computed from the bundled glyph advance table, so the
//! same spec always produces the same boxes.

use serde::{Deserialize, Serialize};

use crate::chart::{ChartSpec, Grouping, Hatch, LegendPosition, Orientation, ScaleKind, Violation};
use crate::color::{name_color, NamedColorTable, Rgb};
use crate::text::{line_height, measure_text, text_width, Rotation};

/// Canvas edge length in pixels.
pub const CANVAS: f64 = 448.0;

/// Width of the legend band reserved on the right of the canvas.
pub const LEGEND_RIGHT_WIDTH: f64 = 0.25 * CANVAS;

/// Height of the legend band reserved below the chart.
pub const LEGEND_BELOW_HEIGHT: f64 = 0.18 * CANVAS;

/// Minimum fraction of the canvas the plot area must cover.
pub const MIN_PLOT_AREA_FRACTION: f64 = 0.5;

const PAD: f64 = 4.0;
const TICK_GAP: f64 = 3.0;
const CAT_GAP: f64 = 2.0;
const LEGEND_PATCH: f64 = 12.0;

/// Axis-aligned rectangle, origin top-left, y growing down.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PixelBox {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl PixelBox {
    pub fn new(x: f64, y: f64, width: f64, height: f64) -> Self {
        PixelBox {
            x,
            y,
            width,
            height,
        }
    }

    pub fn right(&self) -> f64 {
        self.x + self.width
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.height
    }

    pub fn area(&self) -> f64 {
        self.width * self.height
    }

    pub fn center(&self) -> (f64, f64) {
        (self.x + self.width / 2.0, self.y + self.height / 2.0)
    }

    /// Strict interior overlap; shared edges do not count.
    pub fn overlaps(&self, other: &PixelBox) -> bool {
        self.x < other.right()
            && other.x < self.right()
            && self.y < other.bottom()
            && other.y < self.bottom()
    }

    pub fn inside_canvas(&self) -> bool {
        self.x >= 0.0 && self.y >= 0.0 && self.right() <= CANVAS + 1e-9 && self.bottom() <= CANVAS + 1e-9
    }
}

/// What a piece of text on the chart is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TextRole {
    Title,
    AxisLabel,
    TickLabel,
    BarLabel,
    GroupLabel,
    LegendEntry,
}

/// One placed text run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TextBoxMeta {
    pub text: String,
    pub role: TextRole,
    #[serde(rename = "box")]
    pub bbox: PixelBox,
    pub rotation: Rotation,
}

/// One drawn bar (or stack segment). Zero-valued bars carry no box.
/// `value` is the actual plotted magnitude: exponential charts record
/// `10^k`, everything else the stored value itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarMeta {
    pub group: usize,
    pub series: usize,
    pub value: i64,
    #[serde(rename = "box")]
    pub bbox: Option<PixelBox>,
    pub rgb: Rgb,
    pub color_name: String,
    pub hatch: Option<Hatch>,
}

/// One legend color patch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LegendBoxMeta {
    pub series: usize,
    #[serde(rename = "box")]
    pub bbox: PixelBox,
    pub rgb: Rgb,
    pub color_name: String,
}

/// Rendered ground truth for one accepted chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartMetadata {
    pub chart_id: String,
    pub canvas_width: f64,
    pub canvas_height: f64,
    pub plot_area: PixelBox,
    pub bars: Vec<BarMeta>,
    pub text_boxes: Vec<TextBoxMeta>,
    pub legend_boxes: Vec<LegendBoxMeta>,
}

impl ChartMetadata {
    /// Locate the text box carrying a chart label, preferring the roles a
    /// label can answer from: bar labels, then group labels, then legend
    /// entries.
    pub fn find_label_box(&self, word: &str) -> Option<&TextBoxMeta> {
        for role in [TextRole::BarLabel, TextRole::GroupLabel, TextRole::LegendEntry] {
            if let Some(tb) = self
                .text_boxes
                .iter()
                .find(|tb| tb.role == role && tb.text == word)
            {
                return Some(tb);
            }
        }
        None
    }

    pub fn bar(&self, group: usize, series: usize) -> Option<&BarMeta> {
        self.bars
            .iter()
            .find(|b| b.group == group && b.series == series)
    }
}

/// Why a candidate chart was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscardReason {
    PlotAreaTooSmall,
    UnresolvableLabelOverlap,
}

impl std::fmt::Display for DiscardReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiscardReason::PlotAreaTooSmall => f.write_str("plot-area-too-small"),
            DiscardReason::UnresolvableLabelOverlap => f.write_str("unresolvable-label-overlap"),
        }
    }
}

/// Value axis model shared by layout and SVG emission.
#[derive(Clone, Debug)]
pub struct AxisModel {
    /// Axis floor in value units (exponential charts use the exponent).
    pub vmin: f64,
    /// Axis ceiling in value units.
    pub vmax: f64,
    /// Where bars start growing from.
    pub baseline: f64,
    /// Tick positions (value units) with their rendered labels.
    pub ticks: Vec<(f64, String)>,
}

impl AxisModel {
    pub fn for_spec(spec: &ChartSpec) -> AxisModel {
        match spec.scale.kind {
            ScaleKind::Linear => {
                if spec.grouping == Grouping::StackedAdditive {
                    let top = spec
                        .values
                        .iter()
                        .map(|row| row.iter().sum::<i64>())
                        .max()
                        .unwrap_or(10)
                        .max(1);
                    // Smallest step from {1, 2, 5, 10} that keeps the tick
                    // count at or below eleven.
                    let step = [1i64, 2, 5, 10]
                        .into_iter()
                        .find(|s| top / s <= 10)
                        .unwrap_or(10);
                    let top_tick = ((top + step - 1) / step) * step;
                    let ticks = (0..=top_tick / step)
                        .map(|i| ((i * step) as f64, (i * step).to_string()))
                        .collect();
                    AxisModel {
                        vmin: 0.0,
                        vmax: top_tick as f64,
                        baseline: 0.0,
                        ticks,
                    }
                } else if spec.scale.allow_negative {
                    let ticks = (-5..=5)
                        .map(|i| ((i * 2) as f64, (i * 2).to_string()))
                        .collect();
                    AxisModel {
                        vmin: -10.0,
                        vmax: 10.0,
                        baseline: 0.0,
                        ticks,
                    }
                } else {
                    let ticks = (0..=10).map(|i| (i as f64, i.to_string())).collect();
                    AxisModel {
                        vmin: 0.0,
                        vmax: 10.0,
                        baseline: 0.0,
                        ticks,
                    }
                }
            }
            ScaleKind::Percentage | ScaleKind::PercentageNormalized => {
                let ticks = (0..=5)
                    .map(|i| ((i * 20) as f64, (i * 20).to_string()))
                    .collect();
                AxisModel {
                    vmin: 0.0,
                    vmax: 100.0,
                    baseline: 0.0,
                    ticks,
                }
            }
            ScaleKind::Exponential => {
                // The floor sits one decade below the lowest tick so a 10^0
                // bar still draws with visible length.
                let ticks = (0..=10).map(|k| (k as f64, format!("10^{k}"))).collect();
                AxisModel {
                    vmin: -1.0,
                    vmax: 10.0,
                    baseline: -1.0,
                    ticks,
                }
            }
        }
    }

    /// Fraction of the axis span below `v`.
    pub fn frac(&self, v: f64) -> f64 {
        (v - self.vmin) / (self.vmax - self.vmin)
    }

    /// Value-unit coordinate of a stored bar value.
    pub fn bar_position(&self, kind: ScaleKind, stored: i64) -> f64 {
        match kind {
            ScaleKind::Exponential => stored as f64,
            _ => stored as f64,
        }
    }
}

/// Everything fixed before the rotation decision.
struct Frame {
    font: f64,
    title_font: f64,
    plot_top: f64,
    plot_left: f64,
    plot_right_edge: f64,
    bottom_fixed: f64,
}

impl Frame {
    fn compute(spec: &ChartSpec, axis: &AxisModel) -> Frame {
        let font = spec.style.font_size;
        let title_font = font + 2.0;
        let plot_top = PAD + line_height(title_font) + 6.0;

        let legend_right = spec.style.legend_position == LegendPosition::Right;
        let legend_below = spec.style.legend_position == LegendPosition::Below;
        let plot_right_edge = if legend_right {
            CANVAS - LEGEND_RIGHT_WIDTH
        } else {
            CANVAS - PAD
        };

        let max_tick_w = axis
            .ticks
            .iter()
            .map(|(_, label)| text_width(label, font))
            .fold(0.0, f64::max);
        let max_cat_w = spec
            .group_labels
            .iter()
            .map(|label| text_width(label, font))
            .fold(0.0, f64::max);

        let plot_left = match spec.orientation {
            // Rotated value-axis label, then tick labels.
            Orientation::Vertical => PAD + line_height(font) + 4.0 + max_tick_w + TICK_GAP,
            // Category labels drawn horizontally on the left.
            Orientation::Horizontal => PAD + max_cat_w + TICK_GAP,
        };

        let bottom_fixed = PAD + if legend_below { LEGEND_BELOW_HEIGHT } else { 0.0 };

        Frame {
            font,
            title_font,
            plot_top,
            plot_left,
            plot_right_edge,
            bottom_fixed,
        }
    }

    /// Height of the rotating bottom text band at a given rotation.
    fn bottom_band(&self, spec: &ChartSpec, axis: &AxisModel, rot: Rotation) -> f64 {
        let texts: Vec<&str> = match spec.orientation {
            Orientation::Vertical => spec.group_labels.iter().map(String::as_str).collect(),
            Orientation::Horizontal => axis.ticks.iter().map(|(_, l)| l.as_str()).collect(),
        };
        let band = texts
            .iter()
            .map(|t| measure_text(t, self.font, rot).height)
            .fold(0.0, f64::max)
            + CAT_GAP;
        match spec.orientation {
            Orientation::Vertical => band,
            // Horizontal charts also carry the value-axis label under the ticks.
            Orientation::Horizontal => band + line_height(self.font) + CAT_GAP,
        }
    }

    fn plot_rect(&self, spec: &ChartSpec, axis: &AxisModel, rot: Rotation) -> PixelBox {
        let bottom = self.bottom_fixed + self.bottom_band(spec, axis, rot) + CAT_GAP;
        PixelBox::new(
            self.plot_left,
            self.plot_top,
            self.plot_right_edge - self.plot_left,
            CANVAS - self.plot_top - bottom,
        )
    }
}

/// Lay out a spec. Returns metadata for accepted charts, or the discard
/// reason. Deterministic for a given spec.
pub fn layout(spec: &ChartSpec) -> Result<ChartMetadata, DiscardReason> {
    let axis = AxisModel::for_spec(spec);
    let frame = Frame::compute(spec, &axis);

    let mut accepted: Option<(PixelBox, Vec<TextBoxMeta>, Vec<LegendBoxMeta>)> = None;
    let mut rot = Rotation::Deg0;
    loop {
        let plot = frame.plot_rect(spec, &axis, rot);
        if plot.width > 0.0 && plot.height > 0.0 {
            let (texts, legends) = place_texts(spec, &axis, &frame, &plot, rot);
            if !any_overlap(&texts) {
                accepted = Some((plot, texts, legends));
                break;
            }
        }
        match rot.escalate() {
            Some(next) => rot = next,
            None => break,
        }
    }

    let Some((plot, text_boxes, legend_boxes)) = accepted else {
        return Err(DiscardReason::UnresolvableLabelOverlap);
    };
    if plot.area() < MIN_PLOT_AREA_FRACTION * CANVAS * CANVAS {
        return Err(DiscardReason::PlotAreaTooSmall);
    }

    let bars = place_bars(spec, &axis, &plot);

    Ok(ChartMetadata {
        chart_id: spec.id.clone(),
        canvas_width: CANVAS,
        canvas_height: CANVAS,
        plot_area: plot,
        bars,
        text_boxes,
        legend_boxes,
    })
}

fn any_overlap(texts: &[TextBoxMeta]) -> bool {
    for (i, a) in texts.iter().enumerate() {
        for b in &texts[i + 1..] {
            if a.bbox.overlaps(&b.bbox) {
                return true;
            }
        }
    }
    false
}

/// Color of the bar at `(group, series)`: per-series for multi-series
/// charts, per-bar (cycling a possibly single-entry palette) otherwise.
pub fn bar_color(spec: &ChartSpec, group: usize, series: usize) -> Rgb {
    if spec.is_multi_series() {
        spec.style.palette[series]
    } else {
        spec.style.palette[group % spec.style.palette.len()]
    }
}

fn place_bars(spec: &ChartSpec, axis: &AxisModel, plot: &PixelBox) -> Vec<BarMeta> {
    let table = NamedColorTable::bundled();
    let groups = spec.group_count();
    let series = spec.series_count();
    let stacked = spec.grouping.is_stacked();
    let span = axis.vmax - axis.vmin;

    let mut bars = Vec::with_capacity(groups * series);
    for g in 0..groups {
        let mut cumulative = 0i64;
        for s in 0..series {
            let stored = spec.value(g, s);
            let value = spec.scale.magnitude(stored);
            let rgb = bar_color(spec, g, s);
            let color_name = name_color(rgb, table).to_string();

            let bbox = if value == 0 {
                None
            } else {
                let pos = axis.bar_position(spec.scale.kind, stored);
                let (lo_v, hi_v) = if stacked {
                    let lo = cumulative as f64;
                    (lo, lo + pos)
                } else {
                    (axis.baseline.min(pos), axis.baseline.max(pos))
                };
                let lo_f = (lo_v - axis.vmin) / span;
                let hi_f = (hi_v - axis.vmin) / span;

                let columns = if stacked { 1 } else { series };
                let column = if stacked { 0 } else { s };
                Some(match spec.orientation {
                    Orientation::Vertical => {
                        let band_w = plot.width / groups as f64;
                        let band_x = plot.x + g as f64 * band_w;
                        let total = band_w * spec.style.bar_width_ratio;
                        let bar_w = total / columns as f64;
                        let x = band_x + (band_w - total) / 2.0 + column as f64 * bar_w;
                        let y_top = plot.bottom() - hi_f * plot.height;
                        let y_bot = plot.bottom() - lo_f * plot.height;
                        PixelBox::new(x, y_top, bar_w, y_bot - y_top)
                    }
                    Orientation::Horizontal => {
                        // Group 0 sits at the bottom, like the vertical
                        // chart's leftmost group rotated onto the y axis.
                        let band_h = plot.height / groups as f64;
                        let band_y = plot.bottom() - (g + 1) as f64 * band_h;
                        let total = band_h * spec.style.bar_width_ratio;
                        let bar_h = total / columns as f64;
                        let y = band_y + (band_h - total) / 2.0
                            + (columns - 1 - column) as f64 * bar_h;
                        let x_lo = plot.x + lo_f * plot.width;
                        let x_hi = plot.x + hi_f * plot.width;
                        PixelBox::new(x_lo, y, x_hi - x_lo, bar_h)
                    }
                })
            };
            if stacked && stored > 0 {
                cumulative += stored;
            }
            bars.push(BarMeta {
                group: g,
                series: s,
                value,
                bbox,
                rgb,
                color_name,
                hatch: spec.style.hatch,
            });
        }
    }
    bars
}

fn place_texts(
    spec: &ChartSpec,
    axis: &AxisModel,
    frame: &Frame,
    plot: &PixelBox,
    rot: Rotation,
) -> (Vec<TextBoxMeta>, Vec<LegendBoxMeta>) {
    let font = frame.font;
    let lh = line_height(font);
    let mut texts = Vec::new();

    // Title, centered over the canvas.
    let title = &spec.title_context.title;
    let title_w = text_width(title, frame.title_font);
    texts.push(TextBoxMeta {
        text: title.clone(),
        role: TextRole::Title,
        bbox: PixelBox::new(
            (CANVAS - title_w) / 2.0,
            PAD,
            title_w,
            line_height(frame.title_font),
        ),
        rotation: Rotation::Deg0,
    });

    let axis_label = &spec.title_context.value_axis_label;
    match spec.orientation {
        Orientation::Vertical => {
            // Rotated value-axis label along the left edge.
            let w = text_width(axis_label, font);
            texts.push(TextBoxMeta {
                text: axis_label.clone(),
                role: TextRole::AxisLabel,
                bbox: PixelBox::new(
                    PAD,
                    plot.y + (plot.height - w) / 2.0,
                    lh,
                    w,
                ),
                rotation: Rotation::Deg90,
            });
            // Value ticks on the left, right-aligned to the plot edge and
            // clamped into the plot's vertical span so the corner labels
            // stay clear of the category band.
            for (pos, label) in &axis.ticks {
                let w = text_width(label, font);
                let y = plot.bottom() - axis.frac(*pos) * plot.height;
                let y_top = (y - lh / 2.0).clamp(plot.y, plot.bottom() - lh);
                texts.push(TextBoxMeta {
                    text: label.clone(),
                    role: TextRole::TickLabel,
                    bbox: PixelBox::new(plot.x - TICK_GAP - w, y_top, w, lh),
                    rotation: Rotation::Deg0,
                });
            }
            // Category labels under the plot, rotating as a unit.
            let band_w = plot.width / spec.group_count() as f64;
            let role = category_role(spec);
            for (g, label) in spec.group_labels.iter().enumerate() {
                let center_x = plot.x + (g as f64 + 0.5) * band_w;
                texts.push(bottom_text(label, role, font, rot, center_x, plot.bottom() + CAT_GAP));
            }
        }
        Orientation::Horizontal => {
            // Category labels on the left, one per band, never rotated.
            let band_h = plot.height / spec.group_count() as f64;
            let role = category_role(spec);
            for (g, label) in spec.group_labels.iter().enumerate() {
                let w = text_width(label, font);
                let center_y = plot.bottom() - (g as f64 + 0.5) * band_h;
                texts.push(TextBoxMeta {
                    text: label.clone(),
                    role,
                    bbox: PixelBox::new(plot.x - TICK_GAP - w, center_y - lh / 2.0, w, lh),
                    rotation: Rotation::Deg0,
                });
            }
            // Value ticks along the bottom, rotating as a unit.
            let mut band_bottom: f64 = plot.bottom() + CAT_GAP;
            for (pos, label) in &axis.ticks {
                let x = plot.x + axis.frac(*pos) * plot.width;
                let tb = bottom_text(label, TextRole::TickLabel, font, rot, x, plot.bottom() + CAT_GAP);
                band_bottom = band_bottom.max(tb.bbox.bottom());
                texts.push(tb);
            }
            // Value-axis label centered under the tick band.
            let w = text_width(axis_label, font);
            texts.push(TextBoxMeta {
                text: axis_label.clone(),
                role: TextRole::AxisLabel,
                bbox: PixelBox::new(
                    plot.x + (plot.width - w) / 2.0,
                    band_bottom + CAT_GAP,
                    w,
                    lh,
                ),
                rotation: Rotation::Deg0,
            });
        }
    }

    let legends = place_legend(spec, plot, font, &mut texts);
    (texts, legends)
}

fn category_role(spec: &ChartSpec) -> TextRole {
    if spec.is_multi_series() {
        TextRole::GroupLabel
    } else {
        TextRole::BarLabel
    }
}

/// Place one bottom-band text at the requested rotation. Unrotated and
/// 90-degree text centers on the anchor; 45-degree text hangs down-left
/// from it, mirroring how plotting libraries anchor slanted tick labels.
fn bottom_text(
    text: &str,
    role: TextRole,
    font: f64,
    rot: Rotation,
    anchor_x: f64,
    top_y: f64,
) -> TextBoxMeta {
    let ext = measure_text(text, font, rot);
    let x = match rot {
        Rotation::Deg0 | Rotation::Deg90 => anchor_x - ext.width / 2.0,
        Rotation::Deg45 => anchor_x - ext.width + 4.0,
    };
    TextBoxMeta {
        text: text.to_string(),
        role,
        bbox: PixelBox::new(x, top_y, ext.width, ext.height),
        rotation: rot,
    }
}

fn place_legend(
    spec: &ChartSpec,
    plot: &PixelBox,
    font: f64,
    texts: &mut Vec<TextBoxMeta>,
) -> Vec<LegendBoxMeta> {
    if !spec.is_multi_series() || spec.style.legend_position == LegendPosition::None {
        return Vec::new();
    }
    let table = NamedColorTable::bundled();
    let lh = line_height(font);
    let entry_h = lh.max(LEGEND_PATCH) + 4.0;
    let mut legends = Vec::new();

    let mut push_entry = |s: usize, x: f64, y: f64, texts: &mut Vec<TextBoxMeta>| {
        let rgb = spec.style.palette[s];
        legends.push(LegendBoxMeta {
            series: s,
            bbox: PixelBox::new(x, y + (entry_h - LEGEND_PATCH) / 2.0, LEGEND_PATCH, LEGEND_PATCH),
            rgb,
            color_name: name_color(rgb, table).to_string(),
        });
        let label = &spec.series_labels[s];
        let w = text_width(label, font);
        texts.push(TextBoxMeta {
            text: label.clone(),
            role: TextRole::LegendEntry,
            bbox: PixelBox::new(
                x + LEGEND_PATCH + 4.0,
                y + (entry_h - lh) / 2.0,
                w,
                lh,
            ),
            rotation: Rotation::Deg0,
        });
    };

    match spec.style.legend_position {
        LegendPosition::Right => {
            let x = CANVAS - LEGEND_RIGHT_WIDTH + 8.0;
            let mut y = plot.y + 4.0;
            for s in 0..spec.series_count() {
                push_entry(s, x, y, texts);
                y += entry_h;
            }
        }
        LegendPosition::Inside => {
            let block_w = spec
                .series_labels
                .iter()
                .map(|l| LEGEND_PATCH + 4.0 + text_width(l, font))
                .fold(0.0, f64::max)
                + 12.0;
            let x = plot.right() - 6.0 - block_w + 6.0;
            let mut y = plot.y + 6.0;
            for s in 0..spec.series_count() {
                push_entry(s, x, y, texts);
                y += entry_h;
            }
        }
        LegendPosition::Below => {
            let widths: Vec<f64> = spec
                .series_labels
                .iter()
                .map(|l| LEGEND_PATCH + 4.0 + text_width(l, font) + 18.0)
                .collect();
            let total: f64 = widths.iter().sum();
            let mut x = ((CANVAS - total) / 2.0).max(PAD);
            let y = CANVAS - LEGEND_BELOW_HEIGHT + (LEGEND_BELOW_HEIGHT - entry_h) / 2.0;
            for (s, w) in widths.iter().enumerate() {
                push_entry(s, x, y, texts);
                x += w;
            }
        }
        LegendPosition::None => unreachable!(),
    }
    legends
}

/// Re-check every metadata invariant. Used by the `inspect validate`
/// command and by tests; generator output must come back clean.
pub fn validate_metadata(meta: &ChartMetadata) -> Vec<Violation> {
    let mut out = Vec::new();
    let violation = |field: &str, rule: String| Violation {
        field: field.to_string(),
        rule,
    };

    if meta.canvas_width != CANVAS || meta.canvas_height != CANVAS {
        out.push(violation("canvas", format!("canvas must be {CANVAS}x{CANVAS}")));
    }
    let frac = meta.plot_area.area() / (CANVAS * CANVAS);
    if frac < MIN_PLOT_AREA_FRACTION {
        out.push(violation(
            "plot_area",
            format!("plot area fraction {frac:.3} below {MIN_PLOT_AREA_FRACTION}"),
        ));
    }
    for bar in &meta.bars {
        let field = format!("bars[{},{}]", bar.group, bar.series);
        match (&bar.bbox, bar.value) {
            (Some(_), 0) => out.push(violation(&field, "zero-value bar has a box".into())),
            (None, v) if v != 0 => out.push(violation(&field, "missing box on nonzero bar".into())),
            (Some(b), _) => {
                if !(b.width > 0.0 && b.height > 0.0) {
                    out.push(violation(&field, "degenerate bar box".into()));
                }
                if !b.inside_canvas() {
                    out.push(violation(&field, "bar box outside canvas".into()));
                }
            }
            (None, _) => {}
        }
    }
    for (i, tb) in meta.text_boxes.iter().enumerate() {
        if tb.text.is_empty() {
            out.push(violation(&format!("text_boxes[{i}]"), "empty text".into()));
        }
        if !tb.bbox.inside_canvas() {
            out.push(violation(
                &format!("text_boxes[{i}]"),
                format!("box for {:?} outside canvas", tb.text),
            ));
        }
    }
    for (i, a) in meta.text_boxes.iter().enumerate() {
        for b in &meta.text_boxes[i + 1..] {
            if a.bbox.overlaps(&b.bbox) {
                out.push(violation(
                    "text_boxes",
                    format!("{:?} overlaps {:?}", a.text, b.text),
                ));
            }
        }
    }
    out
}
