use chartsynth::layout::layout;
use chartsynth::rng::Split;
use chartsynth::sampler::{sample_chart, GeneratorConfig, Vocabulary};
use chartsynth::svg::render_svg;

fn main() {
    let config = GeneratorConfig::default();
    let vocab = Vocabulary::bundled();
    let mut dumped = 0;
    for i in 0..400 {
        let spec = sample_chart(&config, &vocab, Split::Train, i);
        let interesting = spec.grouping.is_stacked()
            || spec.style.hatch.is_some()
            || spec.scale.kind == chartsynth::chart::ScaleKind::Exponential
            || spec.scale.allow_negative;
        if !interesting && i > 2 {
            continue;
        }
        if let Ok(meta) = layout(&spec) {
            let svg = render_svg(&meta, &spec);
            let path = format!("/tmp/sample_{}_{:?}_{:?}.svg", spec.id, spec.grouping, spec.scale.kind);
            std::fs::write(&path, &svg).unwrap();
            println!("{path} ({} bars, {} texts)", meta.bars.len(), meta.text_boxes.len());
            dumped += 1;
            if dumped >= 8 { break; }
        }
    }
}
