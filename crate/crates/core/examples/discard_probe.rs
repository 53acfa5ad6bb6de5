use chartsynth::layout::{layout, DiscardReason, TextRole};
use chartsynth::sampler::{sample_chart, GeneratorConfig, Vocabulary};
use chartsynth::rng::Split;
use chartsynth::text::Rotation;

fn main() {
    let config = GeneratorConfig::default();
    let vocab = Vocabulary::bundled();
    let (mut discards, mut area, mut overlap, mut rot0, mut rot45, mut rot90) = (0, 0, 0, 0, 0, 0);
    let n = 10_000u64;
    for i in 0..n {
        let spec = sample_chart(&config, &vocab, Split::Train, i);
        match layout(&spec) {
            Ok(meta) => {
                let r = meta
                    .text_boxes
                    .iter()
                    .filter(|t| matches!(t.role, TextRole::BarLabel | TextRole::GroupLabel | TextRole::TickLabel))
                    .map(|t| t.rotation)
                    .max()
                    .unwrap();
                match r {
                    Rotation::Deg0 => rot0 += 1,
                    Rotation::Deg45 => rot45 += 1,
                    Rotation::Deg90 => rot90 += 1,
                }
            }
            Err(DiscardReason::PlotAreaTooSmall) => { discards += 1; area += 1; }
            Err(DiscardReason::UnresolvableLabelOverlap) => { discards += 1; overlap += 1; }
        }
    }
    println!("discards: {discards}/{n} ({:.2}%)  area={area} overlap={overlap}", 100.0*discards as f64/n as f64);
    println!("accepted rot0={rot0} rot45={rot45} rot90={rot90}");
}
