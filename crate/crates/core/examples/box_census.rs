use chartsynth::dictionary::dictionary_from_metadata;
use chartsynth::layout::layout;
use chartsynth::rng::Split;
use chartsynth::sampler::{sample_chart, GeneratorConfig, Vocabulary};

fn main() {
    let config = GeneratorConfig::default();
    let vocab = Vocabulary::bundled();
    let mut max_boxes = 0usize;
    let mut accepted = 0;
    for split in Split::ALL {
        for i in 0..4000u64 {
            let spec = sample_chart(&config, &vocab, split, i);
            if let Ok(meta) = layout(&spec) {
                accepted += 1;
                max_boxes = max_boxes.max(meta.text_boxes.len());
                if let Err(e) = dictionary_from_metadata(&meta) {
                    println!("OVERFLOW on {}: {e}", spec.id);
                }
            }
        }
    }
    println!("accepted {accepted}, max text boxes on any chart: {max_boxes}");
}
