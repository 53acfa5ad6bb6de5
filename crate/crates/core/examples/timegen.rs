fn main() {
    let t0 = std::time::Instant::now();
    let config = chartsynth::sampler::GeneratorConfig::default();
    let vocab = chartsynth::sampler::Vocabulary::bundled();
    let dir = std::env::temp_dir().join("timegen_out");
    let _ = std::fs::remove_dir_all(&dir);
    let manifest = chartsynth::pipeline::generate_dataset(&config, &vocab, &dir).unwrap();
    println!("desk-scale generation: {:.2?}", t0.elapsed());
    let total_q: u64 = manifest.splits.values().map(|s| s.questions).sum();
    println!("questions total: {total_q}, files: {}", manifest.files.len());
    let _ = std::fs::remove_dir_all(&dir);
}
