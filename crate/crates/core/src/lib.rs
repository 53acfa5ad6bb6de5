//! Deterministic bar-chart benchmark toolkit.
//!
//! The crate synthesizes bar-chart images (SVG) together with complete
//! ground-truth metadata, generates template-based question-answer pairs
//! over them, and scores prediction files, all from a single seed.
//!
//! Modules map onto the pipeline stages:
//!
//! - [`chart`]: the symbolic chart representation and its validator
//! - [`sampler`]: seeded sampling of styles, data, labels, and themes
//! - [`layout`]: 448x448 layout, fit-based discard, metadata extraction
//! - [`svg`]: SVG emission from layout metadata
//! - [`color`]: nearest-named-color lookup (CIEDE2000 over L*a*b*)
//! - [`question`]: template instantiation, answer oracle, bias balancing
//! - [`dictionary`]: chart-local word dictionary and hybrid encoding
//! - [`eval`]: exact / edit-distance scoring and localization metrics
//! - [`pipeline`]: dataset assembly, manifests, checksums

pub mod chart;
pub mod layout;
pub mod pipeline;
pub mod question;
pub mod color;
pub mod dictionary;
pub mod eval;
pub mod rng;
pub mod sampler;
pub mod svg;
pub mod text;
