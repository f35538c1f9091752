//! Command-line companion to `metricglue-core`: JSON file formats for
//! spaces, morphisms, and diagrams; randomized/exhaustive property suites;
//! and a corpus of self-checking scenarios. The `metricglue` binary wires
//! these together.

pub mod format;
pub mod gen;
pub mod render;
pub mod scenario;
pub mod suite;
