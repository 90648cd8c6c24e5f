//! File formats, seeded instance generation, verification suites and reports
//! on top of `kml-core`.

pub mod formats;
pub mod report;
pub mod sample;
pub mod suites;
