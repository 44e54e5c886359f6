//! File formats, JSON reports, stream scanning and the `fum` command line.

pub mod app;
pub mod formats;
pub mod report;
pub mod scan;

pub use app::run;
pub use formats::{
    parse_any, parse_planar_code, parse_text, write_planar_code, write_text, FormatError,
};
pub use scan::{scan, ScanChecks, ScanOptions, ScanReport};
