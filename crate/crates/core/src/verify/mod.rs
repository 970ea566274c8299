//! Whole-group searches, single-set analysis, and input parsing.

pub mod analyze;
mod cache;
pub mod canonical;
pub mod enumerate;
pub mod input;
pub mod report;

pub use analyze::{analyze, AnalysisReport};
pub use canonical::{canonicalize, CanonicalClass};
pub use input::{parse_multiset, parse_set};
pub use report::{verify_fuglede, SetRecord, VerificationReport, VerifyOptions};
