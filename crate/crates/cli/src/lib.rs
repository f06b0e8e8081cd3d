//! Library side of the `fga` binary: expression evaluation, the
//! verification-suite registry, and report serialization.

pub mod eval;
pub mod report;
pub mod suites;
