//! Library surface of the verification harness: check suites and the
//! report model.  The `verify` binary is a thin CLI over these.

pub mod checks;
pub mod report;
