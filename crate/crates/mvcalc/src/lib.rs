//! Library surface of the `mvcalc` command-line driver: the law-checking
//! suites and the serialization helpers, shared by the binary and the
//! integration tests.

pub mod checks;
pub mod output;
