//! File formats, command dispatch and the seeded self-test suite behind the
//! `rbx` binary.

pub mod cli;
pub mod format;
pub mod selftest;
