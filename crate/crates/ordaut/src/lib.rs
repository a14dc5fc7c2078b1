//! Command-line tools, JSON formats and sampling for `ordaut-core`.

pub mod cli;
pub mod json;
pub mod random;
pub mod samples;
