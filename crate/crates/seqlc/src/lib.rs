pub mod analysis;
pub mod bound;
pub mod cli;
pub mod config;
pub mod extfield;
pub mod generators;
pub mod gf2linalg;
pub mod gf2poly;
