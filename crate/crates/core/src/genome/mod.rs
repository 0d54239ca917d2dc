//! Genome encodings and their variation operators.

pub mod bitstring;
pub mod tree;
