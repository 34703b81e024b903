//! Synthesis and verification of Boolean Skolem functions with SAT oracles.

pub mod benchgen;
pub mod formula;
pub mod interplab;
pub mod oracle;
pub mod synth;
pub mod verify;
