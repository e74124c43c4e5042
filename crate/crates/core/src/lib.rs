//! Entropy versus index-of-coincidence diagrams: polygonal lower bounds on
//! Tsallis and Rényi entropies, max-probability envelopes, and the entropic
//! uncertainty relations they give for MUBs, MUMs, equiangular tight frames
//! and (general) SIC measurements.

pub mod bounds;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod harness;
pub mod quantum;
pub mod relations;
