//! Maximal laminar families of 3-cutsets in 3-connected embedded planar
//! graphs, and tree decompositions of adhesion three.
//!
//! The pipeline works on the barycentric subdivision of the input: 3-cutsets
//! correspond one-for-one to canonical 6-cycles there, big wheel-like frames
//! carry all the non-laminar bulk, and after cutting along per-frame cycle
//! selections the leftover conflict graph is sparse enough for a greedy
//! maximal independent set. A deliberately naive oracle provides ground truth
//! for every stage.

pub mod bcs;
pub mod cycles;
pub mod decompose;
pub mod error;
pub mod fasthash;
pub mod frames;
pub mod generators;
pub mod oracle;
pub mod orientation;
pub mod planar;
pub mod render;
pub mod treedec;

pub use error::P3cError;
