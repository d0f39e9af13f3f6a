//! Randomized algebraic sieves over GF(2^b) for k-path, q-dimensional
//! p-packing, p-packing of q-sets and edge colouring, with brute-force
//! oracles for every identity the sieves rely on.

pub mod combin;
pub mod detect;
pub mod dimmatch;
pub mod edgecolor;
pub mod error;
pub mod family;
pub mod gf;
pub mod graph;
pub mod io;
pub mod kpath;
pub mod linalg;
pub mod oracle;
pub mod selftest;
pub mod setpack;

pub use detect::{DetectOptions, Detection, SieveEval};
pub use error::{Error, Result};
pub use family::{PartiteFamily, SetFamily};
pub use gf::{Field, FieldElement};
pub use graph::Graph;
pub use linalg::FieldMatrix;
