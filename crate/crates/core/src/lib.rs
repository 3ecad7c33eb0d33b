//! Exact arithmetic for integral hyperbolic lattices: isometries, Salem
//! factors, finite quotients, chamber walks and transfer certificates.

pub mod error;
pub mod fixtures;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod poly;
pub mod quotient;
pub mod salem;
pub mod sturm;
pub mod transfer;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{make_embedding, Embedding, Isometry, Lattice, LatticeVector, Signature};
pub use matrix::{IntMatrix, RatMatrix};
pub use poly::{charpoly, cyclotomic, IntPolynomial};
pub use quotient::{descends_to, order_mod, reduce_mod, restrict, stabilizing_power, ModMatrix};
pub use salem::{is_salem, salem_degree, strip_cyclotomic, FactorReport, SalemVerdict};
pub use weyl::{chamber_walk, reflect, roots_with_pairing, same_chamber, separating_roots, Root, WeylWord};
pub use transfer::{align_interior, transfer_salem, verify_certificate, TransferCertificate, TransferOptions};
