//! Quadratic spaces over F2, the subspaces `S(Φ, Ψ; k)` of their `k`-fold
//! sums, and the constructions of the extended Golay code, the Leech lattice
//! and the weight-2 count 196884 that they glue together.

pub mod certificate;
pub mod cli;
pub mod codeforge;
pub mod error;
pub mod f2linalg;
pub mod io;
pub mod latticeforge;
pub mod orthogroup;
pub mod quadspace;
pub mod verify;
pub mod voashadow;

pub use certificate::{Certificate, Check, Source};
pub use codeforge::{BinaryCode, GlueSpaceC};
pub use error::{Error, Result};
pub use f2linalg::{F2Matrix, F2Vector, Subspace};
pub use latticeforge::{BigLattice, GlueSpaceL, Lattice};
pub use orthogroup::{BlockIsometry, Isometry};
pub use quadspace::QuadraticSpace;
