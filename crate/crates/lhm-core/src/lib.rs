//! Discrete harmonic measure from infinity on the square, triangular and
//! hexagonal lattices, together with the combinatorial machinery around it:
//! winding spiral sets and their tunnels, surrounding loops, interlocked
//! clusters and bypass paths, packed-set reductions, and a brute-force
//! minimum search at small cardinality.

pub mod interlock;
pub mod io;
pub mod lattice;
pub mod loops;
pub mod path;
pub mod reduction;
pub mod search;
pub mod seqbounds;
pub mod setgeom;
pub mod solver;
pub mod spiral;
pub mod verify;

pub use lattice::{LatticeKind, OrientedEdge, Site};
pub use path::LatticePath;
pub use setgeom::SiteSet;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
