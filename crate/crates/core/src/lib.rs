//! Finite combinatorics for scaled simplicial sets.
//!
//! Complexes are vertex-determined: every nondegenerate simplex is an ordered
//! tuple of distinct vertices and the complex is closed under deleting
//! vertices. On top of that sit thin-triangle scalings, the scaled anodyne
//! generators, the twisted-square cosimplicial objects and a certificate
//! format whose replay checks every pushout step.

pub mod certifier;
pub mod complex;
pub mod config;
pub mod error;
pub mod generators;
pub mod io;
pub mod scaling;
pub mod tower;

pub use complex::{ComplexMap, OrderedComplex, Simplex, Vertex, VertexMap};
pub use error::{Error, Result};
pub use scaling::ScaledComplex;
