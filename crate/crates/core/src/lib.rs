//! Exact A∞-structures on exterior algebras induced by a superpotential.

pub mod algebra;
pub mod determinacy;
pub mod floer;
pub mod hochschild;
pub mod koszul;
pub mod linalg;
pub mod scalars;
pub mod structures;
pub mod toric;
pub mod transfer;
