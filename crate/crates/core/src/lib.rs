pub mod error;
pub mod hom;
pub mod lattice;
pub mod matrix;
pub mod module;
pub mod ring;
pub mod snf;
pub mod complex;
pub mod homology;
pub mod filtration;
pub mod bockstein;
pub mod mayer_vietoris;
pub mod io;
pub mod corpus;
