pub mod linalg;
pub mod lattice;
pub mod cone;
pub mod chow;
pub mod scenarios;
pub mod cli;
