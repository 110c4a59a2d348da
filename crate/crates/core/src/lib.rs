pub mod dirichlet;
pub mod error;
pub mod experiments;
pub mod hadamard;
pub mod series;
