//! Exact Laurent-ring algebra over ℤⁿ: Novikov series, crossed products,
//! leading coefficients over lattice chains, Novikov homology of finite
//! free complexes, fibering verdicts and homology growth along lattice
//! towers.

pub mod cli;
pub mod crossed;
pub mod fixtures;
pub mod fraction;
pub mod growth;
pub mod homology;
pub mod io;
pub mod lattice;
pub mod laurent;
pub mod orders;
pub mod polytope;
pub mod presentation;
pub mod ring;
pub mod scalar;
pub mod selftest;
pub mod series;
pub mod skewfield;
