//! Exact probabilities of voting events under the Impartial Anonymous
//! Culture (IAC) assumption.
//!
//! A voting event over `m` candidates is a system of homogeneous integer
//! inequalities in the `m!` counts of voters holding each preference order.
//! This crate builds those systems ([`voting`]), collapses variables whose
//! columns coincide into weighted groups ([`reduction`]), counts lattice
//! points exactly and fits Ehrhart quasi-polynomials ([`counting`]), and
//! computes exact limits for a growing electorate by integrating the leading
//! term of the group weight over the reduced polytope ([`geometry`],
//! [`integration`]).
//!
//! Every value-bearing computation is exact: counts are big integers and
//! probabilities are [`Rational`]s.

pub mod counting;
pub mod error;
pub mod geometry;
pub mod integration;
pub mod numerics;
pub mod recipe;
pub mod reduction;
pub mod voting;

pub use error::{Error, Result};
pub use numerics::Rational;
