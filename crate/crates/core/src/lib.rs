//! Exact-arithmetic toolkit for pointed fusion categories.
//!
//! The crate computes `ℂ×`-valued cohomology of finite groups through the
//! integral homology of the normalized bar complex, evaluates Frobenius-Schur
//! indicators and ribbon twists of pointed categories, their group-theoretical
//! duals and Drinfeld doubles, and classifies pointed categories of small rank
//! up to categorical Morita equivalence.  All arithmetic is exact: integers
//! escalate to big integers on demand and indicator values live in cyclotomic
//! fields with rational coefficients.

pub mod barres;
pub mod cohomology;

pub mod catalog;



pub mod groups;

pub mod perm;

pub mod zlinalg;

pub use groups::FiniteGroup;

