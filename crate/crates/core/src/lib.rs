// SPDX-License-Identifier: Apache-2.0
//! Exact computations with compositions of quadratic spaces, Clifford
//! algebras with quadratic pairs and split trialitarian triples, valid in
//! every characteristic including 2.

pub mod error;
pub mod exactfield;

pub use error::{Error, Result};
pub use exactfield::{linear_solve, Echelon, FieldSpec, Matrix, Scalar, Solution};
pub mod clifford;
pub mod quadform;
pub mod composition;
pub mod report;
pub mod triality;
pub mod compalg;
pub mod json;
pub mod samples;
pub mod selftest;
