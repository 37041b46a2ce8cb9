//! Exact lattice arithmetic over `Z` and the Eisenstein integers, with the
//! constructions and bounded searches behind the ball-quotient description
//! of the moduli of cubic threefolds.

#![allow(clippy::needless_range_loop)]

pub mod boundary;
pub mod constructions;
pub mod eisenstein;
pub mod elattice;
pub mod error;
pub mod matrix;
pub mod normal_form;
pub mod pivot;
pub mod report;
pub mod ring;
pub mod zlattice;

pub use eisenstein::{EisensteinInt, EisensteinRational};
pub use elattice::{ELattice, Mu3ZLattice};
pub use error::{Error, Result};
pub use matrix::{BigMatrix, EMatrix, IntMatrix, Matrix};
pub use pivot::Signature;
pub use report::{Status, WitnessReport};
pub use zlattice::{DiscriminantData, Parity, ZLattice};
