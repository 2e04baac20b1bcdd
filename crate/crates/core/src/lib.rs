//! Quantum channel toolkit: Kraus, superoperator, Choi and Stinespring
//! representations; selfcomplementary channel families; entropic and
//! entanglement measures; qubit channel geometry and non-Markovian dynamics.

pub mod channel;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod io;
pub mod measures;
pub mod numerics;
pub mod random;

pub use channel::{ChoiMatrix, CptpReport, KrausSet, StinespringUnitary, SuperOperator, ValidationReport};
pub use error::{Error, Result};
pub use numerics::{ComplexMatrix, DensityMatrix, DEFAULT_TOL};

pub use num_complex::Complex64;
