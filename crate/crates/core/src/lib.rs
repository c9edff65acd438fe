//! Sparse Laurent polynomials over F2, matrices over them, and lattice
//! fingerprints of Newton polytopes.
//!
//! The crate is organised bottom-up: [`laurent`] provides exact polynomial
//! arithmetic, [`matrix`] square matrices and their powers, [`polytope`]
//! Newton polytopes and their unimodular invariants, and [`scenarios`] the
//! concrete orbit computations built on top of them.

pub mod acceptance;
pub mod laurent;
pub mod matrix;
pub mod polytope;
pub mod scenarios;

pub use laurent::{
    parse_poly, ExponentVector, LaurentError, LaurentPoly, MonomialSubstitution, ParseError,
    VariableList,
};
pub use matrix::{orbit_value, LaurentMatrix, MatrixError, MonomialFactorization};
pub use polytope::{
    fingerprint, newton_polytope, Fingerprint, FingerprintRecord, LatticePolytope, PolytopeError,
};
