//! sorbit: exact-arithmetic cohomology of Weyl-group orbits (real flag
//! manifolds).
//!
//! The crate computes the Betti numbers of an orbit W·x0 two independent
//! ways and verifies that they agree:
//!
//! * a Morse census: each orbit point gets an index, the multiplicity-
//!   weighted count of reflection hyperplanes separating it from the base
//!   chamber, and the Betti vector is the census of these indices;
//! * a coinvariant-algebra presentation: the graded dimensions of the
//!   invariants of the point stabilizer inside S/I_W, where I_W is the ideal
//!   generated by the nonconstant W-invariant polynomials, stretched by the
//!   common root multiplicity m.
//!
//! Supporting machinery: exact root systems ([`rootsys`]), full Weyl-group
//! enumeration ([`weyl`]), sparse rational polynomials with the group action
//! ([`polyring`]), the divided-difference calculus ([`divdiff`]), the graded
//! ideal and its harmonic complement ([`coinv`]), and the Morse side
//! ([`morse`]). Everything is exact: integers, big rationals, and integer
//! matrices; no floating point anywhere.

pub mod coinv;
pub mod divdiff;
pub mod error;
pub mod linalg;
pub mod morse;
pub mod polyring;
pub mod rat;
pub mod rootsys;
pub mod weyl;

pub use coinv::{Coinvariants, CoinvariantPresentation, GradedSlice, HillerReport};
pub use divdiff::{CompositionReport, DivDiff, WellDefinedReport};
pub use error::{Error, Result};
pub use morse::{
    perfectness_witness, verify_coinvariant_agreement, AgreementReport, MorseProfile,
    OrbitCounting, OrbitPoint, PerfectnessReport,
};
pub use polyring::{
    act, graded_dimension, monomials_of_degree, reynolds, weyl_vector_product, Monomial,
    Polynomial,
};
pub use rat::{format_rat, parse_rat, Rat};
pub use rootsys::{parse_label, Family, MultiplicitySpec, MultiplicityTable, RootSystem};
pub use weyl::{Subgroup, WeylElement, WeylGroup, DEFAULT_ENUMERATION_BOUND};
