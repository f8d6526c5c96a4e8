//! Exact intersection theory on the space of complete conics.
//!
//! The space in question is the blowup of the P^5 of plane conics along the
//! Veronese surface of double lines. Everything here is computed over the
//! rationals with no floating point anywhere: the Chow ring modulo numerical
//! equivalence ([`chow`]), the torus-fixed-point tables that pin down the
//! additive structure ([`bb`]), and the effective and nef cones in every
//! intermediate codimension ([`cone`]).
//!
//! The [`verify`] module recomputes every displayed value from scratch and
//! reports agreement check by check; the `conics` binary exposes the same
//! machinery on the command line.

pub mod bb;
pub mod chow;
pub mod cone;
pub mod expr;
pub mod linalg;
pub mod verify;
