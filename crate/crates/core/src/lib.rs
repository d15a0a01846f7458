//! Exact enumerative counts of nodal curves on an elliptic K3 surface and on
//! the rational elliptic surface.
//!
//! Every count is available three ways, each checking the others:
//!
//! * [`modforms`] builds the closed-form quasi-modular generating series,
//!   `(G2')^g * prod (1 - q^m)^-24` (K3) and the exponent-12 analogue (RES);
//! * [`counting::count_convolution`] sums `prod p(a_j) * prod b_i sigma(b_i)`
//!   over all component data by brute force;
//! * [`counting::count_by_components`] evaluates every component of the
//!   moduli space individually, using admissible sequences ([`admseq`]), the
//!   Cremona rewrite engine ([`cremona`]) and Hermite normal form sublattice
//!   enumeration ([`arith`]).
//!
//! All arithmetic is exact; see [`exactq`].

pub mod admseq;
pub mod arith;
pub mod cli;
pub mod counting;
pub mod cremona;
mod error;
pub mod exactq;
pub mod modforms;

pub use error::{Error, Result};
