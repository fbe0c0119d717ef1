//! Exact-arithmetic toolkit for pseudocharacters of classical groups.
//!
//! The crate works over the rationals throughout. Finite groups enter as
//! multiplication tables ([`group`]), representations as per-element rational
//! matrices ([`rep`]), and the trace relations of the orthogonal and general
//! linear groups are generated symbolically ([`relations`]). On top of that
//! sit the pseudocharacter verifiers ([`pseudochar`]) and the
//! element-conjugacy versus global-conjugacy decisions ([`conjugacy`]).

pub mod cli;
pub mod conjugacy;
pub mod error;
pub mod group;
pub mod linalg;
pub mod pseudochar;
pub mod relations;
pub mod rep;
pub mod words;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupElement};
pub use linalg::{Rational, RationalMatrix};
