//! Distortion maps on ordinary elliptic curves with fully rational
//! `l`-torsion.
//!
//! The crate builds the pieces needed to decide, for a prime `l` with
//! `E[l] ⊆ E(F_p)`, which order-`l` subgroups admit a distortion map: the
//! Weil pairing, explicit CM endomorphisms and their action matrices on
//! `E[l]`, the splitting type of `l` in the CM field, and a DDH decision
//! procedure that uses a distortion map.

pub mod catalog;
pub mod classify;
pub mod curve;
pub mod ddh;
pub mod endo;
pub mod error;
pub mod field;
pub mod pairing;
pub mod torsion;

pub use curve::{Curve, FrobeniusData, Point};
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use torsion::{TorsionBasis, TorsionContext};
