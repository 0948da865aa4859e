//! Finite commutative rings and the integers, ideals relative to a
//! multiplicative set, S-primary decomposition and a theorem lab that
//! checks the structural results exhaustively on small rings.

pub mod elemset;
pub mod decompose;
pub mod doc;
pub mod error;
pub mod ideal;
pub mod lab;
pub mod predicates;
pub mod ring;

pub use error::{Error, Result};
pub use ideal::{Ideal, IdealRepr, MsetRepr, MultiplicativeSet};
pub use ring::{Ring, RingElement, RingMap, RingSpec};
