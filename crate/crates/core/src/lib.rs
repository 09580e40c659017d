pub mod check;
pub mod error;
pub mod lab;
pub mod order;
pub mod ring;
pub mod structure;

pub use check::Check;
pub use error::{Error, Result};
pub use ring::{ElementId, Limits, RingSpec, StarRing, TableSpec};
