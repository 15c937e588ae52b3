pub mod cylinder;
pub mod error;
pub mod exponential;
pub mod fibration;
pub mod groupoid;
pub mod identity;
pub mod kan;
pub mod limits;
pub mod search;
pub mod subcomplex;
pub mod universe;
pub mod verdict;

pub use error::{Error, Result};
pub use groupoid::{builtin, compose, FinGroupoid, Gpd, GroupoidMap, Mor, Morphism, Obj};
pub use verdict::Verdict;
