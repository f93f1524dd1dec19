pub mod cone;
pub mod divisor;
pub mod error;
pub mod exact;
pub mod skew;
pub mod thick;
pub mod witt;

pub use error::{Error, Result};
