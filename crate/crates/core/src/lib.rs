pub mod error;
pub mod free_words;
mod text;

pub use error::{Error, Result};
pub mod braids;
pub mod fixed_conjugacy;
pub mod involutive_products;
pub mod rank2;
pub mod representations;
pub mod semidirect;
pub mod suites;
