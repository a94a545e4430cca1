pub mod algebra;
pub mod error;
pub mod geography;
pub mod groebner;
pub mod incidence;
pub mod io;
pub mod quartic;
pub mod search;

pub use error::{Error, Result};
