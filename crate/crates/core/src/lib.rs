pub mod error;
pub mod exactnum;
pub mod exec;
pub mod fpl;
pub mod linkpat;
pub mod pipeline;
pub mod schur;
pub mod spin;
pub mod transfer;

pub use error::{Error, Result};
