pub mod cli;
pub mod error;
pub mod harness;
pub mod kernels;
pub mod lie;
pub mod radial;
pub mod sampler;

pub use error::{Error, Result};
