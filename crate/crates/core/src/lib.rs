pub mod constructions;
pub mod error;
pub mod io;
pub mod magma;
pub mod measure;
pub mod ramsey;
pub mod rational;
pub mod thompson;
pub mod tree;

pub use error::{Error, Result};
pub use magma::Magma;
pub use measure::{convolve, substitute_measures, BinarySystem, Caret, Measure};
pub use rational::Q;
pub use thompson::FElement;
pub use tree::{Address, Tree};
