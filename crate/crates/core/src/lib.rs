pub mod census;
pub mod certify;
pub mod comborth;
pub mod error;
pub mod exact;
pub mod graph;
pub mod matrix;
pub mod orthsearch;
pub mod qbounds;

pub use error::{Error, Result};
pub use graph::Graph;
