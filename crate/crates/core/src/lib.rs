pub mod error;
pub mod homology;
pub mod ideal;
pub mod io;
pub mod job;
pub mod linalg;
pub mod m2;
pub mod poset;
pub mod resolution;
pub mod simplicial;
pub mod sphere;
pub mod stable;
pub mod staircase;
pub mod vars;

pub use error::{Error, Result};
