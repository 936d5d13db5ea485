//! Bakry–Émery curvature of finite weighted graphs, normalized Laplacian
//! spectra, and executable checks of the Harnack and eigenvalue–diameter
//! inequalities that follow from a curvature lower bound.
//!
//! ```
//! use becurv::{generators, curvature::{graph_curvature, Dimension}};
//!
//! let k2 = generators::complete(2).unwrap();
//! let res = graph_curvature(&k2, Dimension::Infinite).unwrap();
//! assert!((res.kappa - 2.0).abs() < 1e-12);
//! ```


pub mod cli;
pub mod curvature;
pub mod error;
pub mod generators;
pub mod graph;
pub mod linalg;
pub mod operators;
pub mod spectra;
pub mod verify;


pub use curvature::{CurvatureResult, Dimension};
pub use error::{Error, Result};
pub use graph::{DiameterStats, Graph};
pub use operators::VertexFunction;
pub use spectra::{EigenPair, Spectrum};
