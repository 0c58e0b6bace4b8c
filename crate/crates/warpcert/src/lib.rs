//! Doubly warped product shell/cap metrics with numerical curvature
//! certification.
//!
//! The library builds a complete metric on a half-line cross two round
//! spheres out of piecewise-analytic warping profiles, plus matching cap
//! metrics on sphere-cross-disc pieces, then certifies on dense grids that
//! every sectional/Ricci quantity the construction promises actually holds:
//! positive Ricci curvature everywhere, quadratically decaying negative
//! sectional curvature, and the boundary matching needed to glue caps into
//! the shell. Admissible parameters are found by a deterministic sweep.
//!
//! Scales in this construction grow like exp(exp(...)) in the index, so all
//! scale-bearing arithmetic is done on signed log-magnitudes ([`logsc`])
//! backed by compensated doubles ([`dd`]).

pub mod dd;
pub mod error;
pub mod logsc;
pub mod params;
pub mod profiles;
pub mod solve;

pub use error::{Error, Result};
pub use logsc::LogSc;
