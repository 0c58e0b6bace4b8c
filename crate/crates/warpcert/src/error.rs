//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} out of range: {detail}")]
    OutOfRange { name: &'static str, detail: String },

    #[error("no root in ({lo}, {hi}): {detail}")]
    NoRoot { lo: f64, hi: f64, detail: String },

    #[error("B = {b} is not negative; scale index {i} is not large enough")]
    NegativityViolated { i: u32, b: f64 },

    #[error("profile branches do not cross inside the shell: {detail}")]
    CrossingNotFound { detail: String },

    #[error("bound `{which}` violated at local coordinate {x}: {detail}")]
    BoundViolated {
        which: &'static str,
        x: f64,
        detail: String,
    },

    #[error("coordinate {x} outside profile domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("warping value nonpositive at interior point (local x = {x})")]
    DegenerateFiber { x: f64 },

    #[error("cap scale identities inconsistent: {detail}")]
    InconsistentScales { detail: String },

    #[error("no feasible parameters within budget; tightest failing constraint: {binding} (margin {margin})")]
    NoFeasible { binding: String, margin: f64 },

    #[error("config parse error at line {line}: {detail}")]
    ParseError { line: usize, detail: String },

    #[error("config validation failed for `{field}`: {detail}")]
    ValidationError { field: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
