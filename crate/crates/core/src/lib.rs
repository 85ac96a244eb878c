//! Complex Nevai-type operators on Chebyshev node grids over `X = [-1,1]^2`.
//!
//! Three operator families are provided: generalized (interpolating at the
//! node grid), Kantorovich (cell means on a uniform grid) and Hermite
//! (Taylor data at the nodes). Support modules cover cell quadrature,
//! error and image-quality measures, step-image reconstruction and the
//! built-in test functions.

pub mod chebyshev;
pub mod error;
pub mod field;
pub mod grid;
pub mod imaging;
pub mod metrics;
pub mod operator;
mod par;
pub mod quadrature;
pub mod testbed;

pub use chebyshev::{make_basis, orthonormal_t, ChebyshevBasis};
pub use error::{NevaiError, Result};
pub use field::{BreakLine, ComplexField};
pub use grid::{EvaluationGrid, GridSpec};
pub use imaging::{Channel, ComplexImage, StepField};
pub use metrics::{ErrorReport, ImageQuality, RateEstimate};
pub use num_complex::Complex64;
pub use operator::{
    Approximant, CellTable, Family, GeneralizedOperator, HermiteOperator, KantorovichGrid, KantorovichOperator,
    NodeGrid2D, OperatorConfig,
};
pub use testbed::{FunctionId, NamedFunction};
