//! Rational solutions of first-order linear differential systems over `Q(x)`.

mod antiderivative;
mod cyclic;
mod solve;

pub use antiderivative::{principal_part, rational_antiderivative, Antiderivative};
pub use cyclic::{cyclic_vector, CyclicVector};
pub use solve::{
    ansatz, rational_solutions_homogeneous, rational_solutions_parametrized, residual, verify,
    Ansatz, RatSol, RatSolSpace,
};
