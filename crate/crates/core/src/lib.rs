//! Lattice points in ellipses `am² + bmn + cn² <= x` for real positive
//! definite forms: exact counts of all and primitive points, the Epstein
//! zeta function of the form, and an explicit lower bound for the mean of
//! the primitive error term `|R(x)|`.

// `!(x >= a)` is used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod counting;
pub mod epstein;
pub mod error;
pub mod omega;
pub mod quadform;
pub mod quadrature;
pub mod special;

pub use counting::{count, count_primitive_moebius, enumerate, mean_abs_r, CountResult, ValueList};
pub use epstein::{
    functional_equation, potter_f1, potter_f2_bound, zeta_q_series, PotterEvaluation,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use omega::{finite_y_check, k0_lower_bound, weight_constant_check, BoundReport};
pub use quadform::{FormConstants, QuadraticForm};
