//! Domination, exponential domination and porous exponential domination.

mod solver;
mod weight;

pub use solver::{
    all_parameters, domination_number, exponential_domination_number, parameters,
    porous_exponential_domination_number, ParamKind, ParamResult, Params,
};
pub use weight::{
    dist_constrained, is_dominating, is_exponential_dominating, is_porous_exponential_dominating, porous_weight,
    porous_weights, weight, weights, ConstrainedDistances, DyadicWeight,
};
