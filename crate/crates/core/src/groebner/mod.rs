//! Gröbner bases over ℚ and zero-dimensional solving.

mod buchberger;
mod fglm;
mod modular;
mod order;
mod solve;

pub use buchberger::{
    buchberger, buchberger_with_cancel, leading_monomial, normal_form, s_polynomial, CancelToken,
    GroebnerBasis,
};
pub use order::{MonomialOrder, OrderKind};
pub use solve::{
    filter_irreducible, is_zero_dimensional, solve_zero_dim, solve_zero_dim_with, standard_monomials,
    AlgebraicComponent, SolveOptions,
};
