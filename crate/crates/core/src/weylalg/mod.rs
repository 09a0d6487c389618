//! The algebra generated by `U`, `V` with `[V, U] = aV + b`: expression
//! parsing, normal ordering (all `U` to the left of all `V`) by rewriting
//! `VU → UV + aV + b`, closed forms for `(UV)^n` and `V^n U`, and concrete
//! realizations as exact linear maps on polynomials.

mod concrete;
mod expr;
mod normal;

pub use concrete::{
    apply_concrete, apply_normal_form, apply_word, falling_alpha_beta_moment, moments,
    raw_moment, script_r_on_one, ConcreteOp, Realization,
};
pub use expr::{parse_operator, OperatorExpr, ParseError};
pub use normal::{
    normal_order, uv_power_closed_form, vn_u_normal_form, vn_u_relation_check, Gen, NormalForm,
    RewriteOrder, WeylAlgebra,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Sheffer(#[from] crate::sheffer::Error),
}
