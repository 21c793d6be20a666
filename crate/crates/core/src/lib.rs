//! Exact formal integration of `1/Q`, `Q(z) = z(z - a_1)…(z - a_q)`, as a
//! series in `1/z` over the rationals.
//!
//! * [`field`], [`poly`]: exact rationals and dense polynomials.
//! * [`symmetric`]: elementary and complete homogeneous symmetric functions,
//!   Vandermonde determinants.
//! * [`series`]: the truncated ring `K[[1/z]]` with its valuation.
//! * [`integral`]: partial fractions, the moment identities and the two
//!   integration paths.
//! * [`asymptotics`]: the shrinking-root limit `-1/(q z^q)` and charge systems.
//! * [`parse`], [`cli`]: input syntax and the `liouville` command.

pub mod asymptotics;
pub mod cli;
pub mod field;
pub mod integral;
pub mod parse;
pub mod poly;
pub mod series;
pub mod symmetric;

pub use field::{Field, Rat};
pub use integral::{
    closed_form_coefficient, integrate_via_coefficients, integrate_via_pfd, moment,
    partial_fractions, theorem_valuation_check, verify_lemma, IntegralResult, RootConfig,
};
pub use poly::Poly;
pub use series::{InvZSeries, Valuation};
