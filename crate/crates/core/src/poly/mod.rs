//! Exact sparse polynomial arithmetic in `X0, X1, X2, Y` (plus the
//! elimination variable `T`), weighted grevlex orders, and free-module
//! elements for syzygy computations.

mod coeff;
mod module;
mod monomial;
mod order;
mod parse;
mod polynomial;

pub use coeff::Coeff;
pub use module::{divide_module, divide_module_with, s_vector, DivisorChoice, ModTerm, ModuleDivision, ModuleElement, ModuleOrder, SchreyerFrame};
pub use monomial::{Monomial, Var, NVARS, RING_VARS};
pub use order::{MonomialOrder, OrderKind, WeightedGrading};
pub use parse::{parse_polynomial, ParseError};
pub use polynomial::{divide, s_polynomial, Division, Polynomial, Term};
