//! Exact arithmetic kernel: rationals, polynomials, Laurent polynomials,
//! polynomial differential forms and affine maps.

pub mod affine;
pub mod form;
pub mod poly;
pub mod rational;

pub use affine::{AffineMap, PolyMap};
pub use form::{index_tuples, merge_indices, Form, LaurentForm, PolyForm};
pub use poly::{Exponent, Exps, LaurentPoly, MultiPoly, Poly};
pub use rational::{format_q, parse_q, q, qf, Q};
