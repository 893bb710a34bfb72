//! Exact rational arithmetic: bivariate polynomials over BigRational,
//! closed-form integration over the reference triangle, and dense
//! elimination. This is the authoritative route for the element operators;
//! the floating quadrature route exists to cross-check it.

mod basis;
mod poly;
mod solve;

pub use basis::{
    basis_poly, basis_polys, edge_hatted_polys, jacobi_coeffs, jacobi_poly_in_s,
    mass_matrix_exact, vertex_hatted_polys, vertex_poly, warped_profile_poly,
};
pub use poly::{monomial_integral, RatPoly2};
pub use solve::{
    rat_identity, rat_inverse, rat_is_positive_definite, rat_mat_mul, rat_mat_vec,
    rat_matrix_max_abs_f64, rat_rank, rat_solve, rat_to_f64, rat_transpose, rat_zeros, RatMat,
};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}
