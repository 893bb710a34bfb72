//! The basis functions as exact polynomials in (r, s).
//!
//! The collapsed-coordinate products all simplify to polynomials; writing
//! them with rational coefficients is what lets the construction and the
//! certificates run in exact arithmetic.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::poly::RatPoly2;
use super::solve::RatMat;
use super::{rat, rat_int, Rat};
use crate::dubiner::{
    BasisKind, Edge, EdgeHatted, EdgeHattedMember, Vertex, VertexHatted, VertexHattedMember,
};
use crate::BasisOrdering;

/// Coefficients of P_n^{alpha,beta} in the monomial basis, exact.
/// Integer parameters only; that covers every profile in the basis.
pub fn jacobi_coeffs(alpha: i64, beta: i64, n: usize) -> Vec<Rat> {
    assert!(alpha > -1 && beta > -1);
    if n == 0 {
        return vec![Rat::one()];
    }
    let (a, b) = (rat_int(alpha), rat_int(beta));
    let half_sum = (&a + &b + rat_int(2)) / rat_int(2);
    let mut prev = vec![Rat::one()];
    let mut cur = vec![&a + rat_int(1) - &half_sum, half_sum];
    for k in 2..=n {
        let kf = rat_int(k as i64);
        let two_k_ab = &kf * rat_int(2) + &a + &b;
        let c0 = rat_int(2) * &kf * (&kf + &a + &b) * (&two_k_ab - rat_int(2));
        let c1 = (&two_k_ab - rat_int(1)) * (&a * &a - &b * &b);
        let c2 = (&two_k_ab - rat_int(1)) * &two_k_ab * (&two_k_ab - rat_int(2));
        let c3 = rat_int(2) * (&kf + &a - rat_int(1)) * (&kf + &b - rat_int(1)) * &two_k_ab;
        let mut next = vec![Rat::zero(); k + 1];
        for (i, v) in cur.iter().enumerate() {
            next[i] += &c1 / &c0 * v;
            next[i + 1] += &c2 / &c0 * v;
        }
        for (i, v) in prev.iter().enumerate() {
            next[i] -= &c3 / &c0 * v;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// P_n^{alpha,beta}(s) as a bivariate polynomial constant in r.
pub fn jacobi_poly_in_s(alpha: i64, beta: i64, n: usize) -> RatPoly2 {
    let mut out = RatPoly2::zero();
    for (k, c) in jacobi_coeffs(alpha, beta, n).into_iter().enumerate() {
        out.add_term(0, k as u32, c);
    }
    out
}

/// W_j = P_j^{2,2}(xi) ((1 - eta)/2)^j expanded in (r, s): with
/// xi (1 - s) = 2r + s + 1, each power of xi trades against the (1 - s)
/// factors and the quotient disappears.
pub fn warped_profile_poly(j: usize) -> RatPoly2 {
    let coeffs = jacobi_coeffs(2, 2, j);
    let lin = RatPoly2::var_r()
        .scale(&rat_int(2))
        .add(&RatPoly2::var_s())
        .add(&RatPoly2::one()); // 2r + s + 1
    let one_minus_s = RatPoly2::one().sub(&RatPoly2::var_s());
    let mut acc = RatPoly2::zero();
    for (i, c) in coeffs.into_iter().enumerate() {
        let term = lin.pow(i as u32).mul(&one_minus_s.pow((j - i) as u32));
        acc = acc.add(&term.scale(&c));
    }
    acc.scale(&rat(1, 1i64 << j))
}

pub fn vertex_poly(v: Vertex) -> RatPoly2 {
    let half = rat(1, 2);
    match v {
        // (1 + s)/2
        Vertex::A => RatPoly2::one().add(&RatPoly2::var_s()).scale(&half),
        // -(r + s)/2
        Vertex::B => RatPoly2::var_r().add(&RatPoly2::var_s()).scale(&-half),
        // (1 + r)/2
        Vertex::C => RatPoly2::one().add(&RatPoly2::var_r()).scale(&half),
    }
}

fn alternating(mode: usize) -> Rat {
    if mode % 2 == 0 {
        rat_int(-1)
    } else {
        rat_int(1)
    }
}

pub fn basis_poly(kind: BasisKind) -> RatPoly2 {
    let (a, b, c) = (
        vertex_poly(Vertex::A),
        vertex_poly(Vertex::B),
        vertex_poly(Vertex::C),
    );
    match kind {
        BasisKind::Vertex(v) => vertex_poly(v),
        BasisKind::Edge { edge: Edge::Bottom, mode } => {
            b.mul(&c).mul(&warped_profile_poly(mode - 1))
        }
        BasisKind::Edge { edge: Edge::Hypotenuse, mode } => {
            c.mul(&a).mul(&jacobi_poly_in_s(2, 2, mode - 1))
        }
        BasisKind::Edge { edge: Edge::Left, mode } => a
            .mul(&b)
            .mul(&jacobi_poly_in_s(2, 2, mode - 1))
            .scale(&alternating(mode)),
        BasisKind::Interior { m, n } => a
            .mul(&b)
            .mul(&c)
            .mul(&warped_profile_poly(m))
            .mul(&jacobi_poly_in_s(2 * m as i64 + 5, 2, n)),
    }
}

pub fn basis_polys(p: usize, ordering: BasisOrdering) -> Vec<RatPoly2> {
    crate::dubiner::index_list(p, ordering)
        .into_iter()
        .map(basis_poly)
        .collect()
}

/// Exact Gram matrix of the degree-p basis.
pub fn mass_matrix_exact(p: usize, ordering: BasisOrdering) -> RatMat {
    let polys = basis_polys(p, ordering);
    let n = polys.len();
    let mut m = super::rat_zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = polys[i].mul(&polys[j]).integrate_ref();
            m[i][j] = v.clone();
            m[j][i] = v;
        }
    }
    m
}

/// Exact polynomials for the vertex-A-factored family, member order matching
/// the float evaluators.
pub fn vertex_hatted_polys(p: usize) -> Vec<RatPoly2> {
    let fam = VertexHatted::new(p);
    fam.members
        .iter()
        .map(|&member| match member {
            VertexHattedMember::One => RatPoly2::one(),
            VertexHattedMember::Hyp { mode } => {
                vertex_poly(Vertex::C).mul(&jacobi_poly_in_s(2, 2, mode - 1))
            }
            VertexHattedMember::Left { mode } => vertex_poly(Vertex::B)
                .mul(&jacobi_poly_in_s(2, 2, mode - 1))
                .scale(&alternating(mode)),
            VertexHattedMember::Bubble { m, n } => vertex_poly(Vertex::B)
                .mul(&vertex_poly(Vertex::C))
                .mul(&warped_profile_poly(m))
                .mul(&jacobi_poly_in_s(2 * m as i64 + 5, 2, n)),
        })
        .collect()
}

/// Exact polynomials for the BC-factored family.
pub fn edge_hatted_polys(p: usize) -> Vec<RatPoly2> {
    let fam = EdgeHatted::new(p);
    fam.members
        .iter()
        .map(|&member| match member {
            EdgeHattedMember::Bottom { mode } => warped_profile_poly(mode - 1),
            EdgeHattedMember::Bubble { m, n } => vertex_poly(Vertex::A)
                .mul(&warped_profile_poly(m))
                .mul(&jacobi_poly_in_s(2 * m as i64 + 5, 2, n)),
        })
        .collect()
}
