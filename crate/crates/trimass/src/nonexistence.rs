//! Certificates that the staged sparsity stops at the vertex stage.
//!
//! A sparser vertex row at degree p would need a nonzero combination of the
//! low-degree functions carrying the top-vertex factor that is orthogonal to
//! every function carrying the bottom-vertex-pair factor. The moment matrix
//! between those two sets is square of size p(p-1)/2, and it factors as an
//! invertible change of basis times a weighted Gram matrix of the factored
//! families. The Gram factor is positive definite because the weight, the
//! product of all three vertex functions, is positive inside the triangle.
//! So the moment matrix is nonsingular and no such combination exists. The
//! code certifies this degree by degree: directly computed singular values
//! on one route, the factorization identity on the other.

use alloc::string::String;
use alloc::vec::Vec;

use crate::dubiner::{
    collapse, eval_kind, position_of, triangle_rule, vertex_a_divisible_positions, BasisKind,
    EdgeHatted, ReferenceBasis, TriangleQuadrature, Vertex, VertexHatted,
};
use crate::exact::{
    basis_polys, edge_hatted_polys, rat_is_positive_definite, rat_mat_mul, rat_rank, rat_solve,
    rat_zeros, vertex_hatted_polys, vertex_poly, RatMat, RatPoly2,
};
use crate::linalg::{sym_eigenvalues, Mat};
use crate::{BasisOrdering, Error, Result};

const ORDERING: BasisOrdering = BasisOrdering::EdgeMajor;

/// Largest degree the floating-point route accepts; past this the rounding
/// analysis has not been done and the exact route must be used.
pub const MAX_FLOAT_DEGREE: usize = 7;
/// Largest degree the exact route accepts, bounded only by runtime.
pub const MAX_EXACT_DEGREE: usize = 12;

/// Relative floor for the smallest singular value of the moment matrix.
pub const SINGULAR_VALUE_RTOL: f64 = 1e-10;
/// Cap on the factorization residual, enforced through this degree.
pub const RESIDUAL_TOL: f64 = 1e-10;
pub const RESIDUAL_MAX_DEGREE: usize = 6;

/// Row and column index sets of the moment matrix, in the edge-major layout.
#[derive(Debug, Clone)]
pub struct CertificateIndexSets {
    /// Positions of the low-degree functions divisible by the top vertex
    /// function; one row of the moment matrix each.
    pub vertex_rows: Vec<usize>,
    /// Positions of the functions divisible by the product of the two bottom
    /// vertex functions; one column each.
    pub edge_cols: Vec<usize>,
}

pub fn index_sets(p: usize) -> CertificateIndexSets {
    let vertex_rows = vertex_a_divisible_positions(p, ORDERING);
    let edge_fam = EdgeHatted::new(p);
    let edge_cols: Vec<usize> = (0..edge_fam.len())
        .map(|k| position_of(p, ORDERING, edge_fam.origin(k)).unwrap())
        .collect();
    debug_assert!({
        let vertex_fam = VertexHatted::new(p);
        (0..vertex_fam.len())
            .map(|i| position_of(p, ORDERING, vertex_fam.origin(i)).unwrap())
            .eq(vertex_rows.iter().copied())
    });
    CertificateIndexSets {
        vertex_rows,
        edge_cols,
    }
}

/// Moments of the row functions against the column functions, by quadrature
/// on the original basis. Needs exactness 2p - 1.
pub fn constraint_matrix(p: usize, rule: &TriangleQuadrature) -> Result<Mat> {
    if rule.exactness < 2 * p - 1 {
        return Err(Error::QuadratureTooWeak {
            need: 2 * p - 1,
            have: rule.exactness,
        });
    }
    let basis = ReferenceBasis::with_ordering(p, ORDERING)?;
    let sets = index_sets(p);
    let mut c = Mat::zeros(sets.vertex_rows.len(), sets.edge_cols.len());
    for (pt, w) in rule.iter() {
        let vals = basis.eval(pt)?;
        for (i, &ri) in sets.vertex_rows.iter().enumerate() {
            let wi = w * vals[ri];
            if wi == 0.0 {
                continue;
            }
            for (k, &ck) in sets.edge_cols.iter().enumerate() {
                c[(i, k)] += wi * vals[ck];
            }
        }
    }
    Ok(c)
}

/// The same moments by exact polynomial integration.
pub fn constraint_matrix_exact(p: usize) -> RatMat {
    let polys = basis_polys(p, ORDERING);
    let sets = index_sets(p);
    let mut c = rat_zeros(sets.vertex_rows.len(), sets.edge_cols.len());
    for (i, &ri) in sets.vertex_rows.iter().enumerate() {
        for (k, &ck) in sets.edge_cols.iter().enumerate() {
            c[i][k] = polys[ri].mul(&polys[ck]).integrate_ref();
        }
    }
    c
}

/// Gram matrices of the two factored families.
#[derive(Debug, Clone)]
pub struct HattedGrams {
    /// Unweighted moments of the vertex family against the edge family.
    pub cross: Mat,
    /// Unweighted Gram of the edge family.
    pub edge: Mat,
    /// Gram of the edge family under the triple-vertex weight.
    pub weighted: Mat,
}

pub fn hatted_grams(p: usize, rule: &TriangleQuadrature) -> Result<HattedGrams> {
    if rule.exactness < 2 * p - 1 {
        return Err(Error::QuadratureTooWeak {
            need: 2 * p - 1,
            have: rule.exactness,
        });
    }
    let vertex_fam = VertexHatted::new(p);
    let edge_fam = EdgeHatted::new(p);
    let (nv, ne) = (vertex_fam.len(), edge_fam.len());
    let mut cross = Mat::zeros(nv, ne);
    let mut edge = Mat::zeros(ne, ne);
    let mut weighted = Mat::zeros(ne, ne);
    for (pt, w) in rule.iter() {
        let c = collapse(pt)?;
        let vv = vertex_fam.eval(c);
        let ev = edge_fam.eval(c);
        let bubble = eval_kind(BasisKind::Vertex(Vertex::A), c)
            * eval_kind(BasisKind::Vertex(Vertex::B), c)
            * eval_kind(BasisKind::Vertex(Vertex::C), c);
        for i in 0..nv {
            let wi = w * vv[i];
            for k in 0..ne {
                cross[(i, k)] += wi * ev[k];
            }
        }
        for j in 0..ne {
            let wj = w * ev[j];
            let bj = w * bubble * ev[j];
            for k in j..ne {
                edge[(j, k)] += wj * ev[k];
                weighted[(j, k)] += bj * ev[k];
            }
        }
    }
    for j in 0..ne {
        for k in 0..j {
            edge[(j, k)] = edge[(k, j)];
            weighted[(j, k)] = weighted[(k, j)];
        }
    }
    Ok(HattedGrams {
        cross,
        edge,
        weighted,
    })
}

/// Expansion of the vertex family in the edge family: the unique H with
/// H * edge = cross. Exists because both families span the same space.
pub fn compute_h(p: usize, rule: &TriangleQuadrature) -> Result<Mat> {
    h_from_grams(&hatted_grams(p, rule)?)
}

fn h_from_grams(grams: &HattedGrams) -> Result<Mat> {
    let rows: Vec<Vec<f64>> = (0..grams.cross.nrows())
        .map(|i| grams.edge.solve(grams.cross.row(i)))
        .collect::<Result<_>>()?;
    Ok(Mat::from_rows(&rows))
}

/// Floating-point certificate for one degree.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub p: usize,
    /// p(p-1)/2, what both index sets must count.
    pub expected_rank: usize,
    pub rows: usize,
    pub cols: usize,
    /// Whether the weighted Gram admits a Cholesky factorization.
    pub weighted_spd: bool,
    pub min_eig_weighted: f64,
    pub min_singular_value: f64,
    pub norm: f64,
    /// Max-entry mismatch of the factorization identity. Always reported;
    /// only gates `pass` through degree RESIDUAL_MAX_DEGREE.
    pub factor_residual: f64,
    pub pass: bool,
}

pub fn certify(p: usize) -> Result<Certificate> {
    crate::dubiner::check_degree(p, 2, MAX_FLOAT_DEGREE)?;
    let rule = triangle_rule(p + 2)?;
    let expected = p * (p - 1) / 2;
    let c = constraint_matrix(p, &rule)?;
    let grams = hatted_grams(p, &rule)?;
    let weighted_spd = grams.weighted.cholesky().is_ok();
    let min_eig_weighted = sym_eigenvalues(&grams.weighted)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let min_singular_value = c.min_singular_value();
    let norm = c.norm2();
    let h = h_from_grams(&grams)?;
    let factor_residual = h.matmul(&grams.weighted).max_abs_diff(&c);
    let counts_ok = c.nrows() == expected && c.ncols() == expected;
    let sv_ok = min_singular_value > SINGULAR_VALUE_RTOL * norm;
    let residual_ok = p > RESIDUAL_MAX_DEGREE || factor_residual <= RESIDUAL_TOL;
    Ok(Certificate {
        p,
        expected_rank: expected,
        rows: c.nrows(),
        cols: c.ncols(),
        weighted_spd,
        min_eig_weighted,
        min_singular_value,
        norm,
        factor_residual,
        pass: counts_ok && weighted_spd && sv_ok && residual_ok,
    })
}

/// Exact certificate: integer rank, exact positive definiteness, exact
/// factorization identity. No tolerances anywhere.
#[derive(Debug, Clone)]
pub struct ExactCertificate {
    pub p: usize,
    pub expected_rank: usize,
    pub rank: usize,
    pub weighted_spd: bool,
    pub identity_holds: bool,
    pub pass: bool,
}

pub fn certify_exact(p: usize) -> Result<ExactCertificate> {
    crate::dubiner::check_degree(p, 2, MAX_EXACT_DEGREE)?;
    let expected = p * (p - 1) / 2;
    let c = constraint_matrix_exact(p);
    let rank = rat_rank(&c);

    let vertex_polys = vertex_hatted_polys(p);
    let edge_polys = edge_hatted_polys(p);
    let weight = vertex_poly(Vertex::A)
        .mul(&vertex_poly(Vertex::B))
        .mul(&vertex_poly(Vertex::C));
    let cross = gram_exact(&vertex_polys, &edge_polys, None);
    let edge = gram_exact(&edge_polys, &edge_polys, None);
    let weighted = gram_exact(&edge_polys, &edge_polys, Some(&weight));
    let weighted_spd = rat_is_positive_definite(&weighted);

    let ne = edge_polys.len();
    let mut h = rat_zeros(vertex_polys.len(), ne);
    for (i, row) in h.iter_mut().enumerate() {
        *row = rat_solve(&edge, &cross[i], "factored family expansion")?;
    }
    let identity_holds = rat_mat_mul(&h, &weighted) == c;

    Ok(ExactCertificate {
        p,
        expected_rank: expected,
        rank,
        weighted_spd,
        identity_holds,
        pass: rank == expected && weighted_spd && identity_holds,
    })
}

fn gram_exact(a: &[RatPoly2], b: &[RatPoly2], weight: Option<&RatPoly2>) -> RatMat {
    let symmetric = core::ptr::eq(a.as_ptr(), b.as_ptr()) && a.len() == b.len();
    let mut g = rat_zeros(a.len(), b.len());
    for i in 0..a.len() {
        let start = if symmetric { i } else { 0 };
        for j in start..b.len() {
            let mut prod = a[i].mul(&b[j]);
            if let Some(w) = weight {
                prod = prod.mul(w);
            }
            let val = prod.integrate_ref();
            if symmetric && j != i {
                g[j][i] = val.clone();
            }
            g[i][j] = val;
        }
    }
    g
}

/// One line of the standard report for a floating certificate.
pub fn report_line(cert: &Certificate) -> String {
    alloc::format!(
        "p={} {} min_sv(C)={:.3e} min_eig(Mhat)={:.3e} residual={:.3e}",
        cert.p,
        if cert.pass { "pass" } else { "fail" },
        cert.min_singular_value,
        cert.min_eig_weighted,
        cert.factor_residual,
    )
}
