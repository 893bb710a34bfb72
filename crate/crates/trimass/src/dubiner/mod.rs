//! Modal basis on the reference triangle {(r, s) : r, s >= -1, r + s <= 0}.
//!
//! The basis splits into three vertex functions, p-1 functions per edge whose
//! traces vanish on the other two edges, and (p-1)(p-2)/2 interior bubbles.
//! Evaluation goes through the collapsed square coordinates (xi, eta); the
//! left-edge functions carry an alternating sign so that all three edge
//! traces become the *same* function of the counterclockwise arc parameter,
//! which is what makes orientation handling on meshes a pure sign flip.

mod hatted;
mod indexing;
mod quad;

pub use hatted::{EdgeHatted, EdgeHattedMember, VertexHatted, VertexHattedMember};
pub use indexing::{
    dim, index_list, interior_count, interior_flat_index, low_degree_positions, permutation,
    position_of, vertex_a_divisible_positions, BasisKind, Edge, Vertex,
};
pub use quad::{triangle_rule, TriangleQuadrature};

use alloc::vec::Vec;

use crate::jacobi::{jacobi_eval, JacobiParams};
use crate::linalg::Mat;
use crate::math;
use crate::{BasisOrdering, Error, Result};

pub(crate) use indexing::check_degree;

/// Tolerance for membership in the reference triangle.
pub const DOMAIN_TOL: f64 = 1e-12;
/// Band around the collapsed vertex s = 1 where xi is pinned to -1.
const APEX_BAND: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefPoint {
    pub r: f64,
    pub s: f64,
}

impl RefPoint {
    pub fn new(r: f64, s: f64) -> Self {
        RefPoint { r, s }
    }

    pub fn vertex(v: Vertex) -> Self {
        let (r, s) = v.coords();
        RefPoint { r, s }
    }

    pub fn on_edge(edge: Edge, t: f64) -> Self {
        let (r, s) = edge.point(t);
        RefPoint { r, s }
    }

    pub fn in_domain(&self) -> bool {
        self.r >= -1.0 - DOMAIN_TOL && self.s >= -1.0 - DOMAIN_TOL && self.r + self.s <= DOMAIN_TOL
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapsedPoint {
    pub xi: f64,
    pub eta: f64,
}

/// Map to the collapsed square. At the apex s = 1 the map is singular; any
/// xi multiplies a zero factor there, so it is pinned to -1, the limit along
/// the left edge.
pub fn collapse(pt: RefPoint) -> Result<CollapsedPoint> {
    if !pt.in_domain() {
        return Err(Error::OutsideDomain { r: pt.r, s: pt.s });
    }
    let xi = if math::abs(1.0 - pt.s) < APEX_BAND {
        -1.0
    } else {
        -1.0 + 2.0 * (1.0 + pt.r) / (1.0 - pt.s)
    };
    Ok(CollapsedPoint { xi, eta: pt.s })
}

fn p22(n: usize, z: f64) -> f64 {
    jacobi_eval(JacobiParams::SYMMETRIC_TWO, n, z)
}

fn interior_eta_params(m: usize) -> JacobiParams {
    JacobiParams::new(2.0 * m as f64 + 5.0, 2.0).unwrap()
}

/// Value of one basis function at a collapsed point.
pub fn eval_kind(kind: BasisKind, c: CollapsedPoint) -> f64 {
    let CollapsedPoint { xi, eta } = c;
    let lo_xi = 0.5 * (1.0 - xi);
    let hi_xi = 0.5 * (1.0 + xi);
    let lo_eta = 0.5 * (1.0 - eta);
    let hi_eta = 0.5 * (1.0 + eta);
    match kind {
        BasisKind::Vertex(Vertex::A) => hi_eta,
        BasisKind::Vertex(Vertex::B) => lo_xi * lo_eta,
        BasisKind::Vertex(Vertex::C) => hi_xi * lo_eta,
        BasisKind::Edge { edge: Edge::Bottom, mode } => {
            hi_xi * lo_xi * p22(mode - 1, xi) * math::powi(lo_eta, mode as i32 + 1)
        }
        BasisKind::Edge { edge: Edge::Hypotenuse, mode } => {
            hi_xi * lo_eta * hi_eta * p22(mode - 1, eta)
        }
        BasisKind::Edge { edge: Edge::Left, mode } => {
            let sign = if mode % 2 == 0 { -1.0 } else { 1.0 };
            sign * lo_xi * lo_eta * hi_eta * p22(mode - 1, eta)
        }
        BasisKind::Interior { m, n } => {
            lo_xi * hi_xi
                * p22(m, xi)
                * math::powi(lo_eta, m as i32 + 2)
                * hi_eta
                * jacobi_eval(interior_eta_params(m), n, eta)
        }
    }
}

/// The complete degree-p basis with a fixed ordering tag.
#[derive(Debug, Clone)]
pub struct ReferenceBasis {
    p: usize,
    ordering: BasisOrdering,
    kinds: Vec<BasisKind>,
}

pub const MAX_DEGREE: usize = 24;

impl ReferenceBasis {
    pub fn new(p: usize) -> Result<Self> {
        Self::with_ordering(p, BasisOrdering::default())
    }

    pub fn with_ordering(p: usize, ordering: BasisOrdering) -> Result<Self> {
        check_degree(p, 1, MAX_DEGREE)?;
        Ok(ReferenceBasis {
            p,
            ordering,
            kinds: index_list(p, ordering),
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn ordering(&self) -> BasisOrdering {
        self.ordering
    }

    pub fn dim(&self) -> usize {
        self.kinds.len()
    }

    pub fn kinds(&self) -> &[BasisKind] {
        &self.kinds
    }

    pub fn require_ordering(&self, expected: BasisOrdering) -> Result<()> {
        if self.ordering != expected {
            return Err(Error::OrderingMismatch {
                expected,
                found: self.ordering,
            });
        }
        Ok(())
    }

    /// All basis values at one point, in this basis's ordering.
    pub fn eval(&self, pt: RefPoint) -> Result<Vec<f64>> {
        let c = collapse(pt)?;
        Ok(self.kinds.iter().map(|&k| eval_kind(k, c)).collect())
    }

    pub fn eval_one(&self, kind: BasisKind, pt: RefPoint) -> Result<f64> {
        Ok(eval_kind(kind, collapse(pt)?))
    }

    /// Gram matrix of the basis under the given rule. The rule must integrate
    /// degree-2p products exactly.
    pub fn mass_matrix(&self, rule: &TriangleQuadrature) -> Result<Mat> {
        if rule.exactness < 2 * self.p {
            return Err(Error::QuadratureTooWeak {
                need: 2 * self.p,
                have: rule.exactness,
            });
        }
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (pt, w) in rule.iter() {
            let vals = self.eval(pt)?;
            for i in 0..n {
                let wi = w * vals[i];
                if wi == 0.0 {
                    continue;
                }
                for j in 0..n {
                    m[(i, j)] += wi * vals[j];
                }
            }
        }
        // enforce exact symmetry; summation order differs across the triangle
        for i in 0..n {
            for j in 0..i {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
                m[(i, j)] = avg;
                m[(j, i)] = avg;
            }
        }
        Ok(m)
    }
}

/// Trace of any edge function along its own edge, as a function of the
/// counterclockwise arc parameter. Identical for all three edges; odd or
/// even in t according to the mode parity.
pub fn edge_trace(mode: usize, t: f64) -> f64 {
    0.25 * (1.0 + t) * (1.0 - t) * p22(mode - 1, t)
}
