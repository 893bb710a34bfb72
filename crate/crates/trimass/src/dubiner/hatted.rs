//! The two factored families behind the certificates.
//!
//! Every low-degree basis function divisible by the vertex-A factor, divided
//! by it; and every function divisible by the product of the B and C factors,
//! divided by that. Both families have p(p-1)/2 members of degree <= p - 2
//! and are bases of that polynomial space. Division is carried out in closed
//! form, never numerically.

use alloc::vec::Vec;

use super::indexing::{interior_flat_index, Edge, Vertex};
use super::{BasisKind, CollapsedPoint};
use crate::jacobi::{jacobi_eval, JacobiParams};
use crate::math;

/// Members of the vertex-A-factored family, in the order induced by the
/// edge-major listing of the originals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexHattedMember {
    /// The vertex function divided by itself.
    One,
    /// Hypotenuse edge function over the A factor.
    Hyp { mode: usize },
    /// Left edge function over the A factor (alternating sign retained).
    Left { mode: usize },
    /// Interior bubble over the A factor.
    Bubble { m: usize, n: usize },
}

/// Members of the BC-factored family: bottom-edge functions and bubbles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeHattedMember {
    /// Degree mode-1 warped profile left after stripping the BC pair.
    Bottom { mode: usize },
    /// Interior bubble over the BC pair.
    Bubble { m: usize, n: usize },
}

#[derive(Debug, Clone)]
pub struct VertexHatted {
    pub p: usize,
    pub members: Vec<VertexHattedMember>,
}

#[derive(Debug, Clone)]
pub struct EdgeHatted {
    pub p: usize,
    pub members: Vec<EdgeHattedMember>,
}

fn bubble_pairs(max_total: isize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut t = 0isize;
    while t <= max_total {
        for n in 0..=t {
            out.push(((t - n) as usize, n as usize));
        }
        t += 1;
    }
    debug_assert!(out
        .windows(2)
        .all(|w| interior_flat_index(w[0].0, w[0].1) < interior_flat_index(w[1].0, w[1].1)));
    out
}

impl VertexHatted {
    pub fn new(p: usize) -> Self {
        let mut members = Vec::new();
        members.push(VertexHattedMember::One);
        for mode in 1..p.saturating_sub(1) {
            members.push(VertexHattedMember::Hyp { mode });
        }
        for mode in 1..p.saturating_sub(1) {
            members.push(VertexHattedMember::Left { mode });
        }
        for (m, n) in bubble_pairs(p as isize - 4) {
            members.push(VertexHattedMember::Bubble { m, n });
        }
        debug_assert_eq!(members.len(), p * (p - 1) / 2);
        VertexHatted { p, members }
    }

    /// The basis function each member came from.
    pub fn origin(&self, i: usize) -> BasisKind {
        match self.members[i] {
            VertexHattedMember::One => BasisKind::Vertex(Vertex::A),
            VertexHattedMember::Hyp { mode } => BasisKind::Edge { edge: Edge::Hypotenuse, mode },
            VertexHattedMember::Left { mode } => BasisKind::Edge { edge: Edge::Left, mode },
            VertexHattedMember::Bubble { m, n } => BasisKind::Interior { m, n },
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn eval(&self, c: CollapsedPoint) -> Vec<f64> {
        self.members.iter().map(|&m| eval_vertex_hatted(m, c)).collect()
    }
}

impl EdgeHatted {
    pub fn new(p: usize) -> Self {
        let mut members = Vec::new();
        for mode in 1..p {
            members.push(EdgeHattedMember::Bottom { mode });
        }
        for (m, n) in bubble_pairs(p as isize - 3) {
            members.push(EdgeHattedMember::Bubble { m, n });
        }
        debug_assert_eq!(members.len(), p * (p - 1) / 2);
        EdgeHatted { p, members }
    }

    pub fn origin(&self, i: usize) -> BasisKind {
        match self.members[i] {
            EdgeHattedMember::Bottom { mode } => BasisKind::Edge { edge: Edge::Bottom, mode },
            EdgeHattedMember::Bubble { m, n } => BasisKind::Interior { m, n },
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn eval(&self, c: CollapsedPoint) -> Vec<f64> {
        self.members.iter().map(|&m| eval_edge_hatted(m, c)).collect()
    }
}

fn p22(n: usize, z: f64) -> f64 {
    jacobi_eval(JacobiParams::SYMMETRIC_TWO, n, z)
}

/// Warped bottom-edge profile: P_j^{2,2}(xi) ((1 - eta)/2)^j, a polynomial of
/// total degree j on the triangle despite the collapsed-coordinate form.
pub fn warped_profile(j: usize, c: CollapsedPoint) -> f64 {
    p22(j, c.xi) * math::powi(0.5 * (1.0 - c.eta), j as i32)
}

pub fn eval_vertex_hatted(member: VertexHattedMember, c: CollapsedPoint) -> f64 {
    let lo_xi = 0.5 * (1.0 - c.xi);
    let hi_xi = 0.5 * (1.0 + c.xi);
    let lo_eta = 0.5 * (1.0 - c.eta);
    match member {
        VertexHattedMember::One => 1.0,
        VertexHattedMember::Hyp { mode } => hi_xi * lo_eta * p22(mode - 1, c.eta),
        VertexHattedMember::Left { mode } => {
            let sign = if mode % 2 == 0 { -1.0 } else { 1.0 };
            sign * lo_xi * lo_eta * p22(mode - 1, c.eta)
        }
        VertexHattedMember::Bubble { m, n } => {
            lo_xi * hi_xi
                * math::powi(lo_eta, m as i32 + 2)
                * p22(m, c.xi)
                * jacobi_eval(JacobiParams::new(2.0 * m as f64 + 5.0, 2.0).unwrap(), n, c.eta)
        }
    }
}

pub fn eval_edge_hatted(member: EdgeHattedMember, c: CollapsedPoint) -> f64 {
    match member {
        EdgeHattedMember::Bottom { mode } => warped_profile(mode - 1, c),
        EdgeHattedMember::Bubble { m, n } => {
            0.5 * (1.0 + c.eta)
                * warped_profile(m, c)
                * jacobi_eval(JacobiParams::new(2.0 * m as f64 + 5.0, 2.0).unwrap(), n, c.eta)
        }
    }
}
