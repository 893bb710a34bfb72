//! Index bookkeeping for the vertex/edge/interior basis.

use alloc::vec::Vec;

use crate::{BasisOrdering, Error, Result};

/// Reference triangle corners: A top (-1, 1), B bottom-left (-1, -1),
/// C bottom-right (1, -1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    pub fn coords(self) -> (f64, f64) {
        match self {
            Vertex::A => (-1.0, 1.0),
            Vertex::B => (-1.0, -1.0),
            Vertex::C => (1.0, -1.0),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Vertex::A => 0,
            Vertex::B => 1,
            Vertex::C => 2,
        }
    }
}

/// Edges in counterclockwise traversal order. Each is named by its place on
/// the reference triangle; `opposite` gives the vertex not on the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    /// s = -1, from B to C.
    Bottom,
    /// r + s = 0, from C to A.
    Hypotenuse,
    /// r = -1, from A to B.
    Left,
}

impl Edge {
    pub const ALL: [Edge; 3] = [Edge::Bottom, Edge::Hypotenuse, Edge::Left];

    pub fn index(self) -> usize {
        match self {
            Edge::Bottom => 0,
            Edge::Hypotenuse => 1,
            Edge::Left => 2,
        }
    }

    pub fn opposite(self) -> Vertex {
        match self {
            Edge::Bottom => Vertex::A,
            Edge::Hypotenuse => Vertex::B,
            Edge::Left => Vertex::C,
        }
    }

    /// First vertex in counterclockwise traversal.
    pub fn start(self) -> Vertex {
        match self {
            Edge::Bottom => Vertex::B,
            Edge::Hypotenuse => Vertex::C,
            Edge::Left => Vertex::A,
        }
    }

    /// Second vertex in counterclockwise traversal.
    pub fn end(self) -> Vertex {
        match self {
            Edge::Bottom => Vertex::C,
            Edge::Hypotenuse => Vertex::A,
            Edge::Left => Vertex::B,
        }
    }

    /// The edge reached next when walking counterclockwise.
    pub fn next(self) -> Edge {
        match self {
            Edge::Bottom => Edge::Hypotenuse,
            Edge::Hypotenuse => Edge::Left,
            Edge::Left => Edge::Bottom,
        }
    }

    pub fn prev(self) -> Edge {
        self.next().next()
    }

    /// Point at arc parameter t in [-1, 1], t = -1 at `start`.
    pub fn point(self, t: f64) -> (f64, f64) {
        match self {
            Edge::Bottom => (t, -1.0),
            Edge::Hypotenuse => (-t, t),
            Edge::Left => (-1.0, -t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Vertex(Vertex),
    /// mode >= 1; the trace along the edge is degree mode+1.
    Edge { edge: Edge, mode: usize },
    /// Tensor indices of the bubble; both bounded by m + n <= p - 3.
    Interior { m: usize, n: usize },
}

impl BasisKind {
    /// Total polynomial degree of the function.
    pub fn degree(self) -> usize {
        match self {
            BasisKind::Vertex(_) => 1,
            BasisKind::Edge { mode, .. } => mode + 1,
            BasisKind::Interior { m, n } => m + n + 3,
        }
    }
}

pub fn dim(p: usize) -> usize {
    (p + 1) * (p + 2) / 2
}

pub fn interior_count(p: usize) -> usize {
    if p < 3 {
        0
    } else {
        (p - 1) * (p - 2) / 2
    }
}

/// 1-based position of the (m, n) bubble inside the interior block,
/// enumerating along anti-diagonals of constant m + n.
pub fn interior_flat_index(m: usize, n: usize) -> usize {
    (m + n) * (m + n + 1) / 2 + n + 1
}

fn interior_pairs(p: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    if p >= 3 {
        for total in 0..=(p - 3) {
            for n in 0..=total {
                pairs.push((total - n, n));
            }
        }
    }
    debug_assert!(pairs
        .windows(2)
        .all(|w| interior_flat_index(w[0].0, w[0].1) + 1 == interior_flat_index(w[1].0, w[1].1)));
    pairs
}

/// All basis functions of degree <= p in the requested ordering.
pub fn index_list(p: usize, ordering: BasisOrdering) -> Vec<BasisKind> {
    let mut out = Vec::with_capacity(dim(p));
    out.extend(Vertex::ALL.map(BasisKind::Vertex));
    match ordering {
        BasisOrdering::EdgeMajor => {
            for edge in Edge::ALL {
                for mode in 1..p {
                    out.push(BasisKind::Edge { edge, mode });
                }
            }
        }
        BasisOrdering::ModeMajor => {
            for mode in 1..p {
                for edge in Edge::ALL {
                    out.push(BasisKind::Edge { edge, mode });
                }
            }
        }
    }
    for (m, n) in interior_pairs(p) {
        out.push(BasisKind::Interior { m, n });
    }
    out
}

pub fn position_of(p: usize, ordering: BasisOrdering, kind: BasisKind) -> Option<usize> {
    index_list(p, ordering).iter().position(|&k| k == kind)
}

/// perm[i] is the position in `to` of the function sitting at position i in
/// `from`; apply as out[perm[i]] = values[i].
pub fn permutation(p: usize, from: BasisOrdering, to: BasisOrdering) -> Vec<usize> {
    let target = index_list(p, to);
    index_list(p, from)
        .iter()
        .map(|k| target.iter().position(|t| t == k).unwrap())
        .collect()
}

/// Positions (0-based) of the functions of degree <= p - 1. There are
/// exactly dim(p - 1) of them, one fewer degree's worth of the hierarchy.
pub fn low_degree_positions(p: usize, ordering: BasisOrdering) -> Vec<usize> {
    index_list(p, ordering)
        .iter()
        .enumerate()
        .filter(|(_, k)| k.degree() + 1 <= p)
        .map(|(i, _)| i)
        .collect()
}

/// Positions among `low_degree_positions` whose function carries the vertex-A
/// linear factor: vertex A itself, every hypotenuse and left edge function,
/// and all interior bubbles. Size p(p-1)/2.
pub fn vertex_a_divisible_positions(p: usize, ordering: BasisOrdering) -> Vec<usize> {
    index_list(p, ordering)
        .iter()
        .enumerate()
        .filter(|(_, k)| k.degree() + 1 <= p)
        .filter(|(_, k)| match k {
            BasisKind::Vertex(v) => *v == Vertex::A,
            BasisKind::Edge { edge, .. } => *edge != Edge::Bottom,
            BasisKind::Interior { .. } => true,
        })
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn check_degree(p: usize, min: usize, max: usize) -> Result<()> {
    if p < min || p > max {
        return Err(Error::DegreeRange { p, min, max });
    }
    Ok(())
}
