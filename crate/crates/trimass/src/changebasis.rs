//! Structure-preserving changes of basis.
//!
//! A valid transform fixes the vertex functions up to additions from the
//! *adjacent* edges and the interior, lets each edge mix only within itself
//! (plus interior), and lets the interior mix freely. That sparsity is what
//! keeps vertex/edge/interior roles, traces, and conformity intact; the
//! inverse inherits the same shape and is computed blockwise, never by a
//! general dense factorization of the whole matrix.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::dubiner::{index_list, BasisKind, Edge, RefPoint, ReferenceBasis};
use crate::exact::{rat_zeros, Rat, RatMat};
use crate::linalg::Mat;
use crate::{BasisOrdering, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryRule {
    Zero,
    One,
    Free,
}

/// The mandated pattern for a degree-p transform in the given ordering.
pub fn structure(p: usize, ordering: BasisOrdering) -> Vec<Vec<EntryRule>> {
    let kinds = index_list(p, ordering);
    let n = kinds.len();
    let mut rules = Vec::with_capacity(n);
    for &rk in &kinds {
        let mut row = Vec::with_capacity(n);
        for &ck in &kinds {
            row.push(entry_rule(ordering, rk, ck));
        }
        rules.push(row);
    }
    rules
}

fn entry_rule(ordering: BasisOrdering, row: BasisKind, col: BasisKind) -> EntryRule {
    match (row, col) {
        (BasisKind::Vertex(v), BasisKind::Vertex(w)) => {
            if v == w {
                EntryRule::One
            } else {
                EntryRule::Zero
            }
        }
        // a vertex function may not pick up anything from its opposite edge,
        // or its trace there would stop vanishing
        (BasisKind::Vertex(v), BasisKind::Edge { edge, .. }) => {
            if edge.opposite() == v {
                EntryRule::Zero
            } else {
                EntryRule::Free
            }
        }
        (BasisKind::Vertex(_), BasisKind::Interior { .. }) => EntryRule::Free,
        (BasisKind::Edge { .. }, BasisKind::Vertex(_)) => EntryRule::Zero,
        (BasisKind::Edge { edge: re, mode: rm }, BasisKind::Edge { edge: ce, mode: cm }) => {
            if re != ce {
                EntryRule::Zero
            } else {
                match ordering {
                    BasisOrdering::EdgeMajor => EntryRule::Free,
                    // normalized upper-triangular mixing within each edge
                    BasisOrdering::ModeMajor => {
                        if cm == rm {
                            EntryRule::One
                        } else if cm > rm {
                            EntryRule::Free
                        } else {
                            EntryRule::Zero
                        }
                    }
                }
            }
        }
        (BasisKind::Edge { .. }, BasisKind::Interior { .. }) => EntryRule::Free,
        (BasisKind::Interior { .. }, BasisKind::Interior { .. }) => EntryRule::Free,
        (BasisKind::Interior { .. }, _) => EntryRule::Zero,
    }
}

const FLOAT_STRUCTURE_TOL: f64 = 1e-14;

fn block_name(block: Block) -> String {
    match block {
        Block::Edge(Edge::Bottom) => String::from("bottom edge"),
        Block::Edge(Edge::Hypotenuse) => String::from("hypotenuse edge"),
        Block::Edge(Edge::Left) => String::from("left edge"),
        Block::Interior => String::from("interior"),
    }
}

#[derive(Clone, Copy)]
enum Block {
    Edge(Edge),
    Interior,
}

/// Positions of each superblock. Both orderings keep vertices first, then
/// all edge functions, then the interior block.
struct Layout {
    n: usize,
    edge_cols: [Vec<usize>; 3],
    interior_start: usize,
}

fn layout(p: usize, ordering: BasisOrdering) -> Layout {
    let kinds = index_list(p, ordering);
    let mut edge_cols: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut interior_start = kinds.len();
    for (i, k) in kinds.iter().enumerate() {
        match k {
            BasisKind::Edge { edge, .. } => edge_cols[edge.index()].push(i),
            BasisKind::Interior { .. } => {
                interior_start = interior_start.min(i);
            }
            BasisKind::Vertex(_) => {}
        }
    }
    Layout {
        n: kinds.len(),
        edge_cols,
        interior_start,
    }
}

macro_rules! transform_impl {
    ($name:ident, $scalar:ty, $matty:ty) => {
        impl $name {
            pub fn p(&self) -> usize {
                self.p
            }

            pub fn ordering(&self) -> BasisOrdering {
                self.ordering
            }

            pub fn matrix(&self) -> &$matty {
                &self.mat
            }

            pub fn require_compatible(&self, basis: &ReferenceBasis) -> Result<()> {
                if basis.ordering() != self.ordering {
                    return Err(Error::OrderingMismatch {
                        expected: self.ordering,
                        found: basis.ordering(),
                    });
                }
                if basis.p() != self.p {
                    return Err(Error::DegreeRange {
                        p: basis.p(),
                        min: self.p,
                        max: self.p,
                    });
                }
                Ok(())
            }
        }
    };
}

/// Floating-point transform.
#[derive(Debug, Clone)]
pub struct ChangeOfBasis {
    p: usize,
    ordering: BasisOrdering,
    mat: Mat,
}

transform_impl!(ChangeOfBasis, f64, Mat);

impl ChangeOfBasis {
    pub fn new(p: usize, ordering: BasisOrdering, mat: Mat) -> Result<Self> {
        let rules = structure(p, ordering);
        let n = rules.len();
        assert_eq!((mat.nrows(), mat.ncols()), (n, n), "matrix size must match dim(p)");
        for i in 0..n {
            for j in 0..n {
                let v = mat[(i, j)];
                let bad = match rules[i][j] {
                    EntryRule::Zero => crate::math::abs(v) > FLOAT_STRUCTURE_TOL,
                    EntryRule::One => crate::math::abs(v - 1.0) > FLOAT_STRUCTURE_TOL,
                    EntryRule::Free => false,
                };
                if bad {
                    return Err(Error::Structure { row: i, col: j, value: v });
                }
            }
        }
        Ok(ChangeOfBasis { p, ordering, mat })
    }

    pub fn identity(p: usize, ordering: BasisOrdering) -> Self {
        let n = crate::dubiner::dim(p);
        ChangeOfBasis {
            p,
            ordering,
            mat: Mat::identity(n),
        }
    }

    /// Inverse by blocks: per-edge solves, an interior solve, and the vertex
    /// couplings propagated through them. Fails naming the offending block.
    pub fn block_inverse(&self) -> Result<Mat> {
        let lay = layout(self.p, self.ordering);
        let n = lay.n;
        let mut inv = Mat::zeros(n, n);
        for i in 0..3.min(n) {
            inv[(i, i)] = 1.0;
        }

        // edge diagonal blocks
        let mut edge_inv = Mat::zeros(n, n); // embedded E^-1, vertex/interior parts unused
        for edge in Edge::ALL {
            let cols = &lay.edge_cols[edge.index()];
            if cols.is_empty() {
                continue;
            }
            let k = cols.len();
            let sub = Mat::from_fn(k, k, |i, j| self.mat[(cols[i], cols[j])]);
            let sub_inv = sub.inverse().map_err(|_| Error::SingularBlock {
                block: block_name(Block::Edge(edge)),
            })?;
            for i in 0..k {
                for j in 0..k {
                    edge_inv[(cols[i], cols[j])] = sub_inv[(i, j)];
                }
            }
        }

        // interior block
        let ni = n - lay.interior_start;
        let q_inv = if ni > 0 {
            let q = Mat::from_fn(ni, ni, |i, j| {
                self.mat[(lay.interior_start + i, lay.interior_start + j)]
            });
            Some(q.inverse().map_err(|_| Error::SingularBlock {
                block: block_name(Block::Interior),
            })?)
        } else {
            None
        };

        let edge_positions: Vec<usize> = (3..lay.interior_start).collect();

        // edge rows of the inverse: E^-1 and -E^-1 E_i Q^-1
        for &i in &edge_positions {
            for &j in &edge_positions {
                inv[(i, j)] = edge_inv[(i, j)];
            }
        }
        if let Some(q_inv) = &q_inv {
            for &i in &edge_positions {
                for jq in 0..ni {
                    let mut acc = 0.0;
                    for &k in &edge_positions {
                        let eik = edge_inv[(i, k)];
                        if eik == 0.0 {
                            continue;
                        }
                        for lq in 0..ni {
                            acc += eik
                                * self.mat[(k, lay.interior_start + lq)]
                                * q_inv[(lq, jq)];
                        }
                    }
                    inv[(i, lay.interior_start + jq)] = -acc;
                }
            }
            for iq in 0..ni {
                for jq in 0..ni {
                    inv[(lay.interior_start + iq, lay.interior_start + jq)] = q_inv[(iq, jq)];
                }
            }
        }

        // vertex rows: -V_e E^-1, then the interior column through both paths
        for v in 0..3.min(n) {
            for &j in &edge_positions {
                let mut acc = 0.0;
                for &k in &edge_positions {
                    acc += self.mat[(v, k)] * edge_inv[(k, j)];
                }
                inv[(v, j)] = -acc;
            }
            if let Some(q_inv) = &q_inv {
                for jq in 0..ni {
                    let mut direct = 0.0;
                    for lq in 0..ni {
                        direct += self.mat[(v, lay.interior_start + lq)] * q_inv[(lq, jq)];
                    }
                    // edge rows already hold -E^-1 E_i Q^-1
                    let mut through_edges = 0.0;
                    for &k in &edge_positions {
                        through_edges += self.mat[(v, k)] * inv[(k, lay.interior_start + jq)];
                    }
                    inv[(v, lay.interior_start + jq)] = -direct - through_edges;
                }
            }
        }
        Ok(inv)
    }

    /// Values of the transformed basis at a point.
    pub fn eval_psi(&self, basis: &ReferenceBasis, pt: RefPoint) -> Result<Vec<f64>> {
        self.require_compatible(basis)?;
        let phi = basis.eval(pt)?;
        Ok(self.mat.matvec(&phi))
    }
}

/// Exact-rational transform.
#[derive(Debug, Clone)]
pub struct ExactChangeOfBasis {
    p: usize,
    ordering: BasisOrdering,
    mat: RatMat,
}

transform_impl!(ExactChangeOfBasis, Rat, RatMat);

impl ExactChangeOfBasis {
    pub fn new(p: usize, ordering: BasisOrdering, mat: RatMat) -> Result<Self> {
        let rules = structure(p, ordering);
        let n = rules.len();
        assert_eq!(mat.len(), n, "matrix size must match dim(p)");
        for (i, row) in mat.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (j, v) in row.iter().enumerate() {
                let bad = match rules[i][j] {
                    EntryRule::Zero => !v.is_zero(),
                    EntryRule::One => !v.is_one(),
                    EntryRule::Free => false,
                };
                if bad {
                    return Err(Error::Structure {
                        row: i,
                        col: j,
                        value: crate::exact::rat_to_f64(v),
                    });
                }
            }
        }
        Ok(ExactChangeOfBasis { p, ordering, mat })
    }

    pub fn identity(p: usize, ordering: BasisOrdering) -> Self {
        ExactChangeOfBasis {
            p,
            ordering,
            mat: crate::exact::rat_identity(crate::dubiner::dim(p)),
        }
    }

    pub fn block_inverse(&self) -> Result<RatMat> {
        let lay = layout(self.p, self.ordering);
        let n = lay.n;
        let mut inv = rat_zeros(n, n);
        for i in 0..3.min(n) {
            inv[i][i] = Rat::one();
        }

        let mut edge_inv = rat_zeros(n, n);
        for edge in Edge::ALL {
            let cols = &lay.edge_cols[edge.index()];
            if cols.is_empty() {
                continue;
            }
            let k = cols.len();
            let mut sub = rat_zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    sub[i][j] = self.mat[cols[i]][cols[j]].clone();
                }
            }
            let sub_inv =
                crate::exact::rat_inverse(&sub, "edge block").map_err(|_| Error::SingularBlock {
                    block: block_name(Block::Edge(edge)),
                })?;
            for i in 0..k {
                for j in 0..k {
                    edge_inv[cols[i]][cols[j]] = sub_inv[i][j].clone();
                }
            }
        }

        let ni = n - lay.interior_start;
        let q_inv = if ni > 0 {
            let mut q = rat_zeros(ni, ni);
            for i in 0..ni {
                for j in 0..ni {
                    q[i][j] = self.mat[lay.interior_start + i][lay.interior_start + j].clone();
                }
            }
            Some(
                crate::exact::rat_inverse(&q, "interior block").map_err(|_| {
                    Error::SingularBlock {
                        block: block_name(Block::Interior),
                    }
                })?,
            )
        } else {
            None
        };

        let edge_positions: Vec<usize> = (3..lay.interior_start).collect();

        for &i in &edge_positions {
            for &j in &edge_positions {
                inv[i][j] = edge_inv[i][j].clone();
            }
        }
        if let Some(q_inv) = &q_inv {
            for &i in &edge_positions {
                for jq in 0..ni {
                    let mut acc = Rat::zero();
                    for &k in &edge_positions {
                        if edge_inv[i][k].is_zero() {
                            continue;
                        }
                        for lq in 0..ni {
                            let term = &edge_inv[i][k]
                                * &self.mat[k][lay.interior_start + lq]
                                * &q_inv[lq][jq];
                            acc += term;
                        }
                    }
                    inv[i][lay.interior_start + jq] = -acc;
                }
            }
            for iq in 0..ni {
                for jq in 0..ni {
                    inv[lay.interior_start + iq][lay.interior_start + jq] =
                        q_inv[iq][jq].clone();
                }
            }
        }

        for v in 0..3.min(n) {
            for &j in &edge_positions {
                let mut acc = Rat::zero();
                for &k in &edge_positions {
                    if !self.mat[v][k].is_zero() && !edge_inv[k][j].is_zero() {
                        acc += &self.mat[v][k] * &edge_inv[k][j];
                    }
                }
                inv[v][j] = -acc;
            }
            if let Some(q_inv) = &q_inv {
                for jq in 0..ni {
                    let mut direct = Rat::zero();
                    for lq in 0..ni {
                        if !self.mat[v][lay.interior_start + lq].is_zero() {
                            direct +=
                                &self.mat[v][lay.interior_start + lq] * &q_inv[lq][jq];
                        }
                    }
                    let mut through_edges = Rat::zero();
                    for &k in &edge_positions {
                        if !self.mat[v][k].is_zero() {
                            through_edges +=
                                &self.mat[v][k] * &inv[k][lay.interior_start + jq];
                        }
                    }
                    inv[v][lay.interior_start + jq] = -direct - through_edges;
                }
            }
        }
        Ok(inv)
    }

    pub fn to_float(&self) -> ChangeOfBasis {
        let n = self.mat.len();
        ChangeOfBasis {
            p: self.p,
            ordering: self.ordering,
            mat: Mat::from_fn(n, n, |i, j| crate::exact::rat_to_f64(&self.mat[i][j])),
        }
    }
}
