//! Conforming triangulations and the staged global projection for cubic
//! elements.
//!
//! Every triangle is stored counterclockwise with local corners (A, B, C)
//! mapped affinely from the reference element. Each mesh edge carries one
//! canonical direction; an element traversing an edge against that direction
//! flips the sign of its even edge modes, which is all the orientation
//! handling the basis needs. Boundary edges take the direction of their only
//! element, so a one-element mesh assembles to exactly the element matrices.

mod dof;
mod project;
mod sparse;

pub use dof::DofMap;
pub use project::{exact_mass_project, project, ProjectedField};
pub use sparse::{cg_solve, SparseMat};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::construct::ElementOperators;
use crate::dubiner::{Edge, RefPoint, ReferenceBasis, TriangleQuadrature};
use crate::{BasisOrdering, Error, Result};

/// Containment slack for barycentric point location.
pub const GEOM_TOL: f64 = 1e-10;
/// Two elements writing the same transform entry must agree this tightly.
const T_CONSISTENCY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// One mesh edge with its canonical direction a -> b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshEdge {
    pub a: usize,
    pub b: usize,
}

/// How one triangle uses one of its edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeUse {
    pub edge: usize,
    /// Whether the counterclockwise local traversal agrees with the
    /// canonical direction.
    pub forward: bool,
}

#[derive(Debug, Clone)]
pub struct Mesh {
    vertices: Vec<Point>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<MeshEdge>,
    tri_edges: Vec<[EdgeUse; 3]>,
    det_j: Vec<f64>,
}

fn cross(ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    ax * by - ay * bx
}

impl Mesh {
    pub fn new(vertices: Vec<(f64, f64)>, triangles: Vec<[usize; 3]>) -> Result<Mesh> {
        let vertices: Vec<Point> = vertices.into_iter().map(|(x, y)| Point { x, y }).collect();
        let nv = vertices.len();
        let mut det_j = Vec::with_capacity(triangles.len());
        for (t, tri) in triangles.iter().enumerate() {
            for &v in tri {
                if v >= nv {
                    return Err(Error::BadMesh {
                        detail: format!("triangle {t} references missing vertex {v}"),
                    });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(Error::BadMesh {
                    detail: format!("triangle {t} repeats a vertex"),
                });
            }
            let [a, b, c] = [vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]];
            let twice_area = cross(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y);
            if twice_area <= 0.0 {
                return Err(Error::BadMesh {
                    detail: format!("triangle {t} is degenerate or clockwise"),
                });
            }
            det_j.push(twice_area / 4.0);
        }

        // edge ids in first-seen order, directions per user recorded
        let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut directed: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut tri_edges = Vec::with_capacity(triangles.len());
        for tri in &triangles {
            let locals = [(tri[1], tri[2]), (tri[2], tri[0]), (tri[0], tri[1])];
            let mut uses = [EdgeUse {
                edge: usize::MAX,
                forward: true,
            }; 3];
            for (k, &(from, to)) in locals.iter().enumerate() {
                let key = (from.min(to), from.max(to));
                let id = *ids.entry(key).or_insert_with(|| {
                    directed.push(Vec::new());
                    directed.len() - 1
                });
                directed[id].push((from, to));
                uses[k].edge = id;
            }
            tri_edges.push(uses);
        }
        let mut edges = Vec::with_capacity(directed.len());
        for (id, users) in directed.iter().enumerate() {
            let (a, b) = match users.as_slice() {
                [only] => *only,
                [first, second] => {
                    if first.0 != second.1 || first.1 != second.0 {
                        return Err(Error::BadMesh {
                            detail: format!(
                                "edge ({}, {}) traversed twice in the same direction",
                                first.0, first.1
                            ),
                        });
                    }
                    (first.0.min(first.1), first.0.max(first.1))
                }
                _ => {
                    return Err(Error::BadMesh {
                        detail: format!("edge {id} is shared by more than two triangles"),
                    });
                }
            };
            edges.push(MeshEdge { a, b });
        }
        for (t, uses) in tri_edges.iter_mut().enumerate() {
            let tri = triangles[t];
            let locals = [(tri[1], tri[2]), (tri[2], tri[0]), (tri[0], tri[1])];
            for (k, u) in uses.iter_mut().enumerate() {
                u.forward = locals[k] == (edges[u.edge].a, edges[u.edge].b);
            }
        }

        Ok(Mesh {
            vertices,
            triangles,
            edges,
            tri_edges,
            det_j,
        })
    }

    /// Uniform n-by-n subdivision of the square [-1, 1]^2, each cell split
    /// along its lower-left to upper-right diagonal.
    pub fn structured(n: usize) -> Result<Mesh> {
        if n == 0 {
            return Err(Error::BadMesh {
                detail: alloc::string::String::from("structured mesh needs n >= 1"),
            });
        }
        let coord = |i: usize| -1.0 + 2.0 * i as f64 / n as f64;
        let id = |i: usize, j: usize| j * (n + 1) + i;
        let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
        for j in 0..=n {
            for i in 0..=n {
                vertices.push((coord(i), coord(j)));
            }
        }
        let mut triangles = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for i in 0..n {
                let v00 = id(i, j);
                let v10 = id(i + 1, j);
                let v11 = id(i + 1, j + 1);
                let v01 = id(i, j + 1);
                triangles.push([v00, v10, v11]);
                triangles.push([v00, v11, v01]);
            }
        }
        Mesh::new(vertices, triangles)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn triangle(&self, t: usize) -> [usize; 3] {
        self.triangles[t]
    }

    pub fn edge(&self, e: usize) -> MeshEdge {
        self.edges[e]
    }

    pub fn edge_use(&self, t: usize, local: Edge) -> EdgeUse {
        self.tri_edges[t][local.index()]
    }

    /// Jacobian determinant of the reference-to-physical map, half the
    /// triangle area, constant per element.
    pub fn det_j(&self, t: usize) -> f64 {
        self.det_j[t]
    }

    pub fn map_to_physical(&self, t: usize, pt: RefPoint) -> Point {
        let [la, lb, lc] = [
            0.5 * (1.0 + pt.s),
            -0.5 * (pt.r + pt.s),
            0.5 * (1.0 + pt.r),
        ];
        let tri = self.triangles[t];
        let (a, b, c) = (
            self.vertices[tri[0]],
            self.vertices[tri[1]],
            self.vertices[tri[2]],
        );
        Point {
            x: la * a.x + lb * b.x + lc * c.x,
            y: la * a.y + lb * b.y + lc * c.y,
        }
    }

    /// Barycentric coordinates of a physical point with respect to the local
    /// (A, B, C) corners of triangle t.
    pub fn barycentric(&self, t: usize, x: f64, y: f64) -> [f64; 3] {
        let tri = self.triangles[t];
        let (a, b, c) = (
            self.vertices[tri[0]],
            self.vertices[tri[1]],
            self.vertices[tri[2]],
        );
        let (ux, uy) = (b.x - a.x, b.y - a.y);
        let (vx, vy) = (c.x - a.x, c.y - a.y);
        let (px, py) = (x - a.x, y - a.y);
        let den = cross(ux, uy, vx, vy);
        let lb = cross(px, py, vx, vy) / den;
        let lc = cross(ux, uy, px, py) / den;
        [1.0 - lb - lc, lb, lc]
    }

    /// First element containing the point, with its reference coordinates.
    pub fn find_element(&self, x: f64, y: f64) -> Option<(usize, RefPoint)> {
        for t in 0..self.triangles.len() {
            let [la, _, lc] = self.barycentric(t, x, y);
            let lb = 1.0 - la - lc;
            if la >= -GEOM_TOL && lb >= -GEOM_TOL && lc >= -GEOM_TOL {
                let mut r = (2.0 * lc - 1.0).clamp(-1.0, 1.0);
                let s = (2.0 * la - 1.0).clamp(-1.0, 1.0);
                if r + s > 0.0 {
                    r = -s;
                }
                return Some((t, RefPoint::new(r, s)));
            }
        }
        None
    }
}

/// Sign carried by local basis function `local` of element `t` relative to
/// the global degree of freedom it maps to. Odd edge modes have even traces
/// in the arc parameter and never flip; even modes flip against the
/// canonical direction.
fn mode_sign(mode: usize, forward: bool) -> f64 {
    if forward || mode % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// The assembled global operators, both kept sparse.
#[derive(Debug, Clone)]
pub struct GlobalSystem {
    pub l: SparseMat,
    pub t: SparseMat,
    pub dofs: DofMap,
}

/// Scatter the element operators over the mesh. `L` accumulates; `T` is
/// written entrywise and every rewrite must reproduce the existing value,
/// which proves the orientation signs consistent across elements.
pub fn assemble(mesh: &Mesh, ops: &ElementOperators) -> Result<GlobalSystem> {
    let dofs = DofMap::new(mesh);
    let n = dofs.total();
    let mut l = SparseMat::zeros(n, n);
    let mut t = SparseMat::zeros(n, n);
    for e in 0..mesh.n_triangles() {
        let loc: Vec<(usize, f64)> = (0..10).map(|i| dofs.locate(mesh, e, i)).collect();
        let dj = mesh.det_j(e);
        for (i, &(gi, si)) in loc.iter().enumerate() {
            for (j, &(gj, sj)) in loc.iter().enumerate() {
                let lv = ops.l[(i, j)];
                if lv != 0.0 {
                    l.add(gi, gj, si * sj * dj * lv);
                }
                let tv = ops.t[(i, j)];
                if tv != 0.0 {
                    t.set_verified(gi, gj, si * sj * tv, T_CONSISTENCY_TOL)?;
                }
            }
        }
    }
    verify_staged(&l, &dofs)?;
    Ok(GlobalSystem { l, t, dofs })
}

/// Off-diagonal entries of the staged matrix may only reach strictly
/// earlier stages.
fn verify_staged(l: &SparseMat, dofs: &DofMap) -> Result<()> {
    for i in 0..l.nrows() {
        for (j, _) in l.row(i) {
            if j != i && dofs.stage(j) >= dofs.stage(i) {
                return Err(Error::StageStructure { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Moments of f against every global modal function.
pub fn assemble_load<F: Fn(f64, f64) -> f64>(
    mesh: &Mesh,
    dofs: &DofMap,
    rule: &TriangleQuadrature,
    f: F,
) -> Result<Vec<f64>> {
    let basis = ReferenceBasis::with_ordering(3, BasisOrdering::ModeMajor)?;
    let mut b = alloc::vec![0.0; dofs.total()];
    let values: Vec<Vec<f64>> = rule
        .points
        .iter()
        .map(|&pt| basis.eval(pt))
        .collect::<Result<_>>()?;
    for e in 0..mesh.n_triangles() {
        let loc: Vec<(usize, f64)> = (0..10).map(|i| dofs.locate(mesh, e, i)).collect();
        let dj = mesh.det_j(e);
        for (q, (&pt, &w)) in rule.points.iter().zip(&rule.weights).enumerate() {
            let p = mesh.map_to_physical(e, pt);
            let fw = dj * w * f(p.x, p.y);
            for (i, &(gi, si)) in loc.iter().enumerate() {
                b[gi] += fw * si * values[q][i];
            }
        }
    }
    Ok(b)
}

/// Solve L u = b by one pass over the four stages: vertices, first edge
/// modes, second edge modes, interiors. Verifies the staged sparsity as it
/// goes, so handing it a matrix with in-stage coupling is an error, not a
/// wrong answer.
pub fn staged_solve(l: &SparseMat, dofs: &DofMap, b: &[f64]) -> Result<Vec<f64>> {
    assert_eq!(b.len(), dofs.total());
    let mut u = alloc::vec![0.0; b.len()];
    for range in dofs.stage_ranges() {
        for i in range {
            let mut acc = b[i];
            let mut diag = 0.0;
            for (j, v) in l.row(i) {
                if j == i {
                    diag = v;
                } else if dofs.stage(j) >= dofs.stage(i) {
                    return Err(Error::StageStructure { row: i, col: j });
                } else {
                    acc -= v * u[j];
                }
            }
            if diag == 0.0 {
                return Err(Error::SingularSystem {
                    context: format!("staged solve, empty diagonal at row {i}"),
                });
            }
            u[i] = acc / diag;
        }
    }
    Ok(u)
}
