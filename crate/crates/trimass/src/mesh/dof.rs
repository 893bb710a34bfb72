//! Global degree-of-freedom layout for cubic elements.
//!
//! Blocks in stage order: one dof per vertex, one per edge for the first
//! mode, one per edge for the second mode, one per triangle. Keeping each
//! stage contiguous makes the staged solve a straight sweep.

use super::Mesh;
use crate::dubiner::Edge;

#[derive(Debug, Clone, Copy)]
pub struct DofMap {
    nv: usize,
    ne: usize,
    nt: usize,
}

impl DofMap {
    pub fn new(mesh: &Mesh) -> DofMap {
        DofMap {
            nv: mesh.n_vertices(),
            ne: mesh.n_edges(),
            nt: mesh.n_triangles(),
        }
    }

    pub fn total(&self) -> usize {
        self.nv + 2 * self.ne + self.nt
    }

    pub fn vertex_dof(&self, v: usize) -> usize {
        debug_assert!(v < self.nv);
        v
    }

    pub fn edge_dof(&self, mode: usize, e: usize) -> usize {
        debug_assert!(mode == 1 || mode == 2);
        debug_assert!(e < self.ne);
        self.nv + (mode - 1) * self.ne + e
    }

    pub fn interior_dof(&self, t: usize) -> usize {
        debug_assert!(t < self.nt);
        self.nv + 2 * self.ne + t
    }

    /// Stage of a global dof: 0 vertices, 1 first modes, 2 second modes,
    /// 3 interiors.
    pub fn stage(&self, g: usize) -> usize {
        if g < self.nv {
            0
        } else if g < self.nv + self.ne {
            1
        } else if g < self.nv + 2 * self.ne {
            2
        } else {
            3
        }
    }

    pub fn stage_ranges(&self) -> [core::ops::Range<usize>; 4] {
        let (a, b, c) = (self.nv, self.nv + self.ne, self.nv + 2 * self.ne);
        [0..a, a..b, b..c, c..self.total()]
    }

    /// Global dof and orientation sign for local function `local` of element
    /// `elem`, in the mode-major local layout.
    pub fn locate(&self, mesh: &Mesh, elem: usize, local: usize) -> (usize, f64) {
        debug_assert!(local < 10);
        match local {
            0..=2 => (self.vertex_dof(mesh.triangle(elem)[local]), 1.0),
            3..=8 => {
                let mode = if local < 6 { 1 } else { 2 };
                let u = mesh.edge_use(elem, Edge::ALL[(local - 3) % 3]);
                (self.edge_dof(mode, u.edge), super::mode_sign(mode, u.forward))
            }
            _ => (self.interior_dof(elem), 1.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_is_contiguous_by_stage() {
        let mesh = Mesh::structured(2).unwrap();
        let dofs = DofMap::new(&mesh);
        assert_eq!(dofs.total(), 9 + 2 * 16 + 8);
        let ranges = dofs.stage_ranges();
        assert_eq!(ranges[0], 0..9);
        assert_eq!(ranges[3], 41..49);
        for (stage, range) in ranges.iter().enumerate() {
            for g in range.clone() {
                assert_eq!(dofs.stage(g), stage);
            }
        }
    }

    #[test]
    fn locate_covers_every_dof() {
        let mesh = Mesh::structured(2).unwrap();
        let dofs = DofMap::new(&mesh);
        let mut hit = alloc::vec![false; dofs.total()];
        for e in 0..mesh.n_triangles() {
            for local in 0..10 {
                let (g, sign) = dofs.locate(&mesh, e, local);
                assert!(sign == 1.0 || sign == -1.0);
                hit[g] = true;
            }
        }
        assert!(hit.iter().all(|&h| h));
    }
}
