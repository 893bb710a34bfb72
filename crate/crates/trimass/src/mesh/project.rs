//! Projection onto the global cubic space: the staged route through the
//! transformed basis, and a dense mass-matrix baseline for comparisons.

use alloc::vec::Vec;

use super::{assemble, assemble_load, cg_solve, staged_solve, DofMap, Mesh, SparseMat};
use crate::construct::ElementOperators;
use crate::dubiner::{triangle_rule, RefPoint, ReferenceBasis, TriangleQuadrature};
use crate::exact::{mass_matrix_exact, rat_to_f64};
use crate::{BasisOrdering, Error, Result};

/// A function in the global cubic space, stored by modal coefficients.
#[derive(Debug, Clone)]
pub struct ProjectedField {
    mesh: Mesh,
    dofs: DofMap,
    basis: ReferenceBasis,
    coeffs: Vec<f64>,
}

impl ProjectedField {
    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn dofs(&self) -> &DofMap {
        &self.dofs
    }

    /// Global modal coefficients, one per degree of freedom.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval_in_element(&self, elem: usize, pt: RefPoint) -> Result<f64> {
        let vals = self.basis.eval(pt)?;
        let mut acc = 0.0;
        for (i, v) in vals.iter().enumerate() {
            let (g, sign) = self.dofs.locate(&self.mesh, elem, i);
            acc += sign * self.coeffs[g] * v;
        }
        Ok(acc)
    }

    /// Evaluate at a physical point by locating the element containing it.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        let (elem, pt) = self
            .mesh
            .find_element(x, y)
            .ok_or(Error::PointNotFound { x, y })?;
        self.eval_in_element(elem, pt)
    }

    /// L2 distance to `f`, by per-element quadrature.
    pub fn l2_error<F: Fn(f64, f64) -> f64>(
        &self,
        f: F,
        rule: &TriangleQuadrature,
    ) -> Result<f64> {
        let values: Vec<Vec<f64>> = rule
            .points
            .iter()
            .map(|&pt| self.basis.eval(pt))
            .collect::<Result<_>>()?;
        let mut acc = 0.0;
        for e in 0..self.mesh.n_triangles() {
            let loc: Vec<f64> = (0..10)
                .map(|i| {
                    let (g, sign) = self.dofs.locate(&self.mesh, e, i);
                    sign * self.coeffs[g]
                })
                .collect();
            let dj = self.mesh.det_j(e);
            for (q, (&pt, &w)) in rule.points.iter().zip(&rule.weights).enumerate() {
                let u: f64 = loc.iter().zip(&values[q]).map(|(c, v)| c * v).sum();
                let p = self.mesh.map_to_physical(e, pt);
                let d = u - f(p.x, p.y);
                acc += dj * w * d * d;
            }
        }
        Ok(crate::math::sqrt(acc.max(0.0)))
    }
}

/// The staged projection: assemble, form transformed moments, sweep the
/// four stages, and map the coefficients back to the modal basis.
pub fn project<F: Fn(f64, f64) -> f64>(
    mesh: &Mesh,
    ops: &ElementOperators,
    f: F,
    quad_order: usize,
) -> Result<ProjectedField> {
    let sys = assemble(mesh, ops)?;
    let rule = triangle_rule(quad_order)?;
    let b_modal = assemble_load(mesh, &sys.dofs, &rule, f)?;
    let b_transformed = sys.t.matvec(&b_modal);
    let u_transformed = staged_solve(&sys.l, &sys.dofs, &b_transformed)?;
    let coeffs = sys.t.transpose_matvec(&u_transformed);
    Ok(ProjectedField {
        mesh: mesh.clone(),
        dofs: sys.dofs,
        basis: ReferenceBasis::with_ordering(3, BasisOrdering::ModeMajor)?,
        coeffs,
    })
}

/// The true L2 projection: assemble the full modal mass matrix and solve it
/// with conjugate gradients. Slower and dense in coupling, kept as the
/// reference the staged route is measured against.
pub fn exact_mass_project<F: Fn(f64, f64) -> f64>(
    mesh: &Mesh,
    f: F,
    quad_order: usize,
) -> Result<ProjectedField> {
    let dofs = DofMap::new(mesh);
    let n = dofs.total();
    let m_exact = mass_matrix_exact(3, BasisOrdering::ModeMajor);
    let mut mass = SparseMat::zeros(n, n);
    for e in 0..mesh.n_triangles() {
        let loc: Vec<(usize, f64)> = (0..10).map(|i| dofs.locate(mesh, e, i)).collect();
        let dj = mesh.det_j(e);
        for (i, &(gi, si)) in loc.iter().enumerate() {
            for (j, &(gj, sj)) in loc.iter().enumerate() {
                let v = rat_to_f64(&m_exact[i][j]);
                if v != 0.0 {
                    mass.add(gi, gj, si * sj * dj * v);
                }
            }
        }
    }
    let rule = triangle_rule(quad_order)?;
    let b = assemble_load(mesh, &dofs, &rule, f)?;
    let coeffs = cg_solve(&mass, &b, 1e-14, "global mass solve")?;
    Ok(ProjectedField {
        mesh: mesh.clone(),
        dofs,
        basis: ReferenceBasis::with_ordering(3, BasisOrdering::ModeMajor)?,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct_float;

    fn ops() -> ElementOperators {
        construct_float(1.0).unwrap()
    }

    #[test]
    fn constants_are_reproduced() {
        let mesh = Mesh::structured(2).unwrap();
        let field = project(&mesh, &ops(), |_, _| 1.0, 5).unwrap();
        for &(x, y) in &[(0.0, 0.0), (-0.7, 0.3), (0.99, -0.99), (-1.0, 1.0)] {
            assert!((field.eval(x, y).unwrap() - 1.0).abs() < 1e-12);
        }
        let rule = triangle_rule(5).unwrap();
        assert!(field.l2_error(|_, _| 1.0, &rule).unwrap() < 1e-12);
    }

    #[test]
    fn quadratics_are_reproduced() {
        let f = |x: f64, y: f64| 0.25 + x - 2.0 * y + x * x - 0.5 * x * y + y * y;
        for n in [1, 2] {
            let mesh = Mesh::structured(n).unwrap();
            let field = project(&mesh, &ops(), f, 5).unwrap();
            let rule = triangle_rule(6).unwrap();
            assert!(field.l2_error(f, &rule).unwrap() < 1e-11, "n = {n}");
        }
    }

    #[test]
    fn staged_solution_matches_dense_solve() {
        let mesh = Mesh::structured(2).unwrap();
        let sys = assemble(&mesh, &ops()).unwrap();
        let rule = triangle_rule(6).unwrap();
        let f = |x: f64, y: f64| crate::math::cos(x + 0.3) * crate::math::cos(1.7 * y - 0.4);
        let b = sys.t.matvec(&assemble_load(&mesh, &sys.dofs, &rule, f).unwrap());
        let staged = staged_solve(&sys.l, &sys.dofs, &b).unwrap();
        let dense = sys.l.to_dense().solve(&b).unwrap();
        for (a, b) in staged.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn point_and_element_evaluations_agree() {
        let mesh = Mesh::structured(3).unwrap();
        let f = |x: f64, y: f64| x * y + 0.5 * y;
        let field = project(&mesh, &ops(), f, 5).unwrap();
        let pt = RefPoint::new(-0.25, -0.5);
        for e in [0, 7, 12] {
            let p = mesh.map_to_physical(e, pt);
            let direct = field.eval_in_element(e, pt).unwrap();
            let located = field.eval(p.x, p.y).unwrap();
            assert!((direct - located).abs() < 1e-12);
        }
        assert!(matches!(
            field.eval(3.0, 3.0),
            Err(Error::PointNotFound { .. })
        ));
    }

    #[test]
    fn cubics_separate_the_two_routes() {
        let f = |x: f64, _: f64| x * x * x;
        let mesh = Mesh::structured(1).unwrap();
        let rule = triangle_rule(7).unwrap();
        let staged = project(&mesh, &ops(), f, 6).unwrap();
        let mass = exact_mass_project(&mesh, f, 6).unwrap();
        let staged_err = staged.l2_error(f, &rule).unwrap();
        let mass_err = mass.l2_error(f, &rule).unwrap();
        // the staged route matches moments only up to degree two; the mass
        // route captures the whole cubic space
        assert!(mass_err < 1e-10, "mass route error {mass_err}");
        assert!(staged_err > 1e-6, "staged route error {staged_err}");
    }
}
