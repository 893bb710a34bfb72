//! Tensor quadrature on the reference triangle.
//!
//! A Gauss-Legendre rule in xi and a Gauss-Jacobi (1, 0) rule in eta; the
//! (1 - eta) weight of the eta rule is exactly the Jacobian of the collapse
//! map, so the product rule integrates polynomials on the triangle without
//! ever evaluating near the singular apex.

use alloc::vec::Vec;

use super::RefPoint;
use crate::jacobi::{gauss_jacobi_rule, JacobiParams};
use crate::Result;

#[derive(Debug, Clone)]
pub struct TriangleQuadrature {
    pub points: Vec<RefPoint>,
    pub weights: Vec<f64>,
    /// Total polynomial degree integrated exactly.
    pub exactness: usize,
}

impl TriangleQuadrature {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (RefPoint, f64)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, mut f: impl FnMut(RefPoint) -> f64) -> f64 {
        self.iter().map(|(pt, w)| w * f(pt)).sum()
    }
}

/// q-by-q point rule, exact through total degree 2q - 1.
pub fn triangle_rule(q: usize) -> Result<TriangleQuadrature> {
    let xi_rule = gauss_jacobi_rule(q, JacobiParams::LEGENDRE)?;
    let eta_rule = gauss_jacobi_rule(q, JacobiParams::new(1.0, 0.0).unwrap())?;
    let mut points = Vec::with_capacity(q * q);
    let mut weights = Vec::with_capacity(q * q);
    for (&eta, &weta) in eta_rule.nodes.iter().zip(&eta_rule.weights) {
        for (&xi, &wxi) in xi_rule.nodes.iter().zip(&xi_rule.weights) {
            let r = 0.5 * (1.0 + xi) * (1.0 - eta) - 1.0;
            points.push(RefPoint::new(r, eta));
            weights.push(0.5 * wxi * weta);
        }
    }
    Ok(TriangleQuadrature {
        points,
        weights,
        exactness: 2 * q - 1,
    })
}
