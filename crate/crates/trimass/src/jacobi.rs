//! Jacobi polynomials and Gauss-Jacobi quadrature on [-1, 1].

use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

/// Weight exponents (1-z)^alpha (1+z)^beta. Both must exceed -1 for the
/// weight to be integrable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) {
            return Err(Error::JacobiParams { alpha, beta });
        }
        Ok(JacobiParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub const LEGENDRE: JacobiParams = JacobiParams { alpha: 0.0, beta: 0.0 };

    /// The (2, 2) pair used by every edge and bubble profile in this crate.
    pub const SYMMETRIC_TWO: JacobiParams = JacobiParams { alpha: 2.0, beta: 2.0 };
}

/// P_n^{alpha,beta}(z) by the three-term recurrence. Stable for the degree
/// range used anywhere in this crate (n well below 100).
pub fn jacobi_eval(params: JacobiParams, n: usize, z: f64) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    if n == 0 {
        return 1.0;
    }
    let mut pm1 = 1.0;
    let mut p = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
    for k in 2..=n {
        let kf = k as f64;
        let c0 = 2.0 * kf * (kf + a + b) * (2.0 * kf + a + b - 2.0);
        let c1 = (2.0 * kf + a + b - 1.0) * (a * a - b * b);
        let c2 = (2.0 * kf + a + b - 1.0) * (2.0 * kf + a + b) * (2.0 * kf + a + b - 2.0);
        let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + a + b);
        let next = ((c1 + c2 * z) * p - c3 * pm1) / c0;
        pm1 = p;
        p = next;
    }
    p
}

/// d/dz P_n^{alpha,beta}(z) through the parameter-shift identity.
pub fn jacobi_deriv(params: JacobiParams, n: usize, z: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let shifted = JacobiParams {
        alpha: params.alpha + 1.0,
        beta: params.beta + 1.0,
    };
    0.5 * (n as f64 + params.alpha + params.beta + 1.0) * jacobi_eval(shifted, n - 1, z)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule1D {
    /// Ascending, strictly inside (-1, 1).
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub params: JacobiParams,
    /// Highest polynomial degree integrated exactly against the weight.
    pub exactness: usize,
}

impl QuadratureRule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITERS: usize = 100;

/// Gauss-Jacobi rule with q nodes, ascending. Nodes are the roots of
/// P_q^{alpha,beta}, found by Newton from Chebyshev-spaced starts with
/// deflation against the roots already located.
pub fn gauss_jacobi_rule(q: usize, params: JacobiParams) -> Result<QuadratureRule1D> {
    if q == 0 {
        return Err(Error::EmptyRule);
    }
    let (a, b) = (params.alpha, params.beta);
    let mut nodes = Vec::with_capacity(q);
    for k in 0..q {
        let mut x = -math::cos(math::PI * (2.0 * k as f64 + 1.0) / (2.0 * q as f64));
        if k > 0 {
            // start between the previous root and the unweighted guess;
            // discovery order is not guaranteed, nodes are sorted below
            x = 0.5 * (x + nodes[k - 1]);
        }
        let mut converged = false;
        for _ in 0..NEWTON_MAX_ITERS {
            let p = jacobi_eval(params, q, x);
            let dp = jacobi_deriv(params, q, x);
            let defl: f64 = nodes.iter().map(|&r| 1.0 / (x - r)).sum();
            let denom = dp - p * defl;
            if denom == 0.0 {
                break;
            }
            let delta = -p / denom;
            x += delta;
            if math::abs(delta) < NEWTON_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NodeSearchFailed { index: k, order: q });
        }
        nodes.push(x);
    }
    nodes.sort_unstable_by(f64::total_cmp);

    let qf = q as f64;
    let ln_c = (a + b + 1.0) * core::f64::consts::LN_2 + math::ln_gamma(qf + a + 1.0)
        + math::ln_gamma(qf + b + 1.0)
        - math::ln_gamma(qf + 1.0)
        - math::ln_gamma(qf + a + b + 1.0);
    let c = math::exp(ln_c);
    let weights = nodes
        .iter()
        .map(|&x| {
            let dp = jacobi_deriv(params, q, x);
            c / ((1.0 - x * x) * dp * dp)
        })
        .collect();

    Ok(QuadratureRule1D {
        nodes,
        weights,
        params,
        exactness: 2 * q - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_values() {
        let p22 = JacobiParams::new(2.0, 2.0).unwrap();
        assert_eq!(jacobi_eval(p22, 0, 0.3), 1.0);
        assert!((jacobi_eval(p22, 1, 0.5) - 1.5).abs() < 1e-15);
        // value at the right endpoint is the binomial (n + alpha choose n)
        assert!((jacobi_eval(p22, 2, 1.0) - 6.0).abs() < 1e-13);
        let p10 = JacobiParams::new(1.0, 0.0).unwrap();
        assert!((jacobi_eval(p10, 1, 0.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn symmetric_params_have_parity() {
        let p22 = JacobiParams::new(2.0, 2.0).unwrap();
        for n in 0..7 {
            for &z in &[0.1, 0.37, 0.92] {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let lhs = jacobi_eval(p22, n, -z);
                let rhs = sign * jacobi_eval(p22, n, z);
                assert!((lhs - rhs).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let params = JacobiParams::new(2.0, 2.0).unwrap();
        let h = 1e-6;
        for n in 1..6 {
            for &z in &[-0.7, 0.0, 0.4] {
                let fd = (jacobi_eval(params, n, z + h) - jacobi_eval(params, n, z - h)) / (2.0 * h);
                assert!((jacobi_deriv(params, n, z) - fd).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn rejects_out_of_range_exponents() {
        assert!(JacobiParams::new(-1.0, 0.0).is_err());
        assert!(JacobiParams::new(0.0, -1.5).is_err());
        assert!(JacobiParams::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn one_point_legendre_is_midpoint_rule() {
        let rule = gauss_jacobi_rule(1, JacobiParams::LEGENDRE).unwrap();
        assert!(rule.nodes[0].abs() < 1e-15);
        assert!((rule.weights[0] - 2.0).abs() < 1e-14);
        assert_eq!(rule.exactness, 1);
    }

    #[test]
    fn two_point_legendre() {
        let rule = gauss_jacobi_rule(2, JacobiParams::LEGENDRE).unwrap();
        let x = 1.0 / 3.0_f64.sqrt();
        assert!((rule.nodes[0] + x).abs() < 1e-14);
        assert!((rule.nodes[1] - x).abs() < 1e-14);
        assert!((rule.weights[0] - 1.0).abs() < 1e-14);
        assert!((rule.weights[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn one_point_alpha_one_rule() {
        let rule = gauss_jacobi_rule(1, JacobiParams::new(1.0, 0.0).unwrap()).unwrap();
        assert!((rule.nodes[0] + 1.0 / 3.0).abs() < 1e-14);
        assert!((rule.weights[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_points_rejected() {
        assert!(matches!(
            gauss_jacobi_rule(0, JacobiParams::LEGENDRE),
            Err(Error::EmptyRule)
        ));
    }
}
