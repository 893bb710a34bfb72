//! Row-sparse matrix with deterministic iteration, sized for the global
//! operators here, not for generality.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::linalg::Mat;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SparseMat {
    rows: Vec<BTreeMap<usize, f64>>,
    cols: usize,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> SparseMat {
        SparseMat {
            rows: alloc::vec![BTreeMap::new(); rows],
            cols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.nrows() && j < self.cols);
        if v != 0.0 {
            *self.rows[i].entry(j).or_insert(0.0) += v;
        }
    }

    /// Insert-or-verify: a second write to the same entry must agree with
    /// the first within `tol`.
    pub fn set_verified(&mut self, i: usize, j: usize, v: f64, tol: f64) -> Result<()> {
        debug_assert!(i < self.nrows() && j < self.cols);
        match self.rows[i].get(&j) {
            Some(&old) if crate::math::abs(old - v) > tol => Err(Error::AssemblyConflict {
                row: i,
                col: j,
                old,
                new: v,
            }),
            Some(_) => Ok(()),
            None => {
                self.rows[i].insert(j, v);
                Ok(())
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i].get(&j).copied().unwrap_or(0.0)
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.rows[i].iter().map(|(&j, &v)| (j, v))
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        self.rows
            .iter()
            .map(|row| row.iter().map(|(&j, &v)| v * x[j]).sum())
            .collect()
    }

    pub fn transpose_matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.nrows());
        let mut out = alloc::vec![0.0; self.cols];
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, &v) in row {
                out[j] += v * x[i];
            }
        }
        out
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.nrows(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, &v) in row {
                m[(i, j)] = v;
            }
        }
        m
    }
}

/// Conjugate gradients for a symmetric positive definite sparse matrix.
/// Stops at relative residual `rel_tol`, errs out if the iteration cap is
/// reached first.
pub fn cg_solve(a: &SparseMat, b: &[f64], rel_tol: f64, context: &str) -> Result<Vec<f64>> {
    let n = b.len();
    assert_eq!(a.nrows(), n);
    let norm_b = crate::math::sqrt(b.iter().map(|v| v * v).sum::<f64>());
    let mut x = alloc::vec![0.0; n];
    if norm_b == 0.0 {
        return Ok(x);
    }
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut rr: f64 = r.iter().map(|v| v * v).sum();
    let max_iters = 40 * n.max(10);
    for _ in 0..max_iters {
        if crate::math::sqrt(rr) <= rel_tol * norm_b {
            return Ok(x);
        }
        let ap = a.matvec(&p);
        let pap: f64 = p.iter().zip(&ap).map(|(pi, api)| pi * api).sum();
        if pap <= 0.0 {
            return Err(Error::NoConvergence {
                context: format!("{context}: lost positive definiteness"),
            });
        }
        let alpha = rr / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rr_next: f64 = r.iter().map(|v| v * v).sum();
        let beta = rr_next / rr;
        rr = rr_next;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    if crate::math::sqrt(rr) <= rel_tol * norm_b {
        Ok(x)
    } else {
        Err(Error::NoConvergence {
            context: format!("{context}: residual stalled above tolerance"),
        })
    }
}
