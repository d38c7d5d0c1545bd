//! Sparse symmetric linear algebra sized for desk-scale graph problems:
//! graph Laplacians, a Jacobi-preconditioned conjugate-gradient solver,
//! and a dense orthogonal-projection oracle used to validate currents on
//! small instances.
//!
//! Dot products and matrix-vector products accumulate strictly left to
//! right so results are bit-reproducible for fixed inputs.

use crate::error::{Error, Result};
use crate::graphs::GraphSlice;

/// Symmetric matrix in compressed sparse row form. Constructors enforce
/// symmetry structurally by mirroring every off-diagonal entry.
#[derive(Clone, Debug)]
pub struct SparseSymmetric {
    pub dimension: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    values: Vec<f64>,
}

impl SparseSymmetric {
    /// Build from upper-triangle triplets `(i, j, v)` with `i <= j`;
    /// duplicates are summed, and `i < j` entries are mirrored.
    pub fn from_upper_triplets(
        dimension: usize,
        triplets: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut full: Vec<(u32, u32, f64)> = Vec::new();
        for (i, j, v) in triplets {
            if i > j || j >= dimension {
                return Err(Error::invalid(format!(
                    "triplet ({i}, {j}) outside the upper triangle of a {dimension}-dim matrix"
                )));
            }
            full.push((i as u32, j as u32, v));
            if i != j {
                full.push((j as u32, i as u32, v));
            }
        }
        full.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(u32, u32, f64)> = Vec::with_capacity(full.len());
        for (i, j, v) in full {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += v,
                _ => merged.push((i, j, v)),
            }
        }
        let mut row_ptr = vec![0usize; dimension + 1];
        for &(i, _, _) in &merged {
            row_ptr[i as usize + 1] += 1;
        }
        for r in 0..dimension {
            row_ptr[r + 1] += row_ptr[r];
        }
        let col_idx = merged.iter().map(|&(_, j, _)| j).collect();
        let values = merged.iter().map(|&(_, _, v)| v).collect();
        Ok(SparseSymmetric {
            dimension,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn mul_vec(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dimension);
        for i in 0..self.dimension {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.values[k] * x[self.col_idx[k] as usize];
            }
            out[i] = acc;
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let mut diag = vec![0.0; self.dimension];
        for i in 0..self.dimension {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                if self.col_idx[k] as usize == i {
                    diag[i] += self.values[k];
                }
            }
        }
        diag
    }

    pub fn row_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.dimension];
        for i in 0..self.dimension {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                sums[i] += self.values[k];
            }
        }
        sums
    }

    /// Copy with row and column `k` removed (grounding a Laplacian).
    pub fn delete_row_col(&self, k: usize) -> SparseSymmetric {
        let map = |j: usize| if j > k { j - 1 } else { j };
        let mut triplets = Vec::with_capacity(self.nnz());
        for i in 0..self.dimension {
            if i == k {
                continue;
            }
            for idx in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.col_idx[idx] as usize;
                if j == k || j < i {
                    continue;
                }
                triplets.push((map(i), map(j), self.values[idx]));
            }
        }
        SparseSymmetric::from_upper_triplets(self.dimension - 1, triplets)
            .expect("deletion preserves well-formedness")
    }
}

/// Graph Laplacian `L = D - A` with unit conductance per edge. Parallel
/// edges contribute multiply, self-loops contribute nothing.
pub fn laplacian(slice: &GraphSlice) -> SparseSymmetric {
    let mut triplets: Vec<(usize, usize, f64)> = Vec::with_capacity(2 * slice.edge_count());
    for &(t, h) in &slice.edges {
        if t == h {
            continue;
        }
        let (a, b) = if t < h { (t, h) } else { (h, t) };
        triplets.push((t as usize, t as usize, 1.0));
        triplets.push((h as usize, h as usize, 1.0));
        triplets.push((a as usize, b as usize, -1.0));
    }
    SparseSymmetric::from_upper_triplets(slice.vertex_count, triplets)
        .expect("laplacian triplets are well-formed")
}

/// Outcome of an iterative solve. `converged` means the final residual
/// satisfies `||Ax - b|| <= tolerance * ||b||`.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solution: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..a.len() {
        acc += a[i] * b[i];
    }
    acc
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Default iteration cap used by callers that do not pick their own.
pub fn default_max_iterations(dimension: usize) -> usize {
    20 * (dimension as f64).sqrt().ceil() as usize + 200
}

pub const DEFAULT_CG_TOLERANCE: f64 = 1e-10;

/// Conjugate gradient with Jacobi (diagonal) preconditioning for
/// symmetric positive (semi)definite systems. Deterministic given inputs.
pub fn cg_solve(
    a: &SparseSymmetric,
    b: &[f64],
    tolerance: f64,
    max_iterations: usize,
) -> SolveReport {
    let n = a.dimension;
    debug_assert_eq!(b.len(), n);
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return SolveReport {
            solution: vec![0.0; n],
            residual_norm: 0.0,
            iterations: 0,
            converged: true,
        };
    }
    let inv_diag: Vec<f64> = a
        .diagonal()
        .iter()
        .map(|&d| if d > 0.0 { 1.0 / d } else { 1.0 })
        .collect();
    let target = tolerance * b_norm;
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(ri, di)| ri * di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    let mut residual = b_norm;
    let mut iterations = 0;
    while residual > target && iterations < max_iterations {
        a.mul_vec(&p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            break; // not positive definite along p; bail with the report
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
        residual = norm(&r);
        iterations += 1;
    }
    SolveReport {
        converged: residual <= target,
        solution: x,
        residual_norm: residual,
        iterations,
    }
}

/// Orthogonal projection of `target` onto the span of `vectors`, by
/// modified Gram-Schmidt with one re-orthogonalization pass. Intended as
/// a dense oracle for small systems (a few thousand coordinates).
pub fn dense_project(vectors: &[Vec<f64>], target: &[f64]) -> Result<Vec<f64>> {
    let dim = target.len();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::invalid(format!(
                "projection span vector of length {} does not match target length {dim}",
                v.len()
            )));
        }
    }
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                for i in 0..dim {
                    w[i] -= c * q[i];
                }
            }
        }
        let len = norm(&w);
        let scale = norm(v).max(1.0);
        if len > 1e-12 * scale {
            for wi in &mut w {
                *wi /= len;
            }
            basis.push(w);
        }
    }
    let mut proj = vec![0.0; dim];
    for q in &basis {
        let c = dot(target, q);
        for i in 0..dim {
            proj[i] += c * q[i];
        }
    }
    Ok(proj)
}
