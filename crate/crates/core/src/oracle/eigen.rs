//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
//!
//! Each rotation only mixes rows/columns `p` and `q`, so exact zeros outside
//! a block stay exactly zero and block-diagonal inputs never leak across
//! blocks, even with degenerate eigenvalues in different blocks.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::math::sqrt;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    dim: usize,
    values: Vec<f64>,
    /// Column `j` stored contiguously at `[j*dim .. (j+1)*dim]`.
    vectors: Vec<Complex64>,
}

impl HermitianEigen {
    /// Diagonalizes the row-major `dim × dim` matrix. Only the Hermitian part
    /// is meaningful; the caller guarantees `a = a†`.
    pub fn compute(matrix: &[Complex64], dim: usize) -> Self {
        assert_eq!(matrix.len(), dim * dim, "matrix is not dim × dim");
        let mut a = matrix.to_vec();
        let mut v = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            v[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        let at = |i: usize, j: usize| i * dim + j;

        let frob2: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        for sweep in 0..MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..dim {
                for q in p + 1..dim {
                    off += a[at(p, q)].norm_sqr();
                }
            }
            if off == 0.0 || off <= 1e-32 * frob2 {
                break;
            }
            for p in 0..dim {
                for q in p + 1..dim {
                    let apq = a[at(p, q)];
                    let h = apq.norm();
                    if h == 0.0 {
                        continue;
                    }
                    let app = a[at(p, p)].re;
                    let aqq = a[at(q, q)].re;
                    if sweep > 3
                        && app.abs() + 100.0 * h == app.abs()
                        && aqq.abs() + 100.0 * h == aqq.abs()
                    {
                        a[at(p, q)] = Complex64::new(0.0, 0.0);
                        a[at(q, p)] = Complex64::new(0.0, 0.0);
                        continue;
                    }
                    // phase-strip a_pq, then a real Jacobi rotation
                    let phase = apq / h;
                    let theta = (aqq - app) / (2.0 * h);
                    let t = if theta.abs() > 1e150 {
                        0.5 / theta
                    } else {
                        let t = 1.0 / (theta.abs() + sqrt(theta * theta + 1.0));
                        if theta < 0.0 {
                            -t
                        } else {
                            t
                        }
                    };
                    let c = 1.0 / sqrt(t * t + 1.0);
                    let s = t * c;
                    let rpp = Complex64::new(c, 0.0);
                    let rpq = Complex64::new(s, 0.0);
                    let rqp = phase.conj() * (-s);
                    let rqq = phase.conj() * c;

                    for r in 0..dim {
                        let x = a[at(r, p)];
                        let y = a[at(r, q)];
                        a[at(r, p)] = x * rpp + y * rqp;
                        a[at(r, q)] = x * rpq + y * rqq;
                    }
                    for r in 0..dim {
                        let x = a[at(p, r)];
                        let y = a[at(q, r)];
                        a[at(p, r)] = rpp.conj() * x + rqp.conj() * y;
                        a[at(q, r)] = rpq.conj() * x + rqq.conj() * y;
                    }
                    a[at(p, q)] = Complex64::new(0.0, 0.0);
                    a[at(q, p)] = Complex64::new(0.0, 0.0);
                    a[at(p, p)].im = 0.0;
                    a[at(q, q)].im = 0.0;

                    for r in 0..dim {
                        let x = v[p * dim + r];
                        let y = v[q * dim + r];
                        v[p * dim + r] = x * rpp + y * rqp;
                        v[q * dim + r] = x * rpq + y * rqq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&i, &j| a[at(i, i)].re.total_cmp(&a[at(j, j)].re));
        let values = order.iter().map(|&i| a[at(i, i)].re).collect();
        let mut vectors = Vec::with_capacity(dim * dim);
        for &i in &order {
            vectors.extend_from_slice(&v[i * dim..(i + 1) * dim]);
        }
        Self {
            dim,
            values,
            vectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vector(&self, j: usize) -> &[Complex64] {
        &self.vectors[j * self.dim..(j + 1) * self.dim]
    }
}
