//! Dense complex matrices sized for small Hilbert spaces (coin blocks,
//! switch-extended coins, full walk operators on short lattices).
//!
//! Everything is hand-rolled: the matrices here stay tiny (dim <= ~1000 for
//! walk operators, <= 8 for density-matrix checks), and keeping the linear
//! algebra in-tree means the brute-force verification route shares no code
//! with any external solver.

use crate::{C64, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    // row-major: entries[row * dim + col]
    entries: Vec<C64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimMismatch {
                    a: dim,
                    b: row.len(),
                });
            }
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, *v);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.entries[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.entries[r * self.dim + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: C64) {
        self.entries[r * self.dim + c] += v;
    }

    pub fn mul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                a: self.dim,
                b: other.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a * other.entries[k * n + c];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                a: self.dim,
                b: other.dim,
            });
        }
        let mut out = self.clone();
        for (o, v) in out.entries.iter_mut().zip(other.entries.iter()) {
            *o += v;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                a: self.dim,
                b: other.dim,
            });
        }
        let mut out = self.clone();
        for (o, v) in out.entries.iter_mut().zip(other.entries.iter()) {
            *o -= v;
        }
        Ok(out)
    }

    pub fn scale(&self, w: C64) -> DenseOperator {
        let mut out = self.clone();
        for v in out.entries.iter_mut() {
            *v *= w;
        }
        out
    }

    pub fn adjoint(&self) -> DenseOperator {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, self.get(c, r).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product; index (i_self, i_other) maps to i_self * other.dim + i_other.
    pub fn kron(&self, other: &DenseOperator) -> DenseOperator {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for r1 in 0..n {
            for c1 in 0..n {
                let a = self.get(r1, c1);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for r2 in 0..m {
                    for c2 in 0..m {
                        out.set(r1 * m + r2, c1 * m + c2, a * other.get(r2, c2));
                    }
                }
            }
        }
        out
    }

    pub fn apply_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimMismatch {
                a: self.dim,
                b: v.len(),
            });
        }
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for r in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for c in 0..n {
                acc += self.entries[r * n + c] * v[c];
            }
            out[r] = acc;
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                a: self.dim,
                b: other.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Max-norm of U†U - I.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.adjoint().mul(self).expect("same dim");
        gram.max_abs_diff(&Self::identity(self.dim)).expect("same dim")
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() < tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim;
        for r in 0..n {
            for c in r..n {
                if (self.get(r, c) - self.get(c, r).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
///
/// Each rotation zeroes one off-diagonal pair through a phased Givens
/// rotation; sweeps repeat until the off-diagonal mass is negligible.
/// Intended for the small matrices used in validity checks (dim <= ~16).
pub fn hermitian_eigenvalues(m: &DenseOperator) -> Result<Vec<f64>> {
    if !m.is_hermitian(1e-9 * (1.0 + m.max_abs())) {
        return Err(Error::Domain(
            "hermitian_eigenvalues called on a non-Hermitian matrix".into(),
        ));
    }
    let n = m.dim();
    let mut a = m.clone();
    let scale = 1.0 + a.max_abs();
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.get(p, q).norm());
            }
        }
        if off < 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                // J = P R: P = diag(1, conj(phase)) makes the off-diagonal
                // real, then the real rotation R = [[c, s], [-s, c]] zeroes it.
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let mut j = DenseOperator::identity(n);
                j.set(p, p, C64::new(c, 0.0));
                j.set(p, q, C64::new(s, 0.0));
                j.set(q, p, phase.conj() * -s);
                j.set(q, q, phase.conj() * c);
                a = j.adjoint().mul(&a).expect("dim").mul(&j).expect("dim");
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eigs)
}

/// Eigenvalues of a Hermitian 2x2, ascending, by the closed form.
/// Independent of the Jacobi route so the two can cross-check each other.
pub fn hermitian_eigenvalues_2x2(m00: C64, m01: C64, m11: C64) -> [f64; 2] {
    let h = 0.5 * (m00.re + m11.re);
    let d = 0.5 * (m00.re - m11.re);
    let r = (d * d + m01.norm_sqr()).sqrt();
    [h - r, h + r]
}
