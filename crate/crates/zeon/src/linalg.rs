//! Small dense complex matrices: determinants and a Hermitian Jacobi solver.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::{Result, ZeonError, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Square matrix from row-major real entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), n * n);
        Self::from_fn(n, n, |i, j| C64::new(entries[i * n + j], 0.0))
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(ZeonError::Range("ragged matrix rows".into()));
        }
        Ok(CMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row count; meaningful for square matrices.
    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(ZeonError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> CMatrix {
        CMatrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: C64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * c).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }

    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &CMatrix) -> CMatrix {
        &(self * other) + &(other * self)
    }

    /// Kronecker product, `self` acting on the slower index.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        CMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> C64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = C64::new(1.0, 0.0);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| a[x * n + k].norm().total_cmp(&a[y * n + k].norm()))
                .unwrap();
            if a[p * n + k] == ZERO {
                return ZERO;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k];
            det *= pivot;
            for i in k + 1..n {
                let f = a[i * n + k] / pivot;
                if f != ZERO {
                    for j in k + 1..n {
                        let akj = a[k * n + j];
                        a[i * n + j] -= f * akj;
                    }
                }
            }
        }
        det
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.
    /// Eigenvalues come back ascending; eigenvectors are the columns of
    /// the returned unitary, in the same order.
    pub fn eigh(&self) -> Result<(Vec<f64>, CMatrix)> {
        let n = self.require_square()?;
        let scale = self.max_abs().max(1.0);
        if !self.is_hermitian(1e-9 * scale) {
            return Err(ZeonError::NotHermitian);
        }
        let mut a = self.clone();
        let mut v = CMatrix::identity(n);
        let target = 1e-12 * scale;
        const MAX_SWEEPS: usize = 64;
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if a.off_diagonal_norm() < target {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    a.jacobi_rotate(&mut v, p, q);
                }
            }
        }
        if !converged && a.off_diagonal_norm() >= target {
            return Err(ZeonError::NoConvergence(MAX_SWEEPS));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
        let values = order.iter().map(|&k| a[(k, k)].re).collect();
        let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
        Ok((values, vectors))
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    // One two-sided rotation zeroing a[p][q]. The phase of a[p][q] is moved
    // onto column q first, which reduces the step to the real symmetric case.
    fn jacobi_rotate(&mut self, v: &mut CMatrix, p: usize, q: usize) {
        let apq = self[(p, q)];
        let g = apq.norm();
        if g == 0.0 {
            return;
        }
        let phase = apq / g;
        let app = self[(p, p)].re;
        let aqq = self[(q, q)].re;
        let theta = (aqq - app) / (2.0 * g);
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let t = if theta == 0.0 { 1.0 } else { t };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        // J = D R with D = diag(1, conj(phase)) on (p, q)
        let jpp = C64::new(c, 0.0);
        let jpq = C64::new(s, 0.0);
        let jqp = -phase.conj() * s;
        let jqq = phase.conj() * c;
        let n = self.rows;
        for k in 0..n {
            let akp = self[(k, p)];
            let akq = self[(k, q)];
            self[(k, p)] = akp * jpp + akq * jqp;
            self[(k, q)] = akp * jpq + akq * jqq;
        }
        for k in 0..n {
            let apk = self[(p, k)];
            let aqk = self[(q, k)];
            self[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
            self[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
        }
        self[(p, q)] = ZERO;
        self[(q, p)] = ZERO;
        self[(p, p)] = C64::new(self[(p, p)].re, 0.0);
        self[(q, q)] = C64::new(self[(q, q)].re, 0.0);
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * jpp + vkq * jqp;
            v[(k, q)] = vkp * jpq + vkq * jqq;
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in +");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in -");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        &self * &rhs
    }
}

impl Add for CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: CMatrix) -> CMatrix {
        &self + &rhs
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: CMatrix) -> CMatrix {
        &self - &rhs
    }
}
