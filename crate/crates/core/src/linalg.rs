//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};
use std::fmt;

use crate::rat::{self, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| rat::fmt(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat::int(x)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: &Rat) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self - c·I`.
    pub fn shift(&self, c: &Rat) -> Matrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - c;
            m.set(i, i, v);
        }
        m
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if v.is_zero() {
                        continue;
                    }
                    let nv = m.get(i, j) - &f * v;
                    m.set(i, j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// One solution of `self · x = b`, if any.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (m, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Restriction to a subspace with basis given by the columns of `basis`,
    /// assuming the subspace is invariant. Returns None if it is not.
    pub fn restrict(&self, basis: &[Vec<Rat>]) -> Option<Matrix> {
        let k = basis.len();
        if k == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let b = Matrix::from_rows(basis.to_vec()).transpose();
        let mut out = Matrix::zeros(k, k);
        for (j, v) in basis.iter().enumerate() {
            let image = self.mul_vec(v);
            let coords = b.solve(&image)?;
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Some(out)
    }
}

/// Kernel dimensions of (m − c)^k for k = 1.. until they stabilize.
pub fn kernel_profile(m: &Matrix, c: &Rat) -> Vec<usize> {
    let s = m.shift(c);
    let mut p = Matrix::identity(m.rows);
    let mut dims = Vec::new();
    loop {
        p = p.mul(&s);
        let d = p.nullity();
        if dims.last() == Some(&d) {
            break;
        }
        dims.push(d);
        if d == m.rows {
            break;
        }
        if dims.len() > m.rows + 1 {
            break;
        }
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[vec![2, -1], vec![-1, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.get(0, 0), &frac(2, 3));
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::from_i64(&[vec![1, 1], vec![1, 1]]);
        assert!(m.solve(&[int(1), int(2)]).is_none());
        assert_eq!(m.solve(&[int(3), int(3)]).unwrap(), vec![int(3), int(0)]);
    }

    #[test]
    fn jordan_profile() {
        let m = Matrix::from_i64(&[vec![5, 1], vec![0, 5]]);
        assert_eq!(kernel_profile(&m, &int(5)), vec![1, 2]);
        let d = Matrix::from_i64(&[vec![5, 0], vec![0, 5]]);
        assert_eq!(kernel_profile(&d, &int(5)), vec![2]);
    }
}
