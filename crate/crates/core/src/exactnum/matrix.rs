use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, Polynomial, Ring};

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    /// Returns `None` when the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Matrix::from_vec(r, c, rows.into_iter().flatten().collect()))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_vec(rows, cols, vec![R::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn scalar(n: usize, c: R) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { R::zero() })
    }

    pub fn diag(entries: &[R]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { R::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[R]>::to_vec).collect()
    }

    pub fn row(&self, i: usize) -> Matrix<R> {
        Matrix::from_fn(1, self.cols, |_, j| self[(i, j)].clone())
    }

    pub fn col(&self, j: usize) -> Matrix<R> {
        Matrix::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    /// Lift entries into a larger ring.
    pub fn lift<S: Ring + From<R>>(&self) -> Matrix<S> {
        self.map(|x| S::from(x.clone()))
    }

    /// Evaluate a polynomial with coefficients in `R` at this matrix.
    pub fn poly_eval(&self, p: &Polynomial<R>) -> Self {
        let mut acc = Matrix::zeros(self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Matrix::scalar(self.rows, c.clone());
        }
        acc
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() / piv.clone();
                for j in c..n {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] != n - 1) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// Some solution of `self · x = rhs`, if any.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let (r, pivots) = self.hstack(rhs).rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(c, j)] = r[(row, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// Basis of the right kernel, as columns.
    pub fn nullspace(&self) -> Vec<Self> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Matrix::zeros(self.cols, 1);
                v[(f, 0)] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[(pc, 0)] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// `det(zI − M)` by the Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> Polynomial<F> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Matrix::zeros(n, n);
        let id = Matrix::identity(n);
        for k in 1..=n {
            let prev = coeffs[n - k + 1].clone();
            m = &(self * &m) + &id.scale(&prev);
            let am = self * &m;
            coeffs[n - k] = -am.trace() / F::from_int(k as i64);
        }
        Polynomial::new(coeffs)
    }

    pub fn is_regss(&self) -> bool {
        self.charpoly().is_squarefree()
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, R: Ring> Add<&'a Matrix<R>> for &'a Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<'a, R: Ring> Sub<&'a Matrix<R>> for &'a Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<'a, R: Ring> Mul<&'a Matrix<R>> for &'a Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out: Matrix<R> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * rhs.data[k * rhs.cols + j].clone();
                }
            }
        }
        out
    }
}

impl<'a, R: Ring> Neg for &'a Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        self.map(|x| -x.clone())
    }
}

impl<R: Ring> Add for Matrix<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<R: Ring> Sub for Matrix<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<R: Ring> Mul for Matrix<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<R: Ring> Neg for Matrix<R> {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl<R: Ring + Serialize> Serialize for Matrix<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de, R: Ring + Deserialize<'de>> Deserialize<'de> for Matrix<R> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<R>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).ok_or_else(|| serde::de::Error::custom("ragged matrix rows"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
            .unwrap()
    }

    fn p(cs: &[i64]) -> Polynomial<Scalar> {
        Polynomial::new(cs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    #[test]
    fn charpoly_examples() {
        let nil = m(&[&[0, 1], &[0, 0]]);
        assert_eq!(nil.charpoly(), p(&[0, 0, 1]));
        assert!(!nil.is_regss());
        let d = m(&[&[1, 0], &[0, 2]]);
        assert_eq!(d.charpoly(), p(&[2, -3, 1]));
        assert!(d.is_regss());
        let rep = m(&[&[1, 0], &[0, 1]]);
        assert_eq!(rep.charpoly(), p(&[1, -2, 1]));
        assert!(!rep.is_regss());
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let x = a.solve(&m(&[&[3], &[2]])).unwrap();
        assert_eq!(x, m(&[&[1], &[1]]));
        let ns = m(&[&[1, 2], &[2, 4]]).nullspace();
        assert_eq!(ns.len(), 1);
        assert!((&m(&[&[1, 2], &[2, 4]]) * &ns[0]).is_zero());
    }

    fn mat_strategy(n: usize) -> impl Strategy<Value = Matrix<Scalar>> {
        prop::collection::vec((-4i64..=4, -2i64..=2), n * n).prop_map(move |v| {
            Matrix::from_vec(n, n, v.into_iter().map(|(a, b)| Scalar::from_parts(a, 1, b, 1)).collect())
        })
    }

    proptest! {
        // oracle: evaluate det(cI - M) by elimination at several points
        #[test]
        fn charpoly_matches_determinant(a in mat_strategy(3)) {
            let cp = a.charpoly();
            for c in -3i64..=3 {
                let c = Scalar::from_int(c);
                let shifted = &Matrix::scalar(3, c.clone()) - &a;
                prop_assert_eq!(cp.eval(&c), shifted.det());
            }
        }

        #[test]
        fn det_is_multiplicative(a in mat_strategy(3), b in mat_strategy(3)) {
            prop_assert_eq!((&a * &b).det(), a.det() * b.det());
        }
    }
}
