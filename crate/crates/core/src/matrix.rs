//! Dense square matrices over `Z` and over a [`FieldDescriptor`].

use std::fmt;

use crate::error::FieldError;
use crate::field::{FieldDescriptor, Scalar};

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    /// Divides every entry by `k`, or `None` if some entry is not a multiple.
    pub fn div_exact(&self, k: i64) -> Option<IntMatrix> {
        if self.data.iter().any(|x| x % k != 0) {
            return None;
        }
        Some(IntMatrix { n: self.n, data: self.data.iter().map(|x| x / k).collect() })
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.data.chunks(self.n.max(1))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Square matrix over a field, row-major. Column `j` is the image of basis
/// vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldDescriptor,
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: &FieldDescriptor, n: usize) -> Self {
        Matrix { field: field.clone(), n, data: vec![field.zero(); n * n] }
    }

    pub fn identity(field: &FieldDescriptor, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_int(field: &FieldDescriptor, a: &IntMatrix) -> Self {
        Matrix { field: field.clone(), n: a.n, data: a.data.iter().map(|&x| field.from_i64(x)).collect() }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// `Σ_k coeffs[k]·terms[k]` for integer matrices and field coefficients.
    pub fn linear_combination(field: &FieldDescriptor, n: usize, terms: &[(Scalar, &IntMatrix)]) -> Self {
        let mut out = Self::zero(field, n);
        for (c, m) in terms {
            if c.is_zero() {
                continue;
            }
            for (slot, &x) in out.data.iter_mut().zip(&m.data) {
                if x != 0 {
                    *slot = &*slot + &(c * &field.from_i64(x));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(&self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(&self.field, n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        out
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Scalar {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return self.field.zero();
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = &a[r * n + col] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = &a[r * n + j] - &(&f * &a[col * n + j]);
                    a[r * n + j] = v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix, FieldError> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Matrix::identity(&self.field, n).data;
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r * n + col].is_zero()).ok_or(FieldError::DivisionByZero)?;
            for j in 0..n {
                a.swap(p * n + j, col * n + j);
                inv.swap(p * n + j, col * n + j);
            }
            let s = a[col * n + col].inv()?;
            for j in 0..n {
                a[col * n + j] = &a[col * n + j] * &s;
                inv[col * n + j] = &inv[col * n + j] * &s;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let x = &a[r * n + j] - &(&f * &a[col * n + j]);
                    a[r * n + j] = x;
                    let y = &inv[r * n + j] - &(&f * &inv[col * n + j]);
                    inv[r * n + j] = y;
                }
            }
        }
        Ok(Matrix { field: self.field.clone(), n, data: inv })
    }

    /// Row-major canonical indices of a finite-field matrix, one byte each
    /// when the field has at most 256 elements.
    pub fn to_bytes(&self) -> Option<Vec<u8>> {
        self.data.iter().map(|x| x.index().filter(|&i| i < 256).map(|i| i as u8)).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let cells: Vec<String> = (0..self.n).map(|j| format!("{:>3}", self.get(i, j).to_string())).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let k = FieldDescriptor::Prime(7);
        let mut a = IntMatrix::identity(3);
        a.set(0, 1, 2);
        a.set(2, 0, 3);
        a.set(1, 1, 5);
        let m = Matrix::from_int(&k, &a);
        assert_eq!(m.det(), k.from_i64(5));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let q = FieldDescriptor::Rationals;
        let mq = Matrix::from_int(&q, &a);
        assert!(mq.inverse().unwrap().mul(&mq).is_identity());
        assert_eq!(mq.det(), q.from_i64(5));
    }

    #[test]
    fn integer_division() {
        let mut a = IntMatrix::zero(2);
        a.set(0, 1, 4);
        assert_eq!(a.div_exact(2).unwrap().get(0, 1), 2);
        assert!(a.div_exact(3).is_none());
    }
}
