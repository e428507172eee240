//! Small dense integer matrices for exact relation checks.

use std::ops::{Add, Mul, Neg};

use serde::ser::{Serialize, SerializeSeq, Serializer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// `self ⊗ I_k`: every entry `e` becomes the block `e I_k`.
    pub fn kron_identity(&self, k: usize) -> Self {
        let n = self.n * k;
        let mut m = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self[(i, j)];
                if e != 0 {
                    for d in 0..k {
                        m[(i * k + d, j * k + d)] = e;
                    }
                }
            }
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let n = self.n * other.n;
        let mut m = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self[(i, j)];
                if e == 0 {
                    continue;
                }
                for a in 0..other.n {
                    for b in 0..other.n {
                        m[(i * other.n + a, j * other.n + b)] = e * other[(a, b)];
                    }
                }
            }
        }
        m
    }

    /// `[[a, b], [c, d]]` assembled from equal-sized blocks.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let h = a.n;
        let mut m = Self::zeros(2 * h);
        for i in 0..h {
            for j in 0..h {
                m[(i, j)] = a[(i, j)];
                m[(i, j + h)] = b[(i, j)];
                m[(i + h, j)] = c[(i, j)];
                m[(i + h, j + h)] = d[(i, j)];
            }
        }
        m
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.data.chunks(self.n.max(1))
    }

    /// `y = M x` in floating point.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(e, _)| **e != 0)
                    .map(|(e, v)| *e as f64 * v)
                    .sum()
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.n))?;
        for row in self.rows() {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}
