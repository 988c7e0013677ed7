use crate::error::Error;
use crate::scalar::{CRat, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Vector in the standard 4-dimensional symplectic space over the rationals.
///
/// The symplectic form is `omega(u, v) = u1*v4 - u2*v3 + u3*v2 - u4*v1`
/// (1-based indices), so `omega(e1, e4) = 1` and `omega(e2, e3) = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vec4(pub [Rat; 4]);

impl Vec4 {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        Vec4([a, b, c, d])
    }

    pub fn zero() -> Self {
        Vec4([Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()])
    }

    /// Standard basis vector, `i` in `0..4`.
    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = Rat::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    pub fn sub(&self, other: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    pub fn scale(&self, s: &Rat) -> Vec4 {
        Vec4(std::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn neg(&self) -> Vec4 {
        Vec4(std::array::from_fn(|i| -&self.0[i]))
    }

    /// The symplectic form.
    pub fn omega(&self, other: &Vec4) -> Rat {
        let u = &self.0;
        let v = &other.0;
        &u[0] * &v[3] - &u[1] * &v[2] + &u[2] * &v[1] - &u[3] * &v[0]
    }

    /// The compatible complex structure: `J e1 = -e2`, `J e2 = e1`,
    /// `J e3 = e4`, `J e4 = -e3`. Satisfies `J^T Omega J = -Omega`.
    pub fn apply_j(&self) -> Vec4 {
        let v = &self.0;
        Vec4([v[1].clone(), -&v[0], -&v[3], v[2].clone()])
    }

    /// Complex coordinates identifying the real 4-space with C^2:
    /// `z1 = v1 - i*v2`, `z2 = v3 + i*v4`.
    pub fn complex_coordinates(&self) -> (CRat, CRat) {
        let v = &self.0;
        (
            CRat::new(v[0].clone(), -&v[1]),
            CRat::new(v[2].clone(), v[3].clone()),
        )
    }

    /// Divides by the first nonzero coordinate, giving a canonical
    /// representative of the projective point (sign is not preserved).
    pub fn projective_normalize(&self) -> Result<Vec4, Error> {
        let pivot = self
            .0
            .iter()
            .find(|x| !x.is_zero())
            .ok_or(Error::ZeroVector)?;
        let inv = pivot.recip();
        Ok(self.scale(&inv))
    }
}

impl Index<usize> for Vec4 {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec4 {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl fmt::Display for Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

/// Row-major 4x4 matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat4(pub [[Rat; 4]; 4]);

impl Mat4 {
    pub fn from_rows(rows: [Vec4; 4]) -> Self {
        Mat4(rows.map(|r| r.0))
    }

    pub fn from_cols(cols: [Vec4; 4]) -> Self {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| cols[j].0[i].clone())
        }))
    }

    pub fn identity() -> Self {
        Self::diag(&[Rat::one(), Rat::one(), Rat::one(), Rat::one()])
    }

    pub fn diag(d: &[Rat; 4]) -> Self {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { d[i].clone() } else { Rat::zero() })
        }))
    }

    /// The matrix of the symplectic form in the standard basis.
    pub fn omega_matrix() -> Self {
        let r = |a: i64, b: i64, c: i64, d: i64| {
            Vec4::new(
                Rat::from_integer(a.into()),
                Rat::from_integer(b.into()),
                Rat::from_integer(c.into()),
                Rat::from_integer(d.into()),
            )
        };
        Mat4::from_rows([r(0, 0, 0, 1), r(0, 0, -1, 0), r(0, 1, 0, 0), r(-1, 0, 0, 0)])
    }

    pub fn row(&self, i: usize) -> Vec4 {
        Vec4(self.0[i].clone())
    }

    pub fn col(&self, j: usize) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i][j].clone()))
    }

    pub fn transpose(&self) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i].clone())
        }))
    }

    pub fn mul(&self, other: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..4)
                    .map(|k| &self.0[i][k] * &other.0[k][j])
                    .fold(Rat::zero(), |acc, x| acc + x)
            })
        }))
    }

    pub fn mul_vec(&self, v: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| {
            (0..4)
                .map(|k| &self.0[i][k] * &v.0[k])
                .fold(Rat::zero(), |acc, x| acc + x)
        }))
    }

    pub fn scale(&self, s: &Rat) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] * s)
        }))
    }

    pub fn det(&self) -> Rat {
        // Cofactor expansion along the first row; exact and plenty fast at 4x4.
        let mut acc = Rat::zero();
        for j in 0..4 {
            if self.0[0][j].is_zero() {
                continue;
            }
            let minor = self.minor3(0, j);
            let term = &self.0[0][j] * minor;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn minor3(&self, skip_row: usize, skip_col: usize) -> Rat {
        let mut m = Vec::with_capacity(9);
        for i in 0..4 {
            if i == skip_row {
                continue;
            }
            for j in 0..4 {
                if j == skip_col {
                    continue;
                }
                m.push(self.0[i][j].clone());
            }
        }
        let d = |a: usize, b: usize, c: usize, e: usize| &m[a] * &m[e] - &m[b] * &m[c];
        &m[0] * d(4, 5, 7, 8) - &m[1] * d(3, 5, 6, 8) + &m[2] * d(3, 4, 6, 7)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Mat4, Error> {
        let mut a: Vec<Vec<Rat>> = (0..4)
            .map(|i| {
                let mut row: Vec<Rat> = self.0[i].to_vec();
                for j in 0..4 {
                    row.push(if i == j { Rat::one() } else { Rat::zero() });
                }
                row
            })
            .collect();
        for col in 0..4 {
            let pivot = (col..4)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for j in 0..8 {
                a[col][j] = &a[col][j] * &inv;
            }
            for r in 0..4 {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..8 {
                    let sub = &factor * &a[col][j];
                    a[r][j] = &a[r][j] - &sub;
                }
            }
        }
        Ok(Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| a[i][j + 4].clone())
        })))
    }

    /// Checks `M^T Omega M = Omega`.
    pub fn is_symplectic(&self) -> bool {
        let om = Mat4::omega_matrix();
        self.transpose().mul(&om).mul(self) == om
    }
}

/// Rank of the span of the given vectors, by exact Gaussian elimination.
pub fn rank(vectors: &[Vec4]) -> usize {
    let mut rows: Vec<[Rat; 4]> = vectors.iter().map(|v| v.0.clone()).collect();
    let mut r = 0;
    for col in 0..4 {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].recip();
        for j in col..4 {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in col..4 {
                let sub = &factor * &rows[r][j];
                rows[i][j] = &rows[i][j] - &sub;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// One exact solution of the linear system `rows * x = rhs` with free
/// variables set to zero, or `None` when the system is inconsistent.
pub fn solve_system(rows: &[Vec<Rat>], rhs: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    let nrows = rows.len();
    let mut a: Vec<Vec<Rat>> = (0..nrows)
        .map(|i| {
            let mut r = rows[i].clone();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for j in col..=ncols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..nrows {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in col..=ncols {
                let sub = &factor * &a[r][j];
                a[i][j] = &a[i][j] - &sub;
            }
        }
        pivot_col_of_row.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero right-hand side.
    for i in r..nrows {
        if !a[i][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &pc) in pivot_col_of_row.iter().enumerate() {
        x[pc] = a[row][ncols].clone();
    }
    Some(x)
}

/// Row vector of the linear functional `w -> omega(v, w)`.
pub fn omega_functional(v: &Vec4) -> Vec<Rat> {
    vec![-&v[3], v[2].clone(), -&v[1], v[0].clone()]
}

/// Basis of the kernel of the linear map given by `rows` (each of length
/// `ncols`), as vectors of length `ncols`. Exact reduced row echelon form.
pub fn kernel_basis(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = a.len();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for j in col..ncols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..nrows {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in col..ncols {
                let sub = &factor * &a[r][j];
                a[i][j] = &a[i][j] - &sub;
            }
        }
        pivot_col_of_row.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = -&a[row][free];
        }
        basis.push(v);
    }
    basis
}

/// A 4x4 rational matrix verified to preserve the symplectic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMatrix(Mat4);

impl SymplecticMatrix {
    pub fn new(m: Mat4) -> Result<Self, Error> {
        if m.is_symplectic() {
            Ok(SymplecticMatrix(m))
        } else {
            Err(Error::NotSymplectic)
        }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat4 {
        self.0
    }

    pub fn apply(&self, v: &Vec4) -> Vec4 {
        self.0.mul_vec(v)
    }

    pub fn compose(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> SymplecticMatrix {
        // Symplectic matrices are invertible; unwrap is safe.
        SymplecticMatrix(self.0.inverse().expect("symplectic matrix is invertible"))
    }
}
