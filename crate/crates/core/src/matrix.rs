//! Dense matrices over the integers and rationals, with the exact
//! elimination routines the lattice code is built on.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Option<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return None;
            }
            data.extend(r);
        }
        Some(Matrix { rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(cols: &[Vec<T>], rows: usize) -> Option<Self> {
        if cols.iter().any(|c| c.len() != rows) {
            return None;
        }
        Some(Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_identity(&self) -> bool
    where
        T: PartialEq,
    {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone + Zero + One> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(k, j)].clone();
                    let cell: &mut T = &mut out[(i, j)];
                    *cell = cell.clone() + prod;
                }
            }
        }
        out
    }
}

pub fn to_rational(m: &Matrix<Int>) -> Matrix<Rat> {
    m.map(|x| Rat::from_integer(x.clone()))
}

/// Converts back to integers if every entry has denominator one.
pub fn to_integral(m: &Matrix<Rat>) -> Option<Matrix<Int>> {
    if m.data.iter().all(|x| x.is_integer()) {
        Some(m.map(|x| x.to_integer()))
    } else {
        None
    }
}

pub fn rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
pub fn rref(m: &mut Matrix<Rat>) -> Vec<usize> {
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
        let inv = m[(r, c)].recip();
        for j in c..m.cols {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..m.rows {
            if i != r && !m[(i, c)].is_zero() {
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix<Rat>) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

pub fn rank_int(m: &Matrix<Int>) -> usize {
    rank(&to_rational(m))
}

pub fn inverse(m: &Matrix<Rat>) -> Option<Matrix<Rat>> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows;
    let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
}

/// Solves `m x = b` for a square invertible `m`.
pub fn solve(m: &Matrix<Rat>, b: &[Rat]) -> Option<Vec<Rat>> {
    inverse(m).map(|inv| inv.mul_vec(b))
}

/// Particular solution of a possibly rectangular system `m x = b`, free
/// variables set to zero. `None` when inconsistent.
pub fn solve_any(m: &Matrix<Rat>, b: &[Rat]) -> Option<Vec<Rat>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut aug = Matrix::from_fn(rows, cols + 1, |i, j| {
        if j < cols {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, cols)].clone();
    }
    Some(x)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det_int(m: &Matrix<Int>) -> Int {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Int::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = v / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Row Hermite normal form: returns `(h, u)` with `u * m = h`, `u` unimodular,
/// `h` in echelon form with positive pivots and the entries above each pivot
/// reduced into `[0, pivot)`. Zero rows of `h` sit at the bottom.
pub fn hermite(m: &Matrix<Int>) -> (Matrix<Int>, Matrix<Int>) {
    let mut h = m.clone();
    let mut u = Matrix::<Int>::identity(m.rows);
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        loop {
            let pick = (r..h.rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(p) = pick else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..h.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// row[target] -= q * row[source]
fn row_axpy(m: &mut Matrix<Int>, target: usize, source: usize, q: &Int) {
    for j in 0..m.cols {
        let t = q * &m[(source, j)];
        m[(target, j)] -= t;
    }
}

fn negate_row(m: &mut Matrix<Int>, r: usize) {
    for j in 0..m.cols {
        let v = -core::mem::take(&mut m[(r, j)]);
        m[(r, j)] = v;
    }
}

/// Nonzero rows of the Hermite form: a canonical basis of the row span.
pub fn hermite_basis(rows: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(rows.to_vec(), cols).expect("ragged rows");
    let (h, _) = hermite(&m);
    h.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Basis of the integer kernel `{x : m x = 0}`, in Hermite form. The result
/// spans the full integral kernel, which is always saturated.
pub fn integer_kernel(m: &Matrix<Int>) -> Vec<Vec<Int>> {
    let (h, u) = hermite(&m.transpose());
    let kernel: Vec<Vec<Int>> = (0..h.rows)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect();
    hermite_basis(&kernel, m.cols)
}

/// Extends the rows of `m` to a basis of `Z^cols`. Returns the extra rows,
/// or `None` if the rows are dependent or do not span a primitive sublattice.
pub fn complete_basis(m: &Matrix<Int>) -> Option<Vec<Vec<Int>>> {
    let k = m.rows;
    let n = m.cols;
    // u * m^T = [h; 0], so m * u^T = [h^T | 0] and m = [h^T | 0] (u^T)^{-1}.
    let (h, u) = hermite(&m.transpose());
    let top = Matrix::from_fn(k, k, |i, j| h[(i, j)].clone());
    if !det_int(&top).abs().is_one() || (k..n).any(|i| h.row(i).iter().any(|x| !x.is_zero())) {
        return None;
    }
    let inv = to_integral(&inverse(&to_rational(&u.transpose()))?)?;
    let extra: Vec<Vec<Int>> = (k..n).map(|i| inv.row(i).to_vec()).collect();
    Some(hermite_basis(&extra, n))
}

/// Basis of `span_Q(rows) ∩ Z^cols` in Hermite form.
pub fn saturate_rows(rows: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(rows.to_vec(), cols).expect("ragged rows");
    let ann = Matrix::from_rows(integer_kernel(&m), cols).expect("kernel rows");
    integer_kernel(&ann)
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Int>) -> Int {
    xs.into_iter().fold(Int::zero(), |g, x| g.gcd(x))
}
