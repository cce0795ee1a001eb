//! Integral lattices given by a symmetric Gram matrix.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Deref, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{self, det_int, gcd_all, Int, Matrix, Rat};

/// Coordinates of a lattice element in the distinguished basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVector(Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector(alloc::vec![Int::zero(); n])
    }

    /// The `i`-th standard basis vector of `Z^n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Int::one();
        v
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> Int {
        gcd_all(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides by the content; the zero vector is returned unchanged.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|x| x / &c).collect())
    }

    /// Sign of the first nonzero coordinate, or zero.
    pub fn leading_sign(&self) -> i8 {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }

    /// Flips the sign so the first nonzero coordinate is positive.
    pub fn sign_normalized(&self) -> Self {
        if self.leading_sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, k: &Int) -> Self {
        LatticeVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: n, found: self.0.len() })
        }
    }
}

impl Deref for LatticeVector {
    type Target = [Int];
    fn deref(&self) -> &[Int] {
        &self.0
    }
}

impl From<Vec<Int>> for LatticeVector {
    fn from(v: Vec<Int>) -> Self {
        LatticeVector(v)
    }
}

impl From<&[i64]> for LatticeVector {
    fn from(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| Int::from(x)).collect())
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(v: [i64; N]) -> Self {
        LatticeVector::from(&v[..])
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Sylvester inertia of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub const fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Signature { positive, negative, zero }
    }

    /// `(1, n - 1, 0)`.
    pub const fn hyperbolic(n: usize) -> Self {
        Signature { positive: 1, negative: n - 1, zero: 0 }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.positive == 1 && self.zero == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

/// A free abelian group of finite rank with an integral symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    gram: Matrix<Int>,
}

impl Lattice {
    pub fn new(gram: Matrix<Int>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        let n = gram.rows();
        for i in 0..n {
            for j in i + 1..n {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
        Ok(Lattice { gram })
    }

    /// Convenience constructor from small integer rows.
    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        let mut out = Vec::with_capacity(n);
        for r in rows {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, cols: r.len() });
            }
            out.push(r.iter().map(|&x| Int::from(x)).collect());
        }
        Lattice::new(Matrix::from_rows(out, n).expect("checked lengths"))
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        Lattice { gram: Matrix::from_fn(n, n, |i, j| if i == j { Int::from(entries[i]) } else { Int::zero() }) }
    }

    /// The hyperbolic plane `U`.
    pub fn hyperbolic_plane() -> Self {
        Lattice::from_rows(&[&[0, 1], &[1, 0]]).expect("valid gram")
    }

    /// Orthogonal direct sum, with `self` occupying the first coordinates.
    pub fn direct_sum(&self, other: &Lattice) -> Self {
        let (a, b) = (self.rank(), other.rank());
        Lattice {
            gram: Matrix::from_fn(a + b, a + b, |i, j| {
                if i < a && j < a {
                    self.gram[(i, j)].clone()
                } else if i >= a && j >= a {
                    other.gram[(i - a, j - a)].clone()
                } else {
                    Int::zero()
                }
            }),
        }
    }

    /// The lattice with its form multiplied by `k`, e.g. `E8(-1)` from `E8`.
    pub fn scaled(&self, k: i64) -> Self {
        let k = Int::from(k);
        Lattice { gram: self.gram.map(|x| x * &k) }
    }

    /// Gram matrix after the change of basis whose new basis vectors are the
    /// columns of `m`.
    pub fn transformed(&self, m: &Matrix<Int>) -> Result<Self> {
        if m.rows() != self.rank() || !m.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: m.rows() });
        }
        Lattice::new(&(&m.transpose() * &self.gram) * m)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<Int> {
        &self.gram
    }

    pub fn determinant(&self) -> Int {
        det_int(&self.gram)
    }

    /// `xᵀ G y`.
    pub fn inner(&self, x: &LatticeVector, y: &LatticeVector) -> Result<Int> {
        x.check_len(self.rank())?;
        y.check_len(self.rank())?;
        Ok(self.inner_unchecked(x, y))
    }

    pub(crate) fn inner_unchecked(&self, x: &[Int], y: &[Int]) -> Int {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).fold(Int::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `⟨x, x⟩`.
    pub fn square(&self, x: &LatticeVector) -> Result<Int> {
        self.inner(x, x)
    }

    /// Rational version of the pairing, used for projections.
    pub fn inner_rat(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let g = matrix::to_rational(&self.gram);
        let gy = g.mul_vec(y);
        x.iter().zip(&gy).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    /// The vector `G x`, i.e. the functional `⟨x, ·⟩` in coordinates.
    pub fn pairing_row(&self, x: &LatticeVector) -> Result<Vec<Int>> {
        x.check_len(self.rank())?;
        Ok(self.gram.mul_vec(x))
    }

    /// Inertia computed by exact symmetric elimination over `Q`.
    pub fn signature(&self) -> Signature {
        symmetric_inertia(&matrix::to_rational(&self.gram))
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// Gram matrix of the span of `basis`; the vectors must be independent.
    pub fn restrict_form(&self, basis: &[LatticeVector]) -> Result<Lattice> {
        for v in basis {
            v.check_len(self.rank())?;
        }
        let r = independent_rank(basis, self.rank());
        if r < basis.len() {
            return Err(Error::RankDeficient { rank: r, count: basis.len() });
        }
        Ok(self.gram_of(basis))
    }

    /// Gram matrix of arbitrary vectors, without an independence check.
    pub(crate) fn gram_of(&self, vs: &[LatticeVector]) -> Lattice {
        let images: Vec<Vec<Int>> = vs.iter().map(|v| self.gram.mul_vec(v)).collect();
        let k = vs.len();
        let gram = Matrix::from_fn(k, k, |i, j| {
            vs[i].iter().zip(&images[j]).fold(Int::zero(), |acc, (a, b)| acc + a * b)
        });
        Lattice { gram }
    }

    pub(crate) fn require_hyperbolic(&self) -> Result<Signature> {
        let found = self.signature();
        if found.is_hyperbolic() {
            Ok(found)
        } else {
            Err(Error::SignatureMismatch { expected: Signature::hyperbolic(self.rank().max(1)), found })
        }
    }

    /// Checks that `ell` is a nonzero primitive isotropic vector.
    pub fn check_primitive_isotropic(&self, ell: &LatticeVector) -> Result<()> {
        ell.check_len(self.rank())?;
        if ell.is_zero() {
            return Err(Error::ZeroVector);
        }
        let content = ell.content();
        if !content.is_one() {
            return Err(Error::ImprimitiveVector { content });
        }
        let square = self.inner_unchecked(ell, ell);
        if !square.is_zero() {
            return Err(Error::NotIsotropic { square });
        }
        Ok(())
    }
}

/// Rank over `Q` of a list of integer vectors of length `n`.
pub fn independent_rank(vs: &[LatticeVector], n: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(vs.iter().map(|v| v.coords().to_vec()).collect(), n).expect("lengths checked");
    matrix::rank_int(&m)
}

/// Inertia of a rational symmetric matrix. Nonzero diagonal entries are used
/// as pivots; when the remaining diagonal vanishes but some `a_ij != 0`, the
/// substitution `e_i -> e_i + e_j` produces the pivot `2 a_ij`.
pub fn symmetric_inertia(m: &Matrix<Rat>) -> Signature {
    let mut a = m.clone();
    let n = a.rows();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut sig = Signature::new(0, 0, 0);
    while !alive.is_empty() {
        let pivot = alive.iter().position(|&i| !a[(i, i)].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = alive.iter().enumerate().find_map(|(s, &i)| {
                    alive.iter().find(|&&j| j != i && !a[(i, j)].is_zero()).map(|&j| (s, i, j))
                });
                let Some((s, i, j)) = pair else {
                    sig.zero += alive.len();
                    break;
                };
                // row/column i += row/column j
                for &k in &alive {
                    let v = a[(j, k)].clone();
                    a[(i, k)] += v;
                }
                for &k in &alive {
                    let v = a[(k, j)].clone();
                    a[(k, i)] += v;
                }
                s
            }
        };
        let i = alive.remove(p);
        let piv = a[(i, i)].clone();
        if piv.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for &r in &alive {
            if a[(r, i)].is_zero() {
                continue;
            }
            let f = &a[(r, i)] / &piv;
            for &c in &alive {
                let t = &f * &a[(i, c)];
                a[(r, c)] -= t;
            }
        }
    }
    sig
}

/// Small helper used by tests and fixtures.
pub fn vec_i64(v: &[i64]) -> LatticeVector {
    LatticeVector::from(v)
}

#[cfg(test)]
pub(crate) fn big(x: i64) -> Int {
    Int::from(x)
}
