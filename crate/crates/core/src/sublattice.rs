//! Sublattices: Hermite normal forms, orthogonal complements, saturation,
//! the quotient `ℓ⊥ / Zℓ`, unimodular completion, and the overlattice
//! stabilizer and gluing tests.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{independent_rank, Lattice, LatticeVector, Signature};
use crate::matrix::{self, complete_basis, det_int, hermite_basis, integer_kernel, Int, Matrix, Rat};

/// A list of independent vectors spanning a sublattice of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SublatticeBasis {
    ambient_rank: usize,
    vectors: Vec<LatticeVector>,
}

impl SublatticeBasis {
    /// Wraps `vectors` as given (no normal form); they must be independent.
    pub fn new(ambient_rank: usize, vectors: Vec<LatticeVector>) -> Result<Self> {
        for v in &vectors {
            v.check_len(ambient_rank)?;
        }
        let rank = independent_rank(&vectors, ambient_rank);
        if rank < vectors.len() {
            return Err(Error::RankDeficient { rank, count: vectors.len() });
        }
        Ok(SublatticeBasis { ambient_rank, vectors })
    }

    pub fn empty(ambient_rank: usize) -> Self {
        SublatticeBasis { ambient_rank, vectors: Vec::new() }
    }

    /// The standard basis of `Z^n`.
    pub fn full(ambient_rank: usize) -> Self {
        SublatticeBasis {
            ambient_rank,
            vectors: (0..ambient_rank).map(|i| LatticeVector::unit(ambient_rank, i)).collect(),
        }
    }

    fn from_rows(ambient_rank: usize, rows: Vec<Vec<Int>>) -> Self {
        SublatticeBasis { ambient_rank, vectors: rows.into_iter().map(LatticeVector::new).collect() }
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<LatticeVector> {
        self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Rows are the basis vectors.
    pub fn row_matrix(&self) -> Matrix<Int> {
        Matrix::from_rows(self.vectors.iter().map(|v| v.coords().to_vec()).collect(), self.ambient_rank)
            .expect("lengths checked at construction")
    }

    fn rows(&self) -> Vec<Vec<Int>> {
        self.vectors.iter().map(|v| v.coords().to_vec()).collect()
    }

    fn check_ambient(&self, lat: &Lattice) -> Result<()> {
        if self.ambient_rank == lat.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: lat.rank(), found: self.ambient_rank })
        }
    }

    /// Canonical (Hermite) basis of the same span.
    pub fn normalized(&self) -> Self {
        SublatticeBasis::from_rows(self.ambient_rank, hermite_basis(&self.rows(), self.ambient_rank))
    }
}

/// Hermite echelon basis of the integer span of `vectors`, positive pivots,
/// zero vectors dropped.
pub fn column_normal_form(vectors: &[LatticeVector]) -> Result<SublatticeBasis> {
    let first = vectors.first().ok_or(Error::Empty)?;
    let n = first.len();
    for v in vectors {
        v.check_len(n)?;
    }
    let rows: Vec<Vec<Int>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    Ok(SublatticeBasis::from_rows(n, hermite_basis(&rows, n)))
}

/// `{x ∈ Λ : ⟨x, s⟩ = 0 for all s in sub}`, which is always saturated.
pub fn orthogonal_complement(lat: &Lattice, sub: &SublatticeBasis) -> Result<SublatticeBasis> {
    sub.check_ambient(lat)?;
    let n = lat.rank();
    if sub.is_empty() {
        return Ok(SublatticeBasis::full(n));
    }
    let pairing = &sub.row_matrix() * lat.gram();
    Ok(SublatticeBasis::from_rows(n, integer_kernel(&pairing)))
}

/// `span_Q(sub) ∩ Λ`, computed as the kernel of the kernel.
pub fn saturate(lat: &Lattice, sub: &SublatticeBasis) -> Result<SublatticeBasis> {
    sub.check_ambient(lat)?;
    let n = lat.rank();
    if sub.is_empty() {
        return Ok(SublatticeBasis::empty(n));
    }
    let annihilator = integer_kernel(&sub.row_matrix());
    let ann = Matrix::from_rows(annihilator, n).expect("kernel rows have ambient length");
    Ok(SublatticeBasis::from_rows(n, integer_kernel(&ann)))
}

/// Extends a primitive sublattice basis to a basis of `Λ`; the given vectors
/// come first, followed by the Hermite-reduced completion.
pub fn extend_to_basis(lat: &Lattice, sub: &SublatticeBasis) -> Result<Vec<LatticeVector>> {
    sub.check_ambient(lat)?;
    let extra = if sub.is_empty() {
        SublatticeBasis::full(lat.rank()).rows()
    } else {
        complete_basis(&sub.row_matrix()).ok_or(Error::NotPrimitive)?
    };
    let mut out = sub.vectors.clone();
    out.extend(extra.into_iter().map(LatticeVector::new));
    Ok(out)
}

/// `|Λ : Λ'|` for a full-rank sublattice `Λ'`.
pub fn overlattice_index(lat: &Lattice, sub: &SublatticeBasis) -> Result<Int> {
    sub.check_ambient(lat)?;
    if sub.rank() < lat.rank() {
        return Err(Error::InfiniteIndex { rank: sub.rank(), ambient: lat.rank() });
    }
    Ok(det_int(&sub.row_matrix()).abs())
}

/// `ℓ⊥ / Zℓ` with its induced form.
///
/// Each basis class is represented by a lift whose coordinate at the pivot
/// of `ℓ` (its first nonzero coordinate, sign-normalized to be positive) is
/// reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientLattice {
    ell: LatticeVector,
    pivot: usize,
    form: Lattice,
    lifts: Vec<LatticeVector>,
}

impl QuotientLattice {
    pub fn rank(&self) -> usize {
        self.lifts.len()
    }

    pub fn form(&self) -> &Lattice {
        &self.form
    }

    pub fn gram(&self) -> &Matrix<Int> {
        self.form.gram()
    }

    pub fn lifts(&self) -> &[LatticeVector] {
        &self.lifts
    }

    pub fn ell(&self) -> &LatticeVector {
        &self.ell
    }

    pub fn signature(&self) -> Signature {
        self.form.signature()
    }

    /// Canonical representative of `x` modulo `Zℓ`.
    pub fn reduce(&self, x: &LatticeVector) -> LatticeVector {
        let p = &self.ell[self.pivot];
        let q = x[self.pivot].div_floor(p);
        x - &self.ell.scale(&q)
    }

    /// Canonical lift of the class with the given quotient coordinates.
    pub fn lift(&self, coords: &[Int]) -> Result<LatticeVector> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: coords.len() });
        }
        let n = self.ell.len();
        let mut acc = LatticeVector::zero(n);
        for (c, v) in coords.iter().zip(&self.lifts) {
            if !c.is_zero() {
                acc = &acc + &v.scale(c);
            }
        }
        Ok(self.reduce(&acc))
    }

    /// Quotient coordinates of a vector `x ∈ ℓ⊥`; `None` if `x ∉ ℓ⊥`.
    pub fn project(&self, x: &LatticeVector) -> Option<Vec<Int>> {
        let n = self.ell.len();
        if x.len() != n {
            return None;
        }
        let mut cols: Vec<Vec<Int>> = Vec::with_capacity(self.rank() + 1);
        cols.push(self.ell.coords().to_vec());
        cols.extend(self.lifts.iter().map(|v| v.coords().to_vec()));
        let basis = matrix::to_rational(&Matrix::from_cols(&cols, n).expect("lengths agree"));
        let sol = matrix::solve_any(&basis, &matrix::rat_vec(x))?;
        if sol.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(sol[1..].iter().map(Rat::to_integer).collect())
    }

    /// Coefficient of `ℓ` when `x ∈ ℓ⊥` is written in the basis `{ℓ, lifts}`.
    pub fn ell_coefficient(&self, x: &LatticeVector) -> Option<Int> {
        let q = self.project(x)?;
        let rest = self.lift_unreduced(&q);
        let diff = x - &rest;
        Some(&diff[self.pivot] / &self.ell[self.pivot])
    }

    fn lift_unreduced(&self, coords: &[Int]) -> LatticeVector {
        let mut acc = LatticeVector::zero(self.ell.len());
        for (c, v) in coords.iter().zip(&self.lifts) {
            acc = &acc + &v.scale(c);
        }
        acc
    }
}

/// Builds `ℓ⊥ ∩ Λ / Zℓ` for a primitive isotropic `ℓ`.
pub fn quotient_mod_isotropic(lat: &Lattice, ell: &LatticeVector) -> Result<QuotientLattice> {
    lat.check_primitive_isotropic(ell)?;
    let n = lat.rank();
    let ell = ell.sign_normalized();
    let pivot = ell.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    let perp = orthogonal_complement(lat, &SublatticeBasis { ambient_rank: n, vectors: alloc::vec![ell.clone()] })?;
    let p = perp.row_matrix();
    let m = perp.rank();
    // coordinates of ℓ in the basis of ℓ⊥
    let coords = matrix::solve_any(&matrix::to_rational(&p.transpose()), &matrix::rat_vec(&ell))
        .ok_or(Error::Internal("isotropic vector outside its own complement"))?;
    if coords.iter().any(|c| !c.is_integer()) {
        return Err(Error::Internal("non-integral coordinates in a saturated complement"));
    }
    let c_row = Matrix::from_rows(alloc::vec![coords.iter().map(Rat::to_integer).collect()], m).expect("length m");
    let completion = complete_basis(&c_row).ok_or(Error::Internal("primitive vector in ℓ⊥ not completable"))?;
    let mut q = QuotientLattice { ell, pivot, form: Lattice::diagonal(&[]), lifts: Vec::new() };
    let lifts: Vec<LatticeVector> = completion
        .iter()
        .map(|row| {
            let v: Vec<Int> = (0..n).map(|j| row.iter().enumerate().fold(Int::zero(), |acc, (i, c)| acc + c * &p[(i, j)])).collect();
            q.reduce(&LatticeVector::new(v))
        })
        .collect();
    q.form = lat.gram_of(&lifts);
    q.lifts = lifts;
    Ok(q)
}

/// An element of `O(Λ ⊗ Q)` in ambient coordinates (acting on columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalIsometry {
    matrix: Matrix<Rat>,
}

impl RationalIsometry {
    pub fn new(lat: &Lattice, matrix: Matrix<Rat>) -> Result<Self> {
        let n = lat.rank();
        if !matrix.is_square() || matrix.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.rows() });
        }
        let g = matrix::to_rational(lat.gram());
        if &(&matrix.transpose() * &g) * &matrix != g {
            return Err(Error::NotAnIsometry);
        }
        if matrix::inverse(&matrix).is_none() {
            return Err(Error::NotAnIsometry);
        }
        Ok(RationalIsometry { matrix })
    }

    /// The rational map sending `sub[j]` to `images[j]` for a full-rank `sub`.
    pub fn from_action(lat: &Lattice, sub: &SublatticeBasis, images: &[LatticeVector]) -> Result<Self> {
        let n = lat.rank();
        if sub.rank() < n {
            return Err(Error::InfiniteIndex { rank: sub.rank(), ambient: n });
        }
        if images.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: images.len() });
        }
        for v in images {
            v.check_len(n)?;
        }
        let s = matrix::to_rational(&sub.row_matrix().transpose());
        let img = matrix::to_rational(
            &Matrix::from_cols(&images.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(), n).expect("lengths"),
        );
        let s_inv = matrix::inverse(&s).ok_or(Error::Internal("independent basis with singular matrix"))?;
        RationalIsometry::new(lat, &img * &s_inv)
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.matrix
    }

    pub fn integral_matrix(&self) -> Option<Matrix<Int>> {
        matrix::to_integral(&self.matrix)
    }

    /// Lowest common denominator of the entries.
    pub fn denominator(&self) -> Int {
        let mut l = Int::one();
        for i in 0..self.matrix.rows() {
            for j in 0..self.matrix.cols() {
                l = l.lcm(self.matrix[(i, j)].denom());
            }
        }
        l
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        self.matrix.mul_vec(x)
    }
}

/// Whether `g ∈ O(Λ')` also lies in `O(Λ)`, i.e. `g(Λ) = Λ`.
pub fn stabilizes_overlattice(lat: &Lattice, sub: &SublatticeBasis, g: &RationalIsometry) -> Result<bool> {
    sub.check_ambient(lat)?;
    let n = lat.rank();
    if sub.rank() < n {
        return Err(Error::InfiniteIndex { rank: sub.rank(), ambient: n });
    }
    if g.matrix.rows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: g.matrix.rows() });
    }
    let gram = matrix::to_rational(lat.gram());
    if &(&g.matrix.transpose() * &gram) * &g.matrix != gram {
        return Err(Error::NotAnIsometry);
    }
    let s = matrix::to_rational(&sub.row_matrix().transpose());
    let s_inv = matrix::inverse(&s).ok_or(Error::Internal("independent basis with singular matrix"))?;
    let on_sub = &(&s_inv * &g.matrix) * &s;
    if matrix::to_integral(&on_sub).is_none() {
        return Err(Error::SublatticeNotPreserved);
    }
    let Some(inv) = matrix::inverse(&g.matrix) else {
        return Err(Error::NotAnIsometry);
    };
    Ok(matrix::to_integral(&g.matrix).is_some() && matrix::to_integral(&inv).is_some())
}

/// The map `g1 ⊕ id` on `(sub1 ⊕ sub2) ⊗ Q` and whether it preserves `Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedExtension {
    pub isometry: RationalIsometry,
    pub integral: bool,
}

/// Extends `g1` (acting on `sub1` coordinates, columns are images of the
/// basis vectors) by the identity on the orthogonal `sub2`.
pub fn extend_by_identity(
    lat: &Lattice,
    sub1: &SublatticeBasis,
    g1: &Matrix<Int>,
    sub2: &SublatticeBasis,
) -> Result<GluedExtension> {
    sub1.check_ambient(lat)?;
    sub2.check_ambient(lat)?;
    let n = lat.rank();
    let k1 = sub1.rank();
    for a in sub1.vectors() {
        for b in sub2.vectors() {
            if !lat.inner_unchecked(a, b).is_zero() {
                return Err(Error::NotOrthogonalDecomposition);
            }
        }
    }
    let mut all = sub1.vectors.clone();
    all.extend(sub2.vectors.iter().cloned());
    let r = independent_rank(&all, n);
    if r < n || all.len() != n {
        return Err(Error::InfiniteIndex { rank: r, ambient: n });
    }
    if !g1.is_square() || g1.rows() != k1 {
        return Err(Error::DimensionMismatch { expected: k1, found: g1.rows() });
    }
    let g1_form = lat.gram_of(sub1.vectors());
    if &(&g1.transpose() * g1_form.gram()) * g1 != *g1_form.gram() {
        return Err(Error::NotAnIsometry);
    }
    let block = Matrix::from_fn(n, n, |i, j| {
        if i < k1 && j < k1 {
            Rat::from_integer(g1[(i, j)].clone())
        } else if i == j {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let basis = matrix::to_rational(&Matrix::from_cols(&all.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(), n).expect("lengths"));
    let inv = matrix::inverse(&basis).ok_or(Error::Internal("independent basis with singular matrix"))?;
    let m = &(&basis * &block) * &inv;
    let integral = matrix::to_integral(&m).is_some();
    let isometry = RationalIsometry::new(lat, m)?;
    Ok(GluedExtension { isometry, integral })
}
