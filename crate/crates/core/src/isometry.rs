//! Parabolic isometries of a hyperbolic lattice fixing an isotropic vector.
//!
//! Given `Λ` of signature `(1, n-1)`, a primitive isotropic `ℓ` and a
//! negative definite `W ⊆ ℓ⊥`, [`adapted_basis`] produces a basis
//! `{ℓ, u_1, …, u_{n-2}, ℓ'}` in which the Gram matrix is
//!
//! ```text
//! [ 0  0   a ]
//! [ 0  A   b ]
//! [ a  bᵀ  c ]
//! ```
//!
//! with `A` negative definite and `u_1, …, u_k` (`k = rank W`) spanning the
//! image of `W` in `ℓ⊥ / Zℓ`. For a row vector `γ` supported on the last
//! `n - k - 2` slots and divisible by `d = det A`, [`build_isometry`] returns
//! the isometry with matrix
//!
//! ```text
//! [ 1  -2γ  -2a·γA⁻¹γᵀ - 2γA⁻¹b ]
//! [ 0   E    2a·A⁻¹γᵀ           ]
//! [ 0   0    1                  ]
//! ```
//!
//! in the adapted basis. These commute, satisfy `g(γ + γ') = g(γ) g(γ')`,
//! fix `ℓ` and `W` pointwise, and push every positive vector towards the
//! ray of `ℓ`.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::{self, complete_basis, det_int, saturate_rows, Int, Matrix, Rat};
use crate::sublattice::{extend_to_basis, quotient_mod_isotropic, saturate, SublatticeBasis};

/// A basis `{ℓ, u_1, …, u_{n-2}, ℓ'}` with the block Gram matrix above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    lattice: Lattice,
    ell: LatticeVector,
    us: Vec<LatticeVector>,
    ell_prime: LatticeVector,
    a: Int,
    big_a: Matrix<Int>,
    b: Vec<Int>,
    c: Int,
    d: Int,
    rank_w: usize,
    // columns are ℓ, u_1, …, u_{n-2}, ℓ'
    change: Matrix<Int>,
    change_inv: Matrix<Int>,
}

impl AdaptedBasis {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ell(&self) -> &LatticeVector {
        &self.ell
    }

    pub fn us(&self) -> &[LatticeVector] {
        &self.us
    }

    pub fn ell_prime(&self) -> &LatticeVector {
        &self.ell_prime
    }

    /// `⟨ℓ, ℓ'⟩`.
    pub fn a(&self) -> &Int {
        &self.a
    }

    /// Gram matrix of the `u_i`.
    pub fn gram_u(&self) -> &Matrix<Int> {
        &self.big_a
    }

    /// `⟨u_i, ℓ'⟩`.
    pub fn b(&self) -> &[Int] {
        &self.b
    }

    /// `⟨ℓ', ℓ'⟩`.
    pub fn c(&self) -> &Int {
        &self.c
    }

    /// `det A`.
    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn rank_w(&self) -> usize {
        self.rank_w
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Number of independent parabolic generators, `n - rank W - 2`.
    pub fn free_rank(&self) -> usize {
        self.rank() - self.rank_w - 2
    }

    /// The basis vectors in order `ℓ, u_1, …, u_{n-2}, ℓ'`.
    pub fn vectors(&self) -> Vec<LatticeVector> {
        let mut out = Vec::with_capacity(self.rank());
        out.push(self.ell.clone());
        out.extend(self.us.iter().cloned());
        out.push(self.ell_prime.clone());
        out
    }

    /// Change-of-basis matrix whose columns are the adapted basis vectors.
    pub fn change_of_basis(&self) -> &Matrix<Int> {
        &self.change
    }

    /// Coordinates of `x` in the adapted basis.
    pub fn coordinates(&self, x: &LatticeVector) -> Result<Vec<Int>> {
        x.check_len(self.rank())?;
        Ok(self.change_inv.mul_vec(x))
    }

    /// Gram matrix in the adapted basis.
    pub fn adapted_gram(&self) -> Matrix<Int> {
        let p = &self.change;
        &(&p.transpose() * self.lattice.gram()) * p
    }

    /// The matrix `T(γ)` in the adapted basis.
    pub fn transfer_matrix(&self, gamma: &GammaVector) -> Result<Matrix<Int>> {
        self.check_gamma(gamma.entries())?;
        let n = self.rank();
        let k = n - 2;
        let a = Rat::from_integer(self.a.clone());
        let two = Rat::from_integer(Int::from(2));
        let a_inv = matrix::inverse(&matrix::to_rational(&self.big_a))
            .ok_or(Error::Internal("Gram block of the u-vectors is singular"))?;
        let g = matrix::rat_vec(gamma.entries());
        let b = matrix::rat_vec(&self.b);
        let a_inv_g = a_inv.mul_vec(&g);
        let a_inv_b = a_inv.mul_vec(&b);
        let dot = |x: &[Rat], y: &[Rat]| x.iter().zip(y).fold(Rat::zero(), |s, (p, q)| s + p * q);
        let corner = -(&two * &a * dot(&g, &a_inv_g)) - &two * dot(&g, &a_inv_b);
        let t = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rat::one()
            } else if i == 0 && (1..=k).contains(&j) {
                -(&two * &g[j - 1])
            } else if i == 0 && j == n - 1 {
                corner.clone()
            } else if (1..=k).contains(&i) && j == n - 1 {
                &two * &a * &a_inv_g[i - 1]
            } else {
                Rat::zero()
            }
        });
        matrix::to_integral(&t).ok_or(Error::Internal("T(γ) has non-integral entries"))
    }

    fn check_gamma(&self, entries: &[Int]) -> Result<()> {
        let k = self.rank() - 2;
        if entries.len() != k {
            return Err(Error::GammaLength { expected: k, found: entries.len() });
        }
        for (i, v) in entries.iter().enumerate() {
            if i < self.rank_w && !v.is_zero() {
                return Err(Error::GammaOnW { index: i });
            }
            if !v.is_multiple_of(&self.d) {
                return Err(Error::GammaNotDivisible { index: i, value: v.clone(), d: self.d.clone() });
            }
        }
        Ok(())
    }
}

/// A row vector `γ` admissible for an adapted basis: zero on the `W` slots
/// and divisible by `d = det A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaVector {
    entries: Vec<Int>,
}

impl GammaVector {
    pub fn new(ab: &AdaptedBasis, entries: Vec<Int>) -> Result<Self> {
        ab.check_gamma(&entries)?;
        Ok(GammaVector { entries })
    }

    /// `Σ coeffs[i] γ_{k+1+i}` in terms of the standard generators.
    pub fn from_coefficients(ab: &AdaptedBasis, coeffs: &[Int]) -> Result<Self> {
        let free = ab.free_rank();
        if coeffs.len() != free {
            return Err(Error::GammaLength { expected: free, found: coeffs.len() });
        }
        let mut entries = alloc::vec![Int::zero(); ab.rank() - 2];
        for (i, c) in coeffs.iter().enumerate() {
            entries[ab.rank_w + i] = c * &ab.d;
        }
        Ok(GammaVector { entries })
    }

    pub fn zero(ab: &AdaptedBasis) -> Self {
        GammaVector { entries: alloc::vec![Int::zero(); ab.rank() - 2] }
    }

    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GammaVector) -> GammaVector {
        GammaVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: &Int) -> GammaVector {
        GammaVector { entries: self.entries.iter().map(|a| a * k).collect() }
    }

    /// Coefficients with respect to the generators `γ_i` (divides by `d`).
    pub fn coefficients(&self, ab: &AdaptedBasis) -> Vec<Int> {
        self.entries[ab.rank_w..].iter().map(|e| e / &ab.d).collect()
    }
}

/// An integral matrix preserving the Gram matrix of its lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    lattice: Lattice,
    matrix: Matrix<Int>,
}

impl Isometry {
    pub fn new(lattice: &Lattice, matrix: Matrix<Int>) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != lattice.rank() {
            return Err(Error::DimensionMismatch { expected: lattice.rank(), found: matrix.rows() });
        }
        if !verify_isometry(lattice, &matrix) || !det_int(&matrix).abs().is_one() {
            return Err(Error::NotAnIsometry);
        }
        Ok(Isometry { lattice: lattice.clone(), matrix })
    }

    pub fn identity(lattice: &Lattice) -> Self {
        Isometry { lattice: lattice.clone(), matrix: Matrix::identity(lattice.rank()) }
    }

    pub fn matrix(&self) -> &Matrix<Int> {
        &self.matrix
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn apply(&self, x: &LatticeVector) -> Result<LatticeVector> {
        x.check_len(self.lattice.rank())?;
        Ok(LatticeVector::new(self.matrix.mul_vec(x)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { lattice: self.lattice.clone(), matrix: &self.matrix * &other.matrix }
    }

    pub fn pow(&self, m: u64) -> Isometry {
        let mut acc = Isometry::identity(&self.lattice);
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Isometry {
        let inv = matrix::inverse(&matrix::to_rational(&self.matrix)).expect("unimodular matrix");
        Isometry { lattice: self.lattice.clone(), matrix: matrix::to_integral(&inv).expect("unimodular matrix") }
    }
}

/// `mᵀ G m = G`, exactly.
pub fn verify_isometry(lat: &Lattice, m: &Matrix<Int>) -> bool {
    m.is_square()
        && m.rows() == lat.rank()
        && &(&m.transpose() * lat.gram()) * m == *lat.gram()
}

/// Builds the adapted basis for `(Λ, ℓ, W)`.
pub fn adapted_basis(lat: &Lattice, ell: &LatticeVector, w: &SublatticeBasis) -> Result<AdaptedBasis> {
    let n = lat.rank();
    if w.ambient_rank() != n {
        return Err(Error::DimensionMismatch { expected: n, found: w.ambient_rank() });
    }
    lat.require_hyperbolic()?;
    lat.check_primitive_isotropic(ell)?;
    for (index, v) in w.vectors().iter().enumerate() {
        if !lat.inner_unchecked(v, ell).is_zero() {
            return Err(Error::NotOrthogonal { index });
        }
    }
    if !w.is_empty() {
        let found = lat.restrict_form(w.vectors())?.signature();
        if !found.is_negative_definite() {
            return Err(Error::NotNegativeDefinite { found });
        }
    }
    let rank_w = w.rank();
    if n <= rank_w + 2 {
        return Err(Error::CorankTooSmall { n, rank_w });
    }

    let quotient = quotient_mod_isotropic(lat, ell)?;
    let k = quotient.rank();
    if k != n - 2 {
        return Err(Error::Internal("ℓ⊥/Zℓ has unexpected rank"));
    }
    let w_sat = saturate(lat, w)?;
    let images: Vec<Vec<Int>> = w_sat
        .vectors()
        .iter()
        .map(|v| quotient.project(v).ok_or(Error::Internal("saturated W left ℓ⊥")))
        .collect::<Result<_>>()?;
    let image_basis = saturate_rows(&images, k);
    if image_basis.len() != rank_w {
        return Err(Error::Internal("image of W in ℓ⊥/Zℓ lost rank"));
    }
    let mut quotient_basis = image_basis.clone();
    if image_basis.is_empty() {
        quotient_basis = (0..k).map(|i| LatticeVector::unit(k, i).into_coords()).collect();
    } else {
        let m = Matrix::from_rows(image_basis, k).expect("quotient rows");
        quotient_basis.extend(complete_basis(&m).ok_or(Error::Internal("saturated image is not primitive"))?);
    }
    let us: Vec<LatticeVector> = quotient_basis.iter().map(|q| quotient.lift(q)).collect::<Result<_>>()?;

    let mut perp = Vec::with_capacity(n - 1);
    perp.push(ell.clone());
    perp.extend(us.iter().cloned());
    let full = extend_to_basis(lat, &SublatticeBasis::new(n, perp)?)?;
    let ell_prime = full.last().cloned().ok_or(Error::Internal("empty completion"))?;
    if full.len() != n {
        return Err(Error::Internal("completion of ℓ⊥ is not a single vector"));
    }

    let change = Matrix::from_cols(&full.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(), n).expect("lengths");
    let change_inv = matrix::inverse(&matrix::to_rational(&change))
        .and_then(|m| matrix::to_integral(&m))
        .ok_or(Error::Internal("adapted basis is not unimodular"))?;
    let a = lat.inner_unchecked(ell, &ell_prime);
    let big_a = lat.gram_of(&us).gram().clone();
    let b: Vec<Int> = us.iter().map(|u| lat.inner_unchecked(u, &ell_prime)).collect();
    let c = lat.inner_unchecked(&ell_prime, &ell_prime);
    let d = det_int(&big_a);
    if a.is_zero() || d.is_zero() {
        return Err(Error::Internal("degenerate adapted basis"));
    }
    Ok(AdaptedBasis { lattice: lat.clone(), ell: ell.clone(), us, ell_prime, a, big_a, b, c, d, rank_w, change, change_inv })
}

/// The generators `γ_i` (entry `d` in slot `i`, zero elsewhere) for
/// `rank W < i ≤ n - 2`.
pub fn gamma_generators(ab: &AdaptedBasis) -> Vec<GammaVector> {
    let k = ab.rank() - 2;
    (ab.rank_w..k)
        .map(|i| {
            let mut entries = alloc::vec![Int::zero(); k];
            entries[i] = ab.d.clone();
            GammaVector { entries }
        })
        .collect()
}

/// `g(γ)` in ambient coordinates.
pub fn build_isometry(ab: &AdaptedBasis, gamma: &GammaVector) -> Result<Isometry> {
    let t = ab.transfer_matrix(gamma)?;
    let m = &(&ab.change * &t) * &ab.change_inv;
    if !verify_isometry(&ab.lattice, &m) {
        return Err(Error::Internal("T(γ) does not preserve the form"));
    }
    Ok(Isometry { lattice: ab.lattice.clone(), matrix: m })
}

/// One iterate of an orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStep {
    pub m: usize,
    pub iterate: LatticeVector,
    /// `φ(g^m x)` for the fixed functional `φ` with `φ(ℓ) = 1`.
    pub ell_coordinate: Int,
    /// `max_i |(g^m x)_i / λ_m - ℓ_i|`, undefined when `λ_m = 0`.
    pub deviation: Option<Rat>,
}

/// Exact evidence that `g^m x → [ℓ]` projectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    /// `ℓ` divided by its content.
    pub ell: LatticeVector,
    /// Integral functional with `φ(ℓ) = 1`.
    pub functional: Vec<Int>,
    /// Iterates for `m = 1..=m_max`.
    pub steps: Vec<OrbitStep>,
    /// Common value of the second differences of `λ_m` over `m = 0..=m_max`,
    /// when they are all equal.
    pub ell_second_difference: Option<Int>,
    /// The part of `g^m x` off the `ℓ` direction is affine in `m`.
    pub residual_affine: bool,
    /// Smallest `m0 ≥ 1` such that the deviation strictly decreases on `m0..=m_max`.
    pub decreasing_from: Option<usize>,
}

impl ConvergenceReport {
    /// `λ_m` is quadratic in `m` with nonzero leading term.
    pub fn quadratic_growth(&self) -> bool {
        self.ell_second_difference.as_ref().is_some_and(|d| !d.is_zero())
    }

    pub fn eventually_decreasing(&self) -> bool {
        self.decreasing_from.is_some_and(|m0| m0 < self.steps.len())
    }

    /// Whether the deviation strictly decreases on `lo..=hi`.
    pub fn strictly_decreasing_on(&self, lo: usize, hi: usize) -> bool {
        self.decreasing_from.is_some_and(|m0| m0 <= lo) && hi <= self.steps.len()
    }
}

/// Integral `φ` with `φ · v = gcd(v)`.
fn bezout_functional(v: &[Int]) -> Vec<Int> {
    let mut coeffs: Vec<Int> = Vec::with_capacity(v.len());
    let mut g = Int::zero();
    for x in v {
        let eg = g.extended_gcd(x);
        for c in coeffs.iter_mut() {
            *c = &*c * &eg.x;
        }
        coeffs.push(eg.y);
        g = eg.gcd;
    }
    if g.is_negative() {
        coeffs.iter_mut().for_each(|c| *c = -&*c);
    }
    coeffs
}

/// Iterates `g` on a positive vector `x` and measures the distance of
/// `g^m x` to the ray of `ℓ` in the chart `φ = 1`.
pub fn orbit_projective_limit(g: &Isometry, x: &LatticeVector, ell: &LatticeVector, m_max: usize) -> Result<ConvergenceReport> {
    let lat = &g.lattice;
    let n = lat.rank();
    x.check_len(n)?;
    ell.check_len(n)?;
    if m_max == 0 {
        return Err(Error::Empty);
    }
    if ell.is_zero() {
        return Err(Error::ZeroVector);
    }
    let square = lat.inner_unchecked(x, x);
    if !square.is_positive() {
        return Err(Error::NotPositive { square });
    }
    if g.apply(ell)? != *ell {
        return Err(Error::NotFixed);
    }
    let ell_hat = ell.primitive_part();
    let functional = bezout_functional(&ell_hat);
    let phi = |v: &[Int]| v.iter().zip(&functional).fold(Int::zero(), |s, (a, b)| s + a * b);

    let mut lambdas = Vec::with_capacity(m_max + 1);
    let mut residuals = Vec::with_capacity(m_max + 1);
    let mut steps = Vec::with_capacity(m_max);
    let mut cur = x.clone();
    for m in 0..=m_max {
        if m > 0 {
            cur = g.apply(&cur)?;
        }
        let lambda = phi(&cur);
        let residual = &cur - &ell_hat.scale(&lambda);
        if m > 0 {
            let deviation = (!lambda.is_zero()).then(|| {
                residual
                    .iter()
                    .map(|r| Rat::new(r.clone(), lambda.clone()).abs())
                    .max()
                    .unwrap_or_else(Rat::zero)
            });
            steps.push(OrbitStep { m, iterate: cur.clone(), ell_coordinate: lambda.clone(), deviation });
        }
        lambdas.push(lambda);
        residuals.push(residual);
    }

    let ell_second_difference = if m_max >= 2 {
        let seconds: Vec<Int> = lambdas.windows(3).map(|w: &[Int]| &w[2] + &w[0] - &w[1] - &w[1]).collect();
        seconds.iter().all(|s| *s == seconds[0]).then(|| seconds[0].clone())
    } else {
        None
    };
    let residual_affine = residuals
        .windows(3)
        .all(|w: &[LatticeVector]| (0..n).all(|i| (&w[2][i] + &w[0][i] - &w[1][i] - &w[1][i]).is_zero()));

    let mut decreasing_from = None;
    if steps.last().is_some_and(|s| s.deviation.is_some()) {
        let mut m0 = steps.len();
        while m0 > 1 {
            match (&steps[m0 - 2].deviation, &steps[m0 - 1].deviation) {
                (Some(prev), Some(next)) if prev > next => m0 -= 1,
                _ => break,
            }
        }
        decreasing_from = Some(m0);
    }

    Ok(ConvergenceReport { ell: ell_hat, functional, steps, ell_second_difference, residual_affine, decreasing_from })
}
