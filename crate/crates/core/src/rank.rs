//! Rank of the group of automorphisms fixing an isotropic nef class.
//!
//! For a primitive isotropic nef `ℓ` and the negative classes `e ⊥ ℓ`
//! whose hyperplanes meet the nef cone in a face of full dimension, let
//! `W` be the span of `ℓ` and those classes. The rank is
//! `n - dim W - 1`, equivalently `n - rank W̄ - 2` with `W̄` the image of
//! `W` in `ℓ⊥/Zℓ`.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::cone::WallSystem;
use crate::error::{Error, Result};
use crate::lattice::{independent_rank, Lattice, LatticeVector};
use crate::matrix::{self, Int};
use crate::sublattice::quotient_mod_isotropic;

/// The span of `ℓ` and a list of classes orthogonal to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSpan {
    /// Dimension over `Q`, counting `ℓ`.
    pub dim: usize,
    /// Hermite normal form basis of the integral span.
    pub basis: Vec<LatticeVector>,
    /// Rank of the image in `ℓ⊥/Zℓ`; equals `dim - 1`.
    pub quotient_rank: usize,
    /// Whether the image is negative definite in `ℓ⊥/Zℓ`.
    pub negative_definite: bool,
    /// Canonical lifts of a basis of the saturated image.
    pub quotient_lift: Vec<LatticeVector>,
}

pub fn span_w(lat: &Lattice, ell: &LatticeVector, classes: &[LatticeVector]) -> Result<WSpan> {
    lat.check_primitive_isotropic(ell)?;
    let n = lat.rank();
    for (index, e) in classes.iter().enumerate() {
        if !lat.inner(e, ell)?.is_zero() {
            return Err(Error::NotOrthogonal { index });
        }
    }
    let mut all = Vec::with_capacity(classes.len() + 1);
    all.push(ell.clone());
    all.extend(classes.iter().cloned());
    let dim = independent_rank(&all, n);
    let rows: Vec<Vec<Int>> = all.iter().map(|v| v.coords().to_vec()).collect();
    let basis = matrix::hermite_basis(&rows, n).into_iter().map(LatticeVector::new).collect();

    let quotient = quotient_mod_isotropic(lat, ell)?;
    let k = quotient.rank();
    let projected: Vec<Vec<Int>> = classes
        .iter()
        .map(|e| quotient.project(e).ok_or(Error::Internal("class in ℓ⊥ has no quotient coordinates")))
        .collect::<Result<_>>()?;
    let image = if projected.is_empty() || k == 0 { Vec::new() } else { matrix::saturate_rows(&projected, k) };
    let image: Vec<Vec<Int>> = image.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let quotient_rank = image.len();
    let image_vectors: Vec<LatticeVector> = image.iter().cloned().map(LatticeVector::new).collect();
    let negative_definite = quotient.form().gram_of(&image_vectors).signature().is_negative_definite();
    let quotient_lift = image.iter().map(|c| quotient.lift(c)).collect::<Result<Vec<_>>>()?;
    if quotient_rank + 1 != dim {
        return Err(Error::Internal("quotient image rank disagrees with the span"));
    }
    Ok(WSpan { dim, basis, quotient_rank, negative_definite, quotient_lift })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub picard: usize,
    pub dim_w: usize,
    /// `max(picard - dim_w - 1, 0)`.
    pub rank: usize,
    /// `picard - rank W̄ - 2`, which agrees with `rank` inside the hypothesis.
    pub rank_via_quotient: i64,
    pub quotient_rank: usize,
    /// `ℓ` followed by the retained classes.
    pub spanning_set: Vec<LatticeVector>,
    /// Input classes orthogonal to `ℓ` that pass the face test.
    pub mbm_circ_used: Vec<LatticeVector>,
    /// `W̄` is negative definite and `picard - rank W̄ > 2`.
    pub within_hypothesis: bool,
    pub span: WSpan,
}

pub fn aut_rank(ws: &WallSystem, ell: &LatticeVector, mbm: &[LatticeVector]) -> Result<RankReport> {
    let lat = ws.lattice();
    lat.check_primitive_isotropic(ell)?;
    if !ws.is_nef(ell)? {
        return Err(Error::NotNef);
    }
    for e in mbm {
        let square = lat.inner(e, e)?;
        if !square.is_negative() {
            return Err(Error::NotNegative { square });
        }
    }
    let mut used = Vec::new();
    for e in mbm {
        if lat.inner(e, ell)?.is_zero() && ws.mbm_face_test(e)? {
            used.push(e.clone());
        }
    }
    let span = span_w(lat, ell, &used)?;
    let n = lat.rank();
    let rank = n.saturating_sub(span.dim + 1);
    let rank_via_quotient = n as i64 - span.quotient_rank as i64 - 2;
    let within_hypothesis = span.negative_definite && n > span.quotient_rank + 2;
    let mut spanning_set = Vec::with_capacity(used.len() + 1);
    spanning_set.push(ell.clone());
    spanning_set.extend(used.iter().cloned());
    Ok(RankReport {
        picard: n,
        dim_w: span.dim,
        rank,
        rank_via_quotient,
        quotient_rank: span.quotient_rank,
        spanning_set,
        mbm_circ_used: used,
        within_hypothesis,
        span,
    })
}

/// `n - 2` for a lattice of signature `(1, n - 1)`.
pub fn rank_upper_bound(lat: &Lattice) -> Result<usize> {
    lat.require_hyperbolic()?;
    Ok(lat.rank() - 2)
}

/// `picard - (1 + Σ (nₜ - 1)) - 1` for an elliptic fibration whose reducible
/// fibers have `nₜ` components.
pub fn shioda_tate_rank(picard: usize, fiber_components: &[usize]) -> Result<usize> {
    if picard < 2 {
        return Err(Error::PicardTooSmall(picard));
    }
    if fiber_components.contains(&0) {
        return Err(Error::ZeroFiberComponents);
    }
    let reducible: i64 = fiber_components.iter().map(|&c| c as i64 - 1).sum();
    let value = picard as i64 - (1 + reducible) - 1;
    usize::try_from(value).map_err(|_| Error::InconsistentFibers { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vec_i64;
    use crate::named::{e, u_plus_e8_negative, u_plus_m2};
    use alloc::vec;

    fn e8_kappa() -> LatticeVector {
        // y = -C⁻¹·1 pairs to 1 with every simple root of E8(-1)
        let c = matrix::to_rational(e(8).gram());
        let inv = matrix::inverse(&c).unwrap();
        let ones = vec![crate::matrix::Rat::from_integer(Int::from(1)); 8];
        let y = inv.mul_vec(&ones);
        let mut coords = vec![Int::from(18), Int::from(18)];
        coords.extend(y.iter().map(|r| -r.to_integer()));
        LatticeVector::new(coords)
    }

    fn e8_roots() -> Vec<LatticeVector> {
        (0..8).map(|i| LatticeVector::unit(10, i + 2)).collect()
    }

    #[test]
    fn span_examples() {
        let lat = u_plus_m2();
        let ell = vec_i64(&[1, 0, 0]);
        assert_eq!(span_w(&lat, &ell, &[]).unwrap().dim, 1);
        let s = span_w(&lat, &ell, &[vec_i64(&[0, 0, 1]), vec_i64(&[2, 0, 1])]).unwrap();
        assert_eq!((s.dim, s.quotient_rank), (2, 1));
        assert!(s.negative_definite);
        assert_eq!(s.quotient_lift, vec![vec_i64(&[0, 0, 1])]);
        let big = u_plus_e8_negative();
        let s = span_w(&big, &LatticeVector::unit(10, 0), &e8_roots()).unwrap();
        assert_eq!(s.dim, 9);
        assert!(matches!(span_w(&lat, &ell, &[vec_i64(&[0, 1, 0])]), Err(Error::NotOrthogonal { index: 0 })));
    }

    #[test]
    fn rank_examples() {
        let lat = u_plus_m2();
        let ell = vec_i64(&[1, 0, 0]);
        let ws = WallSystem::new(&lat, vec_i64(&[1, 1, 0]), vec![vec_i64(&[0, 0, 1])]).unwrap();
        let r = aut_rank(&ws, &ell, &[vec_i64(&[0, 0, 1])]).unwrap();
        assert_eq!((r.dim_w, r.rank), (2, 0));
        let ws = WallSystem::new(&lat, vec_i64(&[1, 1, 0]), vec![]).unwrap();
        let r = aut_rank(&ws, &ell, &[]).unwrap();
        assert_eq!((r.dim_w, r.rank, r.rank_via_quotient), (1, 1, 1));
        assert!(r.within_hypothesis);

        let u = Lattice::hyperbolic_plane();
        let ws = WallSystem::new(&u, vec_i64(&[1, 1]), vec![]).unwrap();
        assert_eq!(aut_rank(&ws, &vec_i64(&[1, 0]), &[]).unwrap().rank, 0);
    }

    #[test]
    fn e8_fixture_has_rank_zero() {
        let lat = u_plus_e8_negative();
        let ws = WallSystem::new(&lat, e8_kappa(), e8_roots()).unwrap();
        let r = aut_rank(&ws, &LatticeVector::unit(10, 0), &e8_roots()).unwrap();
        assert_eq!((r.dim_w, r.rank, r.mbm_circ_used.len()), (9, 0, 8));
    }

    #[test]
    fn rank_preconditions() {
        let lat = u_plus_m2();
        let ws = WallSystem::new(&lat, vec_i64(&[1, 1, 0]), vec![vec_i64(&[1, -1, 1])]).unwrap();
        // ⟨ℓ, (1,-1,1)⟩ = -1 for ℓ = (1,0,0)
        assert_eq!(aut_rank(&ws, &vec_i64(&[1, 0, 0]), &[]), Err(Error::NotNef));
        let ws = WallSystem::new(&lat, vec_i64(&[1, 1, 0]), vec![]).unwrap();
        assert!(matches!(aut_rank(&ws, &vec_i64(&[1, 0, 0]), &[vec_i64(&[1, 1, 0])]), Err(Error::NotNegative { .. })));
    }

    #[test]
    fn bounds() {
        assert_eq!(rank_upper_bound(&u_plus_m2()).unwrap(), 1);
        assert_eq!(rank_upper_bound(&Lattice::hyperbolic_plane()).unwrap(), 0);
        assert_eq!(rank_upper_bound(&u_plus_e8_negative()).unwrap(), 8);
        assert!(rank_upper_bound(&crate::named::a(3)).is_err());
    }

    #[test]
    fn shioda_tate_examples() {
        assert_eq!(shioda_tate_rank(10, &[9]).unwrap(), 0);
        assert_eq!(shioda_tate_rank(2, &[]).unwrap(), 0);
        assert_eq!(shioda_tate_rank(20, &[2, 2, 2, 2]).unwrap(), 14);
        assert_eq!(shioda_tate_rank(3, &[5]), Err(Error::InconsistentFibers { value: -3 }));
        assert_eq!(shioda_tate_rank(1, &[]), Err(Error::PicardTooSmall(1)));
        assert_eq!(shioda_tate_rank(5, &[0]), Err(Error::ZeroFiberComponents));
    }
}
