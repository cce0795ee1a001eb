//! Exhaustive enumeration of vectors of bounded square.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::{self, Int, Rat};
use crate::sublattice::quotient_mod_isotropic;

/// Open range `qmin < ⟨x, x⟩ < qmax` with `qmin < qmax ≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationQuery {
    qmin: Int,
    qmax: Int,
    limit: Option<usize>,
}

impl EnumerationQuery {
    pub fn new(qmin: Int, qmax: Int) -> Result<Self> {
        if qmin >= qmax || qmax.is_positive() {
            return Err(Error::InvalidQuery { qmin, qmax });
        }
        Ok(EnumerationQuery { qmin, qmax, limit: None })
    }

    /// Vectors of square exactly `s`.
    pub fn square(s: Int) -> Result<Self> {
        Self::new(&s - 1u32, &s + 1u32)
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn qmin(&self) -> &Int {
        &self.qmin
    }

    pub fn qmax(&self) -> &Int {
        &self.qmax
    }

    pub fn limit(&self) -> Option<usize> {
        self.limit
    }

    pub fn contains(&self, square: &Int) -> bool {
        &self.qmin < square && square < &self.qmax
    }
}

/// `Q(x) = Σ dᵢ (xᵢ + Σ_{j>i} μᵢⱼ xⱼ)²` for a positive definite `Q`.
struct Ldl {
    d: Vec<Rat>,
    mu: Vec<Vec<Rat>>,
}

fn ldl(lat: &Lattice) -> Ldl {
    let n = lat.rank();
    let mut a = matrix::to_rational(lat.gram()).map(|x| -x.clone()).to_rows();
    let mut d = vec![Rat::zero(); n];
    let mut mu = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let t = &mu[i][j] * &a[i][k];
                a[j][k] -= t;
            }
        }
    }
    Ldl { d, mu }
}

struct Search<'a> {
    lat: &'a Lattice,
    ldl: Ldl,
    bound: Rat,
    query: &'a EnumerationQuery,
    x: Vec<Int>,
    out: Vec<LatticeVector>,
}

impl Search<'_> {
    fn descend(&mut self, level: usize, used: Rat) {
        let n = self.x.len();
        if level == 0 {
            let v = LatticeVector::new(self.x.clone());
            if self.query.contains(&self.lat.inner_unchecked(&v, &v)) {
                self.out.push(v);
            }
            return;
        }
        let i = level - 1;
        let mut center = Rat::zero();
        for j in i + 1..n {
            if !self.x[j].is_zero() {
                center += &self.ldl.mu[i][j] * Rat::from_integer(self.x[j].clone());
            }
        }
        let room = (&self.bound - &used) / &self.ldl.d[i];
        if room.is_negative() {
            return;
        }
        let radius = room.ceil().to_integer().sqrt() + Int::one();
        let mid = -center.clone();
        let lo = mid.floor().to_integer() - &radius;
        let hi = mid.ceil().to_integer() + &radius;
        let mut xi = lo;
        while xi <= hi {
            let offset = Rat::from_integer(xi.clone()) + &center;
            let contribution = &self.ldl.d[i] * &offset * &offset;
            let total = &used + contribution;
            if total <= self.bound {
                self.x[i] = xi.clone();
                self.descend(i, total);
            }
            xi += 1u32;
        }
        self.x[i] = Int::zero();
    }
}

/// All `x` with `qmin < ⟨x, x⟩ < qmax` in a negative definite lattice,
/// sorted lexicographically and truncated to the query's limit.
pub fn enumerate_negative(lat: &Lattice, query: &EnumerationQuery) -> Result<Vec<LatticeVector>> {
    let found = lat.signature();
    if !found.is_negative_definite() {
        return Err(Error::NotNegativeDefinite { found });
    }
    let n = lat.rank();
    // -⟨x, x⟩ ≤ -qmin - 1 since the form is integral
    let bound = Rat::from_integer(-query.qmin() - 1u32);
    let mut search = Search { lat, ldl: ldl(lat), bound, query, x: vec![Int::zero(); n], out: Vec::new() };
    search.descend(n, Rat::zero());
    let mut out = search.out;
    out.sort();
    out.dedup();
    if let Some(limit) = query.limit() {
        out.truncate(limit);
    }
    Ok(out)
}

/// One canonical representative in `ℓ⊥` of each class of
/// `{x ∈ ℓ⊥ : -N < ⟨x, x⟩ < 0} / Zℓ`, sorted lexicographically.
pub fn lambda_n_mod_ell(lat: &Lattice, ell: &LatticeVector, bound: &Int) -> Result<Vec<LatticeVector>> {
    lat.require_hyperbolic()?;
    let query = EnumerationQuery::new(-bound, Int::zero())?;
    let quotient = quotient_mod_isotropic(lat, ell)?;
    if quotient.rank() == 0 {
        return Ok(Vec::new());
    }
    let classes = enumerate_negative(quotient.form(), &query)?;
    let mut out = classes.iter().map(|c| quotient.lift(c)).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Primitive isotropic vectors with coordinates in `[-size, size]`, first
/// nonzero coordinate positive, sorted lexicographically.
pub fn find_isotropic(lat: &Lattice, size: u32) -> Vec<LatticeVector> {
    let n = lat.rank();
    let size = i64::from(size);
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut x = vec![-size; n];
    loop {
        let v = LatticeVector::new(x.iter().map(|&c| Int::from(c)).collect());
        if v.leading_sign() > 0 && v.is_primitive() && lat.inner_unchecked(&v, &v).is_zero() {
            out.push(v);
        }
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if x[k] < size {
                x[k] += 1;
                break;
            }
            x[k] = -size;
        }
    }
}
