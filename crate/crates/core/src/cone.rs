//! Positive cone, walls and chambers of a hyperbolic lattice.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::{self, gcd_all, Int, Matrix, Rat};
use crate::sublattice::{orthogonal_complement, SublatticeBasis};

/// A reference class `κ` with `⟨κ, κ⟩ > 0` together with finitely many
/// negative classes whose orthogonal hyperplanes are the walls.
///
/// Walls are stored primitive and oriented so that `⟨e, κ⟩ > 0`. A wall
/// whose hyperplane contains `κ` cannot be oriented that way; it keeps the
/// sign that makes its first nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallSystem {
    lattice: Lattice,
    kappa: LatticeVector,
    walls: Vec<LatticeVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &Int) -> Sign {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

/// Signs of `⟨x, e⟩` over the walls, in wall order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChamberSignature {
    pub signs: Vec<Sign>,
}

impl ChamberSignature {
    /// No sign is zero: the point lies in the interior of a chamber.
    pub fn is_generic(&self) -> bool {
        self.signs.iter().all(|s| *s != Sign::Zero)
    }
}

impl WallSystem {
    pub fn new(lattice: &Lattice, kappa: LatticeVector, walls: Vec<LatticeVector>) -> Result<Self> {
        lattice.require_hyperbolic()?;
        let n = lattice.rank();
        kappa.check_len(n)?;
        let square = lattice.inner_unchecked(&kappa, &kappa);
        if !square.is_positive() {
            return Err(Error::NotPositive { square });
        }
        let mut out: Vec<LatticeVector> = Vec::with_capacity(walls.len());
        for e in walls {
            e.check_len(n)?;
            let square = lattice.inner_unchecked(&e, &e);
            if !square.is_negative() {
                return Err(Error::NotNegative { square });
            }
            let e = e.primitive_part();
            let pairing = lattice.inner_unchecked(&e, &kappa);
            let oriented = if pairing.is_negative() {
                -&e
            } else if pairing.is_zero() {
                e.sign_normalized()
            } else {
                e
            };
            if !out.contains(&oriented) {
                out.push(oriented);
            }
        }
        Ok(WallSystem { lattice: lattice.clone(), kappa, walls: out })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn kappa(&self) -> &LatticeVector {
        &self.kappa
    }

    pub fn walls(&self) -> &[LatticeVector] {
        &self.walls
    }

    fn pair(&self, x: &LatticeVector, y: &LatticeVector) -> Result<Int> {
        self.lattice.inner(x, y)
    }

    /// `⟨x, x⟩ > 0` and `⟨x, κ⟩ > 0`.
    pub fn in_positive_cone(&self, x: &LatticeVector) -> Result<bool> {
        Ok(self.pair(x, x)?.is_positive() && self.pair(x, &self.kappa)?.is_positive())
    }

    /// `x` is in the closed positive cone and pairs non-negatively with every wall.
    pub fn is_nef(&self, x: &LatticeVector) -> Result<bool> {
        x.check_len(self.lattice.rank())?;
        if x.is_zero() {
            return Ok(true);
        }
        if self.pair(x, x)?.is_negative() || self.pair(x, &self.kappa)?.is_negative() {
            return Ok(false);
        }
        for e in &self.walls {
            if self.pair(x, e)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `e⊥` strictly separates `x` and `y`.
    pub fn separates(&self, e: &LatticeVector, x: &LatticeVector, y: &LatticeVector) -> Result<bool> {
        let px = self.pair(x, e)?;
        let py = self.pair(y, e)?;
        Ok((px.is_positive() && py.is_negative()) || (px.is_negative() && py.is_positive()))
    }

    pub fn chamber_signature(&self, x: &LatticeVector) -> Result<ChamberSignature> {
        if !self.in_positive_cone(x)? {
            return Err(Error::OutsidePositiveCone);
        }
        let signs = self.walls.iter().map(|e| Sign::of(&self.lattice.inner_unchecked(x, e))).collect();
        Ok(ChamberSignature { signs })
    }

    /// Whether `e⊥ ∩ Nef` has nonempty interior inside `e⊥`, i.e. there is
    /// `x ∈ e⊥` with `⟨x, x⟩ > 0`, `⟨x, κ⟩ > 0` and `⟨x, w⟩ > 0` for every
    /// wall `w` whose hyperplane is not `e⊥`.
    ///
    /// For `⟨e, e⟩ ≥ 0` the form is non-positive on `e⊥` and the answer is
    /// no. Otherwise `q` is strictly concave on the slice
    /// `S = {x ∈ e⊥ : ⟨x, κ⟩ = 1}`, so the test reduces to
    /// (a) the open polyhedron `{⟨x, w⟩ > 0}` meets `S`, decided by
    /// Fourier–Motzkin elimination, and (b) `q` has a positive value on its
    /// closure, found among the stationary points of `q` on the faces.
    pub fn mbm_face_test(&self, e: &LatticeVector) -> Result<bool> {
        let lat = &self.lattice;
        let n = lat.rank();
        e.check_len(n)?;
        if e.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !lat.inner_unchecked(e, e).is_negative() {
            return Ok(false);
        }
        let e_hat = e.primitive_part().sign_normalized();
        let active: Vec<&LatticeVector> =
            self.walls.iter().filter(|w| w.primitive_part().sign_normalized() != e_hat).collect();

        let gram = matrix::to_rational(lat.gram());
        let e_row = matrix::rat_vec(&lat.pairing_row(e)?);
        let k_row = matrix::rat_vec(&lat.pairing_row(&self.kappa)?);
        let wall_rows: Vec<Vec<Rat>> =
            active.iter().map(|w| lat.pairing_row(w).map(|r| matrix::rat_vec(&r))).collect::<Result<_>>()?;
        let search = FaceSearch { gram: &gram, base: [e_row, k_row], walls: &wall_rows, max_active: n.saturating_sub(2) };
        // the maximizer of q on the whole slice, if strictly inside every wall
        if search.center_is_interior() {
            return Ok(true);
        }

        let hyperplane = orthogonal_complement(lat, &SublatticeBasis::new(n, alloc::vec![e.clone()])?)?;
        let mut rows: Vec<Vec<Int>> = Vec::with_capacity(active.len() + 1);
        for f in core::iter::once(&self.kappa).chain(active.iter().copied()) {
            let g = lat.pairing_row(f)?;
            rows.push(hyperplane.vectors().iter().map(|b| dot(b, &g)).collect());
        }
        if !strictly_feasible(rows) {
            return Ok(false);
        }
        Ok(search.positive_point_exists())
    }
}

fn dot(x: &[Int], y: &[Int]) -> Int {
    x.iter().zip(y).fold(Int::zero(), |s, (a, b)| s + a * b)
}

fn dot_rat(x: &[Rat], y: &[Rat]) -> Rat {
    x.iter().zip(y).fold(Rat::zero(), |s, (a, b)| s + a * b)
}

/// Decides whether the homogeneous system `{r · y > 0}` has a solution by
/// eliminating one variable at a time.
fn strictly_feasible(rows: Vec<Vec<Int>>) -> bool {
    let mut current: BTreeSet<Vec<Int>> = BTreeSet::new();
    for r in rows {
        match normalize(r) {
            Some(r) => {
                current.insert(r);
            }
            None => return false,
        }
    }
    let vars = current.iter().next().map_or(0, |r| r.len());
    for k in (0..vars).rev() {
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), BTreeSet::new());
        for r in current {
            if r[k].is_positive() {
                pos.push(r);
            } else if r[k].is_negative() {
                neg.push(r);
            } else {
                next.insert(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let (a, b) = (q[k].abs(), p[k].clone());
                let combined: Vec<Int> = p.iter().zip(q).map(|(x, y)| x * &a + y * &b).collect();
                match normalize(combined) {
                    Some(r) => {
                        next.insert(r);
                    }
                    None => return false,
                }
            }
        }
        current = next;
        if current.is_empty() {
            return true;
        }
    }
    current.is_empty()
}

/// Divides by the content; `None` for the zero row (the constraint `0 > 0`).
fn normalize(r: Vec<Int>) -> Option<Vec<Int>> {
    let g = gcd_all(&r);
    if g.is_zero() {
        return None;
    }
    Some(r.into_iter().map(|x| x / &g).collect())
}

/// Searches the faces of `{⟨x, e⟩ = 0, ⟨x, κ⟩ = 1, ⟨x, w⟩ ≥ 0}` for a
/// stationary point of `q` that is feasible with `q > 0`.
struct FaceSearch<'a> {
    gram: &'a Matrix<Rat>,
    base: [Vec<Rat>; 2],
    walls: &'a [Vec<Rat>],
    max_active: usize,
}

impl FaceSearch<'_> {
    fn center_is_interior(&self) -> bool {
        self.maximizer(&[]).is_some_and(|x| {
            self.walls.iter().all(|w| dot_rat(w, &x).is_positive()) && dot_rat(&x, &self.gram.mul_vec(&x)).is_positive()
        })
    }

    fn positive_point_exists(&self) -> bool {
        let mut chosen = Vec::new();
        self.visit(0, &mut chosen)
    }

    fn visit(&self, start: usize, chosen: &mut Vec<usize>) -> bool {
        if let Some(found) = self.stationary_point(chosen) {
            if found {
                return true;
            }
        } else if !chosen.is_empty() {
            // dependent or inconsistent constraints: supersets describe no new faces
            return false;
        }
        if chosen.len() == self.max_active {
            return false;
        }
        for j in start..self.walls.len() {
            chosen.push(j);
            let hit = self.visit(j + 1, chosen);
            chosen.pop();
            if hit {
                return true;
            }
        }
        false
    }

    /// `Some(true)` if the maximizer of `q` on the affine span of this face
    /// is feasible with `q > 0`, `Some(false)` if it exists but does not
    /// qualify, `None` if the active constraints are dependent.
    fn stationary_point(&self, chosen: &[usize]) -> Option<bool> {
        let x = self.maximizer(chosen)?;
        if self.walls.iter().any(|w| dot_rat(w, &x).is_negative()) {
            return Some(false);
        }
        Some(dot_rat(&x, &self.gram.mul_vec(&x)).is_positive())
    }

    /// Maximizer of `q` on the affine span of the face, `None` if the
    /// active constraints are dependent.
    fn maximizer(&self, chosen: &[usize]) -> Option<Vec<Rat>> {
        let n = self.gram.rows();
        let mut constraints: Vec<&Vec<Rat>> = self.base.iter().collect();
        constraints.extend(chosen.iter().map(|&j| &self.walls[j]));
        let m = constraints.len();
        let c = Matrix::from_fn(m, n, |i, j| constraints[i][j].clone());
        if matrix::rank(&c) < m {
            return None;
        }
        // [2G  Cᵀ] [x]   [0]
        // [C   0 ] [λ] = [r]
        let two = Rat::from_integer(Int::from(2));
        let kkt = Matrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
            (true, true) => &two * &self.gram[(i, j)],
            (true, false) => c[(j - n, i)].clone(),
            (false, true) => c[(i - n, j)].clone(),
            (false, false) => Rat::zero(),
        });
        let mut rhs = alloc::vec![Rat::zero(); n + m];
        rhs[n + 1] = Rat::one();
        let mut sol = matrix::solve(&kkt, &rhs)?;
        sol.truncate(n);
        Some(sol)
    }
}

/// `b - (⟨a, b⟩ / ⟨a, a⟩) a`, the component of `b` orthogonal to `a`.
pub fn project_perp(lat: &Lattice, a: &LatticeVector, b: &LatticeVector) -> Result<Vec<Rat>> {
    let aa = lat.inner(a, a)?;
    if aa.is_zero() {
        return Err(Error::IsotropicDivisor);
    }
    let ab = lat.inner(a, b)?;
    let t = Rat::new(ab, aa);
    Ok(a.iter().zip(b.iter()).map(|(x, y)| Rat::from_integer(y.clone()) - &t * Rat::from_integer(x.clone())).collect())
}
