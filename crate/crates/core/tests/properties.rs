use hyperlattice_core::cone::{project_perp, WallSystem};
use hyperlattice_core::enumerate::{enumerate_negative, find_isotropic, lambda_n_mod_ell, EnumerationQuery};
use hyperlattice_core::isometry::{adapted_basis, build_isometry, verify_isometry, GammaVector};
use hyperlattice_core::matrix::{self, Int, Matrix, Rat};
use hyperlattice_core::rank::{aut_rank, rank_upper_bound};
use hyperlattice_core::sublattice::{
    extend_by_identity, orthogonal_complement, overlattice_index, quotient_mod_isotropic, saturate,
    stabilizes_overlattice, RationalIsometry, SublatticeBasis,
};
use hyperlattice_core::{Lattice, LatticeVector, Signature};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn int(x: i64) -> Int {
    Int::from(x)
}

fn v(xs: &[i64]) -> LatticeVector {
    LatticeVector::from(xs)
}

fn sym_gram(n: usize, entries: &[i64]) -> Lattice {
    let mut k = 0;
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            g[i][j] = entries[k];
            g[j][i] = entries[k];
            k += 1;
        }
    }
    let rows: Vec<&[i64]> = g.iter().map(|r| r.as_slice()).collect();
    Lattice::from_rows(&rows).unwrap()
}

/// `-(BᵀB)` for an upper triangular `B` with positive diagonal.
fn negative_definite(n: usize, diag: &[i64], upper: &[i64]) -> Lattice {
    let mut k = 0;
    let b = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            int(diag[i])
        } else if i < j {
            k += 1;
            int(upper[k - 1])
        } else {
            Int::zero()
        }
    });
    Lattice::new((&b.transpose() * &b).map(|x| -x.clone())).unwrap()
}

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Matrix<Int> {
    let mut m: Vec<Vec<Int>> = Matrix::<Int>::identity(n).to_rows();
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let row_j = m[j].clone();
        for (a, b) in m[i].iter_mut().zip(&row_j) {
            *a += b * int(c);
        }
    }
    Matrix::from_rows(m, n).unwrap()
}

fn int_inverse(m: &Matrix<Int>) -> Matrix<Int> {
    matrix::to_integral(&matrix::inverse(&matrix::to_rational(m)).unwrap()).unwrap()
}

fn apply(m: &Matrix<Int>, x: &LatticeVector) -> LatticeVector {
    LatticeVector::new(m.mul_vec(x))
}

/// `U ⊕ N` in the basis given by the columns of `p`, with `ℓ` the first
/// isotropic vector of `U` and `W` spanned by the first `w` basis vectors
/// of `N`.
#[derive(Debug)]
struct Instance {
    lat: Lattice,
    ell: LatticeVector,
    w: SublatticeBasis,
}

fn instance(neg: &Lattice, ops: &[(usize, usize, i64)], w: usize) -> Instance {
    let raw = Lattice::hyperbolic_plane().direct_sum(neg);
    let n = raw.rank();
    let p = unimodular(n, ops);
    let p_inv = int_inverse(&p);
    let lat = raw.transformed(&p).unwrap();
    let ell = apply(&p_inv, &LatticeVector::unit(n, 0));
    let wv = (0..w).map(|i| apply(&p_inv, &LatticeVector::unit(n, 2 + i))).collect();
    Instance { lat, ell, w: SublatticeBasis::new(n, wv).unwrap() }
}

prop_compose! {
    fn small_vec(n: usize)(xs in prop::collection::vec(-4i64..=4, n)) -> LatticeVector {
        LatticeVector::from(xs.as_slice())
    }
}

prop_compose! {
    fn neg_def_lattice(max: usize)(k in 1..=max)
        (diag in prop::collection::vec(1i64..=2, k), upper in prop::collection::vec(-1i64..=1, k * k), k in Just(k))
        -> Lattice {
        negative_definite(k, &diag, &upper)
    }
}

prop_compose! {
    fn ops(n: usize)(ops in prop::collection::vec((0..n, 0..n, -2i64..=2), 0..10)) -> Vec<(usize, usize, i64)> {
        ops
    }
}

fn hyperbolic_case() -> impl Strategy<Value = (Instance, Vec<i64>)> {
    neg_def_lattice(4).prop_flat_map(|neg| {
        let k = neg.rank();
        let n = k + 2;
        (Just(neg), ops(n), 0..k).prop_flat_map(move |(neg, ops, w)| {
            let free = n - 2 - w;
            (Just(neg), Just(ops), Just(w), prop::collection::vec(-2i64..=2, free))
        })
    })
    .prop_map(|(neg, ops, w, coeffs)| (instance(&neg, &ops, w), coeffs))
}

fn gamma_of(ab: &hyperlattice_core::isometry::AdaptedBasis, coeffs: &[i64]) -> GammaVector {
    let c: Vec<Int> = coeffs.iter().map(|&x| int(x)).collect();
    GammaVector::from_coefficients(ab, &c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_is_symmetric_and_bilinear(
        (n, entries, x, y, z) in (1usize..=5).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(-3i64..=3, n * (n + 1) / 2),
            small_vec(n), small_vec(n), small_vec(n),
        ))
    ) {
        let lat = sym_gram(n, &entries);
        prop_assert_eq!(lat.inner(&x, &y).unwrap(), lat.inner(&y, &x).unwrap());
        let lhs = lat.inner(&(&x + &y), &z).unwrap();
        prop_assert_eq!(lhs, lat.inner(&x, &z).unwrap() + lat.inner(&y, &z).unwrap());
        let three = x.scale(&int(3));
        prop_assert_eq!(lat.inner(&three, &z).unwrap(), lat.inner(&x, &z).unwrap() * int(3));
    }

    #[test]
    fn signature_is_a_unimodular_invariant(
        (n, entries, ops) in (1usize..=5).prop_flat_map(|n| (
            Just(n), prop::collection::vec(-3i64..=3, n * (n + 1) / 2), ops(n),
        ))
    ) {
        let lat = sym_gram(n, &entries);
        let other = lat.transformed(&unimodular(n, &ops)).unwrap();
        prop_assert_eq!(lat.signature(), other.signature());
        prop_assert_eq!(lat.determinant(), other.determinant());
    }

    #[test]
    fn restricted_negative_form_is_negative_definite(
        (neg, vs) in neg_def_lattice(4).prop_flat_map(|neg| {
            let k = neg.rank();
            (Just(neg), prop::collection::vec(small_vec(k), 1..=k))
        })
    ) {
        let k = vs.len();
        prop_assume!(hyperlattice_core::lattice::independent_rank(&vs, neg.rank()) == k);
        prop_assert_eq!(neg.restrict_form(&vs).unwrap().signature(), Signature::new(0, k, 0));
    }

    #[test]
    fn complement_is_saturated(
        (n, entries, vs) in (2usize..=5).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(-3i64..=3, n * (n + 1) / 2),
            prop::collection::vec(small_vec(n), 1..n),
        ))
    ) {
        let lat = sym_gram(n, &entries);
        prop_assume!(hyperlattice_core::lattice::independent_rank(&vs, n) == vs.len());
        let sub = SublatticeBasis::new(n, vs).unwrap();
        let comp = orthogonal_complement(&lat, &sub).unwrap();
        prop_assert_eq!(saturate(&lat, &comp).unwrap().normalized(), comp.normalized());
        for c in comp.vectors() {
            for s in sub.vectors() {
                prop_assert!(lat.inner(c, s).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn quotient_by_isotropic_is_negative_definite((inst, _) in hyperbolic_case()) {
        let q = quotient_mod_isotropic(&inst.lat, &inst.ell).unwrap();
        let n = inst.lat.rank();
        prop_assert_eq!(q.signature(), Signature::new(0, n - 2, 0));
    }

    #[test]
    fn index_squared_is_determinant_ratio(
        (n, entries, vs) in (1usize..=4).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(-3i64..=3, n * (n + 1) / 2),
            prop::collection::vec(small_vec(n), n),
        ))
    ) {
        let lat = sym_gram(n, &entries);
        prop_assume!(!lat.determinant().is_zero());
        prop_assume!(hyperlattice_core::lattice::independent_rank(&vs, n) == n);
        let sub = SublatticeBasis::new(n, vs.clone()).unwrap();
        let index = overlattice_index(&lat, &sub).unwrap();
        let ratio = Rat::new(lat.restrict_form(&vs).unwrap().determinant(), lat.determinant());
        prop_assert_eq!(Rat::from_integer(&index * &index), ratio);
    }

    #[test]
    fn isometry_invariants((inst, coeffs) in hyperbolic_case(), other in prop::collection::vec(-2i64..=2, 0..6)) {
        let ab = adapted_basis(&inst.lat, &inst.ell, &inst.w).unwrap();
        let gamma = gamma_of(&ab, &coeffs);
        let g = build_isometry(&ab, &gamma).unwrap();
        prop_assert!(verify_isometry(&inst.lat, g.matrix()));
        prop_assert_eq!(g.apply(&inst.ell).unwrap(), inst.ell.clone());
        for w in inst.w.vectors() {
            prop_assert_eq!(&g.apply(w).unwrap(), w);
        }
        prop_assert_eq!(g.is_identity(), gamma.is_zero());

        let mut second: Vec<i64> = other.iter().copied().cycle().take(coeffs.len()).collect();
        if other.is_empty() { second = vec![0; coeffs.len()]; }
        let delta = gamma_of(&ab, &second);
        let h = build_isometry(&ab, &delta).unwrap();
        let sum = build_isometry(&ab, &gamma.add(&delta)).unwrap();
        prop_assert_eq!(&sum, &g.compose(&h));
        prop_assert_eq!(&sum, &h.compose(&g));
    }

    #[test]
    fn isometries_conserve_the_form_and_grow_quadratically((inst, coeffs) in hyperbolic_case(), x in small_vec(6)) {
        let n = inst.lat.rank();
        let x = LatticeVector::new(x.iter().cycle().take(n).cloned().collect());
        let ab = adapted_basis(&inst.lat, &inst.ell, &inst.w).unwrap();
        let gamma = gamma_of(&ab, &coeffs);
        let q = inst.lat.square(&x).unwrap();
        let coords: Vec<Vec<Int>> = (0..4u64)
            .map(|m| {
                let g = build_isometry(&ab, &gamma.scale(&Int::from(m))).unwrap();
                let y = g.apply(&x).unwrap();
                assert_eq!(inst.lat.square(&y).unwrap(), q);
                ab.coordinates(&y).unwrap()
            })
            .collect();
        let second = |i: usize| &coords[2][i] - &coords[1][i] * int(2) + &coords[0][i];
        let third = |i: usize| &coords[3][i] - &coords[2][i] * int(3) + &coords[1][i] * int(3) - &coords[0][i];
        for i in 0..n {
            prop_assert!(third(i).is_zero());
            if i > 0 {
                prop_assert!(second(i).is_zero());
            }
        }
        // leading term of the ℓ coordinate: -4 a β γ A⁻¹ γᵀ
        let a_inv = matrix::inverse(&matrix::to_rational(ab.gram_u())).unwrap();
        let gr = matrix::rat_vec(gamma.entries());
        let quad = gr.iter().zip(a_inv.mul_vec(&gr)).fold(Rat::zero(), |s, (x, y)| s + x * y);
        let beta = Rat::from_integer(coords[0][n - 1].clone());
        let expected = Rat::from_integer(ab.a() * int(-4)) * beta * quad;
        prop_assert_eq!(Rat::from_integer(second(0)), expected);
        if q.is_positive() && !gamma.is_zero() {
            prop_assert!(!second(0).is_zero());
        }
    }

    #[test]
    fn faithful_on_multiples((inst, coeffs) in hyperbolic_case(), m in 1i64..5) {
        let ab = adapted_basis(&inst.lat, &inst.ell, &inst.w).unwrap();
        let gamma = gamma_of(&ab, &coeffs);
        let g = build_isometry(&ab, &gamma).unwrap();
        let gm = build_isometry(&ab, &gamma.scale(&int(m))).unwrap();
        prop_assert_eq!(&g.pow(m as u64), &gm);
        prop_assert_eq!(gm.is_identity(), gamma.is_zero());
        prop_assert!(g.compose(&g.inverse()).is_identity());
    }

    #[test]
    fn face_test_depends_only_on_the_hyperplane(
        (kappa_shift, walls, e, k) in (
            -2i64..=2,
            prop::collection::vec(small_vec(3), 0..4),
            small_vec(3),
            prop::sample::select(vec![-3i64, -2, -1, 2, 3]),
        )
    ) {
        let lat = hyperlattice_core::named::u_plus_m2();
        let kappa = v(&[2, 3, kappa_shift]);
        let walls: Vec<LatticeVector> =
            walls.into_iter().filter(|w| lat.square(w).unwrap().is_negative()).collect();
        let ws = WallSystem::new(&lat, kappa, walls).unwrap();
        prop_assume!(!e.is_zero());
        let base = ws.mbm_face_test(&e).unwrap();
        prop_assert_eq!(ws.mbm_face_test(&e.scale(&int(k))).unwrap(), base);
    }

    #[test]
    fn projection_is_orthogonal(
        (n, entries, a, b) in (1usize..=5).prop_flat_map(|n| (
            Just(n), prop::collection::vec(-3i64..=3, n * (n + 1) / 2), small_vec(n), small_vec(n),
        ))
    ) {
        let lat = sym_gram(n, &entries);
        prop_assume!(!lat.square(&a).unwrap().is_zero());
        let p = project_perp(&lat, &a, &b).unwrap();
        prop_assert!(lat.inner_rat(&p, &matrix::rat_vec(&a)).is_zero());
    }

    #[test]
    fn enumeration_matches_box_search(neg in neg_def_lattice(3), s in 1i64..=6) {
        let query = EnumerationQuery::new(int(-s - 1), Int::zero()).unwrap();
        let found = enumerate_negative(&neg, &query).unwrap();
        for x in &found {
            prop_assert!(found.binary_search(&-x).is_ok());
        }
        let mut dedup = found.clone();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), found.len());
        prop_assert_eq!(found, box_oracle(&neg, &query, s + 1));
    }

    #[test]
    fn quotient_classes_are_distinct((inst, _) in hyperbolic_case(), bound in 1i64..=5) {
        let reps = lambda_n_mod_ell(&inst.lat, &inst.ell, &int(bound)).unwrap();
        let q = quotient_mod_isotropic(&inst.lat, &inst.ell).unwrap();
        for (i, r) in reps.iter().enumerate() {
            let sq = inst.lat.square(r).unwrap();
            prop_assert!(sq.is_negative() && sq > int(-bound));
            prop_assert!(inst.lat.inner(r, &inst.ell).unwrap().is_zero());
            for k in [-2i64, 1, 3] {
                let shifted = r + &inst.ell.scale(&int(k));
                prop_assert_eq!(&q.reduce(&shifted), r);
            }
            for s in &reps[i + 1..] {
                prop_assert!(q.project(&(r - s)).map_or(true, |c| c.iter().any(|x| !x.is_zero())));
            }
        }
    }

    #[test]
    fn isotropic_search_output_is_valid(
        (n, entries) in (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(-2i64..=2, n * (n + 1) / 2)))
    ) {
        let lat = sym_gram(n, &entries);
        for x in find_isotropic(&lat, 2) {
            prop_assert!(lat.square(&x).unwrap().is_zero());
            prop_assert!(x.is_primitive());
            prop_assert!(x.leading_sign() > 0);
        }
    }

    #[test]
    fn rank_is_a_basis_invariant(
        (neg, ops, roots) in (1usize..=3).prop_flat_map(|k| (Just(k), 0..=k)).prop_flat_map(|(k, r)| {
            let n = 2 + k;
            (Just(Lattice::diagonal(&vec![-2; k])), ops(n), Just(r))
        })
    ) {
        let k = neg.rank();
        let n = k + 2;
        let raw = Lattice::hyperbolic_plane().direct_sum(&neg);
        let mut kappa = vec![int(3), int(3)];
        kappa.extend((0..k).map(|_| int(-1)));
        let kappa = LatticeVector::new(kappa);
        let walls: Vec<LatticeVector> = (0..roots).map(|i| LatticeVector::unit(n, 2 + i)).collect();
        let ell = LatticeVector::unit(n, 0);
        let ws = WallSystem::new(&raw, kappa.clone(), walls.clone()).unwrap();
        let base = aut_rank(&ws, &ell, &walls).unwrap();
        prop_assert_eq!(base.rank, n - 1 - roots - 1);
        let bound = rank_upper_bound(&raw).unwrap();
        prop_assert!(base.rank <= bound);
        prop_assert_eq!(base.rank == bound, base.mbm_circ_used.is_empty());

        let p = unimodular(n, &ops);
        let p_inv = int_inverse(&p);
        let lat = raw.transformed(&p).unwrap();
        let moved = |x: &LatticeVector| apply(&p_inv, x);
        let ws2 = WallSystem::new(&lat, moved(&kappa), walls.iter().map(moved).collect()).unwrap();
        let other = aut_rank(&ws2, &moved(&ell), &walls.iter().map(moved).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(other.rank, base.rank);
        prop_assert_eq!(other.dim_w, base.dim_w);
    }
}

fn box_oracle(lat: &Lattice, query: &EnumerationQuery, bound: i64) -> Vec<LatticeVector> {
    // |xᵢ|² ≤ bound · (Q⁻¹)ᵢᵢ for Q = -G
    let n = lat.rank();
    let q = matrix::to_rational(lat.gram()).map(|x| -x.clone());
    let inv = matrix::inverse(&q).unwrap();
    let size = (0..n)
        .map(|i| {
            let t = (&inv[(i, i)] * Rat::from_integer(int(bound))).floor().to_integer();
            let mut r = 0i64;
            while int((r + 1) * (r + 1)) <= t {
                r += 1;
            }
            r
        })
        .max()
        .unwrap_or(0);
    let mut out = Vec::new();
    let mut x = vec![-size; n];
    loop {
        let c = v(&x);
        if query.contains(&lat.square(&c).unwrap()) {
            out.push(c);
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

/// Products of reflections that preserve `D4 = {x ∈ Z⁴ : Σ xᵢ even}`.
fn d4_word(form: &Lattice, word: &[usize]) -> RationalIsometry {
    let pool: [[i64; 4]; 7] = [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [1, 1, 0, 0],
        [1, -1, 0, 0],
        [0, 1, 1, 0],
        [1, 1, 1, 1],
        [1, -1, 1, -1],
    ];
    let mut m = Matrix::<Rat>::identity(4);
    let gram = matrix::to_rational(form.gram());
    for &i in word {
        let r = matrix::rat_vec(&v(&pool[i % pool.len()]));
        let gr = gram.mul_vec(&r);
        let rr = r.iter().zip(&gr).fold(Rat::zero(), |s, (a, b)| s + a * b);
        if rr.is_zero() {
            continue;
        }
        let two = Rat::from_integer(int(2));
        let s = Matrix::from_fn(4, 4, |a, b| {
            let id = if a == b { Rat::one() } else { Rat::zero() };
            id - &two * &r[a] * &gr[b] / &rr
        });
        m = &s * &m;
    }
    RationalIsometry::new(form, m).unwrap()
}

fn d4_sub() -> SublatticeBasis {
    SublatticeBasis::new(4, vec![v(&[1, 1, 0, 0]), v(&[1, -1, 0, 0]), v(&[0, 1, -1, 0]), v(&[0, 0, 1, -1])]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stabilizer_is_closed(
        neg_last in any::<bool>(),
        g in prop::collection::vec(0usize..7, 0..5),
        h in prop::collection::vec(0usize..7, 0..5),
    ) {
        let form = if neg_last { Lattice::diagonal(&[1, 1, 1, -1]) } else { Lattice::diagonal(&[1, 1, 1, 1]) };
        let sub = d4_sub();
        let g = d4_word(&form, &g);
        let h = d4_word(&form, &h);
        let gh = RationalIsometry::new(&form, g.matrix() * h.matrix()).unwrap();
        let g_inv = RationalIsometry::new(&form, matrix::inverse(g.matrix()).unwrap()).unwrap();
        let (sg, sh) = (stabilizes_overlattice(&form, &sub, &g).unwrap(), stabilizes_overlattice(&form, &sub, &h).unwrap());
        if sg && sh {
            prop_assert!(stabilizes_overlattice(&form, &sub, &gh).unwrap());
        }
        prop_assert_eq!(stabilizes_overlattice(&form, &sub, &g_inv).unwrap(), sg);
        prop_assert_eq!(sg, g.integral_matrix().is_some());
    }

    #[test]
    fn small_glue_extends_signs(
        (n, entries, vs, sign) in (2usize..=4).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(-3i64..=3, n * (n + 1) / 2),
            prop::collection::vec(small_vec(n), 1..n),
            any::<bool>(),
        ))
    ) {
        let lat = sym_gram(n, &entries);
        prop_assume!(!lat.determinant().is_zero());
        prop_assume!(hyperlattice_core::lattice::independent_rank(&vs, n) == vs.len());
        let sub1 = saturate(&lat, &SublatticeBasis::new(n, vs).unwrap()).unwrap();
        prop_assume!(!lat.restrict_form(sub1.vectors()).unwrap().determinant().is_zero());
        let sub2 = orthogonal_complement(&lat, &sub1).unwrap();
        let mut all = sub1.vectors().to_vec();
        all.extend(sub2.vectors().iter().cloned());
        let index = overlattice_index(&lat, &SublatticeBasis::new(n, all).unwrap()).unwrap();
        let k = sub1.rank();
        let g1 = if sign { Matrix::<Int>::identity(k) } else { Matrix::<Int>::identity(k).map(|x| -x.clone()) };
        let glued = extend_by_identity(&lat, &sub1, &g1, &sub2).unwrap();
        if index <= int(2) {
            prop_assert!(glued.integral);
        }
        prop_assert_eq!(glued.integral, glued.isometry.denominator().is_one());
    }
}

#[test]
fn nef_cone_is_convex() {
    let lat = hyperlattice_core::named::u_plus_m2();
    let ws = WallSystem::new(&lat, v(&[1, 2, 0]), vec![v(&[1, -1, 1]), v(&[1, -1, -1]), v(&[0, 0, 1])]).unwrap();
    let mut nef = Vec::new();
    for a in -3..=6 {
        for b in -3..=6 {
            for c in -3..=3 {
                let x = v(&[a, b, c]);
                if ws.is_nef(&x).unwrap() {
                    nef.push(x);
                }
            }
        }
    }
    assert!(nef.len() > 10);
    for x in &nef {
        for y in &nef {
            assert!(ws.is_nef(&(x + y)).unwrap());
        }
    }
}

#[test]
fn swapping_glue_classes_is_not_integral() {
    // index 2 glue (f1 + f3)/2 with f1, f2 of square 2 and f3 of square -2;
    // swapping f1 and f2 moves the glue vector out of the lattice
    let lat = Lattice::from_rows(&[&[0, 0, -1], &[0, 2, 0], &[-1, 0, -2]]).unwrap();
    let f1 = v(&[2, 0, -1]);
    let f2 = v(&[0, 1, 0]);
    let f3 = v(&[0, 0, 1]);
    assert_eq!(lat.square(&f1).unwrap(), int(2));
    let sub1 = SublatticeBasis::new(3, vec![f1.clone(), f2.clone()]).unwrap();
    let sub2 = SublatticeBasis::new(3, vec![f3.clone()]).unwrap();
    let index = overlattice_index(&lat, &SublatticeBasis::new(3, vec![f1, f2, f3]).unwrap()).unwrap();
    assert_eq!(index, int(2));
    let swap = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]], 2).unwrap();
    assert!(!extend_by_identity(&lat, &sub1, &swap, &sub2).unwrap().integral);
}

#[test]
fn distant_walls_keep_their_side_along_orbits() {
    let lat = hyperlattice_core::named::u_plus_m2();
    let ell = v(&[1, 0, 0]);
    let ab = adapted_basis(&lat, &ell, &SublatticeBasis::empty(3)).unwrap();
    let g = build_isometry(&ab, &GammaVector::new(&ab, vec![int(-2)]).unwrap()).unwrap();
    let x = v(&[1, 1, 0]);
    for e in [v(&[1, -1, 1]), v(&[-1, 1, 1]), v(&[2, -1, 1]), v(&[1, -3, 2])] {
        let le = lat.inner(&ell, &e).unwrap();
        assert!(!le.is_zero());
        let mut y = g.pow(40).apply(&x).unwrap();
        for _ in 0..20 {
            let next = g.apply(&y).unwrap();
            assert_eq!(lat.inner(&next, &e).unwrap().signum(), le.signum());
            y = next;
        }
    }
}
