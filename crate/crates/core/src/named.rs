//! Frequently used lattices: root lattices and the small hyperbolic examples.

use alloc::vec::Vec;

use crate::lattice::Lattice;

fn from_edges(n: usize, edges: &[(usize, usize)]) -> Lattice {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect()).collect();
    for &(a, b) in edges {
        rows[a][b] = -1;
        rows[b][a] = -1;
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Lattice::from_rows(&refs).expect("Cartan matrices are symmetric")
}

/// Positive definite root lattice `A_n` (Cartan matrix in the simple-root basis).
pub fn a(n: usize) -> Lattice {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    from_edges(n, &edges)
}

/// Positive definite `D_n`, `n >= 4`.
pub fn d(n: usize) -> Lattice {
    assert!(n >= 4, "D_n needs n >= 4");
    let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((n - 3, n - 1));
    from_edges(n, &edges)
}

/// Positive definite `E_n` for `n` in 6..=8, Bourbaki numbering.
pub fn e(n: usize) -> Lattice {
    assert!((6..=8).contains(&n), "E_n needs 6 <= n <= 8");
    // 1-3-4-5-...-n with 2 attached to 4 (zero-based below)
    let mut edges = alloc::vec![(0, 2), (1, 3), (2, 3)];
    edges.extend((3..n - 1).map(|i| (i, i + 1)));
    from_edges(n, &edges)
}

pub fn e8_negative() -> Lattice {
    e(8).scaled(-1)
}

/// `U ⊕ ⟨-2⟩`, the smallest hyperbolic lattice with a nontrivial parabolic isometry.
pub fn u_plus_m2() -> Lattice {
    Lattice::hyperbolic_plane().direct_sum(&Lattice::diagonal(&[-2]))
}

pub fn u_plus_e8_negative() -> Lattice {
    Lattice::hyperbolic_plane().direct_sum(&e8_negative())
}
