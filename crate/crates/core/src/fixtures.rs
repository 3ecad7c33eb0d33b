//! Small lattices, isometries and embeddings used throughout the tests and
//! bundled with the command-line tool.

use num_bigint::BigInt;

use crate::lattice::{Embedding, Isometry, Lattice};
use crate::matrix::IntMatrix;

fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
    IntMatrix::from_rows(rows).expect("fixture matrix")
}

/// `U`, Gram `[[0,1],[1,0]]`.
pub fn hyperbolic_plane() -> Lattice {
    Lattice::from_rows(vec![vec![0, 1], vec![1, 0]], "U").expect("fixture")
}

/// `U(2)`, which has no vectors of norm −2.
pub fn scaled_hyperbolic_plane() -> Lattice {
    Lattice::from_rows(vec![vec![0, 2], vec![2, 0]], "U(2)").expect("fixture")
}

/// `U ⊕ ⟨−2⟩`
pub fn hyperbolic_plus_a1() -> Lattice {
    Lattice::from_rows(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -2]], "U+<-2>").expect("fixture")
}

/// Euclidean `ℤ²`.
pub fn euclidean_plane() -> Lattice {
    Lattice::from_rows(vec![vec![1, 0], vec![0, 1]], "Z2").expect("fixture")
}

/// `U ⊕ A₂(−1)`, signature `(1, 3)`.
pub fn salem_lattice() -> Lattice {
    Lattice::from_rows(
        vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, -2, 1], vec![0, 0, 1, -2]],
        "U+A2(-1)",
    )
    .expect("fixture")
}

/// Isometry of [`salem_lattice`] with characteristic polynomial
/// `x⁴ − x³ − x² − x + 1`.
pub fn salem_isometry() -> Isometry {
    salem_lattice()
        .verify_isometry(&m(vec![
            vec![0, 1, 0, 0],
            vec![1, 1, -1, 2],
            vec![0, -1, 1, -1],
            vec![0, -1, 0, -1],
        ]))
        .expect("fixture")
}

/// Index-2 sublattice of [`salem_lattice`].
pub fn salem_embedding() -> Embedding {
    Embedding::new(&salem_lattice(), &IntMatrix::diagonal(&[2, 1, 1, 1].map(BigInt::from)))
        .expect("fixture")
}

/// Coordinate swap on `U`: the reflection in the root `(1, −1)`.
pub fn hyperbolic_swap() -> Isometry {
    hyperbolic_plane().verify_isometry(&m(vec![vec![0, 1], vec![1, 0]])).expect("fixture")
}

pub fn euclidean_swap() -> Isometry {
    euclidean_plane().verify_isometry(&m(vec![vec![0, 1], vec![1, 0]])).expect("fixture")
}

/// `diag(1, 2)` in `ℤ²`.
pub fn euclidean_embedding() -> Embedding {
    Embedding::new(&euclidean_plane(), &m(vec![vec![1, 0], vec![0, 2]])).expect("fixture")
}

// −(Cartan matrix) of a simply laced diagram on `nodes` vertices.
fn negative_cartan(nodes: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut g = IntMatrix::scalar(nodes, BigInt::from(-2));
    for &(i, j) in edges {
        g.set(i, j, BigInt::from(1));
        g.set(j, i, BigInt::from(1));
    }
    g
}

// T-shaped diagram with arms of the given lengths (counted without the
// shared centre node): E8 is (1, 2, 4), E10 is (1, 2, 6).
fn t_diagram(arms: [usize; 3]) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    let mut next = 1;
    for len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    (next, edges)
}

/// `E10(−1) ⊕ E8(−1) ⊕ A2(−1) ⊕ A2(−1)`: even, rank 22, signature `(1, 21)`,
/// with the simple roots of the combined diagram as basis.
pub fn rank22_lattice() -> Lattice {
    let (n10, e10) = t_diagram([1, 2, 6]);
    let (n8, e8) = t_diagram([1, 2, 4]);
    let a2 = negative_cartan(2, &[(0, 1)]);
    let blocks = [negative_cartan(n10, &e10), negative_cartan(n8, &e8), a2.clone(), a2];
    Lattice::new(IntMatrix::block_diagonal(&blocks), Some("E10+E8+A2+A2(-1)".into())).expect("fixture")
}

/// Product of all 22 simple reflections of [`rank22_lattice`]. On the E10
/// block this Coxeter element has Lehmer's polynomial as characteristic
/// polynomial; the other blocks contribute cyclotomic factors.
pub fn rank22_isometry() -> Isometry {
    let l = rank22_lattice();
    let g = l.gram();
    let n = l.rank();
    let mut acc = IntMatrix::identity(n);
    for i in 0..n {
        // s_i = I + e_i·(G e_i)ᵀ
        let mut s = IntMatrix::identity(n);
        for j in 0..n {
            let v = s.get(i, j) + g.get(i, j);
            s.set(i, j, v);
        }
        acc = &acc * &s;
    }
    l.verify_isometry(&acc).expect("fixture")
}

/// Index-2 sublattice of [`rank22_lattice`]: the first basis vector doubled.
pub fn rank22_embedding() -> Embedding {
    let mut d = vec![BigInt::from(1); 22];
    d[0] = BigInt::from(2);
    Embedding::new(&rank22_lattice(), &IntMatrix::diagonal(&d)).expect("fixture")
}
