//! Hermite and Smith normal forms, symmetric LDLᵀ factorization and integer
//! linear systems.
//!
//! Hermite convention: `H = U·M` with `U` unimodular. `H` is in row echelon
//! form, every pivot is positive, entries above a pivot lie in `[0, pivot)`
//! and zero rows come last. Pivot columns are therefore fully reduced, which
//! makes the form unique for a given row lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{floor_div, IntMatrix, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of the pivot in each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn combine_rows(a: &mut [Vec<BigInt>], r: usize, i: usize, coeffs: [&BigInt; 4]) {
    // (row_r, row_i) <- (c0*row_r + c1*row_i, c2*row_r + c3*row_i)
    let [c0, c1, c2, c3] = coeffs;
    for j in 0..a[r].len() {
        let x = &a[r][j];
        let y = &a[i][j];
        let nr = c0 * x + c1 * y;
        let ni = c2 * x + c3 * y;
        a[r][j] = nr;
        a[i][j] = ni;
    }
}

fn sub_multiple(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    for j in 0..a[target].len() {
        let v = &a[src][j] * q;
        a[target][j] -= v;
    }
}

/// Hermite normal form with transform, `H = U·M`.
pub fn hnf(m: &IntMatrix) -> HermiteForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.to_rows();
    let mut u = IntMatrix::identity(rows).to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..cols {
        if r == rows {
            break;
        }
        for i in (r + 1)..rows {
            if a[i][j].is_zero() {
                continue;
            }
            if a[r][j].is_zero() {
                a.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let ext = a[r][j].extended_gcd(&a[i][j]);
            let (mut g, mut x, mut y) = (ext.gcd, ext.x, ext.y);
            if g.is_negative() {
                g = -g;
                x = -x;
                y = -y;
            }
            let p = &a[r][j] / &g;
            let q = &a[i][j] / &g;
            let nq = -q;
            combine_rows(&mut a, r, i, [&x, &y, &nq, &p]);
            combine_rows(&mut u, r, i, [&x, &y, &nq, &p]);
        }
        if a[r][j].is_zero() {
            continue;
        }
        if a[r][j].is_negative() {
            for v in a[r].iter_mut().chain(u[r].iter_mut()) {
                *v = -&*v;
            }
        }
        let pivot = a[r][j].clone();
        for k in 0..r {
            let q = floor_div(&a[k][j], &pivot);
            if !q.is_zero() {
                sub_multiple(&mut a, k, r, &q);
                sub_multiple(&mut u, k, r, &q);
            }
        }
        pivots.push(j);
        r += 1;
    }
    HermiteForm {
        h: IntMatrix::from_rows(a).expect("shape preserved"),
        u: IntMatrix::from_rows(u).expect("shape preserved"),
        pivots,
    }
}

/// Checks the Hermite normal form predicate directly.
pub fn is_hermite(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let row = h.row(i);
        match row.iter().position(|x| !x.is_zero()) {
            None => seen_zero_row = true,
            Some(p) => {
                if seen_zero_row || last_pivot.is_some_and(|lp| p <= lp) {
                    return false;
                }
                let pivot = &row[p];
                if !pivot.is_positive() {
                    return false;
                }
                for k in 0..i {
                    let e = h.get(k, p);
                    if e.is_negative() || e >= pivot {
                        return false;
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

/// Elementary divisors `d_1 | d_2 | …` of `m` (Smith normal form diagonal),
/// including trailing zeros for rank-deficient input.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.rows().min(m.cols());
    let mut a = m.clone();
    loop {
        a = hnf(&a).h;
        if is_diagonal(&a) {
            break;
        }
        a = hnf(&a.transpose()).h.transpose();
        if is_diagonal(&a) {
            break;
        }
    }
    let mut d: Vec<BigInt> = (0..n).map(|i| a.get(i, i).abs()).collect();
    // enforce the divisibility chain
    for i in 0..n {
        for j in (i + 1)..n {
            if d[i].is_zero() && !d[j].is_zero() {
                d.swap(i, j);
            }
            if d[i].is_zero() {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = if d[j].is_zero() { BigInt::zero() } else { d[i].lcm(&d[j]) };
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

fn is_diagonal(a: &IntMatrix) -> bool {
    (0..a.rows()).all(|i| (0..a.cols()).all(|j| i == j || a.get(i, j).is_zero()))
}

/// Symmetric factorization `Pᵀ·G·P = L·diag(D)·Lᵀ`.
///
/// `P` is a symmetric permutation whenever a nonzero diagonal pivot exists.
/// When every remaining diagonal entry vanishes, `P` also adds one basis
/// vector to another (pivot `2·g_ij ≠ 0`), so in general `P` is unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ldl {
    pub l: RatMatrix,
    pub d: Vec<BigRational>,
    pub p: IntMatrix,
}

impl Ldl {
    /// `Pᵀ·G·P − L·D·Lᵀ`, which is zero for a correct factorization.
    pub fn residual(&self, g: &IntMatrix) -> RatMatrix {
        let n = self.d.len();
        let pgp = self.p.congruence(g).to_rational();
        let mut dl = self.l.transpose();
        for i in 0..n {
            for j in 0..n {
                let v = dl.get(i, j) * &self.d[i];
                dl.set(i, j, v);
            }
        }
        let ldl = &self.l * &dl;
        let mut out = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, pgp.get(i, j) - ldl.get(i, j));
            }
        }
        out
    }
}

pub fn ldl(g: &IntMatrix) -> Result<Ldl> {
    let n = g.require_square()?;
    if let Some((row, col)) = g.first_asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let mut s = g.to_rational();
    let mut l = RatMatrix::identity(n);
    let mut p = IntMatrix::identity(n);
    let mut d = Vec::with_capacity(n);
    for k in 0..n {
        if s.get(k, k).is_zero() {
            if let Some(i) = ((k + 1)..n).find(|&i| !s.get(i, i).is_zero()) {
                swap_indices(&mut s, &mut l, &mut p, k, i);
            } else {
                let Some((i, j)) = ((k..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))))
                    .find(|&(i, j)| !s.get(i, j).is_zero())
                else {
                    return Err(Error::Degenerate(format!("trailing {}x{} block is zero", n - k, n - k)));
                };
                if i != k {
                    swap_indices(&mut s, &mut l, &mut p, k, i);
                }
                add_index(&mut s, &mut l, &mut p, k, j);
            }
        }
        let pivot = s.get(k, k).clone();
        for i in (k + 1)..n {
            l.set(i, k, s.get(i, k) / &pivot);
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = s.get(i, j) - s.get(i, k) * s.get(k, j) / &pivot;
                s.set(i, j, v);
            }
        }
        for i in (k + 1)..n {
            s.set(i, k, BigRational::zero());
            s.set(k, i, BigRational::zero());
        }
        d.push(pivot);
    }
    Ok(Ldl { l, d, p })
}

// Swap basis vectors a and b (a < b, both in the active block).
fn swap_indices(s: &mut RatMatrix, l: &mut RatMatrix, p: &mut IntMatrix, a: usize, b: usize) {
    let n = s.rows();
    for j in 0..n {
        let (x, y) = (s.get(a, j).clone(), s.get(b, j).clone());
        s.set(a, j, y);
        s.set(b, j, x);
    }
    for i in 0..n {
        let (x, y) = (s.get(i, a).clone(), s.get(i, b).clone());
        s.set(i, a, y);
        s.set(i, b, x);
    }
    for j in 0..a {
        let (x, y) = (l.get(a, j).clone(), l.get(b, j).clone());
        l.set(a, j, y);
        l.set(b, j, x);
    }
    for i in 0..n {
        let (x, y) = (p.get(i, a).clone(), p.get(i, b).clone());
        p.set(i, a, y);
        p.set(i, b, x);
    }
}

// Replace basis vector a by a + b (both in the active block).
fn add_index(s: &mut RatMatrix, l: &mut RatMatrix, p: &mut IntMatrix, a: usize, b: usize) {
    let n = s.rows();
    for j in 0..n {
        let v = s.get(a, j) + s.get(b, j);
        s.set(a, j, v);
    }
    for i in 0..n {
        let v = s.get(i, a) + s.get(i, b);
        s.set(i, a, v);
    }
    for j in 0..a {
        let v = l.get(a, j) + l.get(b, j);
        l.set(a, j, v);
    }
    for i in 0..n {
        let v = p.get(i, a) + p.get(i, b);
        p.set(i, a, v);
    }
}

/// Integer solutions of a linear system, `particular + Σ kᵢ·basisᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineSolution {
    pub particular: Vec<BigInt>,
    pub basis: Vec<Vec<BigInt>>,
}

/// Solves `a·x = c` over the integers.
pub fn solve_linear_diophantine(a: &[BigInt], c: &BigInt) -> Result<DiophantineSolution> {
    if a.iter().all(Zero::is_zero) {
        return Err(Error::Invalid("coefficient vector is zero".into()));
    }
    let row = IntMatrix::from_rows(vec![a.to_vec()])?;
    solve_diophantine_system(&row, std::slice::from_ref(c))
}

/// Solves `A·x = c` over the integers for a `k × r` matrix `A`.
pub fn solve_diophantine_system(a: &IntMatrix, c: &[BigInt]) -> Result<DiophantineSolution> {
    if c.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} right-hand sides for {} equations",
            c.len(),
            a.rows()
        )));
    }
    // U·Aᵀ = H, so A·Uᵀ = Hᵀ and x = Uᵀ·y turns the system into Hᵀ·y = c.
    let form = hnf(&a.transpose());
    let particular = particular_solution(&form, c).ok_or(Error::NoSolution)?;
    Ok(DiophantineSolution { particular, basis: kernel_rows(&form) })
}

/// Integer kernel basis of `A`, read from the Hermite form of `Aᵀ`.
pub(crate) fn kernel_rows(form: &HermiteForm) -> Vec<Vec<BigInt>> {
    (form.rank()..form.u.rows()).map(|t| form.u.row(t).to_vec()).collect()
}

/// One solution of `A·x = c` given the Hermite form of `Aᵀ`.
pub(crate) fn particular_solution(form: &HermiteForm, c: &[BigInt]) -> Option<Vec<BigInt>> {
    let equations = form.h.cols();
    let mut y: Vec<BigInt> = Vec::with_capacity(form.rank());
    let mut next_eq = 0;
    for (t, &col) in form.pivots.iter().enumerate() {
        // equations before this pivot column involve only y_0..y_{t-1}
        while next_eq < col {
            if !residual_eq(&form.h, &y, c, next_eq).is_zero() {
                return None;
            }
            next_eq += 1;
        }
        let rem = residual_eq(&form.h, &y, c, col);
        let pivot = form.h.get(t, col);
        if !rem.is_multiple_of(pivot) {
            return None;
        }
        y.push(rem / pivot);
        next_eq = col + 1;
    }
    while next_eq < equations {
        if !residual_eq(&form.h, &y, c, next_eq).is_zero() {
            return None;
        }
        next_eq += 1;
    }
    let mut particular = vec![BigInt::zero(); form.u.cols()];
    for (t, yt) in y.iter().enumerate() {
        for (x, u) in particular.iter_mut().zip(form.u.row(t)) {
            *x += yt * u;
        }
    }
    Some(particular)
}

// c_eq − Σ_t H[t][eq]·y_t
fn residual_eq(h: &IntMatrix, y: &[BigInt], c: &[BigInt], eq: usize) -> BigInt {
    let mut v = c[eq].clone();
    for (t, yt) in y.iter().enumerate() {
        v -= h.get(t, eq) * yt;
    }
    v
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}
