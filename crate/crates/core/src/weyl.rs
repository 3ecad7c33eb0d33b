//! Roots, reflections, separating walls and chamber walks in hyperbolic
//! lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{vector_from_json, vector_to_json, JsonVector};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::normal_form::{dot, hnf, kernel_rows, ldl, particular_solution, HermiteForm};

/// Default cap on the number of reflections in [`chamber_walk`].
pub const DEFAULT_WALK_CAP: u64 = 10_000;

/// A vector of norm −2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    vector: LatticeVector,
}

impl Root {
    pub fn new(lattice: &Lattice, v: LatticeVector) -> Result<Root> {
        let n = lattice.norm(&v)?;
        if n != BigInt::from(-2) {
            return Err(Error::NotARoot(n.to_string()));
        }
        Ok(Root { vector: v })
    }

    pub fn vector(&self) -> &LatticeVector {
        &self.vector
    }

    pub fn coords(&self) -> &[BigInt] {
        self.vector.coords()
    }

    /// Matrix of the reflection `v ↦ v + (v·δ)·δ`, i.e. `I + δ·(Gδ)ᵀ`.
    pub fn reflection_matrix(&self, lattice: &Lattice) -> IntMatrix {
        let d = self.coords();
        let gd = lattice.gram().mul_vec(d);
        let n = d.len();
        let mut m = IntMatrix::identity(n);
        for (i, di) in d.iter().enumerate() {
            for (j, gj) in gd.iter().enumerate() {
                let v = m.get(i, j) + di * gj;
                m.set(i, j, v);
            }
        }
        m
    }
}

/// Reflections applied left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylWord {
    owner: String,
    roots: Vec<Root>,
}

impl WeylWord {
    pub fn empty(lattice: &Lattice) -> Self {
        WeylWord { owner: lattice.id().to_string(), roots: Vec::new() }
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn apply(&self, lattice: &Lattice, v: &LatticeVector) -> Result<LatticeVector> {
        self.roots.iter().try_fold(v.clone(), |acc, r| reflect(lattice, r, &acc))
    }

    /// The composite isometry `s_k ∘ … ∘ s_1` as a matrix.
    pub fn matrix(&self, lattice: &Lattice) -> IntMatrix {
        self.roots
            .iter()
            .fold(IntMatrix::identity(lattice.rank()), |acc, r| &r.reflection_matrix(lattice) * &acc)
    }

    pub fn to_json(&self) -> WeylWordJson {
        WeylWordJson {
            lattice: self.owner.clone(),
            roots: self.roots.iter().map(|r| vector_to_json(r.coords())).collect(),
        }
    }

    pub fn from_json(lattice: &Lattice, json: &WeylWordJson) -> Result<WeylWord> {
        if json.lattice != lattice.id() {
            return Err(Error::LatticeMismatch { expected: lattice.id().to_string(), found: json.lattice.clone() });
        }
        let roots = json
            .roots
            .iter()
            .map(|r| Root::new(lattice, lattice.vector(vector_from_json(r))?))
            .collect::<Result<_>>()?;
        Ok(WeylWord { owner: json.lattice.clone(), roots })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylWordJson {
    pub lattice: String,
    pub roots: Vec<JsonVector>,
}

/// `v + (v·δ)·δ`
pub fn reflect(lattice: &Lattice, root: &Root, v: &LatticeVector) -> Result<LatticeVector> {
    let d = root.vector();
    let n = lattice.norm(d)?;
    if n != BigInt::from(-2) {
        return Err(Error::NotARoot(n.to_string()));
    }
    let k = lattice.inner(v, d)?;
    Ok(v.add_scaled(&k, d))
}

// ---------------------------------------------------------------------------
// Enumeration of norm −2 vectors in an affine slice {x : x·uᵢ = cᵢ}. The
// slice's direction space is the orthogonal complement of the uᵢ, which is
// negative definite because some combination of the uᵢ is positive.

struct SliceSolver<'a> {
    lattice: &'a Lattice,
    form: HermiteForm,
    // kernel basis as columns, r × m
    kernel: IntMatrix,
    // (−KᵀGK)⁻¹
    qp_inv: RatMatrix,
    // LDLᵀ of qp (no pivoting needed for a definite form)
    l: RatMatrix,
    d: Vec<BigRational>,
}

impl<'a> SliceSolver<'a> {
    fn new(lattice: &'a Lattice, directions: &[&[BigInt]]) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = directions.iter().map(|u| lattice.gram().mul_vec(u)).collect();
        let a = IntMatrix::from_rows(rows)?;
        let form = hnf(&a.transpose());
        let basis = kernel_rows(&form);
        let r = lattice.rank();
        let kernel = if basis.is_empty() {
            IntMatrix::zeros(r, 1)
        } else {
            IntMatrix::from_columns(&basis)?
        };
        let m = basis.len();
        let (qp_inv, l, d) = if m == 0 {
            (RatMatrix::zeros(1, 1), RatMatrix::zeros(1, 1), Vec::new())
        } else {
            let qp = -&kernel.congruence(lattice.gram());
            let f = ldl(&qp)?;
            if !f.p.is_identity() || f.d.iter().any(|x| !x.is_positive()) {
                return Err(Error::Invalid("slice complement is not negative definite".into()));
            }
            let inv = qp.to_rational().inverse().expect("definite");
            (inv, f.l, f.d)
        };
        Ok(SliceSolver { lattice, form, kernel, qp_inv, l, d })
    }

    fn dim(&self) -> usize {
        self.d.len()
    }

    /// All `x` with `x² = −2` and `x·uᵢ = cᵢ`, sorted.
    fn solve(&self, c: &[BigInt]) -> Vec<Vec<BigInt>> {
        let Some(x0) = particular_solution(&self.form, c) else {
            return Vec::new();
        };
        let target = BigInt::from(-2);
        let m = self.dim();
        if m == 0 {
            return if self.lattice.pair(&x0, &x0) == target { vec![x0] } else { Vec::new() };
        }
        let c0 = self.lattice.pair(&x0, &x0);
        let gx0 = self.lattice.gram().mul_vec(&x0);
        let b: Vec<BigInt> = (0..m).map(|j| dot(&self.kernel.column(j), &gx0)).collect();
        let b_rat: Vec<BigRational> = b.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let center = self.qp_inv.mul_vec(&b_rat);
        // (t − t*)ᵀ Q' (t − t*) = c₀ + 2 + bᵀ Q'⁻¹ b
        let radius = BigRational::from_integer(c0 + BigInt::from(2)) + dot_rat(&b_rat, &center);
        if radius.is_negative() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut t = vec![BigInt::zero(); m];
        self.descend(m, &center, &radius, &mut t, &mut |t: &[BigInt]| {
            let x: Vec<BigInt> = x0
                .iter()
                .zip(self.kernel.mul_vec(t))
                .map(|(a, b)| a + b)
                .collect();
            if self.lattice.pair(&x, &x) == target {
                out.push(x);
            }
        });
        out.sort();
        out
    }

    // Fix t_{level-1}, then recurse. With Q' = L·D·Lᵀ,
    // q(y) = Σᵢ dᵢ (yᵢ + Σ_{j>i} L_{ji} y_j)², y = t − t*.
    fn descend(
        &self,
        level: usize,
        center: &[BigRational],
        remaining: &BigRational,
        t: &mut Vec<BigInt>,
        visit: &mut dyn FnMut(&[BigInt]),
    ) {
        if level == 0 {
            visit(t);
            return;
        }
        let i = level - 1;
        let mut shift = BigRational::zero();
        for j in level..self.dim() {
            shift += self.l.get(j, i) * (BigRational::from_integer(t[j].clone()) - &center[j]);
        }
        let c = &center[i] - shift;
        let bound = remaining / &self.d[i];
        let fits = |ti: &BigInt| {
            let y = BigRational::from_integer(ti.clone()) - &c;
            &y * &y <= bound
        };
        let start = c.floor().to_integer();
        let mut candidates = Vec::new();
        let mut ti = start.clone();
        while fits(&ti) {
            candidates.push(ti.clone());
            ti -= 1;
        }
        let mut ti = start + 1;
        while fits(&ti) {
            candidates.push(ti.clone());
            ti += 1;
        }
        for ti in candidates {
            let y = BigRational::from_integer(ti.clone()) - &c;
            let rest = remaining - &self.d[i] * &y * &y;
            t[i] = ti;
            self.descend(i, center, &rest, t, visit);
        }
        t[i] = BigInt::zero();
    }
}

fn dot_rat(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn require_interior(lattice: &Lattice, v: &LatticeVector) -> Result<()> {
    lattice.require_hyperbolic()?;
    lattice.require_positive(v)
}

fn to_roots(lattice: &Lattice, found: Vec<Vec<BigInt>>) -> Vec<Root> {
    found
        .into_iter()
        .map(|x| Root { vector: lattice.vector(x).expect("rank") })
        .collect()
}

/// All roots `δ` with `δ·v = c`, sorted by coordinates.
pub fn roots_with_pairing(lattice: &Lattice, v: &LatticeVector, c: &BigInt) -> Result<Vec<Root>> {
    require_interior(lattice, v)?;
    let solver = SliceSolver::new(lattice, &[v.coords()])?;
    Ok(to_roots(lattice, solver.solve(std::slice::from_ref(c))))
}

/// Bounds on `(a, b) = (δ·v, δ·w)` for roots separating `v` from `w`.
///
/// For any root `δ` the Gram matrix of `(v, w, δ)` has nonnegative
/// determinant in signature `(1, n)`, which expands to
/// `w²a² − 2(v·w)ab + v²b² ≤ 2D` with `D = (v·w)² − v²w²`. When `a < 0 ≤ b`
/// and `v·w > 0` all three terms are nonnegative, giving
/// `|a| ≤ √(2D/w²)` and `b ≤ √(2D/v²)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationBounds {
    pub discriminant: BigInt,
    pub max_abs_a: BigInt,
    pub max_b: BigInt,
}

pub fn separation_bounds(lattice: &Lattice, v: &LatticeVector, w: &LatticeVector) -> Result<SeparationBounds> {
    let vv = lattice.norm(v)?;
    let ww = lattice.norm(w)?;
    let vw = lattice.inner(v, w)?;
    let discriminant = &vw * &vw - &vv * &ww;
    let two_d: BigInt = &discriminant * 2;
    Ok(SeparationBounds {
        max_abs_a: two_d.div_floor(&ww).sqrt(),
        max_b: two_d.div_floor(&vv).sqrt(),
        discriminant,
    })
}

fn check_pair(lattice: &Lattice, v: &LatticeVector, w: &LatticeVector) -> Result<()> {
    require_interior(lattice, v)?;
    require_interior(lattice, w)?;
    if !lattice.same_positive_cone(v, w)? {
        return Err(Error::OppositeCones);
    }
    Ok(())
}

// Walks the admissible (a, b) pairs with a = −1, −2, … so that the roots
// closest to v's side come first; stops early when `first_only`. With
// `strict` only walls with δ·w > 0 count.
fn separating_search(
    lattice: &Lattice,
    v: &LatticeVector,
    w: &LatticeVector,
    first_only: bool,
    strict: bool,
) -> Result<Vec<Root>> {
    check_pair(lattice, v, w)?;
    let bounds = separation_bounds(lattice, v, w)?;
    if bounds.discriminant.is_zero() {
        return Ok(Vec::new());
    }
    let vv = lattice.norm(v)?;
    let ww = lattice.norm(w)?;
    let vw = lattice.inner(v, w)?;
    let two_d: BigInt = &bounds.discriminant * 2;
    let solver = SliceSolver::new(lattice, &[v.coords(), w.coords()])?;
    let mut found = Vec::new();
    let mut a = BigInt::from(-1);
    while a.abs() <= bounds.max_abs_a {
        let mut b = if strict { BigInt::one() } else { BigInt::zero() };
        while b <= bounds.max_b {
            let lhs = &ww * &a * &a - BigInt::from(2) * &vw * &a * &b + &vv * &b * &b;
            if lhs <= two_d {
                found.extend(solver.solve(&[a.clone(), b.clone()]));
            }
            b += 1;
        }
        if first_only && !found.is_empty() {
            break;
        }
        a -= 1;
    }
    found.sort();
    Ok(to_roots(lattice, found))
}

/// All roots `δ` with `δ·v < 0 ≤ δ·w`, sorted by coordinates.
pub fn separating_roots(lattice: &Lattice, v: &LatticeVector, w: &LatticeVector) -> Result<Vec<Root>> {
    separating_search(lattice, v, w, false, false)
}

/// Result of [`chamber_walk`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub word: WeylWord,
    pub end: LatticeVector,
}

/// Reflects `v` through walls strictly between it and `w` (`δ·v < 0 < δ·w`)
/// until none is left. Each step uses such a root with the least `|δ·v|`,
/// ties broken by the smallest coordinates. Every step lowers the positive
/// integer `v·w`, so the walk terminates.
///
/// The end point lies in a chamber whose closure contains `w`. When `w` is
/// off all walls that chamber is the chamber of `w` and
/// `separating_roots` is empty in both directions; when `w` lies on a wall
/// no point off that wall can satisfy both emptiness conditions.
pub fn chamber_walk(lattice: &Lattice, v: &LatticeVector, w: &LatticeVector, cap: u64) -> Result<Walk> {
    check_pair(lattice, v, w)?;
    let mut word = WeylWord::empty(lattice);
    let mut cur = v.clone();
    loop {
        let candidates = separating_search(lattice, &cur, w, true, true)?;
        let Some(root) = candidates
            .into_iter()
            .map(|r| (lattice.inner(r.vector(), &cur).expect("same lattice").abs(), r))
            .min_by(|(a, r), (b, s)| a.cmp(b).then_with(|| r.coords().cmp(s.coords())))
            .map(|(_, r)| r)
        else {
            return Ok(Walk { word, end: cur });
        };
        if word.len() as u64 >= cap {
            return Err(Error::WalkDiverged(cap));
        }
        cur = reflect(lattice, &root, &cur)?;
        word.roots.push(root);
    }
}

fn has_separating_root(lattice: &Lattice, v: &LatticeVector, w: &LatticeVector) -> Result<bool> {
    Ok(!separating_search(lattice, v, w, true, false)?.is_empty())
}

/// No wall separates `v` from `w` in either direction.
pub fn same_chamber(lattice: &Lattice, v: &LatticeVector, w: &LatticeVector) -> Result<bool> {
    Ok(!has_separating_root(lattice, v, w)? && !has_separating_root(lattice, w, v)?)
}
