//! Isometries modulo n, their orders, and descent to same-rank sublattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{Embedding, Isometry};
use crate::matrix::IntMatrix;

/// Default cap for [`order_mod`].
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

/// Square matrix over `ℤ/nℤ`, entries in `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    modulus: u64,
    dim: usize,
    entries: Vec<u64>,
    invertible: bool,
}

impl ModMatrix {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    /// Whether the determinant is a unit mod n.
    pub fn is_invertible(&self) -> bool {
        self.invertible
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let q = u128::from(self.modulus);
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = u128::from(self.entries[i * n + k]);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    entries[idx] = ((u128::from(entries[idx]) + a * u128::from(other.entries[k * n + j])) % q) as u64;
                }
            }
        }
        ModMatrix {
            modulus: self.modulus,
            dim: n,
            entries,
            invertible: self.invertible && other.invertible,
        }
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::new(self.dim, self.dim, self.entries.iter().map(|&x| BigInt::from(x)).collect())
            .expect("square")
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_int_matrix(), self.modulus)
    }
}

fn modulus_u64(n: &BigInt) -> Result<u64> {
    match n.to_u64() {
        Some(q) if q >= 2 => Ok(q),
        Some(_) => Err(Error::InvalidModulus(n.to_string())),
        None if n < &BigInt::from(2) => Err(Error::InvalidModulus(n.to_string())),
        None => Err(Error::InvalidModulus(format!("{n} exceeds the supported range"))),
    }
}

fn reduce_entries(m: &IntMatrix, q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    m.entries()
        .iter()
        .map(|x| x.mod_floor(&qb).to_u64().expect("reduced"))
        .collect()
}

/// Entrywise reduction of a square matrix modulo `n ≥ 2`.
pub fn reduce_mod(m: &IntMatrix, n: &BigInt) -> Result<ModMatrix> {
    let dim = m.require_square()?;
    let q = modulus_u64(n)?;
    let det = m.det()?;
    Ok(ModMatrix {
        modulus: q,
        dim,
        entries: reduce_entries(m, q),
        invertible: det.gcd(n) == BigInt::from(1),
    })
}

/// Least `m ≥ 1` with `M^m ≡ I (mod n)`.
pub fn order_mod(m: &IntMatrix, n: &BigInt, cap: u64) -> Result<u64> {
    let base = reduce_mod(m, n)?;
    if !base.is_invertible() {
        return Err(Error::NotInvertibleMod(n.to_string()));
    }
    let mut power = base.clone();
    let mut k = 1u64;
    while !power.is_identity() {
        if k >= cap {
            return Err(Error::CapExceeded(cap));
        }
        power = power.mul(&base);
        k += 1;
    }
    Ok(k)
}

fn require_same_lattice(e: &Embedding, f: &Isometry) -> Result<()> {
    if e.ambient().id() != f.lattice().id() {
        return Err(Error::LatticeMismatch {
            expected: e.ambient().id().to_string(),
            found: f.lattice().id().to_string(),
        });
    }
    Ok(())
}

// adj(B)·F·B, which equals det(B)·B⁻¹FB.
fn conjugated_scaled(e: &Embedding, f: &IntMatrix) -> IntMatrix {
    &(e.adjugate() * f) * e.basis()
}

/// Whether `f` maps the sublattice onto itself, i.e. `B⁻¹fB` is integral.
pub fn descends_to(e: &Embedding, f: &Isometry) -> Result<bool> {
    require_same_lattice(e, f)?;
    let x = conjugated_scaled(e, f.matrix());
    Ok(x.entries().iter().all(|v| v.is_multiple_of(e.det())))
}

/// `f_N = B⁻¹fB` as an isometry of the sublattice.
pub fn restrict(e: &Embedding, f: &Isometry) -> Result<Isometry> {
    require_same_lattice(e, f)?;
    let x = conjugated_scaled(e, f.matrix());
    if !x.entries().iter().all(|v| v.is_multiple_of(e.det())) {
        return Err(Error::DoesNotDescend);
    }
    let data = x.entries().iter().map(|v| v / e.det()).collect();
    let fn_ = IntMatrix::new(x.rows(), x.cols(), data)?;
    e.sublattice().verify_isometry(&fn_)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizingPower {
    /// least `m ≥ 1` with `f^m` descending
    pub m: u64,
    /// `order_mod(f, index)`, an upper bound for `m`
    pub order: u64,
    /// `f^m` on the ambient lattice
    pub power: Isometry,
    /// `f^m` restricted to the sublattice
    pub restricted: Isometry,
}

/// Least power of `f` that preserves the sublattice, with its restriction.
///
/// Any power congruent to the identity modulo the index `n` descends because
/// `nL ⊆ N`, so `m ≤ order_mod(f, n)`. Descent of `X` only depends on `X mod n`,
/// which keeps the search in modular arithmetic.
pub fn stabilizing_power(e: &Embedding, f: &Isometry, cap: u64) -> Result<StabilizingPower> {
    require_same_lattice(e, f)?;
    let n = e.index();
    if n == BigInt::from(1) {
        let restricted = restrict(e, f)?;
        return Ok(StabilizingPower { m: 1, order: 1, power: f.clone(), restricted });
    }
    let order = order_mod(f.matrix(), &n, cap)?;
    let q = modulus_u64(&n)?;
    let adj = reduce_mod(e.adjugate(), &n)?;
    let basis = reduce_mod(e.basis(), &n)?;
    let base = reduce_mod(f.matrix(), &n)?;
    let mut power = base.clone();
    let mut m = 1u64;
    while !adj.mul(&power).mul(&basis).is_zero() {
        m += 1;
        debug_assert!(m <= order, "bounded by the order modulo {q}");
        power = power.mul(&base);
    }
    let power = f.pow(m);
    let restricted = restrict(e, &power)?;
    Ok(StabilizingPower { m, order, power, restricted })
}
