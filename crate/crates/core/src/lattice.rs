//! Integral lattices given by Gram matrices, their vectors, isometries and
//! same-rank sublattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::json::{matrix_from_json, matrix_to_json, vector_to_json, JsonMatrix, JsonVector};
use crate::matrix::IntMatrix;
use crate::normal_form::{dot, is_unit, smith_invariants};
use crate::poly::charpoly;
use crate::sturm::{count_with_multiplicity, Bound};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)
    }
}

/// A nondegenerate symmetric integral bilinear form on `ℤ^rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    label: Option<String>,
    id: String,
    gram: IntMatrix,
    signature: Signature,
}

impl Lattice {
    pub fn new(gram: IntMatrix, label: Option<String>) -> Result<Self> {
        let rank = gram.require_square()?;
        if let Some((row, col)) = gram.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        if gram.det()?.is_zero() {
            return Err(Error::Degenerate("gram determinant is zero".into()));
        }
        let signature = signature_of(&gram)?;
        debug_assert_eq!(signature.positive + signature.negative, rank);
        let id = match &label {
            Some(l) => l.clone(),
            None => fingerprint(&gram),
        };
        Ok(Lattice { label, id, gram, signature })
    }

    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>, label: &str) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?, Some(label.to_string()))
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Identifier used to tie vectors and isometries to this lattice: the
    /// label when present, otherwise a fingerprint of the Gram matrix.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn with_label(&self, label: &str) -> Lattice {
        Lattice { label: Some(label.to_string()), id: label.to_string(), ..self.clone() }
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.det().expect("square")
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// Signature `(1, rank − 1)`.
    pub fn is_hyperbolic(&self) -> bool {
        self.signature.positive == 1
    }

    pub fn require_hyperbolic(&self) -> Result<()> {
        if self.is_hyperbolic() {
            Ok(())
        } else {
            Err(Error::NotHyperbolic(self.signature.positive, self.signature.negative))
        }
    }

    /// Every diagonal Gram entry is even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i) % 2u32 == BigInt::zero())
    }

    pub fn vector<T: Into<BigInt>>(&self, coords: Vec<T>) -> Result<LatticeVector> {
        let coords: Vec<BigInt> = coords.into_iter().map(Into::into).collect();
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in lattice of rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(LatticeVector { coords, owner: self.id.clone() })
    }

    pub fn check_owner(&self, v: &LatticeVector) -> Result<()> {
        if v.owner != self.id {
            return Err(Error::LatticeMismatch { expected: self.id.clone(), found: v.owner.clone() });
        }
        if v.coords.len() != self.rank() {
            return Err(Error::DimensionMismatch("vector length differs from rank".into()));
        }
        Ok(())
    }

    /// `vᵀ·G·w`
    pub fn inner(&self, v: &LatticeVector, w: &LatticeVector) -> Result<BigInt> {
        self.check_owner(v)?;
        self.check_owner(w)?;
        Ok(self.pair(&v.coords, &w.coords))
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<BigInt> {
        self.inner(v, v)
    }

    /// Pairing of raw coordinate vectors.
    pub(crate) fn pair(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        dot(v, &self.gram.mul_vec(w))
    }

    /// Validates `m` as an isometry, `mᵀ·G·m = G`.
    pub fn verify_isometry(&self, m: &IntMatrix) -> Result<Isometry> {
        let n = m.require_square()?;
        if n != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{n}x{n} matrix on a lattice of rank {}",
                self.rank()
            )));
        }
        let image = m.congruence(&self.gram);
        for i in 0..n {
            for j in 0..n {
                if image.get(i, j) != self.gram.get(i, j) {
                    return Err(Error::NotAnIsometry {
                        row: i,
                        col: j,
                        found: image.get(i, j).to_string(),
                        expected: self.gram.get(i, j).to_string(),
                    });
                }
            }
        }
        let det = m.det()?;
        if !is_unit(&det) {
            return Err(Error::Invalid(format!("isometry determinant {det} is not ±1")));
        }
        Ok(Isometry { matrix: m.clone(), lattice: self.clone() })
    }

    /// Whether two positive vectors lie in the same component of the positive
    /// cone. Requires signature `(1, n)`, where the criterion is `v·w > 0`.
    pub fn same_positive_cone(&self, v: &LatticeVector, w: &LatticeVector) -> Result<bool> {
        self.require_hyperbolic()?;
        self.require_positive(v)?;
        self.require_positive(w)?;
        Ok(self.inner(v, w)?.is_positive())
    }

    pub fn require_positive(&self, v: &LatticeVector) -> Result<()> {
        let n = self.norm(v)?;
        if n.is_positive() {
            Ok(())
        } else {
            Err(Error::NotPositive(n.to_string()))
        }
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(parts: &[&Lattice], label: &str) -> Result<Lattice> {
        let blocks: Vec<IntMatrix> = parts.iter().map(|l| l.gram.clone()).collect();
        Lattice::new(IntMatrix::block_diagonal(&blocks), Some(label.to_string()))
    }

    pub fn to_json(&self) -> LatticeFile {
        LatticeFile { label: self.id.clone(), rank: self.rank(), gram: matrix_to_json(&self.gram) }
    }

    pub fn from_json(file: &LatticeFile) -> Result<Lattice> {
        let gram = matrix_from_json(&file.gram)?;
        if gram.rows() != file.rank {
            return Err(Error::DimensionMismatch(format!(
                "declared rank {} but gram has {} rows",
                file.rank,
                gram.rows()
            )));
        }
        Lattice::new(gram, Some(file.label.clone()))
    }
}

fn fingerprint(gram: &IntMatrix) -> String {
    let mut h = Sha256::new();
    h.update(gram.to_string().as_bytes());
    format!("gram:{}", &hex::encode(h.finalize())[..12])
}

/// Exact signature from Sturm counts on the characteristic polynomial of the
/// Gram matrix; every eigenvalue is real because the matrix is symmetric.
pub fn signature_of(gram: &IntMatrix) -> Result<Signature> {
    let c = charpoly(gram)?;
    if c.coeff(0).is_zero() {
        return Err(Error::Degenerate("zero eigenvalue".into()));
    }
    Ok(Signature {
        positive: count_with_multiplicity(&c, &Bound::int(0), &Bound::PosInf),
        negative: count_with_multiplicity(&c, &Bound::NegInf, &Bound::int(0)),
    })
}

/// `{"label": str, "rank": int, "gram": [[int]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub label: String,
    pub rank: usize,
    pub gram: JsonMatrix,
}

/// Coordinates of a lattice element together with the id of its lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
    owner: String,
}

impl LatticeVector {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn owner(&self) -> &str {
        &self.owner
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector { coords: self.coords.iter().map(|x| x * k).collect(), owner: self.owner.clone() }
    }

    pub fn neg(&self) -> LatticeVector {
        self.scale(&-BigInt::one())
    }

    /// `self + k·other`
    pub fn add_scaled(&self, k: &BigInt, other: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.owner, other.owner);
        LatticeVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + k * b).collect(),
            owner: self.owner.clone(),
        }
    }

    pub(crate) fn with_coords(&self, coords: Vec<BigInt>) -> LatticeVector {
        LatticeVector { coords, owner: self.owner.clone() }
    }

    pub fn to_json(&self) -> JsonVector {
        vector_to_json(&self.coords)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A validated isometry of a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    matrix: IntMatrix,
    lattice: Lattice,
}

impl Isometry {
    pub fn identity(lattice: &Lattice) -> Isometry {
        Isometry { matrix: IntMatrix::identity(lattice.rank()), lattice: lattice.clone() }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        self.lattice.check_owner(v)?;
        Ok(v.with_coords(self.matrix.mul_vec(&v.coords)))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.lattice.id != other.lattice.id {
            return Err(Error::LatticeMismatch {
                expected: self.lattice.id.clone(),
                found: other.lattice.id.clone(),
            });
        }
        Ok(Isometry { matrix: &self.matrix * &other.matrix, lattice: self.lattice.clone() })
    }

    pub fn inverse(&self) -> Isometry {
        let inv = self.matrix.inverse_unimodular().expect("isometries are unimodular");
        Isometry { matrix: inv, lattice: self.lattice.clone() }
    }

    pub fn pow(&self, k: u64) -> Isometry {
        Isometry { matrix: self.matrix.pow(k), lattice: self.lattice.clone() }
    }

    pub fn to_json(&self) -> IsometryFile {
        IsometryFile { lattice: self.lattice.id.clone(), matrix: matrix_to_json(&self.matrix) }
    }
}

/// `{"lattice": label, "matrix": [[int]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryFile {
    pub lattice: String,
    pub matrix: JsonMatrix,
}

impl IsometryFile {
    /// Parses and validates against `lattice`, whose id must match.
    pub fn resolve(&self, lattice: &Lattice) -> Result<Isometry> {
        if self.lattice != lattice.id() {
            return Err(Error::LatticeMismatch { expected: lattice.id().to_string(), found: self.lattice.clone() });
        }
        lattice.verify_isometry(&matrix_from_json(&self.matrix)?)
    }
}

/// A same-rank sublattice `N ⊆ L`, spanned by the columns of `basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    ambient: Lattice,
    basis: IntMatrix,
    sub: Lattice,
    det: BigInt,
    adjugate: IntMatrix,
}

impl Embedding {
    pub fn new(ambient: &Lattice, basis: &IntMatrix) -> Result<Embedding> {
        let n = basis.require_square()?;
        if n != ambient.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{n}x{n} basis in a lattice of rank {}",
                ambient.rank()
            )));
        }
        let det = basis.det()?;
        if det.is_zero() {
            return Err(Error::SingularBasis);
        }
        let sub_gram = basis.congruence(ambient.gram());
        let sub = Lattice::new(sub_gram, Some(format!("{}/sub", ambient.id())))?;
        let adjugate = basis.adjugate()?;
        Ok(Embedding { ambient: ambient.clone(), basis: basis.clone(), sub, det, adjugate })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// The sublattice with its induced Gram matrix `BᵀGB`.
    pub fn sublattice(&self) -> &Lattice {
        &self.sub
    }

    pub fn sub_gram(&self) -> &IntMatrix {
        self.sub.gram()
    }

    /// `[L : N] = |det B|`
    pub fn index(&self) -> BigInt {
        self.det.abs()
    }

    pub(crate) fn det(&self) -> &BigInt {
        &self.det
    }

    /// `adj(B)`, with `B·adj(B) = det(B)·I`.
    pub(crate) fn adjugate(&self) -> &IntMatrix {
        &self.adjugate
    }

    /// Elementary divisors of `L/N`.
    pub fn quotient_invariants(&self) -> Vec<BigInt> {
        smith_invariants(&self.basis).into_iter().filter(|d| !d.is_one()).collect()
    }

    /// Expresses an ambient vector in sublattice coordinates, if it lies in N.
    pub fn to_sub(&self, v: &LatticeVector) -> Result<Option<LatticeVector>> {
        self.ambient.check_owner(v)?;
        let scaled = self.adjugate.mul_vec(v.coords());
        if scaled.iter().all(|x| (x % &self.det).is_zero()) {
            let coords = scaled.into_iter().map(|x| x / &self.det).collect();
            Ok(Some(self.sub.vector(coords)?))
        } else {
            Ok(None)
        }
    }

    /// Smallest `k ≥ 1` with `k·v ∈ N`, and `k·v` in sublattice coordinates.
    /// `k` divides the index because `nL ⊆ N`.
    pub fn clear_denominators(&self, v: &LatticeVector) -> Result<(BigInt, LatticeVector)> {
        self.ambient.check_owner(v)?;
        let n = self.index();
        // adj(B)·v = det(B)·B⁻¹v
        let mut scaled = self.adjugate.mul_vec(v.coords());
        if self.det.is_negative() {
            scaled.iter_mut().for_each(|x| *x = -&*x);
        }
        let g = scaled.iter().fold(n.clone(), |acc, x| acc.gcd(x));
        let coords = scaled.into_iter().map(|x| x / &g).collect();
        Ok((n / g, self.sub.vector(coords)?))
    }

    /// Maps sublattice coordinates back into the ambient lattice.
    pub fn to_ambient(&self, v: &LatticeVector) -> Result<LatticeVector> {
        self.sub.check_owner(v)?;
        self.ambient.vector(self.basis.mul_vec(v.coords()))
    }

    pub fn to_json(&self) -> EmbeddingFile {
        EmbeddingFile { lattice: self.ambient.id().to_string(), basis: matrix_to_json(&self.basis) }
    }
}

/// Convenience wrapper matching the operation name used by the CLI.
pub fn make_embedding(ambient: &Lattice, basis: &IntMatrix) -> Result<Embedding> {
    Embedding::new(ambient, basis)
}

/// `{"lattice": label, "basis": [[int]]}`, basis vectors as columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFile {
    pub lattice: String,
    pub basis: JsonMatrix,
}

impl EmbeddingFile {
    pub fn resolve(&self, lattice: &Lattice) -> Result<Embedding> {
        if self.lattice != lattice.id() {
            return Err(Error::LatticeMismatch { expected: lattice.id().to_string(), found: self.lattice.clone() });
        }
        Embedding::new(lattice, &matrix_from_json(&self.basis)?)
    }
}
