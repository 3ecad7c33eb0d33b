//! The transfer pipeline: from an isometry of `L` and a same-rank sublattice
//! `N` to a power of the isometry that preserves `N`, with equal Salem
//! degree, chamber checks and a replayable certificate.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::json::{matrix_from_json, matrix_to_json, vector_from_json, vector_to_json, JsonInt, JsonMatrix, JsonVector};
use crate::lattice::{Embedding, Isometry, Lattice, LatticeFile, LatticeVector};
use crate::poly::charpoly;
use crate::quotient::{order_mod, stabilizing_power, DEFAULT_ORDER_CAP};
use crate::salem::{salem_degree, FactorReport, FactorReportJson};
use crate::weyl::{chamber_walk, same_chamber, separation_bounds, SeparationBounds, WeylWord, WeylWordJson, DEFAULT_WALK_CAP};

pub const SCHEMA: &str = "hyperlat-cert/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferOptions {
    /// Interior class of `L` whose chamber stands in for the nef cone.
    pub ample: Option<LatticeVector>,
    /// Start of the alignment walk in `N`; defaults to the cleared ample class.
    pub base: Option<LatticeVector>,
    /// Report chamber verdicts without requiring them.
    pub no_chamber: bool,
    pub order_cap: u64,
    pub walk_cap: u64,
}

impl Default for TransferOptions {
    fn default() -> Self {
        TransferOptions {
            ample: None,
            base: None,
            no_chamber: false,
            order_cap: DEFAULT_ORDER_CAP,
            walk_cap: DEFAULT_WALK_CAP,
        }
    }
}

/// Output of [`align_interior`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    /// least `k ≥ 1` with `k·a ∈ N`
    pub scale: BigInt,
    /// `k·a` in sublattice coordinates
    pub cleared: LatticeVector,
    pub base: LatticeVector,
    pub word: WeylWord,
    /// image of `base` under `word`, in the closed chamber of `cleared`
    pub end: LatticeVector,
}

/// Expresses the interior class `a` in `N` (clearing denominators) and walks
/// from `base` (default: the cleared class itself) into its chamber of `N`.
pub fn align_interior(
    e: &Embedding,
    a: &LatticeVector,
    base: Option<&LatticeVector>,
    walk_cap: u64,
) -> Result<Alignment> {
    let l = e.ambient();
    l.require_hyperbolic()?;
    l.require_positive(a)?;
    let (scale, cleared) = e.clear_denominators(a)?;
    let n = e.sublattice();
    let base = base.cloned().unwrap_or_else(|| cleared.clone());
    let walk = chamber_walk(n, &base, &cleared, walk_cap)?;
    Ok(Alignment { scale, cleared, base, word: walk.word, end: walk.end })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub discriminant: JsonInt,
    pub max_abs_a: JsonInt,
    pub max_b: JsonInt,
}

impl From<&SeparationBounds> for BoundsJson {
    fn from(b: &SeparationBounds) -> Self {
        BoundsJson {
            discriminant: JsonInt(b.discriminant.clone()),
            max_abs_a: JsonInt(b.max_abs_a.clone()),
            max_b: JsonInt(b.max_b.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSection {
    pub basis: JsonMatrix,
    pub index: JsonInt,
    pub quotient_invariants: JsonVector,
    pub sub_gram: JsonMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberSection {
    pub ample: JsonVector,
    pub image_ample: JsonVector,
    /// whether the chamber check was required
    pub enforced: bool,
    pub ambient_same_chamber: bool,
    /// bounds for the separating-wall search between `a` and `f(a)` in `L`
    pub ambient_bounds: Option<BoundsJson>,
    pub scale: JsonInt,
    pub ample_sub: JsonVector,
    pub image_ample_sub: JsonVector,
    pub sub_same_chamber: bool,
    pub sub_bounds: Option<BoundsJson>,
    pub base: JsonVector,
    /// reflections in `N` carrying `base` into the chamber of `ample_sub`
    pub word: WeylWordJson,
    pub walk_end: JsonVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferCertificate {
    pub schema: String,
    pub tool_version: String,
    pub ambient: LatticeFile,
    pub embedding: EmbeddingSection,
    pub isometry: JsonMatrix,
    pub input_report: FactorReportJson,
    pub input_degree: usize,
    pub order_mod: u64,
    pub m: u64,
    pub power: JsonMatrix,
    pub restricted: JsonMatrix,
    pub restricted_report: FactorReportJson,
    pub restricted_degree: usize,
    pub chamber: Option<ChamberSection>,
    #[serde(default)]
    pub content_hash: String,
}

impl TransferCertificate {
    fn body_value(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        if let Value::Object(map) = &mut v {
            map.remove("content_hash");
        }
        v
    }

    /// SHA-256 of the compact, key-sorted JSON without the hash field.
    pub fn compute_hash(&self) -> String {
        let bytes = serde_json::to_vec(&self.body_value()).expect("serializable");
        hex::encode(Sha256::digest(&bytes))
    }

    /// Pretty-printed JSON with sorted keys and a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("serializable");
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str) -> Result<TransferCertificate> {
        let cert: TransferCertificate =
            serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        if cert.schema != SCHEMA {
            return Err(Error::MalformedCertificate(format!("unknown schema `{}`", cert.schema)));
        }
        Ok(cert)
    }
}

// Same-chamber verdict for a point and its image; vectors in opposite
// halves of the positive cone are never in the same chamber.
fn chamber_verdict(l: &Lattice, v: &LatticeVector, w: &LatticeVector) -> Result<(bool, Option<SeparationBounds>)> {
    if !l.same_positive_cone(v, w)? {
        return Ok((false, None));
    }
    Ok((same_chamber(l, v, w)?, Some(separation_bounds(l, v, w)?)))
}

/// Runs the full pipeline and packages the result as a certificate.
pub fn transfer_salem(f: &Isometry, e: &Embedding, options: &TransferOptions) -> Result<TransferCertificate> {
    let l = e.ambient();
    if f.lattice().id() != l.id() {
        return Err(Error::LatticeMismatch { expected: l.id().to_string(), found: f.lattice().id().to_string() });
    }
    // chamber precondition first: it is the cheapest way to reject the input
    let ambient_chamber = match &options.ample {
        Some(a) => {
            l.require_hyperbolic()?;
            l.require_positive(a)?;
            let fa = f.apply(a)?;
            let (same, bounds) = chamber_verdict(l, a, &fa)?;
            if !same && !options.no_chamber {
                return Err(Error::ChamberViolation(format!(
                    "isometry moves the chamber of {a} (image {fa})"
                )));
            }
            Some((a.clone(), fa, same, bounds))
        }
        None => None,
    };

    let (input_degree, input_report) = salem_degree(f)?;
    let stab = stabilizing_power(e, f, options.order_cap)?;
    let (restricted_degree, restricted_report) = salem_degree(&stab.restricted)?;
    if input_degree != restricted_degree {
        return Err(Error::SalemAssertion(format!(
            "Salem degree {input_degree} on L but {restricted_degree} on the sublattice"
        )));
    }

    let chamber = match ambient_chamber {
        Some((a, fa, ambient_same, ambient_bounds)) => {
            let align = align_interior(e, &a, options.base.as_ref(), options.walk_cap)?;
            let h_a = stab.restricted.apply(&align.cleared)?;
            let (sub_same, sub_bounds) = chamber_verdict(e.sublattice(), &align.cleared, &h_a)?;
            if ambient_same && !sub_same && !options.no_chamber {
                return Err(Error::ChamberViolation(format!(
                    "restricted power moves the chamber of {} in the sublattice",
                    align.cleared
                )));
            }
            Some(ChamberSection {
                ample: a.to_json(),
                image_ample: fa.to_json(),
                enforced: !options.no_chamber,
                ambient_same_chamber: ambient_same,
                ambient_bounds: ambient_bounds.as_ref().map(BoundsJson::from),
                scale: JsonInt(align.scale.clone()),
                ample_sub: align.cleared.to_json(),
                image_ample_sub: h_a.to_json(),
                sub_same_chamber: sub_same,
                sub_bounds: sub_bounds.as_ref().map(BoundsJson::from),
                base: align.base.to_json(),
                word: align.word.to_json(),
                walk_end: align.end.to_json(),
            })
        }
        None => None,
    };

    let mut cert = TransferCertificate {
        schema: SCHEMA.to_string(),
        tool_version: TOOL_VERSION.to_string(),
        ambient: l.to_json(),
        embedding: EmbeddingSection {
            basis: matrix_to_json(e.basis()),
            index: JsonInt(e.index()),
            quotient_invariants: vector_to_json(&e.quotient_invariants()),
            sub_gram: matrix_to_json(e.sub_gram()),
        },
        isometry: matrix_to_json(f.matrix()),
        input_report: input_report.to_json(),
        input_degree,
        order_mod: stab.order,
        m: stab.m,
        power: matrix_to_json(stab.power.matrix()),
        restricted: matrix_to_json(stab.restricted.matrix()),
        restricted_report: restricted_report.to_json(),
        restricted_degree,
        chamber,
        content_hash: String::new(),
    };
    cert.content_hash = cert.compute_hash();
    Ok(cert)
}

/// Parses a certificate and re-derives every claim in it. Returns
/// `Ok(false)` on any mismatch and an error only when the text is not a
/// certificate at all.
pub fn verify_certificate(text: &str) -> Result<bool> {
    let cert = TransferCertificate::from_json_str(text)?;
    Ok(recheck(&cert).unwrap_or(false))
}

// A failed reconstruction (bad Gram matrix, non-isometry, ...) is a plain
// negative verdict, hence the `Result<bool>` collapsed by the caller.
fn recheck(cert: &TransferCertificate) -> Result<bool> {
    if cert.content_hash != cert.compute_hash() {
        return Ok(false);
    }
    let l = Lattice::from_json(&cert.ambient)?;
    let f = l.verify_isometry(&matrix_from_json(&cert.isometry)?)?;
    let e = Embedding::new(&l, &matrix_from_json(&cert.embedding.basis)?)?;
    let checks = [
        e.index() == cert.embedding.index.0,
        e.quotient_invariants() == vector_from_json(&cert.embedding.quotient_invariants),
        *e.sub_gram() == matrix_from_json(&cert.embedding.sub_gram)?,
    ];
    if checks.contains(&false) {
        return Ok(false);
    }

    // factorization claims against freshly computed characteristic polynomials
    let input = FactorReport::from_json(&cert.input_report, charpoly(f.matrix())?);
    let power = e.ambient().verify_isometry(&matrix_from_json(&cert.power)?)?;
    let restricted = e.sublattice().verify_isometry(&matrix_from_json(&cert.restricted)?)?;
    let output = FactorReport::from_json(&cert.restricted_report, charpoly(restricted.matrix())?);
    if !input.is_consistent() || !output.is_consistent() {
        return Ok(false);
    }
    let (d_in, r_in) = salem_degree(&f)?;
    let (d_out, r_out) = salem_degree(&restricted)?;
    if (d_in, d_out) != (cert.input_degree, cert.restricted_degree)
        || d_in != d_out
        || r_in.to_json() != cert.input_report
        || r_out.to_json() != cert.restricted_report
    {
        return Ok(false);
    }

    // m, f^m and the restriction
    let order = order_mod(f.matrix(), &e.index(), cert.order_mod.saturating_add(1))
        .or_else(|err| if e.index() == BigInt::from(1) { Ok(1) } else { Err(err) })?;
    let stab = stabilizing_power(&e, &f, cert.order_mod.saturating_add(1))?;
    if order != cert.order_mod
        || stab.order != cert.order_mod
        || stab.m != cert.m
        || stab.m > order
        || stab.power != power
        || stab.restricted != restricted
        || *f.pow(cert.m).matrix() != *power.matrix()
    {
        return Ok(false);
    }

    match &cert.chamber {
        None => Ok(true),
        Some(ch) => recheck_chamber(&l, &e, &f, &restricted, ch),
    }
}

fn recheck_chamber(
    l: &Lattice,
    e: &Embedding,
    f: &Isometry,
    restricted: &Isometry,
    ch: &ChamberSection,
) -> Result<bool> {
    let n = e.sublattice();
    let a = l.vector(vector_from_json(&ch.ample))?;
    let fa = f.apply(&a)?;
    if fa.to_json() != ch.image_ample {
        return Ok(false);
    }
    let (ambient_same, ambient_bounds) = chamber_verdict(l, &a, &fa)?;
    if ambient_same != ch.ambient_same_chamber || ambient_bounds.as_ref().map(BoundsJson::from) != ch.ambient_bounds {
        return Ok(false);
    }
    let base = n.vector(vector_from_json(&ch.base))?;
    let align = align_interior(e, &a, Some(&base), DEFAULT_WALK_CAP.max(ch.word.roots.len() as u64))?;
    let word = WeylWord::from_json(n, &ch.word)?;
    if JsonInt(align.scale.clone()) != ch.scale
        || align.cleared.to_json() != ch.ample_sub
        || align.word != word
        || word.apply(n, &base)?.to_json() != ch.walk_end
        || align.end.to_json() != ch.walk_end
    {
        return Ok(false);
    }
    let h_a = restricted.apply(&align.cleared)?;
    if h_a.to_json() != ch.image_ample_sub {
        return Ok(false);
    }
    let (sub_same, sub_bounds) = chamber_verdict(n, &align.cleared, &h_a)?;
    if sub_same != ch.sub_same_chamber || sub_bounds.as_ref().map(BoundsJson::from) != ch.sub_bounds {
        return Ok(false);
    }
    if ch.enforced && !(ambient_same && sub_same) {
        return Ok(false);
    }
    Ok(true)
}
