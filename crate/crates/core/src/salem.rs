//! Salem polynomial recognition and the Salem degree of an isometry.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{vector_from_json, vector_to_json, JsonVector};
use crate::lattice::Isometry;
use crate::poly::{charpoly, cyclotomic, cyclotomic_table, squarefree_decomposition, IntPolynomial};
use crate::sturm::{Bound, SturmChain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclotomicFactor {
    pub n: u64,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalemFactor {
    pub poly: IntPolynomial,
    pub mult: u32,
}

/// `input = ∏ Φₙ^mult · salem^mult · residual`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub input: IntPolynomial,
    pub cyclotomic: Vec<CyclotomicFactor>,
    pub salem: Option<SalemFactor>,
    pub residual: IntPolynomial,
    pub degree: usize,
    pub notes: Vec<String>,
}

impl FactorReport {
    /// Product of all recorded parts.
    pub fn reconstruct(&self) -> IntPolynomial {
        let mut acc = self.residual.clone();
        for c in &self.cyclotomic {
            acc = &acc * &cyclotomic(c.n).pow(c.mult);
        }
        if let Some(s) = &self.salem {
            acc = &acc * &s.poly.pow(s.mult);
        }
        acc
    }

    /// Rechecks the product identity and the Salem verdict of the factor.
    pub fn is_consistent(&self) -> bool {
        if self.reconstruct() != self.input {
            return false;
        }
        match &self.salem {
            Some(s) => s.mult >= 1 && is_salem(&s.poly).is_salem,
            None => true,
        }
    }

    pub fn to_json(&self) -> FactorReportJson {
        FactorReportJson {
            cyclotomic: self.cyclotomic.clone(),
            salem: self
                .salem
                .as_ref()
                .map(|s| SalemFactorJson { coeffs: vector_to_json(s.poly.coeffs()), mult: s.mult }),
            degree: self.degree,
            residual: vector_to_json(self.residual.coeffs()),
            notes: self.notes.clone(),
        }
    }

    /// Rebuilds a report claimed for `input`; no verification is done here.
    pub fn from_json(json: &FactorReportJson, input: IntPolynomial) -> FactorReport {
        FactorReport {
            input,
            cyclotomic: json.cyclotomic.clone(),
            salem: json
                .salem
                .as_ref()
                .map(|s| SalemFactor { poly: IntPolynomial::new(vector_from_json(&s.coeffs)), mult: s.mult }),
            residual: IntPolynomial::new(vector_from_json(&json.residual)),
            degree: json.degree,
            notes: json.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SalemFactorJson {
    pub coeffs: JsonVector,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReportJson {
    pub cyclotomic: Vec<CyclotomicFactor>,
    pub salem: Option<SalemFactorJson>,
    pub degree: usize,
    pub residual: JsonVector,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// Divides out every cyclotomic factor with multiplicity. If what remains is
/// a power of a Salem polynomial it is recorded as the Salem factor and the
/// residual becomes 1.
pub fn strip_cyclotomic(p: &IntPolynomial) -> Result<FactorReport> {
    if p.is_zero() || !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut rest = p.clone();
    let mut cyclotomic = Vec::new();
    for (n, phi) in cyclotomic_table(p.degree()) {
        if phi.degree() > rest.degree() {
            continue;
        }
        let mut mult = 0;
        while let Some(q) = rest.exact_divide(&phi) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            cyclotomic.push(CyclotomicFactor { n, mult });
        }
    }
    let mut report = FactorReport {
        input: p.clone(),
        cyclotomic,
        salem: None,
        residual: rest.clone(),
        degree: 0,
        notes: Vec::new(),
    };
    if let Some((mult, base)) = single_power(&rest) {
        if is_salem(&base).is_salem {
            report.degree = base.degree();
            report.salem = Some(SalemFactor { poly: base, mult });
            report.residual = IntPolynomial::one();
        }
    }
    Ok(report)
}

// `p = b^k` with `b` square-free and nonconstant.
fn single_power(p: &IntPolynomial) -> Option<(u32, IntPolynomial)> {
    if p.is_constant() {
        return None;
    }
    let parts = squarefree_decomposition(p);
    match parts.as_slice() {
        [(k, b)] => Some((*k, b.clone())),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SalemReason {
    Ok,
    NotMonic,
    DegreeTooSmall,
    NotReciprocal,
    HasCyclotomicFactor,
    WrongRootCount,
    QuadraticReciprocal,
}

impl fmt::Display for SalemReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SalemReason::Ok => "OK",
            SalemReason::NotMonic => "NotMonic",
            SalemReason::DegreeTooSmall => "DegreeTooSmall",
            SalemReason::NotReciprocal => "NotReciprocal",
            SalemReason::HasCyclotomicFactor => "HasCyclotomicFactor",
            SalemReason::WrongRootCount => "WrongRootCount",
            SalemReason::QuadraticReciprocal => "QuadraticReciprocal",
        };
        f.write_str(s)
    }
}

/// Distinct real roots of the trace polynomial by region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RootCounts {
    /// in `(2, ∞)`
    pub outside: usize,
    /// in `(−2, 2)`
    pub inside: usize,
    /// in `(−∞, −2]` or at `2`
    pub boundary_or_below: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SalemVerdict {
    pub is_salem: bool,
    pub reason: SalemReason,
    pub root_counts: RootCounts,
}

impl SalemVerdict {
    fn reject(reason: SalemReason) -> Self {
        SalemVerdict { is_salem: false, reason, root_counts: RootCounts::default() }
    }
}

/// Decides whether `p` is a Salem polynomial of degree ≥ 4.
///
/// With `p` monic, reciprocal and free of cyclotomic factors, it is Salem
/// exactly when its trace polynomial `q` has one root in `(2, ∞)`, the other
/// `deg q − 1` roots distinct in `(−2, 2)`, and nothing else. Irreducibility
/// follows: any other monic factor would have all roots on the unit circle
/// and hence be cyclotomic.
pub fn is_salem(p: &IntPolynomial) -> SalemVerdict {
    if p.is_zero() || !p.is_monic() {
        return SalemVerdict::reject(SalemReason::NotMonic);
    }
    if p.degree() < 2 {
        return SalemVerdict::reject(SalemReason::DegreeTooSmall);
    }
    let q = match p.trace_poly() {
        Ok(q) => q,
        Err(_) => return SalemVerdict::reject(SalemReason::NotReciprocal),
    };
    if has_cyclotomic_factor(p) {
        return SalemVerdict::reject(SalemReason::HasCyclotomicFactor);
    }
    let root_counts = trace_root_counts(&q);
    let shape_ok = root_counts.outside == 1
        && root_counts.inside + 1 == q.degree()
        && root_counts.boundary_or_below == 0;
    let reason = match (shape_ok, p.degree()) {
        (false, _) => SalemReason::WrongRootCount,
        (true, 2) => SalemReason::QuadraticReciprocal,
        (true, _) => SalemReason::Ok,
    };
    SalemVerdict { is_salem: reason == SalemReason::Ok, reason, root_counts }
}

fn has_cyclotomic_factor(p: &IntPolynomial) -> bool {
    cyclotomic_table(p.degree())
        .into_iter()
        .any(|(_, phi)| phi.degree() <= p.degree() && p.exact_divide(&phi).is_some())
}

fn trace_root_counts(q: &IntPolynomial) -> RootCounts {
    let chain = SturmChain::new(q);
    let two = Bound::int(2);
    let minus_two = Bound::int(-2);
    let at_two = usize::from(q.eval(&BigInt::from(2)).is_zero());
    RootCounts {
        outside: chain.count(&two, &Bound::PosInf),
        inside: chain.count(&minus_two, &two) - at_two,
        boundary_or_below: chain.count(&Bound::NegInf, &minus_two) + at_two,
    }
}

/// Salem degree of an isometry together with the factorization of its
/// characteristic polynomial.
///
/// On a lattice of signature `(1, n)` the non-cyclotomic part must be a
/// single simple Salem factor; two further shapes are accepted and noted in
/// the report: a quadratic reciprocal factor (rank-2 style hyperbolic
/// isometries), and a factor `r` with `r(−x)` Salem, which appears when the
/// isometry swaps the two halves of the positive cone. Anything else is a
/// [`Error::SalemAssertion`]. On other signatures the remainder degree is
/// reported with a warning note.
pub fn salem_degree(f: &Isometry) -> Result<(usize, FactorReport)> {
    let cp = charpoly(f.matrix())?;
    let mut report = strip_cyclotomic(&cp)?;
    let hyperbolic = f.lattice().is_hyperbolic();
    if !hyperbolic && !(report.salem.is_none() && report.residual.is_one()) {
        report.degree = report.salem.as_ref().map_or(report.residual.degree(), |s| s.poly.degree());
        report.notes.push(format!(
            "warning: lattice has signature {} and is not hyperbolic; degree is that of the non-cyclotomic part",
            f.lattice().signature()
        ));
        return Ok((report.degree, report));
    }
    if let Some(s) = &report.salem {
        if hyperbolic && s.mult != 1 {
            return Err(Error::SalemAssertion(format!(
                "Salem factor {} has multiplicity {} on a hyperbolic lattice",
                s.poly, s.mult
            )));
        }
        return Ok((report.degree, report));
    }
    if report.residual.is_one() {
        return Ok((0, report));
    }
    let residual = report.residual.clone();
    let simple = single_power(&residual).filter(|(k, _)| *k == 1).map(|(_, b)| b);
    let Some(base) = simple else {
        return Err(Error::SalemAssertion(format!(
            "remainder {residual} is not a single simple factor"
        )));
    };
    let direct = is_salem(&base).reason;
    let flipped = monic_negated(&base);
    let reversed = is_salem(&flipped).reason;
    let note = match (direct, reversed) {
        (SalemReason::QuadraticReciprocal, _) => {
            "quadratic reciprocal factor: degree-2 units are not counted as Salem, degree reported as 2"
        }
        (_, SalemReason::Ok) => "factor r(x) with r(-x) Salem: isometry reverses the positive cone",
        (_, SalemReason::QuadraticReciprocal) => {
            "factor r(x) with r(-x) quadratic reciprocal: isometry reverses the positive cone"
        }
        _ => {
            return Err(Error::SalemAssertion(format!(
                "remainder {residual} is neither 1 nor Salem ({direct})"
            )))
        }
    };
    report.degree = base.degree();
    report.notes.push(note.to_string());
    Ok((report.degree, report))
}

// (−1)^deg · p(−x), monic when p is.
fn monic_negated(p: &IntPolynomial) -> IntPolynomial {
    let q = p.negate_variable();
    if p.degree() % 2 == 1 {
        -&q
    } else {
        q
    }
}
