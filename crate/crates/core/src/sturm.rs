//! Sturm sequences and exact real-root counting.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::{sign, signed_pseudo_remainder, squarefree_decomposition, squarefree_part, IntPolynomial};

/// An interval endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    PosInf,
    At(BigRational),
}

impl Bound {
    pub fn int(x: i64) -> Self {
        Bound::At(BigRational::from_integer(BigInt::from(x)))
    }
}

/// Sturm chain of a square-free polynomial. Each element is stored as a
/// primitive integer polynomial, a positive rational multiple of the
/// corresponding term `p₀ = p, p₁ = p′, p_{i+1} = −(p_{i−1} mod p_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    terms: Vec<IntPolynomial>,
}

impl SturmChain {
    /// Builds the chain of the square-free part of `p`.
    pub fn new(p: &IntPolynomial) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let p0 = squarefree_part(p);
        let mut terms = vec![p0.clone()];
        if p0.is_constant() {
            return SturmChain { terms };
        }
        let mut prev = p0;
        let mut cur = prev.derivative().primitive_part();
        while !cur.is_zero() {
            terms.push(cur.clone());
            let r = -&signed_pseudo_remainder(&prev, &cur);
            prev = cur;
            cur = r;
        }
        SturmChain { terms }
    }

    pub fn terms(&self) -> &[IntPolynomial] {
        &self.terms
    }

    fn signs_at(&self, x: &Bound) -> Vec<i32> {
        self.terms
            .iter()
            .map(|t| match x {
                Bound::At(v) => t.sign_at(v),
                Bound::PosInf => sign(&t.leading()),
                Bound::NegInf => {
                    let s = sign(&t.leading());
                    if t.degree() % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                }
            })
            .collect()
    }

    /// Number of sign changes in the chain at `x`, zeros dropped.
    pub fn variations(&self, x: &Bound) -> usize {
        let signs: Vec<i32> = self.signs_at(x).into_iter().filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Bound, b: &Bound) -> usize {
        let va = self.variations(a);
        let vb = self.variations(b);
        va.saturating_sub(vb)
    }
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &IntPolynomial, a: &Bound, b: &Bound) -> usize {
    SturmChain::new(p).count(a, b)
}

/// Number of real roots of `p` in `(a, b]` counted with multiplicity.
pub fn count_with_multiplicity(p: &IntPolynomial, a: &Bound, b: &Bound) -> usize {
    squarefree_decomposition(p)
        .into_iter()
        .map(|(mult, factor)| mult as usize * sturm_count(&factor, a, b))
        .sum()
}
