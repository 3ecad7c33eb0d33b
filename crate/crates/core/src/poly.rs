//! Dense integer polynomials.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{vector_from_json, vector_to_json, JsonVector};
use crate::matrix::IntMatrix;

/// Integer polynomial with coefficients in ascending degree order. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x − a`
    pub fn linear_root(a: &BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Sign of the value at `num/den` (with `den > 0`), computed without
    /// fractions as the sign of `den^deg · p(num/den)`.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        sign(&acc)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of every coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// `p(−x)`
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Exact quotient `self / q` over the integers, or `None` when `q` does
    /// not divide `self` in `ℤ[x]`.
    pub fn exact_divide(&self, q: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(!q.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < q.degree() {
            return None;
        }
        let lead = q.leading();
        let mut rem = self.coeffs.clone();
        let dq = q.degree();
        let mut quot = vec![BigInt::zero(); self.degree() - dq + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dq];
            if top.is_zero() {
                continue;
            }
            if !top.is_multiple_of(&lead) {
                return None;
            }
            let f = top / &lead;
            for (i, c) in q.coeffs.iter().enumerate() {
                rem[k + i] -= &f * c;
            }
            quot[k] = f;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// True iff the coefficient sequence is a palindrome, i.e.
    /// `x^deg · p(1/x) = p(x)`.
    pub fn is_reciprocal(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// For a reciprocal `p` of even degree `2k`, the polynomial `q` of degree
    /// `k` with `p(x) = x^k · q(x + 1/x)`.
    pub fn trace_poly(&self) -> Result<IntPolynomial> {
        if !self.is_reciprocal() || self.degree() % 2 == 1 {
            return Err(Error::NotReciprocal);
        }
        let k = self.degree() / 2;
        // x^j + x^{-j} = D_j(y): D_0 = 2, D_1 = y, D_{j+1} = y·D_j − D_{j−1}
        let y = Self::monomial(BigInt::one(), 1);
        let mut prev = Self::constant(BigInt::from(2));
        let mut cur = y.clone();
        let mut q = Self::constant(self.coeffs[k].clone());
        for j in 1..=k {
            q = &q + &(&cur * &Self::constant(self.coeffs[k + j].clone()));
            let next = &(&y * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        Ok(q)
    }

    /// Inverse of [`trace_poly`](Self::trace_poly): `x^k · q(x + 1/x)`.
    pub fn from_trace_poly(q: &IntPolynomial) -> IntPolynomial {
        let k = q.degree();
        // (x^2 + 1)^j · x^(k−j) summed with the coefficients of q
        let x2p1 = Self::from_i64s(&[1, 0, 1]);
        let mut acc = Self::zero();
        for (j, c) in q.coeffs.iter().enumerate() {
            let term = &x2p1.pow(j as u32) * &Self::monomial(c.clone(), k - j);
            acc = &acc + &term;
        }
        acc
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson { coeffs: vector_to_json(&self.coeffs) }
    }

    pub fn from_json(p: &PolynomialJson) -> Self {
        Self::new(vector_from_json(&p.coeffs))
    }
}

pub(crate) fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `{"coeffs": [...]}` in ascending degree order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub coeffs: JsonVector,
}

impl fmt::Display for IntPolynomial {
    /// Renders e.g. `x^4 - 2x^3 - 2x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Characteristic polynomial `det(x·I − M)` by the Faddeev–LeVerrier
/// recurrence. Every division is exact, so no fractions appear.
pub fn charpoly(m: &IntMatrix) -> Result<IntPolynomial> {
    let n = m.require_square()?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = IntMatrix::identity(n);
    for k in 1..=n {
        let am = m * &aux;
        let tr = am.trace();
        let kk = BigInt::from(k);
        debug_assert!(tr.is_multiple_of(&kk));
        let c = -(tr / kk);
        aux = am;
        for i in 0..n {
            let v = aux.get(i, i) + &c;
            aux.set(i, i, v);
        }
        coeffs[n - k] = c;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// All `n` with `φ(n) ≤ max_degree`, ascending. Uses `φ(n) ≥ √(n/2)`, so
/// `n ≤ 2·max_degree²` covers every candidate.
pub fn cyclotomic_orders(max_degree: usize) -> Vec<u64> {
    if max_degree == 0 {
        return Vec::new();
    }
    let bound = 2 * (max_degree as u64).pow(2);
    (1..=bound.max(2)).filter(|&n| totient(n) <= max_degree as u64).collect()
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `xⁿ − 1` by `Φ_d`
/// for every proper divisor `d` of `n`.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut cache = HashMap::new();
    cyclotomic_cached(n, &mut cache)
}

/// `(n, Φₙ)` for every `n` with `φ(n) ≤ max_degree`, ascending in `n`.
pub fn cyclotomic_table(max_degree: usize) -> Vec<(u64, IntPolynomial)> {
    let mut cache = HashMap::new();
    cyclotomic_orders(max_degree)
        .into_iter()
        .map(|n| (n, cyclotomic_cached(n, &mut cache)))
        .collect()
}

fn cyclotomic_cached(n: u64, cache: &mut HashMap<u64, IntPolynomial>) -> IntPolynomial {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut p = &IntPolynomial::monomial(BigInt::one(), n as usize) - &IntPolynomial::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi_d = cyclotomic_cached(d, cache);
        p = p.exact_divide(&phi_d).expect("Φ_d divides xⁿ − 1");
    }
    cache.insert(n, p.clone());
    p
}

/// Square-free decomposition of a nonzero polynomial: returns
/// `(multiplicity, factor)` pairs with `p = c · ∏ factor^multiplicity`
/// (`c` a nonzero integer) and pairwise coprime square-free factors.
pub fn squarefree_decomposition(p: &IntPolynomial) -> Vec<(u32, IntPolynomial)> {
    // P_i = product of the factors of multiplicity >= i, read off the chain
    // p, gcd(p, p'), gcd of that with its derivative, ...
    let mut levels = Vec::new();
    let mut g = normalize(p);
    while !g.is_constant() {
        levels.push(squarefree_part(&g));
        g = normalize(&gcd(&g, &g.derivative()));
    }
    levels.push(IntPolynomial::one());
    levels
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| {
            let f = divide_normalized(&w[0], &w[1]);
            (!f.is_constant()).then(|| (i as u32 + 1, f))
        })
        .collect()
}

/// Square-free part of `p` (primitive, positive leading coefficient).
pub fn squarefree_part(p: &IntPolynomial) -> IntPolynomial {
    if p.is_constant() {
        return normalize(p);
    }
    let g = gcd(p, &p.derivative());
    divide_normalized(p, &g)
}

// Primitive representative with positive leading coefficient.
pub(crate) fn normalize(p: &IntPolynomial) -> IntPolynomial {
    let q = p.primitive_part();
    if q.leading().is_negative() {
        -&q
    } else {
        q
    }
}

// Divides p by g over ℚ and returns the normalized integer representative.
fn divide_normalized(p: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    if g.is_constant() {
        return normalize(p);
    }
    if p.is_zero() {
        return IntPolynomial::zero();
    }
    let lead = g.leading();
    // scale p so the integer long division is exact
    let scale = lead.abs().pow((p.degree() - g.degree() + 1) as u32);
    let scaled = &(p * &IntPolynomial::constant(scale));
    let q = scaled.exact_divide(g).expect("g divides p over the rationals");
    normalize(&q)
}

/// Pseudo-remainder with the sign of the true remainder over ℚ: a positive
/// rational multiple of `a mod b`.
pub(crate) fn signed_pseudo_remainder(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    assert!(!b.is_zero());
    if a.degree() < b.degree() || a.is_zero() {
        return a.clone();
    }
    let lead = b.leading();
    let mut rem = a.coeffs.clone();
    let db = b.degree();
    let steps = a.degree() - db + 1;
    for k in (0..steps).rev() {
        // rem <- lead·rem − rem[k+db]·x^k·b
        let top = rem[k + db].clone();
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        if !top.is_zero() {
            for (i, c) in b.coeffs.iter().enumerate() {
                rem[k + i] -= &top * c;
            }
        }
    }
    let r = IntPolynomial::new(rem);
    let flipped = if lead.is_negative() && steps % 2 == 1 { -&r } else { r };
    flipped.primitive_part()
}

/// Greatest common divisor over ℚ, returned as a normalized integer polynomial.
pub fn gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (mut x, mut y) = (normalize(a), normalize(b));
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = signed_pseudo_remainder(&x, &y);
        x = y;
        y = r;
    }
    normalize(&x)
}
