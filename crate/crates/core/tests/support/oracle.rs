//! Reference computations for the acceptance suite. Everything here is
//! written from scratch on plain `BigInt`/`BigRational` vectors and shares no
//! code with the library beyond the number types.
#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer polynomial, ascending coefficients, no trailing zeros.
pub type Poly = Vec<BigInt>;
type QPoly = Vec<BigRational>;

pub fn poly(c: &[i64]) -> Poly {
    trim(c.iter().map(|&x| BigInt::from(x)).collect())
}

fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn pow(a: &Poly, k: u32) -> Poly {
    (0..k).fold(poly(&[1]), |acc, _| mul(&acc, a))
}

/// Quotient of `a` by the monic `b`, if the division is exact.
pub fn div_exact_monic(a: &Poly, b: &Poly) -> Option<Poly> {
    assert!(b.last().is_some_and(|x| x.is_one()));
    if a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + b.len() - 1].clone();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| trim(q))
}

fn x_pow_minus_one(k: usize) -> Poly {
    let mut p = vec![BigInt::zero(); k + 1];
    p[0] = BigInt::from(-1);
    p[k] = BigInt::one();
    p
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// `Φₙ = ∏_{d | n} (x^d − 1)^{μ(n/d)}`
pub fn cyclotomic(n: u64) -> Poly {
    thread_local! {
        static CACHE: RefCell<HashMap<u64, Poly>> = RefCell::new(HashMap::new());
    }
    CACHE.with(|c| c.borrow_mut().entry(n).or_insert_with(|| cyclotomic_uncached(n)).clone())
}

fn cyclotomic_uncached(n: u64) -> Poly {
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut num = poly(&[1]);
    let mut den = poly(&[1]);
    for &d in &divisors {
        match mobius(n / d) {
            1 => num = mul(&num, &x_pow_minus_one(d as usize)),
            -1 => den = mul(&den, &x_pow_minus_one(d as usize)),
            _ => {}
        }
    }
    // den is monic up to sign
    let sign = den.last().unwrap().clone();
    let den: Poly = den.iter().map(|c| c * &sign).collect();
    let q = div_exact_monic(&num, &den).expect("Möbius product is exact");
    q.iter().map(|c| c * &sign).collect()
}

/// Orders `n` with `φ(n) ≤ d`; `φ(n) ≥ √(n/2)` bounds the search.
pub fn orders_up_to_degree(d: usize) -> Vec<u64> {
    let limit = 2 * (d as u64).pow(2) + 2;
    (1..=limit).filter(|&n| totient(n) as usize <= d).collect()
}

fn to_q(p: &Poly) -> QPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn q_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        r.pop();
        r = trim(r);
    }
    r
}

/// Degree of `gcd(a, b)` over ℚ.
pub fn gcd_degree(a: &Poly, b: &Poly) -> usize {
    let (mut x, mut y) = (to_q(a), to_q(b));
    while !y.is_empty() {
        let r = q_rem(&x, &y);
        x = y;
        y = r;
    }
    x.len().saturating_sub(1)
}

fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

pub fn is_squarefree(p: &Poly) -> bool {
    gcd_degree(p, &derivative(p)) == 0
}

/// Whether some root of `p` is a root of unity. Such a root has an order `n`
/// with `φ(n) ≤ deg p`, and then `Φ_n` divides `p`.
pub fn has_root_of_unity(p: &Poly) -> bool {
    orders_up_to_degree(degree(p)).into_iter().any(|n| div_exact_monic(p, &cyclotomic(n)).is_some())
}

/// Degree of what is left of the monic `p` once every root of unity (with
/// multiplicity) is divided out.
pub fn non_cyclotomic_degree(p: &Poly) -> usize {
    let mut rest = p.clone();
    for n in orders_up_to_degree(degree(p)) {
        let phi = cyclotomic(n);
        while let Some(q) = div_exact_monic(&rest, &phi) {
            rest = q;
        }
    }
    degree(&rest)
}

pub fn is_reciprocal(p: &Poly) -> bool {
    p.iter().eq(p.iter().rev())
}

// ---------------------------------------------------------------------------
// Characteristic polynomial from determinants at t = 0..n and Newton
// interpolation.

fn det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    d
}

pub fn charpoly(m: &[Vec<BigInt>]) -> Poly {
    let n = m.len();
    let xs: Vec<BigRational> = (0..=n).map(|t| BigRational::from_integer(BigInt::from(t))).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|t| {
            let a: Vec<Vec<BigRational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let e = -BigRational::from_integer(m[i][j].clone());
                            if i == j {
                                e + t
                            } else {
                                e
                            }
                        })
                        .collect()
                })
                .collect();
            det(&a)
        })
        .collect();
    // divided differences, then expand the Newton form
    let mut coef = ys.clone();
    for level in 1..=n {
        for i in (level..=n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p: QPoly = vec![coef[n].clone()];
    for i in (0..n).rev() {
        // p = p·(x − xᵢ) + coef[i]
        let mut next = vec![BigRational::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xs[i];
        }
        next[0] += &coef[i];
        p = next;
    }
    trim(p.into_iter().map(|c| {
        assert!(c.is_integer());
        c.to_integer()
    })
    .collect())
}

// ---------------------------------------------------------------------------
// Certified root isolation. Approximate roots come from Aberth iteration in
// f64; each is then wrapped in an inclusion disk whose radius n·|p(z)/∏(z−zⱼ)|
// is evaluated exactly at dyadic centres. Pairwise disjoint disks each hold
// exactly one root. A disk is classified outside, inside or on the unit
// circle; the last uses that roots of a reciprocal polynomial are closed
// under z ↦ 1/z̄, so a disk whose inverse image meets no other disk contains
// a root fixed by the inversion.

const SCALE_BITS: u32 = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CircleCounts {
    pub outside: usize,
    /// outside roots whose disk lies in the right half-plane
    pub outside_positive: usize,
    pub on: usize,
    pub inside: usize,
}

fn aberth(p: &Poly) -> Option<Vec<(f64, f64)>> {
    let c: Vec<f64> = p.iter().map(|x| x.to_f64().unwrap()).collect();
    let n = c.len() - 1;
    let lead = c[n];
    let bound = 1.0 + c[..n].iter().map(|x| (x / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            (0.5 * bound * t.cos(), 0.5 * bound * t.sin())
        })
        .collect();
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (mut v, mut dv) = ((0.0, 0.0), (0.0, 0.0));
            for k in (0..=n).rev() {
                dv = cmul(dv, z[i]);
                dv = (dv.0 + v.0, dv.1 + v.1);
                v = cmul(v, z[i]);
                v.0 += c[k];
            }
            if v == (0.0, 0.0) {
                continue;
            }
            let ratio = cdiv(v, dv);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    let r = cdiv((1.0, 0.0), d);
                    s = (s.0 + r.0, s.1 + r.1);
                }
            }
            let denom = (1.0 - cmul(ratio, s).0, -cmul(ratio, s).1);
            let w = cdiv(ratio, denom);
            z[i] = (z[i].0 - w.0, z[i].1 - w.1);
            moved = moved.max((w.0 * w.0 + w.1 * w.1).sqrt() / (1.0 + (z[i].0.powi(2) + z[i].1.powi(2)).sqrt()));
        }
        if moved < 1e-15 {
            return Some(z);
        }
    }
    z.iter().all(|w| w.0.is_finite() && w.1.is_finite()).then_some(z)
}

fn to_dyadic(x: f64) -> BigInt {
    let r = BigRational::from_float(x).unwrap() * BigRational::from_integer(BigInt::one() << SCALE_BITS);
    r.round().to_integer()
}

struct Disk {
    // centre (x + iy)/2^S and radius ρ/2^S
    x: BigInt,
    y: BigInt,
    rho: BigInt,
}

fn disks(p: &Poly, approx: &[(f64, f64)]) -> Vec<Disk> {
    let n = approx.len();
    let one = BigInt::one() << SCALE_BITS;
    let centres: Vec<(BigInt, BigInt)> = approx.iter().map(|&(a, b)| (to_dyadic(a), to_dyadic(b))).collect();
    centres
        .iter()
        .enumerate()
        .map(|(i, (x, y))| {
            // P = p(z)·2^{S·n}, Horner on scaled integers
            let (mut pr, mut pi) = (p[n].clone(), BigInt::zero());
            let mut scale = BigInt::one();
            for k in (0..n).rev() {
                scale *= &one;
                let nr = &pr * x - &pi * y + &p[k] * &scale;
                let ni = &pr * y + &pi * x;
                pr = nr;
                pi = ni;
            }
            // Q = ∏(z − zⱼ)·2^{S(n−1)}
            let (mut qr, mut qi) = (p[n].clone(), BigInt::zero());
            for (j, (xj, yj)) in centres.iter().enumerate() {
                if j != i {
                    let (dr, di) = (x - xj, y - yj);
                    let nr = &qr * &dr - &qi * &di;
                    let ni = &qr * &di + &qi * &dr;
                    qr = nr;
                    qi = ni;
                }
            }
            // r = n·|P| / (|Q|·2^S) in real units, so ρ = r·2^S = n·|P|/|Q|
            let num = BigInt::from(n * n) * (&pr * &pr + &pi * &pi);
            let den = &qr * &qr + &qi * &qi;
            let rho = if den.is_zero() { one.clone() } else { (num.div_ceil(&den)).sqrt() + 1 };
            Disk { x: x.clone(), y: y.clone(), rho }
        })
        .collect()
}

fn disjoint(a: &Disk, b: &Disk) -> bool {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    let r = &a.rho + &b.rho;
    &dx * &dx + &dy * &dy > &r * &r
}

/// Counts of roots outside, on and inside the unit circle, or `None` if the
/// isolation could not be certified. `p` must be square-free, and
/// reciprocal for the on-circle test to succeed.
pub fn circle_counts(p: &Poly) -> Option<CircleCounts> {
    let n = degree(p);
    if n == 0 {
        return Some(CircleCounts::default());
    }
    let approx = aberth(p)?;
    let ds = disks(p, &approx);
    for i in 0..n {
        for j in i + 1..n {
            if !disjoint(&ds[i], &ds[j]) {
                return None;
            }
        }
    }
    let one = BigInt::one() << SCALE_BITS;
    let mut counts = CircleCounts::default();
    for (i, d) in ds.iter().enumerate() {
        let m2 = &d.x * &d.x + &d.y * &d.y;
        let out_r = &one + &d.rho;
        if m2 > &out_r * &out_r {
            counts.outside += 1;
            counts.outside_positive += usize::from(d.x > d.rho);
            continue;
        }
        if d.rho < one {
            let in_r = &one - &d.rho;
            if m2 < &in_r * &in_r {
                counts.inside += 1;
                continue;
            }
        }
        // the inverse image of the disk: centre c/(|c|²−ρ²), radius ρ/||c|²−ρ²|
        let cx = BigRational::new(d.x.clone(), one.clone());
        let cy = BigRational::new(d.y.clone(), one.clone());
        let rho = BigRational::new(d.rho.clone(), one.clone());
        let k = &cx * &cx + &cy * &cy - &rho * &rho;
        if !k.is_positive() {
            return None;
        }
        let (ix, iy, ir) = (&cx / &k, &cy / &k, &rho / &k);
        let meets_other = ds.iter().enumerate().any(|(j, e)| {
            if j == i {
                return false;
            }
            let ex = BigRational::new(e.x.clone(), one.clone());
            let ey = BigRational::new(e.y.clone(), one.clone());
            let er = BigRational::new(e.rho.clone(), one.clone());
            let dx = &ix - ex;
            let dy = &iy - ey;
            let r = &ir + er;
            &dx * &dx + &dy * &dy <= &r * &r
        });
        if meets_other {
            return None;
        }
        counts.on += 1;
    }
    Some(counts)
}

/// Reference Salem test: a monic reciprocal square-free integer polynomial
/// of degree ≥ 4 without roots of unity, with exactly one root outside the
/// unit circle, which is positive, one inside and the rest on it. A lone
/// outside root is real because its conjugate is also outside. `None` when root isolation
/// could not be certified.
pub fn salem_oracle(p: &Poly) -> Option<bool> {
    if p.is_empty() || !p.last().unwrap().is_one() || degree(p) < 4 || !is_reciprocal(p) {
        return Some(false);
    }
    if !is_squarefree(p) || has_root_of_unity(p) {
        return Some(false);
    }
    let c = circle_counts(p)?;
    Some(c.outside == 1 && c.outside_positive == 1 && c.inside == 1 && c.on + 2 == degree(p))
}

/// `x^d·q(x + 1/x)` for `q` of degree `d`.
pub fn from_trace(q: &Poly) -> Poly {
    let d = degree(q);
    // x² + 1 powers times x^{d−k}
    let base = poly(&[1, 0, 1]);
    let mut out: Poly = Vec::new();
    for (k, c) in q.iter().enumerate() {
        let mut term = pow(&base, k as u32);
        let mut shifted = vec![BigInt::zero(); d - k];
        shifted.append(&mut term);
        let scaled: Poly = shifted.iter().map(|x| x * c).collect();
        out = add(&out, &scaled);
    }
    trim(out)
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Small matrix helpers on BigInt rows.

pub type Mat = Vec<Vec<BigInt>>;

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

pub fn transpose(a: &Mat) -> Mat {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect()
}

/// `B⁻¹·M·B` if it is integral, by Gauss–Jordan over ℚ.
pub fn conjugate_integral(b: &Mat, m: &Mat) -> Option<Mat> {
    let n = b.len();
    let rhs = mat_mul(m, b);
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            b[i].iter()
                .chain(rhs[i].iter())
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nonsingular basis");
        a.swap(p, c);
        let piv = a[c][c].clone();
        for k in 0..2 * n {
            a[c][k] = &a[c][k] / &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let v = &f * &a[c][k];
                    a[r][k] -= v;
                }
            }
        }
    }
    a.iter()
        .map(|row| row[n..].iter().map(|x| x.is_integer().then(|| x.to_integer())).collect::<Option<Vec<_>>>())
        .collect()
}

/// Least `k ≥ 1` with `M^k ≡ I (mod n)`.
pub fn order_mod(m: &Mat, n: i64, cap: u64) -> Option<u64> {
    let r = m.len();
    let red: Vec<Vec<i64>> = m.iter().map(|row| row.iter().map(|x| x.mod_floor(&BigInt::from(n)).to_i64().unwrap()).collect()).collect();
    let mut cur = red.clone();
    for k in 1..=cap {
        if (0..r).all(|i| (0..r).all(|j| cur[i][j] == i64::from(i == j))) {
            return Some(k);
        }
        cur = (0..r)
            .map(|i| (0..r).map(|j| (0..r).map(|t| cur[i][t] * red[t][j]).sum::<i64>().rem_euclid(n)).collect())
            .collect();
    }
    None
}

pub fn mat_pow(m: &Mat, k: u64) -> Mat {
    (0..k).fold(identity(m.len()), |acc, _| mat_mul(&acc, m))
}
