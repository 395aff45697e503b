//! Exact arithmetic in the real cyclotomic field `Q(2cos(pi/M))`.
//!
//! Elements are polynomials in `theta = 2cos(pi/M)` of degree below the degree of
//! its minimal polynomial. The minimal polynomial comes from the `2M`-th cyclotomic
//! polynomial through the substitution `x = z + 1/z`. Signs are decided in the
//! real embedding `theta -> 2cos(pi/M)`: a floating-point estimate settles almost
//! every case and rational interval bisection settles the rest.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer polynomial, lowest degree first.
type IntPoly = Vec<i64>;

fn poly_div_exact(num: &[i64], den: &[i64]) -> IntPoly {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().expect("nonzero divisor");
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1] / lead;
        quot[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> IntPoly {
    let n = n as usize;
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d as u32));
        }
    }
    p
}

/// Lucas-type polynomials with `lucas(k)(z + 1/z) = z^k + z^-k`:
/// `L_0 = 2`, `L_1 = x`, `L_{k+1} = x L_k - L_{k-1}`.
pub fn lucas_polynomial(k: usize) -> IntPoly {
    let mut prev: IntPoly = vec![2];
    let mut cur: IntPoly = vec![0, 1];
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let mut next = vec![0i64; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial of `2cos(pi/m)` over the rationals.
pub fn minimal_polynomial(m: u32) -> IntPoly {
    if m <= 2 {
        // 2cos(pi) = -2, 2cos(pi/2) = 0
        return if m == 1 { vec![2, 1] } else { vec![0, 1] };
    }
    let phi = cyclotomic_polynomial(2 * m);
    let half = (phi.len() - 1) / 2;
    let mut q: IntPoly = vec![phi[half]];
    for k in 1..=half {
        let lk = lucas_polynomial(k);
        if q.len() < lk.len() {
            q.resize(lk.len(), 0);
        }
        for (i, &c) in lk.iter().enumerate() {
            q[i] += phi[half + k] * c;
        }
    }
    while q.len() > 1 && *q.last().unwrap() == 0 {
        q.pop();
    }
    q
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// An exact element of the field, as coefficients of powers of `theta`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*θ"),
                _ => format!("{c}*θ^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

/// The field `Q(theta)`, `theta = 2cos(pi/M)`; `M = 1` gives the rationals.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    modulus: u32,
    /// Monic minimal polynomial, lowest degree first; degree `d`.
    minpoly: Vec<BigRational>,
    theta: f64,
    /// Rational interval isolating `theta` among the roots of `minpoly`.
    isolating: (BigRational, BigRational),
}

impl CyclotomicField {
    pub fn new(modulus: u32) -> Self {
        assert!(modulus >= 1, "field modulus must be positive");
        let minpoly: Vec<BigRational> = minimal_polynomial(modulus).into_iter().map(rat).collect();
        let theta = 2.0 * (std::f64::consts::PI / modulus as f64).cos();
        // Conjugates of theta are 2cos(k pi/M) for odd k coprime to M; they are
        // separated by far more than 1e-6 for any desk-scale modulus.
        let eps = BigRational::new(BigInt::from(1), BigInt::from(1_000_000));
        let center = BigRational::from_float(theta).expect("finite");
        let isolating = (&center - &eps, &center + &eps);
        Self { modulus, minpoly, theta, isolating }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigRational] {
        &self.minpoly
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![BigRational::zero(); self.degree()] }
    }

    pub fn from_integer(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = rat(n);
        e
    }

    /// Reduces an arbitrary polynomial in theta modulo the minimal polynomial.
    pub fn from_poly(&self, poly: &[BigRational]) -> FieldElement {
        let d = self.degree();
        let mut c: Vec<BigRational> = poly.to_vec();
        while c.len() > d {
            let top = c.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - d;
            for (i, m) in self.minpoly[..d].iter().enumerate() {
                c[shift + i] -= &top * m;
            }
        }
        c.resize(d, BigRational::zero());
        FieldElement { coeffs: c }
    }

    /// `2cos(k pi/M)`, valid when `k` is an integer.
    pub fn two_cos_multiple(&self, k: u32) -> FieldElement {
        let lk: Vec<BigRational> = lucas_polynomial(k as usize).into_iter().map(rat).collect();
        self.from_poly(&lk)
    }

    /// `2cos(pi/m)` for a bond `m` dividing the modulus (or `m <= 2`).
    pub fn two_cos_pi_over(&self, m: u32) -> FieldElement {
        match m {
            1 => self.from_integer(-2),
            2 => self.zero(),
            _ => {
                assert!(self.modulus.is_multiple_of(m), "bond {m} does not divide field modulus {}", self.modulus);
                self.two_cos_multiple(self.modulus / m)
            }
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.from_poly(&prod)
    }

    pub fn to_f64(&self, a: &FieldElement) -> f64 {
        a.coeffs.iter().rev().fold(0.0, |acc, c| acc * self.theta + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact sign: -1, 0 or 1.
    pub fn sign(&self, a: &FieldElement) -> i32 {
        if a.is_zero() {
            return 0;
        }
        let approx = self.to_f64(a);
        let scale: f64 = a
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_f64().unwrap_or(f64::INFINITY).abs() * self.theta.abs().max(1.0).powi(i as i32))
            .sum();
        if approx.abs() > 1e-9 * (scale + 1.0) {
            return if approx > 0.0 { 1 } else { -1 };
        }
        self.sign_exact(a)
    }

    fn eval_rational(poly: &[BigRational], x: &BigRational) -> BigRational {
        poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Interval evaluation of `a` over `[lo, hi]` by Horner's scheme.
    fn eval_interval(a: &FieldElement, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut acc = (BigRational::zero(), BigRational::zero());
        for c in a.coeffs.iter().rev() {
            let products = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let min = products.iter().min().expect("nonempty").clone();
            let max = products.iter().max().expect("nonempty").clone();
            acc = (min + c, max + c);
        }
        acc
    }

    fn sign_exact(&self, a: &FieldElement) -> i32 {
        let (mut lo, mut hi) = self.isolating.clone();
        let two = rat(2);
        let f_lo_sign = Self::eval_rational(&self.minpoly, &lo).signum();
        loop {
            let (vlo, vhi) = Self::eval_interval(a, &lo, &hi);
            if vlo.is_positive() {
                return 1;
            }
            if vhi.is_negative() {
                return -1;
            }
            let mid = (&lo + &hi) / &two;
            let f_mid = Self::eval_rational(&self.minpoly, &mid);
            if f_mid.is_zero() {
                // theta is rational; evaluate directly
                let v = Self::eval_rational(&a.coeffs, &mid);
                return if v.is_positive() { 1 } else { -1 };
            }
            if f_mid.signum() == f_lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_integer(1)
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        a.coeffs[0].is_one() && a.coeffs[1..].iter().all(Zero::is_zero)
    }
}
