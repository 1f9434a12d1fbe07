//! Dense univariate polynomial algebra over exact rationals, complex doubles,
//! or nested polynomials (bivariate work), plus Sylvester resultants and
//! discriminants via fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub mod roots;

/// Coefficient ring the polynomial machinery is generic over: exact
/// rationals, floating scalars, or polynomials again (for bivariate data).
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Division that the caller knows is exact in this ring (Bareiss pivots,
    /// content removal, leading-coefficient normalization).
    fn exact_div(&self, d: &Self) -> Self;

    /// Pivot preference for elimination; any value > 0 marks a usable pivot,
    /// larger is better.
    fn pivot_size(&self) -> f64;
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn pivot_size(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn pivot_size(&self) -> f64 {
        self.bits() as f64
    }
}

impl Coeff for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn pivot_size(&self) -> f64 {
        self.abs()
    }
}

impl Coeff for Complex64 {
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn pivot_size(&self) -> f64 {
        self.norm()
    }
}

impl<T: Coeff> Coeff for Poly<T> {
    fn from_i64(v: i64) -> Self {
        Poly::constant(T::from_i64(v))
    }
    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }
    fn pivot_size(&self) -> f64 {
        // Prefer low-degree pivots: they keep entry growth down.
        match self.degree() {
            None => 0.0,
            Some(d) => 1.0 / (1.0 + d as f64),
        }
    }
}

/// Dense univariate polynomial; `coeffs[i]` multiplies x^i and the leading
/// stored coefficient is nonzero (the zero polynomial stores nothing).
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    /// The monomial c·x^k.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    /// Horner evaluation; exact when T is exact.
    pub fn eval(&self, z: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_i64(i as i64))
            .collect();
        Poly::new(v)
    }

    pub fn scale(&self, s: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// p(a·x + b) by Horner over the image of x.
    pub fn compose_linear(&self, a: &T, b: &T) -> Self {
        let arg = Poly::new(vec![b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &arg) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// ∏ (x − r_i).
    pub fn from_roots(rs: &[T]) -> Self {
        let mut p = Poly::one();
        for r in rs {
            p = &p * &Poly::new(vec![r.clone().neg(), T::one()]);
        }
        p
    }

    /// Long division; the divisor's leading coefficient must divide exactly
    /// in T at every step (always true over a field or for monic divisors).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (Poly::zero(), self.clone());
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![T::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            let q = c.exact_div(&lc);
            for (i, dc) in d.coeffs.iter().enumerate() {
                let t = rem[k + i].clone() - q.clone() * dc.clone();
                rem[k + i] = t;
            }
            quot[k] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<'a, 'b, T: Coeff> Add<&'b Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &'b Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(v)
    }
}

impl<'a, 'b, T: Coeff> Sub<&'b Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &'b Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(v)
    }
}

impl<'a, 'b, T: Coeff> Mul<&'b Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &'b Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = v[i + j].clone() + a.clone() * b.clone();
                v[i + j] = t;
            }
        }
        Poly::new(v)
    }
}

impl<T: Coeff> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.into_iter().map(|c| c.neg()).collect())
    }
}

impl<T: Coeff> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        &self + &rhs
    }
}

impl<T: Coeff> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        &self - &rhs
    }
}

impl<T: Coeff> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}

impl<T: Coeff> Zero for Poly<T> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl<T: Coeff> One for Poly<T> {
    fn one() -> Self {
        Poly::one()
    }
}

/// Bivariate data: a polynomial in the outer variable whose coefficients are
/// exact polynomials in the inner one. Outer = E (or the shifted x), inner =
/// t = ζ̂² everywhere in this crate.
pub type BiPoly = Poly<Poly<BigRational>>;

#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("degree {got} below the minimum {min} required")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("leading coefficient must not depend on the inner variable")]
    NonConstantLeading,
}

/// Resultant of p and q as the Bareiss (fraction-free) determinant of their
/// (deg p + deg q)² Sylvester matrix; exact whenever T is exact.
pub fn sylvester_resultant<T: Coeff>(p: &Poly<T>, q: &Poly<T>) -> Result<T, PolyError> {
    let m = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    let n = q.degree().ok_or(PolyError::ZeroPolynomial)?;
    if m == 0 && n == 0 {
        return Ok(T::one());
    }
    if m == 0 {
        return Ok(p.coeff(0).pow_usize(n));
    }
    if n == 0 {
        return Ok(q.coeff(0).pow_usize(m));
    }
    let size = m + n;
    let mut mat = vec![vec![T::zero(); size]; size];
    for r in 0..n {
        for (i, _) in p.coeffs.iter().enumerate() {
            mat[r][r + m - i] = p.coeff(i);
        }
    }
    for r in 0..m {
        for (i, _) in q.coeffs.iter().enumerate() {
            mat[n + r][r + n - i] = q.coeff(i);
        }
    }
    Ok(bareiss_determinant(mat))
}

trait PowUsize {
    fn pow_usize(&self, e: usize) -> Self;
}

impl<T: Coeff> PowUsize for T {
    fn pow_usize(&self, e: usize) -> T {
        let mut acc = T::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Fraction-free determinant (Bareiss); row swaps handled with a sign flip.
fn bareiss_determinant<T: Coeff>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let mut best: Option<(usize, f64)> = None;
            for r in k + 1..n {
                let w = m[r][k].pivot_size();
                if w > 0.0 && best.map_or(true, |(_, bw)| w > bw) {
                    best = Some((r, w));
                }
            }
            match best {
                Some((r, _)) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Discriminant Δ = (−1)^{n(n−1)/2} Res(p, p′) / lc(p) for deg p = n ≥ 2;
/// equals ∏_{i<j}(r_i − r_j)² for monic p with roots r_i.
pub fn discriminant<T: Coeff>(p: &Poly<T>) -> Result<T, PolyError> {
    let n = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if n < 2 {
        return Err(PolyError::DegreeTooSmall { min: 2, got: n });
    }
    let res = sylvester_resultant(p, &p.derivative())?;
    let lc = p.leading().unwrap();
    let signed = if (n * (n - 1) / 2) % 2 == 1 {
        res.neg()
    } else {
        res
    };
    Ok(signed.exact_div(lc))
}

/// Exact resultant in the outer variable of two bivariate polynomials, as a
/// polynomial in the inner variable t. Requires both outer leading
/// coefficients to be t-free (true for the monic families here), so that
/// evaluation at t-nodes commutes with the resultant; the determinant is then
/// recovered by exact interpolation at integer nodes, which is much cheaper
/// than Bareiss over polynomial entries at the sizes the Mathieu limit needs.
pub fn resultant_in_t(p: &BiPoly, q: &BiPoly) -> Result<Poly<BigRational>, PolyError> {
    let m = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    let n = q.degree().ok_or(PolyError::ZeroPolynomial)?;
    let tdeg = |f: &BiPoly| {
        f.coeffs()
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    };
    let bound = n * tdeg(p) + m * tdeg(q);
    resultant_in_t_bounded(p, q, bound)
}

fn resultant_in_t_bounded(
    p: &BiPoly,
    q: &BiPoly,
    bound: usize,
) -> Result<Poly<BigRational>, PolyError> {
    let m = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    let n = q.degree().ok_or(PolyError::ZeroPolynomial)?;
    if m == 0 || n == 0 {
        // Degenerate outer degrees: the direct determinant is already cheap.
        return sylvester_resultant(p, q);
    }
    let lc_ok = |f: &BiPoly| f.leading().unwrap().degree() == Some(0);
    if !lc_ok(p) || !lc_ok(q) {
        return Err(PolyError::NonConstantLeading);
    }
    // Ratio arithmetic reduces by gcd after every operation; with integer
    // inputs (all families here) the Sylvester determinant runs far faster
    // over plain BigInt, so take that route whenever the evaluations land on
    // integers.
    let as_int = |f: &Poly<BigRational>| -> Option<Poly<BigInt>> {
        f.coeffs()
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    };
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    for k in 0..=bound {
        let node = BigRational::from_i64(k as i64);
        let pk = p.map(|c| c.eval(&node));
        let qk = q.map(|c| c.eval(&node));
        let y = match (as_int(&pk), as_int(&qk)) {
            (Some(pi), Some(qi)) => {
                BigRational::from_integer(sylvester_resultant(&pi, &qi)?)
            }
            _ => sylvester_resultant(&pk, &qk)?,
        };
        ys.push(y);
        xs.push(node);
    }
    Ok(interpolate(&xs, &ys))
}

/// Discriminant in the outer variable of a bivariate polynomial, exact, as a
/// polynomial in t. Same leading-coefficient restriction as `resultant_in_t`.
pub fn discriminant_in_t(p: &BiPoly) -> Result<Poly<BigRational>, PolyError> {
    let n = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if n < 2 {
        return Err(PolyError::DegreeTooSmall { min: 2, got: n });
    }
    // Every family here stores at most t^⌊(n−j)/2⌋ alongside x^j (one power
    // of t traded for two of x). Picking one Sylvester entry per row/column
    // then caps each permutation product at t-degree n(n−1)/2, less than
    // half the generic bound — fewer, smaller interpolation nodes.
    let dp = p.derivative();
    let half_degree_structure = p
        .coeffs()
        .iter()
        .enumerate()
        .all(|(j, c)| c.degree().unwrap_or(0) <= (n - j) / 2);
    let res = if half_degree_structure {
        resultant_in_t_bounded(p, &dp, n * (n - 1) / 2)?
    } else {
        resultant_in_t(p, &dp)?
    };
    let lc = p.leading().unwrap();
    if lc.degree() != Some(0) {
        return Err(PolyError::NonConstantLeading);
    }
    let signed = if (n * (n - 1) / 2) % 2 == 1 {
        res.neg()
    } else {
        res
    };
    Ok(signed.scale(&(BigRational::one() / lc.coeff(0))))
}

/// Exact Newton interpolation through (xs[i], ys[i]) with distinct xs.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Poly<BigRational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    // dd[i] becomes the divided difference ys[i..=i+k] at stage k.
    let mut coeffs = Vec::with_capacity(n);
    coeffs.push(dd[0].clone());
    for k in 1..n {
        for i in (k..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - k];
            dd[i] = num / den;
        }
        coeffs.push(dd[k].clone());
    }
    let mut acc = Poly::zero();
    for k in (0..n).rev() {
        let shift = Poly::new(vec![-xs[k].clone(), BigRational::one()]);
        acc = &(&acc * &shift) + &Poly::constant(coeffs[k].clone());
    }
    acc
}

/// Strips the rational content: returns (κ, Δ̃) with self = κ·Δ̃, where Δ̃ has
/// coprime integer coefficients and positive leading coefficient.
pub fn reduce_content(p: &Poly<BigRational>) -> (BigRational, Poly<BigRational>) {
    use num_integer::Integer;
    if p.is_zero() {
        return (BigRational::one(), Poly::zero());
    }
    let mut den_lcm = BigInt::one();
    for c in p.coeffs() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    let reduced = Poly::new(
        ints.iter()
            .map(|v| BigRational::from_integer(v / &g))
            .collect(),
    );
    let kappa = BigRational::new(g, den_lcm);
    (kappa, reduced)
}

/// Renders an exact polynomial such as "zhat^6 - zhat^4 + 103 zhat^2 - 36":
/// descending powers, integer-style coefficients where possible, and each
/// stored power multiplied by `power_scale` (2 turns a poly in t into the
/// same poly written in ζ̂).
pub fn format_exact(p: &Poly<BigRational>, var: &str, power_scale: usize) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let deg = p.degree().unwrap();
    let mut first = true;
    for i in (0..=deg).rev() {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let power = i * power_scale;
        let mag_str = if mag.denom().is_one() {
            mag.numer().to_string()
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        if power == 0 {
            out.push_str(&mag_str);
        } else {
            if !mag.is_one() {
                out.push_str(&mag_str);
                out.push(' ');
            }
            out.push_str(var);
            if power > 1 {
                out.push_str(&format!("^{power}"));
            }
        }
    }
    out
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

pub fn to_complex_poly(p: &Poly<BigRational>) -> Poly<Complex64> {
    p.map(|c| Complex64::new(rational_to_f64(c), 0.0))
}

pub fn to_f64_poly(p: &Poly<BigRational>) -> Poly<f64> {
    p.map(rational_to_f64)
}

/// Rational → f64 that survives numerators/denominators far beyond the f64
/// range by cancelling binary magnitudes first.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
    let pow = BigRational::from_integer(BigInt::one() << shift.unsigned_abs());
    let scaled = if shift >= 0 { r / &pow } else { r * &pow };
    let base = scaled.to_f64().unwrap_or(f64::NAN);
    base * 2f64.powi(shift as i32)
}
