//! Exceptional points of the quasi-exact block, located exactly: the
//! discriminant of the shifted block polynomial in t = ζ̂² is computed over
//! the rationals, reduced to an integer polynomial, and its positive real
//! roots give the coalescence couplings ζ̂₀ = √t₀.

use crate::model::{shifted_block, Quantization};
use crate::polynomials::roots::{find_roots, real_roots_in_t, NonConvergence};
use crate::polynomials::{
    discriminant_in_t, reduce_content, to_complex_poly, to_f64_poly, Poly, PolyError,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

#[derive(Debug, thiserror::Error)]
pub enum ExceptionalError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Roots(#[from] NonConvergence),
}

/// disc_x Φ(x, t) for the shifted block Φ, as an exact polynomial in t.
/// `raw = kappa · reduced` with `reduced` integer-coefficient, content 1,
/// positive leading coefficient.
#[derive(Debug, Clone)]
pub struct DiscriminantReport {
    pub quantization: Quantization,
    pub raw: Poly<BigRational>,
    pub reduced: Poly<BigRational>,
    pub kappa: BigRational,
}

pub fn discriminant_in_zhat(q: Quantization) -> Result<DiscriminantReport, ExceptionalError> {
    let block = shifted_block(q);
    let raw = discriminant_in_t(&block)?;
    let (kappa, reduced) = reduce_content(&raw);
    Ok(DiscriminantReport {
        quantization: q,
        raw,
        reduced,
        kappa,
    })
}

/// A coalescence point: at ζ̂² = t0 the shifted block has a repeated root
/// x_deg, so the physical spectrum degenerates at E = x_deg + λζ².
#[derive(Debug, Clone, Copy)]
pub struct ExceptionalPoint {
    pub t0: f64,
    pub zhat0: f64,
    pub x_deg: f64,
}

/// All exceptional points at real positive t, sorted by t0.
pub fn exceptional_points(q: Quantization) -> Result<Vec<ExceptionalPoint>, ExceptionalError> {
    let report = discriminant_in_zhat(q)?;
    let block = shifted_block(q);
    let mut out = Vec::new();
    for t0 in real_roots_in_t(&report.reduced) {
        if t0 <= 0.0 {
            continue;
        }
        let x_deg = repeated_root_at(&block, t0)?;
        out.push(ExceptionalPoint {
            t0,
            zhat0: t0.sqrt(),
            x_deg,
        });
    }
    Ok(out)
}

/// Smallest coalescence coupling ζ̂₀ > 0, if any.
pub fn smallest_ep(q: Quantization) -> Result<Option<f64>, ExceptionalError> {
    Ok(exceptional_points(q)?.first().map(|ep| ep.zhat0))
}

/// Substitute t = t0 into the bivariate block and return the midpoint of the
/// closest pair of roots — the (nearly) repeated x.
fn repeated_root_at(
    block: &Poly<Poly<BigRational>>,
    t0: f64,
) -> Result<f64, ExceptionalError> {
    let at_t0 = Poly::new(
        block
            .coeffs()
            .iter()
            .map(|c| Complex64::new(to_f64_poly(c).eval(&t0), 0.0))
            .collect(),
    );
    let roots = find_roots(&at_t0)?;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = (roots[i] - roots[j]).norm();
            if d < best.0 {
                best = (d, 0.5 * (roots[i] + roots[j]).re);
            }
        }
    }
    Ok(best.1)
}

/// Float cross-check: the discriminant of a monic polynomial equals
/// ∏_{i<j}(r_i − r_j)². Returns (exact disc evaluated at t, product over the
/// numerically computed roots).
pub fn discriminant_consistency(
    q: Quantization,
    t: f64,
) -> Result<(f64, f64), ExceptionalError> {
    let report = discriminant_in_zhat(q)?;
    let disc_val = to_f64_poly(&report.raw).eval(&t);
    let block = shifted_block(q);
    let at_t = Poly::new(
        block
            .coeffs()
            .iter()
            .map(|c| Complex64::new(to_f64_poly(c).eval(&t), 0.0))
            .collect(),
    );
    let roots = find_roots(&at_t)?;
    let mut prod = Complex64::new(1.0, 0.0);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = roots[i] - roots[j];
            prod *= d * d;
        }
    }
    Ok((disc_val, prod.re))
}

/// Helper for exact table checks: integer-coefficient polynomial in t from
/// low-order-first i64 coefficients.
pub fn int_poly(coeffs: &[i64]) -> Poly<BigRational> {
    Poly::new(
        coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect(),
    )
}

/// Exact complex check used by property tests: evaluates the reduced
/// discriminant at complex t.
pub fn reduced_at(report: &DiscriminantReport, t: Complex64) -> Complex64 {
    to_complex_poly(&report.reduced).eval(&t)
}
