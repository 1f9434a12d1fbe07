//! The weak-orthogonality apparatus. The energy polynomials satisfy a
//! three-term recurrence, so Favard gives a linear functional 𝓛 with
//! 𝓛(Φ_nΦ_m) = N_n δ_{nm}; here: norms by two independent routes
//! (recurrence product and hypergeometric-style closed formula), the
//! discrete measure supported on the quasi-exact spectrum, and moment
//! functionals by two routes (weights and monic-expansion recurrence).
//!
//! Everything is degree-indexed: `vec[j]` belongs to the degree-j member of
//! the family, which for the sin-series is Q_{j+1}.

use crate::model::{build_family, ModelParams, Parity, Quantization};
use crate::polynomials::{Coeff, Poly};
use crate::spectrum::{eigenvalues, SpectrumError};
use num_complex::Complex64;
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error)]
pub enum OrthopolyError {
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("norm ratio pole: the closed formula divides by 2ζ²(N+λ)(1−N), which vanishes here")]
    QNormPole,
    #[error("spectrum has a degenerate cluster; the measure is not defined at a coalescence")]
    DegenerateSpectrum,
    #[error("weight system is singular")]
    SingularSystem,
}

/// Norms from the recurrence product: N_j = ∏_{k=1..j} b_k where −b_k is the
/// Φ_{k−2}-coefficient in the step producing the degree-k member (with the
/// factor-2 anomaly at the first cos step). `vec[0] = 1` normalizes 𝓛(1)=1.
pub fn norms_product<T: Coeff>(
    params: &ModelParams<T>,
    parity: Parity,
    n_max: usize,
) -> Vec<T> {
    let z2 = params.zeta.clone() * params.zeta.clone();
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = T::one();
    out.push(acc.clone());
    for j in 1..=n_max {
        let b = match parity {
            Parity::Even => {
                let f = if j == 1 { T::from_i64(2) } else { T::one() };
                -(f * z2.clone() * params.coupling(j as i64))
            }
            Parity::Odd => -(z2.clone() * params.coupling(j as i64 + 1)),
        };
        acc = acc * b;
        out.push(acc.clone());
    }
    out
}

fn pochhammer<T: Coeff>(x: &T, n: usize) -> T {
    let mut acc = T::one();
    for k in 0..n {
        acc = acc * (x.clone() + T::from_i64(k as i64));
    }
    acc
}

fn pow_t<T: Coeff>(x: &T, n: usize) -> T {
    let mut acc = T::one();
    for _ in 0..n {
        acc = acc * x.clone();
    }
    acc
}

/// Closed-formula norms:
/// N_nᴾ = 2 ζ^{2n} (1+λ)^{2n} ((1−N)/(1+λ))_n ((λ+N)/(1+λ))_n for n ≥ 1,
/// with the n = 0 entry fixed to 1 by 𝓛(1) = 1. The sin-family norms are the
/// single ratio N_n^Q = N_nᴾ / [2ζ²(N+λ)(1−N)] (which automatically gives
/// the degree-0 entry N₁^Q = 1), flagged as a pole when the denominator
/// vanishes.
pub fn norms_formula<T: Coeff>(
    params: &ModelParams<T>,
    parity: Parity,
    n_max: usize,
) -> Result<Vec<T>, OrthopolyError> {
    let one = T::one();
    let lam1 = one.clone() + params.lambda.clone();
    let a = (one.clone() - params.n.clone()).exact_div(&lam1);
    let b = (params.lambda.clone() + params.n.clone()).exact_div(&lam1);
    let zh2 = params.zhat() * params.zhat();
    let p_norm = |n: usize| -> T {
        T::from_i64(2) * pow_t(&zh2, n) * pochhammer(&a, n) * pochhammer(&b, n)
    };
    match parity {
        Parity::Even => {
            let mut out = vec![one];
            for n in 1..=n_max {
                out.push(p_norm(n));
            }
            Ok(out)
        }
        Parity::Odd => {
            let denom = T::from_i64(2)
                * params.zeta.clone()
                * params.zeta.clone()
                * (params.n.clone() + params.lambda.clone())
                * (T::one() - params.n.clone());
            if denom.is_zero() {
                return Err(OrthopolyError::QNormPole);
            }
            Ok((0..=n_max).map(|j| p_norm(j + 1).exact_div(&denom)).collect())
        }
    }
}

/// Discrete Stieltjes measure ω(E) = Σ ω_k δ(E − E_k) on the quasi-exact
/// spectrum, weights fixed by Σ_k ω_k Φ_n(E_k) = δ_{n0} for n < ℓ.
#[derive(Debug, Clone)]
pub struct Measure {
    pub quantization: Quantization,
    pub zeta: f64,
    pub lambda: Complex64,
    pub nodes: Vec<Complex64>,
    pub weights: Vec<Complex64>,
}

pub fn measure_weights(
    q: Quantization,
    zeta: f64,
    lambda: Complex64,
) -> Result<Measure, OrthopolyError> {
    let spec = eigenvalues(q, zeta, lambda)?;
    if spec.has_degenerate_cluster() {
        return Err(OrthopolyError::DegenerateSpectrum);
    }
    let nodes = spec.energies;
    let l = nodes.len();
    let params = ModelParams::quantized(q, Complex64::new(zeta, 0.0), lambda)
        .map_err(SpectrumError::from)?;
    let fam = build_family(&params, q.parity, l - 1);
    let a: Vec<Vec<Complex64>> = (0..l)
        .map(|n| nodes.iter().map(|e| fam[n].eval(e)).collect())
        .collect();
    let mut rhs = vec![Complex64::zero(); l];
    rhs[0] = Complex64::one();
    let weights = solve_complex(a, rhs).ok_or(OrthopolyError::SingularSystem)?;
    Ok(Measure {
        quantization: q,
        zeta,
        lambda,
        nodes,
        weights,
    })
}

impl Measure {
    /// 𝓛(p) = Σ_k ω_k p(E_k).
    pub fn functional(&self, p: &Poly<Complex64>) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(e, w)| w * p.eval(e))
            .sum()
    }

    /// μ_n = 𝓛(Eⁿ) for n = 0..=max_order, straight from the weights.
    pub fn moments(&self, max_order: usize) -> Vec<Complex64> {
        (0..=max_order)
            .map(|n| {
                self.nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(e, w)| w * e.powu(n as u32))
                    .sum()
            })
            .collect()
    }
}

/// μ_n via the monic expansions alone: 𝓛(Φ_n) = 0 for n ≥ 1 together with
/// Φ_n = Eⁿ + Σ_{k<n} d_k Eᵏ pins every moment recursively, μ_n = −Σ d_k μ_k.
/// Needs no quantization and stays exact on exact coefficient types.
pub fn moments_recurrence<T: Coeff>(
    params: &ModelParams<T>,
    parity: Parity,
    max_order: usize,
) -> Vec<T> {
    let fam = build_family(params, parity, max_order);
    let mut mu: Vec<T> = Vec::with_capacity(max_order + 1);
    mu.push(T::one());
    for n in 1..=max_order {
        let mut s = T::zero();
        for k in 0..n {
            s = s + fam[n].coeff(k) * mu[k].clone();
        }
        mu.push(-s);
    }
    mu
}

/// μ_n via the discrete measure: Σ_k ω_k E_kⁿ.
pub fn moments_weights(
    q: Quantization,
    zeta: f64,
    lambda: Complex64,
    max_order: usize,
) -> Result<Vec<Complex64>, OrthopolyError> {
    Ok(measure_weights(q, zeta, lambda)?.moments(max_order))
}

/// Dense partial-pivot Gaussian elimination over ℂ; None when singular.
fn solve_complex(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    for col in 0..n {
        let (pivot, pnorm) = (col..n)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if pnorm <= 1e-13 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
            let bv = b[col];
            b[r] -= f * bv;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in row + 1..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}
