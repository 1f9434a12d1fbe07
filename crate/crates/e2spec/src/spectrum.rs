//! Quasi-exact eigenvalues with degeneracy classification, the closed-form
//! energy oracles, eigenfunction evaluation in the θ-representation, and the
//! Schrödinger-residual check that exercises the whole chain (recurrences,
//! c_n, φ₀, operator ordering) at once.

use crate::model::{
    build_family, cn_coefficients, ModelError, ModelParams, Parity, Quantization,
};
use crate::polynomials::roots::{find_roots, NonConvergence};
use crate::polynomials::Poly;
use num_complex::Complex64;
use num_traits::Zero;

/// Degeneracy radius: roots closer than 1e−7·(1+|E|) form one cluster.
const DEGENERACY_RADIUS: f64 = 1e-7;
/// |Im E| below 1e−8·(1+|E|) counts as real.
const REALITY_TOL: f64 = 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Roots(#[from] NonConvergence),
    #[error("no closed form at n_tilde = {n_tilde} for this family")]
    ClosedFormUnavailable { n_tilde: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyClass {
    Real,
    ConjugatePairMember,
    Degenerate,
    Complex,
}

/// The quasi-exact block of the spectrum: ñ energies for the even family,
/// ñ−1 for the odd one, ordered by (Re, Im).
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub quantization: Quantization,
    pub zeta: f64,
    pub lambda: Complex64,
    pub energies: Vec<Complex64>,
    pub classes: Vec<EnergyClass>,
}

fn complex_params(
    q: Quantization,
    zeta: f64,
    lambda: Complex64,
) -> Result<ModelParams<Complex64>, ModelError> {
    ModelParams::quantized(q, Complex64::new(zeta, 0.0), lambda)
}

/// The block polynomial whose roots are the quasi-exact energies: P_ñ (even)
/// or Q_ñ (odd) at N = ñ + (ñ−1)λ.
pub fn block_polynomial(
    q: Quantization,
    zeta: f64,
    lambda: Complex64,
) -> Result<Poly<Complex64>, ModelError> {
    let params = complex_params(q, zeta, lambda)?;
    let fam = build_family(&params, q.parity, q.block_size());
    Ok(fam.into_iter().last().unwrap())
}

pub fn eigenvalues(
    q: Quantization,
    zeta: f64,
    lambda: Complex64,
) -> Result<Spectrum, SpectrumError> {
    let p = block_polynomial(q, zeta, lambda)?;
    let energies = find_roots(&p)?;
    let classes = classify(&energies);
    Ok(Spectrum {
        quantization: q,
        zeta,
        lambda,
        energies,
        classes,
    })
}

fn classify(es: &[Complex64]) -> Vec<EnergyClass> {
    es.iter()
        .enumerate()
        .map(|(i, e)| {
            let tol = DEGENERACY_RADIUS * (1.0 + e.norm());
            let degenerate = es
                .iter()
                .enumerate()
                .any(|(j, f)| j != i && (e - f).norm() <= tol);
            if degenerate {
                return EnergyClass::Degenerate;
            }
            if e.im.abs() <= REALITY_TOL * (1.0 + e.norm()) {
                return EnergyClass::Real;
            }
            let ctol = REALITY_TOL * (1.0 + e.norm());
            let paired = es
                .iter()
                .enumerate()
                .any(|(j, f)| j != i && (f - e.conj()).norm() <= ctol);
            if paired {
                EnergyClass::ConjugatePairMember
            } else {
                EnergyClass::Complex
            }
        })
        .collect()
}

impl Spectrum {
    pub fn has_degenerate_cluster(&self) -> bool {
        self.classes.contains(&EnergyClass::Degenerate)
    }
}

/// Explicit closed-form energies where the block is at most a cubic:
/// even ñ ≤ 3, odd ñ ≤ 4. The ℓ ∈ {0, ±2} cube-root branches are returned
/// as a multiset (no branch-to-root correspondence is defined).
pub fn closed_form(
    q: Quantization,
    zeta: f64,
    lambda: Complex64,
) -> Result<Vec<Complex64>, SpectrumError> {
    let z = Complex64::new(zeta, 0.0);
    let lz = lambda * z * z;
    let zhat2 = (z * (Complex64::new(1.0, 0.0) + lambda)).powu(2);
    let re = |v: f64| Complex64::new(v, 0.0);
    let out = match (q.parity, q.n_tilde) {
        (Parity::Even, 1) => vec![lz],
        (Parity::Even, 2) => {
            let s = (re(1.0) - zhat2).sqrt();
            vec![re(2.0) + lz - 2.0 * s, re(2.0) + lz + 2.0 * s]
        }
        (Parity::Even, 3) => cardano_branches(lz, zhat2, 20.0 / 3.0, 13.0, 35.0, 52.0),
        (Parity::Odd, 2) => vec![re(4.0) + lz],
        (Parity::Odd, 3) => {
            let s = (re(9.0) - zhat2).sqrt();
            vec![re(10.0) + lz - 2.0 * s, re(10.0) + lz + 2.0 * s]
        }
        (Parity::Odd, 4) => cardano_branches(lz, zhat2, 56.0 / 3.0, 49.0, 143.0, 196.0),
        _ => {
            return Err(SpectrumError::ClosedFormUnavailable {
                n_tilde: q.n_tilde,
            })
        }
    };
    Ok(out)
}

/// Shared shape of the two printed cubic solutions:
/// E = base + λζ² + (4Ω/3)e^{iπℓ/3} + (top − 12ζ̂²)e^{−iπℓ/3}/(3Ω) with
/// Ω³ = c1 + 18ζ̂² + √((3ζ̂² − c3)³ + (18ζ̂² + c1)²), ℓ ∈ {0, 2, −2},
/// principal square and cube roots.
fn cardano_branches(
    lz: Complex64,
    zhat2: Complex64,
    base: f64,
    c3: f64,
    c1: f64,
    top: f64,
) -> Vec<Complex64> {
    let re = |v: f64| Complex64::new(v, 0.0);
    let inner = (3.0 * zhat2 - re(c3)).powu(3) + (18.0 * zhat2 + re(c1)).powu(2);
    let omega = (re(c1) + 18.0 * zhat2 + inner.sqrt()).cbrt();
    [0.0f64, 2.0, -2.0]
        .iter()
        .map(|l| {
            let phase = Complex64::from_polar(1.0, std::f64::consts::PI * l / 3.0);
            re(base) + lz + 4.0 / 3.0 * omega * phase
                + (re(top) - 12.0 * zhat2) / (3.0 * omega * phase)
        })
        .collect()
}

/// ψ in the θ-representation: φ₀(θ)·Σ iⁿ c_n P_n(E) cos 2nθ (even) or
/// φ₀(θ)·Σ i^{n+1} c_n Q_n(E) sin 2nθ (odd), with φ₀ = exp((i/2)ζ cos 2θ).
#[derive(Debug, Clone)]
pub struct Eigenfunction {
    pub parity: Parity,
    pub zeta: f64,
    pub lambda: Complex64,
    pub energy: Complex64,
    /// coefficient of cos 2nθ (even) / sin 2nθ (odd) at frequency index n
    pub terms: Vec<Complex64>,
    /// True when E annihilates the block polynomial, i.e. the series
    /// genuinely truncates because Φ_n(E) = 0 for all n ≥ ñ.
    pub truncates: bool,
}

pub fn eigenfunction(
    q: Quantization,
    zeta: f64,
    lambda: Complex64,
    energy: Complex64,
) -> Result<Eigenfunction, SpectrumError> {
    let params = complex_params(q, zeta, lambda)?;
    if zeta == 0.0 {
        return Err(SpectrumError::Model(ModelError::ZetaZero));
    }
    let nt = q.n_tilde as usize;
    let fam = build_family(&params, q.parity, q.block_size());
    let cs = cn_coefficients(&params, nt.saturating_sub(1))?;
    let i = Complex64::new(0.0, 1.0);
    let terms: Vec<Complex64> = match q.parity {
        // a_n = iⁿ c_n P_n(E), n = 0 … ñ−1
        Parity::Even => (0..nt)
            .map(|n| i.powu(n as u32) * cs[n] * fam[n].eval(&energy))
            .collect(),
        // b_n = i^{n+1} c_n Q_n(E), n = 1 … ñ−1; index 0 (the absent sin 0θ
        // term) stays zero
        Parity::Odd => (0..nt)
            .map(|n| {
                if n == 0 {
                    Complex64::zero()
                } else {
                    i.powu(n as u32 + 1) * cs[n] * fam[n - 1].eval(&energy)
                }
            })
            .collect(),
    };
    let block = block_polynomial(q, zeta, lambda)?;
    let norm1: f64 = block.coeffs().iter().map(|c| c.norm()).sum();
    let deg = block.degree().unwrap_or(0) as i32;
    let scaled = block.eval(&energy).norm() / (norm1 * energy.norm().max(1.0).powi(deg));
    Ok(Eigenfunction {
        parity: q.parity,
        zeta,
        lambda,
        energy,
        terms,
        truncates: scaled < 1e-8,
    })
}

impl Eigenfunction {
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.eval_with_derivatives(theta).0
    }

    /// (ψ, ψ′, ψ″) at θ, all derivatives analytic term-by-term.
    pub fn eval_with_derivatives(&self, theta: f64) -> (Complex64, Complex64, Complex64) {
        let i = Complex64::new(0.0, 1.0);
        let z = self.zeta;
        let c2 = (2.0 * theta).cos();
        let s2 = (2.0 * theta).sin();
        let phi0 = (i * 0.5 * z * c2).exp();

        let mut s = Complex64::zero();
        let mut ds = Complex64::zero();
        let mut dds = Complex64::zero();
        for (n, a) in self.terms.iter().enumerate() {
            let w = 2.0 * n as f64;
            let (basis, dbasis) = match self.parity {
                Parity::Even => ((w * theta).cos(), -w * (w * theta).sin()),
                Parity::Odd => ((w * theta).sin(), w * (w * theta).cos()),
            };
            s += a * basis;
            ds += a * dbasis;
            dds += a * (-w * w * basis);
        }

        let dphi_fac = -i * z * s2; // φ₀′/φ₀
        let ddphi_fac = -2.0 * i * z * c2 - z * z * s2 * s2; // φ₀″/φ₀
        let psi = phi0 * s;
        let dpsi = phi0 * (dphi_fac * s + ds);
        let ddpsi = phi0 * (ddphi_fac * s + 2.0 * dphi_fac * ds + dds);
        (psi, dpsi, ddpsi)
    }
}

/// max over a uniform θ-grid of |Hψ − Eψ| with
/// Hψ = −ψ″ − i(1−λ)ζ sin(2θ)ψ′ + [λζ² cos²2θ − 2iζN cos 2θ]ψ
/// (multiply-after-differentiate ordering for the uvJ term).
pub fn schroedinger_residual(
    q: Quantization,
    zeta: f64,
    lambda: Complex64,
    energy: Complex64,
    grid_size: usize,
) -> Result<f64, SpectrumError> {
    let psi = eigenfunction(q, zeta, lambda, energy)?;
    let i = Complex64::new(0.0, 1.0);
    let n_cap = q.capital_n(&lambda);
    let one = Complex64::new(1.0, 0.0);
    let mut worst = 0.0f64;
    for j in 0..grid_size.max(3) {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / grid_size.max(3) as f64;
        let c2 = (2.0 * theta).cos();
        let s2 = (2.0 * theta).sin();
        let (v, dv, ddv) = psi.eval_with_derivatives(theta);
        let h = -ddv - i * (one - lambda) * zeta * s2 * dv
            + (lambda * zeta * zeta * c2 * c2 - 2.0 * i * zeta * n_cap * c2) * v;
        worst = worst.max((h - energy * v).norm());
    }
    Ok(worst)
}
