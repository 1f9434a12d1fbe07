//! Double-scaling study: the coalescence couplings of the finite model,
//! rescaled as g(n) = ζ₀·N(n), approach the complex Mathieu exceptional
//! point; the Mathieu EP itself is computed independently from the limiting
//! three-term recurrence, never hard-coded.

use crate::exceptional::{smallest_ep, ExceptionalError};
use crate::model::{build_mathieu_limit_exact, ModelError, Parity, Quantization};
use crate::polynomials::roots::smallest_positive_real_root;
use crate::polynomials::{discriminant_in_t, reduce_content, PolyError};

#[derive(Debug, thiserror::Error)]
pub enum MathieuError {
    #[error("need at least 3 truncation levels, got {0}")]
    TooFewLevels(usize),
    #[error("level {level}: discriminant has no positive real root below the scan bound")]
    NoRoot { level: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exceptional(#[from] ExceptionalError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone)]
pub struct MathieuEp {
    pub parity: Parity,
    /// (truncation level L, smallest EP coupling of the level-L block)
    pub sequence: Vec<(usize, f64)>,
    /// The value at the largest level — the in-repo ζ_M estimate.
    pub g: f64,
}

/// EP of the limiting (Mathieu) recurrence at truncation levels 2..=levels:
/// exact discriminant of the level-L characteristic polynomial in s = g²,
/// smallest positive real root by exact sign scan + bisection, g = √s₀.
pub fn mathieu_ep(levels: usize, parity: Parity) -> Result<MathieuEp, MathieuError> {
    if levels < 3 {
        return Err(MathieuError::TooFewLevels(levels));
    }
    let fam = build_mathieu_limit_exact(levels, parity);
    let mut sequence = Vec::new();
    for level in 2..=levels {
        let disc = discriminant_in_t(&fam[level])?;
        let (_, reduced) = reduce_content(&disc);
        let s0 = smallest_positive_real_root(&reduced, 64)
            .ok_or(MathieuError::NoRoot { level })?;
        sequence.push((level, s0.sqrt()));
    }
    let g = sequence.last().unwrap().1;
    Ok(MathieuEp {
        parity,
        sequence,
        g,
    })
}

/// One row of the double-scaling table at level n: quantization ñ = n+1,
/// N(n) = (n+1)+nλ, smallest coalescence ζ̂₀ (λ-free), physical ζ₀ =
/// ζ̂₀/(1+λ), rescaled coupling g(n) = ζ₀·N(n) = ζ̂₀·(n + 1/(1+λ)), and the
/// distance Δ(n) = g(n) − ζ_M from the Mathieu EP.
#[derive(Debug, Clone, Copy)]
pub struct ScalingRow {
    pub n: u32,
    pub capital_n: f64,
    pub zhat0: f64,
    pub zeta0: f64,
    pub g: f64,
    pub delta: f64,
}

/// Rows n = 1..=n_max (rows whose block is too small to coalesce — the odd
/// family at n = 1 — are skipped). `zeta_m` is the reference Mathieu EP,
/// normally the output of [`mathieu_ep`].
pub fn ep_sequence(
    lambda: f64,
    n_max: u32,
    parity: Parity,
    zeta_m: f64,
) -> Result<Vec<ScalingRow>, MathieuError> {
    if lambda == -1.0 {
        return Err(MathieuError::Model(ModelError::LambdaIsMinusOne));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let q = match Quantization::new(n + 1, parity) {
            Some(q) if q.block_size() >= 2 => q,
            _ => continue,
        };
        let zhat0 = match smallest_ep(q) {
            Ok(Some(z)) => z,
            Ok(None) => continue,
            Err(ExceptionalError::Poly(PolyError::DegreeTooSmall { .. })) => continue,
            Err(e) => return Err(e.into()),
        };
        let zeta0 = zhat0 / (1.0 + lambda);
        let capital_n = (n + 1) as f64 + n as f64 * lambda;
        let g = zeta0 * capital_n;
        rows.push(ScalingRow {
            n,
            capital_n,
            zhat0,
            zeta0,
            g,
            delta: g - zeta_m,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct LambdaStudy {
    pub lambdas: Vec<f64>,
    /// rows[i] are the ScalingRows for lambdas[i]
    pub rows: Vec<Vec<ScalingRow>>,
    /// (n, λ attaining the smallest |Δ(n)| across the sweep)
    pub argmin: Vec<(u32, f64)>,
}

/// |Δ(n)| compared across λ values, flagging the best λ per level.
pub fn optimal_lambda_study(
    lambdas: &[f64],
    n_max: u32,
    parity: Parity,
    zeta_m: f64,
) -> Result<LambdaStudy, MathieuError> {
    let mut rows = Vec::with_capacity(lambdas.len());
    for &l in lambdas {
        rows.push(ep_sequence(l, n_max, parity, zeta_m)?);
    }
    let mut argmin = Vec::new();
    let levels: Vec<u32> = rows
        .first()
        .map(|r| r.iter().map(|row| row.n).collect())
        .unwrap_or_default();
    for n in levels {
        let best = lambdas
            .iter()
            .zip(&rows)
            .filter_map(|(l, rs)| {
                rs.iter()
                    .find(|r| r.n == n)
                    .map(|r| (*l, r.delta.abs()))
            })
            .min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((l, _)) = best {
            argmin.push((n, l));
        }
    }
    Ok(LambdaStudy {
        lambdas: lambdas.to_vec(),
        rows,
        argmin,
    })
}
