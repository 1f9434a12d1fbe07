//! Eigenvalue transport around circles λ(φ) = λ̃ + ρe^{iπφ} in the complex
//! λ-plane: collision-free path continuation with adaptive step halving, the
//! induced permutation per full turn, and the closed-form branch-cut
//! geometry of the two-state block.

use crate::exceptional::{discriminant_in_zhat, ExceptionalError};
use crate::model::{ModelError, Quantization};
use crate::polynomials::roots::{find_roots, NonConvergence};
use crate::polynomials::{to_complex_poly, PolyError};
use crate::spectrum::{block_polynomial, closed_form, SpectrumError};
use num_complex::Complex64;

/// The loop circle must keep this distance from every branch point.
const CIRCLE_CLEARANCE: f64 = 1e-6;
const MAX_HALVINGS: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum MonodromyError {
    #[error("loop radius must be positive")]
    InvalidRadius,
    #[error("need at least 64 steps per turn, got {0}")]
    TooFewSteps(usize),
    #[error(
        "circle passes within {distance:.3e} of the branch point λ = {lambda} (clearance 1e-6)"
    )]
    CircleThroughBranchPoint { lambda: Complex64, distance: f64 },
    #[error("root matching stayed ambiguous at φ = {phi} after {MAX_HALVINGS} halvings")]
    MatchingAmbiguous { phi: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Roots(#[from] NonConvergence),
    #[error(transparent)]
    Exceptional(#[from] ExceptionalError),
}

impl From<SpectrumError> for MonodromyError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Model(m) => MonodromyError::Model(m),
            SpectrumError::Roots(r) => MonodromyError::Roots(r),
            SpectrumError::ClosedFormUnavailable { .. } => {
                unreachable!("loop tracing never requests a closed form")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct LoopTrace {
    pub quantization: Quantization,
    pub zeta: f64,
    pub center: Complex64,
    pub rho: f64,
    pub steps_per_turn: usize,
    pub turns: u32,
    /// (φ, root positions in path order): path j starts at the φ=0 canonical
    /// slot j and keeps its identity by continuation.
    pub samples: Vec<(f64, Vec<Complex64>)>,
    /// permutations[k][i] = canonical slot occupied by path i after k+1 turns.
    pub permutations: Vec<Vec<usize>>,
    /// Count of step-halving refinements that were needed.
    pub halvings: usize,
}

impl LoopTrace {
    /// The single-turn permutation σ.
    pub fn sigma(&self) -> &[usize] {
        &self.permutations[0]
    }

    /// Cycle decomposition of σ (each root's turns-to-closure is the length
    /// of its cycle).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        permutation_cycles(self.sigma())
    }
}

pub fn permutation_cycles(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; sigma.len()];
    let mut cycles = Vec::new();
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut k = sigma[start];
        while k != start {
            seen[k] = true;
            cycle.push(k);
            k = sigma[k];
        }
        cycles.push(cycle);
    }
    cycles
}

/// All λ at which the block discriminant vanishes: ζ(1+λ) = ±√t over every
/// (complex) root t of the reduced discriminant.
pub fn branch_points(q: Quantization, zeta: f64) -> Result<Vec<Complex64>, MonodromyError> {
    let report = discriminant_in_zhat(q)?;
    let roots = find_roots(&to_complex_poly(&report.reduced))?;
    let mut out = Vec::new();
    for t in roots {
        let s = t.sqrt() / zeta;
        out.push(Complex64::new(-1.0, 0.0) + s);
        out.push(Complex64::new(-1.0, 0.0) - s);
    }
    Ok(out)
}

pub fn trace_loop(
    q: Quantization,
    zeta: f64,
    center: Complex64,
    rho: f64,
    steps: usize,
    turns: u32,
) -> Result<LoopTrace, MonodromyError> {
    if rho <= 0.0 {
        return Err(MonodromyError::InvalidRadius);
    }
    if steps < 64 {
        return Err(MonodromyError::TooFewSteps(steps));
    }
    for bp in branch_points(q, zeta)? {
        let d = ((bp - center).norm() - rho).abs();
        if d <= CIRCLE_CLEARANCE {
            return Err(MonodromyError::CircleThroughBranchPoint {
                lambda: bp,
                distance: d,
            });
        }
    }

    let lambda_at = |phi: f64| center + rho * Complex64::from_polar(1.0, std::f64::consts::PI * phi);
    let roots_at = |phi: f64| -> Result<Vec<Complex64>, MonodromyError> {
        let p = block_polynomial(q, zeta, lambda_at(phi))?;
        Ok(find_roots(&p)?)
    };

    let canonical = roots_at(0.0)?;
    let mut tracked = canonical.clone();
    let mut samples = vec![(0.0, tracked.clone())];
    let mut permutations = Vec::new();
    let mut halvings = 0usize;

    let mut phi = 0.0;
    for turn in 0..turns {
        for j in 1..=steps {
            let target = 2.0 * (turn as f64) + 2.0 * (j as f64) / (steps as f64);
            // Reach `target` from `phi`, inserting midpoints while the
            // matching margin fails.
            let mut pending = vec![target];
            let mut local_halvings = 0usize;
            while let Some(&next) = pending.last() {
                let fresh = roots_at(next)?;
                match match_roots(&tracked, &fresh) {
                    Some(matched) => {
                        tracked = matched;
                        phi = next;
                        pending.pop();
                    }
                    None => {
                        local_halvings += 1;
                        if local_halvings > MAX_HALVINGS {
                            return Err(MonodromyError::MatchingAmbiguous { phi: next });
                        }
                        halvings += 1;
                        pending.push(0.5 * (phi + next));
                    }
                }
            }
            samples.push((phi, tracked.clone()));
        }
        // Full turn: read off which canonical slot each path occupies.
        let sigma = match_indices(&tracked, &canonical)
            .ok_or(MonodromyError::MatchingAmbiguous { phi })?;
        permutations.push(sigma);
    }

    Ok(LoopTrace {
        quantization: q,
        zeta,
        center,
        rho,
        steps_per_turn: steps,
        turns,
        samples,
        permutations,
        halvings,
    })
}

/// Greedy closest-pair matching of `prev` onto `fresh` (injective by
/// construction), accepted only when every movement stays under half the
/// minimum pairwise gap of `prev` — the provably collision-free margin.
/// Returns the fresh roots reordered to prev's path order, or None when the
/// margin fails (including via the optimal assignment on small sets).
fn match_roots(prev: &[Complex64], fresh: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = prev.len();
    if n != fresh.len() {
        return None;
    }
    if n == 1 {
        return Some(vec![fresh[0]]);
    }
    let mut min_gap = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            min_gap = min_gap.min((prev[i] - prev[j]).norm());
        }
    }
    let margin = 0.5 * min_gap;

    // global greedy: repeatedly take the closest unmatched pair
    let mut assigned_to = vec![usize::MAX; n]; // path index -> fresh index
    let mut fresh_used = vec![false; n];
    for _ in 0..n {
        let mut best = (f64::INFINITY, 0, 0);
        for i in 0..n {
            if assigned_to[i] != usize::MAX {
                continue;
            }
            for k in 0..n {
                if fresh_used[k] {
                    continue;
                }
                let d = (prev[i] - fresh[k]).norm();
                if d < best.0 {
                    best = (d, i, k);
                }
            }
        }
        assigned_to[best.1] = best.2;
        fresh_used[best.2] = true;
    }
    let max_move = |asg: &[usize]| {
        asg.iter()
            .enumerate()
            .map(|(i, &k)| (prev[i] - fresh[k]).norm())
            .fold(0.0f64, f64::max)
    };
    if max_move(&assigned_to) < margin {
        return Some(assigned_to.iter().map(|&k| fresh[k]).collect());
    }
    // optimal assignment (minimal total movement) over all permutations —
    // the blocks here have at most 6 roots
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute_all(&mut perm, 0, &mut |p| {
        let total: f64 = p
            .iter()
            .enumerate()
            .map(|(i, &k)| (prev[i] - fresh[k]).norm())
            .sum();
        if best.as_ref().map_or(true, |(b, _)| total < *b) {
            best = Some((total, p.to_vec()));
        }
    });
    let (_, asg) = best.unwrap();
    if max_move(&asg) < margin {
        Some(asg.iter().map(|&k| fresh[k]).collect())
    } else {
        None
    }
}

fn permute_all(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// σ[i] = canonical slot nearest to tracked[i]; None unless a bijection.
fn match_indices(tracked: &[Complex64], canonical: &[Complex64]) -> Option<Vec<usize>> {
    let n = tracked.len();
    let mut sigma = Vec::with_capacity(n);
    for t in tracked {
        let (j, _) = canonical
            .iter()
            .enumerate()
            .map(|(j, c)| (j, (t - c).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        sigma.push(j);
    }
    let mut seen = vec![false; n];
    for &j in &sigma {
        if seen[j] {
            return None;
        }
        seen[j] = true;
    }
    Some(sigma)
}

/// Branch-cut geometry of the two-state closed form E = 2+λζ² ± 2√(1−ζ̂²):
/// the principal square root cuts the real λ-axis on (−∞, −1−1/ζ) and
/// (1/ζ−1, ∞). Endpoints are located numerically by bisecting the
/// discontinuity indicator, and a probe grid confirms the discontinuity
/// pattern.
#[derive(Debug, Clone, Copy)]
pub struct CutReport {
    pub zeta: f64,
    /// Numerically located right end of the cut (−∞, lower_cut_end).
    pub lower_cut_end: f64,
    /// Numerically located left end of the cut (upper_cut_start, ∞).
    pub upper_cut_start: f64,
    /// Probe-grid verdict: discontinuous across both cuts, continuous off them.
    pub probes_ok: bool,
}

pub fn branch_cut_check(zeta: f64) -> Result<CutReport, MonodromyError> {
    assert!(zeta > 0.0, "branch cuts are stated for ζ > 0");
    let q = Quantization::new(2, crate::model::Parity::Even).unwrap();
    let eps = 1e-9;
    let jump = |lam: f64| -> f64 {
        let above = closed_form(q, zeta, Complex64::new(lam, eps)).unwrap()[1];
        let below = closed_form(q, zeta, Complex64::new(lam, -eps)).unwrap()[1];
        (above - below).norm()
    };
    let on_cut = |lam: f64| jump(lam) > 1e-5;

    // formula endpoints seed the brackets; the bisection must re-find them
    let lower_formula = -1.0 - 1.0 / zeta;
    let upper_formula = 1.0 / zeta - 1.0;
    let bisect = |mut inside: f64, mut outside: f64| -> f64 {
        for _ in 0..60 {
            let mid = 0.5 * (inside + outside);
            if on_cut(mid) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        0.5 * (inside + outside)
    };
    let lower_cut_end = bisect(lower_formula - 1.0, lower_formula + 1.0);
    let upper_cut_start = bisect(upper_formula + 1.0, upper_formula - 1.0);

    let mut probes_ok = true;
    // the jump indicator off the cut is O(ε/√margin), so margin 0.05 keeps
    // continuity probes two orders below 1e-6 and cut probes far above 1e-5
    let margin = 0.05;
    for k in 0..=40 {
        // off-cut interior: continuous
        let lam = (lower_cut_end + margin)
            + (upper_cut_start - lower_cut_end - 2.0 * margin) * (k as f64) / 40.0;
        if jump(lam) > 1e-6 {
            probes_ok = false;
        }
        // on both cuts: discontinuous
        let lo = lower_cut_end - margin - 0.2 * k as f64;
        let hi = upper_cut_start + margin + 0.2 * k as f64;
        if !on_cut(lo) || !on_cut(hi) {
            probes_ok = false;
        }
    }
    Ok(CutReport {
        zeta,
        lower_cut_end,
        upper_cut_start,
        probes_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Parity;

    fn q(n: u32, parity: Parity) -> Quantization {
        Quantization::new(n, parity).unwrap()
    }

    fn close_multiset(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        let mut pool = b.to_vec();
        for x in a {
            let Some((k, d)) = pool
                .iter()
                .enumerate()
                .map(|(k, y)| (k, (x - y).norm()))
                .min_by(|u, v| u.1.total_cmp(&v.1))
            else {
                return false;
            };
            if d > tol {
                return false;
            }
            pool.remove(k);
        }
        true
    }

    #[test]
    fn small_loop_off_the_branch_points_is_trivial() {
        let t = trace_loop(
            q(2, Parity::Even),
            0.5,
            Complex64::new(0.1, 0.0),
            0.2,
            64,
            1,
        )
        .unwrap();
        assert_eq!(t.sigma(), &[0, 1]);
        assert_eq!(t.cycles().len(), 2);
        let (_, start) = &t.samples[0];
        let (phi_end, end) = t.samples.last().unwrap();
        assert!((*phi_end - 2.0).abs() < 1e-12);
        for (s, e) in start.iter().zip(end) {
            assert!((s - e).norm() < 1e-6, "path did not close: {s} vs {e}");
        }
    }

    #[test]
    fn encircling_one_branch_point_swaps_the_pair() {
        let t = trace_loop(
            q(2, Parity::Even),
            0.5,
            Complex64::new(1.0, 0.0),
            0.5,
            96,
            2,
        )
        .unwrap();
        assert_eq!(t.sigma(), &[1, 0]);
        assert_eq!(t.permutations[1], vec![0, 1], "σ² must be the identity");
        let cycles = t.cycles();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 2);
        // after two turns each path is back where it started
        let (_, start) = &t.samples[0];
        let (_, end) = t.samples.last().unwrap();
        for (s, e) in start.iter().zip(end) {
            assert!((s - e).norm() < 1e-6);
        }
    }

    #[test]
    fn enclosing_both_square_root_points_cancels() {
        // branch points of the ζ=1/2 two-state block sit at λ = 1 and −3;
        // a radius-4 circle at 0.1 encloses both and the two cuts compose
        // to the identity
        let t = trace_loop(
            q(2, Parity::Even),
            0.5,
            Complex64::new(0.1, 0.0),
            4.0,
            128,
            1,
        )
        .unwrap();
        assert_eq!(t.sigma(), &[0, 1]);
    }

    #[test]
    fn circle_through_branch_point_is_rejected() {
        // λ_b = 1 for ζ = 1/2: circle of radius 0.9 centered at 0.1 passes
        // straight through it
        let err = trace_loop(
            q(2, Parity::Even),
            0.5,
            Complex64::new(0.1, 0.0),
            0.9,
            64,
            1,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            MonodromyError::CircleThroughBranchPoint { .. }
        ));
    }

    #[test]
    fn four_state_loop_around_the_complex_point() {
        let t = trace_loop(
            q(4, Parity::Even),
            0.5,
            Complex64::new(5.2562, 9.9526),
            8.5,
            128,
            3,
        )
        .unwrap();
        assert_eq!(t.sigma(), &[0, 3, 1, 2]);
        let mut lens: Vec<usize> = t.cycles().iter().map(|c| c.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![1, 3]);
        // lcm of cycle lengths is 3: paths close after the third turn
        assert_eq!(t.permutations[2], vec![0, 1, 2, 3]);
        let (_, start) = &t.samples[0];
        let (_, end) = t.samples.last().unwrap();
        for (s, e) in start.iter().zip(end) {
            assert!((s - e).norm() < 1e-6);
        }
    }

    #[test]
    fn four_state_loop_around_the_real_point() {
        let t = trace_loop(
            q(4, Parity::Even),
            0.5,
            Complex64::new(9.5284, 0.0),
            8.5,
            128,
            1,
        )
        .unwrap();
        let lens: Vec<usize> = t.cycles().iter().map(|c| c.len()).collect();
        assert_eq!(lens, vec![4], "expected a single 4-cycle, got σ={:?}", t.sigma());
    }

    #[test]
    fn doubling_steps_changes_nothing_material() {
        let a = trace_loop(
            q(2, Parity::Even),
            0.5,
            Complex64::new(1.0, 0.0),
            0.5,
            64,
            1,
        )
        .unwrap();
        let b = trace_loop(
            q(2, Parity::Even),
            0.5,
            Complex64::new(1.0, 0.0),
            0.5,
            128,
            1,
        )
        .unwrap();
        assert_eq!(a.sigma(), b.sigma());
        let (_, ea) = a.samples.last().unwrap();
        let (_, eb) = b.samples.last().unwrap();
        for (x, y) in ea.iter().zip(eb) {
            assert!((x - y).norm() < 1e-8);
        }
    }

    #[test]
    fn multiset_is_loop_invariant() {
        let t = trace_loop(
            q(3, Parity::Even),
            0.5,
            Complex64::new(0.3, 0.4),
            1.1,
            64,
            1,
        )
        .unwrap();
        let (_, start) = &t.samples[0];
        let (_, end) = t.samples.last().unwrap();
        assert!(close_multiset(start, end, 1e-8));
    }

    #[test]
    fn cut_endpoints_and_probe_pattern() {
        let report = branch_cut_check(0.5).unwrap();
        assert!((report.lower_cut_end - -3.0).abs() < 1e-6);
        assert!((report.upper_cut_start - 1.0).abs() < 1e-6);
        assert!(report.probes_ok);

        // Im flips sign across the upper cut at λ = 2
        let qq = q(2, Parity::Even);
        let above = closed_form(qq, 0.5, Complex64::new(2.0, 0.001)).unwrap()[1];
        let below = closed_form(qq, 0.5, Complex64::new(2.0, -0.001)).unwrap()[1];
        assert!(above.im * below.im < 0.0);
        // and is continuous at λ = 0
        let a0 = closed_form(qq, 0.5, Complex64::new(0.0, 0.001)).unwrap()[1];
        let b0 = closed_form(qq, 0.5, Complex64::new(0.0, -0.001)).unwrap()[1];
        assert!((a0 - b0).norm() < 1e-2 * (1.0 + a0.norm()));
    }

    #[test]
    fn permutation_cycle_decomposition() {
        assert_eq!(permutation_cycles(&[0, 1, 2]), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(permutation_cycles(&[1, 0]), vec![vec![0, 1]]);
        assert_eq!(
            permutation_cycles(&[0, 3, 1, 2]),
            vec![vec![0], vec![1, 3, 2]]
        );
    }
}
