//! Global complex root finding: Aberth–Ehrlich simultaneous iteration with
//! Newton polish, post-hoc multiplicity clustering, and exact-arithmetic
//! helpers for real roots of rational-coefficient polynomials.

use super::{rational_to_f64, to_f64_poly, Poly};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Residual acceptance threshold: |p(z)| / (‖p‖₁ · max(1,|z|)^deg) per root.
const RESIDUAL_TOL: f64 = 1e-12;
/// Two roots closer than 1e−7·(1+|z|) are treated as one multiplicity cluster.
const CLUSTER_RADIUS: f64 = 1e-7;
const MAX_ITER: usize = 400;

#[derive(Debug, thiserror::Error)]
#[error("root finder did not converge (worst scaled residual {max_residual:.3e})")]
pub struct NonConvergence {
    /// Best root estimates available when iteration gave up.
    pub partial: Vec<Complex64>,
    pub max_residual: f64,
}

/// All deg(p) roots with multiplicity, sorted by (re, im). Aberth–Ehrlich
/// from a Cauchy-bound circle, Newton polish, multiplicity clusters collapsed
/// to a representative refined on the (m−1)-th derivative.
pub fn find_roots(p: &Poly<Complex64>) -> Result<Vec<Complex64>, NonConvergence> {
    let deg = match p.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    // Monic normalization, stripping exact zero roots first.
    let mut coeffs: Vec<Complex64> = p.coeffs().to_vec();
    let lc = coeffs[deg];
    for c in coeffs.iter_mut() {
        *c /= lc;
    }
    let mut zeros = 0usize;
    while coeffs[0].is_zero() && coeffs.len() > 1 {
        coeffs.remove(0);
        zeros += 1;
    }
    let q = Poly::new(coeffs);
    let mut roots = vec![Complex64::zero(); zeros];
    if let Some(n) = q.degree().filter(|&n| n > 0) {
        let mut zs = initial_guesses(&q, n);
        let converged = aberth(&q, &mut zs);
        for z in zs.iter_mut() {
            newton_polish(&q, z);
        }
        cluster_and_refine(&q, &mut zs);
        let max_residual = zs
            .iter()
            .map(|z| scaled_residual(&q, *z))
            .fold(0.0f64, f64::max);
        if !converged && max_residual > RESIDUAL_TOL {
            roots.extend(zs);
            sort_canonical(&mut roots);
            return Err(NonConvergence {
                partial: roots,
                max_residual,
            });
        }
        roots.extend(zs);
    }
    sort_canonical(&mut roots);
    let worst = roots
        .iter()
        .map(|z| scaled_residual_full(p, *z))
        .fold(0.0f64, f64::max);
    if worst > RESIDUAL_TOL {
        return Err(NonConvergence {
            partial: roots,
            max_residual: worst,
        });
    }
    Ok(roots)
}

/// Warm-started variant for path continuation: iterates from `guesses`,
/// returns roots in the order that keeps each output next to its starting
/// guess (no clustering, no sorting). `guesses.len()` must equal deg(p).
pub fn find_roots_from(
    p: &Poly<Complex64>,
    guesses: &[Complex64],
) -> Result<Vec<Complex64>, NonConvergence> {
    let deg = p.degree().unwrap_or(0);
    assert_eq!(deg, guesses.len(), "guess count must match degree");
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lc = *p.leading().unwrap();
    let q = p.map(|c| c / lc);
    let mut zs = guesses.to_vec();
    let converged = aberth(&q, &mut zs);
    for z in zs.iter_mut() {
        newton_polish(&q, z);
    }
    let max_residual = zs
        .iter()
        .map(|z| scaled_residual(&q, *z))
        .fold(0.0f64, f64::max);
    if !converged && max_residual > RESIDUAL_TOL {
        return Err(NonConvergence {
            partial: zs,
            max_residual,
        });
    }
    Ok(zs)
}

fn sort_canonical(zs: &mut [Complex64]) {
    zs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Fujiwara bound for a monic polynomial: every root satisfies
/// |z| ≤ 2·max_k |a_{n−k}|^{1/k}. Unlike the naive 1 + max|aᵢ| bound this
/// stays modest for the huge-coefficient discriminants, keeping the first
/// evaluations inside f64 range.
fn initial_guesses(q: &Poly<Complex64>, n: usize) -> Vec<Complex64> {
    let radius = 2.0
        * (1..=n)
            .map(|k| q.coeffs()[n - k].norm().powf(1.0 / k as f64))
            .fold(0.0f64, f64::max);
    let radius = radius.max(1e-3);
    (0..n)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64) + 0.4;
            0.7 * radius * Complex64::from_polar(1.0, angle)
        })
        .collect()
}

/// Simultaneous iteration; true iff every correction fell below
/// 1e−14·(1+|z|) before the iteration budget ran out.
fn aberth(q: &Poly<Complex64>, zs: &mut [Complex64]) -> bool {
    let dq = q.derivative();
    let n = zs.len();
    for _ in 0..MAX_ITER {
        let mut done = true;
        for i in 0..n {
            let zi = zs[i];
            let pv = q.eval(&zi);
            if pv.is_zero() {
                continue;
            }
            let dv = dq.eval(&zi);
            let w = if dv.is_zero() {
                // Flat spot: nudge off it instead of dividing by zero.
                Complex64::new(1e-12, 1e-12)
            } else {
                pv / dv
            };
            let mut s = Complex64::zero();
            for (j, zj) in zs.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    if d.is_zero() {
                        continue;
                    }
                    s += d.inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let corr = if denom.is_zero() { w } else { w / denom };
            let next = zi - corr;
            if !next.is_finite() {
                // Overflowed evaluation: pull the estimate inward and retry.
                zs[i] = zi * 0.5;
                done = false;
                continue;
            }
            zs[i] = next;
            if corr.norm() > 1e-14 * (1.0 + zs[i].norm()) {
                done = false;
            }
        }
        if done {
            return true;
        }
    }
    false
}

fn newton_polish(q: &Poly<Complex64>, z: &mut Complex64) {
    let dq = q.derivative();
    let mut best = *z;
    let mut best_val = q.eval(z).norm();
    let mut cur = *z;
    for _ in 0..4 {
        let dv = dq.eval(&cur);
        if dv.is_zero() {
            break;
        }
        cur -= q.eval(&cur) / dv;
        if !cur.is_finite() {
            break;
        }
        let v = q.eval(&cur).norm();
        if v < best_val {
            best_val = v;
            best = cur;
        }
    }
    *z = best;
}

/// Groups roots lying within the cluster radius of each other and replaces
/// every member of an m-fold cluster by the nearby root of q^{(m−1)}, which
/// restores full precision at multiple roots (plain Newton stalls at ~√ε).
fn cluster_and_refine(q: &Poly<Complex64>, zs: &mut [Complex64]) {
    let n = zs.len();
    let mut group = (0..n).collect::<Vec<_>>();
    fn find(g: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while g[r] != r {
            r = g[r];
        }
        let mut c = i;
        while g[c] != r {
            let next = g[c];
            g[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let tol = CLUSTER_RADIUS * (1.0 + zs[i].norm().max(zs[j].norm()));
            if (zs[i] - zs[j]).norm() <= tol {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                if a != b {
                    group[b] = a;
                }
            }
        }
    }
    let mut members: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut group, i);
        members.entry(r).or_default().push(i);
    }
    for (_, idxs) in members {
        let m = idxs.len();
        if m < 2 {
            continue;
        }
        let centroid = idxs.iter().map(|&i| zs[i]).sum::<Complex64>() / (m as f64);
        let mut d = q.clone();
        for _ in 0..m - 1 {
            d = d.derivative();
        }
        let mut rep = centroid;
        newton_iterations(&d, &mut rep, 30);
        // Only adopt the refined point if it stayed in the cluster's basin.
        let radius = CLUSTER_RADIUS * (1.0 + centroid.norm());
        let rep = if (rep - centroid).norm() <= 10.0 * radius {
            rep
        } else {
            centroid
        };
        for &i in &idxs {
            zs[i] = rep;
        }
    }
}

fn newton_iterations(q: &Poly<Complex64>, z: &mut Complex64, iters: usize) {
    let dq = q.derivative();
    for _ in 0..iters {
        let dv = dq.eval(z);
        if dv.is_zero() {
            return;
        }
        let step = q.eval(z) / dv;
        *z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            return;
        }
    }
}

fn scaled_residual(q: &Poly<Complex64>, z: Complex64) -> f64 {
    scaled_residual_full(q, z)
}

fn scaled_residual_full(p: &Poly<Complex64>, z: Complex64) -> f64 {
    let deg = match p.degree() {
        Some(d) => d as i32,
        None => return 0.0,
    };
    let norm1: f64 = p.coeffs().iter().map(|c| c.norm()).sum();
    let scale = norm1 * z.norm().max(1.0).powi(deg);
    p.eval(&z).norm() / scale
}

/// Multiplicity of z as a root of p, judged by the cluster radius against
/// the multiset returned by `find_roots`.
pub fn multiplicity_at(roots: &[Complex64], z: Complex64) -> usize {
    roots
        .iter()
        .filter(|r| (*r - z).norm() <= CLUSTER_RADIUS * (1.0 + z.norm()))
        .count()
}

/// All real roots of an exact-coefficient polynomial in t, via the float
/// root finder, a reality filter (|Im z| ≤ 1e−10·(1+|z|)), one real Newton
/// polish, and deduplication; sorted ascending. Callers filter t ≥ 0 when
/// mapping back to ζ̂.
pub fn real_roots_in_t(p: &Poly<BigRational>) -> Vec<f64> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    // Scale down by the largest coefficient so huge exact inputs stay finite.
    let max_mag = p
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    let scaled = p.scale(&(BigRational::from_integer(BigInt::from(1)) / max_mag));
    let fp = to_f64_poly(&scaled);
    let cp = fp.map(|c| Complex64::new(*c, 0.0));
    let roots = match find_roots(&cp) {
        Ok(r) => r,
        Err(e) => e.partial,
    };
    let dfp = fp.derivative();
    let mut out: Vec<f64> = Vec::new();
    for z in roots {
        if z.im.abs() > 1e-10 * (1.0 + z.norm()) {
            continue;
        }
        let mut x = z.re;
        for _ in 0..3 {
            let d = dfp.eval(&x);
            if d == 0.0 {
                break;
            }
            x -= fp.eval(&x) / d;
        }
        if !out.iter().any(|y| (y - x).abs() <= 1e-9 * (1.0 + x.abs())) {
            out.push(x);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Smallest positive real root of an exact polynomial, located by an exact
/// sign scan (step 1/16 up to `hi`) followed by exact bisection — safe for
/// coefficients far outside the f64 range (Mathieu-limit discriminants).
/// Assumes the target roots are simple; even-order touch points without a
/// sign change are not detected. All arithmetic is on integers at dyadic
/// points a/2^k — rational reduction (gcd after every operation) would
/// dominate at the coefficient sizes involved.
pub fn smallest_positive_real_root(p: &Poly<BigRational>, hi: i64) -> Option<f64> {
    use num_integer::Integer;
    if p.is_zero() {
        return None;
    }
    // Clear denominators; a positive rescale keeps every sign.
    let den_lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let pi: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let steps = hi.checked_mul(16).unwrap();
    let mut prev_sign = dyadic_sign(&pi, &BigInt::zero(), 0);
    for j in 1..=steps {
        let a = BigInt::from(j);
        let s = dyadic_sign(&pi, &a, 4);
        if s == 0 {
            return Some(dyadic_to_f64(&a, 4));
        }
        if prev_sign != 0 && s != prev_sign {
            return Some(dyadic_bisect(&pi, BigInt::from(j - 1), 4, prev_sign));
        }
        prev_sign = s;
    }
    None
}

/// Sign of Σ c_i (a/2^k)^i, computed as the integer Σ c_i a^i 2^{k(n−i)}.
fn dyadic_sign(coeffs: &[BigInt], a: &BigInt, k: u64) -> i8 {
    let n = coeffs.len() - 1;
    let mut s = coeffs[n].clone();
    for i in (0..n).rev() {
        s = s * a + (&coeffs[i] << (k * (n - i) as u64));
    }
    match s.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

/// Bisect on the bracket [lo/2^k, (lo+1)/2^k]; 68 halvings put the midpoint
/// well below f64 resolution.
fn dyadic_bisect(coeffs: &[BigInt], mut lo: BigInt, mut k: u64, lo_sign: i8) -> f64 {
    for _ in 0..68 {
        let mid = (&lo << 1) + 1;
        match dyadic_sign(coeffs, &mid, k + 1) {
            0 => return dyadic_to_f64(&mid, k + 1),
            s if s == lo_sign => lo = mid,
            _ => lo <<= 1,
        }
        k += 1;
    }
    dyadic_to_f64(&((lo << 1) + 1), k + 1)
}

fn dyadic_to_f64(a: &BigInt, k: u64) -> f64 {
    rational_to_f64(&BigRational::new(a.clone(), BigInt::one() << k))
}
