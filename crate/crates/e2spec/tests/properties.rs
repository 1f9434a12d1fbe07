//! Randomized structural properties: exact algebraic identities on the
//! rational path, stability/consistency bounds on the floating path.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use e2spec::model::{ModelParams, Parity, Quantization};
use e2spec::monodromy::trace_loop;
use e2spec::orthopoly::{measure_weights, norms_product};
use e2spec::polynomials::{sylvester_resultant, Poly};
use e2spec::spectrum::{closed_form, eigenvalues, EnergyClass};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn expand_rational(roots: &[BigRational]) -> Poly<BigRational> {
    let mut p = Poly::one();
    for r in roots {
        p = &p * &Poly::new(vec![-r.clone(), BigRational::one()]);
    }
    p
}

fn expand_complex(roots: &[Complex64]) -> Poly<Complex64> {
    let mut p = Poly::one();
    for r in roots {
        p = &p * &Poly::new(vec![-r, c(1.0, 0.0)]);
    }
    p
}

fn close_multiset(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
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

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// discriminant(∏(x−r_i)) = ∏_{i<j}(r_i−r_j)², exactly.
    #[test]
    fn discriminant_equals_root_difference_product(
        raw in prop::collection::vec(small_rational(), 2..=6)
    ) {
        let mut roots = raw;
        roots.sort();
        roots.dedup();
        prop_assume!(roots.len() >= 2);
        let p = expand_rational(&roots);
        let dp = p.derivative();
        let res = sylvester_resultant(&p, &dp).unwrap();
        let n = roots.len();
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let disc = rat(sign, 1) * res; // p is monic
        let mut want = BigRational::one();
        for i in 0..n {
            for j in i + 1..n {
                let d = roots[i].clone() - roots[j].clone();
                want = want * d.clone() * d;
            }
        }
        prop_assert_eq!(disc, want);
    }

    /// Res(p, q·r) = Res(p, q)·Res(p, r), exactly.
    #[test]
    fn resultant_is_multiplicative(
        pc in prop::collection::vec(-4i64..=4, 2..=4),
        qc in prop::collection::vec(-4i64..=4, 2..=4),
        rc in prop::collection::vec(-4i64..=4, 2..=4),
    ) {
        let mk = |v: &[i64]| {
            let mut w: Vec<BigRational> = v.iter().map(|&x| rat(x, 1)).collect();
            let last = w.len() - 1;
            if w[last].is_zero() {
                w[last] = BigRational::one();
            }
            Poly::new(w)
        };
        let (p, q, r) = (mk(&pc), mk(&qc), mk(&rc));
        let lhs = sylvester_resultant(&p, &(&q * &r)).unwrap();
        let rhs = sylvester_resultant(&p, &q).unwrap() * sylvester_resultant(&p, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Root recovery: expanding well-separated Gaussian-integer roots and
    /// re-solving returns them to 1e-10 (the expansion is exact in f64).
    #[test]
    fn root_finder_recovers_separated_roots(
        raw in prop::collection::vec((-100i32..=100, -100i32..=100), 1..=6)
    ) {
        let roots: Vec<Complex64> = raw
            .iter()
            .map(|&(re, im)| c(re as f64, im as f64))
            .collect();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                prop_assume!((roots[i] - roots[j]).norm() >= 20.0);
            }
        }
        let p = expand_complex(&roots);
        let got = e2spec::polynomials::roots::find_roots(&p).unwrap();
        prop_assert!(close_multiset(&got, &roots, 1e-10));
    }

    /// The coupling bracket collapses under quantization:
    /// C_n = (1+λ)²(ñ+n−1)(ñ−n), read off exactly from norm ratios at ζ=1.
    #[test]
    fn coupling_bracket_collapses(
        nt in 2u32..=6,
        lam in small_rational(),
    ) {
        prop_assume!(lam != rat(-1, 1));
        let q = Quantization::new(nt, Parity::Even).unwrap();
        let params = ModelParams::quantized(q, rat(1, 1), lam.clone()).unwrap();
        let norms = norms_product(&params, Parity::Even, nt as usize + 1);
        let u2 = (rat(1, 1) + lam.clone()) * (rat(1, 1) + lam);
        for j in 1..=nt as usize + 1 {
            if norms[j - 1].is_zero() {
                break;
            }
            // norms[j] = norms[j-1]·(−f_j·C_j) with f₁ = 2
            let f = if j == 1 { rat(2, 1) } else { rat(1, 1) };
            let coupling = -(norms[j].clone() / norms[j - 1].clone()) / f;
            let want = u2.clone() * rat(nt as i64 + j as i64 - 1, 1) * rat(nt as i64 - j as i64, 1);
            prop_assert_eq!(coupling, want, "j = {}", j);
        }
    }

    /// Equal ζ̂ means equal spectra up to the λζ² offset.
    #[test]
    fn spectra_collapse_onto_zhat(
        nt in 2u32..=5,
        even in prop::bool::ANY,
        z1 in 0.1f64..1.0,
        l1 in -0.7f64..1.5,
        l2 in -0.7f64..1.5,
    ) {
        let parity = if even { Parity::Even } else { Parity::Odd };
        let q = Quantization::new(nt, parity).unwrap();
        let z2 = z1 * (1.0 + l1) / (1.0 + l2);
        prop_assume!(z2.abs() > 1e-3 && z2.abs() < 50.0);
        let a = eigenvalues(q, z1, c(l1, 0.0)).unwrap();
        let b = eigenvalues(q, z2, c(l2, 0.0)).unwrap();
        let shift = |es: &[Complex64], l: f64, z: f64| -> Vec<Complex64> {
            es.iter().map(|e| e - c(l * z * z, 0.0)).collect()
        };
        let xa = shift(&a.energies, l1, z1);
        let xb = shift(&b.energies, l2, z2);
        let scale = 1.0 + xa.iter().map(|x| x.norm()).fold(0.0, f64::max);
        prop_assert!(close_multiset(&xa, &xb, 1e-9 * scale), "{:?} vs {:?}", xa, xb);
    }

    /// Numeric spectra match the closed forms wherever both exist.
    #[test]
    fn closed_forms_match_numeric_roots(
        nt in 1u32..=4,
        even in prop::bool::ANY,
        zeta in 0.05f64..1.2,
        lam in -0.9f64..2.0,
    ) {
        let parity = if even { Parity::Even } else { Parity::Odd };
        let lo = if even { 1 } else { 2 };
        let hi = if even { 3 } else { 4 };
        prop_assume!(nt >= lo && nt <= hi);
        let q = Quantization::new(nt, parity).unwrap();
        let cf = closed_form(q, zeta, c(lam, 0.0)).unwrap();
        let spec = eigenvalues(q, zeta, c(lam, 0.0)).unwrap();
        let scale = 1.0 + cf.iter().map(|x| x.norm()).fold(0.0, f64::max);
        prop_assert!(close_multiset(&cf, &spec.energies, 1e-9 * scale));
    }

    /// For real parameters the spectrum is closed under conjugation, and the
    /// two-state block is real below ζ̂² = 1 and a conjugate pair above.
    #[test]
    fn antiunitary_symmetry_pairs_the_spectrum(
        nt in 1u32..=4,
        even in prop::bool::ANY,
        zeta in 0.05f64..1.5,
        lam in -0.9f64..2.0,
    ) {
        let parity = if even { Parity::Even } else { Parity::Odd };
        let lo = if even { 1 } else { 2 };
        prop_assume!(nt >= lo);
        let q = Quantization::new(nt, parity).unwrap();
        let spec = eigenvalues(q, zeta, c(lam, 0.0)).unwrap();
        let conj: Vec<Complex64> = spec.energies.iter().map(|e| e.conj()).collect();
        let scale = 1.0 + conj.iter().map(|x| x.norm()).fold(0.0, f64::max);
        prop_assert!(close_multiset(&spec.energies, &conj, 1e-8 * scale));

        if nt == 2 && parity == Parity::Even {
            let t = (zeta * (1.0 + lam)).powi(2);
            prop_assume!((t - 1.0).abs() > 0.05);
            if t < 1.0 {
                prop_assert!(spec.classes.iter().all(|cl| *cl == EnergyClass::Real));
            } else {
                prop_assert!(spec
                    .classes
                    .iter()
                    .all(|cl| *cl == EnergyClass::ConjugatePairMember));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Gram property: 𝓛(Φ_nΦ_m) = N_n δ_{nm} on the block.
    #[test]
    fn measure_is_orthogonalizing(
        nt in 2u32..=5,
        even in prop::bool::ANY,
        zeta in 0.05f64..0.7,
        lam in -0.8f64..1.6,
    ) {
        let parity = if even { Parity::Even } else { Parity::Odd };
        let q = Quantization::new(nt, parity).unwrap();
        prop_assume!(q.block_size() >= 2);
        let Ok(m) = measure_weights(q, zeta, c(lam, 0.0)) else {
            // coalescent draw: the measure is genuinely undefined there
            return Ok(());
        };
        // near-coalescent weights amplify rounding beyond the stated bound
        prop_assume!(m.weights.iter().all(|w| w.norm() < 50.0));
        let params = ModelParams::quantized(q, c(zeta, 0.0), c(lam, 0.0)).unwrap();
        let fam = e2spec::model::build_family(&params, parity, q.block_size() - 1);
        let norms = norms_product(&params, parity, q.block_size() - 1);
        for n in 0..q.block_size() {
            for k in 0..q.block_size() {
                let prod = &fam[n] * &fam[k];
                let got = m.functional(&prod);
                let want = if n == k { norms[n] } else { c(0.0, 0.0) };
                // the weight solve's rounding enters amplified by the node
                // values of Φ_nΦ_k, so that amplitude is the attainable scale
                let amp: f64 = m.nodes.iter().map(|e| prod.eval(e).norm()).sum();
                let scale = 1.0 + amp + want.norm();
                prop_assert!(
                    (got - want).norm() < 1e-9 * scale,
                    "ñ={} {:?} ζ={} λ={} (n,k)=({},{}): {} vs {}",
                    nt, parity, zeta, lam, n, k, got, want
                );
            }
        }
    }

    /// Loop tracing is reparametrization-stable: doubling the step count
    /// changes no permutation and moves endpoints by less than 1e-8.
    #[test]
    fn loop_tracing_is_step_stable(
        re in -2.0f64..2.0,
        im in -1.0f64..1.0,
        rho in 0.1f64..1.5,
    ) {
        let q = Quantization::new(2, Parity::Even).unwrap();
        let center = c(re, im);
        let Ok(a) = trace_loop(q, 0.5, center, rho, 64, 1) else {
            // circle too close to a branch point: correctly rejected
            return Ok(());
        };
        let b = trace_loop(q, 0.5, center, rho, 128, 1).unwrap();
        prop_assert_eq!(a.sigma(), b.sigma());
        let (_, ea) = a.samples.last().unwrap();
        let (_, eb) = b.samples.last().unwrap();
        for (x, y) in ea.iter().zip(eb) {
            prop_assert!((x - y).norm() < 1e-8);
        }
    }
}
