//! The Hamiltonian's parameter conventions and every polynomial family the
//! model generates: P_n / Q_n three-term recurrences, the quantized factors
//! R_ℓ, the λ-free shifted families in (x, t) = (E − λζ², ζ̂²), the
//! double-scaling (complex Mathieu) limit, and the series coefficients c_n.

use crate::polynomials::{BiPoly, Coeff, Poly};
use num_rational::BigRational;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ModelError {
    #[error("lambda = -1 is excluded (1+lambda divides the quantization and the c_n)")]
    LambdaIsMinusOne,
    #[error("zeta = 0 is excluded here (series coefficients c_n are undefined)")]
    ZetaZero,
    #[error("params.n is not the quantized value n_tilde + (n_tilde-1) lambda")]
    InconsistentQuantization,
    #[error("series coefficient pole: a + n - 1 = 0 at n = {n}")]
    SeriesCoefficientPole { n: usize },
}

/// Even ↔ the cosine (P) family, odd ↔ the sine (Q) family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Quantization N = ñ + (ñ−1)λ, which truncates the recurrence of the chosen
/// parity at index ñ and factorizes everything above as Φ_{ñ+ℓ} = Φ_ñ·R_ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quantization {
    pub n_tilde: u32,
    pub parity: Parity,
}

impl Quantization {
    /// Minimum ñ: 1 for the even family, 2 for the odd one (whose block
    /// would otherwise be empty).
    pub fn new(n_tilde: u32, parity: Parity) -> Option<Self> {
        let min = match parity {
            Parity::Even => 1,
            Parity::Odd => 2,
        };
        (n_tilde >= min).then_some(Quantization { n_tilde, parity })
    }

    pub fn capital_n<T: Coeff>(&self, lambda: &T) -> T {
        let nt = T::from_i64(self.n_tilde as i64);
        let ntm1 = T::from_i64(self.n_tilde as i64 - 1);
        nt + ntm1 * lambda.clone()
    }

    /// Number of quasi-exact energies: ñ (even) or ñ−1 (odd).
    pub fn block_size(&self) -> usize {
        match self.parity {
            Parity::Even => self.n_tilde as usize,
            Parity::Odd => self.n_tilde as usize - 1,
        }
    }
}

/// The three free parameters (N, ζ, λ); generic so the same builders run over
/// exact rationals, f64, or complex doubles.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams<T> {
    pub n: T,
    pub zeta: T,
    pub lambda: T,
}

impl<T: Coeff> ModelParams<T> {
    pub fn new(n: T, zeta: T, lambda: T) -> Result<Self, ModelError> {
        if lambda == T::from_i64(-1) {
            return Err(ModelError::LambdaIsMinusOne);
        }
        Ok(ModelParams { n, zeta, lambda })
    }

    pub fn quantized(q: Quantization, zeta: T, lambda: T) -> Result<Self, ModelError> {
        let n = q.capital_n(&lambda);
        ModelParams::new(n, zeta, lambda)
    }

    /// ζ̂ = ζ(1+λ).
    pub fn zhat(&self) -> T {
        self.zeta.clone() * (T::one() + self.lambda.clone())
    }

    /// g = Nζ, the double-scaling combination.
    pub fn g(&self) -> T {
        self.n.clone() * self.zeta.clone()
    }

    /// The model is Hermitian exactly on the line 2N = 1−λ (exact equality;
    /// on float instances this is a literal comparison).
    pub fn is_hermitian(&self) -> bool {
        self.n.clone() * T::from_i64(2) == T::one() - self.lambda.clone()
    }

    fn lam_zeta_sq(&self) -> T {
        self.lambda.clone() * self.zeta.clone() * self.zeta.clone()
    }

    /// C_n = [N + nλ + (n−1)]·[N − (n−1)λ − n].
    pub(crate) fn coupling(&self, n: i64) -> T {
        let left = self.n.clone()
            + T::from_i64(n) * self.lambda.clone()
            + T::from_i64(n - 1);
        let right = self.n.clone()
            - T::from_i64(n - 1) * self.lambda.clone()
            - T::from_i64(n);
        left * right
    }
}

fn e_minus<T: Coeff>(shift: T) -> Poly<T> {
    // E − shift
    Poly::new(vec![shift.neg(), T::one()])
}

/// [P₀, …, P_{n_max}]: P₀ = 1, P₁ = E − λζ², and
/// P_{n+1} = (E − λζ² − 4n²)P_n + f_n ζ²C_n P_{n−1} with the doubled
/// coupling f₁ = 2 (f_n = 1 otherwise). All monic, deg P_n = n.
pub fn build_p<T: Coeff>(params: &ModelParams<T>, n_max: usize) -> Vec<Poly<T>> {
    let mut fam = Vec::with_capacity(n_max + 1);
    fam.push(Poly::one());
    if n_max == 0 {
        return fam;
    }
    let lz = params.lam_zeta_sq();
    fam.push(e_minus(lz.clone()));
    let z2 = params.zeta.clone() * params.zeta.clone();
    for n in 1..n_max {
        let head = e_minus(lz.clone() + T::from_i64(4 * (n as i64) * (n as i64)));
        let f = if n == 1 { 2 } else { 1 };
        let tail = z2.clone() * T::from_i64(f) * params.coupling(n as i64);
        let next = &(&head * &fam[n]) + &fam[n - 1].scale(&tail);
        fam.push(next);
    }
    fam
}

/// Degree-indexed sine family: element j is Q_{j+1}, so the list is
/// [Q₁, …, Q_{n_max}] with Q₁ = 1, Q₂ = E − 4 − λζ², and
/// Q_{m+1} = (E − λζ² − 4m²)Q_m + ζ²C_m Q_{m−1} for m ≥ 2. deg Q_n = n−1.
pub fn build_q<T: Coeff>(params: &ModelParams<T>, n_max: usize) -> Vec<Poly<T>> {
    assert!(n_max >= 1, "the Q family starts at Q1");
    let mut fam = Vec::with_capacity(n_max);
    fam.push(Poly::one());
    if n_max == 1 {
        return fam;
    }
    let lz = params.lam_zeta_sq();
    fam.push(e_minus(lz.clone() + T::from_i64(4)));
    let z2 = params.zeta.clone() * params.zeta.clone();
    for m in 2..n_max {
        let head = e_minus(lz.clone() + T::from_i64(4 * (m as i64) * (m as i64)));
        let tail = z2.clone() * params.coupling(m as i64);
        let next = &(&head * &fam[m - 1]) + &fam[m - 2].scale(&tail);
        fam.push(next);
    }
    fam
}

/// The parity family of the quantization: P's for even, Q's for odd, both
/// degree-indexed (element j has degree j), up to degree `deg_max`.
pub fn build_family<T: Coeff>(
    params: &ModelParams<T>,
    parity: Parity,
    deg_max: usize,
) -> Vec<Poly<T>> {
    match parity {
        Parity::Even => build_p(params, deg_max),
        Parity::Odd => build_q(params, deg_max + 1),
    }
}

/// [R₁, …, R_{l_max}] continuing the quantized recurrence above level ñ:
/// R₁ = E − 4ñ² − λζ² and
/// R_{ℓ+1} = (E − λζ² − 4(ñ+ℓ)²)R_ℓ + ζ²C_{ñ+ℓ}R_{ℓ−1} (R₀ = 1), so that
/// Φ_{ñ+ℓ} = Φ_ñ·R_ℓ exactly for the parity family of `q`.
pub fn build_r<T: Coeff>(
    q: Quantization,
    params: &ModelParams<T>,
    l_max: usize,
) -> Result<Vec<Poly<T>>, ModelError> {
    if params.n != q.capital_n(&params.lambda) {
        return Err(ModelError::InconsistentQuantization);
    }
    assert!(l_max >= 1);
    let nt = q.n_tilde as i64;
    let lz = params.lam_zeta_sq();
    let z2 = params.zeta.clone() * params.zeta.clone();
    let mut prev = Poly::one(); // R₀
    let mut cur = e_minus(lz.clone() + T::from_i64(4 * nt * nt)); // R₁
    let mut fam = vec![cur.clone()];
    for l in 1..l_max {
        let idx = nt + l as i64;
        let head = e_minus(lz.clone() + T::from_i64(4 * idx * idx));
        let tail = z2.clone() * params.coupling(idx);
        let next = &(&head * &cur) + &prev.scale(&tail);
        prev = cur;
        cur = next;
        fam.push(cur.clone());
    }
    Ok(fam)
}

fn t_times(k: i64) -> Poly<BigRational> {
    Poly::monomial(rat(k), 1)
}

/// Degree-indexed shifted family of the quantization, exact and λ-free:
/// with x = E − λζ² and t = ζ̂², the quantized recurrence collapses to
/// Φ_{n+1} = (x − 4a_n²)Φ_n + f_n·t·(ñ+n−1)(ñ−n)Φ_{n−1}, where a_n is the
/// original recurrence index (a_n = n for even, n+1 for odd) and f is the
/// even-family factor 2 at n = 1. Integer coefficients throughout.
pub fn build_shifted(q: Quantization, deg_max: usize) -> Vec<BiPoly> {
    let nt = q.n_tilde as i64;
    let x = || BiPoly::x();
    let mut fam: Vec<BiPoly> = Vec::with_capacity(deg_max + 1);
    fam.push(BiPoly::one());
    if deg_max == 0 {
        return fam;
    }
    match q.parity {
        Parity::Even => {
            fam.push(x());
            for n in 1..deg_max as i64 {
                let head = &x() - &BiPoly::constant(Poly::constant(rat(4 * n * n)));
                let f = if n == 1 { 2 } else { 1 };
                let tail = t_times(f * (nt + n - 1) * (nt - n));
                let next = &(&head * &fam[n as usize])
                    + &fam[n as usize - 1].scale(&tail);
                fam.push(next);
            }
        }
        Parity::Odd => {
            fam.push(&x() - &BiPoly::constant(Poly::constant(rat(4))));
            for j in 1..deg_max as i64 {
                let m = j + 1; // original Q recurrence index
                let head = &x() - &BiPoly::constant(Poly::constant(rat(4 * m * m)));
                let tail = t_times((nt + m - 1) * (nt - m));
                let next = &(&head * &fam[j as usize])
                    + &fam[j as usize - 1].scale(&tail);
                fam.push(next);
            }
        }
    }
    fam
}

/// The quantized block polynomial in shifted variables: Φ_ñ for the even
/// family (degree ñ), Φ corresponding to Q_ñ (degree ñ−1) for the odd one.
pub fn shifted_block(q: Quantization) -> BiPoly {
    build_shifted(q, q.block_size()).swap_remove(q.block_size())
}

/// Double-scaling limit family (N → ∞, ζ → 0, g = Nζ fixed): the complex
/// Mathieu truncations. Degree-indexed like `build_family`; even
/// P_{n+1} = (E − 4n²)P_n + g²P_{n−1} with the factor 2 at n = 1, odd
/// Q_{m+1} = (E − 4m²)Q_m + g²Q_{m−1} from Q₂ = E − 4.
pub fn build_mathieu_limit<T: Coeff>(g: &T, deg_max: usize, parity: Parity) -> Vec<Poly<T>> {
    let g2 = g.clone() * g.clone();
    let mut fam: Vec<Poly<T>> = vec![Poly::one()];
    if deg_max == 0 {
        return fam;
    }
    match parity {
        Parity::Even => {
            fam.push(Poly::x());
            for n in 1..deg_max as i64 {
                let head = e_minus(T::from_i64(4 * n * n));
                let f = if n == 1 { T::from_i64(2) } else { T::one() };
                let tail = f * g2.clone();
                let next = &(&head * &fam[n as usize]) + &fam[n as usize - 1].scale(&tail);
                fam.push(next);
            }
        }
        Parity::Odd => {
            fam.push(e_minus(T::from_i64(4)));
            for j in 1..deg_max as i64 {
                let m = j + 1;
                let head = e_minus(T::from_i64(4 * m * m));
                let next = &(&head * &fam[j as usize]) + &fam[j as usize - 1].scale(&g2);
                fam.push(next);
            }
        }
    }
    fam
}

/// Exact Mathieu-limit family over (E, s = g²): same recurrences with the
/// coupling as the inner variable, for exact discriminant work.
pub fn build_mathieu_limit_exact(deg_max: usize, parity: Parity) -> Vec<BiPoly> {
    let s = |k: i64| Poly::monomial(rat(k), 1);
    let mut fam: Vec<BiPoly> = vec![BiPoly::one()];
    if deg_max == 0 {
        return fam;
    }
    let e_shift = |c: i64| {
        Poly::new(vec![
            Poly::constant(rat(-c)),
            Poly::constant(rat(1)),
        ])
    };
    match parity {
        Parity::Even => {
            fam.push(BiPoly::x());
            for n in 1..deg_max as i64 {
                let head = e_shift(4 * n * n);
                let f = if n == 1 { 2 } else { 1 };
                let next =
                    &(&head * &fam[n as usize]) + &fam[n as usize - 1].scale(&s(f));
                fam.push(next);
            }
        }
        Parity::Odd => {
            fam.push(e_shift(4));
            for j in 1..deg_max as i64 {
                let m = j + 1;
                let head = e_shift(4 * m * m);
                let next =
                    &(&head * &fam[j as usize]) + &fam[j as usize - 1].scale(&s(1));
                fam.push(next);
            }
        }
    }
    fam
}

/// Series coefficients [c₀, …, c_{n_max}]: c₀ = 1 and
/// c_{n+1} = c_n / [ζ(1+λ)(a+n−1)] with a = (1+N+2λ)/(1+λ). The pole
/// a+n−1 = 0 is reported, never divided through.
pub fn cn_coefficients<T: Coeff>(
    params: &ModelParams<T>,
    n_max: usize,
) -> Result<Vec<T>, ModelError> {
    if params.zeta.is_zero() {
        return Err(ModelError::ZetaZero);
    }
    let one_lam = T::one() + params.lambda.clone();
    if one_lam.is_zero() {
        return Err(ModelError::LambdaIsMinusOne);
    }
    // a = (1 + N + 2λ)/(1+λ)
    let a = (T::one() + params.n.clone() + T::from_i64(2) * params.lambda.clone())
        .exact_div(&one_lam);
    let mut cs = vec![T::one()];
    for n in 0..n_max {
        let shift = a.clone() + T::from_i64(n as i64 - 1);
        if shift.is_zero() {
            return Err(ModelError::SeriesCoefficientPole { n });
        }
        let denom = params.zeta.clone() * one_lam.clone() * shift;
        cs.push(cs[n].exact_div(&denom));
    }
    Ok(cs)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn generic_params() -> ModelParams<BigRational> {
        ModelParams::new(q(7, 3), q(2, 5), q(3, 7)).unwrap()
    }

    #[test]
    fn lambda_minus_one_rejected() {
        assert_eq!(
            ModelParams::new(q(1, 1), q(1, 2), q(-1, 1)).unwrap_err(),
            ModelError::LambdaIsMinusOne
        );
    }

    #[test]
    fn p_family_matches_printed_low_orders() {
        let pr = generic_params();
        let fam = build_p(&pr, 2);
        // P₁ = E − λζ²
        let lz = pr.lambda.clone() * &pr.zeta * &pr.zeta;
        assert_eq!(fam[1], Poly::new(vec![-lz.clone(), q(1, 1)]));
        // P₂ = λ²ζ⁴ + 2ζ²[λ − λE + N(λ+N−1)] + (E−4)E
        let z2 = pr.zeta.clone() * &pr.zeta;
        let c0 = &lz * &lz
            + q(2, 1) * &z2 * (&pr.lambda + &pr.n * (&pr.lambda + &pr.n - q(1, 1)));
        let c1 = q(-4, 1) - q(2, 1) * &z2 * &pr.lambda;
        assert_eq!(fam[2], Poly::new(vec![c0, c1, q(1, 1)]));
    }

    #[test]
    fn q_family_base_cases() {
        let pr = generic_params();
        let fam = build_q(&pr, 3);
        assert!(fam[0].is_one());
        let lz = pr.lambda.clone() * &pr.zeta * &pr.zeta;
        assert_eq!(fam[1], Poly::new(vec![-(q(4, 1) + &lz), q(1, 1)]));
        // Q₃ = (E−λζ²−16)(E−λζ²−4) + ζ²C₂ by the recurrence
        let z2 = pr.zeta.clone() * &pr.zeta;
        let c2 = (&pr.n + q(2, 1) * &pr.lambda + q(1, 1))
            * (&pr.n - &pr.lambda - q(2, 1));
        let expect = &(&Poly::new(vec![-(q(16, 1) + &lz), q(1, 1)])
            * &Poly::new(vec![-(q(4, 1) + &lz), q(1, 1)]))
            + &Poly::constant(z2 * c2);
        assert_eq!(fam[2], expect);
    }

    #[test]
    fn zeta_zero_collapses_to_free_rotor() {
        let pr = ModelParams::new(q(5, 2), q(0, 1), q(1, 3)).unwrap();
        let fam = build_p(&pr, 4);
        let free = Poly::from_roots(&[q(0, 1), q(4, 1), q(16, 1), q(36, 1)]);
        assert_eq!(fam[4], free);
        let qs = build_q(&pr, 4);
        assert_eq!(qs[3], Poly::from_roots(&[q(4, 1), q(16, 1), q(36, 1)]));
    }

    #[test]
    fn monic_and_degrees() {
        let pr = generic_params();
        for (n, p) in build_p(&pr, 6).iter().enumerate() {
            assert_eq!(p.degree(), Some(n));
            assert!(p.is_monic());
        }
        for (j, p) in build_q(&pr, 6).iter().enumerate() {
            assert_eq!(p.degree(), Some(j));
            assert!(p.is_monic());
        }
    }

    #[test]
    fn bracket_identity_under_quantization() {
        for parity in [Parity::Even, Parity::Odd] {
            for nt in 2..=6u32 {
                let quant = Quantization::new(nt, parity).unwrap();
                let lambda = q(5, 11);
                let pr = ModelParams::quantized(quant, q(3, 4), lambda.clone()).unwrap();
                let hat = (q(1, 1) + &lambda) * (q(1, 1) + &lambda);
                for n in 1..=6i64 {
                    let brk = hat.clone()
                        * q(nt as i64 + n - 1, 1)
                        * q(nt as i64 - n, 1);
                    assert_eq!(pr.coupling(n), brk, "nt={nt} n={n}");
                }
            }
        }
    }

    #[test]
    fn r_family_and_factorization() {
        let quant = Quantization::new(3, Parity::Even).unwrap();
        let pr = ModelParams::quantized(quant, q(2, 7), q(5, 3)).unwrap();
        let lz = pr.lambda.clone() * &pr.zeta * &pr.zeta;
        let rs = build_r(quant, &pr, 3).unwrap();
        // R₁ = E − 4ñ² − λζ²
        assert_eq!(rs[0], Poly::new(vec![-(q(36, 1) + &lz), q(1, 1)]));
        // R₂ = (E−4ñ²−λζ²)(E−4(ñ+1)²−λζ²) − 2ñ(1+λ)²ζ²
        let hat2 = (q(1, 1) + &pr.lambda) * (q(1, 1) + &pr.lambda);
        let r2 = &(&rs[0] * &Poly::new(vec![-(q(64, 1) + &lz), q(1, 1)]))
            + &Poly::constant(q(-6, 1) * hat2 * &pr.zeta * &pr.zeta);
        assert_eq!(rs[1], r2);
        // P_{ñ+ℓ} = P_ñ·R_ℓ exactly
        let ps = build_p(&pr, 6);
        for (l, r) in rs.iter().enumerate() {
            assert_eq!(&(&ps[3] * r) - &ps[4 + l], Poly::zero());
        }
        // Long division agrees
        let (quot, rem) = ps[4].div_rem(&ps[3]);
        assert!(rem.is_zero());
        assert_eq!(quot, rs[0]);

        let bad = ModelParams::new(q(1, 1), q(2, 7), q(5, 3)).unwrap();
        assert_eq!(
            build_r(quant, &bad, 1).unwrap_err(),
            ModelError::InconsistentQuantization
        );
    }

    #[test]
    fn shifted_families_are_integer_and_match_direct_build() {
        let even2 = shifted_block(Quantization::new(2, Parity::Even).unwrap());
        // Φ₂ = x² − 4x + 4t
        assert_eq!(
            even2,
            Poly::new(vec![
                Poly::monomial(q(4, 1), 1),
                Poly::constant(q(-4, 1)),
                Poly::constant(q(1, 1)),
            ])
        );
        let odd3 = shifted_block(Quantization::new(3, Parity::Odd).unwrap());
        // roots x = 10 ± 2√(9−t) ⟺ x² − 20x + 64 + 4t
        assert_eq!(
            odd3,
            Poly::new(vec![
                &Poly::monomial(q(4, 1), 1) + &Poly::constant(q(64, 1)),
                Poly::constant(q(-20, 1)),
                Poly::constant(q(1, 1)),
            ])
        );

        // Shift-equivalence: Φ_ñ(x, t=ζ̂²) = P_ñ(x + λζ²) exactly
        let quant = Quantization::new(3, Parity::Even).unwrap();
        let (zeta, lambda) = (q(1, 2), q(1, 10));
        let pr = ModelParams::quantized(quant, zeta.clone(), lambda.clone()).unwrap();
        let t = pr.zhat() * pr.zhat();
        let lz = lambda * &zeta * &zeta;
        let phi = shifted_block(quant).map(|c| c.eval(&t));
        let shifted_p = build_p(&pr, 3)[3].compose_linear(&q(1, 1), &lz);
        assert_eq!(phi, shifted_p);

        // t = 0 degenerates to the free-rotor product
        let phi0 = shifted_block(quant).map(|c| c.eval(&q(0, 1)));
        assert_eq!(phi0, Poly::from_roots(&[q(0, 1), q(4, 1), q(16, 1)]));
    }

    #[test]
    fn mathieu_limit_is_the_scaled_limit_of_the_model() {
        let g = 0.75f64;
        let n_big = 1e6f64;
        let pr = ModelParams::new(n_big, g / n_big, 0.3).unwrap();
        let exact = build_mathieu_limit(&g, 5, Parity::Even);
        let approx = build_p(&pr, 5);
        for (a, b) in exact.iter().zip(&approx) {
            for i in 0..a.coeffs().len() {
                let (x, y) = (a.coeff(i), b.coeff(i));
                assert!((x - y).abs() <= 1e-4 * (1.0 + x.abs()), "{x} vs {y}");
            }
        }
        // Exact bivariate variant evaluated at s = g² agrees with the f64 one
        let bi = build_mathieu_limit_exact(5, Parity::Even);
        let gr = q(3, 4);
        let s = gr.clone() * &gr;
        let from_bi = bi[5].map(|c| c.eval(&s));
        let direct = build_mathieu_limit(&gr, 5, Parity::Even);
        assert_eq!(from_bi, direct[5]);
    }

    #[test]
    fn series_coefficients_and_poles() {
        let pr = generic_params();
        let cs = cn_coefficients(&pr, 2).unwrap();
        assert!(cs[0].is_one());
        // c₁ = 1/[ζ(N+λ)]
        let c1 = q(1, 1) / (pr.zeta.clone() * (&pr.n + &pr.lambda));
        assert_eq!(cs[1], c1);
        // c₂ = 1/[ζ²(N+λ)(1+λ)a], a = (1+N+2λ)/(1+λ)
        let one_lam = q(1, 1) + &pr.lambda;
        let a = (q(1, 1) + &pr.n + q(2, 1) * &pr.lambda) / &one_lam;
        let c2 = q(1, 1)
            / (pr.zeta.clone() * &pr.zeta * (&pr.n + &pr.lambda) * one_lam * a);
        assert_eq!(cs[2], c2);

        // a = 0 (N = −1 − 2λ) is the n = 1 pole
        let pole = ModelParams::new(q(-1, 1), q(1, 2), q(0, 1)).unwrap();
        assert_eq!(
            cn_coefficients(&pole, 3).unwrap_err(),
            ModelError::SeriesCoefficientPole { n: 1 }
        );

        let zz = ModelParams::new(q(1, 1), q(0, 1), q(0, 1)).unwrap();
        assert_eq!(cn_coefficients(&zz, 1).unwrap_err(), ModelError::ZetaZero);
    }
}
