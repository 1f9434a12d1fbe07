//! Spectral toolkit for the three-parameter E2 quasi-exactly-solvable
//! Hamiltonian H(N, ζ, λ) = J² + 2(1−λ)ζ uvJ + λζ²(u²−v²)² + 2iζN(u²−v²)
//! with J = −i∂_θ, u = sin θ, v = cos θ.
//!
//! The crate covers five connected pieces of that model's spectral theory:
//!
//! * [`polynomials`] — exact-rational / complex-double dense polynomial
//!   algebra, Sylvester resultants and discriminants by fraction-free
//!   elimination, and a global Aberth–Ehrlich root finder;
//! * [`model`] — the three-term recurrence families P_n, Q_n, their
//!   quantized factors R_ℓ, the λ-free shifted families in (x, t) = (E−λζ², ζ̂²),
//!   the double-scaling (complex Mathieu) limit family, and the series
//!   coefficients c_n;
//! * [`spectrum`] — quasi-exact eigenvalues with degeneracy classification,
//!   closed-form energy oracles, eigenfunctions in the θ-representation and
//!   their Schrödinger residuals;
//! * [`exceptional`] / [`monodromy`] — exact discriminants in ζ̂², exceptional
//!   points, eigenvalue loops λ(φ) = λ̃ + ρe^{iπφ} with their root
//!   permutations, and the closed-form branch-cut geometry;
//! * [`orthopoly`] / [`mathieu`] — Favard norms by two methods, the discrete
//!   measure and moment functionals of the weakly orthogonal families, and
//!   the exceptional-point route to the complex Mathieu constant ζ_M.
//!
//! Everything that feeds the exact discriminant/norm/moment tables runs over
//! arbitrary-precision rationals; floating point appears only where roots of
//! polynomials are genuinely needed.

pub mod cli;
pub mod exceptional;
pub mod mathieu;
pub mod model;
pub mod monodromy;
pub mod orthopoly;
pub mod polynomials;
pub mod spectrum;
