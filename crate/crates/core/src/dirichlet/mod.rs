//! Weighted Dirichlet energies `D_ω(f) = ∫_D |f'|² ω dA` and norms
//! `‖f‖² = |f(0)|² + D_ω(f)`.
//!
//! Three independent evaluators are provided for the local weight
//! `ω₁(z) = (1 - |z|²)/|1 - z|²`:
//!
//! * [`energy_tail_sum`]: `Σ_{i≥0} |Σ_{k>i} a_k|²`, O(N);
//! * [`energy_coeff_oracle`]: `Σ_{j,k} b_j conj(b_k) / (max(j,k) + 1)` with
//!   `b_j = (j+1) a_{j+1}` the coefficients of `f'`, O(N²);
//! * [`energy_quadrature`]: polar quadrature of the defining integral, for
//!   every weight in the catalog.

mod gram;
mod multiplier;
pub mod quadrature;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::CoeffSeq;

pub use gram::{gram_matrix, GramMatrix};
pub use multiplier::{multiplier_norm_restricted, RestrictedNorm};
pub use quadrature::PolarRule;

const UNIMODULAR_TOL: f64 = 1e-12;

/// The closed catalog of superharmonic weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weight {
    /// `(1 - |z|²)/|1 - z|²`
    Omega1,
    /// `(1 - |z|²)/|ζ - z|²` for unimodular `ζ`
    RotatedOmega(Complex64),
    ConstantOne,
    /// `1 - |z|²`
    OneMinusModSq,
}

impl Weight {
    pub fn rotated(zeta: Complex64) -> Result<Self> {
        check_unimodular(zeta)?;
        Ok(Weight::RotatedOmega(zeta))
    }

    pub fn eval(&self, z: Complex64) -> f64 {
        let s = 1.0 - z.norm_sqr();
        match self {
            Weight::Omega1 => s / (Complex64::new(1.0, 0.0) - z).norm_sqr(),
            Weight::RotatedOmega(zeta) => s / (zeta - z).norm_sqr(),
            Weight::ConstantOne => 1.0,
            Weight::OneMinusModSq => s,
        }
    }
}

fn check_unimodular(zeta: Complex64) -> Result<()> {
    if (zeta.norm() - 1.0).abs() <= UNIMODULAR_TOL {
        Ok(())
    } else {
        Err(Error::Domain(format!("|ζ| must be 1, got {}", zeta.norm())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyMethod {
    TailSum,
    CoeffOracle,
    Quadrature,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletNorm {
    pub energy: f64,
    pub norm_sq: f64,
    pub method: EnergyMethod,
    /// Quadrature only: `|Q(K, M) - Q(K/2, M/2)|`.
    pub error_estimate: Option<f64>,
}

impl DirichletNorm {
    fn new(f: &CoeffSeq, energy: f64, method: EnergyMethod) -> Self {
        Self {
            energy,
            norm_sq: f.get(0).norm_sqr() + energy,
            method,
            error_estimate: None,
        }
    }
}

/// Exact `ω₁` energy by right-to-left tail accumulation.
pub fn energy_tail_sum(f: &CoeffSeq) -> DirichletNorm {
    let mut tail = Complex64::new(0.0, 0.0);
    let mut energy = 0.0;
    for &a in f.coeffs()[1..].iter().rev() {
        tail += a;
        energy += tail.norm_sqr();
    }
    DirichletNorm::new(f, energy, EnergyMethod::TailSum)
}

/// Tail-sum energy of a sparse sequence given as `(degree, coefficient)`
/// pairs; the tails are constant between consecutive support degrees.
pub(crate) fn tail_energy_sparse(terms: &mut [(usize, Complex64)]) -> f64 {
    terms.sort_by_key(|t| std::cmp::Reverse(t.0));
    let mut tail = Complex64::new(0.0, 0.0);
    let mut energy = 0.0;
    let mut prev = match terms.first() {
        Some(&(d, _)) => d,
        None => return 0.0,
    };
    for &(d, a) in terms.iter() {
        energy += tail.norm_sqr() * (prev - d) as f64;
        tail += a;
        prev = d;
    }
    energy + tail.norm_sqr() * prev as f64
}

/// `f'` coefficients `b_j = (j + 1) a_{j+1}`.
fn derivative(f: &CoeffSeq) -> Vec<Complex64> {
    f.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &a)| a * k as f64)
        .collect()
}

/// Brute-force `ω₁` energy from the monomial integrals.
///
/// Expanding `1/|1 - z|² = Σ_{m,n} z^m conj(z)^n` and using
/// `∫ |z|^{2p} (1 - |z|²) dA = 1/((p+1)(p+2))`, the pairing of `z^j` and
/// `z^k` inside `∫ |f'|² ω₁ dA` telescopes to `1/(max(j,k) + 1)`.
pub fn energy_coeff_oracle(f: &CoeffSeq) -> DirichletNorm {
    let b = derivative(f);
    let mut energy = 0.0;
    for (j, bj) in b.iter().enumerate() {
        energy += bj.norm_sqr() / (j + 1) as f64;
        for bk in b.iter().take(j) {
            energy += 2.0 * (bj * bk.conj()).re / (j + 1) as f64;
        }
    }
    DirichletNorm::new(f, energy, EnergyMethod::CoeffOracle)
}

/// Energy by a precomputed polar rule.
pub fn energy_with_rule(f: &CoeffSeq, rule: &PolarRule) -> Result<DirichletNorm> {
    let b = derivative(f);
    let energy = if b.is_empty() {
        0.0
    } else {
        rule.integrate_modulus_sq(&b)?
    };
    Ok(DirichletNorm::new(f, energy, EnergyMethod::Quadrature))
}

/// `∫ |f'|² w dA` by polar tensor quadrature, with an error estimate from
/// the rule with half as many nodes in each direction.
pub fn energy_quadrature(
    f: &CoeffSeq,
    w: &Weight,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<DirichletNorm> {
    let fine = PolarRule::new(w, radial_nodes, angular_nodes)?;
    let mut out = energy_with_rule(f, &fine)?;
    let coarse = PolarRule::new(
        w,
        (radial_nodes / 2).max(quadrature::MIN_NODES),
        (angular_nodes / 2).max(quadrature::MIN_NODES),
    )?;
    let rough = energy_with_rule(f, &coarse)?;
    out.error_estimate = Some((out.energy - rough.energy).abs());
    Ok(out)
}

/// `a_k ↦ a_k ζ^k`, i.e. `f(ζ z)`. The `ω₁` energy of the result equals the
/// energy of `f` under `(1 - |z|²)/|ζ - z|²`.
pub fn rotate_to_omega1(f: &CoeffSeq, zeta: Complex64) -> Result<CoeffSeq> {
    check_unimodular(zeta)?;
    let mut power = Complex64::new(1.0, 0.0);
    let coeffs = f
        .coeffs()
        .iter()
        .map(|&a| {
            let out = a * power;
            power *= zeta;
            out
        })
        .collect();
    CoeffSeq::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> CoeffSeq {
        CoeffSeq::from_real(c).unwrap()
    }

    #[test]
    fn constants_have_zero_energy() {
        let f = CoeffSeq::new(vec![Complex64::new(3.0, -4.0)]).unwrap();
        for d in [energy_tail_sum(&f), energy_coeff_oracle(&f)] {
            assert_eq!(d.energy, 0.0);
            assert_eq!(d.norm_sq, 25.0);
        }
        let q = energy_quadrature(&f, &Weight::Omega1, 16, 16).unwrap();
        assert_eq!(q.energy, 0.0);
        assert_eq!(q.norm_sq, 25.0);
    }

    #[test]
    fn monomial_energies() {
        assert_eq!(energy_tail_sum(&poly(&[0.0, 1.0])).energy, 1.0);
        assert_eq!(energy_tail_sum(&poly(&[0.0, 0.0, 1.0])).energy, 2.0);
        assert_eq!(energy_coeff_oracle(&poly(&[0.0, 1.0])).energy, 1.0);
        assert_eq!(energy_coeff_oracle(&poly(&[0.0, 0.0, 1.0])).energy, 2.0);
        let d = energy_tail_sum(&poly(&[0.0, 1.0]));
        assert_eq!(d.norm_sq, d.energy);
    }

    #[test]
    fn z_plus_z_squared() {
        let f = poly(&[0.0, 1.0, 1.0]);
        assert_eq!(energy_tail_sum(&f).energy, 5.0);
        assert_eq!(energy_coeff_oracle(&f).energy, 5.0);
        assert_eq!(energy_coeff_oracle(&f).method, EnergyMethod::CoeffOracle);
    }

    #[test]
    fn quadrature_examples() {
        let z = poly(&[0.0, 1.0]);
        let q = energy_quadrature(&z, &Weight::Omega1, 64, 64).unwrap();
        assert!((q.energy - 1.0).abs() < 1e-6);
        assert!(q.error_estimate.unwrap() < 1e-10);
        let q = energy_quadrature(&z, &Weight::ConstantOne, 16, 16).unwrap();
        assert!((q.energy - 1.0).abs() < 1e-12);
        let q = energy_quadrature(&poly(&[0.0, 0.0, 1.0]), &Weight::ConstantOne, 16, 16).unwrap();
        assert!((q.energy - 2.0).abs() < 1e-12);
    }

    #[test]
    fn one_minus_mod_sq_energy() {
        // ∫ k² |z|^{2k-2} (1 - |z|²) dA = k² / (k (k + 1)) = k / (k + 1)
        for k in 1..6 {
            let q =
                energy_quadrature(&CoeffSeq::monomial(k), &Weight::OneMinusModSq, 32, 32).unwrap();
            assert!(
                (q.energy - k as f64 / (k + 1) as f64).abs() < 1e-12,
                "k = {k}"
            );
        }
    }

    #[test]
    fn rotation_examples() {
        let z = poly(&[0.0, 1.0]);
        assert_eq!(rotate_to_omega1(&z, Complex64::new(1.0, 0.0)).unwrap(), z);
        let r = rotate_to_omega1(&z, Complex64::new(0.0, 1.0)).unwrap();
        assert_eq!(
            r.coeffs(),
            &[Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)]
        );
        let w = Weight::rotated(Complex64::new(-1.0, 0.0)).unwrap();
        let q = energy_quadrature(&z, &w, 64, 64).unwrap();
        assert!((q.energy - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rotation_rejects_non_unimodular() {
        let z = poly(&[0.0, 1.0]);
        assert!(rotate_to_omega1(&z, Complex64::new(1.1, 0.0)).is_err());
        assert!(Weight::rotated(Complex64::new(0.5, 0.5)).is_err());
    }

    #[test]
    fn sparse_tail_energy_matches_dense() {
        let f = CoeffSeq::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(2.0, -1.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-0.5, 0.25),
        ])
        .unwrap();
        let mut terms: Vec<_> = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 0.0)
            .map(|(k, &a)| (k, a))
            .collect();
        let dense = energy_tail_sum(&f).energy;
        assert!((tail_energy_sparse(&mut terms) - dense).abs() < 1e-14);
        assert_eq!(tail_energy_sparse(&mut []), 0.0);
    }

    #[test]
    fn weight_values() {
        assert!((Weight::Omega1.eval(Complex64::new(0.5, 0.0)) - 3.0).abs() < 1e-15);
        assert_eq!(Weight::Omega1.eval(Complex64::new(0.0, 0.0)), 1.0);
        assert_eq!(Weight::OneMinusModSq.eval(Complex64::new(0.0, 0.5)), 0.75);
    }
}
