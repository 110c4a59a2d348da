//! Norm of a Hadamard multiplier on the polynomials of degree `<= N` in
//! `D_{ω₁}`.
//!
//! With `G` the Gram matrix of `z, ..., z^N` and `D = diag(c_1, ..., c_N)`,
//! the squared norm is the largest `λ` in `D G D v = λ G v`. Constants are an
//! orthogonal invariant line on which the multiplier acts by `c_0`, so they
//! are split off and the eigenproblem lives on the energy block.
//!
//! `D` vanishes past degree `n`, so `D G D = E A E^T` with `E` the first `n`
//! coordinate columns and `A = D_n G_nn D_n`. After `G = L L^T` the reduced
//! operator `L^{-1} E A E^T L^{-T}` has the same nonzero spectrum as the
//! `n x n` symmetric matrix `R A R^T`, where `R^T R = K = E^T G^{-1} E`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::gram_matrix;
use crate::error::{Error, Result};
use crate::series::{CoeffSeq, SummabilityProfile};

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;

#[derive(Clone, Debug)]
pub struct RestrictedNorm {
    /// Norm on the polynomials of degree `<= N` vanishing at 0 (energy norm).
    pub value: f64,
    /// Norm on all polynomials of degree `<= N`: `max(|c_0|, value)`.
    pub with_constants: f64,
    /// Unit-norm polynomial attaining `value`, with `f(0) = 0`.
    pub maximizer: CoeffSeq,
    pub max_degree: usize,
}

fn solver_failure(what: &str) -> Error {
    Error::EigenSolver(what.to_string())
}

pub fn multiplier_norm_restricted(
    profile: &SummabilityProfile,
    max_degree: usize,
) -> Result<RestrictedNorm> {
    let n = profile.n();
    if max_degree < n {
        return Err(Error::Index(format!(
            "restriction degree N = {max_degree} is below the profile degree n = {n}"
        )));
    }
    let c0 = profile.weight(0).abs();
    if n == 0 || max_degree == 0 {
        let maximizer = if max_degree == 0 {
            CoeffSeq::from_real(&[0.0])?
        } else {
            CoeffSeq::monomial(1)
        };
        return Ok(RestrictedNorm {
            value: 0.0,
            with_constants: c0,
            maximizer,
            max_degree,
        });
    }

    let g = gram_matrix(max_degree).energy_block();
    let big = g.nrows();
    let chol = g
        .clone()
        .cholesky()
        .ok_or_else(|| solver_failure("Gram matrix is not positive definite"))?;

    let d: Vec<f64> = (1..=n).map(|k| profile.weight(k)).collect();
    let a = DMatrix::from_fn(n, n, |j, k| d[j] * g[(j, k)] * d[k]);

    let select = DMatrix::from_fn(big, n, |i, j| if i == j { 1.0 } else { 0.0 });
    let x = chol
        .l()
        .solve_lower_triangular(&select)
        .ok_or_else(|| solver_failure("singular Cholesky factor"))?;
    let k = x.transpose() * &x;
    let k_chol = k
        .cholesky()
        .ok_or_else(|| solver_failure("reduced Gram block is not positive definite"))?;
    let lk = k_chol.l();
    let mut reduced = lk.transpose() * &a * &lk;
    // Symmetrize away rounding before the symmetric solver.
    reduced = (&reduced + reduced.transpose()) * 0.5;

    let eig = SymmetricEigen::try_new(reduced, EIGEN_EPS, EIGEN_MAX_ITER)
        .ok_or_else(|| solver_failure("symmetric eigen-solver did not converge"))?;
    let (top, lambda) =
        eig.eigenvalues
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            });
    let u: DVector<f64> = eig.eigenvectors.column(top).into_owned();

    // z = L_K^{-T} u, then v = G^{-1} E z.
    let z = lk
        .transpose()
        .solve_upper_triangular(&u)
        .ok_or_else(|| solver_failure("singular reduced factor"))?;
    let mut ez = DVector::zeros(big);
    ez.rows_mut(0, n).copy_from(&z);
    let v = chol.solve(&ez);

    let mut coeffs = Vec::with_capacity(big + 1);
    coeffs.push(Complex64::new(0.0, 0.0));
    coeffs.extend(v.iter().map(|&x| Complex64::new(x, 0.0)));

    let value = lambda.max(0.0).sqrt();
    Ok(RestrictedNorm {
        value,
        with_constants: value.max(c0),
        maximizer: CoeffSeq::new(coeffs)?,
        max_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::energy_tail_sum;
    use crate::series::apply_mean;

    /// Largest generalized eigenvalue via the full `N x N` reduction.
    fn dense_top(profile: &SummabilityProfile, max_degree: usize) -> f64 {
        let g = gram_matrix(max_degree).energy_block();
        let l = g.clone().cholesky().unwrap().l();
        let dd = DMatrix::from_fn(max_degree, max_degree, |j, k| {
            profile.weight(j + 1) * g[(j, k)] * profile.weight(k + 1)
        });
        let y = l.solve_lower_triangular(&dd).unwrap();
        let c = l.solve_lower_triangular(&y.transpose()).unwrap();
        let c = (&c + c.transpose()) * 0.5;
        c.symmetric_eigenvalues().max().sqrt()
    }

    #[test]
    fn identity_profile_has_norm_one() {
        for n in [1usize, 4, 12] {
            let r = multiplier_norm_restricted(&SummabilityProfile::partial_sum(n), n).unwrap();
            assert!((r.value - 1.0).abs() < 1e-12, "n = {n}: {}", r.value);
            assert!((r.with_constants - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn agrees_with_full_reduction() {
        let profiles = [
            SummabilityProfile::fejer(2),
            SummabilityProfile::riesz(5, 0.5).unwrap(),
            SummabilityProfile::cesaro(7, 0.75).unwrap(),
            SummabilityProfile::partial_sum(3),
        ];
        for p in &profiles {
            for big in [p.n(), p.n() + 1, 3 * p.n(), 30] {
                let fast = multiplier_norm_restricted(p, big).unwrap().value;
                let dense = dense_top(p, big);
                assert!(
                    (fast - dense).abs() < 1e-10,
                    "{p:?} N={big}: {fast} vs {dense}"
                );
            }
        }
    }

    #[test]
    fn maximizer_is_unit_and_attains_the_norm() {
        let p = SummabilityProfile::riesz(6, 0.5).unwrap();
        let r = multiplier_norm_restricted(&p, 24).unwrap();
        let f = &r.maximizer;
        assert_eq!(f.get(0), Complex64::new(0.0, 0.0));
        assert!((energy_tail_sum(f).norm_sq - 1.0).abs() < 1e-10);
        let image = energy_tail_sum(&apply_mean(&p, f)).norm_sq.sqrt();
        assert!((image - r.value).abs() < 1e-10);
    }

    #[test]
    fn fejer_two_small_degrees() {
        // N = 2: T truncated to [[2/3, -1/3], [0, 1/3]], σ² = (6/9 + √(20)/9) / 2.
        let p = SummabilityProfile::fejer(2);
        let expected = ((6.0 + 20f64.sqrt()) / 18.0).sqrt();
        let r = multiplier_norm_restricted(&p, 2).unwrap();
        assert!((r.value - expected).abs() < 1e-12);
        assert_eq!(r.with_constants, 1.0);
        let r = multiplier_norm_restricted(&p, 3).unwrap();
        assert!((r.value - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_small_restriction() {
        let p = SummabilityProfile::fejer(5);
        assert!(matches!(
            multiplier_norm_restricted(&p, 4),
            Err(Error::Index(_))
        ));
    }

    #[test]
    fn degree_zero_profile() {
        let r = multiplier_norm_restricted(&SummabilityProfile::partial_sum(0), 3).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.with_constants, 1.0);
    }
}
