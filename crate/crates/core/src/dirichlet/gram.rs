use nalgebra::DMatrix;
use num_complex::Complex64;

use super::tail_energy_sparse;

/// Inner products `⟨z^j, z^k⟩` in `D_{ω₁}` for `0 <= j, k <= N`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    max_degree: usize,
    entries: DMatrix<f64>,
}

impl GramMatrix {
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.entries[(j, k)]
    }

    /// The block on `z, ..., z^N`, i.e. the energy inner product on
    /// polynomials vanishing at the origin.
    pub fn energy_block(&self) -> DMatrix<f64> {
        let n = self.max_degree;
        self.entries.view((1, 1), (n, n)).into_owned()
    }
}

/// `‖g‖² = |g(0)|² + D_{ω₁}(g)` for a sparse `g`.
fn norm_sq_sparse(mut terms: Vec<(usize, Complex64)>) -> f64 {
    let constant: Complex64 = terms.iter().filter(|t| t.0 == 0).map(|t| t.1).sum();
    constant.norm_sqr() + tail_energy_sparse(&mut terms)
}

/// `⟨z^j, z^k⟩ = (1/4) Σ_p i^p ‖z^j + i^p z^k‖²`.
fn polarized(j: usize, k: usize) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut unit = one;
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 0..4 {
        acc += unit * norm_sq_sparse(vec![(j, one), (k, unit)]);
        unit *= Complex64::new(0.0, 1.0);
    }
    acc * 0.25
}

/// Gram matrix of the monomials `1, z, ..., z^N`, built entry by entry by
/// polarizing the tail-sum norm.
pub fn gram_matrix(max_degree: usize) -> GramMatrix {
    let dim = max_degree + 1;
    let mut entries = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        for k in 0..=j {
            let g = polarized(j, k);
            debug_assert!(g.im.abs() < 1e-12);
            entries[(j, k)] = g.re;
            entries[(k, j)] = g.re;
        }
    }
    GramMatrix {
        max_degree,
        entries,
    }
}
