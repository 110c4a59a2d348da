//! Polar tensor quadrature on the unit disk with normalized area measure.
//!
//! Radially: Gauss–Legendre in `r` on `[0, 1]` with the Jacobian `2r`.
//! Angularly: the `M` equispaced nodes `θ_j = 2πj/M`. For smooth weights the
//! angular weights are `w(r e^{iθ_j}) / M` (the trapezoid rule). For the
//! Poisson-type weights `(1 - |z|²)/|ζ - z|²` the angular weights are the
//! product-integration weights of the trigonometric interpolant,
//! `W_j = (1/M) Σ_{|m| < M/2} r^{|m|} e^{-im(θ_j - arg ζ)}`, which integrate
//! trigonometric polynomials of degree `< M/2` against the kernel exactly.
//! Pointwise sampling would alias the kernel's peak at `ζ` on rings close
//! to the boundary.

use num_complex::Complex64;

use super::Weight;
use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                dp = legendre(n, x).1;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { p0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}

/// A precomputed tensor rule for one weight; reusable across integrands.
#[derive(Clone, Debug)]
pub struct PolarRule {
    radii: Vec<f64>,
    radial_weights: Vec<f64>,
    angular: usize,
    unit: Vec<Complex64>,
    // Row-major (ring, angle) angular weights.
    table: Vec<f64>,
}

pub const MIN_NODES: usize = 16;

impl PolarRule {
    pub fn new(weight: &Weight, radial_nodes: usize, angular_nodes: usize) -> Result<Self> {
        if radial_nodes < MIN_NODES || angular_nodes < MIN_NODES {
            return Err(Error::Domain(format!(
                "node counts must be >= {MIN_NODES}, got {radial_nodes} x {angular_nodes}"
            )));
        }
        Ok(Self::build(weight, radial_nodes, angular_nodes))
    }

    fn build(weight: &Weight, radial_nodes: usize, angular_nodes: usize) -> Self {
        let (x, w) = gauss_legendre(radial_nodes);
        let radii: Vec<f64> = x.iter().map(|&t| 0.5 * (t + 1.0)).collect();
        // dA = (1/π) r dr dθ = 2r dr · dθ/2π; the factor 1/2 maps [-1,1] to [0,1].
        let radial_weights = radii.iter().zip(&w).map(|(&r, &w)| w * r).collect();

        let m = angular_nodes;
        let step = 2.0 * std::f64::consts::PI / m as f64;
        let unit: Vec<Complex64> = (0..m)
            .map(|j| Complex64::from_polar(1.0, step * j as f64))
            .collect();

        let mut table = Vec::with_capacity(radii.len() * m);
        for &r in &radii {
            match weight {
                Weight::Omega1 => {
                    table.extend((0..m).map(|j| poisson_weight(r, step * j as f64, m)));
                }
                Weight::RotatedOmega(zeta) => {
                    let shift = zeta.arg();
                    table.extend((0..m).map(|j| poisson_weight(r, step * j as f64 - shift, m)));
                }
                Weight::ConstantOne | Weight::OneMinusModSq => {
                    table.extend(unit.iter().map(|&u| weight.eval(u * r) / m as f64));
                }
            }
        }
        Self {
            radii,
            radial_weights,
            angular: m,
            unit,
            table,
        }
    }

    pub fn radial_nodes(&self) -> usize {
        self.radii.len()
    }

    pub fn angular_nodes(&self) -> usize {
        self.angular
    }

    /// The rule applied to the constant integrand 1.
    pub fn total_mass(&self) -> f64 {
        self.radial_weights
            .iter()
            .enumerate()
            .map(|(i, &rw)| rw * self.ring(i).iter().sum::<f64>())
            .sum()
    }

    fn ring(&self, i: usize) -> &[f64] {
        &self.table[i * self.angular..(i + 1) * self.angular]
    }

    /// `∫_D |p(z)|² w(z) dA(z)` for the polynomial with coefficients `coeffs`.
    pub fn integrate_modulus_sq(&self, coeffs: &[Complex64]) -> Result<f64> {
        let mut scaled = vec![Complex64::new(0.0, 0.0); coeffs.len()];
        let mut total = 0.0;
        for (i, (&r, &rw)) in self.radii.iter().zip(&self.radial_weights).enumerate() {
            let mut rk = 1.0;
            for (s, &c) in scaled.iter_mut().zip(coeffs) {
                *s = c * rk;
                rk *= r;
            }
            let mut ring = 0.0;
            for (j, (&u, &w)) in self.unit.iter().zip(self.ring(i)).enumerate() {
                let mut g = Complex64::new(0.0, 0.0);
                for &s in scaled.iter().rev() {
                    g = g * u + s;
                }
                let v = w * g.norm_sqr();
                if !v.is_finite() {
                    return Err(Error::NonFinite {
                        r,
                        theta: 2.0 * std::f64::consts::PI * j as f64 / self.angular as f64,
                    });
                }
                ring += v;
            }
            total += rw * ring;
        }
        Ok(total)
    }
}

/// Product-integration weight of the Poisson kernel at radius `r` for the
/// node at angle `phi` (measured from the kernel's peak) among `m` nodes.
fn poisson_weight(r: f64, phi: f64, m: usize) -> f64 {
    // Frequencies |k| <= top, plus the Nyquist frequency when m is even.
    let top = (m - 1) / 2;
    let q = Complex64::from_polar(r, phi);
    let q_top = Complex64::from_polar(r.powi(top as i32), phi * top as f64);
    let geometric = q * (Complex64::new(1.0, 0.0) - q_top) / (Complex64::new(1.0, 0.0) - q);
    let mut sum = 1.0 + 2.0 * geometric.re;
    if m.is_multiple_of(2) {
        let half = m / 2;
        sum += r.powi(half as i32) * (phi * half as f64).cos();
    }
    sum / m as f64
}
