//! The upper-triangular difference matrix `T_c` and its ℓ² operator norm.
//!
//! For a sequence `c_1, ..., c_n` (with `c_k = 0` for `k > n`) the matrix has
//! `c_k` on the diagonal and `c_k - c_{k-1}` above the diagonal in column `k`.
//! Every row and column past `n + 1` vanishes, so the operator is stored as
//! an `(n+1) x (n+1)` matrix that is never materialized for the matvec.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::SummabilityProfile;

/// Default seed for the random restart of [`tc_norm`].
pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Largest dimension for which [`TcOperator::to_dense`] is allowed.
pub const MAX_DENSE_DIM: usize = 2048;
/// Largest dimension for which [`tc_norm`] also runs a dense SVD.
pub const CROSS_CHECK_DIM: usize = 512;
const CROSS_CHECK_RTOL: f64 = 1e-8;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Clone, Debug)]
pub struct TcOperator {
    // c[i] holds c_{i+1}; c_0 is never stored.
    c: Vec<Complex64>,
}

impl TcOperator {
    /// Builds `T_c` from `(c_1, ..., c_n)`.
    pub fn new(c: &[Complex64]) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { c: c.to_vec() })
    }

    pub fn from_real(c: &[f64]) -> Result<Self> {
        Self::new(
            &c.iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    /// `T_{h_n}` for the multiplier of a summability mean; `c_0` is dropped.
    /// A profile with `n = 0` gives the `1 x 1` zero operator.
    pub fn from_profile(profile: &SummabilityProfile) -> Self {
        let c = if profile.n() == 0 {
            vec![ZERO]
        } else {
            profile.weights()[1..]
                .iter()
                .map(|&w| Complex64::new(w, 0.0))
                .collect()
        };
        Self { c }
    }

    pub fn c(&self) -> &[Complex64] {
        &self.c
    }

    /// `n + 1`, the number of rows and columns that can be nonzero.
    pub fn effective_dim(&self) -> usize {
        self.c.len() + 1
    }

    /// Diagonal entry at 0-based position `i` (`c_{i+1}`, zero at `i = n`).
    #[inline]
    fn diag(&self, i: usize) -> Complex64 {
        self.c.get(i).copied().unwrap_or(ZERO)
    }

    /// Off-diagonal value shared by column `k` (0-based, `k >= 1`).
    #[inline]
    fn diff(&self, k: usize) -> Complex64 {
        self.diag(k) - self.diag(k - 1)
    }

    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        let dim = self.effective_dim();
        if dim > MAX_DENSE_DIM {
            return Err(Error::Domain(format!(
                "dense materialization limited to dimension {MAX_DENSE_DIM}, got {dim}"
            )));
        }
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        for k in 0..dim {
            m[(k, k)] = self.diag(k);
            if k > 0 {
                let d = self.diff(k);
                for i in 0..k {
                    m[(i, k)] = d;
                }
            }
        }
        Ok(m)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        let dim = self.effective_dim();
        if len == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                got: len,
            })
        }
    }

    /// `y = T x` by suffix accumulation, O(n).
    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(x.len())?;
        let mut y = vec![ZERO; x.len()];
        self.matvec_into(x, &mut y);
        Ok(y)
    }

    /// `y = T* x` by prefix accumulation, O(n).
    pub fn adjoint_matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(x.len())?;
        let mut y = vec![ZERO; x.len()];
        self.adjoint_matvec_into(x, &mut y);
        Ok(y)
    }

    fn matvec_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        let dim = x.len();
        let mut suffix = ZERO;
        for i in (0..dim).rev() {
            y[i] = self.diag(i) * x[i] + suffix;
            if i > 0 {
                suffix += self.diff(i) * x[i];
            }
        }
    }

    fn adjoint_matvec_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        let mut prefix = ZERO;
        for (k, (yk, &xk)) in y.iter_mut().zip(x).enumerate() {
            *yk = self.diag(k).conj() * xk;
            if k > 0 {
                *yk += self.diff(k).conj() * prefix;
            }
            prefix += xk;
        }
    }
}

/// Shorthand for [`TcOperator::new`].
pub fn build_tc(c: &[Complex64]) -> Result<TcOperator> {
    TcOperator::new(c)
}

/// Shorthand for [`TcOperator::matvec`].
pub fn tc_matvec(t: &TcOperator, x: &[Complex64]) -> Result<Vec<Complex64>> {
    t.matvec(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    PowerIteration,
    DenseSvd,
}

impl NormMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            NormMethod::PowerIteration => "power_iteration",
            NormMethod::DenseSvd => "dense_svd",
        }
    }
}

/// An operator-norm estimate (the norm itself, not its square).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub method: NormMethod,
    pub iterations: usize,
    /// Relative Rayleigh-quotient residual `|A v - λ v| / λ` for `A = T*T`.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct NormOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// Run the dense SVD cross-check when the dimension allows it.
    pub cross_check: bool,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            seed: DEFAULT_SEED,
            cross_check: true,
        }
    }
}

/// `‖T_c : ℓ² → ℓ²‖` by power iteration on `T*T`, cross-checked against a
/// dense SVD when the effective dimension is at most [`CROSS_CHECK_DIM`].
pub fn tc_norm(t: &TcOperator, tol: f64) -> Result<NormEstimate> {
    tc_norm_with(
        t,
        &NormOptions {
            tol,
            ..NormOptions::default()
        },
    )
}

pub fn tc_norm_with(t: &TcOperator, opts: &NormOptions) -> Result<NormEstimate> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be > 0, got {}",
            opts.tol
        )));
    }
    let dim = t.effective_dim();

    let ones = vec![Complex64::new(1.0, 0.0); dim];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let random: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();

    let mut best: Option<PowerRun> = None;
    for start in [ones, random] {
        let run = power_iteration(t, start, opts);
        best = match best {
            Some(b) if better(&b, &run) => Some(b),
            _ => Some(run),
        };
    }
    let run = best.expect("two runs");
    if !run.converged {
        return Err(Error::NoConvergence {
            iterations: run.iterations,
            estimate: run.lambda.sqrt(),
            residual: run.residual,
        });
    }
    let value = run.lambda.max(0.0).sqrt();

    if opts.cross_check && dim <= CROSS_CHECK_DIM {
        let dense = tc_norm_dense(t)?.value;
        if (value - dense).abs() > CROSS_CHECK_RTOL * dense.max(f64::MIN_POSITIVE) {
            return Err(Error::CrossCheck {
                power: value,
                dense,
            });
        }
    }

    Ok(NormEstimate {
        value,
        method: NormMethod::PowerIteration,
        iterations: run.iterations,
        residual: run.residual,
    })
}

fn better(a: &PowerRun, b: &PowerRun) -> bool {
    match (a.converged, b.converged) {
        (true, false) => true,
        (false, true) => false,
        _ => a.lambda >= b.lambda,
    }
}

/// Largest singular value from a dense SVD.
pub fn tc_norm_dense(t: &TcOperator) -> Result<NormEstimate> {
    let m = t.to_dense()?;
    let sv = m.singular_values();
    let value = sv.iter().copied().fold(0.0_f64, f64::max);
    Ok(NormEstimate {
        value,
        method: NormMethod::DenseSvd,
        iterations: 0,
        residual: 0.0,
    })
}

struct PowerRun {
    lambda: f64,
    residual: f64,
    iterations: usize,
    converged: bool,
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn power_iteration(t: &TcOperator, mut v: Vec<Complex64>, opts: &NormOptions) -> PowerRun {
    let dim = v.len();
    let mut tv = vec![ZERO; dim];
    let mut av = vec![ZERO; dim];

    let nv = norm2(&v);
    v.iter_mut().for_each(|z| *z /= nv);

    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for iter in 1..=opts.max_iter {
        t.matvec_into(&v, &mut tv);
        t.adjoint_matvec_into(&tv, &mut av);
        // v has unit length, so the Rayleigh quotient v*T*Tv is |Tv|².
        lambda = tv.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let nav = norm2(&av);
        if nav == 0.0 || lambda == 0.0 {
            return PowerRun {
                lambda: 0.0,
                residual: 0.0,
                iterations: iter,
                converged: true,
            };
        }
        residual = av
            .iter()
            .zip(&v)
            .map(|(a, x)| (a - x * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt()
            / lambda;
        for (x, a) in v.iter_mut().zip(&av) {
            *x = a / nav;
        }
        if residual <= opts.tol {
            return PowerRun {
                lambda,
                residual,
                iterations: iter,
                converged: true,
            };
        }
    }
    PowerRun {
        lambda,
        residual,
        iterations: opts.max_iter,
        converged: false,
    }
}

/// Length of `c` after dropping trailing zeros.
fn support(c: &[Complex64]) -> usize {
    c.iter()
        .rposition(|z| z.re != 0.0 || z.im != 0.0)
        .map_or(0, |i| i + 1)
}

/// `|c_{k+1} - c_k|²` for `k = 1..=n` (0-based slot `k - 1`), `c_{n+1} = 0`.
fn squared_differences(c: &[Complex64], n: usize) -> Vec<f64> {
    let at = |k: usize| c.get(k - 1).copied().unwrap_or(ZERO);
    (1..=n).map(|k| (at(k + 1) - at(k)).norm_sqr()).collect()
}

/// `(n + 1) Σ_{k=1}^{n} |c_{k+1} - c_k|²` with `n` the support of `c`;
/// an upper bound for `‖T_c‖²`.
pub fn tc_upper_bound(c: &[Complex64]) -> f64 {
    let n = support(c);
    (n + 1) as f64 * squared_differences(c, n).iter().sum::<f64>()
}

/// `m Σ_{k=m}^{n} |c_{k+1} - c_k|²`, a lower bound for `‖T_c‖²`.
pub fn tc_lower_bound(c: &[Complex64], m: usize, n: usize) -> Result<f64> {
    if m < 1 || m > n {
        return Err(Error::Index(format!(
            "need 1 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    Ok(m as f64 * squared_differences(c, n)[m - 1..].iter().sum::<f64>())
}

/// The largest [`tc_lower_bound`] over `1 <= m <= n`, with the smallest
/// maximizing `m`.
pub fn tc_best_lower(c: &[Complex64]) -> (f64, usize) {
    let n = support(c).max(1);
    let diffs = squared_differences(c, n);
    let mut tail = 0.0;
    let mut best = (f64::NEG_INFINITY, 1);
    // Walk m downwards so that ties resolve to the smallest m.
    for m in (1..=n).rev() {
        tail += diffs[m - 1];
        let value = m as f64 * tail;
        if value >= best.0 {
            best = (value, m);
        }
    }
    best
}

/// `α² / (2α - 1)`, the `n`-independent bound on `‖T_{h_n}‖²` for the Riesz
/// means of order `α > 1/2`.
pub fn alpha_bound(alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 0.5 {
        return Err(Error::Domain(format!(
            "alpha bound needs alpha > 1/2, got {alpha}"
        )));
    }
    Ok(alpha * alpha / (2.0 * alpha - 1.0))
}

/// `(1/8) ln((n + 1) / 2)`, the lower bound on `‖T_{h_n}‖²` at order 1/2.
pub fn halflog_bound(n: usize) -> f64 {
    0.125 * ((n as f64 + 1.0) / 2.0).ln()
}
