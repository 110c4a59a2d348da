//! Coefficient sequences, Hadamard products and summability means.
//!
//! A function is represented by its truncated Taylor coefficients
//! `f(z) = a_0 + a_1 z + ... + a_N z^N`. A summability mean of order `n`
//! is a Hadamard multiplier whose coefficients `c_0, ..., c_n` are stored in
//! a [`SummabilityProfile`]; all coefficients beyond `n` are zero.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite complex coefficient sequence `(a_0, ..., a_N)`, index = degree.
///
/// Trailing zeros carry no meaning: two sequences that differ only by
/// trailing zeros compare equal.
#[derive(Clone, Debug)]
pub struct CoeffSeq {
    coeffs: Vec<Complex64>,
}

impl CoeffSeq {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The monomial `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Highest stored index (not the degree of the trimmed polynomial).
    pub fn max_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, k: usize) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// The partial sum `s_n[f]`: coefficients up to degree `n`.
    pub fn truncate(&self, n: usize) -> Self {
        let len = self.coeffs.len().min(n + 1);
        Self {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    fn trimmed(&self) -> &[Complex64] {
        let end = self
            .coeffs
            .iter()
            .rposition(|c| c.re != 0.0 || c.im != 0.0)
            .map_or(0, |i| i + 1);
        &self.coeffs[..end]
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * lambda).collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("coefficient serialization is infallible")
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

impl PartialEq for CoeffSeq {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

// JSON form: `[[re, im], ...]`; a bare number `x` is read as `[x, 0]`.
impl Serialize for CoeffSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&[c.re, c.im])?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Pair([f64; 2]),
    Real(f64),
}

impl<'de> Deserialize<'de> for CoeffSeq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CoeffVisitor;

        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = CoeffSeq;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-empty array of [re, im] pairs or numbers")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<CoeffSeq, A::Error> {
                let mut coeffs = Vec::with_capacity(seq.size_hint().unwrap_or(0));
                while let Some(c) = seq.next_element::<JsonCoeff>()? {
                    coeffs.push(match c {
                        JsonCoeff::Pair([re, im]) => Complex64::new(re, im),
                        JsonCoeff::Real(re) => Complex64::new(re, 0.0),
                    });
                }
                CoeffSeq::new(coeffs).map_err(|_| de::Error::invalid_length(0, &self))
            }
        }

        deserializer.deserialize_seq(CoeffVisitor)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    Cesaro,
    Riesz,
    Fejer,
    PartialSum,
}

/// Multiplier coefficients `c_0, ..., c_n` of a summability mean.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummabilityProfile {
    kind: ProfileKind,
    alpha: Option<f64>,
    n: usize,
    weights: Vec<f64>,
}

fn check_order(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "summability order must be > 0, got {alpha}"
        )))
    }
}

impl SummabilityProfile {
    /// `(C, alpha)` weights `binom(n-k+alpha, alpha) / binom(n+alpha, alpha)`.
    pub fn cesaro(n: usize, alpha: f64) -> Result<Self> {
        check_order(alpha)?;
        let logs = ln_binomial_table(n, alpha);
        let top = logs[n];
        let weights = (0..=n).map(|k| (logs[n - k] - top).exp()).collect();
        Ok(Self {
            kind: ProfileKind::Cesaro,
            alpha: Some(alpha),
            n,
            weights,
        })
    }

    /// Discrete Riesz weights `(1 - k/(n+1))^alpha`.
    pub fn riesz(n: usize, alpha: f64) -> Result<Self> {
        check_order(alpha)?;
        let weights = (0..=n).map(|k| riesz_weight(n, k, alpha)).collect();
        Ok(Self {
            kind: ProfileKind::Riesz,
            alpha: Some(alpha),
            n,
            weights,
        })
    }

    /// Fejér weights `1 - k/(n+1)`.
    pub fn fejer(n: usize) -> Self {
        let weights = (0..=n).map(|k| riesz_weight(n, k, 1.0)).collect();
        Self {
            kind: ProfileKind::Fejer,
            alpha: None,
            n,
            weights,
        }
    }

    /// Taylor partial sum `s_n`: all weights one.
    pub fn partial_sum(n: usize) -> Self {
        Self {
            kind: ProfileKind::PartialSum,
            alpha: None,
            n,
            weights: vec![1.0; n + 1],
        }
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `c_k`, zero for `k > n`.
    pub fn weight(&self, k: usize) -> f64 {
        self.weights.get(k).copied().unwrap_or(0.0)
    }

    /// The multiplier polynomial `h_n`.
    pub fn to_coeff_seq(&self) -> CoeffSeq {
        CoeffSeq::from_real(&self.weights).expect("profiles have n + 1 >= 1 weights")
    }
}

fn riesz_weight(n: usize, k: usize, alpha: f64) -> f64 {
    let base = (n + 1 - k) as f64 / (n + 1) as f64;
    if alpha == 1.0 {
        base
    } else {
        base.powf(alpha)
    }
}

/// Neumaier-compensated running sums `ln binom(m + alpha, alpha)` for
/// `m = 0..=n`, using `ln binom(m + alpha, alpha) = sum_{i<=m} ln(1 + alpha/i)`.
fn ln_binomial_table(n: usize, alpha: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    out.push(0.0);
    for i in 1..=n {
        let term = (alpha / i as f64).ln_1p();
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        out.push(sum + comp);
    }
    out
}

/// `ln binom(n + alpha, alpha) = ln Γ(n+alpha+1) - ln Γ(alpha+1) - ln Γ(n+1)`.
pub fn ln_gen_binomial(n: usize, alpha: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(Error::Domain(format!(
            "generalized binomial needs alpha > -1, got {alpha}"
        )));
    }
    Ok(*ln_binomial_table(n, alpha).last().unwrap())
}

/// Generalized binomial coefficient `binom(n + alpha, alpha)`, evaluated in
/// log space so that it stays finite for large `n`.
pub fn gen_binomial(n: usize, alpha: f64) -> Result<f64> {
    ln_gen_binomial(n, alpha).map(f64::exp)
}

/// Coefficientwise product; the result has the shorter of the two lengths.
pub fn hadamard_product(h: &CoeffSeq, f: &CoeffSeq) -> CoeffSeq {
    let coeffs = h
        .coeffs
        .iter()
        .zip(&f.coeffs)
        .map(|(&c, &a)| c * a)
        .collect();
    CoeffSeq { coeffs }
}

/// `M_{h_n} f`, i.e. the mean of `f` described by `profile`.
pub fn apply_mean(profile: &SummabilityProfile, f: &CoeffSeq) -> CoeffSeq {
    hadamard_product(&profile.to_coeff_seq(), &f.truncate(profile.n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn gen_binomial_small_cases() {
        assert_eq!(gen_binomial(0, 0.5).unwrap(), 1.0);
        assert!((gen_binomial(2, 1.0).unwrap() - 3.0).abs() < 1e-14);
        // (1.5/1)(2.5/2)
        assert!((gen_binomial(2, 0.5).unwrap() - 1.875).abs() < 1e-14);
    }

    #[test]
    fn gen_binomial_domain() {
        assert!(matches!(gen_binomial(3, -1.0), Err(Error::Domain(_))));
        assert!(matches!(gen_binomial(3, f64::NAN), Err(Error::Domain(_))));
        assert!(gen_binomial(3, -0.5).is_ok());
    }

    #[test]
    fn gen_binomial_large_n_is_finite() {
        // binom(n + 1/2, 1/2) ~ sqrt(n) / Γ(3/2)
        let v = gen_binomial(1_000_000, 0.5).unwrap();
        let approx = 1e3 / (std::f64::consts::PI.sqrt() / 2.0);
        assert!(v.is_finite());
        assert!((v / approx - 1.0).abs() < 1e-6);
    }

    #[test]
    fn cesaro_weights_examples() {
        let p = SummabilityProfile::cesaro(2, 1.0).unwrap();
        let expected = [1.0, 2.0 / 3.0, 1.0 / 3.0];
        for (w, e) in p.weights().iter().zip(expected) {
            assert!((w - e).abs() < 1e-15);
        }
        let p = SummabilityProfile::cesaro(2, 0.5).unwrap();
        let expected = [1.0, 1.5 / 1.875, 1.0 / 1.875];
        for (w, e) in p.weights().iter().zip(expected) {
            assert!((w - e).abs() < 1e-15);
        }
        for alpha in [0.1, 0.5, 2.0, 7.5] {
            assert_eq!(
                SummabilityProfile::cesaro(17, alpha).unwrap().weight(0),
                1.0
            );
        }
    }

    #[test]
    fn weights_reject_nonpositive_order() {
        assert!(SummabilityProfile::cesaro(3, 0.0).is_err());
        assert!(SummabilityProfile::riesz(3, -0.5).is_err());
    }

    #[test]
    fn riesz_weights_examples() {
        let p = SummabilityProfile::riesz(1, 0.5).unwrap();
        assert_eq!(p.weights()[0], 1.0);
        assert!((p.weights()[1] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(
            SummabilityProfile::riesz(3, 1.0).unwrap().weights(),
            &[1.0, 0.75, 0.5, 0.25]
        );
        let p = SummabilityProfile::riesz(2, 2.0).unwrap();
        for (w, e) in p.weights().iter().zip([1.0, 4.0 / 9.0, 1.0 / 9.0]) {
            assert!((w - e).abs() < 1e-15);
        }
        assert_eq!(p.weight(3), 0.0);
    }

    #[test]
    fn fejer_matches_riesz_order_one() {
        let f = SummabilityProfile::fejer(9);
        assert_eq!(
            f.weights(),
            SummabilityProfile::riesz(9, 1.0).unwrap().weights()
        );
        assert_eq!(f.kind(), ProfileKind::Fejer);
        assert_eq!(f.alpha(), None);
    }

    #[test]
    fn hadamard_examples() {
        let f = CoeffSeq::new(vec![c(2.0), Complex64::new(0.0, 1.0), c(-3.0)]).unwrap();
        let ones = CoeffSeq::from_real(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(hadamard_product(&ones, &f), f);

        let proj = CoeffSeq::from_real(&[1.0, 0.0]).unwrap();
        let g = CoeffSeq::from_real(&[3.0, 4.0, 5.0]).unwrap();
        let out = hadamard_product(&proj, &g);
        assert_eq!(out.len(), 2);
        assert_eq!(out, CoeffSeq::from_real(&[3.0]).unwrap());

        let fejer = SummabilityProfile::fejer(2).to_coeff_seq();
        assert_eq!(hadamard_product(&fejer, &ones), fejer);
    }

    #[test]
    fn apply_mean_examples() {
        let f = CoeffSeq::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let s1 = apply_mean(&SummabilityProfile::partial_sum(1), &f);
        assert_eq!(s1, CoeffSeq::from_real(&[1.0, 2.0]).unwrap());

        let r = apply_mean(
            &SummabilityProfile::riesz(1, 1.0).unwrap(),
            &CoeffSeq::from_real(&[1.0, 1.0]).unwrap(),
        );
        assert_eq!(r, CoeffSeq::from_real(&[1.0, 0.5]).unwrap());

        let m = apply_mean(
            &SummabilityProfile::cesaro(2, 1.0).unwrap(),
            &CoeffSeq::from_real(&[0.0, 0.0, 3.0]).unwrap(),
        );
        assert!((m.get(2).re - 1.0).abs() < 1e-15);
        assert_eq!(m.get(0), c(0.0));
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        let a = CoeffSeq::from_real(&[1.0, 2.0]).unwrap();
        let b = CoeffSeq::from_real(&[1.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, CoeffSeq::from_real(&[1.0, 2.0, 0.0, 1.0]).unwrap());
        assert_eq!(
            CoeffSeq::from_real(&[0.0]).unwrap(),
            CoeffSeq::from_real(&[0.0, 0.0]).unwrap()
        );
    }

    #[test]
    fn empty_sequence_rejected() {
        assert!(matches!(CoeffSeq::new(vec![]), Err(Error::Empty)));
        assert!(CoeffSeq::from_json_str("[]").is_err());
    }

    #[test]
    fn json_accepts_bare_numbers() {
        let f = CoeffSeq::from_json_str("[1, [2.5, -1], 0.25]").unwrap();
        assert_eq!(f.coeffs()[0], c(1.0));
        assert_eq!(f.coeffs()[1], Complex64::new(2.5, -1.0));
        assert_eq!(f.coeffs()[2], c(0.25));
        assert_eq!(f.to_json_string(), "[[1.0,0.0],[2.5,-1.0],[0.25,0.0]]");
    }
}
