use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Scalar series with closed-form sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarSeries {
    /// `a_k = 1/(k+1)²`, sum `π²/6`
    InvSquare,
    /// `a_k = (-1)^k/(k+1)`, sum `ln 2`
    AltHarmonic,
    /// `a_k = 2^{-k}`, sum `2`
    Geometric,
}

impl ScalarSeries {
    pub const ALL: [ScalarSeries; 3] = [
        ScalarSeries::InvSquare,
        ScalarSeries::AltHarmonic,
        ScalarSeries::Geometric,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ScalarSeries::InvSquare => "inv-square",
            ScalarSeries::AltHarmonic => "alt-harmonic",
            ScalarSeries::Geometric => "geometric",
        }
    }

    pub fn term(self, k: usize) -> f64 {
        let kf = k as f64;
        match self {
            ScalarSeries::InvSquare => 1.0 / ((kf + 1.0) * (kf + 1.0)),
            ScalarSeries::AltHarmonic => {
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign / (kf + 1.0)
            }
            ScalarSeries::Geometric => 0.5f64.powi(k.min(i32::MAX as usize) as i32),
        }
    }

    pub fn limit(self) -> f64 {
        match self {
            ScalarSeries::InvSquare => std::f64::consts::PI * std::f64::consts::PI / 6.0,
            ScalarSeries::AltHarmonic => std::f64::consts::LN_2,
            ScalarSeries::Geometric => 2.0,
        }
    }
}

impl fmt::Display for ScalarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ScalarSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|series| series.id() == s)
            .ok_or_else(|| Error::UnknownSeries(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for s in ScalarSeries::ALL {
            assert_eq!(s.id().parse::<ScalarSeries>().unwrap(), s);
        }
        assert!(matches!(
            "harmonic".parse::<ScalarSeries>(),
            Err(Error::UnknownSeries(_))
        ));
    }

    #[test]
    fn partial_sums_approach_limits() {
        for s in ScalarSeries::ALL {
            let partial: f64 = (0..200_000).map(|k| s.term(k)).sum();
            assert!((partial - s.limit()).abs() < 1e-4, "{s}");
        }
    }
}
