//! Priors over the numbers of a range (communicative need).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::system::NumberRange;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PriorKind {
    /// `P(n) ∝ n^-exponent`.
    PowerLaw(f64),
    Uniform,
}

impl PriorKind {
    /// `power2`, `uniform`, or `power<exponent>` for other exponents.
    pub fn label(self) -> String {
        match self {
            PriorKind::Uniform => String::from("uniform"),
            PriorKind::PowerLaw(e) => format!("power{e}"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "uniform" => Some(PriorKind::Uniform),
            _ => {
                let e: f64 = s.strip_prefix("power")?.parse().ok()?;
                (e.is_finite() && e >= 0.0).then_some(PriorKind::PowerLaw(e))
            }
        }
    }
}

/// Normalized weights over a range; all weights are positive.
#[derive(Clone, Debug, PartialEq)]
pub struct Prior {
    kind: PriorKind,
    range: NumberRange,
    weights: Vec<f64>,
}

impl Prior {
    pub fn new(kind: PriorKind, range: NumberRange) -> Self {
        let raw: Vec<f64> = range
            .iter()
            .map(|n| match kind {
                PriorKind::PowerLaw(e) => libm::pow(f64::from(n), -e),
                PriorKind::Uniform => 1.0,
            })
            .collect();
        let total: f64 = raw.iter().sum();
        let weights = raw.into_iter().map(|w| w / total).collect();
        Prior { kind, range, weights }
    }

    pub fn power_law(range: NumberRange) -> Self {
        Self::new(PriorKind::PowerLaw(2.0), range)
    }

    pub fn uniform(range: NumberRange) -> Self {
        Self::new(PriorKind::Uniform, range)
    }

    pub fn kind(&self) -> PriorKind {
        self.kind
    }

    pub fn range(&self) -> NumberRange {
        self.range
    }

    /// Zero outside the range.
    pub fn weight(&self, n: u32) -> f64 {
        self.range.index(n).map_or(0.0, |i| self.weights[i])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_p1(hi: u32) -> f64 {
        let mut z = 0.0;
        for n in 1..=hi {
            z += 1.0 / f64::from(n * n);
        }
        1.0 / z
    }

    #[test]
    fn power_law_mass_is_concentrated_on_small_numbers() {
        let prior = Prior::power_law(NumberRange::default());
        assert!(prior.weight(1) + prior.weight(2) > 0.75);
        assert!((1..=6).map(|n| prior.weight(n)).sum::<f64>() > 0.90);
        assert!((prior.weight(1) - 0.611_664_228_809_708_2).abs() < 1e-12);
        assert!((prior.weight(1) - brute_force_p1(99)).abs() < 1e-12);
    }

    #[test]
    fn uniform_is_flat() {
        let prior = Prior::uniform(NumberRange::default());
        for n in 1..=99 {
            assert!((prior.weight(n) - 1.0 / 99.0).abs() < 1e-15);
        }
        assert_eq!(prior.weight(100), 0.0);
    }

    #[test]
    fn weights_are_normalized() {
        for range in [NumberRange::default(), NumberRange::new(1, 1).unwrap(), NumberRange::new(7, 1000).unwrap()] {
            for kind in [PriorKind::PowerLaw(2.0), PriorKind::PowerLaw(1.3), PriorKind::Uniform] {
                let prior = Prior::new(kind, range);
                let total: f64 = prior.weights().iter().sum();
                assert!((total - 1.0).abs() < 1e-12, "{kind:?} {range}");
                assert!(prior.weights().iter().all(|&w| w > 0.0));
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        assert_eq!(PriorKind::PowerLaw(2.0).label(), "power2");
        assert_eq!(PriorKind::parse("power2"), Some(PriorKind::PowerLaw(2.0)));
        assert_eq!(PriorKind::parse("uniform"), Some(PriorKind::Uniform));
        assert_eq!(PriorKind::parse("power-1"), None);
        assert_eq!(PriorKind::parse("gauss"), None);
    }
}
