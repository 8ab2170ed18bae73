//! Built-in demonstration parameter sets.
//!
//! Five fixed parameter sets, all in the `C = -1` regime, covering a
//! quasi-periodic orbit (id 1), integer periods 6, 4 and 3 (ids 2-4) and a
//! short irrational period close to the `T = 2` limit (id 5). Each carries
//! a frozen 15-term reference table used by the CLI's `examples --check`
//! and by the acceptance suite.

use crate::recurrence::RecurrenceParams;

/// A demonstration parameter set with its frozen reference terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub id: u8,
    pub params: RecurrenceParams,
    /// First 15 terms. Exact values unless `reference_rounded` is set, in
    /// which case the stored values carry one-decimal rounding.
    pub reference_terms: [f64; 15],
    pub reference_rounded: bool,
}

pub const PRESETS: [Preset; 5] = [
    Preset {
        id: 1,
        params: RecurrenceParams { additive: 3.0, lag1: 1.8, lag2: -1.0, f0: 1.0, f1: 5.0 },
        reference_terms: [
            1.0, 5.0, 11.0, 17.8, 24.0, 28.5, 30.2, 28.9, 24.8, 18.8, 12.0, 5.8, 1.4, -0.2, 1.2,
        ],
        reference_rounded: true,
    },
    Preset {
        id: 2,
        params: RecurrenceParams { additive: 3.0, lag1: 1.0, lag2: -1.0, f0: 1.0, f1: 5.0 },
        reference_terms: [
            1.0, 5.0, 7.0, 5.0, 1.0, -1.0, 1.0, 5.0, 7.0, 5.0, 1.0, -1.0, 1.0, 5.0, 7.0,
        ],
        reference_rounded: false,
    },
    Preset {
        id: 3,
        params: RecurrenceParams { additive: 3.0, lag1: 0.0, lag2: -1.0, f0: 1.0, f1: 5.0 },
        reference_terms: [
            1.0, 5.0, 2.0, -2.0, 1.0, 5.0, 2.0, -2.0, 1.0, 5.0, 2.0, -2.0, 1.0, 5.0, 2.0,
        ],
        reference_rounded: false,
    },
    Preset {
        id: 4,
        params: RecurrenceParams { additive: 3.0, lag1: -1.0, lag2: -1.0, f0: 1.0, f1: 5.0 },
        reference_terms: [
            1.0, 5.0, -3.0, 1.0, 5.0, -3.0, 1.0, 5.0, -3.0, 1.0, 5.0, -3.0, 1.0, 5.0, -3.0,
        ],
        reference_rounded: false,
    },
    Preset {
        id: 5,
        params: RecurrenceParams { additive: 3.0, lag1: -1.5, lag2: -1.0, f0: 1.0, f1: 5.0 },
        reference_terms: [
            1.0, 5.0, -5.5, 6.3, -0.9, -1.9, 6.8, -5.2, 4.1, 2.1, -4.3, 7.3, -3.6, 1.2, 4.9,
        ],
        reference_rounded: true,
    },
];

pub fn preset(id: u8) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.id == id)
}

impl Preset {
    /// Number of reference terms (always 15).
    pub fn reference_len(&self) -> usize {
        self.reference_terms.len()
    }

    /// True when `terms` reproduces the reference table: exact equality for
    /// exact presets, one-decimal rounding for rounded ones.
    pub fn matches_reference(&self, terms: &[f64]) -> bool {
        terms.len() >= self.reference_terms.len()
            && self.reference_terms.iter().zip(terms).all(|(want, got)| {
                if self.reference_rounded {
                    (round_to_tenth(*got) - want).abs() < 1e-9
                } else {
                    got == want
                }
            })
    }
}

/// Rounds to one decimal place, halves away from zero.
pub fn round_to_tenth(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{classify, generate, PeriodClassification};
    use approx::assert_abs_diff_eq;

    #[test]
    fn lookup_by_id() {
        for id in 1..=5u8 {
            assert_eq!(preset(id).unwrap().id, id);
        }
        assert!(preset(0).is_none());
        assert!(preset(6).is_none());
    }

    #[test]
    fn every_preset_reproduces_its_reference_table() {
        for p in &PRESETS {
            let seq = generate(&p.params, p.reference_len()).unwrap();
            assert!(p.matches_reference(seq.terms()), "preset {} mismatch", p.id);
        }
    }

    #[test]
    fn exact_presets_match_bitwise() {
        for id in [2u8, 3, 4] {
            let p = preset(id).unwrap();
            let seq = generate(&p.params, 15).unwrap();
            assert_eq!(seq.terms(), &p.reference_terms, "preset {id}");
        }
    }

    #[test]
    fn all_presets_are_sampled_periodic() {
        let expected_periods = [13.930846554678492, 6.0, 4.0, 3.0, 2.597582930929304];
        for (p, want) in PRESETS.iter().zip(expected_periods) {
            match classify(&p.params) {
                PeriodClassification::SampledPeriodic { period, .. } => {
                    assert_abs_diff_eq!(period, want, epsilon = 1e-9)
                }
                other => panic!("preset {} classified {other:?}", p.id),
            }
        }
    }

    #[test]
    fn rounding_halves_away_from_zero() {
        assert_eq!(round_to_tenth(6.25), 6.3);
        assert_eq!(round_to_tenth(-0.875), -0.9);
        assert_eq!(round_to_tenth(-0.21550102528), -0.2);
        assert_eq!(round_to_tenth(24.04), 24.0);
    }

    #[test]
    fn mismatched_terms_are_rejected() {
        let p = preset(2).unwrap();
        let mut terms = p.reference_terms.to_vec();
        terms[3] += 1e-6;
        assert!(!p.matches_reference(&terms));
        assert!(!p.matches_reference(&terms[..10]));
    }
}
