//! Unconditional identities checked per twin prime, reported next to the
//! theorem verdicts. Unlike the theorems these are expected to hold
//! everywhere, so any failure is a real discrepancy.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::fibonacci::{fib_mod, FibProfile};
use crate::modular::{big_to_residue, lcm};
use crate::quaternion::quaternion_sequence;
use crate::sequences::{lemma_binom_sums_exact, padovan_mod, prop_fib_reduction, SeqParams};
use crate::verifier::{
    half_index, padovan_even_norm_unconditional, quaternion_period, reduced_norm_value,
    Classification, Counterexample, Parity, ReductionKind, VerifyError,
};

/// Largest sequence index the Padovan identities are checked up to.
pub const MAX_INDEX: u64 = 600;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantId {
    Reduction(ReductionKind),
    PadovanNorm,
    Congruence,
    Lemma,
    Proposition,
    WallVinson,
}

impl InvariantId {
    pub const ALL: [InvariantId; 9] = [
        InvariantId::Reduction(ReductionKind::PadovanEven),
        InvariantId::Reduction(ReductionKind::PadovanOdd),
        InvariantId::Reduction(ReductionKind::PerrinEven),
        InvariantId::Reduction(ReductionKind::PerrinOdd),
        InvariantId::PadovanNorm,
        InvariantId::Congruence,
        InvariantId::Lemma,
        InvariantId::Proposition,
        InvariantId::WallVinson,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InvariantId::Reduction(ReductionKind::PadovanEven) => "red-padovan-even",
            InvariantId::Reduction(ReductionKind::PadovanOdd) => "red-padovan-odd",
            InvariantId::Reduction(ReductionKind::PerrinEven) => "red-perrin-even",
            InvariantId::Reduction(ReductionKind::PerrinOdd) => "red-perrin-odd",
            InvariantId::PadovanNorm => "id-padovan-norm",
            InvariantId::Congruence => "id-congruence",
            InvariantId::Lemma => "id-lemma",
            InvariantId::Proposition => "id-proposition",
            InvariantId::WallVinson => "id-wall-vinson",
        }
    }

    pub fn parity(self) -> Option<Parity> {
        match self {
            InvariantId::Reduction(kind) => Some(kind.parity()),
            InvariantId::PadovanNorm | InvariantId::Congruence | InvariantId::Lemma => {
                Some(Parity::Even)
            }
            _ => None,
        }
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InvariantId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InvariantId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| VerifyError::UnknownCase(s.to_string()))
    }
}

/// Result of one identity at one prime. In each failure `norm` holds the
/// left-hand side and `reduced` the right-hand side; for the reduction rows
/// these are the quaternion norm and the reduced quadratic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVerdict {
    pub id: InvariantId,
    pub p: u64,
    pub checked: u64,
    pub holding: u64,
    pub failures: Vec<Counterexample>,
    pub classification: Classification,
}

impl InvariantVerdict {
    fn from_checks(
        id: InvariantId,
        p: u64,
        checks: impl Iterator<Item = (u64, u64, u64, bool, bool)>,
    ) -> Self {
        let mut checked = 0;
        let mut failures = Vec::new();
        for (index, lhs, rhs, predicted, observed) in checks {
            checked += 1;
            if predicted != observed {
                failures.push(Counterexample {
                    index,
                    k: half_index(index),
                    norm: lhs,
                    reduced: rhs,
                    predicted,
                    observed,
                });
            }
        }
        let classification = match (checked, failures.is_empty()) {
            (0, _) => Classification::HoldsVacuously,
            (_, true) => Classification::Holds,
            (_, false) => Classification::Fails,
        };
        InvariantVerdict {
            id,
            p,
            checked,
            holding: checked - failures.len() as u64,
            failures,
            classification,
        }
    }
}

fn lemma_sums() -> &'static [BigInt] {
    static SUMS: OnceLock<Vec<BigInt>> = OnceLock::new();
    SUMS.get_or_init(|| lemma_binom_sums_exact(MAX_INDEX / 2))
}

/// Checks `id` at the twin prime `p`. Reduction rows cover every index
/// compatible with `z(p) | k + 3` in `multiplier` windows of
/// `lcm(sequence period, 2 pi(p))`.
pub fn check_invariant(
    id: InvariantId,
    p: u64,
    multiplier: u64,
) -> Result<InvariantVerdict, VerifyError> {
    if multiplier < 2 {
        return Err(VerifyError::ScanMultiplierTooSmall(multiplier));
    }
    let params = SeqParams::twin_prime(p).map_err(|_| VerifyError::NotTwinPrime(p))?;
    let pm = params.modulus().expect("twin-prime params carry a modulus");
    let profile = FibProfile::new(pm);
    let pi = profile.pisano_period;
    let verdict = match id {
        InvariantId::Reduction(kind) => {
            let family = kind.family();
            let limit = multiplier * lcm(quaternion_period(&params, family), 2 * pi);
            let quats = quaternion_sequence(family, &params, limit as usize)?;
            let indices = (0..limit).filter(|&m| {
                Parity::of(m) == kind.parity()
                    && (half_index(m) + 3).is_multiple_of(profile.entry_point)
            });
            let mut rows = Vec::new();
            for m in indices {
                let reduced = reduced_norm_value(kind, half_index(m), &profile)?;
                let norm = quats[m as usize].norm();
                rows.push((
                    m,
                    norm.value(),
                    reduced.value(),
                    reduced.is_zero(),
                    norm.is_zero(),
                ));
            }
            InvariantVerdict::from_checks(id, p, rows.into_iter())
        }
        InvariantId::PadovanNorm => {
            let quats = quaternion_sequence(
                crate::quaternion::Family::Qp,
                &params,
                (4 * pi + 1) as usize,
            )?;
            let rows = (0..=2 * pi).map(|k| {
                let lhs = quats[2 * k as usize].norm().value();
                let rhs = padovan_even_norm_unconditional(k, pm).value();
                (2 * k, lhs, rhs, true, lhs == rhs)
            });
            InvariantVerdict::from_checks(id, p, rows)
        }
        InvariantId::Congruence | InvariantId::Lemma | InvariantId::Proposition => {
            let terms = padovan_mod(&params, MAX_INDEX as usize + 4)?;
            let rows: Vec<_> = match id {
                InvariantId::Congruence => (0..=(MAX_INDEX - 3) / 2)
                    .map(|k| {
                        let (lhs, rhs) = (
                            terms[2 * k as usize].value(),
                            terms[2 * k as usize + 3].value(),
                        );
                        (2 * k, lhs, rhs, true, lhs == rhs)
                    })
                    .collect(),
                InvariantId::Lemma => lemma_sums()
                    .iter()
                    .enumerate()
                    .map(|(k, sum)| {
                        let lhs = big_to_residue(sum, pm).value();
                        let rhs = terms[2 * k].value();
                        (2 * k as u64, lhs, rhs, true, lhs == rhs)
                    })
                    .collect(),
                _ => (0..=MAX_INDEX)
                    .map(|m| {
                        let (lhs, rhs) =
                            (prop_fib_reduction(m, pm).value(), terms[m as usize].value());
                        (m, lhs, rhs, true, lhs == rhs)
                    })
                    .collect(),
            };
            InvariantVerdict::from_checks(id, p, rows.into_iter())
        }
        InvariantId::WallVinson => {
            let relation_ok = profile.relation().is_some();
            let rows = (0..=10 * pi).map(|m| {
                let divides = fib_mod(m, p) == 0;
                let predicted = m % profile.entry_point == 0;
                (
                    m,
                    divides as u64,
                    predicted as u64,
                    predicted && relation_ok,
                    divides,
                )
            });
            InvariantVerdict::from_checks(id, p, rows)
        }
    };
    Ok(verdict)
}

pub fn check_all_invariants(p: u64, multiplier: u64) -> Result<Vec<InvariantVerdict>, VerifyError> {
    InvariantId::ALL
        .into_iter()
        .map(|id| check_invariant(id, p, multiplier))
        .collect()
}
