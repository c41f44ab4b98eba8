//! Zero-divisor claims for Padovan and Perrin quaternions with twin-prime
//! coefficients `a = p - 2`, `b = p`, checked against a brute-force norm scan.
//!
//! Every claim is conditional on `k = -3 (mod z(p))`, where `k = m / 2` for
//! even `m` and `k = (m - 1) / 2` for odd `m`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fibonacci::{fib_residue, FibProfile};
use crate::modular::{is_prime, jacobi, lcm, legendre, PrimeModulus, QuadCongruence, ResidueClass};
use crate::quaternion::{quaternion_sequence, Family, QuatElem, QuatError};
use crate::sequences::{state_period, SeqError, SeqKind, SeqParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{0} does not start a twin prime pair (p - 2 and p must both be prime, p >= 5)")]
    NotTwinPrime(u64),
    #[error("{case} excludes p = {p}")]
    Excluded { case: CaseId, p: u64 },
    #[error("{case} does not apply to p = {p}")]
    NotApplicable { case: CaseId, p: u64 },
    #[error("index {m} has the wrong parity for {case}")]
    WrongParity { case: CaseId, m: u64 },
    #[error("k = {k} is not -3 mod z(p) = {z}")]
    HypothesisViolated { k: u64, z: u64 },
    #[error("scan multiplier must be at least 2, got {0}")]
    ScanMultiplierTooSmall(u64),
    #[error("unknown case id {0:?}")]
    UnknownCase(String),
    #[error(transparent)]
    Quaternion(#[from] QuatError),
    #[error(transparent)]
    Sequence(#[from] SeqError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(m: u64) -> Parity {
        if m.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// `k` for an index `m`: `m / 2` when even, `(m - 1) / 2` when odd.
pub fn half_index(m: u64) -> u64 {
    m / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    ThmPadovanEven,
    ThmPadovanOdd,
    ThmPerrinEven,
    Cor181,
    ThmPerrinOdd,
    Cor7,
    Cor13,
}

impl CaseId {
    pub const ALL: [CaseId; 7] = [
        CaseId::ThmPadovanEven,
        CaseId::ThmPadovanOdd,
        CaseId::ThmPerrinEven,
        CaseId::Cor181,
        CaseId::ThmPerrinOdd,
        CaseId::Cor7,
        CaseId::Cor13,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::ThmPadovanEven => "thm-padovan-even",
            CaseId::ThmPadovanOdd => "thm-padovan-odd",
            CaseId::ThmPerrinEven => "thm-perrin-even",
            CaseId::Cor181 => "cor-181",
            CaseId::ThmPerrinOdd => "thm-perrin-odd",
            CaseId::Cor7 => "cor-7",
            CaseId::Cor13 => "cor-13",
        }
    }

    pub fn family(self) -> Family {
        match self {
            CaseId::ThmPadovanEven | CaseId::ThmPadovanOdd => Family::Qp,
            _ => Family::Qr,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            CaseId::ThmPadovanEven | CaseId::ThmPerrinEven | CaseId::Cor181 => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn reduction(self) -> ReductionKind {
        match self {
            CaseId::ThmPadovanEven => ReductionKind::PadovanEven,
            CaseId::ThmPadovanOdd => ReductionKind::PadovanOdd,
            CaseId::ThmPerrinEven | CaseId::Cor181 => ReductionKind::PerrinEven,
            CaseId::ThmPerrinOdd | CaseId::Cor7 | CaseId::Cor13 => ReductionKind::PerrinOdd,
        }
    }

    /// The prime a corollary is pinned to.
    pub fn fixed_prime(self) -> Option<u64> {
        match self {
            CaseId::Cor181 => Some(181),
            CaseId::Cor7 => Some(7),
            CaseId::Cor13 => Some(13),
            _ => None,
        }
    }

    pub fn excluded_primes(self) -> &'static [u64] {
        match self {
            CaseId::ThmPerrinEven => &[181],
            CaseId::ThmPerrinOdd => &[7, 13, 239],
            _ => &[],
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| VerifyError::UnknownCase(s.to_string()))
    }
}

/// Cases that apply to the twin prime `p`, in canonical order.
pub fn applicable_cases(p: u64) -> Vec<CaseId> {
    let mut out = vec![CaseId::ThmPadovanEven, CaseId::ThmPadovanOdd];
    out.push(if p == 181 {
        CaseId::Cor181
    } else {
        CaseId::ThmPerrinEven
    });
    match p {
        7 => out.push(CaseId::Cor7),
        13 => out.push(CaseId::Cor13),
        239 => {}
        _ => out.push(CaseId::ThmPerrinOdd),
    }
    out
}

fn require_twin_prime(p: u64) -> Result<(), VerifyError> {
    if p >= 5 && is_prime(p) && is_prime(p - 2) {
        Ok(())
    } else {
        Err(VerifyError::NotTwinPrime(p))
    }
}

/// A claim instantiated at one twin prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremCase {
    pub id: CaseId,
    pub profile: FibProfile,
    pub params: SeqParams,
}

impl TheoremCase {
    pub fn new(id: CaseId, p: u64) -> Result<Self, VerifyError> {
        require_twin_prime(p)?;
        if id.excluded_primes().contains(&p) {
            return Err(VerifyError::Excluded { case: id, p });
        }
        if id.fixed_prime().is_some_and(|q| q != p) {
            return Err(VerifyError::NotApplicable { case: id, p });
        }
        let params = SeqParams::twin_prime(p).map_err(|_| VerifyError::NotTwinPrime(p))?;
        let modulus = params.modulus().expect("twin-prime params carry a modulus");
        Ok(TheoremCase {
            id,
            profile: FibProfile::new(modulus),
            params,
        })
    }

    pub fn p(&self) -> u64 {
        self.profile.p.get()
    }

    pub fn parity(&self) -> Parity {
        self.id.parity()
    }

    /// The class of `k` mod `z(p)` the hypothesis requires, i.e. `-3 mod z`.
    pub fn hypothesis_class(&self) -> u64 {
        hypothesis_class(&self.profile)
    }

    pub fn satisfies_hypothesis(&self, m: u64) -> bool {
        Parity::of(m) == self.parity()
            && half_index(m) % self.profile.entry_point == self.hypothesis_class()
    }

    /// The claim's prediction at an index satisfying the hypothesis.
    pub fn predicate(&self, m: u64) -> Result<bool, VerifyError> {
        let profile = &self.profile;
        match self.id {
            CaseId::ThmPadovanEven => predicate_padovan_even(profile, m),
            CaseId::ThmPadovanOdd => predicate_padovan_odd(profile, m),
            CaseId::ThmPerrinEven => predicate_perrin_even(profile, m),
            CaseId::ThmPerrinOdd => predicate_perrin_odd(profile, m),
            CaseId::Cor181 => predicate_cor_181(m),
            CaseId::Cor7 => predicate_cor_7(m),
            CaseId::Cor13 => predicate_cor_13(m),
        }
    }

    /// Whether the claim's prime-level condition holds; for the corollaries,
    /// whether the stated index classes can meet the hypothesis at all.
    pub fn side_condition(&self) -> bool {
        let p = self.p();
        match self.id {
            CaseId::ThmPadovanEven => p % 4 == 1,
            CaseId::ThmPadovanOdd => p % 3 == 1,
            CaseId::ThmPerrinEven => perrin_even_condition(p),
            CaseId::ThmPerrinOdd => perrin_odd_condition(p),
            CaseId::Cor181 | CaseId::Cor7 => {
                let z = self.profile.entry_point;
                let period = match self.id {
                    CaseId::Cor181 => 90,
                    _ => 16,
                };
                (0..lcm(z, period)).any(|k| {
                    let m = 2 * k + if self.id == CaseId::Cor7 { 1 } else { 0 };
                    k % z == self.hypothesis_class() && self.predicate(m).unwrap_or(false)
                })
            }
            CaseId::Cor13 => true,
        }
    }
}

fn hypothesis_class(profile: &FibProfile) -> u64 {
    (-3i64).rem_euclid(profile.entry_point as i64) as u64
}

fn check_index(case: CaseId, profile: &FibProfile, m: u64) -> Result<u64, VerifyError> {
    if Parity::of(m) != case.parity() {
        return Err(VerifyError::WrongParity { case, m });
    }
    let k = half_index(m);
    let z = profile.entry_point;
    if k % z != hypothesis_class(profile) {
        return Err(VerifyError::HypothesisViolated { k, z });
    }
    Ok(k)
}

/// Residues of `k` mod `pi(p)` of the form `j z - 1 - offset`, `j = 1..4`,
/// deduplicated and sorted. The Padovan claims use offset 2 (`k = s - 2`
/// with `s = j z - 1`), the Perrin claims offset 1 (`k = s - 1` with
/// `s = j z - 2`).
pub fn s_classes(profile: &FibProfile, family: Family) -> Vec<u64> {
    let (z, pi) = (profile.entry_point as i64, profile.pisano_period as i64);
    let (s_shift, k_shift) = match family {
        Family::Qp => (1, 2),
        Family::Qr => (2, 1),
    };
    let set: BTreeSet<u64> = (1..=4)
        .map(|j| (j * z - s_shift - k_shift).rem_euclid(pi) as u64)
        .collect();
    set.into_iter().collect()
}

fn in_s_classes(profile: &FibProfile, family: Family, k: u64) -> bool {
    s_classes(profile, family).contains(&(k % profile.pisano_period))
}

pub fn perrin_even_condition(p: u64) -> bool {
    let symbol = legendre(p as i128, PrimeModulus::new(181).expect("181 is prime"));
    match p % 8 {
        1 | 3 => symbol == 1,
        5 | 7 => symbol == -1,
        _ => false,
    }
}

pub fn perrin_odd_condition(p: u64) -> bool {
    jacobi(p as i128, 13 * 239) == 1
}

pub fn predicate_padovan_even(profile: &FibProfile, m: u64) -> Result<bool, VerifyError> {
    let k = check_index(CaseId::ThmPadovanEven, profile, m)?;
    Ok(profile.p.get() % 4 == 1 && in_s_classes(profile, Family::Qp, k))
}

pub fn predicate_padovan_odd(profile: &FibProfile, m: u64) -> Result<bool, VerifyError> {
    let k = check_index(CaseId::ThmPadovanOdd, profile, m)?;
    Ok(profile.p.get() % 3 == 1 && in_s_classes(profile, Family::Qp, k))
}

pub fn predicate_perrin_even(profile: &FibProfile, m: u64) -> Result<bool, VerifyError> {
    let p = profile.p.get();
    if p == 181 {
        return Err(VerifyError::Excluded {
            case: CaseId::ThmPerrinEven,
            p,
        });
    }
    let k = check_index(CaseId::ThmPerrinEven, profile, m)?;
    Ok(perrin_even_condition(p) && in_s_classes(profile, Family::Qr, k))
}

pub fn predicate_perrin_odd(profile: &FibProfile, m: u64) -> Result<bool, VerifyError> {
    let p = profile.p.get();
    if CaseId::ThmPerrinOdd.excluded_primes().contains(&p) {
        return Err(VerifyError::Excluded {
            case: CaseId::ThmPerrinOdd,
            p,
        });
    }
    let k = check_index(CaseId::ThmPerrinOdd, profile, m)?;
    Ok(perrin_odd_condition(p) && in_s_classes(profile, Family::Qr, k))
}

fn corollary_parity(case: CaseId, m: u64) -> Result<u64, VerifyError> {
    if Parity::of(m) != case.parity() {
        return Err(VerifyError::WrongParity { case, m });
    }
    Ok(half_index(m))
}

/// `m / 2 = 47 (mod 90)`. The hypothesis is left to the verdict engine.
pub fn predicate_cor_181(m: u64) -> Result<bool, VerifyError> {
    Ok(corollary_parity(CaseId::Cor181, m)? % 90 == 47)
}

/// `(m - 1) / 2 = 4 or 10 (mod 16)`. The hypothesis is left to the verdict engine.
pub fn predicate_cor_7(m: u64) -> Result<bool, VerifyError> {
    Ok(matches!(corollary_parity(CaseId::Cor7, m)? % 16, 4 | 10))
}

/// No zero divisors are claimed.
pub fn predicate_cor_13(m: u64) -> Result<bool, VerifyError> {
    corollary_parity(CaseId::Cor13, m).map(|_| false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionKind {
    PadovanEven,
    PadovanOdd,
    PerrinEven,
    PerrinOdd,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 4] = [
        ReductionKind::PadovanEven,
        ReductionKind::PadovanOdd,
        ReductionKind::PerrinEven,
        ReductionKind::PerrinOdd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReductionKind::PadovanEven => "padovan-even",
            ReductionKind::PadovanOdd => "padovan-odd",
            ReductionKind::PerrinEven => "perrin-even",
            ReductionKind::PerrinOdd => "perrin-odd",
        }
    }

    pub fn family(self) -> Family {
        match self {
            ReductionKind::PadovanEven | ReductionKind::PadovanOdd => Family::Qp,
            _ => Family::Qr,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            ReductionKind::PadovanEven | ReductionKind::PerrinEven => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn reduction(self) -> NormReduction {
        match self {
            ReductionKind::PadovanEven => {
                NormReduction::new(self, FibVariable::ShiftedMinusOne(2), [1, 0, 1])
            }
            ReductionKind::PadovanOdd => {
                NormReduction::new(self, FibVariable::ShiftedMinusOne(2), [3, 0, 1])
            }
            ReductionKind::PerrinEven => {
                NormReduction::new(self, FibVariable::Shifted(1), [27, -8, 14])
            }
            ReductionKind::PerrinOdd => {
                NormReduction::new(self, FibVariable::Shifted(1), [63, 26, 52])
            }
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The Fibonacci-derived quantity a reduction is a quadratic in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FibVariable {
    /// `F_{k+d}`
    Shifted(u64),
    /// `F_{k+d} - 1`
    ShiftedMinusOne(u64),
}

impl FibVariable {
    pub fn value(self, k: u64, p: PrimeModulus) -> ResidueClass {
        match self {
            FibVariable::Shifted(d) => fib_residue(k + d, p),
            FibVariable::ShiftedMinusOne(d) => fib_residue(k + d, p) - p.one(),
        }
    }
}

impl fmt::Display for FibVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibVariable::Shifted(d) => write!(f, "F_(k+{d})"),
            FibVariable::ShiftedMinusOne(d) => write!(f, "(F_(k+{d}) - 1)"),
        }
    }
}

/// A norm congruence rewritten as `c2 x^2 + c1 x + c0 = 0 (mod p)` in a
/// Fibonacci variable `x`, valid when `z(p) | k + 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormReduction {
    pub kind: ReductionKind,
    pub variable: FibVariable,
    pub coeffs: [i64; 3],
}

impl NormReduction {
    const fn new(kind: ReductionKind, variable: FibVariable, coeffs: [i64; 3]) -> Self {
        NormReduction {
            kind,
            variable,
            coeffs,
        }
    }

    pub fn congruence(&self, p: PrimeModulus) -> QuadCongruence {
        let [c2, c1, c0] = self.coeffs;
        QuadCongruence::new(c2, c1, c0, p)
    }

    /// The quadratic at `x = variable(k)`, without checking the hypothesis.
    pub fn evaluate(&self, k: u64, p: PrimeModulus) -> ResidueClass {
        self.congruence(p).evaluate(self.variable.value(k, p))
    }
}

impl fmt::Display for NormReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c2, c1, c0] = self.coeffs;
        let x = self.variable;
        write!(f, "{c2}{x}^2")?;
        if c1 != 0 {
            write!(f, " {} {}{x}", if c1 < 0 { '-' } else { '+' }, c1.abs())?;
        }
        write!(f, " + {c0}")
    }
}

/// The reduced norm quadratic at `k`, requiring `z(p) | k + 3`.
pub fn reduced_norm_value(
    kind: ReductionKind,
    k: u64,
    profile: &FibProfile,
) -> Result<ResidueClass, VerifyError> {
    let z = profile.entry_point;
    if !(k + 3).is_multiple_of(z) {
        return Err(VerifyError::HypothesisViolated { k, z });
    }
    Ok(kind.reduction().evaluate(k, profile.p))
}

/// `2(F_{k+3} - 1)^2 + (F_{k+2} - 1)^2 + (F_{k+4} - 1)^2`, which equals
/// `N(QP_{2k})` for every `k`.
pub fn padovan_even_norm_unconditional(k: u64, p: PrimeModulus) -> ResidueClass {
    let g = |d: u64| {
        let v = fib_residue(k + d, p) - p.one();
        v * v
    };
    p.residue(2) * g(3) + g(2) + g(4)
}

/// Indices `m < scan_limit` whose quaternion is a zero divisor.
pub fn brute_force_zero_divisors(
    params: &SeqParams,
    family: Family,
    scan_limit: u64,
) -> Result<BTreeSet<u64>, VerifyError> {
    let seq = quaternion_sequence(family, params, scan_limit as usize)?;
    Ok(seq
        .iter()
        .enumerate()
        .filter(|(_, q)| q.is_zero_divisor())
        .map(|(m, _)| m as u64)
        .collect())
}

/// Even-aligned period of the quaternion sequence `family` over `params`.
pub fn quaternion_period(params: &SeqParams, family: Family) -> u64 {
    let p = params.modulus().expect("modular params").get();
    let a = params.a_mod().expect("modular params").value();
    let b = params.b_mod().expect("modular params").value();
    match family {
        Family::Qp => state_period(SeqKind::Padovan, a, b, p),
        Family::Qr => lcm(
            state_period(SeqKind::Perrin, a, b, p),
            state_period(SeqKind::Perrin, b, a, p),
        ),
    }
}

/// The index range a verdict is computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanWindow {
    pub sequence_period: u64,
    pub pisano_period: u64,
    /// `lcm(sequence_period, 2 pi(p))`; both sides of every claim are
    /// periodic in `m` with this period.
    pub window: u64,
    pub multiplier: u64,
}

impl ScanWindow {
    pub fn new(case: &TheoremCase, multiplier: u64) -> Result<Self, VerifyError> {
        if multiplier < 2 {
            return Err(VerifyError::ScanMultiplierTooSmall(multiplier));
        }
        let sequence_period = quaternion_period(&case.params, case.id.family());
        let pisano_period = case.profile.pisano_period;
        Ok(ScanWindow {
            sequence_period,
            pisano_period,
            window: lcm(sequence_period, 2 * pisano_period),
            multiplier,
        })
    }

    pub fn scan_limit(&self) -> u64 {
        self.window * self.multiplier
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    Holds,
    HoldsVacuously,
    Fails,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Holds => "HOLDS",
            Classification::HoldsVacuously => "HOLDS_VACUOUSLY",
            Classification::Fails => "FAILS",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Classification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Classification::Holds,
            Classification::HoldsVacuously,
            Classification::Fails,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
        .ok_or_else(|| format!("unknown classification {s:?}"))
    }
}

/// An index where the prediction and the oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub index: u64,
    pub k: u64,
    pub norm: u64,
    pub reduced: u64,
    pub predicted: bool,
    pub observed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub case: TheoremCase,
    pub scan: ScanWindow,
    /// Indices in range satisfying parity and hypothesis.
    pub hypothesis_count: u64,
    /// Predicted zero-divisor indices, as residues mod the window.
    pub predicted: Vec<u64>,
    /// Observed zero-divisor indices among hypothesis indices, as residues mod the window.
    pub observed: Vec<u64>,
    pub classification: Classification,
    /// Every disagreement in the scan range, ascending by index.
    pub counterexamples: Vec<Counterexample>,
}

impl TheoremVerdict {
    pub fn first_counterexample(&self) -> Option<&Counterexample> {
        self.counterexamples.first()
    }
}

pub fn verify_case(
    case: &TheoremCase,
    scan_multiplier: u64,
) -> Result<TheoremVerdict, VerifyError> {
    let scan = ScanWindow::new(case, scan_multiplier)?;
    let limit = scan.scan_limit();
    let quats = quaternion_sequence(case.id.family(), &case.params, limit as usize)?;
    let reduction = case.id.reduction().reduction();
    let p = case.profile.p;

    let mut hypothesis_count = 0;
    let mut predicted = BTreeSet::new();
    let mut observed = BTreeSet::new();
    let mut counterexamples = Vec::new();
    for m in (0..limit).filter(|&m| case.satisfies_hypothesis(m)) {
        hypothesis_count += 1;
        let q: &QuatElem = &quats[m as usize];
        let pred = case.predicate(m)?;
        let obs = q.is_zero_divisor();
        if pred {
            predicted.insert(m % scan.window);
        }
        if obs {
            observed.insert(m % scan.window);
        }
        if pred != obs {
            let k = half_index(m);
            counterexamples.push(Counterexample {
                index: m,
                k,
                norm: q.norm().value(),
                reduced: reduction.evaluate(k, p).value(),
                predicted: pred,
                observed: obs,
            });
        }
    }

    let classification = if hypothesis_count == 0 {
        Classification::HoldsVacuously
    } else if !counterexamples.is_empty() {
        Classification::Fails
    } else if predicted.is_empty() && observed.is_empty() && !case.side_condition() {
        Classification::HoldsVacuously
    } else {
        Classification::Holds
    };
    Ok(TheoremVerdict {
        case: *case,
        scan,
        hypothesis_count,
        predicted: predicted.into_iter().collect(),
        observed: observed.into_iter().collect(),
        classification,
        counterexamples,
    })
}
