//! Bi-periodic Padovan and Perrin sequences.
//!
//! Both satisfy `t_n = c_n t_{n-2} + t_{n-3}` for `n >= 3`, where the
//! coefficient `c_n` is `a` for even `n` and `b` for odd `n`. Padovan starts
//! `1, 0, a`; Perrin starts `3, 0, 2`. Terms are available exactly, as
//! polynomials in `a` and `b`, or reduced modulo a prime.

mod bipoly;
mod parse;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::binomial;
use thiserror::Error;

pub use bipoly::{BiPoly, Monomial};
pub use parse::{ParseError, ParseErrorKind, MAX_DEGREE, MAX_EXPONENT, MAX_INPUT_LEN};

use crate::fibonacci::fib_residue;
use crate::modular::{is_prime, sign_power, PrimeModulus, ResidueClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("operation needs a modulus but the parameters have none")]
    MissingModulus,
    #[error("{0} does not start a twin prime pair (p - 2 and p must both be prime, p >= 5)")]
    NotTwinPrime(u64),
    #[error("index {n} is below the first index {min} the identity covers")]
    IndexTooSmall { n: u64, min: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeqKind {
    Padovan,
    Perrin,
}

impl SeqKind {
    pub fn name(self) -> &'static str {
        match self {
            SeqKind::Padovan => "padovan",
            SeqKind::Perrin => "perrin",
        }
    }

    fn initial_sym(self) -> [BiPoly; 3] {
        match self {
            SeqKind::Padovan => [BiPoly::constant(1), BiPoly::zero(), BiPoly::a()],
            SeqKind::Perrin => [BiPoly::constant(3), BiPoly::zero(), BiPoly::constant(2)],
        }
    }

    fn initial_mod(self, a: u64) -> [u64; 3] {
        match self {
            SeqKind::Padovan => [1, 0, a],
            SeqKind::Perrin => [3, 0, 2],
        }
    }
}

/// The coefficient pair `(a, b)`, optionally with a prime modulus.
///
/// `a` and `b` are kept as the literal integers they were given (so the
/// twin-prime choice `a = p - 2` stays `p - 2`, not `-2`); the reduced
/// residues come from [`SeqParams::a_mod`] and [`SeqParams::b_mod`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeqParams {
    a: i64,
    b: i64,
    modulus: Option<PrimeModulus>,
    twin_prime: bool,
}

impl SeqParams {
    pub fn symbolic(a: i64, b: i64) -> Self {
        SeqParams {
            a,
            b,
            modulus: None,
            twin_prime: false,
        }
    }

    pub fn modular(a: i64, b: i64, p: PrimeModulus) -> Self {
        let pv = p.get() as i64;
        let twin_prime = pv >= 5 && b == pv && a == pv - 2 && is_prime(pv as u64 - 2);
        SeqParams {
            a,
            b,
            modulus: Some(p),
            twin_prime,
        }
    }

    /// `a = p - 2`, `b = p`, requiring both to be prime.
    pub fn twin_prime(p: u64) -> Result<Self, SeqError> {
        if p < 5 || !is_prime(p) || !is_prime(p - 2) {
            return Err(SeqError::NotTwinPrime(p));
        }
        let modulus = PrimeModulus::new(p).map_err(|_| SeqError::NotTwinPrime(p))?;
        Ok(Self::modular(p as i64 - 2, p as i64, modulus))
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn modulus(&self) -> Option<PrimeModulus> {
        self.modulus
    }

    pub fn is_twin_prime(&self) -> bool {
        self.twin_prime
    }

    /// The same parameters with `a` and `b` exchanged.
    pub fn swapped(&self) -> Self {
        match self.modulus {
            Some(p) => Self::modular(self.b, self.a, p),
            None => Self::symbolic(self.b, self.a),
        }
    }

    fn require_modulus(&self) -> Result<PrimeModulus, SeqError> {
        self.modulus.ok_or(SeqError::MissingModulus)
    }

    pub fn a_mod(&self) -> Result<ResidueClass, SeqError> {
        Ok(self.require_modulus()?.residue(self.a as i128))
    }

    pub fn b_mod(&self) -> Result<ResidueClass, SeqError> {
        Ok(self.require_modulus()?.residue(self.b as i128))
    }
}

/// Three consecutive terms `(t_n, t_{n+1}, t_{n+2})` modulo `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeqState {
    pub terms: [u64; 3],
    pub index: u64,
}

impl SeqState {
    pub fn index_is_even(&self) -> bool {
        self.index.is_multiple_of(2)
    }

    /// Moves to index `n + 1`; `a`, `b` are already reduced modulo `m`.
    pub fn advance(&mut self, a: u64, b: u64, m: u64) {
        let next_index = self.index + 3;
        let c = if next_index.is_multiple_of(2) { a } else { b };
        let [t0, t1, t2] = self.terms;
        let next = ((c as u128 * t1 as u128 + t0 as u128) % m as u128) as u64;
        self.terms = [t1, t2, next];
        self.index += 1;
    }

    /// Inverse of [`SeqState::advance`]; the step is a bijection on states.
    pub fn retreat(&mut self, a: u64, b: u64, m: u64) {
        assert!(self.index > 0, "cannot step before index 0");
        let c = if (self.index + 2).is_multiple_of(2) {
            a
        } else {
            b
        };
        let [t1, t2, t3] = self.terms;
        let prev =
            ((t3 as u128 + m as u128 * m as u128 - c as u128 * t1 as u128) % m as u128) as u64;
        self.terms = [prev, t1, t2];
        self.index -= 1;
    }
}

/// First `count` terms, exact.
pub fn terms_symbolic(kind: SeqKind, count: usize) -> Vec<BiPoly> {
    let (a, b) = (BiPoly::a(), BiPoly::b());
    let mut out: Vec<BiPoly> = kind.initial_sym().into_iter().take(count).collect();
    for n in 3..count {
        let c = if n % 2 == 0 { &a } else { &b };
        let next = &(c * &out[n - 2]) + &out[n - 3];
        out.push(next);
    }
    out
}

pub fn padovan_sym(n: usize) -> BiPoly {
    terms_symbolic(SeqKind::Padovan, n + 1)
        .pop()
        .expect("n + 1 terms")
}

pub fn perrin_sym(n: usize) -> BiPoly {
    terms_symbolic(SeqKind::Perrin, n + 1)
        .pop()
        .expect("n + 1 terms")
}

/// First `count` terms at concrete integers `a`, `b`, exact.
pub fn terms_integer(kind: SeqKind, a: &BigInt, b: &BigInt, count: usize) -> Vec<BigInt> {
    let init = match kind {
        SeqKind::Padovan => [BigInt::from(1), BigInt::from(0), a.clone()],
        SeqKind::Perrin => [BigInt::from(3), BigInt::from(0), BigInt::from(2)],
    };
    let mut out: Vec<BigInt> = init.into_iter().take(count).collect();
    for n in 3..count {
        let c = if n % 2 == 0 { a } else { b };
        let next = c * &out[n - 2] + &out[n - 3];
        out.push(next);
    }
    out
}

/// First `count` terms modulo `m`, as raw residues. `a`, `b` reduced mod `m`.
pub fn terms_raw(kind: SeqKind, a: u64, b: u64, m: u64, count: usize) -> Vec<u64> {
    let init = kind.initial_mod(a).map(|t| t % m);
    let mut out: Vec<u64> = init.into_iter().take(count).collect();
    for n in 3..count {
        let c = if n % 2 == 0 { a } else { b };
        let next = ((c as u128 * out[n - 2] as u128 + out[n - 3] as u128) % m as u128) as u64;
        out.push(next);
    }
    out
}

pub fn terms_mod(
    kind: SeqKind,
    params: &SeqParams,
    count: usize,
) -> Result<Vec<ResidueClass>, SeqError> {
    let p = params.require_modulus()?;
    let raw = terms_raw(
        kind,
        params.a_mod()?.value(),
        params.b_mod()?.value(),
        p.get(),
        count,
    );
    Ok(raw.into_iter().map(|t| p.residue(t as i128)).collect())
}

pub fn padovan_mod(params: &SeqParams, count: usize) -> Result<Vec<ResidueClass>, SeqError> {
    terms_mod(SeqKind::Padovan, params, count)
}

pub fn perrin_mod(params: &SeqParams, count: usize) -> Result<Vec<ResidueClass>, SeqError> {
    terms_mod(SeqKind::Perrin, params, count)
}

/// Smallest even `L > 0` at which the state `(t_0, t_1, t_2)` recurs, for
/// any modulus `m >= 2`. Parity alignment matters because the step rule
/// depends on the parity of the index; when `a = b` the plain sequence
/// period may be an odd divisor-related value and `L` is its even multiple.
pub fn state_period(kind: SeqKind, a: u64, b: u64, m: u64) -> u64 {
    assert!(m >= 2, "modulus must be at least 2");
    let (a, b) = (a % m, b % m);
    let start = SeqState {
        terms: kind.initial_mod(a).map(|t| t % m),
        index: 0,
    };
    let mut state = start;
    loop {
        state.advance(a, b, m);
        state.advance(a, b, m);
        if state.terms == start.terms {
            return state.index;
        }
    }
}

/// Even-aligned period of the modular sequence selected by `params`.
pub fn seq_period(params: &SeqParams, kind: SeqKind) -> Result<u64, SeqError> {
    let p = params.require_modulus()?;
    Ok(state_period(
        kind,
        params.a_mod()?.value(),
        params.b_mod()?.value(),
        p.get(),
    ))
}

/// Cycle length found by hashing every visited even-index state; an
/// independent route to [`state_period`] used in tests.
pub fn state_period_by_hashing(kind: SeqKind, a: u64, b: u64, m: u64) -> u64 {
    let (a, b) = (a % m, b % m);
    let mut state = SeqState {
        terms: kind.initial_mod(a).map(|t| t % m),
        index: 0,
    };
    let mut seen = HashSet::new();
    loop {
        if !seen.insert(state.terms) {
            return state.index;
        }
        state.advance(a, b, m);
        state.advance(a, b, m);
    }
}

/// Power-series numerator `N(x) = sum_k n_k x^k` with polynomial
/// coefficients, paired with the fixed denominator
/// `1 - (a + b) x^2 + a b x^4 - x^6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesNumerator {
    coeffs: Vec<BiPoly>,
}

impl SeriesNumerator {
    pub fn new(mut coeffs: Vec<BiPoly>) -> Self {
        while coeffs.last().is_some_and(BiPoly::is_zero) {
            coeffs.pop();
        }
        SeriesNumerator { coeffs }
    }

    pub fn coefficients(&self) -> &[BiPoly] {
        &self.coeffs
    }

    fn coeff(&self, k: usize) -> BiPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }
}

fn numerator(src: &str) -> SeriesNumerator {
    src.parse().expect("built-in numerator parses")
}

/// Generating-function numerator of the Padovan sequence.
pub fn padovan_gf_numerator() -> SeriesNumerator {
    numerator("1 - b x^2 + x^3")
}

/// Numerators `[A, B, C, D]` of the Padovan quaternion generating function.
pub fn padovan_quaternion_numerators() -> [SeriesNumerator; 4] {
    [
        numerator("1 - b x^2 + x^3"),
        numerator("a x + x^2 - a b x^3 + x^5"),
        numerator("a + x - a b x^2 + x^4"),
        numerator("1 + a^2 x + (1 - a^2 b) x^3 + a x^5"),
    ]
}

/// Numerators `[A', B', C', D']` of the Perrin quaternion generating function.
pub fn perrin_quaternion_numerators() -> [SeriesNumerator; 4] {
    [
        numerator("3 + (2 - 3a - 3b) x^2 + 3 x^3 + b(3a - 2) x^4 + (2 - 3b) x^5"),
        numerator("2x + 3x^2 - 2b x^3 + (2 - 3b) x^4 + 3x^5"),
        numerator("2 + 3x - 2b x^2 + (2 - 3b) x^3 + 3x^4"),
        numerator("3 + 2a x + (2 - 3b) x^2 + (3 - 2ab) x^3 + 2x^5"),
    ]
}

/// First `count` coefficients of `N(x) / (1 - (a+b)x^2 + ab x^4 - x^6)`.
pub fn gf_expand_symbolic(num: &SeriesNumerator, count: usize) -> Vec<BiPoly> {
    let a_plus_b = &BiPoly::a() + &BiPoly::b();
    let ab = &BiPoly::a() * &BiPoly::b();
    let mut out: Vec<BiPoly> = Vec::with_capacity(count);
    for n in 0..count {
        let mut c = num.coeff(n);
        if n >= 2 {
            c = &c + &(&a_plus_b * &out[n - 2]);
        }
        if n >= 4 {
            c = &c - &(&ab * &out[n - 4]);
        }
        if n >= 6 {
            c = &c + &out[n - 6];
        }
        out.push(c);
    }
    out
}

/// The same expansion with `a`, `b` substituted and reduced modulo `p`.
pub fn gf_expand_mod(
    num: &SeriesNumerator,
    params: &SeqParams,
    count: usize,
) -> Result<Vec<ResidueClass>, SeqError> {
    let p = params.require_modulus()?;
    let (a, b) = (params.a_mod()?, params.b_mod()?);
    let mut out: Vec<ResidueClass> = Vec::with_capacity(count);
    for n in 0..count {
        let mut c = num.coeff(n).evaluate_mod(a, b, p);
        if n >= 2 {
            c = c + (a + b) * out[n - 2];
        }
        if n >= 4 {
            c = c - a * b * out[n - 4];
        }
        if n >= 6 {
            c = c + out[n - 6];
        }
        out.push(c);
    }
    Ok(out)
}

/// `(-1)^k sum_{i=0}^{floor(k/3)} (-1)^i C(k-2i, i) 2^(k-3i)`, reduced mod `p`,
/// with every binomial and power computed exactly first.
pub fn lemma_binom_sum(k: u64, p: PrimeModulus) -> ResidueClass {
    crate::modular::big_to_residue(&lemma_binom_sum_exact(k), p)
}

/// The integer value of the sum in [`lemma_binom_sum`] before reduction.
pub fn lemma_binom_sum_exact(k: u64) -> BigInt {
    let mut sum = BigInt::from(0);
    for i in 0..=k / 3 {
        let term = binomial(BigInt::from(k - 2 * i), BigInt::from(i))
            * num_traits::pow(BigInt::from(2), (k - 3 * i) as usize);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if k % 2 == 1 {
        sum = -sum;
    }
    sum
}

/// [`lemma_binom_sum_exact`] for every `k <= max_k`, sharing one table of
/// binomial coefficients.
pub fn lemma_binom_sums_exact(max_k: u64) -> Vec<BigInt> {
    let n_max = max_k as usize;
    let mut pascal: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![BigInt::from(1); n + 1];
        for i in 1..n {
            row[i] = &pascal[n - 1][i - 1] + &pascal[n - 1][i];
        }
        pascal.push(row);
    }
    (0..=n_max)
        .map(|k| {
            let mut sum = BigInt::from(0);
            for i in 0..=k / 3 {
                let term = &pascal[k - 2 * i][i] << (k - 3 * i);
                if i % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            if k % 2 == 1 {
                -sum
            } else {
                sum
            }
        })
        .collect()
}

/// Fibonacci closed form for `P_m (mod p)` under `a = p - 2`, `b = p`:
/// `(-1)^k (F_{k+3} - 1)` for `m = 2k`, `(-1)^(k-1) (F_{k+2} - 1)` for `m = 2k + 1`.
pub fn prop_fib_reduction(m: u64, p: PrimeModulus) -> ResidueClass {
    let k = m / 2;
    if m.is_multiple_of(2) {
        sign_power(k, p) * (fib_residue(k + 3, p) - p.one())
    } else {
        sign_power(k + 1, p) * (fib_residue(k + 2, p) - p.one())
    }
}

/// Checks `R_n(a,b) = 3 P_{n-3} + 2 P_{n-2}` symbolically, with the
/// Padovan terms taken at `(a, b)` for even `n` and at `(b, a)` for odd `n`.
pub fn padovan_perrin_relation_check(n: usize) -> Result<bool, SeqError> {
    if n < 3 {
        return Err(SeqError::IndexTooSmall {
            n: n as u64,
            min: 3,
        });
    }
    let pad = terms_symbolic(SeqKind::Padovan, n + 1);
    let per = perrin_sym(n);
    Ok(per == relation_rhs(&pad, n))
}

fn relation_rhs(pad: &[BiPoly], n: usize) -> BiPoly {
    let rhs = &pad[n - 3].scale(&BigInt::from(3)) + &pad[n - 2].scale(&BigInt::from(2));
    if n.is_multiple_of(2) {
        rhs
    } else {
        rhs.swap_ab()
    }
}

/// The same relation evaluated at concrete integers `(a, b)`.
pub fn padovan_perrin_relation_at(n: usize, a: i64, b: i64) -> Result<bool, SeqError> {
    if n < 3 {
        return Err(SeqError::IndexTooSmall {
            n: n as u64,
            min: 3,
        });
    }
    let pad = terms_symbolic(SeqKind::Padovan, n + 1);
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    Ok(perrin_sym(n).evaluate(&a, &b) == relation_rhs(&pad, n).evaluate(&a, &b))
}
