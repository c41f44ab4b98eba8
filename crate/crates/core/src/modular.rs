//! Exact arithmetic modulo an odd prime.
//!
//! Everything here works on 64-bit moduli with 128-bit intermediates, so no
//! operation can overflow for any prime that fits in a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be an odd prime, got {0}")]
    EvenModulus(u64),
    #[error("0 has no inverse modulo {0}")]
    ZeroNotInvertible(u64),
    #[error("leading coefficient {c2} vanishes modulo {p}")]
    LeadingCoefficientNotInvertible { c2: i64, p: u64 },
}

/// An odd prime, checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p == 2 {
            return Err(ArithError::EvenModulus(p));
        }
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(PrimeModulus(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn reduce(self, n: i128) -> u64 {
        n.rem_euclid(self.0 as i128) as u64
    }

    pub fn reduce_big(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.0))
            .to_u64()
            .expect("residue fits in u64")
    }

    pub fn residue(self, n: i128) -> ResidueClass {
        ResidueClass {
            value: self.reduce(n),
            modulus: self,
        }
    }

    pub fn zero(self) -> ResidueClass {
        ResidueClass {
            value: 0,
            modulus: self,
        }
    }

    pub fn one(self) -> ResidueClass {
        ResidueClass {
            value: 1,
            modulus: self,
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue together with its modulus.
///
/// The arithmetic operators panic when the two operands carry different
/// moduli; values built from the same [`PrimeModulus`] never do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    value: u64,
    modulus: PrimeModulus,
}

impl ResidueClass {
    pub fn new(n: i128, modulus: PrimeModulus) -> Self {
        modulus.residue(n)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, exp: u64) -> Self {
        mod_pow(self, exp)
    }

    pub fn inverse(self) -> Result<Self, ArithError> {
        mod_inverse(self)
    }

    /// The representative in `(-p/2, p/2]`.
    pub fn signed(self) -> i128 {
        let p = self.modulus.0 as i128;
        let v = self.value as i128;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }

    fn same_modulus(self, other: Self) -> u64 {
        assert_eq!(
            self.modulus, other.modulus,
            "residue arithmetic across different moduli"
        );
        self.modulus.0
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for ResidueClass {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let p = self.same_modulus(rhs);
        let s = (self.value as u128 + rhs.value as u128) % p as u128;
        ResidueClass {
            value: s as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for ResidueClass {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ResidueClass {
    type Output = Self;
    fn neg(self) -> Self {
        let value = if self.value == 0 {
            0
        } else {
            self.modulus.0 - self.value
        };
        ResidueClass { value, ..self }
    }
}

impl Mul for ResidueClass {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = self.same_modulus(rhs);
        ResidueClass {
            value: mul_mod(self.value, rhs.value, p),
            modulus: self.modulus,
        }
    }
}

#[inline]
pub(crate) fn mul_mod(x: u64, y: u64, m: u64) -> u64 {
    ((x as u128 * y as u128) % m as u128) as u64
}

fn pow_mod_raw(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for every 64-bit input.
///
/// Strong-pseudoprime test to the first twelve prime bases, which has no
/// composite false positives below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &base in &BASES {
        let mut x = pow_mod_raw(base, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All pairs `(p - 2, p)` of primes with `5 <= p <= bound`, ascending.
pub fn twin_primes_upto(bound: u64) -> Vec<(u64, u64)> {
    if bound < 5 {
        return Vec::new();
    }
    let limit = usize::try_from(bound).expect("sieve bound fits in memory");
    let mut composite = vec![false; limit + 1];
    composite[0] = true;
    composite[1] = true;
    let mut i = 2;
    while i * i <= limit {
        if !composite[i] {
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (5..=limit)
        .filter(|&p| !composite[p] && !composite[p - 2])
        .map(|p| (p as u64 - 2, p as u64))
        .collect()
}

pub fn mod_pow(base: ResidueClass, exp: u64) -> ResidueClass {
    ResidueClass {
        value: pow_mod_raw(base.value, exp, base.modulus.0),
        modulus: base.modulus,
    }
}

/// Inverse by the extended Euclidean algorithm.
pub fn mod_inverse(x: ResidueClass) -> Result<ResidueClass, ArithError> {
    let p = x.modulus.0;
    if x.value == 0 {
        return Err(ArithError::ZeroNotInvertible(p));
    }
    let (mut r0, mut r1) = (p as i128, x.value as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(x.modulus.residue(t0))
}

/// Legendre symbol by Euler's criterion. `a` is reduced first, so negative
/// arguments such as `-8 * 181` are accepted directly.
pub fn legendre(a: i128, p: PrimeModulus) -> i8 {
    let r = p.reduce(a);
    if r == 0 {
        return 0;
    }
    match pow_mod_raw(r, (p.0 - 1) / 2, p.0) {
        1 => 1,
        _ => -1,
    }
}

/// Jacobi symbol `(a / n)` for odd `n >= 3`, computed by reciprocity without
/// factoring `n`. Returns 0 whenever `gcd(a, n) > 1`.
///
/// Panics if `n` is even or smaller than 3.
pub fn jacobi(a: i128, n: u64) -> i8 {
    assert!(
        n >= 3 && n % 2 == 1,
        "jacobi needs an odd modulus >= 3, got {n}"
    );
    let mut a = a.rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Square roots `{r, p - r}` of a residue, smaller root first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootPair {
    pub low: ResidueClass,
    pub high: ResidueClass,
}

impl RootPair {
    fn from_root(r: ResidueClass) -> Self {
        let other = -r;
        if r.value <= other.value {
            RootPair {
                low: r,
                high: other,
            }
        } else {
            RootPair {
                low: other,
                high: r,
            }
        }
    }

    pub fn contains(&self, x: ResidueClass) -> bool {
        self.low == x || self.high == x
    }
}

/// Tonelli-Shanks square root; `None` exactly when `a` is a non-residue.
pub fn sqrt_mod(a: ResidueClass) -> Option<RootPair> {
    let p = a.modulus;
    let m = p.0;
    if a.value == 0 {
        return Some(RootPair { low: a, high: a });
    }
    if legendre(a.value as i128, p) != 1 {
        return None;
    }
    if m % 4 == 3 {
        return Some(RootPair::from_root(a.pow((m + 1) / 4)));
    }

    let s = (m - 1).trailing_zeros();
    let q = (m - 1) >> s;
    let nonresidue = (2..m)
        .find(|&c| legendre(c as i128, p) == -1)
        .expect("every odd prime has a non-residue");

    let mut c = pow_mod_raw(nonresidue, q, m);
    let mut t = pow_mod_raw(a.value, q, m);
    let mut r = pow_mod_raw(a.value, q.div_ceil(2), m);
    let mut order_bound = s;
    while t != 1 {
        let mut i = 0;
        let mut probe = t;
        while probe != 1 {
            probe = mul_mod(probe, probe, m);
            i += 1;
        }
        let b = pow_mod_raw(c, 1u64 << (order_bound - i - 1), m);
        r = mul_mod(r, b, m);
        c = mul_mod(b, b, m);
        t = mul_mod(t, c, m);
        order_bound = i;
    }
    Some(RootPair::from_root(p.residue(r as i128)))
}

/// `c2 * x^2 + c1 * x + c0 == 0 (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadCongruence {
    pub c2: i64,
    pub c1: i64,
    pub c0: i64,
    pub modulus: PrimeModulus,
    discriminant: BigInt,
    discriminant_mod: ResidueClass,
}

impl QuadCongruence {
    pub fn new(c2: i64, c1: i64, c0: i64, modulus: PrimeModulus) -> Self {
        let discriminant = BigInt::from(c1) * c1 - BigInt::from(4) * c2 * c0;
        let discriminant_mod = ResidueClass {
            value: modulus.reduce_big(&discriminant),
            modulus,
        };
        QuadCongruence {
            c2,
            c1,
            c0,
            modulus,
            discriminant,
            discriminant_mod,
        }
    }

    /// `c1^2 - 4 c2 c0` over the integers.
    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn discriminant_mod(&self) -> ResidueClass {
        self.discriminant_mod
    }

    pub fn evaluate(&self, x: ResidueClass) -> ResidueClass {
        let p = self.modulus;
        let c2 = p.residue(self.c2 as i128);
        let c1 = p.residue(self.c1 as i128);
        let c0 = p.residue(self.c0 as i128);
        c2 * x * x + c1 * x + c0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solvability {
    TwoRoots,
    DoubleRoot,
    NoRoots,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSolution {
    /// Distinct roots, ascending.
    pub roots: Vec<ResidueClass>,
    pub solvability: Solvability,
    /// Legendre symbol of the discriminant.
    pub discriminant_symbol: i8,
    /// The square roots of the discriminant used to complete the square,
    /// i.e. the admissible values of `2 c2 x + c1`.
    pub completed_square_roots: Option<RootPair>,
}

/// Solves by completing the square, `(2 c2 x + c1)^2 == discriminant`.
pub fn solve_quadratic(q: &QuadCongruence) -> Result<QuadSolution, ArithError> {
    let p = q.modulus;
    let c2 = p.residue(q.c2 as i128);
    if c2.is_zero() {
        return Err(ArithError::LeadingCoefficientNotInvertible { c2: q.c2, p: p.0 });
    }
    let c1 = p.residue(q.c1 as i128);
    let two_c2_inv = (p.residue(2) * c2).inverse()?;
    let delta = q.discriminant_mod;
    let symbol = legendre(delta.value as i128, p);

    let roots_of_square = sqrt_mod(delta);
    let mut roots: Vec<ResidueClass> = match roots_of_square {
        None => Vec::new(),
        Some(pair) => [pair.low, pair.high]
            .into_iter()
            .map(|y| (y - c1) * two_c2_inv)
            .collect(),
    };
    roots.sort_by_key(|r| r.value);
    roots.dedup();

    let solvability = match roots.len() {
        0 => Solvability::NoRoots,
        1 => Solvability::DoubleRoot,
        _ => Solvability::TwoRoots,
    };
    Ok(QuadSolution {
        roots,
        solvability,
        discriminant_symbol: symbol,
        completed_square_roots: roots_of_square,
    })
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Sign helper: `(-1)^e` as a residue.
pub(crate) fn sign_power(e: u64, p: PrimeModulus) -> ResidueClass {
    if e.is_multiple_of(2) {
        p.one()
    } else {
        -p.one()
    }
}

pub fn big_to_residue(n: &BigInt, p: PrimeModulus) -> ResidueClass {
    ResidueClass {
        value: p.reduce_big(n),
        modulus: p,
    }
}
