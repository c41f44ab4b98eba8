//! Fibonacci numbers modulo `m`, the entry point `z(p)` and the Pisano
//! period `pi(p)`.

use crate::modular::{mul_mod, PrimeModulus, ResidueClass};

/// `(F_n, F_{n+1}) mod m` by fast doubling.
pub fn fib_pair_mod(n: u64, m: u64) -> (u64, u64) {
    assert!(m >= 2, "modulus must be at least 2");
    let mut f = 0u64; // F_k
    let mut g = 1 % m; // F_{k+1}
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        // F_{2k} = F_k (2 F_{k+1} - F_k), F_{2k+1} = F_k^2 + F_{k+1}^2
        let two_g_minus_f = (2 * (g as u128) + m as u128 - f as u128) % m as u128;
        let even = mul_mod(f, two_g_minus_f as u64, m);
        let odd = ((mul_mod(f, f, m) as u128 + mul_mod(g, g, m) as u128) % m as u128) as u64;
        if (n >> bit) & 1 == 1 {
            f = odd;
            g = ((even as u128 + odd as u128) % m as u128) as u64;
        } else {
            f = even;
            g = odd;
        }
    }
    (f, g)
}

/// `F_n mod m`.
pub fn fib_mod(n: u64, m: u64) -> u64 {
    fib_pair_mod(n, m).0
}

pub fn fib_residue(n: u64, p: PrimeModulus) -> ResidueClass {
    p.residue(fib_mod(n, p.get()) as i128)
}

/// Smallest `z > 0` with `p | F_z`. Always at most `p + 1`.
pub fn entry_point(p: PrimeModulus) -> u64 {
    let m = p.get();
    let (mut f, mut g) = (1 % m, 1 % m);
    let mut z = 1;
    while f != 0 {
        (f, g) = (g, (f + g) % m);
        z += 1;
    }
    z
}

/// Pisano period of a prime, found by testing `z`, `2z`, `4z`.
pub fn pisano_period(p: PrimeModulus) -> u64 {
    let z = entry_point(p);
    let m = p.get();
    [z, 2 * z, 4 * z]
        .into_iter()
        .find(|&k| fib_pair_mod(k, m) == (0, 1))
        .expect("pi(p) is z, 2z or 4z")
}

/// Pisano period of any modulus `m >= 2` by walking the cycle.
pub fn pisano_period_by_scan(m: u64) -> u64 {
    assert!(m >= 2, "modulus must be at least 2");
    let (mut f, mut g) = (0u64, 1u64);
    let mut k = 0u64;
    loop {
        (f, g) = (g, ((f as u128 + g as u128) % m as u128) as u64);
        k += 1;
        if f == 0 && g == 1 {
            return k;
        }
    }
}

/// Which of the three `pi / z` ratios a prime exhibits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodRelation {
    /// `z = 2 (mod 4)`, `pi = z`
    Equal,
    /// `z = 0 (mod 4)`, `pi = 2z`
    Double,
    /// `z` odd, `pi = 4z`
    Quadruple,
}

impl PeriodRelation {
    pub fn predicted_for(entry_point: u64) -> Self {
        match entry_point % 4 {
            2 => PeriodRelation::Equal,
            0 => PeriodRelation::Double,
            _ => PeriodRelation::Quadruple,
        }
    }

    pub fn ratio(self) -> u64 {
        match self {
            PeriodRelation::Equal => 1,
            PeriodRelation::Double => 2,
            PeriodRelation::Quadruple => 4,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            PeriodRelation::Equal => "z = 2 (mod 4), pi = z",
            PeriodRelation::Double => "z = 0 (mod 4), pi = 2z",
            PeriodRelation::Quadruple => "z odd, pi = 4z",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FibProfile {
    pub p: PrimeModulus,
    pub entry_point: u64,
    pub pisano_period: u64,
}

impl FibProfile {
    pub fn new(p: PrimeModulus) -> Self {
        FibProfile {
            p,
            entry_point: entry_point(p),
            pisano_period: pisano_period(p),
        }
    }

    /// The relation observed between `pi` and `z`, if it is one of the three
    /// the theory allows.
    pub fn relation(&self) -> Option<PeriodRelation> {
        let predicted = PeriodRelation::predicted_for(self.entry_point);
        (self.pisano_period == predicted.ratio() * self.entry_point).then_some(predicted)
    }
}

/// All `i` in `[0, pi(p))` with `F_i = c (mod p)`, ascending.
pub fn fib_residue_indices(p: PrimeModulus, c: ResidueClass) -> Vec<u64> {
    assert_eq!(c.modulus(), p, "target residue uses a different modulus");
    let m = p.get();
    let period = pisano_period(p);
    let (mut f, mut g) = (0u64, 1u64);
    let mut out = Vec::new();
    for i in 0..period {
        if f == c.value() {
            out.push(i);
        }
        (f, g) = (g, (f + g) % m);
    }
    out
}
