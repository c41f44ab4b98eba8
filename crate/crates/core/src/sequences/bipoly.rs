use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::modular::{big_to_residue, PrimeModulus, ResidueClass};

/// Exponent pair `(i, j)` of the monomial `a^i b^j`.
pub type Monomial = (u32, u32);

/// A polynomial in the formal parameters `a` and `b` with exact integer
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, a_exp: u32, b_exp: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a_exp, b_exp), c);
        }
        BiPoly { terms }
    }

    pub fn a() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn b() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coefficient(&self, a_exp: u32, b_exp: u32) -> BigInt {
        self.terms
            .get(&(a_exp, b_exp))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub(crate) fn from_terms(iter: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut out = BiPoly::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&m, c)| (m, c * k)).collect(),
        }
    }

    /// Exchanges the roles of `a` and `b`.
    pub fn swap_ab(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (&(i, j), c)| {
            acc + c
                * num_traits::pow(a.clone(), i as usize)
                * num_traits::pow(b.clone(), j as usize)
        })
    }

    pub fn evaluate_mod(&self, a: ResidueClass, b: ResidueClass, p: PrimeModulus) -> ResidueClass {
        self.terms.iter().fold(p.zero(), |acc, (&(i, j), c)| {
            acc + big_to_residue(c, p) * a.pow(i as u64) * b.pow(j as u64)
        })
    }

    /// Monomials in canonical order: ascending total degree, then descending
    /// power of `a`.
    fn canonical_order(&self) -> Vec<(Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|&((i, j), _)| (i + j, std::cmp::Reverse(i)));
        v
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, ((i, j), c)) in self.canonical_order().into_iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let has_vars = i + j > 0;
            if !has_vars || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for (name, e) in [('a', i), ('b', j)] {
                match e {
                    0 => {}
                    1 => write!(f, "{name}")?,
                    _ => write!(f, "{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, -c);
        }
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        BiPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly_strategy() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(((0u32..5, 0u32..5), -20i64..20), 0..8)
            .prop_map(|v| BiPoly::from_terms(v.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
    }

    #[test]
    fn renders_canonically() {
        let p = BiPoly::monomial(1, 3, 0)
            + BiPoly::monomial(1, 0, 3)
            + BiPoly::constant(1)
            + BiPoly::monomial(1, 1, 2)
            + BiPoly::monomial(1, 2, 1);
        assert_eq!(p.to_string(), "1 + a^3 + a^2b + ab^2 + b^3");
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!((-BiPoly::b() + BiPoly::constant(2)).to_string(), "2 - b");
        assert_eq!(BiPoly::monomial(-3, 1, 1).to_string(), "-3ab");
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = BiPoly::a() + BiPoly::b();
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q, BiPoly::zero());
    }

    #[test]
    fn large_coefficients_stay_exact() {
        let mut p = BiPoly::constant(3);
        for _ in 0..200 {
            p = &p * &p.clone();
            if p.coefficient(0, 0).bits() > 4000 {
                break;
            }
        }
        assert!(p.coefficient(0, 0).bits() > 4000);
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_distributes(x in poly_strategy(), y in poly_strategy(), z in poly_strategy()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert!((&x * &y).terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn evaluation_is_a_ring_map(x in poly_strategy(), y in poly_strategy(), a in -9i64..9, b in -9i64..9) {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!((&x * &y).evaluate(&a, &b), x.evaluate(&a, &b) * y.evaluate(&a, &b));
            prop_assert_eq!(x.swap_ab().evaluate(&a, &b), x.evaluate(&b, &a));
        }
    }
}
