//! The quaternion algebra `Q(s, t)` over `Z_p`: basis `1, i, j, k` with
//! `i^2 = s`, `j^2 = t`, `ij = -ji = k`. Also the Padovan and Perrin
//! quaternion sequences built on it.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use thiserror::Error;

use crate::modular::{PrimeModulus, ResidueClass};
use crate::sequences::{terms_mod, terms_symbolic, BiPoly, SeqError, SeqKind, SeqParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuatError {
    #[error("elements belong to different algebras ({left} vs {right})")]
    AlgebraMismatch {
        left: AlgebraParams,
        right: AlgebraParams,
    },
    #[error("element has norm 0 and is not invertible")]
    NotInvertible,
    #[error("algebra parameter {name} is 0 mod {p}")]
    DegenerateParameter { name: char, p: u64 },
    #[error(transparent)]
    Sequence(#[from] SeqError),
}

/// Which of the two quaternion sequence families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Padovan quaternions `QP_n`.
    Qp,
    /// Perrin quaternions `QR_n`.
    Qr,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Qp => "QP",
            Family::Qr => "QR",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    s: ResidueClass,
    t: ResidueClass,
    p: PrimeModulus,
}

impl AlgebraParams {
    pub fn new(s: i128, t: i128, p: PrimeModulus) -> Result<Self, QuatError> {
        let (s, t) = (p.residue(s), p.residue(t));
        for (name, v) in [('s', s), ('t', t)] {
            if v.is_zero() {
                return Err(QuatError::DegenerateParameter { name, p: p.get() });
            }
        }
        Ok(AlgebraParams { s, t, p })
    }

    /// `Q(-1, -1)` over `Z_p`.
    pub fn standard(p: PrimeModulus) -> Self {
        AlgebraParams {
            s: p.residue(-1),
            t: p.residue(-1),
            p,
        }
    }

    pub fn s(&self) -> ResidueClass {
        self.s
    }

    pub fn t(&self) -> ResidueClass {
        self.t
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q({}, {}) mod {}",
            self.s.signed(),
            self.t.signed(),
            self.p
        )
    }
}

/// One entry of the basis product table: `e_r e_c = sign * s^sp * t^tp * e_target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisProduct {
    pub sign: i8,
    pub s_pow: u8,
    pub t_pow: u8,
    pub target: usize,
}

const fn bp(sign: i8, s_pow: u8, t_pow: u8, target: usize) -> BasisProduct {
    BasisProduct {
        sign,
        s_pow,
        t_pow,
        target,
    }
}

/// Products of basis elements, indexed `[row][column]` over `1, i, j, k`.
pub const BASIS_TABLE: [[BasisProduct; 4]; 4] = [
    [
        bp(1, 0, 0, 0),
        bp(1, 0, 0, 1),
        bp(1, 0, 0, 2),
        bp(1, 0, 0, 3),
    ],
    [
        bp(1, 0, 0, 1),
        bp(1, 1, 0, 0),
        bp(1, 0, 0, 3),
        bp(1, 1, 0, 2),
    ],
    [
        bp(1, 0, 0, 2),
        bp(-1, 0, 0, 3),
        bp(1, 0, 1, 0),
        bp(-1, 0, 1, 1),
    ],
    [
        bp(1, 0, 0, 3),
        bp(-1, 1, 0, 2),
        bp(1, 0, 1, 1),
        bp(-1, 1, 1, 0),
    ],
];

fn table_product<T>(u: &[T; 4], v: &[T; 4], s: &T, t: &T, zero: T) -> [T; 4]
where
    T: Clone + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    let mut out = [zero.clone(), zero.clone(), zero.clone(), zero];
    for (r, ur) in u.iter().enumerate() {
        for (c, vc) in v.iter().enumerate() {
            let e = BASIS_TABLE[r][c];
            let mut term = ur.clone() * vc.clone();
            for _ in 0..e.s_pow {
                term = term * s.clone();
            }
            for _ in 0..e.t_pow {
                term = term * t.clone();
            }
            if e.sign < 0 {
                term = -term;
            }
            out[e.target] = out[e.target].clone() + term;
        }
    }
    out
}

/// `x + y i + z j + w k` with residue coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuatElem {
    coeffs: [ResidueClass; 4],
    algebra: AlgebraParams,
}

impl QuatElem {
    pub fn new(x: i128, y: i128, z: i128, w: i128, algebra: AlgebraParams) -> Self {
        let p = algebra.p;
        QuatElem {
            coeffs: [x, y, z, w].map(|c| p.residue(c)),
            algebra,
        }
    }

    /// Panics if a coefficient uses a different modulus from the algebra.
    pub fn from_residues(coeffs: [ResidueClass; 4], algebra: AlgebraParams) -> Self {
        assert!(
            coeffs.iter().all(|c| c.modulus() == algebra.p),
            "coefficient modulus differs from the algebra's"
        );
        QuatElem { coeffs, algebra }
    }

    pub fn one(algebra: AlgebraParams) -> Self {
        Self::new(1, 0, 0, 0, algebra)
    }

    pub fn zero(algebra: AlgebraParams) -> Self {
        Self::new(0, 0, 0, 0, algebra)
    }

    /// The basis element `e_index` (0 = 1, 1 = i, 2 = j, 3 = k).
    pub fn basis(index: usize, algebra: AlgebraParams) -> Self {
        let mut c = [0i128; 4];
        c[index] = 1;
        Self::new(c[0], c[1], c[2], c[3], algebra)
    }

    pub fn coeffs(&self) -> [ResidueClass; 4] {
        self.coeffs
    }

    pub fn values(&self) -> [u64; 4] {
        self.coeffs.map(ResidueClass::value)
    }

    pub fn algebra(&self) -> AlgebraParams {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, rhs: &QuatElem) -> Result<QuatElem, QuatError> {
        self.check_same(rhs)?;
        let a = self.algebra;
        Ok(QuatElem {
            coeffs: table_product(&self.coeffs, &rhs.coeffs, &a.s, &a.t, a.p.zero()),
            algebra: a,
        })
    }

    pub fn add(&self, rhs: &QuatElem) -> Result<QuatElem, QuatError> {
        self.check_same(rhs)?;
        let mut coeffs = self.coeffs;
        for (c, r) in coeffs.iter_mut().zip(rhs.coeffs) {
            *c = *c + r;
        }
        Ok(QuatElem {
            coeffs,
            algebra: self.algebra,
        })
    }

    pub fn scale(&self, k: ResidueClass) -> QuatElem {
        QuatElem {
            coeffs: self.coeffs.map(|c| c * k),
            algebra: self.algebra,
        }
    }

    fn check_same(&self, rhs: &QuatElem) -> Result<(), QuatError> {
        if self.algebra == rhs.algebra {
            Ok(())
        } else {
            Err(QuatError::AlgebraMismatch {
                left: self.algebra,
                right: rhs.algebra,
            })
        }
    }

    /// `x^2 - s y^2 - t z^2 + s t w^2`.
    pub fn norm(&self) -> ResidueClass {
        let [x, y, z, w] = self.coeffs;
        let (s, t) = (self.algebra.s, self.algebra.t);
        x * x - s * y * y - t * z * z + s * t * w * w
    }

    pub fn conj(&self) -> QuatElem {
        let [x, y, z, w] = self.coeffs;
        QuatElem {
            coeffs: [x, -y, -z, -w],
            algebra: self.algebra,
        }
    }

    pub fn is_zero_divisor(&self) -> bool {
        !self.is_zero() && self.norm().is_zero()
    }

    pub fn inverse(&self) -> Result<QuatElem, QuatError> {
        let n = self
            .norm()
            .inverse()
            .map_err(|_| QuatError::NotInvertible)?;
        Ok(self.conj().scale(n))
    }
}

impl fmt::Display for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, w] = self.values();
        write!(f, "{x} + {y}i + {z}j + {w}k")
    }
}

pub fn quat_mul(u: &QuatElem, v: &QuatElem) -> Result<QuatElem, QuatError> {
    u.mul(v)
}

pub fn quat_norm(u: &QuatElem) -> ResidueClass {
    u.norm()
}

pub fn quat_conj(u: &QuatElem) -> QuatElem {
    u.conj()
}

pub fn is_zero_divisor(u: &QuatElem) -> bool {
    u.is_zero_divisor()
}

pub fn quat_inverse(u: &QuatElem) -> Result<QuatElem, QuatError> {
    u.inverse()
}

/// A quaternion whose coefficients are polynomials in `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymQuat {
    pub coeffs: [BiPoly; 4],
}

impl SymQuat {
    pub fn new(coeffs: [BiPoly; 4]) -> Self {
        SymQuat { coeffs }
    }

    pub fn scale(&self, k: &BigInt) -> SymQuat {
        SymQuat {
            coeffs: self.coeffs.clone().map(|c| c.scale(k)),
        }
    }

    pub fn mul_poly(&self, k: &BiPoly) -> SymQuat {
        SymQuat {
            coeffs: self.coeffs.clone().map(|c| &c * k),
        }
    }

    /// Product in `Q(-1, -1)` with polynomial coefficients.
    pub fn mul_standard(&self, rhs: &SymQuat) -> SymQuat {
        let minus_one = BiPoly::constant(-1);
        SymQuat {
            coeffs: table_product(
                &self.coeffs,
                &rhs.coeffs,
                &minus_one,
                &minus_one,
                BiPoly::zero(),
            ),
        }
    }

    /// Norm in `Q(-1, -1)`: the sum of the squared coefficients.
    pub fn norm_standard(&self) -> BiPoly {
        self.coeffs
            .iter()
            .fold(BiPoly::zero(), |acc, c| &acc + &(c * c))
    }

    pub fn swap_ab(&self) -> SymQuat {
        SymQuat {
            coeffs: self.coeffs.clone().map(|c| c.swap_ab()),
        }
    }

    pub fn evaluate_mod(
        &self,
        params: &SeqParams,
        algebra: AlgebraParams,
    ) -> Result<QuatElem, QuatError> {
        let (a, b) = (params.a_mod()?, params.b_mod()?);
        let p = algebra.modulus();
        Ok(QuatElem::from_residues(
            self.coeffs.clone().map(|c| c.evaluate_mod(a, b, p)),
            algebra,
        ))
    }
}

impl Add for &SymQuat {
    type Output = SymQuat;
    fn add(self, rhs: &SymQuat) -> SymQuat {
        let mut coeffs = self.coeffs.clone();
        for (c, r) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c = &*c + r;
        }
        SymQuat { coeffs }
    }
}

impl fmt::Display for SymQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, w] = &self.coeffs;
        write!(f, "({x}) + ({y})i + ({z})j + ({w})k")
    }
}

/// `QP_0 .. QP_{count-1}` exactly.
pub fn qp_symbolic_terms(count: usize) -> Vec<SymQuat> {
    let p = terms_symbolic(SeqKind::Padovan, count + 3);
    (0..count)
        .map(|n| SymQuat::new([0, 1, 2, 3].map(|d| p[n + d].clone())))
        .collect()
}

/// `QR_0 .. QR_{count-1}` exactly. Component `d` of `QR_n` is `R_{n+d}`
/// taken at `(a, b)` when `n + d` is even and at `(b, a)` when it is odd.
pub fn qr_symbolic_terms(count: usize) -> Vec<SymQuat> {
    let r = terms_symbolic(SeqKind::Perrin, count + 3);
    let r_swapped: Vec<BiPoly> = r.iter().map(BiPoly::swap_ab).collect();
    (0..count)
        .map(|n| {
            SymQuat::new([0, 1, 2, 3].map(|d| {
                let m = n + d;
                if m % 2 == 0 {
                    r[m].clone()
                } else {
                    r_swapped[m].clone()
                }
            }))
        })
        .collect()
}

pub fn qp_symbolic(n: usize) -> SymQuat {
    qp_symbolic_terms(n + 1).pop().expect("n + 1 terms")
}

pub fn qr_symbolic(n: usize) -> SymQuat {
    qr_symbolic_terms(n + 1).pop().expect("n + 1 terms")
}

/// `QP_0 .. QP_{count-1}` in `Q(-1, -1)` over the params' modulus.
pub fn qp_sequence(params: &SeqParams, count: usize) -> Result<Vec<QuatElem>, QuatError> {
    let p = params.modulus().ok_or(SeqError::MissingModulus)?;
    let algebra = AlgebraParams::standard(p);
    let t = terms_mod(SeqKind::Padovan, params, count + 3)?;
    Ok((0..count)
        .map(|n| QuatElem::from_residues([t[n], t[n + 1], t[n + 2], t[n + 3]], algebra))
        .collect())
}

/// `QR_0 .. QR_{count-1}`; the `(a, b)` and `(b, a)` sequences are generated
/// separately and each component picks the one its index parity calls for.
pub fn qr_sequence(params: &SeqParams, count: usize) -> Result<Vec<QuatElem>, QuatError> {
    let p = params.modulus().ok_or(SeqError::MissingModulus)?;
    let algebra = AlgebraParams::standard(p);
    let direct = terms_mod(SeqKind::Perrin, params, count + 3)?;
    let swapped = terms_mod(SeqKind::Perrin, &params.swapped(), count + 3)?;
    let pick = |m: usize| {
        if m.is_multiple_of(2) {
            direct[m]
        } else {
            swapped[m]
        }
    };
    Ok((0..count)
        .map(|n| QuatElem::from_residues([pick(n), pick(n + 1), pick(n + 2), pick(n + 3)], algebra))
        .collect())
}

pub fn quaternion_sequence(
    family: Family,
    params: &SeqParams,
    count: usize,
) -> Result<Vec<QuatElem>, QuatError> {
    match family {
        Family::Qp => qp_sequence(params, count),
        Family::Qr => qr_sequence(params, count),
    }
}

pub fn qp_quaternion(n: usize, params: &SeqParams) -> Result<QuatElem, QuatError> {
    Ok(qp_sequence(params, n + 1)?.pop().expect("n + 1 terms"))
}

pub fn qr_quaternion(n: usize, params: &SeqParams) -> Result<QuatElem, QuatError> {
    Ok(qr_sequence(params, n + 1)?.pop().expect("n + 1 terms"))
}
