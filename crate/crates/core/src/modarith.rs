//! Modular integer arithmetic and the elementary counting functions.
//!
//! Every modulus is capped at [`MAX_MODULUS`] so that the product of two
//! reduced residues fits in a `u64` and every operation can reduce eagerly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate (2^31).
pub const MAX_MODULUS: u64 = 1 << 31;

/// A residue class stored by its least nonnegative representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` modulo `modulus`.
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Residue {
            value: value % modulus,
            modulus,
        })
    }

    /// Reduces a possibly negative integer.
    pub fn from_i64(value: i64, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        let m = modulus as i64;
        Ok(Residue {
            value: value.rem_euclid(m) as u64,
            modulus,
        })
    }

    pub(crate) fn new_unchecked(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus >= 2 && value < modulus);
        Residue { value, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1 % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            exp >>= 1;
        }
        Residue::new_unchecked(acc, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

fn same_modulus(a: Residue, b: Residue) -> u64 {
    assert_eq!(
        a.modulus, b.modulus,
        "residue arithmetic across different moduli"
    );
    a.modulus
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        let m = same_modulus(self, rhs);
        Residue::new_unchecked((self.value + rhs.value) % m, m)
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        let m = same_modulus(self, rhs);
        Residue::new_unchecked((self.value + m - rhs.value) % m, m)
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        let m = same_modulus(self, rhs);
        Residue::new_unchecked(self.value * rhs.value % m, m)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::new_unchecked((self.modulus - self.value) % self.modulus, self.modulus)
    }
}

/// The multiplicative group of units modulo `modulus`, members ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGroup {
    modulus: u64,
    members: Vec<u64>,
}

impl UnitGroup {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: u64) -> bool {
        self.members.binary_search(&u).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Residue> + '_ {
        self.members
            .iter()
            .map(move |&u| Residue::new_unchecked(u, self.modulus))
    }
}

pub(crate) fn check_modulus(modulus: u64) -> Result<()> {
    if modulus < 2 {
        return Err(Error::InvalidInput(format!(
            "modulus must be at least 2, got {modulus}"
        )));
    }
    if modulus > MAX_MODULUS {
        return Err(Error::InvalidInput(format!(
            "modulus {modulus} exceeds 2^31"
        )));
    }
    Ok(())
}

/// Greatest common divisor. `gcd(0, 0)` is 0.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization by trial division, as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Euler's totient, computed from the factorization of `n`.
pub fn totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("totient of 0 is undefined".into()));
    }
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// All residues in `[1, n)` coprime to `n`.
pub fn units(n: u64) -> Result<UnitGroup> {
    check_modulus(n)?;
    let members = (1..n).filter(|&u| gcd(u, n) == 1).collect();
    Ok(UnitGroup {
        modulus: n,
        members,
    })
}

/// Multiplicative inverse by the extended Euclidean algorithm.
pub fn inv_mod(u: Residue) -> Result<Residue> {
    let m = u.modulus as i64;
    let (mut r0, mut r1) = (m, u.value as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible {
            value: u.value,
            modulus: u.modulus,
        });
    }
    Residue::from_i64(t0, u.modulus)
}

/// Number of `x` in `[1, p^alpha)` with both `x` and `x - 1` coprime to `p^alpha`,
/// which is `p^alpha - 2 p^(alpha-1)`.
pub fn count_double_units(p: u64, alpha: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if alpha == 0 {
        return Err(Error::InvalidInput("exponent must be at least 1".into()));
    }
    let low = p
        .checked_pow(alpha - 1)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{alpha} overflows")))?;
    let full = low
        .checked_mul(p)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{alpha} overflows")))?;
    Ok(full - 2 * low)
}

/// Ascending divisors of `n` (n ≥ 1).
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
