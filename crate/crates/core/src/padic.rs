//! Base-`p` digit arithmetic.
//!
//! Everything here is digit-wise on machine words: expansions, prefix
//! truncation, Lucas binomials, the carries of `m + g` and the digit pairs
//! of `C(m + 2g, g)`. Digits are little-endian, so index `u` always holds the
//! coefficient of `p^u`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trial division; inputs here are small primes.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p as u64))
    }
}

/// Little-endian base-`p` expansion of a natural number.
///
/// Zero is the empty sequence; every other value has a non-zero top digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitVector {
    digits: Vec<u32>,
    p: u32,
}

impl DigitVector {
    pub fn new(a: u64, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::expand(a, p))
    }

    fn expand(mut a: u64, p: u32) -> Self {
        let mut digits = Vec::new();
        while a > 0 {
            digits.push((a % p as u64) as u32);
            a /= p as u64;
        }
        DigitVector { digits, p }
    }

    /// Rebuilds a vector from raw digits, dropping trailing zeros.
    pub fn from_digits(mut digits: Vec<u32>, p: u32) -> Result<Self> {
        check_prime(p)?;
        if let Some(&d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::Malformed(format!("digit {d} out of range for p = {p}")));
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(DigitVector { digits, p })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit `u`, zero past the end.
    pub fn digit(&self, u: usize) -> u32 {
        self.digits.get(u).copied().unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d as u64)
    }
}

/// The base-`p` expansion of `a`.
pub fn digits(a: u64, p: u32) -> Result<DigitVector> {
    DigitVector::new(a, p)
}

/// Number of base-`p` digits of `a` (zero has none).
pub fn digit_len(mut a: u64, p: u32) -> usize {
    let mut n = 0;
    while a > 0 {
        a /= p as u64;
        n += 1;
    }
    n
}

/// Digit `u` of `a` in base `p`.
pub fn digit_at(a: u64, p: u32, u: usize) -> u32 {
    match (p as u64).checked_pow(u as u32) {
        Some(w) => ((a / w) % p as u64) as u32,
        None => 0,
    }
}

/// `a_{<s}`: the value of the lowest `s` digits of `a`.
pub fn truncate_below(a: u64, p: u32, s: u32) -> u64 {
    match (p as u64).checked_pow(s) {
        Some(w) => a % w,
        None => a,
    }
}

/// `C(a, b) mod p` for `a < p`, by the multiplicative formula.
fn digit_binom(a: u32, b: u32, p: u32) -> u32 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    if b == 0 {
        return 1;
    }
    let p64 = p as u64;
    let mut num = 1u64;
    let mut den = 1u64;
    for k in 0..b as u64 {
        num = num * (a as u64 - k) % p64;
        den = den * (k + 1) % p64;
    }
    if den == 1 {
        num as u32
    } else {
        (num * pow_mod(den, p64 - 2, p64) % p64) as u32
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// `C(a, b) mod p` via Lucas' theorem, as a residue in `[0, p)`.
///
/// `p` is assumed prime; zero whenever `b > a`.
pub fn lucas_binom(mut a: u64, mut b: u64, p: u32) -> u32 {
    if b > a {
        return 0;
    }
    let p64 = p as u64;
    let mut acc = 1u64;
    while b > 0 {
        let (ad, bd) = ((a % p64) as u32, (b % p64) as u32);
        if bd > ad {
            return 0;
        }
        acc = acc * digit_binom(ad, bd, p) as u64 % p64;
        a /= p64;
        b /= p64;
    }
    (acc % p64) as u32
}

/// `B(m, g) = C(m + 2g, g) mod p`.
pub fn big_b(m: u64, g: u64, p: u32) -> u32 {
    lucas_binom(m + 2 * g, g, p)
}

/// Carries `x_0, x_1, ...` of the column-wise base-`p` addition `m + g`.
///
/// `x_u` is the carry leaving column `u`; `x_{-1} = 0` is reachable through
/// [`CarrySequence::entering`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrySequence {
    carries: Vec<u8>,
}

impl CarrySequence {
    pub fn carries(&self) -> &[u8] {
        &self.carries
    }

    pub fn len(&self) -> usize {
        self.carries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carries.is_empty()
    }

    /// `x_u`, zero past the computed columns.
    pub fn leaving(&self, u: usize) -> u8 {
        self.carries.get(u).copied().unwrap_or(0)
    }

    /// `x_{u-1}`, the carry into column `u`.
    pub fn entering(&self, u: usize) -> u8 {
        match u {
            0 => 0,
            _ => self.leaving(u - 1),
        }
    }

    pub fn is_carry_free(&self) -> bool {
        self.carries.iter().all(|&x| x == 0)
    }
}

/// Schoolbook addition of `m` and `g` in base `p`, recording every carry.
///
/// The sequence runs one column past the longer of `m` and `g`, so its last
/// entry is always 0.
pub fn carry_sequence(m: u64, g: u64, p: u32) -> CarrySequence {
    let len = digit_len(m, p).max(digit_len(g, p)) + 1;
    let p64 = p as u64;
    let (mut a, mut b) = (m, g);
    let mut carry = 0u64;
    let mut carries = Vec::with_capacity(len);
    for _ in 0..len {
        let column = a % p64 + b % p64 + carry;
        carry = column / p64;
        carries.push(carry as u8);
        a /= p64;
        b /= p64;
    }
    CarrySequence { carries }
}

/// Digit pairs `((m + 2g)_u, g_u)`: the factors of the Lucas expansion of
/// `B(m, g)`.
pub fn factor_digits(m: u64, g: u64, p: u32) -> Vec<(u32, u32)> {
    let top = m + 2 * g;
    let len = digit_len(top, p).max(digit_len(g, p));
    (0..len)
        .map(|u| (digit_at(top, p, u), digit_at(g, p, u)))
        .collect()
}
