//! The commutative algebra `S_F(λ) = End(M^λ)` for a two-row partition `λ`.
//!
//! Elements are dense coefficient vectors over `Z/p` in the canonical basis
//! `b(0), …, b(λ2)`. The product of basis elements is
//!
//! ```text
//! b(i) b(j) = Σ_{h = max(i,j)}^{i+j} C(h,i) C(h,j) C(m+i+j, i+j-h) b(h)
//! ```
//!
//! with `m = λ1 - λ2` and every `b(h)`, `h > λ2`, dropped.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{check_prime, lucas_binom};

/// A two-row partition `λ = (λ1, λ2)` together with the characteristic `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraContext {
    lambda1: u64,
    lambda2: u64,
    p: u32,
}

impl AlgebraContext {
    pub fn new(lambda1: u64, lambda2: u64, p: u32) -> Result<Self> {
        if lambda2 > lambda1 {
            return Err(Error::InvalidPartition(lambda1, lambda2));
        }
        check_prime(p)?;
        Ok(AlgebraContext { lambda1, lambda2, p })
    }

    /// The algebra `S_F((m + λ2, λ2))`.
    pub fn with_m(m: u64, lambda2: u64, p: u32) -> Result<Self> {
        Self::new(m + lambda2, lambda2, p)
    }

    pub fn lambda(&self) -> (u64, u64) {
        (self.lambda1, self.lambda2)
    }

    pub fn lambda1(&self) -> u64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> u64 {
        self.lambda2
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.lambda1 - self.lambda2
    }

    pub fn r(&self) -> u64 {
        self.lambda1 + self.lambda2
    }

    pub fn dim(&self) -> usize {
        self.lambda2 as usize + 1
    }

    /// Coefficient of `b(h)` in `b(i) b(j)`, reduced mod `p`.
    pub fn structure_constant(&self, i: u64, j: u64, h: u64) -> Result<u32> {
        let (lo, hi) = (i.max(j), i + j);
        if h < lo || h > hi {
            return Err(Error::OutOfRange { h, lo, hi });
        }
        Ok(self.constant(i, j, h))
    }

    /// Unchecked variant; `max(i,j) <= h <= i+j` is the caller's job.
    #[inline]
    fn constant(&self, i: u64, j: u64, h: u64) -> u32 {
        let p = self.p;
        let a = lucas_binom(h, i, p);
        if a == 0 {
            return 0;
        }
        let b = lucas_binom(h, j, p);
        if b == 0 {
            return 0;
        }
        let c = lucas_binom(self.m() + i + j, i + j - h, p);
        ((a as u64 * b as u64 % p as u64) * c as u64 % p as u64) as u32
    }

    fn reduce(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }
}

impl fmt::Display for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(({},{})) over F_{}", self.lambda1, self.lambda2, self.p)
    }
}

/// An element `Σ c_i b(i)` of `S_F(λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct AlgebraElement {
    ctx: AlgebraContext,
    coeffs: Vec<u32>,
}

impl AlgebraElement {
    pub fn zero(ctx: AlgebraContext) -> Self {
        AlgebraElement { ctx, coeffs: vec![0; ctx.dim()] }
    }

    /// The identity `b(0)`.
    pub fn one(ctx: AlgebraContext) -> Self {
        Self::basis(ctx, 0)
    }

    /// `b(i)`, or zero when `i > λ2`.
    pub fn basis(ctx: AlgebraContext, i: u64) -> Self {
        let mut x = Self::zero(ctx);
        if i <= ctx.lambda2 {
            x.coeffs[i as usize] = 1 % ctx.p;
        }
        x
    }

    /// `Σ c b(i)` over signed `(i, c)` terms; indices past `λ2` are dropped.
    pub fn from_terms(ctx: AlgebraContext, terms: &[(u64, i64)]) -> Self {
        let mut x = Self::zero(ctx);
        for &(i, c) in terms {
            if i <= ctx.lambda2 {
                let slot = &mut x.coeffs[i as usize];
                *slot = ctx.reduce(*slot as i64 + c);
            }
        }
        x
    }

    pub fn from_coeffs(ctx: AlgebraContext, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != ctx.dim() {
            return Err(Error::Malformed(format!(
                "expected {} coefficients, got {}",
                ctx.dim(),
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= ctx.p) {
            return Err(Error::Malformed(format!("coefficient {c} is not a residue mod {}", ctx.p)));
        }
        Ok(AlgebraElement { ctx, coeffs })
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `b(i)`, zero past `λ2`.
    pub fn coeff(&self, i: u64) -> u32 {
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Indices with a non-zero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i as u64)
    }

    /// Smallest `i` with a non-zero coefficient of `b(i)`.
    pub fn support_min(&self) -> Option<u64> {
        self.support().next()
    }

    pub fn support_max(&self) -> Option<u64> {
        self.coeffs.iter().rposition(|&c| c != 0).map(|i| i as u64)
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx.to_string(), other.ctx.to_string()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let p = self.ctx.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(AlgebraElement { ctx: self.ctx, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let p = self.ctx.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(AlgebraElement { ctx: self.ctx, coeffs })
    }

    /// Multiplies every coefficient by the integer `c`.
    pub fn scale(&self, c: i64) -> Self {
        let c = self.ctx.reduce(c) as u64;
        let p = self.ctx.p as u64;
        let coeffs = self.coeffs.iter().map(|&a| (a as u64 * c % p) as u32).collect();
        AlgebraElement { ctx: self.ctx, coeffs }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// The product in `S_F(λ)`.
    ///
    /// Hot loop: `O(|supp x| · |supp y| · λ2)` structure constants.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let ctx = self.ctx;
        let p = ctx.p as u64;
        let top = ctx.lambda2;
        let mut acc = vec![0u64; ctx.dim()];
        let ys: Vec<(u64, u64)> = other.support().map(|j| (j, other.coeffs[j as usize] as u64)).collect();
        for (i, &xi) in self.coeffs.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let i = i as u64;
            for &(j, yj) in &ys {
                let w = xi as u64 * yj % p;
                for h in i.max(j)..=(i + j).min(top) {
                    let c = ctx.constant(i, j, h);
                    if c != 0 {
                        let slot = &mut acc[h as usize];
                        *slot = (*slot + w * c as u64) % p;
                    }
                }
            }
        }
        Ok(AlgebraElement {
            ctx,
            coeffs: acc.into_iter().map(|c| c as u32).collect(),
        })
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same context")
    }

    pub fn is_idempotent(&self) -> bool {
        self.square() == *self
    }

    /// Image under the quotient onto `S_F((m + n, n))`, `n <= λ2`: keeps the
    /// coefficients of `b(0), …, b(n)`.
    pub fn truncate(&self, lambda2: u64) -> Result<Self> {
        if lambda2 > self.ctx.lambda2 {
            return Err(Error::Precondition(format!(
                "cannot truncate {} to lambda2 = {lambda2}",
                self.ctx
            )));
        }
        let ctx = AlgebraContext::with_m(self.ctx.m(), lambda2, self.ctx.p)?;
        Ok(AlgebraElement {
            ctx,
            coeffs: self.coeffs[..=lambda2 as usize].to_vec(),
        })
    }

    /// Renders the element as a polynomial in the `b(i)`, with residues
    /// above `p/2` written as negative integers.
    pub fn to_signed_string(&self) -> String {
        let p = self.ctx.p as i64;
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = c as i64;
            let signed = if c > p / 2 { c - p } else { c };
            let (neg, mag) = (signed < 0, signed.abs());
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let term = if i == 0 { "1".to_string() } else { format!("b({i})") };
            if mag == 1 {
                out.push_str(&term);
            } else if i == 0 {
                out.push_str(&mag.to_string());
            } else {
                out.push_str(&format!("{mag}*{term}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_signed_string())
    }
}

/// Wire form: `{"lambda":[λ1,λ2],"p":p,"coeffs":[c_0,…,c_λ2]}`.
#[derive(Serialize, Deserialize)]
struct ElementRepr {
    lambda: [u64; 2],
    p: u32,
    coeffs: Vec<u32>,
}

impl From<AlgebraElement> for ElementRepr {
    fn from(x: AlgebraElement) -> Self {
        ElementRepr {
            lambda: [x.ctx.lambda1, x.ctx.lambda2],
            p: x.ctx.p,
            coeffs: x.coeffs,
        }
    }
}

impl TryFrom<ElementRepr> for AlgebraElement {
    type Error = Error;

    fn try_from(r: ElementRepr) -> Result<Self> {
        let ctx = AlgebraContext::new(r.lambda[0], r.lambda[1], r.p)?;
        AlgebraElement::from_coeffs(ctx, r.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(l1: u64, l2: u64, p: u32) -> AlgebraContext {
        AlgebraContext::new(l1, l2, p).unwrap()
    }

    #[test]
    fn context_validation() {
        assert_eq!(AlgebraContext::new(1, 2, 3), Err(Error::InvalidPartition(1, 2)));
        assert_eq!(AlgebraContext::new(2, 1, 4), Err(Error::InvalidPrime(4)));
        let c = ctx(36, 13, 3);
        assert_eq!((c.m(), c.r(), c.dim()), (23, 49, 14));
    }

    #[test]
    fn basis_and_truncation() {
        let c = ctx(5, 1, 3);
        assert!(AlgebraElement::basis(c, 2).is_zero());
        assert_eq!(AlgebraElement::one(c).coeffs(), &[1, 0]);
        let big = ctx(36, 13, 3);
        let b13 = AlgebraElement::basis(big, 13);
        assert_eq!(b13.coeff(13), 1);
        assert_eq!(b13.support_min(), Some(13));
    }

    #[test]
    fn structure_constants() {
        // m = 0: C(1,1)^2 C(2,1) = 2
        assert_eq!(ctx(2, 2, 3).structure_constant(1, 1, 1), Ok(2));
        // m = 1: C(2,2)^2 C(5,2) = 10 = 1 mod 3
        assert_eq!(ctx(3, 2, 3).structure_constant(2, 2, 2), Ok(1));
        // last summand: C(i+j, i) C(i+j, j)
        let c = ctx(20, 10, 5);
        assert_eq!(c.structure_constant(2, 3, 5), Ok((10 * 10 % 5) as u32));
        // C(3,1) C(3,3) C(14,1) = 42 = 2 mod 5
        assert_eq!(c.structure_constant(1, 3, 3), Ok(2));
        assert_eq!(
            c.structure_constant(2, 3, 6),
            Err(Error::OutOfRange { h: 6, lo: 3, hi: 5 })
        );
        assert!(c.structure_constant(2, 3, 2).is_err());
    }

    #[test]
    fn small_products() {
        let c = ctx(4, 4, 3);
        let b1 = AlgebraElement::basis(c, 1);
        assert_eq!(b1.square(), AlgebraElement::from_terms(c, &[(1, 2), (2, 1)]));
        let c = ctx(5, 4, 3);
        let b2 = AlgebraElement::basis(c, 2);
        assert_eq!(b2.square(), b2);
        let x = AlgebraElement::from_terms(c, &[(0, 2), (3, 1), (4, -1)]);
        assert_eq!(AlgebraElement::one(c).mul(&x).unwrap(), x);
    }

    #[test]
    fn vector_ops() {
        let c = ctx(36, 13, 3);
        let x = AlgebraElement::from_terms(c, &[(1, 1), (2, -1)]);
        assert_eq!(x.add(&AlgebraElement::zero(c)).unwrap(), x);
        assert!(x.scale(3).is_zero());
        let neg = AlgebraElement::basis(c, 13).scale(2);
        assert_eq!(neg.coeff(13), 2);
        assert_eq!(neg, AlgebraElement::basis(c, 13).neg());
        assert_eq!(x.sub(&x).unwrap(), AlgebraElement::zero(c));
        let other = AlgebraElement::one(ctx(36, 12, 3));
        assert!(matches!(x.add(&other), Err(Error::ContextMismatch(..))));
        assert!(matches!(x.mul(&other), Err(Error::ContextMismatch(..))));
    }

    #[test]
    fn rendering() {
        let c = ctx(36, 13, 3);
        assert_eq!(AlgebraElement::basis(c, 13).neg().to_string(), "-b(13)");
        assert_eq!(
            AlgebraElement::from_terms(c, &[(0, 1), (1, 1), (2, -1)]).to_string(),
            "1 + b(1) - b(2)"
        );
        assert_eq!(AlgebraElement::zero(c).to_string(), "0");
        let c5 = ctx(9, 3, 5);
        assert_eq!(AlgebraElement::from_terms(c5, &[(0, 2), (3, 3)]).to_string(), "2 - 2*b(3)");
    }

    #[test]
    fn json_wire_format() {
        let c = ctx(2, 2, 3);
        let x = AlgebraElement::from_terms(c, &[(0, 1), (1, 1), (2, -1)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"lambda":[2,2],"p":3,"coeffs":[1,1,2]}"#);
        let back: AlgebraElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<AlgebraElement>(r#"{"lambda":[2,2],"p":3,"coeffs":[1,1]}"#).is_err());
        assert!(serde_json::from_str::<AlgebraElement>(r#"{"lambda":[2,2],"p":3,"coeffs":[1,1,3]}"#).is_err());
        assert!(serde_json::from_str::<AlgebraElement>(r#"{"lambda":[1,2],"p":3,"coeffs":[1,1,1]}"#).is_err());
    }
}
