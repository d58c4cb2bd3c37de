//! The characteristic-3 idempotents `e_{m,g}`.
//!
//! Each digit position `u` contributes one factor, chosen by the pair
//! `((m+2g)_u, g_u)`:
//!
//! | pair    | factor                          |
//! |---------|---------------------------------|
//! | `(0,0)` | `1 + b(3^u) - b(2·3^u)`         |
//! | `(2,1)` | `b(2·3^u) - b(3^u)`             |
//! | `(1,0)` | `1 - b(2·3^u)`                  |
//! | `(2,2)` | `b(2·3^u)`                      |
//! | `(2,0)` | `1 - b(3^u) + b(2·3^u)`         |
//! | `(1,1)` | `b(3^u) - b(2·3^u)`             |
//!
//! and any other pair contributes zero. Factors sharing the residue
//! `a - 2b mod 3` sum to `1`.

use crate::algebra::{AlgebraContext, AlgebraElement};
use crate::error::{Error, Result};
use crate::padic::{big_b, digit_at, digit_len, lucas_binom, truncate_below};

/// Which of the two factors of a residue class a pair is: `I` has `g_u = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    I,
    J,
}

/// One factor `C(a, b)` of the ternary expansion of `B(m, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    ZeroZero,
    TwoOne,
    OneZero,
    TwoTwo,
    TwoZero,
    OneOne,
    /// `b > a`, or a digit out of range; the factor vanishes.
    Inadmissible(u32, u32),
}

impl FactorKind {
    pub const ADMISSIBLE: [FactorKind; 6] = [
        FactorKind::ZeroZero,
        FactorKind::TwoOne,
        FactorKind::OneZero,
        FactorKind::TwoTwo,
        FactorKind::TwoZero,
        FactorKind::OneOne,
    ];

    pub fn from_pair(a: u32, b: u32) -> Self {
        match (a, b) {
            (0, 0) => FactorKind::ZeroZero,
            (2, 1) => FactorKind::TwoOne,
            (1, 0) => FactorKind::OneZero,
            (2, 2) => FactorKind::TwoTwo,
            (2, 0) => FactorKind::TwoZero,
            (1, 1) => FactorKind::OneOne,
            _ => FactorKind::Inadmissible(a, b),
        }
    }

    pub fn pair(&self) -> (u32, u32) {
        match *self {
            FactorKind::ZeroZero => (0, 0),
            FactorKind::TwoOne => (2, 1),
            FactorKind::OneZero => (1, 0),
            FactorKind::TwoTwo => (2, 2),
            FactorKind::TwoZero => (2, 0),
            FactorKind::OneOne => (1, 1),
            FactorKind::Inadmissible(a, b) => (a, b),
        }
    }

    pub fn is_admissible(&self) -> bool {
        !matches!(self, FactorKind::Inadmissible(..))
    }

    /// `(z, side)` with `z ≡ a - 2b (mod 3)`, i.e. membership in `I^(z)` or
    /// `J^(z)`.
    pub fn class(&self) -> Option<(u32, Side)> {
        if !self.is_admissible() {
            return None;
        }
        let (a, b) = self.pair();
        let z = (a as i64 - 2 * b as i64).rem_euclid(3) as u32;
        let side = if b == 0 { Side::I } else { Side::J };
        Some((z, side))
    }

    /// The other admissible factor of the same residue class.
    pub fn partner(&self) -> Option<FactorKind> {
        let (z, side) = self.class()?;
        FactorKind::ADMISSIBLE
            .iter()
            .copied()
            .find(|k| k.class().is_some_and(|(z2, s2)| z2 == z && s2 != side))
    }

    /// Signed coefficients of `(1, b(3^u), b(2·3^u))` in the factor.
    fn weights(&self) -> (i64, i64, i64) {
        match self {
            FactorKind::ZeroZero => (1, 1, -1),
            FactorKind::TwoOne => (0, -1, 1),
            FactorKind::OneZero => (1, 0, -1),
            FactorKind::TwoTwo => (0, 0, 1),
            FactorKind::TwoZero => (1, -1, 1),
            FactorKind::OneOne => (0, 1, -1),
            FactorKind::Inadmissible(..) => (0, 0, 0),
        }
    }
}

/// The factor data of `e_{m,g}`, read off the digits on demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IdempotentSpec {
    pub m: u64,
    pub g: u64,
}

impl IdempotentSpec {
    pub fn new(m: u64, g: u64) -> Self {
        IdempotentSpec { m, g }
    }

    /// Factor at digit position `u`: `((m+2g)_u, g_u)`.
    pub fn factor(&self, u: usize) -> FactorKind {
        FactorKind::from_pair(digit_at(self.m + 2 * self.g, 3, u), digit_at(self.g, 3, u))
    }

    /// Factors up to the last non-zero digit of `m + 2g`.
    pub fn factors(&self) -> Vec<FactorKind> {
        (0..digit_len(self.m + 2 * self.g, 3)).map(|u| self.factor(u)).collect()
    }

    pub fn is_valid(&self) -> bool {
        big_b(self.m, self.g, 3) != 0
    }

    /// Positions `u < len` lying in `I^(z)` or `J^(z)`.
    pub fn index_set(&self, z: u32, side: Side, len: usize) -> Vec<usize> {
        (0..len)
            .filter(|&u| self.factor(u).class() == Some((z, side)))
            .collect()
    }
}

fn require_three(ctx: &AlgebraContext) -> Result<()> {
    match ctx.p() {
        3 => Ok(()),
        p => Err(Error::UnsupportedCharacteristic(p)),
    }
}

fn pow(p: u32, u: usize) -> Option<u64> {
    (p as u64).checked_pow(u32::try_from(u).ok()?)
}

/// Number of positions `u` with `3^u <= λ2`; past these every factor is
/// `1` or `0` once truncated.
fn live_positions(ctx: &AlgebraContext) -> usize {
    digit_len(ctx.lambda2(), 3)
}

/// Factor `u` of `e_{m,g}` of the given kind, truncated to `S_F(λ)`.
pub fn factor_element(ctx: &AlgebraContext, u: usize, kind: FactorKind) -> Result<AlgebraElement> {
    require_three(ctx)?;
    let (one, single, double) = kind.weights();
    let mut terms = vec![(0, one)];
    if let Some(w) = pow(3, u) {
        terms.push((w, single));
        if let Some(w2) = w.checked_mul(2) {
            terms.push((w2, double));
        }
    }
    Ok(AlgebraElement::from_terms(*ctx, &terms))
}

/// Product of the factors of `e_{m,g}` at positions `u < end`.
fn product_below(ctx: &AlgebraContext, g: u64, end: usize) -> Result<AlgebraElement> {
    require_three(ctx)?;
    let spec = IdempotentSpec::new(ctx.m(), g);
    let cutoff = end.min(digit_len(ctx.m() + 2 * g, 3).max(live_positions(ctx)));
    let one = AlgebraElement::one(*ctx);
    let mut acc = one.clone();
    for u in 0..cutoff {
        let factor = factor_element(ctx, u, spec.factor(u))?;
        if factor == one {
            continue;
        }
        acc = if acc == one { factor } else { acc.mul(&factor)? };
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `e_{m,g}` in `S_F(λ)` with `m = λ1 - λ2`.
///
/// Zero when `B(m, g) ≡ 0 (mod 3)` or `g > λ2`.
pub fn build(ctx: &AlgebraContext, g: u64) -> Result<AlgebraElement> {
    require_three(ctx)?;
    if g > ctx.lambda2() || big_b(ctx.m(), g, 3) == 0 {
        return Ok(AlgebraElement::zero(*ctx));
    }
    product_below(ctx, g, usize::MAX)
}

/// `(e_{m,g})_{≤t}` when `inclusive`, else `(e_{m,g})_{<t}`.
pub fn build_prefix(ctx: &AlgebraContext, g: u64, t: usize, inclusive: bool) -> Result<AlgebraElement> {
    let end = if inclusive { t.saturating_add(1) } else { t };
    product_below(ctx, g, end)
}

/// The non-trivial truncated factors of `e_{m,g}`, in digit order.
pub fn factor_sequence(ctx: &AlgebraContext, g: u64) -> Result<Vec<AlgebraElement>> {
    require_three(ctx)?;
    let spec = IdempotentSpec::new(ctx.m(), g);
    let one = AlgebraElement::one(*ctx);
    let len = digit_len(ctx.m() + 2 * g, 3).max(live_positions(ctx));
    let mut out = Vec::new();
    for u in 0..len {
        let f = factor_element(ctx, u, spec.factor(u))?;
        if f != one {
            out.push(f);
        }
    }
    Ok(out)
}

/// Factor sequence as `(b(1)-b(2))(b(3)-b(6))(-b(9))`.
pub fn render_factor_sequence(ctx: &AlgebraContext, g: u64) -> Result<String> {
    Ok(factor_sequence(ctx, g)?
        .iter()
        .map(|f| format!("({})", f.to_signed_string().replace(' ', "")))
        .collect())
}

/// `ψ_{m,u} = Σ_{k=1}^{p^u - 1} C(m_{<u}, p^u - k) b(k)` in `S_F(λ)`.
pub fn psi(ctx: &AlgebraContext, u: usize) -> AlgebraElement {
    let p = ctx.p();
    let mut x = AlgebraElement::zero(*ctx);
    let Some(pu) = pow(p, u) else {
        // p^u exceeds m + λ2: every coefficient is C(m, >m) or off the top.
        return x;
    };
    let low = truncate_below(ctx.m(), p, u as u32);
    let first = pu.saturating_sub(low).max(1);
    let last = (pu - 1).min(ctx.lambda2());
    let mut terms = Vec::new();
    for k in first..=last {
        terms.push((k, lucas_binom(low, pu - k, p) as i64));
    }
    if first <= last {
        x = AlgebraElement::from_terms(*ctx, &terms);
    }
    x
}

/// `Σ_k x_k b(offset + k)`: the product `b(offset) · x` when every `k` in the
/// support of `x` has no digits in common with `offset`.
fn shifted(x: &AlgebraElement, offset: u64) -> AlgebraElement {
    let ctx = *x.context();
    let terms: Vec<(u64, i64)> = x
        .support()
        .map(|k| (offset + k, x.coeff(k) as i64))
        .collect();
    AlgebraElement::from_terms(ctx, &terms)
}

/// Selector for the three products with closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareForm {
    /// `b(3^u)^2`
    SingleSquared,
    /// `b(2·3^u)^2`
    DoubleSquared,
    /// `b(3^u) b(2·3^u)`
    Mixed,
}

impl SquareForm {
    pub const ALL: [SquareForm; 3] = [SquareForm::SingleSquared, SquareForm::DoubleSquared, SquareForm::Mixed];

    /// The left-hand side as a pair of basis indices.
    pub fn operands(&self, u: usize) -> (u64, u64) {
        let w = 3u64.pow(u as u32);
        match self {
            SquareForm::SingleSquared => (w, w),
            SquareForm::DoubleSquared => (2 * w, 2 * w),
            SquareForm::Mixed => (w, 2 * w),
        }
    }
}

/// Closed form of `b(3^u)^2`, `b(2·3^u)^2` or `b(3^u) b(2·3^u)` in terms of
/// `ψ_{m,u}`:
///
/// ```text
/// b(3^u)^2        = b(3^u) [C(m_u+2, 1) + ψ] + b(2·3^u)
/// b(2·3^u)^2      = b(2·3^u) [C(m_u+1, 2) + C(m_u+1, 1) ψ]
/// b(3^u) b(2·3^u) = b(2·3^u) [2 C(m_u, 1) - ψ]
/// ```
///
/// The products `b(a·3^u) ψ` are evaluated by index shifting, never through
/// [`AlgebraElement::mul`].
pub fn square_closed_form(ctx: &AlgebraContext, u: usize, which: SquareForm) -> Result<AlgebraElement> {
    require_three(ctx)?;
    let w = pow(3, u)
        .filter(|w| 2 * w <= ctx.lambda2())
        .ok_or_else(|| Error::Precondition(format!("lambda2 = {} < 2·3^{u}", ctx.lambda2())))?;
    let mu = digit_at(ctx.m(), 3, u) as i64;
    let ps = psi(ctx, u);
    let single = AlgebraElement::basis(*ctx, w);
    let double = AlgebraElement::basis(*ctx, 2 * w);
    let out = match which {
        SquareForm::SingleSquared => single
            .scale(mu + 2)
            .add(&shifted(&ps, w))?
            .add(&double)?,
        SquareForm::DoubleSquared => double
            .scale((mu + 1) * mu / 2)
            .add(&shifted(&ps, 2 * w).scale(mu + 1))?,
        SquareForm::Mixed => double.scale(2 * mu).sub(&shifted(&ps, 2 * w))?,
    };
    Ok(out)
}

/// Right-hand side of the recursion expressing `ψ_{m,t}` through `ψ_{m,t-1}`:
///
/// ```text
/// ψ_{m,t-1} [Σ_{a=0}^{p-1} C(m_{t-1}, p-1-a) b(a p^{t-1})] + Σ_{a=1}^{p-1} C(m_{t-1}, p-a) b(a p^{t-1})
/// ```
///
/// For `p = 3` this is
/// `ψ_{t-1}[C(m_{t-1},2) + C(m_{t-1},1) b(3^{t-1}) + b(2·3^{t-1})] + C(m_{t-1},2) b(3^{t-1}) + C(m_{t-1},1) b(2·3^{t-1})`.
pub fn psi_recursion_rhs(ctx: &AlgebraContext, t: usize) -> Result<AlgebraElement> {
    let p = ctx.p();
    if t == 0 {
        return Err(Error::Precondition("recursion needs t >= 1".into()));
    }
    let w = pow(p, t - 1)
        .filter(|w| 2 * w <= ctx.lambda2())
        .ok_or_else(|| Error::Precondition(format!("lambda2 = {} < 2·{p}^{}", ctx.lambda2(), t - 1)))?;
    let digit = digit_at(ctx.m(), p, t - 1) as u64;
    let mut bracket = Vec::new();
    let mut tail = Vec::new();
    for a in 0..p as u64 {
        bracket.push((a * w, lucas_binom(digit, p as u64 - 1 - a, p) as i64));
        if a > 0 {
            tail.push((a * w, lucas_binom(digit, p as u64 - a, p) as i64));
        }
    }
    let bracket = AlgebraElement::from_terms(*ctx, &bracket);
    let tail = AlgebraElement::from_terms(*ctx, &tail);
    psi(ctx, t - 1).mul(&bracket)?.add(&tail)
}

/// Whether `ψ_{m,t}` agrees with its recursive description.
pub fn psi_recursion_check(ctx: &AlgebraContext, t: usize) -> Result<bool> {
    Ok(psi_recursion_rhs(ctx, t)? == psi(ctx, t))
}

/// How `(e_{m,g})_{<t}` reacts to multiplication by `ψ_{m,t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiAction {
    /// The product vanishes.
    Annihilates,
    /// The product is the prefix itself.
    Fixes,
    /// Neither; never observed for admissible `(m, g)`.
    Other,
}

pub fn psi_action(ctx: &AlgebraContext, g: u64, t: usize) -> Result<PsiAction> {
    let prefix = build_prefix(ctx, g, t, false)?;
    let product = prefix.mul(&psi(ctx, t))?;
    Ok(if product.is_zero() {
        PsiAction::Annihilates
    } else if product == prefix {
        PsiAction::Fixes
    } else {
        PsiAction::Other
    })
}
