//! Brute-force model of `M^λ` inside `E^{⊗r}`, `dim E = 2`.
//!
//! A basis tensor `v_{i_1} ⊗ … ⊗ v_{i_r}` of weight `(λ1, λ2)` is stored as
//! the set of positions holding `v_2`, encoded as a bitmask (position `k`
//! is bit `k - 1`). Bases are listed in colexicographic order, which for
//! fixed-size sets is the numeric order of the masks.
//!
//! The divided powers `e^{(i)}`, `f^{(i)}` act by summing over `i`-subsets:
//! `e^{(i)}` turns `i` of the `v_2` into `v_1`, `f^{(i)}` does the reverse.
//! No factorials are divided out, so everything is exact over any `F_p`.
//! The realization of `b(i)` is `f^{(i)} e^{(i)}` restricted to weight `λ`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraContext, AlgebraElement};
use crate::decompose::{partitions_up_to, summands};
use crate::error::{Error, Result};
use crate::idempotent::build;
use crate::padic::check_prime;

/// Largest tensor power the mask encoding supports.
pub const MAX_POSITIONS: u32 = 30;

const fn pascal() -> [[u64; 33]; 33] {
    let mut t = [[0u64; 33]; 33];
    let mut n = 0;
    while n < 33 {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
            k += 1;
        }
        n += 1;
    }
    t
}

static BINOM: [[u64; 33]; 33] = pascal();

fn binom(n: u32, k: u32) -> u64 {
    if k > n {
        0
    } else {
        BINOM[n as usize][k as usize]
    }
}

/// Position set of a mask, 1-based and ascending.
pub fn positions(mask: u32) -> Vec<u32> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Mask of a set of 1-based positions.
pub fn mask_of(positions: &[u32]) -> u32 {
    positions.iter().fold(0, |m, &k| m | 1 << (k - 1))
}

/// Calls `f` with every `k`-element subset of `set`.
fn for_each_subset(set: u32, k: u32, mut f: impl FnMut(u32)) {
    let bits: Vec<u32> = (0..32).filter(|b| set >> b & 1 == 1).collect();
    let n = bits.len() as u32;
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    // Gosper's hack over index combinations.
    let mut c: u64 = (1u64 << k) - 1;
    while c < 1u64 << n {
        let mut sub = 0u32;
        let mut rest = c;
        while rest != 0 {
            let t = rest.trailing_zeros();
            sub |= 1 << bits[t as usize];
            rest &= rest - 1;
        }
        f(sub);
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        c = (((ripple ^ c) >> 2) / low) | ripple;
    }
}

/// The weight space of `E^{⊗r}` with `twos` copies of `v_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSpace {
    pub r: u32,
    pub twos: u32,
}

impl WeightSpace {
    pub fn new(r: u32, twos: u32) -> Result<Self> {
        if r > MAX_POSITIONS || twos > r {
            return Err(Error::Precondition(format!("no weight space with r = {r}, twos = {twos}")));
        }
        Ok(WeightSpace { r, twos })
    }

    /// The copy of `M^λ`, `λ` a two-row partition.
    pub fn of_partition(lambda: (u64, u64)) -> Result<Self> {
        if lambda.1 > lambda.0 {
            return Err(Error::InvalidPartition(lambda.0, lambda.1));
        }
        let r = u32::try_from(lambda.0 + lambda.1).map_err(|_| Error::Precondition("r too large".into()))?;
        Self::new(r, lambda.1 as u32)
    }

    pub fn weight(&self) -> (u32, u32) {
        (self.r - self.twos, self.twos)
    }

    pub fn dim(&self) -> usize {
        binom(self.r, self.twos) as usize
    }

    /// Basis masks in colex order.
    pub fn basis(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.dim());
        let full = if self.r == 32 { u32::MAX } else { (1u32 << self.r) - 1 };
        for_each_subset(full, self.twos, |s| out.push(s));
        out.sort_unstable();
        out
    }

    /// Colex rank of a mask with exactly `twos` bits below `r`.
    pub fn rank(&self, mask: u32) -> usize {
        let mut rank = 0u64;
        let mut rest = mask;
        let mut i = 1;
        while rest != 0 {
            let pos = rest.trailing_zeros();
            rank += binom(pos, i);
            rest &= rest - 1;
            i += 1;
        }
        rank as usize
    }

    fn contains(&self, mask: u32) -> bool {
        mask.count_ones() == self.twos && (self.r == 32 || mask >> self.r == 0)
    }

    fn full(&self) -> u32 {
        if self.r == 32 {
            u32::MAX
        } else {
            (1u32 << self.r) - 1
        }
    }
}

/// A vector in one weight space, coefficients mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    space: WeightSpace,
    p: u32,
    coeffs: Vec<u32>,
}

impl WeightVector {
    pub fn zero(space: WeightSpace, p: u32) -> Self {
        WeightVector { space, p, coeffs: vec![0; space.dim()] }
    }

    pub fn basis_vector(space: WeightSpace, p: u32, mask: u32) -> Result<Self> {
        Self::from_terms(space, p, &[(mask, 1)])
    }

    /// `Σ c·[mask]` over signed terms.
    pub fn from_terms(space: WeightSpace, p: u32, terms: &[(u32, i64)]) -> Result<Self> {
        let mut v = Self::zero(space, p);
        for &(mask, c) in terms {
            if !space.contains(mask) {
                return Err(Error::Precondition(format!(
                    "{:?} is not a basis set of weight {:?}",
                    positions(mask),
                    space.weight()
                )));
            }
            let slot = &mut v.coeffs[space.rank(mask)];
            *slot = (*slot as i64 + c).rem_euclid(p as i64) as u32;
        }
        Ok(v)
    }

    pub fn space(&self) -> WeightSpace {
        self.space
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: u32) -> u32 {
        if self.space.contains(mask) {
            self.coeffs[self.space.rank(mask)]
        } else {
            0
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Non-zero `(mask, coefficient)` pairs in colex order.
    pub fn terms(&self) -> Vec<(u32, u32)> {
        self.space
            .basis()
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m, c))
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.space == other.space && self.p == other.p {
            Ok(())
        } else {
            Err(Error::ContextMismatch(
                format!("{:?} mod {}", self.space, self.p),
                format!("{:?} mod {}", other.space, other.p),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % self.p).collect();
        Ok(WeightVector { coeffs, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect();
        Ok(WeightVector { coeffs, ..*self })
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = c.rem_euclid(self.p as i64) as u64;
        let coeffs = self.coeffs.iter().map(|&a| (a as u64 * c % self.p as u64) as u32).collect();
        WeightVector { coeffs, ..*self }
    }

    /// Place permutation by the transposition of positions `a` and `b`.
    pub fn swap_positions(&self, a: u32, b: u32) -> Self {
        let (ba, bb) = (1u32 << (a - 1), 1u32 << (b - 1));
        let mut out = Self::zero(self.space, self.p);
        for (mask, c) in self.terms() {
            let moved = if (mask & ba != 0) != (mask & bb != 0) { mask ^ ba ^ bb } else { mask };
            let slot = &mut out.coeffs[self.space.rank(moved)];
            *slot = (*slot + c) % self.p;
        }
        out
    }
}

/// Sums over sub-/super-sets, accumulating integer multiplicities.
fn act_e_counts(space: WeightSpace, mask: u32, i: u32, out: &mut impl FnMut(u32)) {
    let _ = space;
    for_each_subset(mask, i, |t| out(mask & !t));
}

fn act_f_counts(space: WeightSpace, mask: u32, i: u32, out: &mut impl FnMut(u32)) {
    for_each_subset(space.full() & !mask, i, |u| out(mask | u));
}

/// `e^{(i)}` on a vector; `None` when `twos < i`, i.e. the target weight is not
/// a composition and the image is zero.
pub fn act_divided_e(v: &WeightVector, i: u32) -> Option<WeightVector> {
    let target = WeightSpace::new(v.space.r, v.space.twos.checked_sub(i)?).ok()?;
    let mut acc = vec![0u64; target.dim()];
    for (mask, c) in v.terms() {
        act_e_counts(v.space, mask, i, &mut |s| acc[target.rank(s)] += c as u64);
    }
    let p = v.p as u64;
    Some(WeightVector { space: target, p: v.p, coeffs: acc.into_iter().map(|c| (c % p) as u32).collect() })
}

/// `f^{(i)}` on a vector; `None` when the target weight is not a composition.
pub fn act_divided_f(v: &WeightVector, i: u32) -> Option<WeightVector> {
    let twos = v.space.twos + i;
    if twos > v.space.r {
        return None;
    }
    let target = WeightSpace::new(v.space.r, twos).ok()?;
    let mut acc = vec![0u64; target.dim()];
    for (mask, c) in v.terms() {
        act_f_counts(v.space, mask, i, &mut |s| acc[target.rank(s)] += c as u64);
    }
    let p = v.p as u64;
    Some(WeightVector { space: target, p: v.p, coeffs: acc.into_iter().map(|c| (c % p) as u32).collect() })
}

/// `b(i) = f^{(i)} e^{(i)}` on a vector of weight `λ`.
pub fn act_b(v: &WeightVector, i: u32) -> WeightVector {
    act_divided_e(v, i)
        .and_then(|w| act_divided_f(&w, i))
        .unwrap_or_else(|| WeightVector::zero(v.space, v.p))
}

/// A linear map between weight spaces, entries mod `p`, row-major with rows
/// indexed by the codomain basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorMatrix {
    pub domain: WeightSpace,
    pub codomain: WeightSpace,
    pub p: u32,
    entries: Vec<u32>,
}

impl OperatorMatrix {
    pub fn zero(domain: WeightSpace, codomain: WeightSpace, p: u32) -> Self {
        OperatorMatrix { domain, codomain, p, entries: vec![0; domain.dim() * codomain.dim()] }
    }

    pub fn identity(space: WeightSpace, p: u32) -> Self {
        let mut m = Self::zero(space, space, p);
        let n = space.dim();
        for k in 0..n {
            m.entries[k * n + k] = 1 % p;
        }
        m
    }

    fn from_columns(domain: WeightSpace, codomain: WeightSpace, p: u32, mut column: impl FnMut(u32, &mut [u64])) -> Self {
        let (rows, cols) = (codomain.dim(), domain.dim());
        let mut entries = vec![0u32; rows * cols];
        let mut buf = vec![0u64; rows];
        for (col, mask) in domain.basis().into_iter().enumerate() {
            buf.iter_mut().for_each(|x| *x = 0);
            column(mask, &mut buf);
            for (row, &c) in buf.iter().enumerate() {
                entries[row * cols + col] = (c % p as u64) as u32;
            }
        }
        OperatorMatrix { domain, codomain, p, entries }
    }

    pub fn rows(&self) -> usize {
        self.codomain.dim()
    }

    pub fn cols(&self) -> usize {
        self.domain.dim()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry in row `to`, column `from`, both given as masks.
    pub fn get(&self, to: u32, from: u32) -> u32 {
        self.entries[self.codomain.rank(to) * self.cols() + self.domain.rank(from)]
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if rhs.codomain != self.domain || rhs.p != self.p {
            return Err(Error::ContextMismatch(format!("{:?}", self.domain), format!("{:?}", rhs.codomain)));
        }
        let (n, k, m) = (self.rows(), self.cols(), rhs.cols());
        let p = self.p;
        let mut entries = vec![0u32; n * m];
        let fits = (k as u64) * ((p as u64 - 1).pow(2)) < u32::MAX as u64;
        let mut acc32 = vec![0u32; m];
        let mut acc64 = vec![0u64; m];
        for a in 0..n {
            let row = &self.entries[a * k..(a + 1) * k];
            if fits {
                acc32.iter_mut().for_each(|x| *x = 0);
                for (t, &v) in row.iter().enumerate() {
                    if v != 0 {
                        let other = &rhs.entries[t * m..(t + 1) * m];
                        for (dst, &w) in acc32.iter_mut().zip(other) {
                            *dst += v * w;
                        }
                    }
                }
                for (dst, &s) in entries[a * m..(a + 1) * m].iter_mut().zip(&acc32) {
                    *dst = s % p;
                }
            } else {
                acc64.iter_mut().for_each(|x| *x = 0);
                for (t, &v) in row.iter().enumerate() {
                    if v != 0 {
                        let other = &rhs.entries[t * m..(t + 1) * m];
                        for (dst, &w) in acc64.iter_mut().zip(other) {
                            *dst = (*dst + v as u64 * w as u64) % p as u64;
                        }
                    }
                }
                for (dst, &s) in entries[a * m..(a + 1) * m].iter_mut().zip(&acc64) {
                    *dst = s as u32;
                }
            }
        }
        Ok(OperatorMatrix { domain: rhs.domain, codomain: self.codomain, p, entries })
    }

    pub fn add_scaled(&self, other: &OperatorMatrix, c: u32) -> Result<OperatorMatrix> {
        if self.domain != other.domain || self.codomain != other.codomain || self.p != other.p {
            return Err(Error::ContextMismatch(format!("{:?}", self.domain), format!("{:?}", other.domain)));
        }
        let p = self.p as u64;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ((a as u64 + c as u64 * b as u64) % p) as u32)
            .collect();
        Ok(OperatorMatrix { entries, ..*self })
    }

    pub fn scale(&self, c: u32) -> OperatorMatrix {
        let p = self.p as u64;
        let entries = self.entries.iter().map(|&a| (a as u64 * c as u64 % p) as u32).collect();
        OperatorMatrix { entries, ..*self }
    }

    pub fn apply(&self, v: &WeightVector) -> Result<WeightVector> {
        if v.space != self.domain || v.p != self.p {
            return Err(Error::ContextMismatch(format!("{:?}", self.domain), format!("{:?}", v.space)));
        }
        let (n, k) = (self.rows(), self.cols());
        let p = self.p as u64;
        let coeffs = (0..n)
            .map(|a| {
                let row = &self.entries[a * k..(a + 1) * k];
                (row.iter().zip(&v.coeffs).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p) as u32
            })
            .collect();
        Ok(WeightVector { space: self.codomain, p: self.p, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&c| c == 0)
    }

    /// JSON dump: `{"domain":[ones,twos],"codomain":[ones,twos],"p":p,"rows":[[…],…]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<&[u32]> = self.entries.chunks(self.cols().max(1)).take(self.rows()).collect();
        serde_json::json!({
            "domain": [self.domain.weight().0, self.domain.weight().1],
            "codomain": [self.codomain.weight().0, self.codomain.weight().1],
            "p": self.p,
            "rows": rows,
        })
    }
}

/// Matrix of `e^{(i)}` out of the weight space `(r - twos, twos)`; `None` when
/// the target is not a composition (the zero map).
pub fn divided_e(space: WeightSpace, i: u32, p: u32) -> Option<OperatorMatrix> {
    let target = WeightSpace::new(space.r, space.twos.checked_sub(i)?).ok()?;
    Some(OperatorMatrix::from_columns(space, target, p, |mask, col| {
        act_e_counts(space, mask, i, &mut |s| col[target.rank(s)] += 1)
    }))
}

/// Matrix of `f^{(i)}`; `None` when the target is not a composition.
pub fn divided_f(space: WeightSpace, i: u32, p: u32) -> Option<OperatorMatrix> {
    let twos = space.twos + i;
    if twos > space.r {
        return None;
    }
    let target = WeightSpace::new(space.r, twos).ok()?;
    Some(OperatorMatrix::from_columns(space, target, p, |mask, col| {
        act_f_counts(space, mask, i, &mut |s| col[target.rank(s)] += 1)
    }))
}

/// Integer matrix of `f^{(i)} e^{(i)}` on weight `λ`, before reduction.
pub fn realize_b_counts(space: WeightSpace, i: u32) -> Vec<u64> {
    let n = space.dim();
    let mut out = vec![0u64; n * n];
    if i > space.twos {
        return out;
    }
    for (col, mask) in space.basis().into_iter().enumerate() {
        act_e_counts(space, mask, i, &mut |s| {
            act_f_counts(space, s, i, &mut |t| out[space.rank(t) * n + col] += 1)
        });
    }
    out
}

/// `b(i)` as a matrix on the copy of `M^λ` in `E^{⊗r}`.
pub fn realize_b(lambda: (u64, u64), i: u32, p: u32) -> Result<OperatorMatrix> {
    check_prime(p)?;
    let space = WeightSpace::of_partition(lambda)?;
    let counts = realize_b_counts(space, i);
    let entries = counts.into_iter().map(|c| (c % p as u64) as u32).collect();
    Ok(OperatorMatrix { domain: space, codomain: space, p, entries })
}

/// An algebra element as a matrix: `Σ c_i b(i)`.
pub fn realize_element(x: &AlgebraElement) -> Result<OperatorMatrix> {
    let ctx = x.context();
    let space = WeightSpace::of_partition(ctx.lambda())?;
    let mut acc = OperatorMatrix::zero(space, space, ctx.p());
    for i in x.support() {
        acc = acc.add_scaled(&realize_b(ctx.lambda(), i as u32, ctx.p())?, x.coeff(i))?;
    }
    Ok(acc)
}

/// `x · v` for `x ∈ S_F(λ)` and `v ∈ M^λ`.
pub fn apply_element(x: &AlgebraElement, v: &WeightVector) -> Result<WeightVector> {
    let ctx = x.context();
    let space = WeightSpace::of_partition(ctx.lambda())?;
    if v.space != space || v.p != ctx.p() {
        return Err(Error::ContextMismatch(ctx.to_string(), format!("{:?} mod {}", v.space, v.p)));
    }
    let mut acc = WeightVector::zero(space, v.p);
    for i in x.support() {
        acc = acc.add(&act_b(v, i as u32).scale(x.coeff(i) as i64))?;
    }
    Ok(acc)
}

/// The polytabloid generating the copy of `S^μ` in `M^λ`.
///
/// The `μ`-tableau has columns `(1,2), (3,4), …, (2μ2-1, 2μ2)` and every
/// other position in its first row. `ω` sums the weight-`λ` basis tensors
/// carrying `v_2` at each of `2, 4, …, 2μ2`; the result is
/// `ω · Π_k (1 - (2k-1 2k))`.
pub fn specht_generator(lambda: (u64, u64), mu: (u64, u64), p: u32) -> Result<WeightVector> {
    check_prime(p)?;
    if mu.1 > mu.0 {
        return Err(Error::InvalidPartition(mu.0, mu.1));
    }
    let space = WeightSpace::of_partition(lambda)?;
    if mu.0 + mu.1 != lambda.0 + lambda.1 {
        return Err(Error::SizeMismatch(lambda, mu));
    }
    if mu.1 > lambda.1 {
        return Err(Error::Precondition(format!("{mu:?} does not dominate {lambda:?}")));
    }
    let columns = mu.1 as u32;
    let forced: u32 = (1..=columns).map(|k| 1u32 << (2 * k - 1)).sum();
    let terms: Vec<(u32, i64)> = space
        .basis()
        .into_iter()
        .filter(|&s| s & forced == forced)
        .map(|s| (s, 1))
        .collect();
    let mut v = WeightVector::from_terms(space, p, &terms)?;
    for k in 1..=columns {
        v = v.sub(&v.swap_positions(2 * k - 1, 2 * k))?;
    }
    Ok(v)
}

/// `x ↦ (v_1 ⊗ v_2 - v_2 ⊗ v_1) ⊗ x`, from weight `λ` to `λ + (1,1)`.
pub fn j_map(v: &WeightVector) -> Result<WeightVector> {
    let target = WeightSpace::new(v.space.r + 2, v.space.twos + 1)?;
    let mut out = WeightVector::zero(target, v.p);
    let p = v.p;
    for (mask, c) in v.terms() {
        let shifted = mask << 2;
        let plus = target.rank(shifted | 0b10);
        let minus = target.rank(shifted | 0b01);
        out.coeffs[plus] = (out.coeffs[plus] + c) % p;
        out.coeffs[minus] = (out.coeffs[minus] + p - c) % p;
    }
    Ok(out)
}

/// Whether `j` is injective on the weight space: each basis image owns a
/// basis tensor (`v_1 ⊗ v_2 ⊗ …`) that no other image touches.
pub fn j_injective(space: WeightSpace, p: u32) -> Result<bool> {
    let target = WeightSpace::new(space.r + 2, space.twos + 1)?;
    let mut hits = vec![0u32; target.dim()];
    let images: Vec<WeightVector> = space
        .basis()
        .into_iter()
        .map(|s| j_map(&WeightVector::basis_vector(space, p, s)?))
        .collect::<Result<_>>()?;
    for img in &images {
        for (mask, _) in img.terms() {
            hits[target.rank(mask)] += 1;
        }
    }
    Ok(images
        .iter()
        .all(|img| img.terms().iter().any(|&(mask, _)| hits[target.rank(mask)] == 1)))
}

/// Upper bounds on `r` for each family of oracle checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Structure constants and matrix idempotency.
    pub algebra_r: u32,
    /// Commutation of `j` with the idempotents, on a full basis.
    pub commutation_r: u32,
    /// Polytabloid labelling of the summands.
    pub specht_r: u32,
}

impl OracleLimits {
    /// `r_max` for the algebra checks, capped at 8 and 10 for the module
    /// checks.
    pub fn capped(r_max: u32) -> Self {
        OracleLimits { algebra_r: r_max, commutation_r: r_max.min(8), specht_r: r_max.min(10) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleChecks {
    /// Matrix products of realized `b(i)` match the structure constants.
    pub structure_constants: bool,
    /// Realized `e_{m,g}` square to themselves.
    pub idempotent_matrices: bool,
    /// `j(e x) = e j(x)` on every basis vector.
    pub j_commutation: bool,
    /// `e_{m,g'} ε_μ ≠ 0` exactly when `g' = λ2 - μ2`.
    pub specht_labels: bool,
    /// `j(ε_μ) = ε_{μ+(1,1)}`.
    pub j_polytabloid: bool,
    pub j_injective: bool,
}

impl OracleChecks {
    pub fn all(&self) -> bool {
        self.structure_constants
            && self.idempotent_matrices
            && self.j_commutation
            && self.specht_labels
            && self.j_polytabloid
            && self.j_injective
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub limits: OracleLimits,
    pub checks: OracleChecks,
    /// Number of individual comparisons made, per family in check order.
    pub comparisons: [usize; 6],
    pub failures: Vec<String>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.checks.all()
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let names = [
            "structure constants",
            "idempotent matrices",
            "j commutation",
            "specht labels",
            "j polytabloid",
            "j injective",
        ];
        let flags = [
            self.checks.structure_constants,
            self.checks.idempotent_matrices,
            self.checks.j_commutation,
            self.checks.specht_labels,
            self.checks.j_polytabloid,
            self.checks.j_injective,
        ];
        for ((name, ok), n) in names.iter().zip(flags).zip(self.comparisons) {
            let _ = writeln!(s, "{:<20} {:>4} ({n} comparisons)", name, if ok { "PASS" } else { "FAIL" });
        }
        s
    }
}

fn partitions_r(max_r: u32) -> Vec<(u64, u64)> {
    partitions_up_to(max_r as u64)
}

/// Every product `b(i) b(j)` in `S_F(λ)` against the product of realized matrices:
/// returns `(comparisons, failures)`.
pub fn check_structure_constants(lambda: (u64, u64), p: u32) -> Result<(usize, Vec<String>)> {
    let ctx = AlgebraContext::new(lambda.0, lambda.1, p)?;
    let top = lambda.1 as u32;
    let mats: Vec<OperatorMatrix> = (0..=top).map(|i| realize_b(lambda, i, p)).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut n = 0;
    for i in 0..=top {
        for j in 0..=top {
            let direct = mats[i as usize].compose(&mats[j as usize])?;
            let product = AlgebraElement::basis(ctx, i as u64).mul(&AlgebraElement::basis(ctx, j as u64))?;
            let mut expected = OperatorMatrix::zero(mats[0].domain, mats[0].domain, p);
            for h in product.support() {
                expected = expected.add_scaled(&mats[h as usize], product.coeff(h))?;
            }
            n += 1;
            if direct != expected {
                failures.push(format!("lambda {lambda:?}: b({i}) b({j}) disagrees with realized matrices"));
            }
        }
    }
    Ok((n, failures))
}

fn check_idempotent_matrices(lambda: (u64, u64)) -> Result<(usize, Vec<String>)> {
    let ctx = AlgebraContext::new(lambda.0, lambda.1, 3)?;
    let mut failures = Vec::new();
    let mut n = 0;
    for rec in summands(&ctx)? {
        let mat = realize_element(&rec.idempotent)?;
        n += 1;
        if mat.compose(&mat)? != mat || mat.is_zero() {
            failures.push(format!("lambda {lambda:?}: matrix of e_{{{},{}}} is not idempotent", ctx.m(), rec.g));
        }
    }
    Ok((n, failures))
}

/// `j(e x) = e j(x)` for every idempotent `e` of `S_F(λ)` and every basis `x`.
pub fn check_j_commutation(lambda: (u64, u64)) -> Result<(usize, Vec<String>)> {
    let ctx = AlgebraContext::new(lambda.0, lambda.1, 3)?;
    let big = AlgebraContext::new(lambda.0 + 1, lambda.1 + 1, 3)?;
    let space = WeightSpace::of_partition(lambda)?;
    let mut failures = Vec::new();
    let mut n = 0;
    for g in 0..=big.lambda2() {
        let small_e = build(&ctx, g)?;
        let big_e = build(&big, g)?;
        if small_e.is_zero() && big_e.is_zero() {
            continue;
        }
        for mask in space.basis() {
            let x = WeightVector::basis_vector(space, 3, mask)?;
            let lhs = j_map(&apply_element(&small_e, &x)?)?;
            let rhs = apply_element(&big_e, &j_map(&x)?)?;
            n += 1;
            if lhs != rhs {
                failures.push(format!("lambda {lambda:?}, g {g}: j e != e j on {:?}", positions(mask)));
            }
        }
    }
    Ok((n, failures))
}

/// For every pair of summand labels `μ` and idempotents `e_{m,g'}` of `M^λ`,
/// `e_{m,g'} ε_μ ≠ 0` iff `g' = λ2 - μ2`.
pub fn check_specht_labels(lambda: (u64, u64)) -> Result<(usize, Vec<String>)> {
    let ctx = AlgebraContext::new(lambda.0, lambda.1, 3)?;
    let recs = summands(&ctx)?;
    let mut failures = Vec::new();
    let mut n = 0;
    for target in &recs {
        let eps = specht_generator(lambda, target.mu, 3)?;
        for rec in &recs {
            let image = apply_element(&rec.idempotent, &eps)?;
            n += 1;
            if image.is_zero() == (rec.g == target.g) {
                failures.push(format!(
                    "lambda {lambda:?}: e_{{{},{}}} on the polytabloid of {:?} is {}",
                    ctx.m(),
                    rec.g,
                    target.mu,
                    if image.is_zero() { "zero" } else { "non-zero" }
                ));
            }
        }
    }
    Ok((n, failures))
}

fn check_j_polytabloid(lambda: (u64, u64)) -> Result<(usize, Vec<String>)> {
    let mut failures = Vec::new();
    let mut n = 0;
    for mu2 in 0..=lambda.1 {
        let mu = (lambda.0 + lambda.1 - mu2, mu2);
        if mu.1 > mu.0 {
            continue;
        }
        let lhs = j_map(&specht_generator(lambda, mu, 3)?)?;
        let rhs = specht_generator((lambda.0 + 1, lambda.1 + 1), (mu.0 + 1, mu.1 + 1), 3)?;
        n += 1;
        if lhs != rhs {
            failures.push(format!("lambda {lambda:?}, mu {mu:?}: j(eps) differs from the shifted polytabloid"));
        }
    }
    Ok((n, failures))
}

type CheckFn = fn((u64, u64)) -> Result<(usize, Vec<String>)>;

fn run_family(max_r: u32, check: CheckFn) -> Result<(bool, usize, Vec<String>)> {
    let results: Vec<(usize, Vec<String>)> = partitions_r(max_r).into_par_iter().map(check).collect::<Result<_>>()?;
    let n = results.iter().map(|r| r.0).sum();
    let failures: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    Ok((failures.is_empty(), n, failures))
}

/// Runs every oracle comparison over all two-row `λ` within the limits.
pub fn cross_validate_with(limits: OracleLimits) -> Result<OracleReport> {
    let (sc, n0, f0) = run_family(limits.algebra_r, |l| check_structure_constants(l, 3))?;
    let (im, n1, f1) = run_family(limits.algebra_r, check_idempotent_matrices)?;
    let (jc, n2, f2) = run_family(limits.commutation_r, check_j_commutation)?;
    let (sl, n3, f3) = run_family(limits.specht_r, check_specht_labels)?;
    let (jp, n4, f4) = run_family(limits.specht_r, check_j_polytabloid)?;
    let (ji, n5, f5) = run_family(limits.algebra_r, |l| {
        let ok = j_injective(WeightSpace::of_partition(l)?, 3)?;
        Ok((1, if ok { vec![] } else { vec![format!("j is not injective on {l:?}")] }))
    })?;
    let failures = [f0, f1, f2, f3, f4, f5].concat();
    Ok(OracleReport {
        limits,
        checks: OracleChecks {
            structure_constants: sc,
            idempotent_matrices: im,
            j_commutation: jc,
            specht_labels: sl,
            j_polytabloid: jp,
            j_injective: ji,
        },
        comparisons: [n0, n1, n2, n3, n4, n5],
        failures,
    })
}

pub fn cross_validate(r_max: u32) -> Result<OracleReport> {
    cross_validate_with(OracleLimits::capped(r_max))
}
