//! Young-module decomposition of `M^λ` in characteristic 3.
//!
//! Every `g <= λ2` with `B(m, g) ≢ 0 (mod 3)` labels the summand `Y^μ`,
//! `μ = (λ1 + g, λ2 - g)`, cut out by `e_{m,g}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraContext, AlgebraElement};
use crate::error::{Error, Result};
use crate::idempotent::build;
use crate::padic::{big_b, check_prime};

/// One indecomposable summand `Y^μ` of `M^λ` and its idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandRecord {
    pub g: u64,
    pub mu: (u64, u64),
    pub idempotent: AlgebraElement,
    pub b_value: u32,
}

impl SummandRecord {
    fn to_json(&self) -> SummandJson {
        SummandJson {
            g: self.g,
            mu: [self.mu.0, self.mu.1],
            b: self.b_value,
            idempotent: self.idempotent.coeffs().to_vec(),
        }
    }
}

/// `μ = (λ1 + g, λ2 - g)`; `None` when `g > λ2`.
pub fn label(lambda: (u64, u64), g: u64) -> Option<(u64, u64)> {
    (g <= lambda.1).then(|| (lambda.0 + g, lambda.1 - g))
}

/// `g = λ2 - μ2`; `None` unless `μ ⊵ λ` in the same size.
pub fn unlabel(lambda: (u64, u64), mu: (u64, u64)) -> Option<u64> {
    (mu.0 + mu.1 == lambda.0 + lambda.1 && mu.1 <= lambda.1 && mu.1 <= mu.0).then(|| lambda.1 - mu.1)
}

/// Dominance `μ ⊵ λ` for two-row partitions of the same size: `μ2 <= λ2`.
pub fn dominates(mu: (u64, u64), lambda: (u64, u64)) -> bool {
    mu.1 <= lambda.1
}

/// The summands of `M^λ`, ordered by `g`.
pub fn summands(ctx: &AlgebraContext) -> Result<Vec<SummandRecord>> {
    if ctx.p() != 3 {
        return Err(Error::UnsupportedCharacteristic(ctx.p()));
    }
    let m = ctx.m();
    (0..=ctx.lambda2())
        .filter(|&g| big_b(m, g, 3) != 0)
        .map(|g| {
            Ok(SummandRecord {
                g,
                mu: (ctx.lambda1() + g, ctx.lambda2() - g),
                idempotent: build(ctx, g)?,
                b_value: big_b(m, g, 3),
            })
        })
        .collect()
}

fn check_two_row(part: (u64, u64)) -> Result<()> {
    if part.1 > part.0 {
        Err(Error::InvalidPartition(part.0, part.1))
    } else {
        Ok(())
    }
}

/// The `p`-Kostka number `[M^λ : Y^μ]`, which is 0 or 1 for two rows.
pub fn kostka(lambda: (u64, u64), mu: (u64, u64), p: u32) -> Result<u8> {
    check_two_row(lambda)?;
    check_two_row(mu)?;
    check_prime(p)?;
    if lambda.0 + lambda.1 != mu.0 + mu.1 {
        return Err(Error::SizeMismatch(lambda, mu));
    }
    if !dominates(mu, lambda) {
        return Ok(0);
    }
    let (m, g) = (lambda.0 - lambda.1, lambda.1 - mu.1);
    Ok(u8::from(big_b(m, g, p) != 0))
}

/// Outcome of the complete-set check for one `λ`.
///
/// Primitivity is certified by counting: the idempotents are non-zero,
/// orthogonal and sum to `1`, and their number equals the number of
/// indecomposable summands of `M^λ`, so none of them can split further.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub lambda: (u64, u64),
    pub p: u32,
    pub summands: Vec<SummandRecord>,
    pub checks: Checks,
    /// Human-readable description of every failed check.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    /// Every `e` satisfies `e^2 = e` and is non-zero.
    pub idempotent: bool,
    /// `e_{m,g} e_{m,d} = 0` for `g != d`.
    pub orthogonal: bool,
    /// `Σ e = 1`.
    pub sum_to_one: bool,
    /// Number of idempotents equals `|{g <= λ2 : B(m,g) ≢ 0}|`.
    pub count_match: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.idempotent && self.orthogonal && self.sum_to_one && self.count_match
    }
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.checks.all()
    }

    pub fn count(&self) -> usize {
        self.summands.len()
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            lambda: [self.lambda.0, self.lambda.1],
            p: self.p,
            summands: self.summands.iter().map(SummandRecord::to_json).collect(),
            checks: self.checks,
        }
    }
}

/// Wire form of a summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub g: u64,
    pub mu: [u64; 2],
    #[serde(rename = "B")]
    pub b: u32,
    pub idempotent: Vec<u32>,
}

/// Wire form of a report:
/// `{"lambda":[λ1,λ2],"p":3,"summands":[…],"checks":{…}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub lambda: [u64; 2],
    pub p: u32,
    pub summands: Vec<SummandJson>,
    pub checks: Checks,
}

/// Checks that the `e_{m,g}` form a complete set of primitive orthogonal
/// idempotents of `S_F(λ)`. Mathematical failures land in the report.
pub fn verify_complete_set(ctx: &AlgebraContext) -> Result<VerificationReport> {
    let records = summands(ctx)?;
    let mut failures = Vec::new();
    let m = ctx.m();

    let mut idempotent = true;
    for rec in &records {
        if rec.idempotent.is_zero() || !rec.idempotent.is_idempotent() {
            idempotent = false;
            failures.push(format!("e_{{{m},{}}} is not a non-zero idempotent", rec.g));
        }
    }

    let mut orthogonal = true;
    for (k, a) in records.iter().enumerate() {
        for b in &records[k + 1..] {
            if !a.idempotent.mul(&b.idempotent)?.is_zero() {
                orthogonal = false;
                failures.push(format!("e_{{{m},{}}} e_{{{m},{}}} != 0", a.g, b.g));
            }
        }
    }

    let mut total = AlgebraElement::zero(*ctx);
    for rec in &records {
        total = total.add(&rec.idempotent)?;
    }
    let sum_to_one = total == AlgebraElement::one(*ctx);
    if !sum_to_one {
        failures.push(format!("sum of idempotents is {total}"));
    }

    let expected = (0..=ctx.lambda2()).filter(|&g| big_b(m, g, 3) != 0).count();
    let nonzero = records.iter().filter(|r| !r.idempotent.is_zero()).count();
    let count_match = nonzero == expected;
    if !count_match {
        failures.push(format!("{nonzero} non-zero idempotents, expected {expected}"));
    }

    Ok(VerificationReport {
        lambda: ctx.lambda(),
        p: 3,
        summands: records,
        checks: Checks { idempotent, orthogonal, sum_to_one, count_match },
        failures,
    })
}

/// All two-row partitions `(λ1, λ2)` with `λ1 + λ2 <= max_r`, sorted.
pub fn partitions_up_to(max_r: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for r in 0..=max_r {
        for l2 in 0..=r / 2 {
            out.push((r - l2, l2));
        }
    }
    out.sort_unstable();
    out
}

/// Verifies every listed `λ` on `jobs` worker threads (`0` = rayon's
/// default). Reports come back sorted by `λ`.
pub fn verify_many(lambdas: &[(u64, u64)], jobs: usize) -> Result<Vec<VerificationReport>> {
    let run = || {
        lambdas
            .par_iter()
            .map(|&(l1, l2)| verify_complete_set(&AlgebraContext::new(l1, l2, 3)?))
            .collect::<Result<Vec<_>>>()
    };
    let mut reports = if jobs == 1 {
        lambdas
            .iter()
            .map(|&(l1, l2)| verify_complete_set(&AlgebraContext::new(l1, l2, 3)?))
            .collect::<Result<Vec<_>>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        pool.install(run)?
    };
    reports.sort_by_key(|r| r.lambda);
    Ok(reports)
}
