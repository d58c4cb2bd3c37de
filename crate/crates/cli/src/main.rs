use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use schur_core::decompose::{kostka, partitions_up_to, verify_complete_set, verify_many};
use schur_core::idempotent::build;
use schur_core::oracle::{cross_validate, MAX_POSITIONS};
use schur_core::padic::big_b;
use schur_core::AlgebraContext;

/// Header comment of the `kostka-table` CSV; bump the version when the
/// columns change.
const KOSTKA_HEADER: &str = "# schur kostka-table v1";

#[derive(Debug, Parser)]
#[command(name = "schur", version, about = "Idempotents and Young-module decompositions of two-row permutation modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the summands Y^mu of M^lambda with their idempotents.
    Decompose {
        #[arg(long, value_parser = parse_partition, value_name = "L1,L2")]
        lambda: (u64, u64),
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long)]
        json: bool,
    },
    /// Print e_{m,g} in S(lambda).
    Idempotent {
        #[arg(long, value_parser = parse_partition, value_name = "L1,L2")]
        lambda: (u64, u64),
        #[arg(long)]
        g: u64,
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long)]
        json: bool,
    },
    /// Check the complete set of idempotents for every lambda of size <= N.
    Verify {
        #[arg(long, value_name = "N")]
        max_r: u64,
        /// Worker threads; 0 lets the pool decide.
        #[arg(long, env = "SCHUR_JOBS", default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// CSV of [M^lambda : Y^mu] for all two-row lambda, mu of size <= N.
    KostkaTable {
        #[arg(long, value_name = "N")]
        max_r: u64,
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// Compare the algebra against explicit matrices on tensor space.
    OracleCheck {
        #[arg(long, value_name = "N")]
        max_r: u32,
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
}

fn parse_partition(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected L1,L2, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if b > a {
        return Err(format!("({a},{b}) is not a partition: need L1 >= L2"));
    }
    Ok((a, b))
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<schur_core::Error> for Failure {
    fn from(e: schur_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn require_three(p: u32) -> Result<(), Failure> {
    if p == 3 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("this command only supports p = 3, got p = {p}")))
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn decompose(lambda: (u64, u64), p: u32, json: bool) -> Result<String, Failure> {
    require_three(p)?;
    let ctx = AlgebraContext::new(lambda.0, lambda.1, p)?;
    let report = verify_complete_set(&ctx)?;
    if json {
        return Ok(to_json(&report.to_json()));
    }
    let mut out = String::new();
    let _ = writeln!(out, "M^({},{}) over F_3: {} summand(s), m = {}", lambda.0, lambda.1, report.count(), ctx.m());
    for rec in &report.summands {
        let _ = writeln!(
            out,
            "  g = {:<3} mu = ({},{})  B = {}  e = {}",
            rec.g,
            rec.mu.0,
            rec.mu.1,
            rec.b_value,
            rec.idempotent.to_signed_string()
        );
    }
    let c = report.checks;
    let _ = writeln!(
        out,
        "checks: idempotent {} orthogonal {} sum_to_one {} count_match {}",
        c.idempotent, c.orthogonal, c.sum_to_one, c.count_match
    );
    Ok(out)
}

fn idempotent(lambda: (u64, u64), g: u64, p: u32, json: bool) -> Result<(String, Option<String>), Failure> {
    require_three(p)?;
    let ctx = AlgebraContext::new(lambda.0, lambda.1, p)?;
    let m = ctx.m();
    let e = build(&ctx, g)?;
    let note = if g > ctx.lambda2() {
        Some(format!("e_{{{m},{g}}} = 0 since g = {g} exceeds lambda2 = {}", ctx.lambda2()))
    } else if big_b(m, g, 3) == 0 {
        Some(format!("e_{{{m},{g}}} = 0 since B({m},{g}) = C({}, {g}) is 0 mod 3", m + 2 * g))
    } else {
        None
    };
    let out = if json { to_json(&e) } else { format!("e_{{{m},{g}}} = {}", e.to_signed_string()) };
    Ok((out, note))
}

fn verify(max_r: u64, jobs: usize, p: u32) -> Result<String, Failure> {
    require_three(p)?;
    let lambdas = partitions_up_to(max_r);
    let reports = verify_many(&lambdas, jobs)?;
    let idempotents: usize = reports.iter().map(|r| r.count()).sum();
    let failed: Vec<_> = reports.iter().filter(|r| !r.ok()).collect();
    let mut out = format!(
        "verified {} partitions of size <= {max_r}, {idempotents} idempotents: {}\n",
        reports.len(),
        if failed.is_empty() { "PASS" } else { "FAIL" }
    );
    if let Some(first) = failed.first() {
        let _ = writeln!(out, "{} partition(s) failed; first counterexample:", failed.len());
        let _ = writeln!(out, "  lambda = ({},{}): {}", first.lambda.0, first.lambda.1, first.failures.join("; "));
        print!("{out}");
        return Err(Failure::Verification);
    }
    Ok(out)
}

fn kostka_table(max_r: u64, p: u32) -> Result<String, Failure> {
    let mut out = format!("{KOSTKA_HEADER}\nlambda1,lambda2,mu1,mu2,kostka\n");
    for lambda in partitions_up_to(max_r) {
        let r = lambda.0 + lambda.1;
        for mu2 in 0..=r / 2 {
            let mu = (r - mu2, mu2);
            let k = kostka(lambda, mu, p)?;
            let _ = writeln!(out, "{},{},{},{},{k}", lambda.0, lambda.1, mu.0, mu.1);
        }
    }
    Ok(out)
}

fn oracle_check(max_r: u32, p: u32) -> Result<String, Failure> {
    require_three(p)?;
    if max_r + 2 > MAX_POSITIONS {
        return Err(Failure::Usage(format!("--max-r must be at most {}", MAX_POSITIONS - 2)));
    }
    let report = cross_validate(max_r)?;
    let l = report.limits;
    let mut out = format!(
        "tensor oracle, r <= {} (j commutation r <= {}, labels r <= {}): {}\n",
        l.algebra_r,
        l.commutation_r,
        l.specht_r,
        if report.ok() { "PASS" } else { "FAIL" }
    );
    out.push_str(&report.summary());
    if let Some(first) = report.failures.first() {
        let _ = writeln!(out, "first counterexample: {first}");
        print!("{out}");
        return Err(Failure::Verification);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decompose { lambda, p, json } => decompose(lambda, p, json),
        Command::Idempotent { lambda, g, p, json } => idempotent(lambda, g, p, json).map(|(out, note)| {
            if let Some(note) = note {
                if json {
                    eprintln!("{note}");
                } else {
                    println!("{note}");
                }
            }
            out
        }),
        Command::Verify { max_r, jobs, p } => verify(max_r, jobs, p),
        Command::KostkaTable { max_r, p } => kostka_table(max_r, p),
        Command::OracleCheck { max_r, p } => oracle_check(max_r, p),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(1),
    }
}
