use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u128 = 10_000_000;
pub const BUDGET_ENV: &str = "BRAIDFAN_BUDGET";

/// Enumeration budget, overridable through `BRAIDFAN_BUDGET`.
pub fn budget() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn check(needed: u128) -> Result<()> {
    let budget = budget();
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}
