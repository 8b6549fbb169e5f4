//! The series laboratory: partial sums of `Σ (log n)^α / P(2^n - 1)`,
//! the exceptional-set classifiers, and the empirical checks of the known
//! lower bounds on `P(2^n - 1)`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{FactorBudget, Status};
use crate::cache::FactorCache;
use crate::density::delta;
use crate::error::ArithError;
use crate::mersenne::{
    congruent_factor_count, divisor_multiplier_set, factor_mersenne,
    largest_prime_factor_mersenne, trial_factor_u64, MersenneFactorization,
};
use crate::sieve::totient_sieve;
use crate::FactoredInteger;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Compensated accumulator; with a fixed summation order the reports are
/// reproducible to 1e-12 across runs.
#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TermStatus {
    Exact,
    Bounded,
}

/// One summand `(log n)^α / P(2^n - 1)`. A Partial factorization yields an
/// interval `[0, term_high]`: the cofactor could hide an arbitrarily large
/// prime, so no positive lower estimate of the term is honest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermRecord {
    pub n: u64,
    pub alpha: f64,
    #[serde(with = "crate::decimal::opt")]
    pub p_exact: Option<BigUint>,
    #[serde(with = "crate::decimal")]
    pub p_lower: BigUint,
    pub term_high: f64,
    pub term_low: f64,
    pub status: TermStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedTerm {
    pub n: u64,
    pub reason: String,
}

/// Interval-valued partial sum over `2 <= n <= n_max` (the `n = 1` summand
/// is skipped: `P(2^1 - 1) = P(1)` is undefined).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialSumReport {
    pub alpha: f64,
    pub n_max: u64,
    pub sum_low: f64,
    pub sum_high: f64,
    pub terms: Vec<TermRecord>,
    pub excluded: Vec<ExcludedTerm>,
}

/// Sums the series terms in ascending order with compensated accumulation.
/// Partial factorizations surface as Bounded records and excluded entries,
/// never as aborts.
pub fn partial_sum_sigma(
    alpha: f64,
    n_max: u64,
    cache: Option<&FactorCache>,
    budget: &FactorBudget,
) -> PartialSumReport {
    assert!(n_max >= 2, "n_max must be at least 2");
    let mut low = KahanSum::default();
    let mut high = KahanSum::default();
    let mut terms = Vec::with_capacity((n_max - 1) as usize);
    let mut excluded = Vec::new();
    for n in 2..=n_max {
        let mf = factor_mersenne(n, budget, cache);
        let (p_lower, p_exact) =
            largest_prime_factor_mersenne(&mf).expect("n >= 2 by construction");
        let weight = (n as f64).ln().powf(alpha);
        let denominator = p_lower.to_f64().unwrap_or(f64::INFINITY).max(1.0);
        let term_high = weight / denominator;
        let (term_low, status) = match &p_exact {
            Some(_) => (term_high, TermStatus::Exact),
            None => {
                excluded.push(ExcludedTerm {
                    n,
                    reason: format!(
                        "composite cofactor remains after budget (trial bound {}, rho cap {})",
                        mf.trial_bound(),
                        budget.rho_iteration_cap
                    ),
                });
                (0.0, TermStatus::Bounded)
            }
        };
        low.add(term_low);
        high.add(term_high);
        terms.push(TermRecord {
            n,
            alpha,
            p_exact,
            p_lower,
            term_high,
            term_low,
            status,
        });
    }
    PartialSumReport {
        alpha,
        n_max,
        sum_low: low.value(),
        sum_high: high.value(),
        terms,
        excluded,
    }
}

/// Membership flags for the proof's exceptional sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationFlags {
    pub n: u64,
    /// `τ(n) >= (log n)^3`
    pub in_e: bool,
    /// `P(2^n - 1) > n (log n)^{1+α} (loglog n)^2`; absent when the largest
    /// prime factor is not exact or `loglog n` is not positive.
    pub in_f: Option<bool>,
    #[serde(with = "crate::decimal::opt")]
    pub d_plus: Option<BigUint>,
    /// `D+(n) <= (log n)^{1+α} (loglog n)^2`, evaluated only outside E and F
    /// for n >= 16 with D(n) known.
    pub d_plus_bound_holds: Option<bool>,
}

/// τ of a native integer by trial factorization.
fn tau_u64(n: u64) -> u64 {
    trial_factor_u64(n)
        .iter()
        .fold(1u64, |acc, (_, e)| acc * (*e as u64 + 1))
}

fn phi_u64(n: u64) -> u64 {
    trial_factor_u64(n)
        .iter()
        .fold(1u64, |acc, (p, e)| acc * p.pow(e - 1) * (p - 1))
}

fn omega_u64(n: u64) -> u64 {
    trial_factor_u64(n).len() as u64
}

fn loglog(n: u64) -> f64 {
    (n as f64).ln().ln()
}

/// Classifies one exponent against the sets E and F and the multiplier
/// bound. Flags that would need an unknown `P(2^n - 1)` stay absent rather
/// than defaulting to false.
pub fn classify_n(
    alpha: f64,
    mf: &MersenneFactorization,
) -> Result<ClassificationFlags, ArithError> {
    let n = mf.n();
    if n < 2 {
        return Err(ArithError::OutOfRange("classification needs n >= 2"));
    }
    let log_n = (n as f64).ln();
    let in_e = tau_u64(n) as f64 >= log_n.powi(3);

    let exact_p = match mf.status() {
        Status::Complete => largest_prime_factor_mersenne(mf)?.1,
        Status::Partial => None,
    };
    // loglog guard: only evaluate for n > e
    let in_f = match (&exact_p, n >= 3) {
        (Some(p), true) => {
            let threshold = n as f64 * log_n.powf(1.0 + alpha) * loglog(n).powi(2);
            Some(p.to_f64().unwrap_or(f64::INFINITY) > threshold)
        }
        _ => None,
    };
    let d_plus = match mf.status() {
        Status::Complete => divisor_multiplier_set(mf)?.d_plus,
        Status::Partial => None,
    };
    let d_plus_bound_holds = match (&d_plus, in_f) {
        (Some(d), Some(false)) if n >= 16 && !in_e => {
            let bound = log_n.powf(1.0 + alpha) * loglog(n).powi(2);
            Some(d.to_f64().unwrap_or(f64::INFINITY) <= bound)
        }
        _ => None,
    };
    Ok(ClassificationFlags {
        n,
        in_e,
        in_f,
        d_plus,
        d_plus_bound_holds,
    })
}

/// Empirical constant of the divisor-counting lower bound:
/// `#{p | 2^n - 1 : p = 1 (mod n)} * loglog P(2^n - 1) / log(2 + Δ(n)/τ(n))`.
pub fn stewart_lemma_ratio(mf: &MersenneFactorization) -> Result<f64, ArithError> {
    if !mf.is_complete() {
        return Err(ArithError::PartialFactorization);
    }
    if mf.n() <= 6 {
        return Err(ArithError::OutOfRange("the ratio needs n > 6"));
    }
    let count = congruent_factor_count(mf)? as f64;
    let (_, exact) = largest_prime_factor_mersenne(mf)?;
    let p = exact.expect("Complete factorization has an exact P");
    let f_n = FactoredInteger::of_u64(mf.n());
    let delta_over_tau = delta(&f_n)?.to_f64() / tau_u64(mf.n()) as f64;
    let p_f = p.to_f64().unwrap_or(f64::INFINITY);
    Ok(count * p_f.ln().ln() / (2.0 + delta_over_tau).ln())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchinzelViolation {
    pub n: u64,
    #[serde(with = "crate::decimal")]
    pub p: BigUint,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchinzelReport {
    pub n_lo: u64,
    pub n_hi: u64,
    pub checked: u64,
    pub violations: Vec<SchinzelViolation>,
    /// Partial factorizations whose lower bound does not already certify
    /// `P >= 2n + 1`.
    pub unverified: Vec<u64>,
}

/// Scans `[n_lo, n_hi]` for violations of `P(2^n - 1) >= 2n + 1`. The bound
/// starts at n = 13; earlier exponents are admitted only with `permissive`
/// (they do violate it, which is the point of the flag).
pub fn schinzel_check(
    n_lo: u64,
    n_hi: u64,
    permissive: bool,
    cache: Option<&FactorCache>,
    budget: &FactorBudget,
) -> Result<SchinzelReport, ArithError> {
    if n_lo < 2 || n_lo > n_hi {
        return Err(ArithError::OutOfRange("need 2 <= n_lo <= n_hi"));
    }
    if n_lo < 13 && !permissive {
        return Err(ArithError::OutOfRange(
            "the bound holds from n = 13; pass permissive to scan below",
        ));
    }
    let mut violations = Vec::new();
    let mut unverified = Vec::new();
    let mut checked = 0u64;
    for n in n_lo..=n_hi {
        let mf = factor_mersenne(n, budget, cache);
        let (lower, exact) = largest_prime_factor_mersenne(&mf)?;
        let bound = 2 * n + 1;
        match exact {
            Some(p) => {
                checked += 1;
                if p < BigUint::from(bound) {
                    violations.push(SchinzelViolation { n, p, bound });
                }
            }
            None if lower >= BigUint::from(bound) => checked += 1,
            None => unverified.push(n),
        }
    }
    Ok(SchinzelReport {
        n_lo,
        n_hi,
        checked,
        violations,
        unverified,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StewartAException {
    pub n: u64,
    #[serde(with = "crate::decimal")]
    pub p: BigUint,
    pub threshold: f64,
    pub running_density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StewartAReport {
    pub n_max: u64,
    pub epsilon: f64,
    pub exceptions: Vec<StewartAException>,
    pub unverified: Vec<u64>,
    pub density: f64,
}

/// Exceptions to `P(2^n - 1) > n (log n)^2 / (f(n) loglog n)` with
/// `f(n) = (log n)^ε`, scanned over `3 <= n <= n_max`. The exceptional set
/// has density zero asymptotically but is not empty; this reports it, it
/// does not assert about it.
pub fn stewart_a_exceptions(
    n_max: u64,
    epsilon: f64,
    cache: Option<&FactorCache>,
    budget: &FactorBudget,
) -> Result<StewartAReport, ArithError> {
    if n_max < 16 {
        return Err(ArithError::OutOfRange("n_max must be at least 16"));
    }
    let mut exceptions = Vec::new();
    let mut unverified = Vec::new();
    for n in 3..=n_max {
        let log_n = (n as f64).ln();
        let threshold = n as f64 * log_n.powi(2) / (log_n.powf(epsilon) * loglog(n));
        let mf = factor_mersenne(n, budget, cache);
        let (lower, exact) = largest_prime_factor_mersenne(&mf)?;
        match exact {
            Some(p) => {
                if p.to_f64().unwrap_or(f64::INFINITY) <= threshold {
                    let running_density = (exceptions.len() + 1) as f64 / n as f64;
                    exceptions.push(StewartAException {
                        n,
                        p,
                        threshold,
                        running_density,
                    });
                }
            }
            // a lower bound above the threshold already certifies n is fine
            None if lower.to_f64().unwrap_or(0.0) > threshold => {}
            None => unverified.push(n),
        }
    }
    let density = exceptions.len() as f64 / n_max as f64;
    Ok(StewartAReport {
        n_max,
        epsilon,
        exceptions,
        unverified,
        density,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StewartBReport {
    pub n_max: u64,
    pub kappa: f64,
    pub big_c: f64,
    pub qualifying: u64,
    pub min_ratio: Option<f64>,
    pub argmin: Option<u64>,
    /// Qualifying exponents whose ratio falls below the reference constant.
    pub below_reference: Vec<u64>,
    pub unverified: Vec<u64>,
}

/// Over exponents with `ω(n) < κ loglog n`, reports the minimum of
/// `P(2^n - 1) 2^{ω(n)} / (φ(n) log n)` — the empirical `C(κ)`. `big_c` is a
/// reference line for the report, not an assertion.
pub fn stewart_b_check(
    n_max: u64,
    kappa: f64,
    big_c: f64,
    cache: Option<&FactorCache>,
    budget: &FactorBudget,
) -> Result<StewartBReport, ArithError> {
    if kappa >= 1.0 / std::f64::consts::LN_2 {
        return Err(ArithError::OutOfRange("kappa must be below 1/log 2"));
    }
    if n_max < 16 {
        return Err(ArithError::OutOfRange("n_max must be at least 16"));
    }
    let mut qualifying = 0u64;
    let mut min_ratio: Option<f64> = None;
    let mut argmin = None;
    let mut below_reference = Vec::new();
    let mut unverified = Vec::new();
    for n in 3..=n_max {
        let omega = omega_u64(n);
        if (omega as f64) >= kappa * loglog(n) {
            continue;
        }
        qualifying += 1;
        let mf = factor_mersenne(n, budget, cache);
        let (_, exact) = largest_prime_factor_mersenne(&mf)?;
        let Some(p) = exact else {
            unverified.push(n);
            continue;
        };
        let ratio = p.to_f64().unwrap_or(f64::INFINITY) * (omega as f64).exp2()
            / (phi_u64(n) as f64 * (n as f64).ln());
        if min_ratio.is_none_or(|m| ratio < m) {
            min_ratio = Some(ratio);
            argmin = Some(n);
        }
        if ratio < big_c {
            below_reference.push(n);
        }
    }
    Ok(StewartBReport {
        n_max,
        kappa,
        big_c,
        qualifying,
        min_ratio,
        argmin,
        below_reference,
        unverified,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauSumCheck {
    pub x: u64,
    pub sum: u64,
    /// `x log x + (2γ - 1) x`, the Dirichlet main term.
    pub reference: f64,
}

/// Exact `Σ_{n <= x} τ(n)` by the hyperbola identity
/// `2 Σ_{k <= sqrt(x)} floor(x/k) - floor(sqrt(x))^2`.
pub fn tau_sum_check(x: u64) -> TauSumCheck {
    assert!(x >= 1);
    let r = x.isqrt();
    let sum = 2 * (1..=r).map(|k| x / k).sum::<u64>() - r * r;
    let xf = x as f64;
    TauSumCheck {
        x,
        sum,
        reference: xf * xf.ln() + (2.0 * EULER_GAMMA - 1.0) * xf,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiMinReport {
    pub x_lo: u64,
    pub x_hi: u64,
    pub argmin: u64,
    /// `φ(n) loglog n / n` at the minimizer.
    pub value: f64,
}

/// Locates the minimal order of the Euler function on `[x_lo, x_hi]`: the
/// `n` minimizing `φ(n)/n` exactly (ties to the smaller `n`; primorials
/// attain it), reported as the normalized value `φ(n) loglog n / n`.
pub fn phi_min_order(x_lo: u64, x_hi: u64) -> Result<PhiMinReport, ArithError> {
    if x_lo < 3 {
        return Err(ArithError::OutOfRange("x_lo must be at least 3 (loglog guard)"));
    }
    if x_lo > x_hi {
        return Err(ArithError::OutOfRange("x_lo must not exceed x_hi"));
    }
    let phi = totient_sieve(x_hi as usize);
    let mut best_n = x_lo;
    for n in x_lo..=x_hi {
        // exact comparison phi(n)/n < phi(best)/best
        if (phi[n as usize] as u128) * (best_n as u128)
            < (phi[best_n as usize] as u128) * (n as u128)
        {
            best_n = n;
        }
    }
    let value = phi[best_n as usize] as f64 * loglog(best_n) / best_n as f64;
    Ok(PhiMinReport {
        x_lo,
        x_hi,
        argmin: best_n,
        value,
    })
}

/// `#E(x)` for `E = { n : τ(n) >= (log n)^3 }`, by a divisor-count sieve.
pub fn e_set_count(x: u64) -> u64 {
    let x = x as usize;
    let mut tau = vec![0u32; x + 1];
    for d in 1..=x {
        let mut m = d;
        while m <= x {
            tau[m] += 1;
            m += d;
        }
    }
    (2..=x)
        .filter(|&n| tau[n] as f64 >= (n as f64).ln().powi(3))
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mf(n: u64) -> MersenneFactorization {
        factor_mersenne(n, &FactorBudget::default(), None)
    }

    #[test]
    fn sigma_small_exact_sum() {
        // alpha = 0, n in [2, 13]: all P values are tiny and known
        let report = partial_sum_sigma(0.0, 13, None, &FactorBudget::default());
        assert_eq!(report.terms.len(), 12);
        assert!(report.excluded.is_empty());
        assert!((report.sum_high - report.sum_low).abs() < 1e-15);
        // 1/3+1/7+1/5+1/31+1/7+1/127+1/17+1/73+1/31+1/89+1/13+1/8191
        let expected: f64 = [3.0, 7.0, 5.0, 31.0, 7.0, 127.0, 17.0, 73.0, 31.0, 89.0, 13.0, 8191.0]
            .iter()
            .map(|p| 1.0 / p)
            .sum();
        assert!((report.sum_high - expected).abs() < 1e-12);
        assert!((report.sum_high - 1.0523).abs() < 5e-4);
    }

    #[test]
    fn sigma_single_term() {
        let report = partial_sum_sigma(0.7, 2, None, &FactorBudget::default());
        assert_eq!(report.terms.len(), 1);
        let expected = (2f64.ln()).powf(0.7) / 3.0;
        assert!((report.sum_high - expected).abs() < 1e-15);
    }

    #[test]
    fn sigma_with_partial_terms_brackets() {
        // a starved budget leaves big exponents Partial
        let budget = FactorBudget {
            trial_division_bound: 1000,
            rho_iteration_cap: 8,
            wall_clock_cap_ms: 120_000,
            rng_seed: 1,
        };
        let report = partial_sum_sigma(0.0, 70, None, &budget);
        assert!(!report.excluded.is_empty());
        assert!(report.sum_low < report.sum_high);
        for t in &report.terms {
            assert!(t.term_low <= t.term_high);
            match t.status {
                TermStatus::Exact => assert_eq!(t.term_low, t.term_high),
                TermStatus::Bounded => assert_eq!(t.term_low, 0.0),
            }
        }
    }

    #[test]
    fn classify_examples() {
        let f2 = classify_n(0.4, &mf(2)).unwrap();
        assert!(f2.in_e); // tau(2) = 2 >= (log 2)^3
        let f12 = classify_n(0.4, &mf(12)).unwrap();
        assert!(!f12.in_e); // tau(12) = 6 < (log 12)^3 ~ 15.3
        let f5 = classify_n(0.4, &mf(5)).unwrap();
        assert_eq!(f5.in_f, Some(true)); // 31 > 5 (log 5)^1.4 (loglog 5)^2
        assert_eq!(f5.d_plus, Some(BigUint::from(6u32)));
    }

    #[test]
    fn classify_flags_absent_on_partial() {
        let budget = FactorBudget {
            trial_division_bound: 1000,
            rho_iteration_cap: 8,
            wall_clock_cap_ms: 120_000,
            rng_seed: 1,
        };
        let m = factor_mersenne(101, &budget, None);
        assert_eq!(m.status(), Status::Partial);
        let flags = classify_n(0.4, &m).unwrap();
        assert_eq!(flags.in_f, None);
        assert_eq!(flags.d_plus, None);
        assert_eq!(flags.d_plus_bound_holds, None);
    }

    #[test]
    fn lemma_ratio_examples() {
        // n = 12: count {13}, delta = 2, tau = 6, P = 13
        let r = stewart_lemma_ratio(&mf(12)).unwrap();
        let expected = 13f64.ln().ln() / (2.0 + 2.0 / 6.0).ln();
        assert!((r - expected).abs() < 1e-12);
        assert!((r - 1.112).abs() < 1e-3);

        // n = 11: count {23, 89}, delta(11) = 11, tau = 2
        let r = stewart_lemma_ratio(&mf(11)).unwrap();
        let expected = 2.0 * 89f64.ln().ln() / (2.0 + 11.0 / 2.0).ln();
        assert!((r - expected).abs() < 1e-12);

        // n = 13: 8191 prime, delta(13) = 13, tau = 2
        let r = stewart_lemma_ratio(&mf(13)).unwrap();
        let expected = 8191f64.ln().ln() / (2.0 + 13.0 / 2.0).ln();
        assert!((r - expected).abs() < 1e-12);

        assert!(stewart_lemma_ratio(&mf(6)).is_err());
    }

    #[test]
    fn schinzel_examples() {
        let budget = FactorBudget::default();
        let r = schinzel_check(13, 13, false, None, &budget).unwrap();
        assert!(r.violations.is_empty() && r.unverified.is_empty());
        // below the precondition only with the permissive flag
        assert!(schinzel_check(12, 13, false, None, &budget).is_err());
        let r = schinzel_check(12, 12, true, None, &budget).unwrap();
        assert_eq!(r.violations.len(), 1); // P(2^12 - 1) = 13 < 25
        assert_eq!(r.violations[0].p, BigUint::from(13u32));
        assert_eq!(r.violations[0].bound, 25);
    }

    #[test]
    fn tau_sum_values() {
        assert_eq!(tau_sum_check(100).sum, 482);
        assert_eq!(tau_sum_check(1).sum, 1);
        // against a direct divisor-count sieve
        let x = 3000u64;
        let mut tau = vec![0u64; (x + 1) as usize];
        for d in 1..=x as usize {
            let mut m = d;
            while m <= x as usize {
                tau[m] += 1;
                m += d;
            }
        }
        let direct: u64 = tau[1..].iter().sum();
        assert_eq!(tau_sum_check(x).sum, direct);
    }

    #[test]
    fn phi_min_examples() {
        let r = phi_min_order(3, 3).unwrap();
        assert_eq!(r.argmin, 3);
        let expected = (2.0 / 3.0) * 3f64.ln().ln();
        assert!((r.value - expected).abs() < 1e-12);
        assert!((r.value - 0.063).abs() < 1e-3);

        // on a modest range the smallest primorial-rich n wins
        let r = phi_min_order(100, 50_000).unwrap();
        assert_eq!(r.argmin, 30_030);

        assert!(phi_min_order(2, 10).is_err());
    }

    #[test]
    fn stewart_b_small_scan() {
        let r = stewart_b_check(120, 1.2, 0.5, None, &FactorBudget::default()).unwrap();
        assert!(r.qualifying > 0);
        let min = r.min_ratio.unwrap();
        assert!(min > 0.0);
        // n = 13 qualifies (omega = 1 < 1.2 * loglog 13 ~ 1.13) with ratio
        // 8191 * 2 / (12 log 13)
        let n13 = 8191.0 * 2.0 / (12.0 * 13f64.ln());
        assert!(min <= n13);
    }

    #[test]
    fn stewart_a_reports_small_irregulars() {
        let r = stewart_a_exceptions(40, 0.1, None, &FactorBudget::default()).unwrap();
        assert!(r.density >= 0.0 && r.density <= 1.0);
        // n = 6: P = 7 vs threshold 6 (log 6)^2 / ((log 6)^0.1 loglog 6)
        let log6 = 6f64.ln();
        let threshold6 = 6.0 * log6.powi(2) / (log6.powf(0.1) * log6.ln());
        if 7.0 <= threshold6 {
            assert!(r.exceptions.iter().any(|e| e.n == 6));
        }
        // 13 is never an exception
        assert!(r.exceptions.iter().all(|e| e.n != 13));
    }

    #[test]
    fn e_set_is_tiny() {
        // E = {2, 3, 4} at desk scale
        assert_eq!(e_set_count(1000), 3);
    }
}
