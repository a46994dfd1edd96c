//! Right-hand-side evaluators for the asymptotic statements, always with
//! implied constant 1 and `q^{o(1)} = 1`. These feed report-only scans;
//! none of them is a pass/fail gate on its own.

use std::collections::HashMap;

use crate::arithmetic::{decompose_burgess, decompose_crt, divisors, omega, tau};
use crate::congruences::{count_k, TupleBox};
use crate::error::{Error, Result};

/// Moment bound with the three-part decomposition `q = q1 * s * c`:
/// `q V^r + sqrt(q) s^{1/4} c^{1/2} V^{r+1/2}
///        + sqrt(q) c^{1/2 - 1/(16 r (r-1))} V^{2r}`.
pub fn rhs_main_moment(q: u64, v: u64, r: u32) -> Result<f64> {
    if r < 2 {
        return Err(Error::RankTooSmall(2));
    }
    let parts = decompose_burgess(q)?;
    let qf = q as f64;
    let vf = v as f64;
    let rf = r as f64;
    let c = parts.c as f64;
    let s = parts.s as f64;
    Ok(qf * vf.powf(rf)
        + qf.sqrt() * s.powf(0.25) * c.sqrt() * vf.powf(rf + 0.5)
        + qf.sqrt() * c.powf(0.5 - 1.0 / (16.0 * rf * (rf - 1.0))) * vf.powf(2.0 * rf))
}

/// Less precise corollary form using only the cubefull part `c`:
/// `q V^r + q^{3/4} c^{1/4} V^{r+1/2} + sqrt(q) c^{1/2 - 1/(16 r (r-1))} V^{2r}`.
pub fn rhs_cubefull_moment(q: u64, v: u64, r: u32) -> Result<f64> {
    if r < 2 {
        return Err(Error::RankTooSmall(2));
    }
    let c = decompose_burgess(q)?.c as f64;
    let qf = q as f64;
    let vf = v as f64;
    let rf = r as f64;
    Ok(qf * vf.powf(rf)
        + qf.powf(0.75) * c.powf(0.25) * vf.powf(rf + 0.5)
        + qf.sqrt() * c.powf(0.5 - 1.0 / (16.0 * rf * (rf - 1.0))) * vf.powf(2.0 * rf))
}

/// Short-sum bound in terms of the cubefull part:
/// `N^{1-1/r} q^{(r+1)/(4r^2)} c^{(r-1)/(4r^2) - 1/(32r^3)}`.
pub fn rhs_charsum(q: u64, n: u64, r: u32) -> Result<f64> {
    if r < 1 {
        return Err(Error::RankTooSmall(1));
    }
    let c = decompose_burgess(q)?.c as f64;
    let rf = r as f64;
    Ok((n as f64).powf(1.0 - 1.0 / rf)
        * (q as f64).powf((rf + 1.0) / (4.0 * rf * rf))
        * c.powf((rf - 1.0) / (4.0 * rf * rf) - 1.0 / (32.0 * rf * rf * rf)))
}

/// The classical Weil-driven moment bound `q V^r + sqrt(q) V^{2r}`.
pub fn rhs_weil_moment(q: u64, v: u64, r: u32) -> f64 {
    let qf = q as f64;
    let vf = v as f64;
    qf * vf.powi(r as i32) + qf.sqrt() * vf.powi(2 * r as i32)
}

/// The classical short-sum bound `N^{1-1/r} q^{(r+1)/(4r^2)}`, valid for
/// any `r <= 3`, and for every `r` when `q` is cubefree.
pub fn rhs_burgess(q: u64, n: u64, r: u32) -> Result<f64> {
    if r < 1 {
        return Err(Error::RankTooSmall(1));
    }
    if r > 3 && decompose_burgess(q)?.c != 1 {
        return Err(Error::Precondition(format!(
            "r={r} needs cubefree q, but {q} has a cubefull part"
        )));
    }
    let rf = r as f64;
    Ok((n as f64).powf(1.0 - 1.0 / rf) * (q as f64).powf((rf + 1.0) / (4.0 * rf * rf)))
}

/// Counter bound below the small-window threshold: plain `V^r`.
pub fn rhs_kloosterman_small(v: u64, r: u32) -> f64 {
    (v as f64).powi(r as i32)
}

/// Window cap `q^{1/(4r(r-1))}` under which the small-window bound applies.
pub fn kloosterman_window_cap(q: u64, r: u32) -> Result<u64> {
    if r < 2 {
        return Err(Error::RankTooSmall(2));
    }
    let exp = 1.0 / (4.0 * r as f64 * (r as f64 - 1.0));
    Ok((q as f64).powf(exp).floor() as u64)
}

/// Counter bound for arbitrary windows:
/// `V^{2r} / q^{1/(4(r-1))} + V^r`.
pub fn rhs_kloosterman_all(q: u64, v: u64, r: u32) -> Result<f64> {
    if r < 2 {
        return Err(Error::RankTooSmall(2));
    }
    let vf = v as f64;
    Ok(vf.powi(2 * r as i32) / (q as f64).powf(1.0 / (4.0 * (r as f64 - 1.0)))
        + vf.powi(r as i32))
}

/// Budget on the raw divisor-tuple count of the reduction formula.
pub const REDUCTION_TERM_BUDGET: u128 = 10_000_000_000;
/// Budget on `modulus * half-tuples` for each inner max-over-lambda count.
const REDUCTION_K_BUDGET: u128 = 50_000_000;

/// Full right-hand side of the reduction of moments to Kloosterman-fraction
/// counters:
///
/// `q V^r + sqrt(q) q3 q4 V * sum over d | q5 and divisor tuples
///  (t_j | q1, s_j | q2, t_j s_j <= V, j = 2..2r) of
///  (prod t_j)^{1/2} d^{1/2} (prod s_j) prod_j max_lambda
///  K_{r, q3 q4 d}(lambda, V / (t_j s_j))^{1/(2r)}`,
///
/// with `t_j s_j << V` instantiated as `t_j s_j <= V` and each inner count
/// maximized over a full residue system.
pub fn rhs_kloosterman_reduction(q: u64, v: u64, r: u32) -> Result<f64> {
    if r < 1 {
        return Err(Error::RankTooSmall(1));
    }
    let parts = decompose_crt(q)?;
    let raw_terms = (2 * r as u128).pow(omega(parts.q1)? + omega(parts.q2)?)
        * tau(parts.q5)? as u128;
    if raw_terms > REDUCTION_TERM_BUDGET {
        return Err(Error::BudgetExceeded { count: raw_terms, budget: REDUCTION_TERM_BUDGET });
    }

    // max over lambda of the counter, memoized by (modulus, half window).
    let mut kmax: HashMap<(u64, u64), f64> = HashMap::new();
    let mut kmax_get = |m: u64, w: u64| -> Result<f64> {
        if let Some(&x) = kmax.get(&(m, w)) {
            return Ok(x);
        }
        let half = (2 * w as u128 + 1).pow(r);
        if (m as u128) * half > REDUCTION_K_BUDGET {
            return Err(Error::BudgetExceeded {
                count: m as u128 * half,
                budget: REDUCTION_K_BUDGET,
            });
        }
        let bx = TupleBox::symmetric(r, w);
        let mut best = 0u64;
        for lam in 0..m {
            let c = count_k(r, m, lam as i64, &bx)?.count;
            if c > best {
                best = c;
            }
        }
        let val = best as f64;
        kmax.insert((m, w), val);
        Ok(val)
    };

    let qf = q as f64;
    let vf = v as f64;
    let base = qf * vf.powi(r as i32);
    let mut sum = 0.0f64;
    for d in divisors(parts.q5)? {
        let modulus = parts.q3 * parts.q4 * d;
        // Admissible per-position divisor pairs and their weights.
        let t_divs = divisors(parts.q1)?;
        let s_divs = divisors(parts.q2)?;
        let mut pair_weights: Vec<(u64, u64, f64)> = Vec::new();
        for &t in &t_divs {
            for &s in &s_divs {
                if t * s <= v {
                    let w = v / (t * s);
                    let k = kmax_get(modulus, w)?;
                    let weight = (t as f64).sqrt()
                        * s as f64
                        * k.powf(1.0 / (2.0 * r as f64));
                    pair_weights.push((t, s, weight));
                }
            }
        }
        // Sum over 2r-1 positions of coprime-product divisor tuples,
        // memoized on (positions left, remaining q1 part, remaining q2 part).
        fn tuple_sum(
            n: u32,
            rem1: u64,
            rem2: u64,
            pairs: &[(u64, u64, f64)],
            memo: &mut HashMap<(u32, u64, u64), f64>,
        ) -> f64 {
            if n == 0 {
                return 1.0;
            }
            if let Some(&x) = memo.get(&(n, rem1, rem2)) {
                return x;
            }
            let mut acc = 0.0;
            for &(t, s, w) in pairs {
                if rem1.is_multiple_of(t) && rem2.is_multiple_of(s) {
                    acc += w * tuple_sum(n - 1, rem1 / t, rem2 / s, pairs, memo);
                }
            }
            memo.insert((n, rem1, rem2), acc);
            acc
        }
        let mut memo = HashMap::new();
        let tuples = tuple_sum(2 * r - 1, parts.q1, parts.q2, &pair_weights, &mut memo);
        sum += (d as f64).sqrt() * tuples;
    }
    Ok(base + qf.sqrt() * (parts.q3 * parts.q4) as f64 * vf * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_moment_prime_case() {
        // Prime q: s = c = 1, three clean powers of V.
        let q = 97u64;
        let v = 4u64;
        let r = 2u32;
        let qf = q as f64;
        let vf = v as f64;
        let expect = qf * vf.powi(2) + qf.sqrt() * vf.powf(2.5) + qf.sqrt() * vf.powi(4);
        assert!((rhs_main_moment(q, v, r).unwrap() - expect).abs() < 1e-9);
        assert!(rhs_main_moment(q, v, 1).is_err());
        // V = 1: dominated from below by the first term.
        assert!(rhs_main_moment(360, 1, 2).unwrap() >= 360.0);
    }

    #[test]
    fn weil_moment_formula() {
        assert_eq!(rhs_weil_moment(100, 2, 1), 100.0 * 2.0 + 10.0 * 4.0);
    }

    #[test]
    fn burgess_cubefree_guard() {
        assert!(rhs_burgess(30, 100, 4).is_ok());
        assert!(rhs_burgess(8, 100, 4).is_err());
        assert!(rhs_burgess(8, 100, 3).is_ok());
    }

    #[test]
    fn charsum_bound_formula() {
        // Cubefree q: the c-factor is 1 and the bound collapses to the
        // classical shape.
        let (q, n, r) = (30u64, 50u64, 2u32);
        let expect = (n as f64).powf(0.5) * (q as f64).powf(3.0 / 16.0);
        assert!((rhs_charsum(q, n, r).unwrap() - expect).abs() < 1e-9);
        assert!((rhs_charsum(q, n, r).unwrap() - rhs_burgess(q, n, r).unwrap()).abs() < 1e-9);
        // Cubefull part enters with its own exponent.
        let c = 8f64;
        let expect8 = (n as f64).powf(0.5)
            * (8f64).powf(3.0 / 16.0)
            * c.powf(1.0 / 16.0 - 1.0 / 256.0);
        assert!((rhs_charsum(8, n, r).unwrap() - expect8).abs() < 1e-9);
        assert!(rhs_charsum(8, n, 0).is_err());
    }

    #[test]
    fn reduction_squarefree_case() {
        // Squarefree q: q3 = q4 = q5 = 1 and the inner counter runs mod 1,
        // where every tuple solves the congruence.
        let q = 15u64;
        let v = 2u64;
        let r = 1u32;
        let got = rhs_kloosterman_reduction(q, v, r).unwrap();
        // d = 1; t_2 | 15 with t_2 <= 2: t_2 = 1; s_2 = 1; K_{1,1}(., 2) = 25.
        let expect = 15.0 * 2.0 + 15f64.sqrt() * 2.0 * (25.0f64).powf(0.5);
        assert!((got - expect).abs() < 1e-9, "got {got} expect {expect}");
    }

    #[test]
    fn reduction_square_case() {
        // q = p^2 puts p into q2 and keeps the inner modulus at 1.
        let q = 49u64;
        let v = 8u64;
        let got = rhs_kloosterman_reduction(q, v, 1).unwrap();
        // t_2 = 1; s_2 in {1, 7}; windows 8 and 1; K_{1,1}(., w) = (2w+1)^2.
        let expect = 49.0 * 8.0
            + 7.0 * 8.0 * (1.0 * (17.0f64 * 17.0).powf(0.5) + 7.0 * (3.0f64 * 3.0).powf(0.5));
        assert!((got - expect).abs() < 1e-9, "got {got} expect {expect}");
    }

    #[test]
    fn window_cap() {
        assert_eq!(kloosterman_window_cap(256, 2).unwrap(), 2);
        assert_eq!(kloosterman_window_cap(6561, 2).unwrap(), 3);
        assert!(kloosterman_window_cap(100, 1).is_err());
    }

    #[test]
    fn reduction_refuses_oversized_inner_counts() {
        use crate::error::Error;
        assert!(matches!(
            rhs_kloosterman_reduction(1024, 100, 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn reduction_v1_forces_trivial_divisors() {
        // t_j s_j <= 1 forces every divisor pair to (1, 1).
        let q = 15u64 * 49; // q1 = 15, q2 = 7
        let got = rhs_kloosterman_reduction(q, 1, 1).unwrap();
        // Single position, pair (1,1), window 1, inner modulus 1: K = 9.
        let expect = q as f64 + (q as f64).sqrt() * 1.0 * (9.0f64).powf(0.5);
        assert!((got - expect).abs() < 1e-9);
    }
}
