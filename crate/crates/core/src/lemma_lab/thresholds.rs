use num_bigint::BigUint;
use serde::Serialize;

use crate::combinatorics::checked_binomial;
use crate::error::{Error, Result};

/// The union-size bound `m(r,t)` and the μ thresholds attached to `(r, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    pub r: usize,
    pub t: usize,
    /// `m(r,t) = max{2r, (r-t)(r-t+5)/2 + t - 1}`.
    pub m: u128,
    /// `n_S(r,t) = (r-t+1)·C(m,t+1) + r`.
    pub n_sum: u128,
    /// `n_P(r,t) = (r-t)·C(r,t)·C(m,t+1) + r`.
    pub n_prod: u128,
    /// `(t+1)(r-t+1)`.
    pub akr: u128,
    /// `(r-t)·C(3r-2t-1, t+1) + r`.
    pub frankl_mu: u128,
    /// `r·C(3r, ⌊3r/2⌋)`.
    pub crude_mu: u128,
}

/// `m(r,t) = max{2r, (r-t)(r-t+5)/2 + t - 1}`, evaluated for any `r, t`.
pub fn union_bound(r: usize, t: usize) -> u128 {
    let d = r as i128 - t as i128;
    // d(d+5) is always even.
    let construction = d * (d + 5) / 2 + t as i128 - 1;
    (2 * r as i128).max(construction) as u128
}

fn overflow(what: &'static str) -> Error {
    Error::Overflow(what)
}

fn mul(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or_else(|| overflow(what))
}

fn add(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_add(b).ok_or_else(|| overflow(what))
}

fn binom(n: u128, k: u128, what: &'static str) -> Result<u128> {
    let n = u64::try_from(n).map_err(|_| overflow(what))?;
    let k = u64::try_from(k).map_err(|_| overflow(what))?;
    checked_binomial(n, k).ok_or_else(|| overflow(what))
}

/// Exact evaluation of every threshold for `1 <= t <= r`.
pub fn thresholds(r: usize, t: usize) -> Result<Thresholds> {
    if t == 0 || t > r {
        return Err(Error::malformed(format!(
            "thresholds need 1 <= t <= r, got r = {r}, t = {t}"
        )));
    }
    let (ru, tu) = (r as u128, t as u128);
    let m = union_bound(r, t);
    let c_m = binom(m, tu + 1, "n_S")?;
    let n_sum = add(mul(ru - tu + 1, c_m, "n_S")?, ru, "n_S")?;
    let n_prod = add(
        mul(mul(ru - tu, binom(ru, tu, "n_P")?, "n_P")?, c_m, "n_P")?,
        ru,
        "n_P",
    )?;
    let akr = (tu + 1) * (ru - tu + 1);
    let frankl_mu = add(
        mul(ru - tu, binom(3 * ru - 2 * tu - 1, tu + 1, "frankl_mu")?, "frankl_mu")?,
        ru,
        "frankl_mu",
    )?;
    let crude_mu = mul(ru, binom(3 * ru, 3 * ru / 2, "crude_mu")?, "crude_mu")?;
    Ok(Thresholds {
        r,
        t,
        m,
        n_sum,
        n_prod,
        akr,
        frankl_mu,
        crude_mu,
    })
}

/// `μ >= (k^{1/t} + 1)·r`, decided exactly as `μ >= r` and `(μ - r)^t >= k·r^t`.
pub fn meets_root_bound(mu: usize, r: usize, t: usize, k: usize) -> bool {
    if mu < r {
        return false;
    }
    let t = u32::try_from(t).expect("t fits u32");
    BigUint::from(mu - r).pow(t) >= BigUint::from(k) * BigUint::from(r).pow(t)
}

/// `μ >= max{n_S(r,t), (k^{1/t}+1) r}`: the large-μ regime of the sum theorem.
pub fn meets_large_mu_sum(mu: usize, r: usize, t: usize, k: usize) -> Result<bool> {
    let th = thresholds(r, t)?;
    Ok(mu as u128 >= th.n_sum && meets_root_bound(mu, r, t, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// `C(n,k)` by Pascal's triangle.
    fn pascal(n: usize, k: usize) -> u128 {
        let mut row = vec![1u128];
        for _ in 0..n {
            let mut next = vec![1u128; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row.get(k).copied().unwrap_or(0)
    }

    #[test]
    fn named_values() {
        let a = thresholds(2, 1).unwrap();
        assert_eq!((a.m, a.n_sum, a.n_prod, a.akr), (4, 14, 14, 4));
        let b = thresholds(4, 2).unwrap();
        assert_eq!((b.m, b.n_sum, b.akr), (8, 172, 9));
        let c = thresholds(1, 1).unwrap();
        assert_eq!((c.m, c.akr), (2, 2));
        assert_eq!(thresholds(5, 2).unwrap().m, 13);
        assert!(thresholds(1, 2).is_err());
        assert!(thresholds(3, 0).is_err());
    }

    #[test]
    fn frankl_and_crude() {
        // (2-1)·C(3,2) + 2 = 5 and 2·C(6,3) = 40.
        let a = thresholds(2, 1).unwrap();
        assert_eq!((a.frankl_mu, a.crude_mu), (5, 40));
        // r = t: (0)·C(t-1, t+1) + r = r.
        assert_eq!(thresholds(3, 3).unwrap().frankl_mu, 3);
    }

    #[test]
    fn large_mu_threshold_arithmetic() {
        // t = 1: (k + 1) r.
        assert!(meets_root_bound(6, 2, 1, 2));
        assert!(!meets_root_bound(5, 2, 1, 2));
        assert!(meets_root_bound(10, 2, 1, 4));
        assert!(!meets_root_bound(9, 2, 1, 4));
        // t = 2, k = 4: (2 + 1)·3 = 9.
        assert!(meets_root_bound(9, 3, 2, 4));
        assert!(!meets_root_bound(8, 3, 2, 4));
        assert!(meets_large_mu_sum(14, 2, 1, 2).unwrap());
        assert!(!meets_large_mu_sum(13, 2, 1, 2).unwrap());
        assert!(meets_large_mu_sum(14, 2, 1, 4).unwrap());
        assert!(!meets_large_mu_sum(14, 2, 1, 7).unwrap());
    }

    proptest! {
        #[test]
        fn formulas_match_pascal(r in 1usize..12, dt in 0usize..12) {
            prop_assume!(dt < r);
            let t = r - dt;
            let th = thresholds(r, t).unwrap();
            let branch = ((r - t) * (r - t + 5) / 2 + t - 1) as u128;
            prop_assert_eq!(th.m, (2 * r as u128).max(branch));
            prop_assert!(th.m >= 2 * r as u128);
            // The 2r branch wins exactly when (r-t)(r-t+1)/2 <= t+1.
            let d = r - t;
            prop_assert_eq!(th.m == 2 * r as u128, d * (d + 1) / 2 <= t + 1);
            let m = th.m as usize;
            prop_assert_eq!(th.n_sum, (r - t + 1) as u128 * pascal(m, t + 1) + r as u128);
            prop_assert_eq!(th.n_prod, (r - t) as u128 * pascal(r, t) * pascal(m, t + 1) + r as u128);
            prop_assert_eq!(th.crude_mu, r as u128 * pascal(3 * r, 3 * r / 2));
            prop_assert!(th.n_sum >= th.m);
        }

        #[test]
        fn root_bound_matches_float(mu in 0usize..64, r in 1usize..8, t in 1usize..4, k in 1usize..20) {
            let exact = meets_root_bound(mu, r, t, k);
            let lhs = ((mu as i64 - r as i64).max(0) as f64).powi(t as i32);
            let rhs = k as f64 * (r as f64).powi(t as i32);
            prop_assert_eq!(exact, mu >= r && lhs >= rhs);
        }
    }
}
