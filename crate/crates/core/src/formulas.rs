//! Closed-form zero counts and census predictions.
//!
//! All counts are over the parameter `a` ranging through GF(2^k)^*, keyed by
//! the number of zeros of the polynomial in question.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::field::SubfieldParams;

fn p2(e: u32) -> u128 {
    1u128 << e
}

fn exact_div(num: u128, den: u128) -> u64 {
    debug_assert_eq!(num % den, 0, "{num} / {den}");
    (num / den) as u64
}

/// Predicted zero-count distribution of `x^(2^l+1) + x + a` over `a != 0`,
/// keyed by arity `0, 1, 2, 2^d + 1`.
pub fn p_distribution(k: u32, l: u32) -> Result<BTreeMap<u64, u64>> {
    let SubfieldParams { d, n } = SubfieldParams::for_exponent(k, l)?;
    let q1 = p2(k) - 1;
    let odd = n % 2 == 1;
    let m0 = if odd {
        exact_div((p2(k) + 1) * p2(d - 1), p2(d) + 1)
    } else {
        exact_div(q1 * p2(d - 1), p2(d) + 1)
    };
    let m1 = if odd { p2(k - d) - 1 } else { p2(k - d) } as u64;
    let m2 = exact_div(q1 * (p2(d - 1) - 1), p2(d) - 1);
    let many = many_count(k, d, n);
    let mut out = BTreeMap::new();
    out.insert(0, m0);
    out.insert(1, m1);
    out.insert(2, m2);
    out.insert((1u64 << d) + 1, many);
    Ok(out)
}

fn many_count(k: u32, d: u32, n: u32) -> u64 {
    if n % 2 == 1 {
        exact_div(p2(k - d) - 1, p2(2 * d) - 1)
    } else {
        exact_div(p2(k - d) - p2(d), p2(2 * d) - 1)
    }
}

/// Predicted census of `a^(2^l) x^(2^(2l)) + x^(2^l) + a x + c` (any `c` in
/// GF(2^d)) over `a != 0`, keyed by arity `1, 2^d, 2^(2d)`.
pub fn f_distribution(k: u32, l: u32) -> Result<BTreeMap<u64, u64>> {
    let SubfieldParams { d, n } = SubfieldParams::for_exponent(k, l)?;
    let odd = n % 2 == 1;
    let num = p2(k + 2 * d) - p2(k + d) - p2(k) + 1;
    let n1 = if odd {
        exact_div(num, p2(2 * d) - 1)
    } else {
        exact_div(num - p2(2 * d) + p2(d), p2(2 * d) - 1)
    };
    let nd = if odd { p2(k - d) - 1 } else { p2(k - d) } as u64;
    let mut out = BTreeMap::new();
    out.insert(1, n1);
    out.insert(1u64 << d, nd);
    out.insert(1u64 << (2 * d), many_count(k, d, n));
    Ok(out)
}

/// Number of distinct zeros of `C_n` in GF(2^k).
pub fn c_zero_count(k: u32, l: u32) -> Result<u64> {
    let SubfieldParams { d, n } = SubfieldParams::for_exponent(k, l)?;
    Ok(if n % 2 == 1 {
        exact_div(p2((n - 1) * d) - 1, p2(2 * d) - 1)
    } else {
        exact_div(p2((n - 1) * d) - p2(d), p2(2 * d) - 1)
    })
}

/// Number of distinct zeros of `Z_n` in GF(2^k).
pub fn z_zero_count(k: u32, l: u32) -> Result<u64> {
    let SubfieldParams { d, n } = SubfieldParams::for_exponent(k, l)?;
    Ok(if n % 2 == 1 {
        exact_div(p2((n + 1) * d) - p2(2 * d), p2(2 * d) - 1)
    } else {
        exact_div(p2((n + 1) * d) - p2(d), p2(2 * d) - 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(m: &BTreeMap<u64, u64>) -> Vec<u64> {
        m.values().copied().collect()
    }

    #[test]
    fn p_checkpoints() {
        assert_eq!(vals(&p_distribution(3, 1).unwrap()), [3, 3, 0, 1]);
        assert_eq!(vals(&p_distribution(2, 1).unwrap()), [1, 2, 0, 0]);
        assert_eq!(vals(&p_distribution(4, 2).unwrap()), [6, 4, 5, 0]);
        assert_eq!(vals(&p_distribution(6, 2).unwrap()), [26, 15, 21, 1]);
    }

    #[test]
    fn coprime_case_reduces_to_thirds() {
        for k in 2..=20u32 {
            let m = p_distribution(k, 1).unwrap();
            let (m0, m1, m3) = if k % 2 == 1 {
                ((p2(k) + 1) / 3, p2(k - 1) - 1, (p2(k - 1) - 1) / 3)
            } else {
                ((p2(k) - 1) / 3, p2(k - 1), (p2(k - 1) - 2) / 3)
            };
            assert_eq!(m[&0] as u128, m0);
            assert_eq!(m[&1] as u128, m1);
            assert_eq!(m[&2], 0);
            assert_eq!(m[&3] as u128, m3);
        }
    }

    #[test]
    fn totals() {
        for k in 2..=24u32 {
            for l in 1..k {
                let total = (1u64 << k) - 1;
                assert_eq!(p_distribution(k, l).unwrap().values().sum::<u64>(), total);
                assert_eq!(f_distribution(k, l).unwrap().values().sum::<u64>(), total);
            }
        }
    }

    #[test]
    fn f_and_zero_count_checkpoints() {
        assert_eq!(vals(&f_distribution(3, 1).unwrap()), [3, 3, 1]);
        assert_eq!(c_zero_count(3, 1).unwrap(), 1);
        assert_eq!(z_zero_count(3, 1).unwrap(), 4);
        assert_eq!(z_zero_count(4, 2).unwrap(), 4);
    }
}
