//! Dobbertin's permutation machinery for `gcd(l, k) = 1`.
//!
//! With `x_i = x^(2^(il))`, the sequences are `A_1 = x`, `A_2 = x^(2^l+1)`,
//! `B_1 = 0`, `B_2 = x^(2^l-1)` and, for both,
//! `S_(i+2) = x_(i+1) S_(i+1) + (x_(i+1) / x_i) S_i`. With `l' = l^-1 mod k`,
//! `R(x) = A_1 + ... + A_l' + B_l'` inverts `q(x) = (x_1 + ... + x_l' + eps) / x^(2^l+1)`
//! in the sense that `q(u) = v^-1` implies `R(v) = u`.

use crate::cnz::Cnz;
use crate::error::{Error, Result};
use crate::field::{gcd, Fe, FieldCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoprimeParams {
    pub k: u32,
    pub l: u32,
    pub l_prime: u32,
}

impl CoprimeParams {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if l == 0 || l >= k {
            return Err(Error::RangeError {
                what: "l",
                value: l as u64,
            });
        }
        if gcd(l, k) != 1 {
            return Err(Error::NotCoprime { l, k });
        }
        let l_prime = (1..k).find(|&m| (m * l) % k == 1).unwrap_or(1);
        Ok(CoprimeParams { k, l, l_prime })
    }

    /// The parity `eps = l' + 1 (mod 2)` for which `q` is a permutation.
    pub fn bijective_eps(&self) -> bool {
        self.l_prime.is_multiple_of(2)
    }

    fn x_i(&self, ctx: &FieldCtx, x: Fe, i: u64) -> Fe {
        ctx.frob(x, i * self.l as u64)
    }

    /// `(A_1, ..., A_m)` and `(B_1, ..., B_m)` at `x`; all zero at `x = 0`.
    pub fn ab_sequences(&self, ctx: &FieldCtx, x: Fe, m: usize) -> (Vec<Fe>, Vec<Fe>) {
        let mut a = vec![Fe::ZERO; m + 1];
        let mut b = vec![Fe::ZERO; m + 1];
        if x.is_zero() || m == 0 {
            return (a, b);
        }
        let x1 = self.x_i(ctx, x, 1);
        a[1] = x;
        if m >= 2 {
            a[2] = ctx.mul(x, x1);
            b[2] = ctx.div(x1, x).expect("x != 0");
        }
        for i in 1..m.saturating_sub(1) {
            let xi = self.x_i(ctx, x, i as u64);
            let xi1 = self.x_i(ctx, x, i as u64 + 1);
            let step = ctx.div(xi1, xi).expect("x != 0");
            a[i + 2] = ctx.mul(xi1, a[i + 1]) + ctx.mul(step, a[i]);
            b[i + 2] = ctx.mul(xi1, b[i + 1]) + ctx.mul(step, b[i]);
        }
        (a, b)
    }

    /// `(A_i(x), B_i(x))`.
    pub fn ab_eval(&self, ctx: &FieldCtx, i: u32, x: Fe) -> Result<(Fe, Fe)> {
        if i == 0 {
            return Err(Error::RangeError {
                what: "sequence index",
                value: 0,
            });
        }
        let (a, b) = self.ab_sequences(ctx, x, i as usize);
        Ok((a[i as usize], b[i as usize]))
    }

    /// `R(x) = A_1(x) + ... + A_l'(x) + B_l'(x)`.
    pub fn r_eval(&self, ctx: &FieldCtx, x: Fe) -> Fe {
        let m = self.l_prime as usize;
        let (a, b) = self.ab_sequences(ctx, x, m);
        a[1..=m].iter().copied().sum::<Fe>() + b[m]
    }

    /// `q^(eps)(x) = (x_1 + ... + x_l' + eps) / x^(2^l+1)`.
    pub fn q_eval(&self, ctx: &FieldCtx, x: Fe, eps: bool) -> Result<Fe> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num: Fe = (1..=self.l_prime as u64)
            .map(|i| self.x_i(ctx, x, i))
            .sum::<Fe>()
            + Fe::from(eps);
        ctx.div(num, ctx.mul(x, self.x_i(ctx, x, 1)))
    }

    fn check_index(&self, i: u32) -> Result<()> {
        if i == 0 || i > self.l_prime {
            return Err(Error::RangeError {
                what: "index",
                value: i as u64,
            });
        }
        Ok(())
    }

    /// `e(i) = 1 + 2^l + ... + 2^((i-1)l)` reduced modulo `2^k - 1`.
    pub fn e_exp_mod(&self, i: u32) -> Result<u64> {
        self.check_index(i)?;
        let q1 = (1u64 << self.k) - 1;
        Ok((0..i as u64).fold(0, |acc, j| {
            (acc + (1u64 << ((j * self.l as u64) % self.k as u64))) % q1
        }))
    }

    /// `(1 + x)^(e(i))` as a product of Frobenius images.
    pub fn one_plus_x_pow_e(&self, ctx: &FieldCtx, i: u32, x: Fe) -> Result<Fe> {
        self.check_index(i)?;
        let y = x + Fe::ONE;
        Ok((0..i as u64).fold(Fe::ONE, |acc, j| ctx.mul(acc, self.x_i(ctx, y, j))))
    }

    /// `H_i(x) = x (1 + (1+x)^(2^l) + (1+x)^(2^l+2^(2l)) + ... + (1+x)^(e(i)-1))`.
    pub fn h_eval(&self, ctx: &FieldCtx, i: u32, x: Fe) -> Result<Fe> {
        self.check_index(i)?;
        let y = x + Fe::ONE;
        let mut term = Fe::ONE;
        let mut sum = Fe::ONE;
        for j in 1..i as u64 {
            term = ctx.mul(term, self.x_i(ctx, y, j));
            sum += term;
        }
        Ok(ctx.mul(x, sum))
    }

    /// Multiset image (sorted, with repetitions) of `map` over `domain`.
    pub fn multiset_image(
        &self,
        ctx: &FieldCtx,
        map: MultisetMap,
        domain: &[Fe],
    ) -> Result<Vec<Fe>> {
        let cnz = Cnz::new(ctx, self.l)?;
        let mut out = domain
            .iter()
            .map(|&x| match map {
                MultisetMap::Q(eps) => self.q_eval(ctx, x, eps),
                MultisetMap::V => cnz.v_map(x),
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }
}

/// `e(i) = 1 + 2^l + ... + 2^((i-1)l)` exactly.
pub fn e_exp(i: u32, l: u32) -> Result<u128> {
    if i == 0 || (i - 1) as u64 * l as u64 >= 127 {
        return Err(Error::RangeError {
            what: "e(i) index",
            value: i as u64,
        });
    }
    Ok((0..i).map(|j| 1u128 << (j * l)).sum())
}

/// `T_l(x) = x + x^2 + ... + x^(2^(l-1))`.
pub fn t_l_eval(ctx: &FieldCtx, x: Fe, l: u32) -> Fe {
    (0..l as u64).map(|i| ctx.frob(x, i)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultisetMap {
    Q(bool),
    V,
}

/// Elements split by absolute trace: `t0`/`t1` over GF(2^k) minus {0, 1},
/// `h0`/`h1` over nonzero `x` by the trace of `x^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceClassSets {
    pub t0: Vec<Fe>,
    pub t1: Vec<Fe>,
    pub h0: Vec<Fe>,
    pub h1: Vec<Fe>,
}

impl TraceClassSets {
    pub fn new(ctx: &FieldCtx) -> Self {
        let mut s = TraceClassSets {
            t0: Vec::new(),
            t1: Vec::new(),
            h0: Vec::new(),
            h1: Vec::new(),
        };
        for x in ctx.nonzero_elements() {
            if x != Fe::ONE {
                if ctx.abs_trace(x) {
                    s.t1.push(x);
                } else {
                    s.t0.push(x);
                }
            }
            if ctx.abs_trace(ctx.inv(x).expect("x != 0")) {
                s.h1.push(x);
            } else {
                s.h0.push(x);
            }
        }
        s
    }

    pub fn t(&self, i: bool) -> &[Fe] {
        if i {
            &self.t1
        } else {
            &self.t0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: Fe = Fe::new(0b010);

    fn gf(k: u32) -> FieldCtx {
        FieldCtx::new(k, None).unwrap()
    }

    #[test]
    fn params() {
        let p = CoprimeParams::new(3, 2).unwrap();
        assert_eq!(p.l_prime, 2);
        assert_eq!(CoprimeParams::new(7, 3).unwrap().l_prime, 5);
        assert!(matches!(CoprimeParams::new(4, 2), Err(Error::NotCoprime { .. })));
        assert!(CoprimeParams::new(4, 4).is_err());
    }

    #[test]
    fn e_values() {
        assert_eq!(e_exp(1, 5).unwrap(), 1);
        assert_eq!(e_exp(2, 2).unwrap(), 5);
        assert!(e_exp(0, 2).is_err());
        assert!(e_exp(40, 4).is_err());
        for k in 2..=16u32 {
            for l in 1..k {
                let Ok(p) = CoprimeParams::new(k, l) else { continue };
                let q1 = (1u128 << k) - 1;
                let e = p.e_exp_mod(p.l_prime).unwrap() as u128;
                assert_eq!((e * ((1u128 << l) - 1)) % q1, 1, "k={k} l={l}");
                if let Ok(exact) = e_exp(p.l_prime, l) {
                    assert_eq!(exact % q1, e);
                }
            }
        }
    }

    #[test]
    fn gf8_checkpoints() {
        let f = gf(3);
        let p = CoprimeParams::new(3, 2).unwrap();
        let g2 = f.square(G);
        assert_eq!(p.r_eval(&f, g2), G);
        assert_eq!(p.r_eval(&f, Fe::ZERO), Fe::ZERO);
        assert_eq!(p.r_eval(&f, Fe::ONE), Fe::ONE);
        assert_eq!(p.q_eval(&f, G, true).unwrap(), f.pow(G, 5));
        assert_eq!(p.q_eval(&f, Fe::ONE, true).unwrap(), Fe::ONE);
        assert_eq!(p.q_eval(&f, Fe::ZERO, true), Err(Error::DivisionByZero));
        assert_eq!(p.ab_eval(&f, 1, G).unwrap(), (G, Fe::ZERO));
        for x in f.elements() {
            let explicit = x + f.pow(x, 5) + f.pow(x, 3);
            assert_eq!(p.r_eval(&f, x), explicit);
        }
    }

    // A_j (resp. B_j) is the sum of x^(sum_{i<j} (-1)^(s_i) 2^(il)) over sign
    // patterns s with s_(j-1) = 0, s_0 = 0 (resp. 1), and no two adjacent 1s.
    fn ab_by_sign_patterns(f: &FieldCtx, l: u32, j: u32, x: Fe, first: u32) -> Fe {
        if x.is_zero() {
            return Fe::ZERO;
        }
        let q1 = f.group_order() as i128;
        let mut sum = Fe::ZERO;
        for s in 0u32..(1 << j) {
            let bit = |i: u32| (s >> i) & 1;
            if bit(j - 1) != 0 || bit(0) != first || (0..j - 1).any(|i| bit(i) & bit(i + 1) == 1) {
                continue;
            }
            let mut e: i128 = 0;
            for i in 0..j {
                let t = (1i128 << ((i * l) % f.k())) % q1;
                e += if bit(i) == 1 { -t } else { t };
            }
            sum += f.pow(x, e.rem_euclid(q1) as u64);
        }
        sum
    }

    #[test]
    fn ab_recursion_matches_sign_patterns() {
        for k in [5u32, 7, 8] {
            let f = gf(k);
            for l in 1..k {
                let Ok(p) = CoprimeParams::new(k, l) else { continue };
                for x in f.elements() {
                    let (a, b) = p.ab_sequences(&f, x, 6);
                    for j in 1..=6u32 {
                        assert_eq!(a[j as usize], ab_by_sign_patterns(&f, l, j, x, 0));
                        assert_eq!(b[j as usize], ab_by_sign_patterns(&f, l, j, x, 1));
                    }
                }
            }
        }
    }

    #[test]
    fn h_small_indices() {
        let f = gf(7);
        let p = CoprimeParams::new(7, 2).unwrap();
        let l = 2u64;
        for x in f.elements() {
            assert_eq!(p.h_eval(&f, 1, x).unwrap(), x);
            assert_eq!(p.h_eval(&f, 2, x).unwrap(), f.mul(x, f.frob(x, l)));
            let h3 = x
                + f.mul(x, f.frob(x, 2 * l))
                + f.mul(f.mul(x, f.frob(x, l)), f.frob(x, 2 * l));
            assert_eq!(p.h_eval(&f, 3, x).unwrap(), h3);
        }
        assert!(p.h_eval(&f, 0, G).is_err());
        assert!(p.h_eval(&f, p.l_prime + 1, G).is_err());
    }

    // H_i expanded directly from the definition: sum_{j<i} x (1+x)^(2^l + ... + 2^(jl)),
    // each power computed with pow on the exact exponent
    #[test]
    fn h_matches_power_expansion() {
        let f = gf(7);
        let q1 = f.group_order() as u128;
        for l in 1..7 {
            let p = CoprimeParams::new(7, l).unwrap();
            for x in f.elements() {
                let y = x + Fe::ONE;
                for i in 1..=p.l_prime {
                    let mut sum = Fe::ZERO;
                    for j in 0..i {
                        let e = e_exp(j + 1, l).unwrap() - 1;
                        let t = if e == 0 {
                            Fe::ONE
                        } else if y.is_zero() {
                            Fe::ZERO
                        } else {
                            f.pow(y, (e % q1) as u64)
                        };
                        sum += t;
                    }
                    assert_eq!(p.h_eval(&f, i, x).unwrap(), f.mul(x, sum));
                }
            }
        }
    }

    // Expand 1 + (1+x)^e(i) over subsets of {0, ..., i-1}, shift every exponent
    // right until it is odd, cancel equal pairs, then evaluate.
    fn h_by_reduction(f: &FieldCtx, l: u32, i: u32, x: Fe) -> Fe {
        let mut terms = std::collections::BTreeMap::<u128, u32>::new();
        for s in 1u32..(1 << i) {
            let e: u128 = (0..i).filter(|j| (s >> j) & 1 == 1).map(|j| 1u128 << (j * l)).sum();
            *terms.entry(e >> e.trailing_zeros()).or_insert(0) += 1;
        }
        let q1 = f.group_order() as u128;
        terms
            .into_iter()
            .filter(|&(_, m)| m % 2 == 1)
            .map(|(e, _)| if x.is_zero() { Fe::ZERO } else { f.pow(x, (e % q1) as u64) })
            .sum()
    }

    #[test]
    fn h_matches_reduction_procedure() {
        for k in [5u32, 7] {
            let f = gf(k);
            for l in 1..k {
                let p = CoprimeParams::new(k, l).unwrap();
                for x in f.elements() {
                    for i in 1..=p.l_prime {
                        assert_eq!(
                            p.h_eval(&f, i, x).unwrap(),
                            h_by_reduction(&f, l, i, x),
                            "k={k} l={l} i={i} x={x}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn t_l_identity() {
        let f = gf(3);
        assert_eq!(t_l_eval(&f, G, 1), G);
        assert_eq!(t_l_eval(&f, G, 2), G + f.square(G));
        for k in 3..=8 {
            let f = gf(k);
            for l in 1..k {
                for x in f.elements() {
                    let t = t_l_eval(&f, x, l);
                    assert_eq!(f.mul(t + Fe::ONE, t), x + f.frob(x, l as u64));
                }
            }
        }
    }

    #[test]
    fn trace_class_sets_partition() {
        let f = gf(6);
        let s = TraceClassSets::new(&f);
        assert_eq!(s.t0.len() + s.t1.len(), 62);
        assert_eq!(s.h0.len() + s.h1.len(), 63);
        assert!(!s.t0.contains(&Fe::ONE) && !s.t1.contains(&Fe::ONE));
    }

    #[test]
    fn small_multisets() {
        let f = gf(3);
        let p = CoprimeParams::new(3, 1).unwrap();
        let s = TraceClassSets::new(&f);
        let eps = p.l_prime % 2 == 1;
        let q = p.multiset_image(&f, MultisetMap::Q(eps), &s.t1).unwrap();
        let v = p.multiset_image(&f, MultisetMap::V, &s.t0).unwrap();
        assert_eq!(q.len(), s.t1.len());
        assert_eq!(q, v);
        let q0 = p.multiset_image(&f, MultisetMap::Q(false), &s.t0).unwrap();
        let mut dedup = q0.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), q0.len());
    }
}
