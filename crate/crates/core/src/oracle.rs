//! Exhaustive ground truth: root sets and censuses found by evaluating every
//! field element with plain power chains. Nothing here uses the recursions
//! or closed forms of the other modules.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{gcd, Fe, FieldCtx};
use crate::linearized::ExtContext;
use crate::psolver::DistributionReport;
use crate::formulas;
use crate::rootset::{Provenance, RootSet};

pub const DEFAULT_CAP_BITS: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub roots: RootSet,
    /// Field multiplications spent, counting each `pow` as one.
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    P,
    F,
}

/// Brute-force evaluator refusing fields larger than `2^cap_bits`.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub cap_bits: u32,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cap_bits: DEFAULT_CAP_BITS,
        }
    }
}

impl Oracle {
    pub fn new(cap_bits: u32) -> Self {
        Oracle { cap_bits }
    }

    fn check(&self, ctx: &FieldCtx) -> Result<()> {
        if ctx.k() > self.cap_bits {
            return Err(Error::CapExceeded {
                k: ctx.k(),
                cap_bits: self.cap_bits,
            });
        }
        Ok(())
    }

    fn scan(&self, ctx: &FieldCtx, per_eval: u64, f: impl Fn(Fe) -> bool + Sync) -> Result<OracleResult> {
        self.check(ctx)?;
        let roots: Vec<Fe> = (0..ctx.order())
            .into_par_iter()
            .map(|b| Fe::new(b as u32))
            .filter(|&x| f(x))
            .collect();
        Ok(OracleResult {
            roots: RootSet::new(roots, Provenance::Oracle),
            evaluations: ctx.order() * per_eval,
        })
    }

    /// Zeros of `x^(2^l+1) + x + a`.
    pub fn roots_p(&self, ctx: &FieldCtx, l: u32, a: Fe) -> Result<OracleResult> {
        let e = (1u64 << l) + 1;
        self.scan(ctx, 1, |x| ctx.pow(x, e) + x + a == Fe::ZERO)
    }

    /// Zeros of `a^(2^l) x^(2^(2l)) + x^(2^l) + a x + c`.
    pub fn roots_f(&self, ctx: &FieldCtx, l: u32, a: Fe, c: Fe) -> Result<OracleResult> {
        let e1 = 1u64 << l;
        let e2 = 1u64 << (2 * l);
        let al = ctx.pow(a, e1);
        self.scan(ctx, 4, |x| {
            ctx.mul(al, ctx.pow(x, e2)) + ctx.pow(x, e1) + ctx.mul(a, x) + c == Fe::ZERO
        })
    }

    /// Kernel of `r^(2^l) a^(2^l) x^(2^(2l)) + x^(2^(k+l)) + r a x` over GF(2^(2k)).
    pub fn kernel_q(&self, ext: &ExtContext, a: Fe, r: Fe, l: u32) -> Result<OracleResult> {
        let e = ext.ext();
        let k = ext.k();
        let ra = e.mul(r, ext.embed(a));
        let ral = e.pow(ra, 1u64 << l);
        let e2 = 1u64 << (2 * l);
        let ekl = 1u64 << (k + l);
        self.scan(e, 4, |x| {
            e.mul(ral, e.pow(x, e2)) + e.pow(x, ekl) + e.mul(ra, x) == Fe::ZERO
        })
    }

    /// Zero-count census over `a != 0` with the matching closed-form prediction.
    /// For the affine family every `c` in GF(2^d) gives the same census; `c`
    /// defaults to 1.
    pub fn census(&self, family: Family, ctx: &FieldCtx, l: u32, c: Option<Fe>) -> Result<DistributionReport> {
        self.check(ctx)?;
        let d = gcd(l, ctx.k());
        let c = c.unwrap_or(Fe::ONE);
        let mut counts = BTreeMap::new();
        for a in ctx.nonzero_elements() {
            let roots = match family {
                Family::P => self.roots_p(ctx, l, a)?,
                Family::F => self.roots_f(ctx, l, a, c)?,
            };
            *counts.entry(roots.roots.len() as u64).or_insert(0) += 1;
        }
        let predicted = match family {
            Family::P => formulas::p_distribution(ctx.k(), l)?,
            Family::F => {
                if !ctx.in_subfield(c, d) {
                    return Err(Error::BadConstant(c.bits()));
                }
                formulas::f_distribution(ctx.k(), l)?
            }
        };
        Ok(DistributionReport::new(counts, predicted))
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
    fn gf8_examples() {
        let f = gf(3);
        let o = Oracle::default();
        assert_eq!(o.roots_p(&f, 1, Fe::ZERO).unwrap().roots.roots(), &[Fe::ZERO, Fe::ONE]);
        let r = o.roots_p(&f, 1, Fe::new(3)).unwrap();
        assert_eq!(r.roots.roots(), &[Fe::new(5)]);
        assert_eq!(r.evaluations, 8);
        assert_eq!(o.roots_f(&f, 1, Fe::ZERO, Fe::ONE).unwrap().roots.roots(), &[Fe::ONE]);
        assert_eq!(o.roots_f(&f, 1, G, Fe::ONE).unwrap().roots.roots(), &[Fe::new(0b101)]);
    }

    #[test]
    fn censuses() {
        let f = gf(3);
        let o = Oracle::default();
        let p = o.census(Family::P, &f, 1, None).unwrap();
        assert_eq!(p.counts.values().copied().collect::<Vec<_>>(), [3, 3, 0, 1]);
        assert!(p.matches);
        let fa = o.census(Family::F, &f, 1, None).unwrap();
        assert_eq!(fa.counts.values().copied().collect::<Vec<_>>(), [3, 3, 1]);
        assert_eq!(fa.total(), 7);
    }

    #[test]
    fn cap() {
        let f = gf(12);
        assert_eq!(
            Oracle::new(10).roots_p(&f, 1, G).unwrap_err(),
            Error::CapExceeded { k: 12, cap_bits: 10 }
        );
    }

    #[test]
    fn frobenius_symmetry() {
        for k in 3..=8 {
            let f = gf(k);
            let o = Oracle::default();
            for l in 1..k {
                for a in f.elements().step_by(5) {
                    let r = o.roots_p(&f, l, a).unwrap().roots;
                    let s = o.roots_p(&f, l, f.frob(a, 1)).unwrap().roots;
                    let conj = RootSet::new(r.iter().map(|x| f.frob(x, 1)), Provenance::Oracle);
                    assert_eq!(conj, s);
                }
            }
        }
    }
}
