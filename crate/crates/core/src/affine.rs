//! Roots of the affine polynomial `F_a(x) = a^(2^l) x^(2^(2l)) + x^(2^l) + a x + c`.
//!
//! For `c` in GF(2^d), `F_a` always has a zero. It has exactly one when
//! `Z_n(a) != 0`, `2^d` when `Z_n(a) = 0 != C_n(a)`, and `2^(2d)` when
//! `C_n(a) = 0`. All zeros share one relative trace `Tr_d^k`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cnz::Cnz;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::formulas;
use crate::psolver::{l_map, DistributionReport};
use crate::rootset::{Provenance, RootSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaSolution {
    pub arity: u64,
    #[serde(serialize_with = "ser_roots")]
    pub roots: RootSet,
    /// Common `Tr_d^k` of every root.
    pub trace_class: Fe,
}

fn ser_roots<S: serde::Serializer>(r: &RootSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(r.to_hex())
}

/// `F_a(x)`.
pub fn eval(ctx: &FieldCtx, l: u32, a: Fe, c: Fe, x: Fe) -> Fe {
    let l = l as u64;
    ctx.mul(ctx.frob(a, l), ctx.frob(x, 2 * l)) + ctx.frob(x, l) + ctx.mul(a, x) + c
}

/// Number of zeros of `F_a` for any `c` in GF(2^d).
pub fn classify_f(ctx: &FieldCtx, l: u32, a: Fe) -> Result<u64> {
    let cnz = Cnz::new(ctx, l)?;
    let v = cnz.values(a);
    let d = cnz.d();
    Ok(if !v.z.is_zero() {
        1
    } else if !v.cn().is_zero() {
        1u64 << d
    } else {
        1u64 << (2 * d)
    })
}

/// All zeros of `F_a` for `c` in GF(2^d).
pub fn solve_f(ctx: &FieldCtx, l: u32, a: Fe, c: Fe) -> Result<FaSolution> {
    let cnz = Cnz::new(ctx, l)?;
    let d = cnz.d();
    let n = cnz.n();
    if !ctx.in_subfield(c, d) {
        return Err(Error::BadConstant(c.bits()));
    }
    let v = cnz.values(a);
    let cn = v.cn();
    let roots = if !v.z.is_zero() {
        RootSet::new([ctx.div(ctx.mul(c, cn), v.z)?], Provenance::ClosedForm)
    } else if !cn.is_zero() && n % 2 == 1 {
        let lu = l as u64;
        let cn1 = v.c(n as usize - 1);
        let inv_cn = ctx.inv(cn)?;
        let base: Fe = (0..=(n as u64 - 1) / 2)
            .map(|i| {
                let num = ctx.frob(cn1, (2 * i + 1) * lu);
                let den = ctx.mul(
                    ctx.mul(ctx.frob(cn, (2 * i + 1) * lu), ctx.frob(cn, 2 * i * lu)),
                    inv_cn,
                );
                ctx.div(num, den).expect("C_n(a) != 0")
            })
            .sum();
        let base = ctx.mul(c, base);
        RootSet::new(
            ctx.subfield_elements(d)?
                .into_iter()
                .map(|mu| base + ctx.mul(mu, cn)),
            Provenance::ClosedForm,
        )
    } else {
        solve_general(ctx, l, a, c)?
    };
    let arity = roots.len() as u64;
    let first = *roots.roots().first().ok_or(Error::NoRoots)?;
    Ok(FaSolution {
        arity,
        trace_class: ctx.trace(first, d)?,
        roots,
    })
}

/// All zeros of `F_a` for arbitrary `c` by linear algebra: a particular
/// solution plus the kernel of the homogeneous part.
pub fn solve_general(ctx: &FieldCtx, l: u32, a: Fe, c: Fe) -> Result<RootSet> {
    let map = l_map(ctx, l, a);
    Ok(RootSet::new(
        map.solutions(c.bits() as u64)
            .into_iter()
            .map(|b| Fe::new(b as u32)),
        Provenance::LinearAlgebra,
    ))
}

/// The common `Tr_d^k` of the zeros of `F_a`.
pub fn root_trace_class(ctx: &FieldCtx, l: u32, a: Fe, c: Fe) -> Result<Fe> {
    Ok(solve_f(ctx, l, a, c)?.trace_class)
}

/// The trace class implied by the zero count: `(n-1)c` for `2^d` zeros,
/// `nc` otherwise.
pub fn predicted_trace_class(n: u32, d: u32, arity: u64, c: Fe) -> Fe {
    let m = if arity == 1u64 << d { n - 1 } else { n };
    if m % 2 == 1 {
        c
    } else {
        Fe::ZERO
    }
}

/// `sum over zeros v of (-1)^Tr_k(a c^-2 v^(2^l+1))`.
pub fn character_sum(ctx: &FieldCtx, l: u32, a: Fe, c: Fe) -> Result<i64> {
    if c.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sol = solve_f(ctx, l, a, c)?;
    let scale = ctx.div(a, ctx.square(c))?;
    Ok(sol
        .roots
        .iter()
        .map(|v| {
            let t = ctx.mul(scale, ctx.mul(v, ctx.frob(v, l as u64)));
            if ctx.abs_trace(t) {
                -1
            } else {
                1
            }
        })
        .sum())
}

/// Zero-count census of `F_a` over `a != 0`.
pub fn f_census(ctx: &FieldCtx, l: u32) -> Result<DistributionReport> {
    let counts = ctx
        .nonzero_elements()
        .par_bridge()
        .map(|a| classify_f(ctx, l, a))
        .try_fold(BTreeMap::new, |mut m, arity| {
            *m.entry(arity?).or_insert(0u64) += 1;
            Ok::<_, Error>(m)
        })
        .try_reduce(BTreeMap::new, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            Ok(x)
        })?;
    Ok(DistributionReport::new(
        counts,
        formulas::f_distribution(ctx.k(), l)?,
    ))
}
