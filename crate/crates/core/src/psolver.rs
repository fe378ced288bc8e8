//! Zero counts and roots of `P_a(x) = x^(2^l+1) + x + a` over GF(2^k).
//!
//! With `d = gcd(l, k)` and `n = k/d`, `P_a` has `2^d + 1` zeros when
//! `C_n(a) = 0`, one zero when `Z_n(a) = 0` and `C_n(a) != 0`, and otherwise
//! two or none according to the absolute trace of `N_d^k(a) / Z_n(a)^2` in
//! GF(2^d).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cnz::Cnz;
use crate::dobbertin::CoprimeParams;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::formulas;
use crate::linalg::Gf2Map;
use crate::rootset::{Provenance, RootSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PaClass {
    Zero,
    One,
    Two,
    ManyD,
}

impl PaClass {
    /// Number of zeros for subfield degree `d`.
    pub fn arity(self, d: u32) -> u64 {
        match self {
            PaClass::Zero => 0,
            PaClass::One => 1,
            PaClass::Two => 2,
            PaClass::ManyD => (1u64 << d) + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PaClass::Zero => "zero",
            PaClass::One => "one",
            PaClass::Two => "two",
            PaClass::ManyD => "manyd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PaClassification {
    pub class: PaClass,
    pub z_val: Fe,
    pub c_val: Fe,
    /// Absolute trace of `N_d^k(a) / Z_n(a)^2`, when `Z_n(a) != 0`.
    pub trace_bit: Option<bool>,
    /// `Tr_k(R(a^-1) + 1)` when `gcd(l, k) = 1` and `a != 0`.
    pub gcd1_trace: Option<bool>,
}

/// Decides the zero count of `P_a`. For `a = 0` this yields two zeros, `{0, 1}`.
pub fn classify(ctx: &FieldCtx, l: u32, a: Fe) -> Result<PaClassification> {
    let cnz = Cnz::new(ctx, l)?;
    let vals = cnz.values(a);
    let (z_val, c_val) = (vals.z, vals.cn());
    let d = cnz.d();
    let mut trace_bit = None;
    let class = if c_val.is_zero() {
        PaClass::ManyD
    } else if z_val.is_zero() {
        PaClass::One
    } else {
        let ratio = ctx.div(ctx.norm(a, d)?, ctx.square(z_val))?;
        let t = ctx.subfield_abs_trace(ratio, d)?;
        trace_bit = Some(t);
        if t {
            PaClass::Zero
        } else {
            PaClass::Two
        }
    };
    let gcd1_trace = if d == 1 && !a.is_zero() {
        Some(gcd1_criterion(ctx, l, a)?)
    } else {
        None
    };
    Ok(PaClassification {
        class,
        z_val,
        c_val,
        trace_bit,
        gcd1_trace,
    })
}

/// `Tr_k(R(a^-1) + 1)`; equals 1 exactly when `P_a` has a single zero.
pub fn gcd1_criterion(ctx: &FieldCtx, l: u32, a: Fe) -> Result<bool> {
    let p = CoprimeParams::new(ctx.k(), l)?;
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let r = p.r_eval(ctx, ctx.inv(a)?);
    Ok(ctx.abs_trace(r + Fe::ONE))
}

/// `P_a(x)`.
pub fn eval(ctx: &FieldCtx, l: u32, a: Fe, x: Fe) -> Fe {
    ctx.mul(x, ctx.frob(x, l as u64)) + x + a
}

/// The exact zero set of `P_a`.
pub fn solve(ctx: &FieldCtx, l: u32, a: Fe) -> Result<RootSet> {
    let cls = classify(ctx, l, a)?;
    solve_classified(ctx, l, a, &cls)
}

/// Roots for an already computed classification.
pub fn solve_classified(ctx: &FieldCtx, l: u32, a: Fe, cls: &PaClassification) -> Result<RootSet> {
    let cnz = Cnz::new(ctx, l)?;
    let d = cnz.d();
    let n = cnz.n();
    let (z, c) = (cls.z_val, cls.c_val);
    match cls.class {
        PaClass::Zero => Ok(RootSet::empty(Provenance::ClosedForm)),
        PaClass::One => {
            // (a C^(2^l - 1))^(2^(k-1))
            let t = ctx.mul(a, ctx.div(ctx.frob(c, l as u64), c)?);
            Ok(RootSet::new(
                [ctx.frob(t, ctx.k() as u64 - 1)],
                Provenance::ClosedForm,
            ))
        }
        PaClass::Two if a.is_zero() => Ok(RootSet::new([Fe::ZERO, Fe::ONE], Provenance::ClosedForm)),
        PaClass::Two if d % 2 == 1 => {
            let vals = cnz.values(a);
            let ratio = ctx.div(ctx.norm(a, d)?, ctx.square(z))?;
            let w: Fe = ctx.div(vals.c(n as usize + 1), z)?
                + (0..=(d - 1) / 2)
                    .map(|i| ctx.frob(ratio, 2 * i as u64))
                    .sum::<Fe>();
            let scale = ctx.div(z, c)?;
            Ok(RootSet::new(
                [ctx.mul(w, scale), ctx.mul(w + Fe::ONE, scale)],
                Provenance::ClosedForm,
            ))
        }
        PaClass::Two => {
            // x = w Z/C with w^2 + w = a C^(2^l+1) / Z^2
            let beta = ctx.div(
                ctx.mul(a, ctx.mul(c, ctx.frob(c, l as u64))),
                ctx.square(z),
            )?;
            let ws = ctx.solve_artin_schreier(beta, 1)?;
            let scale = ctx.div(z, c)?;
            Ok(RootSet::new(
                ws.iter().map(|w| ctx.mul(w, scale)),
                Provenance::LinearAlgebra,
            ))
        }
        PaClass::ManyD => {
            let x0 = many_seed(ctx, l, a)?;
            Ok(RootSet::new(
                std::iter::once(x0).chain(propagate(ctx, l, x0)),
                Provenance::LinearAlgebra,
            ))
        }
    }
}

/// The homogeneous map `L_b(x) = b^(2^l) x^(2^(2l)) + x^(2^l) + b x` as a GF(2) map.
pub(crate) fn l_map(ctx: &FieldCtx, l: u32, b: Fe) -> Gf2Map {
    let l = l as u64;
    let bl = ctx.frob(b, l);
    Gf2Map::from_fn(ctx.k(), |x| {
        let x = Fe::new(x as u32);
        (ctx.mul(bl, ctx.frob(x, 2 * l)) + ctx.frob(x, l) + ctx.mul(b, x)).bits() as u64
    })
}

/// One zero of `P_a` built from a nonzero kernel element `x` of `L_b`,
/// `b = sqrt(a)`: `b x^(2^l - 1)`.
fn many_seed(ctx: &FieldCtx, l: u32, a: Fe) -> Result<Fe> {
    let b = ctx.frob(a, ctx.k() as u64 - 1);
    let map = l_map(ctx, l, b);
    let x = *map.kernel_basis().first().ok_or(Error::NoRoots)?;
    let x = Fe::new(x as u32);
    Ok(ctx.mul(b, ctx.div(ctx.frob(x, l as u64), x)?))
}

/// Given one zero `x0`, the others are `x0 + 1/y` for the solutions `y` of
/// `(x0^(2^l) + 1) y^(2^l) + x0 y + 1 = 0`.
pub fn propagate(ctx: &FieldCtx, l: u32, x0: Fe) -> Vec<Fe> {
    let coef = ctx.frob(x0, l as u64) + Fe::ONE;
    let map = Gf2Map::from_fn(ctx.k(), |y| {
        let y = Fe::new(y as u32);
        (ctx.mul(coef, ctx.frob(y, l as u64)) + ctx.mul(x0, y)).bits() as u64
    });
    map.solutions(1)
        .into_iter()
        .map(|y| x0 + ctx.inv(Fe::new(y as u32)).expect("y = 0 is never a solution"))
        .collect()
}

/// Observed per-arity counts alongside the closed-form predictions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionReport {
    pub counts: BTreeMap<u64, u64>,
    pub predicted: BTreeMap<u64, u64>,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl DistributionReport {
    /// Fills in zero entries for every predicted key and compares.
    pub fn new(mut counts: BTreeMap<u64, u64>, predicted: BTreeMap<u64, u64>) -> Self {
        for &key in predicted.keys() {
            counts.entry(key).or_insert(0);
        }
        let matches = counts == predicted;
        DistributionReport {
            counts,
            predicted,
            matches,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Zero-count census of `P_a` over `a != 0` using the criteria.
pub fn distribution(ctx: &FieldCtx, l: u32) -> Result<DistributionReport> {
    let cnz = Cnz::new(ctx, l)?;
    let d = cnz.d();
    let counts = ctx
        .nonzero_elements()
        .par_bridge()
        .map(|a| classify(ctx, l, a).map(|c| c.class.arity(d)))
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
        formulas::p_distribution(ctx.k(), l)?,
    ))
}

/// Checks, for every `x != 0`, that `L_a(x) = 0` exactly when
/// `P_(a^2)(a x^(2^l - 1)) = 0`.
pub fn la_correspondence_check(ctx: &FieldCtx, l: u32, a: Fe) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let map = l_map(ctx, l, a);
    let kernel: std::collections::HashSet<u64> = map.kernel().into_iter().collect();
    let a2 = ctx.square(a);
    Ok(ctx.nonzero_elements().all(|x| {
        let y = ctx.mul(a, ctx.div(ctx.frob(x, l as u64), x).expect("x != 0"));
        kernel.contains(&(x.bits() as u64)) == eval(ctx, l, a2, y).is_zero()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: Fe = Fe::new(0b010);

    fn gf(k: u32) -> FieldCtx {
        FieldCtx::new(k, None).unwrap()
    }

    fn brute(ctx: &FieldCtx, l: u32, a: Fe) -> Vec<Fe> {
        ctx.elements().filter(|&x| eval(ctx, l, a, x).is_zero()).collect()
    }

    #[test]
    fn gf8_examples() {
        let f = gf(3);
        let g3 = f.pow(G, 3);
        let c = classify(&f, 1, g3).unwrap();
        assert_eq!(c.class, PaClass::One);
        assert_eq!(c.z_val, Fe::ZERO);
        assert_eq!(c.c_val, Fe::new(4));
        assert_eq!(solve(&f, 1, g3).unwrap().roots(), &[Fe::new(0b101)]);
        let c = classify(&f, 1, Fe::ZERO).unwrap();
        assert_eq!(c.class, PaClass::Two);
        assert_eq!(solve(&f, 1, Fe::ZERO).unwrap().roots(), &[Fe::ZERO, Fe::ONE]);
        // x^3 + x + 1 is the field modulus, so its zeros are g, g^2, g^4
        assert_eq!(classify(&f, 1, Fe::ONE).unwrap().class, PaClass::ManyD);
        let want = [G, f.pow(G, 2), f.pow(G, 4)];
        assert_eq!(solve(&f, 1, Fe::ONE).unwrap(), RootSet::new(want, Provenance::LinearAlgebra));
        assert_eq!(brute(&f, 1, Fe::ONE), RootSet::new(want, Provenance::Oracle).into_vec());
    }

    #[test]
    fn gcd1_examples() {
        let f = gf(3);
        assert!(gcd1_criterion(&f, 1, f.pow(G, 3)).unwrap());
        assert!(!gcd1_criterion(&f, 1, Fe::ONE).unwrap());
        assert!(!gcd1_criterion(&f, 1, G).unwrap());
        assert_eq!(gcd1_criterion(&f, 1, Fe::ZERO), Err(Error::ZeroInput));
        let f4 = gf(4);
        assert!(matches!(gcd1_criterion(&f4, 2, G), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn solve_matches_brute_force() {
        for k in 2..=8 {
            let f = gf(k);
            for l in 1..k {
                for a in f.elements() {
                    let s = solve(&f, l, a).unwrap();
                    assert_eq!(s.roots(), brute(&f, l, a).as_slice(), "k={k} l={l} a={a}");
                }
            }
        }
    }

    #[test]
    fn distribution_checkpoints() {
        let cases = [
            (3, 1, vec![3, 3, 0, 1]),
            (2, 1, vec![1, 2, 0, 0]),
            (4, 2, vec![6, 4, 5, 0]),
            (6, 2, vec![26, 15, 21, 1]),
        ];
        for (k, l, want) in cases {
            let r = distribution(&gf(k), l).unwrap();
            assert!(r.matches);
            assert_eq!(r.counts.values().copied().collect::<Vec<_>>(), want);
            assert_eq!(r.total(), (1 << k) - 1);
        }
    }

    #[test]
    fn la_correspondence() {
        let f = gf(3);
        assert!(la_correspondence_check(&f, 1, G).unwrap());
        let f = gf(4);
        for a in f.nonzero_elements() {
            assert!(la_correspondence_check(&f, 2, a).unwrap());
        }
        assert_eq!(la_correspondence_check(&f, 2, Fe::ZERO), Err(Error::ZeroInput));
    }
}
