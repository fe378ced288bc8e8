//! Property suites comparing the criteria and closed forms with exhaustive
//! computation over ranges of `k`.

use std::ops::RangeInclusive;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::affine;
use crate::cnz::Cnz;
use crate::dobbertin::{CoprimeParams, MultisetMap, TraceClassSets};
use crate::error::Result;
use crate::field::{gcd, Fe, FieldCtx};
use crate::formulas;
use crate::linearized::ExtContext;
use crate::oracle::{Family, Oracle};
use crate::psolver::{self, PaClass};

const MAX_MESSAGES: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub report_only: bool,
    /// Set when the time budget ran out before every `k` was covered.
    pub truncated: bool,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub k_range: RangeInclusive<u32>,
    /// Above this `k` censuses rely on the criteria only.
    pub oracle_max_k: u32,
    /// Upper `k` for the GF(2^(2k)) kernel sweep.
    pub q_max_k: u32,
    pub budget: Option<Duration>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            k_range: 2..=10,
            oracle_max_k: 10,
            q_max_k: 6,
            budget: None,
        }
    }
}

struct Checker {
    checked: u64,
    failed: u64,
    failures: Vec<String>,
    truncated: bool,
    deadline: Option<Instant>,
}

impl Checker {
    fn new(deadline: Option<Instant>) -> Self {
        Checker {
            checked: 0,
            failed: 0,
            failures: Vec::new(),
            truncated: false,
            deadline,
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_MESSAGES {
                self.failures.push(msg());
            }
        }
    }

    fn error(&mut self, e: crate::Error) {
        self.check(false, || format!("error: {e}"));
    }

    /// Runs `f` on every item in parallel; `f` returns a failure message or `None`.
    fn sweep<T: Send>(&mut self, items: Vec<T>, f: impl Fn(T) -> Option<String> + Sync + Send) {
        let failures = Mutex::new(Vec::new());
        let failed = std::sync::atomic::AtomicU64::new(0);
        let n = items.len() as u64;
        items.into_par_iter().for_each(|it| {
            if let Some(msg) = f(it) {
                failed.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let mut v = failures.lock().unwrap();
                if v.len() < MAX_MESSAGES {
                    v.push(msg);
                }
            }
        });
        self.checked += n;
        self.failed += failed.into_inner();
        let mut msgs = failures.into_inner().unwrap();
        msgs.sort();
        for m in msgs {
            if self.failures.len() < MAX_MESSAGES {
                self.failures.push(m);
            }
        }
    }

    fn out_of_time(&mut self) -> bool {
        if self.deadline.is_some_and(|d| Instant::now() > d) {
            self.truncated = true;
        }
        self.truncated
    }

    fn finish(self, id: u32, name: &'static str, report_only: bool, start: Instant) -> SuiteResult {
        SuiteResult {
            id,
            name,
            passed: self.failed == 0,
            report_only,
            truncated: self.truncated,
            checked: self.checked,
            failed: self.failed,
            failures: self.failures,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

fn field(k: u32) -> FieldCtx {
    FieldCtx::new(k, None).expect("supported degree")
}

fn try_check(ck: &mut Checker, r: Result<()>) {
    if let Err(e) = r {
        ck.error(e);
    }
}

fn fmt_roots(r: &[Fe]) -> String {
    let v: Vec<String> = r.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(","))
}

/// Solver output equals the exhaustive zero set for every `l` and `a`.
pub fn oracle_equivalence(ks: RangeInclusive<u32>, deadline: Option<Instant>) -> SuiteResult {
    let start = Instant::now();
    let mut ck = Checker::new(deadline);
    let oracle = Oracle::default();
    for k in ks {
        if ck.out_of_time() {
            break;
        }
        let f = field(k);
        for l in 1..k {
            ck.sweep(f.elements().collect(), |a| {
                let solved = match psolver::solve(&f, l, a) {
                    Ok(s) => s,
                    Err(e) => return Some(format!("k={k} l={l} a={a}: {e}")),
                };
                let truth = oracle.roots_p(&f, l, a).ok()?.roots;
                (!solved.same_roots(&truth)).then(|| {
                    format!(
                        "k={k} l={l} a={a}: solve {} oracle {}",
                        fmt_roots(solved.roots()),
                        fmt_roots(truth.roots())
                    )
                })
            });
        }
    }
    ck.finish(1, "oracle-equivalence", false, start)
}

/// Criteria-based censuses equal the closed forms; cross-checked against the
/// oracle census for `k <= oracle_max_k`.
pub fn distribution(ks: RangeInclusive<u32>, oracle_max_k: u32, deadline: Option<Instant>) -> SuiteResult {
    let start = Instant::now();
    let mut ck = Checker::new(deadline);
    let oracle = Oracle::default();
    let checkpoints: [(u32, u32, [u64; 4]); 4] = [
        (3, 1, [3, 3, 0, 1]),
        (2, 1, [1, 2, 0, 0]),
        (4, 2, [6, 4, 5, 0]),
        (6, 2, [26, 15, 21, 1]),
    ];
    for k in ks.clone() {
        if ck.out_of_time() {
            break;
        }
        let f = field(k);
        for l in 1..k {
            match psolver::distribution(&f, l) {
                Ok(rep) => {
                    ck.check(rep.matches, || {
                        format!("k={k} l={l}: observed {:?} predicted {:?}", rep.counts, rep.predicted)
                    });
                    if k <= oracle_max_k {
                        match oracle.census(Family::P, &f, l, None) {
                            Ok(o) => ck.check(o.counts == rep.counts, || {
                                format!("k={k} l={l}: oracle {:?} criteria {:?}", o.counts, rep.counts)
                            }),
                            Err(e) => ck.error(e),
                        }
                    }
                    for (ck_k, ck_l, want) in checkpoints {
                        if (ck_k, ck_l) == (k, l) {
                            let got: Vec<u64> = rep.counts.values().copied().collect();
                            ck.check(got == want, || format!("checkpoint k={k} l={l}: {got:?}"));
                        }
                    }
                }
                Err(e) => ck.error(e),
            }
        }
    }
    ck.finish(2, "distribution", false, start)
}

/// For `gcd(l, k) = 1`: the trace criterion detects exactly the single-zero
/// case, agrees with `Z_k(a) = 0, C_k(a) != 0`, and matches the trace of
/// `1 + (1 + x0^-1)^e(l')` at any zero `x0`.
pub fn gcd1_criterion(ks: RangeInclusive<u32>, deadline: Option<Instant>) -> SuiteResult {
    let start = Instant::now();
    let mut ck = Checker::new(deadline);
    let oracle = Oracle::default();
    for k in ks {
        if ck.out_of_time() {
            break;
        }
        let f = field(k);
        for l in 1..k {
            let Ok(p) = CoprimeParams::new(k, l) else { continue };
            let cnz = Cnz::new(&f, l).expect("valid l");
            ck.sweep(f.nonzero_elements().collect(), |a| {
                let bit = psolver::gcd1_criterion(&f, l, a).ok()?;
                let roots = oracle.roots_p(&f, l, a).ok()?.roots;
                if bit != (roots.len() == 1) {
                    return Some(format!("k={k} l={l} a={a}: trace bit {bit}, {} zeros", roots.len()));
                }
                let v = cnz.values(a);
                if bit != (v.z.is_zero() && !v.cn().is_zero()) {
                    return Some(format!("k={k} l={l} a={a}: Z/C test disagrees"));
                }
                let tr = f.abs_trace(p.r_eval(&f, f.inv(a).ok()?));
                for x0 in roots.iter() {
                    let xi = f.inv(x0).ok()?;
                    let h = p.h_eval(&f, p.l_prime, xi).ok()?;
                    let e = p.one_plus_x_pow_e(&f, p.l_prime, xi).ok()?;
                    if f.abs_trace(h) != tr || f.abs_trace(e + Fe::ONE) != tr {
                        return Some(format!("k={k} l={l} a={a} x0={x0}: trace identity fails"));
                    }
                }
                None
            });
        }
    }
    ck.finish(3, "gcd1-criterion", false, start)
}

/// Explicit roots in the one-zero and two-zero (odd `d`) cases.
pub fn closed_form_roots(ks: RangeInclusive<u32>, deadline: Option<Instant>) -> SuiteResult {
    let start = Instant::now();
    let mut ck = Checker::new(deadline);
    {
        let f = field(3);
        let r = psolver::solve(&f, 1, Fe::new(3));
        ck.check(
            r.as_ref().map(|r| r.roots() == [Fe::new(5)]).unwrap_or(false),
            || format!("checkpoint GF(8) l=1 a=0x3: {r:?}"),
        );
    }
    for k in ks {
        if ck.out_of_time() {
            break;
        }
        let f = field(k);
        for l in 1..k {
            let d = gcd(l, k);
            ck.sweep(f.nonzero_elements().collect(), |a| {
                let cls = psolver::classify(&f, l, a).ok()?;
                let want = match cls.class {
                    PaClass::One => 1,
                    PaClass::Two if d % 2 == 1 => 2,
                    _ => return None,
                };
                let roots = psolver::solve_classified(&f, l, a, &cls).ok()?;
                let ok = roots.len() == want
                    && roots.iter().all(|x| psolver::eval(&f, l, a, x).is_zero());
                (!ok).then(|| format!("k={k} l={l} a={a}: {:?} roots {}", cls.class, fmt_roots(roots.roots())))
            });
        }
    }
    ck.finish(4, "closed-form-roots", false, start)
}

/// Pointwise identities of the `C`/`Z` recursions and the V-map, plus zero counts.
pub fn cz_identities(ks: RangeInclusive<u32>, deadline: Option<Instant>) -> SuiteResult {
    let start = Instant::now();
    let mut ck = Checker::new(deadline);
    for (k, l, cz, zz) in [(3, 1, Some(1), 4), (4, 2, None, 4)] {
        let f = field(k);
        let c = Cnz::new(&f, l).expect("valid l");
        if let Some(cz) = cz {
            ck.check(c.count_zeros_cn() == cz, || format!("checkpoint C zeros k={k} l={l}"));
        }
        ck.check(c.count_zeros_zn() == zz, || format!("checkpoint Z zeros k={k} l={l}"));
    }
    for k in ks {
        if ck.out_of_time() {
            break;
        }
        let f = field(k);
        for l in 1..k {
            let cnz = Cnz::new(&f, l).expect("valid l");
            let (d, n) = (cnz.d(), cnz.n() as usize);
            let lu = l as u64;
            ck.check(
                cnz.count_zeros_cn() == formulas::c_zero_count(k, l).unwrap_or(u64::MAX),
                || format!("k={k} l={l}: C zero count"),
            );
            ck.check(
                cnz.count_zeros_zn() == formulas::z_zero_count(k, l).unwrap_or(u64::MAX),
                || format!("k={k} l={l}: Z zero count"),
            );
            ck.sweep(f.elements().collect(), |u| {
                let fail = |what: &str| Some(format!("k={k} l={l} u={u}: {what}"));
                let c = cnz.c_sequence(u, n + 1);
                if cnz.c_dual_sequence(u, n + 1) != c {
                    return fail("dual recursion");
                }
                let mut prod = Fe::ONE;
                for i in 1..n {
                    prod = f.mul(prod, cnz.u_i(u, i as u64));
                    let lhs = f.mul(f.frob(c[i], lu), c[i + 2]) + f.mul(c[i + 1], f.frob(c[i + 1], lu));
                    if lhs != prod {
                        return fail("product identity");
                    }
                    if cnz.tridiagonal_det(u, i) != f.square(c[i + 2]) {
                        return fail("tridiagonal determinant");
                    }
                }
                let z = cnz.z_eval(u);
                if !f.in_subfield(z, d) {
                    return fail("Z not in subfield");
                }
                if f.in_subfield(u, d) {
                    return None;
                }
                let v = cnz.v_map(u).ok()?;
                let vals = cnz.values(v);
                if v.is_zero() || !vals.z.is_zero() {
                    return fail("Z(V) != 0");
                }
                let tr = f.trace(u, d).ok()?;
                if vals.cn().is_zero() != tr.is_zero() {
                    return fail("C(V) = 0 iff trace 0");
                }
                if n >= 3 {
                    if cnz.c_of_v_product(u).ok()? != vals.cn() {
                        return fail("C(V) product form");
                    }
                    if !tr.is_zero() {
                        let q = f
                            .div(
                                f.frob(vals.c(n - 1), lu),
                                f.mul(vals.cn(), f.frob(vals.cn(), lu)),
                            )
                            .ok()?;
                        if !f.trace(q, d).ok()?.is_zero() {
                            return fail("trace of C_(n-1)^(2^l) / C_n^(2^l+1)");
                        }
                    }
                }
                None
            });
        }
    }
    ck.finish(5, "cz-identities", false, start)
}

/// Permutation, inverse and trace properties of the `gcd(l, k) = 1` machinery.
pub fn dobbertin_suite(ks: RangeInclusive<u32>, deadline: Option<Instant>) -> SuiteResult {
    let start = Instant::now();
    let mut ck = Checker::new(deadline);
    {
        let f = field(3);
        let p = CoprimeParams::new(3, 2).expect("coprime");
        let g = Fe::new(2);
        ck.check(p.q_eval(&f, g, true) == Ok(f.pow(g, 5)), || "checkpoint q(g)".into());
        ck.check(p.r_eval(&f, f.square(g)) == g, || "checkpoint R(g^2)".into());
    }
    for k in ks {
        if ck.out_of_time() {
            break;
        }
        let f = field(k);
        for l in 1..k {
            let Ok(p) = CoprimeParams::new(k, l) else { continue };
            let eps = p.bijective_eps();
            let mut image: Vec<Fe> = f
                .nonzero_elements()
                .filter_map(|x| p.q_eval(&f, x, eps).ok())
                .collect();
            image.sort_unstable();
            image.dedup();
            ck.check(
                image.len() as u64 == f.group_order() && !image.contains(&Fe::ZERO),
                || format!("k={k} l={l}: q not bijective"),
            );
            ck.sweep(f.elements().collect(), |x| {
                let fail = |what: &str| Some(format!("k={k} l={l} x={x}: {what}"));
                for i in 1..=p.l_prime {
                    let h = p.h_eval(&f, i, x).ok()?;
                    let e = p.one_plus_x_pow_e(&f, i, x).ok()?;
                    if f.abs_trace(h) != f.abs_trace(e + Fe::ONE) {
                        return fail("trace of H_i");
                    }
                }
                if x.is_zero() {
                    return None;
                }
                let q = p.q_eval(&f, x, eps).ok()?;
                if p.r_eval(&f, f.inv(q).ok()?) != x {
                    return fail("R(1/q(x)) != x");
                }
                let root = p.r_eval(&f, f.inv(x).ok()?);
                if !affine::eval(&f, l, x, Fe::ONE, root).is_zero() {
                    return fail("R(1/a) is not a zero of F_a");
                }
                None
            });
        }
    }
    ck.finish(6, "dobbertin", false, start)
}

/// Affine family: solver against the oracle, trace classes, character sums, census.
pub fn f_family(ks: RangeInclusive<u32>, deadline: Option<Instant>) -> SuiteResult {
    let start = Instant::now();
    let mut ck = Checker::new(deadline);
    let oracle = Oracle::default();
    for k in ks {
        if ck.out_of_time() {
            break;
        }
        let f = field(k);
        for l in 1..k {
            let d = gcd(l, k);
            let n = k / d;
            match affine::f_census(&f, l) {
                Ok(rep) => {
                    ck.check(rep.matches, || format!("k={k} l={l}: census {:?} vs {:?}", rep.counts, rep.predicted));
                    if (k, l) == (3, 1) {
                        let got: Vec<u64> = rep.counts.values().copied().collect();
                        ck.check(got == [3, 3, 1], || format!("checkpoint census {got:?}"));
                    }
                }
                Err(e) => ck.error(e),
            }
            let coprime = CoprimeParams::new(k, l).ok();
            let subfield = f.subfield_elements(d).expect("d | k");
            let items: Vec<(Fe, Fe)> = f
                .elements()
                .flat_map(|a| subfield.iter().map(move |&c| (a, c)))
                .collect();
            ck.sweep(items, |(a, c)| {
                let fail = |what: String| Some(format!("k={k} l={l} a={a} c={c}: {what}"));
                let sol = match affine::solve_f(&f, l, a, c) {
                    Ok(s) => s,
                    Err(e) => return fail(e.to_string()),
                };
                let truth = oracle.roots_f(&f, l, a, c).ok()?.roots;
                if !sol.roots.same_roots(&truth) || truth.is_empty() {
                    return fail(format!("solve {} oracle {}", fmt_roots(sol.roots.roots()), fmt_roots(truth.roots())));
                }
                if affine::classify_f(&f, l, a).ok()? != sol.arity {
                    return fail("arity".into());
                }
                for v in sol.roots.iter() {
                    if f.trace(v, d).ok()? != sol.trace_class {
                        return fail("roots differ in trace".into());
                    }
                }
                if sol.trace_class != affine::predicted_trace_class(n, d, sol.arity, c) {
                    return fail(format!("trace class {}", sol.trace_class));
                }
                if !c.is_zero() && sol.arity > 1 {
                    let s = affine::character_sum(&f, l, a, c).ok()?;
                    let want: &[i64] = match (n % 2, sol.arity == 1u64 << d) {
                        (1, true) => &[0],
                        (1, false) => &[1i64 << d],
                        (_, true) => &[1i64 << d, -(1i64 << d)],
                        _ => return None,
                    };
                    if !want.contains(&s) {
                        return fail(format!("character sum {s}"));
                    }
                }
                if let (Some(p), true) = (coprime, c == Fe::ONE && !a.is_zero()) {
                    let special = p.r_eval(&f, f.inv(a).ok()?);
                    let tr_r = f.abs_trace(special) as u32;
                    let tr_int = |m: u32| (m % 2) * (k % 2);
                    for v in sol.roots.iter() {
                        let lhs = f.abs_trace(f.mul(a, f.mul(v, f.frob(v, l as u64)))) as u32;
                        let rhs = if v == special {
                            (p.l_prime * tr_r + tr_int(p.l_prime + 1)) % 2
                        } else {
                            (p.l_prime * tr_r + tr_int(p.l_prime)) % 2
                        };
                        if lhs != rhs {
                            return fail(format!("trace of a v^(2^l+1) at v={v}"));
                        }
                    }
                }
                None
            });
        }
    }
    ck.finish(7, "f-family", false, start)
}

/// Linearized family over GF(2^(2k)): predicted kernel size against the
/// exhaustive kernel, and agreement of the two power tests.
pub fn q_family(ks: RangeInclusive<u32>, deadline: Option<Instant>) -> SuiteResult {
    let start = Instant::now();
    let mut ck = Checker::new(deadline);
    let oracle = Oracle::default();
    for k in ks {
        if ck.out_of_time() {
            break;
        }
        let ext = match ExtContext::new(field(k)) {
            Ok(x) => x,
            Err(e) => {
                ck.error(e);
                continue;
            }
        };
        let circle = ext.unit_circle();
        for l in 1..k {
            for &r in &circle {
                try_check(&mut ck, ext.r_power_test(r, l).map(|_| ()));
            }
            let items: Vec<(Fe, Fe)> = circle
                .iter()
                .flat_map(|&r| ext.base().nonzero_elements().map(move |a| (r, a)))
                .collect();
            ck.sweep(items, |(r, a)| {
                let cls = match ext.classify_q(a, r, l) {
                    Ok(c) => c,
                    Err(e) => return Some(format!("k={k} l={l} r={r} a={a}: {e}")),
                };
                let truth = oracle.kernel_q(&ext, a, r, l).ok()?.roots;
                (cls.kernel_size != truth.len() as u64).then(|| {
                    format!(
                        "k={k} l={l} r={r} a={a}: predicted {} kernel {}",
                        cls.kernel_size,
                        truth.len()
                    )
                })
            });
        }
    }
    ck.finish(8, "q-family", false, start)
}

/// Multiset relations between `q` and the V-map on trace classes (report only).
pub fn multiset_suite(ks: RangeInclusive<u32>, deadline: Option<Instant>) -> SuiteResult {
    let start = Instant::now();
    let mut ck = Checker::new(deadline);
    for k in ks {
        if ck.out_of_time() {
            break;
        }
        let f = field(k);
        let sets = TraceClassSets::new(&f);
        for l in 1..k {
            let Ok(p) = CoprimeParams::new(k, l) else { continue };
            let eps = p.l_prime % 2 == 1;
            let i = k % 2 == 1;
            let run = || -> Result<(Vec<Fe>, Vec<Fe>)> {
                Ok((
                    p.multiset_image(&f, MultisetMap::Q(eps), sets.t(i))?,
                    p.multiset_image(&f, MultisetMap::V, &sets.t0)?,
                ))
            };
            match run() {
                Ok((q, v)) => ck.check(q == v, || format!("k={k} l={l}: q(T_{}) != V(T_0)", i as u8)),
                Err(e) => ck.error(e),
            }
            if k % 2 == 1 {
                let run = || -> Result<(Vec<Fe>, Vec<Fe>)> {
                    Ok((
                        p.multiset_image(&f, MultisetMap::Q(false), &sets.t0)?,
                        p.multiset_image(&f, MultisetMap::V, &sets.t1)?,
                    ))
                };
                match run() {
                    Ok((q, v)) => {
                        let mut distinct = q.clone();
                        distinct.dedup();
                        ck.check(distinct.len() == q.len(), || format!("k={k} l={l}: q^(0) not injective on T_0"));
                        ck.check(q == v, || format!("k={k} l={l}: q^(0)(T_0) != V(T_1)"));
                    }
                    Err(e) => ck.error(e),
                }
            }
        }
    }
    ck.finish(9, "multiset-corollary", true, start)
}

/// Counts zeros `x0` of `P_a` (gcd case) where `R(a^-1) = H_l'(x0^-1)` (report only).
pub fn h_coincidence_suite(ks: RangeInclusive<u32>, deadline: Option<Instant>) -> SuiteResult {
    let start = Instant::now();
    let mut ck = Checker::new(deadline);
    for k in ks {
        if ck.out_of_time() {
            break;
        }
        let f = field(k);
        for l in 1..k {
            let Ok(p) = CoprimeParams::new(k, l) else { continue };
            ck.sweep(f.nonzero_elements().collect(), |a| {
                let roots = psolver::solve(&f, l, a).ok()?;
                let r = p.r_eval(&f, f.inv(a).ok()?);
                for x0 in roots.iter() {
                    let h = p.h_eval(&f, p.l_prime, f.inv(x0).ok()?).ok()?;
                    if h == r {
                        return Some(format!("k={k} l={l} a={a} x0={x0}: R(1/a) = H(1/x0)"));
                    }
                }
                None
            });
        }
    }
    ck.finish(10, "h-coincidence", true, start)
}

/// Runs every suite with ranges clipped to the configuration.
pub fn run_all(cfg: &VerifyConfig) -> VerifyReport {
    let deadline = cfg.budget.map(|b| Instant::now() + b);
    let (lo, hi) = (*cfg.k_range.start(), *cfg.k_range.end());
    let suites = vec![
        oracle_equivalence(lo..=hi.min(cfg.oracle_max_k), deadline),
        distribution(lo..=hi, cfg.oracle_max_k, deadline),
        gcd1_criterion(lo..=hi.min(cfg.oracle_max_k.max(12)), deadline),
        closed_form_roots(lo..=hi, deadline),
        cz_identities(lo..=hi, deadline),
        dobbertin_suite(lo..=hi, deadline),
        f_family(lo..=hi.min(cfg.oracle_max_k), deadline),
        q_family(lo..=hi.min(cfg.q_max_k), deadline),
        multiset_suite(lo..=hi, deadline),
        h_coincidence_suite(lo..=hi, deadline),
    ];
    let passed = suites.iter().all(|s| s.passed || s.report_only);
    VerifyReport { passed, suites }
}
