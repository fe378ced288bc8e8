//! Kernels of `Q_a(x) = r^(2^l) a^(2^l) x^(2^(2l)) + x^(2^(k+l)) + r a x` over
//! GF(2^(2k)), for `a` in GF(2^k)^* and `r` on the unit circle `r^(2^k+1) = 1`.
//!
//! The kernel is computed exactly by GF(2)-linear algebra on 2k coordinates.
//! The predicted size comes from the zero count of `z^(2^(k+l)+1) + z + a^2`
//! over GF(2^(2k)), whether `r` is a `(2^(k+l)-1)`-th power, and `Y_n(a)`.

use serde::Serialize;

use crate::cnz::Cnz;
use crate::error::{Error, Result};
use crate::field::{gcd, Fe, FieldCtx};
use crate::linalg::Gf2Map;
use crate::psolver;
use crate::rootset::{Provenance, RootSet};

/// GF(2^k) together with GF(2^(2k)) and an embedding of the former.
#[derive(Debug, Clone)]
pub struct ExtContext {
    base: FieldCtx,
    ext: FieldCtx,
    // images of 1, x, x^2, ..., x^(k-1)
    basis_images: Vec<Fe>,
}

impl ExtContext {
    /// The extension uses its own smallest irreducible modulus; the base
    /// generator maps to the smallest root of the base modulus.
    pub fn new(base: FieldCtx) -> Result<Self> {
        let k = base.k();
        if k > 16 {
            return Err(Error::UnsupportedDegree(2 * k));
        }
        let ext = FieldCtx::new(2 * k, None)?;
        let m = base.modulus();
        let eval = |t: Fe| {
            let mut acc = Fe::ZERO;
            for i in (0..=k).rev() {
                acc = ext.mul(acc, t);
                if (m >> i) & 1 == 1 {
                    acc += Fe::ONE;
                }
            }
            acc
        };
        // roots live in the subfield GF(2^k) of the extension
        let h = ext.pow(ext.generator(), ext.group_order() / base.group_order());
        let mut t = Fe::ONE;
        let mut root = None;
        for _ in 0..base.group_order() {
            if eval(t).is_zero() {
                root = Some(t);
                break;
            }
            t = ext.mul(t, h);
        }
        let root = root.expect("base modulus splits in the extension");
        let theta = (0..k)
            .map(|i| ext.frob(root, i as u64))
            .min()
            .expect("k >= 2");
        let mut basis_images = Vec::with_capacity(k as usize);
        let mut p = Fe::ONE;
        for _ in 0..k {
            basis_images.push(p);
            p = ext.mul(p, theta);
        }
        Ok(ExtContext {
            base,
            ext,
            basis_images,
        })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn ext(&self) -> &FieldCtx {
        &self.ext
    }

    pub fn k(&self) -> u32 {
        self.base.k()
    }

    pub fn embed(&self, x: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        let mut b = x.bits();
        while b != 0 {
            let i = b.trailing_zeros();
            acc += self.basis_images[i as usize];
            b &= b - 1;
        }
        acc
    }

    /// `d_1 = gcd(k + l, 2k)`.
    pub fn d1(&self, l: u32) -> u32 {
        gcd(self.k() + l, 2 * self.k())
    }

    /// The `2^k + 1` elements `r` with `r^(2^k+1) = 1`, as powers of a
    /// generator of that subgroup.
    pub fn unit_circle(&self) -> Vec<Fe> {
        let e = &self.ext;
        let zeta = e.pow(e.generator(), self.base.group_order());
        let count = self.base.order() + 1;
        let mut out = Vec::with_capacity(count as usize);
        let mut t = Fe::ONE;
        for _ in 0..count {
            out.push(t);
            t = e.mul(t, zeta);
        }
        out
    }

    pub fn on_unit_circle(&self, r: Fe) -> bool {
        !r.is_zero() && self.ext.pow(r, self.base.order() + 1) == Fe::ONE
    }

    fn check_r(&self, r: Fe) -> Result<()> {
        if self.on_unit_circle(r) {
            Ok(())
        } else {
            Err(Error::BadUnitCircle(r.bits()))
        }
    }

    fn check_l(&self, l: u32) -> Result<()> {
        if l == 0 || l >= self.k() {
            return Err(Error::RangeError {
                what: "l",
                value: l as u64,
            });
        }
        Ok(())
    }

    /// `delta = r^((2^k+1)/(2^d+1))`, defined when `k/d` is odd.
    pub fn delta(&self, r: Fe, l: u32) -> Option<Fe> {
        let k = self.k();
        let d = gcd(l, k);
        let num = self.base.order() + 1;
        let den = (1u64 << d) + 1;
        num.is_multiple_of(den).then(|| self.ext.pow(r, num / den))
    }

    /// Power test by the divisibility criterion: always a power when
    /// `(k+l)/d` is odd, otherwise exactly when `delta = 1`.
    pub fn r_power_criterion(&self, r: Fe, l: u32) -> Result<bool> {
        self.check_l(l)?;
        self.check_r(r)?;
        let d = gcd(l, self.k());
        if ((self.k() + l) / d) % 2 == 1 {
            return Ok(true);
        }
        let delta = self.delta(r, l).expect("k/d odd when (k+l)/d even");
        Ok(delta == Fe::ONE)
    }

    /// Power test by order: `r = s^(2^(k+l)-1)` is solvable iff
    /// `r^((2^(2k)-1)/g) = 1` with `g = gcd(2^(k+l)-1, 2^(2k)-1)`.
    pub fn r_power_by_order(&self, r: Fe, l: u32) -> Result<bool> {
        self.check_l(l)?;
        self.check_r(r)?;
        let q1 = self.ext.group_order();
        let g = gcd_u64((1u64 << (self.k() + l)) - 1, q1);
        Ok(self.ext.pow(r, q1 / g) == Fe::ONE)
    }

    /// Both power tests; disagreement is reported as an error.
    pub fn r_power_test(&self, r: Fe, l: u32) -> Result<bool> {
        let a = self.r_power_criterion(r, l)?;
        let b = self.r_power_by_order(r, l)?;
        if a != b {
            return Err(Error::PowerTestDisagreement(r.bits()));
        }
        Ok(a)
    }

    /// Evaluates `Q_a(x)` with `a` given in the base field.
    pub fn q_eval(&self, a: Fe, r: Fe, l: u32, x: Fe) -> Fe {
        let e = &self.ext;
        let ra = e.mul(r, self.embed(a));
        let l = l as u64;
        let k = self.k() as u64;
        e.mul(e.frob(ra, l), e.frob(x, 2 * l)) + e.frob(x, k + l) + e.mul(ra, x)
    }

    /// The kernel of `Q_a` by linear algebra over GF(2).
    pub fn q_kernel(&self, a: Fe, r: Fe, l: u32) -> Result<RootSet> {
        self.check_l(l)?;
        self.check_r(r)?;
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let map = Gf2Map::from_fn(2 * self.k(), |x| {
            self.q_eval(a, r, l, Fe::new(x as u32)).bits() as u64
        });
        Ok(RootSet::new(
            map.kernel().into_iter().map(|b| Fe::new(b as u32)),
            Provenance::LinearAlgebra,
        ))
    }

    /// Predicted kernel size of `Q_a`.
    pub fn classify_q(&self, a: Fe, r: Fe, l: u32) -> Result<QClassification> {
        self.check_l(l)?;
        self.check_r(r)?;
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let k = self.k();
        let d = gcd(l, k);
        let d1 = self.d1(l);
        let e = &self.ext;
        let a2 = e.square(self.embed(a));
        let f_zero_count = psolver::classify(e, k + l, a2)?.class.arity(d1);
        let r_is_power = self.r_power_test(r, l)?;
        let mut y_val = None;
        let kernel_size = if r_is_power {
            match f_zero_count {
                1 => 1u64 << d1,
                c if c == (1u64 << d1) + 1 => 1u64 << (2 * d1),
                _ => 1,
            }
        } else if f_zero_count == 2 {
            let delta = self.delta(r, l).expect("k/d odd when r is not a power");
            let y = Cnz::new(&self.base, l)?.y_eval(self, a, delta)?;
            y_val = Some(y);
            if y.is_zero() {
                1u64 << (2 * d)
            } else {
                1
            }
        } else {
            1
        };
        Ok(QClassification {
            kernel_size,
            r_is_power,
            f_zero_count,
            y_val,
        })
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QClassification {
    pub kernel_size: u64,
    pub r_is_power: bool,
    pub f_zero_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_val: Option<Fe>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(k: u32) -> ExtContext {
        ExtContext::new(FieldCtx::new(k, None).unwrap()).unwrap()
    }

    #[test]
    fn embedding_is_a_ring_map() {
        for k in 2..=7 {
            let x = ext(k);
            let (b, e) = (x.base(), x.ext());
            for p in b.elements() {
                assert!(e.in_subfield(x.embed(p), k));
                for q in b.elements().step_by(3) {
                    assert_eq!(x.embed(b.mul(p, q)), e.mul(x.embed(p), x.embed(q)));
                    assert_eq!(x.embed(p + q), x.embed(p) + x.embed(q));
                }
            }
            let images: std::collections::BTreeSet<_> = b.elements().map(|p| x.embed(p)).collect();
            assert_eq!(images.len() as u64, b.order());
        }
    }

    #[test]
    fn unit_circle_size() {
        for k in 2..=6 {
            let x = ext(k);
            let circle = x.unit_circle();
            assert_eq!(circle.len() as u64, (1u64 << k) + 1);
            assert!(circle.contains(&Fe::ONE));
            assert!(circle.iter().all(|&r| x.on_unit_circle(r)));
            let distinct: std::collections::BTreeSet<_> = circle.iter().collect();
            assert_eq!(distinct.len(), circle.len());
        }
        assert_eq!(ext(3).unit_circle().len(), 9);
    }

    #[test]
    fn d1_values() {
        let x = ext(3);
        assert_eq!(x.d1(1), 2);
        assert_eq!(x.d1(2), 1);
        let x = ext(6);
        assert_eq!(x.d1(2), 4);
        assert_eq!(x.d1(3), 3);
    }

    #[test]
    fn power_tests_agree() {
        for k in 2..=6 {
            let x = ext(k);
            for l in 1..k {
                for r in x.unit_circle() {
                    assert_eq!(
                        x.r_power_criterion(r, l).unwrap(),
                        x.r_power_by_order(r, l).unwrap()
                    );
                }
                assert!(x.r_power_test(Fe::ONE, l).unwrap());
            }
        }
        // k=3, l=1: the elements of order 9 are not cubes
        let x = ext(3);
        let e = x.ext();
        let r = x
            .unit_circle()
            .into_iter()
            .find(|&r| e.multiplicative_order(r).unwrap() == 9)
            .unwrap();
        assert!(!x.r_power_test(r, 1).unwrap());
        assert_eq!(x.r_power_test(Fe::new(2), 1), Err(Error::BadUnitCircle(2)));
    }

    #[test]
    fn prediction_matches_kernel() {
        for k in 2..=4 {
            let x = ext(k);
            for l in 1..k {
                for r in x.unit_circle() {
                    for a in x.base().nonzero_elements() {
                        let ker = x.q_kernel(a, r, l).unwrap();
                        let cls = x.classify_q(a, r, l).unwrap();
                        assert_eq!(cls.kernel_size, ker.len() as u64, "k={k} l={l} r={r} a={a}");
                        assert!(ker.contains(Fe::ZERO));
                    }
                }
            }
        }
    }
}
