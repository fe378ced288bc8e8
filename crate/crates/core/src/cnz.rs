//! The `C_i` / `Z_n` recursions and the V-map.
//!
//! For `u` in GF(2^k) write `u_i = u^(2^(il))`. Then `C_1 = C_2 = 1`,
//! `C_(i+2) = C_(i+1) + u_i C_i`, and `Z_n = C_(n+1) + u C_(n-1)^(2^l)`.
//! Whether `C_n(a)` and `Z_n(a)` vanish decides the zero count of the
//! trinomial and of its affine companion.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx, SubfieldParams};
use crate::linearized::ExtContext;

/// `C_1(a), ..., C_(n+1)(a)` and `Z_n(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnzValues {
    pub a: Fe,
    // c[0] is unused so that c[i] = C_i
    c: Vec<Fe>,
    pub z: Fe,
}

impl CnzValues {
    /// `C_i(a)` for `1 <= i <= n + 1`.
    pub fn c(&self, i: usize) -> Fe {
        assert!(i >= 1 && i < self.c.len(), "C index {i} out of range");
        self.c[i]
    }

    /// `C_n(a)`.
    pub fn cn(&self) -> Fe {
        self.c[self.c.len() - 2]
    }

    pub fn n(&self) -> usize {
        self.c.len() - 2
    }
}

/// Evaluator bound to a field and an exponent `l`.
#[derive(Debug, Clone, Copy)]
pub struct Cnz<'a> {
    ctx: &'a FieldCtx,
    l: u32,
    sub: SubfieldParams,
}

impl<'a> Cnz<'a> {
    pub fn new(ctx: &'a FieldCtx, l: u32) -> Result<Self> {
        let sub = SubfieldParams::for_exponent(ctx.k(), l)?;
        Ok(Cnz { ctx, l, sub })
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn d(&self) -> u32 {
        self.sub.d
    }

    pub fn n(&self) -> u32 {
        self.sub.n
    }

    /// `u^(2^(il))`.
    #[inline]
    pub fn u_i(&self, u: Fe, i: u64) -> Fe {
        self.ctx.frob(u, i * self.l as u64)
    }

    /// `C_1(a), ..., C_m(a)` with `c[0]` a placeholder.
    pub fn c_sequence(&self, a: Fe, m: usize) -> Vec<Fe> {
        let f = self.ctx;
        let mut c = vec![Fe::ZERO; m.max(2) + 1];
        c[1] = Fe::ONE;
        c[2] = Fe::ONE;
        for i in 1..m.saturating_sub(1) {
            c[i + 2] = c[i + 1] + f.mul(self.u_i(a, i as u64), c[i]);
        }
        c.truncate(m + 1);
        c
    }

    /// The full array of `C` values and `Z_n(a)`.
    pub fn values(&self, a: Fe) -> CnzValues {
        let n = self.sub.n as usize;
        let c = self.c_sequence(a, n + 1);
        let z = if n == 1 {
            Fe::ONE
        } else {
            c[n + 1] + self.ctx.mul(a, self.ctx.frob(c[n - 1], self.l as u64))
        };
        CnzValues { a, c, z }
    }

    pub fn c_eval(&self, i: u32, a: Fe) -> Result<Fe> {
        if i == 0 || i > self.sub.n + 1 {
            return Err(Error::RangeError {
                what: "C index",
                value: i as u64,
            });
        }
        Ok(self.c_sequence(a, i as usize)[i as usize])
    }

    pub fn z_eval(&self, a: Fe) -> Fe {
        self.values(a).z
    }

    /// `C_(i+2)` from the dual recursion `C_(i+2) = C_(i+1)^(2^l) + u_1 C_i^(2^(2l))`.
    pub fn c_dual_sequence(&self, a: Fe, m: usize) -> Vec<Fe> {
        let f = self.ctx;
        let l = self.l as u64;
        let u1 = self.u_i(a, 1);
        let mut c = vec![Fe::ZERO; m.max(2) + 1];
        c[1] = Fe::ONE;
        c[2] = Fe::ONE;
        for i in 1..m.saturating_sub(1) {
            c[i + 2] = f.frob(c[i + 1], l) + f.mul(u1, f.frob(c[i], 2 * l));
        }
        c.truncate(m + 1);
        c
    }

    /// The V-map `v^(2^(2l)+1) / (v + v^(2^l))^(2^l+1)`.
    pub fn v_map(&self, v: Fe) -> Result<Fe> {
        let f = self.ctx;
        let v1 = self.u_i(v, 1);
        let v2 = self.u_i(v, 2);
        let w = v + v1;
        if w.is_zero() {
            return Err(Error::InSubfield(v.bits()));
        }
        let den = f.mul(w, f.frob(w, self.l as u64));
        f.div(f.mul(v, v2), den)
    }

    /// Product form of `C_n(V(v))`:
    /// `Tr_d^k(v) / (v_1 + v_2) * prod_{j=2}^{n-1} (v / (v + v_1))^(2^(jl))`.
    pub fn c_of_v_product(&self, v: Fe) -> Result<Fe> {
        let f = self.ctx;
        let v1 = self.u_i(v, 1);
        let v2 = self.u_i(v, 2);
        let tr = f.trace(v, self.sub.d)?;
        let mut acc = f.div(tr, v1 + v2).map_err(|_| Error::InSubfield(v.bits()))?;
        let ratio = f.div(v, v + v1).map_err(|_| Error::InSubfield(v.bits()))?;
        for j in 2..self.sub.n as u64 {
            acc = f.mul(acc, self.u_i(ratio, j));
        }
        Ok(acc)
    }

    /// Determinant of the `(i+1) x (i+1)` symmetric tridiagonal matrix with
    /// unit diagonal and off-diagonal `u_1, ..., u_i`, by Gaussian elimination.
    pub fn tridiagonal_det(&self, u: Fe, i: usize) -> Fe {
        let m = i + 1;
        let mut mat = vec![vec![Fe::ZERO; m]; m];
        for r in 0..m {
            mat[r][r] = Fe::ONE;
            if r + 1 < m {
                let x = self.u_i(u, (r + 1) as u64);
                mat[r][r + 1] = x;
                mat[r + 1][r] = x;
            }
        }
        determinant(self.ctx, mat)
    }

    /// Zeros of `C_n` found by sweeping GF(2^k).
    pub fn count_zeros_cn(&self) -> u64 {
        self.count(|v| v.cn().is_zero())
    }

    /// Zeros of `Z_n` found by sweeping GF(2^k).
    pub fn count_zeros_zn(&self) -> u64 {
        self.count(|v| v.z.is_zero())
    }

    fn count(&self, pred: impl Fn(&CnzValues) -> bool + Sync) -> u64 {
        (0..self.ctx.order())
            .into_par_iter()
            .filter(|&b| pred(&self.values(Fe::new(b as u32))))
            .count() as u64
    }

    /// `Y_n(a) = Z_n(a)^2 + N_d^k(a) (delta + delta^-1)`, computed in GF(2^(2k)).
    pub fn y_eval(&self, ext: &ExtContext, a: Fe, delta: Fe) -> Result<Fe> {
        let e = ext.ext();
        let d = self.sub.d;
        if delta.is_zero() || e.pow(delta, (1u64 << d) + 1) != Fe::ONE {
            return Err(Error::BadRootOfUnity(delta.bits()));
        }
        let z = ext.embed(self.z_eval(a));
        let norm = ext.embed(self.ctx.norm(a, d)?);
        Ok(e.square(z) + e.mul(norm, delta + e.inv(delta)?))
    }
}

/// Determinant of a square matrix over GF(2^k).
pub fn determinant(f: &FieldCtx, mut mat: Vec<Vec<Fe>>) -> Fe {
    let m = mat.len();
    let mut det = Fe::ONE;
    for col in 0..m {
        let Some(p) = (col..m).find(|&r| !mat[r][col].is_zero()) else {
            return Fe::ZERO;
        };
        mat.swap(col, p);
        let piv = mat[col][col];
        det = f.mul(det, piv);
        let inv = f.inv(piv).expect("nonzero pivot");
        for r in col + 1..m {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = f.mul(mat[r][col], inv);
            let pivot_row = mat[col].clone();
            for (x, &p) in mat[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x += f.mul(factor, p);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas;

    const G: Fe = Fe::new(0b010);

    fn gf(k: u32) -> FieldCtx {
        FieldCtx::new(k, None).unwrap()
    }

    #[test]
    fn gf8_values() {
        let f = gf(3);
        let c = Cnz::new(&f, 1).unwrap();
        let g3 = f.pow(G, 3);
        assert_eq!(c.c_eval(1, G).unwrap(), Fe::ONE);
        assert_eq!(c.c_eval(3, g3).unwrap(), Fe::new(0b100));
        assert_eq!(c.c_eval(3, Fe::ZERO).unwrap(), Fe::ONE);
        assert!(c.c_eval(5, G).is_err());
        assert_eq!(c.z_eval(Fe::ZERO), Fe::ONE);
        assert_eq!(c.z_eval(g3), Fe::ZERO);
        assert_eq!(c.z_eval(G), Fe::ONE);
        assert_eq!(c.v_map(G).unwrap(), Fe::ONE);
        assert_eq!(c.z_eval(Fe::ONE), Fe::ZERO);
        assert_eq!(c.v_map(Fe::ONE), Err(Error::InSubfield(1)));
    }

    #[test]
    fn z_lies_in_subfield_and_recursions_agree() {
        for k in 2..=9 {
            let f = gf(k);
            for l in 1..k {
                let c = Cnz::new(&f, l).unwrap();
                let n = c.n() as usize;
                for u in f.elements() {
                    let v = c.values(u);
                    assert!(f.in_subfield(v.z, c.d()));
                    assert_eq!(c.c_dual_sequence(u, n + 1), c.c_sequence(u, n + 1));
                }
            }
        }
    }

    #[test]
    fn zero_count_checkpoints() {
        let f3 = gf(3);
        let c = Cnz::new(&f3, 1).unwrap();
        assert_eq!(c.count_zeros_cn(), 1);
        assert_eq!(c.count_zeros_zn(), 4);
        let f4 = gf(4);
        assert_eq!(Cnz::new(&f4, 2).unwrap().count_zeros_zn(), 4);
    }

    #[test]
    fn zero_counts_match_formulas() {
        for k in 2..=10 {
            let f = gf(k);
            for l in 1..k {
                let c = Cnz::new(&f, l).unwrap();
                assert_eq!(c.count_zeros_cn(), formulas::c_zero_count(k, l).unwrap());
                assert_eq!(c.count_zeros_zn(), formulas::z_zero_count(k, l).unwrap());
            }
        }
    }

    #[test]
    fn tridiagonal_matches_c_squared() {
        let f = gf(6);
        let c = Cnz::new(&f, 1).unwrap();
        for u in f.elements() {
            let seq = c.c_sequence(u, 7);
            for i in 1..=5 {
                assert_eq!(c.tridiagonal_det(u, i), f.square(seq[i + 2]));
            }
        }
    }

    #[test]
    fn determinant_small() {
        let f = gf(3);
        let m = vec![vec![Fe::ZERO, Fe::ONE], vec![Fe::ONE, G]];
        assert_eq!(determinant(&f, m), Fe::ONE);
        let m = vec![vec![G, G], vec![G, G]];
        assert_eq!(determinant(&f, m), Fe::ZERO);
    }
}
