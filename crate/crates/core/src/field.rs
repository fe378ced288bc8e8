//! Arithmetic in GF(2^k), 2 <= k <= 32, in the polynomial basis.
//!
//! An element is a k-bit integer whose bit `i` is the coefficient of `x^i`.
//! Addition is XOR. Multiplication uses discrete-log tables for k <= 20
//! (built on first use) and carryless shift-and-reduce otherwise; both paths
//! are available on every context so they can be checked against each other.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::Gf2Map;
use crate::rootset::{Provenance, RootSet};

/// Largest degree for which log/antilog tables are built.
pub const TABLE_MAX_K: u32 = 20;

/// A field element as a bit pattern in the polynomial basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Wraps a bit pattern without range checking; see [`FieldCtx::element`].
    pub const fn new(bits: u32) -> Self {
        Fe(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Parses `0x`-prefixed (or bare) hexadecimal.
    pub fn parse_hex(s: &str) -> Result<Fe> {
        let t = s.trim();
        let digits = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        u32::from_str_radix(digits, 16)
            .map(Fe)
            .map_err(|e| Error::Parse(format!("bad element {s:?}: {e}")))
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({:#x})", self.0)
    }
}

impl serde::Serialize for Fe {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<bool> for Fe {
    fn from(b: bool) -> Self {
        Fe(b as u32)
    }
}

// addition in characteristic 2 is XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        Fe(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Fe {
    #[inline]
    fn add_assign(&mut self, rhs: Fe) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for Fe {
    fn sum<I: Iterator<Item = Fe>>(iter: I) -> Fe {
        iter.fold(Fe::ZERO, |acc, x| acc + x)
    }
}

// ---------------------------------------------------------------------------
// GF(2)[x] helpers on u64 bit patterns

fn poly_degree(p: u64) -> u32 {
    debug_assert!(p != 0);
    63 - p.leading_zeros()
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut r = 0u128;
    let mut a = a as u128;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            r ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    r
}

fn poly_mod(mut a: u128, m: u64) -> u64 {
    let dm = poly_degree(m);
    let m = m as u128;
    while a != 0 {
        let da = 127 - a.leading_zeros();
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a as u64
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a as u128, b);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `p` of degree k is irreducible iff x^(2^k) = x mod p and
/// gcd(x^(2^(k/q)) - x, p) = 1 for every prime q | k.
pub fn is_irreducible(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let k = poly_degree(p);
    if k == 1 {
        return true;
    }
    if p & 1 == 0 {
        return false;
    }
    let x_pow = |e: u32| {
        let mut t = 0b10u64;
        for _ in 0..e {
            t = poly_mod(clmul(t, t), p);
        }
        t
    };
    if x_pow(k) != 0b10 {
        return false;
    }
    prime_factors(k as u64)
        .into_iter()
        .all(|q| poly_gcd(p, x_pow(k / q as u32) ^ 0b10) == 1)
}

/// The irreducible polynomial of degree k with the smallest bit pattern.
pub fn smallest_irreducible(k: u32) -> u64 {
    ((1u64 << k)..(1u64 << (k + 1)))
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Tables {
    // exp has length 2(q-1) so exp[log a + log b] needs no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Immutable description of GF(2^k).
#[derive(Debug, Clone)]
pub struct FieldCtx {
    k: u32,
    modulus: u64,
    use_tables: bool,
    tables: OnceLock<Tables>,
    generator: OnceLock<Fe>,
}

impl FieldCtx {
    /// Builds GF(2^k). Without an explicit modulus the lexicographically
    /// smallest irreducible polynomial of degree k is used.
    pub fn new(k: u32, modulus: Option<u64>) -> Result<Self> {
        if !(2..=32).contains(&k) {
            return Err(Error::UnsupportedDegree(k));
        }
        let modulus = match modulus {
            Some(m) => {
                let found = if m == 0 { 0 } else { poly_degree(m) };
                if m == 0 || found != k {
                    return Err(Error::DegreeMismatch {
                        modulus: m,
                        expected: k,
                        found,
                    });
                }
                if !is_irreducible(m) {
                    return Err(Error::NotIrreducible(m));
                }
                m
            }
            None => smallest_irreducible(k),
        };
        Ok(FieldCtx {
            k,
            modulus,
            use_tables: k <= TABLE_MAX_K,
            tables: OnceLock::new(),
            generator: OnceLock::new(),
        })
    }

    /// Same field, forced onto the shift-and-reduce path.
    pub fn without_tables(&self) -> Self {
        FieldCtx {
            k: self.k,
            modulus: self.modulus,
            use_tables: false,
            tables: OnceLock::new(),
            generator: self.generator.clone(),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, 2^k.
    pub fn order(&self) -> u64 {
        1u64 << self.k
    }

    /// Order of the multiplicative group, 2^k - 1.
    pub fn group_order(&self) -> u64 {
        (1u64 << self.k) - 1
    }

    pub fn has_tables(&self) -> bool {
        self.use_tables
    }

    /// Range-checked element constructor.
    pub fn element(&self, bits: u64) -> Result<Fe> {
        if bits >> self.k != 0 {
            return Err(Error::ElementOutOfRange { bits, k: self.k });
        }
        Ok(Fe(bits as u32))
    }

    /// All 2^k elements in bit order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone + Send {
        (0..self.order()).map(|b| Fe(b as u32))
    }

    /// The nonzero elements in bit order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + Clone + Send {
        (1..self.order()).map(|b| Fe(b as u32))
    }

    /// Elements with bit patterns in `range`; disjoint ranges partition a sweep.
    pub fn elements_in(&self, range: std::ops::Range<u64>) -> impl Iterator<Item = Fe> + Clone {
        let end = range.end.min(self.order());
        (range.start..end).map(|b| Fe(b as u32))
    }

    fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| {
            let q1 = self.group_order() as usize;
            let g = self.generator();
            let mut exp = vec![0u32; 2 * q1];
            let mut log = vec![0u32; q1 + 1];
            let mut t = Fe::ONE;
            for i in 0..q1 {
                exp[i] = t.0;
                exp[i + q1] = t.0;
                log[t.0 as usize] = i as u32;
                t = self.mul_shift_reduce(t, g);
            }
            Tables { exp, log }
        })
    }

    /// The smallest primitive element (generator of the multiplicative group).
    pub fn generator(&self) -> Fe {
        *self.generator.get_or_init(|| {
            let q1 = self.group_order();
            let factors = prime_factors(q1);
            (2..self.order())
                .map(|b| Fe(b as u32))
                .find(|&g| {
                    factors
                        .iter()
                        .all(|&p| self.pow_square_multiply(g, q1 / p) != Fe::ONE)
                })
                .unwrap_or(Fe::ONE)
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Fe) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.group_order();
        for p in prime_factors(ord) {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == Fe::ONE {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// Carryless multiply followed by reduction modulo the context modulus.
    pub fn mul_shift_reduce(&self, a: Fe, b: Fe) -> Fe {
        Fe(poly_mod(clmul(a.0 as u64, b.0 as u64), self.modulus) as u32)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.use_tables {
            if a.0 == 0 || b.0 == 0 {
                return Fe::ZERO;
            }
            let t = self.tables();
            Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
        } else {
            self.mul_shift_reduce(a, b)
        }
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.use_tables {
            let t = self.tables();
            let q1 = self.group_order() as u32;
            let l = t.log[a.0 as usize];
            Ok(Fe(t.exp[((q1 - l) % q1) as usize]))
        } else {
            Ok(self.pow_square_multiply(a, self.group_order() - 1))
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn pow_square_multiply(&self, mut a: Fe, mut e: u64) -> Fe {
        let mut r = Fe::ONE;
        while e != 0 {
            if e & 1 != 0 {
                r = self.mul_shift_reduce(r, a);
            }
            a = self.mul_shift_reduce(a, a);
            e >>= 1;
        }
        r
    }

    /// `a^e`; for nonzero `a` the exponent is taken modulo 2^k - 1, and `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a.is_zero() {
            return if e == 0 { Fe::ONE } else { Fe::ZERO };
        }
        let q1 = self.group_order();
        let e = e % q1;
        if self.use_tables {
            let t = self.tables();
            let idx = (t.log[a.0 as usize] as u64 * e) % q1;
            Fe(t.exp[idx as usize])
        } else {
            self.pow_square_multiply(a, e)
        }
    }

    /// `a^(-e)` for nonzero `a`.
    pub fn pow_neg(&self, a: Fe, e: u64) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q1 = self.group_order();
        Ok(self.pow(a, q1 - e % q1))
    }

    /// Frobenius power `a^(2^j)`, `j` taken modulo k.
    #[inline]
    pub fn frob(&self, a: Fe, j: u64) -> Fe {
        let j = (j % self.k as u64) as u32;
        if j == 0 || a.0 <= 1 {
            return a;
        }
        if self.use_tables {
            let t = self.tables();
            let q1 = self.group_order();
            let idx = ((t.log[a.0 as usize] as u64) << j) % q1;
            Fe(t.exp[idx as usize])
        } else {
            let mut r = a;
            for _ in 0..j {
                r = self.mul_shift_reduce(r, r);
            }
            r
        }
    }

    fn check_divides(&self, d: u32) -> Result<()> {
        if d == 0 || !self.k.is_multiple_of(d) {
            return Err(Error::NotASubfield { d, k: self.k });
        }
        Ok(())
    }

    /// Relative trace `Tr_d^k(a) = sum_{i < k/d} a^(2^(id))`.
    pub fn trace(&self, a: Fe, d: u32) -> Result<Fe> {
        self.check_divides(d)?;
        Ok((0..self.k / d).map(|i| self.frob(a, (i * d) as u64)).sum())
    }

    /// Relative norm `N_d^k(a) = prod_{i < k/d} a^(2^(id))`.
    pub fn norm(&self, a: Fe, d: u32) -> Result<Fe> {
        self.check_divides(d)?;
        Ok((0..self.k / d).fold(Fe::ONE, |acc, i| {
            self.mul(acc, self.frob(a, (i * d) as u64))
        }))
    }

    /// Absolute trace `Tr_k(a)` as a bit.
    pub fn abs_trace(&self, a: Fe) -> bool {
        let t: Fe = (0..self.k).map(|i| self.frob(a, i as u64)).sum();
        debug_assert!(t.0 <= 1);
        t.0 == 1
    }

    /// Absolute trace of an element of the subfield GF(2^d), i.e. `Tr_1^d(a)`.
    pub fn subfield_abs_trace(&self, a: Fe, d: u32) -> Result<bool> {
        self.check_divides(d)?;
        if !self.in_subfield(a, d) {
            return Err(Error::BadConstant(a.0));
        }
        let t: Fe = (0..d).map(|i| self.frob(a, i as u64)).sum();
        Ok(t.0 == 1)
    }

    /// `a in GF(2^d)`, i.e. `a^(2^d) = a`.
    pub fn in_subfield(&self, a: Fe, d: u32) -> bool {
        self.frob(a, d as u64) == a
    }

    /// Every element of the subfield GF(2^d) in bit order.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<Fe>> {
        self.check_divides(d)?;
        if d == self.k {
            return Ok(self.elements().collect());
        }
        // GF(2^d)^* is generated by g^((2^k-1)/(2^d-1))
        let step = self.group_order() / ((1u64 << d) - 1);
        let h = self.pow(self.generator(), step);
        let mut out = vec![Fe::ZERO];
        let mut t = Fe::ONE;
        for _ in 0..(1u64 << d) - 1 {
            out.push(t);
            t = self.mul(t, h);
        }
        out.sort();
        Ok(out)
    }

    /// All `x` with `x^(2^l) + x = u`. Empty unless `Tr_d^k(u) = 0` with
    /// `d = gcd(l, k)`; otherwise a coset of GF(2^d).
    pub fn solve_artin_schreier(&self, u: Fe, l: u32) -> Result<RootSet> {
        if l >= self.k {
            return Err(Error::RangeError {
                what: "l",
                value: l as u64,
            });
        }
        let map = Gf2Map::from_fn(self.k, |x| {
            let x = Fe(x as u32);
            (self.frob(x, l as u64) + x).0 as u64
        });
        Ok(RootSet::new(
            map.solutions(u.0 as u64).into_iter().map(|b| Fe(b as u32)),
            Provenance::LinearAlgebra,
        ))
    }

    /// For odd `n = k/gcd(l,k)` and `Tr_d^k(u) = 0`, the solution
    /// `sum_{i=0}^{(n-1)/2} u^(2^(2il))` of `x^(2^l) + x = u`.
    pub fn artin_schreier_by_summation(&self, u: Fe, l: u32) -> Option<Fe> {
        let d = gcd(l, self.k);
        let n = self.k / d;
        if n.is_multiple_of(2) {
            return None;
        }
        Some(
            (0..=(n - 1) / 2)
                .map(|i| self.frob(u, 2 * i as u64 * l as u64))
                .sum(),
        )
    }

    /// Half-trace `sum_{i=0}^{(k-1)/2} u^(2^(2i))` for odd k. When
    /// `Tr_k(u) = 0` the result `w` satisfies `w^2 + w = u`.
    pub fn half_trace(&self, u: Fe) -> Result<Fe> {
        if self.k.is_multiple_of(2) {
            return Err(Error::OddDegreeRequired(self.k));
        }
        Ok((0..=(self.k - 1) / 2)
            .map(|i| self.frob(u, 2 * i as u64))
            .sum())
    }
}

/// `d = gcd(l, k)` and `n = k / d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubfieldParams {
    pub d: u32,
    pub n: u32,
}

impl SubfieldParams {
    pub fn new(k: u32, d: u32) -> Result<Self> {
        if d == 0 || !k.is_multiple_of(d) {
            return Err(Error::NotASubfield { d, k });
        }
        Ok(SubfieldParams { d, n: k / d })
    }

    /// The parameters attached to the exponent `l`: `d = gcd(l, k)`.
    pub fn for_exponent(k: u32, l: u32) -> Result<Self> {
        if l == 0 || l >= k {
            return Err(Error::RangeError {
                what: "l",
                value: l as u64,
            });
        }
        Self::new(k, gcd(l, k))
    }
}

/// Parsed form of `k=<int>[,poly=0x<hex>]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    pub k: u32,
    pub poly: Option<u64>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<FieldCtx> {
        FieldCtx::new(self.k, self.poly)
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut k = None;
        let mut poly = None;
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            match key.trim() {
                "k" => {
                    k = Some(
                        value
                            .trim()
                            .parse::<u32>()
                            .map_err(|e| Error::Parse(format!("bad k {value:?}: {e}")))?,
                    )
                }
                "poly" => {
                    let v = value.trim();
                    let digits = v.strip_prefix("0x").unwrap_or(v);
                    poly = Some(
                        u64::from_str_radix(digits, 16)
                            .map_err(|e| Error::Parse(format!("bad poly {value:?}: {e}")))?,
                    )
                }
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let k = k.ok_or_else(|| Error::Parse("missing k".into()))?;
        Ok(FieldSpec { k, poly })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.poly {
            Some(p) => write!(f, "k={},poly={:#x}", self.k, p),
            None => write!(f, "k={}", self.k),
        }
    }
}
