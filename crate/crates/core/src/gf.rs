//! Exact arithmetic in GF(p^n) over a fixed polynomial basis `1, x, ..., x^(n-1)`.
//!
//! Elements are small `Copy` coordinate arrays. Every operation goes through
//! the owning [`FieldCtx`], which holds the modulus and the precomputed
//! Frobenius and trace data. The canonical integer encoding
//! `enc(x) = sum coords[i] * p^i` is used for I/O and for every
//! "smallest element" search, so results are reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;
/// Largest supported field order (exponents and encodings stay in `u64`).
pub const MAX_ORDER: u64 = 1 << 40;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FElem {
    coords: [u16; MAX_DEGREE],
}

impl FElem {
    pub const ZERO: FElem = FElem {
        coords: [0; MAX_DEGREE],
    };

    #[inline]
    pub fn coord(&self, i: usize) -> u32 {
        self.coords[i] as u32
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self
            .coords
            .iter()
            .rposition(|&c| c != 0)
            .map_or(1, |i| i + 1);
        f.debug_list().entries(&self.coords[..len]).finish()
    }
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    n: usize,
    modulus: Vec<u32>,
    order: u64,
    /// `x^(n+k)` reduced modulo the modulus, for `k < n - 1`.
    high_powers: Vec<FElem>,
    /// `frob_pow[k][j] = (x^j)^(p^k)`.
    frob_pow: Vec<Vec<FElem>>,
    /// `tr(x^j)` as a prime-field value.
    trace_basis: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds GF(p^n). Without a modulus, the lexicographically first monic
    /// irreducible polynomial of degree `n` (comparing ascending coefficient
    /// vectors) is used.
    pub fn new(p: u32, n: usize, modulus: Option<&[u32]>) -> Result<Self> {
        if !fp::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p > u16::MAX as u32 {
            return Err(Error::FieldTooLarge(format!("prime {p} exceeds 16 bits")));
        }
        if n == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: 0,
            });
        }
        if n > MAX_DEGREE {
            return Err(Error::FieldTooLarge(format!("degree {n} > {MAX_DEGREE}")));
        }
        let order = match fp::checked_pow(p as u64, n) {
            Some(o) if o <= MAX_ORDER => o,
            _ => return Err(Error::FieldTooLarge(format!("{p}^{n}"))),
        };
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        got: m.len().saturating_sub(1),
                    });
                }
                if m[n] % p != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        got: poly_degree(&m.iter().map(|c| c % p).collect::<Vec<_>>()),
                    });
                }
                let m: Vec<u32> = m.iter().map(|c| c % p).collect();
                if !is_irreducible(&m, p) {
                    return Err(Error::Reducible { p });
                }
                m
            }
            None => first_irreducible(p, n),
        };
        Ok(Self::with_modulus(p, n, modulus, order))
    }

    fn with_modulus(p: u32, n: usize, modulus: Vec<u32>, order: u64) -> Self {
        let mut ctx = FieldCtx {
            p,
            n,
            modulus,
            order,
            high_powers: Vec::new(),
            frob_pow: Vec::new(),
            trace_basis: Vec::new(),
        };
        // x^n = -(m_0 + ... + m_{n-1} x^{n-1}); higher powers by shifting.
        let mut cur = FElem::ZERO;
        for i in 0..n {
            cur.coords[i] = fp::neg(ctx.modulus[i], p) as u16;
        }
        for _ in 0..n.saturating_sub(1) {
            ctx.high_powers.push(cur);
            cur = ctx.shift(&cur);
        }

        let basis: Vec<FElem> = (0..n).map(|j| ctx.basis(j)).collect();
        let frob1: Vec<FElem> = basis.iter().map(|b| ctx.pow(b, p as u64)).collect();
        let mut frob_pow = vec![basis.clone()];
        for k in 1..n {
            let prev = &frob_pow[k - 1];
            let next = prev.iter().map(|x| ctx.apply_linear(&frob1, x)).collect();
            frob_pow.push(next);
        }
        ctx.frob_pow = frob_pow;

        let mut trace_basis = Vec::with_capacity(n);
        for j in 0..n {
            let mut t = FElem::ZERO;
            for k in 0..n {
                t = ctx.add(&t, &ctx.frob_pow[k][j]);
            }
            debug_assert!((1..n).all(|i| t.coords[i] == 0));
            trace_basis.push(t.coord(0));
        }
        ctx.trace_basis = trace_basis;
        ctx
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FElem {
        FElem::ZERO
    }

    pub fn one(&self) -> FElem {
        self.scalar(1)
    }

    /// The prime-field element `c`.
    pub fn scalar(&self, c: u32) -> FElem {
        let mut e = FElem::ZERO;
        e.coords[0] = (c % self.p) as u16;
        e
    }

    /// The basis element `x^j`.
    pub fn basis(&self, j: usize) -> FElem {
        assert!(j < self.n, "basis index out of range");
        let mut e = FElem::ZERO;
        e.coords[j] = 1;
        e
    }

    pub fn coords(&self, x: &FElem) -> Vec<u32> {
        (0..self.n).map(|i| x.coord(i)).collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FElem> {
        if coords.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: coords.len(),
            });
        }
        let mut e = FElem::ZERO;
        for (i, &c) in coords.iter().enumerate() {
            e.coords[i] = (c % self.p) as u16;
        }
        Ok(e)
    }

    pub fn enc(&self, x: &FElem) -> u64 {
        (0..self.n)
            .rev()
            .fold(0u64, |acc, i| acc * self.p as u64 + x.coord(i) as u64)
    }

    pub fn decode(&self, mut v: u64) -> Result<FElem> {
        if v >= self.order {
            return Err(Error::Parse(format!(
                "encoding {v} out of range for a field of order {}",
                self.order
            )));
        }
        let mut e = FElem::ZERO;
        for i in 0..self.n {
            e.coords[i] = (v % self.p as u64) as u16;
            v /= self.p as u64;
        }
        Ok(e)
    }

    /// All elements in canonical encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FElem> + '_ {
        (0..self.order).map(move |v| self.decode(v).expect("in range"))
    }

    pub fn add(&self, a: &FElem, b: &FElem) -> FElem {
        let mut r = FElem::ZERO;
        for i in 0..self.n {
            r.coords[i] = fp::add(a.coord(i), b.coord(i), self.p) as u16;
        }
        r
    }

    pub fn sub(&self, a: &FElem, b: &FElem) -> FElem {
        let mut r = FElem::ZERO;
        for i in 0..self.n {
            r.coords[i] = fp::sub(a.coord(i), b.coord(i), self.p) as u16;
        }
        r
    }

    pub fn neg(&self, a: &FElem) -> FElem {
        self.sub(&FElem::ZERO, a)
    }

    pub fn scale(&self, c: u32, a: &FElem) -> FElem {
        let mut r = FElem::ZERO;
        for i in 0..self.n {
            r.coords[i] = fp::mul(c % self.p, a.coord(i), self.p) as u16;
        }
        r
    }

    pub fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        let n = self.n;
        let p = self.p as u64;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            let ai = a.coords[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + ai * b.coords[j] as u64) % p;
            }
        }
        let mut r = FElem::ZERO;
        for (c, &v) in r.coords.iter_mut().zip(&prod[..n]) {
            *c = v as u16;
        }
        for (k, hp) in self.high_powers.iter().enumerate() {
            let c = prod[n + k];
            if c == 0 {
                continue;
            }
            for i in 0..n {
                r.coords[i] = ((r.coords[i] as u64 + c * hp.coords[i] as u64) % p) as u16;
            }
        }
        r
    }

    pub fn pow(&self, a: &FElem, mut exp: u64) -> FElem {
        let mut acc = self.one();
        let mut base = *a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FElem) -> Result<FElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: &FElem, b: &FElem) -> Result<FElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `x^(p^k)`; `k` is taken modulo `n`.
    pub fn frobenius(&self, x: &FElem, k: usize) -> FElem {
        self.apply_linear(&self.frob_pow[k % self.n], x)
    }

    /// `tr(x) = x + x^p + ... + x^(p^(n-1))`, an element of the prime field.
    pub fn trace(&self, x: &FElem) -> FElem {
        self.scalar(self.trace_fp(x))
    }

    pub fn trace_fp(&self, x: &FElem) -> u32 {
        let p = self.p;
        (0..self.n).fold(0, |acc, j| {
            fp::add(acc, fp::mul(x.coord(j), self.trace_basis[j], p), p)
        })
    }

    /// Smallest-encoding element of multiplicative order `p^n - 1`.
    pub fn primitive_element(&self) -> FElem {
        let m = self.order - 1;
        let primes = fp::prime_divisors(m);
        for v in 1..self.order {
            let x = self.decode(v).expect("in range");
            if primes.iter().all(|r| self.pow(&x, m / r) != self.one()) {
                return x;
            }
        }
        unreachable!("finite fields are cyclic")
    }

    pub fn is_primitive(&self, x: &FElem) -> bool {
        if x.is_zero() {
            return false;
        }
        let m = self.order - 1;
        self.pow(x, m) == self.one()
            && fp::prime_divisors(m)
                .iter()
                .all(|r| self.pow(x, m / r) != self.one())
    }

    pub fn is_square(&self, x: &FElem) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(x.is_zero() || self.pow(x, (self.order - 1) / 2) == self.one())
    }

    /// Smallest-encoding nonsquare.
    pub fn nonsquare_element(&self) -> Result<FElem> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let minus_one = self.neg(&self.one());
        for v in 1..self.order {
            let x = self.decode(v).expect("in range");
            if self.pow(&x, (self.order - 1) / 2) == minus_one {
                return Ok(x);
            }
        }
        unreachable!("odd-order fields contain nonsquares")
    }

    /// True iff `x` lies in the subfield GF(p^d).
    pub fn in_subfield(&self, x: &FElem, d: usize) -> Result<bool> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(Error::NotADivisor { d, n: self.n });
        }
        Ok(self.frobenius(x, d) == *x)
    }

    /// A generator of the subfield GF(p^d) (a primitive element of it).
    pub fn subfield_generator(&self, d: usize) -> Result<FElem> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(Error::NotADivisor { d, n: self.n });
        }
        let u = self.primitive_element();
        let sub_order = fp::checked_pow(self.p as u64, d).expect("divides the order");
        Ok(self.pow(&u, (self.order - 1) / (sub_order - 1)))
    }

    /// Multiply by `x`.
    fn shift(&self, a: &FElem) -> FElem {
        let n = self.n;
        let top = a.coord(n - 1);
        let mut r = FElem::ZERO;
        for i in (1..n).rev() {
            r.coords[i] = a.coords[i - 1];
        }
        if top != 0 {
            for i in 0..n {
                let c = fp::mul(top, fp::neg(self.modulus[i], self.p), self.p);
                r.coords[i] = fp::add(r.coord(i), c, self.p) as u16;
            }
        }
        r
    }

    /// Evaluates the F_p-linear map with basis images `images` at `x`.
    fn apply_linear(&self, images: &[FElem], x: &FElem) -> FElem {
        let mut r = FElem::ZERO;
        for (j, img) in images.iter().enumerate() {
            let c = x.coord(j);
            if c != 0 {
                r = self.add(&r, &self.scale(c, img));
            }
        }
        r
    }
}

fn poly_degree(a: &[u32]) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

/// Remainder of `a` modulo the monic polynomial `b` over F_p.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (k, &bk) in b.iter().enumerate() {
                r[shift + k] = fp::sub(r[shift + k], fp::mul(c, bk, p), p);
            }
        }
        r.pop();
    }
    r
}

/// Exhaustive factor search: no monic factor of degree `1..=n/2`.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for v in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut t = v;
            for _ in 0..d {
                f.push((t % p as u64) as u32);
                t /= p as u64;
            }
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of degree `n`, ordering candidates by their
/// ascending coefficient vectors `(c_0, c_1, ..., c_{n-1})` lexicographically.
fn first_irreducible(p: u32, n: usize) -> Vec<u32> {
    let count = (p as u64).pow(n as u32);
    for v in 0..count {
        // c_0 is the most significant digit of v.
        let mut coeffs = vec![0u32; n + 1];
        let mut t = v;
        for i in (0..n).rev() {
            coeffs[i] = (t % p as u64) as u32;
            t /= p as u64;
        }
        coeffs[n] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
