//! Shared fixtures: a corpus of small presemifields and an oracle that
//! works from structure constants alone.

#![allow(dead_code)]

use std::sync::Arc;

use semifield_lab::families::{self, Sign};
use semifield_lab::isotopy::{isotope, IsotopismTriple};
use semifield_lab::{BiPoly, Carrier, Expr, FieldCtx, LinMap, MultSpec, Orders, Presemifield};

pub fn ctx(p: u32, n: usize) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, n, None).unwrap())
}

/// `x^(p^i) y^(p^j)` on GF(p^n).
pub fn monomial(p: u32, n: usize, i: usize, j: usize) -> Presemifield {
    let c = ctx(p, n);
    Presemifield::build(
        Carrier::field(c.clone()),
        MultSpec::Coefficients(BiPoly::monomial(&c, i, j)),
        format!("x^({p}^{i}) y^({p}^{j}) on GF({p}^{n})"),
    )
    .unwrap()
}

pub fn field(p: u32, n: usize) -> Presemifield {
    monomial(p, n, 0, 0).with_label(format!("GF({p}^{n})"))
}

/// `(ac + j b^s d^s, ad + bc)` on GF(q)^2, `s = x^(p^sigma)`.
pub fn pair_dickson_like(p: u32, n: usize, sigma: usize) -> Presemifield {
    let c = ctx(p, n);
    let j = c.nonsquare_element().unwrap();
    let first =
        Expr::a() * Expr::c() + Expr::constant(j) * Expr::b().frob(sigma) * Expr::d().frob(sigma);
    let second = Expr::a() * Expr::d() + Expr::b() * Expr::c();
    Presemifield::build(
        Carrier::pair(c),
        MultSpec::Components(first, second),
        format!("pair({p}^{n},sigma={sigma})"),
    )
    .unwrap()
}

/// Deterministic invertible map: a unipotent upper triangle times a
/// cyclic shift.
pub fn scramble(p: u32, n: usize, seed: u32) -> LinMap {
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let target = (j + 1) % n;
            (0..n)
                .map(|i| {
                    if i == target {
                        1
                    } else if i < target {
                        (seed + 3 * i as u32 + 5 * j as u32) % p
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    LinMap::from_columns(p, &cols).unwrap()
}

pub fn scrambled_triple(p: u32, n: usize) -> IsotopismTriple {
    IsotopismTriple {
        g1: scramble(p, n, 1),
        g2: scramble(p, n, 2),
        g3: scramble(p, n, 4),
    }
}

/// Presemifields of order at most 3^5.
pub fn small_corpus() -> Vec<Presemifield> {
    let mut out = vec![
        field(3, 1),
        field(5, 1),
        field(3, 2),
        field(2, 3),
        field(3, 3),
        field(2, 4),
        field(5, 2),
        field(7, 2),
        field(3, 4),
        field(5, 3),
        field(3, 5),
        monomial(3, 2, 1, 0),
        monomial(3, 3, 0, 2),
        monomial(3, 4, 2, 0),
        pair_dickson_like(3, 2, 0),
        pair_dickson_like(3, 2, 1),
        families::gtf(3, 3, 1).unwrap(),
        families::gtf(3, 5, 1).unwrap(),
        families::gtf(3, 5, 2).unwrap(),
        families::gtf(5, 3, 1).unwrap(),
        families::cmdy(5, Sign::Plus).unwrap(),
        families::cmdy(5, Sign::Minus).unwrap(),
        families::zkw(3, 1, 2, None).unwrap(),
        families::zkw(5, 1, 2, None).unwrap(),
        families::bh(3, 2, 1, None, None).unwrap(),
    ];
    let bh = families::bh(3, 2, 1, None, None).unwrap();
    out.push(bh.transpose());
    out.push(bh.transpose().dual());
    let g = families::gtf(3, 3, 1).unwrap();
    out.push(isotope(&g, &scrambled_triple(3, 3), "gtf scrambled").unwrap());
    out
}

/// Multiplication straight from the structure constants.
pub fn mul_sc(s: &Presemifield, x: &[u32], y: &[u32]) -> Vec<u32> {
    let (p, n) = (s.p() as u64, s.n());
    let sc = s.structure_constants();
    let mut z = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            let c = x[i] as u64 * y[j] as u64 % p;
            if c == 0 {
                continue;
            }
            for (k, zk) in z.iter_mut().enumerate() {
                *zk += c * sc[(i * n + j) * n + k] as u64;
            }
        }
    }
    z.into_iter().map(|v| (v % p) as u32).collect()
}

pub fn decode(p: u32, n: usize, mut v: u64) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let c = (v % p as u64) as u32;
            v /= p as u64;
            c
        })
        .collect()
}

/// Nucleus and center sizes by counting elements that satisfy the
/// associativity conditions on all basis pairs.
pub fn counted_orders(s: &Presemifield) -> Orders {
    let (p, n) = (s.p(), s.n());
    let basis: Vec<Vec<u32>> = (0..n)
        .map(|i| decode(p, n, (p as u64).pow(i as u32)))
        .collect();
    let m = |x: &[u32], y: &[u32]| mul_sc(s, x, y);
    let mut counts = [0u64; 4];
    for v in 0..s.order() {
        let a = decode(p, n, v);
        let mut flags = [true; 3];
        for x in &basis {
            for y in &basis {
                flags[0] &= m(&m(&a, x), y) == m(&a, &m(x, y));
                flags[1] &= m(&m(x, &a), y) == m(x, &m(&a, y));
                flags[2] &= m(&m(x, y), &a) == m(x, &m(y, &a));
            }
        }
        let commutes = basis.iter().all(|x| m(x, &a) == m(&a, x));
        let center = flags.iter().all(|&f| f) && commutes;
        for (c, f) in counts
            .iter_mut()
            .zip([flags[0], flags[1], flags[2], center])
        {
            *c += f as u64;
        }
    }
    Orders {
        left: counts[0],
        middle: counts[1],
        right: counts[2],
        center: counts[3],
    }
}
