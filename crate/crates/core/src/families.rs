//! Constructors for the known families of commutative presemifields of odd
//! characteristic.
//!
//! Every constructor checks its admissibility conditions first and reports
//! the first one that fails. Optional constants are canonical encodings in
//! the carrier's component field; when omitted, the smallest valid choice
//! is used. The label of each result records the family, its parameters and
//! the resolved constants.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{self, gcd};
use crate::gf::{FElem, FieldCtx};
use crate::mult::{BiPoly, Expr, MultSpec};
use crate::presemifield::{Carrier, Presemifield};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// A family member described by its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum FamilySpec {
    /// `(ac + j b^s d^s, ad + bc)` over GF(q^k), `s = x^(q^sigma)`.
    Dickson {
        q: u64,
        k: usize,
        sigma: usize,
        j: Option<u64>,
    },
    /// `x^a y + x y^a` over GF(q^t), `a = x^(q^n)`.
    Gtf {
        q: u64,
        t: usize,
        n: usize,
    },
    Ganley {
        r: usize,
    },
    #[serde(rename = "cohen-ganley")]
    CohenGanley {
        s: usize,
        j: Option<u64>,
    },
    Cmdy {
        e: usize,
        sign: Sign,
    },
    Pwblp {},
    Chk {},
    Zkw {
        q: u64,
        h: usize,
        n: usize,
        u: Option<u64>,
    },
    Bierbrauer {
        q: u64,
        m: usize,
        n: usize,
        u: Option<u64>,
    },
    Bh {
        q: u64,
        l: usize,
        d: usize,
        beta: Option<u64>,
        omega: Option<u64>,
    },
    Lmptb {
        q: u64,
        l: usize,
    },
    /// Flagged experimental: its conditions come from a table entry only.
    Zp {
        q: u64,
        l: usize,
        n: usize,
        t: usize,
        alpha: Option<u64>,
    },
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Dickson { .. } => "dickson",
            FamilySpec::Gtf { .. } => "gtf",
            FamilySpec::Ganley { .. } => "ganley",
            FamilySpec::CohenGanley { .. } => "cohen-ganley",
            FamilySpec::Cmdy { .. } => "cmdy",
            FamilySpec::Pwblp {} => "pwblp",
            FamilySpec::Chk {} => "chk",
            FamilySpec::Zkw { .. } => "zkw",
            FamilySpec::Bierbrauer { .. } => "bierbrauer",
            FamilySpec::Bh { .. } => "bh",
            FamilySpec::Lmptb { .. } => "lmptb",
            FamilySpec::Zp { .. } => "zp",
        }
    }

    pub fn build(&self) -> Result<Presemifield> {
        match *self {
            FamilySpec::Dickson { q, k, sigma, j } => dickson(q, k, sigma, j),
            FamilySpec::Gtf { q, t, n } => gtf(q, t, n),
            FamilySpec::Ganley { r } => ganley(r),
            FamilySpec::CohenGanley { s, j } => cohen_ganley(s, j),
            FamilySpec::Cmdy { e, sign } => cmdy(e, sign),
            FamilySpec::Pwblp {} => pwblp(),
            FamilySpec::Chk {} => chk(),
            FamilySpec::Zkw { q, h, n, u } => zkw(q, h, n, u),
            FamilySpec::Bierbrauer { q, m, n, u } => bierbrauer(q, m, n, u),
            FamilySpec::Bh {
                q,
                l,
                d,
                beta,
                omega,
            } => bh(q, l, d, beta, omega),
            FamilySpec::Lmptb { q, l } => lmptb(q, l),
            FamilySpec::Zp { q, l, n, t, alpha } => zp(q, l, n, t, alpha),
        }
    }

    /// Order of the carrier, without building anything.
    pub fn order(&self) -> Option<u64> {
        let (q, e) = match *self {
            FamilySpec::Dickson { q, k, .. } => (q, k.checked_mul(2)?),
            FamilySpec::Gtf { q, t, .. } => (q, t),
            FamilySpec::Ganley { r } => (3, r.checked_mul(2)?),
            FamilySpec::CohenGanley { s, .. } => (3, s.checked_mul(2)?),
            FamilySpec::Cmdy { e, .. } => (3, e),
            FamilySpec::Pwblp {} => (3, 10),
            FamilySpec::Chk {} => (3, 8),
            FamilySpec::Zkw { q, h, .. } => (q, h.checked_mul(3)?),
            FamilySpec::Bierbrauer { q, m, .. } => (q, m.checked_mul(4)?),
            FamilySpec::Bh { q, l, .. } => (q, l.checked_mul(2)?),
            FamilySpec::Lmptb { q, l } => (q, l.checked_mul(2)?),
            FamilySpec::Zp { q, l, .. } => (q, l.checked_mul(2)?),
        };
        fp::checked_pow(q, e)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Dickson { q, k, sigma, .. } => {
                write!(f, "dickson(q={q},k={k},sigma={sigma})")
            }
            FamilySpec::Gtf { q, t, n } => write!(f, "gtf(q={q},t={t},n={n})"),
            FamilySpec::Ganley { r } => write!(f, "ganley(r={r})"),
            FamilySpec::CohenGanley { s, .. } => write!(f, "cohen-ganley(s={s})"),
            FamilySpec::Cmdy { e, sign } => {
                let s = if sign == Sign::Plus { '+' } else { '-' };
                write!(f, "cmdy(e={e},sign={s})")
            }
            FamilySpec::Pwblp {} => write!(f, "pwblp()"),
            FamilySpec::Chk {} => write!(f, "chk()"),
            FamilySpec::Zkw { q, h, n, .. } => write!(f, "zkw(q={q},h={h},n={n})"),
            FamilySpec::Bierbrauer { q, m, n, .. } => write!(f, "bierbrauer(q={q},m={m},n={n})"),
            FamilySpec::Bh { q, l, d, .. } => write!(f, "bh(q={q},l={l},d={d})"),
            FamilySpec::Lmptb { q, l } => write!(f, "lmptb(q={q},l={l})"),
            FamilySpec::Zp { q, l, n, t, .. } => write!(f, "zp(q={q},l={l},n={n},t={t})"),
        }
    }
}

/// `(p, s, t) -> (q, h, n)` with `g = gcd(s, t)`, `q = p^g`, `s = hg`,
/// `t = ng`. Used for both the ZKW and the Bierbrauer parametrization.
pub fn normalize_pst(p: u64, s: usize, t: usize) -> Result<(u64, usize, usize)> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = gcd(s as u64, t as u64) as usize;
    if g == 0 {
        return Err(Error::bad("normalization", "s and t are both zero"));
    }
    let q = fp::checked_pow(p, g).ok_or_else(|| Error::FieldTooLarge(format!("{p}^{g}")))?;
    Ok((q, s / g, t / g))
}

/// `(p, m, s) -> (q, l, d)` with `h = gcd(m, s)`, `m = hl`, `s = hd`,
/// `q = p^h`.
pub fn normalize_bh(p: u64, m: usize, s: usize) -> Result<(u64, usize, usize)> {
    normalize_pst(p, m, s)
}

/// Field GF(q^k) together with `e`, where `q = p^e`.
struct Ground {
    ctx: Arc<FieldCtx>,
    /// Exponent of `q` over `p`.
    e: usize,
}

impl Ground {
    fn new(family: &str, q: u64, k: usize) -> Result<Self> {
        let (p, e) = fp::prime_power(q)
            .ok_or_else(|| Error::bad(family, format!("q = {q} is not a prime power")))?;
        if p == 2 {
            return Err(Error::bad(family, "q odd"));
        }
        let ctx = Arc::new(FieldCtx::new(p, e * k, None)?);
        Ok(Ground { ctx, e })
    }

    /// `x^(q^i) y^(q^j)`.
    fn mono(&self, i: usize, j: usize) -> BiPoly {
        BiPoly::monomial(&self.ctx, self.e * i, self.e * j)
    }

    /// `F^(q^k)`.
    fn qfrob(&self, f: &BiPoly, k: usize) -> BiPoly {
        f.frob(self.e * k)
    }

    /// `x -> x^(q^k)` on elements.
    fn pow_q(&self, x: &FElem, k: usize) -> FElem {
        self.ctx.frobenius(x, self.e * k)
    }

    fn scalar(&self, c: i64) -> FElem {
        self.ctx.scalar(fp::from_i64(c, self.ctx.p()))
    }

    fn element(&self, family: &str, name: &str, enc: u64) -> Result<FElem> {
        self.ctx
            .decode(enc)
            .map_err(|_| Error::bad(family, format!("{name} = {enc} is not a field element")))
    }

    fn nonsquare(&self, family: &str, name: &str, given: Option<u64>) -> Result<FElem> {
        match given {
            None => self.ctx.nonsquare_element(),
            Some(v) => {
                let x = self.element(family, name, v)?;
                if x.is_zero() || self.ctx.is_square(&x)? {
                    return Err(Error::bad(family, format!("{name} nonsquare")));
                }
                Ok(x)
            }
        }
    }

    fn primitive(&self, family: &str, name: &str, given: Option<u64>) -> Result<FElem> {
        match given {
            None => Ok(self.ctx.primitive_element()),
            Some(v) => {
                let x = self.element(family, name, v)?;
                if !self.ctx.is_primitive(&x) {
                    return Err(Error::bad(family, format!("{name} primitive")));
                }
                Ok(x)
            }
        }
    }

    fn enc(&self, x: &FElem) -> u64 {
        self.ctx.enc(x)
    }
}

fn require(family: &str, ok: bool, condition: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::bad(family, condition))
    }
}

fn odd_prime_power(family: &str, q: u64) -> Result<()> {
    match fp::prime_power(q) {
        None => Err(Error::bad(family, format!("q = {q} is not a prime power"))),
        Some((2, _)) => Err(Error::bad(family, "q odd")),
        Some(_) => Ok(()),
    }
}

fn build_field(ground: &Ground, f: BiPoly, label: String) -> Result<Presemifield> {
    Presemifield::build(
        Carrier::field(ground.ctx.clone()),
        MultSpec::Coefficients(f),
        label,
    )
}

fn build_pair(ground: &Ground, first: Expr, second: Expr, label: String) -> Result<Presemifield> {
    Presemifield::build(
        Carrier::pair(ground.ctx.clone()),
        MultSpec::Components(first, second),
        label,
    )
}

/// Dickson semifield `(ac + j b^s d^s, ad + bc)` on GF(q^k)^2 with
/// `s: x -> x^(q^sigma)`.
pub fn dickson(q: u64, k: usize, sigma: usize, j: Option<u64>) -> Result<Presemifield> {
    const F: &str = "dickson";
    odd_prime_power(F, q)?;
    require(F, k > 1, "k > 1")?;
    require(F, k % 2 == 1, "k odd")?;
    require(F, !sigma.is_multiple_of(k), "sigma != id")?;
    let g = Ground::new(F, q, k)?;
    let j = g.nonsquare(F, "j", j)?;
    let s = g.e * (sigma % k);
    let first = Expr::a() * Expr::c() + Expr::constant(j) * Expr::b().frob(s) * Expr::d().frob(s);
    let second = Expr::a() * Expr::d() + Expr::b() * Expr::c();
    let label = format!("dickson(q={q},k={k},sigma={sigma},j={})", g.enc(&j));
    build_pair(&g, first, second, label)
}

/// Generalized twisted field `x^a y + x y^a` on GF(q^t), `a = x^(q^n)`.
pub fn gtf(q: u64, t: usize, n: usize) -> Result<Presemifield> {
    const F: &str = "gtf";
    odd_prime_power(F, q)?;
    require(F, t > 1, "t > 1")?;
    let g = gcd(t as u64, n as u64) as usize;
    require(F, (t / g) % 2 == 1, "t / gcd(t, n) odd")?;
    require(F, !(2 * n).is_multiple_of(t), "alpha^2 != 1")?;
    require(F, g == 1, "Fix(alpha) = F_q, i.e. gcd(t, n) = 1")?;
    let ground = Ground::new(F, q, t)?;
    let f = ground.mono(n, 0) + ground.mono(0, n);
    build_field(&ground, f, format!("gtf(q={q},t={t},n={n})"))
}

/// Ganley semifield `(ac - b^9 d - b d^9, ad + bc + b^3 d^3)` on
/// GF(3^r)^2.
pub fn ganley(r: usize) -> Result<Presemifield> {
    const F: &str = "ganley";
    require(F, r >= 3, "r >= 3")?;
    require(F, r % 2 == 1, "r odd")?;
    let g = Ground::new(F, 3, r)?;
    let (a, b, c, d) = (Expr::a(), Expr::b(), Expr::c(), Expr::d());
    let first =
        a.clone() * c.clone() - b.clone().frob(2) * d.clone() - b.clone() * d.clone().frob(2);
    let second = a * d.clone() + b.clone() * c + b.frob(1) * d.frob(1);
    build_pair(&g, first, second, format!("ganley(r={r})"))
}

/// Cohen-Ganley semifield `(ac + jbd + j^3 (bd)^9, ad + bc + j (bd)^3)`
/// on GF(3^s)^2.
pub fn cohen_ganley(s: usize, j: Option<u64>) -> Result<Presemifield> {
    const F: &str = "cohen-ganley";
    require(F, s >= 3, "s >= 3")?;
    let g = Ground::new(F, 3, s)?;
    let j = g.nonsquare(F, "j", j)?;
    let j3 = g.ctx.pow(&j, 3);
    let bd = || Expr::b() * Expr::d();
    let first =
        Expr::a() * Expr::c() + Expr::constant(j) * bd() + Expr::constant(j3) * bd().frob(2);
    let second = Expr::a() * Expr::d() + Expr::b() * Expr::c() + Expr::constant(j) * bd().frob(1);
    let label = format!("cohen-ganley(s={s},j={})", g.enc(&j));
    build_pair(&g, first, second, label)
}

/// Coulter-Matthews / Ding-Yuan `x^9 y + x y^9 +- 2 x^3 y^3 - 2xy` on
/// GF(3^e).
pub fn cmdy(e: usize, sign: Sign) -> Result<Presemifield> {
    const F: &str = "cmdy";
    require(F, e >= 3, "e >= 3")?;
    require(F, e % 2 == 1, "e odd")?;
    let g = Ground::new(F, 3, e)?;
    let middle = g.mono(1, 1).times(&g.scalar(2));
    let f = g.mono(2, 0) + g.mono(0, 2) - g.mono(0, 0).times(&g.scalar(2));
    let (f, s) = match sign {
        Sign::Plus => (f + middle, '+'),
        Sign::Minus => (f - middle, '-'),
    };
    build_field(&g, f, format!("cmdy(e={e},sign={s})"))
}

/// Penttila-Williams / Bader-Lunardon-Pinneri semifield
/// `(ac + (bd)^9, ad + bc + (bd)^27)` on GF(3^5)^2.
pub fn pwblp() -> Result<Presemifield> {
    let g = Ground::new("pwblp", 3, 5)?;
    let bd = || Expr::b() * Expr::d();
    let first = Expr::a() * Expr::c() + bd().frob(2);
    let second = Expr::a() * Expr::d() + Expr::b() * Expr::c() + bd().frob(3);
    build_pair(&g, first, second, "pwblp()".into())
}

/// Coulter-Henderson-Kosick presemifield on GF(3^8).
pub fn chk() -> Result<Presemifield> {
    let g = Ground::new("chk", 3, 8)?;
    let m = |i, j| g.mono(i, j);
    let inner = m(0, 2) + m(2, 0) - m(0, 0) - m(2, 2);
    let one = g.ctx.one();
    let l_of_inner = inner.linearized(&[(5, one), (2, one)]);
    let f = m(0, 0) + l_of_inner + m(5, 1) + m(4, 0) - m(2, 0) + m(1, 5) + m(0, 4) - m(0, 2);
    build_field(&g, f, "chk()".into())
}

/// `y^(q^n) x + y x^(q^n) - v (y^(q^(a+n)) x^(q^b) + y^(q^b) x^(q^(a+n)))`
/// with `v = u^(q^a - 1)`; shared by ZKW (`a = h, b = 2h`) and Bierbrauer
/// (`a = m, b = 3m`).
fn twisted_pair_sum(g: &Ground, u: &FElem, n: usize, a: usize, b: usize) -> BiPoly {
    let qa = fp::checked_pow(g.ctx.p() as u64, g.e * a).expect("desk-scale field");
    let v = g.ctx.pow(u, qa - 1);
    let base = g.mono(0, n) + g.mono(n, 0);
    let twist = (g.mono(b, a + n) + g.mono(a + n, b)).times(&v);
    base - twist
}

/// Zha-Kyureghyan-Wang presemifield on GF(q^(3h)).
pub fn zkw(q: u64, h: usize, n: usize, u: Option<u64>) -> Result<Presemifield> {
    const F: &str = "zkw";
    odd_prime_power(F, q)?;
    require(F, h % 2 == 1, "h odd")?;
    require(F, 0 < n && n < 3 * h, "0 < n < 3h")?;
    require(F, gcd(h as u64, n as u64) == 1, "gcd(h, n) = 1")?;
    require(
        F,
        (h + n).is_multiple_of(3) || q % 3 == 1,
        "h + n = 0 mod 3 or q = 1 mod 3",
    )?;
    let g = Ground::new(F, q, 3 * h)?;
    let u = g.primitive(F, "u", u)?;
    let f = twisted_pair_sum(&g, &u, n, h, 2 * h);
    build_field(&g, f, format!("zkw(q={q},h={h},n={n},u={})", g.enc(&u)))
}

/// Bierbrauer presemifield on GF(q^(4m)).
pub fn bierbrauer(q: u64, m: usize, n: usize, u: Option<u64>) -> Result<Presemifield> {
    const F: &str = "bierbrauer";
    odd_prime_power(F, q)?;
    require(F, q % 4 == 1, "q = 1 mod 4")?;
    require(F, m % 2 == 1, "m odd")?;
    require(F, n.is_multiple_of(2), "n even")?;
    require(F, 0 < n && n < 4 * m, "0 < n < 4m")?;
    require(F, gcd(m as u64, n as u64) == 1, "gcd(m, n) = 1")?;
    let g2 = gcd(2 * m as u64, n as u64) as usize;
    require(F, (2 * m / g2) % 2 == 1, "2m / gcd(2m, n) odd")?;
    let g = Ground::new(F, q, 4 * m)?;
    let u = g.primitive(F, "u", u)?;
    let f = twisted_pair_sum(&g, &u, n, m, 3 * m);
    build_field(
        &g,
        f,
        format!("bierbrauer(q={q},m={m},n={n},u={})", g.enc(&u)),
    )
}

/// Budaghyan-Helleseth presemifield on GF(q^(2l)).
pub fn bh(
    q: u64,
    l: usize,
    d: usize,
    beta: Option<u64>,
    omega: Option<u64>,
) -> Result<Presemifield> {
    const F: &str = "bh";
    odd_prime_power(F, q)?;
    require(F, l > 1, "l > 1")?;
    require(F, 0 < d && d < 2 * l, "0 < d < 2l")?;
    require(F, gcd(l as u64, d as u64) == 1, "gcd(l, d) = 1")?;
    require(F, (l + d) % 2 == 1, "l + d odd")?;
    let g = Ground::new(F, q, 2 * l)?;
    let beta = g.nonsquare(F, "beta", beta)?;
    let omega = match omega {
        None => {
            let gamma = g.ctx.primitive_element();
            let ql = fp::checked_pow(q, l).expect("desk-scale field");
            g.ctx.pow(&gamma, ql.div_ceil(2))
        }
        Some(v) => {
            let w = g.element(F, "omega", v)?;
            let ok = !w.is_zero() && g.pow_q(&w, l) == g.ctx.neg(&w);
            require(F, ok, "omega^(q^l) = -omega")?;
            w
        }
    };
    let inner = g.mono(0, d) + g.mono(d, 0);
    let f = g.mono(0, l)
        + g.mono(l, 0)
        + inner.times(&g.ctx.mul(&beta, &omega))
        + g.qfrob(&inner, l)
            .times(&g.ctx.mul(&g.pow_q(&beta, l), &omega));
    let label = format!(
        "bh(q={q},l={l},d={d},beta={},omega={})",
        g.enc(&beta),
        g.enc(&omega)
    );
    build_field(&g, f, label)
}

/// The `P(q, l)` semifields of order `q^(2l)`:
/// `(xy + x^(q^l) y^(q^l)) / 2 + G(x y^(q^2) + x^(q^2) y) / 4`.
pub fn lmptb(q: u64, l: usize) -> Result<Presemifield> {
    const F: &str = "lmptb";
    odd_prime_power(F, q)?;
    require(F, l > 1, "l > 1")?;
    require(F, l % 2 == 1, "l odd")?;
    let k = (l - 1) / 2;
    let g = Ground::new(F, q, 2 * l)?;
    let w = g.mono(0, 2) + g.mono(2, 0);
    let z = w.clone() - g.qfrob(&w, l);
    let sign = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };
    let mut gz = BiPoly::zero(&g.ctx);
    for i in 1..=k {
        gz = gz + g.qfrob(&z, 2 * i).times(&g.scalar(sign(i)));
    }
    for j in 1..k {
        gz = gz + g.qfrob(&z, 2 * j + 1).times(&g.scalar(sign(k + j)));
    }
    let half = g.ctx.inv(&g.scalar(2))?;
    let quarter = g.ctx.inv(&g.scalar(4))?;
    let f = (g.mono(0, 0) + g.mono(l, l)).times(&half) + gz.times(&quarter);
    build_field(&g, f, format!("lmptb(q={q},l={l})"))
}

/// `(a c^(q^n) + a^(q^n) c + alpha (b d^(q^n) + b^(q^n) d)^s, ad + bc)` on
/// GF(q^l)^2 with `s = x^(q^t)`.
pub fn zp(q: u64, l: usize, n: usize, t: usize, alpha: Option<u64>) -> Result<Presemifield> {
    const F: &str = "zp";
    odd_prime_power(F, q)?;
    require(F, l > 2, "l > 2")?;
    require(
        F,
        gcd(gcd(l as u64, n as u64), t as u64) == 1,
        "gcd(l, n, t) = 1",
    )?;
    let gn = gcd(l as u64, n as u64) as usize;
    require(F, (l / gn) % 2 == 1, "l / gcd(l, n) odd")?;
    let g = Ground::new(F, q, l)?;
    let alpha = g.nonsquare(F, "alpha", alpha)?;
    let qn = g.e * n;
    let sigma = g.e * t;
    let (a, b, c, d) = (Expr::a(), Expr::b(), Expr::c(), Expr::d());
    let twisted = b.clone() * d.clone().frob(qn) + b.clone().frob(qn) * d.clone();
    let first = a.clone() * c.clone().frob(qn)
        + a.clone().frob(qn) * c.clone()
        + Expr::constant(alpha) * twisted.frob(sigma);
    let second = a * d + b * c;
    let label = format!("zp(q={q},l={l},n={n},t={t},alpha={})", g.enc(&alpha));
    build_pair(&g, first, second, label)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bad(r: Result<Presemifield>) -> String {
        match r {
            Err(Error::BadParameter { condition, .. }) => condition,
            other => panic!("expected BadParameter, got {other:?}"),
        }
    }

    #[test]
    fn admissibility() {
        assert_eq!(bad(dickson(3, 2, 1, None)), "k odd");
        assert_eq!(bad(dickson(3, 3, 0, None)), "sigma != id");
        assert_eq!(bad(dickson(4, 3, 1, None)), "q odd");
        assert_eq!(bad(gtf(3, 2, 1)), "t / gcd(t, n) odd");
        assert_eq!(bad(gtf(3, 3, 0)), "alpha^2 != 1");
        assert_eq!(bad(ganley(4)), "r odd");
        assert_eq!(bad(ganley(2)), "r >= 3");
        assert_eq!(bad(cohen_ganley(2, None)), "s >= 3");
        assert_eq!(bad(cohen_ganley(3, Some(1))), "j nonsquare");
        assert_eq!(bad(cmdy(4, Sign::Plus)), "e odd");
        assert_eq!(bad(zkw(3, 1, 1, None)), "h + n = 0 mod 3 or q = 1 mod 3");
        assert_eq!(bad(bierbrauer(3, 1, 2, None)), "q = 1 mod 4");
        assert_eq!(bad(bierbrauer(5, 2, 2, None)), "m odd");
        assert_eq!(bad(bh(3, 3, 3, None, None)), "gcd(l, d) = 1");
        assert_eq!(bad(lmptb(3, 2)), "l odd");
        assert_eq!(bad(zp(3, 3, 3, 0, None)), "gcd(l, n, t) = 1");
    }

    #[test]
    fn small_members_are_valid_and_commutative() {
        for s in [
            gtf(3, 3, 1),
            zkw(3, 1, 2, None),
            bh(3, 2, 1, None, None),
            cmdy(3, Sign::Plus),
            cmdy(3, Sign::Minus),
            gtf(5, 3, 1),
        ] {
            let s = s.unwrap();
            assert!(s.is_commutative(), "{}", s.label());
            assert_eq!(s.dual(), s);
        }
    }

    #[test]
    fn labels_record_constants() {
        let s = bh(3, 2, 1, None, None).unwrap();
        assert!(s.label().starts_with("bh(q=3,l=2,d=1,beta="));
        let spec = FamilySpec::Bh {
            q: 3,
            l: 2,
            d: 1,
            beta: None,
            omega: None,
        };
        assert_eq!(spec.build().unwrap(), s);
        assert_eq!(spec.order(), Some(81));
    }

    #[test]
    fn bh_rejects_bad_omega() {
        assert_eq!(bad(bh(3, 2, 1, None, Some(1))), "omega^(q^l) = -omega");
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_pst(3, 2, 4).unwrap(), (9, 1, 2));
        assert_eq!(normalize_bh(5, 3, 2).unwrap(), (5, 3, 2));
        assert_eq!(normalize_pst(4, 1, 1).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = FamilySpec::Cmdy {
            e: 5,
            sign: Sign::Minus,
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"family":"cmdy","e":5,"sign":"minus"}"#);
        assert_eq!(serde_json::from_str::<FamilySpec>(&text).unwrap(), spec);
    }
}
