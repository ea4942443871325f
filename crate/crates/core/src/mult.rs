//! Descriptions of biadditive multiplications.
//!
//! Field carriers use [`BiPoly`], the coefficient matrix `a_ij` of
//! `F(x, y) = sum a_ij x^(p^i) y^(p^j)`. Pair carriers use one [`Expr`] per
//! component, built from the variables `a, b, c, d` of `(a, b) * (c, d)`.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::gf::{FElem, FieldCtx};

/// Coefficients of a bilinear linearized polynomial over GF(p^n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FElem>,
}

impl BiPoly {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        let n = ctx.n();
        BiPoly {
            ctx: ctx.clone(),
            coeffs: vec![FElem::ZERO; n * n],
        }
    }

    /// `x^(p^i) y^(p^j)`, exponents taken modulo `n`.
    pub fn monomial(ctx: &Arc<FieldCtx>, i: usize, j: usize) -> Self {
        let mut f = Self::zero(ctx);
        let n = ctx.n();
        f.coeffs[(i % n) * n + j % n] = ctx.one();
        f
    }

    pub fn from_coefficients(ctx: &Arc<FieldCtx>, coeffs: Vec<FElem>) -> Option<Self> {
        (coeffs.len() == ctx.n() * ctx.n()).then(|| BiPoly {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coefficient(&self, i: usize, j: usize) -> FElem {
        let n = self.ctx.n();
        self.coeffs[(i % n) * n + j % n]
    }

    /// Row-major `a_ij`.
    pub fn coefficients(&self) -> &[FElem] {
        &self.coeffs
    }

    /// Coefficients as rows of canonical encodings.
    pub fn encoded_rows(&self) -> Vec<Vec<u64>> {
        let n = self.ctx.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.ctx.enc(&self.coefficient(i, j)))
                    .collect()
            })
            .collect()
    }

    /// Multiply every coefficient by `c`.
    pub fn times(&self, c: &FElem) -> Self {
        BiPoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect(),
        }
    }

    /// `F(x, y)^(p^k)`.
    pub fn frob(&self, k: usize) -> Self {
        let n = self.ctx.n();
        let mut out = Self::zero(&self.ctx);
        for i in 0..n {
            for j in 0..n {
                let a = self.coefficient(i, j);
                if !a.is_zero() {
                    out.coeffs[((i + k) % n) * n + (j + k) % n] = self.ctx.frobenius(&a, k);
                }
            }
        }
        out
    }

    /// `L(F(x, y))` for the linearized polynomial `L(z) = sum c_k z^(p^k)`,
    /// given as `(k, c_k)` pairs.
    pub fn linearized(&self, terms: &[(usize, FElem)]) -> Self {
        terms.iter().fold(Self::zero(&self.ctx), |acc, (k, c)| {
            acc + self.frob(*k).times(c)
        })
    }

    /// `F(y, x)`.
    pub fn swapped(&self) -> Self {
        let n = self.ctx.n();
        let mut out = Self::zero(&self.ctx);
        for i in 0..n {
            for j in 0..n {
                out.coeffs[j * n + i] = self.coefficient(i, j);
            }
        }
        out
    }

    /// Coefficients of the transpose multiplication
    /// `x *t y = sum a_{n-i,j}^(p^i) x^(p^i) y^(p^(i+j))`, indices mod `n`,
    /// taken with respect to the trace form.
    pub fn transpose_closed_form(&self) -> Self {
        let n = self.ctx.n();
        let mut out = Self::zero(&self.ctx);
        for i in 0..n {
            for j in 0..n {
                let a = self.coefficient((n - i) % n, j);
                let slot = i * n + (i + j) % n;
                out.coeffs[slot] = self.ctx.add(&out.coeffs[slot], &self.ctx.frobenius(&a, i));
            }
        }
        out
    }

    pub fn eval(&self, x: &FElem, y: &FElem) -> FElem {
        let ctx = &self.ctx;
        let n = ctx.n();
        let xs: Vec<FElem> = (0..n).map(|i| ctx.frobenius(x, i)).collect();
        let ys: Vec<FElem> = (0..n).map(|j| ctx.frobenius(y, j)).collect();
        let mut acc = ctx.zero();
        for (i, xi) in xs.iter().enumerate() {
            for (j, yj) in ys.iter().enumerate() {
                let a = self.coefficient(i, j);
                if !a.is_zero() {
                    acc = ctx.add(&acc, &ctx.mul(&a, &ctx.mul(xi, yj)));
                }
            }
        }
        acc
    }

    fn zip_with(self, rhs: BiPoly, f: impl Fn(&FieldCtx, &FElem, &FElem) -> FElem) -> BiPoly {
        assert!(self.ctx == rhs.ctx, "polynomials over different fields");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| f(&self.ctx, a, b))
            .collect();
        BiPoly {
            ctx: self.ctx,
            coeffs,
        }
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        self.zip_with(rhs, |c, a, b| c.add(a, b))
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        self.zip_with(rhs, |c, a, b| c.sub(a, b))
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        let coeffs = self.coeffs.iter().map(|a| self.ctx.neg(a)).collect();
        BiPoly {
            ctx: self.ctx,
            coeffs,
        }
    }
}

/// Variables of a pair-carrier product `(a, b) * (c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    A,
    B,
    C,
    D,
}

/// Component expression over GF(q^k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(Var),
    Const(FElem),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// Raise to `p^k` (not `q^k`).
    Frob(Box<Expr>, usize),
}

impl Expr {
    pub fn a() -> Expr {
        Expr::Var(Var::A)
    }
    pub fn b() -> Expr {
        Expr::Var(Var::B)
    }
    pub fn c() -> Expr {
        Expr::Var(Var::C)
    }
    pub fn d() -> Expr {
        Expr::Var(Var::D)
    }

    pub fn constant(x: FElem) -> Expr {
        Expr::Const(x)
    }

    /// `self^(p^k)`.
    pub fn frob(self, k: usize) -> Expr {
        Expr::Frob(Box::new(self), k)
    }

    pub fn eval(&self, ctx: &FieldCtx, vars: [&FElem; 4]) -> FElem {
        match self {
            Expr::Var(v) => *vars[*v as usize],
            Expr::Const(c) => *c,
            Expr::Add(l, r) => ctx.add(&l.eval(ctx, vars), &r.eval(ctx, vars)),
            Expr::Sub(l, r) => ctx.sub(&l.eval(ctx, vars), &r.eval(ctx, vars)),
            Expr::Mul(l, r) => ctx.mul(&l.eval(ctx, vars), &r.eval(ctx, vars)),
            Expr::Neg(e) => ctx.neg(&e.eval(ctx, vars)),
            Expr::Frob(e, k) => ctx.frobenius(&e.eval(ctx, vars), *k),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

/// How a presemifield multiplication is supplied.
#[derive(Clone, Debug)]
pub enum MultSpec {
    /// Field carrier: `F(x, y) = sum a_ij x^(p^i) y^(p^j)`.
    Coefficients(BiPoly),
    /// Pair carrier: the two components of `(a, b) * (c, d)`.
    Components(Expr, Expr),
    /// Any carrier: flattened `a_ijk` with index `(i * n + j) * n + k`.
    StructureConstants(Vec<u32>),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frob_of_monomial_shifts_exponents() {
        let ctx = Arc::new(FieldCtx::new(3, 3, None).unwrap());
        let f = BiPoly::monomial(&ctx, 1, 0).times(&ctx.decode(5).unwrap());
        let g = f.frob(1);
        for xv in [1u64, 4, 17] {
            for yv in [2u64, 9, 25] {
                let x = ctx.decode(xv).unwrap();
                let y = ctx.decode(yv).unwrap();
                assert_eq!(g.eval(&x, &y), ctx.frobenius(&f.eval(&x, &y), 1));
            }
        }
        assert_eq!(f.swapped().swapped(), f);
    }

    #[test]
    fn expr_evaluation() {
        let ctx = FieldCtx::new(3, 2, None).unwrap();
        let e = Expr::a() * Expr::c() + Expr::b().frob(1) * Expr::d();
        let v: Vec<FElem> = (1..5).map(|k| ctx.decode(k).unwrap()).collect();
        let expected = ctx.add(
            &ctx.mul(&v[0], &v[2]),
            &ctx.mul(&ctx.frobenius(&v[1], 1), &v[3]),
        );
        assert_eq!(e.eval(&ctx, [&v[0], &v[1], &v[2], &v[3]]), expected);
    }
}
