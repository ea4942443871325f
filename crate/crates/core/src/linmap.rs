//! F_p-linear endomorphisms of a carrier and subspaces of such maps.
//!
//! A [`LinMap`] is an `n x n` matrix over F_p whose column `j` is the image
//! of the basis vector `e_j`. On field carriers a map may additionally carry
//! its linearized-polynomial form `x -> sum beta_i x^(p^i)`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp;
use crate::gf::{FElem, FieldCtx};
use crate::linalg::{FpMatrix, SpanEchelon};

/// Linearized polynomial coefficients `beta_0..beta_{n-1}` over a field.
#[derive(Clone, Debug)]
pub struct QPoly {
    pub ctx: Arc<FieldCtx>,
    pub coeffs: Vec<FElem>,
}

impl QPoly {
    pub fn eval(&self, x: &FElem) -> FElem {
        let ctx = &self.ctx;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .fold(ctx.zero(), |acc, (i, b)| {
                ctx.add(&acc, &ctx.mul(b, &ctx.frobenius(x, i)))
            })
    }

    /// Coefficients of `self o other`.
    pub fn compose(&self, other: &QPoly) -> QPoly {
        let ctx = &self.ctx;
        let n = ctx.n();
        let mut out = vec![ctx.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = ctx.mul(a, &ctx.frobenius(b, i));
                out[(i + j) % n] = ctx.add(&out[(i + j) % n], &t);
            }
        }
        QPoly {
            ctx: self.ctx.clone(),
            coeffs: out,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinMap {
    matrix: FpMatrix,
    qpoly: Option<QPoly>,
}

impl PartialEq for LinMap {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for LinMap {}

impl LinMap {
    pub fn from_matrix(matrix: FpMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinMap {
            matrix,
            qpoly: None,
        })
    }

    pub fn identity(p: u32, n: usize) -> Self {
        LinMap {
            matrix: FpMatrix::identity(p, n),
            qpoly: None,
        }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        LinMap {
            matrix: FpMatrix::zeros(p, n, n),
            qpoly: None,
        }
    }

    /// Map with basis images given as coordinate columns.
    pub fn from_columns(p: u32, columns: &[Vec<u32>]) -> Result<Self> {
        let n = columns.len();
        let mut m = FpMatrix::zeros(p, n, n);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: col.len(),
                });
            }
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(LinMap {
            matrix: m,
            qpoly: None,
        })
    }

    /// `x -> sum beta_i x^(p^i)` on GF(p^n).
    pub fn from_qpoly(ctx: &Arc<FieldCtx>, coeffs: &[FElem]) -> Result<Self> {
        let n = ctx.n();
        if coeffs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: coeffs.len(),
            });
        }
        let q = QPoly {
            ctx: ctx.clone(),
            coeffs: coeffs.to_vec(),
        };
        let columns: Vec<Vec<u32>> = (0..n).map(|j| ctx.coords(&q.eval(&ctx.basis(j)))).collect();
        let mut map = LinMap::from_columns(ctx.p(), &columns)?;
        map.qpoly = Some(q);
        Ok(map)
    }

    /// Multiplication by `lambda` on a field carrier.
    pub fn scalar_map(ctx: &Arc<FieldCtx>, lambda: &FElem) -> Self {
        let mut coeffs = vec![ctx.zero(); ctx.n()];
        coeffs[0] = *lambda;
        Self::from_qpoly(ctx, &coeffs).expect("length n")
    }

    /// `x -> x^(p^k)` on a field carrier.
    pub fn frobenius_map(ctx: &Arc<FieldCtx>, k: usize) -> Self {
        let mut coeffs = vec![ctx.zero(); ctx.n()];
        coeffs[k % ctx.n()] = ctx.one();
        Self::from_qpoly(ctx, &coeffs).expect("length n")
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn qpoly(&self) -> Option<&QPoly> {
        self.qpoly.as_ref()
    }

    pub fn without_qpoly(mut self) -> Self {
        self.qpoly = None;
        self
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn p(&self) -> u32 {
        self.matrix.p()
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(x)
    }

    /// Row-major entries, the vector form used for span computations.
    pub fn flatten(&self) -> &[u32] {
        self.matrix.data()
    }

    pub fn from_flat(p: u32, n: usize, data: Vec<u32>) -> Self {
        LinMap {
            matrix: FpMatrix::from_data(p, n, n, data),
            qpoly: None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    fn check_same_carrier(&self, other: &LinMap) -> Result<()> {
        if self.p() != other.p() || self.dim() != other.dim() {
            return Err(Error::CarrierMismatch);
        }
        Ok(())
    }

    /// `self o other`, i.e. apply `other` first.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        self.check_same_carrier(other)?;
        Ok(self.then_unchecked(other))
    }

    pub(crate) fn then_unchecked(&self, other: &LinMap) -> LinMap {
        let qpoly = match (&self.qpoly, &other.qpoly) {
            (Some(a), Some(b)) if a.ctx == b.ctx => Some(a.compose(b)),
            _ => None,
        };
        LinMap {
            matrix: self.matrix.mul(&other.matrix),
            qpoly,
        }
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.check_same_carrier(other)?;
        Ok(LinMap {
            matrix: self.matrix.add(&other.matrix),
            qpoly: None,
        })
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        self.check_same_carrier(other)?;
        Ok(LinMap {
            matrix: self.matrix.sub(&other.matrix),
            qpoly: None,
        })
    }

    pub fn scale(&self, c: u32) -> LinMap {
        LinMap {
            matrix: self.matrix.scale(c),
            qpoly: None,
        }
    }

    pub fn invert(&self) -> Result<LinMap> {
        let inv = self.matrix.inverse().ok_or(Error::Singular)?;
        Ok(LinMap {
            matrix: inv,
            qpoly: None,
        })
    }

    /// Adjoint with respect to `form`: `<x, f(y)> = <adj(f)(x), y>`.
    ///
    /// The matrix comes from `G^{-1} F^T G`. If the map carries a
    /// linearized polynomial, the tag of the result is produced by the
    /// coefficient rule `beta_i -> beta_i^(p^(n-i))` at index `n - i`.
    pub fn adjoint(&self, form: &BilinearForm) -> LinMap {
        assert_eq!(form.dim(), self.dim(), "form does not match the carrier");
        let matrix = form.gram_inv.mul(&self.matrix.transpose()).mul(&form.gram);
        let qpoly = self.qpoly.as_ref().map(qpoly_adjoint);
        LinMap { matrix, qpoly }
    }

    /// Linearized-polynomial coefficients of this map on the field `ctx`,
    /// recovered through the trace-dual basis.
    pub fn to_qpoly(&self, ctx: &Arc<FieldCtx>) -> Result<Vec<FElem>> {
        let n = ctx.n();
        if self.dim() != n || self.p() != ctx.p() {
            return Err(Error::CarrierMismatch);
        }
        let dual = trace_dual_basis(ctx);
        let images: Vec<FElem> = (0..n)
            .map(|k| ctx.from_coords(&self.matrix.column(k)).expect("length n"))
            .collect();
        Ok((0..n)
            .map(|i| {
                (0..n).fold(ctx.zero(), |acc, k| {
                    let t = ctx.mul(&ctx.frobenius(&dual[k], i), &images[k]);
                    ctx.add(&acc, &t)
                })
            })
            .collect())
    }

    pub fn with_qpoly_tag(mut self, ctx: &Arc<FieldCtx>) -> Result<Self> {
        let coeffs = self.to_qpoly(ctx)?;
        self.qpoly = Some(QPoly {
            ctx: ctx.clone(),
            coeffs,
        });
        Ok(self)
    }
}

fn qpoly_adjoint(q: &QPoly) -> QPoly {
    let ctx = &q.ctx;
    let n = ctx.n();
    let mut out = vec![ctx.zero(); n];
    for (i, b) in q.coeffs.iter().enumerate() {
        let k = (n - i) % n;
        out[k] = ctx.frobenius(b, k);
    }
    QPoly {
        ctx: q.ctx.clone(),
        coeffs: out,
    }
}

/// Dual basis of the polynomial basis under `(x, y) -> tr(xy)`.
pub fn trace_dual_basis(ctx: &FieldCtx) -> Vec<FElem> {
    let form = BilinearForm::trace_form(ctx);
    let n = ctx.n();
    (0..n)
        .map(|l| {
            let coords: Vec<u32> = (0..n).map(|m| form.gram_inv.get(m, l)).collect();
            ctx.from_coords(&coords).expect("length n")
        })
        .collect()
}

/// Non-degenerate symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: FpMatrix,
    gram_inv: FpMatrix,
}

impl BilinearForm {
    pub fn new(gram: FpMatrix) -> Result<Self> {
        if gram != gram.transpose() {
            return Err(Error::DimensionMismatch(
                "Gram matrix is not symmetric".into(),
            ));
        }
        let gram_inv = gram.inverse().ok_or(Error::Singular)?;
        Ok(BilinearForm { gram, gram_inv })
    }

    /// `<x, y> = tr(xy)` on GF(p^n).
    pub fn trace_form(ctx: &FieldCtx) -> Self {
        let n = ctx.n();
        let mut g = FpMatrix::zeros(ctx.p(), n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, ctx.trace_fp(&ctx.mul(&ctx.basis(i), &ctx.basis(j))));
            }
        }
        Self::new(g).expect("the trace form is non-degenerate")
    }

    /// Orthogonal sum of `form` with itself.
    pub fn doubled(form: &BilinearForm) -> Self {
        let m = form.dim();
        let mut g = FpMatrix::zeros(form.gram.p(), 2 * m, 2 * m);
        for i in 0..m {
            for j in 0..m {
                let v = form.gram.get(i, j);
                g.set(i, j, v);
                g.set(m + i, m + j, v);
            }
        }
        Self::new(g).expect("orthogonal sum of non-degenerate forms")
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &FpMatrix {
        &self.gram
    }

    pub fn eval(&self, x: &[u32], y: &[u32]) -> u32 {
        let gy = self.gram.mul_vec(y);
        let p = self.gram.p();
        x.iter()
            .zip(&gy)
            .fold(0, |acc, (&a, &b)| fp::add(acc, fp::mul(a, b, p), p))
    }
}

/// An F_p-subspace of `End(F_p^n)` with an independent basis.
#[derive(Clone, Debug)]
pub struct MapSpace {
    p: u32,
    n: usize,
    basis: Vec<LinMap>,
    echelon: SpanEchelon,
}

impl MapSpace {
    /// Space with the given basis; fails if the maps are dependent.
    pub fn new(p: u32, n: usize, basis: Vec<LinMap>) -> Result<Self> {
        for b in &basis {
            if b.p() != p || b.dim() != n {
                return Err(Error::CarrierMismatch);
            }
        }
        let flat: Vec<Vec<u32>> = basis.iter().map(|b| b.flatten().to_vec()).collect();
        let echelon = SpanEchelon::new(p, n * n, &flat);
        if echelon.dim() != basis.len() {
            return Err(Error::DimensionMismatch(
                "basis maps are linearly dependent".into(),
            ));
        }
        Ok(MapSpace {
            p,
            n,
            basis,
            echelon,
        })
    }

    /// Span of arbitrary maps; keeps the first independent ones in order.
    pub fn span(p: u32, n: usize, maps: &[LinMap]) -> Self {
        let mut kept: Vec<LinMap> = Vec::new();
        let mut flat: Vec<Vec<u32>> = Vec::new();
        let mut echelon = SpanEchelon::new(p, n * n, &[]);
        for m in maps {
            assert!(m.p() == p && m.dim() == n, "carrier mismatch in span");
            if echelon.contains(m.flatten()) {
                continue;
            }
            kept.push(m.clone());
            flat.push(m.flatten().to_vec());
            echelon = SpanEchelon::new(p, n * n, &flat);
        }
        MapSpace {
            p,
            n,
            basis: kept,
            echelon,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Dimension of the carrier the maps act on.
    pub fn carrier_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of maps in the space, `p^dim`.
    pub fn order(&self) -> u64 {
        fp::checked_pow(self.p as u64, self.dim()).unwrap_or(u64::MAX)
    }

    pub fn basis(&self) -> &[LinMap] {
        &self.basis
    }

    pub fn contains(&self, f: &LinMap) -> bool {
        f.p() == self.p && f.dim() == self.n && self.echelon.contains(f.flatten())
    }

    /// Membership with coordinates relative to `basis()`.
    pub fn membership(&self, f: &LinMap) -> Option<Vec<u32>> {
        if f.p() != self.p || f.dim() != self.n {
            return None;
        }
        self.echelon.coordinates(f.flatten())
    }

    /// Linear map whose kernel is the space, evaluated at `f`.
    pub fn residual(&self, f: &LinMap) -> Vec<u32> {
        self.echelon.residual(f.flatten())
    }

    pub fn combination(&self, coeffs: &[u32]) -> LinMap {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count");
        let mut m = FpMatrix::zeros(self.p, self.n, self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            m.add_scaled(*c % self.p, b.matrix());
        }
        LinMap {
            matrix: m,
            qpoly: None,
        }
    }

    /// Same subspace of `End`, regardless of the chosen bases.
    pub fn same_space(&self, other: &MapSpace) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.dim() == other.dim()
            && other.basis.iter().all(|b| self.contains(b))
    }

    /// `{g o mu o g^{-1}}`.
    pub fn conjugate(&self, g: &LinMap) -> Result<MapSpace> {
        let g_inv = g.invert()?;
        let maps: Vec<LinMap> = self
            .basis
            .iter()
            .map(|b| g.then_unchecked(b).then_unchecked(&g_inv))
            .collect();
        MapSpace::new(self.p, self.n, maps)
    }

    /// Image under the adjoint map of `form`.
    pub fn adjoint_image(&self, form: &BilinearForm) -> MapSpace {
        let maps: Vec<LinMap> = self.basis.iter().map(|b| b.adjoint(form)).collect();
        MapSpace::new(self.p, self.n, maps).expect("adjoint is injective")
    }

    /// Coefficient vectors of the projective representatives: nonzero
    /// vectors whose last nonzero coordinate is 1, in ascending encoding.
    pub(crate) fn projective_coefficients(p: u32, dim: usize) -> impl Iterator<Item = Vec<u32>> {
        let total = fp::checked_pow(p as u64, dim).expect("desk-scale dimension");
        (1..total).filter_map(move |v| {
            let mut c = Vec::with_capacity(dim);
            let mut t = v;
            for _ in 0..dim {
                c.push((t % p as u64) as u32);
                t /= p as u64;
            }
            (c.iter().rev().find(|&&x| x != 0) == Some(&1)).then_some(c)
        })
    }

    /// True iff every nonzero map in the space is invertible.
    pub fn all_nonzero_invertible(&self) -> bool {
        let coeffs: Vec<Vec<u32>> = Self::projective_coefficients(self.p, self.dim()).collect();
        coeffs
            .par_iter()
            .all(|c| self.combination(c).is_invertible())
    }

    /// Checks that the space is a field of maps under composition: it
    /// contains the identity, is closed and commutative on basis pairs, and
    /// every nonzero element is invertible.
    pub fn verify_field(&self, name: &str) -> Result<()> {
        let fail = |reason: &str| Error::NotAField {
            space: name.to_string(),
            reason: reason.to_string(),
        };
        if !self.contains(&LinMap::identity(self.p, self.n)) {
            return Err(fail("identity missing"));
        }
        for a in &self.basis {
            for b in &self.basis {
                let ab = a.then_unchecked(b);
                if !self.contains(&ab) {
                    return Err(fail("not closed under composition"));
                }
                if ab != b.then_unchecked(a) {
                    return Err(fail("not commutative"));
                }
            }
        }
        if !self.all_nonzero_invertible() {
            return Err(fail("has a singular nonzero element"));
        }
        Ok(())
    }
}

/// Basis of the solutions of `rows * v = 0` in reduced echelon order.
pub fn nullspace(rows: &FpMatrix) -> Vec<Vec<u32>> {
    rows.nullspace()
}

/// Solves a homogeneous linear condition on maps: returns a basis of
/// `{ sum c_k unknowns[k] : residual(sum c_k unknowns[k]) = 0 }`.
pub(crate) fn solve_in_span<F>(p: u32, n: usize, unknowns: &[LinMap], residual: F) -> Vec<LinMap>
where
    F: Fn(&LinMap) -> Vec<u32> + Sync,
{
    if unknowns.is_empty() {
        return Vec::new();
    }
    let columns: Vec<Vec<u32>> = unknowns.par_iter().map(&residual).collect();
    let rows = columns[0].len();
    let mut m = FpMatrix::zeros(p, rows, unknowns.len());
    for (k, col) in columns.iter().enumerate() {
        assert_eq!(col.len(), rows, "residual length must not depend on input");
        for (r, &v) in col.iter().enumerate() {
            m.set(r, k, v);
        }
    }
    m.nullspace()
        .into_iter()
        .map(|c| {
            let mut acc = FpMatrix::zeros(p, n, n);
            for (ck, u) in c.iter().zip(unknowns) {
                acc.add_scaled(*ck, u.matrix());
            }
            LinMap {
                matrix: acc,
                qpoly: None,
            }
        })
        .collect()
}

/// The `n^2` elementary matrices, the canonical basis of `End(F_p^n)`.
pub(crate) fn elementary_maps(p: u32, n: usize) -> Vec<LinMap> {
    (0..n * n)
        .map(|k| {
            let mut data = vec![0; n * n];
            data[k] = 1 % p;
            LinMap::from_flat(p, n, data)
        })
        .collect()
}
