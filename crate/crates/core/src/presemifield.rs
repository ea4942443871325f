//! Presemifields over field and pair carriers.
//!
//! Multiplications are stored canonically as structure constants `a_ijk`
//! with `e_i * e_j = sum_k a_ijk e_k`, flattened at `(i * n + j) * n + k`.
//! Every constructor validates the absence of zero divisors by checking that
//! each spread map `x -> x * y` is invertible.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp;
use crate::gf::{FElem, FieldCtx};
use crate::linalg::FpMatrix;
use crate::linmap::{trace_dual_basis, BilinearForm, LinMap, MapSpace};
use crate::mult::{BiPoly, Expr, MultSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CarrierKind {
    /// GF(p^n) itself.
    Field,
    /// GF(q^k) x GF(q^k), coordinates of the first component first.
    Pair,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    kind: CarrierKind,
    field: Arc<FieldCtx>,
    form: BilinearForm,
}

impl Carrier {
    pub fn field(ctx: Arc<FieldCtx>) -> Self {
        let form = BilinearForm::trace_form(&ctx);
        Carrier {
            kind: CarrierKind::Field,
            field: ctx,
            form,
        }
    }

    /// Pairs over `ctx`, with `<(a,b),(c,d)> = tr(ac) + tr(bd)`.
    pub fn pair(ctx: Arc<FieldCtx>) -> Self {
        let form = BilinearForm::doubled(&BilinearForm::trace_form(&ctx));
        Carrier {
            kind: CarrierKind::Pair,
            field: ctx,
            form,
        }
    }

    pub fn kind(&self) -> CarrierKind {
        self.kind
    }

    pub fn field_ctx(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Dimension over F_p.
    pub fn dim(&self) -> usize {
        match self.kind {
            CarrierKind::Field => self.field.n(),
            CarrierKind::Pair => 2 * self.field.n(),
        }
    }

    pub fn order(&self) -> u64 {
        fp::checked_pow(self.p() as u64, self.dim()).expect("desk-scale carrier")
    }

    pub fn enc(&self, x: &[u32]) -> u64 {
        x.iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p() as u64 + c as u64)
    }

    pub fn decode(&self, mut v: u64) -> Vec<u32> {
        let p = self.p() as u64;
        (0..self.dim())
            .map(|_| {
                let c = (v % p) as u32;
                v /= p;
                c
            })
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Splits pair-carrier coordinates into the two components.
    pub fn components(&self, x: &[u32]) -> (FElem, FElem) {
        let m = self.field.n();
        let a = self.field.from_coords(&x[..m]).expect("component length");
        let b = self.field.from_coords(&x[m..]).expect("component length");
        (a, b)
    }

    pub fn join(&self, a: &FElem, b: &FElem) -> Vec<u32> {
        let mut v = self.field.coords(a);
        v.extend(self.field.coords(b));
        v
    }

    /// `t_lambda : x -> lambda x` on a field carrier.
    pub fn scalar_map(&self, lambda: &FElem) -> Option<LinMap> {
        (self.kind == CarrierKind::Field).then(|| LinMap::scalar_map(&self.field, lambda))
    }
}

/// The additive set of maps `x -> x * y`.
#[derive(Clone, Debug)]
pub struct SpreadSet {
    space: MapSpace,
}

impl SpreadSet {
    /// Basis maps `phi_{e_1}, ..., phi_{e_n}` in order.
    pub fn space(&self) -> &MapSpace {
        &self.space
    }

    pub fn basis(&self) -> &[LinMap] {
        self.space.basis()
    }

    pub fn lookup(&self, y: &[u32]) -> LinMap {
        self.space.combination(y)
    }

    pub fn contains(&self, f: &LinMap) -> bool {
        self.space.contains(f)
    }

    /// The element `y` with `phi_y = f`, if any.
    pub fn element_of(&self, f: &LinMap) -> Option<Vec<u32>> {
        self.space.membership(f)
    }
}

#[derive(Clone, Debug)]
pub struct Presemifield {
    carrier: Carrier,
    consts: Vec<u32>,
    /// `phi_{e_j}`: column `i` holds `e_i * e_j`.
    right_maps: Vec<LinMap>,
    label: String,
}

impl PartialEq for Presemifield {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.consts == other.consts
    }
}

impl Presemifield {
    pub fn build(carrier: Carrier, spec: MultSpec, label: impl Into<String>) -> Result<Self> {
        let consts = match spec {
            MultSpec::Coefficients(f) => {
                if carrier.kind != CarrierKind::Field || **f.ctx() != *carrier.field {
                    return Err(Error::DimensionMismatch(
                        "coefficient matrices describe field carriers".into(),
                    ));
                }
                constants_from_bipoly(&f)
            }
            MultSpec::Components(first, second) => {
                if carrier.kind != CarrierKind::Pair {
                    return Err(Error::DimensionMismatch(
                        "component expressions describe pair carriers".into(),
                    ));
                }
                let consts = constants_from_components(&carrier, &first, &second);
                check_biadditive(&carrier, &consts, &first, &second)?;
                consts
            }
            MultSpec::StructureConstants(c) => c,
        };
        Self::from_structure_constants(carrier, consts, label)
    }

    pub fn from_structure_constants(
        carrier: Carrier,
        consts: Vec<u32>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let s = Self::unchecked(carrier, consts, label)?;
        if let Some(witness) = s.find_zero_divisor() {
            let enc = s.carrier.enc(&witness);
            return Err(Error::ZeroDivisor { witness, enc });
        }
        Ok(s)
    }

    /// Structure constants without the zero-divisor check.
    pub(crate) fn unchecked(
        carrier: Carrier,
        consts: Vec<u32>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let n = carrier.dim();
        let p = carrier.p();
        if consts.len() != n * n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} structure constants, got {}",
                n * n * n,
                consts.len()
            )));
        }
        if consts.iter().any(|&c| c >= p) {
            return Err(Error::DimensionMismatch(format!(
                "structure constants must lie in [0, {p})"
            )));
        }
        let right_maps = (0..n)
            .map(|j| {
                let mut m = FpMatrix::zeros(p, n, n);
                for i in 0..n {
                    for k in 0..n {
                        m.set(k, i, consts[(i * n + j) * n + k]);
                    }
                }
                LinMap::from_matrix(m).expect("square")
            })
            .collect();
        Ok(Presemifield {
            carrier,
            consts,
            right_maps,
            label: label.into(),
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn p(&self) -> u32 {
        self.carrier.p()
    }

    /// Dimension over F_p.
    pub fn n(&self) -> usize {
        self.carrier.dim()
    }

    pub fn order(&self) -> u64 {
        self.carrier.order()
    }

    pub fn structure_constants(&self) -> &[u32] {
        &self.consts
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u32 {
        let n = self.n();
        self.consts[(i * n + j) * n + k]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let n = self.n();
        let p = self.p();
        let mut out = vec![0u32; n];
        for (j, &yj) in y.iter().enumerate() {
            if yj == 0 {
                continue;
            }
            let img = self.right_maps[j].apply(x);
            for (o, v) in out.iter_mut().zip(img) {
                *o = fp::add(*o, fp::mul(yj, v, p), p);
            }
        }
        out
    }

    /// `phi_y : x -> x * y`.
    pub fn right_map(&self, y: &[u32]) -> LinMap {
        let n = self.n();
        let mut m = FpMatrix::zeros(self.p(), n, n);
        for (j, &yj) in y.iter().enumerate() {
            m.add_scaled(yj, self.right_maps[j].matrix());
        }
        LinMap::from_matrix(m).expect("square")
    }

    /// `y -> x * y`.
    pub fn left_map(&self, x: &[u32]) -> LinMap {
        let n = self.n();
        let mut m = FpMatrix::zeros(self.p(), n, n);
        for j in 0..n {
            let col = self.mul(x, &self.carrier.basis_vector(j));
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        LinMap::from_matrix(m).expect("square")
    }

    pub fn spread_set(&self) -> SpreadSet {
        let space = MapSpace::new(self.p(), self.n(), self.right_maps.clone())
            .expect("validated presemifields have independent spread maps");
        SpreadSet { space }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.constant(i, j, k) == self.constant(j, i, k)))
        })
    }

    /// Smallest-encoding `y != 0` whose spread map is singular.
    ///
    /// Only representatives whose last nonzero coordinate is 1 are tested;
    /// each is the smallest encoding in its class of scalar multiples.
    pub fn find_zero_divisor(&self) -> Option<Vec<u32>> {
        let n = self.n();
        let p = self.p() as u64;
        let total = self.order();
        (1..total)
            .into_par_iter()
            .filter_map(|v| {
                let mut y = Vec::with_capacity(n);
                let mut t = v;
                for _ in 0..n {
                    y.push((t % p) as u32);
                    t /= p;
                }
                (y.iter().rev().find(|&&c| c != 0) == Some(&1)).then_some(y)
            })
            .find_first(|y| !self.right_map(y).is_invertible())
    }

    /// `x *d y = y * x`.
    pub fn dual(&self) -> Presemifield {
        let n = self.n();
        let mut consts = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    consts[(i * n + j) * n + k] = self.constant(j, i, k);
                }
            }
        }
        Self::unchecked(
            self.carrier.clone(),
            consts,
            derived_label(&self.label, 'd'),
        )
        .expect("same shape")
    }

    /// `x *t y = adj(phi_y)(x)`, adjoints taken for the carrier's form.
    pub fn transpose(&self) -> Presemifield {
        let n = self.n();
        let form = self.carrier.form();
        let mut consts = vec![0; n * n * n];
        for j in 0..n {
            let adj = self.right_maps[j].adjoint(form);
            for i in 0..n {
                for k in 0..n {
                    consts[(i * n + j) * n + k] = adj.matrix().get(k, i);
                }
            }
        }
        Self::unchecked(
            self.carrier.clone(),
            consts,
            derived_label(&self.label, 't'),
        )
        .expect("same shape")
    }

    /// `S, S^d, S^t, S^dt, S^td, S^dtd`, where `S^dt` is the transpose of
    /// the dual.
    pub fn knuth_chain(&self) -> [Presemifield; 6] {
        let d = self.dual();
        let t = self.transpose();
        let dt = d.transpose();
        let td = t.dual();
        let dtd = dt.dual();
        [self.clone(), d, t, dt, td, dtd]
    }

    /// Re-runs zero-divisor validation, e.g. on chain derivatives.
    pub fn validate(&self) -> Result<()> {
        match self.find_zero_divisor() {
            None => Ok(()),
            Some(witness) => {
                let enc = self.carrier.enc(&witness);
                Err(Error::ZeroDivisor { witness, enc })
            }
        }
    }

    /// Semifield isotope `x o y = R_e^{-1}(x) * L_e^{-1}(y)` with identity
    /// `e * e`.
    pub fn to_semifield(&self, e: &[u32]) -> Result<Semifieldization> {
        if e.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: e.len(),
            });
        }
        if e.iter().all(|&c| c % self.p() == 0) {
            return Err(Error::ZeroElement);
        }
        let n = self.n();
        let r_e = self.right_map(e);
        let l_e = self.left_map(e);
        let r_inv = r_e.invert()?;
        let l_inv = l_e.invert()?;
        let mut consts = vec![0; n * n * n];
        for i in 0..n {
            let x = r_inv.matrix().column(i);
            for j in 0..n {
                let y = l_inv.matrix().column(j);
                for (k, v) in self.mul(&x, &y).into_iter().enumerate() {
                    consts[(i * n + j) * n + k] = v;
                }
            }
        }
        let label = format!("{}~semifield(e={})", self.label, self.carrier.enc(e));
        let semifield = Self::from_structure_constants(self.carrier.clone(), consts, label)?;
        Ok(Semifieldization {
            semifield,
            identity: self.mul(e, e),
            r_inv,
            l_inv,
        })
    }

    /// Two-sided identity, if there is one.
    pub fn identity_element(&self) -> Option<Vec<u32>> {
        let n = self.n();
        let id = LinMap::identity(self.p(), n);
        let u = self.spread_set().element_of(&id)?;
        (0..n)
            .all(|i| {
                let e = self.carrier.basis_vector(i);
                self.mul(&u, &e) == e
            })
            .then_some(u)
    }

    /// Coefficient matrix `a_ij` of a field-carrier multiplication,
    /// recovered from the structure constants with the trace-dual basis.
    pub fn aij(&self) -> Option<BiPoly> {
        if self.carrier.kind != CarrierKind::Field {
            return None;
        }
        let ctx = self.carrier.field_ctx();
        let n = ctx.n();
        let dual = trace_dual_basis(ctx);
        let dual_frob: Vec<Vec<FElem>> = (0..n)
            .map(|i| dual.iter().map(|d| ctx.frobenius(d, i)).collect())
            .collect();
        let products: Vec<FElem> = (0..n * n)
            .map(|kl| {
                let (k, l) = (kl / n, kl % n);
                let v = self.mul(&self.carrier.basis_vector(k), &self.carrier.basis_vector(l));
                ctx.from_coords(&v).expect("length n")
            })
            .collect();
        let mut coeffs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ctx.zero();
                for k in 0..n {
                    for l in 0..n {
                        let prod = &products[k * n + l];
                        if prod.is_zero() {
                            continue;
                        }
                        let w = ctx.mul(&dual_frob[i][k], &dual_frob[j][l]);
                        acc = ctx.add(&acc, &ctx.mul(&w, prod));
                    }
                }
                coeffs.push(acc);
            }
        }
        BiPoly::from_coefficients(ctx, coeffs)
    }
}

/// Output of [`Presemifield::to_semifield`]. The triple
/// `(r_inv, l_inv, id)` is an isotopism from `semifield` to the original.
#[derive(Clone, Debug)]
pub struct Semifieldization {
    pub semifield: Presemifield,
    pub identity: Vec<u32>,
    pub r_inv: LinMap,
    pub l_inv: LinMap,
}

fn derived_label(label: &str, op: char) -> String {
    match label.rsplit_once('^') {
        Some((base, ops)) if ops.chars().all(|c| c == 'd' || c == 't') => {
            let mut ops = ops.to_string();
            if ops.ends_with(op) {
                ops.pop();
            } else {
                ops.push(op);
            }
            if ops.is_empty() {
                base.to_string()
            } else {
                format!("{base}^{ops}")
            }
        }
        _ => format!("{label}^{op}"),
    }
}

fn constants_from_bipoly(f: &BiPoly) -> Vec<u32> {
    let ctx = f.ctx();
    let n = ctx.n();
    let frob: Vec<Vec<FElem>> = (0..n)
        .map(|k| (0..n).map(|i| ctx.frobenius(&ctx.basis(k), i)).collect())
        .collect();
    let terms: Vec<(usize, usize, FElem)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, f.coefficient(i, j)))
        .filter(|(_, _, a)| !a.is_zero())
        .collect();
    let mut consts = vec![0; n * n * n];
    for k in 0..n {
        for l in 0..n {
            let mut acc = ctx.zero();
            for (i, j, a) in &terms {
                acc = ctx.add(&acc, &ctx.mul(a, &ctx.mul(&frob[k][*i], &frob[l][*j])));
            }
            for (m, c) in ctx.coords(&acc).into_iter().enumerate() {
                consts[(k * n + l) * n + m] = c;
            }
        }
    }
    consts
}

fn eval_components(
    carrier: &Carrier,
    first: &Expr,
    second: &Expr,
    x: &[u32],
    y: &[u32],
) -> Vec<u32> {
    let ctx = carrier.field_ctx();
    let (a, b) = carrier.components(x);
    let (c, d) = carrier.components(y);
    let vars = [&a, &b, &c, &d];
    carrier.join(&first.eval(ctx, vars), &second.eval(ctx, vars))
}

fn constants_from_components(carrier: &Carrier, first: &Expr, second: &Expr) -> Vec<u32> {
    let n = carrier.dim();
    let mut consts = vec![0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let v = eval_components(
                carrier,
                first,
                second,
                &carrier.basis_vector(i),
                &carrier.basis_vector(j),
            );
            for (k, c) in v.into_iter().enumerate() {
                consts[(i * n + j) * n + k] = c;
            }
        }
    }
    consts
}

/// Compares the expressions with their bilinear extension on a fixed
/// sample of dense argument pairs.
fn check_biadditive(carrier: &Carrier, consts: &[u32], first: &Expr, second: &Expr) -> Result<()> {
    let s = Presemifield::unchecked(carrier.clone(), consts.to_vec(), "")?;
    let n = carrier.dim();
    let p = carrier.p() as u64;
    let sample = |seed: u64| -> Vec<u32> {
        (0..n as u64)
            .map(|i| ((seed * 7 + i * i * 3 + i * 5 + 1) % p) as u32)
            .collect()
    };
    for seed in 0..4 {
        let x = sample(seed);
        let y = sample(seed + 11);
        if eval_components(carrier, first, second, &x, &y) != s.mul(&x, &y) {
            return Err(Error::NotBiadditive);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, n: usize) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, n, None).unwrap())
    }

    fn field_product(ctx: &Arc<FieldCtx>) -> Presemifield {
        Presemifield::build(
            Carrier::field(ctx.clone()),
            MultSpec::Coefficients(BiPoly::monomial(ctx, 0, 0)),
            "field",
        )
        .unwrap()
    }

    fn x3y_plus_xy3(ctx: &Arc<FieldCtx>) -> Result<Presemifield> {
        let f = BiPoly::monomial(ctx, 1, 0) + BiPoly::monomial(ctx, 0, 1);
        Presemifield::build(
            Carrier::field(ctx.clone()),
            MultSpec::Coefficients(f),
            "gtf",
        )
    }

    #[test]
    fn field_spread_set_is_scalars() {
        let f9 = field(3, 2);
        let s = field_product(&f9);
        let c = s.spread_set();
        for l in f9.elements() {
            let y = f9.coords(&l);
            assert_eq!(c.lookup(&y), LinMap::scalar_map(&f9, &l));
        }
        assert_eq!(c.space().dim(), 2);
    }

    #[test]
    fn zero_divisor_detected_in_gf9() {
        let f9 = field(3, 2);
        // Oracle: x^3 y + x y^3 = xy (x^2 + y^2) has nonzero roots because
        // -1 is a square in GF(9).
        let mut found = None;
        'outer: for x in f9.elements().skip(1) {
            for y in f9.elements().skip(1) {
                let v = f9.add(
                    &f9.mul(&f9.frobenius(&x, 1), &y),
                    &f9.mul(&x, &f9.frobenius(&y, 1)),
                );
                if v.is_zero() {
                    found = Some((x, y));
                    break 'outer;
                }
            }
        }
        assert!(found.is_some());
        let err = x3y_plus_xy3(&f9).unwrap_err();
        let Error::ZeroDivisor { witness, .. } = err else {
            panic!("expected a zero divisor, got {err:?}");
        };
        // the witness really is a zero divisor
        let y = f9.from_coords(&witness).unwrap();
        assert!(f9.elements().skip(1).any(|x| {
            f9.add(
                &f9.mul(&f9.frobenius(&x, 1), &y),
                &f9.mul(&x, &f9.frobenius(&y, 1)),
            )
            .is_zero()
        }));
    }

    #[test]
    fn gtf_27_is_valid_and_its_spread_map_at_one() {
        let f27 = field(3, 3);
        let s = x3y_plus_xy3(&f27).unwrap();
        let phi1 = s.spread_set().lookup(&f27.coords(&f27.one()));
        let expected = LinMap::from_qpoly(&f27, &[f27.one(), f27.one(), f27.zero()]).unwrap();
        assert_eq!(phi1, expected);
        for j in 0..3 {
            let x = f27.basis(j);
            let direct = f27.add(&f27.frobenius(&x, 1), &x);
            assert_eq!(phi1.apply(&f27.coords(&x)), f27.coords(&direct));
        }
        assert!(s.is_commutative());
    }

    #[test]
    fn dual_and_transpose_are_involutions() {
        let f27 = field(3, 3);
        let s = x3y_plus_xy3(&f27).unwrap();
        assert_eq!(s.dual(), s);
        assert_eq!(s.dual().dual(), s);
        assert_eq!(s.transpose().transpose(), s);
        let field = field_product(&f27);
        assert_eq!(field.transpose(), field);
        for d in field.knuth_chain() {
            assert_eq!(d, field);
        }
    }

    #[test]
    fn dual_of_frobenius_twisted_product() {
        let f9 = field(3, 2);
        let f = BiPoly::monomial(&f9, 1, 0);
        let s = Presemifield::build(
            Carrier::field(f9.clone()),
            MultSpec::Coefficients(f.clone()),
            "x^p y",
        )
        .unwrap();
        let d = Presemifield::build(
            Carrier::field(f9.clone()),
            MultSpec::Coefficients(f.swapped()),
            "x y^p",
        )
        .unwrap();
        assert_eq!(s.dual(), d);
    }

    #[test]
    fn transpose_closed_form_matches_adjoint_route() {
        let f27 = field(3, 3);
        let s = x3y_plus_xy3(&f27).unwrap();
        let closed = s.aij().unwrap().transpose_closed_form();
        assert_eq!(s.transpose().aij().unwrap(), closed);
        for d in s.knuth_chain() {
            d.validate().unwrap();
        }
    }

    #[test]
    fn aij_roundtrip() {
        let f27 = field(3, 3);
        let c = f27.decode(14).unwrap();
        let f = BiPoly::monomial(&f27, 2, 1).times(&c) + BiPoly::monomial(&f27, 0, 0);
        let s =
            Presemifield::unchecked(Carrier::field(f27.clone()), constants_from_bipoly(&f), "t")
                .unwrap();
        assert_eq!(s.aij().unwrap(), f);
    }

    #[test]
    fn structure_constants_of_prime_field() {
        let f3 = field(3, 1);
        let s = field_product(&f3);
        assert_eq!(s.structure_constants(), &[1]);
        for x in 0..3u32 {
            for y in 0..3u32 {
                assert_eq!(s.mul(&[x], &[y]), vec![(x * y) % 3]);
            }
        }
    }

    #[test]
    fn structure_constants_reproduce_field_product() {
        let f9 = field(3, 2);
        let s = field_product(&f9);
        for x in f9.elements() {
            for y in f9.elements() {
                assert_eq!(
                    s.mul(&f9.coords(&x), &f9.coords(&y)),
                    f9.coords(&f9.mul(&x, &y))
                );
            }
        }
    }

    #[test]
    fn semifieldization() {
        let f27 = field(3, 3);
        let s = x3y_plus_xy3(&f27).unwrap();
        let one = f27.coords(&f27.one());
        let sf = s.to_semifield(&one).unwrap();
        assert_eq!(sf.identity, vec![2, 0, 0]);
        for x in f27.elements() {
            let x = f27.coords(&x);
            assert_eq!(sf.semifield.mul(&sf.identity, &x), x);
            assert_eq!(sf.semifield.mul(&x, &sf.identity), x);
        }
        assert_eq!(sf.semifield.identity_element(), Some(vec![2, 0, 0]));
        assert!(sf.semifield.spread_set().contains(&LinMap::identity(3, 3)));
        // A semifield with its own identity is unchanged.
        let again = sf.semifield.to_semifield(&sf.identity).unwrap();
        assert_eq!(again.semifield, sf.semifield);
        // For a field, x o y = xy / e^2.
        let field = field_product(&f27);
        let e = f27.decode(17).unwrap();
        let sf = field.to_semifield(&f27.coords(&e)).unwrap();
        let e2_inv = f27.inv(&f27.mul(&e, &e)).unwrap();
        for (xv, yv) in [(1u64, 5u64), (8, 13), (26, 20)] {
            let x = f27.decode(xv).unwrap();
            let y = f27.decode(yv).unwrap();
            let expected = f27.mul(&f27.mul(&x, &y), &e2_inv);
            assert_eq!(
                sf.semifield.mul(&f27.coords(&x), &f27.coords(&y)),
                f27.coords(&expected)
            );
        }
        assert_eq!(s.to_semifield(&[0, 0, 0]).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn pair_carrier_rejects_non_bilinear_expression() {
        let f9 = field(3, 2);
        let carrier = Carrier::pair(f9.clone());
        let bad = Expr::a() * Expr::a() * Expr::c();
        let err = Presemifield::build(
            carrier,
            MultSpec::Components(bad, Expr::b() * Expr::d()),
            "bad",
        );
        assert_eq!(err.unwrap_err(), Error::NotBiadditive);
    }

    #[test]
    fn derived_labels_cancel() {
        assert_eq!(derived_label("S", 'd'), "S^d");
        assert_eq!(derived_label("S^d", 'd'), "S");
        assert_eq!(derived_label("S^d", 't'), "S^dt");
        assert_eq!(derived_label("S^dt", 'd'), "S^dtd");
    }
}
