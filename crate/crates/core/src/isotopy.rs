//! Isotopy: invariant fingerprints, isotopism checks and transport, Knuth
//! orbit tables, and an exhaustive isotopy search for tiny orders.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp;
use crate::gf::{FElem, FieldCtx};
use crate::linalg::FpMatrix;
use crate::linmap::{BilinearForm, LinMap, MapSpace};
use crate::nuclei::{nuclei_report, Orders};
use crate::presemifield::{CarrierKind, Presemifield};

/// Isotopy-invariant parameters of a presemifield.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub p: u32,
    pub n: usize,
    pub orders: Orders,
    /// Symmetric structure constants. Informational only: commutativity is
    /// not preserved by isotopy.
    pub commutative: bool,
}

impl Fingerprint {
    /// Parameters that isotopic presemifields share.
    pub fn parameters(&self) -> (u32, usize, Orders) {
        (self.p, self.n, self.orders)
    }
}

pub fn fingerprint(s: &Presemifield) -> Result<Fingerprint> {
    let report = nuclei_report(s)?;
    Ok(Fingerprint {
        p: s.p(),
        n: s.n(),
        orders: report.orders(),
        commutative: s.is_commutative(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NotIsotopic {
        reason: String,
    },
    /// Equal parameters never prove isotopy.
    Unknown,
}

/// Compares isotopy invariants.
pub fn distinguish_fingerprints(a: &Fingerprint, b: &Fingerprint) -> Verdict {
    let reason = if a.p != b.p {
        format!("characteristic {} vs {}", a.p, b.p)
    } else if a.n != b.n {
        format!("order {}^{} vs {}^{}", a.p, a.n, b.p, b.n)
    } else if a.orders.center != b.orders.center {
        format!("center order {} vs {}", a.orders.center, b.orders.center)
    } else if a.orders.middle != b.orders.middle {
        format!(
            "middle nucleus order {} vs {}",
            a.orders.middle, b.orders.middle
        )
    } else if a.orders.left != b.orders.left {
        format!("left nucleus order {} vs {}", a.orders.left, b.orders.left)
    } else if a.orders.right != b.orders.right {
        format!(
            "right nucleus order {} vs {}",
            a.orders.right, b.orders.right
        )
    } else {
        return Verdict::Unknown;
    };
    Verdict::NotIsotopic { reason }
}

pub fn distinguish(a: &Presemifield, b: &Presemifield) -> Result<Verdict> {
    if a.p() != b.p() || a.n() != b.n() {
        // Orders differ; no need to compute nuclei.
        let fa = (a.p(), a.n());
        let fb = (b.p(), b.n());
        return Ok(Verdict::NotIsotopic {
            reason: format!("order {}^{} vs {}^{}", fa.0, fa.1, fb.0, fb.1),
        });
    }
    Ok(distinguish_fingerprints(&fingerprint(a)?, &fingerprint(b)?))
}

/// `(g1, g2, g3)` with `g1(x) *' g2(y) = g3(x * y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotopismTriple {
    pub g1: LinMap,
    pub g2: LinMap,
    pub g3: LinMap,
}

impl IsotopismTriple {
    pub fn identity(p: u32, n: usize) -> Self {
        let id = LinMap::identity(p, n);
        IsotopismTriple {
            g1: id.clone(),
            g2: id.clone(),
            g3: id,
        }
    }

    pub fn maps(&self) -> [&LinMap; 3] {
        [&self.g1, &self.g2, &self.g3]
    }

    /// The triple between the duals.
    pub fn dual(&self) -> Self {
        IsotopismTriple {
            g1: self.g2.clone(),
            g2: self.g1.clone(),
            g3: self.g3.clone(),
        }
    }

    /// The triple between the transposes: `(adj(g3)^-1, g2, adj(g1)^-1)`,
    /// with adjoints taken from `form1` on the source and `form2` on the
    /// target.
    pub fn transpose(&self, form1: &BilinearForm, form2: &BilinearForm) -> Result<Self> {
        let g1 = adjoint_between(&self.g3, form1, form2)?.invert()?;
        let g3 = adjoint_between(&self.g1, form1, form2)?.invert()?;
        Ok(IsotopismTriple {
            g1,
            g2: self.g2.clone(),
            g3,
        })
    }
}

/// Adjoint of `g: (V, form1) -> (W, form2)`, the map `W -> V` with
/// `<g x, y>_2 = <x, adj(g) y>_1`.
pub fn adjoint_between(g: &LinMap, form1: &BilinearForm, form2: &BilinearForm) -> Result<LinMap> {
    if form1.dim() != g.dim() || form2.dim() != g.dim() {
        return Err(Error::CarrierMismatch);
    }
    let g1_inv = form1.gram().inverse().ok_or(Error::Singular)?;
    let m = g1_inv.mul(&g.matrix().transpose()).mul(form2.gram());
    LinMap::from_matrix(m)
}

fn check_shapes(s1: &Presemifield, s2: &Presemifield, t: &IsotopismTriple) -> Result<()> {
    if s1.p() != s2.p() || s1.n() != s2.n() {
        return Err(Error::CarrierMismatch);
    }
    for g in t.maps() {
        if g.p() != s1.p() || g.dim() != s1.n() {
            return Err(Error::CarrierMismatch);
        }
    }
    Ok(())
}

/// `g1(e_i) *' g2(e_j) = g3(e_i * e_j)` on all basis pairs.
pub fn verify_on_basis(s1: &Presemifield, s2: &Presemifield, t: &IsotopismTriple) -> Result<bool> {
    check_shapes(s1, s2, t)?;
    let n = s1.n();
    let c = s1.carrier();
    for i in 0..n {
        let gx = t.g1.apply(&c.basis_vector(i));
        for j in 0..n {
            let gy = t.g2.apply(&c.basis_vector(j));
            let lhs = s2.mul(&gx, &gy);
            let rhs = t.g3.apply(&s1.mul(&c.basis_vector(i), &c.basis_vector(j)));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `g3 o phi_y o g1^-1 = phi'_{g2(y)}` for every basis vector `y`.
pub fn verify_on_spread_sets(
    s1: &Presemifield,
    s2: &Presemifield,
    t: &IsotopismTriple,
) -> Result<bool> {
    check_shapes(s1, s2, t)?;
    let g1_inv = match t.g1.invert() {
        Ok(m) => m,
        Err(_) => return Ok(false),
    };
    let c = s1.carrier();
    for j in 0..s1.n() {
        let e = c.basis_vector(j);
        let lhs =
            t.g3.then_unchecked(&s1.right_map(&e))
                .then_unchecked(&g1_inv);
        if lhs != s2.right_map(&t.g2.apply(&e)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs both routes and requires them to agree. All three maps must be
/// invertible.
pub fn verify_isotopism(s1: &Presemifield, s2: &Presemifield, t: &IsotopismTriple) -> Result<bool> {
    check_shapes(s1, s2, t)?;
    if t.maps().iter().any(|g| !g.is_invertible()) {
        return Err(Error::NotInvertible);
    }
    let basis = verify_on_basis(s1, s2, t)?;
    let spread = verify_on_spread_sets(s1, s2, t)?;
    if basis != spread {
        return Err(Error::RouteDisagreement);
    }
    Ok(basis)
}

/// The presemifield `x *' y = g3(g1^-1(x) * g2^-1(y))`, isotopic to `s`
/// through `t`.
pub fn isotope(
    s: &Presemifield,
    t: &IsotopismTriple,
    label: impl Into<String>,
) -> Result<Presemifield> {
    let n = s.n();
    for g in t.maps() {
        if g.p() != s.p() || g.dim() != n {
            return Err(Error::CarrierMismatch);
        }
    }
    let g1_inv = t.g1.invert().map_err(|_| Error::NotInvertible)?;
    let g2_inv = t.g2.invert().map_err(|_| Error::NotInvertible)?;
    if !t.g3.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let mut consts = vec![0; n * n * n];
    for i in 0..n {
        let x = g1_inv.matrix().column(i);
        for j in 0..n {
            let y = g2_inv.matrix().column(j);
            let v = t.g3.apply(&s.mul(&x, &y));
            for (k, c) in v.into_iter().enumerate() {
                consts[(i * n + j) * n + k] = c;
            }
        }
    }
    Presemifield::from_structure_constants(s.carrier().clone(), consts, label)
}

/// One row of a Knuth orbit table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub label: String,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTable {
    /// `S, S^d, S^t, S^dt, S^td, S^dtd`.
    pub rows: Vec<OrbitRow>,
    /// Fingerprint of `S^tdt`, which must match `S^dtd`.
    pub tdt: Fingerprint,
    pub relations_hold: bool,
    pub failed_relations: Vec<String>,
}

const CHAIN_SUFFIXES: [&str; 6] = ["", "d", "t", "dt", "td", "dtd"];

pub fn knuth_orbit_table(s: &Presemifield) -> Result<OrbitTable> {
    let chain = s.knuth_chain();
    let prints: Vec<Fingerprint> = chain.par_iter().map(fingerprint).collect::<Result<_>>()?;
    let tdt = fingerprint(&s.transpose().dual().transpose())?;
    let o: Vec<Orders> = prints.iter().map(|f| f.orders).collect();
    let [s0, d, t, _dt, _td, dtd] = [0, 1, 2, 3, 4, 5];
    let checks = [
        (
            "|N_r(S)| = |N_l(S^d)| = |N_m(S^t)|",
            o[s0].right == o[d].left && o[d].left == o[t].middle,
        ),
        (
            "|N_m(S)| = |N_r(S^t)| = |N_m(S^d)|",
            o[s0].middle == o[t].right && o[t].right == o[d].middle,
        ),
        (
            "|N_l(S)| = |N_r(S^d)| = |N_l(S^t)|",
            o[s0].left == o[d].right && o[d].right == o[t].left,
        ),
        (
            "|K| constant on the chain",
            o.iter().all(|x| x.center == o[s0].center),
        ),
        (
            "S^dtd and S^tdt share parameters",
            prints[dtd].parameters() == tdt.parameters(),
        ),
    ];
    let failed_relations: Vec<String> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name.to_string())
        .collect();
    let rows = chain
        .iter()
        .zip(prints)
        .zip(CHAIN_SUFFIXES)
        .map(|((_, fingerprint), suffix)| OrbitRow {
            label: if suffix.is_empty() {
                "S".into()
            } else {
                format!("S^{suffix}")
            },
            fingerprint,
        })
        .collect();
    Ok(OrbitTable {
        rows,
        tdt,
        relations_hold: failed_relations.is_empty(),
        failed_relations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteOutcome {
    Isotopic(Box<IsotopismTriple>),
    NotIsotopic,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteReport {
    pub outcome: BruteOutcome,
    /// `(g1, g3)` candidate pairs examined.
    pub examined: u64,
    /// Order `q` of the field over which both spread sets are linear, when
    /// the semilinear restriction was used.
    pub semilinear_q: Option<u64>,
}

/// Exhaustive isotopy test.
///
/// Any isotopism satisfies `g3 = psi o g1 o phi_{e_0}^-1` for some nonzero
/// `psi` in the target spread set, and scaling `psi` by a scalar scales the
/// whole triple, so only `psi = phi'_y` with `y` normalized (last nonzero
/// coordinate 1) is tried. `g1` runs over `id + D` with `D` in row-major
/// encoding order, skipping singular maps; when both spread sets are
/// `F_q`-linear for some `q > p`, only `F_q`-semilinear `g1` are tried. `g2`
/// is read off by spread-set membership. `budget` caps the number of
/// `(g1, psi)` pairs; the first certified triple in enumeration order is
/// returned.
pub fn brute_isotopy(s1: &Presemifield, s2: &Presemifield, budget: u64) -> Result<BruteReport> {
    if s1.p() != s2.p() || s1.n() != s2.n() {
        return Err(Error::CarrierMismatch);
    }
    let p = s1.p();
    let n = s1.n();
    let c1 = s1.spread_set();
    let c2 = s2.spread_set();
    let phi0_inv = c1.basis()[0].invert()?;
    // phi_0^-1 o phi_i, conjugated by each candidate g1
    let twists: Vec<LinMap> = c1.basis()[1..]
        .iter()
        .map(|phi| phi0_inv.then_unchecked(phi))
        .collect();
    let psis: Vec<(Vec<u32>, LinMap)> = MapSpace::projective_coefficients(p, n)
        .map(|y| {
            let m = c2.lookup(&y);
            (y, m)
        })
        .collect();
    let per_g1 = psis.len() as u64;
    let source = G1Source::new(s1, s2)?;
    let semilinear_q = source.q();
    let total = source.len();
    let allowed = (budget / per_g1.max(1)).min(total);

    let test = |g1: &LinMap| -> Option<IsotopismTriple> {
        let g1_inv = g1.invert().ok()?;
        let conj: Vec<LinMap> = twists
            .iter()
            .map(|t| g1.then_unchecked(t).then_unchecked(&g1_inv))
            .collect();
        for (_, psi) in &psis {
            if conj.iter().all(|m| c2.contains(&psi.then_unchecked(m))) {
                let g3 = psi.then_unchecked(g1).then_unchecked(&phi0_inv);
                let g2 = derive_g2(s1, &c2, g1, &g3)?;
                let triple = IsotopismTriple {
                    g1: g1.clone(),
                    g2,
                    g3,
                };
                if verify_isotopism(s1, s2, &triple).ok()? {
                    return Some(triple);
                }
            }
        }
        None
    };

    let found = (0..allowed)
        .into_par_iter()
        .filter_map(|idx| source.candidate(idx))
        .find_map_first(|g1| test(&g1));
    let invertible_before = |limit: u64| -> u64 {
        (0..limit)
            .into_par_iter()
            .filter(|&i| source.candidate(i).is_some())
            .count() as u64
    };
    let (outcome, examined) = match found {
        Some(triple) => {
            let idx = (0..allowed)
                .into_par_iter()
                .find_first(|&i| source.candidate(i).as_ref() == Some(&triple.g1))
                .expect("found candidate has an index");
            let before = invertible_before(idx);
            let psi_pos = psis
                .iter()
                .position(|(_, psi)| {
                    psi.then_unchecked(&triple.g1).then_unchecked(&phi0_inv) == triple.g3
                })
                .unwrap_or(0) as u64;
            (
                BruteOutcome::Isotopic(Box::new(triple)),
                before * per_g1 + psi_pos + 1,
            )
        }
        None => {
            let examined = invertible_before(allowed) * per_g1;
            if allowed < total {
                (BruteOutcome::BudgetExceeded, examined)
            } else {
                (BruteOutcome::NotIsotopic, examined)
            }
        }
    };
    Ok(BruteReport {
        outcome,
        examined,
        semilinear_q,
    })
}

/// `g2(e_j)` is the element whose spread map is `g3 o phi_{e_j} o g1^-1`.
fn derive_g2(
    s1: &Presemifield,
    c2: &crate::presemifield::SpreadSet,
    g1: &LinMap,
    g3: &LinMap,
) -> Option<LinMap> {
    let g1_inv = g1.invert().ok()?;
    let columns: Option<Vec<Vec<u32>>> = s1
        .spread_set()
        .basis()
        .iter()
        .map(|phi| c2.element_of(&g3.then_unchecked(phi).then_unchecked(&g1_inv)))
        .collect();
    LinMap::from_columns(s1.p(), &columns?).ok()
}

/// Largest `k > 1` dividing `n` such that every basis map of both spread
/// sets commutes with multiplication by a generator of GF(p^k).
pub fn common_linearity_degree(s1: &Presemifield, s2: &Presemifield) -> Option<usize> {
    let (c1, c2) = (s1.carrier(), s2.carrier());
    if c1.kind() != CarrierKind::Field || c2.kind() != CarrierKind::Field {
        return None;
    }
    if c1.field_ctx() != c2.field_ctx() {
        return None;
    }
    let ctx = c1.field_ctx();
    let n = ctx.n();
    let maps: Vec<LinMap> = s1
        .spread_set()
        .basis()
        .iter()
        .chain(s2.spread_set().basis())
        .cloned()
        .collect();
    (2..=n).rev().filter(|k| n % k == 0).find(|&k| {
        let gamma = ctx.subfield_generator(k).expect("k divides n");
        let t = LinMap::scalar_map(ctx, &gamma);
        maps.iter()
            .all(|m| m.then_unchecked(&t) == t.then_unchecked(m))
    })
}

/// Enumeration of candidate `g1` maps by index.
enum G1Source {
    /// `id + D`, `D` decoded from the index as row-major base-`p` digits.
    General { p: u32, n: usize, total: u64 },
    /// `A o frob^i`, `A` the `F_q`-linear map sending `x^j` to `x^j + d_j`
    /// with `d_j` decoded from the index.
    Semilinear(Box<SemilinearSpace>),
}

struct SemilinearSpace {
    ctx: Arc<FieldCtx>,
    /// `q = p^k`.
    k: usize,
    q: u64,
    /// `m = n / k`, the dimension over `F_q`.
    m: usize,
    /// Powers `gamma^a` of a generator of `F_q`, `a < k`.
    gamma_powers: Vec<FElem>,
    /// Inverse of the matrix whose columns are `gamma^a x^j`.
    basis_inv: FpMatrix,
    per_frob: u64,
}

impl G1Source {
    fn new(s1: &Presemifield, s2: &Presemifield) -> Result<Self> {
        let p = s1.p();
        let n = s1.n();
        if let Some(k) = common_linearity_degree(s1, s2) {
            let ctx = s1.carrier().field_ctx().clone();
            let gamma = ctx.subfield_generator(k)?;
            let gamma_powers: Vec<FElem> = (0..k).map(|a| ctx.pow(&gamma, a as u64)).collect();
            let m = n / k;
            let mut basis = FpMatrix::zeros(p, n, n);
            for (a, ga) in gamma_powers.iter().enumerate() {
                for j in 0..m {
                    let v = ctx.mul(ga, &ctx.basis(j));
                    for (r, c) in ctx.coords(&v).into_iter().enumerate() {
                        basis.set(r, a * m + j, c);
                    }
                }
            }
            let basis_inv = basis.inverse().ok_or(Error::Singular)?;
            let per_frob = fp::checked_pow(ctx.order(), m).unwrap_or(u64::MAX);
            let q = fp::checked_pow(p as u64, k).expect("subfield order");
            return Ok(G1Source::Semilinear(Box::new(SemilinearSpace {
                ctx,
                k,
                q,
                m,
                gamma_powers,
                basis_inv,
                per_frob,
            })));
        }
        let total = fp::checked_pow(p as u64, n * n).unwrap_or(u64::MAX);
        Ok(G1Source::General { p, n, total })
    }

    fn q(&self) -> Option<u64> {
        match self {
            G1Source::General { .. } => None,
            G1Source::Semilinear(s) => Some(s.q),
        }
    }

    fn len(&self) -> u64 {
        match self {
            G1Source::General { total, .. } => *total,
            G1Source::Semilinear(s) => s.per_frob.saturating_mul(s.k as u64),
        }
    }

    /// The candidate with this index, or `None` if it is singular.
    fn candidate(&self, idx: u64) -> Option<LinMap> {
        match self {
            G1Source::General { p, n, .. } => {
                let mut m = FpMatrix::identity(*p, *n);
                let mut v = idx;
                for r in 0..*n {
                    for c in 0..*n {
                        let d = (v % *p as u64) as u32;
                        v /= *p as u64;
                        m.set(r, c, fp::add(m.get(r, c), d, *p));
                    }
                }
                m.is_invertible()
                    .then(|| LinMap::from_matrix(m).expect("square"))
            }
            G1Source::Semilinear(s) => s.candidate(idx),
        }
    }
}

impl SemilinearSpace {
    fn candidate(&self, idx: u64) -> Option<LinMap> {
        let ctx = &self.ctx;
        let n = ctx.n();
        let frob = (idx / self.per_frob) as usize;
        let mut v = idx % self.per_frob;
        let mut images = Vec::with_capacity(self.m);
        for j in 0..self.m {
            let d = ctx.decode(v % ctx.order()).expect("in range");
            v /= ctx.order();
            images.push(ctx.add(&ctx.basis(j), &d));
        }
        let mut cols = FpMatrix::zeros(ctx.p(), n, n);
        for a in 0..self.k {
            for (j, img) in images.iter().enumerate() {
                let w = ctx.mul(&self.gamma_powers[a], img);
                for (r, c) in ctx.coords(&w).into_iter().enumerate() {
                    cols.set(r, a * self.m + j, c);
                }
            }
        }
        let linear = cols.mul(&self.basis_inv);
        if !linear.is_invertible() {
            return None;
        }
        let frob_map = LinMap::frobenius_map(ctx, frob);
        Some(
            LinMap::from_matrix(linear)
                .expect("square")
                .then_unchecked(&frob_map)
                .without_qpoly(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::mult::{BiPoly, MultSpec};
    use crate::presemifield::Carrier;

    fn field(p: u32, n: usize) -> Presemifield {
        let ctx = Arc::new(FieldCtx::new(p, n, None).unwrap());
        Presemifield::build(
            Carrier::field(ctx.clone()),
            MultSpec::Coefficients(BiPoly::monomial(&ctx, 0, 0)),
            format!("GF({p}^{n})"),
        )
        .unwrap()
    }

    #[test]
    fn identity_and_frobenius_triples() {
        let s = field(3, 3);
        assert!(verify_isotopism(&s, &s, &IsotopismTriple::identity(3, 3)).unwrap());
        let ctx = s.carrier().field_ctx().clone();
        let frob = LinMap::frobenius_map(&ctx, 1);
        let t = IsotopismTriple {
            g1: frob.clone(),
            g2: frob.clone(),
            g3: frob,
        };
        assert!(verify_isotopism(&s, &s, &t).unwrap());
        let id = LinMap::identity(3, 3);
        let wrong = IsotopismTriple {
            g1: id.clone(),
            g2: id,
            g3: LinMap::frobenius_map(&ctx, 1),
        };
        assert!(!verify_isotopism(&s, &s, &wrong).unwrap());
    }

    #[test]
    fn distinguish_verdicts() {
        let g = families::gtf(3, 3, 1).unwrap();
        let f = field(3, 3);
        assert_eq!(distinguish(&g, &g).unwrap(), Verdict::Unknown);
        assert!(matches!(
            distinguish(&g, &f).unwrap(),
            Verdict::NotIsotopic { .. }
        ));
    }

    #[test]
    fn brute_finds_identity_first() {
        let g = families::gtf(3, 3, 1).unwrap();
        let r = brute_isotopy(&g, &g, u64::MAX).unwrap();
        assert_eq!(
            r.outcome,
            BruteOutcome::Isotopic(Box::new(IsotopismTriple::identity(3, 3)))
        );
        assert_eq!(r.examined, 1);
    }

    #[test]
    fn brute_budget() {
        let g = families::gtf(3, 3, 1).unwrap();
        let f = field(3, 3);
        let r = brute_isotopy(&f, &g, 100).unwrap();
        assert_eq!(r.outcome, BruteOutcome::BudgetExceeded);
        assert!(r.examined <= 100);
    }

    #[test]
    fn semilinear_degree_of_gf81() {
        let f = field(3, 4);
        assert_eq!(common_linearity_degree(&f, &f), Some(4));
        let ctx = Arc::new(FieldCtx::new(3, 4, None).unwrap());
        let twisted = Presemifield::build(
            Carrier::field(ctx.clone()),
            MultSpec::Coefficients(BiPoly::monomial(&ctx, 2, 0)),
            "x^9 y",
        )
        .unwrap();
        assert_eq!(common_linearity_degree(&f, &twisted), Some(2));
    }
}
