//! Nuclei and center of a presemifield.
//!
//! The nuclei are computed as idealizers of the spread set `C`:
//! `N_r = {mu : mu C in C}`, `N_m = {mu : C mu in C}`, and the left nucleus
//! is the right idealizer of the dual's spread set. Each is the solution
//! space of a linear system over F_p. The result is checked to be a field
//! of maps before it is returned.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linmap::{elementary_maps, solve_in_span, LinMap, MapSpace};
use crate::presemifield::{Presemifield, SpreadSet};

/// Which nucleus the center is carved out of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Middle,
}

/// Sizes of the nuclei and the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orders {
    pub left: u64,
    pub middle: u64,
    pub right: u64,
    pub center: u64,
}

#[derive(Clone, Debug)]
pub struct NucleiReport {
    pub p: u32,
    pub n: usize,
    pub left: MapSpace,
    pub middle: MapSpace,
    pub right: MapSpace,
    pub center: MapSpace,
}

impl NucleiReport {
    pub fn orders(&self) -> Orders {
        Orders {
            left: self.left.order(),
            middle: self.middle.order(),
            right: self.right.order(),
            center: self.center.order(),
        }
    }

    /// Dimensions over F_p, in the order left, middle, right, center.
    pub fn dims(&self) -> [usize; 4] {
        [
            self.left.dim(),
            self.middle.dim(),
            self.right.dim(),
            self.center.dim(),
        ]
    }

    /// Checks the structural invariants of the four spaces.
    pub fn verify(&self) -> Result<()> {
        for (name, space) in self.named_spaces() {
            space.verify_field(name)?;
            if !self.n.is_multiple_of(space.dim()) {
                return Err(Error::NotAField {
                    space: name.into(),
                    reason: format!("dimension {} does not divide {}", space.dim(), self.n),
                });
            }
        }
        if self.center.dim() > self.right.dim().min(self.middle.dim()) {
            return Err(Error::NotAField {
                space: "center".into(),
                reason: "larger than a nucleus".into(),
            });
        }
        Ok(())
    }

    pub fn named_spaces(&self) -> [(&'static str, &MapSpace); 4] {
        [
            ("left", &self.left),
            ("middle", &self.middle),
            ("right", &self.right),
            ("center", &self.center),
        ]
    }
}

/// `{mu : mu o phi in span C}` for every basis map `phi` of `C`.
pub fn right_nucleus(c: &SpreadSet) -> MapSpace {
    idealizer(c.space(), true)
}

/// `{mu : phi o mu in span C}` for every basis map `phi` of `C`.
pub fn middle_nucleus(c: &SpreadSet) -> MapSpace {
    idealizer(c.space(), false)
}

/// Right idealizer of the spread set of the dual.
pub fn left_nucleus(s: &Presemifield) -> MapSpace {
    right_nucleus(&s.dual().spread_set())
}

fn idealizer(space: &MapSpace, on_left: bool) -> MapSpace {
    let p = space.p();
    let n = space.carrier_dim();
    let unknowns = elementary_maps(p, n);
    let solutions = solve_in_span(p, n, &unknowns, |mu| {
        space
            .basis()
            .iter()
            .flat_map(|phi| {
                let prod = if on_left {
                    mu.then_unchecked(phi)
                } else {
                    phi.then_unchecked(mu)
                };
                space.residual(&prod)
            })
            .collect()
    });
    MapSpace::new(p, n, solutions).expect("nullspace basis is independent")
}

/// Center as a subspace of the right or middle nucleus.
///
/// `omega` must be an invertible element of the spread set; by default the
/// spread map of the first basis vector is used.
pub fn center(s: &Presemifield, omega: Option<&LinMap>, side: Side) -> Result<MapSpace> {
    let c = s.spread_set();
    let nucleus = match side {
        Side::Right => right_nucleus(&c),
        Side::Middle => middle_nucleus(&c),
    };
    center_in(&c, &nucleus, omega, side)
}

fn center_in(
    c: &SpreadSet,
    nucleus: &MapSpace,
    omega: Option<&LinMap>,
    side: Side,
) -> Result<MapSpace> {
    let omega = match omega {
        Some(w) => {
            if !c.contains(w) {
                return Err(Error::NotInSpreadSet);
            }
            w.clone()
        }
        None => c.basis()[0].clone(),
    };
    let omega_inv = omega.invert().map_err(|_| Error::NotInvertible)?;
    let p = nucleus.p();
    let n = nucleus.carrier_dim();
    let solutions = solve_in_span(p, n, nucleus.basis(), |rho| {
        let twisted = omega_inv.then_unchecked(rho).then_unchecked(&omega);
        c.basis()
            .iter()
            .flat_map(|phi| {
                let diff = match side {
                    Side::Right => rho
                        .then_unchecked(phi)
                        .matrix()
                        .sub(phi.then_unchecked(&twisted).matrix()),
                    Side::Middle => phi
                        .then_unchecked(rho)
                        .matrix()
                        .sub(twisted.then_unchecked(phi).matrix()),
                };
                diff.data().to_vec()
            })
            .collect()
    });
    Ok(MapSpace::new(p, n, solutions).expect("nullspace basis is independent"))
}

/// All four spaces with the default `omega`, checked to be fields.
pub fn nuclei_report(s: &Presemifield) -> Result<NucleiReport> {
    let c = s.spread_set();
    let ((right, middle), left) = rayon::join(
        || rayon::join(|| right_nucleus(&c), || middle_nucleus(&c)),
        || left_nucleus(s),
    );
    let center = center_in(&c, &right, None, Side::Right)?;
    let report = NucleiReport {
        p: s.p(),
        n: s.n(),
        left,
        middle,
        right,
        center,
    };
    report.verify()?;
    Ok(report)
}

/// Nuclei straight from the associativity definitions.
///
/// Requires a two-sided identity. Every element is tested against all
/// basis pairs, which suffices because associators are additive in each
/// argument. Elements of the right and middle nuclei and of the center are
/// returned as their spread maps `x -> x * c`; left nucleus elements as
/// `y -> a * y`.
pub fn oracle_nuclei(s: &Presemifield) -> Result<NucleiReport> {
    s.identity_element().ok_or(Error::NoIdentity)?;
    let n = s.n();
    let carrier = s.carrier();
    let basis: Vec<Vec<u32>> = (0..n).map(|i| carrier.basis_vector(i)).collect();
    // products of basis vectors, reused across all candidates
    let table: Vec<Vec<u32>> = (0..n * n)
        .map(|ij| s.mul(&basis[ij / n], &basis[ij % n]))
        .collect();
    let members: Vec<[bool; 4]> = (0..s.order())
        .into_par_iter()
        .map(|v| {
            let b = carrier.decode(v);
            let mut left = true;
            let mut middle = true;
            let mut right = true;
            for i in 0..n {
                for j in 0..n {
                    let (x, y) = (&basis[i], &basis[j]);
                    let xy = &table[i * n + j];
                    if left {
                        left = s.mul(&s.mul(&b, x), y) == s.mul(&b, xy);
                    }
                    if middle {
                        middle = s.mul(&s.mul(x, &b), y) == s.mul(x, &s.mul(&b, y));
                    }
                    if right {
                        right = s.mul(xy, &b) == s.mul(x, &s.mul(y, &b));
                    }
                }
            }
            let commutes = basis.iter().all(|x| s.mul(x, &b) == s.mul(&b, x));
            [left, middle, right, left && middle && right && commutes]
        })
        .collect();
    let collect = |slot: usize, as_left: bool| -> Result<MapSpace> {
        let elems: Vec<Vec<u32>> = members
            .iter()
            .enumerate()
            .filter(|(_, m)| m[slot])
            .map(|(v, _)| carrier.decode(v as u64))
            .collect();
        let maps: Vec<LinMap> = elems
            .iter()
            .map(|e| {
                if as_left {
                    s.left_map(e)
                } else {
                    s.right_map(e)
                }
            })
            .collect();
        let space = MapSpace::span(s.p(), n, &maps);
        if space.order() != elems.len() as u64 {
            return Err(Error::NotAField {
                space: ["left", "middle", "right", "center"][slot].into(),
                reason: "element set is not additively closed".into(),
            });
        }
        Ok(space)
    };
    let report = NucleiReport {
        p: s.p(),
        n,
        left: collect(0, true)?,
        middle: collect(1, false)?,
        right: collect(2, false)?,
        center: collect(3, false)?,
    };
    report.verify()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf::FieldCtx;
    use crate::mult::{BiPoly, MultSpec};
    use crate::presemifield::Carrier;

    fn field(p: u32, n: usize) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, n, None).unwrap())
    }

    fn build(ctx: &Arc<FieldCtx>, f: BiPoly) -> Presemifield {
        Presemifield::build(Carrier::field(ctx.clone()), MultSpec::Coefficients(f), "t").unwrap()
    }

    #[test]
    fn field_nuclei_are_everything() {
        for (p, n) in [(3, 1), (5, 1), (3, 2), (3, 3), (5, 2)] {
            let ctx = field(p, n);
            let s = build(&ctx, BiPoly::monomial(&ctx, 0, 0));
            let r = nuclei_report(&s).unwrap();
            let all = ctx.order();
            assert_eq!(
                r.orders(),
                Orders {
                    left: all,
                    middle: all,
                    right: all,
                    center: all
                }
            );
            let id = LinMap::identity(p, n);
            assert_eq!(center(&s, Some(&id), Side::Middle).unwrap().order(), all);
            assert_eq!(oracle_nuclei(&s).unwrap().orders(), r.orders());
        }
    }

    #[test]
    fn gtf_27() {
        let ctx = field(3, 3);
        let s = build(
            &ctx,
            BiPoly::monomial(&ctx, 1, 0) + BiPoly::monomial(&ctx, 0, 1),
        );
        let r = nuclei_report(&s).unwrap();
        assert_eq!(
            r.orders(),
            Orders {
                left: 3,
                middle: 3,
                right: 3,
                center: 3
            }
        );
        let sf = s.to_semifield(&ctx.coords(&ctx.one())).unwrap().semifield;
        assert_eq!(oracle_nuclei(&sf).unwrap().orders(), r.orders());
    }

    #[test]
    fn center_errors() {
        let ctx = field(3, 3);
        let s = build(
            &ctx,
            BiPoly::monomial(&ctx, 1, 0) + BiPoly::monomial(&ctx, 0, 1),
        );
        let outside = LinMap::frobenius_map(&ctx, 1);
        assert_eq!(
            center(&s, Some(&outside), Side::Right).unwrap_err(),
            Error::NotInSpreadSet
        );
        assert_eq!(oracle_nuclei(&s).unwrap_err(), Error::NoIdentity);
    }

    #[test]
    fn isotope_of_field_keeps_full_parameters() {
        // x^3 y on GF(9) is isotopic to the field.
        let ctx = field(3, 2);
        let s = build(&ctx, BiPoly::monomial(&ctx, 1, 0));
        assert_eq!(nuclei_report(&s).unwrap().orders().center, 9);
    }
}
