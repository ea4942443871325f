//! JSON exchange formats.
//!
//! Documents are plain serde structs, so field order in the output is
//! fixed. Every decoder checks shapes and ranges and reports problems as
//! [`Error::Parse`]; decoding a presemifield also re-runs zero-divisor
//! validation.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::fp;
use crate::gf::FieldCtx;
use crate::linalg::FpMatrix;
use crate::linmap::{LinMap, MapSpace};
use crate::mult::BiPoly;
use crate::nuclei::{NucleiReport, Orders};
use crate::presemifield::{Carrier, CarrierKind, Presemifield};

/// Largest carrier order accepted by the presemifield decoder; validation
/// is linear in the order.
pub const MAX_EXCHANGE_ORDER: u64 = 1 << 24;

pub type MatrixRows = Vec<Vec<u32>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub p: u32,
    pub n: usize,
    /// Monic modulus, constant term first.
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierDoc {
    pub kind: CarrierKind,
    pub field: FieldDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresemifieldDoc {
    pub carrier: CarrierDoc,
    pub structure_constants: Vec<u32>,
    /// Field carriers only: `a_ij` as canonical encodings, row `i`.
    pub aij: Option<Vec<Vec<u64>>>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinMapDoc {
    pub p: u32,
    pub n: usize,
    /// Row-major; column `j` is the image of `e_j`.
    pub matrix: MatrixRows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpaceDoc {
    pub p: u32,
    pub n: usize,
    pub basis: Vec<MatrixRows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasesDoc {
    pub left: Vec<MatrixRows>,
    pub middle: Vec<MatrixRows>,
    pub right: Vec<MatrixRows>,
    pub center: Vec<MatrixRows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NucleiReportDoc {
    pub orders: Orders,
    /// `[p, n, |N_l|, |N_m|, |N_r|, |K|]`.
    pub fingerprint: Vec<u64>,
    pub bases: BasesDoc,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

pub fn field_doc(ctx: &FieldCtx) -> FieldDoc {
    FieldDoc {
        p: ctx.p(),
        n: ctx.n(),
        modulus: ctx.modulus().to_vec(),
    }
}

pub fn field_from_doc(doc: &FieldDoc) -> Result<FieldCtx> {
    FieldCtx::new(doc.p, doc.n, Some(&doc.modulus))
}

pub fn decode_field(text: &str) -> Result<FieldCtx> {
    field_from_doc(&from_json(text)?)
}

pub fn carrier_doc(c: &Carrier) -> CarrierDoc {
    CarrierDoc {
        kind: c.kind(),
        field: field_doc(c.field_ctx()),
    }
}

pub fn carrier_from_doc(doc: &CarrierDoc) -> Result<Carrier> {
    let ctx = Arc::new(field_from_doc(&doc.field)?);
    Ok(match doc.kind {
        CarrierKind::Field => Carrier::field(ctx),
        CarrierKind::Pair => Carrier::pair(ctx),
    })
}

pub fn presemifield_doc(s: &Presemifield) -> PresemifieldDoc {
    PresemifieldDoc {
        carrier: carrier_doc(s.carrier()),
        structure_constants: s.structure_constants().to_vec(),
        aij: s.aij().map(|f| f.encoded_rows()),
        label: s.label().to_string(),
    }
}

pub fn encode_presemifield(s: &Presemifield) -> String {
    to_json(&presemifield_doc(s))
}

/// Checks shapes, the optional `a_ij` metadata, and the absence of zero
/// divisors.
pub fn presemifield_from_doc(doc: &PresemifieldDoc) -> Result<Presemifield> {
    let carrier = carrier_from_doc(&doc.carrier)?;
    if carrier.order() > MAX_EXCHANGE_ORDER {
        return Err(Error::FieldTooLarge(format!(
            "carrier order {} exceeds {MAX_EXCHANGE_ORDER}",
            carrier.order()
        )));
    }
    let n = carrier.dim();
    if doc.structure_constants.len() != n * n * n {
        return Err(parse_err(format!(
            "expected {} structure constants, got {}",
            n * n * n,
            doc.structure_constants.len()
        )));
    }
    let p = carrier.p();
    if let Some(c) = doc.structure_constants.iter().find(|&&c| c >= p) {
        return Err(parse_err(format!(
            "structure constant {c} is not below {p}"
        )));
    }
    let shape = Presemifield::unchecked(
        carrier.clone(),
        doc.structure_constants.clone(),
        doc.label.clone(),
    )?;
    if let Some(rows) = &doc.aij {
        check_aij(&shape, rows)?;
    }
    shape.validate()?;
    Ok(shape)
}

fn check_aij(s: &Presemifield, rows: &[Vec<u64>]) -> Result<()> {
    let expected = s
        .aij()
        .ok_or_else(|| parse_err("aij is only defined for field carriers"))?;
    let ctx = expected.ctx();
    let n = ctx.n();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(parse_err(format!("aij must be {n} x {n}")));
    }
    let coeffs = rows
        .iter()
        .flatten()
        .map(|&v| {
            ctx.decode(v)
                .map_err(|_| parse_err(format!("aij entry {v} out of range")))
        })
        .collect::<Result<Vec<_>>>()?;
    let given = BiPoly::from_coefficients(ctx, coeffs).expect("n x n");
    if given != expected {
        return Err(parse_err("aij does not match the structure constants"));
    }
    Ok(())
}

pub fn decode_presemifield(text: &str) -> Result<Presemifield> {
    presemifield_from_doc(&from_json(text)?)
}

pub fn linmap_doc(f: &LinMap) -> LinMapDoc {
    LinMapDoc {
        p: f.p(),
        n: f.dim(),
        matrix: f.matrix().to_rows(),
    }
}

fn matrix_from_rows(p: u32, n: usize, rows: &MatrixRows) -> Result<FpMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(parse_err(format!("matrix must be {n} x {n}")));
    }
    if let Some(v) = rows.iter().flatten().find(|&&v| v >= p) {
        return Err(parse_err(format!("matrix entry {v} is not below {p}")));
    }
    Ok(FpMatrix::from_rows(p, rows))
}

fn check_header(p: u32, n: usize) -> Result<()> {
    if !fp::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if n == 0 || n > 2 * crate::gf::MAX_DEGREE {
        return Err(parse_err(format!("dimension {n} out of range")));
    }
    Ok(())
}

pub fn linmap_from_doc(doc: &LinMapDoc) -> Result<LinMap> {
    check_header(doc.p, doc.n)?;
    LinMap::from_matrix(matrix_from_rows(doc.p, doc.n, &doc.matrix)?)
}

pub fn decode_linmap(text: &str) -> Result<LinMap> {
    linmap_from_doc(&from_json(text)?)
}

pub fn mapspace_doc(space: &MapSpace) -> MapSpaceDoc {
    MapSpaceDoc {
        p: space.p(),
        n: space.carrier_dim(),
        basis: space.basis().iter().map(|b| b.matrix().to_rows()).collect(),
    }
}

pub fn mapspace_from_doc(doc: &MapSpaceDoc) -> Result<MapSpace> {
    check_header(doc.p, doc.n)?;
    if doc.basis.len() > doc.n * doc.n {
        return Err(parse_err("more basis maps than the dimension of End"));
    }
    let maps = doc
        .basis
        .iter()
        .map(|rows| LinMap::from_matrix(matrix_from_rows(doc.p, doc.n, rows)?))
        .collect::<Result<Vec<_>>>()?;
    MapSpace::new(doc.p, doc.n, maps)
}

pub fn decode_mapspace(text: &str) -> Result<MapSpace> {
    mapspace_from_doc(&from_json(text)?)
}

pub fn report_doc(r: &NucleiReport) -> NucleiReportDoc {
    let o = r.orders();
    let rows = |s: &MapSpace| mapspace_doc(s).basis;
    NucleiReportDoc {
        orders: o,
        fingerprint: vec![r.p as u64, r.n as u64, o.left, o.middle, o.right, o.center],
        bases: BasesDoc {
            left: rows(&r.left),
            middle: rows(&r.middle),
            right: rows(&r.right),
            center: rows(&r.center),
        },
    }
}

/// Rebuilds a report and re-checks its invariants, including consistency
/// of the stated orders with the bases.
pub fn report_from_doc(doc: &NucleiReportDoc) -> Result<NucleiReport> {
    let [p, n, ..] = doc.fingerprint[..] else {
        return Err(parse_err("fingerprint needs at least p and n"));
    };
    let p = u32::try_from(p).map_err(|_| parse_err("p out of range"))?;
    let n = usize::try_from(n).map_err(|_| parse_err("n out of range"))?;
    check_header(p, n)?;
    let space = |basis: &Vec<MatrixRows>| {
        mapspace_from_doc(&MapSpaceDoc {
            p,
            n,
            basis: basis.clone(),
        })
    };
    let report = NucleiReport {
        p,
        n,
        left: space(&doc.bases.left)?,
        middle: space(&doc.bases.middle)?,
        right: space(&doc.bases.right)?,
        center: space(&doc.bases.center)?,
    };
    let o = report.orders();
    let expected = vec![p as u64, n as u64, o.left, o.middle, o.right, o.center];
    if o != doc.orders || doc.fingerprint != expected {
        return Err(parse_err("orders do not match the bases"));
    }
    report.verify()?;
    Ok(report)
}

pub fn decode_report(text: &str) -> Result<NucleiReport> {
    report_from_doc(&from_json(text)?)
}

/// Decodes a family description such as `{"family": "bh", "q": 3, ...}`.
pub fn decode_family_spec(text: &str) -> Result<FamilySpec> {
    from_json(text)
}

/// Parses an order such as `729`, `3^6` or `3**6`.
pub fn parse_order(text: &str) -> Result<u64> {
    let t = text.trim();
    let parse_u64 = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| parse_err(format!("invalid order {text:?}")))
    };
    let (base, exp) = match t.split_once("**").or_else(|| t.split_once('^')) {
        Some((b, e)) => (parse_u64(b)?, parse_u64(e)?),
        None => return parse_u64(t),
    };
    let exp = usize::try_from(exp).map_err(|_| parse_err("exponent too large"))?;
    fp::checked_pow(base, exp).ok_or_else(|| parse_err(format!("order {text:?} overflows")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::nuclei::nuclei_report;

    #[test]
    fn presemifield_roundtrip() {
        for s in [
            families::gtf(3, 3, 1).unwrap(),
            families::bh(3, 2, 1, None, None).unwrap(),
        ] {
            let text = encode_presemifield(&s);
            let back = decode_presemifield(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(back.label(), s.label());
            assert_eq!(encode_presemifield(&back), text);
        }
    }

    #[test]
    fn pair_carrier_has_no_aij() {
        let s = families::dickson(3, 3, 1, None).unwrap();
        let doc = presemifield_doc(&s);
        assert!(doc.aij.is_none());
        assert_eq!(presemifield_from_doc(&doc).unwrap(), s);
    }

    #[test]
    fn corrupted_constants_give_witness() {
        let s = families::gtf(3, 3, 1).unwrap();
        let mut doc = presemifield_doc(&s);
        doc.aij = None;
        // make phi_{e_0} the zero map
        for i in 0..3 {
            for k in 0..3 {
                doc.structure_constants[(i * 3) * 3 + k] = 0;
            }
        }
        match presemifield_from_doc(&doc) {
            Err(Error::ZeroDivisor { witness, enc }) => {
                assert_eq!(witness, vec![1, 0, 0]);
                assert_eq!(enc, 1);
            }
            other => panic!("expected a zero divisor, got {other:?}"),
        }
    }

    #[test]
    fn bad_documents() {
        assert_eq!(decode_presemifield("{").unwrap_err().kind(), "ParseError");
        let s = families::gtf(3, 3, 1).unwrap();
        let mut doc = presemifield_doc(&s);
        doc.aij.as_mut().unwrap()[0][0] = 1;
        assert_eq!(
            presemifield_from_doc(&doc).unwrap_err().kind(),
            "ParseError"
        );
        let mut doc = presemifield_doc(&s);
        doc.structure_constants.pop();
        assert_eq!(
            presemifield_from_doc(&doc).unwrap_err().kind(),
            "ParseError"
        );
        let mut doc = presemifield_doc(&s);
        doc.structure_constants[0] = 7;
        assert_eq!(
            presemifield_from_doc(&doc).unwrap_err().kind(),
            "ParseError"
        );
    }

    #[test]
    fn report_roundtrip() {
        let s = families::bh(3, 2, 1, None, None).unwrap();
        let r = nuclei_report(&s).unwrap();
        let doc = report_doc(&r);
        assert_eq!(doc.fingerprint, vec![3, 4, 3, 9, 3, 3]);
        let back = report_from_doc(&doc).unwrap();
        assert_eq!(back.orders(), r.orders());
        let text = to_json(&doc);
        assert_eq!(to_json(&report_doc(&decode_report(&text).unwrap())), text);
    }

    #[test]
    fn linmap_and_mapspace_roundtrip() {
        let f = LinMap::from_columns(3, &[vec![0, 1], vec![2, 0]]).unwrap();
        let text = to_json(&linmap_doc(&f));
        assert_eq!(decode_linmap(&text).unwrap(), f);
        let space = MapSpace::new(3, 2, vec![f.clone(), LinMap::identity(3, 2)]).unwrap();
        let back = decode_mapspace(&to_json(&mapspace_doc(&space))).unwrap();
        assert!(back.same_space(&space));
        assert!(decode_linmap(r#"{"p":4,"n":1,"matrix":[[1]]}"#).is_err());
    }

    #[test]
    fn family_specs() {
        let spec =
            decode_family_spec(r#"{"family":"bh","q":3,"l":3,"d":2,"beta":null,"omega":null}"#)
                .unwrap();
        assert_eq!(spec.to_string(), "bh(q=3,l=3,d=2)");
        assert!(decode_family_spec(r#"{"family":"bh","q":3}"#).is_err());
        assert!(decode_family_spec(r#"{"family":"pwblp","x":1}"#).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("3^10").unwrap(), 59049);
        assert_eq!(parse_order("3**2").unwrap(), 9);
        assert_eq!(parse_order(" 729 ").unwrap(), 729);
        assert!(parse_order("3^100").is_err());
        assert!(parse_order("x").is_err());
    }

    #[test]
    fn field_roundtrip() {
        let ctx = FieldCtx::new(3, 3, None).unwrap();
        let text = to_json(&field_doc(&ctx));
        assert_eq!(decode_field(&text).unwrap(), ctx);
        assert!(decode_field(r#"{"p":3,"n":2,"modulus":[2,0,1]}"#).is_err());
    }
}
