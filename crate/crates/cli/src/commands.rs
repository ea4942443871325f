use std::fs;
use std::io::Read;
use std::path::Path;

use serde::Serialize;

use semifield_lab::exchange::{self, FieldDoc, LinMapDoc, NucleiReportDoc, PresemifieldDoc};
use semifield_lab::isotopy::{
    brute_isotopy, distinguish_fingerprints, fingerprint, knuth_orbit_table, verify_isotopism,
    BruteOutcome, Fingerprint, OrbitTable, Verdict,
};
use semifield_lab::nuclei::{nuclei_report, oracle_nuclei, Orders};
use semifield_lab::table::{parameter_table, ParameterTable};
use semifield_lab::{Error, FamilySpec, FieldCtx, Presemifield, Sign};

use crate::args::{FamilyArgs, FieldArgs};
use crate::CliError;

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

fn load(path: &Path) -> Result<Presemifield, CliError> {
    Ok(exchange::decode_presemifield(&read_input(path)?)?)
}

#[derive(Serialize)]
pub struct FieldOut {
    field: FieldDoc,
    order: u64,
    primitive_element: u64,
    nonsquare_element: Option<u64>,
}

pub fn field(args: &FieldArgs) -> Result<FieldOut, CliError> {
    let ctx = FieldCtx::new(args.p, args.n, args.modulus.as_deref())?;
    Ok(FieldOut {
        field: exchange::field_doc(&ctx),
        order: ctx.order(),
        primitive_element: ctx.enc(&ctx.primitive_element()),
        nonsquare_element: ctx.nonsquare_element().ok().map(|x| ctx.enc(&x)),
    })
}

fn need<T: Copy>(v: Option<T>, flag: &str, tag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{tag} needs --{flag}")))
}

fn family_spec(a: &FamilyArgs) -> Result<FamilySpec, CliError> {
    if let Some(path) = &a.spec {
        return Ok(exchange::decode_family_spec(&read_input(path)?)?);
    }
    let tag = a.tag.as_deref().unwrap_or_default().to_ascii_lowercase();
    let t = tag.as_str();
    Ok(match t {
        "dickson" => FamilySpec::Dickson {
            q: need(a.q, "q", t)?,
            k: need(a.k, "k", t)?,
            sigma: need(a.sigma, "sigma", t)?,
            j: a.j,
        },
        "gtf" => FamilySpec::Gtf {
            q: need(a.q, "q", t)?,
            t: need(a.t, "t", t)?,
            n: need(a.n, "n", t)?,
        },
        "ganley" => FamilySpec::Ganley {
            r: need(a.r, "r", t)?,
        },
        "cohen-ganley" => FamilySpec::CohenGanley {
            s: need(a.s, "s", t)?,
            j: a.j,
        },
        "cmdy" => {
            let sign = match need(a.sign.as_deref(), "sign", t)? {
                "plus" | "+" => Sign::Plus,
                "minus" | "-" => Sign::Minus,
                other => return Err(CliError::Usage(format!("unknown sign {other:?}"))),
            };
            FamilySpec::Cmdy {
                e: need(a.e, "e", t)?,
                sign,
            }
        }
        "pwblp" => FamilySpec::Pwblp {},
        "chk" => FamilySpec::Chk {},
        "zkw" => FamilySpec::Zkw {
            q: need(a.q, "q", t)?,
            h: need(a.h, "h", t)?,
            n: need(a.n, "n", t)?,
            u: a.u,
        },
        "bierbrauer" => FamilySpec::Bierbrauer {
            q: need(a.q, "q", t)?,
            m: need(a.m, "m", t)?,
            n: need(a.n, "n", t)?,
            u: a.u,
        },
        "bh" => FamilySpec::Bh {
            q: need(a.q, "q", t)?,
            l: need(a.l, "l", t)?,
            d: need(a.d, "d", t)?,
            beta: a.beta,
            omega: a.omega,
        },
        "lmptb" => FamilySpec::Lmptb {
            q: need(a.q, "q", t)?,
            l: need(a.l, "l", t)?,
        },
        "zp" => FamilySpec::Zp {
            q: need(a.q, "q", t)?,
            l: need(a.l, "l", t)?,
            n: need(a.n, "n", t)?,
            t: need(a.t, "t", t)?,
            alpha: a.alpha,
        },
        other => return Err(CliError::Usage(format!("unknown family tag {other:?}"))),
    })
}

#[derive(Serialize)]
pub struct FamilyOut {
    spec: FamilySpec,
    label: String,
    order: u64,
    /// Set when the document went to a file.
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    presemifield: Option<PresemifieldDoc>,
}

pub fn family_build(a: &FamilyArgs) -> Result<FamilyOut, CliError> {
    let spec = family_spec(a)?;
    let s = spec.build()?;
    let doc = exchange::presemifield_doc(&s);
    let (out, presemifield) = match &a.out {
        Some(path) => {
            fs::write(path, exchange::to_json(&doc) + "\n")
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            (Some(path.display().to_string()), None)
        }
        None => (None, Some(doc)),
    };
    Ok(FamilyOut {
        spec,
        label: s.label().to_string(),
        order: s.order(),
        out,
        presemifield,
    })
}

#[derive(Serialize)]
pub struct ValidOut {
    valid: bool,
    label: String,
    p: u32,
    n: usize,
    order: u64,
    commutative: bool,
}

/// Failures carry the witness, if any, next to the error.
pub fn validate(path: &Path) -> Result<ValidOut, CliError> {
    let s = load(path)?;
    let dim = s.spread_set().space().dim();
    if dim != s.n() {
        return Err(Error::DimensionMismatch(format!("spread set has dimension {dim}")).into());
    }
    Ok(ValidOut {
        valid: true,
        label: s.label().to_string(),
        p: s.p(),
        n: s.n(),
        order: s.order(),
        commutative: s.is_commutative(),
    })
}

#[derive(Serialize)]
pub struct OracleOut {
    e: u64,
    identity: Vec<u32>,
    orders: Orders,
}

#[derive(Serialize)]
pub struct NucleiOut {
    label: String,
    #[serde(flatten)]
    report: NucleiReportDoc,
    oracle: Option<OracleOut>,
    oracle_match: Option<bool>,
}

pub fn nuclei(path: &Path, with_oracle: bool, e: u64) -> Result<NucleiOut, CliError> {
    let s = load(path)?;
    let report = nuclei_report(&s)?;
    let oracle = if with_oracle {
        if e == 0 || e >= s.order() {
            return Err(CliError::Usage(format!("--e must lie in 1..{}", s.order())));
        }
        let sf = s.to_semifield(&s.carrier().decode(e))?;
        Some(OracleOut {
            e,
            orders: oracle_nuclei(&sf.semifield)?.orders(),
            identity: sf.identity,
        })
    } else {
        None
    };
    Ok(NucleiOut {
        label: s.label().to_string(),
        oracle_match: oracle.as_ref().map(|o| o.orders == report.orders()),
        report: exchange::report_doc(&report),
        oracle,
    })
}

#[derive(Serialize)]
pub struct OrbitOut {
    label: String,
    #[serde(flatten)]
    table: OrbitTable,
}

pub fn knuth_orbit(path: &Path) -> Result<OrbitOut, CliError> {
    let s = load(path)?;
    Ok(OrbitOut {
        label: s.label().to_string(),
        table: knuth_orbit_table(&s)?,
    })
}

#[derive(Serialize)]
pub struct Side {
    label: String,
    fingerprint: Fingerprint,
}

#[derive(Serialize)]
pub struct TripleDoc {
    g1: LinMapDoc,
    g2: LinMapDoc,
    g3: LinMapDoc,
}

#[derive(Serialize)]
pub struct BruteOut {
    outcome: &'static str,
    examined: u64,
    semilinear_q: Option<u64>,
    triple: Option<TripleDoc>,
    certified: Option<bool>,
}

#[derive(Serialize)]
pub struct CompareOut {
    a: Side,
    b: Side,
    verdict: Verdict,
    brute: Option<BruteOut>,
}

pub fn isotopy_compare(
    a: &Path,
    b: &Path,
    brute: bool,
    budget: u64,
) -> Result<CompareOut, CliError> {
    let (s1, s2) = (load(a)?, load(b)?);
    let (f1, f2) = rayon::join(|| fingerprint(&s1), || fingerprint(&s2));
    let (f1, f2) = (f1?, f2?);
    let verdict = distinguish_fingerprints(&f1, &f2);
    let brute = if !brute {
        None
    } else if (s1.p(), s1.n()) != (s2.p(), s2.n()) {
        Some(BruteOut {
            outcome: "not_isotopic",
            examined: 0,
            semilinear_q: None,
            triple: None,
            certified: None,
        })
    } else {
        let report = brute_isotopy(&s1, &s2, budget)?;
        let (outcome, triple, certified) = match &report.outcome {
            BruteOutcome::Isotopic(t) => (
                "isotopic",
                Some(TripleDoc {
                    g1: exchange::linmap_doc(&t.g1),
                    g2: exchange::linmap_doc(&t.g2),
                    g3: exchange::linmap_doc(&t.g3),
                }),
                Some(verify_isotopism(&s1, &s2, t)?),
            ),
            BruteOutcome::NotIsotopic => ("not_isotopic", None, None),
            BruteOutcome::BudgetExceeded => ("budget_exceeded", None, None),
        };
        Some(BruteOut {
            outcome,
            examined: report.examined,
            semilinear_q: report.semilinear_q,
            triple,
            certified,
        })
    };
    Ok(CompareOut {
        a: Side {
            label: s1.label().to_string(),
            fingerprint: f1,
        },
        b: Side {
            label: s2.label().to_string(),
            fingerprint: f2,
        },
        verdict,
        brute,
    })
}

pub fn table(family: Option<&str>, cap: &str) -> Result<ParameterTable, CliError> {
    let cap = exchange::parse_order(cap)?;
    Ok(parameter_table(family, cap))
}
