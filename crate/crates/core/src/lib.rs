//! Exact computations with finite presemifields.
//!
//! The crate builds presemifields over GF(p^n) or GF(q^k) x GF(q^k),
//! derives their spread sets, computes left, middle and right nuclei and the
//! center as solution spaces of linear systems over F_p, walks the Knuth
//! chain (dual and transpose), and compares presemifields through their
//! isotopy-invariant parameters.
//!
//! ```
//! use semifield_lab::{families, fingerprint, nuclei_report};
//!
//! let s = families::bh(3, 3, 2, None, None)?;
//! let report = nuclei_report(&s)?;
//! assert_eq!(report.orders().middle, 9);
//! // transposing swaps the middle and right nuclei
//! let print = fingerprint(&s.transpose())?;
//! assert_eq!(print.orders.right, 9);
//! # Ok::<(), semifield_lab::Error>(())
//! ```

pub mod error;
pub mod exchange;
pub mod families;
pub mod fp;
pub mod gf;
pub mod isotopy;
pub mod linalg;
pub mod linmap;
pub mod mult;
pub mod nuclei;
pub mod presemifield;
pub mod table;

pub use error::{Error, Result};
pub use families::{FamilySpec, Sign};
pub use gf::{FElem, FieldCtx};
pub use isotopy::{
    brute_isotopy, distinguish, fingerprint, knuth_orbit_table, verify_isotopism, BruteOutcome,
    Fingerprint, IsotopismTriple, Verdict,
};
pub use linalg::FpMatrix;
pub use linmap::{BilinearForm, LinMap, MapSpace};
pub use mult::{BiPoly, Expr, MultSpec};
pub use nuclei::{nuclei_report, oracle_nuclei, NucleiReport, Orders, Side};
pub use presemifield::{Carrier, CarrierKind, Presemifield, SpreadSet};
