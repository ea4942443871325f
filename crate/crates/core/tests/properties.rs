//! Property tests for the algebraic invariants of each module.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use semifield_lab::families;
use semifield_lab::isotopy::{
    fingerprint, isotope, verify_isotopism, verify_on_basis, verify_on_spread_sets, IsotopismTriple,
};
use semifield_lab::nuclei::{
    center, left_nucleus, middle_nucleus, nuclei_report, right_nucleus, Side,
};
use semifield_lab::{
    BiPoly, BilinearForm, Carrier, FElem, FieldCtx, LinMap, MapSpace, MultSpec, Presemifield,
};

use common::{ctx, decode, mul_sc, small_corpus};

const FIELDS: &[(u32, usize)] = &[
    (2, 3),
    (2, 5),
    (3, 2),
    (3, 3),
    (3, 4),
    (5, 2),
    (5, 3),
    (7, 2),
    (11, 1),
];

fn field_strategy() -> impl Strategy<Value = Arc<FieldCtx>> {
    prop::sample::select(FIELDS).prop_map(|(p, n)| ctx(p, n))
}

fn element(c: &FieldCtx, v: u64) -> FElem {
    c.decode(v % c.order()).unwrap()
}

/// Polynomial product modulo the field's modulus, coefficient lists only.
fn oracle_mul(c: &FieldCtx, x: &[u32], y: &[u32]) -> Vec<u32> {
    let (p, n) = (c.p() as u64, c.n());
    let m = c.modulus();
    let mut prod = vec![0u64; 2 * n - 1];
    for i in 0..n {
        for j in 0..n {
            prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
        }
    }
    for deg in (n..prod.len()).rev() {
        let lead = prod[deg];
        if lead == 0 {
            continue;
        }
        for (k, &mk) in m.iter().enumerate().take(n + 1) {
            let idx = deg - n + k;
            prod[idx] = (prod[idx] + (p - lead) * mk as u64) % p;
        }
    }
    prod.truncate(n);
    prod.into_iter().map(|v| v as u32).collect()
}

fn random_map(p: u32, n: usize, entries: &[u32]) -> LinMap {
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|j| (0..n).map(|i| entries[j * n + i] % p).collect())
        .collect();
    LinMap::from_columns(p, &cols).unwrap()
}

fn corpus_member() -> impl Strategy<Value = Presemifield> {
    let corpus = small_corpus();
    (0..corpus.len()).prop_map(move |i| corpus[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_mul_matches_polynomial_oracle(c in field_strategy(), a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (element(&c, a), element(&c, b));
        let got = c.coords(&c.mul(&x, &y));
        prop_assert_eq!(got, oracle_mul(&c, &c.coords(&x), &c.coords(&y)));
    }

    #[test]
    fn trace_is_additive_and_frobenius_stable(c in field_strategy(), a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (element(&c, a), element(&c, b));
        prop_assert_eq!(c.trace(&c.add(&x, &y)), c.add(&c.trace(&x), &c.trace(&y)));
        prop_assert_eq!(c.trace(&c.frobenius(&x, 1)), c.trace(&x));
    }

    #[test]
    fn encoding_round_trips(c in field_strategy(), v in any::<u64>()) {
        let v = v % c.order();
        let x = c.decode(v).unwrap();
        prop_assert_eq!(c.enc(&x), v);
        prop_assert_eq!(c.coords(&x), decode(c.p(), c.n(), v));
        prop_assert!(c.decode(c.order()).is_err());
    }

    #[test]
    fn adjoint_is_an_involutive_antiautomorphism(
        c in field_strategy(),
        e1 in prop::collection::vec(any::<u32>(), 25),
        e2 in prop::collection::vec(any::<u32>(), 25),
    ) {
        let (p, n) = (c.p(), c.n());
        let form = BilinearForm::trace_form(&c);
        let f = random_map(p, n, &e1);
        let g = random_map(p, n, &e2);
        prop_assert_eq!(f.adjoint(&form).adjoint(&form), f.clone());
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.adjoint(&form), g.adjoint(&form).compose(&f.adjoint(&form)).unwrap());
        prop_assert_eq!(f.rank(), f.adjoint(&form).rank());
        prop_assert_eq!(f.is_invertible(), f.adjoint(&form).is_invertible());
        // defining identity <x, f y> = <adj(f) x, y> on basis vectors
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (decode(p, n, (p as u64).pow(i as u32)), decode(p, n, (p as u64).pow(j as u32)));
                prop_assert_eq!(form.eval(&x, &f.apply(&y)), form.eval(&f.adjoint(&form).apply(&x), &y));
            }
        }
    }

    #[test]
    fn qpoly_round_trip(c in field_strategy(), coeffs in prop::collection::vec(any::<u64>(), 5)) {
        let coeffs: Vec<FElem> = (0..c.n()).map(|i| element(&c, coeffs[i])).collect();
        let f = LinMap::from_qpoly(&c, &coeffs).unwrap();
        prop_assert_eq!(f.to_qpoly(&c).unwrap(), coeffs.clone());
        // the matrix really evaluates the polynomial
        let x = element(&c, 7);
        let direct = coeffs.iter().enumerate().fold(c.zero(), |acc, (i, b)| c.add(&acc, &c.mul(b, &c.frobenius(&x, i))));
        prop_assert_eq!(f.apply(&c.coords(&x)), c.coords(&direct));
    }

    #[test]
    fn span_does_not_depend_on_generator_order(
        entries in prop::collection::vec(any::<u32>(), 4 * 9),
        shift in 0usize..4,
    ) {
        let maps: Vec<LinMap> = entries.chunks(9).map(|e| random_map(3, 3, e)).collect();
        let mut rotated = maps.clone();
        rotated.rotate_left(shift);
        let a = MapSpace::span(3, 3, &maps);
        let b = MapSpace::span(3, 3, &rotated);
        prop_assert!(a.same_space(&b) && b.same_space(&a));
        let again = MapSpace::span(3, 3, &maps);
        prop_assert_eq!(a.basis(), again.basis());
    }

    #[test]
    fn nullspace_vectors_are_annihilated(entries in prop::collection::vec(0u32..5, 12)) {
        let m = semifield_lab::FpMatrix::from_data(5, 3, 4, entries);
        let ns = m.nullspace();
        prop_assert_eq!(ns.len(), 4 - m.rank());
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn validation_matches_exhaustive_search(coeffs in prop::collection::vec(0u64..27, 9)) {
        let c = ctx(3, 3);
        let f = BiPoly::from_coefficients(&c, coeffs.iter().map(|&v| c.decode(v).unwrap()).collect()).unwrap();
        let built = Presemifield::build(Carrier::field(c.clone()), MultSpec::Coefficients(f.clone()), "random");
        // sum a_ij x^(3^i) y^(3^j), evaluated term by term
        let eval = |x: &FElem, y: &FElem| {
            let mut acc = c.zero();
            for i in 0..3 {
                for j in 0..3 {
                    let t = c.mul(&f.coefficient(i, j), &c.mul(&c.frobenius(x, i), &c.frobenius(y, j)));
                    acc = c.add(&acc, &t);
                }
            }
            acc
        };
        let has_zero_divisor = (1..27).any(|a| (1..27).any(|b| eval(&c.decode(a).unwrap(), &c.decode(b).unwrap()).is_zero()));
        prop_assert_eq!(built.is_ok(), !has_zero_divisor);
    }

    #[test]
    fn knuth_operations_are_involutions(s in corpus_member()) {
        prop_assert_eq!(s.dual().dual(), s.clone());
        prop_assert_eq!(s.transpose().transpose(), s.clone());
        prop_assert!(s.transpose().validate().is_ok());
        prop_assert!(s.dual().validate().is_ok());
    }

    #[test]
    fn dual_spread_set_is_left_multiplication(s in corpus_member(), v in any::<u64>()) {
        let x = s.carrier().decode(v % s.order());
        prop_assert_eq!(s.dual().right_map(&x), s.left_map(&x));
    }

    #[test]
    fn semifieldization_has_identity(s in corpus_member(), v in any::<u64>()) {
        let e = s.carrier().decode(1 + v % (s.order() - 1));
        let sf = s.to_semifield(&e).unwrap();
        let c = sf.semifield.spread_set();
        prop_assert!(c.contains(&LinMap::identity(s.p(), s.n())));
        prop_assert_eq!(sf.semifield.identity_element(), Some(sf.identity.clone()));
        // isotopy invariance of the parameters
        prop_assert_eq!(
            fingerprint(&s).unwrap().parameters(),
            fingerprint(&sf.semifield).unwrap().parameters()
        );
    }

    #[test]
    fn nuclei_are_fields_closed_under_composition(s in corpus_member()) {
        let r = nuclei_report(&s).unwrap();
        for (name, space) in r.named_spaces() {
            prop_assert!(space.all_nonzero_invertible(), "{}", name);
            for a in space.basis() {
                for b in space.basis() {
                    prop_assert!(space.contains(&a.compose(b).unwrap()), "{}", name);
                }
            }
            prop_assert_eq!(s.n() % space.dim(), 0);
        }
    }

    #[test]
    fn center_does_not_depend_on_omega(s in corpus_member(), picks in prop::collection::vec(any::<u64>(), 5)) {
        let reference = center(&s, None, Side::Right).unwrap().order();
        for v in picks {
            let y = s.carrier().decode(1 + v % (s.order() - 1));
            let omega = s.right_map(&y);
            prop_assert_eq!(center(&s, Some(&omega), Side::Right).unwrap().order(), reference);
            prop_assert_eq!(center(&s, Some(&omega), Side::Middle).unwrap().order(), reference);
        }
    }

    #[test]
    fn chain_nuclei_as_map_spaces(s in corpus_member()) {
        let form = s.carrier().form();
        let c = s.spread_set();
        let t = s.transpose();
        let d = s.dual();
        let nr = right_nucleus(&c);
        prop_assert!(nr.same_space(&left_nucleus(&d)));
        prop_assert!(nr.same_space(&middle_nucleus(&t.spread_set()).adjoint_image(form)));
        let r = nuclei_report(&s).unwrap().orders();
        prop_assert_eq!(r.middle, nuclei_report(&d).unwrap().orders().middle);
        prop_assert_eq!(r.left, nuclei_report(&t).unwrap().orders().left);
    }

    #[test]
    fn verification_routes_agree_and_transport(
        s in corpus_member(),
        entries in prop::collection::vec(any::<u32>(), 3 * 25),
    ) {
        let (p, n) = (s.p(), s.n());
        let maps: Vec<LinMap> = entries.chunks(25).map(|e| random_map(p, n, e)).collect();
        prop_assume!(maps.iter().all(LinMap::is_invertible));
        let t = IsotopismTriple { g1: maps[0].clone(), g2: maps[1].clone(), g3: maps[2].clone() };
        let s2 = isotope(&s, &t, "image").unwrap();
        prop_assert!(verify_on_basis(&s, &s2, &t).unwrap());
        prop_assert!(verify_on_spread_sets(&s, &s2, &t).unwrap());
        prop_assert!(verify_isotopism(&s.dual(), &s2.dual(), &t.dual()).unwrap());
        let form = s.carrier().form();
        let tt = t.transpose(form, form).unwrap();
        prop_assert!(verify_isotopism(&s.transpose(), &s2.transpose(), &tt).unwrap());
        let (r1, r2) = (nuclei_report(&s).unwrap(), nuclei_report(&s2).unwrap());
        prop_assert!(r1.right.conjugate(&t.g3).unwrap().same_space(&r2.right));
        prop_assert!(r1.middle.conjugate(&t.g1).unwrap().same_space(&r2.middle));
        prop_assert!(r1.left.conjugate(&t.g3).unwrap().same_space(&r2.left));
        // the same triple against an unrelated target: both routes say no
        let other = IsotopismTriple { g1: maps[1].clone(), g2: maps[0].clone(), g3: maps[2].clone() };
        prop_assert_eq!(
            verify_on_basis(&s, &s2, &other).unwrap(),
            verify_on_spread_sets(&s, &s2, &other).unwrap()
        );
    }

    #[test]
    fn semilinear_multiplication_puts_fq_in_middle_nucleus(c_enc in 1u64..81) {
        // F(x, y) = x^3 y + c x^27 y^9 on GF(81) satisfies F(lx, y) = F(x, l^3 y)
        // for l in F_9
        let k = ctx(3, 4);
        let cst = k.decode(c_enc).unwrap();
        let mut f = BiPoly::monomial(&k, 1, 0);
        f = f + BiPoly::monomial(&k, 3, 2).times(&cst);
        let s = Presemifield::build(Carrier::field(k.clone()), MultSpec::Coefficients(f.clone()), "semilinear");
        prop_assume!(s.is_ok());
        let s = s.unwrap();
        let gen = k.subfield_generator(2).unwrap();
        for l in (0..9).map(|e| k.pow(&gen, e)) {
            for i in 0..4 {
                for j in 0..4 {
                    let (x, y) = (k.basis(i), k.basis(j));
                    prop_assert_eq!(f.eval(&k.mul(&l, &x), &y), f.eval(&x, &k.mul(&k.frobenius(&l, 1), &y)));
                }
            }
        }
        let t = LinMap::scalar_map(&k, &gen);
        prop_assert!(middle_nucleus(&s.spread_set()).contains(&t));
    }
}

#[test]
fn trace_form_is_nondegenerate() {
    for &(p, n) in FIELDS {
        let c = ctx(p, n);
        for x in c.elements().skip(1) {
            assert!((0..n).any(|i| c.trace_fp(&c.mul(&x, &c.basis(i))) != 0));
        }
    }
}

#[test]
fn primitive_element_has_full_order() {
    for &(p, n) in FIELDS {
        let c = ctx(p, n);
        let g = c.primitive_element();
        let mut x = g;
        let mut order = 1u64;
        while x != c.one() {
            x = c.mul(&x, &g);
            order += 1;
        }
        assert_eq!(order, c.order() - 1, "GF({p}^{n})");
    }
}

fn small_family_members() -> Vec<Presemifield> {
    use families::*;
    vec![
        gtf(3, 3, 1).unwrap(),
        zkw(3, 1, 2, None).unwrap(),
        cmdy(5, Sign::Plus).unwrap(),
        cmdy(5, Sign::Minus).unwrap(),
        bh(3, 2, 1, None, None).unwrap(),
        bh(3, 3, 2, None, None).unwrap(),
        dickson(3, 3, 1, None).unwrap(),
        ganley(3).unwrap(),
        cohen_ganley(3, None).unwrap(),
        zp(3, 3, 1, 0, None).unwrap(),
        zp(3, 3, 1, 1, None).unwrap(),
        lmptb(3, 3).unwrap(),
    ]
}

/// Each constructor output has no zero divisors by exhaustive search over
/// all products, and the commutative formulas are self-dual.
#[test]
fn family_members_are_presemifields() {
    for s in small_family_members() {
        let (p, n) = (s.p(), s.n());
        let elems: Vec<Vec<u32>> = (1..s.order()).map(|v| decode(p, n, v)).collect();
        for y in &elems {
            assert!(
                elems
                    .iter()
                    .all(|x| mul_sc(&s, x, y).iter().any(|&c| c != 0)),
                "{} has a zero divisor",
                s.label()
            );
        }
        assert!(s.is_commutative(), "{}", s.label());
        assert_eq!(s.dual(), s, "{}", s.label());
    }
}

/// `t_l` for a generator of F_q lies in every nucleus when the
/// multiplication is a q-polynomial in both variables.
#[test]
fn fq_lies_in_all_nuclei_of_q_polynomial_families() {
    let members = [
        (families::zkw(9, 1, 2, None).unwrap(), 2),
        (families::gtf(9, 3, 1).unwrap(), 2),
        (families::bh(9, 2, 1, None, None).unwrap(), 2),
        (families::bierbrauer(5, 1, 2, None).unwrap(), 1),
    ];
    for (s, e) in members {
        let k = s.carrier().field_ctx().clone();
        let gen = k.subfield_generator(e).unwrap();
        let t = LinMap::scalar_map(&k, &gen);
        let r = nuclei_report(&s).unwrap();
        for (name, space) in r.named_spaces() {
            assert!(space.contains(&t), "{} {name}", s.label());
        }
    }
}
