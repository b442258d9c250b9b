//! Randomised property tests for the algebraic core and the exact geometry.

use legdga::curve_geometry::{analyze, MarkerPos, PlanarCurve};
use legdga::dga_core::{Element, Expo, Field, LaurentPoly, MonomialWord, Scalar};
use legdga::geom::{Pt, Q};
use legdga::knot_dga::build_knot_dga;
use legdga::prequant::{cover_index_oracle, cover_lattice};
use legdga::torus_dga::{build_spun_dga, SpinMode};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

// --- Laurent polynomial arbitraries -------------------------------------

const P: u64 = 5;

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-3i64..=3, -3i64..=3), 0u64..P), 0..5).prop_map(|terms| {
        let field = Field::Fp(P);
        let mut p = LaurentPoly::zero(2);
        for ((a, b), c) in terms {
            p = p.add(
                &LaurentPoly::monomial(vec![a, b], Scalar::Mod(c), &field),
                &field,
            );
        }
        p
    })
}

fn arb_expo() -> impl Strategy<Value = Expo> {
    (-2i64..=2, -2i64..=2).prop_map(|(a, b)| vec![a, b])
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        let f = Field::Fp(P);
        prop_assert_eq!(a.add(&b, &f), b.add(&a, &f));
        prop_assert_eq!(a.add(&b, &f).add(&c, &f), a.add(&b.add(&c, &f), &f));
        prop_assert_eq!(a.mul(&b, &f), b.mul(&a, &f));
        prop_assert_eq!(a.mul(&b, &f).mul(&c, &f), a.mul(&b.mul(&c, &f), &f));
        prop_assert_eq!(
            a.mul(&b.add(&c, &f), &f),
            a.mul(&b, &f).add(&a.mul(&c, &f), &f)
        );
        prop_assert!(a.sub(&a, &f).is_zero());
        prop_assert_eq!(a.mul(&LaurentPoly::one(2, &f), &f), a.clone());
    }

    #[test]
    fn canonical_form_ignores_monomial_units(a in arb_poly(), e in arb_expo(), c in 1u64..P) {
        let f = Field::Fp(P);
        let unit = LaurentPoly::monomial(e, Scalar::Mod(c), &f);
        let scaled = a.mul(&unit, &f);
        prop_assert!(a.eq_up_to_unit(&scaled, &f).unwrap());
        if !a.is_zero() {
            let canon = a.canonical_up_to_unit(&f).unwrap();
            prop_assert_eq!(
                canon.canonical_up_to_unit(&f).unwrap(),
                canon.clone()
            );
            // The canonical form has exponents shifted to zero minimum and a
            // unit lexicographically lowest coefficient.
            for i in 0..2 {
                prop_assert_eq!(canon.terms.keys().map(|k| k[i]).min().unwrap(), 0);
            }
            prop_assert_eq!(canon.terms.values().next().unwrap(), &f.one());
        }
    }

    #[test]
    fn substitution_is_a_ring_map(a in arb_poly(), b in arb_poly(), e0 in arb_expo(), e1 in arb_expo()) {
        let f = Field::Fp(P);
        let subst = [(f.one(), e0), (f.one(), e1)];
        let lhs = a.mul(&b, &f).substitute_monomials(&subst, 2, &f);
        let rhs = a
            .substitute_monomials(&subst, 2, &f)
            .mul(&b.substitute_monomials(&subst, 2, &f), &f);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), x in 1u64..P, y in 1u64..P) {
        let f = Field::Fp(P);
        let point = vec![Scalar::Mod(x), Scalar::Mod(y)];
        let lhs = a.mul(&b, &f).eval(&point, &f).unwrap();
        let rhs = f.mul(&a.eval(&point, &f).unwrap(), &b.eval(&point, &f).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

// --- Free algebra elements -----------------------------------------------

fn arb_element() -> impl Strategy<Value = Element> {
    prop::collection::vec(
        (
            prop::collection::vec(0usize..3, 0..3),
            (-2i64..=2, -2i64..=2),
            1u64..P,
        ),
        0..4,
    )
    .prop_map(|words| {
        let field = Field::Fp(P);
        let mut e = Element::zero(2);
        for (gens, (a, b), c) in words {
            let mut w = MonomialWord::unit(2);
            w.monos[0] = vec![a, b];
            for g in gens {
                w = w.concat(&MonomialWord::generator(g, 2));
            }
            e.insert_term(w, Scalar::Mod(c), &field);
        }
        e
    })
}

proptest! {
    #[test]
    fn free_algebra_axioms(a in arb_element(), b in arb_element(), c in arb_element()) {
        let f = Field::Fp(P);
        prop_assert_eq!(a.add(&b, &f), b.add(&a, &f));
        prop_assert_eq!(a.mul(&b, &f).mul(&c, &f), a.mul(&b.mul(&c, &f), &f));
        prop_assert_eq!(
            a.mul(&b.add(&c, &f), &f),
            a.mul(&b, &f).add(&a.mul(&c, &f), &f)
        );
        prop_assert!(a.sub(&a, &f).is_zero());
        prop_assert_eq!(a.mul(&Element::one(2, &f), &f), a.clone());
        prop_assert_eq!(Element::one(2, &f).mul(&a, &f), a.clone());
    }

    #[test]
    fn conjugation_is_mu_sandwich(a in arb_element()) {
        let f = Field::Fp(P);
        let mu: Expo = vec![1, 0];
        let mu_inv: Expo = vec![-1, 0];
        let sandwich = a.mono_mul_left(&mu, &f).mono_mul_right(&mu_inv, &f);
        prop_assert_eq!(a.conjugate_by_var(0, &f), sandwich);
    }
}

// --- Exact curve geometry -------------------------------------------------

/// Holonomy of the standard primitive along one edge; the total over a closed
/// polyline is affine in any single vertex.
fn edge_holonomy(a: &Pt, b: &Pt) -> Q {
    (&a.x + &b.x) * (&b.y - &a.y) / qi(2)
}

fn total_holonomy(vertices: &[Pt]) -> Q {
    let n = vertices.len();
    (0..n)
        .map(|i| edge_holonomy(&vertices[i], &vertices[(i + 1) % n]))
        .sum()
}

fn exact_curve(raw: &[(i64, i64)], slide: usize, dir: (i64, i64)) -> Option<PlanarCurve> {
    let mut vertices: Vec<Pt> = raw.iter().map(|&(x, y)| Pt::from_ints(x, y)).collect();
    let d = Pt::from_ints(dir.0, dir.1);
    let a0 = total_holonomy(&vertices);
    vertices[slide] = vertices[slide].add(&d);
    let a1 = total_holonomy(&vertices);
    if a0 == a1 {
        return None;
    }
    let t = &a0 / (&a0 - &a1);
    if !t.is_positive() || t > qi(2) {
        return None;
    }
    vertices[slide] = vertices[slide].sub(&d).add(&d.scale(&t));
    Some(PlanarCurve {
        name: "random".into(),
        vertices,
        basepoint: Some(MarkerPos { edge: 0, t: q(1, 2) }),
        cone_markers: Vec::new(),
        exact: true,
        symmetric_component: false,
    })
}

fn arb_raw_curve() -> impl Strategy<Value = (Vec<(i64, i64)>, usize, (i64, i64))> {
    (
        prop::collection::vec((2i64..15, -7i64..8), 5..9),
        0usize..5,
        (-3i64..=3, -3i64..=3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_diagrams_have_flat_differentials((raw, slide, dir) in arb_raw_curve()) {
        let Some(curve) = exact_curve(&raw, slide % raw.len(), dir) else { return Ok(()) };
        let Ok(diagram) = analyze(&curve) else { return Ok(()) };
        prop_assert!(diagram.enclosed_area.is_zero());
        // Euler count of the cell decomposition.
        prop_assert_eq!(
            diagram.faces.len() as i64 - diagram.arcs.len() as i64
                + diagram.crossings.len() as i64,
            2
        );
        if let Ok(dga) = build_knot_dga(&diagram, Field::Rational) {
            dga.verify().unwrap();
        }
        if diagram.origin_face == diagram.unbounded_face {
            if let Ok(dga) = build_spun_dga(&diagram, Field::Rational, SpinMode::Plain) {
                dga.verify().unwrap();
            }
        }
    }

    #[test]
    fn subdividing_an_edge_preserves_the_diagram((raw, slide, dir) in arb_raw_curve(), cut in 0usize..16) {
        let Some(curve) = exact_curve(&raw, slide % raw.len(), dir) else { return Ok(()) };
        let Ok(diagram) = analyze(&curve) else { return Ok(()) };
        // Insert a midpoint on an edge away from the basepoint edge.
        let n = curve.vertices.len();
        let edge = 1 + cut % (n - 1);
        let mid = curve.vertices[edge].lerp(&curve.vertices[(edge + 1) % n], &q(1, 2));
        let mut vertices = curve.vertices.clone();
        vertices.insert(edge + 1, mid);
        let refined = PlanarCurve { vertices, ..curve.clone() };
        let Ok(rediagram) = analyze(&refined) else { return Ok(()) };
        prop_assert_eq!(rediagram.crossings.len(), diagram.crossings.len());
        prop_assert_eq!(rediagram.tangent_winding, diagram.tangent_winding);
        prop_assert_eq!(&rediagram.enclosed_area, &diagram.enclosed_area);
        let mut areas: Vec<Q> = diagram.faces.iter().map(|f| f.area()).collect();
        let mut reareas: Vec<Q> = rediagram.faces.iter().map(|f| f.area()).collect();
        areas.sort();
        reareas.sort();
        prop_assert_eq!(areas, reareas);
    }

    #[test]
    fn closed_form_face_areas_match_quadrature((raw, slide, dir) in arb_raw_curve()) {
        let Some(curve) = exact_curve(&raw, slide % raw.len(), dir) else { return Ok(()) };
        let Ok(diagram) = analyze(&curve) else { return Ok(()) };
        let Ok(exact) = legdga::curve_geometry::lefschetz_face_areas(&diagram) else {
            return Ok(());
        };
        let oracle = legdga::curve_geometry::lefschetz_face_areas_oracle(&diagram, 1e-9);
        for (a, b) in exact.iter().zip(&oracle) {
            prop_assert!((a - b).abs() < 2e-6, "closed form {} vs quadrature {}", a, b);
        }
    }

    #[test]
    fn cover_lattice_index_matches_enumeration(
        residues in prop::collection::vec(0i64..8, 1..4),
        k in 2u64..7,
    ) {
        let mut g = k as i64;
        for &r in &residues {
            g = num_integer::gcd(g, r);
        }
        prop_assume!(g == 1);
        let data = cover_lattice(&residues, k).unwrap();
        prop_assert_eq!(data.index, cover_index_oracle(&residues, k));
        prop_assert_eq!(data.index, k);
    }
}
