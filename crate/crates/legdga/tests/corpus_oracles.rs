//! Frozen oracle values for the bundled curve corpus, cross-checked against
//! independent hand computations.

use std::path::PathBuf;

use legdga::curve_geometry::{analyze, load_curve, quotient_symmetric, PlanarCurve};
use legdga::dga_core::{
    acyclicity_test, augmentation_ideal, augmentation_polynomial, bilinearised_lch,
    bilinearised_rank_oracle, Augmentation, Dga, Field, LaurentPoly,
};
use legdga::knot_dga::build_knot_dga;
use legdga::torus_dga::{build_spun_dga, SpinMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

type Q = BigRational;

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn corpus(name: &str) -> PlanarCurve {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name);
    load_curve(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn renders(dga: &Dga) -> Vec<String> {
    let labels: Vec<String> = dga.generators.iter().map(|g| g.label.clone()).collect();
    dga.generators
        .iter()
        .zip(&dga.differential)
        .map(|(g, d)| format!("d {} = {}", g.label, d.render(&labels, &dga.vars, &dga.field)))
        .collect()
}

fn symmetric_dga(cover: &str, field: Field) -> Dga {
    let (quotient, _) = quotient_symmetric(&corpus(cover)).unwrap();
    let diagram = analyze(&quotient).unwrap();
    build_spun_dga(&diagram, field, SpinMode::Symmetric).unwrap()
}

#[test]
fn one_crossing_quotient_diagram() {
    let curve = corpus("gamma_cl.json");
    let diagram = analyze(&curve).unwrap();
    assert_eq!(diagram.crossings.len(), 1);
    assert_eq!(diagram.crossings[0].point.x, qi(7));
    assert!(diagram.crossings[0].point.y.is_zero());
    assert_eq!(diagram.tangent_winding, 0);
    assert!(diagram.enclosed_area.is_zero());
    let mut areas: Vec<Q> = diagram.faces.iter().map(|f| f.area()).collect();
    areas.sort();
    assert_eq!(areas, [qi(-120), qi(60), qi(60)]);
    // Euler count for the one-crossing diagram: 3 faces - 2 arcs + 1 crossing.
    assert_eq!(diagram.faces.len(), 3);
    assert_eq!(diagram.arcs.len(), 2);
}

#[test]
fn one_crossing_quotient_dga_over_three_fields() {
    for (field, da, da_hat) in [
        (Field::F2, "d a = 1 + lambda + mu*lambda", "d a^ = a + mu*a*mu^-1"),
        (
            Field::Fp(5),
            "d a = 1 + lambda + mu*lambda",
            "d a^ = a + 4*mu*a*mu^-1",
        ),
        (
            Field::Rational,
            "d a = 1 + lambda + mu*lambda",
            "d a^ = a + -1*mu*a*mu^-1",
        ),
    ] {
        let dga = symmetric_dga("gamma_cl_tilde.json", field);
        assert_eq!(renders(&dga), [da, da_hat]);
        dga.verify().unwrap();
    }
}

#[test]
fn one_crossing_knot_dga() {
    let diagram = analyze(&corpus("gamma_cl.json")).unwrap();
    for (field, expected) in [
        (Field::F2, "d a = 1 + t"),
        (Field::Fp(5), "d a = 1 + 4*t"),
        (Field::Rational, "d a = 1 + -1*t"),
    ] {
        let dga = build_knot_dga(&diagram, field).unwrap();
        assert_eq!(dga.vars, ["t"]);
        assert_eq!(renders(&dga), [expected]);
    }
}

#[test]
fn quotient_of_invariant_cover_reproduces_bundled_curve() {
    let cover = corpus("gamma_cl_tilde.json");
    let down = corpus("gamma_cl.json");
    let (quotient, markers) = quotient_symmetric(&cover).unwrap();
    assert_eq!(quotient.vertices, down.vertices);
    assert_eq!(quotient.basepoint, down.basepoint);
    assert_eq!(markers.cone_markers, down.cone_markers);
    assert!(quotient.exact);
}

/// Solutions of 1 + lambda(1 + mu) = 0 over GF(5), found by hand: mu != 4 and
/// lambda = -(1 + mu)^{-1}, giving (1,2), (2,3), (3,1).
#[test]
fn one_crossing_augmentations_over_gf5() {
    let field = Field::Fp(5);
    let dga = symmetric_dga("gamma_cl_tilde.json", field);
    let sols = augmentation_ideal(&dga)
        .unwrap()
        .solve_over(&field, 2)
        .unwrap();
    let got: Vec<Vec<u64>> = sols
        .iter()
        .map(|s| {
            s.iter()
                .map(|v| match v {
                    legdga::dga_core::Scalar::Mod(m) => *m,
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect();
    assert_eq!(got, [vec![1, 2], vec![2, 3], vec![3, 1]]);
    for sol in sols {
        let eps = Augmentation::new(sol);
        let ranks = bilinearised_lch(&dga, &eps, &eps).unwrap();
        assert_eq!(ranks.into_iter().collect::<Vec<_>>(), [(1, 1), (2, 1)]);
        let poly = augmentation_polynomial(&dga, &eps).unwrap();
        assert_eq!(poly.render(&dga.vars, &field), "1 + lambda + mu*lambda");
    }
}

#[test]
fn one_crossing_acyclic_at_unit_specialization() {
    let field = Field::F2;
    let dga = symmetric_dga("gamma_cl_tilde.json", field);
    let (acyclic, witness) = acyclicity_test(&dga, &[field.one(), field.one()]).unwrap();
    assert!(acyclic);
    assert_eq!(witness.as_deref(), Some("a"));
    // Over GF(5) at mu = 1, lambda = 2 the obstruction 1 + 2(1 + 1) vanishes,
    // so this specialization must not certify acyclicity.
    let f5 = Field::Fp(5);
    let dga5 = symmetric_dga("gamma_cl_tilde.json", f5);
    let (acyclic5, _) = acyclicity_test(&dga5, &[f5.one(), f5.from_int(2)]).unwrap();
    assert!(!acyclic5);
}

#[test]
fn bilinearised_ranks_match_dense_oracle() {
    let field = Field::Fp(5);
    let dga = symmetric_dga("gamma_cl_tilde.json", field);
    let sols = augmentation_ideal(&dga)
        .unwrap()
        .solve_over(&field, 2)
        .unwrap();
    let augs: Vec<Augmentation> = sols.into_iter().map(Augmentation::new).collect();
    for e0 in &augs {
        for e1 in &augs {
            let ranks = bilinearised_lch(&dga, e0, e1).unwrap();
            for k in 0..=3 {
                let oracle = bilinearised_rank_oracle(&dga, e0, e1, k).unwrap();
                assert_eq!(ranks.get(&k).copied().unwrap_or(0), oracle);
            }
        }
    }
}

#[test]
fn degree_zero_homology_of_one_crossing_quotient() {
    let field = Field::F2;
    let dga = symmetric_dga("gamma_cl_tilde.json", field);
    let ideal = dga.degree_zero_homology().unwrap();
    assert_eq!(ideal.len(), 1);
    let one = LaurentPoly::one(2, &field);
    let mu = LaurentPoly::var_pow(2, 0, 1, &field);
    let la = LaurentPoly::var_pow(2, 1, 1, &field);
    let expected = one.add(&la.mul(&one.add(&mu, &field), &field), &field);
    assert!(ideal[0].eq_up_to_unit(&expected, &field).unwrap());
}
