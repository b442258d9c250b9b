//! Corpus regression suite: the checks behind `legdga regress`, each
//! reported as an independent pass/fail outcome.

use std::path::Path;

use legdga::curve_geometry::{analyze, load_curve, quotient_symmetric, MarkerPos, PlanarCurve};
use legdga::dga_core::{
    acyclicity_test, augmentation_ideal, augmentation_polynomial, bilinearised_lch,
    equivalent_under_basis_change, superpotential_check, superpotential_search, Augmentation, Dga,
    Element, Expo, Field, Generator, LaurentPoly, MonomialWord,
};
use legdga::geom::{Pt, Q};
use legdga::knot_dga::{build_knot_dga, enumerate_polygons};
use legdga::prequant::{
    bott_degree, cover_index_oracle, cover_lattice, minimal_bs_index, ActionClass,
};
use legdga::torus_dga::{build_spun_dga, SpinMode};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// One criterion's verdict.
pub struct Outcome {
    pub criterion: u32,
    pub pass: bool,
    pub detail: String,
}

type Check = Result<String, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Run every regression criterion against the bundled curve corpus.
pub fn run_all(corpus: &Path) -> Vec<Outcome> {
    let checks: Vec<(u32, Check)> = vec![
        (1, clifford_shape(corpus)),
        (2, chekanov_shape(corpus)),
        (3, ideals_distinguish(corpus)),
        (4, bilinearised_ranks(corpus)),
        (5, acyclic_and_augmented(corpus)),
        (6, augmentation_polynomials(corpus)),
        (7, superpotentials(corpus)),
        (8, circle_bundle_invariants()),
        (9, structural_identities(corpus)),
    ];
    checks
        .into_iter()
        .map(|(criterion, r)| match r {
            Ok(detail) => Outcome {
                criterion,
                pass: true,
                detail,
            },
            Err(detail) => Outcome {
                criterion,
                pass: false,
                detail,
            },
        })
        .collect()
}

fn curve_at(corpus: &Path, name: &str) -> Result<PlanarCurve, String> {
    let path = corpus.join(name);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    load_curve(&text).map_err(err)
}

/// Symmetric-torus DGA of a double-cover curve from the corpus.
fn torus_dga(corpus: &Path, name: &str, field: Field) -> Result<Dga, String> {
    let cover = curve_at(corpus, name)?;
    let (quotient, _) = quotient_symmetric(&cover).map_err(err)?;
    let diagram = analyze(&quotient).map_err(err)?;
    build_spun_dga(&diagram, field, SpinMode::Symmetric).map_err(err)
}

fn mu_lambda(field: &Field) -> (LaurentPoly, LaurentPoly, LaurentPoly) {
    (
        LaurentPoly::one(2, field),
        LaurentPoly::var_pow(2, 0, 1, field),
        LaurentPoly::var_pow(2, 1, 1, field),
    )
}

/// 1 + λ(1+μ)^power in the two-variable Laurent ring.
fn torus_obstruction(power: u32, field: &Field) -> LaurentPoly {
    let (one, mu, la) = mu_lambda(field);
    let mut factor = one.clone();
    for _ in 0..power {
        factor = factor.mul(&one.add(&mu, field), field);
    }
    one.add(&la.mul(&factor, field), field)
}

/// ∂(â) = a − μ a μ⁻¹ for the chord at `index`.
fn hat_of(index: usize, field: &Field) -> Element {
    let a = Element::generator(index, 2, field);
    a.sub(&a.conjugate_by_var(0, field), field)
}

fn check_torus_head(dga: &Dga, power: u32) -> Result<(), String> {
    let field = &dga.field;
    let expected = Element::from_poly(&torus_obstruction(power, field), field);
    if dga.differential[0] != expected {
        return Err(format!(
            "differential of {} is {}, expected 1 + lambda(1 + mu)^{power}",
            dga.generators[0].label,
            dga.differential[0].render(
                &dga.generators.iter().map(|g| g.label.clone()).collect::<Vec<_>>(),
                &dga.vars,
                field
            )
        ));
    }
    if dga.differential[1] != hat_of(0, field) {
        return Err(format!(
            "differential of {} is not a - mu*a*mu^-1",
            dga.generators[1].label
        ));
    }
    Ok(())
}

fn clifford_shape(corpus: &Path) -> Check {
    let dga = torus_dga(corpus, "gamma_cl_tilde.json", Field::F2)?;
    let shape: Vec<(String, i64)> = dga
        .generators
        .iter()
        .map(|g| (g.label.clone(), g.degree))
        .collect();
    if shape != [("a".to_string(), 1), ("a^".to_string(), 2)] {
        return Err(format!("unexpected generator table {shape:?}"));
    }
    check_torus_head(&dga, 1)?;
    Ok("one chord a with da = 1 + lambda(1 + mu), da^ = a + mu*a*mu^-1 over GF(2)".into())
}

fn chekanov_shape(corpus: &Path) -> Check {
    let dga = torus_dga(corpus, "gamma_ch_tilde.json", Field::F2)?;
    let mut degrees: Vec<i64> = dga.generators.iter().map(|g| g.degree).collect();
    degrees.sort();
    if degrees != [1, 2, 2, 3, 3, 4] {
        return Err(format!("generator degrees {degrees:?}, expected [1,2,2,3,3,4]"));
    }
    check_torus_head(&dga, 2)?;
    let ideal = dga.degree_zero_homology().map_err(err)?;
    let expected = torus_obstruction(2, &dga.field)
        .canonical_up_to_unit(&dga.field)
        .map_err(err)?;
    if ideal != [expected] {
        return Err(format!(
            "H0 ideal is {:?}, expected <1 + lambda(1 + mu)^2>",
            ideal
                .iter()
                .map(|p| p.render(&dga.vars, &dga.field))
                .collect::<Vec<_>>()
        ));
    }
    Ok("six chords of degrees 1..4 with da = 1 + lambda(1 + mu)^2 and matching H0".into())
}

fn ideals_distinguish(corpus: &Path) -> Check {
    let field = Field::F2;
    let p_cl = torus_dga(corpus, "gamma_cl_tilde.json", field)?
        .degree_zero_homology()
        .map_err(err)?;
    let p_ch = torus_dga(corpus, "gamma_ch_tilde.json", field)?
        .degree_zero_homology()
        .map_err(err)?;
    let (p_cl, p_ch) = match (&p_cl[..], &p_ch[..]) {
        ([p], [q]) => (p.clone(), q.clone()),
        _ => return Err("expected principal H0 ideals".into()),
    };
    // Sanity on the equivalence itself: a reparametrised copy is recognised.
    let twisted = p_cl.substitute_monomials(
        &[(field.one(), vec![-1, 0]), (field.one(), vec![2, 1])],
        2,
        &field,
    );
    if !equivalent_under_basis_change(&twisted, &p_cl, &field).map_err(err)? {
        return Err("basis-change equivalence missed a reparametrised copy".into());
    }
    if equivalent_under_basis_change(&p_cl, &p_ch, &field).map_err(err)?
        || equivalent_under_basis_change(&p_ch, &p_cl, &field).map_err(err)?
    {
        return Err("the two H0 ideals were declared equivalent".into());
    }
    Ok("H0 ideals inequivalent under monomial units and bounded basis changes".into())
}

fn all_augmentations(dga: &Dga) -> Result<Vec<Augmentation>, String> {
    let ideal = augmentation_ideal(dga).map_err(err)?;
    let sols = ideal.solve_over(&dga.field, dga.arity()).map_err(err)?;
    Ok(sols.into_iter().map(Augmentation::new).collect())
}

fn bilinearised_ranks(corpus: &Path) -> Check {
    let field = Field::Fp(5);
    let mut seen = Vec::new();
    for name in ["gamma_cl_tilde.json", "gamma_ch_tilde.json"] {
        let dga = torus_dga(corpus, name, field)?;
        let augs = all_augmentations(&dga)?;
        if augs.is_empty() {
            return Err(format!("{name}: no augmentations over GF(5)"));
        }
        for e0 in &augs {
            for e1 in &augs {
                let ranks = bilinearised_lch(&dga, e0, e1).map_err(err)?;
                let expected: Vec<(i64, usize)> = if e0 == e1 {
                    vec![(1, 1), (2, 1)]
                } else {
                    vec![]
                };
                let got: Vec<(i64, usize)> = ranks.into_iter().collect();
                if got != expected {
                    return Err(format!(
                        "{name}: ranks {got:?} for eps0 {} eps1, expected {expected:?}",
                        if e0 == e1 { "=" } else { "!=" }
                    ));
                }
            }
        }
        seen.push(augs.len());
    }
    Ok(format!(
        "bilinearised ranks over GF(5) match for all {}x{} and {}x{} augmentation pairs",
        seen[0], seen[0], seen[1], seen[1]
    ))
}

fn acyclic_and_augmented(corpus: &Path) -> Check {
    let mut witnesses = Vec::new();
    for name in ["gamma_cl_tilde.json", "gamma_ch_tilde.json"] {
        let dga2 = torus_dga(corpus, name, Field::F2)?;
        let ones = vec![Field::F2.one(), Field::F2.one()];
        let (acyclic, witness) = acyclicity_test(&dga2, &ones).map_err(err)?;
        if !acyclic {
            return Err(format!("{name}: not acyclic at mu = lambda = 1 over GF(2)"));
        }
        let dga5 = torus_dga(corpus, name, Field::Fp(5))?;
        if all_augmentations(&dga5)?.is_empty() {
            return Err(format!("{name}: no augmentations over GF(5)"));
        }
        witnesses.push(witness.unwrap_or_default());
    }
    Ok(format!(
        "acyclic at mu = lambda = 1 over GF(2) (witnesses {witnesses:?}); GF(5) augmentations exist"
    ))
}

/// Synthetic elimination fixtures with differentials written by hand.
fn synthetic_fixture(second: bool, field: Field) -> Dga {
    let (one, mu, la) = mu_lambda(&field);
    let arity = 2;
    let (da0, da1, db) = if !second {
        // da0 = 1 + lambda(1 + mu), da1 = 0, db = a1.
        let da0 = Element::from_poly(&one.add(&la.mul(&one.add(&mu, &field), &field), &field), &field);
        (da0, Element::zero(arity), Element::generator(1, arity, &field))
    } else {
        // da0 = -mu(1 - mu), da1 = lambda(1 - mu), db = mu a1 + lambda a0.
        let omm = one.sub(&mu, &field);
        let da0 = Element::from_poly(&mu.mul(&omm, &field).neg(&field), &field);
        let da1 = Element::from_poly(&la.mul(&omm, &field), &field);
        let mut db = Element::zero(arity);
        db.insert_term(
            MonomialWord {
                gens: vec![1],
                monos: vec![vec![1, 0], vec![0, 0]],
            },
            field.one(),
            &field,
        );
        db.insert_term(
            MonomialWord {
                gens: vec![0],
                monos: vec![vec![0, 1], vec![0, 0]],
            },
            field.one(),
            &field,
        );
        (da0, da1, db)
    };
    let dga = Dga {
        name: format!("fixture-{}", if second { "b" } else { "a" }),
        field,
        vars: vec!["mu".into(), "lambda".into()],
        var_degrees: vec![0, 0],
        generators: vec![
            Generator { label: "a0".into(), degree: 1 },
            Generator { label: "a1".into(), degree: 1 },
            Generator { label: "b".into(), degree: 2 },
        ],
        differential: vec![da0, da1, db],
    };
    dga.verify().expect("fixture differential");
    dga
}

fn augmentation_polynomials(corpus: &Path) -> Check {
    let field = Field::Fp(5);
    let mut counts = Vec::new();
    for (name, power) in [("gamma_cl_tilde.json", 1u32), ("gamma_ch_tilde.json", 2u32)] {
        let dga = torus_dga(corpus, name, field)?;
        let expected = torus_obstruction(power, &field);
        let augs = all_augmentations(&dga)?;
        if augs.is_empty() {
            return Err(format!("{name}: no augmentations over GF(5)"));
        }
        for eps in &augs {
            let poly = augmentation_polynomial(&dga, eps).map_err(err)?;
            if !poly.eq_up_to_unit(&expected, &field).map_err(err)? {
                return Err(format!(
                    "{name}: augmentation polynomial {} differs from 1 + lambda(1 + mu)^{power}",
                    poly.render(&dga.vars, &field)
                ));
            }
        }
        counts.push(augs.len());
    }
    // Fixture with a contractible pair a1, b: elimination must still recover
    // the scalar obstruction from a0.
    let fix_a = synthetic_fixture(false, field);
    let eps_a = Augmentation::new(vec![field.one(), field.from_int(2)]);
    let poly_a = augmentation_polynomial(&fix_a, &eps_a).map_err(err)?;
    if !poly_a
        .eq_up_to_unit(&torus_obstruction(1, &field), &field)
        .map_err(err)?
    {
        return Err(format!(
            "fixture a: got {}",
            poly_a.render(&fix_a.vars, &field)
        ));
    }
    // Fixture whose degree-1 differentials are both nonscalar: the kernel
    // minors must combine them into (1 - mu)(mu^2 + lambda^2).
    let fix_b = synthetic_fixture(true, field);
    let (one, mu, la) = mu_lambda(&field);
    let expected_b = one
        .sub(&mu, &field)
        .mul(&mu.mul(&mu, &field).add(&la.mul(&la, &field), &field), &field);
    for lam in 1..5 {
        let eps_b = Augmentation::new(vec![field.one(), field.from_int(lam)]);
        let poly_b = augmentation_polynomial(&fix_b, &eps_b).map_err(err)?;
        if !poly_b.eq_up_to_unit(&expected_b, &field).map_err(err)? {
            return Err(format!(
                "fixture b at lambda = {lam}: got {}",
                poly_b.render(&fix_b.vars, &field)
            ));
        }
    }
    Ok(format!(
        "elimination matches at all {} + {} GF(5) augmentations and on both synthetic fixtures",
        counts[0], counts[1]
    ))
}

fn poly_from_terms(terms: &[(Expo, i64)], field: &Field) -> LaurentPoly {
    let mut p = LaurentPoly::zero(terms[0].0.len());
    for (e, c) in terms {
        p = p.add(
            &LaurentPoly::monomial(e.clone(), field.from_int(*c), field),
            field,
        );
    }
    p
}

fn superpotentials(corpus: &Path) -> Check {
    let field = Field::Fp(5);
    // u(1 + v) + u^-2 v^-1 and u + (1 + v)^2 u^-2 v^-1 in the (u, v) ring.
    let pot_cl = poly_from_terms(
        &[(vec![1, 0], 1), (vec![1, 1], 1), (vec![-2, -1], 1)],
        &field,
    );
    let pot_ch = poly_from_terms(
        &[
            (vec![1, 0], 1),
            (vec![-2, -1], 1),
            (vec![-2, 0], 2),
            (vec![-2, 1], 1),
        ],
        &field,
    );
    let mut polys = Vec::new();
    for name in ["gamma_cl_tilde.json", "gamma_ch_tilde.json"] {
        let dga = torus_dga(corpus, name, field)?;
        let augs = all_augmentations(&dga)?;
        let eps = augs.first().ok_or("no augmentation over GF(5)")?;
        polys.push(augmentation_polynomial(&dga, eps).map_err(err)?);
    }
    // mu -> v with lambda -> u^3 v, respectively lambda -> u^-3 v^-1.
    let sub_cl = [(field.one(), vec![0, 1]), (field.one(), vec![3, 1])];
    let sub_ch = [(field.one(), vec![0, 1]), (field.one(), vec![-3, -1])];
    if !superpotential_check(&polys[0], &pot_cl, &sub_cl, &field).map_err(err)? {
        return Err("first torus does not match its superpotential".into());
    }
    if !superpotential_check(&polys[1], &pot_ch, &sub_ch, &field).map_err(err)? {
        return Err("second torus does not match its superpotential".into());
    }
    if superpotential_search(&polys[0], &pot_ch, &field)
        .map_err(err)?
        .is_some()
    {
        return Err("first torus unexpectedly matches the second superpotential".into());
    }
    if superpotential_search(&polys[1], &pot_cl, &field)
        .map_err(err)?
        .is_some()
    {
        return Err("second torus unexpectedly matches the first superpotential".into());
    }
    Ok("each torus matches its own superpotential and neither matches the other".into())
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unreachable!("determinant helper supports n <= 3"),
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

fn circle_bundle_invariants() -> Check {
    let bs = |values: Vec<Q>| minimal_bs_index(&ActionClass { values }).map_err(err);
    if bs(vec![q(1, 3), q(1, 3)])? != 3 {
        return Err("minimal index of (1/3, 1/3) is not 3".into());
    }
    if bs(vec![q(1, 2), q(1, 2)])? != 2 {
        return Err("minimal index of (1/2, 1/2) is not 2".into());
    }
    for (n_omega, k, l, want) in [(3, 3, 1, 1i64), (2, 2, 1, 1)] {
        let d = bott_degree(n_omega, k, l).map_err(err)?;
        if d.degree != want || !d.positive {
            return Err(format!(
                "bott degree for ({n_omega}, {k}, {l}) is {}, expected {want}",
                d.degree
            ));
        }
    }
    let residue_sets: [&[i64]; 6] = [
        &[1],
        &[1, 0],
        &[2, 3],
        &[3, 4],
        &[1, 2, 3],
        &[5, 2, 7],
    ];
    let mut cases = 0;
    for k in 2u64..=6 {
        for residues in residue_sets {
            let mut g = k as i64;
            for &r in residues {
                g = gcd_i64(g, r);
            }
            if g != 1 {
                continue;
            }
            let data = cover_lattice(residues, k).map_err(err)?;
            let oracle = cover_index_oracle(residues, k);
            let rows: Vec<Vec<i64>> = (0..residues.len())
                .map(|i| data.kernel_basis.iter().map(|col| col[i]).collect())
                .collect();
            let det = det_i64(&rows).unsigned_abs();
            if data.index != k || oracle != k || det != k {
                return Err(format!(
                    "cover of {residues:?} mod {k}: index {}, oracle {oracle}, det {det}",
                    data.index
                ));
            }
            cases += 1;
        }
    }
    Ok(format!(
        "index anchors, Bott degrees, and {cases} cover lattices against the brute-force oracle"
    ))
}

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo) as u64) as i64
    }
}

/// Holonomy of the standard primitive x dy along one edge.
fn edge_holonomy(a: &Pt, b: &Pt) -> Q {
    (&a.x + &b.x) * (&b.y - &a.y) / qi(2)
}

fn total_holonomy(vertices: &[Pt]) -> Q {
    let n = vertices.len();
    (0..n)
        .map(|i| edge_holonomy(&vertices[i], &vertices[(i + 1) % n]))
        .sum()
}

/// Random closed polyline with zero total holonomy: sample integer vertices,
/// then slide one vertex along a direction. The holonomy is affine in a
/// single vertex, so the zero is rational and exact.
fn random_exact_vertices(rng: &mut Rng) -> Option<Vec<Pt>> {
    let n = rng.range(5, 10) as usize;
    let mut vertices: Vec<Pt> = (0..n)
        .map(|_| Pt::from_ints(rng.range(2, 15), rng.range(-7, 8)))
        .collect();
    let j = rng.range(0, n as i64) as usize;
    let d = Pt::from_ints(rng.range(-3, 4), rng.range(-3, 4));
    if d.x.is_zero() && d.y.is_zero() {
        return None;
    }
    let a0 = total_holonomy(&vertices);
    vertices[j] = vertices[j].add(&d);
    let a1 = total_holonomy(&vertices);
    if a0 == a1 {
        return None;
    }
    let t = &a0 / (&a0 - &a1);
    if !t.is_positive() || t >= Q::one() + Q::one() {
        return None;
    }
    vertices[j] = vertices[j].sub(&d).add(&d.scale(&t));
    Some(vertices)
}

fn polygon_area_identity(diagram: &legdga::curve_geometry::CrossingDiagram) -> Result<usize, String> {
    let mut count = 0;
    for c in 0..diagram.crossings.len() {
        let (gap, _) = diagram.crossing_action(c);
        for p in enumerate_polygons(diagram, c).map_err(err)? {
            if !p.area.is_positive() {
                return Err(format!("polygon at crossing {c} has nonpositive area"));
            }
            if p.area != gap {
                return Err(format!(
                    "polygon area at crossing {c} differs from the action gap"
                ));
            }
            let total: Q = p
                .face_multiplicities
                .iter()
                .zip(&diagram.faces)
                .map(|(m, f)| qi(*m) * f.area())
                .sum();
            if total != p.area {
                return Err(format!(
                    "polygon area at crossing {c} disagrees with its face multiplicities"
                ));
            }
            count += 1;
        }
    }
    Ok(count)
}

fn structural_identities(corpus: &Path) -> Check {
    // Quotient round-trips against the bundled quotient curves.
    for (cover, downstairs) in [
        ("gamma_cl_tilde.json", "gamma_cl.json"),
        ("gamma_ch_tilde.json", "gamma_ch.json"),
    ] {
        let up = curve_at(corpus, cover)?;
        let down = curve_at(corpus, downstairs)?;
        let (quotient, markers) = quotient_symmetric(&up).map_err(err)?;
        if quotient.vertices != down.vertices {
            return Err(format!("{cover}: quotient vertices differ from {downstairs}"));
        }
        if quotient.basepoint != down.basepoint
            || markers.cone_markers != down.cone_markers
            || !quotient.exact
        {
            return Err(format!("{cover}: quotient markers differ from {downstairs}"));
        }
    }
    // Bundled quotient diagrams: d^2 = 0 in every mode and field, the polygon
    // area identity, and the numeric area profile against its quadrature.
    let mut polygons = 0;
    for name in ["gamma_cl.json", "gamma_ch.json"] {
        let curve = curve_at(corpus, name)?;
        let diagram = analyze(&curve).map_err(err)?;
        polygons += polygon_area_identity(&diagram)?;
        for field in [Field::F2, Field::Fp(5), Field::Rational] {
            build_knot_dga(&diagram, field)
                .and_then(|d| d.verify())
                .map_err(err)?;
            build_spun_dga(&diagram, field, SpinMode::Symmetric)
                .and_then(|d| d.verify())
                .map_err(err)?;
        }
        let exact = legdga::curve_geometry::lefschetz_face_areas(&diagram).map_err(err)?;
        let oracle = legdga::curve_geometry::lefschetz_face_areas_oracle(&diagram, 1e-9);
        for (a, b) in exact.iter().zip(&oracle) {
            if (a - b).abs() > 1e-6 {
                return Err(format!("{name}: closed-form area {a} vs quadrature {b}"));
            }
        }
    }
    // Remaining corpus members: the figure-eight supports both plain modes;
    // the symmetric hexagon only quotients (its quotient is not exact).
    let eight = curve_at(corpus, "unknot1.json")?;
    let eight_diagram = analyze(&eight).map_err(err)?;
    polygons += polygon_area_identity(&eight_diagram)?;
    for field in [Field::F2, Field::Fp(5), Field::Rational] {
        build_knot_dga(&eight_diagram, field)
            .and_then(|d| d.verify())
            .map_err(err)?;
        build_spun_dga(&eight_diagram, field, SpinMode::Plain)
            .and_then(|d| d.verify())
            .map_err(err)?;
    }
    let hexagon = curve_at(corpus, "circle.json")?;
    let (hex_quotient, _) = quotient_symmetric(&hexagon).map_err(err)?;
    analyze(&hex_quotient).map_err(err)?;

    // Randomised exact diagrams: build and verify both plain modes over the
    // rationals until 100 of each have passed.
    let mut rng = Rng(0x1d57_23c1_9e02_77a5);
    let (mut knots, mut spun, mut attempts) = (0u32, 0u32, 0u32);
    while (knots < 100 || spun < 100) && attempts < 40_000 {
        attempts += 1;
        let Some(vertices) = random_exact_vertices(&mut rng) else {
            continue;
        };
        let curve = PlanarCurve {
            name: format!("random-{attempts}"),
            vertices,
            basepoint: Some(MarkerPos {
                edge: 0,
                t: q(1, 2),
            }),
            cone_markers: Vec::new(),
            exact: true,
            symmetric_component: false,
        };
        let Ok(diagram) = analyze(&curve) else { continue };
        if diagram.crossings.is_empty() {
            continue;
        }
        if knots < 100 {
            if let Ok(dga) = build_knot_dga(&diagram, Field::Rational) {
                dga.verify().map_err(err)?;
                knots += 1;
            }
        }
        if spun < 100 && diagram.origin_face == diagram.unbounded_face {
            if let Ok(dga) = build_spun_dga(&diagram, Field::Rational, SpinMode::Plain) {
                dga.verify().map_err(err)?;
                spun += 1;
            }
        }
    }
    if knots < 100 || spun < 100 {
        return Err(format!(
            "only {knots} knot and {spun} spun random diagrams verified in {attempts} attempts"
        ));
    }
    Ok(format!(
        "quotient round-trips, {polygons} polygon area identities, and {knots} + {spun} random exact diagrams"
    ))
}
