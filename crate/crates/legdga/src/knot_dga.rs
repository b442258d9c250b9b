//! Gradings of crossings and the combinatorial Chekanov–Eliashberg DGA of a
//! Legendrian knot from its immersed-curve diagram: admissible immersed
//! polygons with one positive corner, found by boundary-walk search, and the
//! resulting differential over F[t^{±1}].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::curve_geometry::{
    crossing_degree, dart, dart_arc, dart_is_backward, ArcEvent, CrossingDiagram,
};
use crate::dga_core::{Dga, Element, Field, Generator, LaurentPoly, MonomialWord};
use crate::geom::{cross, Pt, Q};
use crate::{Error, Result};

/// A crossing together with its integer degree (Conley–Zehnder index − 1).
#[derive(Clone, Debug)]
pub struct GradedCrossing {
    pub crossing: usize,
    pub label: String,
    pub degree: i64,
}

pub fn grade_crossings(diagram: &CrossingDiagram) -> Vec<GradedCrossing> {
    (0..diagram.crossings.len())
        .map(|c| GradedCrossing {
            crossing: c,
            label: diagram.crossings[c].label.clone(),
            degree: crossing_degree(diagram, c),
        })
        .collect()
}

/// An item met along a polygon boundary, in order from the positive corner.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundaryLetter {
    /// Negative corner at the given crossing, leaving along the given dart.
    NegativeCorner { crossing: usize, out_dart: usize },
    /// Basepoint passage; `forward` means with the curve orientation.
    Basepoint { forward: bool },
    /// Passage of the cone marker with the given index.
    ConeMarker(usize),
}

/// An admissible immersed polygon with one positive corner.
#[derive(Clone, Debug)]
pub struct AdmissiblePolygon {
    pub positive: usize,
    /// Outgoing dart of the positive corner.
    pub positive_out_dart: usize,
    /// Boundary darts in walk order, starting just after the positive corner.
    pub boundary: Vec<usize>,
    /// Corner/marker sequence along the boundary.
    pub letters: Vec<BoundaryLetter>,
    /// Covering multiplicity of every face.
    pub face_multiplicities: Vec<i64>,
    pub basepoint_signed: i64,
    /// Per-cone-marker passage counts.
    pub marker_passages: Vec<u64>,
    /// Multiplicity with which the polygon covers the origin.
    pub origin_multiplicity: i64,
    pub area: Q,
}

impl AdmissiblePolygon {
    pub fn negative_corners(&self) -> Vec<usize> {
        self.letters
            .iter()
            .filter_map(|l| match l {
                BoundaryLetter::NegativeCorner { crossing, .. } => Some(*crossing),
                _ => None,
            })
            .collect()
    }
}

fn ceil_div(q: &Q) -> i64 {
    // Ceiling of a positive rational.
    let (num, den) = (q.numer(), q.denom());
    let (d, r) = num.div_rem(den);
    let mut out = d;
    if !r.is_zero() && num.is_positive() {
        out += BigInt::one();
    }
    use num_traits::ToPrimitive;
    out.to_i64().unwrap_or(i64::MAX)
}

struct Search<'a> {
    diagram: &'a CrossingDiagram,
    positive: usize,
    delta_in: usize,
    delta_out: usize,
    cap: u32,
    counts: Vec<u32>,
    walk: Vec<usize>,
    letters: Vec<BoundaryLetter>,
    budget: Q,
    actions: Vec<Q>,
    results: Vec<AdmissiblePolygon>,
    steps: u64,
}

impl<'a> Search<'a> {
    /// Passage at which dart `d` arrives.
    fn arrival_passage(&self, d: usize) -> usize {
        let a = dart_arc(d);
        if dart_is_backward(d) {
            self.diagram.arcs[a].from_passage
        } else {
            self.diagram.arcs[a].to_passage
        }
    }

    /// Direction of motion at the arrival point of dart `d`.
    fn arrival_dir(&self, d: usize) -> Pt {
        let p = &self.diagram.passages[self.arrival_passage(d)];
        if dart_is_backward(d) {
            p.dir.neg()
        } else {
            p.dir.clone()
        }
    }

    fn straight_continuation(&self, d: usize) -> usize {
        let np = self.diagram.passages.len();
        let p = self.arrival_passage(d);
        if dart_is_backward(d) {
            dart((p + np - 1) % np, true)
        } else {
            dart(p, false)
        }
    }

    /// The left-turn dart onto the other strand at the arrival of `d`, with
    /// the passage it leaves from.
    fn left_turn(&self, d: usize) -> (usize, usize) {
        let np = self.diagram.passages.len();
        let p_in = self.arrival_passage(d);
        let w = self.arrival_dir(d);
        let cr = &self.diagram.crossings[self.diagram.passages[p_in].crossing];
        let p_other = if cr.passages[0] == p_in {
            cr.passages[1]
        } else {
            cr.passages[0]
        };
        let dir_other = &self.diagram.passages[p_other].dir;
        if cross(&w, dir_other).is_positive() {
            (dart(p_other, false), p_other)
        } else {
            (dart((p_other + np - 1) % np, true), p_other)
        }
    }

    fn dart_events(&self, d: usize) -> Vec<BoundaryLetter> {
        let a = dart_arc(d);
        let backward = dart_is_backward(d);
        let mut ev: Vec<BoundaryLetter> = self.diagram.arcs[a]
            .events
            .iter()
            .map(|e| match e {
                ArcEvent::Basepoint => BoundaryLetter::Basepoint { forward: !backward },
                ArcEvent::ConeMarker(k) => BoundaryLetter::ConeMarker(*k),
            })
            .collect();
        if backward {
            ev.reverse();
        }
        ev
    }

    fn dfs(&mut self, d: usize) -> Result<()> {
        self.steps += 1;
        if self.steps > 5_000_000 {
            return Err(Error::Internal("polygon search exceeded its step budget".into()));
        }
        if self.counts[d] >= self.cap {
            return Ok(());
        }
        self.counts[d] += 1;
        self.walk.push(d);
        let events = self.dart_events(d);
        let n_events = events.len();
        self.letters.extend(events);

        if d == self.delta_in {
            self.emit()?;
        }
        self.dfs(self.straight_continuation(d))?;
        {
            let p_in = self.arrival_passage(d);
            let (o, p_other) = self.left_turn(d);
            let h_in = &self.diagram.passages[p_in].h;
            let h_out = &self.diagram.passages[p_other].h;
            if h_in < h_out {
                // Negative corner.
                let x = self.diagram.passages[p_in].crossing;
                let action = self.actions[x].clone();
                if &self.budget - &action > Q::zero() {
                    self.budget -= &action;
                    self.letters.push(BoundaryLetter::NegativeCorner {
                        crossing: x,
                        out_dart: o,
                    });
                    self.dfs(o)?;
                    self.letters.pop();
                    self.budget += &action;
                }
            }
        }

        for _ in 0..n_events {
            self.letters.pop();
        }
        self.walk.pop();
        self.counts[d] -= 1;
        Ok(())
    }

    /// Validate the current closed walk as an immersed polygon and record it.
    fn emit(&mut self) -> Result<()> {
        let diagram = self.diagram;
        let np = diagram.passages.len();
        // Arc traversal counts.
        let mut fwd = vec![0i64; np];
        let mut bwd = vec![0i64; np];
        for &d in &self.walk {
            if dart_is_backward(d) {
                bwd[dart_arc(d)] += 1;
            } else {
                fwd[dart_arc(d)] += 1;
            }
        }
        // Face multiplicities: winding of the boundary walk, spread from the
        // unbounded face across arcs (left jump = forward − backward).
        let nf = diagram.faces.len();
        let mut mult: Vec<Option<i64>> = vec![None; nf];
        mult[diagram.unbounded_face] = Some(0);
        let mut queue = std::collections::VecDeque::from([diagram.unbounded_face]);
        while let Some(f) = queue.pop_front() {
            let m = mult[f].unwrap();
            for a in 0..np {
                let (l, r) = diagram.arc_faces[a];
                let jump = fwd[a] - bwd[a];
                let (other, mo) = if l == f {
                    (r, m - jump)
                } else if r == f {
                    (l, m + jump)
                } else {
                    continue;
                };
                if mult[other].is_none() {
                    mult[other] = Some(mo);
                    queue.push_back(other);
                }
            }
        }
        let mult: Vec<i64> = mult
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Internal("face multiplicity walk incomplete".into()))?;
        if mult.iter().any(|&m| m < 0) {
            return Ok(());
        }
        // Edge indices: i_e = (m_L + m_R − b_e)/2, integral and ≥ 0.
        let mut sum_ie = 0i64;
        for a in 0..np {
            let (l, r) = diagram.arc_faces[a];
            let b = fwd[a] + bwd[a];
            let twice = mult[l] + mult[r] - b;
            if twice < 0 || twice % 2 != 0 {
                return Ok(());
            }
            sum_ie += twice / 2;
        }
        // Corner and straight-pass counts per crossing from the transitions.
        let len = self.walk.len();
        let mut straight = vec![0i64; diagram.crossings.len()];
        let mut corners = vec![0i64; diagram.crossings.len()];
        for i in 0..len {
            let d = self.walk[i];
            let next = self.walk[(i + 1) % len];
            let x = diagram.passages[self.arrival_passage(d)].crossing;
            if self.straight_continuation(d) == next {
                straight[x] += 1;
            } else {
                corners[x] += 1;
            }
        }
        // Vertex indices from quadrant multiplicities.
        let mut sum_iv = 0i64;
        for (c, cr) in diagram.crossings.iter().enumerate() {
            let quad_sum: i64 = cr.quadrants.iter().map(|q| mult[q.face]).sum();
            let four_iv = quad_sum - 2 * straight[c] - corners[c];
            if four_iv < 0 || four_iv % 4 != 0 {
                return Ok(());
            }
            sum_iv += four_iv / 4;
        }
        let sum_mf: i64 = mult.iter().sum();
        if sum_iv - sum_ie + sum_mf != 1 {
            return Ok(());
        }
        // Area identity: Σ m_F·area_F must equal the remaining budget.
        let mut area = Q::zero();
        let two = Q::from_integer(BigInt::from(2));
        for (f, &m) in diagram.faces.iter().zip(&mult) {
            area += Q::from_integer(BigInt::from(m)) * &f.area2 / &two;
        }
        if area != self.budget {
            return Err(Error::Internal(
                "polygon area disagrees with the action difference".into(),
            ));
        }
        if !area.is_positive() {
            return Ok(());
        }
        // Basepoint/marker bookkeeping.
        let mut basepoint_signed = 0i64;
        let mut marker_passages = vec![0u64; diagram.curve.cone_markers.len()];
        for l in &self.letters {
            match l {
                BoundaryLetter::Basepoint { forward } => {
                    basepoint_signed += if *forward { 1 } else { -1 };
                }
                BoundaryLetter::ConeMarker(k) => marker_passages[*k] += 1,
                BoundaryLetter::NegativeCorner { .. } => {}
            }
        }
        let origin_multiplicity = if diagram.origin_face == diagram.unbounded_face {
            0
        } else {
            mult[diagram.origin_face]
        };
        self.results.push(AdmissiblePolygon {
            positive: self.positive,
            positive_out_dart: self.delta_out,
            boundary: self.walk.clone(),
            letters: self.letters.clone(),
            face_multiplicities: mult,
            basepoint_signed,
            marker_passages,
            origin_multiplicity,
            area,
        });
        Ok(())
    }
}

/// Enumerate all admissible immersed polygons with positive corner at the
/// given crossing.
pub fn enumerate_polygons(
    diagram: &CrossingDiagram,
    positive: usize,
) -> Result<Vec<AdmissiblePolygon>> {
    if !diagram.enclosed_area.is_zero() {
        return Err(Error::Degenerate(
            "polygon actions require an exact curve (zero enclosed area)".into(),
        ));
    }
    let np = diagram.passages.len();
    let (action, upper_idx) = diagram.crossing_action(positive);
    let cr = &diagram.crossings[positive];
    let p_up = cr.passages[upper_idx];
    let p_low = cr.passages[1 - upper_idx];
    let cap_m = ceil_div(&(&action / diagram.min_face_area()));
    let cap = (2 * cap_m.max(1)) as u32;
    let actions: Vec<Q> = (0..diagram.crossings.len())
        .map(|c| diagram.crossing_action(c).0)
        .collect();
    let mut all = Vec::new();
    // Two start configurations: arrive along the upper strand forward or
    // backward; leave along the lower strand by the left turn.
    let d_up = diagram.passages[p_up].dir.clone();
    let d_low = diagram.passages[p_low].dir.clone();
    for backward_in in [false, true] {
        let delta_in = if backward_in {
            dart(p_up, true)
        } else {
            dart((p_up + np - 1) % np, false)
        };
        let w = if backward_in { d_up.neg() } else { d_up.clone() };
        let delta_out = if cross(&w, &d_low).is_positive() {
            dart(p_low, false)
        } else {
            dart((p_low + np - 1) % np, true)
        };
        let mut search = Search {
            diagram,
            positive,
            delta_in,
            delta_out,
            cap,
            counts: vec![0; 2 * np],
            walk: Vec::new(),
            letters: Vec::new(),
            budget: action.clone(),
            actions: actions.clone(),
            results: Vec::new(),
            steps: 0,
        };
        search.dfs(delta_out)?;
        all.extend(search.results);
    }
    Ok(all)
}

/// Orientation sign of a polygon over fields of characteristic ≠ 2: the
/// product of −1 for every corner occupying a shaded quadrant, where the
/// shaded quadrants of an even-degree crossing are the two sectors entered by
/// turning onto the upper strand (exactly the sectors available to corners at
/// that crossing whose outgoing dart runs along the upper strand).
fn orientation_sign(degrees: &[i64], polygon: &AdmissiblePolygon) -> i32 {
    let mut sign = 1;
    for l in &polygon.letters {
        if let BoundaryLetter::NegativeCorner { crossing, .. } = l {
            if degrees[*crossing] % 2 == 0 {
                sign = -sign;
            }
        }
    }
    sign
}

/// Full sign of a polygon's contribution over characteristic ≠ 2.
///
/// With the spinning-axis twist enabled (torus modes), the extra factor is
/// (−1)^{(o+m)/2} where o is the multiplicity with which the polygon covers
/// the origin and m the total count of cone-marker passages. The two counts
/// always have the same parity: the quotient curve meets the branch ray from
/// the origin exactly at the cone markers, so the boundary walk's winding
/// around the origin and its marker passages agree mod 2.
pub fn polygon_sign(degrees: &[i64], polygon: &AdmissiblePolygon, use_origin_twist: bool) -> i32 {
    let mut sign = orientation_sign(degrees, polygon);
    if polygon.basepoint_signed.rem_euclid(2) == 1 {
        sign = -sign;
    }
    if use_origin_twist {
        let m: i64 = polygon.marker_passages.iter().map(|&k| k as i64).sum();
        let half = (polygon.origin_multiplicity + m).div_euclid(2);
        if half.rem_euclid(2) == 1 {
            sign = -sign;
        }
    }
    sign
}

/// Build the knot-level DGA over F[t^{±1}]: one generator per crossing, with
/// ∂q summing sign·t^{signed basepoint passages}·(negative-corner word) over
/// the admissible polygons at q. Cone markers are ignored in knot mode.
pub fn build_knot_dga(diagram: &CrossingDiagram, field: Field) -> Result<Dga> {
    if !diagram.enclosed_area.is_zero() {
        return Err(Error::Degenerate("knot DGA requires an exact curve".into()));
    }
    if diagram.curve.basepoint.is_none() {
        return Err(Error::ModeMismatch("knot mode requires a basepoint".into()));
    }
    let graded = grade_crossings(diagram);
    let degrees: Vec<i64> = graded.iter().map(|g| g.degree).collect();
    // Generator table ordered by (degree, label).
    let mut order: Vec<usize> = (0..graded.len()).collect();
    order.sort_by(|&a, &b| {
        (graded[a].degree, &graded[a].label).cmp(&(graded[b].degree, &graded[b].label))
    });
    let gen_index_of_crossing: Vec<usize> = {
        let mut v = vec![0usize; graded.len()];
        for (slot, &c) in order.iter().enumerate() {
            v[c] = slot;
        }
        v
    };
    let generators: Vec<Generator> = order
        .iter()
        .map(|&c| Generator {
            label: graded[c].label.clone(),
            degree: graded[c].degree,
        })
        .collect();
    let tau = diagram.tangent_winding;
    let arity = 1;
    let mut differential = vec![Element::zero(arity); generators.len()];
    for &c in &order {
        let polys = enumerate_polygons(diagram, c)?;
        let mut dq = Element::zero(arity);
        for p in &polys {
            let sign = polygon_sign(&degrees, p, false);
            let coeff = LaurentPoly::monomial(
                vec![p.basepoint_signed],
                if sign >= 0 {
                    field.one()
                } else {
                    field.from_int(-1)
                },
                &field,
            );
            let mut word = Element::from_poly(&coeff, &field);
            for l in &p.letters {
                if let BoundaryLetter::NegativeCorner { crossing, .. } = l {
                    word = word.mul(
                        &Element::generator(gen_index_of_crossing[*crossing], arity, &field),
                        &field,
                    );
                }
            }
            dq = dq.add(&word, &field);
        }
        differential[gen_index_of_crossing[c]] = dq;
    }
    let dga = Dga {
        name: format!("{}/knot", diagram.curve.name),
        field,
        vars: vec!["t".into()],
        var_degrees: vec![2 * tau],
        generators,
        differential,
    };
    dga.verify()?;
    Ok(dga)
}

/// Check that every monomial word in a MonomialWord-based differential uses
/// only letters (diagnostic helper for tests).
pub fn word_letter_count(w: &MonomialWord) -> usize {
    w.gens.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_geometry::{analyze, load_curve};

    fn unknot1() -> CrossingDiagram {
        let doc = r#"{
            "name": "unknot1",
            "vertices": [[6,1,1,1],[7,1,0,1],[6,1,-1,1],[2,1,1,1],[1,1,0,1],[2,1,-1,1]],
            "closed": true,
            "basepoint": {"edge": 3, "t": [1,2]},
            "exact": true
        }"#;
        analyze(&load_curve(doc).unwrap()).unwrap()
    }

    #[test]
    fn unknot_crossing_degree_is_one() {
        let d = unknot1();
        let graded = grade_crossings(&d);
        assert_eq!(graded.len(), 1);
        assert_eq!(graded[0].degree, 1);
    }

    #[test]
    fn unknot_two_teardrops() {
        let d = unknot1();
        let polys = enumerate_polygons(&d, 0).unwrap();
        assert_eq!(polys.len(), 2);
        for p in &polys {
            assert!(p.negative_corners().is_empty());
            assert!(p.area.is_positive());
        }
        let with_bp: Vec<_> = polys.iter().filter(|p| p.basepoint_signed != 0).collect();
        assert_eq!(with_bp.len(), 1);
        assert_eq!(with_bp[0].basepoint_signed, 1);
    }

    #[test]
    fn unknot_dga_over_f2_and_q() {
        let d = unknot1();
        let dga = build_knot_dga(&d, Field::F2).unwrap();
        // ∂a = 1 + t.
        let f = Field::F2;
        let one = LaurentPoly::one(1, &f);
        let t = LaurentPoly::var_pow(1, 0, 1, &f);
        let expect = Element::from_poly(&one.add(&t, &f), &f);
        assert_eq!(dga.differential[0], expect);

        let fq = Field::Rational;
        let dga_q = build_knot_dga(&d, fq).unwrap();
        let one = LaurentPoly::one(1, &fq);
        let t = LaurentPoly::var_pow(1, 0, 1, &fq);
        let expect = Element::from_poly(&one.sub(&t, &fq), &fq);
        assert_eq!(dga_q.differential[0], expect);
    }
}
