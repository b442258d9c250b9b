//! Immersed planar curve ingestion and analysis: validation of generic
//! immersions in the punctured plane, exact crossing/arc/face combinatorics,
//! action primitives under the standard and Lefschetz area forms, looseness
//! diagnostics, and the symmetric quotient construction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;

use crate::geom::{
    cross, cross_sign, direction_loop_turns, dot, improper_contact, on_segment,
    proper_intersection, shoelace2, winding_number, Pt, Q,
};
use crate::{Error, Result};

/// A marked point in the interior of a polyline edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkerPos {
    pub edge: usize,
    pub t: Q,
}

/// A closed rational polyline immersed in the punctured plane, with optional
/// basepoint and cone markers.
#[derive(Clone, Debug)]
pub struct PlanarCurve {
    pub name: String,
    pub vertices: Vec<Pt>,
    pub basepoint: Option<MarkerPos>,
    pub cone_markers: Vec<MarkerPos>,
    pub exact: bool,
    /// When set, this curve is one component `C` of the centrally symmetric
    /// two-component configuration `C ∪ (−C)`; the symmetric quotient uses
    /// all of `C` as fundamental domain.
    pub symmetric_component: bool,
}

/// Basepoint and cone-marker data, as produced by [`quotient_symmetric`].
#[derive(Clone, Debug, Default)]
pub struct Markers {
    pub basepoint: Option<MarkerPos>,
    pub cone_markers: Vec<MarkerPos>,
}

#[derive(Deserialize)]
struct CurveFile {
    #[serde(default)]
    schema: Option<String>,
    name: String,
    vertices: Vec<[i64; 4]>,
    closed: bool,
    #[serde(default)]
    basepoint: Option<MarkerFile>,
    #[serde(default)]
    cone_markers: Vec<MarkerFile>,
    #[serde(default)]
    exact: bool,
    #[serde(default)]
    symmetric_component: bool,
}

#[derive(Deserialize)]
struct MarkerFile {
    edge: usize,
    t: [i64; 2],
}

fn ratio(num: i64, den: i64) -> Result<Q> {
    if den == 0 {
        return Err(Error::Schema("zero denominator in rational entry".into()));
    }
    Ok(Q::new(BigInt::from(num), BigInt::from(den)))
}

fn marker_from_file(m: &MarkerFile, edges: usize, what: &str) -> Result<MarkerPos> {
    if m.edge >= edges {
        return Err(Error::Schema(format!(
            "{} edge index {} out of range (curve has {} edges)",
            what, m.edge, edges
        )));
    }
    let t = ratio(m.t[0], m.t[1])?;
    if !t.is_positive() || t >= Q::one() {
        return Err(Error::Schema(format!(
            "{} parameter must lie strictly inside the edge",
            what
        )));
    }
    Ok(MarkerPos { edge: m.edge, t })
}

/// Parse and validate a curve document (JSON, schema `legdga-curve/1`).
pub fn load_curve(document: &str) -> Result<PlanarCurve> {
    let file: CurveFile =
        serde_json::from_str(document).map_err(|e| Error::Schema(format!("invalid JSON: {e}")))?;
    if let Some(schema) = &file.schema {
        if schema != "legdga-curve/1" {
            return Err(Error::Schema(format!("unsupported schema tag {schema:?}")));
        }
    }
    if !file.closed {
        return Err(Error::Schema("only closed curves are supported".into()));
    }
    let mut vertices = Vec::with_capacity(file.vertices.len());
    for v in &file.vertices {
        vertices.push(Pt::new(ratio(v[0], v[1])?, ratio(v[2], v[3])?));
    }
    let n = vertices.len();
    if n < 3 {
        return Err(Error::Schema("a closed polyline needs at least 3 vertices".into()));
    }
    let basepoint = match &file.basepoint {
        Some(m) => Some(marker_from_file(m, n, "basepoint")?),
        None => None,
    };
    let mut cone_markers = Vec::new();
    for m in &file.cone_markers {
        cone_markers.push(marker_from_file(m, n, "cone marker")?);
    }
    let curve = PlanarCurve {
        name: file.name,
        vertices,
        basepoint,
        cone_markers,
        exact: file.exact,
        symmetric_component: file.symmetric_component,
    };
    validate(&curve)?;
    Ok(curve)
}

impl PlanarCurve {
    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    /// Endpoints of edge `i` (from vertex `i` to vertex `i+1`, cyclically).
    pub fn edge(&self, i: usize) -> (&Pt, &Pt) {
        let n = self.vertices.len();
        (&self.vertices[i % n], &self.vertices[(i + 1) % n])
    }

    pub fn edge_dir(&self, i: usize) -> Pt {
        let (a, b) = self.edge(i);
        b.sub(a)
    }

    pub fn point_at(&self, edge: usize, t: &Q) -> Pt {
        let (a, b) = self.edge(edge);
        a.lerp(b, t)
    }
}

/// Check all generic-immersion invariants of a curve.
pub fn validate(curve: &PlanarCurve) -> Result<()> {
    let n = curve.vertices.len();
    let origin = Pt::origin();
    for (i, v) in curve.vertices.iter().enumerate() {
        if v.is_origin() {
            return Err(Error::Degenerate(format!("vertex {i} lies at the origin")));
        }
    }
    for i in 0..n {
        let (a, b) = curve.edge(i);
        if a == b {
            return Err(Error::Degenerate(format!("degenerate edge {i} (repeated vertex)")));
        }
        if on_segment(a, b, &origin) {
            return Err(Error::Degenerate(format!("edge {i} passes through the origin")));
        }
    }
    // Consecutive edges must not double back (a cusp-like exact reversal is a
    // self-tangency of the polyline).
    for i in 0..n {
        let d0 = curve.edge_dir(i);
        let d1 = curve.edge_dir((i + 1) % n);
        if cross(&d0, &d1).is_zero() && dot(&d0, &d1).is_negative() {
            return Err(Error::Degenerate(format!(
                "edges {} and {} reverse direction at their shared vertex",
                i,
                (i + 1) % n
            )));
        }
    }
    // Pairwise edge checks: non-adjacent pairs may only meet transversally in
    // their interiors; any other contact is a tangency / non-generic point.
    let mut points: BTreeMap<Pt, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            let (a, b) = curve.edge(i);
            let (c, d) = curve.edge(j);
            if adjacent {
                continue;
            }
            if improper_contact(a, b, c, d) {
                return Err(Error::Degenerate(format!(
                    "edges {i} and {j} meet non-transversally"
                )));
            }
            if let Some((_, _, p)) = proper_intersection(a, b, c, d) {
                points.entry(p).or_default().push((i, j));
            }
        }
    }
    for (p, pairs) in &points {
        if pairs.len() > 1 {
            return Err(Error::Degenerate(format!(
                "triple point at ({}, {}) between edge pairs {:?}",
                p.x, p.y, pairs
            )));
        }
    }
    // Markers must be pairwise distinct (crossing-disjointness is checked in
    // analyze, where crossing parameters are known).
    let mut marks: Vec<&MarkerPos> = curve.cone_markers.iter().collect();
    if let Some(bp) = &curve.basepoint {
        marks.push(bp);
    }
    for i in 0..marks.len() {
        for j in (i + 1)..marks.len() {
            if marks[i] == marks[j] {
                return Err(Error::Schema("coincident markers".into()));
            }
        }
    }
    Ok(())
}

/// One strand of the curve passing through a crossing.
#[derive(Clone, Debug)]
pub struct Passage {
    pub crossing: usize,
    /// 0 if this is the first-traversed branch of its crossing.
    pub branch: usize,
    pub edge: usize,
    pub t: Q,
    pub point: Pt,
    /// Direction of the curve at the passage (edge direction vector).
    pub dir: Pt,
    /// Value of the standard action primitive h = ∫ x dy at the passage,
    /// integrated along the curve from vertex 0.
    pub h: Q,
}

/// A transverse double point with its local quadrant frame.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub label: String,
    pub point: Pt,
    /// Passage indices (into [`CrossingDiagram::passages`]) ordered by
    /// traversal: `passages[0]` is the first-traversed branch.
    pub passages: [usize; 2],
    /// Four local sectors in counterclockwise order; set by `analyze`.
    pub quadrants: Vec<Quadrant>,
}

/// A local sector at a crossing, spanned counterclockwise from the direction
/// of `dart_ccw_from` to the next outgoing dart direction.
#[derive(Clone, Debug)]
pub struct Quadrant {
    /// Outgoing dart bounding the sector clockwise; the sector is the face
    /// region immediately counterclockwise of this dart.
    pub dart: usize,
    pub face: usize,
    /// +1 if a polygon corner occupying this sector is a positive corner
    /// (arrives on the strand of larger action primitive), −1 otherwise.
    pub sign: i32,
}

/// Things sitting in the interior of an arc, in traversal order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcEvent {
    Basepoint,
    ConeMarker(usize),
}

/// A maximal piece of the curve between consecutive crossing passages.
#[derive(Clone, Debug)]
pub struct Arc {
    pub from_passage: usize,
    pub to_passage: usize,
    /// Polyline geometry including both crossing endpoints.
    pub points: Vec<Pt>,
    pub events: Vec<ArcEvent>,
}

/// A complementary region of the curve.
#[derive(Clone, Debug)]
pub struct Face {
    /// Boundary darts in walk order (dart = 2·arc + direction bit).
    pub darts: Vec<usize>,
    /// Twice the signed shoelace area of the boundary walk.
    pub area2: Q,
    /// Winding number of the curve around interior points of the face.
    pub winding: i64,
    pub contains_origin: bool,
    pub neighbors: BTreeSet<usize>,
}

impl Face {
    pub fn area(&self) -> Q {
        &self.area2 / Q::from_integer(BigInt::from(2))
    }
}

/// Full combinatorial analysis of a curve: crossings, arcs, faces, windings.
#[derive(Clone, Debug)]
pub struct CrossingDiagram {
    pub curve: PlanarCurve,
    pub crossings: Vec<Crossing>,
    pub passages: Vec<Passage>,
    pub arcs: Vec<Arc>,
    pub faces: Vec<Face>,
    pub unbounded_face: usize,
    /// Face containing the origin.
    pub origin_face: usize,
    pub tangent_winding: i64,
    /// Σ_F winding(F)·area(F), the holonomy of the standard primitive.
    pub enclosed_area: Q,
    /// Left/right face of each arc's forward dart.
    pub arc_faces: Vec<(usize, usize)>,
}

pub const DART_FORWARD: usize = 0;

pub fn dart(arc: usize, backward: bool) -> usize {
    2 * arc + usize::from(backward)
}

pub fn dart_arc(d: usize) -> usize {
    d / 2
}

pub fn dart_is_backward(d: usize) -> bool {
    d % 2 == 1
}

pub fn dart_twin(d: usize) -> usize {
    d ^ 1
}

/// Counterclockwise comparison of direction vectors starting from the
/// positive x-axis.
fn pseudo_angle_cmp(a: &Pt, b: &Pt) -> std::cmp::Ordering {
    fn half(p: &Pt) -> u8 {
        // 0 for angles in [0, π), 1 for [π, 2π).
        if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
            0
        } else {
            1
        }
    }
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            std::cmp::Ordering::Less
        } else if c.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    })
}

struct Traversal {
    passages: Vec<Passage>,
    crossings: Vec<Crossing>,
}

/// Standard-primitive increment along edge `(a→b)` from parameter 0 to `t`:
/// ∫ x dy with x(s) = a.x + s·dx, dy = dy·ds.
fn h_partial(a: &Pt, b: &Pt, t: &Q) -> Q {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    (&a.x * t + dx * t * t / Q::from_integer(BigInt::from(2))) * dy
}

fn find_passages(curve: &PlanarCurve) -> Result<Traversal> {
    let n = curve.vertices.len();
    // Transverse interior intersections, keyed by edge.
    let mut per_edge: Vec<Vec<(Q, Pt, usize)>> = vec![Vec::new(); n]; // (t, point, pair id)
    let mut pair_count = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            if (i + 1) % n == j || (j + 1) % n == i {
                continue;
            }
            let (a, b) = curve.edge(i);
            let (c, d) = curve.edge(j);
            if let Some((ti, tj, p)) = proper_intersection(a, b, c, d) {
                per_edge[i].push((ti, p.clone(), pair_count));
                per_edge[j].push((tj, p, pair_count));
                pair_count += 1;
            }
        }
    }
    for v in per_edge.iter_mut() {
        v.sort_by(|x, y| x.0.cmp(&y.0));
    }
    // Walk the curve once, assigning crossing labels at first passage and
    // accumulating the action primitive.
    let mut passages: Vec<Passage> = Vec::new();
    let mut crossing_of_pair: BTreeMap<usize, usize> = BTreeMap::new();
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut h_base = Q::zero();
    for e in 0..n {
        let (a, b) = curve.edge(e);
        let dir = b.sub(a);
        for (t, p, pair) in &per_edge[e] {
            let idx = passages.len();
            let cross_idx = match crossing_of_pair.get(pair) {
                Some(&c) => {
                    crossings[c].passages[1] = idx;
                    c
                }
                None => {
                    let c = crossings.len();
                    crossing_of_pair.insert(*pair, c);
                    crossings.push(Crossing {
                        label: crossing_label(c),
                        point: p.clone(),
                        passages: [idx, idx],
                        quadrants: Vec::new(),
                    });
                    c
                }
            };
            let branch = usize::from(crossings[cross_idx].passages[0] != idx);
            passages.push(Passage {
                crossing: cross_idx,
                branch,
                edge: e,
                t: t.clone(),
                point: p.clone(),
                dir: dir.clone(),
                h: &h_base + h_partial(a, b, t),
            });
        }
        h_base += h_partial(a, b, &Q::one());
    }
    Ok(Traversal { passages, crossings })
}

fn crossing_label(i: usize) -> String {
    // a, b, …, z, a1, b1, …
    let letter = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{}{}", letter, i / 26)
    }
}

fn marker_events(curve: &PlanarCurve) -> Vec<(usize, Q, ArcEvent)> {
    let mut ev: Vec<(usize, Q, ArcEvent)> = Vec::new();
    if let Some(bp) = &curve.basepoint {
        ev.push((bp.edge, bp.t.clone(), ArcEvent::Basepoint));
    }
    for (k, m) in curve.cone_markers.iter().enumerate() {
        ev.push((m.edge, m.t.clone(), ArcEvent::ConeMarker(k)));
    }
    ev.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    ev
}

/// Compute the full crossing/arc/face analysis of a validated curve.
pub fn analyze(curve: &PlanarCurve) -> Result<CrossingDiagram> {
    validate(curve)?;
    let tangent_winding = {
        let dirs: Vec<Pt> = (0..curve.edge_count()).map(|i| curve.edge_dir(i)).collect();
        direction_loop_turns(&dirs)
    };
    let Traversal {
        passages,
        mut crossings,
    } = find_passages(curve)?;
    let events = marker_events(curve);
    // Markers must avoid crossings exactly.
    for (edge, t, _) in &events {
        if passages.iter().any(|p| p.edge == *edge && &p.t == t) {
            return Err(Error::Degenerate(format!(
                "marker on edge {edge} coincides with a crossing"
            )));
        }
    }

    if crossings.is_empty() {
        return analyze_embedded(curve, passages, tangent_winding, events);
    }

    let np = passages.len();
    // Arc i runs from passage i to passage (i+1) mod np.
    let mut arcs: Vec<Arc> = Vec::with_capacity(np);
    for i in 0..np {
        let from = &passages[i];
        let to = &passages[(i + 1) % np];
        let mut points = vec![from.point.clone()];
        let mut arc_events = Vec::new();
        let push_events = |edge: usize, lo: Option<&Q>, hi: Option<&Q>, out: &mut Vec<ArcEvent>| {
            for (e, t, ev) in &events {
                if *e != edge {
                    continue;
                }
                let after_lo = lo.map_or(true, |l| t > l);
                let before_hi = hi.map_or(true, |h| t < h);
                if after_lo && before_hi {
                    out.push(*ev);
                }
            }
        };
        if from.edge == to.edge && i != (i + 1) % np && from.t < to.t {
            push_events(from.edge, Some(&from.t), Some(&to.t), &mut arc_events);
        } else {
            push_events(from.edge, Some(&from.t), None, &mut arc_events);
            let n = curve.edge_count();
            let mut e = (from.edge + 1) % n;
            loop {
                points.push(curve.vertices[e].clone());
                if e == to.edge {
                    push_events(e, None, Some(&to.t), &mut arc_events);
                    break;
                }
                push_events(e, None, None, &mut arc_events);
                e = (e + 1) % n;
            }
        }
        points.push(to.point.clone());
        arcs.push(Arc {
            from_passage: i,
            to_passage: (i + 1) % np,
            points,
            events: arc_events,
        });
    }
    // Special case: a single self-contained arc between the two passages of
    // one crossing still needs the wrap-around branch above; the condition
    // `i != (i+1) % np` keeps a one-passage loop (impossible here: np even
    // and ≥ 2 per crossing) from short-circuiting.

    // Rotation system: the four outgoing darts at each crossing, sorted
    // counterclockwise.
    let mut outgoing: Vec<Vec<(usize, Pt)>> = vec![Vec::new(); crossings.len()];
    for (i, p) in passages.iter().enumerate() {
        // Forward dart of arc i leaves passage i with direction p.dir;
        // backward dart of arc i−1 leaves passage i with direction −p.dir.
        outgoing[p.crossing].push((dart(i, false), p.dir.clone()));
        outgoing[p.crossing].push((dart((i + np - 1) % np, true), p.dir.neg()));
    }
    for darts in outgoing.iter_mut() {
        darts.sort_by(|a, b| pseudo_angle_cmp(&a.1, &b.1));
    }

    // Arrival crossing of a dart, and the next dart of the face to its left:
    // rotate clockwise from the twin among the outgoing darts.
    let arrival_crossing = |d: usize| -> usize {
        let a = dart_arc(d);
        if dart_is_backward(d) {
            passages[arcs[a].from_passage].crossing
        } else {
            passages[arcs[a].to_passage].crossing
        }
    };
    let next_dart = |d: usize| -> Result<usize> {
        let c = arrival_crossing(d);
        let ring = &outgoing[c];
        let twin = dart_twin(d);
        let pos = ring
            .iter()
            .position(|(dd, _)| *dd == twin)
            .ok_or_else(|| Error::Internal("rotation system misses a dart".into()))?;
        Ok(ring[(pos + ring.len() - 1) % ring.len()].0)
    };

    // Face orbits.
    let mut face_of_dart: Vec<Option<usize>> = vec![None; 2 * np];
    let mut faces: Vec<Face> = Vec::new();
    for d0 in 0..2 * np {
        if face_of_dart[d0].is_some() {
            continue;
        }
        let id = faces.len();
        let mut boundary = Vec::new();
        let mut d = d0;
        loop {
            face_of_dart[d] = Some(id);
            boundary.push(d);
            d = next_dart(d)?;
            if d == d0 {
                break;
            }
        }
        faces.push(Face {
            darts: boundary,
            area2: Q::zero(),
            winding: 0,
            contains_origin: false,
            neighbors: BTreeSet::new(),
        });
    }
    // Boundary polylines, areas, origin containment.
    let dart_points = |d: usize| -> Vec<Pt> {
        let pts = &arcs[dart_arc(d)].points;
        if dart_is_backward(d) {
            pts.iter().rev().cloned().collect()
        } else {
            pts.clone()
        }
    };
    let origin = Pt::origin();
    for face in faces.iter_mut() {
        let mut poly: Vec<Pt> = Vec::new();
        for &d in &face.darts {
            let pts = dart_points(d);
            poly.extend_from_slice(&pts[..pts.len() - 1]);
        }
        face.area2 = shoelace2(&poly);
        face.contains_origin = winding_number(&poly, &origin) != 0;
    }
    let mut unbounded = None;
    for (i, f) in faces.iter().enumerate() {
        if f.area2.is_negative() {
            if unbounded.is_some() {
                return Err(Error::Internal(
                    "face decomposition found two negative-area faces".into(),
                ));
            }
            unbounded = Some(i);
        }
    }
    let unbounded_face =
        unbounded.ok_or_else(|| Error::Internal("no unbounded face found".into()))?;
    // A bounded face's boundary walk winds once around its interior and not
    // at all around anything else, while the unbounded face's walk winds −1
    // around every bounded point. So the raw winding test marks exactly one
    // bounded face, plus the unbounded one, whenever the origin is enclosed.
    let bounded_hits: Vec<usize> = faces
        .iter()
        .enumerate()
        .filter(|&(i, f)| i != unbounded_face && f.contains_origin)
        .map(|(i, _)| i)
        .collect();
    let origin_face = match bounded_hits.as_slice() {
        [] if !faces[unbounded_face].contains_origin => unbounded_face,
        [f] if faces[unbounded_face].contains_origin => *f,
        _ => {
            return Err(Error::Internal(
                "origin containment is inconsistent across face walks".into(),
            ))
        }
    };
    for (i, f) in faces.iter_mut().enumerate() {
        f.contains_origin = i == origin_face;
    }

    // Adjacency and windings: crossing an arc from its right face to its left
    // face raises the curve winding by 1.
    let mut arc_faces = Vec::with_capacity(np);
    for a in 0..np {
        let left = face_of_dart[dart(a, false)].unwrap();
        let right = face_of_dart[dart(a, true)].unwrap();
        arc_faces.push((left, right));
    }
    for &(l, r) in &arc_faces {
        faces[l].neighbors.insert(r);
        faces[r].neighbors.insert(l);
    }
    let mut winding: Vec<Option<i64>> = vec![None; faces.len()];
    winding[unbounded_face] = Some(0);
    let mut queue = VecDeque::from([unbounded_face]);
    while let Some(f) = queue.pop_front() {
        let w = winding[f].unwrap();
        for a in 0..np {
            let (l, r) = arc_faces[a];
            let (other, wo) = if l == f {
                (r, w - 1)
            } else if r == f {
                (l, w + 1)
            } else {
                continue;
            };
            match winding[other] {
                None => {
                    winding[other] = Some(wo);
                    queue.push_back(other);
                }
                Some(prev) => {
                    if prev != wo {
                        return Err(Error::Internal("inconsistent face windings".into()));
                    }
                }
            }
        }
    }
    for (f, w) in faces.iter_mut().zip(&winding) {
        f.winding = w.ok_or_else(|| Error::Internal("face not reached by winding walk".into()))?;
    }

    // Enclosed area and the holonomy cross-check.
    let two = Q::from_integer(BigInt::from(2));
    let mut enclosed = Q::zero();
    for f in &faces {
        enclosed += Q::from_integer(BigInt::from(f.winding)) * &f.area2 / &two;
    }
    let mut h_total = Q::zero();
    for e in 0..curve.edge_count() {
        let (a, b) = curve.edge(e);
        h_total += h_partial(a, b, &Q::one());
    }
    if h_total != enclosed {
        return Err(Error::Internal(
            "winding-weighted area disagrees with the primitive's holonomy".into(),
        ));
    }
    if curve.exact && !enclosed.is_zero() {
        return Err(Error::Degenerate(format!(
            "curve flagged exact but encloses signed area {enclosed}"
        )));
    }

    // Euler count: faces − arcs + crossings = 2.
    if faces.len() as i64 - np as i64 + crossings.len() as i64 != 2 {
        return Err(Error::Internal("Euler count of the diagram failed".into()));
    }

    // Quadrant frames: sectors in counterclockwise order with corner signs.
    for (c, cr) in crossings.iter_mut().enumerate() {
        let ring = &outgoing[c];
        let mut quads = Vec::with_capacity(4);
        for (k, (d, _)) in ring.iter().enumerate() {
            let (_, dir_next) = &ring[(k + 1) % ring.len()];
            // A corner in this sector leaves along dart `d` (direction u) and
            // arrives against the next direction: incoming direction is
            // −dir_next, i.e. the incoming strand is the strand of dir_next.
            let strand_of = |v: &Pt| -> usize {
                let p0 = &passages[cr.passages[0]];
                if cross(&p0.dir, v).is_zero() {
                    cr.passages[0]
                } else {
                    cr.passages[1]
                }
            };
            let incoming = strand_of(dir_next);
            let outgoing_strand = strand_of(&ring[k].1);
            let sign = if passages[incoming].h > passages[outgoing_strand].h {
                1
            } else {
                -1
            };
            quads.push(Quadrant {
                dart: *d,
                face: face_of_dart[*d].unwrap(),
                sign,
            });
        }
        cr.quadrants = quads;
    }

    Ok(CrossingDiagram {
        curve: curve.clone(),
        crossings,
        passages,
        arcs,
        faces,
        unbounded_face,
        origin_face,
        tangent_winding,
        enclosed_area: enclosed,
        arc_faces,
    })
}

/// Analysis of an embedded (crossing-free) closed curve: two faces, one arc.
fn analyze_embedded(
    curve: &PlanarCurve,
    _passages: Vec<Passage>,
    tangent_winding: i64,
    events: Vec<(usize, Q, ArcEvent)>,
) -> Result<CrossingDiagram> {
    let mut points = curve.vertices.clone();
    points.push(curve.vertices[0].clone());
    let arc = Arc {
        from_passage: 0,
        to_passage: 0,
        points,
        events: events.iter().map(|(_, _, e)| *e).collect(),
    };
    let area2 = shoelace2(&curve.vertices);
    if area2.is_zero() {
        return Err(Error::Internal("embedded curve with zero area".into()));
    }
    let ccw = area2.is_positive();
    let w_in = winding_number(&curve.vertices, &Pt::origin());
    let two = Q::from_integer(BigInt::from(2));
    let inside = Face {
        darts: vec![dart(0, !ccw)],
        area2: if ccw { area2.clone() } else { -area2.clone() },
        winding: if ccw { 1 } else { -1 },
        contains_origin: w_in != 0,
        neighbors: BTreeSet::from([1]),
    };
    let outside = Face {
        darts: vec![dart(0, ccw)],
        area2: if ccw { -area2.clone() } else { area2.clone() },
        winding: 0,
        contains_origin: false,
        neighbors: BTreeSet::from([0]),
    };
    let enclosed = Q::from_integer(BigInt::from(inside.winding)) * &inside.area2 / &two;
    if curve.exact && !enclosed.is_zero() {
        return Err(Error::Degenerate(format!(
            "curve flagged exact but encloses signed area {enclosed}"
        )));
    }
    let origin_face = if w_in != 0 { 0 } else { 1 };
    let arc_faces = if ccw { vec![(0, 1)] } else { vec![(1, 0)] };
    Ok(CrossingDiagram {
        curve: curve.clone(),
        crossings: Vec::new(),
        passages: Vec::new(),
        arcs: vec![arc],
        faces: vec![inside, outside],
        unbounded_face: 1,
        origin_face,
        tangent_winding,
        enclosed_area: enclosed,
        arc_faces,
    })
}

/// Total turning number of the tangent direction of a valid curve.
pub fn tangent_winding(curve: &PlanarCurve) -> Result<i64> {
    validate(curve)?;
    let dirs: Vec<Pt> = (0..curve.edge_count()).map(|i| curve.edge_dir(i)).collect();
    Ok(direction_loop_turns(&dirs))
}

impl CrossingDiagram {
    /// Action (primitive gap) of the chord over crossing `c`, and the index
    /// (0/1 into `crossings[c].passages`) of the upper branch.
    pub fn crossing_action(&self, c: usize) -> (Q, usize) {
        let cr = &self.crossings[c];
        let h0 = &self.passages[cr.passages[0]].h;
        let h1 = &self.passages[cr.passages[1]].h;
        if h0 >= h1 {
            (h0 - h1, 0)
        } else {
            (h1 - h0, 1)
        }
    }

    pub fn crossing_by_label(&self, label: &str) -> Option<usize> {
        self.crossings.iter().position(|c| c.label == label)
    }

    /// Smallest bounded-face area (used as a search bound denominator).
    pub fn min_face_area(&self) -> Q {
        let mut min: Option<Q> = None;
        for (i, f) in self.faces.iter().enumerate() {
            if i == self.unbounded_face {
                continue;
            }
            let a = f.area();
            if min.as_ref().map_or(true, |m| &a < m) {
                min = Some(a);
            }
        }
        min.unwrap_or_else(Q::one)
    }
}

// ---------------------------------------------------------------------------
// Action profiles under the two area forms.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AreaForm {
    Standard,
    Lefschetz,
}

#[derive(Clone, Debug)]
pub struct CrossingAction {
    pub label: String,
    /// Index (0/1) of the upper branch among the crossing's passages.
    pub upper_branch: usize,
    pub exact_gap: Option<Q>,
    pub numeric_gap: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ActionProfile {
    pub form: AreaForm,
    pub crossings: Vec<CrossingAction>,
    /// Σ_F winding·area under the standard form (exact).
    pub enclosed_exact: Option<Q>,
    /// Holonomy of the Lefschetz primitive around the curve (numeric).
    pub enclosed_numeric: Option<f64>,
    /// Lefschetz only: true when no crossing gap lies within `pi_slack` of a
    /// multiple of π.
    pub embedded_lift: Option<bool>,
}

/// Numeric tolerances for the Lefschetz-form diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct LefschetzTolerance {
    /// Absolute quadrature tolerance (default 1e−9).
    pub abs_tol: f64,
    /// Slack for comparisons against multiples of π (default 1e−6).
    pub pi_slack: f64,
}

impl Default for LefschetzTolerance {
    fn default() -> Self {
        LefschetzTolerance {
            abs_tol: 1e-9,
            pi_slack: 1e-6,
        }
    }
}

fn to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Closed-form value of (cross(p,q)/2)·∫₀¹ dt/|p + t(q−p)|, the increment of
/// the Lefschetz primitive (s/2)dθ along the segment p→q.
fn lefschetz_segment(p: &Pt, q: &Pt) -> Result<f64> {
    let d = q.sub(p);
    let a = to_f64(&dot(&d, &d));
    let w = to_f64(&cross(p, q)) / 2.0;
    if a == 0.0 || w == 0.0 {
        return Ok(0.0);
    }
    let b = 2.0 * to_f64(&dot(p, &d));
    let c = to_f64(&dot(p, p));
    let sa = a.sqrt();
    let val = |t: f64| -> f64 {
        let r = (a * t * t + b * t + c).max(0.0).sqrt();
        2.0 * sa * r + 2.0 * a * t + b
    };
    let (v1, v0) = (val(1.0), val(0.0));
    if v1 <= 0.0 || v0 <= 0.0 {
        return Err(Error::Degenerate(
            "segment passes too close to the origin for the Lefschetz integral".into(),
        ));
    }
    Ok(w * (v1.ln() - v0.ln()) / sa)
}

/// Adaptive-Simpson oracle for the same segment integral, independent of the
/// closed-form antiderivative.
pub fn lefschetz_segment_quadrature(p: &Pt, q: &Pt, tol: f64) -> f64 {
    let d = q.sub(p);
    let a = to_f64(&dot(&d, &d));
    let w = to_f64(&cross(p, q)) / 2.0;
    if a == 0.0 || w == 0.0 {
        return 0.0;
    }
    let b = 2.0 * to_f64(&dot(p, &d));
    let c = to_f64(&dot(p, p));
    let f = move |t: f64| 1.0 / (a * t * t + b * t + c).sqrt();
    fn simpson(_f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, flo: f64, fmid: f64, fhi: f64) -> f64 {
        (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
    }
    fn adapt(
        f: &dyn Fn(f64) -> f64,
        lo: f64,
        hi: f64,
        flo: f64,
        fmid: f64,
        fhi: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let mid = 0.5 * (lo + hi);
        let flm = f(0.5 * (lo + mid));
        let frm = f(0.5 * (mid + hi));
        let left = simpson(f, lo, mid, flo, flm, fmid);
        let right = simpson(f, mid, hi, fmid, frm, fhi);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            adapt(f, lo, mid, flo, flm, fmid, left, tol / 2.0, depth - 1)
                + adapt(f, mid, hi, fmid, frm, fhi, right, tol / 2.0, depth - 1)
        }
    }
    let (flo, fmid, fhi) = (f(0.0), f(0.5), f(1.0));
    let whole = simpson(&f, 0.0, 1.0, flo, fmid, fhi);
    w * adapt(&f, 0.0, 1.0, flo, fmid, fhi, whole, tol / w.abs().max(1.0), 40)
}

fn polyline_lefschetz(points: &[Pt]) -> Result<f64> {
    let mut acc = 0.0;
    for w in points.windows(2) {
        acc += lefschetz_segment(&w[0], &w[1])?;
    }
    Ok(acc)
}

/// Lefschetz areas of every face (Stokes over the boundary walk).
pub fn lefschetz_face_areas(diagram: &CrossingDiagram) -> Result<Vec<f64>> {
    let mut areas = Vec::with_capacity(diagram.faces.len());
    for f in &diagram.faces {
        let mut acc = 0.0;
        for &d in &f.darts {
            let pts = &diagram.arcs[dart_arc(d)].points;
            if dart_is_backward(d) {
                let rev: Vec<Pt> = pts.iter().rev().cloned().collect();
                acc += polyline_lefschetz(&rev)?;
            } else {
                acc += polyline_lefschetz(pts)?;
            }
        }
        areas.push(acc);
    }
    Ok(areas)
}

/// Same face areas by the independent adaptive-quadrature oracle.
pub fn lefschetz_face_areas_oracle(diagram: &CrossingDiagram, tol: f64) -> Vec<f64> {
    diagram
        .faces
        .iter()
        .map(|f| {
            let mut acc = 0.0;
            for &d in &f.darts {
                let pts = &diagram.arcs[dart_arc(d)].points;
                let iter: Vec<Pt> = if dart_is_backward(d) {
                    pts.iter().rev().cloned().collect()
                } else {
                    pts.clone()
                };
                for w in iter.windows(2) {
                    acc += lefschetz_segment_quadrature(&w[0], &w[1], tol);
                }
            }
            acc
        })
        .collect()
}

/// Action report under the chosen area form.
pub fn action_profile(
    diagram: &CrossingDiagram,
    form: AreaForm,
    tol: LefschetzTolerance,
) -> Result<ActionProfile> {
    match form {
        AreaForm::Standard => {
            let crossings = (0..diagram.crossings.len())
                .map(|c| {
                    let (gap, upper) = diagram.crossing_action(c);
                    CrossingAction {
                        label: diagram.crossings[c].label.clone(),
                        upper_branch: upper,
                        exact_gap: Some(gap),
                        numeric_gap: None,
                    }
                })
                .collect();
            Ok(ActionProfile {
                form,
                crossings,
                enclosed_exact: Some(diagram.enclosed_area.clone()),
                enclosed_numeric: None,
                embedded_lift: None,
            })
        }
        AreaForm::Lefschetz => {
            // Lefschetz primitive at each passage, integrated from vertex 0.
            let curve = &diagram.curve;
            let mut prim = Vec::with_capacity(diagram.passages.len());
            let mut base = 0.0;
            let mut edge = 0usize;
            for p in &diagram.passages {
                while edge < p.edge {
                    let (a, b) = curve.edge(edge);
                    base += lefschetz_segment(a, b)?;
                    edge += 1;
                }
                let (a, _) = curve.edge(p.edge);
                prim.push(base + lefschetz_segment(a, &p.point)?);
            }
            let mut holonomy = base;
            for e in edge..curve.edge_count() {
                let (a, b) = curve.edge(e);
                holonomy += lefschetz_segment(a, b)?;
            }
            let mut crossings = Vec::new();
            let mut embedded = true;
            for (c, cr) in diagram.crossings.iter().enumerate() {
                let (_, upper) = diagram.crossing_action(c);
                let g = (prim[cr.passages[0]] - prim[cr.passages[1]]).abs();
                let k = (g / std::f64::consts::PI).round();
                if (g - k * std::f64::consts::PI).abs() <= tol.pi_slack {
                    embedded = false;
                }
                crossings.push(CrossingAction {
                    label: cr.label.clone(),
                    upper_branch: upper,
                    exact_gap: None,
                    numeric_gap: Some(g),
                });
            }
            Ok(ActionProfile {
                form,
                crossings,
                enclosed_exact: None,
                enclosed_numeric: Some(holonomy),
                embedded_lift: Some(embedded),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Loose-chart diagnostic.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct LooseVerdict {
    pub crossing: String,
    /// Lefschetz area of the monogon face.
    pub area_a: f64,
    /// Lefschetz area of the face meeting the monogon only at the crossing.
    pub area_b: f64,
    pub loose_candidate: bool,
}

/// Monogon faces at crossing `c`: faces whose boundary is a single arc from
/// the crossing back to itself.
fn monogons_at(diagram: &CrossingDiagram, c: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, f) in diagram.faces.iter().enumerate() {
        if i == diagram.unbounded_face || f.darts.len() != 1 {
            continue;
        }
        let a = dart_arc(f.darts[0]);
        let arc = &diagram.arcs[a];
        if diagram.passages[arc.from_passage].crossing == c
            && diagram.passages[arc.to_passage].crossing == c
        {
            out.push(i);
        }
    }
    out
}

/// Teardrop-area comparison at a crossing: A = the monogon face, B = the face
/// occupying the opposite sector at the crossing.
pub fn loose_chart_test(diagram: &CrossingDiagram, crossing_label: &str) -> Result<LooseVerdict> {
    let c = diagram
        .crossing_by_label(crossing_label)
        .ok_or_else(|| Error::Schema(format!("unknown crossing {crossing_label:?}")))?;
    let monos = monogons_at(diagram, c);
    let a_face = *monos
        .first()
        .ok_or_else(|| Error::Degenerate(format!("no teardrop at crossing {crossing_label}")))?;
    // The monogon occupies exactly one sector of the quadrant frame; B is the
    // face of the opposite sector (two steps along the ring).
    let quads = &diagram.crossings[c].quadrants;
    let pos = quads
        .iter()
        .position(|q| q.face == a_face)
        .ok_or_else(|| Error::Internal("monogon missing from its crossing's quadrants".into()))?;
    let b_face = quads[(pos + 2) % 4].face;
    let areas = lefschetz_face_areas(diagram)?;
    let (area_a, area_b) = (areas[a_face], areas[b_face]);
    Ok(LooseVerdict {
        crossing: crossing_label.to_string(),
        area_a,
        area_b,
        loose_candidate: area_a < area_b,
    })
}

/// All teardrop verdicts of the diagram (one per monogon face).
pub fn loose_chart_scan(diagram: &CrossingDiagram) -> Result<Vec<LooseVerdict>> {
    let areas = lefschetz_face_areas(diagram)?;
    let mut out = Vec::new();
    for c in 0..diagram.crossings.len() {
        for a_face in monogons_at(diagram, c) {
            let quads = &diagram.crossings[c].quadrants;
            let pos = quads
                .iter()
                .position(|q| q.face == a_face)
                .ok_or_else(|| Error::Internal("monogon missing from quadrant frame".into()))?;
            let b_face = quads[(pos + 2) % 4].face;
            out.push(LooseVerdict {
                crossing: diagram.crossings[c].label.clone(),
                area_a: areas[a_face],
                area_b: areas[b_face],
                loose_candidate: areas[a_face] < areas[b_face],
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Symmetric quotient.
// ---------------------------------------------------------------------------

/// Quotient a −1-invariant configuration by the central symmetry via angle
/// doubling (per-vertex z ↦ z²), returning the quotient curve together with
/// the cone markers coming from transverse axis intersections.
///
/// Two symmetric configurations are accepted: a single closed polyline whose
/// vertex list satisfies the half-period shift v_{i+n/2} = −v_i (the quotient
/// traverses the first half), and a curve flagged `symmetric_component`
/// representing one component `C` of `C ∪ (−C)` (the quotient traverses all
/// of `C`).
pub fn quotient_symmetric(curve: &PlanarCurve) -> Result<(PlanarCurve, Markers)> {
    validate(curve)?;
    let n = curve.vertices.len();
    let fundamental: Vec<Pt>;
    let closing_negated: bool;
    if curve.symmetric_component {
        // The two components must be disjoint for the configuration to be a
        // generic immersion.
        for i in 0..n {
            for j in 0..n {
                let (a, b) = curve.edge(i);
                let (c, d) = curve.edge(j);
                let (nc, nd) = (c.neg(), d.neg());
                if improper_contact(a, b, &nc, &nd)
                    || proper_intersection(a, b, &nc, &nd).is_some()
                {
                    return Err(Error::Degenerate(format!(
                        "component meets its central reflection (edges {i}, {j})"
                    )));
                }
            }
        }
        fundamental = curve.vertices.clone();
        closing_negated = false;
    } else {
        if n % 2 != 0 {
            return Err(Error::ModeMismatch("not −1-invariant".into()));
        }
        let half = n / 2;
        for i in 0..n {
            if curve.vertices[(i + half) % n] != curve.vertices[i].neg() {
                return Err(Error::ModeMismatch("not −1-invariant".into()));
            }
        }
        fundamental = curve.vertices[..half].to_vec();
        closing_negated = true;
    }

    let m = fundamental.len();
    let quotient_vertices: Vec<Pt> = fundamental.iter().map(|v| v.square()).collect();

    // Axis intersections of the fundamental domain (one marker per ± pair of
    // the full symmetric configuration).
    let mut cone_markers = Vec::new();
    for i in 0..m {
        let a = &fundamental[i];
        let b = if i + 1 < m {
            fundamental[i + 1].clone()
        } else if closing_negated {
            fundamental[0].neg()
        } else {
            fundamental[0].clone()
        };
        if a.x.is_zero() || (a.x.is_positive() == b.x.is_positive() && !b.x.is_zero()) {
            if a.x.is_zero() {
                return Err(Error::Degenerate(
                    "axis intersection non-transverse (vertex on the axis)".into(),
                ));
            }
            continue;
        }
        if b.x.is_zero() {
            return Err(Error::Degenerate(
                "axis intersection non-transverse (vertex on the axis)".into(),
            ));
        }
        // Strict sign change: transverse crossing at parameter t.
        let t = -&a.x / (&b.x - &a.x);
        cone_markers.push(MarkerPos { edge: i, t });
    }

    // Transport the basepoint (if any) through the quotient: same edge of the
    // fundamental domain, same parameter.
    let basepoint = curve.basepoint.as_ref().map(|bp| MarkerPos {
        edge: bp.edge % m,
        t: bp.t.clone(),
    });

    let mut quotient = PlanarCurve {
        name: format!("{}/quotient", curve.name),
        vertices: quotient_vertices,
        basepoint,
        cone_markers,
        exact: false,
        symmetric_component: false,
    };
    validate(&quotient)?;
    // The quotient is flagged exact exactly when its winding-weighted area
    // vanishes.
    let mut h_total = Q::zero();
    for e in 0..quotient.edge_count() {
        let (a, b) = quotient.edge(e);
        h_total += h_partial(a, b, &Q::one());
    }
    quotient.exact = h_total.is_zero();
    let markers = Markers {
        basepoint: quotient.basepoint.clone(),
        cone_markers: quotient.cone_markers.clone(),
    };
    Ok((quotient, markers))
}

// ---------------------------------------------------------------------------
// Degree computation (planar double-point index).
// ---------------------------------------------------------------------------

/// Writhe-style sign of crossing `c`: the orientation of (upper direction,
/// lower direction).
pub fn crossing_writhe_sign(diagram: &CrossingDiagram, c: usize) -> i32 {
    let (_, upper) = diagram.crossing_action(c);
    let cr = &diagram.crossings[c];
    let up = &diagram.passages[cr.passages[upper]];
    let low = &diagram.passages[cr.passages[1 - upper]];
    cross_sign(&up.dir, &low.dir)
}

/// Grading of crossing `c` from the tangent rotation along the capping path
/// (upper branch to lower branch along the orientation), closed up by the
/// rotation of angle < π from the terminal to the initial direction, with a
/// parity correction at negatively signed crossings.
pub fn crossing_degree(diagram: &CrossingDiagram, c: usize) -> i64 {
    let (_, upper) = diagram.crossing_action(c);
    let cr = &diagram.crossings[c];
    let start = cr.passages[upper];
    let end = cr.passages[1 - upper];
    // Direction sequence along the arcs from the upper passage to the lower
    // passage, following orientation.
    let np = diagram.passages.len();
    let mut dirs: Vec<Pt> = Vec::new();
    let mut p = start;
    loop {
        let arc = &diagram.arcs[p];
        for w in arc.points.windows(2) {
            let d = w[1].sub(&w[0]);
            if !(d.x.is_zero() && d.y.is_zero()) {
                dirs.push(d);
            }
        }
        p = (p + 1) % np;
        if p == end {
            break;
        }
    }
    // Closing rotation: from the terminal direction back to the initial one,
    // through the angle of magnitude < π; appending the initial direction at
    // the end realizes it for the turning count (the sequence is read
    // cyclically, so dirs as-is already closes through the short rotation).
    let turns = direction_loop_turns(&dirs);
    let base = -2 * turns - 1;
    if crossing_writhe_sign(diagram, c) < 0 {
        base + 1
    } else {
        base
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_json(vertices: &[(i64, i64)], extra: &str) -> String {
        let verts: Vec<String> = vertices
            .iter()
            .map(|(x, y)| format!("[{x},1,{y},1]"))
            .collect();
        format!(
            "{{\"name\":\"t\",\"vertices\":[{}],\"closed\":true{}}}",
            verts.join(","),
            extra
        )
    }

    #[test]
    fn rejects_repeated_vertex() {
        let doc = curve_json(&[(1, 1), (2, 1), (2, 1), (2, 2)], "");
        let err = load_curve(&doc).unwrap_err();
        assert!(err.to_string().contains("degenerate edge"));
    }

    #[test]
    fn rejects_origin_vertex() {
        let doc = curve_json(&[(0, 0), (2, 0), (1, 1)], "");
        assert!(load_curve(&doc).is_err());
    }

    #[test]
    fn square_has_two_faces() {
        let doc = curve_json(&[(1, 1), (4, 1), (4, 4), (1, 4)], "");
        let curve = load_curve(&doc).unwrap();
        let d = analyze(&curve).unwrap();
        assert_eq!(d.crossings.len(), 0);
        assert_eq!(d.faces.len(), 2);
        assert_eq!(d.faces[0].winding, 1);
        assert_eq!(d.tangent_winding, 1);
        assert_eq!(d.origin_face, d.unbounded_face);
    }

    #[test]
    fn figure_eight_combinatorics() {
        // Two equal lobes joined through one crossing; origin outside.
        let doc = curve_json(&[(6, 1), (7, 0), (6, -1), (2, 1), (1, 0), (2, -1)], "");
        let curve = load_curve(&doc).unwrap();
        let d = analyze(&curve).unwrap();
        assert_eq!(d.crossings.len(), 1);
        assert_eq!(d.arcs.len(), 2);
        assert_eq!(d.faces.len(), 3);
        assert_eq!(d.tangent_winding, 0);
        assert!(d.enclosed_area.is_zero());
        let mut windings: Vec<i64> = d.faces.iter().map(|f| f.winding).collect();
        windings.sort();
        assert_eq!(windings, vec![-1, 0, 1]);
    }
}
