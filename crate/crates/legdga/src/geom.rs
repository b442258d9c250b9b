//! Exact rational plane geometry: points, orientation predicates, segment
//! intersection, winding numbers, and tangent-direction rotation counts.
//!
//! Everything here is computed over `BigRational`; no floating point is used
//! except in explicitly numeric routines elsewhere in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// A point (or vector) in the rational plane.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Self {
        Pt { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Pt {
            x: Q::from_integer(BigInt::from(x)),
            y: Q::from_integer(BigInt::from(y)),
        }
    }

    pub fn origin() -> Self {
        Pt {
            x: Q::zero(),
            y: Q::zero(),
        }
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Pt) -> Pt {
        Pt::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Pt) -> Pt {
        Pt::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> Pt {
        Pt::new(-self.x.clone(), -self.y.clone())
    }

    pub fn scale(&self, s: &Q) -> Pt {
        Pt::new(&self.x * s, &self.y * s)
    }

    /// Point at parameter `t` along the segment from `self` to `b`.
    pub fn lerp(&self, b: &Pt, t: &Q) -> Pt {
        self.add(&b.sub(self).scale(t))
    }

    /// Complex squaring `z ↦ z²`: angle doubling with radius squaring.
    pub fn square(&self) -> Pt {
        Pt::new(
            &self.x * &self.x - &self.y * &self.y,
            Q::from_integer(BigInt::from(2)) * &self.x * &self.y,
        )
    }
}

/// 2D cross product `a × b = a.x·b.y − a.y·b.x`.
pub fn cross(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the cross product as -1, 0, +1.
pub fn cross_sign(a: &Pt, b: &Pt) -> i32 {
    sign(&cross(a, b))
}

pub fn sign(q: &Q) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Orientation of the triangle (a, b, c): +1 counterclockwise, -1 clockwise,
/// 0 collinear.
pub fn orient(a: &Pt, b: &Pt, c: &Pt) -> i32 {
    cross_sign(&b.sub(a), &c.sub(a))
}

/// True if `p` lies on the closed segment [a, b].
pub fn on_segment(a: &Pt, b: &Pt, p: &Pt) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let d = b.sub(a);
    let t = dot(&p.sub(a), &d);
    !t.is_negative() && t <= dot(&d, &d)
}

/// Proper (interior-interior, transverse) intersection of segments [a,b] and
/// [c,d]. Returns parameters `(t, s)` with the point `a + t(b−a) = c + s(d−c)`
/// and `0 < t < 1`, `0 < s < 1`.
pub fn proper_intersection(a: &Pt, b: &Pt, c: &Pt, d: &Pt) -> Option<(Q, Q, Pt)> {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = cross(&r, &s);
    if denom.is_zero() {
        return None;
    }
    let ca = c.sub(a);
    let t = cross(&ca, &s) / &denom;
    let u = cross(&ca, &r) / &denom;
    let one = Q::one();
    if t.is_positive() && t < one && u.is_positive() && u < one {
        let p = a.lerp(b, &t);
        Some((t, u, p))
    } else {
        None
    }
}

/// True if the closed segments [a,b] and [c,d] intersect in any way that is
/// *not* a single transverse interior-interior point and not empty: shared
/// endpoints, endpoint in the interior of the other segment, or collinear
/// overlap.
pub fn improper_contact(a: &Pt, b: &Pt, c: &Pt, d: &Pt) -> bool {
    let r = b.sub(a);
    let s = d.sub(c);
    if cross(&r, &s).is_zero() {
        // Parallel: contact iff collinear with overlapping spans.
        if orient(a, b, c) != 0 {
            return false;
        }
        let rr = dot(&r, &r);
        let t0 = dot(&c.sub(a), &r);
        let t1 = dot(&d.sub(a), &r);
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        return !(hi.is_negative() || lo > rr);
    }
    // Transverse lines: contact is improper iff an endpoint of one segment
    // lies on the other (closed) segment.
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Twice the signed area of the closed polygon with the given vertices.
pub fn shoelace2(vertices: &[Pt]) -> Q {
    let n = vertices.len();
    let mut acc = Q::zero();
    for i in 0..n {
        acc += cross(&vertices[i], &vertices[(i + 1) % n]);
    }
    acc
}

/// Winding number of the closed polyline `vertices` around `p`; `p` must not
/// lie on the polyline.
pub fn winding_number(vertices: &[Pt], p: &Pt) -> i64 {
    let n = vertices.len();
    let mut wn: i64 = 0;
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            wn -= 1;
        }
    }
    wn
}

/// True if `u` and `v` point in the same direction (parallel, same sense).
fn parallel_same(u: &Pt, v: &Pt) -> bool {
    cross(u, v).is_zero() && dot(u, v).is_positive()
}

/// Signed count of passages of the short rotation from direction `a` to
/// direction `b` through the reference direction `r`, with the half-open
/// convention that `r = a` counts and `r = b` does not. `a` and `b` must not
/// be antiparallel.
fn passes_through(a: &Pt, b: &Pt, r: &Pt) -> i64 {
    let s = cross_sign(a, b);
    if s == 0 {
        // No turn (parallel same direction) sweeps nothing.
        return 0;
    }
    if s > 0 {
        // Counterclockwise sector [a, b).
        let from_a = cross_sign(a, r) > 0 || parallel_same(a, r);
        let to_b = cross_sign(r, b) > 0;
        i64::from(from_a && to_b)
    } else {
        // Clockwise sector (b, a].
        let from_a = cross_sign(r, a) > 0 || parallel_same(a, r);
        let to_b = cross_sign(b, r) > 0;
        -i64::from(from_a && to_b)
    }
}

/// Rotation number (full turns) of a cyclic sequence of directions where each
/// consecutive turn is through an angle strictly less than π. Consecutive
/// antiparallel directions are a caller bug and yield an error elsewhere; here
/// they would be counted as no turn, so validate before calling.
pub fn direction_loop_turns(dirs: &[Pt]) -> i64 {
    let r = Pt::from_ints(1, 0);
    let n = dirs.len();
    let mut total = 0;
    for i in 0..n {
        total += passes_through(&dirs[i], &dirs[(i + 1) % n], &r);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Pt {
        Pt::from_ints(x, y)
    }

    #[test]
    fn proper_intersection_found() {
        let (t, s, pt) = proper_intersection(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)).unwrap();
        assert_eq!(pt, p(1, 1));
        assert_eq!(t, Q::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(s, Q::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn endpoint_touch_is_improper() {
        assert!(improper_contact(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 2)));
        assert!(improper_contact(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 5)));
        assert!(!improper_contact(&p(0, 0), &p(2, 0), &p(1, 1), &p(1, 2)));
    }

    #[test]
    fn collinear_overlap_is_improper() {
        assert!(improper_contact(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)));
        assert!(!improper_contact(&p(0, 0), &p(2, 0), &p(3, 0), &p(4, 0)));
    }

    #[test]
    fn winding_of_square() {
        let sq = vec![p(1, 1), p(-1, 1), p(-1, -1), p(1, -1)];
        assert_eq!(winding_number(&sq, &Pt::origin()), 1);
        let sq_cw: Vec<Pt> = sq.iter().rev().cloned().collect();
        assert_eq!(winding_number(&sq_cw, &Pt::origin()), -1);
        assert_eq!(winding_number(&sq, &p(3, 0)), 0);
    }

    #[test]
    fn rotation_of_octagon_directions() {
        let dirs = vec![
            p(1, 0),
            p(1, 1),
            p(0, 1),
            p(-1, 1),
            p(-1, 0),
            p(-1, -1),
            p(0, -1),
            p(1, -1),
        ];
        assert_eq!(direction_loop_turns(&dirs), 1);
        let rev: Vec<Pt> = dirs.iter().rev().cloned().collect();
        assert_eq!(direction_loop_turns(&rev), -1);
    }
}
