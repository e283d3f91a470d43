//! Exact integer polyline drawings and their PD codes.
//!
//! Every segment carries a height and a stable id. Where two segments cross
//! in the projection the higher one is over, unless the pair is listed in a
//! switch set. Coordinates are expected below `2^31` in absolute value so
//! all predicates are exact in `i128`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::diagram::{Arc, PlanarDiagram};
use crate::error::{Error, Result};

pub type Point = [i64; 2];

/// Unordered pair of segment ids naming a crossing.
pub type CrossingKey = (u32, u32);

pub fn key(a: u32, b: u32) -> CrossingKey {
    (a.min(b), a.max(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
    pub height: i64,
    pub id: u32,
}

/// Open polyline; `heights[i]` and `ids[i]` belong to `points[i]..points[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<Point>,
    pub heights: Vec<i64>,
    pub ids: Vec<u32>,
}

impl Polyline {
    /// Polyline with ids left at zero, to be assigned by the owner.
    pub fn new(points: Vec<Point>, heights: Vec<i64>) -> Self {
        let ids = alloc::vec![0; heights.len()];
        Self {
            points,
            heights,
            ids,
        }
    }

    pub fn flat(points: Vec<Point>, height: i64) -> Self {
        let n = points.len().saturating_sub(1);
        Self::new(points, alloc::vec![height; n])
    }

    pub fn start(&self) -> Point {
        self.points[0]
    }

    pub fn end(&self) -> Point {
        *self.points.last().expect("nonempty polyline")
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.heights.len()).map(|i| Segment {
            a: self.points[i],
            b: self.points[i + 1],
            height: self.heights[i],
            id: self.ids[i],
        })
    }

    pub fn reversed(&self) -> Self {
        let mut p = self.points.clone();
        p.reverse();
        let mut h = self.heights.clone();
        h.reverse();
        let mut ids = self.ids.clone();
        ids.reverse();
        Self {
            points: p,
            heights: h,
            ids,
        }
    }
}

fn sub(p: Point, q: Point) -> [i128; 2] {
    [p[0] as i128 - q[0] as i128, p[1] as i128 - q[1] as i128]
}

pub fn cross(u: [i128; 2], v: [i128; 2]) -> i128 {
    u[0] * v[1] - u[1] * v[0]
}

/// Twice the signed area of `(a, b, c)`.
pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    cross(sub(b, a), sub(c, a))
}

fn on_segment(p: Point, s: &Segment) -> bool {
    orient(s.a, s.b, p) == 0
        && p[0] >= s.a[0].min(s.b[0])
        && p[0] <= s.a[0].max(s.b[0])
        && p[1] >= s.a[1].min(s.b[1])
        && p[1] <= s.a[1].max(s.b[1])
}

/// Exact parameter `num / den` along a segment, `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Param {
    pub num: i128,
    pub den: i128,
}

impl PartialOrd for Param {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Param {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

fn param(num: i128, den: i128) -> Param {
    if den < 0 {
        Param {
            num: -num,
            den: -den,
        }
    } else {
        Param { num, den }
    }
}

/// How two segments meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contact {
    Disjoint,
    /// Transverse crossing at interior points of both.
    Cross(Param, Param),
    /// They share an endpoint and meet nowhere else.
    Joint(Point),
    /// Any other contact: overlap, or a vertex on the other segment.
    Touch,
}

pub fn contact(s: &Segment, t: &Segment) -> Contact {
    let shared = [s.a, s.b].into_iter().find(|p| *p == t.a || *p == t.b);
    if let Some(p) = shared {
        let other_s = if s.a == p { s.b } else { s.a };
        let other_t = if t.a == p { t.b } else { t.a };
        if other_s == other_t
            || (orient(p, other_s, other_t) == 0 && {
                let u = sub(other_s, p);
                let v = sub(other_t, p);
                u[0] * v[0] + u[1] * v[1] > 0
            })
        {
            return Contact::Touch;
        }
        return Contact::Joint(p);
    }
    let o1 = orient(s.a, s.b, t.a);
    let o2 = orient(s.a, s.b, t.b);
    let o3 = orient(t.a, t.b, s.a);
    let o4 = orient(t.a, t.b, s.b);
    if o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        if (o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0) {
            return Contact::Cross(param(o3, o3 - o4), param(o1, o1 - o2));
        }
        return Contact::Disjoint;
    }
    if on_segment(t.a, s) || on_segment(t.b, s) || on_segment(s.a, t) || on_segment(s.b, t) {
        Contact::Touch
    } else {
        Contact::Disjoint
    }
}

/// A crossing between two segments of a drawing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hit {
    pub over: usize,
    pub under: usize,
    pub t_over: Param,
    pub t_under: Param,
}

/// Heights decide over and under; pairs in `switched` are inverted.
pub fn resolve(
    segs: &[Segment],
    i: usize,
    j: usize,
    ti: Param,
    tj: Param,
    switched: &BTreeSet<CrossingKey>,
) -> Result<Hit> {
    let (s, t) = (&segs[i], &segs[j]);
    if s.height == t.height {
        return Err(Error::Degenerate(format!(
            "segments {} and {} cross at equal height {}",
            s.id, t.id, s.height
        )));
    }
    let mut i_over = s.height > t.height;
    if switched.contains(&key(s.id, t.id)) {
        i_over = !i_over;
    }
    Ok(if i_over {
        Hit {
            over: i,
            under: j,
            t_over: ti,
            t_under: tj,
        }
    } else {
        Hit {
            over: j,
            under: i,
            t_over: tj,
            t_under: ti,
        }
    })
}

/// A drawing with its PD code and, per PD crossing, the segment ids involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extracted {
    pub diagram: PlanarDiagram,
    /// `(over id, under id)` for each PD crossing.
    pub crossings: Vec<(u32, u32)>,
}

/// PD code of closed polygonal components.
///
/// Each component is a cyclic list of segments, `b` of one equal to `a` of
/// the next. Any contact other than a transverse crossing of interior points
/// (or the joint of consecutive segments) is rejected.
pub fn extract(components: &[Vec<Segment>], switched: &BTreeSet<CrossingKey>) -> Result<Extracted> {
    let mut segs: Vec<Segment> = Vec::new();
    let mut owner: Vec<(usize, usize)> = Vec::new();
    for (c, comp) in components.iter().enumerate() {
        if comp.is_empty() {
            return Err(Error::Degenerate(format!("component {c} is empty")));
        }
        for (k, s) in comp.iter().enumerate() {
            if s.a == s.b {
                return Err(Error::Degenerate(format!(
                    "segment {} has zero length",
                    s.id
                )));
            }
            let next = &comp[(k + 1) % comp.len()];
            if s.b != next.a {
                return Err(Error::Degenerate(format!(
                    "component {c} is not closed at segment {}",
                    s.id
                )));
            }
            segs.push(*s);
            owner.push((c, k));
        }
    }
    let consecutive = |i: usize, j: usize| {
        let ((ci, ki), (cj, kj)) = (owner[i], owner[j]);
        let m = components[ci].len();
        ci == cj && (ki + 1) % m == kj || ci == cj && (kj + 1) % m == ki
    };
    let mut hits: Vec<Hit> = Vec::new();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            match contact(&segs[i], &segs[j]) {
                Contact::Disjoint => {}
                Contact::Joint(_) if consecutive(i, j) => {}
                Contact::Cross(ti, tj) => hits.push(resolve(&segs, i, j, ti, tj, switched)?),
                _ => {
                    return Err(Error::Degenerate(format!(
                        "segments {} and {} touch",
                        segs[i].id, segs[j].id
                    )));
                }
            }
        }
    }
    // no three segments through one point
    for (h, x) in hits.iter().enumerate() {
        for y in &hits[h + 1..] {
            for (s, t) in [(x.over, x.t_over), (x.under, x.t_under)] {
                for (s2, t2) in [(y.over, y.t_over), (y.under, y.t_under)] {
                    if s == s2 && t == t2 {
                        return Err(Error::Degenerate(format!(
                            "triple point on segment {}",
                            segs[s].id
                        )));
                    }
                }
            }
        }
    }
    // passes along each segment, ordered by parameter
    let mut on_seg: Vec<Vec<(Param, usize, bool)>> = alloc::vec![Vec::new(); segs.len()];
    for (h, x) in hits.iter().enumerate() {
        on_seg[x.over].push((x.t_over, h, true));
        on_seg[x.under].push((x.t_under, h, false));
    }
    for v in &mut on_seg {
        v.sort();
    }
    // arcs: the arc after the p-th pass of a component is base + p
    let mut incoming_over: Vec<Arc> = alloc::vec![0; hits.len()];
    let mut outgoing_over: Vec<Arc> = alloc::vec![0; hits.len()];
    let mut incoming_under: Vec<Arc> = alloc::vec![0; hits.len()];
    let mut outgoing_under: Vec<Arc> = alloc::vec![0; hits.len()];
    let mut label: Arc = 1;
    let mut first = 0;
    for comp in components {
        let passes: Vec<(usize, bool)> = (first..first + comp.len())
            .flat_map(|i| on_seg[i].iter().map(|&(_, h, o)| (h, o)))
            .collect();
        first += comp.len();
        let m = passes.len() as Arc;
        if m == 0 {
            continue;
        }
        for (p, &(h, over)) in passes.iter().enumerate() {
            let p = p as Arc;
            let inc = label + (p + m - 1) % m;
            let out = label + p;
            if over {
                incoming_over[h] = inc;
                outgoing_over[h] = out;
            } else {
                incoming_under[h] = inc;
                outgoing_under[h] = out;
            }
        }
        label += m;
    }
    let mut crossings = Vec::with_capacity(hits.len());
    let mut ids = Vec::with_capacity(hits.len());
    for (h, x) in hits.iter().enumerate() {
        let (u, v) = (&segs[x.under], &segs[x.over]);
        let du = sub(u.b, u.a);
        let dv = sub(v.b, v.a);
        let (ui, uo, oi, oo) = (
            incoming_under[h],
            outgoing_under[h],
            incoming_over[h],
            outgoing_over[h],
        );
        crossings.push(if cross(du, dv) > 0 {
            [ui, oi, uo, oo]
        } else {
            [ui, oo, uo, oi]
        });
        ids.push((v.id, u.id));
    }
    Ok(Extracted {
        diagram: PlanarDiagram::new(components.len(), crossings),
        crossings: ids,
    })
}

/// Closed polygon made of consecutive polylines.
pub fn close(pieces: &[&Polyline]) -> Vec<Segment> {
    pieces.iter().flat_map(|p| p.segments()).collect()
}

/// Strict inside test for a closed polygon; `None` when `p` is on the
/// boundary.
pub fn inside(p: Point, polygon: &[Point]) -> Option<bool> {
    let n = polygon.len();
    let mut winding = 0i32;
    for i in 0..n {
        let (a, b) = (polygon[i], polygon[(i + 1) % n]);
        let s = Segment {
            a,
            b,
            height: 0,
            id: 0,
        };
        if on_segment(p, &s) {
            return None;
        }
        if a[1] <= p[1] {
            if b[1] > p[1] && orient(a, b, p) > 0 {
                winding += 1;
            }
        } else if b[1] <= p[1] && orient(a, b, p) < 0 {
            winding -= 1;
        }
    }
    Some(winding != 0)
}
