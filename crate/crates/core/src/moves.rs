//! Marked diagrams and the variations acting on them: crossing-switch sets,
//! finger moves and interdependent moves.
//!
//! A [`MarkedDiagram`] is an exact polyline drawing of the knot `x`, cut into
//! fixed pieces and reroute slots. Slot `i` holds a [`ReroutePair`]: the
//! active arc is the part of `x` currently drawn, the inactive arc the other
//! half of the guiding circle. Toggling a pair swaps which arc the knot
//! follows. A finger move is a pair of reroutes whose inactive arcs are two
//! fingers that clasp once when both are pushed out.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::geometry::{
    contact, extract, inside, orient, Contact, CrossingKey, Extracted, Point, Polyline, Segment,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Piece {
    Fixed(Polyline),
    Reroute(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReroutePair {
    pub id: u32,
    pub active: Polyline,
    pub inactive: Polyline,
}

impl ReroutePair {
    pub fn endpoints(&self) -> (Point, Point) {
        (self.active.start(), self.active.end())
    }

    /// The guiding circle: active arc followed by the inactive arc reversed.
    pub fn circle(&self) -> Vec<Point> {
        let mut pts = self.active.points.clone();
        pts.pop();
        let mut back = self.inactive.points.clone();
        back.reverse();
        back.pop();
        pts.extend(back);
        pts
    }
}

/// Two reroutes that together realize one finger move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finger {
    pub id: u32,
    /// Finger pushed out from the moving strand.
    pub a: u32,
    /// Finger pushed out from the target strand.
    pub b: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedDiagram {
    pub knot: Vec<Vec<Piece>>,
    pub reroutes: Vec<ReroutePair>,
    pub fingers: Vec<Finger>,
    pub toggled: BTreeSet<u32>,
    pub switched: BTreeSet<CrossingKey>,
}

/// Request to turn the subarc `from..to` of segment `segment` of component
/// `component` into the active arc of a new reroute pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub component: usize,
    pub segment: usize,
    pub from: Point,
    pub to: Point,
    pub inactive: Polyline,
}

/// One variation, viewed as a single move.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveGroup {
    CrossingSwitchSet { crossings: BTreeSet<CrossingKey> },
    FingerMove { finger: u32 },
    Interdependent { reroutes: BTreeSet<u32> },
}

impl MoveGroup {
    pub fn switch(keys: impl IntoIterator<Item = CrossingKey>) -> Self {
        MoveGroup::CrossingSwitchSet {
            crossings: keys.into_iter().collect(),
        }
    }

    pub fn reroute(id: u32) -> Self {
        MoveGroup::Interdependent {
            reroutes: [id].into_iter().collect(),
        }
    }
}

/// `(parameter numerator, denominator)` of `p` along `a..b`, assuming
/// `p` lies on the segment.
fn along(a: Point, b: Point, p: Point) -> (i128, i128) {
    let d = [(b[0] - a[0]) as i128, (b[1] - a[1]) as i128];
    let q = [(p[0] - a[0]) as i128, (p[1] - a[1]) as i128];
    (d[0] * q[0] + d[1] * q[1], d[0] * d[0] + d[1] * d[1])
}

fn strictly_inside_segment(a: Point, b: Point, p: Point) -> bool {
    let (n, d) = along(a, b, p);
    orient(a, b, p) == 0 && n > 0 && n < d
}

impl MarkedDiagram {
    /// Builds a marked diagram from closed knot polylines (last point equal to
    /// the first) and cuts. Reroute ids are cut indices; `fingers` pairs cut
    /// indices. Segment ids are assigned afresh.
    pub fn build(knot: &[Polyline], cuts: Vec<Cut>, fingers: &[(usize, usize)]) -> Result<Self> {
        let mut by_seg: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, c) in cuts.iter().enumerate() {
            let poly = knot.get(c.component).ok_or_else(|| {
                Error::InvalidMove(format!("cut {i}: no component {}", c.component))
            })?;
            if c.segment >= poly.heights.len() {
                return Err(Error::InvalidMove(format!(
                    "cut {i}: no segment {}",
                    c.segment
                )));
            }
            let (a, b) = (poly.points[c.segment], poly.points[c.segment + 1]);
            if !strictly_inside_segment(a, b, c.from) || !strictly_inside_segment(a, b, c.to) {
                return Err(Error::InvalidMove(format!(
                    "cut {i}: endpoints not inside segment"
                )));
            }
            let (nf, _) = along(a, b, c.from);
            let (nt, _) = along(a, b, c.to);
            if nf >= nt {
                return Err(Error::InvalidMove(format!(
                    "cut {i}: endpoints out of order"
                )));
            }
            if c.inactive.start() != c.from || c.inactive.end() != c.to {
                return Err(Error::InvalidMove(format!(
                    "cut {i}: inactive arc does not share the endpoints"
                )));
            }
            by_seg.entry((c.component, c.segment)).or_default().push(i);
        }
        let mut reroutes: Vec<Option<ReroutePair>> = vec![None; cuts.len()];
        let mut comps = Vec::new();
        for (ci, poly) in knot.iter().enumerate() {
            if poly.points.len() < 3 || poly.start() != poly.end() {
                return Err(Error::Degenerate(format!(
                    "component {ci} is not a closed polyline"
                )));
            }
            let mut pieces = Vec::new();
            let mut cur_pts = vec![poly.points[0]];
            let mut cur_h = Vec::new();
            for s in 0..poly.heights.len() {
                let (a, b) = (poly.points[s], poly.points[s + 1]);
                let h = poly.heights[s];
                let mut here = by_seg.get(&(ci, s)).cloned().unwrap_or_default();
                here.sort_by_key(|&i| along(a, b, cuts[i].from).0);
                let mut last_to: Option<(i128, usize)> = None;
                for &i in &here {
                    let c = &cuts[i];
                    if let Some((t, j)) = last_to {
                        if along(a, b, c.from).0 <= t {
                            return Err(Error::InvalidMove(format!("cuts {j} and {i} overlap")));
                        }
                    }
                    cur_pts.push(c.from);
                    cur_h.push(h);
                    pieces.push(Piece::Fixed(Polyline::new(
                        core::mem::take(&mut cur_pts),
                        core::mem::take(&mut cur_h),
                    )));
                    pieces.push(Piece::Reroute(i as u32));
                    reroutes[i] = Some(ReroutePair {
                        id: i as u32,
                        active: Polyline::flat(vec![c.from, c.to], h),
                        inactive: c.inactive.clone(),
                    });
                    cur_pts.push(c.to);
                    last_to = Some((along(a, b, c.to).0, i));
                }
                cur_pts.push(b);
                cur_h.push(h);
            }
            pieces.push(Piece::Fixed(Polyline::new(cur_pts, cur_h)));
            comps.push(pieces);
        }
        let reroutes: Vec<ReroutePair> = reroutes
            .into_iter()
            .map(|r| r.expect("every cut placed"))
            .collect();
        let fingers = fingers
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| Finger {
                id: i as u32,
                a: a as u32,
                b: b as u32,
            })
            .collect();
        let mut m = MarkedDiagram {
            knot: comps,
            reroutes,
            fingers,
            toggled: BTreeSet::new(),
            switched: BTreeSet::new(),
        };
        m.assign_ids();
        m.check_structure()?;
        Ok(m)
    }

    /// Marked diagram from explicit pieces. Segment ids are assigned afresh.
    pub fn from_pieces(
        knot: Vec<Vec<Piece>>,
        reroutes: Vec<ReroutePair>,
        fingers: Vec<Finger>,
    ) -> Result<Self> {
        let mut m = MarkedDiagram {
            knot,
            reroutes,
            fingers,
            toggled: BTreeSet::new(),
            switched: BTreeSet::new(),
        };
        m.assign_ids();
        m.check_structure()?;
        Ok(m)
    }

    fn assign_ids(&mut self) {
        let mut next = 0u32;
        let mut fresh = |p: &mut Polyline| {
            for id in p.ids.iter_mut() {
                *id = next;
                next += 1;
            }
        };
        for comp in &mut self.knot {
            for piece in comp {
                if let Piece::Fixed(p) = piece {
                    fresh(p);
                }
            }
        }
        for r in &mut self.reroutes {
            fresh(&mut r.active);
            fresh(&mut r.inactive);
        }
    }

    pub fn knot_components(&self) -> usize {
        self.knot.len()
    }

    pub fn reroute(&self, id: u32) -> Result<&ReroutePair> {
        self.reroutes
            .iter()
            .find(|r| r.id == id)
            .ok_or(Error::UnknownReroute(id))
    }

    pub fn finger(&self, id: u32) -> Result<&Finger> {
        self.fingers
            .iter()
            .find(|f| f.id == id)
            .ok_or_else(|| Error::InvalidMove(format!("unknown finger move {id}")))
    }

    /// Structural invariants: closed chains, each reroute used once, shared
    /// endpoints, unique segment ids.
    pub fn check_structure(&self) -> Result<()> {
        let mut used = BTreeSet::new();
        for (ci, comp) in self.knot.iter().enumerate() {
            let mut ends: Vec<(Point, Point)> = Vec::new();
            for piece in comp {
                match piece {
                    Piece::Fixed(p) => {
                        if p.points.len() < 2
                            || p.points.len() != p.heights.len() + 1
                            || p.ids.len() != p.heights.len()
                        {
                            return Err(Error::Degenerate(format!(
                                "malformed polyline in component {ci}"
                            )));
                        }
                        ends.push((p.start(), p.end()));
                    }
                    Piece::Reroute(id) => {
                        if !used.insert(*id) {
                            return Err(Error::InvalidMove(format!("reroute {id} used twice")));
                        }
                        ends.push(self.reroute(*id)?.endpoints());
                    }
                }
            }
            for k in 0..ends.len() {
                if ends[k].1 != ends[(k + 1) % ends.len()].0 {
                    return Err(Error::Degenerate(format!("component {ci} is not closed")));
                }
            }
        }
        let mut ids = BTreeSet::new();
        let mut all = |p: &Polyline| -> Result<()> {
            for &i in &p.ids {
                if !ids.insert(i) {
                    return Err(Error::Degenerate(format!("segment id {i} repeated")));
                }
            }
            Ok(())
        };
        for comp in &self.knot {
            for piece in comp {
                if let Piece::Fixed(p) = piece {
                    all(p)?;
                }
            }
        }
        for r in &self.reroutes {
            if !used.contains(&r.id) {
                return Err(Error::UnknownReroute(r.id));
            }
            if r.active.start() != r.inactive.start() || r.active.end() != r.inactive.end() {
                return Err(Error::InvalidMove(format!(
                    "reroute {}: arcs do not share endpoints",
                    r.id
                )));
            }
            all(&r.active)?;
            all(&r.inactive)?;
        }
        for f in &self.fingers {
            self.reroute(f.a)?;
            self.reroute(f.b)?;
            if f.a == f.b {
                return Err(Error::InvalidMove(format!(
                    "finger move {} uses one reroute twice",
                    f.id
                )));
            }
        }
        Ok(())
    }

    /// Arc the knot currently follows through reroute `r`.
    pub fn current_arc<'a>(&self, r: &'a ReroutePair) -> &'a Polyline {
        if self.toggled.contains(&r.id) {
            &r.inactive
        } else {
            &r.active
        }
    }

    /// Arc of reroute `r` not currently part of the knot.
    pub fn spare_arc<'a>(&self, r: &'a ReroutePair) -> &'a Polyline {
        if self.toggled.contains(&r.id) {
            &r.active
        } else {
            &r.inactive
        }
    }

    /// Segments of each knot component in the current configuration.
    pub fn knot_segments(&self) -> Result<Vec<Vec<Segment>>> {
        self.knot
            .iter()
            .map(|comp| {
                let mut segs = Vec::new();
                for piece in comp {
                    match piece {
                        Piece::Fixed(p) => segs.extend(p.segments()),
                        Piece::Reroute(id) => {
                            segs.extend(self.current_arc(self.reroute(*id)?).segments())
                        }
                    }
                }
                Ok(segs)
            })
            .collect()
    }

    pub fn extracted(&self) -> Result<Extracted> {
        extract(&self.knot_segments()?, &self.switched)
    }

    /// PD code of the knot in the current configuration.
    pub fn diagram(&self) -> Result<PlanarDiagram> {
        Ok(self.extracted()?.diagram)
    }

    /// Every segment of every polyline, by id.
    pub fn all_segments(&self) -> BTreeMap<u32, Segment> {
        let mut out = BTreeMap::new();
        for comp in &self.knot {
            for piece in comp {
                if let Piece::Fixed(p) = piece {
                    out.extend(p.segments().map(|s| (s.id, s)));
                }
            }
        }
        for r in &self.reroutes {
            out.extend(r.active.segments().map(|s| (s.id, s)));
            out.extend(r.inactive.segments().map(|s| (s.id, s)));
        }
        out
    }

    fn reroute_ids(&self, g: &MoveGroup) -> Result<BTreeSet<u32>> {
        Ok(match g {
            MoveGroup::CrossingSwitchSet { .. } => BTreeSet::new(),
            MoveGroup::FingerMove { finger } => {
                let f = self.finger(*finger)?;
                [f.a, f.b].into_iter().collect()
            }
            MoveGroup::Interdependent { reroutes } => {
                for &r in reroutes {
                    self.reroute(r)?;
                }
                reroutes.clone()
            }
        })
    }

    fn check_switch_keys(&self, keys: &BTreeSet<CrossingKey>) -> Result<()> {
        let segs = self.all_segments();
        for &(a, b) in keys {
            let (Some(s), Some(t)) = (segs.get(&a), segs.get(&b)) else {
                return Err(Error::InvalidMove(format!(
                    "crossing ({a}, {b}) names an unknown segment"
                )));
            };
            if !matches!(contact(s, t), Contact::Cross(..)) {
                return Err(Error::InvalidMove(format!(
                    "segments {a} and {b} do not cross"
                )));
            }
        }
        Ok(())
    }

    /// Applies one move group.
    pub fn apply(&self, g: &MoveGroup) -> Result<Self> {
        let mut m = self.clone();
        match g {
            MoveGroup::CrossingSwitchSet { crossings } => {
                self.check_switch_keys(crossings)?;
                for k in crossings {
                    if !m.switched.remove(k) {
                        m.switched.insert(*k);
                    }
                }
            }
            _ => {
                for r in self.reroute_ids(g)? {
                    if !m.toggled.remove(&r) {
                        m.toggled.insert(r);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Errors when two groups of `groups` share a crossing or a reroute.
    pub fn check_compatible(&self, groups: &[MoveGroup]) -> Result<()> {
        let mut seen_keys: BTreeMap<CrossingKey, usize> = BTreeMap::new();
        let mut seen_reroutes: BTreeMap<u32, usize> = BTreeMap::new();
        for (i, g) in groups.iter().enumerate() {
            if let MoveGroup::CrossingSwitchSet { crossings } = g {
                self.check_switch_keys(crossings)?;
                for k in crossings {
                    if let Some(j) = seen_keys.insert(*k, i) {
                        return Err(Error::Incompatible(j, i));
                    }
                }
            }
            for r in self.reroute_ids(g)? {
                if let Some(j) = seen_reroutes.insert(r, i) {
                    return Err(Error::Incompatible(j, i));
                }
            }
        }
        Ok(())
    }

    /// Marked diagram with the groups of `groups` selected by `mask` applied,
    /// in index order. Compatibility is the caller's responsibility.
    pub fn apply_mask(&self, groups: &[MoveGroup], mask: u64) -> Result<Self> {
        let mut m = self.clone();
        for (i, g) in groups.iter().enumerate() {
            if mask >> i & 1 == 1 {
                m = m.apply(g)?;
            }
        }
        Ok(m)
    }

    /// The knot `x_sigma` for the subset `sigma` (a bit mask) of `groups`.
    pub fn apply_subset(&self, groups: &[MoveGroup], sigma: u64) -> Result<PlanarDiagram> {
        self.check_compatible(groups)?;
        self.apply_mask(groups, sigma)?.diagram()
    }

    /// The two reroute pairs whose circles guide finger move `finger`.
    pub fn finger_to_interdependent(&self, finger: u32) -> Result<(ReroutePair, ReroutePair)> {
        let f = self.finger(finger)?;
        Ok((self.reroute(f.a)?.clone(), self.reroute(f.b)?.clone()))
    }

    /// Vertices of everything drawn in some configuration, except the
    /// listed reroutes' inactive arcs.
    fn vertices_except(&self, skip_inactive: &[u32]) -> Vec<Point> {
        let mut out = Vec::new();
        for comp in &self.knot {
            for piece in comp {
                if let Piece::Fixed(p) = piece {
                    out.extend(p.points.iter().copied());
                }
            }
        }
        for r in &self.reroutes {
            out.extend(r.active.points.iter().copied());
            if !skip_inactive.contains(&r.id) {
                out.extend(r.inactive.points.iter().copied());
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks that each circle of finger move `finger` bounds an empty flat
    /// disk: no vertex drawn by anything other than the finger's partner
    /// lies inside or on the circle, and every configuration of the two
    /// reroutes is in general position.
    pub fn validate_finger(&self, finger: u32) -> Result<()> {
        let f = *self.finger(finger)?;
        for (own, partner) in [(f.a, f.b), (f.b, f.a)] {
            let r = self.reroute(own)?;
            let circle = r.circle();
            let mine: BTreeSet<Point> = circle.iter().copied().collect();
            for v in self.vertices_except(&[own, partner]) {
                if mine.contains(&v) {
                    continue;
                }
                if inside(v, &circle) != Some(false) {
                    return Err(Error::InvalidMove(format!(
                        "finger {finger}: vertex {v:?} inside the disk of reroute {own}"
                    )));
                }
            }
        }
        let (ra, rb) = (self.reroute(f.a)?, self.reroute(f.b)?);
        let own: BTreeSet<u32> = ra
            .inactive
            .ids
            .iter()
            .chain(&rb.inactive.ids)
            .copied()
            .collect();
        let hs = ra.inactive.heights.iter().chain(&rb.inactive.heights);
        let (lo, hi) = (
            hs.clone().min().copied().unwrap_or(0) - 1,
            hs.max().copied().unwrap_or(0) + 1,
        );
        for s in self.all_segments().values() {
            if !own.contains(&s.id) && s.height >= lo && s.height <= hi {
                return Err(Error::InvalidMove(format!(
                    "finger {finger}: height {} of segment {} is in the finger band",
                    s.height, s.id
                )));
            }
        }
        for mask in 0..4u64 {
            let mut m = self.clone();
            for (i, id) in [f.a, f.b].into_iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m.toggled.insert(id);
                }
            }
            m.extracted()?;
        }
        Ok(())
    }
}

/// A point of a closed knot polyline: `at / 1024` of the way along segment
/// `segment` of component `component`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Site {
    pub component: usize,
    pub segment: usize,
    pub at: u32,
}

const SITE_DENOM: i64 = 1024;

fn site_point(knot: &[Polyline], s: Site) -> Result<(Point, [i64; 2])> {
    let poly = knot
        .get(s.component)
        .ok_or_else(|| Error::InvalidMove(format!("no component {}", s.component)))?;
    if s.segment >= poly.heights.len() || s.at == 0 || s.at as i64 >= SITE_DENOM {
        return Err(Error::InvalidMove(format!("bad site {s:?}")));
    }
    let (a, b) = (poly.points[s.segment], poly.points[s.segment + 1]);
    let e = [b[0] - a[0], b[1] - a[1]];
    if e[0] % (4 * SITE_DENOM) != 0 || e[1] % (4 * SITE_DENOM) != 0 {
        return Err(Error::Degenerate(format!(
            "segment {} of component {} is off the site grid",
            s.segment, s.component
        )));
    }
    let t = s.at as i64;
    Ok((
        [a[0] + e[0] / SITE_DENOM * t, a[1] + e[1] / SITE_DENOM * t],
        e,
    ))
}

fn add(p: Point, v: [i64; 2]) -> Point {
    [p[0] + v[0], p[1] + v[1]]
}

fn scale(v: [i64; 2], k: i64) -> [i64; 2] {
    [v[0] * k, v[1] * k]
}

/// Finger grown from site `p` (segment direction `e`) along `d` to the tip
/// `tip` with half-width vector `w`. Returns the cut fields `from`, `to` and
/// the inactive path points.
fn finger_points(
    p: Point,
    e: [i64; 2],
    d: [i64; 2],
    tip: Point,
    w: [i64; 2],
) -> Result<(Point, Point, Vec<Point>)> {
    let ce = e[0] as i128 * d[1] as i128 - e[1] as i128 * d[0] as i128;
    // reject fingers leaving nearly tangent to the strand
    let ee = e[0] as i128 * e[0] as i128 + e[1] as i128 * e[1] as i128;
    let dd = d[0] as i128 * d[0] as i128 + d[1] as i128 * d[1] as i128;
    if ce == 0 || 16 * ce * ce < ee * dd {
        return Err(Error::InvalidMove(
            "finger leaves nearly tangent to the strand".into(),
        ));
    }
    let s = if ce > 0 { 1 } else { -1 };
    let eps = [e[0] / 4096, e[1] / 4096];
    let from = [p[0] - eps[0], p[1] - eps[1]];
    let to = add(p, eps);
    let ws = scale(w, s);
    // lift the side starts off the strand so the connectors leave it transversally
    let foot = add(p, [d[0] / 32, d[1] / 32]);
    let pts = vec![
        from,
        add(foot, ws),
        add(tip, ws),
        add(tip, scale(ws, -1)),
        add(foot, scale(ws, -1)),
        to,
    ];
    Ok((from, to, pts))
}

/// The two cuts of a finger move pushing site `p` toward site `q` until the
/// fingers clasp halfway, at height `level` (which must be odd multiple of 10
/// plus 500 above a multiple of 1000, away from every other height).
pub fn finger_cuts(knot: &[Polyline], p: Site, q: Site, level: i64) -> Result<(Cut, Cut)> {
    let (pp, e) = site_point(knot, p)?;
    let (qp, f) = site_point(knot, q)?;
    let d = [qp[0] - pp[0], qp[1] - pp[1]];
    if d[0] % 1024 != 0 || d[1] % 1024 != 0 || d == [0, 0] {
        return Err(Error::Degenerate("finger guide is off the grid".into()));
    }
    let n = [-d[1] / 1024, d[0] / 1024];
    let mid = [pp[0] + d[0] / 2, pp[1] + d[1] / 2];
    let delta = [d[0] / 64, d[1] / 64];
    let (fa, ta, pa) = finger_points(pp, e, d, add(mid, delta), scale(n, 2))?;
    let back = [-d[0], -d[1]];
    let (fb, tb, pb) = finger_points(qp, f, back, add(mid, scale(delta, -1)), scale(n, -1))?;
    let a = Cut {
        component: p.component,
        segment: p.segment,
        from: fa,
        to: ta,
        inactive: Polyline::flat(pa, level),
    };
    let hb = vec![level + 1, level + 1, level, level - 1, level - 1];
    let b = Cut {
        component: q.component,
        segment: q.segment,
        from: fb,
        to: tb,
        inactive: Polyline::new(pb, hb),
    };
    Ok((a, b))
}

/// A circle attached to `x` along `from..to` of one segment, its other arc
/// running through `via` at the given heights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleSpec {
    pub component: usize,
    pub segment: usize,
    pub from: Point,
    pub to: Point,
    pub via: Vec<Point>,
    /// One height per segment of the inactive arc (`via.len() + 1`).
    pub heights: Vec<i64>,
}

/// Marked diagram of `x` with attached circles, checking that no attaching
/// arc crosses anything.
pub fn attach_circles_from_projection(
    knot: &[Polyline],
    circles: &[CircleSpec],
) -> Result<MarkedDiagram> {
    let cuts = circles
        .iter()
        .map(|c| {
            let mut pts = vec![c.from];
            pts.extend(c.via.iter().copied());
            pts.push(c.to);
            if c.heights.len() + 1 != pts.len() {
                return Err(Error::InvalidMove(
                    "circle heights do not match its arc".into(),
                ));
            }
            Ok(Cut {
                component: c.component,
                segment: c.segment,
                from: c.from,
                to: c.to,
                inactive: Polyline::new(pts, c.heights.clone()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let m = MarkedDiagram::build(knot, cuts, &[])?;
    check_hygiene(&m)?;
    Ok(m)
}

/// Every segment drawn when all circles are present: the knot in its current
/// configuration and each spare arc.
pub(crate) fn drawn_segments(m: &MarkedDiagram) -> Result<Vec<(Segment, Option<u32>)>> {
    let mut out: Vec<(Segment, Option<u32>)> = Vec::new();
    for comp in m.knot_segments()? {
        out.extend(comp.into_iter().map(|s| (s, None)));
    }
    for r in &m.reroutes {
        out.extend(m.spare_arc(r).segments().map(|s| (s, Some(r.id))));
    }
    Ok(out)
}

/// Attaching arcs cross nothing, circles meet the knot only at their
/// endpoints, and everything is in general position.
pub fn check_hygiene(m: &MarkedDiagram) -> Result<()> {
    let segs = drawn_segments(m)?;
    let active: BTreeSet<u32> = m
        .reroutes
        .iter()
        .flat_map(|r| r.active.ids.iter().copied())
        .collect();
    let joints: BTreeSet<Point> = m
        .reroutes
        .iter()
        .flat_map(|r| [r.active.start(), r.active.end()])
        .chain(m.knot.iter().flat_map(|c| {
            c.iter()
                .filter_map(|p| {
                    if let Piece::Fixed(f) = p {
                        Some(f.points.clone())
                    } else {
                        None
                    }
                })
                .flatten()
        }))
        .collect();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (s, t) = (&segs[i].0, &segs[j].0);
            match contact(s, t) {
                Contact::Disjoint => {}
                Contact::Joint(p) if joints.contains(&p) || segs[i].1 == segs[j].1 => {}
                Contact::Cross(..) => {
                    if active.contains(&s.id) || active.contains(&t.id) {
                        return Err(Error::Hygiene(format!(
                            "attaching arc crossed at segments {} and {}",
                            s.id, t.id
                        )));
                    }
                    if s.height == t.height {
                        return Err(Error::Degenerate(format!(
                            "segments {} and {} cross at equal height",
                            s.id, t.id
                        )));
                    }
                }
                _ => {
                    return Err(Error::Degenerate(format!(
                        "segments {} and {} touch",
                        s.id, t.id
                    )))
                }
            }
        }
    }
    Ok(())
}
