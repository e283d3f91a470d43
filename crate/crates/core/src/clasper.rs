//! Rooted tree claspers and their surgery.
//!
//! The root leaf is a small meridian of an axis-aligned knot segment. The
//! surgered knot follows the iterated commutator of the leaf loops, each
//! loop a product of lassos: the strand leaves the root segment along a
//! perpendicular lane, passes over the strands before its target, around
//! the target, and back. Lanes sit side by side along the root segment and
//! never cross each other. Each lane is a reroute whose spare arc stops
//! short of the target, so toggling all lanes of one leaf shrinks that leaf.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::bracket::{bracket, evaluate, Invariant, Value};
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::geometry::{Point, Polyline};
use crate::invariants::{fingerprint_with, Fingerprint};
use crate::moves::{MarkedDiagram, MoveGroup, Piece, ReroutePair};

/// Default crossing cap of [`surgery`].
pub const DEFAULT_CROSSING_CAP: usize = 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Left of the root segment's direction.
    Up,
    Down,
}

/// The `strand`-th knot strand (from 1) met by the ray leaving the root
/// segment on `side`, encircled positively or negatively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeafTarget {
    pub side: Side,
    pub strand: usize,
    pub positive: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leaf {
    /// Lassos whose product is the leaf loop.
    pub targets: Vec<LeafTarget>,
}

/// Tree with node 0 the root leaf. Internal nodes have two children,
/// ordered by index; the other leaves are listed in `leaves` by node index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedClasper {
    pub parent: Vec<Option<usize>>,
    pub leaves: Vec<Leaf>,
    /// Segment of the knot polyline carrying the root leaf.
    pub root_segment: usize,
}

/// One lasso of the commutator word, with the leaf it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Letter {
    leaf: usize,
    target: LeafTarget,
}

impl RootedClasper {
    /// Y-clasper with leaves `a` and `b`.
    pub fn y(a: Leaf, b: Leaf, root_segment: usize) -> Self {
        RootedClasper {
            parent: vec![None, Some(0), Some(1), Some(1)],
            leaves: vec![a, b],
            root_segment,
        }
    }

    /// Binary tree for a bracketing given as nested pairs of leaf slots,
    /// e.g. `((a, b), c)`.
    pub fn from_bracketing(shape: &Bracketing, leaves: Vec<Leaf>, root_segment: usize) -> Self {
        let mut parent = vec![None];
        let mut order = Vec::new();
        fn walk(
            s: &Bracketing,
            up: usize,
            parent: &mut Vec<Option<usize>>,
            order: &mut Vec<(usize, usize)>,
        ) {
            let me = parent.len();
            parent.push(Some(up));
            match s {
                Bracketing::Leaf(i) => order.push((me, *i)),
                Bracketing::Pair(a, b) => {
                    walk(a, me, parent, order);
                    walk(b, me, parent, order);
                }
            }
        }
        walk(shape, 0, &mut parent, &mut order);
        order.sort();
        let leaves = order.iter().map(|&(_, i)| leaves[i].clone()).collect();
        RootedClasper {
            parent,
            leaves,
            root_segment,
        }
    }

    fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                if *p < self.parent.len() {
                    ch[*p].push(v);
                }
            }
        }
        ch
    }

    /// Number of non-root leaves.
    pub fn n(&self) -> usize {
        self.leaves.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidClasper(m.into()));
        if self.parent.first() != Some(&None) || self.parent.iter().skip(1).any(|p| p.is_none()) {
            return bad("node 0 must be the only root");
        }
        if self
            .parent
            .iter()
            .flatten()
            .any(|&p| p >= self.parent.len())
        {
            return bad("parent out of range");
        }
        let ch = self.children();
        if ch[0].len() != 1 {
            return bad("the root leaf needs exactly one neighbor");
        }
        let mut leaves = 0;
        for (v, c) in ch.iter().enumerate().skip(1) {
            match c.len() {
                0 => leaves += 1,
                2 => {}
                d => return Err(Error::InvalidClasper(format!("node {v} has {d} children"))),
            }
        }
        // every node reaches the root
        for v in 0..self.parent.len() {
            let (mut x, mut steps) = (v, 0);
            while let Some(p) = self.parent[x] {
                x = p;
                steps += 1;
                if steps > self.parent.len() {
                    return bad("parent array has a cycle");
                }
            }
        }
        if leaves == 0 || leaves != self.leaves.len() {
            return Err(Error::InvalidClasper(format!(
                "{leaves} leaf nodes, {} leaf embeddings",
                self.leaves.len()
            )));
        }
        Ok(())
    }

    fn word(&self) -> Vec<Letter> {
        let ch = self.children();
        let leaf_nodes: Vec<usize> = (1..self.parent.len())
            .filter(|&v| ch[v].is_empty())
            .collect();
        fn inverse(w: &[Letter]) -> Vec<Letter> {
            w.iter()
                .rev()
                .map(|l| Letter {
                    target: LeafTarget {
                        positive: !l.target.positive,
                        ..l.target
                    },
                    ..*l
                })
                .collect()
        }
        fn go(v: usize, ch: &[Vec<usize>], leaf_nodes: &[usize], c: &RootedClasper) -> Vec<Letter> {
            if ch[v].is_empty() {
                let leaf = leaf_nodes.iter().position(|&x| x == v).expect("leaf node");
                return c.leaves[leaf]
                    .targets
                    .iter()
                    .map(|&target| Letter { leaf, target })
                    .collect();
            }
            let a = go(ch[v][0], ch, leaf_nodes, c);
            let b = go(ch[v][1], ch, leaf_nodes, c);
            let mut w = a.clone();
            w.extend(b.iter().copied());
            w.extend(inverse(&a));
            w.extend(inverse(&b));
            w
        }
        go(ch[0][0], &ch, &leaf_nodes, self)
    }
}

/// Shape of a binary tree over leaf slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bracketing {
    Leaf(usize),
    Pair(alloc::boxed::Box<Bracketing>, alloc::boxed::Box<Bracketing>),
}

impl Bracketing {
    pub fn pair(a: Bracketing, b: Bracketing) -> Self {
        Bracketing::Pair(alloc::boxed::Box::new(a), alloc::boxed::Box::new(b))
    }
}

/// The surgered knot with one reroute per lasso.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surgery {
    pub marked: MarkedDiagram,
    /// Reroute ids of each leaf's lassos.
    pub leaf_reroutes: Vec<BTreeSet<u32>>,
}

impl Surgery {
    pub fn diagram(&self) -> Result<PlanarDiagram> {
        self.marked.diagram()
    }

    /// The move shrinking leaf `leaf` off every strand it encircles.
    pub fn trivializing_move(&self, leaf: usize) -> Result<MoveGroup> {
        let r = self
            .leaf_reroutes
            .get(leaf)
            .ok_or_else(|| Error::InvalidClasper(format!("no leaf {leaf}")))?;
        Ok(MoveGroup::Interdependent {
            reroutes: r.clone(),
        })
    }

    pub fn trivializing_moves(&self) -> Result<Vec<MoveGroup>> {
        (0..self.leaf_reroutes.len())
            .map(|l| self.trivializing_move(l))
            .collect()
    }
}

/// Local frame of an axis-aligned segment: `p = a + u e + v n`.
struct Frame {
    a: Point,
    e: [i64; 2],
    n: [i64; 2],
    len: i64,
}

impl Frame {
    fn new(a: Point, b: Point) -> Result<Self> {
        let d = [b[0] - a[0], b[1] - a[1]];
        if (d[0] != 0) == (d[1] != 0) {
            return Err(Error::InvalidClasper(
                "root segment must be axis-aligned".into(),
            ));
        }
        let len = d[0].abs() + d[1].abs();
        let e = [d[0].signum(), d[1].signum()];
        Ok(Frame {
            a,
            e,
            n: [-e[1], e[0]],
            len,
        })
    }

    fn at(&self, u: i64, v: i64) -> Point {
        [
            self.a[0] + u * self.e[0] + v * self.n[0],
            self.a[1] + u * self.e[1] + v * self.n[1],
        ]
    }

    fn local(&self, p: Point) -> (i64, i64) {
        let q = [p[0] - self.a[0], p[1] - self.a[1]];
        (
            q[0] * self.e[0] + q[1] * self.e[1],
            q[0] * self.n[0] + q[1] * self.n[1],
        )
    }
}

/// Strands met by the perpendicular line at `u`, on each side, as
/// `(|v| rounded down, segment index)` by distance.
fn ray_hits(
    knot: &Polyline,
    f: &Frame,
    root: usize,
    u: i64,
) -> Result<(Vec<(i64, usize)>, Vec<(i64, usize)>)> {
    let (mut up, mut down) = (Vec::new(), Vec::new());
    for s in 0..knot.heights.len() {
        if s == root {
            continue;
        }
        let (pu, pv) = f.local(knot.points[s]);
        let (qu, qv) = f.local(knot.points[s + 1]);
        if pu == u || qu == u {
            return Err(Error::InvalidClasper(format!(
                "a knot vertex lies on the lane line u = {u}"
            )));
        }
        if (pu < u) == (qu < u) {
            continue;
        }
        let v = (pv as i128 + (qv - pv) as i128 * (u - pu) as i128 / (qu - pu) as i128) as i64;
        if v == 0 {
            return Err(Error::InvalidClasper(
                "a strand meets the root segment".into(),
            ));
        }
        if v > 0 {
            up.push((v, s));
        } else {
            down.push((-v, s));
        }
    }
    up.sort();
    down.sort();
    Ok((up, down))
}

fn lane(
    f: &Frame,
    knot: &Polyline,
    root: usize,
    u0: i64,
    u1: i64,
    t: LeafTarget,
    top: i64,
    bottom: i64,
    reference: &[(Vec<usize>, Vec<usize>)],
) -> Result<(Polyline, Polyline)> {
    let mut dist = Vec::new();
    for u in [u0, u1] {
        let (up, down) = ray_hits(knot, f, root, u)?;
        let ids = (
            up.iter().map(|h| h.1).collect::<Vec<_>>(),
            down.iter().map(|h| h.1).collect::<Vec<_>>(),
        );
        if ids != reference[0] {
            return Err(Error::InvalidClasper(format!(
                "strands seen from u = {u} differ from the root's"
            )));
        }
        dist.push(if t.side == Side::Up { up } else { down });
    }
    let hits = dist[0].len();
    if t.strand == 0 || t.strand > hits {
        return Err(Error::InvalidClasper(format!(
            "no strand {} on that side ({hits} strands)",
            t.strand
        )));
    }
    let d = |j: usize, lo: bool| -> i64 {
        if j == 0 {
            0
        } else if j > hits {
            dist[0][hits - 1].0.max(dist[1][hits - 1].0) + (f.len / 4).max(64)
        } else if lo {
            dist[0][j - 1].0.max(dist[1][j - 1].0)
        } else {
            dist[0][j - 1].0.min(dist[1][j - 1].0)
        }
    };
    let j = t.strand;
    let (a0, a1) = (d(j - 1, true), d(j, false));
    let (b0, b1) = (d(j, true), d(j + 1, false));
    if a1 - a0 < 4 || b1 - b0 < 4 {
        return Err(Error::InvalidClasper(
            "strands too close to place a lane".into(),
        ));
    }
    let sgn = if t.side == Side::Up { 1 } else { -1 };
    let (vs, vt) = (sgn * (a0 + a1) / 2, sgn * (b0 + b1) / 2);
    let pts = vec![
        f.at(u0, 0),
        f.at(u0, vs),
        f.at(u0, vt),
        f.at(u1, vt),
        f.at(u1, vs),
        f.at(u1, 0),
    ];
    let heights = if t.positive {
        vec![top, bottom, top, top, top]
    } else {
        vec![top, top, top, bottom, top]
    };
    let short = Polyline::flat(
        vec![f.at(u0, 0), f.at(u0, vs), f.at(u1, vs), f.at(u1, 0)],
        top,
    );
    Ok((Polyline::new(pts, heights), short))
}

/// Surgery on the closed polyline `k1` (one component).
pub fn surgery_marked(k1: &Polyline, c: &RootedClasper, cap: usize) -> Result<Surgery> {
    c.validate()?;
    let segs = k1.heights.len();
    if k1.points.len() < 4 || k1.start() != k1.end() {
        return Err(Error::Degenerate("knot polyline is not closed".into()));
    }
    let r = c.root_segment;
    if r >= segs {
        return Err(Error::InvalidClasper(format!("no segment {r}")));
    }
    let f = Frame::new(k1.points[r], k1.points[r + 1])?;
    let word = c.word();
    let slot = f.len / (2 * word.len() as i64 + 1);
    if slot < 2 {
        return Err(Error::InvalidClasper("root segment too short".into()));
    }
    let top = k1.heights.iter().max().copied().unwrap_or(0) + 1000;
    let bottom = k1.heights.iter().min().copied().unwrap_or(0) - 1000;
    let (up, down) = ray_hits(k1, &f, r, f.len / 2)?;
    let reference = vec![(
        up.iter().map(|h| h.1).collect(),
        down.iter().map(|h| h.1).collect(),
    )];
    let h = k1.heights[r];
    let mut pieces = Vec::new();
    let mut reroutes = Vec::new();
    let mut leaf_reroutes = vec![BTreeSet::new(); c.n()];
    let mut pts: Vec<Point> = k1.points[..=r].to_vec();
    let mut hs: Vec<i64> = k1.heights[..r].to_vec();
    for (t, l) in word.iter().enumerate() {
        let u0 = (2 * t as i64 + 1) * slot;
        let u1 = u0 + slot;
        let (active, inactive) = lane(&f, k1, r, u0, u1, l.target, top, bottom, &reference)?;
        pts.push(f.at(u0, 0));
        hs.push(h);
        pieces.push(Piece::Fixed(Polyline::new(
            core::mem::take(&mut pts),
            core::mem::take(&mut hs),
        )));
        pieces.push(Piece::Reroute(t as u32));
        reroutes.push(ReroutePair {
            id: t as u32,
            active,
            inactive,
        });
        leaf_reroutes[l.leaf].insert(t as u32);
        pts.push(f.at(u1, 0));
    }
    pts.extend_from_slice(&k1.points[r + 1..]);
    hs.push(h);
    hs.extend_from_slice(&k1.heights[r + 1..]);
    pieces.push(Piece::Fixed(Polyline::new(pts, hs)));
    let marked = MarkedDiagram::from_pieces(vec![pieces], reroutes, Vec::new())?;
    let d = marked.diagram()?;
    if d.crossings.len() > cap {
        return Err(Error::CrossingBudget {
            crossings: d.crossings.len(),
            budget: cap,
        });
    }
    Ok(Surgery {
        marked,
        leaf_reroutes,
    })
}

/// PD code of the surgered knot.
pub fn surgery(k1: &Polyline, c: &RootedClasper) -> Result<PlanarDiagram> {
    surgery_marked(k1, c, DEFAULT_CROSSING_CAP)?.diagram()
}

/// Closed polyline through `points` (first point not repeated), all at `height`.
pub fn closed(points: &[Point], height: i64) -> Polyline {
    let mut p = points.to_vec();
    p.push(points[0]);
    Polyline::flat(p, height)
}

/// A planar unknot whose root segment 0 sees two strands above and one
/// below, all running against it.
pub fn unknot_with_strands() -> Polyline {
    let w: i64 = 1 << 28;
    let y: i64 = 1 << 27;
    closed(
        &[
            [-w, 0],
            [w, 0],
            [w, -y],
            [-2 * w, -y],
            [-2 * w, y],
            [2 * w, y],
            [2 * w, y / 2],
            [-w, y / 2],
        ],
        0,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseCheck {
    pub sigma: u64,
    pub v2: i64,
    pub v3: i64,
    /// Jones compared (both sides within budget).
    pub jones_compared: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GropeReport {
    pub n: usize,
    pub k: usize,
    pub crossings: usize,
    pub k1: Fingerprint,
    pub k2: Fingerprint,
    pub collapse: Vec<CollapseCheck>,
    /// `(invariant, value on K1, value on K2)` for type `<= k` invariants.
    pub conclusion: Vec<(Invariant, i64, i64)>,
    /// Sum over nonempty sigma of `(-1)^|sigma| v((K2)_sigma)` equals
    /// `-v(K1)`, and `[K2; S]` evaluates to `v(K2) - v(K1)`, for v2 and v3.
    pub telescoping: bool,
    /// Invariants telling K1 and K2 apart.
    pub separated_by: Vec<alloc::string::String>,
    pub pass: bool,
}

fn same(a: &Fingerprint, b: &Fingerprint) -> (bool, bool) {
    let jones = a.jones.is_some() && b.jones.is_some();
    (
        a.v2 == b.v2
            && a.v3 == b.v3
            && a.components == b.components
            && (!jones || a.jones == b.jones),
        jones,
    )
}

/// Checks the surgery of `c` (with `2k + 1` leaves) on `k1`: every partial
/// trivialization gives back K1, type `<= k` invariants agree on K1 and K2,
/// and the alternating sum telescopes.
pub fn verify_grope_theorem(
    k1: &Polyline,
    c: &RootedClasper,
    k: usize,
    cap: usize,
    jones_budget: usize,
) -> Result<GropeReport> {
    if !(1..=3).contains(&k) || c.n() != 2 * k + 1 {
        return Err(Error::Precondition(format!("{} leaves for k = {k}", c.n())));
    }
    let s = surgery_marked(k1, c, cap)?;
    let moves = s.trivializing_moves()?;
    let base = s.marked.diagram()?;
    let f1 = fingerprint_with(
        &s.marked
            .apply_mask(&moves, (1 << moves.len()) - 1)?
            .diagram()?,
        jones_budget,
    )?;
    let f2 = fingerprint_with(&base, jones_budget)?;
    let mut collapse = Vec::new();
    let (mut alt2, mut alt3) = (0i64, 0i64);
    for sigma in 1..1u64 << moves.len() {
        let d = s.marked.apply_mask(&moves, sigma)?.diagram()?;
        let f = fingerprint_with(&d, jones_budget)?;
        let (pass, jones_compared) = same(&f, &f1);
        let (v2, v3) = (f.v2.unwrap_or(0), f.v3.unwrap_or(0));
        let sign = if sigma.count_ones() % 2 == 0 { 1 } else { -1 };
        alt2 += sign * v2;
        alt3 += sign * v3;
        collapse.push(CollapseCheck {
            sigma,
            v2,
            v3,
            jones_compared,
            pass,
        });
    }
    let k1_plain = fingerprint_with(&extract_plain(k1)?, jones_budget)?;
    let (k1_ok, _) = same(&k1_plain, &f1);
    let (a2, a3) = (f1.v2.unwrap_or(0), f1.v3.unwrap_or(0));
    let (b2, b3) = (f2.v2.unwrap_or(0), f2.v3.unwrap_or(0));
    let fs = bracket(&s.marked, &moves)?;
    let e2 = evaluate(&fs, Invariant::V2).map_err(|e| e.error)?;
    let e3 = evaluate(&fs, Invariant::V3).map_err(|e| e.error)?;
    let telescoping =
        alt2 == -a2 && alt3 == -a3 && e2 == Value::Int(b2 - a2) && e3 == Value::Int(b3 - a3);
    let mut conclusion = Vec::new();
    if k >= 2 {
        conclusion.push((Invariant::V2, a2, b2));
    }
    if k >= 3 {
        conclusion.push((Invariant::V3, a3, b3));
    }
    let mut separated_by = Vec::new();
    if a2 != b2 {
        separated_by.push("v2".into());
    }
    if a3 != b3 {
        separated_by.push("v3".into());
    }
    if f1.jones.is_some() && f2.jones.is_some() && f1.jones != f2.jones {
        separated_by.push("jones".into());
    }
    let pass = k1_ok
        && collapse.iter().all(|c| c.pass)
        && conclusion.iter().all(|(_, a, b)| a == b)
        && telescoping;
    Ok(GropeReport {
        n: c.n(),
        k,
        crossings: base.crossings.len(),
        k1: f1,
        k2: f2,
        collapse,
        conclusion,
        telescoping,
        separated_by,
        pass,
    })
}

fn extract_plain(k1: &Polyline) -> Result<PlanarDiagram> {
    let mut segs: Vec<_> = k1.segments().collect();
    for (i, s) in segs.iter_mut().enumerate() {
        s.id = i as u32;
    }
    Ok(crate::geometry::extract(&[segs], &BTreeSet::new())?.diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::right_trefoil;
    use crate::invariants::fingerprint;

    fn leaf(side: Side, strand: usize, positive: bool) -> Leaf {
        Leaf {
            targets: vec![LeafTarget {
                side,
                strand,
                positive,
            }],
        }
    }

    #[test]
    fn y_clasper_ties_a_trefoil() {
        let k1 = unknot_with_strands();
        let c = RootedClasper::y(leaf(Side::Up, 1, true), leaf(Side::Down, 1, true), 0);
        let s = surgery_marked(&k1, &c, DEFAULT_CROSSING_CAP).unwrap();
        let f = fingerprint(&s.diagram().unwrap()).unwrap();
        let t = fingerprint(&right_trefoil()).unwrap();
        let m = fingerprint(&right_trefoil().mirror().unwrap()).unwrap();
        assert!(f == t || f == m, "{f:?}");
        for l in 0..2 {
            let d = s
                .marked
                .apply(&s.trivializing_move(l).unwrap())
                .unwrap()
                .diagram()
                .unwrap();
            assert_eq!(fingerprint(&d).unwrap().v2, Some(0));
        }
        let j = f.jones.unwrap();
        assert_eq!(
            j.terms()
                .map(|(_, c)| c.clone())
                .sum::<num_bigint::BigInt>(),
            1.into()
        );
    }

    #[test]
    fn empty_leaf_changes_nothing() {
        let k1 = unknot_with_strands();
        let c = RootedClasper {
            parent: vec![None, Some(0)],
            leaves: vec![Leaf::default()],
            root_segment: 0,
        };
        assert_eq!(surgery(&k1, &c).unwrap().crossings.len(), 0);
        let bad = RootedClasper {
            parent: vec![None, Some(0), Some(1)],
            leaves: vec![Leaf::default()],
            root_segment: 0,
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidClasper(_))));
        let far = RootedClasper::y(leaf(Side::Up, 3, true), leaf(Side::Down, 1, true), 0);
        assert!(surgery(&k1, &far).is_err());
    }

    #[test]
    fn five_leaves_keep_v2() {
        let k1 = unknot_with_strands();
        let shape = Bracketing::pair(
            Bracketing::pair(
                Bracketing::pair(Bracketing::Leaf(0), Bracketing::Leaf(1)),
                Bracketing::Leaf(2),
            ),
            Bracketing::pair(Bracketing::Leaf(3), Bracketing::Leaf(4)),
        );
        let ls = vec![
            leaf(Side::Up, 1, true),
            leaf(Side::Down, 1, true),
            leaf(Side::Up, 2, true),
            leaf(Side::Up, 1, true),
            leaf(Side::Down, 1, false),
        ];
        let c = RootedClasper::from_bracketing(&shape, ls, 0);
        let r = verify_grope_theorem(&k1, &c, 2, DEFAULT_CROSSING_CAP, 72).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.collapse.len(), 31);
        assert_eq!(r.separated_by, vec![alloc::string::String::from("jones")]);
        let s = surgery_marked(&k1, &c, DEFAULT_CROSSING_CAP).unwrap();
        let g = s.trivializing_move(2).unwrap();
        assert_eq!(s.marked.apply(&g).unwrap().apply(&g).unwrap(), s.marked);
        assert!(matches!(
            surgery_marked(&k1, &c, 40),
            Err(Error::CrossingBudget { .. })
        ));
    }
}
