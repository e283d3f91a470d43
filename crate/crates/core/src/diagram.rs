//! Planar diagram (PD) codes.
//!
//! A crossing is a 4-tuple of arc labels listed counterclockwise starting from
//! the incoming under-strand, so positions 0 and 2 are the under-strand and
//! positions 1 and 3 the over-strand. Orientation is never stored: it is traced
//! from the under-strand entries. A crossing is positive (`+1`) when the
//! over-strand enters at position 1 and leaves at position 3; with the
//! under-strand pointing up this is an over-strand running right to left.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Arc = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanarDiagram {
    /// Total number of link components, including crossingless ones.
    pub components: usize,
    pub crossings: Vec<[Arc; 4]>,
}

/// A broken invariant reported by [`PlanarDiagram::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    ZeroComponents,
    /// Arc label seen a number of times other than two.
    DanglingArc {
        arc: Arc,
        count: usize,
    },
    /// An arc runs from an outgoing end into another outgoing end.
    OrientationConflict {
        arc: Arc,
        crossing: usize,
    },
    /// Declared component count smaller than the number of traced cycles.
    ComponentCount {
        declared: usize,
        traced: usize,
    },
    /// The rotation system given by the tuples is not planar.
    NonPlanar {
        faces: usize,
        expected: usize,
    },
}

/// One passage through a crossing during traversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pass {
    pub crossing: usize,
    /// Position (0..4) at which the strand enters the crossing.
    pub enter: usize,
}

impl Pass {
    pub fn is_over(&self) -> bool {
        self.enter % 2 == 1
    }
}

/// Traced orientation: passes per crossing-carrying component, in order.
#[derive(Clone, Debug)]
pub struct Traversal {
    pub components: Vec<Vec<Pass>>,
    /// `incoming[c][p]` is true when the arc at `(c, p)` enters crossing `c`.
    pub incoming: Vec<[bool; 4]>,
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        Self {
            components: 1,
            crossings: Vec::new(),
        }
    }

    pub fn new(components: usize, crossings: Vec<[Arc; 4]>) -> Self {
        Self {
            components,
            crossings,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn occurrences(&self) -> BTreeMap<Arc, Vec<(usize, usize)>> {
        let mut occ: BTreeMap<Arc, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, t) in self.crossings.iter().enumerate() {
            for (p, a) in t.iter().enumerate() {
                occ.entry(*a).or_default().push((c, p));
            }
        }
        occ
    }

    fn other_end(
        occ: &BTreeMap<Arc, Vec<(usize, usize)>>,
        arc: Arc,
        here: (usize, usize),
    ) -> (usize, usize) {
        let v = &occ[&arc];
        if v[0] == here {
            v[1]
        } else {
            v[0]
        }
    }

    /// Every violated invariant; empty for a valid diagram.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.components == 0 {
            out.push(Violation::ZeroComponents);
        }
        let occ = self.occurrences();
        for (a, v) in &occ {
            if v.len() != 2 {
                out.push(Violation::DanglingArc {
                    arc: *a,
                    count: v.len(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        match self.trace() {
            Err(v) => out.push(v),
            Ok(tr) => {
                if tr.components.len() > self.components {
                    out.push(Violation::ComponentCount {
                        declared: self.components,
                        traced: tr.components.len(),
                    });
                }
                let (faces, expected) = self.face_count();
                if faces != expected {
                    out.push(Violation::NonPlanar { faces, expected });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Traces components and orientation. Assumes every arc appears twice.
    pub fn trace(&self) -> core::result::Result<Traversal, Violation> {
        let n = self.crossings.len();
        let occ = self.occurrences();
        let mut incoming = vec![[false; 4]; n];
        let mut visited = vec![[false; 4]; n];
        let mut components = Vec::new();

        // Starting entries: every under-strand entry, then leftovers.
        let mut starts: Vec<(usize, usize)> = (0..n).map(|c| (c, 0)).collect();
        loop {
            let start = starts.iter().copied().find(|&(c, p)| !visited[c][p]);
            let start = match start {
                Some(s) => s,
                None => {
                    // Components passing only over: orient by label succession.
                    let mut left: Option<(Arc, (usize, usize))> = None;
                    for c in 0..n {
                        for p in [1, 3] {
                            if !visited[c][p] {
                                let a = self.crossings[c][p];
                                if left.is_none_or(|(b, _)| a < b) {
                                    left = Some((a, (c, p)));
                                }
                            }
                        }
                    }
                    let Some((a, _)) = left else { break };
                    let ends = &occ[&a];
                    // Enter through the end whose exit arc is `a + 1` if any.
                    let pick = ends
                        .iter()
                        .copied()
                        .find(|&(c, p)| self.crossings[c][(p + 2) % 4] == a.wrapping_add(1))
                        .unwrap_or(ends[0]);
                    starts.push(pick);
                    continue;
                }
            };
            let mut comp = Vec::new();
            let (mut c, mut p) = start;
            loop {
                if visited[c][p] {
                    if (c, p) == start {
                        break;
                    }
                    return Err(Violation::OrientationConflict {
                        arc: self.crossings[c][p],
                        crossing: c,
                    });
                }
                let exit = (p + 2) % 4;
                if visited[c][exit] || incoming[c][exit] {
                    return Err(Violation::OrientationConflict {
                        arc: self.crossings[c][exit],
                        crossing: c,
                    });
                }
                visited[c][p] = true;
                incoming[c][p] = true;
                visited[c][exit] = true;
                comp.push(Pass {
                    crossing: c,
                    enter: p,
                });
                let arc = self.crossings[c][exit];
                let (nc, np) = Self::other_end(&occ, arc, (c, exit));
                if np == 2 || (nc, np) == (c, exit) {
                    return Err(Violation::OrientationConflict { arc, crossing: nc });
                }
                c = nc;
                p = np;
            }
            components.push(comp);
        }
        Ok(Traversal {
            components,
            incoming,
        })
    }

    /// Faces of the rotation system and the count a planar diagram needs.
    pub fn face_count(&self) -> (usize, usize) {
        let n = self.crossings.len();
        if n == 0 {
            return (0, 0);
        }
        let occ = self.occurrences();
        let mut seen = vec![[false; 4]; n];
        let mut faces = 0;
        for c0 in 0..n {
            for p0 in 0..4 {
                if seen[c0][p0] {
                    continue;
                }
                faces += 1;
                let (mut c, mut p) = (c0, p0);
                while !seen[c][p] {
                    seen[c][p] = true;
                    let (oc, op) = Self::other_end(&occ, self.crossings[c][p], (c, p));
                    c = oc;
                    p = (op + 1) % 4;
                }
            }
        }
        // union-find over crossings for connected pieces
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let nx = parent[y];
                parent[y] = r;
                y = nx;
            }
            r
        }
        for v in occ.values() {
            let a = find(&mut parent, v[0].0);
            let b = find(&mut parent, v[1].0);
            parent[a] = b;
        }
        let pieces = (0..n).filter(|&x| find(&mut parent, x) == x).count();
        (faces, n + 2 * pieces)
    }

    fn traversal_checked(&self) -> Result<Traversal> {
        self.trace().map_err(|v| Error::Invalid(vec![v]))
    }

    /// Sign of crossing `c` (see module docs for the convention).
    pub fn crossing_sign(&self, c: usize) -> Result<i32> {
        if c >= self.crossings.len() {
            return Err(Error::UnknownCrossing(c));
        }
        let tr = self.traversal_checked()?;
        Ok(sign_from(&tr, c))
    }

    pub fn signs(&self) -> Result<Vec<i32>> {
        let tr = self.traversal_checked()?;
        Ok((0..self.crossings.len())
            .map(|c| sign_from(&tr, c))
            .collect())
    }

    pub fn writhe(&self) -> Result<i64> {
        Ok(self.signs()?.iter().map(|&s| s as i64).sum())
    }

    /// Switches over and under at crossing `c`.
    pub fn crossing_change(&self, c: usize) -> Result<Self> {
        if self.crossings.is_empty() {
            return Err(Error::NoCrossings);
        }
        if c >= self.crossings.len() {
            return Err(Error::UnknownCrossing(c));
        }
        let tr = self.traversal_checked()?;
        let mut out = self.clone();
        out.crossings[c] = switched(self.crossings[c], tr.incoming[c][1]);
        Ok(out)
    }

    /// Switches every crossing in `set` at once.
    pub fn crossing_change_set(&self, set: &BTreeSet<usize>) -> Result<Self> {
        if set.is_empty() {
            return Ok(self.clone());
        }
        let tr = self.traversal_checked()?;
        let mut out = self.clone();
        for &c in set {
            if c >= self.crossings.len() {
                return Err(Error::UnknownCrossing(c));
            }
            out.crossings[c] = switched(self.crossings[c], tr.incoming[c][1]);
        }
        Ok(out)
    }

    pub fn mirror(&self) -> Result<Self> {
        let all: BTreeSet<usize> = (0..self.crossings.len()).collect();
        self.crossing_change_set(&all)
    }

    /// Reverses the orientation of every component.
    pub fn reverse(&self) -> Self {
        Self {
            components: self.components,
            crossings: self
                .crossings
                .iter()
                .map(|t| [t[2], t[3], t[0], t[1]])
                .collect(),
        }
    }

    /// Connected sum cutting `arc1` of `self` and `arc2` of `other`.
    pub fn connected_sum(&self, other: &Self, arc1: Arc, arc2: Arc) -> Result<Self> {
        if self.crossings.is_empty() {
            return Ok(Self {
                components: self.components + other.components - 1,
                crossings: other.crossings.clone(),
            });
        }
        if other.crossings.is_empty() {
            return Ok(Self {
                components: self.components + other.components - 1,
                crossings: self.crossings.clone(),
            });
        }
        let tr1 = self.traversal_checked()?;
        let tr2 = other.traversal_checked()?;
        let offset = self.crossings.iter().flatten().copied().max().unwrap_or(0);
        let b = arc2 + offset;
        let head1 = incoming_end(self, &tr1, arc1).ok_or(Error::UnknownArc(arc1))?;
        let head2 = incoming_end(other, &tr2, arc2).ok_or(Error::UnknownArc(arc2))?;
        let mut left = self.crossings.clone();
        left[head1.0][head1.1] = b;
        let mut right: Vec<[Arc; 4]> = other
            .crossings
            .iter()
            .map(|t| t.map(|a| a + offset))
            .collect();
        right[head2.0][head2.1] = arc1;
        left.extend(right);
        Ok(Self {
            components: self.components + other.components - 1,
            crossings: left,
        })
    }

    /// Relabels arcs `1..=2n` along a traversal starting at the given passes.
    fn relabel_from(&self, tr: &Traversal, order: &[usize], starts: &[usize]) -> Vec<[Arc; 4]> {
        let mut map: BTreeMap<Arc, Arc> = BTreeMap::new();
        let mut next = 1;
        for (&ci, &s) in order.iter().zip(starts) {
            let comp = &tr.components[ci];
            for i in 0..comp.len() {
                let pass = comp[(s + i) % comp.len()];
                let arc = self.crossings[pass.crossing][pass.enter];
                map.insert(arc, next);
                next += 1;
            }
        }
        let mut out: Vec<[Arc; 4]> = self.crossings.iter().map(|t| t.map(|a| map[&a])).collect();
        out.sort();
        out
    }

    /// Canonical relabeling: minimal code over component orders (up to three
    /// crossing-carrying components) and traversal start points.
    pub fn canonical(&self) -> Result<Self> {
        let tr = self.traversal_checked()?;
        let k = tr.components.len();
        let orders: Vec<Vec<usize>> = if k <= 3 {
            permutations(k)
        } else {
            vec![(0..k).collect()]
        };
        let mut best: Option<Vec<[Arc; 4]>> = None;
        for order in &orders {
            let lens: Vec<usize> = order.iter().map(|&c| tr.components[c].len()).collect();
            let mut starts = vec![0usize; k];
            loop {
                let cand = self.relabel_from(&tr, order, &starts);
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
                // odometer over start positions
                let mut i = 0;
                while i < k {
                    starts[i] += 1;
                    if starts[i] < lens[i] {
                        break;
                    }
                    starts[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
        Ok(Self {
            components: self.components,
            crossings: best.unwrap_or_default(),
        })
    }

    /// Number of components that carry at least one crossing.
    pub fn traced_components(&self) -> Result<usize> {
        Ok(self.traversal_checked()?.components.len())
    }
}

fn switched(t: [Arc; 4], over_enters_at_1: bool) -> [Arc; 4] {
    if over_enters_at_1 {
        [t[1], t[2], t[3], t[0]]
    } else {
        [t[3], t[0], t[1], t[2]]
    }
}

fn sign_from(tr: &Traversal, c: usize) -> i32 {
    if tr.incoming[c][1] {
        1
    } else {
        -1
    }
}

fn incoming_end(d: &PlanarDiagram, tr: &Traversal, arc: Arc) -> Option<(usize, usize)> {
    for (c, t) in d.crossings.iter().enumerate() {
        for p in 0..4 {
            if t[p] == arc && tr.incoming[c][p] {
                return Some((c, p));
            }
        }
    }
    None
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Standard small diagrams used throughout tests and fixtures.
pub mod fixtures {
    use super::*;

    /// The three-crossing trefoil whose crossings are all positive here.
    pub fn right_trefoil() -> PlanarDiagram {
        PlanarDiagram::new(1, vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])
    }

    pub fn left_trefoil() -> PlanarDiagram {
        right_trefoil().mirror().expect("valid")
    }

    pub fn figure_eight() -> PlanarDiagram {
        PlanarDiagram::new(
            1,
            vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]],
        )
    }

    /// Unknot with a single kink, positive crossing.
    pub fn positive_kink() -> PlanarDiagram {
        PlanarDiagram::new(1, vec![[1, 2, 2, 1]])
    }

    pub fn negative_kink() -> PlanarDiagram {
        PlanarDiagram::new(1, vec![[1, 1, 2, 2]])
    }

    pub fn hopf() -> PlanarDiagram {
        PlanarDiagram::new(2, vec![[1, 3, 2, 4], [3, 1, 4, 2]])
    }

    pub fn two_unknots() -> PlanarDiagram {
        PlanarDiagram::new(2, Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        assert!(PlanarDiagram::unknot().validate().is_empty());
        for d in [
            right_trefoil(),
            left_trefoil(),
            figure_eight(),
            positive_kink(),
            negative_kink(),
            hopf(),
        ] {
            assert_eq!(d.validate(), vec![], "{:?}", d);
        }
    }

    #[test]
    fn dangling_arc_reported() {
        let d = PlanarDiagram::new(1, vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 7]]);
        let v = d.validate();
        assert!(v.contains(&Violation::DanglingArc { arc: 3, count: 1 }));
        assert!(v.contains(&Violation::DanglingArc { arc: 7, count: 1 }));
    }

    #[test]
    fn trefoil_signs() {
        assert_eq!(right_trefoil().signs().unwrap(), vec![1, 1, 1]);
        assert_eq!(left_trefoil().signs().unwrap(), vec![-1, -1, -1]);
        let mut s = figure_eight().signs().unwrap();
        s.sort();
        assert_eq!(s, vec![-1, -1, 1, 1]);
    }

    #[test]
    fn kink_signs() {
        assert_eq!(positive_kink().signs().unwrap(), vec![1]);
        assert_eq!(negative_kink().signs().unwrap(), vec![-1]);
    }

    #[test]
    fn crossing_change_involution() {
        let t = right_trefoil();
        for c in 0..3 {
            let once = t.crossing_change(c).unwrap();
            assert!(once.is_valid());
            assert_ne!(once, t);
            assert_eq!(once.crossing_change(c).unwrap(), t);
        }
        assert_eq!(
            PlanarDiagram::unknot().crossing_change(0),
            Err(Error::NoCrossings)
        );
        assert_eq!(t.crossing_change(7), Err(Error::UnknownCrossing(7)));
    }

    #[test]
    fn mirror_involution_and_reverse() {
        let f = figure_eight();
        assert_eq!(f.mirror().unwrap().mirror().unwrap(), f);
        assert_eq!(PlanarDiagram::unknot().reverse(), PlanarDiagram::unknot());
        assert_eq!(right_trefoil().reverse().signs().unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn canonical_ignores_labels() {
        let t = right_trefoil();
        let shifted = PlanarDiagram::new(
            1,
            t.crossings
                .iter()
                .map(|c| c.map(|a| (a % 6) + 10))
                .collect(),
        );
        assert!(shifted.is_valid());
        assert_eq!(t.canonical().unwrap(), shifted.canonical().unwrap());
        assert_ne!(t.canonical().unwrap(), left_trefoil().canonical().unwrap());
    }

    #[test]
    fn connected_sum_valid() {
        let s = right_trefoil()
            .connected_sum(&right_trefoil(), 1, 3)
            .unwrap();
        assert_eq!(s.validate(), vec![]);
        assert_eq!(s.crossing_count(), 6);
        assert_eq!(s.traced_components().unwrap(), 1);
        assert_eq!(
            right_trefoil()
                .connected_sum(&PlanarDiagram::unknot(), 1, 1)
                .unwrap(),
            right_trefoil()
        );
    }

    #[test]
    fn nonplanar_rotation_detected() {
        // Virtual trefoil style tuples: arcs close up but no planar embedding.
        let d = PlanarDiagram::new(1, vec![[1, 3, 2, 4], [3, 2, 4, 1]]);
        assert!(
            d.validate()
                .iter()
                .any(|v| matches!(v, Violation::NonPlanar { .. })),
            "{:?}",
            d.validate()
        );
    }
}
