//! Reidemeister simplification on signed Gauss codes.
//!
//! R1 and R2 reductions are applied greedily; when none applies, a
//! breadth-first search over R3 moves (bounded by a step budget) looks for a
//! diagram where one does. Crossing count never increases.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::diagram::PlanarDiagram;
use crate::gauss::{gauss_from_pd, pd_from_gauss, GaussCode};

pub const DEFAULT_R3_BUDGET: usize = 64;

type Loc = (usize, usize);

fn pairs(g: &GaussCode) -> Vec<(Loc, Loc)> {
    let mut out = Vec::new();
    for (ci, comp) in g.components.iter().enumerate() {
        let m = comp.len();
        if m < 2 {
            continue;
        }
        let last = if m == 2 { 1 } else { m };
        for j in 0..last {
            out.push(((ci, j), (ci, (j + 1) % m)));
        }
    }
    out
}

fn at(g: &GaussCode, l: Loc) -> crate::gauss::GaussPass {
    g.components[l.0][l.1]
}

fn remove_crossings(g: &GaussCode, ids: &[u32]) -> GaussCode {
    GaussCode {
        components: g
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .copied()
                    .filter(|p| !ids.contains(&p.crossing))
                    .collect()
            })
            .collect(),
    }
}

fn find_r1(g: &GaussCode) -> Option<u32> {
    pairs(g).into_iter().find_map(|(a, b)| {
        let (pa, pb) = (at(g, a), at(g, b));
        (pa.crossing == pb.crossing).then_some(pa.crossing)
    })
}

fn find_r2(g: &GaussCode) -> Option<[u32; 2]> {
    let ps = pairs(g);
    for (i, &(a1, b1)) in ps.iter().enumerate() {
        let (x, y) = (at(g, a1), at(g, b1));
        if x.crossing == y.crossing || !(x.over && y.over) || x.sign == y.sign {
            continue;
        }
        for (j, &(a2, b2)) in ps.iter().enumerate() {
            if i == j {
                continue;
            }
            let (u, v) = (at(g, a2), at(g, b2));
            if u.over || v.over {
                continue;
            }
            let same = (u.crossing == x.crossing && v.crossing == y.crossing)
                || (u.crossing == y.crossing && v.crossing == x.crossing);
            if same {
                return Some([x.crossing, y.crossing]);
            }
        }
    }
    None
}

/// Every R3 move available on `g`, as rewritten codes.
fn r3_moves(g: &GaussCode) -> Vec<GaussCode> {
    let ps: Vec<(Loc, Loc)> = pairs(g)
        .into_iter()
        .filter(|&(a, b)| at(g, a).crossing != at(g, b).crossing)
        .collect();
    let key = |p: &(Loc, Loc)| {
        let (x, y) = (at(g, p.0).crossing, at(g, p.1).crossing);
        (x.min(y), x.max(y))
    };
    let mut out = Vec::new();
    for i in 0..ps.len() {
        let (a, b) = key(&ps[i]);
        for j in (i + 1)..ps.len() {
            let (c1, c2) = key(&ps[j]);
            // second pair shares exactly the smaller crossing `a`
            if !(c1 == a || c2 == a) || (c1, c2) == (a, b) {
                continue;
            }
            let c = if c1 == a { c2 } else { c1 };
            if c == b {
                continue;
            }
            for k in (j + 1)..ps.len() {
                if key(&ps[k]) != (b.min(c), b.max(c)) {
                    continue;
                }
                let tri = [ps[i], ps[j], ps[k]];
                let locs: BTreeSet<Loc> = tri.iter().flat_map(|p| [p.0, p.1]).collect();
                if locs.len() != 6 {
                    continue;
                }
                let top = tri.iter().any(|p| at(g, p.0).over && at(g, p.1).over);
                if !top {
                    continue;
                }
                let mut h = g.clone();
                for p in tri {
                    let (x, y) = (at(g, p.0), at(g, p.1));
                    h.components[p.0 .0][p.0 .1] = y;
                    h.components[p.1 .0][p.1 .1] = x;
                }
                if pd_from_gauss(&h).is_ok() {
                    out.push(h);
                }
            }
        }
    }
    out
}

fn reduce_once(g: &GaussCode) -> Option<GaussCode> {
    if let Some(c) = find_r1(g) {
        return Some(remove_crossings(g, &[c]));
    }
    if let Some(pair) = find_r2(g) {
        let h = remove_crossings(g, &pair);
        if pd_from_gauss(&h).is_ok() {
            return Some(h);
        }
    }
    None
}

fn state_key(g: &GaussCode) -> Option<PlanarDiagram> {
    pd_from_gauss(g).ok()?.canonical().ok()
}

/// Simplifies `d` by R1/R2 reductions with bounded R3 exploration.
///
/// Invalid input is returned unchanged.
pub fn reidemeister_simplify(d: &PlanarDiagram, budget: usize) -> PlanarDiagram {
    let Ok(mut g) = gauss_from_pd(d) else {
        return d.clone();
    };
    let mut changed = false;
    loop {
        if let Some(h) = reduce_once(&g) {
            g = h;
            changed = true;
            continue;
        }
        // breadth-first over R3 moves
        let mut seen = BTreeSet::new();
        if let Some(k) = state_key(&g) {
            seen.insert(k);
        }
        let mut queue = VecDeque::from([g.clone()]);
        let mut steps = 0;
        let mut found = None;
        'bfs: while let Some(s) = queue.pop_front() {
            for h in r3_moves(&s) {
                steps += 1;
                if steps > budget {
                    break 'bfs;
                }
                if let Some(r) = reduce_once(&h) {
                    found = Some(r);
                    break 'bfs;
                }
                if let Some(k) = state_key(&h) {
                    if seen.insert(k) {
                        queue.push_back(h);
                    }
                }
            }
        }
        match found {
            Some(r) => {
                g = r;
                changed = true;
            }
            None => break,
        }
    }
    if !changed {
        return d.clone();
    }
    pd_from_gauss(&g).unwrap_or_else(|_| d.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn kink_removed() {
        assert_eq!(
            reidemeister_simplify(&positive_kink(), DEFAULT_R3_BUDGET),
            PlanarDiagram::unknot()
        );
        assert_eq!(
            reidemeister_simplify(&negative_kink(), DEFAULT_R3_BUDGET),
            PlanarDiagram::unknot()
        );
    }

    #[test]
    fn trefoil_is_stable() {
        let t = right_trefoil();
        assert_eq!(reidemeister_simplify(&t, DEFAULT_R3_BUDGET), t);
        let f = figure_eight();
        assert_eq!(reidemeister_simplify(&f, DEFAULT_R3_BUDGET), f);
    }

    #[test]
    fn bigon_removed() {
        let g: GaussCode = "O1+ O2-;U1+ U2-".parse().unwrap();
        let d = pd_from_gauss(&g).unwrap();
        assert_eq!(reidemeister_simplify(&d, DEFAULT_R3_BUDGET), two_unknots());
    }

    #[test]
    fn hopf_is_stable() {
        assert_eq!(reidemeister_simplify(&hopf(), DEFAULT_R3_BUDGET), hopf());
    }
}
