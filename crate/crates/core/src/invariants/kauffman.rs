//! Kauffman bracket by a frontier sweep over crossings, and the Jones
//! polynomial obtained from it.
//!
//! The sweep keeps, for every pairing of the open arc ends seen so far, the
//! accumulated bracket contribution. Closed loops contribute
//! `d = -A^2 - A^-2`; the first loop of every state is free so that the
//! unknot normalizes to 1.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{Arc, PlanarDiagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

pub const DEFAULT_BRACKET_BUDGET: usize = 24;

/// Pairing of open arcs plus whether a loop has already closed.
type State = (Vec<(Arc, Arc)>, bool);

fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// Sweep order: each step takes the crossing sharing the most arcs with the
/// current frontier, ties broken by index.
fn sweep_order(d: &PlanarDiagram) -> Vec<usize> {
    let n = d.crossings.len();
    let mut done = vec![false; n];
    let mut frontier: BTreeMap<Arc, usize> = BTreeMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = None;
        let mut best_score = i64::MIN;
        for c in 0..n {
            if done[c] {
                continue;
            }
            let shared = d.crossings[c]
                .iter()
                .filter(|a| frontier.contains_key(a))
                .count() as i64;
            // prefer closing arcs over opening new ones
            let fresh = d.crossings[c].iter().collect::<BTreeSet<_>>().len() as i64 - shared;
            let score = 8 * shared - fresh;
            if score > best_score {
                best_score = score;
                best = Some(c);
            }
        }
        let c = best.expect("unprocessed crossing");
        done[c] = true;
        order.push(c);
        for a in d.crossings[c] {
            *frontier.entry(a).or_insert(0) += 1;
        }
        frontier.retain(|_, k| *k < 2);
    }
    order
}

/// Joins the strands of `pairs` with two new smoothing strands. Returns the
/// new open pairing and the number of closed loops.
fn join(pairs: &[(Arc, Arc)], new: [(Arc, Arc); 2]) -> (Vec<(Arc, Arc)>, usize) {
    // adjacency over arc labels; every arc has at most two incident strand ends
    let mut adj: BTreeMap<Arc, Vec<usize>> = BTreeMap::new();
    let mut edges: Vec<(Arc, Arc)> = pairs.to_vec();
    edges.extend(new);
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj.entry(a).or_default().push(i);
        adj.entry(b).or_default().push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut out = Vec::new();
    let walk = |start: Arc, first: usize, used: &mut Vec<bool>| -> Arc {
        let mut cur = start;
        let mut e = first;
        loop {
            used[e] = true;
            let (a, b) = edges[e];
            let next = if a == cur { b } else { a };
            let inc = &adj[&next];
            match inc.iter().find(|&&f| !used[f]) {
                Some(&f) if inc.len() == 2 => {
                    cur = next;
                    e = f;
                }
                _ => return next,
            }
        }
    };
    for (&arc, inc) in &adj {
        if inc.len() == 1 && !used[inc[0]] {
            let end = walk(arc, inc[0], &mut used);
            out.push((arc.min(end), arc.max(end)));
        }
    }
    let mut loops = 0;
    for i in 0..edges.len() {
        if !used[i] {
            loops += 1;
            let (a, _) = edges[i];
            walk(a, i, &mut used);
        }
    }
    out.sort_unstable();
    (out, loops)
}

/// Kauffman bracket in `A`, normalized so the crossingless unknot is 1.
///
/// At a crossing `[a, b, c, d]` the `A`-smoothing joins `a` with `d` and `b`
/// with `c`; with the sign convention of [`crate::diagram`] a positive kink
/// evaluates to `-A^3`.
pub fn kauffman_bracket(d: &PlanarDiagram, budget: usize) -> Result<LaurentPoly> {
    d.check()?;
    let n = d.crossings.len();
    if n > budget {
        return Err(Error::CrossingBudget {
            crossings: n,
            budget,
        });
    }
    let dl = loop_value();
    let traced = d.traced_components()?;
    let free_loops = d.components - traced;
    if n == 0 {
        return Ok(dl.pow(free_loops.saturating_sub(1) as u32));
    }
    let mut states: BTreeMap<State, LaurentPoly> = BTreeMap::new();
    states.insert((Vec::new(), false), LaurentPoly::one());
    for c in sweep_order(d) {
        let [a, b, cc, dd] = d.crossings[c];
        let smoothings = [([(a, dd), (b, cc)], 1i64), ([(a, b), (cc, dd)], -1i64)];
        let mut next: BTreeMap<State, LaurentPoly> = BTreeMap::new();
        for ((pairs, closed), val) in &states {
            for (sm, e) in &smoothings {
                let (np, loops) = join(pairs, *sm);
                let mut v = val.shift(*e);
                let mut now_closed = *closed;
                let mut extra = loops;
                if !now_closed && loops > 0 {
                    now_closed = true;
                    extra -= 1;
                }
                for _ in 0..extra {
                    v = &v * &dl;
                }
                let slot = next
                    .entry((np, now_closed))
                    .or_insert_with(LaurentPoly::zero);
                *slot += &v;
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let mut total = LaurentPoly::zero();
    for ((pairs, closed), v) in states {
        debug_assert!(pairs.is_empty() && closed);
        total += &v;
    }
    Ok(&total * &dl.pow(free_loops as u32))
}

/// Jones polynomial stored with exponents of `t^(1/2)`; `t = A^4`.
pub fn jones(d: &PlanarDiagram, budget: usize) -> Result<LaurentPoly> {
    let bracket = kauffman_bracket(d, budget)?;
    let w = d.writhe()?;
    // (-A^3)^(-w)
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let norm = LaurentPoly::monomial(sign, -3 * w);
    let in_a = &norm * &bracket;
    Ok(in_a
        .compress_exponents(2)
        .expect("bracket exponents are even after normalization"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    /// Plain 2^n state sum with union-find loop counting.
    fn brute_bracket(d: &PlanarDiagram) -> LaurentPoly {
        let n = d.crossings.len();
        let arcs: Vec<Arc> = {
            let s: BTreeSet<Arc> = d.crossings.iter().flatten().copied().collect();
            s.into_iter().collect()
        };
        let idx = |a: Arc| arcs.binary_search(&a).unwrap();
        let dl = loop_value();
        let mut total = LaurentPoly::zero();
        for mask in 0u32..(1 << n) {
            let mut parent: Vec<usize> = (0..arcs.len()).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            let mut exp = 0;
            for (c, t) in d.crossings.iter().enumerate() {
                let a_smooth = mask & (1 << c) == 0;
                let (p1, p2) = if a_smooth {
                    ((t[0], t[3]), (t[1], t[2]))
                } else {
                    ((t[0], t[1]), (t[2], t[3]))
                };
                exp += if a_smooth { 1 } else { -1 };
                for (x, y) in [p1, p2] {
                    let (rx, ry) = (find(&mut parent, idx(x)), find(&mut parent, idx(y)));
                    parent[rx] = ry;
                }
            }
            let loops = (0..arcs.len())
                .filter(|&i| find(&mut parent, i) == i)
                .count();
            total += &(&LaurentPoly::monomial(1, exp) * &dl.pow(loops as u32 - 1));
        }
        total
    }

    #[test]
    fn unknot_and_kink() {
        assert_eq!(
            kauffman_bracket(&PlanarDiagram::unknot(), 24).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            kauffman_bracket(&positive_kink(), 24).unwrap(),
            LaurentPoly::monomial(-1, 3)
        );
        assert_eq!(
            kauffman_bracket(&negative_kink(), 24).unwrap(),
            LaurentPoly::monomial(-1, -3)
        );
    }

    #[test]
    fn two_unknots_loop_value() {
        assert_eq!(
            kauffman_bracket(&two_unknots(), 24).unwrap(),
            LaurentPoly::from_terms([(2, -1), (-2, -1)])
        );
    }

    #[test]
    fn sweep_matches_state_sum() {
        for d in [
            right_trefoil(),
            figure_eight(),
            hopf(),
            positive_kink(),
            right_trefoil()
                .connected_sum(&figure_eight(), 2, 5)
                .unwrap(),
        ] {
            assert_eq!(
                kauffman_bracket(&d, 24).unwrap(),
                brute_bracket(&d),
                "{:?}",
                d
            );
        }
    }

    #[test]
    fn jones_values() {
        let t = |e: &[(i64, i64)]| LaurentPoly::from_terms(e.iter().map(|&(k, c)| (2 * k, c)));
        assert_eq!(
            jones(&PlanarDiagram::unknot(), 24).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(jones(&positive_kink(), 24).unwrap(), LaurentPoly::one());
        assert_eq!(
            jones(&right_trefoil(), 24).unwrap(),
            t(&[(-4, -1), (-3, 1), (-1, 1)])
        );
        assert_eq!(
            jones(&left_trefoil(), 24).unwrap(),
            t(&[(4, -1), (3, 1), (1, 1)])
        );
        assert_eq!(
            jones(&figure_eight(), 24).unwrap(),
            t(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)])
        );
    }

    #[test]
    fn budget_enforced() {
        assert_eq!(
            kauffman_bracket(&figure_eight(), 3),
            Err(Error::CrossingBudget {
                crossings: 4,
                budget: 3
            })
        );
    }
}
