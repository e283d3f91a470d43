//! The graph of a knot with attached circles: one vertex per circle, an edge
//! `{i, j}` when circle `i` passes over circle `j` (`i < j`), a star when the
//! knot passes over a circle and a self-loop when a circle's free arc is not
//! descending. Built from the spare arcs of an unmoved marked diagram.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::bracket::{bracket, evaluate, evaluations, FormalSum, Invariant, Value};
use crate::error::{Error, Result};
use crate::geometry::{contact, key, resolve, Contact, CrossingKey, Param, Segment};
use crate::moves::{drawn_segments, MarkedDiagram, MoveGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Edge { i: usize, j: usize },
    Star { i: usize },
    Loop { i: usize },
}

impl Target {
    fn first_vertex(&self) -> usize {
        match *self {
            Target::Edge { i, .. } | Target::Star { i } | Target::Loop { i } => i,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub target: Target,
    pub crossings: BTreeSet<CrossingKey>,
}

/// Vertices are indexed by position in `vertices`, which lists reroute ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterdependenceGraph {
    pub vertices: Vec<u32>,
    pub edges: BTreeSet<(usize, usize)>,
    pub self_loops: BTreeSet<usize>,
    pub stars: BTreeSet<usize>,
    pub provenance: Vec<Provenance>,
}

impl InterdependenceGraph {
    /// Graph on `n` vertices with no witnessing crossings.
    pub fn abstract_graph(
        n: usize,
        edges: &[(usize, usize)],
        loops: &[usize],
        stars: &[usize],
    ) -> Self {
        let edges: BTreeSet<(usize, usize)> =
            edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let mut provenance: Vec<Provenance> = edges
            .iter()
            .map(|&(i, j)| Target::Edge { i, j })
            .chain(loops.iter().map(|&i| Target::Loop { i }))
            .chain(stars.iter().map(|&i| Target::Star { i }))
            .map(|target| Provenance {
                target,
                crossings: BTreeSet::new(),
            })
            .collect();
        provenance.sort_by_key(|p| p.target);
        provenance.dedup_by_key(|p| p.target);
        Self {
            vertices: (0..n as u32).collect(),
            edges,
            self_loops: loops.iter().copied().collect(),
            stars: stars.iter().copied().collect(),
            provenance,
        }
    }

    /// Edges, self-loops and stars: the quantity the reduction lowers.
    pub fn edges_plus_stars(&self) -> usize {
        self.edges.len() + self.self_loops.len() + self.stars.len()
    }

    pub fn witnesses(&self, t: &Target) -> Option<&BTreeSet<CrossingKey>> {
        self.provenance
            .iter()
            .find(|p| p.target == *t)
            .map(|p| &p.crossings)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Owner {
    Knot,
    Circle(usize),
}

struct Classified {
    key: CrossingKey,
    over: Owner,
    under: Owner,
    /// For a self-crossing: met first as the under strand.
    ascending: bool,
}

fn ordering_positions(m: &MarkedDiagram, ordering: &[u32]) -> Result<BTreeMap<u32, usize>> {
    let ids: BTreeSet<u32> = m.reroutes.iter().map(|r| r.id).collect();
    let pos: BTreeMap<u32, usize> = ordering.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    if pos.len() != ordering.len() || pos.keys().any(|r| !ids.contains(r)) {
        return Err(Error::Precondition(format!(
            "ordering {ordering:?} is not a list of distinct circles"
        )));
    }
    Ok(pos)
}

fn classify(m: &MarkedDiagram, pos: &BTreeMap<u32, usize>) -> Result<Vec<Classified>> {
    let drawn = drawn_segments(m)?;
    let segs: Vec<Segment> = drawn.iter().map(|d| d.0).collect();
    let owner: Vec<Option<Owner>> = drawn
        .iter()
        .map(|d| match d.1 {
            None => Some(Owner::Knot),
            Some(r) => pos.get(&r).map(|&i| Owner::Circle(i)),
        })
        .collect();
    let mut along: BTreeMap<u32, usize> = BTreeMap::new();
    for r in &m.reroutes {
        along.extend(
            m.spare_arc(r)
                .ids
                .iter()
                .enumerate()
                .map(|(i, &id)| (id, i)),
        );
    }
    let mut out = Vec::new();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (Some(oi), Some(oj)) = (owner[i], owner[j]) else {
                continue;
            };
            if oi == Owner::Knot && oj == Owner::Knot {
                continue;
            }
            let Contact::Cross(ti, tj) = contact(&segs[i], &segs[j]) else {
                continue;
            };
            let h = resolve(&segs, i, j, ti, tj, &m.switched)?;
            let (over, under) = (owner[h.over], owner[h.under]);
            let (Some(over), Some(under)) = (over, under) else {
                continue;
            };
            let ascending = over == under && {
                let first_over: (usize, Param) = (along[&segs[h.over].id], h.t_over);
                let first_under: (usize, Param) = (along[&segs[h.under].id], h.t_under);
                first_under < first_over
            };
            out.push(Classified {
                key: key(segs[i].id, segs[j].id),
                over,
                under,
                ascending,
            });
        }
    }
    Ok(out)
}

/// Graph of `m` with vertices in the order of `ordering` (reroute ids).
pub fn build_graph(m: &MarkedDiagram, ordering: &[u32]) -> Result<InterdependenceGraph> {
    let pos = ordering_positions(m, ordering)?;
    let mut prov: BTreeMap<Target, BTreeSet<CrossingKey>> = BTreeMap::new();
    for c in classify(m, &pos)? {
        let target = match (c.over, c.under) {
            (Owner::Knot, Owner::Circle(i)) => Target::Star { i },
            (Owner::Circle(i), Owner::Circle(j)) if i < j => Target::Edge { i, j },
            (Owner::Circle(i), Owner::Circle(j)) if i == j && c.ascending => Target::Loop { i },
            _ => continue,
        };
        prov.entry(target).or_default().insert(c.key);
    }
    let mut g = InterdependenceGraph {
        vertices: ordering.to_vec(),
        edges: BTreeSet::new(),
        self_loops: BTreeSet::new(),
        stars: BTreeSet::new(),
        provenance: Vec::new(),
    };
    for (target, crossings) in prov {
        match target {
            Target::Edge { i, j } => g.edges.insert((i, j)),
            Target::Star { i } => g.stars.insert(i),
            Target::Loop { i } => g.self_loops.insert(i),
        };
        g.provenance.push(Provenance { target, crossings });
    }
    Ok(g)
}

/// Graph of `m` with its circles in reroute order.
pub fn build_graph_default(m: &MarkedDiagram) -> Result<InterdependenceGraph> {
    let ids: Vec<u32> = m.reroutes.iter().map(|r| r.id).collect();
    build_graph(m, &ids)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStats {
    pub b0: usize,
    pub b1: usize,
    pub star_free_components: usize,
}

/// Component label of every vertex (the smallest vertex of its component).
fn components(g: &InterdependenceGraph) -> Vec<usize> {
    let n = g.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in &g.edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi] = lo;
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

pub fn component_stats(g: &InterdependenceGraph) -> ComponentStats {
    let comp = components(g);
    let roots: BTreeSet<usize> = comp.iter().copied().collect();
    let starred: BTreeSet<usize> = g.stars.iter().map(|&v| comp[v]).collect();
    let b0 = roots.len();
    let e = g.edges.len() + g.self_loops.len();
    ComponentStats {
        b0,
        b1: e + b0 - g.vertices.len(),
        star_free_components: b0 - starred.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LemmaOutcome {
    /// `k + 1` unstarred, pairwise non-adjacent, loop-free vertices.
    Witness {
        vertices: Vec<usize>,
    },
    TooManyTargets {
        count: usize,
        k: usize,
    },
}

/// Picks the smallest vertex of each star-free tree component (no cycles, no
/// self-loops) when `E + st <= k`.
pub fn lemma_witness(g: &InterdependenceGraph, k: usize) -> Result<LemmaOutcome> {
    let n = g.vertices.len();
    if n != 2 * k + 1 {
        return Err(Error::Precondition(format!(
            "{n} vertices, expected {}",
            2 * k + 1
        )));
    }
    let count = g.edges_plus_stars();
    if count > k {
        return Ok(LemmaOutcome::TooManyTargets { count, k });
    }
    let stats = component_stats(g);
    if stats.b0 < g.stars.len() + k + 1 {
        return Err(Error::CheckFailed(format!(
            "b0 = {} with {} stars is below k + 1 = {}",
            stats.b0,
            g.stars.len(),
            k + 1
        )));
    }
    let comp = components(g);
    let mut size: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &c in &comp {
        size.entry(c).or_default().0 += 1;
    }
    for &(a, _) in &g.edges {
        size.entry(comp[a]).or_default().1 += 1;
    }
    let bad: BTreeSet<usize> = g
        .stars
        .iter()
        .chain(g.self_loops.iter())
        .map(|&v| comp[v])
        .collect();
    let vertices: Vec<usize> = size
        .iter()
        .filter(|(c, (v, e))| *e + 1 == *v && !bad.contains(c))
        .map(|(&c, _)| c)
        .take(k + 1)
        .collect();
    if vertices.len() < k + 1 {
        return Err(Error::CheckFailed(format!(
            "only {} star-free tree components",
            vertices.len()
        )));
    }
    Ok(LemmaOutcome::Witness { vertices })
}

/// The crossings to switch to remove `target` from the graph.
pub fn elimination_group(g: &InterdependenceGraph, target: &Target) -> Result<MoveGroup> {
    g.witnesses(target)
        .map(|c| MoveGroup::switch(c.iter().copied()))
        .ok_or_else(|| Error::Precondition(format!("{target:?} is not in the graph")))
}

fn circle_order(m: &MarkedDiagram, s: &[MoveGroup]) -> Result<Vec<u32>> {
    let mut ids = Vec::new();
    for (i, g) in s.iter().enumerate() {
        match g {
            MoveGroup::Interdependent { reroutes } => ids.extend(reroutes.iter().copied()),
            _ => {
                return Err(Error::Precondition(format!(
                    "group {i} is not a circle move"
                )))
            }
        }
    }
    for &r in &ids {
        m.reroute(r)?;
    }
    Ok(ids)
}

/// The `k + 1` targets with fewest witnesses, ties broken by vertex.
fn choose_targets(g: &InterdependenceGraph, k: usize) -> Vec<Target> {
    let mut all: Vec<&Provenance> = g.provenance.iter().collect();
    all.sort_by_key(|p| (p.crossings.len(), p.target.first_vertex(), p.target));
    all.into_iter().take(k + 1).map(|p| p.target).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    /// Mask over the chosen targets.
    pub tau: u64,
    pub sign: i64,
    pub diagram: MarkedDiagram,
    pub edges_plus_stars: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub edges_plus_stars: usize,
    pub targets: Vec<Target>,
    pub groups: Vec<MoveGroup>,
    pub branches: Vec<Branch>,
}

/// Splits `[m; S]` along `k + 1` elimination groups `T`:
/// `[m; S] = [[m; S]; T] - sum over nonempty tau of (-1)^|tau| [m_tau; S]`.
/// Branch signs include `sign`.
pub fn reduction_step(
    m: &MarkedDiagram,
    s: &[MoveGroup],
    k: usize,
    sign: i64,
) -> Result<ReductionStep> {
    let g = build_graph(m, &circle_order(m, s)?)?;
    let count = g.edges_plus_stars();
    if count <= k {
        return Err(Error::Precondition(format!(
            "edges plus stars = {count} is at most k = {k}"
        )));
    }
    let targets = choose_targets(&g, k);
    let groups = targets
        .iter()
        .map(|t| elimination_group(&g, t))
        .collect::<Result<Vec<_>>>()?;
    let order = circle_order(m, s)?;
    let mut branches = Vec::new();
    for tau in 1..1u64 << groups.len() {
        let d = m.apply_mask(&groups, tau)?;
        let after = build_graph(&d, &order)?.edges_plus_stars();
        if after >= count {
            return Err(Error::CheckFailed(format!(
                "branch {tau:#b} keeps {after} of {count} targets"
            )));
        }
        let parity = if tau.count_ones() % 2 == 0 { 1 } else { -1 };
        branches.push(Branch {
            tau,
            sign: -parity * sign,
            diagram: d,
            edges_plus_stars: after,
        });
    }
    Ok(ReductionStep {
        edges_plus_stars: count,
        targets,
        groups,
        branches,
    })
}

/// Type-`<= k` invariants among those implemented.
pub fn applicable_invariants(k: usize) -> Vec<Invariant> {
    let mut v = Vec::new();
    if k >= 2 {
        v.push(Invariant::V2);
    }
    if k >= 3 {
        v.push(Invariant::V3);
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCheck {
    pub branches: usize,
    pub identity: bool,
    /// `(invariant, parent value, signed branch total)`.
    pub congruence: Vec<(Invariant, Value, Value)>,
    pub fewer_targets: bool,
    pub pass: bool,
}

fn add_values(a: Value, b: Value) -> Value {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => Value::Int(x + y),
        (Value::Poly(x), Value::Poly(y)) => Value::Poly(x + y),
        (Value::Int(0), p) | (p, Value::Int(0)) => p,
        (a, _) => a,
    }
}

/// Verifies one reduction step: the exact formal identity and, for each
/// applicable invariant, parent value = signed sum of branch values.
pub fn check_step(
    m: &MarkedDiagram,
    s: &[MoveGroup],
    k: usize,
    step: &ReductionStep,
) -> Result<StepCheck> {
    let parent = bracket(m, s)?;
    let mut st: Vec<MoveGroup> = s.to_vec();
    st.extend(step.groups.iter().cloned());
    let remainder = bracket(m, &st)?;
    let mut total = FormalSum::zero();
    let mut sums = Vec::new();
    for b in &step.branches {
        let fs = bracket(&b.diagram, s)?;
        sums.push((b.sign, fs.clone()));
        total = if b.sign > 0 { total + fs } else { total - fs };
    }
    let identity = parent.clone() - total == remainder;
    let mut congruence = Vec::new();
    for v in applicable_invariants(k) {
        let pv = evaluate(&parent, v).map_err(|e| e.error)?;
        let mut acc = Value::Int(0);
        for (sign, fs) in &sums {
            acc = add_values(acc, evaluate(fs, v).map_err(|e| e.error)?.scaled(*sign));
        }
        congruence.push((v, pv, acc));
    }
    let fewer_targets = step
        .branches
        .iter()
        .all(|b| b.edges_plus_stars < step.edges_plus_stars);
    let pass = identity && fewer_targets && congruence.iter().all(|(_, a, b)| a == b);
    Ok(StepCheck {
        branches: step.branches.len(),
        identity,
        congruence,
        fewer_targets,
        pass,
    })
}

/// Default node budget of [`reduce_fully`].
pub const DEFAULT_NODE_BUDGET: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTree {
    pub nodes: usize,
    pub leaves: usize,
    pub depth: usize,
    /// Stopped at the node budget before reaching every leaf.
    pub truncated: bool,
    /// Each leaf (`E + st <= k`) evaluates to 0 under the applicable invariants.
    pub leaves_vanish: bool,
}

/// Repeats [`reduction_step`] until every branch has `E + st <= k`.
pub fn reduce_fully(
    m: &MarkedDiagram,
    s: &[MoveGroup],
    k: usize,
    budget: usize,
) -> Result<ReductionTree> {
    let order = circle_order(m, s)?;
    let inv = applicable_invariants(k);
    let mut tree = ReductionTree {
        nodes: 0,
        leaves: 0,
        depth: 0,
        truncated: false,
        leaves_vanish: true,
    };
    let mut frontier: Vec<(MarkedDiagram, i64)> = alloc::vec![(m.clone(), 1)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (d, sign) in frontier {
            tree.nodes += 1;
            if tree.nodes > budget {
                tree.truncated = true;
                return Ok(tree);
            }
            if build_graph(&d, &order)?.edges_plus_stars() <= k {
                tree.leaves += 1;
                let fs = bracket(&d, s)?;
                for &v in &inv {
                    if !evaluate(&fs, v).map_err(|e| e.error)?.is_zero() {
                        tree.leaves_vanish = false;
                    }
                }
            } else {
                next.extend(
                    reduction_step(&d, s, k, sign)?
                        .branches
                        .into_iter()
                        .map(|b| (b.diagram, b.sign)),
                );
            }
        }
        if !next.is_empty() {
            tree.depth += 1;
        }
        frontier = next;
    }
    Ok(tree)
}

/// One crossing-switch group per witness circle: every crossing where that
/// circle passes under another circle. Applying any nonempty subset lifts
/// the earliest chosen circle above everything it meets, so its move
/// becomes an isotopy.
pub fn disk_clearing_groups(
    m: &MarkedDiagram,
    s: &[MoveGroup],
    witnesses: &[usize],
) -> Result<Vec<MoveGroup>> {
    let order = circle_order(m, s)?;
    let pos = ordering_positions(m, &order)?;
    let g = build_graph(m, &order)?;
    for &w in witnesses {
        if w >= order.len() {
            return Err(Error::Precondition(format!("vertex {w} out of range")));
        }
        if g.stars.contains(&w) || g.self_loops.contains(&w) {
            return Err(Error::Precondition(format!(
                "witness {w} is starred or knotted"
            )));
        }
    }
    for (a, &w) in witnesses.iter().enumerate() {
        for &u in &witnesses[a + 1..] {
            if g.edges.contains(&(w.min(u), w.max(u))) {
                return Err(Error::Precondition(format!(
                    "witnesses {w} and {u} are adjacent"
                )));
            }
        }
    }
    let classified = classify(m, &pos)?;
    Ok(witnesses
        .iter()
        .map(|&w| {
            MoveGroup::switch(
                classified
                    .iter()
                    .filter(|c| c.under == Owner::Circle(w) && c.over != Owner::Circle(w))
                    .map(|c| c.key),
            )
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClearingCheck {
    pub subsets: usize,
    /// Subsets whose Jones evaluation was skipped over budget.
    pub jones_skipped: usize,
    pub pass: bool,
}

/// Checks that `[m_tau; S]` vanishes under v2, v3 and Jones for every
/// nonempty subset `tau` of `groups`.
pub fn check_disk_clearing(
    m: &MarkedDiagram,
    s: &[MoveGroup],
    groups: &[MoveGroup],
    jones_budget: usize,
) -> Result<ClearingCheck> {
    let mut out = ClearingCheck {
        subsets: 0,
        jones_skipped: 0,
        pass: true,
    };
    for tau in 1..1u64 << groups.len() {
        let e = evaluations(&bracket(&m.apply_mask(groups, tau)?, s)?, jones_budget)?;
        out.subsets += 1;
        if e.jones.is_none() {
            out.jones_skipped += 1;
        }
        let zero = e.v2.unwrap_or(0) == 0
            && e.v3.unwrap_or(0) == 0
            && e.jones.as_ref().is_none_or(|p| p.is_zero());
        out.pass &= zero;
    }
    Ok(out)
}
