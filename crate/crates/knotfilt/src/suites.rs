//! Seeded verification suites. Every suite is a pure function of its
//! [`SuiteConfig`]; reports list instances in generation order.

use std::collections::BTreeSet;

use knotfilt_core::bracket::{
    bracket_switches, evaluate, theorem1_check, vanish_check, Family, Invariant,
};
use knotfilt_core::circlegraph::{
    build_graph_default, check_step, lemma_witness, reduce_fully, reduction_step,
    InterdependenceGraph, LemmaOutcome, Target,
};
use knotfilt_core::clasper::{surgery_marked, verify_grope_theorem, DEFAULT_CROSSING_CAP};
use knotfilt_core::diagram::fixtures::right_trefoil;
use knotfilt_core::generate::{circle_instance, finger_instance, random_braid_knot, rng};
use knotfilt_core::invariants::fingerprint_with;
use knotfilt_core::moves::{MarkedDiagram, MoveGroup};
use knotfilt_core::{Error, PlanarDiagram};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::fixtures;
use crate::io::{BracketInput, ClasperInput};
use crate::report::{value_json, EvaluationsReport, FingerprintReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    VassilievAxiom,
    Theorem1,
    Theorem2Lemma,
    Theorem2Consequence,
    ReductionStep,
    Clasper,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::VassilievAxiom,
        Suite::Theorem1,
        Suite::Theorem2Lemma,
        Suite::Theorem2Consequence,
        Suite::ReductionStep,
        Suite::Clasper,
    ];

    fn salt(self) -> u64 {
        0x9e37_79b9_7f4a_7c15u64.wrapping_mul(self as u64 + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Degrees to run; each suite has its own default.
    pub k: Option<Vec<usize>>,
    /// Instances per generated family; each suite has its own default.
    pub instances: Option<usize>,
    /// Lemma: exhaustive up to this many vertices.
    pub exhaustive_upto: usize,
    /// Lemma: random graphs per vertex count above that.
    pub random_graphs: usize,
    /// Largest simplified diagram whose Jones polynomial is computed.
    pub budget_crossings: Option<usize>,
    /// Largest number of groups in one bracket.
    pub budget_terms: usize,
    /// Node budget of the full reduction tree.
    pub branch_budget: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            k: None,
            instances: None,
            exhaustive_upto: 5,
            random_graphs: 10_000,
            budget_crossings: None,
            budget_terms: 12,
            branch_budget: 1000,
        }
    }
}

impl SuiteConfig {
    fn jones_budget(&self, default: usize) -> usize {
        self.budget_crossings.unwrap_or(default)
    }

    fn count(&self, default: usize) -> usize {
        self.instances.unwrap_or(default)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceReport {
    pub index: usize,
    pub label: String,
    pub pass: bool,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub config: SuiteConfig,
    pub instances: Vec<InstanceReport>,
    pub passed: usize,
    pub failed: usize,
    /// Instances abandoned over a budget, with the reason.
    pub skipped: Vec<String>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn table(&self) -> String {
        let mut s = String::new();
        for i in &self.instances {
            s.push_str(&format!(
                "{:>4}  {:<4}  {}\n",
                i.index,
                if i.pass { "ok" } else { "FAIL" },
                i.label
            ));
        }
        for k in &self.skipped {
            s.push_str(&format!("      skip  {k}\n"));
        }
        s.push_str(&format!(
            "{:?}: {} passed, {} failed, {} skipped\n",
            self.suite,
            self.passed,
            self.failed,
            self.skipped.len()
        ));
        s
    }
}

struct Collector {
    instances: Vec<InstanceReport>,
    skipped: Vec<String>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            instances: Vec::new(),
            skipped: Vec::new(),
        }
    }

    fn push(&mut self, label: String, pass: bool, detail: serde_json::Value) {
        let index = self.instances.len();
        self.instances.push(InstanceReport {
            index,
            label,
            pass,
            detail,
        });
    }

    /// Records an error: budget overruns are skipped, anything else fails.
    fn error(&mut self, label: String, e: Error) -> Result<(), Error> {
        match e {
            Error::CrossingBudget { .. } | Error::TermBudget { .. } => {
                self.skipped.push(format!("{label}: {e}"));
                Ok(())
            }
            Error::Precondition(_) => Err(e),
            e => {
                self.push(label, false, json!({ "error": e.to_string() }));
                Ok(())
            }
        }
    }

    fn finish(self, suite: Suite, config: &SuiteConfig) -> SuiteReport {
        let passed = self.instances.iter().filter(|i| i.pass).count();
        let failed = self.instances.len() - passed;
        SuiteReport {
            suite,
            config: config.clone(),
            instances: self.instances,
            passed,
            failed,
            skipped: self.skipped,
            pass: failed == 0 && passed > 0,
        }
    }
}

/// Runs one suite. Errors only on invalid configuration.
pub fn run(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut c = Collector::new();
    match suite {
        Suite::VassilievAxiom => vassiliev_axiom(config, &mut c)?,
        Suite::Theorem1 => theorem1(config, &mut c)?,
        Suite::Theorem2Lemma => theorem2_lemma(config, &mut c)?,
        Suite::Theorem2Consequence => theorem2_consequence(config, &mut c)?,
        Suite::ReductionStep => reduction(config, &mut c)?,
        Suite::Clasper => clasper(config, &mut c)?,
    }
    Ok(c.finish(suite, config))
}

fn check_terms(config: &SuiteConfig, groups: usize) -> Result<(), Error> {
    if groups > config.budget_terms {
        return Err(Error::TermBudget {
            terms: groups,
            budget: config.budget_terms,
        });
    }
    Ok(())
}

/// A knot with between `min` and 12 crossings.
fn small_knot<R: Rng>(r: &mut R, min: usize) -> PlanarDiagram {
    loop {
        let d = random_braid_knot(r, 4, 12);
        if (min..=12).contains(&d.crossings.len()) {
            return d;
        }
    }
}

/// `g` disjoint nonempty groups of crossing indices.
fn random_groups<R: Rng>(r: &mut R, n: usize, g: usize) -> Vec<BTreeSet<usize>> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(r);
    let mut groups = vec![BTreeSet::new(); g];
    for (i, &c) in idx.iter().enumerate() {
        if i < g {
            groups[i].insert(c);
        } else if let Some(slot) = groups.get_mut(r.gen_range(0..2 * g)) {
            slot.insert(c);
        }
    }
    groups
}

fn vassiliev_axiom(config: &SuiteConfig, c: &mut Collector) -> Result<(), Error> {
    let mut r = rng(config.seed ^ Suite::VassilievAxiom.salt());
    for (v, groups) in [(Invariant::V2, 3), (Invariant::V3, 4)] {
        check_terms(config, groups)?;
        for _ in 0..config.count(100) {
            let d = small_knot(&mut r, groups);
            let gs = random_groups(&mut r, d.crossings.len(), groups);
            let label = format!(
                "{v:?} over {groups} switch groups, {} crossings",
                d.crossings.len()
            );
            match bracket_switches(&d, &gs).and_then(|fs| evaluate(&fs, v).map_err(|e| e.error)) {
                Ok(val) => c.push(
                    label,
                    val.is_zero(),
                    json!({ "invariant": v, "diagram": d, "groups": gs, "value": value_json(&val) }),
                ),
                Err(e) => c.error(label, e)?,
            }
        }
    }
    Ok(())
}

fn theorem1(config: &SuiteConfig, c: &mut Collector) -> Result<(), Error> {
    let mut r = rng(config.seed ^ Suite::Theorem1.salt());
    let ks = config.k.clone().unwrap_or_else(|| vec![0, 1, 2]);
    let jb = config.jones_budget(24);
    for &k in &ks {
        check_terms(config, 2 * k + 2)?;
        if k > 3 {
            return Err(Error::Precondition(format!(
                "theorem1 supports k <= 3, got {k}"
            )));
        }
        for i in 0..config.count(20) {
            let label = format!("k={k} #{i}");
            let res = finger_instance(&mut r, 6, k + 1, 2000)
                .and_then(|(m, f)| theorem1_check(&m, &f, jb));
            match res {
                Ok(rep) => {
                    let jones_compared = rep.circles.jones.is_some() && rep.fingers.jones.is_some();
                    c.push(
                        label,
                        rep.pass && jones_compared,
                        json!({
                            "k": rep.k,
                            "sign": rep.sign,
                            "circle_terms": rep.circle_terms,
                            "finger_terms": rep.finger_terms,
                            "circles": EvaluationsReport::from(&rep.circles),
                            "fingers": EvaluationsReport::from(&rep.fingers),
                            "jones_compared": jones_compared,
                            "relations_checked": rep.relations_checked,
                            "relation_failures": rep.relation_failures,
                        }),
                    );
                }
                Err(e) => c.error(label, e)?,
            }
        }
    }
    Ok(())
}

/// Every candidate target on `n` vertices, in a fixed order.
pub fn all_targets(n: usize) -> Vec<Target> {
    let mut items = Vec::new();
    for i in 0..n {
        items.push(Target::Star { i });
        items.push(Target::Loop { i });
        for j in (i + 1)..n {
            items.push(Target::Edge { i, j });
        }
    }
    items
}

fn graph_of(n: usize, chosen: &[Target]) -> InterdependenceGraph {
    let (mut e, mut l, mut s) = (Vec::new(), Vec::new(), Vec::new());
    for t in chosen {
        match *t {
            Target::Edge { i, j } => e.push((i, j)),
            Target::Loop { i } => l.push(i),
            Target::Star { i } => s.push(i),
        }
    }
    InterdependenceGraph::abstract_graph(n, &e, &l, &s)
}

/// Lemma conclusion on one graph: a witness of `k + 1` unstarred,
/// loop-free, pairwise non-adjacent vertices.
fn lemma_ok(g: &InterdependenceGraph, k: usize) -> bool {
    match lemma_witness(g, k) {
        Ok(LemmaOutcome::Witness { vertices }) => {
            vertices.len() == k + 1
                && vertices
                    .iter()
                    .all(|v| !g.stars.contains(v) && !g.self_loops.contains(v))
                && vertices.iter().enumerate().all(|(a, &v)| {
                    vertices[a + 1..]
                        .iter()
                        .all(|&u| !g.edges.contains(&(v.min(u), v.max(u))))
                })
        }
        _ => false,
    }
}

fn subsets_upto(
    items: usize,
    max: usize,
    out: &mut Vec<Vec<usize>>,
    cur: &mut Vec<usize>,
    from: usize,
) {
    out.push(cur.clone());
    if cur.len() == max {
        return;
    }
    for i in from..items {
        cur.push(i);
        subsets_upto(items, max, out, cur, i + 1);
        cur.pop();
    }
}

fn theorem2_lemma(config: &SuiteConfig, c: &mut Collector) -> Result<(), Error> {
    let mut r = rng(config.seed ^ Suite::Theorem2Lemma.salt());
    for n in [3usize, 5, 7, 9] {
        let k = (n - 1) / 2;
        let items = all_targets(n);
        let exhaustive = n <= config.exhaustive_upto;
        let (mut checked, mut failures) = (0usize, Vec::new());
        if exhaustive {
            let mut subsets = Vec::new();
            subsets_upto(items.len(), k, &mut subsets, &mut Vec::new(), 0);
            for s in subsets {
                let chosen: Vec<Target> = s.iter().map(|&i| items[i]).collect();
                checked += 1;
                if !lemma_ok(&graph_of(n, &chosen), k) {
                    failures.push(chosen);
                }
            }
        } else {
            for _ in 0..config.random_graphs {
                let count = r.gen_range(0..=k);
                let chosen: Vec<Target> = items.choose_multiple(&mut r, count).copied().collect();
                checked += 1;
                if !lemma_ok(&graph_of(n, &chosen), k) {
                    failures.push(chosen);
                }
            }
        }
        c.push(
            format!("{n} vertices, {} graphs, {}", checked, if exhaustive { "exhaustive" } else { "random" }),
            failures.is_empty() && checked > 0,
            json!({ "vertices": n, "k": k, "exhaustive": exhaustive, "graphs": checked, "failures": failures }),
        );
    }
    Ok(())
}

fn circle_moves(m: &MarkedDiagram) -> Vec<MoveGroup> {
    m.reroutes
        .iter()
        .map(|r| MoveGroup::reroute(r.id))
        .collect()
}

fn consequence_instance(
    c: &mut Collector,
    label: String,
    m: &MarkedDiagram,
    s: &[MoveGroup],
    v: Invariant,
    k: usize,
) -> Result<(), Error> {
    let g = build_graph_default(m);
    match vanish_check(m, s, Family::Alt, v, k) {
        Ok(rep) => c.push(
            label,
            rep.pass && rep.predicted,
            json!({
                "claim": rep.claim,
                "invariant": v,
                "term_count": rep.term_count,
                "value": value_json(&rep.evaluation),
                "edges_plus_stars": g.ok().map(|g| g.edges_plus_stars()),
            }),
        ),
        Err(e) => c.error(label, e)?,
    }
    Ok(())
}

fn theorem2_consequence(config: &SuiteConfig, c: &mut Collector) -> Result<(), Error> {
    let mut r = rng(config.seed ^ Suite::Theorem2Consequence.salt());
    let ks = config.k.clone().unwrap_or_else(|| vec![2, 3]);
    for &k in &ks {
        let (v, count) = match k {
            2 => (Invariant::V2, config.count(50)),
            3 => (Invariant::V3, config.count(10)),
            _ => {
                return Err(Error::Precondition(format!(
                    "theorem2-consequence supports k in {{2, 3}}, got {k}"
                )))
            }
        };
        let n = 2 * k + 1;
        check_terms(config, n)?;
        if k == 2 {
            let f: BracketInput =
                serde_json::from_str(fixtures::FIVE_CIRCLES).expect("shipped fixture parses");
            consequence_instance(c, "fixture five_circles".into(), &f.marked, &f.moves, v, k)?;
        }
        for i in 0..count {
            let label = format!("{n} circles #{i}");
            match circle_instance(&mut r, 5, n, 1 + i % 2, 4000) {
                Ok(m) => consequence_instance(c, label, &m, &circle_moves(&m), v, k)?,
                Err(e) => c.error(label, e)?,
            }
        }
    }
    Ok(())
}

fn reduction(config: &SuiteConfig, c: &mut Collector) -> Result<(), Error> {
    let mut r = rng(config.seed ^ Suite::ReductionStep.salt());
    let k = 2;
    check_terms(config, 3 * k + 2)?;
    let want = config.count(10);
    let mut attempts = 0;
    while c.instances.len() < want && attempts < 50 * want {
        attempts += 1;
        let Ok(m) = circle_instance(&mut r, 5, 2 * k + 1, 1, 4000) else {
            continue;
        };
        let s = circle_moves(&m);
        let count = build_graph_default(&m)?.edges_plus_stars();
        if count <= k {
            continue;
        }
        let label = format!("edges plus stars {count}");
        let res = reduction_step(&m, &s, k, 1).and_then(|step| {
            let check = check_step(&m, &s, k, &step)?;
            let tree = reduce_fully(&m, &s, k, config.branch_budget)?;
            Ok((step, check, tree))
        });
        match res {
            Ok((step, check, tree)) => c.push(
                label,
                check.pass && tree.leaves_vanish,
                json!({
                    "edges_plus_stars": step.edges_plus_stars,
                    "targets": step.targets,
                    "branches": step.branches.iter().map(|b| json!({ "tau": b.tau, "sign": b.sign, "edges_plus_stars": b.edges_plus_stars })).collect::<Vec<_>>(),
                    "identity": check.identity,
                    "fewer_targets": check.fewer_targets,
                    "congruence": check.congruence.iter().map(|(v, a, b)| json!({ "invariant": v, "parent": value_json(a), "branches": value_json(b) })).collect::<Vec<_>>(),
                    "tree": tree,
                }),
            ),
            Err(e) => c.error(label, e)?,
        }
    }
    Ok(())
}

fn clasper(config: &SuiteConfig, c: &mut Collector) -> Result<(), Error> {
    let ks = config.k.clone().unwrap_or_else(|| vec![2]);
    let jb = config.jones_budget(72);
    let all: Vec<ClasperInput> = fixtures::CLASPERS
        .iter()
        .map(|s| serde_json::from_str(s).expect("shipped fixture parses"))
        .collect();

    let y = all
        .iter()
        .find(|x| x.clasper.n() == 2)
        .expect("shipped Y-clasper");
    match surgery_marked(&y.knot, &y.clasper, DEFAULT_CROSSING_CAP)
        .and_then(|s| fingerprint_with(&s.diagram()?, jb))
    {
        Ok(f) => {
            let t = fingerprint_with(&right_trefoil(), jb)?;
            let m = fingerprint_with(&right_trefoil().mirror()?, jb)?;
            let pass = f.v2.map(i64::abs) == Some(1) && (f == t || f == m);
            c.push(
                format!("{}: trefoil fingerprint", y.name),
                pass,
                json!({ "name": y.name, "k2": FingerprintReport::from(&f) }),
            )
        }
        Err(e) => c.error(y.name.clone(), e)?,
    }

    let mut separated = Vec::new();
    for &k in &ks {
        for x in all.iter().filter(|x| x.clasper.n() == 2 * k + 1) {
            check_terms(config, x.clasper.n())?;
            let label = format!("{}: n={} k={k}", x.name, x.clasper.n());
            match verify_grope_theorem(&x.knot, &x.clasper, k, DEFAULT_CROSSING_CAP, jb) {
                Ok(rep) => {
                    if !rep.separated_by.is_empty() {
                        separated.push(x.name.clone());
                    }
                    c.push(
                        label,
                        rep.pass,
                        json!({
                            "name": x.name,
                            "n": rep.n,
                            "k": rep.k,
                            "crossings": rep.crossings,
                            "k1": FingerprintReport::from(&rep.k1),
                            "k2": FingerprintReport::from(&rep.k2),
                            "collapse": rep.collapse,
                            "collapse_passed": rep.collapse.iter().filter(|c| c.pass).count(),
                            "conclusion": rep.conclusion,
                            "telescoping": rep.telescoping,
                            "separated_by": rep.separated_by,
                        }),
                    );
                }
                Err(e) => c.error(label, e)?,
            }
        }
    }
    c.push(
        "some instance separated by v3 or Jones".into(),
        !separated.is_empty(),
        json!({ "separated": separated }),
    );
    Ok(())
}
