//! Formal integer combinations of diagrams and the alternating sums
//! `[x; S] = sum over sigma in S of (-1)^|sigma| x_sigma`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::invariants::{jones, v2, v3, DEFAULT_BRACKET_BUDGET};
use crate::moves::{MarkedDiagram, MoveGroup};
use crate::poly::LaurentPoly;
use crate::simplify::{reidemeister_simplify, DEFAULT_R3_BUDGET};

/// Largest `|S|` accepted by [`bracket`].
pub const TERM_GUARD: usize = 12;

/// Integer combination of diagrams keyed by canonical relabeling.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalSum {
    terms: BTreeMap<PlanarDiagram, i64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(d: &PlanarDiagram) -> Result<Self> {
        let mut s = Self::zero();
        s.add_term(d, 1)?;
        Ok(s)
    }

    pub fn add_term(&mut self, d: &PlanarDiagram, c: i64) -> Result<()> {
        let k = d.canonical()?;
        let e = self.terms.entry(k.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct diagrams with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &PlanarDiagram) -> Result<i64> {
        Ok(self.terms.get(&d.canonical()?).copied().unwrap_or(0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PlanarDiagram, i64)> {
        self.terms.iter().map(|(d, c)| (d, *c))
    }

    pub fn total_coefficient(&self) -> i64 {
        self.terms.values().sum()
    }

    fn combine(mut self, other: &Self, sign: i64) -> Self {
        for (d, c) in &other.terms {
            let e = self.terms.entry(d.clone()).or_insert(0);
            *e += sign * c;
            if *e == 0 {
                self.terms.remove(d);
            }
        }
        self
    }
}

impl Add for FormalSum {
    type Output = FormalSum;
    fn add(self, rhs: FormalSum) -> FormalSum {
        self.combine(&rhs, 1)
    }
}

impl Sub for FormalSum {
    type Output = FormalSum;
    fn sub(self, rhs: FormalSum) -> FormalSum {
        self.combine(&rhs, -1)
    }
}

impl Neg for FormalSum {
    type Output = FormalSum;
    fn neg(self) -> FormalSum {
        FormalSum::zero().combine(&self, -1)
    }
}

fn parity(mask: u64) -> i64 {
    if mask.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::TermBudget {
            terms: n,
            budget: limit,
        });
    }
    Ok(())
}

/// Raw `2^|S|` terms of `[m; S]` as `(sign, diagram)`, by subset mask.
pub fn bracket_terms(m: &MarkedDiagram, s: &[MoveGroup]) -> Result<Vec<(i64, PlanarDiagram)>> {
    bracket_terms_guarded(m, s, TERM_GUARD)
}

pub fn bracket_terms_guarded(
    m: &MarkedDiagram,
    s: &[MoveGroup],
    limit: usize,
) -> Result<Vec<(i64, PlanarDiagram)>> {
    guard(s.len(), limit)?;
    m.check_compatible(s)?;
    (0..1u64 << s.len())
        .map(|mask| Ok((parity(mask), m.apply_mask(s, mask)?.diagram()?)))
        .collect()
}

/// `[m; S]` as a formal sum.
pub fn bracket(m: &MarkedDiagram, s: &[MoveGroup]) -> Result<FormalSum> {
    let mut out = FormalSum::zero();
    for (c, d) in bracket_terms(m, s)? {
        out.add_term(&d, c)?;
    }
    Ok(out)
}

/// `[d; S]` for groups of crossing changes on a plain PD code.
pub fn bracket_switches(d: &PlanarDiagram, groups: &[BTreeSet<usize>]) -> Result<FormalSum> {
    guard(groups.len(), TERM_GUARD)?;
    for i in 0..groups.len() {
        for j in (i + 1)..groups.len() {
            if !groups[i].is_disjoint(&groups[j]) {
                return Err(Error::Incompatible(i, j));
            }
        }
    }
    let mut out = FormalSum::zero();
    for mask in 0..1u64 << groups.len() {
        let set: BTreeSet<usize> = groups
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .flat_map(|(_, g)| g.iter().copied())
            .collect();
        out.add_term(&d.crossing_change_set(&set)?, parity(mask))?;
    }
    Ok(out)
}

/// Linear functional applied termwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    V2,
    V3,
    /// Jones polynomial of each term after simplification.
    Jones {
        budget: usize,
    },
}

impl Invariant {
    pub fn jones() -> Self {
        Invariant::Jones {
            budget: DEFAULT_BRACKET_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Poly(LaurentPoly),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Int(v) => *v == 0,
            Value::Poly(p) => p.is_zero(),
        }
    }

    pub fn scaled(&self, c: i64) -> Value {
        match self {
            Value::Int(v) => Value::Int(c * v),
            Value::Poly(p) => Value::Poly(p.scale(&c.into())),
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(v) => Some(*v),
            Value::Poly(_) => None,
        }
    }
}

/// `v(d)` for a single diagram.
pub fn evaluate_diagram(d: &PlanarDiagram, v: Invariant) -> Result<Value> {
    Ok(match v {
        Invariant::V2 => Value::Int(v2(d)?),
        Invariant::V3 => Value::Int(v3(d)?),
        Invariant::Jones { budget } => {
            Value::Poly(jones(&reidemeister_simplify(d, DEFAULT_R3_BUDGET), budget)?)
        }
    })
}

/// Budget failure on a particular term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermError {
    pub term: PlanarDiagram,
    pub error: Error,
}

fn add_value(acc: Value, x: Value) -> Value {
    match (acc, x) {
        (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
        (Value::Poly(a), Value::Poly(b)) => Value::Poly(a + b),
        (Value::Int(0), Value::Poly(b)) => Value::Poly(b),
        (a, _) => a,
    }
}

fn zero_of(v: Invariant) -> Value {
    match v {
        Invariant::Jones { .. } => Value::Poly(LaurentPoly::zero()),
        _ => Value::Int(0),
    }
}

/// `sum c_i v(x_i)`, exact.
pub fn evaluate(fs: &FormalSum, v: Invariant) -> core::result::Result<Value, TermError> {
    let mut acc = zero_of(v);
    for (d, c) in fs.iter() {
        let x = evaluate_diagram(d, v).map_err(|error| TermError {
            term: d.clone(),
            error,
        })?;
        acc = add_value(acc, x.scaled(c));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Vassiliev,
    Alt,
}

/// Tag for a generator of `F^v_k` or `F^alt_k`: `|S| = degree + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationClaim {
    pub family: Family,
    pub degree: usize,
}

impl FiltrationClaim {
    /// Checks the shape of `s` for this claim.
    pub fn for_groups(family: Family, s: &[MoveGroup]) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Precondition(
                "a filtration generator needs at least one group".into(),
            ));
        }
        for (i, g) in s.iter().enumerate() {
            let ok = match family {
                Family::Vassiliev => matches!(
                    g,
                    MoveGroup::CrossingSwitchSet { .. } | MoveGroup::FingerMove { .. }
                ),
                Family::Alt => matches!(g, MoveGroup::Interdependent { .. }),
            };
            if !ok {
                return Err(Error::Precondition(format!(
                    "group {i} does not belong to the {family:?} family"
                )));
            }
        }
        Ok(Self {
            family,
            degree: s.len() - 1,
        })
    }

    /// Whether brackets of this shape vanish under every invariant of type `k`.
    pub fn predicts_vanishing(&self, k: usize) -> bool {
        let n = self.degree + 1;
        match self.family {
            Family::Vassiliev => n > k,
            Family::Alt => n > 2 * k,
        }
    }

    pub fn label(&self) -> String {
        let f = match self.family {
            Family::Vassiliev => "v",
            Family::Alt => "alt",
        };
        format!("F^{f}_{}", self.degree)
    }
}

/// Exact evaluations of one bracket.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluations {
    pub v2: Option<i64>,
    pub v3: Option<i64>,
    pub jones: Option<LaurentPoly>,
}

/// Evaluates `fs` under v2, v3 and (when every term fits `jones_budget`)
/// Jones. Knot-only invariants are skipped for links.
pub fn evaluations(fs: &FormalSum, jones_budget: usize) -> Result<Evaluations> {
    let knots = fs.iter().all(|(d, _)| d.components == 1);
    let int = |v| -> Result<Option<i64>> {
        if !knots {
            return Ok(None);
        }
        evaluate(fs, v).map(|x| x.as_int()).map_err(|e| e.error)
    };
    let jones = match evaluate(
        fs,
        Invariant::Jones {
            budget: jones_budget,
        },
    ) {
        Ok(Value::Poly(p)) => Some(p),
        Ok(Value::Int(_)) => None,
        Err(TermError {
            error: Error::CrossingBudget { .. },
            ..
        }) => None,
        Err(e) => return Err(e.error),
    };
    Ok(Evaluations {
        v2: int(Invariant::V2)?,
        v3: int(Invariant::V3)?,
        jones,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishReport {
    pub claim: String,
    pub invariant: Invariant,
    /// Number of terms before cancellation.
    pub term_count: usize,
    pub evaluation: Value,
    pub predicted: bool,
    pub pass: bool,
}

/// Evaluates `[m; S]` under `v` (of type `k`); passes iff the value is 0.
pub fn vanish_check(
    m: &MarkedDiagram,
    s: &[MoveGroup],
    family: Family,
    v: Invariant,
    k: usize,
) -> Result<VanishReport> {
    let claim = FiltrationClaim::for_groups(family, s)?;
    let fs = bracket(m, s)?;
    let evaluation = evaluate(&fs, v).map_err(|e| e.error)?;
    Ok(VanishReport {
        claim: claim.label(),
        invariant: v,
        term_count: 1 << s.len(),
        pass: evaluation.is_zero(),
        evaluation,
        predicted: claim.predicts_vanishing(k),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub k: i64,
    /// `(-1)^|S|`: the factor relating the two sides.
    pub sign: i64,
    pub circle_terms: usize,
    pub finger_terms: usize,
    pub circles: Evaluations,
    pub fingers: Evaluations,
    /// Failed per-term fingerprint relations, as `(finger index, tau mask)`.
    pub relation_failures: Vec<(usize, u64)>,
    pub relations_checked: usize,
    pub pass: bool,
}

fn signed(e: &Evaluations, sign: i64) -> Evaluations {
    Evaluations {
        v2: e.v2.map(|v| sign * v),
        v3: e.v3.map(|v| sign * v),
        jones: e.jones.as_ref().map(|p| p.scale(&sign.into())),
    }
}

/// Compares the bracket over the `2k+2` guiding circles of `fingers` with
/// the bracket over the finger moves themselves.
///
/// Each finger move contributes `1 - a - b + ab`; one pushed finger alone is
/// an isotopy, so the factor is `-(1 - f)` and the circle bracket equals
/// `(-1)^|S|` times the finger bracket. Also checks, for every finger `i`
/// and every subset `tau` of the other circles, that `x_tau`,
/// `x_{tau + a_i}` and `x_{tau + b_i}` have equal fingerprints.
pub fn theorem1_check(
    m: &MarkedDiagram,
    fingers: &[u32],
    jones_budget: usize,
) -> Result<Theorem1Report> {
    if fingers.len() > 4 {
        return Err(Error::TermBudget {
            terms: 2 * fingers.len(),
            budget: 8,
        });
    }
    let s: Vec<MoveGroup> = fingers
        .iter()
        .map(|&f| MoveGroup::FingerMove { finger: f })
        .collect();
    let mut t = Vec::new();
    for &f in fingers {
        let (a, b) = m.finger_to_interdependent(f)?;
        t.push(MoveGroup::reroute(a.id));
        t.push(MoveGroup::reroute(b.id));
    }
    let circle_sum = bracket(m, &t)?;
    let finger_sum = bracket(m, &s)?;
    let sign = if s.len().is_multiple_of(2) { 1 } else { -1 };
    let circles = evaluations(&circle_sum, jones_budget)?;
    let fingers_eval = evaluations(&finger_sum, jones_budget)?;
    let expect = signed(&fingers_eval, sign);
    let mut pass = circles.v2 == expect.v2 && circles.v3 == expect.v3;
    if let (Some(a), Some(b)) = (&circles.jones, &expect.jones) {
        pass &= a == b;
    }
    let mut relation_failures = Vec::new();
    let mut relations_checked = 0;
    let mut cache: BTreeMap<u64, crate::invariants::Fingerprint> = BTreeMap::new();
    let mut fp = |mask: u64| -> Result<crate::invariants::Fingerprint> {
        if let Some(f) = cache.get(&mask) {
            return Ok(f.clone());
        }
        let f =
            crate::invariants::fingerprint_with(&m.apply_mask(&t, mask)?.diagram()?, jones_budget)?;
        cache.insert(mask, f.clone());
        Ok(f)
    };
    for i in 0..fingers.len() {
        let (ai, bi) = (1u64 << (2 * i), 1u64 << (2 * i + 1));
        for tau in 0..1u64 << t.len() {
            if tau & (ai | bi) != 0 {
                continue;
            }
            relations_checked += 1;
            let base = fp(tau)?;
            if fp(tau | ai)? != base || fp(tau | bi)? != base {
                relation_failures.push((i, tau));
            }
        }
    }
    pass &= relation_failures.is_empty();
    Ok(Theorem1Report {
        k: fingers.len() as i64 - 1,
        sign,
        circle_terms: 1 << t.len(),
        finger_terms: 1 << s.len(),
        circles,
        fingers: fingers_eval,
        relation_failures,
        relations_checked,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn empty_and_single_switch() {
        let t = right_trefoil();
        let fs = bracket_switches(&t, &[]).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs.coefficient(&t).unwrap(), 1);
        let g: BTreeSet<usize> = [0].into_iter().collect();
        let fs = bracket_switches(&t, &[g.clone()]).unwrap();
        assert_eq!(
            fs.coefficient(&t.crossing_change_set(&g).unwrap()).unwrap(),
            -1
        );
        // trefoil minus an unknot diagram
        assert_eq!(evaluate(&fs, Invariant::V2).unwrap(), Value::Int(1));
    }

    #[test]
    fn cancellation() {
        let t = FormalSum::term(&right_trefoil()).unwrap();
        let z = t.clone() - t;
        assert!(z.is_zero());
        assert_eq!(evaluate(&z, Invariant::V2).unwrap(), Value::Int(0));
    }

    #[test]
    fn three_switches_kill_v2() {
        let f = figure_eight();
        let groups: Vec<BTreeSet<usize>> = (0..3).map(|i| [i].into_iter().collect()).collect();
        let fs = bracket_switches(&f, &groups).unwrap();
        assert_eq!(evaluate(&fs, Invariant::V2).unwrap(), Value::Int(0));
        assert_eq!(fs.total_coefficient(), 0);
    }

    #[test]
    fn overlapping_switch_groups() {
        let g: BTreeSet<usize> = [0, 1].into_iter().collect();
        let h: BTreeSet<usize> = [1].into_iter().collect();
        assert_eq!(
            bracket_switches(&right_trefoil(), &[g, h]),
            Err(Error::Incompatible(0, 1))
        );
    }

    #[test]
    fn guard() {
        let groups: Vec<BTreeSet<usize>> = (0..13).map(|i| [i].into_iter().collect()).collect();
        assert_eq!(
            bracket_switches(&right_trefoil(), &groups),
            Err(Error::TermBudget {
                terms: 13,
                budget: 12
            })
        );
    }
}
