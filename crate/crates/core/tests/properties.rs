use std::collections::BTreeSet;

use knotfilt_core::bracket::{bracket_switches, evaluate, Invariant};
use knotfilt_core::braid::{braid_closure, BraidLetter};
use knotfilt_core::gauss::{gauss_from_pd, pd_from_gauss};
use knotfilt_core::invariants::arrows::{LinearGauss, Pattern};
use knotfilt_core::invariants::{fingerprint_with, jones, v2, v3, Fingerprint};
use knotfilt_core::simplify::reidemeister_simplify;
use knotfilt_core::PlanarDiagram;
use proptest::prelude::*;

#[derive(Clone, Debug)]
struct Braid {
    strands: usize,
    word: Vec<BraidLetter>,
}

impl Braid {
    fn closure(&self) -> PlanarDiagram {
        braid_closure(self.strands, &self.word)
    }
}

fn letter(strands: usize) -> impl Strategy<Value = BraidLetter> {
    (0..strands - 1, any::<bool>()).prop_map(|(index, positive)| BraidLetter { index, positive })
}

/// Braids on 2 to 4 strands whose closure is a knot with at most `max` crossings.
fn knot_braid(max: usize) -> impl Strategy<Value = Braid> {
    (2usize..=4)
        .prop_flat_map(move |s| (Just(s), proptest::collection::vec(letter(s), 1..=max)))
        .prop_map(|(strands, word)| Braid { strands, word })
        .prop_filter("closure is a knot", |b| b.closure().components == 1)
}

fn fp(d: &PlanarDiagram) -> Fingerprint {
    fingerprint_with(d, 24).unwrap()
}

fn counts(d: &PlanarDiagram, base: usize) -> (i64, i64) {
    let g = LinearGauss::from_diagram(d, base).unwrap();
    let p3: Vec<Pattern> = [
        "AoBoAuCoBuCu",
        "AoBuCoAuBoCu",
        "AuBoCoBuAoCu",
        "AuBoCuAoBuCo",
        "AuBuCoAoCuBo",
    ]
    .iter()
    .map(|s| Pattern::parse(s))
    .collect();
    (g.count(&Pattern::parse("AoBuAuBo")), g.count_sum(&p3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_counts_ignore_the_basepoint(b in knot_braid(10)) {
        let d = b.closure();
        let first = counts(&d, 0);
        for base in 1..2 * d.crossings.len() {
            prop_assert_eq!(counts(&d, base), first);
        }
    }

    #[test]
    fn second_move_cancels(b in knot_braid(8), at in any::<prop::sample::Index>(), i in any::<prop::sample::Index>(), pos in any::<bool>()) {
        let index = i.index(b.strands - 1);
        let mut w = b.word.clone();
        let k = at.index(w.len() + 1);
        w.splice(k..k, [BraidLetter { index, positive: pos }, BraidLetter { index, positive: !pos }]);
        prop_assert_eq!(fp(&braid_closure(b.strands, &w)), fp(&b.closure()));
    }

    #[test]
    fn stabilization_is_a_first_move(b in knot_braid(8), pos in any::<bool>()) {
        let mut w = b.word.clone();
        w.push(BraidLetter { index: b.strands - 1, positive: pos });
        prop_assert_eq!(fp(&braid_closure(b.strands + 1, &w)), fp(&b.closure()));
    }

    #[test]
    fn braid_relation_is_a_third_move(b in knot_braid(7), at in any::<prop::sample::Index>(), pos in any::<bool>()) {
        let s = b.strands.max(3);
        let k = at.index(b.word.len() + 1);
        let l = |index| BraidLetter { index, positive: pos };
        let mut x = b.word.clone();
        let mut y = b.word.clone();
        x.splice(k..k, [l(0), l(1), l(0)]);
        y.splice(k..k, [l(1), l(0), l(1)]);
        let (dx, dy) = (braid_closure(s, &x), braid_closure(s, &y));
        prop_assume!(dx.components == 1);
        prop_assert_eq!(fp(&dx), fp(&dy));
    }

    #[test]
    fn conjugation_leaves_the_closure(b in knot_braid(10), r in any::<prop::sample::Index>()) {
        let mut w = b.word.clone();
        let k = r.index(w.len());
        w.rotate_left(k);
        prop_assert_eq!(fp(&braid_closure(b.strands, &w)), fp(&b.closure()));
    }

    #[test]
    fn mirror_and_reverse(b in knot_braid(10)) {
        let d = b.closure();
        let (f, m, r) = (fp(&d), fp(&d.mirror().unwrap()), fp(&d.reverse()));
        prop_assert_eq!(m.v2, f.v2);
        prop_assert_eq!(m.v3, f.v3.map(|x| -x));
        prop_assert_eq!(m.jones, f.jones.as_ref().map(|j| j.substitute_power(-1)));
        prop_assert_eq!(r, f);
    }

    #[test]
    fn connected_sum_adds(a in knot_braid(6), b in knot_braid(6)) {
        let (da, db) = (a.closure(), b.closure());
        let s = da.connected_sum(&db, 1, 1).unwrap();
        prop_assert_eq!(v2(&s).unwrap(), v2(&da).unwrap() + v2(&db).unwrap());
        prop_assert_eq!(v3(&s).unwrap(), v3(&da).unwrap() + v3(&db).unwrap());
        let j = |d: &PlanarDiagram| jones(d, 16).unwrap();
        prop_assert_eq!(j(&s), &j(&da) * &j(&db));
    }

    #[test]
    fn vassiliev_axiom(b in knot_braid(12), seed in any::<u64>()) {
        let d = b.closure();
        prop_assume!(d.crossings.len() >= 4);
        let n = d.crossings.len();
        let group = |g: usize, count: usize| -> Vec<BTreeSet<usize>> {
            (0..count).map(|i| (0..n).filter(|c| (c + (seed as usize % n)) % g == i).collect()).collect()
        };
        let v = |groups: &[BTreeSet<usize>], inv| evaluate(&bracket_switches(&d, groups).unwrap(), inv).unwrap();
        prop_assert!(v(&group(3, 3), Invariant::V2).is_zero());
        prop_assert!(v(&group(4, 4), Invariant::V3).is_zero());
    }

    #[test]
    fn gauss_round_trip(b in knot_braid(12)) {
        let d = b.closure();
        let g = gauss_from_pd(&d).unwrap();
        let back = pd_from_gauss(&g.to_string().parse().unwrap()).unwrap();
        prop_assert_eq!(back.canonical().unwrap(), d.canonical().unwrap());
    }

    #[test]
    fn simplification_keeps_the_fingerprint(b in knot_braid(12)) {
        let d = b.closure();
        let s = reidemeister_simplify(&d, 10_000);
        prop_assert!(s.crossings.len() <= d.crossings.len());
        prop_assert_eq!(fp(&s), fp(&d));
    }
}

#[test]
fn trefoil_sum_has_v2_two() {
    use knotfilt_core::diagram::fixtures::right_trefoil;
    let t = right_trefoil();
    let s = t.connected_sum(&t, 1, 1).unwrap();
    assert_eq!((v2(&s).unwrap(), v3(&s).unwrap()), (2, 2));
}
