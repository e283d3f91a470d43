//! Degree-2 and degree-3 finite-type invariants from based arrow counts,
//! and the [`Fingerprint`] built on them.
//!
//! Arrows run from the over end to the under end of each crossing. With
//! the sign convention of [`crate::diagram`]:
//!
//! * `v2 = <AoBuAuBo>`, the second Conway coefficient (1 on either trefoil);
//! * `v3` is the sum of five degree-3 counts, normalized to 1 on the
//!   right-handed trefoil fixture and odd under mirror image. It equals
//!   `-(1/6) d^3/dh^3 V(e^h)` at `h = 0`, `V` the Jones polynomial.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::arrows::{LinearGauss, Pattern};
use super::kauffman::{jones, DEFAULT_BRACKET_BUDGET};
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::simplify::{reidemeister_simplify, DEFAULT_R3_BUDGET};

const V2_PATTERN: &str = "AoBuAuBo";
const V3_PATTERNS: [&str; 5] = [
    "AoBoAuCoBuCu",
    "AoBuCoAuBoCu",
    "AuBoCoBuAoCu",
    "AuBoCuAoBuCo",
    "AuBuCoAoCuBo",
];

fn knot_gauss(d: &PlanarDiagram) -> Result<LinearGauss> {
    if d.components != 1 {
        return Err(Error::NotAKnot(d.components));
    }
    LinearGauss::from_diagram(d, 0)
}

pub fn v2(d: &PlanarDiagram) -> Result<i64> {
    Ok(knot_gauss(d)?.count(&Pattern::parse(V2_PATTERN)))
}

pub fn v3(d: &PlanarDiagram) -> Result<i64> {
    let ps: Vec<Pattern> = V3_PATTERNS.iter().map(|s| Pattern::parse(s)).collect();
    Ok(knot_gauss(d)?.count_sum(&ps))
}

/// Isotopy evidence for a diagram. `v2`/`v3` are absent for links, `jones`
/// when the simplified diagram exceeds the bracket budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub v2: Option<i64>,
    pub v3: Option<i64>,
    pub jones: Option<LaurentPoly>,
    pub components: usize,
}

/// Simplifies `d` and evaluates v2, v3 and (within `bracket_budget`
/// crossings) the Jones polynomial.
pub fn fingerprint_with(d: &PlanarDiagram, bracket_budget: usize) -> Result<Fingerprint> {
    d.check()?;
    let s = reidemeister_simplify(d, DEFAULT_R3_BUDGET);
    let knot = s.components == 1;
    let (v2, v3) = if knot {
        (Some(v2(&s)?), Some(v3(&s)?))
    } else {
        (None, None)
    };
    let jones = match jones(&s, bracket_budget) {
        Ok(j) => Some(j),
        Err(Error::CrossingBudget { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(Fingerprint {
        v2,
        v3,
        jones,
        components: s.components,
    })
}

pub fn fingerprint(d: &PlanarDiagram) -> Result<Fingerprint> {
    fingerprint_with(d, DEFAULT_BRACKET_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn small_knots() {
        let u = PlanarDiagram::unknot();
        assert_eq!((v2(&u).unwrap(), v3(&u).unwrap()), (0, 0));
        assert_eq!(
            (v2(&right_trefoil()).unwrap(), v3(&right_trefoil()).unwrap()),
            (1, 1)
        );
        assert_eq!(
            (v2(&left_trefoil()).unwrap(), v3(&left_trefoil()).unwrap()),
            (1, -1)
        );
        assert_eq!(
            (v2(&figure_eight()).unwrap(), v3(&figure_eight()).unwrap()),
            (-1, 0)
        );
        assert_eq!(v2(&hopf()), Err(Error::NotAKnot(2)));
    }

    #[test]
    fn fingerprint_of_trefoil() {
        let f = fingerprint(&right_trefoil()).unwrap();
        assert_eq!((f.v2, f.v3, f.components), (Some(1), Some(1), 1));
        assert_eq!(
            f.jones,
            Some(LaurentPoly::from_terms([(-8, -1), (-6, 1), (-2, 1)]))
        );
        let u = fingerprint(&positive_kink()).unwrap();
        assert_eq!(
            u,
            Fingerprint {
                v2: Some(0),
                v3: Some(0),
                jones: Some(LaurentPoly::one()),
                components: 1
            }
        );
    }

    #[test]
    fn jones_omitted_over_budget() {
        let f = fingerprint_with(&figure_eight(), 3).unwrap();
        assert_eq!((f.v2, f.jones), (Some(-1), None));
    }
}
