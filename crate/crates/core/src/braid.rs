//! Braid closures as a source of planar diagrams.

use alloc::vec::Vec;

use crate::diagram::{Arc, PlanarDiagram};

/// Generator `sigma_i^{+-1}` acting on positions `i` and `i + 1` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraidLetter {
    pub index: usize,
    pub positive: bool,
}

/// PD code of the closure of a braid on `strands` strands.
///
/// A positive letter puts the strand coming from the right on top, which is
/// a positive crossing in the sign convention of [`crate::diagram`].
pub fn braid_closure(strands: usize, word: &[BraidLetter]) -> PlanarDiagram {
    let mut next: Arc = 1;
    let mut current: Vec<Arc> = (0..strands)
        .map(|_| {
            let a = next;
            next += 1;
            a
        })
        .collect();
    let initial = current.clone();
    let mut crossings = Vec::new();
    for l in word {
        let i = l.index;
        let (li, ri) = (current[i], current[i + 1]);
        let (x, y) = (next, next + 1); // x: new arc at i+1, y: new arc at i
        next += 2;
        crossings.push(if l.positive {
            [li, ri, x, y]
        } else {
            [ri, x, y, li]
        });
        current[i] = y;
        current[i + 1] = x;
    }
    // closure: identify final arcs with the initial ones
    let rename = |a: Arc| -> Arc {
        match current.iter().position(|&c| c == a) {
            Some(p) => initial[p],
            None => a,
        }
    };
    let crossings: Vec<[Arc; 4]> = crossings.into_iter().map(|t| t.map(rename)).collect();
    let mut d = PlanarDiagram::new(strands, crossings);
    // strands never touched by the word are crossingless components
    let traced = d.traced_components().unwrap_or(0);
    let untouched = (0..strands).filter(|p| current[*p] == initial[*p]).count();
    d.components = traced + untouched;
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;
    use alloc::vec;

    fn word(s: &[i32]) -> Vec<BraidLetter> {
        s.iter()
            .map(|&k| BraidLetter {
                index: (k.unsigned_abs() - 1) as usize,
                positive: k > 0,
            })
            .collect()
    }

    #[test]
    fn trefoil_closure() {
        let d = braid_closure(2, &word(&[1, 1, 1]));
        assert!(d.is_valid());
        assert_eq!(d.traced_components().unwrap(), 1);
        assert_eq!(d.signs().unwrap(), vec![1, 1, 1]);
        let _ = right_trefoil();
    }

    #[test]
    fn figure_eight_closure() {
        let d = braid_closure(3, &word(&[1, -2, 1, -2]));
        assert!(d.is_valid(), "{:?}", d.validate());
        assert_eq!(d.components, 1);
    }
}
