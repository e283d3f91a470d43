//! Based arrow-diagram counts of a knot diagram.
//!
//! A knot diagram read from a basepoint gives a linear Gauss diagram: every
//! crossing is a chord with an over end and an under end, weighted by the
//! crossing sign. For a small based pattern `P`, `<P, G>` sums, over all
//! subsets of chords whose induced based diagram is `P`, the product of
//! their signs.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};

/// One end of a chord in reading order: chord index (by first appearance)
/// and whether this end is the over-pass.
pub type PatternEnd = (u8, bool);

/// A based arrow pattern, ends listed in reading order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(pub Vec<PatternEnd>);

impl Pattern {
    /// Parses names like `AoBuAuBo` (`o` marks the over end).
    pub fn parse(s: &str) -> Self {
        let b = s.as_bytes();
        Pattern(b.chunks(2).map(|c| (c[0] - b'A', c[1] == b'o')).collect())
    }

    pub fn name(&self) -> String {
        let mut s = String::new();
        for &(c, o) in &self.0 {
            s.push((b'A' + c) as char);
            s.push(if o { 'o' } else { 'u' });
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.0.len() / 2
    }
}

/// Linear Gauss diagram: per pass in reading order, (chord, over?) plus the
/// sign of every chord.
#[derive(Clone, Debug)]
pub struct LinearGauss {
    pub passes: Vec<(usize, bool)>,
    pub signs: Vec<i32>,
}

impl LinearGauss {
    /// Reads the knot `d` starting at pass `base` of its traversal.
    pub fn from_diagram(d: &PlanarDiagram, base: usize) -> Result<Self> {
        d.check()?;
        if d.components != 1 {
            return Err(Error::NotAKnot(d.components));
        }
        let tr = d.trace().map_err(|v| Error::Invalid(vec![v]))?;
        let signs = d.signs()?;
        let passes = match tr.components.first() {
            None => Vec::new(),
            Some(comp) => {
                let m = comp.len();
                (0..m)
                    .map(|i| comp[(base + i) % m])
                    .map(|p| (p.crossing, p.is_over()))
                    .collect()
            }
        };
        Ok(Self { passes, signs })
    }

    /// Positions of the two ends of each chord: `(first, second, first_is_over)`.
    fn chord_ends(&self) -> Vec<(usize, usize, bool)> {
        let n = self.signs.len();
        let mut ends = vec![(usize::MAX, usize::MAX, false); n];
        for (i, &(c, over)) in self.passes.iter().enumerate() {
            if ends[c].0 == usize::MAX {
                ends[c] = (i, usize::MAX, over);
            } else {
                ends[c].1 = i;
            }
        }
        ends
    }

    /// All based pattern counts of degree `1..=max_degree` (at most 3).
    pub fn pattern_counts(&self, max_degree: usize) -> BTreeMap<Pattern, i64> {
        assert!(max_degree <= 3);
        let ends = self.chord_ends();
        let n = ends.len();
        let mut out: BTreeMap<Pattern, i64> = BTreeMap::new();
        let mut add = |chords: &[usize]| {
            let mut pts: Vec<(usize, usize, bool)> = Vec::with_capacity(6);
            let mut sign = 1i64;
            for &c in chords {
                let (a, b, a_over) = ends[c];
                pts.push((a, c, a_over));
                pts.push((b, c, !a_over));
                sign *= self.signs[c] as i64;
            }
            pts.sort_unstable();
            *out.entry(pattern_of(&pts)).or_insert(0) += sign;
        };
        for i in 0..n {
            add(&[i]);
            if max_degree >= 2 {
                for j in (i + 1)..n {
                    add(&[i, j]);
                    if max_degree >= 3 {
                        for k in (j + 1)..n {
                            add(&[i, j, k]);
                        }
                    }
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Count of a single pattern, enumerating only chord subsets of its size.
    pub fn count(&self, p: &Pattern) -> i64 {
        self.count_sum(core::slice::from_ref(p))
    }

    /// Sum of the counts of `ps`, all of one degree.
    pub fn count_sum(&self, ps: &[Pattern]) -> i64 {
        let Some(k) = ps.first().map(Pattern::degree) else {
            return 0;
        };
        debug_assert!(ps.iter().all(|p| p.degree() == k));
        let ends = self.chord_ends();
        let n = ends.len();
        if k == 0 {
            return ps.len() as i64;
        }
        if k > n {
            return 0;
        }
        let mut total = 0i64;
        let mut idx: Vec<usize> = (0..k).collect();
        let mut pts: Vec<(usize, usize, bool)> = Vec::with_capacity(2 * k);
        loop {
            pts.clear();
            let mut sign = 1i64;
            for &c in &idx {
                let (a, b, a_over) = ends[c];
                pts.push((a, c, a_over));
                pts.push((b, c, !a_over));
                sign *= self.signs[c] as i64;
            }
            pts.sort_unstable();
            total += sign * ps.iter().filter(|p| pattern_matches(&pts, p)).count() as i64;
            // next combination
            let mut i = k;
            loop {
                if i == 0 {
                    return total;
                }
                i -= 1;
                if idx[i] < n - k + i {
                    idx[i] += 1;
                    for j in (i + 1)..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

fn pattern_of(pts: &[(usize, usize, bool)]) -> Pattern {
    let mut ids: Vec<usize> = Vec::with_capacity(3);
    Pattern(
        pts.iter()
            .map(|&(_, c, over)| {
                let id = match ids.iter().position(|&x| x == c) {
                    Some(p) => p,
                    None => {
                        ids.push(c);
                        ids.len() - 1
                    }
                };
                (id as u8, over)
            })
            .collect(),
    )
}

fn pattern_matches(pts: &[(usize, usize, bool)], p: &Pattern) -> bool {
    let mut ids: [usize; 4] = [usize::MAX; 4];
    let mut next = 0u8;
    for (&(_, c, over), &(want, want_over)) in pts.iter().zip(&p.0) {
        if over != want_over {
            return false;
        }
        match ids.iter().position(|&x| x == c) {
            Some(id) => {
                if id as u8 != want {
                    return false;
                }
            }
            None => {
                if want != next {
                    return false;
                }
                ids[next as usize] = c;
                next += 1;
            }
        }
    }
    true
}
