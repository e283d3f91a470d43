//! Signed Gauss codes and conversion to and from PD codes.
//!
//! Text form: whitespace-separated tokens `O<id><sign>` / `U<id><sign>`, one
//! run per component, components separated by `;`. An empty component is a
//! crossingless circle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{Arc, PlanarDiagram, Violation};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussPass {
    pub crossing: u32,
    pub over: bool,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussCode {
    pub components: Vec<Vec<GaussPass>>,
}

impl GaussCode {
    pub fn crossing_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .components
            .iter()
            .flatten()
            .map(|p| p.crossing)
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Checks each id appears once over and once under with one sign.
    pub fn check_pairs(&self) -> Result<()> {
        let mut seen: BTreeMap<u32, (usize, usize, Option<i8>)> = BTreeMap::new();
        for p in self.components.iter().flatten() {
            if p.sign != 1 && p.sign != -1 {
                return Err(Error::NonRealizable(format!(
                    "crossing {} has sign {}",
                    p.crossing, p.sign
                )));
            }
            let e = seen.entry(p.crossing).or_insert((0, 0, None));
            if p.over {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
            if let Some(s) = e.2 {
                if s != p.sign {
                    return Err(Error::NonRealizable(format!(
                        "crossing {} has unequal signs",
                        p.crossing
                    )));
                }
            }
            e.2 = Some(p.sign);
        }
        for (id, (o, u, _)) in seen {
            if o != 1 || u != 1 {
                return Err(Error::NonRealizable(format!(
                    "crossing {id} needs one over and one under pass"
                )));
            }
        }
        Ok(())
    }

    /// Renumbers crossings `1..` by first appearance.
    pub fn normalized(&self) -> Self {
        let mut map = BTreeMap::new();
        let mut next = 1;
        for p in self.components.iter().flatten() {
            map.entry(p.crossing).or_insert_with(|| {
                let v = next;
                next += 1;
                v
            });
        }
        Self {
            components: self
                .components
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|p| GaussPass {
                            crossing: map[&p.crossing],
                            ..*p
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

pub fn gauss_from_pd(d: &PlanarDiagram) -> Result<GaussCode> {
    d.check()?;
    let tr = d.trace().map_err(|v| Error::Invalid(vec![v]))?;
    let signs = d.signs()?;
    let mut ids = BTreeMap::new();
    let mut components = Vec::new();
    for comp in &tr.components {
        let mut passes = Vec::new();
        for p in comp {
            let next = ids.len() as u32 + 1;
            let id = *ids.entry(p.crossing).or_insert(next);
            passes.push(GaussPass {
                crossing: id,
                over: p.is_over(),
                sign: signs[p.crossing] as i8,
            });
        }
        components.push(passes);
    }
    for _ in tr.components.len()..d.components {
        components.push(Vec::new());
    }
    Ok(GaussCode { components })
}

/// Builds tuples from the local rotation each signed crossing implies, then
/// rejects codes whose rotation system is not planar.
pub fn pd_from_gauss(g: &GaussCode) -> Result<PlanarDiagram> {
    g.check_pairs()?;
    let d = pd_from_gauss_unchecked(g);
    let v = d.validate();
    if let Some(Violation::NonPlanar { faces, expected }) =
        v.iter().find(|x| matches!(x, Violation::NonPlanar { .. }))
    {
        return Err(Error::NonRealizable(format!(
            "{faces} faces, planar needs {expected}"
        )));
    }
    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    Ok(d)
}

pub(crate) fn pd_from_gauss_unchecked(g: &GaussCode) -> PlanarDiagram {
    // (incoming arc, outgoing arc) per (crossing, over?)
    let mut ends: BTreeMap<(u32, bool), (Arc, Arc, i8)> = BTreeMap::new();
    let mut label: Arc = 1;
    for comp in &g.components {
        let m = comp.len();
        if m == 0 {
            continue;
        }
        let base = label;
        for (j, p) in comp.iter().enumerate() {
            let incoming = if j == 0 {
                base + m as Arc - 1
            } else {
                base + j as Arc - 1
            };
            let outgoing = base + j as Arc;
            ends.insert((p.crossing, p.over), (incoming, outgoing, p.sign));
        }
        label += m as Arc;
    }
    let mut crossings = Vec::new();
    for id in g.crossing_ids() {
        let (ui, uo, s) = ends[&(id, false)];
        let (oi, oo, _) = ends[&(id, true)];
        crossings.push(if s > 0 {
            [ui, oi, uo, oo]
        } else {
            [ui, oo, uo, oi]
        });
    }
    PlanarDiagram::new(g.components.len().max(1), crossings)
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, p) in comp.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(
                    f,
                    "{}{}{}",
                    if p.over { 'O' } else { 'U' },
                    p.crossing,
                    if p.sign > 0 { '+' } else { '-' }
                )?;
            }
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut components = Vec::new();
        for part in s.trim().split(';') {
            let mut comp = Vec::new();
            for tok in part.split_whitespace() {
                comp.push(parse_token(tok)?);
            }
            components.push(comp);
        }
        Ok(Self { components })
    }
}

fn parse_token(tok: &str) -> Result<GaussPass> {
    let bad = || Error::NonRealizable(format!("bad gauss token {tok:?}"));
    let mut chars = tok.chars();
    let over = match chars.next() {
        Some('O') => true,
        Some('U') => false,
        _ => return Err(bad()),
    };
    let rest: String = chars.collect();
    let (num, sign) = match rest.chars().last() {
        Some('+') => (&rest[..rest.len() - 1], 1),
        Some('-') => (&rest[..rest.len() - 1], -1),
        _ => return Err(bad()),
    };
    let crossing: u32 = num.parse().map_err(|_| bad())?;
    Ok(GaussPass {
        crossing,
        over,
        sign,
    })
}
