//! Seeded random instances: knots, braid closures, finger moves and
//! attached circles.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::braid::{braid_closure, BraidLetter};
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::geometry::{extract, Point, Polyline};
use crate::moves::{attach_circles_from_projection, finger_cuts, CircleSpec, MarkedDiagram, Site};

/// Grid step of generated vertices.
pub const GRID: i64 = 1 << 20;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closure of a random braid word, retried until it is a knot.
pub fn random_braid_knot<R: Rng>(rng: &mut R, max_strands: usize, max_len: usize) -> PlanarDiagram {
    loop {
        let s = rng.gen_range(2..=max_strands.max(2));
        let len = rng.gen_range(1..=max_len.max(1));
        let word: Vec<BraidLetter> = (0..len)
            .map(|_| BraidLetter {
                index: rng.gen_range(0..s - 1),
                positive: rng.gen(),
            })
            .collect();
        let d = braid_closure(s, &word);
        if d.components == 1 {
            return d;
        }
    }
}

/// Random closed polygon with `n` vertices on a `size x size` grid and
/// distinct heights `1000, 2000, ...`, retried until in general position.
pub fn random_polygon<R: Rng>(rng: &mut R, n: usize, size: i64) -> Polyline {
    loop {
        let mut pts: Vec<Point> = (0..n)
            .map(|_| [rng.gen_range(0..size) * GRID, rng.gen_range(0..size) * GRID])
            .collect();
        pts.push(pts[0]);
        let mut heights: Vec<i64> = (1..=n as i64).map(|h| 1000 * h).collect();
        heights.shuffle(rng);
        let p = Polyline::new(pts, heights);
        let mut segs: Vec<_> = p.segments().collect();
        for (i, s) in segs.iter_mut().enumerate() {
            s.id = i as u32;
        }
        if extract(&[segs], &Default::default()).is_ok() {
            return p;
        }
    }
}

/// A knot with `fingers` finger moves, each validated, or an error after
/// `attempts` tries.
pub fn finger_instance<R: Rng>(
    rng: &mut R,
    vertices: usize,
    fingers: usize,
    attempts: usize,
) -> Result<(MarkedDiagram, Vec<u32>)> {
    'outer: for _ in 0..attempts {
        let knot = random_polygon(rng, vertices, 64);
        let segs = knot.heights.len();
        let mut cuts = Vec::new();
        let mut pairs = Vec::new();
        for i in 0..fingers {
            let s1 = rng.gen_range(0..segs);
            let mut s2 = rng.gen_range(0..segs - 1);
            if s2 >= s1 {
                s2 += 1;
            }
            let p = Site {
                component: 0,
                segment: s1,
                at: rng.gen_range(100..924),
            };
            let q = Site {
                component: 0,
                segment: s2,
                at: rng.gen_range(100..924),
            };
            let level = 1000 * rng.gen_range(0..=vertices as i64) + 500 + 10 * i as i64;
            match finger_cuts(core::slice::from_ref(&knot), p, q, level) {
                Ok((a, b)) => {
                    pairs.push((cuts.len(), cuts.len() + 1));
                    cuts.push(a);
                    cuts.push(b);
                }
                Err(_) => continue 'outer,
            }
        }
        let Ok(m) = MarkedDiagram::build(core::slice::from_ref(&knot), cuts, &pairs) else {
            continue;
        };
        if (0..fingers as u32).all(|f| m.validate_finger(f).is_ok()) && all_configurations_valid(&m)
        {
            return Ok((m, (0..fingers as u32).collect()));
        }
    }
    Err(Error::Precondition("no valid finger instance found".into()))
}

fn all_configurations_valid(m: &MarkedDiagram) -> bool {
    let n = m.reroutes.len();
    (0..1u64 << n).all(|mask| {
        let mut t = m.clone();
        t.toggled = (0..n as u32).filter(|i| mask >> i & 1 == 1).collect();
        t.extracted().is_ok()
    })
}

/// A knot with `circles` attached circles whose spare arcs wander through
/// `via` random points at random heights.
pub fn circle_instance<R: Rng>(
    rng: &mut R,
    vertices: usize,
    circles: usize,
    via: usize,
    attempts: usize,
) -> Result<MarkedDiagram> {
    for _ in 0..attempts {
        let knot = random_polygon(rng, vertices, 64);
        let segs = knot.heights.len();
        let mut specs: Vec<CircleSpec> = Vec::new();
        for i in 0..circles {
            let s = rng.gen_range(0..segs);
            let (a, b) = (knot.points[s], knot.points[s + 1]);
            let e = [b[0] - a[0], b[1] - a[1]];
            if e[0] % 4096 != 0 || e[1] % 4096 != 0 {
                continue;
            }
            let t = rng.gen_range(8..4080) as i64;
            let from = [a[0] + e[0] / 4096 * t, a[1] + e[1] / 4096 * t];
            let to = [from[0] + e[0] / 4096 * 4, from[1] + e[1] / 4096 * 4];
            let mut pts: Vec<Point> = (0..via)
                .map(|_| {
                    [
                        rng.gen_range(0..64) * GRID + GRID / 2,
                        rng.gen_range(0..64) * GRID + GRID / 2,
                    ]
                })
                .collect();
            // leave the strand sideways so the attaching arc stays clear
            let off = [-e[1] / 4096 * 16, e[0] / 4096 * 16];
            pts.insert(0, [from[0] + off[0], from[1] + off[1]]);
            pts.push([to[0] + off[0], to[1] + off[1]]);
            let heights: Vec<i64> = (0..=pts.len())
                .map(|_| {
                    1000 * rng.gen_range(0..=vertices as i64)
                        + 100
                        + 7 * i as i64
                        + rng.gen_range(0..5) * 100
                })
                .collect();
            specs.push(CircleSpec {
                component: 0,
                segment: s,
                from,
                to,
                via: pts,
                heights,
            });
        }
        if specs.len() != circles {
            continue;
        }
        let Ok(m) = attach_circles_from_projection(core::slice::from_ref(&knot), &specs) else {
            continue;
        };
        if all_configurations_valid_upto(&m, 1 << circles.min(7)) {
            return Ok(m);
        }
    }
    Err(Error::Precondition("no valid circle instance found".into()))
}

fn all_configurations_valid_upto(m: &MarkedDiagram, limit: u64) -> bool {
    let n = m.reroutes.len();
    (0..limit.min(1 << n)).all(|mask| {
        let mut t = m.clone();
        t.toggled = (0..n as u32).filter(|i| mask >> i & 1 == 1).collect();
        t.extracted().is_ok()
    })
}
