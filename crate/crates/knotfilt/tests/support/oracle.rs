//! Reference invariants computed from scratch: the Alexander polynomial
//! from a Fox-calculus presentation matrix, and Jones from the full
//! Kauffman state sum. Orientation is recovered by walking the diagram,
//! not read from the library's sign function.

use std::collections::{BTreeMap, HashMap};

use knotfilt_core::PlanarDiagram;

/// Dense polynomial in t, lowest degree first.
type Poly = Vec<i128>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut r = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        r[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        r[i] -= x;
    }
    trim(r)
}

/// Exact quotient; panics when `b` does not divide `a`.
fn div(a: &Poly, b: &Poly) -> Poly {
    let mut a = a.clone();
    if a.is_empty() {
        return a;
    }
    let lead = *b.last().unwrap();
    let mut q = vec![0; a.len() + 1 - b.len()];
    for i in (0..q.len()).rev() {
        let c = a[i + b.len() - 1];
        assert_eq!(c % lead, 0, "inexact division");
        q[i] = c / lead;
        for (j, y) in b.iter().enumerate() {
            a[i + j] -= q[i] * y;
        }
    }
    assert!(a.iter().all(|&x| x == 0), "inexact division");
    trim(q)
}

/// Fraction-free Gaussian elimination.
fn det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let mut sign = 1;
    let mut prev: Poly = vec![1];
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_empty()) else {
            return Vec::new();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = sub(&mul(&m[i][j], &m[k][k]), &mul(&m[i][k], &m[k][j]));
                m[i][j] = div(&x, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return vec![1];
    }
    m[n - 1][n - 1].iter().map(|c| c * sign).collect()
}

/// Orientation of each over-strand, read off label succession.
/// For each crossing, whether the over-strand enters at slot 3 (and
/// leaves at slot 1). Found by walking the knot from the first under-pass.
fn over_from_slot3(d: &PlanarDiagram) -> Vec<bool> {
    assert_eq!(d.components, 1, "oracles take knots");
    let n = d.crossings.len();
    let mut from3 = vec![false; n];
    if n == 0 {
        return from3;
    }
    let (mut c, mut slot) = (0usize, 0usize);
    for _ in 0..2 * n {
        if slot == 3 {
            from3[c] = true;
        }
        let out = (slot + 2) % 4;
        let label = d.crossings[c][out];
        let next = (0..n)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .find(|&(i, j)| (i, j) != (c, out) && d.crossings[i][j] == label);
        (c, slot) = next.expect("every label occurs twice");
    }
    from3
}

/// Knot-atlas sign: +1 when the over-strand runs from slot 3 to slot 1.
pub fn signs(d: &PlanarDiagram) -> Vec<i64> {
    over_from_slot3(d)
        .into_iter()
        .map(|f| if f { 1 } else { -1 })
        .collect()
}

/// Normalized Alexander polynomial as a symmetric coefficient list,
/// lowest degree first, with positive value at t = 1.
pub fn alexander(d: &PlanarDiagram) -> Vec<i128> {
    let n = d.crossings.len();
    if n == 0 {
        return vec![1];
    }
    // over-arcs: union the two over labels of each crossing
    let mut parent: HashMap<u32, u32> = HashMap::new();
    fn find(p: &mut HashMap<u32, u32>, x: u32) -> u32 {
        let y = *p.get(&x).unwrap_or(&x);
        if y == x {
            return x;
        }
        let r = find(p, y);
        p.insert(x, r);
        r
    }
    for x in &d.crossings {
        let (a, b) = (find(&mut parent, x[1]), find(&mut parent, x[3]));
        if a != b {
            parent.insert(a, b);
        }
    }
    let mut arcs: BTreeMap<u32, usize> = BTreeMap::new();
    for x in &d.crossings {
        for &l in x {
            let r = find(&mut parent, l);
            let k = arcs.len();
            arcs.entry(r).or_insert(k);
        }
    }
    assert_eq!(
        arcs.len(),
        n,
        "a knot diagram has as many arcs as crossings"
    );
    let from3 = over_from_slot3(d);
    let mut m = vec![vec![Vec::new(); n]; n];
    for (r, x) in d.crossings.iter().enumerate() {
        let arc = |l: u32, p: &mut HashMap<u32, u32>| arcs[&find(p, l)];
        let (o, i, j) = (
            arc(x[1], &mut parent),
            arc(x[0], &mut parent),
            arc(x[2], &mut parent),
        );
        // rows of the Fox Jacobian, scaled by a unit
        let (co, ci, cj): (Poly, Poly, Poly) = if from3[r] {
            (vec![1, -1], vec![0, 1], vec![-1])
        } else {
            (vec![-1, 1], vec![1], vec![0, -1])
        };
        for (col, c) in [(o, co), (i, ci), (j, cj)] {
            let cur: Poly = std::mem::take(&mut m[r][col]);
            let mut s = vec![0; cur.len().max(c.len())];
            for (k, v) in cur.iter().enumerate() {
                s[k] += v;
            }
            for (k, v) in c.iter().enumerate() {
                s[k] += v;
            }
            m[r][col] = trim(s);
        }
    }
    let minor: Vec<Vec<Poly>> = m[1..].iter().map(|row| row[1..].to_vec()).collect();
    let mut p = det(minor);
    while p.first() == Some(&0) {
        p.remove(0);
    }
    if p.iter().sum::<i128>() < 0 {
        p.iter_mut().for_each(|c| *c = -*c);
    }
    p
}

/// Second Conway coefficient: half the second moment of the
/// symmetrized Alexander polynomial about its center.
pub fn conway_c2(d: &PlanarDiagram) -> i64 {
    let a = alexander(d);
    assert!(
        a.iter().eq(a.iter().rev()),
        "Alexander polynomial is symmetric"
    );
    let span = a.len() as i128 - 1;
    let m: i128 = a
        .iter()
        .enumerate()
        .map(|(i, c)| c * (2 * i as i128 - span).pow(2))
        .sum();
    (m / 8) as i64
}

/// Jones polynomial as a map from exponents of t^(1/2) to coefficients.
pub fn jones(d: &PlanarDiagram) -> BTreeMap<i64, i64> {
    let n = d.crossings.len();
    assert!(n <= 16, "state sum is exponential");
    let labels: Vec<u32> = {
        let mut v: Vec<u32> = d.crossings.iter().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    };
    let idx: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    // bracket in powers of A
    let mut bracket: BTreeMap<i64, i64> = BTreeMap::new();
    for state in 0u32..(1 << n) {
        let mut uf: Vec<usize> = (0..labels.len()).collect();
        fn root(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        let mut join = |a: u32, b: u32| {
            let (x, y) = (root(&mut uf, idx[&a]), root(&mut uf, idx[&b]));
            uf[x] = y;
        };
        let mut a_count = 0i64;
        for (c, x) in d.crossings.iter().enumerate() {
            if state >> c & 1 == 0 {
                // A-smoothing: opens the channel between the quadrants swept
                // by turning the over-strand counterclockwise
                a_count += 1;
                join(x[0], x[1]);
                join(x[2], x[3]);
            } else {
                join(x[0], x[3]);
                join(x[1], x[2]);
            }
        }
        let loops = (0..labels.len()).filter(|&i| root(&mut uf, i) == i).count();
        let a_pow = a_count - (n as i64 - a_count);
        // (-A^2 - A^-2)^(loops - 1)
        let mut term: BTreeMap<i64, i64> = [(a_pow, 1)].into();
        for _ in 1..loops {
            let mut next = BTreeMap::new();
            for (&e, &c) in &term {
                *next.entry(e + 2).or_insert(0) -= c;
                *next.entry(e - 2).or_insert(0) -= c;
            }
            term = next;
        }
        for (e, c) in term {
            *bracket.entry(e).or_insert(0) += c;
        }
    }
    let w: i64 = signs(d).iter().sum();
    // multiply by (-A^3)^(-w), then A = t^(-1/4), i.e. A^m = h^(-m/2)
    let s = if w % 2 == 0 { 1 } else { -1 };
    let mut out = BTreeMap::new();
    for (e, c) in bracket {
        if c == 0 {
            continue;
        }
        let m = e - 3 * w;
        assert_eq!(
            m % 4,
            0,
            "fractional power of t in a knot's Jones polynomial"
        );
        out.insert(-m / 2, s * c);
    }
    out
}

/// v3 from the third moment of Jones: sum of c * e^3 over 288 with
/// exponents in halves.
pub fn v3_from_jones(j: &BTreeMap<i64, i64>) -> i64 {
    let m: i64 = j.iter().map(|(e, c)| c * e * e * e).sum();
    assert_eq!(m % 288, 0);
    m / 288
}
