//! Independent reference implementations used to cross-check the library.
//!
//! Representations of the linear quiver 1 -> 2 -> ... -> n are stored as
//! explicit rational matrices. Hom spaces come from solving the commutation
//! equations, subobjects from enumerating subspace choices, and HN
//! filtrations from trying every chain of subobjects.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use stabkit::Rational;

pub type Mat = Vec<Vec<Rational>>;

/// A representation: a dimension per vertex and a matrix per arrow
/// `i -> i+1` of shape `dims[i+1] x dims[i]`.
#[derive(Debug, Clone)]
pub struct Rep {
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

/// The interval module on vertices `a..=b` (1-based) with identity maps.
pub fn interval_rep(n: usize, a: usize, b: usize) -> Rep {
    let dims: Vec<usize> = (1..=n).map(|v| usize::from(a <= v && v <= b)).collect();
    let maps = (0..n.saturating_sub(1))
        .map(|i| {
            let (src, dst) = (dims[i], dims[i + 1]);
            let mut m = vec![vec![Rational::zero(); src]; dst];
            if src == 1 && dst == 1 {
                m[0][0] = Rational::one();
            }
            m
        })
        .collect();
    Rep { dims, maps }
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(mut m: Mat) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone() / m[r][c].clone();
                for j in c..cols {
                    let t = f.clone() * m[r][j].clone();
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// dim Hom(x, y): unknowns are the vertex maps f_v (dims_y[v] x dims_x[v]),
/// constraints are f_{v+1} A_v = B_v f_v for each arrow.
pub fn hom_dim(x: &Rep, y: &Rep) -> usize {
    let n = x.dims.len();
    let mut offset = Vec::with_capacity(n);
    let mut unknowns = 0;
    for v in 0..n {
        offset.push(unknowns);
        unknowns += x.dims[v] * y.dims[v];
    }
    let idx = |v: usize, r: usize, c: usize| offset[v] + r * x.dims[v] + c;
    let mut eqs: Mat = Vec::new();
    for v in 0..n.saturating_sub(1) {
        let (a, b) = (&x.maps[v], &y.maps[v]);
        // entry (r, c) of f_{v+1} A_v - B_v f_v, r < dims_y[v+1], c < dims_x[v]
        for r in 0..y.dims[v + 1] {
            for c in 0..x.dims[v] {
                let mut row = vec![Rational::zero(); unknowns];
                for k in 0..x.dims[v + 1] {
                    row[idx(v + 1, r, k)] += a[k][c].clone();
                }
                for k in 0..y.dims[v] {
                    row[idx(v, k, c)] -= b[r][k].clone();
                }
                eqs.push(row);
            }
        }
    }
    if eqs.is_empty() {
        return unknowns;
    }
    unknowns - rank(eqs)
}

pub fn hom_interval_dim(n: usize, x: (usize, usize), y: (usize, usize)) -> usize {
    hom_dim(&interval_rep(n, x.0, x.1), &interval_rep(n, y.0, y.1))
}

/// Subrepresentations of a module whose vertex spaces are at most one
/// dimensional: choose 0 or everything at each supported vertex and keep the
/// choices closed under the arrows. Returned as sorted vertex lists.
pub fn subobjects(rep: &Rep) -> Vec<Vec<usize>> {
    let support: Vec<usize> = (0..rep.dims.len()).filter(|&v| rep.dims[v] > 0).collect();
    assert!(support.iter().all(|&v| rep.dims[v] == 1), "thin modules only");
    let mut out = Vec::new();
    for mask in 0u32..(1 << support.len()) {
        let chosen: Vec<usize> = support
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let closed = chosen.iter().all(|&v| {
            v + 1 >= rep.dims.len()
                || rep.dims[v + 1] == 0
                || rep.maps[v][0][0].is_zero()
                || chosen.contains(&(v + 1))
        });
        if closed {
            out.push(chosen.iter().map(|v| v + 1).collect());
        }
    }
    out.sort();
    out
}

/// Thin module on an arbitrary vertex set with identity maps between
/// consecutive supported vertices.
pub fn thin_rep(n: usize, verts: &[usize]) -> Rep {
    let dims: Vec<usize> = (1..=n).map(|v| usize::from(verts.contains(&v))).collect();
    let maps = (0..n.saturating_sub(1))
        .map(|i| {
            let mut m = vec![vec![Rational::zero(); dims[i]]; dims[i + 1]];
            if dims[i] == 1 && dims[i + 1] == 1 {
                m[0][0] = Rational::one();
            }
            m
        })
        .collect();
    Rep { dims, maps }
}

pub type Z = (Rational, Rational);

pub fn charge(z: &[Z], verts: &[usize]) -> Z {
    let mut s = (Rational::zero(), Rational::zero());
    for &v in verts {
        s.0 += z[v - 1].0.clone();
        s.1 += z[v - 1].1.clone();
    }
    s
}

/// Phase order on the semi-closed upper half plane, independent of the
/// library: bigger means further counterclockwise from the positive axis.
pub fn phase_cmp(z: &Z, w: &Z) -> Ordering {
    for p in [z, w] {
        assert!(p.1.is_positive() || (p.1.is_zero() && p.0.is_negative()), "not in H");
    }
    // z further counterclockwise than w iff cross(w, z) > 0
    let cross = w.0.clone() * z.1.clone() - w.1.clone() * z.0.clone();
    cross.cmp(&Rational::zero())
}

/// Semistable iff no nonzero proper subobject has strictly bigger phase.
pub fn semistable(z: &[Z], n: usize, verts: &[usize]) -> bool {
    let whole = charge(z, verts);
    subobjects(&thin_rep(n, verts))
        .into_iter()
        .filter(|s| !s.is_empty() && s.len() < verts.len())
        .all(|s| phase_cmp(&charge(z, &s), &whole) != Ordering::Greater)
}

/// All HN filtrations of the thin module on `verts`: chains of subobjects
/// whose subquotients are semistable with strictly decreasing phases. Each
/// filtration is reported as its list of factors (vertex sets), top first.
pub fn hn_filtrations(z: &[Z], n: usize, verts: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let subs: Vec<Vec<usize>> = subobjects(&thin_rep(n, verts))
        .into_iter()
        .filter(|s| !s.is_empty() && s.len() < verts.len())
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << subs.len()) {
        let mut chain: Vec<&Vec<usize>> = subs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, s)| s)
            .collect();
        chain.sort_by_key(|s| s.len());
        let nested = chain.windows(2).all(|w| w[0].len() < w[1].len() && w[0].iter().all(|v| w[1].contains(v)));
        if !nested {
            continue;
        }
        let mut factors = Vec::new();
        let mut prev: Vec<usize> = Vec::new();
        for s in chain.iter().map(|s| (*s).clone()).chain(std::iter::once(verts.to_vec())) {
            let f: Vec<usize> = s.iter().copied().filter(|v| !prev.contains(v)).collect();
            factors.push(f);
            prev = s;
        }
        if !factors.iter().all(|f| semistable(z, n, f)) {
            continue;
        }
        let decreasing = factors
            .windows(2)
            .all(|w| phase_cmp(&charge(z, &w[0]), &charge(z, &w[1])) == Ordering::Greater);
        if decreasing {
            out.push(factors);
        }
    }
    out
}
