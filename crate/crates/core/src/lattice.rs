//! Integer lattices with a symmetric bilinear form.
//!
//! Vectors are coordinates in the basis the Gram matrix is written in; no
//! other basis is ever implied. All integer work is checked `i64`/`i128`
//! (overflow is reported, never wrapped) and rational work goes through
//! [`Scalar`].

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Integer coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn to_scalars<T: Scalar>(&self) -> Vec<T> {
        self.0.iter().map(|&x| T::of_i64(x)).collect()
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

/// Rational (or, more generally, scalar) coordinate vector.
pub type ScalarVector<T> = Vec<T>;
pub type RationalVector = ScalarVector<Rational>;

/// Which self-pairing a reflection root must have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionKind {
    /// `(d,d) = -2`, acting as `v -> v + (v,d) d` (spherical twist on classes).
    Spherical,
    /// `(d,d) = +2`, acting as `v -> v - (v,d) d` (Weyl reflection).
    Root,
}

impl ReflectionKind {
    pub fn self_pairing(self) -> i64 {
        match self {
            ReflectionKind::Spherical => -2,
            ReflectionKind::Root => 2,
        }
    }
}

/// A finite-rank free abelian group with an integer symmetric form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    gram: Vec<Vec<i64>>,
    even: bool,
    nondegenerate: bool,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    rank: usize,
    gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    even: Option<bool>,
}

impl IntLattice {
    /// Builds a lattice, checking symmetry and computing the flags.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::InvalidLattice("rank must be positive".into()));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidLattice(format!(
                    "row {i} has length {}, expected {rank}",
                    row.len()
                )));
            }
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!(
                        "gram not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let even = (0..rank).all(|i| gram[i][i] % 2 == 0);
        let nondegenerate = !determinant(&gram).is_zero();
        Ok(IntLattice {
            gram,
            even,
            nondegenerate,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.gram)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: len,
            });
        }
        Ok(())
    }

    /// `v^T G w` for integer vectors.
    pub fn pair(&self, v: &LatticeVector, w: &LatticeVector) -> Result<i64> {
        self.check_len(v.len())?;
        self.check_len(w.len())?;
        let mut acc: i128 = 0;
        for (i, &vi) in v.0.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for (j, &wj) in w.0.iter().enumerate() {
                row += self.gram[i][j] as i128 * wj as i128;
            }
            acc = row
                .checked_mul(vi as i128)
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::Overflow("pair"))?;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow("pair"))
    }

    /// `v^T G w` over any scalar type.
    pub fn pair_in<T: Scalar>(&self, v: &[T], w: &[T]) -> Result<T> {
        self.check_len(v.len())?;
        self.check_len(w.len())?;
        let mut acc = T::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let mut row = T::zero();
            for (j, wj) in w.iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && !wj.is_zero() {
                    row = row + T::of_i64(g) * wj.clone();
                }
            }
            acc = acc + vi.clone() * row;
        }
        Ok(acc)
    }

    /// `G v` as a vector (the functional `(v, -)` in coordinates).
    pub fn apply_in<T: Scalar>(&self, v: &[T]) -> Result<Vec<T>> {
        self.check_len(v.len())?;
        Ok(self
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(g, _)| **g != 0)
                    .fold(T::zero(), |acc, (g, x)| acc + T::of_i64(*g) * x.clone())
            })
            .collect())
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<i64> {
        self.pair(v, v)
    }

    /// Inertia indices `(positive, negative, zero)` of the form.
    pub fn signature(&self) -> (usize, usize, usize) {
        let m: Vec<Vec<Rational>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        inertia(m)
    }

    /// All vectors with `|x_i| <= bound` and `(x,x) = n`, in lexicographic order.
    pub fn enumerate_norm(&self, n: i64, bound: i64) -> Result<Vec<LatticeVector>> {
        self.enumerate_where(bound, |q, _| q == n)
    }

    /// Box scan keeping those `x` with `keep((x,x), x)`.
    ///
    /// The scan is split over the leading coordinate(s) and run on the rayon
    /// pool; the chunks are concatenated in order, so the output does not
    /// depend on the number of workers.
    pub fn enumerate_where<F>(&self, bound: i64, keep: F) -> Result<Vec<LatticeVector>>
    where
        F: Fn(i64, &[i64]) -> bool + Sync,
    {
        if bound < 1 {
            return Err(Error::Contract(format!(
                "enumeration box must be >= 1, got {bound}"
            )));
        }
        let rank = self.rank();
        let gmax = self
            .gram
            .iter()
            .flatten()
            .map(|x| x.unsigned_abs() as u128)
            .max()
            .unwrap_or(0);
        let worst = (rank as u128) * (rank as u128) * gmax * (bound as u128) * (bound as u128) * 4;
        if worst >= i64::MAX as u128 {
            return Err(Error::Overflow("enumerate_norm"));
        }
        let side = 2 * bound + 1;
        // prefix length so there is enough parallel work without tiny chunks
        let prefix_len = if rank >= 6 { 2 } else { 1.min(rank) };
        let chunks = (side as u64).pow(prefix_len as u32);
        let parts: Vec<Vec<LatticeVector>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut prefix = vec![0i64; prefix_len];
                let mut rest = c;
                for slot in prefix.iter_mut().rev() {
                    *slot = (rest % side as u64) as i64 - bound;
                    rest /= side as u64;
                }
                self.scan_suffix(&prefix, bound, &keep)
            })
            .collect();
        Ok(parts.into_iter().flatten().collect())
    }

    fn scan_suffix<F>(&self, prefix: &[i64], bound: i64, keep: &F) -> Vec<LatticeVector>
    where
        F: Fn(i64, &[i64]) -> bool,
    {
        let rank = self.rank();
        let g = &self.gram;
        let mut x = vec![-bound; rank];
        x[..prefix.len()].copy_from_slice(prefix);
        let mut gx: Vec<i64> = (0..rank)
            .map(|i| (0..rank).map(|j| g[i][j] * x[j]).sum())
            .collect();
        let mut q: i64 = (0..rank).map(|i| x[i] * gx[i]).sum();
        let mut out = Vec::new();
        let first = prefix.len();
        if first == rank {
            if keep(q, &x) {
                out.push(LatticeVector(x));
            }
            return out;
        }
        let last = rank - 1;
        let gll = g[last][last];
        loop {
            // innermost coordinate: only q and (Gx)_last move
            let (mut qt, mut gxl) = (q, gx[last]);
            for t in -bound..=bound {
                x[last] = t;
                if keep(qt, &x) {
                    out.push(LatticeVector(x.clone()));
                }
                qt += 2 * gxl + gll;
                gxl += gll;
            }
            x[last] = -bound;
            // odometer step over coordinates first..last, with x_last = -bound
            let mut i = last;
            loop {
                if i == first {
                    return out;
                }
                i -= 1;
                if x[i] < bound {
                    q += 2 * gx[i] + g[i][i];
                    for (k, gk) in gx.iter_mut().enumerate() {
                        *gk += g[k][i];
                    }
                    x[i] += 1;
                    break;
                }
                let delta = -2 * bound;
                q += 2 * delta * gx[i] + delta * delta * g[i][i];
                for (k, gk) in gx.iter_mut().enumerate() {
                    *gk += delta * g[k][i];
                }
                x[i] = -bound;
            }
        }
    }

    /// Reflection in `delta`, which must have self-pairing `kind.self_pairing()`.
    pub fn reflect(
        &self,
        delta: &LatticeVector,
        v: &LatticeVector,
        kind: ReflectionKind,
    ) -> Result<LatticeVector> {
        let dd = self.pair(delta, delta)?;
        if dd != kind.self_pairing() {
            return Err(Error::InvalidRoot {
                expected: kind.self_pairing(),
                got: dd.to_string(),
            });
        }
        let vd = self.pair(v, delta)?;
        // v - 2 (v,d)/(d,d) d
        let coeff = match kind {
            ReflectionKind::Spherical => vd,
            ReflectionKind::Root => -vd,
        };
        v.0.iter()
            .zip(&delta.0)
            .map(|(&a, &d)| {
                coeff
                    .checked_mul(d)
                    .and_then(|t| a.checked_add(t))
                    .ok_or(Error::Overflow("reflect"))
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }

    /// The lattice in the basis given by the columns of `basis`: `P^T G P`.
    pub fn change_basis(&self, basis: &[Vec<i64>]) -> Result<IntLattice> {
        let r = self.rank();
        if basis.len() != r || basis.iter().any(|row| row.len() != r) {
            return Err(Error::Dimension {
                expected: r,
                got: basis.len(),
            });
        }
        let col = |j: usize| LatticeVector((0..r).map(|i| basis[i][j]).collect());
        let mut gram = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                gram[i][j] = self.pair(&col(i), &col(j))?;
            }
        }
        IntLattice::new(gram)
    }

    pub fn from_json_str(s: &str) -> std::result::Result<Self, crate::JsonError> {
        let raw: LatticeJson = serde_json::from_str(s)?;
        Ok(Self::from_json_value(raw)?)
    }

    fn from_json_value(raw: LatticeJson) -> Result<Self> {
        if raw.rank != raw.gram.len() {
            return Err(Error::Dimension {
                expected: raw.rank,
                got: raw.gram.len(),
            });
        }
        let lat = IntLattice::new(raw.gram)?;
        if let Some(claimed) = raw.even {
            if claimed && !lat.even {
                return Err(Error::InvalidLattice(
                    "flagged even but a diagonal entry is odd".into(),
                ));
            }
        }
        Ok(lat)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LatticeJson {
            rank: self.rank(),
            gram: self.gram.clone(),
            even: Some(self.even),
        })
        .expect("lattice serializes")
    }
}

impl Serialize for IntLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntLattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LatticeJson::deserialize(d)?;
        Self::from_json_value(raw).map_err(serde::de::Error::custom)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Inertia of a symmetric rational matrix by congruence diagonalisation.
pub fn inertia(mut a: Vec<Vec<Rational>>) -> (usize, usize, usize) {
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        // bring a nonzero diagonal entry to position k
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, k, p);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        {
            // all diagonals vanish: row/col i += row/col j makes a[i][i] = 2 a[i][j]
            for c in 0..n {
                let t = a[j][c].clone();
                a[i][c] += t;
            }
            for r in 0..n {
                let t = a[r][j].clone();
                a[r][i] += t;
            }
            swap_sym(&mut a, k, i);
        } else {
            break;
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for c in k..n {
                let t = &f * &a[k][c];
                a[i][c] -= t;
            }
            for r in k..n {
                let t = &f * &a[r][k];
                a[r][i] -= t;
            }
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

fn swap_sym(a: &mut [Vec<Rational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}
