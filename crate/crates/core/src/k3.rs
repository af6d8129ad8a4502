//! Mukai lattices of K3 surfaces and the period domain `P+_0`.
//!
//! The lattice `N(X) = Z + NS(X) + Z` is stored in the basis
//! `(r, D_1, .., D_rho, s)` with pairing `D.D' - r s' - r' s`. Period
//! points are rational, so membership in a wall `delta^perp` is decided
//! exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{IntLattice, LatticeVector, ReflectionKind};
use crate::scalar::{ceil_sqrt, format_scalar, parse_rational, Rational, Scalar};

/// Largest box volume the wall scan will walk.
pub const MAX_WALL_SCAN_POINTS: u128 = 4_000_000_000;

/// Picard lattice data and the derived Mukai lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct K3Model {
    ns: IntLattice,
    mukai: IntLattice,
    reference: LatticeVector,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    rho: usize,
    ns_gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ample: Option<Vec<i64>>,
}

impl K3Model {
    /// Builds `N(X)` from an even NS gram of signature `(1, rho - 1)`.
    ///
    /// The reference ample class used for component labels defaults to the
    /// first basis vector of positive square (searched in a small box if
    /// none of the basis vectors qualifies), scaled so its square exceeds 2.
    pub fn new(ns_gram: Vec<Vec<i64>>, ample: Option<Vec<i64>>) -> Result<Self> {
        let ns = IntLattice::new(ns_gram)?;
        let rho = ns.rank();
        if rho > 20 {
            return Err(Error::InvalidLattice(format!("Picard number {rho} exceeds 20")));
        }
        if !ns.is_even() {
            return Err(Error::InvalidLattice("NS gram must be even".into()));
        }
        if ns.signature() != (1, rho - 1, 0) {
            let (p, q, z) = ns.signature();
            return Err(Error::InvalidLattice(format!(
                "NS signature ({p},{q},{z}) is not (1,{})",
                rho - 1
            )));
        }
        let m = rho + 2;
        let mut g = vec![vec![0i64; m]; m];
        g[0][m - 1] = -1;
        g[m - 1][0] = -1;
        for i in 0..rho {
            for j in 0..rho {
                g[i + 1][j + 1] = ns.entry(i, j);
            }
        }
        let mukai = IntLattice::new(g)?;
        if !mukai.is_even() || mukai.signature() != (2, rho, 0) {
            return Err(Error::InvalidLattice(
                "Mukai lattice is not even of signature (2, rho)".into(),
            ));
        }
        let base = match ample {
            Some(a) => {
                let v = LatticeVector(a);
                if ns.norm(&v)? <= 0 {
                    return Err(Error::InvalidLattice(
                        "reference ample class must have positive square".into(),
                    ));
                }
                v
            }
            None => default_positive_class(&ns)?,
        };
        let mut k = 1i64;
        let sq = ns.norm(&base)?;
        while sq * k * k <= 2 {
            k += 1;
        }
        let reference = LatticeVector(base.0.iter().map(|x| x * k).collect());
        Ok(K3Model {
            ns,
            mukai,
            reference,
        })
    }

    pub fn rho(&self) -> usize {
        self.ns.rank()
    }

    pub fn ns(&self) -> &IntLattice {
        &self.ns
    }

    pub fn mukai_lattice(&self) -> &IntLattice {
        &self.mukai
    }

    /// Reference ample class `omega_0` with `omega_0^2 > 2`.
    pub fn reference_ample(&self) -> &LatticeVector {
        &self.reference
    }

    pub fn pair(&self, v: &MukaiVector, w: &MukaiVector) -> Result<i64> {
        self.check(v)?;
        self.check(w)?;
        self.mukai.pair(&v.to_lattice(), &w.to_lattice())
    }

    /// `chi(E, F) = -(v(E), v(F))`.
    pub fn euler_form(&self, v: &MukaiVector, w: &MukaiVector) -> Result<i64> {
        Ok(-self.pair(v, w)?)
    }

    fn check(&self, v: &MukaiVector) -> Result<()> {
        if v.d.len() != self.rho() {
            return Err(Error::Dimension {
                expected: self.rho(),
                got: v.d.len(),
            });
        }
        Ok(())
    }

    /// `(-2)`-classes with every coordinate bounded by `bound`.
    pub fn delta_set(&self, bound: i64) -> Result<Vec<MukaiVector>> {
        Ok(self
            .mukai
            .enumerate_norm(-2, bound)?
            .into_iter()
            .map(|v| MukaiVector::from_lattice(&v))
            .collect())
    }

    /// Class-level action of the spherical twist: `e - chi(s, e) s`.
    pub fn spherical_twist_class(&self, s: &MukaiVector, e: &MukaiVector) -> Result<MukaiVector> {
        self.check(s)?;
        self.check(e)?;
        let ss = self.pair(s, s)?;
        if ss != -2 {
            return Err(Error::InvalidSpherical(ss.to_string()));
        }
        let out = self
            .mukai
            .reflect(&s.to_lattice(), &e.to_lattice(), ReflectionKind::Spherical)?;
        Ok(MukaiVector::from_lattice(&out))
    }

    /// `exp(i omega_0)` for the reference class.
    pub fn reference_period<T: Scalar>(&self) -> Result<PeriodPoint<T>> {
        PeriodPoint::exp_i(self, &self.reference.to_scalars())
    }

    /// Wall-scan box sufficient to find every `delta` orthogonal to the
    /// positive plane of `omega` (see [`wall_scan_bound`]).
    pub fn wall_scan_bound<T: Scalar>(&self, omega: &PeriodPoint<T>) -> Result<i64> {
        wall_scan_bound(&self.mukai, omega)
    }

    pub fn classify_period<T: Scalar>(
        &self,
        omega: &PeriodPoint<T>,
        wall_box: Option<i64>,
    ) -> Result<PeriodClassification<T>> {
        classify_period(self, omega, wall_box)
    }

    pub fn from_json_str(s: &str) -> std::result::Result<Self, crate::JsonError> {
        let raw: ModelJson = serde_json::from_str(s)?;
        Ok(Self::from_raw(raw)?)
    }

    fn from_raw(raw: ModelJson) -> Result<Self> {
        if raw.rho != raw.ns_gram.len() {
            return Err(Error::Dimension {
                expected: raw.rho,
                got: raw.ns_gram.len(),
            });
        }
        Self::new(raw.ns_gram, raw.ample)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ModelJson {
            rho: self.rho(),
            ns_gram: self.ns.gram().to_vec(),
            ample: None,
        })
        .expect("serializable")
    }
}

fn default_positive_class(ns: &IntLattice) -> Result<LatticeVector> {
    let rho = ns.rank();
    for i in 0..rho {
        if ns.entry(i, i) > 0 {
            let mut v = vec![0; rho];
            v[i] = 1;
            return Ok(LatticeVector(v));
        }
    }
    // hyperbolic-type grams: first positive vector in a small box
    for bound in 1..=3 {
        let found = ns.enumerate_where(bound, |q, _| q > 0)?;
        let positive_first = found.into_iter().find(|v| {
            v.0.iter().find(|x| **x != 0).map(|x| *x > 0).unwrap_or(false)
        });
        if let Some(v) = positive_first {
            return Ok(v);
        }
    }
    Err(Error::InvalidLattice("no positive class found for the reference frame".into()))
}

/// Mukai vector `(r, D, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MukaiVector {
    pub r: i64,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    pub s: i64,
}

impl MukaiVector {
    pub fn new(r: i64, d: Vec<i64>, s: i64) -> Self {
        MukaiVector { r, d, s }
    }

    pub fn to_lattice(&self) -> LatticeVector {
        let mut c = Vec::with_capacity(self.d.len() + 2);
        c.push(self.r);
        c.extend_from_slice(&self.d);
        c.push(self.s);
        LatticeVector(c)
    }

    pub fn from_lattice(v: &LatticeVector) -> Self {
        let c = v.coords();
        MukaiVector {
            r: c[0],
            d: c[1..c.len() - 1].to_vec(),
            s: c[c.len() - 1],
        }
    }

    pub fn neg(&self) -> Self {
        MukaiVector {
            r: -self.r,
            d: self.d.iter().map(|x| -x).collect(),
            s: -self.s,
        }
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.d.iter().map(|x| x.to_string()).collect();
        write!(f, "({}, [{}], {})", self.r, d.join(", "), self.s)
    }
}

/// `v(E) = (r, c_1, ch_2 + r)`.
pub fn mukai_vector(r: i64, d: Vec<i64>, ch2: i64) -> MukaiVector {
    MukaiVector { r, d, s: ch2 + r }
}

/// A vector `re + i im` of `N(X) (x) C` with scalar coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodPoint<T: Scalar> {
    pub re: Vec<T>,
    pub im: Vec<T>,
}

impl<T: Scalar> PeriodPoint<T> {
    pub fn new(re: Vec<T>, im: Vec<T>) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::Dimension {
                expected: re.len(),
                got: im.len(),
            });
        }
        Ok(PeriodPoint { re, im })
    }

    /// `exp(i omega) = (1, i omega, -omega^2 / 2)`.
    pub fn exp_i(model: &K3Model, omega: &[T]) -> Result<Self> {
        Self::exp_b_field(model, &vec![T::zero(); omega.len()], omega)
    }

    /// `exp(beta + i omega) = (1, beta + i omega, (beta + i omega)^2 / 2)`.
    pub fn exp_b_field(model: &K3Model, beta: &[T], omega: &[T]) -> Result<Self> {
        let ns = model.ns();
        let two = T::of_i64(2);
        let bb = ns.pair_in(beta, beta)?;
        let ww = ns.pair_in(omega, omega)?;
        let bw = ns.pair_in(beta, omega)?;
        let mut re = vec![T::one()];
        re.extend_from_slice(beta);
        re.push((bb - ww) / two);
        let mut im = vec![T::zero()];
        im.extend_from_slice(omega);
        im.push(bw);
        Ok(PeriodPoint { re, im })
    }

    pub fn conjugate(&self) -> Self {
        PeriodPoint {
            re: self.re.clone(),
            im: self.im.iter().map(|x| -x.clone()).collect(),
        }
    }

    /// `Z(E) = (omega, v(E))` as `(re, im)`.
    pub fn charge(&self, model: &K3Model, v: &MukaiVector) -> Result<(T, T)> {
        let l = model.mukai_lattice();
        let w: Vec<T> = v.to_lattice().to_scalars();
        Ok((l.pair_in(&self.re, &w)?, l.pair_in(&self.im, &w)?))
    }
}

#[derive(Serialize, Deserialize)]
struct PeriodJson {
    re: Vec<serde_json::Value>,
    im: Vec<serde_json::Value>,
}

fn json_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected rational, found {other}"))),
    }
}

impl PeriodPoint<Rational> {
    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let raw: PeriodJson = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        let re = raw.re.iter().map(json_rational).collect::<Result<Vec<_>>>()?;
        let im = raw.im.iter().map(json_rational).collect::<Result<Vec<_>>>()?;
        Self::new(re, im)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = |v: &[Rational]| -> Vec<serde_json::Value> {
            v.iter()
                .map(|x| serde_json::Value::String(format_scalar(x)))
                .collect()
        };
        serde_json::to_value(PeriodJson {
            re: f(&self.re),
            im: f(&self.im),
        })
        .expect("serializable")
    }
}

/// Where a period point sits relative to `P+_0(X)`.
#[derive(Debug, Clone, PartialEq)]
pub enum PeriodClass<T: Scalar> {
    /// Re and Im do not span a positive definite plane; `witness` is a
    /// nonzero combination of non-positive norm, or zero when they are dependent.
    NotPositive { witness: Vec<T> },
    OnWall(Vec<MukaiVector>),
    InP0Plus,
    InP0Minus,
}

impl<T: Scalar> PeriodClass<T> {
    pub fn label(&self) -> &'static str {
        match self {
            PeriodClass::NotPositive { .. } => "NotPositive",
            PeriodClass::OnWall(_) => "OnWall",
            PeriodClass::InP0Plus => "InP0Plus",
            PeriodClass::InP0Minus => "InP0Minus",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodClassification<T: Scalar> {
    pub class: PeriodClass<T>,
    /// `[[(Re,Re), (Re,Im)], [(Re,Im), (Im,Im)]]`.
    pub plane_gram: [[T; 2]; 2],
    /// Completeness bound for the wall scan (absent when not positive).
    pub required_box: Option<i64>,
    /// Box actually scanned.
    pub box_used: Option<i64>,
    /// `false` when the caller forced a box smaller than the bound.
    pub complete: bool,
}

/// Exact coordinate bound for `(-2)`-vectors orthogonal to a positive plane.
///
/// With `P` the plane and `G` its Gram matrix, `q(x) = -(x,x) + 2 a^T G^-1 a`
/// (`a` the pairings of `x` with Re, Im) is positive definite because
/// `P^perp` is negative definite in signature `(2, rho)`. Every wall vector
/// has `q = 2`, hence `|x_i| <= sqrt(2 (Q^-1)_ii)`.
pub fn wall_scan_bound<T: Scalar>(lattice: &IntLattice, omega: &PeriodPoint<T>) -> Result<i64> {
    let to_q = |v: &[T]| -> Result<Vec<Rational>> {
        v.iter()
            .map(|x| {
                x.to_rational()
                    .ok_or_else(|| Error::Contract("period coordinate is not finite".into()))
            })
            .collect()
    };
    let re = to_q(&omega.re)?;
    let im = to_q(&omega.im)?;
    let n = lattice.rank();
    if re.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: re.len(),
        });
    }
    let gre = lattice.apply_in(&re)?;
    let gim = lattice.apply_in(&im)?;
    let g00 = lattice.pair_in(&re, &re)?;
    let g01 = lattice.pair_in(&re, &im)?;
    let g11 = lattice.pair_in(&im, &im)?;
    let det = &g00 * &g11 - &g01 * &g01;
    if !(g00.is_positive() && det.is_positive()) {
        return Err(Error::Contract("period plane is not positive definite".into()));
    }
    // G^-1 = [[g11, -g01], [-g01, g00]] / det
    let mut q = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let quad = &gre[i] * &gre[j] * &g11 - (&gre[i] * &gim[j] + &gim[i] * &gre[j]) * &g01
                + &gim[i] * &gim[j] * &g00;
            q[i][j] = Rational::from_integer(BigInt::from(-lattice.entry(i, j)))
                + quad * Rational::from_integer(BigInt::from(2)) / &det;
        }
    }
    let inv = invert(q).ok_or_else(|| Error::Contract("majorant form is singular".into()))?;
    let two = Rational::from_integer(BigInt::from(2));
    let mut bound = BigInt::one();
    for (i, row) in inv.iter().enumerate() {
        let b = ceil_sqrt(&(&two * &row[i]));
        if b > bound {
            bound = b;
        }
    }
    bound.to_i64().ok_or(Error::Overflow("wall scan bound"))
}

/// Gauss–Jordan inverse over the rationals.
fn invert(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        inv.swap(k, p);
        let piv = a[k][k].clone();
        for j in 0..n {
            a[k][j] /= &piv;
            inv[k][j] /= &piv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
                let t = &f * &inv[k][j];
                inv[i][j] -= t;
            }
        }
    }
    Some(inv)
}

pub fn classify_period<T: Scalar>(
    model: &K3Model,
    omega: &PeriodPoint<T>,
    wall_box: Option<i64>,
) -> Result<PeriodClassification<T>> {
    let l = model.mukai_lattice();
    let (re, im) = (&omega.re, &omega.im);
    let g00 = l.pair_in(re, re)?;
    let g01 = l.pair_in(re, im)?;
    let g11 = l.pair_in(im, im)?;
    let det = g00.clone() * g11.clone() - g01.clone() * g01.clone();
    let plane_gram = [[g00.clone(), g01.clone()], [g01.clone(), g11.clone()]];
    if !(g00.is_positive() && det.is_positive()) {
        let witness: Vec<T> = if !g00.is_positive() {
            re.clone()
        } else {
            // -(Re,Im) Re + (Re,Re) Im has norm (Re,Re) det <= 0
            re.iter()
                .zip(im)
                .map(|(r, i)| -g01.clone() * r.clone() + g00.clone() * i.clone())
                .collect()
        };
        return Ok(PeriodClassification {
            class: PeriodClass::NotPositive { witness },
            plane_gram,
            required_box: None,
            box_used: None,
            complete: true,
        });
    }
    let required = wall_scan_bound(l, omega)?;
    let used = wall_box.unwrap_or(required).max(1);
    let volume = (2 * used as u128 + 1).saturating_pow(l.rank() as u32);
    if volume > MAX_WALL_SCAN_POINTS {
        return Err(Error::Contract(format!(
            "wall scan box {used} needs {volume} points (limit {MAX_WALL_SCAN_POINTS})"
        )));
    }
    let gre = l.apply_in(re)?;
    let gim = l.apply_in(im)?;
    let orth = |x: &[i64], g: &[T]| {
        x.iter()
            .zip(g)
            .filter(|(c, _)| **c != 0)
            .fold(T::zero(), |acc, (c, gi)| acc + T::of_i64(*c) * gi.clone())
            .is_zero()
    };
    let walls: Vec<MukaiVector> = l
        .enumerate_where(used, |q, x| q == -2 && orth(x, &gre) && orth(x, &gim))?
        .iter()
        .map(MukaiVector::from_lattice)
        .collect();
    let class = if !walls.is_empty() {
        PeriodClass::OnWall(walls)
    } else {
        let frame: PeriodPoint<T> = model.reference_period()?;
        let m00 = l.pair_in(re, &frame.re)?;
        let m01 = l.pair_in(re, &frame.im)?;
        let m10 = l.pair_in(im, &frame.re)?;
        let m11 = l.pair_in(im, &frame.im)?;
        let orient = m00 * m11 - m01 * m10;
        if orient.is_positive() {
            PeriodClass::InP0Plus
        } else if orient.is_negative() {
            PeriodClass::InP0Minus
        } else {
            return Err(Error::Contract(
                "orientation determinant vanished on a positive plane".into(),
            ));
        }
    };
    Ok(PeriodClassification {
        class,
        plane_gram,
        required_box: Some(required),
        box_used: Some(used),
        complete: used >= required,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn model1() -> K3Model {
        K3Model::new(vec![vec![2]], None).unwrap()
    }

    fn mv(r: i64, d: i64, s: i64) -> MukaiVector {
        MukaiVector::new(r, vec![d], s)
    }

    #[test]
    fn mukai_vector_examples() {
        assert_eq!(mukai_vector(1, vec![0], 0), mv(1, 0, 1));
        assert_eq!(mukai_vector(0, vec![0], 1), mv(0, 0, 1));
        assert_eq!(mukai_vector(0, vec![0], 0), mv(0, 0, 0));
    }

    #[test]
    fn euler_form_examples() {
        let m = model1();
        let ox = mv(1, 0, 1);
        let pt = mv(0, 0, 1);
        assert_eq!(m.euler_form(&ox, &ox).unwrap(), 2);
        assert_eq!(m.euler_form(&ox, &pt).unwrap(), 1);
        assert_eq!(m.euler_form(&pt, &ox).unwrap(), 1);
        assert!(m.euler_form(&ox, &MukaiVector::new(0, vec![0, 0], 0)).is_err());
    }

    #[test]
    fn delta_examples() {
        let m = model1();
        let d1 = m.delta_set(1).unwrap();
        assert!(d1.contains(&mv(1, 0, 1)) && d1.contains(&mv(-1, 0, -1)));
        let d2 = m.delta_set(2).unwrap();
        for v in [mv(1, 1, 2), mv(2, 1, 1), mv(-1, -1, -2), mv(-2, -1, -1)] {
            assert!(d2.contains(&v), "{v}");
        }
        assert!(d2.len() > d1.len());
        assert!(d2.iter().all(|v| d2.contains(&v.neg())));
    }

    #[test]
    fn twist_examples() {
        let m = model1();
        let s = mv(1, 0, 1);
        let e = mv(0, 0, 1);
        assert_eq!(m.spherical_twist_class(&s, &e).unwrap(), mv(-1, 0, 0));
        assert_eq!(m.spherical_twist_class(&s, &s).unwrap(), s.neg());
        let once = m.spherical_twist_class(&s, &e).unwrap();
        assert_eq!(m.spherical_twist_class(&s, &once).unwrap(), e);
        assert!(matches!(
            m.spherical_twist_class(&e, &s),
            Err(Error::InvalidSpherical(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let m = model1();
        let two_h = PeriodPoint::exp_i(&m, &[int(2)]).unwrap();
        assert_eq!(two_h.re, vec![int(1), int(0), int(-4)]);
        assert_eq!(two_h.im, vec![int(0), int(2), int(0)]);
        let c = m.classify_period(&two_h, None).unwrap();
        assert_eq!(c.plane_gram, [[int(8), int(0)], [int(0), int(8)]]);
        assert_eq!(c.class, PeriodClass::InP0Plus);
        assert!(c.complete);
        let c5 = m.classify_period(&two_h, Some(5)).unwrap();
        assert_eq!(c5.class, PeriodClass::InP0Plus);

        let h = PeriodPoint::exp_i(&m, &[int(1)]).unwrap();
        assert_eq!(h.re, vec![int(1), int(0), int(-1)]);
        match m.classify_period(&h, None).unwrap().class {
            PeriodClass::OnWall(w) => assert_eq!(w, vec![mv(-1, 0, -1), mv(1, 0, 1)]),
            other => panic!("expected wall, got {other:?}"),
        }

        let conj = m.classify_period(&two_h.conjugate(), None).unwrap();
        assert_eq!(conj.class, PeriodClass::InP0Minus);
    }

    #[test]
    fn not_positive_has_witness() {
        let m = model1();
        let p = PeriodPoint::new(vec![int(0), int(0), int(1)], vec![int(0), int(1), int(0)]).unwrap();
        match m.classify_period(&p, None).unwrap().class {
            PeriodClass::NotPositive { witness } => {
                let l = m.mukai_lattice();
                assert!(l.pair_in(&witness, &witness).unwrap() <= int(0));
            }
            other => panic!("{other:?}"),
        }
        let dep = PeriodPoint::new(vec![int(1), int(0), int(-1)], vec![int(2), int(0), int(-2)]).unwrap();
        assert!(matches!(
            m.classify_period(&dep, None).unwrap().class,
            PeriodClass::NotPositive { .. }
        ));
    }

    #[test]
    fn model_validation() {
        assert!(K3Model::new(vec![vec![1]], None).is_err());
        assert!(K3Model::new(vec![vec![-2]], None).is_err());
        let hyp = K3Model::new(vec![vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(hyp.mukai_lattice().signature(), (2, 2, 0));
        assert!(hyp.ns().norm(hyp.reference_ample()).unwrap() > 2);
        let m = K3Model::from_json_str(r#"{"rho": 1, "ns_gram": [[4]]}"#).unwrap();
        assert_eq!(m.reference_ample(), &LatticeVector(vec![1]));
        assert!(K3Model::from_json_str(r#"{"rho": 2, "ns_gram": [[4]]}"#).is_err());
    }

    #[test]
    fn period_json() {
        let p = PeriodPoint::from_json_value(serde_json::json!({"re": ["1", 0, "-1/2"], "im": [0, "3/2", 0]}))
            .unwrap();
        assert_eq!(p.re[2], crate::scalar::rat(-1, 2));
        assert_eq!(PeriodPoint::from_json_value(p.to_json()).unwrap(), p);
    }
}
