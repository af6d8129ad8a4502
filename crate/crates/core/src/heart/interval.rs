//! Objects of the type-A quiver heart.
//!
//! The quiver is `1 -> 2 -> ... -> n`. The interval module `M[a,b]` has a
//! one-dimensional space at each vertex of `[a,b]` and identity maps along
//! the arrows inside the support. Its nonzero subobjects are the `M[c,b]`
//! with `a <= c <= b` and its quotients the `M[a,c-1]`.

use std::fmt;

use crate::error::{Error, Result};

/// The linear quiver heart with `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TypeAHeart {
    n: usize,
}

impl TypeAHeart {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Contract("heart needs at least one vertex".into()));
        }
        Ok(TypeAHeart { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn interval(&self, a: usize, b: usize) -> Result<Interval> {
        Interval::new(a, b, self.n)
    }

    pub fn simple(&self, i: usize) -> Result<Interval> {
        self.interval(i, i)
    }

    /// Every indecomposable `M[a,b]`, ordered by `(a, b)`.
    pub fn intervals(&self) -> Vec<Interval> {
        let n = self.n;
        (1..=n)
            .flat_map(|a| (a..=n).map(move |b| Interval { a, b }))
            .collect()
    }
}

/// Indecomposable interval module `M[a,b]`, 1-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if a == 0 || a > b || b > n {
            return Err(Error::InvalidInterval { a, b, n });
        }
        Ok(Interval { a, b })
    }

    pub fn len(&self) -> usize {
        self.b - self.a + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_simple(&self) -> bool {
        self.a == self.b
    }

    /// Dimension vector in `Z^n`.
    pub fn class(&self, n: usize) -> Vec<i64> {
        (1..=n)
            .map(|i| i64::from(self.a <= i && i <= self.b))
            .collect()
    }

    /// Proper nonzero subobjects `M[c,b]`, `a < c <= b`, largest first.
    pub fn proper_subobjects(&self) -> impl Iterator<Item = Interval> + '_ {
        (self.a + 1..=self.b).map(move |c| Interval { a: c, b: self.b })
    }

    /// Quotient by the subobject starting at `c` (`a < c <= b`).
    pub fn quotient_by(&self, c: usize) -> Interval {
        debug_assert!(self.a < c && c <= self.b);
        Interval {
            a: self.a,
            b: c - 1,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}]", self.a, self.b)
    }
}

/// `Hom(M[a,b], M[c,d])` is nonzero exactly when `c <= a <= d <= b`.
pub fn hom_nonzero(e: Interval, f: Interval) -> bool {
    f.a <= e.a && e.a <= f.b && f.b <= e.b
}

/// A direct sum of interval modules, kept as a sorted multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalObject {
    n: usize,
    intervals: Vec<Interval>,
}

impl IntervalObject {
    pub fn new(heart: TypeAHeart, mut intervals: Vec<Interval>) -> Result<Self> {
        for iv in &intervals {
            Interval::new(iv.a, iv.b, heart.n())?;
        }
        intervals.sort();
        Ok(IntervalObject {
            n: heart.n(),
            intervals,
        })
    }

    pub fn zero(heart: TypeAHeart) -> Self {
        IntervalObject {
            n: heart.n(),
            intervals: Vec::new(),
        }
    }

    pub fn single(heart: TypeAHeart, iv: Interval) -> Result<Self> {
        Self::new(heart, vec![iv])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_zero(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn as_single(&self) -> Option<Interval> {
        match self.intervals.as_slice() {
            [iv] => Some(*iv),
            _ => None,
        }
    }

    pub fn class(&self) -> Vec<i64> {
        let mut c = vec![0i64; self.n];
        for iv in &self.intervals {
            for slot in &mut c[iv.a - 1..iv.b] {
                *slot += 1;
            }
        }
        c
    }

    pub fn direct_sum(&self, other: &IntervalObject) -> Result<IntervalObject> {
        if self.n != other.n {
            return Err(Error::Contract("direct sum across different hearts".into()));
        }
        let mut intervals = self.intervals.clone();
        intervals.extend_from_slice(&other.intervals);
        intervals.sort();
        Ok(IntervalObject {
            n: self.n,
            intervals,
        })
    }
}

impl fmt::Display for IntervalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.intervals.iter().map(|iv| iv.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_examples() {
        let iv = |a, b| Interval { a, b };
        assert!(hom_nonzero(iv(1, 1), iv(1, 1)));
        assert!(!hom_nonzero(iv(1, 1), iv(2, 2)));
        assert!(hom_nonzero(iv(1, 2), iv(1, 1)));
        // inclusion of the subobject M[2,2] into M[1,2]
        assert!(hom_nonzero(iv(2, 2), iv(1, 2)));
        assert!(!hom_nonzero(iv(1, 1), iv(1, 2)));
    }

    #[test]
    fn classes_and_validation() {
        let h = TypeAHeart::new(4).unwrap();
        assert_eq!(h.interval(2, 3).unwrap().class(4), vec![0, 1, 1, 0]);
        assert!(h.interval(3, 2).is_err());
        assert!(h.interval(0, 1).is_err());
        assert!(h.interval(1, 5).is_err());
        assert!(TypeAHeart::new(0).is_err());
        assert_eq!(h.intervals().len(), 10);
        let e = IntervalObject::new(h, vec![h.interval(2, 4).unwrap(), h.interval(1, 2).unwrap()])
            .unwrap();
        assert_eq!(e.class(), vec![1, 2, 1, 1]);
        assert_eq!(e.to_string(), "M[1,2] + M[2,4]");
        assert!(IntervalObject::zero(h).is_zero());
    }

    #[test]
    fn subobjects_of_interval() {
        let iv = Interval { a: 1, b: 3 };
        let subs: Vec<_> = iv.proper_subobjects().collect();
        assert_eq!(subs, vec![Interval { a: 2, b: 3 }, Interval { a: 3, b: 3 }]);
        assert_eq!(iv.quotient_by(2), Interval { a: 1, b: 1 });
    }
}
