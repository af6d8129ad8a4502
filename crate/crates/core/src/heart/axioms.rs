//! Axiom checker for a stability condition on the type-A heart.

use std::fmt;

use num_complex::Complex;

use super::hn::{hn_interval, interval_semistable};
use super::interval::{hom_nonzero, Interval};
use super::stability::{Phase, StabilityCondition};
use crate::scalar::Scalar;

/// Largest heart on which the HN uniqueness check enumerates every filtration.
pub const BRUTE_FORCE_MAX_N: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub tested: usize,
    pub violations: Vec<String>,
    pub note: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub n: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn violation_count(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "axiom report (n = {})", self.n)?;
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "  [{status}] {} ({} cases)", c.axiom, c.tested)?;
            if let Some(note) = &c.note {
                write!(f, " - {note}")?;
            }
            writeln!(f)?;
            for v in &c.violations {
                writeln!(f, "      {v}")?;
            }
        }
        Ok(())
    }
}

/// Every filtration of `iv` whose factors are semistable with strictly
/// decreasing phases. A correct HN theory returns exactly one.
pub fn brute_force_hn<T: Scalar>(
    sigma: &StabilityCondition<T>,
    iv: Interval,
) -> Vec<Vec<(Interval, Phase<T>)>> {
    let cuts: Vec<usize> = (iv.a + 1..=iv.b).collect();
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << cuts.len()) {
        // chosen cut points c give subobjects M[c,b]; walk from the top down
        let mut chosen: Vec<usize> = cuts
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        chosen.sort_unstable_by(|x, y| y.cmp(x));
        let mut factors = Vec::with_capacity(chosen.len() + 1);
        let mut top = iv.b;
        for &c in &chosen {
            factors.push(Interval { a: c, b: top });
            top = c - 1;
        }
        factors.push(Interval { a: iv.a, b: top });
        if !factors.iter().all(|&f| interval_semistable(sigma, f)) {
            continue;
        }
        let phased: Vec<(Interval, Phase<T>)> = factors
            .into_iter()
            .map(|f| (f, sigma.phase_interval(f)))
            .collect();
        if phased.windows(2).all(|w| w[0].1 > w[1].1) {
            found.push(phased);
        }
    }
    found
}

pub fn check_axioms<T: Scalar>(sigma: &StabilityCondition<T>) -> AxiomReport {
    check_axioms_with(sigma, hom_nonzero)
}

/// Like [`check_axioms`] with a caller-supplied Hom test for axiom (c).
pub fn check_axioms_with<T: Scalar>(
    sigma: &StabilityCondition<T>,
    hom: impl Fn(Interval, Interval) -> bool,
) -> AxiomReport {
    let heart = sigma.heart();
    let n = heart.n();
    let intervals = heart.intervals();

    let mut a = AxiomCheck {
        axiom: "(a) Z(E) in R>0 exp(i pi phi(E)) for semistable E",
        tested: 0,
        violations: Vec::new(),
        note: None,
    };
    let mut semistables: Vec<(Interval, Phase<T>)> = Vec::new();
    for &iv in &intervals {
        let z = sigma.charge_interval(iv);
        match Phase::of(&z) {
            Ok(p) => {
                if interval_semistable(sigma, iv) {
                    a.tested += 1;
                    let m2 = z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone();
                    if !m2.is_positive() {
                        a.violations.push(format!("{iv}: zero mass"));
                    }
                    semistables.push((iv, p));
                }
            }
            Err(e) => a.violations.push(format!("{iv}: {e}")),
        }
    }

    let mut b = AxiomCheck {
        axiom: "(b) P(phi + 1) = P(phi)[1] at class level",
        tested: 0,
        violations: Vec::new(),
        note: Some("shift tracked as (class negation, phase + 1)".into()),
    };
    for (iv, p) in &semistables {
        b.tested += 1;
        let class: Vec<i64> = iv.class(n).iter().map(|c| -c).collect();
        let z = sigma.charge_of_class(&class);
        let expected = sigma.charge_interval(*iv);
        let negated = Complex::new(-expected.re.clone(), -expected.im.clone());
        if z != negated {
            b.violations.push(format!("{iv}[1]: charge is not -Z({iv})"));
            continue;
        }
        // -Z has phase phi - 1 in (-1, 0]; phi + 1 is the same ray two units up
        match Phase::of_any(&z) {
            Ok(q) if q == p.shifted(1).shifted(-2) => {}
            _ => b.violations.push(format!("{iv}[1]: phase is not phi + 1")),
        }
    }

    let mut c = AxiomCheck {
        axiom: "(c) Hom(A1, A2) = 0 for semistable phi(A1) > phi(A2)",
        tested: 0,
        violations: Vec::new(),
        note: None,
    };
    for (x, px) in &semistables {
        for (y, py) in &semistables {
            if px > py {
                c.tested += 1;
                if hom(*x, *y) {
                    c.violations.push(format!("Hom({x}, {y}) != 0 with phase {px} > {py}"));
                }
            }
        }
    }

    let mut d = AxiomCheck {
        axiom: "(d) HN filtration exists and is unique",
        tested: 0,
        violations: Vec::new(),
        note: Some(if n <= BRUTE_FORCE_MAX_N {
            "compared with exhaustive filtration search".into()
        } else {
            "structural checks only (n > 5)".into()
        }),
    };
    for &iv in &intervals {
        d.tested += 1;
        let greedy = hn_interval(sigma, iv);
        if !greedy.iter().all(|(f, _)| interval_semistable(sigma, *f)) {
            d.violations.push(format!("{iv}: HN factor not semistable"));
        }
        if !greedy.windows(2).all(|w| w[0].1 > w[1].1) {
            d.violations.push(format!("{iv}: HN phases not strictly decreasing"));
        }
        let mut sum = vec![0i64; n];
        for (f, _) in &greedy {
            for (s, x) in sum.iter_mut().zip(f.class(n)) {
                *s += x;
            }
        }
        if sum != iv.class(n) {
            d.violations.push(format!("{iv}: factor classes do not sum to the class"));
        }
        if n <= BRUTE_FORCE_MAX_N {
            let all = brute_force_hn(sigma, iv);
            let ours: Vec<Interval> = greedy.iter().map(|g| g.0).collect();
            match all.as_slice() {
                [only] if only.iter().map(|g| g.0).collect::<Vec<_>>() == ours => {}
                [_] => d.violations.push(format!("{iv}: greedy HN differs from the unique one")),
                other => d
                    .violations
                    .push(format!("{iv}: {} HN filtrations found", other.len())),
            }
        }
    }

    let finite = AxiomCheck {
        axiom: "local finiteness",
        tested: 1,
        violations: Vec::new(),
        note: Some("automatic: the heart is of finite length".into()),
    };

    AxiomReport {
        n,
        checks: vec![a, b, c, d, finite],
    }
}
