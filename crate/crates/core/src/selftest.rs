//! Seeded invariant suite across all modules.
//!
//! Each section draws its inputs from its own ChaCha stream derived from the
//! seed before any parallel work starts, and parallel results are collected
//! in input order, so the report is byte-identical for a given seed whatever
//! the size of the rayon pool.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::flop::{classify_conifold, conifold_sequences_check, AdeConfig, AdeType, Region, SlicePoint};
use crate::heart::{
    check_axioms, distance, hn_filtration, object_term, perturb, phase_gap_budget,
    random_object, random_stability, IntervalObject,
};
use crate::k3::{K3Model, MukaiVector, PeriodClass, PeriodPoint};
use crate::lattice::{IntLattice, LatticeVector, ReflectionKind};
use crate::scalar::rat;
use crate::sl2z::{decompose, matrix_of, mat_mul, GeneratorWord, Token};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SelfCheck {
    fn new(name: &str) -> Self {
        SelfCheck {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<SelfCheck>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(SelfCheck::passed)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed={}", self.seed)?;
        for c in &self.checks {
            let s = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "[{s}] {} ({} cases)", c.name, c.cases)?;
            for msg in c.failures.iter().filter(|m| !m.is_empty()) {
                writeln!(f, "    {msg}")?;
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        writeln!(f, "summary: {} checks, {failed} failed", self.checks.len())
    }
}

fn stream(seed: u64, section: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(section);
    rng
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, amp: i64) -> LatticeVector {
    LatticeVector((0..n).map(|_| rng.gen_range(-amp..=amp)).collect())
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let k = rng.gen_range(-1..=1);
        // column i += k * column j keeps det = 1
        for row in m.iter_mut() {
            row[i] += k * row[j];
        }
    }
    m
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> IntLattice {
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-3..=3);
            g[i][j] = x;
            g[j][i] = x;
        }
    }
    IntLattice::new(g).expect("symmetric")
}

/// Rank-`rho` even NS grams of signature `(1, rho - 1)`.
pub fn test_ns_grams() -> Vec<Vec<Vec<i64>>> {
    vec![
        vec![vec![2]],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![2, 0, 0], vec![0, -2, 0], vec![0, 0, -2]],
        vec![
            vec![4, 1, 0, 0],
            vec![1, -2, 0, 0],
            vec![0, 0, -2, 1],
            vec![0, 0, 1, -2],
        ],
    ]
}

fn lattice_section(seed: u64) -> Vec<SelfCheck> {
    let mut rng = stream(seed, 1);
    let mut bil = SelfCheck::new("lattice: pair symmetric and bilinear");
    let mut refl = SelfCheck::new("lattice: reflections are isometric involutions");
    let mut sig = SelfCheck::new("lattice: signature invariant under SL(n,Z) change of basis");
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let l = random_symmetric(&mut rng, n);
        let (u, v, w) = (
            random_vec(&mut rng, n, 9),
            random_vec(&mut rng, n, 9),
            random_vec(&mut rng, n, 9),
        );
        let (a, b) = (rng.gen_range(-5..=5), rng.gen_range(-5..=5));
        let comb = LatticeVector(u.0.iter().zip(&v.0).map(|(x, y)| a * x + b * y).collect());
        let ok = l.pair(&u, &v) == l.pair(&v, &u)
            && l.pair(&comb, &w).unwrap() == a * l.pair(&u, &w).unwrap() + b * l.pair(&v, &w).unwrap();
        bil.record(ok, || format!("gram {:?}", l.gram()));

        let p = random_unimodular(&mut rng, n);
        let lp = l.change_basis(&p).unwrap();
        let s = l.signature();
        sig.record(lp.signature() == s && s.0 + s.1 + s.2 == n, || {
            format!("gram {:?} basis {:?}", l.gram(), p)
        });
    }
    let mukai = K3Model::new(vec![vec![2]], None).unwrap();
    let deltas = mukai.mukai_lattice().enumerate_norm(-2, 2).unwrap();
    let a2 = AdeConfig::new(AdeType::A(2)).unwrap();
    for _ in 0..200 {
        let (lat, d, kind) = if rng.gen_bool(0.5) {
            let d = deltas[rng.gen_range(0..deltas.len())].clone();
            (mukai.mukai_lattice(), d, ReflectionKind::Spherical)
        } else {
            let d = a2.roots()[rng.gen_range(0..a2.roots().len())].clone();
            (a2.lattice(), d, ReflectionKind::Root)
        };
        let n = lat.rank();
        let (v, w) = (random_vec(&mut rng, n, 9), random_vec(&mut rng, n, 9));
        let rv = lat.reflect(&d, &v, kind).unwrap();
        let rw = lat.reflect(&d, &w, kind).unwrap();
        let ok = lat.pair(&rv, &rw) == lat.pair(&v, &w) && lat.reflect(&d, &rv, kind).unwrap() == v;
        refl.record(ok, || format!("delta {:?} v {:?}", d.0, v.0));
    }
    vec![bil, refl, sig]
}

fn heart_section(seed: u64) -> Vec<SelfCheck> {
    let mut rng = stream(seed, 2);
    let sigmas: Vec<_> = (0..60)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            random_stability(&mut rng, n)
        })
        .collect();
    let mut axioms = SelfCheck::new("heart: stability axioms (a)-(d)");
    let results: Vec<(bool, String)> = sigmas
        .par_iter()
        .map(|s| {
            let r = check_axioms(s);
            (r.all_passed(), r.to_string())
        })
        .collect();
    for (ok, text) in results {
        axioms.record(ok, || text);
    }

    let mut metric = SelfCheck::new("heart: metric symmetric, d(s,s)=0, triangle inequality");
    let triples: Vec<_> = (0..100)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            (
                random_stability(&mut rng, n),
                random_stability(&mut rng, n),
                random_stability(&mut rng, n),
            )
        })
        .collect();
    let res: Vec<bool> = triples
        .par_iter()
        .map(|(a, b, c)| {
            let ab = distance(a, b).unwrap();
            let ba = distance(b, a).unwrap();
            let bc = distance(b, c).unwrap();
            let ac = distance(a, c).unwrap();
            let aa = distance(a, a).unwrap();
            ab.value == ba.value
                && aa.value == 0.0
                && ac.value <= ab.value + bc.value + ab.enclosure + bc.enclosure + ac.enclosure + 1e-9
        })
        .collect();
    for ok in res {
        metric.record(ok, || "metric axiom".into());
    }

    let mut sums = SelfCheck::new("heart: direct sums never exceed the sup over intervals");
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        let (a, b) = (random_stability(&mut rng, n), random_stability(&mut rng, n));
        let e = random_object(&mut rng, a.heart(), 4);
        let d = distance(&a, &b).unwrap();
        let (t, err) = object_term(&a, &b, &e).unwrap();
        sums.record(t <= d.value + d.enclosure + err, || format!("object {e}"));
    }

    let mut deform = SelfCheck::new("heart: HN classes locally constant below the phase gap");
    let mut done = 0;
    while done < 40 {
        let n = rng.gen_range(1..=5);
        let s = random_stability(&mut rng, n);
        let Some(budget) = phase_gap_budget(&s) else {
            continue;
        };
        let Ok(t) = perturb(&mut rng, &s, budget.epsilon) else {
            continue;
        };
        done += 1;
        let ok = s.heart().intervals().into_iter().all(|iv| {
            let e = IntervalObject::single(s.heart(), iv).unwrap();
            hn_filtration(&s, &e).unwrap().factor_classes() == hn_filtration(&t, &e).unwrap().factor_classes()
        });
        deform.record(ok, || format!("epsilon {}", budget.epsilon));
    }

    let mut seesaw = SelfCheck::new("heart: seesaw on 0 -> M[c,b] -> M[a,b] -> M[a,c-1] -> 0");
    for s in &sigmas {
        for iv in s.heart().intervals() {
            let p = s.phase_interval(iv);
            for sub in iv.proper_subobjects() {
                let q = s.phase_interval(iv.quotient_by(sub.a));
                let ps = s.phase_interval(sub);
                let (lo, hi) = if ps <= q { (&ps, &q) } else { (&q, &ps) };
                seesaw.record(lo <= &p && &p <= hi, || format!("{iv} split at {}", sub.a));
            }
        }
    }
    vec![axioms, metric, sums, deform, seesaw]
}

fn k3_section(seed: u64) -> Vec<SelfCheck> {
    let mut rng = stream(seed, 3);
    let mut models = SelfCheck::new("k3: N(X) even of signature (2, rho)");
    let mut twist = SelfCheck::new("k3: spherical twists preserve the Mukai pairing");
    let mut conj = SelfCheck::new("k3: conjugation swaps P+_0 and P-_0");
    for g in test_ns_grams() {
        let rho = g.len();
        let m = K3Model::new(g, None).unwrap();
        let l = m.mukai_lattice();
        models.record(l.is_even() && l.signature() == (2, rho, 0), || format!("rho {rho}"));
        let deltas = m.delta_set(1).unwrap();
        for _ in 0..50 {
            let s = &deltas[rng.gen_range(0..deltas.len())];
            let v = MukaiVector::from_lattice(&random_vec(&mut rng, rho + 2, 6));
            let w = MukaiVector::from_lattice(&random_vec(&mut rng, rho + 2, 6));
            let tv = m.spherical_twist_class(s, &v).unwrap();
            let tw = m.spherical_twist_class(s, &w).unwrap();
            twist.record(m.pair(&tv, &tw) == m.pair(&v, &w), || format!("s {s}"));
        }
    }
    let m = K3Model::new(vec![vec![2]], None).unwrap();
    let mut boundary = SelfCheck::new("k3: exp(i t h) is OnWall iff t = 1, else InP0Plus");
    for _ in 0..20 {
        let t = rat(rng.gen_range(1..=40), rng.gen_range(1..=9));
        let p = PeriodPoint::exp_i(&m, std::slice::from_ref(&t)).unwrap();
        let c = m.classify_period(&p, None).unwrap();
        let expect_wall = t == rat(1, 1);
        let ok = match &c.class {
            PeriodClass::OnWall(_) => expect_wall,
            PeriodClass::InP0Plus => !expect_wall,
            _ => false,
        };
        boundary.record(ok, || format!("t = {t}"));
        if matches!(c.class, PeriodClass::InP0Plus) {
            let cc = m.classify_period(&p.conjugate(), None).unwrap();
            conj.record(cc.class == PeriodClass::InP0Minus, || format!("t = {t}"));
        }
    }
    let p = PeriodPoint::exp_i(&m, &[rat(1, 1)]).unwrap();
    boundary.record(
        matches!(m.classify_period(&p, None).unwrap().class, PeriodClass::OnWall(_)),
        || "t = 1".into(),
    );
    vec![models, twist, conj, boundary]
}

fn flop_section(seed: u64) -> Vec<SelfCheck> {
    let mut rng = stream(seed, 4);
    let mut counts = SelfCheck::new("flop: root counts and Weyl closure");
    for kind in [AdeType::A(1), AdeType::A(2), AdeType::A(5), AdeType::D(4), AdeType::D(6), AdeType::E6, AdeType::E7, AdeType::E8] {
        let c = AdeConfig::new(kind).unwrap();
        let roots = c.roots();
        let closed = roots.iter().all(|r| roots.binary_search(&r.neg()).is_ok())
            && roots.par_iter().all(|a| {
                roots
                    .iter()
                    .all(|b| roots.binary_search(&c.reflect(a, b).unwrap()).is_ok())
            });
        counts.record(roots.len() == kind.root_count() && closed, || format!("{kind}"));
    }
    let mut grid = SelfCheck::new("flop: conifold excluded set equals the A1 complement");
    let a1 = AdeConfig::new(AdeType::A(1)).unwrap();
    for _ in 0..400 {
        let b = rat(rng.gen_range(-40..=40), rng.gen_range(1..=4));
        let w = if rng.gen_bool(0.3) { rat(0, 1) } else { rat(rng.gen_range(-20..=20), rng.gen_range(1..=4)) };
        let p = SlicePoint::rank_one(b, w);
        let d = classify_conifold(&p).unwrap();
        let t = a1.in_toda_complement(&p).unwrap();
        let shifted = classify_conifold(&p.twisted(1)).unwrap();
        let region_shift = match (d.region, shifted.region) {
            (Region::PerverseFace(k), Region::PerverseFace(k2)) => k2 == k + 1,
            (x, y) => x == y,
        };
        let ok = (d.region == Region::Excluded) == !t.is_in() && region_shift && shifted.twist == d.twist + 1;
        grid.record(ok, || format!("{p:?}"));
    }
    let mut seqs = SelfCheck::new("flop: conifold sequences and O_y stability");
    let r = conifold_sequences_check();
    seqs.record(r.all_passed(), || r.to_string());
    vec![counts, grid, seqs]
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> GeneratorWord {
    let len = rng.gen_range(0..=max_len);
    GeneratorWord((0..len).map(|_| Token::ALL[rng.gen_range(0..Token::ALL.len())]).collect())
}

fn sl2z_section(seed: u64) -> Vec<SelfCheck> {
    let mut rng = stream(seed, 5);
    let mut hom = SelfCheck::new("sl2z: matrix_of is a monoid homomorphism");
    let mut round = SelfCheck::new("sl2z: matrix_of(decompose(M)) = M");
    for _ in 0..300 {
        let (a, b) = (random_word(&mut rng, 30), random_word(&mut rng, 30));
        let lhs = matrix_of(&a.concat(&b)).unwrap();
        let rhs = mat_mul(&matrix_of(&a).unwrap(), &matrix_of(&b).unwrap()).unwrap();
        hom.record(lhs == rhs, || format!("{a} | {b}"));
        let m = matrix_of(&a).unwrap();
        round.record(matrix_of(&decompose(&m).unwrap()).unwrap() == m, || format!("{a}"));
    }
    let mut rel = SelfCheck::new("sl2z: F^4 = I, (FT)^6 = +-I, [Shift,Shift] in kernel");
    let f4 = matrix_of(&"F^4".parse().unwrap()).unwrap();
    let ft6 = matrix_of(&"F,T,F,T,F,T,F,T,F,T,F,T".parse().unwrap()).unwrap();
    let ss = matrix_of(&"Shift,Shift".parse().unwrap()).unwrap();
    rel.record(f4 == crate::sl2z::IDENTITY, || "F^4".into());
    rel.record(ft6 == crate::sl2z::IDENTITY || ft6 == Token::Shift.matrix(), || "(FT)^6".into());
    rel.record(ss == crate::sl2z::IDENTITY, || "Shift^2".into());
    vec![hom, round, rel]
}

/// Runs the whole suite on the current rayon pool.
pub fn run(seed: u64) -> SelftestReport {
    let mut checks = Vec::new();
    checks.extend(lattice_section(seed));
    checks.extend(heart_section(seed));
    checks.extend(k3_section(seed));
    checks.extend(flop_section(seed));
    checks.extend(sl2z_section(seed));
    SelftestReport { seed, checks }
}
