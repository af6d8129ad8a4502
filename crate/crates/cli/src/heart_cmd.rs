use std::path::Path;

use serde_json::json;
use stabkit::heart::{check_axioms, distance, hn_filtration, HnDecomposition, Interval, IntervalObject};
use stabkit::{ExactStability, Rational};

use crate::fail::{Failure, Outcome};
use crate::render::{self, approx, class, complex, json_text};
use crate::{read_input, require_config, Cli, Format};

fn load_sigma(path: &str, text: &str) -> Outcome<ExactStability> {
    ExactStability::from_json_str(text).map_err(|e| Failure::json(path, e))
}

/// `"1-2,3"` -> M[1,2] + M[3,3].
fn parse_object(sigma: &ExactStability, s: &str) -> Outcome<IntervalObject> {
    let heart = sigma.heart();
    let mut ivs = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = match part.split_once('-') {
            Some((a, b)) => (a, b),
            None => (part, part),
        };
        let num = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Failure::parse(format!("--object: bad vertex {x:?} in {part:?}")))
        };
        ivs.push(heart.interval(num(a)?, num(b)?)?);
    }
    if ivs.is_empty() {
        return Err(Failure::parse("--object: no intervals given"));
    }
    Ok(IntervalObject::new(heart, ivs)?)
}

fn sigma_line(sigma: &ExactStability) -> String {
    let parts: Vec<String> = sigma
        .z_simple()
        .iter()
        .enumerate()
        .map(|(i, z)| format!("Z(S_{}) = {}", i + 1, complex(z)))
        .collect();
    format!("sigma: {}\n", parts.join(", "))
}

fn hn_text(sigma: &ExactStability, e: &IntervalObject, hn: &HnDecomposition<Rational>, digits: usize) -> String {
    let mut out = format!(
        "object {e}  class {}  Z = {}\n",
        class(&e.class()),
        complex(&sigma.central_charge(e).expect("object on this heart"))
    );
    for (k, f) in hn.factors.iter().enumerate() {
        out.push_str(&format!(
            "  F{} {}  class {}  Z = {}  phase {}\n",
            k + 1,
            f.object,
            class(&f.object.class()),
            complex(&f.charge),
            f.phase.render(digits)
        ));
    }
    let m = hn.mass();
    out.push_str(&format!(
        "  phi+ = {}  phi- = {}\n  mass = {} = {}\n  semistable: {}\n",
        hn.phi_plus().render(digits),
        hn.phi_minus().render(digits),
        m.symbolic().unwrap_or_default(),
        approx(m.approx, m.error, digits),
        if hn.factors.len() == 1 { "yes" } else { "no" }
    ));
    out
}

fn hn_json(sigma: &ExactStability, e: &IntervalObject, hn: &HnDecomposition<Rational>, digits: usize) -> serde_json::Value {
    let z = |c: &num_complex::Complex<Rational>| json!([render::q(&c.re), render::q(&c.im)]);
    let m = hn.mass();
    json!({
        "object": e.to_string(),
        "class": e.class(),
        "charge": z(&sigma.central_charge(e).expect("object on this heart")),
        "factors": hn.factors.iter().map(|f| json!({
            "object": f.object.to_string(),
            "class": f.object.class(),
            "charge": z(&f.charge),
            "phase": f.phase.render(digits),
            "phase_approx": f.phase.approx(),
        })).collect::<Vec<_>>(),
        "phi_plus": hn.phi_plus().render(digits),
        "phi_minus": hn.phi_minus().render(digits),
        "mass": {"exact": m.symbolic(), "approx": m.approx, "error": m.error},
    })
}

pub fn hn(cli: &Cli, object: Option<&str>, all: bool, format: Format) -> Outcome<String> {
    let (path, text) = require_config(cli)?;
    let sigma = load_sigma(&path, &text)?;
    let heart = sigma.heart();
    let objects: Vec<IntervalObject> = match (object, all) {
        (Some(_), true) => return Err(Failure::parse("--object and --all are exclusive")),
        (Some(s), false) => vec![parse_object(&sigma, s)?],
        (None, true) => heart
            .intervals()
            .into_iter()
            .map(|iv| IntervalObject::single(heart, iv))
            .collect::<stabkit::Result<_>>()?,
        (None, false) => vec![IntervalObject::single(heart, Interval { a: 1, b: heart.n() })?],
    };
    let mut reports = Vec::new();
    for e in &objects {
        reports.push((e, hn_filtration(&sigma, e)?));
    }
    Ok(match format {
        Format::Json => json_text(&json!({
            "sigma": sigma.to_json(),
            "objects": reports.iter().map(|(e, h)| hn_json(&sigma, e, h, cli.precision)).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = sigma_line(&sigma);
            for (e, h) in &reports {
                out.push_str(&hn_text(&sigma, e, h, cli.precision));
            }
            out
        }
    })
}

pub fn dist(cli: &Cli, with: &Path, format: Format) -> Outcome<String> {
    let (path, text) = require_config(cli)?;
    let a = load_sigma(&path, &text)?;
    let b = load_sigma(&with.display().to_string(), &read_input(with)?)?;
    let d = distance(&a, &b)?;
    Ok(match format {
        Format::Json => json_text(&json!({
            "distance": d.value,
            "enclosure": d.enclosure,
            "witness": d.witness.to_string(),
        })),
        _ => format!(
            "d = {}\nsupremum attained at {}\n",
            approx(d.value, d.enclosure, cli.precision),
            d.witness
        ),
    })
}

pub fn axioms(cli: &Cli, format: Format) -> Outcome<String> {
    let (path, text) = require_config(cli)?;
    let sigma = load_sigma(&path, &text)?;
    let report = check_axioms(&sigma);
    let out = match format {
        Format::Json => json_text(&json!({
            "n": report.n,
            "passed": report.all_passed(),
            "checks": report.checks.iter().map(|c| json!({
                "axiom": c.axiom,
                "tested": c.tested,
                "violations": c.violations,
                "note": c.note,
            })).collect::<Vec<_>>(),
        })),
        _ => report.to_string(),
    };
    if report.all_passed() {
        Ok(out)
    } else {
        print!("{out}");
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.axiom).collect();
        Err(Failure::contract(format!("axioms violated: {}", failed.join("; "))))
    }
}
