use std::path::Path;

use serde_json::json;
use stabkit::k3::{K3Model, MukaiVector, PeriodClass, PeriodPoint};
use stabkit::{ExactPeriod, Rational};

use crate::fail::{Failure, Outcome};
use crate::render::{json_text, q, rational_list};
use crate::{read_input, require_config, Cli, Format};

fn load_model(cli: &Cli) -> Outcome<K3Model> {
    let (path, text) = require_config(cli)?;
    K3Model::from_json_str(&text).map_err(|e| Failure::json(&path, e))
}

fn vec_q(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(q).collect();
    format!("({})", parts.join(", "))
}

fn load_period(
    model: &K3Model,
    period: Option<&Path>,
    omega: Option<&str>,
    beta: Option<&str>,
) -> Outcome<ExactPeriod> {
    match (period, omega) {
        (Some(_), Some(_)) => Err(Failure::parse("give either --period or --omega, not both")),
        (Some(p), None) => {
            if beta.is_some() {
                return Err(Failure::parse("--beta only applies with --omega"));
            }
            let name = p.display().to_string();
            let value: serde_json::Value =
                serde_json::from_str(&read_input(p)?).map_err(|e| Failure::json_syntax(&name, &e))?;
            let point = PeriodPoint::from_json_value(value)?;
            if point.re.len() != model.rho() + 2 {
                return Err(stabkit::Error::Dimension {
                    expected: model.rho() + 2,
                    got: point.re.len(),
                }
                .into());
            }
            Ok(point)
        }
        (None, Some(w)) => {
            let omega = rational_list("omega", w)?;
            let beta = match beta {
                Some(b) => rational_list("beta", b)?,
                None => vec![Rational::from_integer(0.into()); omega.len()],
            };
            for v in [&omega, &beta] {
                if v.len() != model.rho() {
                    return Err(stabkit::Error::Dimension {
                        expected: model.rho(),
                        got: v.len(),
                    }
                    .into());
                }
            }
            Ok(PeriodPoint::exp_b_field(model, &beta, &omega)?)
        }
        (None, None) => Err(Failure::parse("k3 classify needs --period <path> or --omega <coords>")),
    }
}

pub fn classify(
    cli: &Cli,
    period: Option<&Path>,
    omega: Option<&str>,
    beta: Option<&str>,
    wall_box: Option<i64>,
    format: Format,
) -> Outcome<String> {
    let model = load_model(cli)?;
    let p = load_period(&model, period, omega, beta)?;
    let c = model.classify_period(&p, wall_box)?;
    let g = &c.plane_gram;
    let walls = match &c.class {
        PeriodClass::OnWall(w) => w.clone(),
        _ => Vec::new(),
    };
    if format == Format::Svg {
        let b = c.box_used.or(wall_box).unwrap_or(2);
        return charge_svg(&model, &p, &model.delta_set(b)?, &walls);
    }
    if format == Format::Json {
        return Ok(json_text(&json!({
            "model": model.to_json(),
            "period": p.to_json(),
            "class": c.class.label(),
            "plane_gram": [[q(&g[0][0]), q(&g[0][1])], [q(&g[1][0]), q(&g[1][1])]],
            "walls": walls,
            "witness": match &c.class {
                PeriodClass::NotPositive { witness } => Some(witness.iter().map(q).collect::<Vec<_>>()),
                _ => None,
            },
            "required_box": c.required_box,
            "box_used": c.box_used,
            "complete": c.complete,
        })));
    }
    let mut out = format!(
        "period: re = {}  im = {}\nplane gram: [[{}, {}], [{}, {}]]\nclass: {}\n",
        vec_q(&p.re),
        vec_q(&p.im),
        q(&g[0][0]),
        q(&g[0][1]),
        q(&g[1][0]),
        q(&g[1][1]),
        c.class.label()
    );
    match &c.class {
        PeriodClass::OnWall(w) => {
            out.push_str(&format!("walls ({}):\n", w.len()));
            for d in w {
                out.push_str(&format!("  {d}\n"));
            }
        }
        PeriodClass::NotPositive { witness } => {
            out.push_str(&format!("non-positive direction: {}\n", vec_q(witness)));
        }
        _ => out.push_str("walls: none\n"),
    }
    if let (Some(req), Some(used)) = (c.required_box, c.box_used) {
        out.push_str(&format!(
            "wall scan box: {used} (proven bound {req}{})\n",
            if c.complete { ", complete" } else { ", INCOMPLETE" }
        ));
    }
    Ok(out)
}

/// Charges `(Omega, delta)` of the (-2)-classes in a box, as points of the
/// complex plane; wall classes land on the origin.
fn charge_svg(model: &K3Model, p: &ExactPeriod, deltas: &[MukaiVector], walls: &[MukaiVector]) -> Outcome<String> {
    let to_f = stabkit::scalar::rational_to_f64;
    let mut pts = Vec::with_capacity(deltas.len());
    for d in deltas {
        let (x, y) = p.charge(model, d)?;
        pts.push((to_f(&x), to_f(&y), walls.contains(d), d));
    }
    let r = pts.iter().fold(1.0f64, |m, &(x, y, ..)| m.max(x.abs()).max(y.abs())) * 1.05;
    let size = 600.0;
    let at = |v: f64| (v + r) / (2.0 * r) * size;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{w}\" viewBox=\"0 0 {w} {w}\">\n\
         <title>charges of (-2)-classes: Re vs Im of (Omega, delta)</title>\n\
         <line x1=\"0\" y1=\"{h}\" x2=\"{w}\" y2=\"{h}\" stroke=\"#999\"/>\n\
         <line x1=\"{h}\" y1=\"0\" x2=\"{h}\" y2=\"{w}\" stroke=\"#999\"/>\n",
        w = size,
        h = size / 2.0
    );
    for (x, y, wall, d) in &pts {
        let (fill, rad) = if *wall { ("#c0392b", 6.0) } else { ("#2c6fbb", 3.0) };
        s.push_str(&format!(
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{rad}\" fill=\"{fill}\"><title>{d}</title></circle>\n",
            at(*x),
            size - at(*y)
        ));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn delta(cli: &Cli, bound: i64, format: Format) -> Outcome<String> {
    let model = load_model(cli)?;
    let deltas = model.delta_set(bound)?;
    Ok(match format {
        Format::Json => json_text(&json!({ "box": bound, "count": deltas.len(), "classes": deltas })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["r".to_string()];
            header.extend((1..=model.rho()).map(|i| format!("D_{i}")));
            header.push("s".into());
            w.write_record(&header).map_err(|e| Failure::contract(e.to_string()))?;
            for d in &deltas {
                w.write_record(d.to_lattice().0.iter().map(|x| x.to_string()))
                    .map_err(|e| Failure::contract(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::contract(e.to_string()))?).expect("ascii")
        }
        _ => {
            let mut out = format!("{} (-2)-classes with |coordinates| <= {bound}\n", deltas.len());
            for d in &deltas {
                out.push_str(&format!("{d}\n"));
            }
            out
        }
    })
}
