use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde_json::json;
use stabkit::flop::{classify_conifold, AdeConfig, AdeType, Region, SlicePoint, TodaMembership};
use stabkit::Rational;

use crate::fail::{Failure, Outcome};
use crate::render::{json_text, q, rational_arg, rational_list};
use crate::{Cli, Format};

/// First line of every complement-grid CSV.
pub const GRID_CSV_VERSION: &str = "# stabkit complement-grid v1";
pub const GRID_CSV_HEADER: [&str; 4] = ["beta", "omega", "in_complement", "region"];

fn load_config(cli: &Cli, kind: Option<&str>) -> Outcome<AdeConfig> {
    match (kind, &cli.config) {
        (Some(_), Some(_)) => Err(Failure::parse("give either --type or --config, not both")),
        (Some(t), None) => {
            let t: AdeType = t.parse()?;
            Ok(AdeConfig::new(t)?)
        }
        (None, Some(_)) => {
            let (path, text) = crate::require_config(cli)?;
            AdeConfig::from_json_str(&text).map_err(|e| Failure::json(&path, e))
        }
        (None, None) => Err(Failure::parse("roots needs --type <A2|D4|E8|...> or --config <path>")),
    }
}

pub fn roots(cli: &Cli, kind: Option<&str>, format: Format) -> Outcome<String> {
    let c = load_config(cli, kind)?;
    let label = c.kind().map(|k| k.to_string()).unwrap_or_else(|| "cartan".into());
    Ok(match format {
        Format::Json => json_text(&json!({
            "type": label,
            "rank": c.rank(),
            "cartan": c.lattice().gram(),
            "count": c.roots().len(),
            "roots": c.roots().iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = format!("{label}: {} roots, rank {}\n", c.roots().len(), c.rank());
            for r in c.roots() {
                let parts: Vec<String> = r.0.iter().map(|x| x.to_string()).collect();
                writeln!(out, "({})", parts.join(", ")).expect("string write");
            }
            out
        }
    })
}

struct GridCell {
    beta: Rational,
    omega: Rational,
    in_complement: bool,
    region: Region,
}

fn grid(min: &Rational, max: &Rational, steps: u32) -> Outcome<Vec<GridCell>> {
    if min >= max || steps == 0 {
        return Err(Failure::contract("grid needs min < max and steps >= 1"));
    }
    let h = (max - min) / Rational::from_integer(steps.into());
    let at = |i: u32| min + &h * Rational::from_integer(i.into());
    let a1 = AdeConfig::new(AdeType::A(1))?;
    let rows: Vec<stabkit::Result<Vec<GridCell>>> = (0..steps)
        .into_par_iter()
        .map(|i| {
            (0..steps)
                .map(|j| {
                    let p = SlicePoint::rank_one(at(i), at(j));
                    let d = classify_conifold(&p)?;
                    let t = a1.in_toda_complement(&p)?;
                    Ok(GridCell {
                        beta: p.beta[0].clone(),
                        omega: p.omega[0].clone(),
                        in_complement: t.is_in(),
                        region: d.region,
                    })
                })
                .collect()
        })
        .collect();
    let mut cells = Vec::new();
    for r in rows {
        cells.extend(r?);
    }
    Ok(cells)
}

fn grid_csv(cells: &[GridCell]) -> Outcome<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::contract(e.to_string());
    w.write_record(GRID_CSV_HEADER).map_err(io)?;
    for c in cells {
        w.write_record([
            q(&c.beta),
            q(&c.omega),
            c.in_complement.to_string(),
            c.region.to_string(),
        ])
        .map_err(io)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| Failure::contract(e.to_string()))?).expect("ascii");
    Ok(format!("{GRID_CSV_VERSION}\n{body}"))
}

fn grid_svg(cells: &[GridCell], min: &Rational, max: &Rational, steps: u32) -> String {
    let size = 600.0;
    let cell = size / steps as f64;
    let (lo, hi) = (stabkit::scalar::rational_to_f64(min), stabkit::scalar::rational_to_f64(max));
    let x = |v: &Rational| (stabkit::scalar::rational_to_f64(v) - lo) / (hi - lo) * size;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="-40 -10 {w} {h}">"#,
        w = size + 60.0,
        h = size + 50.0
    )
    .unwrap();
    writeln!(s, "<title>conifold chambers, beta horizontal, omega vertical</title>").unwrap();
    for c in cells {
        let fill = match c.region {
            Region::AmpleConeU => "#cfe3f7",
            Region::FlopSide => "#f7e0c6",
            Region::PerverseFace(_) => "#6a9f58",
            Region::Excluded => "#ffffff",
        };
        // omega grows upwards
        writeln!(
            s,
            r#"<rect x="{:.3}" y="{:.3}" width="{cell:.3}" height="{cell:.3}" fill="{fill}"/>"#,
            x(&c.beta),
            size - x(&c.omega) - cell
        )
        .unwrap();
    }
    for c in cells.iter().filter(|c| c.region == Region::Excluded) {
        writeln!(
            s,
            r##"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#c0392b"><title>excluded ({}, {})</title></circle>"##,
            x(&c.beta) + cell / 2.0,
            size - x(&c.omega) - cell / 2.0,
            (cell * 0.9).max(2.5),
            q(&c.beta),
            q(&c.omega)
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<rect x="0" y="0" width="{size}" height="{size}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    writeln!(s, r#"<text x="{}" y="{}" font-size="14">beta</text>"#, size / 2.0, size + 30.0).unwrap();
    writeln!(s, r#"<text x="-35" y="{}" font-size="14">omega</text>"#, size / 2.0).unwrap();
    writeln!(s, r#"<text x="0" y="{}" font-size="11">{}</text>"#, size + 15.0, q(min)).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" font-size="11">{}</text>"#, size - 10.0, size + 15.0, q(max)).unwrap();
    s.push_str("</svg>\n");
    s
}

pub fn complement_grid(min: &str, max: &str, steps: u32, svg: Option<&Path>, format: Format) -> Outcome<String> {
    let (lo, hi) = (rational_arg("min", min)?, rational_arg("max", max)?);
    let cells = grid(&lo, &hi, steps)?;
    if let Some(p) = svg {
        std::fs::write(p, grid_svg(&cells, &lo, &hi, steps))
            .map_err(|e| Failure::contract(format!("cannot write {}: {e}", p.display())))?;
    }
    match format {
        Format::Svg => Ok(grid_svg(&cells, &lo, &hi, steps)),
        _ => grid_csv(&cells),
    }
}

pub fn chamber(beta: &str, omega: &str, kind: Option<&str>, format: Format) -> Outcome<String> {
    let (b, w) = (rational_list("beta", beta)?, rational_list("omega", omega)?);
    let p = SlicePoint::new(b, w)?;
    let kind: AdeType = match kind {
        Some(t) => t.parse()?,
        None => AdeType::A(p.rank()),
    };
    let config = AdeConfig::new(kind)?;
    let toda = config.in_toda_complement(&p)?;
    if p.rank() == 1 {
        let d = classify_conifold(&p)?;
        return Ok(match format {
            Format::Json => json_text(&json!({
                "region": d.region.to_string(),
                "twist": d.twist,
                "in_complement": toda.is_in(),
            })),
            _ => format!("{d}\n"),
        });
    }
    // only complement membership is available beyond the conifold
    let witness = match &toda {
        TodaMembership::Excluded { root } => Some(root.0.clone()),
        TodaMembership::InComplement => None,
    };
    let note = "chamber regions beyond rank one (including higher-codimension faces) are not classified";
    Ok(match format {
        Format::Json => json_text(&json!({
            "type": kind.to_string(),
            "in_complement": toda.is_in(),
            "witness_root": witness,
            "region": null,
            "note": note,
        })),
        _ => {
            let head = match witness {
                Some(r) => format!("Excluded (root {r:?})"),
                None => "InComplement".into(),
            };
            format!("{head}\n{kind}: {note}\n")
        }
    })
}
