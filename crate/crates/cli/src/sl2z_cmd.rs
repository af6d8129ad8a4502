use serde_json::json;
use stabkit::sl2z::{self, format_matrix, matrix_of, parse_matrix, syllable_bound, ChargeVector, GeneratorWord};

use crate::fail::{Failure, Outcome};
use crate::render::{int_list, json_text};
use crate::Format;

pub fn eval(word: &str, charge: Option<&str>, format: Format) -> Outcome<String> {
    let w: GeneratorWord = word.parse()?;
    let m = matrix_of(&w)?;
    let image = match charge {
        Some(c) => match int_list("charge", c)?.as_slice() {
            [r, d] => {
                let v = ChargeVector::new(*r, *d);
                Some((v, w.act(v)?))
            }
            other => return Err(Failure::parse(format!("--charge needs \"r,d\", got {} entries", other.len()))),
        },
        None => None,
    };
    let kernel = sl2z::kernel_witness(&w)?;
    Ok(match format {
        Format::Json => json_text(&json!({
            "word": w.to_string(),
            "letters": w.len(),
            "matrix": m,
            "kernel_witness": kernel,
            "charge": image.map(|(v, _)| [v.r, v.d]),
            "image": image.map(|(_, u)| [u.r, u.d]),
        })),
        _ => {
            let mut out = format!("word: {w}\nmatrix: {}\n", format_matrix(&m));
            if let Some((v, u)) = image {
                out.push_str(&format!("{v} -> {u}\n"));
            }
            if kernel {
                out.push_str("matrix is the identity (kernel witness)\n");
            }
            out
        }
    })
}

pub fn decompose(matrix: &str, format: Format) -> Outcome<String> {
    let m = parse_matrix(matrix)?;
    let w = sl2z::decompose(&m)?;
    let bound = syllable_bound(&m);
    Ok(match format {
        Format::Json => json_text(&json!({
            "matrix": m,
            "word": w.to_string(),
            "letters": w.len(),
            "syllables": w.syllables(),
            "syllable_bound": bound,
        })),
        _ => format!(
            "matrix: {}\nword: {w}\nletters: {}  syllables: {} (bound {bound})\n",
            format_matrix(&m),
            w.len(),
            w.syllables()
        ),
    })
}
