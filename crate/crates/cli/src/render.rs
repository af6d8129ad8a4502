//! Number formatting: exact values as rationals, approximations with "~"
//! and an error bound.

use num_complex::Complex;
use stabkit::scalar::{format_rational, parse_rational};
use stabkit::Rational;

use crate::fail::{Failure, Outcome};

pub fn q(r: &Rational) -> String {
    format_rational(r)
}

/// `a + b i`, or `a - b i` for negative imaginary part.
pub fn complex(z: &Complex<Rational>) -> String {
    let zero = Rational::from_integer(0.into());
    if z.im < zero {
        format!("{} - {} i", q(&z.re), q(&-z.im.clone()))
    } else {
        format!("{} + {} i", q(&z.re), q(&z.im))
    }
}

pub fn approx(x: f64, err: f64, digits: usize) -> String {
    format!("~{x:.digits$} (±{err:.1e})")
}

pub fn class(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn rational_arg(name: &str, s: &str) -> Outcome<Rational> {
    parse_rational(s.trim()).map_err(|e| Failure::parse(format!("--{name}: {e}")))
}

pub fn rational_list(name: &str, s: &str) -> Outcome<Vec<Rational>> {
    s.split(',').map(|x| rational_arg(name, x)).collect()
}

pub fn int_list(name: &str, s: &str) -> Outcome<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Failure::parse(format!("--{name}: not an integer: {x:?}")))
        })
        .collect()
}

pub fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
