//! The SL(2,Z) image of the autoequivalence group of an elliptic curve.
//!
//! Autoequivalences act on `(rank, degree)` column vectors. Words are read
//! as compositions: `[A, B]` is `A o B`, so `B` acts first and
//! `matrix_of([A, B]) = M(A) M(B)`.
//!
//! Sign convention: the Fourier–Mukai transform acts as `(r, d) -> (-d, r)`;
//! the opposite convention conjugates every output by `diag(1, -1)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Mat2 = [[i64; 2]; 2];

pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    /// Fourier–Mukai transform.
    F,
    FInv,
    /// Tensor by the chosen degree-one line bundle.
    T,
    TInv,
    /// `[1]`.
    Shift,
}

impl Token {
    pub const ALL: [Token; 5] = [Token::F, Token::FInv, Token::T, Token::TInv, Token::Shift];

    pub fn matrix(self) -> Mat2 {
        match self {
            Token::F => [[0, -1], [1, 0]],
            Token::FInv => [[0, 1], [-1, 0]],
            Token::T => [[1, 0], [1, 1]],
            Token::TInv => [[1, 0], [-1, 1]],
            Token::Shift => [[-1, 0], [0, -1]],
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Token::F => "F",
            Token::FInv => "F^-1",
            Token::T => "T",
            Token::TInv => "T^-1",
            Token::Shift => "Shift",
        }
    }
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Result<Mat2> {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0]
                .checked_mul(b[0][j])
                .and_then(|x| a[i][1].checked_mul(b[1][j]).and_then(|y| x.checked_add(y)))
                .ok_or(Error::Overflow("2x2 product"))?;
        }
    }
    Ok(out)
}

pub fn det(m: &Mat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn apply(m: &Mat2, v: ChargeVector) -> Result<ChargeVector> {
    let r = m[0][0]
        .checked_mul(v.r)
        .and_then(|x| m[0][1].checked_mul(v.d).and_then(|y| x.checked_add(y)))
        .ok_or(Error::Overflow("matrix action"))?;
    let d = m[1][0]
        .checked_mul(v.r)
        .and_then(|x| m[1][1].checked_mul(v.d).and_then(|y| x.checked_add(y)))
        .ok_or(Error::Overflow("matrix action"))?;
    Ok(ChargeVector { r, d })
}

/// `(rank, degree)` of an object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChargeVector {
    pub r: i64,
    pub d: i64,
}

impl ChargeVector {
    pub fn new(r: i64, d: i64) -> Self {
        ChargeVector { r, d }
    }
}

impl fmt::Display for ChargeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GeneratorWord(pub Vec<Token>);

impl GeneratorWord {
    pub fn new(tokens: Vec<Token>) -> Self {
        GeneratorWord(tokens)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut t = self.0.clone();
        t.extend_from_slice(&other.0);
        GeneratorWord(t)
    }

    /// Number of maximal runs of equal tokens.
    pub fn syllables(&self) -> usize {
        if self.0.is_empty() {
            return 0;
        }
        1 + self.0.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Acts token by token, rightmost first.
    pub fn act(&self, v: ChargeVector) -> Result<ChargeVector> {
        self.0
            .iter()
            .rev()
            .try_fold(v, |acc, t| apply(&t.matrix(), acc))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(empty)");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let t = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == t {
                j += 1;
            }
            let k = j - i;
            match t {
                Token::T if k > 1 => parts.push(format!("T^{k}")),
                Token::TInv if k > 1 => parts.push(format!("T^-{k}")),
                _ => parts.extend(std::iter::repeat_n(t.symbol().to_string(), k)),
            }
            i = j;
        }
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    /// Comma-separated tokens: `F`, `F^-1`, `T` (or `T_L`), `T^-1`,
    /// `Shift` (or `S`, `[1]`); `X^k` repeats a token, negative `k` inverts.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for raw in s.split(',') {
            let tok = raw.trim();
            if tok.is_empty() {
                continue;
            }
            let (base, pow) = match tok.split_once('^') {
                Some((b, p)) => (
                    b.trim(),
                    p.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            let (fwd, inv) = match base {
                "F" => (Token::F, Token::FInv),
                "Fi" | "F'" | "F-" => (Token::FInv, Token::F),
                "T" | "T_L" | "TL" => (Token::T, Token::TInv),
                "Ti" | "T'" | "T-" | "T_L-" => (Token::TInv, Token::T),
                "Shift" | "S" | "[1]" => (Token::Shift, Token::Shift),
                _ => return Err(Error::Parse(format!("unknown generator {tok:?}"))),
            };
            let t = if pow < 0 { inv } else { fwd };
            out.extend(std::iter::repeat_n(t, pow.unsigned_abs() as usize));
        }
        Ok(GeneratorWord(out))
    }
}

pub fn matrix_of(word: &GeneratorWord) -> Result<Mat2> {
    word.0
        .iter()
        .try_fold(IDENTITY, |acc, t| mat_mul(&acc, &t.matrix()))
}

/// Matrix-level kernel membership. Necessary but not sufficient for the
/// word to lie in the kernel of the map to SL(2,Z) up to automorphisms,
/// degree-zero twists and even shifts.
pub fn kernel_witness(word: &GeneratorWord) -> Result<bool> {
    Ok(matrix_of(word)? == IDENTITY)
}

/// Upper bound on [`GeneratorWord::syllables`] of [`decompose`] output.
pub fn syllable_bound(m: &Mat2) -> usize {
    let max = m.iter().flatten().map(|x| x.unsigned_abs()).max().unwrap_or(1).max(1);
    2 * (63 - max.leading_zeros() as usize) + 10
}

/// Words are stored letter by letter; `decompose` refuses to build longer ones.
pub const MAX_WORD_LETTERS: u64 = 1 << 24;

fn push_run(prefix: &mut Vec<Token>, t: Token, k: u64) -> Result<()> {
    if prefix.len() as u64 + k > MAX_WORD_LETTERS {
        return Err(Error::Contract(format!(
            "decomposition needs more than {MAX_WORD_LETTERS} letters"
        )));
    }
    prefix.extend(std::iter::repeat_n(t, k as usize));
    Ok(())
}

/// A word in `F`, `T`, `T^-1`, `Shift` with `matrix_of(word) = m`.
///
/// Nearest-integer Euclidean reduction of the first column: each round
/// subtracts a multiple of `a` from `c` (a `T` power) and swaps with `F^-1`,
/// so `|a|` at least halves per round.
pub fn decompose(m: &Mat2) -> Result<GeneratorWord> {
    let d = det(m);
    if d != 1 {
        return Err(Error::NotInSl2z(d));
    }
    let mut cur = *m;
    // inverses of the left multiplications applied so far, in order
    let mut prefix: Vec<Token> = Vec::new();
    let finv = Token::FInv.matrix();
    while cur[1][0] != 0 {
        let (a, c) = (cur[0][0], cur[1][0]);
        if a == 0 {
            cur = mat_mul(&finv, &cur)?;
            prefix.push(Token::F);
            continue;
        }
        let mut q = c / a;
        let r = c - q * a;
        if 2 * r.abs() > a.abs() {
            q += r.signum() * a.signum();
        }
        // T^{-q} on the left: row2 -= q row1; undone by T^q
        cur[1][0] -= q * cur[0][0];
        cur[1][1] = cur[1][1]
            .checked_sub(q.checked_mul(cur[0][1]).ok_or(Error::Overflow("decompose"))?)
            .ok_or(Error::Overflow("decompose"))?;
        let t = if q > 0 { Token::T } else { Token::TInv };
        push_run(&mut prefix, t, q.unsigned_abs())?;
        if cur[1][0] != 0 {
            cur = mat_mul(&finv, &cur)?;
            prefix.push(Token::F);
        }
    }
    if cur[0][0] == -1 {
        cur = mat_mul(&Token::Shift.matrix(), &cur)?;
        prefix.push(Token::Shift);
    }
    debug_assert_eq!((cur[0][0], cur[1][0], cur[1][1]), (1, 0, 1));
    let b = cur[0][1];
    if b != 0 {
        // [[1,b],[0,1]] = F T^{-b} F^{-1}, with F^{-1} = Shift F
        prefix.push(Token::F);
        let t = if b > 0 { Token::TInv } else { Token::T };
        push_run(&mut prefix, t, b.unsigned_abs())?;
        prefix.push(Token::Shift);
        prefix.push(Token::F);
    }
    Ok(GeneratorWord(prefix))
}

/// `a,b,c,d` row by row; brackets as printed by [`format_matrix`] are ignored.
pub fn parse_matrix(s: &str) -> Result<Mat2> {
    let flat: String = s.chars().filter(|c| *c != '[' && *c != ']').collect();
    let v: Vec<i64> = flat
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad matrix entry {x:?}")))
        })
        .collect::<Result<_>>()?;
    match v.as_slice() {
        [a, b, c, d] => Ok([[*a, *b], [*c, *d]]),
        _ => Err(Error::Parse(format!(
            "matrix needs 4 entries \"a,b,c,d\", got {}",
            v.len()
        ))),
    }
}

pub fn format_matrix(m: &Mat2) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}
