use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CyclicPresentation, Letter, PresentationError, Word};

pub const X: usize = 0;
pub const T: usize = 1;

/// A presentation on generators `x` (index 0) and `t` (index 1) whose first relator is `t^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGeneratorPresentation {
    relators: Vec<Word>,
    order_of_t: usize,
}

impl TwoGeneratorPresentation {
    /// `others` are freely reduced and appended after `t^n`.
    pub fn new(order_of_t: usize, others: Vec<Word>) -> Result<Self, PresentationError> {
        if order_of_t == 0 {
            return Err(PresentationError::ZeroRank);
        }
        let mut relators = vec![Word::new(2, vec![Letter::pos(T); order_of_t])?];
        for w in others {
            if w.rank() != 2 {
                return Err(PresentationError::Parse("two-generator words need rank 2".into()));
            }
            relators.push(w.free_reduce());
        }
        Ok(TwoGeneratorPresentation { relators, order_of_t })
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn order_of_t(&self) -> usize {
        self.order_of_t
    }

    pub fn parse_word(text: &str) -> Result<Word, PresentationError> {
        let mut pairs = Vec::new();
        for tok in text.split_whitespace() {
            let bad = || PresentationError::Parse(format!("bad token `{tok}`"));
            let (g, rest) = match tok.chars().next() {
                Some('x') => (X, &tok[1..]),
                Some('t') => (T, &tok[1..]),
                _ => return Err(bad()),
            };
            let e: i64 = match rest.strip_prefix('^') {
                Some(e) => e.parse().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
            let s = if e < 0 { -1 } else { 1 };
            pairs.extend(std::iter::repeat((g as i64, s)).take(e.unsigned_abs() as usize));
        }
        Word::from_pairs(2, pairs)
    }
}

pub fn format_xt(w: &Word) -> String {
    let mut parts = Vec::new();
    let ls = w.letters();
    let mut i = 0;
    while i < ls.len() {
        let mut j = i;
        while j < ls.len() && ls[j] == ls[i] {
            j += 1;
        }
        let name = if ls[i].generator == X { "x" } else { "t" };
        let e = (j - i) as i64 * ls[i].sign as i64;
        parts.push(if e == 1 { name.to_string() } else { format!("{name}^{e}") });
        i = j;
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for TwoGeneratorPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(format_xt).collect();
        write!(f, "< x, t | {} >", rels.join(", "))
    }
}

fn power(g: usize, e: i64) -> Vec<(i64, i8)> {
    let s = if e < 0 { -1 } else { 1 };
    vec![(g as i64, s); e.unsigned_abs() as usize]
}

/// `< x, t | t^n, x^l t x^k t^e x^-l t^-2 >` with `e = 1 - fk`, where `fk` is
/// replaced by its residue in `1..=n` when positive.
pub fn shift_extension(k: usize, l: usize, n: usize, f: usize) -> Result<TwoGeneratorPresentation, PresentationError> {
    if n < 2 || k < 1 || l < 1 || f >= n {
        return Err(PresentationError::InvalidFamily(format!("shift extension ({k},{l},{n},{f})")));
    }
    let (ki, li, ni, fi) = (k as i64, l as i64, n as i64, f as i64);
    let fk = fi * ki;
    let e = if fk == 0 { 1 } else { 1 - ((fk - 1).rem_euclid(ni) + 1) };
    let mut pairs = power(X, li);
    pairs.extend(power(T, 1));
    pairs.extend(power(X, ki));
    pairs.extend(power(T, e));
    pairs.extend(power(X, -li));
    pairs.extend(power(T, -2));
    TwoGeneratorPresentation::new(n, vec![Word::from_pairs(2, pairs)?])
}

/// Rewrites the kernel of `t -> t, x -> t^f` over coset representatives `t^0, …, t^{n-1}`
/// with `y_i = t^i x t^{-(i+f)}`.
pub fn rewrite_kernel(e: &TwoGeneratorPresentation, f: usize) -> Result<CyclicPresentation, PresentationError> {
    let n = e.order_of_t();
    let rest = &e.relators()[1..];
    let [rel] = rest else {
        return Err(PresentationError::Parse("expected exactly one relator besides t^n".into()));
    };
    let ev = rel.exponent_vector();
    let image = (f as i64 * ev[X] + ev[T]).rem_euclid(n as i64);
    if image != 0 {
        return Err(PresentationError::NoRetraction { f, image: image as usize, n });
    }
    let mut c: i64 = 0;
    let mut out = Vec::new();
    for l in rel.letters() {
        match (l.generator, l.sign) {
            (T, s) => c += s as i64,
            (_, 1) => {
                out.push((c, 1));
                c += f as i64;
            }
            _ => {
                c -= f as i64;
                out.push((c, -1));
            }
        }
    }
    debug_assert_eq!(c.rem_euclid(n as i64), 0);
    Ok(CyclicPresentation::new(Word::from_pairs(n, out)?.free_reduce()))
}
