use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PresentationError;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub sign: i8,
}

impl Letter {
    pub fn new(generator: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { generator, sign }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, 1)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, -1)
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, sign: -self.sign }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign == -other.sign
    }
}

/// An element of the free group on `rank` generators, stored as a letter sequence.
///
/// Generator indices are reduced mod `rank` on construction. The word is not
/// reduced automatically; see [`Word::free_reduce`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordRepr", into = "WordRepr")]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    rank: usize,
    word: Vec<(i64, i8)>,
}

impl TryFrom<WordRepr> for Word {
    type Error = PresentationError;

    fn try_from(r: WordRepr) -> Result<Self, Self::Error> {
        Word::from_pairs(r.rank, r.word)
    }
}

impl From<Word> for WordRepr {
    fn from(w: Word) -> Self {
        WordRepr {
            rank: w.rank,
            word: w.letters.iter().map(|l| (l.generator as i64, l.sign)).collect(),
        }
    }
}

impl Word {
    pub fn new(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self, PresentationError> {
        if rank == 0 {
            return Err(PresentationError::ZeroRank);
        }
        let letters = letters
            .into_iter()
            .map(|l| {
                if l.sign != 1 && l.sign != -1 {
                    Err(PresentationError::BadSign(l.sign as i64))
                } else {
                    Ok(Letter::new(l.generator % rank, l.sign))
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(Word { rank, letters })
    }

    /// Builds a word from `(generator, sign)` pairs; negative generators wrap mod `rank`.
    pub fn from_pairs(rank: usize, pairs: impl IntoIterator<Item = (i64, i8)>) -> Result<Self, PresentationError> {
        if rank == 0 {
            return Err(PresentationError::ZeroRank);
        }
        let mut letters = Vec::new();
        for (g, s) in pairs {
            if s != 1 && s != -1 {
                return Err(PresentationError::BadSign(s as i64));
            }
            letters.push(Letter::new(g.rem_euclid(rank as i64) as usize, s));
        }
        Ok(Word { rank, letters })
    }

    pub fn empty(rank: usize) -> Result<Self, PresentationError> {
        Word::new(rank, [])
    }

    /// Parses text such as `x0 x1^3 x2^-1`. When `rank` is `None` it is one more
    /// than the largest generator index mentioned (and 1 for the empty word).
    pub fn parse(text: &str, rank: Option<usize>) -> Result<Self, PresentationError> {
        let mut pairs = Vec::new();
        for tok in text.split_whitespace() {
            let (g, e) = parse_token(tok, 'x')?;
            let sign = if e < 0 { -1 } else { 1 };
            for _ in 0..e.unsigned_abs() {
                pairs.push((g, sign));
            }
        }
        let rank = match rank {
            Some(r) => r,
            None => pairs.iter().map(|&(g, _)| g as usize + 1).max().unwrap_or(1),
        };
        Word::from_pairs(rank, pairs.into_iter().map(|(g, s)| (g as i64, s)))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { rank: self.rank, letters }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].is_inverse_of(w[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(a), Some(b)) if self.letters.len() > 1 => !a.is_inverse_of(*b),
                _ => true,
            }
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.is_inverse_of(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { rank: self.rank, letters: out }
    }

    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let mut lo = 0;
        let mut hi = w.letters.len();
        while hi - lo >= 2 && w.letters[lo].is_inverse_of(w.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word { rank: self.rank, letters: w.letters[lo..hi].to_vec() }
    }

    /// Applies the shift automorphism `x_i -> x_{i+s}`.
    pub fn shift(&self, s: i64) -> Word {
        let n = self.rank as i64;
        let letters = self
            .letters
            .iter()
            .map(|l| Letter::new((l.generator as i64 + s).rem_euclid(n) as usize, l.sign))
            .collect();
        Word { rank: self.rank, letters }
    }

    /// Cyclic permutation starting at letter `start`.
    pub fn rotate(&self, start: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(start % self.letters.len());
        }
        Word { rank: self.rank, letters }
    }

    /// Signed count of occurrences of each generator.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for l in &self.letters {
            v[l.generator] += l.sign as i64;
        }
        v
    }

    /// Renders with a custom generator prefix, e.g. `y`.
    pub fn display_with(&self, prefix: &str) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.sign as i64;
            if e == 1 {
                parts.push(format!("{prefix}{}", l.generator));
            } else {
                parts.push(format!("{prefix}{}^{e}", l.generator));
            }
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.display_with("x"))
        }
    }
}

impl FromStr for Word {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s, None)
    }
}

/// Parses `x12`, `x3^-2` and the like into (index, exponent).
pub(crate) fn parse_token(tok: &str, prefix: char) -> Result<(u64, i64), PresentationError> {
    let bad = || PresentationError::Parse(format!("bad token `{tok}`"));
    let rest = tok.strip_prefix(prefix).ok_or_else(bad)?;
    let (idx, exp) = match rest.split_once('^') {
        Some((a, b)) => (a, b.parse::<i64>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    Ok((idx.parse::<u64>().map_err(|_| bad())?, exp))
}
