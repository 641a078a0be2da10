use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Letter, PresentationError, Word};

/// The group presentation with relators `w, θ(w), …, θ^{n-1}(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicPresentation {
    word: Word,
}

impl CyclicPresentation {
    pub fn new(word: Word) -> Self {
        CyclicPresentation { word }
    }

    pub fn rank(&self) -> usize {
        self.word.rank()
    }

    pub fn defining_word(&self) -> &Word {
        &self.word
    }

    pub fn relator(&self, i: usize) -> Word {
        self.word.shift(i as i64)
    }

    pub fn relators(&self) -> Vec<Word> {
        (0..self.rank()).map(|i| self.relator(i)).collect()
    }

    /// Canonical letter sequence up to free reduction, cyclic permutation and shift.
    pub fn normal_form(&self) -> Vec<Letter> {
        let w = self.word.cyclic_reduce();
        let mut best: Option<Vec<Letter>> = None;
        for s in 0..self.rank() {
            let shifted = w.shift(s as i64);
            for r in 0..w.len().max(1) {
                let cand = shifted.rotate(r).letters().to_vec();
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Same presentation complex up to the three symmetries of [`Self::normal_form`].
    pub fn is_equivalent(&self, other: &CyclicPresentation) -> bool {
        self.rank() == other.rank() && self.normal_form() == other.normal_form()
    }
}

/// The presentation families under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    H { r: usize, n: usize },
    G { k: usize, l: usize, n: usize, f: usize },
    F { k: usize, l: usize, n: usize },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), PresentationError> {
        let bad = |why: &str| Err(PresentationError::InvalidFamily(format!("{self}: {why}")));
        match *self {
            FamilySpec::H { r, n } => {
                if n < 2 {
                    return bad("need n > 1");
                }
                if r < 1 {
                    return bad("need r >= 1");
                }
            }
            FamilySpec::G { k, l, n, f } => {
                if n < 2 {
                    return bad("need n >= 2");
                }
                if k < 1 || l < 1 {
                    return bad("need k, l >= 1");
                }
                if f >= n {
                    return bad("need 0 <= f < n");
                }
            }
            FamilySpec::F { k, l, n } => FamilySpec::G { k, l, n, f: 0 }.validate()?,
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        match *self {
            FamilySpec::H { n, .. } | FamilySpec::G { n, .. } | FamilySpec::F { n, .. } => n,
        }
    }

    /// `F(k,l,n)` becomes `G(k,l,n,0)`; other specs are returned unchanged.
    pub fn normalized(&self) -> FamilySpec {
        match *self {
            FamilySpec::F { k, l, n } => FamilySpec::G { k, l, n, f: 0 },
            s => s,
        }
    }

    /// `(k, l, n, f)` for the G and F families.
    pub fn klnf(&self) -> Option<(usize, usize, usize, usize)> {
        match self.normalized() {
            FamilySpec::G { k, l, n, f } => Some((k, l, n, f)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::H { r, n } => write!(f, "H:{r},{n}"),
            FamilySpec::G { k, l, n, f: ff } => write!(f, "G:{k},{l},{n},{ff}"),
            FamilySpec::F { k, l, n } => write!(f, "F:{k},{l},{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = PresentationError;

    /// Accepts `H:r,n`, `G:k,l,n,f` and `F:k,l,n`. The result is validated.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PresentationError::Parse(format!("bad family spec `{s}`"));
        let (tag, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        let spec = match (tag.trim(), nums.as_slice()) {
            ("H", &[r, n]) => FamilySpec::H { r, n },
            ("G", &[k, l, n, f]) => FamilySpec::G { k, l, n, f },
            ("F", &[k, l, n]) => FamilySpec::F { k, l, n },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// The defining word of `G(k,l,n,f)` as `(generator, sign)` pairs, indices not yet reduced mod n.
pub fn g_word(k: usize, l: usize, f: usize) -> Vec<(i64, i8)> {
    let (k, l, f) = (k as i64, l as i64, f as i64);
    let mut out = Vec::new();
    for a in 0..l {
        out.push((a * f, 1));
    }
    for b in 0..k {
        out.push((l * f + 1 + b * f, 1));
    }
    for c in (0..l).rev() {
        out.push((2 + c * f, -1));
    }
    out
}

pub fn build_family(spec: FamilySpec) -> Result<CyclicPresentation, PresentationError> {
    spec.validate()?;
    let word = match spec.normalized() {
        FamilySpec::H { r, n } => Word::from_pairs(n, (0..r as i64).map(|i| (i, 1)))?,
        FamilySpec::G { k, l, n, f } => Word::from_pairs(n, g_word(k, l, f))?,
        FamilySpec::F { .. } => unreachable!(),
    };
    Ok(CyclicPresentation::new(word))
}
