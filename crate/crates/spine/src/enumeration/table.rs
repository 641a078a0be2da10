use std::fmt;

use crate::presentations::Word;

/// A closed coset table: row `c`, column `2g` is `c·x_g`, column `2g+1` is `c·x_g^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    rank: usize,
    rows: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableDefect {
    Undefined { coset: usize, column: usize },
    NotInverse { coset: usize, column: usize },
    RelatorMoves { coset: usize, relator: usize },
}

impl fmt::Display for TableDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableDefect::Undefined { coset, column } => write!(f, "entry ({coset},{column}) undefined"),
            TableDefect::NotInverse { coset, column } => write!(f, "entry ({coset},{column}) has no inverse entry"),
            TableDefect::RelatorMoves { coset, relator } => write!(f, "relator {relator} moves coset {coset}"),
        }
    }
}

impl CosetTable {
    pub(crate) fn new(rank: usize, rows: Vec<Vec<usize>>) -> Self {
        CosetTable { rank, rows }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn entry(&self, coset: usize, column: usize) -> Option<usize> {
        self.rows.get(coset)?.get(column).copied().filter(|&d| d < self.rows.len())
    }

    /// Image of every coset under `x_g`.
    pub fn permutation(&self, generator: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r[2 * generator]).collect()
    }

    pub fn act(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters()
            .iter()
            .try_fold(coset, |c, l| self.entry(c, 2 * l.generator + usize::from(l.sign < 0)))
    }

    /// Checks that the table is complete, inverse-consistent and fixes every coset under each relator.
    pub fn verify(&self, relators: &[Word]) -> Result<(), TableDefect> {
        for c in 0..self.rows.len() {
            for column in 0..2 * self.rank {
                let d = self.entry(c, column).ok_or(TableDefect::Undefined { coset: c, column })?;
                if self.entry(d, column ^ 1) != Some(c) {
                    return Err(TableDefect::NotInverse { coset: c, column });
                }
            }
        }
        for (relator, w) in relators.iter().enumerate() {
            for c in 0..self.rows.len() {
                if self.act(c, w) != Some(c) {
                    return Err(TableDefect::RelatorMoves { coset: c, relator });
                }
            }
        }
        Ok(())
    }
}
