//! Exact integer polynomials, resultants, Smith normal form and abelianizations.

mod lemma42;
mod poly;
mod resultant;
mod snf;

pub use lemma42::{distinguish_f0_fhalf, lemma42_closed_forms, lucas_value, FractionalParams, Lemma42Record};
pub use poly::IntPolynomial;
pub use resultant::{bareiss_determinant, resultant, resultant_split, sylvester_matrix};
pub use snf::smith_diagonal;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::presentations::CyclicPresentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("resultant of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("expected an even degree, got {0}")]
    OddDegree(usize),
    #[error("parameters outside the hypotheses: {0}")]
    Hypothesis(String),
}

/// Order of a group: a positive integer or infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn from_resultant(r: BigInt) -> Self {
        if r.is_zero() {
            Order::Infinite
        } else {
            Order::Finite(r)
        }
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(v) => Some(v),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Torsion coefficients `d_1 | d_2 | …` (each > 1) and free rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn order(&self) -> Order {
        if self.free_rank > 0 {
            Order::Infinite
        } else {
            Order::Finite(self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z_{d}")).collect();
        parts.extend(std::iter::repeat("Z".to_string()).take(self.free_rank));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Coefficient of `t^i` is the exponent sum of generator `i` in the defining word.
pub fn representer_polynomial(p: &CyclicPresentation) -> IntPolynomial {
    IntPolynomial::from_i64(&p.defining_word().exponent_vector())
}

/// Relation matrix: row `i` is the exponent vector of relator `i`.
pub fn relation_matrix(p: &CyclicPresentation) -> Vec<Vec<BigInt>> {
    p.relators()
        .iter()
        .map(|w| w.exponent_vector().into_iter().map(BigInt::from).collect())
        .collect()
}

pub fn abelian_invariants(p: &CyclicPresentation) -> AbelianInvariants {
    let n = p.rank();
    let diag = smith_diagonal(relation_matrix(p));
    let zeros = diag.iter().filter(|d| d.is_zero()).count() + (n - diag.len());
    AbelianInvariants {
        torsion: diag.into_iter().filter(|d| *d > BigInt::one()).collect(),
        free_rank: zeros,
    }
}

/// `|Res(p(t), t^n - 1)|`, with zero read as an infinite abelianization.
pub fn abelianization_order(p: &CyclicPresentation) -> Order {
    let rp = representer_polynomial(p);
    if rp.is_zero() {
        return Order::Infinite;
    }
    let r = resultant(&rp, &IntPolynomial::binomial(p.rank(), -1)).expect("nonzero polynomials");
    Order::from_resultant(r)
}
