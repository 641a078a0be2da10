use num_integer::Integer;
use serde::Serialize;

use super::PolyhedraError;

fn check_shape(k: usize, l: usize) -> Result<(), PolyhedraError> {
    if k == 0 || l == 0 {
        return Err(PolyhedraError::Hypothesis("k and l must be positive".into()));
    }
    if !(l == 1 || k == 1 || (k, l) == (5, 2) || (k, l) == (2, 5)) {
        return Err(PolyhedraError::Unsupported(format!("shape (k,l) = ({k},{l})")));
    }
    Ok(())
}

/// Closed-form spine decision: `n` and `f` even and `fk ≡ 0 (mod n)`.
///
/// Defined for `n >= 4`, `fk ≢ 2 (mod n)` and the shapes `(k,1)`, `(1,l)`, `(5,2)`, `(2,5)`.
pub fn spine_decision(k: usize, l: usize, n: usize, f: usize) -> Result<bool, PolyhedraError> {
    check_shape(k, l)?;
    if n < 4 || f >= n {
        return Err(PolyhedraError::Hypothesis(format!("need n >= 4 and 0 <= f < n, got n = {n}, f = {f}")));
    }
    if (f * k) % n == 2 % n {
        return Err(PolyhedraError::Hypothesis("fk = 2 mod n is outside theorem scope".into()));
    }
    Ok(n % 2 == 0 && f % 2 == 0 && (f * k) % n == 0)
}

/// Why `G(k,l,n,f)` with `f` odd cannot be a spine: a face index used twice around `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub duplicated_face_index: usize,
    pub trace: Vec<String>,
}

pub fn odd_f_obstruction(k: usize, l: usize, n: usize, f: usize) -> Result<Obstruction, PolyhedraError> {
    if k == 0 || l == 0 || n < 4 || f >= n {
        return Err(PolyhedraError::Hypothesis(format!("bad parameters ({k},{l},{n},{f})")));
    }
    if n % 2 == 1 || (f * k) % n != 0 || f % 2 == 0 || k.gcd(&l) != 1 {
        return Err(PolyhedraError::Hypothesis(format!(
            "({k},{l},{n},{f}): need n even, fk = 0 mod n, gcd(k,l) = 1 and f odd"
        )));
    }
    let y = |i: usize| format!("y_{}", i % n);
    let face = (l * f + 1) % n;
    let trace = vec![
        format!("N has outgoing arcs {} in cyclic order", (0..n).step_by(2).map(y).collect::<Vec<_>>().join(",")),
        format!(
            "the path {} starting at N ends at a vertex v",
            (0..l).map(|j| y(2 + j * f)).collect::<Vec<_>>().join("-")
        ),
        format!("v has incoming {}, {} and outgoing {}", y((l - 1) * f + 1), y((l - 1) * f + 2), y(l * f + 3)),
        format!("so v has degree 4 and its last arc is outgoing {}", y(l * f + 1)),
        format!("{} and {} bound F_{face}^-, and lf+1 = {} is even", y(l * f + 1), y(l * f + 3), l * f + 1),
        format!("F_{face}^- then occurs twice among the faces at N"),
    ];
    debug_assert!(face % 2 == 0);
    Ok(Obstruction { duplicated_face_index: face, trace })
}
