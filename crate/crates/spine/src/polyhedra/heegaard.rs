use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::scheme::FaceSign;
use super::{build_scheme, PolyhedraError};
use crate::presentations::FamilySpec;

/// A strand joining position `plus_label` on disc `F_plus^+` to `minus_label` on `F_minus^-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Strand {
    pub plus: usize,
    pub plus_label: usize,
    pub minus: usize,
    pub minus_label: usize,
}

/// Discs `F_i^±` (`0 <= i < discs`) joined by labelled strands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeegaardDiagram {
    pub discs: usize,
    pub strands: Vec<Strand>,
}

impl HeegaardDiagram {
    fn new(discs: usize, mut strands: Vec<Strand>) -> Self {
        strands.sort();
        HeegaardDiagram { discs, strands }
    }

    /// Strand bundles `(F_i^+, F_j^-) -> multiplicity`.
    pub fn bundles(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for s in &self.strands {
            *out.entry((s.plus, s.minus)).or_insert(0) += 1;
        }
        out
    }

    /// Number of strand ends on each `F_i^+` and each `F_i^-`.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let (mut p, mut m) = (vec![0; self.discs], vec![0; self.discs]);
        for s in &self.strands {
            p[s.plus] += 1;
            m[s.minus] += 1;
        }
        (p, m)
    }

    /// Image under `F_i^± -> F_{i+by}^±`.
    pub fn rotate(&self, by: usize) -> HeegaardDiagram {
        let n = self.discs;
        let strands = self
            .strands
            .iter()
            .map(|s| Strand { plus: (s.plus + by) % n, minus: (s.minus + by) % n, ..*s })
            .collect();
        HeegaardDiagram::new(n, strands)
    }
}

impl fmt::Display for HeegaardDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((p, m), c) in self.bundles() {
            let labels: Vec<String> = self
                .strands
                .iter()
                .filter(|s| s.plus == p && s.minus == m)
                .map(|s| format!("{}-{}", s.plus_label, s.minus_label))
                .collect();
            writeln!(f, "F_{p}^+ -- F_{m}^-  x{c}  [{}]", labels.join(" "))?;
        }
        Ok(())
    }
}

/// Diagram of `M(r,n)` read off the polyhedron of `H(r,n)`: one strand per arc, joining its
/// plus and minus faces; a side at letter `j` gets label `r - j`.
pub fn heegaard_h(r: usize, n: usize) -> Result<HeegaardDiagram, PolyhedraError> {
    let s = build_scheme(FamilySpec::H { r, n })?;
    let mut ends: Vec<Vec<(FaceSign, usize, usize)>> = vec![Vec::new(); s.arcs.len()];
    for (f, face) in s.faces.iter().enumerate() {
        for (j, side) in s.reading(f).expect("built scheme is well formed").iter().enumerate() {
            ends[side.arc].push((face.sign, face.relator, r - j));
        }
    }
    let mut strands = Vec::new();
    for e in ends {
        match e.as_slice() {
            [(FaceSign::Plus, p, pl), (FaceSign::Minus, m, ml)] | [(FaceSign::Minus, m, ml), (FaceSign::Plus, p, pl)] => {
                strands.push(Strand { plus: *p, plus_label: *pl, minus: *m, minus_label: *ml })
            }
            _ => return Err(PolyhedraError::Symmetry("an arc does not join a plus and a minus face".into())),
        }
    }
    Ok(HeegaardDiagram::new(n, strands))
}

/// Checks invariance under `F_i^± -> F_{i+r}^±` and returns the one-pair quotient diagram.
pub fn rho_quotient(d: &HeegaardDiagram, r: usize) -> Result<HeegaardDiagram, PolyhedraError> {
    let n = d.discs;
    let image = d.rotate(r % n.max(1));
    if image != *d {
        let missing = image.strands.iter().find(|s| !d.strands.contains(s)).expect("diagrams differ");
        let b = d.bundles();
        return Err(PolyhedraError::Symmetry(format!(
            "bundle F_{}^+ -- F_{}^- (x{}) has no image",
            (missing.plus + n - r % n) % n,
            (missing.minus + n - r % n) % n,
            b.get(&((missing.plus + n - r % n) % n, (missing.minus + n - r % n) % n)).copied().unwrap_or(0)
        )));
    }
    // Every orbit of the rotation meets F_0^+ exactly once when gcd(r, n) = 1.
    let mut orbit_rep = vec![usize::MAX; n];
    let mut i = 0;
    for step in 0..n {
        if orbit_rep[i] != usize::MAX {
            break;
        }
        orbit_rep[i] = step;
        i = (i + r) % n;
    }
    if orbit_rep.contains(&usize::MAX) {
        return Err(PolyhedraError::Symmetry(format!("rotation by {r} is not transitive on {n} discs")));
    }
    let strands = d
        .strands
        .iter()
        .filter(|s| s.plus == 0)
        .map(|s| Strand { plus: 0, minus: 0, ..*s })
        .collect();
    Ok(HeegaardDiagram::new(1, strands))
}

/// The canonical one-pair diagram of `L(r,1)`: label `s` on `F^+` meets `s+1 (mod r)` on `F^-`.
pub fn lens_space_diagram(r: usize) -> HeegaardDiagram {
    let strands = (1..=r).map(|s| Strand { plus: 0, plus_label: s, minus: 0, minus_label: s % r + 1 }).collect();
    HeegaardDiagram::new(1, strands)
}
