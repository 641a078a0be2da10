use spine::polyhedra::*;
use spine::presentations::{build_family, FamilySpec};

fn spec(s: &str) -> FamilySpec {
    s.parse().unwrap()
}

fn scheme(s: &str) -> FacePairingScheme {
    build_scheme(spec(s)).unwrap()
}

fn m(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

/// The orbit through the unique arc `[tail,head]` with label `label`, as (arc text, face index) pairs.
fn orbit_through(s: &FacePairingScheme, tail: &str, head: &str, label: usize) -> Vec<(String, usize)> {
    let hits: Vec<usize> = s
        .arcs
        .iter()
        .filter(|a| s.vertices[a.tail] == tail && s.vertices[a.head] == head && a.label == label)
        .map(|a| a.id)
        .collect();
    assert_eq!(hits.len(), 1, "arc [{tail},{head}] x{label}");
    let orbit = edge_orbits(s).unwrap().into_iter().find(|o| o.arcs().contains(&hits[0])).unwrap();
    orbit
        .steps
        .iter()
        .map(|st| {
            let a = &s.arcs[st.arc];
            (format!("[{},{}]", s.vertices[a.tail], s.vertices[a.head]), s.faces[s.pairing[st.pair].plus].relator)
        })
        .collect()
}

/// Equality of cyclic sequences `a0 F0 a1 F1 ...` up to rotation and reversal.
fn same_cycle(got: &[(String, usize)], want: &[(String, usize)]) -> bool {
    let len = want.len();
    if got.len() != len {
        return false;
    }
    for start in 0..len {
        if (0..len).all(|t| got[(start + t) % len] == want[t]) {
            return true;
        }
        // Reversed: arcs backwards, each face now sits after the arc that preceded it.
        if (0..len).all(|t| {
            let a = &got[(start + len - t) % len].0;
            let face = got[(start + 2 * len - t - 1) % len].1;
            *a == want[t].0 && face == want[t].1
        }) {
            return true;
        }
    }
    false
}

fn h_cycle(r: usize, n: usize) -> Vec<(String, usize)> {
    let w = |sup: usize, i: i64| if sup == 1 { "S".to_string() } else { format!("w_{}^{}", m(i, n), sup) };
    let mut out = vec![("[S,N]".to_string(), m(n as i64 - (r as i64 - 1), n))];
    for k in 1..r - 1 {
        let i = n as i64 - (r - k) as i64;
        out.push((format!("[{},{}]", w(k + 1, i), w(k, i)), m(i + 1, n)));
    }
    out.push((format!("[N,{}]", w(r - 1, n as i64 - 1)), 0));
    out
}

#[test]
fn h_orbit_matches_listing() {
    for (r, n) in [(2usize, 3usize), (3, 4), (4, 5), (5, 7), (7, 10)] {
        let s = build_scheme(FamilySpec::H { r, n }).unwrap();
        let got = orbit_through(&s, "S", "N", 0);
        assert!(same_cycle(&got, &h_cycle(r, n)), "H({r},{n}): {got:?}");
    }
}

fn k1_cycle(k: usize, f: i64, n: usize, shift: i64, last_face: i64) -> Vec<(String, usize)> {
    let ki = k as i64;
    let u = |i: i64| format!("u_{}", m(i + shift, n));
    let v = |i: i64| format!("v_{}", m(i + shift, n));
    let w = |i: i64, s: i64| format!("w_{}^{}", m(i + shift, n), s);
    let pole = if shift % 2 == 0 { "N" } else { "S" };
    let face = |i: i64| m(i + shift, n);
    let mut out = vec![
        (format!("[{pole},{}]", u(0)), face(0)),
        (format!("[{},{}]", u(1 - f), v(0)), face(-1)),
        (format!("[{},{}]", w(f, ki - 2), u(1)), face(f - 1)),
    ];
    for j in 2..=ki - 2 {
        out.push((format!("[{},{}]", w(j * f, ki - 1 - j), w(j * f, ki - j)), face(j * f - 1)));
    }
    out.push((format!("[{},{}]", v((ki - 1) * f - 2), w((ki - 1) * f, 1)), face((ki - 1) * f - 1)));
    out.push((format!("[{},{}]", v((ki - 1) * f - 3), w(0, 1)), m(last_face, n)));
    out
}

/// Faces of a cycle read from the arc `first`, in the direction that visits `second` next.
fn faces_from(got: &[(String, usize)], first: &str, second: &str) -> Vec<usize> {
    let len = got.len();
    let at = got.iter().position(|(a, _)| a == first).unwrap();
    if got[(at + 1) % len].0 == second {
        (0..len).map(|t| got[(at + t) % len].1).collect()
    } else {
        assert_eq!(got[(at + len - 1) % len].0, second);
        (0..len).map(|t| got[(at + 2 * len - t - 1) % len].1).collect()
    }
}

#[test]
fn k1_orbits_match_listing() {
    // Only the face sequence and the u/pole arcs are compared: the listing's w and v subscripts
    // do not follow the figure labels.
    for (k, n, f) in [(3usize, 6usize, 2usize), (4, 8, 2), (4, 4, 0), (5, 10, 4), (6, 12, 2), (6, 6, 0)] {
        let s = build_scheme(FamilySpec::G { k, l: 1, n, f }).unwrap();
        let fi = f as i64;
        for (shift, last) in [(0i64, -2i64), (1, -1)] {
            let want = k1_cycle(k, fi, n, shift, last);
            let pole = if shift == 0 { "N" } else { "S" };
            let got = orbit_through(&s, pole, &format!("u_{shift}"), shift as usize);
            assert_eq!(got.len(), k + 2);
            let faces = faces_from(&got, &want[0].0, &want[1].0);
            assert_eq!(faces, want.iter().map(|w| w.1).collect::<Vec<_>>(), "({k},1,{n},{f}) x{shift}");
        }
    }
}

fn cycle_from(n: usize, items: &[(String, i64)]) -> Vec<(String, usize)> {
    items.iter().map(|(a, f)| (a.clone(), m(*f, n))).collect()
}

#[test]
fn five_two_orbits_match_listing() {
    for (n, f) in [(10usize, 2i64), (10, 0), (10, 4), (20, 4)] {
        let s = build_scheme(FamilySpec::G { k: 5, l: 2, n, f: f as usize }).unwrap();
        let x = |c: &str, i: i64| format!("{c}_{}", m(i, n));
        let xs = |c: &str, i: i64, s: u32| format!("{c}_{}^{s}", m(i, n));
        let arc = |a: String, b: String| format!("[{a},{b}]");
        let x0 = cycle_from(
            n,
            &[
                (arc("N".into(), x("s", 0)), 0),
                (arc(x("u", 1 - 2 * f), x("t", 0)), -1),
                (arc(xs("w", 2 * f - 1, 1), xs("w", 2 * f - 1, 2)), 2 * f - 1),
                (arc(x("r", 2 * f - 1), x("v", 4 * f - 1)), 4 * f - 2),
                (arc(x("s", 4 * f), x("u", 4 * f)), 4 * f),
                (arc(x("t", 4 * f), x("v", 4 * f)), 4 * f - 1),
                (arc(xs("w", f - 1, 2), x("u", 1 - f)), f - 1),
                (arc(x("v", 3 * f - 1), xs("w", 3 * f - 1, 1)), 3 * f - 1),
                (arc(x("u", 3 * f - 1), x("r", 3 * f - 1)), -2),
            ],
        );
        assert!(same_cycle(&orbit_through(&s, "N", &x("s", 0), 0), &x0), "(5,2,{n},{f}) x0");
        let x1 = cycle_from(
            n,
            &[
                (arc("S".into(), x("s", 1)), 1),
                (arc(x("u", 2 - 2 * f), x("t", 1)), 0),
                (arc(xs("w", 2 * f, 1), xs("w", 2 * f, 2)), 2 * f),
                (arc(x("r", 2 * f), x("v", 4 * f)), 4 * f - 1),
                (arc(x("s", 4 * f + 1), x("u", 4 * f + 1)), 4 * f + 1),
                (arc(x("t", 4 * f + 1), x("v", 4 * f + 1)), 4 * f),
                (arc(xs("w", f, 2), x("u", 2 - f)), f),
                (arc(x("v", 3 * f), xs("w", 3 * f, 1)), 3 * f),
                (arc(x("u", 3 * f), x("r", 3 * f)), -1),
            ],
        );
        assert!(same_cycle(&orbit_through(&s, "S", &x("s", 1), 1), &x1), "(5,2,{n},{f}) x1");
    }
}

fn one_l_cycle(l: usize, n: usize, shift: i64) -> Vec<(String, usize)> {
    let x = |c: &str, i: i64| format!("{c}_{}", m(i + shift, n));
    let xs = |c: &str, i: i64, s: usize| format!("{c}_{}^{s}", m(i + shift, n));
    let pole = if shift % 2 == 0 { "N" } else { "S" };
    let (f0, fm1, fm2) = (shift, shift - 1, shift - 2);
    let mut items = vec![(format!("[{pole},{}]", xs("u", 0, 1)), f0), (format!("[{},{}]", x("w", 0), xs("t", 0, 1)), fm2)];
    for j in 1..l - 2 {
        items.push((format!("[{},{}]", xs("u", 0, j), xs("u", 0, j + 1)), f0));
        items.push((format!("[{},{}]", xs("t", 0, j), xs("t", 0, j + 1)), fm2));
    }
    items.push((format!("[{},{}]", xs("u", 0, l - 2), xs("u", 0, l - 1)), f0));
    items.push((format!("[{},{}]", xs("t", 0, l - 2), x("v", -1)), fm2));
    items.push((format!("[{},{}]", xs("u", 0, l - 1), x("w", -1)), f0));
    items.push((format!("[{},{}]", x("v", -1), x("v", 0)), fm1));
    items.push((format!("[{},{}]", x("w", -2), x("w", 0)), fm2));
    cycle_from(n, &items)
}

#[test]
fn one_l_orbits_match_listing() {
    for (l, n) in [(3usize, 4usize), (3, 6), (4, 8), (5, 6), (6, 12)] {
        let s = build_scheme(FamilySpec::G { k: 1, l, n, f: 0 }).unwrap();
        let x0 = orbit_through(&s, "N", "u_0^1", 0);
        assert!(same_cycle(&x0, &one_l_cycle(l, n, 0)), "(1,{l},{n}) x0: {x0:?}");
        let x1 = orbit_through(&s, "S", "u_1^1", 1);
        assert!(same_cycle(&x1, &one_l_cycle(l, n, 1)), "(1,{l},{n}) x1: {x1:?}");
    }
}

#[test]
fn two_five_orbits_match_listing() {
    for (n, f) in [(4usize, 2i64), (6, 0), (8, 4), (12, 6)] {
        let s = build_scheme(FamilySpec::G { k: 2, l: 5, n, f: f as usize }).unwrap();
        for shift in [0i64, 1] {
            let x = |c: &str, i: i64| format!("{c}_{}", m(i + shift, n));
            let xs = |c: &str, i: i64, s: u32| format!("{c}_{}^{s}", m(i + shift, n));
            let arc = |a: String, b: String| format!("[{a},{b}]");
            let pole = if shift == 0 { "N" } else { "S" };
            let want = cycle_from(
                n,
                &[
                    (arc(pole.into(), xs("u", 0, 1)), shift),
                    (arc(x("w", 0), xs("t", 0, 1)), shift - 2),
                    (arc(xs("u", 0, 2), xs("u", 0, 3)), shift),
                    (arc(xs("t", 0, 2), x("v", -1)), shift - 2),
                    (arc(xs("u", 0, 4), x("w", f - 1)), shift),
                    (arc(x("s", -1), x("v", 0)), shift - 1),
                    (arc(x("r", f - 2), x("w", f)), shift + f - 2),
                    (arc(xs("u", f, 1), xs("u", f, 2)), shift + f),
                    (arc(xs("t", f, 1), xs("t", f, 2)), shift + f - 2),
                    (arc(xs("u", f, 3), xs("u", f, 4)), shift + f),
                    (arc(x("v", f - 1), x("s", f - 1)), shift + f - 1),
                    (arc(x("w", 2 * f - 2), x("r", 2 * f - 2)), shift + 2 * f - 2),
                ],
            );
            let got = orbit_through(&s, pole, &xs("u", 0, 1), shift as usize);
            assert!(same_cycle(&got, &want), "(2,5,{n},{f}) x{shift}: {got:?}");
        }
    }
}

#[test]
fn validation_examples() {
    let s = scheme("H:3,4");
    let p = build_family(spec("H:3,4")).unwrap();
    let rep = validate_scheme(&s, &p);
    assert!(rep.passed(), "{rep}");
    assert_eq!((s.faces.len(), s.arcs.len(), s.vertices.len()), (8, 12, 6));
    assert!(s.faces.iter().all(|f| f.boundary.len() == 3));
    let mut names = s.vertices.clone();
    names.sort();
    assert_eq!(names, ["N", "S", "w_0^2", "w_1^2", "w_2^2", "w_3^2"]);

    let s = scheme("G:1,1,6,0");
    assert!(validate_scheme(&s, &build_family(spec("G:1,1,6,0")).unwrap()).passed());
    assert_eq!((s.faces.len(), s.arcs.len(), s.vertices.len()), (12, 18, 8));

    let s = scheme("G:2,1,4,2");
    assert!(s.faces.iter().all(|f| f.boundary.len() == 4));
    assert!(s.vertices.iter().all(|v| v == "N" || v == "S" || v.starts_with("u_") || v.starts_with("v_")));

    let s = scheme("F:1,3,6");
    let count = |c: &str| s.vertices.iter().filter(|v| v.starts_with(c)).count();
    assert_eq!((count("u_"), count("t_"), count("w_"), count("v_")), (6 * 2, 6, 6, 6));
}

#[test]
fn misspelled_face_is_reported() {
    let p = build_family(spec("H:3,4")).unwrap();
    let mut s = scheme("H:3,4");
    let f = s.face_index("F_2^+").unwrap();
    s.faces[f].boundary.swap(0, 1);
    let rep = validate_scheme(&s, &p);
    assert!(!rep.passed());
    assert!(rep.failures().iter().any(|c| c.detail.contains("relator mismatch at F_2^+")), "{rep}");
}

#[test]
fn orbits_partition_by_label() {
    for sp in ["H:4,7", "G:3,1,6,2", "G:5,2,10,4", "G:2,5,8,4", "F:1,4,8"] {
        let s = scheme(sp);
        let p = build_family(spec(sp)).unwrap();
        let orbits = edge_orbits(&s).unwrap();
        let len = p.defining_word().len();
        assert_eq!(orbits.len(), p.rank());
        assert_eq!(orbits.iter().map(|o| o.len()).sum::<usize>(), s.arcs.len());
        for o in &orbits {
            assert_eq!(o.len(), len);
            let label = s.arcs[o.steps[0].arc].label;
            assert!(o.arcs().iter().all(|&a| s.arcs[a].label == label));
        }
        assert!(orbits[0].render(&s).starts_with('['));
    }
}

#[test]
fn quotient_examples() {
    for (r, n) in [(2usize, 3usize), (3, 4), (5, 8), (9, 10)] {
        let q = quotient(&build_scheme(FamilySpec::H { r, n }).unwrap()).unwrap();
        assert_eq!((q.vertices, q.edges, q.faces, q.cells, q.euler_characteristic), (1, n, n, 1, 0));
        assert!(q.vertex_orbit.iter().all(|&v| v == 0));
    }
    let q = quotient(&scheme("G:5,2,10,2")).unwrap();
    assert_eq!((q.vertices, q.edges, q.faces, q.cells), (1, 10, 10, 1));
    assert_eq!(q.to_string(), "(V,E,F,C) = (1,10,10,1), chi = 0");
}

#[test]
fn pillow_fixture() {
    let s = pillow();
    let q = quotient(&s).unwrap();
    assert_eq!((q.vertices, q.edges, q.faces, q.cells, q.euler_characteristic), (2, 2, 1, 1, 0));
    assert!(seifert_threlfall(&s).unwrap());
    assert_eq!(edge_orbits(&s).unwrap().iter().map(|o| o.len()).collect::<Vec<_>>(), vec![1, 1]);
    // Gluing by the half turn swaps the two arcs and needs both labels equal.
    let mut twisted = pillow();
    twisted.pairing[0].arcs = vec![(0, 1), (1, 0)];
    assert!(matches!(edge_orbits(&twisted), Err(PolyhedraError::InconsistentPairing { .. })));
    twisted.arcs[1].label = 0;
    let q = quotient(&twisted).unwrap();
    assert_eq!((q.vertices, q.edges, q.euler_characteristic), (1, 1, 0));
}

#[test]
fn seifert_threlfall_matches_decision_on_grid() {
    let mut checked = 0;
    for n in 4..=12usize {
        for (k, l) in (1..=6).map(|k| (k, 1)).chain((2..=6).map(|l| (1, l))).chain([(5, 2), (2, 5)]) {
            for f in 0..n {
                if (f * k) % n == 2 % n {
                    continue;
                }
                let decision = spine_decision(k, l, n, f).unwrap();
                match build_scheme(FamilySpec::G { k, l, n, f }) {
                    Ok(s) => {
                        assert!(decision);
                        assert!(seifert_threlfall(&s).unwrap());
                        checked += 1;
                    }
                    Err(PolyhedraError::Hypothesis(_)) => assert!(!decision, "({k},{l},{n},{f})"),
                    Err(e) => panic!("({k},{l},{n},{f}): {e}"),
                }
            }
        }
    }
    assert!(checked >= 90, "{checked}");
}

#[test]
fn h_grid_certifies() {
    for r in 2..=10usize {
        for n in 2..=10usize {
            if num_integer::gcd(r, n) != 1 {
                assert!(build_scheme(FamilySpec::H { r, n }).is_err());
                continue;
            }
            let s = build_scheme(FamilySpec::H { r, n }).unwrap();
            assert!(validate_scheme(&s, &build_family(FamilySpec::H { r, n }).unwrap()).passed());
            assert!(seifert_threlfall(&s).unwrap(), "H({r},{n})");
        }
    }
}

#[test]
fn rejections() {
    assert!(matches!(build_scheme(spec("G:3,2,6,0")), Err(PolyhedraError::Unsupported(_))));
    assert!(matches!(build_scheme(spec("G:4,1,4,1")), Err(PolyhedraError::Hypothesis(_))));
    assert!(matches!(build_scheme(spec("G:1,1,5,0")), Err(PolyhedraError::Hypothesis(_))));
    assert!(matches!(build_scheme(spec("G:2,1,4,1")), Err(PolyhedraError::Hypothesis(_))));
    assert!(matches!(build_scheme(spec("H:2,4")), Err(PolyhedraError::Hypothesis(_))));
    assert!(matches!(build_scheme(spec("H:1,5")), Err(PolyhedraError::Hypothesis(_))));
}

#[test]
fn spine_decision_examples() {
    assert!(spine_decision(1, 1, 6, 0).unwrap());
    assert!(!spine_decision(4, 1, 4, 1).unwrap());
    assert!(!spine_decision(2, 5, 12, 3).unwrap());
    assert!(!spine_decision(1, 1, 5, 0).unwrap());
    assert!(!spine_decision(1, 1, 7, 3).unwrap());
    assert!(spine_decision(2, 1, 4, 1).is_err());
    assert!(spine_decision(3, 2, 6, 0).is_err());
    assert!(spine_decision(1, 1, 3, 0).is_err());
}

#[test]
fn odd_f_obstruction_examples() {
    let o = odd_f_obstruction(4, 1, 4, 1).unwrap();
    assert_eq!(o.duplicated_face_index, 2);
    assert!(o.trace.iter().any(|t| t.contains("F_2^-")));
    assert!(odd_f_obstruction(2, 5, 12, 6).is_err());
    assert!(odd_f_obstruction(4, 3, 8, 2).is_err());
    assert!(odd_f_obstruction(2, 4, 4, 2).is_err());
    for n in (4..=12usize).step_by(2) {
        for k in 1..=6usize {
            for l in 1..=6usize {
                for f in (1..n).step_by(2) {
                    if (f * k) % n == 0 && num_integer::gcd(k, l) == 1 {
                        let o = odd_f_obstruction(k, l, n, f).unwrap();
                        assert_eq!(o.duplicated_face_index, (l * f + 1) % n);
                        assert_eq!(o.duplicated_face_index % 2, 0);
                    }
                }
            }
        }
    }
}

#[test]
fn heegaard_examples() {
    let d = heegaard_h(3, 4).unwrap();
    assert_eq!(d.strands.len(), 12);
    let (p, mm) = d.degrees();
    assert!(p.iter().chain(&mm).all(|&x| x == 3));
    let b = d.bundles();
    assert_eq!(b.get(&(0, 1)), Some(&2));
    assert_eq!(b.get(&(0, 2)), Some(&1)); // F_0^+ -- F_{1-r}^-
    let q = rho_quotient(&d, 3).unwrap();
    assert_eq!(q, lens_space_diagram(3));
    let mut labels: Vec<(usize, usize)> = q.strands.iter().map(|s| (s.plus_label, s.minus_label)).collect();
    labels.sort();
    assert_eq!(labels, [(1, 2), (2, 3), (3, 1)]);
    assert_eq!(d.rotate(3).rotate(3).rotate(3).rotate(3), d);
    assert_eq!(rho_quotient(&heegaard_h(2, 5).unwrap(), 2).unwrap(), lens_space_diagram(2));
    for (r, n) in [(2, 3), (3, 5), (4, 5), (5, 9), (7, 3)] {
        let d = heegaard_h(r, n).unwrap();
        assert_eq!(rho_quotient(&d, r).unwrap(), lens_space_diagram(r));
        let mut rot = d.clone();
        for _ in 0..n {
            rot = rot.rotate(r);
        }
        assert_eq!(rot, d);
    }
    let mut broken = heegaard_h(3, 4).unwrap();
    broken.strands[0].minus = (broken.strands[0].minus + 1) % 4;
    assert!(matches!(rho_quotient(&broken, 3), Err(PolyhedraError::Symmetry(_))));
}

fn shift_name(name: &str, by: usize, n: usize, swap: bool) -> String {
    match name {
        "N" if swap => "S".into(),
        "S" if swap => "N".into(),
        "N" | "S" => name.into(),
        _ => {
            let (c, rest) = name.split_once('_').unwrap();
            let (idx, sup) = match rest.split_once('^') {
                Some((i, s)) => (i, Some(s)),
                None => (rest, None),
            };
            let i = (idx.parse::<usize>().unwrap() + by) % n;
            match sup {
                Some(s) => format!("{c}_{i}^{s}"),
                None => format!("{c}_{i}"),
            }
        }
    }
}

#[test]
fn theta_squared_symmetry() {
    for sp in ["H:3,8", "G:4,1,8,2", "G:5,2,10,2", "G:2,5,8,4", "F:1,4,6"] {
        let s = scheme(sp);
        let n = s.faces.len() / 2;
        let corners = |f: usize| -> Vec<String> { s.reading(f).unwrap().iter().map(|x| s.vertices[x.to].clone()).collect() };
        for (fi, face) in s.faces.iter().enumerate() {
            let target = format!("F_{}^{}", (face.relator + 2) % n, face.sign);
            let ti = s.face_index(&target).unwrap();
            let shifted: Vec<String> = corners(fi).iter().map(|v| shift_name(v, 2, n, false)).collect();
            assert_eq!(shifted, corners(ti), "{sp} {}", face.name);
        }
    }
}

#[test]
fn json_round_trip_and_dot() {
    let s = scheme("G:3,1,6,0");
    let text = s.to_json();
    for key in ["\"vertices\"", "\"arcs\"", "\"faces\"", "\"pairing\"", "\"basepoints\""] {
        assert!(text.contains(key));
    }
    assert_eq!(FacePairingScheme::from_json(&text).unwrap(), s);
    let dot = s.to_dot();
    assert!(dot.starts_with("digraph scheme {"));
    assert_eq!(dot.matches("->").count(), s.arcs.len());
}

#[test]
fn generic_embedding_scheme_for_other_shapes() {
    // Shapes without a drawn polyhedron still admit one when f is even and fk = 0.
    for sp in ["G:3,2,6,0", "G:3,4,4,0", "G:4,3,8,2"] {
        let p = build_family(spec(sp)).unwrap();
        let s = scheme_from_embedding(&p).unwrap();
        assert!(validate_scheme(&s, &p).passed());
        let q = quotient(&s).unwrap();
        assert_eq!((q.vertices, q.edges), (1, p.rank()), "{sp}");
    }
}
