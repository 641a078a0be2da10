use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use spine::homology::*;
use spine::presentations::{build_family, CyclicPresentation, FamilySpec, Word};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

// ---- oracle: resultant through the Euclidean remainder sequence over Q ----

fn rat_poly(p: &IntPolynomial) -> Vec<BigRational> {
    p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.last().unwrap().clone() / b[db].clone();
        let shift = r.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - lead.clone() * c.clone();
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn oracle_resultant(p: &IntPolynomial, q: &IntPolynomial) -> BigInt {
    let mut a = rat_poly(p);
    let mut b = rat_poly(q);
    let mut acc = BigRational::one();
    loop {
        let (m, n) = (a.len() - 1, b.len() - 1);
        if n == 0 {
            let mut v = acc;
            for _ in 0..m {
                v = v * b[0].clone();
            }
            assert!(v.is_integer());
            return v.to_integer().abs();
        }
        let r = rem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
        let dr = r.len() - 1;
        for _ in 0..(m - dr) {
            acc = acc * b[n].clone();
        }
        a = b;
        b = r;
    }
}

#[test]
fn resultant_hand_values() {
    assert_eq!(resultant(&poly(&[1, 1]), &IntPolynomial::binomial(3, -1)).unwrap(), big(2));
    assert_eq!(resultant(&poly(&[-1, 1]), &IntPolynomial::binomial(3, -1)).unwrap(), big(0));
    assert_eq!(resultant(&poly(&[1, 3, -1]), &IntPolynomial::binomial(3, -1)).unwrap(), big(36));
    assert_eq!(resultant(&poly(&[5]), &poly(&[1, 0, 1])).unwrap(), big(25));
    assert_eq!(resultant(&poly(&[5]), &poly(&[7])).unwrap(), big(1));
    assert!(resultant(&IntPolynomial::zero(), &poly(&[1, 1])).is_err());
}

#[test]
fn resultant_matches_prs_oracle() {
    let samples: &[&[i64]] = &[&[1, 3, -1], &[2, 0, 0, 1], &[-4, 7, 1, 0, 3], &[1, 1, 1, 1], &[0, 2, -1], &[6, -1]];
    for a in samples {
        for b in samples {
            let (p, q) = (poly(a), poly(b));
            assert_eq!(resultant(&p, &q).unwrap(), oracle_resultant(&p, &q), "{p} / {q}");
        }
    }
}

#[test]
fn resultant_split_examples() {
    let p0 = poly(&[1, 2, -1]);
    assert_eq!(resultant_split(&p0, 4).unwrap(), (big(4), big(8)));
    let p2 = representer_polynomial(&build_family(FamilySpec::G { k: 2, l: 1, n: 4, f: 2 }).unwrap());
    assert_eq!(resultant_split(&p2, 4).unwrap(), (big(4), big(4)));
    assert_eq!(resultant_split(&IntPolynomial::one(), 6).unwrap(), (big(1), big(1)));
    assert!(resultant_split(&p0, 5).is_err());
}

#[test]
fn representer_polynomials() {
    let f31 = build_family(FamilySpec::F { k: 3, l: 1, n: 3 }).unwrap();
    assert_eq!(representer_polynomial(&f31), poly(&[1, 3, -1]));
    let h = build_family(FamilySpec::H { r: 4, n: 7 }).unwrap();
    assert_eq!(representer_polynomial(&h), poly(&[1, 1, 1, 1]));
    // p_f(t) = (1 - t^2)(1 + t^f + … + t^{(l-1)f}) + t^{lf+1}(1 + … + t^{(k-1)f}) mod t^n - 1
    for (k, l, n, f) in [(5, 2, 10, 2), (2, 3, 8, 4), (3, 1, 6, 2)] {
        let mut geo_l = vec![0i64; (l - 1) * f + 1];
        for a in 0..l {
            geo_l[a * f] += 1;
        }
        let mut geo_k = vec![0i64; l * f + 1 + (k - 1) * f + 1];
        for b in 0..k {
            geo_k[l * f + 1 + b * f] += 1;
        }
        let want = poly(&[1, 0, -1]).mul(&poly(&geo_l)).add(&poly(&geo_k)).fold_mod_cyclotomic(n);
        let got = representer_polynomial(&build_family(FamilySpec::G { k, l, n, f }).unwrap());
        assert_eq!(got, want, "({k},{l},{n},{f})");
    }
}

#[test]
fn abelian_invariant_examples() {
    let h23 = abelian_invariants(&build_family(FamilySpec::H { r: 2, n: 3 }).unwrap());
    assert_eq!(h23, AbelianInvariants { torsion: vec![big(2)], free_rank: 0 });
    let h24 = abelian_invariants(&build_family(FamilySpec::H { r: 2, n: 4 }).unwrap());
    assert!(h24.free_rank >= 1);
    let q8 = abelian_invariants(&build_family(FamilySpec::F { k: 1, l: 1, n: 3 }).unwrap());
    assert_eq!(q8, AbelianInvariants { torsion: vec![big(2), big(2)], free_rank: 0 });
}

#[test]
fn abelianization_orders() {
    for l in 1..=5i64 {
        let p = build_family(FamilySpec::G { k: 1, l: l as usize, n: 4, f: 0 }).unwrap();
        assert_eq!(abelianization_order(&p), Order::Finite(big(4 * l * l + 1)));
    }
    let f31 = build_family(FamilySpec::F { k: 3, l: 1, n: 3 }).unwrap();
    assert_eq!(abelianization_order(&f31), Order::Finite(big(36)));
    assert_eq!(BigInt::from(3528).mod_floor(&big(36)), big(0));
    let fib6 = build_family(FamilySpec::F { k: 1, l: 1, n: 6 }).unwrap();
    assert_eq!(abelianization_order(&fib6), Order::Finite(big(16)));
    let comm = CyclicPresentation::new(Word::parse("x0 x1 x0^-1 x1^-1", Some(2)).unwrap());
    assert_eq!(abelianization_order(&comm), Order::Infinite);
    assert_eq!(abelian_invariants(&comm).free_rank, 2);
}

/// gcd of all i×i minors, by brute force.
fn determinantal_divisor(m: &[Vec<BigInt>], i: usize) -> BigInt {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for rest in combos(n, k - 1) {
                if rest.first().map_or(true, |&r| r > first) {
                    let mut v = vec![first];
                    v.extend(rest);
                    out.push(v);
                }
            }
        }
        out
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut g = BigInt::zero();
    for rs in combos(rows, i) {
        for cs in combos(cols, i) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            g = g.gcd(&bareiss_determinant(sub));
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_matches_determinantal_divisors(
        rows in 1usize..4, cols in 1usize..4,
        vals in prop::collection::vec(-9i64..10, 16)
    ) {
        let m: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| big(vals[i * 4 + j])).collect()).collect();
        let d = smith_diagonal(m.clone());
        let mut prod = BigInt::one();
        for i in 0..d.len() {
            prod *= &d[i];
            prop_assert_eq!(prod.clone(), determinantal_divisor(&m, i + 1));
            if i + 1 < d.len() && !d[i + 1].is_zero() {
                prop_assert!(d[i + 1].is_multiple_of(&d[i]));
            }
        }
    }

    #[test]
    fn resultant_agrees_with_oracle(a in prop::collection::vec(-6i64..7, 1..6), b in prop::collection::vec(-6i64..7, 1..6)) {
        let (p, q) = (poly(&a), poly(&b));
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!(resultant(&p, &q).unwrap(), oracle_resultant(&p, &q));
    }

    #[test]
    fn split_is_multiplicative(a in prop::collection::vec(-6i64..7, 1..7), half in 1usize..7) {
        let p = poly(&a);
        prop_assume!(!p.is_zero());
        let n = 2 * half;
        let (x, y) = resultant_split(&p, n).unwrap();
        prop_assert_eq!(x * y, resultant(&p, &IntPolynomial::binomial(n, -1)).unwrap());
    }
}

/// `l^m(α^m + ᾱ^m)` as a power sum of the roots of `l x² - k x - l`, scaled:
/// with `β = lα`, β satisfies `β² - kβ - l² = 0`, so power sums follow Newton's identities.
fn lucas_by_newton(k: i64, l: i64, m: usize) -> BigInt {
    let e1 = big(k);
    let e2 = big(-l * l);
    let mut p: Vec<BigInt> = vec![big(2), e1.clone()];
    for j in 2..=m {
        let v = &e1 * &p[j - 1] - &e2 * &p[j - 2];
        p.push(v);
    }
    p[m].clone()
}

#[test]
fn lucas_values() {
    assert_eq!(lucas_value(FractionalParams::new(3, 2), 0), big(2));
    assert_eq!(lucas_value(FractionalParams::new(2, 1), 2), big(6));
    let lucas: Vec<BigInt> = (0..8).map(|m| lucas_value(FractionalParams::new(1, 1), m)).collect();
    assert_eq!(lucas, [2, 1, 3, 4, 7, 11, 18, 29].map(big));
    for k in 1..7 {
        for l in 1..6 {
            for m in 0..12 {
                assert_eq!(lucas_value(FractionalParams::new(k as usize, l as usize), m), lucas_by_newton(k, l, m));
            }
        }
    }
}

#[test]
fn lemma42_examples() {
    let r = lemma42_closed_forms(FractionalParams::new(2, 1), 4).unwrap();
    assert_eq!((r.res_f0_plus.clone(), r.res_fhalf_plus.clone(), r.res_common_minus.clone()), (big(8), big(4), big(4)));
    assert!(r.holds());
    let r = lemma42_closed_forms(FractionalParams::new(2, 1), 6).unwrap();
    assert_eq!(r.res_fhalf_plus, big(0));
    assert_eq!(r.direct_fhalf_plus, big(0));
    let r = lemma42_closed_forms(FractionalParams::new(2, 3), 4).unwrap();
    assert_eq!(r.res_fhalf_plus, big(36));
    // p_2 = 1 + t - t^2 + t^3 ≡ 2 mod t^2 + 1, so the direct value is 2^2
    assert_eq!(r.direct_fhalf_plus, big(4));
    assert!(!r.holds());
    assert!(r.holds_corrected());
    assert!(r.distinguishes());
    assert!(lemma42_closed_forms(FractionalParams::new(3, 1), 4).is_err());
    assert!(lemma42_closed_forms(FractionalParams::new(2, 1), 5).is_err());
}

#[test]
fn distinguish_examples() {
    assert!(distinguish_f0_fhalf(FractionalParams::new(2, 1), 4).unwrap());
    assert!(distinguish_f0_fhalf(FractionalParams::new(2, 3), 4).unwrap());
    assert!(distinguish_f0_fhalf(FractionalParams::new(4, 1), 6).unwrap());
    assert!(distinguish_f0_fhalf(FractionalParams::new(4, 2), 6).is_err());
    assert!(distinguish_f0_fhalf(FractionalParams::new(3, 1), 6).is_err());
}

#[test]
fn order_display() {
    assert_eq!(Order::Infinite.to_string(), "INFINITE");
    assert_eq!(Order::from_resultant(big(17)).to_string(), "17");
    assert_eq!(poly(&[1, 3, -1]).to_string(), "1 + 3t - t^2");
    assert!(!poly(&[0, 0]).coeffs().iter().any(|c| c.is_negative()));
}
