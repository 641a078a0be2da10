use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Signed};
use serde::{Deserialize, Serialize};

use super::{representer_polynomial, resultant, HomologyError, IntPolynomial, Order};
use crate::homology::abelianization_order;
use crate::presentations::{build_family, FamilySpec};

/// The pair `(k, l)` of a fractional family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FractionalParams {
    pub k: usize,
    pub l: usize,
}

impl FractionalParams {
    pub fn new(k: usize, l: usize) -> Self {
        FractionalParams { k, l }
    }
}

/// `L_m = l^m (α^m + ᾱ^m)` through `L_0 = 2, L_1 = k, L_m = k L_{m-1} + l² L_{m-2}`.
pub fn lucas_value(fp: FractionalParams, m: usize) -> BigInt {
    let k = BigInt::from(fp.k);
    let l2 = BigInt::from(fp.l * fp.l);
    let (mut a, mut b) = (BigInt::from(2), k.clone());
    if m == 0 {
        return a;
    }
    for _ in 1..m {
        let c = &k * &b + &l2 * &a;
        a = b;
        b = c;
    }
    b
}

/// Closed forms next to the resultants they predict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma42Record {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    /// `|l^{n/2}((-1)^{n/2} + 1) + L_{n/2}|`
    pub res_f0_plus: BigInt,
    /// `Res(p_0, t^{n/2} + 1)`
    pub direct_f0_plus: BigInt,
    /// `2 l^{n/2} (1 + (-1)^{n/2})`
    pub res_fhalf_plus: BigInt,
    /// `Res(p_{n/2}, t^{n/2} + 1)`
    pub direct_fhalf_plus: BigInt,
    /// `2 (1 + (-1)^{n/2})`: modulo `t^{n/2} + 1` the factor `1 + t^f + …` collapses to 1, not l
    pub res_fhalf_plus_corrected: BigInt,
    /// `Res(p_0, t^{n/2} - 1)`
    pub res_common_minus: BigInt,
    /// `Res(p_{n/2}, t^{n/2} - 1)`
    pub direct_fhalf_minus: BigInt,
}

impl Lemma42Record {
    /// Both closed forms match, and the minus factors agree.
    pub fn holds(&self) -> bool {
        self.res_f0_plus == self.direct_f0_plus
            && self.res_fhalf_plus == self.direct_fhalf_plus
            && self.res_common_minus == self.direct_fhalf_minus
    }

    /// As [`Self::holds`] but with the corrected `f = n/2` value.
    pub fn holds_corrected(&self) -> bool {
        self.res_f0_plus == self.direct_f0_plus
            && self.res_fhalf_plus_corrected == self.direct_fhalf_plus
            && self.res_common_minus == self.direct_fhalf_minus
    }

    /// `Res(p_0, t^n - 1) != Res(p_{n/2}, t^n - 1)`, from the direct values.
    pub fn distinguishes(&self) -> bool {
        &self.res_common_minus * &self.direct_f0_plus != &self.direct_fhalf_minus * &self.direct_fhalf_plus
    }
}

fn p_f(k: usize, l: usize, n: usize, f: usize) -> IntPolynomial {
    let p = build_family(FamilySpec::G { k, l, n, f }).expect("valid parameters");
    representer_polynomial(&p)
}

pub fn lemma42_closed_forms(fp: FractionalParams, n: usize) -> Result<Lemma42Record, HomologyError> {
    let FractionalParams { k, l } = fp;
    if n < 2 || n % 2 != 0 {
        return Err(HomologyError::OddDegree(n));
    }
    if k == 0 || k % 2 != 0 || l == 0 || l % 2 == 0 {
        return Err(HomologyError::Hypothesis(format!("need k even and l odd, got k={k}, l={l}")));
    }
    let h = n / 2;
    let lh: BigInt = Pow::pow(BigInt::from(l), h);
    let sign = if h % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
    let closed_f0: BigInt = (&lh * (&sign + BigInt::from(1)) + lucas_value(fp, h)).abs();
    let closed_fhalf = BigInt::from(2) * &lh * (BigInt::from(1) + &sign);
    let plus = IntPolynomial::binomial(h, 1);
    let minus = IntPolynomial::binomial(h, -1);
    let p0 = p_f(k, l, n, 0);
    let ph = p_f(k, l, n, h);
    Ok(Lemma42Record {
        k,
        l,
        n,
        res_f0_plus: closed_f0,
        direct_f0_plus: resultant(&p0, &plus)?,
        res_fhalf_plus: closed_fhalf,
        direct_fhalf_plus: resultant(&ph, &plus)?,
        res_fhalf_plus_corrected: BigInt::from(2) * (BigInt::from(1) + &sign),
        res_common_minus: resultant(&p0, &minus)?,
        direct_fhalf_minus: resultant(&ph, &minus)?,
    })
}

/// Whether the abelianizations of `G(k,l,n,0)` and `G(k,l,n,n/2)` differ in order.
pub fn distinguish_f0_fhalf(fp: FractionalParams, n: usize) -> Result<bool, HomologyError> {
    let FractionalParams { k, l } = fp;
    if n < 2 || n % 2 != 0 {
        return Err(HomologyError::OddDegree(n));
    }
    if k == 0 || l == 0 || k % 2 != 0 || k.gcd(&l) != 1 {
        return Err(HomologyError::Hypothesis(format!("need k even and gcd(k,l)=1, got k={k}, l={l}")));
    }
    let order = |f| abelianization_order(&build_family(FamilySpec::G { k, l, n, f }).expect("valid"));
    let (a, b): (Order, Order) = (order(0), order(n / 2));
    Ok(a != b)
}
