//! Generating pairs `(P, Q) = (𝒫_{n+1}(x+c), 𝒫_n(x+c))` translated so that
//! `Q` has no `x^{n−1}` term.

use serde::{Deserialize, Serialize};

use super::{AMSequence, GenError};
use crate::exactalg::{BigRat, Poly};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedPair {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "P")]
    pub p: Poly,
    #[serde(rename = "Q")]
    pub q: Poly,
    pub shift: BigRat,
}

/// `c = −[x^{n−1}]𝒫_n / n` (zero for `n = 0`), so that `𝒫_n(x + c)` has a
/// vanishing subleading coefficient.
pub fn normalizing_shift(pn: &Poly, n: usize) -> BigRat {
    if n == 0 {
        return BigRat::zero();
    }
    -(pn.coeff(n - 1) / BigRat::from(n as i64))
}

pub fn normalized_pair(n: usize, seq: &AMSequence) -> Result<NormalizedPair, GenError> {
    let (Some(pn), Some(pn1)) = (seq.poly(n), seq.poly(n + 1)) else {
        return Err(GenError::IndexOutOfRange(n + 1));
    };
    let shift = normalizing_shift(&pn, n);
    Ok(NormalizedPair {
        m: n + 1,
        n,
        p: pn1.shift(&shift),
        q: pn.shift(&shift),
        shift,
    })
}

/// The rational `s` with `from(x + s) = to(x)`, if one exists. Both inputs
/// must share degree and leading coefficient.
pub fn translation_between(from: &Poly, to: &Poly) -> Option<BigRat> {
    let d = from.degree()?;
    if to.degree() != Some(d) || from.leading() != to.leading() {
        return None;
    }
    if d == 0 {
        return Some(BigRat::zero());
    }
    // [x^{d−1}] from(x+s) = f_{d−1} + d·s·lc
    let lc = from.leading()?.clone();
    let s = (to.coeff(d - 1) - from.coeff(d - 1)) / (BigRat::from(d as i64) * lc);
    (from.shift(&s) == *to).then_some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genpoly::Route;

    #[test]
    fn first_pairs() {
        let seq = AMSequence::generate(4, Route::Wronskian).unwrap();
        let p1 = normalized_pair(1, &seq).unwrap();
        assert_eq!(p1.p, Poly::from_ints(&[2, -2, 1]));
        assert_eq!(p1.q, Poly::x());
        assert_eq!(p1.shift, BigRat::zero());

        let p2 = normalized_pair(2, &seq).unwrap();
        assert_eq!(p2.q, Poly::from_ints(&[1, 0, 1]));
        assert_eq!(p2.shift, BigRat::one());
        assert!(normalized_pair(4, &seq).is_err());
    }

    #[test]
    fn translation_detection() {
        let a = Poly::from_ints(&[2, -2, 1]);
        let b = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(translation_between(&a, &b), Some(BigRat::one()));
        assert_eq!(translation_between(&b, &a), Some(BigRat::from(-1)));
        assert_eq!(translation_between(&a, &Poly::from_ints(&[5, 0, 1])), None);
        assert_eq!(translation_between(&a, &Poly::x()), None);
    }

    #[test]
    fn json_shape() {
        let seq = AMSequence::generate(3, Route::Wronskian).unwrap();
        let pair = normalized_pair(2, &seq).unwrap();
        let v = serde_json::to_value(&pair).unwrap();
        assert_eq!(v["P"], serde_json::json!(["-3/2", "7/2", "-2", "1"]));
        assert_eq!(v["Q"], serde_json::json!(["1", "0", "1"]));
        assert_eq!(v["shift"], "1");
        let back: NormalizedPair = serde_json::from_value(v).unwrap();
        assert_eq!(back, pair);
    }
}
