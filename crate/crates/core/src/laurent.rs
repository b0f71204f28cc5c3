//! Sparse Laurent polynomials in `q` with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `Σ c_k q^k`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `c q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = LaurentPoly::zero();
        for (k, c) in terms {
            out.add_term(k, &c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// The bar involution `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.coeffs.iter().all(|(&e, c)| self.coeffs.get(&-e) == Some(c))
    }

    /// Value at `q = 1`.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Whether every term has strictly positive degree.
    pub fn in_q_z_q(&self) -> bool {
        self.min_degree().is_none_or(|d| d > 0)
    }

    /// The bar-symmetric polynomial agreeing with `self` in degrees `<= 0`.
    pub fn bar_symmetric_lower_part(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&e, c) in self.coeffs.range(..=0) {
            out.add_term(e, c);
            if e < 0 {
                out.add_term(-e, c);
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (dlo, dhi) = (divisor.min_degree()?, divisor.max_degree()?);
        let lead = divisor.coeffs[&dhi].clone();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let lo = self.min_degree()?;
        while let Some(hi) = rem.max_degree() {
            if hi - (dhi - dlo) < lo {
                return None;
            }
            let c = &rem.coeffs[&hi];
            if !(c % &lead).is_zero() {
                return None;
            }
            let qc = c / &lead;
            let e = hi - dhi;
            rem = &rem - &divisor.shift(e).scale(&qc);
            quot.add_term(e, &qc);
        }
        Some(quot)
    }

    /// Whether every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }
}

/// The Gaussian integer `[k]_q = (q^k - q^{-k}) / (q - q^{-1})`, with `[0]_q = 0`.
pub fn gaussian(k: i64) -> LaurentPoly {
    let sign = k.signum();
    let m = k.abs();
    LaurentPoly::from_terms((0..m).map(|j| (m - 1 - 2 * j, BigInt::from(sign))))
}

/// `[k]_q! = [k]_q [k-1]_q ... [1]_q`.
pub fn gaussian_factorial(k: u32) -> LaurentPoly {
    (1..=k as i64).fold(LaurentPoly::one(), |acc, j| &acc * &gaussian(j))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, c) in &rhs.coeffs {
            self.add_term(k, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, c) in &rhs.coeffs {
            self.add_term(k, &-c);
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

/// JSON integer when it fits in 64 bits, decimal string otherwise.
pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(c.to_string()),
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            map.serialize_entry(&e.to_string(), &bigint_to_json(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = BTreeMap::<String, serde_json::Value>::deserialize(deserializer)?;
        let mut out = LaurentPoly::zero();
        for (k, v) in raw {
            let e: i64 = k.parse().map_err(D::Error::custom)?;
            let c: BigInt = match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("non-integer coefficient"))?,
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
                _ => return Err(D::Error::custom("coefficient must be an integer")),
            };
            out.add_term(e, &c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn gaussian_examples() {
        assert!(gaussian(0).is_zero());
        assert_eq!(gaussian(2), poly(&[(1, 1), (-1, 1)]));
        assert_eq!(gaussian(3), poly(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(gaussian(-2), poly(&[(1, -1), (-1, -1)]));
        assert_eq!(gaussian_factorial(0), LaurentPoly::one());
        assert_eq!(
            gaussian_factorial(3),
            poly(&[(3, 1), (1, 2), (-1, 2), (-3, 1)])
        );
    }

    #[test]
    fn gaussian_satisfies_defining_identity() {
        // (q - q^{-1}) [k] = q^k - q^{-k}
        let d = poly(&[(1, 1), (-1, -1)]);
        for k in -6..=6 {
            assert_eq!(&d * &gaussian(k), poly(&[(k, 1), (-k, -1)]));
        }
    }

    #[test]
    fn bar_examples() {
        assert_eq!(poly(&[(1, 1)]).bar(), poly(&[(-1, 1)]));
        let s = poly(&[(1, 1), (-1, 1)]);
        assert_eq!(s.bar(), s);
        assert!(s.is_bar_invariant());
        assert_eq!(poly(&[(3, 2), (0, -1)]).bar(), poly(&[(-3, 2), (0, -1)]));
        assert!(!poly(&[(1, 1)]).is_bar_invariant());
    }

    #[test]
    fn evaluation_and_lower_part() {
        assert_eq!(poly(&[(1, 1), (-1, 1)]).evaluate_at_one(), 2.into());
        let c = poly(&[(-2, 3), (0, 1), (1, 5), (2, 7)]);
        let n = c.bar_symmetric_lower_part();
        assert_eq!(n, poly(&[(-2, 3), (0, 1), (2, 3)]));
        assert!((&c - &n).in_q_z_q());
    }

    #[test]
    fn exact_division() {
        let f3 = gaussian_factorial(3);
        let x = poly(&[(5, 2), (0, -1), (-4, 3)]);
        assert_eq!((&x * &f3).div_exact(&f3), Some(x));
        assert_eq!(poly(&[(1, 1)]).div_exact(&gaussian(2)), None);
        assert_eq!(poly(&[(1, 1), (-1, 1)]).div_exact(&gaussian(2)), Some(LaurentPoly::one()));
    }

    #[test]
    fn json_form() {
        let p = poly(&[(0, 1), (1, 1)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"0":1,"1":1}"#);
        let big = LaurentPoly::monomial(BigInt::from(u64::MAX) * 4, -2);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, r#"{"-2":"73786976294838206460"}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), big);
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[(3, 1), (1, 2), (-1, -2), (-3, 1)]).to_string(), "q^3 + 2q - 2q^-1 + q^-3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-5i64..=5, -4i64..=4), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn bar_is_a_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!((&a * &b).evaluate_at_one(), a.evaluate_at_one() * b.evaluate_at_one());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), k in 1u32..5) {
            let d = gaussian_factorial(k);
            prop_assert_eq!((&a * &d).div_exact(&d), Some(a));
        }

        #[test]
        fn no_zero_coefficients_stored(a in arb_poly(), b in arb_poly()) {
            let c = &(&a - &b) + &b;
            prop_assert_eq!(&c, &a);
            prop_assert!(c.terms().all(|(_, x)| !x.is_zero()));
        }
    }
}
