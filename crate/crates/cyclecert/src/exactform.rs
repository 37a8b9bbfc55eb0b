//! Exact rational arithmetic and affine forms in the two parameters `t` and `i`.
//!
//! Every length, attachment position, and index bound in the construction is
//! an expression `αt + βi + γ` with rational coefficients. This module keeps
//! those expressions exact: arithmetic never rounds, overflow is detected and
//! reported rather than wrapped, and evaluation at integer `(t, i)` either
//! yields an exact integer or a [`FormError::NonIntegral`] carrying the
//! residual denominator.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from exact-form arithmetic, evaluation, and parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    /// A coefficient or intermediate value no longer fits the fixed-width
    /// representation. Detected, never wrapped.
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    /// Denominators must be nonzero.
    #[error("zero denominator")]
    ZeroDenominator,
    /// Evaluation produced a non-integer value; carries the residual
    /// denominator in lowest terms.
    #[error("value is not an integer (residual denominator {denominator})")]
    NonIntegral { denominator: i64 },
    /// The textual form grammar was violated.
    #[error("cannot parse form: {0}")]
    Parse(String),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// An exact rational in canonical form: `den > 0`, `gcd(|num|, den) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Canonicalizing constructor.
    pub fn new(num: i64, den: i64) -> Result<Self, FormError> {
        Self::from_i128(num as i128, den as i128)
    }

    /// The integer `n` as a rational.
    pub const fn int(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    fn from_i128(num: i128, den: i128) -> Result<Self, FormError> {
        if den == 0 {
            return Err(FormError::ZeroDenominator);
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i128(num, den);
        let (num, den) = if g == 0 {
            (0, 1)
        } else {
            (sign * num / g, sign * den / g)
        };
        let num = i64::try_from(num).map_err(|_| FormError::Overflow)?;
        let den = i64::try_from(den).map_err(|_| FormError::Overflow)?;
        Ok(Rational { num, den })
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn checked_add(&self, other: &Rational) -> Result<Rational, FormError> {
        let num = self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128;
        Self::from_i128(num, self.den as i128 * other.den as i128)
    }

    pub fn checked_sub(&self, other: &Rational) -> Result<Rational, FormError> {
        let num = self.num as i128 * other.den as i128 - other.num as i128 * self.den as i128;
        Self::from_i128(num, self.den as i128 * other.den as i128)
    }

    pub fn checked_mul(&self, other: &Rational) -> Result<Rational, FormError> {
        Self::from_i128(
            self.num as i128 * other.num as i128,
            self.den as i128 * other.den as i128,
        )
    }

    pub fn neg(&self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// An affine form `αt + βi + γ` with exact rational coefficients.
///
/// Equality is componentwise equality of canonical rationals; the derived
/// ordering (by `coeff_t`, then `coeff_i`, then `constant`) is used for
/// deterministic multiset comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm {
    pub coeff_t: Rational,
    pub coeff_i: Rational,
    pub constant: Rational,
}

impl AffineForm {
    pub const ZERO: AffineForm = AffineForm {
        coeff_t: Rational::ZERO,
        coeff_i: Rational::ZERO,
        constant: Rational::ZERO,
    };

    pub fn new(coeff_t: Rational, coeff_i: Rational, constant: Rational) -> Self {
        AffineForm {
            coeff_t,
            coeff_i,
            constant,
        }
    }

    /// `at + bi + c` with integer coefficients.
    pub const fn ints(a: i64, b: i64, c: i64) -> Self {
        AffineForm {
            coeff_t: Rational::int(a),
            coeff_i: Rational::int(b),
            constant: Rational::int(c),
        }
    }

    /// `(at + bi + c) / den`.
    pub fn ratio(a: i64, b: i64, c: i64, den: i64) -> Result<Self, FormError> {
        Ok(AffineForm {
            coeff_t: Rational::new(a, den)?,
            coeff_i: Rational::new(b, den)?,
            constant: Rational::new(c, den)?,
        })
    }

    /// The constant form `c`.
    pub const fn constant(c: i64) -> Self {
        Self::ints(0, 0, c)
    }

    pub fn add(&self, other: &AffineForm) -> Result<AffineForm, FormError> {
        Ok(AffineForm {
            coeff_t: self.coeff_t.checked_add(&other.coeff_t)?,
            coeff_i: self.coeff_i.checked_add(&other.coeff_i)?,
            constant: self.constant.checked_add(&other.constant)?,
        })
    }

    pub fn sub(&self, other: &AffineForm) -> Result<AffineForm, FormError> {
        Ok(AffineForm {
            coeff_t: self.coeff_t.checked_sub(&other.coeff_t)?,
            coeff_i: self.coeff_i.checked_sub(&other.coeff_i)?,
            constant: self.constant.checked_sub(&other.constant)?,
        })
    }

    /// Exact evaluation at integer `(t, i)`.
    ///
    /// The numerator is assembled in full over the common denominator and
    /// divided once at the end, so no intermediate truncation can occur.
    pub fn eval(&self, t: i64, i: i64) -> Result<i64, FormError> {
        let dt = self.coeff_t.den as i128;
        let di = self.coeff_i.den as i128;
        let dc = self.constant.den as i128;
        let den = dt
            .checked_mul(di)
            .and_then(|x| x.checked_mul(dc))
            .ok_or(FormError::Overflow)?;
        let term_t = (self.coeff_t.num as i128)
            .checked_mul(t as i128)
            .and_then(|x| x.checked_mul(di * dc))
            .ok_or(FormError::Overflow)?;
        let term_i = (self.coeff_i.num as i128)
            .checked_mul(i as i128)
            .and_then(|x| x.checked_mul(dt * dc))
            .ok_or(FormError::Overflow)?;
        let term_c = (self.constant.num as i128)
            .checked_mul(dt * di)
            .ok_or(FormError::Overflow)?;
        let num = term_t
            .checked_add(term_i)
            .and_then(|x| x.checked_add(term_c))
            .ok_or(FormError::Overflow)?;
        let g = gcd_i128(num, den);
        let (num, den) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if den != 1 {
            let denominator = i64::try_from(den).map_err(|_| FormError::Overflow)?;
            return Err(FormError::NonIntegral { denominator });
        }
        i64::try_from(num).map_err(|_| FormError::Overflow)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff_t.is_zero() && self.coeff_i.is_zero() && self.constant.is_zero()
    }
}

// Rendering: terms in the fixed order t, i, constant; zero terms omitted;
// rational coefficients as "p/q" with q omitted when 1; unit coefficients
// on t and i omitted. The all-zero form renders as "0". This string is the
// comparison key in human-readable diffs, and the grammar `FromStr` accepts.
impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (coeff, var) in [(&self.coeff_t, "t"), (&self.coeff_i, "i")] {
            if coeff.is_zero() {
                continue;
            }
            if wrote && coeff.num > 0 {
                write!(f, "+")?;
            }
            if coeff.num == -1 && coeff.den == 1 {
                write!(f, "-")?;
            } else if !(coeff.num == 1 && coeff.den == 1) {
                write!(f, "{coeff}")?;
            }
            write!(f, "{var}")?;
            wrote = true;
        }
        if !self.constant.is_zero() || !wrote {
            if wrote && self.constant.num > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}", self.constant)?;
        }
        Ok(())
    }
}

impl FromStr for AffineForm {
    type Err = FormError;

    fn from_str(s: &str) -> Result<Self, FormError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(FormError::Parse("empty form".into()));
        }
        let mut form = AffineForm::ZERO;
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let sign = match bytes[pos] {
                b'+' => {
                    pos += 1;
                    1
                }
                b'-' => {
                    pos += 1;
                    -1
                }
                _ => 1,
            };
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let int_part = &compact[start..pos];
            let mut den: i64 = 1;
            if pos < bytes.len() && bytes[pos] == b'/' {
                pos += 1;
                let dstart = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if dstart == pos {
                    return Err(FormError::Parse(format!(
                        "expected denominator digits at byte {pos} in {compact:?}"
                    )));
                }
                den = compact[dstart..pos]
                    .parse::<i64>()
                    .map_err(|_| FormError::Overflow)?;
            }
            let var = if pos < bytes.len() && (bytes[pos] == b't' || bytes[pos] == b'i') {
                let v = bytes[pos];
                pos += 1;
                Some(v)
            } else {
                None
            };
            if int_part.is_empty() && var.is_none() {
                return Err(FormError::Parse(format!(
                    "expected term at byte {start} in {compact:?}"
                )));
            }
            let num: i64 = if int_part.is_empty() {
                1
            } else {
                int_part.parse::<i64>().map_err(|_| FormError::Overflow)?
            };
            let coeff = Rational::new(sign * num, den)?;
            let slot = match var {
                Some(b't') => &mut form.coeff_t,
                Some(b'i') => &mut form.coeff_i,
                _ => &mut form.constant,
            };
            *slot = slot.checked_add(&coeff)?;
        }
        Ok(form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn form(s: &str) -> AffineForm {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Rational::new(2, 4).unwrap(), Rational::new(1, 2).unwrap());
        assert_eq!(Rational::new(3, -6).unwrap(), Rational::new(-1, 2).unwrap());
        assert_eq!(Rational::new(0, -7).unwrap(), Rational::ZERO);
        let r = Rational::new(-10, 15).unwrap();
        assert_eq!((r.numerator(), r.denominator()), (-2, 3));
        assert_eq!(Rational::new(1, 0), Err(FormError::ZeroDenominator));
    }

    #[test]
    fn table_composition_example() {
        // (11t+1)/2 + (31t-115)/2 + i = 21t + i - 57
        let spoke_len = AffineForm::ratio(11, 0, 1, 2).unwrap();
        let attach = AffineForm::ratio(31, 2, -115, 2).unwrap();
        let sum = spoke_len.add(&attach).unwrap();
        assert_eq!(sum, AffineForm::ints(21, 1, -57));
        assert_eq!(sum.to_string(), "21t+i-57");
    }

    #[test]
    fn add_identity_and_symmetry() {
        let f = form("144t+13i+1464");
        assert_eq!(f.add(&AffineForm::ZERO).unwrap(), f);
        let a = form("1/2t+1");
        let b = form("1/2t-1");
        assert_eq!(a.add(&b).unwrap(), AffineForm::ints(1, 0, 0));
    }

    #[test]
    fn eval_exact() {
        let f = AffineForm::ratio(11, 0, 1, 2).unwrap();
        assert_eq!(f.eval(9, 0).unwrap(), 50);
        assert_eq!(
            f.eval(2, 0),
            Err(FormError::NonIntegral { denominator: 2 })
        );
        let g = AffineForm::ints(144, 13, 1464);
        assert_eq!(g.eval(27889, 3486).unwrap(), 144 * 27889 + 13 * 3486 + 1464);
    }

    #[test]
    fn eval_overflow_detected() {
        let f = AffineForm::ints(i64::MAX, 0, i64::MAX);
        assert_eq!(f.eval(i64::MAX, 0), Err(FormError::Overflow));
    }

    #[test]
    fn rendering() {
        assert_eq!(AffineForm::ZERO.to_string(), "0");
        assert_eq!(AffineForm::ints(1, 0, 0).to_string(), "t");
        assert_eq!(AffineForm::ints(-1, 1, 0).to_string(), "-t+i");
        assert_eq!(AffineForm::ints(0, 0, -5).to_string(), "-5");
        assert_eq!(
            AffineForm::ratio(11, 0, 1, 2).unwrap().to_string(),
            "11/2t+1/2"
        );
        assert_eq!(
            AffineForm::ratio(1, 0, -569, 2).unwrap().to_string(),
            "1/2t-569/2"
        );
        assert_eq!(form("21t+i-57").to_string(), "21t+i-57");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<AffineForm>().is_err());
        assert!("t+".parse::<AffineForm>().is_err());
        assert!("3/".parse::<AffineForm>().is_err());
        assert!("x+1".parse::<AffineForm>().is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..60).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn arb_form() -> impl Strategy<Value = AffineForm> {
        (arb_rational(), arb_rational(), arb_rational())
            .prop_map(|(a, b, c)| AffineForm::new(a, b, c))
    }

    proptest! {
        #[test]
        fn canonicalization_idempotent(n in -10_000i64..10_000, d in 1i64..500) {
            let r = Rational::new(n, d).unwrap();
            let again = Rational::new(r.numerator(), r.denominator()).unwrap();
            prop_assert_eq!(r, again);
        }

        #[test]
        fn render_parse_roundtrip(f in arb_form()) {
            let parsed: AffineForm = f.to_string().parse().unwrap();
            prop_assert_eq!(f, parsed);
        }

        #[test]
        fn eval_distributes_over_add(
            f in arb_form(),
            g in arb_form(),
            t in -10_000i64..10_000,
            i in -10_000i64..10_000,
        ) {
            let sum = f.add(&g).unwrap();
            // Scale t and i so each side is integral: evaluate at multiples of
            // the denominators' lcm by brute force (use den product).
            let scale = (f.coeff_t.denominator() * g.coeff_t.denominator()
                * f.coeff_i.denominator() * g.coeff_i.denominator()
                * f.constant.denominator() * g.constant.denominator()) as i64;
            let (t, i) = (t * scale, i * scale);
            if let (Ok(a), Ok(b)) = (f.eval(t, i), g.eval(t, i)) {
                // constant term may still be fractional; only compare when all
                // three evaluate integrally
                if let Ok(s) = sum.eval(t, i) {
                    prop_assert_eq!(s, a + b);
                }
            }
        }
    }
}
