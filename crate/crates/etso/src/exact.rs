//! Exact arithmetic in the ring `Q[sqrt(d_1), sqrt(d_2), ...]` extended with
//! the imaginary unit.
//!
//! Every value is a finite sum of rational multiples of square roots of
//! square-free positive integers; the radicand `1` carries the rational part.
//! This is exactly the field the printed coefficient tables live in, so table
//! entries compare bit-for-bit after canonicalization.
//!
//! Rational coefficients are arbitrary-precision ([`num_rational::BigRational`]);
//! radicands are reduced to square-free form on construction, which keeps
//! multiplication closed without ever factoring anything larger than the
//! product of two reduced radicands.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

/// Splits `n > 0` as `s^2 * f` with `f` square-free; returns `(s, f)`.
fn square_free_split(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            for _ in 0..e / 2 {
                square *= p;
            }
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // leftover n is prime (or 1)
    free *= n;
    (square, free)
}

fn rational_to_f64(q: &Rational) -> f64 {
    // Falls back to a quotient of big-int conversions; exact for the
    // magnitudes this crate produces.
    q.to_f64().unwrap_or_else(|| {
        let num = q.numer().to_f64().unwrap_or(f64::NAN);
        let den = q.denom().to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A real element `sum_d q_d * sqrt(d)` of `Q[sqrt(2), sqrt(3), ...]`.
///
/// Canonical form: every key is square-free and >= 1, no key maps to zero.
/// Equality is structural equality of the canonical term maps.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SqrtLinear {
    terms: BTreeMap<u64, Rational>,
}

impl SqrtLinear {
    pub fn zero() -> Self {
        SqrtLinear::default()
    }

    pub fn one() -> Self {
        SqrtLinear::from_int(1)
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut v = SqrtLinear::zero();
        v.add_term(1, q);
        v
    }

    pub fn from_int(n: i64) -> Self {
        SqrtLinear::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `sqrt(q)` for a nonnegative rational `q`, reduced to canonical form:
    /// `sqrt(n/d) = (s/d) * sqrt(f)` with `n*d = s^2 f`, `f` square-free.
    pub fn sqrt_rational(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Exact(format!("sqrt of negative rational {q}")));
        }
        if q.is_zero() {
            return Ok(SqrtLinear::zero());
        }
        let radicand = q.numer() * q.denom();
        let radicand = radicand
            .to_u64()
            .ok_or_else(|| Error::Exact(format!("radicand {q} too large to reduce")))?;
        let (s, f) = square_free_split(radicand);
        let coeff = Rational::new(BigInt::from(s), q.denom().clone());
        let mut v = SqrtLinear::zero();
        v.add_term(f, coeff);
        Ok(v)
    }

    fn add_term(&mut self, d: u64, q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(d).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of radical terms in canonical form.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(d, q)| (*d, q))
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_rational() {
            return Some(self.terms[&1].clone());
        }
        None
    }

    pub fn neg(&self) -> Self {
        let mut out = SqrtLinear::zero();
        for (d, q) in &self.terms {
            out.add_term(*d, -q.clone());
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (d, q) in &rhs.terms {
            out.add_term(*d, q.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = SqrtLinear::zero();
        for (d, c) in &self.terms {
            out.add_term(*d, c * q);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = SqrtLinear::zero();
        for (d1, q1) in &self.terms {
            for (d2, q2) in &rhs.terms {
                // sqrt(d1)*sqrt(d2) = g*sqrt(d1*d2/g^2), g = gcd(d1,d2);
                // the reduced radicand is a product of coprime square-free
                // factors, hence square-free.
                let g = gcd(*d1, *d2);
                let d = (d1 / g) * (d2 / g);
                out.add_term(d, q1 * q2 * Rational::from_integer(BigInt::from(g)));
            }
        }
        out
    }

    /// Division, defined when the divisor has at most two radical terms.
    ///
    /// A single term inverts directly; two terms rationalize against the
    /// conjugate. The tables never need more.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        match rhs.terms.len() {
            0 => Err(Error::Exact("division by zero".into())),
            1 => {
                let (d, q) = rhs.terms.iter().next().unwrap();
                // 1/(q*sqrt(d)) = sqrt(d)/(q*d)
                let mut inv = SqrtLinear::zero();
                inv.add_term(
                    *d,
                    Rational::one() / (q * Rational::from_integer(BigInt::from(*d))),
                );
                Ok(self.mul(&inv))
            }
            2 => {
                let mut iter = rhs.terms.iter();
                let (d1, q1) = iter.next().unwrap();
                let (_d2, _q2) = iter.next().unwrap();
                // conjugate flips the second term's sign
                let mut conj = SqrtLinear::zero();
                conj.add_term(*d1, q1.clone());
                conj = conj.sub(&{
                    let mut rest = rhs.clone();
                    rest.terms.remove(d1);
                    rest
                });
                let denom = rhs.mul(&conj);
                debug_assert!(denom.is_rational());
                let num = self.mul(&conj);
                num.div(&denom)
            }
            n => Err(Error::Exact(format!(
                "division by a {n}-term radical value is not supported"
            ))),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| rational_to_f64(q) * (*d as f64).sqrt())
            .sum()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Display for SqrtLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *d == 1 {
                write!(f, "{}", fmt_rational(q))?;
            } else {
                write!(f, "({})*sqrt({})", fmt_rational(q), d)?;
            }
        }
        Ok(())
    }
}

/// An element of the complexified field: `re + i*im` with both parts
/// [`SqrtLinear`] values.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExactComplex {
    pub re: SqrtLinear,
    pub im: SqrtLinear,
}

impl ExactComplex {
    pub fn zero() -> Self {
        ExactComplex::default()
    }

    pub fn one() -> Self {
        ExactComplex {
            re: SqrtLinear::one(),
            im: SqrtLinear::zero(),
        }
    }

    pub fn i() -> Self {
        ExactComplex {
            re: SqrtLinear::zero(),
            im: SqrtLinear::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        ExactComplex {
            re: SqrtLinear::from_int(n),
            im: SqrtLinear::zero(),
        }
    }

    /// The rational `p/q` as an exact value.
    pub fn rational(p: i64, q: i64) -> Self {
        ExactComplex {
            re: SqrtLinear::from_rational(Rational::new(BigInt::from(p), BigInt::from(q))),
            im: SqrtLinear::zero(),
        }
    }

    /// `sqrt(p/q)` for nonnegative `p/q`.
    pub fn sqrt_ratio(p: i64, q: i64) -> Result<Self> {
        let r = Rational::new(BigInt::from(p), BigInt::from(q));
        Ok(ExactComplex {
            re: SqrtLinear::sqrt_rational(&r)?,
            im: SqrtLinear::zero(),
        })
    }

    pub fn from_real(re: SqrtLinear) -> Self {
        ExactComplex {
            re,
            im: SqrtLinear::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn neg(&self) -> Self {
        ExactComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Self {
        ExactComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ExactComplex {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        ExactComplex {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        ExactComplex {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ExactComplex {
            re: self.re.scale(q),
            im: self.im.scale(q),
        }
    }

    /// `|z|^2 = re^2 + im^2`, a real value with no imaginary residue.
    pub fn abs2(&self) -> SqrtLinear {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Exact("division by zero".into()));
        }
        if rhs.is_real() {
            return Ok(ExactComplex {
                re: self.re.div(&rhs.re)?,
                im: self.im.div(&rhs.re)?,
            });
        }
        let num = self.mul(&rhs.conj());
        let den = rhs.abs2();
        Ok(ExactComplex {
            re: num.re.div(&den)?,
            im: num.im.div(&den)?,
        })
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Parses the expression grammar shared by the canonical serialization
    /// and the transcribed table cells. See [`parse_expr`].
    pub fn parse(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "i*({})", self.im),
            (false, false) => write!(f, "{} + i*({})", self.re, self.im),
        }
    }
}

impl FromStr for ExactComplex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

// ---------------------------------------------------------------------------
// Expression parser
//
// Grammar (whitespace insignificant):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | atom
//   atom   := integer | 'i' | 'sqrt' '(' expr ')' | '(' expr ')'
//
// `sqrt` requires its argument to evaluate to a nonnegative rational; values
// outside the supported field (nested radicals, sqrt of negatives) are
// rejected with an error rather than approximated.
// ---------------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            got => Err(Error::Parse(format!(
                "expected `{}` at byte {}, found {:?}",
                c as char,
                self.pos.saturating_sub(1),
                got.map(|b| b as char)
            ))),
        }
    }

    fn parse_expr(&mut self) -> Result<ExactComplex> {
        let mut acc = self.parse_term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    acc = acc.add(&self.parse_term()?);
                }
                b'-' => {
                    self.bump();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<ExactComplex> {
        let mut acc = self.parse_unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.bump();
                    acc = acc.mul(&self.parse_unary()?);
                }
                b'/' => {
                    self.bump();
                    let rhs = self.parse_unary()?;
                    acc = acc.div(&rhs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<ExactComplex> {
        if self.peek() == Some(b'-') {
            self.bump();
            return Ok(self.parse_unary()?.neg());
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<ExactComplex> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'i') => {
                // distinguish bare `i` from an identifier like `sqrt`; only
                // `i` and `sqrt` exist in the grammar
                self.bump();
                Ok(ExactComplex::i())
            }
            Some(b's') => {
                let rest = &self.bytes[self.pos..];
                if rest.starts_with(b"sqrt") {
                    self.pos += 4;
                    self.expect(b'(')?;
                    let inner = self.parse_expr()?;
                    self.expect(b')')?;
                    let q = inner
                        .re
                        .as_rational()
                        .filter(|_| inner.is_real())
                        .ok_or_else(|| {
                            Error::Exact("sqrt argument is not a nonnegative rational".into())
                        })?;
                    Ok(ExactComplex {
                        re: SqrtLinear::sqrt_rational(&q)?,
                        im: SqrtLinear::zero(),
                    })
                } else {
                    Err(Error::Parse(format!("unexpected input at byte {}", self.pos)))
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_digit())
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let n: BigInt = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer `{text}`")))?;
                Ok(ExactComplex::from_real(SqrtLinear::from_rational(
                    Rational::from_integer(n),
                )))
            }
            other => Err(Error::Parse(format!(
                "unexpected {:?} at byte {}",
                other.map(|b| b as char),
                self.pos
            ))),
        }
    }
}

/// Parses an exact-value expression such as `(1/2)*sqrt(3) + i*(2/3)` or a
/// transcribed table cell such as `2/21*(4+sqrt(6))`.
pub fn parse_expr(s: &str) -> Result<ExactComplex> {
    let mut p = Parser::new(s);
    let v = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::Parse(format!(
            "trailing input at byte {}: `{}`",
            p.pos,
            &s[p.pos.min(s.len())..]
        )));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(p: i64, q: i64) -> ExactComplex {
        ExactComplex::sqrt_ratio(p, q).unwrap()
    }

    #[test]
    fn additive_identity() {
        let x = sqrt(1, 3);
        assert_eq!(x.add(&ExactComplex::zero()), x);
    }

    #[test]
    fn square_free_reduction() {
        // sqrt(2) + sqrt(8) = 3*sqrt(2); oracle: factor 8 = 4*2, plus the
        // float image.
        let lhs = sqrt(2, 1).add(&sqrt(8, 1));
        let rhs = ExactComplex::from_int(3).mul(&sqrt(2, 1));
        assert_eq!(lhs, rhs);
        assert!((lhs.to_complex64().re - 3.0 * 2.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rationalized_denominators() {
        // 1/sqrt(5) + 2/sqrt(5) = 3/sqrt(5) = (3/5)*sqrt(5) ~ 1.3416407864998738
        let one_over = ExactComplex::one().div(&sqrt(5, 1)).unwrap();
        let two_over = ExactComplex::from_int(2).div(&sqrt(5, 1)).unwrap();
        let total = one_over.add(&two_over);
        let expected = ExactComplex::rational(3, 5).mul(&sqrt(5, 1));
        assert_eq!(total, expected);
        assert!((total.to_complex64().re - 1.3416407864998738).abs() < 1e-15);
    }

    #[test]
    fn radical_products() {
        assert_eq!(sqrt(6, 1).mul(&sqrt(6, 1)), ExactComplex::from_int(6));
        assert_eq!(sqrt(2, 1).mul(&sqrt(3, 1)), sqrt(6, 1));
    }

    #[test]
    fn complex_unit_algebra() {
        // i * (-i*sqrt(1/6)) = sqrt(1/6) = (1/6)*sqrt(6) ~ 0.4082482904638631
        let z = ExactComplex::i().mul(&ExactComplex::i().neg().mul(&sqrt(1, 6)));
        assert_eq!(z, sqrt(1, 6));
        let f = z.to_complex64();
        assert!((f.re - 0.408_248_290_463_863_1).abs() < 1e-15);
        assert_eq!(z, ExactComplex::rational(1, 6).mul(&sqrt(6, 1)));
    }

    #[test]
    fn to_float_values() {
        assert_eq!(ExactComplex::one().to_complex64(), Complex64::new(1.0, 0.0));
        assert!((sqrt(2, 3).to_complex64().re - 0.816_496_580_927_726).abs() < 1e-15);
        let z = ExactComplex::i().neg().mul(&sqrt(2, 5)).to_complex64();
        assert!(z.re.abs() < 1e-16);
        assert!((z.im - (-0.632_455_532_033_675_9)).abs() < 1e-15);
    }

    #[test]
    fn conjugation_involution_and_abs2() {
        let z = sqrt(2, 3).add(&ExactComplex::i().mul(&sqrt(1, 2)));
        assert_eq!(z.conj().conj(), z);
        let n = z.abs2();
        // |sqrt(2/3) + i*sqrt(1/2)|^2 = 2/3 + 1/2 = 7/6
        assert_eq!(
            n,
            SqrtLinear::from_rational(Rational::new(BigInt::from(7), BigInt::from(6)))
        );
    }

    #[test]
    fn division_two_term_divisor() {
        // (a + b*sqrt(2))^-1 via conjugate rationalization
        let d = ExactComplex::from_int(1).add(&sqrt(2, 1));
        let inv = ExactComplex::one().div(&d).unwrap();
        assert_eq!(inv.mul(&d), ExactComplex::one());
        // three-term divisors are rejected
        let three = ExactComplex::one().add(&sqrt(2, 1)).add(&sqrt(3, 1));
        assert!(ExactComplex::one().div(&three).is_err());
    }

    #[test]
    fn display_parse_roundtrip() {
        let cases = [
            ExactComplex::zero(),
            ExactComplex::rational(-2, 3),
            sqrt(2, 3).neg(),
            sqrt(2, 3).add(&ExactComplex::rational(1, 2)),
            ExactComplex::i().mul(&sqrt(5, 7)).neg(),
            sqrt(3, 1)
                .scale(&Rational::new(BigInt::from(-4), BigInt::from(9)))
                .add(&ExactComplex::i().mul(&sqrt(1, 2).add(&ExactComplex::rational(5, 1)))),
        ];
        for z in &cases {
            let s = z.to_string();
            let back = ExactComplex::parse(&s).unwrap();
            assert_eq!(&back, z, "roundtrip of `{s}`");
        }
    }

    #[test]
    fn parse_table_cell_shapes() {
        let v = ExactComplex::parse("2/21*(4+sqrt(6))").unwrap();
        let expected = ExactComplex::rational(2, 21)
            .mul(&ExactComplex::from_int(4).add(&sqrt(6, 1)));
        assert_eq!(v, expected);

        let v = ExactComplex::parse("-2*(-3+sqrt(6))/(7*sqrt(5))").unwrap();
        let num = ExactComplex::from_int(-2).mul(&ExactComplex::from_int(-3).add(&sqrt(6, 1)));
        let den = ExactComplex::from_int(7).mul(&sqrt(5, 1));
        assert_eq!(v, num.div(&den).unwrap());

        // nested radical: outside the field, rejected
        assert!(ExactComplex::parse("sqrt(2/5 - 2/sqrt(15))").is_err());
        assert!(ExactComplex::parse("sqrt(0-1)").is_err());
    }

    #[test]
    fn canonicalization_idempotent() {
        // adding zero or multiplying by one must leave the canonical map
        // untouched
        let z = sqrt(8, 1).add(&sqrt(2, 1)); // canonicalizes to 3*sqrt(2)
        assert_eq!(z.re.term_count(), 1);
        let again = z.add(&ExactComplex::zero()).mul(&ExactComplex::one());
        assert_eq!(z, again);
    }
}
