use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// A Gaussian rational: re + im*i with exact rational parts.
///
/// This is the coefficient field for the whole workbench. All arithmetic is
/// exact; equality is literal equality of the reduced fractions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    /// num/den as a real scalar. den must be nonzero.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
        )
    }

    /// (re_num/re_den) + (im_num/im_den) i. Denominators must be nonzero.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        assert!(re_den != 0 && im_den != 0, "zero denominator");
        Scalar::new(
            Rational::new(BigInt::from(re_num), BigInt::from(re_den)),
            Rational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// re^2 + im^2, the squared modulus. Exact, and zero only at zero.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(Scalar::new(&self.re / &n, -&self.im / &n))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, k: i64) -> Result<Scalar> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Total order by (re, im), used only to make sort orders canonical.
    pub fn lex_cmp(&self, other: &Scalar) -> Ordering {
        self.re
            .cmp(&other.re)
            .then_with(|| self.im.cmp(&other.im))
    }

    /// |z| as a float, for display and float-tolerance checks.
    pub fn modulus_f64(&self) -> f64 {
        self.norm_sq().to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// |z| as an exact rational when the squared modulus is a perfect square.
    pub fn modulus_exact(&self) -> Option<Rational> {
        rational_sqrt(&self.norm_sq())
    }
}

/// Exact square root of a nonnegative rational, when one exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |a, b| Scalar::new(&a.re + &b.re, &a.im + &b.im));
scalar_binop!(Sub, sub, |a, b| Scalar::new(&a.re - &b.re, &a.im - &b.im));
scalar_binop!(Mul, mul, |a, b| {
    // Real factors are the common case; the cross terms vanish for them.
    if a.im.is_zero() && b.im.is_zero() {
        Scalar::new(&a.re * &b.re, Rational::zero())
    } else {
        Scalar::new(
            &a.re * &b.re - &a.im * &b.im,
            &a.re * &b.im + &a.im * &b.re,
        )
    }
});

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut wrote_re = false;
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            wrote_re = true;
        }
        if !self.im.is_zero() {
            let mag = self.im.abs();
            let sign = if self.im.is_negative() {
                "-"
            } else if wrote_re {
                "+"
            } else {
                ""
            };
            if mag.is_one() {
                write!(f, "{sign}i")?;
            } else {
                write!(f, "{sign}{mag}i")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi` with rational a, b; `b*i`, `b i` and
    /// bare `i` also work, as does either part coming first.
    fn from_str(s: &str) -> Result<Scalar> {
        let mut p = ScalarParser::new(s);
        let v = p.parse_scalar()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v)
    }
}

/// Parses a scalar literal at the start of `text`, returning the value and
/// the number of bytes consumed. Wider grammars embedding scalars resume
/// scanning after the consumed prefix.
pub fn scan_scalar(text: &str) -> Result<(Scalar, usize)> {
    let mut p = ScalarParser::new(text);
    let value = p.parse_scalar()?;
    Ok((value, p.position()))
}

/// Cursor-based parser for scalar literals. Also used as a building block by
/// element literal parsers, which hand it a slice and track offsets.
pub(crate) struct ScalarParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

enum Part {
    Re(Rational),
    Im(Rational),
}

impl<'a> ScalarParser<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        ScalarParser {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::ScalarParse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_sign(&mut self) -> i32 {
        if self.eat(b'+') {
            1
        } else if self.eat(b'-') {
            -1
        } else {
            1
        }
    }

    fn parse_digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a digit"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        BigInt::from_str(text).map_err(|e| Error::ScalarParse {
            offset: start,
            message: e.to_string(),
        })
    }

    fn parse_rational(&mut self) -> Result<Rational> {
        let num = self.parse_digits()?;
        if self.eat(b'/') {
            let den_at = self.pos;
            let den = self.parse_digits()?;
            if den.is_zero() {
                return Err(Error::ScalarParse {
                    offset: den_at,
                    message: "zero denominator".to_string(),
                });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// One signed part: a rational, an imaginary rational, or bare `i`.
    fn parse_part(&mut self) -> Result<Part> {
        let sign = self.parse_sign();
        self.skip_ws();
        if self.eat(b'i') {
            let one = Rational::one();
            return Ok(Part::Im(if sign < 0 { -one } else { one }));
        }
        let mag = self.parse_rational()?;
        let mag = if sign < 0 { -mag } else { mag };
        // `3/4i`, `3/4*i`, `3/4 i` all mean the imaginary part 3/4.
        let save = self.pos;
        self.skip_ws();
        let starred = self.eat(b'*');
        if starred {
            self.skip_ws();
        }
        if self.eat(b'i') {
            Ok(Part::Im(mag))
        } else {
            // Not an imaginary part after all. Hand back everything past
            // the magnitude, star included: callers embedding scalars in a
            // larger grammar get to reuse it.
            self.pos = save;
            Ok(Part::Re(mag))
        }
    }

    pub(crate) fn parse_scalar(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let mut re: Option<Rational> = None;
        let mut im: Option<Rational> = None;
        let first = self.parse_part()?;
        match first {
            Part::Re(r) => re = Some(r),
            Part::Im(r) => im = Some(r),
        }
        let save = self.pos;
        self.skip_ws();
        let mut took_second = false;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            // The continuation is tentative: in a host grammar the sign may
            // start the next term instead, so anything that fails to extend
            // this literal is handed back rather than reported.
            match self.parse_part() {
                Ok(Part::Re(r)) if re.is_none() => {
                    re = Some(r);
                    took_second = true;
                }
                Ok(Part::Im(r)) if im.is_none() => {
                    im = Some(r);
                    took_second = true;
                }
                _ => {}
            }
        }
        if !took_second {
            self.pos = save;
        }
        Ok(Scalar::new(
            re.unwrap_or_else(Rational::zero),
            im.unwrap_or_else(Rational::zero),
        ))
    }

    pub(crate) fn position(&self) -> usize {
        self.pos
    }
}

/// A scalar of modulus exactly one, the twist values for l1 characters.
///
/// Exactness forces these onto rational points of the circle (re^2 + im^2
/// = 1), which include the fourth roots of unity and every Pythagorean
/// point such as 3/5 + 4/5 i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitScalar(Scalar);

impl UnitScalar {
    pub fn new(z: Scalar) -> Result<Self> {
        let n = z.norm_sq();
        if n.is_one() {
            Ok(UnitScalar(z))
        } else {
            Err(Error::NotUnitModulus {
                text: z.to_string(),
                norm_sq_text: n.to_string(),
            })
        }
    }

    pub fn one() -> Self {
        UnitScalar(Scalar::one())
    }

    pub fn i() -> Self {
        UnitScalar(Scalar::i())
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    /// z^n for any integer n; negative powers conjugate, since |z| = 1.
    pub fn pow(&self, n: i64) -> Scalar {
        let base = if n < 0 { self.0.conj() } else { self.0.clone() };
        base.powi(n.unsigned_abs() as i64)
            .expect("unit scalars are nonzero")
    }
}

impl fmt::Display for UnitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
