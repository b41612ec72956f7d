//! Literal parsers for the command line: crossed-product elements, Laurent
//! polynomials, degree windows, and comma-separated lists. All element
//! errors carry a byte offset into the original text.

use crossed_core::error::{Error, Result};
use crossed_core::scalar::scan_scalar;
use crossed_core::{CrossedElement, Func, Scalar};

/// Degrees past this bound are rejected outright; windows this wide would
/// never materialize anyway.
pub const DEGREE_LIMIT: i64 = 1_000_000;

fn parse_error(offset: usize, message: impl Into<String>) -> Error {
    Error::ScalarParse {
        offset,
        message: message.into(),
    }
}

fn shift_offset(e: Error, by: usize) -> Error {
    match e {
        Error::ScalarParse { offset, message } => Error::ScalarParse {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

fn find_close_paren(bytes: &[u8], open: usize) -> Option<usize> {
    let mut depth = 0usize;
    for (i, &b) in bytes.iter().enumerate().skip(open) {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

struct Cursor<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    /// Unsigned decimal integer, for point indices.
    fn parse_index(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(parse_error(self.pos, "expected a point index"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| parse_error(start, "point index too large"))
    }

    /// Signed decimal integer, for degree exponents; bounded.
    fn parse_exponent(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start || !self.bytes[self.pos - 1].is_ascii_digit() {
            return Err(parse_error(self.pos, "expected an integer exponent"));
        }
        let value: i64 = self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::DegreeOverflow {
                limit: DEGREE_LIMIT,
            })?;
        if value.abs() > DEGREE_LIMIT {
            return Err(Error::DegreeOverflow {
                limit: DEGREE_LIMIT,
            });
        }
        Ok(value)
    }

    /// Scalar literal starting here; leaves the cursor after it.
    fn parse_scalar(&mut self) -> Result<Scalar> {
        let (value, used) =
            scan_scalar(&self.text[self.pos..]).map_err(|e| shift_offset(e, self.pos))?;
        self.pos += used;
        Ok(value)
    }
}

/// Parses the element grammar: terms joined by `+`/`-`, each term a
/// product of at most one atom (`e<index>`, `1`, or a parenthesized
/// expression) with optional scalar factors before it and `d`-power
/// factors after it. `e0*d^1`, `1/2*e2 + e0*d^-2`, `(1+i)*e0*d`, and
/// `(e0 + e1)*d^2` all parse; re-parsing a printed element gives back an
/// equal value.
pub fn parse_element(text: &str, size: usize) -> Result<CrossedElement> {
    let mut cur = Cursor::new(text);
    let out = parse_expr(&mut cur, size)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(parse_error(cur.pos, "unexpected trailing input"));
    }
    Ok(out)
}

fn parse_expr(cur: &mut Cursor, size: usize) -> Result<CrossedElement> {
    let mut out = CrossedElement::zero(size);
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.at_end() {
            if first {
                return Err(parse_error(cur.pos, "empty element literal"));
            }
            break;
        }
        let mut negate = false;
        if !first {
            match cur.peek() {
                Some(b'+') => cur.pos += 1,
                Some(b'-') => {
                    negate = true;
                    cur.pos += 1;
                }
                _ => {
                    return Err(parse_error(cur.pos, "expected `+` or `-` between terms"));
                }
            }
        } else if cur.eat(b'-') {
            negate = true;
        }
        let term = parse_term(cur, size)?;
        out = if negate { &out - &term } else { &out + &term };
        first = false;
    }
    Ok(out)
}

/// One term: scalar factors, at most one atom, then `d`-power factors,
/// separated by optional `*`. The `d` powers shift degrees and therefore
/// must come after the atom.
fn parse_term(cur: &mut Cursor, size: usize) -> Result<CrossedElement> {
    let mut coeff = Scalar::from_int(1);
    let mut atom: Option<CrossedElement> = None;
    let mut shift: i64 = 0;
    let mut seen_d = false;
    let mut seen_any = false;
    loop {
        cur.skip_ws();
        match cur.peek() {
            None | Some(b'+') | Some(b'-') => break,
            Some(b'*') => {
                cur.pos += 1;
                continue;
            }
            Some(b'e') => {
                if atom.is_some() {
                    return Err(parse_error(cur.pos, "a term holds at most one atom"));
                }
                if seen_d {
                    return Err(parse_error(cur.pos, "d-powers must follow the atom"));
                }
                cur.pos += 1;
                let start = cur.pos;
                let idx = cur.parse_index()?;
                if idx >= size {
                    return Err(shift_offset(
                        Error::PointOutOfRange {
                            point: idx,
                            size,
                        },
                        start,
                    ));
                }
                atom = Some(CrossedElement::monomial(0, Func::point_mass(size, idx)));
            }
            Some(b'd') => {
                cur.pos += 1;
                seen_d = true;
                let power = if cur.eat(b'^') { cur.parse_exponent()? } else { 1 };
                shift = shift
                    .checked_add(power)
                    .filter(|s| s.abs() <= DEGREE_LIMIT)
                    .ok_or(Error::DegreeOverflow {
                        limit: DEGREE_LIMIT,
                    })?;
            }
            Some(b'(') => {
                let open = cur.pos;
                let close = find_close_paren(cur.bytes, open)
                    .ok_or_else(|| parse_error(open, "unclosed parenthesis"))?;
                let inner = &cur.text[open + 1..close];
                if let Ok(c) = inner.parse::<Scalar>() {
                    coeff = &coeff * &c;
                } else {
                    if atom.is_some() {
                        return Err(parse_error(open, "a term holds at most one atom"));
                    }
                    if seen_d {
                        return Err(parse_error(open, "d-powers must follow the atom"));
                    }
                    let mut sub = Cursor::new(inner);
                    let group =
                        parse_expr(&mut sub, size).map_err(|e| shift_offset(e, open + 1))?;
                    sub.skip_ws();
                    if !sub.at_end() {
                        return Err(parse_error(open + 1 + sub.pos, "unexpected trailing input"));
                    }
                    atom = Some(group);
                }
                cur.pos = close + 1;
            }
            Some(b) if b.is_ascii_digit() || b == b'i' => {
                let c = cur.parse_scalar()?;
                coeff = &coeff * &c;
            }
            Some(_) => {
                return Err(parse_error(cur.pos, "unexpected character in term"));
            }
        }
        seen_any = true;
    }
    if !seen_any {
        return Err(parse_error(cur.pos, "expected a term"));
    }
    let base = atom.unwrap_or_else(|| CrossedElement::unit(size));
    let scaled = base.scale(&coeff);
    shift_degrees(&scaled, shift, size)
}

fn shift_degrees(elem: &CrossedElement, shift: i64, size: usize) -> Result<CrossedElement> {
    if shift == 0 {
        return Ok(elem.clone());
    }
    let mut terms = Vec::with_capacity(elem.terms().len());
    for (n, f) in elem.terms() {
        let degree = n
            .checked_add(shift)
            .filter(|d| d.abs() <= DEGREE_LIMIT)
            .ok_or(Error::DegreeOverflow {
                limit: DEGREE_LIMIT,
            })?;
        terms.push((degree, f.clone()));
    }
    CrossedElement::from_terms(size, terms)
}

/// Parses the Laurent polynomial grammar: terms joined by `+`/`-`, each a
/// product of scalar factors and `t`-power factors. `t + t^-1 - 5/2` and
/// `(1+i)*t^2` both parse; printed polynomials re-parse to equal values.
pub fn parse_laurent(text: &str) -> Result<crossed_core::laurent::LaurentPoly> {
    use crossed_core::laurent::LaurentPoly;
    let mut cur = Cursor::new(text);
    let mut terms: Vec<(i64, Scalar)> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.at_end() {
            if first {
                return Err(parse_error(cur.pos, "empty polynomial literal"));
            }
            break;
        }
        let mut negate = false;
        if !first {
            match cur.peek() {
                Some(b'+') => cur.pos += 1,
                Some(b'-') => {
                    negate = true;
                    cur.pos += 1;
                }
                _ => {
                    return Err(parse_error(cur.pos, "expected `+` or `-` between terms"));
                }
            }
        } else if cur.eat(b'-') {
            negate = true;
        }
        let mut coeff = Scalar::from_int(1);
        let mut exponent: i64 = 0;
        let mut seen_any = false;
        loop {
            cur.skip_ws();
            match cur.peek() {
                None | Some(b'+') | Some(b'-') => break,
                Some(b'*') => {
                    cur.pos += 1;
                    continue;
                }
                Some(b't') => {
                    cur.pos += 1;
                    let power = if cur.eat(b'^') { cur.parse_exponent()? } else { 1 };
                    exponent = exponent
                        .checked_add(power)
                        .filter(|s| s.abs() <= DEGREE_LIMIT)
                        .ok_or(Error::DegreeOverflow {
                            limit: DEGREE_LIMIT,
                        })?;
                }
                Some(b'(') => {
                    let open = cur.pos;
                    let close = find_close_paren(cur.bytes, open)
                        .ok_or_else(|| parse_error(open, "unclosed parenthesis"))?;
                    let inner = &cur.text[open + 1..close];
                    let c = inner
                        .parse::<Scalar>()
                        .map_err(|e| shift_offset(e, open + 1))?;
                    coeff = &coeff * &c;
                    cur.pos = close + 1;
                }
                Some(b) if b.is_ascii_digit() || b == b'i' => {
                    let c = cur.parse_scalar()?;
                    coeff = &coeff * &c;
                }
                Some(_) => {
                    return Err(parse_error(cur.pos, "unexpected character in term"));
                }
            }
            seen_any = true;
        }
        if !seen_any {
            return Err(parse_error(cur.pos, "expected a term"));
        }
        if negate {
            coeff = -coeff;
        }
        terms.push((exponent, coeff));
        first = false;
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// Parses `lo:hi` into a pair of bounded degrees.
pub fn parse_window(text: &str) -> Result<(i64, i64)> {
    let (lo_text, hi_text) = text
        .split_once(':')
        .ok_or_else(|| parse_error(0, "expected a window of the form lo:hi"))?;
    let lo: i64 = lo_text
        .trim()
        .parse()
        .map_err(|_| parse_error(0, "window bounds must be integers"))?;
    let hi: i64 = hi_text
        .trim()
        .parse()
        .map_err(|_| parse_error(lo_text.len() + 1, "window bounds must be integers"))?;
    if lo.abs() > DEGREE_LIMIT || hi.abs() > DEGREE_LIMIT {
        return Err(Error::DegreeOverflow {
            limit: DEGREE_LIMIT,
        });
    }
    Ok((lo, hi))
}

/// Parses a comma-separated list of point indices.
pub fn parse_points(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| parse_error(0, format!("bad point index `{}`", part.trim())))
        })
        .collect()
}

/// Parses a comma-separated list of scalars.
pub fn parse_scalars(text: &str) -> Result<Vec<Scalar>> {
    text.split(',')
        .map(|part| part.trim().parse::<Scalar>())
        .collect()
}
