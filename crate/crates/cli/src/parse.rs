//! Polynomial input: `x^6+x^4+5x^2+1`, `5*x^2 - x`, or `[1,0,5,0,1,0,1]`.

use num_traits::{One, Zero};
use tracegate_core::{IntPolynomial, Integer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("parse error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("polynomial is not monic (pass --allow-nonmonic to continue)")]
    NonMonic,
    #[error("polynomial is zero")]
    Zero,
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, message: message.into() }
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { chars: text.char_indices().collect(), at: 0, text }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.at).is_some_and(|(_, c)| c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    /// Character position of the next non-space token, or the end.
    fn pos(&mut self) -> usize {
        self.skip_ws();
        self.text[..self.chars.get(self.at).map_or(self.text.len(), |&(i, _)| i)].chars().count()
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.at;
        while self.chars.get(self.at).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.at += 1;
        }
        (self.at > start).then(|| self.chars[start..self.at].iter().map(|&(_, c)| c).collect())
    }
}

/// Parses either form into ascending integer coefficients.
pub fn parse_coefficients(text: &str) -> Result<Vec<Integer>, ParseError> {
    let mut cur = Cursor::new(text);
    let coeffs = if cur.peek() == Some('[') {
        parse_list(&mut cur)?
    } else {
        parse_expression(&mut cur)?
    };
    if let Some(c) = cur.peek() {
        return Err(syntax(cur.pos(), format!("unexpected character '{c}'")));
    }
    Ok(coeffs)
}

fn parse_list(cur: &mut Cursor) -> Result<Vec<Integer>, ParseError> {
    cur.bump();
    let mut out = Vec::new();
    if cur.eat(']') {
        return Err(syntax(cur.pos(), "empty coefficient list"));
    }
    loop {
        let neg = if cur.eat('-') {
            true
        } else {
            cur.eat('+');
            false
        };
        let pos = cur.pos();
        let n: Integer = cur.digits().ok_or_else(|| syntax(pos, "expected an integer"))?.parse().expect("digits");
        out.push(if neg { -n } else { n });
        if cur.eat(']') {
            return Ok(out);
        }
        if !cur.eat(',') {
            let pos = cur.pos();
            return Err(syntax(pos, "expected ',' or ']'"));
        }
    }
}

fn parse_expression(cur: &mut Cursor) -> Result<Vec<Integer>, ParseError> {
    let mut out: Vec<Integer> = Vec::new();
    let mut first = true;
    loop {
        let sign_pos = cur.pos();
        let neg = match cur.peek() {
            Some('+') => {
                cur.bump();
                false
            }
            Some('-') => {
                cur.bump();
                true
            }
            None if first => return Err(syntax(sign_pos, "empty polynomial")),
            None => return Ok(out),
            Some(_) if first => false,
            Some(c) => return Err(syntax(sign_pos, format!("expected '+' or '-', found '{c}'"))),
        };
        first = false;
        let (coeff, exp) = parse_term(cur)?;
        if out.len() <= exp {
            out.resize(exp + 1, Integer::zero());
        }
        out[exp] += if neg { -coeff } else { coeff };
    }
}

fn parse_term(cur: &mut Cursor) -> Result<(Integer, usize), ParseError> {
    let pos = cur.pos();
    let coeff: Option<Integer> = cur.digits().map(|d| d.parse().expect("digits"));
    let has_star = coeff.is_some() && cur.eat('*');
    if cur.peek() == Some('x') {
        cur.bump();
        let exp = if cur.eat('^') {
            let p = cur.pos();
            let d = cur.digits().ok_or_else(|| syntax(p, "expected an exponent"))?;
            d.parse::<usize>().map_err(|_| syntax(p, "exponent too large"))?
        } else {
            1
        };
        Ok((coeff.unwrap_or_else(Integer::one), exp))
    } else if has_star {
        Err(syntax(cur.pos(), "expected 'x' after '*'"))
    } else {
        coeff.map(|c| (c, 0)).ok_or_else(|| syntax(pos, "expected a coefficient or 'x'"))
    }
}

/// Parses and enforces monicity unless `allow_nonmonic`.
pub fn parse_polynomial(text: &str, allow_nonmonic: bool) -> Result<IntPolynomial, ParseError> {
    let poly = IntPolynomial::new(parse_coefficients(text)?);
    if poly.is_zero() {
        return Err(ParseError::Zero);
    }
    if !allow_nonmonic && !poly.is_monic() {
        return Err(ParseError::NonMonic);
    }
    Ok(poly)
}
