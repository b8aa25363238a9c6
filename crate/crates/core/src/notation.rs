//! The compact sequence notation used in tables of Grundy sequences, for
//! example `((0,1)^2(2,3)^2,1,4) (+8)`.
//!
//! A sequence is a list of items separated by optional commas. An item is a
//! number or a parenthesized sequence with an optional `^k` repeat count.
//! A trailing `(+s)` gives the saltus added every period.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::engine::GrundyValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad sequence notation at byte {at}: {msg}")]
pub struct NotationError {
    pub at: usize,
    pub msg: &'static str,
}

/// One period of an arithmetic-periodic sequence plus its saltus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Notation {
    pub period: Vec<GrundyValue>,
    pub saltus: GrundyValue,
}

impl Notation {
    pub fn new(period: Vec<GrundyValue>, saltus: GrundyValue) -> Self {
        Notation { period, saltus }
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// The `n`-th term, 1-based.
    pub fn value(&self, n: usize) -> GrundyValue {
        let p = self.period.len();
        let q = (n - 1) / p;
        self.period[n - 1 - q * p] + self.saltus * q as GrundyValue
    }

    /// Terms `1..=len`.
    pub fn expand(&self, len: usize) -> Vec<GrundyValue> {
        (1..=len).map(|n| self.value(n)).collect()
    }
}

impl fmt::Display for Notation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.period.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ") (+{})", self.saltus)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &'static str) -> NotationError {
        NotationError { at: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64, NotationError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| NotationError {
                at: start,
                msg: "number too large",
            })
    }

    /// Items up to a closing parenthesis or the end of input.
    fn seq(&mut self, out: &mut Vec<GrundyValue>) -> Result<(), NotationError> {
        loop {
            match self.peek() {
                None | Some(b')') => return Ok(()),
                Some(b',') => self.pos += 1,
                Some(b'(') => {
                    if self.src.get(self.pos + 1) == Some(&b'+') {
                        return Ok(());
                    }
                    self.pos += 1;
                    let mut inner = Vec::new();
                    self.seq(&mut inner)?;
                    if self.peek() != Some(b')') {
                        return Err(self.err("unclosed group"));
                    }
                    self.pos += 1;
                    let mut reps = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        reps = self.number()?;
                    }
                    for _ in 0..reps {
                        out.extend_from_slice(&inner);
                    }
                }
                Some(c) if c.is_ascii_digit() => {
                    let v = self.number()?;
                    out.push(GrundyValue::try_from(v).map_err(|_| self.err("value too large"))?);
                }
                Some(_) => return Err(self.err("unexpected character")),
            }
        }
    }
}

impl FromStr for Notation {
    type Err = NotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut period = Vec::new();
        p.seq(&mut period)?;
        let mut saltus = 0;
        if p.peek() == Some(b'(') {
            p.pos += 2;
            saltus = GrundyValue::try_from(p.number()?).map_err(|_| p.err("saltus too large"))?;
            if p.peek() != Some(b')') {
                return Err(p.err("unclosed saltus"));
            }
            p.pos += 1;
        }
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        if period.is_empty() {
            return Err(p.err("empty period"));
        }
        Ok(Notation { period, saltus })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_groups() {
        let n: Notation = "((0,1)^2(2,3)^2,1,4,5,4,(3,2)^2(4,5)^2(6,7)^2) (+8)"
            .parse()
            .unwrap();
        assert_eq!(n.period_len(), 24);
        assert_eq!(n.saltus, 8);
        assert_eq!(&n.period[..10], &[0, 1, 0, 1, 2, 3, 2, 3, 1, 4]);
        assert_eq!(n.value(25), 8);
    }

    #[test]
    fn parses_plain_forms() {
        let n: Notation = "(0,1)^3 (+2)".parse().unwrap();
        assert_eq!(n.period, vec![0, 1, 0, 1, 0, 1]);
        let n: Notation = "(0) (+1)".parse().unwrap();
        assert_eq!(n.expand(4), vec![0, 1, 2, 3]);
        let n: Notation = "0,1".parse().unwrap();
        assert_eq!(n.saltus, 0);
        assert_eq!(n.expand(3), vec![0, 1, 0]);
    }

    #[test]
    fn round_trips_display() {
        let n = Notation::new(vec![0, 1, 2, 3, 1, 4], 8);
        assert_eq!(n.to_string(), "(0,1,2,3,1,4) (+8)");
        assert_eq!(n.to_string().parse::<Notation>().unwrap(), n);
    }

    #[test]
    fn rejects_garbage() {
        assert!("(0,1".parse::<Notation>().is_err());
        assert!("(0,1) (+".parse::<Notation>().is_err());
        assert!("x".parse::<Notation>().is_err());
        assert!("".parse::<Notation>().is_err());
    }
}
