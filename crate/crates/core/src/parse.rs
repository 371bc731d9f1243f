//! Text syntax for partitions and step strings.
//!
//! * partition: `p1,p2,…,pr/RxC`, e.g. `0,1,3,3/4x5` for an element of `Λ(4,5)`;
//!   an empty part list is written `/0xC`.
//! * a list of classes: partitions separated by `;`, all in the same rectangle.
//! * a step string: a bare digit word such as `021010201`.
//! * a two-step shape: `d,r,n`.
//!
//! Errors carry the byte offset of the offending token.

use crate::error::{Error, Result};
use crate::strings::{Partition, StepString};

/// Largest row count, cap, or string length accepted from text.
pub const MAX_DIM: usize = 256;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, base: usize) -> Self {
        Cursor { src, pos: 0, base }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.base + self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = &self.src[start..self.pos];
        match digits.parse::<usize>() {
            Ok(v) if v <= MAX_DIM => Ok(v),
            _ => Err(Error::Parse {
                pos: self.base + start,
                msg: format!("number {digits} exceeds limit {MAX_DIM}"),
            }),
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }
}

fn partition_at(src: &str, base: usize) -> Result<Partition> {
    let mut cur = Cursor::new(src, base);
    let mut parts = Vec::new();
    cur.skip_ws();
    if cur.peek() != Some('/') {
        parts.push(cur.number()?);
        while cur.eat(',') {
            parts.push(cur.number()?);
        }
    }
    if !cur.eat('/') {
        return Err(cur.err("expected '/' before the rectangle"));
    }
    let rows = cur.number()?;
    if !(cur.eat('x') || cur.eat('X')) {
        return Err(cur.err("expected 'x' in rectangle RxC"));
    }
    let cap = cur.number()?;
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input"));
    }
    if parts.len() != rows {
        return Err(Error::Parse {
            pos: base,
            msg: format!("{} parts given for a {rows}-row rectangle", parts.len()),
        });
    }
    Partition::new(parts, cap).map_err(|e| Error::Parse { pos: base, msg: e.to_string() })
}

pub fn parse_partition(src: &str) -> Result<Partition> {
    partition_at(src, 0)
}

/// Parses `λ¹ ; λ² ; …`. All classes must share one rectangle.
pub fn parse_classes(src: &str) -> Result<Vec<Partition>> {
    let mut out: Vec<Partition> = Vec::new();
    let mut offset = 0;
    for piece in src.split(';') {
        let p = partition_at(piece, offset)?;
        if let Some(first) = out.first() {
            if (first.rows(), first.cap()) != (p.rows(), p.cap()) {
                return Err(Error::Parse {
                    pos: offset,
                    msg: format!(
                        "class lives in Λ({},{}) but the first lives in Λ({},{})",
                        p.rows(),
                        p.cap(),
                        first.rows(),
                        first.cap()
                    ),
                });
            }
        }
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}

pub fn parse_step_string(src: &str) -> Result<StepString> {
    let lead = src.len() - src.trim_start().len();
    let word = src.trim();
    if word.len() > MAX_DIM {
        return Err(Error::Parse {
            pos: lead,
            msg: format!("string longer than {MAX_DIM}"),
        });
    }
    let mut letters = Vec::with_capacity(word.len());
    for (i, c) in word.char_indices() {
        match c.to_digit(10) {
            Some(d) => letters.push(d as u8),
            None => {
                return Err(Error::Parse {
                    pos: lead + i,
                    msg: format!("unexpected character {c:?} in step string"),
                })
            }
        }
    }
    let steps = letters.iter().copied().max().unwrap_or(1).max(1);
    StepString::new(letters, steps).map_err(|e| Error::Parse { pos: lead, msg: e.to_string() })
}

/// Parses `d,r,n` and checks `0 < d < r < n`.
pub fn parse_shape(src: &str) -> Result<(usize, usize, usize)> {
    let mut cur = Cursor::new(src, 0);
    let d = cur.number()?;
    if !cur.eat(',') {
        return Err(cur.err("expected ','"));
    }
    let r = cur.number()?;
    if !cur.eat(',') {
        return Err(cur.err("expected ','"));
    }
    let n = cur.number()?;
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input"));
    }
    if !(0 < d && d < r && r < n) {
        return Err(Error::Parse { pos: 0, msg: format!("need 0 < d < r < n, got {d},{r},{n}") });
    }
    Ok((d, r, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos_of(e: Error) -> usize {
        match e {
            Error::Parse { pos, .. } => pos,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn partitions() {
        let p = parse_partition(" 0, 1,3,3 / 4 x 5 ").unwrap();
        assert_eq!(p.parts(), &[0, 1, 3, 3]);
        assert_eq!(p.cap(), 5);
        let empty = parse_partition("/0x4").unwrap();
        assert_eq!((empty.rows(), empty.cap()), (0, 4));
    }

    #[test]
    fn partition_errors_carry_positions() {
        assert_eq!(pos_of(parse_partition("0,1,3,3").unwrap_err()), 7);
        assert_eq!(pos_of(parse_partition("0,1,a/3x5").unwrap_err()), 4);
        assert_eq!(pos_of(parse_partition("0,1/2y5").unwrap_err()), 5);
        assert_eq!(pos_of(parse_partition("0,1/3x5").unwrap_err()), 0);
        assert_eq!(pos_of(parse_partition("0,9/2x5").unwrap_err()), 0);
        assert_eq!(pos_of(parse_partition("1,0/2x5").unwrap_err()), 0);
        assert_eq!(pos_of(parse_partition("0/1x99999").unwrap_err()), 4);
    }

    #[test]
    fn class_lists() {
        let cs = parse_classes("0,1,3,3/4x5 ; 3,3,3,5/4x5").unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1].parts(), &[3, 3, 3, 5]);
        let e = parse_classes("0,1/2x2;0,0,0/3x2").unwrap_err();
        assert_eq!(pos_of(e), 8);
        let e = parse_classes("0,1/2x2; 0,x/2x2").unwrap_err();
        assert_eq!(pos_of(e), 11);
    }

    #[test]
    fn step_strings() {
        let s = parse_step_string("021010201").unwrap();
        assert_eq!(s.steps(), 2);
        assert_eq!(parse_step_string("0000").unwrap().steps(), 1);
        assert_eq!(pos_of(parse_step_string("  01a").unwrap_err()), 4);
    }

    #[test]
    fn shapes() {
        assert_eq!(parse_shape("2,5,9").unwrap(), (2, 5, 9));
        assert!(parse_shape("5,2,9").is_err());
        assert!(parse_shape("2,5").is_err());
    }
}
