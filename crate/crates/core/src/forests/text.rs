//! Text format: `[1,5,3]^2[2]^2[4,7]^1[8][6]^1|A={6,8}`.
//!
//! Values are written only when nonzero. Distinguished forests always carry
//! the `|A={…}` suffix, written `|A={}` when `A` is empty.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{Block, DistinguishedForest, Element, OrderedChainForest, ValuedForest};
use crate::error::{Error, Result};

fn write_list(f: &mut fmt::Formatter<'_>, xs: impl IntoIterator<Item = Element>) -> fmt::Result {
    for (idx, x) in xs.into_iter().enumerate() {
        if idx > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn write_valued(f: &mut fmt::Formatter<'_>, blocks: &[Block], values: &[u32]) -> fmt::Result {
    for (b, &v) in blocks.iter().zip(values) {
        write!(f, "{b}")?;
        if v != 0 {
            write!(f, "^{v}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_list(f, self.elements().iter().copied())?;
        f.write_str("]")
    }
}

impl fmt::Display for OrderedChainForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.blocks().iter().try_for_each(|b| write!(f, "{b}"))
    }
}

impl fmt::Display for ValuedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_valued(f, self.blocks(), self.values())
    }
}

impl fmt::Display for DistinguishedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_valued(f, self.blocks(), self.values())?;
        f.write_str("|A=")?;
        write_set(f, self.distinguished())
    }
}

/// `{1,2,5}`.
pub(crate) fn write_set(f: &mut fmt::Formatter<'_>, set: &BTreeSet<Element>) -> fmt::Result {
    f.write_str("{")?;
    write_list(f, set.iter().copied())?;
    f.write_str("}")
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of {:?}", self.pos, self.src))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn list(&mut self, open: u8, close: u8, allow_empty: bool) -> Result<Vec<u32>> {
        self.expect(open)?;
        let mut out = Vec::new();
        if allow_empty && self.peek() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected ',' or closing bracket")),
            }
        }
    }

    fn valued_blocks(&mut self) -> Result<(Vec<Block>, Vec<u32>)> {
        let (mut blocks, mut values) = (Vec::new(), Vec::new());
        while self.peek() == Some(b'[') {
            blocks.push(Block::new(self.list(b'[', b']', false)?)?);
            let v = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.number()?
            } else {
                0
            };
            values.push(v);
        }
        Ok((blocks, values))
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }
}

impl FromStr for Block {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor {
            src: s.trim(),
            pos: 0,
        };
        let b = Block::new(c.list(b'[', b']', false)?)?;
        c.finish()?;
        Ok(b)
    }
}

impl FromStr for ValuedForest {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor {
            src: s.trim(),
            pos: 0,
        };
        let (blocks, values) = c.valued_blocks()?;
        c.finish()?;
        ValuedForest::new(blocks, values)
    }
}

impl FromStr for OrderedChainForest {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let vf: ValuedForest = s.parse()?;
        if vf.total_value() != 0 {
            return Err(Error::Parse(format!("unexpected block values in {s:?}")));
        }
        OrderedChainForest::new(vf.into_parts().0)
    }
}

impl FromStr for DistinguishedForest {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor {
            src: s.trim(),
            pos: 0,
        };
        let (blocks, values) = c.valued_blocks()?;
        let mut a = BTreeSet::new();
        if c.peek() == Some(b'|') {
            c.pos += 1;
            c.expect(b'A')?;
            c.expect(b'=')?;
            a.extend(c.list(b'{', b'}', true)?);
        }
        c.finish()?;
        DistinguishedForest::new(blocks, values, a)
    }
}
