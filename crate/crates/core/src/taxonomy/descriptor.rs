use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::exceptional;

/// Symbolic identity of an irreducible complex reflection group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupDescriptor {
    /// The monomial group `G(m,p,n)`.
    Imprimitive { m: u32, p: u32, n: u32 },
    /// Shephard–Todd group `G_id`, `4 <= id <= 37`.
    Exceptional { id: u32 },
    /// The symmetric group on `n + 1` letters acting on its rank-`n`
    /// reflection representation.
    Symmetric { n: u32 },
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid G({m},{p},{n}): p must divide m")]
    NotDivisor { m: u32, p: u32, n: u32 },
    #[error("invalid G({m},{p},{n}): reducible group")]
    Reducible { m: u32, p: u32, n: u32 },
    #[error("invalid G({m},{p},{n}): rank-1 groups are not supported")]
    RankOne { m: u32, p: u32, n: u32 },
    #[error("invalid Sym({0}): rank must be at least 1")]
    SymmetricRankZero(u32),
    #[error("no exceptional group G{0}: the exceptional ids are 4..=37")]
    UnknownExceptional(u32),
    #[error("order of {0} does not fit in 128 bits")]
    OrderOverflow(String),
}

impl GroupDescriptor {
    pub fn imprimitive(m: u32, p: u32, n: u32) -> Result<Self, DescriptorError> {
        if m == 0 || p == 0 || !m.is_multiple_of(p) {
            return Err(DescriptorError::NotDivisor { m, p, n });
        }
        if n == 0 {
            return Err(DescriptorError::RankOne { m, p, n });
        }
        // G(1,1,n) is the permutation representation and G(2,2,2) is the
        // Klein four-group; both split.
        if m == 1 || (m, p, n) == (2, 2, 2) {
            return Err(DescriptorError::Reducible { m, p, n });
        }
        if n == 1 {
            return Err(DescriptorError::RankOne { m, p, n });
        }
        let d = GroupDescriptor::Imprimitive { m, p, n };
        d.checked_order()
            .ok_or_else(|| DescriptorError::OrderOverflow(d.to_string()))?;
        Ok(d)
    }

    pub fn exceptional(id: u32) -> Result<Self, DescriptorError> {
        if exceptional::lookup(id).is_none() {
            return Err(DescriptorError::UnknownExceptional(id));
        }
        Ok(GroupDescriptor::Exceptional { id })
    }

    pub fn symmetric(n: u32) -> Result<Self, DescriptorError> {
        if n == 0 {
            return Err(DescriptorError::SymmetricRankZero(n));
        }
        let d = GroupDescriptor::Symmetric { n };
        d.checked_order()
            .ok_or_else(|| DescriptorError::OrderOverflow(d.to_string()))?;
        Ok(d)
    }

    /// Dimension of the space the group acts on.
    pub fn rank(&self) -> u32 {
        match *self {
            GroupDescriptor::Imprimitive { n, .. } => n,
            GroupDescriptor::Exceptional { id } => {
                exceptional::lookup(id).map_or(0, |r| r.rank)
            }
            GroupDescriptor::Symmetric { n } => n,
        }
    }

    pub(crate) fn checked_order(&self) -> Option<u128> {
        super::degrees(self)
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Imprimitive { m, p, n } => write!(f, "G({m},{p},{n})"),
            GroupDescriptor::Exceptional { id } => write!(f, "G{id}"),
            GroupDescriptor::Symmetric { n } => write!(f, "Sym({n})"),
        }
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for GroupDescriptor {
    type Err = DescriptorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_descriptor(s)
    }
}

/// Parses `G(m,p,n)`, `G<id>` or `Sym(n)`.
///
/// Whitespace is ignored everywhere and the leading keyword is
/// case-insensitive. Error positions are byte offsets into `text`.
pub fn parse_descriptor(text: &str) -> Result<GroupDescriptor, DescriptorError> {
    let mut p = Parser::new(text);
    let d = p.descriptor()?;
    p.expect_end()?;
    Ok(d)
}

/// Character cursor over the non-whitespace characters of the input that
/// remembers each character's original byte offset.
struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser { chars, pos: 0, text }
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.text.len(), |&(i, _)| i)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, DescriptorError> {
        Err(DescriptorError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().is_some_and(|x| x.eq_ignore_ascii_case(&c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), DescriptorError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn expect_end(&self) -> Result<(), DescriptorError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected trailing '{c}'")),
        }
    }

    fn number(&mut self) -> Result<u32, DescriptorError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value * 10 + d as u64;
            if value > u32::MAX as u64 {
                self.pos = start;
                return self.error("integer too large");
            }
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected an unsigned integer");
        }
        Ok(value as u32)
    }

    fn descriptor(&mut self) -> Result<GroupDescriptor, DescriptorError> {
        if self.eat('s') {
            self.expect('y')?;
            self.expect('m')?;
            self.expect('(')?;
            let n = self.number()?;
            self.expect(')')?;
            return GroupDescriptor::symmetric(n);
        }
        if !self.eat('g') {
            return self.error("expected 'G' or 'Sym'");
        }
        if self.eat('(') {
            let m = self.number()?;
            self.expect(',')?;
            let p = self.number()?;
            self.expect(',')?;
            let n = self.number()?;
            self.expect(')')?;
            return GroupDescriptor::imprimitive(m, p, n);
        }
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let id = self.number()?;
            return GroupDescriptor::exceptional(id);
        }
        self.error("expected '(' or an exceptional id after 'G'")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_the_three_forms() {
        assert_eq!(
            parse_descriptor("G(4,2,3)").unwrap(),
            GroupDescriptor::Imprimitive { m: 4, p: 2, n: 3 }
        );
        assert_eq!(
            parse_descriptor("G25").unwrap(),
            GroupDescriptor::Exceptional { id: 25 }
        );
        assert_eq!(
            parse_descriptor("Sym(4)").unwrap(),
            GroupDescriptor::Symmetric { n: 4 }
        );
    }

    #[test]
    fn whitespace_and_case() {
        assert_eq!(
            parse_descriptor("  g ( 4 , 2,3 ) ").unwrap(),
            GroupDescriptor::Imprimitive { m: 4, p: 2, n: 3 }
        );
        assert_eq!(
            parse_descriptor("SYM( 2)").unwrap(),
            GroupDescriptor::Symmetric { n: 2 }
        );
        assert_eq!(
            parse_descriptor("g 2 5").unwrap(),
            GroupDescriptor::Exceptional { id: 25 }
        );
    }

    #[test]
    fn constraint_violations() {
        assert_eq!(
            parse_descriptor("G(2,2,2)"),
            Err(DescriptorError::Reducible { m: 2, p: 2, n: 2 })
        );
        assert_eq!(
            parse_descriptor("G(1,1,5)"),
            Err(DescriptorError::Reducible { m: 1, p: 1, n: 5 })
        );
        assert_eq!(
            parse_descriptor("G(4,3,2)"),
            Err(DescriptorError::NotDivisor { m: 4, p: 3, n: 2 })
        );
        assert_eq!(
            parse_descriptor("G(4,2,1)"),
            Err(DescriptorError::RankOne { m: 4, p: 2, n: 1 })
        );
        assert_eq!(
            parse_descriptor("G3"),
            Err(DescriptorError::UnknownExceptional(3))
        );
        assert_eq!(
            parse_descriptor("G38"),
            Err(DescriptorError::UnknownExceptional(38))
        );
        assert!(matches!(
            parse_descriptor("G(1000000,1,1000)"),
            Err(DescriptorError::OrderOverflow(_))
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let at = |s: &str| match parse_descriptor(s) {
            Err(DescriptorError::Syntax { pos, .. }) => pos,
            other => panic!("expected syntax error for {s:?}, got {other:?}"),
        };
        assert_eq!(at("H(1,1,1)"), 0);
        assert_eq!(at("G(4;2,3)"), 3);
        assert_eq!(at("G(4, x,3)"), 5);
        assert_eq!(at("G(4,2,3"), 7);
        assert_eq!(at("G25)"), 3);
        assert_eq!(at(""), 0);
        assert_eq!(at("Sym4"), 3);
    }

    #[test]
    fn display_round_trips() {
        for s in ["G(4,2,3)", "G(6,6,2)", "G4", "G37", "Sym(1)", "Sym(7)"] {
            let d = parse_descriptor(s).unwrap();
            assert_eq!(d.to_string(), s);
            assert_eq!(d.to_string().parse::<GroupDescriptor>().unwrap(), d);
        }
    }
}
