//! Generators, freely reduced words, and the text grammar for words.
//!
//! Grammar (atoms separated by whitespace or `*`):
//!
//! ```text
//! R{i,j,...}       rotation (band generator when two labels)
//! S{i,...}         swing
//! T{i,...}|{j,...} twist
//! s<k>             band generator on k and k+1
//! 1                identity
//! ```
//!
//! Any atom may carry `^-1` or `^<int>`. Products compose left to right:
//! in `U V` the motion `U` happens first.

use std::fmt;
use std::ops::Mul;

use crate::convex::{self, ConvexDisc, PunctureSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Positive half-twist along the chord from `i` to `j`, `i < j`.
    Band(u8, u8),
    /// Clockwise rotation of a set of at least three punctures.
    Rotation(PunctureSet),
    /// `|B|`-th power of the rotation of `B`.
    Swing(PunctureSet),
    /// Full twist of two non-crossing subdiscs, stored with the smaller set first.
    Twist(PunctureSet, PunctureSet),
}

impl Generator {
    pub fn band(i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > u8::MAX as usize || j > u8::MAX as usize {
            return Err(Error::InvalidGenerator(format!(
                "band generator needs two distinct labels, got ({i},{j})"
            )));
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Ok(Generator::Band(a as u8, b as u8))
    }

    /// Artin generator `σ_k`, the band on `k` and `k + 1`.
    pub fn artin(k: usize) -> Self {
        Generator::Band(k as u8, k as u8 + 1)
    }

    /// Rotation of `B`; two-element rotations are band generators.
    pub fn rotation(b: PunctureSet) -> Result<Self> {
        match b.len() {
            0 | 1 => Err(Error::InvalidGenerator(format!(
                "rotation needs at least two punctures, got {b}"
            ))),
            2 => {
                let m = b.to_vec();
                Generator::band(m[0], m[1])
            }
            _ => Ok(Generator::Rotation(b)),
        }
    }

    pub fn swing(b: PunctureSet) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Generator::Swing(b))
    }

    pub fn twist(b: PunctureSet, c: PunctureSet) -> Result<Self> {
        if convex::crossing(b, c)? {
            return Err(Error::Crossing(b.to_string(), c.to_string()));
        }
        Ok(if b <= c {
            Generator::Twist(b, c)
        } else {
            Generator::Twist(c, b)
        })
    }

    /// The puncture set a rotation or band generator acts on.
    pub fn support(self, disc: ConvexDisc) -> Result<PunctureSet> {
        match self {
            Generator::Band(i, j) => disc.set(&[i as usize, j as usize]),
            Generator::Rotation(b) | Generator::Swing(b) => Ok(b),
            Generator::Twist(b, c) => Ok(b.union(c)),
        }
    }

    /// Whether this is an Artin generator `σ_k`.
    pub fn is_artin(self) -> bool {
        matches!(self, Generator::Band(i, j) if j == i + 1)
    }

    /// Largest label mentioned by the generator.
    pub fn max_label(self) -> usize {
        match self {
            Generator::Band(_, j) => j as usize,
            Generator::Rotation(b) | Generator::Swing(b) => b.to_vec().last().copied().unwrap_or(0),
            Generator::Twist(b, c) => b.union(c).to_vec().last().copied().unwrap_or(0),
        }
    }

    /// Sort key used for presentations: kind first, then member lists.
    pub fn sort_key(self) -> (u8, Vec<usize>, Vec<usize>) {
        match self {
            Generator::Band(i, j) => (0, vec![i as usize, j as usize], vec![]),
            Generator::Rotation(b) => (0, b.to_vec(), vec![]),
            Generator::Swing(b) => (1, b.to_vec(), vec![]),
            Generator::Twist(b, c) => (2, b.to_vec(), c.to_vec()),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Band(i, j) if j == i + 1 => write!(f, "s{i}"),
            Generator::Band(i, j) => write!(f, "R{{{i},{j}}}"),
            Generator::Rotation(b) => write!(f, "R{b}"),
            Generator::Swing(b) => write!(f, "S{b}"),
            Generator::Twist(b, c) => write!(f, "T{b}|{c}"),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A signed generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: Generator) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn neg(gen: Generator) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A freely reduced word over the mixed generator alphabet.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Freely reduce a raw sequence of signed generators.
pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
    let mut w = Word::empty();
    for l in raw {
        w.push(l);
    }
    w
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn gen(g: Generator) -> Self {
        Word {
            letters: vec![Letter::pos(g)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Append a letter, cancelling against the last one if possible.
    pub fn push(&mut self, l: Letter) {
        match self.letters.last() {
            Some(&last) if last.cancels(l) => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..k.unsigned_abs() {
            w = &w * &base;
        }
        w
    }

    /// Subword `[start, start + len)` as a word (already reduced).
    pub fn slice(&self, start: usize, len: usize) -> Word {
        Word {
            letters: self.letters[start..start + len].to_vec(),
        }
    }

    pub fn commutator(a: &Word, b: &Word) -> Word {
        a * b * a.inverse() * b.inverse()
    }

    /// Product of generators with signs, reduced.
    pub fn product(parts: &[Word]) -> Word {
        parts.iter().fold(Word::empty(), |acc, p| &acc * p)
    }

    /// Sum of signs per generator.
    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == g)
            .map(|l| l.sign())
            .sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.letters.iter().map(|l| l.gen)
    }

    /// Canonical text form; round-trips through [`parse`].
    pub fn print(&self) -> String {
        self.to_string()
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Self {
        Word { letters: vec![l] }
    }
}

impl From<Generator> for Word {
    fn from(g: Generator) -> Self {
        Word::gen(g)
    }
}

impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut w = self.clone();
        for &l in &rhs.letters {
            w.push(l);
        }
        w
    }
}

impl Mul<&Word> for Word {
    type Output = Word;

    fn mul(mut self, rhs: &Word) -> Word {
        for &l in &rhs.letters {
            self.push(l);
        }
        self
    }
}

impl Mul<Word> for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self * &rhs
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Parse a word on the given disc; the result is freely reduced.
pub fn parse(text: &str, disc: ConvexDisc) -> Result<Word> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        disc,
    }
    .word()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    disc: ConvexDisc,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace() || c == b'*') {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn word(mut self) -> Result<Word> {
        let mut w = Word::empty();
        self.skip_separators();
        while self.pos < self.src.len() {
            let (atom, power) = self.atom()?;
            w = w * atom.pow(power);
            let before = self.pos;
            self.skip_separators();
            if self.pos == before && self.pos < self.src.len() {
                return self.err("expected separator between atoms");
            }
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<(Word, i64)> {
        let start = self.pos;
        let word = match self.peek() {
            Some(b'R') => {
                self.pos += 1;
                let b = self.set()?;
                Word::gen(self.at(start, Generator::rotation(b))?)
            }
            Some(b'S') => {
                self.pos += 1;
                let b = self.set()?;
                Word::gen(self.at(start, Generator::swing(b))?)
            }
            Some(b'T') => {
                self.pos += 1;
                let b = self.set()?;
                self.skip_ws();
                self.expect(b'|')?;
                self.skip_ws();
                let c = self.set()?;
                Word::gen(self.at(start, Generator::twist(b, c))?)
            }
            Some(b's') => {
                self.pos += 1;
                let k = self.number()?;
                if k + 1 > self.disc.size() {
                    self.pos = start;
                    return Err(Error::LabelOutOfRange {
                        label: k + 1,
                        n: self.disc.size(),
                    });
                }
                Word::gen(self.at(start, Generator::band(k, k + 1))?)
            }
            Some(b'1') => {
                self.pos += 1;
                Word::empty()
            }
            _ => return self.err("expected an atom (R, S, T, s<k> or 1)"),
        };
        let power = if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let k = self.number()? as i64;
            if neg {
                -k
            } else {
                k
            }
        } else {
            1
        };
        Ok((word, power))
    }

    fn at<T>(&mut self, start: usize, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Syntax { .. } => e,
            other => {
                self.pos = start;
                other
            }
        })
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    fn set(&mut self) -> Result<PunctureSet> {
        self.expect(b'{')?;
        let mut labels = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            let label = self.number()?;
            if !self.disc.contains_label(label) {
                self.pos = at;
                return Err(Error::LabelOutOfRange {
                    label,
                    n: self.disc.size(),
                });
            }
            if labels.contains(&label) {
                self.pos = at;
                return self.err(format!("label {label} repeated"));
            }
            labels.push(label);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.err("expected `,` or `}`"),
            }
        }
        self.disc.set(&labels)
    }
}
