//! Words in the generators of a surface group.
//!
//! A letter is a nonzero `i8`: `k` stands for generator `k-1` and `-k` for
//! its inverse. Text form uses `A B C D` for generators and lower case for
//! inverses; `A⁻¹` and `A^-1` are accepted on input.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypgeom::MobiusTransform;

const NAMES: [char; 4] = ['A', 'B', 'C', 'D'];

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a freely reduced word from raw letters.
    pub fn from_letters(letters: impl IntoIterator<Item = i8>) -> Self {
        let mut w = Word::empty();
        for l in letters {
            assert!(l != 0 && l.unsigned_abs() as usize <= NAMES.len(), "bad letter {l}");
            w.push(l);
        }
        w
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![index as i8 + 1])
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter, cancelling against the last one when possible.
    pub fn push(&mut self, l: i8) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut w = Word::empty();
        for _ in 0..n {
            w = w.concat(self);
        }
        w
    }

    /// Strips letters cancelling around the cycle, `x u x⁻¹ → u`.
    pub fn cyclically_reduced(&self) -> Word {
        let l = &self.0;
        let (mut i, mut j) = (0usize, l.len());
        while j >= i + 2 && l[i] == -l[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(l[i..j].to_vec())
    }

    /// True when the cyclic word is `u^n` for some `n ≥ 2`.
    pub fn is_proper_power(&self) -> bool {
        let w = self.cyclically_reduced();
        let n = w.len();
        (1..n).any(|p| n % p == 0 && (p..n).all(|i| w.0[i] == w.0[i - p]))
    }

    fn min_rotation(letters: &[i8]) -> Vec<i8> {
        let n = letters.len();
        (0..n)
            .map(|r| letters[r..].iter().chain(&letters[..r]).copied().collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }

    /// Key shared by exactly the words freely conjugate to this one or to
    /// its inverse: the least cyclic rotation of either.
    pub fn canonical_cyclic(&self) -> Word {
        let w = self.cyclically_reduced();
        let fwd = Self::min_rotation(&w.0);
        let back = Self::min_rotation(&w.inverse().0);
        Word(fwd.min(back))
    }

    /// Exponent sums of each generator.
    pub fn abelianization(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for &l in &self.0 {
            v[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
        }
        v
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Matrix of the word; entries are renormalized to unit determinant.
    pub fn evaluate(&self, generators: &[MobiusTransform]) -> Result<MobiusTransform> {
        if self.max_generator() > generators.len() {
            return Err(Error::Word(format!(
                "{self} uses a generator beyond the {} available",
                generators.len()
            )));
        }
        let inverses: Vec<_> = generators.iter().map(|g| g.inverse()).collect();
        let m = self.0.iter().fold(MobiusTransform::IDENTITY, |acc, &l| {
            let k = (l.unsigned_abs() - 1) as usize;
            acc * if l > 0 { generators[k] } else { inverses[k] }
        });
        Ok(m.renormalized())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            let c = NAMES[(l.unsigned_abs() - 1) as usize];
            let c = if l > 0 { c } else { c.to_ascii_lowercase() };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut letters: Vec<i8> = Vec::new();
        let mut rest = s.trim();
        if rest == "1" {
            return Ok(Word::empty());
        }
        while let Some(c) = rest.chars().next() {
            rest = &rest[c.len_utf8()..];
            if c.is_whitespace() || c == '*' || c == '·' {
                continue;
            }
            let upper = c.to_ascii_uppercase();
            let Some(k) = NAMES.iter().position(|&n| n == upper) else {
                return Err(Error::Word(format!("unexpected character {c:?} in {s:?}")));
            };
            let mut l = (k + 1) as i8;
            if c.is_ascii_lowercase() {
                l = -l;
            }
            for suffix in ["⁻¹", "^-1"] {
                if let Some(r) = rest.strip_prefix(suffix) {
                    rest = r;
                    l = -l;
                }
            }
            letters.push(l);
        }
        Ok(Word::from_letters(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
