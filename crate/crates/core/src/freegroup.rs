//! Reduced words in the free group F_n.
//!
//! Words are stored as freely reduced signed-letter sequences, so equality of
//! group elements is equality of representations. Every binary operation
//! checks that both operands live in the same rank.

use std::fmt;

use crate::error::{Error, Result};

/// One signed letter x_i or x_i^{-1}; `gen` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word in the free group on `rank` generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u32,
    letters: Vec<Letter>,
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last().is_some_and(|last| last.cancels(l)) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl Word {
    /// The empty word (group identity) in rank `rank`.
    pub fn identity(rank: u32) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator x_i, 1 <= i <= rank.
    pub fn generator(rank: u32, i: u32) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(Error::IndexViolation(format!(
                "generator index {i} outside 1..={rank}"
            )));
        }
        Ok(Word {
            rank,
            letters: vec![Letter::new(i, false)],
        })
    }

    /// Builds a word from letters, reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(rank: u32, letters: I) -> Result<Self> {
        let mut out = Vec::new();
        for l in letters {
            if l.gen == 0 || l.gen > rank {
                return Err(Error::IndexViolation(format!(
                    "letter index {} outside 1..={rank}",
                    l.gen
                )));
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { rank, letters: out })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same as `is_empty`; reads better at call sites that mean the group identity.
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    /// Freely reduced product self * other.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(Word {
            rank: self.rank,
            letters: out,
        })
    }

    /// Inverse word: reversed sequence with flipped signs.
    pub fn invert(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Commutator self^{-1} other^{-1} self other.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        self.invert()
            .concat(&other.invert())?
            .concat(self)?
            .concat(other)
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base).expect("equal ranks");
        }
        out
    }

    /// Exponent-sum vector; every commutator maps to zero.
    pub fn abelianize(&self) -> AbelianVector {
        let mut exponents = vec![0i64; self.rank as usize];
        for l in &self.letters {
            exponents[(l.gen - 1) as usize] += if l.inverse { -1 } else { 1 };
        }
        AbelianVector {
            rank: self.rank,
            exponents,
        }
    }

    /// Moves the word to a larger rank without changing its letters.
    pub fn embed(&self, rank: u32) -> Result<Word> {
        if rank < self.rank {
            return Err(Error::IndexViolation(format!(
                "cannot embed a rank-{} word into rank {rank}",
                self.rank
            )));
        }
        Ok(Word {
            rank,
            letters: self.letters.clone(),
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        // collapse runs of one generator into powers
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1usize;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let exp = if l.inverse { -(run as i64) } else { run as i64 };
            if exp == 1 {
                parts.push(format!("x{}", l.gen));
            } else {
                parts.push(format!("x{}^{}", l.gen, exp));
            }
            i += run;
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Exponent-sum image of a word in H_1(F_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianVector {
    rank: u32,
    exponents: Vec<i64>,
}

impl AbelianVector {
    pub fn zero(rank: u32) -> Self {
        AbelianVector {
            rank,
            exponents: vec![0; rank as usize],
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// True when this is the exponent vector of the single generator x_i.
    pub fn is_unit(&self, i: u32) -> bool {
        self.exponents
            .iter()
            .enumerate()
            .all(|(idx, &e)| e == i64::from(idx as u32 + 1 == i))
    }

    pub fn add(&self, other: &AbelianVector) -> Result<AbelianVector> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(AbelianVector {
            rank: self.rank,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: u32, s: &str) -> Word {
        crate::parse::parse_word(s, rank).unwrap()
    }

    #[test]
    fn concat_cancels() {
        let x1 = Word::generator(3, 1).unwrap();
        assert!(x1.concat(&x1.invert()).unwrap().is_identity());
        assert_eq!(w(3, "x1 x2").concat(&w(3, "x2^-1 x3")).unwrap(), w(3, "x1 x3"));
        assert_eq!(w(3, "x1").concat(&w(3, "x2")).unwrap(), w(3, "x1 x2"));
    }

    #[test]
    fn invert_reverses_and_flips() {
        assert_eq!(w(2, "x1 x2").invert(), w(2, "x2^-1 x1^-1"));
        assert!(Word::identity(2).invert().is_identity());
        assert_eq!(w(2, "x1^-1").invert(), w(2, "x1"));
    }

    #[test]
    fn commutator_form() {
        let x1 = Word::generator(2, 1).unwrap();
        let x2 = Word::generator(2, 2).unwrap();
        assert_eq!(x1.commutator(&x2).unwrap(), w(2, "x1^-1 x2^-1 x1 x2"));
        assert!(x1.commutator(&x1).unwrap().is_identity());
        assert!(x1.commutator(&Word::identity(2)).unwrap().is_identity());
    }

    #[test]
    fn abelianize_exponent_sums() {
        assert_eq!(w(3, "x1 x2 x1").abelianize().exponents(), &[2, 1, 0]);
        let x1 = Word::generator(3, 1).unwrap();
        let x2 = Word::generator(3, 2).unwrap();
        assert!(x1.commutator(&x2).unwrap().abelianize().is_zero());
        assert_eq!(w(3, "x3^-1").abelianize().exponents(), &[0, 0, -1]);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = Word::generator(2, 1).unwrap();
        let b = Word::generator(3, 1).unwrap();
        assert_eq!(
            a.concat(&b),
            Err(Error::RankMismatch { left: 2, right: 3 })
        );
        assert!(a.commutator(&b).is_err());
    }

    #[test]
    fn display_collapses_runs() {
        assert_eq!(w(2, "x1 x1 x2^-1").to_string(), "x1^2*x2^-1");
        assert_eq!(Word::identity(2).to_string(), "1");
    }

    #[test]
    fn generator_index_checked() {
        assert!(Word::generator(2, 0).is_err());
        assert!(Word::generator(2, 3).is_err());
    }

    #[test]
    fn embedding_into_larger_rank() {
        let a = w(2, "[x1,x2]");
        let up = a.embed(4).unwrap();
        assert_eq!(up.rank(), 4);
        assert_eq!(up.letters(), a.letters());
        assert!(a.embed(1).is_err());
    }
}
