//! Truncated noncommutative polynomials over Z.
//!
//! `Series` is a sparse element of Z<X_1,...,X_n> with every term of degree
//! greater than the truncation bound discarded. Coefficients are
//! arbitrary-precision integers; exactness here is what makes lower central
//! series membership decidable downstream.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A word in the noncommuting indeterminates X_i; empty = the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    letters: Vec<u32>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { letters: Vec::new() }
    }

    pub fn single(i: u32) -> Self {
        Monomial { letters: vec![i] }
    }

    pub fn new(letters: Vec<u32>) -> Self {
        Monomial { letters }
    }

    pub fn degree(&self) -> u32 {
        self.letters.len() as u32
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Monomial { letters }
    }
}

// degree-major order so that maps iterate low degrees first
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.letters.len(), &self.letters).cmp(&(other.letters.len(), &other.letters))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "X{l}")?;
        }
        Ok(())
    }
}

/// Sparse truncated series with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    rank: u32,
    trunc: u32,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Series {
    pub fn zero(rank: u32, trunc: u32) -> Self {
        Series {
            rank,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(rank: u32, trunc: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::unit(), BigInt::from(1));
        Series { rank, trunc, terms }
    }

    /// A single-term series; monomials beyond the truncation are rejected.
    pub fn monomial(rank: u32, trunc: u32, m: Monomial, coeff: BigInt) -> Result<Self> {
        if m.degree() > trunc {
            return Err(Error::DegreeOutOfRange {
                degree: m.degree(),
                max: trunc,
            });
        }
        if let Some(&bad) = m.letters().iter().find(|&&l| l == 0 || l > rank) {
            return Err(Error::IndexViolation(format!(
                "monomial letter {bad} outside 1..={rank}"
            )));
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Ok(Series { rank, trunc, terms })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    fn check_compatible(&self, other: &Series) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Ok(Series {
            rank: self.rank,
            trunc: self.trunc,
            terms,
        })
    }

    pub fn neg(&self) -> Series {
        Series {
            rank: self.rank,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    /// Convolution product with terms of degree > trunc discarded.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        // bucket by degree so pairs beyond the truncation are never visited
        fn bucket(s: &Series) -> Vec<Vec<(&Monomial, &BigInt)>> {
            let mut v: Vec<Vec<(&Monomial, &BigInt)>> =
                vec![Vec::new(); (s.trunc + 1) as usize];
            for (m, c) in &s.terms {
                v[m.degree() as usize].push((m, c));
            }
            v
        }
        let left = bucket(self);
        let right = bucket(other);
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for da in 0..=self.trunc {
            if left[da as usize].is_empty() {
                continue;
            }
            for db in 0..=(self.trunc - da) {
                for (ma, ca) in &left[da as usize] {
                    for (mb, cb) in &right[db as usize] {
                        let prod = ma.concat(mb);
                        let entry = terms.entry(prod).or_insert_with(BigInt::zero);
                        *entry += *ca * *cb;
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Series {
            rank: self.rank,
            trunc: self.trunc,
            terms,
        })
    }

    /// Restriction to terms of degree exactly `d`.
    pub fn degree_component(&self, d: u32) -> Result<Series> {
        if d > self.trunc {
            return Err(Error::DegreeOutOfRange {
                degree: d,
                max: self.trunc,
            });
        }
        Ok(Series {
            rank: self.rank,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Smallest degree >= 1 carrying a nonzero term.
    pub fn min_positive_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.degree())
            .filter(|&d| d > 0)
            .min()
    }

    /// Re-truncates to a new bound, dropping any terms beyond it.
    pub fn truncate(&self, trunc: u32) -> Series {
        Series {
            rank: self.rank,
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= trunc)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, lexicographic within a degree
        let mut sorted: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| {
            b.degree()
                .cmp(&a.degree())
                .then_with(|| a.letters().cmp(b.letters()))
        });
        let mut first = true;
        for (m, c) in sorted {
            let neg = c.sign() == num_bigint::Sign::Minus;
            let abs = c.magnitude();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let one = abs.to_string() == "1";
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if one {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
