//! The free Lie algebra L[V_q] on a Lyndon-word basis.
//!
//! Basis words are enumerated by Duval's algorithm; each word carries its
//! right standard factorization w = u.v with v the lexicographically smallest
//! proper suffix, whose recursive bracketing expands into the tensor algebra
//! with unit coefficient on the word itself and support otherwise on
//! lexicographically larger words of the same degree. That triangularity is
//! what makes integer-exact coordinate extraction possible without division.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tensorseries::{Monomial, Series};

/// A word strictly smaller than all of its proper cyclic rotations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord {
    letters: Vec<u32>,
}

impl LyndonWord {
    /// Validates the rotation condition; letters are 1-based.
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::IndexViolation("empty Lyndon word".into()));
        }
        if letters.contains(&0) {
            return Err(Error::IndexViolation("Lyndon letters are 1-based".into()));
        }
        if !is_lyndon(&letters) {
            return Err(Error::IndexViolation(format!(
                "{letters:?} is not a Lyndon word"
            )));
        }
        Ok(LyndonWord { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn degree(&self) -> u32 {
        self.letters.len() as u32
    }

    pub fn max_letter(&self) -> u32 {
        *self.letters.iter().max().expect("nonempty")
    }

    /// Right standard factorization: v is the lexicographically smallest
    /// proper suffix; both parts are again Lyndon and u < v.
    pub fn standard_factorization(&self) -> (LyndonWord, LyndonWord) {
        assert!(self.letters.len() >= 2, "single letters do not factor");
        let mut best = 1;
        for i in 2..self.letters.len() {
            if self.letters[i..] < self.letters[best..] {
                best = i;
            }
        }
        (
            LyndonWord {
                letters: self.letters[..best].to_vec(),
            },
            LyndonWord {
                letters: self.letters[best..].to_vec(),
            },
        )
    }

    /// Binary bracket tree from the recursive standard factorization.
    pub fn bracketing(&self) -> BracketTree {
        if self.letters.len() == 1 {
            BracketTree::Leaf(self.letters[0])
        } else {
            let (u, v) = self.standard_factorization();
            BracketTree::Node(Box::new(u.bracketing()), Box::new(v.bracketing()))
        }
    }

    pub fn as_monomial(&self) -> Monomial {
        Monomial::new(self.letters.clone())
    }
}

fn is_lyndon(w: &[u32]) -> bool {
    let n = w.len();
    for r in 1..n {
        // compare w with its rotation starting at r
        let rotation = w[r..].iter().chain(w[..r].iter());
        if w.iter().ge(rotation) {
            return false;
        }
    }
    true
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Nested commutator shape of a basis word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(u32),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(i) => write!(f, "x{i}"),
            BracketTree::Node(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// All Lyndon words of length exactly `s` over 1..=q, in lexicographic order
/// (Duval's generation).
pub fn lyndon_words(q: u32, s: u32) -> Vec<LyndonWord> {
    assert!(s >= 1, "degree must be positive");
    let mut out = Vec::new();
    if q == 0 {
        return out;
    }
    let s = s as usize;
    let mut w: Vec<u32> = vec![1];
    loop {
        if w.len() == s {
            out.push(LyndonWord { letters: w.clone() });
        }
        // extend periodically to the target length
        let len = w.len();
        while w.len() < s {
            let c = w[w.len() % len];
            w.push(c);
        }
        // strip maximal letters, then increment
        while let Some(&last) = w.last() {
            if last == q {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => return out,
            Some(last) => *last += 1,
        }
    }
}

/// Rank of the degree-s summand of the free Lie algebra on q generators,
/// from the recursion s*d_s = q^s - sum over proper divisors m of m*d_m.
pub fn witt_rank(q: u32, s: u32) -> BigInt {
    assert!(q >= 1 && s >= 1, "witt_rank needs q >= 1, s >= 1");
    let mut d: Vec<BigInt> = vec![BigInt::zero(); (s + 1) as usize];
    for m in 1..=s {
        let mut t = BigInt::from(q).pow(m);
        for k in 1..m {
            if m % k == 0 {
                t -= BigInt::from(k) * &d[k as usize];
            }
        }
        let (quot, rem) = num_integer::Integer::div_rem(&t, &BigInt::from(m));
        debug_assert!(rem.is_zero(), "Witt recursion divides exactly");
        d[m as usize] = quot;
    }
    d[s as usize].clone()
}

// Per-(q, s) basis data: words in lexicographic order plus the tensor
// expansion of each word's bracketing. Population is idempotent.
struct BasisData {
    words: Vec<LyndonWord>,
    expansions: Vec<BTreeMap<Monomial, BigInt>>,
}

fn expand_tree(t: &BracketTree) -> BTreeMap<Monomial, BigInt> {
    match t {
        BracketTree::Leaf(i) => {
            let mut m = BTreeMap::new();
            m.insert(Monomial::single(*i), BigInt::one());
            m
        }
        BracketTree::Node(a, b) => {
            let ea = expand_tree(a);
            let eb = expand_tree(b);
            let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
            for (ma, ca) in &ea {
                for (mb, cb) in &eb {
                    let ab = ma.concat(mb);
                    let ba = mb.concat(ma);
                    *out.entry(ab).or_insert_with(BigInt::zero) += ca * cb;
                    *out.entry(ba).or_insert_with(BigInt::zero) -= ca * cb;
                }
            }
            out.retain(|_, c| !c.is_zero());
            out
        }
    }
}

type BasisCache = Mutex<HashMap<(u32, u32), Arc<BasisData>>>;

fn basis_data(q: u32, s: u32) -> Arc<BasisData> {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(found) = cache.lock().unwrap().get(&(q, s)) {
        return Arc::clone(found);
    }
    let words = lyndon_words(q, s);
    let expansions = words.iter().map(|w| expand_tree(&w.bracketing())).collect();
    let data = Arc::new(BasisData { words, expansions });
    cache
        .lock()
        .unwrap()
        .entry((q, s))
        .or_insert_with(|| Arc::clone(&data));
    data
}

/// Integer coordinate vector over the Lyndon basis of L_s[V_q].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    alphabet: u32,
    degree: u32,
    coords: BTreeMap<LyndonWord, BigInt>,
}

impl LieElement {
    pub fn zero(alphabet: u32, degree: u32) -> Self {
        LieElement {
            alphabet,
            degree,
            coords: BTreeMap::new(),
        }
    }

    /// The generator x_i as a degree-1 element.
    pub fn generator(alphabet: u32, i: u32) -> Result<Self> {
        if i == 0 || i > alphabet {
            return Err(Error::IndexViolation(format!(
                "generator index {i} outside 1..={alphabet}"
            )));
        }
        let mut coords = BTreeMap::new();
        coords.insert(LyndonWord { letters: vec![i] }, BigInt::one());
        Ok(LieElement {
            alphabet,
            degree: 1,
            coords,
        })
    }

    /// One basis word with unit coefficient.
    pub fn basis(alphabet: u32, word: LyndonWord) -> Result<Self> {
        LieElement::from_coords(alphabet, word.degree(), [(word, BigInt::one())])
    }

    pub fn from_coords<I: IntoIterator<Item = (LyndonWord, BigInt)>>(
        alphabet: u32,
        degree: u32,
        coords: I,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, c) in coords {
            if w.degree() != degree {
                return Err(Error::NotHomogeneous {
                    expected: degree,
                    found: w.degree(),
                });
            }
            if w.max_letter() > alphabet {
                return Err(Error::AlphabetMismatch {
                    left: w.max_letter(),
                    right: alphabet,
                });
            }
            if !c.is_zero() {
                let entry = map.entry(w).or_insert_with(BigInt::zero);
                *entry += c;
                // re-prune in case the iterator repeats a word
            }
        }
        map.retain(|_, c: &mut BigInt| !c.is_zero());
        Ok(LieElement {
            alphabet,
            degree,
            coords: map,
        })
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = (&LyndonWord, &BigInt)> {
        self.coords.iter()
    }

    pub fn coeff(&self, w: &LyndonWord) -> BigInt {
        self.coords.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    fn check_compatible(&self, other: &LieElement) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        Ok(())
    }

    /// Coefficient-wise sum; both elements must share alphabet and degree.
    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::NotHomogeneous {
                expected: self.degree,
                found: other.degree,
            });
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut coords = self.coords.clone();
        for (w, c) in &other.coords {
            let entry = coords.entry(w.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coords.remove(w);
            }
        }
        Ok(LieElement {
            alphabet: self.alphabet,
            degree,
            coords,
        })
    }

    pub fn neg(&self) -> LieElement {
        LieElement {
            alphabet: self.alphabet,
            degree: self.degree,
            coords: self.coords.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> LieElement {
        if k.is_zero() {
            return LieElement::zero(self.alphabet, self.degree);
        }
        LieElement {
            alphabet: self.alphabet,
            degree: self.degree,
            coords: self.coords.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Expansion into the tensor algebra under [a,b] = ab - ba; homogeneous
    /// of this element's degree.
    pub fn expand_to_tensor(&self) -> Series {
        let trunc = self.degree.max(1);
        let mut out = Series::zero(self.alphabet, trunc);
        if self.coords.is_empty() {
            return out;
        }
        let data = basis_data(self.alphabet, self.degree);
        for (w, c) in &self.coords {
            let idx = data
                .words
                .binary_search(w)
                .expect("coordinate word is a basis word");
            for (m, cm) in &data.expansions[idx] {
                let term = Series::monomial(self.alphabet, trunc, m.clone(), c * cm)
                    .expect("expansion stays in degree");
                out = out.add(&term).expect("compatible");
            }
        }
        out
    }

    /// JSON form: a list of {"word": [...], "coeff": "..."} with decimal
    /// string coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coords
                .iter()
                .map(|(w, c)| {
                    serde_json::json!({
                        "word": w.letters(),
                        "coeff": c.to_string(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.coords {
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
            write!(f, "{}*{}", abs, w.bracketing())?;
        }
        Ok(())
    }
}

/// Inverse of `expand_to_tensor`: triangular forward substitution over the
/// Lyndon basis in increasing lexicographic order. The residual must vanish;
/// a leftover term means the input is not a Lie element.
pub fn lie_to_lyndon(t: &Series, degree: u32) -> Result<LieElement> {
    assert!(degree >= 1, "Lie elements live in positive degrees");
    for (m, _) in t.terms() {
        if m.degree() != degree {
            return Err(Error::NotHomogeneous {
                expected: degree,
                found: m.degree(),
            });
        }
    }
    let q = t.rank();
    if t.is_zero() {
        return Ok(LieElement::zero(q, degree));
    }
    let data = basis_data(q, degree);
    let mut residual: BTreeMap<Monomial, BigInt> =
        t.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    let mut coords = BTreeMap::new();
    for (w, expansion) in data.words.iter().zip(&data.expansions) {
        let key = w.as_monomial();
        let c = match residual.get(&key) {
            Some(c) => c.clone(),
            None => continue,
        };
        for (m, cm) in expansion {
            let entry = residual.entry(m.clone()).or_insert_with(BigInt::zero);
            *entry -= &c * cm;
            if entry.is_zero() {
                residual.remove(m);
            }
        }
        coords.insert(w.clone(), c);
    }
    if let Some((m, _)) = residual.iter().next() {
        return Err(Error::NotALieElement(m.to_string()));
    }
    Ok(LieElement {
        alphabet: q,
        degree,
        coords,
    })
}

/// Lie bracket in Lyndon coordinates, via the tensor algebra.
pub fn lie_bracket(a: &LieElement, b: &LieElement) -> Result<LieElement> {
    a.check_compatible(b)?;
    let degree = a.degree + b.degree;
    if a.is_zero() || b.is_zero() {
        return Ok(LieElement::zero(a.alphabet, degree));
    }
    let ta = a.expand_to_tensor().truncate(degree);
    let tb = b.expand_to_tensor().truncate(degree);
    let ab = ta.mul(&tb)?;
    let ba = tb.mul(&ta)?;
    lie_to_lyndon(&ab.sub(&ba)?, degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lw(letters: &[u32]) -> LyndonWord {
        LyndonWord::new(letters.to_vec()).unwrap()
    }

    #[test]
    fn lyndon_enumeration() {
        let ws: Vec<Vec<u32>> = lyndon_words(2, 1)
            .iter()
            .map(|w| w.letters().to_vec())
            .collect();
        assert_eq!(ws, vec![vec![1], vec![2]]);
        let ws: Vec<Vec<u32>> = lyndon_words(2, 3)
            .iter()
            .map(|w| w.letters().to_vec())
            .collect();
        assert_eq!(ws, vec![vec![1, 1, 2], vec![1, 2, 2]]);
        assert!(lyndon_words(1, 2).is_empty());
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_rank(7, 1), BigInt::from(7));
        // prime-power closed form at q=3, s=2: (9 - 3)/2
        assert_eq!(witt_rank(3, 2), BigInt::from(3));
        assert_eq!(witt_rank(2, 6), BigInt::from(9));
    }

    #[test]
    fn standard_factorizations() {
        assert_eq!(lw(&[1, 2]).bracketing().to_string(), "[x1,x2]");
        assert_eq!(lw(&[1, 1, 2]).bracketing().to_string(), "[x1,[x1,x2]]");
        assert_eq!(lw(&[1, 2, 2]).bracketing().to_string(), "[[x1,x2],x2]");
    }

    #[test]
    fn expansion_values() {
        let e = LieElement::basis(2, lw(&[1, 2])).unwrap();
        let t = e.expand_to_tensor();
        assert_eq!(t.coeff(&Monomial::new(vec![1, 2])), BigInt::from(1));
        assert_eq!(t.coeff(&Monomial::new(vec![2, 1])), BigInt::from(-1));
        assert!(LieElement::zero(2, 3).expand_to_tensor().is_zero());

        let e = LieElement::basis(2, lw(&[1, 1, 2])).unwrap();
        let t = e.expand_to_tensor();
        assert_eq!(t.coeff(&Monomial::new(vec![1, 1, 2])), BigInt::from(1));
        assert_eq!(t.coeff(&Monomial::new(vec![1, 2, 1])), BigInt::from(-2));
        assert_eq!(t.coeff(&Monomial::new(vec![2, 1, 1])), BigInt::from(1));
        assert_eq!(t.num_terms(), 3);
    }

    #[test]
    fn coordinate_extraction() {
        // X1X2 - X2X1 is the bracket of the basis word (1,2)
        let t = Series::monomial(2, 2, Monomial::new(vec![1, 2]), BigInt::one())
            .unwrap()
            .sub(&Series::monomial(2, 2, Monomial::new(vec![2, 1]), BigInt::one()).unwrap())
            .unwrap();
        let e = lie_to_lyndon(&t, 2).unwrap();
        assert_eq!(e, LieElement::basis(2, lw(&[1, 2])).unwrap());

        // the symmetric tensor has no Lie preimage
        let sym = Series::monomial(2, 2, Monomial::new(vec![1, 2]), BigInt::one())
            .unwrap()
            .add(&Series::monomial(2, 2, Monomial::new(vec![2, 1]), BigInt::one()).unwrap())
            .unwrap();
        assert!(matches!(
            lie_to_lyndon(&sym, 2),
            Err(Error::NotALieElement(_))
        ));

        // 3*b(122) - b(112) round-trips
        let e = LieElement::from_coords(
            2,
            3,
            [
                (lw(&[1, 1, 2]), BigInt::from(-1)),
                (lw(&[1, 2, 2]), BigInt::from(3)),
            ],
        )
        .unwrap();
        assert_eq!(lie_to_lyndon(&e.expand_to_tensor(), 3).unwrap(), e);
    }

    #[test]
    fn bracket_values() {
        let e1 = LieElement::generator(2, 1).unwrap();
        let e2 = LieElement::generator(2, 2).unwrap();
        let b = lie_bracket(&e1, &e2).unwrap();
        assert_eq!(b, LieElement::basis(2, lw(&[1, 2])).unwrap());
        assert!(lie_bracket(&b, &b).unwrap().is_zero());
        assert_eq!(
            lie_bracket(&b, &e2).unwrap(),
            LieElement::basis(2, lw(&[1, 2, 2])).unwrap()
        );
    }

    #[test]
    fn display_form() {
        let e = LieElement::from_coords(
            2,
            3,
            [
                (lw(&[1, 1, 2]), BigInt::from(1)),
                (lw(&[1, 2, 2]), BigInt::from(3)),
            ],
        )
        .unwrap();
        assert_eq!(e.to_string(), "1*[x1,[x1,x2]] + 3*[[x1,x2],x2]");
        assert_eq!(LieElement::zero(2, 2).to_string(), "0");
    }

    #[test]
    fn counts_match_witt() {
        for q in 1..=4u32 {
            for s in 1..=8u32 {
                assert_eq!(
                    BigInt::from(lyndon_words(q, s).len()),
                    witt_rank(q, s),
                    "q={q} s={s}"
                );
            }
        }
    }
}
