//! Endomorphisms of F_n by generator images: the Magnus generators, the
//! upper-triangular McCool group machinery, and the rho family.
//!
//! Products act left factor first: in `u*v` the map `u` is applied to a word
//! before `v` is. With that order a product w_{r_1}...w_{r_m} of the
//! conjugation generators alpha_{q,r_i} sends x_q to
//! (x_{r_1}...x_{r_m}) x_q (x_{r_1}...x_{r_m})^{-1}, the closed form every
//! downstream verification relies on. `compose(f, g) = f o g` (g first) is
//! also provided for callers who want classical composition.

use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};

/// An endomorphism of F_n given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    rank: u32,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn identity(rank: u32) -> Self {
        let images = (1..=rank)
            .map(|i| Word::generator(rank, i).expect("index in range"))
            .collect();
        Endomorphism { rank, images }
    }

    pub fn from_images(rank: u32, images: Vec<Word>) -> Result<Self> {
        if images.len() != rank as usize {
            return Err(Error::IndexViolation(format!(
                "expected {rank} images, got {}",
                images.len()
            )));
        }
        if let Some(w) = images.iter().find(|w| w.rank() != rank) {
            return Err(Error::RankMismatch {
                left: rank,
                right: w.rank(),
            });
        }
        Ok(Endomorphism { rank, images })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Image of x_i (1-based).
    pub fn image(&self, i: u32) -> &Word {
        &self.images[(i - 1) as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Substitutes generator images and reduces.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: w.rank(),
            });
        }
        let mut out = Word::identity(self.rank);
        for &l in w.letters() {
            let img = self.image(l.gen);
            out = if l.inverse {
                out.concat(&img.invert())?
            } else {
                out.concat(img)?
            };
        }
        Ok(out)
    }

    /// Classical composition: (f o g)(x_i) = f(g(x_i)).
    pub fn compose(&self, g: &Endomorphism) -> Result<Endomorphism> {
        if self.rank != g.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: g.rank,
            });
        }
        let images = g
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism {
            rank: self.rank,
            images,
        })
    }

    /// Product order used by AutWord compilation: self acts first, then g.
    pub fn then(&self, g: &Endomorphism) -> Result<Endomorphism> {
        g.compose(self)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(idx, w)| w.letters() == [Letter::new(idx as u32 + 1, false)])
    }

    /// True iff the map is trivial on homology: every image abelianizes to
    /// the matching unit vector.
    pub fn is_ia(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(idx, w)| w.abelianize().is_unit(idx as u32 + 1))
    }
}

fn check_gen_index(n: u32, i: u32, what: &str) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexViolation(format!(
            "{what} index {i} outside 1..={n}"
        )));
    }
    Ok(())
}

/// alpha_{ij}: x_i -> x_j x_i x_j^{-1}, all other generators fixed.
pub fn alpha(n: u32, i: u32, j: u32) -> Result<Endomorphism> {
    check_gen_index(n, i, "alpha")?;
    check_gen_index(n, j, "alpha")?;
    if i == j {
        return Err(Error::IndexViolation(format!("alpha({i},{j}) needs i != j")));
    }
    let mut e = Endomorphism::identity(n);
    let xi = Word::generator(n, i)?;
    let xj = Word::generator(n, j)?;
    e.images[(i - 1) as usize] = xj.concat(&xi)?.concat(&xj.invert())?;
    Ok(e)
}

/// A_{ijk}: x_i -> [x_j, x_k] x_i with j < k, others fixed.
pub fn big_a(n: u32, i: u32, j: u32, k: u32) -> Result<Endomorphism> {
    check_gen_index(n, i, "A")?;
    check_gen_index(n, j, "A")?;
    check_gen_index(n, k, "A")?;
    if i == j || i == k || j >= k {
        return Err(Error::IndexViolation(format!(
            "A({i},{j},{k}) needs i not in {{j,k}} and j < k"
        )));
    }
    let mut e = Endomorphism::identity(n);
    let xi = Word::generator(n, i)?;
    let xj = Word::generator(n, j)?;
    let xk = Word::generator(n, k)?;
    e.images[(i - 1) as usize] = xj.commutator(&xk)?.concat(&xi)?;
    Ok(e)
}

/// rho(p, q): x_1, x_2 fixed, x_j -> w^{p_j} x_j w^{q_j} for j = 3..n with
/// w = [x_1, x_2]. The exponent slices are indexed by j - 3.
pub fn rho(n: u32, p: &[i64], q: &[i64]) -> Result<Endomorphism> {
    if n < 3 {
        return Err(Error::IndexViolation(format!("rho needs n >= 3, got {n}")));
    }
    let want = (n - 2) as usize;
    if p.len() != want || q.len() != want {
        return Err(Error::IndexViolation(format!(
            "rho at n={n} needs {want} exponents per side, got {} and {}",
            p.len(),
            q.len()
        )));
    }
    let x1 = Word::generator(n, 1)?;
    let x2 = Word::generator(n, 2)?;
    let w = x1.commutator(&x2)?;
    let mut e = Endomorphism::identity(n);
    for j in 3..=n {
        let idx = (j - 3) as usize;
        let xj = Word::generator(n, j)?;
        e.images[(j - 1) as usize] = w.pow(p[idx]).concat(&xj)?.concat(&w.pow(q[idx]))?;
    }
    Ok(e)
}

/// One formal generator-or-inverse of IA_n from the Magnus generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AutGen {
    /// alpha_{ij}, i != j
    Alpha { i: u32, j: u32 },
    /// A_{ijk}, i not in {j,k}, j < k
    BigA { i: u32, j: u32, k: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutLetter {
    pub gen: AutGen,
    pub inverse: bool,
}

impl AutLetter {
    pub fn alpha(i: u32, j: u32) -> Result<Self> {
        if i == j || i == 0 || j == 0 {
            return Err(Error::IndexViolation(format!(
                "alpha({i},{j}) needs distinct positive indices"
            )));
        }
        Ok(AutLetter {
            gen: AutGen::Alpha { i, j },
            inverse: false,
        })
    }

    pub fn big_a(i: u32, j: u32, k: u32) -> Result<Self> {
        if i == 0 || j == 0 || k == 0 || i == j || i == k || j >= k {
            return Err(Error::IndexViolation(format!(
                "A({i},{j},{k}) needs i not in {{j,k}} and j < k"
            )));
        }
        Ok(AutLetter {
            gen: AutGen::BigA { i, j, k },
            inverse: false,
        })
    }

    pub fn inverted(self) -> Self {
        AutLetter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn max_index(&self) -> u32 {
        match self.gen {
            AutGen::Alpha { i, j } => i.max(j),
            AutGen::BigA { i, j, k } => i.max(j).max(k),
        }
    }

    /// True for the upper-triangular conjugation letters alpha_{ij}, i > j.
    pub fn is_upper_triangular_alpha(&self) -> bool {
        matches!(self.gen, AutGen::Alpha { i, j } if i > j)
    }

    /// Concrete map of this letter; inverses use the closed forms
    /// alpha_{ij}^{-1}: x_i -> x_j^{-1} x_i x_j and
    /// A_{ijk}^{-1}: x_i -> [x_j,x_k]^{-1} x_i.
    pub fn compile(&self, n: u32) -> Result<Endomorphism> {
        match self.gen {
            AutGen::Alpha { i, j } => {
                let fwd = alpha(n, i, j)?;
                if !self.inverse {
                    return Ok(fwd);
                }
                let mut e = Endomorphism::identity(n);
                let xi = Word::generator(n, i)?;
                let xj = Word::generator(n, j)?;
                e.images[(i - 1) as usize] = xj.invert().concat(&xi)?.concat(&xj)?;
                Ok(e)
            }
            AutGen::BigA { i, j, k } => {
                let fwd = big_a(n, i, j, k)?;
                if !self.inverse {
                    return Ok(fwd);
                }
                let mut e = Endomorphism::identity(n);
                let xi = Word::generator(n, i)?;
                let xj = Word::generator(n, j)?;
                let xk = Word::generator(n, k)?;
                e.images[(i - 1) as usize] = xj.commutator(&xk)?.invert().concat(&xi)?;
                Ok(e)
            }
        }
    }
}

impl fmt::Display for AutLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gen {
            AutGen::Alpha { i, j } => write!(f, "a({i},{j})")?,
            AutGen::BigA { i, j, k } => write!(f, "A({i},{j},{k})")?,
        }
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A formal word in Magnus generator letters, kept unreduced so commutator
/// structure stays visible; compiling walks the letters left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutWord {
    rank: u32,
    letters: Vec<AutLetter>,
}

impl AutWord {
    pub fn identity(rank: u32) -> Self {
        AutWord {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(rank: u32, letters: Vec<AutLetter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.max_index() > rank) {
            return Err(Error::IndexViolation(format!(
                "letter {l} exceeds rank {rank}"
            )));
        }
        Ok(AutWord { rank, letters })
    }

    pub fn letter(rank: u32, l: AutLetter) -> Result<Self> {
        AutWord::from_letters(rank, vec![l])
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[AutLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn product(&self, other: &AutWord) -> Result<AutWord> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(AutWord {
            rank: self.rank,
            letters,
        })
    }

    /// Formal inverse: reversed letters with flipped inverse flags.
    pub fn inverse(&self) -> AutWord {
        AutWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> AutWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        AutWord {
            rank: self.rank,
            letters,
        }
    }

    /// Group commutator self^{-1} other^{-1} self other.
    pub fn commutator(&self, other: &AutWord) -> Result<AutWord> {
        self.inverse()
            .product(&other.inverse())?
            .product(self)?
            .product(other)
    }

    /// Compiles letters left to right; the leftmost letter acts first.
    pub fn compile(&self) -> Endomorphism {
        let mut out = Endomorphism::identity(self.rank);
        for l in &self.letters {
            let e = l.compile(self.rank).expect("letters validated at build");
            out = out.then(&e).expect("equal ranks");
        }
        out
    }
}

impl fmt::Display for AutWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn require_upper_triangular(aw: &AutWord) -> Result<()> {
    for l in aw.letters() {
        if !l.is_upper_triangular_alpha() {
            return Err(Error::Unsupported(format!(
                "{l} is not an upper-triangular alpha letter"
            )));
        }
    }
    Ok(())
}

/// Letter-wise projection of the upper-triangular McCool group onto rank
/// n-1: letters touching index n are deleted, everything else is kept.
pub fn project_pi(aw: &AutWord) -> Result<AutWord> {
    if aw.rank() < 2 {
        return Err(Error::IndexViolation(
            "projection needs rank at least 2".into(),
        ));
    }
    require_upper_triangular(aw)?;
    let n = aw.rank();
    let letters = aw
        .letters()
        .iter()
        .filter(|l| l.max_index() < n)
        .copied()
        .collect();
    AutWord::from_letters(n - 1, letters)
}

/// Letter-wise section of `project_pi`: the same letters seen in rank n+1.
pub fn section_sigma(aw: &AutWord) -> Result<AutWord> {
    require_upper_triangular(aw)?;
    AutWord::from_letters(aw.rank() + 1, aw.letters().to_vec())
}

/// The subgroups G(n,k,j) <= PSigma_n^+ generated by alpha_{k,1..j}, and
/// H(n,k) = product of G(n,m,k-1) over m = k..n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupSpec {
    G { n: u32, k: u32, j: u32 },
    H { n: u32, k: u32 },
}

impl SubgroupSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SubgroupSpec::G { n, k, j } => {
                if k < 2 || k > n || j < 1 || j > k - 1 {
                    return Err(Error::IndexViolation(format!(
                        "G({n},{k},{j}) needs 1 <= j <= k-1 <= n-1"
                    )));
                }
                Ok(())
            }
            SubgroupSpec::H { n, k } => {
                if k < 2 || k > n {
                    return Err(Error::IndexViolation(format!(
                        "H({n},{k}) needs 2 <= k <= n"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Generators grouped by free factor: G is a single factor, H has one
    /// factor per m = k..n.
    pub fn factors(&self) -> Result<Vec<(u32, Vec<AutLetter>)>> {
        self.validate()?;
        match *self {
            SubgroupSpec::G { k, j, .. } => {
                let gens = (1..=j)
                    .map(|r| AutLetter::alpha(k, r))
                    .collect::<Result<Vec<_>>>()?;
                Ok(vec![(k, gens)])
            }
            SubgroupSpec::H { n, k } => (k..=n)
                .map(|m| {
                    let gens = (1..=k - 1)
                        .map(|r| AutLetter::alpha(m, r))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((m, gens))
                })
                .collect(),
        }
    }

    /// Flat generator list in factor order.
    pub fn generators(&self) -> Result<Vec<AutLetter>> {
        Ok(self.factors()?.into_iter().flat_map(|(_, g)| g).collect())
    }
}

/// One verified relation family: how many index tuples were checked and
/// which ones failed (expected: none).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Outcome of the McCool presentation sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McCoolReport {
    pub rank: u32,
    pub families: Vec<FamilyReport>,
}

impl McCoolReport {
    pub fn total_checked(&self) -> usize {
        self.families.iter().map(|f| f.checked).sum()
    }

    pub fn total_failures(&self) -> usize {
        self.families.iter().map(|f| f.failures.len()).sum()
    }

    pub fn ok(&self) -> bool {
        self.total_failures() == 0
    }
}

/// Checks the four McCool relation families over every admissible index
/// tuple by compiling both sides and comparing the maps.
pub fn verify_mccool(n: u32) -> Result<McCoolReport> {
    if n < 3 {
        return Err(Error::IndexViolation(format!(
            "the relation sweep needs n >= 3, got {n}"
        )));
    }
    let aw = |letters: Vec<AutLetter>| AutWord::from_letters(n, letters).expect("indices checked");
    let mut families = Vec::new();

    // (1) alpha_{i,j} alpha_{k,j} alpha_{i,k} = alpha_{i,k} alpha_{i,j} alpha_{k,j}
    let mut checked = 0;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || i == k || j == k {
                    continue;
                }
                checked += 1;
                let a_ij = AutLetter::alpha(i, j)?;
                let a_kj = AutLetter::alpha(k, j)?;
                let a_ik = AutLetter::alpha(i, k)?;
                let lhs = aw(vec![a_ij, a_kj, a_ik]).compile();
                let rhs = aw(vec![a_ik, a_ij, a_kj]).compile();
                if lhs != rhs {
                    failures.push(format!("(i,j,k)=({i},{j},{k})"));
                }
            }
        }
    }
    families.push(FamilyReport {
        name: "triple",
        checked,
        failures,
    });

    // (2) [alpha_{k,j}, alpha_{s,t}] = 1 when {j,k} and {s,t} are disjoint
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 1..=n {
        for j in 1..=n {
            if k == j {
                continue;
            }
            for s in 1..=n {
                for t in 1..=n {
                    if s == t || [s, t].contains(&j) || [s, t].contains(&k) {
                        continue;
                    }
                    checked += 1;
                    let u = aw(vec![AutLetter::alpha(k, j)?]);
                    let v = aw(vec![AutLetter::alpha(s, t)?]);
                    if !u.commutator(&v)?.compile().is_identity() {
                        failures.push(format!("(k,j,s,t)=({k},{j},{s},{t})"));
                    }
                }
            }
        }
    }
    families.push(FamilyReport {
        name: "disjoint-commuting",
        checked,
        failures,
    });

    // (3) [alpha_{i,j}, alpha_{k,j}] = 1 for distinct i, j, k
    let mut checked = 0;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || i == k || j == k {
                    continue;
                }
                checked += 1;
                let u = aw(vec![AutLetter::alpha(i, j)?]);
                let v = aw(vec![AutLetter::alpha(k, j)?]);
                if !u.commutator(&v)?.compile().is_identity() {
                    failures.push(format!("(i,j,k)=({i},{j},{k})"));
                }
            }
        }
    }
    families.push(FamilyReport {
        name: "shared-conjugator-commuting",
        checked,
        failures,
    });

    // (4) [alpha_{i,j} alpha_{k,j}, alpha_{i,k}] = 1 for distinct i, j, k
    let mut checked = 0;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || i == k || j == k {
                    continue;
                }
                checked += 1;
                let u = aw(vec![AutLetter::alpha(i, j)?, AutLetter::alpha(k, j)?]);
                let v = aw(vec![AutLetter::alpha(i, k)?]);
                if !u.commutator(&v)?.compile().is_identity() {
                    failures.push(format!("(i,j,k)=({i},{j},{k})"));
                }
            }
        }
    }
    families.push(FamilyReport {
        name: "product-commuting",
        checked,
        failures,
    });

    Ok(McCoolReport { rank: n, families })
}

/// Outcome of the cross-factor commutation sweep for H(n,k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingReport {
    pub n: u32,
    pub k: u32,
    pub pairs: usize,
    pub failures: Vec<String>,
}

impl CommutingReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that generators taken from distinct factors of H(n,k) commute as
/// compiled maps. Same-factor pairs are skipped: each factor is free.
pub fn verify_commuting(n: u32, k: u32) -> Result<CommutingReport> {
    let spec = SubgroupSpec::H { n, k };
    let factors = spec.factors()?;
    let mut pairs = 0;
    let mut failures = Vec::new();
    for (a, (_, gens_a)) in factors.iter().enumerate() {
        for (_, gens_b) in factors.iter().skip(a + 1) {
            for &x in gens_a {
                for &y in gens_b {
                    pairs += 1;
                    let u = AutWord::letter(n, x)?;
                    let v = AutWord::letter(n, y)?;
                    if !u.commutator(&v)?.compile().is_identity() {
                        failures.push(format!("[{x},{y}]"));
                    }
                }
            }
        }
    }
    Ok(CommutingReport {
        n,
        k,
        pairs,
        failures,
    })
}
