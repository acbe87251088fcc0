//! Closed-form rank bookkeeping: graded ranks of the upper-triangular McCool
//! group, tensor-summand rank tables, cohomology lower bounds, and the
//! Euler-Poincare coefficients of the derivation algebra. Everything is an
//! exact integer.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lielyndon::witt_rank;

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Rank of the degree-s graded piece of the upper-triangular McCool group:
/// the sum over q = 2..n of the Witt ranks d_s(q-1).
pub fn gr_rank_psn(n: u32, s: u32) -> BigInt {
    assert!(n >= 2 && s >= 1, "gr_rank_psn needs n >= 2, s >= 1");
    (2..=n).map(|q| witt_rank(q - 1, s)).sum()
}

/// Per-degree ranks of a tensor power of (Z + a rank-d piece in degree 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    pub n: u32,
    pub k: u32,
    pub s: u32,
    /// ranks[i] is the rank in cohomological degree i, 0 <= i <= n-k+1.
    pub ranks: Vec<BigInt>,
}

impl RankTable {
    pub fn total(&self) -> BigInt {
        self.ranks.iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "k": self.k,
            "s": self.s,
            "ranks": self.ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Degree-i rank C(n-k+1, i) * d_s(k-1)^i of the (n-k+1)-fold tensor power.
/// The k = 2 column only exists at s = 1 (its Lie summand vanishes deeper).
pub fn summand_ranks(n: u32, k: u32, s: u32) -> Result<RankTable> {
    if n < 3 {
        return Err(Error::IndexViolation(format!(
            "summand table needs n >= 3, got {n}"
        )));
    }
    if s < 1 {
        return Err(Error::IndexViolation("s must be positive".into()));
    }
    if k < 2 || k > n {
        return Err(Error::IndexViolation(format!(
            "summand table needs 2 <= k <= n, got k={k}"
        )));
    }
    if k == 2 && s > 1 {
        return Err(Error::IndexViolation(
            "k = 2 is only admissible at s = 1".into(),
        ));
    }
    let factors = n - k + 1;
    let d = witt_rank(k - 1, s);
    let ranks = (0..=factors)
        .map(|i| binomial(factors, i) * d.pow(i))
        .collect();
    Ok(RankTable { n, k, s, ranks })
}

/// Where a lower bound was attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    /// The direct specialization d_s(n-i)^i.
    Specialization,
    /// The degree-i entry of the summand table at this k.
    Summand { k: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiBound {
    pub n: u32,
    pub s: u32,
    pub i: u32,
    pub value: BigInt,
    /// The specialization bound d_s(n-i)^i on its own.
    pub specialization: BigInt,
    pub source: BoundSource,
}

impl HiBound {
    pub fn to_json(&self) -> serde_json::Value {
        let source = match self.source {
            BoundSource::Specialization => "specialization".to_string(),
            BoundSource::Summand { k } => format!("summand k={k}"),
        };
        serde_json::json!({
            "n": self.n,
            "s": self.s,
            "i": self.i,
            "bound": self.value.to_string(),
            "specialization": self.specialization.to_string(),
            "source": source,
        })
    }
}

/// Lower bound for the rank in cohomological degree i at filtration depth s:
/// the larger of the specialization d_s(n-i)^i and the best degree-i entry
/// over all admissible summand tables, with a note of which k attains it.
pub fn hi_lower_bound(n: u32, s: u32, i: u32) -> Result<HiBound> {
    if n < 3 {
        return Err(Error::IndexViolation(format!(
            "lower bounds need n >= 3, got {n}"
        )));
    }
    if i < 1 || i > n - 2 {
        return Err(Error::IndexViolation(format!(
            "degree {i} outside 1..={}",
            n - 2
        )));
    }
    if s < 1 {
        return Err(Error::IndexViolation("s must be positive".into()));
    }
    let specialization = witt_rank(n - i, s).pow(i);
    let mut value = specialization.clone();
    let mut source = BoundSource::Specialization;
    let k_lo = if s == 1 { 2 } else { 3 };
    for k in k_lo..=n {
        if i > n - k + 1 {
            continue;
        }
        let entry = &summand_ranks(n, k, s)?.ranks[i as usize];
        if *entry > value {
            value = entry.clone();
            source = BoundSource::Summand { k };
        } else if *entry == value && matches!(source, BoundSource::Specialization) {
            // the specialization is itself a summand entry; name the k
            source = BoundSource::Summand { k };
        }
    }
    Ok(HiBound {
        n,
        s,
        i,
        value,
        specialization,
        source,
    })
}

/// Coefficients c_s = n * d_{s+1}(V_n) of the Euler-Poincare series of the
/// derivation algebra, for s = 1..s_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCoefficients {
    pub n: u32,
    /// coeffs[idx] is c_{idx+1}.
    pub coeffs: Vec<BigInt>,
}

impl SeriesCoefficients {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

pub fn ep_coeffs(n: u32, s_max: u32) -> SeriesCoefficients {
    assert!(n >= 1 && s_max >= 1, "ep_coeffs needs n >= 1, s_max >= 1");
    let coeffs = (1..=s_max)
        .map(|s| BigInt::from(n) * witt_rank(n, s + 1))
        .collect();
    SeriesCoefficients { n, coeffs }
}

/// Lower-bound values over a range of filtration depths, with monotonicity
/// bookkeeping. Passing means a strictly increasing tail reaches the end of
/// the range; an early dip is tolerated but flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub n: u32,
    pub i: u32,
    pub values: Vec<(u32, BigInt)>,
    /// Depths whose bound dropped below the previous one.
    pub dips: Vec<u32>,
    /// First depth from which the values strictly increase to the end.
    pub strict_from: Option<u32>,
    pub passes: bool,
}

impl GrowthReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "i": self.i,
            "values": self
                .values
                .iter()
                .map(|(s, v)| serde_json::json!({"s": s, "bound": v.to_string()}))
                .collect::<Vec<_>>(),
            "dips": self.dips,
            "strict_from": self.strict_from,
            "passes": self.passes,
        })
    }
}

pub fn growth_check(n: u32, i: u32, s_lo: u32, s_hi: u32) -> Result<GrowthReport> {
    if s_lo < 1 || s_lo > s_hi {
        return Err(Error::IndexViolation(format!(
            "bad depth range {s_lo}..={s_hi}"
        )));
    }
    let mut values = Vec::new();
    for s in s_lo..=s_hi {
        values.push((s, hi_lower_bound(n, s, i)?.value));
    }
    let mut dips = Vec::new();
    for w in values.windows(2) {
        if w[1].1 < w[0].1 {
            dips.push(w[1].0);
        }
    }
    // longest strictly increasing suffix
    let mut strict_from = None;
    if values.len() >= 2 {
        let mut start = values.len() - 1;
        while start > 0 && values[start - 1].1 < values[start].1 {
            start -= 1;
        }
        if start < values.len() - 1 {
            strict_from = Some(values[start].0);
        }
    }
    let passes = strict_from.is_some();
    Ok(GrowthReport {
        n,
        i,
        values,
        dips,
        strict_from,
        passes,
    })
}
