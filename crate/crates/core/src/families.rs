//! Closed-form τ for torus knots, odd pretzel knots and iterated Whitehead doubles.
//!
//! A criterion that does not apply yields `None`. That says nothing about τ.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::braid::BraidWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("torus parameters ({p}, {q}) must both be at least 2")]
    TorusTooSmall { p: i64, q: i64 },
    #[error("torus parameters ({p}, {q}) are not coprime, T({p},{q}) is a link")]
    TorusNotCoprime { p: i64, q: i64 },
    #[error("a pretzel knot needs at least one twist region")]
    EmptyPretzel,
    #[error("Whitehead double needs at least one iteration")]
    NoIterations,
    #[error("only positive-clasp doubles are supported, got {0}")]
    UnsupportedClasp(String),
    #[error("only untwisted doubles are supported, got twisting {0}")]
    Twisted(i64),
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Parameters of a positive torus knot T(p,q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusParams {
    p: i64,
    q: i64,
}

impl TorusParams {
    pub fn new(p: i64, q: i64) -> Result<Self, FamilyError> {
        if p < 2 || q < 2 {
            return Err(FamilyError::TorusTooSmall { p, q });
        }
        if gcd(p, q) != 1 {
            return Err(FamilyError::TorusNotCoprime { p, q });
        }
        Ok(TorusParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// The positive word `(σ₁σ₂…σ_{p−1})^q` on `p` strands.
    pub fn braid(&self) -> BraidWord {
        let row: Vec<i64> = (1..self.p).collect();
        let letters = row.repeat(self.q as usize);
        BraidWord::new(self.p as usize, letters).expect("torus word letters are in range")
    }

    /// τ(T(p,q)) = (p−1)(q−1)/2.
    pub fn tau(&self) -> i64 {
        (self.p - 1) * (self.q - 1) / 2
    }
}

impl fmt::Display for TorusParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.p, self.q)
    }
}

pub fn torus_braid(t: TorusParams) -> BraidWord {
    t.braid()
}

pub fn tau_torus(t: TorusParams) -> i64 {
    t.tau()
}

/// Twist counts of a pretzel knot P(t₁,…,t_k).
///
/// Sign convention: P(3,−5,−7) is the knot with τ = 1, and P(−1,−1,−1) is the
/// positive trefoil. This is the opposite of the convention in some older
/// literature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PretzelParams {
    twists: Vec<i64>,
}

impl PretzelParams {
    pub fn new(twists: Vec<i64>) -> Result<Self, FamilyError> {
        if twists.is_empty() {
            return Err(FamilyError::EmptyPretzel);
        }
        Ok(PretzelParams { twists })
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// Whether the odd-pretzel fiber-embedding criterion holds: k odd, every
    /// tᵢ odd, and tᵢ + tⱼ < 0 for every pair i < j.
    pub fn criterion_holds(&self) -> bool {
        let k = self.twists.len();
        if k.is_multiple_of(2) || self.twists.iter().any(|t| t % 2 == 0) {
            return false;
        }
        self.twists
            .iter()
            .enumerate()
            .all(|(i, a)| self.twists[i + 1..].iter().all(|b| a + b < 0))
    }

    /// τ = (k−1)/2 when the criterion holds.
    pub fn tau(&self) -> Option<i64> {
        self.criterion_holds()
            .then(|| (self.twists.len() as i64 - 1) / 2)
    }
}

impl fmt::Display for PretzelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.twists.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn pretzel_tau(p: &PretzelParams) -> Option<i64> {
    p.tau()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clasp {
    Positive,
    Negative,
}

impl FromStr for Clasp {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positive" | "+" => Ok(Clasp::Positive),
            "negative" | "-" => Ok(Clasp::Negative),
            other => Err(FamilyError::UnsupportedClasp(other.to_string())),
        }
    }
}

/// The n-fold iterated untwisted positive Whitehead double of a companion knot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleSpec {
    companion: String,
    iterations: u32,
}

impl DoubleSpec {
    pub fn new(companion: impl Into<String>, iterations: u32) -> Result<Self, FamilyError> {
        Self::with_options(companion, iterations, Clasp::Positive, 0)
    }

    /// Rejects everything except the positive clasp with zero twisting.
    pub fn with_options(
        companion: impl Into<String>,
        iterations: u32,
        clasp: Clasp,
        twisting: i64,
    ) -> Result<Self, FamilyError> {
        if iterations == 0 {
            return Err(FamilyError::NoIterations);
        }
        if clasp != Clasp::Positive {
            return Err(FamilyError::UnsupportedClasp("negative".into()));
        }
        if twisting != 0 {
            return Err(FamilyError::Twisted(twisting));
        }
        Ok(DoubleSpec {
            companion: companion.into(),
            iterations,
        })
    }

    pub fn companion(&self) -> &str {
        &self.companion
    }

    pub fn iterations(&self) -> u32 {
        self.iterations
    }
}

/// τ(Wh_n(K)) = 1 whenever a certified lower bound for TB(K) is nonnegative.
///
/// Wh₁(K) then has TB ≥ 1 again, so the conclusion holds for every iterate.
pub fn whitehead_double_tau(_d: &DoubleSpec, tb_lower: i64) -> Option<i64> {
    (tb_lower >= 0).then_some(1)
}
