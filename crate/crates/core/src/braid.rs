//! Braid words, their closures, and the braid-based bounds on τ.
//!
//! A word on `n` strands is a sequence of signed band indices: `+i` is the
//! generator σᵢ (a positive, right-handed half twist of strands `i` and
//! `i+1`), `-i` is σᵢ⁻¹. With this convention the torus knot T(p,q) is the
//! closure of the positive word `(σ₁…σ_{p−1})^q`.
//!
//! Everything here works on the word as given. Words are never simplified
//! or moved within their Markov class, so all quantities are diagram-level.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::permutation::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid syntax error: {0}")]
    Syntax(String),
    #[error("letter {letter} out of range for {strands} strands (need 1 <= |letter| <= {max})", max = .strands.saturating_sub(1))]
    Range { letter: i64, strands: usize },
    #[error("braid closure has {components} components, expected a knot")]
    NotAKnot { components: usize },
    #[error("braid word has {negative} negative letters, expected a positive braid")]
    NotPositive { negative: usize },
    #[error("parity violation: {what} = {value} is odd on a knot closure")]
    Parity { what: &'static str, value: i64 },
}

/// A word in the braid group on `strands` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::Syntax("strand count must be at least 1".into()));
        }
        for &letter in &letters {
            if letter == 0 || letter.unsigned_abs() as usize >= strands {
                return Err(BraidError::Range { letter, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    /// Word length k.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of positive letters, k₊.
    pub fn positive_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l > 0).count()
    }

    /// Number of negative letters, k₋.
    pub fn negative_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.positive_count() as i64 - self.negative_count() as i64
    }

    pub fn is_positive(&self) -> bool {
        self.negative_count() == 0
    }

    /// The permutation induced on strand positions: the transposition
    /// `(|ℓ|−1, |ℓ|)` for each letter, composed in word order. Signs are ignored.
    pub fn closure_permutation(&self) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(self.strands), |acc, &l| {
                let i = l.unsigned_abs() as usize;
                acc.compose(&Permutation::transposition(self.strands, i - 1, i))
            })
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        self.closure_permutation().cycle_count()
    }

    pub fn is_knot(&self) -> bool {
        self.closure_components() == 1
    }

    fn require_knot(&self) -> Result<(), BraidError> {
        match self.closure_components() {
            1 => Ok(()),
            components => Err(BraidError::NotAKnot { components }),
        }
    }

    /// Genus of the Bennequin surface of the closure (n disks, one band per
    /// letter, Euler characteristic n − k): `(k − n + 1) / 2`.
    ///
    /// This bounds the Seifert genus of the closure from above.
    pub fn bennequin_genus(&self) -> Result<i64, BraidError> {
        self.require_knot()?;
        let doubled = self.len() as i64 - self.strands as i64 + 1;
        exact_half(doubled, "k - n + 1")
    }

    /// τ of the closure of a positive braid, `(k − n + 1) / 2`.
    ///
    /// For such closures this value is also the 4-ball genus and the Seifert genus.
    pub fn tau_positive_braid(&self) -> Result<i64, BraidError> {
        self.require_knot()?;
        let negative = self.negative_count();
        if negative > 0 {
            return Err(BraidError::NotPositive { negative });
        }
        self.bennequin_genus()
    }

    /// The slice–Bennequin lower bound `τ ≥ (k₊ − k₋ − n + 1) / 2`.
    ///
    /// Changing the k₋ negative letters to positive ones gives a positive braid
    /// with the same closure permutation, and each change moves τ by at most one.
    pub fn slice_bennequin_lower(&self) -> Result<i64, BraidError> {
        self.require_knot()?;
        let doubled = self.writhe() - self.strands as i64 + 1;
        exact_half(doubled, "k+ - k- - n + 1")
    }

    /// Negates every letter. The closure is the mirror image of the original closure.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| -l).collect(),
        }
    }
}

fn exact_half(value: i64, what: &'static str) -> Result<i64, BraidError> {
    if value % 2 != 0 {
        return Err(BraidError::Parity { what, value });
    }
    Ok(value / 2)
}

/// Parses `n: l1 l2 ... lk`.
pub fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    let (head, body) = text
        .split_once(':')
        .ok_or_else(|| BraidError::Syntax(format!("missing ':' in {text:?}")))?;
    let head = head.trim();
    let strands: usize = head
        .parse()
        .map_err(|_| BraidError::Syntax(format!("bad strand count {head:?}")))?;
    let letters = body
        .split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| BraidError::Syntax(format!("bad letter {tok:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BraidWord::new(strands, letters)
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_braid(s)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}
