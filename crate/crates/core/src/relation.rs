//! Kinship codes and the primitive-step registry.
//!
//! A [`RelationCode`] is a string of single-character primitive steps such as
//! `DHB` (daughter's husband's brother). Each primitive carries a generation
//! displacement (`glen`, positive = earlier generation) and a sideways
//! displacement (`slen`). Both are additive along a code.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("empty relation code")]
    EmptyCode,
    #[error("unknown symbol {symbol:?} at position {position}")]
    UnknownSymbol { position: usize, symbol: char },
    #[error("symbol {0:?} has no inverse")]
    NotInvertible(char),
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: symbol {symbol:?} is already defined")]
    Redefinition { line: usize, symbol: char },
    #[error("inverse {inverse:?} of {symbol:?} is not a registered symbol")]
    UnknownInverse { symbol: char, inverse: char },
    #[error("inverse {inverse:?} of {symbol:?} does not mirror its lengths")]
    InverseMismatch { symbol: char, inverse: char },
    #[error("reading registry file: {0}")]
    Io(#[from] std::io::Error),
}

/// One primitive kin step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitiveStep {
    pub symbol: char,
    pub glen: i32,
    pub slen: u32,
}

const BUILTIN: [(char, i32, u32, &str); 8] = [
    ('F', 1, 0, "SD"),
    ('M', 1, 0, "SD"),
    ('S', -1, 0, "FM"),
    ('D', -1, 0, "FM"),
    ('H', 0, 1, "W"),
    ('W', 0, 1, "H"),
    ('B', 0, 1, "BZ"),
    ('Z', 0, 1, "BZ"),
];

/// A validated, non-empty sequence of primitive steps.
///
/// Ordering is lexicographic on the rendered string, which is what every
/// "canonical representative" choice in this crate relies on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationCode(String);

impl RelationCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn steps(&self) -> impl DoubleEndedIterator<Item = char> + '_ {
        self.0.chars()
    }

    /// Number of primitive steps.
    pub fn len(&self) -> usize {
        self.0.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Steps of `self` followed by steps of `other`.
    pub fn concat(&self, other: &RelationCode) -> RelationCode {
        let mut s = String::with_capacity(self.0.len() + other.0.len());
        s.push_str(&self.0);
        s.push_str(&other.0);
        RelationCode(s)
    }
}

impl fmt::Display for RelationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Symbol table for primitive steps and their inverse classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationRegistry {
    entries: BTreeMap<char, PrimitiveStep>,
    inverse_classes: BTreeMap<char, BTreeSet<char>>,
}

impl Default for RelationRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl RelationRegistry {
    /// The eight basic relationships: F M S D H W B Z.
    pub fn builtin() -> Self {
        let mut entries = BTreeMap::new();
        let mut inverse_classes = BTreeMap::new();
        for (symbol, glen, slen, inverses) in BUILTIN {
            entries.insert(symbol, PrimitiveStep { symbol, glen, slen });
            inverse_classes.insert(symbol, inverses.chars().collect());
        }
        RelationRegistry {
            entries,
            inverse_classes,
        }
    }

    /// Built-ins extended by a line-oriented config:
    /// `SYMBOL glen slen inverse1[,inverse2...]`, `#` starts a comment and
    /// `-` stands for an empty inverse list.
    pub fn with_config(text: &str) -> Result<Self, RegistryError> {
        let mut reg = Self::builtin();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |reason: &str| RegistryError::Syntax {
                line,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(syntax("expected `SYMBOL glen slen inverses`"));
            }
            let mut chars = fields[0].chars();
            let symbol = match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_uppercase() => c,
                _ => return Err(syntax("symbol must be a single uppercase letter")),
            };
            if reg.entries.contains_key(&symbol) {
                return Err(RegistryError::Redefinition { line, symbol });
            }
            let glen: i32 = fields[1].parse().map_err(|_| syntax("glen must be an integer"))?;
            let slen: u32 = fields[2]
                .parse()
                .map_err(|_| syntax("slen must be a non-negative integer"))?;
            let inverses: BTreeSet<char> = if fields[3] == "-" {
                BTreeSet::new()
            } else {
                let mut set = BTreeSet::new();
                for tok in fields[3].split(',') {
                    let mut it = tok.chars();
                    match (it.next(), it.next()) {
                        (Some(c), None) => {
                            set.insert(c);
                        }
                        _ => return Err(syntax("inverses must be single symbols")),
                    }
                }
                set
            };
            reg.entries.insert(symbol, PrimitiveStep { symbol, glen, slen });
            reg.inverse_classes.insert(symbol, inverses);
        }
        reg.validate()?;
        Ok(reg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, RegistryError> {
        let text = std::fs::read_to_string(path)?;
        Self::with_config(&text)
    }

    fn validate(&self) -> Result<(), RegistryError> {
        for (&symbol, inverses) in &self.inverse_classes {
            let step = self.entries[&symbol];
            for &inverse in inverses {
                let inv = self
                    .entries
                    .get(&inverse)
                    .ok_or(RegistryError::UnknownInverse { symbol, inverse })?;
                if inv.glen != -step.glen || inv.slen != step.slen {
                    return Err(RegistryError::InverseMismatch { symbol, inverse });
                }
            }
        }
        Ok(())
    }

    pub fn step(&self, symbol: char) -> Option<&PrimitiveStep> {
        self.entries.get(&symbol)
    }

    pub fn symbols(&self) -> impl Iterator<Item = char> + '_ {
        self.entries.keys().copied()
    }

    pub fn inverse_class(&self, symbol: char) -> Option<&BTreeSet<char>> {
        self.inverse_classes.get(&symbol)
    }

    /// Parse a code string. Positions in errors are zero-based character offsets.
    pub fn parse(&self, text: &str) -> Result<RelationCode, AlgebraError> {
        if text.is_empty() {
            return Err(AlgebraError::EmptyCode);
        }
        if let Some((position, symbol)) = text.chars().enumerate().find(|(_, c)| !self.entries.contains_key(c)) {
            return Err(AlgebraError::UnknownSymbol { position, symbol });
        }
        Ok(RelationCode(text.to_string()))
    }

    fn resolve<'a>(
        &'a self,
        code: &'a RelationCode,
    ) -> impl Iterator<Item = Result<&'a PrimitiveStep, AlgebraError>> + 'a {
        code.steps().enumerate().map(move |(position, symbol)| {
            self.entries
                .get(&symbol)
                .ok_or(AlgebraError::UnknownSymbol { position, symbol })
        })
    }

    /// Net generation displacement of a code.
    pub fn glen(&self, code: &RelationCode) -> Result<i64, AlgebraError> {
        self.resolve(code).map(|s| s.map(|s| s.glen as i64)).sum()
    }

    /// Net sideways displacement of a code.
    pub fn slen(&self, code: &RelationCode) -> Result<u64, AlgebraError> {
        self.resolve(code).map(|s| s.map(|s| s.slen as u64)).sum()
    }

    /// Every code describing the reverse relationship: steps reversed, each
    /// replaced by each member of its inverse class.
    pub fn invert(&self, code: &RelationCode) -> Result<BTreeSet<RelationCode>, AlgebraError> {
        let mut partial = vec![String::new()];
        for (rev_pos, symbol) in code.steps().rev().enumerate() {
            let class = self
                .inverse_classes
                .get(&symbol)
                .ok_or_else(|| AlgebraError::UnknownSymbol {
                    position: code.len() - 1 - rev_pos,
                    symbol,
                })?;
            if class.is_empty() {
                return Err(AlgebraError::NotInvertible(symbol));
            }
            partial = partial
                .iter()
                .flat_map(|prefix| {
                    class.iter().map(move |&c| {
                        let mut s = prefix.clone();
                        s.push(c);
                        s
                    })
                })
                .collect();
        }
        Ok(partial.into_iter().map(RelationCode).collect())
    }

    /// The lexicographically least member of [`invert`](Self::invert).
    pub fn canonical_inverse(&self, code: &RelationCode) -> Result<RelationCode, AlgebraError> {
        let mut s = String::with_capacity(code.0.len());
        for symbol in code.steps().rev() {
            let class = self
                .inverse_classes
                .get(&symbol)
                .ok_or(AlgebraError::UnknownSymbol { position: 0, symbol })?;
            s.push(*class.first().ok_or(AlgebraError::NotInvertible(symbol))?);
        }
        Ok(RelationCode(s))
    }
}

impl FromStr for RelationCode {
    type Err = AlgebraError;

    /// Parses against the built-in registry.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationRegistry::builtin().parse(s)
    }
}
