use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer vector indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation(Vec<i64>);

impl Valuation {
    pub fn new(values: Vec<i64>) -> Valuation {
        Valuation(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Entries all in {-1, 0, +1}.
    pub fn is_ternary(&self) -> bool {
        self.0.iter().all(|x| (-1..=1).contains(x))
    }

    /// Vertices with nonzero value, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn negated(&self) -> Valuation {
        Valuation(self.0.iter().map(|x| -x).collect())
    }

    /// Representative of `{v, -v}` whose first nonzero entry is positive.
    pub fn sign_normalized(&self) -> Valuation {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.negated(),
            _ => self.clone(),
        }
    }

    /// Appends `count` zeros.
    pub fn extended(&self, count: usize) -> Valuation {
        let mut values = self.0.clone();
        values.resize(values.len() + count, 0);
        Valuation(values)
    }

    /// Restriction along an old-to-new vertex map.
    pub fn restricted(&self, map: &[Option<usize>]) -> Valuation {
        let kept = map.iter().filter(|m| m.is_some()).count();
        let mut values = vec![0; kept];
        for (old, new) in map.iter().enumerate() {
            if let Some(new) = new {
                values[*new] = self.0[old];
            }
        }
        Valuation(values)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                found: self.0.len(),
            })
        }
    }
}

impl Deref for Valuation {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Valuation {
    fn from(values: Vec<i64>) -> Self {
        Valuation(values)
    }
}

impl From<&[i64]> for Valuation {
    fn from(values: &[i64]) -> Self {
        Valuation(values.to_vec())
    }
}

/// Comma separated integers, e.g. `1,0,-1`.
impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Valuation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Valuation> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::MalformedVector("empty literal".into()));
        }
        s.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::MalformedVector(format!("bad entry {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Valuation)
    }
}
