//! Coordinate tuples indexed by a finite cyclic group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coordinate system a tuple lives in.
///
/// `Apery` tuples are points of the group cone (Apéry tuples of semigroups are
/// the congruent integer points there); `Kunz` tuples are points of the
/// translated Kunz polyhedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordKind {
    Apery,
    Kunz,
}

/// A tuple indexed by `Z_n`, carrying the phantom zero entry at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCoordTuple")]
pub struct CoordTuple {
    modulus: usize,
    kind: CoordKind,
    entries: Vec<i64>,
}

#[derive(Deserialize)]
struct RawCoordTuple {
    modulus: usize,
    kind: CoordKind,
    entries: Vec<i64>,
}

impl TryFrom<RawCoordTuple> for CoordTuple {
    type Error = Error;

    fn try_from(raw: RawCoordTuple) -> Result<Self> {
        if raw.modulus != raw.entries.len() {
            return Err(Error::InvalidTuple(format!(
                "modulus {} does not match {} entries",
                raw.modulus,
                raw.entries.len()
            )));
        }
        CoordTuple::new(raw.kind, raw.entries)
    }
}

impl CoordTuple {
    /// Builds a tuple from all `n` entries, including the leading zero.
    pub fn new(kind: CoordKind, entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidTuple(format!(
                "a tuple needs modulus at least 2, got {} entries",
                entries.len()
            )));
        }
        if entries[0] != 0 {
            return Err(Error::InvalidTuple(format!(
                "entry 0 must be the phantom zero, got {}",
                entries[0]
            )));
        }
        Ok(CoordTuple {
            modulus: entries.len(),
            kind,
            entries,
        })
    }

    /// Builds a tuple from the `n - 1` entries indexed by `1..n`.
    pub fn from_nonzero(kind: CoordKind, tail: &[i64]) -> Result<Self> {
        let mut entries = Vec::with_capacity(tail.len() + 1);
        entries.push(0);
        entries.extend_from_slice(tail);
        CoordTuple::new(kind, entries)
    }

    pub fn zero(kind: CoordKind, modulus: usize) -> Self {
        CoordTuple {
            modulus,
            kind,
            entries: vec![0; modulus],
        }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn kind(&self) -> CoordKind {
        self.kind
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Entry at the class of `g` modulo the modulus.
    pub fn at(&self, g: i64) -> i64 {
        self.entries[crate::zmod::residue(g, self.modulus)]
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.entries
    }

    pub fn with_kind(mut self, kind: CoordKind) -> Self {
        self.kind = kind;
        self
    }

    /// `c * self`, with overflow reported as an error.
    pub fn scaled(&self, c: i64) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|&e| e.checked_mul(c).ok_or(Error::Overflow("tuple scaling")))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoordTuple { entries, ..*self })
    }

    /// Entrywise sum; the result keeps the kind of `self`.
    pub fn checked_add(&self, other: &CoordTuple) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::InvalidTuple(format!(
                "cannot add tuples of moduli {} and {}",
                self.modulus, other.modulus
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow("tuple addition")))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoordTuple { entries, ..*self })
    }

    /// Divides out the gcd of the entries and makes the first nonzero entry
    /// positive.
    pub fn primitive(&self) -> Self {
        let g = crate::zmod::gcd_all(self.entries.iter().copied());
        if g == 0 {
            return self.clone();
        }
        let sign = self
            .entries
            .iter()
            .find(|&&e| e != 0)
            .map_or(1, |e| e.signum());
        let entries = self.entries.iter().map(|e| sign * e / g).collect();
        CoordTuple { entries, ..*self }
    }
}
