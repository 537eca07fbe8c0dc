//! Numerical semigroups given by generators, with the brute-force operations
//! every closed form in this crate is checked against.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::coords::{CoordKind, CoordTuple};
use crate::error::{Error, Result};
use crate::zmod::{gcd_all, residue};

/// A numerical semigroup `<n_1, ..., n_k>` with minimal generators
/// `n_1 < ... < n_k`.
///
/// The Apéry set of the multiplicity is computed once at construction, so
/// membership is a single table lookup.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GeneratorList", into = "GeneratorList")]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    /// `apery[r]` is the least element congruent to `r` modulo the multiplicity.
    apery: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorList {
    generators: Vec<i64>,
}

impl TryFrom<GeneratorList> for NumericalSemigroup {
    type Error = Error;

    fn try_from(list: GeneratorList) -> Result<Self> {
        NumericalSemigroup::from_generators(&list.generators)
    }
}

impl From<NumericalSemigroup> for GeneratorList {
    fn from(s: NumericalSemigroup) -> Self {
        GeneratorList {
            generators: s.generators,
        }
    }
}

/// Largest modulus for which residue tables are materialized.
pub const MAX_MODULUS: i64 = 1 << 22;

/// Shortest paths from 0 in the residue graph on `Z_m`, where each generator
/// `g` adds the arc `r -> r + g` of weight `g`. `None` marks classes that no
/// combination of `gens` reaches.
fn residue_distances(gens: &[i64], m: i64) -> Result<Vec<Option<i64>>> {
    if m > MAX_MODULUS {
        return Err(Error::TooLarge(format!(
            "modulus {m} exceeds the supported bound {MAX_MODULUS}"
        )));
    }
    let m_us = m as usize;
    let mut dist: Vec<Option<i64>> = vec![None; m_us];
    dist[0] = Some(0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0i64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if dist[r] != Some(d) {
            continue;
        }
        for &g in gens {
            let next = d
                .checked_add(g)
                .ok_or(Error::Overflow("Apéry computation"))?;
            let s = (r + (g % m) as usize) % m_us;
            if dist[s].is_none_or(|cur| next < cur) {
                dist[s] = Some(next);
                heap.push(Reverse((next, s)));
            }
        }
    }
    Ok(dist)
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens`, discarding redundant
    /// generators.
    pub fn from_generators(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&bad) = gens.iter().find(|&&g| g <= 0) {
            return Err(Error::NonPositiveGenerator(bad));
        }
        let g = gcd_all(gens.iter().copied());
        if g != 1 {
            return Err(Error::NotCofinite(g));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();

        let m = sorted[0];
        let mut kept = vec![m];
        for &g in &sorted[1..] {
            let dist = residue_distances(&kept, m)?;
            let representable = dist[(g % m) as usize].is_some_and(|d| d <= g);
            if !representable {
                kept.push(g);
            }
        }
        let apery = residue_distances(&kept, m)?
            .into_iter()
            .map(|d| d.expect("cofinite semigroups reach every residue"))
            .collect();
        Ok(NumericalSemigroup {
            generators: kept,
            apery,
        })
    }

    /// Minimal generators in increasing order.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn is_minimal_generator(&self, n: i64) -> bool {
        self.generators.binary_search(&n).is_ok()
    }

    /// Membership; negative integers are never members.
    pub fn contains(&self, n: i64) -> bool {
        n >= 0 && n >= self.apery[residue(n, self.apery.len())]
    }

    /// `Ap(S; m)` indexed by residue class: entry `i` is the least element of
    /// the semigroup congruent to `i` modulo `m`.
    pub fn apery_tuple(&self, m: i64) -> Result<Vec<i64>> {
        if m <= 0 || !self.contains(m) {
            return Err(Error::NotAnElement(m));
        }
        if m == self.multiplicity() {
            return Ok(self.apery.clone());
        }
        Ok(residue_distances(&self.generators, m)?
            .into_iter()
            .map(|d| d.expect("m is an element, so every class is reached"))
            .collect())
    }

    /// `Ap(S; m)` as a sorted list.
    pub fn apery_set(&self, m: i64) -> Result<Vec<i64>> {
        let mut set = self.apery_tuple(m)?;
        set.sort_unstable();
        Ok(set)
    }

    /// Largest integer outside the semigroup.
    pub fn frobenius(&self) -> Result<i64> {
        let m = self.multiplicity();
        if m == 1 {
            return Err(Error::NoGaps);
        }
        Ok(self.apery.iter().max().copied().unwrap_or(0) - m)
    }

    /// Apéry or Kunz coordinates with respect to `m`.
    pub fn coordinates(&self, m: i64, kind: CoordKind) -> Result<CoordTuple> {
        let apery = self.apery_tuple(m)?;
        let entries = match kind {
            CoordKind::Apery => apery,
            CoordKind::Kunz => apery
                .iter()
                .enumerate()
                .map(|(i, &a)| (a - i as i64) / m)
                .collect(),
        };
        CoordTuple::new(kind, entries)
    }

    /// The semigroup whose Kunz tuple with respect to `m` is `z`
    /// (`z` lists the entries for classes `1..m`).
    pub fn from_kunz_tuple(m: i64, z: &[i64]) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidTuple(format!(
                "modulus must be at least 2, got {m}"
            )));
        }
        if z.len() as i64 != m - 1 {
            return Err(Error::InvalidTuple(format!(
                "expected {} Kunz coordinates for m = {m}, got {}",
                m - 1,
                z.len()
            )));
        }
        let mu = m as usize;
        let coord = |i: usize| if i == 0 { 0 } else { z[i - 1] };
        if let Some(i) = (1..mu).find(|&i| coord(i) < 0) {
            return Err(Error::NotInPolyhedron(format!(
                "z_{i} = {} is negative",
                coord(i)
            )));
        }
        for i in 1..mu {
            for j in i..mu {
                let (sum, target, wrap) = match (i + j).cmp(&mu) {
                    std::cmp::Ordering::Less => (coord(i) + coord(j), i + j, ""),
                    std::cmp::Ordering::Greater => (coord(i) + coord(j) + 1, i + j - mu, " + 1"),
                    std::cmp::Ordering::Equal => continue,
                };
                if sum < coord(target) {
                    return Err(Error::NotInPolyhedron(format!(
                        "z_{i} + z_{j}{wrap} = {sum} < z_{target} = {}",
                        coord(target)
                    )));
                }
            }
        }
        let mut gens = Vec::with_capacity(mu);
        gens.push(m);
        for (i, &zi) in z.iter().enumerate() {
            let a = zi
                .checked_mul(m)
                .and_then(|v| v.checked_add(i as i64 + 1))
                .ok_or(Error::Overflow("Kunz tuple"))?;
            gens.push(a);
        }
        NumericalSemigroup::from_generators(&gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    #[test]
    fn minimalizes_generators() {
        assert_eq!(sg(&[4, 13, 18, 26]).generators(), &[4, 13, 18]);
        assert_eq!(sg(&[2, 3]).generators(), &[2, 3]);
        assert_eq!(sg(&[3, 2, 3, 9]).generators(), &[2, 3]);
        assert_eq!(sg(&[1, 5]).generators(), &[1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            NumericalSemigroup::from_generators(&[4, 6]),
            Err(Error::NotCofinite(2))
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[]),
            Err(Error::EmptyGenerators)
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[0, 1]),
            Err(Error::NonPositiveGenerator(0))
        );
    }

    #[test]
    fn membership() {
        let s = sg(&[11, 12, 14, 16, 18, 20]);
        assert!(!s.contains(21));
        assert!(s.contains(22));
        assert!(s.contains(0));
        assert!(!s.contains(-11));
        assert!(!sg(&[2, 3]).contains(1));
    }

    #[test]
    fn apery_sets() {
        let s = sg(&[4, 13, 18]);
        assert_eq!(s.apery_set(4).unwrap(), vec![0, 13, 18, 31]);
        assert_eq!(s.apery_tuple(4).unwrap(), vec![0, 13, 18, 31]);
        assert_eq!(s.apery_set(5), Err(Error::NotAnElement(5)));
        assert_eq!(sg(&[2, 3]).apery_set(2).unwrap(), vec![0, 3]);
        // non-multiplicity modulus goes through the residue graph
        assert_eq!(sg(&[2, 3]).apery_tuple(3).unwrap(), vec![0, 4, 2]);
    }

    #[test]
    fn frobenius_numbers() {
        assert_eq!(sg(&[2, 3]).frobenius(), Ok(1));
        assert_eq!(sg(&[11, 12, 14, 16, 18, 20]).frobenius(), Ok(21));
        assert_eq!(sg(&[4, 13, 18]).frobenius(), Ok(27));
        assert_eq!(sg(&[1]).frobenius(), Err(Error::NoGaps));
    }

    #[test]
    fn coordinates_of_example() {
        let s = sg(&[4, 13, 18]);
        assert_eq!(
            s.coordinates(4, CoordKind::Apery).unwrap().entries(),
            &[0, 13, 18, 31]
        );
        assert_eq!(
            s.coordinates(4, CoordKind::Kunz).unwrap().entries(),
            &[0, 3, 4, 7]
        );
        assert_eq!(
            sg(&[2, 3])
                .coordinates(2, CoordKind::Kunz)
                .unwrap()
                .entries(),
            &[0, 1]
        );
    }

    #[test]
    fn kunz_tuple_inverse() {
        assert_eq!(
            NumericalSemigroup::from_kunz_tuple(4, &[3, 4, 7]).unwrap(),
            sg(&[4, 13, 18])
        );
        assert_eq!(
            NumericalSemigroup::from_kunz_tuple(2, &[1]).unwrap(),
            sg(&[2, 3])
        );
        let err = NumericalSemigroup::from_kunz_tuple(4, &[1, 3, 1]).unwrap_err();
        assert_eq!(
            err,
            Error::NotInPolyhedron("z_1 + z_1 = 2 < z_2 = 3".to_string())
        );
    }

    #[test]
    fn json_round_trip() {
        let s = sg(&[4, 13, 18, 26]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"generators":[4,13,18]}"#);
        let back: NumericalSemigroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<NumericalSemigroup>(r#"{"generators":[4,6]}"#).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = (i64::MAX / 3) * 3 - 2;
        assert_eq!(
            NumericalSemigroup::from_generators(&[3, big]),
            Err(Error::Overflow("Apéry computation"))
        );
    }
}
