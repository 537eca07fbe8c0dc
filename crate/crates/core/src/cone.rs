//! Faces of the group cone `C(Z_n)` and of the Kunz polyhedron `P_n`.
//!
//! The cone is cut out by `x_i + x_j >= x_{i+j}` for nonzero `i, j` with
//! `i + j != 0`; the polyhedron uses the same inequalities on Kunz
//! coordinates, with a `+1` on the left whenever `i + j` wraps past `n`. A face
//! is recorded by its set of tight facets, stored as ordered pairs `(i, j)`
//! closed under swapping.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::coords::{CoordKind, CoordTuple};
use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::poset::KunzPoset;
use crate::zmod::{gcd, mod_inverse, residue, subgroup_elements};

/// Whether `(i, j)` indexes a facet of `C(Z_n)`.
///
/// `C(Z_2)` would have no facets at all; there the pair `(1, 1)`, i.e.
/// `x_1 + x_1 >= x_0 = 0`, is kept so that the cone is the ray `x_1 >= 0`
/// like every other group cone (for `n >= 3` these inequalities are
/// implied by the others).
pub fn is_facet(n: usize, i: usize, j: usize) -> bool {
    (1..n).contains(&i) && (1..n).contains(&j) && (!(i + j).is_multiple_of(n) || n == 2)
}

/// All facet index pairs `(i, j)` of `C(Z_n)`, in lexicographic order.
pub fn facet_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| {
        (1..n)
            .filter(move |&j| is_facet(n, i, j))
            .map(move |j| (i, j))
    })
}

/// Slack of the facet `(i, j)` at `x`; zero means tight.
pub fn facet_slack(x: &CoordTuple, i: usize, j: usize) -> i64 {
    let n = x.modulus();
    let e = x.entries();
    let wrap = i64::from(x.kind() == CoordKind::Kunz && i + j >= n);
    e[i] + e[j] + wrap - e[(i + j) % n]
}

/// `Ok` when `x` satisfies every inequality of its coordinate system;
/// otherwise `NotInCone` naming the first violation.
pub fn ensure_in_cone(x: &CoordTuple) -> Result<()> {
    if let Some(i) = (1..x.modulus()).find(|&i| x.entries()[i] < 0) {
        return Err(Error::NotInCone(format!(
            "coordinate {i} is negative ({})",
            x.entries()[i]
        )));
    }
    for (i, j) in facet_pairs(x.modulus()) {
        let slack = facet_slack(x, i, j);
        if slack < 0 {
            let k = (i + j) % x.modulus();
            let plus = if x.kind() == CoordKind::Kunz && i + j >= x.modulus() {
                " + 1"
            } else {
                ""
            };
            return Err(Error::NotInCone(format!(
                "x_{i} + x_{j}{plus} >= x_{k} fails by {}",
                -slack
            )));
        }
    }
    Ok(())
}

/// Whether `x` satisfies every inequality of its coordinate system.
pub fn in_cone(x: &CoordTuple) -> bool {
    ensure_in_cone(x).is_ok()
}

/// Kunz subgroup and Kunz poset of a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunzData {
    /// Smallest positive element of `H`.
    pub subgroup_gen: usize,
    pub poset: KunzPoset,
}

impl KunzData {
    pub fn subgroup(&self) -> Vec<usize> {
        subgroup_elements(self.poset.modulus(), self.subgroup_gen)
    }
}

/// A face of `C(Z_n)` given by the facets that hold with equality on it.
#[derive(Debug)]
pub struct ConeFace {
    modulus: usize,
    tight: BTreeSet<(usize, usize)>,
    kunz: OnceLock<Result<KunzData>>,
    dimension: OnceLock<Result<usize>>,
}

impl Clone for ConeFace {
    fn clone(&self) -> Self {
        ConeFace {
            modulus: self.modulus,
            tight: self.tight.clone(),
            kunz: self.kunz.clone(),
            dimension: self.dimension.clone(),
        }
    }
}

impl PartialEq for ConeFace {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.tight == other.tight
    }
}

impl Eq for ConeFace {}

impl ConeFace {
    fn with_tight(modulus: usize, tight: BTreeSet<(usize, usize)>) -> Self {
        ConeFace {
            modulus,
            tight,
            kunz: OnceLock::new(),
            dimension: OnceLock::new(),
        }
    }

    /// The face given by a list of tight facets; each pair is added in both
    /// orders.
    pub fn from_tight<I>(modulus: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if modulus < 2 {
            return Err(Error::InvalidFace(format!(
                "modulus must be at least 2, got {modulus}"
            )));
        }
        let mut tight = BTreeSet::new();
        for (i, j) in pairs {
            if !is_facet(modulus, i, j) {
                return Err(Error::InvalidFace(format!(
                    "({i}, {j}) is not a facet index of C(Z_{modulus})"
                )));
            }
            tight.insert((i, j));
            tight.insert((j, i));
        }
        Ok(ConeFace::with_tight(modulus, tight))
    }

    /// The whole cone: no tight facets.
    pub fn full(modulus: usize) -> Result<Self> {
        ConeFace::from_tight(modulus, [])
    }

    /// The smallest face containing `x`, i.e. the face with `x` in its
    /// relative interior. Apéry tuples are read in cone coordinates and Kunz
    /// tuples in polyhedron coordinates; the two tuples of one semigroup give
    /// the same face.
    pub fn of_point(x: &CoordTuple) -> Result<Self> {
        ensure_in_cone(x)?;
        let tight = facet_pairs(x.modulus())
            .filter(|&(i, j)| facet_slack(x, i, j) == 0)
            .collect();
        Ok(ConeFace::with_tight(x.modulus(), tight))
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Tight facets as ordered pairs, both orders present.
    pub fn tight(&self) -> &BTreeSet<(usize, usize)> {
        &self.tight
    }

    pub fn is_tight(&self, i: usize, j: usize) -> bool {
        self.tight.contains(&(i, j))
    }

    /// Tight facets with `i <= j`.
    pub fn tight_unordered(&self) -> Vec<(usize, usize)> {
        self.tight
            .iter()
            .copied()
            .filter(|&(i, j)| i <= j)
            .collect()
    }

    fn equality_row(&self, i: usize, j: usize) -> Vec<i64> {
        let n = self.modulus;
        let mut row = vec![0i64; n - 1];
        row[i - 1] += 1;
        row[j - 1] += 1;
        if !(i + j).is_multiple_of(n) {
            row[(i + j) % n - 1] -= 1;
        }
        row
    }

    /// Rows `x_i + x_j - x_{i+j}` over the coordinates `1..n`.
    pub fn equality_rows(&self) -> Vec<Vec<i64>> {
        self.tight_unordered()
            .into_iter()
            .map(|(i, j)| self.equality_row(i, j))
            .collect()
    }

    /// `(n - 1)` minus the rank of the tight equalities.
    pub fn dimension(&self) -> Result<usize> {
        self.dimension
            .get_or_init(|| {
                let rank = EchelonBasis::from_rows(self.modulus - 1, &self.equality_rows())?.rank();
                Ok(self.modulus - 1 - rank)
            })
            .clone()
    }

    /// Kunz subgroup and Kunz poset of the face.
    pub fn kunz_data(&self) -> Result<&KunzData> {
        self.kunz
            .get_or_init(|| self.compute_kunz_data())
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn kunz_poset(&self) -> Result<&KunzPoset> {
        Ok(&self.kunz_data()?.poset)
    }

    pub fn subgroup(&self) -> Result<Vec<usize>> {
        Ok(self.kunz_data()?.subgroup())
    }

    fn compute_kunz_data(&self) -> Result<KunzData> {
        let n = self.modulus;
        let neg = |g: usize| (n - g) % n;
        let mut basis = EchelonBasis::from_rows(n - 1, &self.equality_rows())?;
        let mut zero = vec![false; n];
        zero[0] = true;
        let mut step = n;

        // Every coordinate is non-negative on the cone, so a tight facet whose
        // right side vanishes forces both summands to vanish.
        loop {
            let mut found: Vec<usize> = Vec::new();
            for &(i, h) in &self.tight {
                let k = (i + h) % n;
                if !zero[h] && self.is_tight(k, neg(h)) {
                    // x_i + x_h = x_{i+h} and x_{i+h} + x_{-h} = x_i
                    found.extend([h, neg(h)]);
                }
                if zero[k] && !(zero[i] && zero[h]) {
                    found.extend([i, h]);
                }
            }
            for h in 1..n {
                if zero[h] {
                    continue;
                }
                let mut unit = vec![0i64; n - 1];
                unit[h - 1] = 1;
                if basis.spans(&unit)? {
                    found.push(h);
                }
            }
            found.retain(|&h| !zero[h]);
            if found.is_empty() {
                break;
            }
            step = found.iter().fold(step as i64, |acc, &h| gcd(acc, h as i64)) as usize;
            for h in (0..n).step_by(step) {
                if !zero[h] {
                    zero[h] = true;
                    let mut unit = vec![0i64; n - 1];
                    unit[h - 1] = 1;
                    basis.insert(&unit)?;
                }
            }
        }
        let d = step;

        for h in (d..n).step_by(d) {
            for i in 1..n {
                if i != neg(h) && !self.is_tight(i, h) {
                    return Err(Error::InconsistentFace(format!(
                        "x_{h} vanishes on the face but ({i}, {h}) is not tight"
                    )));
                }
            }
        }
        for (i, j) in facet_pairs(n) {
            if !self.is_tight(i, j) && basis.spans(&self.equality_row(i, j))? {
                return Err(Error::InconsistentFace(format!(
                    "the tight equalities force ({i}, {j}) to be tight"
                )));
            }
            let k = (i + j) % n;
            if i % d != 0
                && j % d != 0
                && !k.is_multiple_of(d)
                && self.is_tight(i, j) != self.is_tight(i % d, j % d)
            {
                return Err(Error::InconsistentFace(format!(
                    "tightness of ({i}, {j}) differs from its coset representative"
                )));
            }
        }

        let poset = KunzPoset::from_relation(n, d, |a, b| {
            a == b || a == 0 || (b != 0 && self.is_tight(a, residue(b as i64 - a as i64, n)))
        })
        .map_err(|e| Error::InconsistentFace(e.to_string()))?;
        Ok(KunzData {
            subgroup_gen: d,
            poset,
        })
    }

    /// Whether `x` lies in the closure of this face: in the cone, with every
    /// tight facet holding with equality.
    pub fn contains(&self, x: &CoordTuple) -> bool {
        x.modulus() == self.modulus
            && in_cone(x)
            && self.tight.iter().all(|&(i, j)| facet_slack(x, i, j) == 0)
    }

    /// Image under the automorphism `g -> u g` of `Z_n`.
    pub fn apply_automorphism(&self, u: i64) -> Result<Self> {
        let n = self.modulus;
        if mod_inverse(u, n as i64).is_none() {
            return Err(Error::NotAUnit {
                unit: u,
                modulus: n,
            });
        }
        let map = |g: usize| residue(u * g as i64, n);
        let tight = self.tight.iter().map(|&(i, j)| (map(i), map(j))).collect();
        Ok(ConeFace::with_tight(n, tight))
    }

    /// JSON-ready summary `{modulus, tight, dimension, subgroup}`.
    pub fn dump(&self) -> Result<FaceDump> {
        Ok(FaceDump {
            modulus: self.modulus,
            tight: self
                .tight_unordered()
                .into_iter()
                .map(|(i, j)| [i, j])
                .collect(),
            dimension: self.dimension()?,
            subgroup: self.subgroup()?,
        })
    }
}

/// Moves the entry at index `i` to index `u i`.
pub fn apply_automorphism(x: &CoordTuple, u: i64) -> Result<CoordTuple> {
    let n = x.modulus();
    let inv = mod_inverse(u, n as i64).ok_or(Error::NotAUnit {
        unit: u,
        modulus: n,
    })?;
    let entries = (0..n)
        .map(|g| x.entries()[residue(inv * g as i64, n)])
        .collect();
    CoordTuple::new(x.kind(), entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDump {
    pub modulus: usize,
    pub tight: Vec<[usize; 2]>,
    pub dimension: usize,
    pub subgroup: Vec<usize>,
}

impl TryFrom<FaceDump> for ConeFace {
    type Error = Error;

    /// Rebuilds the face and checks the recorded dimension and subgroup.
    fn try_from(dump: FaceDump) -> Result<Self> {
        let face = ConeFace::from_tight(dump.modulus, dump.tight.iter().map(|&[i, j]| (i, j)))?;
        if face.dimension()? != dump.dimension || face.subgroup()? != dump.subgroup {
            return Err(Error::InconsistentFace(
                "recorded dimension or subgroup does not match the tight facets".into(),
            ));
        }
        Ok(face)
    }
}
