//! Apéry posets and Kunz posets on quotients of `Z_n`.
//!
//! A [`KunzPoset`] lives on `Z_n / H` for a subgroup `H = <d>` with `d | n`.
//! Cosets are represented by their smallest non-negative member, so the
//! ground set is always `0..d` and the group law on it is addition mod `d`.
//! The order is stored as one bitset per element (the elements above it).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::zmod::{gcd, mod_inverse, residue, subgroup_elements};

type Bits = Vec<u64>;

fn bits_new(len: usize) -> Bits {
    vec![0; len.div_ceil(64)]
}

#[inline]
fn bit(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            (word != 0).then(|| {
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                w * 64 + t
            })
        })
    })
}

/// A partial order on `Z_n / H` with the class of 0 as its minimum.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PosetDump", into = "PosetDump")]
pub struct KunzPoset {
    modulus: usize,
    /// Index of `H` in `Z_n`, i.e. the size of the ground set.
    order: usize,
    up: Vec<Bits>,
    labels: Option<Vec<i64>>,
}

/// Labels are presentation only; two posets are equal when they have the same
/// ground set and relation.
impl PartialEq for KunzPoset {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.order == other.order && self.up == other.up
    }
}

impl Eq for KunzPoset {}

impl KunzPoset {
    /// Builds a poset on `Z_n / <d>` from a relation predicate on canonical
    /// representatives `0..d`, checking the partial order axioms and that the
    /// class of 0 is the minimum.
    pub fn from_relation<F>(modulus: usize, subgroup_gen: usize, leq: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> bool,
    {
        let poset = Self::build(modulus, subgroup_gen, leq)?;
        poset.check_axioms()?;
        Ok(poset)
    }

    /// Builds without checking the axioms; used where the construction already
    /// guarantees a partial order.
    pub(crate) fn from_relation_trusted<F>(modulus: usize, subgroup_gen: usize, leq: F) -> Self
    where
        F: FnMut(usize, usize) -> bool,
    {
        let poset = Self::build(modulus, subgroup_gen, leq).expect("valid quotient");
        debug_assert!(poset.check_axioms().is_ok(), "{:?}", poset.check_axioms());
        poset
    }

    fn build<F>(modulus: usize, subgroup_gen: usize, mut leq: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> bool,
    {
        if modulus == 0 || subgroup_gen == 0 || !modulus.is_multiple_of(subgroup_gen) {
            return Err(Error::InvalidQuotient(format!(
                "{subgroup_gen} does not generate a subgroup of Z_{modulus} by a divisor"
            )));
        }
        let order = subgroup_gen;
        let up = (0..order)
            .map(|a| {
                let mut row = bits_new(order);
                for b in 0..order {
                    if leq(a, b) {
                        set_bit(&mut row, b);
                    }
                }
                row
            })
            .collect();
        Ok(KunzPoset {
            modulus,
            order,
            up,
            labels: None,
        })
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.order;
        for a in 0..d {
            if !bit(&self.up[a], a) {
                return Err(Error::NotAPartialOrder(format!(
                    "{a} is not related to itself"
                )));
            }
            if !bit(&self.up[0], a) {
                return Err(Error::NotAPartialOrder(format!("0 is not below {a}")));
            }
            for b in ones(&self.up[a]) {
                if b != a && bit(&self.up[b], a) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{a} and {b} are related both ways"
                    )));
                }
                // everything above b must be above a
                if self.up[b].iter().zip(&self.up[a]).any(|(x, y)| x & !y != 0) {
                    let c = ones(&self.up[b]).find(|&c| !bit(&self.up[a], c)).unwrap();
                    return Err(Error::NotAPartialOrder(format!(
                        "{a} <= {b} <= {c} but not {a} <= {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds the poset whose cover relation is `covers` (pairs `(a, b)` with
    /// `b` covering `a`), taking the reflexive transitive closure.
    pub fn from_covers(
        modulus: usize,
        subgroup_gen: usize,
        covers: &[(usize, usize)],
    ) -> Result<Self> {
        let d = subgroup_gen;
        if modulus == 0 || d == 0 || !modulus.is_multiple_of(d) {
            return Err(Error::InvalidQuotient(format!(
                "{d} does not generate a subgroup of Z_{modulus} by a divisor"
            )));
        }
        let mut table = vec![false; d * d];
        for a in 0..d {
            table[a * d + a] = true;
        }
        for &(a, b) in covers {
            if a >= d || b >= d {
                return Err(Error::NotAPartialOrder(format!(
                    "cover ({a}, {b}) is outside 0..{d}"
                )));
            }
            table[a * d + b] = true;
        }
        for k in 0..d {
            for i in 0..d {
                if table[i * d + k] {
                    for j in 0..d {
                        if table[k * d + j] {
                            table[i * d + j] = true;
                        }
                    }
                }
            }
        }
        KunzPoset::from_relation(modulus, d, |a, b| table[a * d + b])
    }

    pub fn with_labels(mut self, labels: Vec<i64>) -> Self {
        assert_eq!(labels.len(), self.order, "one label per ground element");
        self.labels = Some(labels);
        self
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Number of ground elements, `|Z_n / H|`.
    pub fn len(&self) -> usize {
        self.order
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Smallest positive generator of the Kunz subgroup `H`.
    pub fn subgroup_generator(&self) -> usize {
        self.order
    }

    /// Elements of `H`, ascending.
    pub fn subgroup(&self) -> Vec<usize> {
        subgroup_elements(self.modulus, self.order)
    }

    /// Canonical coset representatives, ascending.
    pub fn ground(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Canonical representative of the coset of `g`.
    pub fn class_of(&self, g: i64) -> usize {
        residue(g, self.order)
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    /// `a ⪯ b` for arbitrary group elements (reduced to their cosets).
    pub fn leq(&self, a: i64, b: i64) -> bool {
        bit(&self.up[self.class_of(a)], self.class_of(b))
    }

    /// Ground elements strictly above `a`, ascending.
    pub fn strictly_above(&self, a: usize) -> Vec<usize> {
        ones(&self.up[a]).filter(|&b| b != a).collect()
    }

    /// Strict relations `a < b`, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.order)
            .flat_map(|a| {
                ones(&self.up[a])
                    .filter(move |&b| b != a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    /// Cover relations `(a, b)` with `b` covering `a`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.order {
            let mut strict = self.up[a].clone();
            strict[a / 64] &= !(1 << (a % 64));
            // elements strictly above some element strictly above a
            let mut far = bits_new(self.order);
            for c in ones(&strict) {
                for (w, (f, &u)) in far.iter_mut().zip(&self.up[c]).enumerate() {
                    let own = if w == c / 64 { 1 << (c % 64) } else { 0 };
                    *f |= u & !own;
                }
            }
            out.extend(ones(&strict).filter(|&b| !bit(&far, b)).map(|b| (a, b)));
        }
        out
    }

    /// Elements covering the minimum.
    pub fn atoms(&self) -> Vec<usize> {
        self.covers()
            .into_iter()
            .filter(|&(a, _)| a == 0)
            .map(|(_, b)| b)
            .collect()
    }

    /// Rank function with the minimum at height 0, if the poset is graded.
    pub fn heights(&self) -> Result<Vec<usize>> {
        let covers = self.covers();
        // ascending by number of elements below gives a linear extension
        let mut below = vec![0usize; self.order];
        for a in 0..self.order {
            for b in ones(&self.up[a]) {
                below[b] += 1;
            }
        }
        let mut order: Vec<usize> = (0..self.order).collect();
        order.sort_by_key(|&b| below[b]);
        let mut height = vec![0usize; self.order];
        let mut lower: Vec<Vec<usize>> = vec![Vec::new(); self.order];
        for &(a, b) in &covers {
            lower[b].push(a);
        }
        for &b in &order {
            height[b] = lower[b].iter().map(|&a| height[a] + 1).max().unwrap_or(0);
        }
        if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| height[b] != height[a] + 1) {
            return Err(Error::NotGraded(format!(
                "{b} covers {a} but their longest-chain heights are {} and {}",
                height[b], height[a]
            )));
        }
        Ok(height)
    }

    pub fn is_graded(&self) -> bool {
        self.heights().is_ok()
    }

    /// Checks that `b` covers `a` exactly when `b - a` is an atom.
    pub fn satisfies_atom_cover_criterion(&self) -> bool {
        let d = self.order;
        let atoms = self.atoms();
        let covers = self.covers();
        (0..d).all(|a| {
            ones(&self.up[a]).filter(|&b| b != a).all(|b| {
                let is_cover = covers.binary_search(&(a, b)).is_ok();
                let diff_is_atom = atoms.contains(&((b + d - a) % d));
                is_cover == diff_is_atom
            })
        })
    }

    /// The image under multiplication by a unit `u` of `Z_n`.
    pub fn apply_automorphism(&self, u: i64) -> Result<Self> {
        let n = self.modulus as i64;
        let inv = mod_inverse(u, n).ok_or(Error::NotAUnit {
            unit: u,
            modulus: self.modulus,
        })?;
        let d = self.order as i64;
        let pull = |g: usize| residue(g as i64 * inv, d as usize);
        let mut image = Self::from_relation_trusted(self.modulus, self.order, |a, b| {
            bit(&self.up[pull(a)], pull(b))
        });
        if let Some(labels) = &self.labels {
            image.labels = Some((0..self.order).map(|g| labels[pull(g)]).collect());
        }
        Ok(image)
    }

    /// Hasse diagram in DOT format, drawn bottom to top.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph kunz_poset {\n");
        out.push_str("  rankdir=BT;\n");
        out.push_str("  node [shape=plaintext];\n");
        for g in 0..self.order {
            let label = match &self.labels {
                Some(labels) => format!("{g} ({})", labels[g]),
                None => g.to_string(),
            };
            let _ = writeln!(out, "  n{g} [label=\"{label}\"];");
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        if let Ok(heights) = self.heights() {
            let top = heights.iter().copied().max().unwrap_or(0);
            for h in 0..=top {
                let row: Vec<String> = (0..self.order)
                    .filter(|&g| heights[g] == h)
                    .map(|g| format!("n{g};"))
                    .collect();
                let _ = writeln!(out, "  {{ rank=same; {} }}", row.join(" "));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The Apéry poset of `m` in `S`: ground set `Z_m`, labels the Apéry
/// elements, and `i ⪯ j` when `a_j - a_i` is itself an Apéry element.
pub fn apery_poset(s: &NumericalSemigroup, m: i64) -> Result<KunzPoset> {
    let apery = s.apery_tuple(m)?;
    let mu = apery.len();
    let poset = KunzPoset::from_relation_trusted(mu, mu, |i, j| {
        i == j || apery[j] - apery[i] == apery[(j + mu - i) % mu]
    });
    Ok(poset.with_labels(apery))
}

/// The Kunz poset of `S` with respect to `m`: the Apéry poset with each
/// element replaced by its residue class.
pub fn kunz_poset_of(s: &NumericalSemigroup, m: i64) -> Result<KunzPoset> {
    let mut poset = apery_poset(s, m)?;
    poset.labels = None;
    Ok(poset)
}

/// JSON form `{modulus, subgroup, relations}`; `relations` lists the strict
/// relations `[a, b]` with `a < b` on canonical representatives.
#[derive(Serialize, Deserialize)]
pub struct PosetDump {
    modulus: usize,
    subgroup: Vec<usize>,
    relations: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<i64>>,
}

impl From<KunzPoset> for PosetDump {
    fn from(p: KunzPoset) -> Self {
        PosetDump {
            modulus: p.modulus,
            subgroup: p.subgroup(),
            relations: p.relations().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: p.labels,
        }
    }
}

impl TryFrom<PosetDump> for KunzPoset {
    type Error = Error;

    fn try_from(dump: PosetDump) -> Result<Self> {
        let n = dump.modulus;
        let d = dump
            .subgroup
            .iter()
            .fold(n as i64, |acc, &h| gcd(acc, h as i64)) as usize;
        if d == 0 || dump.subgroup != subgroup_elements(n, d) {
            return Err(Error::InvalidQuotient(format!(
                "{:?} is not a subgroup of Z_{n}",
                dump.subgroup
            )));
        }
        let mut table = vec![false; d * d];
        for [a, b] in dump.relations {
            if a >= d || b >= d {
                return Err(Error::NotAPartialOrder(format!(
                    "relation ({a}, {b}) is not on canonical representatives 0..{d}"
                )));
            }
            table[a * d + b] = true;
        }
        let poset = KunzPoset::from_relation(n, d, |a, b| a == b || table[a * d + b])?;
        Ok(match dump.labels {
            Some(labels) if labels.len() == d => poset.with_labels(labels),
            Some(_) => {
                return Err(Error::InvalidTuple("one label per ground element".into()));
            }
            None => poset,
        })
    }
}
