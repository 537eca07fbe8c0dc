//! Extra-generalized arithmetical semigroups
//! `<a, ah + d, ah + 2d, ..., ah + kd>` and their closed forms.
//!
//! The nonzero Apéry elements of `a` sit on a grid with `k` columns: position
//! `m = (x - 1) k + y` holds `x a h + m d`, in residue class `m d`.

use serde::{Deserialize, Serialize};

use crate::cone::{apply_automorphism, ConeFace};
use crate::coords::{CoordKind, CoordTuple};
use crate::error::{Error, Result};
use crate::poset::KunzPoset;
use crate::semigroup::{NumericalSemigroup, MAX_MODULUS};
use crate::zmod::{ceil_div, gcd, mod_inverse, residue};

/// Validated parameters `(a, h, k, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct EgaParams {
    a: i64,
    h: i64,
    k: i64,
    d: i64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    a: i64,
    h: i64,
    k: i64,
    d: i64,
}

impl TryFrom<RawParams> for EgaParams {
    type Error = Error;

    fn try_from(p: RawParams) -> Result<Self> {
        EgaParams::new(p.a, p.h, p.k, p.d)
    }
}

impl From<EgaParams> for RawParams {
    fn from(p: EgaParams) -> Self {
        RawParams {
            a: p.a,
            h: p.h,
            k: p.k,
            d: p.d,
        }
    }
}

impl EgaParams {
    pub fn new(a: i64, h: i64, k: i64, d: i64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if a < 2 {
            return bad(format!("multiplicity a = {a} must be at least 2"));
        }
        if a > MAX_MODULUS {
            return Err(Error::TooLarge(format!(
                "multiplicity {a} exceeds the supported bound {MAX_MODULUS}"
            )));
        }
        if h < 1 {
            return bad(format!("h = {h} must be at least 1"));
        }
        if k < 1 || k >= a {
            return bad(format!("k = {k} must satisfy 1 <= k < a = {a}"));
        }
        if d == 0 {
            return bad("d must be nonzero".into());
        }
        if gcd(a, d) != 1 {
            return bad(format!(
                "gcd(a, d) = gcd({a}, {d}) = {} is not 1",
                gcd(a, d)
            ));
        }
        let (a1, h1, k1, d1) = (a as i128, h as i128, k as i128, d as i128);
        let first = a1 * h1 + d1;
        let last = a1 * h1 + k1 * d1;
        if first.min(last) <= 0 {
            return bad(format!("generator {} is not positive", first.min(last)));
        }
        if last <= a1 {
            return bad(format!("ah + kd = {last} must exceed a = {a}"));
        }
        let p = EgaParams { a, h, k, d };
        if i64::try_from(p.max_apery()).is_err() {
            return Err(Error::Overflow("Apéry elements of the parameters"));
        }
        Ok(p)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `ah + d, ..., ah + kd`, ascending when `d > 0` and descending otherwise.
    pub fn step_generators(&self) -> Vec<i64> {
        (1..=self.k).map(|i| self.a * self.h + i * self.d).collect()
    }

    /// Minimal generators in increasing order.
    pub fn generators(&self) -> Vec<i64> {
        let mut gens = self.step_generators();
        gens.push(self.a);
        gens.sort_unstable();
        gens
    }

    /// Number of grid rows, `ceil((a - 1) / k)`.
    fn rows(&self) -> i64 {
        ceil_div(self.a - 1, self.k)
    }

    fn max_apery(&self) -> i128 {
        let (a, h, k, d) = (
            self.a as i128,
            self.h as i128,
            self.k as i128,
            self.d as i128,
        );
        let x = self.rows() as i128;
        if d > 0 {
            x * a * h + (a - 1) * d
        } else {
            x * (a * h + k * d) + (1 - k) * d
        }
    }
}

/// Grid position of a nonzero Apéry element: row `x >= 1`, column
/// `1 <= y <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridCoord {
    pub x: i64,
    pub y: i64,
}

impl GridCoord {
    /// The cell holding position `m` (counted from 1) of a grid with `k`
    /// columns.
    pub fn of_position(m: i64, k: i64) -> Self {
        GridCoord {
            x: (m - 1) / k + 1,
            y: (m - 1) % k + 1,
        }
    }

    pub fn position(&self, k: i64) -> i64 {
        (self.x - 1) * k + self.y
    }

    /// Grid order: strictly higher row and no later column.
    pub fn below(&self, other: &GridCoord) -> bool {
        self.x < other.x && self.y >= other.y
    }
}

impl EgaParams {
    /// The semigroup generated by `a, ah + d, ..., ah + kd`, whether or not
    /// that generating set is minimal.
    pub fn semigroup(&self) -> Result<NumericalSemigroup> {
        NumericalSemigroup::from_generators(&self.generators())
    }

    /// Whether `a, ah + d, ..., ah + kd` is the minimal generating set.
    ///
    /// `ah + kd > a` alone does not guarantee this when `d < 0`: for
    /// `(5, 3, 3, -3)` the generator `12` is `6 + 6`.
    pub fn is_minimal(&self) -> Result<bool> {
        Ok(self.semigroup()?.embedding_dimension() as i64 == self.k + 1)
    }
}

/// Parameters together with the semigroup they generate; rejects parameters
/// whose generating set is not minimal.
pub fn ega_new(a: i64, h: i64, k: i64, d: i64) -> Result<(EgaParams, NumericalSemigroup)> {
    let p = EgaParams::new(a, h, k, d)?;
    let s = p.semigroup()?;
    if s.generators() != p.generators() {
        return Err(Error::InvalidParams(format!(
            "generators {:?} are not minimal (minimal set {:?})",
            p.generators(),
            s.generators()
        )));
    }
    Ok((p, s))
}

/// `(r, q)` with `r d ≡ n (mod a)`, `0 <= r < a` and `n = q a + r d`.
fn grid_split(p: &EgaParams, n: i64) -> (i64, i128) {
    let dinv = mod_inverse(p.d, p.a).expect("d is a unit modulo a");
    let r = (n.rem_euclid(p.a) as i128 * dinv as i128 % p.a as i128) as i64;
    let q = (n as i128 - r as i128 * p.d as i128) / p.a as i128;
    (r, q)
}

pub fn ega_contains(p: &EgaParams, n: i64) -> bool {
    let (r, q) = grid_split(p, n);
    q >= 0 && (ceil_div(r, p.k) as i128) * (p.h as i128) <= q
}

/// Whether `n` lies in `Ap(S; a)`.
pub fn ega_is_apery(p: &EgaParams, n: i64) -> bool {
    let (r, q) = grid_split(p, n);
    (ceil_div(r, p.k) as i128) * (p.h as i128) == q
}

/// The `a - 1` nonzero Apéry elements of `a` with their grid cells, by
/// position.
pub fn ega_apery_grid(p: &EgaParams) -> Vec<(GridCoord, i64)> {
    (1..p.a)
        .map(|m| {
            let cell = GridCoord::of_position(m, p.k);
            let value = cell.x * p.a * p.h + m * p.d;
            debug_assert!(ega_is_apery(p, value));
            (cell, value)
        })
        .collect()
}

/// The Kunz poset shared by every member of the family with these `a`, `k`
/// and residue of `d`.
pub fn ega_kunz_poset(a: i64, k: i64, d: i64) -> Result<KunzPoset> {
    if a < 2 || k < 1 || k >= a {
        return Err(Error::InvalidParams(format!(
            "need 1 <= k < a, got a = {a}, k = {k}"
        )));
    }
    if a > MAX_MODULUS {
        return Err(Error::TooLarge(format!(
            "multiplicity {a} exceeds {MAX_MODULUS}"
        )));
    }
    let dinv = mod_inverse(d, a)
        .ok_or_else(|| Error::InvalidParams(format!("gcd(a, d) = gcd({a}, {d}) is not 1")))?;
    let n = a as usize;
    let cell = |class: usize| GridCoord::of_position(residue(class as i64 * dinv, n) as i64, k);
    KunzPoset::from_relation(n, n, |i, j| {
        i == j || i == 0 || (j != 0 && cell(i).below(&cell(j)))
    })
}

pub fn ega_frobenius(p: &EgaParams) -> i64 {
    // fits: checked when the parameters were validated
    (p.max_apery() - p.a as i128) as i64
}

/// Dimension of the face of `C(Z_a)` containing the family with these `a`
/// and `k`.
pub fn ega_face_dimension(a: i64, k: i64) -> Result<i64> {
    if a < 2 || k < 1 || k >= a {
        return Err(Error::InvalidParams(format!(
            "need 1 <= k < a, got a = {a}, k = {k}"
        )));
    }
    Ok(if k == a - 1 {
        a - 1
    } else if k == a - 2 {
        a / 2
    } else if k == 1 {
        1
    } else {
        2
    })
}

/// The two extremal rays of a 2-dimensional face, in cone coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgaRays {
    pub r: CoordTuple,
    pub t: CoordTuple,
}

/// Extremal rays of the face containing the family, for `1 < k < a - 2`.
///
/// The rays are computed for `d ≡ 1` and carried over by the automorphism
/// `g -> d g`. Both are checked against the face before being returned.
pub fn ega_rays(p: &EgaParams) -> Result<EgaRays> {
    let (a, k) = (p.a, p.k);
    if !(1 < k && k < a - 2) {
        return Err(Error::OutOfRegime { a, k });
    }
    let r1: Vec<i64> = (0..a).collect();
    let t1: Vec<i64> = (0..a)
        .map(|m| {
            if m == 0 {
                0
            } else {
                GridCoord::of_position(m, k).x * a - m * (a / k)
            }
        })
        .collect();
    let u = p.d.rem_euclid(a);
    let r = apply_automorphism(&CoordTuple::new(CoordKind::Apery, r1)?, u)?.primitive();
    let t = apply_automorphism(&CoordTuple::new(CoordKind::Apery, t1)?, u)?.primitive();

    let mut apery = vec![0i64; a as usize];
    for (m, (_, v)) in (1..).zip(ega_apery_grid(p)) {
        apery[residue(m * p.d, a as usize)] = v;
    }
    let face = ConeFace::of_point(&CoordTuple::new(CoordKind::Apery, apery)?)?;
    for (name, ray) in [("r", &r), ("t", &t)] {
        let ray_face = ConeFace::of_point(ray)?;
        if !face.contains(ray) || !ray_face.tight().is_superset(face.tight()) || ray_face == face {
            return Err(Error::InconsistentFace(format!(
                "ray {name} does not lie on a proper subface of the family's face"
            )));
        }
    }
    Ok(EgaRays { r, t })
}

/// Recognizes members of the family from their minimal generators.
pub fn ega_detect(s: &NumericalSemigroup) -> Option<EgaParams> {
    let a = s.multiplicity();
    let rest = &s.generators()[1..];
    let candidates: Vec<(i64, i64)> = match rest {
        [] => return None,
        // <a, b>: any split b = a h + d with d a unit works; take 0 < d < a
        [b] => vec![(b / a, b % a)],
        [g1, g2, ..] => {
            let delta = g2 - g1;
            if rest.windows(2).any(|w| w[1] - w[0] != delta) {
                return None;
            }
            let top = *rest.last().expect("non-empty");
            let mut c = Vec::new();
            if (g1 - delta) % a == 0 {
                c.push(((g1 - delta) / a, delta));
            }
            if (top + delta) % a == 0 {
                c.push(((top + delta) / a, -delta));
            }
            c
        }
    };
    let k = rest.len() as i64;
    candidates.into_iter().find_map(|(h, d)| {
        EgaParams::new(a, h, k, d)
            .ok()
            .filter(|p| p.generators() == s.generators())
    })
}

/// Summary printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgaReport {
    pub a: i64,
    pub h: i64,
    pub k: i64,
    pub d: i64,
    pub frobenius: i64,
    pub face_dimension: i64,
    pub rays: Option<RayEntries>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayEntries {
    pub r: Vec<i64>,
    pub t: Vec<i64>,
}

pub fn ega_report(p: &EgaParams) -> Result<EgaReport> {
    let rays = match ega_rays(p) {
        Ok(rays) => Some(RayEntries {
            r: rays.r.into_entries(),
            t: rays.t.into_entries(),
        }),
        Err(Error::OutOfRegime { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(EgaReport {
        a: p.a,
        h: p.h,
        k: p.k,
        d: p.d,
        frobenius: ega_frobenius(p),
        face_dimension: ega_face_dimension(p.a, p.k)?,
        rays,
    })
}
