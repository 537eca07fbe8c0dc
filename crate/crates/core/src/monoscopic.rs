//! Monoscopic gluings `T = <α> + βS` and the embeddings `Φ_ρ : C(H) -> C(Z_n)`
//! that carry faces of a subgroup's cone to faces of the whole cone.
//!
//! Every element of `Z_n` is written uniquely as `a + bρ` with `a ∈ H` and
//! `0 <= b < β`. The embedding sends `w` to `x_{a+bρ} = β w_a + b w_{βρ}`, and
//! the beta ray is `s_{a+bρ} = b`.

use serde::{Deserialize, Serialize};

use crate::cone::{ensure_in_cone, ConeFace};
use crate::coords::{CoordKind, CoordTuple};
use crate::error::{Error, Result};
use crate::poset::KunzPoset;
use crate::semigroup::NumericalSemigroup;
use crate::zmod::{gcd, gcd_all, mod_inverse, residue};

/// A validated gluing `<α> + βS`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GluingSpec {
    base: NumericalSemigroup,
    alpha: i64,
    beta: i64,
}

impl GluingSpec {
    pub fn new(base: NumericalSemigroup, alpha: i64, beta: i64) -> Result<Self> {
        if beta < 2 {
            return Err(Error::InvalidParams(format!(
                "beta = {beta} must be at least 2"
            )));
        }
        if !base.contains(alpha) {
            return Err(Error::AlphaNotInS(alpha));
        }
        if base.is_minimal_generator(alpha) {
            return Err(Error::AlphaIsGenerator(alpha));
        }
        let g = gcd(alpha, beta);
        if g != 1 {
            return Err(Error::NotCoprime {
                alpha,
                beta,
                gcd: g,
            });
        }
        Ok(GluingSpec { base, alpha, beta })
    }

    pub fn base(&self) -> &NumericalSemigroup {
        &self.base
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    /// `βm`, the multiplicity of the glued semigroup's distinguished element.
    pub fn modulus(&self) -> i64 {
        self.beta * self.base.multiplicity()
    }

    /// Whether `α ∈ Ap(S; m)`, which decides the augmented order.
    pub fn augmented(&self) -> bool {
        !self.base.contains(self.alpha - self.base.multiplicity())
    }

    /// The embedding of `C(Z_m)` into `C(Z_{βm})` along `ρ = α`.
    pub fn embedding(&self) -> Result<EmbeddingSpec> {
        EmbeddingSpec::new(self.modulus(), self.beta, self.alpha)
    }

    /// `(class, a index, b)` for each `bα + β Ap(S;m)_a`, in `(a, b)` order.
    fn cells(&self) -> Vec<(usize, usize, usize, i64)> {
        let m = self.base.multiplicity();
        let n = self.modulus() as usize;
        let apery = self
            .base
            .apery_tuple(m)
            .expect("the multiplicity is an element");
        let mut cells = Vec::with_capacity(n);
        for (i, &a) in apery.iter().enumerate() {
            for b in 0..self.beta {
                let value = b * self.alpha + self.beta * a;
                cells.push((residue(value, n), i, b as usize, value));
            }
        }
        cells
    }
}

/// `<α, βn_1, ..., βn_k>`.
pub fn glue(spec: &GluingSpec) -> Result<NumericalSemigroup> {
    let mut gens = vec![spec.alpha];
    for &g in spec.base.generators() {
        gens.push(g.checked_mul(spec.beta).ok_or(Error::Overflow("gluing"))?);
    }
    let t = NumericalSemigroup::from_generators(&gens)?;
    if t.embedding_dimension() != gens.len() {
        return Err(Error::InvalidParams(format!(
            "glued generators {gens:?} are not minimal"
        )));
    }
    Ok(t)
}

/// `Ap(T; βm)` indexed by residue class modulo `βm`.
pub fn glued_apery_tuple(spec: &GluingSpec) -> Vec<i64> {
    let mut tuple = vec![0; spec.modulus() as usize];
    for (class, _, _, value) in spec.cells() {
        tuple[class] = value;
    }
    tuple
}

/// `Ap(T; βm) = {bα + aβ}`, sorted.
pub fn glued_apery(spec: &GluingSpec) -> Vec<i64> {
    let mut set: Vec<i64> = spec.cells().into_iter().map(|c| c.3).collect();
    set.sort_unstable();
    set
}

/// The Kunz poset of `T` with respect to `βm`, built from the base's Apéry
/// set: `(a, b) ⪯ (a', b')` iff `a ⪯ a'` in `S` and either `b <= b'` or (only
/// when `α ∈ Ap(S; m)`) `α ⪯ a' - a` in `S`.
pub fn glued_poset(spec: &GluingSpec) -> Result<KunzPoset> {
    let n = spec.modulus() as usize;
    let augmented = spec.augmented();
    let mut cell_of = vec![(0i64, 0usize, 0i64); n];
    for (class, _, b, value) in spec.cells() {
        cell_of[class] = (value - b as i64 * spec.alpha, b, value);
    }
    let s = &spec.base;
    let poset = KunzPoset::from_relation(n, n, |c, c2| {
        let ((a, b, _), (a2, b2, _)) = (cell_of[c], cell_of[c2]);
        // a and a2 carry the factor β here
        let diff = (a2 - a) / spec.beta;
        s.contains(diff) && (b <= b2 || (augmented && s.contains(diff - spec.alpha)))
    })?;
    Ok(poset.with_labels(cell_of.iter().map(|c| c.2).collect()))
}

/// The three ways one Apéry element of `T` can cover another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverKind {
    /// Same base element, `b' = b + 1`.
    Step,
    /// Same `b`, base elements differ by a generator of `S` other than `m`.
    Generator,
    /// `b = β - 1`, `b' = 0`, base elements differ by `α`.
    Wrap,
}

/// A cover `(lower, upper)` of the glued poset with its kind, if any.
pub type ClassifiedCover = ((usize, usize), Option<CoverKind>);

/// Classifies every cover of the glued poset; `None` marks a cover that fits
/// none of the three kinds.
pub fn classify_covers(spec: &GluingSpec) -> Result<Vec<ClassifiedCover>> {
    let n = spec.modulus() as usize;
    let mut cell_of = vec![(0i64, 0i64); n];
    for (class, _, b, value) in spec.cells() {
        cell_of[class] = ((value - b as i64 * spec.alpha) / spec.beta, b as i64);
    }
    let m = spec.base.multiplicity();
    let poset = glued_poset(spec)?;
    Ok(poset
        .covers()
        .into_iter()
        .map(|(c, c2)| {
            let ((a, b), (a2, b2)) = (cell_of[c], cell_of[c2]);
            let kind = if a == a2 && b2 == b + 1 {
                Some(CoverKind::Step)
            } else if b == b2 && a2 - a != m && spec.base.is_minimal_generator(a2 - a) {
                Some(CoverKind::Generator)
            } else if b == spec.beta - 1 && b2 == 0 && a2 - a == spec.alpha {
                Some(CoverKind::Wrap)
            } else {
                None
            };
            ((c, c2), kind)
        })
        .collect())
}

/// A subgroup `H = <β>` of `Z_n` of index `β` together with `ρ` generating
/// `Z_n / H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingSpec {
    n: usize,
    beta: usize,
    rho: usize,
    /// `(index of a in H, b)` for each `g = a + bρ`.
    split: Vec<(usize, usize)>,
}

impl EmbeddingSpec {
    /// `h_gen` may be any generator of `H`; it is normalized to `gcd(h_gen, n)`.
    pub fn new(n: i64, h_gen: i64, rho: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidEmbedding(format!(
                "n = {n} must be at least 2"
            )));
        }
        if n > crate::semigroup::MAX_MODULUS {
            return Err(Error::TooLarge(format!("modulus {n} is too large")));
        }
        let beta = gcd(h_gen, n);
        if beta == n {
            return Err(Error::InvalidEmbedding(format!(
                "H = <{h_gen}> is trivial in Z_{n}"
            )));
        }
        if beta == 1 {
            return Err(Error::InvalidEmbedding(format!(
                "H = <{h_gen}> is all of Z_{n}"
            )));
        }
        let rho_inv = mod_inverse(rho, beta).ok_or_else(|| {
            Error::InvalidEmbedding(format!("rho = {rho} does not generate Z_{n} / <{beta}>"))
        })?;
        let nu = n as usize;
        let rho = residue(rho, nu);
        let split = (0..nu)
            .map(|g| {
                let b = (g as i64 * rho_inv).rem_euclid(beta) as usize;
                let a = residue(g as i64 - (b * rho) as i64, nu);
                (a / beta as usize, b)
            })
            .collect();
        Ok(EmbeddingSpec {
            n: nu,
            beta: beta as usize,
            rho,
            split,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    /// `|H| = n / β`.
    pub fn subgroup_order(&self) -> usize {
        self.n / self.beta
    }

    /// `(j, b)` with `g = βj + bρ`.
    pub fn split(&self, g: usize) -> (usize, usize) {
        self.split[g % self.n]
    }

    /// Index of `βρ` in `H ≅ Z_{n/β}`.
    pub fn beta_rho_index(&self) -> usize {
        (self.beta * self.rho % self.n) / self.beta
    }

    /// Rows `[g, a, b]` of the decomposition `g = a + bρ`.
    pub fn table(&self) -> Vec<[usize; 3]> {
        (0..self.n)
            .map(|g| {
                let (j, b) = self.split[g];
                [g, j * self.beta, b]
            })
            .collect()
    }

    fn phi_unchecked(&self, w: &[i64]) -> Result<Vec<i64>> {
        let top = w[self.beta_rho_index()];
        let (beta, overflow) = (self.beta as i64, Error::Overflow("monoscopic embedding"));
        self.split
            .iter()
            .map(|&(j, b)| {
                beta.checked_mul(w[j])
                    .and_then(|x| x.checked_add((b as i64).checked_mul(top)?))
                    .ok_or(overflow.clone())
            })
            .collect()
    }
}

/// `Φ_ρ(w)` for `w ∈ C(H)` in cone coordinates.
pub fn phi(spec: &EmbeddingSpec, w: &CoordTuple) -> Result<CoordTuple> {
    if w.kind() != CoordKind::Apery {
        return Err(Error::InvalidTuple(
            "the embedding acts on cone (Apéry) coordinates".into(),
        ));
    }
    if w.modulus() != spec.subgroup_order() {
        return Err(Error::InvalidTuple(format!(
            "expected {} entries indexed by H, got {}",
            spec.subgroup_order(),
            w.modulus()
        )));
    }
    ensure_in_cone(w)?;
    CoordTuple::new(CoordKind::Apery, spec.phi_unchecked(w.entries())?)
}

/// `s_{a+bρ} = b`.
pub fn beta_ray(spec: &EmbeddingSpec) -> CoordTuple {
    let entries = spec.split.iter().map(|&(_, b)| b as i64).collect();
    CoordTuple::new(CoordKind::Apery, entries).expect("s_0 = 0")
}

/// Extends a Kunz poset `P` on `H / H'` to `Z_n / H'`: `(p, b) ⪯ (p', b')` iff
/// `p ⪯ p'` and `b <= b'`, or, when augmented, `p ⪯ p'` and `βρ ⪯ p' - p`.
///
/// When augmented and `βρ ∈ H'`, the extension collapses onto
/// `Z_n / (H' + <ρ>)`, where it is a copy of `P`.
pub fn extend_poset(p: &KunzPoset, spec: &EmbeddingSpec, augmented: bool) -> Result<KunzPoset> {
    let m = spec.subgroup_order();
    if p.modulus() != m {
        return Err(Error::InvalidQuotient(format!(
            "poset lives on a quotient of Z_{}, but H has order {m}",
            p.modulus()
        )));
    }
    let d = p.subgroup_generator();
    let n = spec.n;
    let top = spec.beta_rho_index() as i64;
    let class = |g: usize| spec.split(g);

    if augmented && p.class_of(top) == 0 {
        let order = gcd_all([n as i64, (spec.beta * d) as i64, spec.rho as i64]) as usize;
        return KunzPoset::from_relation(n, order, |g, g2| {
            p.leq(class(g).0 as i64, class(g2).0 as i64)
        });
    }
    KunzPoset::from_relation(n, spec.beta * d, |g, g2| {
        let ((j, b), (j2, b2)) = (class(g), class(g2));
        let (j, j2) = (j as i64, j2 as i64);
        p.leq(j, j2) && (b <= b2 || (augmented && p.leq(top, j2 - j)))
    })
}

/// Outcome of checking the image faces for a sample of one face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceImageReport {
    pub samples: usize,
    pub face_dimension: usize,
    /// Poset of the face of `Φ(w)` is the augmented extension.
    pub image_poset: bool,
    /// Poset of the face of `Φ(w) + c s` is the plain extension.
    pub ray_poset: bool,
    /// The image face has the dimension of `F`.
    pub image_dimension: bool,
    /// Adding the beta ray raises the dimension by one.
    pub ray_dimension: bool,
}

impl FaceImageReport {
    pub fn passed(&self) -> bool {
        self.image_poset && self.ray_poset && self.image_dimension && self.ray_dimension
    }
}

/// Checks, on points `w` of one face `F` of `C(H)` and positive rationals
/// `c = num / den`, that `Φ(F)` and `R≥0 s + Φ(F)` are faces with the
/// predicted posets and dimensions.
pub fn verify_face_image(
    spec: &EmbeddingSpec,
    samples: &[CoordTuple],
    scalars: &[(i64, i64)],
) -> Result<FaceImageReport> {
    let first = samples
        .first()
        .ok_or_else(|| Error::SampleNotInterior("no samples given".into()))?;
    let face = ConeFace::of_point(first)?;
    for w in &samples[1..] {
        if ConeFace::of_point(w)? != face {
            return Err(Error::SampleNotInterior(format!(
                "{:?} and {:?} lie in different faces",
                first.entries(),
                w.entries()
            )));
        }
    }
    if let Some(&(num, den)) = scalars.iter().find(|&&(num, den)| num <= 0 || den <= 0) {
        return Err(Error::InvalidParams(format!(
            "scalar {num}/{den} is not positive"
        )));
    }
    let dim = face.dimension()?;
    let poset = face.kunz_poset()?;
    let with_image = extend_poset(poset, spec, true)?;
    let with_ray = extend_poset(poset, spec, false)?;
    let s = beta_ray(spec);

    let mut report = FaceImageReport {
        samples: samples.len(),
        face_dimension: dim,
        image_poset: true,
        ray_poset: true,
        image_dimension: true,
        ray_dimension: true,
    };
    for w in samples {
        let x = phi(spec, w)?;
        let image = ConeFace::of_point(&x)?;
        report.image_poset &= image.kunz_poset().ok() == Some(&with_image);
        report.image_dimension &= image.dimension()? == dim;
        for &(num, den) in scalars {
            let y = x.scaled(den)?.checked_add(&s.scaled(num)?)?;
            let ray_face = ConeFace::of_point(&y)?;
            report.ray_poset &= ray_face.kunz_poset().ok() == Some(&with_ray);
            report.ray_dimension &= ray_face.dimension()? == dim + 1;
        }
    }
    Ok(report)
}

/// Every way of writing `T` as a monoscopic gluing, one per generator that can
/// serve as `α`.
pub fn all_factorizations(t: &NumericalSemigroup) -> Vec<GluingSpec> {
    let gens = t.generators();
    (0..gens.len())
        .filter_map(|skip| {
            let alpha = gens[skip];
            let rest: Vec<i64> = gens
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &g)| g)
                .collect();
            let beta = gcd_all(rest.iter().copied());
            if beta < 2 || gcd(alpha, beta) != 1 {
                return None;
            }
            let scaled: Vec<i64> = rest.iter().map(|g| g / beta).collect();
            let base = NumericalSemigroup::from_generators(&scaled).ok()?;
            GluingSpec::new(base, alpha, beta).ok()
        })
        .collect()
}

/// The first factorization `T = <α> + βS`, trying generators `α` in
/// increasing order.
pub fn factor_monoscopic(t: &NumericalSemigroup) -> Option<GluingSpec> {
    all_factorizations(t).into_iter().next()
}

/// Dimension of the face containing `S`'s Apéry tuple; `C(Z_1)` is a point.
fn face_dimension_of(s: &NumericalSemigroup) -> Result<usize> {
    let m = s.multiplicity();
    if m == 1 {
        return Ok(0);
    }
    ConeFace::of_point(&s.coordinates(m, CoordKind::Apery)?)?.dimension()
}

/// Summary printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingReport {
    pub base: Vec<i64>,
    pub alpha: i64,
    pub beta: i64,
    pub glued: Vec<i64>,
    pub augmented: bool,
    pub face_dims: [usize; 2],
}

pub fn gluing_report(spec: &GluingSpec) -> Result<GluingReport> {
    let t = glue(spec)?;
    Ok(GluingReport {
        base: spec.base.generators().to_vec(),
        alpha: spec.alpha,
        beta: spec.beta,
        glued: t.generators().to_vec(),
        augmented: spec.augmented(),
        face_dims: [face_dimension_of(&spec.base)?, face_dimension_of(&t)?],
    })
}
