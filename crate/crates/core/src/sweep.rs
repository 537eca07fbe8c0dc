//! Seeded verification sweeps: every closed form checked against the
//! brute-force oracle over parameter grids and random samples.
//!
//! Cases are drawn sequentially from one ChaCha stream, evaluated in
//! parallel, and reported in case order, so a seed fully determines the
//! output.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    ega_apery_grid, ega_contains, ega_detect, ega_face_dimension, ega_frobenius, ega_kunz_poset,
    ega_rays, EgaParams, GridCoord,
};
use crate::cone::{in_cone, ConeFace};
use crate::coords::{CoordKind, CoordTuple};
use crate::error::{Error, Result};
use crate::linalg::independent;
use crate::monoscopic::{
    all_factorizations, classify_covers, extend_poset, factor_monoscopic, glue, glued_apery,
    glued_apery_tuple, glued_poset, verify_face_image, CoverKind, EmbeddingSpec, GluingSpec,
};
use crate::poset::{apery_poset, kunz_poset_of, KunzPoset};
use crate::semigroup::NumericalSemigroup;
use crate::zmod::gcd;

/// The named sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Membership,
    Frobenius,
    AperyPoset,
    Dimension,
    Rays,
    Gluing,
    Embedding,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Membership,
        Suite::Frobenius,
        Suite::AperyPoset,
        Suite::Dimension,
        Suite::Rays,
        Suite::Gluing,
        Suite::Embedding,
        Suite::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Membership => "membership",
            Suite::Frobenius => "frobenius",
            Suite::AperyPoset => "apery-poset",
            Suite::Dimension => "dimension",
            Suite::Rays => "rays",
            Suite::Gluing => "gluing",
            Suite::Embedding => "embedding",
            Suite::Roundtrip => "roundtrip",
        }
    }

    /// Default size bound: `a` for the arithmetic suites, the base
    /// multiplicity for gluings, `n` for embeddings, `m` for round trips.
    pub fn default_size(self) -> i64 {
        match self {
            Suite::Membership | Suite::Frobenius | Suite::AperyPoset => 25,
            Suite::Dimension | Suite::Rays => 18,
            Suite::Gluing => 12,
            Suite::Embedding => 24,
            Suite::Roundtrip => 20,
        }
    }

    /// Default number of random draws (unused by the exhaustive suites).
    pub fn default_samples(self) -> usize {
        match self {
            Suite::Gluing => 200,
            Suite::Embedding => 50,
            Suite::Roundtrip => 1000,
            _ => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown suite {s:?}")))
    }
}

/// Bounds for one sweep run; `None` falls back to the suite default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub max_size: Option<i64>,
    pub max_beta: Option<i64>,
    pub samples: Option<usize>,
}

/// Pass/fail counts of one suite, with the first few failures spelled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    /// Observations that are not failures.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }
}

const MAX_LISTED_FAILURES: usize = 10;

/// One case outcome: `Err` carries a description of what disagreed.
type Outcome = std::result::Result<(), String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn lift<T>(r: Result<T>, ctx: impl fmt::Display) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

fn tally<C, F>(suite: Suite, seed: u64, cases: Vec<C>, run: F) -> SuiteReport
where
    C: Send + Sync,
    F: Fn(&C) -> Outcome + Send + Sync,
{
    let outcomes: Vec<Outcome> = cases.par_iter().map(&run).collect();
    let failures: Vec<String> = outcomes.iter().filter_map(|o| o.clone().err()).collect();
    SuiteReport {
        suite,
        seed,
        cases: outcomes.len(),
        passed: outcomes.len() - failures.len(),
        failed: failures.len(),
        failures: failures.into_iter().take(MAX_LISTED_FAILURES).collect(),
        notes: Vec::new(),
    }
}

/// Runs an arithmetic-family suite. With `minimal_only`, tuples whose
/// generating set is not minimal are left out (and counted in a note);
/// otherwise they are checked against the semigroup they generate.
fn ega_suite(
    suite: Suite,
    seed: u64,
    params: Vec<EgaParams>,
    minimal_only: bool,
    run: fn(&EgaParams) -> Outcome,
) -> SuiteReport {
    let bad = non_minimal(&params);
    let note = match (bad.first(), minimal_only) {
        (None, _) => None,
        (Some(eg), true) => Some(format!(
            "{} tuples with a non-minimal generating set (e.g. {eg:?}) excluded",
            bad.len()
        )),
        (Some(eg), false) => Some(format!(
            "{} tuples have a non-minimal generating set (e.g. {eg:?}); checked against the semigroup they generate",
            bad.len()
        )),
    };
    let params = if minimal_only {
        params
            .into_iter()
            .filter(|p| p.is_minimal().unwrap_or(false))
            .collect()
    } else {
        params
    };
    SuiteReport {
        notes: note.into_iter().collect(),
        ..tally(suite, seed, params, run)
    }
}

pub fn run_suite(suite: Suite, config: &SweepConfig) -> SuiteReport {
    let size = config.max_size.unwrap_or(suite.default_size());
    let samples = config.samples.unwrap_or(suite.default_samples());
    let max_beta = config.max_beta.unwrap_or(5);
    let seed = config.seed;
    match suite {
        Suite::Membership => ega_suite(suite, seed, ega_grid(size, 3), false, membership_case),
        Suite::Frobenius => ega_suite(suite, seed, ega_grid(size, 3), false, frobenius_case),
        Suite::AperyPoset => ega_suite(suite, seed, ega_grid(size, 3), true, apery_poset_case),
        Suite::Dimension => ega_suite(suite, seed, face_grid(size, 1), true, dimension_case),
        Suite::Rays => ega_suite(suite, seed, face_grid(size, 2), true, rays_case),
        Suite::Gluing => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bases: Vec<NumericalSemigroup> = (0..samples)
                .map(|_| random_semigroup(&mut rng, size, 3))
                .collect();
            tally(suite, seed, gluing_cases(&bases, max_beta), gluing_case)
        }
        Suite::Embedding => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut cases = vec![EmbeddingCase::new(
                EmbeddingSpec::new(12, 3, 7).expect("valid"),
                &mut rng,
            )];
            cases.extend((0..samples).map(|_| {
                let spec = random_embedding(&mut rng, size);
                EmbeddingCase::new(spec, &mut rng)
            }));
            tally(suite, seed, cases, embedding_case)
        }
        Suite::Roundtrip => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cases: Vec<NumericalSemigroup> = (0..samples)
                .map(|_| random_semigroup(&mut rng, size, 10))
                .collect();
            tally(suite, seed, cases, roundtrip_case)
        }
    }
}

// ---------------------------------------------------------------------------
// Arithmetic family

/// Every valid `(a, h, k, d)` with `a <= max_a`, `h <= max_h`, `|d| <= 2a`.
pub fn ega_grid(max_a: i64, max_h: i64) -> Vec<EgaParams> {
    let mut out = Vec::new();
    for a in 2..=max_a {
        for h in 1..=max_h {
            for k in 1..a {
                for d in -2 * a..=2 * a {
                    if let Ok(p) = EgaParams::new(a, h, k, d) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// One representative per face: `h = 1`, each `k`, each unit `0 < d < a`.
/// `min_k` restricts to `k >= min_k`; rays additionally need `k < a - 2`.
fn face_grid(max_a: i64, min_k: i64) -> Vec<EgaParams> {
    let mut out = Vec::new();
    for a in 2..=max_a {
        for k in min_k..a {
            if min_k > 1 && k >= a - 2 {
                continue;
            }
            for d in (1..a).filter(|&d| gcd(a, d) == 1) {
                out.push(EgaParams::new(a, 1, k, d).expect("h = 1, 0 < d < a is valid"));
            }
        }
    }
    out
}

/// The semigroup the parameters generate; minimality is reported separately.
fn oracle(p: &EgaParams) -> std::result::Result<NumericalSemigroup, String> {
    lift(p.semigroup(), format!("{p:?}"))
}

fn non_minimal(params: &[EgaParams]) -> Vec<&EgaParams> {
    params
        .iter()
        .filter(|p| !p.is_minimal().unwrap_or(true))
        .collect()
}

fn membership_case(p: &EgaParams) -> Outcome {
    let s = oracle(p)?;
    let top = ega_frobenius(p) + 2 * p.a();
    match (0..=top).find(|&n| ega_contains(p, n) != s.contains(n)) {
        None => Ok(()),
        Some(n) => Err(format!("{p:?}: membership of {n} disagrees")),
    }
}

fn frobenius_case(p: &EgaParams) -> Outcome {
    let s = oracle(p)?;
    let f = lift(s.frobenius(), format!("{p:?}"))?;
    check(ega_frobenius(p) == f, || {
        format!("{p:?}: formula {} vs oracle {f}", ega_frobenius(p))
    })
}

fn apery_poset_case(p: &EgaParams) -> Outcome {
    let s = oracle(p)?;
    let a = p.a();
    let oracle_poset = lift(apery_poset(&s, a), format!("{p:?}"))?;
    let grid = ega_apery_grid(p);
    let mut values: Vec<i64> = grid.iter().map(|&(_, v)| v).collect();
    values.sort_unstable();
    let expected = lift(s.apery_set(a), format!("{p:?}"))?;
    check(values == expected[1..], || {
        format!("{p:?}: grid values differ from Ap(S; a)")
    })?;

    // grid order, lifted to residue classes of the grid values
    let mut cell = vec![None; a as usize];
    for &(c, v) in &grid {
        cell[v.rem_euclid(a) as usize] = Some(c);
    }
    let leq = |i: usize, j: usize| {
        i == j
            || i == 0
            || match (cell[i], cell[j]) {
                (Some(ci), Some(cj)) => ci.below(&cj),
                _ => false,
            }
    };
    let grid_poset = lift(
        KunzPoset::from_relation(a as usize, a as usize, leq),
        format!("{p:?}"),
    )?;
    check(grid_poset == oracle_poset, || {
        format!("{p:?}: grid order differs from Apéry poset")
    })?;
    let closed = lift(ega_kunz_poset(a, p.k(), p.d()), format!("{p:?}"))?;
    check(closed == oracle_poset, || {
        format!("{p:?}: closed-form Kunz poset differs")
    })?;

    // covers: atoms are the first row, other covers step up one row
    let mut expected_covers: Vec<(usize, usize)> = Vec::new();
    for j in 1..a as usize {
        let cj: GridCoord = cell[j].expect("every class is on the grid");
        if cj.x == 1 {
            expected_covers.push((0, j));
        }
        for (i, ci) in cell.iter().enumerate().take(a as usize).skip(1) {
            let ci = ci.expect("every class is on the grid");
            if cj.x == ci.x + 1 && ci.y >= cj.y {
                expected_covers.push((i, j));
            }
        }
    }
    expected_covers.sort_unstable();
    check(expected_covers == oracle_poset.covers(), || {
        format!("{p:?}: cover relations differ from the grid rule")
    })
}

fn apery_face(s: &NumericalSemigroup, m: i64) -> std::result::Result<ConeFace, String> {
    let x = lift(s.coordinates(m, CoordKind::Apery), "coordinates")?;
    lift(ConeFace::of_point(&x), "face")
}

fn dimension_case(p: &EgaParams) -> Outcome {
    let s = oracle(p)?;
    let face = apery_face(&s, p.a())?;
    let exact = lift(face.dimension(), format!("{p:?}"))? as i64;
    let formula = lift(ega_face_dimension(p.a(), p.k()), format!("{p:?}"))?;
    check(exact == formula, || {
        format!("{p:?}: rank gives {exact}, formula {formula}")
    })
}

fn is_chain_with_atom(poset: &KunzPoset, atom: usize) -> bool {
    let n = poset.len();
    poset.relations().len() == n * (n - 1) / 2 && poset.atoms() == vec![atom]
}

fn rays_case(p: &EgaParams) -> Outcome {
    let s = oracle(p)?;
    let (a, k) = (p.a(), p.k());
    let rays = lift(ega_rays(p), format!("{p:?}"))?;
    check(
        lift(
            independent(&[&rays.r.entries()[1..], &rays.t.entries()[1..]]),
            "rank",
        )?,
        || format!("{p:?}: rays are dependent"),
    )?;
    let r_poset = lift(
        ConeFace::of_point(&rays.r).and_then(|f| f.kunz_poset().cloned()),
        "r",
    )?;
    check(
        is_chain_with_atom(&r_poset, p.d().rem_euclid(a) as usize),
        || format!("{p:?}: r's poset is not a chain with atom d"),
    )?;
    if (a - 1) % k == 0 {
        let t_poset = lift(
            ConeFace::of_point(&rays.t).and_then(|f| f.kunz_poset().cloned()),
            "t",
        )?;
        let atom = t_poset.class_of(k * p.d());
        check(is_chain_with_atom(&t_poset, atom), || {
            format!("{p:?}: t's poset is not a chain with atom kd")
        })?;
    }

    // points z + c1 r + c2 t stay in the family, with the same k and d mod a
    let z = lift(s.coordinates(a, CoordKind::Kunz), "kunz")?;
    for (c1, c2) in [(1, 0), (0, 1), (1, 1), (2, 3)] {
        let step = lift(
            rays.r
                .scaled(c1)
                .and_then(|r| r.checked_add(&rays.t.scaled(c2)?)),
            "ray combination",
        )?;
        let moved = lift(z.checked_add(&step.with_kind(CoordKind::Kunz)), "shift")?;
        let s2 = lift(
            NumericalSemigroup::from_kunz_tuple(a, &moved.entries()[1..]),
            format!("{p:?} + {c1} r + {c2} t"),
        )?;
        match ega_detect(&s2) {
            Some(q) if q.k() == k && (q.d() - p.d()).rem_euclid(a) == 0 => {}
            other => {
                return Err(format!(
                    "{p:?} + {c1} r + {c2} t: {:?} detected as {other:?}",
                    s2.generators()
                ))
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Random semigroups

/// A random semigroup of multiplicity `m` in `2..=max_m` with one to five
/// further generators drawn from `m+1 ..= spread * m`.
pub fn random_semigroup(rng: &mut impl Rng, max_m: i64, spread: i64) -> NumericalSemigroup {
    let max_m = max_m.max(2);
    loop {
        let m = rng.gen_range(2..=max_m);
        let extra = rng.gen_range(1..=(m - 1).min(5));
        let mut gens = vec![m];
        gens.extend((0..extra).map(|_| rng.gen_range(m + 1..=spread.max(2) * m)));
        if let Ok(s) = NumericalSemigroup::from_generators(&gens) {
            return s;
        }
    }
}

// ---------------------------------------------------------------------------
// Gluings

/// Every valid `(α, β)` over the bases with `β <= max_beta` and
/// `α <= F(S) + 3m`.
pub fn gluing_cases(bases: &[NumericalSemigroup], max_beta: i64) -> Vec<GluingSpec> {
    let mut out = Vec::new();
    for s in bases {
        let m = s.multiplicity();
        let top = s.frobenius().unwrap_or(-1) + 3 * m;
        for beta in 2..=max_beta {
            for alpha in 1..=top {
                if let Ok(spec) = GluingSpec::new(s.clone(), alpha, beta) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

fn gluing_case(spec: &GluingSpec) -> Outcome {
    let tag = format!(
        "<{}> + {}{:?}",
        spec.alpha(),
        spec.beta(),
        spec.base().generators()
    );
    let t = lift(glue(spec), &tag)?;
    let n = spec.modulus();
    let m = spec.base().multiplicity();
    let augmented = spec.augmented();

    check(glued_apery(spec) == lift(t.apery_set(n), &tag)?, || {
        format!("{tag}: Apéry set differs from oracle")
    })?;
    let oracle_poset = lift(kunz_poset_of(&t, n), &tag)?;
    check(lift(glued_poset(spec), &tag)? == oracle_poset, || {
        format!("{tag}: glued poset differs from oracle")
    })?;
    let covers = lift(classify_covers(spec), &tag)?;
    check(covers.iter().all(|(_, k)| k.is_some()), || {
        format!("{tag}: a cover fits none of the three kinds")
    })?;
    let has_wrap = covers.iter().any(|(_, k)| *k == Some(CoverKind::Wrap));
    check(has_wrap == augmented, || {
        format!("{tag}: wrap covers present = {has_wrap}, α ∈ Ap(S; m) = {augmented}")
    })?;
    let embedding = lift(spec.embedding(), &tag)?;
    let base_poset = lift(kunz_poset_of(spec.base(), m), &tag)?;
    check(
        lift(extend_poset(&base_poset, &embedding, augmented), &tag)? == oracle_poset,
        || format!("{tag}: extension of the base poset differs"),
    )?;

    let base_face = apery_face(spec.base(), m)?;
    let face = apery_face(&t, n)?;
    let (dim_s, dim_t) = (
        lift(base_face.dimension(), &tag)?,
        lift(face.dimension(), &tag)?,
    );
    check(dim_t == dim_s + usize::from(!augmented), || {
        format!("{tag}: dimensions {dim_s} -> {dim_t}, augmented = {augmented}")
    })?;

    check(lift(image_decomposition_holds(spec), &tag)?, || {
        format!("{tag}: Ap(T) is not Φ(Ap(S)) + c s")
    })?;

    let refactored = factor_monoscopic(&t).ok_or_else(|| format!("{tag}: does not factor"))?;
    check(lift(glue(&refactored), &tag)? == t, || {
        format!("{tag}: glue ∘ factor is not the identity")
    })?;

    // integer points of T's face factor again, over the face of S
    let z = lift(t.coordinates(n, CoordKind::Kunz), &tag)?;
    let x = lift(t.coordinates(n, CoordKind::Apery), &tag)?;
    for c in 1..=2 {
        let moved = lift(
            x.scaled(c)
                .and_then(|v| z.checked_add(&v.with_kind(CoordKind::Kunz))),
            &tag,
        )?;
        let t2 = lift(
            NumericalSemigroup::from_kunz_tuple(n, &moved.entries()[1..]),
            &tag,
        )?;
        let found = all_factorizations(&t2).into_iter().any(|f| {
            f.beta() == spec.beta()
                && (f.alpha() - spec.alpha()).rem_euclid(n) == 0
                && f.base().contains(m)
                && apery_face(f.base(), m).is_ok_and(|g| g == base_face)
        });
        check(found, || {
            format!(
                "{tag}: point {:?} of the face does not factor over S's face",
                t2.generators()
            )
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Embeddings

/// An embedding with groups of sample points, one group per face of `C(H)`.
pub struct EmbeddingCase {
    pub spec: EmbeddingSpec,
    pub faces: Vec<Vec<CoordTuple>>,
    pub scalars: Vec<(i64, i64)>,
}

impl EmbeddingCase {
    fn new(spec: EmbeddingSpec, rng: &mut impl Rng) -> Self {
        let m = spec.subgroup_order();
        let mut faces: Vec<Vec<CoordTuple>> = Vec::new();
        let mut seen: Vec<ConeFace> = Vec::new();
        let mut add = |w: CoordTuple, faces: &mut Vec<Vec<CoordTuple>>| {
            let Ok(face) = ConeFace::of_point(&w) else {
                return;
            };
            match seen.iter().position(|f| *f == face) {
                Some(i) => {
                    if faces[i].len() < 3 {
                        faces[i].push(w)
                    }
                }
                None => {
                    seen.push(face);
                    faces.push(vec![w]);
                }
            }
        };
        // small lattice points reach every face of C(Z_m) for tiny m
        if m <= 5 {
            let bound = if m <= 4 { 4 } else { 2 };
            for code in 0..(bound + 1i64).pow(m as u32 - 1) {
                let mut entries = vec![0];
                let mut c = code;
                for _ in 1..m {
                    entries.push(c % (bound + 1));
                    c /= bound + 1;
                }
                let w = CoordTuple::new(CoordKind::Apery, entries).expect("phantom zero");
                if in_cone(&w) {
                    add(w, &mut faces);
                }
            }
        }
        // Apéry tuples of random semigroups containing m, and their multiples
        for _ in 0..4 {
            let s = loop {
                let extra = rng.gen_range(1..=(m as i64 - 1).clamp(1, 5));
                let mut gens = vec![m as i64];
                gens.extend((0..extra).map(|_| rng.gen_range(m as i64 + 1..=4 * m as i64)));
                if let Ok(s) = NumericalSemigroup::from_generators(&gens) {
                    break s;
                }
            };
            let w = s
                .coordinates(m as i64, CoordKind::Apery)
                .expect("m is the multiplicity");
            add(w.scaled(3).expect("small"), &mut faces);
            add(w, &mut faces);
        }
        let scalars = (0..2)
            .map(|_| (rng.gen_range(1..=5), rng.gen_range(1..=3)))
            .collect();
        EmbeddingCase {
            spec,
            faces,
            scalars,
        }
    }
}

/// A random `(n, H, ρ)` with `4 <= n <= max_n` and `H` proper and nontrivial.
pub fn random_embedding(rng: &mut impl Rng, max_n: i64) -> EmbeddingSpec {
    let max_n = max_n.max(4);
    loop {
        let n = rng.gen_range(4..=max_n);
        let divisors: Vec<i64> = (2..n).filter(|b| n % b == 0 && n / b >= 2).collect();
        let Some(&beta) = divisors.choose(rng) else {
            continue;
        };
        let units: Vec<i64> = (1..n).filter(|&r| gcd(r, beta) == 1).collect();
        let rho = *units.choose(rng).expect("1 is a unit");
        if let Ok(spec) = EmbeddingSpec::new(n, beta, rho) {
            return spec;
        }
    }
}

fn embedding_case(case: &EmbeddingCase) -> Outcome {
    let tag = format!(
        "(n = {}, H = <{}>, rho = {})",
        case.spec.n(),
        case.spec.beta(),
        case.spec.rho()
    );
    for samples in &case.faces {
        let report = lift(verify_face_image(&case.spec, samples, &case.scalars), &tag)?;
        check(report.passed(), || {
            format!("{tag}: face of {:?}: {report:?}", samples[0].entries())
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Round trips

fn roundtrip_case(s: &NumericalSemigroup) -> Outcome {
    let m = s.multiplicity();
    let tag = format!("{:?}", s.generators());
    let z = lift(s.coordinates(m, CoordKind::Kunz), &tag)?;
    check(in_cone(&z), || {
        format!("{tag}: Kunz tuple outside the polyhedron")
    })?;
    let back = lift(
        NumericalSemigroup::from_kunz_tuple(m, &z.entries()[1..]),
        &tag,
    )?;
    check(back == *s, || {
        format!("{tag}: round trip gives {:?}", back.generators())
    })?;
    let tuple = lift(s.apery_tuple(m), &tag)?;
    check(
        tuple
            .iter()
            .enumerate()
            .all(|(i, &a)| a >= 0 && (a - i as i64) % m == 0),
        || format!("{tag}: Apéry tuple breaks the residue congruence"),
    )
}

/// Gluing counterpart of [`glued_apery_tuple`] used by the acceptance suite:
/// the Apéry tuple of `T` agrees with `Φ(Ap(S)) + c s` for
/// `c = α - Ap(S; m)_{α mod m}`.
pub fn image_decomposition_holds(spec: &GluingSpec) -> Result<bool> {
    let m = spec.base().multiplicity();
    let embedding = spec.embedding()?;
    let w = spec.base().coordinates(m, CoordKind::Apery)?;
    let x = crate::monoscopic::phi(&embedding, &w)?;
    let c = spec.alpha() - spec.base().apery_tuple(m)?[(spec.alpha() % m) as usize];
    let expected = x.checked_add(&crate::monoscopic::beta_ray(&embedding).scaled(c)?)?;
    Ok(expected.entries() == glued_apery_tuple(spec))
}
