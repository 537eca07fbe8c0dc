use std::collections::BTreeSet;

use kunz_core::linalg;
use kunz_core::{
    apply_automorphism, ega_kunz_poset, ega_new, glue, glued_apery, glued_poset, kunz_poset_of,
    phi, ConeFace, CoordKind, CoordTuple, EmbeddingSpec, GluingSpec, NumericalSemigroup,
};
use proptest::prelude::*;

/// Membership table up to `limit` by dynamic programming over the generators.
fn members(gens: &[i64], limit: i64) -> Vec<bool> {
    let mut table = vec![false; limit as usize + 1];
    table[0] = true;
    for n in 1..=limit as usize {
        table[n] = gens
            .iter()
            .any(|&g| g as usize <= n && table[n - g as usize]);
    }
    table
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Generators with gcd 1, smallest in `2..=max_m`, all at most `max_gen`.
fn semigroup(max_m: i64, max_gen: i64) -> impl Strategy<Value = NumericalSemigroup> {
    (2..=max_m)
        .prop_flat_map(move |m| {
            (
                Just(m),
                prop::collection::vec(m + 1..=max_gen.max(m + 2), 1..5),
            )
        })
        .prop_filter_map("generators must be coprime", |(m, rest)| {
            let mut gens = vec![m];
            gens.extend(rest);
            NumericalSemigroup::from_generators(&gens).ok()
        })
}

fn apery(s: &NumericalSemigroup) -> CoordTuple {
    s.coordinates(s.multiplicity(), CoordKind::Apery).unwrap()
}

fn float_rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    let m = nalgebra::DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j] as f64);
    m.rank(1e-7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_and_apery_match_dp(s in semigroup(12, 60)) {
        let m = s.multiplicity();
        let f = s.frobenius().unwrap();
        let table = members(s.generators(), f + m + 1);
        for n in 0..=f + m + 1 {
            prop_assert_eq!(s.contains(n), table[n as usize]);
        }
        for (i, &a) in s.apery_tuple(m).unwrap().iter().enumerate() {
            let least = (0..=f + m).find(|&n| n.rem_euclid(m) == i as i64 && table[n as usize]);
            prop_assert_eq!(Some(a), least);
        }
        prop_assert!(!table[f as usize]);
    }

    #[test]
    fn generators_are_minimal(s in semigroup(12, 60)) {
        for (i, &g) in s.generators().iter().enumerate() {
            let others: Vec<i64> = s.generators().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            prop_assert!(!members(&others, g)[g as usize]);
        }
    }

    #[test]
    fn kunz_tuples_lie_in_the_polyhedron(s in semigroup(20, 200)) {
        let m = s.multiplicity();
        let z = s.coordinates(m, CoordKind::Kunz).unwrap();
        prop_assert!(ConeFace::of_point(&z).is_ok());
        prop_assert_eq!(NumericalSemigroup::from_kunz_tuple(m, &z.entries()[1..]).unwrap(), s);
    }

    #[test]
    fn covers_are_atom_translates(s in semigroup(12, 200), pick in 0usize..4) {
        // any element m of S up to 20 works as the modulus
        let m = (1..=20).filter(|&n| s.contains(n)).nth(pick).unwrap_or(s.multiplicity());
        let p = kunz_poset_of(&s, m).unwrap();
        let atoms: BTreeSet<usize> = p.atoms().into_iter().collect();
        let covers: BTreeSet<(usize, usize)> = p.covers().into_iter().collect();
        for (a, b) in p.relations() {
            let diff = (b + p.len() - a) % p.len();
            prop_assert_eq!(covers.contains(&(a, b)), atoms.contains(&diff));
        }
    }

    #[test]
    fn face_poset_is_kunz_poset(s in semigroup(15, 80)) {
        let face = ConeFace::of_point(&apery(&s)).unwrap();
        let kunz = ConeFace::of_point(&s.coordinates(s.multiplicity(), CoordKind::Kunz).unwrap()).unwrap();
        prop_assert_eq!(&face, &kunz);
        let data = face.kunz_data().unwrap();
        prop_assert_eq!(data.subgroup(), vec![0]);
        prop_assert_eq!(&data.poset, &kunz_poset_of(&s, s.multiplicity()).unwrap());
    }

    #[test]
    fn automorphisms_preserve_dimension(s in semigroup(13, 60), u in 1i64..13) {
        let x = apery(&s);
        let n = x.modulus() as i64;
        prop_assume!(gcd(u, n) == 1);
        let face = ConeFace::of_point(&x).unwrap();
        let moved = apply_automorphism(&x, u).unwrap();
        let moved_face = ConeFace::of_point(&moved).unwrap();
        prop_assert_eq!(&face.apply_automorphism(u).unwrap(), &moved_face);
        prop_assert_eq!(face.dimension().unwrap(), moved_face.dimension().unwrap());
        let expected = face.kunz_poset().unwrap().apply_automorphism(u).unwrap();
        prop_assert_eq!(moved_face.kunz_poset().unwrap(), &expected);
        let inv = (1..n).find(|v| (u * v) % n == 1).unwrap();
        prop_assert_eq!(face.apply_automorphism(u).unwrap().apply_automorphism(inv).unwrap(), face);
    }

    #[test]
    fn positive_combinations_intersect_tight_sets(
        s in semigroup(9, 40),
        rest in prop::collection::vec(10i64..40, 1..4),
        c1 in 1i64..5,
        c2 in 1i64..5,
    ) {
        let m = s.multiplicity();
        let mut gens = vec![m];
        gens.extend(rest.iter().map(|g| g + m));
        prop_assume!(NumericalSemigroup::from_generators(&gens).is_ok_and(|t| t.multiplicity() == m));
        let t = NumericalSemigroup::from_generators(&gens).unwrap();
        let (x, y) = (apery(&s), apery(&t));
        let sum = x.scaled(c1).unwrap().checked_add(&y.scaled(c2).unwrap()).unwrap();
        let (fx, fy, fs) = (
            ConeFace::of_point(&x).unwrap(),
            ConeFace::of_point(&y).unwrap(),
            ConeFace::of_point(&sum).unwrap(),
        );
        let both: BTreeSet<_> = fx.tight().intersection(fy.tight()).copied().collect();
        prop_assert_eq!(fs.tight(), &both);
    }

    #[test]
    fn exact_rank_matches_float_rank(
        rows in prop::collection::vec(prop::collection::vec(-1000i64..=1000, 6), 0..7),
        dup in any::<bool>(),
    ) {
        let mut rows = rows;
        if dup && rows.len() >= 2 {
            // force a dependency
            let combo: Vec<i64> = rows[0].iter().zip(&rows[1]).map(|(a, b)| 3 * a - 2 * b).collect();
            rows.push(combo);
        }
        prop_assert_eq!(linalg::rank(6, &rows).unwrap(), float_rank(&rows, 6));
    }

    #[test]
    fn face_rank_matches_float_rank(s in semigroup(12, 60)) {
        let face = ConeFace::of_point(&apery(&s)).unwrap();
        let n = face.modulus();
        prop_assert_eq!(face.dimension().unwrap(), n - 1 - float_rank(&face.equality_rows(), n - 1));
    }

    #[test]
    fn ega_poset_depends_only_on_residue(a in 3i64..16, k in 1i64..15, d in 1i64..16, h in 1i64..4) {
        prop_assume!(k < a && gcd(a, d) == 1);
        let expected = ega_kunz_poset(a, k, d).unwrap();
        for (hh, dd) in [(h, d), (h + 1, d), (h, d + a), (h + k + 1, d - a)] {
            if let Ok((_, s)) = ega_new(a, hh, k, dd) {
                prop_assert_eq!(&kunz_poset_of(&s, a).unwrap(), &expected);
            }
        }
    }

    #[test]
    fn phi_is_linear_and_injective(
        s in semigroup(6, 30),
        t in semigroup(6, 30),
        beta in 2i64..5,
        rho_pick in 0usize..8,
        c1 in 1i64..4,
        c2 in 1i64..4,
    ) {
        let m = s.multiplicity();
        prop_assume!(t.multiplicity() == m);
        let n = beta * m;
        let units: Vec<i64> = (1..n).filter(|&r| gcd(r, beta) == 1).collect();
        let spec = EmbeddingSpec::new(n, beta, units[rho_pick % units.len()]).unwrap();
        let (w1, w2) = (apery(&s), apery(&t));
        let combo = w1.scaled(c1).unwrap().checked_add(&w2.scaled(c2).unwrap()).unwrap();
        let lhs = phi(&spec, &combo).unwrap();
        let rhs = phi(&spec, &w1).unwrap().scaled(c1).unwrap()
            .checked_add(&phi(&spec, &w2).unwrap().scaled(c2).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        if w1 != w2 {
            prop_assert_ne!(phi(&spec, &w1).unwrap(), phi(&spec, &w2).unwrap());
        }
    }

    #[test]
    fn gluings_match_oracle(s in semigroup(8, 30), beta in 2i64..5, alpha_pick in 0usize..30) {
        let m = s.multiplicity();
        let top = s.frobenius().unwrap() + 3 * m;
        let choices: Vec<i64> = (1..=top)
            .filter(|&a| GluingSpec::new(s.clone(), a, beta).is_ok())
            .collect();
        prop_assume!(!choices.is_empty());
        let spec = GluingSpec::new(s.clone(), choices[alpha_pick % choices.len()], beta).unwrap();
        let t = glue(&spec).unwrap();
        prop_assert_eq!(glued_apery(&spec), t.apery_set(beta * m).unwrap());
        prop_assert_eq!(glued_poset(&spec).unwrap(), kunz_poset_of(&t, beta * m).unwrap());
    }
}

#[test]
fn phi_has_full_rank() {
    // images of a basis of R^{H \ 0}, computed through linearity from cone points
    let spec = EmbeddingSpec::new(12, 3, 7).unwrap();
    let base = CoordTuple::new(CoordKind::Apery, vec![0, 10, 10, 10]).unwrap();
    let x0 = phi(&spec, &base).unwrap();
    let mut rows = Vec::new();
    for i in 1..4 {
        let mut e = base.entries().to_vec();
        e[i] += 1;
        let xi = phi(&spec, &CoordTuple::new(CoordKind::Apery, e).unwrap()).unwrap();
        rows.push(
            xi.entries()[1..]
                .iter()
                .zip(&x0.entries()[1..])
                .map(|(a, b)| a - b)
                .collect::<Vec<i64>>(),
        );
    }
    assert_eq!(linalg::rank(11, &rows).unwrap(), 3);
}
