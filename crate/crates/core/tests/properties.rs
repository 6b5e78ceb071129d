use orbigw::algebra::{is_homogeneous, Monomial, Polynomial, Rational, RewriteSystem};
use orbigw::correlator::{
    dilaton_reduce, divisor_reduce, is_stable, string_reduce, CorrelatorKey, CorrelatorTable, Evaluator, Insertion,
    Provenance, RulePriority, Theory,
};
use orbigw::orbifold::{age, all_sectors, involution_sector, Weights};
use orbigw::quantum_ring::{monomial_sector, quantum_presentation, structure_constants};
use orbigw::twisted_curves::{euler_char, Football, SheafClass};
use proptest::prelude::*;

const TRUNCATION: u32 = 4;

fn system(a: u64, b: u64) -> RewriteSystem {
    quantum_presentation(&Weights::new(a, b).unwrap()).rewrite_system(TRUNCATION).unwrap()
}

fn weights() -> impl Strategy<Value = (u64, u64)> {
    prop_oneof![Just((4, 6)), Just((1, 1)), Just((2, 3)), Just((6, 10)), Just((3, 9)), (1u64..=6, 1u64..=6)]
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u32..4, 0u32..5, 0u32..5, 0u32..3).prop_map(|(z, x, y, q)| Monomial::new(z, x, y, q))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rational::new(p, q))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), rational()), 0..5).prop_map(Polynomial::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent((a, b) in weights(), p in polynomial()) {
        let rs = system(a, b);
        let nf = rs.normal_form(&p);
        prop_assert!(rs.is_normal(&nf));
        prop_assert_eq!(rs.normal_form(&nf), nf);
    }

    #[test]
    fn normal_form_is_a_ring_map((a, b) in weights(), p in polynomial(), r in polynomial()) {
        let rs = system(a, b);
        prop_assert_eq!(rs.normal_form(&(&p + &r)), &rs.normal_form(&p) + &rs.normal_form(&r));
        prop_assert_eq!(
            rs.normal_form(&p.mul(&r)),
            rs.normal_form(&rs.normal_form(&p).mul(&rs.normal_form(&r)))
        );
    }

    #[test]
    fn normal_form_preserves_degree((a, b) in weights(), m in monomial(), c in rational()) {
        let pr = quantum_presentation(&Weights::new(a, b).unwrap());
        let rs = pr.rewrite_system(TRUNCATION).unwrap();
        let nf = rs.normal_form(&Polynomial::monomial(m, c));
        if !nf.is_zero() {
            prop_assert_eq!(is_homogeneous(&nf, &pr.grading), Some(pr.grading.degree(&m)));
        }
    }

    #[test]
    fn addition_cancels(p in polynomial(), r in polynomial()) {
        prop_assert_eq!(&(&p + &r) - &r, p);
    }

    #[test]
    fn polynomial_text_round_trips(p in polynomial()) {
        let back: Polynomial = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn basis_has_a_plus_b_elements(a in 1u64..=12, b in 1u64..=12) {
        let sc = structure_constants(&Weights::new(a, b).unwrap(), 1).unwrap();
        prop_assert_eq!(sc.rank() as u64, a + b);
    }

    #[test]
    fn involution_and_age_duality(a in 1u64..=12, b in 1u64..=12) {
        let w = Weights::new(a, b).unwrap();
        for s in all_sectors(&w) {
            let t = involution_sector(&w, &s);
            prop_assert_eq!(involution_sector(&w, &t), s);
            prop_assert_eq!(age(&w, &s) + age(&w, &t), Rational::from_integer(1 - s.dimension() as i64));
        }
    }

    /// Labels add under products of pure powers over the same point.
    #[test]
    fn sector_labels_add(a in 2u64..=12, b in 2u64..=12, j in 1u32..6, k in 1u32..6) {
        let w = Weights::new(a, b).unwrap();
        let sc = structure_constants(&w, 1).unwrap();
        let (big_a, big_b) = (w.big_a() as u32, w.big_b() as u32);
        for (u, v, modulus, pure) in [
            (Monomial::x(j % big_a), Monomial::x(k % big_a), a, true),
            (Monomial::y(j % big_b), Monomial::y(k % big_b), b, false),
        ] {
            let prod = sc.normal_form(&Polynomial::monomial(u.mul(&v), Rational::one())).q_coefficient(0);
            let Some((m, _)) = prod.terms().next() else { continue };
            let label = |mono: &Monomial| monomial_sector(&w, mono).unwrap().0.label();
            let expected = (label(&u) + label(&v)) % modulus;
            let (sector, _) = monomial_sector(&w, m).unwrap();
            // Sums landing on a multiple of a/d (resp. b/d) move to a one-dimensional sector.
            if sector.dimension() == 1 {
                let step = if pure { w.big_a() } else { w.big_b() };
                prop_assert_eq!(expected % step, 0);
            } else {
                prop_assert_eq!(sector.label(), expected);
            }
        }
    }

    #[test]
    fn euler_characteristic_is_additive(
        genus in 0u32..4,
        orders in prop::collection::vec(1u64..8, 0..4),
        r1 in -3i64..4, r2 in -3i64..4,
        d1 in rational(), d2 in rational(),
        seed in any::<u64>(),
    ) {
        let curve = Football::new(genus, orders.clone()).unwrap();
        let ages = |shift: u64| orders.iter().enumerate()
            .map(|(i, &r)| Rational::new(((seed >> (i + shift as usize)) % r) as i64, r as i64))
            .collect::<Vec<_>>();
        let s1 = SheafClass { rank: r1, degree: d1, ages: ages(0) };
        let s2 = SheafClass { rank: r2, degree: d2, ages: ages(7) };
        let sum = (&s1 + &s2).unwrap();
        prop_assert_eq!(
            euler_char(&sum, &curve).unwrap(),
            euler_char(&s1, &curve).unwrap() + euler_char(&s2, &curve).unwrap()
        );
    }
}

fn theory(a: u64, b: u64) -> Theory {
    Theory::for_weights(&Weights::new(a, b).unwrap(), 2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// With user values for the unit-free correlators, string-then-dilaton
    /// and dilaton-then-string agree, and both equal
    /// `(|S| - 1) sum_i <S with tau_i lowered>`.
    #[test]
    fn string_and_dilaton_commute(
        p1 in any::<bool>(),
        picks in prop::collection::vec((0usize..64, 0u32..4), 1..4),
        beta in 1u64..3,
        values in prop::collection::vec(rational(), 4),
    ) {
        let t = if p1 { theory(1, 1) } else { theory(4, 6) };
        let non_unit: Vec<_> = t.classes().iter().filter(|c| c != &t.unit()).cloned().collect();
        let s: Vec<Insertion> = picks.iter().map(|&(i, k)| Insertion::descendant(non_unit[i % non_unit.len()].clone(), k)).collect();

        let mut user = CorrelatorTable::new();
        let mut expected = Rational::zero();
        for (i, ins) in s.iter().enumerate() {
            if ins.descendant_power == 0 {
                continue;
            }
            let mut lowered = s.clone();
            lowered[i].descendant_power -= 1;
            let key = CorrelatorKey::new(beta, lowered).unwrap();
            if t.vanishes_by_dimension(&key) {
                continue;
            }
            let v = user.value(&key).cloned().unwrap_or_else(|| values[i].clone());
            user.insert(key, v.clone(), Provenance::User);
            expected += &v;
        }
        expected = expected * Rational::from_integer(s.len() as i64 - 1);

        let mut all = s.clone();
        all.push(Insertion::primary(t.unit().clone()));
        all.push(Insertion::descendant(t.unit().clone(), 1));
        let key = CorrelatorKey::new(beta, all).unwrap();
        if t.vanishes_by_dimension(&key) {
            expected = Rational::zero();
        }
        let v1 = Evaluator::new(&t, user.clone()).with_priority(RulePriority::StringFirst).evaluate(&key).unwrap();
        let v2 = Evaluator::new(&t, user).with_priority(RulePriority::DilatonFirst).evaluate(&key).unwrap();
        prop_assert_eq!(&v1, &v2);
        prop_assert_eq!(v1, expected);
    }

    /// Keys are canonical, and no reduction ever produces an unstable key.
    #[test]
    fn reductions_stay_stable(
        picks in prop::collection::vec((0usize..64, 0u32..3), 1..5),
        beta in 0u64..3,
        p1 in any::<bool>(),
    ) {
        let t = if p1 { theory(1, 1) } else { theory(4, 6) };
        let classes = t.classes();
        let ins: Vec<Insertion> = picks.iter().map(|&(i, k)| Insertion::descendant(classes[i % classes.len()].clone(), k)).collect();
        let Ok(key) = CorrelatorKey::new(beta, ins.clone()) else {
            prop_assert!(!is_stable(beta, ins.len()));
            return Ok(());
        };
        let mut reversed = ins.clone();
        reversed.reverse();
        prop_assert_eq!(&CorrelatorKey::new(beta, reversed).unwrap(), &key);

        let mut produced = Vec::new();
        if let Ok(s) = string_reduce(&key) {
            produced.extend(s.terms.into_iter().map(|(_, k)| k));
        }
        if let Ok((_, k)) = dilaton_reduce(&key) {
            produced.push(k);
        }
        if let Ok(s) = divisor_reduce(&t, &key, t.point()) {
            produced.extend(s.terms.into_iter().map(|(_, k)| k));
        }
        for k in produced {
            prop_assert!(is_stable(k.beta(), k.len()), "{}", k);
        }
    }
}
