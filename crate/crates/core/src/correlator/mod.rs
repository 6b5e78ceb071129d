//! Genus-zero correlators of `P(a,b)`: tables seeded from the quantum ring,
//! the string, dilaton and divisor equations, and WDVV residuals.
//!
//! Correlators are taken in the inertia-stack convention with the modified
//! pairing, so three-point values are `<i, j, k>_beta = sum_l c_ij^l(beta) g~(l, k)`.

mod evaluator;
mod key;
mod reductions;
mod table;
mod theory;
mod wdvv;

pub use evaluator::{evaluate, Evaluator, RulePriority};
pub use key::{is_stable, CorrelatorKey, FormalSum, Insertion, Provenance};
pub use reductions::{dilaton_reduce, divisor_reduce, string_reduce};
pub use table::{CorrelatorTable, TableEntry};
pub use theory::Theory;
pub use wdvv::{wdvv_residual, wdvv_sweep, WdvvCase};

use crate::algebra::Rational;
use crate::error::Error;
use crate::orbifold::Weights;

/// Largest number of insertions generated by [`p1_reconstruct`].
pub const P1_MAX_POINTS: usize = 6;

/// Every primary three-point correlator with `beta <= N`, from the ring.
pub fn seed_from_ring(theory: &Theory) -> Result<CorrelatorTable, Error> {
    let classes = theory.classes();
    let n = classes.len();
    let mut table = CorrelatorTable::new();
    for beta in 0..=theory.ring.truncation as u64 {
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let key = CorrelatorKey::primaries(beta, [i, j, k].map(|l| classes[l].clone()))?;
                    let value = theory.ring_three_point(&key)?;
                    table.insert(key, value, Provenance::Seeded);
                }
            }
        }
    }
    Ok(table)
}

/// The line `P(1,1)` with truncation `max_beta`.
pub fn p1_theory(max_beta: u64) -> Result<Theory, Error> {
    let truncation = u32::try_from(max_beta.max(1)).map_err(|_| Error::Invalid("degree bound too large".into()))?;
    Theory::for_weights(&Weights::new(1, 1)?, truncation)
}

/// The seed for `P^1`: `<pt, pt, pt>_1 = 1` and the classical triple
/// `<1, 1, pt>_0 = 1`; every other primary triple vanishes by degree.
pub fn p1_seed(theory: &Theory) -> Result<CorrelatorTable, Error> {
    let (one, pt) = (theory.unit().clone(), theory.point().clone());
    let mut table = CorrelatorTable::new();
    table.insert(CorrelatorKey::primaries(1, [pt.clone(), pt.clone(), pt.clone()])?, Rational::one(), Provenance::Seeded);
    table.insert(CorrelatorKey::primaries(0, [one.clone(), one, pt])?, Rational::one(), Provenance::Seeded);
    Ok(table)
}

/// All primary correlators of `P^1` with `beta <= max_beta` and at most
/// [`P1_MAX_POINTS`] insertions, derived from [`p1_seed`] by the degree
/// axiom and the string and divisor equations (the ring is not consulted).
pub fn p1_reconstruct(max_beta: u64) -> Result<CorrelatorTable, Error> {
    if max_beta == 0 {
        return Err(Error::Invalid("max_beta must be at least 1".into()));
    }
    let theory = p1_theory(max_beta)?;
    let mut ev = Evaluator::new(&theory, p1_seed(&theory)?).with_ring(false);
    let classes = theory.classes().to_vec();
    for beta in 0..=max_beta {
        for multiset in wdvv::all_multisets(classes.len(), P1_MAX_POINTS) {
            if !is_stable(beta, multiset.len()) || multiset.is_empty() {
                continue;
            }
            let key = CorrelatorKey::primaries(beta, multiset.iter().map(|&i| classes[i].clone()))?;
            ev.evaluate(&key)?;
        }
    }
    Ok(ev.into_table())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbifold::{ClassKind, Sector};

    fn p1() -> Theory {
        p1_theory(3).unwrap()
    }

    #[test]
    fn p1_seed_from_ring() {
        let t = p1();
        let table = seed_from_ring(&t).unwrap();
        let pt = t.point().clone();
        let key = CorrelatorKey::primaries(1, [pt.clone(), pt.clone(), pt]).unwrap();
        assert_eq!(table.value(&key), Some(&Rational::one()));
    }

    #[test]
    fn p46_xy_against_dual_of_unit() {
        let t = Theory::for_weights(&Weights::new(4, 6).unwrap(), 2).unwrap();
        let table = seed_from_ring(&t).unwrap();
        let x = t.find(Sector::Point0 { label: 1 }, ClassKind::Fundamental).unwrap().clone();
        let y = t.find(Sector::PointInf { label: 5 }, ClassKind::Fundamental).unwrap().clone();
        // kappa = sum_f g^{1 f} T_f, the class dual to the unit.
        let unit = t.unit().clone();
        let mut total = Rational::zero();
        for c in t.classes() {
            let g = t.inverse_pairing(&unit, c).unwrap();
            if !g.is_zero() {
                let key = CorrelatorKey::primaries(1, [x.clone(), y.clone(), c.clone()]).unwrap();
                total += &(g * table.value(&key).unwrap());
            }
        }
        assert_eq!(total, Rational::one());
    }

    #[test]
    fn degree_zero_unit_gives_pairing() {
        let t = Theory::for_weights(&Weights::new(4, 6).unwrap(), 2).unwrap();
        let table = seed_from_ring(&t).unwrap();
        let unit = t.unit().clone();
        for (i, a) in t.classes().iter().enumerate() {
            for (j, b) in t.classes().iter().enumerate() {
                let key = CorrelatorKey::primaries(0, [unit.clone(), a.clone(), b.clone()]).unwrap();
                assert_eq!(table.value(&key).unwrap(), t.pairing.get(i, j));
            }
        }
    }

    #[test]
    fn string_examples() {
        let t = p1();
        let (one, pt) = (t.unit().clone(), t.point().clone());
        let key = CorrelatorKey::new(
            1,
            vec![Insertion::primary(one.clone()), Insertion::descendant(pt.clone(), 1), Insertion::primary(pt.clone())],
        )
        .unwrap();
        let sum = string_reduce(&key).unwrap();
        assert_eq!(sum, FormalSum::single(Rational::one(), CorrelatorKey::primaries(1, [pt.clone(), pt.clone()]).unwrap()));
        let key = CorrelatorKey::primaries(1, [one.clone(), pt.clone(), pt.clone(), pt.clone()]).unwrap();
        assert!(string_reduce(&key).unwrap().is_zero());
        let key = CorrelatorKey::new(0, vec![Insertion::primary(one.clone()), Insertion::descendant(pt.clone(), 2), Insertion::primary(pt)]);
        assert!(matches!(string_reduce(&key.unwrap()), Err(Error::Unstable(2))));
        assert!(matches!(CorrelatorKey::new(0, vec![Insertion::primary(one)]), Err(Error::Unstable(1))));
    }

    #[test]
    fn dilaton_examples() {
        let t = p1();
        let (one, pt) = (t.unit().clone(), t.point().clone());
        let tau1 = Insertion::descendant(one.clone(), 1);
        let p = Insertion::primary(pt.clone());
        let key = CorrelatorKey::new(1, vec![tau1.clone(), p.clone(), p.clone()]).unwrap();
        assert_eq!(dilaton_reduce(&key).unwrap().0, 0);
        let key = CorrelatorKey::new(1, vec![tau1.clone(), p.clone(), p.clone(), p.clone()]).unwrap();
        let (f, k) = dilaton_reduce(&key).unwrap();
        assert_eq!((f, k), (1, CorrelatorKey::new(1, vec![p.clone(); 3]).unwrap()));
        let key = CorrelatorKey::new(1, vec![tau1.clone(), tau1, p.clone(), p, Insertion::primary(one)]).unwrap();
        assert_eq!(dilaton_reduce(&key).unwrap().0, 2);
    }

    #[test]
    fn divisor_examples() {
        let t = p1();
        let pt = t.point().clone();
        let key = CorrelatorKey::primaries(1, [pt.clone(), pt.clone(), pt.clone()]).unwrap();
        let sum = divisor_reduce(&t, &key, &pt).unwrap();
        assert_eq!(sum, FormalSum::single(Rational::one(), CorrelatorKey::primaries(1, [pt.clone(), pt]).unwrap()));

        let t = Theory::for_weights(&Weights::new(4, 6).unwrap(), 2).unwrap();
        let x = t.find(Sector::Point0 { label: 1 }, ClassKind::Fundamental).unwrap().clone();
        let y = t.find(Sector::PointInf { label: 5 }, ClassKind::Fundamental).unwrap().clone();
        let pt = t.point().clone();
        let key = CorrelatorKey::primaries(1, [pt.clone(), x.clone(), y.clone(), pt.clone()]).unwrap();
        let sum = divisor_reduce(&t, &key, &pt).unwrap();
        let expected = CorrelatorKey::primaries(1, [x.clone(), y.clone(), pt]).unwrap();
        assert_eq!(sum, FormalSum::single(Rational::new(1, 2), expected));
        assert!(matches!(divisor_reduce(&t, &key, &x), Err(Error::TwistedDivisor(_))));
    }

    #[test]
    fn p1_reconstruction_values() {
        let table = p1_reconstruct(3).unwrap();
        let t = p1();
        let pt = t.point().clone();
        let get = |beta, n| table.value(&CorrelatorKey::primaries(beta, vec![pt.clone(); n]).unwrap()).cloned();
        assert_eq!(get(1, 2), Some(Rational::one()));
        assert_eq!(get(1, 5), Some(Rational::one()));
        assert_eq!(get(2, 4), Some(Rational::zero()));
        let seeded = seed_from_ring(&t).unwrap();
        for (k, e) in seeded.iter() {
            assert_eq!(table.value(k), Some(&e.value), "{k}");
        }
        let cases = wdvv_sweep(&t, &table, 3, P1_MAX_POINTS).unwrap();
        assert!(cases.iter().all(|c| c.residual.is_zero()));
    }

    #[test]
    fn json_lines_round_trip() {
        let t = p1();
        let table = p1_reconstruct(2).unwrap();
        let text = table.to_json_lines();
        assert_eq!(CorrelatorTable::from_json_lines(&text, &t).unwrap(), table);
        let first = text.lines().next().unwrap();
        assert!(first.starts_with(r#"{"beta":0,"insertions":[{"sector":"one_dim:0","kind":"fundamental","tau":0}"#), "{first}");
    }
}
