use serde::Serialize;

use crate::algebra::{Grading, Monomial, MonomialOrder, Polynomial, Rational, RewriteSystem, Rule};
use crate::error::Error;
use crate::orbifold::Weights;

/// `Q[[q]][zeta,x,y] / (xy - q, A x^A - B y^B zeta^e, zeta^d - 1)` with
/// `e = (n - m) mod d`, or its classical (`q = 0`) specialization.
#[derive(Clone, Debug, Serialize)]
pub struct RingPresentation {
    #[serde(skip)]
    pub weights: Weights,
    pub relations: Vec<Polynomial>,
    pub grading: Grading,
    pub quantum: bool,
    /// Exponent of `zeta` in the second relation.
    pub zeta_shift: u64,
}

/// `deg zeta = 0`, `deg x = 1/A`, `deg y = 1/B`, `deg q = 1/A + 1/B`.
pub fn ring_grading(w: &Weights) -> Grading {
    let dx = Rational::new(1, w.big_a() as i64);
    let dy = Rational::new(1, w.big_b() as i64);
    Grading::new(Rational::zero(), dx.clone(), dy.clone(), dx + dy)
}

impl RingPresentation {
    pub fn quantum(w: &Weights) -> Self {
        Self::with_zeta_shift(w, w.zeta_shift(), true)
    }

    pub fn classical(w: &Weights) -> Self {
        Self::with_zeta_shift(w, w.zeta_shift(), false)
    }

    /// Same ring shape with an arbitrary `zeta` exponent in the second
    /// relation; `zeta_shift = 0` drops the factor entirely.
    pub fn with_zeta_shift(w: &Weights, zeta_shift: u64, quantum: bool) -> Self {
        let (a, b, d) = (w.big_a() as u32, w.big_b() as u32, w.d() as u32);
        let e = (zeta_shift % w.d()) as u32;
        let mut r1 = Polynomial::monomial(Monomial::new(0, 1, 1, 0), Rational::one());
        if quantum {
            r1.add_term(Monomial::q(1), Rational::from_integer(-1));
        }
        let r2 = Polynomial::from_terms([
            (Monomial::x(a), Rational::from_integer(a as i64)),
            (Monomial::new(e, 0, b, 0), Rational::from_integer(-(b as i64))),
        ]);
        let r3 = Polynomial::from_terms([(Monomial::zeta(d), Rational::one()), (Monomial::ONE, Rational::from_integer(-1))]);
        RingPresentation {
            weights: *w,
            relations: vec![r1, r2, r3],
            grading: ring_grading(w),
            quantum,
            zeta_shift: e as u64,
        }
    }

    pub fn monomial_order(&self) -> MonomialOrder {
        MonomialOrder::new(self.grading.clone())
    }

    fn base_rules(&self) -> Vec<Rule> {
        let w = &self.weights;
        let (a, b, d) = (w.big_a() as u32, w.big_b() as u32, w.d() as u32);
        let inv_shift = (d - self.zeta_shift as u32) % d;
        let q_or_zero = if self.quantum {
            Polynomial::monomial(Monomial::q(1), Rational::one())
        } else {
            Polynomial::zero()
        };
        vec![
            Rule::new(Monomial::zeta(d), Polynomial::one()),
            Rule::new(Monomial::new(0, 1, 1, 0), q_or_zero),
            Rule::new(
                Monomial::y(b),
                Polynomial::monomial(Monomial::new(inv_shift, a, 0, 0), Rational::new(a as i64, b as i64)),
            ),
        ]
    }

    /// The completed system: the three relations oriented plus
    /// `x^{A+1} -> (B/A) q y^{B-1} zeta^e`, which closes the `x y^B` overlap.
    pub fn rewrite_system(&self, q_truncation: u32) -> Result<RewriteSystem, Error> {
        let w = &self.weights;
        let (a, b) = (w.big_a() as u32, w.big_b() as u32);
        let mut rules = self.base_rules();
        let completion = if self.quantum {
            Polynomial::monomial(
                Monomial::new(self.zeta_shift as u32, 0, b - 1, 1),
                Rational::new(b as i64, a as i64),
            )
        } else {
            Polynomial::zero()
        };
        rules.push(Rule::new(Monomial::x(a + 1), completion));
        RewriteSystem::new(rules, q_truncation, self.monomial_order())
    }

    /// Only the three relations, oriented; not confluent in general.
    pub fn incomplete_rewrite_system(&self, q_truncation: u32) -> Result<RewriteSystem, Error> {
        RewriteSystem::new(self.base_rules(), q_truncation, self.monomial_order())
    }

    /// Sector twist of a monomial in `Q/Z`, with `x -> n/a`, `y -> m/b`,
    /// `zeta -> 1/d` and `q -> n/a + m/b`.
    pub fn twist(&self, m: &Monomial) -> Rational {
        let w = &self.weights;
        let tx = Rational::new(w.n(), w.a() as i64);
        let ty = Rational::new(w.m(), w.b() as i64);
        let tz = Rational::new(1, w.d() as i64);
        let e = |k: u32| Rational::from_integer(k as i64);
        (tz * e(m.e_zeta) + &tx * e(m.e_x) + &ty * e(m.e_y) + (tx + ty) * e(m.e_q)).fract_part()
    }

    /// Relations whose terms do not all carry the same sector twist.
    pub fn sector_inconsistent_relations(&self) -> Vec<Polynomial> {
        self.relations
            .iter()
            .filter(|r| {
                let mut twists = r.terms().map(|(m, _)| self.twist(m));
                let first = twists.next();
                first.is_some_and(|t| twists.any(|u| u != t))
            })
            .cloned()
            .collect()
    }
}

pub fn quantum_presentation(w: &Weights) -> RingPresentation {
    RingPresentation::quantum(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{confluence_smoke_check, is_homogeneous};

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn presentation_p46() {
        let w = Weights::new(4, 6).unwrap();
        let pr = quantum_presentation(&w);
        // zeta^{n-m} = zeta^2 = 1 for the pair (m,n) = (-1,1).
        assert_eq!(pr.relations, vec![p("x y - q"), p("2 * x^2 - 3 * y^3"), p("zeta^2 - 1")]);
        let rs = pr.rewrite_system(6).unwrap();
        assert!(rs.normal_form(&p("2 * x^2 - 3 * y^3 zeta^2")).is_zero());
    }

    #[test]
    fn presentation_p11_and_p23() {
        let pr = quantum_presentation(&Weights::new(1, 1).unwrap());
        assert_eq!(pr.relations, vec![p("x y - q"), p("x - y"), p("zeta - 1")]);
        let pr = quantum_presentation(&Weights::new(2, 3).unwrap());
        assert_eq!(pr.relations, vec![p("x y - q"), p("2 * x^2 - 3 * y^3"), p("zeta - 1")]);
    }

    #[test]
    fn relations_are_homogeneous() {
        for (a, b) in [(4, 6), (1, 1), (2, 3), (6, 10), (3, 9)] {
            let pr = quantum_presentation(&Weights::new(a, b).unwrap());
            for r in &pr.relations {
                assert!(is_homogeneous(r, &pr.grading).is_some(), "{r} for ({a},{b})");
            }
        }
    }

    #[test]
    fn completed_system_is_confluent_incomplete_is_not() {
        let pr = quantum_presentation(&Weights::new(4, 6).unwrap());
        assert!(confluence_smoke_check(&pr.rewrite_system(6).unwrap(), 40, 1));
        assert!(!confluence_smoke_check(&pr.incomplete_rewrite_system(6).unwrap(), 40, 1));
    }

    #[test]
    fn dropping_zeta_factor_breaks_sector_twist_when_nontrivial() {
        let w = Weights::new(4, 6).unwrap().shifted_bezout(1);
        assert_eq!(w.zeta_shift(), 1);
        assert!(RingPresentation::quantum(&w).sector_inconsistent_relations().is_empty());
        let deleted = RingPresentation::with_zeta_shift(&w, 0, true);
        assert_eq!(deleted.sector_inconsistent_relations().len(), 1);
    }
}
