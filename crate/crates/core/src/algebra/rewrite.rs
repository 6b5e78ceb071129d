//! Monomial rewriting modulo a binomial-style ideal, truncated in `q`.
//!
//! Rules rewrite a single monomial pattern to a polynomial that is strictly
//! smaller in a fixed [`MonomialOrder`], so any reduction strategy terminates.
//! Confluence is not assumed; [`confluence_smoke_check`] tests it on the
//! critical overlaps and on random inputs with random reduction orders.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Monomial, MonomialOrder, Polynomial, Rational};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub pattern: Monomial,
    pub replacement: Polynomial,
}

impl Rule {
    pub fn new(pattern: Monomial, replacement: Polynomial) -> Self {
        Rule { pattern, replacement }
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
    q_truncation: u32,
    order: MonomialOrder,
}

impl RewriteSystem {
    /// Checks that every rule is decreasing in `order` and degree preserving
    /// under the order's grading.
    pub fn new(rules: Vec<Rule>, q_truncation: u32, order: MonomialOrder) -> Result<Self, Error> {
        let grading = order.grading();
        for rule in &rules {
            let lhs_deg = grading.degree(&rule.pattern);
            for (m, _) in rule.replacement.terms() {
                if order.cmp(&rule.pattern, m) != Ordering::Greater {
                    return Err(Error::InvalidRule(format!(
                        "{} -> {}: `{m}` is not below the pattern",
                        rule.pattern, rule.replacement
                    )));
                }
                if grading.degree(m) != lhs_deg {
                    return Err(Error::InvalidRule(format!(
                        "{} -> {}: `{m}` changes the degree",
                        rule.pattern, rule.replacement
                    )));
                }
            }
        }
        Ok(RewriteSystem { rules, q_truncation, order })
    }

    pub fn empty(q_truncation: u32, order: MonomialOrder) -> Self {
        RewriteSystem { rules: Vec::new(), q_truncation, order }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn q_truncation(&self) -> u32 {
        self.q_truncation
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn with_truncation(&self, q_truncation: u32) -> RewriteSystem {
        RewriteSystem { q_truncation, ..self.clone() }
    }

    /// Index of the first rule whose pattern divides `m`.
    pub fn matching_rule(&self, m: &Monomial) -> Option<usize> {
        self.rules.iter().position(|r| r.pattern.divides(m))
    }

    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.matching_rule(m).is_some()
    }

    /// One rewrite of the term `c * m` with rule `rule_idx`, truncated.
    fn rewrite_term(&self, m: &Monomial, c: &Rational, rule_idx: usize) -> Polynomial {
        let rule = &self.rules[rule_idx];
        let cofactor = rule.pattern.cofactor_in(m);
        rule.replacement.mul_monomial(&cofactor, c).truncate_q(self.q_truncation)
    }

    /// Canonical representative of `p` modulo the rules (first-match strategy).
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let mut pending: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in p.terms() {
            if m.e_q <= self.q_truncation {
                *pending.entry(*m).or_insert_with(Rational::zero) += c;
            }
        }
        let mut done = Polynomial::zero();
        while let Some((m, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.matching_rule(&m) {
                None => done.add_term(m, c),
                Some(idx) => {
                    for (t, k) in self.rewrite_term(&m, &c, idx).terms() {
                        *pending.entry(*t).or_insert_with(Rational::zero) += k;
                    }
                }
            }
        }
        done
    }

    /// Reduces with a random choice of (term, rule) redex at every step.
    pub fn normal_form_random<R: Rng>(&self, p: &Polynomial, rng: &mut R) -> Polynomial {
        let mut current = p.truncate_q(self.q_truncation);
        loop {
            let redexes: Vec<(Monomial, usize)> = current
                .terms()
                .flat_map(|(m, _)| {
                    self.rules
                        .iter()
                        .enumerate()
                        .filter(|(_, r)| r.pattern.divides(m))
                        .map(|(i, _)| (*m, i))
                        .collect::<Vec<_>>()
                })
                .collect();
            let Some(&(m, idx)) = redexes.choose(rng) else {
                return current;
            };
            let c = current.coefficient(&m);
            let mut next = current.clone();
            next.add_term(m, -&c);
            let rewritten = self.rewrite_term(&m, &c, idx);
            current = &next + &rewritten;
        }
    }

    pub fn is_normal(&self, p: &Polynomial) -> bool {
        p.terms().all(|(m, _)| !self.is_reducible(m))
    }

    /// Pairs of rules whose patterns overlap, with the reduced forms of the
    /// overlap monomial via each rule. Joinable pairs have equal forms.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let mut out = Vec::new();
        for i in 0..self.rules.len() {
            for j in (i + 1)..self.rules.len() {
                let (pi, pj) = (&self.rules[i].pattern, &self.rules[j].pattern);
                if !pi.overlaps(pj) {
                    continue;
                }
                let overlap = pi.lcm(pj);
                let one = Rational::one();
                let via_i = self.normal_form(&self.rewrite_term(&overlap, &one, i));
                let via_j = self.normal_form(&self.rewrite_term(&overlap, &one, j));
                out.push(CriticalPair { rules: (i, j), overlap, via_first: via_i, via_second: via_j });
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub rules: (usize, usize),
    pub overlap: Monomial,
    pub via_first: Polynomial,
    pub via_second: Polynomial,
}

impl CriticalPair {
    pub fn is_joinable(&self) -> bool {
        self.via_first == self.via_second
    }
}

/// Canonical representative of `p` modulo `rs`.
pub fn normal_form(p: &Polynomial, rs: &RewriteSystem) -> Polynomial {
    rs.normal_form(p)
}

/// Irreducible monomials with `e_q = 0` and `e_zeta < zeta_bound`, in storage order.
///
/// The search box in `x` and `y` is bounded by the smallest pure power of that
/// variable appearing as a pattern; a variable without one makes the basis
/// infinite and is reported as an error.
pub fn enumerate_normal_monomials(rs: &RewriteSystem, zeta_bound: u32) -> Result<Vec<Monomial>, Error> {
    let pure_bound = |f: fn(&Monomial) -> (u32, u32)| -> Option<u32> {
        rs.rules()
            .iter()
            .filter_map(|r| {
                let (own, others) = f(&r.pattern);
                (own > 0 && others == 0).then_some(own)
            })
            .min()
    };
    let x_bound = pure_bound(|m| (m.e_x, m.e_y + m.e_zeta + m.e_q))
        .ok_or_else(|| Error::InfiniteBasis("no pure power of x is reducible".into()))?;
    let y_bound = pure_bound(|m| (m.e_y, m.e_x + m.e_zeta + m.e_q))
        .ok_or_else(|| Error::InfiniteBasis("no pure power of y is reducible".into()))?;
    let mut out = Vec::new();
    for e_zeta in 0..zeta_bound {
        for e_x in 0..x_bound {
            for e_y in 0..y_bound {
                let m = Monomial::new(e_zeta, e_x, e_y, 0);
                if !rs.is_reducible(&m) {
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn random_polynomial<R: Rng>(rng: &mut R, max_exp: u32, q_max: u32) -> Polynomial {
    let n_terms = rng.gen_range(1..=4);
    Polynomial::from_terms((0..n_terms).map(|_| {
        let m = Monomial::new(
            rng.gen_range(0..=max_exp),
            rng.gen_range(0..=max_exp),
            rng.gen_range(0..=max_exp),
            rng.gen_range(0..=q_max),
        );
        let c = Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        (m, c)
    }))
}

/// True iff every critical overlap is joinable and, for `samples` random
/// polynomials, random reduction orders agree with the canonical normal form.
pub fn confluence_smoke_check(rs: &RewriteSystem, samples: u32, seed: u64) -> bool {
    if !rs.critical_pairs().iter().all(CriticalPair::is_joinable) {
        return false;
    }
    let max_exp = rs
        .rules()
        .iter()
        .map(|r| r.pattern.e_zeta.max(r.pattern.e_x).max(r.pattern.e_y))
        .max()
        .unwrap_or(1)
        + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = random_polynomial(&mut rng, max_exp, 1);
        let canonical = rs.normal_form(&p);
        for _ in 0..2 {
            if rs.normal_form_random(&p, &mut rng) != canonical {
                return false;
            }
        }
    }
    true
}
