use super::key::{CorrelatorKey, FormalSum, Insertion, Provenance};
use super::reductions::{dilaton_reduce, divisor_reduce, string_reduce};
use super::table::CorrelatorTable;
use super::theory::Theory;
use crate::algebra::Rational;
use crate::error::Error;

/// Which of string and dilaton is tried first when both apply.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RulePriority {
    #[default]
    StringFirst,
    DilatonFirst,
}

/// Evaluates correlators from a table, the degree axiom, the string,
/// dilaton and divisor equations and (optionally) the three-point ring data.
/// Everything derived is memoized with provenance `recursion`.
#[derive(Debug)]
pub struct Evaluator<'a> {
    theory: &'a Theory,
    table: CorrelatorTable,
    use_ring: bool,
    priority: RulePriority,
}

enum Step {
    Value(Rational, Provenance),
    Sum(FormalSum),
}

impl<'a> Evaluator<'a> {
    pub fn new(theory: &'a Theory, table: CorrelatorTable) -> Self {
        Evaluator { theory, table, use_ring: true, priority: RulePriority::default() }
    }

    /// When off, primary three-point values must come from the table.
    pub fn with_ring(mut self, use_ring: bool) -> Self {
        self.use_ring = use_ring;
        self
    }

    pub fn with_priority(mut self, priority: RulePriority) -> Self {
        self.priority = priority;
        self
    }

    pub fn table(&self) -> &CorrelatorTable {
        &self.table
    }

    pub fn into_table(self) -> CorrelatorTable {
        self.table
    }

    pub fn evaluate(&mut self, key: &CorrelatorKey) -> Result<Rational, Error> {
        if let Some(v) = self.table.value(key) {
            return Ok(v.clone());
        }
        let (value, provenance) = match self.step(key)? {
            Step::Value(v, p) => (v, p),
            Step::Sum(sum) => (self.evaluate_sum(&sum)?, Provenance::Recursion),
        };
        self.table.insert(key.clone(), value.clone(), provenance);
        Ok(value)
    }

    /// Evaluates every term, reporting all missing entries together.
    pub fn evaluate_sum(&mut self, sum: &FormalSum) -> Result<Rational, Error> {
        let mut total = Rational::zero();
        let mut missing = Vec::new();
        for (c, k) in &sum.terms {
            match self.evaluate(k) {
                Ok(v) => total += &(c * &v),
                Err(Error::MissingEntries(m)) => missing.extend(m),
                Err(e) => return Err(e),
            }
        }
        if missing.is_empty() {
            Ok(total)
        } else {
            missing.sort();
            missing.dedup();
            Err(Error::MissingEntries(missing))
        }
    }

    fn has(key: &CorrelatorKey, pred: impl Fn(&Insertion) -> bool) -> bool {
        key.insertions().iter().any(pred)
    }

    fn try_string(&self, key: &CorrelatorKey) -> Option<Step> {
        if !Self::has(key, |i| i.is_unit() && i.descendant_power == 0) {
            return None;
        }
        string_reduce(key).ok().map(Step::Sum)
    }

    fn try_dilaton(&self, key: &CorrelatorKey) -> Option<Step> {
        if !Self::has(key, |i| i.is_unit() && i.descendant_power == 1) {
            return None;
        }
        dilaton_reduce(key)
            .ok()
            .map(|(f, k)| Step::Sum(FormalSum::single(Rational::from_integer(f), k)))
    }

    fn step(&self, key: &CorrelatorKey) -> Result<Step, Error> {
        let theory = self.theory;
        if theory.vanishes_by_dimension(key) {
            return Ok(Step::Value(Rational::zero(), Provenance::Recursion));
        }
        let ordered = match self.priority {
            RulePriority::StringFirst => [Self::try_string, Self::try_dilaton],
            RulePriority::DilatonFirst => [Self::try_dilaton, Self::try_string],
        };
        for rule in ordered {
            if let Some(step) = rule(self, key) {
                return Ok(step);
            }
        }
        let pt = theory.point();
        let has_pt = Self::has(key, |i| &i.class == pt && i.descendant_power == 0);
        if has_pt && (key.len() > 3 || !key.is_descendant_free()) {
            if let Ok(sum) = divisor_reduce(theory, key, pt) {
                return Ok(Step::Sum(sum));
            }
        }
        if key.is_descendant_free() {
            if key.len() == 3 && self.use_ring {
                return theory.ring_three_point(key).map(|v| Step::Value(v, Provenance::Seeded));
            }
            if key.len() < 3 && key.beta() > 0 {
                // Divisor equation read backwards: <rest> = (A/beta) <pt, rest>.
                let mut with_pt = key.insertions().to_vec();
                with_pt.push(Insertion::primary(pt.clone()));
                let bigger = CorrelatorKey::new(key.beta(), with_pt)?;
                let factor = theory.point_integral(key.beta()).recip();
                return Ok(Step::Sum(FormalSum::single(factor, bigger)));
            }
        }
        Err(Error::MissingEntries(vec![key.to_string()]))
    }
}

/// Evaluates a single key against `table` with the ring available.
pub fn evaluate(theory: &Theory, table: &CorrelatorTable, key: &CorrelatorKey) -> Result<Rational, Error> {
    Evaluator::new(theory, table.clone()).evaluate(key)
}
