use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::Error;
use crate::orbifold::{BasisClass, ClassKind};

/// `tau_k(gamma)`: a basis class with `k` powers of psi.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Insertion {
    pub class: BasisClass,
    pub descendant_power: u32,
}

impl Insertion {
    pub fn primary(class: BasisClass) -> Self {
        Insertion { class, descendant_power: 0 }
    }

    pub fn descendant(class: BasisClass, power: u32) -> Self {
        Insertion { class, descendant_power: power }
    }

    pub fn is_unit(&self) -> bool {
        self.class.sector.is_untwisted() && self.class.kind == ClassKind::Fundamental
    }
}

impl fmt::Display for Insertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.descendant_power == 0 {
            write!(f, "{}", self.class)
        } else {
            write!(f, "tau{}({})", self.descendant_power, self.class)
        }
    }
}

/// True for `(beta, n)` outside the genus-zero excluded range `beta = 0, n < 3`.
pub fn is_stable(beta: u64, n: usize) -> bool {
    beta > 0 || n >= 3
}

/// Genus-zero correlator `<tau_k1(g1) ... tau_kn(gn)>_beta`, insertions sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrelatorKey {
    beta: u64,
    insertions: Vec<Insertion>,
}

impl CorrelatorKey {
    pub fn new(beta: u64, mut insertions: Vec<Insertion>) -> Result<Self, Error> {
        if !is_stable(beta, insertions.len()) {
            return Err(Error::Unstable(insertions.len()));
        }
        insertions.sort();
        Ok(CorrelatorKey { beta, insertions })
    }

    pub fn primaries(beta: u64, classes: impl IntoIterator<Item = BasisClass>) -> Result<Self, Error> {
        Self::new(beta, classes.into_iter().map(Insertion::primary).collect())
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn genus(&self) -> u32 {
        0
    }

    pub fn insertions(&self) -> &[Insertion] {
        &self.insertions
    }

    pub fn len(&self) -> usize {
        self.insertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.insertions.is_empty()
    }

    pub fn is_descendant_free(&self) -> bool {
        self.insertions.iter().all(|i| i.descendant_power == 0)
    }

    pub fn position(&self, ins: &Insertion) -> Option<usize> {
        self.insertions.iter().position(|i| i == ins)
    }

    pub(crate) fn without(&self, pos: usize) -> Vec<Insertion> {
        let mut rest = self.insertions.clone();
        rest.remove(pos);
        rest
    }
}

impl fmt::Display for CorrelatorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, ins) in self.insertions.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{ins}")?;
        }
        write!(f, ">_{}", self.beta)
    }
}

/// `sum_i c_i <key_i>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    pub terms: Vec<(Rational, CorrelatorKey)>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn single(coeff: Rational, key: CorrelatorKey) -> Self {
        let mut s = FormalSum::zero();
        s.push(coeff, key);
        s
    }

    /// Adds a term, merging with an equal key and dropping zero coefficients.
    pub fn push(&mut self, coeff: Rational, key: CorrelatorKey) {
        if let Some(slot) = self.terms.iter_mut().find(|(_, k)| *k == key) {
            slot.0 += &coeff;
        } else {
            self.terms.push((coeff, key));
        }
        self.terms.retain(|(c, _)| !c.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} {k}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Seeded,
    Recursion,
    User,
}
