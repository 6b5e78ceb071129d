use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;

/// A monomial `zeta^i x^j y^k q^l`.
///
/// The derived `Ord` is only a storage order; rewriting uses [`MonomialOrder`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Monomial {
    pub e_zeta: u32,
    pub e_x: u32,
    pub e_y: u32,
    pub e_q: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e_zeta: 0, e_x: 0, e_y: 0, e_q: 0 };

    pub const fn new(e_zeta: u32, e_x: u32, e_y: u32, e_q: u32) -> Self {
        Monomial { e_zeta, e_x, e_y, e_q }
    }

    pub const fn zeta(e: u32) -> Self {
        Monomial::new(e, 0, 0, 0)
    }

    pub const fn x(e: u32) -> Self {
        Monomial::new(0, e, 0, 0)
    }

    pub const fn y(e: u32) -> Self {
        Monomial::new(0, 0, e, 0)
    }

    pub const fn q(e: u32) -> Self {
        Monomial::new(0, 0, 0, e)
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            e_zeta: self.e_zeta + other.e_zeta,
            e_x: self.e_x + other.e_x,
            e_y: self.e_y + other.e_y,
            e_q: self.e_q + other.e_q,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.e_zeta <= other.e_zeta
            && self.e_x <= other.e_x
            && self.e_y <= other.e_y
            && self.e_q <= other.e_q
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn cofactor_in(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            e_zeta: other.e_zeta - self.e_zeta,
            e_x: other.e_x - self.e_x,
            e_y: other.e_y - self.e_y,
            e_q: other.e_q - self.e_q,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            e_zeta: self.e_zeta.max(other.e_zeta),
            e_x: self.e_x.max(other.e_x),
            e_y: self.e_y.max(other.e_y),
            e_q: self.e_q.max(other.e_q),
        }
    }

    /// True if the two monomials share a variable.
    pub fn overlaps(&self, other: &Monomial) -> bool {
        (self.e_zeta > 0 && other.e_zeta > 0)
            || (self.e_x > 0 && other.e_x > 0)
            || (self.e_y > 0 && other.e_y > 0)
            || (self.e_q > 0 && other.e_q > 0)
    }

    pub fn without_q(&self) -> Monomial {
        Monomial { e_q: 0, ..*self }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, e) in [("zeta", self.e_zeta), ("x", self.e_x), ("y", self.e_y), ("q", self.e_q)] {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Rational degrees of the four generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub deg_zeta: Rational,
    pub deg_x: Rational,
    pub deg_y: Rational,
    pub deg_q: Rational,
}

impl Grading {
    pub fn new(deg_zeta: Rational, deg_x: Rational, deg_y: Rational, deg_q: Rational) -> Self {
        Grading { deg_zeta, deg_x, deg_y, deg_q }
    }

    pub fn degree(&self, m: &Monomial) -> Rational {
        let term = |d: &Rational, e: u32| d * Rational::from_integer(e as i64);
        term(&self.deg_zeta, m.e_zeta)
            + term(&self.deg_x, m.e_x)
            + term(&self.deg_y, m.e_y)
            + term(&self.deg_q, m.e_q)
    }
}

/// Monomial order used to orient rewrite rules.
///
/// Compares weighted degree first, then prefers fewer powers of `q`, then
/// `e_y`, `e_x` and `e_zeta` lexicographically. Each key is additive, so the
/// order is compatible with multiplication; with positive `x`, `y`, `q`
/// weights it is also well founded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    grading: Grading,
}

impl MonomialOrder {
    pub fn new(grading: Grading) -> Self {
        MonomialOrder { grading }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.grading
            .degree(a)
            .cmp(&self.grading.degree(b))
            .then_with(|| b.e_q.cmp(&a.e_q))
            .then_with(|| a.e_y.cmp(&b.e_y))
            .then_with(|| a.e_x.cmp(&b.e_x))
            .then_with(|| a.e_zeta.cmp(&b.e_zeta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p46_order() -> MonomialOrder {
        MonomialOrder::new(Grading::new(
            Rational::zero(),
            Rational::new(1, 2),
            Rational::new(1, 3),
            Rational::new(5, 6),
        ))
    }

    #[test]
    fn rules_for_p46_are_decreasing() {
        let ord = p46_order();
        assert_eq!(ord.cmp(&Monomial::zeta(2), &Monomial::ONE), Ordering::Greater);
        assert_eq!(ord.cmp(&Monomial::new(0, 1, 1, 0), &Monomial::q(1)), Ordering::Greater);
        assert_eq!(ord.cmp(&Monomial::y(3), &Monomial::new(1, 2, 0, 0)), Ordering::Greater);
        assert_eq!(ord.cmp(&Monomial::x(3), &Monomial::new(1, 0, 2, 1)), Ordering::Greater);
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(1, 2, 0, 3).to_string(), "zeta x^2 q^3");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
