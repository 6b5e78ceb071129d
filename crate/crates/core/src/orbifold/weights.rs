use num_integer::Integer;
use serde::Serialize;

use crate::algebra::Rational;
use crate::error::Error;

/// The weights of `P(a,b)` with their derived arithmetic and a Bezout pair
/// `m*a + n*b = d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Weights {
    a: u64,
    b: u64,
    d: u64,
    m: i64,
    n: i64,
}

impl Weights {
    /// Weights with the canonical Bezout pair: the smallest `n > 0` with
    /// `n*b = d (mod a)`, so `0 < n <= a/d`.
    pub fn new(a: u64, b: u64) -> Result<Self, Error> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidWeights(format!("({a},{b}): weights must be positive")));
        }
        let d = a.gcd(&b);
        let n = (1..=a / d)
            .find(|n| (n * b) % a == d % a)
            .expect("b/d is invertible modulo a/d");
        let m = (d as i64 - n as i64 * b as i64) / a as i64;
        Ok(Weights { a, b, d, m, n: n as i64 })
    }

    /// Weights with an explicit Bezout pair, checked exactly.
    pub fn with_bezout(a: u64, b: u64, m: i64, n: i64) -> Result<Self, Error> {
        let base = Weights::new(a, b)?;
        if m * a as i64 + n * b as i64 != base.d as i64 {
            return Err(Error::InvalidWeights(format!(
                "({m})*{a} + ({n})*{b} != gcd = {}",
                base.d
            )));
        }
        Ok(Weights { m, n, ..base })
    }

    /// The Bezout pair `(m - t*B, n + t*A)`.
    pub fn shifted_bezout(&self, t: i64) -> Weights {
        Weights {
            m: self.m - t * self.big_b() as i64,
            n: self.n + t * self.big_a() as i64,
            ..*self
        }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `gcd(a, b)`.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// `a / d`.
    pub fn big_a(&self) -> u64 {
        self.a / self.d
    }

    /// `b / d`.
    pub fn big_b(&self) -> u64 {
        self.b / self.d
    }

    pub fn lcm(&self) -> u64 {
        self.a / self.d * self.b
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// `d = a` or `d = b`: point sectors on that side are absent.
    pub fn is_degenerate(&self) -> bool {
        self.d == self.a || self.d == self.b
    }

    /// `(n - m) mod d`, the exponent of `zeta` in the second relation.
    pub fn zeta_shift(&self) -> u64 {
        (self.n - self.m).rem_euclid(self.d as i64) as u64
    }

    /// Degree of `O(1)` on `P(a,b)`: `1/(ab)`.
    pub fn degree_o1(&self) -> Rational {
        Rational::new(1, (self.a * self.b) as i64)
    }

    /// `n mod a` and `m mod b`: labels of the sectors carrying `x` and `y`.
    pub fn x_label(&self) -> u64 {
        self.n.rem_euclid(self.a as i64) as u64
    }

    pub fn y_label(&self) -> u64 {
        self.m.rem_euclid(self.b as i64) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_bezout_p46() {
        let w = Weights::new(4, 6).unwrap();
        assert_eq!((w.d(), w.big_a(), w.big_b(), w.lcm()), (2, 2, 3, 12));
        assert_eq!((w.m(), w.n()), (-1, 1));
        assert_eq!(w.zeta_shift(), 0);
        assert_eq!((w.x_label(), w.y_label()), (1, 5));
    }

    #[test]
    fn canonical_bezout_small_cases() {
        let w = Weights::new(1, 1).unwrap();
        assert_eq!((w.m(), w.n()), (0, 1));
        let w = Weights::new(6, 10).unwrap();
        assert_eq!((w.m(), w.n()), (-3, 2));
        for a in 1..=12 {
            for b in 1..=12 {
                let w = Weights::new(a, b).unwrap();
                assert_eq!(w.m() * a as i64 + w.n() * b as i64, w.d() as i64);
                assert!(w.n() > 0 && w.n() as u64 <= w.big_a());
            }
        }
    }

    #[test]
    fn explicit_bezout_is_checked() {
        assert!(Weights::with_bezout(4, 6, -4, 3).is_ok());
        assert!(Weights::with_bezout(4, 6, 1, 1).is_err());
        assert_eq!(Weights::new(4, 6).unwrap().shifted_bezout(1), Weights::with_bezout(4, 6, -4, 3).unwrap());
        assert!(Weights::new(0, 3).is_err());
    }
}
