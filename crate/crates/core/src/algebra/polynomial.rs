use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Grading, Monomial, Rational};
use crate::error::Error;

/// A finite `Q`-linear combination of monomials. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::monomial(Monomial::ONE, Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(t, k)| (t.mul(m), k * c)))
    }

    /// Exact product; no truncation in `q` is applied.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Drops every term with `q`-exponent above `n`.
    pub fn truncate_q(&self, n: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.e_q <= n)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `q^l`, as a polynomial in the remaining variables.
    pub fn q_coefficient(&self, l: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.e_q == l)
                .map(|(m, c)| (m.without_q(), c.clone()))
                .collect(),
        }
    }

    pub fn max_q_power(&self) -> u32 {
        self.terms.keys().map(|m| m.e_q).max().unwrap_or(0)
    }

    /// Common degree of all terms, if there is one. The zero polynomial is
    /// homogeneous of degree zero by convention.
    pub fn homogeneous_degree(&self, g: &Grading) -> Option<Rational> {
        let mut degrees = self.terms.keys().map(|m| g.degree(m));
        let first = match degrees.next() {
            Some(d) => d,
            None => return Some(Rational::zero()),
        };
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }
}

/// Product of two polynomials.
pub fn poly_mul(p: &Polynomial, r: &Polynomial) -> Polynomial {
    p.mul(r)
}

/// Common degree of `p` under `g`, or `None` for mixed degrees.
pub fn is_homogeneous(p: &Polynomial, g: &Grading) -> Option<Rational> {
    p.homogeneous_degree(g)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rational::from_integer(-1))
    }
}

// Text form: `c * zeta^i x^j y^k q^l` terms joined by ` + ` / ` - `. Terms are
// written from the highest storage key down, so output is deterministic.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag} * {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

fn parse_monomial(text: &str) -> Result<Monomial, Error> {
    let mut m = Monomial::ONE;
    for factor in text.split_whitespace() {
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e = e
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                (n, e)
            }
            None => (factor, 1),
        };
        match name {
            "zeta" => m.e_zeta += exp,
            "x" => m.e_x += exp,
            "y" => m.e_y += exp,
            "q" => m.e_q += exp,
            "1" => {}
            _ => return Err(Error::Parse(format!("unknown variable `{name}`"))),
        }
    }
    Ok(m)
}

fn parse_term(text: &str) -> Result<(Monomial, Rational), Error> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    if let Some((coeff, mono)) = text.split_once('*') {
        return Ok((parse_monomial(mono)?, coeff.trim().parse()?));
    }
    let starts_numeric = text.chars().next().is_some_and(|c| c.is_ascii_digit());
    if starts_numeric {
        // Either a bare constant or `c mono` without the star.
        let (coeff, rest) = text.split_at(text.find(char::is_whitespace).unwrap_or(text.len()));
        let c: Rational = coeff.parse()?;
        let m = parse_monomial(rest)?;
        Ok((m, c))
    } else {
        Ok((parse_monomial(text)?, Rational::one()))
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "0" {
            return Ok(Polynomial::zero());
        }
        let mut out = Polynomial::zero();
        let mut sign = Rational::one();
        let mut current = String::new();
        let mut flush = |current: &mut String, sign: &Rational| -> Result<(), Error> {
            if current.trim().is_empty() {
                return Ok(());
            }
            let (m, c) = parse_term(current)?;
            out.add_term(m, sign * c);
            current.clear();
            Ok(())
        };
        for ch in s.chars() {
            match ch {
                '+' | '-' => {
                    if current.trim().is_empty() && ch == '-' {
                        sign = -sign;
                        continue;
                    }
                    if current.trim().is_empty() {
                        continue;
                    }
                    flush(&mut current, &sign)?;
                    sign = if ch == '-' { Rational::from_integer(-1) } else { Rational::one() };
                }
                _ => current.push(ch),
            }
        }
        if current.trim().is_empty() {
            return Err(Error::Parse(format!("dangling operator in `{s}`")));
        }
        flush(&mut current, &sign)?;
        Ok(out)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn poly_mul_examples() {
        assert_eq!(poly_mul(&p("x"), &p("y")), p("x y"));
        assert_eq!(poly_mul(&p("x + y"), &p("x - y")), p("x^2 - y^2"));
        assert_eq!(poly_mul(&p("2 * x^2 - 3 * y^3"), &Polynomial::one()), p("2 * x^2 - 3 * y^3"));
    }

    #[test]
    fn product_keeps_high_q_terms() {
        let r = poly_mul(&p("q^4"), &p("q^5 + x"));
        assert_eq!(r.max_q_power(), 9);
        assert_eq!(r.truncate_q(6), p("x q^4"));
    }

    #[test]
    fn homogeneity_examples() {
        let g = Grading::new(
            Rational::zero(),
            Rational::new(1, 2),
            Rational::new(1, 3),
            Rational::new(5, 6),
        );
        assert_eq!(is_homogeneous(&p("x y - q"), &g), Some(Rational::new(5, 6)));
        assert_eq!(is_homogeneous(&p("zeta^2 - 1"), &g), Some(Rational::zero()));
        assert_eq!(is_homogeneous(&p("x + y"), &g), None);
    }

    #[test]
    fn text_grammar() {
        let q = p("1/2 * zeta x^2 - 3 * y^3 q + 7");
        assert_eq!(q.coefficient(&Monomial::new(1, 2, 0, 0)), Rational::new(1, 2));
        assert_eq!(q.coefficient(&Monomial::new(0, 0, 3, 1)), Rational::from_integer(-3));
        assert_eq!(q.coefficient(&Monomial::ONE), Rational::from_integer(7));
        assert_eq!(p(&q.to_string()), q);
        assert_eq!(p("-x").to_string(), "-1 * x");
        assert_eq!(p("x - x"), Polynomial::zero());
        assert!("x +".parse::<Polynomial>().is_err());
        assert!("w^2".parse::<Polynomial>().is_err());
    }
}
