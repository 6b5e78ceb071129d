use super::key::{CorrelatorKey, Insertion};
use crate::algebra::Rational;
use crate::error::Error;
use crate::orbifold::{BasisClass, ClassKind, Sector, Weights};
use crate::quantum_ring::{monomial_sector, pairing_matrix, structure_constants, PairingMatrix, StructureConstants};

/// The small quantum ring of `P(a,b)` with its pairing, indexed by basis class.
#[derive(Clone, Debug)]
pub struct Theory {
    pub ring: StructureConstants,
    pub pairing: PairingMatrix,
    classes: Vec<BasisClass>,
}

impl Theory {
    pub fn new(ring: StructureConstants) -> Result<Self, Error> {
        let pairing = pairing_matrix(&ring)?;
        let grading = &ring.presentation.grading;
        let classes = ring
            .basis
            .iter()
            .map(|m| {
                let (sector, kind) = monomial_sector(ring.weights(), m)?;
                Ok(BasisClass { sector, kind, degree: grading.degree(m) })
            })
            .collect::<Result<_, Error>>()?;
        Ok(Theory { ring, pairing, classes })
    }

    pub fn for_weights(w: &Weights, truncation: u32) -> Result<Self, Error> {
        Self::new(structure_constants(w, truncation)?)
    }

    pub fn weights(&self) -> &Weights {
        self.ring.weights()
    }

    /// Basis classes in ring-basis order.
    pub fn classes(&self) -> &[BasisClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &BasisClass {
        &self.classes[i]
    }

    pub fn index_of(&self, c: &BasisClass) -> Option<usize> {
        self.classes.iter().position(|k| k == c)
    }

    /// Looks a class up by sector and kind.
    pub fn find(&self, sector: Sector, kind: ClassKind) -> Result<&BasisClass, Error> {
        self.classes
            .iter()
            .find(|c| c.sector == sector && c.kind == kind)
            .ok_or_else(|| Error::InvalidSector(format!("no {kind:?} class on {sector}")))
    }

    pub fn unit(&self) -> &BasisClass {
        &self.classes[self.ring.identity_index()]
    }

    /// Point class of the untwisted sector; the coarse hyperplane is `A` times it.
    pub fn point(&self) -> &BasisClass {
        self.find(Sector::OneDim { label: 0 }, ClassKind::Point)
            .expect("the untwisted sector always has a point class")
    }

    fn index(&self, c: &BasisClass) -> Result<usize, Error> {
        self.index_of(c).ok_or_else(|| Error::InvalidSector(format!("{c} is not a basis class")))
    }

    /// `integral over beta of [pt]`, with `beta` in units of the generator.
    pub fn point_integral(&self, beta: u64) -> Rational {
        Rational::new(beta as i64, self.weights().big_a() as i64)
    }

    /// `c_1(T) . beta = beta (1/A + 1/B)`.
    pub fn chern_degree(&self, beta: u64) -> Rational {
        let w = self.weights();
        Rational::new((beta * (w.big_a() + w.big_b())) as i64, (w.big_a() * w.big_b()) as i64)
    }

    pub fn virtual_dimension(&self, beta: u64, n: usize) -> Rational {
        self.chern_degree(beta) + Rational::from_integer(n as i64 - 2)
    }

    pub fn insertion_degree(&self, key: &CorrelatorKey) -> Rational {
        key.insertions()
            .iter()
            .map(|i| &i.class.degree + Rational::from_integer(i.descendant_power as i64))
            .sum()
    }

    /// Zero for degree reasons.
    pub fn vanishes_by_dimension(&self, key: &CorrelatorKey) -> bool {
        self.insertion_degree(key) != self.virtual_dimension(key.beta(), key.len())
    }

    /// `q^0` part of `a * b` as a combination of basis classes.
    pub fn classical_product(&self, a: &BasisClass, b: &BasisClass) -> Result<Vec<(BasisClass, Rational)>, Error> {
        let p = self.ring.product(self.index(a)?, self.index(b)?).q_coefficient(0);
        Ok(self
            .ring
            .coordinates(&p)?
            .into_iter()
            .map(|(k, _, c)| (self.classes[k].clone(), c))
            .collect())
    }

    /// `<a, b, c>_beta` from the structure constants and the pairing.
    pub fn ring_three_point(&self, key: &CorrelatorKey) -> Result<Rational, Error> {
        let ins = key.insertions();
        if ins.len() != 3 || !key.is_descendant_free() {
            return Err(Error::Invalid(format!("{key} is not a primary three-point correlator")));
        }
        if key.beta() > self.ring.truncation as u64 {
            return Err(Error::MissingEntries(vec![key.to_string()]));
        }
        let (i, j, k) = (self.index(&ins[0].class)?, self.index(&ins[1].class)?, self.index(&ins[2].class)?);
        let beta = key.beta() as usize;
        Ok((0..self.classes.len())
            .map(|l| &self.ring.c(i, j, l)[beta] * self.pairing.get(l, k))
            .sum())
    }

    /// Parses `1@sector` or `pt@sector`, e.g. `1@point0:1`, `pt@one_dim:0`.
    pub fn parse_class(&self, s: &str) -> Result<&BasisClass, Error> {
        let (kind, sector) = s
            .trim()
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("class `{s}` needs the form 1@sector or pt@sector")))?;
        let kind = match kind {
            "1" => ClassKind::Fundamental,
            "pt" => ClassKind::Point,
            other => return Err(Error::Parse(format!("unknown class kind `{other}`"))),
        };
        self.find(sector.parse()?, kind)
    }

    /// Parses a class, optionally wrapped as `tauK(class)`.
    pub fn parse_insertion(&self, s: &str) -> Result<Insertion, Error> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("tau") {
            let (power, inner) = rest
                .strip_suffix(')')
                .and_then(|r| r.split_once('('))
                .ok_or_else(|| Error::Parse(format!("bad descendant insertion `{s}`")))?;
            let power: u32 = power.parse().map_err(|_| Error::Parse(format!("bad descendant power in `{s}`")))?;
            return Ok(Insertion::descendant(self.parse_class(inner)?.clone(), power));
        }
        Ok(Insertion::primary(self.parse_class(s)?.clone()))
    }

    /// `g^{ij}` between two basis classes.
    pub fn inverse_pairing(&self, a: &BasisClass, b: &BasisClass) -> Result<&Rational, Error> {
        Ok(&self.pairing.inverse[self.index(a)?][self.index(b)?])
    }
}
