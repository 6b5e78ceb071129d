use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::Weights;
use crate::algebra::Rational;
use crate::error::Error;

/// A connected component of the cyclotomic inertia stack of `P(a,b)`,
/// named by its label.
///
/// `OneDim { label: j }` is the copy of `P(a,b)` for `j` in `Z/d`;
/// `Point0 { label: k }` lies over `0` for `k` in `Z/a` with `a/d` not
/// dividing `k`; `PointInf` is the analogue over infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Sector {
    OneDim { label: u64 },
    Point0 { label: u64 },
    PointInf { label: u64 },
}

impl Sector {
    pub fn label(&self) -> u64 {
        match *self {
            Sector::OneDim { label } | Sector::Point0 { label } | Sector::PointInf { label } => label,
        }
    }

    pub fn dimension(&self) -> u32 {
        match self {
            Sector::OneDim { .. } => 1,
            _ => 0,
        }
    }

    pub fn is_untwisted(&self) -> bool {
        *self == Sector::OneDim { label: 0 }
    }

    pub fn validate(&self, w: &Weights) -> Result<(), Error> {
        let ok = match *self {
            Sector::OneDim { label } => label < w.d(),
            Sector::Point0 { label } => label < w.a() && label % w.big_a() != 0,
            Sector::PointInf { label } => label < w.b() && label % w.big_b() != 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSector(format!("{self} for P({},{})", w.a(), w.b())))
        }
    }

    /// The twist `lambda` in `[0,1)`: `j/d`, `k/a` or `k/b`.
    pub fn twist(&self, w: &Weights) -> Rational {
        match *self {
            Sector::OneDim { label } => Rational::new(label as i64, w.d() as i64),
            Sector::Point0 { label } => Rational::new(label as i64, w.a() as i64),
            Sector::PointInf { label } => Rational::new(label as i64, w.b() as i64),
        }
    }

    /// Order of the labelling element, i.e. the `r` with the component in `I_{mu_r}`.
    pub fn band_order(&self, w: &Weights) -> u64 {
        let order = |k: u64, modulus: u64| modulus / k.gcd(&modulus);
        match *self {
            Sector::OneDim { label } => order(label, w.d()),
            Sector::Point0 { label } => order(label, w.a()),
            Sector::PointInf { label } => order(label, w.b()),
        }
    }

    /// Order of the generic stabilizer of the component.
    pub fn generic_stabilizer(&self, w: &Weights) -> u64 {
        match self {
            Sector::OneDim { .. } => w.d(),
            Sector::Point0 { .. } => w.a(),
            Sector::PointInf { .. } => w.b(),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::OneDim { label } => write!(f, "one_dim:{label}"),
            Sector::Point0 { label } => write!(f, "point0:{label}"),
            Sector::PointInf { label } => write!(f, "point_inf:{label}"),
        }
    }
}

impl std::str::FromStr for Sector {
    type Err = Error;

    /// Accepts `one_dim:j`, `point0:k`, `point_inf:k` (also `one:`, `p0:`, `pinf:`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let (kind, label) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("sector `{s}` needs the form kind:label")))?;
        let label: u64 = label
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad sector label in `{s}`")))?;
        match kind.trim() {
            "one_dim" | "one" => Ok(Sector::OneDim { label }),
            "point0" | "p0" => Ok(Sector::Point0 { label }),
            "point_inf" | "pinf" => Ok(Sector::PointInf { label }),
            other => Err(Error::Parse(format!("unknown sector kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InertiaComponent {
    pub sector: Sector,
    #[serde(rename = "dim")]
    pub dimension: u32,
    #[serde(rename = "r")]
    pub band_order: u64,
    pub generic_stabilizer: u64,
    pub age: Rational,
}

/// Age of a sector from the tangent character `T P(a,b) = O(a+b)`.
///
/// Over `0` the label `k` acts on the fiber of `O(1)` by `k/a`, hence on the
/// tangent line by `k(a+b)/a = kb/a` modulo one. One-dimensional sectors act
/// trivially because `d` divides `a+b`.
pub fn age(w: &Weights, s: &Sector) -> Rational {
    match *s {
        Sector::OneDim { .. } => Rational::zero(),
        Sector::Point0 { label } => Rational::new((label * w.b()) as i64, w.a() as i64).fract_part(),
        Sector::PointInf { label } => Rational::new((label * w.a()) as i64, w.b() as i64).fract_part(),
    }
}

/// Band inversion: negates the label.
pub fn involution_sector(w: &Weights, s: &Sector) -> Sector {
    let neg = |k: u64, modulus: u64| (modulus - k % modulus) % modulus;
    match *s {
        Sector::OneDim { label } => Sector::OneDim { label: neg(label, w.d()) },
        Sector::Point0 { label } => Sector::Point0 { label: neg(label, w.a()) },
        Sector::PointInf { label } => Sector::PointInf { label: neg(label, w.b()) },
    }
}

pub fn all_sectors(w: &Weights) -> Vec<Sector> {
    let one_dim = (0..w.d()).map(|label| Sector::OneDim { label });
    let over_zero = (0..w.a())
        .filter(|k| k % w.big_a() != 0)
        .map(|label| Sector::Point0 { label });
    let over_inf = (0..w.b())
        .filter(|k| k % w.big_b() != 0)
        .map(|label| Sector::PointInf { label });
    one_dim.chain(over_zero).chain(over_inf).collect()
}

/// All components: `d` one-dimensional, `a-d` over `0`, `b-d` over infinity.
pub fn census(w: &Weights) -> Vec<InertiaComponent> {
    all_sectors(w)
        .into_iter()
        .map(|sector| InertiaComponent {
            sector,
            dimension: sector.dimension(),
            band_order: sector.band_order(w),
            generic_stabilizer: sector.generic_stabilizer(w),
            age: age(w, &sector),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Fundamental,
    Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisClass {
    pub sector: Sector,
    pub kind: ClassKind,
    pub degree: Rational,
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ClassKind::Fundamental => "1",
            ClassKind::Point => "pt",
        };
        write!(f, "{kind}@{}", self.sector)
    }
}

/// Fundamental classes of every component plus point classes of the
/// one-dimensional ones; `a + b` classes in all.
pub fn stringy_basis(w: &Weights) -> Vec<BasisClass> {
    let mut out = Vec::with_capacity((w.a() + w.b()) as usize);
    for sector in all_sectors(w) {
        out.push(BasisClass { sector, kind: ClassKind::Fundamental, degree: age(w, &sector) });
        if sector.dimension() == 1 {
            out.push(BasisClass { sector, kind: ClassKind::Point, degree: Rational::one() });
        }
    }
    out
}

/// True iff `value * lcm(a,b)` is an integer.
pub fn denominator_bound_check(value: &Rational, w: &Weights) -> bool {
    (value * Rational::from_integer(w.lcm() as i64)).is_integer()
}
