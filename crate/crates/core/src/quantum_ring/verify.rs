use std::collections::BTreeSet;

use serde::Serialize;

use super::pairing::{pairing_matrix, PairingMatrix};
use super::presentation::RingPresentation;
use super::structure::{monomial_sector, StructureConstants};
use crate::algebra::{confluence_smoke_check, Monomial, Polynomial, Rational};
use crate::error::Error;
use crate::orbifold::{age, involution_sector, stringy_basis, Weights};

const MAX_LISTED: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Offending triples or entries, capped at a few.
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>) -> Self {
        Check { name, passed: failures.is_empty(), failures: failures.into_iter().take(MAX_LISTED).collect() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RingReport {
    pub a: u64,
    pub b: u64,
    pub truncation: u32,
    pub seed: u64,
    pub rank: usize,
    pub degenerate_weights: bool,
    pub checks: Vec<Check>,
}

impl RingReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn basis_poly(m: &Monomial) -> Polynomial {
    Polynomial::monomial(*m, Rational::one())
}

fn associativity(sc: &StructureConstants) -> Vec<String> {
    let n = sc.rank();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ij = sc.product(i, j);
            for k in 0..n {
                let left = sc.multiply(ij, &basis_poly(&sc.basis[k]));
                let right = sc.multiply(&basis_poly(&sc.basis[i]), sc.product(j, k));
                let residual = &left - &right;
                if !residual.is_zero() {
                    bad.push(format!("({},{},{}): residual {residual}", sc.basis[i], sc.basis[j], sc.basis[k]));
                }
            }
        }
    }
    bad
}

fn commutativity(sc: &StructureConstants) -> Vec<String> {
    let n = sc.rank();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if sc.product(i, j) != sc.product(j, i) {
                bad.push(format!("({},{})", sc.basis[i], sc.basis[j]));
            }
        }
    }
    bad
}

fn identity(sc: &StructureConstants) -> Vec<String> {
    let one = sc.identity_index();
    (0..sc.rank())
        .filter(|&j| sc.product(one, j) != &basis_poly(&sc.basis[j]))
        .map(|j| format!("1 * {} = {}", sc.basis[j], sc.product(one, j)))
        .collect()
}

fn grading(sc: &StructureConstants) -> Vec<String> {
    let g = &sc.presentation.grading;
    let mut bad: Vec<String> = sc
        .presentation
        .relations
        .iter()
        .filter(|r| r.homogeneous_degree(g).is_none())
        .map(|r| format!("relation {r} is not homogeneous"))
        .collect();
    let n = sc.rank();
    for i in 0..n {
        for j in 0..n {
            let expected = g.degree(&sc.basis[i]) + g.degree(&sc.basis[j]);
            for (m, _) in sc.product(i, j).terms() {
                if g.degree(m) != expected {
                    bad.push(format!("{} * {} has term {m} of the wrong degree", sc.basis[i], sc.basis[j]));
                }
            }
        }
    }
    bad
}

fn frobenius(sc: &StructureConstants, g: &PairingMatrix) -> Vec<String> {
    let n = sc.rank();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = g.pair_series(sc, sc.product(i, j), k);
                let right = g.pair_series(sc, sc.product(j, k), i);
                if left != right {
                    bad.push(format!("({},{},{})", sc.basis[i], sc.basis[j], sc.basis[k]));
                }
            }
        }
    }
    bad
}

fn pairing_structure(sc: &StructureConstants, g: &PairingMatrix) -> Vec<String> {
    let w = sc.weights();
    let grading = &sc.presentation.grading;
    let n = sc.rank();
    let mut bad = Vec::new();
    if !g.is_symmetric() {
        bad.push("pairing is not symmetric".to_string());
    }
    for i in 0..n {
        for j in 0..n {
            if g.get(i, j).is_zero() {
                continue;
            }
            let (si, _) = monomial_sector(w, &sc.basis[i]).expect("basis monomials are normal");
            let (sj, _) = monomial_sector(w, &sc.basis[j]).expect("basis monomials are normal");
            let degree_sum = grading.degree(&sc.basis[i]) + grading.degree(&sc.basis[j]);
            if sj != involution_sector(w, &si) || degree_sum != Rational::one() {
                bad.push(format!("g({},{}) = {} off the involution blocks", sc.basis[i], sc.basis[j], g.get(i, j)));
            }
        }
    }
    bad
}

fn classical_limit(sc: &StructureConstants) -> Result<Vec<String>, Error> {
    let classical = RingPresentation::with_zeta_shift(sc.weights(), sc.presentation.zeta_shift, false);
    let rs = classical.rewrite_system(sc.truncation)?;
    let n = sc.rank();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let direct = rs.normal_form(&basis_poly(&sc.basis[i].mul(&sc.basis[j])));
            if direct != sc.product(i, j).q_coefficient(0) {
                bad.push(format!("{} * {}", sc.basis[i], sc.basis[j]));
            }
        }
    }
    Ok(bad)
}

/// Basis monomials against the stringy basis: a bijection preserving degree.
fn basis_sectors(sc: &StructureConstants) -> Vec<String> {
    let w = sc.weights();
    let grading = &sc.presentation.grading;
    let expected: BTreeSet<_> = stringy_basis(w).into_iter().map(|c| (c.sector, c.kind, c.degree)).collect();
    let mut seen = BTreeSet::new();
    let mut bad = Vec::new();
    for m in &sc.basis {
        match monomial_sector(w, m) {
            Ok((sector, kind)) => {
                let deg = grading.degree(m);
                let key = (sector, kind, deg.clone());
                if !expected.contains(&key) {
                    bad.push(format!("{m} -> {sector} of degree {deg} (age {})", age(w, &sector)));
                }
                if !seen.insert(key) {
                    bad.push(format!("{m} duplicates a class"));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    if seen.len() != expected.len() {
        bad.push(format!("{} classes covered out of {}", seen.len(), expected.len()));
    }
    bad
}

fn sector_consistency(sc: &StructureConstants) -> Vec<String> {
    let pr = &sc.presentation;
    let mut bad: Vec<String> = pr
        .sector_inconsistent_relations()
        .into_iter()
        .map(|r| format!("relation {r} mixes sectors"))
        .collect();
    let w = sc.weights();
    for m in &sc.basis {
        if let Ok((sector, _)) = monomial_sector(w, m) {
            if pr.twist(m) != sector.twist(w) {
                bad.push(format!("{m} has twist {} but sits in {sector}", pr.twist(m)));
            }
        }
    }
    bad
}

/// Default seed for the randomized part of the confluence check.
pub const VERIFY_SEED: u64 = 11;
const VERIFY_SAMPLES: u32 = 32;

/// Runs every ring check on an existing table.
pub fn verify_structure(sc: &StructureConstants) -> Result<RingReport, Error> {
    verify_structure_seeded(sc, VERIFY_SEED)
}

pub fn verify_structure_seeded(sc: &StructureConstants, seed: u64) -> Result<RingReport, Error> {
    let w = *sc.weights();
    let mut checks = Vec::new();
    let rs = sc.rewrite_system();
    let confluence_failures = if confluence_smoke_check(rs, VERIFY_SAMPLES, seed) {
        vec![]
    } else {
        vec!["critical pair or random reduction mismatch".to_string()]
    };
    checks.push(Check::new("confluence", confluence_failures));
    checks.push(Check::new("associativity", associativity(sc)));
    checks.push(Check::new("commutativity", commutativity(sc)));
    checks.push(Check::new("identity", identity(sc)));
    let rank = sc.rank();
    let rank_failures = if rank as u64 == w.a() + w.b() {
        vec![]
    } else {
        vec![format!("rank {rank} != a + b = {}", w.a() + w.b())]
    };
    checks.push(Check::new("rank", rank_failures));
    checks.push(Check::new("grading", grading(sc)));
    checks.push(Check::new("basis_sectors", basis_sectors(sc)));
    checks.push(Check::new("sector_consistency", sector_consistency(sc)));
    match pairing_matrix(sc) {
        Ok(g) => {
            checks.push(Check::new("pairing", pairing_structure(sc, &g)));
            checks.push(Check::new("frobenius", frobenius(sc, &g)));
        }
        Err(e) => {
            checks.push(Check::new("pairing", vec![e.to_string()]));
            checks.push(Check::new("frobenius", vec!["no pairing".to_string()]));
        }
    }
    checks.push(Check::new("classical_limit", classical_limit(sc)?));
    Ok(RingReport {
        a: w.a(),
        b: w.b(),
        truncation: sc.truncation,
        seed,
        rank,
        degenerate_weights: w.is_degenerate(),
        checks,
    })
}

/// Builds the quantum ring of `P(a,b)` and runs every check.
pub fn verify_ring(w: &Weights, truncation: u32) -> Result<RingReport, Error> {
    let sc = super::structure_constants(w, truncation)?;
    verify_structure(&sc)
}

/// `zeta -> zeta^u`, `x -> zeta^s x`, `y -> zeta^{-s} y` on normal monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaRelabeling {
    pub u: u64,
    pub s: u64,
}

impl ZetaRelabeling {
    pub fn apply(&self, m: &Monomial, d: u64) -> Monomial {
        let d = d as i64;
        let e = self.u as i64 * m.e_zeta as i64 + self.s as i64 * (m.e_x as i64 - m.e_y as i64);
        Monomial { e_zeta: e.rem_euclid(d) as u32, ..*m }
    }

    pub fn apply_poly(&self, p: &Polynomial, d: u64) -> Polynomial {
        p.map_monomials(|m| self.apply(m, d))
    }
}

/// Searches for a relabeling carrying the table of `first` onto `second`
/// and each basis monomial to one carrying the same class.
pub fn find_zeta_relabeling(first: &StructureConstants, second: &StructureConstants) -> Option<ZetaRelabeling> {
    let w = first.weights();
    let d = w.d();
    if second.weights().a() != w.a() || second.weights().b() != w.b() || first.rank() != second.rank() {
        return None;
    }
    let units = (1..=d).filter(|&u| num_integer::gcd(u % d, d) == 1 || d == 1);
    for u in units {
        for s in 0..d {
            let phi = ZetaRelabeling { u, s };
            let images: Option<Vec<usize>> = first.basis.iter().map(|m| second.index_of(&phi.apply(m, d))).collect();
            let Some(images) = images else { continue };
            let same_class = first.basis.iter().zip(&images).all(|(m, &k)| {
                monomial_sector(w, m).ok() == monomial_sector(second.weights(), &second.basis[k]).ok()
            });
            if !same_class {
                continue;
            }
            let distinct: BTreeSet<_> = images.iter().collect();
            if distinct.len() != images.len() {
                continue;
            }
            let n = first.rank();
            let preserved = (0..n).all(|i| {
                (0..n).all(|j| second.product(images[i], images[j]) == &phi.apply_poly(first.product(i, j), d))
            });
            if preserved {
                return Some(phi);
            }
        }
    }
    None
}
