use serde::Serialize;

use super::key::{CorrelatorKey, Insertion};
use super::table::CorrelatorTable;
use super::theory::Theory;
use crate::algebra::Rational;
use crate::error::Error;
use crate::orbifold::BasisClass;

struct Lookup<'a> {
    theory: &'a Theory,
    table: &'a CorrelatorTable,
    missing: Vec<String>,
}

impl Lookup<'_> {
    /// Stored value, or zero when the degree axiom forces it.
    fn get(&mut self, beta: u64, insertions: Vec<Insertion>) -> Rational {
        let key = match CorrelatorKey::new(beta, insertions) {
            Ok(k) => k,
            Err(_) => return Rational::zero(),
        };
        if let Some(v) = self.table.value(&key) {
            return v.clone();
        }
        if self.theory.vanishes_by_dimension(&key) {
            return Rational::zero();
        }
        self.missing.push(key.to_string());
        Rational::zero()
    }
}

/// `sum <g1, g2, S1, T_e>_{b1} g^{ef} <T_f, g3, g4, S2>_{b2}` over
/// `b1 + b2 = beta` and splittings of `extras`.
fn side(
    lookup: &mut Lookup<'_>,
    pair_a: [&BasisClass; 2],
    pair_b: [&BasisClass; 2],
    extras: &[Insertion],
    beta: u64,
) -> Rational {
    let theory = lookup.theory;
    let classes = theory.classes();
    let n = classes.len();
    let mut total = Rational::zero();
    for beta1 in 0..=beta {
        for mask in 0u64..(1 << extras.len()) {
            let (s1, s2): (Vec<_>, Vec<_>) =
                extras.iter().enumerate().partition(|(i, _)| mask & (1 << i) != 0);
            for e in 0..n {
                for f in 0..n {
                    let g = &theory.pairing.inverse[e][f];
                    if g.is_zero() {
                        continue;
                    }
                    let mut left: Vec<Insertion> = pair_a.iter().map(|c| Insertion::primary((*c).clone())).collect();
                    left.extend(s1.iter().map(|(_, i)| (*i).clone()));
                    left.push(Insertion::primary(classes[e].clone()));
                    let l = lookup.get(beta1, left);
                    if l.is_zero() {
                        continue;
                    }
                    let mut right: Vec<Insertion> = pair_b.iter().map(|c| Insertion::primary((*c).clone())).collect();
                    right.extend(s2.iter().map(|(_, i)| (*i).clone()));
                    right.push(Insertion::primary(classes[f].clone()));
                    let r = lookup.get(beta - beta1, right);
                    total += &(&l * g) * &r;
                }
            }
        }
    }
    total
}

/// WDVV in classical form for `four = (g1, g2, g3, g4)`:
/// the `(12|34)` splitting sum minus the `(13|24)` one. All classes are even,
/// so no signs appear. Missing sub-invariants are listed in the error;
/// those forced to vanish by the degree axiom count as zero.
pub fn wdvv_residual(
    theory: &Theory,
    table: &CorrelatorTable,
    four: [&BasisClass; 4],
    extras: &[Insertion],
    beta: u64,
) -> Result<Rational, Error> {
    let mut lookup = Lookup { theory, table, missing: Vec::new() };
    let lhs = side(&mut lookup, [four[0], four[1]], [four[2], four[3]], extras, beta);
    let rhs = side(&mut lookup, [four[0], four[2]], [four[1], four[3]], extras, beta);
    if !lookup.missing.is_empty() {
        lookup.missing.sort();
        lookup.missing.dedup();
        return Err(Error::MissingEntries(lookup.missing));
    }
    Ok(lhs - rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WdvvCase {
    pub four: [String; 4],
    pub extras: Vec<String>,
    pub beta: u64,
    pub residual: Rational,
}

fn multisets(n: usize, size: usize, start: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == size {
        out.push(prefix.clone());
        return;
    }
    for i in start..n {
        prefix.push(i);
        multisets(n, size, i, prefix, out);
        prefix.pop();
    }
}

/// Index multisets of `0..n` of every size up to `max_size`.
pub(crate) fn all_multisets(n: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 0..=max_size {
        multisets(n, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Residuals for every ordered quadruple of basis classes, primary extras up
/// to `max_points - 4` of them and `beta <= max_beta`.
pub fn wdvv_sweep(
    theory: &Theory,
    table: &CorrelatorTable,
    max_beta: u64,
    max_points: usize,
) -> Result<Vec<WdvvCase>, Error> {
    let classes = theory.classes();
    let n = classes.len();
    let extras_sets = all_multisets(n, max_points.saturating_sub(4));
    let mut out = Vec::new();
    for q in 0..n.pow(4) {
        let idx = [q % n, (q / n) % n, (q / n / n) % n, q / n / n / n];
        let four = idx.map(|i| &classes[i]);
        for extras in &extras_sets {
            let ins: Vec<Insertion> = extras.iter().map(|&i| Insertion::primary(classes[i].clone())).collect();
            for beta in 0..=max_beta {
                let residual = wdvv_residual(theory, table, four, &ins, beta)?;
                out.push(WdvvCase {
                    four: four.map(|c| c.to_string()),
                    extras: ins.iter().map(|i| i.to_string()).collect(),
                    beta,
                    residual,
                });
            }
        }
    }
    Ok(out)
}
