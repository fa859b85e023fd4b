//! Built-in consistency checks: Clifford periodicity, the group law on
//! random Clifford pairs, the Q₂ values of small Clifford algebras and the
//! golden tables of the formula engine.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{GradedAlgebra, TensorSign};
use crate::clifford::{clifford, DiagonalForm};
use crate::error::Result;
use crate::invariants::{bw_class, invariant_triple, q2_class, Triple};
use crate::space::{golden_table, GOLDEN_TABLES};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: bool,
    pub items: Vec<CheckItem>,
}

fn item(name: impl Into<String>, outcome: Result<std::result::Result<String, String>>) -> CheckItem {
    let (passed, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckItem { name: name.into(), passed, detail }
}

fn cl(p: usize, q: usize) -> Result<GradedAlgebra<Rational>> {
    clifford(&DiagonalForm::standard(p, q))
}

/// `(p - q) mod 8` to the `((p, q), triple)` cells with that residue.
pub type PeriodicityGrid = BTreeMap<usize, Vec<((usize, usize), Triple)>>;

/// Triples of `Cl(p, q)` for `p + q ≤ max_total`, grouped by `(p - q) mod 8`.
pub fn periodicity_grid(max_total: usize) -> Result<PeriodicityGrid> {
    let mut grid: BTreeMap<usize, Vec<_>> = BTreeMap::new();
    for total in 0..=max_total {
        for p in 0..=total {
            let q = total - p;
            let t = invariant_triple(&cl(p, q)?)?;
            grid.entry((p as i64 - q as i64).rem_euclid(8) as usize).or_default().push(((p, q), t));
        }
    }
    Ok(grid)
}

/// Checks that each class of `(p - q) mod 8` has one triple and the eight
/// triples are distinct.
pub fn check_periodicity(max_total: usize) -> Result<std::result::Result<String, String>> {
    let grid = periodicity_grid(max_total)?;
    let mut reps = Vec::new();
    for (k, cells) in &grid {
        let ((p0, q0), t0) = cells[0];
        if let Some(((p, q), t)) = cells.iter().find(|(_, t)| *t != t0) {
            return Ok(Err(format!("k={k}: Cl({p0},{q0}) has {t0:?} but Cl({p},{q}) has {t:?}")));
        }
        reps.push((*k, t0));
    }
    if reps.len() != 8 {
        return Ok(Err(format!("only {} residues reached", reps.len())));
    }
    for (i, (k, t)) in reps.iter().enumerate() {
        if let Some((j, _)) = reps[..i].iter().find(|(_, u)| u == t) {
            return Ok(Err(format!("k={j} and k={k} share {t:?}")));
        }
    }
    let cells: usize = grid.values().map(Vec::len).sum();
    Ok(Ok(format!("{cells} algebras, 8 distinct classes")))
}

/// `Cl(8, 0)` must have the triple of the trivial class.
pub fn check_cl80() -> Result<std::result::Result<String, String>> {
    let t = invariant_triple(&cl(8, 0)?)?;
    let trivial = Triple { parity: 0, q2: 0, ungraded: 0 };
    Ok(if t == trivial { Ok("Cl(8,0) is trivial".into()) } else { Err(format!("Cl(8,0) has {t:?}")) })
}

const ENTRIES: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (-3, 1), (1, 2), (-5, 3)];

/// A random nonzero diagonal form of the given length.
pub fn random_form<R: Rng>(rng: &mut R, len: usize) -> DiagonalForm<Rational> {
    let entries = (0..len)
        .map(|_| {
            let (n, d) = ENTRIES[rng.gen_range(0..ENTRIES.len())];
            Rational::new(n.into(), d.into())
        })
        .collect();
    DiagonalForm::new(entries).expect("entries are nonzero")
}

/// Lengths `(n1, n2)` of a random pair with `n1 + n2 ≤ 6`, so the product
/// has dimension at most 64.
pub fn random_pair<R: Rng>(rng: &mut R) -> (DiagonalForm<Rational>, DiagonalForm<Rational>) {
    let total = rng.gen_range(0..=6usize);
    let n1 = rng.gen_range(0..=total);
    (random_form(rng, n1), random_form(rng, total - n1))
}

/// Compares `bw(A ⊗ B)` with `bw(A) + bw(B)` on `count` seeded pairs, using
/// the given sign rule for the product.
pub fn check_additivity(seed: u64, count: usize, rule: TensorSign) -> Result<std::result::Result<String, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..count {
        let (f, g) = random_pair(&mut rng);
        let (a, b) = (clifford(&f)?, clifford(&g)?);
        let (x, y) = (bw_class(&a)?.value, bw_class(&b)?.value);
        let describe = || format!("pair {n}: {:?} and {:?}", f.entries(), g.entries());
        match bw_class(&a.tensor_with(&b, rule)) {
            Ok(c) if c.value == (x + y) % 8 => {}
            Ok(c) => return Ok(Err(format!("{}: {x} + {y} != {}", describe(), c.value))),
            Err(e) => return Ok(Err(format!("{}: product has no class ({e})", describe()))),
        }
    }
    Ok(Ok(format!("{count} pairs")))
}

/// `Ẑ` of `C⟨1⟩`, `C⟨1⟩ ⊗ C⟨1⟩` and `C⟨1⟩ ⊗ C⟨-1⟩` has classes 1, 2, 0.
pub fn check_q2_table() -> Result<std::result::Result<String, String>> {
    let one = clifford(&DiagonalForm::<Rational>::from_ints(&[1])?)?;
    let minus = clifford(&DiagonalForm::<Rational>::from_ints(&[-1])?)?;
    let cases = [one.clone(), one.graded_tensor(&one), one.graded_tensor(&minus)];
    let mut got = Vec::new();
    for a in &cases {
        got.push(q2_class(&a.hat_center()?.algebra)?.value);
    }
    Ok(if got == [1, 2, 0] { Ok("1, 2, 0".into()) } else { Err(format!("got {got:?}")) })
}

fn check_golden(name: &str) -> Result<std::result::Result<String, String>> {
    let rows = golden_table(name)?;
    let mut problems = Vec::new();
    for row in &rows {
        problems.extend(row.mismatches().into_iter().map(|m| format!("{}: {m}", row.name)));
        if row.report.orders_consistent() == Some(false) {
            problems.push(format!("{}: |GBR| != |RBr| |Q2|", row.name));
        }
    }
    Ok(if problems.is_empty() { Ok(format!("{} rows", rows.len())) } else { Err(problems.join("; ")) })
}

/// Runs every check with the graded sign rule.
pub fn run(seed: u64) -> SelftestReport {
    run_with(seed, TensorSign::Koszul)
}

/// Runs every check, multiplying random pairs with `rule`.
pub fn run_with(seed: u64, rule: TensorSign) -> SelftestReport {
    let mut items = vec![
        item("periodicity p+q<=6", check_periodicity(6)),
        item("Cl(8,0) trivial", check_cl80()),
        item("group law on random Clifford pairs", check_additivity(seed, 24, rule)),
        item("Q2 of C<1>, C<1>C<1>, C<1>C<-1>", check_q2_table()),
    ];
    for name in GOLDEN_TABLES {
        items.push(item(format!("golden table {name}"), check_golden(name)));
    }
    let passed = items.iter().all(|i| i.passed);
    SelftestReport { seed, passed, items }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_checks_pass() {
        assert_eq!(check_q2_table().unwrap(), Ok("1, 2, 0".into()));
        assert!(check_periodicity(3).unwrap().is_err(), "p+q<=3 does not reach all residues");
        assert!(check_additivity(7, 5, TensorSign::Koszul).unwrap().is_ok());
        for name in GOLDEN_TABLES {
            assert!(check_golden(name).unwrap().is_ok(), "{name}");
        }
    }

    #[test]
    fn plain_product_breaks_the_group_law() {
        assert!(check_additivity(0, 24, TensorSign::Plain).unwrap().is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..5).map(|_| random_pair(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(3), draw(3));
        assert_ne!(draw(3), draw(4));
    }
}
