//! At-most-one and cardinality-equals clause generators.

use super::{CnfError, CnfFormula, Lit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AtMostOneMethod {
    /// Pairwise for up to 6 literals, commander above.
    #[default]
    Auto,
    Pairwise,
    Commander,
}

/// Constrains at most one of `lits` to be true.
pub fn at_most_one(f: &mut CnfFormula, lits: &[Lit], method: AtMostOneMethod) {
    match method {
        AtMostOneMethod::Pairwise => pairwise(f, lits),
        AtMostOneMethod::Commander => commander(f, lits),
        AtMostOneMethod::Auto => {
            if lits.len() <= 6 {
                pairwise(f, lits)
            } else {
                commander(f, lits)
            }
        }
    }
}

/// Constrains exactly one of `lits` to be true. `lits` must be non-empty.
pub fn exactly_one(f: &mut CnfFormula, lits: &[Lit], method: AtMostOneMethod) {
    assert!(!lits.is_empty(), "exactly-one over no literals is a verdict");
    f.add_clause(lits);
    at_most_one(f, lits, method);
}

fn pairwise(f: &mut CnfFormula, lits: &[Lit]) {
    for i in 0..lits.len() {
        for j in i + 1..lits.len() {
            f.add_clause(&[!lits[i], !lits[j]]);
        }
    }
}

/// Commander encoding with groups of 3: pairwise inside each group, a
/// commander variable implied by every group member, and the commanders
/// constrained recursively.
fn commander(f: &mut CnfFormula, lits: &[Lit]) {
    if lits.len() <= 3 {
        pairwise(f, lits);
        return;
    }
    let mut commanders = Vec::with_capacity(lits.len().div_ceil(3));
    for group in lits.chunks(3) {
        pairwise(f, group);
        let c = Lit::positive(f.new_var());
        for &l in group {
            f.add_clause(&[!l, c]);
        }
        commanders.push(c);
    }
    commander(f, &commanders);
}

/// Auxiliary variables the commander encoding allocates for `n` literals
/// under the given method; used by closed-form variable-count checks.
pub(crate) fn at_most_one_aux_vars(n: usize, method: AtMostOneMethod) -> u32 {
    match method {
        AtMostOneMethod::Pairwise => 0,
        AtMostOneMethod::Commander => commander_aux(n),
        AtMostOneMethod::Auto => {
            if n <= 6 {
                0
            } else {
                commander_aux(n)
            }
        }
    }
}

fn commander_aux(n: usize) -> u32 {
    if n <= 3 {
        return 0;
    }
    let groups = n.div_ceil(3);
    groups as u32 + commander_aux(groups)
}

/// Constrains exactly `k` of `lits` to be true via a bidirectional
/// sequential counter: register `s[i][j]` holds iff at least `j` of the
/// first `i` literals are true. The auxiliaries are functionally determined
/// by the base literals, so the projected models are exactly the k-subsets.
pub fn cardinality_equals(f: &mut CnfFormula, lits: &[Lit], k: u32) -> Result<(), CnfError> {
    let n = lits.len();
    if (k as usize) > n {
        return Err(CnfError::KOutOfRange { k, n });
    }
    if k as usize == n {
        for &l in lits {
            f.add_clause(&[l]);
        }
        return Ok(());
    }
    if k == 0 {
        for &l in lits {
            f.add_clause(&[!l]);
        }
        return Ok(());
    }

    // Rows track counts 1..=k+1; row k+1 is the overflow detector.
    let kmax = k + 1;
    let width = |i: usize| -> u32 { (i as u32).min(kmax) };
    let mut rows: Vec<Vec<Lit>> = Vec::with_capacity(n);
    for i in 1..=n {
        rows.push(
            f.new_vars(width(i))
                .into_iter()
                .map(Lit::positive)
                .collect(),
        );
    }
    let s = |rows: &Vec<Vec<Lit>>, i: usize, j: u32| -> Lit { rows[i - 1][(j - 1) as usize] };

    // i = 1 base: s[1][1] <-> x_1.
    f.add_clause(&[!lits[0], s(&rows, 1, 1)]);
    f.add_clause(&[!s(&rows, 1, 1), lits[0]]);

    for i in 2..=n {
        let x = lits[i - 1];
        for j in 1..=width(i) {
            let sij = s(&rows, i, j);
            // Forward: the count reaches j if it already had, or x_i tips it.
            if j <= width(i - 1) {
                f.add_clause(&[!s(&rows, i - 1, j), sij]);
            }
            if j == 1 {
                f.add_clause(&[!x, sij]);
            } else if j - 1 <= width(i - 1) {
                f.add_clause(&[!x, !s(&rows, i - 1, j - 1), sij]);
            }
            // Backward: a reached count must be justified.
            if j <= width(i - 1) {
                f.add_clause(&[!sij, s(&rows, i - 1, j), x]);
            } else {
                f.add_clause(&[!sij, x]);
            }
            if j >= 2 {
                f.add_clause(&[!sij, s(&rows, i - 1, j - 1)]);
            }
        }
    }

    // Pin the final count: at least k, never k+1.
    f.add_clause(&[s(&rows, n, k)]);
    if width(n) >= kmax {
        f.add_clause(&[!s(&rows, n, kmax)]);
    }
    Ok(())
}

/// Auxiliary variable count of [`cardinality_equals`] for `n` literals and
/// bound `k`.
pub(crate) fn cardinality_aux_vars(n: usize, k: u32) -> u32 {
    if k == 0 || k as usize == n {
        return 0;
    }
    (1..=n).map(|i| (i as u32).min(k + 1)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{SolveBudget, Solver};

    fn base_vars(f: &mut CnfFormula, n: u32) -> Vec<Lit> {
        f.new_vars(n).into_iter().map(Lit::positive).collect()
    }

    /// Counts assignments of `base` extendable to a model, by solving under
    /// assumptions; independent of the encoding's internals.
    fn count_projected_models(f: &CnfFormula, base: &[Lit]) -> u64 {
        let mut solver = Solver::from_formula(f);
        let mut count = 0;
        for bits in 0u64..(1 << base.len()) {
            let assumptions: Vec<Lit> = base
                .iter()
                .enumerate()
                .map(|(i, &l)| if bits & (1 << i) != 0 { l } else { !l })
                .collect();
            if solver.solve(&assumptions, &SolveBudget::unlimited()).is_sat() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn pairwise_clause_count() {
        let mut f = CnfFormula::new();
        let lits = base_vars(&mut f, 3);
        at_most_one(&mut f, &lits, AtMostOneMethod::Auto);
        assert_eq!(f.num_clauses(), 3);
    }

    #[test]
    fn empty_amo_adds_nothing() {
        let mut f = CnfFormula::new();
        at_most_one(&mut f, &[], AtMostOneMethod::Auto);
        assert_eq!(f.num_clauses(), 0);
        assert_eq!(f.num_vars(), 0);
    }

    #[test]
    fn commander_projection_is_at_most_one() {
        let mut f = CnfFormula::new();
        let lits = base_vars(&mut f, 20);
        at_most_one(&mut f, &lits, AtMostOneMethod::Auto);
        assert!(f.num_vars() > 20, "auto picks commander here");
        // All single-true and the all-false assignment extend; every
        // two-true assignment must not.
        let mut solver = Solver::from_formula(&f);
        let mut sat_count = 0;
        let all_false: Vec<Lit> = lits.iter().map(|&l| !l).collect();
        if solver.solve(&all_false, &SolveBudget::unlimited()).is_sat() {
            sat_count += 1;
        }
        for i in 0..lits.len() {
            let mut a = all_false.clone();
            a[i] = lits[i];
            if solver.solve(&a, &SolveBudget::unlimited()).is_sat() {
                sat_count += 1;
            }
        }
        for i in 0..lits.len() {
            for j in i + 1..lits.len() {
                assert!(
                    !solver
                        .solve(&[lits[i], lits[j]], &SolveBudget::unlimited())
                        .is_sat(),
                    "two commanders' charges both true"
                );
            }
        }
        assert_eq!(sat_count, 21);
    }

    #[test]
    fn cardinality_three_choose_two() {
        let mut f = CnfFormula::new();
        let lits = base_vars(&mut f, 3);
        cardinality_equals(&mut f, &lits, 2).unwrap();
        assert_eq!(count_projected_models(&f, &lits), 3);
    }

    #[test]
    fn cardinality_zero_forces_all_false() {
        let mut f = CnfFormula::new();
        let lits = base_vars(&mut f, 5);
        cardinality_equals(&mut f, &lits, 0).unwrap();
        let mut solver = Solver::from_formula(&f);
        match solver.solve(&[], &SolveBudget::unlimited()) {
            crate::cnf::SolveOutcome::Sat(m) => {
                assert!(lits.iter().all(|&l| !m.lit_is_true(l)));
            }
            other => panic!("expected sat, got {other:?}"),
        }
        assert!(!solver.solve(&[lits[2]], &SolveBudget::unlimited()).is_sat());
    }

    #[test]
    fn cardinality_eight_choose_three() {
        let mut f = CnfFormula::new();
        let lits = base_vars(&mut f, 8);
        cardinality_equals(&mut f, &lits, 3).unwrap();
        assert_eq!(count_projected_models(&f, &lits), 56);
    }

    #[test]
    fn cardinality_rejects_out_of_range() {
        let mut f = CnfFormula::new();
        let lits = base_vars(&mut f, 3);
        assert_eq!(
            cardinality_equals(&mut f, &lits, 4),
            Err(CnfError::KOutOfRange { k: 4, n: 3 })
        );
    }

    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut r = 1;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn cardinality_binomial_exhaustive_to_ten() {
        for n in 1..=10u32 {
            for k in 0..=n {
                let mut f = CnfFormula::new();
                let lits = base_vars(&mut f, n);
                cardinality_equals(&mut f, &lits, k).unwrap();
                assert_eq!(
                    count_projected_models(&f, &lits),
                    binomial(n as u64, k as u64),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn aux_var_counts_match_allocation() {
        for (n, k) in [(5usize, 2u32), (9, 4), (12, 1), (7, 7), (6, 0)] {
            let mut f = CnfFormula::new();
            let lits = base_vars(&mut f, n as u32);
            cardinality_equals(&mut f, &lits, k).unwrap();
            assert_eq!(f.num_vars(), n as u32 + cardinality_aux_vars(n, k), "n={n} k={k}");
        }
        for n in [3usize, 6, 7, 20, 100] {
            let mut f = CnfFormula::new();
            let lits = base_vars(&mut f, n as u32);
            at_most_one(&mut f, &lits, AtMostOneMethod::Auto);
            assert_eq!(
                f.num_vars(),
                n as u32 + at_most_one_aux_vars(n, AtMostOneMethod::Auto),
                "n={n}"
            );
        }
    }
}
