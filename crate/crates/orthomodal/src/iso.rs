//! Ortholattice isomorphism by invariant-pruned backtracking.
//!
//! Two lattices are compared on the structure they share: order and
//! orthocomplement always, box / arrow / Boolean block only when both
//! sides carry them. The search assigns elements in order of fewest
//! candidates first, pruning with per-element invariants (down-set and
//! up-set sizes, block membership, self-complementarity), and verifies
//! the complete map against every table before reporting it.

use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::FiniteOrtholattice;

#[derive(PartialEq, Eq)]
struct Invariant {
    down: usize,
    up: usize,
    neg_down: usize,
    in_block: bool,
    self_neg: bool,
    boxed_down: Option<usize>,
}

fn invariants(l: &FiniteOrtholattice, compare_box: bool, compare_block: bool) -> Vec<Invariant> {
    let n = l.len();
    let down = |a: usize| (0..n).filter(|&c| l.is_leq(c, a)).count();
    let up = |a: usize| (0..n).filter(|&c| l.is_leq(a, c)).count();
    (0..n)
        .map(|a| Invariant {
            down: down(a),
            up: up(a),
            neg_down: down(l.neg(a)),
            in_block: compare_block && l.in_boolean_block(a),
            self_neg: l.neg(a) == a,
            boxed_down: if compare_box { l.box_of(a).map(down) } else { None },
        })
        .collect()
}

/// Search for an isomorphism from `a` to `b`; on success returns the
/// element map (`map[i]` in `b` corresponds to `i` in `a`).
pub fn iso_check(a: &FiniteOrtholattice, b: &FiniteOrtholattice) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let compare_box = a.has_box() && b.has_box();
    let compare_arrow = a.has_arrow() && b.has_arrow();
    let compare_block = a.has_boolean_block() && b.has_boolean_block();

    let inv_a = invariants(a, compare_box, compare_block);
    let inv_b = invariants(b, compare_box, compare_block);
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| inv_a[i] == inv_b[j]).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| candidates[i].len());

    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    if !assign(a, b, &candidates, &order, 0, &mut map, &mut used) {
        return None;
    }
    let map: Vec<usize> = map.into_iter().map(|m| m.expect("complete")).collect();

    // Full verification of every shared table on the completed map.
    for i in 0..n {
        if b.neg(map[i]) != map[a.neg(i)] {
            return None;
        }
        if compare_box && b.box_of(map[i]) != a.box_of(i).map(|x| map[x]) {
            return None;
        }
        for j in 0..n {
            if a.is_leq(i, j) != b.is_leq(map[i], map[j]) {
                return None;
            }
            if compare_arrow && b.arrow_of(map[i], map[j]) != a.arrow_of(i, j).map(|x| map[x]) {
                return None;
            }
        }
        if compare_block && a.in_boolean_block(i) != b.in_boolean_block(map[i]) {
            return None;
        }
    }
    Some(map)
}

fn assign(
    a: &FiniteOrtholattice,
    b: &FiniteOrtholattice,
    candidates: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let i = order[depth];
    for &j in &candidates[i] {
        if used[j] || !consistent(a, b, i, j, map) {
            continue;
        }
        map[i] = Some(j);
        used[j] = true;
        if assign(a, b, candidates, order, depth + 1, map, used) {
            return true;
        }
        map[i] = None;
        used[j] = false;
    }
    false
}

fn consistent(
    a: &FiniteOrtholattice,
    b: &FiniteOrtholattice,
    i: usize,
    j: usize,
    map: &[Option<usize>],
) -> bool {
    for (i2, slot) in map.iter().enumerate() {
        let Some(j2) = *slot else { continue };
        if a.is_leq(i, i2) != b.is_leq(j, j2) || a.is_leq(i2, i) != b.is_leq(j2, j) {
            return false;
        }
    }
    if let Some(jn) = map[a.neg(i)] {
        if b.neg(j) != jn {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn b4(names: [&str; 4], order_flip: bool) -> FiniteOrtholattice {
        // Optionally present the same algebra with atoms swapped.
        let covers: &[(usize, usize)] =
            if order_flip { &[(0, 2), (0, 1), (2, 3), (1, 3)] } else { &[(0, 1), (0, 2), (1, 3), (2, 3)] };
        FiniteOrtholattice::from_order(
            names.iter().map(|s| s.to_string()).collect(),
            covers,
            vec![3, 2, 1, 0],
        )
        .unwrap()
    }

    #[test]
    fn isomorphic_presentations_match() {
        let l = b4(["0", "a", "b", "1"], false);
        let m = b4(["bottom", "x", "y", "up"], true);
        let map = iso_check(&l, &m).expect("isomorphic");
        assert_eq!(map[0], 0);
        assert_eq!(map[3], 3);
    }

    #[test]
    fn chain_and_diamond_differ() {
        let chain = FiniteOrtholattice::from_order(
            ["0", "a", "na", "1"].iter().map(|s| s.to_string()).collect(),
            &[(0, 1), (1, 2), (2, 3)],
            vec![3, 2, 1, 0],
        )
        .unwrap();
        let diamond = b4(["0", "a", "b", "1"], false);
        assert!(iso_check(&chain, &diamond).is_none());
    }
}
