//! Kostant's partition function and positive-cone enumeration.

use std::collections::HashMap;

use super::{RootDatum, RootVec};

/// Number of ways to write `ν` as a multiset of positive roots.
/// Returns 0 for vectors with a negative coordinate.
pub fn kostant_partition(datum: &RootDatum, nu: &[i32]) -> u64 {
    if nu.iter().any(|&c| c < 0) {
        return 0;
    }
    let roots = datum.positive_roots();
    let mut memo: HashMap<(usize, RootVec), u64> = HashMap::new();
    count_with(roots, roots.len(), nu, &mut memo)
}

/// Ways to write `nu` using only the first `k` roots of the list.
fn count_with(
    roots: &[RootVec],
    k: usize,
    nu: &[i32],
    memo: &mut HashMap<(usize, RootVec), u64>,
) -> u64 {
    if nu.iter().all(|&c| c == 0) {
        return 1;
    }
    if k == 0 || nu.iter().any(|&c| c < 0) {
        return 0;
    }
    let key = (k, nu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let beta = &roots[k - 1];
    let skip = count_with(roots, k - 1, nu, memo);
    let reduced: RootVec = nu.iter().zip(beta).map(|(a, b)| a - b).collect();
    let take = count_with(roots, k, &reduced, memo);
    let out = skip + take;
    memo.insert(key, out);
    out
}

/// Independent oracle: explicitly enumerate multiplicity tuples
/// `(a_1..a_N)` with `Σ a_i β_i = ν` by bounded nested search and count.
pub fn kostant_partition_brute(datum: &RootDatum, nu: &[i32]) -> u64 {
    if nu.iter().any(|&c| c < 0) {
        return 0;
    }
    fn rec(roots: &[RootVec], idx: usize, remaining: RootVec) -> u64 {
        if remaining.iter().all(|&c| c == 0) {
            return 1;
        }
        if idx == roots.len() {
            return 0;
        }
        let beta = &roots[idx];
        let bound = beta
            .iter()
            .zip(&remaining)
            .filter(|(b, _)| **b > 0)
            .map(|(b, r)| r / b)
            .min()
            .unwrap_or(0);
        let mut total = 0;
        for a in 0..=bound {
            let rest: RootVec = remaining
                .iter()
                .zip(beta)
                .map(|(r, b)| r - a * b)
                .collect();
            if rest.iter().all(|&c| c >= 0) {
                total += rec(roots, idx + 1, rest);
            }
        }
        total
    }
    rec(datum.positive_roots(), 0, nu.to_vec())
}

/// All root-lattice vectors with nonnegative coordinates and height at most
/// `cutoff`, in lexicographic order.
pub fn positive_cone(rank: usize, cutoff: i64) -> Vec<RootVec> {
    let mut out = Vec::new();
    let mut cur = vec![0i32; rank];
    fn rec(rank: usize, pos: usize, budget: i64, cur: &mut RootVec, out: &mut Vec<RootVec>) {
        if pos == rank {
            out.push(cur.clone());
            return;
        }
        for c in 0..=budget {
            cur[pos] = c as i32;
            rec(rank, pos + 1, budget - c, cur, out);
        }
        cur[pos] = 0;
    }
    rec(rank, 0, cutoff.max(0), &mut cur, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::height;

    #[test]
    fn base_values() {
        let rd = RootDatum::from_name("A2").unwrap();
        assert_eq!(kostant_partition(&rd, &[0, 0]), 1);
        assert_eq!(kostant_partition(&rd, &[1, 0]), 1);
        assert_eq!(kostant_partition(&rd, &[1, 1]), 2);
        assert_eq!(kostant_partition(&rd, &[-1, 0]), 0);
        // 2a1+2a2: {a1,a1,a2,a2}, {a1,a2,a1+a2}, {a1+a2,a1+a2} -> 3
        assert_eq!(kostant_partition(&rd, &[2, 2]), 3);
    }

    #[test]
    fn rank_one_is_constant_one() {
        let rd = RootDatum::from_name("A1").unwrap();
        for k in 0..=10 {
            assert_eq!(kostant_partition(&rd, &[k]), 1);
        }
    }

    #[test]
    fn matches_brute_force_up_to_height_8() {
        for name in ["A2", "B2", "A3"] {
            let rd = RootDatum::from_name(name).unwrap();
            for nu in positive_cone(rd.rank(), 8) {
                assert_eq!(
                    kostant_partition(&rd, &nu),
                    kostant_partition_brute(&rd, &nu),
                    "{name} at {nu:?}"
                );
            }
        }
    }

    #[test]
    fn positive_cone_counts() {
        // rank 2, cutoff 2: (0,0),(0,1),(0,2),(1,0),(1,1),(2,0) -> 6
        assert_eq!(positive_cone(2, 2).len(), 6);
        assert!(positive_cone(2, 2).iter().all(|v| height(v) <= 2));
        assert_eq!(positive_cone(1, 0), vec![vec![0]]);
    }
}
