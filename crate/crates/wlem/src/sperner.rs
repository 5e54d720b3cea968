//! Antichains in the powerset of `{1..n}` and the binomial bookkeeping that
//! links schema index `k` to minimal topwidth `n`.
//!
//! Sperner's theorem says the largest antichain in the subset lattice of an
//! `n`-element set is the middle binomial coefficient `C(n, floor(n/2))`.
//! That number decides which topwidth class the `k`-th testability schema
//! characterizes, so both directions of the correspondence live here.

use crate::error::{Error, Result};

/// A family of pairwise incomparable subsets of `{1..n}`.
///
/// Members are stored as bitmasks with bit `i - 1` standing for element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antichain {
    ground: usize,
    family: Vec<u64>,
}

impl Antichain {
    /// Validates pairwise incomparability (which also rules out duplicates).
    pub fn new(ground: usize, family: Vec<u64>) -> Result<Antichain> {
        if ground > 63 {
            return Err(Error::InvalidInput(
                "ground sets larger than 63 are not supported".into(),
            ));
        }
        let full = mask_full(ground);
        for &s in &family {
            if s & !full != 0 {
                return Err(Error::NotAntichain(format!(
                    "set {:?} is not a subset of the ground set",
                    mask_to_elements(s)
                )));
            }
        }
        if !is_antichain(&family) {
            return Err(Error::NotAntichain(
                "members are not pairwise incomparable".into(),
            ));
        }
        Ok(Antichain { ground, family })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn sets(&self) -> &[u64] {
        &self.family
    }

    /// Members as sorted lists of 1-based elements, in family order.
    pub fn element_lists(&self) -> Vec<Vec<usize>> {
        self.family.iter().map(|&m| mask_to_elements(m)).collect()
    }
}

fn mask_full(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

fn mask_to_elements(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

/// True iff the sets are pairwise incomparable under inclusion.
pub fn is_antichain(family: &[u64]) -> bool {
    for (i, &a) in family.iter().enumerate() {
        for &b in &family[i + 1..] {
            if a & b == a || a & b == b {
                return false;
            }
        }
    }
    true
}

/// The middle binomial coefficient `C(n, floor(n/2))`, exactly.
pub fn sperner_number(n: u32) -> u64 {
    binomial(n, n / 2)
}

/// Exact `C(n, k)`; panics on overflow past `u64`, which first happens
/// around `n = 68` and is far outside this crate's working range.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..u128::from(k) {
        acc = acc * (u128::from(n) - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient exceeds u64")
}

/// The least `n >= 1` with `C(n, floor(n/2)) >= k`.
///
/// The search starts at 1 rather than 0: the degenerate `C(0,0) = 1` would
/// otherwise answer `n = 0` for `k = 1`, but the base case of the topwidth
/// correspondence is the width-one class.
pub fn min_topwidth_for(k: u64) -> Result<u32> {
    if k == 0 {
        return Err(Error::ZeroSchemaIndex);
    }
    let mut n = 1;
    while sperner_number(n) < k {
        n += 1;
    }
    Ok(n)
}

/// The first `k` subsets of size `floor(n/2)` in colexicographic order (for
/// fixed-size subsets that is ascending bitmask order), which is a maximum-
/// size antichain prefix.
pub fn max_antichain(n: u32, k: u64) -> Result<Antichain> {
    if n > 63 {
        return Err(Error::InvalidInput(
            "ground sets larger than 63 are not supported".into(),
        ));
    }
    if k > sperner_number(n) {
        return Err(Error::InvalidInput(format!(
            "no antichain of {k} subsets exists in the powerset of a {n}-element set"
        )));
    }
    let want = n / 2;
    let mut family = Vec::with_capacity(k as usize);
    let mut mask: u64 = if want == 0 { 0 } else { (1 << want) - 1 };
    while (family.len() as u64) < k {
        family.push(mask);
        if want == 0 {
            break;
        }
        // Gosper's hack: next mask with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Antichain::new(n as usize, family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sperner_numbers() {
        assert_eq!(sperner_number(0), 1);
        assert_eq!(sperner_number(1), 1);
        assert_eq!(sperner_number(2), 2);
        assert_eq!(sperner_number(3), 3);
        assert_eq!(sperner_number(4), 6);
        assert_eq!(sperner_number(5), 10);
        assert_eq!(sperner_number(6), 20);
    }

    #[test]
    fn min_topwidth_table() {
        let expect = [
            (1, 1),
            (2, 2),
            (3, 3),
            (4, 4),
            (5, 4),
            (6, 4),
            (7, 5),
            (10, 5),
            (11, 6),
            (20, 6),
            (21, 7),
        ];
        for (k, n) in expect {
            assert_eq!(min_topwidth_for(k).unwrap(), n, "k = {k}");
        }
        assert!(min_topwidth_for(0).is_err());
    }

    #[test]
    fn min_topwidth_is_nondecreasing() {
        let mut prev = 0;
        for k in 1..=64 {
            let n = min_topwidth_for(k).unwrap();
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn sperner_number_strictly_increases() {
        for n in 1..=20 {
            assert!(sperner_number(n + 1) > sperner_number(n));
        }
    }

    #[test]
    fn max_antichain_examples() {
        let a = max_antichain(2, 2).unwrap();
        assert_eq!(a.element_lists(), vec![vec![1], vec![2]]);

        let b = max_antichain(4, 6).unwrap();
        assert_eq!(b.len(), 6);
        assert!(b.sets().iter().all(|m| m.count_ones() == 2));

        let c = max_antichain(4, 3).unwrap();
        assert_eq!(c.element_lists(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);

        assert!(max_antichain(2, 3).is_err());
    }

    #[test]
    fn max_antichain_outputs_are_antichains() {
        for n in 0..=6u32 {
            for k in 1..=sperner_number(n) {
                let a = max_antichain(n, k).unwrap();
                assert!(is_antichain(a.sets()));
                assert_eq!(a.len() as u64, k);
            }
        }
    }

    #[test]
    fn is_antichain_examples() {
        assert!(is_antichain(&[0b01, 0b10]));
        assert!(!is_antichain(&[0b01, 0b11]));
        assert!(!is_antichain(&[0b01, 0b01]));
        assert!(is_antichain(&[]));
    }

    #[test]
    fn antichain_rejects_out_of_range_sets() {
        assert!(Antichain::new(1, vec![0b10]).is_err());
        assert!(Antichain::new(2, vec![0b01, 0b10]).is_ok());
    }

    /// Exhaustive branch-and-bound search for the largest antichain in the
    /// powerset of `{1..n}`, independent of the binomial formula. The 2^n
    /// subsets are indexed by position in a middle-layer-first order so that
    /// the `alive` set fits in one u64 and the bound bites early.
    fn brute_force_max_antichain(n: u32) -> usize {
        assert!(n <= 6);
        let total = 1usize << n;
        let mut order: Vec<u64> = (0..total as u64).collect();
        order.sort_by_key(|m| (m.count_ones() as i32 - (n / 2) as i32).abs());
        let comparable = |a: u64, b: u64| a & b == a || a & b == b;
        let mut conflicts = vec![0u64; total];
        for i in 0..total {
            for j in 0..total {
                if i != j && comparable(order[i], order[j]) {
                    conflicts[i] |= 1 << j;
                }
            }
        }
        fn dfs(pos: usize, chosen: u32, alive: u64, conflicts: &[u64], best: &mut u32) {
            let pending = if pos >= 64 {
                0
            } else {
                alive & (u64::MAX << pos)
            };
            if chosen + pending.count_ones() <= *best {
                return;
            }
            if pos == conflicts.len() {
                *best = (*best).max(chosen);
                return;
            }
            if alive >> pos & 1 == 1 {
                dfs(
                    pos + 1,
                    chosen + 1,
                    alive & !conflicts[pos],
                    conflicts,
                    best,
                );
            }
            dfs(pos + 1, chosen, alive & !(1 << pos), conflicts, best);
        }
        let mut best = 0;
        let full = u64::MAX >> (64 - total);
        dfs(0, 0, full, &conflicts, &mut best);
        best as usize
    }

    #[test]
    fn sperner_number_matches_exhaustive_search() {
        for n in 0..=6u32 {
            assert_eq!(
                brute_force_max_antichain(n) as u64,
                sperner_number(n),
                "n = {n}"
            );
        }
    }
}
