//! Finite posets on `{0..n-1}` with bitmask up-sets, plus canonical forms
//! and enumeration up to isomorphism.
//!
//! Everything downstream (Kripke frames, lattice orders, the open-set
//! algebra) is built on this representation: `up[x]` is the bitmask of
//! elements above `x`, always including `x` itself.

use crate::error::{Error, Result};

/// Largest supported carrier; up-sets live in a single u64.
pub const MAX_ELEMENTS: usize = 63;

/// Carrier size limit for routines that enumerate all subsets (up-sets of a
/// frame, down-sets of a lattice).
pub const MAX_POWERSET_ELEMENTS: usize = 20;

/// Size limit for canonical forms; the relation matrix must fit in a u128.
pub const MAX_CANONICAL_ELEMENTS: usize = 11;

/// A finite partial order, stored as reflexive up-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    up: Vec<u64>,
    down: Vec<u64>,
}

impl Poset {
    /// Builds the poset generated by `pairs` (meaning `i <= j` for each
    /// `(i, j)`): the reflexive-transitive closure is computed, and the
    /// result is rejected if it is not antisymmetric. Accepts anything from
    /// the cover relation up to the full order.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        if size == 0 {
            return Err(Error::InvalidInput("a poset must be nonempty".into()));
        }
        if size > MAX_ELEMENTS {
            return Err(Error::InvalidInput(format!(
                "at most {MAX_ELEMENTS} elements are supported"
            )));
        }
        let mut up = vec![0u64; size];
        for (x, row) in up.iter_mut().enumerate() {
            *row = 1 << x;
        }
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(Error::InvalidInput(format!(
                    "pair ({i}, {j}) is out of range for size {size}"
                )));
            }
            up[i] |= 1 << j;
        }
        // Reachability closure.
        for k in 0..size {
            for i in 0..size {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        for i in 0..size {
            for j in (i + 1)..size {
                if up[i] >> j & 1 == 1 && up[j] >> i & 1 == 1 {
                    return Err(Error::NotPartialOrder(format!(
                        "elements {i} and {j} lie on a cycle"
                    )));
                }
            }
        }
        Ok(Poset::from_up_sets_unchecked(size, up))
    }

    /// Wraps up-sets that are already reflexive, transitive and antisymmetric.
    pub(crate) fn from_up_sets_unchecked(size: usize, up: Vec<u64>) -> Poset {
        let mut down = vec![0u64; size];
        for (x, &mask) in up.iter().enumerate() {
            for y in iter_bits(mask) {
                down[y] |= 1 << x;
            }
        }
        Poset { size, up, down }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn full_mask(&self) -> u64 {
        u64::MAX >> (64 - self.size)
    }

    /// `x <= y`?
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    /// Bitmask of `{y : x <= y}`, including `x`.
    pub fn up_mask(&self, x: usize) -> u64 {
        self.up[x]
    }

    /// Bitmask of `{y : y <= x}`, including `x`.
    pub fn down_mask(&self, x: usize) -> u64 {
        self.down[x]
    }

    /// Bitmask of the maximal elements.
    pub fn maximal_mask(&self) -> u64 {
        let mut out = 0;
        for x in 0..self.size {
            if self.up[x] == 1 << x {
                out |= 1 << x;
            }
        }
        out
    }

    /// The least element, if there is one.
    pub fn least(&self) -> Option<usize> {
        (0..self.size).find(|&x| self.up[x] == self.full_mask())
    }

    /// The greatest element, if there is one.
    pub fn greatest(&self) -> Option<usize> {
        (0..self.size).find(|&x| self.down[x] == self.full_mask())
    }

    /// Is `mask` upward closed?
    pub fn is_up_set(&self, mask: u64) -> bool {
        iter_bits(mask).all(|x| self.up[x] & !mask == 0)
    }

    /// All upward-closed subsets in ascending bitmask order.
    pub fn up_sets(&self) -> Result<Vec<u64>> {
        if self.size > MAX_POWERSET_ELEMENTS {
            return Err(Error::InvalidInput(format!(
                "up-set enumeration supports at most {MAX_POWERSET_ELEMENTS} elements"
            )));
        }
        Ok((0..=self.full_mask())
            .filter(|&mask| self.is_up_set(mask))
            .collect())
    }

    /// The cover (Hasse) relation as sorted pairs `(x, y)` with `x` covered
    /// by `y`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.size {
            for y in iter_bits(self.up[x]) {
                if y == x {
                    continue;
                }
                let strictly_between =
                    iter_bits(self.up[x] & self.down[y]).any(|z| z != x && z != y);
                if !strictly_between {
                    out.push((x, y));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Relation matrix encoded row-major: bit `x * size + y` set iff `x <= y`.
    fn matrix_key(&self) -> u128 {
        let mut key = 0u128;
        for x in 0..self.size {
            for y in iter_bits(self.up[x]) {
                key |= 1u128 << (x * self.size + y);
            }
        }
        key
    }

    fn relabeled_key(&self, position_of: &[usize]) -> u128 {
        let mut key = 0u128;
        for x in 0..self.size {
            for y in iter_bits(self.up[x]) {
                key |= 1u128 << (position_of[x] * self.size + position_of[y]);
            }
        }
        key
    }

    /// Canonical form: the minimum relation-matrix encoding over all
    /// relabelings, found by backtracking over partial label assignments.
    /// Two posets are isomorphic iff their canonical keys agree.
    pub fn canonical_key(&self) -> Result<u128> {
        if self.size > MAX_CANONICAL_ELEMENTS {
            return Err(Error::InvalidInput(format!(
                "canonical forms support at most {MAX_CANONICAL_ELEMENTS} elements"
            )));
        }
        let n = self.size;
        let mut position_of = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut best = self.matrix_key();
        // Assign which element receives each position in turn; any complete
        // assignment yields a candidate key, and the best is kept.
        fn assign(
            poset: &Poset,
            next_position: usize,
            position_of: &mut [usize],
            used: &mut [bool],
            best: &mut u128,
        ) {
            let n = poset.size;
            if next_position == n {
                let key = poset.relabeled_key(position_of);
                if key < *best {
                    *best = key;
                }
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    position_of[x] = next_position;
                    assign(poset, next_position + 1, position_of, used, best);
                    used[x] = false;
                    position_of[x] = usize::MAX;
                }
            }
        }
        assign(self, 0, &mut position_of, &mut used, &mut best);
        Ok(best)
    }

    /// Rebuilds a poset from a relation-matrix key produced by
    /// [`Poset::matrix_key`] / [`Poset::canonical_key`].
    pub(crate) fn from_matrix_key(size: usize, key: u128) -> Poset {
        let mut up = vec![0u64; size];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..size {
                if key >> (x * size + y) & 1 == 1 {
                    *row |= 1 << y;
                }
            }
        }
        Poset::from_up_sets_unchecked(size, up)
    }

    /// Applies a relabeling: element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        let mut up = vec![0u64; self.size];
        for x in 0..self.size {
            for y in iter_bits(self.up[x]) {
                up[perm[x]] |= 1 << perm[y];
            }
        }
        Poset::from_up_sets_unchecked(self.size, up)
    }
}

/// Iterate over set bits of a mask.
pub fn iter_bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(x)
        }
    })
}

/// Isomorphism test via canonical forms.
pub fn isomorphic(a: &Poset, b: &Poset) -> Result<bool> {
    if a.size() != b.size() {
        return Ok(false);
    }
    Ok(a.canonical_key()? == b.canonical_key()?)
}

/// All posets with exactly `size` elements, one canonically labeled
/// representative per isomorphism class, sorted by canonical key.
pub fn enumerate_posets(size: usize) -> Result<Vec<Poset>> {
    enumerate_posets_filtered(size, None)
}

/// As [`enumerate_posets`], keeping only classes with at most `max_maximal`
/// maximal elements when a bound is given.
///
/// Every poset admits a labeling in which `x < y` implies `x` is numerically
/// below `y`, so it suffices to enumerate the transitive subrelations of the
/// natural order and deduplicate by canonical form. The maximal-element count
/// is isomorphism-invariant and is filtered before canonicalization.
pub fn enumerate_posets_filtered(size: usize, max_maximal: Option<usize>) -> Result<Vec<Poset>> {
    if size == 0 || size > MAX_CANONICAL_ELEMENTS {
        return Err(Error::InvalidInput(format!(
            "poset enumeration supports sizes 1 through {MAX_CANONICAL_ELEMENTS}"
        )));
    }
    let pair_count = size * (size - 1) / 2;
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| ((i + 1)..size).map(move |j| (i, j)))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for choice in 0u64..(1 << pair_count) {
        let mut up = vec![0u64; size];
        for (x, row) in up.iter_mut().enumerate() {
            *row = 1 << x;
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if choice >> bit & 1 == 1 {
                up[i] |= 1 << j;
            }
        }
        // Transitive? (Reflexivity and antisymmetry hold by construction.)
        let transitive = (0..size).all(|i| iter_bits(up[i]).all(|j| up[j] & !up[i] == 0));
        if !transitive {
            continue;
        }
        if let Some(bound) = max_maximal {
            let maximal = (0..size).filter(|&x| up[x] == 1 << x).count();
            if maximal > bound {
                continue;
            }
        }
        let poset = Poset::from_up_sets_unchecked(size, up);
        seen.insert(poset.canonical_key()?);
    }
    Ok(seen
        .into_iter()
        .map(|key| Poset::from_matrix_key(size, key))
        .collect())
}
