//! The two directions of the frame/algebra correspondence: the open-set
//! algebra of a poset (its upward-closed subsets under reverse inclusion)
//! and the prime-ideal frame of a finite Brouwer algebra.

use crate::brouwer::BrouwerAlgebra;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kripke::{frame_validates, Frame};
use crate::poset::{isomorphic, iter_bits, Poset, MAX_ELEMENTS};

/// A Brouwer algebra tagged with the poset it was built from: the carrier is
/// the family of upward-closed subsets, ordered by reverse inclusion, so
/// lattice join is intersection, meet is union, the bottom is the full set
/// and the top is the empty set.
#[derive(Debug, Clone)]
pub struct OpenSetAlgebra {
    source: Poset,
    sets: Vec<u64>,
    algebra: BrouwerAlgebra,
}

impl OpenSetAlgebra {
    /// The open-set algebra of a rooted frame. Rootedness makes the bottom
    /// meet-irreducible, so the result is always eligible for
    /// [`frame_of_algebra`].
    pub fn from_frame(frame: &Frame) -> Result<OpenSetAlgebra> {
        OpenSetAlgebra::from_poset(frame.poset())
    }

    /// The open-set algebra of an arbitrary poset (no root required; without
    /// one the bottom need not be meet-irreducible).
    pub fn from_poset(poset: &Poset) -> Result<OpenSetAlgebra> {
        let sets = poset.up_sets()?;
        if sets.len() > MAX_ELEMENTS {
            return Err(Error::InvalidInput(format!(
                "the poset has {} open sets; at most {MAX_ELEMENTS} are supported",
                sets.len()
            )));
        }
        let m = sets.len();
        let mut up = vec![0u64; m];
        for i in 0..m {
            for j in 0..m {
                // i <= j in the algebra iff the j-th set is contained in the
                // i-th: reverse inclusion.
                if sets[j] & !sets[i] == 0 {
                    up[i] |= 1 << j;
                }
            }
        }
        let order = Poset::from_up_sets_unchecked(m, up);
        let bottom = m - 1; // the full set: ascending masks end with it
        let top = 0; // the empty set
        let algebra = BrouwerAlgebra::from_order(order, bottom, top)?;

        let out = OpenSetAlgebra {
            source: poset.clone(),
            sets,
            algebra,
        };
        // The residual coming out of the adjunction must coincide with the
        // pointwise description of implication on open sets.
        for a in 0..m {
            for b in 0..m {
                let pointwise = out.fitting_arrow(a, b);
                assert_eq!(
                    out.algebra.implication(a, b),
                    pointwise,
                    "residual and open-set implication disagree",
                );
                assert_eq!(
                    out.sets[out.algebra.join(a, b)],
                    out.sets[a] & out.sets[b],
                    "lattice join must be intersection",
                );
                assert_eq!(
                    out.sets[out.algebra.meet(a, b)],
                    out.sets[a] | out.sets[b],
                    "lattice meet must be union",
                );
            }
        }
        Ok(out)
    }

    /// `{ x : every successor of x in A lies in B }`, as an element index.
    fn fitting_arrow(&self, a: usize, b: usize) -> usize {
        let mut mask = 0u64;
        for x in 0..self.source.size() {
            if self.source.up_mask(x) & self.sets[a] & !self.sets[b] == 0 {
                mask |= 1 << x;
            }
        }
        self.element_of(mask).expect("the set is open")
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    /// The open set carried by each element, ascending by bitmask.
    pub fn sets(&self) -> &[u64] {
        &self.sets
    }

    pub fn algebra(&self) -> &BrouwerAlgebra {
        &self.algebra
    }

    /// The element carrying a given open set.
    pub fn element_of(&self, set: u64) -> Option<usize> {
        self.sets.binary_search(&set).ok()
    }
}

/// Spec-named alias for [`OpenSetAlgebra::from_frame`].
pub fn alg_of_frame(frame: &Frame) -> Result<OpenSetAlgebra> {
    OpenSetAlgebra::from_frame(frame)
}

/// The prime-ideal frame of a finite Brouwer algebra.
///
/// Worlds are the prime ideals (nonempty proper downward-closed sets, closed
/// under join, whose complement is closed under meet), ordered by inclusion.
/// The bottom must be meet-irreducible so that `{0}` is itself a prime
/// ideal: it is below every other ideal and becomes the root.
pub fn frame_of_algebra(alg: &BrouwerAlgebra) -> Result<Frame> {
    if !alg.zero_meet_irreducible() {
        return Err(Error::ZeroNotMeetIrreducible);
    }
    let m = alg.size();
    if m > crate::poset::MAX_POWERSET_ELEMENTS {
        return Err(Error::InvalidInput(format!(
            "prime-ideal enumeration supports at most {} elements",
            crate::poset::MAX_POWERSET_ELEMENTS
        )));
    }
    let full = alg.order().full_mask();
    let mut ideals: Vec<u64> = Vec::new();
    'candidate: for mask in 1..full {
        if mask >> alg.bottom() & 1 == 0 {
            continue;
        }
        for a in iter_bits(mask) {
            if alg.order().down_mask(a) & !mask != 0 {
                continue 'candidate;
            }
        }
        for a in iter_bits(mask) {
            for b in iter_bits(mask) {
                if mask >> alg.join(a, b) & 1 == 0 {
                    continue 'candidate;
                }
            }
        }
        for x in 0..m {
            for y in 0..m {
                if mask >> alg.meet(x, y) & 1 == 1 && mask >> x & 1 == 0 && mask >> y & 1 == 0 {
                    continue 'candidate;
                }
            }
        }
        ideals.push(mask);
    }
    if ideals.is_empty() {
        return Err(Error::InvalidInput(
            "the algebra has no prime ideals".into(),
        ));
    }
    let n = ideals.len();
    if n > MAX_ELEMENTS {
        return Err(Error::InvalidInput(format!(
            "the algebra has {n} prime ideals; at most {MAX_ELEMENTS} worlds are supported"
        )));
    }
    let mut up = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            if ideals[i] & !ideals[j] == 0 {
                up[i] |= 1 << j;
            }
        }
    }
    let root_mask = 1u64 << alg.bottom();
    let root = ideals
        .binary_search(&root_mask)
        .map_err(|_| Error::ZeroNotMeetIrreducible)?;
    Frame::new(Poset::from_up_sets_unchecked(n, up), root)
}

/// Checks that the frame and the algebra validate exactly the same formulas
/// of the corpus.
pub fn theories_agree(
    frame: &Frame,
    alg: &BrouwerAlgebra,
    corpus: &[Formula],
    budget: &Budget,
) -> Result<bool> {
    for f in corpus {
        if frame_validates(frame, f, budget)? != alg.satisfies(f, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Frame isomorphism; the root is forced to correspond since order
/// isomorphisms preserve the least element.
pub fn frame_isomorphic(a: &Frame, b: &Frame) -> Result<bool> {
    isomorphic(a.poset(), b.poset())
}
