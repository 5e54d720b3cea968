//! Finite rooted Kripke frames, models, the forcing relation, frame
//! validity, topwidth, enumeration up to isomorphism, countermodel search,
//! and extraction of a powerset antichain from a refuted testability schema.

use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::eval::Compiled;
use crate::formula::{negated_variable_skeleton, recognize_schema, Formula};
use crate::poset::{enumerate_posets_filtered, iter_bits, Poset, MAX_CANONICAL_ELEMENTS};
use crate::sperner::Antichain;

/// A finite partial order with a least element (the root).
///
/// Worlds are `0..size`; the accessibility relation is the order itself,
/// stored reflexively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    poset: Poset,
    root: usize,
}

impl Frame {
    /// Validates that `root` is below every world.
    pub fn new(poset: Poset, root: usize) -> Result<Frame> {
        if root >= poset.size() {
            return Err(Error::WorldOutOfRange {
                world: root,
                size: poset.size(),
            });
        }
        if poset.up_mask(root) != poset.full_mask() {
            let stranded = (0..poset.size())
                .find(|&x| !poset.le(root, x))
                .expect("some world is unreachable");
            return Err(Error::NotRooted(format!(
                "world {stranded} is not above the declared root {root}"
            )));
        }
        Ok(Frame { poset, root })
    }

    /// Builds the frame generated by the given relation pairs (covers or any
    /// subrelation of the order), then checks rootedness.
    pub fn from_cover(size: usize, pairs: &[(usize, usize)], root: usize) -> Result<Frame> {
        Frame::new(Poset::from_pairs(size, pairs)?, root)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Frame {
        let pairs: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Frame::from_cover(n.max(1), &pairs, 0).expect("chains are rooted")
    }

    /// A root with `tops` pairwise incomparable worlds above it.
    pub fn fan(tops: usize) -> Frame {
        let pairs: Vec<_> = (1..=tops).map(|t| (0, t)).collect();
        Frame::from_cover(tops + 1, &pairs, 0).expect("fans are rooted")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// `x R y`?
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.poset.le(x, y)
    }

    /// Number of maximal worlds. In a finite frame every world sits below a
    /// maximal one, so this is the usual covering count.
    pub fn topwidth(&self) -> usize {
        self.poset.maximal_mask().count_ones() as usize
    }

    /// All monotone variable values, i.e. upward-closed world sets, in
    /// ascending bitmask order.
    pub fn up_sets(&self) -> Result<Vec<u64>> {
        self.poset.up_sets()
    }
}

/// A frame together with a monotone valuation.
///
/// Variables missing from the map are interpreted as empty (nowhere true).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    valuation: BTreeMap<u32, u64>,
}

impl Model {
    /// Validates that every value is an upward-closed set of worlds.
    pub fn new(frame: Frame, valuation: BTreeMap<u32, u64>) -> Result<Model> {
        for (&var, &mask) in &valuation {
            if var == 0 {
                return Err(Error::InvalidInput("variable indices start at 1".into()));
            }
            if mask & !frame.poset.full_mask() != 0 {
                return Err(Error::WorldOutOfRange {
                    world: 63 - mask.leading_zeros() as usize,
                    size: frame.size(),
                });
            }
            if !frame.poset.is_up_set(mask) {
                return Err(Error::ValuationNotUpClosed(var));
            }
        }
        Ok(Model { frame, valuation })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<u32, u64> {
        &self.valuation
    }

    fn value_of(&self, var: u32) -> u64 {
        self.valuation.get(&var).copied().unwrap_or(0)
    }

    /// The forcing relation `world ⊩ f`.
    pub fn force(&self, world: usize, f: &Formula) -> Result<bool> {
        if world >= self.frame.size() {
            return Err(Error::WorldOutOfRange {
                world,
                size: self.frame.size(),
            });
        }
        Ok(self.forced_mask(f) >> world & 1 == 1)
    }

    /// True iff every world forces `f`.
    pub fn holds(&self, f: &Formula) -> bool {
        self.forced_mask(f) == self.frame.poset.full_mask()
    }

    /// Bitmask of the worlds forcing `f`.
    pub fn forced_mask(&self, f: &Formula) -> u64 {
        let compiled = Compiled::new(f);
        let assignment: Vec<u64> = compiled.vars.iter().map(|&v| self.value_of(v)).collect();
        let mut scratch = Vec::new();
        compiled.eval_frame(&self.frame.poset, &assignment, &mut scratch)
    }
}

/// A model, a world in it, and a formula the world fails to force.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    model: Model,
    world: usize,
    formula: Formula,
}

impl Countermodel {
    /// Re-verifies the defining property before accepting the witness.
    pub fn new(model: Model, world: usize, formula: Formula) -> Result<Countermodel> {
        if model.force(world, &formula)? {
            return Err(Error::NotCountermodel(format!(
                "world {world} forces the formula"
            )));
        }
        Ok(Countermodel {
            model,
            world,
            formula,
        })
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn world(&self) -> usize {
        self.world
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }
}

/// Outcome of checking one formula on one frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Holds,
    Fails(Countermodel),
}

impl Validity {
    pub fn holds(&self) -> bool {
        matches!(self, Validity::Holds)
    }
}

// ---------------------------------------------------------------------------
// Frame validity.
// ---------------------------------------------------------------------------

/// Checks `f` on every monotone valuation of the frame. Valuations are
/// enumerated as an odometer over the ascending up-set list, one digit per
/// variable in ascending variable order, with the last variable cycling
/// fastest; the first failing valuation (with its least failing world) is
/// returned, so the witness is reproducible.
pub fn holds_in_frame(frame: &Frame, f: &Formula, budget: &Budget) -> Result<Validity> {
    let compiled = Compiled::new(f);
    let upsets = frame.up_sets()?;
    let cost = compiled.frame_cost(&frame.poset);
    let full = frame.poset.full_mask();
    let mut indices = vec![0usize; compiled.vars.len()];
    let mut assignment = vec![0u64; compiled.vars.len()];
    let mut scratch = Vec::new();
    loop {
        budget.charge(cost)?;
        for (slot, &i) in indices.iter().enumerate() {
            assignment[slot] = upsets[i];
        }
        let mask = compiled.eval_frame(&frame.poset, &assignment, &mut scratch);
        if mask != full {
            let world = (0..frame.size())
                .find(|&x| mask >> x & 1 == 0)
                .expect("some world fails");
            let valuation: BTreeMap<u32, u64> = compiled
                .vars
                .iter()
                .zip(&assignment)
                .map(|(&v, &m)| (v, m))
                .collect();
            let model = Model::new(frame.clone(), valuation)?;
            return Ok(Validity::Fails(Countermodel::new(model, world, f.clone())?));
        }
        if !advance(&mut indices, upsets.len()) {
            return Ok(Validity::Holds);
        }
    }
}

/// Odometer step, last digit fastest. Returns false once exhausted.
fn advance(indices: &mut [usize], radix: usize) -> bool {
    for i in (0..indices.len()).rev() {
        indices[i] += 1;
        if indices[i] < radix {
            return true;
        }
        indices[i] = 0;
    }
    false
}

/// Validity only, no witness. Semantically equal to
/// `holds_in_frame(..).holds()`, but formulas whose variables occur only
/// negated are quantified over the range of the negation operator instead of
/// over all up-sets, and recognized schema instances (invariant under
/// permuting their variables) are further reduced to nondecreasing value
/// tuples. The exhaustive route above is kept as the oracle for this one.
pub fn frame_validates(frame: &Frame, f: &Formula, budget: &Budget) -> Result<bool> {
    let Some(skeleton) = negated_variable_skeleton(f) else {
        return match holds_in_frame(frame, f, budget)? {
            Validity::Holds => Ok(true),
            Validity::Fails(_) => Ok(false),
        };
    };
    let upsets = frame.up_sets()?;
    let mut neg_range: Vec<u64> = upsets.iter().map(|&a| exterior(&frame.poset, a)).collect();
    neg_range.sort_unstable();
    neg_range.dedup();

    let compiled = Compiled::new(&skeleton);
    let cost = compiled.frame_cost(&frame.poset);
    let full = frame.poset.full_mask();
    let symmetric = recognize_schema(f).is_some();
    let k = compiled.vars.len();
    let mut indices = vec![0usize; k];
    let mut assignment = vec![0u64; k];
    let mut scratch = Vec::new();
    loop {
        budget.charge(cost)?;
        for (slot, &i) in indices.iter().enumerate() {
            assignment[slot] = neg_range[i];
        }
        if compiled.eval_frame(&frame.poset, &assignment, &mut scratch) != full {
            return Ok(false);
        }
        let more = if symmetric {
            advance_nondecreasing(&mut indices, neg_range.len())
        } else {
            advance(&mut indices, neg_range.len())
        };
        if !more {
            return Ok(true);
        }
    }
}

/// The largest up-set disjoint from `a`: the worlds forcing the negation of
/// anything valued `a`.
fn exterior(poset: &Poset, a: u64) -> u64 {
    let mut m = 0;
    for x in 0..poset.size() {
        if poset.up_mask(x) & a == 0 {
            m |= 1 << x;
        }
    }
    m
}

/// Odometer over nondecreasing tuples.
fn advance_nondecreasing(indices: &mut [usize], radix: usize) -> bool {
    for i in (0..indices.len()).rev() {
        if indices[i] + 1 < radix {
            let v = indices[i] + 1;
            for item in indices.iter_mut().skip(i) {
                *item = v;
            }
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Enumeration and search.
// ---------------------------------------------------------------------------

/// All rooted frames with at most `max_size` worlds, one representative per
/// isomorphism class, optionally keeping only topwidth at most `bound`.
///
/// Deleting the root is a bijection between rooted frames on `n` worlds and
/// arbitrary posets on `n - 1` points, so the representatives are exactly the
/// canonical poset classes with a fresh root attached below. Order: by size,
/// then by canonical key of the root-deleted part.
pub fn enumerate_frames(max_size: usize, topwidth: Option<usize>) -> Result<Vec<Frame>> {
    if max_size == 0 {
        return Err(Error::InvalidInput("max_size must be at least 1".into()));
    }
    if max_size > MAX_CANONICAL_ELEMENTS + 1 {
        return Err(Error::InvalidInput(format!(
            "frame enumeration supports at most {} worlds",
            MAX_CANONICAL_ELEMENTS + 1
        )));
    }
    let mut frames = Vec::new();
    for size in 1..=max_size {
        if size == 1 {
            if topwidth.is_none_or(|b| b >= 1) {
                frames.push(Frame::chain(1));
            }
            continue;
        }
        for part in enumerate_posets_filtered(size - 1, topwidth)? {
            let mut up = vec![0u64; size];
            up[0] = u64::MAX >> (64 - size);
            for x in 0..part.size() {
                up[x + 1] = part.up_mask(x) << 1;
            }
            let poset = Poset::from_up_sets_unchecked(size, up);
            frames.push(Frame::new(poset, 0).expect("attached root is least"));
        }
    }
    Ok(frames)
}

/// Bounds for a countermodel search.
#[derive(Debug, Clone, Copy)]
pub struct SearchParams {
    pub max_size: usize,
    pub topwidth: Option<usize>,
}

/// First countermodel of `f` over the enumerated frames and their
/// valuations, or `None` if every frame within the bounds validates `f`.
pub fn countermodel_search(
    f: &Formula,
    params: &SearchParams,
    budget: &Budget,
) -> Result<Option<Countermodel>> {
    let has_fast_path = negated_variable_skeleton(f).is_some();
    for frame in enumerate_frames(params.max_size, params.topwidth)? {
        if has_fast_path && frame_validates(&frame, f, budget)? {
            continue;
        }
        if let Validity::Fails(cm) = holds_in_frame(&frame, f, budget)? {
            return Ok(Some(cm));
        }
    }
    Ok(None)
}

/// Reads off a powerset antichain from a countermodel of `gen_phi(k)`.
///
/// At a maximal world a negation holds exactly when the variable fails
/// there, so on a frame of topwidth `m + 1` some maximal world satisfies
/// every `~pi`; the remaining `m` maximal worlds are labeled `1..m` in world
/// order and `S_i` collects the labels where `pi` holds. Failure of both
/// implications between any pair of variables puts a separating label in
/// each difference, so the `S_i` are `k` pairwise incomparable subsets of
/// `{1..m}` — witnessing that the middle binomial coefficient of `m` is at
/// least `k`.
pub fn extract_antichain(cm: &Countermodel) -> Result<Antichain> {
    let k = match recognize_schema(cm.formula()) {
        Some(crate::formula::Schema::Phi(k)) => k,
        _ => {
            return Err(Error::NotCountermodel(
                "the refuted formula is not a generated testability schema".into(),
            ))
        }
    };
    let model = cm.model();
    let poset = model.frame().poset();
    let tops: Vec<usize> = iter_bits(poset.maximal_mask()).collect();
    let special = tops
        .iter()
        .copied()
        .find(|&t| (1..=k).all(|i| model.value_of(i) >> t & 1 == 0))
        .ok_or_else(|| {
            Error::NotCountermodel("no maximal world satisfies every negated variable".into())
        })?;
    let labeled: Vec<usize> = tops.into_iter().filter(|&t| t != special).collect();
    let mut family = Vec::with_capacity(k as usize);
    for i in 1..=k {
        let mut set = 0u64;
        for (label, &world) in labeled.iter().enumerate() {
            if model.value_of(i) >> world & 1 == 1 {
                set |= 1 << label;
            }
        }
        family.push(set);
    }
    Antichain::new(labeled.len(), family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{gen_phi, gen_sigma, parse};

    fn fork() -> Frame {
        Frame::from_cover(3, &[(0, 1), (0, 2)], 0).unwrap()
    }

    fn model(frame: Frame, vals: &[(u32, u64)]) -> Model {
        Model::new(frame, vals.iter().copied().collect()).unwrap()
    }

    #[test]
    fn frame_validation() {
        assert!(Frame::from_cover(2, &[], 0).is_err()); // antichain has no root
        assert!(Frame::from_cover(3, &[(0, 1), (0, 2)], 1).is_err());
        assert!(Frame::from_cover(2, &[(0, 1), (1, 0)], 0).is_err());
        assert!(Frame::from_cover(3, &[(0, 1), (0, 2)], 0).is_ok());
    }

    #[test]
    fn topwidth_examples() {
        assert_eq!(Frame::chain(3).topwidth(), 1);
        assert_eq!(fork().topwidth(), 2);
        for m in 1..=5 {
            assert_eq!(Frame::fan(m).topwidth(), m);
        }
        assert_eq!(Frame::chain(1).topwidth(), 1);
    }

    #[test]
    fn valuations_must_be_monotone() {
        // {root} is not upward closed in the fork.
        assert!(Model::new(fork(), [(1, 0b001)].into()).is_err());
        assert!(Model::new(fork(), [(1, 0b010)].into()).is_ok());
        assert!(Model::new(fork(), [(0, 0b010)].into()).is_err());
        assert!(Model::new(fork(), [(1, 0b1000)].into()).is_err());
    }

    #[test]
    fn forcing_on_the_fork() {
        // V(p1) = {a}: the root neither tests p1 nor its double negation.
        let m = model(fork(), &[(1, 0b010)]);
        assert!(!m.force(0, &parse("~p1").unwrap()).unwrap());
        assert!(!m.force(0, &parse("~~p1").unwrap()).unwrap());
        assert!(!m.force(0, &gen_phi(1).unwrap()).unwrap());
        // At the tops the literal facts are decided.
        assert!(m.force(1, &parse("p1").unwrap()).unwrap());
        assert!(m.force(2, &parse("~p1").unwrap()).unwrap());
        assert!(m.force(0, &parse("p1 -> p1").unwrap()).unwrap());
        assert!(matches!(
            m.force(3, &parse("p1").unwrap()),
            Err(Error::WorldOutOfRange { .. })
        ));
    }

    #[test]
    fn negation_with_empty_valuation() {
        let single = Frame::chain(1);
        let m = model(single, &[]);
        assert!(m.force(0, &parse("~p1").unwrap()).unwrap());
    }

    #[test]
    fn holds_in_model_examples() {
        let m = model(fork(), &[(1, 0b010)]);
        assert!(!m.holds(&gen_phi(1).unwrap()));
        assert!(m.holds(&parse("p1 -> p1").unwrap()));
        // Chain r < t with V(p1) = {t}: excluded middle fails at r.
        let m = model(Frame::chain(2), &[(1, 0b10)]);
        assert!(!m.holds(&parse("p1 | ~p1").unwrap()));
        assert!(!m.force(0, &parse("p1 | ~p1").unwrap()).unwrap());
    }

    #[test]
    fn frame_validity_and_first_countermodel() {
        let budget = Budget::default();
        let phi1 = gen_phi(1).unwrap();
        assert!(holds_in_frame(&Frame::chain(1), &phi1, &budget)
            .unwrap()
            .holds());
        match holds_in_frame(&fork(), &phi1, &budget).unwrap() {
            Validity::Fails(cm) => {
                assert_eq!(cm.world(), 0);
                assert_eq!(cm.model().valuation().get(&1), Some(&0b010));
            }
            Validity::Holds => panic!("the fork refutes the weak excluded middle"),
        }
    }

    #[test]
    fn enumerate_frames_small_counts() {
        assert_eq!(enumerate_frames(1, None).unwrap().len(), 1);
        // Sizes 1 and 2 contribute one frame each (the 2-antichain is not rooted).
        assert_eq!(enumerate_frames(2, None).unwrap().len(), 2);
        // 1 + 1 + 2 + 5 rooted classes up to 4 worlds.
        assert_eq!(enumerate_frames(4, None).unwrap().len(), 9);
        assert_eq!(enumerate_frames(5, None).unwrap().len(), 25);
        assert!(enumerate_frames(0, None).is_err());
    }

    #[test]
    fn enumerate_frames_against_exhaustive_relation_scan() {
        // Independent oracle: enumerate all binary relations on 0..n as
        // candidate strict orders, keep the partial orders with a least
        // element, and count isomorphism classes by pairwise permutation
        // tests.
        fn oracle_count(n: usize) -> usize {
            let off_diag: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j)
                .collect();
            let mut reps: Vec<Poset> = Vec::new();
            'candidate: for choice in 0u64..(1 << off_diag.len()) {
                let pairs: Vec<(usize, usize)> = off_diag
                    .iter()
                    .enumerate()
                    .filter(|&(bit, _)| choice >> bit & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                // Reject non-transitive candidates: closure must add nothing.
                let Ok(poset) = Poset::from_pairs(n, &pairs) else {
                    continue;
                };
                let closure_pairs = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| i != j && poset.le(i, j))
                    .count();
                if closure_pairs != pairs.len() {
                    continue;
                }
                if poset.least().is_none() {
                    continue;
                }
                for rep in &reps {
                    if crate::poset::isomorphic(rep, &poset).unwrap() {
                        continue 'candidate;
                    }
                }
                reps.push(poset);
            }
            reps.len()
        }
        for n in 1..=4 {
            let enumerated = enumerate_frames(n, None)
                .unwrap()
                .into_iter()
                .filter(|f| f.size() == n)
                .count();
            assert_eq!(enumerated, oracle_count(n), "rooted classes on {n} worlds");
        }
    }

    #[test]
    fn enumerated_frames_are_pairwise_nonisomorphic_by_brute_force() {
        fn brute_isomorphic(a: &Frame, b: &Frame) -> bool {
            if a.size() != b.size() {
                return false;
            }
            let n = a.size();
            let mut perm: Vec<usize> = (0..n).collect();
            fn search(perm: &mut Vec<usize>, k: usize, a: &Frame, b: &Frame) -> bool {
                if k == perm.len() {
                    return (0..perm.len())
                        .all(|x| (0..perm.len()).all(|y| a.le(x, y) == b.le(perm[x], perm[y])));
                }
                for i in k..perm.len() {
                    perm.swap(k, i);
                    if search(perm, k + 1, a, b) {
                        return true;
                    }
                    perm.swap(k, i);
                }
                false
            }
            search(&mut perm, 0, a, b)
        }
        let frames = enumerate_frames(4, None).unwrap();
        for i in 0..frames.len() {
            assert!(brute_isomorphic(&frames[i], &frames[i]));
            for j in (i + 1)..frames.len() {
                assert!(
                    !brute_isomorphic(&frames[i], &frames[j]),
                    "frames {i} and {j} are isomorphic"
                );
            }
        }
    }

    #[test]
    fn enumerated_frames_respect_topwidth_bound() {
        let all = enumerate_frames(5, None).unwrap();
        for bound in 1..=4 {
            let filtered = enumerate_frames(5, Some(bound)).unwrap();
            assert!(filtered.iter().all(|f| f.topwidth() <= bound));
            let expected = all.iter().filter(|f| f.topwidth() <= bound).count();
            assert_eq!(filtered.len(), expected);
        }
    }

    #[test]
    fn fast_validity_agrees_with_exhaustive_route() {
        let budget = Budget::unlimited();
        let mut formulas = vec![
            gen_phi(1).unwrap(),
            gen_phi(2).unwrap(),
            gen_sigma(1).unwrap(),
            gen_sigma(2).unwrap(),
        ];
        // Negated-variable formulas that are not schema instances.
        formulas.push(parse("~p1 -> ~~p2").unwrap());
        formulas.push(parse("~(~p1 & ~p2) | ~~p1").unwrap());
        for frame in enumerate_frames(4, None).unwrap() {
            for f in &formulas {
                assert_eq!(
                    frame_validates(&frame, f, &budget).unwrap(),
                    holds_in_frame(&frame, f, &budget).unwrap().holds(),
                    "disagreement on {f} over a {}-world frame",
                    frame.size()
                );
            }
        }
    }

    #[test]
    fn countermodel_search_examples() {
        let budget = Budget::default();
        let phi1 = gen_phi(1).unwrap();
        let cm = countermodel_search(
            &phi1,
            &SearchParams {
                max_size: 3,
                topwidth: None,
            },
            &budget,
        )
        .unwrap()
        .expect("the fork refutes the schema");
        assert_eq!(cm.model().frame().size(), 3);
        assert!(crate::poset::isomorphic(cm.model().frame().poset(), fork().poset()).unwrap());
        assert_eq!(cm.model().valuation().get(&1), Some(&0b010));
        assert_eq!(cm.world(), 0);

        assert!(countermodel_search(
            &parse("p1 -> p1").unwrap(),
            &SearchParams {
                max_size: 4,
                topwidth: None
            },
            &budget,
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn countermodel_search_for_phi2_needs_topwidth_three() {
        let budget = Budget::default();
        let phi2 = gen_phi(2).unwrap();
        assert!(countermodel_search(
            &phi2,
            &SearchParams {
                max_size: 5,
                topwidth: Some(2)
            },
            &budget,
        )
        .unwrap()
        .is_none());
        let cm = countermodel_search(
            &phi2,
            &SearchParams {
                max_size: 4,
                topwidth: Some(3),
            },
            &budget,
        )
        .unwrap()
        .expect("a three-top fan refutes the k = 2 schema");
        let frame = cm.model().frame();
        assert!(crate::poset::isomorphic(frame.poset(), Frame::fan(3).poset()).unwrap());
        assert_eq!(cm.model().valuation().get(&1), Some(&0b0010));
        assert_eq!(cm.model().valuation().get(&2), Some(&0b0100));
        assert_eq!(cm.world(), 0);
    }

    #[test]
    fn extract_antichain_examples() {
        let budget = Budget::default();
        let cm1 = countermodel_search(
            &gen_phi(1).unwrap(),
            &SearchParams {
                max_size: 3,
                topwidth: None,
            },
            &budget,
        )
        .unwrap()
        .unwrap();
        let a1 = extract_antichain(&cm1).unwrap();
        assert_eq!(a1.ground_size(), 1);
        assert_eq!(a1.element_lists(), vec![vec![1]]);

        let cm2 = countermodel_search(
            &gen_phi(2).unwrap(),
            &SearchParams {
                max_size: 4,
                topwidth: Some(3),
            },
            &budget,
        )
        .unwrap()
        .unwrap();
        let a2 = extract_antichain(&cm2).unwrap();
        assert_eq!(a2.ground_size(), 2);
        assert_eq!(a2.element_lists(), vec![vec![1], vec![2]]);
        assert_eq!(a2.len(), 2);
    }

    #[test]
    fn extract_antichain_rejects_other_formulas() {
        let m = model(Frame::chain(2), &[(1, 0b10)]);
        let cm = Countermodel::new(m, 0, parse("p1 | ~p1").unwrap()).unwrap();
        assert!(matches!(
            extract_antichain(&cm),
            Err(Error::NotCountermodel(_))
        ));
    }

    #[test]
    fn countermodel_constructor_rejects_forced_worlds() {
        let m = model(fork(), &[(1, 0b010)]);
        assert!(Countermodel::new(m, 1, parse("p1").unwrap()).is_err());
    }

    #[test]
    fn monotone_schema_chains_hold_on_small_frames() {
        // phi_k -> phi_{k+1} and sigma_k -> sigma_{k+1} hold on every rooted
        // frame with at most 5 worlds, k <= 3. A frame validating the
        // consequent validates the implication outright; the exhaustive
        // check covers the remaining frames.
        let budget = Budget::unlimited();
        for k in 1..=3u32 {
            for (name, a, b) in [
                ("phi", gen_phi(k).unwrap(), gen_phi(k + 1).unwrap()),
                ("sigma", gen_sigma(k).unwrap(), gen_sigma(k + 1).unwrap()),
            ] {
                let imp = Formula::implies(a, b.clone());
                for frame in enumerate_frames(5, None).unwrap() {
                    let ok = frame_validates(&frame, &b, &budget).unwrap()
                        || holds_in_frame(&frame, &imp, &budget).unwrap().holds();
                    assert!(
                        ok,
                        "{name}_{k} chain fails on a {}-world frame",
                        frame.size()
                    );
                }
            }
        }
    }

    #[test]
    fn smorynski_schemas_track_topwidth_at_desk_scale() {
        let budget = Budget::unlimited();
        for n in 1..=3u32 {
            let sigma = gen_sigma(n).unwrap();
            for frame in enumerate_frames(6, Some(n as usize)).unwrap() {
                assert!(
                    frame_validates(&frame, &sigma, &budget).unwrap(),
                    "sigma_{n} must hold at topwidth {}",
                    frame.topwidth()
                );
            }
            let cm = countermodel_search(
                &sigma,
                &SearchParams {
                    max_size: 6,
                    topwidth: Some(n as usize + 1),
                },
                &budget,
            )
            .unwrap();
            assert!(cm.is_some(), "sigma_{n} must fail at topwidth {}", n + 1);
            let cm = cm.unwrap();
            assert_eq!(cm.model().frame().topwidth(), n as usize + 1);
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tiny = Budget::new(10);
        let err = holds_in_frame(&Frame::fan(3), &gen_phi(2).unwrap(), &tiny).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { .. }));
    }

    #[test]
    fn persistence_and_root_sufficiency_on_random_models() {
        // Seeded linear congruential stream; no external entropy.
        let mut state = 0x5eed_cafe_f00d_u64;
        let mut next = move |bound: u64| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) % bound
        };
        let corpus: Vec<Formula> = vec![
            gen_phi(1).unwrap(),
            gen_phi(2).unwrap(),
            gen_sigma(1).unwrap(),
            parse("p1 | ~p1").unwrap(),
            parse("p1 -> p2 -> p1").unwrap(),
            parse("~(p1 & ~p1)").unwrap(),
            parse("(p1 -> p2) -> (~p2 -> ~p1)").unwrap(),
        ];
        for _ in 0..200 {
            let size = 1 + next(6) as usize;
            // Random naturally-labeled rooted poset.
            let mut pairs = vec![];
            for i in 1..size {
                for j in (i + 1)..size {
                    if next(2) == 1 {
                        pairs.push((i, j));
                    }
                }
            }
            for x in 1..size {
                pairs.push((0, x));
            }
            let frame = Frame::from_cover(size.max(1), &pairs, 0).unwrap();
            let mut valuation = BTreeMap::new();
            for v in 1..=3u32 {
                let mut mask = next(1 << size) & frame.poset().full_mask();
                // Upward closure.
                for x in iter_bits(mask).collect::<Vec<_>>() {
                    mask |= frame.poset().up_mask(x);
                }
                valuation.insert(v, mask);
            }
            let model = Model::new(frame, valuation).unwrap();
            for f in &corpus {
                let mask = model.forced_mask(f);
                for x in 0..model.frame().size() {
                    if mask >> x & 1 == 1 {
                        assert_eq!(
                            model.frame().poset().up_mask(x) & !mask,
                            0,
                            "persistence fails for {f}"
                        );
                    }
                }
                assert_eq!(
                    model.holds(f),
                    mask >> model.frame().root() & 1 == 1,
                    "root sufficiency fails for {f}"
                );
            }
        }
    }
}
