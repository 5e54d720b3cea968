//! Finite Brouwer algebras: bounded distributive lattices carrying the
//! residual `a -> b = least { c : b <= a + c }` and the negation
//! `~a = a -> 1`.
//!
//! Truth is dual to the Heyting reading: a formula is satisfied when every
//! assignment of elements to its variables evaluates to the bottom element,
//! with conjunction read as lattice join, disjunction as meet, implication
//! as the residual and negation as residuation into the top.
//!
//! All structure is validated and tabulated when an algebra is constructed:
//! a malformed order is rejected with an error naming the first failed
//! property (not a lattice, not distributive, missing residual), and the
//! operation tables make every later lookup O(1).

use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::eval::{Compiled, LatticeTables};
use crate::formula::{negated_variable_skeleton, recognize_schema, Formula};
use crate::poset::{iter_bits, Poset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrouwerAlgebra {
    order: Poset,
    bottom: usize,
    top: usize,
    join: Vec<usize>,
    meet: Vec<usize>,
    arrow: Vec<usize>,
    neg: Vec<usize>,
    join_irreducibles: Vec<usize>,
    coatoms: Vec<usize>,
    top_antichain: Vec<usize>,
}

impl BrouwerAlgebra {
    /// Builds and validates an algebra from a generating relation: the
    /// reflexive-transitive closure of `leq` must be a bounded distributive
    /// lattice with the declared bottom and top, and every residual must
    /// exist.
    pub fn from_pairs(
        elements: usize,
        leq: &[(usize, usize)],
        bottom: usize,
        top: usize,
    ) -> Result<BrouwerAlgebra> {
        BrouwerAlgebra::from_order(Poset::from_pairs(elements, leq)?, bottom, top)
    }

    /// As [`BrouwerAlgebra::from_pairs`], starting from an already-closed
    /// order.
    pub fn from_order(order: Poset, bottom: usize, top: usize) -> Result<BrouwerAlgebra> {
        let m = order.size();
        if bottom >= m || top >= m {
            return Err(Error::BadBounds("bottom or top is out of range".into()));
        }
        if order.up_mask(bottom) != order.full_mask() {
            return Err(Error::BadBounds(format!(
                "declared bottom {bottom} is not the least element"
            )));
        }
        if order.down_mask(top) != order.full_mask() {
            return Err(Error::BadBounds(format!(
                "declared top {top} is not the greatest element"
            )));
        }

        let mut join = vec![0usize; m * m];
        let mut meet = vec![0usize; m * m];
        for a in 0..m {
            for b in 0..m {
                let uppers = order.up_mask(a) & order.up_mask(b);
                let Some(lub) = iter_bits(uppers).find(|&u| uppers & !order.up_mask(u) == 0) else {
                    return Err(Error::NotLattice(format!(
                        "elements {a} and {b} have no least upper bound"
                    )));
                };
                let lowers = order.down_mask(a) & order.down_mask(b);
                let Some(glb) = iter_bits(lowers).find(|&l| lowers & !order.down_mask(l) == 0)
                else {
                    return Err(Error::NotLattice(format!(
                        "elements {a} and {b} have no greatest lower bound"
                    )));
                };
                join[a * m + b] = lub;
                meet[a * m + b] = glb;
            }
        }

        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let left = meet[a * m + join[b * m + c]];
                    let right = join[meet[a * m + b] * m + meet[a * m + c]];
                    if left != right {
                        return Err(Error::NotDistributive(format!(
                            "inf({a}, sup({b}, {c})) = {left} but \
                             sup(inf({a}, {b}), inf({a}, {c})) = {right}"
                        )));
                    }
                }
            }
        }

        // arrow[a][b] = least c with b <= a + c, found by scanning the
        // candidate set. Existence follows from distributivity, but the
        // check stays: a missing residual is its own rejection.
        let mut arrow = vec![0usize; m * m];
        for a in 0..m {
            for b in 0..m {
                let mut candidates = 0u64;
                for c in 0..m {
                    if order.le(b, join[a * m + c]) {
                        candidates |= 1 << c;
                    }
                }
                let Some(least) =
                    iter_bits(candidates).find(|&c| candidates & !order.up_mask(c) == 0)
                else {
                    return Err(Error::MissingResidual(format!(
                        "{{ c : {b} <= sup({a}, c) }} has no least element"
                    )));
                };
                arrow[a * m + b] = least;
            }
        }
        let neg: Vec<usize> = (0..m).map(|a| arrow[a * m + top]).collect();

        let join_irreducibles: Vec<usize> = (0..m)
            .filter(|&a| {
                a != bottom
                    && (0..m).all(|x| {
                        (0..m).all(|y| {
                            !order.le(a, join[x * m + y]) || order.le(a, x) || order.le(a, y)
                        })
                    })
            })
            .collect();

        let coatoms: Vec<usize> = (0..m)
            .filter(|&a| {
                a != top && order.down_mask(top) & order.up_mask(a) == (1 << a) | (1 << top)
            })
            .collect();

        // The unique antichain of join-irreducibles joining to the top: its
        // maximal members.
        let top_antichain: Vec<usize> = join_irreducibles
            .iter()
            .copied()
            .filter(|&j| {
                join_irreducibles
                    .iter()
                    .all(|&other| other == j || !order.le(j, other))
            })
            .collect();

        Ok(BrouwerAlgebra {
            order,
            bottom,
            top,
            join,
            meet,
            arrow,
            neg,
            join_irreducibles,
            coatoms,
            top_antichain,
        })
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order.le(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b]
    }

    /// The residual: the least `c` with `b <= join(a, c)`.
    pub fn implication(&self, a: usize, b: usize) -> usize {
        self.arrow[a * self.size() + b]
    }

    /// `~a = a -> top`.
    pub fn negation(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// Nonbottom elements `a` with `a <= sup(x, y)` only when `a <= x` or
    /// `a <= y`.
    pub fn join_irreducibles(&self) -> &[usize] {
        &self.join_irreducibles
    }

    /// Elements covered by the top.
    pub fn coatoms(&self) -> &[usize] {
        &self.coatoms
    }

    /// The unique antichain of join-irreducibles whose join is the top; its
    /// length classifies the algebra for the validity theorems.
    pub fn top_antichain(&self) -> &[usize] {
        &self.top_antichain
    }

    /// Does `inf(x, y) = 0` force `x = 0` or `y = 0`?
    pub fn zero_meet_irreducible(&self) -> bool {
        let m = self.size();
        (0..m).all(|x| {
            (0..m).all(|y| {
                self.meet[x * m + y] != self.bottom || x == self.bottom || y == self.bottom
            })
        })
    }

    /// The unique antichain of join-irreducibles joining to `b`: the maximal
    /// join-irreducibles below it.
    pub fn join_decomposition(&self, b: usize) -> Vec<usize> {
        let below: Vec<usize> = self
            .join_irreducibles
            .iter()
            .copied()
            .filter(|&j| self.le(j, b))
            .collect();
        below
            .iter()
            .copied()
            .filter(|&j| below.iter().all(|&other| other == j || !self.le(j, other)))
            .collect()
    }

    /// Join of a set of elements (bottom for the empty set).
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// The antichain shortcut for the residual: if `x_set` is an antichain
    /// of join-irreducibles with join `b`, then `a -> b` is the join of the
    /// members not below `a`. Checked against its preconditions; the tabled
    /// [`BrouwerAlgebra::implication`] is the independent route.
    pub fn arrow_fast(&self, a: usize, b: usize, x_set: &[usize]) -> Result<usize> {
        let m = self.size();
        if a >= m || b >= m {
            return Err(Error::InvalidInput("element out of range".into()));
        }
        for &x in x_set {
            if x >= m {
                return Err(Error::InvalidInput("element out of range".into()));
            }
            if !self.join_irreducibles.contains(&x) {
                return Err(Error::InvalidInput(format!(
                    "element {x} is not join-irreducible"
                )));
            }
        }
        for (i, &x) in x_set.iter().enumerate() {
            for &y in &x_set[i + 1..] {
                if self.le(x, y) || self.le(y, x) {
                    return Err(Error::NotAntichain(format!(
                        "elements {x} and {y} are comparable"
                    )));
                }
            }
        }
        if self.join_all(x_set.iter().copied()) != b {
            return Err(Error::InvalidInput(
                "the given antichain does not join to the target".into(),
            ));
        }
        Ok(self.join_all(x_set.iter().copied().filter(|&x| !self.le(x, a))))
    }

    fn tables(&self) -> LatticeTables<'_> {
        LatticeTables {
            size: self.size(),
            join: &self.join,
            meet: &self.meet,
            arrow: &self.arrow,
            neg: &self.neg,
        }
    }

    /// Evaluates `f` under the dual interpretation.
    pub fn evaluate(&self, f: &Formula, assignment: &BTreeMap<u32, usize>) -> Result<usize> {
        let compiled = Compiled::new(f);
        let mut values = Vec::with_capacity(compiled.vars.len());
        for &v in &compiled.vars {
            let &value = assignment.get(&v).ok_or(Error::UnassignedVariable(v))?;
            if value >= self.size() {
                return Err(Error::InvalidInput(format!(
                    "element {value} out of range for p{v}"
                )));
            }
            values.push(value);
        }
        let mut scratch = Vec::new();
        Ok(compiled.eval_lattice(&self.tables(), &values, &mut scratch))
    }

    /// True iff every assignment evaluates `f` to the bottom element.
    ///
    /// Formulas whose variables occur only negated are quantified over the
    /// range of the negation map, and recognized schema instances over
    /// nondecreasing value tuples; [`BrouwerAlgebra::satisfies_exhaustive`]
    /// is the plain route kept as the oracle.
    pub fn satisfies(&self, f: &Formula, budget: &Budget) -> Result<bool> {
        Ok(self.find_refuting_assignment(f, budget)?.is_none())
    }

    /// Some assignment on which `f` does not evaluate to bottom, if one
    /// exists.
    pub fn find_refuting_assignment(
        &self,
        f: &Formula,
        budget: &Budget,
    ) -> Result<Option<BTreeMap<u32, usize>>> {
        let Some(skeleton) = negated_variable_skeleton(f) else {
            return self.refuting_assignment_exhaustive(f, budget);
        };
        // Quantify over the negation range; map each attained value back to
        // a witness pre-image to report the refutation in original terms.
        let mut range_rep: BTreeMap<usize, usize> = BTreeMap::new();
        for a in 0..self.size() {
            range_rep.entry(self.neg[a]).or_insert(a);
        }
        let values: Vec<usize> = range_rep.keys().copied().collect();
        let compiled = Compiled::new(&skeleton);
        let cost = compiled.nodes.len() as u64;
        let symmetric = recognize_schema(f).is_some();
        let k = compiled.vars.len();
        let mut indices = vec![0usize; k];
        let mut assignment = vec![0usize; k];
        let mut scratch = Vec::new();
        loop {
            budget.charge(cost)?;
            for (slot, &i) in indices.iter().enumerate() {
                assignment[slot] = values[i];
            }
            if compiled.eval_lattice(&self.tables(), &assignment, &mut scratch) != self.bottom {
                let witness: BTreeMap<u32, usize> = compiled
                    .vars
                    .iter()
                    .zip(&assignment)
                    .map(|(&v, &value)| (v, range_rep[&value]))
                    .collect();
                debug_assert_ne!(self.evaluate(f, &witness)?, self.bottom);
                return Ok(Some(witness));
            }
            let more = if symmetric {
                advance_nondecreasing(&mut indices, values.len())
            } else {
                advance(&mut indices, values.len())
            };
            if !more {
                return Ok(None);
            }
        }
    }

    /// The oracle route: every assignment, in odometer order over ascending
    /// variables with the last one cycling fastest.
    pub fn satisfies_exhaustive(&self, f: &Formula, budget: &Budget) -> Result<bool> {
        Ok(self.refuting_assignment_exhaustive(f, budget)?.is_none())
    }

    fn refuting_assignment_exhaustive(
        &self,
        f: &Formula,
        budget: &Budget,
    ) -> Result<Option<BTreeMap<u32, usize>>> {
        let compiled = Compiled::new(f);
        let cost = compiled.nodes.len() as u64;
        let mut indices = vec![0usize; compiled.vars.len()];
        let mut scratch = Vec::new();
        loop {
            budget.charge(cost)?;
            if compiled.eval_lattice(&self.tables(), &indices, &mut scratch) != self.bottom {
                let witness = compiled
                    .vars
                    .iter()
                    .zip(&indices)
                    .map(|(&v, &value)| (v, value))
                    .collect();
                return Ok(Some(witness));
            }
            if !advance(&mut indices, self.size()) {
                return Ok(None);
            }
        }
    }
}

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
