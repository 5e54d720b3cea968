//! Shared formula evaluation arena.
//!
//! A formula is flattened once into a postorder array with common subterms
//! merged; the same arena is then evaluated either over a Kripke frame
//! (computing, per subformula, the bitmask of worlds forcing it) or over a
//! Brouwer algebra (computing the element denoted under the dual reading of
//! the connectives).

use std::collections::HashMap;

use crate::formula::Formula;
use crate::poset::Poset;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Var(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    Not(usize),
}

pub(crate) struct Compiled {
    pub(crate) nodes: Vec<Node>,
    pub(crate) root: usize,
    /// Sorted variable indices; `Node::Var` holds a slot into this list.
    pub(crate) vars: Vec<u32>,
}

impl Compiled {
    pub(crate) fn new(f: &Formula) -> Compiled {
        let vars: Vec<u32> = f.vars().into_iter().collect();
        let mut nodes = Vec::new();
        let mut memo = HashMap::new();
        let root = intern(f, &vars, &mut nodes, &mut memo);
        Compiled { nodes, root, vars }
    }

    /// Budget units for one frame evaluation: (world, subformula) pairs.
    pub(crate) fn frame_cost(&self, poset: &Poset) -> u64 {
        self.nodes.len() as u64 * poset.size() as u64
    }

    /// Worlds forcing the root, given one up-set per variable slot. The five
    /// forcing clauses appear once each: a variable holds on its value, the
    /// binary connectives act pointwise, and an implication or negation
    /// holds at a world iff no world above it witnesses the failure.
    pub(crate) fn eval_frame(
        &self,
        poset: &Poset,
        assignment: &[u64],
        scratch: &mut Vec<u64>,
    ) -> u64 {
        scratch.clear();
        scratch.reserve(self.nodes.len());
        let size = poset.size();
        for node in &self.nodes {
            let mask = match *node {
                Node::Var(slot) => assignment[slot],
                Node::And(a, b) => scratch[a] & scratch[b],
                Node::Or(a, b) => scratch[a] | scratch[b],
                Node::Imp(a, b) => {
                    let bad = scratch[a] & !scratch[b];
                    above_free(poset, bad, size)
                }
                Node::Not(a) => above_free(poset, scratch[a], size),
            };
            scratch.push(mask);
        }
        scratch[self.root]
    }

    /// Element denoted in a Brouwer algebra under the dual interpretation:
    /// conjunction is lattice join, disjunction is lattice meet, implication
    /// is the residual, negation is residuation into the top.
    pub(crate) fn eval_lattice(
        &self,
        tables: &LatticeTables<'_>,
        assignment: &[usize],
        scratch: &mut Vec<usize>,
    ) -> usize {
        scratch.clear();
        scratch.reserve(self.nodes.len());
        let m = tables.size;
        for node in &self.nodes {
            let value = match *node {
                Node::Var(slot) => assignment[slot],
                Node::And(a, b) => tables.join[scratch[a] * m + scratch[b]],
                Node::Or(a, b) => tables.meet[scratch[a] * m + scratch[b]],
                Node::Imp(a, b) => tables.arrow[scratch[a] * m + scratch[b]],
                Node::Not(a) => tables.neg[scratch[a]],
            };
            scratch.push(value);
        }
        scratch[self.root]
    }
}

/// Worlds whose cone avoids `bad`.
fn above_free(poset: &Poset, bad: u64, size: usize) -> u64 {
    let mut m = 0;
    for x in 0..size {
        if poset.up_mask(x) & bad == 0 {
            m |= 1 << x;
        }
    }
    m
}

pub(crate) struct LatticeTables<'a> {
    pub(crate) size: usize,
    pub(crate) join: &'a [usize],
    pub(crate) meet: &'a [usize],
    pub(crate) arrow: &'a [usize],
    pub(crate) neg: &'a [usize],
}

fn intern(
    f: &Formula,
    vars: &[u32],
    nodes: &mut Vec<Node>,
    memo: &mut HashMap<Node, usize>,
) -> usize {
    let node = match f {
        Formula::Var(i) => Node::Var(vars.binary_search(i).expect("var collected")),
        Formula::And(a, b) => {
            let (ra, rb) = (intern(a, vars, nodes, memo), intern(b, vars, nodes, memo));
            Node::And(ra, rb)
        }
        Formula::Or(a, b) => {
            let (ra, rb) = (intern(a, vars, nodes, memo), intern(b, vars, nodes, memo));
            Node::Or(ra, rb)
        }
        Formula::Implies(a, b) => {
            let (ra, rb) = (intern(a, vars, nodes, memo), intern(b, vars, nodes, memo));
            Node::Imp(ra, rb)
        }
        Formula::Not(a) => Node::Not(intern(a, vars, nodes, memo)),
    };
    *memo.entry(node).or_insert_with(|| {
        nodes.push(node);
        nodes.len() - 1
    })
}
