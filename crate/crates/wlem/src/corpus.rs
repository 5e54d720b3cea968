//! A fixed formula corpus used by the theory-agreement checks and tests:
//! ten intuitionistic theorems, five classically-but-not-intuitionistically
//! valid formulas, and the first few generated schemas.

use crate::formula::{gen_phi, gen_sigma, parse, Formula};

fn must(text: &str) -> Formula {
    parse(text).expect("corpus formulas are well formed")
}

/// Ten theorems of intuitionistic propositional logic; every frame and every
/// Brouwer algebra validates each of them.
pub fn ipc_theorems() -> Vec<Formula> {
    [
        "p1 -> p1",
        "p1 -> p2 -> p1",
        "(p1 -> p2 -> p3) -> (p1 -> p2) -> p1 -> p3",
        "p1 & p2 -> p1",
        "p1 -> p1 | p2",
        "(p1 -> p3) -> (p2 -> p3) -> p1 | p2 -> p3",
        "(p1 -> p2) -> ~p2 -> ~p1",
        "~~(p1 | ~p1)",
        "p1 & (p1 -> p2) -> p2",
        "~(p1 & ~p1)",
    ]
    .iter()
    .map(|s| must(s))
    .collect()
}

/// Five formulas valid classically but not intuitionistically: excluded
/// middle, double-negation elimination, Peirce's law, linearity, and the
/// splitting De Morgan law.
pub fn classical_only() -> Vec<Formula> {
    [
        "p1 | ~p1",
        "~~p1 -> p1",
        "((p1 -> p2) -> p1) -> p1",
        "(p1 -> p2) | (p2 -> p1)",
        "~(p1 & p2) -> ~p1 | ~p2",
    ]
    .iter()
    .map(|s| must(s))
    .collect()
}

/// The full 20-formula corpus: the ten theorems, the five classical-only
/// formulas, the first three testability schemas and the first two topwidth
/// schemas.
pub fn standard_corpus() -> Vec<Formula> {
    let mut out = ipc_theorems();
    out.extend(classical_only());
    for k in 1..=3 {
        out.push(gen_phi(k).expect("k >= 1"));
    }
    for k in 1..=2 {
        out.push(gen_sigma(k).expect("k >= 1"));
    }
    out
}
