//! Find the smallest countermodel of the second testability schema and read
//! off the antichain it certifies.

use wlem::budget::Budget;
use wlem::formula::gen_phi;
use wlem::kripke::{countermodel_search, extract_antichain, SearchParams};

fn main() -> wlem::Result<()> {
    let budget = Budget::default();
    let phi2 = gen_phi(2)?;
    let params = SearchParams {
        max_size: 4,
        topwidth: Some(3),
    };
    if let Some(cm) = countermodel_search(&phi2, &params, &budget)? {
        println!("refuted on {} worlds", cm.model().frame().size());
        let antichain = extract_antichain(&cm)?;
        assert_eq!(antichain.len(), 2);
        println!("certified antichain: {:?}", antichain.element_lists());
    }
    Ok(())
}
