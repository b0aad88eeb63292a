// Exhaustive searches: merges, unavoidable witnesses, amalgamations, refinement.

use std::error::Error;

use permsplit::oracle::{
    amalgamation_search, merge_member, unavoidable_witness, MarkedPermutation, OracleColorer,
};
use permsplit::perm::perm;
use permsplit::splitters::{refine_colorer, SplittingSpec};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec: SplittingSpec = "132,213".parse()?;
    println!(
        "2413 into {spec}: {:?}",
        merge_member(&perm("2413"), &spec).map(|c| c.colors)
    );
    println!(
        "321 into 21,21: {:?}",
        merge_member(&perm("321"), &"2*21".parse()?)
    );

    let w = unavoidable_witness(&[perm("132")], &perm("12"), &perm("12"), 4)?;
    println!("forcing permutation in Av(132) for (12, 12): {w:?}");

    let r1 = MarkedPermutation::new(perm("12"), 1)?;
    let r2 = MarkedPermutation::new(perm("21"), 2)?;
    if let Some(a) = amalgamation_search(&[perm("132")], &r1, &r2, 5) {
        println!("amalgamation in Av(132): {}", serde_json::to_string(&a)?);
    }
    let r1 = MarkedPermutation::new(perm("12"), 2)?;
    let r2 = MarkedPermutation::new(perm("12"), 1)?;
    println!(
        "Av(123) amalgamation up to 7: {:?}",
        amalgamation_search(&[perm("123")], &r1, &r2, 7)
    );

    let colorer = OracleColorer::new("132,21".parse()?);
    let refined = refine_colorer(&perm("321"), 0, &colorer, &perm("2143"))?;
    println!("refined certificate: {}", serde_json::to_string(&refined)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
