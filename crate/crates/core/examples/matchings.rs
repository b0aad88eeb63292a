// Ordered matchings: permutation matchings, containment and structure.

use std::error::Error;

use permsplit::matching::{m_of, matching_contains, perm_of};
use permsplit::perm::perm;
use permsplit::Matching;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let m = m_of(&perm("2413"));
    println!("m(2413) = {m}, crossings = {}", m.crossing_count());
    println!("decoded back: {:?}", perm_of(&m).map(|p| p.to_string()));

    let n: Matching = "1-3 2-5 4-7 6-8".parse()?;
    println!("{n}: connected {}, weight {}", n.is_connected(), n.weight());
    let arcs = n.arcs();
    for (i, level) in n.levels()?.iter().enumerate() {
        let members: Vec<String> = level
            .iter()
            .map(|&a| format!("{}-{}", arcs[a].left, arcs[a].right))
            .collect();
        println!("  level {i}: {}", members.join(" "));
    }
    println!(
        "contains m(21): {}",
        matching_contains(&m_of(&perm("21")), &n)
    );
    println!(
        "contains m(321): {}",
        matching_contains(&m_of(&perm("321")), &n)
    );

    let u: Matching = "1-2 3-5 4-6".parse()?;
    let blocks: Vec<String> = u.blocks().iter().map(Matching::to_string).collect();
    println!("blocks of {u}: {blocks:?}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
