// Containment, sums, inflation and class enumeration.

use std::error::Error;

use permsplit::perm::{avoiders_up_to, contains, inflate, perm};
use permsplit::Permutation;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let host: Permutation = "2413".parse()?;
    let pattern = perm("132");
    match contains(&pattern, &host) {
        Some(e) => println!("{pattern} occurs in {host} at {:?}", e.one_based()),
        None => println!("{host} avoids {pattern}"),
    }

    let sum = perm("21").direct_sum(&perm("1"));
    let skew = perm("1").skew_sum(&perm("12"));
    println!("21 ⊕ 1 = {sum}, 1 ⊖ 12 = {skew}");
    println!("components of 1324: {:?}", perm("1324").sum_components());

    let inflated = inflate(&perm("21"), &[perm("12"), perm("1")])?;
    println!("21[12, 1] = {inflated}, simple: {}", inflated.is_simple());
    println!("2413 simple: {}", host.is_simple());

    let levels = avoiders_up_to(&[perm("1324")], 7);
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    println!("|Av_n(1324)| for n = 0..7: {counts:?}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
