// Two-coloring 1324-avoiders into a 132-avoider and a 213-avoider.

use std::error::Error;

use permsplit::oracle::merge_check;
use permsplit::perm::{enumerate_avoiders, perm};
use permsplit::splitters::{dilworth_split, greedy_three_sum};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (one, two_one) = (perm("1"), perm("21"));
    let cert = greedy_three_sum(&one, &two_one, &one, &perm("2413"))?;
    println!("{}", serde_json::to_string(&cert)?);

    let subjects = enumerate_avoiders(&[perm("1324")], 7);
    let valid = subjects
        .iter()
        .map(|p| greedy_three_sum(&one, &two_one, &one, p))
        .filter(|c| c.as_ref().is_ok_and(merge_check))
        .count();
    println!(
        "valid certificates on Av_7(1324): {valid}/{}",
        subjects.len()
    );

    let d = dilworth_split(4, &perm("3142"))?;
    println!(
        "Dilworth coloring of 3142 into increasing runs: {:?}",
        d.colors
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
