// Splitting Av(1 ⊕ σ) by splitting reduced envelopes.

use std::error::Error;

use permsplit::perm::{enumerate_avoiders, perm};
use permsplit::splitters::{oneplus_split, Dilworth};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let sigma = perm("321");
    let base = Dilworth::new(3);
    let s = oneplus_split(&sigma, &base, &perm("3142"))?;
    let parts: Vec<String> = s.certificate.parts.iter().map(|p| p.to_compact()).collect();
    println!(
        "R = {}, colors {:?}, parts {parts:?}",
        s.reduced, s.certificate.colors
    );

    let mut copies = 0;
    let mut colors = 0;
    for rho in enumerate_avoiders(&[perm("1432")], 7) {
        let s = oneplus_split(&sigma, &base, &rho)?;
        copies = copies.max(s.copies);
        colors = colors.max(s.certificate.colors_used());
    }
    println!("Av_7(1432): at most {copies} copies of the base parts, {colors} classes used");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
