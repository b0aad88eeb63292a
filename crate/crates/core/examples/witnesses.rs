// The matchings N⁺, N⁻, M' and the permutations τ(N).

use std::error::Error;

use permsplit::constructions::{m_plus, m_prime, tau_of, WitnessPair};
use permsplit::matching::m_of;
use permsplit::perm::perm;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let sigma = perm("2413");
    println!("M  = {}", m_of(&sigma));
    println!("M⁺ = {}", m_plus(&m_of(&sigma))?);
    println!("M' = {}", m_prime(&sigma)?);

    for text in ["231", "321", "2413"] {
        let w = WitnessPair::new(&perm(text))?;
        println!("σ = {text}: N⁺ = {}, N⁻ = {}", w.n_plus, w.n_minus);
        println!(
            "  |τ⁺| = {}, |τ⁻| = {}",
            w.tau_plus.len(),
            w.tau_minus.len()
        );
    }
    println!(
        "τ(1-4 2-3) for σ = 21: {}",
        tau_of(&"1-4 2-3".parse()?, &perm("21"))?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
