// Envelope matchings, their reduced form, and tangling.

use std::error::Error;

use permsplit::envelope::{
    decode_envelope, envelope_of, find_tangling, matching_to_perm, reduced_envelope,
};
use permsplit::perm::perm;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for text in ["132", "2413", "3142"] {
        let p = perm(text);
        let e = envelope_of(&p);
        println!(
            "E({p}) = {}  path {}",
            e.arcs,
            permsplit::envelope::path_string(&e.path)
        );
        println!("R({p}) = {}", reduced_envelope(&p));
        assert_eq!(decode_envelope(&e.arcs), Some(p));
    }

    // inserting a new LR-minimum is a tangling of the envelope
    let (rho, tau) = (perm("231"), perm("3412"));
    let interval = find_tangling(&envelope_of(&rho).arcs, &envelope_of(&tau).arcs);
    println!("E({tau}) from E({rho}) by tangling in {interval:?}");

    let r = "1-3 2-4".parse()?;
    let p = matching_to_perm(&r);
    println!("a permutation with reduced envelope {r}: {p}");
    println!("{}", serde_json::to_string(&envelope_of(&p))?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
