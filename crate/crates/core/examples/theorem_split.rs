// Splittings of Av(π) for decomposable π, checked exhaustively.

use std::error::Error;

use permsplit::constructions::{classify_pattern, theorem_split};
use permsplit::oracle::verify_splitting;
use permsplit::perm::perm;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for text in ["2143", "1324", "1342", "3124", "4231"] {
        let p = perm(text);
        let c = classify_pattern(&p);
        match theorem_split(&p) {
            Ok(t) => {
                println!("{}", serde_json::to_string(&t)?);
                let report = verify_splitting(std::slice::from_ref(&p), &t.spec, 6, Some(&t));
                println!("  {report}");
            }
            Err(e) => println!("{p}: {:?} ({}) - {e}", c.verdict, c.reason),
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
