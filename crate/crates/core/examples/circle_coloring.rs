// Coloring triangle-free circle graphs through the matching splitter.

use std::error::Error;

use permsplit::matching::{crosses, m_of, matching_contains};
use permsplit::perm::perm;
use permsplit::splitters::circle_color;
use permsplit::Matching;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let m: Matching = "1-3 2-5 4-7 6-9 8-10".parse()?;
    let c = circle_color(&m, 3)?;
    println!("{}", serde_json::to_string(&c)?);

    let j3 = m_of(&perm("321"));
    let mut worst = 0;
    for k in 0..=5 {
        for m in Matching::all_with_arcs(k)
            .into_iter()
            .filter(|m| !matching_contains(&j3, m))
        {
            let c = circle_color(&m, 3)?;
            let arcs = m.arcs();
            for i in 0..arcs.len() {
                for j in i + 1..arcs.len() {
                    assert!(!crosses(arcs[i], arcs[j]) || c.colors[i] != c.colors[j]);
                }
            }
            worst = worst.max(c.num_colors);
        }
    }
    println!("most colors used on triangle-free matchings with ≤ 5 arcs: {worst}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
