use crate::error::{precondition, Error, Result};
use crate::perm::{avoids, contains, Permutation};

use super::{Colorer, ColoringCertificate};

/// Replaces a decomposable part `π₁' ⊕ π₁''` of a splitting of `Av(pi)` by
/// one of its summands.
///
/// `colorer` is run on `p ⊕ p`. If the bottom-left copy has no `π₁'` in the
/// refined class, its coloring is returned with that part relabelled `π₁'`;
/// otherwise the top-right copy has no `π₁''` there and is returned with the
/// part relabelled `π₁''`. The bottom-left copy wins ties.
pub fn refine_colorer(
    pi: &Permutation,
    part_index: usize,
    colorer: &dyn Colorer,
    p: &Permutation,
) -> Result<ColoringCertificate> {
    if pi.is_sum_decomposable() {
        return Err(precondition(format!("{pi} is sum-decomposable")));
    }
    let parts = colorer.parts();
    let target = parts
        .get(part_index)
        .ok_or_else(|| precondition(format!("part index {part_index} out of range")))?;
    let (first, second) = target
        .sum_decompose()
        .ok_or_else(|| precondition(format!("part {target} is sum-indecomposable")))?;
    if !avoids(p, pi) {
        return Err(precondition(format!("{p} contains {pi}")));
    }

    let doubled = p.direct_sum(p);
    let cert = colorer.certify(&doubled)?;
    if cert.colors.len() != doubled.len() || cert.colors.iter().any(|&c| c >= parts.len()) {
        return Err(Error::InvalidColorer(
            "color vector has the wrong shape".into(),
        ));
    }
    if let Some((c, occ)) = cert.first_violation() {
        return Err(Error::InvalidColorer(format!(
            "class {c} of {doubled} contains {} at {occ:?}",
            parts[c]
        )));
    }

    let n = p.len();
    let class_values = |range: std::ops::Range<usize>| -> Permutation {
        let idx: Vec<usize> = range.filter(|&i| cert.colors[i] == part_index).collect();
        doubled.restrict(&idx)
    };
    let (colors, relabel) = if contains(&first, &class_values(0..n)).is_none() {
        (cert.colors[..n].to_vec(), first)
    } else if contains(&second, &class_values(n..2 * n)).is_none() {
        (cert.colors[n..].to_vec(), second)
    } else {
        return Err(Error::InvalidColorer(format!(
            "both copies of {p} violate the refined part {target}"
        )));
    };
    let mut parts = parts;
    parts[part_index] = relabel;
    Ok(ColoringCertificate {
        subject: p.clone(),
        parts,
        colors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;
    use crate::splitters::{Dilworth, FnColorer};

    /// `{Av(132), Av(21)}` splits `Av(321)`: the Dilworth 2-coloring with the
    /// first increasing class relabelled to a weaker part.
    fn weakened_dilworth() -> FnColorer<impl Fn(&Permutation) -> Result<Vec<usize>>> {
        FnColorer::new(vec![perm("132"), perm("21")], |p: &Permutation| {
            Dilworth::new(3).color(p)
        })
    }

    #[test]
    fn empty_subject() {
        let c =
            refine_colorer(&perm("321"), 0, &weakened_dilworth(), &Permutation::empty()).unwrap();
        assert!(c.colors.is_empty());
    }

    #[test]
    fn refined_certificates_are_valid() {
        let colorer = weakened_dilworth();
        for n in 0..=6 {
            for p in Permutation::all_of_order(n).filter(|p| avoids(p, &perm("321"))) {
                let c = refine_colorer(&perm("321"), 0, &colorer, &p).unwrap();
                assert!(c.parts[0] == perm("1") || c.parts[0] == perm("21"));
                assert!(c.first_violation().is_none(), "{c:?}");
            }
        }
    }

    #[test]
    fn broken_colorer_is_reported() {
        let broken = FnColorer::new(vec![perm("12"), perm("21")], |p: &Permutation| {
            Ok(vec![0; p.len()])
        });
        let err = refine_colorer(&perm("321"), 0, &broken, &perm("12")).unwrap_err();
        assert!(matches!(err, Error::InvalidColorer(_)));
    }

    #[test]
    fn preconditions() {
        let colorer = weakened_dilworth();
        assert!(refine_colorer(&perm("12"), 0, &colorer, &perm("1")).is_err());
        assert!(refine_colorer(&perm("321"), 1, &colorer, &perm("1")).is_err());
        assert!(refine_colorer(&perm("321"), 0, &colorer, &perm("321")).is_err());
    }
}
