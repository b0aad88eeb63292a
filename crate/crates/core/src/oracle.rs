//! Exhaustive checks that stand apart from the constructive splitters: merge
//! validation and membership, splitting sweeps, unavoidability witnesses and
//! one-point amalgamation search.

use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{m_of, Matching};
use crate::perm::{avoiders_up_to, contains, for_each_embedding, Embedding, Permutation};
use crate::splitters::{Colorer, ColoringCertificate, SplittingSpec};

/// Something whose color classes can be tested against part patterns.
pub trait MergeSubject {
    fn size(&self) -> usize;

    /// An occurrence of `part` inside the sub-object on `class`, as indices
    /// into `self`.
    fn occurrence(&self, class: &[usize], part: &Permutation) -> Option<Vec<usize>>;
}

impl MergeSubject for Permutation {
    fn size(&self) -> usize {
        self.len()
    }

    fn occurrence(&self, class: &[usize], part: &Permutation) -> Option<Vec<usize>> {
        contains(part, &self.restrict(class))
            .map(|e| e.positions.iter().map(|&i| class[i]).collect())
    }
}

impl MergeSubject for Matching {
    fn size(&self) -> usize {
        self.len()
    }

    /// Brute force over all `|part|`-subsets of the class.
    fn occurrence(&self, class: &[usize], part: &Permutation) -> Option<Vec<usize>> {
        let target = m_of(part);
        let k = part.len();
        if k > class.len() {
            return None;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let chosen: Vec<usize> = idx.iter().map(|&i| class[i]).collect();
            if self.sub(&chosen) == target {
                return Some(chosen);
            }
            // next k-combination of 0..class.len()
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if idx[i] != i + class.len() - k {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

/// A color class that contains its forbidden pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub color: usize,
    /// 0-based indices into the subject.
    pub occurrence: Vec<usize>,
}

/// Every offending class of `cert` with its first occurrence found. A
/// certificate with the wrong shape reports a violation with no occurrence.
pub fn merge_violations<S: MergeSubject>(cert: &ColoringCertificate<S>) -> Vec<Violation> {
    if cert.colors.len() != cert.subject.size() {
        return vec![Violation {
            color: usize::MAX,
            occurrence: Vec::new(),
        }];
    }
    if let Some(&c) = cert.colors.iter().find(|&&c| c >= cert.parts.len()) {
        return vec![Violation {
            color: c,
            occurrence: Vec::new(),
        }];
    }
    (0..cert.parts.len())
        .filter_map(|c| {
            let class = cert.class(c);
            cert.subject
                .occurrence(&class, &cert.parts[c])
                .map(|occurrence| Violation {
                    color: c,
                    occurrence,
                })
        })
        .collect()
}

/// True iff every color class avoids its part pattern.
pub fn merge_check<S: MergeSubject>(cert: &ColoringCertificate<S>) -> bool {
    merge_violations(cert).is_empty()
}

/// Searches for a coloring of `p` against `spec`, assigning elements left
/// to right and pruning as soon as the newest element completes a forbidden
/// occurrence. Identical parts are used in order to avoid symmetric branches.
pub fn merge_member(p: &Permutation, spec: &SplittingSpec) -> Option<ColoringCertificate> {
    let parts = spec.parts();
    let mut search = MergeSearch {
        values: p.values(),
        parts,
        twin: (0..parts.len())
            .map(|c| (0..c).rev().find(|&d| parts[d] == parts[c]))
            .collect(),
        classes: vec![Vec::new(); parts.len()],
        colors: Vec::with_capacity(p.len()),
    };
    search.run().then(|| ColoringCertificate {
        subject: p.clone(),
        parts: parts.to_vec(),
        colors: search.colors,
    })
}

struct MergeSearch<'a> {
    values: &'a [u32],
    parts: &'a [Permutation],
    /// Previous part with the same pattern.
    twin: Vec<Option<usize>>,
    classes: Vec<Vec<u32>>,
    colors: Vec<usize>,
}

impl MergeSearch<'_> {
    fn run(&mut self) -> bool {
        let i = self.colors.len();
        if i == self.values.len() {
            return true;
        }
        let v = self.values[i];
        for c in 0..self.parts.len() {
            if let Some(d) = self.twin[c] {
                if self.classes[d].is_empty() {
                    continue;
                }
            }
            if completes(&self.parts[c], &self.classes[c], v) {
                continue;
            }
            self.classes[c].push(v);
            self.colors.push(c);
            if self.run() {
                return true;
            }
            self.colors.pop();
            self.classes[c].pop();
        }
        false
    }
}

/// Whether appending `v` to `class` (which avoids `part`) creates an
/// occurrence of `part`; such an occurrence must end at `v`.
fn completes(part: &Permutation, class: &[u32], v: u32) -> bool {
    let k = part.len();
    if k == 0 {
        return true;
    }
    if k > class.len() + 1 {
        return false;
    }
    let q = part.values();
    let head = Permutation::standardize(&q[..k - 1]);
    let prefix = Permutation::standardize(class);
    let last = q[k - 1];
    for_each_embedding(&head, &prefix, |pos| {
        let fits = pos
            .iter()
            .zip(q)
            .all(|(&j, &qv)| (class[j] < v) == (qv < last));
        if fits {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .is_break()
}

/// A [`Colorer`] that finds certificates by exhaustive search.
#[derive(Clone, Debug)]
pub struct OracleColorer {
    spec: SplittingSpec,
}

impl OracleColorer {
    pub fn new(spec: SplittingSpec) -> Self {
        Self { spec }
    }
}

impl Colorer for OracleColorer {
    fn parts(&self) -> Vec<Permutation> {
        self.spec.parts().to_vec()
    }

    fn color(&self, p: &Permutation) -> Result<Vec<usize>> {
        merge_member(p, &self.spec)
            .map(|c| c.colors)
            .ok_or_else(|| Error::Precondition(format!("{p} does not merge into {}", self.spec)))
    }
}

/// A subject the splitting failed on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub subject: Permutation,
    pub detail: String,
    /// Offending classes of the constructive certificate, when one was tried.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
}

/// Outcome of [`verify_splitting`]; passes iff `failures` is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub max_colors_used: usize,
    /// Subjects where the constructive splitter failed and the exhaustive
    /// search had to be used.
    pub fallbacks: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.max_colors_used = self.max_colors_used.max(other.max_colors_used);
        self.fallbacks += other.fallbacks;
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "checked {}, {} failures, at most {} colors",
            self.checked,
            self.failures.len(),
            self.max_colors_used
        )
    }
}

/// Checks that every permutation of `Av(class_basis)` of order at most
/// `n_max` merges into `spec`. With a `splitter`, its certificate is
/// validated first and the exhaustive search runs only when it fails.
pub fn verify_splitting(
    class_basis: &[Permutation],
    spec: &SplittingSpec,
    n_max: usize,
    splitter: Option<&(dyn Colorer + Sync)>,
) -> VerificationReport {
    let subjects: Vec<Permutation> = avoiders_up_to(class_basis, n_max)
        .into_iter()
        .flatten()
        .collect();
    subjects
        .par_iter()
        .map(|p| verify_one(p, spec, splitter))
        .reduce(VerificationReport::default, VerificationReport::merge)
}

fn verify_one(
    p: &Permutation,
    spec: &SplittingSpec,
    splitter: Option<&(dyn Colorer + Sync)>,
) -> VerificationReport {
    let mut report = VerificationReport {
        checked: 1,
        ..Default::default()
    };
    let mut violations = Vec::new();
    if let Some(s) = splitter {
        match s.certify(p) {
            Ok(cert) if cert.parts == spec.parts() => {
                violations = merge_violations(&cert);
                if violations.is_empty() {
                    report.max_colors_used = cert.colors_used();
                    return report;
                }
            }
            _ => {}
        }
        report.fallbacks = 1;
    }
    match merge_member(p, spec) {
        Some(cert) => report.max_colors_used = cert.colors_used(),
        None => report.failures.push(Failure {
            subject: p.clone(),
            detail: format!("{p} does not merge into {spec}"),
            violations,
        }),
    }
    report
}

/// Every red-blue coloring of `sigma` has a red `tau` or a blue `pi`,
/// decided by trying all `2^n` colorings.
pub fn forces_red_or_blue(sigma: &Permutation, tau: &Permutation, pi: &Permutation) -> bool {
    let n = sigma.len();
    (0u64..1 << n).all(|mask| {
        let (red, blue): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| mask >> i & 1 == 1);
        contains(tau, &sigma.restrict(&red)).is_some()
            || contains(pi, &sigma.restrict(&blue)).is_some()
    })
}

/// The least `σ ∈ Av(class_basis)` (by size, then lexicographically) with
/// `|σ| ≤ size_bound` such that every red-blue coloring of `σ` has a red
/// `tau` or a blue `pi`.
///
/// Candidates are screened with [`merge_member`] and confirmed by the
/// independent `2^n` enumeration of [`forces_red_or_blue`].
pub fn unavoidable_witness(
    class_basis: &[Permutation],
    tau: &Permutation,
    pi: &Permutation,
    size_bound: usize,
) -> Result<Option<Permutation>> {
    if size_bound > 20 {
        return Err(Error::Precondition(
            "size bound above 20 is infeasible".into(),
        ));
    }
    let spec = SplittingSpec::new(vec![tau.clone(), pi.clone()])?;
    for level in avoiders_up_to(class_basis, size_bound) {
        for sigma in level {
            if merge_member(&sigma, &spec).is_none() {
                if !forces_red_or_blue(&sigma, tau, pi) {
                    return Err(Error::Verification(format!(
                        "witness {sigma} failed the exhaustive recheck"
                    )));
                }
                return Ok(Some(sigma));
            }
        }
    }
    Ok(None)
}

/// A permutation with one distinguished element, given by its 1-based
/// position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPermutation {
    pub perm: Permutation,
    pub mark: usize,
}

impl MarkedPermutation {
    pub fn new(perm: Permutation, mark: usize) -> Result<Self> {
        if mark == 0 || mark > perm.len() {
            return Err(Error::Precondition(format!(
                "mark {mark} outside 1..={}",
                perm.len()
            )));
        }
        Ok(Self { perm, mark })
    }
}

/// A joint embedding of two marked permutations identifying their marks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Amalgamation {
    pub sigma: Permutation,
    pub first: Embedding,
    pub second: Embedding,
}

/// The first `σ ∈ Av(class_basis)` with `|σ| ≤ size_bound` (by size, then
/// lexicographically) containing `r1` and `r2` so that both marks land on
/// the same element. `None` only means nothing exists up to the bound.
pub fn amalgamation_search(
    class_basis: &[Permutation],
    r1: &MarkedPermutation,
    r2: &MarkedPermutation,
    size_bound: usize,
) -> Option<Amalgamation> {
    let start = r1.perm.len().max(r2.perm.len());
    avoiders_up_to(class_basis, size_bound)
        .into_iter()
        .skip(start)
        .flatten()
        .find_map(|sigma| amalgamate_in(&sigma, r1, r2))
}

fn amalgamate_in(
    sigma: &Permutation,
    r1: &MarkedPermutation,
    r2: &MarkedPermutation,
) -> Option<Amalgamation> {
    let mut found = None;
    let _ = for_each_embedding(&r1.perm, sigma, |g1| {
        let target = g1[r1.mark - 1];
        for_each_embedding(&r2.perm, sigma, |g2| {
            if g2[r2.mark - 1] == target {
                found = Some(Amalgamation {
                    sigma: sigma.clone(),
                    first: Embedding {
                        positions: g1.to_vec(),
                    },
                    second: Embedding {
                        positions: g2.to_vec(),
                    },
                });
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
    });
    found
}

/// Colors an element of `sigma` blue (1) iff some embedding of `r1` sends
/// its mark there, red (0) otherwise. Parts are `[r1.perm, blue_part]`; the
/// red class always avoids `r1.perm`, and the blue class avoids `blue_part`
/// whenever `sigma` has no amalgamation of `r1` with `(blue_part, mark)`.
pub fn ama_coloring(
    sigma: &Permutation,
    r1: &MarkedPermutation,
    blue_part: &Permutation,
) -> ColoringCertificate {
    let mut blue = vec![false; sigma.len()];
    let _ = for_each_embedding(&r1.perm, sigma, |g| {
        blue[g[r1.mark - 1]] = true;
        ControlFlow::Continue(())
    });
    ColoringCertificate {
        subject: sigma.clone(),
        parts: vec![r1.perm.clone(), blue_part.clone()],
        colors: blue.into_iter().map(usize::from).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::matching;
    use crate::perm::{avoids, perm};
    use crate::splitters::greedy_three_sum;

    fn spec(s: &str) -> SplittingSpec {
        s.parse().unwrap()
    }

    #[test]
    fn merge_check_examples() {
        let one = perm("1");
        let c = greedy_three_sum(&one, &perm("21"), &one, &perm("2413")).unwrap();
        assert!(merge_check(&c));
        let bad = ColoringCertificate {
            subject: perm("321"),
            parts: vec![perm("21")],
            colors: vec![0; 3],
        };
        assert!(!merge_check(&bad));
        assert_eq!(merge_violations(&bad)[0].occurrence, vec![0, 1]);
        let empty = ColoringCertificate {
            subject: Permutation::empty(),
            parts: vec![perm("1")],
            colors: vec![],
        };
        assert!(merge_check(&empty));
    }

    #[test]
    fn matching_merge_check() {
        let m = matching("1-3 2-4 5-6");
        let ok = ColoringCertificate {
            subject: m.clone(),
            parts: vec![perm("21"), perm("21")],
            colors: vec![0, 1, 0],
        };
        assert!(merge_check(&ok));
        let bad = ColoringCertificate {
            colors: vec![0, 0, 1],
            ..ok
        };
        assert_eq!(
            merge_violations(&bad),
            vec![Violation {
                color: 0,
                occurrence: vec![0, 1]
            }]
        );
    }

    #[test]
    fn merge_member_examples() {
        assert!(merge_member(&perm("321"), &spec("21,21")).is_none());
        let c = merge_member(&perm("321"), &spec("3*21")).unwrap();
        assert_eq!(c.colors, vec![0, 1, 2]);
        let c = merge_member(&perm("2413"), &spec("132,213")).unwrap();
        assert!(merge_check(&c));
    }

    #[test]
    fn incremental_pruning_agrees_with_full_check() {
        let parts = [perm("132"), perm("21"), perm("123")];
        for n in 0..=6 {
            for p in Permutation::all_of_order(n) {
                for q in &parts {
                    for cut in 0..n {
                        let head = &p.values()[..cut];
                        let full =
                            contains(q, &Permutation::standardize(&p.values()[..=cut])).is_some();
                        let before = contains(q, &Permutation::standardize(head)).is_some();
                        if !before {
                            assert_eq!(completes(q, head, p.values()[cut]), full, "{p} {q} {cut}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn merge_member_is_monotone() {
        let small = spec("12,21");
        let big = spec("12,21,132");
        for n in 0..=5 {
            for p in Permutation::all_of_order(n) {
                if merge_member(&p, &small).is_some() {
                    assert!(merge_member(&p, &big).is_some(), "{p}");
                }
            }
        }
    }

    #[test]
    fn verify_examples() {
        let r = verify_splitting(&[perm("123")], &spec("12,12"), 6, None);
        assert!(r.passed());
        let r = verify_splitting(&[perm("123")], &spec("12"), 2, None);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].subject, perm("12"));
        assert_eq!(r.checked, 4);
    }

    #[test]
    fn witness_examples() {
        let c = [perm("132")];
        assert_eq!(
            unavoidable_witness(&c, &perm("12"), &perm("12"), 4).unwrap(),
            Some(perm("123"))
        );
        assert_eq!(
            unavoidable_witness(&[], &perm("1"), &perm("1"), 2).unwrap(),
            Some(perm("1"))
        );
    }

    #[test]
    fn amalgamation_examples() {
        let m = |p: &str, k| MarkedPermutation::new(perm(p), k).unwrap();
        let a = amalgamation_search(&[perm("132")], &m("12", 1), &m("21", 2), 5).unwrap();
        assert_eq!(a.sigma, perm("213"));
        assert_eq!(a.sigma.at(a.first.positions[0]), 1);
        assert!(amalgamation_search(&[perm("123")], &m("12", 2), &m("12", 1), 8).is_none());
        assert!(amalgamation_search(&[], &m("231", 2), &m("312", 3), 6).is_some());
        assert!(MarkedPermutation::new(perm("12"), 3).is_err());
    }

    #[test]
    fn ama_coloring_examples() {
        let r1 = MarkedPermutation::new(perm("12"), 2).unwrap();
        let c = ama_coloring(&perm("123"), &r1, &perm("12"));
        assert_eq!(c.colors, vec![0, 1, 1]);
        assert_eq!(
            ama_coloring(&perm("321"), &r1, &perm("12")).colors,
            vec![0; 3]
        );
        assert!(ama_coloring(&Permutation::empty(), &r1, &perm("12"))
            .colors
            .is_empty());
        for n in 0..=6 {
            for s in Permutation::all_of_order(n) {
                for r in ["12", "21", "132"] {
                    for mark in 1..=r.len() {
                        let r1 = MarkedPermutation::new(perm(r), mark).unwrap();
                        let c = ama_coloring(&s, &r1, &perm("1"));
                        assert!(avoids(&s.restrict(&c.class(0)), &r1.perm));
                    }
                }
            }
        }
    }
}
