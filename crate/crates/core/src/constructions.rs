//! Witness matchings, the `τ(N)` permutation construction, the splitting
//! router for decomposable patterns, and the splittability classifier.

use std::collections::HashSet;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::envelope::{matching_to_perm, reduced_envelope_with_elements};
use crate::error::{precondition, Error, Result};
use crate::matching::{m_of, matching_contains, Matching};
use crate::perm::{contains, Permutation, Symmetry};
use crate::splitters::{easy_split_parts, Colorer, GreedyThreeSum, SplittingSpec};

fn check_obstacle(m: &Matching) -> Result<()> {
    if m.len() < 2 || !m.is_union_indecomposable() {
        return Err(precondition(format!(
            "{m} must be ⊎-indecomposable with at least two arcs"
        )));
    }
    Ok(())
}

/// Replaces the arc `(1, x)` by `(x - 0.5, x)`.
pub fn m_plus(m: &Matching) -> Result<Matching> {
    check_obstacle(m)?;
    let mut coords = m.coords();
    let x = coords[0].1;
    coords[0] = (x - 0.5, x);
    Matching::from_coords(&coords)
}

/// Replaces the arc `(y, 2m)` by `(y, y + 0.5)`.
pub fn m_minus(m: &Matching) -> Result<Matching> {
    check_obstacle(m)?;
    let top = 2.0 * m.len() as f64;
    let mut coords = m.coords();
    let last = coords
        .iter_mut()
        .find(|c| c.1 == top)
        .expect("some arc ends at 2m");
    *last = (last.0, last.0 + 0.5);
    Matching::from_coords(&coords)
}

fn check_sigma(sigma: &Permutation, min: usize) -> Result<()> {
    if sigma.len() < min || sigma.is_sum_decomposable() {
        return Err(precondition(format!(
            "{sigma} must be sum-indecomposable of order at least {min}"
        )));
    }
    Ok(())
}

fn verify_witness(n: &Matching, sigma: &Permutation, core: &Matching) -> Result<Matching> {
    if !n.is_connected() {
        return Err(Error::Verification(format!("witness {n} is disconnected")));
    }
    if matching_contains(&m_of(sigma), n) {
        return Err(Error::Verification(format!(
            "witness {n} contains m({sigma})"
        )));
    }
    if !matching_contains(core, n) {
        return Err(Error::Verification(format!(
            "witness {n} does not contain {core}"
        )));
    }
    Ok(n.clone())
}

/// A connected `m(σ)`-avoiding matching containing `M⁺ = m_plus(m(σ))`.
///
/// For `|σ| ≥ 4` this is `M⁺ ∪ Γ ∪ Δ` with `γ_i = (i - 0.4, i + 0.4)` for
/// `x ≤ i ≤ 2m` and `δ_j = (j + 0.2, j + 0.8)` for `x ≤ j < 2m`, where `(1, x)`
/// is the first arc of `m(σ)`. For `|σ| = 3` the least such superset of `M⁺`
/// with at most six extra arcs is found by search.
pub fn n_plus(sigma: &Permutation) -> Result<Matching> {
    check_sigma(sigma, 3)?;
    let m = m_of(sigma);
    let core = m_plus(&m)?;
    let n = if sigma.len() == 3 {
        augment_search(&core, &m, 6)?
    } else {
        let top = 2 * m.len() as u32;
        let x = m.arcs()[0].right;
        let mut coords = m.coords();
        coords[0] = (x as f64 - 0.5, x as f64);
        coords.extend((x..=top).map(|i| (i as f64 - 0.4, i as f64 + 0.4)));
        coords.extend((x..top).map(|j| (j as f64 + 0.2, j as f64 + 0.8)));
        Matching::from_coords(&coords)?
    };
    verify_witness(&n, sigma, &core)
}

/// The mirror image of `n_plus(σ⁻¹)`, which contains `m_minus(m(σ))`.
pub fn n_minus(sigma: &Permutation) -> Result<Matching> {
    check_sigma(sigma, 3)?;
    let n = n_plus(&sigma.inverse())?.mirror();
    verify_witness(&n, sigma, &m_minus(&m_of(sigma))?)
}

/// Breadth-first search over one-arc insertions into `core`, keeping only
/// `forbidden`-avoiding matchings; returns the least connected one by size,
/// then by arc list.
fn augment_search(core: &Matching, forbidden: &Matching, max_extra: usize) -> Result<Matching> {
    let mut frontier = vec![core.clone()];
    let mut seen: HashSet<Matching> = frontier.iter().cloned().collect();
    for _ in 0..max_extra {
        let mut next = Vec::new();
        for m in &frontier {
            let seq = m.endpoint_sequence();
            let label = m.len();
            for g1 in 0..=seq.len() {
                for g2 in g1..=seq.len() {
                    let mut s = seq.clone();
                    s.insert(g2, label);
                    s.insert(g1, label);
                    let cand = Matching::from_endpoint_sequence(&s);
                    if seen.contains(&cand) || matching_contains(forbidden, &cand) {
                        continue;
                    }
                    seen.insert(cand.clone());
                    next.push(cand);
                }
            }
        }
        next.sort();
        if let Some(found) = next.iter().find(|c| c.is_connected()) {
            return Ok(found.clone());
        }
        frontier = next;
    }
    Err(Error::Verification(format!(
        "no connected {forbidden}-avoiding extension of {core} with at most {max_extra} extra arcs"
    )))
}

/// `M'`: in `m(σ)` on `1..=2m`, the arcs `(m, i)` and `(j, m + 1)` become
/// `(m + 1, i)` and `(j, m)`.
pub fn m_prime(sigma: &Permutation) -> Result<Matching> {
    check_sigma(sigma, 2)?;
    let m = m_of(sigma);
    let k = sigma.len() as u32;
    let pairs: Vec<(u32, u32)> = m
        .arcs()
        .iter()
        .map(|a| {
            if a.left == k {
                (k + 1, a.right)
            } else if a.right == k + 1 {
                (a.left, k)
            } else {
                (a.left, a.right)
            }
        })
        .collect();
    Matching::from_pairs(&pairs)
}

/// `τ(N)`: a copy of `M'` is placed in every gap between a right endpoint and
/// a following left endpoint of `n`, every left-right gap gets a short arc,
/// and the result is decoded as an envelope matching. Avoids `1 ⊕ σ`.
pub fn tau_of(n: &Matching, sigma: &Permutation) -> Result<Permutation> {
    check_sigma(sigma, 2)?;
    if matching_contains(&m_of(sigma), n) {
        return Err(precondition(format!("{n} contains m({sigma})")));
    }
    let gadget = m_prime(sigma)?.endpoint_sequence();
    let seq = n.endpoint_sequence();
    let left = n.left_mask();
    let mut out = Vec::with_capacity(seq.len() * 2);
    let mut fresh = n.len();
    for x in 1..=seq.len() {
        out.push(seq[x - 1]);
        if x < seq.len() && !left[x] && left[x + 1] {
            out.extend(gadget.iter().map(|&g| g + fresh));
            fresh += gadget.len() / 2;
        }
    }
    let expanded = Matching::from_endpoint_sequence(&out);
    let tau = matching_to_perm(&expanded);
    let pi = Permutation::identity(1).direct_sum(sigma);
    if let Some(e) = contains(&pi, &tau) {
        return Err(Error::Verification(format!(
            "τ = {tau} contains {pi} at {:?}",
            e.one_based()
        )));
    }
    Ok(tau)
}

/// The two witness matchings for `σ` and their `τ` permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    pub sigma: Permutation,
    pub n_plus: Matching,
    pub n_minus: Matching,
    pub tau_plus: Permutation,
    pub tau_minus: Permutation,
}

impl WitnessPair {
    pub fn new(sigma: &Permutation) -> Result<Self> {
        let n_plus = n_plus(sigma)?;
        let n_minus = n_minus(sigma)?;
        Ok(Self {
            sigma: sigma.clone(),
            tau_plus: tau_of(&n_plus, sigma)?,
            tau_minus: tau_of(&n_minus, sigma)?,
            n_plus,
            n_minus,
        })
    }
}

/// Which construction produced a splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// `α ⊕ β` with both summands of order at least two.
    Easy,
    /// `α ⊕ β ⊕ γ`.
    ThreeSum,
    /// `1 ⊕ σ` with `σ` sum-indecomposable of order at least three.
    OnePlus,
    /// `σ ⊕ 1`, via reverse-complement.
    PlusOne,
    /// Skew-decomposable only, via complement.
    Skew,
}

impl Route {
    pub fn letter(self) -> &'static str {
        match self {
            Route::Easy => "a",
            Route::ThreeSum => "b",
            Route::OnePlus => "c",
            Route::PlusOne => "d",
            Route::Skew => "e",
        }
    }
}

enum Base {
    Greedy(GreedyThreeSum),
    Envelope(WitnessPair),
}

/// A splitting of `Av(class)` with a colorer that certifies it.
pub struct TheoremSplit {
    pub class: Permutation,
    pub spec: SplittingSpec,
    pub route: Route,
    /// Symmetry mapping the class onto the pattern the base construction
    /// handles; `None` when no transport was needed.
    pub symmetry: Option<Symmetry>,
    base: Base,
}

impl fmt::Debug for TheoremSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoremSplit")
            .field("class", &self.class)
            .field("spec", &self.spec)
            .field("route", &self.route)
            .field("symmetry", &self.symmetry)
            .finish_non_exhaustive()
    }
}

impl TheoremSplit {
    pub fn witnesses(&self) -> Option<&WitnessPair> {
        match &self.base {
            Base::Envelope(w) => Some(w),
            Base::Greedy(_) => None,
        }
    }
}

impl Serialize for TheoremSplit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Part {
            pattern: Permutation,
            multiplicity: usize,
        }
        let parts: Vec<Part> = self
            .spec
            .grouped()
            .into_iter()
            .map(|(pattern, multiplicity)| Part {
                pattern,
                multiplicity,
            })
            .collect();
        let mut st = s.serialize_struct("TheoremSplit", 4)?;
        st.serialize_field("class", &self.class)?;
        st.serialize_field("parts", &parts)?;
        st.serialize_field("route", self.route.letter())?;
        match self.symmetry {
            Some(sym) => st.serialize_field("symmetry", &sym)?,
            None => st.serialize_field("symmetry", "none")?,
        }
        st.end()
    }
}

/// Patterns whose class is unsplittable although they may be decomposable.
pub const EXCEPTIONS: [&str; 7] = ["1", "12", "21", "132", "213", "231", "312"];

fn is_exception(p: &Permutation) -> bool {
    EXCEPTIONS.iter().any(|e| p.to_compact() == *e)
}

fn compose(first: Option<Symmetry>, then: Symmetry) -> Option<Symmetry> {
    use Symmetry::*;
    match (first, then) {
        (None, s) => Some(s),
        (Some(Complement), ReverseComplement) | (Some(ReverseComplement), Complement) => {
            Some(Reverse)
        }
        (Some(Reverse), ReverseComplement) | (Some(ReverseComplement), Reverse) => Some(Complement),
        (Some(Reverse), Complement) | (Some(Complement), Reverse) => Some(ReverseComplement),
        (Some(a), b) if a == b => None,
        (Some(a), b) => unreachable!("unsupported composition {a:?} then {b:?}"),
    }
}

/// Splits `Av(pattern)` for a sum- or skew-decomposable pattern outside
/// [`EXCEPTIONS`].
pub fn theorem_split(pattern: &Permutation) -> Result<TheoremSplit> {
    if is_exception(pattern) {
        return Err(precondition(format!("Av({pattern}) is unsplittable")));
    }
    if !pattern.is_sum_decomposable() {
        if !pattern.is_skew_decomposable() {
            return Err(precondition(format!(
                "{pattern} is indecomposable both ways"
            )));
        }
        let inner = theorem_split(&pattern.complement())?;
        return Ok(transport(pattern, inner, Symmetry::Complement, Route::Skew));
    }

    let comps = pattern.sum_components();
    let n = pattern.len();
    let values = pattern.values();
    let cut = (2..=n.saturating_sub(2)).find(|&k| values[..k].iter().all(|&v| v as usize <= k));
    if let Some(k) = cut {
        let alpha = pattern.restrict(&(0..k).collect::<Vec<_>>());
        let beta = pattern.restrict(&(k..n).collect::<Vec<_>>());
        let spec = easy_split_parts(&alpha, &beta)?;
        let base = GreedyThreeSum::new(alpha, Permutation::identity(1), beta)?;
        return Ok(TheoremSplit {
            class: pattern.clone(),
            spec,
            route: Route::Easy,
            symmetry: None,
            base: Base::Greedy(base),
        });
    }
    if comps.len() >= 3 {
        let alpha = comps[0].clone();
        let gamma = comps[comps.len() - 1].clone();
        let beta = comps[1..comps.len() - 1]
            .iter()
            .fold(Permutation::empty(), |acc, c| acc.direct_sum(c));
        let base = GreedyThreeSum::new(alpha, beta, gamma)?;
        return Ok(TheoremSplit {
            class: pattern.clone(),
            spec: SplittingSpec::new(base.parts())?,
            route: Route::ThreeSum,
            symmetry: None,
            base: Base::Greedy(base),
        });
    }
    // two components, one of them a single point
    if comps[0].len() == 1 {
        let sigma = &comps[1];
        let w = WitnessPair::new(sigma)?;
        let spec = SplittingSpec::new(vec![
            w.tau_plus.clone(),
            w.tau_plus.clone(),
            w.tau_minus.clone(),
            w.tau_minus.clone(),
        ])?;
        return Ok(TheoremSplit {
            class: pattern.clone(),
            spec,
            route: Route::OnePlus,
            symmetry: None,
            base: Base::Envelope(w),
        });
    }
    let inner = theorem_split(&pattern.apply(Symmetry::ReverseComplement))?;
    Ok(transport(
        pattern,
        inner,
        Symmetry::ReverseComplement,
        Route::PlusOne,
    ))
}

fn transport(
    pattern: &Permutation,
    inner: TheoremSplit,
    sym: Symmetry,
    route: Route,
) -> TheoremSplit {
    let parts = inner.spec.parts().iter().map(|p| p.apply(sym)).collect();
    TheoremSplit {
        class: pattern.clone(),
        spec: SplittingSpec::new(parts).expect("symmetry preserves nonempty parts"),
        route,
        symmetry: compose(inner.symmetry, sym),
        base: inner.base,
    }
}

impl Colorer for TheoremSplit {
    fn parts(&self) -> Vec<Permutation> {
        self.spec.parts().to_vec()
    }

    fn color(&self, p: &Permutation) -> Result<Vec<usize>> {
        if let Some(e) = contains(&self.class, p) {
            return Err(precondition(format!(
                "{p} contains {} at {:?}",
                self.class,
                e.one_based()
            )));
        }
        let q = match self.symmetry {
            Some(sym) => p.apply(sym),
            None => p.clone(),
        };
        let mut colors = match &self.base {
            Base::Greedy(g) => g.color(&q)?,
            Base::Envelope(w) => envelope_colors(w, &q)?,
        };
        if matches!(
            self.symmetry,
            Some(Symmetry::Reverse | Symmetry::ReverseComplement)
        ) {
            colors.reverse();
        }
        Ok(colors)
    }
}

/// Colors `rho ∈ Av(1 ⊕ σ)` into four classes: arcs of `R(rho)` by level
/// parity and by the side from which a lower-level arc crosses them
/// (0 even/left, 1 odd/left, 2 even/right, 3 odd/right). LR-minima and
/// level-0 arcs take class 0.
fn envelope_colors(_w: &WitnessPair, rho: &Permutation) -> Result<Vec<usize>> {
    let (r, elems) = reduced_envelope_with_elements(rho);
    let arcs = r.arcs();
    let mut arc_class = vec![0; r.len()];
    for comp in r.components() {
        let sub = r.sub(&comp);
        let sub_arcs = sub.arcs();
        let levels = sub.levels()?;
        let mut level_of = vec![0; sub.len()];
        for (l, members) in levels.iter().enumerate() {
            for &a in members {
                level_of[a] = l;
            }
        }
        for (l, members) in levels.iter().enumerate().skip(1) {
            for &b in members {
                let nu = (0..sub.len())
                    .filter(|&a| level_of[a] + 1 == l)
                    .find(|&a| crate::matching::crosses(sub_arcs[a], sub_arcs[b]))
                    .expect("arcs above level 0 cross the level below");
                let from_left = sub_arcs[nu].left < sub_arcs[b].left;
                let side = if from_left { 0 } else { 2 };
                arc_class[comp[b]] = side + l % 2;
            }
        }
    }
    debug_assert_eq!(arcs.len(), elems.len());
    let mut colors = vec![0; rho.len()];
    for (a, &i) in elems.iter().enumerate() {
        colors[i] = arc_class[a];
    }
    Ok(colors)
}

/// Outcome of [`classify_pattern`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Splittable,
    Unsplittable,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: String,
}

/// Decides splittability of `Av(p)` where a known criterion applies.
pub fn classify_pattern(p: &Permutation) -> Classification {
    let (verdict, reason) = if p.is_simple() {
        (Verdict::Unsplittable, "simple")
    } else if is_exception(p) {
        (Verdict::Unsplittable, "symmetric to 132")
    } else if p.is_sum_decomposable() {
        (Verdict::Splittable, "sum-decomposable")
    } else if p.is_skew_decomposable() {
        (Verdict::Splittable, "skew-decomposable")
    } else {
        (Verdict::Unknown, "indecomposable and not simple")
    };
    Classification {
        verdict,
        reason: reason.to_string(),
    }
}
