//! The recursive matching splitter and the two pipelines built on it: the
//! one-plus transfer to permutations and circle-graph coloring.

use serde::Serialize;

use crate::constructions::{m_minus, m_plus};
use crate::envelope::reduced_envelope_with_elements;
use crate::error::{precondition, Error, Result};
use crate::matching::{
    m_of, matching_contains, perm_of_with_positions, relation, ArcRelation, Matching,
};
use crate::perm::{contains, Permutation};

use super::{Colorer, ColoringCertificate, Dilworth};

/// Result of [`match_split`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchSplit {
    /// Colors index the flattened list `copies × base parts`.
    pub certificate: ColoringCertificate<Matching>,
    /// Number of copies of the base part multiset actually allocated.
    pub copies: usize,
    pub base_parts: usize,
    pub trace: SplitTrace,
}

/// How often each case of the recursion fired.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SplitTrace {
    pub union_splits: usize,
    pub component_splits: usize,
    pub level_splits: usize,
    pub base_calls: usize,
    pub max_depth: usize,
}

/// (copy, base part) per arc.
type Palette = Vec<(usize, usize)>;

/// Arc index paired with its (copy, part) color.
type ArcColors = Vec<(usize, (usize, usize))>;

struct Splitter<'a> {
    base: &'a dyn Colorer,
    base_parts: Vec<Permutation>,
    trace: SplitTrace,
}

impl Splitter<'_> {
    fn base_color(&mut self, n: &Matching) -> Result<Palette> {
        self.trace.base_calls += 1;
        let (p, pos) = perm_of_with_positions(n)
            .ok_or_else(|| Error::Verification(format!("{n} is not a permutation matching")))?;
        let colors = self.base.color(&p)?;
        if colors.len() != p.len() || colors.iter().any(|&c| c >= self.base_parts.len()) {
            return Err(Error::InvalidColorer(format!("base colorer output on {p}")));
        }
        Ok(pos.iter().map(|&i| (0, colors[i])).collect())
    }

    /// Colors `n` (which avoids `obstacle` and the base pattern) with as few
    /// copies as the recursion allocates. Returns the palette and copy count.
    fn split(
        &mut self,
        n: &Matching,
        obstacle: &Matching,
        depth: usize,
    ) -> Result<(Palette, usize)> {
        self.trace.max_depth = self.trace.max_depth.max(depth);
        if n.is_empty() {
            return Ok((Vec::new(), 0));
        }
        if obstacle.len() <= 1 || matching_contains(obstacle, n) {
            return Err(Error::Verification(format!(
                "{n} contains obstacle {obstacle}"
            )));
        }

        let blocks = obstacle.blocks();
        if blocks.len() > 1 {
            self.trace.union_splits += 1;
            let first = &blocks[0];
            let rest = blocks[1..]
                .iter()
                .fold(Matching::empty(), |acc, b| acc.disjoint_union(b));
            return self.split_union(n, first, &rest, depth);
        }

        let components = n.components();
        if components.len() > 1 {
            self.trace.component_splits += 1;
            let mut palette = vec![(0, 0); n.len()];
            let mut copies = 0;
            for comp in components {
                let (sub, c) = self.split(&n.sub(&comp), obstacle, depth + 1)?;
                copies = usize::max(copies, c);
                for (k, &i) in comp.iter().enumerate() {
                    palette[i] = sub[k];
                }
            }
            return Ok((palette, copies));
        }

        self.trace.level_splits += 1;
        self.split_levels(n, obstacle, depth)
    }

    fn split_union(
        &mut self,
        n: &Matching,
        first: &Matching,
        rest: &Matching,
        depth: usize,
    ) -> Result<(Palette, usize)> {
        let arcs = n.arcs();
        let cut = (1..=2 * n.len() as u32).find(|&i| {
            let prefix: Vec<usize> = (0..arcs.len()).filter(|&a| arcs[a].right <= i).collect();
            matching_contains(first, &n.sub(&prefix))
        });
        let Some(cut) = cut else {
            return self.split(n, first, depth + 1);
        };
        let below: Vec<usize> = (0..arcs.len()).filter(|&a| arcs[a].right < cut).collect();
        let above: Vec<usize> = (0..arcs.len()).filter(|&a| arcs[a].left > cut).collect();
        let straddle: Vec<usize> = (0..arcs.len())
            .filter(|&a| arcs[a].left <= cut && arcs[a].right >= cut)
            .collect();

        let mut palette = vec![(0, 0); n.len()];
        let (low, c_low) = self.split(&n.sub(&below), first, depth + 1)?;
        let (high, c_high) = self.split(&n.sub(&above), rest, depth + 1)?;
        for (k, &i) in below.iter().enumerate() {
            palette[i] = low[k];
        }
        for (k, &i) in above.iter().enumerate() {
            palette[i] = (high[k].0 + c_low, high[k].1);
        }
        let mut copies = c_low + c_high;
        if !straddle.is_empty() {
            let mid = self.base_color(&n.sub(&straddle))?;
            for (k, &i) in straddle.iter().enumerate() {
                palette[i] = (copies, mid[k].1);
            }
            copies += 1;
        }
        Ok((palette, copies))
    }

    fn split_levels(
        &mut self,
        n: &Matching,
        obstacle: &Matching,
        depth: usize,
    ) -> Result<(Palette, usize)> {
        let arcs = n.arcs();
        let levels = n.levels()?;
        let mut level_of = vec![0; n.len()];
        for (l, members) in levels.iter().enumerate() {
            for &a in members {
                level_of[a] = l;
            }
        }
        let plus_obstacle = m_plus(obstacle)?;
        let minus_obstacle = m_minus(obstacle)?;

        let mut palette = vec![(0, 0); n.len()];
        // copies needed by each parity class of levels
        let mut parity_copies = [0usize; 2];
        let mut level_palettes: Vec<(usize, ArcColors)> = Vec::new();

        let root = self.base_color(&n.sub(&levels[0]))?;
        level_palettes.push((0, vec![(levels[0][0], root[0])]));
        parity_copies[0] = 1;

        for (l, members) in levels.iter().enumerate().skip(1) {
            let (mut plus, mut minus) = (Vec::new(), Vec::new());
            for &b in members {
                // ν(β): the crossing arc one level down with least left endpoint
                let nu = (0..n.len())
                    .filter(|&a| level_of[a] + 1 == l)
                    .find(|&a| relation(arcs[a], arcs[b]).is_ok_and(ArcRelation::is_crossing))
                    .expect("every arc above level 0 crosses the level below");
                if relation(arcs[nu], arcs[b])? == ArcRelation::CrossesFromLeft {
                    plus.push(b);
                } else {
                    minus.push(b);
                }
            }
            let (plus_pal, c_plus) = self.split_blocks(n, &plus, &plus_obstacle, depth)?;
            let (minus_pal, c_minus) = self.split_blocks(n, &minus, &minus_obstacle, depth)?;
            let mut entries = plus_pal;
            entries.extend(
                minus_pal
                    .into_iter()
                    .map(|(a, (c, p))| (a, (c + c_plus, p))),
            );
            parity_copies[l % 2] = parity_copies[l % 2].max(c_plus + c_minus);
            level_palettes.push((l, entries));
        }

        for (l, entries) in level_palettes {
            let offset = if l % 2 == 0 { 0 } else { parity_copies[0] };
            for (a, (c, p)) in entries {
                palette[a] = (c + offset, p);
            }
        }
        Ok((palette, parity_copies[0] + parity_copies[1]))
    }

    /// Splits the submatching on `members` block by block with a shared palette.
    fn split_blocks(
        &mut self,
        n: &Matching,
        members: &[usize],
        obstacle: &Matching,
        depth: usize,
    ) -> Result<(ArcColors, usize)> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        let sub = n.sub(&sorted);
        let mut out = Vec::with_capacity(sorted.len());
        let mut copies = 0;
        for block in sub.block_indices() {
            let (pal, c) = self.split(&sub.sub(&block), obstacle, depth + 1)?;
            copies = usize::max(copies, c);
            out.extend(block.iter().zip(pal).map(|(&k, col)| (sorted[k], col)));
        }
        Ok((out, copies))
    }
}

/// Colors a matching `n` avoiding both `m(pattern)` and `obstacle`, using
/// copies of the base colorer's parts; at most `4^weight(obstacle)` copies.
///
/// The recursion follows the obstacle's structure: a ⊎-decomposable obstacle
/// splits `n` at the first point where its first block appears; otherwise
/// connected components are handled independently, and a connected `n` is
/// cut into breadth-first levels whose arcs are sorted by the side from which
/// a lower-level arc crosses them, recursing with a lighter obstacle.
pub fn match_split(
    n: &Matching,
    pattern: &Permutation,
    obstacle: &Matching,
    base: &dyn Colorer,
) -> Result<MatchSplit> {
    let base_parts = base.parts();
    if base_parts.is_empty() {
        return Err(precondition("base colorer has no parts"));
    }
    if let Some(p) = base_parts
        .iter()
        .find(|p| p.is_empty() || p.is_sum_decomposable())
    {
        return Err(precondition(format!(
            "base part {p} is not a nonempty sum-indecomposable pattern"
        )));
    }
    if matching_contains(&m_of(pattern), n) {
        return Err(precondition(format!("{n} contains m({pattern})")));
    }
    if matching_contains(obstacle, n) {
        return Err(precondition(format!(
            "{n} contains the obstacle {obstacle}"
        )));
    }

    let mut splitter = Splitter {
        base,
        base_parts: base_parts.clone(),
        trace: SplitTrace::default(),
    };
    let (palette, copies) = splitter.split(n, obstacle, 0)?;
    let k = base_parts.len();
    let certificate = ColoringCertificate {
        subject: n.clone(),
        parts: (0..copies)
            .flat_map(|_| base_parts.iter().cloned())
            .collect(),
        colors: palette.iter().map(|&(c, p)| c * k + p).collect(),
    };
    for c in 0..certificate.parts.len() {
        let class = n.sub(&certificate.class(c));
        if matching_contains(&m_of(&certificate.parts[c]), &class) {
            return Err(Error::Verification(format!(
                "class {c} of {n} contains m({})",
                certificate.parts[c]
            )));
        }
    }
    Ok(MatchSplit {
        certificate,
        copies,
        base_parts: k,
        trace: splitter.trace,
    })
}

/// Result of [`oneplus_split`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OnePlus {
    /// Parts are `1 ⊕ q` for each flattened base part `q`.
    pub certificate: ColoringCertificate,
    pub reduced: Matching,
    pub copies: usize,
}

/// Splits `rho ∈ Av(1 ⊕ sigma)` into classes avoiding `1 ⊕ q` for the base
/// parts `q`, by splitting the reduced envelope of `rho` and sending each
/// covered element to its arc's class. All LR-minima go to class 0.
pub fn oneplus_split(
    sigma: &Permutation,
    base: &dyn Colorer,
    rho: &Permutation,
) -> Result<OnePlus> {
    if sigma.is_empty() || sigma.is_sum_decomposable() {
        return Err(precondition(format!(
            "{sigma} must be nonempty and sum-indecomposable"
        )));
    }
    let one = Permutation::identity(1);
    let forbidden = one.direct_sum(sigma);
    if let Some(e) = contains(&forbidden, rho) {
        return Err(precondition(format!(
            "{rho} contains {forbidden} at {:?}",
            e.one_based()
        )));
    }
    let (reduced, elems) = reduced_envelope_with_elements(rho);
    let split = match_split(&reduced, sigma, &m_of(sigma), base)?;
    let copies = split.copies.max(1);
    let k = split.base_parts;
    let base_parts = base.parts();
    let mut colors = vec![0; rho.len()];
    for (a, &i) in elems.iter().enumerate() {
        colors[i] = split.certificate.colors[a];
    }
    let certificate = ColoringCertificate {
        subject: rho.clone(),
        parts: (0..copies * k)
            .map(|c| one.direct_sum(&base_parts[c % k]))
            .collect(),
        colors,
    };
    if let Some((c, occ)) = certificate.first_violation() {
        return Err(Error::Verification(format!(
            "class {c} of {rho} contains {} at {occ:?}",
            certificate.parts[c]
        )));
    }
    Ok(OnePlus {
        certificate,
        reduced,
        copies,
    })
}

/// A proper coloring of a circle graph given as a matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleColoring {
    pub subject: Matching,
    /// Compact colors `0..num_colors`, in order of first use along the arcs.
    pub colors: Vec<usize>,
    pub num_colors: usize,
    /// Size of the palette the recursion allocated.
    pub palette: usize,
}

/// Properly colors the intersection graph of a matching with no `n` pairwise
/// crossing arcs, via [`match_split`] with the Dilworth base.
pub fn circle_color(m: &Matching, n: usize) -> Result<CircleColoring> {
    if n < 2 {
        return Err(precondition("clique bound must be at least 2"));
    }
    let jn = Permutation::decreasing(n);
    let split = match_split(m, &jn, &m_of(&jn), &Dilworth::new(n))?;
    let mut relabel: Vec<Option<usize>> = vec![None; split.certificate.parts.len()];
    let mut next = 0;
    let colors = split
        .certificate
        .colors
        .iter()
        .map(|&c| {
            *relabel[c].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    Ok(CircleColoring {
        subject: m.clone(),
        colors,
        num_colors: next,
        palette: split.certificate.parts.len(),
    })
}
