use crate::error::{precondition, Result};
use crate::perm::{contains, Permutation};

use super::{Colorer, ColoringCertificate, SplittingSpec};

const RED: usize = 0;
const BLUE: usize = 1;

/// Two-colors a permutation avoiding `α ⊕ β ⊕ γ` so that the red class (part 0)
/// avoids `α ⊕ β` and the blue class (part 1) avoids `β ⊕ γ`.
///
/// Elements are colored left to right: blue if red would complete a red
/// `α ⊕ β`, blue if some earlier blue element is smaller, red otherwise.
pub fn greedy_three_sum(
    alpha: &Permutation,
    beta: &Permutation,
    gamma: &Permutation,
    p: &Permutation,
) -> Result<ColoringCertificate> {
    GreedyThreeSum::new(alpha.clone(), beta.clone(), gamma.clone())?.certify(p)
}

#[derive(Clone, Debug)]
pub struct GreedyThreeSum {
    alpha_beta: Permutation,
    beta_gamma: Permutation,
    forbidden: Permutation,
}

impl GreedyThreeSum {
    pub fn new(alpha: Permutation, beta: Permutation, gamma: Permutation) -> Result<Self> {
        if alpha.is_empty() || beta.is_empty() || gamma.is_empty() {
            return Err(precondition("alpha, beta and gamma must be nonempty"));
        }
        Ok(Self {
            alpha_beta: alpha.direct_sum(&beta),
            beta_gamma: beta.direct_sum(&gamma),
            forbidden: alpha.direct_sum(&beta).direct_sum(&gamma),
        })
    }
}

impl Colorer for GreedyThreeSum {
    fn parts(&self) -> Vec<Permutation> {
        vec![self.alpha_beta.clone(), self.beta_gamma.clone()]
    }

    fn color(&self, p: &Permutation) -> Result<Vec<usize>> {
        if let Some(e) = contains(&self.forbidden, p) {
            return Err(precondition(format!(
                "{p} contains {} at positions {:?}",
                self.forbidden,
                e.one_based()
            )));
        }
        let mut colors = Vec::with_capacity(p.len());
        let mut red: Vec<u32> = Vec::new();
        let mut min_blue = u32::MAX;
        for &v in p.values() {
            red.push(v);
            let completes_red =
                contains(&self.alpha_beta, &Permutation::standardize(&red)).is_some();
            if completes_red || min_blue < v {
                red.pop();
                min_blue = min_blue.min(v);
                colors.push(BLUE);
            } else {
                colors.push(RED);
            }
            debug_assert!(contains(&self.alpha_beta, &Permutation::standardize(&red)).is_none());
        }
        Ok(colors)
    }
}

/// The two-part splitting `{Av(α ⊕ 1), Av(1 ⊕ β)}` of `Av(α ⊕ β)`; certificates
/// come from [`greedy_three_sum`] with middle pattern `1`.
pub fn easy_split_parts(alpha: &Permutation, beta: &Permutation) -> Result<SplittingSpec> {
    if alpha.len() < 2 || beta.len() < 2 {
        return Err(precondition("both summands need order at least two"));
    }
    let one = Permutation::identity(1);
    SplittingSpec::new(vec![alpha.direct_sum(&one), one.direct_sum(beta)])
}

/// Colors a `J_n`-avoider by the length of the longest decreasing subsequence
/// ending at each element; the `n - 1` classes are increasing.
pub fn dilworth_split(n: usize, p: &Permutation) -> Result<ColoringCertificate> {
    Dilworth::new(n).certify(p)
}

#[derive(Clone, Copy, Debug)]
pub struct Dilworth {
    n: usize,
}

impl Dilworth {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl Colorer for Dilworth {
    fn parts(&self) -> Vec<Permutation> {
        vec![Permutation::decreasing(2); self.n.saturating_sub(1)]
    }

    fn color(&self, p: &Permutation) -> Result<Vec<usize>> {
        let v = p.values();
        let mut lds = vec![1usize; v.len()];
        for i in 0..v.len() {
            for j in 0..i {
                if v[j] > v[i] {
                    lds[i] = lds[i].max(lds[j] + 1);
                }
            }
            if lds[i] >= self.n {
                return Err(precondition(format!(
                    "{p} contains a decreasing subsequence of length {}",
                    self.n
                )));
            }
        }
        Ok(lds.into_iter().map(|l| l - 1).collect())
    }
}
