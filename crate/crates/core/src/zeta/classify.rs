//! Classification of a smooth cubic surface: certify smoothness, count
//! points to the least depth that pins down the Frobenius class, and report
//! the zeta numerator.

use serde::Serialize;

use crate::algebra::Form;
use crate::error::{Error, Result};
use crate::surface::{certify_smooth, count_points_with_budget, fiber_steps, Certificate};
use crate::weyl::ClassId;

use super::{candidates, distinguishing_depth, p_of_t, traces_from_counts, CountProfile, ZetaNumerator};

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub field: String,
    pub q: u64,
    pub certificate: Certificate,
    /// Depth D such that N_1..N_D were counted.
    pub depth: usize,
    pub counts: Vec<u128>,
    pub traces: Vec<i64>,
    /// Set when the counts single out one class.
    pub class: Option<String>,
    pub minimal: Option<bool>,
    pub p_of_t: Option<ZetaNumerator>,
    /// Classes still compatible with the counts.
    pub candidates: Vec<String>,
}

impl Classification {
    pub fn class_id(&self) -> Option<ClassId> {
        self.class.as_deref().and_then(|s| s.parse().ok())
    }
}

/// Classifies `x`, counting only as deep as needed; `extra_depth` further
/// levels are counted afterwards to confirm the class does not change. If
/// the budget runs out first, `class` is `None` and `candidates` holds the
/// surviving classes.
pub fn classify_surface_with(x: &Form, budget: u128, extra_depth: usize) -> Result<Classification> {
    let certificate = certify_smooth(x)?;
    let q = x.field().order();
    let mut profile = CountProfile { q, counts: Vec::new() };
    let mut survivors: Vec<ClassId> = Vec::new();
    let mut unique_at = None;
    let max_depth = distinguishing_depth();
    for d in 1..=max_depth + extra_depth {
        if unique_at.is_some_and(|u| d > u + extra_depth) {
            break;
        }
        if fiber_steps(q, d as u32) > budget {
            break;
        }
        profile.counts.push(count_points_with_budget(x, d as u32, budget)?);
        let tv = traces_from_counts(&profile)?;
        survivors = candidates(&tv);
        if survivors.is_empty() {
            return Err(Error::Verification(format!(
                "counts {:?} match no class of W(E6)",
                profile.counts
            )));
        }
        if survivors.len() == 1 && unique_at.is_none() {
            unique_at = Some(d);
        }
    }
    let traces = if profile.counts.is_empty() { Vec::new() } else { traces_from_counts(&profile)?.traces };
    let class = (survivors.len() == 1 && unique_at.is_some()).then(|| survivors[0]);
    let remaining: Vec<String> = if profile.counts.is_empty() {
        (1..=25).map(|i| ClassId(i).to_string()).collect()
    } else {
        survivors.iter().map(|c| c.to_string()).collect()
    };
    Ok(Classification {
        field: x.field().literal(),
        q,
        certificate,
        depth: profile.counts.len(),
        counts: profile.counts,
        traces,
        class: class.map(|c| c.to_string()),
        minimal: class.map(|c| c.is_minimal()),
        p_of_t: class.map(|c| p_of_t(c, q)),
        candidates: remaining,
    })
}

pub fn classify_surface(x: &Form, budget: u128) -> Result<Classification> {
    classify_surface_with(x, budget, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Gf;
    use crate::surface::{fermat, DEFAULT_BUDGET};

    #[test]
    fn fermat_over_f2() {
        let c = classify_surface(&fermat(&Gf::prime(2).unwrap()), DEFAULT_BUDGET).unwrap();
        assert_eq!(c.counts[0], 7);
        assert!(c.class.is_some());
        assert_eq!(c.candidates.len(), 1);
    }

    #[test]
    fn tiny_budget_reports_candidates() {
        let x = fermat(&Gf::prime(5).unwrap());
        let c = classify_surface(&x, 40).unwrap();
        assert_eq!(c.depth, 1);
        assert!(c.class.is_none());
        assert!(c.candidates.len() > 1);
        let none = classify_surface(&x, 10).unwrap();
        assert_eq!(none.depth, 0);
        assert_eq!(none.candidates.len(), 25);
    }

    #[test]
    fn extra_depth_confirms() {
        let x = fermat(&Gf::prime(5).unwrap());
        let a = classify_surface(&x, DEFAULT_BUDGET).unwrap();
        let b = classify_surface_with(&x, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(a.class, b.class);
        assert_eq!(b.depth, a.depth + 1);
    }
}
