//! Exhaustive checks of structural facts about cyclic subgroups of W(E6)
//! that the minimality classification rests on.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::group::{invariant_rank, ClassId, WeylGroup};
use super::lines::{LineLabel, LinePerm};

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub checks: Vec<LemmaCheck>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn fixed_lines(g: &LinePerm) -> Vec<LineLabel> {
    LineLabel::all().filter(|&l| g.apply(l) == l).collect()
}

/// Sorted element indices of the cyclic subgroup generated by `g`.
fn cyclic_key(w: &WeylGroup, g: &LinePerm) -> Vec<u32> {
    let mut out = Vec::new();
    let mut h = LinePerm::identity();
    loop {
        out.push(w.index_of(&h).expect("closed under powers") as u32);
        h = g.compose(&h);
        if h.is_identity() {
            break;
        }
    }
    out.sort();
    out
}

pub fn verify_structure_lemmas(w: &WeylGroup) -> StructureReport {
    let classes = w.conjugacy_classes();
    let mut checks = Vec::new();

    // (i) order divisible by 5 forces an invariant pair of disjoint lines
    let bad: Vec<String> = classes
        .iter()
        .filter(|c| c.order % 5 == 0 && c.inv_rank_cyclic <= 1)
        .map(|c| format!("{} ({})", c.id, c.representative.display_cycles()))
        .collect();
    let five = LinePerm::from_cycles(&[&[1, 2, 3, 4, 5]]);
    let fixed: Vec<String> = fixed_lines(&five).iter().map(|l| l.to_string()).collect();
    checks.push(LemmaCheck {
        name: "order-5 elements are never minimal",
        passed: bad.is_empty() && fixed == ["E6", "Q6"] && invariant_rank(&five) >= 2,
        detail: if bad.is_empty() {
            format!("(12345) fixes {{{}}}, invariant rank {}", fixed.join(", "), invariant_rank(&five))
        } else {
            format!("witness: {}", bad.join("; "))
        },
    });

    // (ii) 2-groups are never minimal
    let bad: Vec<String> = classes
        .iter()
        .filter(|c| c.order.is_power_of_two() && c.inv_rank_cyclic <= 1)
        .map(|c| format!("{} ({})", c.id, c.representative.display_cycles()))
        .collect();
    checks.push(LemmaCheck {
        name: "cyclic 2-groups are never minimal",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "every class of 2-power order has invariant rank at least 2".into()
        } else {
            format!("witness: {}", bad.join("; "))
        },
    });

    // (iii) a single conjugacy class of cyclic subgroups of order 9
    let mut subgroups: HashSet<Vec<u32>> = HashSet::new();
    for g in w.elements().iter().filter(|g| g.order() == 9) {
        subgroups.insert(cyclic_key(w, g));
    }
    let mut orbits = 0usize;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for key in &subgroups {
        if seen.contains(key) {
            continue;
        }
        orbits += 1;
        let mut stack = vec![key.clone()];
        seen.insert(key.clone());
        while let Some(k) = stack.pop() {
            for s in w.generators() {
                let mut conj: Vec<u32> = k
                    .iter()
                    .map(|&i| {
                        let h = s.compose(&w.elements()[i as usize]).compose(s);
                        w.index_of(&h).unwrap() as u32
                    })
                    .collect();
                conj.sort();
                if seen.insert(conj.clone()) {
                    stack.push(conj);
                }
            }
        }
    }
    let cube_classes: BTreeSet<ClassId> = w
        .elements()
        .iter()
        .filter(|g| g.order() == 9)
        .map(|g| w.class_of(&g.pow(3)).unwrap().id)
        .collect();
    checks.push(LemmaCheck {
        name: "one class of cyclic subgroups of order 9, with type-I cubes",
        passed: orbits == 1 && cube_classes.iter().eq([ClassId(11)].iter()),
        detail: format!(
            "{} subgroups in {} conjugacy class(es); cubes lie in {:?}",
            subgroups.len(),
            orbits,
            cube_classes.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        ),
    });

    // (iv) no cyclic overgroup of an order-9 subgroup
    let over: Vec<String> = classes
        .iter()
        .filter(|c| c.order % 9 == 0 && c.order != 9)
        .map(|c| format!("{} of order {}", c.id, c.order))
        .collect();
    let max_order = classes.iter().map(|c| c.order).max().unwrap_or(1);
    checks.push(LemmaCheck {
        name: "order-9 subgroups are maximal cyclic",
        passed: over.is_empty(),
        detail: if over.is_empty() {
            format!("no element of order 18, 27 or 36; largest element order is {max_order}")
        } else {
            format!("witness: {}", over.join("; "))
        },
    });

    // (v) c3 is the only involution class with invariant rank 3
    let rank3: Vec<ClassId> = classes
        .iter()
        .filter(|c| c.order == 2 && c.inv_rank_cyclic == 3)
        .map(|c| c.id)
        .collect();
    checks.push(LemmaCheck {
        name: "c3 is the unique involution class with invariant rank 3",
        passed: rank3 == [ClassId(3)],
        detail: format!("order-2 classes with rank 3: {:?}", rank3.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    });

    StructureReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_lines_of_five_cycle() {
        let g = LinePerm::from_cycles(&[&[1, 2, 3, 4, 5]]);
        assert_eq!(fixed_lines(&g), vec![LineLabel::E(6), LineLabel::Q(6)]);
    }
}
