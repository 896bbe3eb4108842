//! W(E6) as the full list of its 51840 permutations of the lines, with the
//! conjugacy-class catalogue.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::intpoly::{self, IntPoly, Mat7};
use super::lines::{reflection, simple_roots, LineLabel, LinePerm};
use super::table::{charpoly_from_eigen, TABLE};
use crate::error::{Error, Result};

/// One of the 25 conjugacy classes, numbered as in the class table.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub u8);

impl ClassId {
    pub const MINIMAL: [ClassId; 5] = [ClassId(10), ClassId(11), ClassId(12), ClassId(13), ClassId(14)];

    pub fn is_minimal(self) -> bool {
        (10..=14).contains(&self.0)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClassId> {
        let n: u8 = s
            .trim()
            .strip_prefix('c')
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| Error::Invalid(format!("bad class name `{s}`")))?;
        if !(1..=25).contains(&n) {
            return Err(Error::Invalid(format!("no class c{n}")));
        }
        Ok(ClassId(n))
    }
}

#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub id: ClassId,
    pub carter: &'static str,
    pub order: u64,
    /// Characteristic polynomial on the complement of K, low to high.
    pub charpoly: IntPoly,
    pub eigen_list: Vec<&'static str>,
    pub class_size: usize,
    /// Traces of the first nine powers on all of Pic.
    pub trace_tuple: [i64; 9],
    pub inv_rank_cyclic: usize,
    pub representative: LinePerm,
    pub names: &'static str,
}

pub struct WeylGroup {
    elements: Vec<LinePerm>,
    index: HashMap<LinePerm, u32>,
    generators: Vec<LinePerm>,
    class_of: Vec<u8>,
    classes: Vec<ClassRecord>,
}

/// The shared group instance, generated on first use.
pub fn weyl() -> &'static WeylGroup {
    static GROUP: OnceLock<WeylGroup> = OnceLock::new();
    GROUP.get_or_init(|| WeylGroup::generate().expect("W(E6) generation is self-consistent"))
}

pub fn mat_pow_traces(m: &Mat7, n: usize) -> Vec<i64> {
    let mut p = intpoly::identity7();
    (0..n)
        .map(|_| {
            p = intpoly::mat_mul(&p, m);
            intpoly::trace(&p)
        })
        .collect()
}

/// Characteristic polynomial on the complement of K: det(tI - M) / (t - 1).
pub fn charpoly_k_perp(g: &LinePerm) -> IntPoly {
    let full = intpoly::charpoly7(&g.matrix());
    intpoly::div_exact(&full, &[-1, 1]).expect("K is fixed, so t - 1 divides")
}

/// Rank of the sublattice of Pic fixed by `g`.
pub fn invariant_rank(g: &LinePerm) -> usize {
    let m = g.matrix();
    let rows: Vec<Vec<i64>> = (0..7)
        .map(|r| (0..7).map(|c| m[r][c] - i64::from(r == c)).collect())
        .collect();
    7 - intpoly::rank(&rows)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Order3Type {
    I,
    II,
    III,
}

impl WeylGroup {
    pub fn generate() -> Result<WeylGroup> {
        let generators: Vec<LinePerm> = simple_roots().iter().map(reflection).collect::<Result<_>>()?;
        let mut elements = vec![LinePerm::identity()];
        let mut index = HashMap::new();
        index.insert(LinePerm::identity(), 0u32);
        let mut queue = VecDeque::from([LinePerm::identity()]);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let h = s.compose(&g);
                if !index.contains_key(&h) {
                    index.insert(h, elements.len() as u32);
                    elements.push(h);
                    queue.push_back(h);
                }
            }
        }
        let mut group = WeylGroup { elements, index, generators, class_of: Vec::new(), classes: Vec::new() };
        group.build_classes()?;
        Ok(group)
    }

    fn build_classes(&mut self) -> Result<()> {
        let n = self.elements.len();
        let mut class_of = vec![0u8; n];
        let mut expected: HashMap<(u64, IntPoly), u8> = HashMap::new();
        for row in &TABLE {
            let key = (row.order, charpoly_from_eigen(&row.eigenvalues)?);
            if expected.insert(key, row.number).is_some() {
                return Err(Error::Verification(format!(
                    "(order, charpoly) does not separate class c{}",
                    row.number
                )));
            }
        }
        let mut records: Vec<ClassRecord> = Vec::new();
        for start in 0..n {
            if class_of[start] != 0 {
                continue;
            }
            let rep = self.elements[start];
            let key = (rep.order(), charpoly_k_perp(&rep));
            let number = *expected.get(&key).ok_or_else(|| {
                Error::Verification(format!("class of {} matches no table row", rep.display_cycles()))
            })?;
            if records.iter().any(|r| r.id.0 == number) {
                return Err(Error::Verification(format!("two computed classes match c{number}")));
            }
            let mut size = 0usize;
            let mut queue = VecDeque::from([start]);
            class_of[start] = number;
            while let Some(i) = queue.pop_front() {
                size += 1;
                let g = self.elements[i];
                for s in &self.generators {
                    let h = s.compose(&g).compose(s);
                    let j = self.index[&h] as usize;
                    if class_of[j] == 0 {
                        class_of[j] = number;
                        queue.push_back(j);
                    }
                }
            }
            let row = &TABLE[number as usize - 1];
            let traces = mat_pow_traces(&rep.matrix(), 9);
            records.push(ClassRecord {
                id: ClassId(number),
                carter: row.carter,
                order: key.0,
                charpoly: key.1,
                eigen_list: row.eigenvalues.to_vec(),
                class_size: size,
                trace_tuple: traces.try_into().expect("nine traces"),
                inv_rank_cyclic: invariant_rank(&rep),
                representative: rep,
                names: row.names,
            });
        }
        if records.len() != TABLE.len() {
            return Err(Error::Verification(format!("found {} classes, expected 25", records.len())));
        }
        records.sort_by_key(|r| r.id);
        self.class_of = class_of;
        self.classes = records;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[LinePerm] {
        &self.elements
    }

    pub fn generators(&self) -> &[LinePerm] {
        &self.generators
    }

    pub fn contains(&self, g: &LinePerm) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &LinePerm) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn conjugacy_classes(&self) -> &[ClassRecord] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &ClassRecord {
        &self.classes[id.0 as usize - 1]
    }

    pub fn class_of(&self, g: &LinePerm) -> Option<&ClassRecord> {
        let i = self.index_of(g)?;
        Some(self.class(ClassId(self.class_of[i])))
    }

    /// Class number of the element at position `i` of [`Self::elements`].
    pub fn class_id_at(&self, i: usize) -> ClassId {
        ClassId(self.class_of[i])
    }

    /// Classes whose cyclic subgroups have invariant rank 1.
    pub fn minimal_cyclic_classes(&self) -> Vec<ClassId> {
        self.classes.iter().filter(|c| c.inv_rank_cyclic == 1).map(|c| c.id).collect()
    }

    pub fn order3_type(&self, g: &LinePerm) -> Result<Order3Type> {
        let c = self
            .class_of(g)
            .ok_or_else(|| Error::Invalid("element is not in W(E6)".into()))?;
        match c.id.0 {
            11 => Ok(Order3Type::I),
            6 => Ok(Order3Type::II),
            9 => Ok(Order3Type::III),
            _ => Err(Error::Invalid(format!("element of order {} has no order-3 type", c.order))),
        }
    }

    /// All elements acting as E_i <-> Q_i and fixing every L_ij.
    pub fn elements_swapping_e_and_q(&self) -> Vec<LinePerm> {
        self.elements
            .iter()
            .filter(|g| {
                LineLabel::all().all(|l| {
                    g.apply(l)
                        == match l {
                            LineLabel::E(i) => LineLabel::Q(i),
                            LineLabel::Q(i) => LineLabel::E(i),
                            other => other,
                        }
                })
            })
            .copied()
            .collect()
    }

    /// The subgroup generated by `gens`, by closure.
    pub fn generated_subgroup(&self, gens: &[LinePerm]) -> Vec<LinePerm> {
        let mut seen = vec![LinePerm::identity()];
        let mut queue = VecDeque::from([LinePerm::identity()]);
        let mut have: std::collections::HashSet<LinePerm> = seen.iter().copied().collect();
        while let Some(g) = queue.pop_front() {
            for s in gens {
                let h = s.compose(&g);
                if have.insert(h) {
                    seen.push(h);
                    queue.push_back(h);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_id_parsing() {
        assert_eq!("c11".parse::<ClassId>().unwrap(), ClassId(11));
        assert!("c26".parse::<ClassId>().is_err());
        assert!("x1".parse::<ClassId>().is_err());
        assert_eq!(ClassId(13).to_string(), "c13");
    }

    #[test]
    fn charpoly_of_transposition() {
        let g = LinePerm::from_cycles(&[&[1, 2]]);
        // (t + 1)(t - 1)^5
        let expect = intpoly::mul(&[1, 1], &intpoly::pow(&[-1, 1], 5));
        assert_eq!(charpoly_k_perp(&g), expect);
        assert_eq!(invariant_rank(&g), 6);
        assert_eq!(invariant_rank(&LinePerm::identity()), 7);
    }
}
