//! Exact counting of quandle colorings (homomorphisms from the presented
//! quandle into a finite quandle).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::FiniteQuandle;
use crate::error::QuandleError;
use crate::ribbon::{RibbonData, Sign};

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoringProfile {
    /// `(quandle id, count)` in the order the quandles were given.
    pub entries: Vec<(String, u64)>,
}

impl ColoringProfile {
    pub fn counts(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.1).collect()
    }
}

struct Relation {
    start: usize,
    end: usize,
    /// Zero-based generators with the exponent applied when walking from
    /// start to end.
    ops: Vec<(usize, Sign)>,
}

struct Solver<'q> {
    q: &'q FiniteQuandle,
    relations: Vec<Relation>,
    /// Relations mentioning each generator.
    watch: Vec<Vec<usize>>,
}

impl<'q> Solver<'q> {
    fn new(data: &RibbonData, q: &'q FiniteQuandle) -> Self {
        let relations: Vec<Relation> = data
            .handles
            .iter()
            .filter(|h| !h.is_trivial())
            .map(|h| Relation {
                start: h.start - 1,
                end: h.end - 1,
                ops: h.word.iter().map(|l| (l.base - 1, l.sign.flip())).collect(),
            })
            .collect();
        let mut watch = vec![Vec::new(); data.base_count];
        for (i, r) in relations.iter().enumerate() {
            let mut gens: Vec<usize> = r.ops.iter().map(|o| o.0).collect();
            gens.push(r.start);
            gens.push(r.end);
            gens.sort_unstable();
            gens.dedup();
            for g in gens {
                watch[g].push(i);
            }
        }
        Solver {
            q,
            relations,
            watch,
        }
    }

    /// Assigns every value forced by a relation whose operator letters are
    /// all known. Returns false on a contradiction.
    fn propagate(&self, colors: &mut [u32], mut queue: Vec<usize>) -> bool {
        while let Some(g) = queue.pop() {
            for &ri in &self.watch[g] {
                let r = &self.relations[ri];
                if r.ops.iter().any(|&(a, _)| colors[a] == UNSET) {
                    continue;
                }
                let (s, e) = (colors[r.start], colors[r.end]);
                if s != UNSET {
                    let v = r
                        .ops
                        .iter()
                        .fold(s, |x, &(a, exp)| self.q.act(x, colors[a], exp));
                    if e == UNSET {
                        colors[r.end] = v;
                        queue.push(r.end);
                    } else if e != v {
                        return false;
                    }
                } else if e != UNSET {
                    let v = r
                        .ops
                        .iter()
                        .rev()
                        .fold(e, |x, &(a, exp)| self.q.act(x, colors[a], exp.flip()));
                    colors[r.start] = v;
                    queue.push(r.start);
                }
            }
        }
        true
    }

    fn walk(
        &self,
        colors: &mut [u32],
        visit: &mut dyn FnMut(&[u32]) -> Result<(), QuandleError>,
    ) -> Result<(), QuandleError> {
        let Some(g) = colors.iter().position(|&c| c == UNSET) else {
            return visit(colors);
        };
        for v in 0..self.q.size() as u32 {
            let mut next = colors.to_vec();
            next[g] = v;
            if self.propagate(&mut next, vec![g]) {
                self.walk(&mut next, visit)?;
            }
        }
        Ok(())
    }
}

/// Number of colorings of the presented quandle by `q`, by backtracking with
/// propagation of forced values.
pub fn count_colorings(data: &RibbonData, q: &FiniteQuandle) -> Result<u64, QuandleError> {
    q.ensure_quandle()?;
    let solver = Solver::new(data, q);
    let mut count: u64 = 0;
    let mut colors = vec![UNSET; data.base_count];
    solver.walk(&mut colors, &mut |_| {
        count = count.checked_add(1).ok_or(QuandleError::Overflow)?;
        Ok(())
    })?;
    Ok(count)
}

/// Every coloring as 1-based colours of bases `1..=|B|`, in lexicographic
/// order.
pub fn colorings(data: &RibbonData, q: &FiniteQuandle) -> Result<Vec<Vec<u32>>, QuandleError> {
    q.ensure_quandle()?;
    let solver = Solver::new(data, q);
    let mut out = Vec::new();
    let mut colors = vec![UNSET; data.base_count];
    solver.walk(&mut colors, &mut |c| {
        out.push(c.iter().map(|v| v + 1).collect());
        Ok(())
    })?;
    out.sort();
    Ok(out)
}

pub fn coloring_profile(
    data: &RibbonData,
    quandles: &[FiniteQuandle],
) -> Result<ColoringProfile, QuandleError> {
    let entries = quandles
        .iter()
        .map(|q| Ok((String::from(q.id()), count_colorings(data, q)?)))
        .collect::<Result<Vec<_>, QuandleError>>()?;
    Ok(ColoringProfile { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_connected;
    use crate::ribbon::{Handle, SignedLetter};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: test every assignment against every relation.
    fn brute_force(data: &RibbonData, q: &FiniteQuandle) -> u64 {
        let m = q.size() as u32;
        let n = data.base_count;
        let mut colors = vec![1u32; n];
        let mut count = 0;
        loop {
            let ok = data.handles.iter().all(|h| {
                let mut x = colors[h.start - 1];
                for l in &h.word {
                    let y = colors[l.base - 1];
                    x = match l.sign {
                        // crossing sign -1: apply * y
                        Sign::Neg => q.star(x, y),
                        Sign::Pos => (1..=m).find(|&z| q.star(z, y) == x).unwrap(),
                    };
                }
                x == colors[h.end - 1]
            });
            if ok {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                colors[i] += 1;
                if colors[i] <= m {
                    break;
                }
                colors[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn known_counts() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let r5 = FiniteQuandle::dihedral(5).unwrap();
        let trefoil = RibbonData::spun_trefoil();
        assert_eq!(brute_force(&trefoil, &r3), 9);
        assert_eq!(brute_force(&trefoil, &r5), 5);
        assert_eq!(count_colorings(&RibbonData::unknot(), &r3), Ok(3));
        assert_eq!(count_colorings(&trefoil, &r3), Ok(9));
        assert_eq!(count_colorings(&trefoil, &r5), Ok(5));
        let p = coloring_profile(&trefoil, &[r3.clone(), r5.clone()]).unwrap();
        assert_eq!(p.counts(), vec![9, 5]);
        assert_eq!(p.entries[0].0, "dihedral:3");
        let p = coloring_profile(&RibbonData::unknot(), &[r3, r5]).unwrap();
        assert_eq!(p.counts(), vec![3, 5]);
    }

    #[test]
    fn listing_matches_count() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let list = colorings(&RibbonData::spun_trefoil(), &r3).unwrap();
        assert_eq!(list.len(), 9);
        assert_eq!(list[0], vec![1, 1]);
    }

    #[test]
    fn rejects_non_quandle() {
        let bad = FiniteQuandle::from_rows("bad", &[vec![2, 2], vec![1, 2]]).unwrap();
        assert!(matches!(
            count_colorings(&RibbonData::unknot(), &bad),
            Err(QuandleError::AxiomsViolated(_))
        ));
    }

    #[test]
    fn matches_brute_force_on_random_data() {
        let quandles = [
            FiniteQuandle::dihedral(3).unwrap(),
            FiniteQuandle::dihedral(4).unwrap(),
            FiniteQuandle::dihedral(5).unwrap(),
            FiniteQuandle::trivial(3).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..150 {
            let d = random_connected(&mut rng, 4, 5, 4);
            for q in &quandles {
                assert_eq!(count_colorings(&d, q).unwrap(), brute_force(&d, q));
            }
        }
    }

    #[test]
    fn trivial_quandle_counts_components() {
        let t2 = FiniteQuandle::trivial(2).unwrap();
        let split = RibbonData {
            dim: 2,
            base_count: 3,
            handles: vec![Handle::new(1, 2, vec![SignedLetter::pos(3)])],
        };
        assert_eq!(count_colorings(&split, &t2), Ok(4));
        assert_eq!(count_colorings(&RibbonData::spun_trefoil(), &t2), Ok(2));
    }
}
