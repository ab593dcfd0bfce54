//! The knot group read off a ribbon presentation, with `x^y = y^-1 x y`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::RibbonError;
use crate::ribbon::{RibbonData, Sign};

/// Letters `(generator, exponent)` of a free group word.
pub type FreeWord = Vec<(usize, Sign)>;

/// `lhs = conjugator^-1 rhs conjugator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRelation {
    pub lhs: usize,
    pub rhs: usize,
    pub conjugator: FreeWord,
}

impl GroupRelation {
    /// The relator `W^-1 rhs W lhs^-1` (not freely reduced).
    pub fn relator(&self) -> FreeWord {
        let mut out: FreeWord = self
            .conjugator
            .iter()
            .rev()
            .map(|&(g, e)| (g, e.flip()))
            .collect();
        out.push((self.rhs, Sign::Pos));
        out.extend(self.conjugator.iter().copied());
        out.push((self.lhs, Sign::Neg));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relations: Vec<GroupRelation>,
}

/// Generator per base; per handle `b_e = W^-1 b_s W` with
/// `W = a1^(-e1) ... ak^(-ek)`.
pub fn group_presentation(data: &RibbonData) -> GroupPresentation {
    GroupPresentation {
        generators: data.base_count,
        relations: data
            .handles
            .iter()
            .map(|h| GroupRelation {
                lhs: h.end,
                rhs: h.start,
                conjugator: h.word.iter().map(|l| (l.base, l.sign.flip())).collect(),
            })
            .collect(),
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &FreeWord) -> fmt::Result {
    for (i, &(g, e)) in word.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        match e {
            Sign::Pos => write!(f, "g{g}")?,
            Sign::Neg => write!(f, "g{g}^-1")?,
        }
    }
    Ok(())
}

impl fmt::Display for GroupRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{} = ", self.lhs)?;
        if self.conjugator.is_empty() {
            return write!(f, "g{}", self.rhs);
        }
        write!(f, "(")?;
        write_word(f, &self.conjugator)?;
        write!(f, ")^-1 g{} (", self.rhs)?;
        write_word(f, &self.conjugator)?;
        write!(f, ")")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators {}", self.generators)?;
        for r in &self.relations {
            writeln!(f, "relation {r}")?;
        }
        Ok(())
    }
}

/// Rank over the integers of the abelianized relation matrix, whose rows
/// are `b_e - b_s`.
pub fn abelianized_rank(data: &RibbonData) -> usize {
    let n = data.base_count;
    let mut rows: Vec<Vec<i64>> = data
        .handles
        .iter()
        .map(|h| {
            let mut row = alloc::vec![0i64; n];
            row[h.end - 1] += 1;
            row[h.start - 1] -= 1;
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &pv) in row.iter_mut().zip(&pivot) {
                *x = *x * pivot[col] - factor * pv;
            }
            let g = row.iter().fold(0i64, |g, &x| gcd(g, x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Knot groups abelianize to the integers: the relation matrix must have
/// rank `|B| - 1`.
pub fn abelianization_rank_check(data: &RibbonData) -> Result<bool, RibbonError> {
    if !data.is_connected() {
        return Err(RibbonError::NotAKnot);
    }
    Ok(abelianized_rank(data) + 1 == data.base_count)
}
