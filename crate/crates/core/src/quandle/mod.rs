//! Finite quandles and the presented knot quandle of ribbon data.
//!
//! Conventions: `a * b` is written `a^b`, and `a^{bc} = (a^b)^c`. The
//! inverse operation `a^{~b}` is the unique `x` with `x * b = a`. A handle
//! from base `s` to base `e` crossing `(a1, e1) ... (ak, ek)` presents the
//! relation `e = s^{a1^(-e1) ... ak^(-ek)}`: every crossing of sign `e`
//! contributes exponent `-e`.

mod alexander;
mod coloring;
mod group;
mod laurent;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use alexander::{alexander_polynomial, fox_jacobian};
pub use coloring::{coloring_profile, colorings, count_colorings, ColoringProfile};
pub use group::{
    abelianization_rank_check, abelianized_rank, group_presentation, FreeWord, GroupPresentation,
    GroupRelation,
};
pub use laurent::LaurentPoly;

use crate::error::QuandleError;
use crate::ribbon::{RibbonData, Sign};

/// A quandle on `1..=size`, stored as its operation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuandle {
    id: String,
    size: usize,
    /// Row-major, zero-based: `table[x * size + y] = x * y`.
    table: Vec<u32>,
    /// `inverse[z * size + y]` is the `x` with `x * y = z`, when every right
    /// translation is a bijection.
    inverse: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `x * x != x`.
    Idempotence { x: u32 },
    /// `x -> x * y` is not a bijection.
    RightTranslation { y: u32 },
    /// `(a * b) * c != (a * c) * (b * c)`.
    Distributivity { a: u32, b: u32, c: u32 },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::Idempotence { x } => write!(f, "idempotence fails at x={x}"),
            AxiomViolation::RightTranslation { y } => {
                write!(f, "right translation by y={y} is not a bijection")
            }
            AxiomViolation::Distributivity { a, b, c } => {
                write!(f, "right distributivity fails at (a,b,c)=({a},{b},{c})")
            }
        }
    }
}

impl FiniteQuandle {
    /// Builds a table from 1-based rows: `rows[x-1][y-1] = x * y`. Only the
    /// shape and entry range are checked here; see [`Self::check_axioms`].
    pub fn from_rows(id: impl Into<String>, rows: &[Vec<u32>]) -> Result<Self, QuandleError> {
        let size = rows.len();
        if size == 0 {
            return Err(QuandleError::EmptyQuandle);
        }
        let mut table = Vec::with_capacity(size * size);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(QuandleError::Malformed(format!(
                    "row {} has {} entries, expected {size}",
                    x + 1,
                    row.len()
                )));
            }
            for &v in row {
                if v < 1 || v as usize > size {
                    return Err(QuandleError::Malformed(format!(
                        "entry {v} in row {} out of range 1..{size}",
                        x + 1
                    )));
                }
                table.push(v - 1);
            }
        }
        let mut q = FiniteQuandle {
            id: id.into(),
            size,
            table,
            inverse: None,
        };
        q.inverse = q.build_inverse();
        Ok(q)
    }

    /// `x * y = (2y - x) mod m`, with `m` standing for the residue 0.
    pub fn dihedral(m: usize) -> Result<Self, QuandleError> {
        if m < 1 {
            return Err(QuandleError::EmptyQuandle);
        }
        let rows: Vec<Vec<u32>> = (1..=m as i64)
            .map(|x| {
                (1..=m as i64)
                    .map(|y| {
                        let r = (2 * y - x).rem_euclid(m as i64);
                        if r == 0 {
                            m as u32
                        } else {
                            r as u32
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(format!("dihedral:{m}"), &rows)
    }

    /// `x * y = x`.
    pub fn trivial(m: usize) -> Result<Self, QuandleError> {
        if m < 1 {
            return Err(QuandleError::EmptyQuandle);
        }
        let rows: Vec<Vec<u32>> = (1..=m as u32).map(|x| vec![x; m]).collect();
        Self::from_rows(format!("trivial:{m}"), &rows)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `x * y` on 1-based elements.
    pub fn star(&self, x: u32, y: u32) -> u32 {
        self.op(x - 1, y - 1) + 1
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table
            .chunks(self.size)
            .map(|row| row.iter().map(|v| v + 1).collect())
            .collect()
    }

    #[inline]
    pub(crate) fn op(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.size + y as usize]
    }

    /// Zero-based `x^{~y}`; only meaningful once right translations are
    /// known to be bijections.
    #[inline]
    pub(crate) fn op_inv(&self, x: u32, y: u32) -> u32 {
        let inv = self
            .inverse
            .as_ref()
            .expect("right translations are bijections");
        inv[x as usize * self.size + y as usize]
    }

    /// Zero-based `x^{y}` or `x^{~y}`.
    #[inline]
    pub(crate) fn act(&self, x: u32, y: u32, exponent: Sign) -> u32 {
        match exponent {
            Sign::Pos => self.op(x, y),
            Sign::Neg => self.op_inv(x, y),
        }
    }

    fn build_inverse(&self) -> Option<Vec<u32>> {
        let m = self.size;
        let mut inv = vec![u32::MAX; m * m];
        for y in 0..m {
            for x in 0..m {
                let z = self.table[x * m + y] as usize;
                if inv[z * m + y] != u32::MAX {
                    return None;
                }
                inv[z * m + y] = x as u32;
            }
        }
        Some(inv)
    }

    /// Every violated instance of the three quandle axioms, 1-based.
    pub fn check_axioms(&self) -> Vec<AxiomViolation> {
        let m = self.size as u32;
        let mut out = Vec::new();
        for x in 0..m {
            if self.op(x, x) != x {
                out.push(AxiomViolation::Idempotence { x: x + 1 });
            }
        }
        for y in 0..m {
            let mut hit = vec![false; self.size];
            for x in 0..m {
                hit[self.op(x, y) as usize] = true;
            }
            if hit.iter().any(|h| !h) {
                out.push(AxiomViolation::RightTranslation { y: y + 1 });
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = self.op(a, b);
                for c in 0..m {
                    if self.op(ab, c) != self.op(self.op(a, c), self.op(b, c)) {
                        out.push(AxiomViolation::Distributivity {
                            a: a + 1,
                            b: b + 1,
                            c: c + 1,
                        });
                    }
                }
            }
        }
        out
    }

    pub(crate) fn ensure_quandle(&self) -> Result<(), QuandleError> {
        if self.inverse.is_none() {
            return Err(QuandleError::AxiomsViolated(self.check_axioms().len()));
        }
        let violations = self.check_axioms();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(QuandleError::AxiomsViolated(violations.len()))
        }
    }
}

pub fn check_quandle_axioms(q: &FiniteQuandle) -> Vec<AxiomViolation> {
    q.check_axioms()
}

/// Letters `(generator, exponent)`; exponent `Pos` applies `* g`, `Neg` the
/// inverse operation.
pub type OperatorWord = Vec<(usize, Sign)>;

/// `lhs = rhs^{word}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleRelation {
    pub lhs: usize,
    pub rhs: usize,
    pub word: OperatorWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandlePresentation {
    pub generators: usize,
    pub relations: Vec<QuandleRelation>,
}

/// One generator per base and one relation per handle, expressing the end
/// base in terms of the start base.
pub fn quandle_presentation(data: &RibbonData) -> QuandlePresentation {
    QuandlePresentation {
        generators: data.base_count,
        relations: data
            .handles
            .iter()
            .map(|h| QuandleRelation {
                lhs: h.end,
                rhs: h.start,
                word: h.word.iter().map(|l| (l.base, l.sign.flip())).collect(),
            })
            .collect(),
    }
}

impl fmt::Display for QuandleRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{} = g{}", self.lhs, self.rhs)?;
        for &(g, e) in &self.word {
            let op = if e == Sign::Pos { '*' } else { '/' };
            write!(f, " {op} g{g}")?;
        }
        Ok(())
    }
}

impl fmt::Display for QuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators {}", self.generators)?;
        for r in &self.relations {
            writeln!(f, "relation {r}")?;
        }
        Ok(())
    }
}

impl QuandlePresentation {
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}
