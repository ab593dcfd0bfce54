//! Ribbon data: the combinatorial record of a ribbon presentation.
//!
//! For n >= 2 a presentation is determined up to simple equivalence by the
//! number of bases and, for every handle, its two attaching bases together
//! with the signed sequence of bases its core passes through. Bases are
//! numbered `1..=base_count` everywhere in this crate.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::RibbonError;

/// Direction in which a handle passes through a base, relative to the
/// base's normal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Neg => -1,
            Sign::Pos => 1,
        }
    }
}

/// One ribbon intersection of a handle with a base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedLetter {
    pub base: usize,
    pub sign: Sign,
}

impl SignedLetter {
    pub fn new(base: usize, sign: Sign) -> Self {
        SignedLetter { base, sign }
    }

    pub fn pos(base: usize) -> Self {
        SignedLetter::new(base, Sign::Pos)
    }

    pub fn neg(base: usize) -> Self {
        SignedLetter::new(base, Sign::Neg)
    }

    /// Signed integer form used by the file formats: `+b` or `-b`.
    pub fn from_signed(value: i64) -> Option<Self> {
        match value {
            0 => None,
            v if v > 0 => Some(SignedLetter::pos(v as usize)),
            v => Some(SignedLetter::neg(v.unsigned_abs() as usize)),
        }
    }

    pub fn to_signed(self) -> i64 {
        self.sign.as_i64() * self.base as i64
    }

    pub fn inverse(self) -> Self {
        SignedLetter::new(self.base, self.sign.flip())
    }

    pub fn cancels(self, other: SignedLetter) -> bool {
        self.base == other.base && self.sign != other.sign
    }
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}

/// The word read when a handle is traversed backwards.
pub fn reverse_and_flip(word: &[SignedLetter]) -> Vec<SignedLetter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// Freely reduced form of a word. The result does not depend on the order in
/// which cancelling pairs are removed.
pub fn reduce_word(word: &[SignedLetter]) -> Vec<SignedLetter> {
    let mut out: Vec<SignedLetter> = Vec::with_capacity(word.len());
    for &letter in word {
        match out.last() {
            Some(&top) if top.cancels(letter) => {
                out.pop();
            }
            _ => out.push(letter),
        }
    }
    out
}

/// Index of the leftmost adjacent cancelling pair.
pub fn first_cancelling_pair(word: &[SignedLetter]) -> Option<usize> {
    word.windows(2).position(|w| w[0].cancels(w[1]))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Handle {
    pub start: usize,
    pub end: usize,
    /// Bases crossed on the way from `start` to `end`.
    pub word: Vec<SignedLetter>,
}

impl Handle {
    pub fn new(start: usize, end: usize, word: Vec<SignedLetter>) -> Self {
        Handle { start, end, word }
    }

    /// A handle with both ends on `base` that crosses nothing.
    pub fn trivial(base: usize) -> Self {
        Handle::new(base, base, Vec::new())
    }

    pub fn is_trivial(&self) -> bool {
        self.start == self.end && self.word.is_empty()
    }

    /// The same handle described from its other end.
    pub fn reversed(&self) -> Handle {
        Handle::new(self.end, self.start, reverse_and_flip(&self.word))
    }

    /// The smaller of the two descriptions of this handle, and whether it is
    /// the reversed one.
    pub fn oriented(self) -> (Handle, bool) {
        let rev = self.reversed();
        if rev < self {
            (rev, true)
        } else {
            (self, false)
        }
    }

    fn relabeled(&self, base_map: &[usize]) -> Handle {
        Handle::new(
            base_map[self.start - 1],
            base_map[self.end - 1],
            self.word
                .iter()
                .map(|l| SignedLetter::new(base_map[l.base - 1], l.sign))
                .collect(),
        )
    }
}

impl Ord for Handle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.start
            .cmp(&other.start)
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.end.cmp(&other.end))
    }
}

impl PartialOrd for Handle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Header,
    /// Zero-based handle index.
    Handle(usize),
    Letter {
        handle: usize,
        position: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub location: Location,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match self.location {
            Location::Header => write!(f, "{severity}: {}", self.message),
            Location::Handle(h) => write!(f, "{severity}: handle {}: {}", h + 1, self.message),
            Location::Letter { handle, position } => write!(
                f,
                "{severity}: handle {} letter {}: {}",
                handle + 1,
                position,
                self.message
            ),
        }
    }
}

pub type Diagnostics = Vec<Diagnostic>;

/// Bases, and handles with their signed crossing words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RibbonData {
    /// Dimension n of the knotted sphere. Carried as metadata only.
    pub dim: u32,
    pub base_count: usize,
    pub handles: Vec<Handle>,
}

impl Ord for RibbonData {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base_count
            .cmp(&other.base_count)
            .then_with(|| self.handles.cmp(&other.handles))
            .then_with(|| self.dim.cmp(&other.dim))
    }
}

impl PartialOrd for RibbonData {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Relabeling that takes some ribbon data to its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    /// `base_map[i]` is the canonical label of input base `i + 1`.
    pub base_map: Vec<usize>,
    /// For canonical handle `j`: the zero-based input handle it came from and
    /// whether that handle was reversed.
    pub handle_source: Vec<(usize, bool)>,
}

impl Labeling {
    /// Input base carrying canonical label `canonical`.
    pub fn input_base(&self, canonical: usize) -> usize {
        self.base_map
            .iter()
            .position(|&c| c == canonical)
            .map(|i| i + 1)
            .expect("canonical label in range")
    }
}

/// Above this many candidate relabelings the members of the largest colour
/// classes keep their input order; canonical forms may then fail to coincide
/// for isomorphic inputs.
const EXACT_RELABELING_LIMIT: usize = 40_320;

impl RibbonData {
    /// Builds ribbon data, rejecting anything [`RibbonData::validate`] flags
    /// as an error.
    pub fn new(dim: u32, base_count: usize, handles: Vec<Handle>) -> Result<Self, RibbonError> {
        let data = RibbonData {
            dim,
            base_count,
            handles,
        };
        match data
            .validate()
            .into_iter()
            .find(|d| d.severity == Severity::Error)
        {
            Some(d) => Err(RibbonError::Invalid(format!("{d}"))),
            None => Ok(data),
        }
    }

    /// One base, no handles.
    pub fn unknot() -> Self {
        RibbonData {
            dim: 2,
            base_count: 1,
            handles: Vec::new(),
        }
    }

    /// Two bases joined by one handle crossing `-2 -1`; its presented quandle
    /// relation reproduces the trefoil group.
    pub fn spun_trefoil() -> Self {
        RibbonData {
            dim: 2,
            base_count: 2,
            handles: vec![Handle::new(
                1,
                2,
                vec![SignedLetter::neg(2), SignedLetter::neg(1)],
            )],
        }
    }

    /// One base carrying `g` trivial handles.
    pub fn torus(g: usize) -> Self {
        RibbonData {
            dim: 2,
            base_count: 1,
            handles: vec![Handle::trivial(1); g],
        }
    }

    /// Every invariant violation; empty for valid data.
    pub fn validate(&self) -> Diagnostics {
        let mut out = Vec::new();
        let err = |message: String, location: Location| Diagnostic {
            severity: Severity::Error,
            message,
            location,
        };
        if self.dim < 2 {
            out.push(err("dim must be \u{2265} 2".into(), Location::Header));
        }
        if self.base_count < 1 {
            out.push(err(
                "base count must be \u{2265} 1".into(),
                Location::Header,
            ));
        }
        let in_range = |b: usize| (1..=self.base_count).contains(&b);
        for (h, handle) in self.handles.iter().enumerate() {
            for b in [handle.start, handle.end] {
                if !in_range(b) {
                    out.push(err(
                        format!("base index {b} out of range"),
                        Location::Handle(h),
                    ));
                }
            }
            for (position, letter) in handle.word.iter().enumerate() {
                if !in_range(letter.base) {
                    out.push(err(
                        format!("base index {} out of range", letter.base),
                        Location::Letter {
                            handle: h,
                            position,
                        },
                    ));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Number of connected components of the graph whose vertices are bases
    /// and whose edges are handles.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.base_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut count = self.base_count;
        for h in &self.handles {
            let a = find(&mut parent, h.start - 1);
            let b = find(&mut parent, h.end - 1);
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }

    /// Number of 1-handles attached to the sphere: `|H| - |B| + 1`.
    pub fn genus(&self) -> Result<usize, RibbonError> {
        if self.handles.len() + 1 < self.base_count || !self.is_connected() {
            return Err(RibbonError::NotAKnot);
        }
        Ok(self.handles.len() + 1 - self.base_count)
    }

    pub fn is_sphere_knot(&self) -> bool {
        self.is_connected() && self.handles.len() + 1 == self.base_count
    }

    pub fn free_reduce(&self) -> RibbonData {
        RibbonData {
            dim: self.dim,
            base_count: self.base_count,
            handles: self
                .handles
                .iter()
                .map(|h| Handle::new(h.start, h.end, reduce_word(&h.word)))
                .collect(),
        }
    }

    /// Applies a base relabeling (`base_map[i]` is the new label of base
    /// `i + 1`), keeping handle order and orientation.
    pub fn relabel(&self, base_map: &[usize]) -> RibbonData {
        RibbonData {
            dim: self.dim,
            base_count: self.base_count,
            handles: self.handles.iter().map(|h| h.relabeled(base_map)).collect(),
        }
    }

    pub fn canonical_form(&self) -> RibbonData {
        self.canonical_labeling().0
    }

    /// Canonical form together with the relabeling that produces it from the
    /// freely reduced input.
    pub fn canonical_labeling(&self) -> (RibbonData, Labeling) {
        let reduced = self.free_reduce();
        let colors = base_colors(&reduced);
        let n = reduced.base_count;

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&b| (colors[b], b));
        let mut cells: Vec<(usize, usize)> = Vec::new();
        let mut lo = 0;
        for i in 1..=n {
            if i == n || colors[order[i]] != colors[order[lo]] {
                cells.push((lo, i));
                lo = i;
            }
        }
        let mut permuted: Vec<(usize, usize)> =
            cells.iter().copied().filter(|&(l, h)| h - l > 1).collect();
        permuted.sort_by_key(|&(l, h)| h - l);
        while candidate_count(&permuted) > EXACT_RELABELING_LIMIT {
            permuted.pop();
        }
        permuted.sort();

        let mut best: Option<(Vec<Handle>, Labeling)> = None;
        let mut visit = |order: &[usize]| {
            let mut base_map = vec![0; n];
            for (k, &b) in order.iter().enumerate() {
                base_map[b] = k + 1;
            }
            let mut handles: Vec<(Handle, usize, bool)> = reduced
                .handles
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    let (h, rev) = h.relabeled(&base_map).oriented();
                    (h, i, rev)
                })
                .collect();
            handles.sort();
            let better = match &best {
                None => true,
                Some((b, _)) => handles.iter().map(|t| &t.0).lt(b.iter()),
            };
            if better {
                let labeling = Labeling {
                    base_map,
                    handle_source: handles.iter().map(|&(_, i, r)| (i, r)).collect(),
                };
                best = Some((handles.into_iter().map(|t| t.0).collect(), labeling));
            }
        };
        permute_cells(&permuted, 0, &mut order, &mut visit);

        let (handles, labeling) = best.expect("at least one relabeling");
        (
            RibbonData {
                dim: self.dim,
                base_count: n,
                handles,
            },
            labeling,
        )
    }
}

fn candidate_count(cells: &[(usize, usize)]) -> usize {
    cells.iter().fold(1usize, |acc, &(lo, hi)| {
        (1..=hi - lo).fold(acc, |a, k| a.saturating_mul(k))
    })
}

fn permute_cells(
    cells: &[(usize, usize)],
    index: usize,
    order: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    match cells.get(index) {
        None => visit(order),
        Some(&(lo, hi)) => permute_range(cells, index, lo, hi, order, visit),
    }
}

fn permute_range(
    cells: &[(usize, usize)],
    index: usize,
    k: usize,
    hi: usize,
    order: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if k + 1 >= hi {
        permute_cells(cells, index + 1, order, visit);
        return;
    }
    for i in k..hi {
        order.swap(k, i);
        permute_range(cells, index, k + 1, hi, order, visit);
        order.swap(k, i);
    }
}

/// Relabeling-invariant colouring of bases by iterated refinement. Signs and
/// handle orientation are ignored so that the colouring is also invariant
/// under handle reversal.
fn base_colors(data: &RibbonData) -> Vec<usize> {
    type Entry = (usize, usize, usize, usize, Vec<usize>);
    let n = data.base_count;
    let mut colors = vec![0usize; n];
    let mut classes = 1;
    loop {
        let mut keys: Vec<(usize, Vec<Entry>)> = (0..n).map(|b| (colors[b], Vec::new())).collect();
        for h in &data.handles {
            let (s, e) = (h.start - 1, h.end - 1);
            let ends = (colors[s].min(colors[e]), colors[s].max(colors[e]));
            let mut crossed: Vec<usize> = h.word.iter().map(|l| colors[l.base - 1]).collect();
            crossed.sort_unstable();
            let mut touched: Vec<usize> = h.word.iter().map(|l| l.base - 1).collect();
            touched.push(s);
            touched.push(e);
            touched.sort_unstable();
            touched.dedup();
            for b in touched {
                let at_ends = usize::from(s == b) + usize::from(e == b);
                let crossings = h.word.iter().filter(|l| l.base - 1 == b).count();
                keys[b]
                    .1
                    .push((at_ends, crossings, ends.0, ends.1, crossed.clone()));
            }
        }
        for key in keys.iter_mut() {
            key.1.sort();
        }
        let mut distinct: Vec<&(usize, Vec<Entry>)> = keys.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = keys
            .iter()
            .map(|k| distinct.binary_search(&k).expect("key present"))
            .collect();
        let next_classes = distinct.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}
