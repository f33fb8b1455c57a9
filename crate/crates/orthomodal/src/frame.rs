//! Compatibility frames: state spaces whose regular sets form
//! ortholattices.
//!
//! A frame is a finite set of named *possibilities* with a reflexive,
//! symmetric *compatibility* relation. Sets of possibilities are
//! represented as `u64` bitmasks (so frames hold at most 64 points,
//! far beyond desk scale). A set `A` is *regular* when every
//! possibility outside `A` has a compatible witness all of whose
//! compatible neighbours are outside `A`; the regular sets, ordered by
//! inclusion with `¬A = {x | no neighbour of x is in A}`, always form
//! an ortholattice, recovered by
//! [`CompatibilityFrame::proposition_lattice`].
//!
//! Optional structure turns a bare frame into richer state spaces:
//!
//! * a partial *information* function `i` (or, alternatively, an
//!   accessibility relation `r`) interpreting the box modality;
//! * a *grounding family* `bool_family` of regular sets interpreting
//!   Boolean atoms;
//! * a *proposition family* `prop_family` restricting which sets count
//!   as propositions (defaults to all regular sets);
//! * a partial *selection* function `c : S × prop_family → S`
//!   interpreting the conditional.
//!
//! [`CompatibilityFrame::check_condition`] probes the named frame
//! conditions, reporting the first failing instance in index order
//! (possibilities by index, sets by ascending bitmask).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::FiniteOrtholattice;

/// Maximum number of possibilities (sets are `u64` bitmasks).
pub const MAX_POINTS: usize = 64;

/// A finite compatibility frame with optional modal, grounding,
/// propositional, and conditional structure.
#[derive(Debug, Clone)]
pub struct CompatibilityFrame {
    names: Vec<String>,
    n: usize,
    /// `compat[x]` is the bitmask of possibilities compatible with `x`
    /// (always contains `x` itself).
    compat: Vec<u64>,
    i_fun: Option<Vec<Option<usize>>>,
    r_rel: Option<Vec<u64>>,
    bool_family: Option<Vec<u64>>,
    prop_family: Option<Vec<u64>>,
    selection: Option<BTreeMap<(usize, u64), usize>>,
}

/// Structural errors raised when building or validating a frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameError {
    /// Too many possibilities for the bitmask representation.
    TooLarge(usize),
    /// An index is out of range.
    BadIndex(usize),
    /// Duplicate possibility name.
    DuplicateName(String),
    /// A family member or valuation set is not regular.
    NotRegular(String),
    /// A family is not closed under an operation.
    NotClosed(String),
    /// The selection function's antecedent is outside the proposition family.
    BadSelectionKey(String),
    /// Some other well-formedness defect.
    Malformed(String),
}

impl fmt::Display for FrameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameError::TooLarge(n) => write!(f, "{n} possibilities exceed the maximum of {MAX_POINTS}"),
            FrameError::BadIndex(i) => write!(f, "possibility index {i} out of range"),
            FrameError::DuplicateName(name) => write!(f, "duplicate possibility name {name}"),
            FrameError::NotRegular(what) => write!(f, "{what} is not a regular set"),
            FrameError::NotClosed(what) => write!(f, "{what}"),
            FrameError::BadSelectionKey(what) => {
                write!(f, "selection antecedent {what} is not in the proposition family")
            }
            FrameError::Malformed(what) => write!(f, "{what}"),
        }
    }
}

impl core::error::Error for FrameError {}

/// Frame conditions checkable with [`CompatibilityFrame::check_condition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameCondition {
    /// Box of a regular set is regular: if `y ≬ i(x)` then some
    /// `x' ≬ x` has `y ≬ i(x'')` for every `x'' ≬ x'`.
    IRegularity,
    /// The information function is total.
    ITotal,
    /// Every possibility refines its information state: `x ⊑ i(x)`.
    Factivity,
    /// Every possibility refines some information state: `∃y: i(y) ⊑ x`.
    Knowability,
    /// Compatible members of the grounding family overlap: for
    /// `A, B` in the family, `x ∈ A`, `y ∈ B`, `x ≬ y` imply `A∩B ≠ ∅`.
    Grounding,
    /// Arrow of propositions is regular: if `y ≬ c(x,A)` then some
    /// `x' ≬ x` has `y ≬ c(x'',A)` for every `x'' ≬ x'`.
    CRegularity,
    /// Selected possibilities satisfy the antecedent.
    Id,
    /// If `x ∈ A` then `c(x,A)` agrees with `x` on the grounding family.
    Center,
    /// If some neighbour of `x` is in `A` then `c(x,A)` is
    /// grounding-compatible with `x`.
    Comp,
    /// If `i(x) ∈ A` then `c(x,A) = x`.
    MustCenter,
    /// If some neighbour's information state is in `A` then `c(x,A) ≬ x`.
    MustComp,
    /// Selection updates the information state: `i(c(x,A)) ∈ A`.
    Update,
    /// `c` commutes with `i` one way: either `c` is undefined at both
    /// `x,A` and `i(x),A`, or `i(c(x,A))` grounding-refines `c(i(x),A)`.
    MustImp,
    /// For grounding antecedents, `c` commutes with `i` the other way.
    MustExp,
    /// Selection preserves settled conjuncts compatible with the antecedent.
    Preserve,
    /// Selection flattens: composing with a stronger antecedent equals
    /// selecting on it directly.
    Flat,
    /// Under `◇A`, selections at compatible points are compatible.
    Cons,
    /// Antecedent-satisfying neighbours share a selection with a point
    /// whose information state satisfies the antecedent.
    Combine,
    /// For grounding antecedents, failure of `c(x,A) ∈ ¬B` is witnessed
    /// by a neighbour selecting into `B`.
    Switch,
    /// For grounding antecedents, selection into a join lands densely
    /// in the union.
    Split,
}

/// A failed condition probe with the first witnessing instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionFailure {
    /// The condition that failed.
    pub condition: FrameCondition,
    /// Possibilities and sets witnessing the failure, as display strings.
    pub witness: Vec<String>,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at (", self.condition)?;
        for (i, w) in self.witness.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

impl CompatibilityFrame {
    /// Build a frame from possibility names and undirected
    /// compatibility edges; reflexivity and symmetry are supplied
    /// automatically.
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, FrameError> {
        let n = names.len();
        if n == 0 || n > MAX_POINTS {
            return Err(FrameError::TooLarge(n));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(FrameError::DuplicateName(name.clone()));
            }
        }
        let mut compat = vec![0u64; n];
        for (x, row) in compat.iter_mut().enumerate() {
            *row = 1 << x;
        }
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(FrameError::BadIndex(a.max(b)));
            }
            compat[a] |= 1 << b;
            compat[b] |= 1 << a;
        }
        Ok(CompatibilityFrame {
            names,
            n,
            compat,
            i_fun: None,
            r_rel: None,
            bool_family: None,
            prop_family: None,
            selection: None,
        })
    }

    /// Attach a (possibly partial) information function.
    pub fn with_i(mut self, i_fun: Vec<Option<usize>>) -> Result<Self, FrameError> {
        if i_fun.len() != self.n {
            return Err(FrameError::Malformed(String::from("information map length mismatch")));
        }
        if let Some(bad) = i_fun.iter().flatten().find(|&&y| y >= self.n) {
            return Err(FrameError::BadIndex(*bad));
        }
        self.i_fun = Some(i_fun);
        Ok(self)
    }

    /// Attach an accessibility relation given as directed edges;
    /// reflexive loops must be listed explicitly if wanted.
    pub fn with_r(mut self, edges: &[(usize, usize)]) -> Result<Self, FrameError> {
        let mut rel = vec![0u64; self.n];
        for &(a, b) in edges {
            if a >= self.n || b >= self.n {
                return Err(FrameError::BadIndex(a.max(b)));
            }
            rel[a] |= 1 << b;
        }
        self.r_rel = Some(rel);
        Ok(self)
    }

    /// Attach the grounding family (interpreting Boolean atoms).
    pub fn with_bool_family(mut self, family: Vec<u64>) -> Result<Self, FrameError> {
        let mut sorted = family;
        sorted.sort_unstable();
        sorted.dedup();
        self.bool_family = Some(sorted);
        Ok(self)
    }

    /// Attach an explicit proposition family (defaults to all regular sets).
    pub fn with_prop_family(mut self, family: Vec<u64>) -> Result<Self, FrameError> {
        let mut sorted = family;
        sorted.sort_unstable();
        sorted.dedup();
        self.prop_family = Some(sorted);
        Ok(self)
    }

    /// Attach a partial selection function keyed by (possibility,
    /// antecedent-mask).
    pub fn with_selection(
        mut self,
        selection: BTreeMap<(usize, u64), usize>,
    ) -> Result<Self, FrameError> {
        for (&(x, _), &y) in &selection {
            if x >= self.n || y >= self.n {
                return Err(FrameError::BadIndex(x.max(y)));
            }
        }
        self.selection = Some(selection);
        Ok(self)
    }

    /// Number of possibilities.
    pub fn len(&self) -> usize {
        self.n
    }

    /// True when the frame has no possibilities (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Possibility names in index order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of the named possibility.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|candidate| candidate == name)
    }

    /// Bitmask of the whole space.
    pub fn full_mask(&self) -> u64 {
        if self.n == MAX_POINTS {
            u64::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    /// Compatibility test.
    pub fn compatible(&self, x: usize, y: usize) -> bool {
        self.compat[x] & (1 << y) != 0
    }

    /// Neighbourhood mask of `x`.
    pub fn neighbours(&self, x: usize) -> u64 {
        self.compat[x]
    }

    /// The information state of `x`, if defined.
    pub fn info(&self, x: usize) -> Option<usize> {
        self.i_fun.as_ref().and_then(|f| f[x])
    }

    /// Accessibility mask of `x`, if a relation is attached.
    pub fn accessible(&self, x: usize) -> Option<u64> {
        self.r_rel.as_ref().map(|r| r[x])
    }

    /// Whether the frame interprets the box (has `i` or `r`).
    pub fn has_modal(&self) -> bool {
        self.i_fun.is_some() || self.r_rel.is_some()
    }

    /// Whether a selection function is attached.
    pub fn has_selection(&self) -> bool {
        self.selection.is_some()
    }

    /// The grounding family, if attached.
    pub fn bool_family(&self) -> Option<&[u64]> {
        self.bool_family.as_deref()
    }

    /// The explicit proposition family, if attached.
    pub fn explicit_prop_family(&self) -> Option<&[u64]> {
        self.prop_family.as_deref()
    }

    /// The selection function, if attached.
    pub fn selection(&self) -> Option<&BTreeMap<(usize, u64), usize>> {
        self.selection.as_ref()
    }

    /// Orthonegation of an arbitrary set: possibilities with no
    /// neighbour in `a`. Always regular.
    pub fn neg_set(&self, a: u64) -> u64 {
        let mut out = 0;
        for x in 0..self.n {
            if self.compat[x] & a == 0 {
                out |= 1 << x;
            }
        }
        out
    }

    /// Regularity test: `a` equals its double negation.
    pub fn is_regular(&self, a: u64) -> bool {
        self.neg_set(self.neg_set(a)) == a
    }

    /// Join of two regular sets: `¬(¬a ∩ ¬b)`.
    pub fn join_set(&self, a: u64, b: u64) -> u64 {
        self.neg_set(self.neg_set(a) & self.neg_set(b))
    }

    /// Refinement: `y ⊑ x` iff every neighbour of `y` is a neighbour of `x`.
    pub fn refines(&self, y: usize, x: usize) -> bool {
        self.compat[y] & !self.compat[x] == 0
    }

    /// The refinements of `x`; always regular.
    pub fn down_set(&self, x: usize) -> u64 {
        let mut out = 0;
        for y in 0..self.n {
            if self.refines(y, x) {
                out |= 1 << y;
            }
        }
        out
    }

    /// Worlds: possibilities whose neighbourhood is pairwise
    /// compatible; exactly the points deciding every regular set.
    pub fn worlds(&self) -> u64 {
        let mut out = 0;
        'points: for x in 0..self.n {
            let mut rest = self.compat[x];
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.compat[y] & self.compat[x] != self.compat[x] {
                    continue 'points;
                }
            }
            out |= 1 << x;
        }
        out
    }

    /// Box via the information function (`x ⊨ □A` iff `i(x) ∈ A` where
    /// defined) or, failing that, via the accessibility relation
    /// (`r[x] ⊆ A`). `None` when the frame has neither.
    pub fn box_set(&self, a: u64) -> Option<u64> {
        if let Some(i_fun) = &self.i_fun {
            let mut out = 0;
            for (x, slot) in i_fun.iter().enumerate() {
                match slot {
                    Some(y) if a & (1 << y) != 0 => out |= 1 << x,
                    Some(_) => {}
                    None => out |= 1 << x,
                }
            }
            Some(out)
        } else {
            self.r_rel.as_ref().map(|r| {
                let mut out = 0;
                for (x, &row) in r.iter().enumerate() {
                    if row & !a == 0 {
                        out |= 1 << x;
                    }
                }
                out
            })
        }
    }

    /// Diamond as `¬□¬`.
    pub fn diamond_set(&self, a: u64) -> Option<u64> {
        self.box_set(self.neg_set(a)).map(|b| self.neg_set(b))
    }

    /// The compatibility box: possibilities all of whose neighbours are
    /// in `a`. Preserves regularity (unlike its dual, see
    /// [`maybe_between`](Self::maybe_between)).
    pub fn box_between(&self, a: u64) -> u64 {
        let mut out = 0;
        for x in 0..self.n {
            if self.compat[x] & !a == 0 {
                out |= 1 << x;
            }
        }
        out
    }

    /// Possibilities with at least one neighbour in `a`; need not be
    /// regular even for regular `a`.
    pub fn maybe_between(&self, a: u64) -> u64 {
        let mut out = 0;
        for x in 0..self.n {
            if self.compat[x] & a != 0 {
                out |= 1 << x;
            }
        }
        out
    }

    /// The conditional on sets: `x ∈ a→b` iff `c` defined at `(x,a)`
    /// implies `c(x,a) ∈ b`. `None` when no selection is attached.
    pub fn arrow_set(&self, a: u64, b: u64) -> Option<u64> {
        let selection = self.selection.as_ref()?;
        let mut out = 0;
        for x in 0..self.n {
            match selection.get(&(x, a)) {
                Some(&y) if b & (1 << y) == 0 => {}
                _ => out |= 1 << x,
            }
        }
        Some(out)
    }

    /// The proposition family: the explicit one when attached,
    /// otherwise all regular sets, in ascending bitmask order.
    pub fn prop_family(&self) -> Vec<u64> {
        match &self.prop_family {
            Some(family) => family.clone(),
            None => self.all_regular_sets(),
        }
    }

    /// All regular sets, computed as the closure of the down-sets and
    /// the bounds under intersection and negation, in ascending bitmask
    /// order. (Every regular set is a join of down-sets, so the closure
    /// is exhaustive.)
    pub fn all_regular_sets(&self) -> Vec<u64> {
        let mut family: BTreeSet<u64> = BTreeSet::new();
        family.insert(0);
        family.insert(self.full_mask());
        for x in 0..self.n {
            family.insert(self.down_set(x));
        }
        loop {
            let snapshot: Vec<u64> = family.iter().copied().collect();
            let before = family.len();
            for &a in &snapshot {
                family.insert(self.neg_set(a));
                for &b in &snapshot {
                    family.insert(a & b);
                }
            }
            if family.len() == before {
                break;
            }
        }
        family.into_iter().collect()
    }

    /// Display name for a set of possibilities, e.g. `{x1, x2}`.
    pub fn set_name(&self, a: u64) -> String {
        let mut out = String::from("{");
        let mut first = true;
        for x in 0..self.n {
            if a & (1 << x) != 0 {
                if !first {
                    out.push_str(", ");
                }
                out.push_str(&self.names[x]);
                first = false;
            }
        }
        out.push('}');
        out
    }

    /// The ortholattice of propositions: elements are the proposition
    /// family in ascending bitmask order; box, arrow, and the Boolean
    /// block are attached whenever the family is closed under them.
    pub fn proposition_lattice(&self) -> Result<FiniteOrtholattice, FrameError> {
        let family = self.prop_family();
        let index: BTreeMap<u64, usize> = family.iter().copied().enumerate().map(|(i, a)| (a, i)).collect();
        let m = family.len();
        let lookup = |a: u64, what: &str| -> Result<usize, FrameError> {
            index.get(&a).copied().ok_or_else(|| {
                FrameError::NotClosed(alloc::format!(
                    "proposition family is not closed under {what}: missing {}",
                    self.set_name(a)
                ))
            })
        };

        let mut leq = vec![false; m * m];
        let mut meet = vec![0u32; m * m];
        let mut join = vec![0u32; m * m];
        let mut neg = vec![0u32; m];
        for (i, &a) in family.iter().enumerate() {
            neg[i] = lookup(self.neg_set(a), "negation")? as u32;
            for (j, &b) in family.iter().enumerate() {
                leq[i * m + j] = a & !b == 0;
                meet[i * m + j] = lookup(a & b, "intersection")? as u32;
                join[i * m + j] = lookup(self.join_set(a, b), "join")? as u32;
            }
        }
        let zero = lookup(0, "bounds")?;
        let one = lookup(self.full_mask(), "bounds")?;
        let names = family.iter().map(|&a| self.set_name(a)).collect();
        let mut lattice =
            FiniteOrtholattice::from_tables(names, leq, meet, join, neg, zero, one);

        if self.has_modal() {
            let boxed: Option<Vec<usize>> = family
                .iter()
                .map(|&a| self.box_set(a).and_then(|b| index.get(&b).copied()))
                .collect();
            if let Some(table) = boxed {
                lattice = lattice.with_box(table).expect("indices in range");
            }
        }
        if self.selection.is_some() {
            let mut table = Vec::with_capacity(m * m);
            let mut total = true;
            'rows: for &a in &family {
                for &b in &family {
                    match self.arrow_set(a, b).and_then(|v| index.get(&v).copied()) {
                        Some(k) => table.push(k),
                        None => {
                            total = false;
                            break 'rows;
                        }
                    }
                }
            }
            if total {
                lattice = lattice.with_arrow(table).expect("indices in range");
            }
        }
        if let Some(bools) = &self.bool_family {
            let block: Option<Vec<usize>> =
                bools.iter().map(|a| index.get(a).copied()).collect();
            if let Some(block) = block {
                lattice = lattice.with_boolean_block(&block).expect("indices in range");
            }
        }
        Ok(lattice)
    }

    /// Structural validation beyond construction: families regular and
    /// closed, grounding family inside the proposition family,
    /// selection keyed by propositions.
    pub fn validate(&self) -> Result<(), FrameError> {
        if let Some(bools) = &self.bool_family {
            for &a in bools {
                if !self.is_regular(a) {
                    return Err(FrameError::NotRegular(self.set_name(a)));
                }
            }
            for &a in bools {
                if !bools.contains(&self.neg_set(a)) {
                    return Err(FrameError::NotClosed(alloc::format!(
                        "grounding family not closed under negation at {}",
                        self.set_name(a)
                    )));
                }
                for &b in bools {
                    if !bools.contains(&(a & b)) {
                        return Err(FrameError::NotClosed(alloc::format!(
                            "grounding family not closed under intersection at {} and {}",
                            self.set_name(a),
                            self.set_name(b)
                        )));
                    }
                }
            }
        }
        if let Some(props) = &self.prop_family {
            for &a in props {
                if !self.is_regular(a) {
                    return Err(FrameError::NotRegular(self.set_name(a)));
                }
                if !props.contains(&self.neg_set(a)) {
                    return Err(FrameError::NotClosed(alloc::format!(
                        "proposition family not closed under negation at {}",
                        self.set_name(a)
                    )));
                }
                if self.has_modal() {
                    let boxed = self.box_set(a).expect("modal");
                    if !props.contains(&boxed) {
                        return Err(FrameError::NotClosed(alloc::format!(
                            "proposition family not closed under box at {}",
                            self.set_name(a)
                        )));
                    }
                }
                for &b in props {
                    if !props.contains(&(a & b)) {
                        return Err(FrameError::NotClosed(alloc::format!(
                            "proposition family not closed under intersection at {} and {}",
                            self.set_name(a),
                            self.set_name(b)
                        )));
                    }
                    if self.selection.is_some() {
                        let arrow = self.arrow_set(a, b).expect("selection");
                        if !props.contains(&arrow) {
                            return Err(FrameError::NotClosed(alloc::format!(
                                "proposition family not closed under arrow at {} and {}",
                                self.set_name(a),
                                self.set_name(b)
                            )));
                        }
                    }
                }
            }
            if !props.contains(&0) || !props.contains(&self.full_mask()) {
                return Err(FrameError::NotClosed(String::from(
                    "proposition family is missing a bound",
                )));
            }
            if let Some(bools) = &self.bool_family {
                for a in bools {
                    if !props.contains(a) {
                        return Err(FrameError::Malformed(alloc::format!(
                            "grounding set {} is outside the proposition family",
                            self.set_name(*a)
                        )));
                    }
                }
            }
        }
        if let Some(selection) = &self.selection {
            let props = self.prop_family();
            for &(x, a) in selection.keys() {
                let _ = x;
                if !props.contains(&a) {
                    return Err(FrameError::BadSelectionKey(self.set_name(a)));
                }
            }
        }
        if let (Some(rel), Some(i_fun)) = (&self.r_rel, &self.i_fun) {
            // When both representations are present they must describe
            // the same box: `x r y` iff `y` refines `i(x)`.
            for x in 0..self.n {
                let Some(target) = i_fun[x] else { continue };
                for y in 0..self.n {
                    if (rel[x] & (1 << y) != 0) != self.refines(y, target) {
                        return Err(FrameError::Malformed(alloc::format!(
                            "accessibility and information disagree at ({}, {})",
                            self.names[x],
                            self.names[y]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Grounding-relative compatibility: no grounding set separates
    /// `y` from `x` (i.e. no `A` in the family with `y ∈ A`, `x ∈ ¬A`).
    pub fn compatible_b(&self, y: usize, x: usize) -> bool {
        let Some(bools) = &self.bool_family else { return true };
        !bools.iter().any(|&a| a & (1 << y) != 0 && self.neg_set(a) & (1 << x) != 0)
    }

    /// Grounding-relative refinement: `y` belongs to every grounding
    /// set containing `x`.
    pub fn refines_b(&self, y: usize, x: usize) -> bool {
        let Some(bools) = &self.bool_family else { return true };
        bools.iter().all(|&a| a & (1 << x) == 0 || a & (1 << y) != 0)
    }

    /// Proposition-relative refinement: `y` belongs to every
    /// proposition containing `x`.
    pub fn refines_p(&self, y: usize, x: usize) -> bool {
        self.prop_family().iter().all(|&a| a & (1 << x) == 0 || a & (1 << y) != 0)
    }

    /// Probe a frame condition, reporting the first failing instance.
    pub fn check_condition(&self, condition: FrameCondition) -> Result<(), ConditionFailure> {
        crate::frame::conditions::check(self, condition)
    }

    /// Componentwise product: pairs of possibilities, compatible (and
    /// accessible, and informed) componentwise. Pair names are
    /// `"(a, b)"`.
    pub fn product(&self, other: &CompatibilityFrame) -> Result<CompatibilityFrame, FrameError> {
        let n = self.n * other.n;
        if n > MAX_POINTS {
            return Err(FrameError::TooLarge(n));
        }
        let pair = |x: usize, y: usize| x * other.n + y;
        let mut names = Vec::with_capacity(n);
        for x in 0..self.n {
            for y in 0..other.n {
                names.push(alloc::format!("({}, {})", self.names[x], other.names[y]));
            }
        }
        let mut edges = Vec::new();
        for x1 in 0..self.n {
            for y1 in 0..other.n {
                for x2 in 0..self.n {
                    for y2 in 0..other.n {
                        if self.compatible(x1, x2) && other.compatible(y1, y2) {
                            edges.push((pair(x1, y1), pair(x2, y2)));
                        }
                    }
                }
            }
        }
        let mut frame = CompatibilityFrame::new(names, &edges)?;
        if let (Some(r1), Some(r2)) = (&self.r_rel, &other.r_rel) {
            let mut r_edges = Vec::new();
            for x1 in 0..self.n {
                for y1 in 0..other.n {
                    for x2 in 0..self.n {
                        for y2 in 0..other.n {
                            if r1[x1] & (1 << x2) != 0 && r2[y1] & (1 << y2) != 0 {
                                r_edges.push((pair(x1, y1), pair(x2, y2)));
                            }
                        }
                    }
                }
            }
            frame = frame.with_r(&r_edges)?;
        }
        if let (Some(i1), Some(i2)) = (&self.i_fun, &other.i_fun) {
            let mut i_fun = Vec::with_capacity(n);
            for x in 0..self.n {
                for y in 0..other.n {
                    i_fun.push(match (i1[x], i2[y]) {
                        (Some(a), Some(b)) => Some(pair(a, b)),
                        _ => None,
                    });
                }
            }
            frame = frame.with_i(i_fun)?;
        }
        Ok(frame)
    }

    /// Remove one directed accessibility edge (by possibility indices).
    pub fn without_r_edge(mut self, from: usize, to: usize) -> Result<Self, FrameError> {
        match &mut self.r_rel {
            Some(rel) => {
                if from >= self.n || to >= self.n {
                    return Err(FrameError::BadIndex(from.max(to)));
                }
                rel[from] &= !(1 << to);
                Ok(self)
            }
            None => Err(FrameError::Malformed(String::from("frame has no accessibility relation"))),
        }
    }

    /// Convert the accessibility relation into a total information
    /// function: each possibility `x` gets an `i(x)` whose compatible
    /// neighbours are exactly the possibilities compatible with some
    /// accessible point. An existing possibility with that exact
    /// neighbourhood is reused; otherwise a fresh possibility named
    /// `"i(<x>)"` is added (shared between possibilities with equal
    /// accessibility rows), compatible with a fresh mate exactly when
    /// their accessible points overlap in compatibility. Fresh points
    /// are their own information states.
    ///
    /// The result carries the accessibility relation re-derived from
    /// refinement — `x r y` iff `y ⊑ i(x)` — which may properly extend
    /// the input relation (accessible points always refine the chosen
    /// information state, and the extension leaves the box operation on
    /// regular sets unchanged, because `i(x)` lands in the regular
    /// closure of the accessible set). Grounding, proposition, and
    /// selection structure is not carried over (the point set changes).
    ///
    /// Errors when the frame has no accessibility relation, when some
    /// possibility has no accessible point, or when the fresh points
    /// would overflow the bitmask representation.
    pub fn functionalize(&self) -> Result<CompatibilityFrame, FrameError> {
        let r = self
            .r_rel
            .as_ref()
            .ok_or_else(|| FrameError::Malformed(String::from("frame has no accessibility relation")))?;
        // Candidate neighbourhood of each information state: everything
        // compatible with an accessible point.
        let mut profiles = vec![0u64; self.n];
        for x in 0..self.n {
            if r[x] == 0 {
                return Err(FrameError::Malformed(alloc::format!(
                    "{} has no accessible possibility",
                    self.names[x]
                )));
            }
            let mut rest = r[x];
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                profiles[x] |= self.compat[y];
            }
        }
        let mut info: Vec<usize> = Vec::with_capacity(self.n);
        let mut fresh_sources: Vec<usize> = Vec::new();
        for x in 0..self.n {
            match (0..self.n).find(|&z| self.compat[z] == profiles[x]) {
                Some(z) => info.push(z),
                None => {
                    let slot = match fresh_sources.iter().position(|&s| r[s] == r[x]) {
                        Some(k) => k,
                        None => {
                            fresh_sources.push(x);
                            fresh_sources.len() - 1
                        }
                    };
                    info.push(self.n + slot);
                }
            }
        }

        let total = self.n + fresh_sources.len();
        if total > MAX_POINTS {
            return Err(FrameError::TooLarge(total));
        }
        let mut names = self.names.clone();
        for &s in &fresh_sources {
            names.push(alloc::format!("i({})", self.names[s]));
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for x in 0..self.n {
            let mut rest = self.compat[x] & !(1 << x);
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                edges.push((x, y));
            }
        }
        for (k, &s) in fresh_sources.iter().enumerate() {
            for w in 0..self.n {
                if profiles[s] & (1 << w) != 0 {
                    edges.push((self.n + k, w));
                }
            }
            for (l, &t) in fresh_sources.iter().enumerate().skip(k + 1) {
                if profiles[s] & r[t] != 0 {
                    edges.push((self.n + k, self.n + l));
                }
            }
        }
        let mut i_fun: Vec<Option<usize>> = info.iter().map(|&z| Some(z)).collect();
        for k in 0..fresh_sources.len() {
            i_fun.push(Some(self.n + k));
        }
        let out = CompatibilityFrame::new(names, &edges)?.with_i(i_fun)?;

        // Re-derive accessibility from refinement so both encodings of
        // the box travel together.
        let mut r_edges: Vec<(usize, usize)> = Vec::new();
        for x in 0..total {
            let target = out.info(x).expect("total information function");
            for y in 0..total {
                if out.refines(y, target) {
                    r_edges.push((x, y));
                }
            }
        }
        out.with_r(&r_edges)
    }
}

/// Rebuild a frame from a lattice: possibilities are the
/// join-irreducible elements, with `a ≬ b` iff `a` is not below the
/// complement of `b`. For a finite ortholattice, the lattice of regular
/// sets of this frame is isomorphic to the original.
pub fn frame_from_lattice(lattice: &FiniteOrtholattice) -> Result<CompatibilityFrame, FrameError> {
    let points = lattice.join_irreducibles();
    let names: Vec<String> =
        points.iter().map(|&a| lattice.names()[a].clone()).collect();
    let mut edges = Vec::new();
    for (index_a, &a) in points.iter().enumerate() {
        for (index_b, &b) in points.iter().enumerate() {
            if !lattice.is_leq(a, lattice.neg(b)) {
                edges.push((index_a, index_b));
            }
        }
    }
    CompatibilityFrame::new(names, &edges)
}

mod conditions {
    //! Condition probes, each scanning instances in index order
    //! (possibilities ascending, then family sets by ascending mask)
    //! and reporting the first failure.

    use super::*;

    struct Ctx<'a> {
        frame: &'a CompatibilityFrame,
        props: Vec<u64>,
        bools: Vec<u64>,
    }

    impl<'a> Ctx<'a> {
        fn no(&self, condition: FrameCondition, witness: Vec<String>) -> Result<(), ConditionFailure> {
            Err(ConditionFailure { condition, witness })
        }

        fn point(&self, x: usize) -> String {
            self.frame.names()[x].clone()
        }

        fn set(&self, a: u64) -> String {
            self.frame.set_name(a)
        }

        fn sel(&self, x: usize, a: u64) -> Option<usize> {
            self.frame.selection().and_then(|s| s.get(&(x, a)).copied())
        }

        fn in_set(&self, x: usize, a: u64) -> bool {
            a & (1 << x) != 0
        }

        fn each_neighbour(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
            let row = self.frame.neighbours(x);
            (0..self.frame.len()).filter(move |&y| row & (1 << y) != 0)
        }
    }

    pub(super) fn check(
        frame: &CompatibilityFrame,
        condition: FrameCondition,
    ) -> Result<(), ConditionFailure> {
        let needs_props = !matches!(
            condition,
            FrameCondition::IRegularity
                | FrameCondition::ITotal
                | FrameCondition::Factivity
                | FrameCondition::Knowability
                | FrameCondition::Grounding
        );
        let ctx = Ctx {
            frame,
            props: if needs_props { frame.prop_family() } else { Vec::new() },
            bools: frame.bool_family().map(<[u64]>::to_vec).unwrap_or_default(),
        };
        match condition {
            FrameCondition::IRegularity => i_regularity(&ctx),
            FrameCondition::ITotal => i_total(&ctx),
            FrameCondition::Factivity => factivity(&ctx),
            FrameCondition::Knowability => knowability(&ctx),
            FrameCondition::Grounding => grounding(&ctx),
            FrameCondition::CRegularity => c_regularity(&ctx),
            FrameCondition::Id => id(&ctx),
            FrameCondition::Center => center(&ctx),
            FrameCondition::Comp => comp(&ctx),
            FrameCondition::MustCenter => must_center(&ctx),
            FrameCondition::MustComp => must_comp(&ctx),
            FrameCondition::Update => update(&ctx),
            FrameCondition::MustImp => must_imp(&ctx),
            FrameCondition::MustExp => must_exp(&ctx),
            FrameCondition::Preserve => preserve(&ctx),
            FrameCondition::Flat => flat(&ctx),
            FrameCondition::Cons => cons(&ctx),
            FrameCondition::Combine => combine(&ctx),
            FrameCondition::Switch => switch(&ctx),
            FrameCondition::Split => split(&ctx),
        }
    }

    fn i_regularity(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for x in 0..frame.len() {
            let Some(ix) = frame.info(x) else { continue };
            for y in 0..frame.len() {
                if !frame.compatible(y, ix) {
                    continue;
                }
                let witnessed = ctx.each_neighbour(x).any(|x1| {
                    ctx.each_neighbour(x1)
                        .all(|x2| frame.info(x2).is_some_and(|ix2| frame.compatible(y, ix2)))
                });
                if !witnessed {
                    return ctx.no(
                        FrameCondition::IRegularity,
                        vec![ctx.point(x), ctx.point(y)],
                    );
                }
            }
        }
        Ok(())
    }

    fn i_total(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        if frame.i_fun.is_none() {
            return ctx.no(FrameCondition::ITotal, vec![String::from("no information map")]);
        }
        for x in 0..frame.len() {
            if frame.info(x).is_none() {
                return ctx.no(FrameCondition::ITotal, vec![ctx.point(x)]);
            }
        }
        Ok(())
    }

    fn factivity(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for x in 0..frame.len() {
            if let Some(ix) = frame.info(x) {
                if !frame.refines(x, ix) {
                    return ctx.no(FrameCondition::Factivity, vec![ctx.point(x)]);
                }
            }
        }
        Ok(())
    }

    fn knowability(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for x in 0..frame.len() {
            let found = (0..frame.len())
                .any(|y| frame.info(y).is_some_and(|iy| frame.refines(iy, x)));
            if !found {
                return ctx.no(FrameCondition::Knowability, vec![ctx.point(x)]);
            }
        }
        Ok(())
    }

    fn grounding(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.bools {
            for &b in &ctx.bools {
                if a & b != 0 {
                    continue;
                }
                let linked = (0..frame.len()).any(|x| {
                    ctx.in_set(x, a)
                        && ctx.each_neighbour(x).any(|y| ctx.in_set(y, b))
                });
                if linked {
                    return ctx.no(FrameCondition::Grounding, vec![ctx.set(a), ctx.set(b)]);
                }
            }
        }
        Ok(())
    }

    fn c_regularity(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            for x in 0..frame.len() {
                let Some(cx) = ctx.sel(x, a) else { continue };
                for y in 0..frame.len() {
                    if !frame.compatible(y, cx) {
                        continue;
                    }
                    let witnessed = ctx.each_neighbour(x).any(|x1| {
                        ctx.each_neighbour(x1).all(|x2| {
                            ctx.sel(x2, a).is_some_and(|cx2| frame.compatible(y, cx2))
                        })
                    });
                    if !witnessed {
                        return ctx.no(
                            FrameCondition::CRegularity,
                            vec![ctx.point(x), ctx.set(a), ctx.point(y)],
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn id(ctx: &Ctx) -> Result<(), ConditionFailure> {
        for &a in &ctx.props {
            for x in 0..ctx.frame.len() {
                if let Some(cx) = ctx.sel(x, a) {
                    if !ctx.in_set(cx, a) {
                        return ctx.no(FrameCondition::Id, vec![ctx.point(x), ctx.set(a)]);
                    }
                }
            }
        }
        Ok(())
    }

    fn center(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            for x in 0..frame.len() {
                if !ctx.in_set(x, a) {
                    continue;
                }
                let ok = ctx.sel(x, a).is_some_and(|cx| {
                    frame.refines_b(cx, x) && frame.refines_b(x, cx)
                });
                if !ok {
                    return ctx.no(FrameCondition::Center, vec![ctx.point(x), ctx.set(a)]);
                }
            }
        }
        Ok(())
    }

    fn comp(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            for x in 0..frame.len() {
                if !ctx.each_neighbour(x).any(|x1| ctx.in_set(x1, a)) {
                    continue;
                }
                let ok = ctx.sel(x, a).is_some_and(|cx| frame.compatible_b(cx, x));
                if !ok {
                    return ctx.no(FrameCondition::Comp, vec![ctx.point(x), ctx.set(a)]);
                }
            }
        }
        Ok(())
    }

    fn must_center(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            for x in 0..frame.len() {
                let Some(ix) = frame.info(x) else { continue };
                if !ctx.in_set(ix, a) {
                    continue;
                }
                if ctx.sel(x, a) != Some(x) {
                    return ctx.no(FrameCondition::MustCenter, vec![ctx.point(x), ctx.set(a)]);
                }
            }
        }
        Ok(())
    }

    fn must_comp(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            for x in 0..frame.len() {
                let triggered = ctx
                    .each_neighbour(x)
                    .any(|x1| frame.info(x1).is_some_and(|ix1| ctx.in_set(ix1, a)));
                if !triggered {
                    continue;
                }
                let ok = ctx.sel(x, a).is_some_and(|cx| frame.compatible(cx, x));
                if !ok {
                    return ctx.no(FrameCondition::MustComp, vec![ctx.point(x), ctx.set(a)]);
                }
            }
        }
        Ok(())
    }

    fn update(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            for x in 0..frame.len() {
                if let Some(cx) = ctx.sel(x, a) {
                    let ok = frame.info(cx).is_some_and(|icx| ctx.in_set(icx, a));
                    if !ok {
                        return ctx.no(FrameCondition::Update, vec![ctx.point(x), ctx.set(a)]);
                    }
                }
            }
        }
        Ok(())
    }

    fn must_imp(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            for x in 0..frame.len() {
                let at_x = ctx.sel(x, a);
                let at_ix = frame.info(x).and_then(|ix| ctx.sel(ix, a));
                let ok = match (at_x, at_ix) {
                    (None, None) => true,
                    (Some(cx), Some(cix)) => {
                        frame.info(cx).is_some_and(|icx| frame.refines_b(icx, cix))
                    }
                    _ => false,
                };
                if !ok {
                    return ctx.no(FrameCondition::MustImp, vec![ctx.point(x), ctx.set(a)]);
                }
            }
        }
        Ok(())
    }

    fn must_exp(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            if !ctx.bools.contains(&a) {
                continue;
            }
            for x in 0..frame.len() {
                let at_x = ctx.sel(x, a);
                let at_ix = frame.info(x).and_then(|ix| ctx.sel(ix, a));
                let ok = match (at_x, at_ix) {
                    (None, None) => true,
                    (Some(cx), Some(cix)) => {
                        frame.info(cx).is_some_and(|icx| frame.refines_p(cix, icx))
                    }
                    _ => false,
                };
                if !ok {
                    return ctx.no(FrameCondition::MustExp, vec![ctx.point(x), ctx.set(a)]);
                }
            }
        }
        Ok(())
    }

    fn preserve(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            for &b in &ctx.props {
                let Some(diamond_ab) = frame.diamond_set(a & b) else {
                    continue;
                };
                for x in 0..frame.len() {
                    let Some(cx) = ctx.sel(x, a) else { continue };
                    if !ctx.in_set(x, diamond_ab) {
                        continue;
                    }
                    let ix_in_b = frame.info(x).is_some_and(|ix| ctx.in_set(ix, b));
                    if !ix_in_b {
                        continue;
                    }
                    let ok = frame.info(cx).is_some_and(|icx| ctx.in_set(icx, b));
                    if !ok {
                        return ctx.no(
                            FrameCondition::Preserve,
                            vec![ctx.point(x), ctx.set(a), ctx.set(b)],
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn flat(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            for &b in &ctx.props {
                let ab = a & b;
                for x in 0..frame.len() {
                    let via = ctx.sel(x, a).and_then(|cx| ctx.sel(cx, ab));
                    let direct = ctx.sel(x, ab);
                    let ok = match (via, direct) {
                        (None, None) => true,
                        (Some(u), Some(v)) => u == v,
                        _ => false,
                    };
                    if !ok {
                        return ctx.no(
                            FrameCondition::Flat,
                            vec![ctx.point(x), ctx.set(a), ctx.set(b)],
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn cons(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            let Some(diamond_a) = frame.diamond_set(a) else { continue };
            for x in 0..frame.len() {
                if !ctx.in_set(x, diamond_a) {
                    continue;
                }
                for x1 in ctx.each_neighbour(x) {
                    let ok = match (ctx.sel(x1, a), ctx.sel(x, a)) {
                        (Some(c1), Some(c0)) => frame.compatible(c1, c0),
                        _ => false,
                    };
                    if !ok {
                        return ctx.no(
                            FrameCondition::Cons,
                            vec![ctx.point(x), ctx.set(a), ctx.point(x1)],
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn combine(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            for x in 0..frame.len() {
                for x1 in ctx.each_neighbour(x) {
                    if !ctx.in_set(x1, a) {
                        continue;
                    }
                    let found = ctx.each_neighbour(x1).any(|x2| {
                        let informed = frame.info(x2).is_some_and(|ix2| ctx.in_set(ix2, a));
                        informed
                            && match (ctx.sel(x2, a), ctx.sel(x, a)) {
                                (Some(c2), Some(c0)) => c2 == c0,
                                (None, None) => true,
                                _ => false,
                            }
                    });
                    if !found {
                        return ctx.no(
                            FrameCondition::Combine,
                            vec![ctx.point(x), ctx.set(a), ctx.point(x1)],
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn switch(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            if !ctx.bools.contains(&a) {
                continue;
            }
            for &b in &ctx.props {
                let neg_b = frame.neg_set(b);
                for x in 0..frame.len() {
                    let Some(cx) = ctx.sel(x, a) else { continue };
                    if ctx.in_set(cx, neg_b) {
                        continue;
                    }
                    let found = ctx
                        .each_neighbour(x)
                        .any(|x1| ctx.sel(x1, a).is_some_and(|c1| ctx.in_set(c1, b)));
                    if !found {
                        return ctx.no(
                            FrameCondition::Switch,
                            vec![ctx.point(x), ctx.set(a), ctx.set(b)],
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn split(ctx: &Ctx) -> Result<(), ConditionFailure> {
        let frame = ctx.frame;
        for &a in &ctx.props {
            if !ctx.bools.contains(&a) {
                continue;
            }
            for &b in &ctx.props {
                for &c in &ctx.props {
                    let joined = frame.join_set(b, c);
                    for x in 0..frame.len() {
                        let Some(cx) = ctx.sel(x, a) else { continue };
                        if !ctx.in_set(cx, joined) {
                            continue;
                        }
                        let ok = ctx.each_neighbour(x).all(|x1| {
                            ctx.each_neighbour(x1).any(|x2| match ctx.sel(x2, a) {
                                Some(c2) => ctx.in_set(c2, b | c),
                                None => true,
                            })
                        });
                        if !ok {
                            return ctx.no(
                                FrameCondition::Split,
                                vec![ctx.point(x), ctx.set(a), ctx.set(b), ctx.set(c)],
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn chain(k: usize) -> CompatibilityFrame {
        let names = (1..=k).map(|i| alloc::format!("x{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
        CompatibilityFrame::new(names, &edges).unwrap()
    }

    #[test]
    fn neg_is_an_orthocomplement_on_regular_sets() {
        let f = chain(5);
        for a in f.all_regular_sets() {
            assert!(f.is_regular(a));
            assert_eq!(f.neg_set(f.neg_set(a)), a);
            assert_eq!(a & f.neg_set(a), 0);
        }
    }

    #[test]
    fn five_chain_has_ten_regular_sets() {
        let f = chain(5);
        assert_eq!(f.all_regular_sets().len(), 10);
        // The middle three points do not form a regular set.
        assert!(!f.is_regular(0b01110));
    }

    #[test]
    fn down_sets_are_regular_and_worlds_are_endpoints() {
        let f = chain(5);
        for x in 0..5 {
            assert!(f.is_regular(f.down_set(x)));
        }
        assert_eq!(f.worlds(), 0b10001);
    }

    #[test]
    fn maybe_between_can_break_regularity() {
        let f = chain(5);
        let a = 0b00111; // {x1, x2, x3}
        assert!(f.is_regular(a));
        assert_eq!(f.maybe_between(a), 0b01111);
        assert!(!f.is_regular(f.maybe_between(a)));
    }

    #[test]
    fn proposition_lattice_of_four_chain_has_six_elements() {
        let lattice = chain(4).proposition_lattice().unwrap();
        assert_eq!(lattice.len(), 6);
        lattice.check_lattice().unwrap();
    }

    #[test]
    fn lattice_round_trip_via_join_irreducibles() {
        let f = chain(4);
        let lattice = f.proposition_lattice().unwrap();
        let rebuilt = frame_from_lattice(&lattice).unwrap();
        let again = rebuilt.proposition_lattice().unwrap();
        assert!(crate::iso::iso_check(&lattice, &again).is_some());
    }

    #[test]
    fn product_names_and_sizes() {
        let f = chain(2);
        let g = CompatibilityFrame::new(
            ["y1", "y2"].iter().map(|s| s.to_string()).collect(),
            &[],
        )
        .unwrap();
        let p = f.product(&g).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.names()[0], "(x1, y1)");
        // (x1,y1) ≬ (x2,y1) since x1≬x2 and y1≬y1, but no cross-column compatibility.
        let a = p.index_of("(x1, y1)").unwrap();
        let b = p.index_of("(x2, y1)").unwrap();
        let c = p.index_of("(x2, y2)").unwrap();
        assert!(p.compatible(a, b));
        assert!(!p.compatible(a, c));
    }
}
