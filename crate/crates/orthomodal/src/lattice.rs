//! Finite ortholattices with optional modal, Boolean-block, and
//! conditional structure.
//!
//! A [`FiniteOrtholattice`] is a bounded lattice presented by a partial
//! order on named elements together with an orthocomplementation `neg`,
//! and optionally a unary `box` operation, a designated Boolean
//! subalgebra ("block"), and a binary `arrow` operation. Constructors
//! accept the order as an arbitrary generating relation (covers or the
//! full relation both work) and re-derive all meets and joins from its
//! reflexive–transitive closure, failing loudly with a witness pair if
//! any meet or join is missing. Structural well-formedness is enforced
//! at construction; the *equational* laws are probed by
//! [`FiniteOrtholattice::check_lattice`] and
//! [`FiniteOrtholattice::check_property`], which report the first
//! offending instance in element-index order.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::Formula;

/// A finite bounded lattice with orthocomplementation and optional
/// extra structure.
#[derive(Debug, Clone)]
pub struct FiniteOrtholattice {
    names: Vec<String>,
    n: usize,
    /// Row-major `n × n` order matrix: `leq[a * n + b]` iff `a ≤ b`.
    leq: Vec<bool>,
    meet: Vec<u32>,
    join: Vec<u32>,
    neg: Vec<u32>,
    box_map: Option<Vec<u32>>,
    bool_block: Option<Vec<bool>>,
    arrow: Option<Vec<u32>>,
    zero: usize,
    one: usize,
}

/// Equational and structural failures, with named witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// Element count, name count, or an operation table has the wrong shape.
    Shape(String),
    /// The reflexive–transitive closure of the given relation is not
    /// antisymmetric: two distinct elements lie below each other.
    NotAntisymmetric(String, String),
    /// A pair with no greatest lower bound.
    MissingMeet(String, String),
    /// A pair with no least upper bound.
    MissingJoin(String, String),
    /// No bottom (or no top) element.
    MissingBounds,
    /// `neg` is not an involution at the named element.
    NegNotInvolutive(String),
    /// `neg` fails antitonicity on the named pair.
    NegNotAntitone(String, String),
    /// `a ∧ ¬a ≠ 0` at the named element.
    NegNotComplement(String),
    /// `box` fails `□(a∧b) = □a∧□b` on the named pair.
    BoxNotMultiplicative(String, String),
    /// `□1 ≠ 1`.
    BoxTopFails,
    /// The Boolean block is not closed under an operation at the named element(s).
    BlockNotSubalgebra(String),
    /// The Boolean block fails distributivity on the named triple.
    BlockNotDistributive(String, String, String),
    /// `arrow` fails `(a→b)∧(a→c) = a→(b∧c)` on the named triple.
    ArrowNotMultiplicative(String, String, String),
    /// `a→1 ≠ 1` at the named element.
    ArrowTopFails(String),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Shape(msg) => write!(f, "malformed lattice: {msg}"),
            LatticeError::NotAntisymmetric(a, b) => {
                write!(f, "order is not antisymmetric: {a} and {b} lie below each other")
            }
            LatticeError::MissingMeet(a, b) => {
                write!(f, "no greatest lower bound for {a} and {b}")
            }
            LatticeError::MissingJoin(a, b) => {
                write!(f, "no least upper bound for {a} and {b}")
            }
            LatticeError::MissingBounds => write!(f, "no bottom or top element"),
            LatticeError::NegNotInvolutive(a) => write!(f, "~~{a} differs from {a}"),
            LatticeError::NegNotAntitone(a, b) => {
                write!(f, "{a} <= {b} but ~{b} is not below ~{a}")
            }
            LatticeError::NegNotComplement(a) => write!(f, "{a} & ~{a} is not the bottom"),
            LatticeError::BoxNotMultiplicative(a, b) => {
                write!(f, "[]({a} & {b}) differs from []{a} & []{b}")
            }
            LatticeError::BoxTopFails => write!(f, "[]top differs from top"),
            LatticeError::BlockNotSubalgebra(what) => {
                write!(f, "Boolean block is not a subalgebra: {what}")
            }
            LatticeError::BlockNotDistributive(a, b, c) => {
                write!(f, "Boolean block fails distributivity at ({a}, {b}, {c})")
            }
            LatticeError::ArrowNotMultiplicative(a, b, c) => {
                write!(f, "({a} -> {b}) & ({a} -> {c}) differs from {a} -> ({b} & {c})")
            }
            LatticeError::ArrowTopFails(a) => write!(f, "{a} -> top differs from top"),
        }
    }
}

impl core::error::Error for LatticeError {}

/// Probes checkable with [`FiniteOrtholattice::check_property`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeProperty {
    /// The full ortholattice axioms (involution, antitonicity, complementation).
    Ortholattice,
    /// `a ∧ (b ∨ c) = (a∧b) ∨ (a∧c)` for all triples.
    Distributive,
    /// `a ≤ b` implies `a ∨ (¬a ∧ b) = b`.
    Orthomodular,
    /// `a ∧ b = 0` implies `b ≤ ¬a`.
    Pseudocomplement,
    /// `box` present, `□(a∧b) = □a∧□b`, and `□1 = 1`.
    Modal,
    /// `□0 = 0`.
    SerialBox,
    /// `□a ≤ a`.
    FactiveBox,
    /// `¬a ∧ ◇a = 0`.
    Wittgenstein,
    /// `□a ≤ □□a`.
    Four,
    /// `◇a ≤ □◇a`.
    Five,
    /// `a ≤ □◇a`.
    Symmetric,
    /// The Boolean block is a distributive subalgebra containing the bounds.
    BooleanBlockOk,
    /// `arrow` present, `(a→b)∧(a→c) = a→(b∧c)`, and `a→1 = 1`.
    ArrowNormal,
}

/// A failed property probe: which law broke and on which elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFailure {
    /// The property that failed.
    pub property: LatticeProperty,
    /// Names of the offending elements, first instance in index order.
    pub witness: Vec<String>,
}

impl fmt::Display for PropertyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at (", self.property)?;
        for (i, name) in self.witness.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}")?;
        }
        write!(f, ")")
    }
}

/// Errors from evaluating formulas in a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// The valuation does not cover an atom of the formula.
    UnboundAtom(String),
    /// A declared Boolean atom is mapped outside the Boolean block.
    AtomOutsideBlock(String),
    /// The formula uses `[]`/`<>` but the lattice has no box operation.
    NoBox,
    /// The formula uses `->` but the lattice has no arrow operation.
    NoArrow,
    /// A valuation value is out of range.
    BadIndex(usize),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundAtom(p) => write!(f, "no value assigned to atom {p}"),
            EvalError::AtomOutsideBlock(p) => {
                write!(f, "Boolean atom {p} assigned outside the Boolean block")
            }
            EvalError::NoBox => write!(f, "lattice has no box operation"),
            EvalError::NoArrow => write!(f, "lattice has no arrow operation"),
            EvalError::BadIndex(i) => write!(f, "element index {i} out of range"),
        }
    }
}

impl core::error::Error for EvalError {}

impl FiniteOrtholattice {
    /// Build a lattice from named elements, a generating order relation
    /// (any relation whose reflexive–transitive closure is the intended
    /// partial order, so either covers or the full relation), and an
    /// orthocomplementation table.
    ///
    /// Meets and joins are re-derived from the closed order; missing
    /// bounds or missing meets/joins are reported with witnesses. The
    /// equations governing `neg` are *not* checked here — run
    /// [`check_lattice`](Self::check_lattice).
    pub fn from_order(
        names: Vec<String>,
        leq_pairs: &[(usize, usize)],
        neg: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Shape(String::from("no elements")));
        }
        if neg.len() != n {
            return Err(LatticeError::Shape(String::from("neg table length mismatch")));
        }
        for &(a, b) in leq_pairs {
            if a >= n || b >= n {
                return Err(LatticeError::Shape(String::from("order pair out of range")));
            }
        }
        if let Some(&bad) = neg.iter().find(|&&a| a >= n) {
            return Err(LatticeError::Shape(alloc::format!("neg value {bad} out of range")));
        }

        // Reflexive–transitive closure (Floyd–Warshall on a boolean matrix).
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in leq_pairs {
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(LatticeError::NotAntisymmetric(names[a].clone(), names[b].clone()));
                }
            }
        }

        Self::from_leq_matrix(names, leq, neg)
    }

    /// Build from a complete order matrix (must already be a partial
    /// order); used internally and by frame-derived lattices.
    pub(crate) fn from_leq_matrix(
        names: Vec<String>,
        leq: Vec<bool>,
        neg: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        let zero = (0..n)
            .find(|&z| (0..n).all(|b| leq[z * n + b]))
            .ok_or(LatticeError::MissingBounds)?;
        let one = (0..n)
            .find(|&o| (0..n).all(|a| leq[a * n + o]))
            .ok_or(LatticeError::MissingBounds)?;

        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let m = greatest_lower(&leq, n, a, b)
                    .ok_or_else(|| LatticeError::MissingMeet(names[a].clone(), names[b].clone()))?;
                let j = least_upper(&leq, n, a, b)
                    .ok_or_else(|| LatticeError::MissingJoin(names[a].clone(), names[b].clone()))?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }

        Ok(FiniteOrtholattice {
            names,
            n,
            leq,
            meet,
            join,
            neg: neg.into_iter().map(|x| x as u32).collect(),
            box_map: None,
            bool_block: None,
            arrow: None,
            zero,
            one,
        })
    }

    /// Fast-path constructor where meets and joins are already known
    /// (e.g. set intersection in a lattice of regular sets). All tables
    /// are trusted for shape but equations still go through
    /// [`check_lattice`](Self::check_lattice).
    pub(crate) fn from_tables(
        names: Vec<String>,
        leq: Vec<bool>,
        meet: Vec<u32>,
        join: Vec<u32>,
        neg: Vec<u32>,
        zero: usize,
        one: usize,
    ) -> Self {
        let n = names.len();
        debug_assert_eq!(leq.len(), n * n);
        debug_assert_eq!(meet.len(), n * n);
        debug_assert_eq!(join.len(), n * n);
        debug_assert_eq!(neg.len(), n);
        FiniteOrtholattice {
            names,
            n,
            leq,
            meet,
            join,
            neg,
            box_map: None,
            bool_block: None,
            arrow: None,
            zero,
            one,
        }
    }

    /// Attach a box operation (shape-checked only).
    pub fn with_box(mut self, box_map: Vec<usize>) -> Result<Self, LatticeError> {
        if box_map.len() != self.n || box_map.iter().any(|&a| a >= self.n) {
            return Err(LatticeError::Shape(String::from("box table shape mismatch")));
        }
        self.box_map = Some(box_map.into_iter().map(|x| x as u32).collect());
        Ok(self)
    }

    /// Attach a designated Boolean block (shape-checked only).
    pub fn with_boolean_block(mut self, block: &[usize]) -> Result<Self, LatticeError> {
        let mut members = vec![false; self.n];
        for &a in block {
            if a >= self.n {
                return Err(LatticeError::Shape(String::from("block member out of range")));
            }
            members[a] = true;
        }
        self.bool_block = Some(members);
        Ok(self)
    }

    /// Attach an arrow operation given as a row-major `n × n` table
    /// (shape-checked only).
    pub fn with_arrow(mut self, arrow: Vec<usize>) -> Result<Self, LatticeError> {
        if arrow.len() != self.n * self.n || arrow.iter().any(|&a| a >= self.n) {
            return Err(LatticeError::Shape(String::from("arrow table shape mismatch")));
        }
        self.arrow = Some(arrow.into_iter().map(|x| x as u32).collect());
        Ok(self)
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.n
    }

    /// True when the lattice has no elements (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Element names in index order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of the named element.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|candidate| candidate == name)
    }

    /// Bottom element.
    pub fn zero(&self) -> usize {
        self.zero
    }

    /// Top element.
    pub fn one(&self) -> usize {
        self.one
    }

    /// Order test.
    pub fn is_leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    /// Greatest lower bound.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    /// Least upper bound.
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    /// Orthocomplement.
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Whether `a` and `b` commute: the subalgebra they generate (see
    /// [`Self::generated_subortholattice`]) is distributive, so the two
    /// elements behave classically towards each other. Every pair
    /// commutes on a Boolean algebra, and every orthogonal pair
    /// commutes on an orthomodular lattice; on the hexagon, the two
    /// incomparable non-complementary elements do not.
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        let members = self.generated_subortholattice(&[a, b]);
        for &x in &members {
            for &y in &members {
                for &z in &members {
                    if self.meet(x, self.join(y, z))
                        != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Box operation, if attached.
    pub fn box_of(&self, a: usize) -> Option<usize> {
        self.box_map.as_ref().map(|m| m[a] as usize)
    }

    /// Diamond (`¬□¬`), if a box is attached.
    pub fn diamond_of(&self, a: usize) -> Option<usize> {
        self.box_of(self.neg(a)).map(|b| self.neg(b))
    }

    /// Arrow operation, if attached.
    pub fn arrow_of(&self, a: usize, b: usize) -> Option<usize> {
        self.arrow.as_ref().map(|t| t[a * self.n + b] as usize)
    }

    /// Whether a box operation is attached.
    pub fn has_box(&self) -> bool {
        self.box_map.is_some()
    }

    /// Whether an arrow operation is attached.
    pub fn has_arrow(&self) -> bool {
        self.arrow.is_some()
    }

    /// Members of the Boolean block; when no block is designated this
    /// defaults to `{0, 1}`, the smallest Boolean subalgebra.
    pub fn boolean_block(&self) -> Vec<usize> {
        match &self.bool_block {
            Some(members) => (0..self.n).filter(|&a| members[a]).collect(),
            None => {
                if self.zero == self.one {
                    vec![self.zero]
                } else {
                    vec![self.zero, self.one]
                }
            }
        }
    }

    /// Whether an explicit Boolean block was attached.
    pub fn has_boolean_block(&self) -> bool {
        self.bool_block.is_some()
    }

    /// Membership in the Boolean block (see [`boolean_block`](Self::boolean_block)).
    pub fn in_boolean_block(&self, a: usize) -> bool {
        match &self.bool_block {
            Some(members) => members[a],
            None => a == self.zero || a == self.one,
        }
    }

    /// Validate every equational law applicable to the attached
    /// structure: the ortholattice axioms always, plus box normality,
    /// Boolean-block well-formedness, and arrow normality when present.
    pub fn check_lattice(&self) -> Result<(), LatticeError> {
        let n = self.n;
        for a in 0..n {
            if self.neg(self.neg(a)) != a {
                return Err(LatticeError::NegNotInvolutive(self.names[a].clone()));
            }
            if self.meet(a, self.neg(a)) != self.zero {
                return Err(LatticeError::NegNotComplement(self.names[a].clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.is_leq(a, b) && !self.is_leq(self.neg(b), self.neg(a)) {
                    return Err(LatticeError::NegNotAntitone(
                        self.names[a].clone(),
                        self.names[b].clone(),
                    ));
                }
            }
        }
        if self.box_map.is_some() {
            if self.box_of(self.one) != Some(self.one) {
                return Err(LatticeError::BoxTopFails);
            }
            for a in 0..n {
                for b in 0..n {
                    let lhs = self.box_of(self.meet(a, b)).expect("box attached");
                    let rhs = self.meet(
                        self.box_of(a).expect("box attached"),
                        self.box_of(b).expect("box attached"),
                    );
                    if lhs != rhs {
                        return Err(LatticeError::BoxNotMultiplicative(
                            self.names[a].clone(),
                            self.names[b].clone(),
                        ));
                    }
                }
            }
        }
        if self.bool_block.is_some() {
            self.check_block()?;
        }
        if self.arrow.is_some() {
            for a in 0..n {
                if self.arrow_of(a, self.one) != Some(self.one) {
                    return Err(LatticeError::ArrowTopFails(self.names[a].clone()));
                }
                for b in 0..n {
                    for c in 0..n {
                        let lhs = self.meet(
                            self.arrow_of(a, b).expect("arrow attached"),
                            self.arrow_of(a, c).expect("arrow attached"),
                        );
                        let rhs = self.arrow_of(a, self.meet(b, c)).expect("arrow attached");
                        if lhs != rhs {
                            return Err(LatticeError::ArrowNotMultiplicative(
                                self.names[a].clone(),
                                self.names[b].clone(),
                                self.names[c].clone(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_block(&self) -> Result<(), LatticeError> {
        let members = self.boolean_block();
        let inside = |a: usize| self.in_boolean_block(a);
        if !inside(self.zero) || !inside(self.one) {
            return Err(LatticeError::BlockNotSubalgebra(String::from(
                "bounds are not in the block",
            )));
        }
        for &a in &members {
            if !inside(self.neg(a)) {
                return Err(LatticeError::BlockNotSubalgebra(alloc::format!(
                    "~{} escapes the block",
                    self.names[a]
                )));
            }
            for &b in &members {
                if !inside(self.meet(a, b)) || !inside(self.join(a, b)) {
                    return Err(LatticeError::BlockNotSubalgebra(alloc::format!(
                        "{} and {} have a meet or join outside the block",
                        self.names[a], self.names[b]
                    )));
                }
            }
        }
        for &a in &members {
            for &b in &members {
                for &c in &members {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Err(LatticeError::BlockNotDistributive(
                            self.names[a].clone(),
                            self.names[b].clone(),
                            self.names[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Probe a single property, returning the first failing instance in
    /// element-index order.
    pub fn check_property(&self, property: LatticeProperty) -> Result<(), PropertyFailure> {
        let n = self.n;
        let fail = |witness: Vec<usize>| PropertyFailure {
            property,
            witness: witness.into_iter().map(|a| self.names[a].clone()).collect(),
        };
        match property {
            LatticeProperty::Ortholattice => {
                self.check_lattice_core().map_err(|w| fail(w))
            }
            LatticeProperty::Distributive => {
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            if self.meet(a, self.join(b, c))
                                != self.join(self.meet(a, b), self.meet(a, c))
                            {
                                return Err(fail(vec![a, b, c]));
                            }
                        }
                    }
                }
                Ok(())
            }
            LatticeProperty::Orthomodular => {
                for a in 0..n {
                    for b in 0..n {
                        if self.is_leq(a, b) && self.join(a, self.meet(self.neg(a), b)) != b {
                            return Err(fail(vec![a, b]));
                        }
                    }
                }
                Ok(())
            }
            LatticeProperty::Pseudocomplement => {
                for a in 0..n {
                    for b in 0..n {
                        if self.meet(a, b) == self.zero && !self.is_leq(b, self.neg(a)) {
                            return Err(fail(vec![a, b]));
                        }
                    }
                }
                Ok(())
            }
            LatticeProperty::Modal => {
                if self.box_map.is_none() {
                    return Err(fail(vec![]));
                }
                if self.box_of(self.one) != Some(self.one) {
                    return Err(fail(vec![self.one]));
                }
                for a in 0..n {
                    for b in 0..n {
                        let lhs = self.box_of(self.meet(a, b)).expect("box attached");
                        let rhs = self.meet(
                            self.box_of(a).expect("box attached"),
                            self.box_of(b).expect("box attached"),
                        );
                        if lhs != rhs {
                            return Err(fail(vec![a, b]));
                        }
                    }
                }
                Ok(())
            }
            LatticeProperty::SerialBox => match self.box_of(self.zero) {
                Some(z) if z == self.zero => Ok(()),
                _ => Err(fail(vec![self.zero])),
            },
            LatticeProperty::FactiveBox => {
                for a in 0..n {
                    match self.box_of(a) {
                        Some(boxed) if self.is_leq(boxed, a) => {}
                        _ => return Err(fail(vec![a])),
                    }
                }
                Ok(())
            }
            LatticeProperty::Wittgenstein => {
                for a in 0..n {
                    match self.diamond_of(a) {
                        Some(d) if self.meet(self.neg(a), d) == self.zero => {}
                        _ => return Err(fail(vec![a])),
                    }
                }
                Ok(())
            }
            LatticeProperty::Four => {
                for a in 0..n {
                    match self.box_of(a) {
                        Some(boxed) if self.is_leq(boxed, self.box_of(boxed).expect("box")) => {}
                        _ => return Err(fail(vec![a])),
                    }
                }
                Ok(())
            }
            LatticeProperty::Five => {
                for a in 0..n {
                    match self.diamond_of(a) {
                        Some(d) if self.is_leq(d, self.box_of(d).expect("box")) => {}
                        _ => return Err(fail(vec![a])),
                    }
                }
                Ok(())
            }
            LatticeProperty::Symmetric => {
                for a in 0..n {
                    match self.diamond_of(a) {
                        Some(d) if self.is_leq(a, self.box_of(d).expect("box")) => {}
                        _ => return Err(fail(vec![a])),
                    }
                }
                Ok(())
            }
            LatticeProperty::BooleanBlockOk => self.check_block().map_err(|_| fail(vec![])),
            LatticeProperty::ArrowNormal => {
                if self.arrow.is_none() {
                    return Err(fail(vec![]));
                }
                for a in 0..n {
                    if self.arrow_of(a, self.one) != Some(self.one) {
                        return Err(fail(vec![a]));
                    }
                    for b in 0..n {
                        for c in 0..n {
                            let lhs = self.meet(
                                self.arrow_of(a, b).expect("arrow"),
                                self.arrow_of(a, c).expect("arrow"),
                            );
                            if Some(lhs) != self.arrow_of(a, self.meet(b, c)) {
                                return Err(fail(vec![a, b, c]));
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }

    fn check_lattice_core(&self) -> Result<(), Vec<usize>> {
        for a in 0..self.n {
            if self.neg(self.neg(a)) != a || self.meet(a, self.neg(a)) != self.zero {
                return Err(vec![a]);
            }
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if self.is_leq(a, b) && !self.is_leq(self.neg(b), self.neg(a)) {
                    return Err(vec![a, b]);
                }
            }
        }
        Ok(())
    }

    /// Evaluate a formula under a valuation of atom names to element
    /// indices. Atoms in `bool_atoms` must land in the Boolean block.
    pub fn eval(
        &self,
        formula: &Formula,
        valuation: &BTreeMap<String, usize>,
        bool_atoms: &alloc::collections::BTreeSet<String>,
    ) -> Result<usize, EvalError> {
        for (atom, &value) in valuation {
            if value >= self.n {
                return Err(EvalError::BadIndex(value));
            }
            if bool_atoms.contains(atom) && !self.in_boolean_block(value) {
                return Err(EvalError::AtomOutsideBlock(atom.clone()));
            }
        }
        self.eval_inner(formula, valuation)
    }

    fn eval_inner(
        &self,
        formula: &Formula,
        valuation: &BTreeMap<String, usize>,
    ) -> Result<usize, EvalError> {
        Ok(match formula {
            Formula::Bot => self.zero,
            Formula::Top => self.one,
            Formula::Atom(p) => *valuation.get(p).ok_or_else(|| EvalError::UnboundAtom(p.clone()))?,
            Formula::Neg(a) => self.neg(self.eval_inner(a, valuation)?),
            Formula::And(a, b) => {
                self.meet(self.eval_inner(a, valuation)?, self.eval_inner(b, valuation)?)
            }
            Formula::Or(a, b) => {
                self.join(self.eval_inner(a, valuation)?, self.eval_inner(b, valuation)?)
            }
            Formula::Box(a) => self.box_of(self.eval_inner(a, valuation)?).ok_or(EvalError::NoBox)?,
            Formula::Diamond(a) => {
                self.diamond_of(self.eval_inner(a, valuation)?).ok_or(EvalError::NoBox)?
            }
            Formula::Imp(a, b) => {
                let lhs = self.eval_inner(a, valuation)?;
                let rhs = self.eval_inner(b, valuation)?;
                self.arrow_of(lhs, rhs).ok_or(EvalError::NoArrow)?
            }
        })
    }

    /// `lhs ⊨ rhs` under one valuation: evaluate both and compare in the order.
    pub fn entails(
        &self,
        lhs: &Formula,
        rhs: &Formula,
        valuation: &BTreeMap<String, usize>,
        bool_atoms: &alloc::collections::BTreeSet<String>,
    ) -> Result<bool, EvalError> {
        let a = self.eval(lhs, valuation, bool_atoms)?;
        let b = self.eval(rhs, valuation, bool_atoms)?;
        Ok(self.is_leq(a, b))
    }

    /// The join-irreducible elements: nonzero `x` that are not the join
    /// of two strictly smaller elements.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| {
                if x == self.zero {
                    return false;
                }
                for a in 0..self.n {
                    if a == x || !self.is_leq(a, x) {
                        continue;
                    }
                    for b in 0..self.n {
                        if b != x && self.is_leq(b, x) && self.join(a, b) == x {
                            return false;
                        }
                    }
                }
                true
            })
            .collect()
    }

    /// Smallest subset containing `seed` and the bounds, closed under
    /// meet, join, and negation; returned in index order.
    pub fn generated_subortholattice(&self, seed: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.n];
        members[self.zero] = true;
        members[self.one] = true;
        for &a in seed {
            members[a] = true;
        }
        loop {
            let current: Vec<usize> = (0..self.n).filter(|&a| members[a]).collect();
            let mut grew = false;
            for &a in &current {
                if !members[self.neg(a)] {
                    members[self.neg(a)] = true;
                    grew = true;
                }
                for &b in &current {
                    for c in [self.meet(a, b), self.join(a, b)] {
                        if !members[c] {
                            members[c] = true;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return (0..self.n).filter(|&a| members[a]).collect();
            }
        }
    }

    /// Strict covers of `a`: minimal elements strictly above it. Used
    /// for Hasse-diagram export.
    pub fn covers_of(&self, a: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&b| {
                b != a
                    && self.is_leq(a, b)
                    && !(0..self.n)
                        .any(|c| c != a && c != b && self.is_leq(a, c) && self.is_leq(c, b))
            })
            .collect()
    }
}

fn greatest_lower(leq: &[bool], n: usize, a: usize, b: usize) -> Option<usize> {
    let lower: Vec<usize> =
        (0..n).filter(|&c| leq[c * n + a] && leq[c * n + b]).collect();
    lower
        .iter()
        .copied()
        .find(|&m| lower.iter().all(|&c| leq[c * n + m]))
}

fn least_upper(leq: &[bool], n: usize, a: usize, b: usize) -> Option<usize> {
    let upper: Vec<usize> =
        (0..n).filter(|&c| leq[a * n + c] && leq[b * n + c]).collect();
    upper
        .iter()
        .copied()
        .find(|&j| upper.iter().all(|&c| leq[j * n + c]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    /// The four-element Boolean algebra {0, a, ~a, 1} given by covers only.
    fn b4() -> FiniteOrtholattice {
        FiniteOrtholattice::from_order(
            ["0", "a", "na", "1"].iter().map(|s| s.to_string()).collect(),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
            vec![3, 2, 1, 0],
        )
        .unwrap()
    }

    #[test]
    fn covers_generate_the_full_order() {
        let l = b4();
        assert!(l.is_leq(0, 3));
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.zero(), 0);
        assert_eq!(l.one(), 3);
        l.check_lattice().unwrap();
        assert!(l.check_property(LatticeProperty::Distributive).is_ok());
        assert!(l.check_property(LatticeProperty::Orthomodular).is_ok());
        assert!(l.check_property(LatticeProperty::Pseudocomplement).is_ok());
    }

    #[test]
    fn missing_join_is_reported() {
        // Two incomparable atoms with a top but no bottom: not a lattice.
        let result = FiniteOrtholattice::from_order(
            ["a", "b", "1"].iter().map(|s| s.to_string()).collect(),
            &[(0, 2), (1, 2)],
            vec![1, 0, 2],
        );
        assert!(matches!(result, Err(LatticeError::MissingMeet(_, _)) | Err(LatticeError::MissingBounds)));
    }

    #[test]
    fn cycle_is_rejected() {
        let result = FiniteOrtholattice::from_order(
            ["a", "b"].iter().map(|s| s.to_string()).collect(),
            &[(0, 1), (1, 0)],
            vec![1, 0],
        );
        assert!(matches!(result, Err(LatticeError::NotAntisymmetric(_, _))));
    }

    #[test]
    fn bad_neg_caught_by_check_lattice() {
        let l = FiniteOrtholattice::from_order(
            ["0", "a", "na", "1"].iter().map(|s| s.to_string()).collect(),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
            // Identity is involutive but neither antitone-correct nor complementing.
            vec![0, 1, 2, 3],
        )
        .unwrap();
        assert!(l.check_lattice().is_err());
    }

    #[test]
    fn join_irreducibles_of_b4_are_the_atoms() {
        assert_eq!(b4().join_irreducibles(), vec![1, 2]);
    }

    #[test]
    fn generated_subalgebra_of_atom_is_whole_b4() {
        assert_eq!(b4().generated_subortholattice(&[1]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn commuting_pairs_are_the_classically_behaved_ones() {
        let l = b4();
        assert!(l.commutes(1, 2));
        let hex = crate::fixtures::benzene();
        let a = hex.index_of("a").unwrap();
        let nb = hex.index_of("nb").unwrap();
        let na = hex.index_of("na").unwrap();
        // a and ¬b are orthogonal (a ≤ ¬¬b = b) yet generate the whole
        // non-distributive hexagon, so they do not commute.
        assert!(hex.is_leq(a, hex.neg(nb)));
        assert!(!hex.commutes(a, nb));
        // Complement pairs always commute: they generate a diamond.
        assert!(hex.commutes(a, na));
    }

    #[test]
    fn eval_respects_connectives() {
        let l = b4();
        let mut valuation = BTreeMap::new();
        valuation.insert("p".to_string(), 1usize);
        let bools = alloc::collections::BTreeSet::new();
        let f = Formula::parse("p \\/ ~p").unwrap();
        assert_eq!(l.eval(&f, &valuation, &bools).unwrap(), 3);
        let g = Formula::parse("p & ~p").unwrap();
        assert_eq!(l.eval(&g, &valuation, &bools).unwrap(), 0);
    }
}
