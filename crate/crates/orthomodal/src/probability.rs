//! Finitely additive probability measures on ortholattices, and
//! per-possibility measure assignments over compatibility frames with
//! comparative-likelihood sets.
//!
//! An [`OrthoMeasure`] maps every lattice element to an exact rational
//! in `[0, 1]`, sends the top element to 1, respects the lattice
//! order, and is additive on joins of orthogonal pairs (`a ≤ ¬b`) that
//! commute, i.e. generate a distributive subalgebra. On Boolean and
//! orthomodular lattices every orthogonal pair commutes, so there the
//! check is classical finite additivity; on lattices with genuinely
//! incompatible elements, an orthogonal join can overshoot the sum of
//! its parts (the join closes upward past the set-theoretic union),
//! and no additivity is demanded across such pairs. Monotonicity and
//! complement-additivity are still checked globally, so `μ(¬a) = 1 −
//! μ(a)` and order-preservation hold for every measure that validates.
//!
//! A [`ProbabilityAssignment`] gives each possibility of a frame a
//! nonempty finite set of measures over the frame's proposition
//! lattice, supporting the comparative sets `{x | ∀μ: μ(A) ≥ μ(B)}`
//! and `{x | ∀μ: μ(A) > μ(B)}` and the frame-level conditions that
//! make those sets behave (regularity of the assignment, knowability,
//! sharpness, and the two links between measure and box).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::frame::{CompatibilityFrame, FrameError};
use crate::lattice::FiniteOrtholattice;

/// Build an exact rational from integer numerator and denominator.
pub fn ratio(numerator: i64, denominator: i64) -> BigRational {
    BigRational::new(BigInt::from(numerator), BigInt::from(denominator))
}

/// Errors from measure validation and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureError {
    /// The measure has a value count different from the lattice size.
    WrongLength {
        /// Lattice size.
        expected: usize,
        /// Number of values supplied.
        got: usize,
    },
    /// A value lies outside `[0, 1]`.
    OutOfRange(usize),
    /// The top element is not assigned 1.
    NotNormalized,
    /// Additivity fails: `μ(a ∨ b) ≠ μ(a) + μ(b)` although `a ≤ ¬b`
    /// and the pair commutes.
    NotAdditive {
        /// First element.
        a: usize,
        /// Second element.
        b: usize,
    },
    /// Monotonicity fails: `a ≤ b` but `μ(a) > μ(b)`.
    NotMonotone {
        /// Smaller element.
        a: usize,
        /// Larger element.
        b: usize,
    },
    /// Introspection was requested but the lattice has no box.
    NoBox,
    /// Conditioning on an element of measure zero.
    ZeroConditioning(usize),
    /// An element index is out of range.
    BadElement(usize),
    /// A named element does not exist in the lattice.
    UnknownElement(String),
}

impl fmt::Display for MeasureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureError::WrongLength { expected, got } => {
                write!(f, "measure has {got} values but the lattice has {expected} elements")
            }
            MeasureError::OutOfRange(i) => {
                write!(f, "value of element {i} lies outside [0, 1]")
            }
            MeasureError::NotNormalized => write!(f, "top element is not assigned 1"),
            MeasureError::NotAdditive { a, b } => {
                write!(f, "additivity fails on the commuting orthogonal pair ({a}, {b})")
            }
            MeasureError::NotMonotone { a, b } => {
                write!(f, "monotonicity fails: element {a} lies below {b} but has larger measure")
            }
            MeasureError::NoBox => write!(f, "lattice has no box operator"),
            MeasureError::ZeroConditioning(i) => {
                write!(f, "cannot condition on element {i} of measure zero")
            }
            MeasureError::BadElement(i) => write!(f, "element index {i} out of range"),
            MeasureError::UnknownElement(name) => {
                write!(f, "lattice has no element named {name}")
            }
        }
    }
}

impl core::error::Error for MeasureError {}

/// A finitely additive measure on a finite ortholattice, indexed by
/// lattice element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoMeasure {
    values: Vec<BigRational>,
}

impl OrthoMeasure {
    /// Wrap a value table (validated separately by [`Self::check`]).
    pub fn new(values: Vec<BigRational>) -> Self {
        OrthoMeasure { values }
    }

    /// The value table, indexed by lattice element.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// The value of one element.
    pub fn value(&self, element: usize) -> Result<&BigRational, MeasureError> {
        self.values.get(element).ok_or(MeasureError::BadElement(element))
    }

    /// Validate the measure against a lattice: right length, values in
    /// `[0, 1]`, top mapped to 1, additivity over every commuting pair
    /// `a ≤ ¬b` (see [`FiniteOrtholattice::commutes`]), and
    /// monotonicity along the order. Orthogonal pairs that do not
    /// commute are exempt from additivity — their join can land
    /// strictly above anything a sum could reach — but they remain
    /// constrained by monotonicity and by additivity at `(a, ¬a)`,
    /// which together force `μ(¬a) = 1 − μ(a)` and order-preservation
    /// for every measure accepted here.
    pub fn check(&self, lattice: &FiniteOrtholattice) -> Result<(), MeasureError> {
        let n = lattice.len();
        if self.values.len() != n {
            return Err(MeasureError::WrongLength { expected: n, got: self.values.len() });
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        for (i, v) in self.values.iter().enumerate() {
            if *v < zero || *v > one {
                return Err(MeasureError::OutOfRange(i));
            }
        }
        if self.values[lattice.one()] != one {
            return Err(MeasureError::NotNormalized);
        }
        for a in 0..n {
            for b in 0..n {
                if lattice.is_leq(a, lattice.neg(b)) && lattice.commutes(a, b) {
                    let join = lattice.join(a, b);
                    if self.values[join] != &self.values[a] + &self.values[b] {
                        return Err(MeasureError::NotAdditive { a, b });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if lattice.is_leq(a, b) && self.values[a] > self.values[b] {
                    return Err(MeasureError::NotMonotone { a, b });
                }
            }
        }
        Ok(())
    }

    /// First element with positive measure whose possibility closure
    /// is not certain (`μ(a) > 0` but `μ(◇a) ≠ 1`), or `None` when the
    /// measure is introspective.
    pub fn introspection_failure(
        &self,
        lattice: &FiniteOrtholattice,
    ) -> Result<Option<usize>, MeasureError> {
        if !lattice.has_box() {
            return Err(MeasureError::NoBox);
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        for a in 0..lattice.len() {
            let diamond = lattice.diamond_of(a).ok_or(MeasureError::NoBox)?;
            if self.values[a] > zero && self.values[diamond] != one {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    /// Whether `μ(a) > 0` implies `μ(◇a) = 1` for every element.
    pub fn is_introspective(&self, lattice: &FiniteOrtholattice) -> Result<bool, MeasureError> {
        Ok(self.introspection_failure(lattice)?.is_none())
    }

    /// Conditional value `μ(a ∧ b) / μ(b)`.
    pub fn conditional(
        &self,
        lattice: &FiniteOrtholattice,
        a: usize,
        b: usize,
    ) -> Result<BigRational, MeasureError> {
        if a >= lattice.len() {
            return Err(MeasureError::BadElement(a));
        }
        if b >= lattice.len() {
            return Err(MeasureError::BadElement(b));
        }
        let denom = &self.values[b];
        if denom.is_zero() {
            return Err(MeasureError::ZeroConditioning(b));
        }
        Ok(&self.values[lattice.meet(a, b)] / denom)
    }
}

/// Both sides of the law of total probability for `a` conditioned on
/// `b`: the plain value `μ(a)`, and the case split
/// `μ(a|b)·μ(b) + μ(a|¬b)·μ(¬b)`. No equality is asserted — on an
/// ortholattice the two sides can differ.
pub fn total_probability_gap(
    lattice: &FiniteOrtholattice,
    measure: &OrthoMeasure,
    a: usize,
    b: usize,
) -> Result<(BigRational, BigRational), MeasureError> {
    let not_b = lattice.neg(b);
    let by_b = measure.conditional(lattice, a, b)? * measure.value(b)?;
    let by_not_b = measure.conditional(lattice, a, not_b)? * measure.value(not_b)?;
    Ok((measure.value(a)?.clone(), by_b + by_not_b))
}

/// Conditions on a probability assignment over a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProbCondition {
    /// Strict and weak comparative judgements are settled on a
    /// refinement of every compatible possibility.
    PRegularity,
    /// Every possibility refines to one carrying a measure certain of
    /// the original: `∃y ⊑ x` and `μ ∈ P_y` with `μ(↓x) = 1`.
    KnowabilityP,
    /// Every compatible possibility is compatible with one carrying
    /// exactly one measure.
    Sharp,
    /// Every measure at `x` is certain of the information state:
    /// `μ(↓i(x)) = 1`.
    AllOne,
    /// Everything compatible with the information state gets positive
    /// measure from some measure at `x`.
    SomeNonzero,
}

impl ProbCondition {
    /// Stable kebab-case name.
    pub fn name(self) -> &'static str {
        match self {
            ProbCondition::PRegularity => "p-regularity",
            ProbCondition::KnowabilityP => "knowability-p",
            ProbCondition::Sharp => "sharp",
            ProbCondition::AllOne => "all-one",
            ProbCondition::SomeNonzero => "some-nonzero",
        }
    }
}

/// A failed probability condition: which one, and a human-readable
/// witness trail (possibility and set names).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbConditionFailure {
    /// The condition that failed.
    pub condition: ProbCondition,
    /// Names of the witnessing possibilities and sets.
    pub witness: Vec<String>,
}

/// Errors from assignment validation and comparative sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbError {
    /// Number of measure sets differs from the frame size.
    WrongCount {
        /// Frame size.
        expected: usize,
        /// Number of measure sets supplied.
        got: usize,
    },
    /// A possibility has an empty measure set.
    EmptySet(usize),
    /// A measure failed validation.
    Measure {
        /// The possibility whose set contains the bad measure.
        possibility: usize,
        /// Position within that set.
        which: usize,
        /// The underlying failure.
        error: MeasureError,
    },
    /// A set mask is not a member of the frame's proposition family.
    MissingSet(String),
    /// The condition needs an information function the frame lacks.
    NoInfoFunction,
    /// An underlying frame error.
    Frame(FrameError),
}

impl fmt::Display for ProbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbError::WrongCount { expected, got } => {
                write!(f, "assignment has {got} measure sets but the frame has {expected} possibilities")
            }
            ProbError::EmptySet(x) => write!(f, "possibility {x} has an empty measure set"),
            ProbError::Measure { possibility, which, error } => {
                write!(f, "measure {which} at possibility {possibility}: {error}")
            }
            ProbError::MissingSet(name) => {
                write!(f, "set {name} is not in the proposition family")
            }
            ProbError::NoInfoFunction => write!(f, "frame has no information function"),
            ProbError::Frame(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ProbError {}

impl From<FrameError> for ProbError {
    fn from(e: FrameError) -> Self {
        ProbError::Frame(e)
    }
}

/// A nonempty finite set of measures for each possibility of a frame,
/// indexed in frame order. Measure element order follows the frame's
/// proposition family (ascending set masks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityAssignment {
    measures: Vec<Vec<OrthoMeasure>>,
}

impl ProbabilityAssignment {
    /// Wrap per-possibility measure sets (validated separately by
    /// [`Self::validate`]).
    pub fn new(measures: Vec<Vec<OrthoMeasure>>) -> Self {
        ProbabilityAssignment { measures }
    }

    /// The measure sets, indexed by possibility.
    pub fn measures(&self) -> &[Vec<OrthoMeasure>] {
        &self.measures
    }

    /// Validate shape and every individual measure against the frame's
    /// proposition lattice.
    pub fn validate(&self, frame: &CompatibilityFrame) -> Result<(), ProbError> {
        if self.measures.len() != frame.len() {
            return Err(ProbError::WrongCount {
                expected: frame.len(),
                got: self.measures.len(),
            });
        }
        let lattice = frame.proposition_lattice()?;
        for (x, set) in self.measures.iter().enumerate() {
            if set.is_empty() {
                return Err(ProbError::EmptySet(x));
            }
            for (which, measure) in set.iter().enumerate() {
                measure
                    .check(&lattice)
                    .map_err(|error| ProbError::Measure { possibility: x, which, error })?;
            }
        }
        Ok(())
    }

    /// Index of a set mask within the frame's proposition family.
    fn element_of(&self, family: &[u64], frame: &CompatibilityFrame, set: u64) -> Result<usize, ProbError> {
        family
            .binary_search(&set)
            .map_err(|_| ProbError::MissingSet(frame.set_name(set)))
    }

    /// The set of possibilities where every measure ranks `a` at least
    /// as likely as `b`.
    pub fn geq_set(&self, frame: &CompatibilityFrame, a: u64, b: u64) -> Result<u64, ProbError> {
        self.compare_set(frame, a, b, false)
    }

    /// The set of possibilities where every measure ranks `a` strictly
    /// more likely than `b`.
    pub fn gt_set(&self, frame: &CompatibilityFrame, a: u64, b: u64) -> Result<u64, ProbError> {
        self.compare_set(frame, a, b, true)
    }

    fn compare_set(
        &self,
        frame: &CompatibilityFrame,
        a: u64,
        b: u64,
        strict: bool,
    ) -> Result<u64, ProbError> {
        if self.measures.len() != frame.len() {
            return Err(ProbError::WrongCount {
                expected: frame.len(),
                got: self.measures.len(),
            });
        }
        let family = frame.prop_family();
        let ai = self.element_of(&family, frame, a)?;
        let bi = self.element_of(&family, frame, b)?;
        let mut out = 0u64;
        for (x, set) in self.measures.iter().enumerate() {
            let all = set.iter().all(|m| {
                if strict {
                    m.values()[ai] > m.values()[bi]
                } else {
                    m.values()[ai] >= m.values()[bi]
                }
            });
            if all {
                out |= 1 << x;
            }
        }
        debug_assert!(frame.is_regular(out));
        Ok(out)
    }

    /// Check one condition, returning the first witness in index order
    /// if it fails.
    pub fn check_condition(
        &self,
        frame: &CompatibilityFrame,
        condition: ProbCondition,
    ) -> Result<Option<ProbConditionFailure>, ProbError> {
        if self.measures.len() != frame.len() {
            return Err(ProbError::WrongCount {
                expected: frame.len(),
                got: self.measures.len(),
            });
        }
        match condition {
            ProbCondition::PRegularity => self.check_p_regularity(frame),
            ProbCondition::KnowabilityP => self.check_knowability(frame),
            ProbCondition::Sharp => self.check_sharp(frame),
            ProbCondition::AllOne => self.check_all_one(frame),
            ProbCondition::SomeNonzero => self.check_some_nonzero(frame),
        }
    }

    fn check_p_regularity(
        &self,
        frame: &CompatibilityFrame,
    ) -> Result<Option<ProbConditionFailure>, ProbError> {
        let family = frame.prop_family();
        let n = frame.len();
        for (ai, &a) in family.iter().enumerate() {
            for (bi, &b) in family.iter().enumerate() {
                for strict in [true, false] {
                    let holds = |x: usize| {
                        self.measures[x].iter().any(|m| {
                            if strict {
                                m.values()[ai] < m.values()[bi]
                            } else {
                                m.values()[ai] <= m.values()[bi]
                            }
                        })
                    };
                    for x in 0..n {
                        if !holds(x) {
                            continue;
                        }
                        let settled = (0..n).filter(|&x1| frame.compatible(x, x1)).any(|x1| {
                            (0..n)
                                .filter(|&x2| frame.compatible(x1, x2))
                                .all(|x2| holds(x2))
                        });
                        if !settled {
                            return Ok(Some(ProbConditionFailure {
                                condition: ProbCondition::PRegularity,
                                witness: alloc::vec![
                                    frame.names()[x].clone(),
                                    frame.set_name(a),
                                    frame.set_name(b),
                                    String::from(if strict { "<" } else { "<=" }),
                                ],
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    fn check_knowability(
        &self,
        frame: &CompatibilityFrame,
    ) -> Result<Option<ProbConditionFailure>, ProbError> {
        let family = frame.prop_family();
        let one = BigRational::one();
        for x in 0..frame.len() {
            let down = frame.down_set(x);
            let di = self.element_of(&family, frame, down)?;
            let found = (0..frame.len()).any(|y| {
                frame.refines(y, x)
                    && self.measures[y].iter().any(|m| m.values()[di] == one)
            });
            if !found {
                return Ok(Some(ProbConditionFailure {
                    condition: ProbCondition::KnowabilityP,
                    witness: alloc::vec![frame.names()[x].clone()],
                }));
            }
        }
        Ok(None)
    }

    fn check_sharp(
        &self,
        frame: &CompatibilityFrame,
    ) -> Result<Option<ProbConditionFailure>, ProbError> {
        let n = frame.len();
        for x in 0..n {
            for x1 in (0..n).filter(|&x1| frame.compatible(x, x1)) {
                let found = (0..n)
                    .filter(|&x2| frame.compatible(x1, x2))
                    .any(|x2| self.measures[x2].len() == 1);
                if !found {
                    return Ok(Some(ProbConditionFailure {
                        condition: ProbCondition::Sharp,
                        witness: alloc::vec![
                            frame.names()[x].clone(),
                            frame.names()[x1].clone(),
                        ],
                    }));
                }
            }
        }
        Ok(None)
    }

    fn check_all_one(
        &self,
        frame: &CompatibilityFrame,
    ) -> Result<Option<ProbConditionFailure>, ProbError> {
        let has_info = (0..frame.len()).any(|x| frame.info(x).is_some());
        if !has_info {
            return Err(ProbError::NoInfoFunction);
        }
        let family = frame.prop_family();
        let one = BigRational::one();
        for x in 0..frame.len() {
            let Some(ix) = frame.info(x) else { continue };
            let di = self.element_of(&family, frame, frame.down_set(ix))?;
            for (which, m) in self.measures[x].iter().enumerate() {
                if m.values()[di] != one {
                    return Ok(Some(ProbConditionFailure {
                        condition: ProbCondition::AllOne,
                        witness: alloc::vec![
                            frame.names()[x].clone(),
                            alloc::format!("measure {which}"),
                        ],
                    }));
                }
            }
        }
        Ok(None)
    }

    fn check_some_nonzero(
        &self,
        frame: &CompatibilityFrame,
    ) -> Result<Option<ProbConditionFailure>, ProbError> {
        let has_info = (0..frame.len()).any(|x| frame.info(x).is_some());
        if !has_info {
            return Err(ProbError::NoInfoFunction);
        }
        let family = frame.prop_family();
        let zero = BigRational::zero();
        for x in 0..frame.len() {
            let Some(ix) = frame.info(x) else { continue };
            for y in 0..frame.len() {
                if !frame.compatible(y, ix) {
                    continue;
                }
                let di = self.element_of(&family, frame, frame.down_set(y))?;
                let found = self.measures[x].iter().any(|m| m.values()[di] > zero);
                if !found {
                    return Ok(Some(ProbConditionFailure {
                        condition: ProbCondition::SomeNonzero,
                        witness: alloc::vec![
                            frame.names()[x].clone(),
                            frame.names()[y].clone(),
                        ],
                    }));
                }
            }
        }
        Ok(None)
    }
}

/// Name-keyed measure table helper: build an [`OrthoMeasure`] over a
/// lattice from `(element name, value)` pairs.
pub fn measure_from_names(
    lattice: &FiniteOrtholattice,
    entries: &BTreeMap<String, BigRational>,
) -> Result<OrthoMeasure, MeasureError> {
    let mut values = alloc::vec![BigRational::zero(); lattice.len()];
    for (name, value) in entries {
        let index = lattice
            .index_of(name)
            .ok_or_else(|| MeasureError::UnknownElement(name.clone()))?;
        values[index] = value.clone();
    }
    Ok(OrthoMeasure::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteOrtholattice;
    use alloc::string::ToString;
    use alloc::vec;

    /// The four-element Boolean algebra 0 < a, ~a < 1.
    fn four_bool() -> FiniteOrtholattice {
        let names: Vec<String> =
            ["0", "a", "na", "1"].iter().map(|s| s.to_string()).collect();
        FiniteOrtholattice::from_order(
            names,
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
            vec![3, 2, 1, 0],
        )
        .unwrap()
    }

    #[test]
    fn fair_coin_checks() {
        let lattice = four_bool();
        let m = OrthoMeasure::new(vec![ratio(0, 1), ratio(1, 2), ratio(1, 2), ratio(1, 1)]);
        assert_eq!(m.check(&lattice), Ok(()));
    }

    #[test]
    fn complement_mismatch_is_caught() {
        let lattice = four_bool();
        let m = OrthoMeasure::new(vec![ratio(0, 1), ratio(9, 10), ratio(2, 10), ratio(1, 1)]);
        let err = m.check(&lattice).unwrap_err();
        assert!(matches!(err, MeasureError::NotAdditive { .. }));
    }

    #[test]
    fn order_reversal_on_the_hexagon_is_caught() {
        // On the hexagon 0 < a < b < 1, 0 < ~b < ~a < 1 the only
        // commuting orthogonal pairs are the complements, so a table
        // can be complement-additive while reversing the order along
        // a < b. The monotonicity pass rejects it.
        let hex = crate::fixtures::benzene();
        let m = OrthoMeasure::new(vec![
            ratio(0, 1),
            ratio(9, 10),
            ratio(9, 10),
            ratio(1, 10),
            ratio(1, 10),
            ratio(1, 1),
        ]);
        assert_eq!(m.check(&hex).unwrap_err(), MeasureError::NotMonotone { a: 1, b: 3 });
    }

    #[test]
    fn out_of_range_and_normalization() {
        let lattice = four_bool();
        let bad = OrthoMeasure::new(vec![ratio(0, 1), ratio(3, 2), ratio(1, 2), ratio(1, 1)]);
        assert_eq!(bad.check(&lattice).unwrap_err(), MeasureError::OutOfRange(1));
        let unnormalized =
            OrthoMeasure::new(vec![ratio(0, 1), ratio(1, 2), ratio(1, 2), ratio(1, 2)]);
        assert_eq!(unnormalized.check(&lattice).unwrap_err(), MeasureError::NotNormalized);
    }

    #[test]
    fn total_probability_agrees_classically() {
        let lattice = four_bool();
        let m = OrthoMeasure::new(vec![ratio(0, 1), ratio(1, 3), ratio(2, 3), ratio(1, 1)]);
        // a conditioned on a: both sides are mu(a).
        let (lhs, rhs) = total_probability_gap(&lattice, &m, 1, 1).unwrap();
        assert_eq!(lhs, ratio(1, 3));
        assert_eq!(rhs, ratio(1, 3));
    }

    #[test]
    fn conditioning_on_zero_errors() {
        let lattice = four_bool();
        let m = OrthoMeasure::new(vec![ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(1, 1)]);
        assert_eq!(
            m.conditional(&lattice, 1, 2).unwrap_err(),
            MeasureError::ZeroConditioning(2)
        );
    }

    #[test]
    fn point_mass_on_two_element_lattice() {
        let names: Vec<String> = ["0", "1"].iter().map(|s| s.to_string()).collect();
        let lattice =
            FiniteOrtholattice::from_order(names, &[(0, 1)], vec![1, 0]).unwrap();
        let m = OrthoMeasure::new(vec![ratio(0, 1), ratio(1, 1)]);
        assert_eq!(m.check(&lattice), Ok(()));
    }

    /// Two isolated points: regular sets are all four subsets.
    fn two_worlds() -> CompatibilityFrame {
        CompatibilityFrame::new(
            vec!["w1".to_string(), "w2".to_string()],
            &[],
        )
        .unwrap()
    }

    fn two_world_assignment(p1: BigRational) -> ProbabilityAssignment {
        // Family masks ascending: {}, {w1}, {w2}, {w1, w2}.
        let p2 = BigRational::one() - &p1;
        let m = OrthoMeasure::new(vec![ratio(0, 1), p1, p2, ratio(1, 1)]);
        ProbabilityAssignment::new(vec![vec![m.clone()], vec![m]])
    }

    #[test]
    fn comparative_sets_on_two_worlds() {
        let frame = two_worlds();
        let pa = two_world_assignment(ratio(2, 3));
        assert_eq!(pa.validate(&frame), Ok(()));
        // {w1} is more likely than {w2} everywhere.
        assert_eq!(pa.gt_set(&frame, 0b01, 0b10).unwrap(), 0b11);
        assert_eq!(pa.geq_set(&frame, 0b10, 0b01).unwrap(), 0b00);
        assert_eq!(pa.geq_set(&frame, 0b01, 0b01).unwrap(), 0b11);
    }

    #[test]
    fn knowability_on_two_worlds() {
        let frame = two_worlds();
        // Shared non-extreme measure: no possibility is certain of
        // either world, so knowability fails.
        let pa = two_world_assignment(ratio(2, 3));
        let failure = pa.check_condition(&frame, ProbCondition::KnowabilityP).unwrap();
        assert_eq!(failure.unwrap().witness, vec!["w1".to_string()]);
    }
}
