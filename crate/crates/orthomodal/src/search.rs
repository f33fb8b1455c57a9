//! Bounded exhaustive search over small frames: enumeration up to
//! isomorphism, countermodel search for consecutions, and a dedicated
//! hunt for failures of the collapse consecution
//! `psi & (psi -> <>(psi & phi)) |- phi -> psi` on conditional frames.
//!
//! Enumeration is deterministic: compatibility relations are generated
//! as ascending edge masks and pruned to lexicographically minimal
//! representatives under point permutation; information functions and
//! selection tables are generated in odometer order. "First
//! countermodel" therefore always means first in this canonical order,
//! independent of how the work is scheduled.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::Formula;
use crate::frame::{CompatibilityFrame, FrameCondition};
use crate::proof::{saturate, Derivation, LogicBase, LogicProfile, SaturationResult, SearchLimits};
use crate::semantics::{
    entails_on_frame, verify_principle, PossibilityModel, PrincipleId, PrincipleWitness,
    SemanticsError, ValuationWitness,
};

/// The frame classes the enumerator knows how to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameClass {
    /// Reflexive symmetric relations only.
    Compatibility,
    /// Compatibility frames with a total information function passing
    /// the information-regularity, factivity, and knowability checks.
    Epistemic,
}

/// Budgets for enumeration and search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest frame size the enumerator accepts.
    pub size_cap: usize,
    /// Abort after examining this many candidates.
    pub candidate_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { size_cap: 6, candidate_cap: 10_000_000 }
    }
}

/// Search failures (distinct from a negative search result).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    /// Requested size exceeds the configured cap.
    SizeTooLarge {
        /// The size requested.
        requested: usize,
        /// The configured cap.
        cap: usize,
    },
    /// The candidate budget ran out before the search finished.
    BudgetExhausted {
        /// Candidates examined before giving up.
        examined: usize,
    },
    /// Evaluation failed on a candidate (a goal/class mismatch, e.g. a
    /// modal goal over plain compatibility frames).
    Semantics(SemanticsError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::SizeTooLarge { requested, cap } => {
                write!(f, "size {requested} exceeds the enumeration cap {cap}")
            }
            SearchError::BudgetExhausted { examined } => {
                write!(f, "budget exhausted after {examined} candidates")
            }
            SearchError::Semantics(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SearchError {}

impl From<SemanticsError> for SearchError {
    fn from(e: SemanticsError) -> Self {
        SearchError::Semantics(e)
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}

/// Bit position of the unordered pair `{i, j}` (with `i < j`) in the
/// row-major upper-triangle order used for edge masks.
fn pair_bit(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // Pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Whether an edge mask is the lexicographically least representative
/// of its isomorphism class.
fn is_canonical(n: usize, mask: u64, perms: &[Vec<usize>]) -> bool {
    for perm in perms.iter().skip(1) {
        // Compare word(relabelled) with word(original), most
        // significant pair first.
        let mut verdict = core::cmp::Ordering::Equal;
        'pairs: for i in 0..n {
            for j in (i + 1)..n {
                let original = mask >> pair_bit(n, i, j) & 1;
                let (pi, pj) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                let relabelled = mask >> pair_bit(n, pi, pj) & 1;
                if relabelled != original {
                    verdict = if relabelled < original {
                        core::cmp::Ordering::Less
                    } else {
                        core::cmp::Ordering::Greater
                    };
                    break 'pairs;
                }
            }
        }
        if verdict == core::cmp::Ordering::Less {
            return false;
        }
    }
    true
}

/// Orbit size of an edge mask under point permutation (labelled frames
/// isomorphic to it), used by the pruning cross-check.
pub fn orbit_size(n: usize, mask: u64) -> usize {
    let perms = permutations(n);
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    for perm in &perms {
        let mut image = 0u64;
        for i in 0..n {
            for j in (i + 1)..n {
                if mask >> pair_bit(n, i, j) & 1 == 1 {
                    let (pi, pj) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    image |= 1 << pair_bit(n, pi, pj);
                }
            }
        }
        seen.insert(image);
    }
    seen.len()
}

fn frame_from_mask(n: usize, mask: u64) -> CompatibilityFrame {
    let names: Vec<String> = (1..=n).map(|k| alloc::format!("x{k}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> pair_bit(n, i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    CompatibilityFrame::new(names, &edges).expect("generated edges are in range")
}

fn epistemic_conditions_hold(frame: &CompatibilityFrame) -> bool {
    [FrameCondition::IRegularity, FrameCondition::Factivity, FrameCondition::Knowability]
        .into_iter()
        .all(|c| frame.check_condition(c).is_ok())
}

/// Enumerate the frames of a class at exactly `n` points, pruned to
/// lexicographically minimal representatives under point permutation.
/// For the epistemic class every total information function passing
/// the class checks is paired with each base relation.
pub fn enumerate_frames(
    class: FrameClass,
    n: usize,
    budget: &SearchBudget,
) -> Result<Vec<CompatibilityFrame>, SearchError> {
    if n == 0 || n > budget.size_cap {
        return Err(SearchError::SizeTooLarge { requested: n, cap: budget.size_cap });
    }
    let perms = permutations(n);
    let bits = n * (n - 1) / 2;
    let mut out = Vec::new();
    let mut examined = 0usize;
    for mask in 0..(1u64 << bits) {
        examined += 1;
        if examined > budget.candidate_cap {
            return Err(SearchError::BudgetExhausted { examined });
        }
        if !is_canonical(n, mask, &perms) {
            continue;
        }
        let base = frame_from_mask(n, mask);
        match class {
            FrameClass::Compatibility => out.push(base),
            FrameClass::Epistemic => {
                // Odometer over total information functions.
                let mut i_fun = alloc::vec![0usize; n];
                'functions: loop {
                    examined += 1;
                    if examined > budget.candidate_cap {
                        return Err(SearchError::BudgetExhausted { examined });
                    }
                    let candidate = base
                        .clone()
                        .with_i(i_fun.iter().map(|&v| Some(v)).collect())
                        .expect("generated indices are in range");
                    if epistemic_conditions_hold(&candidate) {
                        out.push(candidate);
                    }
                    for pos in (0..n).rev() {
                        i_fun[pos] += 1;
                        if i_fun[pos] < n {
                            continue 'functions;
                        }
                        i_fun[pos] = 0;
                    }
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// A countermodel search request.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    /// Premise of the goal consecution.
    pub lhs: Formula,
    /// Conclusion of the goal consecution.
    pub rhs: Formula,
    /// Frame class to search.
    pub class: FrameClass,
    /// Largest frame size to try.
    pub max_size: usize,
    /// Atoms whose valuations range over the grounding family.
    pub bool_atoms: BTreeSet<String>,
    /// Valuation-instantiation cap per frame.
    pub valuation_cap: u64,
}

impl SearchSpec {
    /// A search for the consecution `lhs |- rhs` over a class.
    pub fn new(lhs: Formula, rhs: Formula, class: FrameClass, max_size: usize) -> Self {
        SearchSpec {
            lhs,
            rhs,
            class,
            max_size,
            bool_atoms: BTreeSet::new(),
            valuation_cap: crate::semantics::DEFAULT_INSTANTIATION_CAP,
        }
    }
}

/// Outcome of a countermodel search.
#[derive(Debug, Clone)]
pub enum SearchResult {
    /// A countermodel: the frame, the valuation, and the possibility
    /// where the premise holds and the conclusion fails.
    Countermodel {
        /// The refuting frame.
        frame: CompatibilityFrame,
        /// The refuting valuation and possibility.
        witness: ValuationWitness,
        /// Number of points of the refuting frame.
        size: usize,
    },
    /// No countermodel up to the bound. Not a validity proof.
    NoneUpToBound {
        /// Frames checked across all sizes.
        frames_checked: usize,
    },
}

/// Search for a countermodel to `lhs |- rhs`, sizes ascending, frames
/// in canonical order. Every reported witness is re-verified through
/// an independently constructed model before being returned.
pub fn find_countermodel(
    spec: &SearchSpec,
    budget: &SearchBudget,
) -> Result<SearchResult, SearchError> {
    let mut frames_checked = 0usize;
    for n in 1..=spec.max_size {
        for frame in enumerate_frames(spec.class, n, budget)? {
            frames_checked += 1;
            let found =
                entails_on_frame(&frame, &spec.lhs, &spec.rhs, &spec.bool_atoms, spec.valuation_cap)?;
            if let Some(witness) = found {
                let model = PossibilityModel::new(
                    frame.clone(),
                    witness.valuation.clone(),
                    spec.bool_atoms.clone(),
                )?;
                let confirmed = model.entails(&spec.lhs, &spec.rhs)?;
                debug_assert_eq!(confirmed, Some(witness.possibility));
                if confirmed.is_some() {
                    return Ok(SearchResult::Countermodel { frame, witness, size: n });
                }
            }
        }
    }
    Ok(SearchResult::NoneUpToBound { frames_checked })
}

/// The selection-function constraint paired with an assumable
/// conditional principle, if any.
pub fn constraint_for(principle: PrincipleId) -> Option<FrameCondition> {
    match principle {
        PrincipleId::Identity => Some(FrameCondition::Id),
        PrincipleId::SimpleMp | PrincipleId::SimpleCs => Some(FrameCondition::Center),
        PrincipleId::SimpleMt => Some(FrameCondition::Comp),
        PrincipleId::ModalizedMp | PrincipleId::ModalizedCs => Some(FrameCondition::MustCenter),
        PrincipleId::ModalizedMt => Some(FrameCondition::MustComp),
        PrincipleId::MustIntro => Some(FrameCondition::Update),
        PrincipleId::SimpleMustImport => Some(FrameCondition::MustImp),
        PrincipleId::SafeMustExport => Some(FrameCondition::MustExp),
        PrincipleId::MustPreservation => Some(FrameCondition::Preserve),
        PrincipleId::Flattening => Some(FrameCondition::Flat),
        PrincipleId::WeakBoethius => Some(FrameCondition::Cons),
        PrincipleId::MustIfCombination => Some(FrameCondition::Combine),
        PrincipleId::SafeNegationImport => Some(FrameCondition::Switch),
        PrincipleId::SafeCemPlus => Some(FrameCondition::Split),
        _ => None,
    }
}

/// The collapse consecution `psi & (psi -> <>(psi & phi)) |- phi -> psi`
/// as premise/conclusion formulas over metavariable atoms.
pub fn collapse_goal() -> (Formula, Formula) {
    let phi = Formula::atom("phi");
    let psi = Formula::atom("psi");
    let guard = psi.clone().imp(psi.clone().and(phi.clone()).diamond());
    (psi.clone().and(guard), phi.imp(psi))
}

/// Stepping-stone formulas for replaying the collapse proof by
/// saturation: the universe must contain every consecution side the
/// argument passes through.
fn collapse_extras() -> Vec<Formula> {
    let phi = || Formula::atom("phi");
    let psi = || Formula::atom("psi");
    let conj = || psi().and(phi());
    let guard = || psi().imp(conj().diamond());
    let inner = || phi().imp(psi());
    let cases = || psi().and(psi().neg()).or(psi().and(inner()));
    alloc::vec![
        conj().imp(conj()),
        conj().imp(psi()),
        guard().and(conj().imp(psi())),
        psi().imp(inner()),
        guard().and(psi().imp(inner())),
        psi().neg().or(inner()),
        psi().and(psi().neg().or(inner())),
        cases(),
        psi().neg().and(inner().neg()),
        cases().neg(),
        inner().neg().neg(),
        psi().and(psi().neg()).neg().and(psi().and(inner()).neg()),
    ]
}

/// Outcome of the collapse hunt.
#[derive(Debug, Clone)]
pub enum HuntOutcome {
    /// A conditional frame refuting the collapse consecution under the
    /// requested constraints.
    Countermodel {
        /// The refuting frame (with proposition family and selection).
        frame: CompatibilityFrame,
        /// The refuting instantiation.
        witness: PrincipleWitness,
        /// Number of points.
        size: usize,
    },
    /// The assumptions force the collapse: a checked derivation of the
    /// goal is returned instead of a countermodel.
    ProverReplays(Derivation),
    /// No countermodel up to the bound. Not a validity proof.
    NoneUpToBound {
        /// Selection tables examined.
        candidates_checked: usize,
    },
}

/// Hunt for a countermodel to the collapse consecution over
/// conditional epistemic frames whose selection functions satisfy the
/// constraints paired with `principles`.
///
/// When `full_distributivity` is set together with the identity,
/// if-to-or, and import-export principles, no countermodel can exist;
/// the prover replays the collapse derivation instead of searching.
/// The Boolean family is taken to be the full proposition family when
/// the grounding condition allows, otherwise the trivial two-element
/// family.
pub fn qualified_collapse_hunt(
    principles: &BTreeSet<PrincipleId>,
    max_size: usize,
    full_distributivity: bool,
    budget: &SearchBudget,
) -> Result<HuntOutcome, SearchError> {
    let forcing: BTreeSet<PrincipleId> = [
        PrincipleId::Identity,
        PrincipleId::IfToOr,
        PrincipleId::ModalizedImportExport,
    ]
    .into_iter()
    .collect();
    if full_distributivity && forcing.is_subset(principles) {
        let profile = LogicProfile::new(LogicBase::CondModal)
            .with_principles(forcing)
            .with_full_distributivity();
        let (lhs, rhs) = collapse_goal();
        let goal = crate::proof::Consecution::new(lhs, rhs);
        return match saturate(&profile, &goal, &collapse_extras(), SearchLimits::default()) {
            SaturationResult::Proved(derivation) => Ok(HuntOutcome::ProverReplays(derivation)),
            SaturationResult::Unknown { derived } => {
                Err(SearchError::BudgetExhausted { examined: derived })
            }
        };
    }

    let constraints: Vec<FrameCondition> =
        principles.iter().filter_map(|&p| constraint_for(p)).collect();
    let mut candidates = 0usize;
    for n in 1..=max_size {
        for base in enumerate_frames(FrameClass::Epistemic, n, budget)? {
            let props = base.prop_family();
            let grounded = base
                .clone()
                .with_bool_family(props.clone())
                .map(|f| f.check_condition(FrameCondition::Grounding).is_ok())
                .unwrap_or(false);
            let bools = if grounded {
                props.clone()
            } else {
                alloc::vec![0, base.full_mask()]
            };
            // Odometer over partial selection tables: slot value 0 is
            // "undefined", k+1 selects point k.
            let slots = n * props.len();
            let mut table = alloc::vec![0usize; slots];
            'tables: loop {
                candidates += 1;
                if candidates > budget.candidate_cap {
                    return Err(SearchError::BudgetExhausted { examined: candidates });
                }
                let mut selection: BTreeMap<(usize, u64), usize> = BTreeMap::new();
                for (slot, &value) in table.iter().enumerate() {
                    if value > 0 {
                        let x = slot / props.len();
                        let set = props[slot % props.len()];
                        selection.insert((x, set), value - 1);
                    }
                }
                let candidate = base
                    .clone()
                    .with_bool_family(bools.clone())
                    .and_then(|f| f.with_prop_family(props.clone()))
                    .and_then(|f| f.with_selection(selection))
                    .expect("generated selection refers to family members");
                let admissible = candidate
                    .check_condition(FrameCondition::CRegularity)
                    .is_ok()
                    && constraints.iter().all(|&c| candidate.check_condition(c).is_ok());
                if admissible {
                    if let Some(witness) = verify_principle(
                        &candidate,
                        PrincipleId::QualifiedCollapse,
                        crate::semantics::DEFAULT_INSTANTIATION_CAP,
                    )? {
                        return Ok(HuntOutcome::Countermodel { frame: candidate, witness, size: n });
                    }
                }
                for pos in (0..slots).rev() {
                    table[pos] += 1;
                    if table[pos] <= n {
                        continue 'tables;
                    }
                    table[pos] = 0;
                }
                break;
            }
        }
    }
    Ok(HuntOutcome::NoneUpToBound { candidates_checked: candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check_derivation;

    #[test]
    fn one_and_two_point_compatibility_frames() {
        let budget = SearchBudget::default();
        let ones = enumerate_frames(FrameClass::Compatibility, 1, &budget).unwrap();
        assert_eq!(ones.len(), 1);
        let twos = enumerate_frames(FrameClass::Compatibility, 2, &budget).unwrap();
        assert_eq!(twos.len(), 2);
    }

    #[test]
    fn size_cap_is_enforced() {
        let budget = SearchBudget { size_cap: 2, ..SearchBudget::default() };
        assert!(matches!(
            enumerate_frames(FrameClass::Compatibility, 3, &budget),
            Err(SearchError::SizeTooLarge { requested: 3, cap: 2 })
        ));
    }

    #[test]
    fn pruning_accounts_for_every_labelled_frame() {
        // Sum of orbit sizes over canonical representatives equals the
        // number of labelled relations.
        for n in 1..=4usize {
            let budget = SearchBudget::default();
            let canonical = enumerate_frames(FrameClass::Compatibility, n, &budget).unwrap();
            let perms = permutations(n);
            let bits = n * (n - 1) / 2;
            let mut total = 0usize;
            for mask in 0..(1u64 << bits) {
                if is_canonical(n, mask, &perms) {
                    total += orbit_size(n, mask);
                }
            }
            assert_eq!(total, 1usize << bits);
            assert!(canonical.len() <= 1 << bits);
        }
    }

    #[test]
    fn double_negation_has_no_countermodel() {
        let spec = SearchSpec::new(
            Formula::parse("p").unwrap(),
            Formula::parse("~~p").unwrap(),
            FrameClass::Compatibility,
            3,
        );
        let result = find_countermodel(&spec, &SearchBudget::default()).unwrap();
        assert!(matches!(result, SearchResult::NoneUpToBound { .. }));
    }

    #[test]
    fn excluded_middle_entailment_fails_on_a_small_frame() {
        // p & (q \/ ~q) |- q has a countermodel on some tiny frame.
        let spec = SearchSpec::new(
            Formula::parse("p & (q \\/ ~q)").unwrap(),
            Formula::parse("q").unwrap(),
            FrameClass::Compatibility,
            3,
        );
        match find_countermodel(&spec, &SearchBudget::default()).unwrap() {
            SearchResult::Countermodel { size, .. } => assert!(size <= 2),
            SearchResult::NoneUpToBound { .. } => panic!("expected a countermodel"),
        }
    }

    #[test]
    fn collapse_hunt_with_no_constraints_finds_a_tiny_countermodel() {
        let outcome = qualified_collapse_hunt(
            &BTreeSet::new(),
            3,
            false,
            &SearchBudget::default(),
        )
        .unwrap();
        match outcome {
            HuntOutcome::Countermodel { size, .. } => assert!(size <= 2),
            _ => panic!("expected a countermodel"),
        }
    }

    #[test]
    fn collapse_hunt_replays_the_proof_under_distribution() {
        let principles: BTreeSet<PrincipleId> = [
            PrincipleId::Identity,
            PrincipleId::IfToOr,
            PrincipleId::ModalizedImportExport,
        ]
        .into_iter()
        .collect();
        let outcome =
            qualified_collapse_hunt(&principles, 3, true, &SearchBudget::default()).unwrap();
        match outcome {
            HuntOutcome::ProverReplays(derivation) => {
                let profile = LogicProfile::new(LogicBase::CondModal)
                    .with_principles(principles)
                    .with_full_distributivity();
                assert!(check_derivation(&derivation, &profile).is_ok());
            }
            _ => panic!("expected the prover to replay the collapse derivation"),
        }
    }
}
