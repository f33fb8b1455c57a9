//! Models over compatibility frames: the forcing relation, formula
//! extensions, entailment, and schema verification for inferential
//! principles.
//!
//! A [`PossibilityModel`] pairs a frame with a valuation sending each
//! atom to a regular set (atoms declared *Boolean* must land in the
//! frame's grounding family). Extensions are computed by the usual
//! clauses: negation is the orthonegation, conjunction intersection,
//! disjunction the regular join, box via the information function or
//! accessibility relation, and the conditional via the selection
//! function.
//!
//! Frame-level entailment ([`entails_on_frame`]) and principle
//! verification ([`verify_principle`]) quantify valuations over the
//! proposition family (Boolean atoms over the grounding family),
//! enumerating assignments in lexicographic order — ascending set
//! masks, atoms in name order, first atom most significant — so the
//! first reported witness is deterministic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::Formula;
use crate::frame::{CompatibilityFrame, FrameError};

/// Default bound on the number of valuation instantiations a
/// frame-level sweep may enumerate; exceeding it is a reported
/// refusal, never silent truncation.
pub const DEFAULT_INSTANTIATION_CAP: u64 = 1_000_000;

/// Errors from model construction and evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    /// A formula atom has no entry in the valuation.
    UnboundAtom(String),
    /// A valuation image is not a regular set.
    AtomNotRegular(String),
    /// A valuation image is outside the declared proposition family.
    AtomOutsideProps(String),
    /// A Boolean atom's image is outside the grounding family.
    AtomOutsideBools(String),
    /// Boolean atoms were declared but the frame has no grounding family.
    NoBoolFamily,
    /// A box occurs but the frame has neither an information function
    /// nor an accessibility relation.
    NoModal,
    /// A conditional occurs but the frame has no selection function.
    NoSelection,
    /// A conditional's antecedent denotes a set outside the proposition
    /// family.
    AntecedentNotProposition(String),
    /// The instantiation sweep would exceed the configured cap.
    CapExceeded {
        /// Number of instantiations the sweep would need.
        needed: u128,
        /// The configured cap.
        cap: u64,
    },
    /// An underlying frame error.
    Frame(FrameError),
}

impl fmt::Display for SemanticsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemanticsError::UnboundAtom(p) => write!(f, "atom {p} has no valuation"),
            SemanticsError::AtomNotRegular(p) => write!(f, "valuation of {p} is not a regular set"),
            SemanticsError::AtomOutsideProps(p) => {
                write!(f, "valuation of {p} is outside the proposition family")
            }
            SemanticsError::AtomOutsideBools(p) => {
                write!(f, "valuation of Boolean atom {p} is outside the grounding family")
            }
            SemanticsError::NoBoolFamily => {
                write!(f, "Boolean atoms declared but the frame has no grounding family")
            }
            SemanticsError::NoModal => write!(f, "frame has no information function or accessibility relation"),
            SemanticsError::NoSelection => write!(f, "frame has no selection function"),
            SemanticsError::AntecedentNotProposition(a) => {
                write!(f, "conditional antecedent {a} is outside the proposition family")
            }
            SemanticsError::CapExceeded { needed, cap } => {
                write!(f, "sweep needs {needed} instantiations, exceeding the cap of {cap}")
            }
            SemanticsError::Frame(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SemanticsError {}

impl From<FrameError> for SemanticsError {
    fn from(e: FrameError) -> Self {
        SemanticsError::Frame(e)
    }
}

/// Evaluate a formula against an explicit valuation on a frame.
///
/// `props` is the frame's proposition family when one is declared;
/// conditional antecedents must denote members of it.
pub(crate) fn eval_with(
    frame: &CompatibilityFrame,
    valuation: &BTreeMap<String, u64>,
    props: Option<&[u64]>,
    formula: &Formula,
) -> Result<u64, SemanticsError> {
    match formula {
        Formula::Bot => Ok(0),
        Formula::Top => Ok(frame.full_mask()),
        Formula::Atom(p) => valuation
            .get(p)
            .copied()
            .ok_or_else(|| SemanticsError::UnboundAtom(p.clone())),
        Formula::Neg(inner) => Ok(frame.neg_set(eval_with(frame, valuation, props, inner)?)),
        Formula::And(a, b) => Ok(eval_with(frame, valuation, props, a)?
            & eval_with(frame, valuation, props, b)?),
        Formula::Or(a, b) => {
            let left = eval_with(frame, valuation, props, a)?;
            let right = eval_with(frame, valuation, props, b)?;
            Ok(frame.join_set(left, right))
        }
        Formula::Box(inner) => {
            let a = eval_with(frame, valuation, props, inner)?;
            frame.box_set(a).ok_or(SemanticsError::NoModal)
        }
        Formula::Diamond(inner) => {
            let a = eval_with(frame, valuation, props, inner)?;
            frame.diamond_set(a).ok_or(SemanticsError::NoModal)
        }
        Formula::Imp(a, b) => {
            let ant = eval_with(frame, valuation, props, a)?;
            if let Some(family) = props {
                if !family.contains(&ant) {
                    return Err(SemanticsError::AntecedentNotProposition(frame.set_name(ant)));
                }
            }
            let cons = eval_with(frame, valuation, props, b)?;
            frame.arrow_set(ant, cons).ok_or(SemanticsError::NoSelection)
        }
    }
}

/// A compatibility frame together with a valuation of atoms.
#[derive(Debug, Clone)]
pub struct PossibilityModel {
    frame: CompatibilityFrame,
    valuation: BTreeMap<String, u64>,
    bool_atoms: BTreeSet<String>,
}

impl PossibilityModel {
    /// Build and validate a model: every valuation image must be
    /// regular, land in the proposition family when one is declared,
    /// and Boolean atoms must land in the grounding family.
    pub fn new(
        frame: CompatibilityFrame,
        valuation: BTreeMap<String, u64>,
        bool_atoms: BTreeSet<String>,
    ) -> Result<Self, SemanticsError> {
        for (atom, &set) in &valuation {
            if !frame.is_regular(set) {
                return Err(SemanticsError::AtomNotRegular(atom.clone()));
            }
            if let Some(family) = frame.explicit_prop_family() {
                if !family.contains(&set) {
                    return Err(SemanticsError::AtomOutsideProps(atom.clone()));
                }
            }
            if bool_atoms.contains(atom) {
                match frame.bool_family() {
                    None => return Err(SemanticsError::NoBoolFamily),
                    Some(family) if !family.contains(&set) => {
                        return Err(SemanticsError::AtomOutsideBools(atom.clone()))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(PossibilityModel { frame, valuation, bool_atoms })
    }

    /// The underlying frame.
    pub fn frame(&self) -> &CompatibilityFrame {
        &self.frame
    }

    /// The valuation map.
    pub fn valuation(&self) -> &BTreeMap<String, u64> {
        &self.valuation
    }

    /// Atoms declared Boolean.
    pub fn bool_atoms(&self) -> &BTreeSet<String> {
        &self.bool_atoms
    }

    /// The extension `{x | x forces f}` as a bitmask; always regular.
    pub fn extension(&self, formula: &Formula) -> Result<u64, SemanticsError> {
        let props = self.frame.explicit_prop_family();
        let out = eval_with(&self.frame, &self.valuation, props, formula)?;
        debug_assert!(self.frame.is_regular(out));
        Ok(out)
    }

    /// Whether the possibility at `index` forces the formula.
    pub fn forces(&self, index: usize, formula: &Formula) -> Result<bool, SemanticsError> {
        Ok(self.extension(formula)? & (1 << index) != 0)
    }

    /// Model-level entailment: `None` when every possibility forcing
    /// `lhs` forces `rhs`, otherwise the first counter-possibility.
    pub fn entails(&self, lhs: &Formula, rhs: &Formula) -> Result<Option<usize>, SemanticsError> {
        let gap = self.extension(lhs)? & !self.extension(rhs)?;
        Ok(if gap == 0 { None } else { Some(gap.trailing_zeros() as usize) })
    }
}

/// Product of two models: the product frame, with an atom true at a
/// pair when it is true at either coordinate. (Cylinders over regular
/// sets are regular, and so is their union in the product.)
pub fn product_model(
    a: &PossibilityModel,
    b: &PossibilityModel,
) -> Result<PossibilityModel, SemanticsError> {
    let frame = a.frame().product(b.frame())?;
    let width = b.frame().len();
    let mut valuation = BTreeMap::new();
    let mut atoms: BTreeSet<&String> = a.valuation.keys().collect();
    atoms.extend(b.valuation.keys());
    for atom in atoms {
        let left = a.valuation.get(atom).copied().unwrap_or(0);
        let right = b.valuation.get(atom).copied().unwrap_or(0);
        let mut set = 0u64;
        for x in 0..a.frame().len() {
            for y in 0..width {
                if left & (1 << x) != 0 || right & (1 << y) != 0 {
                    set |= 1 << (x * width + y);
                }
            }
        }
        valuation.insert(atom.clone(), set);
    }
    let bool_atoms = a.bool_atoms.union(&b.bool_atoms).cloned().collect();
    PossibilityModel::new(frame, valuation, bool_atoms)
}

/// A failed frame-level entailment: the first valuation (in
/// enumeration order) and possibility where the premise holds but the
/// conclusion does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationWitness {
    /// Atom valuations, as set masks over the frame.
    pub valuation: BTreeMap<String, u64>,
    /// Index of the witnessing possibility.
    pub possibility: usize,
}

/// Iterate assignments of `vars[i]` over `families[i]` in
/// lexicographic order (first variable most significant), calling
/// `visit` until it returns `Some`.
fn sweep<T>(
    families: &[&[u64]],
    mut visit: impl FnMut(&[u64]) -> Result<Option<T>, SemanticsError>,
) -> Result<Option<T>, SemanticsError> {
    let mut indices = alloc::vec![0usize; families.len()];
    let mut current: Vec<u64> = families.iter().map(|f| f[0]).collect();
    loop {
        if let Some(found) = visit(&current)? {
            return Ok(Some(found));
        }
        let mut pos = families.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < families[pos].len() {
                current[pos] = families[pos][indices[pos]];
                break;
            }
            indices[pos] = 0;
            current[pos] = families[pos][0];
        }
    }
}

/// Check that a sweep over the given families fits under the cap.
fn check_cap(families: &[&[u64]], cap: u64) -> Result<(), SemanticsError> {
    let mut needed: u128 = 1;
    for family in families {
        needed = needed.saturating_mul(family.len() as u128);
    }
    if needed > cap as u128 {
        return Err(SemanticsError::CapExceeded { needed, cap });
    }
    Ok(())
}

/// Frame-level entailment: quantify over all valuations of the atoms
/// of `lhs` and `rhs` (atoms in `bool_atoms` range over the grounding
/// family, others over the proposition family) and all possibilities.
/// Returns the first countermodel in enumeration order, or `None` if
/// the entailment is valid on the frame.
pub fn entails_on_frame(
    frame: &CompatibilityFrame,
    lhs: &Formula,
    rhs: &Formula,
    bool_atoms: &BTreeSet<String>,
    cap: u64,
) -> Result<Option<ValuationWitness>, SemanticsError> {
    let mut atoms = lhs.atoms();
    atoms.extend(rhs.atoms());
    let atoms: Vec<String> = atoms.into_iter().collect();
    let props = frame.prop_family();
    let bools = match frame.bool_family() {
        Some(family) => family.to_vec(),
        None if atoms.iter().any(|a| bool_atoms.contains(a)) => {
            return Err(SemanticsError::NoBoolFamily)
        }
        None => Vec::new(),
    };
    let families: Vec<&[u64]> = atoms
        .iter()
        .map(|a| if bool_atoms.contains(a) { bools.as_slice() } else { props.as_slice() })
        .collect();
    check_cap(&families, cap)?;
    let explicit = frame.explicit_prop_family();
    sweep(&families, |assignment| {
        let valuation: BTreeMap<String, u64> =
            atoms.iter().cloned().zip(assignment.iter().copied()).collect();
        let gap = eval_with(frame, &valuation, explicit, lhs)?
            & !eval_with(frame, &valuation, explicit, rhs)?;
        Ok(if gap == 0 {
            None
        } else {
            Some(ValuationWitness {
                valuation,
                possibility: gap.trailing_zeros() as usize,
            })
        })
    })
}

/// Inferential principles verifiable on a frame and assumable in
/// derivations.
///
/// Metavariables written `phi`, `psi`, `chi` range over arbitrary
/// propositions; `b` ranges over the grounding family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrincipleId {
    /// `chi ⊢ psi → psi`.
    Identity,
    /// `(phi → b) ∧ phi ⊢ b`.
    SimpleMp,
    /// `phi ∧ b ⊢ phi → b`.
    SimpleCs,
    /// `(phi → b) ∧ ¬b ⊢ ¬phi`.
    SimpleMt,
    /// `(phi → psi) ∧ □phi ⊢ psi`.
    ModalizedMp,
    /// `□phi ∧ psi ⊢ phi → psi`.
    ModalizedCs,
    /// `(phi → psi) ∧ ¬psi ⊢ ¬□phi`.
    ModalizedMt,
    /// Rule: from `phi ⊢ psi` infer `chi ⊢ phi → □psi`.
    MustIntro,
    /// `□(phi → b) ⊢ phi → □b`.
    SimpleMustImport,
    /// `b → □psi ⊢ □(b → psi)`.
    SafeMustExport,
    /// `◇(phi ∧ psi) ∧ □psi ⊢ phi → □psi`.
    MustPreservation,
    /// `phi → ((phi ∧ psi) → chi)` and `(phi ∧ psi) → chi` entail each
    /// other.
    Flattening,
    /// `◇phi ∧ (phi → psi) ⊢ ¬(phi → ¬psi)`.
    WeakBoethius,
    /// `phi → psi ⊢ ¬phi ∨ (□phi ∧ (phi → psi))`.
    MustIfCombination,
    /// `¬(b → psi) ⊢ b → ¬psi`.
    SafeNegationImport,
    /// `b → (psi ∨ chi) ⊢ (b → psi) ∨ (b → chi)`.
    SafeCemPlus,
    /// `phi ∧ (psi ∨ chi) ⊢ (phi ∧ psi) ∨ (phi ∧ chi)` — fails beyond
    /// the Boolean fragment.
    Distributivity,
    /// `¬phi ∧ ◇phi ⊢ ⊥`.
    Wittgenstein,
    /// `(phi ∨ psi) ∧ ¬phi ⊢ psi` — fails beyond the Boolean fragment.
    DisjunctiveSyllogism,
    /// Rule: from `phi ⊢ psi` infer `psi ⊢ phi ∨ (¬phi ∧ psi)`.
    OrthomodularityRule,
    /// `psi ∧ (psi → ◇(psi ∧ phi)) ⊢ phi → psi` — the unwanted
    /// consequence of combining the conditional with a distributive
    /// base.
    QualifiedCollapse,
    /// `phi → psi ⊢ ¬phi ∨ psi`.
    IfToOr,
    /// `(phi → ◇(phi ∧ psi)) ∧ (phi → (psi → chi))` and
    /// `(phi → ◇(phi ∧ psi)) ∧ ((phi ∧ psi) → chi)` entail each other.
    ModalizedImportExport,
}

/// A principle rendered as consecution patterns over metavariable
/// atoms: for every instantiation, if all premises hold then every
/// conclusion must hold.
#[derive(Debug, Clone)]
pub struct PrincipleSchema {
    /// The principle this schema renders.
    pub id: PrincipleId,
    /// Metavariable atoms ranging over the grounding family.
    pub bool_vars: BTreeSet<String>,
    /// Consecutions that gate the conclusions (empty for plain
    /// principles; used by rule-shaped principles).
    pub premises: Vec<(Formula, Formula)>,
    /// Consecutions that must hold under every premise-satisfying
    /// instantiation.
    pub conclusions: Vec<(Formula, Formula)>,
}

impl PrincipleId {
    /// All principles, in a fixed display order.
    pub const ALL: [PrincipleId; 23] = [
        PrincipleId::Identity,
        PrincipleId::SimpleMp,
        PrincipleId::SimpleCs,
        PrincipleId::SimpleMt,
        PrincipleId::ModalizedMp,
        PrincipleId::ModalizedCs,
        PrincipleId::ModalizedMt,
        PrincipleId::MustIntro,
        PrincipleId::SimpleMustImport,
        PrincipleId::SafeMustExport,
        PrincipleId::MustPreservation,
        PrincipleId::Flattening,
        PrincipleId::WeakBoethius,
        PrincipleId::MustIfCombination,
        PrincipleId::SafeNegationImport,
        PrincipleId::SafeCemPlus,
        PrincipleId::Distributivity,
        PrincipleId::Wittgenstein,
        PrincipleId::DisjunctiveSyllogism,
        PrincipleId::OrthomodularityRule,
        PrincipleId::QualifiedCollapse,
        PrincipleId::IfToOr,
        PrincipleId::ModalizedImportExport,
    ];

    /// The sixteen conditional principles paired with selection-function
    /// constraints, in table order.
    pub const CONDITIONAL: [PrincipleId; 16] = [
        PrincipleId::Identity,
        PrincipleId::SimpleMp,
        PrincipleId::SimpleCs,
        PrincipleId::SimpleMt,
        PrincipleId::ModalizedMp,
        PrincipleId::ModalizedCs,
        PrincipleId::ModalizedMt,
        PrincipleId::MustIntro,
        PrincipleId::SimpleMustImport,
        PrincipleId::SafeMustExport,
        PrincipleId::MustPreservation,
        PrincipleId::Flattening,
        PrincipleId::WeakBoethius,
        PrincipleId::MustIfCombination,
        PrincipleId::SafeNegationImport,
        PrincipleId::SafeCemPlus,
    ];

    /// Stable kebab-case name (used by the CLI and serial formats).
    pub fn name(self) -> &'static str {
        match self {
            PrincipleId::Identity => "identity",
            PrincipleId::SimpleMp => "simple-mp",
            PrincipleId::SimpleCs => "simple-cs",
            PrincipleId::SimpleMt => "simple-mt",
            PrincipleId::ModalizedMp => "modalized-mp",
            PrincipleId::ModalizedCs => "modalized-cs",
            PrincipleId::ModalizedMt => "modalized-mt",
            PrincipleId::MustIntro => "must-intro",
            PrincipleId::SimpleMustImport => "simple-must-import",
            PrincipleId::SafeMustExport => "safe-must-export",
            PrincipleId::MustPreservation => "must-preservation",
            PrincipleId::Flattening => "flattening",
            PrincipleId::WeakBoethius => "weak-boethius",
            PrincipleId::MustIfCombination => "must-if-combination",
            PrincipleId::SafeNegationImport => "safe-negation-import",
            PrincipleId::SafeCemPlus => "safe-cem-plus",
            PrincipleId::Distributivity => "distributivity",
            PrincipleId::Wittgenstein => "wittgenstein",
            PrincipleId::DisjunctiveSyllogism => "disjunctive-syllogism",
            PrincipleId::OrthomodularityRule => "orthomodularity",
            PrincipleId::QualifiedCollapse => "qualified-collapse",
            PrincipleId::IfToOr => "if-to-or",
            PrincipleId::ModalizedImportExport => "modalized-import-export",
        }
    }

    /// Look a principle up by its kebab-case name.
    pub fn from_name(name: &str) -> Option<PrincipleId> {
        PrincipleId::ALL.iter().copied().find(|p| p.name() == name)
    }

    /// Render the principle as a schema over metavariable atoms.
    pub fn schema(self) -> PrincipleSchema {
        let phi = || Formula::atom("phi");
        let psi = || Formula::atom("psi");
        let chi = || Formula::atom("chi");
        let b = || Formula::atom("b");
        let with_b = |schema: PrincipleSchema| PrincipleSchema {
            bool_vars: BTreeSet::from([String::from("b")]),
            ..schema
        };
        let plain = |id, conclusions: Vec<(Formula, Formula)>| PrincipleSchema {
            id,
            bool_vars: BTreeSet::new(),
            premises: Vec::new(),
            conclusions,
        };
        match self {
            PrincipleId::Identity => plain(self, alloc::vec![(chi(), Formula::imp(psi(), psi()))]),
            PrincipleId::SimpleMp => with_b(plain(
                self,
                alloc::vec![(Formula::and(Formula::imp(phi(), b()), phi()), b())],
            )),
            PrincipleId::SimpleCs => with_b(plain(
                self,
                alloc::vec![(Formula::and(phi(), b()), Formula::imp(phi(), b()))],
            )),
            PrincipleId::SimpleMt => with_b(plain(
                self,
                alloc::vec![(
                    Formula::and(Formula::imp(phi(), b()), Formula::neg(b())),
                    Formula::neg(phi()),
                )],
            )),
            PrincipleId::ModalizedMp => plain(
                self,
                alloc::vec![(
                    Formula::and(Formula::imp(phi(), psi()), Formula::boxed(phi())),
                    psi(),
                )],
            ),
            PrincipleId::ModalizedCs => plain(
                self,
                alloc::vec![(
                    Formula::and(Formula::boxed(phi()), psi()),
                    Formula::imp(phi(), psi()),
                )],
            ),
            PrincipleId::ModalizedMt => plain(
                self,
                alloc::vec![(
                    Formula::and(Formula::imp(phi(), psi()), Formula::neg(psi())),
                    Formula::neg(Formula::boxed(phi())),
                )],
            ),
            PrincipleId::MustIntro => PrincipleSchema {
                id: self,
                bool_vars: BTreeSet::new(),
                premises: alloc::vec![(phi(), psi())],
                conclusions: alloc::vec![(chi(), Formula::imp(phi(), Formula::boxed(psi())))],
            },
            PrincipleId::SimpleMustImport => with_b(plain(
                self,
                alloc::vec![(
                    Formula::boxed(Formula::imp(phi(), b())),
                    Formula::imp(phi(), Formula::boxed(b())),
                )],
            )),
            PrincipleId::SafeMustExport => with_b(plain(
                self,
                alloc::vec![(
                    Formula::imp(b(), Formula::boxed(psi())),
                    Formula::boxed(Formula::imp(b(), psi())),
                )],
            )),
            PrincipleId::MustPreservation => plain(
                self,
                alloc::vec![(
                    Formula::and(
                        Formula::diamond(Formula::and(phi(), psi())),
                        Formula::boxed(psi()),
                    ),
                    Formula::imp(phi(), Formula::boxed(psi())),
                )],
            ),
            PrincipleId::Flattening => {
                let folded = Formula::imp(Formula::and(phi(), psi()), chi());
                let lifted = Formula::imp(phi(), folded.clone());
                plain(self, alloc::vec![(lifted.clone(), folded.clone()), (folded, lifted)])
            }
            PrincipleId::WeakBoethius => plain(
                self,
                alloc::vec![(
                    Formula::and(Formula::diamond(phi()), Formula::imp(phi(), psi())),
                    Formula::neg(Formula::imp(phi(), Formula::neg(psi()))),
                )],
            ),
            PrincipleId::MustIfCombination => plain(
                self,
                alloc::vec![(
                    Formula::imp(phi(), psi()),
                    Formula::or(
                        Formula::neg(phi()),
                        Formula::and(Formula::boxed(phi()), Formula::imp(phi(), psi())),
                    ),
                )],
            ),
            PrincipleId::SafeNegationImport => with_b(plain(
                self,
                alloc::vec![(
                    Formula::neg(Formula::imp(b(), psi())),
                    Formula::imp(b(), Formula::neg(psi())),
                )],
            )),
            PrincipleId::SafeCemPlus => with_b(plain(
                self,
                alloc::vec![(
                    Formula::imp(b(), Formula::or(psi(), chi())),
                    Formula::or(Formula::imp(b(), psi()), Formula::imp(b(), chi())),
                )],
            )),
            PrincipleId::Distributivity => plain(
                self,
                alloc::vec![(
                    Formula::and(phi(), Formula::or(psi(), chi())),
                    Formula::or(Formula::and(phi(), psi()), Formula::and(phi(), chi())),
                )],
            ),
            PrincipleId::Wittgenstein => plain(
                self,
                alloc::vec![(
                    Formula::and(Formula::neg(phi()), Formula::diamond(phi())),
                    Formula::Bot,
                )],
            ),
            PrincipleId::DisjunctiveSyllogism => plain(
                self,
                alloc::vec![(
                    Formula::and(Formula::or(phi(), psi()), Formula::neg(phi())),
                    psi(),
                )],
            ),
            PrincipleId::OrthomodularityRule => PrincipleSchema {
                id: self,
                bool_vars: BTreeSet::new(),
                premises: alloc::vec![(phi(), psi())],
                conclusions: alloc::vec![(
                    psi(),
                    Formula::or(phi(), Formula::and(Formula::neg(phi()), psi())),
                )],
            },
            PrincipleId::QualifiedCollapse => plain(
                self,
                alloc::vec![(
                    Formula::and(
                        psi(),
                        Formula::imp(psi(), Formula::diamond(Formula::and(psi(), phi()))),
                    ),
                    Formula::imp(phi(), psi()),
                )],
            ),
            PrincipleId::IfToOr => plain(
                self,
                alloc::vec![(
                    Formula::imp(phi(), psi()),
                    Formula::or(Formula::neg(phi()), psi()),
                )],
            ),
            PrincipleId::ModalizedImportExport => {
                let guard = Formula::imp(phi(), Formula::diamond(Formula::and(phi(), psi())));
                let imported = Formula::and(guard.clone(), Formula::imp(phi(), Formula::imp(psi(), chi())));
                let exported =
                    Formula::and(guard, Formula::imp(Formula::and(phi(), psi()), chi()));
                plain(
                    self,
                    alloc::vec![(imported.clone(), exported.clone()), (exported, imported)],
                )
            }
        }
    }
}

/// A failed principle verification: the first instantiation whose
/// premises hold while a conclusion fails, with the witnessing
/// possibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipleWitness {
    /// Metavariable substitution, as set masks.
    pub substitution: BTreeMap<String, u64>,
    /// Index of the failing conclusion in the schema.
    pub conclusion: usize,
    /// Index of the witnessing possibility.
    pub possibility: usize,
}

/// Verify a principle on a frame by sweeping all instantiations of its
/// metavariables (general over the proposition family, Boolean over
/// the grounding family). Returns the first counterwitness, or `None`
/// when the principle holds.
pub fn verify_principle(
    frame: &CompatibilityFrame,
    principle: PrincipleId,
    cap: u64,
) -> Result<Option<PrincipleWitness>, SemanticsError> {
    let schema = principle.schema();
    let mut vars: BTreeSet<String> = BTreeSet::new();
    for (lhs, rhs) in schema.premises.iter().chain(&schema.conclusions) {
        vars.extend(lhs.atoms());
        vars.extend(rhs.atoms());
    }
    let vars: Vec<String> = vars.into_iter().collect();
    let props = frame.prop_family();
    let bools = match frame.bool_family() {
        Some(family) => family.to_vec(),
        None if !schema.bool_vars.is_empty() => return Err(SemanticsError::NoBoolFamily),
        None => Vec::new(),
    };
    let families: Vec<&[u64]> = vars
        .iter()
        .map(|v| if schema.bool_vars.contains(v) { bools.as_slice() } else { props.as_slice() })
        .collect();
    check_cap(&families, cap)?;
    let explicit = frame.explicit_prop_family();
    sweep(&families, |assignment| {
        let substitution: BTreeMap<String, u64> =
            vars.iter().cloned().zip(assignment.iter().copied()).collect();
        for (lhs, rhs) in &schema.premises {
            let l = eval_with(frame, &substitution, explicit, lhs)?;
            let r = eval_with(frame, &substitution, explicit, rhs)?;
            if l & !r != 0 {
                return Ok(None);
            }
        }
        for (index, (lhs, rhs)) in schema.conclusions.iter().enumerate() {
            let l = eval_with(frame, &substitution, explicit, lhs)?;
            let r = eval_with(frame, &substitution, explicit, rhs)?;
            let gap = l & !r;
            if gap != 0 {
                return Ok(Some(PrincipleWitness {
                    substitution,
                    conclusion: index,
                    possibility: gap.trailing_zeros() as usize,
                }));
            }
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn chain5() -> CompatibilityFrame {
        let names = (1..=5).map(|i| alloc::format!("x{i}")).collect();
        CompatibilityFrame::new(names, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap()
    }

    fn chain5_model(p: u64) -> PossibilityModel {
        let mut valuation = BTreeMap::new();
        valuation.insert("p".to_string(), p);
        PossibilityModel::new(chain5(), valuation, BTreeSet::new()).unwrap()
    }

    #[test]
    fn propositional_clauses_on_the_chain() {
        let m = chain5_model(0b00011);
        let p = Formula::parse("p").unwrap();
        let not_p = Formula::parse("~p").unwrap();
        let lem = Formula::parse("p \\/ ~p").unwrap();
        assert_eq!(m.extension(&p).unwrap(), 0b00011);
        assert_eq!(m.extension(&not_p).unwrap(), 0b11000);
        // x3 settles neither disjunct, yet the join is everything.
        assert_eq!(m.extension(&lem).unwrap(), 0b11111);
        assert!(m.forces(2, &lem).unwrap());
        assert!(!m.forces(2, &p).unwrap());
    }

    #[test]
    fn rejects_non_regular_valuation() {
        let mut valuation = BTreeMap::new();
        valuation.insert("p".to_string(), 0b00010u64);
        let err = PossibilityModel::new(chain5(), valuation, BTreeSet::new()).unwrap_err();
        assert!(matches!(err, SemanticsError::AtomNotRegular(_)));
    }

    #[test]
    fn box_requires_modal_structure() {
        let m = chain5_model(0b00011);
        let err = m.extension(&Formula::parse("[]p").unwrap()).unwrap_err();
        assert_eq!(err, SemanticsError::NoModal);
    }

    #[test]
    fn frame_entailment_and_first_witness() {
        let frame = chain5();
        let p = Formula::parse("p").unwrap();
        let not_not_p = Formula::parse("~~p").unwrap();
        assert!(entails_on_frame(&frame, &p, &not_not_p, &BTreeSet::new(), 1000)
            .unwrap()
            .is_none());
        // p together with the law of excluded middle for q does not give q.
        let lhs = Formula::parse("p & (q \\/ ~q)").unwrap();
        let rhs = Formula::parse("q").unwrap();
        let witness = entails_on_frame(&frame, &lhs, &rhs, &BTreeSet::new(), 1000)
            .unwrap()
            .unwrap();
        assert_eq!(witness.valuation.len(), 2);
    }

    #[test]
    fn cap_is_a_refusal_not_truncation() {
        let frame = chain5();
        let lhs = Formula::parse("p & q & r").unwrap();
        let rhs = Formula::parse("p").unwrap();
        let err = entails_on_frame(&frame, &lhs, &rhs, &BTreeSet::new(), 10).unwrap_err();
        assert!(matches!(err, SemanticsError::CapExceeded { .. }));
    }

    #[test]
    fn distributivity_fails_on_the_chain() {
        let frame = chain5();
        let witness = verify_principle(&frame, PrincipleId::Distributivity, 10_000)
            .unwrap()
            .unwrap();
        assert_eq!(witness.substitution.len(), 3);
    }

    #[test]
    fn orthomodularity_rule_fails_on_the_chain() {
        // {x1} ⊆ {x1, x2}, but {x1} ∨ (¬{x1} ∧ {x1, x2}) collapses back
        // to {x1}: the first witness in enumeration order.
        let frame = chain5();
        let witness = verify_principle(&frame, PrincipleId::OrthomodularityRule, 10_000)
            .unwrap()
            .unwrap();
        assert_eq!(witness.substitution[&"phi".to_string()], 0b00001);
        assert_eq!(witness.substitution[&"psi".to_string()], 0b00011);
        assert_eq!(witness.possibility, 1);
    }

    #[test]
    fn principle_names_round_trip() {
        for id in PrincipleId::ALL {
            assert_eq!(PrincipleId::from_name(id.name()), Some(id));
        }
    }

    #[test]
    fn product_valuation_is_cylindrical() {
        let mut va = BTreeMap::new();
        va.insert("p".to_string(), 0b00011u64);
        let a = PossibilityModel::new(chain5(), va, BTreeSet::new()).unwrap();
        let mut vb = BTreeMap::new();
        vb.insert("q".to_string(), 0b11000u64);
        let b = PossibilityModel::new(chain5(), vb, BTreeSet::new()).unwrap();
        let prod = product_model(&a, &b).unwrap();
        assert_eq!(prod.frame().len(), 25);
        let p = prod.extension(&Formula::parse("p").unwrap()).unwrap();
        // p holds exactly on the first two rows of the 5×5 grid.
        assert_eq!(p.count_ones(), 10);
        let q = prod.extension(&Formula::parse("q").unwrap()).unwrap();
        assert_eq!(q.count_ones(), 10);
        assert_eq!((p & q).count_ones(), 4);
        let vec_of = |f: &str| prod.extension(&Formula::parse(f).unwrap()).unwrap();
        assert!(prod.frame().is_regular(vec_of("p & q")));
        assert!(prod.frame().is_regular(vec_of("p \\/ q")));
    }
}
