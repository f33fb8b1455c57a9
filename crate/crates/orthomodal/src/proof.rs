//! Sequent-style proof machinery: consecutions, logic profiles,
//! derivation checking, bounded proof search by saturation, and
//! randomized semantic soundness checks of a profile's rules against a
//! frame.
//!
//! A [`Consecution`] is a single-premise, single-conclusion sequent
//! `lhs ⊢ rhs`, stored with `Or` and `Diamond` rewritten into their
//! definitions so that structural rule checks work on one canonical
//! shape. A [`Derivation`] is a list of consecutions, each justified
//! either as an instance of an axiom-shaped rule (verified by pattern
//! matching) or by earlier steps through a premise-taking rule.
//! [`LogicProfile`] selects the rule set: a [`LogicBase`], optional
//! introspection rules, an optional unrestricted distributivity rule,
//! and any principles assumed outright.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand_core::{RngCore, SeedableRng};

use crate::formula::Formula;
use crate::frame::CompatibilityFrame;
use crate::semantics::{eval_with, PrincipleId, SemanticsError};

/// A sequent `lhs ⊢ rhs`, stored in desugared form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Consecution {
    lhs: Formula,
    rhs: Formula,
}

impl Consecution {
    /// Build a consecution, rewriting `Or`/`Diamond` into definitions.
    pub fn new(lhs: Formula, rhs: Formula) -> Self {
        Consecution { lhs: lhs.desugar(), rhs: rhs.desugar() }
    }

    /// The premise formula.
    pub fn lhs(&self) -> &Formula {
        &self.lhs
    }

    /// The conclusion formula.
    pub fn rhs(&self) -> &Formula {
        &self.rhs
    }
}

impl fmt::Display for Consecution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.lhs, self.rhs)
    }
}

/// The base rule sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LogicBase {
    /// Reflexivity, conjunction, double negation, absurdity, cut,
    /// adjunction, and contraposition.
    O,
    /// `O` plus box monotonicity, box conjunction, box top, factivity,
    /// and modal consistency.
    EO,
    /// `EO` plus distributivity restricted to Boolean formulas.
    EOplus,
    /// `O` plus the box rules, Boolean distributivity, and the
    /// conditional rules (congruence, RK, and necessitation), without
    /// factivity or modal consistency.
    CondModal,
    /// `CondModal` plus factivity and modal consistency.
    CondEpistemic,
}

impl LogicBase {
    /// Stable name used by the CLI and serial formats.
    pub fn name(self) -> &'static str {
        match self {
            LogicBase::O => "O",
            LogicBase::EO => "EO",
            LogicBase::EOplus => "EO+",
            LogicBase::CondModal => "conditional-modal",
            LogicBase::CondEpistemic => "conditional-epistemic",
        }
    }

    /// Look a base up by name.
    pub fn from_name(name: &str) -> Option<LogicBase> {
        match name {
            "O" => Some(LogicBase::O),
            "EO" => Some(LogicBase::EO),
            "EO+" | "EOplus" => Some(LogicBase::EOplus),
            "conditional-modal" => Some(LogicBase::CondModal),
            "conditional-epistemic" => Some(LogicBase::CondEpistemic),
            _ => None,
        }
    }

    fn has_box(self) -> bool {
        !matches!(self, LogicBase::O)
    }

    fn has_factivity(self) -> bool {
        matches!(self, LogicBase::EO | LogicBase::EOplus | LogicBase::CondEpistemic)
    }

    fn has_bool_dist(self) -> bool {
        matches!(self, LogicBase::EOplus | LogicBase::CondModal | LogicBase::CondEpistemic)
    }

    fn has_conditional(self) -> bool {
        matches!(self, LogicBase::CondModal | LogicBase::CondEpistemic)
    }
}

/// A rule set: base, optional extras, assumed principles, and the
/// atoms treated as Boolean by side conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicProfile {
    /// The base rule set.
    pub base: LogicBase,
    /// Principles assumable directly as steps.
    pub principles: BTreeSet<PrincipleId>,
    /// Allow distributivity without the Boolean side condition.
    pub full_distributivity: bool,
    /// Allow `[]phi |- [][]phi`.
    pub four: bool,
    /// Allow `<>phi |- []<>phi`.
    pub five: bool,
    /// Atoms the Boolean side conditions accept.
    pub bool_atoms: BTreeSet<String>,
}

impl LogicProfile {
    /// A profile with just the base rules.
    pub fn new(base: LogicBase) -> Self {
        LogicProfile {
            base,
            principles: BTreeSet::new(),
            full_distributivity: false,
            four: false,
            five: false,
            bool_atoms: BTreeSet::new(),
        }
    }

    /// Add assumable principles.
    pub fn with_principles(mut self, principles: impl IntoIterator<Item = PrincipleId>) -> Self {
        self.principles.extend(principles);
        self
    }

    /// Allow unrestricted distributivity.
    pub fn with_full_distributivity(mut self) -> Self {
        self.full_distributivity = true;
        self
    }

    /// Allow the two introspection rules.
    pub fn with_introspection(mut self) -> Self {
        self.four = true;
        self.five = true;
        self
    }

    /// Declare atoms Boolean for side conditions.
    pub fn with_bool_atoms(mut self, atoms: impl IntoIterator<Item = String>) -> Self {
        self.bool_atoms.extend(atoms);
        self
    }
}

/// Identifiers for the individual rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    /// `phi |- phi`.
    Refl,
    /// `phi & psi |- phi`.
    AndElimLeft,
    /// `phi & psi |- psi`.
    AndElimRight,
    /// `phi |- ~~phi`.
    DniIntro,
    /// `~~phi |- phi`.
    DniElim,
    /// `phi & ~phi |- psi`.
    Absurd,
    /// From `phi |- psi` and `psi |- chi`, infer `phi |- chi`.
    Cut,
    /// From `phi |- psi` and `phi |- chi`, infer `phi |- psi & chi`.
    Adjunction,
    /// From `phi |- psi`, infer `~psi |- ~phi`.
    Contraposition,
    /// From `phi |- psi`, infer `[]phi |- []psi`.
    BoxMono,
    /// `[]phi & []psi |- [](phi & psi)`.
    BoxConj,
    /// `chi |- []top`.
    BoxTop,
    /// `[]phi |- phi`.
    Factivity,
    /// `~phi & <>phi |- bot`.
    ModalConsistency,
    /// `a & (b \/ c) |- (a & b) \/ (a & c)` for Boolean `a`, `b`, `c`.
    BoolDist,
    /// From `phi |- psi` and `psi |- phi`, infer
    /// `phi -> chi |- psi -> chi`.
    CongIf,
    /// From `psi_1 & ... & psi_n |- chi`, infer
    /// `(phi -> psi_1) & ... & (phi -> psi_n) |- phi -> chi`.
    RkIf,
    /// From `top |- psi`, infer `top |- phi -> psi`.
    NecIf,
    /// `bot |- phi`.
    BotElim,
    /// `phi |- top`.
    TopIntro,
    /// `[]phi |- [][]phi`.
    Four,
    /// `<>phi |- []<>phi`.
    Five,
    /// Distributivity without the Boolean side condition.
    FullDist,
}

impl RuleId {
    /// Stable kebab-case name.
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Refl => "refl",
            RuleId::AndElimLeft => "and-elim-left",
            RuleId::AndElimRight => "and-elim-right",
            RuleId::DniIntro => "dni-intro",
            RuleId::DniElim => "dni-elim",
            RuleId::Absurd => "absurd",
            RuleId::Cut => "cut",
            RuleId::Adjunction => "adjunction",
            RuleId::Contraposition => "contraposition",
            RuleId::BoxMono => "box-mono",
            RuleId::BoxConj => "box-conj",
            RuleId::BoxTop => "box-top",
            RuleId::Factivity => "factivity",
            RuleId::ModalConsistency => "modal-consistency",
            RuleId::BoolDist => "bool-dist",
            RuleId::CongIf => "cong-if",
            RuleId::RkIf => "rk-if",
            RuleId::NecIf => "nec-if",
            RuleId::BotElim => "bot-elim",
            RuleId::TopIntro => "top-intro",
            RuleId::Four => "four",
            RuleId::Five => "five",
            RuleId::FullDist => "full-dist",
        }
    }

    /// Whether a profile licenses the rule.
    pub fn available(self, profile: &LogicProfile) -> bool {
        let base = profile.base;
        match self {
            RuleId::Refl
            | RuleId::AndElimLeft
            | RuleId::AndElimRight
            | RuleId::DniIntro
            | RuleId::DniElim
            | RuleId::Absurd
            | RuleId::Cut
            | RuleId::Adjunction
            | RuleId::Contraposition
            | RuleId::BotElim
            | RuleId::TopIntro => true,
            RuleId::BoxMono | RuleId::BoxConj | RuleId::BoxTop => base.has_box(),
            RuleId::Factivity | RuleId::ModalConsistency => base.has_factivity(),
            RuleId::BoolDist => base.has_bool_dist(),
            RuleId::CongIf | RuleId::RkIf | RuleId::NecIf => base.has_conditional(),
            RuleId::Four => base.has_box() && profile.four,
            RuleId::Five => base.has_box() && profile.five,
            RuleId::FullDist => profile.full_distributivity,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a derivation step is licensed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// An instance of an axiom-shaped rule, verified by matching the
    /// step's consecution.
    Axiom {
        /// The rule claimed.
        rule: RuleId,
    },
    /// Cut of two earlier steps.
    Cut {
        /// Step proving `phi |- psi`.
        left: usize,
        /// Step proving `psi |- chi`.
        right: usize,
    },
    /// Adjunction of two earlier steps with a shared premise.
    Adjunction {
        /// Step proving `phi |- psi`.
        left: usize,
        /// Step proving `phi |- chi`.
        right: usize,
    },
    /// Contraposition of an earlier step.
    Contraposition {
        /// Step proving `phi |- psi`.
        premise: usize,
    },
    /// Box monotonicity over an earlier step.
    BoxMono {
        /// Step proving `phi |- psi`.
        premise: usize,
    },
    /// Congruence of conditional antecedents.
    CongIf {
        /// Step proving `phi |- psi`.
        forward: usize,
        /// Step proving `psi |- phi`.
        backward: usize,
    },
    /// The RK rule for the conditional.
    RkIf {
        /// Step proving `psi_1 & ... & psi_n |- chi`.
        premise: usize,
        /// The shared antecedent `phi`.
        antecedent: Formula,
        /// How many conjuncts `n` to split the premise into
        /// (left-associated).
        conjuncts: usize,
    },
    /// Necessitation for the conditional.
    NecIf {
        /// Step proving `top |- psi`.
        premise: usize,
        /// The antecedent `phi`.
        antecedent: Formula,
    },
    /// An instance of an assumed premise-free principle.
    Principle {
        /// The principle claimed.
        id: PrincipleId,
        /// Metavariable substitution.
        substitution: BTreeMap<String, Formula>,
        /// Which conclusion of the principle's schema is instantiated.
        conclusion: usize,
    },
    /// An application of an assumed rule-shaped principle.
    PrincipleRule {
        /// The principle claimed.
        id: PrincipleId,
        /// The step proving the principle's premise.
        premise: usize,
    },
}

/// A derivation: steps in order, each justified by its predecessors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Derivation {
    /// The steps, in order.
    pub steps: Vec<DerivationStep>,
}

/// One step of a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    /// The consecution this step claims.
    pub consecution: Consecution,
    /// Why the step is licensed.
    pub justification: Justification,
}

impl Derivation {
    /// The final consecution, if any.
    pub fn conclusion(&self) -> Option<&Consecution> {
        self.steps.last().map(|s| &s.consecution)
    }

    /// Append a step and return its index.
    pub fn push(&mut self, consecution: Consecution, justification: Justification) -> usize {
        self.steps.push(DerivationStep { consecution, justification });
        self.steps.len() - 1
    }
}

/// Why a derivation step was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofErrorReason {
    /// The rule is not licensed by the profile.
    Unavailable(RuleId),
    /// The principle is not among the profile's assumptions.
    UnavailablePrinciple(PrincipleId),
    /// A premise index is out of range (not strictly earlier).
    BadPremiseIndex(usize),
    /// The step's consecution does not have the shape the
    /// justification claims.
    Malformed(String),
}

/// A rejected derivation: the first bad step and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofError {
    /// Index of the offending step.
    pub step: usize,
    /// What went wrong.
    pub reason: ProofErrorReason,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: ", self.step)?;
        match &self.reason {
            ProofErrorReason::Unavailable(rule) => {
                write!(f, "rule {rule} is not licensed by the profile")
            }
            ProofErrorReason::UnavailablePrinciple(id) => {
                write!(f, "principle {} is not among the profile's assumptions", id.name())
            }
            ProofErrorReason::BadPremiseIndex(i) => write!(f, "premise index {i} is not earlier"),
            ProofErrorReason::Malformed(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for ProofError {}

fn bad(step: usize, msg: impl Into<String>) -> ProofError {
    ProofError { step, reason: ProofErrorReason::Malformed(msg.into()) }
}

/// Split a left-associated conjunction into exactly `n` conjuncts.
fn split_conjuncts(formula: &Formula, n: usize) -> Option<Vec<&Formula>> {
    if n == 0 {
        return None;
    }
    let mut parts = Vec::with_capacity(n);
    let mut rest = formula;
    for _ in 0..n - 1 {
        match rest {
            Formula::And(a, b) => {
                parts.push(b.as_ref());
                rest = a;
            }
            _ => return None,
        }
    }
    parts.push(rest);
    parts.reverse();
    Some(parts)
}

/// Rebuild a left-associated conjunction.
fn join_conjuncts(parts: &[Formula]) -> Formula {
    let mut iter = parts.iter().cloned();
    let first = iter.next().expect("at least one conjunct");
    iter.fold(first, |acc, part| acc.and(part))
}

/// Check whether `seq` is an instance of the axiom-shaped `rule`,
/// using `bool_atoms` for Boolean side conditions. Returns an error
/// message on mismatch.
fn match_axiom(
    rule: RuleId,
    seq: &Consecution,
    bool_atoms: &BTreeSet<String>,
) -> Result<(), String> {
    let lhs = seq.lhs();
    let rhs = seq.rhs();
    let fail = || Err(format!("consecution is not an instance of {rule}"));
    match rule {
        RuleId::Refl => {
            if lhs == rhs {
                Ok(())
            } else {
                fail()
            }
        }
        RuleId::AndElimLeft => match lhs {
            Formula::And(a, _) if a.as_ref() == rhs => Ok(()),
            _ => fail(),
        },
        RuleId::AndElimRight => match lhs {
            Formula::And(_, b) if b.as_ref() == rhs => Ok(()),
            _ => fail(),
        },
        RuleId::DniIntro => match rhs {
            Formula::Neg(inner) => match inner.as_ref() {
                Formula::Neg(core) if core.as_ref() == lhs => Ok(()),
                _ => fail(),
            },
            _ => fail(),
        },
        RuleId::DniElim => match lhs {
            Formula::Neg(inner) => match inner.as_ref() {
                Formula::Neg(core) if core.as_ref() == rhs => Ok(()),
                _ => fail(),
            },
            _ => fail(),
        },
        RuleId::Absurd => match lhs {
            Formula::And(a, b) if b.as_ref() == &a.as_ref().clone().neg() => Ok(()),
            _ => fail(),
        },
        RuleId::BoxConj => match (lhs, rhs) {
            (Formula::And(l, r), Formula::Box(inner)) => match (l.as_ref(), r.as_ref(), inner.as_ref()) {
                (Formula::Box(a), Formula::Box(b), Formula::And(x, y))
                    if a == x && b == y =>
                {
                    Ok(())
                }
                _ => fail(),
            },
            _ => fail(),
        },
        RuleId::BoxTop => match rhs {
            Formula::Box(inner) if matches!(inner.as_ref(), Formula::Top) => Ok(()),
            _ => fail(),
        },
        RuleId::Factivity => match lhs {
            Formula::Box(a) if a.as_ref() == rhs => Ok(()),
            _ => fail(),
        },
        RuleId::ModalConsistency => {
            // Desugared shape: ~phi & ~[]~phi |- bot.
            if !matches!(rhs, Formula::Bot) {
                return fail();
            }
            match lhs {
                Formula::And(l, r) => match (l.as_ref(), r.as_ref()) {
                    (Formula::Neg(phi), Formula::Neg(maybe_box)) => match maybe_box.as_ref() {
                        Formula::Box(neg_phi)
                            if neg_phi.as_ref() == &phi.as_ref().clone().neg() =>
                        {
                            Ok(())
                        }
                        _ => fail(),
                    },
                    _ => fail(),
                },
                _ => fail(),
            }
        }
        RuleId::BoolDist | RuleId::FullDist => {
            // Desugared shape:
            //   a & ~(~b & ~c) |- ~(~(a & b) & ~(a & c)).
            let (a, b, c) = match lhs {
                Formula::And(a, disj) => match disj.as_ref() {
                    Formula::Neg(inner) => match inner.as_ref() {
                        Formula::And(nb, nc) => match (nb.as_ref(), nc.as_ref()) {
                            (Formula::Neg(b), Formula::Neg(c)) => {
                                (a.as_ref(), b.as_ref(), c.as_ref())
                            }
                            _ => return fail(),
                        },
                        _ => return fail(),
                    },
                    _ => return fail(),
                },
                _ => return fail(),
            };
            let expected = a
                .clone()
                .and(b.clone())
                .neg()
                .and(a.clone().and(c.clone()).neg())
                .neg();
            if rhs != &expected {
                return fail();
            }
            if rule == RuleId::BoolDist {
                for (name, part) in [("first", a), ("second", b), ("third", c)] {
                    if !part.is_boolean(bool_atoms) {
                        return Err(format!(
                            "{name} distributivity component {part} is not Boolean"
                        ));
                    }
                }
            }
            Ok(())
        }
        RuleId::Four => match (lhs, rhs) {
            (Formula::Box(_), Formula::Box(outer)) if outer.as_ref() == lhs => Ok(()),
            _ => fail(),
        },
        RuleId::Five => {
            // Desugared shape: ~[]~phi |- []~[]~phi.
            let is_diamond = |f: &Formula| match f {
                Formula::Neg(inner) => match inner.as_ref() {
                    Formula::Box(arg) => matches!(arg.as_ref(), Formula::Neg(_)),
                    _ => false,
                },
                _ => false,
            };
            match rhs {
                Formula::Box(inner) if inner.as_ref() == lhs && is_diamond(lhs) => Ok(()),
                _ => fail(),
            }
        }
        RuleId::BotElim => {
            if matches!(lhs, Formula::Bot) {
                Ok(())
            } else {
                fail()
            }
        }
        RuleId::TopIntro => {
            if matches!(rhs, Formula::Top) {
                Ok(())
            } else {
                fail()
            }
        }
        RuleId::Cut
        | RuleId::Adjunction
        | RuleId::Contraposition
        | RuleId::BoxMono
        | RuleId::CongIf
        | RuleId::RkIf
        | RuleId::NecIf => Err(format!("rule {rule} takes premises and is not axiom-shaped")),
    }
}

/// Check every step of a derivation against a profile; on failure
/// report the first bad step.
pub fn check_derivation(derivation: &Derivation, profile: &LogicProfile) -> Result<(), ProofError> {
    for (index, step) in derivation.steps.iter().enumerate() {
        check_step(derivation, index, step, profile)?;
    }
    Ok(())
}

fn check_step(
    derivation: &Derivation,
    index: usize,
    step: &DerivationStep,
    profile: &LogicProfile,
) -> Result<(), ProofError> {
    let earlier = |i: usize| -> Result<&Consecution, ProofError> {
        if i < index {
            Ok(&derivation.steps[i].consecution)
        } else {
            Err(ProofError { step: index, reason: ProofErrorReason::BadPremiseIndex(i) })
        }
    };
    let require = |rule: RuleId| -> Result<(), ProofError> {
        if rule.available(profile) {
            Ok(())
        } else {
            Err(ProofError { step: index, reason: ProofErrorReason::Unavailable(rule) })
        }
    };
    let seq = &step.consecution;
    match &step.justification {
        Justification::Axiom { rule } => {
            require(*rule)?;
            match_axiom(*rule, seq, &profile.bool_atoms).map_err(|msg| bad(index, msg))
        }
        Justification::Cut { left, right } => {
            require(RuleId::Cut)?;
            let l = earlier(*left)?;
            let r = earlier(*right)?;
            if l.rhs() != r.lhs() {
                return Err(bad(index, "cut premises do not chain"));
            }
            if seq.lhs() != l.lhs() || seq.rhs() != r.rhs() {
                return Err(bad(index, "cut conclusion does not match premises"));
            }
            Ok(())
        }
        Justification::Adjunction { left, right } => {
            require(RuleId::Adjunction)?;
            let l = earlier(*left)?;
            let r = earlier(*right)?;
            if l.lhs() != r.lhs() {
                return Err(bad(index, "adjunction premises have different antecedents"));
            }
            let expected = l.rhs().clone().and(r.rhs().clone());
            if seq.lhs() != l.lhs() || seq.rhs() != &expected {
                return Err(bad(index, "adjunction conclusion does not match premises"));
            }
            Ok(())
        }
        Justification::Contraposition { premise } => {
            require(RuleId::Contraposition)?;
            let p = earlier(*premise)?;
            let expected_lhs = p.rhs().clone().neg();
            let expected_rhs = p.lhs().clone().neg();
            if seq.lhs() != &expected_lhs || seq.rhs() != &expected_rhs {
                return Err(bad(index, "contraposition conclusion does not match premise"));
            }
            Ok(())
        }
        Justification::BoxMono { premise } => {
            require(RuleId::BoxMono)?;
            let p = earlier(*premise)?;
            let expected_lhs = p.lhs().clone().boxed();
            let expected_rhs = p.rhs().clone().boxed();
            if seq.lhs() != &expected_lhs || seq.rhs() != &expected_rhs {
                return Err(bad(index, "box monotonicity conclusion does not match premise"));
            }
            Ok(())
        }
        Justification::CongIf { forward, backward } => {
            require(RuleId::CongIf)?;
            let f = earlier(*forward)?;
            let b = earlier(*backward)?;
            if f.lhs() != b.rhs() || f.rhs() != b.lhs() {
                return Err(bad(index, "congruence premises are not mutual"));
            }
            match (seq.lhs(), seq.rhs()) {
                (Formula::Imp(a, c1), Formula::Imp(b2, c2)) => {
                    if a.as_ref() == f.lhs() && b2.as_ref() == f.rhs() && c1 == c2 {
                        Ok(())
                    } else {
                        Err(bad(index, "congruence conclusion does not match premises"))
                    }
                }
                _ => Err(bad(index, "congruence conclusion is not a pair of conditionals")),
            }
        }
        Justification::RkIf { premise, antecedent, conjuncts } => {
            require(RuleId::RkIf)?;
            let p = earlier(*premise)?;
            let parts = split_conjuncts(p.lhs(), *conjuncts)
                .ok_or_else(|| bad(index, "premise does not split into the claimed conjuncts"))?;
            let ant = antecedent.desugar();
            let wrapped: Vec<Formula> = parts
                .iter()
                .map(|part| ant.clone().imp((*part).clone()))
                .collect();
            let expected_lhs = join_conjuncts(&wrapped);
            let expected_rhs = ant.imp(p.rhs().clone());
            if seq.lhs() != &expected_lhs || seq.rhs() != &expected_rhs {
                return Err(bad(index, "RK conclusion does not match premise"));
            }
            Ok(())
        }
        Justification::NecIf { premise, antecedent } => {
            require(RuleId::NecIf)?;
            let p = earlier(*premise)?;
            if !matches!(p.lhs(), Formula::Top) {
                return Err(bad(index, "necessitation premise must start from top"));
            }
            let expected = antecedent.desugar().imp(p.rhs().clone());
            if !matches!(seq.lhs(), Formula::Top) || seq.rhs() != &expected {
                return Err(bad(index, "necessitation conclusion does not match premise"));
            }
            Ok(())
        }
        Justification::Principle { id, substitution, conclusion } => {
            if !profile.principles.contains(id) {
                return Err(ProofError {
                    step: index,
                    reason: ProofErrorReason::UnavailablePrinciple(*id),
                });
            }
            let schema = id.schema();
            if !schema.premises.is_empty() {
                return Err(bad(
                    index,
                    format!("principle {} takes premises; use a rule application", id.name()),
                ));
            }
            let (lhs_pat, rhs_pat) = schema
                .conclusions
                .get(*conclusion)
                .ok_or_else(|| bad(index, "principle conclusion index out of range"))?;
            for var in &schema.bool_vars {
                match substitution.get(var) {
                    Some(f) if f.is_boolean(&profile.bool_atoms) => {}
                    Some(f) => {
                        return Err(bad(
                            index,
                            format!("substitution {f} for {var} is not Boolean"),
                        ))
                    }
                    None => return Err(bad(index, format!("metavariable {var} unassigned"))),
                }
            }
            let expected_lhs = lhs_pat.substitute(substitution).desugar();
            let expected_rhs = rhs_pat.substitute(substitution).desugar();
            if seq.lhs() != &expected_lhs || seq.rhs() != &expected_rhs {
                return Err(bad(index, "consecution is not the claimed principle instance"));
            }
            Ok(())
        }
        Justification::PrincipleRule { id, premise } => {
            if !profile.principles.contains(id) {
                return Err(ProofError {
                    step: index,
                    reason: ProofErrorReason::UnavailablePrinciple(*id),
                });
            }
            let p = earlier(*premise)?;
            match id {
                PrincipleId::MustIntro => match seq.rhs() {
                    Formula::Imp(a, boxed) => match boxed.as_ref() {
                        Formula::Box(b)
                            if a.as_ref() == p.lhs() && b.as_ref() == p.rhs() =>
                        {
                            Ok(())
                        }
                        _ => Err(bad(index, "conclusion does not match the premise")),
                    },
                    _ => Err(bad(index, "conclusion must be a conditional with boxed consequent")),
                },
                PrincipleId::OrthomodularityRule => {
                    let a = p.lhs().clone();
                    let b = p.rhs().clone();
                    let expected = a.clone().or(a.neg().and(b.clone())).desugar();
                    if seq.lhs() == &b && seq.rhs() == &expected {
                        Ok(())
                    } else {
                        Err(bad(index, "conclusion does not match the premise"))
                    }
                }
                _ => Err(bad(
                    index,
                    format!("principle {} is not rule-shaped", id.name()),
                )),
            }
        }
    }
}

/// Budgets for [`saturate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest conjunction the RK rule will split.
    pub rk_arity: usize,
    /// Abort once this many consecutions are derived.
    pub max_pairs: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { rk_arity: 4, max_pairs: 200_000 }
    }
}

/// Outcome of bounded proof search.
#[derive(Debug, Clone)]
pub enum SaturationResult {
    /// A derivation of the goal; it passes [`check_derivation`].
    Proved(Derivation),
    /// No proof within the formula universe and budget. This is not a
    /// refutation.
    Unknown {
        /// How many consecutions the search derived.
        derived: usize,
    },
}

impl SaturationResult {
    /// The derivation, if the goal was proved.
    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            SaturationResult::Proved(d) => Some(d),
            SaturationResult::Unknown { .. } => None,
        }
    }
}

/// How a derived consecution was obtained (premises are keyed by
/// formula-index pairs).
#[derive(Clone)]
enum Prov {
    Axiom(RuleId),
    Cut((usize, usize), (usize, usize)),
    Adjunction((usize, usize), (usize, usize)),
    Contraposition((usize, usize)),
    BoxMono((usize, usize)),
    CongIf((usize, usize), (usize, usize)),
    RkIf { premise: (usize, usize), antecedent: usize, conjuncts: usize },
    NecIf { premise: (usize, usize), antecedent: usize },
    MustIntro((usize, usize)),
    OmRule((usize, usize)),
    Principle { id: PrincipleId, substitution: Vec<(String, usize)>, conclusion: usize },
}

struct Saturator<'a> {
    profile: &'a LogicProfile,
    universe: Vec<Formula>,
    index: BTreeMap<Formula, usize>,
    derived: BTreeMap<(usize, usize), Prov>,
    limits: SearchLimits,
}

impl<'a> Saturator<'a> {
    fn new(profile: &'a LogicProfile, goal: &Consecution, extras: &[Formula], limits: SearchLimits) -> Self {
        let mut universe = Vec::new();
        let mut index = BTreeMap::new();
        let mut add_closure = |f: &Formula| {
            for sub in f.desugar().subformula_closure() {
                if !index.contains_key(&sub) {
                    index.insert(sub.clone(), universe.len());
                    universe.push(sub);
                }
            }
        };
        add_closure(goal.lhs());
        add_closure(goal.rhs());
        for extra in extras {
            add_closure(extra);
        }
        add_closure(&Formula::Bot);
        add_closure(&Formula::Top);
        Saturator { profile, universe, index, derived: BTreeMap::new(), limits }
    }

    fn lookup(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    fn add(&mut self, key: (usize, usize), prov: Prov) -> bool {
        if let alloc::collections::btree_map::Entry::Vacant(slot) = self.derived.entry(key) {
            slot.insert(prov);
            true
        } else {
            false
        }
    }

    fn enabled(&self, rule: RuleId) -> bool {
        rule.available(self.profile)
    }

    /// Seed all premise-free instances over the universe.
    fn seed(&mut self) {
        let n = self.universe.len();
        let bot = self.lookup(&Formula::Bot);
        let top = self.lookup(&Formula::Top);
        for u in 0..n {
            if self.enabled(RuleId::Refl) {
                self.add((u, u), Prov::Axiom(RuleId::Refl));
            }
            if let Some(b) = bot {
                self.add((b, u), Prov::Axiom(RuleId::BotElim));
            }
            if let Some(t) = top {
                self.add((u, t), Prov::Axiom(RuleId::TopIntro));
            }
            let formula = self.universe[u].clone();
            match &formula {
                Formula::And(a, b) => {
                    let (ai, bi) = (self.lookup(a), self.lookup(b));
                    if let Some(ai) = ai {
                        self.add((u, ai), Prov::Axiom(RuleId::AndElimLeft));
                    }
                    if let Some(bi) = bi {
                        self.add((u, bi), Prov::Axiom(RuleId::AndElimRight));
                    }
                    // phi & ~phi |- psi.
                    if b.as_ref() == &a.as_ref().clone().neg() {
                        for v in 0..n {
                            self.add((u, v), Prov::Axiom(RuleId::Absurd));
                        }
                    }
                    self.seed_box_conj(u, a, b);
                    self.seed_dist(u, a, b);
                }
                Formula::Neg(inner) => {
                    if let Formula::Neg(core) = inner.as_ref() {
                        if let Some(ci) = self.lookup(core) {
                            self.add((u, ci), Prov::Axiom(RuleId::DniElim));
                            self.add((ci, u), Prov::Axiom(RuleId::DniIntro));
                        }
                    }
                    self.seed_five(u, &formula);
                }
                Formula::Box(a) => {
                    if matches!(a.as_ref(), Formula::Top) && self.enabled(RuleId::BoxTop) {
                        for v in 0..n {
                            self.add((v, u), Prov::Axiom(RuleId::BoxTop));
                        }
                    }
                    if self.enabled(RuleId::Factivity) {
                        if let Some(ai) = self.lookup(a) {
                            self.add((u, ai), Prov::Axiom(RuleId::Factivity));
                        }
                    }
                    if self.enabled(RuleId::Four) {
                        if let Some(bb) = self.lookup(&formula.clone().boxed()) {
                            self.add((u, bb), Prov::Axiom(RuleId::Four));
                        }
                    }
                }
                _ => {}
            }
            self.seed_modal_consistency(u, &formula);
        }
        self.seed_principles();
    }

    fn seed_box_conj(&mut self, u: usize, a: &Formula, b: &Formula) {
        if !self.enabled(RuleId::BoxConj) {
            return;
        }
        if let (Formula::Box(x), Formula::Box(y)) = (a, b) {
            let target = x.as_ref().clone().and(y.as_ref().clone()).boxed();
            if let Some(t) = self.lookup(&target) {
                self.add((u, t), Prov::Axiom(RuleId::BoxConj));
            }
        }
    }

    /// Distributivity instances: lhs `a & ~(~b & ~c)`.
    fn seed_dist(&mut self, u: usize, a: &Formula, disj: &Formula) {
        let full = self.enabled(RuleId::FullDist);
        let restricted = self.enabled(RuleId::BoolDist);
        if !full && !restricted {
            return;
        }
        let (b, c) = match disj {
            Formula::Neg(inner) => match inner.as_ref() {
                Formula::And(nb, nc) => match (nb.as_ref(), nc.as_ref()) {
                    (Formula::Neg(b), Formula::Neg(c)) => (b.as_ref(), c.as_ref()),
                    _ => return,
                },
                _ => return,
            },
            _ => return,
        };
        let target = a
            .clone()
            .and(b.clone())
            .neg()
            .and(a.clone().and(c.clone()).neg())
            .neg();
        let Some(t) = self.lookup(&target) else { return };
        if full {
            self.add((u, t), Prov::Axiom(RuleId::FullDist));
        } else {
            let atoms = &self.profile.bool_atoms;
            if a.is_boolean(atoms) && b.is_boolean(atoms) && c.is_boolean(atoms) {
                self.add((u, t), Prov::Axiom(RuleId::BoolDist));
            }
        }
    }

    /// Introspection for possibility: lhs `~[]~phi`.
    fn seed_five(&mut self, u: usize, formula: &Formula) {
        if !self.enabled(RuleId::Five) {
            return;
        }
        let is_diamond = match formula {
            Formula::Neg(inner) => match inner.as_ref() {
                Formula::Box(arg) => matches!(arg.as_ref(), Formula::Neg(_)),
                _ => false,
            },
            _ => false,
        };
        if is_diamond {
            if let Some(t) = self.lookup(&formula.clone().boxed()) {
                self.add((u, t), Prov::Axiom(RuleId::Five));
            }
        }
    }

    /// Consistency of possibility: lhs `~phi & ~[]~phi`.
    fn seed_modal_consistency(&mut self, u: usize, formula: &Formula) {
        if !self.enabled(RuleId::ModalConsistency) {
            return;
        }
        let matches_shape = match formula {
            Formula::And(l, r) => match (l.as_ref(), r.as_ref()) {
                (Formula::Neg(phi), Formula::Neg(maybe_box)) => match maybe_box.as_ref() {
                    Formula::Box(neg_phi) => neg_phi.as_ref() == &phi.as_ref().clone().neg(),
                    _ => false,
                },
                _ => false,
            },
            _ => false,
        };
        if matches_shape {
            if let Some(b) = self.lookup(&Formula::Bot) {
                self.add((u, b), Prov::Axiom(RuleId::ModalConsistency));
            }
        }
    }

    /// Instances of assumed premise-free principles whose conclusion
    /// lands inside the universe.
    fn seed_principles(&mut self) {
        let principles: Vec<PrincipleId> = self.profile.principles.iter().copied().collect();
        for id in principles {
            let schema = id.schema();
            if !schema.premises.is_empty() {
                continue;
            }
            let mut vars: BTreeSet<String> = BTreeSet::new();
            for (l, r) in &schema.conclusions {
                vars.extend(l.atoms());
                vars.extend(r.atoms());
            }
            let vars: Vec<String> = vars.into_iter().collect();
            let n = self.universe.len();
            let mut assignment = alloc::vec![0usize; vars.len()];
            'outer: loop {
                let subst: BTreeMap<String, Formula> = vars
                    .iter()
                    .cloned()
                    .zip(assignment.iter().map(|&i| self.universe[i].clone()))
                    .collect();
                let boolean_ok = schema
                    .bool_vars
                    .iter()
                    .all(|v| subst[v].is_boolean(&self.profile.bool_atoms));
                if boolean_ok {
                    for (k, (l, r)) in schema.conclusions.iter().enumerate() {
                        let li = self.lookup(&l.substitute(&subst).desugar());
                        let ri = self.lookup(&r.substitute(&subst).desugar());
                        if let (Some(li), Some(ri)) = (li, ri) {
                            let substitution: Vec<(String, usize)> = vars
                                .iter()
                                .cloned()
                                .zip(assignment.iter().copied())
                                .collect();
                            self.add(
                                (li, ri),
                                Prov::Principle { id, substitution, conclusion: k },
                            );
                        }
                    }
                }
                // Advance the odometer.
                for pos in (0..assignment.len()).rev() {
                    assignment[pos] += 1;
                    if assignment[pos] < n {
                        continue 'outer;
                    }
                    assignment[pos] = 0;
                }
                break;
            }
        }
    }

    /// One round of premise-taking rules; returns whether anything new
    /// was derived.
    fn round(&mut self) -> bool {
        let before = self.derived.len();
        let pairs: Vec<(usize, usize)> = self.derived.keys().copied().collect();
        let n = self.universe.len();
        // Successor lists for cut: rights[b] = all c with b |- c.
        let mut rights: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        for &(l, r) in &pairs {
            rights[l].push(r);
        }
        let neg_of: Vec<Option<usize>> =
            (0..n).map(|u| self.lookup(&self.universe[u].clone().neg())).collect();
        let box_of: Vec<Option<usize>> =
            (0..n).map(|u| self.lookup(&self.universe[u].clone().boxed())).collect();
        // All conditionals in the universe, as (antecedent, consequent,
        // whole).
        let imps: Vec<(usize, usize, usize)> = (0..n)
            .filter_map(|u| match &self.universe[u] {
                Formula::Imp(a, b) => {
                    let ai = self.lookup(a)?;
                    let bi = self.lookup(b)?;
                    Some((ai, bi, u))
                }
                _ => None,
            })
            .collect();
        let mut imp_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &(a, b, u) in &imps {
            imp_index.insert((a, b), u);
        }
        let antecedents: BTreeSet<usize> = imps.iter().map(|&(a, _, _)| a).collect();

        for &(a, b) in &pairs {
            // Cut with everything derivable from b.
            for c in rights[b].clone() {
                self.add((a, c), Prov::Cut((a, b), (b, c)));
            }
            // Adjunction with siblings sharing the antecedent.
            for c in rights[a].clone() {
                let target = self.universe[b].clone().and(self.universe[c].clone());
                if let Some(t) = self.lookup(&target) {
                    self.add((a, t), Prov::Adjunction((a, b), (a, c)));
                }
            }
            if self.enabled(RuleId::Contraposition) {
                if let (Some(nb), Some(na)) = (neg_of[b], neg_of[a]) {
                    self.add((nb, na), Prov::Contraposition((a, b)));
                }
            }
            if self.enabled(RuleId::BoxMono) {
                if let (Some(ba), Some(bb)) = (box_of[a], box_of[b]) {
                    self.add((ba, bb), Prov::BoxMono((a, b)));
                }
            }
            if self.profile.principles.contains(&PrincipleId::MustIntro) {
                if let Some(bb) = box_of[b] {
                    if let Some(&t) = imp_index.get(&(a, bb)) {
                        for chi in 0..n {
                            self.add((chi, t), Prov::MustIntro((a, b)));
                        }
                    }
                }
            }
            if self.profile.principles.contains(&PrincipleId::OrthomodularityRule) {
                let target = self.universe[a]
                    .clone()
                    .or(self.universe[a].clone().neg().and(self.universe[b].clone()))
                    .desugar();
                if let Some(t) = self.lookup(&target) {
                    self.add((b, t), Prov::OmRule((a, b)));
                }
            }
            if self.enabled(RuleId::NecIf) && matches!(self.universe[a], Formula::Top) {
                for &ant in &antecedents {
                    if let Some(&t) = imp_index.get(&(ant, b)) {
                        self.add((a, t), Prov::NecIf { premise: (a, b), antecedent: ant });
                    }
                }
            }
            if self.enabled(RuleId::RkIf) {
                self.rk_from(a, b, &imp_index, &antecedents);
            }
            if self.derived.len() > self.limits.max_pairs {
                return false;
            }
        }
        if self.enabled(RuleId::CongIf) {
            let keys: BTreeSet<(usize, usize)> = self.derived.keys().copied().collect();
            for &(a, b, u1) in &imps {
                for &(a2, b2, u2) in &imps {
                    if b2 == b && a2 != a && keys.contains(&(a, a2)) && keys.contains(&(a2, a)) {
                        self.add((u1, u2), Prov::CongIf((a, a2), (a2, a)));
                    }
                }
            }
        }
        self.derived.len() > before
    }

    /// RK applications with premise `a |- b`: split `a` into conjuncts
    /// and look for a shared antecedent whose conditionals all exist.
    fn rk_from(
        &mut self,
        a: usize,
        b: usize,
        imp_index: &BTreeMap<(usize, usize), usize>,
        antecedents: &BTreeSet<usize>,
    ) {
        let premise_lhs = self.universe[a].clone();
        for arity in 1..=self.limits.rk_arity {
            let Some(parts) = split_conjuncts(&premise_lhs, arity) else { continue };
            let part_indices: Option<Vec<usize>> =
                parts.iter().map(|p| self.lookup(p)).collect();
            let Some(part_indices) = part_indices else { continue };
            for &ant in antecedents {
                let wrapped: Option<Vec<usize>> = part_indices
                    .iter()
                    .map(|&p| imp_index.get(&(ant, p)).copied())
                    .collect();
                let Some(wrapped) = wrapped else { continue };
                let Some(&target_rhs) = imp_index.get(&(ant, b)) else { continue };
                let chain: Vec<Formula> =
                    wrapped.iter().map(|&w| self.universe[w].clone()).collect();
                let Some(chain_idx) = self.lookup(&join_conjuncts(&chain)) else { continue };
                self.add(
                    (chain_idx, target_rhs),
                    Prov::RkIf { premise: (a, b), antecedent: ant, conjuncts: arity },
                );
            }
        }
    }

    /// Rebuild a checkable derivation for a derived consecution.
    fn emit(
        &self,
        key: (usize, usize),
        memo: &mut BTreeMap<(usize, usize), usize>,
        out: &mut Derivation,
    ) -> usize {
        if let Some(&step) = memo.get(&key) {
            return step;
        }
        let prov = self.derived[&key].clone();
        let seq = Consecution::new(self.universe[key.0].clone(), self.universe[key.1].clone());
        let justification = match prov {
            Prov::Axiom(rule) => Justification::Axiom { rule },
            Prov::Cut(l, r) => Justification::Cut {
                left: self.emit(l, memo, out),
                right: self.emit(r, memo, out),
            },
            Prov::Adjunction(l, r) => Justification::Adjunction {
                left: self.emit(l, memo, out),
                right: self.emit(r, memo, out),
            },
            Prov::Contraposition(p) => {
                Justification::Contraposition { premise: self.emit(p, memo, out) }
            }
            Prov::BoxMono(p) => Justification::BoxMono { premise: self.emit(p, memo, out) },
            Prov::CongIf(f, b) => Justification::CongIf {
                forward: self.emit(f, memo, out),
                backward: self.emit(b, memo, out),
            },
            Prov::RkIf { premise, antecedent, conjuncts } => Justification::RkIf {
                premise: self.emit(premise, memo, out),
                antecedent: self.universe[antecedent].clone(),
                conjuncts,
            },
            Prov::NecIf { premise, antecedent } => Justification::NecIf {
                premise: self.emit(premise, memo, out),
                antecedent: self.universe[antecedent].clone(),
            },
            Prov::MustIntro(p) => Justification::PrincipleRule {
                id: PrincipleId::MustIntro,
                premise: self.emit(p, memo, out),
            },
            Prov::OmRule(p) => Justification::PrincipleRule {
                id: PrincipleId::OrthomodularityRule,
                premise: self.emit(p, memo, out),
            },
            Prov::Principle { id, substitution, conclusion } => Justification::Principle {
                id,
                substitution: substitution
                    .into_iter()
                    .map(|(v, i)| (v, self.universe[i].clone()))
                    .collect(),
                conclusion,
            },
        };
        let step = out.push(seq, justification);
        memo.insert(key, step);
        step
    }
}

/// Bounded proof search: saturate the consecutions derivable inside
/// the subformula universe of the goal and `extras`, and reconstruct a
/// derivation if the goal appears. `Unknown` is not a refutation.
pub fn saturate(
    profile: &LogicProfile,
    goal: &Consecution,
    extras: &[Formula],
    limits: SearchLimits,
) -> SaturationResult {
    let mut sat = Saturator::new(profile, goal, extras, limits);
    let goal_key = (
        sat.lookup(goal.lhs()).expect("goal lhs is in its own closure"),
        sat.lookup(goal.rhs()).expect("goal rhs is in its own closure"),
    );
    sat.seed();
    loop {
        if sat.derived.contains_key(&goal_key) {
            let mut out = Derivation::default();
            let mut memo = BTreeMap::new();
            sat.emit(goal_key, &mut memo, &mut out);
            return SaturationResult::Proved(out);
        }
        if sat.derived.len() > sat.limits.max_pairs || !sat.round() {
            return SaturationResult::Unknown { derived: sat.derived.len() };
        }
    }
}

/// A semantic counterexample to a rule found by sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessViolation {
    /// Name of the offending rule or principle.
    pub rule: String,
    /// Metavariable substitution, by set name.
    pub substitution: BTreeMap<String, String>,
    /// Name of the possibility where the conclusion fails.
    pub possibility: String,
}

/// Outcome of sampling a profile's rules against a frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessReport {
    /// Instantiations attempted per rule.
    pub samples: usize,
    /// Rules whose instances were checked.
    pub checked: Vec<String>,
    /// Rules skipped because the frame lacks the needed structure.
    pub skipped: Vec<String>,
    /// Counterexamples found, in discovery order.
    pub violations: Vec<SoundnessViolation>,
}

impl SoundnessReport {
    /// True when sampling found no counterexample.
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A rule rendered as premise/conclusion patterns for semantic
/// checking.
struct RuleShape {
    name: String,
    bool_vars: BTreeSet<String>,
    premises: Vec<(Formula, Formula)>,
    conclusions: Vec<(Formula, Formula)>,
}

fn push_shape(
    shapes: &mut Vec<RuleShape>,
    profile: &LogicProfile,
    rule: RuleId,
    bool_vars: &[&str],
    premises: Vec<(Formula, Formula)>,
    conclusions: Vec<(Formula, Formula)>,
) {
    if rule.available(profile) {
        shapes.push(RuleShape {
            name: rule.name().to_string(),
            bool_vars: bool_vars.iter().map(|s| s.to_string()).collect(),
            premises,
            conclusions,
        });
    }
}

fn rule_shapes(profile: &LogicProfile) -> Vec<RuleShape> {
    let phi = || Formula::atom("phi");
    let psi = || Formula::atom("psi");
    let chi = || Formula::atom("chi");
    let mut shapes = Vec::new();
    macro_rules! push {
        ($rule:expr, $bool_vars:expr, $premises:expr, $conclusions:expr $(,)?) => {
            push_shape(&mut shapes, profile, $rule, $bool_vars, $premises, $conclusions)
        };
    }
    push!(RuleId::Refl, &[], alloc::vec![], alloc::vec![(phi(), phi())]);
    push!(
        RuleId::AndElimLeft,
        &[],
        alloc::vec![],
        alloc::vec![(phi().and(psi()), phi())],
    );
    push!(
        RuleId::AndElimRight,
        &[],
        alloc::vec![],
        alloc::vec![(phi().and(psi()), psi())],
    );
    push!(RuleId::DniIntro, &[], alloc::vec![], alloc::vec![(phi(), phi().neg().neg())]);
    push!(RuleId::DniElim, &[], alloc::vec![], alloc::vec![(phi().neg().neg(), phi())]);
    push!(
        RuleId::Absurd,
        &[],
        alloc::vec![],
        alloc::vec![(phi().and(phi().neg()), psi())],
    );
    push!(
        RuleId::Cut,
        &[],
        alloc::vec![(phi(), psi()), (psi(), chi())],
        alloc::vec![(phi(), chi())],
    );
    push!(
        RuleId::Adjunction,
        &[],
        alloc::vec![(phi(), psi()), (phi(), chi())],
        alloc::vec![(phi(), psi().and(chi()))],
    );
    push!(
        RuleId::Contraposition,
        &[],
        alloc::vec![(phi(), psi())],
        alloc::vec![(psi().neg(), phi().neg())],
    );
    push!(
        RuleId::BoxMono,
        &[],
        alloc::vec![(phi(), psi())],
        alloc::vec![(phi().boxed(), psi().boxed())],
    );
    push!(
        RuleId::BoxConj,
        &[],
        alloc::vec![],
        alloc::vec![(phi().boxed().and(psi().boxed()), phi().and(psi()).boxed())],
    );
    push!(RuleId::BoxTop, &[], alloc::vec![], alloc::vec![(chi(), Formula::Top.boxed())]);
    push!(RuleId::Factivity, &[], alloc::vec![], alloc::vec![(phi().boxed(), phi())]);
    push!(
        RuleId::ModalConsistency,
        &[],
        alloc::vec![],
        alloc::vec![(phi().neg().and(phi().diamond()), Formula::Bot)],
    );
    let dist = |a: Formula, b: Formula, c: Formula| {
        (a.clone().and(b.clone().or(c.clone())), a.clone().and(b).or(a.and(c)))
    };
    push!(
        RuleId::BoolDist,
        &["a", "b", "c"],
        alloc::vec![],
        alloc::vec![dist(Formula::atom("a"), Formula::atom("b"), Formula::atom("c"))],
    );
    push!(
        RuleId::CongIf,
        &[],
        alloc::vec![(phi(), psi()), (psi(), phi())],
        alloc::vec![(phi().imp(chi()), psi().imp(chi()))],
    );
    // RK is sampled at arities one and two.
    push!(
        RuleId::RkIf,
        &[],
        alloc::vec![(psi(), chi())],
        alloc::vec![(phi().imp(psi()), phi().imp(chi()))],
    );
    if RuleId::RkIf.available(profile) {
        shapes.push(RuleShape {
            name: format!("{}-2", RuleId::RkIf.name()),
            bool_vars: BTreeSet::new(),
            premises: alloc::vec![(Formula::atom("a").and(Formula::atom("b")), chi())],
            conclusions: alloc::vec![(
                phi().imp(Formula::atom("a")).and(phi().imp(Formula::atom("b"))),
                phi().imp(chi()),
            )],
        });
    }
    push!(
        RuleId::NecIf,
        &[],
        alloc::vec![(Formula::Top, psi())],
        alloc::vec![(Formula::Top, phi().imp(psi()))],
    );
    push!(RuleId::BotElim, &[], alloc::vec![], alloc::vec![(Formula::Bot, phi())]);
    push!(RuleId::TopIntro, &[], alloc::vec![], alloc::vec![(phi(), Formula::Top)]);
    push!(
        RuleId::Four,
        &[],
        alloc::vec![],
        alloc::vec![(phi().boxed(), phi().boxed().boxed())],
    );
    push!(
        RuleId::Five,
        &[],
        alloc::vec![],
        alloc::vec![(phi().diamond(), phi().diamond().boxed())],
    );
    push!(
        RuleId::FullDist,
        &[],
        alloc::vec![],
        alloc::vec![dist(phi(), psi(), chi())],
    );
    for id in &profile.principles {
        let schema = id.schema();
        shapes.push(RuleShape {
            name: id.name().to_string(),
            bool_vars: schema.bool_vars,
            premises: schema.premises,
            conclusions: schema.conclusions,
        });
    }
    shapes
}

fn shape_needs(shape: &RuleShape) -> (bool, bool) {
    fn scan(f: &Formula, modal: &mut bool, cond: &mut bool) {
        match f {
            Formula::Bot | Formula::Top | Formula::Atom(_) => {}
            Formula::Neg(a) => scan(a, modal, cond),
            Formula::Box(a) | Formula::Diamond(a) => {
                *modal = true;
                scan(a, modal, cond);
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                scan(a, modal, cond);
                scan(b, modal, cond);
            }
            Formula::Imp(a, b) => {
                *cond = true;
                scan(a, modal, cond);
                scan(b, modal, cond);
            }
        }
    }
    let mut modal = false;
    let mut cond = false;
    for (l, r) in shape.premises.iter().chain(&shape.conclusions) {
        scan(l, &mut modal, &mut cond);
        scan(r, &mut modal, &mut cond);
    }
    (modal, cond)
}

/// Sample instantiations of every rule the profile licenses against a
/// frame, reporting any instance whose premises hold while a
/// conclusion fails. Sampling is deterministic in `seed`.
pub fn check_soundness(
    profile: &LogicProfile,
    frame: &CompatibilityFrame,
    samples: usize,
    seed: u64,
) -> Result<SoundnessReport, SemanticsError> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let props = frame.prop_family();
    let bools: Vec<u64> = frame.bool_family().map(|b| b.to_vec()).unwrap_or_default();
    let explicit = frame.explicit_prop_family();
    let mut report = SoundnessReport {
        samples,
        checked: Vec::new(),
        skipped: Vec::new(),
        violations: Vec::new(),
    };
    for shape in rule_shapes(profile) {
        let (needs_modal, needs_cond) = shape_needs(&shape);
        if (needs_modal && !frame.has_modal())
            || (needs_cond && !frame.has_selection())
            || (!shape.bool_vars.is_empty() && bools.is_empty())
            || props.is_empty()
        {
            report.skipped.push(shape.name.clone());
            continue;
        }
        let mut vars: BTreeSet<String> = BTreeSet::new();
        for (l, r) in shape.premises.iter().chain(&shape.conclusions) {
            vars.extend(l.atoms());
            vars.extend(r.atoms());
        }
        let vars: Vec<String> = vars.into_iter().collect();
        'sample: for _ in 0..samples {
            let mut valuation: BTreeMap<String, u64> = BTreeMap::new();
            for var in &vars {
                let family = if shape.bool_vars.contains(var) { &bools } else { &props };
                let pick = family[(rng.next_u64() % family.len() as u64) as usize];
                valuation.insert(var.clone(), pick);
            }
            for (l, r) in &shape.premises {
                let lv = eval_with(frame, &valuation, explicit, l)?;
                let rv = eval_with(frame, &valuation, explicit, r)?;
                if lv & !rv != 0 {
                    continue 'sample;
                }
            }
            for (l, r) in &shape.conclusions {
                let lv = eval_with(frame, &valuation, explicit, l)?;
                let rv = eval_with(frame, &valuation, explicit, r)?;
                let gap = lv & !rv;
                if gap != 0 {
                    report.violations.push(SoundnessViolation {
                        rule: shape.name.clone(),
                        substitution: valuation
                            .iter()
                            .map(|(k, &v)| (k.clone(), frame.set_name(v)))
                            .collect(),
                        possibility: frame.names()[gap.trailing_zeros() as usize].clone(),
                    });
                    continue 'sample;
                }
            }
        }
        report.checked.push(shape.name);
    }
    Ok(report)
}

/// Prebuilt derivations for notable entailments, each paired with the
/// weakest profile it checks under.
///
/// The scripts serve two purposes: they are regression fixtures for
/// [`check_derivation`], and they record, step by step, how the
/// headline conditional entailments reduce to the assumed principles.
/// Every script's `summary` is the concluding consecution written in
/// the concrete syntax accepted by [`Formula::parse`].
pub mod scripts {
    use super::*;

    /// A bundled derivation together with the profile it checks under.
    #[derive(Debug, Clone)]
    pub struct Script {
        /// Stable kebab-case identifier.
        pub name: &'static str,
        /// The concluding consecution, in concrete syntax.
        pub summary: &'static str,
        /// The rule set the derivation is checked against.
        pub profile: LogicProfile,
        /// The derivation itself.
        pub derivation: Derivation,
    }

    impl Script {
        /// The script's final consecution.
        pub fn conclusion(&self) -> &Consecution {
            self.derivation.conclusion().expect("scripts are nonempty")
        }

        /// Check the derivation against the bundled profile.
        pub fn check(&self) -> Result<(), ProofError> {
            check_derivation(&self.derivation, &self.profile)
        }
    }

    /// Step-at-a-time construction of a [`Derivation`]. Each helper
    /// pushes one step (or a short fixed pattern of steps) whose
    /// consecution is computed from its justification, so a finished
    /// builder always yields a derivation that checks.
    struct Builder {
        derivation: Derivation,
    }

    impl Builder {
        fn new() -> Self {
            Builder { derivation: Derivation::default() }
        }

        fn seq(&self, index: usize) -> &Consecution {
            &self.derivation.steps[index].consecution
        }

        fn axiom(&mut self, rule: RuleId, lhs: Formula, rhs: Formula) -> usize {
            self.derivation.push(Consecution::new(lhs, rhs), Justification::Axiom { rule })
        }

        /// `f |- f`.
        fn refl(&mut self, f: Formula) -> usize {
            self.axiom(RuleId::Refl, f.clone(), f)
        }

        /// `a & b |- a`.
        fn elim_l(&mut self, a: Formula, b: Formula) -> usize {
            self.axiom(RuleId::AndElimLeft, a.clone().and(b), a)
        }

        /// `a & b |- b`.
        fn elim_r(&mut self, a: Formula, b: Formula) -> usize {
            self.axiom(RuleId::AndElimRight, a.and(b.clone()), b)
        }

        /// `f & ~f |- rhs`.
        fn absurd(&mut self, f: Formula, rhs: Formula) -> usize {
            self.axiom(RuleId::Absurd, f.clone().and(f.neg()), rhs)
        }

        /// `f |- ~~f`.
        fn dni(&mut self, f: Formula) -> usize {
            self.axiom(RuleId::DniIntro, f.clone(), f.neg().neg())
        }

        /// `~~f |- f`.
        fn dne(&mut self, f: Formula) -> usize {
            self.axiom(RuleId::DniElim, f.clone().neg().neg(), f)
        }

        /// `[]a & []b |- [](a & b)`.
        fn box_conj(&mut self, a: Formula, b: Formula) -> usize {
            self.axiom(RuleId::BoxConj, a.clone().boxed().and(b.clone().boxed()), a.and(b).boxed())
        }

        /// `a & (b \/ c) |- (a & b) \/ (a & c)` for Boolean parts.
        fn bool_dist(&mut self, a: Formula, b: Formula, c: Formula) -> usize {
            self.axiom(
                RuleId::BoolDist,
                a.clone().and(b.clone().or(c.clone())),
                a.clone().and(b).or(a.and(c)),
            )
        }

        fn cut(&mut self, left: usize, right: usize) -> usize {
            let lhs = self.seq(left).lhs().clone();
            let rhs = self.seq(right).rhs().clone();
            self.derivation.push(Consecution::new(lhs, rhs), Justification::Cut { left, right })
        }

        fn adjoin(&mut self, left: usize, right: usize) -> usize {
            let lhs = self.seq(left).lhs().clone();
            let rhs = self.seq(left).rhs().clone().and(self.seq(right).rhs().clone());
            self.derivation
                .push(Consecution::new(lhs, rhs), Justification::Adjunction { left, right })
        }

        fn contrapose(&mut self, premise: usize) -> usize {
            let lhs = self.seq(premise).rhs().clone().neg();
            let rhs = self.seq(premise).lhs().clone().neg();
            self.derivation
                .push(Consecution::new(lhs, rhs), Justification::Contraposition { premise })
        }

        fn box_mono(&mut self, premise: usize) -> usize {
            let lhs = self.seq(premise).lhs().clone().boxed();
            let rhs = self.seq(premise).rhs().clone().boxed();
            self.derivation.push(Consecution::new(lhs, rhs), Justification::BoxMono { premise })
        }

        /// From mutual premises `x |- y` and `y |- x`, conclude
        /// `(x -> context) |- (y -> context)`.
        fn cong_if(&mut self, forward: usize, backward: usize, context: Formula) -> usize {
            let lhs = self.seq(forward).lhs().clone().imp(context.clone());
            let rhs = self.seq(forward).rhs().clone().imp(context);
            self.derivation
                .push(Consecution::new(lhs, rhs), Justification::CongIf { forward, backward })
        }

        /// Wrap a premise `c_1 & ... & c_n |- d` into
        /// `(ant -> c_1) & ... & (ant -> c_n) |- ant -> d`.
        fn rk(&mut self, premise: usize, antecedent: Formula, conjuncts: usize) -> usize {
            let p = self.seq(premise).clone();
            let parts = split_conjuncts(p.lhs(), conjuncts).expect("premise splits as claimed");
            let ant = antecedent.desugar();
            let wrapped: Vec<Formula> =
                parts.into_iter().map(|part| ant.clone().imp(part.clone())).collect();
            let conclusion = Consecution::new(join_conjuncts(&wrapped), ant.imp(p.rhs().clone()));
            self.derivation.push(
                conclusion,
                Justification::RkIf { premise, antecedent, conjuncts },
            )
        }

        /// Instantiate conclusion `index` of an assumed principle.
        fn principle(
            &mut self,
            id: PrincipleId,
            substitution: &[(&str, Formula)],
            index: usize,
        ) -> usize {
            let map: BTreeMap<String, Formula> =
                substitution.iter().map(|(name, f)| (String::from(*name), f.clone())).collect();
            let schema = id.schema();
            let (lhs, rhs) = &schema.conclusions[index];
            let conclusion = Consecution::new(lhs.substitute(&map), rhs.substitute(&map));
            self.derivation.push(
                conclusion,
                Justification::Principle { id, substitution: map, conclusion: index },
            )
        }

        /// From `x |- y`, conclude `context |- x -> []y`.
        fn must_intro(&mut self, premise: usize, context: Formula) -> usize {
            let rhs = self.seq(premise).lhs().clone().imp(self.seq(premise).rhs().clone().boxed());
            self.derivation.push(
                Consecution::new(context, rhs),
                Justification::PrincipleRule { id: PrincipleId::MustIntro, premise },
            )
        }

        // Derived moves, each a short fixed step pattern.

        /// `a & b |- b & a`.
        fn comm(&mut self, a: Formula, b: Formula) -> usize {
            let right = self.elim_r(a.clone(), b.clone());
            let left = self.elim_l(a, b);
            self.adjoin(right, left)
        }

        /// `a |- a \/ b`.
        fn or_intro_l(&mut self, a: Formula, b: Formula) -> usize {
            let elim = self.elim_l(a.clone().neg(), b.neg());
            let contra = self.contrapose(elim);
            let intro = self.dni(a);
            self.cut(intro, contra)
        }

        /// `b |- a \/ b`.
        fn or_intro_r(&mut self, a: Formula, b: Formula) -> usize {
            let elim = self.elim_r(a.neg(), b.clone().neg());
            let contra = self.contrapose(elim);
            let intro = self.dni(b);
            self.cut(intro, contra)
        }

        /// From `x |- z` and `y |- z`, conclude `x \/ y |- z`.
        fn by_cases(&mut self, left: usize, right: usize) -> usize {
            let goal = self.seq(right).rhs().clone();
            let not_left = self.contrapose(left);
            let not_right = self.contrapose(right);
            let both = self.adjoin(not_left, not_right);
            let flip = self.contrapose(both);
            let strip = self.dne(goal);
            self.cut(flip, strip)
        }

        /// From `x |- y`, conclude `<>x |- <>y`.
        fn diamond_mono(&mut self, premise: usize) -> usize {
            let contra = self.contrapose(premise);
            let mono = self.box_mono(contra);
            self.contrapose(mono)
        }

        fn finish(self, name: &'static str, summary: &'static str, profile: LogicProfile) -> Script {
            Script { name, summary, profile, derivation: self.derivation }
        }
    }

    fn phi() -> Formula {
        Formula::atom("phi")
    }

    fn psi() -> Formula {
        Formula::atom("psi")
    }

    fn chi() -> Formula {
        Formula::atom("chi")
    }

    /// Push steps deriving `(x -> []y) & ((x & y) -> z) |- x -> z`
    /// from must introduction, modalized modus ponens, and flattening;
    /// returns the final index.
    fn cautious_transitivity_core(b: &mut Builder, x: Formula, y: Formula, z: Formula) -> usize {
        let must = x.clone().imp(y.clone().boxed());
        let step = x.clone().and(y.clone()).imp(z.clone());
        let id = b.refl(x.clone());
        let to_self = b.must_intro(id, must.clone());
        let keep = b.refl(must.clone());
        let pair = b.adjoin(to_self, keep);
        let merge = b.box_conj(x.clone(), y.clone());
        let under = b.rk(merge, x.clone(), 2);
        let to_conj = b.cut(pair, under);
        let first = b.elim_l(must.clone(), step.clone());
        let necess = b.cut(first, to_conj);
        let second = b.elim_r(must, step.clone());
        let lift = b.principle(
            PrincipleId::Flattening,
            &[("phi", x.clone()), ("psi", y.clone()), ("chi", z.clone())],
            1,
        );
        let lifted = b.cut(second, lift);
        let joined = b.adjoin(lifted, necess);
        let ponens = b.principle(
            PrincipleId::ModalizedMp,
            &[("phi", x.clone().and(y.clone())), ("psi", z.clone())],
            0,
        );
        let under = b.rk(ponens, x, 2);
        b.cut(joined, under)
    }

    /// Push steps deriving `(x -> []y) & (x -> z) |- (x & y) -> z`
    /// from must introduction, modalized conjunctive sufficiency, and
    /// flattening; returns the final index.
    fn cautious_monotonicity_core(b: &mut Builder, x: Formula, y: Formula, z: Formula) -> usize {
        let must = x.clone().imp(y.clone().boxed());
        let direct = x.clone().imp(z.clone());
        let id = b.refl(x.clone());
        let to_self = b.must_intro(id, must.clone());
        let keep = b.refl(must.clone());
        let pair = b.adjoin(to_self, keep);
        let merge = b.box_conj(x.clone(), y.clone());
        let under = b.rk(merge, x.clone(), 2);
        let to_conj = b.cut(pair, under);
        let first = b.elim_l(must.clone(), direct.clone());
        let necess = b.cut(first, to_conj);
        let second = b.elim_r(must, direct);
        let joined = b.adjoin(necess, second);
        let suffice = b.principle(
            PrincipleId::ModalizedCs,
            &[("phi", x.clone().and(y.clone())), ("psi", z.clone())],
            0,
        );
        let under = b.rk(suffice, x.clone(), 2);
        let lifted = b.cut(joined, under);
        let fold = b.principle(PrincipleId::Flattening, &[("phi", x), ("psi", y), ("chi", z)], 0);
        b.cut(lifted, fold)
    }

    /// Push steps deriving `(x -> y) & ((x & y) -> w) |- x -> w` for
    /// Boolean `w` from identity, simple modus ponens, and flattening.
    fn simple_transitivity_core(b: &mut Builder, x: Formula, y: Formula, w: Formula) -> usize {
        let cond = x.clone().imp(y.clone());
        let step = x.clone().and(y.clone()).imp(w.clone());
        let whole = cond.clone().and(step.clone());
        let id = b.principle(
            PrincipleId::Identity,
            &[("chi", whole), ("psi", x.clone())],
            0,
        );
        let first = b.elim_l(cond.clone(), step.clone());
        let pair = b.adjoin(id, first);
        let hold = b.refl(x.clone().and(y.clone()));
        let under = b.rk(hold, x.clone(), 2);
        let to_conj = b.cut(pair, under);
        let second = b.elim_r(cond, step.clone());
        let lift = b.principle(
            PrincipleId::Flattening,
            &[("phi", x.clone()), ("psi", y.clone()), ("chi", w.clone())],
            1,
        );
        let lifted = b.cut(second, lift);
        let joined = b.adjoin(lifted, to_conj);
        let ponens = b.principle(
            PrincipleId::SimpleMp,
            &[("phi", x.clone().and(y.clone())), ("b", w)],
            0,
        );
        let under = b.rk(ponens, x, 2);
        b.cut(joined, under)
    }

    /// Push steps deriving `(x -> y) & (x -> w) |- (x & y) -> w` for
    /// Boolean `w` from identity, simple conjunctive sufficiency, and
    /// flattening.
    fn simple_monotonicity_core(b: &mut Builder, x: Formula, y: Formula, w: Formula) -> usize {
        let cond = x.clone().imp(y.clone());
        let direct = x.clone().imp(w.clone());
        let whole = cond.clone().and(direct.clone());
        let id = b.principle(
            PrincipleId::Identity,
            &[("chi", whole), ("psi", x.clone())],
            0,
        );
        let first = b.elim_l(cond.clone(), direct.clone());
        let pair = b.adjoin(id, first);
        let hold = b.refl(x.clone().and(y.clone()));
        let under = b.rk(hold, x.clone(), 2);
        let to_conj = b.cut(pair, under);
        let second = b.elim_r(cond, direct);
        let joined = b.adjoin(to_conj, second);
        let suffice = b.principle(
            PrincipleId::SimpleCs,
            &[("phi", x.clone().and(y.clone())), ("b", w.clone())],
            0,
        );
        let under = b.rk(suffice, x.clone(), 2);
        let lifted = b.cut(joined, under);
        let fold = b.principle(PrincipleId::Flattening, &[("phi", x), ("psi", y), ("chi", w)], 0);
        b.cut(lifted, fold)
    }

    /// Push steps deriving
    /// `x -> <>(x & y) |- x -> (y -> [](x & y))` from must
    /// introduction and must preservation; returns the final index.
    fn persistence_core(b: &mut Builder, x: Formula, y: Formula) -> usize {
        let both = x.clone().and(y.clone());
        let might = both.diamond();
        let swap = b.comm(x.clone(), y.clone());
        let might_swap = b.diamond_mono(swap);
        let first = b.elim_l(might.clone(), x.clone().boxed());
        let fwd = b.cut(first, might_swap);
        let second = b.elim_r(might.clone(), x.clone().boxed());
        let paired = b.adjoin(fwd, second);
        let preserve = b.principle(
            PrincipleId::MustPreservation,
            &[("phi", y.clone()), ("psi", x.clone())],
            0,
        );
        let kept = b.cut(paired, preserve);
        let again = b.refl(y.clone());
        let ctx = y.clone().imp(x.clone().boxed());
        let to_self = b.must_intro(again, ctx.clone());
        let keep = b.refl(ctx);
        let pair = b.adjoin(keep, to_self);
        let merge = b.box_conj(x.clone(), y.clone());
        let under = b.rk(merge, y, 2);
        let inner = b.cut(pair, under);
        let chained = b.cut(kept, inner);
        let start = b.refl(x.clone());
        let guard = x.clone().imp(might.clone());
        let to_box = b.must_intro(start, guard.clone());
        let keep_guard = b.refl(guard);
        let joined = b.adjoin(keep_guard, to_box);
        let under = b.rk(chained, x, 2);
        b.cut(joined, under)
    }

    /// From earlier steps proving `P |- x -> <>(x & y)` (`guard`) and
    /// `P |- x -> (y -> z)` (`premise`), push steps concluding
    /// `P |- x -> ((x & y) -> z)`.
    fn lifting_forward_core(
        b: &mut Builder,
        x: Formula,
        y: Formula,
        z: Formula,
        guard: usize,
        premise: usize,
    ) -> usize {
        let persist = persistence_core(b, x.clone(), y.clone());
        let ready = b.cut(guard, persist);
        let joined = b.adjoin(ready, premise);
        let pair = x.clone().and(y.clone());
        let mono = cautious_monotonicity_core(b, y.clone(), pair.clone(), z.clone());
        let out = b.elim_r(y.clone(), pair.clone());
        let pick = b.elim_r(x.clone(), y.clone());
        let whole = b.refl(pair.clone());
        let into = b.adjoin(pick, whole);
        let fix = b.cong_if(out, into, z);
        let fixed = b.cut(mono, fix);
        let under = b.rk(fixed, x, 2);
        b.cut(joined, under)
    }

    /// From earlier steps proving `P |- x -> <>(x & y)` (`guard`) and
    /// `P |- x -> ((x & y) -> z)` (`premise`), push steps concluding
    /// `P |- x -> (y -> z)`.
    fn lifting_backward_core(
        b: &mut Builder,
        x: Formula,
        y: Formula,
        z: Formula,
        guard: usize,
        premise: usize,
    ) -> usize {
        let persist = persistence_core(b, x.clone(), y.clone());
        let ready = b.cut(guard, persist);
        let pair = x.clone().and(y.clone());
        let pick = b.elim_r(x.clone(), y.clone());
        let whole = b.refl(pair.clone());
        let into = b.adjoin(pick, whole);
        let out = b.elim_r(y.clone(), pair.clone());
        let fix = b.cong_if(into, out, z.clone());
        let wrap = b.rk(fix, x.clone(), 1);
        let fixed = b.cut(premise, wrap);
        let joined = b.adjoin(ready, fixed);
        let trans = cautious_transitivity_core(b, y, pair, z);
        let under = b.rk(trans, x, 2);
        b.cut(joined, under)
    }

    /// Shared body of the disjunction-introduction-from-either-side
    /// consequence `<>(~a & b) & [](a \/ b) |- ~a -> []b` for Boolean
    /// `a`, `b`; returns the final index.
    fn or_to_if_must_steps(b: &mut Builder) -> usize {
        let a = Formula::atom("a");
        let bool_b = Formula::atom("b");
        let not_a = a.clone().neg();
        let either = a.clone().or(bool_b.clone());
        let might = not_a.clone().and(bool_b.clone()).diamond();
        let certain = either.clone().boxed();
        let pick_l = b.elim_l(not_a.clone(), bool_b.clone());
        let pick_r = b.elim_r(not_a.clone(), bool_b.clone());
        let widen = b.or_intro_r(a.clone(), bool_b.clone());
        let to_either = b.cut(pick_r, widen);
        let tighten = b.adjoin(pick_l, to_either);
        let might_either = b.diamond_mono(tighten);
        let first = b.elim_l(might.clone(), certain.clone());
        let might_p = b.cut(first, might_either);
        let second = b.elim_r(might, certain.clone());
        let set = b.adjoin(might_p, second);
        let preserve = b.principle(
            PrincipleId::MustPreservation,
            &[("phi", not_a.clone()), ("psi", either.clone())],
            0,
        );
        let kept = b.cut(set, preserve);
        let again = b.refl(not_a.clone());
        let ctx = not_a.clone().imp(certain);
        let to_self = b.must_intro(again, ctx.clone());
        let keep = b.refl(ctx);
        let pair = b.adjoin(keep, to_self);
        let merge = b.box_conj(either.clone(), not_a.clone());
        let under = b.rk(merge, not_a.clone(), 2);
        let inner = b.cut(pair, under);
        let chained = b.cut(kept, inner);
        let swap = b.comm(either, not_a.clone());
        let split = b.bool_dist(not_a.clone(), a.clone(), bool_b.clone());
        let cased = b.cut(swap, split);
        let flip = b.comm(not_a.clone(), a.clone());
        let boom = b.absurd(a, bool_b);
        let case_l = b.cut(flip, boom);
        let cases = b.by_cases(case_l, pick_r);
        let to_b = b.cut(cased, cases);
        let boxed_b = b.box_mono(to_b);
        let wrap = b.rk(boxed_b, not_a, 1);
        b.cut(chained, wrap)
    }

    fn or_intro_left_script() -> Script {
        let mut b = Builder::new();
        b.or_intro_l(Formula::atom("p"), Formula::atom("q"));
        b.finish("or-intro-left", "p |- p \\/ q", LogicProfile::new(LogicBase::O))
    }

    fn or_intro_right_script() -> Script {
        let mut b = Builder::new();
        b.or_intro_r(Formula::atom("p"), Formula::atom("q"));
        b.finish("or-intro-right", "q |- p \\/ q", LogicProfile::new(LogicBase::O))
    }

    fn by_cases_script() -> Script {
        let mut b = Builder::new();
        let p = Formula::atom("p");
        let q = Formula::atom("q");
        let left = b.or_intro_r(q.clone(), p.clone());
        let right = b.or_intro_l(q, p);
        b.by_cases(left, right);
        b.finish("proof-by-cases", "p \\/ q |- q \\/ p", LogicProfile::new(LogicBase::O))
    }

    fn de_morgan_script() -> Script {
        let mut b = Builder::new();
        let p = Formula::atom("p");
        let q = Formula::atom("q");
        let left = b.elim_l(p.clone().neg().neg(), q.clone().neg().neg());
        let strip_l = b.dne(p.clone());
        let from_l = b.cut(left, strip_l);
        let right = b.elim_r(p.neg().neg(), q.clone().neg().neg());
        let strip_r = b.dne(q);
        let from_r = b.cut(right, strip_r);
        let both = b.adjoin(from_l, from_r);
        b.contrapose(both);
        b.finish("de-morgan", "~(p & q) |- ~p \\/ ~q", LogicProfile::new(LogicBase::O))
    }

    fn modalized_transitivity_script() -> Script {
        let mut b = Builder::new();
        cautious_transitivity_core(&mut b, phi(), psi(), chi());
        b.finish(
            "modalized-cautious-transitivity",
            "(phi -> []psi) & ((phi & psi) -> chi) |- phi -> chi",
            LogicProfile::new(LogicBase::CondModal).with_principles([
                PrincipleId::MustIntro,
                PrincipleId::ModalizedMp,
                PrincipleId::Flattening,
            ]),
        )
    }

    fn modalized_monotonicity_script() -> Script {
        let mut b = Builder::new();
        cautious_monotonicity_core(&mut b, phi(), psi(), chi());
        b.finish(
            "modalized-cautious-monotonicity",
            "(phi -> []psi) & (phi -> chi) |- (phi & psi) -> chi",
            LogicProfile::new(LogicBase::CondModal).with_principles([
                PrincipleId::MustIntro,
                PrincipleId::ModalizedCs,
                PrincipleId::Flattening,
            ]),
        )
    }

    fn modalized_reciprocity_script() -> Script {
        let mut b = Builder::new();
        let (x, y, z) = (phi(), psi(), chi());
        let fwd = x.clone().imp(y.clone().boxed());
        let bwd = y.clone().imp(x.clone().boxed());
        let direct = x.clone().imp(z.clone());
        let front = fwd.clone().and(bwd.clone());
        let cond_pair = b.elim_l(front.clone(), direct.clone());
        let keep_direct = b.elim_r(front, direct);
        let pick_fwd = b.elim_l(fwd.clone(), bwd.clone());
        let pick_bwd = b.elim_r(fwd, bwd);
        let use_fwd = b.cut(cond_pair, pick_fwd);
        let use_bwd = b.cut(cond_pair, pick_bwd);
        let for_mono = b.adjoin(use_fwd, keep_direct);
        let mono = cautious_monotonicity_core(&mut b, x.clone(), y.clone(), z.clone());
        let stepped = b.cut(for_mono, mono);
        let ab = b.comm(x.clone(), y.clone());
        let ba = b.comm(y.clone(), x.clone());
        let turn = b.cong_if(ab, ba, z.clone());
        let turned = b.cut(stepped, turn);
        let for_trans = b.adjoin(use_bwd, turned);
        let trans = cautious_transitivity_core(&mut b, y, x, z);
        b.cut(for_trans, trans);
        b.finish(
            "modalized-reciprocity",
            "((phi -> []psi) & (psi -> []phi)) & (phi -> chi) |- psi -> chi",
            LogicProfile::new(LogicBase::CondModal).with_principles([
                PrincipleId::MustIntro,
                PrincipleId::ModalizedMp,
                PrincipleId::ModalizedCs,
                PrincipleId::Flattening,
            ]),
        )
    }

    fn simple_transitivity_script() -> Script {
        let mut b = Builder::new();
        simple_transitivity_core(&mut b, phi(), psi(), Formula::atom("b"));
        b.finish(
            "simple-cautious-transitivity",
            "(phi -> psi) & ((phi & psi) -> b) |- phi -> b",
            LogicProfile::new(LogicBase::CondModal)
                .with_principles([
                    PrincipleId::Identity,
                    PrincipleId::SimpleMp,
                    PrincipleId::Flattening,
                ])
                .with_bool_atoms([String::from("b")]),
        )
    }

    fn simple_monotonicity_script() -> Script {
        let mut b = Builder::new();
        simple_monotonicity_core(&mut b, phi(), psi(), Formula::atom("b"));
        b.finish(
            "simple-cautious-monotonicity",
            "(phi -> psi) & (phi -> b) |- (phi & psi) -> b",
            LogicProfile::new(LogicBase::CondModal)
                .with_principles([
                    PrincipleId::Identity,
                    PrincipleId::SimpleCs,
                    PrincipleId::Flattening,
                ])
                .with_bool_atoms([String::from("b")]),
        )
    }

    fn simple_reciprocity_script() -> Script {
        let mut b = Builder::new();
        let (x, y) = (phi(), psi());
        let w = Formula::atom("b");
        let fwd = x.clone().imp(y.clone());
        let bwd = y.clone().imp(x.clone());
        let direct = x.clone().imp(w.clone());
        let front = fwd.clone().and(bwd.clone());
        let cond_pair = b.elim_l(front.clone(), direct.clone());
        let keep_direct = b.elim_r(front, direct);
        let pick_fwd = b.elim_l(fwd.clone(), bwd.clone());
        let pick_bwd = b.elim_r(fwd, bwd);
        let use_fwd = b.cut(cond_pair, pick_fwd);
        let use_bwd = b.cut(cond_pair, pick_bwd);
        let for_mono = b.adjoin(use_fwd, keep_direct);
        let mono = simple_monotonicity_core(&mut b, x.clone(), y.clone(), w.clone());
        let stepped = b.cut(for_mono, mono);
        let ab = b.comm(x.clone(), y.clone());
        let ba = b.comm(y.clone(), x.clone());
        let turn = b.cong_if(ab, ba, w.clone());
        let turned = b.cut(stepped, turn);
        let for_trans = b.adjoin(use_bwd, turned);
        let trans = simple_transitivity_core(&mut b, y, x, w);
        b.cut(for_trans, trans);
        b.finish(
            "simple-reciprocity",
            "((phi -> psi) & (psi -> phi)) & (phi -> b) |- psi -> b",
            LogicProfile::new(LogicBase::CondModal)
                .with_principles([
                    PrincipleId::Identity,
                    PrincipleId::SimpleMp,
                    PrincipleId::SimpleCs,
                    PrincipleId::Flattening,
                ])
                .with_bool_atoms([String::from("b")]),
        )
    }

    fn persistence_script() -> Script {
        let mut b = Builder::new();
        persistence_core(&mut b, phi(), psi());
        b.finish(
            "persistence",
            "phi -> <>(phi & psi) |- phi -> (psi -> [](phi & psi))",
            LogicProfile::new(LogicBase::CondModal)
                .with_principles([PrincipleId::MustIntro, PrincipleId::MustPreservation]),
        )
    }

    fn lifting_profile(extra: PrincipleId) -> LogicProfile {
        LogicProfile::new(LogicBase::CondModal).with_principles([
            PrincipleId::MustIntro,
            PrincipleId::MustPreservation,
            PrincipleId::Flattening,
            extra,
        ])
    }

    fn lifting_ltr_script() -> Script {
        let mut b = Builder::new();
        let (x, y, z) = (phi(), psi(), chi());
        let guard = x.clone().imp(x.clone().and(y.clone()).diamond());
        let imported = x.clone().imp(y.clone().imp(z.clone()));
        let g = b.elim_l(guard.clone(), imported.clone());
        let h = b.elim_r(guard, imported);
        let lifted = lifting_forward_core(&mut b, x, y, z, g, h);
        b.adjoin(g, lifted);
        b.finish(
            "modalized-lifting-ltr",
            "(phi -> <>(phi & psi)) & (phi -> (psi -> chi)) |- (phi -> <>(phi & psi)) & (phi -> ((phi & psi) -> chi))",
            lifting_profile(PrincipleId::ModalizedCs),
        )
    }

    fn lifting_rtl_script() -> Script {
        let mut b = Builder::new();
        let (x, y, z) = (phi(), psi(), chi());
        let guard = x.clone().imp(x.clone().and(y.clone()).diamond());
        let exported = x.clone().imp(x.clone().and(y.clone()).imp(z.clone()));
        let g = b.elim_l(guard.clone(), exported.clone());
        let h = b.elim_r(guard, exported);
        let back = lifting_backward_core(&mut b, x, y, z, g, h);
        b.adjoin(g, back);
        b.finish(
            "modalized-lifting-rtl",
            "(phi -> <>(phi & psi)) & (phi -> ((phi & psi) -> chi)) |- (phi -> <>(phi & psi)) & (phi -> (psi -> chi))",
            lifting_profile(PrincipleId::ModalizedMp),
        )
    }

    fn import_export_ltr_script() -> Script {
        let mut b = Builder::new();
        let (x, y, z) = (phi(), psi(), chi());
        let guard = x.clone().imp(x.clone().and(y.clone()).diamond());
        let imported = x.clone().imp(y.clone().imp(z.clone()));
        let g = b.elim_l(guard.clone(), imported.clone());
        let h = b.elim_r(guard, imported);
        let lifted = lifting_forward_core(&mut b, x.clone(), y.clone(), z.clone(), g, h);
        let fold = b.principle(PrincipleId::Flattening, &[("phi", x), ("psi", y), ("chi", z)], 0);
        let folded = b.cut(lifted, fold);
        b.adjoin(g, folded);
        b.finish(
            "modalized-import-export-ltr",
            "(phi -> <>(phi & psi)) & (phi -> (psi -> chi)) |- (phi -> <>(phi & psi)) & ((phi & psi) -> chi)",
            lifting_profile(PrincipleId::ModalizedCs),
        )
    }

    fn import_export_rtl_script() -> Script {
        let mut b = Builder::new();
        let (x, y, z) = (phi(), psi(), chi());
        let guard = x.clone().imp(x.clone().and(y.clone()).diamond());
        let folded = x.clone().and(y.clone()).imp(z.clone());
        let g = b.elim_l(guard.clone(), folded.clone());
        let f = b.elim_r(guard, folded);
        let lift = b.principle(
            PrincipleId::Flattening,
            &[("phi", x.clone()), ("psi", y.clone()), ("chi", z.clone())],
            1,
        );
        let h = b.cut(f, lift);
        let back = lifting_backward_core(&mut b, x, y, z, g, h);
        b.adjoin(g, back);
        b.finish(
            "modalized-import-export-rtl",
            "(phi -> <>(phi & psi)) & ((phi & psi) -> chi) |- (phi -> <>(phi & psi)) & (phi -> (psi -> chi))",
            lifting_profile(PrincipleId::ModalizedMp),
        )
    }

    fn or_to_if_must_script() -> Script {
        let mut b = Builder::new();
        or_to_if_must_steps(&mut b);
        b.finish(
            "modalized-or-to-if-must",
            "<>(~a & b) & [](a \\/ b) |- ~a -> []b",
            LogicProfile::new(LogicBase::CondModal)
                .with_principles([PrincipleId::MustIntro, PrincipleId::MustPreservation])
                .with_bool_atoms([String::from("a"), String::from("b")]),
        )
    }

    fn or_to_if_script() -> Script {
        let mut b = Builder::new();
        let last = or_to_if_must_steps(&mut b);
        let bool_b = Formula::atom("b");
        let fact = b.axiom(RuleId::Factivity, bool_b.clone().boxed(), bool_b);
        let wrap = b.rk(fact, Formula::atom("a").neg(), 1);
        b.cut(last, wrap);
        b.finish(
            "modalized-or-to-if",
            "<>(~a & b) & [](a \\/ b) |- ~a -> b",
            LogicProfile::new(LogicBase::CondEpistemic)
                .with_principles([PrincipleId::MustIntro, PrincipleId::MustPreservation])
                .with_bool_atoms([String::from("a"), String::from("b")]),
        )
    }

    /// All bundled scripts, in a stable order.
    pub fn all() -> Vec<Script> {
        alloc::vec![
            or_intro_left_script(),
            or_intro_right_script(),
            by_cases_script(),
            de_morgan_script(),
            modalized_transitivity_script(),
            modalized_monotonicity_script(),
            modalized_reciprocity_script(),
            simple_transitivity_script(),
            simple_monotonicity_script(),
            simple_reciprocity_script(),
            persistence_script(),
            lifting_ltr_script(),
            lifting_rtl_script(),
            import_export_ltr_script(),
            import_export_rtl_script(),
            or_to_if_must_script(),
            or_to_if_script(),
        ]
    }

    /// Look a script up by its stable name.
    pub fn by_name(name: &str) -> Option<Script> {
        all().into_iter().find(|s| s.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(lhs: &str, rhs: &str) -> Consecution {
        Consecution::new(Formula::parse(lhs).unwrap(), Formula::parse(rhs).unwrap())
    }

    #[test]
    fn or_introduction_checks() {
        // p |- p \/ q via and-elim, contraposition, and double negation.
        let profile = LogicProfile::new(LogicBase::O);
        let mut d = Derivation::default();
        let s0 = d.push(seq("~p & ~q", "~p"), Justification::Axiom { rule: RuleId::AndElimLeft });
        let s1 = d.push(seq("~~p", "~(~p & ~q)"), Justification::Contraposition { premise: s0 });
        let s2 = d.push(seq("p", "~~p"), Justification::Axiom { rule: RuleId::DniIntro });
        d.push(seq("p", "p \\/ q"), Justification::Cut { left: s2, right: s1 });
        assert!(check_derivation(&d, &profile).is_ok());
    }

    #[test]
    fn premise_index_must_be_earlier() {
        let profile = LogicProfile::new(LogicBase::O);
        let mut d = Derivation::default();
        d.push(seq("p", "p"), Justification::Contraposition { premise: 0 });
        let err = check_derivation(&d, &profile).unwrap_err();
        assert_eq!(err.step, 0);
        assert_eq!(err.reason, ProofErrorReason::BadPremiseIndex(0));
    }

    #[test]
    fn factivity_needs_an_epistemic_base() {
        let mut d = Derivation::default();
        d.push(seq("[]p", "p"), Justification::Axiom { rule: RuleId::Factivity });
        assert!(check_derivation(&d, &LogicProfile::new(LogicBase::EO)).is_ok());
        let err = check_derivation(&d, &LogicProfile::new(LogicBase::CondModal)).unwrap_err();
        assert_eq!(err.reason, ProofErrorReason::Unavailable(RuleId::Factivity));
    }

    #[test]
    fn distributivity_side_condition() {
        let mut d = Derivation::default();
        d.push(
            seq("p & (q \\/ r)", "(p & q) \\/ (p & r)"),
            Justification::Axiom { rule: RuleId::BoolDist },
        );
        let plain = LogicProfile::new(LogicBase::EOplus);
        let err = check_derivation(&d, &plain).unwrap_err();
        assert!(matches!(err.reason, ProofErrorReason::Malformed(_)));
        let boolean = LogicProfile::new(LogicBase::EOplus)
            .with_bool_atoms(["p".to_string(), "q".to_string(), "r".to_string()]);
        assert!(check_derivation(&d, &boolean).is_ok());
        let full = LogicProfile::new(LogicBase::EO).with_full_distributivity();
        let mut d2 = Derivation::default();
        d2.push(
            seq("p & (q \\/ r)", "(p & q) \\/ (p & r)"),
            Justification::Axiom { rule: RuleId::FullDist },
        );
        assert!(check_derivation(&d2, &full).is_ok());
    }

    #[test]
    fn saturate_proves_de_morgan() {
        let profile = LogicProfile::new(LogicBase::O);
        let goal = seq("~(p & q)", "~p \\/ ~q");
        match saturate(&profile, &goal, &[], SearchLimits::default()) {
            SaturationResult::Proved(d) => {
                assert!(check_derivation(&d, &profile).is_ok());
                assert_eq!(d.conclusion(), Some(&goal));
            }
            SaturationResult::Unknown { derived } => {
                panic!("expected a proof, saturated {derived} consecutions")
            }
        }
    }

    #[test]
    fn saturate_respects_the_universe() {
        // p & q |- q \/ p needs ~~q (or ~~p) as a stepping stone; the
        // goal's own closure lacks it.
        let profile = LogicProfile::new(LogicBase::O);
        let goal = seq("p & q", "q \\/ p");
        assert!(matches!(
            saturate(&profile, &goal, &[], SearchLimits::default()),
            SaturationResult::Unknown { .. }
        ));
        let extras = [Formula::parse("~~q").unwrap()];
        match saturate(&profile, &goal, &extras, SearchLimits::default()) {
            SaturationResult::Proved(d) => assert!(check_derivation(&d, &profile).is_ok()),
            SaturationResult::Unknown { derived } => {
                panic!("expected a proof, saturated {derived} consecutions")
            }
        }
    }

    #[test]
    fn rk_rule_checks_at_arity_two() {
        let profile = LogicProfile::new(LogicBase::CondModal);
        let mut d = Derivation::default();
        let s0 = d.push(seq("a & b", "a"), Justification::Axiom { rule: RuleId::AndElimLeft });
        d.push(
            seq("(p -> a) & (p -> b)", "p -> a"),
            Justification::RkIf {
                premise: s0,
                antecedent: Formula::parse("p").unwrap(),
                conjuncts: 2,
            },
        );
        assert!(check_derivation(&d, &profile).is_ok());
    }

    #[test]
    fn soundness_sweep_is_clean_on_a_plain_frame() {
        let names = (1..=5).map(|i| alloc::format!("x{i}")).collect();
        let frame =
            CompatibilityFrame::new(names, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let report =
            check_soundness(&LogicProfile::new(LogicBase::O), &frame, 50, 7).unwrap();
        assert!(report.is_clean());
        assert!(report.checked.iter().any(|r| r == "cut"));
    }

    #[test]
    fn soundness_flags_full_distributivity() {
        let names = (1..=5).map(|i| alloc::format!("x{i}")).collect();
        let frame =
            CompatibilityFrame::new(names, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let profile = LogicProfile::new(LogicBase::O).with_full_distributivity();
        let report = check_soundness(&profile, &frame, 200, 7).unwrap();
        assert!(report.violations.iter().any(|v| v.rule == "full-dist"));
    }

    #[test]
    fn bundled_scripts_check_under_their_profiles() {
        let scripts = scripts::all();
        assert_eq!(scripts.len(), 17);
        for script in &scripts {
            script.check().unwrap_or_else(|err| panic!("{}: {err}", script.name));
        }
    }

    #[test]
    fn bundled_script_summaries_state_their_conclusions() {
        for script in scripts::all() {
            let (lhs, rhs) = script
                .summary
                .split_once(" |- ")
                .unwrap_or_else(|| panic!("{}: summary is not a consecution", script.name));
            assert_eq!(script.conclusion(), &seq(lhs, rhs), "{}", script.name);
        }
    }

    #[test]
    fn bundled_scripts_have_unique_names_and_resolve() {
        let scripts = scripts::all();
        let names: BTreeSet<&str> = scripts.iter().map(|s| s.name).collect();
        assert_eq!(names.len(), scripts.len());
        for script in &scripts {
            assert_eq!(scripts::by_name(script.name).map(|s| s.summary), Some(script.summary));
        }
        assert!(scripts::by_name("no-such-script").is_none());
    }

    #[test]
    fn script_profiles_are_minimal_for_the_conditional_principles() {
        // Dropping any single assumed principle must break the script.
        for script in scripts::all() {
            for &dropped in &script.profile.principles.clone() {
                let mut weakened = script.profile.clone();
                weakened.principles.remove(&dropped);
                assert!(
                    check_derivation(&script.derivation, &weakened).is_err(),
                    "{}: principle {} is never used",
                    script.name,
                    dropped.name()
                );
            }
        }
    }
}
