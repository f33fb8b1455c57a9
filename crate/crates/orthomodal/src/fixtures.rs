//! Bundled example structures: the lattices, frames, measures, and
//! probability assignments exercised throughout the test suite and
//! exposed by name to the command-line tools.
//!
//! Everything here is desk-scale data with hand-checkable behaviour:
//!
//! * three small ortholattices ([`benzene`], [`mo2`], [`modal_ten`]),
//!   each realized as the proposition lattice of one of the bundled
//!   frames;
//! * chain and cycle frames ([`chain`], [`cycle4`]) whose regular sets
//!   produce those lattices;
//! * a seven-point [`scale`] with an information function, a five-point
//!   relational variant [`scale_rel`] with its 25-point [`grid`]
//!   product and the surgically altered [`grid_cut`], an eight-point
//!   conditional frame [`cond8`] carrying a selection function, and a
//!   classical two-world space [`worlds2`];
//! * a candidate measure on the ten-element modal lattice
//!   ([`modal_ten_measure`]) and world-based probability assignments
//!   for three frames ([`scale_prob`], [`chain4_prob`],
//!   [`worlds2_prob`]).
//!
//! Each family has a by-name lookup ([`lattice`], [`frame`],
//! [`measure`], [`assignment`]) over a published name list
//! ([`LATTICES`], [`FRAMES`], [`MEASURES`], [`ASSIGNMENTS`]), so tools
//! can expose the whole bundle without hardcoding constructors.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::frame::CompatibilityFrame;
use crate::lattice::FiniteOrtholattice;
use crate::probability::{ratio, OrthoMeasure, ProbabilityAssignment};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// The six-element benzene ring: two incomparable chains `0 < a < b < 1`
/// and `0 < nb < na < 1` with `¬a = na` and `¬b = nb`. The smallest
/// ortholattice that is not orthomodular (`a ≤ b` but
/// `a ∨ (¬a ∧ b) = a`); it is the proposition lattice of [`chain`]`(4)`.
pub fn benzene() -> FiniteOrtholattice {
    FiniteOrtholattice::from_order(
        names(&["0", "a", "nb", "b", "na", "1"]),
        &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)],
        vec![5, 4, 3, 2, 1, 0],
    )
    .expect("benzene data is well-formed")
}

/// The six-element lantern: four pairwise-incomparable elements
/// `a, na, b, nb` squeezed between the bounds. Orthomodular but not
/// distributive (`a ∧ (b ∨ nb) = a` yet `(a ∧ b) ∨ (a ∧ nb) = 0`); it
/// is the proposition lattice of [`cycle4`].
pub fn mo2() -> FiniteOrtholattice {
    FiniteOrtholattice::from_order(
        names(&["0", "a", "na", "b", "nb", "1"]),
        &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 5), (3, 5), (4, 5)],
        vec![5, 2, 1, 4, 3, 0],
    )
    .expect("mo2 data is well-formed")
}

/// The ten-element modal ortholattice generated by one proposition `p`
/// under an introspective box: `0, □p, p, ◇p∧◇¬p, □¬p, □p∨□¬p, ¬p,
/// ◇p, ◇¬p, 1`, with every fully modal element a fixed point of `□`.
/// Not orthomodular and not pseudocomplemented. As a bare ortholattice
/// it is the proposition lattice of [`chain`]`(5)`; with its box it is
/// realized index-for-index by [`scale`] (see the module tests).
pub fn modal_ten() -> FiniteOrtholattice {
    FiniteOrtholattice::from_order(
        names(&[
            "0",
            "box-p",
            "p",
            "poss-both",
            "box-not-p",
            "box-either",
            "not-p",
            "poss-p",
            "poss-not-p",
            "1",
        ]),
        &[
            (0, 1),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 5),
            (2, 7),
            (3, 7),
            (3, 8),
            (4, 5),
            (4, 6),
            (5, 9),
            (6, 8),
            (7, 9),
            (8, 9),
        ],
        vec![9, 8, 6, 5, 7, 3, 2, 4, 1, 0],
    )
    .and_then(|lattice| lattice.with_box(vec![0, 1, 1, 3, 4, 5, 4, 7, 8, 9]))
    .expect("modal-ten data is well-formed")
}

/// A chain of `n ≥ 1` possibilities `x1 – x2 – … – xn`, each compatible
/// only with its immediate neighbours. The four-point chain realizes
/// [`benzene`]; the five-point chain realizes the ortholattice shape of
/// [`modal_ten`].
pub fn chain(n: usize) -> CompatibilityFrame {
    let labels: Vec<String> = (1..=n).map(|k| alloc::format!("x{k}")).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|k| (k - 1, k)).collect();
    CompatibilityFrame::new(labels, &edges).expect("chain data is well-formed")
}

/// Four possibilities in a cycle, so that opposite corners are the only
/// incompatible pairs; realizes [`mo2`].
pub fn cycle4() -> CompatibilityFrame {
    CompatibilityFrame::new(
        names(&["x1", "x2", "x3", "x4"]),
        &[(0, 1), (1, 2), (2, 3), (0, 3)],
    )
    .expect("cycle data is well-formed")
}

/// The seven-point scale: five chained sharp possibilities `x1 … x5`
/// for a graded question, plus two broad information states — `y`
/// compatible with `x1 … x4`, and `z` compatible with `x2 … x5`. The
/// information function sends `x2` to `y` and `x4` to `z`; every other
/// possibility is its own information state. Grounding the atom `p` as
/// `{x1, x2}` turns its ten regular sets into [`modal_ten`].
pub fn scale() -> CompatibilityFrame {
    CompatibilityFrame::new(
        names(&["x1", "x2", "x3", "x4", "x5", "y", "z"]),
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (0, 5),
            (1, 5),
            (2, 5),
            (3, 5),
            (1, 6),
            (2, 6),
            (3, 6),
            (4, 6),
            (5, 6),
        ],
    )
    .and_then(|frame| {
        frame.with_i(vec![
            Some(0),
            Some(5),
            Some(2),
            Some(6),
            Some(4),
            Some(5),
            Some(6),
        ])
    })
    .expect("scale data is well-formed")
}

/// A five-point chain carrying an explicit accessibility relation in
/// place of an information function: the endpoints and the midpoint see
/// only themselves, while `x2` sees `x1, x2, x3` and `x4` sees
/// `x3, x4, x5`.
pub fn scale_rel() -> CompatibilityFrame {
    CompatibilityFrame::new(
        names(&["x1", "x2", "x3", "x4", "x5"]),
        &[(0, 1), (1, 2), (2, 3), (3, 4)],
    )
    .and_then(|frame| {
        frame.with_r(&[
            (0, 0),
            (1, 0),
            (1, 1),
            (1, 2),
            (2, 2),
            (3, 2),
            (3, 3),
            (3, 4),
            (4, 4),
        ])
    })
    .expect("relational scale data is well-formed")
}

/// The 25-point componentwise product of [`scale_rel`] with itself; its
/// proposition lattice has 1,942 elements.
pub fn grid() -> CompatibilityFrame {
    let base = scale_rel();
    base.product(&base).expect("the product stays within the size bound")
}

/// [`grid`] with a single accessibility edge removed: the coarse point
/// `(x4, x4)` no longer sees the centre `(x3, x3)`. Compatibility is
/// untouched, so the propositions are unchanged while the box operator
/// differs.
pub fn grid_cut() -> CompatibilityFrame {
    let grid = grid();
    let from = grid.index_of("(x4, x4)").expect("grid names its points by coordinates");
    let to = grid.index_of("(x3, x3)").expect("grid names its points by coordinates");
    grid.without_r_edge(from, to).expect("grid carries an accessibility relation")
}

/// The conditional scale: [`scale`] extended with one further
/// information state `u`, compatible with everything except the
/// midpoint `x3` and serving as its own information state. The
/// grounding family interprets one Boolean atom as `{x1, x2}`; the
/// proposition family keeps the ten scale propositions (with `u`
/// joining `{x1, x5}`); and the selection function sends each
/// possibility, for each nonempty antecedent proposition, to a nearest
/// possibility settling that antecedent.
pub fn cond8() -> CompatibilityFrame {
    let mut selection = BTreeMap::new();
    let rows: [(u64, [usize; 8]); 9] = [
        (1, [0; 8]),
        (3, [0; 8]),
        (4, [2; 8]),
        (16, [4; 8]),
        (24, [4; 8]),
        (39, [0, 1, 2, 5, 5, 5, 5, 5]),
        (92, [6, 6, 2, 3, 4, 6, 6, 6]),
        (145, [0, 0, 7, 4, 4, 7, 7, 7]),
        (255, [0, 1, 2, 3, 4, 5, 6, 7]),
    ];
    for (antecedent, targets) in rows {
        for (x, &y) in targets.iter().enumerate() {
            selection.insert((x, antecedent), y);
        }
    }
    CompatibilityFrame::new(
        names(&["x1", "x2", "x3", "x4", "x5", "y", "z", "u"]),
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (0, 5),
            (1, 5),
            (2, 5),
            (3, 5),
            (1, 6),
            (2, 6),
            (3, 6),
            (4, 6),
            (5, 6),
            (0, 7),
            (1, 7),
            (3, 7),
            (4, 7),
            (5, 7),
            (6, 7),
        ],
    )
    .and_then(|frame| {
        frame.with_i(vec![
            Some(0),
            Some(5),
            Some(2),
            Some(6),
            Some(4),
            Some(5),
            Some(6),
            Some(7),
        ])
    })
    .and_then(|frame| frame.with_bool_family(vec![0, 3, 24, 255]))
    .and_then(|frame| frame.with_prop_family(vec![0, 1, 3, 4, 16, 24, 39, 92, 145, 255]))
    .and_then(|frame| frame.with_selection(selection))
    .expect("conditional scale data is well-formed")
}

/// Two incompatible possibilities, each its own information state: a
/// classical two-world space where every set is a proposition.
pub fn worlds2() -> CompatibilityFrame {
    CompatibilityFrame::new(names(&["w1", "w2"]), &[])
        .and_then(|frame| frame.with_i(vec![Some(0), Some(1)]))
        .expect("two-world data is well-formed")
}

/// An introspective probability measure on [`modal_ten`], paired with
/// that lattice: `p` gets 9/10, `◇p`, `◇¬p`, and their conjunction get
/// 1, and every `□`-proposition gets 0. The orthogonal pair `□p`, `¬p`
/// does not commute (it generates a hexagon), so its join `1` may — and
/// does — exceed the sum `0 + 1/10`; on every commuting pair the
/// measure is exactly additive, and it is monotone throughout, so
/// [`OrthoMeasure::check`] accepts it. Its signature feature is a
/// strict total-probability gap: `μ(◇p) = 1`, yet conditioning on `p`
/// versus `¬p` and recombining yields only 9/10.
pub fn modal_ten_measure() -> (FiniteOrtholattice, OrthoMeasure) {
    let lattice = modal_ten();
    let measure = OrthoMeasure::new(vec![
        ratio(0, 1),
        ratio(0, 1),
        ratio(9, 10),
        ratio(1, 1),
        ratio(0, 1),
        ratio(0, 1),
        ratio(1, 10),
        ratio(1, 1),
        ratio(1, 1),
        ratio(1, 1),
    ]);
    (lattice, measure)
}

/// The 0/1 measure induced by a world: probability 1 on exactly the
/// propositions containing it.
fn world_measure(frame: &CompatibilityFrame, world: usize) -> OrthoMeasure {
    let values = frame
        .prop_family()
        .into_iter()
        .map(|set| if set & (1 << world) != 0 { ratio(1, 1) } else { ratio(0, 1) })
        .collect();
    OrthoMeasure::new(values)
}

/// The scale with comparative-probability structure. Three measures on
/// the ten-element proposition lattice circulate: the 0/1 measures of
/// the endpoint worlds `x1` and `x5`, and the graded measure of
/// [`modal_ten_measure`], which is certain of `↓x3`, `↓y`, and `↓z` at
/// once. Each possibility carries every measure certain of its own
/// information state: the endpoints keep their world measure alone,
/// `x3` keeps the graded measure alone, and the mixed possibilities
/// hold their endpoint's measure alongside the graded one. All five
/// bundled probability conditions hold, and `□A` coincides with
/// `{x | ∀μ: μ(A) = 1}` for every regular `A`.
pub fn scale_prob() -> (CompatibilityFrame, ProbabilityAssignment) {
    let frame = scale();
    let at_x1 = world_measure(&frame, 0);
    let at_x5 = world_measure(&frame, 4);
    let graded = modal_ten_measure().1;
    let assignment = ProbabilityAssignment::new(vec![
        vec![at_x1.clone()],
        vec![at_x1.clone(), graded.clone()],
        vec![graded.clone()],
        vec![at_x5.clone(), graded.clone()],
        vec![at_x5.clone()],
        vec![at_x1, graded.clone()],
        vec![at_x5, graded],
    ]);
    (frame, assignment)
}

/// The four-point chain as a probability frame: every possibility is
/// its own information state, the end worlds `x1` and `x4` induce 0/1
/// measures, and each possibility carries its nearer end's measure.
/// Satisfies every bundled condition except positive coverage: at
/// `x2`, certainty about `↓x2` forces probability 0 on the compatible
/// set `↓x3`.
pub fn chain4_prob() -> (CompatibilityFrame, ProbabilityAssignment) {
    let frame = chain(4)
        .with_i(vec![Some(0), Some(1), Some(2), Some(3)])
        .expect("information map fits the chain");
    let at_x1 = world_measure(&frame, 0);
    let at_x4 = world_measure(&frame, 3);
    let assignment = ProbabilityAssignment::new(vec![
        vec![at_x1.clone()],
        vec![at_x1],
        vec![at_x4.clone()],
        vec![at_x4],
    ]);
    (frame, assignment)
}

/// The classical control case: on [`worlds2`] each world carries its
/// own 0/1 measure, and every bundled probability condition holds.
pub fn worlds2_prob() -> (CompatibilityFrame, ProbabilityAssignment) {
    let frame = worlds2();
    let at_w1 = world_measure(&frame, 0);
    let at_w2 = world_measure(&frame, 1);
    let assignment = ProbabilityAssignment::new(vec![vec![at_w1], vec![at_w2]]);
    (frame, assignment)
}

/// Names accepted by [`lattice`].
pub const LATTICES: &[&str] = &["benzene", "mo2", "modal-ten"];

/// Names accepted by [`frame`].
pub const FRAMES: &[&str] = &[
    "chain4",
    "cycle4",
    "chain5",
    "scale",
    "scale-rel",
    "grid",
    "grid-cut",
    "cond8",
    "worlds2",
];

/// Names accepted by [`measure`].
pub const MEASURES: &[&str] = &["modal-ten-measure"];

/// Names accepted by [`assignment`].
pub const ASSIGNMENTS: &[&str] = &["scale-prob", "chain4-prob", "worlds2-prob"];

/// Look up a bundled lattice by name.
pub fn lattice(name: &str) -> Option<FiniteOrtholattice> {
    match name {
        "benzene" => Some(benzene()),
        "mo2" => Some(mo2()),
        "modal-ten" => Some(modal_ten()),
        _ => None,
    }
}

/// Look up a bundled frame by name.
pub fn frame(name: &str) -> Option<CompatibilityFrame> {
    match name {
        "chain4" => Some(chain(4)),
        "cycle4" => Some(cycle4()),
        "chain5" => Some(chain(5)),
        "scale" => Some(scale()),
        "scale-rel" => Some(scale_rel()),
        "grid" => Some(grid()),
        "grid-cut" => Some(grid_cut()),
        "cond8" => Some(cond8()),
        "worlds2" => Some(worlds2()),
        _ => None,
    }
}

/// Look up a bundled measure by name, paired with its lattice.
pub fn measure(name: &str) -> Option<(FiniteOrtholattice, OrthoMeasure)> {
    match name {
        "modal-ten-measure" => Some(modal_ten_measure()),
        _ => None,
    }
}

/// Look up a bundled probability assignment by name, paired with its
/// frame.
pub fn assignment(name: &str) -> Option<(CompatibilityFrame, ProbabilityAssignment)> {
    match name {
        "scale-prob" => Some(scale_prob()),
        "chain4-prob" => Some(chain4_prob()),
        "worlds2-prob" => Some(worlds2_prob()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::FrameCondition;
    use crate::probability::{total_probability_gap, ProbCondition};

    #[test]
    fn every_bundled_name_resolves_and_unknown_names_do_not() {
        for name in LATTICES {
            assert!(lattice(name).is_some(), "missing lattice {name}");
        }
        for name in FRAMES {
            assert!(frame(name).is_some(), "missing frame {name}");
        }
        for name in MEASURES {
            assert!(measure(name).is_some(), "missing measure {name}");
        }
        for name in ASSIGNMENTS {
            assert!(assignment(name).is_some(), "missing assignment {name}");
        }
        assert!(lattice("no-such").is_none());
        assert!(frame("no-such").is_none());
        assert!(measure("no-such").is_none());
        assert!(assignment("no-such").is_none());
    }

    #[test]
    fn bundled_lattices_satisfy_the_ortholattice_equations() {
        for name in LATTICES {
            lattice(name)
                .unwrap()
                .check_lattice()
                .unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn small_frames_have_their_expected_proposition_families() {
        assert_eq!(chain(4).all_regular_sets(), vec![0, 1, 3, 8, 12, 15]);
        assert_eq!(chain(5).all_regular_sets(), vec![0, 1, 3, 4, 7, 16, 17, 24, 28, 31]);
        assert_eq!(cycle4().all_regular_sets(), vec![0, 1, 2, 4, 8, 15]);
        assert_eq!(scale().all_regular_sets(), vec![0, 1, 3, 4, 16, 17, 24, 39, 92, 127]);
        assert_eq!(worlds2().all_regular_sets(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn the_scale_realizes_the_ten_element_modal_lattice_index_for_index() {
        let reference = modal_ten();
        let realized = scale().proposition_lattice().unwrap();
        assert_eq!(realized.len(), reference.len());
        for a in 0..reference.len() {
            assert_eq!(realized.neg(a), reference.neg(a), "negation at {a}");
            assert_eq!(realized.box_of(a), reference.box_of(a), "box at {a}");
            for b in 0..reference.len() {
                assert_eq!(
                    realized.is_leq(a, b),
                    reference.is_leq(a, b),
                    "order at ({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn conditional_frame_passes_validation_and_core_selection_conditions() {
        let frame = cond8();
        frame.validate().unwrap();
        for condition in [
            FrameCondition::IRegularity,
            FrameCondition::Factivity,
            FrameCondition::Id,
            FrameCondition::Center,
            FrameCondition::MustCenter,
            FrameCondition::Update,
        ] {
            frame
                .check_condition(condition)
                .unwrap_or_else(|e| panic!("{e}"));
        }
    }

    #[test]
    fn the_bundled_measure_validates_and_shows_the_total_probability_gap() {
        let (lattice, measure) = modal_ten_measure();
        assert_eq!(measure.check(&lattice), Ok(()));
        assert_eq!(measure.is_introspective(&lattice), Ok(true));
        // The lone non-commuting orthogonal pairs mix a box with the
        // opposite plain proposition; additivity is not imposed there.
        let box_p = lattice.index_of("box-p").unwrap();
        let not_p = lattice.index_of("not-p").unwrap();
        assert!(lattice.is_leq(box_p, lattice.neg(not_p)));
        assert!(!lattice.commutes(box_p, not_p));
        let poss_p = lattice.index_of("poss-p").unwrap();
        let p = lattice.index_of("p").unwrap();
        let (plain, split) = total_probability_gap(&lattice, &measure, poss_p, p).unwrap();
        assert_eq!(plain, ratio(1, 1));
        assert_eq!(split, ratio(9, 10));
    }

    #[test]
    fn bundled_assignments_validate_and_match_their_condition_profiles() {
        for name in ASSIGNMENTS {
            let (frame, assignment) = assignment(name).unwrap();
            assignment
                .validate(&frame)
                .unwrap_or_else(|e| panic!("{name}: {e}"));
        }

        let all = [
            ProbCondition::PRegularity,
            ProbCondition::KnowabilityP,
            ProbCondition::Sharp,
            ProbCondition::AllOne,
            ProbCondition::SomeNonzero,
        ];

        let (frame, assignment) = worlds2_prob();
        for condition in all {
            assert_eq!(
                assignment.check_condition(&frame, condition),
                Ok(None),
                "worlds2-prob should satisfy {}",
                condition.name()
            );
        }

        let (frame, assignment) = chain4_prob();
        for condition in [
            ProbCondition::PRegularity,
            ProbCondition::KnowabilityP,
            ProbCondition::Sharp,
            ProbCondition::AllOne,
        ] {
            assert_eq!(
                assignment.check_condition(&frame, condition),
                Ok(None),
                "chain4-prob should satisfy {}",
                condition.name()
            );
        }
        let failure = assignment
            .check_condition(&frame, ProbCondition::SomeNonzero)
            .unwrap()
            .expect("certainty at x2 forces a zero on the compatible down-set of x3");
        assert_eq!(failure.witness, vec![String::from("x2"), String::from("x3")]);

        let (frame, assignment) = scale_prob();
        for condition in all {
            assert_eq!(
                assignment.check_condition(&frame, condition),
                Ok(None),
                "scale-prob should satisfy {}",
                condition.name()
            );
        }
    }

    #[test]
    fn the_grid_cut_removes_exactly_one_accessibility_edge() {
        let whole = grid();
        let cut = grid_cut();
        assert_eq!(whole.len(), 25);
        let from = whole.index_of("(x4, x4)").unwrap();
        let to = whole.index_of("(x3, x3)").unwrap();
        for x in 0..whole.len() {
            assert_eq!(whole.neighbours(x), cut.neighbours(x), "compatibility at {x}");
            let before = whole.accessible(x).unwrap();
            let after = cut.accessible(x).unwrap();
            if x == from {
                assert_eq!(after, before & !(1 << to));
                assert_ne!(after, before);
            } else {
                assert_eq!(after, before, "accessibility at {x}");
            }
        }
    }
}
