use orthomodal::fixtures;
use orthomodal::frame::FrameCondition;

#[test]
fn scratch_functionalize() {
    let out = fixtures::scale_rel().functionalize().unwrap();
    println!("names: {:?}", out.names());
    let reference = fixtures::scale();
    assert_eq!(out.len(), reference.len());
    for x in 0..out.len() {
        println!(
            "{}: nbhd {:07b} vs {:07b}, i={:?} vs {:?}, r={:?}",
            out.names()[x],
            out.neighbours(x),
            reference.neighbours(x),
            out.info(x),
            reference.info(x),
            out.accessible(x),
        );
    }
    out.validate().unwrap();
    for condition in [
        FrameCondition::IRegularity,
        FrameCondition::ITotal,
        FrameCondition::Factivity,
        FrameCondition::Knowability,
    ] {
        println!("{condition:?}: {:?}", out.check_condition(condition));
    }
    assert_eq!(out.all_regular_sets(), reference.all_regular_sets());

    // Identity relation: functionalization is a fixpoint.
    let idframe = fixtures::chain(3)
        .clone()
        .with_r(&[(0, 0), (1, 1), (2, 2)])
        .unwrap();
    let idout = idframe.functionalize().unwrap();
    println!(
        "identity case: {} points, i = {:?}",
        idout.len(),
        (0..idout.len()).map(|x| idout.info(x)).collect::<Vec<_>>()
    );

    // Grid functionalization.
    let grid = fixtures::grid();
    let gout = grid.functionalize().unwrap();
    println!("grid: {} -> {} points", grid.len(), gout.len());
    gout.validate().unwrap();
    for condition in [FrameCondition::IRegularity, FrameCondition::Factivity, FrameCondition::Knowability] {
        println!("grid {condition:?}: {:?}", gout.check_condition(condition).is_ok());
    }
    let cut = fixtures::grid_cut().functionalize().unwrap();
    cut.validate().unwrap();
    for condition in [FrameCondition::IRegularity, FrameCondition::Factivity, FrameCondition::Knowability] {
        println!("grid-cut {condition:?}: {:?}", cut.check_condition(condition).is_ok());
    }
}
