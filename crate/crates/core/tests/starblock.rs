use planar_turan_core::extremal::ConstructionRecipe::{
    Component65, Component66, FourRegular9, GluedStars,
};
use planar_turan_core::starblock::{RefineStatus, RemarkBranch};
use planar_turan_core::{
    audit, build_base, construct, degree_class_report, primary_weight, refine_until_bounded,
    search_extremal, BlockClass, BlockKind, PatternSpec, QuarterWeight,
};

#[test]
fn glued_stars_twelve_has_two_star_blocks() {
    let g = construct(GluedStars(12)).unwrap();
    let base = build_base(&g).unwrap();
    assert_eq!(base.blocks.len(), 2);
    assert!(base
        .blocks
        .iter()
        .all(|b| b.kind == BlockKind::Star5Plus3Minus));
    let shared = base.shared_vertices();
    assert_eq!(shared.len(), 10);
    assert!(shared.iter().all(|v| base.multiplicity(v) == 2));

    let block = base.blocks[0].vertices();
    assert_eq!(block.len(), 11);
    assert_eq!(primary_weight(&g, block), QuarterWeight::from_int(20));

    let a = audit(&g, &base);
    assert!(a.pass);
    assert!(a.ledger.exact && a.ledger.pass);
    assert!(a.multi_block.applies && a.multi_block.pass);
}

#[test]
fn fourteen_vertex_extremal_graph_meets_multi_block_bound() {
    let g = search_extremal(14, PatternSpec::s33(), 30)
        .unwrap()
        .unwrap();
    let base = build_base(&g).unwrap();
    let out = refine_until_bounded(&g, &base, 4).unwrap();
    assert_eq!(out.status, RefineStatus::Resolved);
    let a = audit(&g, &out.base);
    assert!(a.pass);
    assert!(out.base.blocks.len() >= 2);
    // 30 = 5 * 14 / 2 - 5
    assert_eq!(
        QuarterWeight::from_int(g.size() as i64),
        a.multi_block.bound
    );
}

#[test]
fn components_are_single_blocks_at_their_bound() {
    for (r, kind) in [
        (Component66, BlockKind::Edge66),
        (Component65, BlockKind::Edge65),
    ] {
        let g = construct(r).unwrap();
        let base = build_base(&g).unwrap();
        assert_eq!(base.blocks.len(), 1, "{r}");
        let b = &base.blocks[0];
        assert_eq!(b.kind, kind);
        assert_eq!(b.w, QuarterWeight::from_int(15));
        assert_eq!(base.class_of[0], BlockClass::B0);
        let a = audit(&g, &base);
        assert!(a.pass);
        assert_eq!(a.blocks[0].bound, Some(QuarterWeight::from_int(15)));
        assert!(a.single_block.applies && a.single_block.pass);
    }
}

#[test]
fn four_regular_nine_degree_classes() {
    let g = construct(FourRegular9).unwrap();
    let r = degree_class_report(&g).unwrap();
    assert!(r.preconditions_met);
    assert_eq!((r.m3, r.m4, r.m5, r.m6, r.x, r.edges), (0, 9, 0, 0, 0, 18));
    assert_eq!(r.branch, Some(RemarkBranch::NoHigh));
    assert!(r.pass);
}
