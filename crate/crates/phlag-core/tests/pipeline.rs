//! End-to-end flow through the public library API: publication records →
//! weighted co-occurrence networks → flag filtration → reduced boundary
//! matrix → persistence diagrams, Betti profiles, diagram distances,
//! classical measures, and matched random baselines.

use phlag_core::{
    betti_null_test, betti_profile, bottleneck_distance, build_collaboration_network,
    build_knowledge_network, diagram_from_reduction, enumerate_flag_complex, network_measures,
    reduce, wasserstein_distance, Granularity, NetworkSpec, PublicationRecord, RandomModel,
    RandomModelSpec, DEFAULT_DIMENSION_CAP, DEFAULT_HOMOLOGY_CAP,
};

fn corpus() -> Vec<PublicationRecord> {
    vec![
        PublicationRecord::new("w1", 2001, "phys", ["A", "B", "C"], ["u", "v"]),
        PublicationRecord::new("w2", 2001, "phys", ["A", "B"], ["v"]),
        PublicationRecord::new("w3", 2001, "phys", ["C", "D"], ["w"]),
        PublicationRecord::new("w4", 2002, "phys", ["A", "B", "C", "D"], ["v", "w"]),
        PublicationRecord::new("w5", 2001, "bio", ["X", "Y"], ["z"]),
        PublicationRecord::new("w6", 2003, "phys", [] as [&str; 0], ["u"]),
    ]
}

#[test]
fn records_to_betti_profile() {
    let records = corpus();
    let g = build_knowledge_network(&records, &NetworkSpec::knowledge("phys", 2001)).unwrap();
    // codes A, B, C, D; A–B counted twice, the rest once
    assert_eq!(g.node_count(), 4);
    assert_eq!(g.edge_count(), 4);
    let a = g.symbols().get("A").unwrap();
    let b = g.symbols().get("B").unwrap();
    assert_eq!(g.weight(a, b), Some(2.0));

    let filtration = enumerate_flag_complex(&g, DEFAULT_DIMENSION_CAP).unwrap();
    // 4 vertices + 4 edges + triangle ABC
    assert_eq!(filtration.cell_counts(), vec![4, 4, 1]);
    let reduction = reduce(&filtration, DEFAULT_HOMOLOGY_CAP).unwrap();
    let profile = betti_profile(&filtration, &reduction);
    assert_eq!(profile.betti(0), 1);
    assert_eq!(profile.betti(1), 0);
    assert_eq!(profile.euler_from_cells(), profile.euler_from_betti());

    let diagram = diagram_from_reduction(&filtration, &reduction, true);
    assert_eq!(diagram.essential_count(0), 1);
    // the strong A–B tie (distance 1/2) merges strictly before the rest
    assert!(diagram
        .points_in_dimension(0)
        .any(|p| p.birth == 0.0 && p.death == 0.5));
}

#[test]
fn collaboration_windows_pool_trailing_periods() {
    let records = corpus();
    let spec = NetworkSpec::collaboration("phys", 2002, 2, Granularity::Yearly);
    let g = build_collaboration_network(&records, &spec).unwrap();
    // window {2001, 2002} pools u, v, w; v–w and u–v co-author once each
    assert_eq!(g.node_count(), 3);
    assert_eq!(g.edge_count(), 2);

    let narrow = NetworkSpec::collaboration("phys", 2003, 1, Granularity::Yearly);
    let g = build_collaboration_network(&records, &narrow).unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (1, 0));
}

#[test]
fn diagram_distances_between_periods() {
    let records = corpus();
    let mut diagrams = Vec::new();
    for period in [2001, 2002] {
        let g = build_knowledge_network(&records, &NetworkSpec::knowledge("phys", period)).unwrap();
        let f = enumerate_flag_complex(&g, DEFAULT_DIMENSION_CAP).unwrap();
        let r = reduce(&f, DEFAULT_HOMOLOGY_CAP).unwrap();
        diagrams.push(diagram_from_reduction(&f, &r, true));
    }
    let bottleneck = bottleneck_distance(&diagrams[0], &diagrams[1], 0).unwrap();
    let wasserstein = wasserstein_distance(&diagrams[0], &diagrams[1], 0).unwrap();
    // both connected → one essential class each → finite distances, and
    // the 2-cost accumulation dominates the single worst offset
    assert!(bottleneck.is_finite() && wasserstein.is_finite());
    assert!(bottleneck > 0.0);
    assert!(wasserstein >= bottleneck - 1e-12);

    let self_distance = bottleneck_distance(&diagrams[0], &diagrams[0], 0).unwrap();
    assert_eq!(self_distance, 0.0);
}

#[test]
fn classical_measures_match_hand_counts() {
    let records = corpus();
    let g = build_knowledge_network(&records, &NetworkSpec::knowledge("phys", 2001)).unwrap();
    let m = network_measures(&g);
    assert_eq!((m.node_count, m.edge_count), (4, 4));
    assert!((m.density - 2.0 / 3.0).abs() < 1e-12);
    assert!((m.average_clustering - 7.0 / 12.0).abs() < 1e-12);
    assert_eq!(m.bridge_count, 1);
    assert_eq!(m.isolate_count, 0);
}

#[test]
fn matched_baselines_feed_the_null_test() {
    let records = corpus();
    let g = build_knowledge_network(&records, &NetworkSpec::knowledge("phys", 2001)).unwrap();
    let f = enumerate_flag_complex(&g, DEFAULT_DIMENSION_CAP).unwrap();
    let r = reduce(&f, DEFAULT_HOMOLOGY_CAP).unwrap();
    let observed = betti_profile(&f, &r);

    let spec = RandomModelSpec::matched(RandomModel::ErdosRenyi, &g);
    let mut samples = Vec::new();
    for (param, seed) in spec.instances() {
        let sample = spec.generate(param, seed).unwrap();
        assert_eq!(sample.node_count(), g.node_count());
        assert_eq!(sample.edge_count(), g.edge_count());
        let sf = enumerate_flag_complex(&sample, DEFAULT_DIMENSION_CAP).unwrap();
        let sr = reduce(&sf, DEFAULT_HOMOLOGY_CAP).unwrap();
        samples.push(betti_profile(&sf, &sr));
    }
    assert_eq!(samples.len(), 10);
    for dimension in 0..=1 {
        let t = betti_null_test(&observed, &samples, dimension).unwrap();
        assert!((0.0..=1.0).contains(&t.p));
    }
    // regenerating with the same seeds reproduces the samples exactly
    let again: Vec<_> = spec
        .instances()
        .into_iter()
        .map(|(param, seed)| spec.generate(param, seed).unwrap())
        .collect();
    for (x, y) in again.iter().zip(spec.instances().iter().map(|&(p, s)| spec.generate(p, s).unwrap())) {
        assert_eq!(x.edges(), y.edges());
    }
}

#[test]
fn empty_selection_is_reported_not_fabricated() {
    let records = corpus();
    let err = build_knowledge_network(&records, &NetworkSpec::knowledge("phys", 1999)).unwrap_err();
    assert!(matches!(
        err,
        phlag_core::NetworkError::EmptySelection { ref field, period: 1999 } if field == "phys"
    ));
}
