mod common;

use common::*;
use knot_cluster::quiver::Quiver;
use knot_cluster::LinkDiagram;

#[test]
fn json_fixtures_round_trip_bit_exactly() {
    for name in ["hopf.json", "figure8.json", "borromean.json", "knot2112.json"] {
        let text = fixture_text(name);
        let d = LinkDiagram::from_json(&text).unwrap();
        assert_eq!(d.to_json(), text, "{name}");
    }
}

#[test]
fn pd_fixtures_round_trip() {
    for name in ["hopf.pd", "trefoil.pd", "granny.pd"] {
        let d = fixture(name);
        let again = LinkDiagram::parse_pd(&d.to_pd()).unwrap();
        assert_eq!(d.canonical(), again.canonical(), "{name}");
        assert_eq!(LinkDiagram::from_json(&d.to_json()).unwrap(), d);
    }
}

#[test]
fn hopf_fixture_matches_pd() {
    assert_eq!(fixture("hopf.json"), fixture("hopf.pd"));
}

#[test]
fn figure_eight_quiver_is_as_drawn() {
    let d = fixture("figure8.json");
    assert_eq!((d.n(), d.regions().len(), d.components().len()), (4, 6, 1));
    assert_eq!(Quiver::of_diagram(&d), quiver(8, &FIG8_Q));
    let bigons: Vec<(u32, u32)> = d.find_bigons().iter().map(|b| (b.j, b.k)).collect();
    assert_eq!(bigons, vec![(2, 6), (4, 8)]);
}

#[test]
fn borromean_quiver_is_as_drawn() {
    let d = fixture("borromean.json");
    assert_eq!((d.n(), d.labels().len(), d.components().len()), (6, 12, 3));
    assert!(d.find_bigons().is_empty());
    assert_eq!(d.triangle_regions().len(), 8);
    assert_eq!(Quiver::of_diagram(&d), quiver(12, &BOR_Q));
}

#[test]
fn knot2112_quiver_is_as_drawn() {
    let d = fixture("knot2112.json");
    assert_eq!((d.n(), d.labels().len(), d.components().len()), (6, 12, 1));
    let mut full = Quiver::full_arrows(&d);
    let mut want = K2112_FULL.to_vec();
    full.sort();
    want.sort();
    assert_eq!(full, want);
    let q = Quiver::of_diagram(&d);
    assert_eq!(q, quiver(12, &K2112_FULL));
    assert_eq!(q.arrow_count(), 20);
}
