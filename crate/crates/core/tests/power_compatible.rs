use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wkc_core::abelian::{AbelianGroup, EnumerationMode};
use wkc_core::combinat::{extract_power_compatible, graph_within_power_relation, random_bijection};
use wkc_core::enumerator::{group_order, EnumerationOptions};
use wkc_core::presentations::{build_pairs_presentation, PairSet};

fn order_of(f: &wkc_core::abelian::PointedBijection) -> usize {
    group_order(&build_pairs_presentation(&PairSet::graph(f)).unwrap(), EnumerationOptions::default()).unwrap()
}

// G(A;f) is a quotient of G(A;g) whenever graph(g) sits inside the power
// relation of f, so its order divides.
#[test]
fn extracted_maps_give_order_divisibility() {
    let a = AbelianGroup::elementary(3, 2).unwrap();
    let lines = a.cyclic_subgroups(&a.ordering(EnumerationMode::GradedLex)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..12 {
        let f = random_bijection(&a, &mut rng);
        let n = order_of(&f);
        for g in extract_power_compatible(&f, &lines).unwrap() {
            assert!(g.is_power_compatible());
            assert!(graph_within_power_relation(&g, &f));
            let m = order_of(&g);
            assert_eq!(m % n, 0, "|G(A;f)| = {n} does not divide |G(A;g)| = {m}");
        }
    }
}
