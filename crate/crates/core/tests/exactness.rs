mod support;

use crookedlab::format::{parse_plmap, write_plmap};
use crookedlab::pl_map::{BreakpointLimit, Component};
use crookedlab::rational::{midpoint, one, rat, zero};
use crookedlab::PlMap;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::gen::{random_homeomorphism, random_level, random_map};

fn map_from_seed(seed: u64, grid: i64) -> PlMap {
    random_map(&mut ChaCha8Rng::seed_from_u64(seed), grid)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn composition_is_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (f, g, h) = (map_from_seed(s1, 8), map_from_seed(s2, 8), map_from_seed(s3, 8));
        prop_assert!(f.compose(&g).compose(&h).graph_eq(&f.compose(&g.compose(&h))));
    }

    #[test]
    fn composition_evaluates_pointwise(s1 in any::<u64>(), s2 in any::<u64>(), k in 0i64..=97) {
        let (f, g) = (map_from_seed(s1, 12), map_from_seed(s2, 12));
        let x = rat(k, 97);
        prop_assert_eq!(f.compose(&g).eval(&x).unwrap(), f.eval(&g.eval(&x).unwrap()).unwrap());
    }

    #[test]
    fn iterate_splits(seed in any::<u64>(), m in 1usize..4, n in 1usize..4) {
        let f = map_from_seed(seed, 6);
        let lim = BreakpointLimit::default();
        let lhs = f.iterate(m + n, lim).unwrap();
        let rhs = f.iterate(m, lim).unwrap().compose(&f.iterate(n, lim).unwrap());
        prop_assert!(lhs.graph_eq(&rhs));
    }

    #[test]
    fn preimages_are_exact_and_complete(seed in any::<u64>(), yk in 0i64..=16) {
        let f = map_from_seed(seed, 16);
        let y = rat(yk, 16);
        let pre = f.preimage(&y).unwrap();
        for c in pre.iter() {
            prop_assert_eq!(f.eval(c.start()).unwrap(), y.clone());
            prop_assert_eq!(f.eval(c.end()).unwrap(), y.clone());
            prop_assert_eq!(f.eval(&midpoint(c.start(), c.end())).unwrap(), y.clone());
        }
        // Between consecutive components, and outside them, f never hits y.
        let mut cuts = vec![zero()];
        for c in pre.iter() {
            cuts.push(c.start().clone());
            cuts.push(c.end().clone());
        }
        cuts.push(one());
        for w in cuts.chunks(2) {
            if w[0] < w[1] {
                let probe = midpoint(&w[0], &w[1]);
                prop_assert!(!pre.contains(&probe));
                prop_assert_ne!(f.eval(&probe).unwrap(), y.clone());
            }
        }
    }

    #[test]
    fn fixed_points_are_exact(seed in any::<u64>()) {
        let f = map_from_seed(seed, 16);
        let fix = f.fixed_points();
        for c in &fix {
            prop_assert_eq!(f.eval(c.start()).unwrap(), c.start().clone());
            prop_assert_eq!(f.eval(c.end()).unwrap(), c.end().clone());
            if let Component::Interval(a, b) = c {
                let m = midpoint(a, b);
                prop_assert_eq!(f.eval(&m).unwrap(), m);
            }
        }
        for w in fix.windows(2) {
            let m = midpoint(w[0].end(), w[1].start());
            prop_assert_ne!(f.eval(&m).unwrap(), m);
        }
    }

    #[test]
    fn reflection_is_an_involution(seed in any::<u64>()) {
        let f = map_from_seed(seed, 16);
        prop_assert!(f.reflect().reflect().graph_eq(&f));
        prop_assert_eq!(f.reflect().classify_diagonal(), f.classify_diagonal().reflected());
    }

    #[test]
    fn conjugation_round_trips(seed in any::<u64>(), increasing in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_map(&mut rng, 8);
        let h = random_homeomorphism(&mut rng, 6, increasing);
        let g = f.conjugate_by(&h).unwrap();
        let back = g.conjugate_by(&h.inverse().unwrap()).unwrap();
        prop_assert!(back.graph_eq(&f));
        prop_assert_eq!(g.lap_number(), f.lap_number());
        prop_assert_eq!(g.fixed_points().len(), f.fixed_points().len());
        let y = random_level(&mut rng, 8);
        prop_assert_eq!(g.preimage(&h.eval(&y).unwrap()).unwrap().len(), f.preimage(&y).unwrap().len());
    }

    #[test]
    fn plmap_text_round_trips(seed in any::<u64>()) {
        let f = map_from_seed(seed, 24);
        let text = write_plmap(&f);
        let back = parse_plmap(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(write_plmap(&back), text);
    }
}

#[test]
fn tent_iterates_double_their_laps() {
    let its = PlMap::tent().iterates(12, BreakpointLimit::default()).unwrap();
    for (n, g) in its.iter().enumerate() {
        assert_eq!(g.lap_number(), 1 << (n + 1));
    }
}

#[test]
fn iterate_ceiling_is_enforced() {
    let err = PlMap::tent().iterate(12, BreakpointLimit(100)).unwrap_err();
    assert!(matches!(err, crookedlab::Error::ResourceLimit { .. }));
}
