use rand::seq::SliceRandom;
use rand::Rng;

use super::{Method, RankedActor, SeedRanking};
use crate::error::Result;
use crate::graph::{core_numbers, ActorId, MultilayerNetwork};
use crate::num::Real;

/// Actors by degree, highest first. Ties go to the lower actor index, which
/// is external-id order for every network this crate constructs.
pub fn rank_degree<R: Real>(net: &MultilayerNetwork, layer: &str) -> Result<SeedRanking<R>> {
    let l = net.layer(layer)?;
    let mut order: Vec<usize> = (0..net.actor_count()).collect();
    let deg = l.degrees();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    Ok(SeedRanking {
        layer: layer.to_string(),
        method: Method::Degree,
        ranked: order
            .into_iter()
            .map(|i| RankedActor {
                actor: ActorId::from(i),
                score: R::from_count(deg[i]),
            })
            .collect(),
    })
}

/// Actors by core number, then degree, then index. The score packs the
/// pair as `shell * (max_degree + 1) + degree`.
pub fn rank_kshell<R: Real>(net: &MultilayerNetwork, layer: &str) -> Result<SeedRanking<R>> {
    let l = net.layer(layer)?;
    let shell = core_numbers(l);
    let deg = l.degrees();
    let radix = l.max_degree() + 1;
    let mut order: Vec<usize> = (0..net.actor_count()).collect();
    order.sort_by(|&a, &b| shell[b].cmp(&shell[a]).then(deg[b].cmp(&deg[a])).then(a.cmp(&b)));
    Ok(SeedRanking {
        layer: layer.to_string(),
        method: Method::KShell,
        ranked: order
            .into_iter()
            .map(|i| RankedActor {
                actor: ActorId::from(i),
                score: R::from_count(shell[i] as usize * radix + deg[i]),
            })
            .collect(),
    })
}

/// Uniform random permutation of the layer's non-isolated actors.
pub fn rank_random<R: Real, G: Rng + ?Sized>(
    net: &MultilayerNetwork,
    layer: &str,
    rng: &mut G,
) -> Result<SeedRanking<R>> {
    let l = net.layer(layer)?;
    let mut pool: Vec<ActorId> = (0..net.actor_count())
        .map(ActorId::from)
        .filter(|&a| l.degree(a) > 0)
        .collect();
    pool.shuffle(rng);
    let n = pool.len();
    Ok(SeedRanking {
        layer: layer.to_string(),
        method: Method::Random,
        ranked: pool
            .into_iter()
            .enumerate()
            .map(|(i, actor)| RankedActor {
                actor,
                score: R::from_count(n - i),
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::single;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ids<R: Real>(net: &MultilayerNetwork, r: &SeedRanking<R>) -> Vec<String> {
        r.actors().map(|a| net.actors().id(a).to_string()).collect()
    }

    #[test]
    fn degree_examples() {
        let star = single(
            &["1", "2", "3", "4", "c"],
            &[("c", "1"), ("c", "2"), ("c", "3"), ("c", "4")],
        );
        let r = rank_degree::<f64>(&star, "l").unwrap();
        assert_eq!(r.ranked[0].actor, ActorId(4));
        assert_eq!(r.ranked[0].score, 4.0);

        let tri = single(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("1", "3")]);
        assert_eq!(
            ids(&tri, &rank_degree::<f64>(&tri, "l").unwrap()),
            ["1", "2", "3"]
        );

        let path = single(&["A", "B", "C"], &[("A", "B"), ("B", "C")]);
        let r = rank_degree::<f32>(&path, "l").unwrap();
        assert_eq!(ids(&path, &r), ["B", "A", "C"]);
        assert_eq!(r.ranked[0].score, 2.0);
        assert!(rank_degree::<f64>(&path, "zz").is_err());
    }

    #[test]
    fn kshell_examples() {
        let net = single(
            &["1", "2", "3", "4"],
            &[("1", "2"), ("2", "3"), ("1", "3"), ("4", "1")],
        );
        let r = rank_kshell::<f64>(&net, "l").unwrap();
        assert_eq!(ids(&net, &r), ["1", "2", "3", "4"]);
        // shell 2, degree 3, radix 4
        assert_eq!(r.ranked[0].score, 11.0);

        let empty = single(&["b", "a", "c"], &[]);
        let r = rank_kshell::<f64>(&empty, "l").unwrap();
        assert_eq!(ids(&empty, &r), ["b", "a", "c"]);
        assert!(r.ranked.iter().all(|x| x.score == 0.0));

        // two triangles, one with an extra pendant raising node "d"'s degree
        let two = single(
            &["a", "b", "c", "d", "e", "f", "g"],
            &[
                ("a", "b"),
                ("b", "c"),
                ("a", "c"),
                ("d", "e"),
                ("e", "f"),
                ("d", "f"),
                ("d", "g"),
            ],
        );
        let r = rank_kshell::<f64>(&two, "l").unwrap();
        assert_eq!(ids(&two, &r), ["d", "a", "b", "c", "e", "f", "g"]);
    }

    #[test]
    fn random_is_reproducible_and_skips_isolated() {
        let net = single(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c")]);
        let a = rank_random::<f64, _>(&net, "l", &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = rank_random::<f64, _>(&net, "l", &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert!(a.actors().all(|x| x != ActorId(3)));

        let one = single(&["x", "y"], &[("x", "y")]);
        let r = rank_random::<f64, _>(&one, "l", &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn random_first_position_is_uniform() {
        // 4-cycle: all actors non-isolated
        let net = single(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        );
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut first = [0usize; 4];
        for _ in 0..10_000 {
            let r = rank_random::<f64, _>(&net, "l", &mut rng).unwrap();
            first[r.ranked[0].actor.index()] += 1;
        }
        // binomial(10000, 1/4): sd ≈ 43.3, 3σ ≈ 130 < 150
        for c in first {
            assert!((2350..=2650).contains(&c), "{first:?}");
        }
    }

    fn arb_layer() -> impl Strategy<Value = MultilayerNetwork> {
        (
            2usize..40,
            prop::collection::vec((0usize..40, 0usize..40), 0..120),
        )
            .prop_map(|(n, e)| {
                let names: Vec<String> = (0..n).map(|i| format!("{i:03}")).collect();
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                let edges: Vec<(&str, &str)> = e.iter().map(|&(u, v)| (refs[u % n], refs[v % n])).collect();
                single(&refs, &edges)
            })
    }

    proptest! {
        #[test]
        fn degree_top_is_max(net in arb_layer()) {
            let r = rank_degree::<f64>(&net, "l").unwrap();
            let l = net.layer("l").unwrap();
            prop_assert_eq!(l.degree(r.ranked[0].actor), l.max_degree());
            prop_assert!(r.ranked.windows(2).all(|w| w[0].score >= w[1].score));
        }

        #[test]
        fn kshell_is_total_and_shell_dominant(net in arb_layer()) {
            let r = rank_kshell::<f64>(&net, "l").unwrap();
            let l = net.layer("l").unwrap();
            let shell = core_numbers(l);
            prop_assert_eq!(r.len(), net.actor_count());
            prop_assert!(r.ranked.windows(2).all(|w| w[0].score >= w[1].score));
            prop_assert!(r.ranked.windows(2).all(|w| shell[w[0].actor.index()] >= shell[w[1].actor.index()]));
            let mut seen: Vec<_> = r.actors().collect();
            seen.sort();
            seen.dedup();
            prop_assert_eq!(seen.len(), net.actor_count());
        }
    }
}
