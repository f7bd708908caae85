//! Synthetic inputs for experiments and tests.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{ActorId, ActorTable, Layer, MultilayerNetwork};
use crate::ingest::{Action, InteractionRecord};

fn actor_ids(n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len().max(1);
    (0..n).map(|i| format!("a{i:0width$}")).collect()
}

fn network(n: usize, layers: Vec<(String, Vec<(usize, usize)>)>) -> MultilayerNetwork {
    let table = ActorTable::from_ids(actor_ids(n)).expect("generated ids are unique");
    let layers = layers
        .into_iter()
        .map(|(name, edges)| {
            Layer::from_edges(
                name,
                n,
                edges
                    .into_iter()
                    .map(|(u, v)| (ActorId::from(u), ActorId::from(v))),
            )
            .expect("generated edges are in range")
            .0
        })
        .collect();
    MultilayerNetwork::new(table, layers).expect("generated layers are valid")
}

/// `G(n, p)` on each of `layers` layers, drawn independently.
pub fn erdos_renyi_multiplex<G: Rng + ?Sized>(
    n: usize,
    layers: usize,
    p: f64,
    rng: &mut G,
) -> MultilayerNetwork {
    let layers = (0..layers)
        .map(|l| {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            (format!("l{}", l + 1), edges)
        })
        .collect();
    network(n, layers)
}

/// Barabási–Albert edges: an `m + 1` clique, then every new node attaches
/// to `m` distinct existing nodes chosen proportionally to degree.
pub fn barabasi_albert_edges<G: Rng + ?Sized>(n: usize, m: usize, rng: &mut G) -> Vec<(usize, usize)> {
    assert!(m >= 1 && n > m, "need n > m >= 1");
    let mut edges = Vec::with_capacity(n * m);
    // every endpoint once per incident edge: sampling from it is degree-proportional
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * n * m);
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut targets = HashSet::with_capacity(m);
    for new in m + 1..n {
        targets.clear();
        while targets.len() < m {
            targets.insert(endpoints[rng.gen_range(0..endpoints.len())]);
        }
        let mut chosen: Vec<usize> = targets.iter().copied().collect();
        chosen.sort_unstable();
        for t in chosen {
            edges.push((t, new));
            endpoints.push(t);
            endpoints.push(new);
        }
    }
    edges
}

/// Independent preferential-attachment layers. Each layer relabels its
/// nodes with a fresh random permutation so hubs differ across layers.
pub fn preferential_attachment_multiplex<G: Rng + ?Sized>(
    n: usize,
    m: usize,
    layers: usize,
    rng: &mut G,
) -> MultilayerNetwork {
    let layers = (0..layers)
        .map(|l| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let edges = barabasi_albert_edges(n, m, rng)
                .into_iter()
                .map(|(u, v)| (perm[u], perm[v]))
                .collect();
            (format!("l{}", l + 1), edges)
        })
        .collect();
    network(n, layers)
}

/// Comment/like records with heavy-tailed user activity: user `i` is drawn
/// with weight `(i + 1)^-0.8`. Each post receives `1..=2·mean_likes`
/// like draws and `0..=2·mean_comments` comment draws.
pub fn synthetic_interactions<G: Rng + ?Sized>(
    users: usize,
    posts: usize,
    mean_likes: usize,
    mean_comments: usize,
    rng: &mut G,
) -> Vec<InteractionRecord> {
    assert!(users > 0);
    let width = users.saturating_sub(1).to_string().len();
    let mut cumulative = Vec::with_capacity(users);
    let mut acc = 0.0;
    for i in 0..users {
        acc += ((i + 1) as f64).powf(-0.8);
        cumulative.push(acc);
    }
    let draw = |rng: &mut G| {
        let x = rng.gen::<f64>() * acc;
        cumulative.partition_point(|&c| c <= x).min(users - 1)
    };
    let mut out = Vec::new();
    for p in 0..posts {
        let post = format!("p{p}");
        let likes = rng.gen_range(1..=2 * mean_likes.max(1));
        for _ in 0..likes {
            let u = draw(rng);
            out.push(InteractionRecord::new(
                post.clone(),
                format!("u{u:0width$}"),
                Action::Like,
            ));
        }
        let comments = rng.gen_range(0..=2 * mean_comments);
        for _ in 0..comments {
            let u = draw(rng);
            out.push(InteractionRecord::new(
                post.clone(),
                format!("u{u:0width$}"),
                Action::Comment,
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ba_edge_count_and_min_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let net = preferential_attachment_multiplex(500, 3, 2, &mut rng);
        for l in net.layers() {
            // m(m+1)/2 clique edges + m per later node
            assert_eq!(l.edge_count(), 6 + 3 * (500 - 4));
            assert!(l.degrees().iter().all(|&d| d >= 3));
            assert!(l.max_degree() > 30);
        }
        assert_eq!(net.actors().ids()[0], "a000");
    }

    #[test]
    fn er_density() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let net = erdos_renyi_multiplex(200, 2, 0.1, &mut rng);
        let e = net.edge_count(Some("l1")).unwrap() as f64;
        // mean 1990, sd ≈ 42
        assert!((e - 1990.0).abs() < 200.0, "{e}");
    }

    #[test]
    fn interactions_are_skewed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let recs = synthetic_interactions(100, 200, 5, 2, &mut rng);
        let top = recs.iter().filter(|r| r.user_id == "u00").count();
        let tail = recs.iter().filter(|r| r.user_id == "u99").count();
        assert!(top > 5 * tail.max(1), "{top} vs {tail}");
        assert!(recs.iter().any(|r| r.action == Action::Comment));
    }
}
