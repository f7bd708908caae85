use super::{Method, RankedActor, SeedRanking};
use crate::error::{Error, Result};
use crate::graph::{ActorId, Layer, MultilayerNetwork};
use crate::num::Real;

/// VoteRank on one layer.
///
/// Every actor starts with voting ability 1 and an actor's score is the sum
/// of its neighbors' abilities. Each round elects the highest-scoring
/// unelected actor (lowest index on ties), zeroes its ability and lowers
/// each neighbor's ability by `1 / mean_degree`, floored at zero. Stops
/// after `count` elections or once every remaining score is zero.
pub fn rank_voterank<R: Real>(net: &MultilayerNetwork, layer: &str, count: usize) -> Result<SeedRanking<R>> {
    if count < 1 {
        return Err(Error::InvalidArgument("voterank count must be at least 1".into()));
    }
    let l = net.layer(layer)?;
    Ok(SeedRanking {
        layer: layer.to_string(),
        method: Method::VoteRank,
        ranked: voterank(l, count),
    })
}

fn score_of<R: Real>(l: &Layer, ability: &[R], v: usize) -> R {
    l.neighbors(ActorId::from(v))
        .iter()
        .map(|u| ability[u.index()])
        .sum()
}

fn voterank<R: Real>(l: &Layer, count: usize) -> Vec<RankedActor<R>> {
    let n = l.actor_count();
    let mean = l.mean_degree();
    if n == 0 || mean == 0.0 {
        return Vec::new();
    }
    let penalty = R::one() / R::lit(mean);
    let mut ability = vec![R::one(); n];
    let mut elected = vec![false; n];
    let mut score: Vec<R> = (0..n).map(|v| score_of(l, &ability, v)).collect();
    let mut out = Vec::with_capacity(count.min(n));
    let mut touched: Vec<usize> = Vec::new();
    let mut mark = vec![false; n];

    while out.len() < count {
        let mut best: Option<usize> = None;
        for v in 0..n {
            if elected[v] {
                continue;
            }
            match best {
                Some(b) if score[v] <= score[b] => {}
                _ => best = Some(v),
            }
        }
        let Some(b) = best else { break };
        if score[b] <= R::zero() {
            break;
        }
        out.push(RankedActor {
            actor: ActorId::from(b),
            score: score[b],
        });
        elected[b] = true;
        ability[b] = R::zero();
        let nbrs = l.neighbors(ActorId::from(b));
        for u in nbrs {
            let a = &mut ability[u.index()];
            *a = (*a - penalty).max(R::zero());
        }

        // abilities changed on b and N(b): rescore their neighbors exactly
        touched.clear();
        for &src in std::iter::once(&ActorId::from(b)).chain(nbrs) {
            for w in l.neighbors(src) {
                let w = w.index();
                if !mark[w] {
                    mark[w] = true;
                    touched.push(w);
                }
            }
        }
        for &w in &touched {
            mark[w] = false;
            score[w] = score_of(l, &ability, w);
        }
        score[b] = R::zero();
    }
    out
}
