use super::{ActorId, Layer};

/// Core number of every actor in one layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellAssignment {
    pub layer: String,
    pub shell: Vec<u32>,
}

impl ShellAssignment {
    pub fn get(&self, a: ActorId) -> u32 {
        self.shell[a.index()]
    }

    pub fn max_shell(&self) -> u32 {
        self.shell.iter().copied().max().unwrap_or(0)
    }
}

/// Core numbers by bucketed minimum-degree peeling (Batagelj–Zaversnik).
///
/// Runs in O(n + m). Isolated actors get core number 0.
pub fn core_numbers(layer: &Layer) -> Vec<u32> {
    let n = layer.actor_count();
    if n == 0 {
        return Vec::new();
    }
    let mut deg: Vec<usize> = layer.degrees();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = start of the degree-d block in `vert`
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for &u in layer.neighbors(ActorId::from(v)) {
            let u = u.index();
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg.into_iter().map(|d| d as u32).collect()
}


#[cfg(test)]
mod tests {
    use super::oracle::peel;
    use super::*;
    use crate::graph::fixtures::single;
    use proptest::prelude::*;

    fn shells(net: &crate::graph::MultilayerNetwork) -> Vec<u32> {
        net.k_core("l").unwrap().shell
    }

    #[test]
    fn triangle_with_pendant() {
        let net = single(
            &["1", "2", "3", "4"],
            &[("1", "2"), ("2", "3"), ("1", "3"), ("4", "1")],
        );
        assert_eq!(shells(&net), vec![2, 2, 2, 1]);
        assert_eq!(peel(&net.layers()[0]), vec![2, 2, 2, 1]);
    }

    #[test]
    fn path_and_edgeless() {
        let path = single(&["1", "2", "3"], &[("1", "2"), ("2", "3")]);
        assert_eq!(shells(&path), vec![1, 1, 1]);
        let empty = single(&["1", "2", "3"], &[]);
        assert_eq!(shells(&empty), vec![0, 0, 0]);
    }

    #[test]
    fn clique_core() {
        let ids: Vec<String> = (0..6).map(|i| i.to_string()).collect();
        let id_refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        let mut edges = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                edges.push((id_refs[i], id_refs[j]));
            }
        }
        let net = single(&id_refs, &edges);
        assert_eq!(shells(&net), vec![5; 6]);
    }

    fn random_layer(n: usize, edges: &[(usize, usize)]) -> Layer {
        let e = edges
            .iter()
            .map(|&(u, v)| (ActorId::from(u % n), ActorId::from(v % n)));
        Layer::from_edges("l", n, e).unwrap().0
    }

    proptest! {
        #[test]
        fn matches_peeling_oracle(n in 1usize..60, edges in prop::collection::vec((0usize..60, 0usize..60), 0..200)) {
            let layer = random_layer(n, &edges);
            prop_assert_eq!(core_numbers(&layer), peel(&layer));
        }

        #[test]
        fn soundness(n in 1usize..60, edges in prop::collection::vec((0usize..60, 0usize..60), 0..200)) {
            let layer = random_layer(n, &edges);
            let shell = core_numbers(&layer);
            for v in 0..n {
                let k = shell[v];
                let inside = layer.neighbors(ActorId::from(v)).iter().filter(|u| shell[u.index()] >= k).count();
                prop_assert!(inside as u32 >= k);
                if layer.degree(ActorId::from(v)) == 0 {
                    prop_assert_eq!(k, 0);
                }
            }
        }

        #[test]
        fn edge_order_irrelevant(n in 1usize..40, mut edges in prop::collection::vec((0usize..40, 0usize..40), 0..120)) {
            let a = core_numbers(&random_layer(n, &edges));
            edges.reverse();
            let flipped: Vec<_> = edges.iter().map(|&(u, v)| (v, u)).collect();
            prop_assert_eq!(a, core_numbers(&random_layer(n, &flipped)));
        }
    }
}
