//! Maximum bipartite matching (layered augmenting paths) and the matching →
//! minimum-vertex-cover construction via alternating reachability.

/// Bipartite graph as left-indexed adjacency over right indices.
#[derive(Clone, Debug)]
pub struct Bipartite {
    pub left: usize,
    pub right: usize,
    pub adj: Vec<Vec<u32>>,
}

impl Bipartite {
    pub fn new(left: usize, right: usize, adj: Vec<Vec<u32>>) -> Self {
        assert_eq!(adj.len(), left);
        debug_assert!(adj.iter().flatten().all(|&r| (r as usize) < right));
        Bipartite { left, right, adj }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug)]
pub struct Matching {
    /// For each left vertex, its matched right partner.
    pub pair_left: Vec<Option<u32>>,
    /// For each right vertex, its matched left partner.
    pub pair_right: Vec<Option<u32>>,
    pub size: usize,
}

const UNREACHED: u32 = u32::MAX;

/// Hopcroft–Karp: repeated layered BFS + DFS augmentation.
pub fn maximum_matching(g: &Bipartite) -> Matching {
    let mut pair_left: Vec<Option<u32>> = vec![None; g.left];
    let mut pair_right: Vec<Option<u32>> = vec![None; g.right];
    let mut layer = vec![UNREACHED; g.left];
    let mut size = 0usize;

    loop {
        // BFS from free left vertices over alternating paths
        let mut queue: std::collections::VecDeque<usize> = (0..g.left)
            .filter(|&u| pair_left[u].is_none())
            .collect();
        layer.fill(UNREACHED);
        for &u in &queue {
            layer[u] = 0;
        }
        let mut found_augmenting = false;
        while let Some(u) = queue.pop_front() {
            for &v in &g.adj[u] {
                match pair_right[v as usize] {
                    None => found_augmenting = true,
                    Some(w) => {
                        let w = w as usize;
                        if layer[w] == UNREACHED {
                            layer[w] = layer[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        if !found_augmenting {
            break;
        }
        for u in 0..g.left {
            if pair_left[u].is_none() && augment(g, u, &mut pair_left, &mut pair_right, &mut layer)
            {
                size += 1;
            }
        }
    }
    Matching { pair_left, pair_right, size }
}

fn augment(
    g: &Bipartite,
    u: usize,
    pair_left: &mut [Option<u32>],
    pair_right: &mut [Option<u32>],
    layer: &mut [u32],
) -> bool {
    for &v in &g.adj[u] {
        let next = pair_right[v as usize];
        let extends = match next {
            None => true,
            Some(w) => {
                layer[w as usize] == layer[u] + 1
                    && augment(g, w as usize, pair_left, pair_right, layer)
            }
        };
        if extends {
            pair_left[u] = Some(v);
            pair_right[v as usize] = Some(u as u32);
            return true;
        }
    }
    layer[u] = UNREACHED; // dead end for this phase
    false
}

#[derive(Clone, Debug)]
pub struct VertexCover {
    pub left_in: Vec<bool>,
    pub right_in: Vec<bool>,
    pub size: usize,
}

impl VertexCover {
    pub fn covers(&self, g: &Bipartite) -> bool {
        g.adj.iter().enumerate().all(|(u, vs)| {
            self.left_in[u] || vs.iter().all(|&v| self.right_in[v as usize])
        })
    }
}

/// Minimum vertex cover from a maximum matching: run alternating
/// reachability from the unmatched left vertices; the cover is the
/// unreached left side plus the reached right side. Its size equals the
/// matching size.
pub fn minimum_vertex_cover(g: &Bipartite) -> VertexCover {
    let matching = maximum_matching(g);
    let mut left_reached = vec![false; g.left];
    let mut right_reached = vec![false; g.right];
    let mut queue: std::collections::VecDeque<usize> = (0..g.left)
        .filter(|&u| matching.pair_left[u].is_none())
        .collect();
    for &u in &queue {
        left_reached[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &g.adj[u] {
            if matching.pair_left[u] == Some(v) {
                continue; // only non-matching edges leave the left side
            }
            let v = v as usize;
            if right_reached[v] {
                continue;
            }
            right_reached[v] = true;
            // a maximum matching leaves no augmenting path, so v is matched
            let w = matching.pair_right[v].expect("reached right vertex must be matched") as usize;
            if !left_reached[w] {
                left_reached[w] = true;
                queue.push_back(w);
            }
        }
    }
    let left_in: Vec<bool> = (0..g.left)
        .map(|u| !left_reached[u])
        .collect();
    let right_in = right_reached;
    let size = left_in.iter().filter(|&&b| b).count() + right_in.iter().filter(|&&b| b).count();
    debug_assert_eq!(size, matching.size, "matching size must equal cover size");
    let cover = VertexCover { left_in, right_in, size };
    debug_assert!(cover.covers(g));
    cover
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_needs_one_vertex() {
        let g = Bipartite::new(1, 1, vec![vec![0]]);
        let cover = minimum_vertex_cover(&g);
        assert_eq!(cover.size, 1);
        assert!(cover.covers(&g));
    }

    #[test]
    fn complete_two_by_three_is_covered_by_the_smaller_side() {
        let g = Bipartite::new(2, 3, vec![vec![0, 1, 2], vec![0, 1, 2]]);
        let cover = minimum_vertex_cover(&g);
        assert_eq!(cover.size, 2);
        assert!(cover.left_in.iter().all(|&b| b));
        assert!(cover.covers(&g));
    }

    #[test]
    fn empty_graph_has_empty_cover() {
        let g = Bipartite::new(3, 3, vec![vec![], vec![], vec![]]);
        assert_eq!(minimum_vertex_cover(&g).size, 0);
    }

    #[test]
    fn path_of_three_edges() {
        // l0-r0, l1-r0, l1-r1, l2-r1: cover {r0, r1}
        let g = Bipartite::new(3, 2, vec![vec![0], vec![0, 1], vec![1]]);
        let cover = minimum_vertex_cover(&g);
        assert_eq!(cover.size, 2);
        assert!(cover.covers(&g));
    }

    #[test]
    fn matching_size_equals_cover_size_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        for seed in 0..40 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let (l, r) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
            let adj: Vec<Vec<u32>> = (0..l)
                .map(|_| (0..r as u32).filter(|_| rng.gen_bool(0.25)).collect())
                .collect();
            let g = Bipartite::new(l, r, adj);
            let m = maximum_matching(&g);
            let c = minimum_vertex_cover(&g);
            assert_eq!(m.size, c.size, "seed {seed}");
            assert!(c.covers(&g), "seed {seed}");
        }
    }
}
