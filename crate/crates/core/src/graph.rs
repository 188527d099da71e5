//! Undirected simple graphs over vertex ids `0..vertex_count`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Symmetric adjacency without self-loops; neighbour lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    neighbours: Vec<Vec<usize>>,
}

impl AdjacencyGraph {
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut sets = vec![BTreeSet::new(); vertex_count];
        for (p, q) in edges {
            if p != q {
                sets[p].insert(q);
                sets[q].insert(p);
            }
        }
        Self {
            neighbours: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbours.len()
    }

    pub fn neighbours(&self, p: usize) -> &[usize] {
        &self.neighbours[p]
    }

    pub fn degree(&self, p: usize) -> usize {
        self.neighbours[p].len()
    }

    pub fn has_edge(&self, p: usize, q: usize) -> bool {
        self.neighbours[p].binary_search(&q).is_ok()
    }

    /// Edges `(p, q)` with `p < q`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbours
            .iter()
            .enumerate()
            .flat_map(|(p, ns)| ns.iter().filter(move |&&q| q > p).map(move |&q| (p, q)))
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        self.is_connected_within(&all)
    }

    /// Connectivity of the subgraph induced on `subset`.
    pub fn is_connected_within(&self, subset: &[usize]) -> bool {
        let mask = self.mask(subset);
        let Some(&start) = subset.first() else {
            return true;
        };
        let mut seen = vec![false; self.vertex_count()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(p) = queue.pop_front() {
            for &q in &self.neighbours[p] {
                if mask[q] && !seen[q] {
                    seen[q] = true;
                    count += 1;
                    queue.push_back(q);
                }
            }
        }
        count == subset.iter().collect::<BTreeSet<_>>().len()
    }

    /// Cut vertices of the subgraph induced on `subset`, ascending.
    pub fn articulation_points(&self, subset: &[usize]) -> Vec<usize> {
        let mask = self.mask(subset);
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;

        let mut roots: Vec<usize> = subset.to_vec();
        roots.sort_unstable();
        roots.dedup();
        for root in roots {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbour index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(frame) = stack.last_mut() {
                let (p, parent, idx) = *frame;
                if let Some(&q) = self.neighbours[p].get(idx) {
                    frame.2 += 1;
                    if !mask[q] || q == parent {
                        continue;
                    }
                    if disc[q] == usize::MAX {
                        disc[q] = timer;
                        low[q] = timer;
                        timer += 1;
                        if p == root {
                            root_children += 1;
                        }
                        stack.push((q, p, 0));
                    } else {
                        low[p] = low[p].min(disc[q]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[p]);
                        if parent != root && low[p] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&p| is_cut[p]).collect()
    }

    /// Connected and free of cut vertices on the induced subgraph; needs at
    /// least three vertices.
    pub fn is_two_connected(&self, subset: &[usize]) -> Result<bool> {
        let distinct: BTreeSet<usize> = subset.iter().copied().collect();
        if distinct.len() < 3 {
            return Err(Error::InvalidParameter(format!(
                "2-connectivity needs at least 3 vertices, got {}",
                distinct.len()
            )));
        }
        if let Some(&bad) = distinct.iter().find(|&&p| p >= self.vertex_count()) {
            return Err(Error::InvalidParameter(format!(
                "vertex {bad} out of range"
            )));
        }
        Ok(self.is_connected_within(subset) && self.articulation_points(subset).is_empty())
    }

    /// Breadth-first shortest path from `from` to `to` inside `subset`,
    /// neighbours visited in ascending id order.
    pub fn shortest_path_within(
        &self,
        subset: &[usize],
        from: usize,
        to: usize,
    ) -> Option<Vec<usize>> {
        let mask = self.mask(subset);
        if !mask[from] || !mask[to] {
            return None;
        }
        let mut parent = vec![usize::MAX; self.vertex_count()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(p) = queue.pop_front() {
            if p == to {
                break;
            }
            for &q in &self.neighbours[p] {
                if mask[q] && parent[q] == usize::MAX {
                    parent[q] = p;
                    queue.push_back(q);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    fn mask(&self, subset: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.vertex_count()];
        for &p in subset {
            if p < mask.len() {
                mask[p] = true;
            }
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> AdjacencyGraph {
        AdjacencyGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn cycles_are_two_connected() {
        let g = cycle(5);
        let all: Vec<_> = (0..5).collect();
        assert!(g.is_two_connected(&all).unwrap());
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn path_has_inner_cut_vertices() {
        let g = AdjacencyGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        let all: Vec<_> = (0..4).collect();
        assert_eq!(g.articulation_points(&all), vec![1, 2]);
        assert!(!g.is_two_connected(&all).unwrap());
    }

    #[test]
    fn induced_subgraph_can_lose_connectivity() {
        let g = cycle(6);
        assert!(!g.is_connected_within(&[0, 1, 3, 4]));
        assert!(g.is_connected_within(&[0, 1, 2]));
        assert!(!g.is_two_connected(&[0, 1, 2]).unwrap());
    }

    #[test]
    fn too_small_for_two_connectivity() {
        let g = cycle(4);
        assert!(matches!(
            g.is_two_connected(&[0, 1]),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn bfs_prefers_lowest_ids() {
        // square 0-1-3, 0-2-3
        let g = AdjacencyGraph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(
            g.shortest_path_within(&[0, 1, 2, 3], 0, 3),
            Some(vec![0, 1, 3])
        );
        assert_eq!(
            g.shortest_path_within(&[0, 2, 3], 0, 3),
            Some(vec![0, 2, 3])
        );
        assert_eq!(g.shortest_path_within(&[0, 3], 0, 3), None);
        assert_eq!(g.shortest_path_within(&[0, 1], 1, 1), Some(vec![1]));
    }
}
