//! Small undirected graphs on facet indices and clique enumeration.

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn from_predicate(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i].insert(j);
        self.adj[j].insert(i);
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &FixedBitSet {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Self::from_predicate(n, |i, j| !self.has_edge(i, j))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(a, &i)| set[a + 1..].iter().all(|&j| self.has_edge(i, j)))
    }

    /// All cliques with exactly `k` vertices, each sorted, in lexicographic order.
    pub fn cliques_of_size(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        let mut all = FixedBitSet::with_capacity(self.len());
        all.insert_range(..);
        self.extend_fixed(k, &mut current, &all, &mut out);
        out
    }

    fn extend_fixed(&self, k: usize, current: &mut Vec<usize>, candidates: &FixedBitSet, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        if current.len() + candidates.count_ones(..) < k {
            return;
        }
        for v in candidates.ones() {
            let mut next = candidates.clone();
            next.intersect_with(&self.adj[v]);
            next.set_range(..v + 1, false);
            current.push(v);
            self.extend_fixed(k, current, &next, out);
            current.pop();
        }
    }

    /// All inclusion-maximal cliques (Bron–Kerbosch with Tomita pivoting),
    /// each sorted, returned in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        let x = FixedBitSet::with_capacity(n);
        let mut r = Vec::new();
        self.bron_kerbosch(&mut r, p, x, &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet, out: &mut Vec<Vec<usize>>) {
        if p.is_clear() {
            if x.is_clear() {
                out.push(r.clone());
            }
            return;
        }
        // pivot maximizing |P ∩ N(u)| over u ∈ P ∪ X
        let pivot =
            p.ones().chain(x.ones()).max_by_key(|&u| p.intersection(&self.adj[u]).count()).expect("P is nonempty");
        let mut branch = p.clone();
        branch.difference_with(&self.adj[pivot]);
        for v in branch.ones() {
            let mut p_next = p.clone();
            p_next.intersect_with(&self.adj[v]);
            let mut x_next = x.clone();
            x_next.intersect_with(&self.adj[v]);
            r.push(v);
            self.bron_kerbosch(r, p_next, x_next, out);
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_predicate(n, |i, j| j == i + 1 || (i == 0 && j == n - 1))
    }

    /// Maximal cliques by checking every subset.
    fn brute_maximal(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.len();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if !g.is_clique(&set) {
                continue;
            }
            let maximal = (0..n).filter(|i| mask >> i & 1 == 0).all(|v| !set.iter().all(|&u| g.has_edge(u, v)));
            if maximal {
                out.push(set);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn cycle_cliques() {
        let g = cycle(5);
        assert_eq!(g.maximal_cliques().len(), 5);
        assert_eq!(g.cliques_of_size(2).len(), 5);
        assert!(g.cliques_of_size(3).is_empty());
        assert_eq!(g.complement().edge_count(), 5);
    }

    #[test]
    fn maximal_cliques_match_brute_force() {
        // deterministic pseudo-random graphs
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..30 {
            let g = Graph::from_predicate(11, |_, _| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                !state.is_multiple_of(3)
            });
            assert_eq!(g.maximal_cliques(), brute_maximal(&g));
        }
    }

    #[test]
    fn empty_graph_has_singletons() {
        let g = Graph::empty(4);
        assert_eq!(g.maximal_cliques(), vec![vec![0], vec![1], vec![2], vec![3]]);
    }
}
