//! Canonical forms of small vertex-coloured graphs by colour refinement and
//! exhaustive individualisation. Intended for graphs of a few dozen vertices.

use std::collections::BTreeMap;

/// An undirected graph with a colour per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    colors: Vec<u32>,
    adj: Vec<Vec<bool>>,
}

/// Certificate that is equal for two graphs iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    colors: Vec<u32>,
    rows: Vec<Vec<bool>>,
}

impl ColoredGraph {
    pub fn new(colors: Vec<u32>) -> Self {
        let n = colors.len();
        Self {
            colors,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "loops are not supported");
        self.adj[a][b] = true;
        self.adj[b][a] = true;
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.iter().filter(|&&x| x).count()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&x| x).count()
    }

    /// Ranks the initial colours so that only their order matters.
    fn initial_cells(&self) -> Vec<u32> {
        rank(&self.colors)
    }

    /// Equitable refinement of a colouring.
    fn refine(&self, mut cells: Vec<u32>) -> Vec<u32> {
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..self.len())
                .map(|v| {
                    let mut nb: Vec<u32> = (0..self.len()).filter(|&w| self.adj[v][w]).map(|w| cells[w]).collect();
                    nb.sort_unstable();
                    (cells[v], nb)
                })
                .collect();
            let next = rank(&sigs);
            let before = count_distinct(&cells);
            cells = next;
            if count_distinct(&cells) == before {
                return cells;
            }
        }
    }

    fn certificate(&self, cells: &[u32]) -> CanonicalForm {
        let n = self.len();
        let mut order = vec![0; n];
        for v in 0..n {
            order[cells[v] as usize] = v;
        }
        CanonicalForm {
            colors: order.iter().map(|&v| self.colors[v]).collect(),
            rows: order
                .iter()
                .map(|&v| order.iter().map(|&w| self.adj[v][w]).collect())
                .collect(),
        }
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let start = self.refine(self.initial_cells());
        let mut best: Option<CanonicalForm> = None;
        self.search(start, &mut best);
        best.expect("search reaches at least one leaf")
    }

    fn search(&self, cells: Vec<u32>, best: &mut Option<CanonicalForm>) {
        let n = self.len();
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &cells {
            *sizes.entry(c).or_insert(0) += 1;
        }
        let Some((&target, _)) = sizes.iter().find(|(_, &s)| s > 1) else {
            let cert = self.certificate(&cells);
            if best.as_ref().is_none_or(|b| cert < *b) {
                *best = Some(cert);
            }
            return;
        };
        for v in (0..n).filter(|&v| cells[v] == target) {
            // Individualise v: it sorts just before the rest of its cell.
            let split: Vec<(u32, u32)> = (0..n)
                .map(|w| (cells[w], u32::from(w != v || cells[w] != target)))
                .collect();
            let next = self.refine(rank(&split));
            self.search(next, best);
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect()
}

fn count_distinct(cells: &[u32]) -> usize {
    let mut v = cells.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(colors: Vec<u32>, order: &[usize]) -> ColoredGraph {
        let mut g = ColoredGraph::new(colors);
        for w in order.windows(2) {
            g.add_edge(w[0], w[1]);
        }
        g
    }

    #[test]
    fn relabelled_paths_are_isomorphic() {
        let a = path(vec![0, 0, 0, 0], &[0, 1, 2, 3]);
        let b = path(vec![0, 0, 0, 0], &[2, 0, 3, 1]);
        assert!(a.is_isomorphic(&b));
    }

    #[test]
    fn colours_matter() {
        let a = path(vec![1, 0, 0], &[0, 1, 2]);
        let b = path(vec![0, 1, 0], &[0, 1, 2]);
        assert!(!a.is_isomorphic(&b));
        let c = path(vec![0, 0, 1], &[0, 1, 2]);
        assert!(a.is_isomorphic(&c));
    }

    #[test]
    fn regular_graphs_are_told_apart() {
        // Hexagon versus two triangles: both 2-regular on six vertices.
        let hex = path(vec![0; 6], &[0, 1, 2, 3, 4, 5, 0]);
        let mut tri = ColoredGraph::new(vec![0; 6]);
        for (a, b) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            tri.add_edge(a, b);
        }
        assert!(!hex.is_isomorphic(&tri));
        let hex2 = path(vec![0; 6], &[3, 5, 1, 0, 4, 2, 3]);
        assert!(hex.is_isomorphic(&hex2));
    }
}
