use super::{DiGraph, Vertex};
use crate::augment::AugmentSet;

const UNVISITED: u32 = u32::MAX;

/// Strongly connected components plus the two-hop star augmentation.
#[derive(Clone, Debug)]
pub struct SccResult {
    /// Component ids follow a topological order of the condensation.
    pub component_of: Vec<u32>,
    /// Minimum vertex id of each component.
    pub centers: Vec<Vertex>,
    pub condensed: DiGraph,
    /// `v→c` and `c→v` for every non-center member `v` of a non-trivial SCC.
    pub star_edges: AugmentSet,
}

impl SccResult {
    pub fn count(&self) -> usize {
        self.centers.len()
    }

    pub fn members(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.count()];
        for (v, &c) in self.component_of.iter().enumerate() {
            out[c as usize].push(v as Vertex);
        }
        out
    }
}

/// Iterative Tarjan. Tarjan emits components in reverse topological order;
/// ids are flipped so that edges of the condensation go from lower to higher.
fn tarjan(g: &DiGraph) -> (Vec<u32>, usize) {
    let n = g.n();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNVISITED; n];
    let mut stack: Vec<Vertex> = Vec::new();
    let mut call: Vec<(Vertex, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut emitted = 0u32;

    for root in 0..n as Vertex {
        if index[root as usize] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = g.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                let wi = w as usize;
                if index[wi] == UNVISITED {
                    index[wi] = next_index;
                    low[wi] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[wi] = true;
                    call.push((w, 0));
                } else if on_stack[wi] {
                    low[v as usize] = low[v as usize].min(index[wi]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent as usize] = low[parent as usize].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w as usize] = false;
                    comp[w as usize] = emitted;
                    if w == v {
                        break;
                    }
                }
                emitted += 1;
            }
        }
    }
    let count = emitted as usize;
    for c in comp.iter_mut() {
        *c = emitted - 1 - *c;
    }
    (comp, count)
}

pub fn scc_condense(g: &DiGraph) -> SccResult {
    let n = g.n();
    let (component_of, count) = tarjan(g);
    let mut centers = vec![Vertex::MAX; count];
    for (v, &c) in component_of.iter().enumerate() {
        centers[c as usize] = centers[c as usize].min(v as Vertex);
    }
    let mut cedges: Vec<(Vertex, Vertex)> = g
        .edges()
        .map(|(u, v)| (component_of[u as usize], component_of[v as usize]))
        .filter(|(a, b)| a != b)
        .collect();
    cedges.sort_unstable();
    cedges.dedup();
    let condensed = DiGraph::from_sorted_unique(count, cedges);

    let mut star = Vec::new();
    for v in 0..n as Vertex {
        let c = centers[component_of[v as usize] as usize];
        if c != v {
            star.push((v, c));
            star.push((c, v));
        }
    }
    SccResult {
        component_of,
        centers,
        condensed,
        star_edges: AugmentSet::from_vertex_pairs(n, star),
    }
}
