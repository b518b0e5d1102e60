//! The 1-ordered predicate: antisymmetric edge order on vertices, spines of
//! non-degenerate simplices are monomorphisms, and a non-degenerate simplex is
//! determined by its spine.

use crate::delta::DeltaMap;
use crate::sset::{GenId, Sset};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    pub holds: bool,
    pub witness: Option<String>,
}

impl OrderCheck {
    fn fail(w: String) -> Self {
        OrderCheck { holds: false, witness: Some(w) }
    }
}

/// Spine edge generators of a non-degenerate simplex, or `None` if some spine
/// edge is degenerate.
pub fn spine_edges(k: &Sset<1>, g: GenId) -> Option<Vec<GenId>> {
    let x = k.id_nf(g);
    let n = k.dim(g)[0];
    let mut out = Vec::with_capacity(n);
    for r in 0..n {
        let e = k.act1(&x, &DeltaMap::new(n, &[r, r + 1]));
        if !e.is_nondegenerate() {
            return None;
        }
        out.push(e.gen);
    }
    Some(out)
}

pub fn is_1_ordered(k: &Sset<1>) -> OrderCheck {
    let verts = k.vertices();
    let pos: HashMap<GenId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let mut adj = vec![Vec::new(); n];
    for e in k.gens_of_dim([1]) {
        let vs = k.vertex_list(&k.id_nf(e));
        if vs[0] == vs[1] {
            return OrderCheck::fail(format!("edge {e} is a loop at vertex {}: the edge order is not antisymmetric", vs[0]));
        }
        adj[pos[&vs[0]]].push(pos[&vs[1]]);
    }
    // a directed cycle among distinct vertices violates antisymmetry
    let mut color = vec![0u8; n];
    let mut stack_path = Vec::new();
    fn dfs(u: usize, adj: &[Vec<usize>], color: &mut [u8], path: &mut Vec<usize>) -> Option<Vec<usize>> {
        color[u] = 1;
        path.push(u);
        for &v in &adj[u] {
            if color[v] == 1 {
                let start = path.iter().position(|&x| x == v).unwrap();
                return Some(path[start..].to_vec());
            }
            if color[v] == 0 {
                if let Some(c) = dfs(v, adj, color, path) {
                    return Some(c);
                }
            }
        }
        path.pop();
        color[u] = 2;
        None
    }
    for u in 0..n {
        if color[u] == 0 {
            if let Some(cycle) = dfs(u, &adj, &mut color, &mut stack_path) {
                let named: Vec<GenId> = cycle.iter().map(|&i| verts[i]).collect();
                return OrderCheck::fail(format!("directed vertex cycle {named:?}: the edge order is not antisymmetric"));
            }
        }
    }
    let mut by_spine: HashMap<Vec<GenId>, GenId> = HashMap::new();
    for g in 0..k.num_gens() {
        let d = k.dim(g)[0];
        if d == 0 {
            continue;
        }
        let vs = k.vertex_list(&k.id_nf(g));
        let mut sorted = vs.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vs.len() {
            return OrderCheck::fail(format!("simplex {g} has repeated vertices {vs:?}: its spine is not a monomorphism"));
        }
        let Some(sp) = spine_edges(k, g) else {
            return OrderCheck::fail(format!("simplex {g} has a degenerate spine edge"));
        };
        if let Some(&h) = by_spine.get(&sp) {
            return OrderCheck::fail(format!("simplices {h} and {g} share the spine {sp:?}"));
        }
        by_spine.insert(sp, g);
    }
    OrderCheck { holds: true, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circle, simplex};

    #[test]
    fn simplices_are_ordered() {
        for m in 0..=5 {
            assert!(is_1_ordered(&simplex(m)).holds);
        }
    }

    #[test]
    fn circle_is_not() {
        let c = is_1_ordered(&circle());
        assert!(!c.holds);
        assert!(c.witness.unwrap().contains("antisymmetric"));
    }
}
