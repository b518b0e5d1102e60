//! Necklaces: wedges of simplices glued last vertex to first vertex, their
//! monomorphic realizations in a 1-ordered simplicial set, and the pair-poset model.

use crate::constructions::simplex_keyed;
use crate::delta::DeltaMap;
use crate::error::{arg, Error, Result};
use crate::ordered::is_1_ordered;
use crate::sset::{GenId, NormalForm, Sset};
use serde::Serialize;
use std::collections::HashMap;

/// A necklace shape `Δ[m_1] ∨ … ∨ Δ[m_t]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Necklace {
    pub beads: Vec<usize>,
}

impl Necklace {
    pub fn new(beads: Vec<usize>) -> Result<Self> {
        if beads.is_empty() {
            return arg("a necklace has at least one bead");
        }
        if beads.len() > 1 && beads.contains(&0) {
            return arg("beads of a necklace with several beads have positive dimension");
        }
        Ok(Necklace { beads })
    }

    pub fn point() -> Self {
        Necklace { beads: vec![0] }
    }

    pub fn num_vertices(&self) -> usize {
        self.beads.iter().sum::<usize>() + 1
    }

    /// Joint positions, including both endpoints.
    pub fn joints(&self) -> Vec<usize> {
        let mut out = vec![0];
        let mut acc = 0;
        for &m in &self.beads {
            acc += m;
            if m > 0 {
                out.push(acc);
            }
        }
        out
    }

    pub fn joint_mask(&self) -> u64 {
        self.joints().iter().fold(0, |m, &j| m | 1 << j)
    }

    pub fn vertex_mask(&self) -> u64 {
        (1u64 << self.num_vertices()) - 1
    }

    /// `T₁ ∨ T₂`, dropping point necklaces.
    pub fn wedge(&self, other: &Necklace) -> Necklace {
        let mut beads: Vec<usize> = self.beads.iter().chain(other.beads.iter()).copied().filter(|&m| m > 0).collect();
        if beads.is_empty() {
            beads.push(0);
        }
        Necklace { beads }
    }
}

/// A totally non-degenerate necklace in `K` from `a` to `b`, given by its bead simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NecklaceInK {
    pub a: GenId,
    pub b: GenId,
    /// Non-degenerate simplices of dimension at least one; empty for the point necklace.
    pub beads: Vec<GenId>,
    /// Vertices of `K` in necklace order.
    pub vertices: Vec<GenId>,
    /// Positions (in `vertices`) of the joints.
    pub joints: Vec<usize>,
}

impl NecklaceInK {
    pub fn shape(&self, k: &Sset<1>) -> Necklace {
        if self.beads.is_empty() {
            return Necklace::point();
        }
        Necklace { beads: self.beads.iter().map(|&g| k.dim(g)[0]).collect() }
    }

    pub fn bead_start(&self, r: usize) -> usize {
        self.joints[r]
    }
}

/// The poset of totally non-degenerate necklaces in a 1-ordered simplicial set.
#[derive(Clone, Debug)]
pub struct TndPoset {
    pub a: GenId,
    pub b: GenId,
    pub necklaces: Vec<NecklaceInK>,
    /// `leq[u][t]` iff `u` is a sub-necklace of `t`.
    pub leq: Vec<Vec<bool>>,
    /// Vertex of `K` to bit position, for `J`/`V` masks.
    pub vertex_bit: HashMap<GenId, usize>,
}

/// Vertex lists of the non-degenerate simplices of dimension ≥ 1, grouped by first vertex.
pub struct SimplexIndex {
    pub starting_at: HashMap<GenId, Vec<(GenId, Vec<GenId>)>>,
}

impl SimplexIndex {
    pub fn new(k: &Sset<1>) -> Self {
        let mut starting_at: HashMap<GenId, Vec<(GenId, Vec<GenId>)>> = HashMap::new();
        for g in 0..k.num_gens() {
            if k.dim(g)[0] >= 1 {
                let vs = k.vertex_list(&k.id_nf(g));
                starting_at.entry(vs[0]).or_default().push((g, vs));
            }
        }
        SimplexIndex { starting_at }
    }
}

pub fn enumerate_tnd(k: &Sset<1>, a: GenId, b: GenId) -> Result<TndPoset> {
    let chk = is_1_ordered(k);
    if !chk.holds {
        return Err(Error::Unsupported {
            reason: "simplicial set is not 1-ordered".into(),
            witness: chk.witness.unwrap_or_default(),
        });
    }
    enumerate_tnd_unchecked(k, &SimplexIndex::new(k), a, b)
}

/// As [`enumerate_tnd`], for a `K` already known to be 1-ordered.
pub fn enumerate_tnd_unchecked(k: &Sset<1>, index: &SimplexIndex, a: GenId, b: GenId) -> Result<TndPoset> {
    if k.dim(a) != [0] || k.dim(b) != [0] {
        return arg("endpoints must be vertices");
    }
    let verts = k.vertices();
    if verts.len() > 64 {
        return Err(Error::Resource("more than 64 vertices".into()));
    }
    let vertex_bit: HashMap<GenId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut necklaces = Vec::new();
    if a == b {
        necklaces.push(NecklaceInK { a, b, beads: vec![], vertices: vec![a], joints: vec![0] });
    } else {
        let mut beads = Vec::new();
        let mut vertices = vec![a];
        let mut joints = vec![0];
        dfs(index, a, b, &mut beads, &mut vertices, &mut joints, &mut necklaces);
    }
    necklaces.sort();
    let n = necklaces.len();
    let mut leq = vec![vec![false; n]; n];
    for u in 0..n {
        for t in 0..n {
            leq[u][t] = is_subnecklace(k, &necklaces[u], &necklaces[t], &vertex_bit);
        }
    }
    Ok(TndPoset { a, b, necklaces, leq, vertex_bit })
}

fn dfs(
    index: &SimplexIndex,
    cur: GenId,
    b: GenId,
    beads: &mut Vec<GenId>,
    vertices: &mut Vec<GenId>,
    joints: &mut Vec<usize>,
    out: &mut Vec<NecklaceInK>,
) {
    if cur == b && !beads.is_empty() {
        out.push(NecklaceInK { a: vertices[0], b, beads: beads.clone(), vertices: vertices.clone(), joints: joints.clone() });
        return;
    }
    let Some(list) = index.starting_at.get(&cur) else { return };
    for (g, vs) in list {
        beads.push(*g);
        let len = vertices.len();
        vertices.extend_from_slice(&vs[1..]);
        joints.push(vertices.len() - 1);
        dfs(index, *vs.last().unwrap(), b, beads, vertices, joints, out);
        joints.pop();
        vertices.truncate(len);
        beads.pop();
    }
}

impl TndPoset {
    pub fn len(&self) -> usize {
        self.necklaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.necklaces.is_empty()
    }

    pub fn mask(&self, vs: impl Iterator<Item = GenId>) -> u64 {
        vs.fold(0, |m, v| m | 1 << self.vertex_bit[&v])
    }

    pub fn joint_mask(&self, t: usize) -> u64 {
        let n = &self.necklaces[t];
        self.mask(n.joints.iter().map(|&p| n.vertices[p]))
    }

    pub fn vertex_mask(&self, t: usize) -> u64 {
        self.mask(self.necklaces[t].vertices.iter().copied())
    }

    /// Index of the necklace with the given joint and vertex sets.
    pub fn find(&self, j: u64, v: u64) -> Option<usize> {
        (0..self.len()).find(|&t| self.joint_mask(t) == j && self.vertex_mask(t) == v)
    }

    /// Covering relations, for Hasse diagrams.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for u in 0..n {
            for t in 0..n {
                if u != t && self.leq[u][t] && !(0..n).any(|w| w != u && w != t && self.leq[u][w] && self.leq[w][t]) {
                    out.push((u, t));
                }
            }
        }
        out
    }
}

fn is_subnecklace(k: &Sset<1>, u: &NecklaceInK, t: &NecklaceInK, bit: &HashMap<GenId, usize>) -> bool {
    let mask = |vs: &mut dyn Iterator<Item = GenId>| vs.fold(0u64, |m, v| m | 1 << bit[&v]);
    let ju = mask(&mut u.joints.iter().map(|&p| u.vertices[p]));
    let jt = mask(&mut t.joints.iter().map(|&p| t.vertices[p]));
    let vu = mask(&mut u.vertices.iter().copied());
    let vt = mask(&mut t.vertices.iter().copied());
    if jt & !ju != 0 || vu & !vt != 0 {
        return false;
    }
    bead_map_raw(k, u, t).is_some()
}

/// Position of each vertex of `u` inside `t`, then the containing bead of `t`
/// for every bead of `u`, checking that the bead is the corresponding face.
fn bead_map_raw(k: &Sset<1>, u: &NecklaceInK, t: &NecklaceInK) -> Option<Vec<usize>> {
    if u.beads.is_empty() {
        return if t.beads.is_empty() && u.a == t.a { Some(vec![]) } else { None };
    }
    let pos: HashMap<GenId, usize> = t.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut out = Vec::with_capacity(u.beads.len());
    for (r, &bead) in u.beads.iter().enumerate() {
        let start = u.joints[r];
        let end = u.joints[r + 1];
        let ps: Vec<usize> = u.vertices[start..=end].iter().map(|v| pos.get(v).copied()).collect::<Option<_>>()?;
        let tb = (0..t.beads.len()).find(|&s| t.joints[s] <= ps[0] && *ps.last().unwrap() <= t.joints[s + 1])?;
        let base = t.joints[tb];
        let local: Vec<usize> = ps.iter().map(|p| p - base).collect();
        let dim_t = t.joints[tb + 1] - base;
        let face = k.act1(&k.id_nf(t.beads[tb]), &DeltaMap::new(dim_t, &local));
        if face != NormalForm::id_of(bead, k.dim(bead)[0]) {
            return None;
        }
        out.push(tb);
    }
    Some(out)
}

/// The bead function `B(U) -> B(T)` of a sub-necklace inclusion.
pub fn bead_map(k: &Sset<1>, u: &NecklaceInK, t: &NecklaceInK) -> Result<Vec<usize>> {
    bead_map_raw(k, u, t).ok_or_else(|| Error::Argument("not a sub-necklace".into()))
}

/// A pair `(J, V)` of vertex sets with `J ⊆ V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PairObject {
    pub j: u64,
    pub v: u64,
}

impl PairObject {
    /// The arrow relation `(J,V) -> (J',V')` iff `V ⊆ V'` and `J' ⊆ J`.
    pub fn leq(&self, other: &PairObject) -> bool {
        self.v & !other.v == 0 && other.j & !self.j == 0
    }

    pub fn plus_m(&self, m: usize) -> PairObject {
        PairObject { j: self.j | 1 << m, v: self.v | 1 << m }
    }

    pub fn name(&self) -> String {
        format!("{}|{}", mask_list(self.j), mask_list(self.v))
    }
}

pub fn mask_list(m: u64) -> String {
    (0..64).filter(|b| m >> b & 1 == 1).map(|b| b.to_string()).collect::<Vec<_>>().join(",")
}

/// `{(J,V) : {i,m+1} ⊆ J ⊆ V ⊆ {i..m+1}}`.
pub fn pair_poset(i: usize, m: usize) -> Result<Vec<PairObject>> {
    if i > m {
        return arg(format!("pair poset needs 0 <= i <= m, got i = {i}, m = {m}"));
    }
    let ends = 1u64 << i | 1u64 << (m + 1);
    let inner: Vec<usize> = (i + 1..=m).collect();
    let mut out = Vec::new();
    for vs in 0u64..1 << inner.len() {
        let v = inner.iter().enumerate().filter(|(b, _)| vs >> b & 1 == 1).fold(ends, |acc, (_, &x)| acc | 1 << x);
        let free: Vec<usize> = inner.iter().copied().filter(|&x| v >> x & 1 == 1).collect();
        for js in 0u64..1 << free.len() {
            let j = free.iter().enumerate().filter(|(b, _)| js >> b & 1 == 1).fold(ends, |acc, (_, &x)| acc | 1 << x);
            out.push(PairObject { j, v });
        }
    }
    out.sort();
    Ok(out)
}

/// The pairs with `m ∈ J`.
pub fn pair_poset_m(i: usize, m: usize) -> Result<Vec<PairObject>> {
    Ok(pair_poset(i, m)?.into_iter().filter(|p| p.j >> m & 1 == 1).collect())
}

/// The necklace in `Δ[n]` with the given joints and vertices (bit masks), as
/// generators of `simplex_keyed(n)`.
pub fn necklace_from_pair(n: usize, p: &PairObject) -> NecklaceInK {
    let k = simplex_keyed(n);
    let joints_v: Vec<usize> = (0..=n).filter(|&x| p.j >> x & 1 == 1).collect();
    let vertices_v: Vec<usize> = (0..=n).filter(|&x| p.v >> x & 1 == 1).collect();
    let beads = joints_v
        .windows(2)
        .map(|w| {
            let span = p.v & ((1u64 << (w[1] + 1)) - (1u64 << w[0]));
            k.id(&span)
        })
        .collect();
    let joints = joints_v.iter().map(|j| vertices_v.iter().position(|v| v == j).unwrap()).collect();
    let vertices = vertices_v.iter().map(|&v| k.id(&(1u64 << v))).collect();
    NecklaceInK { a: k.id(&(1u64 << joints_v[0])), b: k.id(&(1u64 << *joints_v.last().unwrap())), beads, vertices, joints }
}

/// Checks that `T ↦ (J_T, V_T)` is an isomorphism from the necklace poset of
/// `Δ[m+1]` between `i` and `m+1` onto the pair poset, arrow by arrow.
pub fn check_pair_iso(i: usize, m: usize) -> Result<bool> {
    let n = m + 1;
    let k = simplex_keyed(n);
    let tnd = enumerate_tnd(&k.sset, k.id(&(1 << i)), k.id(&(1 << n)))?;
    let pairs = pair_poset(i, m)?;
    if pairs.len() != tnd.len() {
        return Ok(false);
    }
    // vertex bit positions follow the generator order of the vertices, which is the vertex order
    let to_pair = |t: usize| {
        let remap = |mask: u64| {
            let mut out = 0u64;
            for (&v, &bit) in &tnd.vertex_bit {
                if mask >> bit & 1 == 1 {
                    out |= k.keys[v];
                }
            }
            out
        };
        PairObject { j: remap(tnd.joint_mask(t)), v: remap(tnd.vertex_mask(t)) }
    };
    let image: Vec<PairObject> = (0..tnd.len()).map(to_pair).collect();
    let mut sorted = image.clone();
    sorted.sort();
    sorted.dedup();
    if sorted != pairs {
        return Ok(false);
    }
    for u in 0..tnd.len() {
        for t in 0..tnd.len() {
            if tnd.leq[u][t] != image[u].leq(&image[t]) {
                return Ok(false);
            }
        }
        if necklace_from_pair(n, &image[u]) != tnd.necklaces[u] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Graphviz rendering of a finite poset's Hasse diagram.
pub fn to_dot(names: &[String], covers: &[(usize, usize)]) -> String {
    let mut s = String::from("digraph poset {\n");
    for n in names {
        s.push_str(&format!("  \"{n}\";\n"));
    }
    for &(u, t) in covers {
        s.push_str(&format!("  \"{}\" -> \"{}\";\n", names[u], names[t]));
    }
    s.push_str("}\n");
    s
}

pub fn pair_covers(pairs: &[PairObject]) -> Vec<(usize, usize)> {
    let n = pairs.len();
    let mut out = Vec::new();
    for u in 0..n {
        for t in 0..n {
            if u != t
                && pairs[u].leq(&pairs[t])
                && !(0..n).any(|w| w != u && w != t && pairs[u].leq(&pairs[w]) && pairs[w].leq(&pairs[t]))
            {
                out.push((u, t));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_necklaces() {
        let k = simplex_keyed(2);
        let p = enumerate_tnd(&k.sset, k.id(&1), k.id(&4)).unwrap();
        assert_eq!(p.len(), 3);
        let rel: usize = (0..3).map(|u| (0..3).filter(|&t| u != t && p.leq[u][t]).count()).sum();
        assert_eq!(rel, 2);
    }

    #[test]
    fn pair_counts() {
        assert_eq!(pair_poset(0, 2).unwrap().len(), 9);
        assert_eq!(pair_poset(0, 1).unwrap().len(), 3);
        for m in 0..4 {
            assert_eq!(pair_poset(m, m).unwrap().len(), 1);
        }
    }

    #[test]
    fn plus_m_examples() {
        let p = PairObject { j: 0b101, v: 0b101 };
        assert_eq!(p.plus_m(1), PairObject { j: 0b111, v: 0b111 });
        let q = PairObject { j: 0b1001, v: 0b1011 };
        assert_eq!(q.plus_m(2), PairObject { j: 0b1101, v: 0b1111 });
    }

    #[test]
    fn pair_iso_small() {
        for m in 0..=3 {
            for i in 0..=m {
                assert!(check_pair_iso(i, m).unwrap());
            }
        }
    }
}
