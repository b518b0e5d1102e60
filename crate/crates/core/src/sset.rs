//! Finitely generated presheaves on `Δ^D` stored by non-degenerate generators
//! and Eilenberg–Zilber normal forms. `D = 1` gives simplicial sets and
//! `D = 2` bisimplicial sets (direction 0 horizontal, direction 1 vertical).

use crate::delta::DeltaMap;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

pub type GenId = usize;

/// A simplex written as a degeneracy applied to a generator, one surjection per direction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm<const D: usize> {
    pub degen: [DeltaMap; D],
    pub gen: GenId,
}

impl<const D: usize> fmt::Debug for NormalForm<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.gen)?;
        for d in &self.degen {
            if !d.is_identity() {
                write!(f, "·{:?}", d)?;
            }
        }
        Ok(())
    }
}

impl<const D: usize> NormalForm<D> {
    pub fn dim(&self) -> [usize; D] {
        std::array::from_fn(|j| self.degen[j].src())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degen.iter().all(|d| d.is_identity())
    }

    pub fn gen_dim(&self) -> [usize; D] {
        std::array::from_fn(|j| self.degen[j].tgt())
    }

    /// Composes an additional degeneracy on top: `(σ, x)` becomes `(σ ∘ τ, x)`.
    pub fn degenerate_by(&self, tau: &[DeltaMap; D]) -> Self {
        NormalForm { degen: std::array::from_fn(|j| self.degen[j].compose(&tau[j])), gen: self.gen }
    }
}

impl NormalForm<1> {
    pub fn id_of(gen: GenId, dim: usize) -> Self {
        NormalForm { degen: [DeltaMap::identity(dim)], gen }
    }

    pub fn d(&self) -> usize {
        self.degen[0].src()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator<const D: usize> {
    pub dim: [usize; D],
    pub faces: [Vec<NormalForm<D>>; D],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sset<const D: usize> {
    gens: Vec<Generator<D>>,
    labels: Vec<Option<String>>,
}

pub type SimplicialSet = Sset<1>;
pub type Bisimplicial = Sset<2>;

pub fn identity_ops<const D: usize>(dim: [usize; D]) -> [DeltaMap; D] {
    std::array::from_fn(|j| DeltaMap::identity(dim[j]))
}

/// Operators acting in a single direction, identity elsewhere.
pub fn ops_in<const D: usize>(dim: [usize; D], dir: usize, op: DeltaMap) -> [DeltaMap; D] {
    let mut ops = identity_ops(dim);
    ops[dir] = op;
    ops
}

impl<const D: usize> Default for Sset<D> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<const D: usize> Sset<D> {
    pub fn empty() -> Self {
        Sset { gens: Vec::new(), labels: Vec::new() }
    }

    /// Builds and validates the simplicial identities.
    pub fn new(gens: Vec<Generator<D>>, labels: Vec<Option<String>>) -> Result<Self> {
        let s = Self::from_parts(gens, labels);
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn from_parts(gens: Vec<Generator<D>>, mut labels: Vec<Option<String>>) -> Self {
        labels.resize(gens.len(), None);
        Sset { gens, labels }
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generator(&self, g: GenId) -> &Generator<D> {
        &self.gens[g]
    }

    pub fn generators(&self) -> &[Generator<D>] {
        &self.gens
    }

    pub fn dim(&self, g: GenId) -> [usize; D] {
        self.gens[g].dim
    }

    pub fn label(&self, g: GenId) -> Option<&str> {
        self.labels[g].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        assert_eq!(labels.len(), self.gens.len());
        self.labels = labels;
        self
    }

    pub fn gens_of_dim(&self, dim: [usize; D]) -> impl Iterator<Item = GenId> + '_ {
        (0..self.gens.len()).filter(move |&g| self.gens[g].dim == dim)
    }

    /// Componentwise maximal generator dimension.
    pub fn max_dim(&self) -> [usize; D] {
        let mut m = [0; D];
        for g in &self.gens {
            for j in 0..D {
                m[j] = m[j].max(g.dim[j]);
            }
        }
        m
    }

    pub fn id_nf(&self, g: GenId) -> NormalForm<D> {
        NormalForm { degen: identity_ops(self.gens[g].dim), gen: g }
    }

    /// Applies the simplicial operator `ops` (one map `[n'_j] -> [n_j]` per direction).
    pub fn act(&self, s: &NormalForm<D>, ops: &[DeltaMap; D]) -> NormalForm<D> {
        if ops.iter().all(|o| o.is_identity()) {
            return s.clone();
        }
        let mut epis: [DeltaMap; D] = identity_ops([0; D]);
        let mut monos: [DeltaMap; D] = identity_ops([0; D]);
        for j in 0..D {
            let (e, m) = s.degen[j].compose(&ops[j]).epi_mono();
            epis[j] = e;
            monos[j] = m;
        }
        let t = self.face_along(s.gen, monos);
        t.degenerate_by(&epis)
    }

    fn face_along(&self, g: GenId, mut monos: [DeltaMap; D]) -> NormalForm<D> {
        for j in 0..D {
            if let Some((r, rest)) = monos[j].peel_missing() {
                monos[j] = rest;
                let f = &self.gens[g].faces[j][r];
                return self.act(f, &monos);
            }
        }
        self.id_nf(g)
    }

    pub fn face(&self, s: &NormalForm<D>, dir: usize, r: usize) -> NormalForm<D> {
        let dim = s.dim();
        self.act(s, &ops_in(dim, dir, DeltaMap::coface(dim[dir], r)))
    }

    pub fn degeneracy(&self, s: &NormalForm<D>, dir: usize, j: usize) -> NormalForm<D> {
        let dim = s.dim();
        let mut ops = identity_ops(dim);
        ops[dir] = DeltaMap::codegeneracy(dim[dir], j);
        self.act(s, &ops)
    }

    /// All simplices of the given degree, generator-major.
    pub fn simplices(&self, deg: [usize; D]) -> Vec<NormalForm<D>> {
        let mut out = Vec::new();
        for (g, gen) in self.gens.iter().enumerate() {
            if (0..D).any(|j| gen.dim[j] > deg[j]) {
                continue;
            }
            let choices: Vec<Vec<DeltaMap>> = (0..D).map(|j| DeltaMap::surjections(deg[j], gen.dim[j])).collect();
            for_each_tuple(&choices, &mut |t| {
                out.push(NormalForm { degen: std::array::from_fn(|j| t[j].clone()), gen: g });
            });
        }
        out
    }

    pub fn count_simplices(&self, deg: [usize; D]) -> usize {
        self.gens
            .iter()
            .filter(|g| (0..D).all(|j| g.dim[j] <= deg[j]))
            .map(|g| (0..D).map(|j| binom(deg[j], g.dim[j])).product::<usize>())
            .sum()
    }

    /// Checks face-normal-form well-formedness and the simplicial identities on generators.
    pub fn validate(&self) -> Result<()> {
        for (g, gen) in self.gens.iter().enumerate() {
            for j in 0..D {
                let expected = if gen.dim[j] == 0 { 0 } else { gen.dim[j] + 1 };
                if gen.faces[j].len() != expected {
                    return Err(Error::Malformed(format!("generator {g}: expected {expected} faces in direction {j}")));
                }
                for (r, f) in gen.faces[j].iter().enumerate() {
                    if f.gen >= self.gens.len() {
                        return Err(Error::Malformed(format!("generator {g} face {r}: unknown target {}", f.gen)));
                    }
                    let mut want = gen.dim;
                    want[j] -= 1;
                    for i in 0..D {
                        if f.degen[i].src() != want[i]
                            || f.degen[i].tgt() != self.gens[f.gen].dim[i]
                            || !f.degen[i].is_surjective()
                        {
                            return Err(Error::Malformed(format!("generator {g} face ({j},{r}) has the wrong shape")));
                        }
                    }
                    if f.gen == g {
                        return Err(Error::Malformed(format!("generator {g} is its own face")));
                    }
                }
            }
        }
        // the acyclicity of the face relation makes the recursion in `act` terminate
        let mut state = vec![0u8; self.gens.len()];
        fn visit<const D: usize>(s: &Sset<D>, g: GenId, state: &mut [u8]) -> bool {
            match state[g] {
                1 => return false,
                2 => return true,
                _ => {}
            }
            state[g] = 1;
            for j in 0..D {
                for f in &s.gens[g].faces[j] {
                    let total: usize = s.gens[f.gen].dim.iter().sum();
                    let own: usize = s.gens[g].dim.iter().sum();
                    if total >= own || !visit(s, f.gen, state) {
                        return false;
                    }
                }
            }
            state[g] = 2;
            true
        }
        for g in 0..self.gens.len() {
            if !visit(self, g, &mut state) {
                return Err(Error::Malformed(format!("face relation at generator {g} does not lower dimension")));
            }
        }
        for g in 0..self.gens.len() {
            let x = self.id_nf(g);
            let dim = self.gens[g].dim;
            for a in 0..D {
                for b in 0..D {
                    if dim[a] == 0 || dim[b] == 0 || (a == b && dim[a] < 2) {
                        continue;
                    }
                    for s in 0..=dim[b] {
                        let fb = self.face(&x, b, s);
                        for r in 0..=fb.dim()[a] {
                            if a == b && r >= s {
                                continue;
                            }
                            let lhs = self.face(&fb, a, r);
                            let rhs = if a == b {
                                self.face(&self.face(&x, a, r), a, s - 1)
                            } else {
                                self.face(&self.face(&x, a, r), b, s)
                            };
                            if lhs != rhs {
                                return Err(Error::Malformed(format!(
                                    "simplicial identity fails at generator {g}: directions ({a},{b}) indices ({r},{s})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-indexes generators; `perm[old] = new`.
    pub fn permuted(&self, perm: &[GenId]) -> Sset<D> {
        let n = self.gens.len();
        let mut gens: Vec<Option<Generator<D>>> = vec![None; n];
        let mut labels = vec![None; n];
        for old in 0..n {
            let g = &self.gens[old];
            let faces = std::array::from_fn(|j| {
                g.faces[j].iter().map(|f| NormalForm { degen: f.degen.clone(), gen: perm[f.gen] }).collect()
            });
            gens[perm[old]] = Some(Generator { dim: g.dim, faces });
            labels[perm[old]] = self.labels[old].clone();
        }
        Sset { gens: gens.into_iter().map(Option::unwrap).collect(), labels }
    }

    /// Disjoint union; returns the union and the generator offsets of each summand.
    pub fn coproduct(parts: &[&Sset<D>]) -> (Sset<D>, Vec<usize>) {
        let mut gens = Vec::new();
        let mut labels = Vec::new();
        let mut offsets = Vec::new();
        for p in parts {
            let off = gens.len();
            offsets.push(off);
            for (g, gen) in p.gens.iter().enumerate() {
                let faces = std::array::from_fn(|j| {
                    gen.faces[j].iter().map(|f| NormalForm { degen: f.degen.clone(), gen: f.gen + off }).collect()
                });
                gens.push(Generator { dim: gen.dim, faces });
                labels.push(p.labels[g].clone());
            }
        }
        (Sset { gens, labels }, offsets)
    }
}

impl Sset<1> {
    /// Number of generators per dimension, `[n_0, n_1, ..]`.
    pub fn nd_counts(&self) -> Vec<usize> {
        if self.gens.is_empty() {
            return Vec::new();
        }
        let top = self.max_dim()[0];
        let mut c = vec![0; top + 1];
        for g in &self.gens {
            c[g.dim[0]] += 1;
        }
        c
    }

    pub fn vertices(&self) -> Vec<GenId> {
        self.gens_of_dim([0]).collect()
    }

    /// The `r`-th vertex of a simplex, as a generator of dimension 0.
    pub fn vertex(&self, s: &NormalForm<1>, r: usize) -> GenId {
        self.act(s, &[DeltaMap::vertex(s.d(), r)]).gen
    }

    pub fn vertex_list(&self, s: &NormalForm<1>) -> Vec<GenId> {
        (0..=s.d()).map(|r| self.vertex(s, r)).collect()
    }

    pub fn act1(&self, s: &NormalForm<1>, op: &DeltaMap) -> NormalForm<1> {
        self.act(s, std::slice::from_ref(op).try_into().unwrap())
    }

    /// Connected components; `comp[v]` for each vertex generator, numbered by first vertex.
    pub fn components(&self) -> (usize, HashMap<GenId, usize>) {
        let verts = self.vertices();
        let index: HashMap<GenId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = crate::unionfind::UnionFind::new(verts.len());
        for g in 0..self.gens.len() {
            if self.gens[g].dim[0] >= 1 {
                let vs = self.vertex_list(&self.id_nf(g));
                for w in vs.windows(2) {
                    uf.union(index[&w[0]], index[&w[1]]);
                }
            }
        }
        let mut numbering: HashMap<usize, usize> = HashMap::new();
        let mut comp = HashMap::new();
        for (i, &v) in verts.iter().enumerate() {
            let r = uf.find(i);
            let n = numbering.len();
            let c = *numbering.entry(r).or_insert(n);
            comp.insert(v, c);
        }
        (numbering.len(), comp)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 == 1
    }
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub(crate) fn for_each_tuple<T: Clone>(choices: &[Vec<T>], f: &mut dyn FnMut(&[T])) {
    let mut cur: Vec<T> = Vec::with_capacity(choices.len());
    fn rec<T: Clone>(choices: &[Vec<T>], cur: &mut Vec<T>, f: &mut dyn FnMut(&[T])) {
        if cur.len() == choices.len() {
            f(cur);
            return;
        }
        for c in &choices[cur.len()] {
            cur.push(c.clone());
            rec(choices, cur, f);
            cur.pop();
        }
    }
    rec(choices, &mut cur, f);
}

/// A generator set described by arbitrary ordered keys; ids follow the order `(dim, key)`.
#[derive(Clone, Debug)]
pub struct Keyed<K, const D: usize> {
    pub sset: Sset<D>,
    pub keys: Vec<K>,
    pub ids: HashMap<K, GenId>,
}

impl<K: Clone + Ord + Hash, const D: usize> Keyed<K, D> {
    pub fn id(&self, k: &K) -> GenId {
        self.ids[k]
    }
}

/// Builds a set from keyed generators. `face(k, dir, r)` returns the face as a
/// degeneracy tuple applied to another key.
pub fn build_keyed<K, const D: usize>(
    entries: Vec<(K, [usize; D])>,
    mut face: impl FnMut(&K, usize, usize) -> ([DeltaMap; D], K),
) -> Result<Keyed<K, D>>
where
    K: Clone + Ord + Hash + fmt::Debug,
{
    let mut entries = entries;
    entries.sort_by(|a, b| (a.1.iter().sum::<usize>(), a.1, &a.0).cmp(&(b.1.iter().sum::<usize>(), b.1, &b.0)));
    entries.dedup_by(|a, b| a.0 == b.0);
    let ids: HashMap<K, GenId> = entries.iter().enumerate().map(|(i, e)| (e.0.clone(), i)).collect();
    let mut gens = Vec::with_capacity(entries.len());
    for (k, dim) in &entries {
        let mut faces: [Vec<NormalForm<D>>; D] = std::array::from_fn(|_| Vec::new());
        for j in 0..D {
            if dim[j] == 0 {
                continue;
            }
            for r in 0..=dim[j] {
                let (degen, fk) = face(k, j, r);
                let gen = *ids
                    .get(&fk)
                    .ok_or_else(|| Error::Malformed(format!("face ({j},{r}) of {k:?} refers to unknown key {fk:?}")))?;
                faces[j].push(NormalForm { degen, gen });
            }
        }
        gens.push(Generator { dim: *dim, faces });
    }
    let keys = entries.into_iter().map(|e| e.0).collect();
    Ok(Keyed { sset: Sset::from_parts(gens, Vec::new()), keys, ids })
}

#[cfg(test)]
mod tests {
    use crate::constructions::{boundary, simplex};

    #[test]
    fn boundary_two_counts() {
        assert_eq!(boundary(2).nd_counts(), vec![3, 3]);
    }

    #[test]
    fn simplex_simplex_counts() {
        let d2 = simplex(2);
        assert_eq!(d2.count_simplices([0]), 3);
        assert_eq!(d2.count_simplices([1]), 6);
        assert_eq!(d2.count_simplices([2]), 10);
        assert_eq!(d2.simplices([3]).len(), 15);
    }

    #[test]
    fn degeneracy_then_face_is_identity() {
        let d2 = simplex(2);
        for n in 0..4 {
            for s in d2.simplices([n]) {
                for j in 0..=n {
                    let t = d2.degeneracy(&s, 0, j);
                    assert_eq!(d2.face(&t, 0, j), s);
                    assert_eq!(d2.face(&t, 0, j + 1), s);
                }
            }
        }
    }
}
