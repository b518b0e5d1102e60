//! Bisimplicial tools: rows, levels, the diagonal, and the reflection onto
//! objects with a discrete row 0.

use crate::colimit::Colimit;
use crate::constructions::embed;
use crate::delta::DeltaMap;
use crate::error::{Error, Result};
use crate::map::SsetMap;
use crate::materialize::{Materialized, Oracle};
use crate::product::joint_paths;
use crate::sset::{build_keyed, GenId, NormalForm, Sset};
use std::collections::HashMap;

/// Row 0 is discrete: no generator of bidegree `(0,k)` with `k > 0`.
pub fn has_discrete_row0(w: &Sset<2>) -> bool {
    (0..w.num_gens()).all(|g| {
        let d = w.dim(g);
        d[0] > 0 || d[1] == 0
    })
}

pub fn require_precat(w: &Sset<2>) -> Result<()> {
    match (0..w.num_gens()).find(|&g| w.dim(g)[0] == 0 && w.dim(g)[1] > 0) {
        None => Ok(()),
        Some(g) => Err(Error::Unsupported {
            reason: "row 0 is not discrete".into(),
            witness: format!("generator {g} of bidegree {:?}", w.dim(g)),
        }),
    }
}

/// The objects (row-0 vertices) of a bisimplicial set with discrete row 0.
pub fn objects(w: &Sset<2>) -> Vec<GenId> {
    w.gens_of_dim([0, 0]).collect()
}

/// The simplicial set `W_{0,*}` of horizontally 0-dimensional generators,
/// with the ids of the corresponding generators of `W`.
pub fn row0(w: &Sset<2>) -> (Sset<1>, Vec<GenId>) {
    let gens: Vec<GenId> = (0..w.num_gens()).filter(|&g| w.dim(g)[0] == 0).collect();
    let local: HashMap<GenId, GenId> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let z = Sset::from_parts(
        gens.iter()
            .map(|&g| crate::sset::Generator {
                dim: [w.dim(g)[1]],
                faces: [w.generator(g).faces[1]
                    .iter()
                    .map(|f| NormalForm { degen: [f.degen[1].clone()], gen: local[&f.gen] })
                    .collect()],
            })
            .collect(),
        gens.iter().map(|&g| w.label(g).map(str::to_string)).collect(),
    );
    (z, gens)
}

/// The reflection `L` onto bisimplicial sets with discrete row 0, computed as the
/// pushout of `A <- c(A_{0,*}) -> c(π₀ A_{0,*})`.
#[derive(Clone, Debug)]
pub struct Discretized {
    pub sset: Sset<2>,
    /// The quotient map `A -> L A`.
    pub quotient: SsetMap<2>,
    colim: Colimit<2>,
    row0_gens: Vec<GenId>,
    /// For every component of `A_{0,*}`, a vertex generator of `A` in it.
    component_reps: Vec<GenId>,
}

pub fn discretize(a: &Sset<2>) -> Result<Discretized> {
    let (z, gens) = row0(a);
    let cz = embed(&z, 1);
    let inc = SsetMap {
        images: gens.iter().map(|&g| a.id_nf(g)).collect(),
    };
    let (ncomp, comp) = z.components();
    let pi0 = Sset::<2>::from_parts(
        (0..ncomp).map(|_| crate::sset::Generator { dim: [0, 0], faces: [vec![], vec![]] }).collect(),
        vec![],
    );
    let mut component_reps = vec![usize::MAX; ncomp];
    for (&v, &c) in &comp {
        let gv = gens[v];
        if component_reps[c] == usize::MAX || gv < component_reps[c] {
            component_reps[c] = gv;
        }
    }
    // each generator of Z goes to the component of its vertices
    let proj = SsetMap {
        images: (0..z.num_gens())
            .map(|g| {
                let v = z.vertex(&z.id_nf(g), 0);
                NormalForm { degen: [DeltaMap::identity(0), DeltaMap::terminal(z.dim(g)[0])], gen: comp[&v] }
            })
            .collect(),
    };
    let colim = Colimit::new(&[&cz, a, &pi0], &[(0, 1, &inc), (0, 2, &proj)])?;
    Ok(Discretized { sset: colim.sset.clone(), quotient: colim.cocone[1].clone(), colim, row0_gens: gens, component_reps })
}

impl Discretized {
    /// `L f : L A -> L B` for `f : A -> B`.
    pub fn map_to(&self, target: &Discretized, f: &SsetMap<2>) -> Result<SsetMap<2>> {
        let through = target.quotient.compose(f);
        let leg0 = SsetMap { images: self.row0_gens.iter().map(|&g| through.images[g].clone()).collect() };
        let leg2 = SsetMap { images: self.component_reps.iter().map(|&v| through.images[v].clone()).collect() };
        self.colim.mediate(&[&leg0, &through, &leg2], &target.sset)
    }

    /// The map `L A -> W` induced by `f : A -> W` when `W` has discrete row 0.
    pub fn map_out(&self, w: &Sset<2>, f: &SsetMap<2>) -> Result<SsetMap<2>> {
        let leg0 = SsetMap { images: self.row0_gens.iter().map(|&g| f.images[g].clone()).collect() };
        let leg2 = SsetMap { images: self.component_reps.iter().map(|&v| f.images[v].clone()).collect() };
        self.colim.mediate(&[&leg0, f, &leg2], w)
    }
}

/// The simplicial set `W_{-,k}`: horizontally non-degenerate simplices of vertical degree `k`.
#[derive(Clone, Debug)]
pub struct Level {
    pub k: usize,
    pub sset: Sset<1>,
    /// The simplex of `W` represented by each generator.
    pub simplex: Vec<NormalForm<2>>,
    index: HashMap<NormalForm<2>, GenId>,
}

pub fn level(w: &Sset<2>, k: usize) -> Level {
    let mut entries = Vec::new();
    for g in 0..w.num_gens() {
        let [p, q] = w.dim(g);
        if q > k {
            continue;
        }
        for tau in DeltaMap::surjections(k, q) {
            entries.push((NormalForm { degen: [DeltaMap::identity(p), tau], gen: g }, [p]));
        }
    }
    let keyed = build_keyed(entries, |s, _, r| {
        let p = s.dim()[0];
        let f = w.act(s, &[DeltaMap::coface(p, r), DeltaMap::identity(k)]);
        let key = NormalForm { degen: [DeltaMap::identity(f.gen_dim()[0]), f.degen[1].clone()], gen: f.gen };
        ([f.degen[0].clone()], key)
    })
    .expect("levels are closed under horizontal faces");
    Level { k, sset: keyed.sset, simplex: keyed.keys, index: keyed.ids }
}

impl Level {
    /// The level normal form of a simplex of `W` of vertical degree `k`.
    pub fn nf_of(&self, s: &NormalForm<2>) -> NormalForm<1> {
        debug_assert_eq!(s.dim()[1], self.k);
        let key = NormalForm { degen: [DeltaMap::identity(s.gen_dim()[0]), s.degen[1].clone()], gen: s.gen };
        NormalForm { degen: [s.degen[0].clone()], gen: self.index[&key] }
    }

    pub fn gen_of(&self, s: &NormalForm<2>) -> Option<GenId> {
        self.index.get(s).copied()
    }

    /// The `W` simplex represented by a level simplex.
    pub fn to_w(&self, s: &NormalForm<1>) -> NormalForm<2> {
        let b = &self.simplex[s.gen];
        NormalForm { degen: [b.degen[0].compose(&s.degen[0]), b.degen[1].clone()], gen: b.gen }
    }
}

pub struct DiagOracle<'a>(pub &'a Sset<2>);

impl Oracle<1> for DiagOracle<'_> {
    type Elem = NormalForm<2>;

    fn elements(&self, deg: [usize; 1]) -> Result<Vec<NormalForm<2>>> {
        Ok(self.0.simplices([deg[0], deg[0]]))
    }

    fn act(&self, e: &NormalForm<2>, ops: &[DeltaMap; 1]) -> NormalForm<2> {
        self.0.act(e, &[ops[0].clone(), ops[0].clone()])
    }

    fn degree(&self, e: &NormalForm<2>) -> [usize; 1] {
        [e.dim()[0]]
    }
}

/// Splits an operator pair acting on the diagonal into a common surjection and
/// a jointly injective pair.
fn joint_split(s: &NormalForm<2>) -> (DeltaMap, NormalForm<2>) {
    let [a, b] = &s.degen;
    let n = a.src();
    let mut img = vec![0usize];
    let mut v = 0;
    for i in 0..n {
        if a.at(i) != a.at(i + 1) || b.at(i) != b.at(i + 1) {
            v += 1;
        }
        img.push(v);
    }
    let rho = DeltaMap::new(v, &img);
    let sect: Vec<usize> = (0..=v).map(|r| img.iter().position(|&x| x == r).unwrap()).collect();
    let sect = DeltaMap::new(n, &sect);
    (rho, NormalForm { degen: [a.compose(&sect), b.compose(&sect)], gen: s.gen })
}

/// The diagonal simplicial set. Its non-degenerate simplices are generators of
/// `b` with a jointly injective pair of degeneracies.
pub fn diag(b: &Sset<2>) -> Result<Materialized<NormalForm<2>, 1>> {
    let mut entries = Vec::new();
    for g in 0..b.num_gens() {
        let [p, q] = b.dim(g);
        for pair in joint_paths(&[p, q]) {
            let n = pair[0].src();
            entries.push((NormalForm { degen: [pair[0].clone(), pair[1].clone()], gen: g }, [n]));
        }
    }
    let top = entries.iter().map(|e| e.1[0]).max().unwrap_or(0);
    let mut nd_by_total_degree = vec![0usize; top + 1];
    for e in &entries {
        nd_by_total_degree[e.1[0]] += 1;
    }
    let keyed = build_keyed(entries, |s, _, r| {
        let n = s.dim()[0];
        let f = b.act(s, &[DeltaMap::coface(n, r), DeltaMap::coface(n, r)]);
        let (rho, key) = joint_split(&f);
        ([rho], key)
    })?;
    Ok(Materialized { sset: keyed.sset, gen_elems: keyed.keys, index: keyed.ids, bound: [top], nd_by_total_degree })
}

pub fn diag_sset(b: &Sset<2>) -> Sset<1> {
    diag(b).expect("diagonal of a finite bisimplicial set").sset
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary, external_product, point, simplex};
    use crate::iso::find_iso;
    use crate::product::Product;

    #[test]
    fn diagonal_of_external_product_is_product() {
        let d1 = simplex(1);
        let ep = external_product(&d1, &d1);
        let dg = diag_sset(&ep.sset);
        let pr = Product::new(&[&d1, &d1]).unwrap().sset;
        assert!(find_iso(&dg, &pr).is_some());
        let x = boundary(2);
        let xp = external_product(&x, &point());
        assert!(find_iso(&diag_sset(&xp.sset), &x).is_some());
        let c = embed(&x, 1);
        assert!(find_iso(&diag_sset(&c), &x).is_some());
    }

    #[test]
    fn discretize_interval_times_simplex() {
        let ep = external_product(&simplex(1), &simplex(2));
        let l = discretize(&ep.sset).unwrap();
        assert_eq!(objects(&l.sset).len(), 2);
        assert!(has_discrete_row0(&l.sset));
        let y = boundary(1);
        let ep = external_product(&simplex(1), &y);
        let l = discretize(&ep.sset).unwrap();
        assert_eq!(objects(&l.sset).len(), 4);
        assert_eq!(l.sset.gens_of_dim([1, 0]).count(), 2);
    }

    #[test]
    fn level_of_representable() {
        let ep = external_product(&simplex(2), &simplex(1));
        let l = level(&ep.sset, 1);
        // horizontally non-degenerate simplices of Δ[2] at vertical degree 1:
        // every face of Δ[2] times every 1-simplex of Δ[1]
        assert_eq!(l.sset.num_gens(), 7 * 3);
    }
}
