//! Categorification of a Segal precategory `W` into a simplicial category.
//!
//! An element of `Hom(a,b)` of bidegree `(j,k)` is a necklace of horizontally
//! non-degenerate beads in the level `W_{-,k}` running from `a` to `b`,
//! together with a chain `S_0 ⊆ … ⊆ S_j` of vertex sets with `S_0` the joints
//! and `S_j` all vertices. The hom is the diagonal of the resulting
//! bisimplicial set.

use crate::delta::DeltaMap;
use crate::error::{arg, Error, Result};
use crate::map::SsetMap;
use crate::materialize::{materialize, Materialized, Oracle};
use crate::ordered::is_1_ordered;
use crate::precat::{level, objects, require_precat, DiagOracle};
use crate::product::joint_paths;
use crate::scat::{EnrichedFunctor, SimplicialCategory};
use crate::sset::{GenId, NormalForm, Sset};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomElem {
    pub k: usize,
    pub beads: Vec<NormalForm<2>>,
    /// Vertex position masks; positions run over `0..=N`, `N` the total bead length.
    pub chain: Vec<u64>,
}

impl HomElem {
    pub fn point(k: usize, j: usize) -> Self {
        HomElem { k, beads: Vec::new(), chain: vec![1; j + 1] }
    }

    pub fn length(&self) -> usize {
        self.beads.iter().map(|b| b.dim()[0]).sum()
    }

    /// Concatenation `self` then `other`.
    pub fn wedge(&self, other: &HomElem) -> HomElem {
        let n = self.length();
        let chain = self.chain.iter().zip(&other.chain).map(|(x, y)| x | (y << n)).collect();
        let mut beads = self.beads.clone();
        beads.extend(other.beads.iter().cloned());
        HomElem { k: self.k, beads, chain }
    }
}

fn rank_compress(mask: u64, support: u64) -> u64 {
    let mut out = 0u64;
    let mut r = 0;
    let mut s = support;
    while s != 0 {
        let p = s.trailing_zeros();
        if mask >> p & 1 == 1 {
            out |= 1 << r;
        }
        r += 1;
        s &= s - 1;
    }
    out
}

fn map_mask(mask: u64, f: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut s = mask;
    while s != 0 {
        let p = s.trailing_zeros() as usize;
        out |= 1 << f[p];
        s &= s - 1;
    }
    out
}

/// Removes horizontal degeneracies from beads (dropping beads that collapse to a point),
/// moving the chain along.
fn flatten(beads: Vec<NormalForm<2>>, chain: &mut [u64]) -> (Vec<NormalForm<2>>, bool) {
    let mut pos_map = vec![0usize];
    let mut out = Vec::with_capacity(beads.len());
    let mut changed = false;
    let mut offset = 0;
    for b in beads {
        let s = &b.degen[0];
        if !s.is_identity() {
            changed = true;
        }
        for p in 1..=s.src() {
            pos_map.push(offset + s.at(p));
        }
        offset += s.tgt();
        if s.tgt() > 0 {
            let d = s.tgt();
            out.push(NormalForm { degen: [DeltaMap::identity(d), b.degen[1].clone()], gen: b.gen });
        }
    }
    if changed {
        for m in chain.iter_mut() {
            *m = map_mask(*m, &pos_map);
        }
    }
    (out, changed)
}

/// Brings an element with arbitrary beads and a chain into canonical form:
/// beads horizontally non-degenerate, `S_0` the joints and `S_j` all vertices.
pub fn normalize(w: &Sset<2>, k: usize, beads: Vec<NormalForm<2>>, mut chain: Vec<u64>) -> HomElem {
    let mut beads = beads;
    loop {
        let (flat, _) = flatten(beads, &mut chain);
        beads = flat;
        let joints = chain[0];
        let verts = *chain.last().unwrap();
        let mut starts = Vec::with_capacity(beads.len() + 1);
        let mut o = 0;
        for b in &beads {
            starts.push(o);
            o += b.dim()[0];
        }
        let total = o;
        let jl: Vec<usize> = (0..=total).filter(|&p| joints >> p & 1 == 1).collect();
        let all = if total == 63 { u64::MAX } else { (1u64 << (total + 1)) - 1 };
        if verts == all && jl.len() == beads.len() + 1 {
            return HomElem { k, beads, chain };
        }
        let mut new_beads = Vec::with_capacity(jl.len().saturating_sub(1));
        for win in jl.windows(2) {
            let (p, q) = (win[0], win[1]);
            let r = starts.iter().rposition(|&s| s <= p).unwrap();
            let m = beads[r].dim()[0];
            let local: Vec<usize> = (p..=q).filter(|&x| verts >> x & 1 == 1).map(|x| x - starts[r]).collect();
            debug_assert!(q <= starts[r] + m);
            new_beads.push(w.act(&beads[r], &[DeltaMap::new(m, &local), DeltaMap::identity(k)]));
        }
        for mask in chain.iter_mut() {
            *mask = rank_compress(*mask, verts);
        }
        beads = new_beads;
    }
}

pub fn act_elem(w: &Sset<2>, e: &HomElem, ops: &[DeltaMap; 2]) -> HomElem {
    let [tj, tk] = ops;
    let beads = e.beads.iter().map(|b| w.act(b, &[DeltaMap::identity(b.dim()[0]), tk.clone()])).collect();
    let chain = (0..=tj.src()).map(|r| e.chain[tj.at(r)]).collect();
    normalize(w, tk.src(), beads, chain)
}

/// Object paths of generators through `W`, indexed by starting object.
#[derive(Clone, Debug)]
struct Paths {
    /// `(generator, source object, target object)` for generators of positive horizontal degree.
    arrows_from: Vec<Vec<(GenId, usize)>>,
}

impl Paths {
    fn new(w: &Sset<2>, obj_index: &HashMap<GenId, usize>) -> Self {
        let mut arrows_from = vec![Vec::new(); obj_index.len()];
        for g in 0..w.num_gens() {
            let [m, q] = w.dim(g);
            if m == 0 {
                continue;
            }
            let x = w.id_nf(g);
            let s = w.act(&x, &[DeltaMap::vertex(m, 0), DeltaMap::vertex(q, 0)]).gen;
            let t = w.act(&x, &[DeltaMap::vertex(m, m), DeltaMap::vertex(q, 0)]).gen;
            arrows_from[obj_index[&s]].push((g, obj_index[&t]));
        }
        Paths { arrows_from }
    }

    fn between(&self, a: usize, b: usize) -> Vec<Vec<GenId>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(p: &Paths, x: usize, b: usize, cur: &mut Vec<GenId>, out: &mut Vec<Vec<GenId>>) {
            if x == b && !cur.is_empty() {
                out.push(cur.clone());
            }
            for &(g, y) in &p.arrows_from[x] {
                cur.push(g);
                rec(p, y, b, cur, out);
                cur.pop();
            }
        }
        rec(self, a, b, &mut cur, &mut out);
        out
    }
}

fn strict_chains(lo: u64, hi: u64, j: usize) -> Vec<Vec<u64>> {
    let free: Vec<u64> = (0..64).filter(|&p| (hi & !lo) >> p & 1 == 1).map(|p| 1u64 << p).collect();
    let mut out = Vec::new();
    if j == 0 {
        if lo == hi {
            out.push(vec![lo]);
        }
        return out;
    }
    let mut cur = vec![lo];
    fn rec(hi: u64, j: usize, free: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let last = *cur.last().unwrap();
        if cur.len() == j {
            if last != hi {
                cur.push(hi);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        // the next set strictly between last and hi
        let rest: Vec<u64> = free.iter().copied().filter(|b| last & b == 0).collect();
        for mask in 1u64..(1 << rest.len()) - 1 {
            let mut add = 0;
            for (i, b) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    add |= b;
                }
            }
            cur.push(last | add);
            rec(hi, j, free, cur, out);
            cur.pop();
        }
    }
    if !free.is_empty() {
        rec(hi, j, &free, &mut cur, &mut out);
    }
    out
}

pub struct HomOracle<'a> {
    w: &'a Sset<2>,
    paths: &'a [Vec<GenId>],
    endo: bool,
}

impl Oracle<2> for HomOracle<'_> {
    type Elem = HomElem;

    fn elements(&self, deg: [usize; 2]) -> Result<Vec<HomElem>> {
        let [j, k] = deg;
        let mut out = Vec::new();
        if self.endo && j == 0 && k == 0 {
            out.push(HomElem::point(0, 0));
        }
        for path in self.paths {
            let dims: Vec<usize> = path.iter().map(|&g| self.w.dim(g)[1]).collect();
            let hdims: Vec<usize> = path.iter().map(|&g| self.w.dim(g)[0]).collect();
            let total: usize = hdims.iter().sum();
            let mut joints = 1u64;
            let mut o = 0;
            for m in &hdims {
                o += m;
                joints |= 1 << o;
            }
            let all = (1u64 << (total + 1)) - 1;
            let chains = strict_chains(joints, all, j);
            if chains.is_empty() {
                continue;
            }
            for taus in joint_paths(&dims).into_iter().filter(|t| t[0].src() == k) {
                let beads: Vec<NormalForm<2>> = path
                    .iter()
                    .zip(taus)
                    .map(|(&g, t)| NormalForm { degen: [DeltaMap::identity(self.w.dim(g)[0]), t], gen: g })
                    .collect();
                for c in &chains {
                    out.push(HomElem { k, beads: beads.clone(), chain: c.clone() });
                }
            }
        }
        Ok(out)
    }

    fn act(&self, e: &HomElem, ops: &[DeltaMap; 2]) -> HomElem {
        act_elem(self.w, e, ops)
    }

    fn degree(&self, e: &HomElem) -> [usize; 2] {
        [e.chain.len() - 1, e.k]
    }
}

#[derive(Clone, Debug)]
pub struct HomData {
    pub bis: Materialized<HomElem, 2>,
    pub diag: Materialized<NormalForm<2>, 1>,
    paths: Vec<Vec<GenId>>,
    endo: bool,
}

impl HomData {
    pub fn sset(&self) -> &Sset<1> {
        &self.diag.sset
    }

    fn oracle<'a>(&'a self, w: &'a Sset<2>) -> HomOracle<'a> {
        HomOracle { w, paths: &self.paths, endo: self.endo }
    }

    /// The necklace element represented by a simplex; `w` is the precategory the hom was computed in.
    pub fn elem(&self, w: &Sset<2>, s: &NormalForm<1>) -> HomElem {
        let s2 = self.diag.elem_of(&DiagOracle(&self.bis.sset), s);
        self.bis.elem_of(&self.oracle(w), &s2)
    }

    pub fn nf(&self, w: &Sset<2>, e: &HomElem) -> Result<NormalForm<1>> {
        let s2 = self.bis.nf_of(&self.oracle(w), e)?;
        self.diag.nf_of(&DiagOracle(&self.bis.sset), &s2)
    }
}

/// Pushes a necklace element along a map of precategories and renormalizes it.
pub fn map_elem(f: &SsetMap<2>, tgt: &Sset<2>, e: &HomElem) -> HomElem {
    let beads = e.beads.iter().map(|s| f.apply(s)).collect();
    normalize(tgt, e.k, beads, e.chain.clone())
}

/// The map `Hom_src(a,b) -> Hom_tgt(fa,fb)` induced by `f`, on single homs.
pub fn map_hom(f: &SsetMap<2>, src_w: &Sset<2>, src: &HomData, tgt_w: &Sset<2>, tgt: &HomData) -> Result<SsetMap<1>> {
    let h = src.sset();
    let images = (0..h.num_gens())
        .map(|g| tgt.nf(tgt_w, &map_elem(f, tgt_w, &src.elem(src_w, &h.id_nf(g)))))
        .collect::<Result<Vec<_>>>()?;
    SsetMap::new(h, tgt.sset(), images)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CategorifyReport {
    /// Bidegree bound used for every hom.
    pub bound: [usize; 2],
    /// True when the bound covers every non-degenerate element.
    pub exact: bool,
    pub levels_checked: usize,
    pub hom_generators: usize,
}

#[derive(Clone, Debug)]
pub struct CategorifyOptions {
    /// Caps both degrees of the bisimplicial homs.
    pub degree_cap: Option<usize>,
    pub max_cells: usize,
}

impl Default for CategorifyOptions {
    fn default() -> Self {
        CategorifyOptions { degree_cap: None, max_cells: 2_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Categorified {
    pub w: Sset<2>,
    /// The `(0,0)` generators of `W`, in order.
    pub objects: Vec<GenId>,
    pub object_index: HashMap<GenId, usize>,
    pub category: SimplicialCategory,
    homs: Vec<Vec<HomData>>,
    pub report: CategorifyReport,
}

/// Requires `W` to be a Segal precategory whose levels up to twice the largest
/// vertical degree are 1-ordered; spine collisions in higher levels factor
/// through these.
pub fn check_levels(w: &Sset<2>) -> Result<usize> {
    require_precat(w)?;
    let top = 2 * w.max_dim()[1];
    for k in 0..=top {
        let c = is_1_ordered(&level(w, k).sset);
        if !c.holds {
            return Err(Error::Unsupported {
                reason: format!("level {k} is not 1-ordered"),
                witness: c.witness.unwrap_or_default(),
            });
        }
    }
    Ok(top + 1)
}

pub fn categorify(w: &Sset<2>) -> Result<Categorified> {
    categorify_with(w, &CategorifyOptions::default())
}

struct Setup {
    objects: Vec<GenId>,
    object_index: HashMap<GenId, usize>,
    paths: Vec<Vec<Vec<Vec<GenId>>>>,
    bound: [usize; 2],
    exact: bool,
}

fn setup(w: &Sset<2>, opts: &CategorifyOptions) -> Setup {
    let objs = objects(w);
    let object_index: HashMap<GenId, usize> = objs.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let p = Paths::new(w, &object_index);
    let n = objs.len();
    let mut paths = vec![vec![Vec::new(); n]; n];
    let (mut jmax, mut kmax) = (0, 0);
    for a in 0..n {
        for b in 0..n {
            let ps = p.between(a, b);
            for path in &ps {
                let len: usize = path.iter().map(|&g| w.dim(g)[0]).sum();
                jmax = jmax.max(len - path.len());
                kmax = kmax.max(path.iter().map(|&g| w.dim(g)[1]).sum());
            }
            paths[a][b] = ps;
        }
    }
    let mut bound = [jmax, kmax];
    let mut exact = true;
    if let Some(cap) = opts.degree_cap {
        if cap < jmax || cap < kmax {
            exact = false;
        }
        bound = [jmax.min(cap), kmax.min(cap)];
    }
    Setup { objects: objs, object_index, paths, bound, exact }
}

fn build_hom(w: &Sset<2>, paths: Vec<Vec<GenId>>, endo: bool, bound: [usize; 2], max_cells: usize) -> Result<HomData> {
    let o = HomOracle { w, paths: &paths, endo };
    let bis = materialize(&o, bound, max_cells)?;
    let diag = crate::precat::diag(&bis.sset)?;
    Ok(HomData { bis, diag, paths, endo })
}

/// The single simplicial set `Hom(a,b)` for objects `a`, `b` of `W` (given as
/// `(0,0)` generators), without building the rest of the category.
pub fn categorify_hom(w: &Sset<2>, a: GenId, b: GenId, opts: &CategorifyOptions) -> Result<HomData> {
    Ok(categorify_homs(w, &[(a, b)], opts)?.pop().unwrap())
}

/// As [`categorify_hom`], with the bound used and whether it was exact.
pub fn categorify_hom_report(w: &Sset<2>, a: GenId, b: GenId, opts: &CategorifyOptions) -> Result<(HomData, CategorifyReport)> {
    let levels_checked = check_levels(w)?;
    let st = setup(w, opts);
    let obj = |g: GenId| st.object_index.get(&g).copied().ok_or_else(|| Error::Argument(format!("{g} is not an object")));
    let (ia, ib) = (obj(a)?, obj(b)?);
    let hom = build_hom(w, st.paths[ia][ib].clone(), ia == ib, st.bound, opts.max_cells)?;
    let hom_generators = hom.sset().num_gens();
    Ok((hom, CategorifyReport { bound: st.bound, exact: st.exact, levels_checked, hom_generators }))
}

/// Several single homs at once.
pub fn categorify_homs(w: &Sset<2>, pairs: &[(GenId, GenId)], opts: &CategorifyOptions) -> Result<Vec<HomData>> {
    check_levels(w)?;
    let st = setup(w, opts);
    let obj = |g: GenId| st.object_index.get(&g).copied().ok_or_else(|| Error::Argument(format!("{g} is not an object")));
    pairs
        .iter()
        .map(|&(a, b)| {
            let (ia, ib) = (obj(a)?, obj(b)?);
            build_hom(w, st.paths[ia][ib].clone(), ia == ib, st.bound, opts.max_cells)
        })
        .collect()
}

pub fn categorify_with(w: &Sset<2>, opts: &CategorifyOptions) -> Result<Categorified> {
    let levels_checked = check_levels(w)?;
    let Setup { objects: objs, object_index, mut paths, bound, exact } = setup(w, opts);
    let n = objs.len();
    let mut homs: Vec<Vec<HomData>> = Vec::with_capacity(n);
    let mut hom_generators = 0;
    let mut cells = 0;
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let h = build_hom(w, std::mem::take(&mut paths[a][b]), a == b, bound, opts.max_cells.saturating_sub(cells))?;
            cells += h.bis.sset.num_gens();
            hom_generators += h.diag.sset.num_gens();
            row.push(h);
        }
        homs.push(row);
    }
    let labels = objs.iter().map(|&g| w.label(g).map(str::to_string).unwrap_or_else(|| g.to_string())).collect();
    let hom_ssets: Vec<Vec<Sset<1>>> = homs.iter().map(|r| r.iter().map(|h| h.diag.sset.clone()).collect()).collect();
    let mut ids = Vec::with_capacity(n);
    for (a, row) in homs.iter().enumerate() {
        let o = HomOracle { w, paths: &[], endo: true };
        let s = row[a].bis.nf_of(&o, &HomElem::point(0, 0))?;
        ids.push(row[a].diag.nf_of(&DiagOracle(&row[a].bis.sset), &s)?.gen);
    }
    let tmp = Categorified {
        w: w.clone(),
        objects: objs,
        object_index,
        category: SimplicialCategory::build(Vec::new(), Vec::new(), Vec::new(), |_, _, _, g, _| Ok(g.clone()))?,
        homs,
        report: CategorifyReport { bound, exact, levels_checked, hom_generators },
    };
    let category = SimplicialCategory::build(labels, hom_ssets, ids, |a, b, c, g, f| {
        let e = tmp.elem(a, b, f).wedge(&tmp.elem(b, c, g));
        tmp.nf(a, c, &e)
    })?;
    Ok(Categorified { category, ..tmp })
}

impl Categorified {
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, a: usize, b: usize) -> &Sset<1> {
        self.category.hom(a, b)
    }

    pub fn hom_data(&self, a: usize, b: usize) -> &HomData {
        &self.homs[a][b]
    }

    /// The necklace element represented by a simplex of `Hom(a,b)`.
    pub fn elem(&self, a: usize, b: usize, s: &NormalForm<1>) -> HomElem {
        self.homs[a][b].elem(&self.w, s)
    }

    pub fn nf(&self, a: usize, b: usize, e: &HomElem) -> Result<NormalForm<1>> {
        self.homs[a][b].nf(&self.w, e)
    }

    pub fn object_of(&self, g: GenId) -> Result<usize> {
        self.object_index.get(&g).copied().ok_or_else(|| Error::Argument(format!("generator {g} is not an object")))
    }
}

/// The enriched functor induced by a map of precategories.
pub fn categorify_map(f: &SsetMap<2>, src: &Categorified, tgt: &Categorified) -> Result<EnrichedFunctor> {
    f.validate(&src.w, &tgt.w)?;
    let objects = src
        .objects
        .iter()
        .map(|&g| {
            let im = &f.images[g];
            if im.dim() != [0, 0] {
                return arg("object image has positive degree");
            }
            tgt.object_of(im.gen)
        })
        .collect::<Result<Vec<_>>>()?;
    let n = src.num_objects();
    let mut homs = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let h = src.hom(a, b);
            if h.is_empty() {
                continue;
            }
            let (x, y) = (objects[a], objects[b]);
            let images = (0..h.num_gens())
                .map(|g| {
                    let e = src.elem(a, b, &h.id_nf(g));
                    tgt.nf(x, y, &map_elem(f, &tgt.w, &e))
                })
                .collect::<Result<Vec<_>>>()?;
            homs.insert((a, b), SsetMap { images });
        }
    }
    let fun = EnrichedFunctor { objects, homs };
    fun.check(&src.category, &tgt.category)?;
    Ok(fun)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary, embed, point, simplex, spine, Representable};
    use crate::iso::find_iso;
    use crate::precat::discretize;
    use crate::scat::{ch_simplex, find_category_iso, suspension};

    fn lf(m: usize, x: &Sset<1>) -> Sset<2> {
        let e = crate::constructions::external_product(&simplex(m), x).sset;
        discretize(&e).unwrap().sset
    }

    #[test]
    fn simplex_categorifies_to_cubes() {
        for m in 0..=3 {
            let w = embed(&simplex(m), 0);
            let c = categorify(&w).unwrap();
            c.category.check().unwrap();
            assert!(find_category_iso(&c.category, &ch_simplex(m)).is_some(), "m = {m}");
        }
    }

    #[test]
    fn suspension_of_x() {
        for x in [point(), simplex(1), simplex(2), boundary(2), spine(3)] {
            let w = lf(1, &x);
            let c = categorify(&w).unwrap();
            assert!(find_iso(c.hom(0, 1), &x).is_some());
            assert!(find_category_iso(&c.category, &suspension(&x)).is_some());
        }
    }

    #[test]
    fn representable_functor() {
        let r = Representable::new(1, 1);
        let w = discretize(r.sset()).unwrap().sset;
        let c = categorify(&w).unwrap();
        assert!(c.report.exact);
        assert!(find_iso(c.hom(0, 1), &simplex(1)).is_some());
    }

    #[test]
    fn strict_chains_count() {
        assert_eq!(strict_chains(0b101, 0b111, 1).len(), 1);
        assert_eq!(strict_chains(0b1001, 0b1111, 2).len(), 2);
        assert_eq!(strict_chains(0b11, 0b11, 0).len(), 1);
        assert_eq!(strict_chains(0b11, 0b11, 1).len(), 0);
    }
}
