//! Cube homs of necklaces, weight functors on pair posets, and colimits
//! weighted by cube homs.
//!
//! The hom of the homotopy coherent categorification of a necklace with joints
//! `J` and vertices `V` is the nerve of the subset interval `[J, V]`. Simplices
//! are weakly increasing chains of subsets, stored as bit masks.

use crate::colimit::Colimit;
use crate::constructions::{external_product, external_product_map};
use crate::delta::DeltaMap;
use crate::error::{arg, Error, Result};
use crate::map::SsetMap;
use crate::materialize::{materialize, Oracle};
use crate::necklace::{pair_covers, pair_poset, Necklace, PairObject};
use crate::precat::diag_sset;
use crate::product::Product;
use crate::sset::{build_keyed, GenId, NormalForm, Sset};
use std::collections::{BTreeMap, HashMap};

fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// All masks `S` with `lo ⊆ S ⊆ hi`, in increasing numeric order.
pub fn interval(lo: u64, hi: u64) -> Vec<u64> {
    let free = hi & !lo;
    let mut out = Vec::new();
    let mut s = 0u64;
    loop {
        out.push(lo | s);
        if s == free {
            break;
        }
        s = (s.wrapping_sub(free)) & free;
    }
    out.sort();
    out
}

/// Weakly increasing chains `lo = S_0 ⊆ … ⊆ S_n = hi` (flanked chains).
pub fn flanked_chains(lo: u64, hi: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![lo];
    fn rec(cur: &mut Vec<u64>, hi: u64, n: usize, out: &mut Vec<Vec<u64>>) {
        let last = *cur.last().unwrap();
        if cur.len() == n + 1 {
            if last == hi {
                out.push(cur.clone());
            }
            return;
        }
        if cur.len() == n {
            cur.push(hi);
            rec(cur, hi, n, out);
            cur.pop();
            return;
        }
        for s in interval(last, hi) {
            cur.push(s);
            rec(cur, hi, n, out);
            cur.pop();
        }
    }
    if n == 0 {
        if lo == hi {
            out.push(cur);
        }
        return out;
    }
    rec(&mut cur, hi, n, &mut out);
    out
}

/// The nerve of the subset interval `[J, V]`.
#[derive(Clone, Debug)]
pub struct CubeHom {
    pub j: u64,
    pub v: u64,
    pub sset: Sset<1>,
    /// The strictly increasing chain of each generator.
    pub chains: Vec<Vec<u64>>,
    ids: HashMap<Vec<u64>, GenId>,
}

impl CubeHom {
    pub fn new(j: u64, v: u64) -> Result<Self> {
        if !is_subset(j, v) {
            return arg("cube hom needs J ⊆ V");
        }
        let subsets = interval(j, v);
        let mut entries = Vec::new();
        let mut stack: Vec<Vec<u64>> = subsets.iter().map(|&s| vec![s]).collect();
        while let Some(c) = stack.pop() {
            let last = *c.last().unwrap();
            for &s in &subsets {
                if s != last && is_subset(last, s) {
                    let mut d = c.clone();
                    d.push(s);
                    stack.push(d);
                }
            }
            let d = c.len() - 1;
            entries.push((c, [d]));
        }
        let keyed = build_keyed(entries, |c, _, r| {
            let mut f = c.clone();
            f.remove(r);
            ([DeltaMap::identity(f.len() - 1)], f)
        })?;
        Ok(CubeHom { j, v, sset: keyed.sset, chains: keyed.keys, ids: keyed.ids })
    }

    pub fn of_necklace(t: &Necklace) -> Self {
        CubeHom::new(t.joint_mask(), t.vertex_mask()).expect("joints are vertices")
    }

    pub fn of_pair(p: &PairObject) -> Self {
        CubeHom::new(p.j, p.v).expect("pairs have J ⊆ V")
    }

    /// Normal form of a weakly increasing chain inside the interval.
    pub fn chain_nf(&self, chain: &[u64]) -> NormalForm<1> {
        let mut strict = vec![chain[0]];
        let mut img = vec![0usize];
        for &s in &chain[1..] {
            if s != *strict.last().unwrap() {
                strict.push(s);
            }
            img.push(strict.len() - 1);
        }
        NormalForm { degen: [DeltaMap::new(strict.len() - 1, &img)], gen: self.ids[&strict] }
    }

    /// The chain of a simplex.
    pub fn chain_of(&self, s: &NormalForm<1>) -> Vec<u64> {
        let c = &self.chains[s.gen];
        s.degen[0].image().map(|i| c[i]).collect()
    }
}

/// The map `cube(U) -> cube(T)` induced by a sub-necklace `U ≤ T`; chains are unchanged.
pub fn pushforward(u: &CubeHom, t: &CubeHom) -> Result<SsetMap<1>> {
    if !(is_subset(t.j, u.j) && is_subset(u.v, t.v)) {
        return arg("pushforward needs J_T ⊆ J_U and V_U ⊆ V_T");
    }
    Ok(SsetMap { images: u.chains.iter().map(|c| t.chain_nf(c)).collect() })
}

/// `cube(J,V) -> cube(J ∪ {m}, V ∪ {m})`, `S ↦ S ∪ {m}`.
pub fn projection_phi(p: &PairObject, m: usize) -> (CubeHom, CubeHom, SsetMap<1>) {
    let src = CubeHom::of_pair(p);
    let q = p.plus_m(m);
    let tgt = CubeHom::of_pair(&q);
    let images = src
        .chains
        .iter()
        .map(|c| {
            let d: Vec<u64> = c.iter().map(|s| s | 1 << m).collect();
            tgt.chain_nf(&d)
        })
        .collect();
    (src, tgt, SsetMap { images })
}

/// `cube(T₁ ∨ T₂) -> cube(T₁) × cube(T₂)`, splitting chains at the shared joint.
pub fn wedge_split(t1: &Necklace, t2: &Necklace) -> Result<(CubeHom, Product<1>, SsetMap<1>)> {
    let w = t1.wedge(t2);
    let c = CubeHom::of_necklace(&w);
    let c1 = CubeHom::of_necklace(t1);
    let c2 = CubeHom::of_necklace(t2);
    let prod = Product::new(&[&c1.sset, &c2.sset])?;
    let n1 = t1.num_vertices() - 1;
    let low = (1u64 << (n1 + 1)) - 1;
    let images = c
        .chains
        .iter()
        .map(|ch| {
            let a: Vec<u64> = ch.iter().map(|s| s & low).collect();
            let b: Vec<u64> = ch.iter().map(|s| s >> n1).collect();
            prod.tuple(&[c1.chain_nf(&a), c2.chain_nf(&b)])
        })
        .collect();
    Ok((c, prod, SsetMap { images }))
}

/// A contravariant functor from a pair poset to simplicial sets.
#[derive(Clone, Debug)]
pub struct WeightFunctor {
    pub objects: Vec<PairObject>,
    pub values: Vec<Sset<1>>,
    /// `maps[(u, t)] : value(t) -> value(u)` for `u < t`.
    pub maps: BTreeMap<(usize, usize), SsetMap<1>>,
}

impl WeightFunctor {
    pub fn index(&self) -> HashMap<PairObject, usize> {
        self.objects.iter().enumerate().map(|(i, p)| (*p, i)).collect()
    }

    /// `value(t) -> value(u)`, the identity when `u == t`.
    pub fn map(&self, u: usize, t: usize) -> SsetMap<1> {
        if u == t {
            SsetMap::identity(&self.values[t])
        } else {
            self.maps[&(u, t)].clone()
        }
    }

    /// Validity of every map and functoriality on composable pairs.
    pub fn check(&self) -> Result<()> {
        for (&(u, t), f) in &self.maps {
            f.validate(&self.values[t], &self.values[u])?;
        }
        for (&(u, w), f) in &self.maps {
            for (&(w2, t), g) in &self.maps {
                if w2 == w && f.compose(g) != self.maps[&(u, t)] {
                    return Err(Error::Diagram(format!("weight not functorial at {u} <= {w} <= {t}")));
                }
            }
        }
        Ok(())
    }

    fn build(objects: Vec<PairObject>, values: Vec<Sset<1>>, mut map: impl FnMut(usize, usize) -> SsetMap<1>) -> Self {
        let mut maps = BTreeMap::new();
        for u in 0..objects.len() {
            for t in 0..objects.len() {
                if u != t && objects[u].leq(&objects[t]) {
                    maps.insert((u, t), map(u, t));
                }
            }
        }
        WeightFunctor { objects, values, maps }
    }
}

/// Vertex masks of the beads of a pair, in order.
pub fn beads(p: &PairObject) -> Vec<u64> {
    let joints: Vec<usize> = (0..64).filter(|&x| p.j >> x & 1 == 1).collect();
    joints.windows(2).map(|w| p.v & ((1u64 << (w[1] + 1)) - (1u64 << w[0]))).collect()
}

/// The bead function of `U ≤ T`.
pub fn pair_bead_map(u: &PairObject, t: &PairObject) -> Vec<usize> {
    let tb = beads(t);
    let tj: Vec<usize> = (0..64).filter(|&x| t.j >> x & 1 == 1).collect();
    beads(u)
        .iter()
        .map(|&b| {
            let lo = b.trailing_zeros() as usize;
            let hi = 63 - b.leading_zeros() as usize;
            (0..tb.len()).find(|&r| tj[r] <= lo && hi <= tj[r + 1]).expect("sub-necklace beads lie in beads")
        })
        .collect()
}

fn require_connected(x: &Sset<1>, what: &str) -> Result<()> {
    if x.is_connected() {
        Ok(())
    } else {
        let (n, _) = x.components();
        Err(Error::Unsupported {
            reason: format!("{what} is not connected"),
            witness: format!("{n} connected components"),
        })
    }
}

/// A product of factors, with a single factor kept as itself.
#[derive(Clone, Debug)]
pub struct PowerValue {
    pub sset: Sset<1>,
    prod: Option<Product<1>>,
}

pub fn power_value(factors: &[&Sset<1>]) -> Result<PowerValue> {
    if factors.len() == 1 {
        return Ok(PowerValue { sset: factors[0].clone(), prod: None });
    }
    let p = Product::new(factors)?;
    Ok(PowerValue { sset: p.sset.clone(), prod: Some(p) })
}

impl PowerValue {
    /// The map `∏ A_k -> ∏ B_k` given factorwise.
    pub fn map_to(&self, tgt: &PowerValue, maps: &[SsetMap<1>]) -> SsetMap<1> {
        let comps: Vec<SsetMap<1>> = maps.iter().enumerate().map(|(k, f)| f.compose(&self.projection(k))).collect();
        tgt.pairing(&comps, &self.sset)
    }

    pub fn projection(&self, k: usize) -> SsetMap<1> {
        match &self.prod {
            None => SsetMap::identity(&self.sset),
            Some(p) => p.projections[k].clone(),
        }
    }

    pub fn pairing(&self, maps: &[SsetMap<1>], src: &Sset<1>) -> SsetMap<1> {
        match &self.prod {
            None => maps[0].clone(),
            Some(p) => p.pairing(&maps.iter().collect::<Vec<_>>(), src),
        }
    }
}

/// The weight `T ↦ (∏_{beads other than the last} Y) × X` when the last bead of
/// `T` lies in the image of `μ+1`, and `∅` otherwise, on the pair poset
/// `(i, m)` where `μ : [ℓ] -> [m]` is injective and `f : X -> Y`.
pub fn weight_f(mu: &DeltaMap, x: &Sset<1>, y: &Sset<1>, f: &SsetMap<1>, i: usize) -> Result<WeightFunctor> {
    if !mu.is_injective() {
        return arg("μ must be injective");
    }
    require_connected(x, "X")?;
    require_connected(y, "Y")?;
    f.validate(x, y)?;
    let m = mu.tgt();
    let objects = pair_poset(i, m)?;
    let img = mu.plus_top().image_mask();
    let in_image = |p: &PairObject| is_subset(*beads(p).last().unwrap(), img);
    let mut powers = Vec::new();
    for p in &objects {
        if in_image(p) {
            let nb = beads(p).len();
            let mut factors: Vec<&Sset<1>> = vec![y; nb - 1];
            factors.push(x);
            powers.push(Some(power_value(&factors)?));
        } else {
            powers.push(None);
        }
    }
    let values: Vec<Sset<1>> = powers.iter().map(|p| p.as_ref().map(|p| p.sset.clone()).unwrap_or_default()).collect();
    let objs = objects.clone();
    Ok(WeightFunctor::build(objects, values.clone(), |u, t| {
        let (Some(pu), Some(pt)) = (&powers[u], &powers[t]) else {
            return SsetMap::from_empty();
        };
        let bm = pair_bead_map(&objs[u], &objs[t]);
        let last_u = bm.len() - 1;
        let last_t = beads(&objs[t]).len() - 1;
        let comps: Vec<SsetMap<1>> = bm
            .iter()
            .enumerate()
            .map(|(b, &tb)| {
                let proj = pt.projection(tb);
                if b == last_u || tb != last_t {
                    proj
                } else {
                    f.compose(&proj)
                }
            })
            .collect();
        pu.pairing(&comps, &values[t])
    }))
}

/// [`weight_f`] for `μ = id`, `i = 0`, with the value at the full simplex replaced by `∅`.
pub fn weight_f_boundary(m: usize, x: &Sset<1>, y: &Sset<1>, f: &SsetMap<1>) -> Result<WeightFunctor> {
    let mut w = weight_f(&DeltaMap::identity(m), x, y, f, 0)?;
    let full = PairObject { j: 1 | 1 << (m + 1), v: (1u64 << (m + 2)) - 1 };
    let t = w.index()[&full];
    w.values[t] = Sset::empty();
    for ((_, b), g) in w.maps.iter_mut() {
        if *b == t {
            *g = SsetMap::from_empty();
        }
    }
    Ok(w)
}

/// The weight `T ↦ ∏_{B(T)} Y` for `T` not the full simplex, and `X` at the
/// full simplex, on the pair poset `(0, m)`, for a monomorphism `f : X -> Y`.
pub fn weight_g0(m: usize, x: &Sset<1>, y: &Sset<1>, f: &SsetMap<1>) -> Result<WeightFunctor> {
    f.validate(x, y)?;
    if !f.is_mono() {
        return arg("f must be a monomorphism");
    }
    require_connected(y, "Y")?;
    let objects = pair_poset(0, m)?;
    let full = PairObject { j: 1 | 1 << (m + 1), v: (1u64 << (m + 2)) - 1 };
    let mut powers = Vec::new();
    for p in &objects {
        if *p == full {
            powers.push(power_value(&[x])?);
        } else {
            powers.push(power_value(&vec![y; beads(p).len()])?);
        }
    }
    let values: Vec<Sset<1>> = powers.iter().map(|p| p.sset.clone()).collect();
    let objs = objects.clone();
    Ok(WeightFunctor::build(objects, values.clone(), |u, t| {
        let bm = pair_bead_map(&objs[u], &objs[t]);
        let comps: Vec<SsetMap<1>> = if objs[t] == full {
            bm.iter().map(|_| f.clone()).collect()
        } else {
            bm.iter().map(|&tb| powers[t].projection(tb)).collect()
        };
        powers[u].pairing(&comps, &values[t])
    }))
}

/// A weight given explicitly by values, for tests and for products of weights.
pub fn constant_weight(objects: Vec<PairObject>, value: &Sset<1>) -> WeightFunctor {
    let values = vec![value.clone(); objects.len()];
    WeightFunctor::build(objects, values, |_, _| SsetMap::identity(value))
}

struct ColimOracle<'a> {
    w: &'a WeightFunctor,
    index: HashMap<PairObject, usize>,
}

type ColimElem = (usize, Vec<u64>, NormalForm<1>);

impl Oracle<1> for ColimOracle<'_> {
    type Elem = ColimElem;

    fn elements(&self, deg: [usize; 1]) -> Result<Vec<ColimElem>> {
        let mut out = Vec::new();
        for (u, p) in self.w.objects.iter().enumerate() {
            let xs = self.w.values[u].simplices(deg);
            if xs.is_empty() {
                continue;
            }
            for c in flanked_chains(p.j, p.v, deg[0]) {
                for x in &xs {
                    out.push((u, c.clone(), x.clone()));
                }
            }
        }
        Ok(out)
    }

    fn act(&self, e: &ColimElem, ops: &[DeltaMap; 1]) -> ColimElem {
        let (u, c, x) = e;
        let chain: Vec<u64> = ops[0].image().map(|r| c[r]).collect();
        let p = PairObject { j: chain[0], v: *chain.last().unwrap() };
        let u2 = self.index[&p];
        let x1 = self.w.values[*u].act1(x, &ops[0]);
        let x2 = if u2 == *u { x1 } else { self.w.maps[&(u2, *u)].apply(&x1) };
        (u2, chain, x2)
    }

    fn degree(&self, e: &ColimElem) -> [usize; 1] {
        [e.1.len() - 1]
    }
}

/// `diag(colim^{cube} weight)`, computed on canonical representatives: a class
/// is represented by the sub-necklace whose joints and vertices are the ends of its chain.
pub fn necklace_weighted_colim(w: &WeightFunctor) -> Result<Sset<1>> {
    let o = ColimOracle { w, index: w.index() };
    let cube_dim = w.objects.iter().map(|p| (p.v & !p.j).count_ones() as usize).max().unwrap_or(0);
    let val_dim = w.values.iter().map(|v| v.max_dim()[0]).max().unwrap_or(0);
    Ok(materialize(&o, [cube_dim + val_dim], usize::MAX)?.sset)
}

/// The same weighted colimit, computed as a coend by union–find and then diagonalized.
pub fn necklace_weighted_colim_uf(w: &WeightFunctor) -> Result<Sset<1>> {
    let n = w.objects.len();
    let cubes: Vec<CubeHom> = w.objects.iter().map(CubeHom::of_pair).collect();
    let mut objects = Vec::new();
    for t in 0..n {
        objects.push(external_product(&cubes[t].sset, &w.values[t]));
    }
    let covers = pair_covers(&w.objects);
    let mut maps = Vec::new();
    for &(u, t) in &covers {
        let a = external_product(&cubes[u].sset, &w.values[t]);
        let to_u = external_product_map(&a, &objects[u], &SsetMap::identity(&cubes[u].sset), &w.maps[&(u, t)]);
        let to_t = external_product_map(&a, &objects[t], &pushforward(&cubes[u], &cubes[t])?, &SsetMap::identity(&w.values[t]));
        objects.push(a);
        maps.push((objects.len() - 1, u, to_u));
        maps.push((objects.len() - 1, t, to_t));
    }
    let ssets: Vec<&Sset<2>> = objects.iter().map(|k| &k.sset).collect();
    let arrows: Vec<(usize, usize, &SsetMap<2>)> = maps.iter().map(|(a, b, f)| (*a, *b, f)).collect();
    let colim = Colimit::new(&ssets, &arrows)?;
    Ok(diag_sset(&colim.sset))
}

/// A natural transformation between weights on the same poset.
#[derive(Clone, Debug)]
pub struct WeightTransformation {
    pub components: Vec<SsetMap<1>>,
}

impl WeightTransformation {
    pub fn check(&self, src: &WeightFunctor, tgt: &WeightFunctor) -> Result<()> {
        if src.objects != tgt.objects {
            return arg("weights on different posets");
        }
        for (t, c) in self.components.iter().enumerate() {
            c.validate(&src.values[t], &tgt.values[t])?;
        }
        for &(u, t) in src.maps.keys() {
            let l = self.components[u].compose(&src.maps[&(u, t)]);
            let r = tgt.maps[&(u, t)].compose(&self.components[t]);
            if l != r {
                return Err(Error::Diagram(format!("transformation not natural at {u} <= {t}")));
            }
        }
        Ok(())
    }
}

/// The map of weighted colimits induced by a transformation of weights.
pub fn weighted_colim_map(
    src: &WeightFunctor,
    tgt: &WeightFunctor,
    nat: &WeightTransformation,
) -> Result<(Sset<1>, Sset<1>, SsetMap<1>)> {
    nat.check(src, tgt)?;
    let os = ColimOracle { w: src, index: src.index() };
    let ot = ColimOracle { w: tgt, index: tgt.index() };
    let bound = |w: &WeightFunctor| {
        let cube_dim = w.objects.iter().map(|p| (p.v & !p.j).count_ones() as usize).max().unwrap_or(0);
        cube_dim + w.values.iter().map(|v| v.max_dim()[0]).max().unwrap_or(0)
    };
    let ms = materialize(&os, [bound(src)], usize::MAX)?;
    let mt = materialize(&ot, [bound(tgt)], usize::MAX)?;
    let images = ms
        .gen_elems
        .iter()
        .map(|(u, c, x)| mt.nf_of(&ot, &(*u, c.clone(), nat.components[*u].apply(x))))
        .collect::<Result<Vec<_>>>()?;
    Ok((ms.sset, mt.sset, SsetMap { images }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary, point, simplex};
    use crate::iso::find_iso;

    #[test]
    fn cube_counts() {
        let c = CubeHom::of_necklace(&Necklace::new(vec![3]).unwrap());
        assert_eq!(c.sset.nd_counts(), vec![4, 5, 2]);
        let c = CubeHom::of_necklace(&Necklace::new(vec![1, 1, 1]).unwrap());
        assert_eq!(c.sset.nd_counts(), vec![1]);
        let c = CubeHom::of_necklace(&Necklace::new(vec![2, 2]).unwrap());
        assert!(find_iso(&c.sset, &Product::new(&[&simplex(1), &simplex(1)]).unwrap().sset).is_some());
    }

    #[test]
    fn wedge_split_is_iso() {
        let t1 = Necklace::new(vec![2, 1]).unwrap();
        let t2 = Necklace::new(vec![3]).unwrap();
        let (c, p, f) = wedge_split(&t1, &t2).unwrap();
        f.validate(&c.sset, &p.sset).unwrap();
        assert!(f.is_iso(&p.sset));
    }

    #[test]
    fn pushforward_examples() {
        let full = CubeHom::new(0b101, 0b111).unwrap();
        let edge = CubeHom::new(0b101, 0b101).unwrap();
        let sp = CubeHom::new(0b111, 0b111).unwrap();
        let e = pushforward(&edge, &full).unwrap();
        assert_eq!(full.chain_of(&e.images[0]), vec![0b101]);
        let s = pushforward(&sp, &full).unwrap();
        assert_eq!(full.chain_of(&s.images[0]), vec![0b111]);
        assert!(pushforward(&full, &edge).is_err());
    }

    #[test]
    fn constant_point_weight_gives_simplex_homs() {
        for m in 0..=3 {
            let w = constant_weight(pair_poset(0, m).unwrap(), &point());
            let a = necklace_weighted_colim(&w).unwrap();
            let b = necklace_weighted_colim_uf(&w).unwrap();
            let cube = CubeHom::new(1 | 1 << (m + 1), (1 << (m + 2)) - 1).unwrap();
            assert!(find_iso(&a, &cube.sset).is_some(), "m = {m}");
            assert!(find_iso(&b, &cube.sset).is_some(), "m = {m}");
        }
    }

    #[test]
    fn weights_are_functors() {
        let y = simplex(1);
        let x = point();
        let f = crate::constructions::vertex_map(&y, 0);
        for m in 0..=2 {
            for i in 0..=m {
                let w = weight_f(&DeltaMap::identity(m), &y, &y, &SsetMap::identity(&y), i).unwrap();
                w.check().unwrap();
            }
            let g = weight_g0(m, &x, &y, &f).unwrap();
            g.check().unwrap();
        }
        assert!(weight_f(&DeltaMap::identity(1), &boundary(1), &simplex(1), &SsetMap::from_empty(), 0).is_err());
    }
}
