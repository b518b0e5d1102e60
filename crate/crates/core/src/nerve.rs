//! Strict and homotopy coherent nerves of a simplicial category, as element
//! oracles of bisimplicial sets, and the comparison map between them.
//!
//! An `(m,k)`-simplex of the strict nerve is a string of `m` composable
//! `k`-simplices of homs. An `(m,k)`-simplex of the coherent nerve is an
//! enriched functor `c^hΔ[m] -> C^{Δ[k]}`, stored as one map
//! `cube(i,j) × Δ[k] -> hom(a_i, a_j)` per pair `i < j`.

use crate::constructions::{simplex, simplex_keyed, simplex_map, simplex_nf};
use crate::dshom::CubeHom;
use crate::error::{Error, Result};
use crate::map::{enumerate_maps, SsetMap};
use crate::materialize::{materialize, Materialized, Oracle};
use crate::product::Product;
use crate::scat::SimplicialCategory;
use crate::sset::NormalForm;
use crate::DeltaMap;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// A nerve-like oracle whose simplices carry a string of objects.
pub trait Nerve: Oracle<2> {
    fn category(&self) -> &SimplicialCategory;

    /// The objects `a_0, …, a_m`.
    fn objects(&self, e: &Self::Elem) -> Vec<usize>;

    /// The `k'`-simplex of `hom(a_{θ(m')}, a_m)` along which the last vertex of
    /// `e · θ` is transported to the last vertex of `e`.
    fn transport(&self, e: &Self::Elem, theta: &[DeltaMap; 2]) -> NormalForm<1>;
}

/// Strings of objects `a_0 … a_m` such that all the required homs are non-empty.
fn object_strings(cat: &SimplicialCategory, m: usize, all_pairs: bool) -> Vec<Vec<usize>> {
    let n = cat.num_objects();
    let mut out: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
    for _ in 0..m {
        let mut next = Vec::new();
        for s in &out {
            for b in 0..n {
                let ok = if all_pairs {
                    s.iter().all(|&a| !cat.hom(a, b).is_empty())
                } else {
                    !cat.hom(*s.last().unwrap(), b).is_empty()
                };
                if ok {
                    let mut t = s.clone();
                    t.push(b);
                    next.push(t);
                }
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringElem {
    pub objects: Vec<usize>,
    pub k: usize,
    /// `arrows[i] ∈ hom(a_i, a_{i+1})_k`.
    pub arrows: Vec<NormalForm<1>>,
}

pub struct StrictNerve<'c> {
    pub cat: &'c SimplicialCategory,
}

impl StrictNerve<'_> {
    /// `f_r ∘ … ∘ f_{l+1}`, or the identity of `a_l` when `l = r`.
    pub fn composite(&self, e: &StringElem, l: usize, r: usize) -> NormalForm<1> {
        let mut acc = self.cat.id(e.objects[l], e.k);
        for i in l..r {
            acc = self.cat.compose(e.objects[l], e.objects[i], e.objects[i + 1], &e.arrows[i], &acc);
        }
        acc
    }

    fn vertical(&self, e: &StringElem, v: &DeltaMap) -> StringElem {
        let arrows = e
            .arrows
            .iter()
            .enumerate()
            .map(|(i, f)| self.cat.hom(e.objects[i], e.objects[i + 1]).act1(f, v))
            .collect();
        StringElem { objects: e.objects.clone(), k: v.src(), arrows }
    }
}

impl Oracle<2> for StrictNerve<'_> {
    type Elem = StringElem;

    fn elements(&self, [m, k]: [usize; 2]) -> Result<Vec<StringElem>> {
        let mut out = Vec::new();
        for objects in object_strings(self.cat, m, false) {
            let choices: Vec<Vec<NormalForm<1>>> =
                (0..m).map(|i| self.cat.hom(objects[i], objects[i + 1]).simplices([k])).collect();
            let mut cur = Vec::new();
            fn rec(choices: &[Vec<NormalForm<1>>], cur: &mut Vec<NormalForm<1>>, out: &mut Vec<Vec<NormalForm<1>>>) {
                if cur.len() == choices.len() {
                    out.push(cur.clone());
                    return;
                }
                for c in &choices[cur.len()] {
                    cur.push(c.clone());
                    rec(choices, cur, out);
                    cur.pop();
                }
            }
            let mut all = Vec::new();
            rec(&choices, &mut cur, &mut all);
            out.extend(all.into_iter().map(|arrows| StringElem { objects: objects.clone(), k, arrows }));
        }
        Ok(out)
    }

    fn act(&self, e: &StringElem, ops: &[DeltaMap; 2]) -> StringElem {
        let v = self.vertical(e, &ops[1]);
        let h = &ops[0];
        let img: Vec<usize> = h.image().collect();
        let objects = img.iter().map(|&i| v.objects[i]).collect();
        let arrows = img.windows(2).map(|w| self.composite(&v, w[0], w[1])).collect();
        StringElem { objects, k: v.k, arrows }
    }

    fn degree(&self, e: &StringElem) -> [usize; 2] {
        [e.objects.len() - 1, e.k]
    }
}

impl Nerve for StrictNerve<'_> {
    fn category(&self) -> &SimplicialCategory {
        self.cat
    }

    fn objects(&self, e: &StringElem) -> Vec<usize> {
        e.objects.clone()
    }

    fn transport(&self, e: &StringElem, theta: &[DeltaMap; 2]) -> NormalForm<1> {
        let v = self.vertical(e, &theta[1]);
        let l = theta[0].image().last().unwrap();
        self.composite(&v, l, e.objects.len() - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctorElem {
    pub objects: Vec<usize>,
    pub k: usize,
    /// Generator images of `cube(i,j) × Δ[k] -> hom(a_i, a_j)`, pairs `i < j` in
    /// lexicographic order.
    pub maps: Vec<Vec<NormalForm<1>>>,
}

type CubeProduct = Rc<(CubeHom, Product<1>)>;

pub struct CoherentNerve<'c> {
    pub cat: &'c SimplicialCategory,
    pub limit: usize,
    cubes: RefCell<HashMap<(usize, usize, usize), CubeProduct>>,
}

fn pair_index(m: usize, i: usize, j: usize) -> usize {
    // pairs (0,1), (0,2), …, (0,m), (1,2), …
    (0..i).map(|a| m - a).sum::<usize>() + (j - i - 1)
}

fn window(l: usize, r: usize) -> u64 {
    (1u64 << (r + 1)) - (1u64 << l)
}

impl<'c> CoherentNerve<'c> {
    pub fn new(cat: &'c SimplicialCategory, limit: usize) -> Self {
        CoherentNerve { cat, limit, cubes: RefCell::default() }
    }

    /// `cube(i,j) × Δ[k]` with `cube(i,j)` on the vertex window `i..=j`.
    pub fn cube(&self, i: usize, j: usize, k: usize) -> CubeProduct {
        if let Some(c) = self.cubes.borrow().get(&(i, j, k)) {
            return c.clone();
        }
        let cube = CubeHom::new(1 << i | 1 << j, window(i, j)).expect("interval");
        let prod = Product::new(&[&cube.sset, &simplex(k)]).expect("product");
        let c = Rc::new((cube, prod));
        self.cubes.borrow_mut().insert((i, j, k), c.clone());
        c
    }

    /// The value of the functor on `(s, t) ∈ cube(i,j) × Δ[k]`.
    pub fn eval(&self, e: &FunctorElem, i: usize, j: usize, s: &NormalForm<1>, t: &NormalForm<1>) -> NormalForm<1> {
        if i == j {
            return self.cat.id(e.objects[i], t.d());
        }
        let c = self.cube(i, j, e.k);
        let m = e.objects.len() - 1;
        let map = SsetMap { images: e.maps[pair_index(m, i, j)].clone() };
        map.apply(&c.1.tuple(&[s.clone(), t.clone()]))
    }

    /// The composite forced on a generator of `cube(i,j) × Δ[k]` whose chain
    /// passes through an interior vertex, if any.
    fn forced(&self, e: &FunctorElem, i: usize, j: usize, key: &[NormalForm<1>]) -> Option<NormalForm<1>> {
        let c = self.cube(i, j, e.k);
        let chain = c.0.chain_of(&key[0]);
        let common = chain.iter().fold(u64::MAX, |acc, &s| acc & s);
        let l = (i + 1..j).find(|&l| common >> l & 1 == 1)?;
        let lower = self.cube(i, l, e.k);
        let upper = self.cube(l, j, e.k);
        let s1 = lower.0.chain_nf(&chain.iter().map(|&s| s & window(i, l)).collect::<Vec<_>>());
        let s2 = upper.0.chain_nf(&chain.iter().map(|&s| s & window(l, j)).collect::<Vec<_>>());
        let (a, b, d) = (e.objects[i], e.objects[l], e.objects[j]);
        Some(self.cat.compose(a, b, d, &self.eval(e, l, j, &s2, &key[1]), &self.eval(e, i, l, &s1, &key[1])))
    }
}

impl Oracle<2> for CoherentNerve<'_> {
    type Elem = FunctorElem;

    fn elements(&self, [m, k]: [usize; 2]) -> Result<Vec<FunctorElem>> {
        let mut pairs: Vec<(usize, usize)> = (0..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect();
        pairs.sort_by_key(|&(i, j)| (j - i, i));
        let mut out = Vec::new();
        for objects in object_strings(self.cat, m, true) {
            let mut e = FunctorElem { objects, k, maps: vec![Vec::new(); pairs.len()] };
            self.extend(&mut e, &pairs, 0, &mut out)?;
        }
        Ok(out)
    }

    fn act(&self, e: &FunctorElem, ops: &[DeltaMap; 2]) -> FunctorElem {
        let (h, v) = (&ops[0], &ops[1]);
        let img: Vec<usize> = h.image().collect();
        let m2 = h.src();
        let k2 = v.src();
        let vmap = simplex_map(v);
        let objects: Vec<usize> = img.iter().map(|&i| e.objects[i]).collect();
        let mut maps = Vec::new();
        for i in 0..=m2 {
            for j in i + 1..=m2 {
                let (l, r) = (img[i], img[j]);
                let c = self.cube(i, j, k2);
                let images = c
                    .1
                    .keys
                    .iter()
                    .map(|key| {
                        if l == r {
                            return self.cat.id(objects[i], key[0].d());
                        }
                        let chain: Vec<u64> = c
                            .0
                            .chain_of(&key[0])
                            .iter()
                            .map(|&s| (0..=m2).filter(|&x| s >> x & 1 == 1).fold(0u64, |acc, x| acc | 1 << img[x]))
                            .collect();
                        let s = self.cube(l, r, e.k).0.chain_nf(&chain);
                        self.eval(e, l, r, &s, &vmap.apply(&key[1]))
                    })
                    .collect();
                maps.push(images);
            }
        }
        FunctorElem { objects, k: k2, maps }
    }

    fn degree(&self, e: &FunctorElem) -> [usize; 2] {
        [e.objects.len() - 1, e.k]
    }
}

impl CoherentNerve<'_> {
    fn extend(&self, e: &mut FunctorElem, pairs: &[(usize, usize)], pos: usize, out: &mut Vec<FunctorElem>) -> Result<()> {
        if pos == pairs.len() {
            if out.len() >= self.limit {
                return Err(Error::Resource(format!("more than {} coherent functors", self.limit)));
            }
            out.push(e.clone());
            return Ok(());
        }
        let (i, j) = pairs[pos];
        let m = e.objects.len() - 1;
        let c = self.cube(i, j, e.k);
        let forced: Vec<Option<NormalForm<1>>> = c.1.keys.iter().map(|key| self.forced(e, i, j, key)).collect();
        let hom = self.cat.hom(e.objects[i], e.objects[j]);
        let cands = enumerate_maps(&c.1.sset, hom, &|g, s| forced[g].as_ref().is_none_or(|f| f == s), false, self.limit)?;
        for f in cands {
            e.maps[pair_index(m, i, j)] = f.images;
            self.extend(e, pairs, pos + 1, out)?;
        }
        e.maps[pair_index(m, i, j)] = Vec::new();
        Ok(())
    }
}

impl Nerve for CoherentNerve<'_> {
    fn category(&self) -> &SimplicialCategory {
        self.cat
    }

    fn objects(&self, e: &FunctorElem) -> Vec<usize> {
        e.objects.clone()
    }

    fn transport(&self, e: &FunctorElem, theta: &[DeltaMap; 2]) -> NormalForm<1> {
        let m = e.objects.len() - 1;
        let l = theta[0].image().last().unwrap();
        let k2 = theta[1].src();
        if l == m {
            return self.cat.id(e.objects[m], k2);
        }
        // the top vertex of the cube, constant in the cube direction
        let c = self.cube(l, m, e.k);
        let top = c.0.chain_nf(&vec![window(l, m); k2 + 1]);
        let t = simplex_nf(&simplex_keyed(e.k), &theta[1]);
        self.eval(e, l, m, &top, &t)
    }
}

/// `φ : NC -> 𝔑C` on elements: every cube collapses to the composite.
pub fn compare_elem(n: &StrictNerve<'_>, e: &StringElem) -> FunctorElem {
    let m = e.objects.len() - 1;
    let co = CoherentNerve::new(n.cat, 1);
    let mut maps = Vec::new();
    for i in 0..=m {
        for j in i + 1..=m {
            let f = n.composite(e, i, j);
            let hom = n.cat.hom(e.objects[i], e.objects[j]);
            let c = co.cube(i, j, e.k);
            maps.push(c.1.keys.iter().map(|key| hom.act1(&f, &to_delta(e.k, &key[1]))).collect());
        }
    }
    FunctorElem { objects: e.objects.clone(), k: e.k, maps }
}

/// A simplex of `Δ[k]` as a monotone map into `[k]`.
pub fn to_delta(k: usize, t: &NormalForm<1>) -> DeltaMap {
    let keyed = simplex_keyed(k);
    DeltaMap::from_mask(k, keyed.keys[t.gen]).compose(&t.degen[0])
}

/// Both nerves up to `bound` and the comparison map between them.
pub struct NerveComparison<'c> {
    pub strict: Materialized<StringElem, 2>,
    pub coherent: Materialized<FunctorElem, 2>,
    pub map: SsetMap<2>,
    pub strict_oracle: StrictNerve<'c>,
    pub coherent_oracle: CoherentNerve<'c>,
}

pub fn nerve_comparison(cat: &SimplicialCategory, bound: [usize; 2], max_cells: usize) -> Result<NerveComparison<'_>> {
    let so = StrictNerve { cat };
    let co = CoherentNerve::new(cat, max_cells);
    let strict = materialize(&so, bound, max_cells)?;
    let coherent = materialize(&co, bound, max_cells)?;
    let images = strict
        .gen_elems
        .iter()
        .map(|e| coherent.nf_of(&co, &compare_elem(&so, e)))
        .collect::<Result<Vec<_>>>()?;
    let map = SsetMap { images };
    map.validate(&strict.sset, &coherent.sset)?;
    Ok(NerveComparison { strict, coherent, map, strict_oracle: so, coherent_oracle: co })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::point;
    use crate::materialize::check_simplicial_identities;
    use crate::scat::{suspension, unit_category};

    #[test]
    fn nerves_of_small_categories() {
        let arrow = suspension(&point());
        let so = StrictNerve { cat: &arrow };
        let n = materialize(&so, [3, 2], 10_000).unwrap();
        assert_eq!(n.sset.num_gens(), 3);
        let unit = unit_category();
        let n = materialize(&StrictNerve { cat: &unit }, [2, 2], 10_000).unwrap();
        assert_eq!(n.sset.num_gens(), 1);
        let sx = suspension(&simplex(1));
        let so = StrictNerve { cat: &sx };
        assert_eq!(so.elements([1, 1]).unwrap().len(), 2 + simplex(1).count_simplices([1]));
    }

    #[test]
    fn nerves_agree_in_low_horizontal_degree() {
        for cat in [suspension(&point()), suspension(&simplex(1)), crate::scat::ch_simplex(2)] {
            let c = nerve_comparison(&cat, [2, 1], 100_000).unwrap();
            for m in 0..=1 {
                for k in 0..=1 {
                    assert_eq!(c.strict.sset.count_simplices([m, k]), c.coherent.sset.count_simplices([m, k]));
                }
            }
        }
    }

    #[test]
    fn comparison_is_an_iso_for_the_arrow_and_injective_for_a_suspension() {
        let arrow = suspension(&point());
        let c = nerve_comparison(&arrow, [3, 2], 100_000).unwrap();
        assert!(c.map.is_iso(&c.coherent.sset));
        let sx = suspension(&simplex(1));
        let c = nerve_comparison(&sx, [2, 1], 100_000).unwrap();
        let s = c.strict.sset.simplices([2, 0]);
        let images: std::collections::HashSet<_> = s.iter().map(|x| c.map.apply(x)).collect();
        assert_eq!(images.len(), s.len());
    }

    #[test]
    fn nerve_operators_satisfy_the_simplicial_identities() {
        let cat = crate::scat::ch_simplex(2);
        assert!(check_simplicial_identities(&StrictNerve { cat: &cat }, [3, 2]).unwrap().is_none());
        assert!(check_simplicial_identities(&CoherentNerve::new(&cat, 100_000), [2, 1]).unwrap().is_none());
    }
}
