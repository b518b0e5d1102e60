//! Grothendieck constructions of enriched presheaves over the strict or the
//! coherent nerve, their right adjoint, and the strict right-fibration check.
//!
//! An `(m,k)`-simplex of `∫F` is a nerve simplex `e` with objects `a_0 … a_m`
//! together with `x ∈ F(a_m)_k`; an operator `θ` sends `x` to `x·θ_v` acted on
//! by the transport from `a_{θ(m')}` to `a_m`.

use crate::colimit::Colimit;
use crate::constructions::{embed, simplex, simplex_map};
use crate::error::{Error, Result};
use crate::map::{enumerate_maps, SsetMap};
use crate::materialize::{materialize, Materialized, Oracle};
use crate::nerve::{compare_elem, to_delta, Nerve, NerveComparison};
use crate::presheaf::{enumerate_nat, presheaf_colimit, EnrichedPresheaf, PresheafMap};
use crate::product::Product;
use crate::scat::SimplicialCategory;
use crate::sset::{NormalForm, Sset};
use crate::DeltaMap;
use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

pub struct Groth<'a, N: Nerve> {
    pub nerve: &'a N,
    pub f: &'a EnrichedPresheaf,
}

pub type GrothElem<E> = (E, NormalForm<1>);

impl<N: Nerve> Oracle<2> for Groth<'_, N> {
    type Elem = GrothElem<N::Elem>;

    fn elements(&self, deg: [usize; 2]) -> Result<Vec<Self::Elem>> {
        let mut out = Vec::new();
        for e in self.nerve.elements(deg)? {
            let last = *self.nerve.objects(&e).last().unwrap();
            for x in self.f.values[last].simplices([deg[1]]) {
                out.push((e.clone(), x));
            }
        }
        Ok(out)
    }

    fn act(&self, (e, x): &Self::Elem, ops: &[DeltaMap; 2]) -> Self::Elem {
        let objs = self.nerve.objects(e);
        let m = objs.len() - 1;
        let l = ops[0].image().last().unwrap();
        let xv = self.f.values[objs[m]].act1(x, &ops[1]);
        let x2 = if l == m { xv } else { self.f.act(objs[l], objs[m], &self.nerve.transport(e, ops), &xv) };
        (self.nerve.act(e, ops), x2)
    }

    fn degree(&self, e: &Self::Elem) -> [usize; 2] {
        self.nerve.degree(&e.0)
    }
}

/// `∫F` up to a bound with its projection to the (materialized) nerve.
pub struct GrothTotal<E> {
    pub mat: Materialized<GrothElem<E>, 2>,
    pub projection: SsetMap<2>,
}

impl<E> GrothTotal<E> {
    pub fn sset(&self) -> &Sset<2> {
        &self.mat.sset
    }
}

pub fn groth<N: Nerve>(
    nerve: &N,
    nmat: &Materialized<N::Elem, 2>,
    f: &EnrichedPresheaf,
    bound: [usize; 2],
    max_cells: usize,
) -> Result<GrothTotal<N::Elem>> {
    let o = Groth { nerve, f };
    let mat = materialize(&o, bound, max_cells)?;
    let projection = SsetMap {
        images: mat.gen_elems.iter().map(|(e, _)| nmat.nf_of(nerve, e)).collect::<Result<Vec<_>>>()?,
    };
    projection.validate(&mat.sset, &nmat.sset)?;
    Ok(GrothTotal { mat, projection })
}

/// `∫η : ∫F -> ∫G` for a natural transformation `η`.
pub fn groth_map<N: Nerve>(
    nerve: &N,
    (src, f): (&GrothTotal<N::Elem>, &EnrichedPresheaf),
    (tgt, g): (&GrothTotal<N::Elem>, &EnrichedPresheaf),
    eta: &PresheafMap,
) -> Result<SsetMap<2>> {
    let o = Groth { nerve, f: g };
    debug_assert_eq!(f.num_objects(), g.num_objects());
    let images = src
        .mat
        .gen_elems
        .iter()
        .map(|(e, x)| {
            let last = *nerve.objects(e).last().unwrap();
            tgt.mat.nf_of(&o, &(e.clone(), eta.components[last].apply(x)))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = SsetMap { images };
    map.validate(src.sset(), tgt.sset())?;
    Ok(map)
}

/// A bound covering every non-degenerate simplex of `∫F` over a directed category:
/// strings have at most `n-1` non-identity arrows, and vertical dimensions add up.
pub fn full_bound(cat: &SimplicialCategory, value_dim: usize) -> Result<[usize; 2]> {
    if !cat.is_directed() {
        return Err(Error::Unsupported {
            reason: "exact bounds need a directed category".into(),
            witness: "some hom runs backwards or an endo-hom is not a point".into(),
        });
    }
    let n = cat.num_objects();
    let h = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| cat.hom(a, b).max_dim()[0]).max().unwrap_or(0);
    Ok([n - 1, (n - 1) * h + value_dim])
}

/// Per horizontal degree `m ≥ 1`: whether `P_{m,k} -> W_{m,k} ×_{W_{0,k}} P_{0,k}`
/// (along the last vertex) is a bijection for every `k` up to the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightFibReport {
    pub levels: Vec<(usize, bool)>,
    /// Fibrancy of fibres and homotopy pullbacks are outside the check.
    pub homotopy_conditions_checked: bool,
}

impl RightFibReport {
    pub fn ok(&self) -> bool {
        self.levels.iter().all(|l| l.1)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.levels.iter().find(|l| !l.1).map(|l| l.0)
    }
}

pub fn rightfib_check(p: &Sset<2>, w: &Sset<2>, map: &SsetMap<2>, bound: [usize; 2]) -> Result<RightFibReport> {
    map.validate(p, w)?;
    let mut levels = Vec::new();
    for m in 1..=bound[0] {
        let mut ok = true;
        for k in 0..=bound[1] {
            let last = [DeltaMap::vertex(m, m), DeltaMap::identity(k)];
            let mut fibres: HashMap<NormalForm<2>, usize> = HashMap::new();
            for x in p.simplices([0, k]) {
                *fibres.entry(map.apply(&x)).or_default() += 1;
            }
            let expected: usize = w.simplices([m, k]).iter().map(|s| fibres.get(&w.act(s, &last)).copied().unwrap_or(0)).sum();
            let ps = p.simplices([m, k]);
            let pairs: BTreeSet<(NormalForm<2>, NormalForm<2>)> = ps.iter().map(|s| (map.apply(s), p.act(s, &last))).collect();
            ok &= pairs.len() == ps.len() && ps.len() == expected;
        }
        levels.push((m, ok));
    }
    Ok(RightFibReport { levels, homotopy_conditions_checked: false })
}

/// `η_F : ∫^N F -> ∫^𝔑 F` over the nerve comparison.
pub struct EtaComparison {
    pub map: SsetMap<2>,
    pub level_zero_identity: bool,
    pub commutes: bool,
}

pub fn eta_compare(
    cmp: &NerveComparison<'_>,
    f: &EnrichedPresheaf,
    strict: &GrothTotal<crate::nerve::StringElem>,
    coherent: &GrothTotal<crate::nerve::FunctorElem>,
) -> Result<EtaComparison> {
    let o = Groth { nerve: &cmp.coherent_oracle, f };
    let mut level_zero_identity = true;
    let images = strict
        .mat
        .gen_elems
        .iter()
        .map(|(e, x)| {
            let img = (compare_elem(&cmp.strict_oracle, e), x.clone());
            let nf = coherent.mat.nf_of(&o, &img)?;
            if e.objects.len() == 1 {
                let back = &coherent.mat.gen_elems[nf.gen];
                level_zero_identity &= nf.degen.iter().all(DeltaMap::is_identity) && back.0.objects == e.objects && back.1 == *x;
            }
            Ok(nf)
        })
        .collect::<Result<Vec<_>>>()?;
    let map = SsetMap { images };
    map.validate(strict.sset(), coherent.sset())?;
    let commutes = coherent.projection.compose(&map) == cmp.map.compose(&strict.projection);
    Ok(EtaComparison { map, level_zero_identity, commutes })
}

/// The canonical map `∫(F ⊗ X) -> (∫F) ⊗ X`.
pub fn tensor_comparison<N: Nerve>(
    nerve: &N,
    f: &EnrichedPresheaf,
    x: &Sset<1>,
    nmat: &Materialized<N::Elem, 2>,
    bound: [usize; 2],
    max_cells: usize,
) -> Result<bool> {
    let cat = nerve.category();
    let (fx, prods) = f.tensor(cat, x)?;
    let lhs = groth(nerve, nmat, &fx, bound, max_cells)?;
    let base = groth(nerve, nmat, f, bound, max_cells)?;
    let ex = embed(x, 1);
    let rhs = Product::new(&[base.sset(), &ex])?;
    let o = Groth { nerve, f };
    let images = lhs
        .mat
        .gen_elems
        .iter()
        .map(|(e, z)| {
            let last = *nerve.objects(e).last().unwrap();
            let c = prods[last].components(z);
            let m = nerve.degree(e)[0];
            let fx = base.mat.nf_of(&o, &(e.clone(), c[0].clone()))?;
            let y = NormalForm { degen: [DeltaMap::terminal(m), c[1].degen[0].clone()], gen: c[1].gen };
            Ok(rhs.tuple(&[fx, y]))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = SsetMap { images };
    map.validate(lhs.sset(), &rhs.sset)?;
    Ok(map.is_iso(&rhs.sset))
}

/// The Yoneda map `Hom(-,c) -> G` picking the vertex `v ∈ G(c)_0`.
pub fn yoneda_map(cat: &SimplicialCategory, g: &EnrichedPresheaf, c: usize, v: &NormalForm<1>) -> PresheafMap {
    let components = (0..cat.num_objects())
        .map(|d| {
            let hom = cat.hom(d, c);
            SsetMap {
                images: (0..hom.num_gens())
                    .map(|h| {
                        let f = hom.id_nf(h);
                        let vd = g.values[c].act1(v, &DeltaMap::terminal(f.d()));
                        g.act(d, c, &f, &vd)
                    })
                    .collect(),
            }
        })
        .collect();
    PresheafMap { components }
}

/// `∫G ⨿_{∫A} ∫C -> ∫(G ⨿_A C)` is an isomorphism.
pub fn pushout_comparison<N: Nerve>(
    nerve: &N,
    nmat: &Materialized<N::Elem, 2>,
    presheaves: [&EnrichedPresheaf; 3],
    maps: [&PresheafMap; 2],
    bound: [usize; 2],
    max_cells: usize,
) -> Result<bool> {
    let cat = nerve.category();
    let po = presheaf_colimit(cat, &presheaves, &[(0, 1, maps[0]), (0, 2, maps[1])])?;
    let totals = presheaves.iter().map(|f| groth(nerve, nmat, f, bound, max_cells)).collect::<Result<Vec<_>>>()?;
    let whole = groth(nerve, nmat, &po.presheaf, bound, max_cells)?;
    let f01 = groth_map(nerve, (&totals[0], presheaves[0]), (&totals[1], presheaves[1]), maps[0])?;
    let f02 = groth_map(nerve, (&totals[0], presheaves[0]), (&totals[2], presheaves[2]), maps[1])?;
    let colim = Colimit::new(&[totals[0].sset(), totals[1].sset(), totals[2].sset()], &[(0, 1, &f01), (0, 2, &f02)])?;
    let legs = (0..3)
        .map(|i| groth_map(nerve, (&totals[i], presheaves[i]), (&whole, &po.presheaf), &po.cocone[i]))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&SsetMap<2>> = legs.iter().collect();
    let cmp = colim.mediate(&refs, whole.sset())?;
    Ok(cmp.is_iso(whole.sset()))
}

/// The right adjoint `𝓗P` of `∫` for an object `P` over the nerve:
/// `𝓗P(a)_k` is the set of maps `∫(Hom(-,a) ⊗ Δ[k]) -> P` over the nerve.
pub struct RightAdjoint<'a, N: Nerve> {
    pub nerve: &'a N,
    pub nmat: &'a Materialized<N::Elem, 2>,
    pub p: &'a Sset<2>,
    pub pmap: &'a SsetMap<2>,
    pub max_cells: usize,
    reps: RefCell<HashMap<(usize, usize), Rc<(EnrichedPresheaf, Vec<Product<1>>)>>>,
    totals: RefCell<HashMap<(usize, usize), Rc<GrothTotal<N::Elem>>>>,
    failure: RefCell<Option<Error>>,
}

impl<'a, N: Nerve> RightAdjoint<'a, N> {
    pub fn new(nerve: &'a N, nmat: &'a Materialized<N::Elem, 2>, p: &'a Sset<2>, pmap: &'a SsetMap<2>, max_cells: usize) -> Self {
        RightAdjoint { nerve, nmat, p, pmap, max_cells, reps: RefCell::default(), totals: RefCell::default(), failure: RefCell::default() }
    }

    /// `Hom(-,a) ⊗ Δ[k]` with its product decompositions.
    pub fn rep(&self, a: usize, k: usize) -> Result<Rc<(EnrichedPresheaf, Vec<Product<1>>)>> {
        if let Some(r) = self.reps.borrow().get(&(a, k)) {
            return Ok(r.clone());
        }
        let cat = self.nerve.category();
        let r = Rc::new(EnrichedPresheaf::representable(cat, a).tensor(cat, &simplex(k))?);
        self.reps.borrow_mut().insert((a, k), r.clone());
        Ok(r)
    }

    /// `∫(Hom(-,a) ⊗ Δ[k])`, complete.
    pub fn total(&self, a: usize, k: usize) -> Result<Rc<GrothTotal<N::Elem>>> {
        if let Some(t) = self.totals.borrow().get(&(a, k)) {
            return Ok(t.clone());
        }
        let cat = self.nerve.category();
        let rep = self.rep(a, k)?;
        let bound = full_bound(cat, k)?;
        let t = Rc::new(groth(self.nerve, self.nmat, &rep.0, bound, self.max_cells)?);
        self.totals.borrow_mut().insert((a, k), t.clone());
        Ok(t)
    }

    /// `∫(Hom(-,b) ⊗ Δ[k]) -> ∫(Hom(-,a) ⊗ Δ[k'])` induced by `(g, t) ↦ (f·t ∘ g, θ∘t)`
    /// for `f ∈ hom(b,a)_{k'}` and `θ : [k] -> [k']`.
    fn induced(&self, b: usize, k: usize, a: usize, f: &NormalForm<1>, theta: &DeltaMap) -> Result<SsetMap<2>> {
        let cat = self.nerve.category();
        let (src_rep, tgt_rep) = (self.rep(b, k)?, self.rep(a, theta.tgt())?);
        let (src, tgt) = (self.total(b, k)?, self.total(a, theta.tgt())?);
        let tmap = simplex_map(theta);
        let kk = theta.tgt();
        let o = Groth { nerve: self.nerve, f: &tgt_rep.0 };
        let images = src
            .mat
            .gen_elems
            .iter()
            .map(|(e, z)| {
                let c = *self.nerve.objects(e).last().unwrap();
                let parts = src_rep.1[c].components(z);
                let t = tmap.apply(&parts[1]);
                let ft = cat.hom(b, a).act1(f, &to_delta(kk, &t));
                let g = cat.compose(c, b, a, &ft, &parts[0]);
                tgt.mat.nf_of(&o, &(e.clone(), tgt_rep.1[c].tuple(&[g, t])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SsetMap { images })
    }

    pub fn maps_over(&self, a: usize, k: usize) -> Result<Vec<SsetMap<2>>> {
        let t = self.total(a, k)?;
        enumerate_maps(t.sset(), self.p, &|g, c| self.pmap.apply(c) == t.projection.images[g], false, self.max_cells)
    }

    /// `𝓗P`, with values materialized up to vertical degree `k_bound`.
    pub fn presheaf(&self, k_bound: usize) -> Result<(EnrichedPresheaf, Vec<Materialized<ValueElem, 1>>)> {
        let cat = self.nerve.category();
        let mats = (0..cat.num_objects())
            .map(|a| materialize(&ValueOracle { ra: self, a }, [k_bound], self.max_cells))
            .collect::<Result<Vec<_>>>();
        if let Some(err) = self.failure.borrow_mut().take() {
            return Err(err);
        }
        let mats = mats?;
        let values = mats.iter().map(|m| m.sset.clone()).collect();
        let h = EnrichedPresheaf::build(cat, values, |b, a, f, xi| {
            let k = f.d();
            let (_, xi_elem) = mats[a].elem_of(&ValueOracle { ra: self, a }, xi);
            let ind = self.induced(b, k, a, f, &DeltaMap::identity(k))?;
            let xi_map = SsetMap { images: xi_elem };
            let images = ind.images.iter().map(|s| xi_map.apply(s)).collect();
            mats[b].nf_of(&ValueOracle { ra: self, a: b }, &(k, images))
        })?;
        Ok((h, mats))
    }
}

pub struct ValueOracle<'r, 'a, N: Nerve> {
    pub ra: &'r RightAdjoint<'a, N>,
    pub a: usize,
}

/// A `k`-simplex of `𝓗P(a)`: `k` and the generator images of the map.
pub type ValueElem = (usize, Vec<NormalForm<2>>);

impl<N: Nerve> Oracle<1> for ValueOracle<'_, '_, N> {
    type Elem = ValueElem;

    fn elements(&self, [k]: [usize; 1]) -> Result<Vec<Self::Elem>> {
        Ok(self.ra.maps_over(self.a, k)?.into_iter().map(|m| (k, m.images)).collect())
    }

    fn act(&self, (_, xi): &Self::Elem, ops: &[DeltaMap; 1]) -> Self::Elem {
        let theta = &ops[0];
        let k = theta.src();
        let id = self.ra.nerve.category().id(self.a, theta.tgt());
        match self.ra.induced(self.a, k, self.a, &id, theta) {
            Ok(ind) => {
                let xi = SsetMap { images: xi.clone() };
                (k, ind.images.iter().map(|s| xi.apply(s)).collect())
            }
            Err(err) => {
                self.ra.failure.borrow_mut().get_or_insert(err);
                (k, Vec::new())
            }
        }
    }

    fn degree(&self, e: &Self::Elem) -> [usize; 1] {
        [e.0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothAdjunctionReport {
    pub maps_over_nerve: usize,
    pub transformations: usize,
    pub bijective: bool,
}

/// `Hom_{/nerve}(∫F, P) ≅ Nat(F, 𝓗P)` by transposition.
pub fn check_groth_adjunction<N: Nerve>(ra: &RightAdjoint<'_, N>, f: &EnrichedPresheaf) -> Result<GrothAdjunctionReport> {
    let cat = ra.nerve.category();
    let kmax = f.values.iter().map(|v| v.max_dim()[0]).max().unwrap_or(0);
    let bound = full_bound(cat, kmax)?;
    let total = groth(ra.nerve, ra.nmat, f, bound, ra.max_cells)?;
    let (h, mats) = ra.presheaf(kmax + 1)?;
    let maps = enumerate_maps(total.sset(), ra.p, &|g, c| ra.pmap.apply(c) == total.projection.images[g], false, ra.max_cells)?;
    let nats = enumerate_nat(cat, f, &h, false, ra.max_cells)?;
    let nat_set: HashSet<PresheafMap> = nats.iter().cloned().collect();
    let o = Groth { nerve: ra.nerve, f };
    let mut seen = HashSet::new();
    let mut bijective = maps.len() == nats.len();
    for psi in &maps {
        let mut components = Vec::new();
        for a in 0..cat.num_objects() {
            let images = (0..f.values[a].num_gens())
                .map(|x| {
                    let xn = f.values[a].id_nf(x);
                    let k = xn.d();
                    let (rep, t) = (ra.rep(a, k)?, ra.total(a, k)?);
                    let xi: Vec<NormalForm<2>> = t
                        .mat
                        .gen_elems
                        .iter()
                        .map(|(e, z)| {
                            let c = *ra.nerve.objects(e).last().unwrap();
                            let parts = rep.1[c].components(z);
                            let xt = f.values[a].act1(&xn, &to_delta(k, &parts[1]));
                            let y = f.act(c, a, &parts[0], &xt);
                            Ok(psi.apply(&total.mat.nf_of(&o, &(e.clone(), y))?))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    mats[a].nf_of(&ValueOracle { ra, a }, &(k, xi))
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(SsetMap { images });
        }
        let eta = PresheafMap { components };
        bijective &= nat_set.contains(&eta) && seen.insert(eta);
    }
    Ok(GrothAdjunctionReport { maps_over_nerve: maps.len(), transformations: nats.len(), bijective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary, point};
    use crate::materialize::check_simplicial_identities;
    use crate::presheaf::find_presheaf_iso;
    use crate::nerve::{nerve_comparison, CoherentNerve, StrictNerve};
    use crate::scat::{glue, suspension};

    const CELLS: usize = 200_000;

    fn arrow() -> SimplicialCategory {
        suspension(&point())
    }

    #[test]
    fn terminal_presheaf_gives_the_nerve() {
        let cat = suspension(&simplex(1));
        let n = StrictNerve { cat: &cat };
        let bound = full_bound(&cat, 0).unwrap();
        let nmat = materialize(&n, bound, CELLS).unwrap();
        let t = groth(&n, &nmat, &EnrichedPresheaf::terminal(&cat), bound, CELLS).unwrap();
        assert!(t.projection.is_iso(&nmat.sset));
    }

    #[test]
    fn representable_over_the_arrow() {
        let cat = arrow();
        let n = StrictNerve { cat: &cat };
        let f = EnrichedPresheaf::representable(&cat, 1);
        let nmat = materialize(&n, [2, 1], CELLS).unwrap();
        let t = groth(&n, &nmat, &f, [2, 1], CELLS).unwrap();
        assert_eq!(t.sset().gens_of_dim([0, 0]).count(), 2);
        assert_eq!(t.sset().gens_of_dim([1, 0]).count(), 1);
        assert_eq!(t.sset().num_gens(), 3);
        // the last face of the edge is the vertex over object 0
        let e = t.sset().gens_of_dim([1, 0]).next().unwrap();
        let d1 = t.sset().act(&t.sset().id_nf(e), &[DeltaMap::coface(1, 1), DeltaMap::identity(0)]);
        assert_eq!(t.mat.gen_elems[d1.gen].0.objects, vec![0]);
    }

    #[test]
    fn grothendieck_operators_satisfy_the_simplicial_identities() {
        let cat = suspension(&simplex(1));
        let f = EnrichedPresheaf::representable(&cat, 1).tensor(&cat, &simplex(1)).unwrap().0;
        let n = StrictNerve { cat: &cat };
        assert_eq!(check_simplicial_identities(&Groth { nerve: &n, f: &f }, [2, 2]).unwrap(), None);
        let line = glue(&arrow(), 1, &arrow(), 0).unwrap();
        let g = EnrichedPresheaf::representable(&line, 2).tensor(&line, &simplex(1)).unwrap().0;
        let c = CoherentNerve::new(&line, CELLS);
        assert_eq!(check_simplicial_identities(&Groth { nerve: &c, f: &g }, [3, 1]).unwrap(), None);
    }

    #[test]
    fn coherent_last_face_is_not_functorial_over_a_non_discrete_hom() {
        // d1 d2 acts through the composite path, d1 d1 through the direct one
        let cat = suspension(&simplex(1));
        let f = EnrichedPresheaf::representable(&cat, 1).tensor(&cat, &simplex(1)).unwrap().0;
        let c = CoherentNerve::new(&cat, CELLS);
        assert!(check_simplicial_identities(&Groth { nerve: &c, f: &f }, [2, 0]).unwrap().is_some());
    }

    #[test]
    fn grothendieck_totals_are_right_fibrations() {
        let cat = suspension(&simplex(1));
        let n = StrictNerve { cat: &cat };
        let bound = full_bound(&cat, 1).unwrap();
        let nmat = materialize(&n, bound, CELLS).unwrap();
        for f in [EnrichedPresheaf::terminal(&cat), EnrichedPresheaf::representable(&cat, 1), EnrichedPresheaf::representable(&cat, 0)] {
            let t = groth(&n, &nmat, &f, bound, CELLS).unwrap();
            let r = rightfib_check(t.sset(), &nmat.sset, &t.projection, bound).unwrap();
            assert!(r.ok() && !r.homotopy_conditions_checked);
        }
    }

    #[test]
    fn a_free_horizontal_edge_is_not_a_right_fibration() {
        let p = embed(&simplex(1), 0);
        let w = embed(&point(), 0);
        let map = SsetMap { images: vec![w.id_nf(0); p.num_gens()] };
        let map = SsetMap { images: map.images.iter().zip(0..).map(|(v, g)| w.act(v, &[DeltaMap::terminal(p.dim(g)[0]), DeltaMap::identity(0)])).collect() };
        let r = rightfib_check(&p, &w, &map, [2, 0]).unwrap();
        assert_eq!(r.first_failure(), Some(1));
        let id = rightfib_check(&p, &p, &SsetMap::identity(&p), [2, 1]).unwrap();
        assert!(id.ok());
    }

    #[test]
    fn eta_is_an_iso_over_the_arrow() {
        let cat = arrow();
        let bound = [2, 1];
        let cmp = nerve_comparison(&cat, bound, CELLS).unwrap();
        for f in [EnrichedPresheaf::terminal(&cat), EnrichedPresheaf::representable(&cat, 1)] {
            let s = groth(&cmp.strict_oracle, &cmp.strict, &f, bound, CELLS).unwrap();
            let c = groth(&cmp.coherent_oracle, &cmp.coherent, &f, bound, CELLS).unwrap();
            let eta = eta_compare(&cmp, &f, &s, &c).unwrap();
            assert!(eta.level_zero_identity && eta.commutes);
            assert!(eta.map.is_iso(c.sset()));
        }
    }

    #[test]
    fn tensors_are_preserved() {
        let cat = suspension(&simplex(1));
        let n = StrictNerve { cat: &cat };
        for x in [simplex(1), boundary(2)] {
            for f in [EnrichedPresheaf::terminal(&cat), EnrichedPresheaf::representable(&cat, 1)] {
                let bound = full_bound(&cat, 2).unwrap();
                let nmat = materialize(&n, bound, CELLS).unwrap();
                assert!(tensor_comparison(&n, &f, &x, &nmat, bound, CELLS).unwrap());
            }
        }
    }

    #[test]
    fn pushouts_are_preserved() {
        let cat = arrow();
        let n = StrictNerve { cat: &cat };
        let bound = [1, 2];
        let nmat = materialize(&n, bound, CELLS).unwrap();
        let r1 = EnrichedPresheaf::representable(&cat, 1);
        for x in [simplex(1), boundary(2)] {
            let g = r1.tensor(&cat, &x).unwrap().0;
            let c = EnrichedPresheaf::representable(&cat, 0).tensor(&cat, &simplex(1)).unwrap().0;
            let mg = yoneda_map(&cat, &g, 1, &g.values[1].id_nf(0));
            let v1 = c.values[1].simplices([0]);
            let vc = if v1.is_empty() { None } else { Some(v1[0].clone()) };
            if let Some(v) = vc {
                let mc = yoneda_map(&cat, &c, 1, &v);
                assert!(pushout_comparison(&n, &nmat, [&r1, &g, &c], [&mg, &mc], bound, CELLS).unwrap());
            }
            let mg2 = yoneda_map(&cat, &g, 1, g.values[1].simplices([0]).last().unwrap());
            assert!(pushout_comparison(&n, &nmat, [&r1, &g, &g], [&mg, &mg2], bound, CELLS).unwrap());
        }
    }

    #[test]
    fn right_adjoint_of_the_nerve_is_terminal() {
        let cat = arrow();
        let n = StrictNerve { cat: &cat };
        let nmat = materialize(&n, [1, 3], CELLS).unwrap();
        let id = SsetMap::identity(&nmat.sset);
        let ra = RightAdjoint::new(&n, &nmat, &nmat.sset, &id, CELLS);
        let (h, _) = ra.presheaf(2).unwrap();
        assert!(find_presheaf_iso(&cat, &h, &EnrichedPresheaf::terminal(&cat)).unwrap().is_some());
    }

    #[test]
    fn right_adjoint_transposition_is_bijective() {
        let cat = arrow();
        let n = StrictNerve { cat: &cat };
        let nmat = materialize(&n, [1, 3], CELLS).unwrap();
        let rep = EnrichedPresheaf::representable(&cat, 1);
        let p = groth(&n, &nmat, &rep, [1, 3], CELLS).unwrap();
        let ra = RightAdjoint::new(&n, &nmat, p.sset(), &p.projection, CELLS);
        let (h, _) = ra.presheaf(1).unwrap();
        // degree 0 of the value at each object is the representable's
        for a in 0..2 {
            assert_eq!(h.values[a].count_simplices([0]), rep.values[a].count_simplices([0]));
        }
        for f in [EnrichedPresheaf::terminal(&cat), rep.clone(), EnrichedPresheaf::representable(&cat, 0)] {
            let r = check_groth_adjunction(&ra, &f).unwrap();
            assert!(r.bijective, "{r:?}");
        }
    }
}
