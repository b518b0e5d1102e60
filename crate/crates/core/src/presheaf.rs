//! Simplicially enriched presheaves `C^op -> sSet` on a finite simplicial
//! category, their natural transformations, valuewise colimits and enriched
//! left Kan extension.

use crate::colimit::Colimit;
use crate::error::{arg, Error, Result};
use crate::iso::all_isos;
use crate::map::{enumerate_maps, SsetMap};
use crate::product::Product;
use crate::scat::{Composition, EnrichedFunctor, SimplicialCategory};
use crate::sset::{NormalForm, Sset};
use std::collections::BTreeMap;

/// Values `F(a)` and actions `hom(a,b) × F(b) -> F(a)`.
#[derive(Clone, Debug)]
pub struct EnrichedPresheaf {
    pub values: Vec<Sset<1>>,
    actions: BTreeMap<(usize, usize), Composition>,
}

impl EnrichedPresheaf {
    /// Builds a presheaf from an action rule evaluated on generators of
    /// `hom(a,b) × F(b)`; the result is checked to be a map but not checked for
    /// unit and associativity (see [`EnrichedPresheaf::check`]).
    pub fn build(
        cat: &SimplicialCategory,
        values: Vec<Sset<1>>,
        mut act: impl FnMut(usize, usize, &NormalForm<1>, &NormalForm<1>) -> Result<NormalForm<1>>,
    ) -> Result<Self> {
        let n = cat.num_objects();
        if values.len() != n {
            return arg("one value per object required");
        }
        let mut actions = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if cat.hom(a, b).is_empty() || values[b].is_empty() {
                    continue;
                }
                let product = Product::new(&[cat.hom(a, b), &values[b]])?;
                let images =
                    product.keys.iter().map(|k| act(a, b, &k[0], &k[1])).collect::<Result<Vec<_>>>()?;
                let map = SsetMap::new(&product.sset, &values[a], images)?;
                actions.insert((a, b), Composition { product, map });
            }
        }
        Ok(EnrichedPresheaf { values, actions })
    }

    pub fn num_objects(&self) -> usize {
        self.values.len()
    }

    pub fn action(&self, a: usize, b: usize) -> Option<&Composition> {
        self.actions.get(&(a, b))
    }

    /// `x · f` for `f ∈ hom(a,b)` and `x ∈ F(b)` of equal dimension.
    pub fn act(&self, a: usize, b: usize, f: &NormalForm<1>, x: &NormalForm<1>) -> NormalForm<1> {
        let c = &self.actions[&(a, b)];
        c.map.apply(&c.product.tuple(&[f.clone(), x.clone()]))
    }

    /// Unit and associativity of the action.
    pub fn check(&self, cat: &SimplicialCategory) -> Result<()> {
        let n = cat.num_objects();
        for a in 0..n {
            for g in 0..self.values[a].num_gens() {
                let x = self.values[a].id_nf(g);
                if self.act(a, a, &cat.id(a, x.d()), &x) != x {
                    return Err(Error::Diagram(format!("identity of {a} does not act trivially")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let Some(comp) = cat.composition(a, b, c) else { continue };
                    if self.values[c].is_empty() {
                        continue;
                    }
                    let triple = Product::new(&[cat.hom(b, c), cat.hom(a, b), &self.values[c]])?;
                    for k in &triple.keys {
                        let (g, f, x) = (&k[0], &k[1], &k[2]);
                        let l = self.act(a, b, f, &self.act(b, c, g, x));
                        let r = self.act(a, c, &comp.map.apply(&comp.product.tuple(&[g.clone(), f.clone()])), x);
                        if l != r {
                            return Err(Error::Diagram(format!("action is not associative on {a}->{b}->{c}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The presheaf with every value a point.
    pub fn terminal(cat: &SimplicialCategory) -> Self {
        let pt = crate::constructions::point();
        Self::build(cat, vec![pt; cat.num_objects()], |_, _, _, x| Ok(x.clone())).expect("terminal presheaf")
    }

    /// The presheaf with every value empty.
    pub fn empty(cat: &SimplicialCategory) -> Self {
        EnrichedPresheaf { values: vec![Sset::empty(); cat.num_objects()], actions: BTreeMap::new() }
    }

    /// `hom(-, c)`, acting by composition.
    pub fn representable(cat: &SimplicialCategory, c: usize) -> Self {
        let values = (0..cat.num_objects()).map(|a| cat.hom(a, c).clone()).collect();
        Self::build(cat, values, |a, b, f, x| Ok(cat.compose(a, b, c, x, f))).expect("representable presheaf")
    }

    /// `F ⊗ X`, the valuewise product with a simplicial set.
    pub fn tensor(&self, cat: &SimplicialCategory, x: &Sset<1>) -> Result<(Self, Vec<Product<1>>)> {
        let prods = self.values.iter().map(|v| Product::new(&[v, x])).collect::<Result<Vec<_>>>()?;
        let values = prods.iter().map(|p| p.sset.clone()).collect();
        let t = Self::build(cat, values, |a, b, f, s| {
            let c = prods[b].components(s);
            Ok(prods[a].tuple(&[self.act(a, b, f, &c[0]), c[1].clone()]))
        })?;
        Ok((t, prods))
    }
}

/// A natural transformation, one map per object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresheafMap {
    pub components: Vec<SsetMap<1>>,
}

impl PresheafMap {
    pub fn identity(f: &EnrichedPresheaf) -> Self {
        PresheafMap { components: f.values.iter().map(SsetMap::identity).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PresheafMap) -> PresheafMap {
        PresheafMap { components: self.components.iter().zip(&other.components).map(|(a, b)| a.compose(b)).collect() }
    }

    /// Components are maps and the naturality squares commute on generators.
    pub fn check(&self, cat: &SimplicialCategory, src: &EnrichedPresheaf, tgt: &EnrichedPresheaf) -> Result<()> {
        let n = cat.num_objects();
        if self.components.len() != n {
            return arg("one component per object required");
        }
        for a in 0..n {
            self.components[a].validate(&src.values[a], &tgt.values[a])?;
        }
        for a in 0..n {
            for b in 0..n {
                if !naturality_square(self, src, tgt, a, b) {
                    return Err(Error::Diagram(format!("naturality fails on hom({a},{b})")));
                }
            }
        }
        Ok(())
    }

    pub fn is_iso(&self, tgt: &EnrichedPresheaf) -> bool {
        self.components.iter().zip(&tgt.values).all(|(c, v)| c.is_iso(v))
    }
}

fn naturality_square(eta: &PresheafMap, src: &EnrichedPresheaf, tgt: &EnrichedPresheaf, a: usize, b: usize) -> bool {
    let Some(c) = src.action(a, b) else { return true };
    c.product.keys.iter().all(|k| {
        let l = eta.components[a].apply(&src.act(a, b, &k[0], &k[1]));
        let r = tgt.act(a, b, &k[0], &eta.components[b].apply(&k[1]));
        l == r
    })
}

/// All natural transformations `src -> tgt`; objectwise candidates are
/// combined by backtracking with naturality pruning.
pub fn enumerate_nat(
    cat: &SimplicialCategory,
    src: &EnrichedPresheaf,
    tgt: &EnrichedPresheaf,
    injective: bool,
    limit: usize,
) -> Result<Vec<PresheafMap>> {
    let mut cands = Vec::with_capacity(cat.num_objects());
    for a in 0..cat.num_objects() {
        cands.push(enumerate_maps(&src.values[a], &tgt.values[a], &|_, _| true, injective, limit)?);
    }
    combine(&cands, src, tgt, limit, false)
}

fn combine(
    cands: &[Vec<SsetMap<1>>],
    src: &EnrichedPresheaf,
    tgt: &EnrichedPresheaf,
    limit: usize,
    first_only: bool,
) -> Result<Vec<PresheafMap>> {
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(Vec::new());
    }
    struct Ctx<'a> {
        cands: &'a [Vec<SsetMap<1>>],
        src: &'a EnrichedPresheaf,
        tgt: &'a EnrichedPresheaf,
        limit: usize,
        first_only: bool,
    }
    fn rec(a: usize, cur: &mut Vec<SsetMap<1>>, out: &mut Vec<PresheafMap>, ctx: &Ctx<'_>) -> Result<()> {
        if a == ctx.cands.len() {
            if out.len() >= ctx.limit {
                return Err(Error::Resource(format!("more than {} natural transformations", ctx.limit)));
            }
            out.push(PresheafMap { components: cur.clone() });
            return Ok(());
        }
        for c in &ctx.cands[a] {
            cur.push(c.clone());
            let partial = PresheafMap { components: cur.clone() };
            let ok = (0..=a).all(|b| {
                naturality_square(&partial, ctx.src, ctx.tgt, a, b) && naturality_square(&partial, ctx.src, ctx.tgt, b, a)
            });
            if ok {
                rec(a + 1, cur, out, ctx)?;
            }
            cur.pop();
            if ctx.first_only && !out.is_empty() {
                break;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(0, &mut Vec::new(), &mut out, &Ctx { cands, src, tgt, limit, first_only })?;
    Ok(out)
}

/// A natural isomorphism, if one exists.
pub fn find_presheaf_iso(cat: &SimplicialCategory, a: &EnrichedPresheaf, b: &EnrichedPresheaf) -> Result<Option<PresheafMap>> {
    if a.values.iter().zip(&b.values).any(|(x, y)| x.nd_counts() != y.nd_counts()) {
        return Ok(None);
    }
    const BUDGET: u64 = 20_000_000;
    let mut cands = Vec::with_capacity(cat.num_objects());
    for (x, y) in a.values.iter().zip(&b.values) {
        let isos = all_isos(x, y, BUDGET).map_err(|_| Error::Resource("isomorphism search budget exhausted".into()))?;
        cands.push(isos);
    }
    Ok(combine(&cands, a, b, usize::MAX, true)?.pop())
}

/// Lifts a simplex of a colimit to one of the diagram objects.
pub fn lift<const D: usize>(colim: &Colimit<D>, s: &NormalForm<D>) -> (usize, NormalForm<D>) {
    let (o, g) = colim.representative(s.gen);
    let base = colim.cocone[o].images[g].clone();
    debug_assert!(base.is_nondegenerate() && base.gen == s.gen);
    (o, NormalForm { degen: s.degen.clone(), gen: g })
}

/// A valuewise colimit of presheaves with its cocone.
#[derive(Clone, Debug)]
pub struct PresheafColimit {
    pub presheaf: EnrichedPresheaf,
    pub cocone: Vec<PresheafMap>,
    pub colims: Vec<Colimit<1>>,
}

impl PresheafColimit {
    /// The map out of the colimit induced by a compatible cocone.
    pub fn mediate(&self, legs: &[&PresheafMap], target: &EnrichedPresheaf) -> Result<PresheafMap> {
        let components = self
            .colims
            .iter()
            .enumerate()
            .map(|(a, c)| {
                let l: Vec<&SsetMap<1>> = legs.iter().map(|m| &m.components[a]).collect();
                c.mediate(&l, &target.values[a])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PresheafMap { components })
    }
}

pub fn presheaf_colimit(
    cat: &SimplicialCategory,
    objects: &[&EnrichedPresheaf],
    arrows: &[(usize, usize, &PresheafMap)],
) -> Result<PresheafColimit> {
    let n = cat.num_objects();
    let mut colims = Vec::with_capacity(n);
    for a in 0..n {
        let vals: Vec<&Sset<1>> = objects.iter().map(|p| &p.values[a]).collect();
        let arr: Vec<(usize, usize, &SsetMap<1>)> = arrows.iter().map(|&(s, t, m)| (s, t, &m.components[a])).collect();
        colims.push(Colimit::new(&vals, &arr)?);
    }
    let values = colims.iter().map(|c| c.sset.clone()).collect();
    let presheaf = EnrichedPresheaf::build(cat, values, |a, b, f, x| {
        let (o, y) = lift(&colims[b], x);
        Ok(colims[a].cocone[o].apply(&objects[o].act(a, b, f, &y)))
    })?;
    let cocone = (0..objects.len())
        .map(|o| PresheafMap { components: colims.iter().map(|c| c.cocone[o].clone()).collect() })
        .collect();
    Ok(PresheafColimit { presheaf, cocone, colims })
}

/// An enriched left Kan extension with the coend data used to build maps between extensions.
#[derive(Clone, Debug)]
pub struct Lan {
    pub presheaf: EnrichedPresheaf,
    /// Per target object: the coend colimit.
    pub colims: Vec<Colimit<1>>,
    /// Per target object `x`: `hom_d(x, g a) × f(a)` for each source object `a`.
    parts: Vec<Vec<Product<1>>>,
    /// Per target object: relation objects `(a, b, hom_d(x, g a) × hom_c(a,b) × f(b))`
    /// with their maps to the `b` and `a` parts.
    rels: Vec<Vec<(usize, usize, Product<1>, SsetMap<1>, SsetMap<1>)>>,
    /// Object map of the functor.
    objects: Vec<usize>,
}

/// The enriched left Kan extension of `f` (on `c`) along `g : c -> d`,
/// computed valuewise as the coend of `hom_d(x, g-) × f(-)`.
pub fn enriched_lan(
    c: &SimplicialCategory,
    f: &EnrichedPresheaf,
    d: &SimplicialCategory,
    g: &EnrichedFunctor,
) -> Result<Lan> {
    g.check(c, d)?;
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let mut colims = Vec::with_capacity(nd);
    let mut all_parts = Vec::with_capacity(nd);
    let mut all_rels = Vec::with_capacity(nd);
    for x in 0..nd {
        let parts: Vec<Product<1>> =
            (0..nc).map(|a| Product::new(&[d.hom(x, g.objects[a]), &f.values[a]])).collect::<Result<_>>()?;
        let mut rels = Vec::new();
        for a in 0..nc {
            for b in 0..nc {
                if c.hom(a, b).is_empty() {
                    continue;
                }
                let (ga, gb) = (g.objects[a], g.objects[b]);
                let r = Product::new(&[d.hom(x, ga), c.hom(a, b), &f.values[b]])?;
                let to_b = r
                    .keys
                    .iter()
                    .map(|k| {
                        let gf = g.apply(a, b, &k[1]);
                        parts[b].tuple(&[d.compose(x, ga, gb, &gf, &k[0]), k[2].clone()])
                    })
                    .collect();
                let to_a =
                    r.keys.iter().map(|k| parts[a].tuple(&[k[0].clone(), f.act(a, b, &k[1], &k[2])])).collect();
                rels.push((a, b, r, SsetMap { images: to_b }, SsetMap { images: to_a }));
            }
        }
        let mut objs: Vec<&Sset<1>> = parts.iter().map(|p| &p.sset).collect();
        objs.extend(rels.iter().map(|r| &r.2.sset));
        let mut arrows = Vec::new();
        for (i, (a, b, _, to_b, to_a)) in rels.iter().enumerate() {
            arrows.push((nc + i, *b, to_b));
            arrows.push((nc + i, *a, to_a));
        }
        colims.push(Colimit::new(&objs, &arrows)?);
        all_parts.push(parts);
        all_rels.push(rels);
    }
    let values = colims.iter().map(|c| c.sset.clone()).collect();
    let presheaf = EnrichedPresheaf::build(d, values, |x, y, k, s| {
        let (o, t) = lift(&colims[y], s);
        let (o, t) = if o >= nc {
            let rel = &all_rels[y][o - nc];
            (rel.0, rel.4.apply(&t))
        } else {
            (o, t)
        };
        let p = all_parts[y][o].components(&t);
        let h = d.compose(x, y, g.objects[o], &p[0], k);
        Ok(colims[x].cocone[o].apply(&all_parts[x][o].tuple(&[h, p[1].clone()])))
    })?;
    Ok(Lan { presheaf, colims, parts: all_parts, rels: all_rels, objects: g.objects.clone() })
}

/// The map of left Kan extensions `Lan_{g∘t} f' -> Lan_g f` induced by an object
/// map `t` (with `g'(a) = g(t a)`) and components `kappa[a] : f'(a) -> f(t a)`
/// forming a natural transformation `f' -> t^* f`.
pub fn lan_map(src: &Lan, tgt: &Lan, objects: &[usize], kappa: &[SsetMap<1>]) -> Result<PresheafMap> {
    let nc = src.parts.first().map(|p| p.len()).unwrap_or(0);
    if objects.len() != nc || kappa.len() != nc {
        return arg("object map and components must cover the source category");
    }
    if (0..nc).any(|a| src.objects[a] != tgt.objects[objects[a]]) {
        return Err(Error::Diagram("functors do not agree on objects".into()));
    }
    let components = (0..src.colims.len())
        .map(|x| {
            let part_legs: Vec<SsetMap<1>> = (0..nc)
                .map(|a| {
                    let ta = objects[a];
                    let images = src.parts[x][a]
                        .keys
                        .iter()
                        .map(|k| {
                            let s = tgt.parts[x][ta].tuple(&[k[0].clone(), kappa[a].apply(&k[1])]);
                            tgt.colims[x].cocone[ta].apply(&s)
                        })
                        .collect();
                    SsetMap { images }
                })
                .collect();
            let mut legs = part_legs.clone();
            for (a, _, _, _, to_a) in &src.rels[x] {
                legs.push(part_legs[*a].compose(to_a));
            }
            let refs: Vec<&SsetMap<1>> = legs.iter().collect();
            src.colims[x].mediate(&refs, &tgt.colims[x].sset)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PresheafMap { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary, point, simplex};
    use crate::scat::{ch_simplex, suspension, unit_category};

    #[test]
    fn representables_and_tensors_are_presheaves() {
        let c = ch_simplex(2);
        for x in 0..3 {
            let r = EnrichedPresheaf::representable(&c, x);
            r.check(&c).unwrap();
            let (t, _) = r.tensor(&c, &simplex(1)).unwrap();
            t.check(&c).unwrap();
        }
        EnrichedPresheaf::terminal(&c).check(&c).unwrap();
    }

    #[test]
    fn yoneda_count() {
        // Nat(hom(-,c), F) ≅ F(c)_0
        let c = suspension(&simplex(1));
        let f = EnrichedPresheaf::representable(&c, 1);
        for x in 0..2 {
            let r = EnrichedPresheaf::representable(&c, x);
            let n = enumerate_nat(&c, &r, &f, false, 1000).unwrap().len();
            assert_eq!(n, f.values[x].gens_of_dim([0]).count());
        }
    }

    #[test]
    fn lan_along_identity_and_representables() {
        let c = ch_simplex(2);
        let id = EnrichedFunctor::identity(&c);
        let f = EnrichedPresheaf::representable(&c, 2);
        let (f, _) = f.tensor(&c, &boundary(2)).unwrap();
        let l = enriched_lan(&c, &f, &c, &id).unwrap().presheaf;
        l.check(&c).unwrap();
        assert!(find_presheaf_iso(&c, &l, &f).unwrap().is_some());
    }

    #[test]
    fn lan_from_a_point() {
        // the object 1 of the walking arrow: value(1) = X, value(0) = hom(0,1) × X = X
        let u = unit_category();
        let d = suspension(&point());
        let g = EnrichedFunctor {
            objects: vec![1],
            homs: [((0, 0), SsetMap::identity(u.hom(0, 0)))].into_iter().collect(),
        };
        let f = EnrichedPresheaf::build(&u, vec![simplex(1)], |_, _, _, x| Ok(x.clone())).unwrap();
        let l = enriched_lan(&u, &f, &d, &g).unwrap().presheaf;
        l.check(&d).unwrap();
        assert!(crate::iso::find_iso(&l.values[0], &simplex(1)).is_some());
        assert!(crate::iso::find_iso(&l.values[1], &simplex(1)).is_some());
        let r = EnrichedPresheaf::representable(&d, 1);
        let (expected, _) = r.tensor(&d, &simplex(1)).unwrap();
        assert!(find_presheaf_iso(&d, &l, &expected).unwrap().is_some());
    }

    #[test]
    fn colimit_of_presheaves() {
        // pushout of two copies of hom(-,1) on [1] along the terminal... glued along themselves gives itself
        let c = suspension(&simplex(1));
        let r = EnrichedPresheaf::representable(&c, 1);
        let id = PresheafMap::identity(&r);
        let col = presheaf_colimit(&c, &[&r, &r, &r], &[(0, 1, &id), (0, 2, &id)]).unwrap();
        col.presheaf.check(&c).unwrap();
        assert!(find_presheaf_iso(&c, &col.presheaf, &r).unwrap().is_some());
        let m = col.mediate(&[&id, &id, &id], &r).unwrap();
        m.check(&c, &col.presheaf, &r).unwrap();
    }
}
