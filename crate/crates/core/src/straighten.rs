//! Straightening of objects over a precategory `W` into enriched presheaves on `𝔠W`.
//!
//! The direct construction glues a horizontal cone on `P` to `W` along `p` and
//! takes homs into the cone point. The colimit construction assembles `St(P)`
//! from one piece per simplex of `P`; each piece is the left Kan extension of
//! the straightening of `F[m,k] -> LF[m,k]` along `𝔠σ`, which also covers
//! degenerate simplices of `W`.

use crate::categorify::{categorify_homs, categorify_map, categorify_with, map_elem, map_hom, CategorifyOptions, Categorified, HomData};
use crate::colimit::Colimit;
use crate::constructions::Representable;
use crate::delta::DeltaMap;
use crate::error::{Error, Result};
use crate::map::SsetMap;
use crate::precat::{discretize, require_precat, Discretized};
use crate::presheaf::{enriched_lan, lan_map, presheaf_colimit, EnrichedPresheaf, Lan, PresheafColimit, PresheafMap};
use crate::scat::EnrichedFunctor;
use crate::sset::{build_keyed, identity_ops, ops_in, GenId, Keyed, NormalForm, Sset};
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConeKey {
    Base(GenId),
    Cone(GenId),
    Apex,
}

/// `P^▷`: every simplex of horizontal degree `m` is joined to a single apex,
/// giving a simplex of horizontal degree `m+1` with the same vertical degree.
#[derive(Clone, Debug)]
pub struct HorizontalCone {
    pub keyed: Keyed<ConeKey, 2>,
    pub inclusion: SsetMap<2>,
}

pub fn horizontal_cone(p: &Sset<2>) -> HorizontalCone {
    let mut entries = vec![(ConeKey::Apex, [0, 0])];
    for g in 0..p.num_gens() {
        let [m, k] = p.dim(g);
        entries.push((ConeKey::Base(g), [m, k]));
        entries.push((ConeKey::Cone(g), [m + 1, k]));
    }
    let keyed = build_keyed(entries, |key, j, r| match *key {
        ConeKey::Apex => unreachable!("the apex has no faces"),
        ConeKey::Base(g) => {
            let f = &p.generator(g).faces[j][r];
            (f.degen.clone(), ConeKey::Base(f.gen))
        }
        ConeKey::Cone(g) => {
            let [m, k] = p.dim(g);
            if j == 0 && r == m + 1 {
                (identity_ops([m, k]), ConeKey::Base(g))
            } else if j == 0 && m == 0 {
                ([DeltaMap::identity(0), DeltaMap::terminal(k)], ConeKey::Apex)
            } else {
                let f = &p.generator(g).faces[j][r];
                ([f.degen[0].plus_top(), f.degen[1].clone()], ConeKey::Cone(f.gen))
            }
        }
    })
    .expect("cone faces are closed");
    let inclusion = SsetMap { images: (0..p.num_gens()).map(|g| NormalForm { degen: identity_ops(p.dim(g)), gen: keyed.id(&ConeKey::Base(g)) }).collect() };
    HorizontalCone { keyed, inclusion }
}

/// `u^▷ : P^▷ -> P'^▷`.
pub fn cone_map(u: &SsetMap<2>, src: &HorizontalCone, tgt: &HorizontalCone) -> SsetMap<2> {
    let images = src
        .keyed
        .keys
        .iter()
        .map(|k| match *k {
            ConeKey::Apex => tgt.keyed.sset.id_nf(tgt.keyed.id(&ConeKey::Apex)),
            ConeKey::Base(g) => {
                let s = &u.images[g];
                NormalForm { degen: s.degen.clone(), gen: tgt.keyed.id(&ConeKey::Base(s.gen)) }
            }
            ConeKey::Cone(g) => {
                let s = &u.images[g];
                NormalForm { degen: [s.degen[0].plus_top(), s.degen[1].clone()], gen: tgt.keyed.id(&ConeKey::Cone(s.gen)) }
            }
        })
        .collect();
    SsetMap { images }
}

/// `L(W ⨿_P P^▷)` with the inclusion of `W` and the cone point.
#[derive(Clone, Debug)]
pub struct Extension {
    pub q: Sset<2>,
    pub iota: SsetMap<2>,
    pub top: GenId,
    cone: HorizontalCone,
    colim: Colimit<2>,
    disc: Discretized,
}

pub fn extension(w: &Sset<2>, p: &Sset<2>, pmap: &SsetMap<2>) -> Result<Extension> {
    require_precat(w)?;
    pmap.validate(p, w)?;
    let cone = horizontal_cone(p);
    let colim = Colimit::new(&[p, w, &cone.keyed.sset], &[(0, 1, pmap), (0, 2, &cone.inclusion)])?;
    let disc = discretize(&colim.sset)?;
    let iota = disc.quotient.compose(&colim.cocone[1]);
    let top = disc.quotient.apply(&colim.cocone[2].images[cone.keyed.id(&ConeKey::Apex)]).gen;
    Ok(Extension { q: disc.sset.clone(), iota, top, cone, colim, disc })
}

/// The map of extensions induced by `u : P -> P'` and `v : W -> W'` with `p' u = v p`.
pub fn extension_map(src: &Extension, tgt: &Extension, u: &SsetMap<2>, v: &SsetMap<2>) -> Result<SsetMap<2>> {
    let leg0 = tgt.colim.cocone[0].compose(u);
    let leg1 = tgt.colim.cocone[1].compose(v);
    let leg2 = tgt.colim.cocone[2].compose(&cone_map(u, &src.cone, &tgt.cone));
    let m = src.colim.mediate(&[&leg0, &leg1, &leg2], &tgt.colim.sset)?;
    src.disc.map_to(&tgt.disc, &m)
}

/// A straightening computed directly: `St(P)(a) = Hom(ι a, ⊤)` in the extension.
#[derive(Clone, Debug)]
pub struct Straightened {
    pub presheaf: EnrichedPresheaf,
    pub ext: Extension,
    pub homs: Vec<HomData>,
}

pub fn straighten_direct(cw: &Categorified, p: &Sset<2>, pmap: &SsetMap<2>, opts: &CategorifyOptions) -> Result<Straightened> {
    let ext = extension(&cw.w, p, pmap)?;
    let pairs: Vec<(GenId, GenId)> = cw.objects.iter().map(|&g| (ext.iota.images[g].gen, ext.top)).collect();
    let homs = categorify_homs(&ext.q, &pairs, opts)?;
    let values = homs.iter().map(|h| h.sset().clone()).collect();
    let presheaf = EnrichedPresheaf::build(&cw.category, values, |a, b, f, x| {
        let e = map_elem(&ext.iota, &ext.q, &cw.elem(a, b, f)).wedge(&homs[b].elem(&ext.q, x));
        homs[a].nf(&ext.q, &e)
    })?;
    Ok(Straightened { presheaf, ext, homs })
}

/// `St(u)` for a map `u : P -> P'` over `W`, between direct straightenings.
pub fn straighten_direct_map(cw: &Categorified, src: &Straightened, tgt: &Straightened, u: &SsetMap<2>) -> Result<PresheafMap> {
    let qm = extension_map(&src.ext, &tgt.ext, u, &SsetMap::identity(&cw.w))?;
    let components = (0..cw.num_objects())
        .map(|a| map_hom(&qm, &src.ext.q, &src.homs[a], &tgt.ext.q, &tgt.homs[a]))
        .collect::<Result<Vec<_>>>()?;
    Ok(PresheafMap { components })
}

/// `St_W(σ)` for a simplex `σ` of `W`, from the one-point extension `W_σ`.
pub fn straighten_rep(cw: &Categorified, sigma: &NormalForm<2>, opts: &CategorifyOptions) -> Result<Straightened> {
    let [m, k] = sigma.dim();
    let rep = Representable::new(m, k);
    straighten_direct(cw, rep.sset(), &rep.yoneda(&cw.w, sigma), opts)
}

/// `LF[m,k]`, its categorification and the straightening of `F[m,k] -> LF[m,k]`.
pub struct Standard {
    pub rep: Representable,
    pub disc: Discretized,
    pub cat: Categorified,
    pub st: Straightened,
}

pub fn standard(m: usize, k: usize, opts: &CategorifyOptions) -> Result<Standard> {
    let rep = Representable::new(m, k);
    let disc = discretize(rep.sset())?;
    let cat = categorify_with(&disc.sset, opts)?;
    let st = straighten_direct(&cat, rep.sset(), &disc.quotient, opts)?;
    Ok(Standard { rep, disc, cat, st })
}

/// `(𝔠σ)_! St(F[m,k] -> LF[m,k])` with the functor `𝔠σ`.
pub struct RepPiece {
    pub lan: Lan,
    pub functor: EnrichedFunctor,
}

/// Representable straightenings over a fixed `W`, with caches for the pieces and
/// for the maps induced by simplicial operators.
pub struct Straightener<'a> {
    pub cw: &'a Categorified,
    pub opts: CategorifyOptions,
    standards: RefCell<HashMap<(usize, usize), Rc<Standard>>>,
    pieces: RefCell<HashMap<NormalForm<2>, Rc<RepPiece>>>,
    op_maps: RefCell<HashMap<(NormalForm<2>, [DeltaMap; 2]), Rc<PresheafMap>>>,
}

/// `St(P)` as a colimit over the simplices of `P`.
pub struct StraightenedColimit {
    pub colimit: PresheafColimit,
    /// Diagram object of each generator of `P`.
    pub gen_objects: Vec<usize>,
    /// The simplex of `W` of every diagram object.
    pub simplices: Vec<NormalForm<2>>,
    /// Relation objects: `(object, generator, direction, index)`.
    pub relations: Vec<(usize, GenId, usize, usize)>,
}

impl StraightenedColimit {
    pub fn presheaf(&self) -> &EnrichedPresheaf {
        &self.colimit.presheaf
    }
}

impl<'a> Straightener<'a> {
    pub fn new(cw: &'a Categorified, opts: &CategorifyOptions) -> Self {
        Straightener {
            cw,
            opts: opts.clone(),
            standards: RefCell::default(),
            pieces: RefCell::default(),
            op_maps: RefCell::default(),
        }
    }

    pub fn standard(&self, m: usize, k: usize) -> Result<Rc<Standard>> {
        if let Some(s) = self.standards.borrow().get(&(m, k)) {
            return Ok(s.clone());
        }
        let s = Rc::new(standard(m, k, &self.opts)?);
        self.standards.borrow_mut().insert((m, k), s.clone());
        Ok(s)
    }

    /// `St_W(σ)` for any simplex `σ`, degenerate or not.
    pub fn piece(&self, sigma: &NormalForm<2>) -> Result<Rc<RepPiece>> {
        if let Some(p) = self.pieces.borrow().get(sigma) {
            return Ok(p.clone());
        }
        let [m, k] = sigma.dim();
        let std = self.standard(m, k)?;
        let classify = std.disc.map_out(&self.cw.w, &std.rep.yoneda(&self.cw.w, sigma))?;
        let functor = categorify_map(&classify, &std.cat, self.cw)?;
        let lan = enriched_lan(&std.cat.category, &std.st.presheaf, &self.cw.category, &functor)?;
        let p = Rc::new(RepPiece { lan, functor });
        self.pieces.borrow_mut().insert(sigma.clone(), p.clone());
        Ok(p)
    }

    pub fn presheaf(&self, sigma: &NormalForm<2>) -> Result<EnrichedPresheaf> {
        Ok(self.piece(sigma)?.lan.presheaf.clone())
    }

    /// `St(θ) : St(σθ) -> St(σ)` for an operator `θ = (θ_h, θ_v)`.
    pub fn op_map(&self, sigma: &NormalForm<2>, theta: &[DeltaMap; 2]) -> Result<Rc<PresheafMap>> {
        let key = (sigma.clone(), theta.clone());
        if let Some(p) = self.op_maps.borrow().get(&key) {
            return Ok(p.clone());
        }
        let w = &self.cw.w;
        let sub = w.act(sigma, theta);
        let [m, k] = sigma.dim();
        let (big, small) = (self.standard(m, k)?, self.standard(theta[0].src(), theta[1].src())?);
        let u = big.rep.map_from(&small.rep, &theta[0], &theta[1]);
        let lu = small.disc.map_to(&big.disc, &u)?;
        let objects = categorify_map(&lu, &small.cat, &big.cat)?.objects;
        let qm = extension_map(&small.st.ext, &big.st.ext, &u, &lu)?;
        let kappa = (0..small.cat.num_objects())
            .map(|a| map_hom(&qm, &small.st.ext.q, &small.st.homs[a], &big.st.ext.q, &big.st.homs[objects[a]]))
            .collect::<Result<Vec<_>>>()?;
        let map = Rc::new(lan_map(&self.piece(&sub)?.lan, &self.piece(sigma)?.lan, &objects, &kappa)?);
        self.op_maps.borrow_mut().insert(key, map.clone());
        Ok(map)
    }

    /// `St_W(p)` as the colimit of representable pieces: one per generator of
    /// `P`, glued along one relation object per face.
    pub fn straighten(&self, p: &Sset<2>, pmap: &SsetMap<2>) -> Result<StraightenedColimit> {
        let w = &self.cw.w;
        pmap.validate(p, w)?;
        let mut simplices: Vec<NormalForm<2>> = pmap.images.clone();
        let gen_objects: Vec<usize> = (0..p.num_gens()).collect();
        let mut relations = Vec::new();
        let mut arrows_spec: Vec<(usize, usize, NormalForm<2>, [DeltaMap; 2])> = Vec::new();
        for x in 0..p.num_gens() {
            let dim = p.dim(x);
            for j in 0..2 {
                for (r, f) in p.generator(x).faces[j].iter().enumerate() {
                    let coface = ops_in(dim, j, DeltaMap::coface(dim[j], r));
                    simplices.push(w.act(&pmap.images[x], &coface));
                    let o = simplices.len() - 1;
                    relations.push((o, x, j, r));
                    arrows_spec.push((o, x, pmap.images[x].clone(), coface));
                    arrows_spec.push((o, f.gen, pmap.images[f.gen].clone(), f.degen.clone()));
                }
            }
        }
        let pieces = simplices.iter().map(|s| self.piece(s)).collect::<Result<Vec<_>>>()?;
        let maps = arrows_spec.iter().map(|(_, _, s, th)| self.op_map(s, th)).collect::<Result<Vec<_>>>()?;
        let objects: Vec<&EnrichedPresheaf> = pieces.iter().map(|p| &p.lan.presheaf).collect();
        let arrows: Vec<(usize, usize, &PresheafMap)> =
            arrows_spec.iter().zip(&maps).map(|((o, t, _, _), m)| (*o, *t, m.as_ref())).collect();
        let colimit = presheaf_colimit(&self.cw.category, &objects, &arrows)?;
        Ok(StraightenedColimit { colimit, gen_objects, simplices, relations })
    }

    /// `St(u) : St(P) -> St(P')` for a map `u` over `W`.
    pub fn straighten_map(
        &self,
        src: &StraightenedColimit,
        tgt: &StraightenedColimit,
        p: &Sset<2>,
        u: &SsetMap<2>,
    ) -> Result<PresheafMap> {
        let mut legs: Vec<PresheafMap> = Vec::new();
        for x in 0..p.num_gens() {
            let s = &u.images[x];
            let y = tgt.gen_objects[s.gen];
            let m = self.op_map(&tgt.simplices[y], &s.degen)?;
            legs.push(tgt.colimit.cocone[y].compose(&m));
        }
        for &(_, x, j, r) in &src.relations {
            let dim = p.dim(x);
            let coface = ops_in(dim, j, DeltaMap::coface(dim[j], r));
            let m = self.op_map(&src.simplices[src.gen_objects[x]], &coface)?;
            legs.push(legs[src.gen_objects[x]].compose(&m));
        }
        let refs: Vec<&PresheafMap> = legs.iter().collect();
        src.colimit.mediate(&refs, tgt.presheaf()).map_err(|e| Error::Diagram(format!("map is not over W: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categorify::categorify;
    use crate::constructions::{embed, embed_map, external_product, point, simplex, spine, spine_inclusion};
    use crate::iso::find_iso;
    use crate::presheaf::find_presheaf_iso;

    fn opts() -> CategorifyOptions {
        CategorifyOptions::default()
    }

    #[test]
    fn cone_on_a_simplex_is_the_next_simplex() {
        let r = Representable::new(1, 1);
        let c = horizontal_cone(r.sset());
        c.keyed.sset.validate().unwrap();
        let d = discretize(&c.keyed.sset).unwrap();
        let target = discretize(Representable::new(2, 1).sset()).unwrap();
        assert!(find_iso(&d.sset, &target.sset).is_some());
    }

    #[test]
    fn representable_straightenings_over_an_edge() {
        let w = embed(&simplex(1), 0);
        let cw = categorify(&w).unwrap();
        let id = straighten_rep(&cw, &w.id_nf(w.gens_of_dim([1, 0]).next().unwrap()), &opts()).unwrap();
        id.presheaf.check(&cw.category).unwrap();
        assert!(find_iso(&id.presheaf.values[0], &simplex(1)).is_some());
        assert!(find_iso(&id.presheaf.values[1], &point()).is_some());
        // the last vertex
        let v1 = w.id_nf(cw.objects[1]);
        let last = straighten_rep(&cw, &v1, &opts()).unwrap();
        assert!(find_iso(&last.presheaf.values[0], &point()).is_some());
        assert!(find_iso(&last.presheaf.values[1], &point()).is_some());
    }

    #[test]
    fn colimit_straightening_of_a_vertical_object() {
        let w = embed(&point(), 0);
        let cw = categorify(&w).unwrap();
        let st = Straightener::new(&cw, &opts());
        for x in [point(), simplex(1), spine(3)] {
            let p = external_product(&point(), &x).sset;
            let pmap = SsetMap { images: (0..p.num_gens()).map(|g| NormalForm { degen: [DeltaMap::identity(0), DeltaMap::terminal(p.dim(g)[1])], gen: 0 }).collect() };
            let s = st.straighten(&p, &pmap).unwrap();
            s.presheaf().check(&cw.category).unwrap();
            assert!(find_iso(&s.presheaf().values[0], &x).is_some());
            let d = straighten_direct(&cw, &p, &pmap, &opts()).unwrap();
            assert!(find_presheaf_iso(&cw.category, s.presheaf(), &d.presheaf).unwrap().is_some());
        }
    }

    #[test]
    fn pieces_agree_with_direct_representables() {
        let w = embed(&simplex(2), 0);
        let cw = categorify(&w).unwrap();
        let st = Straightener::new(&cw, &opts());
        for g in 0..w.num_gens() {
            let s = w.id_nf(g);
            let a = st.presheaf(&s).unwrap();
            let b = straighten_rep(&cw, &s, &opts()).unwrap().presheaf;
            assert!(find_presheaf_iso(&cw.category, &a, &b).unwrap().is_some(), "generator {g}");
        }
    }

    fn over_edge(x: &Sset<1>) -> (Sset<2>, SsetMap<2>) {
        let k = external_product(&simplex(1), x);
        let images = k.keys.iter().map(|&(a, b)| {
            let [da, db] = [simplex(1).dim(a)[0], x.dim(b)[0]];
            NormalForm { degen: [DeltaMap::identity(da), DeltaMap::terminal(db)], gen: a }
        }).collect();
        (k.sset, SsetMap { images })
    }

    #[test]
    fn colimit_and_direct_paths_agree() {
        let w = embed(&simplex(1), 0);
        let cw = categorify(&w).unwrap();
        let st = Straightener::new(&cw, &opts());
        for x in [point(), simplex(1), spine(2)] {
            let (p, pmap) = over_edge(&x);
            let a = st.straighten(&p, &pmap).unwrap();
            let b = straighten_direct(&cw, &p, &pmap, &opts()).unwrap();
            a.presheaf().check(&cw.category).unwrap();
            assert!(find_presheaf_iso(&cw.category, a.presheaf(), &b.presheaf).unwrap().is_some());
        }
        let w = embed(&simplex(2), 0);
        let cw = categorify(&w).unwrap();
        let st = Straightener::new(&cw, &opts());
        let sp = embed(&spine(2), 0);
        let inc = embed_map(&spine_inclusion(2), 0);
        let a = st.straighten(&sp, &inc).unwrap();
        let b = straighten_direct(&cw, &sp, &inc, &opts()).unwrap();
        assert!(find_presheaf_iso(&cw.category, a.presheaf(), &b.presheaf).unwrap().is_some());
    }

    #[test]
    fn maps_over_the_base_are_functorial() {
        let w = embed(&simplex(1), 0);
        let cw = categorify(&w).unwrap();
        let st = Straightener::new(&cw, &opts());
        let (p, pmap) = over_edge(&point());
        let (q, qmap) = over_edge(&simplex(1));
        // (a, pt) -> (a, vertex 0) in edge x Δ1
        let k = external_product(&simplex(1), &simplex(1));
        let kp = external_product(&simplex(1), &point());
        let v0 = simplex(1).vertices()[0];
        let u = SsetMap { images: kp.keys.iter().map(|&(a, _)| q.id_nf(k.id(&(a, v0)))).collect() };
        let (sp, sq) = (st.straighten(&p, &pmap).unwrap(), st.straighten(&q, &qmap).unwrap());
        let m = st.straighten_map(&sp, &sq, &p, &u).unwrap();
        m.check(&cw.category, sp.presheaf(), sq.presheaf()).unwrap();
        let (dp, dq) = (straighten_direct(&cw, &p, &pmap, &opts()).unwrap(), straighten_direct(&cw, &q, &qmap, &opts()).unwrap());
        let dm = straighten_direct_map(&cw, &dp, &dq, &u).unwrap();
        dm.check(&cw.category, &dp.presheaf, &dq.presheaf).unwrap();
        let id = st.straighten_map(&sp, &sp, &p, &SsetMap::identity(&p)).unwrap();
        assert!(id.is_iso(sp.presheaf()));
    }
}
