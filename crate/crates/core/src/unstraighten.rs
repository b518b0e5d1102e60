//! Unstraightening, truncated to a bidegree bound: the `(m,k)`-simplices over
//! `σ` are natural transformations `St(σ) -> F`, and operators act by
//! precomposition with the straightened operator maps.

use crate::error::{Error, Result};
use crate::map::{enumerate_maps, SsetMap};
use crate::materialize::{elementary_ops, materialize, Materialized, Oracle};
use crate::presheaf::{enumerate_nat, EnrichedPresheaf, PresheafMap};
use crate::constructions::Representable;
use crate::sset::{ops_in, NormalForm, Sset};
use crate::categorify::{categorify_with, CategorifyOptions};
use crate::constructions::{embed, external_product, point, simplex};
use crate::scat::SimplicialCategory;
use crate::straighten::{StraightenedColimit, Straightener};
use crate::DeltaMap;
use std::cell::RefCell;
use std::collections::BTreeSet;

/// `(σ, components of η)`.
pub type UnElem = (NormalForm<2>, Vec<Vec<NormalForm<1>>>);

pub struct UnOracle<'s, 'a> {
    pub st: &'s Straightener<'a>,
    pub f: &'s EnrichedPresheaf,
    pub limit: usize,
    failure: RefCell<Option<Error>>,
}

impl<'s, 'a> UnOracle<'s, 'a> {
    pub fn new(st: &'s Straightener<'a>, f: &'s EnrichedPresheaf, limit: usize) -> Self {
        UnOracle { st, f, limit, failure: RefCell::new(None) }
    }

    fn nat(&self, sigma: &NormalForm<2>) -> Result<Vec<PresheafMap>> {
        let s = self.st.presheaf(sigma)?;
        enumerate_nat(&self.st.cw.category, &s, self.f, false, self.limit)
    }

    pub fn take_failure(&self) -> Option<Error> {
        self.failure.borrow_mut().take()
    }
}

fn to_elem(sigma: &NormalForm<2>, eta: &PresheafMap) -> UnElem {
    (sigma.clone(), components(eta))
}

fn components(eta: &PresheafMap) -> Vec<Vec<NormalForm<1>>> {
    eta.components.iter().map(|c| c.images.clone()).collect()
}

fn to_map(e: &UnElem) -> PresheafMap {
    PresheafMap { components: e.1.iter().map(|i| SsetMap { images: i.clone() }).collect() }
}

impl Oracle<2> for UnOracle<'_, '_> {
    type Elem = UnElem;

    fn elements(&self, deg: [usize; 2]) -> Result<Vec<UnElem>> {
        let mut out = Vec::new();
        for sigma in self.st.cw.w.simplices(deg) {
            for eta in self.nat(&sigma)? {
                out.push(to_elem(&sigma, &eta));
            }
        }
        Ok(out)
    }

    fn act(&self, e: &UnElem, ops: &[DeltaMap; 2]) -> UnElem {
        let sub = self.st.cw.w.act(&e.0, ops);
        match self.st.op_map(&e.0, ops) {
            Ok(m) => to_elem(&sub, &to_map(e).compose(&m)),
            Err(err) => {
                self.failure.borrow_mut().get_or_insert(err);
                e.clone()
            }
        }
    }

    fn degree(&self, e: &UnElem) -> [usize; 2] {
        e.0.dim()
    }
}

/// `Un_W(F)` up to `bound` with its projection to `W`.
pub struct Unstraightened {
    pub mat: Materialized<UnElem, 2>,
    pub projection: SsetMap<2>,
}

impl Unstraightened {
    pub fn sset(&self) -> &Sset<2> {
        &self.mat.sset
    }
}

pub fn unstraighten(o: &UnOracle<'_, '_>, bound: [usize; 2], max_cells: usize) -> Result<Unstraightened> {
    let mat = materialize(o, bound, max_cells);
    if let Some(err) = o.take_failure() {
        return Err(err);
    }
    let mat = mat?;
    let projection = SsetMap { images: mat.gen_elems.iter().map(|e| e.0.clone()).collect() };
    projection.validate(&mat.sset, &o.st.cw.w)?;
    Ok(Unstraightened { mat, projection })
}

/// The transpose `St(P) -> F` of a map `P -> Un(F)` over `W`.
pub fn transpose(
    o: &UnOracle<'_, '_>,
    un: &Unstraightened,
    p: &Sset<2>,
    stp: &StraightenedColimit,
    f: &SsetMap<2>,
) -> Result<PresheafMap> {
    let mut legs: Vec<PresheafMap> = Vec::new();
    for x in 0..p.num_gens() {
        let e = un.mat.elem_of(o, &f.images[x]);
        if e.0 != stp.simplices[stp.gen_objects[x]] {
            return Err(Error::Diagram(format!("generator {x} is not mapped over W")));
        }
        legs.push(to_map(&e));
    }
    for &(_, x, j, r) in &stp.relations {
        let dim = p.dim(x);
        let coface = ops_in(dim, j, DeltaMap::coface(dim[j], r));
        let m = o.st.op_map(&stp.simplices[stp.gen_objects[x]], &coface)?;
        legs.push(legs[stp.gen_objects[x]].compose(&m));
    }
    let refs: Vec<&PresheafMap> = legs.iter().collect();
    stp.colimit.mediate(&refs, o.f)
}

/// The inverse transpose: `P -> Un(F)` from `St(P) -> F`.
pub fn untranspose(
    o: &UnOracle<'_, '_>,
    un: &Unstraightened,
    p: &Sset<2>,
    stp: &StraightenedColimit,
    eta: &PresheafMap,
) -> Result<SsetMap<2>> {
    let images = (0..p.num_gens())
        .map(|x| {
            let obj = stp.gen_objects[x];
            let e = to_elem(&stp.simplices[obj], &eta.compose(&stp.colimit.cocone[obj]));
            un.mat.nf_of(o, &e)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SsetMap { images })
}

/// Maps `P -> Un(F)` over `W`.
pub fn maps_over(un: &Unstraightened, p: &Sset<2>, pmap: &SsetMap<2>, limit: usize) -> Result<Vec<SsetMap<2>>> {
    enumerate_maps(p, un.sset(), &|g, c| un.projection.apply(c) == pmap.images[g], false, limit)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub maps_over_w: usize,
    pub transformations: usize,
    pub bijective: bool,
}

impl AdjunctionReport {
    pub fn ok(&self) -> bool {
        self.bijective
    }
}

/// Checks that transposition is a bijection `Hom_{/W}(P, Un F) -> Nat(St P, F)`.
pub fn check_adjunction(
    o: &UnOracle<'_, '_>,
    un: &Unstraightened,
    p: &Sset<2>,
    pmap: &SsetMap<2>,
) -> Result<AdjunctionReport> {
    let stp = o.st.straighten(p, pmap)?;
    let maps = maps_over(un, p, pmap, o.limit)?;
    let nats = enumerate_nat(&o.st.cw.category, stp.presheaf(), o.f, false, o.limit)?;
    let nat_set: BTreeSet<_> = nats.iter().map(components).collect();
    let mut seen = BTreeSet::new();
    let mut bijective = maps.len() == nats.len();
    for f in &maps {
        let t = transpose(o, un, p, &stp, f)?;
        let key = components(&t);
        bijective &= nat_set.contains(&key) && seen.insert(key);
        bijective &= untranspose(o, un, p, &stp, &t)? == *f;
    }
    Ok(AdjunctionReport { maps_over_w: maps.len(), transformations: nats.len(), bijective })
}

/// Transposition commutes with restriction along `F[θ] : F[m',k'] -> F[m,k]`,
/// for every map `F[m,k] -> Un(F)` over `σ`.
pub fn check_naturality(o: &UnOracle<'_, '_>, un: &Unstraightened, sigma: &NormalForm<2>, theta: &[DeltaMap; 2]) -> Result<bool> {
    let w = &o.st.cw.w;
    let [m, k] = sigma.dim();
    let big = Representable::new(m, k);
    let small = Representable::new(theta[0].src(), theta[1].src());
    let (bmap, smap) = (big.yoneda(w, sigma), small.yoneda(w, &w.act(sigma, theta)));
    let u = big.map_from(&small, &theta[0], &theta[1]);
    let (sb, ss) = (o.st.straighten(big.sset(), &bmap)?, o.st.straighten(small.sset(), &smap)?);
    let stu = o.st.straighten_map(&ss, &sb, small.sset(), &u)?;
    for f in maps_over(un, big.sset(), &bmap, o.limit)? {
        let lhs = transpose(o, un, small.sset(), &ss, &f.compose(&u))?;
        let rhs = transpose(o, un, big.sset(), &sb, &f)?.compose(&stu);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One catalog case: base, presheaf and an object over the base.
pub struct AdjunctionCase {
    pub name: &'static str,
    pub w: Sset<2>,
    pub presheaf: fn(&SimplicialCategory) -> Result<EnrichedPresheaf>,
    pub p: Sset<2>,
    pub pmap: SsetMap<2>,
}

fn collapse(p: &Sset<2>) -> SsetMap<2> {
    SsetMap {
        images: (0..p.num_gens())
            .map(|g| {
                let [a, b] = p.dim(g);
                NormalForm { degen: [DeltaMap::terminal(a), DeltaMap::terminal(b)], gen: 0 }
            })
            .collect(),
    }
}

fn constant_edge(c: &SimplicialCategory) -> Result<EnrichedPresheaf> {
    Ok(EnrichedPresheaf::representable(c, 0).tensor(c, &simplex(1))?.0)
}

pub fn adjunction_catalog() -> Vec<AdjunctionCase> {
    let pt = embed(&point(), 0);
    let edge = embed(&simplex(1), 0);
    let f01 = external_product(&point(), &simplex(1)).sset;
    let f10 = external_product(&simplex(1), &point()).sset;
    let v0 = SsetMap { images: vec![NormalForm { degen: [DeltaMap::identity(0), DeltaMap::identity(0)], gen: edge.gens_of_dim([0, 0]).next().unwrap() }] };
    vec![
        AdjunctionCase { name: "W=D0 F=pt P=F[0,1]", w: pt.clone(), presheaf: |c| Ok(EnrichedPresheaf::terminal(c)), pmap: collapse(&f01), p: f01.clone() },
        AdjunctionCase { name: "W=D0 F=D1 P=F[0,1]", w: pt.clone(), presheaf: constant_edge, pmap: collapse(&f01), p: f01 },
        AdjunctionCase { name: "W=D0 F=D1 P=F[1,0]", w: pt.clone(), presheaf: constant_edge, pmap: collapse(&f10), p: f10 },
        AdjunctionCase { name: "W=D1 F=pt P=id", w: edge.clone(), presheaf: |c| Ok(EnrichedPresheaf::terminal(c)), pmap: SsetMap::identity(&edge), p: edge.clone() },
        AdjunctionCase { name: "W=D1 F=Hom(-,1) P=id", w: edge.clone(), presheaf: |c| Ok(EnrichedPresheaf::representable(c, 1)), pmap: SsetMap::identity(&edge), p: edge.clone() },
        AdjunctionCase {
            name: "W=D1 F=Hom(-,1)xD1 P=<0>",
            w: edge.clone(),
            presheaf: |c| Ok(EnrichedPresheaf::representable(c, 1).tensor(c, &simplex(1))?.0),
            p: pt,
            pmap: v0,
        },
    ]
}

#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub name: &'static str,
    pub adjunction: AdjunctionReport,
    /// Number of `(σ, θ)` pairs checked for naturality, and whether all passed.
    pub naturality_checked: usize,
    pub natural: bool,
}

impl CaseOutcome {
    pub fn ok(&self) -> bool {
        self.adjunction.ok() && self.natural
    }
}

/// Runs one catalog case: the bijection for `P` and naturality along every
/// elementary face and degeneracy between simplices of `W` within the bound.
pub fn run_case(case: &AdjunctionCase, opts: &CategorifyOptions, limit: usize, max_cells: usize) -> Result<CaseOutcome> {
    let cw = categorify_with(&case.w, opts)?;
    let st = Straightener::new(&cw, opts);
    let f = (case.presheaf)(&cw.category)?;
    let o = UnOracle::new(&st, &f, limit);
    let [pm, pk] = case.p.max_dim();
    let [wm, wk] = case.w.max_dim();
    let bound = [pm.max(wm + 1), pk.max(wk + 1)];
    let un = unstraighten(&o, bound, max_cells)?;
    let adjunction = check_adjunction(&o, &un, &case.p, &case.pmap)?;
    let mut naturality_checked = 0;
    let mut natural = true;
    for m in 0..=bound[0] {
        for k in 0..=bound[1] {
            for sigma in case.w.simplices([m, k]) {
                for theta in elementary_ops([m, k], bound) {
                    naturality_checked += 1;
                    natural &= check_naturality(&o, &un, &sigma, &theta)?;
                }
            }
        }
    }
    Ok(CaseOutcome { name: case.name, adjunction, naturality_checked, natural })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categorify::categorify;
    use crate::iso::find_iso;

    #[test]
    fn terminal_presheaf_unstraightens_to_the_base() {
        let w = embed(&simplex(1), 0);
        let cw = categorify(&w).unwrap();
        let st = Straightener::new(&cw, &CategorifyOptions::default());
        let f = EnrichedPresheaf::terminal(&cw.category);
        let o = UnOracle::new(&st, &f, 10_000);
        let un = unstraighten(&o, [1, 1], 100_000).unwrap();
        assert!(un.projection.is_iso(&w));
    }

    #[test]
    fn over_a_point_vertical_simplices_are_maps_into_the_value() {
        let w = embed(&point(), 0);
        let cw = categorify(&w).unwrap();
        let st = Straightener::new(&cw, &CategorifyOptions::default());
        let (f, _) = EnrichedPresheaf::representable(&cw.category, 0).tensor(&cw.category, &simplex(1)).unwrap();
        let o = UnOracle::new(&st, &f, 10_000);
        let un = unstraighten(&o, [0, 2], 100_000).unwrap();
        // k-simplices are maps Δ[k] -> Δ[1]
        for k in 0..=2 {
            assert_eq!(un.sset().count_simplices([0, k]), k + 2);
        }
        let x = external_product(&point(), &simplex(1)).sset;
        assert!(find_iso(un.sset(), &x).is_some());
    }

    #[test]
    fn adjunction_catalog_holds() {
        for case in adjunction_catalog() {
            let out = run_case(&case, &CategorifyOptions::default(), 100_000, 1_000_000).unwrap();
            assert!(out.ok(), "{out:?}");
            assert!(out.adjunction.maps_over_w > 0, "{}", case.name);
        }
    }
}
