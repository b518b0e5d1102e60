//! Cone pushouts over `LF[m,Y]`, the closed-form straightening of `[μ,f]`
//! as a necklace-weighted colimit, and the special cases built from it.

use crate::categorify::{categorify_homs, categorify_with, CategorifyOptions, Categorified};
use crate::colimit::Colimit;
use crate::constructions::{
    boundary, boundary_inclusion, component_parts, embed, external_product, external_product_map, simplex, simplex_map, spine,
    spine_inclusion, vertex_map,
};
use crate::delta::DeltaMap;
use crate::dshom::{beads, necklace_weighted_colim, power_value, weight_f, weight_f_boundary, weight_g0, weighted_colim_map, WeightFunctor, WeightTransformation};
use crate::error::{Error, Result};
use crate::iso::{find_iso, find_iso_marked};
use crate::map::SsetMap;
use crate::necklace::PairObject;
use crate::precat::{discretize, Discretized};
use crate::presheaf::PresheafMap;
use crate::scat::{glue, suspension, SimplicialCategory};
use crate::sset::{GenId, Keyed, NormalForm, Sset};
use crate::straighten::{straighten_direct, straighten_direct_map, Straightened};

/// A monomorphism `f : X -> Y` with a display name.
#[derive(Clone, Debug)]
pub struct MonoCase {
    pub name: String,
    pub x: Sset<1>,
    pub y: Sset<1>,
    pub f: SsetMap<1>,
}

/// The five maps the cone checks run over.
pub fn mono_catalog() -> Vec<MonoCase> {
    let case = |name: &str, x: Sset<1>, y: Sset<1>, f: SsetMap<1>| MonoCase { name: name.into(), x, y, f };
    vec![
        case("id_D0", simplex(0), simplex(0), SsetMap::identity(&simplex(0))),
        case("id_D1", simplex(1), simplex(1), SsetMap::identity(&simplex(1))),
        case("bd1_in_D1", boundary(1), simplex(1), boundary_inclusion(1)),
        case("D0_in_D1@0", simplex(0), simplex(1), vertex_map(&simplex(1), 0)),
        case("Sp2_in_D2", spine(2), simplex(2), spine_inclusion(2)),
    ]
}

/// Every injective `μ : [ℓ] -> [m]`.
pub fn injections_into(m: usize) -> Vec<DeltaMap> {
    (0..=m).flat_map(|l| DeltaMap::injections(l, m)).collect()
}

pub type Boxed = Keyed<(GenId, GenId), 2>;

/// `Δ[a] ⊠ X -> Δ[n]` (horizontal), induced by `h : Δ[a] -> Δ[n]`.
fn over_simplex(k: &Boxed, h: &SsetMap<1>) -> SsetMap<2> {
    let images = k
        .keys
        .iter()
        .enumerate()
        .map(|(g, &(a, _))| {
            let s = &h.images[a];
            NormalForm { degen: [s.degen[0].clone(), DeltaMap::terminal(k.sset.dim(g)[1])], gen: s.gen }
        })
        .collect();
    SsetMap { images }
}

fn boxed(x: &Sset<1>, y: &Sset<1>) -> Boxed {
    external_product(x, y)
}

fn vertex_gen(k: &Boxed, a: GenId, b: GenId) -> GenId {
    k.id(&(a, b))
}

/// `Cone_{μ,f} = L(F[ℓ+1,X] ⨿_{F[ℓ,X]} F[m,Y])` with its map to `Δ[m+1]`.
#[derive(Clone, Debug)]
pub struct ConePushout {
    pub sset: Sset<2>,
    /// The image of vertex `i` of `Δ[m]`, for `0 ≤ i ≤ m`.
    pub objects: Vec<GenId>,
    /// The cone points: images of the top vertex of `Δ[ℓ+1]`, one per component of `X`.
    pub tops: Vec<GenId>,
    pub to_simplex: SsetMap<2>,
}

pub fn cone_pushout(mu: &DeltaMap, x: &Sset<1>, y: &Sset<1>, f: &SsetMap<1>) -> Result<ConePushout> {
    f.validate(x, y)?;
    let (l, m) = (mu.src(), mu.tgt());
    let a = boxed(&simplex(l), x);
    let b = boxed(&simplex(l + 1), x);
    let c = boxed(&simplex(m), y);
    let id_x = SsetMap::identity(x);
    let ab = external_product_map(&a, &b, &simplex_map(&DeltaMap::coface(l + 1, l + 1)), &id_x);
    let ac = external_product_map(&a, &c, &simplex_map(mu), f);
    let colim = Colimit::new(&[&a.sset, &b.sset, &c.sset], &[(0, 1, &ab), (0, 2, &ac)])?;
    let disc = discretize(&colim.sset)?;
    let base = embed(&simplex(m + 1), 0);
    let top_face = DeltaMap::coface(m + 1, m + 1);
    let legs = [
        over_simplex(&a, &simplex_map(&top_face.compose(mu))),
        over_simplex(&b, &simplex_map(&mu.plus_top())),
        over_simplex(&c, &simplex_map(&top_face)),
    ];
    let raw = colim.mediate(&legs.iter().collect::<Vec<_>>(), &base)?;
    let to_simplex = disc.map_out(&base, &raw)?;
    let image = |obj: usize, g: GenId| disc.quotient.apply(&colim.cocone[obj].images[g]).gen;
    let y0 = *y.vertices().first().ok_or_else(|| Error::Argument("Y is empty".into()))?;
    let objects = (0..=m).map(|i| image(2, vertex_gen(&c, i, y0))).collect();
    let mut tops: Vec<GenId> = x.vertices().iter().map(|&v| image(1, vertex_gen(&b, l + 1, v))).collect();
    tops.sort_unstable();
    tops.dedup();
    Ok(ConePushout { sset: disc.sset, objects, tops, to_simplex })
}

impl ConePushout {
    /// `Hom(i, m+1)` in `𝔠Cone`, the disjoint union over the cone points.
    pub fn hom_to_top(&self, i: usize, opts: &CategorifyOptions) -> Result<Sset<1>> {
        let pairs: Vec<(GenId, GenId)> = self.tops.iter().map(|&t| (self.objects[i], t)).collect();
        let homs = categorify_homs(&self.sset, &pairs, opts)?;
        let parts: Vec<&Sset<1>> = homs.iter().map(|h| h.sset()).collect();
        Ok(Sset::coproduct(&parts).0)
    }

    /// The vertices of the cone and where they land in `Δ[m+1]`.
    pub fn vertex_images(&self) -> Vec<usize> {
        self.sset.gens_of_dim([0, 0]).map(|g| self.to_simplex.images[g].gen).collect()
    }
}

fn require_mono(mu: &DeltaMap, f: &SsetMap<1>, y: &Sset<1>) -> Result<()> {
    if !mu.is_injective() {
        return Err(Error::Unsupported { reason: "μ is not injective".into(), witness: format!("{mu:?}") });
    }
    if !f.is_mono() {
        return Err(Error::Unsupported { reason: "f is not a monomorphism".into(), witness: format!("{f:?}") });
    }
    if !y.is_connected() {
        return Err(Error::Unsupported { reason: "Y is not connected".into(), witness: format!("{} components", y.components().0) });
    }
    Ok(())
}

/// `St_{LF[m,Y]}([μ,f])(i)` as a necklace-weighted colimit, summed over the
/// components of `X`.
pub fn straighten_mono_formula(mu: &DeltaMap, x: &Sset<1>, y: &Sset<1>, f: &SsetMap<1>, i: usize) -> Result<Sset<1>> {
    require_mono(mu, f, y)?;
    if i > mu.tgt() {
        return Err(Error::Argument(format!("object {i} is not in [{}]", mu.tgt())));
    }
    let values = component_parts(x)
        .into_iter()
        .map(|(xc, inc)| necklace_weighted_colim(&weight_f(mu, &xc, y, &f.compose(&inc), i)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Sset::coproduct(&values.iter().collect::<Vec<_>>()).0)
}

/// Outcome of comparing the closed form with the categorified cone.
#[derive(Clone, Debug)]
pub struct ConeComparison {
    pub formula: Sset<1>,
    pub hom: Sset<1>,
    pub certificate: Option<SsetMap<1>>,
}

pub fn compare_cone_formula(mu: &DeltaMap, case: &MonoCase, i: usize, opts: &CategorifyOptions) -> Result<ConeComparison> {
    let formula = straighten_mono_formula(mu, &case.x, &case.y, &case.f, i)?;
    let hom = cone_pushout(mu, &case.x, &case.y, &case.f)?.hom_to_top(i, opts)?;
    let certificate = find_iso(&formula, &hom);
    Ok(ConeComparison { formula, hom, certificate })
}

/// `(Cone_{μ,f})_0 = {0,…,m+1}`: vertices biject with those of `Δ[m+1]`,
/// with one extra cone point per additional component of `X`.
pub fn cone_vertices_ok(mu: &DeltaMap, case: &MonoCase) -> Result<bool> {
    let cone = cone_pushout(mu, &case.x, &case.y, &case.f)?;
    let mut images = cone.vertex_images();
    images.sort_unstable();
    let m = mu.tgt();
    let ncomp = case.x.components().0;
    let mut expected: Vec<usize> = (0..=m).collect();
    expected.extend(std::iter::repeat(m + 1).take(ncomp));
    Ok(images == expected && cone.tops.len() == ncomp)
}

/// `L(F[m,X] ⨿_{F[0,X]} F[1,X])`, glued along the last vertex of `Δ[m]` and
/// the first vertex of `Δ[1]`.
pub struct LastVertexGlue {
    pub colim: Colimit<2>,
    pub disc: Discretized,
    /// `F[m,X]` and `F[1,X]`, objects 1 and 2 of the diagram.
    pub lower: Boxed,
    pub edge: Boxed,
}

impl LastVertexGlue {
    /// The image of a simplex of `F[m,X]` (`part = 1`) or `F[1,X]` (`part = 2`).
    pub fn image(&self, part: usize, s: &NormalForm<2>) -> NormalForm<2> {
        self.disc.quotient.apply(&self.colim.cocone[part].apply(s))
    }
}

pub fn last_vertex_glue(m: usize, x: &Sset<1>) -> Result<LastVertexGlue> {
    let p = boxed(&simplex(0), x);
    let lower = boxed(&simplex(m), x);
    let edge = boxed(&simplex(1), x);
    let id = SsetMap::identity(x);
    let pa = external_product_map(&p, &lower, &simplex_map(&DeltaMap::vertex(m, m)), &id);
    let pb = external_product_map(&p, &edge, &simplex_map(&DeltaMap::vertex(1, 0)), &id);
    let colim = Colimit::new(&[&p.sset, &lower.sset, &edge.sset], &[(0, 1, &pa), (0, 2, &pb)])?;
    let disc = discretize(&colim.sset)?;
    Ok(LastVertexGlue { colim, disc, lower, edge })
}

/// `Cone_{⟨m⟩, id_X} ≅ LF[m,X] ⨿_{[0]} LF[1,X]`, with the isomorphism.
pub fn cone_last_vertex_iso(m: usize, x: &Sset<1>) -> Result<Option<SsetMap<2>>> {
    let cone = cone_pushout(&DeltaMap::vertex(m, m), x, x, &SsetMap::identity(x))?;
    let glued = last_vertex_glue(m, x)?;
    Ok(find_iso(&cone.sset, &glued.disc.sset))
}

fn empty_or_identity(src: &Sset<1>, tgt: &Sset<1>) -> Result<SsetMap<1>> {
    if src.is_empty() {
        return Ok(SsetMap::from_empty());
    }
    let id = SsetMap::identity(src);
    id.validate(src, tgt)?;
    Ok(id)
}

/// The transformation between two weights on the same poset whose components
/// are identities where the source is inhabited.
fn inclusion_transformation(src: &WeightFunctor, tgt: &WeightFunctor) -> Result<WeightTransformation> {
    let components = (0..src.objects.len()).map(|t| empty_or_identity(&src.values[t], &tgt.values[t])).collect::<Result<Vec<_>>>()?;
    let nat = WeightTransformation { components };
    nat.check(src, tgt)?;
    Ok(nat)
}

fn full_pair(m: usize) -> PairObject {
    PairObject { j: 1 | 1 << (m + 1), v: (1u64 << (m + 2)) - 1 }
}

fn image_avoiding(m: usize, skip: &[usize]) -> DeltaMap {
    let img: Vec<usize> = (0..=m).filter(|v| !skip.contains(v)).collect();
    DeltaMap::new(m, &img)
}

/// Checks that `∐_{s<t} F_{d^s d^t} ⇉ ∐_s F_{d^s} -> F_{id}` (or the boundary
/// weight when `i = 0`) is a coequalizer at every object of the pair poset.
pub fn check_face_coequalizer(m: usize, i: usize, case: &MonoCase) -> Result<bool> {
    require_mono(&DeltaMap::identity(m), &case.f, &case.y)?;
    let (x, y, f) = (&case.x, &case.y, &case.f);
    let target = if i > 0 { weight_f(&DeltaMap::identity(m), x, y, f, i)? } else { weight_f_boundary(m, x, y, f)? };
    if m == 0 {
        return Ok(target.values.iter().all(Sset::is_empty));
    }
    let faces = (0..=m).map(|s| weight_f(&image_avoiding(m, &[s]), x, y, f, i)).collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    if m >= 2 {
        for s in 0..=m {
            for t in s + 1..=m {
                pairs.push((s, t, weight_f(&image_avoiding(m, &[s, t]), x, y, f, i)?));
            }
        }
    }
    let legs = faces.iter().map(|w| inclusion_transformation(w, &target)).collect::<Result<Vec<_>>>()?;
    let mut arrows_nat = Vec::new();
    for (s, t, w) in &pairs {
        arrows_nat.push((inclusion_transformation(w, &faces[*s])?, inclusion_transformation(w, &faces[*t])?));
    }
    for obj in 0..target.objects.len() {
        let mut objects: Vec<&Sset<1>> = faces.iter().map(|w| &w.values[obj]).collect();
        objects.extend(pairs.iter().map(|(_, _, w)| &w.values[obj]));
        let mut arrows = Vec::new();
        for (p, (s, t, _)) in pairs.iter().enumerate() {
            let o = faces.len() + p;
            arrows.push((o, *s, &arrows_nat[p].0.components[obj]));
            arrows.push((o, *t, &arrows_nat[p].1.components[obj]));
        }
        let colim = Colimit::new(&objects, &arrows)?;
        let mut leg_maps: Vec<SsetMap<1>> = legs.iter().map(|n| n.components[obj].clone()).collect();
        for (p, (s, _, _)) in pairs.iter().enumerate() {
            leg_maps.push(leg_maps[*s].compose(&arrows_nat[p].0.components[obj]));
        }
        let med = colim.mediate(&leg_maps.iter().collect::<Vec<_>>(), &target.values[obj])?;
        if !med.is_iso(&target.values[obj]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The map `(∏ Y) × X_j -> (∏ Y) × Y` on values of the weights, `f_j` on the last factor.
fn last_factor_map(p: &PairObject, y: &Sset<1>, xj: &Sset<1>, fj: &SsetMap<1>, src_last: bool) -> Result<(Sset<1>, SsetMap<1>)> {
    let nb = beads(p).len();
    let mut sf: Vec<&Sset<1>> = vec![y; nb - 1];
    sf.push(if src_last { xj } else { y });
    let src = power_value(&sf)?;
    let tgt = power_value(&vec![y; nb])?;
    let mut maps: Vec<SsetMap<1>> = vec![SsetMap::identity(y); nb - 1];
    maps.push(if src_last { fj.clone() } else { SsetMap::identity(y) });
    Ok((src.sset.clone(), src.map_to(&tgt, &maps)))
}

/// Checks the square `∐_j F∂(f_j) -> F∂(id_Y)`, `∐_j F∂(f_j) -> ∐_j F(f_j)`
/// against `G⁰_m(f)` object by object on the pair poset `(0, m)`.
pub fn check_boundary_pushout(m: usize, case: &MonoCase) -> Result<bool> {
    let (x, y, f) = (&case.x, &case.y, &case.f);
    require_mono(&DeltaMap::identity(m), f, y)?;
    let parts = component_parts(x);
    let idy = SsetMap::identity(y);
    let g0 = weight_g0(m, x, y, f)?;
    let bd_y = weight_f_boundary(m, y, y, &idy)?;
    let full = full_pair(m);
    let mut bd_parts = Vec::new();
    let mut id_parts = Vec::new();
    for (xc, inc) in &parts {
        let fj = f.compose(inc);
        bd_parts.push(weight_f_boundary(m, xc, y, &fj)?);
        id_parts.push(weight_f(&DeltaMap::identity(m), xc, y, &fj, 0)?);
    }
    let n = parts.len();
    for (obj, p) in g0.objects.iter().enumerate() {
        // objects: bd_j (0..n), bd_y (n), id_j (n+1..)
        let mut objects: Vec<&Sset<1>> = bd_parts.iter().map(|w| &w.values[obj]).collect();
        objects.push(&bd_y.values[obj]);
        objects.extend(id_parts.iter().map(|w| &w.values[obj]));
        let mut to_bd_y = Vec::new();
        let mut to_id = Vec::new();
        let mut id_legs = Vec::new();
        for (j, (xc, inc)) in parts.iter().enumerate() {
            let fj = f.compose(inc);
            if *p == full {
                to_bd_y.push(SsetMap::from_empty());
                to_id.push(SsetMap::from_empty());
                id_legs.push(inc.clone());
            } else {
                let (_, m1) = last_factor_map(p, y, xc, &fj, true)?;
                to_bd_y.push(m1.clone());
                to_id.push(empty_or_identity(&bd_parts[j].values[obj], &id_parts[j].values[obj])?);
                id_legs.push(m1);
            }
        }
        let bd_y_leg = if *p == full { SsetMap::from_empty() } else { last_factor_map(p, y, y, &idy, false)?.1 };
        let mut arrows = Vec::new();
        for j in 0..n {
            arrows.push((j, n, &to_bd_y[j]));
            arrows.push((j, n + 1 + j, &to_id[j]));
        }
        let colim = Colimit::new(&objects, &arrows)?;
        let mut legs: Vec<SsetMap<1>> = (0..n).map(|j| bd_y_leg.compose(&to_bd_y[j])).collect();
        legs.push(bd_y_leg.clone());
        legs.extend(id_legs);
        let tgt = &g0.values[obj];
        for (o, l) in objects.iter().zip(&legs) {
            l.validate(o, tgt)?;
        }
        let med = colim.mediate(&legs.iter().collect::<Vec<_>>(), tgt)?;
        if !med.is_iso(tgt) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `LF[m,Y]`, its categorification, and the vertex-to-object correspondence.
pub struct BoxBase {
    pub keyed: Boxed,
    pub disc: Discretized,
    pub cat: Categorified,
    /// The object index of vertex `i` of `Δ[m]`.
    pub object_of_vertex: Vec<usize>,
}

pub fn box_base(m: usize, y: &Sset<1>, opts: &CategorifyOptions) -> Result<BoxBase> {
    let keyed = boxed(&simplex(m), y);
    let disc = discretize(&keyed.sset)?;
    let cat = categorify_with(&disc.sset, opts)?;
    let y0 = *y.vertices().first().ok_or_else(|| Error::Argument("Y is empty".into()))?;
    let object_of_vertex = (0..=m).map(|i| cat.object_index[&disc.quotient.images[vertex_gen(&keyed, i, y0)].gen]).collect();
    Ok(BoxBase { keyed, disc, cat, object_of_vertex })
}

/// A straightening over `LF[m,Y]` with its comparison map into the
/// straightening of `F[m,Y] -> LF[m,Y]`.
pub struct SpecialStraightening {
    pub base: BoxBase,
    pub total: Sset<2>,
    pub straightened: Straightened,
    pub full: Straightened,
    pub comparison: PresheafMap,
}

impl SpecialStraightening {
    pub fn value_at_vertex(&self, i: usize) -> &Sset<1> {
        &self.straightened.presheaf.values[self.base.object_of_vertex[i]]
    }

    pub fn full_at_vertex(&self, i: usize) -> &Sset<1> {
        &self.full.presheaf.values[self.base.object_of_vertex[i]]
    }

    pub fn comparison_at_vertex(&self, i: usize) -> &SsetMap<1> {
        &self.comparison.components[self.base.object_of_vertex[i]]
    }
}

/// `St(F[m,Y] -> LF[m,Y])`.
pub fn full_straightening(base: &BoxBase, opts: &CategorifyOptions) -> Result<Straightened> {
    straighten_direct(&base.cat, &base.keyed.sset, &base.disc.quotient, opts)
}

fn special(base: BoxBase, total: Sset<2>, into_box: SsetMap<2>, opts: &CategorifyOptions) -> Result<SpecialStraightening> {
    let pmap = base.disc.quotient.compose(&into_box);
    let straightened = straighten_direct(&base.cat, &total, &pmap, opts)?;
    let full = full_straightening(&base, opts)?;
    let comparison = straighten_direct_map(&base.cat, &straightened, &full, &into_box)?;
    Ok(SpecialStraightening { base, total, straightened, full, comparison })
}

/// The pushout-product `∂F[m,Y] ⨿_{∂F[m,X]} F[m,X] -> LF[m,Y]`.
pub fn boundary_pp(m: usize, case: &MonoCase, opts: &CategorifyOptions) -> Result<SpecialStraightening> {
    let (x, y, f) = (&case.x, &case.y, &case.f);
    require_mono(&DeltaMap::identity(m), f, y)?;
    let base = box_base(m, y, opts)?;
    let top_x = boxed(&simplex(m), x);
    let idm = SsetMap::identity(&simplex(m));
    if m == 0 {
        let u = external_product_map(&top_x, &base.keyed, &idm, f);
        return special(base, top_x.sset, u, opts);
    }
    let bx = boxed(&boundary(m), x);
    let by = boxed(&boundary(m), y);
    let bi = boundary_inclusion(m);
    let (idx, idy) = (SsetMap::identity(x), SsetMap::identity(y));
    let a01 = external_product_map(&bx, &by, &SsetMap::identity(&boundary(m)), f);
    let a02 = external_product_map(&bx, &top_x, &bi, &idx);
    let colim = Colimit::new(&[&bx.sset, &by.sset, &top_x.sset], &[(0, 1, &a01), (0, 2, &a02)])?;
    let legs = [
        external_product_map(&bx, &base.keyed, &bi, f),
        external_product_map(&by, &base.keyed, &bi, &idy),
        external_product_map(&top_x, &base.keyed, &idm, f),
    ];
    let u = colim.mediate(&legs.iter().collect::<Vec<_>>(), &base.keyed.sset)?;
    special(base, colim.sset, u, opts)
}

/// `F[0,X] -> LF[m,X]` at the last vertex.
pub fn last_vertex(m: usize, x: &Sset<1>, opts: &CategorifyOptions) -> Result<SpecialStraightening> {
    let base = box_base(m, x, opts)?;
    let p = boxed(&simplex(0), x);
    let u = external_product_map(&p, &base.keyed, &simplex_map(&DeltaMap::vertex(m, m)), &SsetMap::identity(x));
    special(base, p.sset, u, opts)
}

/// `St(F[m,Y] -> LF[m,Y])` with the identity comparison.
pub fn full(m: usize, y: &Sset<1>, opts: &CategorifyOptions) -> Result<SpecialStraightening> {
    let base = box_base(m, y, opts)?;
    let total = base.keyed.sset.clone();
    let u = SsetMap::identity(&total);
    special(base, total, u, opts)
}

/// `𝔠LF[m,X] ⨿_{[0]} ΣX`, glued at `m` and the source of `ΣX`, with the
/// object of vertex `i` (the cone point is `m+1`).
pub fn last_vertex_category(base: &BoxBase, x: &Sset<1>) -> Result<(SimplicialCategory, Vec<usize>)> {
    let m = base.object_of_vertex.len() - 1;
    let c = glue(&base.cat.category, base.object_of_vertex[m], &suspension(x), 0)?;
    let mut objs = base.object_of_vertex.clone();
    objs.push(base.cat.num_objects());
    Ok((c, objs))
}

/// Boundary checks: away from `0` the comparison is invertible; at `0` it
/// agrees, up to isomorphism of its target, with the map of weighted colimits
/// induced by `G⁰_m(f) -> F⁰(id_Y)`.
#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub iso_away_from_zero: bool,
    pub source_matches: bool,
    pub target_matches: bool,
    pub comparison_matches: bool,
}

impl BoundaryReport {
    pub fn ok(&self) -> bool {
        self.iso_away_from_zero && self.source_matches && self.target_matches && self.comparison_matches
    }
}

pub fn check_boundary_pp(m: usize, case: &MonoCase, opts: &CategorifyOptions, search_limit: usize) -> Result<BoundaryReport> {
    let s = boundary_pp(m, case, opts)?;
    let iso_away_from_zero = (1..=m).all(|i| s.comparison_at_vertex(i).is_iso(s.full_at_vertex(i)));
    let g0 = weight_g0(m, &case.x, &case.y, &case.f)?;
    let idy = SsetMap::identity(&case.y);
    let f0 = weight_f(&DeltaMap::identity(m), &case.y, &case.y, &idy, 0)?;
    let full = full_pair(m);
    let components = g0.objects.iter().enumerate().map(|(t, p)| if *p == full { case.f.clone() } else { SsetMap::identity(&g0.values[t]) }).collect();
    let (a, b, wcm) = weighted_colim_map(&g0, &f0, &WeightTransformation { components })?;
    let (src, tgt, comp) = (s.value_at_vertex(0), s.full_at_vertex(0), s.comparison_at_vertex(0));
    let source_matches = find_iso(src, &a).is_some();
    let target_matches = find_iso(tgt, &b).is_some();
    let mut comparison_matches = false;
    if source_matches && target_matches && comp.is_mono() && wcm.is_mono() {
        let marks = |f: &SsetMap<1>, n: usize| {
            let mut v = vec![false; n];
            for s in &f.images {
                v[s.gen] = true;
            }
            v
        };
        let (have, want) = (marks(comp, tgt.num_gens()), marks(&wcm, b.num_gens()));
        comparison_matches = match find_iso_marked(tgt, &b, &have, &want, search_limit as u64) {
            Ok(found) => found.is_some(),
            Err(()) => return Err(Error::Resource(format!("iso search exceeded {search_limit} steps"))),
        };
    }
    Ok(BoundaryReport { iso_away_from_zero, source_matches, target_matches, comparison_matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::point;

    fn opts() -> CategorifyOptions {
        CategorifyOptions::default()
    }

    #[test]
    fn catalog_sizes() {
        assert_eq!(mono_catalog().len(), 5);
        let n: usize = (0..=2).map(|m| injections_into(m).len() * (m + 1)).sum();
        assert_eq!(n * 5, 140);
    }

    #[test]
    fn formula_agrees_with_cone_on_small_cases() {
        for case in mono_catalog() {
            for m in 0..=1 {
                for mu in injections_into(m) {
                    for i in 0..=m {
                        let c = compare_cone_formula(&mu, &case, i, &opts()).unwrap();
                        assert!(c.certificate.is_some(), "{} {mu:?} {i}: {:?} vs {:?}", case.name, c.formula.nd_counts(), c.hom.nd_counts());
                    }
                }
            }
        }
    }

    #[test]
    fn identity_formula_at_the_last_object_is_y() {
        let y = simplex(1);
        let v = straighten_mono_formula(&DeltaMap::identity(1), &y, &y, &SsetMap::identity(&y), 1).unwrap();
        assert!(find_iso(&v, &y).is_some());
        let x = spine(2);
        let v = straighten_mono_formula(&DeltaMap::identity(0), &x, &simplex(2), &spine_inclusion(2), 0).unwrap();
        assert!(find_iso(&v, &x).is_some());
    }

    #[test]
    fn cone_vertices_and_last_vertex_decomposition() {
        for case in mono_catalog() {
            for m in 0..=2 {
                for mu in injections_into(m) {
                    assert!(cone_vertices_ok(&mu, &case).unwrap(), "{} {mu:?}", case.name);
                }
            }
        }
        for x in [point(), simplex(1)] {
            for m in 0..=2 {
                assert!(cone_last_vertex_iso(m, &x).unwrap().is_some());
            }
        }
    }

    #[test]
    fn weight_levels() {
        for case in mono_catalog() {
            for m in 0..=2 {
                assert!(check_boundary_pushout(m, &case).unwrap(), "pushout {} m={m}", case.name);
                if case.x.is_connected() {
                    for i in 0..=m {
                        assert!(check_face_coequalizer(m, i, &case).unwrap(), "coeq {} m={m} i={i}", case.name);
                    }
                }
            }
        }
    }

    #[test]
    fn special_straightenings() {
        let lv = last_vertex(1, &point(), &opts()).unwrap();
        for i in 0..=1 {
            assert_eq!(lv.value_at_vertex(i).nd_counts(), vec![1]);
        }
        assert_eq!(lv.full_at_vertex(0).nd_counts(), vec![2, 1]);
        assert!(lv.comparison_at_vertex(0).is_mono());
        let (cat, objs) = last_vertex_category(&lv.base, &point()).unwrap();
        for i in 0..=1 {
            assert!(find_iso(lv.value_at_vertex(i), cat.hom(objs[i], objs[2])).is_some());
        }
        let y = simplex(1);
        let fl = full(1, &y, &opts()).unwrap();
        assert!(find_iso(fl.value_at_vertex(1), &y).is_some());
        let case = &mono_catalog()[2];
        let r = check_boundary_pp(1, case, &opts(), 10_000).unwrap();
        assert!(r.ok(), "{r:?}");
        assert!(find_iso(boundary_pp(1, case, &opts()).unwrap().value_at_vertex(1), &simplex(1)).is_some());
    }
}
