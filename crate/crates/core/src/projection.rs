//! The projection `𝔠LF[m+1,Y] -> 𝔠(LF[m,Y] ⨿_{[0]} LF[1,Y])`: the identity on
//! objects, and on necklaces it makes `m` a joint, splitting the last bead.

use crate::categorify::{categorify_map, categorify_with, normalize, CategorifyOptions, Categorified, HomElem};
use crate::cone::{last_vertex_glue, Boxed, LastVertexGlue};
use crate::constructions::{external_product, external_product_map, simplex, simplex_keyed, simplex_map};
use crate::delta::DeltaMap;
use crate::error::{Error, Result};
use crate::map::SsetMap;
use crate::precat::{discretize, Discretized};
use crate::scat::EnrichedFunctor;
use crate::sset::{GenId, Keyed, NormalForm, Sset};
use std::collections::{BTreeMap, HashMap};

pub struct Projection {
    pub m: usize,
    pub source: Categorified,
    pub target: Categorified,
    pub functor: EnrichedFunctor,
    /// Object index of vertex `i` in the source and in the target.
    pub source_objects: Vec<usize>,
    pub target_objects: Vec<usize>,
    src_keyed: Boxed,
    src_disc: Discretized,
    glue: LastVertexGlue,
}

struct Lifter<'a> {
    y: &'a Sset<1>,
    horizontal: Keyed<u64, 1>,
    keyed: &'a Boxed,
    /// Generators of `LF[m+1,Y]` with positive horizontal degree, back in `F[m+1,Y]`.
    back: HashMap<GenId, GenId>,
}

impl<'a> Lifter<'a> {
    fn new(m1: usize, y: &'a Sset<1>, keyed: &'a Boxed, disc: &Discretized) -> Self {
        let mut back = HashMap::new();
        for g in 0..keyed.sset.num_gens() {
            if keyed.sset.dim(g)[0] >= 1 {
                let im = &disc.quotient.images[g];
                debug_assert!(im.degen.iter().all(DeltaMap::is_identity));
                back.insert(im.gen, g);
            }
        }
        Lifter { y, horizontal: simplex_keyed(m1), keyed, back }
    }

    /// A horizontally non-degenerate bead as (vertex mask, vertical simplex).
    fn lift(&self, bead: &NormalForm<2>) -> Result<(u64, NormalForm<1>)> {
        if !bead.degen[0].is_identity() {
            return Err(Error::Malformed("bead is horizontally degenerate".into()));
        }
        let g = *self.back.get(&bead.gen).ok_or_else(|| Error::Malformed("bead of horizontal degree 0".into()))?;
        let (a, b) = self.keyed.keys[g];
        let _ = self.y;
        Ok((self.horizontal.keys[a], NormalForm { degen: [bead.degen[1].clone()], gen: b }))
    }
}

fn piece(glue: &LastVertexGlue, part: usize, mask: u64, y: &NormalForm<1>) -> NormalForm<2> {
    let (n, keyed) = if part == 1 { (glue.lower.sset.max_dim()[0], &glue.lower) } else { (1, &glue.edge) };
    let h = simplex_keyed(n);
    let a = h.id(&mask);
    let s = NormalForm { degen: [DeltaMap::identity(mask.count_ones() as usize - 1), y.degen[0].clone()], gen: keyed.id(&(a, y.gen)) };
    glue.image(part, &s)
}

fn vertices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

fn mask_of(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |acc, &v| acc | 1 << v)
}

/// Makes `m` a joint of a necklace ending at `m+1`, or pushes the necklace
/// into the lower piece when it ends at or before `m`.
fn project_elem(e: &HomElem, lifter: &Lifter<'_>, glue: &LastVertexGlue, m: usize, ends_at_top: bool) -> Result<HomElem> {
    let lifted = e.beads.iter().map(|b| lifter.lift(b)).collect::<Result<Vec<_>>>()?;
    let mut beads = Vec::new();
    // new position of every old position
    let mut pos_map: Vec<usize> = Vec::new();
    let mut next = 0usize;
    let mut m_pos = None;
    let nb = lifted.len();
    for (r, (mask, y)) in lifted.iter().enumerate() {
        let vs = vertices_of(*mask);
        let first = r == 0;
        if !(ends_at_top && r + 1 == nb) {
            for (t, _) in vs.iter().enumerate() {
                if first || t > 0 {
                    pos_map.push(next + t);
                }
            }
            next += vs.len() - 1;
            beads.push(piece(glue, 1, *mask, y));
            continue;
        }
        let lower: Vec<usize> = vs.iter().copied().filter(|&v| v <= m).collect();
        let has_m = lower.contains(&m);
        for (t, &v) in vs.iter().enumerate() {
            if !(first || t > 0) {
                continue;
            }
            if v == m + 1 {
                pos_map.push(next + lower.len() - if has_m { 1 } else { 0 } + 1);
            } else {
                pos_map.push(next + t);
            }
        }
        let mut lower_m = lower.clone();
        if !has_m {
            lower_m.push(m);
        }
        m_pos = Some(next + lower_m.len() - 1);
        if lower_m.len() >= 2 {
            beads.push(piece(glue, 1, mask_of(&lower_m), y));
        }
        beads.push(piece(glue, 2, 0b11, y));
        next += lower_m.len();
    }
    let chain: Vec<u64> = e
        .chain
        .iter()
        .map(|&c| {
            let mut out = vertices_of(c).iter().fold(0u64, |acc, &p| acc | 1 << pos_map[p]);
            if let Some(p) = m_pos {
                out |= 1 << p;
            }
            out
        })
        .collect();
    Ok(normalize(&glue.disc.sset, e.k, beads, chain))
}

fn vertex_objects(cat: &Categorified, images: impl Iterator<Item = GenId>) -> Result<Vec<usize>> {
    images.map(|g| cat.object_of(g)).collect()
}

pub fn projection_pi(m: usize, y: &Sset<1>, opts: &CategorifyOptions) -> Result<Projection> {
    if !y.is_connected() {
        return Err(Error::Unsupported { reason: "Y is not connected".into(), witness: format!("{} components", y.components().0) });
    }
    let src_keyed = external_product(&simplex(m + 1), y);
    let src_disc = discretize(&src_keyed.sset)?;
    let source = categorify_with(&src_disc.sset, opts)?;
    let glue = last_vertex_glue(m, y)?;
    let target = categorify_with(&glue.disc.sset, opts)?;
    let y0 = y.vertices()[0];
    let v0 = NormalForm::<1>::id_of(y0, 0);
    let source_objects = vertex_objects(&source, (0..=m + 1).map(|i| src_disc.quotient.images[src_keyed.id(&(i, y0))].gen))?;
    let mut tv: Vec<GenId> = (0..=m).map(|i| piece_vertex(&glue, 1, i, &v0)).collect();
    tv.push(piece_vertex(&glue, 2, 1, &v0));
    let target_objects = vertex_objects(&target, tv.into_iter())?;
    let lifter = Lifter::new(m + 1, y, &src_keyed, &src_disc);
    let n = source.num_objects();
    let vertex_of: HashMap<usize, usize> = source_objects.iter().enumerate().map(|(v, &o)| (o, v)).collect();
    let objects: Vec<usize> = (0..n).map(|o| target_objects[vertex_of[&o]]).collect();
    let mut homs = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let h = source.hom(a, b);
            if h.is_empty() {
                continue;
            }
            let images = if a == b {
                vec![target.category.id(objects[a], 0)]
            } else {
                let top = vertex_of[&b] == m + 1;
                (0..h.num_gens())
                    .map(|g| {
                        let e = project_elem(&source.elem(a, b, &h.id_nf(g)), &lifter, &glue, m, top)?;
                        target.nf(objects[a], objects[b], &e)
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            homs.insert((a, b), SsetMap { images });
        }
    }
    let functor = EnrichedFunctor { objects, homs };
    functor.check(&source.category, &target.category)?;
    Ok(Projection { m, source, target, functor, source_objects, target_objects, src_keyed, src_disc, glue })
}

fn piece_vertex(glue: &LastVertexGlue, part: usize, v: usize, y0: &NormalForm<1>) -> GenId {
    let keyed = if part == 1 { &glue.lower } else { &glue.edge };
    glue.image(part, &NormalForm { degen: [DeltaMap::identity(0), DeltaMap::identity(0)], gen: keyed.id(&(v, y0.gen)) }).gen
}

impl Projection {
    /// `𝔠L[d^{m+1},Y] : 𝔠LF[m,Y] -> 𝔠LF[m+1,Y]` together with `𝔠LF[m,Y]`.
    pub fn top_face_functor(&self, y: &Sset<1>, opts: &CategorifyOptions) -> Result<(Categorified, EnrichedFunctor)> {
        let lower = &self.glue.lower;
        let lower_disc = discretize(&lower.sset)?;
        let lower_cat = categorify_with(&lower_disc.sset, opts)?;
        let face = external_product_map(lower, &self.src_keyed, &simplex_map(&DeltaMap::coface(self.m + 1, self.m + 1)), &SsetMap::identity(y));
        let lf = lower_disc.map_to(&self.src_disc, &face)?;
        let fun = categorify_map(&lf, &lower_cat, &self.source)?;
        Ok((lower_cat, fun))
    }

    /// The inclusion of `𝔠LF[m,Y]` into the glued category.
    pub fn lower_inclusion(&self, lower_cat: &Categorified) -> Result<EnrichedFunctor> {
        let lower_disc = discretize(&self.glue.lower.sset)?;
        let leg = self.glue.disc.quotient.compose(&self.glue.colim.cocone[1]);
        let inc = lower_disc.map_out(&self.glue.disc.sset, &leg)?;
        categorify_map(&inc, lower_cat, &self.target)
    }

    /// `Π ∘ 𝔠L[d^{m+1},Y]` equals the inclusion of the lower piece.
    pub fn composite_is_inclusion(&self, y: &Sset<1>, opts: &CategorifyOptions) -> Result<bool> {
        let (lower_cat, face) = self.top_face_functor(y, opts)?;
        let inc = self.lower_inclusion(&lower_cat)?;
        Ok(self.functor.compose(&face) == inc)
    }

    /// Hom maps between objects below the top are isomorphisms.
    pub fn iso_below_top(&self) -> bool {
        let top = self.source_objects[self.m + 1];
        self.functor.homs.iter().all(|(&(a, b), f)| {
            a == top || b == top || f.is_iso(self.target.hom(self.functor.objects[a], self.functor.objects[b]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::point;
    use crate::iso::find_iso;
    use crate::scat::{glue, suspension};

    fn opts() -> CategorifyOptions {
        CategorifyOptions::default()
    }

    #[test]
    fn projection_is_a_functor_and_restricts_to_the_inclusion() {
        for y in [point(), simplex(1)] {
            for m in 0..=2 {
                let p = projection_pi(m, &y, &opts()).unwrap();
                assert!(p.iso_below_top(), "m={m}");
                assert!(p.composite_is_inclusion(&y, &opts()).unwrap(), "m={m}");
            }
        }
    }

    #[test]
    fn small_projections() {
        let p = projection_pi(0, &simplex(1), &opts()).unwrap();
        for f in p.functor.homs.values() {
            assert!(f.images.iter().all(|s| s.degen[0].is_identity()));
        }
        let (a, b) = (p.source_objects[0], p.source_objects[1]);
        assert!(p.functor.homs[&(a, b)].is_iso(p.target.hom(p.target_objects[0], p.target_objects[1])));
        let p = projection_pi(1, &point(), &opts()).unwrap();
        let (a, c) = (p.source_objects[0], p.source_objects[2]);
        assert_eq!(p.source.hom(a, c).nd_counts(), vec![2, 1]);
        assert_eq!(p.target.hom(p.target_objects[0], p.target_objects[2]).nd_counts(), vec![1]);
    }

    #[test]
    fn glued_category_matches_the_suspension_gluing() {
        let y = simplex(1);
        for m in 0..=2 {
            let p = projection_pi(m, &y, &opts()).unwrap();
            let lower = crate::cone::box_base(m, &y, &opts()).unwrap();
            let g = glue(&lower.cat.category, lower.object_of_vertex[m], &suspension(&y), 0).unwrap();
            let mut objs = lower.object_of_vertex.clone();
            objs.push(lower.cat.num_objects());
            for i in 0..=m + 1 {
                for j in 0..=m + 1 {
                    let a = p.target.hom(p.target_objects[i], p.target_objects[j]);
                    assert!(find_iso(a, g.hom(objs[i], objs[j])).is_some(), "m={m} {i}->{j}");
                }
            }
        }
    }
}
