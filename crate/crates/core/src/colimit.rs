//! Colimits of finite diagrams, computed degreewise by union–find on all
//! simplices up to the largest generator dimension of the inputs.

use crate::error::{Error, Result};
use crate::map::SsetMap;
use crate::sset::{Generator, GenId, NormalForm, Sset};
use crate::unionfind::UnionFind;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct Colimit<const D: usize> {
    pub sset: Sset<D>,
    /// One map per diagram object.
    pub cocone: Vec<SsetMap<D>>,
    /// For each colimit generator, an object and generator representing it.
    reps: Vec<(usize, GenId)>,
}

/// An arrow of a diagram: `(source object, target object, map)`.
pub type Arrow<'a, const D: usize> = (usize, usize, &'a SsetMap<D>);

fn degrees<const D: usize>(bound: [usize; D]) -> Vec<[usize; D]> {
    let mut out = vec![[0usize; D]];
    for j in 0..D {
        let mut next = Vec::new();
        for d in &out {
            for v in 0..=bound[j] {
                let mut e = *d;
                e[j] = v;
                next.push(e);
            }
        }
        out = next;
    }
    out.sort_by_key(|d| (d.iter().sum::<usize>(), *d));
    out
}

/// Checks that two paths of arrows (lists of arrow indices, applied left to right)
/// agree on every generator.
pub fn paths_agree<const D: usize>(
    objects: &[&Sset<D>],
    arrows: &[Arrow<'_, D>],
    p: &[usize],
    q: &[usize],
) -> Result<bool> {
    let start = |path: &[usize]| path.first().map(|&a| arrows[a].0);
    let end = |path: &[usize]| path.last().map(|&a| arrows[a].1);
    if start(p) != start(q) || end(p) != end(q) {
        return Err(Error::Diagram("paths with different endpoints".into()));
    }
    let Some(src) = start(p) else { return Ok(true) };
    for g in 0..objects[src].num_gens() {
        let run = |path: &[usize]| path.iter().fold(objects[src].id_nf(g), |s, &a| arrows[a].2.apply(&s));
        if run(p) != run(q) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl<const D: usize> Colimit<D> {
    /// The colimit of the diagram, with `relations` (pairs of arrow paths)
    /// checked to commute first.
    pub fn with_relations(
        objects: &[&Sset<D>],
        arrows: &[Arrow<'_, D>],
        relations: &[(Vec<usize>, Vec<usize>)],
    ) -> Result<Self> {
        for (p, q) in relations {
            if !paths_agree(objects, arrows, p, q)? {
                return Err(Error::Diagram(format!("paths {p:?} and {q:?} do not commute")));
            }
        }
        Self::new(objects, arrows)
    }

    pub fn new(objects: &[&Sset<D>], arrows: &[Arrow<'_, D>]) -> Result<Self> {
        for (a, b, f) in arrows {
            if *a >= objects.len() || *b >= objects.len() {
                return Err(Error::Diagram("arrow endpoint out of range".into()));
            }
            f.validate(objects[*a], objects[*b]).map_err(|e| Error::Diagram(e.to_string()))?;
        }
        let mut bound = [0usize; D];
        for o in objects {
            let m = o.max_dim();
            for j in 0..D {
                bound[j] = bound[j].max(m[j]);
            }
        }
        let degs = degrees(bound);
        let mut all: Vec<(usize, NormalForm<D>)> = Vec::new();
        let mut index: Vec<HashMap<NormalForm<D>, usize>> = vec![HashMap::new(); objects.len()];
        for (o, obj) in objects.iter().enumerate() {
            for d in &degs {
                for s in obj.simplices(*d) {
                    index[o].insert(s.clone(), all.len());
                    all.push((o, s));
                }
            }
        }
        let mut uf = UnionFind::new(all.len());
        for (a, b, f) in arrows {
            for d in &degs {
                for s in objects[*a].simplices(*d) {
                    let t = f.apply(&s);
                    uf.union(index[*a][&s], index[*b][&t]);
                }
            }
        }
        // a class is non-degenerate iff none of its members is degenerate
        let mut class_nd: HashMap<usize, bool> = HashMap::new();
        let mut class_first: HashMap<usize, usize> = HashMap::new();
        for (i, (_, s)) in all.iter().enumerate() {
            let r = uf.find(i);
            let e = class_nd.entry(r).or_insert(true);
            *e &= s.is_nondegenerate();
            class_first.entry(r).or_insert(i);
        }
        let mut nd_classes: Vec<(usize, usize)> =
            class_nd.iter().filter(|(_, &nd)| nd).map(|(&r, _)| (class_first[&r], r)).collect();
        nd_classes.sort();
        let gen_of_class: HashMap<usize, GenId> = nd_classes.iter().enumerate().map(|(g, &(_, r))| (r, g)).collect();
        // a degenerate member of every degenerate class, for re-normalization
        let mut degenerate_member: HashMap<usize, usize> = HashMap::new();
        for (i, (_, s)) in all.iter().enumerate() {
            if !s.is_nondegenerate() {
                degenerate_member.entry(uf.find(i)).or_insert(i);
            }
        }
        let mut memo: HashMap<usize, NormalForm<D>> = HashMap::new();
        let ctx = Ctx { objects, all: &all, index: &index, gen_of_class: &gen_of_class, degenerate_member: &degenerate_member };
        let mut gens = Vec::with_capacity(nd_classes.len());
        let mut reps = Vec::with_capacity(nd_classes.len());
        for &(first, _) in &nd_classes {
            let (o, s) = &all[first];
            let obj = objects[*o];
            let dim = obj.dim(s.gen);
            let faces = std::array::from_fn(|j| {
                obj.generator(s.gen).faces[j].iter().map(|f| ctx.nf(&mut uf, &mut memo, *o, f)).collect()
            });
            gens.push(Generator { dim, faces });
            reps.push((*o, s.gen));
        }
        let labels = reps.iter().map(|&(o, g)| objects[o].label(g).map(str::to_string)).collect();
        let sset = Sset::from_parts(gens, labels);
        let cocone = objects
            .iter()
            .enumerate()
            .map(|(o, obj)| SsetMap {
                images: (0..obj.num_gens()).map(|g| ctx.nf(&mut uf, &mut memo, o, &obj.id_nf(g))).collect(),
            })
            .collect();
        Ok(Colimit { sset, cocone, reps })
    }

    /// The map out of the colimit induced by a cocone; fails if the cocone is not compatible.
    pub fn mediate(&self, legs: &[&SsetMap<D>], target: &Sset<D>) -> Result<SsetMap<D>> {
        if legs.len() != self.cocone.len() {
            return Err(Error::Diagram("cocone has the wrong number of legs".into()));
        }
        let images: Vec<NormalForm<D>> = self.reps.iter().map(|&(o, g)| legs[o].images[g].clone()).collect();
        let m = SsetMap { images };
        for (o, leg) in legs.iter().enumerate() {
            if m.compose(&self.cocone[o]) != **leg {
                return Err(Error::Diagram(format!("test cocone is not compatible at object {o}")));
            }
        }
        m.validate(&self.sset, target)?;
        Ok(m)
    }

    pub fn representative(&self, g: GenId) -> (usize, GenId) {
        self.reps[g]
    }
}

struct Ctx<'a, const D: usize> {
    objects: &'a [&'a Sset<D>],
    all: &'a [(usize, NormalForm<D>)],
    index: &'a [HashMap<NormalForm<D>, usize>],
    gen_of_class: &'a HashMap<usize, GenId>,
    degenerate_member: &'a HashMap<usize, usize>,
}

impl<const D: usize> Ctx<'_, D> {
    fn nf(&self, uf: &mut UnionFind, memo: &mut HashMap<usize, NormalForm<D>>, o: usize, s: &NormalForm<D>) -> NormalForm<D> {
        let r = uf.find(self.index[o][s]);
        self.class_nf(uf, memo, r)
    }

    fn class_nf(&self, uf: &mut UnionFind, memo: &mut HashMap<usize, NormalForm<D>>, r: usize) -> NormalForm<D> {
        if let Some(n) = memo.get(&r) {
            return n.clone();
        }
        let out = if let Some(&g) = self.gen_of_class.get(&r) {
            let s = &self.all[r].1;
            NormalForm { degen: crate::sset::identity_ops(s.dim()), gen: g }
        } else {
            let i = self.degenerate_member[&r];
            let (o, s) = &self.all[i];
            let base = self.objects[*o].id_nf(s.gen);
            let inner = self.nf(uf, memo, *o, &base);
            inner.degenerate_by(&s.degen)
        };
        memo.insert(r, out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary, boundary_inclusion, point, simplex, vertex_map};

    #[test]
    fn circle_from_interval() {
        let b = boundary(1);
        let d1 = simplex(1);
        let pt = point();
        let to_pt = SsetMap { images: vec![pt.id_nf(0); 2] };
        let inc = boundary_inclusion(1);
        let c = Colimit::new(&[&b, &d1, &pt], &[(0, 1, &inc), (0, 2, &to_pt)]).unwrap();
        assert_eq!(c.sset.nd_counts(), vec![1, 1]);
        c.sset.validate().unwrap();
    }

    #[test]
    fn wedge_of_intervals() {
        let pt = point();
        let d1 = simplex(1);
        let (two, off) = Sset::coproduct(&[&d1, &d1]);
        let a = SsetMap { images: vec![vertex_map(&d1, 1).images[0].clone()] };
        let mut b = vertex_map(&d1, 0);
        b.images[0].gen += off[1];
        let mut a2 = a.clone();
        a2.images[0].gen += off[0];
        let c = Colimit::new(&[&pt, &two], &[(0, 1, &a2), (0, 1, &b)]).unwrap();
        assert_eq!(c.sset.nd_counts(), vec![3, 2]);
    }
}
