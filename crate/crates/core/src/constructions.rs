//! Standard finite simplicial objects: simplices, boundaries, horns, spines,
//! nerves of finite posets, and external products.

use crate::delta::DeltaMap;
use crate::error::{arg, Result};
use crate::map::SsetMap;
use crate::sset::{build_keyed, GenId, Generator, Keyed, NormalForm, Sset};
use std::collections::HashMap;

/// Face `r` of a vertex subset given as a bit mask: drop its `r`-th element.
fn drop_nth(mask: u64, r: usize) -> u64 {
    let mut seen = 0;
    for b in 0..64 {
        if mask >> b & 1 == 1 {
            if seen == r {
                return mask & !(1 << b);
            }
            seen += 1;
        }
    }
    unreachable!("face index out of range")
}

/// Subcomplex of `Δ[m]` spanned by the given vertex subsets (closed under faces).
fn simplex_subcomplex(m: usize, keep: impl Fn(u64) -> bool) -> Keyed<u64, 1> {
    let entries: Vec<(u64, [usize; 1])> = (1u64..1 << (m + 1))
        .filter(|&s| keep(s))
        .map(|s| (s, [s.count_ones() as usize - 1]))
        .collect();
    build_keyed(entries, |&s, _, r| {
        let f = drop_nth(s, r);
        ([DeltaMap::identity(f.count_ones() as usize - 1)], f)
    })
    .expect("subcomplex of a simplex is closed under faces")
}

/// `Δ[m]`, generators keyed by vertex bit masks.
pub fn simplex_keyed(m: usize) -> Keyed<u64, 1> {
    simplex_subcomplex(m, |_| true)
}

pub fn simplex(m: usize) -> Sset<1> {
    let k = simplex_keyed(m);
    let labels = k.keys.iter().map(|&s| Some(mask_label(s))).collect();
    k.sset.with_labels(labels)
}

pub fn point() -> Sset<1> {
    simplex(0)
}

fn mask_label(s: u64) -> String {
    (0..64).filter(|b| s >> b & 1 == 1).map(|b| b.to_string()).collect::<Vec<_>>().join("")
}

/// The simplex of `Δ[m]` given by a monotone map `[n] -> [m]`.
pub fn simplex_nf(k: &Keyed<u64, 1>, f: &DeltaMap) -> NormalForm<1> {
    let (e, mono) = f.epi_mono();
    NormalForm { degen: [e], gen: k.id(&mono.image_mask()) }
}

pub fn boundary(m: usize) -> Sset<1> {
    let full = (1u64 << (m + 1)) - 1;
    let k = simplex_subcomplex(m, |s| s != full);
    let labels = k.keys.iter().map(|&s| Some(mask_label(s))).collect();
    k.sset.with_labels(labels)
}

/// The inclusion `∂Δ[m] ↪ Δ[m]`.
pub fn boundary_inclusion(m: usize) -> SsetMap<1> {
    let full = (1u64 << (m + 1)) - 1;
    let b = simplex_subcomplex(m, |s| s != full);
    let d = simplex_keyed(m);
    SsetMap { images: b.keys.iter().map(|s| NormalForm::id_of(d.id(s), s.count_ones() as usize - 1)).collect() }
}

/// The horn `Λ^t[k]`: all faces except the top one and the one opposite `t`.
pub fn horn(k: usize, t: usize) -> Result<Sset<1>> {
    if k < 1 || t > k {
        return arg(format!("horn ({k},{t}) requires k >= 1 and 0 <= t <= k"));
    }
    let full = (1u64 << (k + 1)) - 1;
    let opposite = full & !(1 << t);
    let kk = simplex_subcomplex(k, |s| s != full && s != opposite);
    let labels = kk.keys.iter().map(|&s| Some(mask_label(s))).collect();
    Ok(kk.sset.with_labels(labels))
}

/// The spine `Sp[m]`: vertices and the edges `{i, i+1}`.
pub fn spine(m: usize) -> Sset<1> {
    let k = simplex_subcomplex(m, |s| s.count_ones() == 1 || (s.count_ones() == 2 && s & (s >> 1) != 0));
    let labels = k.keys.iter().map(|&s| Some(mask_label(s))).collect();
    k.sset.with_labels(labels)
}

/// The inclusion of a subcomplex of `Δ[m]` given by its key list.
pub fn subcomplex_inclusion(m: usize, sub_keys: &[u64]) -> SsetMap<1> {
    let d = simplex_keyed(m);
    SsetMap { images: sub_keys.iter().map(|s| NormalForm::id_of(d.id(s), s.count_ones() as usize - 1)).collect() }
}

pub fn spine_inclusion(m: usize) -> SsetMap<1> {
    let k = simplex_subcomplex(m, |s| s.count_ones() == 1 || (s.count_ones() == 2 && s & (s >> 1) != 0));
    subcomplex_inclusion(m, &k.keys)
}

/// The map `Δ[n] -> Δ[m]` induced by a monotone map.
pub fn simplex_map(f: &DeltaMap) -> SsetMap<1> {
    let src = simplex_keyed(f.src());
    let tgt = simplex_keyed(f.tgt());
    SsetMap {
        images: src
            .keys
            .iter()
            .map(|&s| {
                let inc = DeltaMap::from_mask(f.src(), s);
                simplex_nf(&tgt, &f.compose(&inc))
            })
            .collect(),
    }
}

/// The vertex `v` of `X`, as a map from the point.
pub fn vertex_map(x: &Sset<1>, v: GenId) -> SsetMap<1> {
    assert_eq!(x.dim(v), [0]);
    SsetMap { images: vec![x.id_nf(v)] }
}

/// The unique map to the point.
pub fn to_point(x: &Sset<1>) -> SsetMap<1> {
    SsetMap { images: (0..x.num_gens()).map(|g| NormalForm { degen: [DeltaMap::terminal(x.dim(g)[0])], gen: 0 }).collect() }
}

/// One vertex with one non-degenerate loop.
pub fn circle() -> Sset<1> {
    use crate::sset::Generator;
    let v = NormalForm::id_of(0, 0);
    Sset::new(
        vec![Generator { dim: [0], faces: [vec![]] }, Generator { dim: [1], faces: [vec![v.clone(), v]] }],
        vec![Some("v".into()), Some("loop".into())],
    )
    .unwrap()
}

/// Nerve of a finite poset given by its order relation on `0..n`; generators are
/// strictly increasing chains.
pub fn poset_nerve(n: usize, leq: impl Fn(usize, usize) -> bool) -> Keyed<Vec<usize>, 1> {
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().unwrap();
        for y in 0..n {
            if y != last && leq(last, y) {
                let mut d = c.clone();
                d.push(y);
                stack.push(d);
            }
        }
        chains.push(c);
    }
    let entries = chains.into_iter().map(|c| {
        let d = c.len() - 1;
        (c, [d])
    });
    build_keyed(entries.collect(), |c, _, r| {
        let mut f = c.clone();
        f.remove(r);
        ([DeltaMap::identity(f.len() - 1)], f)
    })
    .expect("chains are closed under faces")
}

/// Embeds a simplicial set as a bisimplicial set constant in the other direction.
pub fn embed(x: &Sset<1>, dir: usize) -> Sset<2> {
    use crate::sset::Generator;
    let gens = x
        .generators()
        .iter()
        .map(|g| {
            let d = g.dim[0];
            let mut dim = [0, 0];
            dim[dir] = d;
            let faces_dir: Vec<NormalForm<2>> = g.faces[0]
                .iter()
                .map(|f| {
                    let mut degen = [DeltaMap::identity(0), DeltaMap::identity(0)];
                    degen[dir] = f.degen[0].clone();
                    NormalForm { degen, gen: f.gen }
                })
                .collect();
            let mut faces: [Vec<NormalForm<2>>; 2] = [Vec::new(), Vec::new()];
            faces[dir] = faces_dir;
            Generator { dim, faces }
        })
        .collect();
    Sset::from_parts(gens, x.labels().to_vec())
}

pub fn embed_map(f: &SsetMap<1>, dir: usize) -> SsetMap<2> {
    SsetMap {
        images: f
            .images
            .iter()
            .map(|s| {
                let mut degen = [DeltaMap::identity(0), DeltaMap::identity(0)];
                degen[dir] = s.degen[0].clone();
                NormalForm { degen, gen: s.gen }
            })
            .collect(),
    }
}

/// `X ⊠ Y`: horizontal `X`, vertical `Y`; generators keyed by pairs.
pub fn external_product(x: &Sset<1>, y: &Sset<1>) -> Keyed<(GenId, GenId), 2> {
    let mut entries = Vec::new();
    for a in 0..x.num_gens() {
        for b in 0..y.num_gens() {
            entries.push(((a, b), [x.dim(a)[0], y.dim(b)[0]]));
        }
    }
    let mut k = build_keyed(entries, |&(a, b), dir, r| {
        if dir == 0 {
            let f = &x.generator(a).faces[0][r];
            ([f.degen[0].clone(), DeltaMap::identity(y.dim(b)[0])], (f.gen, b))
        } else {
            let f = &y.generator(b).faces[0][r];
            ([DeltaMap::identity(x.dim(a)[0]), f.degen[0].clone()], (a, f.gen))
        }
    })
    .expect("external product is closed under faces");
    let labels = k
        .keys
        .iter()
        .map(|&(a, b)| match (x.label(a), y.label(b)) {
            (Some(p), Some(q)) => Some(format!("{p}|{q}")),
            _ => None,
        })
        .collect();
    k.sset = k.sset.with_labels(labels);
    k
}

/// `f ⊠ g`.
pub fn external_product_map(
    src: &Keyed<(GenId, GenId), 2>,
    tgt: &Keyed<(GenId, GenId), 2>,
    f: &SsetMap<1>,
    g: &SsetMap<1>,
) -> SsetMap<2> {
    SsetMap {
        images: src
            .keys
            .iter()
            .map(|&(a, b)| {
                let fa = &f.images[a];
                let gb = &g.images[b];
                NormalForm { degen: [fa.degen[0].clone(), gb.degen[0].clone()], gen: tgt.id(&(fa.gen, gb.gen)) }
            })
            .collect(),
    }
}

/// The representable `F[m,k] = Δ[m] ⊠ Δ[k]`; generators keyed by pairs of vertex masks.
pub struct Representable {
    pub m: usize,
    pub k: usize,
    pub keyed: Keyed<(GenId, GenId), 2>,
    h: Keyed<u64, 1>,
    v: Keyed<u64, 1>,
}

impl Representable {
    pub fn new(m: usize, k: usize) -> Self {
        let h = simplex_keyed(m);
        let v = simplex_keyed(k);
        let keyed = external_product(&simplex(m), &simplex(k));
        Representable { m, k, keyed, h, v }
    }

    pub fn sset(&self) -> &Sset<2> {
        &self.keyed.sset
    }

    /// The pair of injections describing a generator.
    pub fn monos(&self, g: GenId) -> (DeltaMap, DeltaMap) {
        let (a, b) = self.keyed.keys[g];
        (DeltaMap::from_mask(self.m, self.h.keys[a]), DeltaMap::from_mask(self.k, self.v.keys[b]))
    }

    /// The simplex of the representable given by a pair of monotone maps.
    pub fn simplex_of(&self, h: &DeltaMap, v: &DeltaMap) -> NormalForm<2> {
        let a = simplex_nf(&self.h, h);
        let b = simplex_nf(&self.v, v);
        NormalForm { degen: [a.degen[0].clone(), b.degen[0].clone()], gen: self.keyed.id(&(a.gen, b.gen)) }
    }

    pub fn top(&self) -> NormalForm<2> {
        self.simplex_of(&DeltaMap::identity(self.m), &DeltaMap::identity(self.k))
    }

    /// The map classifying the simplex `s` of `w`.
    pub fn yoneda(&self, w: &Sset<2>, s: &NormalForm<2>) -> SsetMap<2> {
        assert_eq!(s.dim(), [self.m, self.k]);
        SsetMap {
            images: (0..self.keyed.sset.num_gens())
                .map(|g| {
                    let (a, b) = self.monos(g);
                    w.act(s, &[a, b])
                })
                .collect(),
        }
    }

    /// The map `F[m',k'] -> F[m,k]` induced by a pair of monotone maps.
    pub fn map_from(&self, src: &Representable, h: &DeltaMap, v: &DeltaMap) -> SsetMap<2> {
        let top = self.simplex_of(h, v);
        src.yoneda(self.sset(), &top)
    }
}

/// The connected components of `x` as sub-simplicial sets, with their inclusions.
pub fn component_parts(x: &Sset<1>) -> Vec<(Sset<1>, SsetMap<1>)> {
    let (n, comp_of_vertex) = x.components();
    let comp = |g: GenId| comp_of_vertex[&x.vertex(&x.id_nf(g), 0)];
    (0..n)
        .map(|c| {
            let gens: Vec<GenId> = (0..x.num_gens()).filter(|&g| comp(g) == c).collect();
            let new_id: HashMap<GenId, GenId> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
            let parts = gens
                .iter()
                .map(|&g| Generator {
                    dim: x.dim(g),
                    faces: [x.generator(g).faces[0]
                        .iter()
                        .map(|f| NormalForm { degen: f.degen.clone(), gen: new_id[&f.gen] })
                        .collect()],
                })
                .collect();
            let labels = gens.iter().map(|&g| x.label(g).map(str::to_string)).collect();
            let sub = Sset::from_parts(parts, labels);
            let inc = SsetMap { images: gens.iter().map(|&g| x.id_nf(g)).collect() };
            (sub, inc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimit::Colimit;

    #[test]
    fn spine_counts() {
        assert_eq!(spine(3).nd_counts(), vec![4, 3]);
    }

    #[test]
    fn horn_counts() {
        assert_eq!(horn(2, 1).unwrap().nd_counts(), vec![3, 2]);
        assert!(horn(0, 0).is_err());
    }

    #[test]
    fn boundary_as_coequalizer_matches_direct() {
        for m in 1..=4usize {
            // faces Δ[m-1] indexed by s, glued along Δ[m-2] for s < t
            let dm1 = simplex(m - 1);
            let faces: Vec<&Sset<1>> = (0..=m).map(|_| &dm1).collect();
            let (left, loff) = Sset::coproduct(&faces);
            let mut objects: Vec<Sset<1>> = vec![left];
            let mut arrows_owned = Vec::new();
            if m >= 2 {
                let dm2 = simplex(m - 2);
                let pairs: Vec<(usize, usize)> = (0..=m).flat_map(|s| (s + 1..=m).map(move |t| (s, t))).collect();
                let parts: Vec<&Sset<1>> = pairs.iter().map(|_| &dm2).collect();
                let (right, _) = Sset::coproduct(&parts);
                let mut f1 = Vec::new();
                let mut f2 = Vec::new();
                for &(s, t) in &pairs {
                    // the (m-2)-face {s,t} missing sits in face s as coface t-1, in face t as coface s
                    let a = simplex_map(&DeltaMap::coface(m - 1, t - 1));
                    let b = simplex_map(&DeltaMap::coface(m - 1, s));
                    for g in 0..dm2.num_gens() {
                        let mut x = a.images[g].clone();
                        x.gen += loff[s];
                        f1.push(x);
                        let mut y = b.images[g].clone();
                        y.gen += loff[t];
                        f2.push(y);
                    }
                }
                objects.push(right);
                arrows_owned.push((1, 0, SsetMap { images: f1 }));
                arrows_owned.push((1, 0, SsetMap { images: f2 }));
            }
            let refs: Vec<&Sset<1>> = objects.iter().collect();
            let arrows: Vec<(usize, usize, &SsetMap<1>)> = arrows_owned.iter().map(|(a, b, f)| (*a, *b, f)).collect();
            let c = Colimit::new(&refs, &arrows).unwrap();
            let direct = boundary(m);
            assert!(crate::iso::find_iso(&c.sset, &direct).is_some(), "m = {m}");
        }
    }

    #[test]
    fn representable_faces() {
        let r = Representable::new(2, 1);
        r.sset().validate().unwrap();
        assert_eq!(r.sset().num_gens(), 7 * 3);
    }
}
