use crate::error::{Error, Result};
use crate::sset::{GenId, NormalForm, Sset};

/// A map of simplicial objects, given by the image of every generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SsetMap<const D: usize> {
    pub images: Vec<NormalForm<D>>,
}

impl<const D: usize> SsetMap<D> {
    /// Builds a map and checks that it commutes with all faces.
    pub fn new(src: &Sset<D>, tgt: &Sset<D>, images: Vec<NormalForm<D>>) -> Result<Self> {
        let f = SsetMap { images };
        f.validate(src, tgt)?;
        Ok(f)
    }

    pub fn identity(src: &Sset<D>) -> Self {
        SsetMap { images: (0..src.num_gens()).map(|g| src.id_nf(g)).collect() }
    }

    pub fn from_empty() -> Self {
        SsetMap { images: Vec::new() }
    }

    pub fn apply(&self, s: &NormalForm<D>) -> NormalForm<D> {
        self.images[s.gen].degenerate_by(&s.degen)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SsetMap<D>) -> SsetMap<D> {
        SsetMap { images: other.images.iter().map(|s| self.apply(s)).collect() }
    }

    pub fn validate(&self, src: &Sset<D>, tgt: &Sset<D>) -> Result<()> {
        if self.images.len() != src.num_gens() {
            return Err(Error::Malformed(format!(
                "map has {} images for {} generators",
                self.images.len(),
                src.num_gens()
            )));
        }
        for g in 0..src.num_gens() {
            let im = &self.images[g];
            if im.gen >= tgt.num_gens() || im.dim() != src.dim(g) || im.gen_dim() != tgt.dim(im.gen) {
                return Err(Error::Malformed(format!("image of generator {g} has the wrong dimension")));
            }
            for j in 0..D {
                for (r, f) in src.generator(g).faces[j].iter().enumerate() {
                    if self.apply(f) != tgt.face(im, j, r) {
                        return Err(Error::Malformed(format!("map does not commute with face ({j},{r}) of generator {g}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Injective on all simplices.
    pub fn is_mono(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().all(|im| im.is_nondegenerate() && seen.insert(im.gen))
    }

    pub fn is_iso(&self, tgt: &Sset<D>) -> bool {
        self.is_mono() && self.images.len() == tgt.num_gens()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self, tgt: &Sset<D>) -> Option<SsetMap<D>> {
        if !self.is_iso(tgt) {
            return None;
        }
        let mut inv: Vec<Option<NormalForm<D>>> = vec![None; tgt.num_gens()];
        for (g, im) in self.images.iter().enumerate() {
            inv[im.gen] = Some(NormalForm { degen: im.degen.clone(), gen: g });
        }
        Some(SsetMap { images: inv.into_iter().map(Option::unwrap).collect() })
    }

    /// Generators of the target not hit by any generator image.
    pub fn missed(&self, tgt: &Sset<D>) -> Vec<GenId> {
        let mut hit = vec![false; tgt.num_gens()];
        for im in &self.images {
            if im.is_nondegenerate() {
                hit[im.gen] = true;
            }
        }
        (0..tgt.num_gens()).filter(|&g| !hit[g]).collect()
    }
}

/// All maps `src -> tgt` whose generator images satisfy `allowed`, found by
/// backtracking over generators in order of total dimension. With `injective`
/// only monomorphisms are returned. Fails once more than `limit` maps are found.
pub fn enumerate_maps<const D: usize>(
    src: &Sset<D>,
    tgt: &Sset<D>,
    allowed: &dyn Fn(GenId, &NormalForm<D>) -> bool,
    injective: bool,
    limit: usize,
) -> Result<Vec<SsetMap<D>>> {
    let mut order: Vec<GenId> = (0..src.num_gens()).collect();
    order.sort_by_key(|&g| (src.dim(g).iter().sum::<usize>(), g));
    let mut cands: Vec<Vec<NormalForm<D>>> = Vec::with_capacity(order.len());
    for &g in &order {
        let all = if injective {
            tgt.gens_of_dim(src.dim(g)).map(|h| tgt.id_nf(h)).collect()
        } else {
            tgt.simplices(src.dim(g))
        };
        cands.push(all.into_iter().filter(|c| allowed(g, c)).collect());
    }
    let mut images: Vec<Option<NormalForm<D>>> = vec![None; src.num_gens()];
    let mut used = vec![false; tgt.num_gens()];
    let mut out = Vec::new();
    fn rec<const D: usize>(
        pos: usize,
        st: &mut (Vec<Option<NormalForm<D>>>, Vec<bool>, Vec<SsetMap<D>>),
        ctx: (&Sset<D>, &Sset<D>, &[GenId], &[Vec<NormalForm<D>>], bool, usize),
    ) -> Result<()> {
        let (src, tgt, order, cands, injective, limit) = ctx;
        if pos == order.len() {
            if st.2.len() >= limit {
                return Err(Error::Resource(format!("more than {limit} maps")));
            }
            st.2.push(SsetMap { images: st.0.iter().map(|x| x.clone().unwrap()).collect() });
            return Ok(());
        }
        let g = order[pos];
        'cand: for c in &cands[pos] {
            if injective && st.1[c.gen] {
                continue;
            }
            for j in 0..D {
                for (r, f) in src.generator(g).faces[j].iter().enumerate() {
                    let im = st.0[f.gen].as_ref().unwrap().degenerate_by(&f.degen);
                    if im != tgt.face(c, j, r) {
                        continue 'cand;
                    }
                }
            }
            st.0[g] = Some(c.clone());
            if injective {
                st.1[c.gen] = true;
            }
            rec(pos + 1, st, ctx)?;
            if injective {
                st.1[c.gen] = false;
            }
        }
        st.0[g] = None;
        Ok(())
    }
    let mut st = (std::mem::take(&mut images), std::mem::take(&mut used), std::mem::take(&mut out));
    rec(0, &mut st, (src, tgt, &order, &cands, injective, limit))?;
    Ok(st.2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary, simplex};

    #[test]
    fn map_counts() {
        let all = |a: &Sset<1>, b: &Sset<1>| enumerate_maps(a, b, &|_, _| true, false, 1000).unwrap().len();
        // maps Δ[m] -> Δ[n] are monotone maps [m] -> [n]
        assert_eq!(all(&simplex(1), &simplex(2)), 6);
        assert_eq!(all(&simplex(2), &simplex(1)), 4);
        // maps ∂Δ[2] -> Δ[1]: all vertex assignments
        assert_eq!(all(&boundary(2), &simplex(1)), 4);
        let isos = enumerate_maps(&boundary(2), &boundary(2), &|_, _| true, true, 1000).unwrap();
        assert_eq!(isos.len(), 1);
    }
}
