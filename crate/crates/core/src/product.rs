//! Finite products. A non-degenerate simplex of `X_1 × … × X_p` is a tuple of
//! simplices whose degeneracies are jointly injective in every direction.

use crate::delta::DeltaMap;
use crate::error::Result;
use crate::map::SsetMap;
use crate::sset::{build_keyed, for_each_tuple, GenId, NormalForm, Sset};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct Product<const D: usize> {
    pub sset: Sset<D>,
    pub keys: Vec<Vec<NormalForm<D>>>,
    ids: HashMap<Vec<NormalForm<D>>, GenId>,
    pub projections: Vec<SsetMap<D>>,
}

/// Splits a tuple of equal-dimensional simplices into a common degeneracy and a
/// jointly non-degenerate tuple.
pub fn normalize_tuple<const D: usize>(parts: &[NormalForm<D>]) -> ([DeltaMap; D], Vec<NormalForm<D>>) {
    let n = parts[0].dim();
    let mut rho: [DeltaMap; D] = std::array::from_fn(|j| DeltaMap::identity(n[j]));
    let mut new_degen: Vec<[DeltaMap; D]> = parts.iter().map(|p| p.degen.clone()).collect();
    for j in 0..D {
        // positions i where every part repeats
        let mut img = Vec::with_capacity(n[j] + 1);
        let mut v = 0usize;
        img.push(0);
        for i in 0..n[j] {
            let all_repeat = parts.iter().all(|p| p.degen[j].at(i) == p.degen[j].at(i + 1));
            if !all_repeat {
                v += 1;
            }
            img.push(v);
        }
        if v == n[j] {
            continue;
        }
        let r = DeltaMap::new(v, &img);
        for (k, p) in parts.iter().enumerate() {
            let mut reduced = vec![0usize; v + 1];
            for i in 0..=n[j] {
                reduced[img[i]] = p.degen[j].at(i);
            }
            new_degen[k][j] = DeltaMap::new(p.degen[j].tgt(), &reduced);
        }
        rho[j] = r;
    }
    let key = parts
        .iter()
        .zip(new_degen)
        .map(|(p, d)| NormalForm { degen: d, gen: p.gen })
        .collect();
    (rho, key)
}

/// All tuples of surjections `[n] -> [d_i]` that are jointly injective, for every `n`.
pub(crate) fn joint_paths(dims: &[usize]) -> Vec<Vec<DeltaMap>> {
    let mut out = Vec::new();
    let mut path: Vec<Vec<usize>> = vec![vec![0; dims.len()]];
    fn rec(dims: &[usize], path: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<DeltaMap>>) {
        let cur = path.last().unwrap().clone();
        if cur.iter().zip(dims).all(|(c, d)| c == d) {
            let maps = (0..dims.len())
                .map(|k| DeltaMap::new(dims[k], &path.iter().map(|v| v[k]).collect::<Vec<_>>()))
                .collect();
            out.push(maps);
            return;
        }
        let free: Vec<usize> = (0..dims.len()).filter(|&k| cur[k] < dims[k]).collect();
        for mask in 1u32..1 << free.len() {
            let mut next = cur.clone();
            for (b, &k) in free.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    next[k] += 1;
                }
            }
            path.push(next);
            rec(dims, path, out);
            path.pop();
        }
    }
    rec(dims, &mut path, &mut out);
    out
}

impl<const D: usize> Product<D> {
    pub fn new(factors: &[&Sset<D>]) -> Result<Self> {
        assert!(!factors.is_empty(), "empty product; use the terminal object");
        let mut entries = Vec::new();
        let gen_lists: Vec<Vec<GenId>> = factors.iter().map(|f| (0..f.num_gens()).collect()).collect();
        for_each_tuple(&gen_lists, &mut |gs: &[GenId]| {
            let per_dir: Vec<Vec<Vec<DeltaMap>>> = (0..D)
                .map(|j| {
                    let dims: Vec<usize> = gs.iter().zip(factors).map(|(&g, f)| f.dim(g)[j]).collect();
                    joint_paths(&dims)
                })
                .collect();
            for_each_tuple(&per_dir, &mut |choice: &[Vec<DeltaMap>]| {
                let key: Vec<NormalForm<D>> = gs
                    .iter()
                    .enumerate()
                    .map(|(k, &g)| NormalForm { degen: std::array::from_fn(|j| choice[j][k].clone()), gen: g })
                    .collect();
                let dim = key[0].dim();
                entries.push((key, dim));
            });
        });
        let keyed = build_keyed(entries, |key: &Vec<NormalForm<D>>, j, r| {
            let faces: Vec<NormalForm<D>> =
                key.iter().zip(factors).map(|(p, f)| f.face(p, j, r)).collect();
            normalize_tuple(&faces)
        })?;
        let projections = (0..factors.len())
            .map(|k| SsetMap { images: keyed.keys.iter().map(|key| key[k].clone()).collect() })
            .collect();
        Ok(Product { sset: keyed.sset, keys: keyed.keys, ids: keyed.ids, projections })
    }

    /// The simplex of the product with the given components.
    pub fn tuple(&self, parts: &[NormalForm<D>]) -> NormalForm<D> {
        let (rho, key) = normalize_tuple(parts);
        NormalForm { degen: rho, gen: self.ids[&key] }
    }

    /// Components of a simplex of the product.
    pub fn components(&self, s: &NormalForm<D>) -> Vec<NormalForm<D>> {
        self.keys[s.gen].iter().map(|p| p.degenerate_by(&s.degen)).collect()
    }

    /// The map `Z -> ∏ X_i` with the given components.
    pub fn pairing(&self, maps: &[&SsetMap<D>], src: &Sset<D>) -> SsetMap<D> {
        SsetMap {
            images: (0..src.num_gens())
                .map(|g| {
                    let parts: Vec<NormalForm<D>> = maps.iter().map(|m| m.images[g].clone()).collect();
                    self.tuple(&parts)
                })
                .collect(),
        }
    }

    /// `∏ f_i : ∏ X_i -> ∏ Y_i`.
    pub fn map_to(&self, target: &Product<D>, maps: &[&SsetMap<D>]) -> SsetMap<D> {
        SsetMap {
            images: self
                .keys
                .iter()
                .map(|key| {
                    let parts: Vec<NormalForm<D>> = key.iter().zip(maps).map(|(p, m)| m.apply(p)).collect();
                    target.tuple(&parts)
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{point, simplex};

    #[test]
    fn interval_squared_counts() {
        let d1 = simplex(1);
        let p = Product::new(&[&d1, &d1]).unwrap();
        assert_eq!(p.sset.nd_counts(), vec![4, 5, 2]);
        p.sset.validate().unwrap();
        for pr in &p.projections {
            pr.validate(&p.sset, &d1).unwrap();
        }
    }

    #[test]
    fn prism_has_three_top_cells() {
        let p = Product::new(&[&simplex(2), &simplex(1)]).unwrap();
        assert_eq!(p.sset.nd_counts()[3], 3);
    }

    #[test]
    fn unit_law() {
        let d2 = simplex(2);
        let p = Product::new(&[&d2, &point()]).unwrap();
        assert_eq!(p.sset.nd_counts(), d2.nd_counts());
    }
}
