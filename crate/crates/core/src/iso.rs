//! Isomorphism search between finite simplicial objects: colour refinement on
//! generators, then backtracking from the top dimension down, propagating every
//! choice to the faces.

use crate::map::SsetMap;
use crate::sset::{GenId, NormalForm, Sset};
use std::collections::{BTreeMap, HashMap};

type Signature = (u64, Vec<(usize, usize, u64, u64)>, Vec<(usize, usize, u64, u64)>);

fn refine<const D: usize>(a: &Sset<D>, b: &Sset<D>, marks: Option<(&[bool], &[bool])>) -> (Vec<u64>, Vec<u64>) {
    let init = |s: &Sset<D>, mark: Option<&[bool]>| -> Vec<u64> {
        (0..s.num_gens())
            .map(|g| {
                let d = s.dim(g);
                let h = d.iter().fold(0u64, |h, &x| h * 31 + x as u64 + 1);
                2 * h + mark.map_or(0, |m| m[g] as u64)
            })
            .collect()
    };
    let mut ca = init(a, marks.map(|m| m.0));
    let mut cb = init(b, marks.map(|m| m.1));
    let mut classes = count_classes(&ca, &cb);
    loop {
        let mut table: BTreeMap<Signature, u64> = BTreeMap::new();
        let sig = |s: &Sset<D>, c: &[u64], cofaces: &[Vec<(usize, usize, GenId, u64)>], g: GenId| -> Signature {
            let mut down = Vec::new();
            for j in 0..D {
                for (r, f) in s.generator(g).faces[j].iter().enumerate() {
                    down.push((j, r, c[f.gen], degen_hash(f)));
                }
            }
            let mut up: Vec<(usize, usize, u64, u64)> =
                cofaces[g].iter().map(|&(j, r, h, dh)| (j, r, c[h], dh)).collect();
            up.sort();
            (c[g], down, up)
        };
        let cofa = cofaces(a);
        let cofb = cofaces(b);
        let sa: Vec<Signature> = (0..a.num_gens()).map(|g| sig(a, &ca, &cofa, g)).collect();
        let sb: Vec<Signature> = (0..b.num_gens()).map(|g| sig(b, &cb, &cofb, g)).collect();
        for s in sa.iter().chain(sb.iter()) {
            let n = table.len() as u64;
            table.entry(s.clone()).or_insert(n);
        }
        let na: Vec<u64> = sa.iter().map(|s| table[s]).collect();
        let nb: Vec<u64> = sb.iter().map(|s| table[s]).collect();
        let c = count_classes(&na, &nb);
        ca = na;
        cb = nb;
        if c == classes {
            return (ca, cb);
        }
        classes = c;
    }
}

fn count_classes(a: &[u64], b: &[u64]) -> usize {
    let mut v: Vec<u64> = a.iter().chain(b.iter()).copied().collect();
    v.sort();
    v.dedup();
    v.len()
}

fn degen_hash<const D: usize>(f: &NormalForm<D>) -> u64 {
    f.degen.iter().flat_map(|d| d.image()).fold(7u64, |h, x| h.wrapping_mul(131).wrapping_add(x as u64 + 1))
}

fn cofaces<const D: usize>(s: &Sset<D>) -> Vec<Vec<(usize, usize, GenId, u64)>> {
    let mut out = vec![Vec::new(); s.num_gens()];
    for g in 0..s.num_gens() {
        for j in 0..D {
            for (r, f) in s.generator(g).faces[j].iter().enumerate() {
                out[f.gen].push((j, r, g, degen_hash(f)));
            }
        }
    }
    out
}

struct Search<'a, const D: usize> {
    a: &'a Sset<D>,
    b: &'a Sset<D>,
    ca: Vec<u64>,
    cb: Vec<u64>,
    fwd: Vec<Option<GenId>>,
    bwd: Vec<Option<GenId>>,
    trail: Vec<GenId>,
    steps: u64,
    limit: u64,
    /// When set, every isomorphism is recorded and the search continues.
    found: Option<Vec<SsetMap<D>>>,
}

impl<const D: usize> Search<'_, D> {
    fn assign(&mut self, x: GenId, y: GenId) -> bool {
        if let Some(z) = self.fwd[x] {
            return z == y;
        }
        if self.bwd[y].is_some() || self.ca[x] != self.cb[y] {
            return false;
        }
        self.fwd[x] = Some(y);
        self.bwd[y] = Some(x);
        self.trail.push(x);
        for j in 0..D {
            let fa = &self.a.generator(x).faces[j];
            let fb = &self.b.generator(y).faces[j];
            for r in 0..fa.len() {
                if fa[r].degen != fb[r].degen || !self.assign(fa[r].gen, fb[r].gen) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let x = self.trail.pop().unwrap();
            let y = self.fwd[x].take().unwrap();
            self.bwd[y] = None;
        }
    }

    fn run(&mut self, order: &[GenId], idx: usize) -> bool {
        self.steps += 1;
        if self.steps > self.limit {
            return false;
        }
        let Some(pos) = (idx..order.len()).find(|&i| self.fwd[order[i]].is_none()) else {
            if let Some(found) = self.found.as_mut() {
                found.push(SsetMap { images: self.fwd.iter().map(|y| self.b.id_nf(y.unwrap())).collect() });
                return false;
            }
            return true;
        };
        let x = order[pos];
        for y in 0..self.b.num_gens() {
            if self.bwd[y].is_some() || self.cb[y] != self.ca[x] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.run(order, pos + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// An isomorphism `a -> b` if one exists, as an explicit map.
pub fn find_iso<const D: usize>(a: &Sset<D>, b: &Sset<D>) -> Option<SsetMap<D>> {
    find_iso_bounded(a, b, 5_000_000).ok().flatten()
}

/// As [`find_iso`]; `Err(())` if the search budget ran out.
pub fn find_iso_bounded<const D: usize>(a: &Sset<D>, b: &Sset<D>, limit: u64) -> Result<Option<SsetMap<D>>, ()> {
    find_marked(a, b, None, limit)
}

/// An isomorphism `a -> b` carrying the marked generators of `a` exactly onto
/// the marked generators of `b`; `Err(())` if the search budget ran out.
pub fn find_iso_marked<const D: usize>(
    a: &Sset<D>,
    b: &Sset<D>,
    mark_a: &[bool],
    mark_b: &[bool],
    limit: u64,
) -> Result<Option<SsetMap<D>>, ()> {
    find_marked(a, b, Some((mark_a, mark_b)), limit)
}

fn find_marked<const D: usize>(
    a: &Sset<D>,
    b: &Sset<D>,
    marks: Option<(&[bool], &[bool])>,
    limit: u64,
) -> Result<Option<SsetMap<D>>, ()> {
    let Some(mut s) = setup(a, b, limit, false, marks) else { return Ok(None) };
    let order = top_down(a);
    if s.run(&order, 0) {
        let images = (0..a.num_gens()).map(|x| b.id_nf(s.fwd[x].unwrap())).collect();
        Ok(Some(SsetMap { images }))
    } else if s.steps > limit {
        Err(())
    } else {
        Ok(None)
    }
}

/// Every isomorphism `a -> b`; `Err(())` if the search budget ran out.
pub fn all_isos<const D: usize>(a: &Sset<D>, b: &Sset<D>, limit: u64) -> Result<Vec<SsetMap<D>>, ()> {
    let Some(mut s) = setup(a, b, limit, true, None) else { return Ok(Vec::new()) };
    let order = top_down(a);
    s.run(&order, 0);
    if s.steps > limit {
        return Err(());
    }
    Ok(s.found.unwrap_or_default())
}

fn top_down<const D: usize>(a: &Sset<D>) -> Vec<GenId> {
    let mut order: Vec<GenId> = (0..a.num_gens()).collect();
    order.sort_by_key(|&g| std::cmp::Reverse(a.dim(g).iter().sum::<usize>()));
    order
}

fn setup<'a, const D: usize>(
    a: &'a Sset<D>,
    b: &'a Sset<D>,
    limit: u64,
    collect: bool,
    marks: Option<(&[bool], &[bool])>,
) -> Option<Search<'a, D>> {
    if a.num_gens() != b.num_gens() {
        return None;
    }
    let count = |s: &Sset<D>| {
        let mut m: HashMap<[usize; D], usize> = HashMap::new();
        for g in 0..s.num_gens() {
            *m.entry(s.dim(g)).or_default() += 1;
        }
        m
    };
    if count(a) != count(b) {
        return None;
    }
    let (ca, cb) = refine(a, b, marks);
    let mut ha: Vec<u64> = ca.clone();
    let mut hb: Vec<u64> = cb.clone();
    ha.sort();
    hb.sort();
    if ha != hb {
        return None;
    }
    Some(Search {
        a,
        b,
        ca,
        cb,
        fwd: vec![None; a.num_gens()],
        bwd: vec![None; b.num_gens()],
        trail: Vec::new(),
        steps: 0,
        limit,
        found: collect.then(Vec::new),
    })
}

/// Checks a claimed isomorphism certificate.
pub fn check_iso<const D: usize>(f: &SsetMap<D>, a: &Sset<D>, b: &Sset<D>) -> bool {
    f.validate(a, b).is_ok() && f.is_iso(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary, horn, simplex, spine};
    use crate::product::Product;

    #[test]
    fn finds_nontrivial_iso() {
        let h = horn(2, 1).unwrap();
        let s = spine(2);
        let f = find_iso(&h, &s).unwrap();
        assert!(check_iso(&f, &h, &s));
    }

    #[test]
    fn rejects_non_iso() {
        assert!(find_iso(&horn(2, 0).unwrap(), &boundary(2)).is_none());
        let sq = Product::new(&[&simplex(1), &simplex(1)]).unwrap().sset;
        assert!(find_iso(&sq, &simplex(2)).is_none());
    }

    #[test]
    fn automorphisms_of_small_sets() {
        assert_eq!(all_isos(&boundary(2), &boundary(2), 1_000_000).unwrap().len(), 1);
        let sq = Product::new(&[&simplex(1), &simplex(1)]).unwrap().sset;
        assert_eq!(all_isos(&sq, &sq, 1_000_000).unwrap().len(), 2);
        assert_eq!(all_isos(&spine(3), &spine(3), 1_000_000).unwrap().len(), 1);
    }

    #[test]
    fn product_is_commutative_up_to_iso() {
        let a = Product::new(&[&simplex(2), &simplex(1)]).unwrap().sset;
        let b = Product::new(&[&simplex(1), &simplex(2)]).unwrap().sset;
        let f = find_iso(&a, &b).unwrap();
        assert!(check_iso(&f, &a, &b));
    }
}
