//! Simplicially enriched categories with finitely many objects, and enriched functors.
//!
//! Composition takes `(g, f)` with `g ∈ hom(b,c)` and `f ∈ hom(a,b)` to `g∘f ∈ hom(a,c)`.

use crate::constructions::point;
use crate::dshom::CubeHom;
use crate::error::{arg, Error, Result};
use crate::map::SsetMap;
use crate::product::Product;
use crate::sset::{GenId, NormalForm, Sset};
use crate::delta::DeltaMap;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct Composition {
    /// `hom(b,c) × hom(a,b)`.
    pub product: Product<1>,
    pub map: SsetMap<1>,
}

#[derive(Clone, Debug)]
pub struct SimplicialCategory {
    pub labels: Vec<String>,
    homs: Vec<Vec<Sset<1>>>,
    ids: Vec<GenId>,
    comps: BTreeMap<(usize, usize, usize), Composition>,
}

impl SimplicialCategory {
    /// Builds a category from its homs, identity vertices and a composition rule
    /// on simplices of equal dimension. The rule is only evaluated on generators
    /// of the products `hom(b,c) × hom(a,b)`.
    pub fn build(
        labels: Vec<String>,
        homs: Vec<Vec<Sset<1>>>,
        ids: Vec<GenId>,
        mut comp: impl FnMut(usize, usize, usize, &NormalForm<1>, &NormalForm<1>) -> Result<NormalForm<1>>,
    ) -> Result<Self> {
        let n = labels.len();
        if homs.len() != n || homs.iter().any(|r| r.len() != n) || ids.len() != n {
            return arg("hom table does not match the object list");
        }
        let mut comps = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if homs[a][b].is_empty() || homs[b][c].is_empty() {
                        continue;
                    }
                    let product = Product::new(&[&homs[b][c], &homs[a][b]])?;
                    let images = product
                        .keys
                        .iter()
                        .map(|k| comp(a, b, c, &k[0], &k[1]))
                        .collect::<Result<Vec<_>>>()?;
                    comps.insert((a, b, c), Composition { product, map: SsetMap { images } });
                }
            }
        }
        let cat = SimplicialCategory { labels, homs, ids, comps };
        for ((a, _, c), comp) in &cat.comps {
            comp.map.validate(&comp.product.sset, &cat.homs[*a][*c])?;
        }
        Ok(cat)
    }

    pub fn num_objects(&self) -> usize {
        self.labels.len()
    }

    pub fn hom(&self, a: usize, b: usize) -> &Sset<1> {
        &self.homs[a][b]
    }

    pub fn id_gen(&self, a: usize) -> GenId {
        self.ids[a]
    }

    /// The identity of `a` as an `n`-simplex.
    pub fn id(&self, a: usize, n: usize) -> NormalForm<1> {
        NormalForm { degen: [DeltaMap::terminal(n)], gen: self.ids[a] }
    }

    pub fn composition(&self, a: usize, b: usize, c: usize) -> Option<&Composition> {
        self.comps.get(&(a, b, c))
    }

    /// `g ∘ f` for simplices of equal dimension.
    pub fn compose(&self, a: usize, b: usize, c: usize, g: &NormalForm<1>, f: &NormalForm<1>) -> NormalForm<1> {
        let comp = &self.comps[&(a, b, c)];
        comp.map.apply(&comp.product.tuple(&[g.clone(), f.clone()]))
    }

    /// Unit and associativity laws, checked on generators.
    pub fn check(&self) -> Result<()> {
        let n = self.num_objects();
        for a in 0..n {
            if self.homs[a][a].dim(self.ids[a]) != [0] {
                return Err(Error::Malformed(format!("identity of object {a} is not a vertex")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let h = &self.homs[a][b];
                for g in 0..h.num_gens() {
                    let f = h.id_nf(g);
                    let d = f.d();
                    if self.compose(a, b, b, &self.id(b, d), &f) != f || self.compose(a, a, b, &f, &self.id(a, d)) != f {
                        return Err(Error::Diagram(format!("unit law fails on generator {g} of hom({a},{b})")));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if [(a, b), (b, c), (c, d)].iter().any(|&(x, y)| self.homs[x][y].is_empty()) {
                            continue;
                        }
                        let p = Product::new(&[&self.homs[c][d], &self.homs[b][c], &self.homs[a][b]])?;
                        for k in &p.keys {
                            let l = self.compose(a, c, d, &k[0], &self.compose(a, b, c, &k[1], &k[2]));
                            let r = self.compose(a, b, d, &self.compose(b, c, d, &k[0], &k[1]), &k[2]);
                            if l != r {
                                return Err(Error::Diagram(format!("associativity fails on {a}->{b}->{c}->{d}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Directed: objects in order, no maps backwards, only identities on the diagonal.
    pub fn is_directed(&self) -> bool {
        let n = self.num_objects();
        (0..n).all(|a| self.homs[a][a].num_gens() == 1 && (0..a).all(|b| self.homs[a][b].is_empty()))
    }
}

/// The category with one object and only its identity.
pub fn unit_category() -> SimplicialCategory {
    SimplicialCategory::build(vec!["0".into()], vec![vec![point()]], vec![0], |_, _, _, g, _| Ok(g.clone()))
        .expect("terminal category")
}

/// `ΣX`: objects `0, 1`, `hom(0,1) = X`.
pub fn suspension(x: &Sset<1>) -> SimplicialCategory {
    let homs = vec![vec![point(), x.clone()], vec![Sset::empty(), point()]];
    SimplicialCategory::build(vec!["0".into(), "1".into()], homs, vec![0, 0], |a, b, c, g, f| {
        Ok(if a == b { g.clone() } else if b == c { f.clone() } else { unreachable!("no composable pair") })
    })
    .expect("suspension")
}

/// Where an object of a glued category comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    A(usize),
    B(usize),
    Both(usize, usize),
}

impl Side {
    fn in_a(self) -> Option<usize> {
        match self {
            Side::A(x) | Side::Both(x, _) => Some(x),
            Side::B(_) => None,
        }
    }

    fn in_b(self) -> Option<usize> {
        match self {
            Side::B(y) | Side::Both(_, y) => Some(y),
            Side::A(_) => None,
        }
    }
}

/// The pushout `A ⨿_{[0]} B` identifying a sink `a` of `A` with a source `b` of `B`.
/// Objects of `A` come first, then those of `B` other than `b`. A map from `A` to
/// `B` is a pair `(B-part, A-part)` through the glued object.
pub fn glue(ca: &SimplicialCategory, a: usize, cb: &SimplicialCategory, b: usize) -> Result<SimplicialCategory> {
    let na = ca.num_objects();
    let nb = cb.num_objects();
    if (0..na).any(|x| x != a && !ca.hom(a, x).is_empty()) || ca.hom(a, a).num_gens() != 1 {
        return arg("glued object must be a sink with trivial endomorphisms");
    }
    if (0..nb).any(|y| y != b && !cb.hom(y, b).is_empty()) || cb.hom(b, b).num_gens() != 1 {
        return arg("glued object must be a source with trivial endomorphisms");
    }
    let mut sides: Vec<Side> = (0..na).map(|x| if x == a { Side::Both(a, b) } else { Side::A(x) }).collect();
    sides.extend((0..nb).filter(|&y| y != b).map(Side::B));
    let mut labels: Vec<String> = ca.labels.clone();
    labels.extend((0..nb).filter(|&y| y != b).map(|y| format!("{}'", cb.labels[y])));
    let n = sides.len();
    let mut crosses: BTreeMap<(usize, usize), Product<1>> = BTreeMap::new();
    let mut homs = vec![vec![Sset::empty(); n]; n];
    for x in 0..n {
        for y in 0..n {
            homs[x][y] = match (sides[x], sides[y]) {
                (sx, sy) if sx.in_a().is_some() && sy.in_a().is_some() => ca.hom(sx.in_a().unwrap(), sy.in_a().unwrap()).clone(),
                (sx, sy) if sx.in_b().is_some() && sy.in_b().is_some() => cb.hom(sx.in_b().unwrap(), sy.in_b().unwrap()).clone(),
                (Side::A(p), Side::B(q)) => {
                    let prod = Product::new(&[cb.hom(b, q), ca.hom(p, a)])?;
                    let s = prod.sset.clone();
                    crosses.insert((x, y), prod);
                    s
                }
                _ => Sset::empty(),
            };
        }
    }
    let ids = sides
        .iter()
        .map(|s| match *s {
            Side::A(p) | Side::Both(p, _) => ca.id_gen(p),
            Side::B(q) => cb.id_gen(q),
        })
        .collect();
    // Splits a map x -> y into its B-part (from b) and A-part (to a).
    let split = |x: usize, y: usize, s: &NormalForm<1>| -> (NormalForm<1>, NormalForm<1>) {
        let d = s.d();
        match (sides[x], sides[y]) {
            (Side::A(_), Side::B(_)) => {
                let c = crosses[&(x, y)].components(s);
                (c[0].clone(), c[1].clone())
            }
            (_, Side::Both(..)) => (cb.id(b, d), s.clone()),
            (Side::Both(..), _) => (s.clone(), ca.id(a, d)),
            _ => unreachable!("only maps from A to B split"),
        }
    };
    let sides_c = sides.clone();
    SimplicialCategory::build(labels, homs, ids, |x, y, z, g, f| {
        let (sx, sy, sz) = (sides_c[x], sides_c[y], sides_c[z]);
        if let (Some(p), Some(q), Some(r)) = (sx.in_a(), sy.in_a(), sz.in_a()) {
            return Ok(ca.compose(p, q, r, g, f));
        }
        if let (Some(p), Some(q), Some(r)) = (sx.in_b(), sy.in_b(), sz.in_b()) {
            return Ok(cb.compose(p, q, r, g, f));
        }
        // the composite goes from A to B
        let (fb, fa) = if sy.in_b().is_some() { split(x, y, f) } else { (cb.id(b, f.d()), f.clone()) };
        let (gb, ga) = if sy.in_a().is_some() { split(y, z, g) } else { (g.clone(), ca.id(a, g.d())) };
        let q = sy;
        let part_a = match q.in_a() {
            Some(qa) => ca.compose(sx.in_a().unwrap(), qa, a, &ga, &fa),
            None => fa,
        };
        let part_b = match q.in_b() {
            Some(qb) => cb.compose(b, qb, sz.in_b().unwrap(), &gb, &fb),
            None => gb,
        };
        match (sx, sz) {
            (Side::Both(..), _) => Ok(part_b),
            (_, Side::Both(..)) => Ok(part_a),
            _ => Ok(crosses[&(x, z)].tuple(&[part_b, part_a])),
        }
    })
}

/// `Σ_m X`: `m` copies of `ΣX` glued end to start. Maps between non-adjacent
/// objects are free composites, so `hom(i,j) = X^{j-i}`.
pub fn sigma_m(x: &Sset<1>, m: usize) -> Result<SimplicialCategory> {
    if m == 0 {
        return Ok(unit_category());
    }
    let s = suspension(x);
    let mut cat = s.clone();
    for k in 1..m {
        cat = glue(&cat, k, &s, 0)?;
    }
    cat.labels = (0..=m).map(|i| i.to_string()).collect();
    Ok(cat)
}

/// The homotopy coherent categorification of `Δ[m]`: `hom(i,j)` is the cube of
/// subsets between `{i,j}` and `{i,…,j}`; composition is union.
pub fn ch_simplex(m: usize) -> SimplicialCategory {
    let n = m + 1;
    let mut cubes: Vec<Vec<Option<CubeHom>>> = vec![vec![None; n]; n];
    let mut homs = vec![vec![Sset::empty(); n]; n];
    for i in 0..n {
        for j in i..n {
            let c = CubeHom::new(1 << i | 1 << j, (1u64 << (j + 1)) - (1u64 << i)).expect("interval");
            homs[i][j] = c.sset.clone();
            cubes[i][j] = Some(c);
        }
    }
    let ids = vec![0; n];
    SimplicialCategory::build((0..n).map(|i| i.to_string()).collect(), homs, ids, |a, b, c, g, f| {
        let cg = cubes[b][c].as_ref().unwrap();
        let cf = cubes[a][b].as_ref().unwrap();
        let chain: Vec<u64> = cg.chain_of(g).iter().zip(cf.chain_of(f)).map(|(x, y)| x | y).collect();
        Ok(cubes[a][c].as_ref().unwrap().chain_nf(&chain))
    })
    .expect("c^h of a simplex")
}

/// An enriched functor given by its object map and its hom maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedFunctor {
    pub objects: Vec<usize>,
    /// `hom_C(a,b) -> hom_D(Fa,Fb)` for every pair with a non-empty source.
    pub homs: BTreeMap<(usize, usize), SsetMap<1>>,
}

impl EnrichedFunctor {
    pub fn apply(&self, a: usize, b: usize, f: &NormalForm<1>) -> NormalForm<1> {
        self.homs[&(a, b)].apply(f)
    }

    pub fn identity(c: &SimplicialCategory) -> Self {
        let n = c.num_objects();
        let mut homs = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if !c.hom(a, b).is_empty() {
                    homs.insert((a, b), SsetMap::identity(c.hom(a, b)));
                }
            }
        }
        EnrichedFunctor { objects: (0..n).collect(), homs }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &EnrichedFunctor) -> EnrichedFunctor {
        let homs = other
            .homs
            .iter()
            .map(|(&(a, b), f)| ((a, b), self.homs[&(other.objects[a], other.objects[b])].compose(f)))
            .collect();
        EnrichedFunctor { objects: other.objects.iter().map(|&x| self.objects[x]).collect(), homs }
    }

    /// Hom maps are maps of simplicial sets preserving identities and composition.
    pub fn check(&self, c: &SimplicialCategory, d: &SimplicialCategory) -> Result<()> {
        let n = c.num_objects();
        if self.objects.len() != n || self.objects.iter().any(|&x| x >= d.num_objects()) {
            return arg("object map has the wrong shape");
        }
        for a in 0..n {
            for b in 0..n {
                if c.hom(a, b).is_empty() {
                    continue;
                }
                let f = self.homs.get(&(a, b)).ok_or_else(|| Error::Argument(format!("missing hom map ({a},{b})")))?;
                f.validate(c.hom(a, b), d.hom(self.objects[a], self.objects[b]))?;
            }
            if self.apply(a, a, &c.id(a, 0)) != d.id(self.objects[a], 0) {
                return Err(Error::Diagram(format!("identity of {a} not preserved")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for e in 0..n {
                    let Some(comp) = c.composition(a, b, e) else { continue };
                    for k in &comp.product.keys {
                        let l = self.apply(a, e, &c.compose(a, b, e, &k[0], &k[1]));
                        let (x, y, z) = (self.objects[a], self.objects[b], self.objects[e]);
                        let r = d.compose(x, y, z, &self.apply(b, e, &k[0]), &self.apply(a, b, &k[1]));
                        if l != r {
                            return Err(Error::Diagram(format!("composition {a}->{b}->{e} not preserved")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// An object-preserving isomorphism of categories with the same objects,
/// found hom by hom and then checked against composition.
pub fn find_category_iso(c: &SimplicialCategory, d: &SimplicialCategory) -> Option<EnrichedFunctor> {
    let n = c.num_objects();
    if d.num_objects() != n {
        return None;
    }
    let mut homs = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if c.hom(a, b).is_empty() != d.hom(a, b).is_empty() {
                return None;
            }
            if !c.hom(a, b).is_empty() {
                homs.insert((a, b), crate::iso::find_iso(c.hom(a, b), d.hom(a, b))?);
            }
        }
    }
    let f = EnrichedFunctor { objects: (0..n).collect(), homs };
    f.check(c, d).ok().map(|_| f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{simplex, boundary};
    use crate::iso::find_iso;

    #[test]
    fn simplex_categorification_laws() {
        for m in 0..=3 {
            let c = ch_simplex(m);
            c.check().unwrap();
            assert!(c.is_directed());
        }
        let c = ch_simplex(2);
        assert_eq!(c.hom(0, 2).nd_counts(), vec![2, 1]);
        assert_eq!(c.hom(0, 1).nd_counts(), vec![1]);
        let v = c.compose(0, 1, 2, &c.hom(1, 2).id_nf(0), &c.hom(0, 1).id_nf(0));
        assert_eq!(v.d(), 0);
    }

    #[test]
    fn suspension_and_gluing() {
        let s = suspension(&point());
        s.check().unwrap();
        let x = boundary(2);
        let s2 = sigma_m(&x, 2).unwrap();
        s2.check().unwrap();
        assert!(find_iso(s2.hom(0, 1), &x).is_some());
        assert!(find_iso(s2.hom(1, 2), &x).is_some());
        let xx = Product::new(&[&x, &x]).unwrap().sset;
        assert!(find_iso(s2.hom(0, 2), &xx).is_some());
        let s3 = sigma_m(&simplex(1), 3).unwrap();
        s3.check().unwrap();
        assert_eq!(s3.num_objects(), 4);
    }
}
