//! Turns an element-level description of a simplicial object (elements per
//! degree plus the action of simplicial operators) into EZ normal form.

use crate::delta::DeltaMap;
use crate::error::{Error, Result};
use crate::sset::{build_keyed, identity_ops, ops_in, GenId, NormalForm, Sset};
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

/// Element-level description of a simplicial object in `D` directions.
pub trait Oracle<const D: usize> {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    /// All elements of the given degree, without repetition.
    fn elements(&self, deg: [usize; D]) -> Result<Vec<Self::Elem>>;

    /// The action of `ops` (one monotone map per direction).
    fn act(&self, e: &Self::Elem, ops: &[DeltaMap; D]) -> Self::Elem;

    fn degree(&self, e: &Self::Elem) -> [usize; D];
}

#[derive(Clone, Debug)]
pub struct Materialized<E, const D: usize> {
    pub sset: Sset<D>,
    pub gen_elems: Vec<E>,
    pub index: HashMap<E, GenId>,
    pub bound: [usize; D],
    /// Number of non-degenerate elements per total degree, for truncation reports.
    pub nd_by_total_degree: Vec<usize>,
}

/// Peels degeneracies off `e` until it is non-degenerate; returns the
/// non-degenerate element and the surjections with `e = x · σ`.
pub fn peel<O: Oracle<D>, const D: usize>(o: &O, e: &O::Elem) -> (O::Elem, [DeltaMap; D]) {
    let start = o.degree(e);
    let mut cur = e.clone();
    let mut tau: [DeltaMap; D] = identity_ops(start);
    'outer: loop {
        let deg = o.degree(&cur);
        for j in 0..D {
            for i in 0..deg[j] {
                let mut face = identity_ops(deg);
                face[j] = DeltaMap::coface(deg[j], i);
                let d = o.act(&cur, &face);
                let mut dg = identity_ops(o.degree(&d));
                dg[j] = DeltaMap::codegeneracy(deg[j] - 1, i);
                if o.act(&d, &dg) == cur {
                    tau[j] = DeltaMap::codegeneracy(deg[j] - 1, i).compose(&tau[j]);
                    cur = d;
                    continue 'outer;
                }
            }
        }
        return (cur, tau);
    }
}

pub fn is_nondegenerate<O: Oracle<D>, const D: usize>(o: &O, e: &O::Elem) -> bool {
    let deg = o.degree(e);
    for j in 0..D {
        for i in 0..deg[j] {
            let mut face = identity_ops(deg);
            face[j] = DeltaMap::coface(deg[j], i);
            let d = o.act(e, &face);
            let mut dg = identity_ops(o.degree(&d));
            dg[j] = DeltaMap::codegeneracy(deg[j] - 1, i);
            if o.act(&d, &dg) == *e {
                return false;
            }
        }
    }
    true
}

fn degrees_up_to<const D: usize>(bound: [usize; D]) -> Vec<[usize; D]> {
    let mut out = vec![[0usize; D]];
    for j in 0..D {
        out = out
            .into_iter()
            .flat_map(|d| {
                (0..=bound[j]).map(move |v| {
                    let mut e = d;
                    e[j] = v;
                    e
                })
            })
            .collect();
    }
    out.sort_by_key(|d| (d.iter().sum::<usize>(), *d));
    out
}

/// Materializes all non-degenerate elements of degree at most `bound`
/// (componentwise). `max_cells` caps the number of enumerated elements.
pub fn materialize<O: Oracle<D>, const D: usize>(
    o: &O,
    bound: [usize; D],
    max_cells: usize,
) -> Result<Materialized<O::Elem, D>> {
    let mut nd: Vec<(O::Elem, [usize; D])> = Vec::new();
    let mut seen = 0usize;
    let total_top: usize = bound.iter().sum();
    let mut nd_by_total_degree = vec![0usize; total_top + 1];
    for deg in degrees_up_to(bound) {
        let els = o.elements(deg)?;
        seen += els.len();
        if seen > max_cells {
            return Err(Error::Resource(format!("more than {max_cells} cells enumerated")));
        }
        for e in els {
            if is_nondegenerate(o, &e) {
                nd_by_total_degree[deg.iter().sum::<usize>()] += 1;
                nd.push((e, deg));
            }
        }
    }
    let mut failure: Option<Error> = None;
    let ids: HashMap<O::Elem, ()> = nd.iter().map(|(e, _)| (e.clone(), ())).collect();
    let keyed = build_keyed(nd, |e, j, r| {
        let deg = o.degree(e);
        let mut face = identity_ops(deg);
        face[j] = DeltaMap::coface(deg[j], r);
        let f = o.act(e, &face);
        let (x, tau) = peel(o, &f);
        if !ids.contains_key(&x) && failure.is_none() {
            failure = Some(Error::Malformed(format!("face of {e:?} is not enumerated")));
        }
        (tau, x)
    });
    if let Some(err) = failure {
        return Err(err);
    }
    let keyed = keyed?;
    Ok(Materialized {
        sset: keyed.sset,
        gen_elems: keyed.keys,
        index: keyed.ids,
        bound,
        nd_by_total_degree,
    })
}

impl<E: Clone + Eq + Hash + Ord + Debug, const D: usize> Materialized<E, D> {
    /// Normal form of an arbitrary element.
    pub fn nf_of<O: Oracle<D, Elem = E>>(&self, o: &O, e: &E) -> Result<NormalForm<D>> {
        let (x, tau) = peel(o, e);
        match self.index.get(&x) {
            Some(&g) => Ok(NormalForm { degen: tau, gen: g }),
            None => Err(Error::Resource(format!("element {x:?} lies above the materialized bound {:?}", self.bound))),
        }
    }

    /// The element represented by a normal form.
    pub fn elem_of<O: Oracle<D, Elem = E>>(&self, o: &O, s: &NormalForm<D>) -> E {
        o.act(&self.gen_elems[s.gen], &s.degen)
    }

    /// True if non-degenerate elements appear in either of the two top total degrees.
    pub fn top_degrees_nonempty(&self) -> bool {
        let n = self.nd_by_total_degree.len();
        self.nd_by_total_degree[n.saturating_sub(2)..].iter().any(|&c| c > 0)
    }
}

/// Elementary cofaces and codegeneracies into degree `deg` whose source degree
/// stays within `bound`.
pub fn elementary_ops<const D: usize>(deg: [usize; D], bound: [usize; D]) -> Vec<[DeltaMap; D]> {
    let mut out = Vec::new();
    for j in 0..D {
        let n = deg[j];
        for i in 0..=n {
            if n > 0 {
                out.push(ops_in(deg, j, DeltaMap::coface(n, i)));
            }
            if n < bound[j] {
                out.push(ops_in(deg, j, DeltaMap::codegeneracy(n, i)));
            }
        }
    }
    out
}

/// Checks `(e·α)·β = e·(α∘β)` and `e·id = e` for every element up to `bound`
/// and all elementary `α, β`. Returns the first failing element, if any.
pub fn check_simplicial_identities<O: Oracle<D>, const D: usize>(o: &O, bound: [usize; D]) -> Result<Option<String>> {
    for deg in degrees_up_to(bound) {
        let els = o.elements(deg)?;
        let ops = elementary_ops(deg, bound);
        for e in &els {
            if o.act(e, &identity_ops(deg)) != *e {
                return Ok(Some(format!("{e:?} · id")));
            }
            for a in &ops {
                let ea = o.act(e, a);
                let deg2: [usize; D] = std::array::from_fn(|j| a[j].src());
                for b in elementary_ops(deg2, bound) {
                    let ab: [DeltaMap; D] = std::array::from_fn(|j| a[j].compose(&b[j]));
                    if o.act(&ea, &b) != o.act(e, &ab) {
                        return Ok(Some(format!("{e:?} · {a:?} · {b:?}")));
                    }
                }
            }
        }
    }
    Ok(None)
}
