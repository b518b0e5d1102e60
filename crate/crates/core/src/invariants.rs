//! Structural properties of straightening: compatibility with tensors,
//! preservation of pushouts, and representable pieces versus the direct
//! one-point extension.

use crate::categorify::{categorify_with, CategorifyOptions};
use crate::colimit::Colimit;
use crate::constructions::{embed, external_product, point, simplex, simplex_keyed, simplex_nf, boundary};
use crate::error::Result;
use crate::map::SsetMap;
use crate::presheaf::{find_presheaf_iso, presheaf_colimit, PresheafMap};
use crate::product::Product;
use crate::sset::{NormalForm, Sset};
use crate::straighten::{straighten_rep, Straightener};
use crate::DeltaMap;
use rand::Rng;

/// An object `P -> W`.
#[derive(Clone, Debug)]
pub struct Over {
    pub name: String,
    pub p: Sset<2>,
    pub map: SsetMap<2>,
}

/// `Δ[m] ⊠ Y -> Δ[n]` (embedded horizontally), horizontally along `h : [m] -> [n]`
/// and collapsing `Y`.
pub fn over_simplex(n: usize, h: &DeltaMap, y: &Sset<1>) -> Over {
    let m = h.src();
    let hk = simplex_keyed(m);
    let nk = simplex_keyed(n);
    let keyed = external_product(&simplex(m), y);
    let images = keyed
        .keys
        .iter()
        .map(|&(a, b)| {
            let mono = DeltaMap::from_mask(m, hk.keys[a]);
            let s = simplex_nf(&nk, &h.compose(&mono));
            NormalForm { degen: [s.degen[0].clone(), DeltaMap::terminal(y.dim(b)[0])], gen: s.gen }
        })
        .collect();
    Over { name: format!("D{m}xY over D{n} along {:?}", h.image().collect::<Vec<_>>()), p: keyed.sset, map: SsetMap { images } }
}

/// `P ⊗ X = P × (constant vertical X)` over `W`.
pub fn tensor_over(p: &Over, x: &Sset<1>) -> Result<Over> {
    let ex = embed(x, 1);
    let prod = Product::new(&[&p.p, &ex])?;
    let map = p.map.compose(&prod.projections[0]);
    Ok(Over { name: format!("{} (x) X", p.name), p: prod.sset, map })
}

/// Three objects over `Δ[n]` for `n ∈ {0, 1}`.
pub fn tensor_catalog(n: usize) -> Vec<Over> {
    let id = DeltaMap::identity(n);
    let mut out = vec![over_simplex(n, &id, &point())];
    if n == 0 {
        out.push(over_simplex(0, &DeltaMap::terminal(1), &point()));
        out.push(over_simplex(0, &id, &simplex(1)));
    } else {
        out.push(over_simplex(n, &DeltaMap::vertex(n, n), &point()));
        out.push(over_simplex(n, &id, &simplex(1)));
    }
    out
}

/// `St(P ⊗ X) ≅ St(P) ⊗ X`; returns the certificate when one exists.
pub fn check_tensor(st: &Straightener<'_>, p: &Over, x: &Sset<1>) -> Result<Option<PresheafMap>> {
    let cat = &st.cw.category;
    let lhs = st.straighten(&tensor_over(p, x)?.p, &tensor_over(p, x)?.map)?;
    let rhs = st.straighten(&p.p, &p.map)?.presheaf().tensor(cat, x)?.0;
    find_presheaf_iso(cat, lhs.presheaf(), &rhs)
}

/// The tensor battery: `W ∈ {Δ[0], Δ[1]}`, `X ∈ {Δ[1], ∂Δ[2]}`, three objects each.
pub fn tensor_battery(opts: &CategorifyOptions) -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    for n in 0..=1 {
        let cw = categorify_with(&embed(&simplex(n), 0), opts)?;
        let st = Straightener::new(&cw, opts);
        for p in tensor_catalog(n) {
            for (xname, x) in [("D1", simplex(1)), ("bd D2", boundary(2))] {
                let ok = check_tensor(&st, &p, &x)?.is_some();
                out.push((format!("W=D{n}, P={}, X={xname}", p.name), ok));
            }
        }
    }
    Ok(out)
}

/// A span `B <- A -> C` of objects over `Δ[n]`.
#[derive(Clone, Debug)]
pub struct Span {
    pub n: usize,
    pub a: Over,
    pub b: Over,
    pub c: Over,
    pub f: SsetMap<2>,
    pub g: SsetMap<2>,
}

fn random_over(rng: &mut impl Rng, n: usize) -> Over {
    let m = rng.gen_range(0..=n + 1);
    let mut img: Vec<usize> = (0..=m).map(|_| rng.gen_range(0..=n)).collect();
    img.sort_unstable();
    let h = DeltaMap::new(n, &img);
    let y = if rng.gen_bool(0.5) { point() } else { simplex(1) };
    over_simplex(n, &h, &y)
}

/// A random pushout of a point into two random objects over `Δ[n]`.
pub fn random_span(rng: &mut impl Rng, n: usize) -> Span {
    let b = random_over(rng, n);
    let bv: Vec<_> = b.p.gens_of_dim([0, 0]).collect();
    let vb = bv[rng.gen_range(0..bv.len())];
    let target = b.map.images[vb].clone();
    let (c, vc) = loop {
        let c = random_over(rng, n);
        let cands: Vec<_> = c.p.gens_of_dim([0, 0]).filter(|&v| c.map.images[v] == target).collect();
        if !cands.is_empty() {
            let v = cands[rng.gen_range(0..cands.len())];
            break (c, v);
        }
    };
    let a = Over { name: "pt".into(), p: embed(&point(), 0), map: SsetMap { images: vec![target] } };
    let v = |g| NormalForm { degen: [DeltaMap::identity(0), DeltaMap::identity(0)], gen: g };
    Span { n, f: SsetMap { images: vec![v(vb)] }, g: SsetMap { images: vec![v(vc)] }, a, b, c }
}

/// The canonical map `St(B) ⨿_{St(A)} St(C) -> St(B ⨿_A C)` is an isomorphism.
pub fn check_pushout(span: &Span, opts: &CategorifyOptions) -> Result<bool> {
    let cw = categorify_with(&embed(&simplex(span.n), 0), opts)?;
    let st = Straightener::new(&cw, opts);
    let colim = Colimit::new(&[&span.a.p, &span.b.p, &span.c.p], &[(0, 1, &span.f), (0, 2, &span.g)])?;
    let pmap = colim.mediate(&[&span.a.map, &span.b.map, &span.c.map], &cw.w)?;
    let total = st.straighten(&colim.sset, &pmap)?;
    let parts = [&span.a, &span.b, &span.c].map(|o| st.straighten(&o.p, &o.map));
    let [sa, sb, sc] = parts;
    let (sa, sb, sc) = (sa?, sb?, sc?);
    let sf = st.straighten_map(&sa, &sb, &span.a.p, &span.f)?;
    let sg = st.straighten_map(&sa, &sc, &span.a.p, &span.g)?;
    let valuewise = presheaf_colimit(&cw.category, &[sa.presheaf(), sb.presheaf(), sc.presheaf()], &[(0, 1, &sf), (0, 2, &sg)])?;
    let legs = [(&sa, &span.a.p, 0), (&sb, &span.b.p, 1), (&sc, &span.c.p, 2)]
        .into_iter()
        .map(|(s, p, i)| st.straighten_map(s, &total, p, &colim.cocone[i]))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&PresheafMap> = legs.iter().collect();
    let cmp = valuewise.mediate(&refs, total.presheaf())?;
    cmp.check(&cw.category, &valuewise.presheaf, total.presheaf())?;
    Ok(cmp.is_iso(total.presheaf()))
}

/// The colimit-built piece for `σ` agrees with the direct straightening of `σ`.
pub fn check_piece_vs_direct(st: &Straightener<'_>, sigma: &NormalForm<2>) -> Result<Option<PresheafMap>> {
    let a = st.presheaf(sigma)?;
    let b = straighten_rep(st.cw, sigma, &st.opts)?.presheaf;
    find_presheaf_iso(&st.cw.category, &a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tensors_are_preserved() {
        for (name, ok) in tensor_battery(&CategorifyOptions::default()).unwrap() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn pushouts_are_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [0, 1, 1] {
            let span = random_span(&mut rng, n);
            assert!(check_pushout(&span, &CategorifyOptions::default()).unwrap(), "{} / {}", span.b.name, span.c.name);
        }
    }

    #[test]
    fn pieces_over_the_two_simplex() {
        let cw = categorify_with(&embed(&simplex(2), 0), &CategorifyOptions::default()).unwrap();
        let st = Straightener::new(&cw, &CategorifyOptions::default());
        for g in 0..cw.w.num_gens() {
            assert!(check_piece_vs_direct(&st, &cw.w.id_nf(g)).unwrap().is_some());
        }
    }
}
