//! JSON formats (`sset.v1`, `bisset.v1`, `scat.v1`, `presheaf.v1`,
//! `necklace.v1`, `check.v1`) and DOT export.
//!
//! A simplex is written `{"word": w, "target": id}`: the degeneracy word of its
//! surjection (strictly decreasing, empty for a generator) applied to `id`.
//! Bisimplicial words are pairs `[horizontal, vertical]`.

use crate::error::{Error, Result};
use crate::map::SsetMap;
use crate::necklace::{mask_list, to_dot, TndPoset};
use crate::presheaf::{EnrichedPresheaf, PresheafMap};
use crate::scat::SimplicialCategory;
use crate::sset::{Generator, NormalForm, Sset};
use crate::DeltaMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap, HashSet};

pub const SSET: &str = "sset.v1";
pub const BISSET: &str = "bisset.v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceJson {
    pub word: Vec<usize>,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenJson {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<FaceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SsetJson {
    pub schema: String,
    pub dim_bound: usize,
    pub generators: Vec<GenJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiFaceJson {
    pub word: [Vec<usize>; 2],
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiGenJson {
    pub id: String,
    pub bidegree: [usize; 2],
    pub faces_h: Vec<BiFaceJson>,
    pub faces_v: Vec<BiFaceJson>,
    /// Image in the base, for objects over a base.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<BiFaceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BissetJson {
    pub schema: String,
    pub dim_bound: [usize; 2],
    pub generators: Vec<BiGenJson>,
}

fn schema_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Schema(msg.into()))
}

/// Generator ids: the labels when present and distinct, `g<n>` otherwise.
pub fn ids<const D: usize>(s: &Sset<D>) -> Vec<String> {
    let labels: Vec<Option<&str>> = (0..s.num_gens()).map(|g| s.label(g)).collect();
    let distinct: HashSet<&str> = labels.iter().flatten().copied().collect();
    if labels.iter().all(Option::is_some) && distinct.len() == labels.len() {
        labels.into_iter().map(|l| l.unwrap().to_string()).collect()
    } else {
        (0..s.num_gens()).map(|g| format!("g{g}")).collect()
    }
}

pub fn face_json(ids: &[String], s: &NormalForm<1>) -> FaceJson {
    FaceJson { word: s.degen[0].degeneracy_word(), target: ids[s.gen].clone() }
}

pub fn biface_json(ids: &[String], s: &NormalForm<2>) -> BiFaceJson {
    BiFaceJson { word: [s.degen[0].degeneracy_word(), s.degen[1].degeneracy_word()], target: ids[s.gen].clone() }
}

pub fn sset_json(s: &Sset<1>) -> SsetJson {
    let ids = ids(s);
    let generators = (0..s.num_gens())
        .map(|g| {
            let gen = s.generator(g);
            GenJson { id: ids[g].clone(), dim: gen.dim[0], faces: gen.faces[0].iter().map(|f| face_json(&ids, f)).collect() }
        })
        .collect();
    SsetJson { schema: SSET.into(), dim_bound: s.max_dim()[0], generators }
}

pub fn bisset_json(s: &Sset<2>, over: Option<(&SsetMap<2>, &Sset<2>)>) -> BissetJson {
    let ids = ids(s);
    let base_ids = over.map(|(_, w)| self::ids(w));
    let generators = (0..s.num_gens())
        .map(|g| {
            let gen = s.generator(g);
            BiGenJson {
                id: ids[g].clone(),
                bidegree: gen.dim,
                faces_h: gen.faces[0].iter().map(|f| biface_json(&ids, f)).collect(),
                faces_v: gen.faces[1].iter().map(|f| biface_json(&ids, f)).collect(),
                over: over.map(|(m, _)| biface_json(base_ids.as_ref().unwrap(), &m.images[g])),
            }
        })
        .collect();
    BissetJson { schema: BISSET.into(), dim_bound: s.max_dim(), generators }
}

fn index_of(ids: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::new();
    for (g, id) in ids.iter().enumerate() {
        if index.insert(id.as_str(), g).is_some() {
            return schema_err(format!("duplicate generator id {id:?}"));
        }
    }
    Ok(index)
}

fn resolve(index: &HashMap<&str, usize>, dims: &[Vec<usize>], words: &[&[usize]], target: &str) -> Result<NormalForm<2>> {
    let Some(&gen) = index.get(target) else {
        return schema_err(format!("unknown face target {target:?}"));
    };
    let degen = std::array::from_fn(|j| DeltaMap::from_degeneracy_word(dims[gen][j], words[j]));
    let degen: [DeltaMap; 2] = match degen {
        [Some(a), Some(b)] => [a, b],
        _ => return schema_err(format!("bad degeneracy word onto {target:?}")),
    };
    Ok(NormalForm { degen, gen })
}

impl SsetJson {
    pub fn to_sset(&self) -> Result<Sset<1>> {
        if self.schema != SSET {
            return schema_err(format!("expected schema {SSET}, found {:?}", self.schema));
        }
        let ids: Vec<String> = self.generators.iter().map(|g| g.id.clone()).collect();
        let index = index_of(&ids)?;
        let dims: Vec<Vec<usize>> = self.generators.iter().map(|g| vec![g.dim, 0]).collect();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                if g.dim > self.dim_bound {
                    return schema_err(format!("generator {:?} exceeds dim_bound", g.id));
                }
                let faces = g
                    .faces
                    .iter()
                    .map(|f| resolve(&index, &dims, &[&f.word, &[]], &f.target).map(|nf| NormalForm { degen: [nf.degen[0].clone()], gen: nf.gen }))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Generator { dim: [g.dim], faces: [faces] })
            })
            .collect::<Result<Vec<_>>>()?;
        Sset::new(gens, ids.into_iter().map(Some).collect()).map_err(|e| Error::Schema(e.to_string()))
    }
}

impl BissetJson {
    pub fn to_sset(&self) -> Result<Sset<2>> {
        if self.schema != BISSET {
            return schema_err(format!("expected schema {BISSET}, found {:?}", self.schema));
        }
        let ids: Vec<String> = self.generators.iter().map(|g| g.id.clone()).collect();
        let index = index_of(&ids)?;
        let dims: Vec<Vec<usize>> = self.generators.iter().map(|g| g.bidegree.to_vec()).collect();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                if g.bidegree[0] > self.dim_bound[0] || g.bidegree[1] > self.dim_bound[1] {
                    return schema_err(format!("generator {:?} exceeds dim_bound", g.id));
                }
                let side = |fs: &[BiFaceJson]| fs.iter().map(|f| resolve(&index, &dims, &[&f.word[0], &f.word[1]], &f.target)).collect::<Result<Vec<_>>>();
                Ok(Generator { dim: g.bidegree, faces: [side(&g.faces_h)?, side(&g.faces_v)?] })
            })
            .collect::<Result<Vec<_>>>()?;
        Sset::new(gens, ids.into_iter().map(Some).collect()).map_err(|e| Error::Schema(e.to_string()))
    }

    /// The `over` fields as a map into `base`.
    pub fn projection(&self, base: &Sset<2>) -> Result<SsetMap<2>> {
        let base_ids = ids(base);
        let index = index_of(&base_ids)?;
        let dims: Vec<Vec<usize>> = (0..base.num_gens()).map(|g| base.dim(g).to_vec()).collect();
        let images = self
            .generators
            .iter()
            .map(|g| match &g.over {
                Some(f) => resolve(&index, &dims, &[&f.word[0], &f.word[1]], &f.target),
                None => schema_err(format!("generator {:?} has no \"over\" entry", g.id)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SsetMap { images })
    }
}

pub fn parse_sset(text: &str) -> Result<Sset<1>> {
    serde_json::from_str::<SsetJson>(text).map_err(|e| Error::Schema(e.to_string()))?.to_sset()
}

pub fn parse_bisset(text: &str) -> Result<BissetJson> {
    serde_json::from_str::<BissetJson>(text).map_err(|e| Error::Schema(e.to_string()))
}

/// `scat.v1`: objects, identity vertices, homs as `sset.v1`, and composition
/// tables on the generators of `hom(b,c) × hom(a,b)`.
pub fn scat_json(cat: &SimplicialCategory) -> Value {
    let n = cat.num_objects();
    let mut homs = Vec::new();
    let mut comps = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !cat.hom(a, b).is_empty() {
                homs.push(json!({"from": a, "to": b, "hom": sset_json(cat.hom(a, b))}));
            }
            for c in 0..n {
                if let Some(comp) = cat.composition(a, b, c) {
                    let (gi, fi, ri) = (ids(cat.hom(b, c)), ids(cat.hom(a, b)), ids(cat.hom(a, c)));
                    let table: Vec<Value> = comp
                        .product
                        .keys
                        .iter()
                        .zip(&comp.map.images)
                        .map(|(k, r)| json!({"left": face_json(&gi, &k[0]), "right": face_json(&fi, &k[1]), "result": face_json(&ri, r)}))
                        .collect();
                    comps.push(json!({"objects": [a, b, c], "table": table}));
                }
            }
        }
    }
    let identities: Vec<String> = (0..n).map(|a| ids(cat.hom(a, a))[cat.id_gen(a)].clone()).collect();
    json!({"schema": "scat.v1", "objects": cat.labels, "identities": identities, "homs": homs, "compositions": comps})
}

/// `presheaf.v1`: values as `sset.v1` and action tables on the generators of
/// `hom(a,b) × F(b)`.
pub fn presheaf_json(cat: &SimplicialCategory, f: &EnrichedPresheaf) -> Value {
    let n = f.num_objects();
    let mut actions = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if let Some(act) = f.action(a, b) {
                let (hi, xi, ri) = (ids(cat.hom(a, b)), ids(&f.values[b]), ids(&f.values[a]));
                let table: Vec<Value> = act
                    .product
                    .keys
                    .iter()
                    .zip(&act.map.images)
                    .map(|(k, r)| json!({"arrow": face_json(&hi, &k[0]), "element": face_json(&xi, &k[1]), "result": face_json(&ri, r)}))
                    .collect();
                actions.push(json!({"from": a, "to": b, "table": table}));
            }
        }
    }
    let values: Vec<SsetJson> = f.values.iter().map(sset_json).collect();
    json!({"schema": "presheaf.v1", "objects": cat.labels, "values": values, "actions": actions})
}

/// A simplicial map as a certificate: generator id to image.
pub fn map_json<const D: usize>(f: &SsetMap<D>, src: &Sset<D>, tgt: &Sset<D>) -> Value {
    let (si, ti) = (ids(src), ids(tgt));
    let entries: BTreeMap<String, Value> = f
        .images
        .iter()
        .enumerate()
        .map(|(g, s)| {
            let words: Vec<Vec<usize>> = s.degen.iter().map(DeltaMap::degeneracy_word).collect();
            let word = if D == 1 { json!(words[0]) } else { json!(words) };
            (si[g].clone(), json!({"word": word, "target": ti[s.gen]}))
        })
        .collect();
    json!(entries)
}

pub fn presheaf_map_json(eta: &PresheafMap, src: &EnrichedPresheaf, tgt: &EnrichedPresheaf) -> Value {
    let components: Vec<Value> = eta.components.iter().enumerate().map(|(a, c)| map_json(c, &src.values[a], &tgt.values[a])).collect();
    json!({"components": components})
}

/// `necklace.v1`: the totally non-degenerate necklaces from `a` to `b` with
/// bead dimensions, bead realizations, joints and the covering relations.
pub fn necklace_json(k: &Sset<1>, tnd: &TndPoset) -> Value {
    let ids = ids(k);
    let necklaces: Vec<Value> = tnd
        .necklaces
        .iter()
        .map(|t| {
            json!({
                "beads": t.shape(k).beads,
                "realization": t.beads.iter().map(|&g| ids[g].clone()).collect::<Vec<_>>(),
                "vertices": t.vertices.iter().map(|&v| ids[v].clone()).collect::<Vec<_>>(),
                "joints": t.joints.iter().map(|&j| ids[t.vertices[j]].clone()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({"schema": "necklace.v1", "from": ids[tnd.a], "to": ids[tnd.b], "necklaces": necklaces, "covers": tnd.covers()})
}

/// DOT of the necklace poset with nodes named `J|V`.
pub fn necklace_dot(tnd: &TndPoset) -> String {
    let names: Vec<String> = (0..tnd.len()).map(|t| format!("{}|{}", mask_list(tnd.joint_mask(t)), mask_list(tnd.vertex_mask(t)))).collect();
    to_dot(&names, &tnd.covers())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        CheckResult { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, certificate: None, witness: None }
    }

    pub fn with_certificate(mut self, c: Option<Value>) -> Self {
        self.certificate = c;
        self
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    /// A check that could not run: unsupported inputs are reported as such,
    /// anything else as a failure with the error as witness.
    pub fn from_error(name: impl Into<String>, e: &Error) -> Self {
        let status = if matches!(e, Error::Unsupported { .. }) { Status::Unsupported } else { Status::Fail };
        CheckResult { name: name.into(), status, certificate: None, witness: Some(e.to_string()) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub unsupported: usize,
}

/// `check.v1`. Timings are only present when requested, so that reports are
/// byte-identical across runs by default.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub inputs_digest: String,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs: &[&[u8]], checks: Vec<CheckResult>) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary { passed: count(Status::Pass), failed: count(Status::Fail), unsupported: count(Status::Unsupported) };
        RunReport { schema: "check.v1", command: command.into(), inputs_digest: digest(inputs), checks, summary, timings_ms: None }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.unsupported == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// SHA-256 over the length-prefixed inputs.
pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for i in inputs {
        h.update((i.len() as u64).to_le_bytes());
        h.update(i);
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boundary, embed, external_product, simplex, spine};
    use crate::iso::check_iso;

    #[test]
    fn simplicial_sets_round_trip() {
        for s in [simplex(3), boundary(2), spine(3)] {
            let text = serde_json::to_string(&sset_json(&s)).unwrap();
            let back = parse_sset(&text).unwrap();
            assert!(check_iso(&SsetMap::identity(&s), &s, &back));
        }
    }

    #[test]
    fn bisimplicial_sets_round_trip_with_projection() {
        let p = external_product(&simplex(1), &simplex(2)).sset;
        let w = embed(&simplex(1), 0);
        let proj = SsetMap {
            images: (0..p.num_gens())
                .map(|g| {
                    let d = p.dim(g);
                    let v = w.gens_of_dim([d[0], 0]).next().unwrap();
                    NormalForm { degen: [DeltaMap::identity(d[0]), DeltaMap::terminal(d[1])], gen: v }
                })
                .collect(),
        };
        let j = bisset_json(&p, Some((&proj, &w)));
        let text = serde_json::to_string(&j).unwrap();
        let back = parse_bisset(&text).unwrap();
        let q = back.to_sset().unwrap();
        assert!(check_iso(&SsetMap::identity(&p), &p, &q));
        assert_eq!(back.projection(&w).unwrap(), proj);
    }

    #[test]
    fn malformed_inputs_are_schema_errors() {
        let bad = r#"{"schema":"sset.v1","dim_bound":1,"generators":[{"id":"e","dim":1,"faces":[{"word":[],"target":"x"}]}]}"#;
        assert!(matches!(parse_sset(bad), Err(Error::Schema(_))));
        let wrong = r#"{"schema":"bisset.v1","dim_bound":0,"generators":[]}"#;
        assert!(matches!(parse_sset(wrong), Err(Error::Schema(_))));
        let bad_word = r#"{"schema":"sset.v1","dim_bound":1,"generators":[{"id":"v","dim":0,"faces":[]},{"id":"e","dim":1,"faces":[{"word":[3],"target":"v"},{"word":[],"target":"v"}]}]}"#;
        assert!(matches!(parse_sset(bad_word), Err(Error::Schema(_))));
    }

    #[test]
    fn digests_are_stable_and_separate_inputs() {
        assert_eq!(digest(&[b"ab"]), digest(&[b"ab"]));
        assert_ne!(digest(&[b"a", b"b"]), digest(&[b"ab"]));
    }
}
