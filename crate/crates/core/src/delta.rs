//! Order-preserving maps between finite ordinals `[n] = {0,..,n}`.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::fmt;

/// A monotone map `[src] -> [tgt]`, stored by its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaMap {
    tgt: u8,
    img: SmallVec<[u8; 8]>,
}

impl fmt::Debug for DeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->[{}]", self.img.as_slice(), self.tgt)
    }
}

impl DeltaMap {
    /// Builds a map from its image list; panics if not monotone or out of range.
    pub fn new(tgt: usize, img: &[usize]) -> Self {
        assert!(!img.is_empty(), "domain must be nonempty");
        assert!(img.windows(2).all(|w| w[0] <= w[1]), "map must be monotone");
        assert!(*img.last().unwrap() <= tgt, "image out of range");
        DeltaMap { tgt: tgt as u8, img: img.iter().map(|&v| v as u8).collect() }
    }

    pub fn try_new(tgt: usize, img: &[usize]) -> Option<Self> {
        if img.is_empty() || !img.windows(2).all(|w| w[0] <= w[1]) || *img.last().unwrap() > tgt {
            return None;
        }
        Some(DeltaMap { tgt: tgt as u8, img: img.iter().map(|&v| v as u8).collect() })
    }

    pub fn identity(n: usize) -> Self {
        DeltaMap { tgt: n as u8, img: (0..=n as u8).collect() }
    }

    /// The coface `[n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        let img = (0..n as u8).map(|x| if (x as usize) < i { x } else { x + 1 }).collect();
        DeltaMap { tgt: n as u8, img }
    }

    /// The codegeneracy `[n+1] -> [n]` hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Self {
        assert!(j <= n);
        let img = (0..=(n + 1) as u8).map(|x| if (x as usize) <= j { x } else { x - 1 }).collect();
        DeltaMap { tgt: n as u8, img }
    }

    /// The map `[0] -> [n]` picking `v`.
    pub fn vertex(n: usize, v: usize) -> Self {
        assert!(v <= n);
        DeltaMap { tgt: n as u8, img: SmallVec::from_slice(&[v as u8]) }
    }

    /// The constant map `[n] -> [0]`.
    pub fn terminal(n: usize) -> Self {
        DeltaMap { tgt: 0, img: SmallVec::from_elem(0, n + 1) }
    }

    /// The injection `[|S|-1] -> [n]` whose image is the bit set `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let img: SmallVec<[u8; 8]> = (0..=n as u8).filter(|&b| mask >> b & 1 == 1).collect();
        assert!(!img.is_empty(), "empty face");
        DeltaMap { tgt: n as u8, img }
    }

    pub fn src(&self) -> usize {
        self.img.len() - 1
    }

    pub fn tgt(&self) -> usize {
        self.tgt as usize
    }

    pub fn at(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn image(&self) -> impl Iterator<Item = usize> + '_ {
        self.img.iter().map(|&v| v as usize)
    }

    pub fn image_mask(&self) -> u64 {
        self.img.iter().fold(0u64, |m, &v| m | 1 << v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &DeltaMap) -> DeltaMap {
        debug_assert_eq!(other.tgt(), self.src(), "non-composable maps");
        DeltaMap { tgt: self.tgt, img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.tgt as usize + 1 == self.img.len() && self.img.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn is_injective(&self) -> bool {
        self.img.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.img[0] == 0
            && *self.img.last().unwrap() == self.tgt
            && self.img.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Factor as `mono ∘ epi`; returns `(epi, mono)`.
    pub fn epi_mono(&self) -> (DeltaMap, DeltaMap) {
        let mut mono: SmallVec<[u8; 8]> = SmallVec::new();
        let mut epi: SmallVec<[u8; 8]> = SmallVec::new();
        for &v in &self.img {
            if mono.last() != Some(&v) {
                mono.push(v);
            }
            epi.push((mono.len() - 1) as u8);
        }
        let d = mono.len() - 1;
        (DeltaMap { tgt: d as u8, img: epi }, DeltaMap { tgt: self.tgt, img: mono })
    }

    /// For an injective non-surjective map, the smallest missing index `r`
    /// and the map `rest` with `self = coface(r) ∘ rest`.
    pub fn peel_missing(&self) -> Option<(usize, DeltaMap)> {
        let mask = self.image_mask();
        let r = (0..=self.tgt as usize).find(|&r| mask >> r & 1 == 0)?;
        let img = self.img.iter().map(|&v| if (v as usize) < r { v } else { v - 1 }).collect();
        Some((r, DeltaMap { tgt: self.tgt - 1, img }))
    }

    /// Indices `i` with `self(i) == self(i+1)`, increasing.
    pub fn repeats(&self) -> Vec<usize> {
        self.img.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(i, _)| i).collect()
    }

    /// Degeneracy word of a surjection, strictly decreasing.
    pub fn degeneracy_word(&self) -> Vec<usize> {
        let mut w = self.repeats();
        w.reverse();
        w
    }

    /// Inverse of [`degeneracy_word`](Self::degeneracy_word): the surjection onto `[d]`
    /// obtained by applying the word to a `d`-simplex.
    pub fn from_degeneracy_word(d: usize, word: &[usize]) -> Option<DeltaMap> {
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return None;
        }
        let n = d + word.len();
        let mut img = Vec::with_capacity(n + 1);
        let mut v = 0usize;
        for i in 0..=n {
            img.push(v);
            if i < n && !word.contains(&i) {
                v += 1;
            }
        }
        if v != d {
            return None;
        }
        DeltaMap::try_new(d, &img)
    }

    /// All surjections `[n] -> [d]`, in lexicographic order of image lists.
    pub fn surjections(n: usize, d: usize) -> Vec<DeltaMap> {
        let mut out = Vec::new();
        if d > n {
            return out;
        }
        let mut cur = vec![0u8];
        fn rec(n: usize, d: usize, cur: &mut Vec<u8>, out: &mut Vec<DeltaMap>) {
            if cur.len() == n + 1 {
                if *cur.last().unwrap() as usize == d {
                    out.push(DeltaMap { tgt: d as u8, img: SmallVec::from_slice(cur) });
                }
                return;
            }
            let last = *cur.last().unwrap();
            let remaining = n + 1 - cur.len();
            for step in 0..=1u8 {
                let nv = last + step;
                if nv as usize > d || (d - nv as usize) > remaining - 1 {
                    continue;
                }
                cur.push(nv);
                rec(n, d, cur, out);
                cur.pop();
            }
        }
        rec(n, d, &mut cur, &mut out);
        out
    }

    /// All injections `[d] -> [n]`.
    pub fn injections(d: usize, n: usize) -> Vec<DeltaMap> {
        if d > n {
            return Vec::new();
        }
        (0u64..1 << (n + 1))
            .filter(|m| m.count_ones() as usize == d + 1)
            .map(|m| DeltaMap::from_mask(n, m))
            .collect()
    }

    /// All monotone maps `[n] -> [m]`.
    pub fn all_maps(n: usize, m: usize) -> Vec<DeltaMap> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = Vec::new();
        fn rec(n: usize, m: usize, cur: &mut Vec<u8>, out: &mut Vec<DeltaMap>) {
            if cur.len() == n + 1 {
                out.push(DeltaMap { tgt: m as u8, img: SmallVec::from_slice(cur) });
                return;
            }
            let lo = cur.last().copied().unwrap_or(0);
            for v in lo..=m as u8 {
                cur.push(v);
                rec(n, m, cur, out);
                cur.pop();
            }
        }
        rec(n, m, &mut cur, &mut out);
        out
    }

    /// Extends `[l] -> [m]` to `[l+1] -> [m+1]` sending the new top to the new top.
    pub fn plus_top(&self) -> DeltaMap {
        let mut img = self.img.clone();
        img.push(self.tgt + 1);
        DeltaMap { tgt: self.tgt + 1, img }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epi_mono_reassembles() {
        for f in DeltaMap::all_maps(3, 3) {
            let (e, m) = f.epi_mono();
            assert!(e.is_surjective() && m.is_injective());
            assert_eq!(m.compose(&e), f);
        }
    }

    #[test]
    fn surjection_counts_are_binomial() {
        assert_eq!(DeltaMap::surjections(4, 2).len(), 6);
        assert_eq!(DeltaMap::surjections(3, 3).len(), 1);
        assert_eq!(DeltaMap::surjections(2, 3).len(), 0);
        assert_eq!(DeltaMap::all_maps(2, 2).len(), 10);
    }

    #[test]
    fn degeneracy_words_round_trip() {
        for n in 0..5 {
            for d in 0..=n {
                for s in DeltaMap::surjections(n, d) {
                    let w = s.degeneracy_word();
                    assert_eq!(DeltaMap::from_degeneracy_word(d, &w), Some(s));
                }
            }
        }
        assert_eq!(DeltaMap::from_degeneracy_word(1, &[0, 1]), None);
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 2..5 {
            for i in 0..n {
                for j in i + 1..=n {
                    let lhs = DeltaMap::coface(n, j).compose(&DeltaMap::coface(n - 1, i));
                    let rhs = DeltaMap::coface(n, i).compose(&DeltaMap::coface(n - 1, j - 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
