//! Finite ordinals and order-preserving maps: the truncated index category.

use crate::error::{Error, Result};

/// Order-preserving map `[src] -> [tgt]` between finite ordinals
/// `{0, ..., src}` and `{0, ..., tgt}`, stored by its value list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrdMap {
    src: usize,
    tgt: usize,
    img: Vec<usize>,
}

impl std::fmt::Debug for OrdMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}]->[{}]:{:?}",
            self.src, self.tgt, self.img
        )
    }
}

impl OrdMap {
    pub fn new(src: usize, tgt: usize, img: Vec<usize>) -> Result<Self> {
        if img.len() != src + 1 {
            return Err(Error::ShapeMismatch(format!(
                "ordinal map [{}]->[{}] needs {} values, got {}",
                src,
                tgt,
                src + 1,
                img.len()
            )));
        }
        if img.windows(2).any(|w| w[0] > w[1]) || img.iter().any(|&v| v > tgt) {
            return Err(Error::Validation(format!(
                "not an order-preserving map into [{}]: {:?}",
                tgt, img
            )));
        }
        Ok(OrdMap { src, tgt, img })
    }

    pub fn identity(n: usize) -> Self {
        OrdMap { src: n, tgt: n, img: (0..=n).collect() }
    }

    /// Coface `d_i: [n-1] -> [n]`, the injection missing `i`.
    pub fn coface(i: usize, n: usize) -> Self {
        assert!(n >= 1 && i <= n);
        OrdMap {
            src: n - 1,
            tgt: n,
            img: (0..n).map(|k| if k < i { k } else { k + 1 }).collect(),
        }
    }

    /// Codegeneracy `s_i: [n+1] -> [n]`, the surjection hitting `i` twice.
    pub fn codegeneracy(i: usize, n: usize) -> Self {
        assert!(i <= n);
        OrdMap {
            src: n + 1,
            tgt: n,
            img: (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect(),
        }
    }

    /// The vertex map `[0] -> [n]` picking out `v`.
    pub fn vertex(v: usize, n: usize) -> Self {
        assert!(v <= n);
        OrdMap { src: 0, tgt: n, img: vec![v] }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn apply(&self, k: usize) -> usize {
        self.img[k]
    }

    pub fn values(&self) -> &[usize] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.img.iter().enumerate().all(|(k, &v)| k == v)
    }

    pub fn is_injective(&self) -> bool {
        self.img.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        // monotone, so surjective iff first is 0, last is tgt, no gaps
        let mut seen = 0;
        for &v in &self.img {
            if v > seen + 1 || (seen == 0 && v > 0 && self.img[0] > 0) {
                return false;
            }
            seen = seen.max(v);
        }
        self.img.first() == Some(&0) && seen == self.tgt
    }

    /// `other` after `self` (`self: [a]->[b]`, `other: [b]->[c]`).
    pub fn then(&self, other: &OrdMap) -> OrdMap {
        assert_eq!(self.tgt, other.src, "ordinal maps not composable");
        OrdMap {
            src: self.src,
            tgt: other.tgt,
            img: self.img.iter().map(|&v| other.img[v]).collect(),
        }
    }

    /// Elementary factorization: `self = d_{i_1} . ... . d_{i_s} . s_{j_1}
    /// . ... . s_{j_t}` as functions, returned as the list of elementary
    /// maps in application order (first applied first).
    pub fn elementary_factors(&self) -> Vec<Elementary> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        // peel codegeneracies: collapse equal neighbours, first applied first
        while let Some(j) = cur.img.windows(2).position(|w| w[0] == w[1]) {
            // cur = cur' . s_j with s_j: [cur.src] -> [cur.src - 1]
            let mut img = cur.img.clone();
            img.remove(j + 1);
            let s = OrdMap::codegeneracy(j, cur.src - 1);
            let rest = OrdMap { src: cur.src - 1, tgt: cur.tgt, img };
            debug_assert_eq!(s.then(&rest), cur);
            out.push(Elementary::Codegeneracy { i: j, level: cur.src - 1 });
            cur = rest;
        }
        // peel cofaces: insert missing values, largest first so indices stay
        // valid against the shrinking target
        let mut face_stack = Vec::new();
        while cur.src != cur.tgt || !cur.is_identity() {
            // cur is injective now; find the largest missing value
            let present: std::collections::BTreeSet<usize> = cur.img.iter().copied().collect();
            let miss = (0..=cur.tgt).rev().find(|v| !present.contains(v));
            let Some(i) = miss else { break };
            face_stack.push(Elementary::Coface { i, level: cur.tgt });
            let img = cur
                .img
                .iter()
                .map(|&v| if v > i { v - 1 } else { v })
                .collect();
            cur = OrdMap { src: cur.src, tgt: cur.tgt - 1, img };
        }
        // faces apply after the degeneracies, innermost (smallest target) first
        face_stack.reverse();
        out.extend(face_stack);
        out
    }
}

/// An elementary ordinal map, tagged with enough level data to look up the
/// corresponding structure map of a (co)simplicial object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// `d_i: [level-1] -> [level]`
    Coface { i: usize, level: usize },
    /// `s_i: [level+1] -> [level]`
    Codegeneracy { i: usize, level: usize },
}

/// All order-preserving maps `[a] -> [b]`, lexicographic by value list.
pub fn hom_set(a: usize, b: usize) -> Vec<OrdMap> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; a + 1];
    loop {
        out.push(OrdMap { src: a, tgt: b, img: cur.clone() });
        // next monotone tuple
        let mut k = a + 1;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < b {
                cur[k] += 1;
                for j in k + 1..=a {
                    cur[j] = cur[k];
                }
                break;
            }
        }
    }
}

/// All morphisms of the truncated index category on ordinals `[0]..[n_max]`,
/// optionally excluding identities. Deterministic order: by (src, tgt, values).
pub fn all_morphisms(n_max: usize, include_identities: bool) -> Vec<OrdMap> {
    let mut out = Vec::new();
    for a in 0..=n_max {
        for b in 0..=n_max {
            for m in hom_set(a, b) {
                if include_identities || !m.is_identity() {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_set_counts_are_binomial() {
        // |Hom([a],[b])| = C(a+b+1, a+1)
        let binom = |n: usize, k: usize| -> usize {
            let mut r = 1usize;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        };
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(hom_set(a, b).len(), binom(a + b + 1, a + 1), "a={} b={}", a, b);
            }
        }
    }

    #[test]
    fn factorization_reconstructs() {
        for a in 0..4 {
            for b in 0..4 {
                for m in hom_set(a, b) {
                    let factors = m.elementary_factors();
                    // recompose as functions
                    let mut cur = OrdMap::identity(a);
                    for f in &factors {
                        let e = match f {
                            Elementary::Coface { i, level } => OrdMap::coface(*i, *level),
                            Elementary::Codegeneracy { i, level } => {
                                OrdMap::codegeneracy(*i, *level)
                            }
                        };
                        cur = cur.then(&e);
                    }
                    assert_eq!(cur, m, "factorization failed for {:?}", m);
                }
            }
        }
    }

    #[test]
    fn surjectivity_injectivity() {
        assert!(OrdMap::codegeneracy(0, 1).is_surjective());
        assert!(!OrdMap::coface(0, 1).is_surjective());
        assert!(OrdMap::coface(0, 1).is_injective());
        assert!(OrdMap::identity(2).is_surjective());
    }
}
