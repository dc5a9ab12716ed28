//! Truncated cosimplicial sets and cosimplicial spaces: maximal
//! augmentation, brute-force inverse limits over the truncated index
//! category, matching objects, and the skeleton-extension criterion.

use crate::error::{Error, Result};
use crate::ordmap::{all_morphisms, hom_set, Elementary, OrdMap};
use crate::simp::{skeleton, standard_simplex, FinSet, SimpMap, TruncSimpSet};

/// N-truncated cosimplicial set with explicit coface/codegeneracy tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncCosimpSet {
    levels: Vec<FinSet>,
    /// `cofaces[n-1][i]`: d^i as index map X^{n-1} -> X^n, 1 <= n <= N.
    cofaces: Vec<Vec<Vec<usize>>>,
    /// `codegens[n][i]`: s^i as index map X^{n+1} -> X^n, 0 <= n < N.
    codegens: Vec<Vec<Vec<usize>>>,
}

impl TruncCosimpSet {
    pub fn new(
        levels: Vec<FinSet>,
        cofaces: Vec<Vec<Vec<usize>>>,
        codegens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let x = TruncCosimpSet { levels, cofaces, codegens };
        x.validate()?;
        Ok(x)
    }

    pub fn constant(labels: Vec<String>, n_top: usize) -> Result<Self> {
        let set = FinSet::new(labels)?;
        let idmap: Vec<usize> = (0..set.len()).collect();
        let levels = vec![set; n_top + 1];
        let cofaces = (1..=n_top).map(|n| vec![idmap.clone(); n + 1]).collect();
        let codegens = (0..n_top).map(|n| vec![idmap.clone(); n + 1]).collect();
        TruncCosimpSet::new(levels, cofaces, codegens)
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FinSet {
        &self.levels[n]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// d^i: X^{n-1} -> X^n
    pub fn coface(&self, n: usize, i: usize, x: usize) -> usize {
        self.cofaces[n - 1][i][x]
    }

    /// s^i: X^{n+1} -> X^n
    pub fn codegen(&self, n: usize, i: usize, x: usize) -> usize {
        self.codegens[n][i][x]
    }

    /// Covariant action along an ordinal map: X(theta): X^{src} -> X^{tgt}.
    pub fn apply_op(&self, theta: &OrdMap, x: usize) -> usize {
        let mut cur = x;
        for e in theta.elementary_factors() {
            cur = match e {
                Elementary::Coface { i, level } => self.coface(level, i, cur),
                Elementary::Codegeneracy { i, level } => self.codegen(level, i, cur),
            };
        }
        cur
    }

    fn check_tables(&self) -> Result<()> {
        let n_top = self.trunc();
        if self.cofaces.len() != n_top || self.codegens.len() != n_top {
            return Err(Error::ShapeMismatch("cosimplicial table count != truncation".into()));
        }
        for n in 1..=n_top {
            if self.cofaces[n - 1].len() != n + 1 {
                return Err(Error::ShapeMismatch(format!("level {} needs {} cofaces", n, n + 1)));
            }
            for (i, t) in self.cofaces[n - 1].iter().enumerate() {
                if t.len() != self.levels[n - 1].len()
                    || t.iter().any(|&y| y >= self.levels[n].len())
                {
                    return Err(Error::ShapeMismatch(format!("coface ({},{}) malformed", n, i)));
                }
            }
        }
        for n in 0..n_top {
            if self.codegens[n].len() != n + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "level {} needs {} codegeneracies",
                    n,
                    n + 1
                )));
            }
            for (i, t) in self.codegens[n].iter().enumerate() {
                if t.len() != self.levels[n + 1].len()
                    || t.iter().any(|&y| y >= self.levels[n].len())
                {
                    return Err(Error::ShapeMismatch(format!("codegen ({},{}) malformed", n, i)));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive cosimplicial identity suite within the truncation.
    pub fn validate(&self) -> Result<()> {
        self.check_tables()?;
        let n_top = self.trunc();
        // d^j d^i = d^i d^{j-1} for i < j  (X^{n-1} -> X^{n+1})
        for n in 1..n_top {
            for j in 1..=n + 1 {
                for i in 0..j.min(n + 1) {
                    for x in 0..self.levels[n - 1].len() {
                        let lhs = self.coface(n + 1, j, self.coface(n, i, x));
                        let rhs = self.coface(n + 1, i, self.coface(n, j - 1, x));
                        if lhs != rhs {
                            return Err(Error::Validation(format!(
                                "cosimplicial identity d^{j} d^{i} = d^{i} d^{} fails at level {} on '{}'",
                                j - 1,
                                n - 1,
                                self.levels[n - 1].label(x)
                            )));
                        }
                    }
                }
            }
        }
        // s^j s^i = s^i s^{j+1} for i <= j  (X^{n+2} -> X^n)
        for n in 0..n_top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    for x in 0..self.levels[n + 2].len() {
                        let lhs = self.codegen(n, j, self.codegen(n + 1, i, x));
                        let rhs = self.codegen(n, i, self.codegen(n + 1, j + 1, x));
                        if lhs != rhs {
                            return Err(Error::Validation(format!(
                                "cosimplicial identity s^{j} s^{i} = s^{i} s^{} fails at level {} on '{}'",
                                j + 1,
                                n + 2,
                                self.levels[n + 2].label(x)
                            )));
                        }
                    }
                }
            }
        }
        // s^j d^i mixed identities  (X^n -> X^n)
        for n in 0..n_top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for x in 0..self.levels[n].len() {
                        let lhs = self.codegen(n, j, self.coface(n + 1, i, x));
                        let ok = if i == j || i == j + 1 {
                            lhs == x
                        } else if i < j {
                            lhs == self.coface(n, i, self.codegen(n - 1, j - 1, x))
                        } else {
                            lhs == self.coface(n, i - 1, self.codegen(n - 1, j, x))
                        };
                        if !ok {
                            return Err(Error::Validation(format!(
                                "cosimplicial identity s^{j} d^{i} fails at level {} on '{}'",
                                n,
                                self.levels[n].label(x)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Map of truncated cosimplicial sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosimpSetMap {
    pub levels: Vec<Vec<usize>>,
}

impl CosimpSetMap {
    pub fn new(
        src: &TruncCosimpSet,
        tgt: &TruncCosimpSet,
        levels: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if src.trunc() != tgt.trunc() || levels.len() != src.levels.len() {
            return Err(Error::ShapeMismatch("cosimplicial map truncation mismatch".into()));
        }
        for (n, t) in levels.iter().enumerate() {
            if t.len() != src.levels[n].len() || t.iter().any(|&y| y >= tgt.levels[n].len()) {
                return Err(Error::ShapeMismatch(format!("map level {} malformed", n)));
            }
        }
        let f = CosimpSetMap { levels };
        for n in 1..=src.trunc() {
            for i in 0..=n {
                for x in 0..src.levels[n - 1].len() {
                    if f.levels[n][src.coface(n, i, x)] != tgt.coface(n, i, f.levels[n - 1][x]) {
                        return Err(Error::Validation(format!(
                            "map does not commute with d^{i} into level {n}"
                        )));
                    }
                }
            }
        }
        for n in 0..src.trunc() {
            for i in 0..=n {
                for x in 0..src.levels[n + 1].len() {
                    if f.levels[n][src.codegen(n, i, x)] != tgt.codegen(n, i, f.levels[n + 1][x]) {
                        return Err(Error::Validation(format!(
                            "map does not commute with s^{i} into level {n}"
                        )));
                    }
                }
            }
        }
        Ok(f)
    }
}

/// Maximal augmentation: the equalizer of the two cofaces X^0 => X^1.
pub fn maximal_augmentation(x: &TruncCosimpSet) -> Result<Vec<usize>> {
    if x.trunc() < 1 {
        return Err(Error::TruncationTooSmall { needed: 1, available: x.trunc() });
    }
    Ok((0..x.levels[0].len())
        .filter(|&a| x.coface(1, 0, a) == x.coface(1, 1, a))
        .collect())
}

/// The inverse limit over the truncated index category, by brute-force cone
/// enumeration: tuples compatible with every ordinal map. Returned as the
/// level-0 components (the projection to level 0 is injective on cones,
/// asserted).
pub fn inverse_limit_trunc(x: &TruncCosimpSet) -> Result<Vec<usize>> {
    if x.trunc() < 1 {
        return Err(Error::TruncationTooSmall { needed: 1, available: x.trunc() });
    }
    let n_top = x.trunc();
    let morphisms = all_morphisms(n_top, false);
    let sizes: Vec<usize> = x.level_sizes();
    let mut cones: Vec<Vec<usize>> = Vec::new();
    let mut tuple = vec![0usize; n_top + 1];
    if sizes.contains(&0) {
        return Ok(Vec::new());
    }
    'outer: loop {
        let compatible = morphisms
            .iter()
            .all(|theta| x.apply_op(theta, tuple[theta.src()]) == tuple[theta.tgt()]);
        if compatible {
            cones.push(tuple.clone());
        }
        // odometer
        let mut k = 0;
        loop {
            if k > n_top {
                break 'outer;
            }
            tuple[k] += 1;
            if tuple[k] < sizes[k] {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
    }
    let mut heads: Vec<usize> = cones.iter().map(|c| c[0]).collect();
    let before = heads.len();
    heads.sort_unstable();
    heads.dedup();
    assert_eq!(before, heads.len(), "projection to level 0 must be injective on cones");
    Ok(heads)
}

/// Tot of a discrete cosimplicial space: for a cosimplicial set the total
/// space is the honest inverse limit, returned through the level-0
/// identification.
pub fn tot_discrete(x: &TruncCosimpSet) -> Result<Vec<usize>> {
    inverse_limit_trunc(x)
}

/// Matching object of a truncated cosimplicial set at level `n`: tuples
/// `(x_0, ..., x_{n-1})` in `(X^{n-1})^n` with `s^i x_j = s^{j-1} x_i` for
/// `i < j`, together with the canonical map `s: X^n -> M^{n-1}X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSet {
    pub tuples: Vec<Vec<usize>>,
    /// `s_map[x]` = index of `(s^0 x, ..., s^{n-1} x)` in `tuples`.
    pub s_map: Vec<usize>,
}

pub fn matching_set(x: &TruncCosimpSet, n: usize) -> Result<MatchingSet> {
    if n < 1 || n > x.trunc() {
        return Err(Error::DegreeOutOfRange { degree: n as i64, lo: 1, hi: x.trunc() as i64 });
    }
    let size = x.levels[n - 1].len();
    let mut tuples = Vec::new();
    let mut tuple = vec![0usize; n];
    if size == 0 && n > 0 {
        // no tuples unless n = 0 (not reachable: n >= 1)
        if size == 0 {
            let s_map = Vec::new();
            return Ok(MatchingSet { tuples, s_map });
        }
    }
    'outer: loop {
        let ok = (0..n).all(|j| {
            (0..j).all(|i| {
                x.codegen(n - 2, i, tuple[j]) == x.codegen(n - 2, j - 1, tuple[i])
            })
        });
        if ok {
            tuples.push(tuple.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                break 'outer;
            }
            tuple[k] += 1;
            if tuple[k] < size {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
    }
    let index_of = |t: &[usize]| tuples.iter().position(|u| u == t);
    let s_map = (0..x.levels[n].len())
        .map(|a| {
            let t: Vec<usize> = (0..n).map(|i| x.codegen(n - 1, i, a)).collect();
            index_of(&t).expect("s lands in the matching set")
        })
        .collect();
    Ok(MatchingSet { tuples, s_map })
}

/// Is the canonical map `s: X^n -> M^{n-1}X` surjective?
pub fn matching_surjective(x: &TruncCosimpSet, n: usize) -> Result<bool> {
    let m = matching_set(x, n)?;
    let mut hit = vec![false; m.tuples.len()];
    for &t in &m.s_map {
        hit[t] = true;
    }
    Ok(hit.iter().all(|&h| h))
}

/// The map `M^{n-1}X -> M^{n-1}Y` induced by a cosimplicial map, and the
/// commutation with both canonical maps (naturality), checked.
pub fn matching_map_natural(
    f: &CosimpSetMap,
    x: &TruncCosimpSet,
    y: &TruncCosimpSet,
    n: usize,
) -> Result<bool> {
    let mx = matching_set(x, n)?;
    let my = matching_set(y, n)?;
    let induced: Vec<usize> = mx
        .tuples
        .iter()
        .map(|t| {
            let img: Vec<usize> = t.iter().map(|&a| f.levels[n - 1][a]).collect();
            my.tuples
                .iter()
                .position(|u| *u == img)
                .expect("induced tuple satisfies the matching conditions")
        })
        .collect();
    // naturality: induced(s_X(a)) = s_Y(f(a)) for all a in X^n
    Ok((0..x.level(n).len()).all(|a| induced[mx.s_map[a]] == my.s_map[f.levels[n][a]]))
}

/// The cosimplicial set of vertices of the standard cosimplicial space:
/// level n is {0, ..., n} with the ordinal maps acting.
pub fn delta_vertices(n_top: usize) -> TruncCosimpSet {
    let levels: Vec<FinSet> = (0..=n_top)
        .map(|n| FinSet::new((0..=n).map(|v| format!("{}", v)).collect()).unwrap())
        .collect();
    // labels "0".."n" sort lexicographically = numerically for n <= 9
    assert!(n_top <= 9, "delta_vertices supports truncation <= 9");
    let cofaces = (1..=n_top)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let d = OrdMap::coface(i, n);
                    (0..n).map(|v| d.apply(v)).collect()
                })
                .collect()
        })
        .collect();
    let codegens = (0..n_top)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let s = OrdMap::codegeneracy(i, n);
                    (0..=n + 1).map(|v| s.apply(v)).collect()
                })
                .collect()
        })
        .collect();
    TruncCosimpSet::new(levels, cofaces, codegens).expect("ordinal maps are cosimplicial")
}

/// N-truncated cosimplicial space: levelwise truncated simplicial sets with
/// simplicial structure maps satisfying the cosimplicial identities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncCosimpSpace {
    levels: Vec<TruncSimpSet>,
    cofaces: Vec<Vec<SimpMap>>,
    codegens: Vec<Vec<SimpMap>>,
}

impl TruncCosimpSpace {
    pub fn new(
        levels: Vec<TruncSimpSet>,
        cofaces: Vec<Vec<SimpMap>>,
        codegens: Vec<Vec<SimpMap>>,
    ) -> Result<Self> {
        let x = TruncCosimpSpace { levels, cofaces, codegens };
        x.validate()?;
        Ok(x)
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn simp_trunc(&self) -> usize {
        self.levels[0].trunc()
    }

    pub fn level(&self, n: usize) -> &TruncSimpSet {
        &self.levels[n]
    }

    pub fn coface(&self, n: usize, i: usize) -> &SimpMap {
        &self.cofaces[n - 1][i]
    }

    pub fn codegen(&self, n: usize, i: usize) -> &SimpMap {
        &self.codegens[n][i]
    }

    /// X(theta) as a simplicial map, via elementary factorization.
    pub fn map_along(&self, theta: &OrdMap) -> SimpMap {
        let mut cur = SimpMap::identity(&self.levels[theta.src()]);
        for e in theta.elementary_factors() {
            let next = match e {
                Elementary::Coface { i, level } => &self.cofaces[level - 1][i],
                Elementary::Codegeneracy { i, level } => &self.codegens[level][i],
            };
            cur = cur.then(next);
        }
        cur
    }

    pub fn validate(&self) -> Result<()> {
        let n_top = self.trunc();
        let m = self.simp_trunc();
        if self.levels.iter().any(|l| l.trunc() != m) {
            return Err(Error::ShapeMismatch(
                "all levels must share one simplicial truncation".into(),
            ));
        }
        if self.cofaces.len() != n_top || self.codegens.len() != n_top {
            return Err(Error::ShapeMismatch("cosimplicial table count != truncation".into()));
        }
        // each structure map must be a valid simplicial map
        for n in 1..=n_top {
            if self.cofaces[n - 1].len() != n + 1 {
                return Err(Error::ShapeMismatch(format!("level {} needs {} cofaces", n, n + 1)));
            }
            for (i, f) in self.cofaces[n - 1].iter().enumerate() {
                SimpMap::new(&self.levels[n - 1], &self.levels[n], f.levels.clone()).map_err(
                    |e| Error::Validation(format!("coface d^{i} into level {n}: {e}")),
                )?;
            }
        }
        for n in 0..n_top {
            if self.codegens[n].len() != n + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "level {} needs {} codegeneracies",
                    n,
                    n + 1
                )));
            }
            for (i, f) in self.codegens[n].iter().enumerate() {
                SimpMap::new(&self.levels[n + 1], &self.levels[n], f.levels.clone()).map_err(
                    |e| Error::Validation(format!("codegeneracy s^{i} into level {n}: {e}")),
                )?;
            }
        }
        // cosimplicial identities as map equalities
        for n in 1..n_top {
            for j in 1..=n + 1 {
                for i in 0..j.min(n + 1) {
                    let lhs = self.cofaces[n - 1][i].then(&self.cofaces[n][j]);
                    let rhs = self.cofaces[n - 1][j - 1].then(&self.cofaces[n][i]);
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "space identity d^{j} d^{i} fails into level {}",
                            n + 1
                        )));
                    }
                }
            }
        }
        for n in 0..n_top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.codegens[n + 1][i].then(&self.codegens[n][j]);
                    let rhs = self.codegens[n + 1][j + 1].then(&self.codegens[n][i]);
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "space identity s^{j} s^{i} fails from level {}",
                            n + 2
                        )));
                    }
                }
            }
        }
        for n in 0..n_top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.cofaces[n][i].then(&self.codegens[n][j]);
                    let rhs = if i == j || i == j + 1 {
                        SimpMap::identity(&self.levels[n])
                    } else if i < j {
                        self.codegens[n - 1][j - 1].then(&self.cofaces[n - 1][i])
                    } else {
                        self.codegens[n - 1][j].then(&self.cofaces[n - 1][i - 1])
                    };
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "space identity s^{j} d^{i} fails at level {n}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The cosimplicial space `n -> Delta^n`, materialized at cosimplicial
/// truncation `n_top` and simplicial truncation `m_top`. Structure maps are
/// postcomposition with the ordinal maps.
pub fn delta_space(n_top: usize, m_top: usize) -> TruncCosimpSpace {
    let levels: Vec<TruncSimpSet> = (0..=n_top).map(|n| standard_simplex(n, m_top)).collect();
    let post = |theta: &OrdMap, from: usize| -> SimpMap {
        // simplex w: [m] -> [from] goes to theta . w
        let to = theta.tgt();
        let tables = (0..=m_top)
            .map(|m| {
                hom_set(m, from)
                    .iter()
                    .map(|w| {
                        let composed = w.then(theta);
                        levels[to]
                            .level(m)
                            .index(&label_of_monotone(composed.values()))
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        SimpMap::new(&levels[from], &levels[to], tables).expect("postcomposition is simplicial")
    };
    let cofaces = (1..=n_top)
        .map(|n| (0..=n).map(|i| post(&OrdMap::coface(i, n), n - 1)).collect())
        .collect();
    let codegens = (0..n_top)
        .map(|n| (0..=n).map(|i| post(&OrdMap::codegeneracy(i, n), n + 1)).collect())
        .collect();
    TruncCosimpSpace::new(levels, cofaces, codegens).expect("delta is a cosimplicial space")
}

fn label_of_monotone(vals: &[usize]) -> String {
    vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
}

/// Levelwise skeleton of a cosimplicial space.
pub fn skeleton_space(x: &TruncCosimpSpace, k: usize) -> TruncCosimpSpace {
    let levels: Vec<TruncSimpSet> = x.levels.iter().map(|l| skeleton(l, k)).collect();
    // structure maps restrict: recompute tables through labels
    let restrict = |f: &SimpMap, src_old: &TruncSimpSet, src_new: &TruncSimpSet, tgt_old: &TruncSimpSet, tgt_new: &TruncSimpSet| -> SimpMap {
        let tables = (0..=src_new.trunc())
            .map(|m| {
                (0..src_new.level(m).len())
                    .map(|xx| {
                        let old = src_old.level(m).index(src_new.level(m).label(xx)).unwrap();
                        let img = f.levels[m][old];
                        tgt_new.level(m).index(tgt_old.level(m).label(img)).unwrap()
                    })
                    .collect()
            })
            .collect();
        SimpMap::new(src_new, tgt_new, tables).expect("skeleton is closed under structure maps")
    };
    let cofaces = (1..=x.trunc())
        .map(|n| {
            (0..=n)
                .map(|i| restrict(&x.cofaces[n - 1][i], &x.levels[n - 1], &levels[n - 1], &x.levels[n], &levels[n]))
                .collect()
        })
        .collect();
    let codegens = (0..x.trunc())
        .map(|n| {
            (0..=n)
                .map(|i| restrict(&x.codegens[n][i], &x.levels[n + 1], &levels[n + 1], &x.levels[n], &levels[n]))
                .collect()
        })
        .collect();
    TruncCosimpSpace::new(levels, cofaces, codegens).expect("levelwise skeleton is cosimplicial")
}

/// Map of truncated cosimplicial spaces (levelwise simplicial maps commuting
/// with the cosimplicial structure).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosimpSpaceMap {
    pub levels: Vec<SimpMap>,
}

impl CosimpSpaceMap {
    pub fn new(
        src: &TruncCosimpSpace,
        tgt: &TruncCosimpSpace,
        levels: Vec<SimpMap>,
    ) -> Result<Self> {
        if src.trunc() != tgt.trunc() || levels.len() != src.levels.len() {
            return Err(Error::ShapeMismatch("cosimplicial space map truncation mismatch".into()));
        }
        for (n, f) in levels.iter().enumerate() {
            SimpMap::new(&src.levels[n], &tgt.levels[n], f.levels.clone())
                .map_err(|e| Error::Validation(format!("component {n}: {e}")))?;
        }
        let f = CosimpSpaceMap { levels };
        for n in 1..=src.trunc() {
            for i in 0..=n {
                let lhs = src.cofaces[n - 1][i].then(&f.levels[n]);
                let rhs = f.levels[n - 1].then(&tgt.cofaces[n - 1][i]);
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "space map not natural for d^{i} into level {n}"
                    )));
                }
            }
        }
        for n in 0..src.trunc() {
            for i in 0..=n {
                let lhs = src.codegens[n][i].then(&f.levels[n]);
                let rhs = f.levels[n + 1].then(&tgt.codegens[n][i]);
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "space map not natural for s^{i} into level {n}"
                    )));
                }
            }
        }
        Ok(f)
    }
}

/// All n-simplices of `X^n` whose generated map `Delta^n -> X^n` restricts
/// along the skeleton inclusion to `f` and satisfies the matching-square
/// condition; each candidate is verified to yield a valid extension
/// `sk_n Delta -> X`.
///
/// `f` must be a map `sk_{n-1} Delta -> X` at the same truncations as `x`.
pub fn extension_candidates(
    x: &TruncCosimpSpace,
    f: &CosimpSpaceMap,
    n: usize,
) -> Result<Vec<usize>> {
    let n_top = x.trunc();
    let m_top = x.simp_trunc();
    if n > n_top || n > m_top {
        return Err(Error::TruncationTooSmall { needed: n, available: n_top.min(m_top) });
    }
    if n < 1 {
        return Err(Error::DegreeOutOfRange { degree: 0, lo: 1, hi: n_top as i64 });
    }
    let delta = delta_space(n_top, m_top);
    let sk_prev = skeleton_space(&delta, n - 1);
    // validate f against the expected source
    let f = CosimpSpaceMap::new(&sk_prev, x, f.levels.iter().cloned().collect())
        .map_err(|e| Error::Validation(format!("invalid extension input: {e}")))?;

    let xn = x.level(n);
    let mut candidates = Vec::new();
    'cand: for cand in 0..xn.level(n).len() {
        // (a) restriction along sk_{n-1} Delta^n agrees with f at level n
        for m in 0..=m_top {
            for w in hom_set(m, n) {
                if w.is_surjective() {
                    continue;
                }
                let in_sk = sk_prev
                    .level(n)
                    .level(m)
                    .index(&label_of_monotone(w.values()))
                    .expect("non-surjective simplices lie in the skeleton");
                let lhs = xn.apply_op(&w, cand);
                if lhs != f.levels[n].levels[m][in_sk] {
                    continue 'cand;
                }
            }
        }
        // (b) matching condition: s^i(cand) = f^{n-1}(sigma_i) for each i
        for i in 0..n {
            let sigma = OrdMap::codegeneracy(i, n - 1);
            let sigma_simplex = sk_prev
                .level(n - 1)
                .level(n)
                .index(&label_of_monotone(sigma.values()))
                .expect("degeneracies lie in the full level");
            let lhs = x.codegen(n - 1, i).levels[n][cand];
            if lhs != f.levels[n - 1].levels[n][sigma_simplex] {
                continue 'cand;
            }
        }
        // verified extension to sk_n Delta
        build_extension(x, &f, n, cand)?;
        candidates.push(cand);
    }
    Ok(candidates)
}

/// Construct and validate the extension `sk_n Delta -> X` determined by `f`
/// on the (n-1)-skeleton and the candidate n-simplex.
fn build_extension(
    x: &TruncCosimpSpace,
    f: &CosimpSpaceMap,
    n: usize,
    cand: usize,
) -> Result<CosimpSpaceMap> {
    let n_top = x.trunc();
    let m_top = x.simp_trunc();
    let delta = delta_space(n_top, m_top);
    let sk_prev = skeleton_space(&delta, n - 1);
    let sk_n = skeleton_space(&delta, n);
    let mut levels = Vec::new();
    for k in 0..=n_top {
        let mut tables = Vec::new();
        for m in 0..=m_top {
            let mut table = Vec::new();
            for idx in 0..sk_n.level(k).level(m).len() {
                let label = sk_n.level(k).level(m).label(idx);
                let w = parse_monotone(label, m, k);
                // epi-mono factorization w = gamma . w'
                let (gamma, w_surj) = epi_mono(&w);
                let n_prime = gamma.src();
                let value_at_prime = if n_prime < n {
                    // f at cosimplicial level n_prime on the surjection
                    let pos = sk_prev
                        .level(n_prime)
                        .level(m)
                        .index(&label_of_monotone(w_surj.values()))
                        .expect("all simplices present below the skeleton degree");
                    f.levels[n_prime].levels[m][pos]
                } else {
                    // generated by the candidate simplex
                    x.level(n).apply_op(&w_surj, cand)
                };
                table.push(x.map_along(&gamma).levels[m][value_at_prime]);
            }
            tables.push(table);
        }
        levels.push(SimpMap { levels: tables });
    }
    let ext = CosimpSpaceMap::new(&sk_n, x, levels)
        .map_err(|e| Error::Validation(format!("candidate does not extend: {e}")))?;
    // the extension restricts to f on the smaller skeleton
    for k in 0..=n_top {
        for m in 0..=m_top {
            for idx in 0..sk_prev.level(k).level(m).len() {
                let label = sk_prev.level(k).level(m).label(idx);
                let big = sk_n.level(k).level(m).index(label).unwrap();
                if ext.levels[k].levels[m][big] != f.levels[k].levels[m][idx] {
                    return Err(Error::Validation(
                        "extension does not restrict to the given map".into(),
                    ));
                }
            }
        }
    }
    Ok(ext)
}

fn parse_monotone(label: &str, src: usize, tgt: usize) -> OrdMap {
    let vals: Vec<usize> = label.split('.').map(|p| p.parse().unwrap()).collect();
    OrdMap::new(src, tgt, vals).expect("labels encode monotone maps")
}

/// Unique epi-mono factorization `w = mono . epi`.
fn epi_mono(w: &OrdMap) -> (OrdMap, OrdMap) {
    let mut image: Vec<usize> = w.values().to_vec();
    image.dedup();
    let n_prime = image.len() - 1;
    let mono = OrdMap::new(n_prime, w.tgt(), image.clone()).unwrap();
    let epi_vals: Vec<usize> = w
        .values()
        .iter()
        .map(|v| image.binary_search(v).unwrap())
        .collect();
    let epi = OrdMap::new(w.src(), n_prime, epi_vals).unwrap();
    (mono, epi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn augmentation_of_delta_vertices_is_empty() {
        let x = delta_vertices(2);
        assert!(maximal_augmentation(&x).unwrap().is_empty());
        assert!(inverse_limit_trunc(&x).unwrap().is_empty());
    }

    #[test]
    fn augmentation_of_constant() {
        let x = TruncCosimpSet::constant(vec!["a".into(), "b".into()], 2).unwrap();
        assert_eq!(maximal_augmentation(&x).unwrap().len(), 2);
        assert_eq!(inverse_limit_trunc(&x).unwrap().len(), 2);
        // Tot of a discrete object is the inverse limit
        assert_eq!(tot_discrete(&x).unwrap(), maximal_augmentation(&x).unwrap());
    }

    #[test]
    fn matching_of_delta_vertices() {
        let x = delta_vertices(2);
        let m = matching_set(&x, 2).unwrap();
        assert_eq!(m.tuples.len(), 4);
        assert_eq!(x.level(2).len(), 3);
        assert!(!matching_surjective(&x, 2).unwrap());
    }

    #[test]
    fn matching_of_constant_is_diagonal() {
        let x = TruncCosimpSet::constant(vec!["a".into(), "b".into(), "c".into()], 3).unwrap();
        for n in 1..=3 {
            let m = matching_set(&x, n).unwrap();
            assert_eq!(m.tuples.len(), 3, "diagonal tuples only at n={}", n);
            assert!(matching_surjective(&x, n).unwrap());
        }
    }

    #[test]
    fn matching_at_one_is_level_zero() {
        let x = delta_vertices(2);
        let m = matching_set(&x, 1).unwrap();
        assert_eq!(m.tuples.len(), x.level(0).len());
        // s = s^0
        for a in 0..x.level(1).len() {
            assert_eq!(m.tuples[m.s_map[a]], vec![x.codegen(0, 0, a)]);
        }
    }

    #[test]
    fn identity_violation_rejected() {
        // corrupt a coface of the constant cosimplicial set on two points
        let x = TruncCosimpSet::constant(vec!["a".into(), "b".into()], 2).unwrap();
        let mut cofaces = x.cofaces.clone();
        cofaces[0][0] = vec![1, 0]; // d^0 now swaps, breaking s^0 d^0 = id
        assert!(TruncCosimpSet::new(x.levels.clone(), cofaces, x.codegens.clone()).is_err());
    }

    #[test]
    fn delta_space_is_valid_and_skeleton_works() {
        let d = delta_space(2, 2);
        assert_eq!(d.level(2).level_sizes(), vec![3, 6, 10]);
        let sk0 = skeleton_space(&d, 0);
        // sk_0(Delta^1) has 2 vertices and 2 degenerate edges
        assert_eq!(sk0.level(1).level_sizes()[0], 2);
        assert_eq!(sk0.level(1).level_sizes()[1], 2);
    }

    #[test]
    fn extension_of_identity_contains_identity_simplex() {
        let n = 1;
        let x = delta_space(2, 2);
        let sk = skeleton_space(&x, n - 1);
        // f = inclusion of the skeleton into delta
        let levels = (0..=2usize)
            .map(|k| {
                let tables = (0..=2usize)
                    .map(|m| {
                        (0..sk.level(k).level(m).len())
                            .map(|i| {
                                x.level(k)
                                    .level(m)
                                    .index(sk.level(k).level(m).label(i))
                                    .unwrap()
                            })
                            .collect()
                    })
                    .collect();
                SimpMap { levels: tables }
            })
            .collect();
        let f = CosimpSpaceMap { levels };
        let cands = extension_candidates(&x, &f, n).unwrap();
        let iota = x.level(n).level(n).index("0.1").unwrap();
        assert!(cands.contains(&iota));
    }

    #[test]
    fn extension_on_zero_skeletal_target() {
        // X = sk_0 Delta, f the skeleton inclusion (identity on sk_0):
        // no 1-simplex of sk_0 Delta^1 has distinct endpoints, so no
        // candidates exist.
        let n = 1;
        let delta = delta_space(2, 2);
        let x = skeleton_space(&delta, 0);
        let f = CosimpSpaceMap {
            levels: (0..=2usize).map(|k| SimpMap::identity(x.level(k))).collect(),
        };
        let cands = extension_candidates(&x, &f, n).unwrap();
        assert!(cands.is_empty());
    }

    #[test]
    fn extension_on_constant_point() {
        // X constant on a point: exactly one candidate
        let pt = standard_simplex(0, 2);
        let idmap = SimpMap::identity(&pt);
        let x = TruncCosimpSpace::new(
            vec![pt.clone(), pt.clone(), pt.clone()],
            vec![vec![idmap.clone(); 2], vec![idmap.clone(); 3]],
            vec![vec![idmap.clone()], vec![idmap.clone(); 2]],
        )
        .unwrap();
        let sk = skeleton_space(&delta_space(2, 2), 0);
        let f = CosimpSpaceMap {
            levels: (0..=2usize)
                .map(|k| {
                    SimpMap {
                        levels: (0..=2usize)
                            .map(|m| vec![0; sk.level(k).level(m).len()])
                            .collect(),
                    }
                })
                .collect(),
        };
        let cands = extension_candidates(&x, &f, 1).unwrap();
        assert_eq!(cands.len(), 1);
    }

    #[test]
    fn lemma1_limit_equals_augmentation_on_mixed_instance() {
        // a small non-constant instance: vertices of delta has empty both;
        // disjoint union with a constant has the constant part only
        let x = delta_vertices(3);
        let aug = maximal_augmentation(&x).unwrap();
        let lim = inverse_limit_trunc(&x).unwrap();
        assert_eq!(aug, lim);
    }
}
