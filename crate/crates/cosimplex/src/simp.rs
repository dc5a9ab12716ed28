//! Truncated simplicial sets and simplicial abelian groups: skeleta,
//! normalized chains and integral homology, the fundamental groupoid with a
//! coset-enumeration completion, and the levelwise free abelian group
//! construction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fgab::{AbHom, ChainComplex, FgAbGroup};
use crate::gpd::FinGroupoid;
use crate::intmat::IntMat;

/// Finite set with sorted, unique string labels; elements are addressed by
/// index into the sorted order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinSet {
    labels: Vec<String>,
}

impl FinSet {
    pub fn new(mut labels: Vec<String>) -> Result<Self> {
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("duplicate labels in finite set".into()));
        }
        Ok(FinSet { labels })
    }

    pub fn empty() -> Self {
        FinSet { labels: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }
}

/// M-truncated simplicial set with explicit face and degeneracy tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSimpSet {
    levels: Vec<FinSet>,
    /// `faces[m-1][i]`: d_i as index map X_m -> X_{m-1}, for 1 <= m <= M.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[m][i]`: s_i as index map X_m -> X_{m+1}, for 0 <= m < M.
    degens: Vec<Vec<Vec<usize>>>,
}

impl TruncSimpSet {
    pub fn new(
        levels: Vec<FinSet>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let x = TruncSimpSet { levels, faces, degens };
        x.validate()?;
        Ok(x)
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, m: usize) -> &FinSet {
        &self.levels[m]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// d_i: X_m -> X_{m-1}
    pub fn face(&self, m: usize, i: usize, x: usize) -> usize {
        self.faces[m - 1][i][x]
    }

    /// s_i: X_m -> X_{m+1}
    pub fn degen(&self, m: usize, i: usize, x: usize) -> usize {
        self.degens[m][i][x]
    }

    fn check_tables(&self) -> Result<()> {
        let m_top = self.trunc();
        if self.faces.len() != m_top {
            return Err(Error::ShapeMismatch("face table count != truncation".into()));
        }
        if self.degens.len() != m_top {
            return Err(Error::ShapeMismatch("degeneracy table count != truncation".into()));
        }
        for m in 1..=m_top {
            if self.faces[m - 1].len() != m + 1 {
                return Err(Error::ShapeMismatch(format!("level {} needs {} faces", m, m + 1)));
            }
            for (i, t) in self.faces[m - 1].iter().enumerate() {
                if t.len() != self.levels[m].len() {
                    return Err(Error::ShapeMismatch(format!("face ({},{}) wrong length", m, i)));
                }
                if t.iter().any(|&y| y >= self.levels[m - 1].len()) {
                    return Err(Error::Validation(format!("face ({},{}) out of range", m, i)));
                }
            }
        }
        for m in 0..m_top {
            if self.degens[m].len() != m + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "level {} needs {} degeneracies",
                    m,
                    m + 1
                )));
            }
            for (i, t) in self.degens[m].iter().enumerate() {
                if t.len() != self.levels[m].len() {
                    return Err(Error::ShapeMismatch(format!("degen ({},{}) wrong length", m, i)));
                }
                if t.iter().any(|&y| y >= self.levels[m + 1].len()) {
                    return Err(Error::Validation(format!("degen ({},{}) out of range", m, i)));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive simplicial identity suite within the truncation. Reports
    /// the first violated identity by name.
    pub fn validate(&self) -> Result<()> {
        self.check_tables()?;
        let m_top = self.trunc();
        // d_i d_j = d_{j-1} d_i for i < j, on X_m, m >= 2
        for m in 2..=m_top {
            for j in 1..=m {
                for i in 0..j {
                    for x in 0..self.levels[m].len() {
                        let lhs = self.face(m - 1, i, self.face(m, j, x));
                        let rhs = self.face(m - 1, j - 1, self.face(m, i, x));
                        if lhs != rhs {
                            return Err(Error::Validation(format!(
                                "simplicial identity d_{i} d_{j} = d_{} d_{i} fails at level {m} on '{}'",
                                j - 1,
                                self.levels[m].label(x)
                            )));
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j, X_m -> X_{m+2}
        for m in 0..m_top.saturating_sub(1) {
            for j in 0..=m {
                for i in 0..=j {
                    for x in 0..self.levels[m].len() {
                        let lhs = self.degen(m + 1, i, self.degen(m, j, x));
                        let rhs = self.degen(m + 1, j + 1, self.degen(m, i, x));
                        if lhs != rhs {
                            return Err(Error::Validation(format!(
                                "simplicial identity s_{i} s_{j} = s_{} s_{i} fails at level {m} on '{}'",
                                j + 1,
                                self.levels[m].label(x)
                            )));
                        }
                    }
                }
            }
        }
        // d_i s_j relations, X_m -> X_m
        for m in 0..m_top {
            for j in 0..=m {
                for i in 0..=m + 1 {
                    for x in 0..self.levels[m].len() {
                        let sx = self.degen(m, j, x);
                        let lhs = self.face(m + 1, i, sx);
                        let ok = if i == j || i == j + 1 {
                            lhs == x
                        } else if i < j {
                            // d_i s_j = s_{j-1} d_i (needs m >= 1)
                            lhs == self.degen(m - 1, j - 1, self.face(m, i, x))
                        } else {
                            // i > j+1: d_i s_j = s_j d_{i-1}
                            lhs == self.degen(m - 1, j, self.face(m, i - 1, x))
                        };
                        if !ok {
                            return Err(Error::Validation(format!(
                                "simplicial identity d_{i} s_{j} fails at level {m} on '{}'",
                                self.levels[m].label(x)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Is simplex `x` at level `m` degenerate (in the image of some s_i)?
    pub fn is_degenerate(&self, m: usize, x: usize) -> bool {
        if m == 0 {
            return false;
        }
        (0..m).any(|i| {
            (0..self.levels[m - 1].len()).any(|y| self.degen(m - 1, i, y) == x)
        })
    }

    /// Indices of nondegenerate simplices at level `m`.
    pub fn nondegenerate(&self, m: usize) -> Vec<usize> {
        (0..self.levels[m].len())
            .filter(|&x| !self.is_degenerate(m, x))
            .collect()
    }

    /// Apply the simplicial operator induced by an ordinal map
    /// `w: [a] -> [b]` to a simplex at level `b`, landing at level `a`
    /// (contravariant action).
    pub fn apply_op(&self, w: &crate::ordmap::OrdMap, x: usize) -> usize {
        use crate::ordmap::Elementary;
        // X(w) = X(e_1) ; ... applied in reverse of the elementary order:
        // w = f_k . ... . f_1 as functions, X(w) = X(f_1) . ... . X(f_k).
        let mut cur = x;
        for e in w.elementary_factors().iter().rev() {
            cur = match e {
                Elementary::Coface { i, level } => self.face(*level, *i, cur),
                Elementary::Codegeneracy { i, level } => self.degen(*level, *i, cur),
            };
        }
        cur
    }
}

/// Simplicial map between truncated simplicial sets of the same truncation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpMap {
    /// `levels[m][x]`: image index at level m.
    pub levels: Vec<Vec<usize>>,
}

impl SimpMap {
    pub fn new(src: &TruncSimpSet, tgt: &TruncSimpSet, levels: Vec<Vec<usize>>) -> Result<Self> {
        if src.trunc() != tgt.trunc() || levels.len() != src.levels.len() {
            return Err(Error::ShapeMismatch("simplicial map truncation mismatch".into()));
        }
        for (m, t) in levels.iter().enumerate() {
            if t.len() != src.levels[m].len() {
                return Err(Error::ShapeMismatch(format!("map level {} wrong length", m)));
            }
            if t.iter().any(|&y| y >= tgt.levels[m].len()) {
                return Err(Error::Validation(format!("map level {} out of range", m)));
            }
        }
        let f = SimpMap { levels };
        for m in 1..=src.trunc() {
            for i in 0..=m {
                for x in 0..src.levels[m].len() {
                    if f.levels[m - 1][src.face(m, i, x)] != tgt.face(m, i, f.levels[m][x]) {
                        return Err(Error::Validation(format!(
                            "map does not commute with d_{i} at level {m}"
                        )));
                    }
                }
            }
        }
        for m in 0..src.trunc() {
            for i in 0..=m {
                for x in 0..src.levels[m].len() {
                    if f.levels[m + 1][src.degen(m, i, x)] != tgt.degen(m, i, f.levels[m][x]) {
                        return Err(Error::Validation(format!(
                            "map does not commute with s_{i} at level {m}"
                        )));
                    }
                }
            }
        }
        Ok(f)
    }

    pub fn identity(x: &TruncSimpSet) -> Self {
        SimpMap { levels: x.levels.iter().map(|l| (0..l.len()).collect()).collect() }
    }

    pub fn then(&self, other: &SimpMap) -> SimpMap {
        SimpMap {
            levels: self
                .levels
                .iter()
                .zip(&other.levels)
                .map(|(a, b)| a.iter().map(|&x| b[x]).collect())
                .collect(),
        }
    }
}

fn monotone_label(vals: &[usize]) -> String {
    vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
}

/// The standard k-simplex truncated at M: level m is the set of
/// order-preserving maps [m] -> [k].
pub fn standard_simplex(k: usize, m_top: usize) -> TruncSimpSet {
    use crate::ordmap::{hom_set, OrdMap};
    let levels: Vec<FinSet> = (0..=m_top)
        .map(|m| {
            FinSet::new(hom_set(m, k).iter().map(|w| monotone_label(w.values())).collect())
                .expect("distinct labels")
        })
        .collect();
    let lookup = |m: usize, w: &OrdMap| levels[m].index(&monotone_label(w.values())).unwrap();
    let mut faces = Vec::new();
    for m in 1..=m_top {
        let mut per_i = Vec::new();
        for i in 0..=m {
            let d = OrdMap::coface(i, m);
            per_i.push(
                hom_set(m, k)
                    .iter()
                    .map(|w| lookup(m - 1, &d.then(w)))
                    .collect::<Vec<_>>(),
            );
        }
        faces.push(per_i);
    }
    let mut degens = Vec::new();
    for m in 0..m_top {
        let mut per_i = Vec::new();
        for i in 0..=m {
            let s = OrdMap::codegeneracy(i, m);
            per_i.push(
                hom_set(m, k)
                    .iter()
                    .map(|w| lookup(m + 1, &s.then(w)))
                    .collect::<Vec<_>>(),
            );
        }
        degens.push(per_i);
    }
    TruncSimpSet::new(levels, faces, degens).expect("standard simplex is simplicial")
}

/// Sub-simplicial set generated by the simplices of dimension <= n: above n
/// only iterated degeneracies remain.
pub fn skeleton(x: &TruncSimpSet, n: usize) -> TruncSimpSet {
    let m_top = x.trunc();
    let mut keep: Vec<Vec<bool>> = (0..=m_top)
        .map(|m| vec![m <= n; x.levels[m].len()])
        .collect();
    for m in n..m_top {
        for y in 0..x.levels[m].len() {
            if keep[m][y] {
                for i in 0..=m {
                    keep[m + 1][x.degen(m, i, y)] = true;
                }
            }
        }
    }
    restrict_to(x, &keep)
}

/// Restrict `x` to a face/degeneracy-closed family of simplices.
fn restrict_to(x: &TruncSimpSet, keep: &[Vec<bool>]) -> TruncSimpSet {
    let m_top = x.trunc();
    let mut levels = Vec::new();
    let mut old_to_new: Vec<BTreeMap<usize, usize>> = Vec::new();
    for m in 0..=m_top {
        let labels: Vec<String> = (0..x.levels[m].len())
            .filter(|&i| keep[m][i])
            .map(|i| x.levels[m].label(i).to_string())
            .collect();
        let fs = FinSet::new(labels).expect("labels stay unique");
        let map: BTreeMap<usize, usize> = (0..x.levels[m].len())
            .filter(|&i| keep[m][i])
            .map(|i| (i, fs.index(x.levels[m].label(i)).unwrap()))
            .collect();
        levels.push(fs);
        old_to_new.push(map);
    }
    let olds: Vec<Vec<usize>> = (0..=m_top)
        .map(|m| (0..x.levels[m].len()).filter(|&i| keep[m][i]).collect())
        .collect();
    let faces = (1..=m_top)
        .map(|m| {
            (0..=m)
                .map(|i| {
                    olds[m]
                        .iter()
                        .map(|&o| old_to_new[m - 1][&x.face(m, i, o)])
                        .collect()
                })
                .collect()
        })
        .collect();
    let degens = (0..m_top)
        .map(|m| {
            (0..=m)
                .map(|i| {
                    olds[m]
                        .iter()
                        .map(|&o| old_to_new[m + 1][&x.degen(m, i, o)])
                        .collect()
                })
                .collect()
        })
        .collect();
    TruncSimpSet::new(levels, faces, degens).expect("restriction stays simplicial")
}

/// Normalized (degenerate-killed) integral chain complex of a truncated
/// simplicial set, with the nondegenerate simplex indices per degree.
pub fn normalized_chains(x: &TruncSimpSet) -> (ChainComplex, Vec<Vec<usize>>) {
    let m_top = x.trunc();
    let nondeg: Vec<Vec<usize>> = (0..=m_top).map(|m| x.nondegenerate(m)).collect();
    let pos: Vec<BTreeMap<usize, usize>> = nondeg
        .iter()
        .map(|v| v.iter().enumerate().map(|(k, &i)| (i, k)).collect())
        .collect();
    let groups: Vec<FgAbGroup> = nondeg.iter().map(|v| FgAbGroup::free(v.len())).collect();
    let mut diffs = Vec::new();
    for m in 1..=m_top {
        let mut mat = IntMat::zeros(nondeg[m - 1].len(), nondeg[m].len());
        for (j, &sx) in nondeg[m].iter().enumerate() {
            let mut sign = BigInt::one();
            for i in 0..=m {
                let f = x.face(m, i, sx);
                if let Some(&r) = pos[m - 1].get(&f) {
                    mat[(r, j)] += &sign;
                }
                sign = -sign;
            }
        }
        diffs.push(AbHom::new(groups[m].clone(), groups[m - 1].clone(), mat).unwrap());
    }
    (
        ChainComplex::new(groups, diffs).expect("boundary squares to zero"),
        nondeg,
    )
}

/// H_n of the normalized integral chain complex, invariant-factor form.
/// Requires `n <= trunc - 1`.
pub fn homology(x: &TruncSimpSet, n: usize) -> Result<FgAbGroup> {
    normalized_chains(x).0.homology(n)
}

/// M-truncated simplicial abelian group.
#[derive(Clone, Debug)]
pub struct TruncSimpAb {
    levels: Vec<FgAbGroup>,
    faces: Vec<Vec<AbHom>>,
    degens: Vec<Vec<AbHom>>,
}

impl TruncSimpAb {
    pub fn new(
        levels: Vec<FgAbGroup>,
        faces: Vec<Vec<AbHom>>,
        degens: Vec<Vec<AbHom>>,
    ) -> Result<Self> {
        let a = TruncSimpAb { levels, faces, degens };
        a.validate()?;
        Ok(a)
    }

    pub fn constant(g: FgAbGroup, m_top: usize) -> Self {
        let levels = vec![g.clone(); m_top + 1];
        let faces = (1..=m_top).map(|m| vec![AbHom::identity(&g); m + 1]).collect();
        let degens = (0..m_top).map(|m| vec![AbHom::identity(&g); m + 1]).collect();
        TruncSimpAb { levels, faces, degens }
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, m: usize) -> &FgAbGroup {
        &self.levels[m]
    }

    pub fn face(&self, m: usize, i: usize) -> &AbHom {
        &self.faces[m - 1][i]
    }

    pub fn degen(&self, m: usize, i: usize) -> &AbHom {
        &self.degens[m][i]
    }

    pub fn validate(&self) -> Result<()> {
        let m_top = self.trunc();
        if self.faces.len() != m_top || self.degens.len() != m_top {
            return Err(Error::ShapeMismatch("structure table count != truncation".into()));
        }
        for m in 1..=m_top {
            if self.faces[m - 1].len() != m + 1 {
                return Err(Error::ShapeMismatch(format!("level {} needs {} faces", m, m + 1)));
            }
            for (i, f) in self.faces[m - 1].iter().enumerate() {
                if f.source() != &self.levels[m] || f.target() != &self.levels[m - 1] {
                    return Err(Error::ShapeMismatch(format!("face ({},{}) wrong groups", m, i)));
                }
            }
        }
        for m in 0..m_top {
            if self.degens[m].len() != m + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "level {} needs {} degeneracies",
                    m,
                    m + 1
                )));
            }
            for (i, s) in self.degens[m].iter().enumerate() {
                if s.source() != &self.levels[m] || s.target() != &self.levels[m + 1] {
                    return Err(Error::ShapeMismatch(format!("degen ({},{}) wrong groups", m, i)));
                }
            }
        }
        let eq = |a: &AbHom, b: &AbHom, name: &str| -> Result<()> {
            if !a.hom_equal(b)? {
                return Err(Error::Validation(format!("simplicial identity {} fails", name)));
            }
            Ok(())
        };
        for m in 2..=m_top {
            for j in 1..=m {
                for i in 0..j {
                    eq(
                        &self.face(m, j).then(self.face(m - 1, i)),
                        &self.face(m, i).then(self.face(m - 1, j - 1)),
                        &format!("d_{i} d_{j} (level {m})"),
                    )?;
                }
            }
        }
        for m in 0..m_top.saturating_sub(1) {
            for j in 0..=m {
                for i in 0..=j {
                    eq(
                        &self.degen(m, j).then(self.degen(m + 1, i)),
                        &self.degen(m, i).then(self.degen(m + 1, j + 1)),
                        &format!("s_{i} s_{j} (level {m})"),
                    )?;
                }
            }
        }
        for m in 0..m_top {
            for j in 0..=m {
                for i in 0..=m + 1 {
                    let lhs = self.degen(m, j).then(self.face(m + 1, i));
                    let rhs = if i == j || i == j + 1 {
                        AbHom::identity(&self.levels[m])
                    } else if i < j {
                        self.face(m, i).then(self.degen(m - 1, j - 1))
                    } else {
                        self.face(m, i - 1).then(self.degen(m - 1, j))
                    };
                    eq(&lhs, &rhs, &format!("d_{i} s_{j} (level {m})"))?;
                }
            }
        }
        Ok(())
    }
}

/// Map of truncated simplicial abelian groups.
#[derive(Clone, Debug)]
pub struct SimpAbMap {
    pub levels: Vec<AbHom>,
}

impl SimpAbMap {
    pub fn new(src: &TruncSimpAb, tgt: &TruncSimpAb, levels: Vec<AbHom>) -> Result<Self> {
        if src.trunc() != tgt.trunc() || levels.len() != src.levels.len() {
            return Err(Error::ShapeMismatch("simplicial ab map truncation mismatch".into()));
        }
        for (m, f) in levels.iter().enumerate() {
            if f.source() != &src.levels[m] || f.target() != &tgt.levels[m] {
                return Err(Error::ShapeMismatch(format!("map level {} wrong groups", m)));
            }
        }
        let f = SimpAbMap { levels };
        for m in 1..=src.trunc() {
            for i in 0..=m {
                if !f.levels[m]
                    .then(tgt.face(m, i))
                    .hom_equal(&src.face(m, i).then(&f.levels[m - 1]))?
                {
                    return Err(Error::Validation(format!(
                        "ab map does not commute with d_{i} at level {m}"
                    )));
                }
            }
        }
        for m in 0..src.trunc() {
            for i in 0..=m {
                if !f.levels[m]
                    .then(tgt.degen(m, i))
                    .hom_equal(&src.degen(m, i).then(&f.levels[m + 1]))?
                {
                    return Err(Error::Validation(format!(
                        "ab map does not commute with s_{i} at level {m}"
                    )));
                }
            }
        }
        Ok(f)
    }
}

/// Levelwise free abelian group on a simplicial set, with the simplex-to-
/// generator correspondence (generator order = label order per level).
pub fn hurewicz(x: &TruncSimpSet) -> (TruncSimpAb, Vec<Vec<String>>) {
    let m_top = x.trunc();
    let levels: Vec<FgAbGroup> =
        (0..=m_top).map(|m| FgAbGroup::free(x.levels[m].len())).collect();
    let linearize = |table: &Vec<usize>, rows: usize| {
        let mut mat = IntMat::zeros(rows, table.len());
        for (j, &i) in table.iter().enumerate() {
            mat[(i, j)] += BigInt::one();
        }
        mat
    };
    let faces = (1..=m_top)
        .map(|m| {
            (0..=m)
                .map(|i| {
                    AbHom::new(
                        levels[m].clone(),
                        levels[m - 1].clone(),
                        linearize(&x.faces[m - 1][i], x.levels[m - 1].len()),
                    )
                    .unwrap()
                })
                .collect()
        })
        .collect();
    let degens = (0..m_top)
        .map(|m| {
            (0..=m)
                .map(|i| {
                    AbHom::new(
                        levels[m].clone(),
                        levels[m + 1].clone(),
                        linearize(&x.degens[m][i], x.levels[m + 1].len()),
                    )
                    .unwrap()
                })
                .collect()
        })
        .collect();
    let gens = (0..=m_top)
        .map(|m| x.levels[m].labels().to_vec())
        .collect();
    (
        TruncSimpAb { levels, faces, degens },
        gens,
    )
}

/// The degree-m normalized part of a truncated simplicial abelian group:
/// the intersection of the kernels of d_i for i >= 1, with its inclusion.
pub fn normalized_part(a: &TruncSimpAb, m: usize) -> (FgAbGroup, AbHom) {
    if m == 0 {
        let g = a.level(0).clone();
        return (g.clone(), AbHom::identity(&g));
    }
    let parts: Vec<&AbHom> = (1..=m).map(|i| a.face(m, i)).collect();
    stacked_hom(a.level(m), &parts).kernel()
}

/// Stack homomorphisms with a common source into one map to the direct sum.
pub fn stacked_hom(source: &FgAbGroup, parts: &[&AbHom]) -> AbHom {
    let targets: Vec<&FgAbGroup> = parts.iter().map(|h| h.target()).collect();
    let target = FgAbGroup::direct_sum(&targets);
    let mut mat = IntMat::zeros(target.generators(), source.generators());
    let mut row = 0;
    for h in parts {
        for i in 0..h.target().generators() {
            for j in 0..source.generators() {
                mat[(row + i, j)] = h.matrix()[(i, j)].clone();
            }
        }
        row += h.target().generators();
    }
    AbHom::new(source.clone(), target, mat).expect("stacked map is well-defined")
}

/// A generator arrow of a presented groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowGen {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// Word in generators: (generator index, inverted?) pairs, composed left to
/// right (first letter applied first).
pub type Word = Vec<(usize, bool)>;

/// Groupoid presented by generators and parallel-path relations.
#[derive(Clone, Debug)]
pub struct PresentedGroupoid {
    pub objects: FinSet,
    pub generators: Vec<ArrowGen>,
    /// Each relation equates two parallel paths.
    pub relations: Vec<(Word, Word)>,
}

impl PresentedGroupoid {
    pub fn new(
        objects: FinSet,
        generators: Vec<ArrowGen>,
        relations: Vec<(Word, Word)>,
    ) -> Result<Self> {
        for g in &generators {
            if g.src >= objects.len() || g.tgt >= objects.len() {
                return Err(Error::Validation(format!("generator {} endpoints out of range", g.name)));
            }
        }
        let p = PresentedGroupoid { objects, generators, relations };
        for (k, (a, b)) in p.relations.iter().enumerate() {
            let bad = || {
                Error::Validation(format!(
                    "relation {} is not a pair of parallel composable paths",
                    k
                ))
            };
            let ea = p.endpoints(a).ok_or_else(bad)?;
            let eb = p.endpoints(b).ok_or_else(bad)?;
            match (ea, eb) {
                (Some(x), Some(y)) if x == y => {}
                (Some((s, t)), None) | (None, Some((s, t))) if s == t => {}
                (None, None) => {}
                _ => return Err(bad()),
            }
        }
        Ok(p)
    }

    /// Endpoints of a word: `Ok(None)` for the empty word, `Err(())` if not
    /// composable.
    #[allow(clippy::result_unit_err)]
    fn endpoints(&self, w: &Word) -> Option<Option<(usize, usize)>> {
        let mut it = w.iter();
        let Some(&(g0, inv0)) = it.next() else {
            return Some(None);
        };
        let (s, mut t) = if inv0 {
            (self.generators[g0].tgt, self.generators[g0].src)
        } else {
            (self.generators[g0].src, self.generators[g0].tgt)
        };
        for &(g, inv) in it {
            let (gs, gt) = if inv {
                (self.generators[g].tgt, self.generators[g].src)
            } else {
                (self.generators[g].src, self.generators[g].tgt)
            };
            if gs != t {
                return None;
            }
            t = gt;
        }
        Some(Some((s, t)))
    }
}

/// Edge-path presentation of the fundamental groupoid: objects are vertices,
/// generators the nondegenerate 1-simplices, one relation per nondegenerate
/// 2-simplex, degenerate edges act as identities. Reads only the
/// 2-truncation.
pub fn fundamental_groupoid(x: &TruncSimpSet) -> Result<PresentedGroupoid> {
    if x.trunc() < 2 {
        return Err(Error::TruncationTooSmall { needed: 2, available: x.trunc() });
    }
    let objects = FinSet::new(x.levels[0].labels().to_vec())?;
    let nd1 = x.nondegenerate(1);
    let gen_of: BTreeMap<usize, usize> = nd1.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let generators: Vec<ArrowGen> = nd1
        .iter()
        .map(|&e| ArrowGen {
            name: x.levels[1].label(e).to_string(),
            src: x.face(1, 1, e),
            tgt: x.face(1, 0, e),
        })
        .collect();
    let edge_word = |e: usize| -> Word {
        match gen_of.get(&e) {
            Some(&k) => vec![(k, false)],
            None => Vec::new(), // degenerate edge = identity
        }
    };
    let mut relations = Vec::new();
    for sigma in x.nondegenerate(2) {
        // d_1(sigma) = d_0(sigma) . d_2(sigma): path [d2, d0] equals [d1]
        let mut lhs = edge_word(x.face(2, 2, sigma));
        lhs.extend(edge_word(x.face(2, 0, sigma)));
        let rhs = edge_word(x.face(2, 1, sigma));
        relations.push((lhs, rhs));
    }
    PresentedGroupoid::new(objects, generators, relations)
}

/// Coset-table group enumeration for `<letters | relators>` over the trivial
/// subgroup. Letters `2g` / `2g+1` are generator `g` and its inverse.
struct CosetTable {
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    /// (parent coset, letter) that defined each coset; coset 0 is the root.
    definition: Vec<Option<(usize, usize)>>,
    letters: usize,
    live: usize,
}

impl CosetTable {
    fn new(n_gens: usize) -> Self {
        CosetTable {
            table: vec![vec![None; 2 * n_gens]],
            parent: vec![0],
            definition: vec![None],
            letters: 2 * n_gens,
            live: 1,
        }
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            let p = self.parent[c];
            self.parent[c] = self.parent[p];
            c = self.parent[c];
        }
        c
    }

    fn get(&mut self, c: usize, l: usize) -> Option<usize> {
        let c = self.find(c);
        self.table[c][l].map(|x| self.find(x))
    }

    fn set(&mut self, c: usize, l: usize, d: usize) {
        let c = self.find(c);
        let d = self.find(d);
        self.table[c][l] = Some(d);
        self.table[d][l ^ 1] = Some(c);
    }

    fn define(&mut self, c: usize, l: usize) -> usize {
        let c = self.find(c);
        let new = self.table.len();
        self.table.push(vec![None; self.letters]);
        self.parent.push(new);
        self.definition.push(Some((c, l)));
        self.live += 1;
        self.set(c, l, new);
        new
    }

    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, kill) = (a.min(b), a.max(b));
            self.parent[kill] = keep;
            self.live -= 1;
            for l in 0..self.letters {
                if let Some(x) = self.table[kill][l] {
                    match self.table[keep][l] {
                        Some(y) => queue.push((x, y)),
                        None => {
                            let x = self.find(x);
                            self.table[keep][l] = Some(x);
                            self.table[x][l ^ 1] = Some(keep);
                        }
                    }
                }
            }
        }
    }

    /// Scan a relator at coset `c`, defining cosets to close it (HLT style).
    fn scan_and_fill(&mut self, c: usize, relator: &[usize]) {
        let c = self.find(c);
        let mut f = c;
        let mut i = 0;
        loop {
            // forward as far as defined
            while i < relator.len() {
                match self.get(f, relator[i]) {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == relator.len() {
                if f != self.find(c) {
                    let c0 = self.find(c);
                    self.coincide(f, c0);
                }
                return;
            }
            // backward from the end
            let mut b = self.find(c);
            let mut j = relator.len();
            while j > i + 1 {
                match self.get(b, relator[j - 1] ^ 1) {
                    Some(prev) => {
                        b = prev;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i + 1 {
                // single gap: deduction
                self.set(f, relator[i], b);
                return;
            }
            // fill one entry and keep scanning
            self.define(f, relator[i]);
            f = self.find(c);
            i = 0;
        }
    }

    /// Run the enumeration to completion or cap. Returns live coset ids in
    /// canonical (ascending) order.
    fn enumerate(&mut self, relators: &[Vec<usize>], cap: usize) -> Result<Vec<usize>> {
        let mut idx = 0;
        while idx < self.table.len() {
            if self.live > cap {
                return Err(Error::CapExceeded(format!(
                    "coset enumeration passed {} live cosets",
                    cap
                )));
            }
            if self.find(idx) != idx {
                idx += 1;
                continue;
            }
            for r in relators {
                if self.find(idx) != idx {
                    break; // merged away mid-processing
                }
                self.scan_and_fill(idx, r);
            }
            if self.find(idx) == idx {
                for l in 0..self.letters {
                    if self.find(idx) == idx && self.get(idx, l).is_none() {
                        self.define(idx, l);
                    }
                }
            }
            idx += 1;
        }
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.parent[c] == c).collect();
        Ok(live)
    }

    /// Word from the root to `c` through definitions.
    fn word_to(&self, c: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = c;
        while let Some((p, l)) = self.definition[cur] {
            w.push(l);
            cur = p;
        }
        w.reverse();
        w
    }

    fn trace(&mut self, from: usize, word: &[usize]) -> usize {
        let mut c = self.find(from);
        for &l in word {
            c = self.get(c, l).expect("complete table");
        }
        c
    }
}

/// Finite group data produced by coset enumeration: element count,
/// multiplication and inverse tables, and the element each generator letter
/// evaluates to. Element 0 is the identity.
struct EnumeratedGroup {
    order: usize,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    generator_elem: Vec<usize>,
}

fn enumerate_group(n_gens: usize, relators: &[Vec<usize>], cap: usize) -> Result<EnumeratedGroup> {
    let mut ct = CosetTable::new(n_gens);
    let live = ct.enumerate(relators, cap)?;
    let renumber: BTreeMap<usize, usize> =
        live.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let words: Vec<Vec<usize>> = live.iter().map(|&c| ct.word_to(c)).collect();
    let order = live.len();
    let mut mult = vec![vec![0; order]; order];
    for a in 0..order {
        for b in 0..order {
            let c = ct.trace(live[a], &words[b]);
            mult[a][b] = renumber[&ct.find(c)];
        }
    }
    let mut inv = vec![0; order];
    for a in 0..order {
        inv[a] = (0..order).find(|&b| mult[a][b] == 0).expect("group has inverses");
    }
    let generator_elem = (0..n_gens)
        .map(|g| {
            let c = ct.trace(live[0], &[2 * g]);
            renumber[&ct.find(c)]
        })
        .collect();
    Ok(EnumeratedGroup { order, mult, inv, generator_elem })
}

/// Coset-enumeration closure of a presented groupoid. Returns the finite
/// groupoid when every vertex group closes within `cap` elements.
pub fn complete_groupoid(p: &PresentedGroupoid, cap: usize) -> Result<FinGroupoid> {
    Ok(complete_groupoid_with_generators(p, cap)?.0)
}

/// The completion together with the image morphism of each presentation
/// generator.
pub fn complete_groupoid_with_generators(
    p: &PresentedGroupoid,
    cap: usize,
) -> Result<(FinGroupoid, Vec<usize>)> {
    let n_obj = p.objects.len();
    // connected components through generator edges
    let mut comp: Vec<usize> = (0..n_obj).collect();
    fn root(comp: &mut Vec<usize>, mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    for g in &p.generators {
        let (a, b) = (root(&mut comp, g.src), root(&mut comp, g.tgt));
        let (keep, kill) = (a.min(b), a.max(b));
        comp[kill] = keep;
    }
    let comp_of: Vec<usize> = (0..n_obj).map(|x| root(&mut comp, x)).collect();

    // spanning tree per component: BFS from the least object, generators in
    // index (= name) order; tree_path[v] = word of generator letters from the
    // component base to v.
    let mut tree_path: Vec<Option<Vec<(usize, bool)>>> = vec![None; n_obj];
    let mut bases: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n_obj {
        let c = comp_of[v];
        bases.entry(c).or_insert(v);
    }
    let mut tree_edges = vec![false; p.generators.len()];
    for (&_c, &base) in &bases {
        tree_path[base] = Some(Vec::new());
        let mut frontier = vec![base];
        while let Some(v) = frontier.pop() {
            let path_v = tree_path[v].clone().unwrap();
            for (gi, g) in p.generators.iter().enumerate() {
                if g.src == v && tree_path[g.tgt].is_none() {
                    let mut w = path_v.clone();
                    w.push((gi, false));
                    tree_path[g.tgt] = Some(w);
                    tree_edges[gi] = true;
                    frontier.push(g.tgt);
                } else if g.tgt == v && tree_path[g.src].is_none() {
                    let mut w = path_v.clone();
                    w.push((gi, true));
                    tree_path[g.src] = Some(w);
                    tree_edges[gi] = true;
                    frontier.push(g.src);
                }
            }
            frontier.sort_unstable_by(|a, b| b.cmp(a)); // pop smallest first
        }
    }

    // vertex group generators = non-tree edges, numbered per component
    let mut vg_gen_index: BTreeMap<usize, usize> = BTreeMap::new(); // generator -> local index
    let mut vg_gens_per_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (gi, g) in p.generators.iter().enumerate() {
        if !tree_edges[gi] {
            let c = comp_of[g.src];
            let list = vg_gens_per_comp.entry(c).or_default();
            vg_gen_index.insert(gi, list.len());
            list.push(gi);
        }
    }

    // translate a groupoid word at (src -> tgt) into a vertex-group word at
    // the base: base->src, word, tgt->base; tree edges vanish, non-tree edges
    // become letters.
    let to_letters = |w: &Word, comp_id: usize| -> Vec<usize> {
        let _ = comp_id;
        let mut letters = Vec::new();
        for &(gi, invd) in w {
            if !tree_edges[gi] {
                let k = vg_gen_index[&gi];
                letters.push(2 * k + usize::from(invd));
            }
        }
        letters
    };
    // Tree paths consist of tree edges only, so the conjugating paths
    // contribute no letters and relators translate letter-by-letter.
    // relators per component
    let mut relators: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for (w1, w2) in &p.relations {
        // relator = w1 . w2^{-1}, conjugation by tree paths contributes
        // nothing since tree edges translate to empty words
        let comp_id = w1
            .first()
            .or(w2.first())
            .map(|&(g, _)| comp_of[p.generators[g].src]);
        let Some(c) = comp_id else { continue };
        let mut letters = to_letters(w1, c);
        let w2_inv: Word = w2.iter().rev().map(|&(g, i)| (g, !i)).collect();
        letters.extend(to_letters(&w2_inv, c));
        if !letters.is_empty() {
            relators.entry(c).or_default().push(letters);
        }
    }

    // enumerate each vertex group
    let mut groups: BTreeMap<usize, EnumeratedGroup> = BTreeMap::new();
    for (&c, &_base) in &bases {
        let n = vg_gens_per_comp.get(&c).map_or(0, |v| v.len());
        let rels = relators.remove(&c).unwrap_or_default();
        groups.insert(c, enumerate_group(n, &rels, cap)?);
    }

    // assemble the finite groupoid
    let mut morphisms = Vec::new(); // (label, src, tgt, comp, elt)
    for u in 0..n_obj {
        for v in 0..n_obj {
            if comp_of[u] != comp_of[v] {
                continue;
            }
            let g = &groups[&comp_of[u]];
            for h in 0..g.order {
                morphisms.push((
                    format!("{}>{}#{}", p.objects.label(u), p.objects.label(v), h),
                    u,
                    v,
                    comp_of[u],
                    h,
                ));
            }
        }
    }
    let mor_set = FinSet::new(morphisms.iter().map(|m| m.0.clone()).collect())?;
    let lookup = |u: usize, v: usize, h: usize| -> usize {
        mor_set
            .index(&format!("{}>{}#{}", p.objects.label(u), p.objects.label(v), h))
            .unwrap()
    };
    let n_mor = mor_set.len();
    let mut src = vec![0; n_mor];
    let mut tgt = vec![0; n_mor];
    let mut inv = vec![0; n_mor];
    for (label, u, v, c, h) in &morphisms {
        let idx = mor_set.index(label).unwrap();
        src[idx] = *u;
        tgt[idx] = *v;
        inv[idx] = lookup(*v, *u, groups[c].inv[*h]);
    }
    let id: Vec<usize> = (0..n_obj).map(|u| lookup(u, u, 0)).collect();
    let mut comp_table = BTreeMap::new();
    for (l1, u1, v1, c1, h1) in &morphisms {
        for (l2, u2, v2, c2, h2) in &morphisms {
            if v1 == u2 {
                debug_assert_eq!(c1, c2);
                let h = groups[c1].mult[*h1][*h2];
                comp_table.insert(
                    (mor_set.index(l1).unwrap(), mor_set.index(l2).unwrap()),
                    lookup(*u1, *v2, h),
                );
            }
        }
    }
    let gen_images: Vec<usize> = p
        .generators
        .iter()
        .enumerate()
        .map(|(gi, g)| {
            let h = if tree_edges[gi] {
                0
            } else {
                groups[&comp_of[g.src]].generator_elem[vg_gen_index[&gi]]
            };
            lookup(g.src, g.tgt, h)
        })
        .collect();
    let groupoid = FinGroupoid::new(
        FinSet::new(p.objects.labels().to_vec())?,
        mor_set,
        src,
        tgt,
        id,
        comp_table,
        inv,
    )?;
    Ok((groupoid, gen_images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpd::{is_contractible, is_equivalence, nerve, FinGroupoid};

    #[test]
    fn standard_simplex_counts() {
        assert_eq!(standard_simplex(1, 1).level_sizes(), vec![2, 3]);
        assert_eq!(standard_simplex(0, 3).level_sizes(), vec![1, 1, 1, 1]);
        assert_eq!(standard_simplex(2, 2).level_sizes(), vec![3, 6, 10]);
    }

    #[test]
    fn skeleton_examples() {
        let d1 = standard_simplex(1, 1);
        let sk0 = skeleton(&d1, 0);
        assert_eq!(sk0.level_sizes(), vec![2, 2]);
        assert!(sk0.nondegenerate(1).is_empty());

        let d2 = standard_simplex(2, 2);
        assert_eq!(skeleton(&d2, 2), d2);
        // closure oracle: degenerate 2-simplices of the 1-skeleton are the
        // degeneracies of the six edges, 9 distinct ones
        let sk1 = skeleton(&d2, 1);
        assert_eq!(sk1.level_sizes()[2], 9);
        assert!(sk1.nondegenerate(2).is_empty());
    }

    #[test]
    fn homology_examples() {
        for k in 1..=3 {
            let d = standard_simplex(k, 3);
            assert_eq!(homology(&d, 0).unwrap().invariant_factors().to_string(), "Z");
            assert_eq!(homology(&d, 1).unwrap().invariant_factors().to_string(), "0");
        }
        // boundary of the 2-simplex: a circle
        let circle = skeleton(&standard_simplex(2, 2), 1);
        assert_eq!(homology(&circle, 1).unwrap().invariant_factors().to_string(), "Z");
        // two points
        let two = TruncSimpSet::new(
            vec![
                FinSet::new(vec!["p".into(), "q".into()]).unwrap(),
                FinSet::new(vec!["sp".into(), "sq".into()]).unwrap(),
            ],
            vec![vec![vec![0, 1], vec![0, 1]]],
            vec![vec![vec![0, 1]]],
        )
        .unwrap();
        assert_eq!(homology(&two, 0).unwrap().invariant_factors().to_string(), "Z^2");
        assert!(homology(&two, 1).is_err());
    }

    #[test]
    fn homology_of_simplices_vanishes_in_positive_degrees() {
        for k in 0..=3 {
            for m in 2..=4usize {
                let d = standard_simplex(k, m);
                assert_eq!(
                    homology(&d, 0).unwrap().invariant_factors().to_string(),
                    "Z"
                );
                for n in 1..=m - 1 {
                    assert!(homology(&d, n).unwrap().is_trivial(), "k={} m={} n={}", k, m, n);
                }
            }
        }
    }

    #[test]
    fn simplicial_identity_negative_fixture() {
        // break d_0 s_0 = id on the 1-truncated two-point set
        let bad = TruncSimpSet::new(
            vec![
                FinSet::new(vec!["p".into(), "q".into()]).unwrap(),
                FinSet::new(vec!["sp".into(), "sq".into()]).unwrap(),
            ],
            vec![vec![vec![0, 1], vec![1, 0]]],
            vec![vec![vec![0, 1]]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn fundamental_groupoid_of_simplex_is_contractible() {
        let d2 = standard_simplex(2, 2);
        let p = fundamental_groupoid(&d2).unwrap();
        let g = complete_groupoid(&p, 100).unwrap();
        assert_eq!(g.objects().len(), 3);
        assert!(is_contractible(&g));
        assert_eq!(g.morphisms().len(), 9);
    }

    #[test]
    fn fundamental_groupoid_of_circle_exceeds_cap() {
        let circle = skeleton(&standard_simplex(2, 2), 1);
        let p = fundamental_groupoid(&circle).unwrap();
        // vertex group is infinite cyclic: the completion reports the cap
        assert!(matches!(
            complete_groupoid(&p, 100),
            Err(crate::error::Error::CapExceeded(_))
        ));
        // the presentation itself is still available
        assert_eq!(p.objects.len(), 3);
        assert_eq!(p.generators.len(), 3);
    }

    #[test]
    fn fundamental_groupoid_of_discrete_set() {
        let two = TruncSimpSet::new(
            vec![
                FinSet::new(vec!["p".into(), "q".into()]).unwrap(),
                FinSet::new(vec!["sp".into(), "sq".into()]).unwrap(),
                FinSet::new(vec!["ssp".into(), "ssq".into()]).unwrap(),
            ],
            vec![
                vec![vec![0, 1], vec![0, 1]],
                vec![vec![0, 1], vec![0, 1], vec![0, 1]],
            ],
            vec![vec![vec![0, 1]], vec![vec![0, 1], vec![0, 1]]],
        )
        .unwrap();
        let p = fundamental_groupoid(&two).unwrap();
        assert!(p.generators.is_empty());
        let g = complete_groupoid(&p, 10).unwrap();
        assert_eq!(g.objects().len(), 2);
        assert_eq!(g.morphisms().len(), 2);
        // truncation too small is rejected
        let d1 = standard_simplex(1, 1);
        assert!(fundamental_groupoid(&d1).is_err());
    }

    #[test]
    fn completion_examples() {
        // contractible groupoid on two objects from a presentation
        let p = PresentedGroupoid::new(
            FinSet::new(vec!["a".into(), "b".into()]).unwrap(),
            vec![ArrowGen { name: "g".into(), src: 0, tgt: 1 }],
            vec![],
        )
        .unwrap();
        let g = complete_groupoid(&p, 10).unwrap();
        assert_eq!(g.morphisms().len(), 4);
        assert!(is_contractible(&g));

        // one object, one generator, a^2 = id: Z/2
        let p = PresentedGroupoid::new(
            FinSet::new(vec!["x".into()]).unwrap(),
            vec![ArrowGen { name: "a".into(), src: 0, tgt: 0 }],
            vec![(vec![(0, false), (0, false)], vec![])],
        )
        .unwrap();
        let g = complete_groupoid(&p, 10).unwrap();
        assert_eq!(g.morphisms().len(), 2);

        // free loop: infinite
        let p = PresentedGroupoid::new(
            FinSet::new(vec!["x".into()]).unwrap(),
            vec![ArrowGen { name: "a".into(), src: 0, tgt: 0 }],
            vec![],
        )
        .unwrap();
        assert!(matches!(
            complete_groupoid(&p, 100),
            Err(crate::error::Error::CapExceeded(_))
        ));
    }

    #[test]
    fn nerve_roundtrip_recovers_groupoid() {
        for g in [
            FinGroupoid::cyclic_group("*", 2).unwrap(),
            FinGroupoid::cyclic_group("*", 3).unwrap(),
            FinGroupoid::contractible(vec!["a".into(), "b".into()]).unwrap(),
            FinGroupoid::discrete(vec!["x".into(), "y".into()]).unwrap(),
        ] {
            assert!(g.morphisms().len() <= 12);
            let n = nerve(&g, 2);
            let p = fundamental_groupoid(&n).unwrap();
            let (back, gen_images) = complete_groupoid_with_generators(&p, 200).unwrap();
            // comparison functor G -> back: every non-identity morphism of G
            // is a presentation generator (a nondegenerate 1-simplex of the
            // nerve), identities go to identities
            let ob_map: Vec<usize> = (0..g.objects().len())
                .map(|o| back.objects().index(g.objects().label(o)).unwrap())
                .collect();
            let mor_map: Vec<usize> = (0..g.morphisms().len())
                .map(|m| {
                    if g.id(g.src(m)) == m {
                        back.id(ob_map[g.src(m)])
                    } else {
                        let gi = p
                            .generators
                            .iter()
                            .position(|a| a.name == g.morphisms().label(m))
                            .expect("non-identity morphisms are generators");
                        gen_images[gi]
                    }
                })
                .collect();
            let f = crate::gpd::gpd_functor(&g, &back, ob_map, mor_map).unwrap();
            assert!(is_equivalence(&f, &g, &back));
        }
    }

    #[test]
    fn hurewicz_examples() {
        let pt = standard_simplex(0, 2);
        let (za, _) = hurewicz(&pt);
        for m in 0..=2 {
            assert_eq!(za.level(m).invariant_factors().to_string(), "Z");
        }
        let d1 = standard_simplex(1, 1);
        let (za, gens) = hurewicz(&d1);
        assert_eq!(za.level(1).invariant_factors().to_string(), "Z^3");
        assert_eq!(gens[1].len(), 3);
        za.validate().unwrap();
    }
}
