//! Finitely generated abelian groups presented by integer relation matrices,
//! homomorphisms between them, and cochain/chain complexes with exact
//! cohomology in invariant-factor form.
//!
//! A group is the quotient of the free abelian group on `generators`
//! generators by the column span of `relations`. Elements are integer
//! generator-vectors; two vectors are equal iff their difference lies in the
//! relation span, which is decided by solving `S y = U x` after Smith
//! reduction.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intmat::{
    self, column_span_basis, kernel_basis, smith_normal_form, solve_mat, IntMat, Snf,
};

/// Finitely generated abelian group `Z^g / colspan(relations)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FgAbGroup {
    generators: usize,
    relations: IntMat,
}

impl std::fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FgAbGroup(g={}, {})", self.generators, self.invariant_factors())
    }
}

/// Canonical form of a finitely generated abelian group: torsion coefficients
/// in a divisibility chain (all > 1) plus the free rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl InvariantFactors {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }
}

impl std::fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{}", d)).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FgAbGroup {
    pub fn new(generators: usize, relations: IntMat) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::ShapeMismatch(format!(
                "relations matrix has {} rows, expected {}",
                relations.rows(),
                generators
            )));
        }
        Ok(FgAbGroup { generators, relations })
    }

    /// Free abelian group of the given rank.
    pub fn free(rank: usize) -> Self {
        FgAbGroup { generators: rank, relations: IntMat::zeros(rank, 0) }
    }

    pub fn trivial() -> Self {
        FgAbGroup::free(0)
    }

    /// Cyclic group Z/n (n = 0 gives Z).
    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            return FgAbGroup::free(1);
        }
        FgAbGroup {
            generators: 1,
            relations: IntMat::from_rows(vec![vec![n as i64]]),
        }
    }

    /// Direct sum, generators concatenated in order.
    pub fn direct_sum(parts: &[&FgAbGroup]) -> Self {
        let rels: Vec<&IntMat> = parts.iter().map(|g| &g.relations).collect();
        FgAbGroup {
            generators: parts.iter().map(|g| g.generators).sum(),
            relations: IntMat::block_diag(&rels),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMat {
        &self.relations
    }

    fn rel_snf(&self) -> Snf {
        smith_normal_form(&self.relations)
    }

    /// Invariant factors, normalized: units dropped, divisibility order.
    pub fn invariant_factors(&self) -> InvariantFactors {
        let snf = self.rel_snf();
        let torsion: Vec<BigInt> = snf
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect();
        InvariantFactors { torsion, free_rank: self.generators - snf.rank }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors().is_trivial()
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.invariant_factors().order()
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.generators]
    }

    /// Is the element (generator vector) zero modulo relations?
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.generators, "element length mismatch");
        intmat::in_span(&self.rel_snf(), x)
    }

    pub fn elements_equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero_element(&diff)
    }

    /// Canonical representative of the coset of `x`, via Smith coordinates.
    pub fn canonical_element(&self, x: &[BigInt]) -> Vec<BigInt> {
        let snf = self.rel_snf();
        let mut z = snf.u.mul_vec(x);
        let d = snf.diagonal();
        for (i, zi) in z.iter_mut().enumerate() {
            if i < d.len() && !d[i].is_zero() {
                *zi = num_integer::Integer::mod_floor(zi, &d[i]);
            }
        }
        snf.u_inv.mul_vec(&z)
    }

    /// All elements of a finite group, in a deterministic order.
    /// Errors with `InfiniteGroup` when the free rank is positive.
    pub fn enumerate_elements(&self) -> Result<Vec<Vec<BigInt>>> {
        let inv = self.invariant_factors();
        if inv.free_rank > 0 {
            return Err(Error::InfiniteGroup(format!(
                "free rank {} > 0",
                inv.free_rank
            )));
        }
        let snf = self.rel_snf();
        let d = snf.diagonal();
        // Smith coordinates z_i range over 0..d_i; map back through U^{-1}.
        let mut out = Vec::new();
        let mut z = vec![BigInt::zero(); self.generators];
        loop {
            out.push(snf.u_inv.mul_vec(&z));
            // increment mixed-radix counter
            let mut i = 0;
            loop {
                if i == self.generators {
                    return Ok(out);
                }
                z[i] += 1;
                if z[i] < d[i] {
                    break;
                }
                z[i] = BigInt::zero();
                i += 1;
            }
        }
    }
}

/// Homomorphism between presented groups, as a matrix on generators
/// (column `j` is the image of source generator `j`).
#[derive(Clone, PartialEq, Eq)]
pub struct AbHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMat,
}

impl std::fmt::Debug for AbHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AbHom({} -> {})", self.source.generators, self.target.generators)
    }
}

impl AbHom {
    /// Checks well-definedness: every source relation maps into the target
    /// relation span.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMat) -> Result<Self> {
        if matrix.rows() != target.generators || matrix.cols() != source.generators {
            return Err(Error::ShapeMismatch(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators,
                source.generators
            )));
        }
        let mapped = matrix.mul(&source.relations);
        let tsnf = smith_normal_form(&target.relations);
        for j in 0..mapped.cols() {
            if !intmat::in_span(&tsnf, &mapped.col(j)) {
                return Err(Error::Validation(format!(
                    "hom not well-defined: image of relation {} escapes target relations",
                    j
                )));
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMat::zeros(target.generators, source.generators),
        }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        AbHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMat::identity(g.generators),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    /// `other` after `self` (self: A -> B, other: B -> C).
    pub fn then(&self, other: &AbHom) -> AbHom {
        assert_eq!(
            self.target.generators, other.source.generators,
            "hom composition shape mismatch"
        );
        AbHom {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        }
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &AbHom) -> AbHom {
        AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn neg(&self) -> AbHom {
        AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.neg(),
        }
    }

    pub fn scale(&self, k: i64) -> AbHom {
        AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(&BigInt::from(k)),
        }
    }

    pub fn is_zero_hom(&self) -> bool {
        let tsnf = smith_normal_form(&self.target.relations);
        (0..self.matrix.cols()).all(|j| intmat::in_span(&tsnf, &self.matrix.col(j)))
    }

    /// Equality as homomorphisms: `f - g` vanishes modulo target relations
    /// on every generator. Errors on source/target shape mismatch.
    pub fn hom_equal(&self, other: &AbHom) -> Result<bool> {
        if self.source.generators != other.source.generators
            || self.target.generators != other.target.generators
            || self.source.relations != other.source.relations
            || self.target.relations != other.target.relations
        {
            return Err(Error::ShapeMismatch(
                "hom_equal requires identical source and target presentations".into(),
            ));
        }
        Ok(self.sub(other).is_zero_hom())
    }

    /// Kernel as a presented group with its inclusion into the source.
    pub fn kernel(&self) -> (FgAbGroup, AbHom) {
        // Lattice {x : Fx in span(R_target)} = projection of ker [F | R_t].
        let block = self.matrix.hstack(self.target.relations());
        let kb = kernel_basis(&block).submatrix_rows(0, self.source.generators);
        let basis = column_span_basis(&kb);
        // Source relations lie in the lattice (well-definedness), so they
        // have coordinates in the basis.
        let rel_coords = solve_mat(&basis, &self.source.relations)
            .expect("source relations must lie in the kernel lattice");
        let group = FgAbGroup { generators: basis.cols(), relations: rel_coords };
        let incl = AbHom {
            source: group.clone(),
            target: self.source.clone(),
            matrix: basis,
        };
        (group, incl)
    }

    /// Cokernel as a presented group (target generators, relations extended
    /// by the image columns).
    pub fn cokernel(&self) -> FgAbGroup {
        FgAbGroup {
            generators: self.target.generators,
            relations: self.target.relations.hstack(&self.matrix),
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Restrict along subgroup inclusions: given `i_s: S -> source` and
    /// `i_t: T -> target` with `f(S) <= T`, the unique `S -> T` commuting
    /// with the inclusions. `None` if the image escapes `T`.
    pub fn restrict(&self, incl_src: &AbHom, incl_tgt: &AbHom) -> Option<AbHom> {
        let mapped = self.matrix.mul(&incl_src.matrix);
        // Solve incl_tgt.matrix * X = mapped modulo target relations:
        // columns must be expressible as T-basis combos plus relations.
        let block = incl_tgt.matrix.hstack(self.target.relations());
        let solved = solve_mat(&block, &mapped)?;
        let coords = solved.submatrix_rows(0, incl_tgt.source.generators);
        AbHom::new(incl_src.source.clone(), incl_tgt.source.clone(), coords).ok()
    }
}

/// Direct sum of homomorphisms (block diagonal).
pub fn hom_direct_sum(parts: &[&AbHom]) -> AbHom {
    let src: Vec<&FgAbGroup> = parts.iter().map(|h| h.source()).collect();
    let tgt: Vec<&FgAbGroup> = parts.iter().map(|h| h.target()).collect();
    let mats: Vec<&IntMat> = parts.iter().map(|h| h.matrix()).collect();
    AbHom {
        source: FgAbGroup::direct_sum(&src),
        target: FgAbGroup::direct_sum(&tgt),
        matrix: IntMat::block_diag(&mats),
    }
}

/// Presented subquotient data: a homology/cohomology group together with the
/// cycle-lattice basis its generators refer to, so induced maps can be
/// computed coherently.
#[derive(Clone, Debug)]
pub struct SubquotientGroup {
    pub group: FgAbGroup,
    /// Columns: lattice basis of the cycle subgroup inside the ambient
    /// generator space.
    pub cycle_basis: IntMat,
}

/// `(num_basis + ambient relations) / (den_gens + ambient relations)`,
/// where `num_lattice` is a generating matrix for the numerator lattice
/// (must contain the ambient relations and the denominator columns).
pub fn subquotient(num_lattice: &IntMat, den_gens: &IntMat) -> SubquotientGroup {
    let basis = column_span_basis(num_lattice);
    let coords = solve_mat(&basis, den_gens)
        .expect("denominator must lie in the numerator lattice");
    SubquotientGroup {
        group: FgAbGroup { generators: basis.cols(), relations: coords },
        cycle_basis: basis,
    }
}

/// Cochain complex: groups in degrees `lo..lo+groups.len()`, differentials of
/// degree +1. The complex is genuinely zero below `lo` and truncated (unknown)
/// above the top degree.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    lo: i64,
    groups: Vec<FgAbGroup>,
    diffs: Vec<AbHom>,
}

impl CochainComplex {
    /// Validates shape and `d . d = 0`.
    pub fn new(lo: i64, groups: Vec<FgAbGroup>, diffs: Vec<AbHom>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Validation("cochain complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != groups.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} groups need {} differentials, got {}",
                groups.len(),
                groups.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source() != &groups[k] || d.target() != &groups[k + 1] {
                return Err(Error::ShapeMismatch(format!(
                    "differential at degree {} does not match its groups",
                    lo + k as i64
                )));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k].then(&diffs[k + 1]).is_zero_hom() {
                return Err(Error::Validation(format!(
                    "d.d != 0 at degree {}",
                    lo + k as i64
                )));
            }
        }
        Ok(CochainComplex { lo, groups, diffs })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.groups.len() as i64 - 1
    }

    pub fn group(&self, n: i64) -> Option<&FgAbGroup> {
        usize::try_from(n - self.lo).ok().and_then(|i| self.groups.get(i))
    }

    pub fn differential(&self, n: i64) -> Option<&AbHom> {
        usize::try_from(n - self.lo).ok().and_then(|i| self.diffs.get(i))
    }

    /// Cohomology with its cycle basis. Needs the outgoing differential, so
    /// `lo <= n <= hi - 1`; the incoming differential at `lo` is genuinely
    /// zero.
    pub fn cohomology_data(&self, n: i64) -> Result<SubquotientGroup> {
        if n < self.lo || n > self.hi() - 1 {
            return Err(Error::DegreeOutOfRange { degree: n, lo: self.lo, hi: self.hi() - 1 });
        }
        let p = (n - self.lo) as usize;
        let g = &self.groups[p];
        let out = &self.diffs[p];
        // cycle lattice: {x : d(x) = 0 mod target relations}
        let block = out.matrix().hstack(out.target().relations());
        let cycles = kernel_basis(&block).submatrix_rows(0, g.generators());
        // boundaries: incoming image columns (empty at the bottom degree)
        let boundary = if p == 0 {
            IntMat::zeros(g.generators(), 0)
        } else {
            self.diffs[p - 1].matrix().clone()
        };
        let num = cycles.hstack(g.relations());
        let den = boundary.hstack(g.relations());
        Ok(subquotient(&num, &den))
    }

    /// `ker(d^n) / im(d^{n-1})` in invariant-factor normal form.
    pub fn cohomology(&self, n: i64) -> Result<FgAbGroup> {
        Ok(self.cohomology_data(n)?.group)
    }
}

/// Non-negatively graded chain complex with degree -1 differentials,
/// truncated above.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    groups: Vec<FgAbGroup>,
    /// `diffs[m]`: boundary `C_{m+1} -> C_m`.
    diffs: Vec<AbHom>,
}

impl ChainComplex {
    pub fn new(groups: Vec<FgAbGroup>, diffs: Vec<AbHom>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Validation("chain complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != groups.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} groups need {} boundaries, got {}",
                groups.len(),
                groups.len() - 1,
                diffs.len()
            )));
        }
        for (m, d) in diffs.iter().enumerate() {
            if d.source() != &groups[m + 1] || d.target() != &groups[m] {
                return Err(Error::ShapeMismatch(format!(
                    "boundary into degree {} does not match its groups",
                    m
                )));
            }
        }
        for m in 0..diffs.len().saturating_sub(1) {
            if !diffs[m + 1].then(&diffs[m]).is_zero_hom() {
                return Err(Error::Validation(format!("d.d != 0 into degree {}", m)));
            }
        }
        Ok(ChainComplex { groups, diffs })
    }

    pub fn concentrated(group: FgAbGroup, degree: usize, top: usize) -> Self {
        let mut groups = vec![FgAbGroup::trivial(); top + 1];
        groups[degree] = group;
        let diffs = (0..top)
            .map(|m| AbHom::zero(&groups[m + 1], &groups[m]))
            .collect();
        ChainComplex { groups, diffs }
    }

    pub fn top(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn group(&self, m: usize) -> Option<&FgAbGroup> {
        self.groups.get(m)
    }

    /// Boundary `C_{m} -> C_{m-1}` for `1 <= m <= top`.
    pub fn boundary(&self, m: usize) -> Option<&AbHom> {
        if m == 0 {
            None
        } else {
            self.diffs.get(m - 1)
        }
    }

    /// Homology with cycle basis; needs the incoming boundary, so
    /// `0 <= n <= top - 1`. The outgoing boundary at degree 0 is genuinely
    /// zero.
    pub fn homology_data(&self, n: usize) -> Result<SubquotientGroup> {
        if n + 1 > self.top() {
            return Err(Error::DegreeOutOfRange {
                degree: n as i64,
                lo: 0,
                hi: self.top() as i64 - 1,
            });
        }
        let g = &self.groups[n];
        let cycles = if n == 0 {
            IntMat::identity(g.generators())
        } else {
            let out = &self.diffs[n - 1];
            let block = out.matrix().hstack(out.target().relations());
            kernel_basis(&block).submatrix_rows(0, g.generators())
        };
        let boundary = self.diffs[n].matrix().clone();
        let num = cycles.hstack(g.relations());
        let den = boundary.hstack(g.relations());
        Ok(subquotient(&num, &den))
    }

    pub fn homology(&self, n: usize) -> Result<FgAbGroup> {
        Ok(self.homology_data(n)?.group)
    }

    /// Good truncation at `n`: degrees < n unchanged, degree n replaced by
    /// the cokernel of the incoming boundary, zero above. Homology agrees in
    /// degrees <= n and vanishes above.
    pub fn good_truncation(&self, n: usize) -> Result<ChainComplex> {
        if n + 1 > self.top() {
            return Err(Error::DegreeOutOfRange {
                degree: n as i64,
                lo: 0,
                hi: self.top() as i64 - 1,
            });
        }
        let coker = self.diffs[n].cokernel();
        let mut groups: Vec<FgAbGroup> = self.groups[..n].to_vec();
        groups.push(coker.clone());
        let mut diffs: Vec<AbHom> = self.diffs[..n.saturating_sub(1)].to_vec();
        if n >= 1 {
            // induced boundary from the cokernel presentation (same
            // generators, more relations)
            let d = &self.diffs[n - 1];
            diffs.push(AbHom::new(coker, self.groups[n - 1].clone(), d.matrix().clone())?);
        }
        ChainComplex::new(groups, diffs)
    }

    /// Mapping cone of a chain map `f: X -> Y` (self = X):
    /// `cone_m = X_{m-1} + Y_m`, boundary `(x, y) -> (-dx, dy - f x)`.
    pub fn mapping_cone(f: &ChainMap) -> Result<ChainComplex> {
        let x = &f.source;
        let y = &f.target;
        let top = x.top().min(y.top());
        let mut groups = Vec::new();
        let mut diffs = Vec::new();
        for m in 0..=top {
            let xm1 = if m == 0 { FgAbGroup::trivial() } else { x.groups[m - 1].clone() };
            groups.push(FgAbGroup::direct_sum(&[&xm1, &y.groups[m]]));
        }
        for m in 1..=top {
            let gx1 = if m >= 2 { x.groups[m - 2].clone() } else { FgAbGroup::trivial() };
            let src = &groups[m];
            let tgt = &groups[m - 1];
            let mut mat = IntMat::zeros(tgt.generators(), src.generators());
            let x_cols = if m >= 1 { x.groups[m - 1].generators() } else { 0 };
            let x_rows = gx1.generators();
            // -d_X block
            if m >= 2 {
                let dm = x.diffs[m - 2].matrix();
                for i in 0..dm.rows() {
                    for j in 0..dm.cols() {
                        mat[(i, j)] = -dm[(i, j)].clone();
                    }
                }
            }
            // -f block (X_{m-1} -> Y_{m-1})
            let fm = f.maps[m - 1].matrix();
            for i in 0..fm.rows() {
                for j in 0..fm.cols() {
                    mat[(x_rows + i, j)] = -fm[(i, j)].clone();
                }
            }
            // d_Y block
            let dy = y.diffs[m - 1].matrix();
            for i in 0..dy.rows() {
                for j in 0..dy.cols() {
                    mat[(x_rows + i, x_cols + j)] = dy[(i, j)].clone();
                }
            }
            diffs.push(AbHom::new(src.clone(), tgt.clone(), mat)?);
        }
        ChainComplex::new(groups, diffs)
    }
}

/// Chain map between non-negatively graded complexes, validated to commute
/// with boundaries on the shared degree range.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub maps: Vec<AbHom>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, maps: Vec<AbHom>) -> Result<Self> {
        let top = source.top().min(target.top());
        if maps.len() != top + 1 {
            return Err(Error::ShapeMismatch(format!(
                "chain map needs {} components, got {}",
                top + 1,
                maps.len()
            )));
        }
        for m in 0..=top {
            if maps[m].source() != &source.groups[m] || maps[m].target() != &target.groups[m] {
                return Err(Error::ShapeMismatch(format!(
                    "chain map component {} does not match its groups",
                    m
                )));
            }
        }
        for m in 1..=top {
            let lhs = source.diffs[m - 1].then(&maps[m - 1]);
            let rhs = maps[m].then(&target.diffs[m - 1]);
            if !lhs.hom_equal(&rhs)? {
                return Err(Error::Validation(format!(
                    "chain map does not commute with boundaries at degree {}",
                    m
                )));
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    /// Induced map on homology at degree `n`.
    pub fn homology_map(&self, n: usize) -> Result<(SubquotientGroup, SubquotientGroup, AbHom)> {
        let hs = self.source.homology_data(n)?;
        let ht = self.target.homology_data(n)?;
        let mapped = self.maps[n].matrix().mul(&hs.cycle_basis);
        // express the images in the target cycle basis, modulo relations
        let block = ht
            .cycle_basis
            .hstack(self.target.groups[n].relations());
        let solved = solve_mat(&block, &mapped).ok_or_else(|| {
            Error::Validation("image of a cycle is not a cycle in the target".into())
        })?;
        let coords = solved.submatrix_rows(0, ht.cycle_basis.cols());
        let hom = AbHom::new(hs.group.clone(), ht.group.clone(), coords)?;
        Ok((hs, ht, hom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_normalize() {
        // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6
        let g = FgAbGroup::new(2, IntMat::diag(&[2, 3])).unwrap();
        let inv = g.invariant_factors();
        assert_eq!(inv.torsion, vec![BigInt::from(6)]);
        assert_eq!(inv.free_rank, 0);
        assert_eq!(format!("{}", inv), "Z/6");
    }

    #[test]
    fn element_equality_mod_relations() {
        let z2 = FgAbGroup::cyclic(2);
        assert!(z2.elements_equal(&[BigInt::from(1)], &[BigInt::from(3)]));
        assert!(!z2.elements_equal(&[BigInt::from(1)], &[BigInt::from(2)]));
        let z = FgAbGroup::free(1);
        assert!(!z.elements_equal(&[BigInt::from(1)], &[BigInt::from(2)]));
    }

    #[test]
    fn hom_well_definedness() {
        let z2 = FgAbGroup::cyclic(2);
        let z4 = FgAbGroup::cyclic(4);
        // Z/2 -> Z/4 by 1 -> 2 is fine; 1 -> 1 is not.
        assert!(AbHom::new(z2.clone(), z4.clone(), IntMat::from_rows(vec![vec![2]])).is_ok());
        assert!(AbHom::new(z2.clone(), z4.clone(), IntMat::from_rows(vec![vec![1]])).is_err());
    }

    #[test]
    fn hom_equal_examples() {
        let z2 = FgAbGroup::cyclic(2);
        let z = FgAbGroup::free(1);
        let f = AbHom::new(z.clone(), z2.clone(), IntMat::from_rows(vec![vec![1]])).unwrap();
        let g = AbHom::new(z.clone(), z2.clone(), IntMat::from_rows(vec![vec![3]])).unwrap();
        assert!(f.hom_equal(&g).unwrap());
        let f2 = AbHom::new(z.clone(), z.clone(), IntMat::from_rows(vec![vec![1]])).unwrap();
        let g2 = AbHom::new(z.clone(), z.clone(), IntMat::from_rows(vec![vec![2]])).unwrap();
        assert!(!f2.hom_equal(&g2).unwrap());
        // shape mismatch errors
        assert!(f.hom_equal(&f2).is_err());
    }

    #[test]
    fn cohomology_of_multiplication_by_two() {
        // 0 -> Z --x2--> Z -> 0 (explicit zero at the top): H^1 = Z/2
        let z = FgAbGroup::free(1);
        let zero = FgAbGroup::trivial();
        let c = CochainComplex::new(
            0,
            vec![z.clone(), z.clone(), zero.clone()],
            vec![
                AbHom::new(z.clone(), z.clone(), IntMat::from_rows(vec![vec![2]])).unwrap(),
                AbHom::zero(&z, &zero),
            ],
        )
        .unwrap();
        assert_eq!(c.cohomology(0).unwrap().invariant_factors().to_string(), "0");
        assert_eq!(c.cohomology(1).unwrap().invariant_factors().to_string(), "Z/2");
        assert!(c.cohomology(2).is_err());
    }

    #[test]
    fn cohomology_zero_differentials() {
        let z6 = FgAbGroup::new(2, IntMat::diag(&[2, 3])).unwrap();
        let c = CochainComplex::new(
            0,
            vec![z6.clone(), z6.clone()],
            vec![AbHom::zero(&z6, &z6)],
        )
        .unwrap();
        assert_eq!(c.cohomology(0).unwrap().invariant_factors(), z6.invariant_factors());
    }

    #[test]
    fn dd_nonzero_rejected() {
        let z = FgAbGroup::free(1);
        let one = AbHom::identity(&z);
        assert!(matches!(
            CochainComplex::new(0, vec![z.clone(), z.clone(), z.clone()], vec![one.clone(), one]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn kernel_and_cokernel() {
        let z = FgAbGroup::free(1);
        let f = AbHom::new(z.clone(), z.clone(), IntMat::from_rows(vec![vec![2]])).unwrap();
        assert!(f.kernel().0.is_trivial());
        assert_eq!(f.cokernel().invariant_factors().to_string(), "Z/2");
        assert!(!f.is_surjective());
        assert!(f.is_injective());
    }

    #[test]
    fn enumerate_z6() {
        let g = FgAbGroup::new(2, IntMat::diag(&[2, 3])).unwrap();
        let els = g.enumerate_elements().unwrap();
        assert_eq!(els.len(), 6);
        // all distinct mod relations
        for i in 0..els.len() {
            for j in 0..i {
                assert!(!g.elements_equal(&els[i], &els[j]));
            }
        }
        assert!(FgAbGroup::free(1).enumerate_elements().is_err());
    }

    #[test]
    fn presentation_independence() {
        // same group, two presentations: Z/2 + Z/4
        let a = FgAbGroup::new(2, IntMat::diag(&[2, 4])).unwrap();
        let b = FgAbGroup::new(
            2,
            IntMat::from_rows(vec![vec![2, 2], vec![0, 4]]),
        )
        .unwrap();
        assert_eq!(a.invariant_factors(), b.invariant_factors());
    }
}
