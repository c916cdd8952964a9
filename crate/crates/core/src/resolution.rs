//! Graded free resolutions: Schreyer syzygies, iterated resolutions,
//! minimalization by elementary operations, Betti tables and the Hilbert
//! numerator.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groebner::{buchberger_module, BuchbergerOptions, GroebnerBasis};
use crate::poly::{
    Coeff, ModTerm, ModuleElement, ModuleOrder, Monomial, MonomialOrder, Polynomial, SchreyerFrame,
    Var,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("Gröbner basis has no complete transcript")]
    TranscriptIncomplete,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not an elementary matrix: {0}")]
    NotElementary(String),
    #[error("operation breaks homogeneity: {0}")]
    HomogeneityBroken(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("resolution is not minimal")]
    NotMinimal,
}

/// `⊕ R(−d)` over the listed twists `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GradedFreeModule {
    pub twists: Vec<u64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<u64>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// A homogeneous map of graded free modules, as a matrix with one row per
/// target basis element and one column per source basis element.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap {
    ring: MonomialOrder,
    source: GradedFreeModule,
    target: GradedFreeModule,
    entries: Vec<Vec<Polynomial>>,
}

impl GradedMap {
    /// Panics when an entry is not homogeneous of degree
    /// `source[j] − target[i]`.
    pub fn new(
        ring: MonomialOrder,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Self {
        match Self::try_new(ring, source, target, entries) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_new(
        ring: MonomialOrder,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self, ResolutionError> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(ResolutionError::ShapeMismatch(format!(
                "matrix does not have shape {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        let map = GradedMap {
            ring,
            source,
            target,
            entries,
        };
        for i in 0..map.rows() {
            for j in 0..map.cols() {
                map.check_entry(i, j)?;
            }
        }
        Ok(map)
    }

    pub fn zero(ring: MonomialOrder, source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let entries = vec![vec![Polynomial::zero(ring); source.rank()]; target.rank()];
        GradedMap {
            ring,
            source,
            target,
            entries,
        }
    }

    fn check_entry(&self, i: usize, j: usize) -> Result<(), ResolutionError> {
        let e = &self.entries[i][j];
        if e.is_zero() {
            return Ok(());
        }
        let want = self.source.twists[j] as i128 - self.target.twists[i] as i128;
        match e.is_homogeneous(&self.ring.grading) {
            Some(d) if d as i128 == want => Ok(()),
            got => Err(ResolutionError::HomogeneityBroken(format!(
                "entry ({i},{j}) = {e} has degree {got:?}, expected {want}"
            ))),
        }
    }

    pub fn ring(&self) -> MonomialOrder {
        self.ring
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    /// Every entry lies in the homogeneous maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::in_maximal_ideal)
    }

    /// The matrix product `self · other`.
    pub fn product(&self, other: &GradedMap) -> Result<Vec<Vec<Polynomial>>, ResolutionError> {
        if self.cols() != other.rows() {
            return Err(ResolutionError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        let mut out = vec![vec![Polynomial::zero(self.ring); other.cols()]; self.rows()];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = Polynomial::zero(self.ring);
                for k in 0..self.cols() {
                    let a = &self.entries[i][k];
                    let b = &other.entries[k][j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                *slot = acc;
            }
        }
        Ok(out)
    }

    fn row_add(&mut self, i: usize, j: usize, alpha: &Polynomial) {
        if alpha.is_zero() {
            return;
        }
        for k in 0..self.cols() {
            if !self.entries[j][k].is_zero() {
                let add = alpha * &self.entries[j][k];
                self.entries[i][k] = &self.entries[i][k] + &add;
            }
        }
    }

    fn col_add(&mut self, j: usize, i: usize, alpha: &Polynomial) {
        if alpha.is_zero() {
            return;
        }
        for row in &mut self.entries {
            if !row[i].is_zero() {
                let add = &row[i] * alpha;
                row[j] = &row[j] + &add;
            }
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.entries.swap(i, j);
        self.target.twists.swap(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        for row in &mut self.entries {
            row.swap(i, j);
        }
        self.source.twists.swap(i, j);
    }

    fn row_scale(&mut self, i: usize, c: Coeff) {
        for e in &mut self.entries[i] {
            *e = e.scale(c);
        }
    }

    fn col_scale(&mut self, j: usize, c: Coeff) {
        for row in &mut self.entries {
            row[j] = row[j].scale(c);
        }
    }

    fn delete_row(&mut self, i: usize) {
        self.entries.remove(i);
        self.target.twists.remove(i);
    }

    fn delete_col(&mut self, j: usize) {
        for row in &mut self.entries {
            row.remove(j);
        }
        self.source.twists.remove(j);
    }

    /// Polynomial degree multiset of the nonzero entries.
    pub fn degree_multiset(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for e in self.entries.iter().flatten() {
            if let Some(d) = e.degree() {
                *out.entry(d).or_insert(0) += 1;
            }
        }
        out
    }
}

impl fmt::Display for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols())
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        for row in &cells {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            writeln!(f, "[ {} ]", padded.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GradedMap {:?} -> {:?}",
            self.source.twists, self.target.twists
        )?;
        fmt::Display::fmt(self, f)
    }
}

/// A graded free resolution `… → F_1 → F_0 → R`; `maps[k]` is
/// `F_k → F_{k−1}` with `F_{−1} = R` at twist 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    pub ring: MonomialOrder,
    pub maps: Vec<GradedMap>,
    pub minimal: bool,
}

impl FreeResolution {
    pub fn new(ring: MonomialOrder, maps: Vec<GradedMap>) -> Result<Self, ResolutionError> {
        for k in 1..maps.len() {
            if maps[k].target != maps[k - 1].source {
                return Err(ResolutionError::ShapeMismatch(format!(
                    "F_{} differs between maps {} and {}",
                    k - 1,
                    k - 1,
                    k
                )));
            }
        }
        if let Some(m) = maps.first() {
            if m.target.twists != [0] {
                return Err(ResolutionError::ShapeMismatch(
                    "first map must land in R".into(),
                ));
            }
        }
        let minimal = maps.iter().all(GradedMap::is_minimal);
        Ok(FreeResolution {
            ring,
            maps,
            minimal,
        })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(GradedMap::cols).collect()
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn module(&self, k: usize) -> &GradedFreeModule {
        &self.maps[k].source
    }

    pub fn compositions_vanish(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| compose_zero(&w[0], &w[1]).unwrap_or(false))
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(GradedMap::is_minimal)
    }

    /// A copy with twist `j` of `F_k` moved by `delta`. The copy is no
    /// longer a graded complex; it exists to exercise failing checks.
    pub fn with_twist_shifted(&self, k: usize, j: usize, delta: i64) -> FreeResolution {
        let mut out = self.clone();
        let t = &mut out.maps[k].source.twists[j];
        *t = (*t as i64 + delta) as u64;
        out
    }

    fn truncate_empty(&mut self) {
        if let Some(k) = self.maps.iter().position(|m| m.cols() == 0) {
            self.maps.truncate(k);
        }
    }
}

/// True iff `a · b = 0`, where `b` maps into the source of `a`.
pub fn compose_zero(a: &GradedMap, b: &GradedMap) -> Result<bool, ResolutionError> {
    Ok(a.product(b)?.iter().flatten().all(Polynomial::is_zero))
}

fn element_degree(order: &ModuleOrder, e: &ModuleElement) -> u64 {
    let lt = e.lead().expect("zero element has no degree");
    match order {
        ModuleOrder::PositionOverTerm(ring) => ring.degree(&lt.mono),
        ModuleOrder::Schreyer(f) => order.ring().degree(&lt.mono.mul(&f.total(lt.pos))),
    }
}

/// Syzygy columns of a Gröbner basis together with the induced order.
struct SyzygyColumns {
    columns: Vec<ModuleElement>,
    order: ModuleOrder,
}

fn syzygy_columns(gb: &GroebnerBasis) -> Result<SyzygyColumns, ResolutionError> {
    let tr = gb
        .transcript
        .as_ref()
        .ok_or(ResolutionError::TranscriptIncomplete)?;
    let expected: BTreeSet<(usize, usize)> = (0..gb.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| gb.elements[i].lead().unwrap().pos == gb.elements[j].lead().unwrap().pos)
        .collect();
    let seen: BTreeSet<(usize, usize)> = tr.iter().map(|r| (r.i, r.j)).collect();
    if seen != expected || tr.len() != expected.len() {
        return Err(ResolutionError::TranscriptIncomplete);
    }
    let order = ModuleOrder::Schreyer(Arc::new(SchreyerFrame::induced(&gb.order, &gb.elements)));
    let columns = tr
        .iter()
        .map(|rec| {
            let mut terms: Vec<ModTerm> = Vec::new();
            for (k, h) in rec.quotients.iter().enumerate() {
                terms.extend(h.terms().iter().map(|t| ModTerm::new(t.coeff, t.mono, k)));
            }
            terms.push(ModTerm::new(-rec.cf_i.coeff, rec.cf_i.mono, rec.i));
            terms.push(ModTerm::new(rec.cf_j.coeff, rec.cf_j.mono, rec.j));
            ModuleElement::from_terms(&order, terms)
        })
        .collect();
    Ok(SyzygyColumns { columns, order })
}

fn columns_to_map(
    ring: MonomialOrder,
    target: GradedFreeModule,
    order: &ModuleOrder,
    columns: &[ModuleElement],
) -> GradedMap {
    let source = GradedFreeModule::new(columns.iter().map(|c| element_degree(order, c)).collect());
    let comps: Vec<Vec<Polynomial>> = columns
        .iter()
        .map(|c| c.components(ring, target.rank()))
        .collect();
    let entries = (0..target.rank())
        .map(|i| comps.iter().map(|col| col[i].clone()).collect())
        .collect();
    GradedMap::new(ring, source, target, entries)
}

/// One syzygy per S-pair of `gb`, read off its reduction transcript:
/// the column `h − a_j e_i + a_i e_j` when `a_j g_i − a_i g_j = Σ h_k g_k`.
pub fn schreyer_syzygies(gb: &GroebnerBasis) -> Result<GradedMap, ResolutionError> {
    let syz = syzygy_columns(gb)?;
    let target = GradedFreeModule::new(
        gb.elements
            .iter()
            .map(|e| element_degree(&gb.order, e))
            .collect(),
    );
    Ok(columns_to_map(gb.ring(), target, &syz.order, &syz.columns))
}

/// Variable priority used when sorting a basis so that each Schreyer step
/// eliminates one more variable from the leading terms.
const SORT_VARS: [Var; 4] = [Var::Y, Var::X2, Var::X1, Var::X0];

fn lex_key(m: &Monomial) -> [u32; 4] {
    SORT_VARS.map(|v| m.exp(v))
}

/// Sort by leading position, then lexicographically descending leading
/// monomial; drop elements whose leading term is a multiple of another's.
fn prepare_level(elems: Vec<ModuleElement>) -> Vec<ModuleElement> {
    let leads: Vec<ModTerm> = elems.iter().map(|e| *e.lead().unwrap()).collect();
    let mut keep: Vec<(usize, ModuleElement)> = elems
        .into_iter()
        .enumerate()
        .filter(|(k, _)| {
            let lk = &leads[*k];
            !leads.iter().enumerate().any(|(l, ll)| {
                l != *k
                    && ll.pos == lk.pos
                    && ll.mono.divides(&lk.mono)
                    && (ll.mono != lk.mono || l < *k)
            })
        })
        .collect();
    keep.sort_by(|(a, _), (b, _)| {
        let (la, lb) = (&leads[*a], &leads[*b]);
        la.pos
            .cmp(&lb.pos)
            .then_with(|| lex_key(&lb.mono).cmp(&lex_key(&la.mono)))
            .then_with(|| a.cmp(b))
    });
    keep.into_iter().map(|(_, e)| e).collect()
}

pub fn build_resolution(ideal_gens: &[Polynomial]) -> FreeResolution {
    build_resolution_with(ideal_gens, BuchbergerOptions::default())
}

/// Iterated Schreyer resolution of `R/⟨ideal_gens⟩` (usually not minimal).
pub fn build_resolution_with(ideal_gens: &[Polynomial], opts: BuchbergerOptions) -> FreeResolution {
    let opts = BuchbergerOptions {
        transcript: true,
        ..opts
    };
    let ring = *ideal_gens.first().expect("no generators").order();
    let pot = ModuleOrder::PositionOverTerm(ring);
    let start: Vec<ModuleElement> = ideal_gens.iter().map(ModuleElement::from_polynomial).collect();
    let completed = buchberger_module(&start, &pot, 1, opts).elements;
    let level0 = prepare_level(completed);
    let mut gb = buchberger_module(&level0, &pot, 1, opts);
    assert_eq!(gb.len(), level0.len());
    let row: Vec<Polynomial> = gb.polynomials();
    let mut maps = vec![GradedMap::new(
        ring,
        GradedFreeModule::new(row.iter().map(|p| p.degree().unwrap()).collect()),
        GradedFreeModule::new(vec![0]),
        vec![row],
    )];
    loop {
        let syz = syzygy_columns(&gb).expect("transcript recorded");
        if syz.columns.is_empty() {
            break;
        }
        let cols = prepare_level(syz.columns);
        let target = maps.last().unwrap().source.clone();
        maps.push(columns_to_map(ring, target, &syz.order, &cols));
        gb = buchberger_module(&cols, &syz.order, gb.len(), opts);
        assert_eq!(gb.len(), cols.len(), "Schreyer columns must already form a Gröbner basis");
    }
    FreeResolution::new(ring, maps).expect("consistent shapes")
}

/// An elementary invertible matrix acting on a free module's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// `E_ij(α)`: the identity plus `α` at row `i`, column `j`.
    Add { i: usize, j: usize, alpha: Polynomial },
    /// The permutation matrix exchanging basis elements `i` and `j`.
    Swap(usize, usize),
    /// The diagonal matrix with the nonzero constant `c` at `i`.
    Scale(usize, Coeff),
}

impl Elementary {
    pub fn add(i: usize, j: usize, alpha: Polynomial) -> Self {
        Elementary::Add { i, j, alpha }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Elementary::Add { i, j, alpha } => Elementary::Add {
                i: *i,
                j: *j,
                alpha: -alpha,
            },
            Elementary::Swap(i, j) => Elementary::Swap(*i, *j),
            Elementary::Scale(i, c) => Elementary::Scale(*i, c.recip()),
        }
    }
}

/// Inverse of the product `E_1 ⋯ E_k`, namely `E_k⁻¹ ⋯ E_1⁻¹`.
pub fn inverse_product(p: &[Elementary]) -> Vec<Elementary> {
    p.iter().rev().map(Elementary::inverse).collect()
}

fn check_elementary(
    e: &Elementary,
    twists: &[u64],
    ring: &MonomialOrder,
) -> Result<(), ResolutionError> {
    let rank = twists.len();
    let in_range = |k: usize| {
        if k < rank {
            Ok(())
        } else {
            Err(ResolutionError::ShapeMismatch(format!(
                "index {k} outside rank {rank}"
            )))
        }
    };
    match e {
        Elementary::Add { i, j, alpha } => {
            in_range(*i)?;
            in_range(*j)?;
            if i == j {
                return Err(ResolutionError::NotElementary(format!(
                    "E_{i}{j} has its entry on the diagonal"
                )));
            }
            if alpha.is_zero() {
                return Ok(());
            }
            let want = twists[*j] as i128 - twists[*i] as i128;
            match alpha.is_homogeneous(&ring.grading) {
                Some(d) if d as i128 == want => Ok(()),
                got => Err(ResolutionError::HomogeneityBroken(format!(
                    "E_{i}{j}({alpha}) needs degree {want}, has {got:?}"
                ))),
            }
        }
        Elementary::Swap(i, j) => {
            in_range(*i)?;
            in_range(*j)
        }
        Elementary::Scale(i, c) => {
            in_range(*i)?;
            if c.is_zero() {
                Err(ResolutionError::NotElementary("scaling by zero".into()))
            } else {
                Ok(())
            }
        }
    }
}

/// Change of basis of `F_position` by one elementary matrix `E`: the
/// incoming map becomes `E·M`, the outgoing one `M′·E⁻¹`.
fn apply_elementary(
    maps: &mut [GradedMap],
    position: usize,
    e: &Elementary,
) -> Result<(), ResolutionError> {
    let ring = maps[position].ring;
    check_elementary(e, &maps[position].source.twists, &ring)?;
    let (out, rest) = maps[position..].split_first_mut().unwrap();
    let incoming = rest.first_mut();
    match e {
        Elementary::Add { i, j, alpha } => {
            if let Some(m) = incoming {
                m.row_add(*i, *j, alpha);
            }
            out.col_add(*j, *i, &-alpha);
        }
        Elementary::Swap(i, j) => {
            if let Some(m) = incoming {
                m.row_swap(*i, *j);
            }
            out.col_swap(*i, *j);
        }
        Elementary::Scale(i, c) => {
            if let Some(m) = incoming {
                m.row_scale(*i, *c);
            }
            out.col_scale(*i, c.recip());
        }
    }
    Ok(())
}

/// Replace `F_position` by its image under the change of basis
/// `P = E_1 ⋯ E_k`: the incoming map becomes `P·M`, the outgoing map
/// `M′·P⁻¹`.
pub fn transform_complex(
    res: &FreeResolution,
    position: usize,
    p: &[Elementary],
) -> Result<FreeResolution, ResolutionError> {
    if position >= res.maps.len() {
        return Err(ResolutionError::ShapeMismatch(format!(
            "no module F_{position}"
        )));
    }
    let mut out = res.clone();
    for e in p.iter().rev() {
        apply_elementary(&mut out.maps, position, e)?;
    }
    out.minimal = out.is_minimal();
    Ok(out)
}

/// Delete the isolated unit at `(l, m)` of `maps[step]`, together with
/// the matching basis elements of `F_step` and `F_{step−1}`.
pub fn prune_unit(
    res: &FreeResolution,
    step: usize,
    l: usize,
    m: usize,
) -> Result<FreeResolution, ResolutionError> {
    let mut out = res.clone();
    prune_in_place(&mut out, step, l, m)?;
    Ok(out)
}

fn prune_in_place(res: &mut FreeResolution, step: usize, l: usize, m: usize) -> Result<(), ResolutionError> {
    let map = res
        .maps
        .get(step)
        .ok_or_else(|| ResolutionError::ShapeMismatch(format!("no map at step {step}")))?;
    if step == 0 {
        return Err(ResolutionError::PreconditionViolated(
            "cannot delete the ring itself".into(),
        ));
    }
    if l >= map.rows() || m >= map.cols() {
        return Err(ResolutionError::ShapeMismatch(format!(
            "entry ({l},{m}) outside {}x{}",
            map.rows(),
            map.cols()
        )));
    }
    if map.entry(l, m).as_constant().is_none_or(|c| c.is_zero()) {
        return Err(ResolutionError::PreconditionViolated(format!(
            "entry ({l},{m}) is not a nonzero constant"
        )));
    }
    let row_clear = (0..map.cols()).all(|k| k == m || map.entry(l, k).is_zero());
    let col_clear = (0..map.rows()).all(|i| i == l || map.entry(i, m).is_zero());
    if !row_clear || !col_clear {
        return Err(ResolutionError::PreconditionViolated(format!(
            "unit at ({l},{m}) is not isolated"
        )));
    }
    res.maps[step].delete_row(l);
    res.maps[step].delete_col(m);
    res.maps[step - 1].delete_col(l);
    if let Some(next) = res.maps.get_mut(step + 1) {
        next.delete_row(m);
    }
    res.truncate_empty();
    res.minimal = res.is_minimal();
    Ok(())
}

fn find_unit(res: &FreeResolution) -> Option<(usize, usize, usize)> {
    for (step, map) in res.maps.iter().enumerate() {
        for i in 0..map.rows() {
            for j in 0..map.cols() {
                if map.entry(i, j).is_unit() {
                    return Some((step, i, j));
                }
            }
        }
    }
    None
}

/// Bring the unit at `(l, m)` of `maps[step]` to 1 and clear its row (by
/// column operations) and then its column (by row operations).
fn isolate_unit(res: &mut FreeResolution, step: usize, l: usize, m: usize) {
    let c = res.maps[step].entry(l, m).as_constant().unwrap();
    if !c.is_one() {
        apply_elementary(&mut res.maps, step, &Elementary::Scale(m, c)).unwrap();
    }
    for k in 0..res.maps[step].cols() {
        let a = res.maps[step].entry(l, k).clone();
        if k != m && !a.is_zero() {
            apply_elementary(&mut res.maps, step, &Elementary::add(m, k, a)).unwrap();
        }
    }
    for i in 0..res.maps[step].rows() {
        let b = res.maps[step].entry(i, m).clone();
        if i != l && !b.is_zero() {
            apply_elementary(&mut res.maps, step - 1, &Elementary::add(i, l, -b)).unwrap();
        }
    }
}

/// Remove unit entries one at a time, smallest `(step, row, column)`
/// first, until every entry lies in the maximal ideal.
pub fn minimalize(res: &FreeResolution) -> FreeResolution {
    let mut out = res.clone();
    while let Some((step, l, m)) = find_unit(&out) {
        assert!(step > 0, "unit ideal has no proper resolution");
        isolate_unit(&mut out, step, l, m);
        prune_in_place(&mut out, step, l, m).expect("isolated unit");
    }
    out.minimal = true;
    out
}

/// Graded Betti numbers `β_{i,j}` of a minimal resolution, with `i = 0`
/// for the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, u64), usize>,
    pub totals: Vec<usize>,
}

impl BettiTable {
    /// `(i, degree, count)` in ascending order.
    pub fn graded(&self) -> Vec<(usize, u64, usize)> {
        self.entries.iter().map(|(&(i, d), &c)| (i, d, c)).collect()
    }

    pub fn degrees(&self, i: usize) -> Vec<u64> {
        let mut out = Vec::new();
        for (&(k, d), &c) in &self.entries {
            if k == i {
                out.extend(std::iter::repeat_n(d, c));
            }
        }
        out
    }
}

pub fn betti_table(res: &FreeResolution) -> Result<BettiTable, ResolutionError> {
    if !res.is_minimal() {
        return Err(ResolutionError::NotMinimal);
    }
    let mut entries = BTreeMap::new();
    for (i, m) in res.maps.iter().enumerate() {
        for &t in &m.source.twists {
            *entries.entry((i, t)).or_insert(0) += 1;
        }
    }
    Ok(BettiTable {
        entries,
        totals: res.ranks(),
    })
}

/// `K(z) = Σ_i (−1)^i Σ_j z^{twist}` over `F_{−1} = R, F_0, F_1, …`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HilbertNumerator {
    pub coeffs: BTreeMap<u64, i64>,
}

impl HilbertNumerator {
    /// `(degree, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> Vec<(u64, i64)> {
        self.coeffs.iter().map(|(&d, &c)| (d, c)).collect()
    }

    /// Power-series coefficients of `K(z) / Π (1 − z^w)` up to `z^len`.
    pub fn series(&self, weights: &[u64], len: usize) -> Vec<i64> {
        let mut a = vec![0i64; len + 1];
        for (&d, &c) in &self.coeffs {
            if (d as usize) <= len {
                a[d as usize] += c;
            }
        }
        for &w in weights {
            let w = w as usize;
            for k in w..=len {
                a[k] += a[k - w];
            }
        }
        a
    }
}

impl fmt::Display for HilbertNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&d, &c)) in self.coeffs.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (a, d) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => write!(f, "z")?,
                (1, _) => write!(f, "z^{d}")?,
                (_, 1) => write!(f, "{a}*z")?,
                _ => write!(f, "{a}*z^{d}")?,
            }
        }
        Ok(())
    }
}

pub fn hilbert_numerator(res: &FreeResolution) -> HilbertNumerator {
    let mut coeffs: BTreeMap<u64, i64> = BTreeMap::new();
    *coeffs.entry(0).or_insert(0) += 1;
    for (i, m) in res.maps.iter().enumerate() {
        let sign = if i % 2 == 0 { -1 } else { 1 };
        for &t in &m.source.twists {
            *coeffs.entry(t).or_insert(0) += sign;
        }
    }
    coeffs.retain(|_, c| *c != 0);
    HilbertNumerator { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, toric_kernel};
    use crate::poly::{parse_polynomial, WeightedGrading};
    use crate::semigroup::{gamma_series_truncation, validate_sequence};

    fn ring(w: [u64; 4]) -> MonomialOrder {
        MonomialOrder::grevlex(WeightedGrading::new(w[0], w[1], w[2], w[3]))
    }

    fn p(o: MonomialOrder, s: &str) -> Polynomial {
        parse_polynomial(s, o).unwrap()
    }

    #[test]
    fn koszul_pair() {
        let o = ring([5, 7, 1, 1]);
        let gb = buchberger(&[p(o, "X0"), p(o, "X1")]);
        let syz = schreyer_syzygies(&gb).unwrap();
        assert_eq!(syz.column(0), vec![p(o, "-X1"), p(o, "X0")]);
        assert_eq!(syz.source().twists, vec![12]);
        let res = build_resolution(&[p(o, "X0"), p(o, "X1")]);
        assert_eq!(res.ranks(), vec![2, 1]);
        let bt = betti_table(&res).unwrap();
        assert_eq!(bt.degrees(0), vec![5, 7]);
        assert_eq!(bt.degrees(1), vec![12]);
        assert_eq!(hilbert_numerator(&res).to_string(), "1 - z^5 - z^7 + z^12");
    }

    #[test]
    fn principal_ideal() {
        let o = ring([5, 7, 9, 11]);
        let res = build_resolution(&[p(o, "X0")]);
        assert_eq!(res.ranks(), vec![1]);
        assert_eq!(hilbert_numerator(&res).terms(), vec![(0, 1), (5, -1)]);
    }

    #[test]
    fn transcript_required() {
        let o = ring([1, 1, 1, 1]);
        let mut gb = buchberger(&[p(o, "X0"), p(o, "X1")]);
        gb.transcript = None;
        assert_eq!(schreyer_syzygies(&gb), Err(ResolutionError::TranscriptIncomplete));
    }

    #[test]
    fn inhomogeneous_entry_rejected() {
        let o = ring([5, 7, 9, 11]);
        let r = GradedMap::try_new(
            o,
            GradedFreeModule::new(vec![14]),
            GradedFreeModule::new(vec![0]),
            vec![vec![p(o, "X0 + X1")]],
        );
        assert!(matches!(r, Err(ResolutionError::HomogeneityBroken(_))));
    }

    #[test]
    fn identity_and_swap_transforms() {
        let o = ring([5, 7, 1, 1]);
        let res = build_resolution(&[p(o, "X0"), p(o, "X1")]);
        assert_eq!(transform_complex(&res, 0, &[]).unwrap(), res);
        let sw = transform_complex(&res, 0, &[Elementary::Swap(0, 1)]).unwrap();
        let row = &res.maps[0].entries()[0];
        assert_eq!(sw.maps[0].entries()[0], vec![row[1].clone(), row[0].clone()]);
        let col = res.maps[1].column(0);
        assert_eq!(sw.maps[1].column(0), vec![col[1].clone(), col[0].clone()]);
        let t = &res.module(0).twists;
        assert_eq!(sw.module(0).twists, vec![t[1], t[0]]);
        assert!(sw.compositions_vanish());
        let bad = transform_complex(&res, 0, &[Elementary::add(0, 1, p(o, "X0"))]);
        assert!(matches!(bad, Err(ResolutionError::HomogeneityBroken(_))));
        let diag = transform_complex(&res, 0, &[Elementary::add(0, 0, p(o, "1"))]);
        assert!(matches!(diag, Err(ResolutionError::NotElementary(_))));
    }

    #[test]
    fn prune_rank_one_unit() {
        // R --[x]--> R, then a redundant copy R --[1]--> R
        let o = ring([1, 1, 1, 1]);
        let a = GradedMap::new(
            o,
            GradedFreeModule::new(vec![1, 1]),
            GradedFreeModule::new(vec![0]),
            vec![vec![p(o, "X0"), p(o, "X0")]],
        );
        let b = GradedMap::new(
            o,
            GradedFreeModule::new(vec![1]),
            GradedFreeModule::new(vec![1, 1]),
            vec![vec![p(o, "1")], vec![p(o, "-1")]],
        );
        let res = FreeResolution::new(o, vec![a, b]).unwrap();
        assert!(!res.minimal);
        assert!(matches!(
            prune_unit(&res, 1, 0, 0),
            Err(ResolutionError::PreconditionViolated(_))
        ));
        let min = minimalize(&res);
        assert_eq!(min.ranks(), vec![1]);
        assert_eq!(min.maps[0].entries()[0], vec![p(o, "X0")]);
        assert_eq!(hilbert_numerator(&min), hilbert_numerator(&res));
    }

    #[test]
    fn resolution_of_5_7_9_11() {
        let spec = validate_sequence(5, 7, 9, 11).unwrap();
        let gens = toric_kernel(&spec).reduced_gb.polynomials();
        let res = build_resolution(&gens);
        assert!(res.length() <= 4);
        assert!(res.compositions_vanish());
        let min = minimalize(&res);
        assert!(min.compositions_vanish());
        assert_eq!(min.ranks(), vec![5, 5, 1]);
        let bt = betti_table(&min).unwrap();
        assert_eq!(bt.degrees(0), vec![14, 16, 18, 20, 22]);
        let k = hilbert_numerator(&min);
        assert_eq!(k, hilbert_numerator(&res));
        assert_eq!(
            k.series(&spec.as_array(), 200),
            gamma_series_truncation(&spec, 200)
        );
    }

    #[test]
    fn minimal_input_is_unchanged() {
        let o = ring([5, 7, 1, 1]);
        let res = build_resolution(&[p(o, "X0"), p(o, "X1")]);
        assert_eq!(minimalize(&res).maps, res.maps);
    }
}
