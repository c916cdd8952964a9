//! Closed-form layer for almost arithmetic sequences: the binomial
//! generator templates, case parameters read off the toric ideal, the
//! Betti-number table, the per-case syzygy matrices and the graded shift
//! tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groebner::{
    buchberger, buchberger_with, ideal_member, reduce_basis, BuchbergerOptions, GroebnerBasis, ToricIdeal,
};
use crate::poly::{Coeff, DivisorChoice, Monomial, MonomialOrder, Polynomial, Var};
use crate::resolution::{
    compose_zero, inverse_product, minimalize, schreyer_syzygies, transform_complex, Elementary, FreeResolution,
    GradedFreeModule, GradedMap, ResolutionError,
};
use crate::semigroup::{min_multiple_in, SequenceSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatilError {
    #[error("DegreeImbalance: {0}")]
    DegreeImbalance(String),
    #[error("TemplateMismatch: {0}")]
    TemplateMismatch(String),
    #[error("CaseUnmatched: {0}")]
    CaseUnmatched(String),
    #[error("closed form is not a complex: {0}")]
    ClosedFormInvalid(String),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

/// The invariants `r, r′, λ, μ, ν, q, q′, v, w` and whether `W ≠ ∅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseParameters {
    pub r: u32,
    pub rp: u32,
    pub lambda: u32,
    pub mu: u32,
    pub nu: u32,
    pub q: u32,
    pub qp: u32,
    pub v: u32,
    pub w: u32,
    pub w_nonempty: bool,
}

impl CaseParameters {
    /// Named integer value, as used by template exponents and table formulas.
    pub fn value(&self, name: &str) -> Option<i64> {
        Some(match name {
            "r" => self.r,
            "rp" => self.rp,
            "lambda" => self.lambda,
            "mu" => self.mu,
            "nu" => self.nu,
            "q" => self.q,
            "qp" => self.qp,
            "v" => self.v,
            "w" => self.w,
            _ => return None,
        } as i64)
    }

    /// Range checks and the relation between `ν` and `λ + μ`.
    pub fn check(&self) -> Result<(), PatilError> {
        let bad = |m: &str| Err(PatilError::DegreeImbalance(format!("{m} in {self:?}")));
        if !(1..=2).contains(&self.r) || !(1..=2).contains(&self.rp) {
            return bad("r and r' must lie in {1, 2}");
        }
        if self.lambda < 1 || self.v < 2 || self.w < 1 || self.w >= self.v {
            return bad("need lambda >= 1, v >= 2, 1 <= w < v");
        }
        if self.qp > self.q || (self.r < self.rp && self.qp == self.q) {
            return bad("q' too large");
        }
        let extra = u32::from(self.r > self.rp);
        if self.nu != self.lambda + self.mu + extra {
            return bad("nu must be lambda + mu (+1 when r > r')");
        }
        Ok(())
    }
}

impl fmt::Display for CaseParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={} r'={} lambda={} mu={} nu={} q={} q'={} v={} w={} W{}",
            self.r,
            self.rp,
            self.lambda,
            self.mu,
            self.nu,
            self.q,
            self.qp,
            self.v,
            self.w,
            if self.w_nonempty { "≠∅" } else { "=∅" }
        )
    }
}

/// Total Betti numbers `[β0, β1, β2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiTriple(pub [usize; 3]);

impl BettiTriple {
    pub fn euler_ok(&self) -> bool {
        self.0[0] + self.0[2] == self.0[1] + 1
    }

    pub fn from_ranks(ranks: &[usize]) -> Option<Self> {
        match ranks {
            [1, b0, b1, b2] => Some(BettiTriple([*b0, *b1, *b2])),
            _ => None,
        }
    }
}

impl fmt::Display for BettiTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.0[0], self.0[1], self.0[2])
    }
}

/// The eight triples that occur.
pub const BETTI_TRIPLES: [BettiTriple; 8] = [
    BettiTriple([3, 3, 1]),
    BettiTriple([4, 5, 2]),
    BettiTriple([4, 6, 3]),
    BettiTriple([5, 5, 1]),
    BettiTriple([5, 6, 2]),
    BettiTriple([5, 7, 3]),
    BettiTriple([6, 8, 3]),
    BettiTriple([6, 9, 4]),
];

// ---------------------------------------------------------------------------
// Table data

fn condition_holds(c: &str, p: &CaseParameters) -> bool {
    let (lhs, rhs, eq) = match c.split_once("!=") {
        Some((l, r)) => (l, r, false),
        None => {
            let (l, r) = c.split_once('=').expect("condition needs = or !=");
            (l, r, true)
        }
    };
    let eval = |s: &str| eval_int(s, p).unwrap_or_else(|e| panic!("bad condition {c:?}: {e}"));
    (eval(lhs) == eval(rhs)) == eq
}

#[derive(Clone, Debug, Deserialize)]
struct BettiCell {
    w_nonempty: bool,
    r: Vec<u32>,
    rp: Vec<u32>,
    conditions: Vec<String>,
    triple: BettiTriple,
}

impl BettiCell {
    fn matches(&self, p: &CaseParameters) -> bool {
        self.w_nonempty == p.w_nonempty
            && self.r.contains(&p.r)
            && self.rp.contains(&p.rp)
            && self.conditions.iter().all(|c| condition_holds(c, p))
    }
}

/// A shift formula: integer coefficients on products such as `lambda*m0`.
pub type ShiftFormula = BTreeMap<String, i64>;

#[derive(Clone, Debug, Deserialize)]
pub struct ShiftRecord {
    pub case: String,
    pub w_nonempty: bool,
    pub r: Vec<u32>,
    pub rp: Vec<u32>,
    pub conditions: Vec<String>,
    pub triple: BettiTriple,
    pub s: Vec<ShiftFormula>,
    pub p: Vec<ShiftFormula>,
    pub q: Vec<ShiftFormula>,
}

impl ShiftRecord {
    fn matches(&self, p: &CaseParameters) -> bool {
        self.w_nonempty == p.w_nonempty
            && self.r.contains(&p.r)
            && self.rp.contains(&p.rp)
            && self.conditions.iter().all(|c| condition_holds(c, p))
    }
}

fn parse_jsonl<T: for<'de> Deserialize<'de>>(src: &str) -> Vec<T> {
    src.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad table line {l}: {e}")))
        .collect()
}

fn betti_cells() -> &'static [BettiCell] {
    static CELLS: OnceLock<Vec<BettiCell>> = OnceLock::new();
    CELLS.get_or_init(|| parse_jsonl(include_str!("../data/betti_cells.jsonl")))
}

pub fn shift_records() -> &'static [ShiftRecord] {
    static RECS: OnceLock<Vec<ShiftRecord>> = OnceLock::new();
    RECS.get_or_init(|| parse_jsonl(include_str!("../data/shift_tables.jsonl")))
}

// ---------------------------------------------------------------------------
// Cases

/// One of the nineteen graded-shift cases, numbered `(i)` to `(xix)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseId(u8);

const ROMAN: [&str; 19] = [
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv", "xv",
    "xvi", "xvii", "xviii", "xix",
];

impl CaseId {
    pub fn all() -> impl Iterator<Item = CaseId> {
        (1..=19).map(CaseId)
    }

    /// 1-based case number.
    pub fn number(&self) -> u8 {
        self.0
    }

    pub fn label(&self) -> &'static str {
        ROMAN[self.0 as usize - 1]
    }

    pub fn from_label(s: &str) -> Option<CaseId> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        ROMAN.iter().position(|&r| r == s).map(|k| CaseId(k as u8 + 1))
    }

    pub fn record(&self) -> &'static ShiftRecord {
        &shift_records()[self.0 as usize - 1]
    }

    /// The Betti triple the case's table claims.
    pub fn triple(&self) -> BettiTriple {
        self.record().triple
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for CaseId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for CaseId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CaseId::from_label(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown case {s}")))
    }
}

/// The Betti table cell selected by the parameters. Where two cells
/// overlap (`r = 2`, `r′ = 1`, `μ ≠ 0`, `q = q′ = 0`) the first listed
/// cell wins.
pub fn betti_lookup(params: &CaseParameters) -> BettiTriple {
    betti_cells()
        .iter()
        .find(|c| c.matches(params))
        .map(|c| c.triple)
        .unwrap_or_else(|| panic!("no Betti cell for {params}"))
}

/// Every Betti table cell whose conditions hold.
pub fn betti_cells_matching(params: &CaseParameters) -> Vec<BettiTriple> {
    betti_cells()
        .iter()
        .filter(|c| c.matches(params))
        .map(|c| c.triple)
        .collect()
}

pub fn case_id(params: &CaseParameters) -> Result<CaseId, PatilError> {
    let hits: Vec<CaseId> = CaseId::all().filter(|c| c.record().matches(params)).collect();
    match hits.as_slice() {
        [one] => Ok(*one),
        [] => Err(PatilError::CaseUnmatched(format!("no case for {params}"))),
        many => Err(PatilError::CaseUnmatched(format!(
            "{params} matches cases {}",
            many.iter().map(|c| c.label()).collect::<Vec<_>>().join(", ")
        ))),
    }
}

// ---------------------------------------------------------------------------
// Shifts

/// The twists `s_i`, `p_i`, `q_i` of `F0`, `F1`, `F2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedShifts {
    pub s: Vec<i64>,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

impl GradedShifts {
    pub fn module(&self, i: usize) -> &[i64] {
        match i {
            0 => &self.s,
            1 => &self.p,
            2 => &self.q,
            _ => &[],
        }
    }
}

fn symbol_value(name: &str, params: &CaseParameters, spec: &SequenceSpec) -> Option<i64> {
    match name {
        "m0" => Some(spec.m0 as i64),
        "m1" => Some(spec.m1 as i64),
        "m2" => Some(spec.m2 as i64),
        "n" => Some(spec.n as i64),
        _ => params.value(name),
    }
}

pub fn eval_shift(f: &ShiftFormula, params: &CaseParameters, spec: &SequenceSpec) -> i64 {
    f.iter()
        .map(|(term, c)| {
            c * term
                .split('*')
                .map(|s| symbol_value(s, params, spec).unwrap_or_else(|| panic!("unknown symbol {s}")))
                .product::<i64>()
        })
        .sum()
}

/// The table rows of `case` evaluated at `params` and `spec`, each list
/// sorted ascending.
pub fn graded_shifts(case: CaseId, params: &CaseParameters, spec: &SequenceSpec) -> Result<GradedShifts, PatilError> {
    let rec = case.record();
    if !rec.matches(params) {
        return Err(PatilError::CaseUnmatched(format!("{params} is not case {case}")));
    }
    let eval = |fs: &[ShiftFormula]| {
        let mut v: Vec<i64> = fs.iter().map(|f| eval_shift(f, params, spec)).collect();
        v.sort_unstable();
        v
    };
    Ok(GradedShifts {
        s: eval(&rec.s),
        p: eval(&rec.p),
        q: eval(&rec.q),
    })
}

/// A disagreement between a shift table and the computed twists of `F_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub case: CaseId,
    pub module: usize,
    pub table: Vec<i64>,
    pub computed: Vec<i64>,
    /// Table values with no computed counterpart.
    pub table_only: Vec<i64>,
    /// Computed values with no table counterpart.
    pub computed_only: Vec<i64>,
}

fn multiset_difference(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut left = b.to_vec();
    let mut out = Vec::new();
    for x in a {
        match left.iter().position(|y| y == x) {
            Some(k) => {
                left.swap_remove(k);
            }
            None => out.push(*x),
        }
    }
    out.sort_unstable();
    out
}

/// Compare table shifts against computed twists `[F0, F1, F2]`.
pub fn shift_discrepancies(case: CaseId, table: &GradedShifts, computed: &[Vec<u64>]) -> Vec<Discrepancy> {
    (0..3)
        .filter_map(|i| {
            let t = table.module(i).to_vec();
            let mut c: Vec<i64> = computed.get(i).map_or(Vec::new(), |v| v.iter().map(|&x| x as i64).collect());
            c.sort_unstable();
            (t != c).then(|| Discrepancy {
                case,
                module: i,
                table_only: multiset_difference(&t, &c),
                computed_only: multiset_difference(&c, &t),
                table: t,
                computed: c,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Template expressions

/// Evaluate an integer expression such as `q-qp-1` or `lambda+mu`.
fn eval_int(s: &str, p: &CaseParameters) -> Result<i64, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut total = 0i64;
    let mut sign = 1i64;
    let mut tok = String::new();
    let flush = |tok: &mut String, sign: i64, total: &mut i64| -> Result<(), String> {
        if tok.is_empty() {
            return Err("empty operand".into());
        }
        let v = match tok.parse::<i64>() {
            Ok(v) => v,
            Err(_) => p.value(tok).ok_or_else(|| format!("unknown symbol {tok}"))?,
        };
        *total += sign * v;
        tok.clear();
        Ok(())
    };
    for (k, c) in s.chars().enumerate() {
        match c {
            '+' | '-' if k > 0 => {
                flush(&mut tok, sign, &mut total)?;
                sign = if c == '+' { 1 } else { -1 };
            }
            '-' => sign = -1,
            _ => tok.push(c),
        }
    }
    flush(&mut tok, sign, &mut total)?;
    Ok(total)
}

/// Recursive-descent evaluator for matrix-entry templates. Grammar:
/// sums and products of integers, variables `X0 X1 X2 Y`, the named
/// generators (`xi`, `phi0`, …) and parenthesised groups; exponents are
/// integers or braced parameter expressions, e.g. `X2^{q-qp-1}`.
struct Template<'a> {
    s: &'a [u8],
    pos: usize,
    params: &'a CaseParameters,
    ring: MonomialOrder,
    named: &'a BTreeMap<&'static str, Polynomial>,
}

impl Template<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, String> {
        Err(format!(
            "{msg} at {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn expr(&mut self) -> Result<Polynomial, String> {
        let mut acc = Polynomial::zero(self.ring);
        let mut neg = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                neg = true;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.product()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => neg = false,
                Some(b'-') => neg = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Polynomial, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32, String> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let e = if self.peek() == Some(b'{') {
            let start = self.pos + 1;
            let end = match self.s[start..].iter().position(|&c| c == b'}') {
                Some(k) => start + k,
                None => return self.err("unclosed brace"),
            };
            self.pos = end + 1;
            eval_int(std::str::from_utf8(&self.s[start..end]).unwrap(), self.params)?
        } else {
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| "bad exponent".to_string())?
        };
        u32::try_from(e).map_err(|_| format!("negative exponent {e} in {:?}", String::from_utf8_lossy(self.s)))
    }

    fn factor(&mut self) -> Result<Polynomial, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected )");
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: i128 = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
                Ok(Polynomial::constant(self.ring, Coeff::int(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let base = match Var::ALL.into_iter().find(|v| v.name() == name && *v != Var::T) {
                    Some(v) => Polynomial::var(self.ring, v),
                    None => match self.named.get(name) {
                        Some(p) => p.clone(),
                        None => return self.err(&format!("unknown name {name}")),
                    },
                };
                let e = self.exponent()?;
                Ok(base.pow(e))
            }
            _ => self.err("expected a factor"),
        }
    }
}

fn instantiate(
    src: &str,
    params: &CaseParameters,
    ring: MonomialOrder,
    named: &BTreeMap<&'static str, Polynomial>,
) -> Result<Polynomial, PatilError> {
    let mut t = Template {
        s: src.as_bytes(),
        pos: 0,
        params,
        ring,
        named,
    };
    let p = t.expr().map_err(PatilError::DegreeImbalance)?;
    if t.peek().is_some() {
        return Err(PatilError::DegreeImbalance(format!("trailing input in {src:?}")));
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Generators

/// Exponent vector of `X0^a X_i`.
fn x0_times(a: u32, i: u32) -> Monomial {
    let mut e = [0u32; 4];
    e[0] = a;
    e[i as usize] += 1;
    Monomial::ring(e[0], e[1], e[2], e[3])
}

fn x_times_x2(i: u32, b: u32) -> Monomial {
    let mut e = [0u32; 4];
    e[i as usize] += 1;
    e[2] += b;
    Monomial::ring(e[0], e[1], e[2], e[3])
}

/// Trailing monomial of `θ`: `X0^μ X_{r−r′} X2^{q−q′}` when `r′ < r`,
/// `X0^μ X_{2+r−r′} X2^{q−q′−1}` otherwise. With `r, r′ ∈ {1, 2}` the
/// middle factor is `X1` unless `r = r′`, when it merges into the `X2` power.
fn theta_tail(p: &CaseParameters) -> Option<Monomial> {
    let d = p.q.checked_sub(p.qp)?;
    Some(match p.rp.cmp(&p.r) {
        std::cmp::Ordering::Less => Monomial::ring(p.mu, 1, d, 0),
        std::cmp::Ordering::Equal => Monomial::ring(p.mu, 0, d, 0),
        std::cmp::Ordering::Greater => Monomial::ring(p.mu, 1, d.checked_sub(1)?, 0),
    })
}

/// Generator families named as in the templates.
#[derive(Clone, Debug)]
pub struct PatilGenerators {
    pub xi: Polynomial,
    pub phi: Vec<Polynomial>,
    pub psi: Vec<Polynomial>,
    pub theta: Polynomial,
}

impl PatilGenerators {
    /// `ξ11, φ0, …, ψ0, …, θ` in that order.
    pub fn list(&self) -> Vec<Polynomial> {
        let mut v = vec![self.xi.clone()];
        v.extend(self.phi.iter().cloned());
        v.extend(self.psi.iter().cloned());
        v.push(self.theta.clone());
        v
    }

    fn named(&self) -> BTreeMap<&'static str, Polynomial> {
        let mut m = BTreeMap::new();
        m.insert("xi", self.xi.clone());
        for (name, p) in ["phi0", "phi1"].into_iter().zip(&self.phi) {
            m.insert(name, p.clone());
        }
        for (name, p) in ["psi0", "psi1"].into_iter().zip(&self.psi) {
            m.insert(name, p.clone());
        }
        m.insert("theta", self.theta.clone());
        m
    }
}

/// The binomials `ξ11`, `φ_i` (`i ≤ 2−r`), `ψ_j` (`j ≤ 2−r′`, only when
/// `W ≠ ∅`) and `θ`, each written as first monomial minus second.
pub fn patil_families(params: &CaseParameters, spec: &SequenceSpec) -> Result<PatilGenerators, PatilError> {
    params.check()?;
    let ring = MonomialOrder::grevlex(spec.grading());
    let bin = |a: Monomial, b: Monomial, name: String| -> Result<Polynomial, PatilError> {
        let g = spec.grading();
        if g.degree(&a) != g.degree(&b) {
            return Err(PatilError::DegreeImbalance(format!(
                "{name}: {a} has degree {}, {b} has degree {}",
                g.degree(&a),
                g.degree(&b)
            )));
        }
        Ok(Polynomial::binomial(ring, a, b))
    };
    let y = |e: u32| Monomial::ring(0, 0, 0, e);
    let xi = bin(Monomial::ring(0, 2, 0, 0), Monomial::ring(1, 0, 1, 0), "xi11".into())?;
    let phi = (0..=2 - params.r)
        .map(|i| {
            bin(
                x_times_x2(params.r + i, params.q),
                x0_times(params.lambda - 1, i).mul(&y(params.w)),
                format!("phi{i}"),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let psi = if params.w_nonempty {
        (0..=2 - params.rp)
            .map(|j| {
                bin(
                    x_times_x2(params.rp + j, params.qp).mul(&y(params.v - params.w)),
                    x0_times(params.nu - 1, j),
                    format!("psi{j}"),
                )
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let tail = theta_tail(params).ok_or_else(|| PatilError::DegreeImbalance(format!("theta exponent negative for {params}")))?;
    let theta = bin(y(params.v), tail, "theta".into())?;
    Ok(PatilGenerators { xi, phi, psi, theta })
}

pub fn patil_generators(params: &CaseParameters, spec: &SequenceSpec) -> Result<Vec<Polynomial>, PatilError> {
    Ok(patil_families(params, spec)?.list())
}

// ---------------------------------------------------------------------------
// Parameter extraction

/// The reduced Gröbner basis of the toric ideal under the grevlex order
/// ranking `Y > X2 > X1 > X0`, in which the template generators form a
/// Gröbner basis.
pub fn y_first_basis(ideal: &ToricIdeal) -> GroebnerBasis {
    let order = MonomialOrder::grevlex_y_first(ideal.spec.grading());
    let gens: Vec<Polynomial> = ideal.generators.iter().map(|g| g.with_order(order)).collect();
    reduce_basis(&buchberger(&gens))
}

/// True when `gens` generate the toric ideal.
///
/// Membership is tested first. Equality is then certified through leading
/// monomials in the `Y`-first order and, when that fails, by comparing
/// against a Gröbner basis of `gens` itself.
fn generates(gens: &[Polynomial], ideal: &ToricIdeal, y_first: &GroebnerBasis) -> bool {
    if !gens.iter().all(|g| ideal_member(g, &ideal.reduced_gb)) {
        return false;
    }
    let order = y_first.ring();
    let leads: Vec<Monomial> = gens.iter().filter_map(|g| g.with_order(order).lead_mono()).collect();
    let certified = y_first
        .polynomials()
        .iter()
        .all(|g| leads.iter().any(|l| l.divides(&g.lead_mono().unwrap())));
    if certified {
        return true;
    }
    let own = buchberger(gens);
    ideal.generators.iter().all(|g| ideal_member(g, &own))
}

/// Every parameter assignment with `q ≤ qmax` satisfying the degree
/// equations of the templates for the given `v`. Assignments without `ψ`
/// generators (`W = ∅`) come first.
pub fn degree_candidates(spec: &SequenceSpec, v: u64, qmax: u64) -> Vec<CaseParameters> {
    let m = [spec.m0 as i64, spec.m1 as i64, spec.m2 as i64];
    let n = spec.n as i64;
    let v = v as i64;
    let mut out = Vec::new();
    for w_nonempty in [false, true] {
        for r in 1..=2i64 {
            for rp in 1..=2i64 {
                for w in 1..v {
                    for q in 0..=qmax as i64 {
                        let lam = m[r as usize] + q * m[2] - w * n;
                        if lam <= 0 || lam % m[0] != 0 {
                            continue;
                        }
                        let lambda = lam / m[0];
                        for qp in 0..=q {
                            let rest = match rp.cmp(&r) {
                                std::cmp::Ordering::Less => m[(r - rp) as usize] + (q - qp) * m[2],
                                std::cmp::Ordering::Equal => (q - qp) * m[2],
                                std::cmp::Ordering::Greater => {
                                    if q == qp {
                                        continue;
                                    }
                                    m[(2 + r - rp) as usize] + (q - qp - 1) * m[2]
                                }
                            };
                            let mu = v * n - rest;
                            if mu < 0 || mu % m[0] != 0 {
                                continue;
                            }
                            let mu = mu / m[0];
                            let nu = lambda + mu + i64::from(r > rp);
                            if w_nonempty && m[rp as usize] + qp * m[2] + (v - w) * n != nu * m[0] {
                                continue;
                            }
                            out.push(CaseParameters {
                                r: r as u32,
                                rp: rp as u32,
                                lambda: lambda as u32,
                                mu: mu as u32,
                                nu: nu as u32,
                                q: q as u32,
                                qp: qp as u32,
                                v: v as u32,
                                w: w as u32,
                                w_nonempty,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every parameter assignment consistent with the degree equations of the
/// templates whose generator set generates the toric ideal.
/// Assignments without `ψ` generators (`W = ∅`) come first.
pub fn parameter_candidates(ideal: &ToricIdeal) -> Vec<CaseParameters> {
    let spec = ideal.spec;
    let v = min_multiple_in(spec.n, &spec.gamma1());
    let top = ideal
        .reduced_gb
        .polynomials()
        .iter()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    let qmax = (top + v * spec.n) / spec.m2 + 1;
    let y_first = y_first_basis(ideal);
    degree_candidates(&spec, v, qmax)
        .into_iter()
        .filter(|p| patil_generators(p, &spec).is_ok_and(|g| generates(&g, ideal, &y_first)))
        .collect()
}

/// Read the case parameters off the toric ideal. The first generating
/// candidate of [`parameter_candidates`] is returned.
pub fn extract_parameters(ideal: &ToricIdeal) -> Result<CaseParameters, PatilError> {
    let v = min_multiple_in(ideal.spec.n, &ideal.spec.gamma1());
    let found = parameter_candidates(ideal).into_iter().next().ok_or_else(|| {
        PatilError::TemplateMismatch(format!("no template assignment generates the ideal of {}", ideal.spec))
    })?;
    if found.v as u64 != v {
        return Err(PatilError::TemplateMismatch(format!(
            "template v = {} but the least multiple is {v}",
            found.v
        )));
    }
    Ok(found)
}

// ---------------------------------------------------------------------------
// Closed-form complexes

/// The shape of the explicit complex used for a parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// `W ≠ ∅`, `r = 1`, `r′ = 2`.
    R1Rp2,
    /// `W ≠ ∅`, `r = r′ = 1`.
    R1Rp1,
    /// `W ≠ ∅`, `r = 2`, `r′ = 1`.
    R2Rp1,
    /// `W ≠ ∅`, `r = r′ = 2`.
    R2Rp2,
    /// `W = ∅`, `r = 1`, `r′ = 2`.
    EmptyR1Rp2,
    /// `W = ∅`, `r = r′ = 1`.
    EmptyR1Rp1,
    /// `W = ∅`, `r = 2`: the Koszul complex on `ξ11, φ0, θ`.
    EmptyR2,
}

impl Shape {
    pub fn of(p: &CaseParameters) -> Shape {
        match (p.w_nonempty, p.r, p.rp) {
            (true, 1, 2) => Shape::R1Rp2,
            (true, 1, 1) => Shape::R1Rp1,
            (true, 2, 1) => Shape::R2Rp1,
            (true, 2, 2) => Shape::R2Rp2,
            (false, 1, 2) => Shape::EmptyR1Rp2,
            (false, 1, 1) => Shape::EmptyR1Rp1,
            (false, 2, _) => Shape::EmptyR2,
            _ => unreachable!("r, r' checked to lie in {{1, 2}}"),
        }
    }
}

struct Complex {
    b: &'static [&'static [&'static str]],
    c: &'static [&'static [&'static str]],
}

const R1RP2: Complex = Complex {
    b: &[
        &["-X2^{q}", "-psi0", "-theta", "Y^{w}*X0^{lambda-1}", "0", "-X0^{lambda+mu-1}*X2^{q-qp-1}", "0"],
        &["X1", "0", "0", "-X2", "-Y^{v-w}", "0", "X0^{mu}"],
        &["-X0", "0", "0", "X1", "0", "-Y^{v-w}", "0"],
        &["0", "xi", "0", "0", "X1*X2^{q-qp-1}", "X2^{q-qp}", "-Y^{w}"],
        &["0", "0", "xi", "0", "-X0^{lambda}", "-X0^{lambda-1}*X1", "X2^{qp+1}"],
    ],
    c: &[
        &["0", "Y^{v-w}", "X1*X0^{mu}"],
        &["0", "-X2^{q-qp-1}", "-Y^{w}"],
        &["X0^{lambda-1}", "0", "X2^{qp+1}"],
        &["Y^{v-w}", "0", "X0^{mu+1}"],
        &["-X2", "X1", "0"],
        &["X1", "-X0", "0"],
        &["0", "0", "-xi"],
    ],
};

const R1RP1: Complex = Complex {
    b: &[
        &["-X2^{q}", "-X2^{qp}*Y^{v-w}", "-theta", "Y^{w}*X0^{lambda-1}", "0", "0", "X0^{lambda+mu-1}", "0", "0"],
        &["X1", "0", "0", "-X2", "-Y^{v-w}", "0", "0", "X0^{mu}", "0"],
        &["-X0", "0", "0", "X1", "0", "-Y^{v-w}", "0", "0", "X0^{mu}"],
        &["0", "X1", "0", "0", "X2^{q-qp}", "0", "-X2", "-Y^{w}", "0"],
        &["0", "-X0", "0", "0", "0", "X2^{q-qp}", "X1", "0", "-Y^{w}"],
        &["0", "0", "xi", "0", "-X0^{lambda}", "-X1*X0^{lambda-1}", "0", "X1*X2^{qp}", "X2^{qp+1}"],
    ],
    c: &[
        &["0", "0", "Y^{v-w}", "X0^{mu}"],
        &["0", "0", "-X2^{q-qp}", "-Y^{w}"],
        &["X0^{lambda-1}", "0", "0", "X2^{qp}"],
        &["Y^{v-w}", "X0^{mu}", "0", "0"],
        &["-X2", "0", "X1", "0"],
        &["X1", "0", "-X0", "0"],
        &["-X2^{q-qp}", "-Y^{w}", "0", "0"],
        &["0", "X2", "0", "-X1"],
        &["0", "-X1", "0", "X0"],
    ],
};

const R2RP1: Complex = Complex {
    b: &[
        &["-phi0", "-X2^{qp}*Y^{v-w}", "-theta", "0", "X0^{lambda+mu}", "X0^{mu}*X2^{q}", "0"],
        &["xi", "0", "0", "-Y^{v-w}", "0", "X0^{mu+1}", "X0^{mu}*X1"],
        &["0", "X1", "0", "0", "-X2", "-Y^{w}", "0"],
        &["0", "-X0", "0", "X2^{q-qp}", "X1", "0", "-Y^{w}"],
        &["0", "0", "xi", "-X0^{lambda}", "0", "X1*X2^{qp}", "X2^{qp+1}"],
    ],
    c: &[
        &["0", "X0^{mu}", "Y^{v-w}"],
        &["Y^{w}", "0", "-X2^{q-qp+1}"],
        &["-X2^{qp}", "0", "X0^{lambda}"],
        &["0", "0", "xi"],
        &["0", "-Y^{w}", "-X1*X2^{q-qp}"],
        &["X1", "X2", "0"],
        &["-X0", "-X1", "0"],
    ],
};

const R2RP2: Complex = Complex {
    b: &[
        &["-phi0", "-psi0", "-theta", "0", "0"],
        &["xi", "0", "0", "-Y^{v-w}", "X0^{mu}"],
        &["0", "xi", "0", "X2^{q-qp}", "-Y^{w}"],
        &["0", "0", "xi", "-X0^{lambda}", "X2^{qp+1}"],
    ],
    c: &[
        &["Y^{v-w}", "X0^{mu}"],
        &["-X2^{q-qp}", "-Y^{w}"],
        &["X0^{lambda}", "X2^{qp+1}"],
        &["xi", "0"],
        &["0", "-xi"],
    ],
};

const EMPTY_R1RP2: Complex = Complex {
    b: &[
        &["-X2^{q}", "-theta", "X0^{lambda-1}*Y^{w}", "0", "0"],
        &["X1", "0", "-X2", "-theta", "0"],
        &["-X0", "0", "X1", "0", "-theta"],
        &["0", "xi", "0", "phi0", "phi1"],
    ],
    c: &[
        &["theta", "0"],
        &["-X2^{q}", "-X0^{lambda-1}*Y^{w}"],
        &["0", "-theta"],
        &["X1", "X2"],
        &["-X0", "-X1"],
    ],
};

const EMPTY_R1RP1: Complex = Complex {
    b: &[
        &["-X2^{q}", "X0^{lambda-1}*Y^{w}", "-theta", "0", "0"],
        &["X1", "-X2", "0", "-theta", "0"],
        &["-X0", "X1", "0", "0", "-theta"],
        &["0", "0", "xi", "phi0", "phi1"],
    ],
    c: &[
        &["theta", "0"],
        &["0", "-theta"],
        &["-X2^{q}", "-X0^{lambda-1}*Y^{w}"],
        &["X1", "X2"],
        &["-X0", "-X1"],
    ],
};

const KOSZUL: Complex = Complex {
    b: &[
        &["-phi0", "-theta", "0"],
        &["xi", "0", "-theta"],
        &["0", "xi", "phi0"],
    ],
    c: &[&["theta"], &["-phi0"], &["xi"]],
};

fn complex_for(shape: Shape) -> &'static Complex {
    match shape {
        Shape::R1Rp2 => &R1RP2,
        Shape::R1Rp1 => &R1RP1,
        Shape::R2Rp1 => &R2RP1,
        Shape::R2Rp2 => &R2RP2,
        Shape::EmptyR1Rp2 => &EMPTY_R1RP2,
        Shape::EmptyR1Rp1 => &EMPTY_R1RP1,
        Shape::EmptyR2 => &KOSZUL,
    }
}

fn column_twists(
    entries: &[Vec<Polynomial>],
    target: &GradedFreeModule,
    ring: &MonomialOrder,
) -> Result<Vec<u64>, PatilError> {
    let cols = entries.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            entries
                .iter()
                .enumerate()
                .find(|(_, row)| !row[j].is_zero())
                .and_then(|(i, row)| {
                    row[j]
                        .is_homogeneous(&ring.grading)
                        .map(|d| d + target.twists[i])
                })
                .ok_or_else(|| PatilError::ClosedFormInvalid(format!("column {j} is zero or inhomogeneous")))
        })
        .collect()
}

fn graded(
    ring: MonomialOrder,
    target: GradedFreeModule,
    entries: Vec<Vec<Polynomial>>,
) -> Result<GradedMap, PatilError> {
    let source = GradedFreeModule::new(column_twists(&entries, &target, &ring)?);
    Ok(GradedMap::try_new(ring, source, target, entries)?)
}

/// The explicit, generally non-minimal, complex `R ← F0 ← F1 ← F2` of the
/// parameters' shape with `A` the generator row.
pub fn base_complex(params: &CaseParameters, spec: &SequenceSpec) -> Result<FreeResolution, PatilError> {
    let fam = patil_families(params, spec)?;
    let named = fam.named();
    let ring = MonomialOrder::grevlex(spec.grading());
    let shape = Shape::of(params);
    let a_row: Vec<Polynomial> = match shape {
        Shape::EmptyR2 => vec![fam.xi.clone(), fam.phi[0].clone(), fam.theta.clone()],
        _ => fam.list(),
    };
    let cx = complex_for(shape);
    let mat = |rows: &[&[&str]]| -> Result<Vec<Vec<Polynomial>>, PatilError> {
        rows.iter()
            .map(|r| r.iter().map(|s| instantiate(s, params, ring, &named)).collect())
            .collect()
    };
    let a_twists: Vec<u64> = a_row.iter().map(|p| p.degree().unwrap()).collect();
    let a = GradedMap::try_new(
        ring,
        GradedFreeModule::new(a_twists.clone()),
        GradedFreeModule::new(vec![0]),
        vec![a_row],
    )?;
    let b = graded(ring, GradedFreeModule::new(a_twists), mat(cx.b)?)?;
    let c = graded(ring, b.source().clone(), mat(cx.c)?)?;
    for (x, y, what) in [(&a, &b, "A·B"), (&b, &c, "B·C")] {
        if !compose_zero(x, y)? {
            return Err(PatilError::ClosedFormInvalid(format!("{what} ≠ 0 for {params}")));
        }
    }
    Ok(FreeResolution::new(ring, vec![a, b, c])?)
}

/// The closed-form minimal resolution: the explicit complex of the case,
/// with its unit entries removed.
pub fn closed_form_resolution(params: &CaseParameters, spec: &SequenceSpec) -> Result<FreeResolution, PatilError> {
    let min = minimalize(&base_complex(params, spec)?);
    if !min.compositions_vanish() {
        return Err(PatilError::ClosedFormInvalid("minimalized complex has nonzero composition".into()));
    }
    if !min.is_minimal() {
        return Err(PatilError::ClosedFormInvalid("entries outside the maximal ideal".into()));
    }
    Ok(min)
}

/// Listed first syzygies, one inner list per syzygy (a column of length
/// `|𝒢|`), before any redundant ones are removed.
const SYZ_R1RP2: &[&[&str]] = &[
    &["-X2^{q}", "X1", "-X0", "0", "0"],
    &["-phi1", "0", "xi", "0", "0"],
    &["-psi0", "0", "0", "xi", "0"],
    &["-theta", "0", "0", "0", "xi"],
    &["Y^{w}*X0^{lambda-1}", "-X2", "X1", "0", "0"],
    &["0", "-Y^{v-w}", "0", "X1*X2^{q-qp-1}", "-X0^{lambda}"],
    &["0", "-theta", "0", "0", "phi0"],
    &["-X0^{mu+lambda-1}*X2^{q-qp-1}", "0", "-Y^{v-w}", "X2^{q-qp}", "-X0^{lambda-1}*X1"],
    &["0", "0", "-theta", "0", "phi1"],
    &["0", "X0^{mu}", "0", "-Y^{w}", "X2^{qp+1}"],
];

const SYZ_R1RP1: &[&[&str]] = &[
    &["-X2^{q}", "X1", "-X0", "0", "0", "0"],
    &["-phi1", "0", "xi", "0", "0", "0"],
    &["-X2^{qp}*Y^{v-w}", "0", "0", "X1", "-X0", "0"],
    &["-psi1", "0", "0", "0", "xi", "0"],
    &["-theta", "0", "0", "0", "0", "xi"],
    &["X0^{lambda-1}*Y^{w}", "-X2", "X1", "0", "0", "0"],
    &["0", "-Y^{v-w}", "0", "X2^{q-qp}", "0", "-X0^{lambda}"],
    &["X0^{lambda+mu-1}*X2^{q-qp-1}", "-Y^{v-w}", "0", "0", "X1*X2^{q-qp-1}", "-X0^{lambda}"],
    &["0", "-theta", "0", "0", "0", "phi0"],
    &["-X0^{lambda+mu-1}*X2^{q-qp}", "0", "-X1*Y^{v-w}", "X2^{q-qp+1}", "0", "-X0^{lambda-1}*X1^2"],
    &["0", "0", "-Y^{v-w}", "0", "X2^{q-qp}", "-X0^{lambda-1}*X1"],
    &["0", "0", "-theta", "0", "0", "phi1"],
    &["X0^{lambda+mu-1}", "0", "0", "-X2", "X1", "0"],
    &["0", "X0^{mu}", "0", "-Y^{w}", "0", "X1*X2^{qp}"],
    &["0", "0", "X0^{mu}", "0", "-Y^{w}", "X2^{qp+1}"],
];

const SYZ_R2RP1: &[&[&str]] = &[
    &["-phi0", "xi", "0", "0", "0"],
    &["-X2^{qp}*Y^{v-w}", "0", "X1", "-X0", "0"],
    &["-psi1", "0", "0", "xi", "0"],
    &["-theta", "0", "0", "0", "xi"],
    &["-X0^{lambda+mu}*X2^{q-qp}", "-X1*Y^{v-w}", "X2^{q-qp+1}", "0", "-X0^{lambda}*X1"],
    &["0", "-Y^{v-w}", "0", "X2^{q-qp}", "-X0^{lambda}"],
    &["0", "-theta", "0", "0", "phi0"],
    &["X0^{lambda+mu}", "0", "-X2", "X1", "0"],
    &["X0^{mu}*X2^{q}", "X0^{mu+1}", "-Y^{w}", "0", "X1*X2^{qp}"],
    &["0", "X0^{mu}*X1", "0", "-Y^{w}", "X2^{qp+1}"],
];

const SYZ_R2RP2: &[&[&str]] = &[
    &["-phi0", "xi", "0", "0"],
    &["-psi0", "0", "xi", "0"],
    &["-theta", "0", "0", "xi"],
    &["0", "-Y^{v-w}", "X2^{q-qp}", "-X0^{lambda}"],
    &["0", "-theta", "0", "phi0"],
    &["0", "X0^{mu}", "-Y^{w}", "X2^{qp+1}"],
];

const SYZ_EMPTY_R1RP2: &[&[&str]] = &[
    &["-X2^{q}", "X1", "-X0", "0"],
    &["-phi1", "0", "xi", "0"],
    &["-theta", "0", "0", "xi"],
    &["X0^{lambda-1}*Y^{w}", "-X2", "X1", "0"],
    &["0", "-theta", "0", "phi0"],
    &["0", "0", "-theta", "phi1"],
];

const SYZ_KOSZUL: &[&[&str]] = &[&["-phi0", "xi", "0"], &["-theta", "0", "xi"], &["0", "-theta", "phi0"]];

/// The listed first syzygies of the shape, instantiated in `ring`, or
/// `None` for the one shape without a list (`W = ∅`, `r = r′ = 1`).
pub fn listed_first_syzygies(
    params: &CaseParameters,
    spec: &SequenceSpec,
    ring: MonomialOrder,
) -> Result<Option<Vec<Vec<Polynomial>>>, PatilError> {
    let table = match Shape::of(params) {
        Shape::R1Rp2 => SYZ_R1RP2,
        Shape::R1Rp1 => SYZ_R1RP1,
        Shape::R2Rp1 => SYZ_R2RP1,
        Shape::R2Rp2 => SYZ_R2RP2,
        Shape::EmptyR1Rp2 => SYZ_EMPTY_R1RP2,
        Shape::EmptyR1Rp1 => return Ok(None),
        Shape::EmptyR2 => SYZ_KOSZUL,
    };
    let named: BTreeMap<&'static str, Polynomial> = patil_families(params, spec)?
        .named()
        .into_iter()
        .map(|(k, p)| (k, p.with_order(ring)))
        .collect();
    table
        .iter()
        .map(|col| col.iter().map(|s| instantiate(s, params, ring, &named)).collect())
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

/// Listed against computed first syzygies, each normalised to a positive
/// first nonzero leading coefficient and rendered as text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyComparison {
    pub listed: usize,
    pub computed: usize,
    pub listed_only: Vec<Vec<String>>,
    pub computed_only: Vec<Vec<String>>,
}

impl SyzygyComparison {
    pub fn matches(&self) -> bool {
        self.listed == self.computed && self.listed_only.is_empty() && self.computed_only.is_empty()
    }
}

fn normalise(col: &[Polynomial]) -> Vec<String> {
    let flip = col
        .iter()
        .find(|p| !p.is_zero())
        .is_some_and(|p| p.lead_coeff().unwrap().is_negative());
    col.iter()
        .map(|p| if flip { (-p).to_string() } else { p.to_string() })
        .collect()
}

/// Schreyer syzygies of the generator row, one per S-pair, in the grevlex
/// order ranking `Y > X2 > X1 > X0`, compared with the listed ones up to
/// sign and order. Coprime pairs give Koszul relations; otherwise the last
/// divisor whose leading term divides is used at each division step.
pub fn compare_first_syzygies(params: &CaseParameters, spec: &SequenceSpec) -> Result<Option<SyzygyComparison>, PatilError> {
    let ring = MonomialOrder::grevlex_y_first(spec.grading());
    let Some(listed) = listed_first_syzygies(params, spec, ring)? else {
        return Ok(None);
    };
    let row: Vec<Polynomial> = generator_row(params, spec)?.iter().map(|g| g.with_order(ring)).collect();
    let opts = BuchbergerOptions {
        divisor_choice: DivisorChoice::Last,
        ..Default::default()
    };
    let gb = buchberger_with(&row, opts);
    if gb.len() != row.len() {
        return Err(PatilError::TemplateMismatch(format!("generators of {params} are not a Gröbner basis")));
    }
    let m = schreyer_syzygies(&gb)?;
    let computed: Vec<Vec<String>> = (0..m.cols()).map(|j| normalise(&m.column(j))).collect();
    let listed: Vec<Vec<String>> = listed.iter().map(|c| normalise(c)).collect();
    let only = |a: &[Vec<String>], b: &[Vec<String>]| a.iter().filter(|x| !b.contains(x)).cloned().collect::<Vec<_>>();
    Ok(Some(SyzygyComparison {
        listed: listed.len(),
        computed: computed.len(),
        listed_only: only(&listed, &computed),
        computed_only: only(&computed, &listed),
    }))
}

/// The generator row `A` of the shape: `𝒢` in listed order, or
/// `[ξ, φ0, θ]` when `W = ∅` and `r = 2`.
pub fn generator_row(params: &CaseParameters, spec: &SequenceSpec) -> Result<Vec<Polynomial>, PatilError> {
    let fam = patil_families(params, spec)?;
    Ok(match Shape::of(params) {
        Shape::EmptyR2 => vec![fam.xi, fam.phi[0].clone(), fam.theta],
        _ => fam.list(),
    })
}

/// Explicit changes of basis that remove the unit entries of the base
/// complex in the two cases where they are written out:
/// `r = 1, r′ = 2, μ = 0` and `r = r′ = 2, μ = 0`. Each item is a module
/// index and the elementary factors `E_1 ⋯ E_k` of `P` (1-based indices
/// converted to 0-based), to be passed to [`transform_complex`].
pub fn displayed_transforms(params: &CaseParameters, spec: &SequenceSpec) -> Result<Option<Vec<(usize, Vec<Elementary>)>>, PatilError> {
    let fam = patil_families(params, spec)?;
    let named = fam.named();
    let ring = MonomialOrder::grevlex(spec.grading());
    let p = |s: &str| instantiate(s, params, ring, &named);
    let add = |i: usize, j: usize, s: &str| -> Result<Elementary, PatilError> { Ok(Elementary::add(i - 1, j - 1, p(s)?)) };
    Ok(match (Shape::of(params), params.mu) {
        (Shape::R1Rp2, 0) => {
            let p3 = vec![add(4, 2, "Y^{w}")?, add(5, 2, "-X2^{qp+1}")?];
            let p2 = vec![add(7, 1, "-X1")?, add(7, 4, "X2")?, add(7, 5, "Y^{v-w}")?];
            Some(vec![(0, p3), (1, inverse_product(&p2))])
        }
        (Shape::R2Rp2, 0) => {
            let p2 = vec![add(5, 1, "-xi")?, add(5, 4, "Y^{v-w}")?];
            let p3 = vec![add(4, 2, "-X2^{qp+1}")?];
            Some(vec![(1, inverse_product(&p2)), (0, p3)])
        }
        _ => None,
    })
}

/// Apply [`displayed_transforms`] to the base complex and return the
/// result before any pruning.
pub fn apply_displayed_transforms(params: &CaseParameters, spec: &SequenceSpec) -> Result<Option<FreeResolution>, PatilError> {
    let Some(steps) = displayed_transforms(params, spec)? else {
        return Ok(None);
    };
    let mut res = base_complex(params, spec)?;
    for (pos, p) in steps {
        res = transform_complex(&res, pos, &p)?;
    }
    Ok(Some(res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{is_groebner, toric_kernel};
    use crate::resolution::{betti_table, build_resolution, hilbert_numerator};
    use crate::semigroup::validate_sequence;

    fn spec(a: [u64; 4]) -> SequenceSpec {
        validate_sequence(a[0], a[1], a[2], a[3]).unwrap()
    }

    #[test]
    fn tables_load_with_consistent_lengths() {
        assert_eq!(betti_cells().len(), 19);
        assert_eq!(shift_records().len(), 19);
        for (k, rec) in shift_records().iter().enumerate() {
            assert_eq!(rec.case, ROMAN[k]);
            assert!(rec.triple.euler_ok(), "{}", rec.case);
            assert_eq!(rec.s.len(), rec.triple.0[0], "case {}", rec.case);
        }
        for c in betti_cells() {
            assert!(BETTI_TRIPLES.contains(&c.triple));
            assert!(c.triple.euler_ok());
        }
    }

    #[test]
    fn roman_labels_round_trip() {
        for c in CaseId::all() {
            assert_eq!(CaseId::from_label(c.label()), Some(c));
        }
        assert_eq!(CaseId::from_label("(xiii)").unwrap().number(), 13);
        assert_eq!(CaseId::from_label("xx"), None);
    }

    #[test]
    fn integer_expressions() {
        let p = CaseParameters { r: 1, rp: 2, lambda: 4, mu: 3, nu: 7, q: 5, qp: 2, v: 3, w: 1, w_nonempty: true };
        assert_eq!(eval_int("q-qp-1", &p), Ok(2));
        assert_eq!(eval_int("lambda+mu", &p), Ok(7));
        assert_eq!(eval_int("-w+2", &p), Ok(1));
        assert!(eval_int("z", &p).is_err());
        assert!(condition_holds("q-qp!=1", &p));
        assert!(condition_holds("mu!=0", &p));
        assert!(!condition_holds("lambda=1", &p));
    }

    #[test]
    fn lookup_cells() {
        let base = CaseParameters { r: 2, rp: 2, lambda: 1, mu: 0, nu: 1, q: 1, qp: 0, v: 2, w: 1, w_nonempty: true };
        assert_eq!(betti_lookup(&base), BettiTriple([3, 3, 1]));
        let p = CaseParameters { r: 1, rp: 2, lambda: 1, mu: 3, nu: 4, q: 1, qp: 0, ..base };
        assert_eq!(betti_lookup(&p), BettiTriple([5, 5, 1]));
        assert_eq!(case_id(&p).unwrap().label(), "iv");
        let p = CaseParameters { w_nonempty: false, r: 2, ..base };
        assert_eq!(betti_lookup(&p), BettiTriple([3, 3, 1]));
        assert_eq!(case_id(&p).unwrap().label(), "xix");
        let p = CaseParameters { r: 2, rp: 1, mu: 3, q: 3, qp: 3, ..base };
        assert_eq!(betti_lookup(&p), BettiTriple([4, 6, 3]));
        assert_eq!(case_id(&p).unwrap().label(), "xiii");
    }

    #[test]
    fn generators_for_the_running_example() {
        let s = spec([5, 7, 9, 11]);
        let p = CaseParameters { r: 1, rp: 2, lambda: 1, mu: 3, nu: 4, q: 1, qp: 0, v: 2, w: 1, w_nonempty: true };
        let g = patil_generators(&p, &s).unwrap();
        let text: Vec<String> = g.iter().map(|p| p.to_string()).collect();
        assert_eq!(text, ["X1^2 - X0*X2", "X1*X2 - X0*Y", "X2^2 - X1*Y", "-X0^4 + X2*Y", "-X0^3*X1 + Y^2"]);
        assert!(is_groebner(&g));
        let bad = CaseParameters { lambda: 2, nu: 5, ..p };
        assert!(matches!(patil_generators(&bad, &s), Err(PatilError::DegreeImbalance(_))));
    }

    #[test]
    fn extraction_for_the_running_example() {
        let s = spec([5, 7, 9, 11]);
        let p = extract_parameters(&toric_kernel(&s)).unwrap();
        assert_eq!(p, CaseParameters { r: 1, rp: 2, lambda: 1, mu: 3, nu: 4, q: 1, qp: 0, v: 2, w: 1, w_nonempty: true });
        let res = minimalize(&build_resolution(&toric_kernel(&s).generators));
        assert_eq!(betti_table(&res).unwrap().totals, vec![5, 5, 1]);
        let cf = closed_form_resolution(&p, &s).unwrap();
        assert_eq!(cf.ranks(), vec![5, 5, 1]);
        assert_eq!(hilbert_numerator(&cf), hilbert_numerator(&res));
    }

    #[test]
    fn shifts_at_the_running_example() {
        let s = spec([5, 7, 9, 11]);
        let p = extract_parameters(&toric_kernel(&s)).unwrap();
        let sh = graded_shifts(case_id(&p).unwrap(), &p, &s).unwrap();
        assert_eq!(sh.s, vec![14, 16, 18, 20, 22]);
        assert!(graded_shifts(CaseId::from_label("i").unwrap(), &p, &s).is_err());
    }

    #[test]
    fn koszul_template() {
        let s = spec([52, 55, 58, 16]);
        let p = extract_parameters(&toric_kernel(&s)).unwrap();
        assert!(!p.w_nonempty);
        assert_eq!(p.r, 2);
        assert_eq!(Shape::of(&p), Shape::EmptyR2);
        let cf = closed_form_resolution(&p, &s).unwrap();
        assert!(cf.compositions_vanish());
        assert_eq!(cf.ranks(), vec![3, 3, 1]);
    }

    #[test]
    fn multiset_difference_counts() {
        assert_eq!(multiset_difference(&[1, 2, 2, 3], &[2, 3, 4]), vec![1, 2]);
        assert!(multiset_difference(&[], &[1]).is_empty());
    }
}
