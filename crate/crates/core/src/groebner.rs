//! Buchberger's algorithm with reduction transcripts, reduced bases,
//! membership tests and the toric ideal of a monomial curve.

use std::collections::BTreeSet;

use crate::poly::{
    divide, divide_module, divide_module_with, s_vector, DivisorChoice, Coeff, ModuleElement, ModuleOrder, Monomial,
    MonomialOrder, Polynomial, Term, Var, WeightedGrading,
};
use crate::semigroup::SequenceSpec;

/// How one S-pair was accounted for.
///
/// Replaying the record gives `cf_i·g_i − cf_j·g_j = Σ_k quotients[k]·g_k`.
#[derive(Clone, Debug)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    pub cf_i: Term,
    pub cf_j: Term,
    pub quotients: Vec<Polynomial>,
    /// Discarded by the coprime-leading-terms criterion; the quotients
    /// then come from the Koszul relation instead of a division.
    pub koszul: bool,
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub elements: Vec<ModuleElement>,
    pub order: ModuleOrder,
    pub rank: usize,
    pub transcript: Option<Vec<PairRecord>>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> MonomialOrder {
        *self.order.ring()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn is_ideal(&self) -> bool {
        self.rank == 1 && matches!(self.order, ModuleOrder::PositionOverTerm(_))
    }

    /// The elements as polynomials; only meaningful for ideals.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        assert!(self.rank == 1, "not an ideal basis");
        self.elements
            .iter()
            .map(|e| e.to_polynomial(self.ring()))
            .collect()
    }

    /// Check every transcript record by expanding both sides.
    pub fn replay_transcript(&self) -> bool {
        let Some(tr) = &self.transcript else {
            return false;
        };
        let ord = &self.order;
        tr.iter().all(|rec| {
            let lhs = self.elements[rec.i]
                .mul_term(&rec.cf_i)
                .add_scaled(ord, -rec.cf_j.coeff, &rec.cf_j.mono, &self.elements[rec.j]);
            let rhs = combine(ord, &rec.quotients, &self.elements);
            lhs == rhs
        })
    }
}

/// `Σ coeffs[k]·elems[k]`.
pub fn combine(order: &ModuleOrder, coeffs: &[Polynomial], elems: &[ModuleElement]) -> ModuleElement {
    let mut acc = ModuleElement::zero();
    for (c, e) in coeffs.iter().zip(elems) {
        for t in c.terms() {
            acc = acc.add_scaled(order, t.coeff, &t.mono, e);
        }
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerOptions {
    pub transcript: bool,
    /// Select pairs by smallest lcm degree (normal strategy) when true,
    /// else first-in first-out.
    pub normal_strategy: bool,
    /// Skip pairs with coprime leading terms and record the Koszul relation
    /// instead of dividing.
    pub coprime_criterion: bool,
    pub divisor_choice: DivisorChoice,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions {
            transcript: true,
            normal_strategy: true,
            coprime_criterion: true,
            divisor_choice: DivisorChoice::First,
        }
    }
}

pub fn buchberger(gens: &[Polynomial]) -> GroebnerBasis {
    buchberger_with(gens, BuchbergerOptions::default())
}

pub fn buchberger_with(gens: &[Polynomial], opts: BuchbergerOptions) -> GroebnerBasis {
    let ring = *gens.first().expect("empty generator list").order();
    let elems: Vec<ModuleElement> = gens.iter().map(ModuleElement::from_polynomial).collect();
    buchberger_module(&elems, &ModuleOrder::PositionOverTerm(ring), 1, opts)
}

fn lcm_degree(order: &ModuleOrder, a: &ModuleElement, b: &ModuleElement) -> u64 {
    let la = a.lead().unwrap();
    let lb = b.lead().unwrap();
    let l = la.mono.lcm(&lb.mono);
    let base = match order {
        ModuleOrder::PositionOverTerm(_) => Monomial::ONE,
        ModuleOrder::Schreyer(f) => f.total(la.pos),
    };
    order.ring().degree(&l.mul(&base))
}

fn tail(e: &ModuleElement) -> ModuleElement {
    let mut terms = e.terms().to_vec();
    terms.remove(0);
    ModuleElement::from_raw(terms)
}

/// Buchberger completion in a free module of the given rank. The output
/// starts with `gens` unchanged; reduced S-vectors are appended.
pub fn buchberger_module(
    gens: &[ModuleElement],
    order: &ModuleOrder,
    rank: usize,
    opts: BuchbergerOptions,
) -> GroebnerBasis {
    assert!(gens.iter().all(|g| !g.is_zero()), "zero generator");
    let ring = *order.ring();
    let ideal = rank == 1 && matches!(order, ModuleOrder::PositionOverTerm(_));
    let mut basis: Vec<ModuleElement> = gens.to_vec();
    let mut transcript: Vec<PairRecord> = Vec::new();
    let mut queue: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut counter = 0usize;
    let mut push_pairs = |basis: &[ModuleElement], queue: &mut BTreeSet<(u64, usize, usize)>, j: usize| {
        for i in 0..j {
            let key = if opts.normal_strategy {
                lcm_degree(order, &basis[i], &basis[j])
            } else {
                counter += 1;
                counter as u64
            };
            queue.insert((key, j, i));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&basis, &mut queue, j);
    }
    while let Some((key, j, i)) = queue.pop_first() {
        let _ = key;
        let Some((s, cf_i, cf_j)) = s_vector(&basis[i], &basis[j], order) else {
            continue;
        };
        let li = basis[i].lead().unwrap();
        let lj = basis[j].lead().unwrap();
        if ideal && opts.coprime_criterion && li.mono.is_coprime(&lj.mono) {
            if opts.transcript {
                let c = li.coeff * lj.coeff;
                let mut q = vec![Polynomial::zero(ring); basis.len()];
                q[i] = tail(&basis[j]).to_polynomial(ring).scale(-c.recip());
                q[j] = tail(&basis[i]).to_polynomial(ring).scale(c.recip());
                transcript.push(PairRecord {
                    i,
                    j,
                    cf_i,
                    cf_j,
                    quotients: q,
                    koszul: true,
                });
            }
            continue;
        }
        let div = divide_module_with(&s, &basis, order, opts.divisor_choice);
        let mut q = div.quotients;
        if !div.remainder.is_zero() {
            let lc = div.remainder.lead().unwrap().coeff;
            let g = div.remainder.scale(lc.recip());
            q.push(Polynomial::constant(ring, lc));
            basis.push(g);
            push_pairs(&basis, &mut queue, basis.len() - 1);
        }
        if opts.transcript {
            transcript.push(PairRecord {
                i,
                j,
                cf_i,
                cf_j,
                quotients: q,
                koszul: false,
            });
        }
    }
    if opts.transcript {
        for rec in &mut transcript {
            rec.quotients.resize(basis.len(), Polynomial::zero(ring));
        }
    }
    GroebnerBasis {
        elements: basis,
        order: order.clone(),
        rank,
        transcript: opts.transcript.then_some(transcript),
    }
}

/// True iff every S-polynomial of `gens` reduces to zero.
pub fn is_groebner(gens: &[Polynomial]) -> bool {
    let Some(first) = gens.first() else {
        return true;
    };
    let elems: Vec<ModuleElement> = gens.iter().map(ModuleElement::from_polynomial).collect();
    is_groebner_module(&elems, &ModuleOrder::PositionOverTerm(*first.order()), true)
}

pub fn is_groebner_module(gens: &[ModuleElement], order: &ModuleOrder, ideal: bool) -> bool {
    for j in 0..gens.len() {
        for i in 0..j {
            let Some((s, _, _)) = s_vector(&gens[i], &gens[j], order) else {
                continue;
            };
            if ideal && gens[i].lead().unwrap().mono.is_coprime(&gens[j].lead().unwrap().mono) {
                continue;
            }
            if !divide_module(&s, gens, order).remainder.is_zero() {
                return false;
            }
        }
    }
    true
}

/// The reduced Gröbner basis: minimal leading terms, fully inter-reduced
/// tails, leading coefficient +1, sorted by descending leading term.
/// The result carries no transcript.
pub fn reduce_basis(gb: &GroebnerBasis) -> GroebnerBasis {
    let order = &gb.order;
    let mut keep: Vec<ModuleElement> = Vec::new();
    for (k, g) in gb.elements.iter().enumerate() {
        let lg = g.lead().unwrap();
        let redundant = gb.elements.iter().enumerate().any(|(l, h)| {
            let lh = h.lead().unwrap();
            l != k
                && lh.pos == lg.pos
                && lh.mono.divides(&lg.mono)
                && (lh.mono != lg.mono || l < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let lead = *keep[k].lead().unwrap();
        let others: Vec<ModuleElement> = keep
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, e)| e.clone())
            .collect();
        let t = tail(&keep[k]);
        let r = if others.is_empty() {
            t
        } else {
            divide_module(&t, &others, order).remainder
        };
        let lead_elem = ModuleElement::from_raw(vec![lead]);
        let g = lead_elem.add(order, &r);
        reduced.push(g.scale(lead.coeff.recip()));
    }
    reduced.sort_by(|a, b| {
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        order.compare(&lb.mono, lb.pos, &la.mono, la.pos)
    });
    GroebnerBasis {
        elements: reduced,
        order: order.clone(),
        rank: gb.rank,
        transcript: None,
    }
}

pub fn ideal_member(f: &Polynomial, gb: &GroebnerBasis) -> bool {
    if f.is_zero() {
        return true;
    }
    assert!(gb.is_ideal(), "membership test needs an ideal basis");
    divide(f, &gb.polynomials()).remainder.is_zero()
}

/// The defining ideal of the monomial curve `t ↦ (t^m0, t^m1, t^m2, t^n)`.
#[derive(Clone, Debug)]
pub struct ToricIdeal {
    pub spec: SequenceSpec,
    pub generators: Vec<Polynomial>,
    pub reduced_gb: GroebnerBasis,
}

/// Kernel of `k[X0, …] → k[T]`, `X_i ↦ T^{weights[i]}`, for one to four
/// weights placed on `X0, X1, X2, Y` in turn. The result is the
/// `T`-free part of an elimination basis, made monic in weighted grevlex.
pub fn curve_kernel(weights: &[u64]) -> Vec<Polynomial> {
    assert!((1..=4).contains(&weights.len()), "one to four weights");
    let mut w = [1u64; 4];
    w[..weights.len()].copy_from_slice(weights);
    let grading = WeightedGrading::new(w[0], w[1], w[2], w[3]);
    let elim = MonomialOrder::elimination(grading);
    let gens: Vec<Polynomial> = [Var::X0, Var::X1, Var::X2, Var::Y]
        .iter()
        .zip(weights)
        .map(|(&v, &wt)| Polynomial::binomial(elim, Monomial::var(v, 1), Monomial::var(Var::T, wt as u32)))
        .collect();
    let opts = BuchbergerOptions {
        transcript: false,
        ..Default::default()
    };
    let gb = reduce_basis(&buchberger_with(&gens, opts));
    let grevlex = MonomialOrder::grevlex(grading);
    gb.polynomials()
        .into_iter()
        .filter(|p| p.max_exp(Var::T) == 0)
        .map(|p| p.with_order(grevlex).monic())
        .collect()
}

pub fn toric_kernel(spec: &SequenceSpec) -> ToricIdeal {
    let generators = curve_kernel(&spec.as_array());
    let opts = BuchbergerOptions {
        transcript: false,
        ..Default::default()
    };
    let reduced_gb = reduce_basis(&buchberger_with(&generators, opts));
    ToricIdeal {
        spec: *spec,
        generators,
        reduced_gb,
    }
}

/// `X^a − X^b` with coefficients ±1 whose two monomials have equal
/// weighted degree, i.e. which vanishes on the curve.
pub fn is_toric_binomial(p: &Polynomial, spec: &SequenceSpec) -> bool {
    let grading = spec.grading();
    p.len() == 2
        && p.terms()[0].coeff == Coeff::ONE
        && p.terms()[1].coeff == Coeff::MINUS_ONE
        && grading.degree(&p.terms()[0].mono) == grading.degree(&p.terms()[1].mono)
}
