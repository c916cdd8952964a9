//! Elements of free modules `R^t` and the module orders used on them.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::coeff::Coeff;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::{Polynomial, Term};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModTerm {
    pub coeff: Coeff,
    pub mono: Monomial,
    pub pos: usize,
}

impl ModTerm {
    pub fn new(coeff: Coeff, mono: Monomial, pos: usize) -> Self {
        ModTerm { coeff, mono, pos }
    }
}

/// Data of a Schreyer-induced order on a free module `F_k`.
///
/// Basis vector `e_i` is sent to `leads[i]` times a basis vector of the
/// previous module, recursively down to the ring. `total[i]` is the
/// resulting ring monomial and `chain[i]` the sequence of basis indices
/// traversed, from the bottom module up to `i` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreyerFrame {
    ring: MonomialOrder,
    total: Vec<Monomial>,
    chain: Vec<Vec<u32>>,
}

impl SchreyerFrame {
    /// Frame on `R^t` induced by `e_i -> g_i`.
    pub fn from_generators(ring: MonomialOrder, gens: &[Polynomial]) -> Self {
        SchreyerFrame {
            ring,
            total: gens
                .iter()
                .map(|g| g.lead_mono().expect("zero generator in Schreyer frame"))
                .collect(),
            chain: (0..gens.len()).map(|i| vec![i as u32]).collect(),
        }
    }

    /// Frame on the next free module, induced by `e_j -> columns[j]`.
    pub fn next(&self, columns: &[ModuleElement]) -> Self {
        let mut total = Vec::with_capacity(columns.len());
        let mut chain = Vec::with_capacity(columns.len());
        for (j, c) in columns.iter().enumerate() {
            let lt = c.lead().expect("zero column in Schreyer frame");
            total.push(lt.mono.mul(&self.total[lt.pos]));
            let mut ch = self.chain[lt.pos].clone();
            ch.push(j as u32);
            chain.push(ch);
        }
        SchreyerFrame {
            ring: self.ring,
            total,
            chain,
        }
    }

    /// Frame on the module whose basis maps onto `elems`, which live in
    /// a module ordered by `order` (the ring itself for rank-one
    /// position-over-term orders).
    pub fn induced(order: &ModuleOrder, elems: &[ModuleElement]) -> Self {
        match order {
            ModuleOrder::PositionOverTerm(ring) => {
                assert!(
                    elems.iter().all(|e| e.terms().iter().all(|t| t.pos == 0)),
                    "position-over-term frames are induced from ideals only"
                );
                SchreyerFrame {
                    ring: *ring,
                    total: elems
                        .iter()
                        .map(|e| e.lead().expect("zero generator in Schreyer frame").mono)
                        .collect(),
                    chain: (0..elems.len()).map(|i| vec![i as u32]).collect(),
                }
            }
            ModuleOrder::Schreyer(f) => f.next(elems),
        }
    }

    pub fn rank(&self) -> usize {
        self.total.len()
    }

    pub fn total(&self, i: usize) -> Monomial {
        self.total[i]
    }

    fn compare(&self, a: &Monomial, pa: usize, b: &Monomial, pb: usize) -> Ordering {
        if pa == pb {
            return self.ring.compare(a, b);
        }
        let ma = a.mul(&self.total[pa]);
        let mb = b.mul(&self.total[pb]);
        self.ring.compare(&ma, &mb).then_with(|| {
            // smaller index is greater at the first differing level
            for (x, y) in self.chain[pa].iter().zip(self.chain[pb].iter()) {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

/// A term order on a free module over the polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Position first (smaller position is greater), then the ring order.
    PositionOverTerm(MonomialOrder),
    /// Order induced by the leading terms of the images of the basis.
    Schreyer(Arc<SchreyerFrame>),
}

impl ModuleOrder {
    pub fn ring(&self) -> &MonomialOrder {
        match self {
            ModuleOrder::PositionOverTerm(o) => o,
            ModuleOrder::Schreyer(f) => &f.ring,
        }
    }

    pub fn compare(&self, a: &Monomial, pa: usize, b: &Monomial, pb: usize) -> Ordering {
        match self {
            ModuleOrder::PositionOverTerm(o) => pb.cmp(&pa).then_with(|| o.compare(a, b)),
            ModuleOrder::Schreyer(f) => f.compare(a, pa, b, pb),
        }
    }

    fn cmp_terms(&self, a: &ModTerm, b: &ModTerm) -> Ordering {
        self.compare(&a.mono, a.pos, &b.mono, b.pos)
    }
}

/// A vector in a free module, terms strictly descending in a module order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ModuleElement {
    terms: Vec<ModTerm>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement { terms: Vec::new() }
    }

    pub fn from_terms(order: &ModuleOrder, mut terms: Vec<ModTerm>) -> Self {
        terms.sort_by(|a, b| order.cmp_terms(b, a));
        let mut out: Vec<ModTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.pos == t.pos => last.coeff += t.coeff,
                _ => out.push(t),
            }
            if out.last().is_some_and(|l| l.coeff.is_zero()) {
                out.pop();
            }
        }
        ModuleElement { terms: out }
    }

    /// `Σ components[i] e_i`.
    pub fn from_components(order: &ModuleOrder, components: &[Polynomial]) -> Self {
        let terms = components
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().iter().map(move |t| ModTerm::new(t.coeff, t.mono, i)))
            .collect();
        Self::from_terms(order, terms)
    }

    /// A polynomial viewed as an element of `R^1`.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        ModuleElement {
            terms: p
                .terms()
                .iter()
                .map(|t| ModTerm::new(t.coeff, t.mono, 0))
                .collect(),
        }
    }

    pub fn to_polynomial(&self, ring: MonomialOrder) -> Polynomial {
        debug_assert!(self.terms.iter().all(|t| t.pos == 0));
        Polynomial::from_terms(
            ring,
            self.terms.iter().map(|t| Term::new(t.coeff, t.mono)).collect(),
        )
    }

    pub fn components(&self, ring: MonomialOrder, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); rank];
        for t in &self.terms {
            assert!(t.pos < rank, "position {} outside rank {rank}", t.pos);
            buckets[t.pos].push(Term::new(t.coeff, t.mono));
        }
        buckets
            .into_iter()
            .map(|ts| Polynomial::from_terms(ring, ts))
            .collect()
    }

    /// Wrap terms already strictly descending in the intended order.
    pub fn from_raw(terms: Vec<ModTerm>) -> Self {
        ModuleElement { terms }
    }

    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lead(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub fn scale(&self, c: Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleElement {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm::new(t.coeff * c, t.mono, t.pos))
                .collect(),
        }
    }

    /// Multiplication by a ring term preserves any module order.
    pub fn mul_term(&self, t: &Term) -> Self {
        if t.coeff.is_zero() {
            return Self::zero();
        }
        ModuleElement {
            terms: self
                .terms
                .iter()
                .map(|s| ModTerm::new(s.coeff * t.coeff, s.mono.mul(&t.mono), s.pos))
                .collect(),
        }
    }

    /// `self + c * m * other`
    pub fn add_scaled(
        &self,
        order: &ModuleOrder,
        c: Coeff,
        m: &Monomial,
        other: &ModuleElement,
    ) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|t| ModTerm::new(t.coeff * c, t.mono.mul(m), t.pos))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.cmp_terms(x, y) {
                    Ordering::Greater => out.push(*a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = x.coeff + y.coeff;
                        let (mono, pos) = (x.mono, x.pos);
                        a.next();
                        b.next();
                        if !s.is_zero() {
                            out.push(ModTerm::new(s, mono, pos));
                        }
                    }
                },
            }
        }
        ModuleElement { terms: out }
    }

    pub fn add(&self, order: &ModuleOrder, other: &ModuleElement) -> Self {
        self.add_scaled(order, Coeff::ONE, &Monomial::ONE, other)
    }

    pub fn sub(&self, order: &ModuleOrder, other: &ModuleElement) -> Self {
        self.add_scaled(order, Coeff::MINUS_ONE, &Monomial::ONE, other)
    }

    /// `Σ p_i * self_i` for the component polynomials `p`, i.e. the image
    /// under the row vector `p`.
    pub fn apply_row(&self, row: &[Polynomial]) -> Polynomial {
        let ring = *row
            .first()
            .expect("empty row vector")
            .order();
        let mut acc = Polynomial::zero(ring);
        for t in &self.terms {
            acc = acc.add_scaled(t.coeff, &t.mono, &row[t.pos]);
        }
        acc
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}*e{}", t.coeff, t.mono, t.pos)?;
        }
        Ok(())
    }
}

/// Quotients and remainder of a division in a free module.
#[derive(Clone, Debug)]
pub struct ModuleDivision {
    pub quotients: Vec<Polynomial>,
    pub remainder: ModuleElement,
}

/// Which divisor is used when several leading terms divide the current one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DivisorChoice {
    #[default]
    First,
    Last,
}

/// Division of `f` by `divisors` in `order`. A divisor's leading term
/// divides a term only when both sit in the same position.
pub fn divide_module(
    f: &ModuleElement,
    divisors: &[ModuleElement],
    order: &ModuleOrder,
) -> ModuleDivision {
    divide_module_with(f, divisors, order, DivisorChoice::First)
}

pub fn divide_module_with(
    f: &ModuleElement,
    divisors: &[ModuleElement],
    order: &ModuleOrder,
    choice: DivisorChoice,
) -> ModuleDivision {
    let ring = *order.ring();
    let leads: Vec<ModTerm> = divisors
        .iter()
        .map(|d| *d.lead().expect("division by the zero vector"))
        .collect();
    let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
    let mut rem: Vec<ModTerm> = Vec::new();
    let mut p = f.clone();
    while let Some(lt) = p.lead().copied() {
        let divides = |(i, dl): (usize, &ModTerm)| {
            if dl.pos != lt.pos {
                return None;
            }
            lt.mono
                .div(&dl.mono)
                .map(|q| (i, Term::new(lt.coeff / dl.coeff, q)))
        };
        let hit = match choice {
            DivisorChoice::First => leads.iter().enumerate().find_map(divides),
            DivisorChoice::Last => leads.iter().enumerate().rev().find_map(divides),
        };
        match hit {
            Some((i, q)) => {
                p = p.add_scaled(order, -q.coeff, &q.mono, &divisors[i]);
                quotients[i].push(q);
            }
            None => {
                rem.push(lt);
                p.terms.remove(0);
            }
        }
    }
    ModuleDivision {
        quotients: quotients
            .into_iter()
            .map(|ts| Polynomial::from_terms(ring, ts))
            .collect(),
        remainder: ModuleElement { terms: rem },
    }
}

/// S-vector of `f` and `g`; `None` when the leading positions differ.
pub fn s_vector(
    f: &ModuleElement,
    g: &ModuleElement,
    order: &ModuleOrder,
) -> Option<(ModuleElement, Term, Term)> {
    let lf = *f.lead()?;
    let lg = *g.lead()?;
    if lf.pos != lg.pos {
        return None;
    }
    let l = lf.mono.lcm(&lg.mono);
    let cf = Term::new(lf.coeff.recip(), l.div(&lf.mono).unwrap());
    let cg = Term::new(lg.coeff.recip(), l.div(&lg.mono).unwrap());
    let s = f.mul_term(&cf).add_scaled(order, -cg.coeff, &cg.mono, g);
    Some((s, cf, cg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::order::WeightedGrading;

    fn ring() -> MonomialOrder {
        MonomialOrder::grevlex(WeightedGrading::standard())
    }

    #[test]
    fn different_positions_have_no_s_vector() {
        let ord = ModuleOrder::PositionOverTerm(ring());
        let x = Monomial::ring(1, 0, 0, 0);
        let y = Monomial::ring(0, 1, 0, 0);
        let a = ModuleElement::from_terms(&ord, vec![ModTerm::new(Coeff::ONE, x, 0)]);
        let b = ModuleElement::from_terms(&ord, vec![ModTerm::new(Coeff::ONE, y, 1)]);
        assert!(s_vector(&a, &b, &ord).is_none());
        let c = ModuleElement::from_terms(&ord, vec![ModTerm::new(Coeff::ONE, y, 0)]);
        let (s, cf, cg) = s_vector(&a, &c, &ord).unwrap();
        assert!(s.is_zero());
        assert_eq!((cf.mono, cg.mono), (y, x));
    }

    #[test]
    fn schreyer_order_uses_images_then_index() {
        let r = ring();
        let gens = vec![
            Polynomial::monomial(r, Monomial::ring(1, 0, 0, 0)),
            Polynomial::monomial(r, Monomial::ring(0, 1, 0, 0)),
        ];
        let frame = SchreyerFrame::from_generators(r, &gens);
        let ord = ModuleOrder::Schreyer(Arc::new(frame));
        // y*e0 and x*e1 both map to xy; the smaller index wins
        let y = Monomial::ring(0, 1, 0, 0);
        let x = Monomial::ring(1, 0, 0, 0);
        assert_eq!(ord.compare(&y, 0, &x, 1), Ordering::Greater);
        // x^2*e1 maps to x^2*y, which beats x*y
        let x2 = Monomial::ring(2, 0, 0, 0);
        assert_eq!(ord.compare(&x2, 1, &y, 0), Ordering::Greater);
    }

    #[test]
    fn division_respects_positions() {
        let ord = ModuleOrder::PositionOverTerm(ring());
        let x = Monomial::ring(1, 0, 0, 0);
        let f = ModuleElement::from_terms(&ord, vec![ModTerm::new(Coeff::ONE, x.pow(2), 1)]);
        let d = ModuleElement::from_terms(&ord, vec![ModTerm::new(Coeff::ONE, x, 0)]);
        let res = divide_module(&f, &[d.clone()], &ord);
        assert_eq!(res.remainder, f);
        let d1 = ModuleElement::from_terms(&ord, vec![ModTerm::new(Coeff::int(2), x, 1)]);
        let res = divide_module(&f, &[d, d1], &ord);
        assert!(res.remainder.is_zero());
        assert_eq!(res.quotients[1].to_string(), "1/2*X0");
    }
}
