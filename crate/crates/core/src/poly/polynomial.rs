//! Sparse polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::Coeff;
use super::monomial::{Monomial, Var};
use super::order::{MonomialOrder, WeightedGrading};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

impl Term {
    pub fn new(coeff: Coeff, mono: Monomial) -> Self {
        Term { coeff, mono }
    }

    pub fn mul(&self, other: &Term) -> Term {
        Term::new(self.coeff * other.coeff, self.mono.mul(&other.mono))
    }
}

/// A polynomial whose terms are kept strictly descending in `order`,
/// without zero coefficients or repeated monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<Term>,
    order: MonomialOrder,
}

impl Polynomial {
    pub fn zero(order: MonomialOrder) -> Self {
        Polynomial {
            terms: Vec::new(),
            order,
        }
    }

    pub fn constant(order: MonomialOrder, c: Coeff) -> Self {
        Self::term(order, c, Monomial::ONE)
    }

    pub fn one(order: MonomialOrder) -> Self {
        Self::constant(order, Coeff::ONE)
    }

    pub fn term(order: MonomialOrder, c: Coeff, mono: Monomial) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term::new(c, mono)]
        };
        Polynomial { terms, order }
    }

    pub fn monomial(order: MonomialOrder, mono: Monomial) -> Self {
        Self::term(order, Coeff::ONE, mono)
    }

    pub fn var(order: MonomialOrder, v: Var) -> Self {
        Self::monomial(order, Monomial::var(v, 1))
    }

    /// `a - b` for monomials `a`, `b`.
    pub fn binomial(order: MonomialOrder, a: Monomial, b: Monomial) -> Self {
        Self::from_terms(
            order,
            vec![Term::new(Coeff::ONE, a), Term::new(Coeff::MINUS_ONE, b)],
        )
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(order: MonomialOrder, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| order.compare(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff += t.coeff,
                _ => out.push(t),
            }
            if out.last().is_some_and(|l| l.coeff.is_zero()) {
                out.pop();
            }
        }
        Polynomial { terms: out, order }
    }

    /// Wraps terms that are already sorted, reduced and nonzero.
    pub(crate) fn from_sorted(order: MonomialOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| order.compare(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial { terms, order }
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        Self::from_terms(order, self.terms.clone())
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_mono(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }

    pub fn lead_coeff(&self) -> Option<Coeff> {
        self.terms.first().map(|t| t.coeff)
    }

    /// Constant polynomial value, if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::ZERO),
            [t] if t.mono.is_one() => Some(t.coeff),
            _ => None,
        }
    }

    /// True iff this is a nonzero constant (a unit of the ring).
    pub fn is_unit(&self) -> bool {
        matches!(self.as_constant(), Some(c) if !c.is_zero())
    }

    /// Every term has positive degree, i.e. the polynomial lies in the
    /// ideal generated by the variables.
    pub fn in_maximal_ideal(&self) -> bool {
        self.terms.iter().all(|t| !t.mono.is_one())
    }

    pub fn scale(&self, c: Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff * c, t.mono))
                .collect(),
            order: self.order,
        }
    }

    pub fn mul_term(&self, t: &Term) -> Self {
        if t.coeff.is_zero() {
            return Self::zero(self.order);
        }
        // multiplication by a monomial preserves the order
        Polynomial {
            terms: self.terms.iter().map(|s| s.mul(t)).collect(),
            order: self.order,
        }
    }

    pub fn mul_mono(&self, m: &Monomial) -> Self {
        self.mul_term(&Term::new(Coeff::ONE, *m))
    }

    /// `self + c * m * other`
    pub fn add_scaled(&self, c: Coeff, m: &Monomial, other: &Polynomial) -> Self {
        debug_assert_eq!(self.order, other.order);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let ord = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|t| Term::new(t.coeff * c, t.mono.mul(m)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ord.compare(&x.mono, &y.mono) {
                    Ordering::Greater => out.push(*a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = x.coeff + y.coeff;
                        let mono = x.mono;
                        a.next();
                        b.next();
                        if !s.is_zero() {
                            out.push(Term::new(s, mono));
                        }
                    }
                },
            }
        }
        Polynomial { terms: out, order: ord }
    }

    pub fn is_homogeneous(&self, grading: &WeightedGrading) -> Option<u64> {
        let mut it = self.terms.iter().map(|t| grading.degree(&t.mono));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Weighted degree of the leading term under this polynomial's grading.
    pub fn degree(&self) -> Option<u64> {
        self.lead_mono().map(|m| self.order.degree(&m))
    }

    pub fn max_exp(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.mono.exp(v)).max().unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::one(self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Leading coefficient normalized to +1.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            Some(c) if !c.is_one() => self.scale(c.recip()),
            _ => self.clone(),
        }
    }

    /// Normalizes the sign only: the leading coefficient becomes positive.
    pub fn positive_lead(&self) -> Self {
        match self.lead_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(Coeff::ONE, &Monomial::ONE, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(Coeff::MINUS_ONE, &Monomial::ONE, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(Coeff::MINUS_ONE)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.order, rhs.order);
        let (small, big) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc = Polynomial::zero(self.order);
        for t in &small.terms {
            acc = acc.add_scaled(t.coeff, &t.mono, big);
        }
        acc
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        (&self).neg()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t.mono.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", t.mono)?;
            } else {
                write!(f, "{abs}*{}", t.mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Quotients and remainder of a multivariate division.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Divides `f` by `divisors`, always using the first divisor whose leading
/// monomial divides the current leading term.
pub fn divide(f: &Polynomial, divisors: &[Polynomial]) -> Division {
    let ord = *f.order();
    assert!(
        divisors.iter().all(|d| !d.is_zero()),
        "division by the zero polynomial"
    );
    let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
    let mut rem: Vec<Term> = Vec::new();
    let mut p = f.clone();
    while let Some(lt) = p.lead().copied() {
        let hit = divisors.iter().enumerate().find_map(|(i, d)| {
            let dl = d.lead().unwrap();
            lt.mono.div(&dl.mono).map(|q| (i, Term::new(lt.coeff / dl.coeff, q)))
        });
        match hit {
            Some((i, q)) => {
                p = p.add_scaled(-q.coeff, &q.mono, &divisors[i]);
                quotients[i].push(q);
            }
            None => {
                rem.push(lt);
                p.terms.remove(0);
            }
        }
    }
    Division {
        quotients: quotients
            .into_iter()
            .map(|ts| Polynomial::from_terms(ord, ts))
            .collect(),
        remainder: Polynomial::from_sorted(ord, rem),
    }
}

/// S-polynomial of `f` and `g` with the cofactors that cancel the leading
/// terms: `spoly = cof_f * f - cof_g * g`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> (Polynomial, Term, Term) {
    let lf = *f.lead().expect("S-polynomial of zero");
    let lg = *g.lead().expect("S-polynomial of zero");
    let l = lf.mono.lcm(&lg.mono);
    let cf = Term::new(lf.coeff.recip(), l.div(&lf.mono).unwrap());
    let cg = Term::new(lg.coeff.recip(), l.div(&lg.mono).unwrap());
    let s = f.mul_term(&cf).add_scaled(-cg.coeff, &cg.mono, g);
    (s, cf, cg)
}
