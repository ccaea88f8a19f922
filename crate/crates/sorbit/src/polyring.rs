//! Sparse multivariate polynomials over exact rationals in the simple-root
//! variables g1 … gl, graded by total degree, with the Weyl action and the
//! Reynolds (averaging) operator.
//!
//! Polynomials are immutable values; every operation is pure. The canonical
//! text form orders terms by descending graded-lexicographic order and
//! prints every coefficient as a reduced `p/q`, e.g.
//! `1*g1^2*g2 + -1/2*g2^3`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::rat::{parse_rat, rat_int, Rat};
use crate::rootsys::RootSystem;
use crate::weyl::WeylElement;

/// Exponent vector. Ordered by total degree, then lexicographically, so a
/// `BTreeMap` iterates in ascending graded-lex order.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: exponent vector -> nonzero rational coefficient. The
/// zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(nvars), c);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(Monomial::variable(nvars, i), Rat::one());
        p
    }

    /// Linear form with the given simple-root coordinates.
    pub fn linear_form(coords: &[Rat]) -> Self {
        let nvars = coords.len();
        let mut p = Polynomial::zero(nvars);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::variable(nvars, i), c.clone());
            }
        }
        p
    }

    /// Linear form of a root given by integer coordinates.
    pub fn from_root(root: &[i64]) -> Self {
        Polynomial::linear_form(&root.iter().map(|&x| rat_int(x)).collect::<Vec<_>>())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Some(degree) when every term has the same total degree; the zero
    /// polynomial is homogeneous of every degree, reported as Some(0).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let Some(first) = it.next() else {
            return Some(0);
        };
        it.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, mono: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.nvars, Rat::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The degree-k part.
    pub fn graded_component(&self, k: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into graded components (only degrees that occur).
    pub fn grade_decompose(&self) -> BTreeMap<usize, Polynomial> {
        let mut out: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Substitutes each variable by the given polynomial (ring
    /// homomorphism).
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "variable count mismatch");
        let out_vars = images
            .first()
            .map(|p| p.nvars)
            .unwrap_or(self.nvars);
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::constant(out_vars, Rat::one()), p.clone()])
            .collect();
        let mut out = Polynomial::zero(out_vars);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                acc = acc.mul(&powers[i][e as usize]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Splits into (quotient, remainder) on division by the variable g_{i+1}:
    /// terms divisible by it shift down, the rest is the remainder.
    pub fn divide_by_variable(&self, i: usize) -> (Polynomial, Polynomial) {
        let mut quotient = Polynomial::zero(self.nvars);
        let mut remainder = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                quotient.add_term(Monomial(e), c.clone());
            } else {
                remainder.add_term(m.clone(), c.clone());
            }
        }
        (quotient, remainder)
    }

    /// Evaluates at a rational point given by simple-root values.
    pub fn evaluate(&self, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.nvars, "variable count mismatch");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &values[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Coordinates with respect to `monomials_of_degree(nvars, k)`. The
    /// polynomial must be homogeneous of degree k (or zero).
    pub fn coordinates(&self, k: usize) -> Result<Vec<Rat>> {
        if !self.is_zero() && self.homogeneous_degree() != Some(k) {
            return Err(Error::InvalidInput(format!(
                "polynomial is not homogeneous of degree {k}"
            )));
        }
        let basis = monomials_of_degree(self.nvars, k);
        Ok(basis.iter().map(|m| self.coefficient(m)).collect())
    }

    /// Inverse of [`Polynomial::coordinates`].
    pub fn from_coordinates(nvars: usize, k: usize, coords: &[Rat]) -> Polynomial {
        let basis = monomials_of_degree(nvars, k);
        assert_eq!(coords.len(), basis.len());
        let mut p = Polynomial::zero(nvars);
        for (m, c) in basis.into_iter().zip(coords) {
            p.add_term(m, c.clone());
        }
        p
    }

    /// Parses the canonical text form; `nvars` fixes the variable count.
    /// Accepts terms joined by `+` or `-`, each a `*`-separated product of
    /// an optional rational coefficient and factors `g<i>` or `g<i>^<e>`.
    pub fn parse(text: &str, nvars: usize) -> Result<Polynomial> {
        let mut out = Polynomial::zero(nvars);
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::InvalidInput("empty polynomial".into()));
        }
        // split into signed terms at top level
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut seen_any = false;
        for ch in text.chars() {
            match ch {
                '+' | '-' if seen_any && !current.trim().is_empty() => {
                    terms.push((negative, std::mem::take(&mut current)));
                    negative = ch == '-';
                }
                '+' if !seen_any || current.trim().is_empty() => {}
                '-' if !seen_any || current.trim().is_empty() => negative = !negative,
                _ => {
                    current.push(ch);
                    if !ch.is_whitespace() {
                        seen_any = true;
                    }
                }
            }
        }
        if current.trim().is_empty() {
            return Err(Error::InvalidInput(format!("dangling sign in {text:?}")));
        }
        terms.push((negative, current));
        for (neg, term) in terms {
            let mut coeff = Rat::one();
            let mut expo = vec![0u32; nvars];
            for factor in term.split('*') {
                let f = factor.trim();
                if f.is_empty() {
                    return Err(Error::InvalidInput(format!("empty factor in {term:?}")));
                }
                if let Some(rest) = f.strip_prefix('g') {
                    let (var, e) = match rest.split_once('^') {
                        Some((v, e)) => (v, e.trim().parse::<u32>().map_err(|_| {
                            Error::InvalidInput(format!("bad exponent in {f:?}"))
                        })?),
                        None => (rest, 1),
                    };
                    let idx: usize = var.trim().parse().map_err(|_| {
                        Error::InvalidInput(format!("bad variable in {f:?}"))
                    })?;
                    if idx == 0 || idx > nvars {
                        return Err(Error::InvalidInput(format!(
                            "variable g{idx} out of range 1..={nvars}"
                        )));
                    }
                    expo[idx - 1] += e;
                } else {
                    coeff *= parse_rat(f)?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(Monomial(expo), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.degree() == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}")?;
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 1 {
                        write!(f, "*g{}", i + 1)?;
                    } else if e > 1 {
                        write!(f, "*g{}^{}", i + 1, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Monomial basis of the degree-k graded piece, in descending graded-lex
/// order (matching the display order).
pub fn monomials_of_degree(nvars: usize, k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(nvars: usize, left: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == nvars {
            current[pos] = left;
            out.push(Monomial(current.clone()));
            return;
        }
        for e in (0..=left).rev() {
            current[pos] = e;
            rec(nvars, left - e, pos + 1, current, out);
        }
        current[pos] = 0;
    }
    rec(nvars, k as u32, 0, &mut current, &mut out);
    out
}

/// Dimension of the degree-k graded piece: C(k + l − 1, l − 1).
pub fn graded_dimension(nvars: usize, k: usize) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..nvars {
        num *= (k + i) as u128;
        den *= i as u128;
    }
    (num / den) as usize
}

/// Action of an integer matrix on polynomials, substituting each variable
/// with its image linear form (the matrix columns).
pub fn act_matrix(m: &crate::linalg::IntMatrix, f: &Polynomial) -> Polynomial {
    let n = f.nvars();
    assert_eq!(m.n(), n, "variable count mismatch");
    let images: Vec<Polynomial> = (0..n)
        .map(|j| {
            let col: Vec<Rat> = (0..n).map(|k| rat_int(m.get(k, j))).collect();
            Polynomial::linear_form(&col)
        })
        .collect();
    f.substitute(&images)
}

/// The Weyl action on polynomials: `(w.f)(x) = f(w⁻¹.x)`.
pub fn act(w: &WeylElement, f: &Polynomial) -> Polynomial {
    act_matrix(w.matrix(), f)
}

/// Averages `f` over the given elements (the Reynolds projection when the
/// elements form a group).
pub fn reynolds<'a>(elements: impl IntoIterator<Item = &'a WeylElement>, f: &Polynomial) -> Polynomial {
    let mut sum = Polynomial::zero(f.nvars());
    let mut count = 0u64;
    for w in elements {
        sum = sum.add(&act(w, f));
        count += 1;
    }
    assert!(count > 0, "cannot average over an empty set");
    sum.scale(&Rat::new(1.into(), count.into()))
}

/// The product of all positive roots, homogeneous of degree N.
pub fn weyl_vector_product(rs: &RootSystem) -> Polynomial {
    let mut d = Polynomial::constant(rs.rank(), Rat::one());
    for a in rs.positive_roots() {
        d = d.mul(&Polynomial::from_root(a));
    }
    d
}

/// Deterministic sparse polynomial for randomized identities: at most
/// `max_terms` monomials of total degree at most `max_degree`, small
/// rational coefficients.
pub fn random_polynomial<R: Rng>(
    rng: &mut R,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let mut e = vec![0u32; nvars];
        let mut left = rng.gen_range(0..=max_degree);
        for item in e.iter_mut() {
            let take = rng.gen_range(0..=left);
            *item = take;
            left -= take;
        }
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=9);
        p.add_term(Monomial(e), crate::rat::rat(num, den));
    }
    p
}
