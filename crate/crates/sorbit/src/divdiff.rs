//! The divided-difference calculus.
//!
//! For a positive root α the operator takes f to (f − s_α.f)/α. The
//! numerator vanishes on the hyperplane ker α, so the division is exact;
//! it is performed by a change of basis that sends α to a coordinate,
//! splitting off that variable, and changing back. The remainder is always
//! asserted to be zero: a nonzero one can only mean an implementation bug
//! and is surfaced as an internal consistency failure.
//!
//! For a group element w the operator composes the simple-root operators
//! along a reduced word of w; the result is independent of the word, which
//! [`DivDiff::well_defined`] checks exhaustively. Composition of two element
//! operators is the operator of the product when the lengths add, and zero
//! otherwise ([`DivDiff::composition_check`]).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::polyring::{act_matrix, monomials_of_degree, Polynomial};
use crate::rat::{rat_int, Rat};
use crate::rootsys::RootSystem;
use crate::weyl::{WeylElement, WeylGroup};

/// Matrix of an element operator on one graded piece: column j is the
/// coordinate vector of the image of the j-th degree-`from_degree` monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub from_degree: usize,
    pub to_degree: usize,
    pub columns: Vec<Vec<Rat>>,
}

impl OperatorMatrix {
    /// Applies the operator to coordinates in the domain piece.
    pub fn apply(&self, coords: &[Rat]) -> Vec<Rat> {
        assert_eq!(coords.len(), self.columns.len());
        let rows = self.columns.first().map_or(0, |c| c.len());
        let mut out = vec![Rat::zero(); rows];
        for (col, c) in self.columns.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(col) {
                *o += c * x;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns
            .iter()
            .all(|c| c.iter().all(|x| x.is_zero()))
    }
}

/// Divided-difference engine over one root system, with a per-(element,
/// degree) operator-matrix cache. Inserts are idempotent, so concurrent
/// population through the mutex is safe.
pub struct DivDiff<'a> {
    rs: &'a RootSystem,
    cache: Mutex<HashMap<(IntMatrix, usize), Arc<OperatorMatrix>>>,
}

impl<'a> DivDiff<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        DivDiff {
            rs,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    /// (f − s_α.f)/α for a positive root α; the division must be exact.
    pub fn delta_root(&self, alpha: &[i64], f: &Polynomial) -> Result<Polynomial> {
        if !self.rs.is_positive_root(alpha) {
            return Err(Error::InvalidInput(format!(
                "{alpha:?} is not a positive root"
            )));
        }
        let reflection = self.rs.reflection_matrix(alpha)?;
        let numerator = f.sub(&act_matrix(&reflection, f));
        if numerator.is_zero() {
            return Ok(Polynomial::zero(f.nvars()));
        }
        let n = f.nvars();
        let pivot = alpha
            .iter()
            .position(|&x| x != 0)
            .expect("roots are nonzero");
        // change of basis: y_pivot = α, y_j = γ_j elsewhere, so
        // γ_pivot = (y_pivot − Σ_{j≠pivot} α_j y_j)/α_pivot
        let mut to_y = Vec::with_capacity(n);
        for j in 0..n {
            if j == pivot {
                let mut coords = vec![Rat::zero(); n];
                let ap = rat_int(alpha[pivot]);
                coords[pivot] = rat_int(1) / ap.clone();
                for (k, &ak) in alpha.iter().enumerate() {
                    if k != pivot && ak != 0 {
                        coords[k] = -rat_int(ak) / ap.clone();
                    }
                }
                to_y.push(Polynomial::linear_form(&coords));
            } else {
                to_y.push(Polynomial::variable(n, j));
            }
        }
        let in_y = numerator.substitute(&to_y);
        let (quotient_y, remainder) = in_y.divide_by_variable(pivot);
        if !remainder.is_zero() {
            return Err(Error::Inconsistency(format!(
                "division of f − s_α.f by α left a nonzero remainder for α = {alpha:?}"
            )));
        }
        let mut from_y = Vec::with_capacity(n);
        for j in 0..n {
            if j == pivot {
                from_y.push(Polynomial::from_root(alpha));
            } else {
                from_y.push(Polynomial::variable(n, j));
            }
        }
        Ok(quotient_y.substitute(&from_y))
    }

    /// Operator of the i-th simple root.
    pub fn delta_simple(&self, i: usize, f: &Polynomial) -> Result<Polynomial> {
        let mut e = vec![0i64; self.rs.rank()];
        e[i] = 1;
        self.delta_root(&e, f)
    }

    /// Composition along a word (applied right to left, so the last letter
    /// acts first).
    pub fn delta_word(&self, word: &[usize], f: &Polynomial) -> Result<Polynomial> {
        let mut acc = f.clone();
        for &g in word.iter().rev() {
            if acc.is_zero() {
                return Ok(acc);
            }
            acc = self.delta_simple(g, &acc)?;
        }
        Ok(acc)
    }

    /// The element operator, along the stored reduced word of w.
    pub fn delta_element(&self, w: &WeylElement, f: &Polynomial) -> Result<Polynomial> {
        self.delta_word(w.word(), f)
    }

    /// Matrix of the element operator on the degree-k piece (requires
    /// k >= l(w)); cached.
    pub fn operator_matrix(&self, w: &WeylElement, k: usize) -> Result<Arc<OperatorMatrix>> {
        assert!(k >= w.length(), "operator lowers degree by the length");
        let key = (w.matrix().clone(), k);
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return Ok(Arc::clone(m));
        }
        let to_degree = k - w.length();
        let mut columns = Vec::new();
        for mono in monomials_of_degree(self.rs.rank(), k) {
            let p = Polynomial::from_terms(self.rs.rank(), [(mono.0.clone(), Rat::one())]);
            let image = self.delta_element(w, &p)?;
            columns.push(image.coordinates(to_degree)?);
        }
        let matrix = Arc::new(OperatorMatrix {
            from_degree: k,
            to_degree,
            columns,
        });
        let mut cache = self.cache.lock().unwrap();
        Ok(Arc::clone(cache.entry(key).or_insert(matrix)))
    }

    /// Checks that every reduced word of the element induces the same
    /// operator on all graded pieces up to `cap`.
    pub fn well_defined(
        &self,
        group: &WeylGroup,
        element: usize,
        cap: usize,
    ) -> Result<WellDefinedReport> {
        let w = group.element(element);
        let words = group.reduced_words(element);
        let mut consistent = true;
        'outer: for k in w.length()..=cap {
            let monos = monomials_of_degree(self.rs.rank(), k);
            let mut reference: Option<Vec<Polynomial>> = None;
            for word in &words {
                let images: Vec<Polynomial> = monos
                    .iter()
                    .map(|m| {
                        let p =
                            Polynomial::from_terms(self.rs.rank(), [(m.0.clone(), Rat::one())]);
                        self.delta_word(word, &p)
                    })
                    .collect::<Result<_>>()?;
                match &reference {
                    None => reference = Some(images),
                    Some(r) => {
                        if r != &images {
                            consistent = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        Ok(WellDefinedReport {
            word: w.word().to_vec(),
            num_words: words.len(),
            cap,
            consistent,
        })
    }

    /// Checks the composition rule on all graded pieces up to `cap`: the
    /// composite of the two element operators equals the product-element
    /// operator when the lengths add, and vanishes otherwise.
    pub fn composition_check(
        &self,
        group: &WeylGroup,
        left: usize,
        right: usize,
        cap: usize,
    ) -> Result<CompositionReport> {
        let w = group.element(left);
        let v = group.element(right);
        let product = group.multiply(left, right);
        let additive =
            group.element(product).length() == w.length() + v.length();
        let mut consistent = true;
        'outer: for k in (w.length() + v.length())..=cap {
            let right_op = self.operator_matrix(v, k)?;
            let left_op = self.operator_matrix(w, k - v.length())?;
            let rhs = additive.then(|| self.operator_matrix(group.element(product), k));
            let rhs = match rhs {
                Some(r) => Some(r?),
                None => None,
            };
            for (j, col) in right_op.columns.iter().enumerate() {
                let composed = left_op.apply(col);
                let expected = match &rhs {
                    Some(m) => m.columns[j].clone(),
                    None => vec![Rat::zero(); composed.len()],
                };
                if composed != expected {
                    consistent = false;
                    break 'outer;
                }
            }
        }
        Ok(CompositionReport {
            left_word: w.word().to_vec(),
            right_word: v.word().to_vec(),
            additive,
            cap,
            consistent,
        })
    }

    /// The product rule: Δ_α(fg) = Δ_α(f)·g + (s_α.f)·Δ_α(g), for a simple
    /// root index.
    pub fn leibniz_holds(&self, i: usize, f: &Polynomial, g: &Polynomial) -> Result<bool> {
        let lhs = self.delta_simple(i, &f.mul(g))?;
        let reflection = self.rs.simple_reflection_matrix(i);
        let rhs = self
            .delta_simple(i, f)?
            .mul(g)
            .add(&act_matrix(&reflection, f).mul(&self.delta_simple(i, g)?));
        Ok(lhs == rhs)
    }
}

/// Outcome of a reduced-word independence check.
#[derive(Clone, Debug)]
pub struct WellDefinedReport {
    pub word: Vec<usize>,
    pub num_words: usize,
    pub cap: usize,
    pub consistent: bool,
}

/// Outcome of a composition-rule check for one ordered pair.
#[derive(Clone, Debug)]
pub struct CompositionReport {
    pub left_word: Vec<usize>,
    pub right_word: Vec<usize>,
    pub additive: bool,
    pub cap: usize,
    pub consistent: bool,
}
