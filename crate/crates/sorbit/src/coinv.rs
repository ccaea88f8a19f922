//! The graded ideal generated by the nonconstant invariant polynomials, the
//! quotient (coinvariant) algebra, and its harmonic complement.
//!
//! Everything is degree-local linear algebra: the ideal is graded, so
//! membership in degree k is a span test against an explicit basis of the
//! degree-k slice. No Gröbner machinery. Invariants of each degree come from
//! Reynolds-averaging the monomial basis and column-reducing, so no choice
//! of fundamental generators is ever made; the classical degrees enter only
//! as cross-checks.
//!
//! The harmonic complement in degree k is spanned by the divided-difference
//! images of the top class d (the product of the positive roots) under the
//! elements of length N − k. Constructing it verifies, exactly, that those
//! images are independent and meet the ideal slice trivially.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::divdiff::DivDiff;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, IntMatrix};
use crate::polyring::{
    graded_dimension, monomials_of_degree, weyl_vector_product, Polynomial,
};
use crate::rat::{rat_int, Rat};
use crate::rootsys::RootSystem;
use crate::weyl::{Subgroup, WeylGroup};

/// Basis of a degree-k subspace of the polynomial ring, as canonical reduced
/// columns over the monomial basis of that degree.
#[derive(Clone, Debug)]
pub struct GradedSlice {
    degree: usize,
    ambient_dim: usize,
    basis: Vec<Vec<Rat>>,
}

impl GradedSlice {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Exact membership of a coordinate vector in the span.
    pub fn contains_coords(&self, coords: &[Rat]) -> bool {
        assert_eq!(coords.len(), self.ambient_dim);
        let mut v = coords.to_vec();
        for col in &self.basis {
            let p = col
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis columns are nonzero");
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, c) in v.iter_mut().zip(col) {
                    *x -= &f * c;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn polynomials(&self, nvars: usize) -> Vec<Polynomial> {
        self.basis
            .iter()
            .map(|c| Polynomial::from_coordinates(nvars, self.degree, c))
            .collect()
    }
}

/// Report of the graded-ideal criterion: an ideal I ⊇ I_W equals I_W exactly
/// when the product of the positive roots stays outside it.
#[derive(Clone, Debug)]
pub struct HillerReport {
    /// Whether d = ∏ α lies in the enlarged ideal, tested in degree N.
    pub product_in_ideal: bool,
    /// I = I_W if and only if the product stayed outside.
    pub equals_invariant_ideal: bool,
}

/// Graded data of the quotient algebra.
#[derive(Clone, Debug)]
pub struct CoinvariantPresentation {
    /// Per-degree dimensions of the quotient, degrees 0 ..= N. These are the
    /// Poincaré coefficients.
    pub dimensions: Vec<usize>,
    /// (element index, image of d under that element's operator), in
    /// enumeration order over the whole group.
    pub harmonic_basis: Vec<(usize, Polynomial)>,
}

impl CoinvariantPresentation {
    pub fn total_dimension(&self) -> usize {
        self.dimensions.iter().sum()
    }
}

/// Engine for one root system and its enumerated Weyl group, with per-degree
/// caches. Slices for distinct degrees may be requested concurrently; each
/// published value is immutable.
pub struct Coinvariants<'a> {
    rs: &'a RootSystem,
    weyl: &'a WeylGroup,
    dd: DivDiff<'a>,
    cap: usize,
    d: Polynomial,
    invariants: Mutex<HashMap<usize, Arc<Vec<Polynomial>>>>,
    slices: Mutex<HashMap<usize, Arc<GradedSlice>>>,
    harmonics: Mutex<HashMap<usize, Arc<Vec<Polynomial>>>>,
    top_constant: OnceLock<Rat>,
}

impl<'a> Coinvariants<'a> {
    /// Default degree cap is N + 2, enough to watch the ideal saturate.
    pub fn new(rs: &'a RootSystem, weyl: &'a WeylGroup) -> Self {
        let cap = rs.num_positive_roots() + 2;
        Self::with_cap(rs, weyl, cap)
    }

    pub fn with_cap(rs: &'a RootSystem, weyl: &'a WeylGroup, cap: usize) -> Self {
        Coinvariants {
            rs,
            weyl,
            dd: DivDiff::new(rs),
            cap,
            d: weyl_vector_product(rs),
            invariants: Mutex::new(HashMap::new()),
            slices: Mutex::new(HashMap::new()),
            harmonics: Mutex::new(HashMap::new()),
            top_constant: OnceLock::new(),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn weyl(&self) -> &WeylGroup {
        self.weyl
    }

    pub fn divided_differences(&self) -> &DivDiff<'a> {
        &self.dd
    }

    /// The product of all positive roots (the top harmonic class).
    pub fn top_class(&self) -> &Polynomial {
        &self.d
    }

    /// Canonical basis of the W-invariants of degree j (without constants;
    /// degree 0 yields the empty list).
    pub fn invariant_basis(&self, j: usize) -> Arc<Vec<Polynomial>> {
        if let Some(b) = self.invariants.lock().unwrap().get(&j) {
            return Arc::clone(b);
        }
        let value = if j == 0 {
            Vec::new()
        } else {
            let averaged = self.reynolds_on_basis(j);
            let coords = averaged
                .iter()
                .filter(|p| !p.is_zero())
                .map(|p| p.coordinates(j).expect("averaging preserves the grade"));
            let nvars = self.rs.rank();
            linalg::reduced_basis(graded_dimension(nvars, j), coords)
                .into_iter()
                .map(|c| Polynomial::from_coordinates(nvars, j, &c))
                .collect()
        };
        let mut cache = self.invariants.lock().unwrap();
        Arc::clone(cache.entry(j).or_insert_with(|| Arc::new(value)))
    }

    /// Reynolds images of every degree-k monomial, sharing root-power tables
    /// per group element.
    fn reynolds_on_basis(&self, k: usize) -> Vec<Polynomial> {
        let nvars = self.rs.rank();
        let monos = monomials_of_degree(nvars, k);
        let mut sums = vec![Polynomial::zero(nvars); monos.len()];
        for w in self.weyl.elements() {
            let images: Vec<Polynomial> = (0..nvars)
                .map(|j| {
                    let col: Vec<Rat> =
                        (0..nvars).map(|r| rat_int(w.matrix().get(r, j))).collect();
                    Polynomial::linear_form(&col)
                })
                .collect();
            let mut powers: Vec<Vec<Polynomial>> = (0..nvars)
                .map(|j| vec![Polynomial::constant(nvars, rat_int(1)), images[j].clone()])
                .collect();
            for (mono, sum) in monos.iter().zip(sums.iter_mut()) {
                let mut acc = Polynomial::constant(nvars, rat_int(1));
                for (i, &e) in mono.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    while powers[i].len() <= e as usize {
                        let next = powers[i].last().unwrap().mul(&images[i]);
                        powers[i].push(next);
                    }
                    acc = acc.mul(&powers[i][e as usize]);
                }
                *sum = sum.add(&acc);
            }
        }
        let order = rat_int(self.weyl.order() as i64);
        sums.into_iter()
            .map(|p| p.scale(&(rat_int(1) / order.clone())))
            .collect()
    }

    /// Basis of the degree-k slice of the invariant ideal. Built upward:
    /// the degree-k slice is spanned by the variables times the degree-(k−1)
    /// slice together with the degree-k invariants.
    pub fn ideal_slice(&self, k: usize) -> Result<Arc<GradedSlice>> {
        if k > self.cap {
            return Err(Error::CapExceeded {
                degree: k,
                cap: self.cap,
            });
        }
        if let Some(s) = self.slices.lock().unwrap().get(&k) {
            return Ok(Arc::clone(s));
        }
        // make sure every lower slice exists (iterative to keep lock scopes
        // small; concurrent builders insert idempotently)
        for j in 0..k {
            if self.slices.lock().unwrap().contains_key(&j) {
                continue;
            }
            let slice = self.build_slice(j)?;
            self.slices
                .lock()
                .unwrap()
                .entry(j)
                .or_insert_with(|| Arc::new(slice));
        }
        let slice = self.build_slice(k)?;
        let mut cache = self.slices.lock().unwrap();
        let arc = cache.entry(k).or_insert_with(|| Arc::new(slice));
        Ok(Arc::clone(arc))
    }

    fn build_slice(&self, k: usize) -> Result<GradedSlice> {
        let nvars = self.rs.rank();
        let ambient = graded_dimension(nvars, k);
        if k == 0 {
            return Ok(GradedSlice {
                degree: 0,
                ambient_dim: ambient,
                basis: Vec::new(),
            });
        }
        let mut ech = Echelon::new(ambient);
        let previous = match self.slices.lock().unwrap().get(&(k - 1)) {
            Some(s) => Arc::clone(s),
            None => {
                return Err(Error::Inconsistency(
                    "lower ideal slice missing during construction".into(),
                ))
            }
        };
        for poly in previous.polynomials(nvars) {
            for t in 0..nvars {
                let shifted = poly.mul(&Polynomial::variable(nvars, t));
                ech.insert(&shifted.coordinates(k)?);
            }
        }
        for inv in self.invariant_basis(k).iter() {
            ech.insert(&inv.coordinates(k)?);
        }
        Ok(GradedSlice {
            degree: k,
            ambient_dim: ambient,
            basis: ech.into_basis(),
        })
    }

    /// Exact ideal membership for a homogeneous polynomial.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let Some(k) = f.homogeneous_degree() else {
            return Err(Error::InvalidInput(
                "ideal membership needs a homogeneous polynomial".into(),
            ));
        };
        let slice = self.ideal_slice(k)?;
        Ok(slice.contains_coords(&f.coordinates(k)?))
    }

    /// Graded dimensions of the quotient for degrees 0 ..= N (the dimension
    /// census).
    pub fn poincare_series(&self) -> Result<Vec<u64>> {
        let n = self.rs.num_positive_roots();
        let nvars = self.rs.rank();
        (0..=n)
            .map(|k| {
                let slice = self.ideal_slice(k)?;
                Ok((graded_dimension(nvars, k) - slice.dim()) as u64)
            })
            .collect()
    }

    /// The product formula from the invariant degrees: coefficients of
    /// ∏_j (1 + t + … + t^{d_j − 1}). None when the degrees are unknown.
    pub fn poincare_from_degrees(&self) -> Option<Vec<u64>> {
        let degrees = self.rs.degrees()?;
        let mut coeffs = vec![1u64];
        for &d in degrees {
            let mut next = vec![0u64; coeffs.len() + d - 1];
            for (i, &c) in coeffs.iter().enumerate() {
                for e in 0..d {
                    next[i + e] += c;
                }
            }
            coeffs = next;
        }
        Some(coeffs)
    }

    /// The images of the top class under all elements of length N − k: a
    /// basis of a direct complement of the ideal slice in degree k.
    /// Construction fails loudly if the rank checks do not come out exact.
    pub fn harmonic_basis(&self, k: usize) -> Result<Arc<Vec<Polynomial>>> {
        let n = self.rs.num_positive_roots();
        if k > n {
            return Err(Error::CapExceeded { degree: k, cap: n });
        }
        if let Some(h) = self.harmonics.lock().unwrap().get(&k) {
            return Ok(Arc::clone(h));
        }
        let mut polys = Vec::new();
        for i in self.weyl.elements_of_length(n - k) {
            polys.push(self.dd.delta_element(self.weyl.element(i), &self.d)?);
        }
        let coords: Vec<Vec<Rat>> = polys
            .iter()
            .map(|p| p.coordinates(k))
            .collect::<Result<_>>()?;
        if linalg::rank(&coords) != polys.len() {
            return Err(Error::Inconsistency(format!(
                "harmonic images of degree {k} are linearly dependent"
            )));
        }
        let slice = self.ideal_slice(k)?;
        let mut combined = coords;
        combined.extend(slice.basis().iter().cloned());
        let ambient = graded_dimension(self.rs.rank(), k);
        if linalg::rank(&combined) != polys.len() + slice.dim()
            || polys.len() + slice.dim() != ambient
        {
            return Err(Error::Inconsistency(format!(
                "harmonic images of degree {k} do not complement the ideal slice"
            )));
        }
        let mut cache = self.harmonics.lock().unwrap();
        Ok(Arc::clone(
            cache.entry(k).or_insert_with(|| Arc::new(polys)),
        ))
    }

    /// The nonzero constant obtained by applying the longest element's
    /// operator to the top class.
    pub fn top_constant(&self) -> Result<Rat> {
        if let Some(c) = self.top_constant.get() {
            return Ok(c.clone());
        }
        let w0 = self.weyl.longest_element();
        let c = self.dd.delta_element(w0, &self.d)?;
        if c.homogeneous_degree() != Some(0) || c.is_zero() {
            return Err(Error::Inconsistency(
                "top operator did not send d to a nonzero constant".into(),
            ));
        }
        let value = c.coefficient(&crate::polyring::Monomial::constant(self.rs.rank()));
        let _ = self.top_constant.set(value.clone());
        Ok(value)
    }

    /// Coefficient extraction in the harmonic basis: for f homogeneous of
    /// degree k and v of length N − k, applying the operator of w0·v⁻¹ and
    /// dividing by the top constant yields the coefficient of v's harmonic
    /// image in f (and annihilates the ideal slice).
    pub fn harmonic_coefficient(&self, v: usize, f: &Polynomial) -> Result<Rat> {
        let extractor = self
            .weyl
            .multiply(self.weyl.longest_index(), self.weyl.inverse(v));
        let image = self.dd.delta_element(self.weyl.element(extractor), f)?;
        if image.is_zero() {
            return Ok(Rat::zero());
        }
        if image.homogeneous_degree() != Some(0) {
            return Err(Error::InvalidInput(
                "harmonic coefficient extraction needs degree l(v) input".into(),
            ));
        }
        let c = image.coefficient(&crate::polyring::Monomial::constant(self.rs.rank()));
        Ok(c / self.top_constant()?)
    }

    /// Graded dimensions of the subgroup invariants of the quotient,
    /// computed by averaging the subgroup over the harmonic complement and
    /// taking the rank of the projection.
    pub fn invariant_quotient_series(&self, sub: &Subgroup) -> Result<Vec<u64>> {
        let n = self.rs.num_positive_roots();
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let harmonic = self.harmonic_basis(k)?;
            if harmonic.is_empty() {
                out.push(0);
                continue;
            }
            let slice = self.ideal_slice(k)?;
            let harmonic_coords: Vec<Vec<Rat>> = harmonic
                .iter()
                .map(|p| p.coordinates(k))
                .collect::<Result<_>>()?;
            let mut combined = harmonic_coords.clone();
            combined.extend(slice.basis().iter().cloned());
            let averaged: Vec<Vec<Rat>> = harmonic
                .iter()
                .map(|p| {
                    let avg = crate::polyring::reynolds(
                        sub.elements().iter().map(|&i| self.weyl.element(i)),
                        p,
                    );
                    avg.coordinates(k)
                })
                .collect::<Result<_>>()?;
            let sols = linalg::solve_many(&combined, &averaged).ok_or_else(|| {
                Error::Inconsistency(
                    "averaged harmonic class left the harmonic-plus-ideal span".into(),
                )
            })?;
            let projections: Vec<Vec<Rat>> = sols
                .into_iter()
                .map(|mut s| {
                    s.truncate(harmonic.len());
                    s
                })
                .collect();
            out.push(linalg::rank(&projections) as u64);
        }
        Ok(out)
    }

    /// Tests whether the ideal generated by the invariants together with the
    /// extra homogeneous generators is still the invariant ideal, by checking
    /// whether the top class survives in degree N.
    pub fn hiller_criterion(&self, extra_generators: &[Polynomial]) -> Result<HillerReport> {
        let n = self.rs.num_positive_roots();
        let nvars = self.rs.rank();
        let mut ech = Echelon::new(graded_dimension(nvars, n));
        let slice = self.ideal_slice(n)?;
        for col in slice.basis() {
            ech.insert(col);
        }
        for g in extra_generators {
            if g.is_zero() {
                continue;
            }
            let Some(dg) = g.homogeneous_degree() else {
                return Err(Error::InvalidInput(
                    "extra ideal generators must be homogeneous".into(),
                ));
            };
            if dg > n {
                continue; // cannot contribute in degree N
            }
            for mono in monomials_of_degree(nvars, n - dg) {
                let prod = g.mul(&Polynomial::from_terms(
                    nvars,
                    [(mono.0.clone(), Rat::from_integer(1.into()))],
                ));
                ech.insert(&prod.coordinates(n)?);
            }
        }
        let product_in_ideal = ech.contains(&self.d.coordinates(n)?);
        Ok(HillerReport {
            product_in_ideal,
            equals_invariant_ideal: !product_in_ideal,
        })
    }

    /// Matrix of the j-th simple reflection on the degree-m cohomology basis
    /// of Euler classes. Identical to the reflection action on the
    /// simple-root coordinates, by equivariance of the identification.
    pub fn euler_rep(&self, j: usize) -> IntMatrix {
        self.rs.simple_reflection_matrix(j)
    }

    /// Matrix of the i-th simple reflection on the degree-m homology basis
    /// of sphere classes (the reflection for the transposed Cartan matrix).
    pub fn sphere_rep(&self, i: usize) -> IntMatrix {
        let l = self.rs.rank();
        let cartan = self.rs.cartan();
        let mut m = IntMatrix::identity(l);
        for c in 0..l {
            let delta = if c == i { 1 } else { 0 };
            m.set(i, c, delta - cartan[c][i]);
        }
        m
    }

    /// The evaluation pairing between the two bases: P[i][j] = cartan[j][i].
    pub fn pairing_matrix(&self) -> IntMatrix {
        let l = self.rs.rank();
        let cartan = self.rs.cartan();
        let mut m = IntMatrix::identity(l);
        for i in 0..l {
            for j in 0..l {
                m.set(i, j, cartan[j][i]);
            }
        }
        m
    }

    /// Full graded data of the quotient.
    pub fn presentation(&self) -> Result<CoinvariantPresentation> {
        let n = self.rs.num_positive_roots();
        let dimensions: Vec<usize> = self
            .poincare_series()?
            .into_iter()
            .map(|c| c as usize)
            .collect();
        let mut harmonic_basis = Vec::with_capacity(self.weyl.order());
        for i in 0..self.weyl.order() {
            let w = self.weyl.element(i);
            let k = n - w.length();
            // reuse the verified per-degree cache
            let basis = self.harmonic_basis(k)?;
            let pos = self
                .weyl
                .elements_of_length(w.length())
                .iter()
                .position(|&e| e == i)
                .expect("element is in its own length class");
            harmonic_basis.push((i, basis[pos].clone()));
        }
        Ok(CoinvariantPresentation {
            dimensions,
            harmonic_basis,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{act, reynolds};
    use crate::rat::rat;
    use crate::rootsys::Family;
    use rand::{Rng, SeedableRng};

    fn engine(f: Family, l: usize) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::new(f, l).unwrap();
        let w = WeylGroup::enumerate(&rs).unwrap();
        (rs, w)
    }

    #[test]
    fn ideal_slice_dimensions_a2() {
        let (rs, w) = engine(Family::A, 2);
        let coinv = Coinvariants::new(&rs, &w);
        assert_eq!(coinv.ideal_slice(0).unwrap().dim(), 0);
        // dim S² − #{w : l(w) = 2} = 3 − 2 = 1
        assert_eq!(coinv.ideal_slice(2).unwrap().dim(), 1);
        // the ideal saturates right above the number of positive roots
        let n = rs.num_positive_roots();
        for k in [n + 1, n + 2] {
            let slice = coinv.ideal_slice(k).unwrap();
            assert_eq!(slice.dim(), graded_dimension(2, k), "degree {k}");
        }
        assert!(matches!(
            coinv.ideal_slice(n + 3),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let (rs, w) = engine(Family::A, 2);
        let coinv = Coinvariants::new(&rs, &w);
        // invariant times anything is inside
        let inv = reynolds(w.elements(), &Polynomial::parse("g1^2", 2).unwrap());
        let f = inv.mul(&Polynomial::variable(2, 0));
        assert!(coinv.contains(&f).unwrap());
        // the top class stays outside
        assert!(!coinv.contains(coinv.top_class()).unwrap());
        // zero is inside; non-homogeneous input is rejected
        assert!(coinv.contains(&Polynomial::zero(2)).unwrap());
        assert!(coinv
            .contains(&Polynomial::parse("g1 + g1^2", 2).unwrap())
            .is_err());
    }

    #[test]
    fn poincare_series_small_types() {
        for (f, l, expected) in [
            (Family::A, 1, vec![1u64, 1]),
            (Family::A, 2, vec![1, 2, 2, 1]),
            (Family::B, 2, vec![1, 2, 2, 2, 1]),
        ] {
            let (rs, w) = engine(f, l);
            let coinv = Coinvariants::new(&rs, &w);
            let census = coinv.poincare_series().unwrap();
            assert_eq!(census, expected, "{f}{l}");
            // oracle: length census from the enumeration
            assert_eq!(census, w.length_census(), "{f}{l}");
            assert_eq!(census, coinv.poincare_from_degrees().unwrap(), "{f}{l}");
        }
    }

    #[test]
    fn harmonic_basis_examples() {
        let (rs, w) = engine(Family::A, 2);
        let coinv = Coinvariants::new(&rs, &w);
        let n = rs.num_positive_roots();
        // k = N: the single class is d itself
        let top = coinv.harmonic_basis(n).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(&top[0], coinv.top_class());
        // k = 0: one nonzero constant
        let bottom = coinv.harmonic_basis(0).unwrap();
        assert_eq!(bottom.len(), 1);
        assert_eq!(bottom[0], Polynomial::constant(2, rat(6, 1)));
        // k = 1: two independent linear forms
        let lin = coinv.harmonic_basis(1).unwrap();
        assert_eq!(lin.len(), 2);
        let coords: Vec<Vec<Rat>> = lin.iter().map(|p| p.coordinates(1).unwrap()).collect();
        assert_eq!(linalg::rank(&coords), 2);
    }

    #[test]
    fn top_constant_and_coefficient_extraction() {
        let (rs, w) = engine(Family::B, 2);
        let coinv = Coinvariants::new(&rs, &w);
        let c = coinv.top_constant().unwrap();
        assert!(!c.is_zero());
        // random combination of harmonic classes: coefficients recovered
        let n = rs.num_positive_roots();
        let k = 2;
        let classes = coinv.harmonic_basis(k).unwrap();
        let members = w.elements_of_length(n - k);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let lambda: Vec<Rat> = (0..classes.len())
            .map(|_| rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4)))
            .collect();
        let mut f = Polynomial::zero(2);
        for (c, p) in lambda.iter().zip(classes.iter()) {
            f = f.add(&p.scale(c));
        }
        for (idx, &v) in members.iter().enumerate() {
            assert_eq!(coinv.harmonic_coefficient(v, &f).unwrap(), lambda[idx]);
        }
        // extraction annihilates the ideal slice
        let slice = coinv.ideal_slice(k).unwrap();
        for p in slice.polynomials(2) {
            for &v in &members {
                assert!(coinv.harmonic_coefficient(v, &p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn invariant_quotient_series_examples() {
        let (rs, w) = engine(Family::B, 2);
        let coinv = Coinvariants::new(&rs, &w);
        // trivial subgroup: the full series
        let trivial = w.parabolic(&[]);
        assert_eq!(
            coinv.invariant_quotient_series(&trivial).unwrap(),
            coinv.poincare_series().unwrap()
        );
        // full group: one class, in degree zero
        let full = w.parabolic(&[0, 1]);
        let series = coinv.invariant_quotient_series(&full).unwrap();
        assert_eq!(series[0], 1);
        assert!(series[1..].iter().all(|&c| c == 0));
        // first-wall stabilizer: total dimension 8 / 2 = 4
        let sub = w.parabolic(&[0]);
        let series = coinv.invariant_quotient_series(&sub).unwrap();
        assert_eq!(series.iter().sum::<u64>(), 4);
        assert_eq!(series, vec![1, 1, 1, 1, 0]);
    }

    #[test]
    fn hiller_criterion_examples() {
        let (rs, w) = engine(Family::A, 2);
        let coinv = Coinvariants::new(&rs, &w);
        // no extra generators: I = I_W
        let report = coinv.hiller_criterion(&[]).unwrap();
        assert!(!report.product_in_ideal);
        assert!(report.equals_invariant_ideal);
        // adding γ1 absorbs d (d is divisible by γ1)
        let report = coinv
            .hiller_criterion(&[Polynomial::variable(2, 0)])
            .unwrap();
        assert!(report.product_in_ideal);
        assert!(!report.equals_invariant_ideal);
        // adding d itself absorbs d
        let report = coinv
            .hiller_criterion(std::slice::from_ref(coinv.top_class()))
            .unwrap();
        assert!(report.product_in_ideal);
    }

    #[test]
    fn representation_matrices() {
        // rank one: the single Euler class flips sign
        let (rs, w) = engine(Family::A, 1);
        let coinv = Coinvariants::new(&rs, &w);
        assert_eq!(coinv.euler_rep(0).rows(), vec![vec![-1]]);

        let (rs, w) = engine(Family::A, 2);
        let coinv = Coinvariants::new(&rs, &w);
        // column 2 of euler_rep(1): image of τ2 is τ2 + τ1
        let e1 = coinv.euler_rep(0);
        assert_eq!(e1.get(0, 1), 1);
        assert_eq!(e1.get(1, 1), 1);
        // reflections square to the identity
        for (f, l) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let (rs, w) = engine(f, l);
            let coinv = Coinvariants::new(&rs, &w);
            for j in 0..l {
                assert!(coinv.euler_rep(j).mul(&coinv.euler_rep(j)).is_identity());
                assert!(coinv.sphere_rep(j).mul(&coinv.sphere_rep(j)).is_identity());
            }
        }
    }

    #[test]
    fn pairing_is_preserved() {
        for (f, l) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let (rs, w) = engine(f, l);
            let coinv = Coinvariants::new(&rs, &w);
            let p = coinv.pairing_matrix();
            for k in 0..l {
                let lhs = coinv
                    .euler_rep(k)
                    .transpose()
                    .mul(&p)
                    .mul(&coinv.sphere_rep(k));
                assert_eq!(lhs, p, "{f}{l} generator {k}");
            }
        }
    }

    #[test]
    fn ideal_is_stable_under_divided_differences() {
        let (rs, w) = engine(Family::B, 2);
        let coinv = Coinvariants::new(&rs, &w);
        for k in 1..=3usize {
            let slice = coinv.ideal_slice(k).unwrap();
            for p in slice.polynomials(2) {
                for i in 0..rs.rank() {
                    let image = coinv.divided_differences().delta_simple(i, &p).unwrap();
                    assert!(coinv.contains(&image).unwrap(), "degree {k}");
                }
            }
        }
    }

    #[test]
    fn recursive_slice_matches_direct_formula() {
        // direct route: Σ_j S^{k−j} · (invariants of degree j), column-reduced
        let (rs, w) = engine(Family::B, 2);
        let coinv = Coinvariants::new(&rs, &w);
        let nvars = rs.rank();
        for k in 0..=rs.num_positive_roots() {
            let direct = {
                let mut ech = Echelon::new(graded_dimension(nvars, k));
                for j in 1..=k {
                    for inv in coinv.invariant_basis(j).iter() {
                        for mono in monomials_of_degree(nvars, k - j) {
                            let prod = inv.mul(&Polynomial::from_terms(
                                nvars,
                                [(mono.0.clone(), rat(1, 1))],
                            ));
                            ech.insert(&prod.coordinates(k).unwrap());
                        }
                    }
                }
                ech.into_basis()
            };
            let slice = coinv.ideal_slice(k).unwrap();
            assert_eq!(slice.basis(), &direct[..], "degree {k}");
        }
    }

    #[test]
    fn presentation_invariants() {
        let (rs, w) = engine(Family::A, 2);
        let coinv = Coinvariants::new(&rs, &w);
        let pres = coinv.presentation().unwrap();
        assert_eq!(pres.total_dimension(), w.order());
        let census = w.length_census();
        for (k, &dim) in pres.dimensions.iter().enumerate() {
            assert_eq!(dim as u64, census[k]);
        }
        assert_eq!(pres.harmonic_basis.len(), w.order());
        // invariance of the averaged harmonic classes under the full group
        let invariant = reynolds(w.elements(), &pres.harmonic_basis[0].1);
        for e in w.elements() {
            assert_eq!(act(e, &invariant), invariant);
        }
    }
}
