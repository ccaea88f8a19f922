//! Reduced root systems of the classical and exceptional Cartan families,
//! with exact rational geometry.
//!
//! Everything in the dual space is written in the simple-root basis: a root
//! is an integer coordinate vector, the Gram matrix of the simple roots
//! carries the inner product, and every reflection acts by an integer
//! matrix. Long roots are normalized to squared length 2; the overall scale
//! is irrelevant to the reflection group, so it is fixed rather than
//! configurable.
//!
//! Root multiplicities are attachments, never derived: a positive integer
//! per W-orbit of positive roots, supplied uniformly or as a table. When the
//! supplied positive-root list is non-reduced (both α and 2α present, as for
//! custom BC-type data), the weight attached to α is understood to already
//! include any contribution belonging to 2α; index computations skip roots
//! whose half is also a root.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::rat::{parse_rat, rat, rat_int, Rat};

/// Cartan family letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// Parses a combined label such as `"B3"` into family and rank.
pub fn parse_label(s: &str) -> Result<(Family, usize)> {
    let s = s.trim();
    let mut chars = s.chars();
    let family = chars
        .next()
        .and_then(Family::from_char)
        .ok_or_else(|| Error::UnsupportedType(s.to_string()))?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::UnsupportedType(s.to_string()))?;
    Ok((family, rank))
}

/// Per-positive-root multiplicities, constant on W-orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    per_root: Vec<u32>,
    uniform: Option<u32>,
}

impl MultiplicityTable {
    /// Multiplicity of the positive root with the given index.
    pub fn of(&self, root_index: usize) -> u32 {
        self.per_root[root_index]
    }

    /// The common value, when every orbit carries the same one.
    pub fn uniform(&self) -> Option<u32> {
        self.uniform
    }

    /// True when the multiplicities are uniform with value 2, 4 or 8, the
    /// hypothesis under which the coinvariant presentation of the orbit
    /// cohomology applies.
    pub fn coinvariant_regime(&self) -> bool {
        matches!(self.uniform, Some(2) | Some(4) | Some(8))
    }

    pub fn values(&self) -> &[u32] {
        &self.per_root
    }

    pub fn min_value(&self) -> u32 {
        self.per_root.iter().copied().min().unwrap_or(0)
    }
}

/// How multiplicities are supplied by the caller.
#[derive(Clone, Debug)]
pub enum MultiplicitySpec {
    Uniform(u32),
    /// Keys are positive roots in simple-root coordinates; each W-orbit must
    /// be covered by at least one key and all keys in one orbit must agree.
    Table(BTreeMap<Vec<i64>, u32>),
}

/// A reduced (or explicitly supplied, possibly non-reduced) root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: Option<(Family, usize)>,
    rank: usize,
    gram: Vec<Vec<Rat>>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    positive_set: BTreeSet<Vec<i64>>,
    degrees: Option<Vec<usize>>,
    reduced: bool,
    multiplicities: Option<MultiplicityTable>,
}

impl RootSystem {
    /// Builds the root system of the given family and rank.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let (norms, edges) = dynkin_data(family, rank)?;
        let l = rank;
        let mut gram = vec![vec![Rat::zero(); l]; l];
        for (i, n) in norms.iter().enumerate() {
            gram[i][i] = n.clone();
        }
        for &(i, j) in &edges {
            let v = if norms[i] == norms[j] {
                -(&norms[i] / rat_int(2))
            } else {
                -rat_int(1)
            };
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
        let rs = RootSystem::from_parts(
            Some((family, rank)),
            gram,
            None,
            Some(degrees_table(family, rank)),
        )?;
        rs.validate(true)?;
        Ok(rs)
    }

    /// Builds a system from explicit data. When `positive_roots` is None the
    /// positive roots are generated by reflection closure of the simple
    /// roots.
    fn from_parts(
        label: Option<(Family, usize)>,
        gram: Vec<Vec<Rat>>,
        positive_roots: Option<Vec<Vec<i64>>>,
        degrees: Option<Vec<usize>>,
    ) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        for row in &gram {
            if row.len() != rank {
                return Err(Error::InvalidInput("gram matrix must be square".into()));
            }
        }
        let cartan = cartan_from_gram(&gram)?;
        let positive_roots = match positive_roots {
            Some(p) => sort_roots(p),
            None => generate_positive_roots(&cartan)?,
        };
        let positive_set: BTreeSet<Vec<i64>> = positive_roots.iter().cloned().collect();
        let reduced = positive_roots
            .iter()
            .all(|a| !positive_set.contains(&a.iter().map(|x| 2 * x).collect::<Vec<_>>()));
        Ok(RootSystem {
            label,
            rank,
            gram,
            cartan,
            positive_roots,
            positive_set,
            degrees,
            reduced,
            multiplicities: None,
        })
    }

    /// Loads a system from the custom JSON schema:
    ///
    /// ```json
    /// {
    ///   "rank": 2,
    ///   "gram": [["2", "-1"], ["-1", "2"]],
    ///   "positive_roots": [[1, 0], [0, 1], [1, 1]],
    ///   "degrees": [2, 3],
    ///   "multiplicities": {"uniform": 2}
    /// }
    /// ```
    ///
    /// Rationals are `"p/q"` strings; `degrees` and `multiplicities` are
    /// optional (`multiplicities` takes either `"uniform": m` or
    /// `"table": {"<coords csv>": m, ...}`).
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: SystemJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("custom system JSON: {e}")))?;
        if parsed.gram.len() != parsed.rank || parsed.gram.iter().any(|r| r.len() != parsed.rank) {
            return Err(Error::InvalidInput(format!(
                "field 'gram' must be a {0}x{0} matrix",
                parsed.rank
            )));
        }
        let mut gram = Vec::with_capacity(parsed.rank);
        for row in &parsed.gram {
            let mut out = Vec::with_capacity(parsed.rank);
            for entry in row {
                out.push(parse_rat(entry).map_err(|e| {
                    Error::InvalidInput(format!("field 'gram': {e}"))
                })?);
            }
            gram.push(out);
        }
        for root in &parsed.positive_roots {
            if root.len() != parsed.rank {
                return Err(Error::InvalidInput(format!(
                    "field 'positive_roots': entry {root:?} has length {} (rank is {})",
                    root.len(),
                    parsed.rank
                )));
            }
        }
        let mut rs = RootSystem::from_parts(
            None,
            gram,
            Some(parsed.positive_roots),
            parsed.degrees,
        )?;
        rs.validate(false)?;
        if let Some(mults) = parsed.multiplicities {
            let spec = mults.into_spec(rs.rank)?;
            rs.attach_multiplicities(&spec)?;
        }
        Ok(rs)
    }

    /// Checks every structural invariant; `native` additionally checks the
    /// family-specific root count.
    fn validate(&self, native: bool) -> Result<()> {
        // gram symmetric positive definite, via leading principal minors
        for i in 0..self.rank {
            for j in 0..self.rank {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(Error::InvalidInput(
                        "field 'gram': matrix is not symmetric".into(),
                    ));
                }
            }
        }
        if !leading_minors_positive(&self.gram) {
            return Err(Error::InvalidInput(
                "field 'gram': matrix is not positive definite".into(),
            ));
        }
        // cartan shape
        for i in 0..self.rank {
            if self.cartan[i][i] != 2 {
                return Err(Error::Inconsistency("cartan diagonal is not 2".into()));
            }
            for j in 0..self.rank {
                if i != j && self.cartan[i][j] > 0 {
                    return Err(Error::InvalidInput(
                        "field 'gram': off-diagonal Cartan entries must be nonpositive".into(),
                    ));
                }
            }
        }
        // positive roots: nonnegative integer coordinates, simple roots
        // present, no duplicates, closed under simple reflections up to sign
        if self.positive_set.len() != self.positive_roots.len() {
            return Err(Error::InvalidInput(
                "field 'positive_roots': duplicate entries".into(),
            ));
        }
        for a in &self.positive_roots {
            if a.iter().all(|&x| x == 0) || a.iter().any(|&x| x < 0) {
                return Err(Error::InvalidInput(format!(
                    "field 'positive_roots': {a:?} is not a nonzero nonnegative vector"
                )));
            }
        }
        for i in 0..self.rank {
            let mut e = vec![0i64; self.rank];
            e[i] = 1;
            if !self.positive_set.contains(&e) {
                return Err(Error::InvalidInput(format!(
                    "field 'positive_roots': missing simple root {}",
                    i + 1
                )));
            }
        }
        for a in &self.positive_roots {
            for i in 0..self.rank {
                let b = self.simple_reflect_root(i, a);
                if !self.positive_set.contains(&b) && !self.positive_set.contains(&negate(&b)) {
                    return Err(Error::InvalidInput(format!(
                        "field 'positive_roots': not closed under reflections ({a:?} -> {b:?})"
                    )));
                }
            }
        }
        if native {
            let (family, rank) = self.label.expect("native system carries a label");
            let expected = expected_positive_count(family, rank);
            if self.positive_roots.len() != expected {
                return Err(Error::Inconsistency(format!(
                    "{family}{rank}: generated {} positive roots, expected {expected}",
                    self.positive_roots.len()
                )));
            }
        }
        if let Some(degrees) = &self.degrees {
            if degrees.len() != self.rank {
                return Err(Error::InvalidInput(
                    "field 'degrees': length must equal the rank".into(),
                ));
            }
            let sum: usize = degrees.iter().sum();
            if sum != self.positive_roots.len() + self.rank {
                return Err(Error::InvalidInput(format!(
                    "field 'degrees': sum {} must equal N + rank = {}",
                    sum,
                    self.positive_roots.len() + self.rank
                )));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots, usually written N.
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Positive roots α with α/2 not a root. For reduced systems this is all
    /// of them; for non-reduced data it is the count that matches reflection
    /// lengths.
    pub fn num_indivisible_positive_roots(&self) -> usize {
        self.positive_roots
            .iter()
            .filter(|a| !self.half_is_root(a))
            .count()
    }

    /// True when α/2 is also a positive root.
    pub fn half_is_root(&self, a: &[i64]) -> bool {
        if a.iter().any(|&x| x % 2 != 0) {
            return false;
        }
        let half: Vec<i64> = a.iter().map(|&x| x / 2).collect();
        self.positive_set.contains(&half)
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn is_positive_root(&self, a: &[i64]) -> bool {
        self.positive_set.contains(a)
    }

    pub fn is_root(&self, a: &[i64]) -> bool {
        self.positive_set.contains(a) || self.positive_set.contains(&negate(a))
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    /// Cartan matrix `a[i][j] = 2<γ_j, γ_i> / <γ_i, γ_i>`, so that
    /// `s_i(γ_j) = γ_j − a[i][j]·γ_i`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Fundamental invariant degrees, when known (always for the built-in
    /// families; optional for custom data).
    pub fn degrees(&self) -> Option<&[usize]> {
        self.degrees.as_deref()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn label(&self) -> Option<(Family, usize)> {
        self.label
    }

    pub fn name(&self) -> String {
        match self.label {
            Some((f, r)) => format!("{f}{r}"),
            None => format!("custom(rank {})", self.rank),
        }
    }

    pub fn multiplicities(&self) -> Option<&MultiplicityTable> {
        self.multiplicities.as_ref()
    }

    /// `<a, b>` for integer coordinate vectors in the simple-root basis.
    pub fn root_inner(&self, a: &[i64], b: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    acc += &self.gram[i][j] * rat_int(a[i] * b[j]);
                }
            }
        }
        acc
    }

    /// Action of the simple reflection s_i on a coordinate vector, staying
    /// in integers.
    pub fn simple_reflect_root(&self, i: usize, a: &[i64]) -> Vec<i64> {
        let mut out = a.to_vec();
        let c: i64 = (0..self.rank).map(|j| self.cartan[i][j] * a[j]).sum();
        out[i] -= c;
        out
    }

    /// Matrix of s_i acting on simple-root coordinates (columns are images
    /// of basis vectors).
    pub fn simple_reflection_matrix(&self, i: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(self.rank);
        for j in 0..self.rank {
            m.set(i, j, if i == j { 1 - self.cartan[i][j] } else { -self.cartan[i][j] });
        }
        m
    }

    /// Matrix of the reflection in an arbitrary root α (must be a root of
    /// this system).
    pub fn reflection_matrix(&self, alpha: &[i64]) -> Result<IntMatrix> {
        if !self.is_root(alpha) {
            return Err(Error::InvalidInput(format!("{alpha:?} is not a root")));
        }
        let norm = self.root_inner(alpha, alpha);
        let mut m = IntMatrix::identity(self.rank);
        for j in 0..self.rank {
            let mut ej = vec![0i64; self.rank];
            ej[j] = 1;
            let c = rat_int(2) * self.root_inner(&ej, alpha) / norm.clone();
            if !c.is_integer() {
                return Err(Error::InvalidInput(format!(
                    "root pairing of {alpha:?} is not integral"
                )));
            }
            let c: i64 = rat_to_i64(&c)?;
            for k in 0..self.rank {
                let delta = if k == j { 1 } else { 0 };
                m.set(k, j, delta - c * alpha[k]);
            }
        }
        Ok(m)
    }

    /// Reflects the rational coordinate vector `x` in the hyperplane of the
    /// root α: `s_α(x) = x − 2(<x,α>/<α,α>)·α`.
    pub fn reflect(&self, alpha: &[i64], x: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != self.rank {
            return Err(Error::InvalidInput(format!(
                "coordinate vector has length {}, rank is {}",
                x.len(),
                self.rank
            )));
        }
        Ok(self.reflection_matrix(alpha)?.apply_rat(x))
    }

    /// Partition of the positive roots into W-orbits. Returns an orbit id
    /// per positive-root index; ids are assigned in root order.
    pub fn root_orbits(&self) -> Vec<usize> {
        let index: BTreeMap<&Vec<i64>, usize> = self
            .positive_roots
            .iter()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let mut orbit = vec![usize::MAX; self.positive_roots.len()];
        let mut next = 0;
        for start in 0..self.positive_roots.len() {
            if orbit[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            orbit[start] = next;
            while let Some(p) = queue.pop_front() {
                for i in 0..self.rank {
                    let mut b = self.simple_reflect_root(i, &self.positive_roots[p]);
                    if b.iter().any(|&x| x < 0) {
                        b = negate(&b);
                    }
                    let q = index[&b];
                    if orbit[q] == usize::MAX {
                        orbit[q] = next;
                        queue.push_back(q);
                    }
                }
            }
            next += 1;
        }
        orbit
    }

    /// Attaches a multiplicity to every positive root, checking orbit
    /// coverage and constancy.
    pub fn attach_multiplicities(&mut self, spec: &MultiplicitySpec) -> Result<()> {
        let table = match spec {
            MultiplicitySpec::Uniform(m) => {
                if *m < 1 {
                    return Err(Error::InvalidInput("multiplicity must be at least 1".into()));
                }
                MultiplicityTable {
                    per_root: vec![*m; self.positive_roots.len()],
                    uniform: Some(*m),
                }
            }
            MultiplicitySpec::Table(map) => {
                for (root, m) in map {
                    if !self.is_positive_root(root) {
                        return Err(Error::InvalidInput(format!(
                            "multiplicity table key {root:?} is not a positive root"
                        )));
                    }
                    if *m < 1 {
                        return Err(Error::InvalidInput(format!(
                            "multiplicity for {root:?} must be at least 1"
                        )));
                    }
                }
                let orbits = self.root_orbits();
                let num_orbits = orbits.iter().copied().max().map_or(0, |m| m + 1);
                let mut orbit_value: Vec<Option<u32>> = vec![None; num_orbits];
                for (root, m) in map {
                    let idx = self
                        .positive_roots
                        .iter()
                        .position(|r| r == root)
                        .expect("checked above");
                    match orbit_value[orbits[idx]] {
                        None => orbit_value[orbits[idx]] = Some(*m),
                        Some(prev) if prev == *m => {}
                        Some(prev) => {
                            return Err(Error::InvalidInput(format!(
                                "multiplicity table is not constant on the orbit of {root:?} \
                                 ({prev} vs {m})"
                            )));
                        }
                    }
                }
                for (o, v) in orbit_value.iter().enumerate() {
                    if v.is_none() {
                        let rep = orbits.iter().position(|&x| x == o).unwrap();
                        return Err(Error::InvalidInput(format!(
                            "multiplicity table leaves the orbit of {:?} uncovered",
                            self.positive_roots[rep]
                        )));
                    }
                }
                let per_root: Vec<u32> = orbits
                    .iter()
                    .map(|&o| orbit_value[o].expect("covered"))
                    .collect();
                let first = per_root[0];
                let uniform = per_root.iter().all(|&m| m == first).then_some(first);
                MultiplicityTable { per_root, uniform }
            }
        };
        self.multiplicities = Some(table);
        Ok(())
    }

    /// Same system with multiplicities attached (builder form).
    pub fn with_multiplicities(mut self, spec: &MultiplicitySpec) -> Result<Self> {
        self.attach_multiplicities(spec)?;
        Ok(self)
    }

    /// Order of the Weyl group from the classical tables (None for custom
    /// systems).
    pub fn weyl_order_formula(&self) -> Option<u128> {
        let (family, l) = self.label?;
        let fact = |n: usize| -> u128 { (1..=n as u128).product() };
        Some(match family {
            Family::A => fact(l + 1),
            Family::B | Family::C => (1u128 << l) * fact(l),
            Family::D => (1u128 << (l - 1)) * fact(l),
            Family::E => match l {
                6 => 51_840,
                7 => 2_903_040,
                8 => 696_729_600,
                _ => unreachable!(),
            },
            Family::F => 1_152,
            Family::G => 12,
        })
    }
}

fn negate(a: &[i64]) -> Vec<i64> {
    a.iter().map(|&x| -x).collect()
}

fn rat_to_i64(r: &Rat) -> Result<i64> {
    use num_traits::ToPrimitive;
    if !r.is_integer() {
        return Err(Error::Inconsistency(format!("{r} is not an integer")));
    }
    r.numer()
        .to_i64()
        .ok_or_else(|| Error::Inconsistency(format!("{r} overflows i64")))
}

/// Cartan matrix from the Gram matrix; entries must come out integral.
fn cartan_from_gram(gram: &[Vec<Rat>]) -> Result<Vec<Vec<i64>>> {
    let l = gram.len();
    let mut cartan = vec![vec![0i64; l]; l];
    for i in 0..l {
        if !gram[i][i].is_positive() {
            return Err(Error::InvalidInput(format!(
                "field 'gram': <γ_{}, γ_{}> must be positive",
                i + 1,
                i + 1
            )));
        }
        for j in 0..l {
            let c = rat_int(2) * gram[i][j].clone() / gram[i][i].clone();
            if !c.is_integer() {
                return Err(Error::InvalidInput(format!(
                    "field 'gram': Cartan entry a[{}][{}] = {c} is not an integer",
                    i + 1,
                    j + 1
                )));
            }
            cartan[i][j] = rat_to_i64(&c)?;
        }
    }
    Ok(cartan)
}

/// Closure of the simple roots under the simple reflections; returns the
/// positive half, sorted by (height, coordinates).
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let l = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..l {
        let mut e = vec![0i64; l];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(a) = queue.pop_front() {
        for i in 0..l {
            let mut b = a.clone();
            let c: i64 = (0..l).map(|j| cartan[i][j] * a[j]).sum();
            b[i] -= c;
            if seen.insert(b.clone()) {
                queue.push_back(b);
            }
        }
        if seen.len() > 100_000 {
            return Err(Error::InvalidInput(
                "root closure did not terminate; the Gram data is not crystallographic".into(),
            ));
        }
    }
    let positives: Vec<Vec<i64>> = seen
        .into_iter()
        .filter(|a| a.iter().all(|&x| x >= 0))
        .collect();
    Ok(sort_roots(positives))
}

fn sort_roots(mut roots: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    roots.sort_by_key(|a| (a.iter().sum::<i64>(), a.clone()));
    roots
}

fn leading_minors_positive(gram: &[Vec<Rat>]) -> bool {
    let l = gram.len();
    for k in 1..=l {
        // determinant of the leading k x k block by rational elimination
        let mut m: Vec<Vec<Rat>> = (0..k).map(|i| gram[i][..k].to_vec()).collect();
        let mut det = Rat::from_integer(1.into());
        for c in 0..k {
            let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
                return false;
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c].clone();
            for r in c + 1..k {
                if !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[c][c];
                    for j in c..k {
                        let sub = &f * &m[c][j];
                        m[r][j] -= sub;
                    }
                }
            }
        }
        if !det.is_positive() {
            return false;
        }
    }
    true
}

/// Simple-root norms and Dynkin edges (0-based) per family.
fn dynkin_data(family: Family, rank: usize) -> Result<(Vec<Rat>, Vec<(usize, usize)>)> {
    let bad = || Error::UnsupportedType(format!("{family}{rank}"));
    let two = rat_int(2);
    let one = rat_int(1);
    let chain = |l: usize| (0..l - 1).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match family {
        Family::A => {
            if rank < 1 {
                return Err(bad());
            }
            Ok((vec![two; rank], chain(rank)))
        }
        Family::B => {
            if rank < 2 {
                return Err(bad());
            }
            let mut norms = vec![two; rank - 1];
            norms.push(one);
            Ok((norms, chain(rank)))
        }
        Family::C => {
            if rank < 2 {
                return Err(bad());
            }
            let mut norms = vec![one; rank - 1];
            norms.push(two);
            Ok((norms, chain(rank)))
        }
        Family::D => {
            if rank < 3 {
                return Err(bad());
            }
            let mut edges: Vec<(usize, usize)> = (0..rank - 2).map(|i| (i, i + 1)).collect();
            edges.push((rank - 3, rank - 1));
            Ok((vec![two; rank], edges))
        }
        Family::E => {
            if !(6..=8).contains(&rank) {
                return Err(bad());
            }
            let mut edges = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
            if rank >= 7 {
                edges.push((5, 6));
            }
            if rank == 8 {
                edges.push((6, 7));
            }
            Ok((vec![two; rank], edges))
        }
        Family::F => {
            if rank != 4 {
                return Err(bad());
            }
            Ok((vec![two.clone(), two, one.clone(), one], chain(4)))
        }
        Family::G => {
            if rank != 2 {
                return Err(bad());
            }
            Ok((vec![rat(2, 3), two], vec![(0, 1)]))
        }
    }
}

fn expected_positive_count(family: Family, l: usize) -> usize {
    match family {
        Family::A => l * (l + 1) / 2,
        Family::B | Family::C => l * l,
        Family::D => l * (l - 1),
        Family::E => match l {
            6 => 36,
            7 => 63,
            8 => 120,
            _ => unreachable!(),
        },
        Family::F => 24,
        Family::G => 6,
    }
}

fn degrees_table(family: Family, l: usize) -> Vec<usize> {
    let mut d = match family {
        Family::A => (2..=l + 1).collect::<Vec<_>>(),
        Family::B | Family::C => (1..=l).map(|k| 2 * k).collect(),
        Family::D => {
            let mut v: Vec<usize> = (1..l).map(|k| 2 * k).collect();
            v.push(l);
            v
        }
        Family::E => match l {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            _ => unreachable!(),
        },
        Family::F => vec![2, 6, 8, 12],
        Family::G => vec![2, 6],
    };
    d.sort_unstable();
    d
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemJson {
    rank: usize,
    gram: Vec<Vec<String>>,
    positive_roots: Vec<Vec<i64>>,
    #[serde(default)]
    degrees: Option<Vec<usize>>,
    #[serde(default)]
    multiplicities: Option<MultiplicitiesJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MultiplicitiesJson {
    #[serde(default)]
    uniform: Option<u32>,
    #[serde(default)]
    table: Option<BTreeMap<String, u32>>,
}

impl MultiplicitiesJson {
    fn into_spec(self, rank: usize) -> Result<MultiplicitySpec> {
        match (self.uniform, self.table) {
            (Some(m), None) => Ok(MultiplicitySpec::Uniform(m)),
            (None, Some(table)) => {
                let mut map = BTreeMap::new();
                for (key, m) in table {
                    let coords: Vec<i64> = key
                        .split(',')
                        .map(|p| {
                            p.trim().parse().map_err(|_| {
                                Error::InvalidInput(format!(
                                    "field 'multiplicities.table': bad root key {key:?}"
                                ))
                            })
                        })
                        .collect::<Result<_>>()?;
                    if coords.len() != rank {
                        return Err(Error::InvalidInput(format!(
                            "field 'multiplicities.table': key {key:?} has length {} (rank {rank})",
                            coords.len()
                        )));
                    }
                    map.insert(coords, m);
                }
                Ok(MultiplicitySpec::Table(map))
            }
            _ => Err(Error::InvalidInput(
                "field 'multiplicities': give exactly one of 'uniform' or 'table'".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_of(family: Family, rank: usize) -> Vec<Vec<i64>> {
        RootSystem::new(family, rank).unwrap().positive_roots().to_vec()
    }

    #[test]
    fn a1_is_forced() {
        let rs = RootSystem::new(Family::A, 1).unwrap();
        assert_eq!(rs.positive_roots(), &[vec![1]]);
        assert_eq!(rs.num_positive_roots(), 1);
        assert_eq!(rs.degrees(), Some(&[2][..]));
    }

    #[test]
    fn a2_closure() {
        assert_eq!(roots_of(Family::A, 2), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let rs = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(rs.degrees(), Some(&[2, 3][..]));
        assert_eq!(rs.cartan(), &[vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn b2_geometry() {
        let rs = RootSystem::new(Family::B, 2).unwrap();
        assert_eq!(
            rs.positive_roots(),
            &[vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]
        );
        let mut off = vec![rs.cartan()[0][1], rs.cartan()[1][0]];
        off.sort_unstable();
        assert_eq!(off, vec![-2, -1]);
    }

    #[test]
    fn g2_counts_and_degree_identity() {
        let rs = RootSystem::new(Family::G, 2).unwrap();
        assert_eq!(rs.num_positive_roots(), 6);
        assert_eq!(rs.degrees(), Some(&[2, 6][..]));
        let sum: usize = rs.degrees().unwrap().iter().sum();
        assert_eq!(sum, rs.num_positive_roots() + rs.rank());
    }

    #[test]
    fn degree_identity_all_families() {
        for (f, l) in [
            (Family::A, 1),
            (Family::A, 4),
            (Family::B, 2),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 3),
            (Family::D, 4),
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ] {
            let rs = RootSystem::new(f, l).unwrap();
            let sum: usize = rs.degrees().unwrap().iter().sum();
            assert_eq!(sum, rs.num_positive_roots() + l, "{f}{l}");
            assert!(rs.is_reduced());
        }
    }

    #[test]
    fn invalid_pairs_rejected() {
        assert!(RootSystem::new(Family::D, 2).is_err());
        assert!(RootSystem::new(Family::G, 3).is_err());
        assert!(RootSystem::new(Family::F, 5).is_err());
        assert!(RootSystem::new(Family::B, 1).is_err());
        assert!(parse_label("H3").is_err());
        assert!(parse_label("Bx").is_err());
        assert_eq!(parse_label("b3").unwrap(), (Family::B, 3));
    }

    #[test]
    fn reflect_negates_own_root_and_is_involutive() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let g1 = [rat_int(1), rat_int(0)];
        let img = rs.reflect(&[1, 0], &g1).unwrap();
        assert_eq!(img, vec![rat_int(-1), rat_int(0)]);
        // s1(γ2) = γ1 + γ2
        let g2 = [rat_int(0), rat_int(1)];
        assert_eq!(rs.reflect(&[1, 0], &g2).unwrap(), vec![rat_int(1), rat_int(1)]);
        // involution on a random-ish rational point
        let x = [rat(3, 7), rat(-5, 2)];
        let y = rs.reflect(&[1, 1], &x).unwrap();
        assert_eq!(rs.reflect(&[1, 1], &y).unwrap(), x.to_vec());
        // non-roots rejected
        assert!(rs.reflect(&[2, 0], &g1).is_err());
    }

    #[test]
    fn closure_invariant_and_orbits() {
        for (f, l) in [(Family::B, 3), (Family::F, 4), (Family::G, 2)] {
            let rs = RootSystem::new(f, l).unwrap();
            for a in rs.positive_roots() {
                for i in 0..rs.rank() {
                    let b = rs.simple_reflect_root(i, a);
                    assert!(rs.is_root(&b));
                }
            }
            // two root lengths -> two orbits for B3, F4, G2
            let orbits = rs.root_orbits();
            assert_eq!(orbits.iter().copied().max().unwrap() + 1, 2, "{f}{l}");
        }
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        assert!(a3.root_orbits().iter().all(|&o| o == 0));
    }

    #[test]
    fn multiplicity_attachment() {
        let mut rs = RootSystem::new(Family::A, 2).unwrap();
        rs.attach_multiplicities(&MultiplicitySpec::Uniform(8)).unwrap();
        assert!(rs.multiplicities().unwrap().coinvariant_regime());

        let mut b2 = RootSystem::new(Family::B, 2).unwrap();
        b2.attach_multiplicities(&MultiplicitySpec::Uniform(2)).unwrap();
        assert!(b2.multiplicities().unwrap().coinvariant_regime());

        // table covering the single A2 orbit with value 3: accepted, not in regime
        let mut rs = RootSystem::new(Family::A, 2).unwrap();
        let table = BTreeMap::from([(vec![1i64, 0], 3u32)]);
        rs.attach_multiplicities(&MultiplicitySpec::Table(table)).unwrap();
        let t = rs.multiplicities().unwrap();
        assert_eq!(t.uniform(), Some(3));
        assert!(!t.coinvariant_regime());
        assert_eq!(t.values(), &[3, 3, 3]);
    }

    #[test]
    fn multiplicity_errors() {
        let mut b2 = RootSystem::new(Family::B, 2).unwrap();
        // uncovered orbit: only the long-root orbit given
        let table = BTreeMap::from([(vec![1i64, 0], 2u32)]);
        assert!(b2.attach_multiplicities(&MultiplicitySpec::Table(table)).is_err());
        // non-constant on an orbit: (0,1) and (1,1) are both short
        let table = BTreeMap::from([
            (vec![0i64, 1], 2u32),
            (vec![1i64, 1], 5u32),
            (vec![1i64, 0], 2u32),
        ]);
        assert!(b2.attach_multiplicities(&MultiplicitySpec::Table(table)).is_err());
        // m < 1
        assert!(b2.attach_multiplicities(&MultiplicitySpec::Uniform(0)).is_err());
        // non-root key
        let table = BTreeMap::from([(vec![5i64, 5], 2u32)]);
        assert!(b2.attach_multiplicities(&MultiplicitySpec::Table(table)).is_err());
    }

    #[test]
    fn custom_json_round_trip() {
        let text = r#"{
            "rank": 2,
            "gram": [["2", "-1"], ["-1", "2"]],
            "positive_roots": [[1, 0], [0, 1], [1, 1]],
            "degrees": [2, 3],
            "multiplicities": {"uniform": 2}
        }"#;
        let rs = RootSystem::from_json(text).unwrap();
        let builtin = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(rs.cartan(), builtin.cartan());
        assert_eq!(rs.positive_roots(), builtin.positive_roots());
        assert!(rs.multiplicities().unwrap().coinvariant_regime());
    }

    #[test]
    fn custom_json_rejections() {
        // not positive definite
        let bad_gram = r#"{
            "rank": 2,
            "gram": [["2", "-3"], ["-3", "2"]],
            "positive_roots": [[1, 0], [0, 1], [1, 1]]
        }"#;
        let err = RootSystem::from_json(bad_gram).unwrap_err().to_string();
        assert!(err.contains("gram"), "{err}");

        // missing a simple root
        let no_simple = r#"{
            "rank": 2,
            "gram": [["2", "-1"], ["-1", "2"]],
            "positive_roots": [[1, 0], [1, 1]]
        }"#;
        let err = RootSystem::from_json(no_simple).unwrap_err().to_string();
        assert!(err.contains("positive_roots"), "{err}");

        // multiplicity table missing an orbit
        let missing_orbit = r#"{
            "rank": 2,
            "gram": [["2", "-1"], ["-1", "1"]],
            "positive_roots": [[1, 0], [0, 1], [1, 1], [1, 2]],
            "multiplicities": {"table": {"1,0": 2}}
        }"#;
        let err = RootSystem::from_json(missing_orbit).unwrap_err().to_string();
        assert!(err.contains("uncovered"), "{err}");

        // unknown field is a schema violation
        let unknown = r#"{"rank": 1, "gram": [["2"]], "positive_roots": [[1]], "extra": 1}"#;
        assert!(RootSystem::from_json(unknown).is_err());
    }

    #[test]
    fn non_reduced_custom_data() {
        // BC-type rank 1: roots α and 2α
        let text = r#"{
            "rank": 1,
            "gram": [["1"]],
            "positive_roots": [[1], [2]],
            "multiplicities": {"table": {"1": 3, "2": 1}}
        }"#;
        let rs = RootSystem::from_json(text).unwrap();
        assert!(!rs.is_reduced());
        assert_eq!(rs.num_positive_roots(), 2);
        let t = rs.multiplicities().unwrap();
        // two orbits: {α} and {2α}
        assert_eq!(t.values(), &[3, 1]);
        assert_eq!(t.uniform(), None);
    }
}
