//! Weyl group enumeration: lengths, reduced words, the longest element,
//! and point stabilizers.
//!
//! An element is identified with its integer action matrix on simple-root
//! coordinates; words are certificates, not identities. Enumeration is a
//! breadth-first closure from the identity over the simple reflections,
//! trying generators in increasing index order, so the stored word of every
//! element is the lexicographically smallest among its reduced words and the
//! element order (by length, then word) is deterministic.

use std::collections::{HashMap, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::rat::Rat;
use crate::rootsys::RootSystem;

/// Default ceiling on the number of elements an enumeration may produce.
pub const DEFAULT_ENUMERATION_BOUND: usize = 1_000_000;

/// One group element: action matrix, one reduced word, cached length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: IntMatrix,
    word: Vec<usize>,
    length: usize,
}

impl WeylElement {
    /// Action matrix on simple-root coordinates (columns are images of the
    /// simple roots).
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// The stored reduced word, as 0-based simple-reflection indices.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Image of a linear form given by simple-root coordinates.
    pub fn apply_to_form(&self, coords: &[Rat]) -> Vec<Rat> {
        self.matrix.apply_rat(coords)
    }

    /// Image of a root (integer coordinates).
    pub fn apply_to_root(&self, root: &[i64]) -> Vec<i64> {
        self.matrix.apply_int(root)
    }
}

/// A subgroup given by generating simple reflections and the closed element
/// list (indices into the parent enumeration).
#[derive(Clone, Debug)]
pub struct Subgroup {
    generator_indices: Vec<usize>,
    elements: Vec<usize>,
}

impl Subgroup {
    /// 0-based indices of the generating simple reflections.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    /// Element indices into the parent [`WeylGroup`], sorted in enumeration
    /// order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// The fully enumerated group.
#[derive(Debug)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
    generator_element: Vec<usize>,
    longest: usize,
}

impl WeylGroup {
    /// Enumerates with the default element bound.
    pub fn enumerate(rs: &RootSystem) -> Result<Self> {
        Self::enumerate_bounded(rs, DEFAULT_ENUMERATION_BOUND)
    }

    /// Breadth-first closure from the identity over the simple reflections.
    pub fn enumerate_bounded(rs: &RootSystem, bound: usize) -> Result<Self> {
        let rank = rs.rank();
        let gens: Vec<IntMatrix> = (0..rank).map(|i| rs.simple_reflection_matrix(i)).collect();
        let mut elements = vec![WeylElement {
            matrix: IntMatrix::identity(rank),
            word: Vec::new(),
            length: 0,
        }];
        let mut index = HashMap::new();
        index.insert(elements[0].matrix.clone(), 0);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(cur) = queue.pop_front() {
            for (g, gen) in gens.iter().enumerate() {
                let m = elements[cur].matrix.mul(gen);
                if index.contains_key(&m) {
                    continue;
                }
                if elements.len() >= bound {
                    return Err(Error::BoundExceeded { bound });
                }
                let mut word = elements[cur].word.clone();
                word.push(g);
                let length = word.len();
                index.insert(m.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(WeylElement {
                    matrix: m,
                    word,
                    length,
                });
            }
        }
        let longest = elements
            .iter()
            .enumerate()
            .max_by_key(|(_, e)| e.length)
            .map(|(i, _)| i)
            .expect("group is nonempty");
        let generator_element = (0..rank)
            .map(|g| index[&gens[g]])
            .collect();
        let group = WeylGroup {
            rank,
            elements,
            index,
            generator_element,
            longest,
        };
        // the longest element must send every positive root to a negative one
        let w0 = &group.elements[group.longest];
        if w0.length != rs.num_indivisible_positive_roots()
            || !rs
                .positive_roots()
                .iter()
                .all(|a| is_negative(&w0.apply_to_root(a)))
        {
            return Err(Error::Inconsistency(
                "longest element does not negate the positive roots".into(),
            ));
        }
        Ok(group)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in enumeration order: by length, then by word
    /// lexicographically. Index 0 is the identity.
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    /// Index of the simple reflection s_i.
    pub fn generator(&self, i: usize) -> usize {
        self.generator_element[i]
    }

    pub fn index_of(&self, matrix: &IntMatrix) -> Option<usize> {
        self.index.get(matrix).copied()
    }

    /// Index of the product (left times right).
    pub fn multiply(&self, left: usize, right: usize) -> usize {
        let m = self.elements[left].matrix.mul(&self.elements[right].matrix);
        self.index[&m]
    }

    /// Index of the inverse, via the reversed word.
    pub fn inverse(&self, i: usize) -> usize {
        let mut m = IntMatrix::identity(self.rank);
        for &g in self.elements[i].word.iter().rev() {
            m = m.mul(&self.elements[self.generator_element[g]].matrix);
        }
        self.index[&m]
    }

    /// The longest element w0.
    pub fn longest_element(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    pub fn longest_index(&self) -> usize {
        self.longest
    }

    /// Number of elements of each length, 0 ..= l(w0).
    pub fn length_census(&self) -> Vec<u64> {
        let max = self.elements[self.longest].length;
        let mut census = vec![0u64; max + 1];
        for e in &self.elements {
            census[e.length] += 1;
        }
        census
    }

    /// Indices of the elements of the given length, in enumeration order.
    pub fn elements_of_length(&self, l: usize) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.elements[i].length == l)
            .collect()
    }

    /// All reduced words of the element, sorted lexicographically. This
    /// materializes every word (exponentially many for long elements); use
    /// [`WeylGroup::reduced_word_count`] when only the number is needed.
    pub fn reduced_words(&self, i: usize) -> Vec<Vec<usize>> {
        if self.elements[i].length == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for g in 0..self.rank {
            let shorter = self.multiply(i, self.generator_element[g]);
            if self.elements[shorter].length < self.elements[i].length {
                for mut w in self.reduced_words(shorter) {
                    w.push(g);
                    out.push(w);
                }
            }
        }
        out.sort();
        out
    }

    /// Number of reduced words of the element, by dynamic programming over
    /// right descents (elements are already sorted by length).
    pub fn reduced_word_count(&self, i: usize) -> u128 {
        let mut counts = vec![0u128; self.elements.len()];
        counts[0] = 1;
        for j in 1..self.elements.len() {
            if self.elements[j].length > self.elements[i].length {
                break;
            }
            for g in 0..self.rank {
                let shorter = self.multiply(j, self.generator_element[g]);
                if self.elements[shorter].length < self.elements[j].length {
                    counts[j] += counts[shorter];
                }
            }
        }
        counts[i]
    }

    /// Inversion count: indivisible positive roots sent to negative roots.
    /// Equals the length for every element.
    pub fn inversion_count(&self, rs: &RootSystem, i: usize) -> usize {
        rs.positive_roots()
            .iter()
            .filter(|a| !rs.half_is_root(a))
            .filter(|a| is_negative(&self.elements[i].apply_to_root(a)))
            .count()
    }

    /// Transforms the value vector (γ_1(x), …, γ_l(x)) of a point x into
    /// that of w.x. Values transform by the inverse-transpose of the action
    /// matrix on forms.
    pub fn apply_to_point_values(&self, i: usize, values: &[Rat]) -> Vec<Rat> {
        let inv = self.inverse(i);
        self.elements[inv].matrix.transpose().apply_rat(values)
    }

    /// Closure of a set of simple reflections.
    pub fn parabolic(&self, generator_indices: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = generator_indices.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let mut seen = vec![false; self.elements.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for &g in &gens {
                let next = self.multiply(cur, self.generator_element[g]);
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        let elements: Vec<usize> = (0..self.elements.len()).filter(|&i| seen[i]).collect();
        Subgroup {
            generator_indices: gens,
            elements,
        }
    }

    /// Stabilizer of a closed-chamber point given by its simple-root values
    /// (all must be >= 0): the parabolic subgroup generated by the simple
    /// reflections whose wall contains the point.
    pub fn stabilizer(&self, x0_values: &[Rat]) -> Result<Subgroup> {
        if x0_values.len() != self.rank {
            return Err(Error::InvalidInput(format!(
                "x0 has {} coordinates, rank is {}",
                x0_values.len(),
                self.rank
            )));
        }
        if let Some(j) = x0_values.iter().position(|v| v.is_negative()) {
            return Err(Error::InvalidInput(format!(
                "x0 is outside the closed positive chamber: γ_{}(x0) < 0; \
                 move it into the chamber first",
                j + 1
            )));
        }
        let gens: Vec<usize> = (0..self.rank)
            .filter(|&i| x0_values[i].is_zero())
            .collect();
        let sub = self.parabolic(&gens);
        // every element of the subgroup must fix the point
        for &e in &sub.elements {
            if self.apply_to_point_values(e, x0_values) != x0_values {
                return Err(Error::Inconsistency(
                    "stabilizer candidate moves the point".into(),
                ));
            }
        }
        Ok(sub)
    }
}

fn is_negative(root: &[i64]) -> bool {
    root.iter().all(|&x| x <= 0) && root.iter().any(|&x| x < 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_int, Rat};
    use crate::rootsys::Family;
    use num_traits::Zero;

    fn group(f: Family, l: usize) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::new(f, l).unwrap();
        let w = WeylGroup::enumerate(&rs).unwrap();
        (rs, w)
    }

    #[test]
    fn a1_two_elements() {
        let (_, w) = group(Family::A, 1);
        assert_eq!(w.order(), 2);
        assert_eq!(w.length_census(), vec![1, 1]);
        assert_eq!(w.longest_element().word(), &[0]);
    }

    #[test]
    fn a2_matches_symmetric_group() {
        let (rs, w) = group(Family::A, 2);
        assert_eq!(w.order(), 6);
        // oracle: inversion counts of the 6 permutations of {1,2,3}
        let mut lengths: Vec<usize> = w.elements().iter().map(|e| e.length()).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(w.longest_element().length(), 3);
        // w0 has exactly the two words 121 and 212
        let words = w.reduced_words(w.longest_index());
        assert_eq!(words, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        // length = inversion count for every element
        for i in 0..w.order() {
            assert_eq!(w.inversion_count(&rs, i), w.element(i).length());
        }
    }

    #[test]
    fn b2_signed_permutations() {
        let (rs, w) = group(Family::B, 2);
        assert_eq!(w.order(), 8);
        assert_eq!(w.longest_element().length(), 4);
        assert_eq!(w.length_census(), vec![1, 2, 2, 2, 1]);
        assert_eq!(w.reduced_words(w.longest_index()).len(), 2);
        for i in 0..w.order() {
            assert_eq!(w.inversion_count(&rs, i), w.element(i).length());
        }
    }

    #[test]
    fn reduced_word_count_matches_enumeration() {
        for (f, l) in [(Family::A, 2), (Family::B, 2), (Family::A, 3), (Family::G, 2)] {
            let (_, w) = group(f, l);
            for i in 0..w.order() {
                assert_eq!(
                    w.reduced_word_count(i),
                    w.reduced_words(i).len() as u128,
                    "{f}{l} element {i}"
                );
            }
        }
        // A3 longest element has 16 reduced words
        let (_, w) = group(Family::A, 3);
        assert_eq!(w.reduced_word_count(w.longest_index()), 16);
    }

    #[test]
    fn known_orders() {
        for (f, l, expected) in [
            (Family::A, 3, 24usize),
            (Family::B, 3, 48),
            (Family::C, 3, 48),
            (Family::D, 3, 24),
            (Family::G, 2, 12),
        ] {
            let (rs, w) = group(f, l);
            assert_eq!(w.order(), expected, "{f}{l}");
            assert_eq!(w.order() as u128, rs.weyl_order_formula().unwrap());
        }
    }

    #[test]
    fn bound_is_enforced() {
        let rs = RootSystem::new(Family::A, 3).unwrap();
        let err = WeylGroup::enumerate_bounded(&rs, 10).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { bound: 10 }));
    }

    #[test]
    fn generator_relations() {
        for (f, l) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let (rs, w) = group(f, l);
            for i in 0..l {
                let si = w.element(w.generator(i)).matrix().clone();
                assert!(si.mul(&si).is_identity());
                for j in 0..l {
                    if i == j {
                        continue;
                    }
                    let prod = si.mul(w.element(w.generator(j)).matrix());
                    let order = match rs.cartan()[i][j] * rs.cartan()[j][i] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        n => panic!("unexpected Cartan product {n}"),
                    };
                    assert_eq!(prod.multiplicative_order(10), Some(order));
                }
            }
        }
    }

    #[test]
    fn words_reproduce_matrices_and_lengths_subadditive() {
        for (f, l) in [(Family::A, 2), (Family::B, 2)] {
            let (_, w) = group(f, l);
            for e in w.elements() {
                let mut m = IntMatrix::identity(w.rank());
                for &g in e.word() {
                    m = m.mul(w.element(w.generator(g)).matrix());
                }
                assert_eq!(&m, e.matrix());
            }
            for a in 0..w.order() {
                for b in 0..w.order() {
                    let ab = w.multiply(a, b);
                    assert!(
                        w.element(ab).length()
                            <= w.element(a).length() + w.element(b).length()
                    );
                }
            }
        }
    }

    #[test]
    fn stabilizers() {
        let (_rs, w) = group(Family::B, 2);
        // regular point: trivial stabilizer
        let reg = [rat_int(1), rat_int(2)];
        assert_eq!(w.stabilizer(&reg).unwrap().order(), 1);
        // origin: the whole group
        let zero = [Rat::zero(), Rat::zero()];
        assert_eq!(w.stabilizer(&zero).unwrap().order(), 8);
        // first wall: order-2 subgroup generated by s1; oracle: brute force
        let wall = [Rat::zero(), rat_int(1)];
        let sub = w.stabilizer(&wall).unwrap();
        assert_eq!(sub.order(), 2);
        assert_eq!(sub.generator_indices(), &[0]);
        let brute: Vec<usize> = (0..w.order())
            .filter(|&i| w.apply_to_point_values(i, &wall) == wall)
            .collect();
        assert_eq!(sub.elements(), &brute[..]);
        // orbit-stabilizer product
        for values in [&reg[..], &zero[..], &wall[..]] {
            let sub = w.stabilizer(values).unwrap();
            let orbit: std::collections::BTreeSet<Vec<Rat>> = (0..w.order())
                .map(|i| w.apply_to_point_values(i, values))
                .collect();
            assert_eq!(sub.order() * orbit.len(), w.order());
        }
        // negative coordinate rejected
        assert!(w.stabilizer(&[rat_int(-1), rat_int(1)]).is_err());
    }

    #[test]
    fn inverse_and_point_action() {
        let (_, w) = group(Family::A, 2);
        for i in 0..w.order() {
            let inv = w.inverse(i);
            assert_eq!(w.multiply(i, inv), 0);
            assert_eq!(w.multiply(inv, i), 0);
        }
        // point action is a left action: w.(v.x) = (wv).x
        let x = [rat_int(1), rat_int(5)];
        for a in 0..w.order() {
            for b in 0..w.order() {
                let step = w.apply_to_point_values(a, &w.apply_to_point_values(b, &x));
                let direct = w.apply_to_point_values(w.multiply(a, b), &x);
                assert_eq!(step, direct);
            }
        }
    }
}
