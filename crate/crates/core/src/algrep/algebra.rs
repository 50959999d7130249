use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{is_prime, FpMatrix, Subspace};

/// Finite-dimensional associative unital algebra over `F_p`, given by
/// structure constants `b_i b_j = sum_k c[i][j][k] b_k`.
pub struct Algebra {
    p: u32,
    dim: usize,
    table: Vec<u32>,
    unit: Vec<u32>,
    idempotents: Option<Vec<Vec<u32>>>,
    radical: Option<Subspace>,
    generators: Vec<usize>,
    words: Vec<Vec<usize>>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("p", &self.p)
            .field("dim", &self.dim)
            .field("generators", &self.generators)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.dim == other.dim
            && self.table == other.table
            && self.unit == other.unit
            && self.idempotents == other.idempotents
            && self.radical == other.radical
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// `table[i][j]` is the coordinate vector of `b_i b_j`.
    pub fn new(p: u32, dim: usize, table: Vec<Vec<Vec<u32>>>, unit: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimensionMismatch(format!("multiplication table must be {dim}x{dim}x{dim}")));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch(format!("unit must have {dim} coordinates")));
        }
        let flat: Vec<u32> = table.into_iter().flatten().flatten().collect();
        for &x in flat.iter().chain(&unit) {
            if x >= p {
                return Err(Error::EntryOutOfRange { entry: x, p });
            }
        }
        Ok(Self::from_flat(p, dim, flat, unit, None, None))
    }

    fn from_flat(
        p: u32,
        dim: usize,
        table: Vec<u32>,
        unit: Vec<u32>,
        idempotents: Option<Vec<Vec<u32>>>,
        radical: Option<Subspace>,
    ) -> Self {
        let mut a = Self {
            p,
            dim,
            table,
            unit,
            idempotents,
            radical,
            generators: Vec::new(),
            words: Vec::new(),
            opposite: OnceLock::new(),
        };
        let (generators, words) = a.greedy_generators();
        a.generators = generators;
        a.words = words;
        a
    }

    pub fn with_idempotents(mut self, idempotents: Vec<Vec<u32>>) -> Result<Self> {
        for e in &idempotents {
            if e.len() != self.dim {
                return Err(Error::DimensionMismatch("idempotent has wrong length".into()));
            }
            if let Some(&x) = e.iter().find(|&&x| x >= self.p) {
                return Err(Error::EntryOutOfRange { entry: x, p: self.p });
            }
        }
        self.idempotents = Some(idempotents);
        self.opposite = OnceLock::new();
        Ok(self)
    }

    pub fn with_radical(mut self, basis: Vec<Vec<u32>>) -> Result<Self> {
        for v in &basis {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch("radical vector has wrong length".into()));
            }
            if let Some(&x) = v.iter().find(|&&x| x >= self.p) {
                return Err(Error::EntryOutOfRange { entry: x, p: self.p });
            }
        }
        self.radical = Some(Subspace::from_vectors(self.p, self.dim, &basis));
        self.opposite = OnceLock::new();
        Ok(self)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn idempotents(&self) -> Option<&[Vec<u32>]> {
        self.idempotents.as_deref()
    }

    pub fn radical(&self) -> Option<&Subspace> {
        self.radical.as_ref()
    }

    /// Basis indices that generate the algebra (together with the unit).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Words in the generators whose products form a basis of the algebra.
    pub fn word_basis(&self) -> &[Vec<usize>] {
        &self.words
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> u32 {
        self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Product of two elements given by coordinates.
    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let d = self.dim;
        let mut out = vec![0u64; d];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0 {
                    continue;
                }
                let xy = x[i] as u64 * y[j] as u64 % p;
                let row = &self.table[(i * d + j) * d..(i * d + j + 1) * d];
                for (o, &c) in out.iter_mut().zip(row) {
                    *o = (*o + xy * c as u64) % p;
                }
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    /// Matrix of `y -> b_i y` on coordinates; the action of `b_i` on the regular module.
    pub fn left_mult(&self, i: usize) -> FpMatrix {
        let d = self.dim;
        let mut m = FpMatrix::zeros(self.p, d, d);
        for j in 0..d {
            for k in 0..d {
                m.set(k, j, self.c(i, j, k));
            }
        }
        m
    }

    /// Matrix of `y -> y x` on coordinates.
    pub fn right_mult_by(&self, x: &[u32]) -> FpMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        FpMatrix::from_columns(self.p, self.dim, &cols)
    }

    /// `A e` as a subspace of `A`.
    pub fn left_ideal_of(&self, e: &[u32]) -> Subspace {
        self.right_mult_by(e).column_space()
    }

    /// Structure constants with the order of multiplication reversed.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let mut table = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    table[(i * d + j) * d + k] = self.c(j, i, k);
                }
            }
        }
        Self::from_flat(self.p, d, table, self.unit.clone(), self.idempotents.clone(), self.radical.clone())
    }

    /// Shared handle on the opposite algebra, built once.
    pub fn opposite_arc(&self) -> Arc<Algebra> {
        self.opposite.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    /// Greedy choice of algebra generators in basis order, with words spanning the algebra.
    fn greedy_generators(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let mut gens = Vec::new();
        let mut words = self.closure_words(&gens);
        for i in 0..self.dim {
            if words.len() == self.dim {
                break;
            }
            let span = self.span_of_words(&words);
            if !span.contains(&self.basis_vector(i)) {
                gens.push(i);
                words = self.closure_words(&gens);
            }
        }
        (gens, words)
    }

    pub fn word_value(&self, word: &[usize]) -> Vec<u32> {
        word.iter().fold(self.unit.clone(), |acc, &g| self.mul(&acc, &self.basis_vector(g)))
    }

    fn span_of_words(&self, words: &[Vec<usize>]) -> Subspace {
        let vecs: Vec<Vec<u32>> = words.iter().map(|w| self.word_value(w)).collect();
        Subspace::from_vectors(self.p, self.dim, &vecs)
    }

    /// Breadth-first closure of the unit under right multiplication by generators,
    /// keeping only words that enlarge the span.
    fn closure_words(&self, gens: &[usize]) -> Vec<Vec<usize>> {
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut vecs: Vec<Vec<u32>> = Vec::new();
        let mut span = Subspace::zero(self.p, self.dim);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back((Vec::new(), self.unit.clone()));
        while let Some((w, v)) = queue.pop_front() {
            if span.contains(&v) {
                continue;
            }
            vecs.push(v.clone());
            span = Subspace::from_vectors(self.p, self.dim, &vecs);
            for &g in gens {
                let mut w2 = w.clone();
                w2.push(g);
                queue.push_back((w2, self.mul(&v, &self.basis_vector(g))));
            }
            words.push(w);
        }
        words
    }

    /// Checks every structural invariant; an empty list means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let d = self.dim;
        'assoc: for i in 0..d {
            for j in 0..d {
                let bij = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..d {
                    let left = self.mul(&bij, &self.basis_vector(k));
                    let bjk = self.mul(&self.basis_vector(j), &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &bjk);
                    if left != right {
                        failures.push(format!("associativity: (b{i} b{j}) b{k} != b{i} (b{j} b{k})"));
                        break 'assoc;
                    }
                }
            }
        }
        for i in 0..d {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                failures.push(format!("unit: the unit does not act as identity on b{i}"));
                break;
            }
        }
        if let Some(es) = &self.idempotents {
            let mut sum = vec![0u32; d];
            for (s, e) in es.iter().enumerate() {
                for (x, &y) in sum.iter_mut().zip(e) {
                    *x = (*x + y) % self.p;
                }
                for (t, f) in es.iter().enumerate() {
                    let ef = self.mul(e, f);
                    let expected = if s == t { e.clone() } else { vec![0; d] };
                    if ef != expected {
                        failures.push(format!("idempotent orthogonality: e{s} e{t}"));
                    }
                }
            }
            if sum != self.unit {
                failures.push("idempotent sum: the idempotents do not sum to the unit".into());
            }
        }
        if let Some(j) = &self.radical {
            let basis = j.basis_vectors();
            let ideal = basis.iter().all(|v| {
                (0..d).all(|i| {
                    let b = self.basis_vector(i);
                    j.contains(&self.mul(&b, v)) && j.contains(&self.mul(v, &b))
                })
            });
            if !ideal {
                failures.push("radical ideal: the radical is not a two-sided ideal".into());
            }
            if !self.is_nilpotent(j) {
                failures.push("radical nilpotent: J^d != 0".into());
            }
        }
        failures
    }

    fn is_nilpotent(&self, j: &Subspace) -> bool {
        let basis = j.basis_vectors();
        let mut power = j.clone();
        for _ in 0..=self.dim {
            if power.dim() == 0 {
                return true;
            }
            let prods: Vec<Vec<u32>> = basis
                .iter()
                .flat_map(|a| power.basis_vectors().into_iter().map(move |b| (a.clone(), b)))
                .map(|(a, b)| self.mul(&a, &b))
                .collect();
            power = Subspace::from_vectors(self.p, self.dim, &prods);
        }
        power.dim() == 0
    }

    pub fn validated(self) -> Result<Self> {
        let failures = self.validate();
        if failures.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidAlgebra(failures))
        }
    }

    /// The idempotents used for projective covers: the supplied ones, or the unit.
    pub fn cover_idempotents(&self) -> Vec<Vec<u32>> {
        self.idempotents.clone().unwrap_or_else(|| vec![self.unit.clone()])
    }

    /// Transpose of the table, used for serialization.
    pub fn table(&self) -> Vec<Vec<Vec<u32>>> {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|j| self.table[(i * d + j) * d..(i * d + j + 1) * d].to_vec()).collect())
            .collect()
    }
}

/// Commonly used small algebras.
pub mod examples {
    use super::*;

    /// `F_p[x]/(x^n)` with basis `1, x, ..., x^{n-1}` and radical `(x)`.
    pub fn truncated_polynomial(p: u32, n: usize) -> Algebra {
        let mut table = vec![vec![vec![0; n]; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if i + j < n {
                    v[i + j] = 1;
                }
            }
        }
        let mut unit = vec![0; n];
        unit[0] = 1;
        let radical: Vec<Vec<u32>> = (1..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Algebra::new(p, n, table, unit).unwrap().with_radical(radical).unwrap()
    }

    /// Path algebra of `1 -> 2` with basis `e1, e2, a` where `a = e2 a e1`.
    pub fn a2_path(p: u32) -> Algebra {
        let mut table = vec![vec![vec![0; 3]; 3]; 3];
        table[0][0][0] = 1; // e1 e1 = e1
        table[1][1][1] = 1; // e2 e2 = e2
        table[1][2][2] = 1; // e2 a = a
        table[2][0][2] = 1; // a e1 = a
        Algebra::new(p, 3, table, vec![1, 1, 0])
            .unwrap()
            .with_idempotents(vec![vec![1, 0, 0], vec![0, 1, 0]])
            .unwrap()
            .with_radical(vec![vec![0, 0, 1]])
            .unwrap()
    }

    /// `F_p x F_p` with orthogonal idempotents as basis.
    pub fn split_semisimple(p: u32) -> Algebra {
        let mut table = vec![vec![vec![0; 2]; 2]; 2];
        table[0][0][0] = 1;
        table[1][1][1] = 1;
        Algebra::new(p, 2, table, vec![1, 1])
            .unwrap()
            .with_idempotents(vec![vec![1, 0], vec![0, 1]])
            .unwrap()
            .with_radical(Vec::new())
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn dual_numbers_are_valid() {
        let a = truncated_polynomial(2, 2);
        assert!(a.validate().is_empty());
        assert_eq!(a.generators(), &[1]);
        assert_eq!(a.word_basis().len(), 2);
    }

    #[test]
    fn path_algebra_is_valid() {
        let a = a2_path(2);
        assert!(a.validate().is_empty(), "{:?}", a.validate());
        assert_eq!(a.word_basis().len(), 3);
        assert!(split_semisimple(3).validate().is_empty());
    }

    #[test]
    fn broken_associativity_is_reported() {
        // x*x = 1 and x*1 = x but 1*x = 0: not associative (and not unital)
        let table = vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 1], vec![1, 0]]];
        let a = Algebra::new(2, 2, table, vec![1, 0]).unwrap();
        let f = a.validate();
        assert!(f.iter().any(|s| s.starts_with("associativity") || s.starts_with("unit")), "{f:?}");
        let mut table = vec![vec![vec![0; 3]; 3]; 3];
        // b0 unit, b1 b2 = b1, b2 b1 = b2, everything else zero except unit rows
        for i in 0..3 {
            table[0][i][i] = 1;
            table[i][0][i] = 1;
        }
        table[1][2][1] = 1;
        table[2][1][2] = 1;
        table[1][1][1] = 1;
        let a = Algebra::new(2, 3, table, vec![1, 0, 0]).unwrap();
        assert!(a.validate().iter().any(|s| s.starts_with("associativity")));
    }

    #[test]
    fn idempotent_sum_failure() {
        let a = split_semisimple(2).with_idempotents(vec![vec![1, 0]]).unwrap();
        assert!(a.validate().iter().any(|s| s.starts_with("idempotent sum")));
    }

    #[test]
    fn opposite_is_involutive() {
        let a = a2_path(3);
        assert_eq!(a.opposite().opposite(), a);
        assert_ne!(a.opposite(), a);
        let op = a.opposite();
        // in the opposite algebra a*e2 = a
        assert_eq!(op.mul(&[0, 0, 1], &[0, 1, 0]), vec![0, 0, 1]);
    }

    #[test]
    fn non_nilpotent_radical_is_rejected() {
        let a = split_semisimple(2).with_radical(vec![vec![1, 0]]).unwrap();
        assert!(a.validate().iter().any(|s| s.starts_with("radical nilpotent")));
    }
}
