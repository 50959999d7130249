//! Small windows of objects: all modules up to a dimension bound up to
//! isomorphism, and comma objects assembled from two module windows.

use std::sync::Arc;

use rand::Rng;

use crate::algrep::{Algebra, ModCat, Module};
use crate::category::{enumerate_elements, AbelianCategory};
use crate::comma::{CommaCat, CommaObject};
use crate::exactla::FpMatrix;
use crate::search::{nth_vector, SearchConfig};

/// Objects found and whether the list is exhaustive up to isomorphism.
#[derive(Clone, Debug)]
pub struct Window<O> {
    pub objects: Vec<O>,
    pub exhaustive: bool,
}

/// Expresses each basis vector of the algebra in the word basis.
fn word_coordinates(alg: &Algebra) -> Vec<Vec<u32>> {
    let p = alg.p();
    let words = alg.word_basis();
    let cols: Vec<Vec<u32>> = words.iter().map(|w| alg.word_value(w)).collect();
    let m = FpMatrix::from_columns(p, alg.dim(), &cols);
    (0..alg.dim())
        .map(|i| m.solve(&alg.basis_vector(i)).ok().flatten().expect("word values span the algebra"))
        .collect()
}

/// The module whose generators act by `gens`, if the extension through the
/// word basis satisfies the module axioms.
fn module_from_generators(alg: &Arc<Algebra>, coords: &[Vec<u32>], d: usize, gens: &[FpMatrix]) -> Option<Module> {
    let p = alg.p();
    let index = |g: usize| alg.generators().iter().position(|&h| h == g).expect("word letters are generators");
    let word_actions: Vec<FpMatrix> = alg
        .word_basis()
        .iter()
        .map(|w| w.iter().fold(FpMatrix::identity(p, d), |acc, &g| acc.mul(&gens[index(g)])))
        .collect();
    let actions = coords
        .iter()
        .map(|c| {
            let mut a = FpMatrix::zeros(p, d, d);
            for (w, &x) in word_actions.iter().zip(c) {
                if x != 0 {
                    a.add_scaled(w, x);
                }
            }
            a
        })
        .collect();
    Module::new(alg.clone(), d, actions).ok()
}

/// Modules of dimension at most `max_dim`, one per isomorphism class.
/// Each dimension examines at most `budget` generator tuples; past that a
/// seeded sample is taken and the result is flagged non-exhaustive.
pub fn enumerate_window(algebra: &Arc<Algebra>, max_dim: usize, cfg: &SearchConfig) -> Window<Module> {
    let cat = ModCat::new(algebra.clone());
    let p = algebra.p();
    let coords = word_coordinates(algebra);
    let g = algebra.generators().len();
    let mut objects = vec![cat.zero_object()];
    let mut exhaustive = true;
    for d in 1..=max_dim {
        let k = g * d * d;
        let candidates: Vec<Vec<u32>> = match cfg.exhaustive_count(p, k) {
            Some(n) => (0..n).map(|i| nth_vector(p, k, i)).collect(),
            None => {
                exhaustive = false;
                let mut rng = cfg.rng();
                (0..cfg.budget).map(|_| (0..k).map(|_| rng.gen_range(0..p)).collect()).collect()
            }
        };
        let mut found = Vec::new();
        for v in candidates {
            let gens: Vec<FpMatrix> = v
                .chunks(d * d)
                .map(|c| FpMatrix::new(p, d, d, c.to_vec()).expect("chunk has d*d entries"))
                .collect();
            if let Some(m) = module_from_generators(algebra, &coords, d, &gens) {
                found.push(m);
            }
        }
        let (reps, exact) = cat.dedup_isomorphic(found, cfg);
        exhaustive &= exact;
        objects.extend(reps);
    }
    Window { objects, exhaustive }
}

/// Comma objects `(X, Y, phi)` over the given module windows, one per
/// isomorphism class found. `phi` runs over `Hom(T(Y), X)`, sampled past the budget.
pub fn comma_window(comma: &CommaCat, xs: &[Module], ys: &[Module], cfg: &SearchConfig) -> Window<CommaObject> {
    let r = comma.r();
    let mut found = Vec::new();
    let mut exhaustive = true;
    for y in ys {
        let ty = comma.apply_t(y);
        for x in xs {
            let hom = r.hom(&ty.module, x);
            let (elems, exact) = enumerate_elements(comma.p(), &hom, cfg);
            exhaustive &= exact;
            for phi in elems {
                found.push(comma.object_with_image(x.clone(), y.clone(), ty.clone(), phi.matrix));
            }
        }
    }
    let (objects, exact) = comma.dedup_isomorphic(found, cfg);
    Window { objects, exhaustive: exhaustive && exact }
}

/// Keeps the objects satisfying `keep`, at most `limit` of them, in order.
pub fn restrict<O: Clone>(objs: &[O], limit: usize, keep: impl Fn(&O) -> bool) -> Vec<O> {
    objs.iter().filter(|o| keep(o)).take(limit).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algrep::algebra::examples::*;
    use crate::algrep::{Bimodule, TensorFunctor};

    #[test]
    fn dual_numbers_up_to_dimension_two() {
        let a = Arc::new(truncated_polynomial(2, 2));
        let w = enumerate_window(&a, 2, &SearchConfig::default());
        assert!(w.exhaustive);
        let dims: Vec<usize> = w.objects.iter().map(|m| m.dim()).collect();
        assert_eq!(dims, vec![0, 1, 2, 2]);
        assert_eq!(enumerate_window(&a, 0, &SearchConfig::default()).objects.len(), 1);
    }

    #[test]
    fn semisimple_simples() {
        let a = Arc::new(split_semisimple(2));
        let w = enumerate_window(&a, 1, &SearchConfig::default());
        assert_eq!(w.objects.len(), 3);
        assert_eq!(w.objects.iter().filter(|m| m.dim() == 1).count(), 2);
    }

    #[test]
    fn path_algebra_indecomposables_and_sums() {
        let a = Arc::new(a2_path(2));
        let w = enumerate_window(&a, 2, &SearchConfig::default());
        // S1, S2, P1, S1+S1, S1+S2, S2+S2
        assert_eq!(w.objects.iter().map(|m| m.dim()).collect::<Vec<_>>(), vec![0, 1, 1, 2, 2, 2, 2]);
    }

    #[test]
    fn budget_caps_enumeration() {
        let a = Arc::new(truncated_polynomial(2, 2));
        let w = enumerate_window(&a, 3, &SearchConfig::new(16, 0));
        assert!(!w.exhaustive);
        assert!(w.objects.iter().all(|m| m.validate().is_empty()));
    }

    #[test]
    fn comma_objects_from_small_windows() {
        let a = Arc::new(truncated_polynomial(2, 2));
        let cat = ModCat::new(a.clone());
        let comma = CommaCat::new(TensorFunctor::new(Bimodule::regular(a.clone())), cat.clone(), cat).unwrap();
        let mods = enumerate_window(&a, 1, &SearchConfig::default()).objects;
        let w = comma_window(&comma, &mods, &mods, &SearchConfig::default());
        // (0,0), (k,0), (0,k), (k,k,0), (k,k,id)
        assert_eq!(w.objects.len(), 5);
        assert!(w.exhaustive);
    }
}
