// SPDX-License-Identifier: Apache-2.0
//! Searches for isotropic vectors and represented values.
//!
//! Vectors are enumerated by support: all coordinates but the last range
//! over a finite candidate set and the last is obtained by solving a
//! quadratic equation exactly. Over `F_p` supports of size at most three
//! suffice for isotropy (Chevalley–Warning). Over Q the search is bounded
//! by a height and a work budget; the local-global invariants decide
//! beforehand whether a solution exists, so a fruitless search on a
//! solvable instance is reported as [`Error::SearchExhausted`].

use super::{classify, QuadForm};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar, EXHAUSTIVE_BOUND};

/// Default coordinate height for searches over Q.
pub const DEFAULT_HEIGHT: i64 = 25;

/// Bounds for searches over Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest absolute value of an enumerated integer coordinate.
    pub height: i64,
    /// Maximum number of quadratic solves per search.
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            height: DEFAULT_HEIGHT,
            budget: 2_000_000,
        }
    }
}

/// A root of `a t² + b t + d`.
pub(crate) fn solve_quadratic(a: &Scalar, b: &Scalar, d: &Scalar) -> Option<Scalar> {
    let field = a.field();
    if a.is_zero() {
        if b.is_zero() {
            return d.is_zero().then(|| field.one());
        }
        return Some(-(d / b));
    }
    if field.is_char2() {
        return field
            .elements()
            .expect("char 2 fields are finite")
            .into_iter()
            .find(|t| (a * t * t + b * t + d).is_zero());
    }
    let disc = b * b - field.int(4) * a * d;
    let r = disc.is_square().ok()??;
    let two_a = field.int(2) * a;
    let t1 = (&r - b) / two_a.clone();
    let t2 = (-r - b) / two_a;
    Some(std::cmp::min_by(t1, t2, |x, y| x.canonical_cmp(y)))
}

fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..s).collect();
    if s > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..s).rev().find(|&i| cur[i] < n - s + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..s {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Walks every assignment of `free` coordinates from `cands`.
fn for_each_assignment(
    cands: &[Scalar],
    free: usize,
    f: &mut dyn FnMut(&[Scalar]) -> bool,
) -> bool {
    let mut idx = vec![0usize; free];
    let mut vals: Vec<Scalar> = idx.iter().map(|&i| cands[i].clone()).collect();
    loop {
        if f(&vals) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == free {
                return false;
            }
            idx[k] += 1;
            if idx[k] < cands.len() {
                vals[k] = cands[idx[k]].clone();
                break;
            }
            idx[k] = 0;
            vals[k] = cands[0].clone();
            k += 1;
        }
    }
}

/// Searches supports of size `1..=max_support` for `x` with `q(x) = target`.
///
/// `leading` lists the allowed values of the first support coordinate and
/// `middle` those of the remaining free coordinates.
fn support_search(
    q: &QuadForm,
    target: &Scalar,
    max_support: usize,
    leading: &[Scalar],
    middle: &[Scalar],
    budget: &mut u64,
) -> Option<Vec<Scalar>> {
    let field = q.field();
    let n = q.dim();
    for s in 1..=max_support.min(n) {
        for sub in subsets(n, s) {
            let last = sub[s - 1];
            let a = q.upper().get(last, last).clone();
            let mut found = None;
            let mut run = |head: &[Scalar]| -> bool {
                if *budget == 0 {
                    return true;
                }
                *budget -= 1;
                let mut x = field.vec_zero(n);
                for (k, &i) in sub[..s - 1].iter().enumerate() {
                    x[i] = head[k].clone();
                }
                let base = q.eval(&x);
                let b = q.bilinear(&x, &field.unit_vec(n, last));
                let Some(t) = solve_quadratic(&a, &b, &(base - target)) else {
                    return false;
                };
                x[last] = t;
                if target.is_zero() && x.iter().all(Scalar::is_zero) {
                    return false;
                }
                found = Some(x);
                true
            };
            if s == 1 {
                run(&[]);
            } else {
                if leading.is_empty() {
                    continue;
                }
                let free = s - 2;
                let mut wrapped = |rest: &[Scalar]| -> bool {
                    for l in leading {
                        let mut head = Vec::with_capacity(s - 1);
                        head.push(l.clone());
                        head.extend_from_slice(rest);
                        if run(&head) {
                            return true;
                        }
                    }
                    false
                };
                for_each_assignment(middle, free, &mut wrapped);
            }
            if found.is_some() || *budget == 0 {
                return found;
            }
        }
    }
    None
}

fn exhaustive(q: &QuadForm, target: &Scalar) -> Option<Vec<Scalar>> {
    let field = q.field();
    let p = field.characteristic();
    let n = q.dim();
    let total = p.checked_pow(n as u32)?;
    if total > 1_000_000 {
        return None;
    }
    (1..total).find_map(|code| {
        let mut c = code;
        let x: Vec<Scalar> = (0..n)
            .map(|_| {
                let d = c % p;
                c /= p;
                field.int(d as i64)
            })
            .collect();
        (q.eval(&x) == *target).then_some(x)
    })
}

fn heights(max: i64) -> Vec<i64> {
    let mut hs: Vec<i64> = [1, 2, 3, 5, 10].into_iter().filter(|&h| h < max).collect();
    hs.push(max.max(1));
    hs
}

fn int_range(field: FieldSpec, h: i64, nonzero: bool) -> Vec<Scalar> {
    (-h..=h)
        .filter(|&k| !(nonzero && k == 0))
        .map(|k| field.int(k))
        .collect()
}

fn check_finite(field: FieldSpec) -> Result<()> {
    let p = field.characteristic();
    if p > EXHAUSTIVE_BOUND {
        return Err(Error::FieldTooLarge {
            p,
            bound: EXHAUSTIVE_BOUND,
        });
    }
    Ok(())
}

/// A nonzero isotropic vector, or `None` when `q` is anisotropic.
pub fn isotropic_vector(q: &QuadForm, cfg: &SearchConfig) -> Result<Option<Vec<Scalar>>> {
    let field = q.field();
    let zero = field.zero();
    match field {
        FieldSpec::Prime(_) => {
            check_finite(field)?;
            let all = field.elements().expect("finite");
            let mut budget = u64::MAX;
            Ok(support_search(q, &zero, 3, &[field.one()], &all, &mut budget))
        }
        FieldSpec::Rationals => {
            if !classify::rational_isotropic(q) {
                return Ok(None);
            }
            let mut budget = cfg.budget;
            for h in heights(cfg.height) {
                let mid = int_range(field, h, false);
                if let Some(x) = support_search(q, &zero, q.dim(), &[field.one()], &mid, &mut budget) {
                    return Ok(Some(x));
                }
                if budget == 0 {
                    break;
                }
            }
            Err(Error::SearchExhausted(format!(
                "isotropic vector of height at most {}",
                cfg.height
            )))
        }
    }
}

/// A vector `x` with `q(x) = c`, or `None` when `c` is not represented.
pub fn represent(q: &QuadForm, c: &Scalar, cfg: &SearchConfig) -> Result<Option<Vec<Scalar>>> {
    let field = q.field();
    if c.is_zero() {
        return isotropic_vector(q, cfg);
    }
    match field {
        FieldSpec::Prime(_) => {
            check_finite(field)?;
            let all = field.elements().expect("finite");
            let nonzero: Vec<Scalar> = all.iter().filter(|s| !s.is_zero()).cloned().collect();
            let mut budget = u64::MAX;
            if let Some(x) = support_search(q, c, 3, &nonzero, &all, &mut budget) {
                return Ok(Some(x));
            }
            Ok(exhaustive(q, c))
        }
        FieldSpec::Rationals => {
            let probe = q.orthogonal_sum(&QuadForm::diagonal(field, &[-c])?)?;
            if !classify::rational_isotropic(&probe) {
                return Ok(None);
            }
            let mut budget = cfg.budget;
            for h in heights(cfg.height) {
                let mid = int_range(field, h, false);
                let lead = int_range(field, h, true);
                if let Some(x) = support_search(q, c, q.dim(), &lead, &mid, &mut budget) {
                    return Ok(Some(x));
                }
                if budget == 0 {
                    break;
                }
            }
            Err(Error::SearchExhausted(format!(
                "vector of value {c} with height at most {}",
                cfg.height
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(5, 3).len(), 10);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn isotropic_sum_of_squares_mod_five() {
        let f = FieldSpec::Prime(5);
        let q = QuadForm::diagonal(f, &[f.one(), f.one()]).unwrap();
        let x = isotropic_vector(&q, &SearchConfig::default()).unwrap().unwrap();
        assert!(q.eval(&x).is_zero());
        assert_eq!(x, vec![f.int(1), f.int(2)]);
    }

    #[test]
    fn rational_isotropy_needing_four_coordinates() {
        let f = FieldSpec::Rationals;
        let q = QuadForm::diagonal(f, &[f.int(1), f.int(1), f.int(1), f.int(-3)]).unwrap();
        let x = isotropic_vector(&q, &SearchConfig::default()).unwrap().unwrap();
        assert!(q.eval(&x).is_zero());
        let pos = QuadForm::diagonal(f, &[f.int(1), f.int(1), f.int(1)]).unwrap();
        assert_eq!(isotropic_vector(&pos, &SearchConfig::default()).unwrap(), None);
    }

    #[test]
    fn represented_values() {
        let f = FieldSpec::Rationals;
        let q = QuadForm::diagonal(f, &[f.int(1), f.int(1)]).unwrap();
        let x = represent(&q, &f.int(5), &SearchConfig::default()).unwrap().unwrap();
        assert_eq!(q.eval(&x), f.int(5));
        assert_eq!(represent(&q, &f.int(3), &SearchConfig::default()).unwrap(), None);
        let f2 = FieldSpec::Prime(2);
        let h = QuadForm::hyperbolic(f2, 1);
        let x = represent(&h, &f2.one(), &SearchConfig::default()).unwrap().unwrap();
        assert!(h.eval(&x).is_one());
    }
}
