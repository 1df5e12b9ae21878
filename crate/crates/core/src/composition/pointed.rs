// SPDX-License-Identifier: Apache-2.0
//! Compositions of pointed quadratic spaces: `q_i(e_i) = 1` and
//! `e₁ *₃ e₂ = e₃`, with the canonical isometries `x̄ = e b(e,x) − x`, the
//! isomorphism `Δ: C• → ∂C•` and the self-derived composition `S(C•)`.

use super::{similitude_multiplier, Composition};
use crate::error::{Error, Result};
use crate::exactfield::{Matrix, Scalar};
use crate::quadform::similitude_check;
use crate::report::{Check, Checker, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedComposition {
    base: Composition,
    e: [Vec<Scalar>; 3],
}

impl PointedComposition {
    pub fn new(base: Composition, e1: Vec<Scalar>, e2: Vec<Scalar>, e3: Vec<Scalar>) -> Result<Self> {
        base.require_composition()?;
        let e = [e1, e2, e3];
        for (i, v) in e.iter().enumerate() {
            base.q(i + 1).check_vector(v)?;
            if !base.q(i + 1).eval(v).is_one() {
                return Err(Error::NotPointed(format!("q{}(e{}) ≠ 1", i + 1, i + 1)));
            }
        }
        if base.mul(&e[0], &e[1]) != e[2] {
            return Err(Error::NotPointed("e1 *3 e2 ≠ e3".into()));
        }
        Ok(PointedComposition { base, e })
    }

    /// Points at `e₁`, `e₂` and `e₃ = e₁ *₃ e₂`.
    pub fn from_points(base: Composition, e1: Vec<Scalar>, e2: Vec<Scalar>) -> Result<Self> {
        let e3 = base.mul(&e1, &e2);
        Self::new(base, e1, e2, e3)
    }

    pub fn base(&self) -> &Composition {
        &self.base
    }

    /// `e_i` for `i ∈ {1, 2, 3}`.
    pub fn point(&self, i: usize) -> &[Scalar] {
        &self.e[i - 1]
    }

    /// `x ↦ x̄ = e_i b_i(e_i, x) − x` on `V_i`.
    pub fn bar_matrix(&self, i: usize) -> Matrix {
        let q = self.base.q(i);
        let n = self.base.dim();
        q.tensor(self.point(i), self.point(i))
            .sub(&Matrix::identity(q.field(), n))
    }

    pub fn bar(&self, i: usize, x: &[Scalar]) -> Vec<Scalar> {
        let q = self.base.q(i);
        let e = self.point(i);
        let b = q.bilinear(e, x);
        e.iter().zip(x).map(|(a, y)| a * &b - y).collect()
    }

    /// `∂C• = ((V₂,q₂,e₂), (V₃,q₃,e₃), (V₁,q₁,e₁), *₁)`.
    pub fn derive(&self) -> Result<PointedComposition> {
        let d = self.base.derive()?;
        Self::new(d, self.e[1].clone(), self.e[2].clone(), self.e[0].clone())
    }

    /// `Δ₁(x₁) = e₃ *₂ x̄₁`, `Δ₂(x₂) = e₁ *₃ x̄₂`, `Δ₃(x₃) = e₂ *₁ x̄₃`.
    pub fn delta(&self) -> [Matrix; 3] {
        let c = &self.base;
        let c1 = c.derive_unchecked();
        let c2 = c1.derive_unchecked();
        [
            c2.left_mul(self.point(3)).mul(&self.bar_matrix(1)),
            c.left_mul(self.point(1)).mul(&self.bar_matrix(2)),
            c1.left_mul(self.point(2)).mul(&self.bar_matrix(3)),
        ]
    }

    /// `S(C•)` on `(V₃, q₃, e₃)` thrice, `x ⊛₃ y = (e₂ *₁ x̄) *₃ (ȳ *₂ e₁)`.
    pub fn s_composition(&self) -> Result<PointedComposition> {
        let c = &self.base;
        let c2 = c.derive_unchecked().derive_unchecked();
        let d3 = &self.delta()[2];
        let right = c2.right_mul(self.point(1)).mul(&self.bar_matrix(3));
        let q3 = c.q(3).clone();
        let s = Composition::from_basis_products(q3.clone(), q3.clone(), q3, |i, j| {
            c.mul(&d3.col(i), &right.col(j))
        })?;
        let e3 = self.e[2].clone();
        Self::new(s, e3.clone(), e3.clone(), e3)
    }
}

/// Outcome of [`pointed_suite`].
#[derive(Clone, Debug)]
pub struct PointedReport {
    pub report: Report,
    pub delta: [Matrix; 3],
    pub s: PointedComposition,
}

fn linear(name: &str, n: usize, f: &dyn Fn(&[Scalar]) -> (Vec<Scalar>, Vec<Scalar>), unit: &dyn Fn(usize) -> Vec<Scalar>) -> Check {
    let mut ch = Checker::new(name);
    for i in 0..n {
        let (l, r) = f(&unit(i));
        ch.case(|| vec![format!("x=e{i}")], l, r);
    }
    ch.finish()
}

fn bilinear(
    name: &str,
    n: usize,
    f: &dyn Fn(&[Scalar], &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>),
    unit: &dyn Fn(usize) -> Vec<Scalar>,
) -> Check {
    let mut ch = Checker::new(name);
    for i in 0..n {
        for j in 0..n {
            let (l, r) = f(&unit(i), &unit(j));
            ch.case(|| vec![format!("x=e{i}"), format!("y=e{j}")], l, r);
        }
    }
    ch.finish()
}

/// The eight-by-three family of identities relating bars and units.
fn pointed_identity_checks(p: &PointedComposition) -> Report {
    let c = &p.base;
    let c1 = c.derive_unchecked();
    let c2 = c1.derive_unchecked();
    let n = c.dim();
    let unit = |i: usize| c.unit(i);
    let m3 = |x: &[Scalar], y: &[Scalar]| c.mul(x, y);
    let m1 = |x: &[Scalar], y: &[Scalar]| c1.mul(x, y);
    let m2 = |x: &[Scalar], y: &[Scalar]| c2.mul(x, y);
    let b = |i: usize, x: &[Scalar]| p.bar(i, x);
    let (e1, e2, e3) = (p.point(1), p.point(2), p.point(3));
    let mut r = Report::new();

    type Lin<'a> = (&'static str, Box<dyn Fn(&[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) + 'a>);
    type Bil<'a> = (&'static str, Box<dyn Fn(&[Scalar], &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) + 'a>);
    let lin: Vec<Lin> = vec![
        ("bar(e1*3x2) = e1*3bar(x2)", Box::new(|x| (b(3, &m3(e1, x)), m3(e1, &b(2, x))))),
        ("bar(x1*3e2) = bar(x1)*3e2", Box::new(|x| (b(3, &m3(x, e2)), m3(&b(1, x), e2)))),
        ("bar(e2*1x3) = e2*1bar(x3)", Box::new(|x| (b(1, &m1(e2, x)), m1(e2, &b(3, x))))),
        ("bar(x2*1e3) = bar(x2)*1e3", Box::new(|x| (b(1, &m1(x, e3)), m1(&b(2, x), e3)))),
        ("bar(e3*2x1) = e3*2bar(x1)", Box::new(|x| (b(2, &m2(e3, x)), m2(e3, &b(1, x))))),
        ("bar(x3*2e1) = bar(x3)*2e1", Box::new(|x| (b(2, &m2(x, e1)), m2(&b(3, x), e1)))),
        ("e2*1(e1*3(e3*2x1)) = bar(x1)", Box::new(|x| (m1(e2, &m3(e1, &m2(e3, x))), b(1, x)))),
        ("bar(x1) = ((x1*3e2)*2e1)*1e3", Box::new(|x| (b(1, x), m1(&m2(&m3(x, e2), e1), e3)))),
        ("e3*2(e2*1(e1*3x2)) = bar(x2)", Box::new(|x| (m2(e3, &m1(e2, &m3(e1, x))), b(2, x)))),
        ("bar(x2) = ((x2*1e3)*3e2)*2e1", Box::new(|x| (b(2, x), m2(&m3(&m1(x, e3), e2), e1)))),
        ("e1*3(e3*2(e2*1x3)) = bar(x3)", Box::new(|x| (m3(e1, &m2(e3, &m1(e2, x))), b(3, x)))),
        ("bar(x3) = ((x3*2e1)*1e3)*3e2", Box::new(|x| (b(3, x), m3(&m1(&m2(x, e1), e3), e2)))),
    ];
    // In each bilinear identity `x` is the first variable named.
    let bil: Vec<Bil> = vec![
        ("e1*3(x3*2x1) = bar(x1)*3(x3*2e1)", Box::new(|x1, x3| (m3(e1, &m2(x3, x1)), m3(&b(1, x1), &m2(x3, e1))))),
        ("(x1*3x2)*2e1 = (e1*3x2)*2bar(x1)", Box::new(|x1, x2| (m2(&m3(x1, x2), e1), m2(&m3(e1, x2), &b(1, x1))))),
        ("e2*1(x1*3x2) = bar(x2)*1(x1*3e2)", Box::new(|x2, x1| (m1(e2, &m3(x1, x2)), m1(&b(2, x2), &m3(x1, e2))))),
        ("(x2*1x3)*3e2 = (e2*1x3)*3bar(x2)", Box::new(|x2, x3| (m3(&m1(x2, x3), e2), m3(&m1(e2, x3), &b(2, x2))))),
        ("e3*2(x2*1x3) = bar(x3)*2(x2*1e3)", Box::new(|x3, x2| (m2(e3, &m1(x2, x3)), m2(&b(3, x3), &m1(x2, e3))))),
        ("(x3*2x1)*1e3 = (e3*2x1)*1bar(x3)", Box::new(|x3, x1| (m1(&m2(x3, x1), e3), m1(&m2(e3, x1), &b(3, x3))))),
        ("bar(x1*3x2) = (x2*1e3)*3(e3*2x1)", Box::new(|x1, x2| (b(3, &m3(x1, x2)), m3(&m1(x2, e3), &m2(e3, x1))))),
        (
            "bar(x1*3x2) = ((e3*2bar(x1))*1(e1*3bar(x2)))*3e2",
            Box::new(|x1, x2| (b(3, &m3(x1, x2)), m3(&m1(&m2(e3, &b(1, x1)), &m3(e1, &b(2, x2))), e2))),
        ),
        ("bar(x2*1x3) = (x3*2e1)*1(e1*3x2)", Box::new(|x2, x3| (b(1, &m1(x2, x3)), m1(&m2(x3, e1), &m3(e1, x2))))),
        (
            "bar(x2*1x3) = ((e1*3bar(x2))*2(e2*1bar(x3)))*1e3",
            Box::new(|x2, x3| (b(1, &m1(x2, x3)), m1(&m2(&m3(e1, &b(2, x2)), &m1(e2, &b(3, x3))), e3))),
        ),
        ("bar(x3*2x1) = (x1*3e2)*2(e2*1x3)", Box::new(|x3, x1| (b(2, &m2(x3, x1)), m2(&m3(x1, e2), &m1(e2, x3))))),
        (
            "bar(x3*2x1) = ((e2*1bar(x3))*3(e3*2bar(x1)))*2e1",
            Box::new(|x3, x1| (b(2, &m2(x3, x1)), m2(&m3(&m1(e2, &b(3, x3)), &m2(e3, &b(1, x1))), e1))),
        ),
    ];
    for (name, f) in &lin[..6] {
        r.push(linear(name, n, f.as_ref(), &unit));
    }
    for (name, f) in &bil[..6] {
        r.push(bilinear(name, n, f.as_ref(), &unit));
    }
    for (name, f) in &lin[6..] {
        r.push(linear(name, n, f.as_ref(), &unit));
    }
    for (name, f) in &bil[6..] {
        r.push(bilinear(name, n, f.as_ref(), &unit));
    }
    r
}

/// Builds `Δ` and `S(C•)` and certifies: `Δ: C• → ∂C•` is an isomorphism
/// of pointed compositions, `(Δ₃, Δ₂⁻¹, Id): S(C•) → C•` is an
/// isomorphism, `∂S(C•) = S(C•)`, and the 24 bar/unit identities.
pub fn pointed_suite(p: &PointedComposition) -> Result<PointedReport> {
    let c = &p.base;
    let f = c.field();
    let one = [f.one(), f.one(), f.one()];
    let dc = c.derive_unchecked();
    let delta = p.delta();
    let mut rep = Report::new();

    let mut iso = Checker::new("Δ: C• → ∂C• has multiplier (1,1,1)");
    let lam = similitude_multiplier(c, &dc, &delta);
    iso.assert(|| vec![format!("{lam:?}")], lam.as_ref() == Some(&one));
    rep.push(iso.finish());

    let mut isom = Checker::new("μ(Δ_i) = 1");
    for i in 0..3 {
        let mu = similitude_check(c.q(i + 1), dc.q(i + 1), &delta[i]);
        isom.assert(|| vec![format!("i={}", i + 1)], mu.is_some_and(|m| m.is_one()));
    }
    rep.push(isom.finish());

    let mut pts = Checker::new("Δ1(e1) = e2, Δ2(e2) = e3, Δ3(e3) = e1");
    for i in 0..3 {
        pts.case(
            || vec![format!("i={}", i + 1)],
            delta[i].mul_vec(p.point(i + 1)),
            p.point((i + 1) % 3 + 1).to_vec(),
        );
    }
    rep.push(pts.finish());

    let s = p.s_composition()?;
    let mut sv = Checker::new("S(C•) is a composition");
    for ch in s.base.verify().checks {
        sv.case(|| vec![ch.identity.clone()], ch.failures, 0);
    }
    rep.push(sv.finish());

    let mut siso = Checker::new("(Δ3, Δ2⁻¹, Id): S(C•) → C• has multiplier (1,1,1)");
    let g = [delta[2].clone(), delta[1].inverse()?, Matrix::identity(f, c.dim())];
    let lam = similitude_multiplier(&s.base, c, &g);
    siso.assert(|| vec![format!("{lam:?}")], lam.as_ref() == Some(&one));
    rep.push(siso.finish());

    let mut fixed = Checker::new("∂S(C•) = S(C•)");
    let ds = s.base.derive_unchecked();
    fixed.case(Vec::new, ds.tensor().to_vec(), s.base.tensor().to_vec());
    rep.push(fixed.finish());

    rep.extend(pointed_identity_checks(p));
    Ok(PointedReport { report: rep, delta, s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compalg::make_split;
    use crate::exactfield::FieldSpec;

    #[test]
    fn split_algebras_pointed_at_unit() {
        for f in FieldSpec::defaults() {
            for n in [2, 4, 8] {
                let a = make_split(n, f).unwrap();
                let e = a.unit().unwrap().to_vec();
                let p = PointedComposition::new(a.composition().clone(), e.clone(), e.clone(), e).unwrap();
                let r = pointed_suite(&p).unwrap();
                assert_eq!(r.report.checks.len(), 6 + 24);
                assert!(r.report.pass(), "{f} n={n}: {:?}", r.report.first_failure());
                assert!(r.s.base().derive_unchecked() == *r.s.base());
            }
        }
    }

    #[test]
    fn derived_pointed_composition_is_pointed() {
        let f = FieldSpec::Prime(3);
        let a = make_split(8, f).unwrap();
        let e = a.unit().unwrap().to_vec();
        let p = PointedComposition::new(a.composition().clone(), e.clone(), e.clone(), e).unwrap();
        let d = p.derive().unwrap();
        assert!(pointed_suite(&d).unwrap().report.pass());
    }

    #[test]
    fn points_are_validated() {
        let f = FieldSpec::Rationals;
        let a = make_split(4, f).unwrap();
        let c = a.composition().clone();
        let e = a.unit().unwrap().to_vec();
        let two = e.iter().map(|x| x * &f.int(2)).collect::<Vec<_>>();
        assert!(matches!(
            PointedComposition::new(c.clone(), two, e.clone(), e.clone()),
            Err(Error::NotPointed(_))
        ));
        // u = E₁₂ − E₂₁ has q(u) = 1 and u ≠ e.
        let u = vec![f.zero(), f.one(), -f.one(), f.zero()];
        assert!(matches!(
            PointedComposition::new(c.clone(), u.clone(), e.clone(), e.clone()),
            Err(Error::NotPointed(_))
        ));
        let p = PointedComposition::from_points(c, u.clone(), u).unwrap();
        assert!(pointed_suite(&p).unwrap().report.pass());
    }
}
