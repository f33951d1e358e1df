//! Twisted polynomial spaces, TGRS/ETGRS generator matrices, the explicit
//! parity-check matrix of the TGRS code, and the dual polynomial basis.
//!
//! Basis ordering is fixed: generator row i evaluates x^i, with the twisted
//! term eta*x^{k-1+t} attached to row h, so matrices are bit-reproducible.

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::grs::{u_vector, EvaluationSet};
use crate::gf::{Felt, Field};
use crate::linalg::{MatrixGF, VectorGF};

/// The tuple (n, k, t, h, eta) defining a TGRS/ETGRS instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistParams {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub h: usize,
    pub eta: Felt,
}

impl TwistParams {
    /// Checks 0 <= h <= k-1 < k-1+t < n <= q and eta != 0; `extended`
    /// additionally requires h > 0.
    pub fn validate(&self, ctx: &Field, extended: bool) -> Result<()> {
        let TwistParams { n, k, t, h, eta } = *self;
        if k == 0 {
            return Err(Error::InvalidParameter("k >= 1 required".into()));
        }
        if h > k - 1 {
            return Err(Error::InvalidParameter(format!(
                "hook h = {h} exceeds k-1 = {}",
                k - 1
            )));
        }
        if t == 0 {
            return Err(Error::InvalidParameter("twist t >= 1 required".into()));
        }
        if k - 1 + t >= n {
            return Err(Error::InvalidParameter(format!(
                "k-1+t = {} must be < n = {n}",
                k - 1 + t
            )));
        }
        if n > ctx.q() {
            return Err(Error::InvalidParameter(format!(
                "n = {n} exceeds field size q = {}",
                ctx.q()
            )));
        }
        if eta.is_zero() || eta.index() >= ctx.q() {
            return Err(Error::InvalidParameter(
                "eta must be a nonzero field element".into(),
            ));
        }
        if extended && h == 0 {
            return Err(Error::InvalidParameter(
                "h > 0 required for extended code".into(),
            ));
        }
        Ok(())
    }
}

/// A twisted polynomial: coefficients a_0..a_{k-1} plus the implied term
/// eta * a_h * x^{k-1+t}.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedPoly {
    pub coeffs: Vec<Felt>,
}

impl TwistedPoly {
    pub fn new(coeffs: Vec<Felt>, tp: &TwistParams) -> Result<TwistedPoly> {
        if coeffs.len() != tp.k {
            return Err(Error::DimensionMismatch(format!(
                "twisted polynomial needs exactly k = {} coefficients",
                tp.k
            )));
        }
        Ok(TwistedPoly { coeffs })
    }

    pub fn eval(&self, ctx: &Field, tp: &TwistParams, x: Felt) -> Felt {
        let mut acc = Felt::ZERO;
        let mut p = Felt::ONE;
        for &c in &self.coeffs {
            acc = ctx.add(acc, ctx.mul(c, p));
            p = ctx.mul(p, x);
        }
        let hook = self.coeffs[tp.h];
        if !hook.is_zero() {
            let top = ctx.mul(ctx.mul(tp.eta, hook), ctx.pow(x, (tp.k - 1 + tp.t) as u64));
            acc = ctx.add(acc, top);
        }
        acc
    }
}

fn check_v(es: &EvaluationSet, v: &VectorGF) -> Result<()> {
    if v.ctx() != es.ctx() {
        return Err(Error::FieldMismatch);
    }
    if v.len() != es.n() {
        return Err(Error::DimensionMismatch(format!(
            "multiplier length {} vs n = {}",
            v.len(),
            es.n()
        )));
    }
    if v.as_slice().iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidParameter("zero multiplier".into()));
    }
    Ok(())
}

fn check_instance(tp: &TwistParams, es: &EvaluationSet, v: &VectorGF, extended: bool) -> Result<()> {
    tp.validate(es.ctx(), extended)?;
    if es.n() != tp.n {
        return Err(Error::DimensionMismatch(format!(
            "evaluation set has {} points, params say n = {}",
            es.n(),
            tp.n
        )));
    }
    check_v(es, v)
}

/// k x n evaluation matrix of the twisted monomial basis.
pub fn tgrs_generator_matrix(
    tp: &TwistParams,
    es: &EvaluationSet,
    v: &VectorGF,
) -> Result<MatrixGF> {
    check_instance(tp, es, v, false)?;
    let ctx = es.ctx().clone();
    let mut m = MatrixGF::zeros(ctx.clone(), tp.k, tp.n);
    for (j, (&a, &vj)) in es.alpha().iter().zip(v.as_slice()).enumerate() {
        let twist = ctx.mul(tp.eta, ctx.pow(a, (tp.k - 1 + tp.t) as u64));
        let mut p = Felt::ONE;
        for i in 0..tp.k {
            let mut val = p;
            if i == tp.h {
                val = ctx.add(val, twist);
            }
            m.set(i, j, ctx.mul(vj, val));
            p = ctx.mul(p, a);
        }
    }
    Ok(m)
}

/// k x (n+1) matrix; the extra coordinate carries the hook coefficient, so the
/// last column is 1 in row h and 0 elsewhere.
pub fn etgrs_generator_matrix(
    tp: &TwistParams,
    es: &EvaluationSet,
    v: &VectorGF,
) -> Result<MatrixGF> {
    check_instance(tp, es, v, true)?;
    let base = tgrs_generator_matrix(tp, es, v)?;
    let ctx = es.ctx().clone();
    let mut m = MatrixGF::zeros(ctx, tp.k, tp.n + 1);
    for i in 0..tp.k {
        for j in 0..tp.n {
            m.set(i, j, base.get(i, j));
        }
        m.set(i, tp.n, if i == tp.h { Felt::ONE } else { Felt::ZERO });
    }
    Ok(m)
}

pub fn tgrs_code(tp: &TwistParams, es: &EvaluationSet, v: &VectorGF) -> Result<LinearCode> {
    Ok(LinearCode::from_generator(tgrs_generator_matrix(tp, es, v)?))
}

pub fn etgrs_code(tp: &TwistParams, es: &EvaluationSet, v: &VectorGF) -> Result<LinearCode> {
    Ok(LinearCode::from_generator(etgrs_generator_matrix(tp, es, v)?))
}

/// L_m = sum_l u_l alpha_l^{n-1+m}.
pub fn compute_lm(es: &EvaluationSet, m: u64) -> Result<Felt> {
    let u = u_vector(es)?;
    Ok(lm_with_u(es, &u, m))
}

fn lm_with_u(es: &EvaluationSet, u: &VectorGF, m: u64) -> Felt {
    let ctx = es.ctx();
    let e = (es.n() - 1) as u64 + m;
    es.alpha()
        .iter()
        .zip(u.as_slice())
        .fold(Felt::ZERO, |acc, (&a, &uj)| {
            ctx.add(acc, ctx.mul(uj, ctx.pow(a, e)))
        })
}

/// Coefficients c_0..c_count with c_0 = 1 and c_m = L_m - sum_{j<m} c_j L_{m-j}.
/// They cancel the power sums L_d layer by layer: for 1 <= d <= count,
/// L_d - sum_{m=1}^{d} c_m L_{d-m} = 0, which is exactly what the hook row of
/// the parity-check matrix needs. (For count <= 1 they reduce to c_1 = L_1.)
fn hook_coeffs(es: &EvaluationSet, u: &VectorGF, count: usize) -> Vec<Felt> {
    let ctx = es.ctx();
    let mut c = vec![Felt::ONE];
    for m in 1..=count {
        let mut cm = lm_with_u(es, u, m as u64);
        for (j, &cj) in c.iter().enumerate().skip(1) {
            cm = ctx.sub(cm, ctx.mul(cj, lm_with_u(es, u, (m - j) as u64)));
        }
        c.push(cm);
    }
    c
}

/// L~ = sum_{m=1}^{k-h-1} c_m L_{k+t-h-1-m} - eta^{-1} (1 + eta L_{k+t-h-1}).
pub fn compute_tilde_l(tp: &TwistParams, es: &EvaluationSet) -> Result<Felt> {
    tp.validate(es.ctx(), false)?;
    let u = u_vector(es)?;
    let c = hook_coeffs(es, &u, tp.k - tp.h - 1);
    Ok(tilde_l_with_u(tp, es, &u, &c))
}

fn tilde_l_with_u(tp: &TwistParams, es: &EvaluationSet, u: &VectorGF, c: &[Felt]) -> Felt {
    let ctx = es.ctx();
    let mut sum = Felt::ZERO;
    // empty when k - h - 1 == 0
    for m in 1..=(tp.k).saturating_sub(tp.h + 1) {
        let b = lm_with_u(es, u, (tp.k + tp.t - tp.h - 1 - m) as u64);
        sum = ctx.add(sum, ctx.mul(c[m], b));
    }
    let l_top = lm_with_u(es, u, (tp.k + tp.t - tp.h - 1) as u64);
    let eta_inv = ctx.inv(tp.eta).expect("eta is nonzero");
    let tail = ctx.mul(eta_inv, ctx.add(Felt::ONE, ctx.mul(tp.eta, l_top)));
    ctx.sub(sum, tail)
}

/// The (n-k) x n parity-check matrix of the TGRS code. Column j stacks
/// (u_j/v_j) alpha_j^i for i < n-k-t, then the L~-row, then the t-1 rows
/// alpha_j^{n-k-t+i} - L_i alpha_j^{n-k-t}.
pub fn tgrs_parity_check(tp: &TwistParams, es: &EvaluationSet, v: &VectorGF) -> Result<MatrixGF> {
    check_instance(tp, es, v, false)?;
    let ctx = es.ctx().clone();
    let (n, k, t, h) = (tp.n, tp.k, tp.t, tp.h);
    let u = u_vector(es)?;
    let cs = hook_coeffs(es, &u, k - h - 1);
    let tilde_l = tilde_l_with_u(tp, es, &u, &cs);
    let lms: Vec<Felt> = (0..=(k + t) as u64)
        .map(|m| lm_with_u(es, &u, m))
        .collect();
    let s = n - k - t; // degree of the reduction point x^{n-k-t}
    let mut m = MatrixGF::zeros(ctx.clone(), n - k, n);
    for (j, (&a, &vj)) in es.alpha().iter().zip(v.as_slice()).enumerate() {
        let w = ctx.div(u.as_slice()[j], vj)?;
        let mut p = Felt::ONE;
        for i in 0..s {
            m.set(i, j, ctx.mul(w, p));
            p = ctx.mul(p, a);
        }
        // the L~ row
        let mut val = ctx.add(
            ctx.mul(tilde_l, ctx.pow(a, s as u64)),
            ctx.pow(a, (n - h - 1) as u64),
        );
        for mm in 1..=k.saturating_sub(h + 1) {
            val = ctx.sub(val, ctx.mul(cs[mm], ctx.pow(a, (n - h - 1 - mm) as u64)));
        }
        m.set(s, j, ctx.mul(w, val));
        for i in 1..t {
            let val = ctx.sub(
                ctx.pow(a, (s + i) as u64),
                ctx.mul(lms[i], ctx.pow(a, s as u64)),
            );
            m.set(s + i, j, ctx.mul(w, val));
        }
    }
    Ok(m)
}

/// The t special polynomials of the dual twisted space, plus the constants
/// they are built from. Coefficient vectors are ascending, length n.
#[derive(Clone, Debug)]
pub struct DualPolyBasis {
    pub lm: Vec<Felt>,
    pub hook_coeffs: Vec<Felt>,
    pub tilde_l: Felt,
    pub hpolys: Vec<Vec<Felt>>,
}

pub fn dual_poly_basis(tp: &TwistParams, es: &EvaluationSet) -> Result<DualPolyBasis> {
    tp.validate(es.ctx(), false)?;
    if es.n() != tp.n {
        return Err(Error::DimensionMismatch("evaluation set length".into()));
    }
    let ctx = es.ctx().clone();
    let (n, k, t, h) = (tp.n, tp.k, tp.t, tp.h);
    let u = u_vector(es)?;
    let lm: Vec<Felt> = (0..=(k + t) as u64)
        .map(|m| lm_with_u(es, &u, m))
        .collect();
    let cs = hook_coeffs(es, &u, k - h - 1);
    let tilde_l = tilde_l_with_u(tp, es, &u, &cs);
    let s = n - k - t;
    let mut hpolys = Vec::with_capacity(t);
    // h_{n-k-t}: x^{n-(h+1)} + L~ x^{n-k-t} - sum c_m x^{n-(h+1)-m}
    let mut h0 = vec![Felt::ZERO; n];
    h0[n - h - 1] = ctx.add(h0[n - h - 1], Felt::ONE);
    h0[s] = ctx.add(h0[s], tilde_l);
    for m in 1..=k.saturating_sub(h + 1) {
        h0[n - h - 1 - m] = ctx.sub(h0[n - h - 1 - m], cs[m]);
    }
    hpolys.push(h0);
    for j in 1..t {
        let mut hj = vec![Felt::ZERO; n];
        hj[s + j] = ctx.add(hj[s + j], Felt::ONE);
        hj[s] = ctx.sub(hj[s], lm[j]);
        hpolys.push(hj);
    }
    Ok(DualPolyBasis { lm, hook_coeffs: cs, tilde_l, hpolys })
}

fn eval_coeffs(ctx: &Field, coeffs: &[Felt], x: Felt) -> Felt {
    coeffs.iter().rev().fold(Felt::ZERO, |acc, &c| {
        ctx.add(ctx.mul(acc, x), c)
    })
}

/// Dual of the TGRS code (v = 1) built from the dual polynomial basis:
/// monomials x^0..x^{n-k-t-1} plus the t special polynomials, each evaluated
/// at alpha and scaled by u.
pub fn dual_code_from_basis(tp: &TwistParams, es: &EvaluationSet) -> Result<LinearCode> {
    let basis = dual_poly_basis(tp, es)?;
    let ctx = es.ctx().clone();
    let (n, k, t) = (tp.n, tp.k, tp.t);
    let u = u_vector(es)?;
    let s = n - k - t;
    let mut rows = Vec::with_capacity(n - k);
    for i in 0..s {
        let row: Vec<Felt> = es
            .alpha()
            .iter()
            .zip(u.as_slice())
            .map(|(&a, &uj)| ctx.mul(uj, ctx.pow(a, i as u64)))
            .collect();
        rows.push(row);
    }
    for hp in &basis.hpolys {
        let row: Vec<Felt> = es
            .alpha()
            .iter()
            .zip(u.as_slice())
            .map(|(&a, &uj)| ctx.mul(uj, eval_coeffs(&ctx, hp, a)))
            .collect();
        rows.push(row);
    }
    Ok(LinearCode::from_generator(MatrixGF::from_rows(ctx, rows)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::DEFAULT_DISTANCE_CAP;
    use crate::gf::FieldCtx;
    use crate::grs::{all_ones, power_sum_la_bruteforce};

    fn gf(s: &str) -> Field {
        FieldCtx::parse(s).unwrap()
    }

    fn gf5_instance() -> (Field, TwistParams, EvaluationSet, VectorGF) {
        let f = gf("5");
        let tp = TwistParams { n: 5, k: 2, t: 2, h: 1, eta: Felt(1) };
        let es = EvaluationSet::first_n(f.clone(), 5).unwrap();
        let v = all_ones(&f, 5);
        (f, tp, es, v)
    }

    #[test]
    fn eval_twisted_examples() {
        let (f, tp, _, _) = gf5_instance();
        let constant = TwistedPoly::new(vec![Felt(1), Felt(0)], &tp).unwrap();
        for x in f.elements() {
            assert_eq!(constant.eval(&f, &tp, x), Felt(1));
        }
        // f(x) = x + x^3; f(4) = 68 = 3 mod 5
        let p = TwistedPoly::new(vec![Felt(0), Felt(1)], &tp).unwrap();
        assert_eq!(p.eval(&f, &tp, Felt(4)), Felt(3));
        let zero = TwistedPoly::new(vec![Felt(0), Felt(0)], &tp).unwrap();
        for x in f.elements() {
            assert_eq!(zero.eval(&f, &tp, x), Felt(0));
        }
    }

    #[test]
    fn tgrs_generator_gf5() {
        let (_, tp, es, v) = gf5_instance();
        let g = tgrs_generator_matrix(&tp, &es, &v).unwrap();
        assert_eq!(
            g.row_encodings(),
            vec![vec![1, 1, 1, 1, 1], vec![0, 2, 0, 0, 3]]
        );
        let c = tgrs_code(&tp, &es, &v).unwrap();
        assert_eq!(c.k(), 2);
        // non-MDS: weight-2 codeword exists
        let d = c.min_distance_exhaustive(DEFAULT_DISTANCE_CAP).unwrap();
        assert_eq!(d.weight, 2);
    }

    #[test]
    fn zero_eta_rejected() {
        let (f, mut tp, ..) = gf5_instance();
        tp.eta = Felt(0);
        assert!(tp.validate(&f, false).is_err());
    }

    #[test]
    fn etgrs_generator_and_puncture() {
        let (_, tp, es, v) = gf5_instance();
        let g = etgrs_generator_matrix(&tp, &es, &v).unwrap();
        assert_eq!(
            g.row_encodings(),
            vec![vec![1, 1, 1, 1, 1, 0], vec![0, 2, 0, 0, 3, 1]]
        );
        let ext = etgrs_code(&tp, &es, &v).unwrap();
        assert_eq!(ext.k(), 2);
        let punctured = ext.puncture(&[tp.n]).unwrap();
        let base = tgrs_code(&tp, &es, &v).unwrap();
        assert!(punctured.same_code(&base).unwrap());
    }

    #[test]
    fn etgrs_rejects_zero_hook() {
        let f = gf("7");
        let tp = TwistParams { n: 6, k: 3, t: 2, h: 0, eta: Felt(1) };
        let es = EvaluationSet::first_n(f.clone(), 6).unwrap();
        assert!(etgrs_generator_matrix(&tp, &es, &all_ones(&f, 6)).is_err());
        assert!(tgrs_generator_matrix(&tp, &es, &all_ones(&f, 6)).is_ok());
    }

    #[test]
    fn lm_cross_checks_with_power_sums() {
        // L_m = -L_A(n-1+m) when alpha spans A.
        let f = gf("7");
        let es = EvaluationSet::from_encodings(f.clone(), &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(compute_lm(&es, 0).unwrap(), Felt(1)); // -L_A(|A|-1) = 1
        assert_eq!(compute_lm(&es, 1).unwrap(), Felt(1)); // sum alpha = 15 = 1
        for m in 0..=6u64 {
            let direct = compute_lm(&es, m).unwrap();
            let via_la =
                f.neg(power_sum_la_bruteforce(&f, es.alpha(), (es.n() - 1) as u64 + m).unwrap());
            assert_eq!(direct, via_la, "m={m}");
        }
    }

    #[test]
    fn tilde_l_empty_sum_and_eta_dependence() {
        let f = gf("7");
        let es = EvaluationSet::first_n(f.clone(), 6).unwrap();
        // h = k-1: empty summation leaves -eta^{-1}(1 + eta L_t)
        let tp = TwistParams { n: 6, k: 3, t: 2, h: 2, eta: Felt(1) };
        let lt = compute_lm(&es, tp.t as u64).unwrap();
        let expect = f.neg(f.add(Felt::ONE, lt));
        assert_eq!(compute_tilde_l(&tp, &es).unwrap(), expect);

        let tp2 = TwistParams { eta: Felt(2), ..tp };
        assert_ne!(
            compute_tilde_l(&tp, &es).unwrap(),
            compute_tilde_l(&tp2, &es).unwrap()
        );
    }

    #[test]
    fn gf5_tilde_l_closed_form() {
        let (f, tp, es, _) = gf5_instance();
        // k-h-1 = 0, so L~ = -(1 + L_{k+t-h-1}) = -(1 + L_2)
        let l2 = compute_lm(&es, 2).unwrap();
        assert_eq!(compute_tilde_l(&tp, &es).unwrap(), f.neg(f.add(Felt::ONE, l2)));
    }

    #[test]
    fn parity_check_gf5_instance() {
        let (_, tp, es, v) = gf5_instance();
        let g = tgrs_generator_matrix(&tp, &es, &v).unwrap();
        let hmat = tgrs_parity_check(&tp, &es, &v).unwrap();
        assert!(hmat.mul(&g.transpose()).unwrap().is_zero());
        assert_eq!(hmat.rank(), 3);
        assert!(hmat.rowspace_equal(&g.nullspace_basis()).unwrap());
    }

    #[test]
    fn parity_check_with_random_v() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for spec in ["7", "2^3", "3^2", "11"] {
            let f = gf(spec);
            for _ in 0..8 {
                let q = f.q();
                let n = 5 + (rand::Rng::random_range(&mut rng, 0..q.saturating_sub(4).min(4)));
                let n = n.min(q);
                let es = EvaluationSet::random(f.clone(), n, &mut rng).unwrap();
                // pick a valid (k, t, h)
                let k = rand::Rng::random_range(&mut rng, 1..n.saturating_sub(1));
                let t_max = n - k; // k-1+t < n
                let t = rand::Rng::random_range(&mut rng, 1..=t_max.max(1)).min(t_max.max(1));
                if k - 1 + t >= n {
                    continue;
                }
                let h = rand::Rng::random_range(&mut rng, 0..k);
                let eta = Felt(rand::Rng::random_range(&mut rng, 1..q as u64) as u16);
                let tp = TwistParams { n, k, t, h, eta };
                if tp.validate(&f, false).is_err() {
                    continue;
                }
                let vvals: Vec<u64> = (0..n)
                    .map(|_| rand::Rng::random_range(&mut rng, 1..q as u64))
                    .collect();
                let v = VectorGF::from_encodings(f.clone(), &vvals).unwrap();
                let g = tgrs_generator_matrix(&tp, &es, &v).unwrap();
                let hmat = tgrs_parity_check(&tp, &es, &v).unwrap();
                assert!(
                    hmat.mul(&g.transpose()).unwrap().is_zero(),
                    "H G^T != 0 for {tp:?} over GF({spec})"
                );
                assert_eq!(hmat.rank(), n - k);
                assert!(hmat.rowspace_equal(&g.nullspace_basis()).unwrap());
            }
        }
    }

    #[test]
    fn dual_poly_basis_shapes_and_span() {
        let (_, tp, es, v) = gf5_instance();
        let basis = dual_poly_basis(&tp, &es).unwrap();
        assert_eq!(basis.hpolys.len(), tp.t);
        // deg h_0 = n - (h+1)
        let h0 = &basis.hpolys[0];
        let deg0 = h0.iter().rposition(|c| !c.is_zero()).unwrap();
        assert_eq!(deg0, tp.n - tp.h - 1);
        // j >= 1 polynomials have at most two terms
        for hj in &basis.hpolys[1..] {
            assert!(hj.iter().filter(|c| !c.is_zero()).count() <= 2);
        }
        let from_basis = dual_code_from_basis(&tp, &es).unwrap();
        let truth = tgrs_code(&tp, &es, &v).unwrap().dual();
        assert!(from_basis.same_code(&truth).unwrap());
    }

    #[test]
    fn dual_basis_span_more_fields() {
        let f = gf("3^2");
        let es = EvaluationSet::first_n(f.clone(), 8).unwrap();
        let v = all_ones(&f, 8);
        for (k, t, h) in [(3, 2, 1), (4, 2, 2), (3, 3, 0), (4, 3, 3)] {
            let tp = TwistParams { n: 8, k, t, h, eta: Felt(2) };
            tp.validate(&f, false).unwrap();
            let from_basis = dual_code_from_basis(&tp, &es).unwrap();
            let truth = tgrs_code(&tp, &es, &v).unwrap().dual();
            assert!(from_basis.same_code(&truth).unwrap(), "(k,t,h)=({k},{t},{h})");
        }
    }
}
