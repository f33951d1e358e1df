//! GRS constructions and the formulas on the GRS side: the dual multiplier
//! vector u, the predicted shape of the Schur square of a GRS dual, and the
//! complement-weighted power sums L_A(m).

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{Felt, Field};
use crate::linalg::{MatrixGF, VectorGF};

/// Pairwise-distinct evaluation points.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationSet {
    ctx: Field,
    alpha: Vec<Felt>,
}

impl EvaluationSet {
    pub fn new(ctx: Field, alpha: Vec<Felt>) -> Result<EvaluationSet> {
        if alpha.is_empty() {
            return Err(Error::InvalidParameter("empty evaluation set".into()));
        }
        let mut seen = vec![false; ctx.q()];
        for &a in &alpha {
            if a.index() >= ctx.q() {
                return Err(Error::InvalidParameter(format!(
                    "evaluation point {a} out of range"
                )));
            }
            if seen[a.index()] {
                return Err(Error::InvalidParameter(format!(
                    "repeated evaluation point {a}"
                )));
            }
            seen[a.index()] = true;
        }
        Ok(EvaluationSet { ctx, alpha })
    }

    pub fn from_encodings(ctx: Field, encodings: &[u64]) -> Result<EvaluationSet> {
        let alpha = encodings
            .iter()
            .map(|&e| ctx.felt(e))
            .collect::<Result<Vec<_>>>()?;
        EvaluationSet::new(ctx, alpha)
    }

    /// The first n elements in canonical encoding order.
    pub fn first_n(ctx: Field, n: usize) -> Result<EvaluationSet> {
        if n > ctx.q() {
            return Err(Error::InvalidParameter(format!(
                "n = {n} exceeds field size {}",
                ctx.q()
            )));
        }
        let alpha = (0..n as u16).map(Felt).collect();
        Ok(EvaluationSet { ctx, alpha })
    }

    /// All q field elements.
    pub fn all_elements(ctx: Field) -> EvaluationSet {
        let alpha = ctx.elements().collect();
        EvaluationSet { ctx, alpha }
    }

    /// n distinct points sampled without replacement.
    pub fn random<R: rand::Rng>(ctx: Field, n: usize, rng: &mut R) -> Result<EvaluationSet> {
        use rand::seq::SliceRandom;
        if n > ctx.q() {
            return Err(Error::InvalidParameter(format!(
                "n = {n} exceeds field size {}",
                ctx.q()
            )));
        }
        let mut all: Vec<Felt> = ctx.elements().collect();
        all.shuffle(rng);
        all.truncate(n);
        Ok(EvaluationSet { ctx, alpha: all })
    }

    pub fn ctx(&self) -> &Field {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Felt] {
        &self.alpha
    }

    pub fn encodings(&self) -> Vec<u64> {
        self.alpha.iter().map(|a| a.0 as u64).collect()
    }
}

pub fn all_ones(ctx: &Field, n: usize) -> VectorGF {
    VectorGF::new(ctx.clone(), vec![Felt::ONE; n])
}

fn check_multipliers(es: &EvaluationSet, v: &VectorGF) -> Result<()> {
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

/// k x n matrix with rows (v_1 a_1^i, ..., v_n a_n^i), i = 0..k-1.
pub fn grs_generator_matrix(es: &EvaluationSet, k: usize, v: &VectorGF) -> Result<MatrixGF> {
    let n = es.n();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "GRS dimension k = {k} outside 1..={n}"
        )));
    }
    check_multipliers(es, v)?;
    let ctx = es.ctx().clone();
    let mut m = MatrixGF::zeros(ctx.clone(), k, n);
    for (j, (&a, &vj)) in es.alpha().iter().zip(v.as_slice()).enumerate() {
        let mut p = vj;
        for i in 0..k {
            m.set(i, j, p);
            p = ctx.mul(p, a);
        }
    }
    Ok(m)
}

pub fn grs_code(es: &EvaluationSet, k: usize, v: &VectorGF) -> Result<LinearCode> {
    Ok(LinearCode::from_generator(grs_generator_matrix(es, k, v)?))
}

/// u_j = prod_{i != j} (a_j - a_i)^{-1} (Lagrange dual multipliers).
pub fn u_vector(es: &EvaluationSet) -> Result<VectorGF> {
    let n = es.n();
    if n < 2 {
        return Err(Error::InvalidParameter("u-vector needs n >= 2".into()));
    }
    let ctx = es.ctx();
    let alpha = es.alpha();
    let mut u = Vec::with_capacity(n);
    for j in 0..n {
        let mut prod = Felt::ONE;
        for (i, &ai) in alpha.iter().enumerate() {
            if i != j {
                prod = ctx.mul(prod, ctx.sub(alpha[j], ai));
            }
        }
        u.push(ctx.inv(prod)?);
    }
    Ok(VectorGF::new(ctx.clone(), u))
}

/// The same u via the complement identity: u_j = -prod_{b not in A}(a_j - b).
/// Kept as an independent route for cross-checks.
pub fn u_vector_complement(es: &EvaluationSet) -> Result<VectorGF> {
    let n = es.n();
    if n < 2 {
        return Err(Error::InvalidParameter("u-vector needs n >= 2".into()));
    }
    let ctx = es.ctx();
    let mut in_set = vec![false; ctx.q()];
    for &a in es.alpha() {
        in_set[a.index()] = true;
    }
    let mut u = Vec::with_capacity(n);
    for &aj in es.alpha() {
        let mut prod = Felt::ONE;
        for b in ctx.elements() {
            if !in_set[b.index()] {
                prod = ctx.mul(prod, ctx.sub(aj, b));
            }
        }
        u.push(ctx.neg(prod));
    }
    Ok(VectorGF::new(ctx.clone(), u))
}

/// Dual of GRS_{k,n}(alpha, 1) as the closed form GRS_{n-k,n}(alpha, u).
pub fn grs_dual(es: &EvaluationSet, k: usize) -> Result<LinearCode> {
    let n = es.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "GRS dual needs 1 <= k < n, got k = {k}, n = {n}"
        )));
    }
    let u = u_vector(es)?;
    grs_code(es, n - k, &u)
}

/// Predicted (dimension, minimum distance) of the Schur square of the dual of
/// an [n,k] GRS code; valid for n/2 <= k < n.
pub fn dual_square_prediction(n: usize, k: usize) -> Result<(usize, usize)> {
    if 2 * k < n || k >= n {
        return Err(Error::InvalidParameter(format!(
            "prediction requires n/2 <= k < n, got n = {n}, k = {k}"
        )));
    }
    Ok((2 * (n - k) - 1, 2 * k - n + 2))
}

fn check_la_args(ctx: &Field, a: &[Felt]) -> Result<()> {
    let mut seen = vec![false; ctx.q()];
    for &x in a {
        if seen[x.index()] {
            return Err(Error::InvalidParameter(format!("repeated element {x} in A")));
        }
        seen[x.index()] = true;
    }
    Ok(())
}

/// Closed form of L_A(m) = sum_{a in A} a^m prod_{b not in A}(a - b):
/// 0 for m <= |A|-2, -1 for m = |A|-1, -sum(A) for m = |A|.
pub fn power_sum_la(ctx: &Field, a: &[Felt], m: u64) -> Result<Felt> {
    check_la_args(ctx, a)?;
    let size = a.len() as u64;
    if size <= 2 {
        return Err(Error::InvalidParameter("L_A closed form needs |A| > 2".into()));
    }
    if m > size {
        return Err(Error::InvalidParameter(format!(
            "closed form of L_A only covers m <= |A|, got m = {m}, |A| = {size}"
        )));
    }
    if m <= size - 2 {
        Ok(Felt::ZERO)
    } else if m == size - 1 {
        Ok(ctx.neg(Felt::ONE))
    } else {
        let sum = a.iter().fold(Felt::ZERO, |acc, &x| ctx.add(acc, x));
        Ok(ctx.neg(sum))
    }
}

/// Literal evaluation of the defining sum; the independent oracle for
/// `power_sum_la` and valid for any m >= 0.
pub fn power_sum_la_bruteforce(ctx: &Field, a: &[Felt], m: u64) -> Result<Felt> {
    check_la_args(ctx, a)?;
    let mut in_set = vec![false; ctx.q()];
    for &x in a {
        in_set[x.index()] = true;
    }
    let mut total = Felt::ZERO;
    for &x in a {
        let mut term = ctx.pow(x, m);
        for b in ctx.elements() {
            if !in_set[b.index()] {
                term = ctx.mul(term, ctx.sub(x, b));
            }
        }
        total = ctx.add(total, term);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::DEFAULT_DISTANCE_CAP;
    use crate::gf::FieldCtx;
    use itertools::Itertools;

    fn gf(s: &str) -> Field {
        FieldCtx::parse(s).unwrap()
    }

    #[test]
    fn grs_generator_rows() {
        let f = gf("5");
        let es = EvaluationSet::first_n(f.clone(), 4).unwrap();
        let g = grs_generator_matrix(&es, 2, &all_ones(&f, 4)).unwrap();
        assert_eq!(g.row_encodings(), vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn grs_is_mds() {
        let f = gf("7");
        let es = EvaluationSet::first_n(f.clone(), 6).unwrap();
        let c = grs_code(&es, 3, &all_ones(&f, 6)).unwrap();
        let d = c.min_distance_exhaustive(DEFAULT_DISTANCE_CAP).unwrap();
        assert_eq!(d.weight, 4); // n - k + 1
    }

    #[test]
    fn grs_full_rank_gf11() {
        let f = gf("11");
        let es = EvaluationSet::from_encodings(f.clone(), &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]).unwrap();
        let c = grs_code(&es, 6, &all_ones(&f, 10)).unwrap();
        assert_eq!(c.k(), 6);
    }

    #[test]
    fn u_vector_values() {
        let f = gf("5");
        let es = EvaluationSet::first_n(f.clone(), 4).unwrap();
        assert_eq!(u_vector(&es).unwrap().encodings(), vec![4, 3, 2, 1]);
        let f7 = gf("7");
        let es7 = EvaluationSet::from_encodings(f7, &[1, 2, 3]).unwrap();
        assert_eq!(u_vector(&es7).unwrap().encodings(), vec![4, 6, 4]);
    }

    #[test]
    fn u_complement_identity() {
        for spec in ["5", "7", "11", "2^3", "3^2"] {
            let f = gf(spec);
            let q = f.q();
            for n in 2..=q.min(8) {
                let es = EvaluationSet::first_n(f.clone(), n).unwrap();
                assert_eq!(
                    u_vector(&es).unwrap(),
                    u_vector_complement(&es).unwrap(),
                    "GF({spec}), n={n}"
                );
            }
        }
    }

    #[test]
    fn grs_dual_matches_nullspace() {
        let f = gf("5");
        let es = EvaluationSet::first_n(f.clone(), 4).unwrap();
        let c = grs_code(&es, 2, &all_ones(&f, 4)).unwrap();
        let closed = grs_dual(&es, 2).unwrap();
        assert!(closed.same_code(&c.dual()).unwrap());

        let f7 = gf("7");
        let es7 = EvaluationSet::from_encodings(f7.clone(), &[1, 2, 3]).unwrap();
        let closed7 = grs_dual(&es7, 1).unwrap();
        let c7 = grs_code(&es7, 1, &all_ones(&f7, 3)).unwrap();
        assert!(closed7.same_code(&c7.dual()).unwrap());
        assert_eq!(closed7.k(), 2);
    }

    #[test]
    fn dual_at_k_equals_n_minus_one_is_u_span() {
        let f = gf("5");
        let es = EvaluationSet::first_n(f.clone(), 4).unwrap();
        let d = grs_dual(&es, 3).unwrap();
        assert_eq!(d.k(), 1);
        assert!(d.contains(&u_vector(&es).unwrap()).unwrap());
        assert!(grs_dual(&es, 4).is_err());
    }

    #[test]
    fn square_prediction_values() {
        assert_eq!(dual_square_prediction(10, 6).unwrap(), (7, 4));
        assert_eq!(dual_square_prediction(12, 7).unwrap(), (9, 4));
        assert_eq!(dual_square_prediction(4, 2).unwrap(), (3, 2));
        assert!(dual_square_prediction(10, 4).is_err());
    }

    #[test]
    fn dual_square_shape_small_case() {
        // n=4, k=2 over GF(5): dimension 3, distance 2, equals GRS(alpha, u*u).
        let f = gf("5");
        let es = EvaluationSet::first_n(f.clone(), 4).unwrap();
        let c = grs_code(&es, 2, &all_ones(&f, 4)).unwrap();
        let sq = c.dual().schur_square();
        let (dim, dmin) = dual_square_prediction(4, 2).unwrap();
        assert_eq!(sq.k(), dim);
        assert_eq!(
            sq.min_distance_exhaustive(DEFAULT_DISTANCE_CAP).unwrap().weight,
            dmin
        );
        let u = u_vector(&es).unwrap();
        let uu = u.schur(&u).unwrap();
        let predicted = grs_code(&es, dim, &uu).unwrap();
        assert!(sq.same_code(&predicted).unwrap());
    }

    #[test]
    fn power_sum_la_closed_form_cases() {
        let f = gf("5");
        let a: Vec<_> = [0u64, 1, 2, 3].iter().map(|&x| f.felt(x).unwrap()).collect();
        assert_eq!(power_sum_la(&f, &a, 2).unwrap(), Felt(0));
        assert_eq!(power_sum_la(&f, &a, 3).unwrap(), Felt(4));
        assert_eq!(power_sum_la(&f, &a, 4).unwrap(), Felt(4)); // -(0+1+2+3) = -6 = 4
        assert!(power_sum_la(&f, &a, 5).is_err());
    }

    #[test]
    fn power_sum_la_exhaustive_cross_check_gf5() {
        let f = gf("5");
        let els: Vec<Felt> = f.elements().collect();
        for size in 3..=5usize {
            for subset in els.iter().copied().combinations(size) {
                for m in 0..=size as u64 {
                    assert_eq!(
                        power_sum_la(&f, &subset, m).unwrap(),
                        power_sum_la_bruteforce(&f, &subset, m).unwrap(),
                        "A={subset:?} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn power_sum_la_full_field_consistency() {
        // A = GF(7): empty complement product, m = 6 gives sum of a^6 = 6.
        let f = gf("7");
        let a: Vec<Felt> = f.elements().collect();
        assert_eq!(power_sum_la_bruteforce(&f, &a, 6).unwrap(), Felt(6));
        let f5 = gf("5");
        let small: Vec<_> = [1u64, 2, 3].iter().map(|&x| f5.felt(x).unwrap()).collect();
        assert_eq!(power_sum_la_bruteforce(&f5, &small, 0).unwrap(), Felt(0));
    }

    #[test]
    fn u_links_to_power_sum() {
        // sum_j u_j a_j^s = -L_A(s) for 0 <= s <= n.
        let f = gf("7");
        let es = EvaluationSet::from_encodings(f.clone(), &[0, 1, 2, 4, 6]).unwrap();
        let u = u_vector(&es).unwrap();
        for s in 0..=es.n() as u64 {
            let lhs = es
                .alpha()
                .iter()
                .zip(u.as_slice())
                .fold(Felt::ZERO, |acc, (&a, &uj)| {
                    f.add(acc, f.mul(uj, f.pow(a, s)))
                });
            let rhs = f.neg(power_sum_la_bruteforce(&f, es.alpha(), s).unwrap());
            assert_eq!(lhs, rhs, "s={s}");
        }
    }

    #[test]
    fn invalid_construction_errors() {
        let f = gf("5");
        assert!(EvaluationSet::from_encodings(f.clone(), &[0, 1, 1]).is_err());
        let es = EvaluationSet::first_n(f.clone(), 3).unwrap();
        let bad_v = VectorGF::from_encodings(f.clone(), &[1, 0, 1]).unwrap();
        assert!(grs_generator_matrix(&es, 2, &bad_v).is_err());
        assert!(grs_generator_matrix(&es, 0, &all_ones(&f, 3)).is_err());
    }
}
