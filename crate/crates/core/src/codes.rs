//! Generic linear-code layer: duals, Schur products, exhaustive minimum
//! distance, puncturing, and monomial equivalence maps.
//!
//! Generator matrices are stored RREF-canonicalized so code equality is plain
//! matrix equality. The zero code is represented by an empty generator (k = 0)
//! so `dual` is total.

use crate::error::{Error, Result};
use crate::gf::{Felt, Field};
use crate::linalg::{MatrixGF, VectorGF};

/// Default cap on enumerated messages for exhaustive distance search.
pub const DEFAULT_DISTANCE_CAP: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearCode {
    gen: MatrixGF, // RREF, zero rows dropped
}

/// Result of an exhaustive minimum-distance search.
#[derive(Clone, Debug)]
pub struct DistanceWitness {
    pub weight: usize,
    pub codeword: VectorGF,
}

impl LinearCode {
    /// Canonicalizes the given generator; the dimension is its rank.
    pub fn from_generator(gen: MatrixGF) -> LinearCode {
        LinearCode { gen: gen.row_space_canonical() }
    }

    pub fn zero(ctx: Field, n: usize) -> LinearCode {
        LinearCode { gen: MatrixGF::zeros(ctx, 0, n) }
    }

    pub fn full_space(ctx: Field, n: usize) -> LinearCode {
        LinearCode { gen: MatrixGF::identity(ctx, n) }
    }

    pub fn ctx(&self) -> &Field {
        self.gen.ctx()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &MatrixGF {
        &self.gen
    }

    pub fn contains(&self, v: &VectorGF) -> Result<bool> {
        self.gen.membership(v)
    }

    /// Row-space equality; both sides are canonical so this is matrix equality.
    pub fn same_code(&self, other: &LinearCode) -> Result<bool> {
        if self.ctx() != other.ctx() {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "code lengths {} vs {}",
                self.n(),
                other.n()
            )));
        }
        Ok(self.gen == other.gen)
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(self.gen.nullspace_basis())
    }

    /// Span of all componentwise products of basis rows.
    pub fn schur_product(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.ctx() != other.ctx() {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "code lengths {} vs {}",
                self.n(),
                other.n()
            )));
        }
        let ctx = self.ctx().clone();
        let same = std::ptr::eq(self, other) || self.gen == other.gen;
        let mut rows = Vec::new();
        for i in 0..self.k() {
            let jstart = if same { i } else { 0 };
            for j in jstart..other.k() {
                let prod: Vec<Felt> = self
                    .gen
                    .row(i)
                    .iter()
                    .zip(other.gen.row(j))
                    .map(|(&a, &b)| ctx.mul(a, b))
                    .collect();
                rows.push(prod);
            }
        }
        if rows.is_empty() {
            return Ok(LinearCode::zero(ctx, self.n()));
        }
        Ok(LinearCode::from_generator(MatrixGF::from_rows(ctx, rows)?))
    }

    pub fn schur_square(&self) -> LinearCode {
        self.schur_product(self).expect("same code on both sides")
    }

    /// Exact minimum Hamming weight over all nonzero codewords, with a witness
    /// of that weight. `None` when q^k exceeds the cap (or k = 0). Messages
    /// are scanned in lexicographic order of the canonical encoding, with the
    /// first nonzero message coordinate normalized to 1 (weights are invariant
    /// under scaling).
    pub fn min_distance_exhaustive(&self, cap: u64) -> Option<DistanceWitness> {
        let k = self.k();
        let n = self.n();
        if k == 0 {
            return None;
        }
        let q = self.ctx().q() as u64;
        let total = q.checked_pow(k as u32)?;
        if total > cap {
            return None;
        }
        let ctx = self.ctx().clone();
        let mut best: Option<DistanceWitness> = None;
        let mut word = vec![Felt::ZERO; n];
        let mut msg = vec![Felt::ZERO; k];
        for lead in 0..k {
            let free = (k - lead - 1) as u32;
            let combos = q.pow(free);
            for counter in 0..combos {
                for m in msg.iter_mut() {
                    *m = Felt::ZERO;
                }
                msg[lead] = Felt::ONE;
                let mut c = counter;
                for slot in msg.iter_mut().skip(lead + 1) {
                    *slot = Felt((c % q) as u16);
                    c /= q;
                }
                for w in word.iter_mut() {
                    *w = Felt::ZERO;
                }
                for (i, &mi) in msg.iter().enumerate().skip(lead) {
                    if mi.is_zero() {
                        continue;
                    }
                    for (w, &g) in word.iter_mut().zip(self.gen.row(i)) {
                        *w = ctx.add(*w, ctx.mul(mi, g));
                    }
                }
                let weight = word.iter().filter(|x| !x.is_zero()).count();
                if best.as_ref().is_none_or(|b| weight < b.weight) {
                    best = Some(DistanceWitness {
                        weight,
                        codeword: VectorGF::new(ctx.clone(), word.clone()),
                    });
                    if weight == 1 {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Deletes the given coordinates; the dimension may drop.
    pub fn puncture(&self, positions: &[usize]) -> Result<LinearCode> {
        let n = self.n();
        let mut drop = vec![false; n];
        for &p in positions {
            if p >= n {
                return Err(Error::InvalidParameter(format!(
                    "puncture position {p} out of range for length {n}"
                )));
            }
            drop[p] = true;
        }
        let kept: Vec<usize> = (0..n).filter(|&j| !drop[j]).collect();
        if kept.is_empty() {
            return Err(Error::InvalidParameter(
                "cannot puncture every coordinate".into(),
            ));
        }
        let ctx = self.ctx().clone();
        let mut out = MatrixGF::zeros(ctx, self.k(), kept.len());
        for i in 0..self.k() {
            for (jj, &j) in kept.iter().enumerate() {
                out.set(i, jj, self.gen.get(i, j));
            }
        }
        Ok(LinearCode::from_generator(out))
    }

    pub fn apply_monomial_map(&self, map: &MonomialMap) -> Result<LinearCode> {
        if map.scale.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "monomial map length {} vs code length {}",
                map.scale.len(),
                self.n()
            )));
        }
        if self.ctx() != map.scale.ctx() {
            return Err(Error::FieldMismatch);
        }
        let ctx = self.ctx().clone();
        let scale = map.scale.as_slice();
        let mut rows = Vec::with_capacity(self.k());
        for i in 0..self.k() {
            let src = self.gen.row(i);
            let mapped: Vec<Felt> = (0..self.n())
                .map(|j| ctx.mul(scale[j], src[map.perm[j]]))
                .collect();
            rows.push(mapped);
        }
        if rows.is_empty() {
            return Ok(LinearCode::zero(ctx, self.n()));
        }
        Ok(LinearCode::from_generator(MatrixGF::from_rows(ctx, rows)?))
    }
}

/// A monomial equivalence map: codewords (c_1,...,c_n) go to
/// (v_1 c_{pi(1)}, ..., v_n c_{pi(n)}).
#[derive(Clone, Debug)]
pub struct MonomialMap {
    perm: Vec<usize>,
    scale: VectorGF,
}

impl MonomialMap {
    pub fn new(perm: Vec<usize>, scale: VectorGF) -> Result<MonomialMap> {
        let n = scale.len();
        if perm.len() != n {
            return Err(Error::DimensionMismatch(
                "permutation and scale lengths differ".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[p] = true;
        }
        if scale.as_slice().iter().any(|s| s.is_zero()) {
            return Err(Error::InvalidParameter(
                "monomial map scale entries must be nonzero".into(),
            ));
        }
        Ok(MonomialMap { perm, scale })
    }

    pub fn identity(ctx: Field, n: usize) -> MonomialMap {
        MonomialMap {
            perm: (0..n).collect(),
            scale: VectorGF::new(ctx, vec![Felt::ONE; n]),
        }
    }

    pub fn random<R: rand::Rng>(ctx: Field, n: usize, rng: &mut R) -> MonomialMap {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let q = ctx.q() as u64;
        let scale: Vec<Felt> = (0..n)
            .map(|_| Felt(rng.random_range(1..q) as u16))
            .collect();
        MonomialMap { perm, scale: VectorGF::new(ctx, scale) }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scale(&self) -> &VectorGF {
        &self.scale
    }

    /// The map that carries dual codes along: same permutation, componentwise
    /// inverse scaling.
    pub fn dual_map(&self) -> MonomialMap {
        let ctx = self.scale.ctx().clone();
        let inv: Vec<Felt> = self
            .scale
            .as_slice()
            .iter()
            .map(|&s| ctx.inv(s).expect("scale entries are nonzero"))
            .collect();
        MonomialMap { perm: self.perm.clone(), scale: VectorGF::new(ctx, inv) }
    }
}
