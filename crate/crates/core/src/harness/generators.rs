use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rng::{derive_seed, SplitMix64};
use crate::error::{Error, Result};
use crate::linalg::{condition_number, ComplexMatrix, C64, ZERO};
use crate::logs::exp_general;
use crate::spectral::fold_unbounded;

/// Margin kept between generated interior eigenvalues and the strip edges.
const INTERIOR_MARGIN: f64 = 0.05;
/// Minimum distance between generated distinct eigenvalues.
const MIN_SEPARATION: f64 = 1e-2;
/// Margin for self-adjoint spectra: gaps avoid `2πℤ ∖ {0}` and values avoid
/// odd multiples of `π` by at least this much.
const CONGRUENCE_MARGIN: f64 = 0.1;
/// Cap on `cond(T)` for the non-unitary similarity.
const MAX_CONDITION: f64 = 100.0;
/// Relative `‖e^X − e^Y‖_F` accepted by the construction self-test.
const SELF_TEST: f64 = 1e-10;
const MAX_DRAWS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    InteriorPair,
    BoundaryFlipPair,
    DistinctProjectionPair,
    ShiftedBranchPair,
    NonNormalLogPair,
    SelfAdjointCongruenceFree,
    OddPiEigenvalue,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::InteriorPair,
        Family::BoundaryFlipPair,
        Family::DistinctProjectionPair,
        Family::ShiftedBranchPair,
        Family::NonNormalLogPair,
        Family::SelfAdjointCongruenceFree,
        Family::OddPiEigenvalue,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::InteriorPair => "InteriorPair",
            Family::BoundaryFlipPair => "BoundaryFlipPair",
            Family::DistinctProjectionPair => "DistinctProjectionPair",
            Family::ShiftedBranchPair => "ShiftedBranchPair",
            Family::NonNormalLogPair => "NonNormalLogPair",
            Family::SelfAdjointCongruenceFree => "SelfAdjointCongruenceFree",
            Family::OddPiEigenvalue => "OddPiEigenvalue",
        }
    }

    /// Which exponential relation the pair satisfies.
    pub fn relation(self) -> Relation {
        match self {
            Family::SelfAdjointCongruenceFree | Family::OddPiEigenvalue => Relation::ExpI,
            _ => Relation::Exp,
        }
    }

    /// Families that can also emit an instance planted to violate the
    /// hypothesis of their target checks.
    pub fn has_negative_control(self) -> bool {
        matches!(
            self,
            Family::BoundaryFlipPair | Family::SelfAdjointCongruenceFree | Family::OddPiEigenvalue
        )
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown family {s:?}")))
    }
}

/// `Exp`: `e^X = e^Y`. `ExpI`: `e^{iX} = e^Y` with `X` self-adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Exp,
    ExpI,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FamilyParams {
    /// Plant a violation of the target checks' hypothesis.
    pub negative: bool,
    /// Branch window for `ShiftedBranchPair`; drawn from the seed when absent.
    pub window: Option<(i64, i64)>,
    /// Use the same integer shifts for both operands (`ShiftedBranchPair`).
    pub same_shift: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    #[serde(default)]
    pub params: FamilyParams,
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self {
            family,
            n,
            seed,
            params: FamilyParams::default(),
        }
    }

    pub fn negative(mut self) -> Self {
        self.params.negative = true;
        self
    }

    pub fn window(mut self, k_lo: i64, k_hi: i64) -> Self {
        self.params.window = Some((k_lo, k_hi));
        self
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub relation: Relation,
    /// Branch window containing both spectra (`[−1, 0]` for the strip).
    pub k_lo: i64,
    pub k_hi: i64,
}

/// Haar-distributed unitary: a complex Gaussian matrix orthonormalized by
/// two passes of modified Gram–Schmidt.
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = SplitMix64::new(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|_| (0..n).map(|_| C64::new(rng.normal(), rng.normal()) * scale).collect())
        .collect();
    for _ in 0..2 {
        for j in 0..n {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let q = &done[i];
                let proj: C64 = q.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
                for (v, a) in rest[0].iter_mut().zip(q) {
                    *v -= proj * a;
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for v in &mut cols[j] {
                *v /= norm;
            }
        }
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

fn unitary_from(rng: &mut SplitMix64, n: usize) -> ComplexMatrix {
    random_unitary(n, rng.next_u64())
}

/// `blockdiag(block, I)` of size `n`, with the block in the leading corner.
fn leading_block(n: usize, block: &ComplexMatrix) -> ComplexMatrix {
    let m = block.n();
    ComplexMatrix::from_fn(n, |i, j| match (i < m, j < m) {
        (true, true) => block[(i, j)],
        _ if i == j => C64::new(1.0, 0.0),
        _ => ZERO,
    })
}

fn failed(spec: &InstanceSpec, why: impl fmt::Display) -> Error {
    Error::ConstructionFailed(format!("{} n={} seed={}: {why}", spec.family, spec.n, spec.seed))
}

/// Rejection sampler for points at least `sep` apart from each other and
/// from `taken`.
fn sample_separated(
    rng: &mut SplitMix64,
    count: usize,
    taken: &[C64],
    sep: f64,
    mut draw: impl FnMut(&mut SplitMix64) -> C64,
) -> Option<Vec<C64>> {
    let mut out: Vec<C64> = Vec::with_capacity(count);
    let mut draws = 0;
    while out.len() < count {
        draws += 1;
        if draws > MAX_DRAWS {
            return None;
        }
        let z = draw(rng);
        if taken.iter().chain(&out).all(|w| (w - z).norm() >= sep) {
            out.push(z);
        }
    }
    Some(out)
}

fn interior_point(rng: &mut SplitMix64) -> C64 {
    C64::new(
        rng.range(-2.0, 2.0),
        rng.range(-PI + INTERIOR_MARGIN, PI - INTERIOR_MARGIN),
    )
}

fn interior_values(rng: &mut SplitMix64, count: usize, taken: &[C64]) -> Option<Vec<C64>> {
    sample_separated(rng, count, taken, MIN_SEPARATION, interior_point)
}

/// Distinct real parts for boundary eigenvalues; the imaginary part is
/// attached exactly by the caller.
fn boundary_reals(rng: &mut SplitMix64, count: usize) -> Option<Vec<f64>> {
    let pts = sample_separated(rng, count, &[], MIN_SEPARATION, |r| C64::new(r.range(-2.0, 2.0), 0.0))?;
    Some(pts.into_iter().map(|z| z.re).collect())
}

fn on_line(a: f64, odd: i64) -> C64 {
    C64::new(a, odd as f64 * PI)
}

fn i_fold(t: f64) -> C64 {
    C64::new(0.0, fold_unbounded(t))
}

fn distance_to_odd_pi(t: f64) -> f64 {
    let k = ((t - PI) / (2.0 * PI)).round();
    (t - (2.0 * k + 1.0) * PI).abs()
}

/// Whether `t` may join the self-adjoint spectrum `taken` without a gap in
/// `2πℤ ∖ {0}` (or a near-duplicate) within the margin.
fn congruence_compatible(t: f64, taken: &[f64]) -> bool {
    taken.iter().all(|&s| {
        let d = (t - s).abs();
        let k = (d / (2.0 * PI)).round().max(1.0);
        d >= 0.5 * CONGRUENCE_MARGIN && (d - 2.0 * k * PI).abs() >= CONGRUENCE_MARGIN
    })
}

fn self_adjoint_value(rng: &mut SplitMix64, taken: &[f64], congruence_free: bool) -> Option<f64> {
    for _ in 0..MAX_DRAWS {
        let t = rng.range(-4.0 * PI, 4.0 * PI);
        if distance_to_odd_pi(t) >= CONGRUENCE_MARGIN && (!congruence_free || congruence_compatible(t, taken)) {
            return Some(t);
        }
    }
    None
}

/// Fills `n` slots from `distinct` values, each used at least once, with
/// random extra multiplicities, in shuffled order.
fn with_multiplicities<T: Copy>(rng: &mut SplitMix64, distinct: &[T], n: usize) -> Vec<T> {
    let mut out = distinct.to_vec();
    while out.len() < n {
        out.push(distinct[rng.int(0, distinct.len() as i64 - 1) as usize]);
    }
    rng.shuffle(&mut out);
    out
}

fn self_adjoint(u: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    let d: Vec<C64> = values.iter().map(|&t| C64::new(t, 0.0)).collect();
    ComplexMatrix::conjugate_diag(u, &d).re_part()
}

pub fn make_pair(spec: &InstanceSpec) -> Result<Instance> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    if spec.params.negative && !spec.family.has_negative_control() {
        return Err(Error::InvalidConfig(format!("{} has no negative control", spec.family)));
    }
    if spec.params.negative && n < 2 {
        return Err(Error::InvalidConfig("negative controls need n >= 2".into()));
    }
    let mut rng = SplitMix64::new(derive_seed(&[
        spec.family.tag(),
        n as u64,
        spec.seed,
        spec.params.negative as u64,
    ]));
    let (x, y, (k_lo, k_hi)) = match spec.family {
        Family::InteriorPair => interior_pair(spec, &mut rng)?,
        Family::BoundaryFlipPair => boundary_flip_pair(spec, &mut rng)?,
        Family::DistinctProjectionPair => distinct_projection_pair(spec, &mut rng)?,
        Family::ShiftedBranchPair => shifted_branch_pair(spec, &mut rng)?,
        Family::NonNormalLogPair => non_normal_log_pair(spec, &mut rng)?,
        Family::SelfAdjointCongruenceFree => congruence_free_pair(spec, &mut rng)?,
        Family::OddPiEigenvalue => odd_pi_pair(spec, &mut rng)?,
    };
    let relation = spec.family.relation();
    let lhs = match relation {
        Relation::Exp => exp_general(&x),
        Relation::ExpI => exp_general(&x.scale(C64::new(0.0, 1.0))),
    };
    let gap = (&lhs - &exp_general(&y)).norm_fro() / lhs.norm_fro();
    if gap.is_nan() || gap > SELF_TEST {
        return Err(failed(spec, format_args!("exponential self-test residual {gap:.3e}")));
    }
    Ok(Instance {
        spec: spec.clone(),
        x,
        y,
        relation,
        k_lo,
        k_hi,
    })
}

type Pair = (ComplexMatrix, ComplexMatrix, (i64, i64));

const STRIP: (i64, i64) = (-1, 0);

fn interior_pair(spec: &InstanceSpec, rng: &mut SplitMix64) -> Result<Pair> {
    let vals = interior_values(rng, spec.n, &[]).ok_or_else(|| failed(spec, "interior sampling"))?;
    let u = unitary_from(rng, spec.n);
    let x = ComplexMatrix::conjugate_diag(&u, &vals);
    Ok((x.clone(), x, STRIP))
}

/// All boundary eigenvalues of `X` sit on one line (chosen by the seed) and
/// a nonempty random subset moves to the other line in `Y`, so one of
/// `E_1`, `E_{−1}` vanishes. The negative control plants `a ± iπ` with
/// `a ≠ 0` in `X` and mixes that pair's eigenvectors in `Y`.
fn boundary_flip_pair(spec: &InstanceSpec, rng: &mut SplitMix64) -> Result<Pair> {
    let n = spec.n;
    let u = unitary_from(rng, n);
    if spec.params.negative {
        let a = rng.range(0.5, 2.0) * if rng.coin() { 1.0 } else { -1.0 };
        let rest = interior_values(rng, n - 2, &[]).ok_or_else(|| failed(spec, "interior sampling"))?;
        let mut d = vec![on_line(a, 1), on_line(a, -1)];
        d.extend(rest);
        let x = ComplexMatrix::conjugate_diag(&u, &d);
        let v = &u * &leading_block(n, &unitary_from(rng, 2));
        let y = ComplexMatrix::conjugate_diag(&v, &d);
        return Ok((x, y, STRIP));
    }
    let m = rng.int(1, n as i64) as usize;
    let side = if rng.coin() { 1 } else { -1 };
    let reals = boundary_reals(rng, m).ok_or_else(|| failed(spec, "boundary sampling"))?;
    let rest = interior_values(rng, n - m, &[]).ok_or_else(|| failed(spec, "interior sampling"))?;
    let mut flip: Vec<bool> = (0..m).map(|i| i == 0 || rng.coin()).collect();
    rng.shuffle(&mut flip);
    let mut dx: Vec<C64> = reals.iter().map(|&a| on_line(a, side)).collect();
    let mut dy: Vec<C64> = reals
        .iter()
        .zip(&flip)
        .map(|(&a, &f)| on_line(a, if f { -side } else { side }))
        .collect();
    dx.extend(&rest);
    dy.extend(&rest);
    Ok((
        ComplexMatrix::conjugate_diag(&u, &dx),
        ComplexMatrix::conjugate_diag(&u, &dy),
        STRIP,
    ))
}

/// `X = U D U*`, `Y = V D V*` where `D` carries `±iπ` on a leading block and
/// `V = U · blockdiag(R, I)` rotates only that block.
fn distinct_projection_pair(spec: &InstanceSpec, rng: &mut SplitMix64) -> Result<Pair> {
    let n = spec.n;
    let m = if n == 1 {
        1
    } else {
        rng.int(2, (n / 2).max(2) as i64) as usize
    };
    let mut d: Vec<C64> = (0..m)
        .map(|i| {
            let up = match i {
                0 => true,
                1 => false,
                _ => rng.coin(),
            };
            on_line(0.0, if up { 1 } else { -1 })
        })
        .collect();
    d.extend(interior_values(rng, n - m, &[]).ok_or_else(|| failed(spec, "interior sampling"))?);
    let u = unitary_from(rng, n);
    let v = &u * &leading_block(n, &unitary_from(rng, m));
    Ok((
        ComplexMatrix::conjugate_diag(&u, &d),
        ComplexMatrix::conjugate_diag(&v, &d),
        STRIP,
    ))
}

/// `X = Z + 2πi·K_X`, `Y = Z + 2πi·K_Y` in the eigenbasis of `Z`, with
/// interior eigenvalues of `Z` shifted by `k ∈ [k_lo + 1, k_hi]` and
/// eigenvalues on `ℝ + iπ` by `k ∈ [k_lo, k_hi]`, so both spectra stay in
/// `ℝ + i[(2k_lo+1)π, (2k_hi+1)π]`.
fn shifted_branch_pair(spec: &InstanceSpec, rng: &mut SplitMix64) -> Result<Pair> {
    let n = spec.n;
    let (k_lo, k_hi) = match spec.params.window {
        Some((lo, hi)) if lo < hi => (lo, hi),
        Some((lo, hi)) => return Err(Error::InvalidConfig(format!("window [{lo}, {hi}] needs k_lo < k_hi"))),
        None => (-rng.int(1, 3), rng.int(0, 2)),
    };
    let b = rng.int(0, (n / 2) as i64) as usize;
    let reals = boundary_reals(rng, b).ok_or_else(|| failed(spec, "boundary sampling"))?;
    let mut z: Vec<C64> = reals.iter().map(|&a| on_line(a, 1)).collect();
    z.extend(interior_values(rng, n - b, &z).ok_or_else(|| failed(spec, "interior sampling"))?);

    let shift = |rng: &mut SplitMix64, j: usize| {
        if j < b {
            rng.int(k_lo, k_hi)
        } else {
            rng.int(k_lo + 1, k_hi)
        }
    };
    let kx: Vec<i64> = (0..n).map(|j| shift(rng, j)).collect();
    let ky: Vec<i64> = if spec.params.same_shift {
        kx.clone()
    } else {
        (0..n).map(|j| shift(rng, j)).collect()
    };
    let turn = |k: i64| C64::new(0.0, 2.0 * PI * k as f64);
    let dx: Vec<C64> = z.iter().zip(&kx).map(|(&w, &k)| w + turn(k)).collect();
    let dy: Vec<C64> = z.iter().zip(&ky).map(|(&w, &k)| w + turn(k)).collect();
    let u = unitary_from(rng, n);
    Ok((
        ComplexMatrix::conjugate_diag(&u, &dx),
        ComplexMatrix::conjugate_diag(&u, &dy),
        (k_lo, k_hi),
    ))
}

/// `X = U D_X U*` normal with eigenvalues in `{±iπ} ∪ ℝ`, and
/// `Y = U T D T⁻¹ U*` with `T` block-diagonal unit upper triangular. On every
/// block `e^{D}` and `e^{D_X}` are the same scalar.
fn non_normal_log_pair(spec: &InstanceSpec, rng: &mut SplitMix64) -> Result<Pair> {
    let n = spec.n;
    let mut dx = Vec::with_capacity(n);
    let mut d = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    while dx.len() < n {
        let size = (rng.int(1, 4) as usize).min(n - dx.len());
        blocks.push(dx.len()..dx.len() + size);
        if rng.coin() {
            for _ in 0..size {
                dx.push(on_line(0.0, if rng.coin() { 1 } else { -1 }));
                d.push(on_line(0.0, 2 * rng.int(-1, 0) + 1));
            }
        } else {
            let r = rng.range(-2.0, 2.0);
            for _ in 0..size {
                dx.push(C64::new(r, 0.0));
                d.push(C64::new(r, 2.0 * PI * rng.int(-1, 1) as f64));
            }
        }
    }

    let t = (0..MAX_DRAWS)
        .map(|_| {
            let mut t = ComplexMatrix::identity(n);
            for block in &blocks {
                for i in block.clone() {
                    for j in i + 1..block.end {
                        t[(i, j)] = C64::new(rng.range(-1.0, 1.0), 0.0);
                    }
                }
            }
            t
        })
        .find(|t| condition_number(t) <= MAX_CONDITION)
        .ok_or_else(|| failed(spec, "no similarity within the condition cap"))?;

    let u = unitary_from(rng, n);
    let x = ComplexMatrix::conjugate_diag(&u, &dx);
    let inner = &(&t * &ComplexMatrix::from_diag(&d)) * &t.inverse()?;
    let y = &(&u * &inner) * &u.adjoint();
    Ok((x, y, STRIP))
}

/// Hermitian `X` whose distinct eigenvalues avoid gaps in `2πℤ ∖ {0}` and
/// odd multiples of `π`; `Y = i·fold(X)`. The negative control plants a pair
/// `s`, `s + 2π`.
fn congruence_free_pair(spec: &InstanceSpec, rng: &mut SplitMix64) -> Result<Pair> {
    let n = spec.n;
    let distinct = rng.int(n.min(2) as i64, n.min(8) as i64) as usize;
    let mut values: Vec<f64> = Vec::with_capacity(distinct);
    if spec.params.negative {
        let s = loop {
            let s = rng.range(-4.0 * PI, 2.0 * PI);
            if distance_to_odd_pi(s) >= CONGRUENCE_MARGIN {
                break s;
            }
        };
        values.extend([s, s + 2.0 * PI]);
    }
    while values.len() < distinct {
        let t = self_adjoint_value(rng, &values, true).ok_or_else(|| failed(spec, "self-adjoint sampling"))?;
        values.push(t);
    }
    let spectrum = with_multiplicities(rng, &values, n);
    let u = unitary_from(rng, n);
    let x = self_adjoint(&u, &spectrum);
    let dy: Vec<C64> = spectrum.iter().map(|&t| i_fold(t)).collect();
    Ok((x, ComplexMatrix::conjugate_diag(&u, &dy), STRIP))
}

/// Hermitian `X` with one odd multiple of `π` as an eigenvalue (two for the
/// negative control) on a leading block; `Y = i·fold(X) − 2πi·F` with `F` a
/// random projection inside that block, so `Y` takes both `iπ` and `−iπ`
/// there.
fn odd_pi_pair(spec: &InstanceSpec, rng: &mut SplitMix64) -> Result<Pair> {
    let n = spec.n;
    let first = 2 * rng.int(-2, 1) + 1;
    let mut odd = vec![first as f64 * PI];
    if spec.params.negative {
        let second = loop {
            let k = 2 * rng.int(-2, 1) + 1;
            if k != first {
                break k;
            }
        };
        odd.push(second as f64 * PI);
    }
    let block = rng.int(odd.len() as i64, (n / 2).max(odd.len()) as i64) as usize;
    let mut spectrum: Vec<f64> = (0..block).map(|i| odd[i % odd.len()]).collect();
    while spectrum.len() < n {
        spectrum.push(self_adjoint_value(rng, &[], false).ok_or_else(|| failed(spec, "self-adjoint sampling"))?);
    }

    let u = unitary_from(rng, n);
    let x = self_adjoint(&u, &spectrum);
    let dy: Vec<C64> = spectrum.iter().map(|&t| i_fold(t)).collect();
    let rank = if spec.params.negative {
        rng.int(1, block as i64 - 1)
    } else {
        rng.int(0, block as i64)
    } as usize;
    let r = unitary_from(rng, block);
    let w = ComplexMatrix::from_fn(n, |i, j| {
        if j < rank {
            (0..block).map(|l| u[(i, l)] * r[(l, j)]).sum()
        } else {
            ZERO
        }
    });
    let f = &w * &w.adjoint();
    let y = &ComplexMatrix::conjugate_diag(&u, &dy) - &f.scale(C64::new(0.0, 2.0 * PI));
    Ok((x, y, STRIP))
}
