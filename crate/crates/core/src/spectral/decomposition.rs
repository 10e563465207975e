use nalgebra::DMatrix;

use super::region::{BoundaryBand, Membership, Region};
use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::linalg::{normality_residual, simultaneous_diagonalize, ComplexMatrix, C64, ZERO};
use crate::tol::Tolerances;

/// One eigenvalue cluster: representative, orthogonal eigenprojection and
/// multiplicity (rank of the projection).
#[derive(Debug, Clone)]
pub struct Cluster {
    pub lambda: C64,
    pub proj: ComplexMatrix,
    pub mult: usize,
}

/// `X = Σ λ_j P_j` for a normal `X`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub n: usize,
    pub clusters: Vec<Cluster>,
    /// `‖X‖_F` of the decomposed matrix; sets the cluster merge radius.
    pub norm: f64,
}

/// Residuals of the structural invariants of a decomposition.
#[derive(Debug, Clone, Copy, Default)]
pub struct DecompositionResiduals {
    pub idempotency: f64,
    pub hermiticity: f64,
    pub orthogonality: f64,
    pub resolution: f64,
    pub reconstruction: f64,
}

impl DecompositionResiduals {
    pub fn max(&self) -> f64 {
        [
            self.idempotency,
            self.hermiticity,
            self.orthogonality,
            self.resolution,
            self.reconstruction,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Single-linkage grouping of points closer than `radius`.
fn cluster_points(points: &[C64], radius: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_slot[r]].push(i);
    }
    groups
}

/// Spectral decomposition of a normal matrix through its commuting
/// Hermitian parts.
pub fn normal_eig(x: &ComplexMatrix, tol: &Tolerances) -> Result<SpectralDecomposition> {
    let residual = normality_residual(x);
    if residual > tol.norm {
        return Err(Error::NotNormal { residual });
    }
    let n = x.n();
    let norm = x.norm_fro();
    let v = simultaneous_diagonalize(&x.re_part(), &x.im_part(), tol)?;
    let diag: Vec<C64> = x.compress(v.as_dmatrix()).diagonal().iter().copied().collect();
    let radius = tol.cluster * norm.max(1.0);

    let mut clusters: Vec<Cluster> = cluster_points(&diag, radius)
        .into_iter()
        .map(|members| {
            let lambda = members.iter().map(|&i| diag[i]).sum::<C64>() / members.len() as f64;
            let cols: Vec<_> = members.iter().map(|&i| v.as_dmatrix().column(i)).collect();
            let block = DMatrix::from_columns(&cols);
            let proj = ComplexMatrix::from_dmatrix_unchecked(&block * block.adjoint());
            Cluster {
                lambda,
                proj,
                mult: members.len(),
            }
        })
        .collect();
    clusters.sort_by(|a, b| {
        a.lambda
            .re
            .total_cmp(&b.lambda.re)
            .then(a.lambda.im.total_cmp(&b.lambda.im))
    });
    Ok(SpectralDecomposition { n, clusters, norm })
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> impl Iterator<Item = C64> + '_ {
        self.clusters.iter().map(|c| c.lambda)
    }

    /// Merge radius used for this decomposition.
    pub fn cluster_radius(&self, tol: &Tolerances) -> f64 {
        tol.cluster * self.norm.max(1.0)
    }

    /// Index of the cluster whose representative is within the merge radius
    /// of `z`.
    pub fn cluster_near(&self, z: C64, tol: &Tolerances) -> Option<usize> {
        let r = self.cluster_radius(tol);
        self.clusters.iter().position(|c| (c.lambda - z).norm() <= r)
    }

    /// `Σ f(λ_j) P_j`.
    pub fn borel_calculus(&self, f: impl Fn(C64) -> C64) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.n);
        for c in &self.clusters {
            let v = f(c.lambda);
            if v != ZERO {
                out = out + c.proj.scale(v);
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.borel_calculus(|z| z)
    }

    /// Sum of the projections of clusters accepted by `select`.
    pub fn sum_projections(&self, mut select: impl FnMut(usize, &Cluster) -> bool) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.n);
        for (i, c) in self.clusters.iter().enumerate() {
            if select(i, c) {
                out = out + &c.proj;
            }
        }
        out
    }

    /// `E_X(Ω)`: the sum of the eigenprojections whose eigenvalue lies in
    /// `omega`.
    pub fn spectral_measure(&self, omega: &Region, tol: &Tolerances) -> Result<ComplexMatrix> {
        let band = BoundaryBand::from(tol);
        let mut out = ComplexMatrix::zeros(self.n);
        for c in &self.clusters {
            match omega.membership(c.lambda, band) {
                Membership::Inside => out = out + &c.proj,
                Membership::Outside => {}
                Membership::Ambiguous => return Err(Error::AmbiguousBoundary { point: c.lambda }),
            }
        }
        Ok(out)
    }

    /// Residuals of idempotency, self-adjointness, mutual orthogonality,
    /// resolution of the identity and reconstruction of `x`.
    pub fn invariant_residuals(&self, x: &ComplexMatrix) -> DecompositionResiduals {
        let mut r = DecompositionResiduals::default();
        let mut total = ComplexMatrix::zeros(self.n);
        for (i, c) in self.clusters.iter().enumerate() {
            r.idempotency = r.idempotency.max((&(&c.proj * &c.proj) - &c.proj).norm_fro());
            r.hermiticity = r.hermiticity.max(c.proj.hermitian_residual());
            for d in &self.clusters[i + 1..] {
                r.orthogonality = r.orthogonality.max((&c.proj * &d.proj).norm_fro());
            }
            total = total + &c.proj;
        }
        r.resolution = total.sub_identity_norm();
        r.reconstruction = (&self.reconstruct() - x).norm_fro();
        r
    }
}

/// Free-function form of [`SpectralDecomposition::spectral_measure`].
pub fn spectral_measure(dec: &SpectralDecomposition, omega: &Region, tol: &Tolerances) -> Result<ComplexMatrix> {
    dec.spectral_measure(omega, tol)
}

/// Free-function form of [`SpectralDecomposition::borel_calculus`].
pub fn borel_calculus(dec: &SpectralDecomposition, f: impl Fn(C64) -> C64) -> ComplexMatrix {
    dec.borel_calculus(f)
}

/// Compares `E_{f(X)}(Ω)` computed from a fresh decomposition of `f(X)` with
/// `E_X(f⁻¹(Ω))` assembled from the clusters of `X` whose image lies in `Ω`.
pub fn verify_pushforward(
    dec: &SpectralDecomposition,
    f: impl Fn(C64) -> C64,
    omega: &Region,
    tol: &Tolerances,
) -> Result<CheckReport> {
    let fx = dec.borel_calculus(&f);
    let fdec = normal_eig(&fx, tol)?;
    let lhs = fdec.spectral_measure(omega, tol)?;

    let band = BoundaryBand::from(tol);
    let mut rhs = ComplexMatrix::zeros(dec.n);
    for c in &dec.clusters {
        let image = f(c.lambda);
        match omega.membership(image, band) {
            Membership::Inside => rhs = rhs + &c.proj,
            Membership::Outside => {}
            Membership::Ambiguous => return Err(Error::AmbiguousBoundary { point: image }),
        }
    }
    let mut report = CheckReport::new("pushforward");
    report
        .residual("pushforward", (&lhs - &rhs).norm_fro())
        .tolerance("pushforward", tol.check * dec.n as f64);
    Ok(report.finish_by_tolerances())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{I, ONE};
    use crate::spectral::region::Edge;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn diagonal_with_repeat() {
        let x = ComplexMatrix::from_diag(&[c(1.0, 1.0), c(1.0, 1.0), c(2.0, 0.0)]);
        let dec = normal_eig(&x, &tol()).unwrap();
        let mults: Vec<usize> = dec.clusters.iter().map(|c| c.mult).collect();
        assert_eq!(mults, vec![2, 1]);
        assert!(dec.invariant_residuals(&x).max() < 1e-14);
    }

    #[test]
    fn rotation_generator() {
        let x = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let dec = normal_eig(&x, &tol()).unwrap();
        assert_eq!(dec.clusters.len(), 2);
        // sorted by (re, im): -i first
        assert!((dec.clusters[0].lambda - c(0.0, -1.0)).norm() < 1e-14);
        assert!((dec.clusters[1].lambda - c(0.0, 1.0)).norm() < 1e-14);
        let id = ComplexMatrix::identity(2);
        // eigenvalue ±i  ->  projection (I ∓ iX)/2
        let p_minus = (&id + &x.scale(I)).scale_real(0.5);
        let p_plus = (&id - &x.scale(I)).scale_real(0.5);
        assert!((&dec.clusters[0].proj - &p_minus).norm_fro() < 1e-14);
        assert!((&dec.clusters[1].proj - &p_plus).norm_fro() < 1e-14);
    }

    #[test]
    fn zero_matrix_single_cluster() {
        let dec = normal_eig(&ComplexMatrix::zeros(3), &tol()).unwrap();
        assert_eq!(dec.clusters.len(), 1);
        assert_eq!(dec.clusters[0].lambda, ZERO);
        assert_eq!(dec.clusters[0].proj, ComplexMatrix::identity(3));
    }

    #[test]
    fn non_normal_rejected() {
        let x = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(normal_eig(&x, &tol()), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn measure_examples() {
        let x = ComplexMatrix::from_diag(&[c(1.0, PI), c(2.0, 0.0)]);
        let dec = normal_eig(&x, &tol()).unwrap();
        let on_line = dec.spectral_measure(&Region::HLine { c: PI }, &tol()).unwrap();
        assert_eq!(on_line, ComplexMatrix::from_real_diag(&[1.0, 0.0]));
        let interior = dec.spectral_measure(&Region::strip_interior(), &tol()).unwrap();
        assert_eq!(interior, ComplexMatrix::from_real_diag(&[0.0, 1.0]));

        let x = ComplexMatrix::from_diag(&[c(0.0, 1.0), c(0.0, 2.0), c(0.0, 3.0)]);
        let dec = normal_eig(&x, &tol()).unwrap();
        let band = Region::horizontal_band(Edge::open(1.0), Edge::closed(3.0));
        let e = dec.spectral_measure(&band, &tol()).unwrap();
        assert_eq!(e, ComplexMatrix::from_real_diag(&[0.0, 1.0, 1.0]));
    }

    #[test]
    fn measure_reports_ambiguity() {
        let x = ComplexMatrix::from_diag(&[c(0.0, 1.0 + 5e-10)]);
        let dec = normal_eig(&x, &tol()).unwrap();
        let band = Region::horizontal_band(Edge::open(1.0), Edge::closed(3.0));
        assert!(matches!(
            dec.spectral_measure(&band, &tol()),
            Err(Error::AmbiguousBoundary { .. })
        ));
    }

    #[test]
    fn borel_examples() {
        let x = ComplexMatrix::from_diag(&[ZERO, c(0.0, PI)]);
        let dec = normal_eig(&x, &tol()).unwrap();
        assert!((&dec.borel_calculus(|z| z) - &x).norm_fro() < 1e-15);
        let e = dec.borel_calculus(|z| z.exp());
        assert!((&e - &ComplexMatrix::from_real_diag(&[1.0, -1.0])).norm_fro() < 1e-15);
        let dec = normal_eig(&ComplexMatrix::from_diag(&[c(1.0, 1.0)]), &tol()).unwrap();
        assert!((dec.borel_calculus(|z| z * z)[(0, 0)] - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn pushforward_examples() {
        let t = tol();
        let dec = normal_eig(&ComplexMatrix::from_diag(&[ZERO, c(0.0, PI)]), &t).unwrap();
        let r = verify_pushforward(&dec, |z| z.exp(), &Region::point(-ONE, 1e-9), &t).unwrap();
        assert!(r.passed, "{r:?}");

        let r = verify_pushforward(&dec, |z| z, &Region::whole_plane(), &t).unwrap();
        assert!(r.passed);

        let dec = normal_eig(&ComplexMatrix::from_diag(&[c(0.0, 1.0), c(0.0, -1.0)]), &t).unwrap();
        let r = verify_pushforward(&dec, |z| z * z, &Region::point(-ONE, 1e-9), &t).unwrap();
        assert!(r.passed);
    }
}
