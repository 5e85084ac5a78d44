//! Error types shared across the toolkit.

use thiserror::Error;

/// Errors from pointwise kernel evaluation and its quadratures.
#[derive(Debug, Clone, Error)]
pub enum KernelError {
    #[error("invalid kernel parameters: {0}")]
    InvalidParams(String),
    #[error("kernel is singular at coincident velocities (gamma > 0)")]
    SingularPoint,
    #[error("quadrature did not converge: coarse={coarse:.12e}, fine={fine:.12e}, rel tol={tol:.1e}")]
    QuadratureNotConverged { coarse: f64, fine: f64, tol: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Errors from grid construction and operator assembly.
#[derive(Debug, Clone, Error)]
pub enum DiscretizeError {
    #[error("grid resolution too low: Maxwellian mass on grid is {measured:.8} (want 1 within {tol:.1e})")]
    MassCheck { measured: f64, tol: f64 },
    #[error("invalid grid request: {0}")]
    InvalidGrid(String),
    #[error("kernel evaluation failed at matrix entry ({i},{j}): {source}")]
    EntryFailure {
        i: usize,
        j: usize,
        source: KernelError,
    },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("near-zero eigenvalue cluster is not clean: cluster radius {cluster:.3e}, gap {gap:.3e}, ratio {ratio:.2} < {required:.1}")]
    ClusterGap {
        cluster: f64,
        gap: f64,
        ratio: f64,
        required: f64,
    },
    #[error("linear algebra backend failure: {0}")]
    Linalg(String),
}

/// Errors from the dispersion-relation machinery.
#[derive(Debug, Clone, Error)]
pub enum SpectralError {
    #[error("resolvent system is near-singular: condition estimate {cond:.3e}")]
    NearSingular { cond: f64 },
    #[error("linear solve residual {residual:.3e} exceeds {tol:.1e}")]
    SolveResidual { residual: f64, tol: f64 },
    #[error("eigenvalue collision in the coupled block: separation {sep:.3e}")]
    DegenerateBlock { sep: f64 },
    #[error("branch tracking lost: eigenvector overlap {overlap:.3} < 0.7 at r={r:.4e}")]
    TrackingLost { overlap: f64, r: f64 },
    #[error("Newton iteration diverged at r={r:.4e}; last good r={last_good_r:.4e}")]
    NewtonDiverged { r: f64, last_good_r: f64 },
    #[error("asymptotic fit is ill-conditioned: cond={cond:.3e}")]
    FitConditioning { cond: f64 },
    #[error("non-simple spectrum; eigenprojections undefined")]
    NonSimpleSpectrum,
    #[error(transparent)]
    Discretize(#[from] DiscretizeError),
    #[error("linear algebra backend failure: {0}")]
    Linalg(String),
}

/// Errors from semigroup evolution and decay synthesis.
#[derive(Debug, Clone, Error)]
pub enum SemigroupError {
    #[error("times must be ascending and nonnegative")]
    BadTimes,
    #[error("frequency quadrature refinement disagrees by {rel:.2}% (> {tol:.2}%)")]
    YQuadrature { rel: f64, tol: f64 },
    #[error("linear algebra backend failure: {0}")]
    Linalg(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Errors from the bilinear collision term and the Cauchy solver.
#[derive(Debug, Clone, Error)]
pub enum NonlinearError {
    #[error("solution norm {norm:.3e} exceeded blow-up ceiling {ceiling:.3e} at t={t:.4}")]
    BlowUp { norm: f64, ceiling: f64, t: f64 },
    #[error("Picard iteration is not contracting: measured Lipschitz estimate {lipschitz:.3}")]
    NotContracting { lipschitz: f64 },
    #[error("invalid solver configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Discretize(#[from] DiscretizeError),
}

/// Toolkit-wide error.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Discretize(#[from] DiscretizeError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Nonlinear(#[from] NonlinearError),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache format error: {0}")]
    CacheFormat(String),
}
