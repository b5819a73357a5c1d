//! Kraus channels and the order-superposing two-channel construction.
//!
//! The joint space is system tensor control, joint index a * 2 + s for
//! system index a and control index s. With the control in |0><0| the
//! construction reduces to plain composition of the two channels; control
//! coherence is what carries the order information.

use crate::dense::DenseOperator;
use crate::{C64, Error, Result};

#[derive(Clone, Debug)]
pub struct KrausChannel {
    dim: usize,
    kraus: Vec<DenseOperator>,
}

impl KrausChannel {
    /// Validates the completeness relation sum K^dag K = I to 1e-10.
    pub fn new(kraus: Vec<DenseOperator>) -> Result<Self> {
        let dim = match kraus.first() {
            Some(k) => k.dim(),
            None => return Err(Error::Channel("no Kraus operators".into())),
        };
        let mut sum = DenseOperator::zeros(dim);
        for k in &kraus {
            if k.dim() != dim {
                return Err(Error::DimMismatch {
                    a: dim,
                    b: k.dim(),
                });
            }
            sum = sum.add(&k.adjoint().mul(k)?)?;
        }
        let defect = sum.max_abs_diff(&DenseOperator::identity(dim))?;
        if defect > 1e-10 {
            return Err(Error::Channel(format!(
                "completeness defect {defect:.3e} exceeds 1e-10"
            )));
        }
        Ok(KrausChannel { dim, kraus })
    }

    pub fn identity(dim: usize) -> Self {
        KrausChannel {
            dim,
            kraus: vec![DenseOperator::identity(dim)],
        }
    }

    pub fn unitary(u: DenseOperator) -> Result<Self> {
        if !u.is_unitary(1e-10) {
            return Err(Error::Channel("operator is not unitary".into()));
        }
        Ok(KrausChannel {
            dim: u.dim(),
            kraus: vec![u],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus_operators(&self) -> &[DenseOperator] {
        &self.kraus
    }

    pub fn apply(&self, rho: &DenseOperator) -> Result<DenseOperator> {
        let mut out = DenseOperator::zeros(self.dim);
        for k in &self.kraus {
            out = out.add(&k.mul(rho)?.mul(&k.adjoint())?)?;
        }
        Ok(out)
    }
}

/// Apply the two channels in control-conditioned order:
/// W_ij = K2_i K1_j tensor |0><0| + K1_j K2_i tensor |1><1|, summed as
/// sum_ij W_ij (rho tensor rho_control) W_ij^dag.
pub fn switch_channel_apply(
    phi1: &KrausChannel,
    phi2: &KrausChannel,
    rho_sys: &DenseOperator,
    rho_control: &DenseOperator,
) -> Result<DenseOperator> {
    if phi1.dim != phi2.dim {
        return Err(Error::DimMismatch {
            a: phi1.dim,
            b: phi2.dim,
        });
    }
    if rho_sys.dim() != phi1.dim {
        return Err(Error::DimMismatch {
            a: phi1.dim,
            b: rho_sys.dim(),
        });
    }
    if rho_control.dim() != 2 {
        return Err(Error::DimMismatch {
            a: 2,
            b: rho_control.dim(),
        });
    }
    let mut p0 = DenseOperator::zeros(2);
    p0.set(0, 0, C64::new(1.0, 0.0));
    let mut p1 = DenseOperator::zeros(2);
    p1.set(1, 1, C64::new(1.0, 0.0));

    let joint = rho_sys.kron(rho_control);
    let mut out = DenseOperator::zeros(joint.dim());
    for k2 in &phi2.kraus {
        for k1 in &phi1.kraus {
            let forward = k2.mul(k1)?.kron(&p0);
            let swapped = k1.mul(k2)?.kron(&p1);
            let w = forward.add(&swapped)?;
            out = out.add(&w.mul(&joint)?.mul(&w.adjoint())?)?;
        }
    }
    Ok(out)
}

/// Hermiticity, unit trace, and positive semidefiniteness, all within tol.
pub fn density_matrix_checks(rho: &DenseOperator, tol: f64) -> Result<()> {
    if rho.max_abs_diff(&rho.adjoint())? > tol {
        return Err(Error::Domain("density matrix is not Hermitian".into()));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        return Err(Error::Domain(format!(
            "density matrix trace {tr} differs from 1"
        )));
    }
    let eigs = crate::dense::hermitian_eigenvalues(rho)?;
    if let Some(min) = eigs.first() {
        if *min < -tol {
            return Err(Error::Domain(format!(
                "density matrix has negative eigenvalue {min:.3e}"
            )));
        }
    }
    Ok(())
}
