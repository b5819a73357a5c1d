//! Position spread, distinguishability measures, and coin-position
//! entanglement observables.

use crate::engine::Trajectory;
use crate::state::{partial_trace_position, CoinDensityMatrix};
use crate::{Error, Result};

/// Standard deviation of position under a normalized distribution.
pub fn spread(dist: &[(i64, f64)]) -> Result<f64> {
    let sum: f64 = dist.iter().map(|(_, p)| p).sum();
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::UnnormalizedDistribution { sum });
    }
    let mean: f64 = dist.iter().map(|(x, p)| *x as f64 * p).sum();
    let second: f64 = dist.iter().map(|(x, p)| (*x as f64).powi(2) * p).sum();
    Ok((second - mean * mean).max(0.0).sqrt())
}

/// Trace distance between two coin states: half the absolute eigenvalue
/// sum of the (Hermitian) difference, by the 2x2 closed form.
pub fn trace_distance(r1: &CoinDensityMatrix, r2: &CoinDensityMatrix) -> Result<f64> {
    r1.validate()?;
    r2.validate()?;
    let d00 = r1.m[0][0] - r2.m[0][0];
    let d01 = r1.m[0][1] - r2.m[0][1];
    let d11 = r1.m[1][1] - r2.m[1][1];
    let eigs = crate::dense::hermitian_eigenvalues_2x2(d00, d01, d11);
    Ok(0.5 * (eigs[0].abs() + eigs[1].abs()))
}

/// Reduced coin state at every step of a trajectory.
pub fn coin_trajectory(traj: &Trajectory) -> Result<Vec<CoinDensityMatrix>> {
    traj.states.iter().map(partial_trace_position).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlpResult {
    /// Sum of all increases of the distinguishability series.
    pub value: f64,
    /// Maximal increasing runs as (start, end) index pairs.
    pub revival_intervals: Vec<(usize, usize)>,
}

/// Information-backflow measure over a distinguishability series: total
/// increase, plus where the revivals happen.
pub fn blp_measure(series: &[f64]) -> BlpResult {
    if series.len() < 2 {
        return BlpResult {
            value: 0.0,
            revival_intervals: Vec::new(),
        };
    }
    let mut value = 0.0;
    let mut intervals = Vec::new();
    let mut run_start: Option<usize> = None;
    for t in 1..series.len() {
        let delta = series[t] - series[t - 1];
        if delta > 0.0 {
            value += delta;
            if run_start.is_none() {
                run_start = Some(t - 1);
            }
        } else if let Some(start) = run_start.take() {
            intervals.push((start, t - 1));
        }
    }
    if let Some(start) = run_start {
        intervals.push((start, series.len() - 1));
    }
    BlpResult {
        value,
        revival_intervals: intervals,
    }
}

/// Entropy of the coin state in bits.
pub fn entanglement_entropy(rho: &CoinDensityMatrix) -> Result<f64> {
    rho.validate()?;
    let mut s = 0.0;
    for lam in rho.eigenvalues() {
        let l = lam.clamp(0.0, 1.0);
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    Ok(s)
}

/// Mixedness-based entanglement of a pure joint state via its reduced
/// coin state: sqrt(2 (1 - Tr rho^2)).
pub fn concurrence(rho: &CoinDensityMatrix) -> Result<f64> {
    rho.validate()?;
    let c2 = 2.0 * (1.0 - rho.purity());
    Ok(c2.clamp(0.0, 1.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn diag(p: f64) -> CoinDensityMatrix {
        CoinDensityMatrix::new([
            [c(p, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(1.0 - p, 0.0)],
        ])
    }

    fn plus_projector(sign: f64) -> CoinDensityMatrix {
        CoinDensityMatrix::new([
            [c(0.5, 0.0), c(sign * 0.5, 0.0)],
            [c(sign * 0.5, 0.0), c(0.5, 0.0)],
        ])
    }

    #[test]
    fn spread_known_distributions() {
        assert_eq!(spread(&[(0, 1.0)]).unwrap(), 0.0);
        assert!((spread(&[(-1, 0.5), (1, 0.5)]).unwrap() - 1.0).abs() < 1e-15);
        let two = spread(&[(-2, 0.25), (0, 0.5), (2, 0.25)]).unwrap();
        assert!((two - 2.0f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            spread(&[(0, 0.5)]),
            Err(Error::UnnormalizedDistribution { .. })
        ));
    }

    #[test]
    fn trace_distance_known_pairs() {
        let plus = plus_projector(1.0);
        let minus = plus_projector(-1.0);
        assert!((trace_distance(&plus, &minus).unwrap() - 1.0).abs() < 1e-14);
        assert!(trace_distance(&plus, &plus).unwrap() < 1e-15);
        let d = trace_distance(&diag(0.75), &diag(0.25)).unwrap();
        assert!((d - 0.5).abs() < 1e-14);
    }

    #[test]
    fn backflow_measure_and_intervals() {
        let r = blp_measure(&[1.0, 0.0, 0.5, 0.3, 0.6]);
        assert!((r.value - 0.8).abs() < 1e-15);
        assert_eq!(r.revival_intervals, vec![(1, 2), (3, 4)]);

        let mono = blp_measure(&[1.0, 0.8, 0.5, 0.2]);
        assert_eq!(mono.value, 0.0);
        assert!(mono.revival_intervals.is_empty());

        let short = blp_measure(&[1.0]);
        assert_eq!(short.value, 0.0);

        // a run reaching the end is closed at the last index
        let tail = blp_measure(&[0.5, 0.2, 0.4, 0.9]);
        assert!((tail.value - 0.7).abs() < 1e-15);
        assert_eq!(tail.revival_intervals, vec![(1, 3)]);
    }

    #[test]
    fn entropy_known_states() {
        assert!(entanglement_entropy(&diag(1.0)).unwrap() < 1e-15);
        assert!((entanglement_entropy(&diag(0.5)).unwrap() - 1.0).abs() < 1e-14);
        let s = entanglement_entropy(&diag(0.25)).unwrap();
        assert!((s - 0.8112781244591328).abs() < 1e-12);
    }

    #[test]
    fn concurrence_known_states() {
        assert!(concurrence(&plus_projector(1.0)).unwrap() < 1e-7);
        assert!((concurrence(&diag(0.5)).unwrap() - 1.0).abs() < 1e-14);
        // purity 0.625 gives sqrt(0.75)
        let rho = diag(0.75);
        assert!((rho.purity() - 0.625).abs() < 1e-15);
        assert!((concurrence(&rho).unwrap() - 0.75f64.sqrt()).abs() < 1e-14);
    }
}
