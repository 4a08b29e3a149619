//! Two-sided paired t-test for per-query metric comparisons.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

/// Test outcome. `degenerate` marks zero-variance inputs: all differences
/// zero reports t = 0, p = 1; a nonzero mean with zero variance reports an
/// infinite t with p = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairedTTest {
    pub t: f64,
    pub p: f64,
    pub degenerate: bool,
}

/// Paired t-test on equal-length samples (n >= 2); p-value from the t
/// distribution with n-1 degrees of freedom.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<PairedTTest> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!(
            "paired samples differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.len() < 2 {
        return Err(Error::InvalidParameter(
            "paired t-test needs at least 2 paired samples".to_string(),
        ));
    }

    let n = a.len() as f64;
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0);

    if var == 0.0 {
        return Ok(if mean == 0.0 {
            PairedTTest {
                t: 0.0,
                p: 1.0,
                degenerate: true,
            }
        } else {
            PairedTTest {
                t: if mean > 0.0 {
                    f64::INFINITY
                } else {
                    f64::NEG_INFINITY
                },
                p: 0.0,
                degenerate: true,
            }
        });
    }

    let t = mean / (var.sqrt() / n.sqrt());
    let dist = StudentsT::new(0.0, 1.0, n - 1.0)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let p = 2.0 * (1.0 - dist.cdf(t.abs()));
    Ok(PairedTTest {
        t,
        p,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identical_samples_report_t_zero_p_one() {
        let a = [0.3, 0.5, 0.7];
        let res = paired_t_test(&a, &a).unwrap();
        assert_eq!(res.t, 0.0);
        assert_eq!(res.p, 1.0);
        assert!(res.degenerate);
    }

    #[test]
    fn constant_positive_differences_flagged_infinite() {
        let a = [2.0, 3.0, 4.0, 5.0];
        let b = [1.0, 2.0, 3.0, 4.0];
        let res = paired_t_test(&a, &b).unwrap();
        assert!(res.t.is_infinite() && res.t > 0.0);
        assert_eq!(res.p, 0.0);
        assert!(res.degenerate);
    }

    #[test]
    fn matches_reference_statistics_implementation() {
        // differences [0.1, -0.1, 0.2, 0.0, 0.3]; scipy.stats.ttest_1samp
        // gives t = 1.4142135623730951, p = 0.23019964108049873
        let a = [0.1, -0.1, 0.2, 0.0, 0.3];
        let b = [0.0; 5];
        let res = paired_t_test(&a, &b).unwrap();
        assert!(!res.degenerate);
        assert_abs_diff_eq!(res.t, 1.4142135623730951, epsilon = 1e-12);
        assert_abs_diff_eq!(res.p, 0.23019964108049873, epsilon = 1e-9);
    }

    #[test]
    fn rejects_mismatched_or_short_inputs() {
        assert!(paired_t_test(&[1.0], &[1.0]).is_err());
        assert!(paired_t_test(&[1.0, 2.0], &[1.0]).is_err());
    }
}
