//! Pearson correlation between the sigma and div scores of a record set.

use thiserror::Error;

use super::records::RecordRow;

#[derive(Debug, Error, PartialEq)]
pub enum CorrError {
    #[error("need at least 3 records for a correlation, got {0}")]
    TooFewRecords(usize),
    #[error("{0} has zero variance, correlation is undefined")]
    DegenerateVariance(&'static str),
}

/// Pearson correlation coefficient of paired samples.
pub fn pearson(pairs: &[(f64, f64)]) -> Result<f64, CorrError> {
    if pairs.len() < 3 {
        return Err(CorrError::TooFewRecords(pairs.len()));
    }
    let len = pairs.len() as f64;
    let mean_x = pairs.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = pairs.iter().map(|p| p.1).sum::<f64>() / len;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for &(x, y) in pairs {
        cov += (x - mean_x) * (y - mean_y);
        var_x += (x - mean_x) * (x - mean_x);
        var_y += (y - mean_y) * (y - mean_y);
    }
    if var_x == 0.0 {
        return Err(CorrError::DegenerateVariance("sigma"));
    }
    if var_y == 0.0 {
        return Err(CorrError::DegenerateVariance("div"));
    }
    Ok(cov / (var_x.sqrt() * var_y.sqrt()))
}

/// The (sigma, div) pairs of a record set, in record order; scatter
/// data for external plotting.
pub fn sigma_div_pairs(rows: &[RecordRow]) -> Vec<(f64, f64)> {
    rows.iter().map(|r| (r.sigma, r.div)).collect()
}

/// Pearson correlation between sigma and div over the records.
pub fn correlation_report(rows: &[RecordRow]) -> Result<f64, CorrError> {
    pearson(&sigma_div_pairs(rows))
}

/// Scatter CSV (`sigma,div`) for plotting alongside the coefficient.
pub fn scatter_csv(rows: &[RecordRow]) -> String {
    let mut out = String::from("sigma,div\n");
    for (x, y) in sigma_div_pairs(rows) {
        out.push_str(&format!("{x},{y}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_anticorrelation() {
        let pairs: Vec<(f64, f64)> = (0..10)
            .map(|i| {
                let s = i as f64 / 10.0;
                (s, 1.0 - s)
            })
            .collect();
        let r = pearson(&pairs).unwrap();
        assert!((r + 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_series_is_undefined_not_zero() {
        let pairs = vec![(0.5, 0.1), (0.5, 0.2), (0.5, 0.3)];
        assert_eq!(pearson(&pairs), Err(CorrError::DegenerateVariance("sigma")));
    }

    #[test]
    fn too_few_records() {
        assert_eq!(pearson(&[(0.0, 1.0)]), Err(CorrError::TooFewRecords(1)));
    }

    #[test]
    fn scatter_lists_pairs_in_order() {
        let pairs = vec![(0.25, 0.75), (0.5, 0.5)];
        let mut rows = Vec::new();
        for (sigma, div) in &pairs {
            rows.push(RecordRow {
                instance: "unit-5".into(),
                n: 5,
                mu: 2,
                alpha: 0.0,
                measure: crate::diversity::Measure::Ed,
                mutation: crate::mutation::MutationKind::TwoOpt,
                seed: 0,
                iterations: 0,
                terminated: crate::ea::TerminationReason::OptimumReached,
                gtype: 0,
                gtype_percent: 100.0,
                div: *div,
                sigma: *sigma,
            });
        }
        assert_eq!(scatter_csv(&rows), "sigma,div\n0.25,0.75\n0.5,0.5\n");
    }
}
