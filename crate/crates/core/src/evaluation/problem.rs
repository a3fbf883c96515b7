use crate::error::{Error, Result};

/// Supervised regression data: a row-major feature matrix plus targets.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionProblem {
    data: Vec<f64>,
    n_features: usize,
    targets: Vec<f64>,
    feature_names: Vec<String>,
}

/// Points in the reference dataset.
pub const REFERENCE_SAMPLES: usize = 200;

impl RegressionProblem {
    /// Features are named `x0..x{n-1}`.
    pub fn new(rows: Vec<Vec<f64>>, targets: Vec<f64>) -> Result<Self> {
        let n_features = rows.first().map_or(0, Vec::len);
        let names = (0..n_features).map(|i| format!("x{i}")).collect();
        Self::with_names(rows, targets, names)
    }

    pub fn with_names(
        rows: Vec<Vec<f64>>,
        targets: Vec<f64>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Dataset("no samples".into()));
        }
        if rows.len() != targets.len() {
            return Err(Error::Dataset(format!(
                "{} feature rows but {} targets",
                rows.len(),
                targets.len()
            )));
        }
        let n_features = feature_names.len();
        if n_features == 0 {
            return Err(Error::Dataset("no feature columns".into()));
        }
        let mut data = Vec::with_capacity(rows.len() * n_features);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_features {
                return Err(Error::Dataset(format!(
                    "row {i} has {} features, expected {n_features}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Dataset(format!("row {i} has a non-finite feature")));
            }
            data.extend_from_slice(row);
        }
        if targets.iter().any(|v| !v.is_finite()) {
            return Err(Error::Dataset("non-finite target".into()));
        }
        Ok(RegressionProblem {
            data,
            n_features,
            targets,
            feature_names,
        })
    }

    /// Target `x + 2y + 3z` on a fixed 200-point rank-1 lattice over
    /// `[-10, 10]^3`, features named `x`, `y`, `z`.
    pub fn reference() -> Self {
        const GENERATOR: [usize; 3] = [1, 41, 81];
        let n = REFERENCE_SAMPLES;
        let mut rows = Vec::with_capacity(n);
        let mut targets = Vec::with_capacity(n);
        for i in 0..n {
            let p: Vec<f64> = GENERATOR
                .iter()
                .map(|g| -10.0 + 20.0 * ((g * i % n) as f64 + 0.5) / n as f64)
                .collect();
            targets.push(p[0] + 2.0 * p[1] + 3.0 * p[2]);
            rows.push(p);
        }
        let names = ["x", "y", "z"].map(String::from).to_vec();
        Self::with_names(rows, targets, names).expect("reference data is well formed")
    }

    pub fn n_samples(&self) -> usize {
        self.targets.len()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n_features)
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|n| n == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_checks() {
        assert!(RegressionProblem::new(vec![], vec![]).is_err());
        assert!(RegressionProblem::new(vec![vec![1.0]], vec![1.0, 2.0]).is_err());
        assert!(RegressionProblem::new(vec![vec![1.0], vec![1.0, 2.0]], vec![1.0, 2.0]).is_err());
        assert!(RegressionProblem::new(vec![vec![]], vec![1.0]).is_err());
        let p =
            RegressionProblem::new(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![5.0, 6.0]).unwrap();
        assert_eq!(p.row(1), &[3.0, 4.0]);
        assert_eq!(p.feature_names(), ["x0", "x1"]);
    }

    #[test]
    fn reference_lattice() {
        let p = RegressionProblem::reference();
        assert_eq!(p.n_samples(), 200);
        for (row, &t) in p.rows().zip(p.targets()) {
            assert!(row.iter().all(|v| (-10.0..=10.0).contains(v)));
            assert_eq!(t, row[0] + 2.0 * row[1] + 3.0 * row[2]);
        }
        let mut xs: Vec<f64> = p.rows().map(|r| r[0]).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        assert_eq!(xs.len(), 200);
    }
}
