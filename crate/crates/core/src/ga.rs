//! Fixed-length GA genomes: bit vectors and bounded real vectors.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore};
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::individual::Genome;
use crate::population::Creator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    Bit,
    Real,
}

/// Shape shared by every vector in a subpopulation.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSpec {
    kind: CellKind,
    /// One `(lo, hi)` per cell; `(0, 1)` for bits.
    bounds: Vec<(f64, f64)>,
}

impl VectorSpec {
    pub fn bits(length: usize) -> Result<Self> {
        Self::new(CellKind::Bit, vec![(0.0, 1.0); length])
    }

    pub fn reals(length: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(CellKind::Real, vec![(lo, hi); length])
    }

    pub fn reals_per_cell(bounds: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(CellKind::Real, bounds)
    }

    fn new(kind: CellKind, bounds: Vec<(f64, f64)>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidVector("length must be >= 1".into()));
        }
        for (i, &(lo, hi)) in bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite()) || lo > hi {
                return Err(Error::InvalidVector(format!(
                    "cell {i}: invalid bounds ({lo}, {hi})"
                )));
            }
        }
        Ok(VectorSpec { kind, bounds })
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn check_cell(&self, i: usize, v: f64) -> Result<()> {
        let ok = match self.kind {
            CellKind::Bit => v == 0.0 || v == 1.0,
            CellKind::Real => {
                let (lo, hi) = self.bounds[i];
                v.is_finite() && lo <= v && v <= hi
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidVector(format!(
                "cell {i}: value {v} out of domain"
            )))
        }
    }
}

/// Fixed-length vector of bit or real cells.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorGenome {
    cells: Vec<f64>,
    spec: Arc<VectorSpec>,
}

impl VectorGenome {
    pub fn new(cells: Vec<f64>, spec: Arc<VectorSpec>) -> Result<Self> {
        if cells.len() != spec.len() {
            return Err(Error::InvalidVector(format!(
                "expected {} cells, got {}",
                spec.len(),
                cells.len()
            )));
        }
        for (i, &v) in cells.iter().enumerate() {
            spec.check_cell(i, v)?;
        }
        Ok(VectorGenome { cells, spec })
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn spec(&self) -> &Arc<VectorSpec> {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn kind(&self) -> CellKind {
        self.spec.kind
    }

    /// Parses the one-line comma-separated text form.
    pub fn parse(text: &str, spec: &Arc<VectorSpec>) -> Result<Self> {
        let line = text.trim_end_matches(['\n', '\r']);
        if line.contains('\n') {
            return Err(Error::InvalidVector("expected a single line".into()));
        }
        let cells = line
            .split(',')
            .enumerate()
            .map(|(i, tok)| {
                tok.trim().parse::<f64>().map_err(|_| {
                    Error::InvalidVector(format!("cell {i}: `{}` is not a number", tok.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        VectorGenome::new(cells, spec.clone())
    }
}

impl fmt::Display for VectorGenome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Uniform random vector: fair coin per bit, uniform in bounds per real cell.
pub fn create_random_vector(spec: &Arc<VectorSpec>, rng: &mut dyn RngCore) -> VectorGenome {
    let cells = spec
        .bounds
        .iter()
        .map(|&(lo, hi)| match spec.kind {
            CellKind::Bit => f64::from(u8::from(rng.random_bool(0.5))),
            CellKind::Real if lo == hi => lo,
            CellKind::Real => rng.random_range(lo..=hi),
        })
        .collect();
    VectorGenome {
        cells,
        spec: spec.clone(),
    }
}

fn check_pair(a: &VectorGenome, b: &VectorGenome) -> Result<()> {
    if a.len() != b.len() || a.kind() != b.kind() {
        return Err(Error::InvalidVector(format!(
            "parents differ: lengths {} / {}, kinds {:?} / {:?}",
            a.len(),
            b.len(),
            a.kind(),
            b.kind()
        )));
    }
    Ok(())
}

/// Swaps the suffixes starting at `cut`.
pub fn one_point_crossover_at(
    a: &VectorGenome,
    b: &VectorGenome,
    cut: usize,
) -> Result<(VectorGenome, VectorGenome)> {
    check_pair(a, b)?;
    if cut > a.len() {
        return Err(Error::InvalidVector(format!(
            "cut {cut} beyond length {}",
            a.len()
        )));
    }
    let mut c1 = a.clone();
    let mut c2 = b.clone();
    c1.cells[cut..].copy_from_slice(&b.cells[cut..]);
    c2.cells[cut..].copy_from_slice(&a.cells[cut..]);
    Ok((c1, c2))
}

/// One-point crossover with the cut drawn uniformly from `1..=len-1`.
/// Length-one parents are returned unchanged.
pub fn one_point_crossover(
    a: &VectorGenome,
    b: &VectorGenome,
    rng: &mut dyn RngCore,
) -> Result<(VectorGenome, VectorGenome)> {
    check_pair(a, b)?;
    if a.len() < 2 {
        return Ok((a.clone(), b.clone()));
    }
    let cut = rng.random_range(1..a.len());
    one_point_crossover_at(a, b, cut)
}

/// Mutates each cell independently with probability `p`: bits flip, reals get
/// Gaussian noise with sigma = 10% of the cell range, clamped to bounds.
pub fn per_cell_mutation(g: &VectorGenome, p: f64, rng: &mut dyn RngCore) -> Result<VectorGenome> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::config(format!(
            "mutation probability {p} outside [0, 1]"
        )));
    }
    let mut out = g.clone();
    for (cell, &(lo, hi)) in out.cells.iter_mut().zip(&g.spec.bounds) {
        if !rng.random_bool(p) {
            continue;
        }
        match g.spec.kind {
            CellKind::Bit => *cell = 1.0 - *cell,
            CellKind::Real => {
                let sigma = 0.1 * (hi - lo);
                if sigma > 0.0 {
                    let noise = Normal::new(0.0, sigma).expect("positive sigma").sample(rng);
                    *cell = (*cell + noise).clamp(lo, hi);
                }
            }
        }
    }
    Ok(out)
}

/// Creator producing uniform random vectors of one shape.
#[derive(Debug, Clone)]
pub struct VectorCreator {
    pub spec: Arc<VectorSpec>,
}

impl Creator for VectorCreator {
    fn create(&self, rng: &mut dyn RngCore) -> Result<Genome> {
        Ok(Genome::Vector(create_random_vector(&self.spec, rng)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeded_rng;
    use proptest::prelude::*;

    fn bits(v: &[u8]) -> VectorGenome {
        let spec = Arc::new(VectorSpec::bits(v.len()).unwrap());
        VectorGenome::new(v.iter().map(|&b| f64::from(b)).collect(), spec).unwrap()
    }

    #[test]
    fn random_bits_are_bits() {
        let spec = Arc::new(VectorSpec::bits(4).unwrap());
        let g = create_random_vector(&spec, &mut seeded_rng(1));
        assert_eq!(g.len(), 4);
        assert!(g.cells().iter().all(|&c| c == 0.0 || c == 1.0));
    }

    #[test]
    fn degenerate_bounds() {
        let spec = Arc::new(VectorSpec::reals(2, 0.0, 0.0).unwrap());
        let g = create_random_vector(&spec, &mut seeded_rng(1));
        assert_eq!(g.cells(), &[0.0, 0.0]);
    }

    #[test]
    fn invalid_specs() {
        assert!(VectorSpec::reals(3, 1.0, 0.0).is_err());
        assert!(VectorSpec::bits(0).is_err());
    }

    #[test]
    fn bit_mean_is_one_half() {
        let spec = Arc::new(VectorSpec::bits(8).unwrap());
        let mut rng = seeded_rng(77);
        let n = 10_000;
        let mut sums = [0.0; 8];
        for _ in 0..n {
            let g = create_random_vector(&spec, &mut rng);
            for (s, c) in sums.iter_mut().zip(g.cells()) {
                *s += c;
            }
        }
        let sigma = (0.25 / n as f64).sqrt();
        for s in sums {
            assert!((s / n as f64 - 0.5).abs() < 4.0 * sigma);
        }
    }

    #[test]
    fn crossover_at_cut() {
        let (c1, c2) =
            one_point_crossover_at(&bits(&[1, 1, 1, 1]), &bits(&[0, 0, 0, 0]), 2).unwrap();
        assert_eq!(c1, bits(&[1, 1, 0, 0]));
        assert_eq!(c2, bits(&[0, 0, 1, 1]));
    }

    #[test]
    fn crossover_identical_parents() {
        let a = bits(&[1, 0, 1, 1, 0]);
        let (c1, c2) = one_point_crossover(&a, &a, &mut seeded_rng(3)).unwrap();
        assert_eq!(c1, a);
        assert_eq!(c2, a);
    }

    #[test]
    fn crossover_length_mismatch() {
        assert!(
            one_point_crossover(&bits(&[1, 0]), &bits(&[1, 0, 1]), &mut seeded_rng(0)).is_err()
        );
    }

    #[test]
    fn mutation_extremes() {
        let g = bits(&[1, 0, 1, 0]);
        let mut rng = seeded_rng(0);
        assert_eq!(per_cell_mutation(&g, 0.0, &mut rng).unwrap(), g);
        assert_eq!(
            per_cell_mutation(&g, 1.0, &mut rng).unwrap(),
            bits(&[0, 1, 0, 1])
        );
        assert!(per_cell_mutation(&g, 1.5, &mut rng).is_err());
    }

    #[test]
    fn half_mutation_flip_count() {
        let spec = Arc::new(VectorSpec::bits(10_000).unwrap());
        let g = VectorGenome::new(vec![0.0; 10_000], spec).unwrap();
        let m = per_cell_mutation(&g, 0.5, &mut seeded_rng(42)).unwrap();
        let flipped: f64 = m.cells().iter().sum();
        // binomial(10000, 0.5): sd = 50
        assert!((flipped - 5000.0).abs() < 200.0, "{flipped}");
    }

    #[test]
    fn text_form() {
        let g = bits(&[1, 0, 1]);
        assert_eq!(g.to_string(), "1,0,1");
        assert_eq!(VectorGenome::parse("1,0,1\n", g.spec()).unwrap(), g);
        assert!(VectorGenome::parse("1,2,1", g.spec()).is_err());
        assert!(VectorGenome::parse("1,0", g.spec()).is_err());
        assert!(VectorGenome::parse("1,a,0", g.spec()).is_err());
        let spec = Arc::new(VectorSpec::reals(2, -1.0, 1.0).unwrap());
        let r = VectorGenome::parse("0.25, -1", &spec).unwrap();
        assert_eq!(r.to_string(), "0.25,-1");
    }

    proptest! {
        #[test]
        fn operators_preserve_shape_and_bounds(seed in any::<u64>(), len in 1usize..40, p in 0.0f64..=1.0) {
            let mut rng = seeded_rng(seed);
            let spec = Arc::new(VectorSpec::reals(len, -2.0, 3.0).unwrap());
            let a = create_random_vector(&spec, &mut rng);
            let b = create_random_vector(&spec, &mut rng);
            let (c1, c2) = one_point_crossover(&a, &b, &mut rng).unwrap();
            for i in 0..len {
                let mut parents = [a.cells()[i], b.cells()[i]];
                let mut kids = [c1.cells()[i], c2.cells()[i]];
                parents.sort_by(f64::total_cmp);
                kids.sort_by(f64::total_cmp);
                prop_assert_eq!(parents, kids);
            }
            let m = per_cell_mutation(&c1, p, &mut rng).unwrap();
            prop_assert_eq!(m.len(), len);
            prop_assert!(m.cells().iter().all(|c| (-2.0..=3.0).contains(c)));
        }
    }
}
