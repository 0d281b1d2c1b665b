use std::io::Write;

use serde::{Deserialize, Serialize};

use super::PointMeasure;
use crate::error::{invalid, Error, Result};
use crate::spacetime::{BoxRegion, Event};
use crate::tolerances::GRID_MASS;

/// Uniform axis-aligned grid over a box. Cells are numbered row-major with
/// the last axis varying fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub region: BoxRegion,
    pub counts: Vec<usize>,
}

impl Grid {
    pub fn new(region: BoxRegion, counts: Vec<usize>) -> Result<Self> {
        if counts.len() != region.dim() {
            return Err(Error::DimensionMismatch { expected: region.dim(), got: counts.len() });
        }
        if counts.contains(&0) {
            return Err(invalid("counts", "every axis needs at least one cell"));
        }
        Ok(Grid { region, counts })
    }

    /// Grid with the same resolution along every axis.
    pub fn square(region: BoxRegion, per_axis: usize) -> Result<Self> {
        let n = region.dim();
        Self::new(region, vec![per_axis; n])
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn n_cells(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        (self.region.hi[axis] - self.region.lo[axis]) / self.counts[axis] as f64
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|k| self.spacing(k)).product()
    }

    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.counts).fold(0, |acc, (&i, &c)| acc * c + i)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for k in (0..self.dim()).rev() {
            out[k] = flat % self.counts[k];
            flat /= self.counts[k];
        }
        out
    }

    /// Cell containing `x`; points on the upper boundary belong to the last cell.
    pub fn cell_of(&self, x: &[f64]) -> Option<usize> {
        if x.len() != self.dim() {
            return None;
        }
        let mut idx = 0;
        for k in 0..self.dim() {
            let (lo, hi) = (self.region.lo[k], self.region.hi[k]);
            if !(x[k] >= lo && x[k] <= hi) {
                return None;
            }
            let i = (((x[k] - lo) / self.spacing(k)) as usize).min(self.counts[k] - 1);
            idx = idx * self.counts[k] + i;
        }
        Some(idx)
    }

    pub fn cell_center(&self, flat: usize) -> Event {
        let multi = self.multi_index(flat);
        Event::from(
            (0..self.dim()).map(|k| self.region.lo[k] + (multi[k] as f64 + 0.5) * self.spacing(k)).collect::<Vec<_>>(),
        )
    }

    pub fn cell_box(&self, flat: usize) -> BoxRegion {
        let multi = self.multi_index(flat);
        let lo: Vec<f64> = (0..self.dim()).map(|k| self.region.lo[k] + multi[k] as f64 * self.spacing(k)).collect();
        let hi: Vec<f64> = (0..self.dim()).map(|k| lo[k] + self.spacing(k)).collect();
        BoxRegion { lo, hi }
    }

    /// The grid obtained by splitting every cell into `factor` pieces per axis.
    pub fn refined(&self, factor: usize) -> Grid {
        Grid { region: self.region.clone(), counts: self.counts.iter().map(|c| c * factor.max(1)).collect() }
    }
}

/// Reference measure given by its masses on grid cells or DAG nodes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceMeasure {
    pub kind: ReferenceKind,
    masses: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceKind {
    Lebesgue,
    NodeWeights,
}

impl ReferenceMeasure {
    /// Lebesgue measure restricted to the cells of `grid`.
    pub fn lebesgue(grid: &Grid) -> Self {
        ReferenceMeasure { kind: ReferenceKind::Lebesgue, masses: vec![grid.cell_volume(); grid.n_cells()] }
    }

    /// Node weights `m_i >= 0` of a discrete space.
    pub fn node_weights(masses: Vec<f64>) -> Result<Self> {
        if masses.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
            return Err(invalid("masses", "reference masses must be finite and non-negative"));
        }
        Ok(ReferenceMeasure { kind: ReferenceKind::NodeWeights, masses })
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }
}

/// Probability measure with piecewise-constant density on the cells of a grid.
///
/// The cell probabilities `p_i = rho_i m_i` are stored; densities are
/// recovered against a reference measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeasure {
    pub grid: Grid,
    masses: Vec<f64>,
}

impl GridMeasure {
    pub fn from_masses(grid: Grid, masses: Vec<f64>) -> Result<Self> {
        if masses.len() != grid.n_cells() {
            return Err(Error::GridMismatch(format!("{} masses for {} cells", masses.len(), grid.n_cells())));
        }
        if masses.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::DegenerateWeights("cell masses must be finite and non-negative".into()));
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > GRID_MASS {
            return Err(Error::DegenerateWeights(format!("cell masses sum to {total}")));
        }
        Ok(GridMeasure { grid, masses })
    }

    /// Measure with density `rho_i` relative to `m`.
    pub fn from_density(grid: Grid, density: &[f64], m: &ReferenceMeasure) -> Result<Self> {
        if density.len() != m.masses.len() {
            return Err(Error::GridMismatch(format!(
                "{} densities for {} reference cells",
                density.len(),
                m.masses.len()
            )));
        }
        let masses = density.iter().zip(&m.masses).map(|(r, mi)| r * mi).collect();
        Self::from_masses(grid, masses)
    }

    /// Normalized Lebesgue measure on the cells whose centers satisfy `inside`.
    pub fn uniform_where(grid: Grid, inside: impl Fn(&Event) -> bool) -> Result<Self> {
        let w: Vec<f64> = (0..grid.n_cells()).map(|i| if inside(&grid.cell_center(i)) { 1.0 } else { 0.0 }).collect();
        let total: f64 = w.iter().sum();
        if total == 0.0 {
            return Err(Error::EmptyRegion);
        }
        Self::from_masses(grid, w.into_iter().map(|x| x / total).collect())
    }

    pub fn uniform(grid: Grid) -> Result<Self> {
        Self::uniform_where(grid, |_| true)
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Density `rho_i = p_i / m_i`, infinite on charged null cells.
    pub fn density(&self, m: &ReferenceMeasure) -> Result<Vec<f64>> {
        self.check_reference(m)?;
        Ok(self
            .masses
            .iter()
            .zip(&m.masses)
            .map(|(p, mi)| {
                if *p == 0.0 {
                    0.0
                } else if *mi == 0.0 {
                    f64::INFINITY
                } else {
                    p / mi
                }
            })
            .collect())
    }

    pub fn check_reference(&self, m: &ReferenceMeasure) -> Result<()> {
        if m.masses.len() != self.masses.len() {
            return Err(Error::GridMismatch(format!(
                "measure has {} cells, reference has {}",
                self.masses.len(),
                m.masses.len()
            )));
        }
        Ok(())
    }

    /// Indices of charged cells.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.masses.iter().enumerate().filter(|(_, p)| **p > 0.0).map(|(i, _)| i)
    }

    /// Atoms at the centers of charged cells.
    pub fn to_point_measure(&self) -> PointMeasure<Event> {
        let (support, weights) = self.support().map(|i| (self.grid.cell_center(i), self.masses[i])).unzip();
        PointMeasure::normalized(support, weights).expect("grid measure has positive mass")
    }

    /// Splits each cell into `factor^n` equal sub-cells of equal mass.
    pub fn refined(&self, factor: usize) -> GridMeasure {
        let fine = self.grid.refined(factor);
        let share = (factor.max(1) as f64).powi(self.grid.dim() as i32);
        let masses = (0..fine.n_cells())
            .map(|j| {
                let coarse: Vec<usize> = fine.multi_index(j).iter().map(|i| i / factor.max(1)).collect();
                self.masses[self.grid.flat_index(&coarse)] / share
            })
            .collect();
        GridMeasure { grid: fine, masses }
    }

    /// Writes `(cell, center coordinates, density)` rows.
    pub fn write_density_csv<W: Write>(&self, m: &ReferenceMeasure, out: W) -> Result<()> {
        let density = self.density(m)?;
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["cell".to_string()];
        header.extend((0..self.grid.dim()).map(|k| format!("x{k}")));
        header.push("density".into());
        w.write_record(&header)?;
        for (i, rho) in density.iter().enumerate() {
            let mut row = vec![i.to_string()];
            row.extend(self.grid.cell_center(i).coords().iter().map(|c| c.to_string()));
            row.push(rho.to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Bins atoms into the cells containing them; mass is preserved exactly and
/// atoms outside the grid are an error.
pub fn bin_point_measure(mu: &PointMeasure<Event>, grid: &Grid) -> Result<GridMeasure> {
    let mut masses = vec![0.0; grid.n_cells()];
    for (x, w) in mu.iter() {
        let cell = grid
            .cell_of(x.coords())
            .ok_or_else(|| Error::GridMismatch(format!("atom {:?} lies outside the grid", x.coords())))?;
        masses[cell] += w;
    }
    GridMeasure::from_masses(grid.clone(), masses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_grid(n: usize) -> Grid {
        Grid::square(BoxRegion::new(vec![0.0, 0.0], vec![1.0, 2.0]).unwrap(), n).unwrap()
    }

    #[test]
    fn indexing_round_trips() {
        let g = Grid::new(BoxRegion::new(vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0]).unwrap(), vec![2, 3, 4]).unwrap();
        for i in 0..g.n_cells() {
            assert_eq!(g.flat_index(&g.multi_index(i)), i);
            assert_eq!(g.cell_of(g.cell_center(i).coords()), Some(i));
        }
        assert_eq!(g.cell_of(&[1.0, 1.0, 1.0]), Some(g.n_cells() - 1));
        assert_eq!(g.cell_of(&[1.5, 0.0, 0.0]), None);
    }

    #[test]
    fn binning_preserves_mass() {
        let g = unit_grid(4);
        let mu = PointMeasure::new(
            vec![Event::from([0.1, 0.1]), Event::from([0.12, 0.11]), Event::from([0.9, 1.9])],
            vec![0.25, 0.25, 0.5],
        )
        .unwrap();
        let b = bin_point_measure(&mu, &g).unwrap();
        assert_eq!(b.masses()[0], 0.5);
        assert_eq!(b.masses()[g.n_cells() - 1], 0.5);
        let outside = PointMeasure::dirac(Event::from([3.0, 0.0]));
        assert!(bin_point_measure(&outside, &g).is_err());
    }

    #[test]
    fn density_against_lebesgue() {
        let g = unit_grid(2);
        let m = ReferenceMeasure::lebesgue(&g);
        let mu = GridMeasure::uniform(g).unwrap();
        for rho in mu.density(&m).unwrap() {
            assert!((rho - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn csv_has_one_row_per_cell() {
        let g = unit_grid(2);
        let m = ReferenceMeasure::lebesgue(&g);
        let mu = GridMeasure::uniform(g).unwrap();
        let mut buf = Vec::new();
        mu.write_density_csv(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("cell,x0,x1,density"));
    }
}
