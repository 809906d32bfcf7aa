//! Node deployments: homogeneous Poisson point processes, AP location
//! datasets, equirectangular projection, grid partitioning and
//! nearest-neighbour statistics.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{DssError, Result};
use crate::model::NodeSet;
use crate::rng;

/// Mean Earth radius used by the projection, meters.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Axis-aligned rectangle in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub width: f64,
    pub height: f64,
    pub x0: f64,
    pub y0: f64,
}

impl Region {
    pub fn new(width: f64, height: f64) -> Self {
        Self {
            width,
            height,
            x0: 0.0,
            y0: 0.0,
        }
    }

    /// Square region of the given area, anchored at the origin.
    pub fn square_km2(area_km2: f64) -> Self {
        let side = (area_km2 * 1e6).sqrt();
        Self::new(side, side)
    }

    pub fn is_valid(&self) -> bool {
        self.width > 0.0
            && self.height > 0.0
            && self.width.is_finite()
            && self.height.is_finite()
            && self.x0.is_finite()
            && self.y0.is_finite()
    }

    pub fn area_m2(&self) -> f64 {
        self.width * self.height
    }

    pub fn area_km2(&self) -> f64 {
        self.area_m2() / 1e6
    }

    /// Half-open membership test: `[x0, x0 + width) × [y0, y0 + height)`.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x < self.x0 + self.width && y >= self.y0 && y < self.y0 + self.height
    }

    fn sample_point<R: Rng>(&self, rng: &mut R) -> (f64, f64) {
        (
            self.x0 + rng.random::<f64>() * self.width,
            self.y0 + rng.random::<f64>() * self.height,
        )
    }
}

/// Homogeneous Poisson point process with `density` nodes per km².
pub fn generate_ppp(density: f64, region: &Region, seed: u64) -> Result<NodeSet> {
    if density.is_nan() || density < 0.0 {
        return Err(DssError::NegativeDensity(density));
    }
    if !region.is_valid() {
        return Err(DssError::InvalidRegion);
    }
    let mean = density * region.area_km2();
    if mean == 0.0 {
        return Ok(NodeSet::default());
    }
    let mut rng = rng::stream(seed, 0);
    let count = Poisson::new(mean)
        .map_err(|_| DssError::NegativeDensity(density))?
        .sample(&mut rng) as usize;
    Ok(NodeSet::from_positions(
        (0..count).map(|_| region.sample_point(&mut rng)),
    ))
}

/// Exactly `count` nodes i.i.d. uniform over `region` (a binomial point
/// process), used when the node count rather than the density is fixed.
pub fn generate_uniform(count: usize, region: &Region, seed: u64) -> Result<NodeSet> {
    if !region.is_valid() {
        return Err(DssError::InvalidRegion);
    }
    let mut rng = rng::stream(seed, 0);
    Ok(NodeSet::from_positions(
        (0..count).map(|_| region.sample_point(&mut rng)),
    ))
}

/// Equirectangular projection about `(origin_lon, origin_lat)`, degrees in,
/// meters out.
pub fn project_lonlat_to_meters(
    lon: f64,
    lat: f64,
    origin_lon: f64,
    origin_lat: f64,
) -> Result<(f64, f64)> {
    for l in [lat, origin_lat] {
        if l.is_nan() || l.abs() >= 90.0 {
            return Err(DssError::InvalidLatitude(l));
        }
    }
    let rad = std::f64::consts::PI / 180.0;
    let x = (lon - origin_lon) * rad * EARTH_RADIUS_M * (origin_lat * rad).cos();
    let y = (lat - origin_lat) * rad * EARTH_RADIUS_M;
    Ok((x, y))
}

/// How the two coordinate columns of an AP dataset are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordMode {
    /// Columns `(id, lon, lat)` in degrees. Without an explicit origin the
    /// projection is centred on the dataset's bounding box.
    LonLat { origin: Option<(f64, f64)> },
    /// Columns `(id, x_m, y_m)` already in meters.
    Meters,
}

/// Reads an AP location CSV (header row required). Row order is preserved
/// and ids are reassigned from 0; the source id column is only checked for
/// presence.
pub fn ingest_ap_csv(path: impl AsRef<Path>, mode: CoordMode) -> Result<NodeSet> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| DssError::io(path, e))?;
    read_ap_csv(file, mode).map_err(|e| match e {
        DssError::Parse { line, message, .. } => DssError::Parse {
            path: path.to_path_buf(),
            line,
            message,
        },
        other => other,
    })
}

/// Same as [`ingest_ap_csv`] over any reader; parse errors carry an empty
/// path.
pub fn read_ap_csv<R: Read>(reader: R, mode: CoordMode) -> Result<NodeSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let parse_err = |line: u64, message: String| DssError::Parse {
        path: Default::default(),
        line,
        message,
    };

    let mut coords = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 3 {
            return Err(parse_err(
                line,
                format!("expected 3 columns, found {}", record.len()),
            ));
        }
        let field = |i: usize, name: &str| -> Result<f64> {
            record[i]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(line, format!("{name} {:?} is not a number", &record[i])))
        };
        let (a, b) = match mode {
            CoordMode::LonLat { .. } => (field(1, "longitude")?, field(2, "latitude")?),
            CoordMode::Meters => (field(1, "x")?, field(2, "y")?),
        };
        if let CoordMode::LonLat { .. } = mode {
            if b.is_nan() || b.abs() >= 90.0 {
                return Err(parse_err(
                    line,
                    format!("latitude {b} is outside (-90, 90)"),
                ));
            }
        }
        coords.push((a, b));
    }

    let positions = match mode {
        CoordMode::Meters => coords,
        CoordMode::LonLat { origin } => {
            let origin = origin.or_else(|| {
                NodeSet::from_positions(coords.iter().copied())
                    .bounding_box()
                    .map(|(x0, y0, x1, y1)| ((x0 + x1) / 2.0, (y0 + y1) / 2.0))
            });
            match origin {
                None => Vec::new(),
                Some((olon, olat)) => coords
                    .into_iter()
                    .map(|(lon, lat)| project_lonlat_to_meters(lon, lat, olon, olat))
                    .collect::<Result<_>>()?,
            }
        }
    };
    Ok(NodeSet::from_positions(positions))
}

/// Writes `(id, x_m, y_m)` rows with a header.
pub fn write_nodes_csv<W: Write>(nodes: &NodeSet, writer: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["id", "x_m", "y_m"])?;
    for n in nodes {
        w.write_record([n.id.to_string(), n.x.to_string(), n.y.to_string()])?;
    }
    w.flush()
}

/// One cell of a rectangular partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub row: usize,
    pub col: usize,
    pub bounds: Region,
    pub node_ids: Vec<usize>,
}

/// Splits the bounding box of `nodes` into `rows × cols` equal cells, listed
/// row-major with row 0 at the smallest y. Nodes on the max edges go to the
/// last row/column.
pub fn partition_grid(nodes: &NodeSet, rows: usize, cols: usize) -> Result<Vec<GridCell>> {
    if rows == 0 || cols == 0 {
        return Err(DssError::InvalidGrid);
    }
    let (x0, y0, x1, y1) = nodes.bounding_box().ok_or(DssError::EmptyNodeSet)?;
    let (width, height) = (x1 - x0, y1 - y0);
    let (cw, ch) = (width / cols as f64, height / rows as f64);

    let mut cells: Vec<GridCell> = (0..rows * cols)
        .map(|i| {
            let (row, col) = (i / cols, i % cols);
            GridCell {
                row,
                col,
                bounds: Region {
                    width: cw,
                    height: ch,
                    x0: x0 + col as f64 * cw,
                    y0: y0 + row as f64 * ch,
                },
                node_ids: Vec::new(),
            }
        })
        .collect();

    let bin = |v: f64, lo: f64, span: f64, n: usize| -> usize {
        if span <= 0.0 {
            0
        } else {
            (((v - lo) / span * n as f64).floor() as usize).min(n - 1)
        }
    };
    for node in nodes {
        let col = bin(node.x, x0, width, cols);
        let row = bin(node.y, y0, height, rows);
        cells[row * cols + col].node_ids.push(node.id);
    }
    Ok(cells)
}

/// Distance from every node to its closest other node.
pub fn nearest_neighbor_distances(nodes: &NodeSet) -> Result<Vec<f64>> {
    let n = nodes.len();
    if n < 2 {
        return Err(DssError::TooFewNodes(n));
    }
    let (x0, y0, x1, y1) = nodes.bounding_box().expect("non-empty");
    let span = (x1 - x0).max(y1 - y0);
    if span == 0.0 {
        return Ok(vec![0.0; n]);
    }
    // about one node per bucket on average
    let side = ((n as f64).sqrt().ceil() as usize).max(1);
    let index = SpatialIndex::new(nodes, span / side as f64, side + 1);
    let cell = index.cell();

    Ok(nodes
        .iter()
        .map(|a| {
            let (cx, cy) = index.bucket(a.x, a.y);
            let mut best = f64::INFINITY;
            for ring in 0.. {
                index.for_each_in_ring(cx, cy, ring, |j| {
                    if j != a.id {
                        best = best.min(a.distance(&nodes.nodes()[j]));
                    }
                });
                // anything outside the scanned square is at least ring·cell away
                if best <= ring as f64 * cell || ring > index.dim {
                    break;
                }
            }
            best
        })
        .collect())
}

/// Uniform bucket grid over a node set.
pub(crate) struct SpatialIndex {
    x0: f64,
    y0: f64,
    cell: f64,
    pub(crate) dim: usize,
    buckets: Vec<Vec<usize>>,
}

impl SpatialIndex {
    /// Buckets of side at least `min_cell`, widened if needed so the grid
    /// stays within `max_dim × max_dim`.
    pub(crate) fn new(nodes: &NodeSet, min_cell: f64, max_dim: usize) -> Self {
        let (x0, y0, x1, y1) = nodes.bounding_box().unwrap_or((0.0, 0.0, 0.0, 0.0));
        let span = (x1 - x0).max(y1 - y0);
        let max_dim = max_dim.max(2);
        let cell = min_cell.max(span / (max_dim - 1) as f64);
        let dim = ((span / cell).floor() as usize + 1).clamp(1, max_dim);
        let mut index = Self {
            x0,
            y0,
            cell,
            dim,
            buckets: vec![Vec::new(); dim * dim],
        };
        for n in nodes {
            let (cx, cy) = index.bucket(n.x, n.y);
            index.buckets[cy * dim + cx].push(n.id);
        }
        index
    }

    pub(crate) fn cell(&self) -> f64 {
        self.cell
    }

    pub(crate) fn bucket(&self, x: f64, y: f64) -> (usize, usize) {
        let f =
            |v: f64, lo: f64| (((v - lo) / self.cell).floor().max(0.0) as usize).min(self.dim - 1);
        (f(x, self.x0), f(y, self.y0))
    }

    /// Visits every node in buckets at Chebyshev distance exactly `ring`.
    pub(crate) fn for_each_in_ring(
        &self,
        cx: usize,
        cy: usize,
        ring: usize,
        mut f: impl FnMut(usize),
    ) {
        let (cx, cy, r, dim) = (cx as isize, cy as isize, ring as isize, self.dim as isize);
        for by in (cy - r).max(0)..=(cy + r).min(dim - 1) {
            for bx in (cx - r).max(0)..=(cx + r).min(dim - 1) {
                if (bx - cx).abs().max((by - cy).abs()) != r {
                    continue;
                }
                for &j in &self.buckets[(by * dim + bx) as usize] {
                    f(j);
                }
            }
        }
    }

    /// Visits every node in buckets within Chebyshev distance `reach`.
    pub(crate) fn for_each_within(
        &self,
        cx: usize,
        cy: usize,
        reach: usize,
        mut f: impl FnMut(usize),
    ) {
        let lo = |c: usize| c.saturating_sub(reach);
        let hi = |c: usize| (c + reach).min(self.dim - 1);
        for by in lo(cy)..=hi(cy) {
            for bx in lo(cx)..=hi(cx) {
                for &j in &self.buckets[by * self.dim + bx] {
                    f(j);
                }
            }
        }
    }
}
