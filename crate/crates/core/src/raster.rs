//! Binary rasters: boundary extraction and randomized boundary subsampling.

use std::collections::HashMap;
use std::io::Cursor;

use image::{ImageFormat, ImageReader};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::geometry::{Point2, PointSet};

/// A binary image; `true` is white (foreground).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(invalid("raster must be non-empty"));
        }
        if pixels.len() != width * height {
            return Err(invalid(format!(
                "expected {} pixels for {width}x{height}, got {}",
                width * height,
                pixels.len()
            )));
        }
        Ok(BinaryImage {
            width,
            height,
            pixels,
        })
    }

    /// All-black raster.
    pub fn black(width: usize, height: usize) -> Result<Self> {
        BinaryImage::new(width, height, vec![false; width * height])
    }

    /// Decodes a PGM (P2 or P5); grey levels of 128 and above are white.
    pub fn from_pgm(bytes: &[u8]) -> Result<Self> {
        let img = ImageReader::with_format(Cursor::new(bytes), ImageFormat::Pnm)
            .decode()
            .map_err(|e| invalid(format!("cannot decode PGM: {e}")))?
            .to_luma8();
        let (w, h) = (img.width() as usize, img.height() as usize);
        BinaryImage::new(w, h, img.pixels().map(|p| p.0[0] >= 128).collect())
    }

    /// Encodes as binary PGM with white as 255.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend(self.pixels.iter().map(|&w| if w { 255u8 } else { 0 }));
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, col: usize, row: usize) -> bool {
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, col: usize, row: usize, white: bool) {
        self.pixels[row * self.width + col] = white;
    }

    fn white_at(&self, col: isize, row: isize) -> bool {
        col >= 0
            && row >= 0
            && (col as usize) < self.width
            && (row as usize) < self.height
            && self.get(col as usize, row as usize)
    }
}

/// White pixels with at least one non-white 8-neighbour, as `(col, row)` in
/// row-major order. Pixels outside the raster count as black.
pub fn extract_image_boundary(img: &BinaryImage) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for row in 0..img.height {
        for col in 0..img.width {
            if !img.get(col, row) {
                continue;
            }
            let (c, r) = (col as isize, row as isize);
            let interior = (-1..=1).all(|dr| (-1..=1).all(|dc| img.white_at(c + dc, r + dr)));
            if !interior {
                out.push((col, row));
            }
        }
    }
    out
}

/// World position of a pixel centre.
pub fn pixel_center(col: usize, row: usize) -> Point2 {
    Point2::new(col as f64 + 0.5, row as f64 + 0.5)
}

/// Repeatedly emits a uniformly chosen remaining boundary pixel and erases
/// every remaining pixel closer than `r` to it.
pub fn dart_sample(boundary: &[(usize, usize)], r: f64, seed: u64) -> Result<PointSet> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(invalid(format!("dart radius must be positive, got {r}")));
    }
    let pts: Vec<Point2> = boundary
        .iter()
        .map(|&(c, row)| pixel_center(c, row))
        .collect();
    let cell = r.max(1.0);
    let cell_of = |p: Point2| ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
    let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, &p) in pts.iter().enumerate() {
        cells.entry(cell_of(p)).or_default().push(i);
    }
    // Remaining pixels in a swap-remove list, with each pixel's position.
    let mut remaining: Vec<usize> = (0..pts.len()).collect();
    let mut slot: Vec<Option<usize>> = (0..pts.len()).map(Some).collect();
    let remove = |i: usize, remaining: &mut Vec<usize>, slot: &mut Vec<Option<usize>>| {
        if let Some(s) = slot[i].take() {
            remaining.swap_remove(s);
            if s < remaining.len() {
                slot[remaining[s]] = Some(s);
            }
        }
    };
    let reach = (r / cell).ceil() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let pick = remaining[rng.random_range(0..remaining.len())];
        let p = pts[pick];
        out.push(p);
        remove(pick, &mut remaining, &mut slot);
        let (cx, cy) = cell_of(p);
        for dy in -reach..=reach {
            for dx in -reach..=reach {
                if let Some(list) = cells.get(&(cx + dx, cy + dy)) {
                    for &j in list {
                        if pts[j].distance(p) < r {
                            remove(j, &mut remaining, &mut slot);
                        }
                    }
                }
            }
        }
    }
    PointSet::new(out)
}
