use std::fmt;
use std::io::Write;
use std::path::Path;

use super::RasterError;

/// 8-bit RGB image, rows top to bottom.
#[derive(Clone, PartialEq, Eq)]
pub struct Image {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl fmt::Debug for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Image({}x{})", self.width, self.height)
    }
}

impl Image {
    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> Image {
        let data = rgb.repeat(width as usize * height as usize);
        Image { width, height, data }
    }

    pub(crate) fn from_raw(width: u32, height: u32, data: Vec<u8>) -> Image {
        debug_assert_eq!(data.len(), width as usize * height as usize * 3);
        Image { width, height, data }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Raw RGB bytes.
    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }

    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        let i = (y as usize * self.width as usize + x as usize) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn pixels(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        self.data.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }

    /// Binary PPM (P6).
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.data);
        out
    }

    pub fn write_ppm(&self, path: &Path) -> std::io::Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        file.write_all(&self.to_ppm())?;
        file.flush()
    }

    /// Parse a binary PPM with maxval 255. Comments are not supported.
    pub fn from_ppm(bytes: &[u8]) -> Result<Image, RasterError> {
        let bad = |why: &str| RasterError::MalformedPpm(why.to_string());
        let mut fields = Vec::with_capacity(4);
        let mut pos = 0;
        while fields.len() < 4 {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                return Err(bad("truncated header"));
            }
            fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("header is not ASCII"))?);
        }
        if fields[0] != "P6" {
            return Err(bad("not a P6 file"));
        }
        let num = |s: &str| s.parse::<u32>().map_err(|_| bad("bad header number"));
        let (width, height, maxval) = (num(fields[1])?, num(fields[2])?, num(fields[3])?);
        if maxval != 255 {
            return Err(bad("only maxval 255 is supported"));
        }
        // Exactly one whitespace byte separates the header from the pixels.
        let body = bytes.get(pos + 1..).ok_or_else(|| bad("missing pixel data"))?;
        let expected = width as usize * height as usize * 3;
        if body.len() != expected {
            return Err(bad("pixel data has the wrong length"));
        }
        Ok(Image::from_raw(width, height, body.to_vec()))
    }
}

/// How far two images of the same size are apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImageDiff {
    pub max_channel_delta: u8,
    pub differing_pixels: usize,
}

pub fn image_diff(a: &Image, b: &Image) -> Result<ImageDiff, RasterError> {
    if (a.width, a.height) != (b.width, b.height) {
        return Err(RasterError::SizeMismatch {
            left: (a.width, a.height),
            right: (b.width, b.height),
        });
    }
    let mut diff = ImageDiff {
        max_channel_delta: 0,
        differing_pixels: 0,
    };
    for (p, q) in a.data.chunks_exact(3).zip(b.data.chunks_exact(3)) {
        let delta = p.iter().zip(q).map(|(x, y)| x.abs_diff(*y)).max().unwrap_or(0);
        if delta > 0 {
            diff.differing_pixels += 1;
            diff.max_channel_delta = diff.max_channel_delta.max(delta);
        }
    }
    Ok(diff)
}
