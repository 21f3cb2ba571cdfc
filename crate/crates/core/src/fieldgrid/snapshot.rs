//! Binary field snapshots.
//!
//! Layout, all little-endian: `nx, ny, nz` as u64, `hx, hy, hz` as f64, then 16 f64 per site
//! (`re, im` of each coefficient in basis order `1 i j k E I J K`), sites z-fastest. A JSON
//! sidecar with the same stem records origin, time and the component labels.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{BasisUnit, Complex, Grade, Octon};
use crate::{Error, Result};

use super::{Grid3, OctonField};

const HEADER_BYTES: usize = 48;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotSidecar {
    pub format: String,
    pub n: [usize; 3],
    pub h: [f64; 3],
    pub origin: [f64; 3],
    pub time: Option<f64>,
    pub layout: String,
    pub components: Vec<String>,
    pub grades: Vec<(Grade, Vec<String>)>,
}

impl SnapshotSidecar {
    fn for_grid(grid: &Grid3, time: Option<f64>) -> Self {
        let components = BasisUnit::ALL
            .iter()
            .flat_map(|u| [format!("{u}.re"), format!("{u}.im")])
            .collect();
        let grades = Grade::ALL
            .iter()
            .map(|g| {
                (
                    *g,
                    g.units().iter().map(|u| u.symbol().to_string()).collect(),
                )
            })
            .collect();
        SnapshotSidecar {
            format: "octon-field-snapshot/1".into(),
            n: grid.n,
            h: grid.h,
            origin: grid.origin,
            time,
            layout: "z-fastest".into(),
            components,
            grades,
        }
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

pub fn encode_snapshot(field: &OctonField) -> Vec<u8> {
    let grid = field.grid();
    let mut bytes = Vec::with_capacity(HEADER_BYTES + field.len() * 128);
    for n in grid.n {
        bytes.extend_from_slice(&(n as u64).to_le_bytes());
    }
    for h in grid.h {
        bytes.extend_from_slice(&h.to_le_bytes());
    }
    for o in field.data() {
        for z in o.coeffs {
            bytes.extend_from_slice(&z.re.to_le_bytes());
            bytes.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    bytes
}

pub fn decode_snapshot(bytes: &[u8], origin: [f64; 3]) -> Result<OctonField> {
    if bytes.len() < HEADER_BYTES {
        return Err(Error::Snapshot(format!(
            "{} bytes is shorter than the header",
            bytes.len()
        )));
    }
    let word = |k: usize| -> [u8; 8] { bytes[8 * k..8 * k + 8].try_into().expect("8 bytes") };
    let n: [usize; 3] = std::array::from_fn(|a| u64::from_le_bytes(word(a)) as usize);
    let h: [f64; 3] = std::array::from_fn(|a| f64::from_le_bytes(word(3 + a)));
    let grid = Grid3::new(n, h, origin)?;
    let expected = HEADER_BYTES + grid.len() * 128;
    if bytes.len() != expected {
        return Err(Error::Snapshot(format!(
            "expected {expected} bytes for a {}×{}×{} grid, found {}",
            n[0],
            n[1],
            n[2],
            bytes.len()
        )));
    }
    let data = bytes[HEADER_BYTES..]
        .chunks_exact(128)
        .map(|site| {
            let f =
                |k: usize| f64::from_le_bytes(site[8 * k..8 * k + 8].try_into().expect("8 bytes"));
            Octon::new(std::array::from_fn(|u| {
                Complex::new(f(2 * u), f(2 * u + 1))
            }))
        })
        .collect();
    OctonField::new(grid, data)
}

/// Writes the binary snapshot and its sidecar.
pub fn write_snapshot(path: &Path, field: &OctonField, time: Option<f64>) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(&encode_snapshot(field))
        .map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))?;
    let side = sidecar_path(path);
    let text = serde_json::to_string_pretty(&SnapshotSidecar::for_grid(field.grid(), time))?;
    fs::write(&side, text).map_err(|e| Error::io(&side, e))?;
    Ok(())
}

/// Reads a snapshot; the origin comes from the sidecar when one is present.
pub fn read_snapshot(path: &Path) -> Result<(OctonField, Option<SnapshotSidecar>)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let side = sidecar_path(path);
    let sidecar = if side.exists() {
        let text = fs::read_to_string(&side).map_err(|e| Error::io(&side, e))?;
        Some(serde_json::from_str::<SnapshotSidecar>(&text)?)
    } else {
        None
    };
    let origin = sidecar.as_ref().map_or([0.0; 3], |s| s.origin);
    let field = decode_snapshot(&bytes, origin)?;
    if let Some(s) = &sidecar {
        if s.n != field.grid().n || s.h != field.grid().h {
            return Err(Error::Snapshot(
                "sidecar grid disagrees with the binary header".into(),
            ));
        }
    }
    Ok((field, sidecar))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Grid3::new([4, 5, 6], [0.1, 0.2, 0.3], [1.0, -2.0, 0.5]).unwrap();
        let f = OctonField::from_fn(g, |p| {
            Octon::new(std::array::from_fn(|u| {
                Complex::new(p[0] + u as f64, p[1] * p[2] - u as f64)
            }))
        });
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("snap.bin");
        write_snapshot(&path, &f, Some(0.25)).unwrap();
        let (back, side) = read_snapshot(&path).unwrap();
        assert_eq!(back, f);
        let side = side.unwrap();
        assert_eq!(side.time, Some(0.25));
        assert_eq!(side.components[0], "1.re");
        assert_eq!(side.components[15], "K.im");
        assert_eq!(std::fs::metadata(&path).unwrap().len(), 48 + 120 * 128);
    }

    #[test]
    fn sidecar_spacing_survives_json() {
        // 0.7/7 is one ulp below 0.1 and needs exact float parsing
        let g = Grid3::periodic_box([7, 4, 4], [0.7, 0.4, 0.4]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("snap.bin");
        write_snapshot(&path, &OctonField::zeros(g), None).unwrap();
        let (back, side) = read_snapshot(&path).unwrap();
        assert_eq!(back.grid().h, g.h);
        assert_eq!(side.unwrap().h, g.h);
    }

    #[test]
    fn header_is_little_endian_and_z_fastest() {
        let g = Grid3::cube(4, 4.0).unwrap();
        let f = OctonField::from_fn(g, |p| {
            Octon::from_real([p[2], 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
        });
        let b = encode_snapshot(&f);
        assert_eq!(&b[0..8], &4u64.to_le_bytes());
        assert_eq!(&b[24..32], &1.0f64.to_le_bytes());
        // second site is iz = 1
        assert_eq!(&b[48 + 128..48 + 136], &1.0f64.to_le_bytes());
    }

    #[test]
    fn truncated_input_is_rejected() {
        let g = Grid3::cube(4, 4.0).unwrap();
        let b = encode_snapshot(&OctonField::zeros(g));
        assert!(decode_snapshot(&b[..b.len() - 8], [0.0; 3]).is_err());
        assert!(decode_snapshot(&b[..10], [0.0; 3]).is_err());
    }
}
