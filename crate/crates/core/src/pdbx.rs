//! Minimal PDB reader and Co-ligand bond-distance feature extraction.
//!
//! Only ATOM/HETATM records are read. For every cobalt atom the six
//! nearest non-cobalt atoms within a cutoff become a feature record of
//! sorted bond distances.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub serial: i64,
    pub name: String,
    /// Element symbol, uppercase (from columns 77-78, falling back to the
    /// atom-name field when blank).
    pub element: String,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub hetatm: bool,
}

impl Atom {
    pub fn distance(&self, other: &Atom) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

fn field(line: &str, start: usize, end: usize) -> &str {
    // 1-based inclusive column range, as in the PDB format description
    let bytes = line.as_bytes();
    let lo = (start - 1).min(bytes.len());
    let hi = end.min(bytes.len());
    std::str::from_utf8(&bytes[lo..hi]).unwrap_or("").trim()
}

/// Element symbol from an atom-name field like " CO1" or "1HB ".
fn element_from_name(name: &str) -> String {
    let alpha: String = name.chars().filter(|c| c.is_ascii_alphabetic()).collect();
    alpha.to_ascii_uppercase()
}

/// Parse ATOM/HETATM records from PDB text; all other lines are skipped.
pub fn parse_pdb(text: &str) -> Result<Vec<Atom>> {
    let mut atoms = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let record = field(line, 1, 6);
        let hetatm = match record {
            "ATOM" => false,
            "HETATM" => true,
            _ => continue,
        };
        let coord = |start, end, axis| -> Result<f64> {
            let raw = field(line, start, end);
            raw.parse().map_err(|_| Error::Pdb {
                line: line_no,
                msg: format!("malformed {axis} coordinate '{raw}'"),
            })
        };
        let x = coord(31, 38, "x")?;
        let y = coord(39, 46, "y")?;
        let z = coord(47, 54, "z")?;
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::Pdb {
                line: line_no,
                msg: "non-finite coordinate".into(),
            });
        }
        let serial: i64 = field(line, 7, 11).parse().unwrap_or(0);
        let name = field(line, 13, 16).to_string();
        let mut element = field(line, 77, 78).to_ascii_uppercase();
        if element.is_empty() {
            element = element_from_name(&name);
        }
        if element.is_empty() {
            return Err(Error::Pdb {
                line: line_no,
                msg: "no element symbol".into(),
            });
        }
        atoms.push(Atom {
            serial,
            name,
            element,
            x,
            y,
            z,
            hetatm,
        });
    }
    Ok(atoms)
}

/// Fixed-column ATOM/HETATM line for an atom (3-decimal coordinates).
pub fn format_atom_line(atom: &Atom) -> String {
    let record = if atom.hetatm { "HETATM" } else { "ATOM  " };
    format!(
        "{record}{serial:>5} {name:<4} LIG A   1    {x:>8.3}{y:>8.3}{z:>8.3}  1.00  0.00          {elem:>2}",
        serial = atom.serial,
        name = atom.name,
        x = atom.x,
        y = atom.y,
        z = atom.z,
        elem = atom.element,
    )
}

/// Six sorted Co-ligand bond distances for one cobalt center.
#[derive(Debug, Clone, PartialEq)]
pub struct CoFeatureRecord {
    pub structure_id: String,
    pub co_serial: i64,
    pub distances: [f64; 6],
}

/// Why a cobalt atom produced no feature record.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCobalt {
    pub structure_id: String,
    pub co_serial: i64,
    pub candidates_within_cutoff: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct ExtractOptions {
    /// Maximum Co-ligand distance considered a bond, in angstroms.
    pub cutoff: f64,
    /// Hydrogens are not coordinating donors and are excluded by default.
    pub include_hydrogens: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            cutoff: 3.0,
            include_hydrogens: false,
        }
    }
}

/// For each cobalt atom, the distances to its six nearest ligand atoms
/// within the cutoff, sorted ascending. Cobalts with fewer than six
/// candidates are returned as skip diagnostics instead of records.
pub fn extract_co_features(
    structure_id: &str,
    atoms: &[Atom],
    options: ExtractOptions,
) -> Result<(Vec<CoFeatureRecord>, Vec<SkippedCobalt>)> {
    if options.cutoff <= 0.0 || options.cutoff.is_nan() {
        return Err(Error::Parameter(format!(
            "cutoff must be positive, got {}",
            options.cutoff
        )));
    }
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for co in atoms.iter().filter(|a| a.element == "CO") {
        let mut dists: Vec<f64> = atoms
            .iter()
            .filter(|a| a.element != "CO")
            .filter(|a| options.include_hydrogens || a.element != "H")
            .map(|a| co.distance(a))
            .filter(|&d| d > 0.0 && d <= options.cutoff)
            .collect();
        if dists.len() < 6 {
            skipped.push(SkippedCobalt {
                structure_id: structure_id.to_string(),
                co_serial: co.serial,
                candidates_within_cutoff: dists.len(),
            });
            continue;
        }
        dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut distances = [0.0; 6];
        distances.copy_from_slice(&dists[..6]);
        records.push(CoFeatureRecord {
            structure_id: structure_id.to_string(),
            co_serial: co.serial,
            distances,
        });
    }
    Ok((records, skipped))
}

/// CSV with columns structure_id, co_serial, d1..d6.
pub fn write_features_csv<W: std::io::Write>(
    writer: W,
    records: &[CoFeatureRecord],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["structure_id", "co_serial", "d1", "d2", "d3", "d4", "d5", "d6"])?;
    for r in records {
        let mut row = vec![r.structure_id.clone(), r.co_serial.to_string()];
        row.extend(r.distances.iter().map(|d| format!("{d:.6}")));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hetatm(serial: i64, element: &str, x: f64, y: f64, z: f64) -> String {
        format_atom_line(&Atom {
            serial,
            name: element.to_string(),
            element: element.to_string(),
            x,
            y,
            z,
            hetatm: true,
        })
    }

    #[test]
    fn parse_single_cobalt() {
        let text = hetatm(1, "CO", 0.0, 0.0, 0.0);
        let atoms = parse_pdb(&text).unwrap();
        assert_eq!(atoms.len(), 1);
        assert_eq!(atoms[0].element, "CO");
        assert_eq!(atoms[0].x, 0.0);
    }

    #[test]
    fn parse_empty_file() {
        assert!(parse_pdb("").unwrap().is_empty());
        assert!(parse_pdb("REMARK nothing here\nEND\n").unwrap().is_empty());
    }

    #[test]
    fn parse_bad_coordinate_names_line() {
        let good = hetatm(1, "CO", 0.0, 0.0, 0.0);
        let bad = good.replace("   0.000", "  oops  ");
        let text = format!("{good}\n{bad}");
        match parse_pdb(&text) {
            Err(Error::Pdb { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected Pdb error, got {other:?}"),
        }
    }

    #[test]
    fn element_falls_back_to_atom_name() {
        let mut line = hetatm(1, "CO", 1.0, 2.0, 3.0);
        line.truncate(70); // drop element columns
        let atoms = parse_pdb(&line).unwrap();
        assert_eq!(atoms[0].element, "CO");
    }

    #[test]
    fn round_trip_preserves_coordinates_at_3_decimals() {
        let original = Atom {
            serial: 7,
            name: "N1".into(),
            element: "N".into(),
            x: 1.2345,
            y: -2.5,
            z: 10.001,
            hetatm: false,
        };
        let atoms = parse_pdb(&format_atom_line(&original)).unwrap();
        assert!((atoms[0].x - 1.234).abs() < 5e-4 || (atoms[0].x - 1.235).abs() < 5e-4);
        assert_eq!(atoms[0].y, -2.5);
        assert_eq!(atoms[0].z, 10.001);
        assert_eq!(atoms[0].serial, 7);
    }

    fn octahedron(center: [f64; 3], bond: f64) -> Vec<Atom> {
        let mut atoms = vec![Atom {
            serial: 1,
            name: "CO".into(),
            element: "CO".into(),
            x: center[0],
            y: center[1],
            z: center[2],
            hetatm: true,
        }];
        let axes = [
            [bond, 0.0, 0.0],
            [-bond, 0.0, 0.0],
            [0.0, bond, 0.0],
            [0.0, -bond, 0.0],
            [0.0, 0.0, bond],
            [0.0, 0.0, -bond],
        ];
        for (i, d) in axes.iter().enumerate() {
            atoms.push(Atom {
                serial: 2 + i as i64,
                name: "N".into(),
                element: "N".into(),
                x: center[0] + d[0],
                y: center[1] + d[1],
                z: center[2] + d[2],
                hetatm: true,
            });
        }
        atoms
    }

    #[test]
    fn symmetric_octahedron() {
        let atoms = octahedron([0.0, 0.0, 0.0], 2.0);
        let (records, skipped) =
            extract_co_features("oct", &atoms, ExtractOptions::default()).unwrap();
        assert!(skipped.is_empty());
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].distances, [2.0; 6]);
    }

    #[test]
    fn sorted_distances_stray_excluded() {
        let mut atoms = vec![Atom {
            serial: 1,
            name: "CO".into(),
            element: "CO".into(),
            x: 0.0,
            y: 0.0,
            z: 0.0,
            hetatm: true,
        }];
        // deliberately unsorted insertion order
        for (i, d) in [2.4, 1.9, 2.05, 1.95, 2.1, 2.0].iter().enumerate() {
            atoms.push(Atom {
                serial: 2 + i as i64,
                name: "O".into(),
                element: "O".into(),
                x: *d,
                y: 0.0,
                z: 0.0,
                hetatm: true,
            });
        }
        atoms.push(Atom {
            serial: 99,
            name: "CL".into(),
            element: "CL".into(),
            x: 5.0,
            y: 0.0,
            z: 0.0,
            hetatm: true,
        });
        let (records, skipped) =
            extract_co_features("s", &atoms, ExtractOptions::default()).unwrap();
        assert!(skipped.is_empty());
        assert_eq!(records[0].distances, [1.9, 1.95, 2.0, 2.05, 2.1, 2.4]);
    }

    #[test]
    fn under_coordinated_cobalt_is_skipped() {
        let mut atoms = octahedron([0.0, 0.0, 0.0], 2.0);
        atoms.truncate(6); // cobalt + 5 ligands
        let (records, skipped) =
            extract_co_features("partial", &atoms, ExtractOptions::default()).unwrap();
        assert!(records.is_empty());
        assert_eq!(skipped.len(), 1);
        assert_eq!(skipped[0].candidates_within_cutoff, 5);
    }

    #[test]
    fn hydrogens_excluded_by_default() {
        let mut atoms = octahedron([0.0, 0.0, 0.0], 2.0);
        for a in atoms.iter_mut().skip(1) {
            a.element = "H".into();
        }
        let (records, skipped) =
            extract_co_features("h", &atoms, ExtractOptions::default()).unwrap();
        assert!(records.is_empty());
        assert_eq!(skipped.len(), 1);

        let opts = ExtractOptions {
            include_hydrogens: true,
            ..Default::default()
        };
        let (records, _) = extract_co_features("h", &atoms, opts).unwrap();
        assert_eq!(records.len(), 1);
    }

    #[test]
    fn multiple_cobalts_multiple_records() {
        let mut atoms = octahedron([0.0, 0.0, 0.0], 2.0);
        let far = octahedron([20.0, 0.0, 0.0], 1.9);
        atoms.extend(far);
        let (records, _) =
            extract_co_features("twin", &atoms, ExtractOptions::default()).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].distances, [2.0; 6]);
        for d in records[1].distances {
            assert!((d - 1.9).abs() < 1e-12);
        }
    }
}
