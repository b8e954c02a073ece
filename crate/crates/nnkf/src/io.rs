//! JSON instance and result files with a canonical serialization, plus plain-text tables.

use crate::arith::{Int, IVec};
use crate::asymptotic::parse_entry;
use crate::error::{Error, Result};
use crate::system::check_embedding;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Input file. Exactly one of the pair `f-points`/`g-points`, `h-points`, `points` or
/// `polytopes` is present; `daughters` accompanies `points` only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct InstanceFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_points: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_points: Option<Vec<Vec<u64>>>,
    /// Lifted points of length `dim + 1`, the last entry being the deformation exponent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_points: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<u64>>>,
    /// Per daughter, the thrown-out faces of `Conv(points)`, each given by its points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub daughters: Option<Vec<Vec<Vec<Vec<u64>>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytopes: Option<Vec<Vec<Vec<u64>>>>,
}

/// Validated content of an instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Pair { fs: Vec<IVec>, gs: Vec<IVec> },
    Lifted { hs: Vec<IVec> },
    Points { points: Vec<IVec>, daughters: Option<Vec<Vec<Vec<IVec>>>> },
    Polytopes { sets: Vec<Vec<IVec>> },
}

fn to_ivecs(pts: &[Vec<u64>]) -> Vec<IVec> {
    pts.iter().map(|p| p.iter().map(|&c| Int::from(c)).collect()).collect()
}

/// 1-based line of the element at `path` inside the array stored under `key`.
fn locate(text: &str, key: &str, path: &[usize]) -> Option<usize> {
    let start = text.find(&format!("\"{key}\""))?;
    let bytes = text.as_bytes();
    let mut pos = start + text[start..].find('[')? + 1;
    for &target in path {
        let mut depth = 0usize;
        let mut seen = 0usize;
        loop {
            match *bytes.get(pos)? {
                b'[' if depth == 0 => {
                    if seen == target {
                        break;
                    }
                    seen += 1;
                    depth += 1;
                }
                b'[' => depth += 1,
                b']' if depth == 0 => return None,
                b']' => depth -= 1,
                _ => {}
            }
            pos += 1;
        }
        pos += 1;
    }
    Some(text[..pos].matches('\n').count() + 1)
}

fn check_lengths(text: &str, key: &str, pts: &[Vec<u64>], len: usize, prefix: &[usize]) -> Result<()> {
    for (i, p) in pts.iter().enumerate() {
        if p.len() != len {
            let mut path = prefix.to_vec();
            path.push(i);
            let at = locate(text, key, &path).map(|l| format!("line {l}: ")).unwrap_or_default();
            let idx: String = path.iter().map(|j| format!("[{j}]")).collect();
            return Err(Error::Input(format!("{at}{key}{idx} has {} coordinates, expected {len}", p.len())));
        }
    }
    Ok(())
}

impl InstanceFile {
    /// Parses and validates an instance; serde diagnostics carry line and column.
    pub fn parse(text: &str) -> Result<(InstanceFile, Instance)> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        let inst = file.validate(text)?;
        Ok((file, inst))
    }

    fn validate(&self, text: &str) -> Result<Instance> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Input("dim must be positive".into()));
        }
        let present = [
            self.f_points.is_some() || self.g_points.is_some(),
            self.h_points.is_some(),
            self.points.is_some(),
            self.polytopes.is_some(),
        ];
        if present.iter().filter(|&&b| b).count() != 1 {
            return Err(Error::Input(
                "exactly one of f-points/g-points, h-points, points or polytopes must be given".into(),
            ));
        }
        if self.daughters.is_some() && self.points.is_none() {
            return Err(Error::Input("daughters require points".into()));
        }
        if let (Some(f), Some(g)) = (&self.f_points, &self.g_points) {
            check_lengths(text, "f-points", f, n, &[])?;
            check_lengths(text, "g-points", g, n, &[])?;
            let (fs, gs) = (to_ivecs(f), to_ivecs(g));
            if !fs.is_empty() && !gs.is_empty() {
                check_embedding(&fs, &gs)?;
            }
            return Ok(Instance::Pair { fs, gs });
        }
        if self.f_points.is_some() || self.g_points.is_some() {
            return Err(Error::Input("f-points and g-points must be given together".into()));
        }
        if let Some(h) = &self.h_points {
            check_lengths(text, "h-points", h, n + 1, &[])?;
            return Ok(Instance::Lifted { hs: to_ivecs(h) });
        }
        if let Some(p) = &self.points {
            check_lengths(text, "points", p, n, &[])?;
            let daughters = match &self.daughters {
                None => None,
                Some(ds) => {
                    for (i, d) in ds.iter().enumerate() {
                        for (j, face) in d.iter().enumerate() {
                            check_lengths(text, "daughters", face, n, &[i, j])?;
                        }
                    }
                    Some(ds.iter().map(|d| d.iter().map(|f| to_ivecs(f)).collect()).collect())
                }
            };
            return Ok(Instance::Points { points: to_ivecs(p), daughters });
        }
        let sets = self.polytopes.as_ref().expect("one variant is present");
        for (i, s) in sets.iter().enumerate() {
            check_lengths(text, "polytopes", s, n, &[i])?;
        }
        Ok(Instance::Polytopes { sets: sets.iter().map(|s| to_ivecs(s)).collect() })
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }
}

/// One output row.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ResultRecord {
    /// Exact fractions `p/q`, or `inf`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covector: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

/// Comparison of a computed total against an independent classical value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct VerificationBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_g: Option<String>,
    /// Classical value the computed total is compared with.
    pub difference: String,
    pub computed: String,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ResultFile {
    pub command: String,
    pub records: Vec<ResultRecord>,
    pub totals: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationBlock>,
}

impl ResultFile {
    pub fn new(command: impl Into<String>) -> Self {
        ResultFile { command: command.into(), records: Vec::new(), totals: BTreeMap::new(), verification: None }
    }

    /// Parses a result file, rejecting covector entries that are not in canonical form.
    pub fn parse(text: &str) -> Result<ResultFile> {
        let file: ResultFile = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        for r in &file.records {
            for s in r.covector.iter().flatten() {
                match parse_entry(s) {
                    Some(e) if e.to_string() == *s => {}
                    _ => return Err(Error::Input(format!("non-canonical covector entry {s:?}"))),
                }
            }
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    /// Aligned plain-text table.
    pub fn to_table(&self) -> String {
        let mut out = format!("{}\n", self.command);
        let mut value_keys: Vec<&String> = self.records.iter().flat_map(|r| r.values.keys()).collect();
        value_keys.sort();
        value_keys.dedup();
        let mut header: Vec<String> = Vec::new();
        let has = |f: &dyn Fn(&ResultRecord) -> bool| self.records.iter().any(f);
        let cols = [
            ("covector", has(&|r| r.covector.is_some())),
            ("point", has(&|r| r.point.is_some())),
            ("label", has(&|r| r.label.is_some())),
            ("class", has(&|r| r.class.is_some())),
            ("subspace", has(&|r| r.subspace.is_some())),
        ];
        for (name, on) in cols {
            if on {
                header.push(name.to_string());
            }
        }
        header.extend(value_keys.iter().map(|k| k.to_string()));
        let mut rows = vec![header];
        for r in &self.records {
            let mut row = Vec::new();
            let tuple = |v: &[String]| format!("({})", v.join(","));
            if cols[0].1 {
                row.push(r.covector.as_deref().map(tuple).unwrap_or_default());
            }
            if cols[1].1 {
                row.push(r.point.as_deref().map(tuple).unwrap_or_default());
            }
            if cols[2].1 {
                row.push(r.label.clone().unwrap_or_default());
            }
            if cols[3].1 {
                row.push(r.class.clone().unwrap_or_default());
            }
            if cols[4].1 {
                let s = r.subspace.as_ref().map(|e| {
                    let idx: Vec<String> = e.iter().map(|i| (i + 1).to_string()).collect();
                    format!("{{{}}}", idx.join(","))
                });
                row.push(s.unwrap_or_default());
            }
            row.extend(value_keys.iter().map(|k| r.values.get(*k).cloned().unwrap_or_default()));
            rows.push(row);
        }
        if !self.records.is_empty() {
            let widths: Vec<usize> =
                (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
            for row in &rows {
                let cells: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
                let _ = writeln!(out, "{}", cells.join("  ").trim_end());
            }
        }
        for (k, v) in &self.totals {
            let _ = writeln!(out, "{k}: {v}");
        }
        if let Some(v) = &self.verification {
            let mut parts = Vec::new();
            if let Some(f) = &v.nu_f {
                parts.push(format!("nu(f) = {f}"));
            }
            if let Some(g) = &v.nu_g {
                parts.push(format!("nu(g) = {g}"));
            }
            parts.push(format!("classical = {}", v.difference));
            parts.push(format!("computed = {}", v.computed));
            let flag = if v.matched { "verified" } else { "MISMATCH" };
            let _ = writeln!(out, "verification: {}, {flag}", parts.join(", "));
        }
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(a) if a.iter().all(is_scalar) => {
            let items: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            let _ = write!(out, "[{}]", items.join(", "));
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", "  ".repeat(indent));
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", Value::String(k.clone()));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", "  ".repeat(indent));
        }
        _ => out.push_str(&v.to_string()),
    }
}

/// JSON with sorted keys, scalar arrays on one line and a trailing newline.
pub fn canonical_json<T: Serialize>(t: &T) -> String {
    let v = serde_json::to_value(t).expect("serializable to JSON");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_round_trip() {
        let text = "{\"g-points\": [[2, 0], [0, 2]], \"dim\": 2, \"f-points\": [[4, 0], [0, 4]]}";
        let (file, inst) = InstanceFile::parse(text).unwrap();
        let canon = file.to_json();
        assert!(canon.starts_with("{\n  \"dim\": 2,\n  \"f-points\": [\n    [4, 0],\n"));
        let (again, _) = InstanceFile::parse(&canon).unwrap();
        assert_eq!(again, file);
        assert_eq!(again.to_json(), canon);
        assert!(matches!(inst, Instance::Pair { .. }));
    }

    #[test]
    fn wrong_length_reports_line() {
        let text = "{\n  \"dim\": 2,\n  \"h-points\": [\n    [1, 0, 0],\n    [0, 1]\n  ]\n}";
        let err = InstanceFile::parse(text).unwrap_err();
        assert_eq!(err, Error::Input("line 5: h-points[1] has 2 coordinates, expected 3".into()));
    }

    #[test]
    fn negative_coordinate_rejected_with_position() {
        let text = "{\"dim\": 1,\n \"points\": [[-1]]}";
        match InstanceFile::parse(text) {
            Err(Error::Input(msg)) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exactly_one_variant() {
        assert!(InstanceFile::parse("{\"dim\": 1, \"points\": [[1]], \"h-points\": [[1, 0]]}").is_err());
        assert!(InstanceFile::parse("{\"dim\": 1, \"f-points\": [[1]]}").is_err());
        assert!(InstanceFile::parse("{\"dim\": 1}").is_err());
    }

    #[test]
    fn embedding_checked_on_load() {
        let text = "{\"dim\": 2, \"f-points\": [[1, 0], [0, 1]], \"g-points\": [[2, 0], [0, 2]]}";
        assert_eq!(InstanceFile::parse(text).unwrap_err(), Error::NotEmbedded);
    }

    #[test]
    fn result_round_trip_and_canonical_fractions() {
        let mut r = ResultFile::new("critical-asymptotics");
        r.records.push(ResultRecord {
            covector: Some(vec!["1/2".into(), "inf".into()]),
            class: Some("dropped".into()),
            values: BTreeMap::from([("multiplicity".to_string(), "2".to_string())]),
            ..Default::default()
        });
        r.totals.insert("total".into(), "2".into());
        let text = r.to_json();
        assert_eq!(ResultFile::parse(&text).unwrap().to_json(), text);
        let bad = text.replace("1/2", "2/4");
        assert!(ResultFile::parse(&bad).is_err());
    }

    #[test]
    fn table_lists_rows_and_totals() {
        let mut r = ResultFile::new("x");
        r.records.push(ResultRecord { covector: Some(vec!["1".into()]), ..Default::default() });
        r.totals.insert("total".into(), "5".into());
        assert_eq!(r.to_table(), "x\ncovector\n(1)\ntotal: 5\n");
    }
}
