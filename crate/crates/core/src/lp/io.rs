//! Columnar atom format.
//!
//! ```text
//! # comment lines start with '#'
//! # truncated            (optional directive: space is a finite window)
//! atom_id weight t1 t2 t3
//! 0 0.25 1.0 0.5 0
//! 1 0.75 2.0 0.0 1
//! ```
//!
//! The header names the family members; each following line is one atom
//! with its weight and one value per member. Values are written with the
//! shortest representation that round-trips, so save/load is lossless.

use std::fmt::Write as _;
use std::sync::Arc;

use super::{DiscreteMeasureSpace, SimpleFunction};
use crate::error::{Error, Result};

/// Columns of a parsed atom table.
#[derive(Debug, Clone)]
pub struct AtomTable {
    pub space: Arc<DiscreteMeasureSpace>,
    pub labels: Vec<String>,
    pub columns: Vec<SimpleFunction>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_atom_table(text: &str) -> Result<AtomTable> {
    let mut truncated = false;
    let mut labels: Option<Vec<String>> = None;
    let mut ids = Vec::new();
    let mut weights = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if comment.trim() == "truncated" {
                truncated = true;
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match &labels {
            None => {
                if fields.len() < 2 || fields[0] != "atom_id" || fields[1] != "weight" {
                    return Err(parse_err(line_no, "header must start with `atom_id weight`"));
                }
                labels = Some(fields[2..].iter().map(|s| s.to_string()).collect());
            }
            Some(l) => {
                if fields.len() != l.len() + 2 {
                    return Err(parse_err(
                        line_no,
                        format!("expected {} fields, found {}", l.len() + 2, fields.len()),
                    ));
                }
                let id: u64 = fields[0]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad atom id `{}`", fields[0])))?;
                let mut nums = Vec::with_capacity(fields.len() - 1);
                for f in &fields[1..] {
                    let v: f64 = f.parse().map_err(|_| parse_err(line_no, format!("bad number `{f}`")))?;
                    nums.push(v);
                }
                ids.push(id);
                weights.push(nums[0]);
                rows.push(nums[1..].to_vec());
            }
        }
    }
    let labels = labels.ok_or_else(|| parse_err(0, "missing header line"))?;
    let space = DiscreteMeasureSpace::new(ids, weights, truncated)?.into_shared();
    let columns = (0..labels.len())
        .map(|j| SimpleFunction::new(Arc::clone(&space), rows.iter().map(|r| r[j]).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(AtomTable { space, labels, columns })
}

pub fn write_atom_table(labels: &[String], columns: &[SimpleFunction]) -> Result<String> {
    if labels.len() != columns.len() {
        return Err(Error::Construction(format!("{} labels for {} columns", labels.len(), columns.len())));
    }
    if let Some(bad) = labels.iter().find(|l| l.is_empty() || l.contains(char::is_whitespace)) {
        return Err(Error::Construction(format!("label `{bad}` must be a nonempty word")));
    }
    let space = match columns.first() {
        Some(c) => Arc::clone(c.space()),
        None => return Err(Error::Construction("atom table needs at least one column".into())),
    };
    if columns.iter().any(|c| !super::measure::same_space(c.space(), &space)) {
        return Err(Error::Construction("columns live on different spaces".into()));
    }
    let mut out = String::new();
    if space.is_truncation() {
        out.push_str("# truncated\n");
    }
    out.push_str("atom_id weight");
    for l in labels {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for i in 0..space.len() {
        let _ = write!(out, "{} {}", space.ids()[i], space.weights()[i]);
        for c in columns {
            let _ = write!(out, " {}", c.values()[i]);
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_lossless() {
        let space = DiscreteMeasureSpace::new(vec![3, 7, 9], vec![0.1, 1.0 / 3.0, 2.5], true)
            .unwrap()
            .into_shared();
        let a = SimpleFunction::new(space.clone(), vec![1e-300, -2.0 / 7.0, 0.0]).unwrap();
        let b = SimpleFunction::new(space, vec![std::f64::consts::PI, 5.0, -1e10]).unwrap();
        let labels = vec!["a".to_string(), "b".to_string()];
        let text = write_atom_table(&labels, &[a.clone(), b.clone()]).unwrap();
        let t = parse_atom_table(&text).unwrap();
        assert!(t.space.is_truncation());
        assert_eq!(t.labels, labels);
        assert_eq!(t.columns[0].values(), a.values());
        assert_eq!(t.columns[1].values(), b.values());
        assert_eq!(t.space.weights(), a.space().weights());
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let err = parse_atom_table("# c\natom_id weight x\n0 1.0 2.0\n1 1.0\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 4, msg: "expected 3 fields, found 2".into() });
        assert!(matches!(parse_atom_table("id w x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_atom_table("atom_id weight x\n0 1 zz\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_atom_table("atom_id weight x\n0 -1 1\n"), Err(Error::Construction(_))));
    }
}
