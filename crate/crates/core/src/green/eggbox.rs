use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use super::Partition;
use crate::error::{Error, Result};

/// A grid of cells indexed by one class index per axis. With axes R and L
/// this is the usual eggbox; more axes give higher-dimensional boxes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EggboxDiagram {
    pub axes: Vec<String>,
    pub classes_per_axis: Vec<usize>,
    /// Every index tuple of the grid, including empty cells.
    #[serde(serialize_with = "serialize_cells")]
    pub cells: BTreeMap<Vec<usize>, Vec<String>>,
}

fn cell_key(idx: &[usize]) -> String {
    idx.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn serialize_cells<S: serde::Serializer>(
    cells: &BTreeMap<Vec<usize>, Vec<String>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(cells.len()))?;
    for (k, v) in cells {
        m.serialize_entry(&cell_key(k), v)?;
    }
    m.end()
}

/// Places each label in the cell given by its class on every axis.
pub fn eggbox(labels: &[String], axes: &[(String, Partition)]) -> Result<EggboxDiagram> {
    if axes.is_empty() {
        return Err(Error::Config("an eggbox needs at least one axis".into()));
    }
    for (i, (name, p)) in axes.iter().enumerate() {
        if axes[..i].iter().any(|(n, _)| n == name) {
            return Err(Error::Config(format!("duplicate axis {name}")));
        }
        if p.len() != labels.len() {
            return Err(Error::PartitionMismatch(p.len(), labels.len()));
        }
    }
    let dims: Vec<usize> = axes.iter().map(|(_, p)| p.num_blocks()).collect();
    let mut cells = BTreeMap::new();
    let total: usize = dims.iter().product();
    for flat in 0..total {
        let mut idx = vec![0; dims.len()];
        let mut rest = flat;
        for d in (0..dims.len()).rev() {
            idx[d] = rest % dims[d];
            rest /= dims[d];
        }
        cells.insert(idx, Vec::new());
    }
    for (e, label) in labels.iter().enumerate() {
        let idx: Vec<usize> = axes.iter().map(|(_, p)| p.block_of(e)).collect();
        cells
            .entry(idx)
            .or_insert_with(Vec::new)
            .push(label.clone());
    }
    Ok(EggboxDiagram {
        axes: axes.iter().map(|(n, _)| n.clone()).collect(),
        classes_per_axis: dims,
        cells,
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl EggboxDiagram {
    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn nonempty_cells(&self) -> usize {
        self.cells.values().filter(|v| !v.is_empty()).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("diagram serializes")
    }

    /// Graphviz rendering of a 2-D diagram: one cluster per D-class (rows
    /// and columns connected through nonempty cells), rows stacked, cells
    /// of a row side by side.
    pub fn to_dot(&self) -> Result<String> {
        if self.dimension() != 2 {
            return Err(Error::Config(format!(
                "DOT export needs a 2-D eggbox, this one has {} axes",
                self.dimension()
            )));
        }
        let (rows, cols) = (self.classes_per_axis[0], self.classes_per_axis[1]);
        // rows are 0..rows, columns rows..rows+cols
        let mut keys: Vec<usize> = (0..rows + cols).collect();
        fn find(k: &mut [usize], mut x: usize) -> usize {
            while k[x] != x {
                x = k[x];
            }
            x
        }
        for (idx, v) in &self.cells {
            if !v.is_empty() {
                let (a, b) = (find(&mut keys, idx[0]), find(&mut keys, rows + idx[1]));
                keys[a.max(b)] = a.min(b);
            }
        }
        let mut clusters: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for r in 0..rows {
            clusters.entry(find(&mut keys, r)).or_default().0.push(r);
        }
        for c in 0..cols {
            clusters
                .entry(find(&mut keys, rows + c))
                .or_default()
                .1
                .push(c);
        }

        let mut out = String::new();
        writeln!(out, "digraph eggbox {{").unwrap();
        writeln!(out, "  node [shape=box];").unwrap();
        writeln!(out, "  edge [style=invis];").unwrap();
        for (n, (_, (rs, cs))) in clusters.iter().enumerate() {
            writeln!(out, "  subgraph cluster_d{n} {{").unwrap();
            writeln!(out, "    label=\"D{n}\";").unwrap();
            for &r in rs {
                let ids: Vec<String> = cs.iter().map(|c| format!("c{r}_{c}")).collect();
                for (&c, id) in cs.iter().zip(&ids) {
                    let elems = &self.cells[&vec![r, c]];
                    let style = if elems.is_empty() {
                        ", style=dashed"
                    } else {
                        ""
                    };
                    let label = elems
                        .iter()
                        .map(|e| dot_escape(e))
                        .collect::<Vec<_>>()
                        .join("\\n");
                    writeln!(out, "    {id} [label=\"{label}\"{style}];").unwrap();
                }
                writeln!(out, "    {{ rank=same; {} }}", ids.join("; ")).unwrap();
            }
            for w in rs.windows(2) {
                for &c in cs {
                    writeln!(out, "    c{}_{c} -> c{}_{c};", w[0], w[1]).unwrap();
                }
            }
            writeln!(out, "  }}").unwrap();
        }
        writeln!(out, "}}").unwrap();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn left_zero_column() {
        let axes = vec![
            ("R".to_string(), Partition::discrete(3)),
            ("L".to_string(), Partition::universal(3)),
        ];
        let e = eggbox(&labels(3), &axes).unwrap();
        assert_eq!(e.classes_per_axis, vec![3, 1]);
        assert_eq!(e.cells.len(), 3);
        assert!(e.cells.values().all(|c| c.len() == 1));
        let dot = e.to_dot().unwrap();
        assert!(dot.contains("cluster_d0"));
        assert!(!dot.contains("cluster_d1"));
    }

    #[test]
    fn json_layout() {
        let axes = vec![
            ("R".to_string(), Partition::from_block_of(vec![0, 0, 1, 1])),
            ("L".to_string(), Partition::from_block_of(vec![0, 1, 0, 1])),
        ];
        let e = eggbox(&labels(4), &axes).unwrap();
        let j = e.to_json();
        assert_eq!(j["axes"], serde_json::json!(["R", "L"]));
        assert_eq!(j["cells"]["1,0"], serde_json::json!(["x2"]));
    }

    #[test]
    fn duplicate_axes_rejected() {
        let p = Partition::discrete(2);
        let axes = vec![("R".to_string(), p.clone()), ("R".to_string(), p)];
        assert!(eggbox(&labels(2), &axes).is_err());
    }

    #[test]
    fn three_dimensional_box_has_empty_cells() {
        let axes = vec![
            ("a".to_string(), Partition::from_block_of(vec![0, 1])),
            ("b".to_string(), Partition::from_block_of(vec![0, 1])),
            ("c".to_string(), Partition::universal(2)),
        ];
        let e = eggbox(&labels(2), &axes).unwrap();
        assert_eq!(e.cells.len(), 4);
        assert_eq!(e.nonempty_cells(), 2);
        assert!(e.to_dot().is_err());
    }
}
