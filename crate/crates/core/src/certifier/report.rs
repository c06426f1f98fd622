//! Text renderings of bounds and certificates.
//!
//! Reports are `key=value` lines; the per-constraint table is CSV with the
//! header `level,prefix,r,lhs` and dotted prefixes (empty for level 1).

use std::fmt::Write;

use super::{BoundResult, CertificateReport, ConstraintReport};

impl BoundResult {
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        writeln!(out, "k={}", self.k).unwrap();
        writeln!(out, "n={}", self.n).unwrap();
        writeln!(out, "epsilon={}", self.epsilon).unwrap();
        writeln!(out, "delta={}", self.delta).unwrap();
        writeln!(out, "per_level_term={}", self.per_level_term).unwrap();
        writeln!(out, "raw_bound={}", self.raw_bound).unwrap();
        writeln!(out, "min_dimension={}", self.min_dimension).unwrap();
        writeln!(out, "applicable={}", self.applicable).unwrap();
        out
    }
}

impl CertificateReport {
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        writeln!(out, "epsilon={}", self.epsilon).unwrap();
        writeln!(out, "delta={}", self.bound.delta).unwrap();
        writeln!(out, "per_level_term={}", self.bound.per_level_term).unwrap();
        writeln!(out, "raw_bound={}", self.bound.raw_bound).unwrap();
        writeln!(out, "min_dimension={}", self.bound.min_dimension).unwrap();
        writeln!(out, "applicable={}", self.bound.applicable).unwrap();
        writeln!(out, "embedding_dimension={}", self.embedding_dimension).unwrap();
        writeln!(out, "expansion={}", self.distortion.expansion).unwrap();
        writeln!(out, "contraction={}", self.distortion.contraction).unwrap();
        writeln!(out, "distortion={}", self.distortion.distortion).unwrap();
        writeln!(out, "consistent={}", self.consistent).unwrap();
        out
    }
}

impl ConstraintReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,prefix,r,lhs\n");
        for e in &self.entries {
            let prefix: Vec<String> = e.prefix.iter().map(u32::to_string).collect();
            writeln!(out, "{},{},{},{}", e.level, prefix.join("."), e.r, e.lhs).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::certifier::{certify, dimension_bound};
    use crate::l1metric::Embedding;
    use crate::pointset::{GraphParams, RecursiveCycleGraph};

    #[test]
    fn bound_report() {
        let text = dimension_bound(2, 10, 0.0).unwrap().to_key_values();
        assert!(text.contains("\nraw_bound=511.5\nmin_dimension=512\napplicable=true\n"));
    }

    #[test]
    fn certificate_report_and_table() {
        let g = RecursiveCycleGraph::build(GraphParams::new(2, 2).unwrap()).unwrap();
        let c = certify(&g, &Embedding::identity(g.points()).unwrap()).unwrap();
        let text = c.to_key_values();
        for key in [
            "epsilon=0\n",
            "min_dimension=2\n",
            "embedding_dimension=4\n",
            "distortion=1\n",
            "consistent=true\n",
            "per_level_term=1\n",
            "delta=0\n",
            "raw_bound=1.5\n",
        ] {
            assert!(text.contains(key), "missing {key:?} in\n{text}");
        }
        let csv = c.constraints.to_csv();
        assert_eq!(csv.lines().collect::<Vec<_>>(), ["level,prefix,r,lhs", "1,,1,1", "2,1,1,1", "2,2,1,1", "2,3,1,1", "2,4,1,1"]);
    }
}
