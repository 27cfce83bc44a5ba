//! JSON file formats for groups, modules and quadratic forms.

use std::collections::BTreeMap;
use std::path::Path;

use brauerkit_core::arith::{format_rational, parse_rational};
use brauerkit_core::cohomology::{FiniteGroup, GModule};
use brauerkit_core::linalg::IntMatrix;
use brauerkit_core::quadform::QuadraticForm;
use brauerkit_core::Rational;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table { order: usize, table: Vec<Vec<usize>>, identity: usize },
    Permutations { permutation_generators: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, CliError> {
        match self {
            GroupSpec::Table { order, table, identity } => {
                if table.len() != *order {
                    return Err(CliError::Parse(format!("table has {} rows but order is {order}", table.len())));
                }
                Ok(FiniteGroup::from_table(table.clone(), *identity)?)
            }
            GroupSpec::Permutations { permutation_generators } => {
                Ok(FiniteGroup::from_permutations(permutation_generators)?)
            }
        }
    }

    /// The canonical table form of a group.
    pub fn table_of(group: &FiniteGroup) -> Self {
        GroupSpec::Table { order: group.order(), table: group.table(), identity: group.identity() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub rank: usize,
    pub modulus: u64,
    /// Keyed by element index, or by generator index for permutation groups.
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

impl ModuleSpec {
    pub fn build(&self, group: &FiniteGroup, spec: &GroupSpec) -> Result<GModule, CliError> {
        let mut on = Vec::with_capacity(self.action.len());
        for (key, rows) in &self.action {
            let idx: usize = key.trim().parse().map_err(|_| CliError::Parse(format!("action key {key:?} is not an index")))?;
            let element = match spec {
                GroupSpec::Table { .. } => idx,
                GroupSpec::Permutations { .. } => *group
                    .generators()
                    .get(idx)
                    .ok_or_else(|| CliError::Parse(format!("no generator with index {idx}")))?,
            };
            if element >= group.order() {
                return Err(CliError::Parse(format!("no element with index {idx}")));
            }
            if rows.len() != self.rank || rows.iter().any(|r| r.len() != self.rank) {
                return Err(CliError::Parse(format!("matrix for {key} is not {0}x{0}", self.rank)));
            }
            on.push((element, IntMatrix::from_rows(rows)));
        }
        Ok(GModule::from_generators(group, self.rank, self.modulus, &on)?)
    }

    /// The action written out on every element, keyed by element index.
    pub fn full_action(module: &GModule, group: &FiniteGroup) -> Self {
        let elements: Vec<usize> = (0..group.order()).collect();
        let action = module.action_on(&elements).into_iter().map(|(k, m)| (k.to_string(), m)).collect();
        ModuleSpec { rank: module.rank(), modulus: module.modulus(), action }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSpec {
    pub gram: Vec<Vec<String>>,
}

impl FormSpec {
    pub fn build(&self) -> Result<QuadraticForm, CliError> {
        let gram = self
            .gram
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(QuadraticForm::new(gram)?)
    }

    pub fn of(form: &QuadraticForm) -> Self {
        FormSpec { gram: form.gram().iter().map(|row| row.iter().map(format_rational).collect()).collect() }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Parses `"1,-2,7/3"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_rational(t).map_err(|e| CliError::Parse(e.to_string())))
        .collect()
}

pub fn parse_rational_arg(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use brauerkit_core::cohomology::corpus;

    #[test]
    fn group_spec_forms() {
        let table: GroupSpec = serde_json::from_str(r#"{"order":2,"table":[[0,1],[1,0]],"identity":0}"#).unwrap();
        assert_eq!(table.build().unwrap().order(), 2);
        let perms: GroupSpec = serde_json::from_str(r#"{"permutation_generators":[[1,2,0],[1,0,2]]}"#).unwrap();
        let s3 = perms.build().unwrap();
        assert_eq!(s3.order(), 6);
        let round = GroupSpec::table_of(&s3);
        assert_eq!(round.build().unwrap().table(), s3.table());
    }

    #[test]
    fn module_on_permutation_generators() {
        let spec = GroupSpec::Permutations { permutation_generators: vec![vec![1, 2, 0]] };
        let g = spec.build().unwrap();
        let m: ModuleSpec = serde_json::from_str(r#"{"rank":1,"modulus":3,"action":{"0":[[1]]}}"#).unwrap();
        let module = m.build(&g, &spec).unwrap();
        assert_eq!(module.modulus(), 3);
        let bad: ModuleSpec = serde_json::from_str(r#"{"rank":1,"modulus":0,"action":{"4":[[1]]}}"#).unwrap();
        assert!(matches!(bad.build(&g, &spec), Err(CliError::Parse(_))));
    }

    #[test]
    fn full_action_round_trips() {
        let g = corpus::symmetric3();
        let spec = GroupSpec::table_of(&g);
        let module = GModule::permutation_module(&g, &[0]).unwrap();
        let written = ModuleSpec::full_action(&module, &g);
        assert_eq!(written.build(&g, &spec).unwrap(), module);
    }

    #[test]
    fn forms_and_lists() {
        let f = FormSpec { gram: vec![vec!["1".into(), "1/2".into()], vec!["1/2".into(), "-3".into()]] };
        let q = f.build().unwrap();
        assert_eq!(FormSpec::of(&q), f);
        assert_eq!(parse_rational_list("1,-2,-7").unwrap().len(), 3);
        assert!(parse_rational_list("1,x").is_err());
    }
}
