//! The axiom-schema library: K, GL, J1–J5, M, P, W.

use std::collections::BTreeMap;

use super::{parse, Formula};
use crate::error::{Error, Result};

/// Schematic variables in the order they are stored in templates:
/// `p` is `p0`, `q` is `p1`, `r` is `p2`.
const SCHEMATIC: [char; 3] = ['p', 'q', 'r'];

pub const SCHEMA_NAMES: [&str; 10] = ["K", "GL", "J1", "J2", "J3", "J4", "J5", "M", "P", "W"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub name: &'static str,
    template: Formula,
}

fn template_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "K" => "[](p0 -> p1) -> []p0 -> []p1",
        "GL" => "[]([]p0 -> p0) -> []p0",
        "J1" => "[](p0 -> p1) -> (p0 |> p1)",
        "J2" => "(p0 |> p1) & (p1 |> p2) -> (p0 |> p2)",
        "J3" => "(p0 |> p2) & (p1 |> p2) -> (p0 | p1 |> p2)",
        "J4" => "(p0 |> p1) -> <>p0 -> <>p1",
        "J5" => "<>p0 |> p0",
        "M" => "(p0 |> p1) -> (p0 & []p2 |> p1 & []p2)",
        "P" => "(p0 |> p1) -> [](p0 |> p1)",
        "W" => "(p0 |> p1) -> (p0 |> p1 & []~p0)",
        _ => return None,
    })
}

impl Schema {
    pub fn get(name: &str) -> Result<Schema> {
        let (name, text) = SCHEMA_NAMES
            .iter()
            .find(|n| n.eq_ignore_ascii_case(name))
            .and_then(|n| Some((*n, template_text(n)?)))
            .ok_or_else(|| Error::UnknownSchema(name.to_string()))?;
        let template = parse(text).expect("schema templates are well-formed");
        Ok(Schema { name, template })
    }

    /// Every schema in the library, in `SCHEMA_NAMES` order.
    pub fn library() -> Vec<Schema> {
        SCHEMA_NAMES
            .iter()
            .map(|n| Schema::get(n).expect("library names resolve"))
            .collect()
    }

    /// Schematic variables that occur in this schema.
    pub fn schematic_variables(&self) -> Vec<char> {
        self.template
            .variables()
            .into_iter()
            .map(|i| SCHEMATIC[i as usize])
            .collect()
    }

    /// The instance with `p, q, r` renamed to `p0, p1, p2`.
    pub fn instance(&self) -> Formula {
        self.template.clone()
    }

    /// Simultaneous substitution of the schematic variables.
    pub fn instantiate(&self, bindings: &BTreeMap<char, Formula>) -> Result<Formula> {
        let mut map = BTreeMap::new();
        for index in self.template.variables() {
            let var = SCHEMATIC[index as usize];
            let value = bindings.get(&var).ok_or(Error::MissingBinding(var))?;
            map.insert(index, value.clone());
        }
        Ok(self.template.substitute(&map))
    }
}
