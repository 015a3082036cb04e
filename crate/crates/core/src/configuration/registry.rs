//! Stored orbit representatives for every catalogued singularity type, and the
//! search that produced them.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::registry_data::ENTRIES;
use super::{catalog_types, orbit_fingerprint, ConfigError, Configuration, Fingerprint, SingularityType};
use crate::classes::ClassCatalog;

/// One stored representative: roots are given by their symbolic names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegistryEntry {
    pub type_name: &'static str,
    /// Set when the type has more than one orbit.
    pub variant: Option<&'static str>,
    pub roots: &'static [&'static str],
    /// Realizability remark, e.g. characteristic restrictions.
    pub note: Option<&'static str>,
}

impl RegistryEntry {
    pub fn singularity_type(&self) -> SingularityType {
        self.type_name.parse().expect("registry type names parse")
    }

    pub fn configuration(&self, cat: &ClassCatalog) -> Result<Configuration, ConfigError> {
        let roots = self
            .roots
            .iter()
            .map(|n| cat.named(n).map_err(|_| ConfigError::BadType(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Configuration::new(cat.lattice(), roots)
    }
}

pub fn registry_entries() -> &'static [RegistryEntry] {
    ENTRIES
}

/// The stored representative of a type; `variant` is required when the type
/// has several orbits.
pub fn registry_representative(
    ty: &SingularityType,
    variant: Option<&str>,
    cat: &ClassCatalog,
) -> Result<Configuration, ConfigError> {
    let name = ty.to_string();
    let matching: Vec<&RegistryEntry> = ENTRIES.iter().filter(|e| e.type_name == name).collect();
    let entry = match (matching.as_slice(), variant) {
        ([], _) => return Err(ConfigError::UnknownType(name)),
        ([only], None) => *only,
        (_, None) => return Err(ConfigError::AmbiguousVariant(name)),
        (_, Some(v)) => {
            matching
                .iter()
                .find(|e| e.variant == Some(v))
                .copied()
                .ok_or_else(|| ConfigError::UnknownVariant {
                    ty: name.clone(),
                    variant: v.to_string(),
                })?
        }
    };
    entry.configuration(cat)
}

/// Representatives of all orbits of root configurations of total rank at most 7,
/// found by extending representatives one root at a time and keeping one per
/// `(type, fingerprint)`. Grouped by type in catalog order.
pub fn search_representatives(cat: &ClassCatalog) -> BTreeMap<SingularityType, Vec<Configuration>> {
    let mut seen: HashSet<(SingularityType, Fingerprint)> = HashSet::new();
    let mut found: BTreeMap<SingularityType, Vec<Configuration>> = BTreeMap::new();
    // Prefer positive, low-index names so representatives read naturally.
    let mut order: Vec<usize> = (0..cat.roots().len()).collect();
    order.sort_by_key(|&i| cat.root_name(i).cloned());
    let mut layer = vec![Configuration::new(cat.lattice(), Vec::new()).expect("empty configuration is valid")];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for cfg in &layer {
            for r in order.iter().map(|&i| &cat.roots()[i]) {
                if cfg
                    .simple_roots()
                    .iter()
                    .any(|f| f.dot(r) < 0 || f.dot(r) > 1 || f == r)
                {
                    continue;
                }
                let mut roots = cfg.simple_roots().to_vec();
                roots.push(r.clone());
                let Ok(ext) = Configuration::new(cat.lattice(), roots) else {
                    continue;
                };
                if ext.type_label().total_rank() > 7 {
                    continue;
                }
                if seen.insert((ext.type_label().clone(), orbit_fingerprint(&ext, cat))) {
                    found.entry(ext.type_label().clone()).or_default().push(ext.clone());
                    next.push(ext);
                }
            }
        }
        layer = next;
    }
    found
}

/// Catalogued types missing from a search result.
pub fn missing_types(found: &BTreeMap<SingularityType, Vec<Configuration>>) -> Vec<SingularityType> {
    catalog_types().into_iter().filter(|t| !found.contains_key(t)).collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::lattice::DivisorClass;

    fn cat() -> ClassCatalog {
        ClassCatalog::degree_two()
    }

    #[test]
    fn entries_validate_and_classify() {
        let cat = cat();
        for e in registry_entries() {
            let cfg = e.configuration(&cat).unwrap();
            assert_eq!(cfg.type_label(), &e.singularity_type(), "{}", e.type_name);
        }
    }

    #[test]
    fn every_catalogued_type_is_present() {
        let names: BTreeSet<&str> = registry_entries().iter().map(|e| e.type_name).collect();
        for t in catalog_types() {
            assert!(names.contains(t.to_string().as_str()), "{t}");
        }
        assert_eq!(names.len(), 40);
        assert_eq!(registry_entries().len(), 46);
    }

    #[test]
    fn stored_data_matches_a_fresh_search() {
        let cat = cat();
        let found = search_representatives(&cat);
        assert!(missing_types(&found).is_empty());
        let searched: BTreeSet<(SingularityType, Fingerprint)> = found
            .values()
            .flatten()
            .map(|c| (c.type_label().clone(), orbit_fingerprint(c, &cat)))
            .collect();
        let stored: BTreeSet<(SingularityType, Fingerprint)> = registry_entries()
            .iter()
            .map(|e| {
                let c = e.configuration(&cat).unwrap();
                (c.type_label().clone(), orbit_fingerprint(&c, &cat))
            })
            .collect();
        assert_eq!(
            stored.len(),
            registry_entries().len(),
            "stored fingerprints are distinct"
        );
        assert_eq!(searched, stored);
        assert!(found.keys().all(|t| t.total_rank() <= 7));
    }

    #[test]
    fn lookup() {
        let cat = cat();
        let cfg = registry_representative(&"2A1".parse().unwrap(), None, &cat).unwrap();
        let want = vec![
            DivisorClass::new(vec![0, 1, -1, 0, 0, 0, 0, 0]),
            DivisorClass::new(vec![0, 0, 0, 1, -1, 0, 0, 0]),
        ];
        assert_eq!(cfg.simple_roots(), want.as_slice());
        let a13: SingularityType = "A1+A3".parse().unwrap();
        assert!(matches!(
            registry_representative(&a13, None, &cat),
            Err(ConfigError::AmbiguousVariant(_))
        ));
        assert!(matches!(
            registry_representative(&a13, Some("9"), &cat),
            Err(ConfigError::UnknownVariant { .. })
        ));
        let v1 = registry_representative(&a13, Some("1"), &cat).unwrap();
        let v2 = registry_representative(&a13, Some("2"), &cat).unwrap();
        assert_ne!(orbit_fingerprint(&v1, &cat), orbit_fingerprint(&v2, &cat));
        let d4x2: SingularityType = "2D4".parse().unwrap();
        assert!(matches!(
            registry_representative(&d4x2, None, &cat),
            Err(ConfigError::UnknownType(_))
        ));
        let seven = registry_entries().iter().find(|e| e.type_name == "7A1").unwrap();
        assert!(seven.note.unwrap().contains("characteristic 2"));
    }
}
