use std::collections::{BTreeMap, HashSet};
use std::path::Path;
use std::sync::Arc;

use medial_ldc::palgebra::PosetalSMLDC;
use medial_ldc::pcoh::{MorphismJson, Mutation, ObjectJson, PCoh, PCohMorphism, PCohObject};
use serde::Deserialize;

use crate::Fail;

#[derive(Debug, Deserialize)]
pub struct NamedAlgebra {
    pub name: String,
    #[serde(flatten)]
    pub algebra: PosetalSMLDC,
}

#[derive(Debug, Deserialize)]
pub struct NamedObject {
    pub name: String,
    pub algebra: String,
    #[serde(flatten)]
    pub object: ObjectJson,
}

#[derive(Debug, Deserialize)]
pub struct NamedMorphism {
    pub name: String,
    #[serde(flatten)]
    pub morphism: MorphismJson,
}

/// On-disk model: named algebras, objects over them, and arrows between objects.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub algebras: Vec<NamedAlgebra>,
    #[serde(default)]
    pub objects: Vec<NamedObject>,
    #[serde(default)]
    pub morphisms: Vec<NamedMorphism>,
    /// Drop one pair from a structural generator in every model built from this file.
    #[serde(default)]
    pub mutation: Option<Mutation>,
    /// Corrupt the mediating arrow of this probe in `bimonoid universal`.
    #[serde(default)]
    pub mutate_pairing: Option<usize>,
}

/// A model file with every name resolved.
pub struct Model {
    pub file: ModelFile,
    pub algebras: BTreeMap<String, Arc<PosetalSMLDC>>,
    pub objects: Vec<(String, String, PCohObject)>,
    pub morphisms: Vec<(String, PCohMorphism)>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

impl Model {
    pub fn load(path: &Path) -> Result<Model, Fail> {
        let file: ModelFile = read_json(path)?;
        let mut seen = HashSet::new();
        let names = file
            .algebras
            .iter()
            .map(|a| &a.name)
            .chain(file.objects.iter().map(|o| &o.name))
            .chain(file.morphisms.iter().map(|m| &m.name));
        for n in names {
            if !seen.insert(n.clone()) {
                return Err(Fail::Input(format!("duplicate name `{n}`")));
            }
        }
        if file.algebras.is_empty() {
            return Err(Fail::Input("model has no algebras".into()));
        }
        let algebras: BTreeMap<String, Arc<PosetalSMLDC>> = file
            .algebras
            .iter()
            .map(|a| (a.name.clone(), Arc::new(a.algebra.clone())))
            .collect();
        let mut objects = Vec::new();
        for o in &file.objects {
            let alg = algebras
                .get(&o.algebra)
                .ok_or_else(|| Fail::Input(format!("object `{}`: unknown algebra `{}`", o.name, o.algebra)))?;
            let obj = PCohObject::from_json(&o.object, alg.clone()).map_err(|e| Fail::Input(format!("object `{}`: {e}", o.name)))?;
            objects.push((o.name.clone(), o.algebra.clone(), obj));
        }
        let mut morphisms = Vec::new();
        for m in &file.morphisms {
            let find = |n: &str| {
                objects
                    .iter()
                    .find(|o| o.0 == n)
                    .map(|o| o.2.clone())
                    .ok_or_else(|| Fail::Input(format!("morphism `{}`: unknown object `{n}`", m.name)))
            };
            let (src, tgt) = (find(&m.morphism.src)?, find(&m.morphism.tgt)?);
            if !Arc::ptr_eq(src.algebra(), tgt.algebra()) {
                return Err(Fail::Input(format!("morphism `{}`: endpoints over different algebras", m.name)));
            }
            let f = PCohMorphism::from_table(src, tgt, &m.morphism.rel).map_err(|e| Fail::Input(format!("morphism `{}`: {e}", m.name)))?;
            morphisms.push((m.name.clone(), f));
        }
        Ok(Model {
            file,
            algebras,
            objects,
            morphisms,
        })
    }

    /// The named algebra, or the first one in the file.
    pub fn algebra(&self, name: Option<&str>) -> Result<(String, Arc<PosetalSMLDC>), Fail> {
        let name = name.unwrap_or(&self.file.algebras[0].name);
        self.algebras
            .get(name)
            .map(|a| (name.to_string(), a.clone()))
            .ok_or_else(|| Fail::Input(format!("unknown algebra `{name}`")))
    }

    pub fn pcoh(&self, algebra: Arc<PosetalSMLDC>) -> PCoh {
        match self.file.mutation {
            Some(m) => PCoh::with_mutation(algebra, m),
            None => PCoh::new(algebra),
        }
    }

    pub fn object(&self, name: &str) -> Result<&(String, String, PCohObject), Fail> {
        self.objects
            .iter()
            .find(|o| o.0 == name)
            .ok_or_else(|| Fail::Input(format!("unknown object `{name}`")))
    }
}
