//! Scenario files: a map, the tuples to examine, optional relations and the
//! run parameters. All polynomial payloads use the text format of
//! [`Poly::parse`]; all numbers are exact rational strings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engine::{Leaf, DEFAULT_L_MAX, DEFAULT_WINDOW};
use crate::error::{Error, Result};
use crate::jet::{FibredTuple, PolyMapInstance};
use crate::poly::{Poly, PolyMap};
use crate::scalar::{format_point, parse_point, Scalar};
use crate::staircase::IdealPresentation;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub m: usize,
    pub n: usize,
    pub components: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeafSpec {
    pub params: Vec<String>,
    pub point_exprs: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NuSpec {
    /// Polynomial in `y1..yn`, in global coordinates.
    pub f: String,
    /// Relations key naming the tuple whose image and ideal are used.
    pub at: String,
    #[serde(default)]
    pub d: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub at: String,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_product_degree")]
    pub max_degree: u32,
    #[serde(default)]
    pub d: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuSpec {
    pub f: String,
    /// Tuple key: its points are sampled around, its image is `b`.
    pub at: String,
    pub l_range: [u32; 2],
    #[serde(default = "default_box")]
    pub box_radius: f64,
    #[serde(default = "default_shrink")]
    pub shrink: f64,
    #[serde(default = "default_scales")]
    pub scales: usize,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_trials() -> usize {
    200
}
fn default_product_degree() -> u32 {
    4
}
fn default_box() -> f64 {
    0.5
}
fn default_shrink() -> f64 {
    0.5
}
fn default_scales() -> usize {
    10
}
fn default_samples() -> usize {
    64
}
fn default_l_max() -> u32 {
    DEFAULT_L_MAX
}
fn default_window() -> u32 {
    DEFAULT_WINDOW
}
fn default_leaf_trials() -> usize {
    5
}

/// The on-disk scenario format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub map: MapSpec,
    #[serde(default)]
    pub points: Vec<Vec<String>>,
    #[serde(default)]
    pub tuples: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub leaves: Vec<LeafSpec>,
    /// Tuple label (`a1,a2;b1,b2` for a two-point tuple in `K^2`) to generators.
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<String>>,
    pub k_range: [u32; 2],
    #[serde(default = "default_l_max")]
    pub l_max: u32,
    #[serde(default = "default_window")]
    pub window: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_leaf_trials")]
    pub leaf_trials: usize,
    #[serde(default)]
    pub nu: Vec<NuSpec>,
    #[serde(default)]
    pub product: Vec<ProductSpec>,
    #[serde(default)]
    pub mu: Vec<MuSpec>,
}

/// A parsed and validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub map: PolyMapInstance,
    pub tuples: Vec<FibredTuple>,
    pub leaves: Vec<Leaf>,
    pub relations: BTreeMap<String, IdealPresentation>,
    pub k_min: u32,
    pub k_max: u32,
    pub l_max: u32,
    pub window: u32,
    pub seed: u64,
    pub leaf_trials: usize,
    pub nu: Vec<NuSpec>,
    pub product: Vec<ProductSpec>,
    pub mu: Vec<MuSpec>,
}

/// Command-line adjustments applied after loading.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub k_max: Option<u32>,
    pub l_max: Option<u32>,
    pub window: Option<u32>,
    pub seed: Option<u64>,
}

/// Canonical tuple label for a relations key such as `"1/2, 0 ; -1/2,0"`.
pub fn canonical_key(key: &str) -> Result<String> {
    let pts = key
        .split(';')
        .map(|p| {
            let coords: Vec<String> = p.split(',').map(|c| c.trim().to_string()).collect();
            parse_point(&coords).map(|v| format_point(&v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pts.join(";"))
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("scenario: {e}")))?;
        Scenario::from_file(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        Scenario::from_json(&text)
    }

    pub fn from_file(file: ScenarioFile) -> Result<Self> {
        let MapSpec { name, m, n, components } = file.map;
        if components.len() != n {
            return Err(Error::input(format!(
                "map declares n = {n} but has {} components",
                components.len()
            )));
        }
        let comps = components
            .iter()
            .map(|c| Poly::parse_in(c, "x", m))
            .collect::<Result<Vec<_>>>()?;
        let map = PolyMapInstance::new(name.unwrap_or_else(|| "map".into()), PolyMap::new(m, comps)?);

        let mut tuples = Vec::new();
        for p in &file.points {
            tuples.push(FibredTuple::single(&map.map, parse_point(p)?)?);
        }
        for t in &file.tuples {
            let pts = t.iter().map(|p| parse_point(p)).collect::<Result<Vec<_>>>()?;
            tuples.push(FibredTuple::new(&map.map, pts)?);
        }

        let mut relations = BTreeMap::new();
        for (key, gens) in &file.relations {
            let ck = canonical_key(key)?;
            let tuple = tuples
                .iter()
                .find(|t| t.label() == ck)
                .ok_or_else(|| Error::input(format!("relations key `{key}` names no listed point or tuple")))?;
            let polys = gens
                .iter()
                .map(|g| Poly::parse_in(g, "y", n))
                .collect::<Result<Vec<_>>>()?;
            relations.insert(ck, IdealPresentation::new(polys, tuple.image().to_vec())?);
        }

        let leaves = file
            .leaves
            .iter()
            .map(|l| {
                let exprs = l
                    .point_exprs
                    .iter()
                    .map(|pt| pt.iter().map(|e| Poly::parse(e, &l.params)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let leaf = Leaf {
                    params: l.params.clone(),
                    point_exprs: exprs,
                };
                leaf.check(&map)?;
                Ok(leaf)
            })
            .collect::<Result<Vec<_>>>()?;

        let [k_min, k_max] = file.k_range;
        let sc = Scenario {
            map,
            tuples,
            leaves,
            relations,
            k_min,
            k_max,
            l_max: file.l_max,
            window: file.window,
            seed: file.seed,
            leaf_trials: file.leaf_trials,
            nu: file.nu,
            product: file.product,
            mu: file.mu,
        };
        sc.validate()?;
        Ok(sc)
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(k) = o.k_max {
            self.k_max = k;
        }
        if let Some(l) = o.l_max {
            self.l_max = l;
        }
        if let Some(w) = o.window {
            self.window = w;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        self.validate()
    }

    fn validate(&self) -> Result<()> {
        if self.k_min > self.k_max {
            return Err(Error::input("k_range is empty"));
        }
        if self.k_max > self.l_max {
            return Err(Error::input(format!(
                "k_max = {} exceeds l_max = {}",
                self.k_max, self.l_max
            )));
        }
        if self.window == 0 {
            return Err(Error::input("window must be at least 1"));
        }
        Ok(())
    }

    pub fn ks(&self) -> Vec<u32> {
        (self.k_min..=self.k_max).collect()
    }

    pub fn tuple_by_key(&self, key: &str) -> Result<&FibredTuple> {
        let ck = canonical_key(key)?;
        self.tuples
            .iter()
            .find(|t| t.label() == ck)
            .ok_or_else(|| Error::input(format!("`{key}` names no listed point or tuple")))
    }

    pub fn relations_for(&self, tuple: &FibredTuple) -> Option<&IdealPresentation> {
        self.relations.get(&tuple.label())
    }

    /// Relations at a key, or an input error.
    pub fn relations_at(&self, key: &str) -> Result<&IdealPresentation> {
        let ck = canonical_key(key)?;
        self.relations
            .get(&ck)
            .ok_or_else(|| Error::input(format!("no relations given for `{key}`")))
    }

    pub fn image_at(&self, key: &str) -> Result<Vec<Scalar>> {
        Ok(self.tuple_by_key(key)?.image().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUSP: &str = r#"{
        "map": {"name": "cusp", "m": 1, "n": 2, "components": ["x1^2", "x1^3"]},
        "points": [["0"], ["1/2"]],
        "relations": {"0": ["y1^3 - y2^2"], "2/4": ["y1^3 - y2^2"]},
        "k_range": [1, 3],
        "seed": 3
    }"#;

    #[test]
    fn parses_and_canonicalizes_keys() {
        let sc = Scenario::from_json(CUSP).unwrap();
        assert_eq!(sc.tuples.len(), 2);
        assert!(sc.relations.contains_key("1/2"));
        assert_eq!(sc.l_max, DEFAULT_L_MAX);
        assert_eq!(sc.ks(), vec![1, 2, 3]);
        assert_eq!(canonical_key(" 2/4 , -0 ; 1").unwrap(), "1/2,0;1");
    }

    #[test]
    fn rejects_bad_scenarios() {
        let bad_tuple = CUSP.replace(r#""points": [["0"], ["1/2"]]"#, r#""tuples": [[["1"], ["2"]]]"#);
        assert!(Scenario::from_json(&bad_tuple).is_err());
        let bad_key = CUSP.replace(r#""2/4""#, r#""3""#);
        assert!(Scenario::from_json(&bad_key).is_err());
        let bad_k = CUSP.replace("[1, 3]", "[1, 30]");
        assert!(Scenario::from_json(&bad_k).is_err());
        assert!(Scenario::from_json("{").is_err());
        let unknown = CUSP.replace(r#""seed": 3"#, r#""sed": 3"#);
        assert!(Scenario::from_json(&unknown).is_err());
    }
}
