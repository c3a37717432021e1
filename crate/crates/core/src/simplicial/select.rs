use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{CarlssonModel, ConstantModel, PointwiseModel};
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::fp_group::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Constant,
    Cech,
    Edges,
    Triangles,
    Carlsson,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Constant => "constant",
            ModelKind::Cech => "cech",
            ModelKind::Edges => "edges",
            ModelKind::Triangles => "triangles",
            ModelKind::Carlsson => "carlsson",
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "constant" => ModelKind::Constant,
            "cech" => ModelKind::Cech,
            "edges" => ModelKind::Edges,
            "triangles" => ModelKind::Triangles,
            "carlsson" => ModelKind::Carlsson,
            _ => return Err(Error::Parse(format!("unknown model kind `{s}`"))),
        })
    }
}

/// `kind:group`, the group given by name or as a path to a JSON table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub group: String,
}

impl FromStr for ModelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, group) =
            s.split_once(':').ok_or_else(|| Error::Parse(format!("model `{s}` must look like kind:group")))?;
        if group.is_empty() {
            return Err(Error::Parse(format!("model `{s}` names no group")));
        }
        Ok(ModelSpec { kind: kind.parse()?, group: group.to_string() })
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.as_str(), self.group)
    }
}

/// A group by name, or loaded from a JSON table when the selector is a path.
pub fn resolve_group(selector: &str) -> Result<FiniteGroup> {
    if selector.ends_with(".json") || selector.contains('/') {
        let text = std::fs::read_to_string(selector)
            .map_err(|e| Error::Invalid(format!("cannot read group table `{selector}`: {e}")))?;
        return FiniteGroup::from_json(&text);
    }
    FiniteGroup::by_name(selector)
}

#[derive(Clone, Debug)]
pub enum AnyModel {
    Constant(ConstantModel),
    Pointwise(PointwiseModel),
    Carlsson(CarlssonModel),
}

impl ModelSpec {
    pub fn build(&self, max_dim: usize, bounds: Bounds) -> Result<AnyModel> {
        let pi = Arc::new(resolve_group(&self.group)?);
        Ok(match self.kind {
            ModelKind::Constant => AnyModel::Constant(ConstantModel::new(pi, max_dim)),
            ModelKind::Cech => AnyModel::Pointwise(PointwiseModel::new(pi, 0, max_dim, bounds)?),
            ModelKind::Edges => AnyModel::Pointwise(PointwiseModel::new(pi, 1, max_dim, bounds)?),
            ModelKind::Triangles => AnyModel::Pointwise(PointwiseModel::new(pi, 2, max_dim, bounds)?),
            ModelKind::Carlsson => AnyModel::Carlsson(CarlssonModel::new(pi, max_dim)?),
        })
    }
}

/// Runs a generic expression against whichever model is inside an [`AnyModel`].
#[macro_export]
macro_rules! with_model {
    ($any:expr, |$m:ident| $body:expr) => {
        match $any {
            $crate::simplicial::AnyModel::Constant($m) => $body,
            $crate::simplicial::AnyModel::Pointwise($m) => $body,
            $crate::simplicial::AnyModel::Carlsson($m) => $body,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialGroup;

    #[test]
    fn selectors() {
        let spec: ModelSpec = "cech:s3".parse().unwrap();
        assert_eq!(spec.kind, ModelKind::Cech);
        let m = spec.build(2, Bounds::default()).unwrap();
        assert_eq!(with_model!(&m, |x| x.name()), "cech:s3");
        assert!("cech".parse::<ModelSpec>().is_err());
        assert!("sphere:s3".parse::<ModelSpec>().is_err());
        assert!("cech:nope".parse::<ModelSpec>().unwrap().build(2, Bounds::default()).is_err());
        let carl = "carlsson:z2".parse::<ModelSpec>().unwrap().build(3, Bounds::default()).unwrap();
        assert_eq!(with_model!(&carl, |x| x.max_dim()), 3);
    }

    #[test]
    fn json_table_file() {
        let dir = std::env::temp_dir().join(format!("moore-select-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("z3.json");
        std::fs::write(&path, r#"{"order":3,"table":[[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
        let g = resolve_group(path.to_str().unwrap()).unwrap();
        assert_eq!(g.order(), 3);
        std::fs::remove_dir_all(&dir).ok();
    }
}
