//! JSON formats for groups, G-sets, partitions, piles, morphisms,
//! embedding problems and presentations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{by_name, CatalogError};
use crate::embedding::{BasicPile, BasicPileMap, EmbeddingError, PairEmbeddingProblem, PileEmbeddingProblem};
use crate::group::{Elem, FiniteGroup, GroupError, GroupHom, Subgroup, IDENTITY};
use crate::gset::{GSet, GSetError, Partition, Point};
use crate::pile::{Pile, PileError, PileMorphism};
use crate::presentation::{Presentation, PresentationError, Word};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    GSet(#[from] GSetError),
    #[error(transparent)]
    Pile(#[from] PileError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub mul: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A group given inline or by catalog name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Table(GroupJson),
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson { order: g.order(), mul: g.rows(), labels: g.labels().map(|l| l.to_vec()) }
    }

    pub fn to_group(&self) -> Result<FiniteGroup, IoError> {
        if self.mul.len() != self.order {
            return Err(IoError::Invalid(format!("order {} but {} rows", self.order, self.mul.len())));
        }
        if self.order > 0 && self.mul[0].first() != Some(&IDENTITY) {
            return Err(IoError::Invalid("element 0 must be the identity".into()));
        }
        let g = FiniteGroup::from_table(self.mul.clone())?;
        Ok(match &self.labels {
            Some(l) if l.len() != g.order() => {
                return Err(IoError::Invalid(format!("{} labels for order {}", l.len(), g.order())))
            }
            Some(l) => g.with_labels(l.clone()),
            None => g,
        })
    }
}

impl GroupRef {
    pub fn resolve(&self) -> Result<FiniteGroup, IoError> {
        match self {
            GroupRef::Name(n) => Ok(by_name(n)?),
            GroupRef::Table(t) => t.to_group(),
        }
    }

    pub fn inline(g: &FiniteGroup) -> Self {
        GroupRef::Table(GroupJson::from_group(g))
    }
}

/// An action table; `group` is optional when the group is known from context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupRef>,
    pub size: usize,
    pub action: Vec<Vec<Point>>,
}

impl GSetJson {
    pub fn from_gset(s: &GSet, with_group: bool) -> Self {
        GSetJson {
            group: with_group.then(|| GroupRef::inline(s.group())),
            size: s.size(),
            action: s.rows(),
        }
    }

    pub fn to_gset(&self, context: Option<&FiniteGroup>) -> Result<GSet, IoError> {
        let g = match (&self.group, context) {
            (Some(r), _) => r.resolve()?,
            (None, Some(g)) => g.clone(),
            (None, None) => return Err(IoError::Invalid("G-set needs a group".into())),
        };
        if self.action.len() != self.size {
            return Err(IoError::Invalid(format!("size {} but {} action rows", self.size, self.action.len())));
        }
        Ok(GSet::new(&g, self.action.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub blocks: Vec<Vec<Point>>,
}

impl PartitionJson {
    pub fn from_partition(p: &Partition) -> Self {
        PartitionJson { blocks: p.blocks().to_vec() }
    }

    pub fn to_partition(&self, size: usize) -> Result<Partition, IoError> {
        Ok(Partition::new(size, self.blocks.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PileJson {
    pub group: GroupRef,
    pub space: GSetJson,
}

impl PileJson {
    pub fn from_pile(p: &Pile) -> Self {
        PileJson { group: GroupRef::inline(p.group()), space: GSetJson::from_gset(p.space(), false) }
    }

    pub fn to_pile(&self) -> Result<Pile, IoError> {
        let g = self.group.resolve()?;
        Ok(Pile::new(self.space.to_gset(Some(&g))?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub group_map: Vec<Elem>,
    pub space_map: Vec<Point>,
}

impl MorphismJson {
    pub fn from_morphism(m: &PileMorphism) -> Self {
        MorphismJson { group_map: m.group_map().map().to_vec(), space_map: m.space_map().to_vec() }
    }

    pub fn to_morphism(&self, source: &Pile, target: &Pile) -> Result<PileMorphism, IoError> {
        let h = GroupHom::new(source.group(), target.group(), self.group_map.clone())?;
        Ok(PileMorphism::new(source, target, h, self.space_map.clone())?)
    }
}

/// A morphism together with its source and target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundMorphismJson {
    pub source: PileJson,
    pub target: PileJson,
    #[serde(flatten)]
    pub maps: MorphismJson,
}

impl BoundMorphismJson {
    pub fn from_morphism(m: &PileMorphism) -> Self {
        BoundMorphismJson {
            source: PileJson::from_pile(m.source()),
            target: PileJson::from_pile(m.target()),
            maps: MorphismJson::from_morphism(m),
        }
    }

    pub fn to_morphism(&self) -> Result<PileMorphism, IoError> {
        self.maps.to_morphism(&self.source.to_pile()?, &self.target.to_pile()?)
    }
}

/// `φ: G → A` and the rigid epimorphism `α: B → A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PileEpJson {
    pub source: PileJson,
    pub target: PileJson,
    pub cover: PileJson,
    pub phi: MorphismJson,
    pub alpha: MorphismJson,
}

impl PileEpJson {
    pub fn from_problem(ep: &PileEmbeddingProblem) -> Self {
        PileEpJson {
            source: PileJson::from_pile(ep.phi().source()),
            target: PileJson::from_pile(ep.phi().target()),
            cover: PileJson::from_pile(ep.alpha().source()),
            phi: MorphismJson::from_morphism(ep.phi()),
            alpha: MorphismJson::from_morphism(ep.alpha()),
        }
    }

    pub fn to_problem(&self) -> Result<PileEmbeddingProblem, IoError> {
        let (g, a, b) = (self.source.to_pile()?, self.target.to_pile()?, self.cover.to_pile()?);
        let phi = self.phi.to_morphism(&g, &a)?;
        let alpha = self.alpha.to_morphism(&b, &a)?;
        Ok(PileEmbeddingProblem::new(phi, alpha)?)
    }
}

/// Group-level embedding problem with subgroup families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEpJson {
    pub group: GroupRef,
    pub target: GroupRef,
    pub cover: GroupRef,
    pub family: Vec<Vec<Elem>>,
    pub phi: Vec<Elem>,
    pub alpha: Vec<Elem>,
    pub family_b: Vec<Vec<Elem>>,
    pub family_a: Vec<Vec<Elem>>,
}

fn subgroups(g: &FiniteGroup, lists: &[Vec<Elem>]) -> Result<Vec<Subgroup>, IoError> {
    lists.iter().map(|l| Ok(Subgroup::new(g, l)?)).collect()
}

impl PairEpJson {
    pub fn from_problem(ep: &PairEmbeddingProblem) -> Self {
        let members = |f: &[Subgroup]| f.iter().map(|s| s.members().to_vec()).collect();
        PairEpJson {
            group: GroupRef::inline(ep.phi().source()),
            target: GroupRef::inline(ep.phi().target()),
            cover: GroupRef::inline(ep.alpha().source()),
            family: members(ep.family()),
            phi: ep.phi().map().to_vec(),
            alpha: ep.alpha().map().to_vec(),
            family_b: members(ep.family_b()),
            family_a: members(ep.family_a()),
        }
    }

    pub fn to_problem(&self) -> Result<PairEmbeddingProblem, IoError> {
        let (g, a, b) = (self.group.resolve()?, self.target.resolve()?, self.cover.resolve()?);
        let phi = GroupHom::new(&g, &a, self.phi.clone())?;
        let alpha = GroupHom::new(&b, &a, self.alpha.clone())?;
        Ok(PairEmbeddingProblem::new(
            subgroups(&g, &self.family)?,
            phi,
            alpha,
            subgroups(&b, &self.family_b)?,
            subgroups(&a, &self.family_a)?,
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGroupJson {
    pub label: String,
    pub group: GroupRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicPileJson {
    pub factors: Vec<LabeledGroupJson>,
    pub free_rank: usize,
}

impl BasicPileJson {
    pub fn from_basic(b: &BasicPile) -> Self {
        BasicPileJson {
            factors: b
                .factors
                .iter()
                .map(|(l, g)| LabeledGroupJson { label: l.clone(), group: GroupRef::inline(g) })
                .collect(),
            free_rank: b.free_rank,
        }
    }

    pub fn to_basic(&self, prime: Option<usize>) -> Result<BasicPile, IoError> {
        let factors =
            self.factors.iter().map(|f| Ok((f.label.clone(), f.group.resolve()?))).collect::<Result<Vec<_>, IoError>>()?;
        Ok(BasicPile::new(factors, self.free_rank, prime)?)
    }
}

/// Morphism data out of a basic pile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicMapJson {
    pub factor_homs: Vec<Vec<Elem>>,
    pub free_images: Vec<Elem>,
    pub points: Vec<Point>,
}

impl BasicMapJson {
    pub fn from_map(m: &BasicPileMap) -> Self {
        BasicMapJson {
            factor_homs: m.factor_homs.iter().map(|h| h.map().to_vec()).collect(),
            free_images: m.free_images.clone(),
            points: m.points.clone(),
        }
    }

    pub fn to_map(&self, b: &BasicPile, target: &FiniteGroup) -> Result<BasicPileMap, IoError> {
        if self.factor_homs.len() != b.factors.len() {
            return Err(IoError::Invalid(format!("{} homs for {} factors", self.factor_homs.len(), b.factors.len())));
        }
        let factor_homs = b
            .factors
            .iter()
            .zip(&self.factor_homs)
            .map(|((_, g), m)| Ok(GroupHom::new(g, target, m.clone())?))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(BasicPileMap { factor_homs, free_images: self.free_images.clone(), points: self.points.clone() })
    }
}

/// An embedding problem out of a basic pile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicEpJson {
    pub basic: BasicPileJson,
    pub phi: BasicMapJson,
    pub target: PileJson,
    pub cover: PileJson,
    pub alpha: MorphismJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub factors: Vec<GroupRef>,
    pub free_letters: usize,
    pub relators: Vec<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_labels: Option<Vec<String>>,
}

impl PresentationJson {
    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationJson {
            factors: p.factors().iter().map(GroupRef::inline).collect(),
            free_letters: p.free_count(),
            relators: p.relators().to_vec(),
            factor_names: Some(p.factor_names().to_vec()),
            free_labels: Some(p.free_labels().to_vec()),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation, IoError> {
        let groups = self.factors.iter().map(GroupRef::resolve).collect::<Result<Vec<_>, _>>()?;
        let names = match &self.factor_names {
            Some(n) if n.len() == groups.len() => n.clone(),
            Some(n) => return Err(IoError::Invalid(format!("{} names for {} factors", n.len(), groups.len()))),
            None => (0..groups.len()).map(|i| format!("F{i}")).collect(),
        };
        let labels = match &self.free_labels {
            Some(l) if l.len() == self.free_letters => l.clone(),
            Some(l) => return Err(IoError::Invalid(format!("{} labels for {} letters", l.len(), self.free_letters))),
            None => (0..self.free_letters).map(|i| format!("x{i}")).collect(),
        };
        Ok(Presentation::new(names.into_iter().zip(groups).collect(), labels, self.relators.clone())?)
    }
}

/// Reads and parses a JSON file.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

/// Parses inline JSON if the argument looks like JSON, otherwise reads it as a file.
pub fn read_json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, IoError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') {
        Ok(serde_json::from_str(arg)?)
    } else {
        read_json(arg)
    }
}
