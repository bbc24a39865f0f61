//! JSON group descriptions and their resolution into groups.

use std::path::Path;

use pgt_core::gf::{
    affine_group, as_permutation_group, general_linear, monomial, permutation_module, scalar_group,
    FpMatrix, MatrixGroup, VectorDomain, DEFAULT_POINT_CAP,
};
use pgt_core::{families, PermGroup, Permutation};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Matrix {
        p: u32,
        dim: usize,
        generators: Vec<Vec<Vec<u32>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decomposition: Option<Vec<Vec<Vec<u32>>>>,
    },
    Constructor(Constructor),
}

/// Nested operands may omit `"kind"` and give the constructor directly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Operand {
    Spec(GroupSpec),
    Bare(Constructor),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Constructor {
    Sym { n: usize },
    Alt { n: usize },
    Cyclic { n: usize },
    Dihedral { n: usize },
    KleinFour,
    Wreath { inner: Box<Operand>, top: Box<Operand> },
    DiagonalWreath { m: usize, classes: usize, top: Box<Operand> },
    RowAction { group: Box<Operand>, rows: usize },
    OnPairs { group: Box<Operand> },
    ProjectiveLine { p: u64, #[serde(default)] special: bool },
    /// `V ⋊ H` on the vectors of `V`.
    Affine { matrix: Box<Operand> },
    Monomial { p: u32, t: usize, top: Box<Operand> },
    PermutationModule { p: u32, group: Box<Operand> },
    GeneralLinear { p: u32, dim: usize },
    Scalar { p: u32, dim: usize, a: u32 },
}

/// A resolved group description.
#[derive(Clone, Debug)]
pub enum Group {
    Perm(PermGroup),
    Matrix(MatrixGroup),
}

impl Group {
    /// The permutation group itself, or a matrix group acting on all vectors.
    pub fn to_perm(&self, point_cap: u128) -> Result<PermGroup, CliError> {
        match self {
            Group::Perm(g) => Ok(g.clone()),
            Group::Matrix(h) => Ok(as_permutation_group(h, VectorDomain::All, point_cap)?.0),
        }
    }

    pub fn as_matrix(&self) -> Result<&MatrixGroup, CliError> {
        match self {
            Group::Matrix(h) => Ok(h),
            Group::Perm(_) => Err(CliError::Spec("expected a matrix group".into())),
        }
    }

    /// Content hash over the degree and the sorted generator images, or the
    /// field, dimension and sorted generator matrices.
    pub fn id(&self) -> String {
        let mut hasher = Sha256::new();
        match self {
            Group::Perm(g) => {
                let mut gens: Vec<&[u32]> = g.generators().iter().map(Permutation::images).collect();
                gens.sort_unstable();
                gens.dedup();
                hasher.update(b"perm");
                hasher.update((g.degree() as u64).to_le_bytes());
                for images in gens {
                    hasher.update(b";");
                    for &x in images {
                        hasher.update(x.to_le_bytes());
                    }
                }
            }
            Group::Matrix(h) => {
                let mut gens: Vec<Vec<Vec<u32>>> = h.generators.iter().map(FpMatrix::rows).collect();
                gens.sort_unstable();
                gens.dedup();
                hasher.update(b"matrix");
                hasher.update(h.p.to_le_bytes());
                hasher.update((h.dim as u64).to_le_bytes());
                for rows in gens {
                    hasher.update(b";");
                    for x in rows.iter().flatten() {
                        hasher.update(x.to_le_bytes());
                    }
                }
            }
        }
        hex::encode(&hasher.finalize()[..8])
    }
}

fn perm_operand(op: &Operand) -> Result<PermGroup, CliError> {
    operand(op)?.to_perm(DEFAULT_POINT_CAP)
}

fn operand(op: &Operand) -> Result<Group, CliError> {
    match op {
        Operand::Spec(s) => s.resolve(),
        Operand::Bare(c) => c.resolve(),
    }
}

impl Constructor {
    pub fn resolve(&self) -> Result<Group, CliError> {
        use Constructor::*;
        let perm = |g: PermGroup| Ok(Group::Perm(g));
        match self {
            Sym { n } => perm(families::symmetric(*n)),
            Alt { n } => perm(families::alternating(*n)),
            Cyclic { n } => perm(families::cyclic(*n)),
            Dihedral { n } => perm(families::dihedral(*n)),
            KleinFour => perm(families::klein_four()),
            Wreath { inner, top } => perm(families::wreath(&perm_operand(inner)?, &perm_operand(top)?)),
            DiagonalWreath { m, classes, top } => {
                perm(families::diagonal_wreath(*m, *classes, &perm_operand(top)?)?)
            }
            RowAction { group, rows } => perm(families::row_action(&perm_operand(group)?, *rows)),
            OnPairs { group } => perm(families::on_pairs(&perm_operand(group)?)),
            ProjectiveLine { p, special } => perm(families::projective_line(*p, *special)?),
            Affine { matrix } => {
                let h = operand(matrix)?;
                perm(affine_group(h.as_matrix()?, DEFAULT_POINT_CAP)?)
            }
            Monomial { p, t, top } => {
                let top = perm_operand(top)?;
                if top.degree() != *t {
                    return Err(CliError::Spec(format!(
                        "monomial top group has degree {}, expected {t}",
                        top.degree()
                    )));
                }
                Ok(Group::Matrix(monomial(*p, &top)?))
            }
            PermutationModule { p, group } => Ok(Group::Matrix(permutation_module(&perm_operand(group)?, *p)?)),
            GeneralLinear { p, dim } => Ok(Group::Matrix(general_linear(*p, *dim)?)),
            Scalar { p, dim, a } => Ok(Group::Matrix(scalar_group(*p, *dim, *a)?)),
        }
    }
}

impl GroupSpec {
    pub fn resolve(&self) -> Result<Group, CliError> {
        match self {
            GroupSpec::Perm { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|images| {
                        if images.len() != *degree {
                            return Err(CliError::Spec(format!(
                                "generator of length {} for degree {degree}",
                                images.len()
                            )));
                        }
                        Ok(Permutation::from_images(images.iter().copied())?)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Group::Perm(PermGroup::new(*degree, gens)?))
            }
            GroupSpec::Matrix {
                p,
                dim,
                generators,
                decomposition,
            } => {
                let gens = generators
                    .iter()
                    .map(|rows| {
                        if rows.len() != *dim {
                            return Err(CliError::Spec(format!("matrix with {} rows for dimension {dim}", rows.len())));
                        }
                        Ok(FpMatrix::new(*p, rows.clone())?)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let h = MatrixGroup::new(*p, *dim, gens)?;
                Ok(Group::Matrix(match decomposition {
                    Some(d) => h.with_decomposition(d.clone())?,
                    None => h,
                }))
            }
            GroupSpec::Constructor(c) => c.resolve(),
        }
    }
}

impl From<Constructor> for GroupSpec {
    fn from(c: Constructor) -> Self {
        GroupSpec::Constructor(c)
    }
}

/// Parses an inline JSON document, or reads one from a file when the
/// argument does not start with `{`.
pub fn parse_spec(input: &str) -> Result<GroupSpec, CliError> {
    let trimmed = input.trim_start();
    let text = if trimmed.starts_with('{') {
        trimmed.to_string()
    } else {
        std::fs::read_to_string(Path::new(input))?
    };
    Ok(serde_json::from_str(&text)?)
}

pub fn parse_group(input: &str) -> Result<Group, CliError> {
    parse_spec(input)?.resolve()
}
