//! Parsing of algebra and deformation arguments.

use std::fs;
use std::path::PathBuf;

use defcalc::algebra::presentations::{monogenic_deformation, presented_pmn_deformation};
use defcalc::algebra::{pmn, truncated_poly};
use defcalc::deformation::{def_space, triple_from_cocycle, DeformationSpace};
use defcalc::json::{parse_algebra, parse_scalars};
use defcalc::{DeformationTriple, Field, GradedAlgebra};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Pmn(u32, u32),
    Cpn(u32),
    File(PathBuf),
}

impl std::str::FromStr for AlgebraSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| format!("expected pmn:<m>,<n>, cpn:<n> or file:<path>, got {s:?}"))?;
        let int = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("bad integer {x:?}: {e}"));
        match kind {
            "pmn" => {
                let (m, n) = rest.split_once(',').ok_or_else(|| format!("expected pmn:<m>,<n>, got {s:?}"))?;
                Ok(AlgebraSpec::Pmn(int(m)?, int(n)?))
            }
            "cpn" => Ok(AlgebraSpec::Cpn(int(rest)?)),
            "file" if !rest.is_empty() => Ok(AlgebraSpec::File(PathBuf::from(rest))),
            _ => Err(format!("unknown algebra spec {s:?}")),
        }
    }
}

impl std::fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraSpec::Pmn(m, n) => write!(f, "pmn:{m},{n}"),
            AlgebraSpec::Cpn(n) => write!(f, "cpn:{n}"),
            AlgebraSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl AlgebraSpec {
    /// Builds the algebra. Files carry their own field and ignore `field`.
    pub fn build(&self, field: Field) -> Result<GradedAlgebra, CliError> {
        Ok(match self {
            AlgebraSpec::Pmn(m, n) => pmn(*m, *n, field)?,
            AlgebraSpec::Cpn(n) => truncated_poly(*n, field)?,
            AlgebraSpec::File(path) => {
                let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                parse_algebra(&text)?
            }
        })
    }

    pub fn pmn_shape(&self) -> Result<(u32, u32), CliError> {
        match self {
            AlgebraSpec::Pmn(m, n) => Ok((*m, *n)),
            other => Err(CliError::Usage(format!("this command needs a pmn:<m>,<n> algebra, got {other}"))),
        }
    }
}

/// A deformation of `pmn:m,n` or `cpn:n`, given either by presentation
/// coefficients or by coordinates in the basis of `Def_d`.
#[derive(Clone, Debug, clap::Args)]
pub struct DeformationArgs {
    /// pmn:<m>,<n> or cpn:<n>
    #[arg(long)]
    pub algebra: AlgebraSpec,
    #[arg(long, allow_hyphen_values = true)]
    pub d: i32,
    /// Coefficients a_i for pmn, or the single alpha for cpn, e.g. "1,-2/3"
    #[arg(long, default_value = "", allow_hyphen_values = true, conflicts_with = "coords")]
    pub a: String,
    /// Coefficients b_i for pmn
    #[arg(long, default_value = "", allow_hyphen_values = true, conflicts_with = "coords")]
    pub b: String,
    /// Coordinates of the class in the basis printed by `defspace`
    #[arg(long, allow_hyphen_values = true)]
    pub coords: Option<String>,
}

impl DeformationArgs {
    pub fn build(&self, field: Field) -> Result<DeformationTriple, CliError> {
        if let Some(text) = &self.coords {
            let space = self.space(field)?;
            let coords = parse_scalars(field, text)?;
            if coords.len() != space.dimension() {
                return Err(CliError::Usage(format!(
                    "--coords has {} entries but Def_{} has dimension {}",
                    coords.len(),
                    self.d,
                    space.dimension()
                )));
            }
            return Ok(triple_from_cocycle(space.algebra(), &space.cocycle_from_coordinates(&coords))?);
        }
        let a = parse_scalars(field, &self.a)?;
        let b = parse_scalars(field, &self.b)?;
        match &self.algebra {
            AlgebraSpec::Pmn(m, n) => Ok(presented_pmn_deformation(*m, *n, self.d, field, &a, &b)?),
            AlgebraSpec::Cpn(n) => {
                if a.len() > 1 || !b.is_empty() {
                    return Err(CliError::Usage("cpn deformations take a single --a coefficient".into()));
                }
                let alpha = a.into_iter().next().unwrap_or_else(|| field.zero());
                Ok(monogenic_deformation(*n, self.d, &alpha)?)
            }
            AlgebraSpec::File(_) => Err(CliError::Usage("file algebras need --coords".into())),
        }
    }

    fn space(&self, field: Field) -> Result<DeformationSpace, CliError> {
        Ok(def_space(&self.algebra.build(field)?, self.d))
    }
}
