use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::io::{element_from_json, vector_from_json, AlgebraFile, HopfFile, SeriesFile, SubspaceSpec};
use super::report::Report;
use crate::algebra::AlgebraData;
use crate::constructors::{
    bicrossproduct, builtin_group, derived_series, dual_group_algebra, dual_hopf, group_algebra, is_solvable,
    smash_algebra, smash_hopf, translation_action, ActionData, GroupTable, GroupTableFile, MatchedPair, Subgroup,
};
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldSpec, Matrix};
use crate::hopf::HopfData;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Table(GroupTableFile),
}

impl GroupSpec {
    pub fn resolve(&self) -> Result<GroupTable> {
        match self {
            GroupSpec::Name(n) => builtin_group(n),
            GroupSpec::Table(t) => GroupTable::from_file(t.clone()),
        }
    }
}

/// Either generators of `F` and `Q` inside one group (an exact
/// factorization) or explicit tables and actions.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PairSpec {
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub f: Vec<String>,
    #[serde(default)]
    pub q: Vec<String>,
    #[serde(default)]
    pub f_table: Option<GroupTableFile>,
    #[serde(default)]
    pub q_table: Option<GroupTableFile>,
    /// `act[q][f] = q▷f`
    #[serde(default)]
    pub act: Option<Vec<Vec<usize>>>,
    /// `ret[q][f] = q◁f`
    #[serde(default)]
    pub ret: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionSpec {
    /// `"translation"` or `"trivial"`.
    pub kind: String,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    /// Generators of the subgroup `X ≤ Y`.
    #[serde(default)]
    pub subgroup: Vec<String>,
    #[serde(default)]
    pub acting: Option<Box<Recipe>>,
    #[serde(default)]
    pub on: Option<Box<Recipe>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidateSpec {
    pub coproduct: Vec<Vec<Value>>,
    pub counit: Vec<Value>,
    pub antipode: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Recipe {
    pub construct: String,
    #[serde(default)]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub pair: Option<PairSpec>,
    #[serde(default)]
    pub action: Option<ActionSpec>,
    #[serde(default)]
    pub hopf_candidate: Option<CandidateSpec>,
    /// Inner recipe for `dual_hopf`.
    #[serde(default)]
    pub of: Option<Box<Recipe>>,
}

/// What a recipe produced. `hopf` is absent for a bare smash algebra.
#[derive(Clone, Debug)]
pub struct Built {
    pub algebra: Arc<AlgebraData>,
    pub hopf: Option<Arc<HopfData>>,
    pub metadata: Value,
    pub series: Option<SeriesFile>,
}

impl Built {
    fn hopf(h: HopfData, metadata: Value, series: Option<SeriesFile>) -> Built {
        Built {
            algebra: h.algebra().clone(),
            hopf: Some(Arc::new(h)),
            metadata,
            series,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = match &self.hopf {
            Some(h) => serde_json::to_value(HopfFile::from_hopf(h)),
            None => serde_json::to_value(AlgebraFile::from_algebra(&self.algebra)),
        }
        .expect("serializable");
        v["metadata"] = self.metadata.clone();
        v
    }
}

fn field_of(recipe: &Recipe, fallback: Option<&FieldSpec>) -> Result<Field> {
    let spec = fallback
        .or(recipe.field.as_ref())
        .ok_or_else(|| Error::Parse("recipe needs a field".into()))?;
    Field::from_spec(spec)
}

fn group_of(spec: &Option<GroupSpec>) -> Result<GroupTable> {
    spec.as_ref()
        .ok_or_else(|| Error::Parse("recipe needs a group".into()))?
        .resolve()
}

fn generated(g: &GroupTable, gens: &[String]) -> Result<Vec<usize>> {
    let idx = gens
        .iter()
        .map(|l| g.index_of(l).ok_or_else(|| Error::Parse(format!("no group element labelled {l:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(g.closure(idx))
}

fn group_series(g: &GroupTable) -> Option<SeriesFile> {
    if !is_solvable(g) {
        return None;
    }
    let chain = derived_series(g)
        .iter()
        .rev()
        .map(|s| SubspaceSpec::labels(&s.elements().iter().map(|&x| g.label(x)).collect::<Vec<_>>()))
        .collect();
    Some(SeriesFile { chain })
}

/// Runs a recipe. `field` overrides the recipe's own field.
pub fn build_recipe(recipe: &Recipe, field: Option<&FieldSpec>) -> Result<Built> {
    match recipe.construct.as_str() {
        "group_algebra" => {
            let g = group_of(&recipe.group)?;
            let f = field_of(recipe, field)?;
            let h = group_algebra(&g, &f)?;
            Ok(Built::hopf(h, json!({"construct": "group_algebra", "order": g.order()}), group_series(&g)))
        }
        "dual_group_algebra" => {
            let g = group_of(&recipe.group)?;
            let f = field_of(recipe, field)?;
            let h = dual_group_algebra(&g, &f)?;
            let series = SeriesFile {
                chain: vec![SubspaceSpec::Keyword("unit".into()), SubspaceSpec::Keyword("all".into())],
            };
            Ok(Built::hopf(h, json!({"construct": "dual_group_algebra", "order": g.order()}), Some(series)))
        }
        "dual_hopf" => {
            let inner = recipe
                .of
                .as_ref()
                .ok_or_else(|| Error::Parse("dual_hopf needs an inner recipe under \"of\"".into()))?;
            let built = build_recipe(inner, field.or(recipe.field.as_ref()))?;
            let h = built
                .hopf
                .ok_or_else(|| Error::Parse("dual_hopf of an algebra without Hopf structure".into()))?;
            let d = dual_hopf(&h)?;
            Ok(Built::hopf(d, json!({"construct": "dual_hopf", "of": built.metadata}), None))
        }
        "bicrossproduct" => {
            let f = field_of(recipe, field)?;
            let spec = recipe
                .pair
                .as_ref()
                .ok_or_else(|| Error::Parse("bicrossproduct needs a \"pair\"".into()))?;
            let pair = match (&spec.group, &spec.f_table, &spec.q_table, &spec.act, &spec.ret) {
                (Some(g), None, None, None, None) => {
                    let g = g.resolve()?;
                    MatchedPair::from_factorization(&g, &generated(&g, &spec.f)?, &generated(&g, &spec.q)?)?
                }
                (None, Some(ft), Some(qt), Some(act), Some(ret)) => MatchedPair::new(
                    GroupTable::from_file(ft.clone())?,
                    GroupTable::from_file(qt.clone())?,
                    act.clone(),
                    ret.clone(),
                )?,
                _ => {
                    return Err(Error::Parse(
                        "pair needs either group with f/q generators or f_table, q_table, act, ret".into(),
                    ))
                }
            };
            let b = bicrossproduct(&pair, &f)?;
            let series = pair.f().is_abelian().then(|| SeriesFile {
                chain: vec![
                    SubspaceSpec::Keyword("unit".into()),
                    SubspaceSpec::from_subspace(&pair.function_part(&f)),
                    SubspaceSpec::Keyword("all".into()),
                ],
            });
            let meta = json!({
                "construct": "bicrossproduct",
                "f_order": pair.f().order(),
                "q_order": pair.q().order(),
                "convention": b.convention_name(),
                "conventions_tried": b.record(),
            });
            Ok(Built::hopf(b.hopf, meta, series))
        }
        "smash_algebra" => {
            let spec = recipe
                .action
                .as_ref()
                .ok_or_else(|| Error::Parse("smash_algebra needs an \"action\"".into()))?;
            let act = match spec.kind.as_str() {
                "translation" => {
                    let f = field_of(recipe, field)?;
                    let y = group_of(&spec.group)?;
                    let x = Subgroup::new(&y, &generated(&y, &spec.subgroup)?)?;
                    translation_action(&y, &x, &f)?
                }
                "trivial" => {
                    let sub = |r: &Option<Box<Recipe>>, what: &str| -> Result<Arc<HopfData>> {
                        let r = r.as_ref().ok_or_else(|| Error::Parse(format!("trivial action needs \"{what}\"")))?;
                        build_recipe(r, field.or(recipe.field.as_ref()))?
                            .hopf
                            .ok_or_else(|| Error::Parse(format!("\"{what}\" must be a Hopf algebra")))
                    };
                    ActionData::trivial(sub(&spec.acting, "acting")?, sub(&spec.on, "on")?)?
                }
                other => return Err(Error::Parse(format!("unknown action kind {other:?}"))),
            };
            let meta = json!({
                "construct": "smash_algebra",
                "acting_dim": act.acting().dim(),
                "on_dim": act.on().dim(),
            });
            match &recipe.hopf_candidate {
                None => Ok(Built {
                    algebra: Arc::new(smash_algebra(&act)?),
                    hopf: None,
                    metadata: meta,
                    series: None,
                }),
                Some(c) => {
                    let a = smash_algebra(&act)?;
                    let f = a.field().clone();
                    let n = a.dim();
                    let coproduct = c
                        .coproduct
                        .iter()
                        .map(|r| vector_from_json(&f, r, n * n))
                        .collect::<Result<Vec<_>>>()?;
                    let counit = vector_from_json(&f, &c.counit, n)?;
                    let rows = c
                        .antipode
                        .iter()
                        .map(|r| r.iter().map(|x| element_from_json(&f, x)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                        return Err(Error::Parse(format!("antipode candidate must be {n}x{n}")));
                    }
                    let antipode = Matrix::from_rows(&f, n, &rows).transpose();
                    let h = smash_hopf(&act, coproduct, counit, antipode)?;
                    Ok(Built::hopf(h, meta, None))
                }
            }
        }
        other => Err(Error::Parse(format!("unknown construct {other:?}"))),
    }
}

/// Whether an error means the input could not be read, as opposed to a
/// mathematical check failing.
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::UnknownGroup(_)
            | Error::Dimension(_)
            | Error::FieldMismatch(..)
            | Error::NotPrime(_)
            | Error::ZeroDegree
            | Error::FieldTooLarge { .. }
            | Error::NonCanonicalModulus { .. }
    )
}

/// `build`: on success the constructed file; on a failed check a report.
pub fn cmd_build(recipe_text: &str, field: Option<&FieldSpec>) -> Result<std::result::Result<Built, Report>> {
    let recipe: Recipe = super::io::parse_json(recipe_text, "recipe")?;
    match build_recipe(&recipe, field) {
        Ok(b) => Ok(Ok(b)),
        Err(e) if is_input_error(&e) => Err(e),
        Err(e) => {
            let mut r = Report::new("build", 0, json!({"construct": recipe.construct}));
            r.assert("construction passes its checks", false, json!(e.to_string()));
            Ok(Err(r))
        }
    }
}
