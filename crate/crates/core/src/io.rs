//! Text and JSON formats for posets, ideals, complexes and resolutions.
//!
//! Poset text format:
//!
//! ```text
//! # optional comment
//! elements: a b c
//! covers: a<b b<c
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::SqfMonomialIdeal;
use crate::linalg::SparseMatrix;
use crate::poset::{HomSpace, IsotoneMap, Poset, PosetIdeal};
use crate::resolution::{GenLabel, Generator, MultigradedComplex};
use crate::simplicial::SimplicialComplex;
use crate::vars::{Multidegree, SqfMonomial, Var, VarSet};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Tokens of `s` with their 1-based columns, split on whitespace and commas.
fn tokens(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in s.char_indices() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (false, None) => start = Some(k),
            (true, Some(b)) => {
                out.push((offset + b + 1, &s[b..k]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((offset + b + 1, &s[b..]));
    }
    out
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut elements: Option<Vec<String>> = None;
    let mut covers: Option<Vec<(String, String)>> = None;
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(parse_error(line, 1, "expected `elements:` or `covers:`"));
        };
        let key = content[..colon].trim();
        let rest = &content[colon + 1..];
        match key {
            "elements" => {
                if elements.is_some() {
                    return Err(parse_error(line, 1, "`elements:` given twice"));
                }
                let names = tokens(rest, colon + 1)
                    .into_iter()
                    .map(|(col, t)| {
                        if t.contains('<') {
                            Err(parse_error(line, col, format!("invalid element name `{t}`")))
                        } else {
                            Ok(t.to_string())
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                elements = Some(names);
            }
            "covers" => {
                let list = covers.get_or_insert_with(Vec::new);
                for (col, t) in tokens(rest, colon + 1) {
                    let parts: Vec<&str> = t.split('<').collect();
                    if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                        return Err(parse_error(line, col, format!("expected `a<b`, found `{t}`")));
                    }
                    list.extend(parts.windows(2).map(|w| (w[0].to_string(), w[1].to_string())));
                }
            }
            other => {
                let col = content.find(other).unwrap_or(0) + 1;
                return Err(parse_error(line, col, format!("unknown key `{other}`")));
            }
        }
    }
    let elements =
        elements.ok_or_else(|| parse_error(last_line.max(1), 1, "missing `elements:` line"))?;
    Poset::from_covers(&elements, &covers.unwrap_or_default())
}

/// Inverse of [`parse_poset`], listing the Hasse diagram.
pub fn format_poset(p: &Poset) -> String {
    let names = p.names();
    let covers: Vec<String> = p
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", names[a], names[b]))
        .collect();
    format!("elements: {}\ncovers: {}\n", names.join(" "), covers.join(" "))
}

/// Isotone maps written as rows of values: `1,2; 2,2` or `1 2; 2 2`.
pub fn parse_maps(text: &str) -> Result<Vec<IsotoneMap>> {
    text.split(|c| c == ';' || c == '\n')
        .filter(|row| !row.trim().is_empty())
        .enumerate()
        .map(|(k, row)| {
            tokens(row, 0)
                .into_iter()
                .map(|(col, t)| {
                    t.parse::<u32>()
                        .map_err(|_| parse_error(k + 1, col, format!("expected a number, found `{t}`")))
                })
                .collect::<Result<Vec<u32>>>()
                .map(IsotoneMap)
        })
        .collect()
}

/// `all` or a list of generating maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealSpec {
    Keyword(String),
    Generators(Vec<Vec<u32>>),
}

impl IdealSpec {
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim() == "all" {
            Ok(IdealSpec::Keyword("all".into()))
        } else {
            Ok(IdealSpec::Generators(
                parse_maps(text)?.into_iter().map(|m| m.0).collect(),
            ))
        }
    }

    pub fn resolve(&self, space: &HomSpace) -> Result<PosetIdeal> {
        match self {
            IdealSpec::Keyword(k) if k == "all" => Ok(PosetIdeal::full(space)),
            IdealSpec::Keyword(k) => Err(Error::Invalid(format!("unknown ideal keyword `{k}`"))),
            IdealSpec::Generators(rows) => {
                let maps: Vec<IsotoneMap> = rows.iter().cloned().map(IsotoneMap).collect();
                PosetIdeal::generated_by(space, &maps)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarSetDto {
    pub elements: Vec<String>,
    pub plain: bool,
    pub vars: Vec<(String, u32)>,
}

impl VarSetDto {
    pub fn from_varset(v: &VarSet) -> Self {
        VarSetDto {
            elements: v.elements().to_vec(),
            plain: v.is_plain(),
            vars: v
                .vars()
                .iter()
                .map(|x| (v.elements()[x.elem].clone(), x.level))
                .collect(),
        }
    }

    pub fn to_varset(&self) -> Result<VarSet> {
        let vars = self
            .vars
            .iter()
            .map(|p| self.lookup(p))
            .collect::<Result<Vec<Var>>>()?;
        if self.plain {
            let v = VarSet::points(&self.elements)?;
            if v.vars() != vars.as_slice() {
                return Err(Error::Invalid("plain variable set must list each element once".into()));
            }
            Ok(v)
        } else {
            VarSet::from_vars(&self.elements, vars)
        }
    }

    fn lookup(&self, (name, level): &(String, u32)) -> Result<Var> {
        let elem = self
            .elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownElement(name.clone()))?;
        Ok(Var { elem, level: *level })
    }
}

fn pairs(v: &VarSet, m: SqfMonomial) -> Vec<(String, u32)> {
    m.iter()
        .map(|i| {
            let x = v.var(i);
            (v.elements()[x.elem].clone(), x.level)
        })
        .collect()
}

fn monomial(dto: &VarSetDto, v: &VarSet, list: &[(String, u32)]) -> Result<SqfMonomial> {
    list.iter()
        .map(|p| {
            let x = dto.lookup(p)?;
            v.index_of(x.elem, x.level)
                .ok_or_else(|| Error::Invalid(format!("variable ({}, {}) not in the set", p.0, p.1)))
        })
        .collect::<Result<Vec<usize>>>()
        .map(SqfMonomial::from_indices)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDto {
    pub varset: VarSetDto,
    pub gens: Vec<Vec<(String, u32)>>,
}

impl IdealDto {
    pub fn from_ideal(i: &SqfMonomialIdeal) -> Self {
        IdealDto {
            varset: VarSetDto::from_varset(i.vars()),
            gens: i.gens().iter().map(|&g| pairs(i.vars(), g)).collect(),
        }
    }

    pub fn to_ideal(&self) -> Result<SqfMonomialIdeal> {
        let v = self.varset.to_varset()?;
        let gens = self
            .gens
            .iter()
            .map(|g| monomial(&self.varset, &v, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(SqfMonomialIdeal::new(Arc::new(v), gens))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDto {
    pub varset: VarSetDto,
    pub vertices: Vec<(String, u32)>,
    pub facets: Vec<Vec<(String, u32)>>,
}

impl ComplexDto {
    pub fn from_complex(c: &SimplicialComplex) -> Self {
        ComplexDto {
            varset: VarSetDto::from_varset(c.vars()),
            vertices: pairs(c.vars(), c.vertex_set()),
            facets: c.facets().iter().map(|&f| pairs(c.vars(), f)).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let v = Arc::new(self.varset.to_varset()?);
        let facets = self
            .facets
            .iter()
            .map(|f| monomial(&self.varset, &v, f))
            .collect::<Result<Vec<_>>>()?;
        let c = SimplicialComplex::new(v.clone(), facets);
        if monomial(&self.varset, &v, &self.vertices)? != c.vertex_set() {
            return Err(Error::Invalid("vertex list does not match the facets".into()));
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LabelDto {
    Staircase {
        set: Vec<usize>,
        graph: Vec<usize>,
        extra: Vec<usize>,
    },
    Face {
        set: Vec<usize>,
    },
    Ek {
        phi: Vec<u32>,
        js: Vec<u32>,
    },
    Taylor {
        members: Vec<usize>,
    },
}

fn indices(m: SqfMonomial) -> Vec<usize> {
    m.iter().collect()
}

impl LabelDto {
    pub fn from_label(l: &GenLabel) -> Self {
        match l {
            GenLabel::Staircase { set, graph, extra } => LabelDto::Staircase {
                set: indices(*set),
                graph: indices(*graph),
                extra: indices(*extra),
            },
            GenLabel::Face(f) => LabelDto::Face { set: indices(*f) },
            GenLabel::Ek { phi, js } => LabelDto::Ek {
                phi: phi.clone(),
                js: js.clone(),
            },
            GenLabel::Taylor(m) => LabelDto::Taylor { members: m.clone() },
        }
    }

    pub fn to_label(&self) -> Result<GenLabel> {
        let set = |v: &[usize]| {
            if v.iter().any(|&i| i >= crate::vars::MAX_VARS) {
                Err(Error::Invalid("variable index out of range".into()))
            } else {
                Ok(SqfMonomial::from_indices(v.iter().copied()))
            }
        };
        Ok(match self {
            LabelDto::Staircase { set: s, graph, extra } => GenLabel::Staircase {
                set: set(s)?,
                graph: set(graph)?,
                extra: set(extra)?,
            },
            LabelDto::Face { set: s } => GenLabel::Face(set(s)?),
            LabelDto::Ek { phi, js } => GenLabel::Ek {
                phi: phi.clone(),
                js: js.clone(),
            },
            LabelDto::Taylor { members } => GenLabel::Taylor(members.clone()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDto {
    pub label: LabelDto,
    pub degree: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDto {
    pub index: usize,
    pub gens: Vec<GeneratorDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDto {
    pub row: usize,
    pub col: usize,
    pub sign: i64,
    pub var: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialDto {
    pub index: usize,
    pub entries: Vec<EntryDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDto {
    pub variables: Vec<String>,
    pub index_offset: usize,
    pub modules: Vec<ModuleDto>,
    /// `index` is the source module; entries map it to `index - 1`.
    pub differentials: Vec<DifferentialDto>,
    pub augmentation: Option<Vec<i64>>,
}

impl ResolutionDto {
    pub fn from_complex(c: &MultigradedComplex) -> Self {
        let modules = c
            .modules()
            .iter()
            .enumerate()
            .map(|(index, m)| ModuleDto {
                index,
                gens: m
                    .iter()
                    .map(|g| GeneratorDto {
                        label: LabelDto::from_label(&g.label),
                        degree: g.degree.0.clone(),
                    })
                    .collect(),
            })
            .collect();
        let differentials = c
            .diffs()
            .iter()
            .enumerate()
            .map(|(i, d)| DifferentialDto {
                index: i + 1,
                entries: (0..d.nrows())
                    .flat_map(|r| {
                        d.row(r).iter().map(move |&(col, sign)| EntryDto {
                            row: r,
                            col,
                            sign,
                            var: c
                                .entry_monomial(i, r, col)
                                .map_or_else(|| "?".into(), |m| m.render(c.names())),
                        })
                    })
                    .collect(),
            })
            .collect();
        ResolutionDto {
            variables: c.names().to_vec(),
            index_offset: c.index_offset(),
            modules,
            differentials,
            augmentation: c.augmentation().map(<[i64]>::to_vec),
        }
    }

    pub fn to_complex(&self) -> Result<MultigradedComplex> {
        let nv = self.variables.len();
        let mut modules: Vec<Vec<Generator>> = Vec::new();
        for (k, m) in self.modules.iter().enumerate() {
            if m.index != k {
                return Err(Error::Invalid("modules must be listed in index order".into()));
            }
            modules.push(
                m.gens
                    .iter()
                    .map(|g| {
                        if g.degree.len() != nv {
                            return Err(Error::Invalid("degree length mismatch".into()));
                        }
                        Ok(Generator {
                            label: g.label.to_label()?,
                            degree: Multidegree(g.degree.clone()),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut diffs: Vec<SparseMatrix> = (1..modules.len())
            .map(|i| SparseMatrix::new(modules[i - 1].len(), modules[i].len()))
            .collect();
        for d in &self.differentials {
            if d.index == 0 || d.index > diffs.len() {
                return Err(Error::Invalid(format!("differential index {} out of range", d.index)));
            }
            let m = &mut diffs[d.index - 1];
            for e in &d.entries {
                if e.row >= m.nrows() || e.col >= m.ncols() {
                    return Err(Error::Invalid("entry out of range".into()));
                }
                m.add(e.row, e.col, e.sign);
            }
        }
        let c = MultigradedComplex::new(
            self.variables.clone(),
            modules,
            diffs,
            self.augmentation.clone(),
        )?
        .with_index_offset(self.index_offset);
        for d in &self.differentials {
            for e in &d.entries {
                let m = c
                    .entry_monomial(d.index - 1, e.row, e.col)
                    .map_or_else(|| "?".into(), |m| m.render(c.names()));
                if m != e.var {
                    return Err(Error::Invalid(format!(
                        "entry ({}, {}) has monomial {m}, file says {}",
                        e.row, e.col, e.var
                    )));
                }
            }
        }
        Ok(c)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.column(), e.to_string()))
}
