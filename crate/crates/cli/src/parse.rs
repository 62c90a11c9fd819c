//! Problem files: one JSON document per computation, dispatched on `kind`.

use std::fmt;
use std::path::Path;

use coincidence_core::abelian::AbelianSystem;
use coincidence_core::finite::{
    binary_icosahedral, close_group, direct_product, CayleyTable, FiniteGroup, FiniteHom,
    ModMatrix, Permutation, DEFAULT_CLOSURE_CAP,
};
use coincidence_core::nilpotent::{PcGroup, PcHom, PcWord};
use coincidence_core::IntMatrix;
use num_bigint::BigInt;
use serde::de::{self, DeserializeOwned, Deserializer, IgnoredAny, Visitor};
use serde::Deserialize;
use serde_json::Value;

/// Environment variable overriding the finite-group closure cap.
pub const CLOSURE_ENV: &str = "COINCIDENCE_KIT_MAX_CLOSURE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn fail<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Snf,
    AbelianPair,
    AbelianMulti,
    Finite,
    Nilpotent,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::Snf,
        Kind::AbelianPair,
        Kind::AbelianMulti,
        Kind::Finite,
        Kind::Nilpotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Snf => "snf",
            Kind::AbelianPair => "abelian-pair",
            Kind::AbelianMulti => "abelian-multi",
            Kind::Finite => "finite",
            Kind::Nilpotent => "nilpotent",
        }
    }

    fn from_name(name: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub enum Problem {
    Snf(IntMatrix),
    AbelianPair(IntMatrix, IntMatrix),
    AbelianMulti(AbelianSystem),
    Finite(Vec<FiniteHom>),
    Nilpotent(Vec<PcHom>),
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub kind: Kind,
    pub description: Option<String>,
    /// Display names of the homomorphisms, `phi_1, …` unless the file names them.
    pub names: Vec<String>,
    pub problem: Problem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    pub closure_cap: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

impl ParseOptions {
    /// Defaults, with the closure cap taken from [`CLOSURE_ENV`] when set.
    pub fn from_env() -> Result<Self, InputError> {
        match std::env::var(CLOSURE_ENV) {
            Ok(s) => match s.trim().parse::<usize>() {
                Ok(cap) if cap > 0 => Ok(ParseOptions { closure_cap: cap }),
                _ => fail(format!("{CLOSURE_ENV}={s:?} is not a positive integer")),
            },
            Err(_) => Ok(ParseOptions::default()),
        }
    }
}

pub fn parse_file(path: &Path, opts: &ParseOptions) -> Result<ProblemFile, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text, opts)
}

pub fn parse_str(text: &str, opts: &ParseOptions) -> Result<ProblemFile, InputError> {
    if text.trim().is_empty() {
        return fail("empty input: missing field `kind`");
    }
    let value: Value =
        serde_json::from_str(text).map_err(|e| InputError(format!("malformed JSON: {e}")))?;
    let kind = match value.get("kind") {
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return fail("field `kind` must be a string"),
        None if value.is_object() => return fail("missing field `kind`"),
        None => return fail("expected a JSON object with a field `kind`"),
    };
    let Some(kind) = Kind::from_name(kind) else {
        let known: Vec<&str> = Kind::ALL.iter().map(|k| k.name()).collect();
        return fail(format!(
            "unknown kind `{kind}`, expected one of {}",
            known.join(", ")
        ));
    };
    match kind {
        Kind::Snf => {
            let raw: RawSnf = typed(text)?;
            Ok(ProblemFile {
                kind,
                description: raw.description,
                names: vec![],
                problem: Problem::Snf(matrix(raw.matrix, "matrix")?),
            })
        }
        Kind::AbelianPair => {
            let raw: RawPair = typed(text)?;
            let phi = matrix(raw.phi, "phi")?;
            let psi = matrix(raw.psi, "psi")?;
            if phi.shape() != psi.shape() {
                return fail(format!(
                    "psi: shape {} differs from phi shape {}",
                    shape(&psi),
                    shape(&phi)
                ));
            }
            let names =
                hom_names(raw.names, 2)?.unwrap_or_else(|| vec!["phi".into(), "psi".into()]);
            Ok(ProblemFile {
                kind,
                description: raw.description,
                names,
                problem: Problem::AbelianPair(phi, psi),
            })
        }
        Kind::AbelianMulti => {
            let raw: RawMulti = typed(text)?;
            let k = at_least_two(raw.homs.len())?;
            let mut mats = Vec::with_capacity(k);
            for (i, rows) in raw.homs.into_iter().enumerate() {
                let m = matrix(rows, &format!("homs[{i}]"))?;
                if let Some(first) = mats.first() {
                    if m.shape() != IntMatrix::shape(first) {
                        return fail(format!(
                            "homs[{i}]: shape {} differs from homs[0] shape {}",
                            shape(&m),
                            shape(first)
                        ));
                    }
                }
                mats.push(m);
            }
            let system =
                AbelianSystem::from_matrices(mats).map_err(|e| InputError(format!("homs: {e}")))?;
            Ok(ProblemFile {
                kind,
                description: raw.description,
                names: hom_names(raw.names, k)?.unwrap_or_else(|| default_names(k)),
                problem: Problem::AbelianMulti(system),
            })
        }
        Kind::Finite => {
            let raw: RawFinite = typed(text)?;
            let k = at_least_two(raw.homs.len())?;
            let domain = group(&raw.domain, "domain", opts)?;
            let codomain = group(&raw.codomain, "codomain", opts)?;
            let homs = raw
                .homs
                .iter()
                .enumerate()
                .map(|(i, h)| finite_hom(h, &domain, &codomain, &format!("homs[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ProblemFile {
                kind,
                description: raw.description,
                names: hom_names(raw.names, k)?.unwrap_or_else(|| default_names(k)),
                problem: Problem::Finite(homs),
            })
        }
        Kind::Nilpotent => {
            let raw: RawNilpotent = typed(text)?;
            let k = at_least_two(raw.homs.len())?;
            let domain = pc_group(&raw.domain, "domain")?;
            let codomain = pc_group(&raw.codomain, "codomain")?;
            let homs = raw
                .homs
                .iter()
                .enumerate()
                .map(|(i, h)| pc_hom(h, &domain, &codomain, &format!("homs[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ProblemFile {
                kind,
                description: raw.description,
                names: hom_names(raw.names, k)?.unwrap_or_else(|| default_names(k)),
                problem: Problem::Nilpotent(homs),
            })
        }
    }
}

/// Deserializes the whole document, reporting the field path of any error.
fn typed<T: DeserializeOwned>(text: &str) -> Result<T, InputError> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            InputError(e.into_inner().to_string())
        } else {
            InputError(format!("{path}: {}", e.into_inner()))
        }
    })
}

fn default_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("phi_{i}")).collect()
}

fn hom_names(names: Option<Vec<String>>, k: usize) -> Result<Option<Vec<String>>, InputError> {
    match names {
        Some(n) if n.len() != k => fail(format!("names: {} names for {k} homomorphisms", n.len())),
        other => Ok(other),
    }
}

fn at_least_two(k: usize) -> Result<usize, InputError> {
    if k < 2 {
        return fail(format!(
            "homs: at least two homomorphisms are needed, got {k}"
        ));
    }
    Ok(k)
}

fn shape(m: &IntMatrix) -> String {
    format!("{}x{}", m.rows(), m.cols())
}

/// Integer given as a JSON number or a decimal string.
#[derive(Debug, Clone)]
struct Int(BigInt);

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_u64<E>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.trim()
                    .parse()
                    .map(Int)
                    .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

fn matrix(rows: Vec<Vec<Int>>, path: &str) -> Result<IntMatrix, InputError> {
    let Some(first) = rows.first() else {
        return fail(format!("{path}: a matrix needs at least one row"));
    };
    let cols = first.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return fail(format!(
                "{path}: row {i} has {} entries, expected {cols}",
                row.len()
            ));
        }
    }
    let r = rows.len();
    let data = rows.into_iter().flatten().map(|x| x.0).collect();
    IntMatrix::from_vec(r, cols, data).map_err(|e| InputError(format!("{path}: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSnf {
    #[serde(rename = "kind")]
    _kind: IgnoredAny,
    description: Option<String>,
    matrix: Vec<Vec<Int>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    #[serde(rename = "kind")]
    _kind: IgnoredAny,
    description: Option<String>,
    names: Option<Vec<String>>,
    phi: Vec<Vec<Int>>,
    psi: Vec<Vec<Int>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMulti {
    #[serde(rename = "kind")]
    _kind: IgnoredAny,
    description: Option<String>,
    names: Option<Vec<String>>,
    homs: Vec<Vec<Vec<Int>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFinite {
    #[serde(rename = "kind")]
    _kind: IgnoredAny,
    description: Option<String>,
    names: Option<Vec<String>>,
    domain: GroupSpec,
    codomain: GroupSpec,
    homs: Vec<HomSpec>,
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum GroupSpec {
    Builtin(String),
    Cyclic(usize),
    Permutations(PermutationSpec),
    Matrices(MatrixSpec),
    Table(TableSpec),
    Product(Vec<GroupSpec>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PermutationSpec {
    degree: usize,
    generators: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixSpec {
    modulus: u64,
    generators: Vec<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableSpec {
    rows: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum HomSpec {
    Identity,
    Trivial,
    Projection(usize),
    /// Images of the domain generators.
    Images(Vec<Value>),
    /// Image of every domain element, in element order.
    Table(Vec<Value>),
}

pub const BUILTIN_GROUPS: [&str; 1] = ["binary-icosahedral"];

fn group(spec: &GroupSpec, path: &str, opts: &ParseOptions) -> Result<FiniteGroup, InputError> {
    let engine = |e: coincidence_core::Error| InputError(format!("{path}: {e}"));
    match spec {
        GroupSpec::Builtin(name) => match name.as_str() {
            "binary-icosahedral" => Ok(binary_icosahedral()),
            _ => fail(format!(
                "{path}: unknown builtin group {name:?}, expected one of {}",
                BUILTIN_GROUPS.join(", ")
            )),
        },
        GroupSpec::Cyclic(n) => {
            if *n == 0 || *n > opts.closure_cap {
                return fail(format!(
                    "{path}: cyclic order {n} outside 1..={}",
                    opts.closure_cap
                ));
            }
            Ok(FiniteGroup::cyclic(*n))
        }
        GroupSpec::Permutations(p) => {
            let gens = p
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    Permutation::from_cycles(g, p.degree)
                        .map_err(|e| InputError(format!("{path}.generators[{i}]: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            close_group(&gens, opts.closure_cap).map_err(engine)
        }
        GroupSpec::Matrices(m) => {
            let gens = m
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    ModMatrix::new(m.modulus, g)
                        .map_err(|e| InputError(format!("{path}.generators[{i}]: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            close_group(&gens, opts.closure_cap).map_err(engine)
        }
        GroupSpec::Table(t) => {
            if t.rows.len() > opts.closure_cap {
                return fail(format!(
                    "{path}: table of order {} exceeds the cap {}",
                    t.rows.len(),
                    opts.closure_cap
                ));
            }
            Ok(CayleyTable::new(t.rows.clone(), t.labels.clone())
                .map_err(engine)?
                .into())
        }
        GroupSpec::Product(parts) => {
            let mut acc: Option<FiniteGroup> = None;
            for (i, part) in parts.iter().enumerate() {
                let g = group(part, &format!("{path}.product[{i}]"), opts)?;
                acc = Some(match acc {
                    None => g,
                    Some(a) => direct_product(&a, &g).map_err(engine)?,
                });
            }
            Ok(acc.unwrap_or_else(FiniteGroup::trivial))
        }
    }
}

/// An element given by index, by label, or for products by one entry per factor.
fn element(g: &FiniteGroup, v: &Value, path: &str) -> Result<usize, InputError> {
    match v {
        Value::Number(n) => match n.as_u64() {
            Some(x) if (x as usize) < g.order() => Ok(x as usize),
            _ => fail(format!(
                "{path}: element index {n} outside 0..{}",
                g.order()
            )),
        },
        Value::String(s) => g
            .find_label(s)
            .or_else(|| (0..g.order()).find(|&x| g.label(x) == *s))
            .ok_or_else(|| InputError(format!("{path}: no element labelled {s:?}"))),
        Value::Array(parts) if g.is_product() => {
            if parts.len() != g.factors().len() {
                return fail(format!(
                    "{path}: {} components for a product of {} factors",
                    parts.len(),
                    g.factors().len()
                ));
            }
            let comps = parts
                .iter()
                .enumerate()
                .map(|(i, p)| element(&g.factor_group(i), p, &format!("{path}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(g.from_components(&comps))
        }
        _ => fail(format!("{path}: expected an element index or label")),
    }
}

fn finite_hom(
    spec: &HomSpec,
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    path: &str,
) -> Result<FiniteHom, InputError> {
    let engine = |e: coincidence_core::Error| InputError(format!("{path}: {e}"));
    let elements = |g: &FiniteGroup, vs: &[Value], what: &str| {
        vs.iter()
            .enumerate()
            .map(|(i, v)| element(g, v, &format!("{path}.{what}[{i}]")))
            .collect::<Result<Vec<usize>, _>>()
    };
    match spec {
        HomSpec::Identity => {
            if domain != codomain {
                return fail(format!("{path}: identity needs equal domain and codomain"));
            }
            Ok(FiniteHom::identity(domain))
        }
        HomSpec::Trivial => Ok(FiniteHom::trivial(domain, codomain)),
        HomSpec::Projection(i) => {
            let p = FiniteHom::projection(domain, *i).map_err(engine)?;
            if p.codomain() != codomain {
                return fail(format!(
                    "{path}: factor {i} of the domain is not the codomain"
                ));
            }
            Ok(FiniteHom::new(
                domain.clone(),
                codomain.clone(),
                (0..domain.order()).map(|x| p.apply(x)).collect(),
            )
            .map_err(engine)?)
        }
        HomSpec::Images(vs) => {
            let images = elements(codomain, vs, "images")?;
            FiniteHom::from_generator_images(domain.clone(), codomain.clone(), &images)
                .map_err(engine)
        }
        HomSpec::Table(vs) => {
            let image = elements(codomain, vs, "table")?;
            FiniteHom::new(domain.clone(), codomain.clone(), image).map_err(engine)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNilpotent {
    #[serde(rename = "kind")]
    _kind: IgnoredAny,
    description: Option<String>,
    names: Option<Vec<String>>,
    domain: RawPcGroup,
    codomain: RawPcGroup,
    homs: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPcGroup {
    generators: Vec<String>,
    #[serde(default)]
    central: Vec<Value>,
    #[serde(default)]
    commutators: Vec<(Value, Value, Value)>,
}

/// A pc-group together with the order its generators had in the file.
struct FileGroup {
    group: PcGroup,
    /// `order[i]` is the file position of internal generator `i`.
    order: Vec<usize>,
    file_names: Vec<String>,
}

impl FileGroup {
    fn file_index(&self, v: &Value, path: &str) -> Result<usize, InputError> {
        match v {
            Value::String(s) => self
                .file_names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| InputError(format!("{path}: unknown generator {s:?}"))),
            Value::Number(n) => match n.as_u64() {
                Some(i) if (i as usize) < self.file_names.len() => Ok(i as usize),
                _ => fail(format!(
                    "{path}: generator index {n} outside 0..{}",
                    self.file_names.len()
                )),
            },
            _ => fail(format!("{path}: expected a generator name or index")),
        }
    }

    fn internal_index(&self, file: usize) -> usize {
        self.order
            .iter()
            .position(|&f| f == file)
            .expect("order is a permutation")
    }

    /// A word in file order: an exponent vector, a list of `[generator,
    /// exponent]` syllables multiplied left to right, a single generator name,
    /// or `[]` for the identity.
    fn word(&self, v: &Value, path: &str) -> Result<PcWord, InputError> {
        let n = self.file_names.len();
        match v {
            Value::String(_) => {
                let i = self.file_index(v, path)?;
                Ok(self.group.generator(self.internal_index(i)))
            }
            Value::Array(xs) if xs.is_empty() => Ok(self.group.identity()),
            Value::Array(xs) if xs.iter().all(Value::is_array) => {
                let mut syllables = Vec::with_capacity(xs.len());
                for (s, x) in xs.iter().enumerate() {
                    let p = format!("{path}[{s}]");
                    match x.as_array().map(Vec::as_slice) {
                        Some([g, e]) => {
                            let i = self.internal_index(self.file_index(g, &p)?);
                            syllables.push((i, integer(e, &format!("{p}[1]"))?));
                        }
                        _ => return fail(format!("{p}: a syllable is [generator, exponent]")),
                    }
                }
                self.group
                    .word_from_syllables(&syllables)
                    .map_err(|e| InputError(format!("{path}: {e}")))
            }
            Value::Array(xs) => {
                if xs.len() != n {
                    return fail(format!(
                        "{path}: exponent vector has {} entries, expected {n}",
                        xs.len()
                    ));
                }
                let exps = xs
                    .iter()
                    .enumerate()
                    .map(|(i, x)| integer(x, &format!("{path}[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(PcWord::new(
                    self.order.iter().map(|&f| exps[f].clone()).collect(),
                ))
            }
            _ => fail(format!(
                "{path}: expected an exponent vector, a syllable list or a generator name"
            )),
        }
    }
}

fn integer(v: &Value, path: &str) -> Result<BigInt, InputError> {
    Int::deserialize(v)
        .map(|i| i.0)
        .map_err(|e| InputError(format!("{path}: {e}")))
}

fn pc_group(raw: &RawPcGroup, path: &str) -> Result<FileGroup, InputError> {
    let n = raw.generators.len();
    let mut central = vec![false; n];
    let lookup = FileGroup {
        group: PcGroup::abelian(vec![]).expect("empty group"),
        order: vec![],
        file_names: raw.generators.clone(),
    };
    for (i, c) in raw.central.iter().enumerate() {
        central[lookup.file_index(c, &format!("{path}.central[{i}]"))?] = true;
    }
    let order: Vec<usize> = (0..n)
        .filter(|&f| !central[f])
        .chain((0..n).filter(|&f| central[f]))
        .collect();
    let names: Vec<String> = order.iter().map(|&f| raw.generators[f].clone()).collect();
    let flags: Vec<bool> = order.iter().map(|&f| central[f]).collect();
    // relation values are central, so a free abelian stand-in reads them correctly
    let stand_in = PcGroup::abelian(names.clone())
        .map_err(|e| InputError(format!("{path}.generators: {e}")))?;
    let mut file = FileGroup {
        group: stand_in,
        order,
        file_names: raw.generators.clone(),
    };
    let mut relations = Vec::with_capacity(raw.commutators.len());
    for (r, (g, h, w)) in raw.commutators.iter().enumerate() {
        let p = format!("{path}.commutators[{r}]");
        let i = file.internal_index(file.file_index(g, &format!("{p}[0]"))?);
        let j = file.internal_index(file.file_index(h, &format!("{p}[1]"))?);
        let value = file.word(w, &format!("{p}[2]"))?;
        relations.push((i, j, value.exponents().to_vec()));
    }
    file.group =
        PcGroup::new(names, &flags, &relations).map_err(|e| InputError(format!("{path}: {e}")))?;
    Ok(file)
}

/// Generator images as an object `{name: word}` or a list in file order.
fn pc_hom(
    v: &Value,
    domain: &FileGroup,
    codomain: &FileGroup,
    path: &str,
) -> Result<PcHom, InputError> {
    let n = domain.file_names.len();
    let mut by_file: Vec<Option<PcWord>> = vec![None; n];
    match v {
        Value::Object(map) => {
            for (name, w) in map {
                let f = domain.file_index(&Value::String(name.clone()), path)?;
                by_file[f] = Some(codomain.word(w, &format!("{path}.{name}"))?);
            }
        }
        Value::Array(ws) => {
            if ws.len() != n {
                return fail(format!("{path}: {} images for {n} generators", ws.len()));
            }
            for (f, w) in ws.iter().enumerate() {
                by_file[f] = Some(codomain.word(w, &format!("{path}[{f}]"))?);
            }
        }
        _ => {
            return fail(format!(
                "{path}: expected an object of generator images or a list"
            ))
        }
    }
    let mut images = Vec::with_capacity(n);
    for &f in &domain.order {
        match &by_file[f] {
            Some(w) => images.push(w.clone()),
            None => {
                return fail(format!(
                    "{path}: no image for generator {:?}",
                    domain.file_names[f]
                ))
            }
        }
    }
    PcHom::new(domain.group.clone(), codomain.group.clone(), images)
        .map_err(|e| InputError(format!("{path}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ProblemFile, InputError> {
        parse_str(text, &ParseOptions::default())
    }

    fn err(text: &str) -> String {
        parse(text).unwrap_err().0
    }

    #[test]
    fn empty_input_names_kind() {
        assert!(err("").contains("missing field `kind`"));
        assert!(err("  \n").contains("missing field `kind`"));
        assert!(err("{}").contains("missing field `kind`"));
        assert!(err("[1]").contains("`kind`"));
    }

    #[test]
    fn unknown_kind_and_fields() {
        assert!(err(r#"{"kind": "torus"}"#).contains("unknown kind `torus`"));
        let e = err(r#"{"kind": "snf", "matrix": [[1]], "colour": 3}"#);
        assert!(e.contains("colour"), "{e}");
        let e = err(r#"{"kind": "snf", "matrix": [[1, 2.5]]}"#);
        assert!(e.starts_with("matrix[0][1]"), "{e}");
    }

    #[test]
    fn ragged_rows_name_the_row() {
        let e = err(r#"{"kind": "abelian-multi", "homs": [[[1, 2]], [[1, 2], [3]]]}"#);
        assert_eq!(e, "homs[1]: row 1 has 1 entries, expected 2");
    }

    #[test]
    fn shape_mismatch_between_homs() {
        let e = err(r#"{"kind": "abelian-multi", "homs": [[[1, 2]], [[1, 2, 3]]]}"#);
        assert_eq!(e, "homs[1]: shape 1x3 differs from homs[0] shape 1x2");
        let e = err(r#"{"kind": "abelian-pair", "phi": [[1]], "psi": [[1], [2]]}"#);
        assert!(e.starts_with("psi: shape 2x1"), "{e}");
    }

    #[test]
    fn big_integers_as_strings() {
        let p = parse(r#"{"kind": "snf", "matrix": [["123456789012345678901234567890", -1]]}"#)
            .unwrap();
        let Problem::Snf(m) = p.problem else { panic!() };
        assert_eq!(m[(0, 0)].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn finite_permutation_group() {
        let text = r#"{
            "kind": "finite",
            "domain": {"permutations": {"degree": 3, "generators": ["(1 2 3)", "(1 2)"]}},
            "codomain": {"permutations": {"degree": 3, "generators": ["(1 2 3)", "(1 2)"]}},
            "homs": ["identity", {"images": ["(1 3 2)", "(1 2)"]}]
        }"#;
        let p = parse(text).unwrap();
        assert_eq!(p.names, vec!["phi_1", "phi_2"]);
        let Problem::Finite(homs) = p.problem else {
            panic!()
        };
        assert_eq!(homs[0].domain().order(), 6);
    }

    #[test]
    fn finite_errors_carry_paths() {
        let text = r#"{
            "kind": "finite",
            "domain": {"cyclic": 4},
            "codomain": {"cyclic": 4},
            "homs": ["identity", {"images": [9]}]
        }"#;
        assert_eq!(err(text), "homs[1].images[0]: element index 9 outside 0..4");
        let text = r#"{
            "kind": "finite",
            "domain": {"permutations": {"degree": 3, "generators": ["(1 4)"]}},
            "codomain": {"cyclic": 2},
            "homs": ["trivial", "trivial"]
        }"#;
        assert!(err(text).starts_with("domain.generators[0]:"));
    }

    #[test]
    fn closure_cap_is_enforced() {
        let text = r#"{
            "kind": "finite",
            "domain": {"builtin": "binary-icosahedral"},
            "codomain": {"matrices": {"modulus": 5, "generators": [[[1, 1], [0, 1]], [[0, -1], [1, 0]]]}},
            "homs": ["trivial", "trivial"]
        }"#;
        assert!(parse(text).is_ok());
        let e = parse_str(text, &ParseOptions { closure_cap: 60 })
            .unwrap_err()
            .0;
        assert!(e.starts_with("codomain:"), "{e}");
    }

    #[test]
    fn nilpotent_file_order_is_remapped() {
        let text = r#"{
            "kind": "nilpotent",
            "domain": {"generators": ["x", "z", "y"], "central": ["z"], "commutators": [["x", "y", "z"]]},
            "codomain": {"generators": ["x", "z", "y"], "central": ["z"], "commutators": [["x", "y", [0, 1, 0]]]},
            "homs": [
                {"x": "x", "y": "y", "z": "z"},
                [[["y", 1], ["x", 1]], [0, -1, 0], "x"]
            ]
        }"#;
        let p = parse(text).unwrap();
        let Problem::Nilpotent(homs) = p.problem else {
            panic!()
        };
        assert_eq!(homs[0].domain().names(), ["x", "y", "z"]);
        // y·x = x·y·z⁻¹ in normal form
        assert_eq!(homs[1].images()[0], PcWord::from_i64(&[1, 1, -1]));
        assert_eq!(homs[1].images()[2], PcWord::from_i64(&[0, 0, -1]));
    }

    #[test]
    fn nilpotent_rejects_non_homomorphisms() {
        let text = r#"{
            "kind": "nilpotent",
            "domain": {"generators": ["x", "y", "z"], "central": ["z"], "commutators": [["x", "y", "z"]]},
            "codomain": {"generators": ["x", "y", "z"], "central": ["z"], "commutators": [["x", "y", "z"]]},
            "homs": [{"x": "x", "y": "y", "z": "z"}, {"x": "x", "y": "y", "z": []}]
        }"#;
        let e = err(text);
        assert!(e.starts_with("homs[1]: not a homomorphism"), "{e}");
        let missing = text.replace(r#""y": "y", "z": []"#, r#""y": "y""#);
        assert_eq!(err(&missing), "homs[1]: no image for generator \"z\"");
    }
}
