//! Line-oriented text formats for every object kind, and their canonical serialization.
//!
//! A file holds any number of blocks. Each block starts with a header line
//! (`group`, `hom`, `action`, `cochain`, `extension`, `xext`, `butterfly`,
//! `akernel`, `category`, `functor`) and ends with `end`. Blank lines and lines
//! starting with `#` are ignored. The canonical form has no comments and one
//! blank line between blocks.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::butterfly::Butterfly;
use crate::cohomology::Cochain;
use crate::fincat::{FinCategory, FunctorTable};
use crate::fingroup::{catalog, AbelianAction, Action, FiniteGroup, Homomorphism};
use crate::limits::DEFAULT_MAX_MORPHISMS;
use crate::opext::Extension;
use crate::schreier::AbstractKernel;
use crate::xmod::{CrossedExtension, CrossedModule};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{file}:{line}: {reason}")]
    Parse { file: String, line: usize, reason: String },
    #[error("{name}: {reason}")]
    Validation { name: String, reason: String },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("{file}: {source}")]
    Read { file: String, source: std::io::Error },
}

#[derive(Debug, Clone)]
pub enum Object {
    Group(FiniteGroup),
    Hom { src: String, dst: String, map: Homomorphism },
    Action { c: String, b: String, action: Action },
    Cochain { action: String, cochain: Cochain },
    Extension { b: String, e: String, c: String, ext: Extension },
    XExt { b: String, g2: String, g1: String, c: String, xext: CrossedExtension },
    Butterfly { x: String, y: String, e: String, butterfly: Butterfly },
    AKernel { c: String, k: String, kernel: AbstractKernel },
    Category(Arc<FinCategory>),
    Functor { src: String, dst: String, functor: FunctorTable },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Group(_) => "group",
            Object::Hom { .. } => "hom",
            Object::Action { .. } => "action",
            Object::Cochain { .. } => "cochain",
            Object::Extension { .. } => "extension",
            Object::XExt { .. } => "xext",
            Object::Butterfly { .. } => "butterfly",
            Object::AKernel { .. } => "akernel",
            Object::Category(_) => "category",
            Object::Functor { .. } => "functor",
        }
    }
}

/// Named, validated objects; groups also resolve from the built-in catalog and
/// actions from the names `triv-<C>-<B>` and `inv-<C>-<B>`.
#[derive(Debug, Clone, Default)]
pub struct Bundle {
    order: Vec<String>,
    objects: HashMap<String, Object>,
}

struct Line<'a> {
    no: usize,
    toks: Vec<&'a str>,
}

struct Cursor<'a> {
    file: &'a str,
    lines: Vec<Line<'a>>,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn new(file: &'a str, text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .map(|(i, l)| Line { no: i + 1, toks: l.split_whitespace().collect() })
            .collect();
        Cursor { file, lines, at: 0 }
    }

    fn err(&self, line: usize, reason: impl Into<String>) -> IoError {
        IoError::Parse { file: self.file.to_string(), line, reason: reason.into() }
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(0, |l| l.no)
    }

    fn next(&mut self) -> Result<&Line<'a>, IoError> {
        let eof = self.last_line();
        let line = self.lines.get(self.at).ok_or_else(|| self.err(eof, "unexpected end of file, missing `end`"))?;
        self.at += 1;
        Ok(line)
    }

    fn done(&self) -> bool {
        self.at >= self.lines.len()
    }

    /// A line `<keyword> v₁ … vₙ`.
    fn keyed(&mut self, keyword: &str) -> Result<(usize, Vec<usize>), IoError> {
        let file = self.file;
        let line = self.next()?;
        if line.toks.first() != Some(&keyword) {
            return Err(IoError::Parse { file: file.into(), line: line.no, reason: format!("expected `{keyword}`") });
        }
        let no = line.no;
        let toks = line.toks[1..].to_vec();
        Ok((no, numbers(file, no, &toks)?))
    }

    /// A bare line of numbers.
    fn row(&mut self) -> Result<(usize, Vec<usize>), IoError> {
        let file = self.file;
        let line = self.next()?;
        let no = line.no;
        let toks = line.toks.clone();
        Ok((no, numbers(file, no, &toks)?))
    }

    fn end(&mut self) -> Result<(), IoError> {
        let file = self.file;
        let line = self.next()?;
        if line.toks != ["end"] {
            return Err(IoError::Parse { file: file.into(), line: line.no, reason: "expected `end`".into() });
        }
        Ok(())
    }
}

fn numbers(file: &str, line: usize, toks: &[&str]) -> Result<Vec<usize>, IoError> {
    toks.iter()
        .map(|t| {
            t.parse().map_err(|_| IoError::Parse { file: file.into(), line, reason: format!("`{t}` is not a non-negative integer") })
        })
        .collect()
}

fn invalid(name: &str, e: impl std::fmt::Display) -> IoError {
    IoError::Validation { name: name.to_string(), reason: e.to_string() }
}

fn expect_len(cur: &Cursor, line: usize, got: usize, want: usize, what: &str) -> Result<(), IoError> {
    if got != want {
        return Err(cur.err(line, format!("{what} has {got} entries, expected {want}")));
    }
    Ok(())
}

impl Bundle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads a file, or every file of a directory in name order.
    pub fn load_path(&mut self, path: &Path) -> Result<Vec<String>, IoError> {
        let read_err = |source| IoError::Read { file: path.display().to_string(), source };
        if path.is_dir() {
            let mut files: Vec<_> = std::fs::read_dir(path)
                .map_err(read_err)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file() && !p.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
                .collect();
            files.sort();
            let mut names = Vec::new();
            for f in files {
                names.extend(self.load_path(&f)?);
            }
            Ok(names)
        } else {
            let text = std::fs::read_to_string(path).map_err(read_err)?;
            self.parse_str(&path.display().to_string(), &text)
        }
    }

    /// Parses and validates every block, returning the names added in file order.
    pub fn parse_str(&mut self, file: &str, text: &str) -> Result<Vec<String>, IoError> {
        let mut cur = Cursor::new(file, text);
        let mut added = Vec::new();
        while !cur.done() {
            let header = cur.next()?;
            let (no, toks) = (header.no, header.toks.clone());
            let arity = |n: usize| {
                if toks.len() == n {
                    Ok(())
                } else {
                    Err(IoError::Parse { file: file.into(), line: no, reason: format!("`{}` header takes {} fields", toks[0], n - 1) })
                }
            };
            let (name, object) = match toks[0] {
                "group" => {
                    arity(2)?;
                    (toks[1], self.parse_group(&mut cur, toks[1])?)
                }
                "hom" => {
                    arity(4)?;
                    let (src, dst) = (self.group(toks[2])?, self.group(toks[3])?);
                    let (l, images) = cur.row()?;
                    expect_len(&cur, l, images.len(), src.order(), "image line")?;
                    let map = Homomorphism::new(&src, &dst, images).map_err(|e| invalid(toks[1], e))?;
                    cur.end()?;
                    (toks[1], Object::Hom { src: toks[2].into(), dst: toks[3].into(), map })
                }
                "action" => {
                    arity(4)?;
                    let (c, b) = (self.group(toks[2])?, self.group(toks[3])?);
                    let rows = rows(&mut cur, c.order(), b.order())?;
                    let action = Action::new(&c, &b, &rows).map_err(|e| invalid(toks[1], e))?;
                    cur.end()?;
                    (toks[1], Object::Action { c: toks[2].into(), b: toks[3].into(), action })
                }
                "cochain" => {
                    arity(4)?;
                    (toks[1], self.parse_cochain(&mut cur, &toks, no)?)
                }
                "extension" => {
                    arity(5)?;
                    let (b, e, c) = (self.group(toks[2])?, self.group(toks[3])?, self.group(toks[4])?);
                    let (l, k) = cur.keyed("k")?;
                    expect_len(&cur, l, k.len(), b.order(), "k")?;
                    let (l, f) = cur.keyed("f")?;
                    expect_len(&cur, l, f.len(), e.order(), "f")?;
                    cur.end()?;
                    let k = Homomorphism::new(&b, &e, k).map_err(|err| invalid(toks[1], err))?;
                    let f = Homomorphism::new(&e, &c, f).map_err(|err| invalid(toks[1], err))?;
                    let ext = Extension::new(k, f).map_err(|err| invalid(toks[1], err))?;
                    (toks[1], Object::Extension { b: toks[2].into(), e: toks[3].into(), c: toks[4].into(), ext })
                }
                "xext" => {
                    arity(6)?;
                    (toks[1], self.parse_xext(&mut cur, &toks)?)
                }
                "butterfly" => {
                    arity(5)?;
                    let (x, y, e) = (self.xext(toks[2])?, self.xext(toks[3])?, self.group(toks[4])?);
                    let mut maps = Vec::new();
                    for (key, src, dst) in [("kappa", x.g2(), &e), ("iota", y.g2(), &e), ("delta", &e, x.g1()), ("gamma", &e, y.g1())] {
                        let (l, images) = cur.keyed(key)?;
                        expect_len(&cur, l, images.len(), src.order(), key)?;
                        maps.push(Homomorphism::new(src, dst, images).map_err(|err| invalid(toks[1], format!("{key}: {err}")))?);
                    }
                    cur.end()?;
                    let [kappa, iota, delta, gamma]: [Homomorphism; 4] = maps.try_into().expect("four maps");
                    let butterfly = Butterfly::new(&x, &y, kappa, iota, delta, gamma).map_err(|err| invalid(toks[1], err))?;
                    (toks[1], Object::Butterfly { x: toks[2].into(), y: toks[3].into(), e: toks[4].into(), butterfly })
                }
                "akernel" => {
                    arity(4)?;
                    let (c, k) = (self.group(toks[2])?, self.group(toks[3])?);
                    let (l, images) = cur.row()?;
                    expect_len(&cur, l, images.len(), c.order(), "image line")?;
                    cur.end()?;
                    let out = crate::fingroup::structure_of(&k).map_err(|err| invalid(toks[1], err))?.outer.group;
                    let psi0 = Homomorphism::new(&c, &out, images).map_err(|err| invalid(toks[1], err))?;
                    let kernel = AbstractKernel::new(&k, psi0).map_err(|err| invalid(toks[1], err))?;
                    (toks[1], Object::AKernel { c: toks[2].into(), k: toks[3].into(), kernel })
                }
                "category" => {
                    arity(2)?;
                    (toks[1], Object::Category(Arc::new(parse_category(&mut cur, toks[1])?)))
                }
                "functor" => {
                    arity(4)?;
                    let (src, dst) = (self.category(toks[2])?, self.category(toks[3])?);
                    let (_, objects) = cur.keyed("objects")?;
                    let (_, morphisms) = cur.keyed("morphisms")?;
                    cur.end()?;
                    let functor = FunctorTable::new(src, dst, objects, morphisms).map_err(|err| invalid(toks[1], err))?;
                    (toks[1], Object::Functor { src: toks[2].into(), dst: toks[3].into(), functor })
                }
                other => return Err(cur.err(no, format!("unknown block `{other}`"))),
            };
            if self.objects.contains_key(name) {
                return Err(cur.err(no, format!("`{name}` is already defined")));
            }
            self.order.push(name.to_string());
            self.objects.insert(name.to_string(), object);
            added.push(name.to_string());
        }
        Ok(added)
    }

    fn parse_group(&self, cur: &mut Cursor, name: &str) -> Result<Object, IoError> {
        let (l, order) = cur.keyed("order")?;
        let n = match order.as_slice() {
            [n] if *n > 0 => *n,
            _ => return Err(cur.err(l, "`order` takes one positive integer")),
        };
        let (l, rest) = cur.keyed("table")?;
        if !rest.is_empty() {
            return Err(cur.err(l, "`table` takes no arguments"));
        }
        let rows = rows(cur, n, n)?;
        cur.end()?;
        let g = FiniteGroup::from_table(&rows).map_err(|e| invalid(name, e))?;
        Ok(Object::Group(g))
    }

    fn parse_cochain(&self, cur: &mut Cursor, toks: &[&str], no: usize) -> Result<Object, IoError> {
        let degree: usize = toks[2].parse().map_err(|_| cur.err(no, "degree must be a non-negative integer"))?;
        let action = self.action(toks[3])?;
        let module = AbelianAction::from_action(action).map_err(|e| invalid(toks[1], e))?;
        let (c, b) = (module.actor().order(), module.module().order());
        let mut values: HashMap<Vec<usize>, usize> = HashMap::new();
        loop {
            let line = cur.next()?;
            let (l, parts) = (line.no, line.toks.clone());
            if parts == ["end"] {
                break;
            }
            let arrow = parts.iter().position(|&t| t == "->");
            let Some(arrow) = arrow.filter(|&a| a == degree && parts.len() == degree + 2) else {
                return Err(cur.err(l, format!("expected `x1 … x{degree} -> b`")));
            };
            let tuple = numbers(cur.file, l, &parts[..arrow])?;
            let value = numbers(cur.file, l, &parts[arrow + 1..])?[0];
            if tuple.iter().any(|&x| x == 0 || x >= c) {
                return Err(cur.err(l, "arguments must be non-identity elements"));
            }
            if value >= b {
                return Err(cur.err(l, format!("value {value} is outside the module")));
            }
            if values.insert(tuple, value).is_some() {
                return Err(cur.err(l, "tuple listed twice"));
            }
        }
        let cochain = Cochain::from_fn(degree, &module, |t| values.get(t).copied().unwrap_or(0));
        Ok(Object::Cochain { action: toks[3].into(), cochain })
    }

    fn parse_xext(&self, cur: &mut Cursor, toks: &[&str]) -> Result<Object, IoError> {
        let name = toks[1];
        let (b, g2, g1, c) = (self.group(toks[2])?, self.group(toks[3])?, self.group(toks[4])?, self.group(toks[5])?);
        let (l, j) = cur.keyed("j")?;
        expect_len(cur, l, j.len(), b.order(), "j")?;
        let (l, d) = cur.keyed("partial")?;
        expect_len(cur, l, d.len(), g2.order(), "partial")?;
        let (l, p) = cur.keyed("p")?;
        expect_len(cur, l, p.len(), g1.order(), "p")?;
        let (l, rest) = cur.keyed("act")?;
        if !rest.is_empty() {
            return Err(cur.err(l, "`act` takes no arguments"));
        }
        let rows = rows(cur, g1.order(), g2.order())?;
        cur.end()?;
        let j = Homomorphism::new(&b, &g2, j).map_err(|e| invalid(name, format!("j: {e}")))?;
        let d = Homomorphism::new(&g2, &g1, d).map_err(|e| invalid(name, format!("partial: {e}")))?;
        let p = Homomorphism::new(&g1, &c, p).map_err(|e| invalid(name, format!("p: {e}")))?;
        let act = Action::new(&g1, &g2, &rows).map_err(|e| invalid(name, e))?;
        let xmod = CrossedModule::new(d, act).map_err(|e| invalid(name, e))?;
        let xext = CrossedExtension::new(xmod, j, p).map_err(|e| invalid(name, e))?;
        Ok(Object::XExt { b: toks[2].into(), g2: toks[3].into(), g1: toks[4].into(), c: toks[5].into(), xext })
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn group(&self, name: &str) -> Result<FiniteGroup, IoError> {
        match self.objects.get(name) {
            Some(Object::Group(g)) => Ok(g.clone()),
            _ => catalog::by_name(name).ok_or_else(|| IoError::Unknown { kind: "group", name: name.into() }),
        }
    }

    pub fn hom(&self, name: &str) -> Result<Homomorphism, IoError> {
        match self.objects.get(name) {
            Some(Object::Hom { map, .. }) => Ok(map.clone()),
            _ => Err(IoError::Unknown { kind: "hom", name: name.into() }),
        }
    }

    /// A homomorphism `src → dst`: a bundle name, `id` or `zero`.
    pub fn hom_between(&self, name: &str, src: &FiniteGroup, dst: &FiniteGroup) -> Result<Homomorphism, IoError> {
        let h = match name {
            "id" if src == dst => Homomorphism::identity(src),
            "zero" => Homomorphism::zero(src, dst),
            _ => self.hom(name)?,
        };
        if h.source() != src || h.target() != dst {
            return Err(invalid(name, "homomorphism has the wrong source or target"));
        }
        Ok(h)
    }

    pub fn action(&self, name: &str) -> Result<Action, IoError> {
        if let Some(Object::Action { action, .. }) = self.objects.get(name) {
            return Ok(action.clone());
        }
        let unknown = || IoError::Unknown { kind: "action", name: name.into() };
        let parts: Vec<&str> = name.splitn(3, '-').collect();
        let [kind, c, b] = parts.as_slice() else { return Err(unknown()) };
        let (c, b) = (self.group(c)?, self.group(b)?);
        match *kind {
            "triv" => Ok(Action::trivial(&c, &b)),
            "inv" if c.order() == 2 && b.is_abelian() => {
                let rows = vec![b.elements().collect(), b.elements().map(|v| b.inv(v)).collect()];
                Action::new(&c, &b, &rows).map_err(|e| invalid(name, e))
            }
            _ => Err(unknown()),
        }
    }

    pub fn module(&self, name: &str) -> Result<AbelianAction, IoError> {
        AbelianAction::from_action(self.action(name)?).map_err(|e| invalid(name, e))
    }

    pub fn cochain(&self, name: &str) -> Result<Cochain, IoError> {
        match self.objects.get(name) {
            Some(Object::Cochain { cochain, .. }) => Ok(cochain.clone()),
            _ => Err(IoError::Unknown { kind: "cochain", name: name.into() }),
        }
    }

    pub fn extension(&self, name: &str) -> Result<Extension, IoError> {
        match self.objects.get(name) {
            Some(Object::Extension { ext, .. }) => Ok(ext.clone()),
            _ => Err(IoError::Unknown { kind: "extension", name: name.into() }),
        }
    }

    pub fn xext(&self, name: &str) -> Result<CrossedExtension, IoError> {
        match self.objects.get(name) {
            Some(Object::XExt { xext, .. }) => Ok(xext.clone()),
            _ => Err(IoError::Unknown { kind: "crossed extension", name: name.into() }),
        }
    }

    pub fn butterfly(&self, name: &str) -> Result<Butterfly, IoError> {
        match self.objects.get(name) {
            Some(Object::Butterfly { butterfly, .. }) => Ok(butterfly.clone()),
            _ => Err(IoError::Unknown { kind: "butterfly", name: name.into() }),
        }
    }

    pub fn akernel(&self, name: &str) -> Result<AbstractKernel, IoError> {
        match self.objects.get(name) {
            Some(Object::AKernel { kernel, .. }) => Ok(kernel.clone()),
            _ => Err(IoError::Unknown { kind: "abstract kernel", name: name.into() }),
        }
    }

    pub fn category(&self, name: &str) -> Result<Arc<FinCategory>, IoError> {
        match self.objects.get(name) {
            Some(Object::Category(c)) => Ok(c.clone()),
            _ => Err(IoError::Unknown { kind: "category", name: name.into() }),
        }
    }

    /// Canonical text of the named objects, in the given order.
    pub fn serialize(&self, names: &[String]) -> Result<String, IoError> {
        let blocks: Vec<String> = names
            .iter()
            .map(|n| {
                let o = self.objects.get(n).ok_or_else(|| IoError::Unknown { kind: "object", name: n.clone() })?;
                Ok(serialize_object(n, o))
            })
            .collect::<Result<_, IoError>>()?;
        Ok(blocks.join("\n"))
    }
}

fn rows(cur: &mut Cursor, count: usize, width: usize) -> Result<Vec<Vec<usize>>, IoError> {
    (0..count)
        .map(|_| {
            let (l, row) = cur.row()?;
            expect_len(cur, l, row.len(), width, "row")?;
            Ok(row)
        })
        .collect()
}

fn parse_category(cur: &mut Cursor, name: &str) -> Result<FinCategory, IoError> {
    let (l, k) = cur.keyed("objects")?;
    let [objects] = k.as_slice() else { return Err(cur.err(l, "`objects` takes one integer")) };
    let (l, m) = cur.keyed("morphisms")?;
    let [m] = m.as_slice() else { return Err(cur.err(l, "`morphisms` takes one integer")) };
    let mut ends = Vec::with_capacity(*m);
    for i in 0..*m {
        let (l, row) = cur.row()?;
        match row.as_slice() {
            [id, s, t] if *id == i => ends.push((*s, *t)),
            _ => return Err(cur.err(l, format!("expected `{i} src dst`"))),
        }
    }
    let (_, identities) = cur.keyed("identities")?;
    let (l, rest) = cur.keyed("compose")?;
    if !rest.is_empty() {
        return Err(cur.err(l, "`compose` takes no arguments"));
    }
    let mut composites = Vec::new();
    loop {
        let line = cur.next()?;
        if line.toks == ["end"] {
            break;
        }
        let (no, toks) = (line.no, line.toks.clone());
        match numbers(cur.file, no, &toks)?.as_slice() {
            [g, f, gf] => composites.push((*g, *f, *gf)),
            _ => return Err(cur.err(no, "expected `g f gf`")),
        }
    }
    FinCategory::new(*objects, ends, identities, &composites, DEFAULT_MAX_MORPHISMS).map_err(|e| invalid(name, e))
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn keyed(key: &str, v: &[usize]) -> String {
    if v.is_empty() {
        key.to_string()
    } else {
        format!("{key} {}", join(v))
    }
}

/// One canonical block, ending in a newline.
pub fn serialize_object(name: &str, object: &Object) -> String {
    let mut lines: Vec<String> = Vec::new();
    match object {
        Object::Group(g) => {
            lines.push(format!("group {name}"));
            lines.push(format!("order {}", g.order()));
            lines.push("table".into());
            lines.extend(g.rows().iter().map(|r| join(r)));
        }
        Object::Hom { src, dst, map } => {
            lines.push(format!("hom {name} {src} {dst}"));
            lines.push(join(map.images()));
        }
        Object::Action { c, b, action } => {
            lines.push(format!("action {name} {c} {b}"));
            lines.extend(action.rows().iter().map(|r| join(r)));
        }
        Object::Cochain { action, cochain } => {
            lines.push(format!("cochain {name} {} {action}", cochain.degree()));
            lines.extend(cochain.support().map(|(t, v)| format!("{} -> {v}", join(&t))));
        }
        Object::Extension { b, e, c, ext } => {
            lines.push(format!("extension {name} {b} {e} {c}"));
            lines.push(keyed("k", ext.k().images()));
            lines.push(keyed("f", ext.f().images()));
        }
        Object::XExt { b, g2, g1, c, xext } => {
            lines.push(format!("xext {name} {b} {g2} {g1} {c}"));
            lines.push(keyed("j", xext.j().images()));
            lines.push(keyed("partial", xext.d().images()));
            lines.push(keyed("p", xext.p().images()));
            lines.push("act".into());
            lines.extend(xext.xmod().action().rows().iter().map(|r| join(r)));
        }
        Object::Butterfly { x, y, e, butterfly } => {
            lines.push(format!("butterfly {name} {x} {y} {e}"));
            lines.push(keyed("kappa", butterfly.kappa().images()));
            lines.push(keyed("iota", butterfly.iota().images()));
            lines.push(keyed("delta", butterfly.delta().images()));
            lines.push(keyed("gamma", butterfly.gamma().images()));
        }
        Object::AKernel { c, k, kernel } => {
            lines.push(format!("akernel {name} {c} {k}"));
            lines.push(join(kernel.psi0().images()));
        }
        Object::Category(cat) => {
            lines.push(format!("category {name}"));
            lines.push(format!("objects {}", cat.object_count()));
            lines.push(format!("morphisms {}", cat.morphism_count()));
            lines.extend(cat.ends().iter().enumerate().map(|(i, (s, t))| format!("{i} {s} {t}")));
            lines.push(keyed("identities", cat.identities()));
            lines.push("compose".into());
            lines.extend(cat.composites().iter().map(|(g, f, gf)| format!("{g} {f} {gf}")));
        }
        Object::Functor { src, dst, functor } => {
            lines.push(format!("functor {name} {src} {dst}"));
            lines.push(keyed("objects", &functor.objects));
            lines.push(keyed("morphisms", &functor.morphisms));
        }
    }
    lines.push("end".into());
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "group V\norder 4\ntable\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\nend\n\nhom swap V V\n0 2 1 3\nend\n";

    #[test]
    fn roundtrip_and_comments() {
        let mut b = Bundle::new();
        let names = b.parse_str("small", SMALL).unwrap();
        assert_eq!(b.serialize(&names).unwrap(), SMALL);
        let mut c = Bundle::new();
        let commented = format!("# a comment\n\n{SMALL}# trailing\n");
        let names = c.parse_str("commented", &commented).unwrap();
        assert_eq!(c.serialize(&names).unwrap(), SMALL);
    }

    #[test]
    fn non_square_table_reports_its_line() {
        let text = "group G\norder 2\ntable\n0 1\n1\nend\n";
        match Bundle::new().parse_str("g.grp", text) {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn builtin_actions_and_catalog_groups() {
        let b = Bundle::new();
        assert!(b.action("triv-Z2-Z2").unwrap().is_trivial());
        assert_eq!(b.action("inv-Z2-Z3").unwrap().act(1, 1), 2);
        assert!(b.action("conj-Z2-Z3").is_err());
        assert_eq!(b.group("S3").unwrap().order(), 6);
    }
}
