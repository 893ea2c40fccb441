use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::diffpoly::{DiffPoly, MultiIndex, Name, Sym};

use super::JetError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionDecl {
    pub name: Name,
    /// Positions into the chart's coordinate list, in multi-index order.
    pub deps: Vec<usize>,
}

/// A jet-space context: base coordinates, dependent variables, formal
/// functions with their dependency sets, and parameter symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    name: String,
    coords: Vec<Name>,
    dependents: Vec<Name>,
    functions: Vec<FunctionDecl>,
    params: Vec<Name>,
}

impl Chart {
    pub fn builder(name: &str, coords: &[&str]) -> ChartBuilder {
        ChartBuilder {
            name: name.to_string(),
            coords: coords.iter().map(|c| Name::from(*c)).collect(),
            dependents: Vec::new(),
            functions: Vec::new(),
            params: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coords(&self) -> &[Name] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dependents(&self) -> &[Name] {
        &self.dependents
    }

    pub fn functions(&self) -> &[FunctionDecl] {
        &self.functions
    }

    pub fn params(&self) -> &[Name] {
        &self.params
    }

    pub fn coord_index(&self, name: &str) -> Result<usize, JetError> {
        self.coords
            .iter()
            .position(|c| &**c == name)
            .ok_or_else(|| JetError::UnknownCoordinate(name.to_string()))
    }

    pub fn function(&self, name: &str) -> Option<&FunctionDecl> {
        self.functions.iter().find(|f| &*f.name == name)
    }

    /// The single dependent variable; errors when there is none or several.
    pub fn sole_dependent(&self) -> Result<&Name, JetError> {
        match self.dependents.as_slice() {
            [u] => Ok(u),
            _ => Err(JetError::NotSingleDependent(self.dependents.len())),
        }
    }

    pub fn coord(&self, name: &str) -> Result<Sym, JetError> {
        self.coord_index(name).map(|i| Sym::Coord(self.coords[i].clone()))
    }

    pub fn x(&self, name: &str) -> DiffPoly {
        DiffPoly::var(self.coord(name).expect("coordinate of this chart"))
    }

    pub fn param(&self, name: &str) -> Result<Sym, JetError> {
        self.params
            .iter()
            .find(|p| &***p == name)
            .map(|p| Sym::Param(p.clone()))
            .ok_or_else(|| JetError::UnknownSymbol(name.to_string()))
    }

    pub fn p(&self, name: &str) -> DiffPoly {
        DiffPoly::var(self.param(name).expect("parameter of this chart"))
    }

    pub fn ujet(&self, dep: &str, index: &[u8]) -> Result<Sym, JetError> {
        let name = self
            .dependents
            .iter()
            .find(|d| &***d == dep)
            .ok_or_else(|| JetError::UnknownSymbol(dep.to_string()))?;
        if index.len() != self.dim() {
            return Err(JetError::Arity {
                symbol: dep.to_string(),
                expected: self.dim(),
                got: index.len(),
            });
        }
        Ok(Sym::UJet(name.clone(), index.iter().copied().collect()))
    }

    /// The jet of the sole dependent variable named by coordinate letters,
    /// e.g. `u("ty")` is `u_ty`. Empty string gives `u` itself.
    pub fn u(&self, derivs: &str) -> DiffPoly {
        DiffPoly::var(self.u_sym(derivs))
    }

    pub fn u_sym(&self, derivs: &str) -> Sym {
        let dep = self.sole_dependent().expect("chart with one dependent");
        let mut idx: MultiIndex = std::iter::repeat_n(0, self.dim()).collect();
        // multi-letter coordinate names (x1, p2) are written space separated
        let parts: Vec<String> = if derivs.contains(' ') {
            derivs.split_whitespace().map(str::to_string).collect()
        } else {
            derivs.chars().map(String::from).collect()
        };
        for c in parts {
            let k = self.coord_index(&c).expect("coordinate of this chart");
            idx[k] += 1;
        }
        Sym::UJet(dep.clone(), idx)
    }

    pub fn fjet(&self, func: &str, index: &[u8]) -> Result<Sym, JetError> {
        let decl = self
            .function(func)
            .ok_or_else(|| JetError::UnknownSymbol(func.to_string()))?;
        if index.len() != decl.deps.len() {
            return Err(JetError::Arity {
                symbol: func.to_string(),
                expected: decl.deps.len(),
                got: index.len(),
            });
        }
        Ok(Sym::FJet(decl.name.clone(), index.iter().copied().collect()))
    }

    /// The formal function itself (its zero jet).
    pub fn f(&self, func: &str) -> DiffPoly {
        let n = self.function(func).expect("function of this chart").deps.len();
        DiffPoly::var(self.fjet(func, &vec![0; n]).expect("declared"))
    }

    /// Resolves a bare name: coordinate, parameter, or the zero jet of a
    /// dependent variable or formal function.
    pub fn resolve(&self, name: &str) -> Result<Sym, JetError> {
        if let Ok(c) = self.coord(name) {
            return Ok(c);
        }
        if let Ok(p) = self.param(name) {
            return Ok(p);
        }
        if self.dependents.iter().any(|d| &**d == name) {
            return self.ujet(name, &vec![0; self.dim()]);
        }
        if let Some(f) = self.function(name) {
            return self.fjet(name, &vec![0; f.deps.len()]);
        }
        Err(JetError::UnknownSymbol(name.to_string()))
    }

    /// Resolves an indexed name `name[i, j, ...]`.
    pub fn resolve_indexed(&self, name: &str, index: &[u8]) -> Result<Sym, JetError> {
        if self.dependents.iter().any(|d| &**d == name) {
            self.ujet(name, index)
        } else if self.function(name).is_some() {
            self.fjet(name, index)
        } else {
            Err(JetError::UnknownSymbol(name.to_string()))
        }
    }

    /// Whether `sym` is well formed for this chart.
    pub fn check_sym(&self, sym: &Sym) -> Result<(), JetError> {
        match sym {
            Sym::Coord(n) => self.coord(n).map(|_| ()),
            Sym::Param(n) => self.param(n).map(|_| ()),
            Sym::UJet(n, i) => self.ujet(n, i).map(|_| ()),
            Sym::FJet(n, i) => self.fjet(n, i).map(|_| ()),
        }
    }

    fn d_symbol(&self, s: &Sym, k: usize, total: bool) -> DiffPoly {
        match s {
            Sym::Coord(n) => {
                if *self.coords[k] == **n {
                    DiffPoly::one()
                } else {
                    DiffPoly::zero()
                }
            }
            Sym::Param(_) => DiffPoly::zero(),
            Sym::UJet(n, idx) => {
                if total {
                    let mut idx = idx.clone();
                    idx[k] += 1;
                    DiffPoly::var(Sym::UJet(n.clone(), idx))
                } else {
                    DiffPoly::zero()
                }
            }
            Sym::FJet(n, idx) => match self.function(n).and_then(|f| f.deps.iter().position(|&d| d == k)) {
                Some(slot) => {
                    let mut idx = idx.clone();
                    idx[slot] += 1;
                    DiffPoly::var(Sym::FJet(n.clone(), idx))
                }
                None => DiffPoly::zero(),
            },
        }
    }

    /// Partial derivative along a base coordinate. Formal-function jets are
    /// promoted, dependent-variable jets are independent coordinates.
    pub fn pdiff(&self, p: &DiffPoly, coord: &str) -> Result<DiffPoly, JetError> {
        let k = self.coord_index(coord)?;
        Ok(self.pdiff_at(p, k))
    }

    pub fn pdiff_at(&self, p: &DiffPoly, k: usize) -> DiffPoly {
        p.derivation(|s| self.d_symbol(s, k, false))
    }

    /// Total derivative `D_c = d/dc + sum u_{sigma + 1_c} d/du_sigma`.
    pub fn total_derivative(&self, p: &DiffPoly, coord: &str) -> Result<DiffPoly, JetError> {
        let k = self.coord_index(coord)?;
        Ok(self.total_derivative_at(p, k))
    }

    pub fn total_derivative_at(&self, p: &DiffPoly, k: usize) -> DiffPoly {
        p.derivation(|s| self.d_symbol(s, k, true))
    }

    /// Iterated partial derivative of a formal-function expression along the
    /// dependency coordinates of `func` (multi-index over those coordinates).
    pub fn pdiff_multi(&self, p: &DiffPoly, func: &str, index: &[u8]) -> Result<DiffPoly, JetError> {
        let decl = self
            .function(func)
            .ok_or_else(|| JetError::UnknownSymbol(func.to_string()))?;
        let mut out = p.clone();
        for (slot, &n) in index.iter().enumerate() {
            for _ in 0..n {
                out = self.pdiff_at(&out, decl.deps[slot]);
            }
        }
        Ok(out)
    }

    /// All multi-indexes over this chart's coordinates with total order `n`.
    pub fn multi_indexes(&self, n: usize) -> Vec<MultiIndex> {
        multi_indexes(self.dim(), n)
    }
}

/// Enumerates multi-indexes of length `dim` and total order `n`, in
/// descending lexicographic order.
pub fn multi_indexes(dim: usize, n: usize) -> Vec<MultiIndex> {
    fn go(dim: usize, left: usize, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if cur.len() + 1 == dim {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k as u8);
            go(dim, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if n == 0 {
            out.push(MultiIndex::new());
        }
        return out;
    }
    go(dim, n, &mut MultiIndex::new(), &mut out);
    out
}

pub struct ChartBuilder {
    name: String,
    coords: Vec<Name>,
    dependents: Vec<Name>,
    functions: Vec<FunctionDecl>,
    params: Vec<Name>,
}

impl ChartBuilder {
    pub fn dependent(mut self, name: &str) -> Self {
        self.dependents.push(name.into());
        self
    }

    pub fn function(mut self, name: &str, deps: &[&str]) -> Self {
        let deps = deps
            .iter()
            .map(|d| {
                self.coords
                    .iter()
                    .position(|c| &**c == *d)
                    .unwrap_or(usize::MAX)
            })
            .collect();
        self.functions.push(FunctionDecl {
            name: name.into(),
            deps,
        });
        self
    }

    pub fn param(mut self, name: &str) -> Self {
        self.params.push(name.into());
        self
    }

    pub fn build(self) -> Result<Chart, JetError> {
        let mut seen = std::collections::BTreeSet::new();
        let names = self
            .coords
            .iter()
            .chain(&self.dependents)
            .chain(self.functions.iter().map(|f| &f.name))
            .chain(&self.params);
        for n in names {
            if !seen.insert(n.clone()) {
                return Err(JetError::Declaration(format!("duplicate name {n}")));
            }
        }
        for f in &self.functions {
            if f.deps.contains(&usize::MAX) {
                return Err(JetError::Declaration(format!(
                    "function {} depends on an undeclared coordinate",
                    f.name
                )));
            }
            let mut sorted = f.deps.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != f.deps.len() {
                return Err(JetError::Declaration(format!("repeated dependency in {}", f.name)));
            }
        }
        Ok(Chart {
            name: self.name,
            coords: self.coords,
            dependents: self.dependents,
            functions: self.functions,
            params: self.params,
        })
    }
}

fn registry() -> &'static BTreeMap<&'static str, Arc<Chart>> {
    static REG: OnceLock<BTreeMap<&'static str, Arc<Chart>>> = OnceLock::new();
    REG.get_or_init(|| {
        let m = Chart::builder("M", &["t", "z"])
            .dependent("u")
            .function("A", &["t", "z"])
            .function("B", &["t", "z"])
            .function("C", &["t", "z"])
            .function("q", &["t", "z"])
            .build();
        let tm = Chart::builder("TM", &["t", "z", "x", "y"])
            .dependent("u")
            .function("A", &["t", "z"])
            .function("B", &["t", "z"])
            .function("C", &["t", "z"])
            .function("q", &["t", "z"])
            .param("c1")
            .param("c2")
            .param("c3")
            .param("c4")
            .build();
        let pbi = Chart::builder("PbI", &["t", "x", "y", "z"])
            .dependent("u")
            .function("A", &["t", "y"])
            .function("C", &["t", "y"])
            .function("B", &["x", "z"])
            .function("D", &["x", "z"])
            .build();
        let sixd = Chart::builder("SixD", &["x1", "p1", "x2", "p2", "x3", "p3"])
            .dependent("u")
            .function("A1", &["x1", "p1"])
            .function("B1", &["x1", "p1"])
            .function("A2", &["x2", "p2"])
            .function("B2", &["x2", "p2"])
            .function("A3", &["x3", "p3"])
            .function("B3", &["x3", "p3"])
            .build();
        [("M", m), ("TM", tm), ("PbI", pbi), ("SixD", sixd)]
            .into_iter()
            .map(|(k, c)| (k, Arc::new(c.expect("built-in chart"))))
            .collect()
    })
}

/// Built-in charts: `M` = (t,z), `TM` = (t,z,x,y), `PbI` = (t,x,y,z),
/// `SixD` = (x1,p1,x2,p2,x3,p3). Each has one dependent variable `u`.
pub fn chart(name: &str) -> Result<Arc<Chart>, JetError> {
    registry()
        .get(name)
        .cloned()
        .ok_or_else(|| JetError::UnknownChart(name.to_string()))
}

pub fn chart_names() -> impl Iterator<Item = &'static str> {
    registry().keys().copied()
}
