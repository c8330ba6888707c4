//! The line-oriented `.system` file format.
//!
//! ```text
//! system firefly
//! lattice chain2
//! states s1 s2 s3
//! prop 0 = 0 0 0
//! prop p = 1 0 0
//! prop 1 = 1 1 1
//! rel s1 s2
//! ```
//!
//! A custom lattice is given inline by `elements`, `bottom`, `top` and
//! `cover lo hi` lines following `lattice <name>`. `posetB` and `posetA`
//! lines select rows (by name) for `B` and `A`; `B` defaults to all rows and
//! `A` to `B`. `hasse lo hi` lines give the cover pairs of `B` and are
//! checked against the table.

use std::fmt::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::{Relation, TransitionFrame};
use crate::order::{is_order_reflecting_embedding, FinitePoset, Lattice};
use crate::proposition::{Proposition, PropositionPoset};

/// A parsed and validated system: lattice, states, propositions and relation.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemDescription {
    pub name: String,
    /// Every declared row, in declaration order.
    pub pool: Arc<PropositionPoset>,
    pub b: Arc<PropositionPoset>,
    pub a: Arc<PropositionPoset>,
    pub b_names: Option<Vec<String>>,
    pub a_names: Option<Vec<String>>,
    pub hasse: Vec<(String, String)>,
    pub frame: TransitionFrame,
}

impl SystemDescription {
    /// A system with `A = B = pool`.
    pub fn new(name: &str, pool: Arc<PropositionPoset>, frame: TransitionFrame) -> Result<Self> {
        if pool.states() != frame.states() {
            return Err(Error::StateMismatch);
        }
        Ok(SystemDescription {
            name: name.to_string(),
            b: pool.clone(),
            a: pool.clone(),
            pool,
            b_names: None,
            a_names: None,
            hasse: Vec::new(),
            frame,
        })
    }

    pub fn with_b<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        self.b = Arc::new(self.pool.select(&names)?);
        if self.a_names.is_none() {
            self.a = self.b.clone();
        }
        self.b_names = Some(names);
        self.check_hasse()?;
        Ok(self)
    }

    pub fn with_a<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        self.a = Arc::new(self.pool.select(&names)?);
        self.a_names = Some(names);
        Ok(self)
    }

    /// Attaches cover pairs of `B` and checks they generate the table order.
    pub fn with_hasse(mut self, covers: Vec<(String, String)>) -> Result<Self> {
        self.hasse = covers;
        self.check_hasse()?;
        Ok(self)
    }

    fn check_hasse(&self) -> Result<()> {
        if self.hasse.is_empty() {
            return Ok(());
        }
        let names: Vec<&str> = self.b.rows().iter().map(|r| r.name.as_str()).collect();
        let covers: Vec<(&str, &str)> = self.hasse.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let order = FinitePoset::from_covers(&names, &covers).map_err(|e| match e {
            Error::UnknownElement(x) => Error::UnknownProposition(x),
            e => e,
        })?;
        let identity: Vec<usize> = (0..names.len()).collect();
        let report = is_order_reflecting_embedding(&order, &self.b, &identity)?;
        match report.witness {
            None => Ok(()),
            Some((x, y)) => Err(Error::HasseMismatch(names[x].to_string(), names[y].to_string())),
        }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        self.pool.lattice()
    }

    pub fn states(&self) -> &Arc<[String]> {
        self.frame.states()
    }

    pub fn relation(&self) -> &Relation {
        self.frame.relation()
    }

    /// The same system with a different relation.
    pub fn with_relation(&self, relation: Relation) -> Result<Self> {
        Ok(SystemDescription {
            frame: TransitionFrame::with_relation(self.states().clone(), relation)?,
            ..self.clone()
        })
    }

    /// Canonical text: fixed section order, one pair per `rel` line in
    /// row-major order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "system {}", self.name);
        out.push_str(&render_lattice(self.lattice()));
        let _ = writeln!(out, "states {}", self.states().join(" "));
        for row in self.pool.rows() {
            let _ = writeln!(out, "prop {} = {}", row.name, self.pool.format_vector(&row.values));
        }
        if let Some(names) = &self.b_names {
            let _ = writeln!(out, "posetB {}", names.join(" "));
        }
        if let Some(names) = &self.a_names {
            let _ = writeln!(out, "posetA {}", names.join(" "));
        }
        for (lo, hi) in &self.hasse {
            let _ = writeln!(out, "hasse {lo} {hi}");
        }
        let states = self.states();
        for (s, t) in self.relation().pairs() {
            let _ = writeln!(out, "rel {} {}", states[s], states[t]);
        }
        out
    }
}

fn render_lattice(l: &Lattice) -> String {
    if Lattice::builtin(l.name()).as_ref() == Some(l) {
        return format!("lattice {}\n", l.name());
    }
    let mut out = format!("lattice {}\n", l.name());
    let _ = writeln!(out, "elements {}", l.element_names().join(" "));
    let _ = writeln!(out, "bottom {}", l.element_name(l.bottom()));
    let _ = writeln!(out, "top {}", l.element_name(l.top()));
    for (lo, hi) in l.covers() {
        let _ = writeln!(out, "cover {} {}", l.element_name(lo), l.element_name(hi));
    }
    out
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| Error::AtLine {
        line,
        source: Box::new(e),
    }
}

#[derive(Default)]
struct LatticeBlock {
    line: usize,
    name: String,
    elements: Option<Vec<String>>,
    bottom: Option<String>,
    top: Option<String>,
    covers: Vec<(String, String)>,
}

impl LatticeBlock {
    fn build(self) -> Result<Lattice> {
        let line = self.line;
        let Some(elements) = self.elements else {
            if self.bottom.is_some() || self.top.is_some() || !self.covers.is_empty() {
                return Err(syntax(line, "custom lattice needs an elements line"));
            }
            return Lattice::builtin(&self.name)
                .ok_or_else(|| syntax(line, format!("unknown builtin lattice {}", self.name)));
        };
        let bottom = self
            .bottom
            .ok_or_else(|| syntax(line, "custom lattice needs a bottom line"))?;
        let top = self
            .top
            .ok_or_else(|| syntax(line, "custom lattice needs a top line"))?;
        Lattice::from_covers(&self.name, &elements, &bottom, &top, &self.covers).map_err(at(line))
    }
}

/// Parses and validates a system file.
pub fn parse_system(text: &str) -> Result<SystemDescription> {
    let mut name: Option<String> = None;
    let mut block: Option<LatticeBlock> = None;
    let mut lattice: Option<Arc<Lattice>> = None;
    let mut states: Option<Arc<[String]>> = None;
    let mut props: Vec<Proposition> = Vec::new();
    let mut rels: Vec<(usize, String, String)> = Vec::new();
    let mut b_names: Option<Vec<String>> = None;
    let mut a_names: Option<Vec<String>> = None;
    let mut hasse: Vec<(String, String)> = Vec::new();

    // The lattice block ends at the first line that is not part of it.
    fn finish(block: &mut Option<LatticeBlock>, lattice: &mut Option<Arc<Lattice>>) -> Result<()> {
        if let Some(b) = block.take() {
            *lattice = Some(Arc::new(b.build()?));
        }
        Ok(())
    }

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let keyword = words.next().expect("non-empty line");
        let args: Vec<&str> = words.collect();
        let want = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(syntax(
                    line,
                    format!("{keyword} takes {n} argument(s), got {}", args.len()),
                ))
            }
        };
        match keyword {
            "elements" | "bottom" | "top" | "cover" => {
                let Some(b) = block.as_mut() else {
                    return Err(syntax(line, format!("{keyword} outside a lattice block")));
                };
                match keyword {
                    "elements" => {
                        if args.is_empty() || b.elements.is_some() {
                            return Err(syntax(line, "expected one non-empty elements line"));
                        }
                        b.elements = Some(args.iter().map(|s| s.to_string()).collect());
                    }
                    "bottom" => {
                        want(1)?;
                        b.bottom = Some(args[0].to_string());
                    }
                    "top" => {
                        want(1)?;
                        b.top = Some(args[0].to_string());
                    }
                    _ => {
                        want(2)?;
                        b.covers.push((args[0].to_string(), args[1].to_string()));
                    }
                }
                continue;
            }
            _ => finish(&mut block, &mut lattice)?,
        }
        match keyword {
            "system" => {
                want(1)?;
                if name.replace(args[0].to_string()).is_some() {
                    return Err(syntax(line, "duplicate system line"));
                }
            }
            "lattice" => {
                want(1)?;
                if lattice.is_some() {
                    return Err(syntax(line, "duplicate lattice line"));
                }
                block = Some(LatticeBlock {
                    line,
                    name: args[0].to_string(),
                    ..Default::default()
                });
            }
            "states" => {
                if states.is_some() {
                    return Err(syntax(line, "duplicate states line"));
                }
                let list: Arc<[String]> = args.iter().map(|s| s.to_string()).collect();
                crate::frame::check_states(&list).map_err(at(line))?;
                states = Some(list);
            }
            "prop" => {
                let (Some(l), Some(st)) = (&lattice, &states) else {
                    return Err(syntax(line, "prop before lattice and states"));
                };
                if args.len() < 2 || args[1] != "=" {
                    return Err(syntax(line, "expected prop <name> = <values>"));
                }
                let values = args[2..]
                    .iter()
                    .map(|v| l.element(v))
                    .collect::<Result<Vec<_>>>()
                    .map_err(at(line))?;
                if values.len() != st.len() {
                    return Err(at(line)(Error::VectorLength {
                        name: args[0].to_string(),
                        got: values.len(),
                        expected: st.len(),
                    }));
                }
                props.push(Proposition::new(args[0], values));
            }
            "rel" => {
                want(2)?;
                rels.push((line, args[0].to_string(), args[1].to_string()));
            }
            "posetA" | "posetB" => {
                if args.is_empty() {
                    return Err(syntax(line, format!("{keyword} needs row names")));
                }
                let target = if keyword == "posetA" {
                    &mut a_names
                } else {
                    &mut b_names
                };
                target
                    .get_or_insert_with(Vec::new)
                    .extend(args.iter().map(|s| s.to_string()));
            }
            "hasse" => {
                want(2)?;
                hasse.push((args[0].to_string(), args[1].to_string()));
            }
            other => return Err(syntax(line, format!("unknown keyword {other}"))),
        }
    }
    finish(&mut block, &mut lattice)?;

    let lattice = lattice.ok_or_else(|| syntax(0, "missing lattice line"))?;
    let states = states.ok_or_else(|| syntax(0, "missing states line"))?;
    let mut relation = Relation::empty(states.len());
    for (line, s, t) in &rels {
        let si = crate::frame::state_index(&states, s).map_err(at(*line))?;
        let ti = crate::frame::state_index(&states, t).map_err(at(*line))?;
        if !relation.insert(si, ti) {
            return Err(syntax(*line, format!("duplicate pair ({s},{t})")));
        }
    }
    let pool = Arc::new(PropositionPoset::new(lattice, states.clone(), props)?);
    let frame = TransitionFrame::with_relation(states, relation)?;
    let mut sys = SystemDescription::new(name.as_deref().unwrap_or("unnamed"), pool, frame)?;
    if let Some(names) = b_names {
        sys = sys.with_b(&names)?;
    }
    if let Some(names) = a_names {
        sys = sys.with_a(&names)?;
    }
    sys.with_hasse(hasse)
}

pub fn read_system(path: &std::path::Path) -> Result<SystemDescription> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_system(&text)
}
