//! Canonical serialization: kernel values become [`Definition`]s, which are
//! rendered either in the text format or as JSON.

use std::collections::HashSet;
use std::fmt::Write;
use std::sync::Arc;

use serde::Serialize;

use super::parse::{is_bare, Document, Item};
use crate::fincat::{same_cat, FinCategory, Functor, MorId, NatTransf};
use crate::fractions::{CellDiagram, Fraction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorDef {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// One declaration of the text format, with every reference by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Definition {
    Category {
        name: String,
        objects: Vec<String>,
        morphisms: Vec<MorDef>,
        /// `[g, f, h]` for `g.f = h`, over non-identity `g` and `f`.
        composites: Vec<[String; 3]>,
    },
    Functor {
        name: String,
        dom: String,
        cod: String,
        objects: Vec<[String; 2]>,
        morphisms: Vec<[String; 2]>,
    },
    Nat {
        name: String,
        src: String,
        tgt: String,
        components: Vec<[String; 2]>,
    },
    Fraction {
        name: String,
        src: String,
        tgt: String,
        apex: String,
        w: String,
        f: String,
    },
    Cell {
        name: String,
        src: String,
        tgt: String,
        apex: String,
        v1: String,
        v2: String,
        alpha: String,
        beta: String,
    },
}

/// How a morphism is referred to: identities by their implicit name.
pub(crate) fn mor_ref(c: &FinCategory, m: MorId) -> String {
    if c.is_identity_mor(m) {
        format!("id_{}", c.obj_name(c.src(m)))
    } else {
        c.mor_name(m).to_string()
    }
}

fn quote(s: &str) -> String {
    if is_bare(s) {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Assigns names to values, reusing those of a base document and emitting
/// a definition for everything else, dependencies first.
pub struct Emitter<'d> {
    base: &'d Document,
    cats: Vec<(Arc<FinCategory>, String)>,
    functors: Vec<(Functor, String)>,
    nats: Vec<(NatTransf, String)>,
    fractions: Vec<(Fraction, String)>,
    used: HashSet<String>,
    pub defs: Vec<Definition>,
}

impl<'d> Emitter<'d> {
    pub fn new(base: &'d Document) -> Self {
        let used = base.decls.iter().map(|d| d.name.clone()).collect();
        Emitter {
            base,
            cats: Vec::new(),
            functors: Vec::new(),
            nats: Vec::new(),
            fractions: Vec::new(),
            used,
            defs: Vec::new(),
        }
    }

    fn fresh(&mut self, hint: &str) -> String {
        let mut name = hint.to_string();
        let mut i = 2;
        while self.used.contains(&name) {
            name = format!("{hint}{i}");
            i += 1;
        }
        self.used.insert(name.clone());
        name
    }

    fn in_base(&self, pred: impl Fn(&Item) -> bool) -> Option<String> {
        self.base.decls.iter().find(|d| pred(&d.item)).map(|d| d.name.clone())
    }

    pub fn category(&mut self, c: &Arc<FinCategory>, hint: &str) -> String {
        if let Some(n) = self.in_base(|i| matches!(i, Item::Category(x) if same_cat(x, c))) {
            return n;
        }
        if let Some((_, n)) = self.cats.iter().find(|(x, _)| same_cat(x, c)) {
            return n.clone();
        }
        let name = self.fresh(hint);
        self.cats.push((c.clone(), name.clone()));
        let mut composites = Vec::new();
        for f in 0..c.num_morphisms() {
            if c.is_identity_mor(f) {
                continue;
            }
            for &g in c.outgoing(c.tgt(f)) {
                if !c.is_identity_mor(g) {
                    composites.push([mor_ref(c, g), mor_ref(c, f), mor_ref(c, c.compose(g, f))]);
                }
            }
        }
        self.defs.push(Definition::Category {
            name: name.clone(),
            objects: c.object_names().to_vec(),
            morphisms: (0..c.num_morphisms())
                .filter(|&m| !c.is_identity_mor(m))
                .map(|m| MorDef {
                    name: c.mor_name(m).to_string(),
                    src: c.obj_name(c.src(m)).to_string(),
                    tgt: c.obj_name(c.tgt(m)).to_string(),
                })
                .collect(),
            composites,
        });
        name
    }

    pub fn functor(&mut self, f: &Functor, hint: &str) -> String {
        if let Some(n) = self.in_base(|i| matches!(i, Item::Functor(x) if x == f)) {
            return n;
        }
        if let Some((_, n)) = self.functors.iter().find(|(x, _)| x == f) {
            return n.clone();
        }
        let dom = self.category(f.dom(), &format!("{hint}_dom"));
        let cod = self.category(f.cod(), &format!("{hint}_cod"));
        let name = self.fresh(hint);
        self.functors.push((f.clone(), name.clone()));
        let (d, c) = (f.dom(), f.cod());
        self.defs.push(Definition::Functor {
            name: name.clone(),
            dom,
            cod,
            objects: d.objects().map(|x| [d.obj_name(x).to_string(), c.obj_name(f.obj(x)).to_string()]).collect(),
            morphisms: (0..d.num_morphisms())
                .filter(|&m| !d.is_identity_mor(m))
                .map(|m| [d.mor_name(m).to_string(), mor_ref(c, f.mor(m))])
                .collect(),
        });
        name
    }

    pub fn nat(&mut self, t: &NatTransf, hint: &str) -> String {
        if let Some(n) = self.in_base(|i| matches!(i, Item::Nat(x) if x == t)) {
            return n;
        }
        if let Some((_, n)) = self.nats.iter().find(|(x, _)| x == t) {
            return n.clone();
        }
        let src = self.functor(t.src_f(), &format!("{hint}_src"));
        let tgt = self.functor(t.tgt_f(), &format!("{hint}_tgt"));
        let name = self.fresh(hint);
        self.nats.push((t.clone(), name.clone()));
        let (d, c) = (t.dom(), t.cod());
        self.defs.push(Definition::Nat {
            name: name.clone(),
            src,
            tgt,
            components: d.objects().map(|x| [d.obj_name(x).to_string(), mor_ref(c, t.component(x))]).collect(),
        });
        name
    }

    pub fn fraction(&mut self, f: &Fraction, hint: &str) -> String {
        if let Some(n) = self.in_base(|i| matches!(i, Item::Fraction(x) if x == f)) {
            return n;
        }
        if let Some((_, n)) = self.fractions.iter().find(|(x, _)| x == f) {
            return n.clone();
        }
        self.result_fraction(f, hint)
    }

    /// Declares `f` under a fresh name even when an equal fraction is known.
    pub fn result_fraction(&mut self, f: &Fraction, hint: &str) -> String {
        let src = self.category(f.src(), &format!("{hint}_src"));
        let tgt = self.category(f.tgt(), &format!("{hint}_tgt"));
        let apex = self.category(f.apex(), &format!("{hint}_apex"));
        let w = self.functor(f.w(), &format!("{hint}_w"));
        let ff = self.functor(f.f(), &format!("{hint}_f"));
        let name = self.fresh(hint);
        self.fractions.push((f.clone(), name.clone()));
        self.defs.push(Definition::Fraction { name: name.clone(), src, tgt, apex, w, f: ff });
        name
    }

    pub fn cell(&mut self, d: &CellDiagram, hint: &str) -> String {
        if let Some(n) = self.in_base(|i| matches!(i, Item::Cell(x) if **x == *d)) {
            return n;
        }
        self.result_cell(d, hint)
    }

    /// Declares `d` under a fresh name even when an equal cell is known.
    pub fn result_cell(&mut self, d: &CellDiagram, hint: &str) -> String {
        let src = self.fraction(&d.src_fr, &format!("{hint}_src"));
        let tgt = self.fraction(&d.tgt_fr, &format!("{hint}_tgt"));
        let apex = self.category(d.apex3(), &format!("{hint}_apex"));
        let v1 = self.functor(&d.v1, &format!("{hint}_v1"));
        let v2 = self.functor(&d.v2, &format!("{hint}_v2"));
        let alpha = self.nat(&d.alpha, &format!("{hint}_alpha"));
        let beta = self.nat(&d.beta, &format!("{hint}_beta"));
        let name = self.fresh(hint);
        self.defs.push(Definition::Cell { name: name.clone(), src, tgt, apex, v1, v2, alpha, beta });
        name
    }
}

/// The text form of one definition.
pub fn render(def: &Definition) -> String {
    let mut s = String::new();
    match def {
        Definition::Category { name, objects, morphisms, composites } => {
            writeln!(s, "category {} {{", quote(name)).unwrap();
            let objs: Vec<String> = objects.iter().map(|o| quote(o)).collect();
            writeln!(s, "  objects {};", objs.join(" ")).unwrap();
            for m in morphisms {
                writeln!(s, "  mor {}: {} -> {};", quote(&m.name), quote(&m.src), quote(&m.tgt)).unwrap();
            }
            for [g, f, h] in composites {
                writeln!(s, "  comp {}.{} = {};", quote(g), quote(f), quote(h)).unwrap();
            }
            s.push_str("}\n");
        }
        Definition::Functor { name, dom, cod, objects, morphisms } => {
            writeln!(s, "functor {}: {} -> {} {{", quote(name), quote(dom), quote(cod)).unwrap();
            for [x, y] in objects.iter().chain(morphisms) {
                writeln!(s, "  {} |-> {};", quote(x), quote(y)).unwrap();
            }
            s.push_str("}\n");
        }
        Definition::Nat { name, src, tgt, components } => {
            writeln!(s, "nat {}: {} => {} {{", quote(name), quote(src), quote(tgt)).unwrap();
            for [x, m] in components {
                writeln!(s, "  {}: {};", quote(x), quote(m)).unwrap();
            }
            s.push_str("}\n");
        }
        Definition::Fraction { name, src, tgt, apex, w, f } => {
            writeln!(
                s,
                "fraction {}: {} -/-> {} {{ apex {}; w = {}; f = {}; }}",
                quote(name),
                quote(src),
                quote(tgt),
                quote(apex),
                quote(w),
                quote(f)
            )
            .unwrap();
        }
        Definition::Cell { name, src, tgt, apex, v1, v2, alpha, beta } => {
            writeln!(
                s,
                "cell {}: {} => {} {{ apex {}; v1 = {}; v2 = {}; alpha = {}; beta = {}; }}",
                quote(name),
                quote(src),
                quote(tgt),
                quote(apex),
                quote(v1),
                quote(v2),
                quote(alpha),
                quote(beta)
            )
            .unwrap();
        }
    }
    s
}

pub fn render_all(defs: &[Definition]) -> String {
    defs.iter().map(render).collect()
}

/// Every declaration of `doc`, in order, under its own name.
pub fn document_definitions(doc: &Document) -> Vec<Definition> {
    let empty = Document::default();
    let mut e = Emitter::new(&empty);
    for d in &doc.decls {
        e.used.remove(&d.name);
        let name = match &d.item {
            Item::Category(c) => e.category(c, &d.name),
            Item::Functor(f) => e.functor(f, &d.name),
            Item::Nat(t) => e.nat(t, &d.name),
            Item::Fraction(f) => e.fraction(f, &d.name),
            Item::Cell(c) => e.cell(c, &d.name),
        };
        // A value equal to an earlier one is still its own declaration.
        if name != d.name {
            e.defs.push(alias(&e.defs, &d.item, &name, &d.name));
            e.used.insert(d.name.clone());
        }
    }
    e.defs
}

fn alias(defs: &[Definition], item: &Item, existing: &str, name: &str) -> Definition {
    let mut def = defs
        .iter()
        .find(|d| def_name(d) == existing && def_kind(d) == item.kind())
        .cloned()
        .expect("the earlier declaration was emitted");
    set_name(&mut def, name);
    def
}

pub fn def_name(d: &Definition) -> &str {
    match d {
        Definition::Category { name, .. }
        | Definition::Functor { name, .. }
        | Definition::Nat { name, .. }
        | Definition::Fraction { name, .. }
        | Definition::Cell { name, .. } => name,
    }
}

fn def_kind(d: &Definition) -> &'static str {
    match d {
        Definition::Category { .. } => "category",
        Definition::Functor { .. } => "functor",
        Definition::Nat { .. } => "nat",
        Definition::Fraction { .. } => "fraction",
        Definition::Cell { .. } => "cell",
    }
}

fn set_name(d: &mut Definition, new: &str) {
    match d {
        Definition::Category { name, .. }
        | Definition::Functor { name, .. }
        | Definition::Nat { name, .. }
        | Definition::Fraction { name, .. }
        | Definition::Cell { name, .. } => *name = new.to_string(),
    }
}

/// The text form of a whole document.
pub fn serialize(doc: &Document) -> String {
    render_all(&document_definitions(doc))
}
