//! Derivations of admissibility from the closure rules.

use std::fmt;

use pilly_core::fresh::{fresh, surface};
use pilly_core::{
    print_relation, Binder, Flavor, Prop, Quantifier, RelContext, Relation, Sort, Syntax, Term, Type, Var,
};
use pilly_typecheck::infer;

use crate::construct::{type_rel, TypedRel};
use crate::normal::normalize_relation;
use crate::wf::{check_prop, relation_type};
use crate::RelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// `r == (x, y). r(x, y)`.
    Eta,
    /// Application of a comprehension reduces to its body.
    Beta,
    /// The interpretation of a type unfolds one level.
    Unfold,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdmRule {
    AdmVar,
    Eq,
    Reindex,
    And,
    Converse,
    Top,
    Implies,
    ForallType,
    ForallTerm,
    ForallAdmRel,
    ForallRel,
    Equiv(Equivalence),
    TypeRel,
}

impl AdmRule {
    pub fn name(self) -> &'static str {
        match self {
            AdmRule::AdmVar => "adm-var",
            AdmRule::Eq => "eq",
            AdmRule::Reindex => "reindex",
            AdmRule::And => "and",
            AdmRule::Converse => "converse",
            AdmRule::Top => "top",
            AdmRule::Implies => "implies",
            AdmRule::ForallType => "forall-type",
            AdmRule::ForallTerm => "forall-term",
            AdmRule::ForallAdmRel => "forall-admrel",
            AdmRule::ForallRel => "forall-rel",
            AdmRule::Equiv(Equivalence::Eta) => "equiv-eta",
            AdmRule::Equiv(Equivalence::Beta) => "equiv-beta",
            AdmRule::Equiv(Equivalence::Unfold) => "equiv-unfold",
            AdmRule::TypeRel => "type-rel",
        }
    }
}

/// A derivation tree; `conclusion` is the printed relation shown admissible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: AdmRule,
    pub conclusion: String,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    fn node(rule: AdmRule, conclusion: &Relation, premises: Vec<Derivation>) -> Self {
        Derivation {
            rule,
            conclusion: print_relation(conclusion),
            premises,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn rules(&self) -> Vec<AdmRule> {
        let mut out = vec![self.rule];
        for p in &self.premises {
            out.extend(p.rules());
        }
        out
    }

    fn render(&self, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:indent$}[{}] {} adm", "", self.rule.name(), self.conclusion, indent = 2 * depth)?;
        self.premises.iter().try_for_each(|p| p.render(depth + 1, f))
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(0, f)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AdmError {
    #[error("not derivable: {relation}: {reason}")]
    NotDerivable { relation: String, reason: String },
    #[error(transparent)]
    IllFormed(#[from] RelError),
}

fn fail<T>(r: &Relation, reason: impl Into<String>) -> Result<T, AdmError> {
    Err(AdmError::NotDerivable {
        relation: print_relation(r),
        reason: reason.into(),
    })
}

/// Searches for a derivation of `ctx |- r AdmRel`.
pub fn derive_admissible(ctx: &RelContext, r: &Relation) -> Result<Derivation, AdmError> {
    relation_type(ctx, r)?;
    let normal = normalize_relation(r);
    let d = derive(ctx, &normal)?;
    if normal != *r {
        return Ok(Derivation::node(AdmRule::Equiv(Equivalence::Beta), r, vec![d]));
    }
    Ok(d)
}

pub fn is_admissible(ctx: &RelContext, r: &Relation) -> bool {
    derive_admissible(ctx, r).is_ok()
}

fn derive(ctx: &RelContext, r: &Relation) -> Result<Derivation, AdmError> {
    match r {
        Relation::Var(Var::Free(n)) => match ctx.lookup_rel(n) {
            Some(e) if e.flavor == Flavor::AdmRel => Ok(Derivation::node(AdmRule::AdmVar, r, vec![])),
            Some(_) => fail(r, format!("`{}` is only assumed to be a relation", surface(n))),
            None => Err(RelError::UnboundRelation(surface(n).to_string()).into()),
        },
        Relation::Var(Var::Bound(i)) => Err(RelError::Ill(format!("dangling relation index {i}")).into()),
        Relation::TypeRel { params, body, args } => {
            let direct: Result<Vec<_>, _> = args.iter().map(|a| derive(ctx, a)).collect();
            if let Ok(premises) = direct {
                return Ok(Derivation::node(AdmRule::TypeRel, r, premises));
            }
            let mut typed = Vec::new();
            for a in args {
                let (dom, cod) = relation_type(ctx, a)?;
                typed.push(TypedRel::new(a.clone(), dom, cod));
            }
            let names: Vec<String> = params.iter().map(|h| fresh(h.as_str())).collect();
            let unfolded = type_rel(&names, &body.open(Sort::Ty, &names), &typed)?;
            let inner = derive(ctx, &unfolded.rel)?;
            Ok(Derivation::node(AdmRule::Equiv(Equivalence::Unfold), r, vec![inner]))
        }
        Relation::Compr {
            left,
            dom,
            right,
            cod,
            body,
        } => {
            let side = Side {
                x: fresh(left.as_str()),
                dom: dom.clone(),
                y: fresh(right.as_str()),
                cod: cod.clone(),
            };
            let opened = body.open(Sort::Tm, &[side.x.clone(), side.y.clone()]);
            side.derive_body(ctx, &opened)
        }
    }
}

/// The two related variables of a comprehension, opened as names.
struct Side {
    x: String,
    dom: Type,
    y: String,
    cod: Type,
}

impl Side {
    fn mentions(&self, p: &Prop) -> bool {
        p.mentions_name(Sort::Tm, &self.x) || p.mentions_name(Sort::Tm, &self.y)
    }

    fn rebuild(&self, body: &Prop) -> Relation {
        pilly_core::build::compr(&self.x, self.dom.clone(), &self.y, self.cod.clone(), body.clone())
    }

    /// `fn v. t` must be a linear map from the related variable's type into
    /// `target`, mentioning nothing else the comprehension binds.
    fn linear_map(&self, ctx: &RelContext, v: &str, ty: &Type, other: &str, t: &Term, target: &Type) -> Result<(), String> {
        if t.mentions_name(Sort::Tm, other) {
            return Err(format!("`{}` mentions both related variables", pilly_core::print_term(t)));
        }
        let tctx = ctx.terms.promote_linear().with_linear(v, ty.clone());
        match infer(&tctx, t) {
            Ok(typing) if typing.ty == *target => Ok(()),
            Ok(typing) => Err(format!(
                "`{}` has type {}, expected {}",
                pilly_core::print_term(t),
                pilly_core::print_type(&typing.ty),
                pilly_core::print_type(target)
            )),
            Err(e) => Err(format!("`{}` is not linear in `{}`: {e}", pilly_core::print_term(t), surface(v))),
        }
    }

    fn derive_body(&self, ctx: &RelContext, body: &Prop) -> Result<Derivation, AdmError> {
        let here = self.rebuild(body);
        let node = |rule, premises| Ok(Derivation::node(rule, &here, premises));
        let is = |t: &Term, v: &str| *t == Term::var(v);
        match body {
            Prop::Top => node(AdmRule::Top, vec![]),
            Prop::And(a, b) => {
                let left = self.derive_body(ctx, a)?;
                let right = self.derive_body(ctx, b)?;
                node(AdmRule::And, vec![left, right])
            }
            Prop::Implies(hyp, concl) => {
                if self.mentions(hyp) {
                    return fail(&here, "the hypothesis of an implication mentions the related variables");
                }
                check_prop(ctx, hyp)?;
                node(AdmRule::Implies, vec![self.derive_body(ctx, concl)?])
            }
            Prop::Quant(Quantifier::Forall, binder, inner) => {
                let (rule, name, ext) = match binder {
                    Binder::Ty(h) => {
                        let a = fresh(h.as_str());
                        (AdmRule::ForallType, a.clone(), ctx.clone().with_ty_var(a))
                    }
                    Binder::Tm(h, ty) => {
                        let z = fresh(h.as_str());
                        (AdmRule::ForallTerm, z.clone(), ctx.clone().with_term(z, ty.clone()))
                    }
                    Binder::Rel { hint, dom, cod, flavor } => {
                        let s = fresh(hint.as_str());
                        let rule = match flavor {
                            Flavor::AdmRel => AdmRule::ForallAdmRel,
                            Flavor::Rel => AdmRule::ForallRel,
                        };
                        (rule, s.clone(), ctx.clone().with_rel(s, dom.clone(), cod.clone(), *flavor))
                    }
                };
                let sort = match binder {
                    Binder::Ty(_) => Sort::Ty,
                    Binder::Tm(..) => Sort::Tm,
                    Binder::Rel { .. } => Sort::Rel,
                };
                let premise = self.derive_body(&ext, &inner.open(sort, &[name]))?;
                node(rule, vec![premise])
            }
            Prop::RelApp(rel, t, u) => {
                if rel.mentions_name(Sort::Tm, &self.x) || rel.mentions_name(Sort::Tm, &self.y) {
                    return fail(&here, "the applied relation mentions the related variables");
                }
                if is(t, &self.x) && is(u, &self.y) {
                    return node(AdmRule::Equiv(Equivalence::Eta), vec![derive(ctx, rel)?]);
                }
                if is(t, &self.y) && is(u, &self.x) {
                    return node(AdmRule::Converse, vec![derive(ctx, rel)?]);
                }
                let (rdom, rcod) = relation_type(ctx, rel)?;
                self.reindexing(ctx, &here, t, u, &rdom, &rcod)?;
                node(AdmRule::Reindex, vec![derive(ctx, rel)?])
            }
            Prop::Eq(ty, t, u) => {
                if is(t, &self.x) && is(u, &self.y) && self.dom == *ty && self.cod == *ty {
                    return node(AdmRule::Eq, vec![]);
                }
                self.reindexing(ctx, &here, t, u, ty, ty)?;
                let eq = crate::construct::eq(ty).rel;
                let base = Derivation::node(AdmRule::Eq, &eq, vec![]);
                let reindexed = Derivation::node(AdmRule::Reindex, &here, vec![base]);
                node(AdmRule::Equiv(Equivalence::Beta), vec![reindexed])
            }
            Prop::Quant(Quantifier::Exists, ..) => fail(&here, "existential quantification is not a closure rule"),
            Prop::Or(..) => fail(&here, "disjunction is not a closure rule"),
            Prop::Bottom => fail(&here, "falsity relates nothing, which is not admissible"),
        }
    }

    fn reindexing(&self, ctx: &RelContext, here: &Relation, t: &Term, u: &Term, dom: &Type, cod: &Type) -> Result<(), AdmError> {
        self.linear_map(ctx, &self.x, &self.dom, &self.y, t, dom)
            .and_then(|_| self.linear_map(ctx, &self.y, &self.cod, &self.x, u, cod))
            .or_else(|reason| fail(here, reason))
    }
}
