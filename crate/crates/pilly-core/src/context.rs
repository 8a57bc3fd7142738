use crate::syntax::{Flavor, Type};

/// `Ξ | Γ ; Δ`. Entries keep insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermContext {
    pub xi: Vec<String>,
    pub gamma: Vec<(String, Type)>,
    pub delta: Vec<(String, Type)>,
}

impl TermContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_ty_var(mut self, name: impl Into<String>) -> Self {
        self.xi.push(name.into());
        self
    }

    pub fn with_intuitionistic(mut self, name: impl Into<String>, ty: Type) -> Self {
        self.gamma.push((name.into(), ty));
        self
    }

    pub fn with_linear(mut self, name: impl Into<String>, ty: Type) -> Self {
        self.delta.push((name.into(), ty));
        self
    }

    pub fn lookup_gamma(&self, name: &str) -> Option<&Type> {
        self.gamma.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn lookup_delta(&self, name: &str) -> Option<&Type> {
        self.delta.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn has_ty_var(&self, name: &str) -> bool {
        self.xi.iter().any(|n| n == name)
    }

    /// The same context with an empty linear part.
    pub fn without_linear(&self) -> Self {
        TermContext {
            xi: self.xi.clone(),
            gamma: self.gamma.clone(),
            delta: Vec::new(),
        }
    }

    /// Moves every linear variable into the intuitionistic part.
    pub fn promote_linear(&self) -> Self {
        let mut gamma = self.gamma.clone();
        gamma.extend(self.delta.iter().cloned());
        TermContext {
            xi: self.xi.clone(),
            gamma,
            delta: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelEntry {
    pub name: String,
    pub dom: Type,
    pub cod: Type,
    pub flavor: Flavor,
}

/// `Ξ | Γ | Θ`: the context of relation and proposition judgements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelContext {
    pub terms: TermContext,
    pub entries: Vec<RelEntry>,
}

impl RelContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: TermContext) -> Self {
        RelContext {
            terms: terms.promote_linear(),
            entries: Vec::new(),
        }
    }

    pub fn with_ty_var(mut self, name: impl Into<String>) -> Self {
        self.terms.xi.push(name.into());
        self
    }

    pub fn with_term(mut self, name: impl Into<String>, ty: Type) -> Self {
        self.terms.gamma.push((name.into(), ty));
        self
    }

    pub fn with_rel(mut self, name: impl Into<String>, dom: Type, cod: Type, flavor: Flavor) -> Self {
        self.entries.push(RelEntry {
            name: name.into(),
            dom,
            cod,
            flavor,
        });
        self
    }

    pub fn lookup_rel(&self, name: &str) -> Option<&RelEntry> {
        self.entries.iter().rev().find(|e| e.name == name)
    }
}
