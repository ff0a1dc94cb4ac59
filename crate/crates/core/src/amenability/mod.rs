//! Følner searches, two-to-one injection searches on ball truncations,
//! equidecomposition checks and the `BS(1,k)` subset witnesses.
//!
//! Everything uses left translation `gA`. Ratios are exact rationals.

mod bs;
mod equidecomposition;
mod flow;
mod folner;
mod matching;

use std::collections::BTreeMap;
use std::fmt;

pub use bs::{bs_example_check, rosenblatt_find, BsCheck, BsExampleReport, RosenblattWitness};
pub use equidecomposition::{verify_equidecomposition, EquidecompositionWitness};
pub use folner::{
    expansion_profile, folner_search, FolnerOutcome, FolnerReport, FolnerStrategy, FolnerWitness,
};
pub use matching::{find_two_to_one_injection, HallViolation, InjectionOutcome, InjectionWitness};

use crate::error::{invalid, Result};
use crate::groups::{FiniteSet, GroupDescriptor, GroupElement};

/// Membership rule for a subset `X ⊆ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetRule {
    WholeGroup,
    /// `X = AB ⊆ BS(1,k)`: elements `(t, m)` with `t ∈ Z`.
    BsX,
    /// `X_0 = ⟨a^k⟩B ⊆ BS(1,k)`: elements with `t ∈ kZ`.
    BsX0,
    ExplicitFiniteSet(FiniteSet),
    /// Listed elements get their listed membership; everything else gets
    /// `default`.
    UserTable { table: BTreeMap<GroupElement, bool>, default: bool },
    /// `X^{-1}` for the inner rule.
    Inverted(Box<SubsetRule>),
}

/// A subset of a group given by a decidable rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetPredicate {
    group: GroupDescriptor,
    rule: SubsetRule,
}

impl SubsetPredicate {
    pub fn new(group: GroupDescriptor, rule: SubsetRule) -> Result<SubsetPredicate> {
        check_rule(&group, &rule)?;
        Ok(SubsetPredicate { group, rule })
    }

    pub fn whole(group: GroupDescriptor) -> SubsetPredicate {
        SubsetPredicate { group, rule: SubsetRule::WholeGroup }
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn rule(&self) -> &SubsetRule {
        &self.rule
    }

    pub fn inverted(&self) -> SubsetPredicate {
        let rule = match &self.rule {
            SubsetRule::Inverted(inner) => (**inner).clone(),
            SubsetRule::WholeGroup => SubsetRule::WholeGroup,
            r => SubsetRule::Inverted(Box::new(r.clone())),
        };
        SubsetPredicate { group: self.group.clone(), rule }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.group.contains(x) && rule_contains(&self.group, &self.rule, x)
    }

    /// `A ∩ X`.
    pub fn restrict(&self, a: &FiniteSet) -> FiniteSet {
        a.iter().filter(|x| self.contains(x)).cloned().collect()
    }

    /// `|A ∩ X|`.
    pub fn count(&self, a: &FiniteSet) -> usize {
        a.iter().filter(|x| self.contains(x)).count()
    }
}

fn check_rule(group: &GroupDescriptor, rule: &SubsetRule) -> Result<()> {
    match rule {
        SubsetRule::BsX | SubsetRule::BsX0 if !matches!(group, GroupDescriptor::BaumslagSolitar(_)) => {
            Err(invalid(format!("the subsets X and X0 live in BS(1,k), not {group}")))
        }
        SubsetRule::ExplicitFiniteSet(s) => match s.iter().find(|x| !group.contains(x)) {
            Some(x) => Err(invalid(format!("{x:?} is not in {group}"))),
            None => Ok(()),
        },
        SubsetRule::UserTable { table, .. } => match table.keys().find(|x| !group.contains(x)) {
            Some(x) => Err(invalid(format!("{x:?} is not in {group}"))),
            None => Ok(()),
        },
        SubsetRule::Inverted(inner) => check_rule(group, inner),
        _ => Ok(()),
    }
}

fn rule_contains(group: &GroupDescriptor, rule: &SubsetRule, x: &GroupElement) -> bool {
    match rule {
        SubsetRule::WholeGroup => true,
        SubsetRule::BsX => matches!(x, GroupElement::BaumslagSolitar { t, .. } if t.is_integer()),
        SubsetRule::BsX0 => {
            matches!(x, GroupElement::BaumslagSolitar { t, .. } if t.is_multiple_of_base())
        }
        SubsetRule::ExplicitFiniteSet(s) => s.contains(x),
        SubsetRule::UserTable { table, default } => table.get(x).copied().unwrap_or(*default),
        SubsetRule::Inverted(inner) => rule_contains(group, inner, &group.inverse(x)),
    }
}

impl SubsetPredicate {
    /// Reads `G`, `X`, `X0`, an explicit set `{...}`, or `inv(...)` of one of
    /// these. Tables have no text form.
    pub fn parse(group: &GroupDescriptor, s: &str) -> Result<SubsetPredicate> {
        fn rule(group: &GroupDescriptor, s: &str) -> Result<SubsetRule> {
            let s = s.trim();
            Ok(match s {
                "G" => SubsetRule::WholeGroup,
                "X" => SubsetRule::BsX,
                "X0" => SubsetRule::BsX0,
                _ if s.starts_with('{') => SubsetRule::ExplicitFiniteSet(group.parse_set(s)?),
                _ => match s.strip_prefix("inv(").and_then(|r| r.strip_suffix(')')) {
                    Some(inner) => SubsetRule::Inverted(Box::new(rule(group, inner)?)),
                    None => return Err(crate::error::parse_err(format!("unknown subset `{s}`"))),
                },
            })
        }
        SubsetPredicate::new(group.clone(), rule(group, s)?)
    }

    /// The rule in the form read by [`SubsetPredicate::parse`].
    pub fn rule_text(&self) -> String {
        fn name(g: &GroupDescriptor, r: &SubsetRule) -> String {
            match r {
                SubsetRule::WholeGroup => "G".into(),
                SubsetRule::BsX => "X".into(),
                SubsetRule::BsX0 => "X0".into(),
                SubsetRule::ExplicitFiniteSet(s) => g.format_set(s),
                SubsetRule::UserTable { table, default } => {
                    format!("table({} entries, default {default})", table.len())
                }
                SubsetRule::Inverted(inner) => format!("inv({})", name(g, inner)),
            }
        }
        name(&self.group, &self.rule)
    }
}

impl fmt::Display for SubsetPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.rule_text(), self.group)
    }
}

#[cfg(test)]
mod tests;
