//! Reductions around the projections between bump, Schwartz and smooth names.

use crate::error::Result;
use crate::names::Name;
use crate::testfns::constructions::{attach_decay, attach_support_bound, bounded_set_schwartz, bounded_set_support, bound_seq_smooth, bound_seq_truth, decay_complements, read_bounds, support_bound_complement};
use crate::testfns::{include_s_to_e, BumpName, SchwartzName, SmoothName};

use super::basic::cn_le_bound;
use super::instances::decay_choices;
use super::oracle::read_nat;
use super::{compose, Choice, Problem, Reduction, Truth};

/// Bound to the Schwartz-to-bump projection: `Σ_i w_i f_{2p(i)}` has support bound
/// `2 max p + 1`, and `max p` is one more than the largest listed element.
pub fn bound_le_proj_sd() -> Reduction {
    Reduction::new(
        "bound_le_proj_sd",
        Problem::Bound,
        Problem::ProjSchwartzToBump,
        "a bound of an enumerated set from the support of a Schwartz function built from it",
        |p| bounded_set_schwartz(p).0,
        |_, q| Name::constant(BumpName(q.clone()).support_bound()),
        |_, t| {
            let max_raw = t.as_set()?.last().map_or(0, |m| m + 1);
            Ok(Truth::Choice(Choice::at_least(bounded_set_support(max_raw))))
        },
    )
    .with_probe(3)
}

/// Closed choice to the Schwartz-to-bump projection, through Bound.
pub fn cn_le_proj_sd() -> Reduction {
    compose(&cn_le_bound(), &bound_le_proj_sd()).expect("matching problems").named("cn_le_proj_sd")
}

/// The Schwartz-to-bump projection factors through the smooth one.
pub fn proj_sd_le_proj_ed() -> Reduction {
    Reduction::new(
        "proj_sd_le_proj_ed",
        Problem::ProjSchwartzToBump,
        Problem::ProjSmoothToBump,
        "forgetting the decay witnesses before projecting",
        |p| include_s_to_e(&SchwartzName(p.clone())).0,
        |_, q| q.clone(),
        |_, t| Ok(t.clone()),
    )
}

/// Smooth-to-bump projection to closed choice: support bounds are refuted by
/// nonzero values at rationals beyond them.
pub fn proj_ed_le_cn() -> Reduction {
    Reduction::new(
        "proj_ed_le_cn",
        Problem::ProjSmoothToBump,
        Problem::ClosedChoice,
        "support bounds form a closed set, refuted by one nonzero value",
        |p| support_bound_complement(&SmoothName(p.clone())).0,
        |p, q| attach_support_bound(&SmoothName(p.clone()), read_nat(q)).0,
        |_, t| Ok(Truth::Choice(t.as_choice()?.clone())),
    )
    .with_probe(3)
}

/// Smooth-to-Schwartz projection to a sequence of closed choices, one per level.
pub fn proj_es_le_cnseq() -> Reduction {
    Reduction::new(
        "proj_es_le_cnseq",
        Problem::ProjSmoothToSchwartz,
        Problem::ClosedChoiceSeq,
        "each decay witness is one closed choice",
        |p| decay_complements(&SmoothName(p.clone())),
        |p, q| attach_decay(&SmoothName(p.clone()), q).0,
        |_, t| Ok(t.clone()),
    )
    .with_probe(3)
}

/// Bound sequences to the smooth-to-Schwartz projection: a decay witness at level
/// `k` must exceed every shift `s` placed in column `k`, and `s` exceeds the value.
pub fn boundseq_le_proj_es() -> Reduction {
    Reduction::new(
        "boundseq_le_proj_es",
        Problem::BoundSeq,
        Problem::ProjSmoothToSchwartz,
        "a sequence of bounds read off the decay witnesses of one smooth function",
        |p| bound_seq_smooth(p).0,
        |_, q| read_bounds(&SchwartzName(q.clone())),
        |_, t| bound_seq_choices(t),
    )
    .with_probe(3)
}

fn bound_seq_choices(t: &Truth) -> Result<Truth> {
    let Truth::Columns(cols) = t else {
        return Err(crate::error::Error::Config(format!("Bound^N needs a columns truth, got {}", t.kind())));
    };
    Ok(decay_choices(bound_seq_truth(cols)))
}
