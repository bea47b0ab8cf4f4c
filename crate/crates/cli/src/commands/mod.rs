pub mod bounds;
pub mod phi_table;
pub mod quotient;
pub mod verify;

use anyhow::Context;
use radharm_core::SpaceModel;

pub(crate) fn parse_model(id: &str) -> anyhow::Result<SpaceModel> {
    id.parse::<SpaceModel>()
        .with_context(|| format!("invalid model `{id}`"))
}

/// `torus`, `klein`, `rp[m]` (default 2), `lens[k]` and `cpq[k]` (default 1).
pub(crate) fn parse_group(id: &str) -> anyhow::Result<radharm_core::DeckGroup> {
    use radharm_core::DeckGroup;
    let index = |rest: &str, default: u32| -> anyhow::Result<u32> {
        if rest.is_empty() {
            return Ok(default);
        }
        match rest.parse::<u32>() {
            Ok(n) if n >= 1 && !rest.starts_with('0') => Ok(n),
            _ => anyhow::bail!("invalid group `{id}`"),
        }
    };
    Ok(match id {
        "torus" => DeckGroup::torus(),
        "klein" => DeckGroup::klein(),
        _ => {
            if let Some(rest) = id.strip_prefix("rp") {
                DeckGroup::antipodal(index(rest, 2)?)?
            } else if let Some(rest) = id.strip_prefix("lens") {
                DeckGroup::lens(index(rest, 1)?)
            } else if let Some(rest) = id.strip_prefix("cpq") {
                DeckGroup::cp_involution(index(rest, 1)?)
            } else {
                anyhow::bail!("unknown group `{id}`; expected torus, klein, rp[m], lens[k] or cpq[k]")
            }
        }
    })
}
