//! Plain-text network format: the first line holds `n`, every following line
//! one `owner target` purchase. Blank lines and `#` comments are ignored.

use super::network::OwnedNetwork;
use crate::error::{Error, Result};

pub fn parse_network(text: &str) -> Result<OwnedNetwork> {
    let mut n: Option<usize> = None;
    let mut purchases = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse { line: line_no, message: format!("expected a nonnegative integer, found `{s}`") })
        };
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(Error::Parse { line: line_no, message: "first line must hold the agent count".into() });
                }
                n = Some(parse(fields[0])?);
            }
            Some(n) => {
                if fields.len() != 2 {
                    return Err(Error::Parse { line: line_no, message: "expected `owner target`".into() });
                }
                let (owner, target) = (parse(fields[0])?, parse(fields[1])?);
                for a in [owner, target] {
                    if a >= n {
                        return Err(Error::Parse {
                            line: line_no,
                            message: Error::IndexOutOfRange { agent: a, n }.to_string(),
                        });
                    }
                }
                if owner == target {
                    return Err(Error::Parse { line: line_no, message: Error::SelfLoop(owner).to_string() });
                }
                purchases.push((owner, target));
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 1, message: "missing agent count".into() })?;
    OwnedNetwork::new(n, &purchases)
}

/// Canonical text rendering: purchases sorted by owner then target.
pub fn serialize_network(net: &OwnedNetwork) -> String {
    let mut out = format!("{}\n", net.n());
    for (o, t) in net.bought_edges() {
        out.push_str(&format!("{o} {t}\n"));
    }
    out
}
