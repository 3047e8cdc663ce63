use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{stick_census, LatticeLink, Point3, StickCensus};
use crate::lift::{LiftedLink, Stage};

/// On-disk form of a lattice link. Field order is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDocument {
    pub p: i64,
    pub q: i64,
    pub components: usize,
    pub loops: Vec<Vec<[i64; 3]>>,
    pub stick_counts: StickCensus,
    pub stage: Stage,
}

impl LinkDocument {
    pub fn from_lifted(ll: &LiftedLink) -> Self {
        LinkDocument {
            p: ll.p,
            q: ll.q,
            components: ll.link.loop_count(),
            loops: ll
                .link
                .loops()
                .iter()
                .map(|lp| lp.iter().map(Point3::as_array).collect())
                .collect(),
            stick_counts: stick_census(&ll.link),
            stage: ll.stage,
        }
    }

    /// Rebuilds the link and checks the recorded counts against it.
    pub fn to_link(&self) -> Result<LatticeLink> {
        let loops = self
            .loops
            .iter()
            .map(|lp| lp.iter().map(|&[x, y, z]| Point3::new(x, y, z)).collect())
            .collect();
        let link = LatticeLink::new(loops)?;
        if stick_census(&link) != self.stick_counts {
            return Err(Error::Structural(format!(
                "stick_counts {} do not match the loops ({})",
                self.stick_counts,
                stick_census(&link)
            )));
        }
        if link.loop_count() != self.components {
            return Err(Error::Structural(format!(
                "components = {} but {} loops given",
                self.components,
                link.loop_count()
            )));
        }
        Ok(link)
    }
}

pub fn to_json(ll: &LiftedLink) -> Result<String> {
    Ok(serde_json::to_string(&LinkDocument::from_lifted(ll))?)
}

pub fn from_json(text: &str) -> Result<LinkDocument> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::build_lattice_link;

    #[test]
    fn field_order_and_values() {
        let ll = build_lattice_link(3, 1).unwrap();
        let text = serde_json::to_string(&LinkDocument::from_lifted(&ll)).unwrap();
        let keys: Vec<usize> = [
            "\"p\"",
            "\"q\"",
            "\"components\"",
            "\"loops\"",
            "\"stick_counts\"",
            "\"stage\"",
        ]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{text}");
        assert!(text.ends_with("\"stage\":\"final\"}"));
        let doc = from_json(&text).unwrap();
        assert_eq!(doc.stick_counts.total(), 12);
        assert_eq!(doc.stick_counts.z, 4);
        assert_eq!(doc.to_link().unwrap(), ll.link);
    }

    #[test]
    fn rejects_inconsistent_counts() {
        let ll = build_lattice_link(4, 1).unwrap();
        let mut doc = LinkDocument::from_lifted(&ll);
        doc.stick_counts.z = 5;
        assert!(doc.to_link().is_err());
        assert!(from_json("{\"p\":3}").is_err());
    }
}
