use serde::{Deserialize, Serialize};
use spraylab::liealg::AlgebraFile;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spray: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symmetry_candidates: Vec<Candidate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_candidate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_algebra: Option<AlgebraFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Candidate {
    pub name: String,
    pub components: Vec<String>,
}

impl Manifest {
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        let m: Manifest = serde_json::from_str(text)?;
        anyhow::ensure!(m.dim > 0, "dim must be positive");
        match (&m.metric, &m.spray) {
            (Some(_), Some(_)) => anyhow::bail!("give either metric or spray, not both"),
            (None, None) => anyhow::bail!("one of metric or spray is required"),
            _ => {}
        }
        let mut names: Vec<&str> = m
            .symmetry_candidates
            .iter()
            .map(|c| c.name.as_str())
            .collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            anyhow::bail!("duplicate candidate name {:?}", w[0]);
        }
        Ok(m)
    }
}
