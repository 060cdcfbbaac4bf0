//! Balanced two-community labelings.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A balanced `±1` labeling of `n` nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct CommunityVector(Vec<i8>);

impl CommunityVector {
    pub fn new(labels: Vec<i8>) -> Result<Self> {
        validate_labels(&labels)?;
        if labels.is_empty() {
            return Err(Error::invalid("community vector must be nonempty"));
        }
        let plus = labels.iter().filter(|&&l| l == 1).count();
        if 2 * plus != labels.len() {
            return Err(Error::invalid(format!(
                "community vector is unbalanced: {plus} of {} labels are +1",
                labels.len()
            )));
        }
        Ok(Self(labels))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|&l| -l).collect())
    }

    /// Indices of the nodes labelled `label`, ascending.
    pub fn members(&self, label: i8) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == label).collect()
    }
}

impl std::ops::Deref for CommunityVector {
    type Target = [i8];
    fn deref(&self) -> &[i8] {
        &self.0
    }
}

impl TryFrom<Vec<i8>> for CommunityVector {
    type Error = Error;
    fn try_from(v: Vec<i8>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<CommunityVector> for Vec<i8> {
    fn from(c: CommunityVector) -> Vec<i8> {
        c.0
    }
}

/// Every entry must be `+1` or `-1`.
pub fn validate_labels(labels: &[i8]) -> Result<()> {
    match labels.iter().position(|&l| l != 1 && l != -1) {
        Some(i) => Err(Error::invalid(format!(
            "label {} at index {i} is not +1 or -1",
            labels[i]
        ))),
        None => Ok(()),
    }
}

/// Uniform draw from the balanced `±1` vectors of length `n`.
pub fn sample_communities<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CommunityVector> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!("node count n = {n} must be even and >= 2")));
    }
    let mut labels: Vec<i8> = (0..n).map(|i| if i < n / 2 { 1 } else { -1 }).collect();
    labels.shuffle(rng);
    Ok(CommunityVector(labels))
}

/// Number of members of each community in a node set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Profile {
    /// `t_{-1}`
    pub minus: usize,
    /// `t_{+1}`
    pub plus: usize,
}

/// Community profile `(t_{-1}, t_{+1})` of `nodes` under `sigma`.
pub fn community_profile(nodes: &[usize], sigma: &[i8]) -> Result<Profile> {
    let mut profile = Profile { minus: 0, plus: 0 };
    for &i in nodes {
        match sigma.get(i) {
            Some(1) => profile.plus += 1,
            Some(_) => profile.minus += 1,
            None => return Err(Error::IndexOutOfRange { index: i, n: sigma.len() }),
        }
    }
    Ok(profile)
}
