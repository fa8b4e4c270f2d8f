//! Splitting users into unit-load replicas and folding replica clusters back.
//!
//! A user with load `w` becomes `w / unit` co-located replicas of unit load.
//! Clustering the replicas without weights is the same computation as
//! clustering the original users with weights `w / unit`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Scenario, UserId};

/// Tolerance on `load / unit` being an integer.
pub const INTEGRALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Replica {
    pub id: usize,
    pub origin: UserId,
    /// Index of the origin user in scenario order.
    pub origin_index: usize,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicaSet {
    pub replicas: Vec<Replica>,
    pub origin_counts: BTreeMap<UserId, usize>,
}

impl ReplicaSet {
    pub fn len(&self) -> usize {
        self.replicas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.replicas.is_empty()
    }
}

/// Number of unit replicas for a load, or `None` if it is not a positive
/// integer multiple of `unit`.
pub fn replica_count(load: f64, unit: f64) -> Option<usize> {
    let q = load / unit;
    let r = q.round();
    if r >= 1.0 && (q - r).abs() <= INTEGRALITY_TOL && r.is_finite() {
        Some(r as usize)
    } else {
        None
    }
}

pub fn split_users(s: &Scenario, unit: f64) -> Result<ReplicaSet> {
    if !(unit > 0.0 && unit.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "replication unit must be positive, got {unit}"
        )));
    }
    let mut replicas = Vec::new();
    let mut origin_counts = BTreeMap::new();
    for (origin_index, u) in s.users.iter().enumerate() {
        let n = replica_count(u.load, unit).ok_or_else(|| Error::NonIntegralLoad(u.id.clone()))?;
        for _ in 0..n {
            replicas.push(Replica {
                id: replicas.len(),
                origin: u.id.clone(),
                origin_index,
                x: u.x,
                y: u.y,
            });
        }
        *origin_counts.entry(u.id.clone()).or_insert(0) += n;
    }
    Ok(ReplicaSet {
        replicas,
        origin_counts,
    })
}

/// Maps each origin user to the cluster holding most of its replicas; ties
/// go to the lowest cluster index.
pub fn fold_assignment(
    r: &ReplicaSet,
    replica_assignment: &BTreeMap<usize, usize>,
) -> Result<BTreeMap<UserId, usize>> {
    fold_with(r, |id| replica_assignment.get(&id).copied())
}

/// Same as [`fold_assignment`] for a dense assignment indexed by replica id.
pub fn fold_dense(r: &ReplicaSet, replica_assignment: &[usize]) -> Result<BTreeMap<UserId, usize>> {
    fold_with(r, |id| replica_assignment.get(id).copied())
}

fn fold_with(
    r: &ReplicaSet,
    lookup: impl Fn(usize) -> Option<usize>,
) -> Result<BTreeMap<UserId, usize>> {
    let mut votes: BTreeMap<&UserId, BTreeMap<usize, usize>> = BTreeMap::new();
    for rep in &r.replicas {
        let c = lookup(rep.id).ok_or(Error::MissingReplica(rep.id))?;
        *votes.entry(&rep.origin).or_default().entry(c).or_insert(0) += 1;
    }
    Ok(votes
        .into_iter()
        .map(|(id, counts)| {
            // BTreeMap iterates ascending, so strict `>` keeps the lowest index on ties.
            let mut best = (usize::MAX, 0usize);
            for (c, n) in counts {
                if n > best.1 {
                    best = (c, n);
                }
            }
            (id.clone(), best.0)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Area, User};

    fn scenario(users: Vec<User>) -> Scenario {
        Scenario::new(Area::square(10.0), 1, users)
    }

    #[test]
    fn load_three_gives_three_colocated_replicas() {
        let s = scenario(vec![User::new("a", 3.0, 4.0, 3.0)]);
        let r = split_users(&s, 1.0).unwrap();
        assert_eq!(r.len(), 3);
        for rep in &r.replicas {
            assert_eq!(
                (rep.x.to_bits(), rep.y.to_bits()),
                (3f64.to_bits(), 4f64.to_bits())
            );
            assert_eq!(rep.origin.as_str(), "a");
        }
        assert_eq!(r.origin_counts[&UserId::from("a")], 3);
    }

    #[test]
    fn unit_loads_are_identity() {
        let s = scenario(vec![
            User::new("u1", 1.0, 1.0, 1.0),
            User::new("u2", 2.0, 2.0, 1.0),
        ]);
        let r = split_users(&s, 1.0).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.origin_counts[&UserId::from("u1")], 1);
        assert_eq!(r.origin_counts[&UserId::from("u2")], 1);
    }

    #[test]
    fn fractional_load_is_rejected() {
        let s = scenario(vec![User::new("half", 0.0, 0.0, 2.5)]);
        match split_users(&s, 1.0) {
            Err(Error::NonIntegralLoad(id)) => assert_eq!(id.as_str(), "half"),
            other => panic!("unexpected {other:?}"),
        }
        // A finer unit makes it integral.
        assert_eq!(split_users(&s, 0.5).unwrap().len(), 5);
    }

    #[test]
    fn near_integral_within_tolerance() {
        let s = scenario(vec![User::new("a", 0.0, 0.0, 0.1 + 0.2)]);
        assert_eq!(split_users(&s, 0.1).unwrap().len(), 3);
    }

    #[test]
    fn load_below_unit_is_rejected() {
        let s = scenario(vec![User::new("a", 0.0, 0.0, 0.4)]);
        assert!(matches!(
            split_users(&s, 1.0),
            Err(Error::NonIntegralLoad(_))
        ));
    }

    fn three_replica_set() -> ReplicaSet {
        split_users(&scenario(vec![User::new("a", 0.0, 0.0, 3.0)]), 1.0).unwrap()
    }

    #[test]
    fn fold_unanimous() {
        let r = three_replica_set();
        let a: BTreeMap<_, _> = [(0, 1), (1, 1), (2, 1)].into_iter().collect();
        assert_eq!(fold_assignment(&r, &a).unwrap()[&UserId::from("a")], 1);
    }

    #[test]
    fn fold_majority() {
        let r = three_replica_set();
        let a: BTreeMap<_, _> = [(0, 2), (1, 0), (2, 0)].into_iter().collect();
        assert_eq!(fold_assignment(&r, &a).unwrap()[&UserId::from("a")], 0);
    }

    #[test]
    fn fold_tie_goes_to_lowest_index() {
        let r = split_users(&scenario(vec![User::new("a", 0.0, 0.0, 2.0)]), 1.0).unwrap();
        let a: BTreeMap<_, _> = [(0, 1), (1, 0)].into_iter().collect();
        assert_eq!(fold_assignment(&r, &a).unwrap()[&UserId::from("a")], 0);
        assert_eq!(fold_dense(&r, &[1, 0]).unwrap()[&UserId::from("a")], 0);
    }

    #[test]
    fn fold_reports_missing_replica() {
        let r = three_replica_set();
        let a: BTreeMap<_, _> = [(0, 0), (2, 0)].into_iter().collect();
        assert!(matches!(
            fold_assignment(&r, &a),
            Err(Error::MissingReplica(1))
        ));
    }
}
