//! Structural connectedness, local connectedness and totally disconnected
//! topologies.
//!
//! A separation splits the carrier into two nonempty disjoint open parts.
//! Whether one exists is a property of the topology alone; how the shape
//! *looks* — one piece or several — is a property of its maximal elements.
//! The two are independent: a single line can carry a disconnected
//! topology, and a two-piece shape a connected one. The
//! [`ConnectivityReport`] puts both verdicts side by side.

use crate::error::{Error, Result};
use crate::shape::Shape;
use crate::topology::Topology;
use std::collections::BTreeSet;

/// Two nonempty disjoint open parts that sum to the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub left: Shape,
    pub right: Shape,
}

/// Finds a separation of the carrier, scanning open pairs in canonical
/// order; `None` means the shape is connected in this topology.
pub fn find_separation(t: &Topology) -> Option<Separation> {
    let opens = t.opens_sorted();
    for (i, c) in opens.iter().enumerate() {
        if c.is_empty() {
            continue;
        }
        for d in opens.iter().skip(i + 1) {
            if d.is_empty() {
                continue;
            }
            if c.product_k(d).is_empty() && &c.sum_k(d) == t.carrier() {
                return Some(Separation { left: (*c).clone(), right: (*d).clone() });
            }
        }
    }
    None
}

/// True when no separation exists.
pub fn is_connected(t: &Topology) -> bool {
    find_separation(t).is_none()
}

/// Connectedness of an arbitrary nonempty part in its subshape topology.
///
/// The separating parts live in the subshape topology; they need not be
/// open in the original one.
pub fn is_connected_part(x: &Shape, t: &Topology) -> Result<bool> {
    Ok(is_connected(&t.subshape(x)?))
}

/// Verdict of a local-connectedness scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalConnectivity {
    /// Every nonempty open part is connected in its subshape topology.
    pub locally_connected: bool,
    /// The first open that splits, in canonical order.
    pub failing_open: Option<Shape>,
}

/// Checks connectedness of every nonempty open part in its subshape
/// topology. Locally connected implies connected: the carrier is one of
/// the opens checked.
pub fn local_connectivity(t: &Topology) -> LocalConnectivity {
    let tables = t.tables();
    for c in 0..tables.len() {
        if c == tables.empty {
            continue;
        }
        if !open_connected_in_subshape(&tables, c) {
            return LocalConnectivity {
                locally_connected: false,
                failing_open: Some(tables.opens[c].clone()),
            };
        }
    }
    LocalConnectivity { locally_connected: true, failing_open: None }
}

/// Connectedness of the open with index `c` in its subshape topology,
/// computed entirely in the closed sum/product tables: the subshape opens
/// of an open part are themselves opens.
fn open_connected_in_subshape(tables: &crate::topology::OpenTables, c: usize) -> bool {
    let sub: BTreeSet<usize> = (0..tables.len()).map(|d| tables.prod[c][d]).collect();
    let members: Vec<usize> = sub.into_iter().filter(|&u| u != tables.empty).collect();
    for (i, &u) in members.iter().enumerate() {
        for &v in members.iter().skip(i + 1) {
            if tables.prod[u][v] == tables.empty && tables.sum[u][v] == c {
                return false;
            }
        }
    }
    true
}

/// The four equivalent characterizations of a totally disconnected
/// topology, each evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisconnectionReport {
    /// (1) The carrier is disconnected and the connected opens are exactly
    /// the reduced-basis elements.
    pub by_definition: bool,
    /// (2) The reduced basis consists of pairwise disjoint parts.
    pub disjoint_reduced_basis: bool,
    /// (3) Every open part is closed-open.
    pub all_clopen: bool,
    /// (4) The opens form a finite Boolean algebra: complemented,
    /// distributive, bounded by the empty shape and the carrier.
    pub boolean_algebra: bool,
    /// All four conditions returned the same verdict.
    pub conditions_agree: bool,
    /// The shared verdict (condition (1) when they disagree).
    pub totally_disconnected: bool,
}

/// Evaluates the four totally-disconnected conditions independently.
///
/// They are provably equivalent, so `conditions_agree` doubles as a
/// regression check on the whole tower underneath them.
pub fn total_disconnection(t: &Topology) -> DisconnectionReport {
    let tables = t.tables();
    let n = tables.len();
    let basis = t.reduced_basis();

    // (1) Carrier disconnected; connected opens = reduced basis.
    let by_definition = {
        let carrier_disconnected = !open_connected_in_subshape(&tables, tables.carrier);
        let connected_opens: BTreeSet<&Shape> = (0..n)
            .filter(|&c| c != tables.empty && open_connected_in_subshape(&tables, c))
            .map(|c| &tables.opens[c])
            .collect();
        let basis_set: BTreeSet<&Shape> = basis.elements().iter().collect();
        carrier_disconnected && connected_opens == basis_set
    };

    // Conditions (2)-(4) characterize a *totally disconnected* carrier, so
    // each carries the size qualifier that rules out the indiscrete
    // topology, where a lone basis element or a two-member family would
    // satisfy the letter of the condition while the carrier is connected.

    // (2) At least two reduced-basis elements, pairwise disjoint.
    let disjoint_reduced_basis = {
        let elements: Vec<&Shape> = basis.elements().iter().collect();
        elements.len() >= 2
            && elements.iter().enumerate().all(|(i, a)| {
                elements.iter().skip(i + 1).all(|b| a.product_k(b).is_empty())
            })
    };

    // (3) A proper open exists and every open is clopen.
    let all_clopen = n > 2
        && (0..n).all(|c| {
            let complement = t.carrier().difference_k(&tables.opens[c]);
            t.is_open(&complement)
        });

    // (4) More than the two bounds, and the opens form a Boolean algebra:
    // bounded, complemented (with the complement laws holding), and
    // distributive.
    let boolean_algebra = {
        let sorted = t.opens_sorted();
        let bounded = t.is_open(&Shape::empty(t.carrier().kind())) && t.is_open(t.carrier());
        let complemented = (0..n).all(|c| {
            let complement = t.carrier().difference_k(&tables.opens[c]);
            match sorted.iter().position(|o| **o == complement) {
                None => false,
                Some(d) => {
                    tables.prod[c][d] == tables.empty && tables.sum[c][d] == tables.carrier
                }
            }
        });
        let distributive = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    tables.prod[a][tables.sum[b][c]]
                        == tables.sum[tables.prod[a][b]][tables.prod[a][c]]
                })
            })
        });
        n > 2 && bounded && complemented && distributive
    };

    let verdicts = [by_definition, disjoint_reduced_basis, all_clopen, boolean_algebra];
    let conditions_agree = verdicts.iter().all(|&v| v == by_definition);
    DisconnectionReport {
        by_definition,
        disjoint_reduced_basis,
        all_clopen,
        boolean_algebra,
        conditions_agree,
        totally_disconnected: by_definition,
    }
}

/// Structural and visual connectivity of a shape under one topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    /// No separation exists.
    pub structurally_connected: bool,
    /// A separation, present exactly when the shape is structurally
    /// disconnected.
    pub witness: Option<Separation>,
    /// The maximal elements touch each other into one piece.
    pub visually_connected: bool,
    /// Every nonempty open is connected in its subshape topology.
    pub locally_connected: bool,
    /// The topology is totally disconnected.
    pub totally_disconnected: bool,
}

/// Builds the combined report for a shape and a topology on it.
///
/// Appearance is independent of structure: all four combinations of the
/// two connectedness verdicts occur.
pub fn connectivity_report(s: &Shape, t: &Topology) -> Result<ConnectivityReport> {
    if s != t.carrier() {
        return Err(Error::CarrierMismatch);
    }
    let witness = find_separation(t);
    Ok(ConnectivityReport {
        structurally_connected: witness.is_none(),
        witness,
        visually_connected: s.visually_connected(),
        locally_connected: local_connectivity(t).locally_connected,
        totally_disconnected: total_disconnection(t).totally_disconnected,
    })
}
