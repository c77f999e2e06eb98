//! A replicating population of machines whose alive count follows
//! `round(scale · y2)` for a predator trajectory `y2`.
//!
//! Killing shuts a machine down; it stays in the colony as a dormant
//! member. Spawning replicates from the lowest-id alive machine. When no
//! machine is alive the lowest-id dormant one is restarted first, so a
//! colony that has ever held a machine can recover from a zero target.

use std::collections::BTreeMap;
use std::fmt;

use super::machine::{MachineId, NComputer};
use super::NcompError;
use crate::noosim::LotkaVolterraParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColonyEvent {
    Spawn { id: MachineId, parent: MachineId },
    Restart { id: MachineId },
    Kill { id: MachineId },
}

impl fmt::Display for ColonyEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColonyEvent::Spawn { id, parent } => write!(f, "spawn {id} from {parent}"),
            ColonyEvent::Restart { id } => write!(f, "restart {id}"),
            ColonyEvent::Kill { id } => write!(f, "kill {id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Colony {
    machines: BTreeMap<MachineId, NComputer>,
    lv_params: LotkaVolterraParams,
    scale: f64,
    next_id: u64,
}

impl Colony {
    pub fn new(
        founders: impl IntoIterator<Item = NComputer>,
        lv_params: LotkaVolterraParams,
        scale: f64,
    ) -> Result<Self, NcompError> {
        if !(scale.is_finite() && scale >= 0.0) {
            return Err(NcompError::InvalidConfig(format!("scale {scale} must be non-negative")));
        }
        let mut machines = BTreeMap::new();
        for m in founders {
            if machines.insert(m.id(), m).is_some() {
                return Err(NcompError::InvalidConfig("founder ids must be distinct".into()));
            }
        }
        let next_id = machines.keys().next_back().map_or(0, |id: &MachineId| id.0 + 1);
        Ok(Self { machines, lv_params, scale, next_id })
    }

    pub fn lv_params(&self) -> &LotkaVolterraParams {
        &self.lv_params
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn machines(&self) -> impl Iterator<Item = &NComputer> {
        self.machines.values()
    }

    pub fn machine(&self, id: MachineId) -> Option<&NComputer> {
        self.machines.get(&id)
    }

    pub fn alive_count(&self) -> usize {
        self.machines.values().filter(|m| m.is_alive()).count()
    }

    /// `round(scale · y2)`, halves rounded away from zero.
    pub fn target(&self, y2: f64) -> usize {
        (self.scale * y2).round() as usize
    }

    /// Spawns or kills until the alive count equals the target for `y2`.
    /// The returned log has one entry per unit change in alive count.
    pub fn reconcile(&mut self, y2: f64) -> Result<Vec<ColonyEvent>, NcompError> {
        if !(y2.is_finite() && y2 >= 0.0) {
            return Err(NcompError::InvalidConfig(format!("y2 = {y2} must be non-negative")));
        }
        let target = self.target(y2);
        let mut alive = self.alive_count();
        let mut events = Vec::with_capacity(target.abs_diff(alive));

        if alive < target && alive == 0 {
            let id = self.machines.values().map(|m| m.id()).next().ok_or(NcompError::ExtinctColony)?;
            self.machines.get_mut(&id).expect("present").set_alive(true);
            events.push(ColonyEvent::Restart { id });
            alive += 1;
        }
        if alive < target {
            let parent =
                self.machines.values().find(|m| m.is_alive()).expect("at least one alive machine").clone();
            while alive < target {
                let id = MachineId(self.next_id);
                let child = parent.replicate(id)?;
                self.next_id += 1;
                self.machines.insert(id, child);
                events.push(ColonyEvent::Spawn { id, parent: parent.id() });
                alive += 1;
            }
        }
        if alive > target {
            let doomed: Vec<MachineId> = self
                .machines
                .values()
                .rev()
                .filter(|m| m.is_alive())
                .take(alive - target)
                .map(|m| m.id())
                .collect();
            for id in doomed {
                self.machines.get_mut(&id).expect("present").set_alive(false);
                events.push(ColonyEvent::Kill { id });
            }
        }
        Ok(events)
    }

    /// `true` when every machine carries the same memory image.
    pub fn memories_identical(&self) -> bool {
        let mut it = self.machines.values();
        match it.next() {
            Some(first) => it.all(|m| m.memory() == first.memory()),
            None => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncomp::memory::{Address, DnaMemory};
    use crate::ncomp::Bits;

    fn founder() -> NComputer {
        let mut mem = DnaMemory::new();
        mem.write(Address::new(3).unwrap(), &Bits::from_u128(0xdead_beef, 96)).unwrap();
        let mut m = NComputer::with_memory(MachineId(0), mem);
        m.install_blueprint().unwrap();
        m
    }

    fn colony(scale: f64) -> Colony {
        Colony::new([founder()], LotkaVolterraParams::coexistence(), scale).unwrap()
    }

    #[test]
    fn unchanged_target_is_silent() {
        let mut c = colony(1.0);
        assert!(c.reconcile(1.0).unwrap().is_empty());
        assert_eq!(c.alive_count(), 1);
    }

    #[test]
    fn spawns_to_target() {
        let mut c = colony(10.0);
        let events = c.reconcile(1.0).unwrap();
        assert_eq!(events.len(), 9);
        assert_eq!(c.alive_count(), 10);
        assert!(events.iter().all(|e| matches!(e, ColonyEvent::Spawn { parent: MachineId(0), .. })));
        assert!(c.memories_identical());
    }

    #[test]
    fn kills_highest_ids_first() {
        let mut c = colony(10.0);
        c.reconcile(0.5).unwrap();
        let events = c.reconcile(0.3).unwrap();
        assert_eq!(
            events,
            vec![ColonyEvent::Kill { id: MachineId(4) }, ColonyEvent::Kill { id: MachineId(3) }]
        );
        assert_eq!(c.alive_count(), 3);
    }

    #[test]
    fn zero_kills_everything_and_restart_recovers() {
        let mut c = colony(10.0);
        c.reconcile(0.4).unwrap();
        c.reconcile(0.0).unwrap();
        assert_eq!(c.alive_count(), 0);
        let events = c.reconcile(0.2).unwrap();
        assert_eq!(events[0], ColonyEvent::Restart { id: MachineId(0) });
        assert_eq!(events[1], ColonyEvent::Spawn { id: MachineId(4), parent: MachineId(0) });
        assert_eq!(c.alive_count(), 2);
    }

    #[test]
    fn empty_colony_is_extinct() {
        let mut c = Colony::new([], LotkaVolterraParams::coexistence(), 10.0).unwrap();
        assert_eq!(c.reconcile(0.0).unwrap(), vec![]);
        assert_eq!(c.reconcile(1.0), Err(NcompError::ExtinctColony));
    }

    #[test]
    fn sterile_founder_cannot_spawn() {
        let m = NComputer::with_memory(MachineId(0), DnaMemory::new());
        let mut c = Colony::new([m], LotkaVolterraParams::coexistence(), 10.0).unwrap();
        assert_eq!(c.reconcile(1.0), Err(NcompError::SterileMachine(MachineId(0))));
    }

    #[test]
    fn half_rounds_away_from_zero() {
        let c = colony(1.0);
        assert_eq!(c.target(2.5), 3);
        assert_eq!(c.target(0.49), 0);
    }

    #[test]
    fn event_count_matches_change() {
        let mut c = colony(3.0);
        for y2 in [0.0, 2.2, 7.9, 1.1, 0.0, 4.0] {
            let before = c.alive_count();
            let events = c.reconcile(y2).unwrap();
            assert_eq!(c.alive_count(), c.target(y2));
            assert_eq!(events.len(), before.abs_diff(c.alive_count()));
        }
        assert!(c.reconcile(-1.0).is_err());
    }
}
