//! In-memory session registry with idle expiry.
//!
//! The map lock is held only to look up, insert or sweep; each session has
//! its own lock, so actions on one session serialize while different
//! sessions proceed in parallel.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use uuid::Uuid;

use crate::session::EditSession;

pub const DEFAULT_IDLE: Duration = Duration::from_secs(30 * 60);

pub type SessionHandle = Arc<Mutex<EditSession>>;

struct Entry {
    session: SessionHandle,
    last_used: Instant,
}

pub struct SessionStore {
    idle: Duration,
    sessions: Mutex<HashMap<String, Entry>>,
}

impl Default for SessionStore {
    fn default() -> Self {
        Self::new(DEFAULT_IDLE)
    }
}

impl SessionStore {
    pub fn new(idle: Duration) -> Self {
        Self { idle, sessions: Mutex::new(HashMap::new()) }
    }

    pub fn insert(&self, session: EditSession) -> String {
        let id = Uuid::new_v4().to_string();
        let mut map = self.sessions.lock().expect("session map poisoned");
        self.sweep_locked(&mut map, Instant::now());
        map.insert(id.clone(), Entry { session: Arc::new(Mutex::new(session)), last_used: Instant::now() });
        id
    }

    /// Looks a session up and marks it used. Expired sessions are gone.
    pub fn get(&self, id: &str) -> Option<SessionHandle> {
        let now = Instant::now();
        let mut map = self.sessions.lock().expect("session map poisoned");
        self.sweep_locked(&mut map, now);
        let entry = map.get_mut(id)?;
        entry.last_used = now;
        Some(entry.session.clone())
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().expect("session map poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sweep(&self) {
        let mut map = self.sessions.lock().expect("session map poisoned");
        self.sweep_locked(&mut map, Instant::now());
    }

    fn sweep_locked(&self, map: &mut HashMap<String, Entry>, now: Instant) {
        map.retain(|_, e| now.duration_since(e.last_used) < self.idle);
    }
}
