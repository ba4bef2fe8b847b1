//! Background sampling jobs with polled progress and cooperative cancellation.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use paretoscope_core::Front;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JobStatus {
    Queued,
    Running,
    Done,
    Failed,
    Cancelled,
}

impl JobStatus {
    pub fn is_finished(self) -> bool {
        matches!(self, JobStatus::Done | JobStatus::Failed | JobStatus::Cancelled)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JobError {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone)]
struct JobRecord {
    status: JobStatus,
    front_id: Option<String>,
    error: Option<JobError>,
    finished_at: Option<String>,
}

#[derive(Debug)]
pub struct Job {
    pub id: String,
    pub session_id: String,
    pub created_at: String,
    pub cached: bool,
    pub cancel: AtomicBool,
    completed: AtomicUsize,
    total: AtomicUsize,
    record: Mutex<JobRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Progress {
    pub completed: usize,
    pub total: usize,
}

/// Poll response for `GET /jobs/{id}`.
#[derive(Debug, Clone, Serialize)]
pub struct JobView {
    pub job_id: String,
    pub session_id: String,
    pub status: JobStatus,
    pub progress: Progress,
    /// The front was served from the session cache.
    pub cached: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub front_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub front: Option<Front>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<JobError>,
    pub created_at: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finished_at: Option<String>,
}

impl Job {
    pub fn new(id: String, session_id: String, created_at: String, total: usize) -> Self {
        Self {
            id,
            session_id,
            created_at,
            cached: false,
            cancel: AtomicBool::new(false),
            completed: AtomicUsize::new(0),
            total: AtomicUsize::new(total),
            record: Mutex::new(JobRecord { status: JobStatus::Queued, front_id: None, error: None, finished_at: None }),
        }
    }

    /// A job answered from the front cache; finished on creation.
    pub fn from_cache(id: String, session_id: String, created_at: String, front_id: String, total: usize) -> Self {
        let job = Self { cached: true, ..Self::new(id, session_id, created_at.clone(), total) };
        job.completed.store(total, Ordering::Relaxed);
        {
            let mut r = job.lock();
            r.status = JobStatus::Done;
            r.front_id = Some(front_id);
            r.finished_at = Some(created_at);
        }
        job
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, JobRecord> {
        self.record.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn status(&self) -> JobStatus {
        self.lock().status
    }

    pub fn set_progress(&self, completed: usize, total: usize) {
        self.total.store(total, Ordering::Relaxed);
        self.completed.fetch_max(completed, Ordering::Relaxed);
    }

    /// Moves a queued job to running; false if it was cancelled meanwhile.
    pub fn start(&self) -> bool {
        let mut r = self.lock();
        if r.status != JobStatus::Queued {
            return false;
        }
        if self.cancel.load(Ordering::Relaxed) {
            r.status = JobStatus::Cancelled;
            return false;
        }
        r.status = JobStatus::Running;
        true
    }

    pub fn finish(&self, front_id: String, now: String) {
        let mut r = self.lock();
        r.status = JobStatus::Done;
        r.front_id = Some(front_id);
        r.finished_at = Some(now);
        let total = self.total.load(Ordering::Relaxed);
        self.completed.store(total, Ordering::Relaxed);
    }

    pub fn fail(&self, code: &str, message: String, now: String) {
        let mut r = self.lock();
        r.status = if code == "cancelled" { JobStatus::Cancelled } else { JobStatus::Failed };
        r.error = Some(JobError { code: code.into(), message });
        r.finished_at = Some(now);
    }

    /// Requests cancellation. A queued job is cancelled immediately; a
    /// running one stops at its next direction.
    pub fn request_cancel(&self, now: String) {
        self.cancel.store(true, Ordering::Relaxed);
        let mut r = self.lock();
        if r.status == JobStatus::Queued {
            r.status = JobStatus::Cancelled;
            r.finished_at = Some(now);
        }
    }

    pub fn view(&self, front: Option<Front>) -> JobView {
        let r = self.lock().clone();
        JobView {
            job_id: self.id.clone(),
            session_id: self.session_id.clone(),
            status: r.status,
            progress: Progress { completed: self.completed.load(Ordering::Relaxed), total: self.total.load(Ordering::Relaxed) },
            cached: self.cached,
            front_id: r.front_id,
            front,
            error: r.error,
            created_at: self.created_at.clone(),
            finished_at: r.finished_at,
        }
    }

    pub fn front_id(&self) -> Option<String> {
        self.lock().front_id.clone()
    }
}
