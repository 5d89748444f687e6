//! The fixture catalogue, embedded at compile time.

use crate::model::{Document, Frame, Model};

use super::ReplicationError;

struct Entry {
    id: &'static str,
    text: &'static str,
    points: &'static [&'static str],
}

macro_rules! entry {
    ($id:literal, $file:literal, $points:expr) => {
        Entry { id: $id, text: include_str!(concat!("../../fixtures/", $file)), points: $points }
    };
}

const FRAME_POINTS: &[&str] = &[];

static CATALOGUE: &[Entry] = &[
    entry!("P1.M", "p1_m.json", &["s"]),
    entry!("P1.M'", "p1_m_prime.json", &["s'"]),
    entry!("P2.M", "p2_m.json", &["s"]),
    entry!("P2.M'", "p2_m_prime.json", &["s'"]),
    entry!("P3.M", "p3_m.json", &["s"]),
    entry!("P3.M'", "p3_m_prime.json", &["s'"]),
    entry!("R1.M", "r1_m.json", &["s"]),
    entry!("R1.M'", "r1_m_prime.json", &["s'"]),
    entry!("P6.M", "p6_m.json", &["s"]),
    entry!("P6.M'", "p6_m_prime.json", &["s'"]),
    entry!("P7.M", "p7_m.json", &["s"]),
    entry!("P7.M'", "p7_m_prime.json", &["s'"]),
    entry!("P8.M", "p8_m.json", &["s"]),
    entry!("P8.M'", "p8_m_prime.json", &["s'"]),
    entry!("P12.M", "p12_m.json", &["s"]),
    entry!("P12.M'", "p12_m_prime.json", &["s'"]),
    entry!("P14.F1", "p14_f1.json", FRAME_POINTS),
    entry!("P14.F2", "p14_f2.json", FRAME_POINTS),
    entry!("P14.F3", "p14_f3.json", FRAME_POINTS),
    entry!("P15.F", "p15_f.json", FRAME_POINTS),
    entry!("P15.F'", "p15_f_prime.json", FRAME_POINTS),
    entry!("P16.F", "p16_f.json", FRAME_POINTS),
    entry!("P16.F'", "p16_f_prime.json", FRAME_POINTS),
];

/// A shipped model or frame.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: &'static str,
    pub document: Document,
    /// Designated points; every state for frames.
    pub points: Vec<String>,
    /// The file as shipped.
    pub source: &'static str,
}

impl Fixture {
    pub fn model(&self) -> Model {
        self.document.model()
    }

    pub fn frame(&self) -> &Frame {
        self.document.frame()
    }
}

/// Accepts `′` as well as `'` for primes.
fn normalize(id: &str) -> String {
    id.trim().replace('′', "'")
}

pub fn fixture_ids() -> Vec<&'static str> {
    CATALOGUE.iter().map(|e| e.id).collect()
}

pub fn fixture(id: &str) -> Result<Fixture, ReplicationError> {
    let want = normalize(id);
    let e = CATALOGUE
        .iter()
        .find(|e| e.id.eq_ignore_ascii_case(&want))
        .ok_or_else(|| ReplicationError::UnknownFixture(id.to_string()))?;
    let document =
        Document::parse(e.text).map_err(|source| ReplicationError::Fixture { id: e.id.to_string(), source })?;
    let points = if e.points.is_empty() {
        document.frame().labels().to_vec()
    } else {
        e.points.iter().map(|p| p.to_string()).collect()
    };
    Ok(Fixture { id: e.id, document, points, source: e.text })
}

pub fn all_fixtures() -> Result<Vec<Fixture>, ReplicationError> {
    CATALOGUE.iter().map(|e| fixture(e.id)).collect()
}

/// The fixture in the model file format, canonically serialized.
pub fn export_fixture(id: &str) -> Result<String, ReplicationError> {
    Ok(fixture(id)?.document.to_json())
}
