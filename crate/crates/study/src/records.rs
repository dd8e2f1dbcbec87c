//! Trial and rating log rows with their CSV forms.

use std::io::{Read, Write};

use bwtex_core::ChartKind;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::schedule::{Fill, Question};

pub const TRIAL_HEADER: &str =
    "participant_id,chart,fill,question,dataset_id,left,right,answer,correct,response_ms,timed_out,training";
pub const RATING_HEADER: &str = "participant_id,design_id,b1,b2,b3,b4,b5,vibratory,rank_first";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Left,
    Right,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub participant_id: String,
    pub chart: ChartKind,
    pub fill: Fill,
    pub question: Question,
    pub dataset_id: u32,
    pub left: String,
    pub right: String,
    pub answer: Answer,
    pub correct: bool,
    pub response_ms: u64,
    pub timed_out: bool,
    pub training: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatingRecord {
    pub participant_id: String,
    pub design_id: String,
    pub b1: i64,
    pub b2: i64,
    pub b3: i64,
    pub b4: i64,
    pub b5: i64,
    pub vibratory: i64,
    pub rank_first: bool,
}

impl RatingRecord {
    pub fn items(&self) -> [i64; 5] {
        [self.b1, self.b2, self.b3, self.b4, self.b5]
    }
}

fn write_rows<T: Serialize>(rows: &[T], header: &str, out: impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header.split(','))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn read_rows<T: for<'de> Deserialize<'de>>(input: impl Read, header: &str) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(input);
    let found: Vec<&str> = r.headers()?.iter().collect();
    if found.join(",") != header {
        return Err(crate::StudyError::Invalid(format!("expected header `{header}`, found `{}`", found.join(","))));
    }
    r.deserialize().map(|row| row.map_err(Into::into)).collect()
}

pub fn write_trials(rows: &[TrialRecord], out: impl Write) -> Result<()> {
    write_rows(rows, TRIAL_HEADER, out)
}

pub fn read_trials(input: impl Read) -> Result<Vec<TrialRecord>> {
    read_rows(input, TRIAL_HEADER)
}

pub fn write_ratings(rows: &[RatingRecord], out: impl Write) -> Result<()> {
    write_rows(rows, RATING_HEADER, out)
}

pub fn read_ratings(input: impl Read) -> Result<Vec<RatingRecord>> {
    read_rows(input, RATING_HEADER)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_csv_roundtrip_with_quoting() {
        let row = TrialRecord {
            participant_id: "p,1 \"x\"".into(),
            chart: ChartKind::Bar,
            fill: Fill::Iconic,
            question: Question::Fewer,
            dataset_id: 3,
            left: "corn".into(),
            right: "olives".into(),
            answer: Answer::Right,
            correct: true,
            response_ms: 1234,
            timed_out: false,
            training: false,
        };
        let mut buf = Vec::new();
        write_trials(std::slice::from_ref(&row), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(TRIAL_HEADER));
        assert!(text.contains("\"p,1 \"\"x\"\"\",bar,iconic,FEWER,3,corn,olives,right,true,1234,false,false"));
        assert_eq!(read_trials(buf.as_slice()).unwrap(), vec![row]);
    }

    #[test]
    fn wrong_header_is_rejected() {
        assert!(read_ratings("a,b\n1,2\n".as_bytes()).is_err());
    }
}
