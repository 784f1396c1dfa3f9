//! Session files: a replayable record of the requests a chain has met.
//!
//! The format is line based. Blank lines and lines starting with `#` are
//! ignored; every other line is `key=value`:
//!
//! ```text
//! format=forcing-session/1
//! point=1/3
//! ei=0
//! da=[1/2,3/4)
//! def=[0,1/2) {}
//! eef=[0,1/4) [0,1/8)
//! cover=[1/8,1/4)
//! ```
//!
//! `format` and `point` may each appear at most once, before any request.
//! The point defaults to `1/3`. Pair requests separate `e` and `f` by a
//! single space. Requests are replayed in file order against the canonical
//! families, so identical files produce identical chains.

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::engine::ChainState;
use crate::error::{Error, Result};
use crate::extenders::{Ground, Request};
use crate::interval_set::IntervalSet;
use crate::ultrafilter::PointUltrafilter;

pub const FORMAT: &str = "forcing-session/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub point: PointUltrafilter,
    pub requests: Vec<Request>,
}

impl Default for Session {
    fn default() -> Self {
        Self {
            point: PointUltrafilter::third(),
            requests: Vec::new(),
        }
    }
}

fn session_err(line: usize, message: impl Into<String>) -> Error {
    Error::Session {
        line,
        message: message.into(),
    }
}

impl Session {
    pub fn from_state(state: &ChainState) -> Self {
        Self {
            point: state.ground().u.clone(),
            requests: state.requests().to_vec(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut session = Session::default();
        let mut seen_point = false;
        let mut seen_format = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| session_err(line_no, "expected key=value"))?;
            let parse_set = |text: &str| -> Result<IntervalSet> {
                text.parse()
                    .map_err(|e| session_err(line_no, format!("{e} in {text:?}")))
            };
            let parse_pair = |text: &str| -> Result<(IntervalSet, IntervalSet)> {
                let (e, f) = text
                    .split_once(' ')
                    .ok_or_else(|| session_err(line_no, "expected two sets separated by a space"))?;
                Ok((parse_set(e)?, parse_set(f)?))
            };
            let header_allowed = session.requests.is_empty();
            match key {
                "format" => {
                    if value != FORMAT || seen_format || !header_allowed {
                        return Err(session_err(line_no, format!("unsupported or misplaced format {value:?}")));
                    }
                    seen_format = true;
                }
                "point" => {
                    if seen_point || !header_allowed {
                        return Err(session_err(line_no, "point must appear once, before requests"));
                    }
                    session.point = value
                        .parse()
                        .map_err(|e: Error| session_err(line_no, e.to_string()))?;
                    seen_point = true;
                }
                "ei" => {
                    let i: BigUint = value
                        .parse()
                        .map_err(|_| session_err(line_no, format!("bad natural {value:?}")))?;
                    session.requests.push(Request::Ei { i });
                }
                "da" => session.requests.push(Request::Da { a: parse_set(value)? }),
                "cover" => session.requests.push(Request::Cover { x: parse_set(value)? }),
                "def" => {
                    let (e, f) = parse_pair(value)?;
                    session.requests.push(Request::Def { e, f });
                }
                "eef" => {
                    let (e, f) = parse_pair(value)?;
                    session.requests.push(Request::Eef { e, f });
                }
                other => return Err(session_err(line_no, format!("unknown key {other:?}"))),
            }
        }
        Ok(session)
    }

    pub fn render(&self) -> String {
        let mut out = format!("format={FORMAT}\npoint={}\n", self.point);
        for request in &self.requests {
            let _ = match request {
                Request::Da { a } => writeln!(out, "da={a}"),
                Request::Ei { i } => writeln!(out, "ei={i}"),
                Request::Def { e, f } => writeln!(out, "def={e} {f}"),
                Request::Eef { e, f } => writeln!(out, "eef={e} {f}"),
                Request::Cover { x } => writeln!(out, "cover={x}"),
            };
        }
        out
    }

    /// Replays the requests on a fresh chain. A failing request is reported
    /// with its position in the request list.
    pub fn replay(&self) -> Result<ChainState> {
        let mut state = ChainState::new(Ground::with_point(self.point.clone()));
        for (k, request) in self.requests.iter().enumerate() {
            state.meet(request.clone()).map_err(|e| Error::Session {
                line: k + 1,
                message: format!("request #{} failed: {e}", k + 1),
            })?;
        }
        Ok(state)
    }
}
