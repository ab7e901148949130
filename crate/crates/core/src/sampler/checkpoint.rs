//! Text checkpoints of a chain and its random streams.
//!
//! Format `spinloops-checkpoint v1`, one `key value...` record per line:
//!
//! ```text
//! spinloops-checkpoint v1
//! chain 0
//! box 2 3ff0000000000000 capped
//! sqrt_q 4000000000000000
//! weighting loops            (or: weighting four_edge <lambda bits>)
//! sweeps 120
//! counters <birth tried> <birth accepted> <death tried> <death accepted> <collisions>
//! audit none                 (or: audit <checked> <mismatches> <non-unit>)
//! rng moves <seed hex> <stream> <word position>
//! rng orientations <seed hex> <stream> <word position>
//! rungs 3
//! <column> <time bits>
//! ```
//!
//! Floating-point values are stored as the hexadecimal bit pattern of the
//! `f64`, so a resumed chain continues bit-identically.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{BoundaryCondition, Rung, RungConfiguration, SpaceTimeBox};

use super::chain::{AuditLog, ChainState, Weighting};

const MAGIC: &str = "spinloops-checkpoint v1";

#[derive(Clone, Debug)]
pub struct Checkpoint {
    pub state: ChainState,
    pub moves: ChaCha8Rng,
    pub orientations: ChaCha8Rng,
}

fn bits(x: f64) -> String {
    format!("{:016x}", x.to_bits())
}

fn rng_line(name: &str, r: &ChaCha8Rng) -> String {
    let seed: String = r.get_seed().iter().map(|b| format!("{b:02x}")).collect();
    format!("rng {name} {seed} {} {}\n", r.get_stream(), r.get_word_pos())
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        let s = &self.state;
        let mut out = format!("{MAGIC}\n");
        out += &format!("chain {}\n", s.chain);
        out += &format!("box {} {} {}\n", s.bx.l(), bits(s.bx.beta()), s.bx.bc().as_str());
        out += &format!("sqrt_q {}\n", bits(s.sqrt_q));
        out += &match s.weighting {
            Weighting::Loops => "weighting loops\n".to_string(),
            Weighting::FourEdge { lambda } => format!("weighting four_edge {}\n", bits(lambda)),
        };
        out += &format!("sweeps {}\n", s.sweeps);
        let c = &s.counters;
        out += &format!(
            "counters {} {} {} {} {}\n",
            c.birth_attempted, c.birth_accepted, c.death_attempted, c.death_accepted, c.collisions
        );
        out += &match s.audit {
            None => "audit none\n".to_string(),
            Some(a) => format!("audit {} {} {}\n", a.proposals_checked, a.mismatches, a.non_unit_changes),
        };
        out += &rng_line("moves", &self.moves);
        out += &rng_line("orientations", &self.orientations);
        out += &format!("rungs {}\n", s.config.len());
        for r in s.config.iter() {
            out += &format!("{} {}\n", r.column, bits(r.time));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let bad = |what: &str| Error::Config(format!("checkpoint: {what}"));
        if lines.next() != Some(MAGIC) {
            return Err(bad("unknown header"));
        }
        let mut field = |key: &str| -> Result<Vec<String>> {
            let line = lines.next().ok_or_else(|| bad(&format!("missing '{key}'")))?;
            let mut it = line.split_whitespace();
            if it.next() != Some(key) {
                return Err(bad(&format!("expected '{key}', got '{line}'")));
            }
            Ok(it.map(str::to_string).collect())
        };
        fn int<T: std::str::FromStr>(s: Option<&String>) -> Result<T> {
            s.and_then(|x| x.parse().ok()).ok_or_else(|| Error::Config("checkpoint: bad integer".into()))
        }
        fn float(s: Option<&String>) -> Result<f64> {
            s.and_then(|x| u64::from_str_radix(x, 16).ok())
                .map(f64::from_bits)
                .ok_or_else(|| Error::Config("checkpoint: bad float bits".into()))
        }

        let chain: u64 = int(field("chain")?.first())?;
        let b = field("box")?;
        let bc: BoundaryCondition = b.get(2).ok_or_else(|| bad("box bc"))?.parse()?;
        let bx = SpaceTimeBox::new(int(b.first())?, float(b.get(1))?, bc)?;
        let sqrt_q = float(field("sqrt_q")?.first())?;
        let w = field("weighting")?;
        let weighting = match w.first().map(String::as_str) {
            Some("loops") => Weighting::Loops,
            Some("four_edge") => Weighting::FourEdge { lambda: float(w.get(1))? },
            _ => return Err(bad("weighting")),
        };
        let sweeps: u64 = int(field("sweeps")?.first())?;
        let c = field("counters")?;
        let a = field("audit")?;
        let audit = if a.first().map(String::as_str) == Some("none") {
            None
        } else {
            Some(AuditLog {
                proposals_checked: int(a.first())?,
                mismatches: int(a.get(1))?,
                non_unit_changes: int(a.get(2))?,
            })
        };
        let mut rng = |name: &str| -> Result<ChaCha8Rng> {
            let r = field("rng")?;
            if r.first().map(String::as_str) != Some(name) {
                return Err(bad(&format!("expected rng '{name}'")));
            }
            let hex = r.get(1).ok_or_else(|| bad("rng seed"))?;
            if hex.len() != 64 {
                return Err(bad("rng seed length"));
            }
            let mut seed = [0u8; 32];
            for (k, byte) in seed.iter_mut().enumerate() {
                *byte = u8::from_str_radix(&hex[2 * k..2 * k + 2], 16).map_err(|_| bad("rng seed"))?;
            }
            let mut g = ChaCha8Rng::from_seed(seed);
            g.set_stream(int(r.get(2))?);
            g.set_word_pos(int::<u128>(r.get(3))?);
            Ok(g)
        };
        let moves = rng("moves")?;
        let orientations = rng("orientations")?;
        let n: usize = int(field("rungs")?.first())?;
        let mut rungs = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines.next().ok_or_else(|| bad("truncated rung list"))?;
            let parts: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            rungs.push(Rung::new(int(parts.first())?, float(parts.get(1))?));
        }
        let config = RungConfiguration::from_rungs(&bx, rungs)?;
        let mut state = ChainState::new(bx, sqrt_q, weighting, config, chain)?;
        state.sweeps = sweeps;
        state.counters.birth_attempted = int(c.first())?;
        state.counters.birth_accepted = int(c.get(1))?;
        state.counters.death_attempted = int(c.get(2))?;
        state.counters.death_accepted = int(c.get(3))?;
        state.counters.collisions = int(c.get(4))?;
        state.audit = audit;
        Ok(Checkpoint { state, moves, orientations })
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        crate::cli::write_atomic(path, self.to_text().as_bytes())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}
