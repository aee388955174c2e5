//! The certification engine and its replayable certificates.
//!
//! A representation over Q (or Q(t)) is saturated to a free lattice over Z
//! (or Z[t]) and reduced at primes in a fixed order. Over Z, one prime with
//! an irreducible reduction certifies, since every localization of Z is
//! regular. Over Z[t], a maximal ideal `(p, t − c)` reaches F_p directly and
//! its localization is regular local; a height-one prime `(t − c)` reduces
//! to a representation over Q, certified recursively, and its localization
//! is a DVR. When no prime decides, a MeatAxe run over K may still exhibit
//! an invariant subspace.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::primes::primes;
use crate::algebra::subspace::Subspace;
use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::{self, integral_base, PrimeKind, PrimeSpec, Saturation};
use crate::meataxe::{self, MeataxeConfig, StatusTag, VerdictRecord};
use crate::rep::{parse_vectors, vector_strings, Representation};

pub const FORMAT: &str = "irredcert-certificate";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Automatic prime candidates per run.
pub const MAX_AUTO_PRIMES: usize = 50;
/// Specialization points `c` for `(t − c)` and `(p, t − c)`.
pub const LINEAR_POINTS: [i64; 3] = [0, 1, -1];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyConfig {
    /// Explicit primes, tried in order; `None` selects them automatically.
    pub primes: Option<Vec<String>>,
    pub seed: u64,
    pub budget: usize,
    pub saturation_rounds: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            primes: None,
            seed: 0,
            budget: meataxe::DEFAULT_BUDGET,
            saturation_rounds: lattice::DEFAULT_ROUNDS,
        }
    }
}

impl CertifyConfig {
    fn meataxe(&self) -> MeataxeConfig {
        MeataxeConfig { seed: self.seed, budget: self.budget }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "DVR")]
    Dvr,
    RegularOnePrime,
    HeightOneFamily,
    DirectOverK,
}

/// Why an irreducible reduction at this prime would transfer to K.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Justification {
    /// `(p)` in Z: the localization is regular (a DVR).
    RegularDomain,
    /// `(p, t − c)` in Z[t]: the localization is regular local.
    RegularLocal,
    /// `(t − c)` in Z[t]: the localization is a DVR.
    #[serde(rename = "DVR")]
    Dvr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum StepOutcome {
    BadPrime { generator: usize },
    Verdict(VerdictRecord),
    SubCertificate { certificate: Box<Certificate> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub prime: String,
    pub residue_field: String,
    pub justification: Justification,
    pub outcome: StepOutcome,
}

impl Step {
    fn certifies(&self) -> bool {
        match &self.outcome {
            StepOutcome::Verdict(v) => v.status == StatusTag::Irreducible,
            StepOutcome::SubCertificate { certificate } => certificate.conclusion == Conclusion::IrreducibleCertified,
            StepOutcome::BadPrime { .. } => false,
        }
    }

    fn reducible(&self) -> bool {
        matches!(&self.outcome, StepOutcome::Verdict(v) if v.status == StatusTag::Reducible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Conclusion {
    IrreducibleCertified,
    ReducibleWithWitness {
        basis: Vec<Vec<String>>,
    },
    Inconclusive {
        reason: String,
        /// Primes with a reducible reduction. This is not evidence of
        /// reducibility over K.
        reducible_at: Vec<String>,
    },
}

pub const NO_INTEGRAL_MODEL: &str = "no-integral-model";
pub const NO_IRREDUCIBLE_REDUCTION: &str = "no-irreducible-reduction";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub version: String,
    /// sha256 of the canonical representation text.
    pub input_digest: String,
    pub config: CertifyConfig,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub base_ring: Option<String>,
    /// Lattice basis (columns) over Q.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lattice: Option<Vec<Vec<String>>>,
    pub steps: Vec<Step>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub direct_probe: Option<VerdictRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rule: Option<Rule>,
    /// The primes whose reductions carry the conclusion.
    pub family: Vec<String>,
    pub conclusion: Conclusion,
    /// sha256 of this certificate serialized with an empty digest.
    pub digest: String,
}

fn sha256_hex(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

pub fn input_digest(rep: &Representation) -> String {
    sha256_hex(&rep.to_canonical_json())
}

impl Certificate {
    pub fn compute_digest(&self) -> String {
        let mut unsigned = self.clone();
        unsigned.digest.clear();
        sha256_hex(&serde_json::to_string(&unsigned).expect("serializable"))
    }

    fn seal(mut self) -> Self {
        self.digest = self.compute_digest();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn justification(kind: &PrimeKind) -> Result<Justification> {
    match kind {
        PrimeKind::IntegerPrime(_) => Ok(Justification::RegularDomain),
        PrimeKind::MaximalPair(..) => Ok(Justification::RegularLocal),
        PrimeKind::LinearPoly(_) => Ok(Justification::Dvr),
        PrimeKind::Zero => Err(Error::ZeroIdeal),
    }
}

/// Automatic candidates: ascending primes of Z, or `(p, t − c)` followed by
/// `(t − c)` over Z[t]. Primes where a generator degenerates are skipped.
fn auto_primes(sat: &Saturation) -> Vec<PrimeSpec> {
    let base = sat.int_rep.ring().clone();
    let good = |p: &PrimeSpec| lattice::reduce(&sat.int_rep, &sat.lattice, p).is_ok();
    let make = |k: PrimeKind| PrimeSpec::new(&base, k).expect("valid candidate");
    if base == Ring::Integers {
        return primes().map(|p| make(PrimeKind::IntegerPrime(p))).filter(good).take(MAX_AUTO_PRIMES).collect();
    }
    let mut out: Vec<PrimeSpec> = primes()
        .flat_map(|p| LINEAR_POINTS.map(|c| make(PrimeKind::MaximalPair(p, c))))
        .take(4 * MAX_AUTO_PRIMES)
        .filter(good)
        .take(MAX_AUTO_PRIMES)
        .collect();
    out.extend(LINEAR_POINTS.iter().map(|&c| make(PrimeKind::LinearPoly(c))).filter(good));
    out
}

fn run_step(sat: &Saturation, p: &PrimeSpec, cfg: &CertifyConfig) -> Result<Step> {
    let justification = justification(p.kind())?;
    let outcome = match lattice::reduce(&sat.int_rep, &sat.lattice, p) {
        Err(Error::BadPrime { generator, .. }) => StepOutcome::BadPrime { generator },
        Err(e) => return Err(e),
        Ok(reduced) => match p.kind() {
            PrimeKind::LinearPoly(_) => {
                let sub_cfg = CertifyConfig { primes: None, ..cfg.clone() };
                let sub = certify(&reduced, &sub_cfg, Exec::Sequential)?;
                StepOutcome::SubCertificate { certificate: Box::new(sub) }
            }
            _ => StepOutcome::Verdict(meataxe::is_irreducible(&reduced, &cfg.meataxe()).record()),
        },
    };
    Ok(Step { prime: p.to_string(), residue_field: p.residue_field().to_string(), justification, outcome })
}

/// Run steps in order until one certifies. Parallel runs evaluate chunks
/// concurrently and keep the same prefix a sequential run would.
fn run_steps(sat: &Saturation, candidates: &[PrimeSpec], cfg: &CertifyConfig, exec: Exec) -> Result<Vec<Step>> {
    let mut steps = Vec::new();
    for chunk in candidates.chunks(exec.width().max(1)) {
        let results = exec.map_slice(chunk, |p| run_step(sat, p, cfg));
        for r in results {
            let step = r?;
            let done = step.certifies();
            steps.push(step);
            if done {
                return Ok(steps);
            }
        }
    }
    Ok(steps)
}

fn base_certificate(rep: &Representation, cfg: &CertifyConfig) -> Certificate {
    Certificate {
        format: FORMAT.into(),
        version: VERSION.into(),
        input_digest: input_digest(rep),
        config: cfg.clone(),
        field: rep.ring().fraction_field().to_string(),
        base_ring: None,
        lattice: None,
        steps: Vec::new(),
        direct_probe: None,
        rule: None,
        family: Vec::new(),
        conclusion: Conclusion::Inconclusive { reason: NO_INTEGRAL_MODEL.into(), reducible_at: Vec::new() },
        digest: String::new(),
    }
}

/// Certify irreducibility of a representation over Q or Q(t) (or Z, Z[t]).
pub fn certify(rep: &Representation, cfg: &CertifyConfig, exec: Exec) -> Result<Certificate> {
    let base = integral_base(rep.ring())?;
    let explicit = cfg
        .primes
        .as_ref()
        .map(|list| list.iter().map(|s| PrimeSpec::parse(&base, s)).collect::<Result<Vec<_>>>())
        .transpose()?;
    if let Some(list) = &explicit {
        list.iter().try_for_each(|p| justification(p.kind()).map(drop))?;
    }
    let mut cert = base_certificate(rep, cfg);
    let sat = match lattice::saturate(rep, cfg.saturation_rounds) {
        Ok(sat) => sat,
        Err(Error::BudgetExceeded { .. } | Error::UnsupportedLattice(_)) => return Ok(cert.seal()),
        Err(e) => return Err(e),
    };
    cert.base_ring = Some(base.to_string());
    cert.lattice = Some(sat.lattice.to_strings());
    let candidates = explicit.unwrap_or_else(|| auto_primes(&sat));

    let k_rep = rep.over_fraction_field();
    let probe = || meataxe::is_irreducible(&k_rep, &cfg.meataxe());
    let (steps, early_probe) = if exec.width() > 1 {
        let (s, p) = exec.join(|| run_steps(&sat, &candidates, cfg, exec), || Some(probe()));
        (s?, p)
    } else {
        (run_steps(&sat, &candidates, cfg, exec)?, None)
    };
    cert.steps = steps;

    if let Some(last) = cert.steps.last().filter(|s| s.certifies()) {
        let (rule, mut family) = match &last.outcome {
            StepOutcome::SubCertificate { certificate } => (Rule::HeightOneFamily, certificate.family.clone()),
            _ => (Rule::RegularOnePrime, Vec::new()),
        };
        family.insert(0, last.prime.clone());
        cert.rule = Some(rule);
        cert.family = family;
        cert.conclusion = Conclusion::IrreducibleCertified;
        return Ok(cert.seal());
    }

    let verdict = early_probe.unwrap_or_else(probe);
    cert.direct_probe = Some(verdict.record());
    cert.conclusion = match verdict.status.witness() {
        Some(w) => {
            cert.rule = Some(Rule::DirectOverK);
            Conclusion::ReducibleWithWitness { basis: w.basis().iter().map(|v| vector_strings(v)).collect() }
        }
        None => Conclusion::Inconclusive {
            reason: NO_IRREDUCIBLE_REDUCTION.into(),
            reducible_at: cert.steps.iter().filter(|s| s.reducible()).map(|s| s.prime.clone()).collect(),
        },
    };
    Ok(cert.seal())
}

/// Certify many representations with one configuration.
pub fn certify_batch(reps: &[Representation], cfg: &CertifyConfig, exec: Exec) -> Vec<Result<Certificate>> {
    exec.map_slice(reps, |r| certify(r, cfg, Exec::Sequential))
}

/// A proper nonzero subspace invariant under every generator.
fn check_witness(rep: &Representation, basis: &[Vec<String>]) -> bool {
    let Ok(vectors) = parse_vectors(rep.ring(), basis) else { return false };
    if vectors.iter().any(|v| v.len() != rep.dim()) {
        return false;
    }
    let w = Subspace::spanned_by(rep.ring(), rep.dim(), &vectors);
    w.dim() == vectors.len() && w.dim() > 0 && w.dim() < rep.dim() && w.is_invariant(rep.generators())
}

/// Witness checks for every recorded reducible reduction.
fn check_steps(cert: &Certificate, rep: &Representation) -> bool {
    let Ok(base) = integral_base(rep.ring()) else { return false };
    let Ok(sat) = lattice::saturate(rep, cert.config.saturation_rounds) else { return false };
    cert.steps.iter().all(|step| {
        let Ok(p) = PrimeSpec::parse(&base, &step.prime) else { return false };
        if p.residue_field().to_string() != step.residue_field {
            return false;
        }
        match (&step.outcome, lattice::reduce(&sat.int_rep, &sat.lattice, &p)) {
            (StepOutcome::BadPrime { generator }, Err(Error::BadPrime { generator: g, .. })) => *generator == g,
            (StepOutcome::Verdict(v), Ok(reduced)) => match (&v.status, &v.witness) {
                (StatusTag::Reducible, Some(w)) => check_witness(&reduced, w),
                (StatusTag::Reducible, None) => false,
                (_, w) => w.is_none(),
            },
            (StepOutcome::SubCertificate { certificate }, Ok(reduced)) => {
                matches!(p.kind(), PrimeKind::LinearPoly(_)) && verify(certificate, &reduced).unwrap_or(false)
            }
            _ => false,
        }
    })
}

/// Replay a certificate against the representation it claims to certify.
///
/// Returns `Ok(false)` on any mismatch. A certificate that is intact but was
/// produced by another toolkit version is an error.
pub fn verify(cert: &Certificate, rep: &Representation) -> Result<bool> {
    if cert.digest != cert.compute_digest() {
        return Ok(false);
    }
    if cert.format != FORMAT || cert.version != VERSION {
        return Err(Error::VersionMismatch { found: format!("{} {}", cert.format, cert.version), expected: format!("{FORMAT} {VERSION}") });
    }
    if cert.input_digest != input_digest(rep) {
        return Ok(false);
    }
    let consistent = match &cert.conclusion {
        Conclusion::IrreducibleCertified => {
            cert.steps.last().is_some_and(Step::certifies)
                && matches!(cert.rule, Some(Rule::RegularOnePrime | Rule::HeightOneFamily))
        }
        Conclusion::ReducibleWithWitness { basis } => {
            cert.rule == Some(Rule::DirectOverK) && check_witness(&rep.over_fraction_field(), basis)
        }
        Conclusion::Inconclusive { .. } => cert.rule.is_none(),
    };
    let steps_ok = (cert.base_ring.is_none() && cert.steps.is_empty()) || check_steps(cert, rep);
    if !consistent || !steps_ok {
        return Ok(false);
    }
    match certify(rep, &cert.config, Exec::Sequential) {
        Ok(replayed) => Ok(&replayed == cert),
        Err(_) => Ok(false),
    }
}
