"""riskpipe: context-sensitive risk triage, Bowtie modeling, and
Bayesian-network what-if analysis behind one deterministic pipeline."""

__version__ = "0.1.0"
