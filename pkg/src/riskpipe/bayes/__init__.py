"""Bayesian network core: CPT constructors, exact inference, interventions."""

from .cpt import (
    BARRIER_STATES,
    EVENT_STATES,
    Cpt,
    NoisyOrParams,
    apply_barrier_damping,
    cpt_and,
    cpt_noisy_or,
    cpt_or,
    damp_states,
    deterministic_cpt,
    insert_parent,
    point_mass,
    prior,
)
from .inference import JointTable, enumerate_joint, infer
from .intervene import do_intervene, whatif
from .model import BayesNode, DagModel, Evidence, Intervention, Posterior

__all__ = [
    "BARRIER_STATES",
    "BayesNode",
    "Cpt",
    "DagModel",
    "EVENT_STATES",
    "Evidence",
    "Intervention",
    "JointTable",
    "NoisyOrParams",
    "Posterior",
    "apply_barrier_damping",
    "cpt_and",
    "cpt_noisy_or",
    "cpt_or",
    "damp_states",
    "deterministic_cpt",
    "do_intervene",
    "enumerate_joint",
    "infer",
    "insert_parent",
    "point_mass",
    "prior",
    "whatif",
]
