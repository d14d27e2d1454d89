"""Conditional probability tables and their canonical constructors.

A Cpt stores rows per child state over columns per parent configuration.
Parent configurations enumerate odometer-style with the first parent as
the most significant digit (itertools.product order), which is also the
order used by the flattened JSON export.

State-order conventions (fixed for byte-stable exports):
  events    {false, true}        -> true is index 1
  barriers  {works, fails}       -> works is index 0
  outcomes  {safe, consequences} -> safe is index 0
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from ..errors import EngineError, validation_error

NORMALIZATION_TOL = 1e-12

EVENT_STATES = ("false", "true")
BARRIER_STATES = ("works", "fails")


@dataclass(frozen=True)
class Cpt:
    values: tuple[tuple[float, ...], ...]  # [child state][parent config]
    parent_cards: tuple[int, ...] = ()

    @property
    def n_states(self) -> int:
        return len(self.values)

    @property
    def n_configs(self) -> int:
        return math.prod(self.parent_cards) if self.parent_cards else 1

    def __post_init__(self):
        expected = self.n_configs
        for row in self.values:
            if len(row) != expected:
                raise validation_error(
                    f"cpt row has {len(row)} entries, expected {expected}"
                )

    def column(self, config: tuple[int, ...]) -> tuple[float, ...]:
        idx = self.config_index(config)
        return tuple(row[idx] for row in self.values)

    def config_index(self, config: tuple[int, ...]) -> int:
        if len(config) != len(self.parent_cards):
            raise validation_error(
                f"config has {len(config)} parents, expected {len(self.parent_cards)}"
            )
        idx = 0
        for state, card in zip(config, self.parent_cards):
            if not 0 <= state < card:
                raise validation_error(f"parent state {state} outside card {card}")
            idx = idx * card + state
        return idx

    def configs(self):
        return itertools.product(*(range(c) for c in self.parent_cards))

    def check_normalized(self, tol: float = NORMALIZATION_TOL) -> None:
        for ci in range(self.n_configs):
            total = math.fsum(row[ci] for row in self.values)
            if abs(total - 1.0) > tol:
                raise validation_error(
                    f"cpt column {ci} sums to {total!r}, expected 1 within {tol}"
                )

    def flat(self) -> list[float]:
        """Row-major flattening: state 0 over all configs, then state 1, ..."""
        return [v for row in self.values for v in row]

    @staticmethod
    def from_flat(flat: list[float], n_states: int,
                  parent_cards: tuple[int, ...]) -> "Cpt":
        n_configs = math.prod(parent_cards) if parent_cards else 1
        if len(flat) != n_states * n_configs:
            raise validation_error(
                f"flat cpt has {len(flat)} entries, expected {n_states * n_configs}"
            )
        rows = tuple(
            tuple(flat[s * n_configs:(s + 1) * n_configs]) for s in range(n_states)
        )
        return Cpt(rows, parent_cards)


def prior(probabilities: tuple[float, ...] | list[float]) -> Cpt:
    """Root-node CPT: a single column holding the marginal distribution."""
    cpt = Cpt(tuple((p,) for p in probabilities), ())
    cpt.check_normalized()
    return cpt


def point_mass(n_states: int, state: int) -> Cpt:
    return prior(tuple(1.0 if s == state else 0.0 for s in range(n_states)))


def deterministic_cpt(n_states: int, parent_cards: tuple[int, ...],
                      choose) -> Cpt:
    """Build a deterministic table; `choose(config)` returns the child state."""
    cols = []
    for config in itertools.product(*(range(c) for c in parent_cards)):
        state = choose(config)
        cols.append(tuple(1.0 if s == state else 0.0 for s in range(n_states)))
    rows = tuple(tuple(col[s] for col in cols) for s in range(n_states))
    return Cpt(rows, tuple(parent_cards))


def cpt_or(parent_count: int) -> Cpt:
    """Deterministic OR over binary event parents: true iff any parent true."""
    if parent_count < 1:
        raise EngineError("GATE_ARITY", "OR gate requires at least one parent")
    return deterministic_cpt(
        2, (2,) * parent_count, lambda cfg: 1 if any(s == 1 for s in cfg) else 0
    )


def cpt_and(parent_count: int) -> Cpt:
    """Deterministic AND over binary event parents: true iff all parents true."""
    if parent_count < 1:
        raise EngineError("GATE_ARITY", "AND gate requires at least one parent")
    return deterministic_cpt(
        2, (2,) * parent_count, lambda cfg: 1 if all(s == 1 for s in cfg) else 0
    )


@dataclass(frozen=True)
class NoisyOrParams:
    thetas: tuple[tuple[str, float], ...]  # (parent id, influence) pairs
    leak: float = 0.0

    def __post_init__(self):
        for pid, theta in self.thetas:
            if not 0.0 <= theta <= 1.0:
                raise validation_error(f"noisy-or theta for {pid!r} outside [0,1]")
        if not 0.0 <= self.leak <= 1.0:
            raise validation_error("noisy-or leak outside [0,1]")

    @staticmethod
    def of(thetas: dict[str, float], leak: float = 0.0) -> "NoisyOrParams":
        return NoisyOrParams(tuple(thetas.items()), leak)

    def theta_for(self, parent_id: str) -> float:
        for pid, theta in self.thetas:
            if pid == parent_id:
                return theta
        raise EngineError("NOISY_OR_THETA", f"missing theta for parent {parent_id!r}")


def cpt_noisy_or(params: NoisyOrParams, parent_order: list[str] | tuple[str, ...]) -> Cpt:
    """Canonical Noisy-OR: P(true|config) = 1 - (1-leak) * prod over active
    parents of (1-theta_i). Multiplication follows parent order."""
    thetas = [params.theta_for(pid) for pid in parent_order]
    cols_miss = []
    for config in itertools.product(*((0, 1),) * len(thetas)):
        miss = 1.0 - params.leak
        for active, theta in zip(config, thetas):
            if active == 1:
                miss *= 1.0 - theta
        cols_miss.append(miss)
    return Cpt(
        (tuple(cols_miss), tuple(1.0 - m for m in cols_miss)),
        (2,) * len(thetas),
    )


def insert_parent(cpt: Cpt, position: int, card: int) -> Cpt:
    """Add a parent at `position` whose state does not (yet) affect the child:
    every existing column is duplicated across the new parent's states."""
    if not 0 <= position <= len(cpt.parent_cards):
        raise validation_error(f"insert position {position} out of range")
    new_cards = cpt.parent_cards[:position] + (card,) + cpt.parent_cards[position:]
    rows = []
    for row in cpt.values:
        new_row = []
        for config in itertools.product(*(range(c) for c in new_cards)):
            old_config = config[:position] + config[position + 1:]
            new_row.append(row[cpt.config_index(old_config)])
        rows.append(tuple(new_row))
    return Cpt(tuple(rows), new_cards)


def damp_states(cpt: Cpt, barrier_parent: int, lam: float,
                residual_state: int, damped_states: tuple[int, ...]) -> Cpt:
    """Scale the damped child states by lam when the barrier parent works;
    the removed mass moves to the residual state. Fails columns unchanged."""
    if not 0.0 <= lam <= 1.0:
        raise EngineError("PARAM_RANGE", f"damping factor {lam} outside [0,1]")
    if not 0 <= barrier_parent < len(cpt.parent_cards):
        raise validation_error(f"barrier parent position {barrier_parent} out of range")
    if cpt.parent_cards[barrier_parent] != 2:
        raise validation_error("barrier parent must be binary {works,fails}")
    columns = {}
    for config in cpt.configs():
        if config[barrier_parent] == 0:  # works
            fails_cfg = (
                config[:barrier_parent] + (1,) + config[barrier_parent + 1:]
            )
            col = list(cpt.column(fails_cfg))
            for s in damped_states:
                col[s] = lam * col[s]
            col[residual_state] = 1.0 - math.fsum(
                v for s, v in enumerate(col) if s != residual_state
            )
            columns[config] = tuple(col)
        else:
            columns[config] = cpt.column(config)
    ordered = [columns[cfg] for cfg in cpt.configs()]
    rows = tuple(tuple(col[s] for col in ordered) for s in range(cpt.n_states))
    return Cpt(rows, cpt.parent_cards)


def apply_barrier_damping(cpt: Cpt, barrier_parent: int, lam: float) -> Cpt:
    """Barrier damping on a binary event child:
    P(true | ..., works) = lam * P(true | ..., fails), false complements."""
    if cpt.n_states != 2:
        raise validation_error("barrier damping requires a binary event child")
    return damp_states(cpt, barrier_parent, lam, residual_state=0, damped_states=(1,))
