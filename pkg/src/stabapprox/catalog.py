"""Catalog of efficiently simulable one-qubit error operators and mixtures.

The catalog covers every one-qubit operation a stabilizer simulator can
inject as a random error: the 24 single-qubit Clifford unitaries and the
six measurement-induced translations (measure a Pauli axis, keep the
outcome pointing at a chosen eigenstate).  Four mixture models select
subsets of it:

    pc   Paulis only                                   (3 parameters)
    pmc  Paulis + translations                         (9 parameters)
    cc   all 23 non-identity Cliffords                 (23 parameters)
    cmc  Cliffords + translations                      (29 parameters)

The identity is never an explicit generator; it carries the leftover
probability p0 = 1 - sum(p) so every mixture is trace preserving.

Canonical generator order (parameter vectors, labels and file formats all
follow it):

    1. Paulis: X, Y, Z
    2. quarter turns about the Pauli axes, exp(-i pi/4 (+/- sigma_j)):
       S+x, S-x, S+y, S-y, S+z, S-z
    3. half turns about the octahedron edge axes,
       exp(-i pi/2 (sigma_j +/- sigma_k)/sqrt(2)) for pairs (x,y), (x,z),
       (y,z): H(x,y)+, H(x,y)-, H(x,z)+, H(x,z)-, H(y,z)+, H(y,z)-
    4. third turns about the octahedron face axes, exp(-i pi/3 sigma_F)
       with F = (s1,s2,s3)/sqrt(3): F(s1,s2,s3), sign triples ordered
       lexicographically with + before -, leftmost slot most significant
    5. translations: T|0>, T|1>, T|+>, T|->, T|+i>, T|-i>

A translation towards |f> expands to the Kraus pair
{|f><f|, |f><f_perp|} sharing a single probability; its effect is to
discard the state with that probability and replace it by |f>.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .channels import I2, X, Y, Z, ChiMatrix, KrausChannel, identity_chi, kraus_to_chi

MODELS = ("pc", "pmc", "cc", "cmc")

_AXES = (("x", X), ("y", Y), ("z", Z))

_KET0 = np.array([1.0, 0.0], dtype=complex)
_KET1 = np.array([0.0, 1.0], dtype=complex)
_KETP = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
_KETM = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)
_KETPI = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0)
_KETMI = np.array([1.0, -1.0j], dtype=complex) / np.sqrt(2.0)

# Each entry: (eigenstate name, |f>, |f_perp>), in the canonical order.
_EIGENSTATES = (
    ("|0>", _KET0, _KET1),
    ("|1>", _KET1, _KET0),
    ("|+>", _KETP, _KETM),
    ("|->", _KETM, _KETP),
    ("|+i>", _KETPI, _KETMI),
    ("|-i>", _KETMI, _KETPI),
)


@dataclass(frozen=True)
class Generator:
    """One catalog entry: label, operator family, Kraus expansion at unit
    probability, and its coefficient in the identity average fidelity."""

    label: str
    family: str  # "pauli" | "s" | "hadamard" | "face" | "translation"
    ops: tuple[np.ndarray, ...]
    fidelity_coeff: float


@dataclass(frozen=True)
class ErrorSample:
    """Outcome of drawing one error event from a mixture.

    For a translation the sampled Kraus pair acts as "replace the state by
    |f>", so the replacement eigenstate is reported alongside the label.
    """

    label: str
    replacement: str | None = None


def _rotation(generator_op: np.ndarray, angle: float) -> np.ndarray:
    """exp(-i angle n.sigma) for a unit-norm axis operator n.sigma."""
    u = np.cos(angle) * I2 - 1j * np.sin(angle) * generator_op
    u.setflags(write=False)
    return u


def _pauli_generators() -> list[Generator]:
    # |Tr sigma|^2 / 4 = 0
    return [
        Generator(label, "pauli", (mat,), 0.0)
        for label, mat in (("X", X), ("Y", Y), ("Z", Z))
    ]


def _s_generators() -> list[Generator]:
    # |Tr exp(-i pi/4 sigma)|^2 / 4 = (sqrt(2))^2 / 4 = 1/2
    out = []
    for axis, sigma in _AXES:
        for sign_label, sign in (("+", 1.0), ("-", -1.0)):
            u = _rotation(sign * sigma, np.pi / 4.0)
            out.append(Generator(f"S{sign_label}{axis}", "s", (u,), 0.5))
    return out


def _hadamard_generators() -> list[Generator]:
    # exp(-i pi/2 n.sigma) = -i n.sigma is traceless.
    out = []
    for (ax_j, sig_j), (ax_k, sig_k) in combinations(_AXES, 2):
        for sign_label, sign in (("+", 1.0), ("-", -1.0)):
            axis_op = (sig_j + sign * sig_k) / np.sqrt(2.0)
            u = _rotation(axis_op, np.pi / 2.0)
            out.append(Generator(f"H({ax_j},{ax_k}){sign_label}", "hadamard", (u,), 0.0))
    return out


def _face_generators() -> list[Generator]:
    # |Tr exp(-i pi/3 sigma_F)|^2 / 4 = |2 cos(pi/3)|^2 / 4 = 1/4
    out = []
    for sx, sy, sz in product((1.0, -1.0), repeat=3):
        axis_op = (sx * X + sy * Y + sz * Z) / np.sqrt(3.0)
        u = _rotation(axis_op, np.pi / 3.0)
        signs = ",".join("+" if s > 0 else "-" for s in (sx, sy, sz))
        out.append(Generator(f"F({signs})", "face", (u,), 0.25))
    return out


def _translation_generators() -> list[Generator]:
    # |Tr |f><f||^2/4 + |Tr |f><f_perp||^2/4 = 1/4 + 0
    out = []
    for name, ket, ket_perp in _EIGENSTATES:
        keep = np.outer(ket, ket.conj())
        swap = np.outer(ket, ket_perp.conj())
        keep.setflags(write=False)
        swap.setflags(write=False)
        out.append(Generator(f"T{name}", "translation", (keep, swap), 0.25))
    return out


@lru_cache(maxsize=None)
def enumerate_generators(model: str) -> tuple[Generator, ...]:
    """Ordered non-identity generators of a mixture model.

    pc -> 3 Paulis; pmc -> 3 + 6 translations; cc -> 23 Clifford rotations;
    cmc -> 29 generators.  The order is the canonical one documented in the
    module docstring.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}, expected one of {MODELS}")
    paulis = _pauli_generators()
    cliffords = paulis + _s_generators() + _hadamard_generators() + _face_generators()
    translations = _translation_generators()
    gens = {
        "pc": paulis,
        "pmc": paulis + translations,
        "cc": cliffords,
        "cmc": cliffords + translations,
    }[model]
    return tuple(gens)


@lru_cache(maxsize=None)
def clifford_unitaries() -> tuple[tuple[str, np.ndarray], ...]:
    """All 24 single-qubit Clifford unitaries (identity included), labeled."""
    out = [("I", I2)]
    for gen in enumerate_generators("cc"):
        out.append((gen.label, gen.ops[0]))
    return tuple(out)


def identity_fidelity_coefficients(model: str, kind: str = "avg") -> np.ndarray:
    """Per-generator coefficients c_a of the identity average fidelity.

    For a mixture with generator probabilities p the average fidelity
    against the identity is linear: F = p0 + sum_a c_a p_a with
    p0 = 1 - sum(p).  The worst-case fidelity has no such linear form, so
    only kind="avg" is supported.
    """
    if kind != "avg":
        raise ValueError("only the average fidelity constraint has a linear form")
    return np.array([g.fidelity_coeff for g in enumerate_generators(model)])


@dataclass(frozen=True)
class MixtureParams:
    """Probabilities for the non-identity generators of one model, in
    canonical order.  All entries must be >= 0 and sum to at most 1."""

    model: str
    probs: np.ndarray

    def __post_init__(self) -> None:
        n = len(enumerate_generators(self.model))
        probs = np.array(self.probs, dtype=float)
        if probs.shape != (n,):
            raise ValueError(
                f"model {self.model!r} takes {n} probabilities, got shape {probs.shape}"
            )
        if float(probs.min(initial=0.0)) < 0.0:
            raise ValueError(f"negative probability: {probs.min()}")
        if float(probs.sum()) > 1.0 + 1e-12:
            raise ValueError(f"probabilities sum to {probs.sum()} > 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def identity_prob(self) -> float:
        return max(0.0, 1.0 - float(self.probs.sum()))


def build_mixture(params: MixtureParams) -> KrausChannel:
    """Kraus channel of a generator mixture.

    The channel applies generator a with probability p_a and the identity
    with the leftover probability; operators with zero probability are
    omitted.
    """
    ops: list[np.ndarray] = []
    p0 = params.identity_prob
    if p0 > 0.0:
        ops.append(np.sqrt(p0) * I2)
    for gen, p in zip(enumerate_generators(params.model), params.probs):
        if p > 0.0:
            ops.extend(np.sqrt(p) * k for k in gen.ops)
    return KrausChannel(tuple(ops))


@lru_cache(maxsize=None)
def generator_chis(model: str) -> np.ndarray:
    """Process matrices of the unit-probability generator channels,
    stacked in canonical order (shape (n, 4, 4))."""
    mats = [
        kraus_to_chi(KrausChannel(gen.ops)).matrix
        for gen in enumerate_generators(model)
    ]
    out = np.stack(mats)
    out.setflags(write=False)
    return out


def mixture_chi(params: MixtureParams) -> ChiMatrix:
    """Process matrix of a mixture, computed through its linearity in the
    probabilities: chi(p) = (1 - sum p) chi_I + sum_a p_a chi_a."""
    chis = generator_chis(params.model)
    m = params.identity_prob * identity_chi().matrix
    m = m + np.tensordot(params.probs, chis, axes=1)
    return ChiMatrix(m)


def _sampling_table(params: MixtureParams) -> tuple[np.ndarray, np.ndarray]:
    gens = enumerate_generators(params.model)
    labels = np.array(["I"] + [g.label for g in gens])
    weights = np.concatenate(([params.identity_prob], params.probs))
    total = weights.sum()
    if not np.isfinite(total) or total <= 0.0:
        raise ValueError("mixture has no probability mass to sample from")
    return labels, weights / total


def sample_errors(params: MixtureParams, rng: np.random.Generator, size: int) -> np.ndarray:
    """Draw many error labels at once; "I" marks the no-error event."""
    labels, weights = _sampling_table(params)
    idx = rng.choice(len(labels), size=size, p=weights)
    return labels[idx]


def sample_error(params: MixtureParams, rng: np.random.Generator) -> ErrorSample:
    """Draw one error event from the mixture.

    Translations report the eigenstate that replaces the state; unitary
    errors and the identity report only their label.
    """
    label = str(sample_errors(params, rng, 1)[0])
    replacement = label[1:] if label.startswith("T|") else None
    return ErrorSample(label, replacement)
