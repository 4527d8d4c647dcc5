"""Generating data of A-hypergeometric systems and their predicted invariants.

A system is kept as its generators: the toric binomials in ``d1..dn`` and
one Euler operator per row of ``A``. Holonomic ranks are never computed
here. :func:`predicted_stats` carries the known closed-form values with a
provenance note so a report cannot pass them off as computations.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionError
from .families import FamilyInstance
from .formats import fraction_str
from .lattice import IntegerMatrix, rational_rank
from .polytope import normalized_volume
from .toric import Binomial, parse_binomial, toric_generators

__all__ = [
    "EulerOperator",
    "HypergeometricSystem",
    "PredictedStats",
    "box_operator",
    "euler_operators",
    "assemble_system",
    "split_check",
    "predicted_stats",
    "closed_form_volume",
    "render_system",
    "parse_system_text",
    "parse_script_toric",
]


def box_operator(u: Sequence[int]) -> Binomial:
    """The toric operator ``prod_{u_i>0} d_i^{u_i} - prod_{u_i<0} d_i^{-u_i}``."""
    if not any(u):
        raise ValueError("trivial relation: u is the zero vector")
    return Binomial.from_vector(u)


def _display(b: Binomial) -> Binomial:
    # lexicographically larger monomial first, matching the usual written form
    return b if b.plus >= b.minus else Binomial(b.minus, b.plus)


@dataclass(frozen=True)
class EulerOperator:
    """``sum_j coefficients[j] x_j d_j - shift``."""

    coefficients: tuple[int, ...]
    shift: Fraction

    @property
    def support(self) -> frozenset[int]:
        return frozenset(j for j, a in enumerate(self.coefficients) if a)

    def render(self, script: bool = False) -> str:
        mul = "*" if script else " "
        out = ""
        for j, a in enumerate(self.coefficients):
            if a == 0:
                continue
            term = f"x{j + 1}{mul}d{j + 1}"
            if abs(a) != 1:
                term = f"{abs(a)}{mul}{term}"
            if not out:
                out = term if a > 0 else f"-{term}"
            else:
                out += f" + {term}" if a > 0 else f" - {term}"
        if self.shift > 0:
            out += f" - {fraction_str(self.shift)}"
        elif self.shift < 0:
            out += f" + {fraction_str(-self.shift)}"
        return out or "0"

    def __str__(self):
        return self.render()


def euler_operators(A: IntegerMatrix, beta: Sequence) -> list[EulerOperator]:
    if len(beta) != A.rows:
        raise DimensionError(f"parameter of length {len(beta)} for a matrix with {A.rows} rows")
    return [EulerOperator(A.row(i), Fraction(b)) for i, b in enumerate(beta)]


@dataclass(frozen=True)
class HypergeometricSystem:
    matrix: IntegerMatrix
    parameter: tuple[Fraction, ...]
    toric_part: tuple[Binomial, ...]
    euler_part: tuple[EulerOperator, ...]


def assemble_system(A: IntegerMatrix, beta: Sequence, pair_limit: Optional[int] = None) -> HypergeometricSystem:
    """Toric generators of ``A`` together with the Euler operators for ``beta``."""
    A.require_full_rank()
    euler = euler_operators(A, beta)
    toric = toric_generators(A, pair_limit)
    return HypergeometricSystem(A, tuple(Fraction(b) for b in beta), tuple(toric), tuple(euler))


def split_check(system: HypergeometricSystem, block_sizes: Sequence[int]) -> bool:
    """Does the system split as a sum of systems on consecutive variable blocks?

    True iff every toric generator involves variables of one block only and
    the row space of ``A`` (hence the span of the Euler operators) is the
    direct sum of its restrictions to the blocks.
    """
    n = system.matrix.cols
    if any(not isinstance(k, int) or k < 1 for k in block_sizes) or sum(block_sizes) != n:
        raise ValueError(f"block sizes {tuple(block_sizes)} do not partition {n} variables")
    owner = []
    for b, k in enumerate(block_sizes):
        owner += [b] * k
    for g in system.toric_part:
        if len({owner[j] for j in g.support}) > 1:
            return False
    rows = system.matrix.entries
    total = 0
    start = 0
    for k in block_sizes:
        total += rational_rank([row[start:start + k] for row in rows])
        start += k
    return total == rational_rank(rows)


@dataclass(frozen=True)
class PredictedStats:
    """Volume (computed) next to rank predictions taken from closed forms.

    ``rank`` is a lower bound rather than a value when
    ``rank_is_lower_bound`` is set. ``laurent_dim`` is ``None`` where no
    prediction is available, which is not the same as zero.
    """

    volume: int
    volume_closed_form: int
    rank: Optional[int]
    jump: Optional[int]
    laurent_dim: Optional[int]
    sst_bound: int
    provenance: str
    rank_is_lower_bound: bool = False

    @property
    def ratio(self) -> Optional[Fraction]:
        return None if self.rank is None else Fraction(self.rank, self.volume)

    def violations(self) -> list[str]:
        out = []
        if self.volume != self.volume_closed_form:
            out.append(f"volume {self.volume} != closed form {self.volume_closed_form}")
        if self.rank is None:
            return out
        if self.jump != self.rank - self.volume:
            out.append("jump != rank - volume")
        if self.rank < self.volume:
            out.append("rank < volume")
        if self.rank > self.sst_bound:
            out.append("rank exceeds 2^(2d) * volume")
        return out


def closed_form_volume(instance: FamilyInstance) -> int:
    r, s, v = instance.r, instance.s, instance.variant
    if v == "plain2":
        return 4
    if v == "plain3":
        return 5
    if v == "product":
        return 4**r * 5**s
    if v in ("hat", "hat_homogenized"):
        return 8**r * 10**s
    if v == "repeated":
        d0 = instance.d // r
        n0 = instance.blocks[0]
        block = IntegerMatrix([row[:n0] for row in instance.matrix.entries[:d0]])
        return normalized_volume(block) ** r
    raise ValueError(f"unknown variant {v!r}")


def predicted_stats(instance: FamilyInstance, compute_volume: bool = True) -> PredictedStats:
    """Predicted invariants of the system of ``instance``.

    With ``compute_volume`` off the closed-form volume stands in for the
    computed one, which keeps large sweeps cheap.
    """
    r, s, v = instance.r, instance.s, instance.variant
    closed = closed_form_volume(instance)
    volume = normalized_volume(instance.matrix) if compute_volume else closed
    laurent = None
    lower = False
    if v == "plain2":
        rank, laurent = 5, 2
        prov = "rank 5 for A(2), beta=(1,2) (Sturmfels-Takayama); Laurent solutions x2^2/x1, x3^2/x4"
    elif v == "plain3":
        rank, laurent = 7, 4
        prov = "rank 2d+1 = 7 for A(3), beta=(1,0,2) and 4 Laurent solutions (Matusevich-Walther)"
    elif v == "product":
        rank, laurent = 5**r * 7**s, 2**r * 4**s
        prov = "rank 5^r 7^s and Laurent dim 2^r 4^s, multiplicative over direct sums"
    elif v == "hat":
        rank = 9**r * 12**s
        prov = ("rank 9^r 12^s: holes give rank vol+1 (H2) and vol+2 (H3) (Okuyama); "
                "glue columns keep NA and Delta_A, hence the rank (Berkesch)")
    elif v == "hat_homogenized":
        rank, lower = 9**r * 12**s, True
        prov = ("lower bound 9^r 12^s: rank equals the inhomogeneous one for generic beta0 "
                "and can only grow at special beta0 (upper semicontinuity)")
    elif v == "repeated":
        rank = instance.base_rank ** r if instance.base_rank is not None else None
        prov = "rank of one copy raised to the number of copies" if rank else "no rank prediction"
    else:
        raise ValueError(f"unknown variant {v!r}")
    jump = None if rank is None else rank - volume
    sst = 2 ** (2 * instance.matrix.rows) * volume
    return PredictedStats(volume, closed, rank, jump, laurent, sst, prov, lower)


def render_system(system: HypergeometricSystem, fmt: str = "text") -> str:
    """Listing of the generators.

    ``text`` gives one ``toric:``/``euler:`` line per generator. ``script``
    gives a Macaulay2 input file (package Dmodules) computing the holonomic
    rank, with the same listing kept in comments.
    """
    A = system.matrix
    toric = [_display(b) for b in system.toric_part]
    header = [f"matrix: {A.rows} {A.cols}"]
    header += ["row: " + " ".join(str(x) for x in row) for row in A.entries]
    header.append("beta: " + ", ".join(fraction_str(b) for b in system.parameter))
    listing = [f"toric: {b.render()}" for b in toric]
    listing += [f"euler: {e.render()}" for e in system.euler_part]
    if fmt == "text":
        return "\n".join(["# " + h for h in header] + listing) + "\n"
    if fmt != "script":
        raise ValueError(f"unknown format {fmt!r}")
    n = A.cols
    xs = ",".join(f"x{j}" for j in range(1, n + 1))
    ds = ",".join(f"d{j}" for j in range(1, n + 1))
    pairs = ", ".join(f"x{j}=>d{j}" for j in range(1, n + 1))
    gens = [b.render(sep="*") for b in toric] + [e.render(script=True) for e in system.euler_part]
    lines = ["-- A-hypergeometric system H_A(beta)"]
    lines += ["-- " + h for h in header]
    lines += ["-- " + ln for ln in listing]
    lines += [
        'needsPackage "Dmodules";',
        f"W = QQ[{xs},{ds}, WeylAlgebra => {{{pairs}}}];",
        "H = ideal(",
        ",\n".join("    " + g for g in gens),
        ");",
        "print holonomicRank H;",
    ]
    return "\n".join(lines) + "\n"


def parse_system_text(text: str, n: Optional[int] = None) -> list[Binomial]:
    """Toric binomials from the ``toric:`` lines of a text rendering."""
    if n is None:
        hdr = re.search(r"matrix:\s*(\d+)\s+(\d+)", text)
        if hdr:
            n = int(hdr.group(2))
    out = []
    for line in text.splitlines():
        m = re.match(r"^\s*(?:--\s*)?toric:\s*(.+?)\s*$", line)
        if m:
            out.append(parse_binomial(m.group(1), n))
    return out


def parse_script_toric(text: str, n: Optional[int] = None) -> list[Binomial]:
    """Toric binomials from the comment listing of a script rendering."""
    return parse_system_text(text, n)
