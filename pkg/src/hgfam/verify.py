"""Claim verification for family instances, and rank/volume ratio tables."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Optional

from .errors import ResourceLimitError
from .families import FamilyInstance, base_matrices, decompose_d, make_instance
from .formats import fraction_str
from .lattice import IntegerMatrix, is_homogeneous_configuration
from .polytope import ConfigPolytope, contains_point, normalized_volume, polytopes_equal
from .semigroup import GradedSemigroup, is_hole, semigroups_equal
from .system import assemble_system, predicted_stats, split_check, PredictedStats
from .toric import (
    MonomialOrder,
    ideals_equal,
    parse_binomial,
    spair_residues,
    toric_generators,
    toric_order,
)

__all__ = [
    "CLAIM_IDS",
    "INVARIANT_COVERAGE",
    "CheckResult",
    "VerificationReport",
    "verify",
    "ratio_table",
    "EXAMPLE1_GENERATORS",
]

EXAMPLE1_GENERATORS = ("d1 d4 - d2 d3", "d1^2 d3 - d2^3", "d2 d4^2 - d3^3", "d1 d3^2 - d2^2 d4")

CLAIM_IDS = (
    "shape",
    "parameter",
    "volume.closed_form",
    "volume.multiplicative",
    "glue.identities",
    "glue.membership",
    "equal_rank.semigroup",
    "equal_rank.polytope",
    "hole",
    "homogeneity",
    "stats.invariants",
    "ratio.closed_form",
    "ratio.lower_bound",
    "laurent.below_jump",
    "toric.base",
    "toric.example1",
    "toric.kernel",
    "split",
)

# Which claims establish each documented invariant of the constructors and
# of the assembled systems.
INVARIANT_COVERAGE = {
    "family: matrix shapes d x 2d and d x (6r+8s-1)": ("shape",),
    "family: parameter is the concatenation of block parameters": ("parameter",),
    "family: glue columns satisfy both defining identities": ("glue.identities",),
    "family: glue columns lie in Delta and NA of the base": ("glue.membership",),
    "family: NA and Delta_A agree with the base matrix": ("equal_rank.semigroup", "equal_rank.polytope"),
    "family: volumes 4^r 5^s and 8^r 10^s": ("volume.closed_form",),
    "system: toric generators lie in the kernel lattice": ("toric.kernel", "toric.base"),
    "system: predicted stats satisfy jump and bound identities": ("stats.invariants",),
    "system: volume is multiplicative end to end": ("volume.closed_form", "volume.multiplicative"),
    "system: ratio identity and exponential lower bound": ("ratio.closed_form", "ratio.lower_bound"),
    "system: split for direct sums, coupled for glued hats": ("split",),
}

PASS, FAIL, SKIP = "pass", "fail", "skipped"


class _Skip(Exception):
    pass


@dataclass
class CheckResult:
    claim: str
    status: str
    details: str
    elapsed: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        out = {"claim": self.claim, "status": self.status, "details": self.details}
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class VerificationReport:
    variant: str
    d: int
    r: int
    s: int
    depth: str
    checks: list[CheckResult] = field(default_factory=list)
    volume: Optional[int] = None
    ratio: Optional[Fraction] = None
    stats: Optional[PredictedStats] = None

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def resource_limited(self) -> bool:
        return any(c.status == SKIP and c.details.startswith("resource limit") for c in self.checks)

    def check(self, claim: str) -> CheckResult:
        return next(c for c in self.checks if c.claim == claim)

    def to_dict(self, timing: bool = True) -> dict:
        st = self.stats
        predicted = None
        if st is not None:
            predicted = {
                "rank": st.rank,
                "rank_is_lower_bound": st.rank_is_lower_bound,
                "jump": st.jump,
                "laurent_dim": st.laurent_dim,
                "sst_bound": st.sst_bound,
                "provenance": st.provenance,
            }
        return {
            "instance": {"variant": self.variant, "d": self.d, "r": self.r, "s": self.s},
            "depth": self.depth,
            "status": PASS if self.passed else FAIL,
            "computed": {
                "volume": self.volume,
                "ratio": None if self.ratio is None else fraction_str(self.ratio),
                "ratio_decimal": None if self.ratio is None else _decimal(self.ratio),
            },
            "predicted": predicted,
            "checks": [c.to_dict(timing) for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"instance: variant={self.variant} d={self.d} r={self.r} s={self.s} depth={self.depth}"]
        if self.volume is not None:
            lines.append(f"volume: {self.volume}")
        if self.ratio is not None:
            lines.append(f"ratio: {fraction_str(self.ratio)} ~ {_decimal(self.ratio)}")
        for c in self.checks:
            lines.append(f"[{c.status:7}] {c.claim}: {c.details}")
        lines.append(f"overall: {PASS if self.passed else FAIL}")
        return "\n".join(lines) + "\n"


def _decimal(q: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def _sqrt_decimal(q: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str((Decimal(q.numerator) / Decimal(q.denominator)).sqrt())


def _expect(cond: bool, ok: str, bad: str) -> str:
    if not cond:
        raise AssertionError(bad)
    return ok


def _closed_ratio(inst: FamilyInstance) -> Optional[Fraction]:
    if inst.variant in ("product", "plain2", "plain3"):
        return Fraction(5, 4) ** inst.r * Fraction(7, 5) ** inst.s
    if inst.variant in ("hat", "hat_homogenized"):
        return Fraction(9, 8) ** inst.r * Fraction(12, 10) ** inst.s
    return None


def _bound_base(inst: FamilyInstance) -> Optional[Fraction]:
    """``a^2`` where the ratio is claimed to be at least ``a^d``."""
    if inst.variant in ("product", "plain2", "plain3"):
        return Fraction(5, 4)
    if inst.variant in ("hat", "hat_homogenized"):
        return Fraction(9, 8)
    return None


def _block_matrices(inst: FamilyInstance) -> list[tuple[str, IntegerMatrix, tuple]]:
    bases = base_matrices()
    if inst.variant in ("hat", "hat_homogenized"):
        names = ["H2"] * inst.r + ["H3"] * inst.s
    elif inst.variant in ("product", "plain2", "plain3"):
        names = ["A2"] * inst.r + ["A3"] * inst.s
    else:
        return []
    return [(nm, bases[nm][0], bases[nm][1]) for nm in names]


def _expected_shape(inst: FamilyInstance) -> tuple[int, int]:
    d, r, s = inst.d, inst.r, inst.s
    if inst.variant in ("plain2", "plain3", "product"):
        return d, 2 * d
    if inst.variant == "hat":
        return d, 6 * r + 8 * s - 1
    if inst.variant == "hat_homogenized":
        return d + 1, 6 * r + 8 * s
    return inst.d, inst.matrix.cols


class _Checker:
    def __init__(self, inst: FamilyInstance, depth: str, toric_max_d: int, pair_limit: Optional[int]):
        self.inst = inst
        self.depth = depth
        self.toric_max_d = toric_max_d
        self.pair_limit = pair_limit
        self.stats: Optional[PredictedStats] = None
        self.hat = inst.variant in ("hat", "hat_homogenized")
        self._system = None

    # -- helpers ---------------------------------------------------------
    def need_full(self):
        if self.depth != "full":
            raise _Skip("quick depth excludes Groebner computations")

    def need_hat(self):
        if not self.hat:
            raise _Skip("not applicable: no glue construction")

    def unglued_matrix(self) -> IntegerMatrix:
        """The hat matrix (before homogenization) or the plain matrix."""
        inst = self.inst
        if inst.variant == "hat_homogenized":
            return IntegerMatrix([row[1:] for row in inst.matrix.entries[1:]])
        return inst.matrix

    def system(self):
        if self._system is None:
            self._system = assemble_system(self.inst.matrix, self.inst.parameter, self.pair_limit)
        return self._system

    # -- claims ----------------------------------------------------------
    def c_shape(self):
        inst = self.inst
        exp = _expected_shape(inst)
        if inst.variant != "repeated":
            rs = decompose_d(inst.d)
            if rs != (inst.r, inst.s):
                raise AssertionError(f"(r, s) = {(inst.r, inst.s)} but s-maximal decomposition is {rs}")
        return _expect(inst.matrix.shape == exp, f"{exp[0]}x{exp[1]}",
                       f"shape {inst.matrix.shape}, expected {exp}")

    def c_parameter(self):
        inst = self.inst
        flat = tuple(Fraction(x) for blk in inst.block_params for x in blk)
        if inst.variant == "hat_homogenized":
            flat = (inst.beta0,) + flat
        return _expect(flat == inst.parameter, "concatenation of block parameters",
                       f"parameter {inst.parameter} != {flat}")

    def c_volume_closed(self):
        st = self.stats
        return _expect(st.volume == st.volume_closed_form,
                       f"computed {st.volume} = closed form {st.volume_closed_form}",
                       f"computed {st.volume} != closed form {st.volume_closed_form}")

    def c_volume_mult(self):
        blocks = _block_matrices(self.inst)
        if not blocks:
            raise _Skip("not applicable: no known block decomposition")
        prod = 1
        for _, M, _ in blocks:
            prod *= normalized_volume(M)
        base = normalized_volume(self.inst.base_matrix)
        return _expect(prod == base == self.stats.volume,
                       f"product of block volumes {prod} = vol(base) = vol(A)",
                       f"block product {prod}, base {base}, instance {self.stats.volume}")

    def c_glue_identities(self):
        self.need_hat()
        inst = self.inst
        cols = inst.base_matrix.columns()
        glue = inst.added_columns
        if not glue:
            return "no glue columns (r + s = 1)"
        for g in glue:
            i, k = g.sum_of
            s = tuple(x + y for x, y in zip(cols[i - 1], cols[k - 1]))
            i2, k2 = g.midpoint_of
            m = tuple(Fraction(x + y, 2) for x, y in zip(cols[i2 - 1], cols[k2 - 1]))
            if s != g.vector or m != tuple(Fraction(x) for x in g.vector):
                raise AssertionError(f"column a{g.index} fails a{i}+a{k} or (a{i2}+a{k2})/2")
            if k2 != k + 1 or i != 1 or i2 != 2:
                raise AssertionError(f"column a{g.index} has unexpected defining indices")
        idx = ", ".join(f"a{g.index}=a{g.sum_of[0]}+a{g.sum_of[1]}" for g in glue)
        return f"{len(glue)} glue columns: {idx}"

    def c_glue_membership(self):
        self.need_hat()
        inst = self.inst
        if not inst.added_columns:
            return "no glue columns (r + s = 1)"
        P = ConfigPolytope.from_matrix(inst.base_matrix)
        S = GradedSemigroup(inst.base_matrix)
        for g in inst.added_columns:
            if not contains_point(P, g.vector):
                raise AssertionError(f"a{g.index} outside Delta of the base matrix")
            u = S.member(g.vector)
            if u is None or inst.base_matrix.apply(u) != g.vector:
                raise AssertionError(f"a{g.index} outside N of the base matrix")
        return f"all {len(inst.added_columns)} glue columns in Delta and N of the base"

    def c_equal_semigroup(self):
        self.need_hat()
        ok = semigroups_equal(self.inst.base_matrix, self.unglued_matrix())
        return _expect(ok, "N A_{r,s} = N A_hat", "semigroups differ")

    def c_equal_polytope(self):
        self.need_hat()
        ok = polytopes_equal(self.inst.base_matrix, self.unglued_matrix())
        return _expect(ok, "Delta A_{r,s} = Delta A_hat", "polytopes differ")

    def c_hole(self):
        self.need_hat()
        seen = {}
        for name, M, beta in _block_matrices(self.inst):
            if name not in seen:
                seen[name] = is_hole(M, beta)
        bad = [k for k, v in seen.items() if not v]
        if bad:
            raise AssertionError(f"block parameter is not a hole for {bad}")
        return "; ".join(f"{nm}: beta={','.join(map(str, base_matrices()[nm][1]))} is a hole" for nm in seen)

    def c_homogeneity(self):
        inst = self.inst
        v = inst.variant
        got = is_homogeneous_configuration(inst.matrix)
        if v == "hat":
            return _expect(not got, "not homogeneous", "hat matrix unexpectedly homogeneous")
        if v == "repeated":
            return f"homogeneous: {got}"
        return _expect(got, "homogeneous", "matrix expected to be homogeneous")

    def c_stats(self):
        bad = self.stats.violations()
        return _expect(not bad, "jump = rank - vol, vol <= rank <= 2^(2d) vol", "; ".join(bad))

    def c_ratio_closed(self):
        q = _closed_ratio(self.inst)
        if q is None or self.stats.ratio is None:
            raise _Skip("not applicable: no closed-form ratio")
        return _expect(self.stats.ratio == q, f"rank/vol = {fraction_str(q)}",
                       f"ratio {self.stats.ratio} != {q}")

    def c_ratio_bound(self):
        a2 = _bound_base(self.inst)
        if a2 is None or self.stats.ratio is None:
            raise _Skip("not applicable: no lower bound stated")
        lhs = self.stats.ratio ** 2
        rhs = a2 ** self.inst.d
        return _expect(lhs >= rhs, f"ratio^2 = {_decimal(lhs)} >= {_decimal(rhs)}",
                       f"ratio^2 {lhs} < {rhs}")

    def c_laurent(self):
        st = self.stats
        if self.inst.variant != "product" or not (self.inst.r >= 1 and self.inst.s >= 1):
            raise _Skip("not applicable: needs the product family with r, s >= 1")
        return _expect(st.laurent_dim < st.jump, f"Laurent dim {st.laurent_dim} < jump {st.jump}",
                       f"Laurent dim {st.laurent_dim} >= jump {st.jump}")

    def c_toric_base(self):
        self.need_full()
        names = sorted({nm for nm, _, _ in _block_matrices(self.inst)})
        if not names:
            raise _Skip("not applicable: no base matrices")
        msgs = []
        for nm in names:
            M = base_matrices()[nm][0]
            G = toric_generators(M, self.pair_limit)
            if any(M.apply(g.vector) != (0,) * M.rows for g in G):
                raise AssertionError(f"{nm}: generator outside the kernel lattice")
            if spair_residues(G, toric_order(M)):
                raise AssertionError(f"{nm}: S-pairs do not reduce to zero")
            balanced = all(sum(g.plus) == sum(g.minus) for g in G)
            if is_homogeneous_configuration(M) != balanced:
                raise AssertionError(f"{nm}: degree balance disagrees with homogeneity")
            msgs.append(f"{nm}: {len(G)} generators")
        return "; ".join(msgs)

    def c_toric_example1(self):
        self.need_full()
        A2 = base_matrices()["A2"][0]
        G = toric_generators(A2, self.pair_limit)
        displayed = [parse_binomial(t, 4) for t in EXAMPLE1_GENERATORS]
        ok = ideals_equal(G, displayed, MonomialOrder(4), self.pair_limit)
        return _expect(ok, "I_A(2) equals the 4 displayed generators", "I_A(2) differs")

    def _need_assembly(self):
        self.need_full()
        if self.inst.variant not in ("plain2", "plain3", "product", "hat", "hat_homogenized", "repeated"):
            raise _Skip("not applicable")
        if self.inst.d > self.toric_max_d:
            raise _Skip(f"assembly bounded to d <= {self.toric_max_d}")

    def c_toric_kernel(self):
        self._need_assembly()
        sysm = self.system()
        A = sysm.matrix
        zero = (0,) * A.rows
        bad = [g for g in sysm.toric_part if A.apply(g.vector) != zero]
        return _expect(not bad, f"{len(sysm.toric_part)} generators, all in ker A",
                       f"{len(bad)} generators outside ker A")

    def c_split(self):
        self._need_assembly()
        inst = self.inst
        got = split_check(self.system(), inst.blocks)
        if inst.variant == "hat_homogenized":
            expect = False  # the row of ones couples the zero column to every block
        else:
            expect = not (self.hat and inst.r + inst.s >= 2)
        word = "splits" if got else "coupled"
        return _expect(got == expect, f"blocks {inst.blocks}: {word}",
                       f"blocks {inst.blocks}: split_check={got}, expected {expect}")


_DISPATCH: dict[str, Callable[[_Checker], str]] = {
    "shape": _Checker.c_shape,
    "parameter": _Checker.c_parameter,
    "volume.closed_form": _Checker.c_volume_closed,
    "volume.multiplicative": _Checker.c_volume_mult,
    "glue.identities": _Checker.c_glue_identities,
    "glue.membership": _Checker.c_glue_membership,
    "equal_rank.semigroup": _Checker.c_equal_semigroup,
    "equal_rank.polytope": _Checker.c_equal_polytope,
    "hole": _Checker.c_hole,
    "homogeneity": _Checker.c_homogeneity,
    "stats.invariants": _Checker.c_stats,
    "ratio.closed_form": _Checker.c_ratio_closed,
    "ratio.lower_bound": _Checker.c_ratio_bound,
    "laurent.below_jump": _Checker.c_laurent,
    "toric.base": _Checker.c_toric_base,
    "toric.example1": _Checker.c_toric_example1,
    "toric.kernel": _Checker.c_toric_kernel,
    "split": _Checker.c_split,
}
assert tuple(_DISPATCH) == CLAIM_IDS


def verify(instance: FamilyInstance, depth: str = "quick", toric_max_d: int = 5,
           pair_limit: Optional[int] = None) -> VerificationReport:
    """Run every claim in :data:`CLAIM_IDS` against ``instance``.

    ``depth="full"`` adds the Groebner-based claims; assembling the system
    of the instance itself is limited to ``d <= toric_max_d``. Claims that
    do not apply, and claims that hit a resource limit, are reported as
    skipped with the reason.
    """
    if depth not in ("quick", "full"):
        raise ValueError(f"unknown depth {depth!r}")
    report = VerificationReport(instance.variant, instance.d, instance.r, instance.s, depth)
    chk = _Checker(instance, depth, toric_max_d, pair_limit)
    t0 = time.perf_counter()
    stats = predicted_stats(instance)
    chk.stats = report.stats = stats
    report.volume = stats.volume
    report.ratio = stats.ratio
    stats_time = time.perf_counter() - t0
    for claim in CLAIM_IDS:
        t = time.perf_counter()
        try:
            details = _DISPATCH[claim](chk)
            status = PASS
        except _Skip as e:
            status, details = SKIP, str(e)
        except ResourceLimitError as e:
            status, details = SKIP, f"resource limit: {e}"
        except AssertionError as e:
            status, details = FAIL, str(e)
        elapsed = time.perf_counter() - t
        if claim == "volume.closed_form":
            elapsed += stats_time
        report.checks.append(CheckResult(claim, status, details, elapsed))
    return report


def ratio_table(d_min: int, d_max: int, variant: str = "hat", computed: bool = False,
                beta0=0) -> list[dict]:
    """Per-dimension rows of volume, predicted rank, ratio and both bounds.

    Volumes come from the closed forms unless ``computed`` is set. The
    lower bound is ``sqrt(5)/2`` (product) or ``sqrt(9/8)`` (hat) to the
    power ``d``; its square is exact.
    """
    if not 2 <= d_min <= d_max:
        raise ValueError("need 2 <= d_min <= d_max")
    rows = []
    for d in range(d_min, d_max + 1):
        inst = make_instance(variant, d, beta0)
        st = predicted_stats(inst, compute_volume=computed)
        ratio = st.ratio
        bound_sq = _bound_base(inst) ** d
        rows.append({
            "d": d,
            "r": inst.r,
            "s": inst.s,
            "volume": st.volume,
            "rank": st.rank,
            "rank_is_lower_bound": st.rank_is_lower_bound,
            "jump": st.jump,
            "ratio": fraction_str(ratio),
            "ratio_decimal": _decimal(ratio),
            "lower_bound_squared": fraction_str(bound_sq),
            "lower_bound_decimal": _sqrt_decimal(bound_sq),
            "ratio_meets_bound": ratio * ratio >= bound_sq,
            "sst_bound": st.sst_bound,
        })
    return rows
