"""Classification and construction of graded locally nilpotent derivations.

Everything revolves around admissible tuples: a choice of one variable
per block. Writing Big(c) for the blocks whose chosen variable carries
an exponent above 1, a tuple is admissible when

* type 1: |Big| <= 1 (one derivation class per tuple), or
* type 2, case A: |Big| <= 2, recorded with the ordered pairs (i1, i2)
  of blocks that can play the two distinguished roles, or
* type 2, case B: |Big| = 3 and some pair inside Big consists of blocks
  whose chosen exponent is exactly 2 with every exponent even.

Derivations are built from explicit partial-derivative formulas on two
distinguished blocks; the remaining images are forced by the relations
and recovered by exact division. Case B formulas need square roots of
coefficient ratios inside Q(i); when those do not exist the build
raises NeedsNormalization rather than moving to a field extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Tuple

from .derivation import Derivation, is_well_defined
from .gaussian import I, ONE, GaussianRational, gq, gq_format, gq_sqrt
from .grading import weight_assignment
from .poly import (
    Gen,
    NotDivisible,
    Poly,
    exact_divide,
    gen_name,
    partial_derivative,
    poly_format,
    svar,
    tvar,
)
from .presentation import AssumptionViolated, TrinomialPresentation


class WrongType(TypeError):
    """Operation defined for the other presentation type."""


class InadmissibleTuple(ValueError):
    """The tuple fails the admissibility predicate."""


class InadmissibleDescriptor(ValueError):
    """A derivation descriptor that does not match any classified case."""


class NoSuchFreeVariable(ValueError):
    """Free variable index out of range."""


class NeedsNormalization(ValueError):
    """Construction requires a root of a coefficient ratio missing in Q(i)."""

    def __init__(self, message, ratio=None, order=None):
        super().__init__(message)
        self.ratio = ratio
        self.order = order


class ExactDivisionFailed(RuntimeError):
    """A structurally guaranteed division failed; this signals a bug."""


DEFAULT_LAMBDAS = (gq(0), gq(1), gq(-1), I, -I, gq(2), gq(1, 1))


@dataclass(frozen=True)
class AdmissibleTuple:
    c: Tuple[int, ...]
    case: str  # "Type1" | "A" | "B"
    big: Tuple[int, ...]
    labelings: Tuple = ()

    def to_dict(self):
        data = {"c": list(self.c), "case": self.case, "big": list(self.big)}
        if self.case != "Type1":
            data["labelings"] = [list(lab) for lab in self.labelings]
        return data


@dataclass(frozen=True)
class LndDescriptor:
    kind: str  # "free" | "type1" | "t2a" | "t2b" | "t2c" | "t2d"
    k: Optional[int] = None
    c: Optional[Tuple[int, ...]] = None
    roles: Optional[Tuple[int, int, int]] = None
    param: Optional[GaussianRational] = None

    def to_dict(self):
        out = {"kind": self.kind}
        if self.k is not None:
            out["k"] = self.k
        if self.c is not None:
            out["c"] = list(self.c)
        if self.roles is not None:
            out["roles"] = list(self.roles)
        if self.param is not None:
            out["param"] = gq_format(self.param)
        return out


def _case_b_pair_ok(P: TrinomialPresentation, i: int, ci: int) -> bool:
    exps = P.exponents(i)
    return exps[ci - 1] == 2 and all(e % 2 == 0 for e in exps)


def _tuple_info(P: TrinomialPresentation, c) -> AdmissibleTuple:
    """Validate and classify a tuple; raises InadmissibleTuple."""
    nums = list(P.block_numbers)
    c = tuple(c)
    if len(c) != len(nums):
        raise InadmissibleTuple(f"tuple must pick one variable in each of {len(nums)} blocks")
    for i, ci in zip(nums, c):
        if not isinstance(ci, int) or not 1 <= ci <= P.block_size(i):
            raise InadmissibleTuple(f"index {ci!r} out of range in block {i}")
    cmap = dict(zip(nums, c))
    big = tuple(i for i in nums if P.exponents(i)[cmap[i] - 1] > 1)
    if P.kind == 1:
        if len(big) > 1:
            raise InadmissibleTuple(
                f"two blocks {big[0]} and {big[1]} have exponent above 1 at the tuple"
            )
        return AdmissibleTuple(c=c, case="Type1", big=big)
    if len(big) <= 2:
        pairs = tuple(
            (i1, i2)
            for i1 in nums
            for i2 in nums
            if i1 != i2 and set(big) <= {i1, i2}
        )
        return AdmissibleTuple(c=c, case="A", big=big, labelings=pairs)
    if len(big) == 3:
        bigs = sorted(big)
        triples = []
        for x in range(3):
            for y in range(x + 1, 3):
                i1, i2 = bigs[x], bigs[y]
                (i3,) = [b for b in bigs if b not in (i1, i2)]
                if _case_b_pair_ok(P, i1, cmap[i1]) and _case_b_pair_ok(P, i2, cmap[i2]):
                    triples.append((i1, i2, i3))
        if triples:
            return AdmissibleTuple(c=c, case="B", big=big, labelings=tuple(triples))
        raise InadmissibleTuple(
            "three blocks have exponent above 1 at the tuple but no pair of them "
            "is even with chosen exponent 2"
        )
    raise InadmissibleTuple(
        f"{len(big)} blocks have exponent above 1 at the tuple, at most 3 are allowed"
    )


def admissible_tuples(P: TrinomialPresentation):
    """All admissible tuples in lexicographic order."""
    ranges = [range(1, P.block_size(i) + 1) for i in P.block_numbers]
    out = []
    for combo in product(*ranges):
        try:
            out.append(_tuple_info(P, combo))
        except InadmissibleTuple:
            continue
    return out


def _case_a_infinite(P: TrinomialPresentation, info: AdmissibleTuple):
    """Witness (B0, B1) for the divisibility condition, or None.

    The class family becomes infinite when for some ordered labeling
    (B0, B1) the chosen exponent m of B0 divides every exponent in both
    distinguished blocks.
    """
    cmap = dict(zip(P.block_numbers, info.c))
    for i1, i2 in info.labelings:
        m = P.exponents(i1)[cmap[i1] - 1]
        if all(e % m == 0 for i in (i1, i2) for e in P.exponents(i)):
            return (i1, i2)
    return None


def _roots_exist(P: TrinomialPresentation, lab, need_gamma: bool) -> bool:
    alpha, beta, gamma = P.triple_coefficients(*lab)
    if gq_sqrt(beta / alpha) is None:
        return False
    return not need_gamma or gq_sqrt(gamma / alpha) is not None


def _preferred_case_b_labeling(P: TrinomialPresentation, info: AdmissibleTuple):
    """First labeling whose coefficient ratio is a square in Q(i), if any.

    Labelings are interchangeable mathematically, but only some may be
    buildable without extending the field, so those are preferred.
    """
    for lab in info.labelings:
        if _roots_exist(P, lab, need_gamma=False):
            return lab
    return info.labelings[0]


def _case_b_infinite(P: TrinomialPresentation, info: AdmissibleTuple):
    """Witness labeling for the even third block condition, or None."""
    cmap = dict(zip(P.block_numbers, info.c))
    qualifying = [lab for lab in info.labelings if _case_b_pair_ok(P, lab[2], cmap[lab[2]])]
    if not qualifying:
        return None
    for lab in qualifying:
        if _roots_exist(P, lab, need_gamma=True):
            return lab
    return qualifying[0]


def free_variable_lnd(P: TrinomialPresentation, k: int) -> Derivation:
    if not isinstance(k, int) or not 1 <= k <= P.d:
        raise NoSuchFreeVariable(f"presentation has {P.d} free variables, asked for {k}")
    return Derivation(P, {svar(k): Poly.constant(1)})


def build_lnd_type1(P: TrinomialPresentation, c) -> Derivation:
    """The tuple derivation: each chosen variable maps to the product of
    the other blocks' partials, everything else to zero."""
    if P.kind != 1:
        raise WrongType("this construction is for type 1; use build_lnd_type2")
    info = _tuple_info(P, c)
    cmap = dict(zip(P.block_numbers, info.c))
    partials = {
        i: partial_derivative(P.block_power(i), tvar(i, cmap[i])) for i in P.block_numbers
    }
    images = {}
    for i in P.block_numbers:
        img = Poly.constant(1)
        for k in P.block_numbers:
            if k != i:
                img = img * partials[k]
        images[tvar(i, cmap[i])] = img
    delta = Derivation(P, images)
    report = is_well_defined(delta)
    assert report.ok, f"type 1 construction broke relation {report.relation_index}"
    return delta


@dataclass(frozen=True)
class _Type2Context:
    info: AdmissibleTuple
    cmap: dict
    roles: Tuple[int, int, int]
    alpha: GaussianRational
    beta: GaussianRational
    gamma: GaussianRational


def _type2_context(P: TrinomialPresentation, desc: LndDescriptor) -> _Type2Context:
    if P.kind != 2:
        raise WrongType("this construction is for type 2; use build_lnd_type1")
    if desc.c is None or desc.roles is None:
        raise InadmissibleDescriptor("descriptor needs a tuple and role blocks")
    info = _tuple_info(P, desc.c)
    cmap = dict(zip(P.block_numbers, info.c))
    roles = tuple(desc.roles)
    if len(roles) != 3 or len(set(roles)) != 3 or any(
        i not in P.block_numbers for i in roles
    ):
        raise InadmissibleDescriptor(f"roles must be three distinct blocks, got {roles}")
    B0, B1, B2 = roles
    if desc.kind in ("t2a", "t2b"):
        if info.case != "A":
            raise InadmissibleDescriptor(f"tuple is case {info.case}, descriptor wants case A")
        if (B0, B1) not in info.labelings:
            raise InadmissibleDescriptor(f"({B0},{B1}) is not a valid labeling for this tuple")
        if P.exponents(B2)[cmap[B2] - 1] != 1:
            raise InadmissibleDescriptor(f"third role block {B2} must have exponent 1 at the tuple")
        if desc.kind == "t2b":
            m = P.exponents(B0)[cmap[B0] - 1]
            if any(e % m for i in (B0, B1) for e in P.exponents(i)):
                raise InadmissibleDescriptor(
                    f"exponent {m} of the first role block must divide both distinguished blocks"
                )
            if desc.param is None or not desc.param:
                raise InadmissibleDescriptor("this family needs a nonzero parameter")
    elif desc.kind in ("t2c", "t2d"):
        if info.case != "B":
            raise InadmissibleDescriptor(f"tuple is case {info.case}, descriptor wants case B")
        key = (min(B0, B1), max(B0, B1), B2)
        if key not in info.labelings:
            raise InadmissibleDescriptor(f"({B0},{B1},{B2}) is not a valid labeling for this tuple")
        if desc.kind == "t2c":
            if desc.param is None or desc.param * desc.param != gq(-1):
                raise InadmissibleDescriptor("parameter must be i or -i")
        else:
            if not _case_b_pair_ok(P, B2, cmap[B2]):
                raise InadmissibleDescriptor(
                    f"third block {B2} must be even with chosen exponent 2 for this family"
                )
            if desc.param is None:
                raise InadmissibleDescriptor("this family needs a parameter value")
    else:
        raise InadmissibleDescriptor(f"unknown type 2 descriptor kind {desc.kind!r}")
    alpha, beta, gamma = P.triple_coefficients(B0, B1, B2)
    return _Type2Context(info=info, cmap=cmap, roles=roles, alpha=alpha, beta=beta, gamma=gamma)


def _sqrt_or_raise(ratio: GaussianRational, what: str) -> GaussianRational:
    root = gq_sqrt(ratio)
    if root is None:
        raise NeedsNormalization(
            f"{what} requires a square root of {gq_format(ratio)} in Q(i); rescale the "
            "presentation first",
            ratio=ratio,
            order=2,
        )
    return root


def build_lnd_type2(P: TrinomialPresentation, desc: LndDescriptor) -> Derivation:
    """Construct the derivation described by desc on a type 2 presentation.

    The two distinguished images follow the classified formulas; the
    image of the third role block and of every other block is solved
    from the triple relation through that block, an exact division by a
    monomial. A division failure is a bug and raises ExactDivisionFailed.
    """
    ctx = _type2_context(P, desc)
    B0, B1, B2 = ctx.roles
    cmap = ctx.cmap
    multiplier = Poly.constant(1)
    for i in P.block_numbers:
        if i not in ctx.roles:
            multiplier = multiplier * partial_derivative(P.block_power(i), tvar(i, cmap[i]))
    g_b2_full = partial_derivative(P.block_power(B2), tvar(B2, cmap[B2]))
    images = {}
    if desc.kind == "t2a":
        images[tvar(B0, cmap[B0])] = g_b2_full * multiplier
    elif desc.kind == "t2b":
        m = P.exponents(B0)[cmap[B0] - 1]
        part_a = P.block_power_divided(B0, m)
        part_b = P.block_power_divided(B1, m)
        d_a = partial_derivative(part_a, tvar(B0, cmap[B0]))
        d_b = partial_derivative(part_b, tvar(B1, cmap[B1]))
        images[tvar(B0, cmap[B0])] = d_b * g_b2_full * multiplier
        images[tvar(B1, cmap[B1])] = d_a * g_b2_full * multiplier * desc.param
    elif desc.kind == "t2c":
        half_a = P.block_power_divided(B0, 2)
        half_b = P.block_power_divided(B1, 2)
        d_a = partial_derivative(half_a, tvar(B0, cmap[B0]))
        d_b = partial_derivative(half_b, tvar(B1, cmap[B1]))
        sb = _sqrt_or_raise(ctx.beta / ctx.alpha, "the two-class family")
        u = desc.param * sb
        images[tvar(B0, cmap[B0])] = d_b * g_b2_full * multiplier * u
        images[tvar(B1, cmap[B1])] = d_a * g_b2_full * multiplier
    else:  # t2d
        half_a = P.block_power_divided(B0, 2)
        half_b = P.block_power_divided(B1, 2)
        half_c = P.block_power_divided(B2, 2)
        d_a = partial_derivative(half_a, tvar(B0, cmap[B0]))
        d_b = partial_derivative(half_b, tvar(B1, cmap[B1]))
        d_c = partial_derivative(half_c, tvar(B2, cmap[B2]))
        sb = _sqrt_or_raise(ctx.beta / ctx.alpha, "the parameter family")
        sc = _sqrt_or_raise(ctx.gamma / ctx.alpha, "the parameter family")
        lam = desc.param
        one_plus = (ONE + lam * lam) * I
        one_minus = ONE - lam * lam
        images[tvar(B0, cmap[B0])] = (
            d_b * d_c * (half_b * (lam * 2 * sb) + half_c * (one_plus * sc)) * multiplier
        )
        images[tvar(B1, cmap[B1])] = (
            d_a * d_c * (half_a * (-2 * lam / sb) + half_c * (one_minus * sc / sb)) * multiplier
        )
    d_t_b0 = partial_derivative(P.block_power(B0), tvar(B0, cmap[B0]))
    d_t_b1 = partial_derivative(P.block_power(B1), tvar(B1, cmap[B1]))
    img0 = images.get(tvar(B0, cmap[B0]), Poly.zero())
    img1 = images.get(tvar(B1, cmap[B1]), Poly.zero())
    for s in P.block_numbers:
        if s in (B0, B1):
            continue
        if s == B2:
            alpha_s, beta_s, gamma_s = ctx.alpha, ctx.beta, ctx.gamma
        else:
            alpha_s, beta_s, gamma_s = P.triple_coefficients(B0, B1, s)
        numerator = -(d_t_b0 * img0 * alpha_s + d_t_b1 * img1 * beta_s)
        divisor = partial_derivative(P.block_power(s), tvar(s, cmap[s])) * gamma_s
        try:
            solved = exact_divide(numerator, divisor)
        except NotDivisible as exc:
            raise ExactDivisionFailed(
                f"solving the image of block {s} failed: {exc}"
            ) from exc
        if solved:
            images[tvar(s, cmap[s])] = solved
    delta = Derivation(P, images)
    report = is_well_defined(delta)
    assert report.ok, f"type 2 construction broke relation {report.relation_index}"
    return delta


def build_lnd(P: TrinomialPresentation, desc: LndDescriptor) -> Derivation:
    """Dispatch on the descriptor kind."""
    if desc.kind == "free":
        if desc.k is None:
            raise InadmissibleDescriptor("free descriptor needs an index k")
        return free_variable_lnd(P, desc.k)
    if desc.kind == "type1":
        if desc.c is None:
            raise InadmissibleDescriptor("type1 descriptor needs a tuple")
        if P.kind != 1:
            raise WrongType("type1 descriptor on a type 2 presentation")
        return build_lnd_type1(P, desc.c)
    return build_lnd_type2(P, desc)


def kernel_generators(P: TrinomialPresentation, desc: LndDescriptor):
    """Generators of the kernel of the described derivation."""
    if desc.kind == "free":
        if desc.k is None or not isinstance(desc.k, int) or not 1 <= desc.k <= P.d:
            raise InadmissibleDescriptor(f"no free variable {desc.k!r}")
        gens = [Poly.generator(g) for g in P.generators if g[0] == "T"]
        gens.extend(
            Poly.generator(svar(p)) for p in range(1, P.d + 1) if p != desc.k
        )
        return gens
    if desc.kind == "type1":
        if P.kind != 1:
            raise WrongType("type1 descriptor on a type 2 presentation")
        if desc.c is None:
            raise InadmissibleDescriptor("type1 descriptor needs a tuple")
        info = _tuple_info(P, desc.c)
        cmap = dict(zip(P.block_numbers, info.c))
        gens = [
            Poly.generator(tvar(i, j))
            for i in P.block_numbers
            for j in range(1, P.block_size(i) + 1)
            if j != cmap[i]
        ]
        gens.extend(Poly.generator(svar(k)) for k in range(1, P.d + 1))
        return gens
    ctx = _type2_context(P, desc)
    B0, B1, B2 = ctx.roles
    cmap = ctx.cmap
    gens = [
        Poly.generator(tvar(i, j))
        for i in P.block_numbers
        for j in range(1, P.block_size(i) + 1)
        if j != cmap[i]
    ]
    gens.extend(Poly.generator(svar(k)) for k in range(1, P.d + 1))
    if desc.kind == "t2a":
        gens.append(Poly.generator(tvar(B1, cmap[B1])))
    elif desc.kind == "t2b":
        m = P.exponents(B0)[cmap[B0] - 1]
        part_a = P.block_power_divided(B0, m)
        part_b = P.block_power_divided(B1, m)
        gens.append(part_a * desc.param - part_b)
    elif desc.kind == "t2c":
        sb = _sqrt_or_raise(ctx.beta / ctx.alpha, "the two-class family")
        half_a = P.block_power_divided(B0, 2)
        half_b = P.block_power_divided(B1, 2)
        gens.append(half_a * desc.param + half_b * sb)
    else:
        sb = _sqrt_or_raise(ctx.beta / ctx.alpha, "the parameter family")
        sc = _sqrt_or_raise(ctx.gamma / ctx.alpha, "the parameter family")
        lam = desc.param
        half_a = P.block_power_divided(B0, 2)
        half_b = P.block_power_divided(B1, 2)
        half_c = P.block_power_divided(B2, 2)
        gens.append(
            half_a * (ONE - lam * lam)
            - half_b * ((ONE + lam * lam) * I * sb)
            + half_c * (2 * lam * sc)
        )
    return gens


# -- rigidity and the Makar-Limanov invariant ------------------------------


@dataclass(frozen=True)
class RigidityReport:
    rigid: bool
    reason: str
    witness: Optional[LndDescriptor] = None

    def __bool__(self):
        return self.rigid


def _default_descriptor(P: TrinomialPresentation, info: AdmissibleTuple) -> LndDescriptor:
    if info.case == "Type1":
        return LndDescriptor(kind="type1", c=info.c)
    if info.case == "A":
        i1, i2 = info.labelings[0]
        b2 = min(i for i in P.block_numbers if i not in (i1, i2))
        return LndDescriptor(kind="t2a", c=info.c, roles=(i1, i2, b2))
    lab = _preferred_case_b_labeling(P, info)
    return LndDescriptor(kind="t2c", c=info.c, roles=lab, param=I)


def is_rigid(P: TrinomialPresentation) -> RigidityReport:
    """Rigid means: no nonzero graded locally nilpotent derivation at all."""
    if P.d > 0:
        return RigidityReport(
            rigid=False,
            reason="free variables always carry derivations",
            witness=LndDescriptor(kind="free", k=1),
        )
    tuples = admissible_tuples(P)
    if tuples:
        info = tuples[0]
        return RigidityReport(
            rigid=False,
            reason=f"admissible tuple {info.c} exists",
            witness=_default_descriptor(P, info),
        )
    return RigidityReport(rigid=True, reason="no free variables and no admissible tuple")


def _without_free_variables(P: TrinomialPresentation) -> TrinomialPresentation:
    return TrinomialPresentation(
        kind=P.kind, blocks=P.blocks, constants=P.constants, d=0, anchors=P.anchors
    )


@dataclass(frozen=True)
class SemirigidityReport:
    semirigid: bool
    clause: Optional[str] = None

    def __bool__(self):
        return self.semirigid


def is_semirigid(P: TrinomialPresentation) -> SemirigidityReport:
    """Semirigid means all nonzero derivations share one kernel.

    Holds when the algebra is rigid; when there is a single free
    variable over a rigid base; or (type 1 only) when the
    Makar-Limanov computation applies.
    """
    if is_rigid(P).rigid:
        return SemirigidityReport(True, "rigid")
    if P.d == 1 and is_rigid(_without_free_variables(P)).rigid:
        return SemirigidityReport(True, "single_free_variable_over_rigid_base")
    if P.kind == 1:
        ml = makar_limanov(P)
        if ml.status == "computed":
            return SemirigidityReport(True, "makar_limanov")
    return SemirigidityReport(False, None)


@dataclass(frozen=True)
class MakarLimanovReport:
    status: str  # "computed" | "not_applicable"
    reason: Optional[str] = None
    i0: Optional[int] = None
    c: Optional[dict] = None
    generators: Optional[Tuple[Gen, ...]] = None

    def to_dict(self):
        out = {"status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.status == "computed":
            out["i0"] = self.i0
            out["c"] = {str(i): ci for i, ci in sorted(self.c.items())}
            out["generators"] = [gen_name(g) for g in self.generators]
        return out


def makar_limanov(P: TrinomialPresentation) -> MakarLimanovReport:
    """Compute the ring of functions killed by every locally nilpotent
    derivation, in the pattern where that computation closes.

    Needs: no free variables; a block i0 that is a single variable with
    exponent above 1; every other block with exactly one exponent equal
    to 1. The result is generated by the off-tuple variables outside
    block i0. Raises WrongType on type 2 input.
    """
    if P.kind != 1:
        raise WrongType("the Makar-Limanov computation covers type 1 presentations")
    if P.d != 0:
        return MakarLimanovReport(
            status="not_applicable", reason="free variables present"
        )
    candidates = [
        i
        for i in P.block_numbers
        if P.block_size(i) == 1 and P.exponents(i)[0] > 1
    ]
    if not candidates:
        return MakarLimanovReport(
            status="not_applicable",
            reason="no block is a single variable with exponent above 1",
        )
    first_failure = None
    for i0 in candidates:
        assignment = {}
        failure = None
        for i in P.block_numbers:
            if i == i0:
                continue
            ones = [j for j, e in enumerate(P.exponents(i), start=1) if e == 1]
            if len(ones) != 1:
                failure = (
                    f"block {i} needs exactly one exponent equal to 1, has {len(ones)}"
                )
                break
            assignment[i] = ones[0]
        if failure is None:
            gens = tuple(
                tvar(i, j)
                for i in P.block_numbers
                if i != i0
                for j in range(1, P.block_size(i) + 1)
                if j != assignment[i]
            )
            return MakarLimanovReport(
                status="computed", i0=i0, c=assignment, generators=gens
            )
        if first_failure is None:
            first_failure = failure
    return MakarLimanovReport(status="not_applicable", reason=first_failure)


# -- the classification report ---------------------------------------------


@dataclass(frozen=True)
class LndInstance:
    descriptor: LndDescriptor
    derivation: Optional[Derivation]
    error: Optional[str] = None


def enumerate_lnds(P: TrinomialPresentation, lambdas=None):
    """Materialize one derivation per class, sampling parameter families.

    Families with a free parameter produce one instance per sample value
    (zero is skipped where the classification excludes it). Instances
    whose construction needs an unavailable root carry an error string
    instead of a derivation.
    """
    lams = DEFAULT_LAMBDAS if lambdas is None else tuple(lambdas)
    out = []
    for k in range(1, P.d + 1):
        desc = LndDescriptor(kind="free", k=k)
        out.append(LndInstance(descriptor=desc, derivation=free_variable_lnd(P, k)))
    for info in admissible_tuples(P):
        if info.case == "Type1":
            desc = LndDescriptor(kind="type1", c=info.c)
            out.append(LndInstance(descriptor=desc, derivation=build_lnd_type1(P, info.c)))
            continue
        if info.case == "A":
            i1, i2 = info.labelings[0]
            b2 = min(i for i in P.block_numbers if i not in (i1, i2))
            for roles in ((i1, i2, b2), (i2, i1, b2)):
                desc = LndDescriptor(kind="t2a", c=info.c, roles=roles)
                out.append(LndInstance(descriptor=desc, derivation=build_lnd_type2(P, desc)))
            witness = _case_a_infinite(P, info)
            if witness is not None:
                k0, k1 = witness
                b2w = min(i for i in P.block_numbers if i not in (k0, k1))
                for lam in lams:
                    if not lam:
                        continue
                    desc = LndDescriptor(kind="t2b", c=info.c, roles=(k0, k1, b2w), param=lam)
                    out.append(_safe_instance(P, desc))
            continue
        lab = _preferred_case_b_labeling(P, info)
        for mu in (I, -I):
            desc = LndDescriptor(kind="t2c", c=info.c, roles=lab, param=mu)
            out.append(_safe_instance(P, desc))
        witness = _case_b_infinite(P, info)
        if witness is not None:
            for lam in lams:
                desc = LndDescriptor(kind="t2d", c=info.c, roles=witness, param=lam)
                out.append(_safe_instance(P, desc))
    return out


def _safe_instance(P, desc) -> LndInstance:
    try:
        return LndInstance(descriptor=desc, derivation=build_lnd_type2(P, desc))
    except NeedsNormalization as exc:
        return LndInstance(descriptor=desc, derivation=None, error=f"NeedsNormalization: {exc}")


@dataclass
class LndClassReport:
    presentation: TrinomialPresentation
    dimension: int
    factorial: Optional[bool]
    factorial_note: Optional[str]
    rigidity: RigidityReport
    semirigidity: SemirigidityReport
    ml: MakarLimanovReport
    classes: list

    def to_dict(self):
        grading = weight_assignment(self.presentation)
        out = {
            "presentation": self.presentation.to_input_dict(),
            "dimension": self.dimension,
            "grading": {
                "basis": list(grading.basis_labels),
                "weights": {
                    gen_name(g): list(grading.weights[g])
                    for g in self.presentation.generators
                },
            },
            "factorial": self.factorial,
        }
        if self.factorial_note:
            out["factorial_note"] = self.factorial_note
        out["rigid"] = self.rigidity.rigid
        out["rigid_reason"] = self.rigidity.reason
        out["semirigid"] = self.semirigidity.semirigid
        if self.semirigidity.clause:
            out["semirigid_clause"] = self.semirigidity.clause
        out["ml_invariant"] = self.ml.to_dict()
        out["classes"] = self.classes
        return out


def _kernel_strings(P, desc):
    return [poly_format(g) for g in kernel_generators(P, desc)]


def _concrete_base(P, desc, label):
    """A formulas entry for a descriptor that can be built right away."""
    try:
        delta = build_lnd(P, desc)
    except NeedsNormalization as exc:
        return {
            "label": label,
            "descriptor": desc.to_dict(),
            "error": f"NeedsNormalization: {exc}",
        }
    return {
        "label": label,
        "descriptor": desc.to_dict(),
        "images": delta.image_strings(),
        "kernel": _kernel_strings(P, desc),
    }


def _shared_kernel_strings(P, c):
    """Off-tuple variables and free variables: the kernel part common to
    every family of the tuple."""
    assignment = dict(zip(P.block_numbers, c))
    out = []
    for i in P.block_numbers:
        for j in range(1, P.block_size(i) + 1):
            if j != assignment[i]:
                out.append(poly_format(Poly.generator(tvar(i, j))))
    for k in range(1, P.d + 1):
        out.append(poly_format(Poly.generator(svar(k))))
    return out


def class_report(P: TrinomialPresentation) -> LndClassReport:
    """The classification: one entry per free variable, one per tuple.

    Free variables and type 1 tuples each carry a single class
    (SingleFamily); type 2 tuples carry either ExactlyTwo classes or an
    InfiniteFamily depending on the divisibility conditions. Parameter
    families appear with "param": "formal" and a kernel pattern; the
    enumerate_lnds function materializes them.
    """
    try:
        factorial = P.is_factorial()
        note = None
    except AssumptionViolated as exc:
        factorial = None
        note = str(exc)
    if P.kind == 1:
        ml = makar_limanov(P)
    else:
        ml = MakarLimanovReport(
            status="not_computed", reason="computed for type 1 presentations only"
        )
    classes = []
    for k in range(1, P.d + 1):
        desc = LndDescriptor(kind="free", k=k)
        classes.append(
            {
                "tuple": None,
                "case": "free_variable",
                "k": k,
                "count": "SingleFamily",
                "formulas": [_concrete_base(P, desc, f"partial_S{k}")],
                "kernel": _kernel_strings(P, desc),
            }
        )
    for info in admissible_tuples(P):
        if info.case == "Type1":
            desc = LndDescriptor(kind="type1", c=info.c)
            classes.append(
                {
                    "tuple": list(info.c),
                    "case": "Type1",
                    "count": "SingleFamily",
                    "formulas": [_concrete_base(P, desc, "base")],
                    "kernel": _kernel_strings(P, desc),
                }
            )
            continue
        entry = {
            "tuple": list(info.c),
            "case": info.case,
            "labelings": [list(lab) for lab in info.labelings],
        }
        formulas = []
        if info.case == "A":
            witness = _case_a_infinite(P, info)
            entry["count"] = "InfiniteFamily" if witness else "ExactlyTwo"
            i1, i2 = info.labelings[0]
            b2 = min(i for i in P.block_numbers if i not in (i1, i2))
            for roles in ((i1, i2, b2), (i2, i1, b2)):
                desc = LndDescriptor(kind="t2a", c=info.c, roles=roles)
                formulas.append(_concrete_base(P, desc, f"a:moves_block{roles[0]}"))
            if witness:
                k0, k1 = witness
                b2w = min(i for i in P.block_numbers if i not in (k0, k1))
                m = P.exponents(k0)[dict(zip(P.block_numbers, info.c))[k0] - 1]
                part_a = P.block_power_divided(k0, m)
                part_b = P.block_power_divided(k1, m)
                formulas.append(
                    {
                        "label": "b:lambda_family",
                        "descriptor": {
                            "kind": "t2b",
                            "c": list(info.c),
                            "roles": [k0, k1, b2w],
                            "param": "formal",
                        },
                        "kernel_pattern": f"lambda*({poly_format(part_a)}) - ({poly_format(part_b)})",
                    }
                )
        else:
            witness = _case_b_infinite(P, info)
            entry["count"] = "InfiniteFamily" if witness else "ExactlyTwo"
            lab = _preferred_case_b_labeling(P, info)
            for mu, label in ((I, "delta_0"), (-I, "delta_infinity")):
                desc = LndDescriptor(kind="t2c", c=info.c, roles=lab, param=mu)
                formulas.append(_concrete_base(P, desc, label))
            if witness:
                B0, B1, B2 = witness
                skeleton = {
                    "kind": "t2d",
                    "c": list(info.c),
                    "roles": list(witness),
                    "param": "formal",
                }
                try:
                    alpha, beta, gamma = P.triple_coefficients(B0, B1, B2)
                    sb = _sqrt_or_raise(beta / alpha, "the parameter family")
                    sc = _sqrt_or_raise(gamma / alpha, "the parameter family")
                    half_a = poly_format(P.block_power_divided(B0, 2))
                    half_b = poly_format(P.block_power_divided(B1, 2))
                    half_c = poly_format(P.block_power_divided(B2, 2))
                    pattern = (
                        f"(1-lambda^2)*({half_a}) - (1+lambda^2)*({gq_format(I * sb)})*({half_b})"
                        f" + 2*lambda*({gq_format(sc)})*({half_c})"
                    )
                    formulas.append(
                        {
                            "label": "delta_lambda",
                            "descriptor": skeleton,
                            "kernel_pattern": pattern,
                        }
                    )
                except NeedsNormalization as exc:
                    formulas.append(
                        {
                            "label": "delta_lambda",
                            "descriptor": skeleton,
                            "error": f"NeedsNormalization: {exc}",
                        }
                    )
        entry["formulas"] = formulas
        entry["kernel"] = _shared_kernel_strings(P, info.c)
        classes.append(entry)
    return LndClassReport(
        presentation=P,
        dimension=P.dimension(),
        factorial=factorial,
        factorial_note=note,
        rigidity=is_rigid(P),
        semirigidity=is_semirigid(P),
        ml=ml,
        classes=classes,
    )
