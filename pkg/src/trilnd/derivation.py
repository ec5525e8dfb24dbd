"""Derivations of a presented algebra, stored by generator images.

A derivation is determined by its images on generators and extends by
the Leibniz rule. Images are kept in normal form, so two derivations
inducing the same map have equal image dictionaries. Whether a
candidate assignment actually descends to the quotient algebra is a
check (is_well_defined), not an assumption, since the verification
oracle deliberately produces candidates that can fail it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

from .gaussian import GaussianRational, gq
from .grading import Grading, homogeneous_parts, weight_of
from .poly import (
    Gen,
    Monomial,
    Poly,
    PolyParseError,
    UnknownGenerator,
    gen_name,
    parse_gen_name,
    poly_format,
    poly_parse,
)
from .presentation import TrinomialPresentation


class NotInKernel(ValueError):
    """replica() was given a cofactor outside the kernel."""


class DerivationFormatError(ValueError):
    """Malformed derivation file."""


@dataclass(frozen=True)
class WellDefinedReport:
    ok: bool
    relation_index: Optional[int] = None
    residue: Optional[Poly] = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class NilpotencyReport:
    status: str  # "verified" | "inconclusive"
    cap: int
    index: Optional[int] = None
    witness: Optional[Gen] = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"


class Derivation:
    """Images are normalized on construction; zero images are dropped."""

    __slots__ = ("presentation", "images")

    def __init__(self, presentation: TrinomialPresentation, images: Mapping[Gen, Poly]):
        known = set(presentation.generators)
        stored = {}
        for g, img in images.items():
            if g not in known:
                raise UnknownGenerator(f"{gen_name(g)} is not a generator here")
            if not isinstance(img, Poly):
                img = Poly.constant(img)
            reduced = presentation.normal_form(img)
            bad = reduced.variables() - known
            if bad:
                raise UnknownGenerator(
                    f"image of {gen_name(g)} uses foreign generator {gen_name(next(iter(bad)))}"
                )
            if reduced:
                stored[g] = reduced
        self.presentation = presentation
        self.images = stored

    def image(self, g: Gen) -> Poly:
        return self.images.get(g, Poly.zero())

    def image_strings(self) -> dict:
        """Nonzero images as formatted strings, in generator order."""
        return {
            gen_name(g): poly_format(self.images[g])
            for g in self.presentation.generators
            if g in self.images
        }

    def is_zero(self) -> bool:
        return not self.images

    def __eq__(self, other):
        return (
            isinstance(other, Derivation)
            and self.presentation == other.presentation
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.presentation, frozenset(self.images.items())))

    def apply(self, p: Poly) -> Poly:
        """The Leibniz extension, returned in normal form."""
        known = self.presentation.generator_set
        acc = Poly.zero()
        for m, c in p.terms.items():
            for g, e in m.pairs:
                if g not in known:
                    raise UnknownGenerator(
                        f"{gen_name(g)} is not a generator of this presentation"
                    )
                img = self.images.get(g)
                if img is None:
                    continue
                rest = Monomial(
                    tuple((gg, ee - 1 if gg == g else ee) for gg, ee in m.pairs)
                )
                acc = acc + Poly.monomial(rest, c * e) * img
        return self.presentation.normal_form(acc)

    def scaled(self, factor: GaussianRational) -> "Derivation":
        factor = factor if isinstance(factor, GaussianRational) else gq(factor)
        return Derivation(
            self.presentation, {g: img * factor for g, img in self.images.items()}
        )

    def __mul__(self, factor):
        return self.scaled(factor)

    __rmul__ = __mul__

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.presentation != other.presentation:
            raise ValueError("cannot add derivations on different presentations")
        merged = dict(self.images)
        for g, img in other.images.items():
            merged[g] = merged.get(g, Poly.zero()) + img
        return Derivation(self.presentation, merged)

    def __repr__(self):
        body = ", ".join(
            f"{gen_name(g)} -> {poly_format(img)}" for g, img in sorted(self.images.items())
        )
        return f"Derivation({body or '0'})"


def is_well_defined(delta: Derivation) -> WellDefinedReport:
    """Check that every defining relation maps into the relation ideal."""
    for idx, rel in enumerate(delta.presentation.relations()):
        residue = delta.apply(rel)
        if residue:
            return WellDefinedReport(ok=False, relation_index=idx, residue=residue)
    return WellDefinedReport(ok=True)


def nilpotency_check(
    delta: Derivation, cap: int = 64, term_limit: int = 4096, degree_limit: int = 512
) -> NilpotencyReport:
    """Iterate on each generator until the image dies, up to cap steps.

    Verified(m) means delta^m kills every generator and m is minimal.
    Since the generators generate, that certifies local nilpotency of
    the whole derivation. Hitting the cap is reported as inconclusive,
    never as failure: weight reasons can make a non-nilpotent candidate
    cycle forever. The size guards likewise bail out as inconclusive
    when an iterate balloons past any plausible vanishing trajectory.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    worst = 1
    for g in delta.presentation.generators:
        p = delta.image(g)
        steps = 1
        while p:
            if steps >= cap:
                return NilpotencyReport(status="inconclusive", cap=cap, witness=g)
            if len(p.terms) > term_limit or p.degree() > degree_limit:
                return NilpotencyReport(status="inconclusive", cap=cap, witness=g)
            p = delta.apply(p)
            steps += 1
        worst = max(worst, steps)
    return NilpotencyReport(status="verified", cap=cap, index=worst)


def kernel_member(delta: Derivation, p: Poly) -> bool:
    return delta.apply(p).is_zero()


def replica(delta: Derivation, h: Poly) -> Derivation:
    """The derivation h * delta; h must lie in the kernel of delta."""
    if not isinstance(h, Poly):
        h = Poly.constant(h)
    if not kernel_member(delta, h):
        raise NotInKernel(f"{poly_format(h)} is not killed by the derivation")
    return Derivation(
        delta.presentation, {g: img * h for g, img in delta.images.items()}
    )


def decompose(delta: Derivation, grading: Grading):
    """Split into degree-homogeneous components, sorted by degree.

    Returns a list of (degree, Derivation). The component of degree w
    collects, for every generator g, the part of delta(g) with weight
    weight(g) + w.
    """
    buckets: dict = {}
    for g, img in delta.images.items():
        base = grading.weights[g]
        for w, part in homogeneous_parts(img, grading).items():
            shift = tuple(a - b for a, b in zip(w, base))
            buckets.setdefault(shift, {})[g] = part
    out = []
    for shift in sorted(buckets):
        out.append((shift, Derivation(delta.presentation, buckets[shift])))
    return out


def derivation_to_text(delta: Derivation) -> str:
    """One 'generator = polynomial' line per nonzero image.

    Generators with no line map to zero, so the zero derivation writes
    as an empty body. Reading the output back yields an equal
    derivation.
    """
    lines = []
    for g in delta.presentation.generators:
        img = delta.images.get(g)
        if img is not None:
            lines.append(f"{gen_name(g)} = {poly_format(img)}")
    return "\n".join(lines) + ("\n" if lines else "")


def derivation_from_text(P: TrinomialPresentation, text: str) -> Derivation:
    """Parse the derivation file format.

    Blank lines and '#' comments are allowed; each other line must read
    'generator = polynomial'. Listing a generator twice is an error;
    unlisted generators map to zero.
    """
    images = {}
    known = set(P.generators)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, eq, rhs = line.partition("=")
        if not eq:
            raise DerivationFormatError(f"line {lineno}: expected 'generator = polynomial'")
        try:
            g = parse_gen_name(name.strip())
        except UnknownGenerator as exc:
            raise DerivationFormatError(f"line {lineno}: {exc}") from None
        if g not in known:
            raise UnknownGenerator(
                f"line {lineno}: {name.strip()} is not a generator of this presentation"
            )
        if g in images:
            raise DerivationFormatError(f"line {lineno}: duplicate image for {name.strip()}")
        try:
            images[g] = poly_parse(rhs.strip(), allowed=known)
        except PolyParseError as exc:
            raise DerivationFormatError(f"line {lineno}: {exc}") from None
    return Derivation(P, images)


def degree_of(delta: Derivation, grading: Grading):
    """Convenience wrapper; see grading.derivation_degree."""
    from .grading import derivation_degree

    return derivation_degree(delta.images, grading)
