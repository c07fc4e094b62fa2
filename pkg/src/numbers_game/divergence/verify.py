"""Whole-family verification and certificate serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from ..catalog import InadmissibleFamilyId, build_inadmissible
from ..core import FiringSequence, GcmGraph, Position
from .certificates import (CertificateError, Constraint, InvariantRegionCertificate,
                           ParametricLoopCertificate, ParametricPosition, verify_invariant_region,
                           verify_parametric)
from .kappa import (ClosedFormMismatch, KappaCertificate, RegionEscape, RoundBound,
                    TriangleCertificate, build_kappa_certificate, verify_kappa, verify_triangle)
from .library import all_certificates

DivergenceCertificate = Union[ParametricLoopCertificate, InvariantRegionCertificate, TriangleCertificate]

KAPPA_SAMPLES = 100

VERIFICATION_ERRORS = (CertificateError, RoundBound, ClosedFormMismatch, RegionEscape)


@lru_cache(maxsize=None)
def _kappa_proof(cert: KappaCertificate, samples: int, seed: int):
    graph = build_inadmissible(InadmissibleFamilyId(cert.variant, params=(cert.p1, cert.q1, cert.p2, cert.q2)))
    return verify_kappa(graph, cert, samples, seed)


def verify_certificate(graph: GcmGraph, cert: DivergenceCertificate, samples: int = KAPPA_SAMPLES, seed: int = 0):
    """Dispatch on certificate kind; raises the verifier's error on failure."""
    if cert.kind == "parametric":
        return verify_parametric(graph, cert)
    if cert.kind == "region":
        return verify_invariant_region(graph, cert)
    if cert.kind == "kappa":
        _kappa_proof(cert.kappa, samples, seed)
        return verify_triangle(graph, cert)
    raise TypeError(f"unknown certificate kind {cert.kind!r}")


@dataclass(frozen=True)
class Verdict:
    omega: int
    kind: str
    verified: bool
    error: str = ""
    report: object = None


@dataclass(frozen=True)
class FamilyReport:
    family_id: str
    verdicts: tuple[Verdict, ...]

    @property
    def passed(self) -> bool:
        return all(v.verified for v in self.verdicts)

    @property
    def verified_count(self) -> int:
        return sum(v.verified for v in self.verdicts)

    def summary(self) -> str:
        return f"{self.verified_count}/{len(self.verdicts)} certificates verified"


def verify_all(fid: InadmissibleFamilyId | str, samples: int = KAPPA_SAMPLES, seed: int = 0) -> FamilyReport:
    if isinstance(fid, str):
        fid = InadmissibleFamilyId.parse(fid)
    graph = build_inadmissible(fid)
    verdicts = []
    for i, cert in all_certificates(fid).items():
        try:
            report = verify_certificate(graph, cert, samples, seed)
            verdicts.append(Verdict(i, cert.kind, True, report=report))
        except VERIFICATION_ERRORS as exc:
            verdicts.append(Verdict(i, cert.kind, False, f"{type(exc).__name__}: {exc}"))
    return FamilyReport(str(fid), tuple(verdicts))


# SERIALIZATION
# -------------

SCHEMA = "numbers-game-certificate"
VERSION = 1


def fraction_text(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vec(values) -> list[str]:
    return [fraction_text(v) for v in values]


def _unvec(items) -> tuple[Fraction, ...]:
    return tuple(Fraction(s) for s in items)


def certificate_to_dict(cert: DivergenceCertificate) -> dict:
    out = {"schema": SCHEMA, "version": VERSION, "kind": cert.kind, "family": cert.family_id,
           "omega": cert.omega, "start": _vec(cert.start.values), "prefix": list(cert.prefix)}
    if cert.kind == "parametric":
        out.update(u=_vec(cert.family.intercept), v=_vec(cert.family.slope),
                   cycle=list(cert.cycle), repeats=cert.repeats)
    elif cert.kind == "region":
        out.update(region=[{"coeffs": _vec(c.coeffs), "strict": c.strict} for c in cert.region],
                   cycle=list(cert.cycle),
                   step_witnesses=[{str(r): fraction_text(w) for r, w in wt.items()} for wt in cert.step_witnesses],
                   closure_witnesses=[{str(r): fraction_text(w) for r, w in wt.items()}
                                      for wt in cert.closure_witnesses],
                   output=None if cert.output is None else [_vec(f) for f in cert.output])
    else:
        k = cert.kappa
        out.update(variant=k.variant, params=[k.p1, k.q1, k.p2, k.q2],
                   kappa=_vec(k.kappa_coeffs), Q=fraction_text(k.Q), Q1=fraction_text(k.Q1),
                   Q2=fraction_text(k.Q2))
    return out


def certificate_from_dict(data: dict) -> DivergenceCertificate:
    if data.get("schema") != SCHEMA or data.get("version") != VERSION:
        raise ValueError(f"unsupported certificate schema {data.get('schema')!r} v{data.get('version')!r}")
    start = Position(_unvec(data["start"]))
    prefix = FiringSequence(data["prefix"])
    kind = data["kind"]
    if kind == "parametric":
        return ParametricLoopCertificate(data["family"], data["omega"], start, prefix,
                                         ParametricPosition(_unvec(data["u"]), _unvec(data["v"])),
                                         FiringSequence(data["cycle"]), data["repeats"])
    if kind == "region":
        def witnesses(key):
            return tuple({int(r): Fraction(w) for r, w in wt.items()} for wt in data[key])
        output = data.get("output")
        return InvariantRegionCertificate(
            data["family"], data["omega"],
            tuple(Constraint(_unvec(c["coeffs"]), c["strict"]) for c in data["region"]),
            start, prefix, FiringSequence(data["cycle"]),
            witnesses("step_witnesses"), witnesses("closure_witnesses"),
            None if output is None else tuple(_unvec(f) for f in output))
    if kind == "kappa":
        kappa = build_kappa_certificate(data["variant"], *data["params"])
        stored = (_unvec(data["kappa"]), Fraction(data["Q"]), Fraction(data["Q1"]), Fraction(data["Q2"]))
        if stored != (kappa.kappa_coeffs, kappa.Q, kappa.Q1, kappa.Q2):
            raise ValueError("stored kappa data disagrees with the formulas for these parameters")
        return TriangleCertificate(data["family"], data["omega"], kappa, start, prefix)
    raise ValueError(f"unknown certificate kind {kind!r}")


def dumps(cert: DivergenceCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), sort_keys=True)


def loads(text: str) -> DivergenceCertificate:
    return certificate_from_dict(json.loads(text))
