"""Divergence certificates for the non-admissible graph families."""

from .certificates import (CertificateError, Constraint, FamilyMismatch, InvariantRegionCertificate,
                           LoopIllegal, NonStrictWitness, ParametricLoopCertificate, ParametricPosition,
                           PrefixIllegal, RegionMiss, WitnessMismatch, symbolic_cycle,
                           verify_invariant_region, verify_parametric)
from .kappa import (ClosedFormMismatch, KappaCertificate, NonpositiveQ, RegionEscape, RoundBound,
                    TriangleCertificate, build_kappa_certificate, verify_kappa, verify_triangle)
from .library import IndexOutOfRange, all_certificates, certificate_catalog
from .verify import FamilyReport, Verdict, dumps, loads, verify_all, verify_certificate

__all__ = [
    "CertificateError", "ClosedFormMismatch", "Constraint", "FamilyMismatch", "FamilyReport",
    "IndexOutOfRange", "InvariantRegionCertificate", "KappaCertificate", "LoopIllegal",
    "NonStrictWitness", "NonpositiveQ", "ParametricLoopCertificate", "ParametricPosition",
    "PrefixIllegal", "RegionEscape", "RegionMiss", "RoundBound", "TriangleCertificate", "Verdict",
    "WitnessMismatch", "all_certificates", "build_kappa_certificate", "certificate_catalog", "dumps",
    "loads", "symbolic_cycle", "verify_all", "verify_certificate", "verify_invariant_region",
    "verify_kappa", "verify_parametric", "verify_triangle",
]
