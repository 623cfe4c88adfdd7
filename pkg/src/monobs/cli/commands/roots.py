#!/usr/bin/env python3
"""
Commands for the root set of the Bernstein-Sato polynomial: roots, modz, verify-prop1.
"""

import logging

from ...config.settings import BOX_MULTIPLIER, STABILIZATION_RUNS
from ...core.gamma import roots_gamma
from ...core.roots import BPolynomial, prop1_residue, roots_charp, roots_mod_Z
from ...models import (
    CertificateInfo, ModZDocument, Prop1Document, RootsDocument, format_rational, format_vector,
)
from ..inputs import load_ideal, load_ideal_or_inline, positive_int

logger = logging.getLogger(__name__)


def roots_command(args) -> RootsDocument:
    """Root set by the characteristic-p method, the component oracle, or both."""
    a = load_ideal(args.ideal)
    charp = gamma = None
    certificates = unrealized = None
    if args.method in ("charp", "both"):
        report = roots_charp(a, K=args.K, runs=args.runs, jobs=args.jobs)
        charp = report.roots
        if args.verbose:
            certificates = [
                CertificateInfo(
                    root=format_rational(cert.root),
                    cone=cert.cone,
                    residue=list(cert.residue),
                    representative=list(cert.representative),
                    correction=format_rational(cert.correction),
                    trace=[[str(q), str(t), format_rational(tq)] for q, t, tq in cert.trace],
                )
                for root in report.roots for cert in report.certificates[root]
            ]
            unrealized = {str(k): v for k, v in sorted(report.unrealized.items())}
    if args.method in ("gamma", "both"):
        gamma = roots_gamma(a, args.alpha_max, args.beta_min, jobs=args.jobs)

    if args.method == "both":
        agreement = set(charp) == set(gamma)
        if not agreement:
            logger.warning(
                f"Methods disagree: charp {format_vector(charp)} vs gamma {format_vector(gamma)}"
            )
        roots = sorted(set(charp) | set(gamma), reverse=True)
    else:
        agreement = None
        roots = charp if charp is not None else gamma

    return RootsDocument(
        roots=format_vector(roots),
        agreement=agreement,
        mod_z_classes=format_vector(roots_mod_Z(a)) if args.verbose else None,
        certificates=certificates,
        unrealized=unrealized,
    )


def modz_command(args) -> ModZDocument:
    return ModZDocument(classes=format_vector(roots_mod_Z(load_ideal(args.ideal))))


def verify_prop1_command(args) -> Prop1Document:
    a = load_ideal(args.ideal)
    J = load_ideal_or_inline(args.J, a.nvars)
    value_nu, residue = prop1_residue(a, J, args.p, args.e, BPolynomial.parse(args.bpoly))
    return Prop1Document(nu=value_nu, residue=residue, vanishes=residue == 0)


def register(subparsers, common) -> None:
    """Attach the root commands to the top-level parser."""
    roots = subparsers.add_parser('roots', parents=[common], help='Roots of the Bernstein-Sato polynomial')
    roots.add_argument('--ideal', required=True, help='Ideal document path')
    roots.add_argument('--method', choices=['charp', 'gamma', 'both'], default='charp',
                       help='Extraction method (default: charp)')
    roots.add_argument('--K', type=positive_int, default=BOX_MULTIPLIER,
                       help=f'Sampling box multiplier (default: {BOX_MULTIPLIER})')
    roots.add_argument('--runs', type=positive_int, default=STABILIZATION_RUNS,
                       help=f'Stabilization runs (default: {STABILIZATION_RUNS})')
    roots.add_argument('--alpha-max', type=int, help='Largest alpha_j for the component oracle')
    roots.add_argument('--beta-min', type=int, help='Smallest beta_i for the component oracle')
    roots.set_defaults(func=roots_command)

    modz = subparsers.add_parser('modz', parents=[common], help='Root classes mod Z from facet moduli')
    modz.add_argument('--ideal', required=True, help='Ideal document path')
    modz.set_defaults(func=modz_command)

    prop1 = subparsers.add_parser('verify-prop1', parents=[common],
                                  help='Check b(nu(p^e)) = 0 in F_p')
    prop1.add_argument('--ideal', required=True, help='Ideal document path')
    prop1.add_argument('--J', help='Ideal J as a path or inline document (default: maximal ideal)')
    prop1.add_argument('--p', type=positive_int, required=True, help='Prime p')
    prop1.add_argument('--e', type=positive_int, default=1, help='Exponent e (default: 1)')
    prop1.add_argument('--bpoly', required=True,
                       help='Roots with multiplicities, e.g. "-3/4,-5/4,-3/2,-1:3"')
    prop1.set_defaults(func=verify_prop1_command)
