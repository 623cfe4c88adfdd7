#!/usr/bin/env python3
"""
Commands for polyhedral data and threshold invariants:
newton, lct, jumping, nu, law, fthreshold, periodicity.
"""

from ...config.settings import PERIODICITY_DEPTH, SAMPLE_BUDGET, STABILIZATION_RUNS
from ...core.geometry import facet_modulus, fan_cones, integrality_modulus, newton_polyhedron
from ...core.thresholds import (
    f_threshold, jumping_number, jumping_numbers, lct, nu, nu_periodicity, quasi_linear_law,
)
from ...models import (
    ConeInfo, FacetInfo, FThresholdDocument, JumpingDocument, LawDocument, LctDocument,
    NewtonDocument, NuDocument, PeriodicityDocument, format_rational, format_vector,
)
from ..inputs import int_list, load_ideal, load_ideal_or_inline, positive_int, rational


def newton_command(args) -> NewtonDocument:
    """Facets, fan and integrality modulus of the Newton polyhedron."""
    a = load_ideal(args.ideal)
    P = newton_polyhedron(a)
    facets = [
        FacetInfo(
            functional=format_vector(f.functional),
            modulus=facet_modulus(f),
            in_coordinate_hyperplane=f.in_coordinate_hyperplane,
        )
        for f in P.facets
    ]
    cones = [
        ConeInfo(
            facets=sorted(k for k in c.face if not P.facets[k].in_coordinate_hyperplane),
            coordinates=sorted(
                P.facets[k].functional.index(1) for k in c.face if P.facets[k].in_coordinate_hyperplane
            ),
            rays=[list(r) for r in c.rays],
            dim=c.dim,
            maximal=c.maximal,
            in_coordinate_hyperplane=c.in_coordinate_hyperplane,
        )
        for c in fan_cones(P)
    ]
    return NewtonDocument(
        vars=a.nvars,
        generators=[list(g) for g in a.generators],
        facets=facets,
        cones=cones,
        integrality_modulus=integrality_modulus(a),
    )


def lct_command(args) -> LctDocument:
    return LctDocument(lct=format_rational(lct(load_ideal(args.ideal))))


def jumping_command(args) -> JumpingDocument:
    a = load_ideal(args.ideal)
    if args.b is not None:
        return JumpingDocument(jumping=[format_rational(jumping_number(a, args.b))])
    return JumpingDocument(jumping=format_vector(jumping_numbers(a, args.bound)))


def nu_command(args) -> NuDocument:
    a = load_ideal(args.ideal)
    J = load_ideal_or_inline(args.J, a.nvars)
    return NuDocument(nu=nu(a, J, args.q))


def law_command(args) -> LawDocument:
    a = load_ideal(args.ideal)
    J = load_ideal_or_inline(args.J, a.nvars)
    law = quasi_linear_law(a, J, args.runs, args.budget)
    return LawDocument(
        modulus=law.modulus,
        slope=format_rational(law.slope),
        intercepts={str(j): format_rational(g) for j, g in sorted(law.intercepts.items())},
        q_min=law.q_min,
        trace={str(j): [list(s) for s in t] for j, t in sorted(law.trace.items())} if args.verbose else None,
    )


def fthreshold_command(args) -> FThresholdDocument:
    a = load_ideal(args.ideal)
    J = load_ideal_or_inline(args.J, a.nvars)
    return FThresholdDocument(fthreshold=format_rational(f_threshold(a, J)))


def periodicity_command(args) -> PeriodicityDocument:
    a = load_ideal(args.ideal)
    J = load_ideal_or_inline(args.J, a.nvars)
    report = nu_periodicity(a, J, args.p, args.E)
    return PeriodicityDocument(
        differences=report.differences, preperiod=report.preperiod, period=report.period
    )


def register(subparsers, common) -> None:
    """Attach the invariant commands to the top-level parser."""
    newton = subparsers.add_parser('newton', parents=[common], help='Facets and fan of the Newton polyhedron')
    newton.add_argument('--ideal', required=True, help='Ideal document path')
    newton.set_defaults(func=newton_command)

    lct_parser = subparsers.add_parser('lct', parents=[common], help='Log canonical threshold')
    lct_parser.add_argument('--ideal', required=True, help='Ideal document path')
    lct_parser.set_defaults(func=lct_command)

    jumping = subparsers.add_parser('jumping', parents=[common], help='Jumping coefficients')
    jumping.add_argument('--ideal', required=True, help='Ideal document path')
    jumping.add_argument('--b', type=int_list, help='Comma separated b (all b_i >= 1)')
    jumping.add_argument('--bound', type=rational, default=rational('1'),
                         help='List every jumping coefficient up to this value (default: 1)')
    jumping.set_defaults(func=jumping_command)

    nu_parser = subparsers.add_parser('nu', parents=[common], help='nu^J_a(q)')
    nu_parser.add_argument('--ideal', required=True, help='Ideal document path')
    nu_parser.add_argument('--J', help='Ideal J as a path or inline document (default: maximal ideal)')
    nu_parser.add_argument('--q', type=positive_int, required=True, help='Power q >= 1')
    nu_parser.set_defaults(func=nu_command)

    law = subparsers.add_parser('law', parents=[common], help='Quasi-linear law of q -> nu(q)')
    law.add_argument('--ideal', required=True, help='Ideal document path')
    law.add_argument('--J', help='Ideal J as a path or inline document (default: maximal ideal)')
    law.add_argument('--runs', type=positive_int, default=STABILIZATION_RUNS,
                     help=f'Consecutive equal intercepts (default: {STABILIZATION_RUNS})')
    law.add_argument('--budget', type=positive_int, default=SAMPLE_BUDGET,
                     help=f'Samples per residue (default: {SAMPLE_BUDGET})')
    law.set_defaults(func=law_command)

    fthreshold = subparsers.add_parser('fthreshold', parents=[common], help='F-threshold of a with respect to J')
    fthreshold.add_argument('--ideal', required=True, help='Ideal document path')
    fthreshold.add_argument('--J', help='Ideal J as a path or inline document (default: maximal ideal)')
    fthreshold.set_defaults(func=fthreshold_command)

    periodicity = subparsers.add_parser('periodicity', parents=[common],
                                        help='Eventual period of nu(p^(e+1)) - p*nu(p^e)')
    periodicity.add_argument('--ideal', required=True, help='Ideal document path')
    periodicity.add_argument('--J', help='Ideal J as a path or inline document (default: maximal ideal)')
    periodicity.add_argument('--p', type=positive_int, required=True, help='Prime p')
    periodicity.add_argument('--E', type=positive_int, default=PERIODICITY_DEPTH,
                             help=f'Number of differences (default: {PERIODICITY_DEPTH})')
    periodicity.set_defaults(func=periodicity_command)
