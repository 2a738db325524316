"""
Tropex Command Runner

Dispatches parsed subcommands to the tropical kernels, wraps their results
in report envelopes and writes them.

Author: tropex developers
License: MIT
"""

import sys
from argparse import Namespace
from pathlib import Path
from typing import Any, Callable, Dict, Tuple

from .core.codec import (
    balancing_to_json,
    complex1_from_json,
    complex1_to_json,
    cone_to_json,
    expansion_to_json,
    fan_from_json,
    fan_to_json,
    fragment_to_json,
    graph_type_to_json,
    limit_to_json,
    load_json,
    polynomial_from_json,
    polynomial_to_json,
    profile_to_json,
    secondary_to_json,
    shadow_from_json,
    stability_to_json,
    surjection_type_to_json,
    validation_to_json,
    xg_to_json,
)
from .core.config import Config, get_config
from .core.errors import BudgetExceeded, InputError, TropexError
from .core.logging import get_logger
from .core.report import ReportGenerator
from .tropical.cones import common_refinement, is_subdivision, star_of_ray
from .tropical.expansion import check_contact_lengths, dt_stability, dual_complex, flag_tubes, tube_vertices
from .tropical.graphs import (
    WeightedOneComplex,
    cone_over,
    dilate,
    height_one_slice,
    minimal_dilation,
    minimal_structure,
    validate_embedded,
)
from .tropical.moduli import (
    assemble_fragment,
    build_XG,
    close_family,
    dual_plane_family,
    enumerate_surjections,
    realize_fragment,
    type_hash,
    vertex_family,
)
from .tropical.secondary import enumerate_secondary_fan, weight_forgetting_check
from .tropical.troplim import (
    asymptotic_profile,
    check_balancing,
    check_degree,
    limit_expansion,
    projective_plane_fan,
    tropicalize_hypersurface,
    weighted,
)

logger = get_logger(__name__)

Outcome = Tuple[Dict[str, Any], Dict[str, Any], str]


class CommandRunner:
    """
    Runs one subcommand and saves its report.
    """

    def __init__(self, config: Config = None):
        self.config = config or get_config()
        self.report_gen = ReportGenerator(self.config)
        self.handlers: Dict[str, Callable[[Namespace], Outcome]] = {
            'refine': self.refine,
            'star': self.star,
            'minimize': self.minimize,
            'conify': self.conify,
            'dilation': self.dilation,
            'tropicalize': self.tropicalize,
            'balance': self.balance,
            'limit': self.limit,
            'expand': self.expand,
            'xg': self.xg,
            'surjections': self.surjections,
            'modspace': self.modspace,
            'secondary': self.secondary,
            'validate': self.validate,
        }

    # ========================================================================
    # Entry point
    # ========================================================================

    def run(self, args: Namespace) -> int:
        """
        Execute a subcommand.

        Returns:
            Exit code (0 success, 2 validation failure)

        Raises:
            Exception: internal errors propagate to the CLI (exit 1)
        """
        command = args.command
        logger.info(f"Running {command}")
        try:
            result, summary, status = self.handlers[command](args)
            code = 0 if status == "ok" else 2
        except BudgetExceeded as e:
            partial = e.partial if isinstance(e.partial, list) else []
            result = {"error": type(e).__name__, "message": str(e), "partial_count": len(partial)}
            summary, status, code = {"error": type(e).__name__}, "invalid", e.exit_code
            logger.error(f"{command}: {e}")
        except TropexError as e:
            if e.exit_code == 1:
                raise
            result = {"error": type(e).__name__, "message": str(e)}
            summary, status, code = {"error": type(e).__name__}, "invalid", e.exit_code
            logger.error(f"{command}: {e}")

        report = self.report_gen.create_report(command, result, summary, status)
        self.emit(report, getattr(args, 'out', None))
        return code

    def emit(self, report: Dict[str, Any], out: Path = None):
        if out is None:
            if not self.report_gen.validate_report(report):
                logger.warning("Report does not match the report schema")
            sys.stdout.write(self.report_gen.to_json(report))
            return
        path = self.report_gen.save_json(report, Path(out))
        if self.config.write_summary:
            self.report_gen.save_summary(report, path)

    # ========================================================================
    # Inputs
    # ========================================================================

    def load_fan(self, path):
        if path is None:
            return projective_plane_fan()
        data = load_json(path)
        self.report_gen.validate_input(data, "fan.schema.json", f"Fan {path}")
        return fan_from_json(data)

    def load_complex(self, path):
        """A 1-complex file, or a report whose result carries one under "complex"."""
        if path is None:
            raise InputError("--graph is required")
        data = load_json(path)
        if isinstance(data, dict) and isinstance(data.get("result"), dict) and "complex" in data["result"]:
            data = data["result"]["complex"]
        self.report_gen.validate_input(data, "graph.schema.json", f"Graph {path}")
        return complex1_from_json(data)

    def load_embedded(self, path):
        c = self.load_complex(path)
        return c.base if isinstance(c, WeightedOneComplex) else c

    def budget(self, args: Namespace, default: int) -> int:
        return args.budget if getattr(args, 'budget', None) else default

    # ========================================================================
    # cones
    # ========================================================================

    def refine(self, args: Namespace) -> Outcome:
        a = self.load_fan(args.fan)
        b = self.load_fan(args.other)
        refined = common_refinement(a, b)
        checks = {"refines_first": is_subdivision(refined, a), "refines_second": is_subdivision(refined, b)}
        result = {"refinement": fan_to_json(refined), **checks}
        summary = {"cones": len(refined.cones), "maximal cones": len(refined.maximal_cones()), **checks}
        return result, summary, "ok"

    def star(self, args: Namespace) -> Outcome:
        sigma = self.load_fan(args.fan)
        ray = args.ray
        if ray.lstrip('-').isdigit():
            ray = int(ray)
        elif ',' in ray:
            ray = tuple(int(x) for x in ray.split(','))
        quotient = star_of_ray(sigma, ray)
        result = {"star": fan_to_json(quotient)}
        summary = {"ambient dimension": quotient.ambient_dim, "maximal cones": len(quotient.maximal_cones())}
        return result, summary, "ok"

    # ========================================================================
    # graphs
    # ========================================================================

    def minimize(self, args: Namespace) -> Outcome:
        sigma = self.load_fan(args.fan)
        minimal = minimal_structure(self.load_complex(args.graph), sigma)
        base = minimal.base if isinstance(minimal, WeightedOneComplex) else minimal
        result = {"complex": complex1_to_json(minimal)}
        summary = {"vertices": base.graph.num_vertices, "edges": len(base.graph.edges), "rays": len(base.graph.rays)}
        return result, summary, "ok"

    def conify(self, args: Namespace) -> Outcome:
        sigma = self.load_fan(args.fan)
        e = self.load_embedded(args.graph)
        cone = cone_over(e, sigma.ambient_dim)
        slice_ = height_one_slice(cone, sigma)
        result = {"cone": fan_to_json(cone, all_cones=True), "slice": complex1_to_json(slice_)}
        summary = {"cones": len(cone.cones), "dimension": cone.dim}
        return result, summary, "ok"

    def dilation(self, args: Namespace) -> Outcome:
        c = self.load_complex(args.graph)
        b = minimal_dilation(c)
        result = {"order": b, "complex": complex1_to_json(dilate(c, b))}
        return result, {"base change order": b}, "ok"

    # ========================================================================
    # troplim
    # ========================================================================

    def tropicalize(self, args: Namespace) -> Outcome:
        sigma = self.load_fan(args.fan)
        data = load_json(args.poly)
        self.report_gen.validate_input(data, "polynomial.schema.json", f"Polynomial {args.poly}")
        poly = polynomial_from_json(data)
        curve = tropicalize_hypersurface(poly, sigma)
        balancing = check_balancing(curve)
        result = {
            "polynomial": polynomial_to_json(poly),
            "complex": complex1_to_json(curve),
            "balancing": balancing_to_json(balancing),
        }
        summary = {
            "vertices": curve.base.graph.num_vertices,
            "edges": len(curve.base.graph.edges),
            "rays": len(curve.base.graph.rays),
            "balanced": balancing.balanced,
        }
        return result, summary, "ok"

    def balance(self, args: Namespace) -> Outcome:
        c = self.load_complex(args.graph)
        w = c if isinstance(c, WeightedOneComplex) else weighted(c)
        report = check_balancing(w)
        result = {"balancing": balancing_to_json(report)}
        summary = {"balanced": report.balanced, "defects": len(report.defects)}
        if args.fan is not None or args.degree is not None:
            profile = asymptotic_profile(w, self.load_fan(args.fan))
            result["profile"] = profile_to_json(profile)
            if args.degree is not None:
                degree = check_degree(profile, args.degree)
                result["degree_matches"] = degree.matches
                summary["degree matches"] = degree.matches
        status = "ok" if report.balanced or not args.strict else "invalid"
        return result, summary, status

    def limit(self, args: Namespace) -> Outcome:
        sigma = self.load_fan(args.fan)
        outcome = limit_expansion(self.load_embedded(args.graph), sigma)
        result = limit_to_json(outcome)
        summary = {
            "base change order": outcome.base_change_order,
            "components": len(outcome.expansion.components),
        }
        return result, summary, "ok"

    # ========================================================================
    # expansion
    # ========================================================================

    def expand(self, args: Namespace) -> Outcome:
        sigma = self.load_fan(args.fan)
        e = self.load_embedded(args.graph)
        cone = cone_over(e, sigma.ambient_dim)
        expansion = dual_complex(cone, sigma)
        summary: Dict[str, Any] = {"components": len(expansion.components)}
        result: Dict[str, Any] = {}
        status = "ok"
        if args.coarse is not None:
            tubes = tube_vertices(height_one_slice(cone, sigma), self.load_embedded(args.coarse))
            expansion = flag_tubes(expansion, sorted(tubes))
            summary["tube components"] = len(tubes)
        violations = expansion.validate(sigma)
        result["violations"] = violations
        if args.shadow is not None:
            shadow = shadow_from_json(load_json(args.shadow))
            stability = dt_stability(expansion, shadow)
            mismatched = check_contact_lengths(expansion, shadow)
            result["stability"] = stability_to_json(stability)
            result["contact_mismatches"] = mismatched
            summary["DT stable"] = stability.stable
            if not stability.stable:
                status = "invalid"
        result["expansion"] = expansion_to_json(expansion)
        return result, summary, status

    # ========================================================================
    # moduli
    # ========================================================================

    def xg(self, args: Namespace) -> Outcome:
        sigma = self.load_fan(args.fan)
        e = self.load_embedded(args.graph)
        cone = build_XG(e.graph, sigma, witness=e)
        result = xg_to_json(cone)
        result["type"] = type_hash(e.graph)
        result["contains_input"] = cone.contains(cone.point_of(e))
        summary = {"dimension": cone.dim, "rays": len(cone.cone.rays)}
        return result, summary, "ok"

    def surjections(self, args: Namespace) -> Outcome:
        sigma = self.load_fan(args.fan)
        e = self.load_embedded(args.graph)
        xg = build_XG(e.graph, sigma, witness=e)
        types = enumerate_surjections(
            e.graph, xg, sigma,
            budget=self.budget(args, self.config.arrangement_budget),
            workers=self.config.max_workers,
            include_boundary=args.boundary,
            max_codim=args.max_codim,
        )
        result = {"xg": cone_to_json(xg.cone), "types": [surjection_type_to_json(st) for st in types]}
        summary = {"types": len(types), "identity types": sum(1 for st in types if st.surjection.is_identity())}
        return result, summary, "ok"

    def modspace(self, args: Namespace) -> Outcome:
        sigma = self.load_fan(args.fan)
        budget = self.budget(args, self.config.arrangement_budget)
        workers = self.config.max_workers
        if args.family == 'dual-plane':
            family = dual_plane_family(sigma, self.config.dual_plane_grid, self.config.closure_rounds,
                                       workers, budget)
        elif args.family == 'vertex':
            family = vertex_family(sigma)
        else:
            data = load_json(args.family)
            graphs = data.get("graphs") if isinstance(data, dict) else data
            if not isinstance(graphs, list):
                raise InputError(f"{args.family} must hold a list of graphs")
            family = [complex1_from_json(g) for g in graphs]
            family = [c.base if isinstance(c, WeightedOneComplex) else c for c in family]
            if args.close:
                family = close_family(family, sigma, self.config.closure_rounds, workers, budget)

        fragment = assemble_fragment(family, sigma, barycentric=args.barycentric, workers=workers, budget=budget)
        realized = None
        if args.family == 'dual-plane':
            realized = realize_fragment(fragment)
        violations = fragment.validate()
        result = fragment_to_json(fragment, realized)
        result["violations"] = violations
        summary = {"types": len(fragment.family), "cells": len(fragment.cells), "violations": len(violations)}
        if realized is not None:
            summary["realized maximal cones"] = len(realized.maximal_cones())
        return result, summary, "ok" if not violations else "invalid"

    # ========================================================================
    # secondary
    # ========================================================================

    def secondary(self, args: Namespace) -> Outcome:
        budget = self.budget(args, self.config.secondary_budget)
        report = enumerate_secondary_fan(args.d, budget, self.config.max_workers)
        forgetting = None
        if args.forget:
            forgetting = weight_forgetting_check(args.d, self.load_fan(args.fan), budget, self.config.max_workers)
        result = secondary_to_json(report, forgetting)
        summary = {
            "maximal cones": report.maximal_cones,
            "triangulations": report.triangulations,
            "fine": report.fine,
            "unimodular (fine cones only)": report.unimodular,
            "unimodular are fine": report.unimodular_are_fine,
            "covers": report.covers,
            "pairwise faces": report.pairwise_faces,
        }
        status = "ok" if report.covers and report.pairwise_faces else "invalid"
        return result, summary, status

    def validate(self, args: Namespace) -> Outcome:
        sigma = self.load_fan(args.fan)
        e = self.load_embedded(args.graph)
        report = validate_embedded(e, sigma)
        result = {"validation": validation_to_json(report), "type": graph_type_to_json(e.graph)}
        summary = {"valid": report.valid, "violations": len(report.violations)}
        return result, summary, "ok" if report.valid else "invalid"
