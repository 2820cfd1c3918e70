"""Command-line front end.

Every command prints either a pandas table (default) or a JSON document
{"manifest": RunManifest, "result": ...}. The manifest records argv, the contents of
every input file, the seed and the sha256 of the canonical result, so ``verify`` can
re-run a stored report and compare digests.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from pydantic import ValidationError

from src import __version__
from src.config import Config
from src.errors import InvalidInput, ToolkitError, VerificationFailed
from src.schemas import (
    CertifyRequest,
    DistributionMode,
    FiniteFieldPoly,
    MonomialSupport,
    PolytopeFamily,
    RunManifest,
    WeightPartition,
    WeightVector,
)
from src.tools import curve_weights as cw
from src.tools import denef_loeser as dl
from src.tools import ff_oracle
from src.tools import hodge_eulerian as he
from src.tools import monodromy as mono
from src.tools import surface_weights as sw
from src.tools.polytope_core import build_family, convex_hull, face_volumes, load_polytope, polytope_summary
from src.utils.logger import get_logger, set_level
from src.utils.serializer import digest, load_json, render_table, to_jsonable

logger = get_logger(__name__)

Handler = Callable[[argparse.Namespace, "InputFiles"], Any]


class InputFiles:
    """Reads JSON inputs, from disk or from contents embedded in a manifest, and records them."""

    def __init__(self, embedded: Optional[Dict[str, Any]] = None):
        self.embedded = embedded or {}
        self.recorded: Dict[str, Any] = {}

    def read(self, path: str) -> Dict[str, Any]:
        if path in self.embedded:
            data = self.embedded[path]
        else:
            try:
                data = load_json(Path(path).read_text(encoding="utf-8"))
            except FileNotFoundError as e:
                raise InvalidInput(f"no such file: {path}") from e
            except (ValueError, UnicodeDecodeError) as e:
                raise InvalidInput(f"{path} is not a UTF-8 JSON object: {e}") from e
        self.recorded[path] = data
        return data


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------

def _int_list(text: str) -> Tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _sign(text: str) -> int:
    if text in ("+", "+1", "1", "plus"):
        return 1
    if text in ("-", "-1", "minus"):
        return -1
    raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")


def _family(values: Sequence[str], corner: Optional[Sequence[int]] = None) -> PolytopeFamily:
    name, *numbers = values
    try:
        sides = tuple(int(x) for x in numbers)
    except ValueError:
        raise InvalidInput(f"family parameters must be integers, got {numbers}")
    return PolytopeFamily(family=name, sides=sides, corner=tuple(corner) if corner else None)


def _support(data: Dict[str, Any]) -> MonomialSupport:
    return MonomialSupport.from_json(data)


def _polytope_or_support_hull(data: Dict[str, Any]):
    if "terms" in data:
        return convex_hull(_support(data).exponents)
    return load_polytope(data)


def _ff_poly(data: Dict[str, Any], q: Optional[int]) -> Tuple[FiniteFieldPoly, int]:
    q = q if q is not None else data.get("q")
    if q is None:
        raise InvalidInput("a field size is needed: pass --q or put \"q\" in the polynomial file")
    return FiniteFieldPoly(q=q, support=_support(data)), int(data.get("ext", 1))


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

def _polytope_info(args, inputs: InputFiles) -> Any:
    return polytope_summary(load_polytope(inputs.read(args.file)))


def _curve_weights(args, inputs: InputFiles) -> Any:
    return cw.curve_weights(_support(inputs.read(args.poly)), args.method)


def _surface_weights(args, inputs: InputFiles) -> Any:
    if args.family:
        family = _family(args.family, args.corner)
        P = build_family(family)
    elif args.file:
        P = load_polytope(inputs.read(args.file))
        family = P.family
    else:
        raise InvalidInput("give --family or a polytope file")

    weights = sw.assemble_surface_weights(P)
    result: Dict[str, Any] = {"weights": weights, "descending": list(weights.descending()), "total": weights.total}
    if family is not None and family.family == "prism":
        closed = sw.prism_weights(*family.sides)
        result.update(closed_form=closed, agree=closed.mult == weights.mult)
    elif family is not None and family.family == "pyramid" and (family.apex or (1, 1)) == (1, 1):
        closed = sw.pyramid_weights(*family.sides)
        result.update(closed_form=closed, agree=closed.mult == weights.mult)
    if args.breakdown:
        result["strata"] = sw.stratify_surface(P)
    return result


def _surface_top_weight(args, inputs: InputFiles) -> Any:
    try:
        top = sw.truncated_prism_top_weight(args.sides)
    except ValueError as e:
        raise InvalidInput(str(e)) from e
    return {"sides": list(args.sides), "top_weight": top}


def _dl_curve(args, inputs: InputFiles) -> Any:
    P = _polytope_or_support_hull(inputs.read(args.file))
    return {"face_volumes": face_volumes(P), "signed_weights": dl.curve_signed_weights_for(P)}


def _dl_surface(args, inputs: InputFiles) -> Any:
    if args.family:
        P = build_family(_family(args.family, args.corner))
    elif args.file:
        P = _polytope_or_support_hull(inputs.read(args.file))
    else:
        raise InvalidInput("give --family or a polytope file")
    fv = face_volumes(P)
    return {"face_volumes": fv, "signed_weights": dl.surface_signed_weights_dl(fv), "e_vector": dl.e_vector_gm4(fv)}


def _hodge(args, inputs: InputFiles) -> Any:
    P = load_polytope(inputs.read(args.polytope))
    correction = {"auto": None, "on": True, "off": False}[args.correction]
    table = he.hodge_numbers(P, args.m, args.lam, torus_correction=correction)
    result: Dict[str, Any] = {"hodge": table, "total": table.total}
    if args.plot:
        from src.tools.chart_gen import ProfilePlotter
        from src.tools.polytope_core import normalized_volume

        result["plot"] = ProfilePlotter().plot_hodge(table, normalized_volume(P))
    return result


def _eulerian(args, inputs: InputFiles) -> Any:
    mode = DistributionMode.SCALED if args.float else DistributionMode.EXACT
    dist = he.eulerian_distribution(args.n, mode)
    result: Dict[str, Any] = {"distribution": dist, "lemmas": he.beta_lemma_report(dist)}
    if args.plot:
        from src.tools.chart_gen import ProfilePlotter

        result["plot"] = ProfilePlotter().plot_distribution(dist)
    return result


def _adjoint(args, inputs: InputFiles) -> Any:
    return he.adjoint_hodge(args.hodge, args.group.upper(), args.sign)


def _conditions(args, inputs: InputFiles) -> Any:
    if args.analytic is not None:
        return he.analytic_bound_check(args.analytic, args.group.upper())
    source = args.adjoint_from
    if source is None:
        raise InvalidInput("give --adjoint-from or --analytic")
    if source.startswith("eulerian:"):
        try:
            n = int(source.split(":", 1)[1])
        except ValueError:
            raise InvalidInput(f"expected eulerian:N, got {source!r}")
        mode = DistributionMode.SCALED if args.float else DistributionMode.EXACT
        ha = he.ideal_adjoint(n, mode)
    else:
        try:
            hodge = _int_list(source.split(":", 1)[-1])
        except argparse.ArgumentTypeError as e:
            raise InvalidInput(str(e)) from e
        group = "GO" if args.group.upper() in ("GO", "SO") else "GL"
        ha = he.adjoint_hodge(hodge, group, args.sign)
    if args.simplified:
        return he.check_conditions(ha, mode="simplified")
    if args.dimx is None:
        raise InvalidInput("full mode needs --dimx (or pass --simplified)")
    return he.check_conditions(ha, args.dimx, mode="full")


def _thm_a(args, inputs: InputFiles) -> Any:
    partition = WeightPartition.of(list(args.partition))
    return mono.theorem_a_check(partition, args.r)


def _gabber(args, inputs: InputFiles) -> Any:
    weights = None
    if args.weights is not None:
        if len(args.weights) % 2 == 0:
            raise InvalidInput(f"expected 2n-1 multiplicities w_0..w_{{2n-2}}, got {len(args.weights)}")
        weights = WeightVector(n=(len(args.weights) + 1) // 2, mult=dict(enumerate(args.weights)))
    return mono.gabber_check(args.R, weights=weights, top_multiplicity=args.top_multiplicity,
                             waive_g2=args.waive_g2)


def _monodromy_curve(args, inputs: InputFiles) -> Any:
    return mono.curve_monodromy_check(_support(inputs.read(args.poly)))


def _monodromy_pyramid(args, inputs: InputFiles) -> Any:
    return mono.pyramid_monodromy_check(args.a, args.b, args.c)


def _monodromy_truncated(args, inputs: InputFiles) -> Any:
    return mono.truncated_prism_monodromy(args.sides, args.corner, waive_g2=args.waive_g2)


def _prime_truncation(args, inputs: InputFiles) -> Any:
    return mono.find_prime_truncation(args.sides)


def _oracle(args, inputs: InputFiles) -> Any:
    f, ext = _ff_poly(inputs.read(args.poly), args.q)
    ext = args.ext or ext
    if args.action == "nondeg":
        return {"q": f.q, "ext": ext, "nondegenerate": ff_oracle.is_nondegenerate(f, ext)}
    if args.action == "count":
        return {"q": f.q, "ext": ext, "count": ff_oracle.count_points(f, ext)}
    degrees = args.degrees or tuple(range(1, ext + 1))
    return ff_oracle.weil_bound_check(f, degrees)


def _certify(args, inputs: InputFiles) -> Any:
    from src.graph import create_graph
    from src.state import initial_state

    if args.family:
        request = CertifyRequest(family=_family(args.family, args.corner), use_closed_form=args.closed_form)
    elif args.file:
        data = inputs.read(args.file)
        if "family" in data:
            family = PolytopeFamily(**{k: v for k, v in data.items() if k in ("family", "sides", "corner", "apex")})
            request = CertifyRequest(family=family, use_closed_form=args.closed_form)
        else:
            request = CertifyRequest(vertices=data.get("vertices"), use_closed_form=args.closed_form)
    else:
        raise InvalidInput("give --family or a polytope file")

    graph = create_graph()
    config = {
        "configurable": {"thread_id": digest(request)[:16]},
        "recursion_limit": Config.RECURSION_LIMIT,
    }
    report = None
    for event in graph.stream(initial_state(request), config=config):
        for node_name, node_output in event.items():
            logger.info(f"✓ {node_name.upper()} completed")
            if node_output and node_output.get("report") is not None:
                report = node_output["report"]
    if report is None:
        raise InvalidInput("the certify workflow produced no report")
    return report


def _verify(args, inputs: InputFiles) -> Any:
    stored = inputs.read(args.report)
    try:
        manifest = RunManifest.model_validate(stored["manifest"])
        result = stored["result"]
    except (KeyError, ValidationError) as e:
        raise InvalidInput(f"{args.report} is not a report with a manifest: {e}") from e
    if digest(result) != manifest.outputs_digest:
        raise VerificationFailed("stored result does not match its recorded digest")

    argv = list(manifest.inputs.get("argv", []))
    code, payload = execute(argv, embedded=manifest.inputs.get("files", {}))
    if code != 0 or payload is None:
        raise VerificationFailed(f"re-running {manifest.command!r} exited with {code}")
    rerun = payload["manifest"].outputs_digest
    if rerun != manifest.outputs_digest:
        raise VerificationFailed(f"digest changed: recorded {manifest.outputs_digest}, re-run {rerun}")
    return {"verified": True, "command": manifest.command, "digest": rerun}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _leaf(parser: argparse.ArgumentParser, name: str, handler: Handler) -> argparse.ArgumentParser:
    parser.set_defaults(handler=handler, command_name=name)
    return parser


def _add_family(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", nargs="+", metavar="NAME_OR_N",
                        help="prism a b c | pyramid a b c | truncated_prism b1 ... bn (with --corner)")
    parser.add_argument("--corner", type=_int_list, help="truncated-prism corner legs a1,...,an")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ntw", description="Newton-polytope weights, Hodge numbers and monodromy")
    parser.add_argument("--format", choices=["json", "table"], default="table")
    parser.add_argument("--threads", type=_positive, help="worker threads for enumerations")
    parser.add_argument("--budget", type=_positive, help="enumeration budget in candidate cells")
    parser.add_argument("--seed", type=int, help="seed for randomized primality rounds")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    commands = parser.add_subparsers(dest="command", required=True)

    polytope = commands.add_parser("polytope").add_subparsers(dest="action", required=True)
    _leaf(polytope.add_parser("info"), "polytope info", _polytope_info).add_argument("file")

    curve = commands.add_parser("curve").add_subparsers(dest="action", required=True)
    p = _leaf(curve.add_parser("weights"), "curve weights", _curve_weights)
    p.add_argument("poly")
    p.add_argument("--method", choices=["slopes", "strata", "both"], default="both")

    surface = commands.add_parser("surface").add_subparsers(dest="action", required=True)
    p = _leaf(surface.add_parser("weights"), "surface weights", _surface_weights)
    p.add_argument("file", nargs="?")
    _add_family(p)
    p.add_argument("--breakdown", action="store_true", help="include every stratum contribution")
    p = _leaf(surface.add_parser("top-weight"), "surface top-weight", _surface_top_weight)
    p.add_argument("--sides", type=_int_list, required=True)

    dl_parser = commands.add_parser("dl").add_subparsers(dest="action", required=True)
    _leaf(dl_parser.add_parser("curve"), "dl curve", _dl_curve).add_argument("file")
    p = _leaf(dl_parser.add_parser("surface"), "dl surface", _dl_surface)
    p.add_argument("file", nargs="?")
    _add_family(p)

    p = _leaf(commands.add_parser("hodge"), "hodge", _hodge)
    p.add_argument("--polytope", required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", type=_int_list, required=True)
    p.add_argument("--correction", choices=["auto", "on", "off"], default="auto")
    p.add_argument("--plot", action="store_true")

    p = _leaf(commands.add_parser("eulerian"), "eulerian", _eulerian)
    p.add_argument("--n", type=_positive, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--float", action="store_true")
    p.add_argument("--plot", action="store_true")

    p = _leaf(commands.add_parser("adjoint"), "adjoint", _adjoint)
    p.add_argument("--hodge", type=_int_list, required=True)
    p.add_argument("--group", choices=["gl", "go", "GL", "GO"], default="gl")
    p.add_argument("--sign", type=_sign, default=-1)

    p = _leaf(commands.add_parser("conditions"), "conditions", _conditions)
    p.add_argument("--adjoint-from", help="h0,...,h_{n-1} (Hodge vector) or eulerian:N (ideal profile)")
    p.add_argument("--dimx", type=int)
    p.add_argument("--simplified", action="store_true")
    p.add_argument("--group", choices=["gl", "go", "so", "GL", "GO", "SO"], default="gl")
    p.add_argument("--sign", type=_sign, default=-1)
    p.add_argument("--float", action="store_true", help="scaled float distribution for eulerian:N")
    p.add_argument("--analytic", type=_positive, metavar="N", help="distribution-free bound check at n = N")

    monodromy = commands.add_parser("monodromy").add_subparsers(dest="action", required=True)
    p = _leaf(monodromy.add_parser("thm-a"), "monodromy thm-a", _thm_a)
    p.add_argument("--partition", type=_int_list, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p = _leaf(monodromy.add_parser("gabber"), "monodromy gabber", _gabber)
    p.add_argument("--R", type=_positive, required=True)
    p.add_argument("--weights", type=_int_list, help="multiplicities w_0,...,w_{2n-2}")
    p.add_argument("--top-multiplicity", type=int)
    p.add_argument("--waive-g2", action="store_true")
    _leaf(monodromy.add_parser("curve"), "monodromy curve", _monodromy_curve).add_argument("poly")
    p = _leaf(monodromy.add_parser("pyramid"), "monodromy pyramid", _monodromy_pyramid)
    for name in ("a", "b", "c"):
        p.add_argument(name, type=_positive)
    p = _leaf(monodromy.add_parser("truncated"), "monodromy truncated", _monodromy_truncated)
    p.add_argument("--sides", type=_int_list, required=True)
    p.add_argument("--corner", type=_int_list, required=True)
    p.add_argument("--waive-g2", action="store_true")

    search = commands.add_parser("search").add_subparsers(dest="action", required=True)
    p = _leaf(search.add_parser("prime-truncation"), "search prime-truncation", _prime_truncation)
    p.add_argument("--sides", type=_int_list, required=True)

    p = _leaf(commands.add_parser("oracle"), "oracle", _oracle)
    p.add_argument("action", choices=["nondeg", "count", "weil"])
    p.add_argument("poly")
    p.add_argument("--q", type=int)
    p.add_argument("--ext", type=_positive)
    p.add_argument("--degrees", type=_int_list)

    p = _leaf(commands.add_parser("certify"), "certify", _certify)
    p.add_argument("file", nargs="?")
    _add_family(p)
    p.add_argument("--closed-form", action="store_true", help="use closed-form family weights directly")

    _leaf(commands.add_parser("verify"), "verify", _verify).add_argument("report")
    return parser


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def execute(argv: Sequence[str], embedded: Optional[Dict[str, Any]] = None) -> Tuple[int, Optional[Dict[str, Any]]]:
    """
    Run one command without printing its payload.

    Returns:
        (exit code, {"manifest", "result", "format"}) or (code, None) on error
    """
    argv = list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else 2), None

    saved = (Config.THREADS, Config.ENUMERATION_BUDGET, Config.SEED)
    if args.threads is not None:
        Config.THREADS = args.threads
    if args.budget is not None:
        Config.ENUMERATION_BUDGET = args.budget
    if args.seed is not None:
        Config.SEED = args.seed
    if args.log_level:
        set_level(args.log_level)

    inputs = InputFiles(embedded)
    try:
        result = to_jsonable(args.handler(args, inputs))
        manifest = RunManifest(
            command=args.command_name,
            inputs={"argv": argv, "files": inputs.recorded},
            toolkit_version=__version__,
            seed=Config.SEED,
            outputs_digest=digest(result),
        )
        return 0, {"manifest": manifest, "result": result, "format": args.format}
    except ToolkitError as e:
        print(f"{e.name}: {e}", file=sys.stderr)
        return e.exit_code, None
    except (ValueError, KeyError) as e:
        # pydantic ValidationError is a ValueError
        print(f"InvalidInput: {e}", file=sys.stderr)
        return InvalidInput.exit_code, None
    finally:
        Config.THREADS, Config.ENUMERATION_BUDGET, Config.SEED = saved


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run a command and print its payload; returns the exit code."""
    argv = sys.argv[1:] if argv is None else argv
    code, payload = execute(argv)
    if payload is None:
        return code

    if payload["format"] == "json":
        print(json.dumps({"manifest": to_jsonable(payload["manifest"]), "result": payload["result"]},
                         sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(render_table(payload["result"]))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
