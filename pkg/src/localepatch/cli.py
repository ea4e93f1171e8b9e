"""Thin command-line client for the verification service.

Every subcommand builds the same request model the HTTP API takes and either
dispatches to the service handlers in-process (the default; no server needed)
or POSTs to a running service given with --url.  Files are resolved client
side: `frame from-poset <ref>` references are inlined before sending.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from fastapi import HTTPException

from .formats import FormatError, _lines
from .service import models
from .service.app import (
    app as service_app,
    handle_check,
    handle_classify,
    handle_dot,
    handle_map_check,
    handle_patch,
    handle_props,
    handle_stone,
    handle_suite,
    handle_universal,
)

_HANDLERS = {
    "check": handle_check,
    "classify": handle_classify,
    "props": handle_props,
    "map-check": handle_map_check,
    "patch": handle_patch,
    "stone": handle_stone,
    "universal": handle_universal,
    "suite": handle_suite,
    "dot": handle_dot,
}


class CliError(Exception):
    pass


def resolve_frame_text(path: Path) -> str:
    """Frame file content with any from-poset reference inlined."""
    text = path.read_text()
    lines = _lines(text)
    if lines and lines[0][0] == "frame":
        if len(lines[0]) != 3 or lines[0][1] != "from-poset":
            raise CliError(f"{path}: expected `frame from-poset <ref>`")
        return (path.parent / lines[0][2]).read_text()
    return text


def build_map_request(path: Path) -> models.MapRequest:
    text = path.read_text()
    lines = _lines(text)
    if not lines or lines[0][0] != "map" or len(lines[0]) != 6:
        raise CliError(f"{path}: map header must read `map <name> : <src> -> <tgt>`")
    frames = {}
    for ref in (lines[0][3], lines[0][5]):
        frames[ref] = resolve_frame_text(path.parent / ref)
    return models.MapRequest(map=text, frames=frames)


class Client:
    """Dispatches requests in-process or over HTTP, same models either way."""

    def __init__(self, url: Optional[str] = None):
        self.url = url.rstrip("/") if url else None

    def call(self, endpoint: str, request, response_model):
        if self.url is None:
            try:
                return _HANDLERS[endpoint](request)
            except HTTPException as exc:
                raise CliError(exc.detail)
        import httpx

        reply = httpx.post(
            f"{self.url}/{endpoint}", json=request.model_dump(), timeout=600.0
        )
        if reply.status_code != 200:
            try:
                detail = reply.json().get("detail", reply.text)
            except ValueError:
                detail = reply.text
            raise CliError(f"{endpoint}: {detail}")
        return response_model.model_validate(reply.json())


def _print_props(props: list[models.PropLine]) -> None:
    for p in props:
        status = "PASS" if p.passed else "FAIL"
        tail = f" [{p.counterexample}]" if p.counterexample and not p.passed else ""
        print(f"{status} {p.name} ({p.checked} checks){tail}")


def _basis_text(b: Optional[models.BasisModel]) -> str:
    if b is None:
        return "absent"
    flags = []
    if b.closed_under_finite_meets:
        flags.append("meet-closed")
    if b.closed_under_finite_joins:
        flags.append("join-closed")
    suffix = f" ({', '.join(flags)})" if flags else ""
    return ", ".join(b.members) + suffix


def cmd_check(args, client: Client) -> int:
    req = models.FrameRequest(frame=resolve_frame_text(Path(args.file)))
    resp = client.call("check", req, models.CheckResponse)
    if args.json:
        print(resp.model_dump_json(indent=2))
    elif resp.ok:
        print(f"PASS frame laws ({resp.checked} checks)")
    else:
        print(f"FAIL {resp.law}: {resp.witness}")
    return 0 if resp.ok else 1


def cmd_classify(args, client: Client) -> int:
    req = models.FrameRequest(frame=resolve_frame_text(Path(args.file)))
    resp = client.call("classify", req, models.ClassifyResponse)
    if args.json:
        print(resp.model_dump_json(indent=2))
        return 0
    print(f"elements: {', '.join(resp.elements)}")
    print(f"compact: {resp.compact}")
    print(f"spectral basis: {_basis_text(resp.spectral)}")
    print(f"zero-dimensional basis: {_basis_text(resp.zero_dimensional)}")
    print(f"regular basis: {_basis_text(resp.regular)}")
    print(f"stone: {resp.stone}")
    return 0


def cmd_props(args, client: Client) -> int:
    req = models.FrameRequest(frame=resolve_frame_text(Path(args.file)))
    resp = client.call("props", req, models.PropsResponse)
    if args.json:
        print(resp.model_dump_json(indent=2))
    else:
        _print_props(resp.props)
    return 0 if resp.ok else 1


def cmd_map_check(args, client: Client) -> int:
    req = build_map_request(Path(args.file))
    resp = client.call("map-check", req, models.MapCheckResponse)
    if args.json:
        print(resp.model_dump_json(indent=2))
        return 0
    for u, v in resp.table.items():
        print(f"send {u} {v}")
    for flag in (
        "monotone",
        "preserves_top",
        "preserves_meets",
        "preserves_joins",
        "frame_hom",
        "spectral",
        "perfect",
    ):
        print(f"{flag}: {getattr(resp, flag)}")
    return 0 if resp.frame_hom else 1


def cmd_patch(args, client: Client) -> int:
    req = models.PatchRequest(
        frame=resolve_frame_text(Path(args.file)), include_dot=bool(args.dot)
    )
    resp = client.call("patch", req, models.PatchResponse)
    if args.dot and resp.dot:
        Path(args.dot).write_text(resp.dot)
    if args.json:
        print(resp.model_dump_json(indent=2))
        return 0
    print(f"patch size: {resp.size} (laws {'pass' if resp.law_ok else 'FAIL'})")
    for nuc in resp.nuclei:
        sends = ", ".join(f"{u}->{v}" for u, v in nuc.table.items())
        print(f"{nuc.name}: {sends}")
    return 0 if resp.law_ok else 1


def cmd_stone(args, client: Client) -> int:
    req = models.StoneRequest(
        frame=resolve_frame_text(Path(args.file)), include_dot=bool(args.dot)
    )
    resp = client.call("stone", req, models.StoneResponse)
    if args.dot and resp.dot_patch:
        out = Path(args.dot)
        out.write_text(resp.dot_patch)
        envelope_path = out.with_suffix(".envelope" + out.suffix)
        if resp.dot_envelope:
            envelope_path.write_text(resp.dot_envelope)
    if args.json:
        print(resp.model_dump_json(indent=2))
    else:
        _print_props(resp.props)
        print(f"patch size {resp.patch_size}, envelope size {resp.envelope_size}")
        print("PASS stone" if resp.ok else "FAIL stone")
    return 0 if resp.ok else 1


def cmd_universal(args, client: Client) -> int:
    req = build_map_request(Path(args.file))
    resp = client.call("universal", req, models.UniversalResponse)
    if args.json:
        print(resp.model_dump_json(indent=2))
    else:
        for e, v in resp.lift.items():
            print(f"lift {e} {v}")
        _print_props(resp.props)
    return 0 if resp.ok else 1


def cmd_suite(args, client: Client) -> int:
    req = models.SuiteRequest(max_points=args.max_points, workers=args.workers)
    resp = client.call("suite", req, models.SuiteResponse)
    if args.json:
        print(resp.model_dump_json(indent=2))
    else:
        for line in resp.lines:
            print(line)
        print(f"{resp.passed} passed, {resp.failed} failed")
    return 0 if resp.ok else 1


def cmd_dot(args, client: Client) -> int:
    req = models.FrameRequest(frame=resolve_frame_text(Path(args.file)))
    resp = client.call("dot", req, models.DotResponse)
    if args.dot:
        Path(args.dot).write_text(resp.dot)
    elif args.json:
        print(resp.model_dump_json(indent=2))
    else:
        print(resp.dot, end="")
    return 0


def cmd_serve(args, client: Client) -> int:
    import uvicorn

    uvicorn.run(service_app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localepatch",
        description="Pointfree topology on finite frames, as a service client.",
    )
    parser.add_argument("--url", help="service URL; defaults to in-process dispatch")
    parser.add_argument("--json", action="store_true", help="emit raw JSON responses")
    sub = parser.add_subparsers(dest="command", required=True)

    def frame_cmd(name, func, help_text, dot_flag=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="frame file")
        if dot_flag:
            p.add_argument("--dot", help="write a DOT Hasse diagram here")
        p.set_defaults(func=func)
        return p

    frame_cmd("check", cmd_check, "verify the frame laws, or report a counterexample")
    frame_cmd("classify", cmd_classify, "compactness, bases, and Stone-ness")
    frame_cmd("props", cmd_props, "run the separation proposition suite")
    frame_cmd("patch", cmd_patch, "enumerate the patch nuclei", dot_flag=True)
    frame_cmd("stone", cmd_stone, "patch Stone-ness and envelope oracle", dot_flag=True)
    frame_cmd("dot", cmd_dot, "Hasse diagram in DOT syntax", dot_flag=True)

    p = sub.add_parser("map-check", help="verify a frame map's structure flags")
    p.add_argument("file", help="map file")
    p.set_defaults(func=cmd_map_check)

    p = sub.add_parser("universal", help="lift a spectral map through the patch")
    p.add_argument("file", help="map file (inverse image of a map into a Stone locale)")
    p.set_defaults(func=cmd_universal)

    p = sub.add_parser("suite", help="run the exhaustive corpus suite")
    p.add_argument("--max-points", type=int, default=4)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    client = Client(args.url)
    try:
        return args.func(args, client)
    except (CliError, FormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
