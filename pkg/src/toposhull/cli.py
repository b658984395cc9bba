"""Command-line front end.

Every command reads one description file (``-`` for stdin), runs one
operation and prints a report. Exit codes: 0 success/true, 1 computed
false or absent, 2 input error, 3 size guard hit, 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import hull as hullmod
from ._config import DEFAULT_MAX_FRONTIER, size_guard
from .errors import (
    DomainMismatch,
    InputSyntaxError,
    InternalInconsistency,
    NotEndo,
    ShapeMismatch,
    SizeGuardExceeded,
    UnknownReference,
    ValidationError,
)
from .locally_finite import monic_endo_inverse, schroeder_bernstein
from .mset import (
    EquivariantMap,
    MSet,
    coequalizer,
    find_isomorphism,
    hom,
    is_epic,
    is_monic,
    orbit_invariants,
    product,
    quotients_up_to_iso,
    sub_msets,
)
from .textio import Workspace, format_map, format_monoid, format_mset, parse
from .topos import exponential, omega

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_GUARD, EXIT_INTERNAL = 0, 1, 2, 3, 4


@dataclass
class Report:
    command: str
    inputs: dict
    result: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    summary: list[str] = field(default_factory=list)
    code: int = EXIT_OK
    _chunks: list[str] = field(default_factory=list)
    _emitted: set = field(default_factory=set)

    @property
    def entities(self) -> str:
        return "\n".join(self._chunks)

    def as_json(self) -> dict:
        result = dict(self.result)
        result["entities"] = self.entities
        return {"command": self.command, "inputs": self.inputs, "result": result,
                "witnesses": self.witnesses}


class Emitter:
    """Collects entities in the input text format, each name once."""

    def __init__(self, ws: Workspace, report: Report):
        self.ws = ws
        self.report = report
        self.names: dict[MSet, str] = {}

    def _add(self, key, text):
        if key not in self.report._emitted:
            self.report._emitted.add(key)
            self.report._chunks.append(text)

    def monoid(self, M) -> str:
        name = self.ws.monoid_name(M)
        self._add(("monoid", name), format_monoid(name, M))
        return name

    def mset(self, A: MSet, name: str | None = None, definitions=None) -> str:
        if name is None:
            name = self.names.get(A) or self.ws.mset_name(A)
            if name is None:
                raise InternalInconsistency("unnamed M-set in report")
        self.names.setdefault(A, name)
        mname = self.monoid(A.monoid)
        self._add(("mset", name), format_mset(name, A, mname, definitions))
        return name

    def map(self, f: EquivariantMap, name: str) -> str:
        d = self.mset(f.dom)
        c = self.mset(f.cod)
        self._add(("map", name), format_map(name, f, d, c))
        return name


def mset_json(A: MSet) -> dict:
    return {"elements": list(A.elements),
            "action": [[A.elements[v] for v in row] for row in A.action.tolist()]}


def map_json(f: EquivariantMap) -> dict:
    return {f.dom.elements[x]: f.cod.elements[int(y)] for x, y in enumerate(f.mapping)}


def _collision(f: EquivariantMap) -> list[str]:
    seen: dict[int, int] = {}
    for x, y in enumerate(f.mapping.tolist()):
        if y in seen:
            return [f.dom.elements[seen[y]], f.dom.elements[x]]
        seen[y] = x
    return []


# ---------------------------------------------------------------- commands

def cmd_validate(ws: Workspace, args, rep: Report):
    rep.result = {
        "monoids": {n: {"size": M.size} for n, M in ws.monoids.items()},
        "msets": {n: {"monoid": ws.monoid_name(A.monoid), "size": A.size} for n, A in ws.msets.items()},
        "maps": {n: {"from": ws.mset_name(f.dom), "to": ws.mset_name(f.cod),
                     "monic": is_monic(f), "epic": is_epic(f)} for n, f in ws.maps.items()},
    }
    rep.summary.append(f"ok: {len(ws.monoids)} monoid(s), {len(ws.msets)} M-set(s), {len(ws.maps)} map(s)")
    for n, info in rep.result["maps"].items():
        rep.summary.append(f"  map {n}: monic={info['monic']} epic={info['epic']}")


def cmd_omega(ws, args, rep):
    M = ws.get_monoid(args.monoid)
    Om = omega(M)
    em = Emitter(ws, rep)
    name = em.mset(Om.as_mset, f"Omega_{args.monoid}", Om.definitions())
    rep.result = {"object": name, "size": Om.as_mset.size, "truth": Om.as_mset.elements[Om.truth],
                  "definitions": Om.definitions(), "mset": mset_json(Om.as_mset)}
    rep.summary.append(f"Omega over {args.monoid}: {Om.as_mset.size} right ideals, truth = "
                       f"{Om.as_mset.elements[Om.truth]}")
    for label, d in Om.definitions().items():
        rep.summary.append(f"  {label} = {d}")


def cmd_hom(ws, args, rep):
    A, B = ws.get_mset(args.A), ws.get_mset(args.B)
    maps = hom(A, B)
    rep.result = {"count": len(maps), "maps": [map_json(f) for f in maps]}
    em = Emitter(ws, rep)
    for i, f in enumerate(maps):
        em.map(f, f"hom_{args.A}_{args.B}_{i}")
    rep.summary.append(f"|hom({args.A}, {args.B})| = {len(maps)}")


def cmd_exp(ws, args, rep):
    A, B = ws.get_mset(args.A), ws.get_mset(args.B)
    X = exponential(A, B)
    em = Emitter(ws, rep)
    name = em.mset(X.as_mset, f"Exp_{args.B}_{args.A}", X.definitions())
    em.mset(X.eval_product, f"{name}_x_{args.A}")
    em.map(X.eval, f"eval_{name}")
    rep.result = {"object": name, "size": X.as_mset.size, "definitions": X.definitions(),
                  "mset": mset_json(X.as_mset), "eval": map_json(X.eval)}
    rep.summary.append(f"{args.B}^{args.A} has {X.as_mset.size} elements")


def cmd_product(ws, args, rep):
    A, B = ws.get_mset(args.A), ws.get_mset(args.B)
    P, p1, p2 = product(A, B)
    em = Emitter(ws, rep)
    name = em.mset(P, f"{args.A}_x_{args.B}")
    em.map(p1, f"p1_{name}")
    em.map(p2, f"p2_{name}")
    rep.result = {"object": name, "size": P.size, "mset": mset_json(P),
                  "proj1": map_json(p1), "proj2": map_json(p2)}
    rep.summary.append(f"{name}: {P.size} elements")


def cmd_quotients(ws, args, rep):
    A = ws.get_mset(args.A)
    em = Emitter(ws, rep)
    out = []
    for i, (Q, proj) in enumerate(quotients_up_to_iso(A)):
        name = em.mset(Q, f"{args.A}_q{i}")
        em.map(proj, f"{args.A}_proj{i}")
        out.append({"object": name, "size": Q.size, "mset": mset_json(Q), "projection": map_json(proj)})
    rep.result = {"count": len(out), "quotients": out}
    rep.summary.append(f"{args.A} has {len(out)} epimorphic images up to isomorphism")
    for q in out:
        rep.summary.append(f"  {q['object']}: {q['size']} elements")


def cmd_subobjects(ws, args, rep):
    A = ws.get_mset(args.A)
    subs = sub_msets(A)
    members = [[A.elements[x] for x in S.sorted_members()] for S in subs]
    rep.result = {"count": len(subs), "subobjects": members}
    rep.summary.append(f"{args.A} has {len(subs)} subobjects")
    for m in members:
        rep.summary.append("  {" + ", ".join(m) + "}")


def cmd_essential(ws, args, rep):
    f = ws.get_map(args.f)
    if not is_monic(f):
        rep.code = EXIT_FALSE
        rep.result = {"essential": False, "monic": False}
        rep.witnesses = {"not_monic": _collision(f)}
        rep.summary.append(f"{args.f} is not monic: {' and '.join(_collision(f))} share an image")
        return
    res = hullmod.is_essential(f)
    rep.result = {"essential": res.essential}
    if res.essential:
        rep.summary.append(f"{args.f} is essential")
        return
    rep.code = EXIT_FALSE
    B = f.cod
    b, b2 = res.pair
    Q, proj = coequalizer(res.congruence)
    em = Emitter(ws, rep)
    em.map(f, args.f)
    qname = em.mset(Q, f"{ws.mset_name(B)}_collapsed")
    em.map(proj, f"collapse_{qname}")
    rep.witnesses = {
        "pair": [B.elements[b], B.elements[b2]],
        "congruence": [[B.elements[x] for x in blk] for blk in res.congruence.blocks()],
        "quotient": qname,
        "projection": map_json(proj),
    }
    rep.summary.append(f"{args.f} is NOT essential: collapsing {B.elements[b]} ~ {B.elements[b2]} "
                       f"gives a proper quotient {qname} that keeps the composite monic")


def _retraction_witness(ws, em, A: MSet, base: str, res) -> dict:
    W = res.power
    wname = em.mset(W.as_mset, f"Omega_pow_{base}", W.definitions())
    em.map(res.singleton, f"singleton_{base}")
    if res.injective:
        em.map(res.retraction, f"retract_{base}")
        return {"power_object": wname, "retraction": map_json(res.retraction),
                "singleton": map_json(res.singleton)}
    E = res.extension.cod
    ename = em.mset(E, f"{base}_essential_ext", {k: v for k, v in W.definitions().items() if k in E.elements})
    em.map(res.extension, f"{base}_essential_embed")
    return {"power_object": wname, "essential_extension": ename, "embedding": map_json(res.extension),
            "singleton": map_json(res.singleton)}


def cmd_injective(ws, args, rep):
    A = ws.get_mset(args.A)
    res = hullmod.is_injective(A)
    em = Emitter(ws, rep)
    em.mset(A, args.A)
    rep.result = {"injective": res.injective}
    rep.witnesses = _retraction_witness(ws, em, A, args.A, res)
    if res.injective:
        rep.summary.append(f"{args.A} is injective; retraction retract_{args.A} from Omega^{args.A} "
                           f"({res.power.as_mset.size} elements) splits the singleton map")
    else:
        rep.code = EXIT_FALSE
        ext = res.extension.cod
        rep.summary.append(f"{args.A} is NOT injective: proper essential extension "
                           f"{args.A}_essential_ext with {ext.size} elements")


def _certificate_json(cert: hullmod.HullCertificate) -> dict:
    E, A = cert.hull, cert.base
    return {
        "method": cert.method,
        "size": E.size,
        "mset": mset_json(E),
        "embedding": map_json(cert.embedding),
        "power_object_size": cert.power.as_mset.size,
        "steps": [list(s) if isinstance(s, tuple) else cert.power.as_mset.elements[s] for s in cert.steps],
        "step_count": cert.step_count,
        "step_bound": cert.step_bound,
        "essential_witnesses": [
            {"pair": [E.elements[b], E.elements[b2]], "identifies": [A.elements[a], A.elements[a2]]}
            for (b, b2), (a, a2) in sorted(cert.essential_witnesses.items())
        ],
    }


def cmd_hull(ws, args, rep):
    A = ws.get_mset(args.A)
    em = Emitter(ws, rep)
    em.mset(A, args.A)
    methods = ["subobject", "quotient"] if args.method == "both" else [args.method]
    certs = {}
    for method in methods:
        if method == "subobject":
            cert = hullmod.injective_hull_subobject(A)
        else:
            cert = hullmod.injective_hull_quotient(A, cross_check=args.method != "both")
        certs[method] = cert
        defs = cert.power.definitions()
        hname = em.mset(cert.hull, f"{args.A}_hull_{method}",
                        {k: v for k, v in defs.items() if k in cert.hull.elements})
        em.map(cert.embedding, f"{args.A}_embed_{method}")
        inj = cert.injectivity_witness
        wname = em.mset(inj.power.as_mset, f"Omega_pow_{hname}")
        em.map(inj.retraction, f"retract_{hname}")
        info = _certificate_json(cert)
        info["object"] = hname
        rep.result[method] = info
        rep.witnesses[method] = {"injectivity": {"power_object": wname,
                                                  "retraction": map_json(inj.retraction)}}
        rep.summary.append(f"{method} hull of {args.A}: {hname} with {cert.hull.size} elements "
                           f"(Omega^{args.A} has {cert.power.as_mset.size}; {cert.step_count} steps)")
    if args.method == "both":
        iso = hullmod.hull_uniqueness_iso(certs["subobject"].embedding, certs["quotient"].embedding,
                                          check_preconditions=False)
        em.map(iso.iso, f"{args.A}_hull_iso")
        rep.result["agree"] = True
        rep.witnesses["iso"] = map_json(iso.iso)
        rep.summary.append(f"methods agree: {args.A}_hull_iso commutes with both embeddings")


def cmd_iso(ws, args, rep):
    A, B = ws.get_mset(args.A), ws.get_mset(args.B)
    f = find_isomorphism(A, B)
    rep.result = {"isomorphic": f is not None}
    if f is not None:
        Emitter(ws, rep).map(f, f"{args.A}_to_{args.B}")
        rep.witnesses = {"iso": map_json(f)}
        rep.summary.append(f"{args.A} and {args.B} are isomorphic")
        return
    rep.code = EXIT_FALSE
    if A.size != B.size:
        reason = f"cardinality: |{args.A}| = {A.size} but |{args.B}| = {B.size}"
    elif orbit_invariants(A) != orbit_invariants(B):
        reason = "fixed-point counts or orbit sizes differ"
    else:
        reason = "exhaustive search found no equivariant bijection"
    rep.witnesses = {"reason": reason}
    rep.summary.append(f"{args.A} and {args.B} are not isomorphic ({reason})")


def cmd_sb(ws, args, rep):
    f, g = ws.get_map(args.f), ws.get_map(args.g)
    if f.dom != g.cod or f.cod != g.dom:
        raise DomainMismatch("sb needs f: A -> B and g: B -> A")
    for name, h in ((args.f, f), (args.g, g)):
        if not is_monic(h):
            rep.code = EXIT_FALSE
            rep.result = {"inverses": False}
            rep.witnesses = {"not_monic": name, "collision": _collision(h)}
            rep.summary.append(f"{name} is not monic: {' and '.join(_collision(h))} share an image")
            return
    f_inv, g_inv = schroeder_bernstein(f, g)
    em = Emitter(ws, rep)
    em.map(f_inv, f"{args.f}_inv")
    em.map(g_inv, f"{args.g}_inv")
    rep.result = {"inverses": True}
    rep.witnesses = {"f_inv": map_json(f_inv), "g_inv": map_json(g_inv)}
    rep.summary.append(f"{args.f} and {args.g} are isomorphisms; inverses {args.f}_inv, {args.g}_inv")


def cmd_invert(ws, args, rep):
    f = ws.get_map(args.f)
    if f.dom != f.cod:
        raise NotEndo(f"{args.f} is not an endomorphism")
    if not is_monic(f):
        rep.code = EXIT_FALSE
        rep.result = {"invertible": False}
        rep.witnesses = {"collision": _collision(f)}
        rep.summary.append(f"{args.f} is neither monic nor epic: {' and '.join(_collision(f))} share an image")
        return
    res = monic_endo_inverse(f, with_exponents=True)
    Emitter(ws, rep).map(res.inverse, f"{args.f}_inv")
    rep.result = {"invertible": True, "m": res.m, "n": res.n}
    rep.witnesses = {"inverse": map_json(res.inverse)}
    rep.summary.append(f"{args.f}^{res.m + res.n + 1} = {args.f}^{res.m}, so {args.f}^{res.n} is its inverse")


COMMANDS = {
    "validate": (cmd_validate, []),
    "omega": (cmd_omega, ["monoid"]),
    "hom": (cmd_hom, ["A", "B"]),
    "exp": (cmd_exp, ["A", "B"]),
    "product": (cmd_product, ["A", "B"]),
    "quotients": (cmd_quotients, ["A"]),
    "subobjects": (cmd_subobjects, ["A"]),
    "essential": (cmd_essential, ["f"]),
    "injective": (cmd_injective, ["A"]),
    "hull": (cmd_hull, ["A"]),
    "iso": (cmd_iso, ["A", "B"]),
    "sb": (cmd_sb, ["f", "g"]),
    "invert": (cmd_invert, ["f"]),
}


def run(command: str, args: argparse.Namespace, ws: Workspace) -> Report:
    fn, params = COMMANDS[command]
    rep = Report(command, {"file": ws.source, **{p: getattr(args, p) for p in params}})
    if command == "hull":
        rep.inputs["method"] = args.method
    fn(ws, args, rep)
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--max-frontier", type=int, default=argparse.SUPPRESS, metavar="N",
                        help=f"abort searches beyond N candidates (default {DEFAULT_MAX_FRONTIER})")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="toposhull", parents=[common],
                                     description="Injective hulls in the topos of finite M-sets.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, params) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        p.add_argument("file", help="description file, or - for stdin")
        for param in params:
            p.add_argument(param)
        if name == "hull":
            p.add_argument("--method", choices=["subobject", "quotient", "both"], default="both")
    return parser


def render_text(rep: Report) -> str:
    lines = list(rep.summary)
    if rep.entities:
        lines += ["", rep.entities.rstrip("\n")]
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    fmt = getattr(args, "format", "text")
    quiet = getattr(args, "quiet", False)
    limit = getattr(args, "max_frontier", DEFAULT_MAX_FRONTIER)
    try:
        if args.file == "-":
            text, source = sys.stdin.read(), "<stdin>"
        else:
            with open(args.file, encoding="utf-8") as fh:
                text, source = fh.read(), args.file
        with size_guard(limit):
            ws = parse(text, source)
            rep = run(args.command, args, ws)
    except (InputSyntaxError, UnknownReference, ValidationError, DomainMismatch, ShapeMismatch,
            NotEndo, OSError, ValueError) as exc:
        print(f"toposhull: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeGuardExceeded as exc:
        print(f"toposhull: size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InternalInconsistency as exc:
        print(f"toposhull: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if not quiet:
        if fmt == "json":
            sys.stdout.write(json.dumps(rep.as_json(), indent=2, sort_keys=True) + "\n")
        else:
            sys.stdout.write(render_text(rep))
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
