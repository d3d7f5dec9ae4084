"""Command-line interface.

Exit status: 0 when every check passes, 1 on any failure or mismatch, 2 on
usage errors.  Reports go to stdout (or ``--output``); progress goes to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import acceptance, identities, qseries, subspaces, zhu
from .fock import FockVector, TermSyntaxError
from .kernels import InternalBoundError
from .report import jsonable
from .scalars import Q, HalfInt, scalar_str
from .vertex import omega, state_field_mode

COMMANDS = ("verify", "char", "commutant", "duality", "zhu", "jet", "phi", "ope", "basis", "sl2", "generators", "report")


class UsageError(Exception):
    pass


class Output:
    """Collects report lines (text) or a payload (json) and the overall pass flag."""

    def __init__(self, fmt: str, osc: str):
        self.fmt = fmt
        self.osc = osc
        self.lines: list = []
        self.payload: dict = {}
        self.ok = True

    def vec(self, v: FockVector) -> str:
        return v.to_text(self.osc)

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def fail(self) -> None:
        self.ok = False

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(jsonable({**self.payload, "passed": self.ok}), indent=2, sort_keys=True) + "\n"
        return "\n".join(self.lines) + "\n"


def _progress(args):
    if args.quiet:
        return None
    return lambda msg: print(msg, file=sys.stderr, flush=True)


def named_state(name: str) -> FockVector:
    """A state from a short name (phi<k>, e^a, e^w, vacuum, omega) or a term expression."""
    key = name.strip()
    if key.startswith("phi") and key[3:].isdigit():
        return subspaces.phi(int(key[3:]))
    table = {
        "vacuum": FockVector.vacuum(),
        "1": FockVector.vacuum(),
        "e^a": FockVector.lattice(2),
        "e^w": FockVector.lattice(1),
        "omega": omega(),
    }
    if key in table:
        return table[key]
    try:
        return FockVector.parse(key)
    except TermSyntaxError as exc:
        raise UsageError(f"cannot read state {name!r}: {exc}") from None


def _space(args, allowed) -> str:
    space = args.space or allowed[0]
    if space not in allowed:
        raise UsageError(f"--space must be one of {', '.join(allowed)} for this command")
    return space


# ------------------------------------------------------------ commands

def cmd_verify(args, out: Output) -> None:
    names = list(identities.SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        rep = identities.SUITES[name](args.max_weight, args.seed, _progress(args))
        reports.append(rep)
        out.text(rep.summary())
        for inputs, left, right in rep.failures[:5]:
            out.text(f"  inputs={jsonable(inputs)} left={left} right={right}")
        if not rep.passed or rep.checked == 0:
            out.fail()
    out.payload = {"command": "verify", "reports": [r.to_json() for r in reports]}


def cmd_char(args, out: Output) -> None:
    space = _space(args, ("C", "W", "Wcirc"))
    D = args.max_weight
    if space == "Wcirc":
        got = qseries.enumerated_char("Wcirc", D, with_z=False)
        out.text(f"ch {space} (q-integral part, basis count) = {got}")
        out.payload = {"command": "char", "space": space, "enumerated": got.to_json()}
        return
    formula = qseries.fermionic_char_C(D) if space == "C" else qseries.fermionic_char_W(D)
    enum = qseries.enumerated_char(space, D)
    mism = qseries.compare(enum, formula)
    out.text(f"ch {space}(z, q) = {formula}")
    out.text(f"ch {space}(1, q) = {formula.set_z_one()}")
    out.text("basis count agrees with the fermionic formula" if mism is None else f"basis count: {mism}")
    if mism is not None:
        out.fail()
    out.payload = {
        "command": "char",
        "space": space,
        "formula": formula.to_json(),
        "enumerated": enum.to_json(),
        "mismatch": mism.to_json() if mism else None,
    }


def _kernel_table(args, out: Output, generators: str, ambient: str, K=None) -> list:
    rows = subspaces.commutant_dimension_table(
        generators, ambient, args.max_weight, args.max_charge, K=K, strict=False, progress=_progress(args)
    )
    out.text(f"{'charge':>6} {'weight':>7} {'dim':>4} {'explicit':>8} {'sandwich':>8}")
    for r in rows:
        out.text(f"{r.charge:>6} {scalar_str(r.weight):>7} {r.dim:>4} {r.explicit_rank:>8} {str(r.sandwich):>8}")
        if not r.sandwich:
            out.fail()
    return rows


def cmd_commutant(args, out: Output) -> None:
    gens = args.of or "W"
    ambient = getattr(args, "in") or "VA1"
    if gens not in ("W", "C") or ambient not in ("VA1", "VA1circ"):
        raise UsageError("--of must be W or C and --in must be VA1 or VA1circ")
    if gens == "C" and ambient != "VA1":
        raise UsageError("--of C is only supported with --in VA1")
    K = args.n if gens == "C" else None
    rows = _kernel_table(args, out, gens, ambient, K)
    payload = {"command": "commutant", "of": gens, "in": ambient, "rows": [r.to_json() for r in rows]}
    if ambient == "VA1" and all(r.weight.denominator == 1 for r in rows):
        got = qseries.char_from_dimensions(rows, args.max_weight)
        want = qseries.fermionic_char_C(args.max_weight) if gens == "W" else qseries.fermionic_char_W(args.max_weight)
        mism = qseries.compare(got, want)
        out.text(f"character = {got}")
        out.text("matches the fermionic formula" if mism is None else str(mism))
        if mism is not None:
            out.fail()
        payload["character"] = got.to_json()
        payload["mismatch"] = mism.to_json() if mism else None
    out.payload = payload


def cmd_duality(args, out: Output) -> None:
    K = args.n if args.n is not None else 3
    rows = _kernel_table(args, out, "C", "VA1", K)
    got = qseries.char_from_dimensions(rows, args.max_weight)
    want = qseries.enumerated_char("W", args.max_weight)
    mism = qseries.compare(got, want)
    out.text(f"kernel of phi_0..phi_{K} modes: {got}")
    out.text("equals the character of W" if mism is None else str(mism))
    if mism is not None:
        out.fail()
    out.payload = {
        "command": "duality",
        "K": K,
        "rows": [r.to_json() for r in rows],
        "character": got.to_json(),
        "mismatch": mism.to_json() if mism else None,
    }


def cmd_zhu(args, out: Output) -> None:
    space = _space(args, ("C", "W", "VA1"))
    if args.left is not None or args.right is not None:
        if args.left is None or args.right is None:
            raise UsageError("--left and --right must be given together")
        u, v = named_state(args.left), named_state(args.right)
        prod, br = zhu.zhu_product(u, v, space), zhu.zhu_bracket(u, v, space)
        out.text(f"[{args.left}].[{args.right}] is {'zero' if prod.is_zero else 'non-zero'} in R_{space}")
        out.text(f"{{[{args.left}], [{args.right}]}} is {'zero' if br.is_zero else 'non-zero'} in R_{space}")
        out.payload = {"command": "zhu", "space": space, "product": prod.to_json(), "bracket": br.to_json()}
        return
    table = zhu.c2_dims(space, args.max_weight, None if space != "VA1" else args.max_charge, _progress(args))
    dims = table.graded_dims()
    out.text(f"graded dimensions of R_{space} up to weight {args.max_weight}: {dims}")
    for r in table.rows:
        if r.space_dim:
            out.text(f"  charge={r.charge} weight={r.weight} dim={r.space_dim} c2_rank={r.span_rank} quotient={r.quotient_dim}")
    out.payload = {"command": "zhu", **table.to_json()}


def _ring(args) -> tuple:
    name = args.ring or "RC"
    if name == "RW":
        return name, zhu.ring_RW()
    if name == "RC":
        return name, zhu.ring_RC(args.max_weight)
    path = Path(name)
    if not path.exists():
        raise UsageError(f"--ring must be RW, RC or a JSON file, got {name!r}")
    try:
        return path.name, zhu.DifferentialRingSpec.from_json(path.read_text(encoding="utf-8"))
    except (ValueError, KeyError) as exc:
        raise UsageError(f"invalid ring description in {name}: {exc}") from None


def cmd_jet(args, out: Output) -> None:
    name, spec = _ring(args)
    series = zhu.jet_character(spec, args.max_weight)
    out.text(str(series))
    payload = {"command": "jet", "ring": name, "series": series.to_json()}
    if args.space:
        space = _space(args, ("C", "W"))
        want = qseries.enumerated_char(space, args.max_weight, with_z=False)
        mism = qseries.compare(series, want)
        out.text(f"compared with ch {space}: " + ("equal" if mism is None else str(mism)))
        payload["compare"] = {"space": space, "mismatch": mism.to_json() if mism else None}
        if mism is not None:
            out.fail()
    out.payload = payload


def cmd_phi(args, out: Output) -> None:
    if args.n is None or args.n < 0:
        raise UsageError("phi needs --n with a non-negative integer")
    v = subspaces.phi(args.n)
    out.text(out.vec(v))
    out.payload = {
        "command": "phi",
        "n": args.n,
        "text": out.vec(v),
        "terms": v.to_json(),
        "weight": scalar_str(v.weight()),
        "charge": v.charge(),
    }


def cmd_ope(args, out: Output) -> None:
    if args.left is None or args.right is None:
        raise UsageError("ope needs --left and --right (phi<k>, e^a, e^w, vacuum, omega or a term expression)")
    u, v = named_state(args.left), named_state(args.right)
    if not (u and v and u.is_bihomogeneous() and v.is_bihomogeneous()):
        raise UsageError("--left and --right must be non-zero bi-homogeneous states")
    (cu, wu), (cv, wv) = u.bidegree(), v.bidegree()
    # u(n)v has weight wu + wv - n - 1, bounded below by the charge sector
    top = wu + wv - 1 - Q((cu + cv) ** 2, 4)
    shift = (cu * cv) % 2
    if args.n is not None:
        modes = [HalfInt(2 * args.n + shift)] if shift else [HalfInt(2 * args.n)]
    else:
        modes = [h for h in (HalfInt(2 * k + shift) for k in range(int(top) + 1)) if h.value <= top]
    results = []
    for n in modes:
        try:
            w = state_field_mode(u, n, v)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        results.append((n, w))
        out.text(f"{args.left}({n}){args.right} = {out.vec(w)}")
    out.payload = {
        "command": "ope",
        "left": args.left,
        "right": args.right,
        "modes": [{"n": str(n), "text": out.vec(w), "terms": w.to_json()} for n, w in results],
    }


def cmd_basis(args, out: Output) -> None:
    space = _space(args, ("C", "W", "Wcirc", "VA1", "VA1circ"))
    rows = []
    for c, w in subspaces.bidegrees(space, args.max_weight, args.max_charge, -args.max_charge):
        labels = subspaces.basis_labels(space, c, w)
        if not labels:
            continue
        out.text(f"charge={c} weight={scalar_str(w)} count={len(labels)}")
        entries = []
        for lab in labels:
            vec = subspaces.basis_vector(space, lab)
            out.text(f"  {jsonable(lab)}: {out.vec(vec)}")
            entries.append({"label": jsonable(lab), "text": out.vec(vec)})
        rows.append({"charge": c, "weight": scalar_str(w), "count": len(labels), "vectors": entries})
    out.payload = {"command": "basis", "space": space, "rows": rows}


def cmd_sl2(args, out: Output) -> None:
    rep = subspaces.sl2_report(args.max_weight, args.n if args.n is not None else 4)
    data = rep.to_json()
    for row in data["rows"]:
        out.text(
            f"weight={row['weight']} dim={row['dim']} expected={row['expected_dim']} "
            f"d_rank={row['d_rank']} ker_L1={row['ker_L1']} ok={row['ok']}"
        )
    for m in data["matrices"]:
        out.text(f"matrix A_{m['n']}: det={m['det']} expected={m['expected_det']} ok={m['ok']}")
    out.text(identities_summary(data["recurrence"]))
    if not rep.passed:
        out.fail()
    out.payload = {"command": "sl2", **data}


def identities_summary(rep: dict) -> str:
    status = "PASS" if rep["passed"] else "FAIL"
    return f"{status} {rep['identity']}: checked={rep['checked']} failures={len(rep['failures'])}"


def cmd_generators(args, out: Output) -> None:
    reports = [subspaces.strong_generation_check(args.max_weight, _progress(args))]
    for k in range(0, (args.max_weight - 1) // 2 + 1):
        reports.append(subspaces.minimality_check(k))
    for r in reports:
        out.text(r.summary())
        if not r.passed:
            out.fail()
    out.payload = {"command": "generators", "reports": [r.to_json() for r in reports]}


def cmd_report(args, out: Output) -> None:
    results = acceptance.run_all(_progress(args))
    for c in results:
        out.text(c.line())
        if not c.passed:
            out.fail()
            out.text(f"  failed: {c.details.get('failed')}")
    out.payload = {"command": "report", "criteria": [c.to_json() for c in results]}


HANDLERS = {
    "verify": cmd_verify,
    "char": cmd_char,
    "commutant": cmd_commutant,
    "duality": cmd_duality,
    "zhu": cmd_zhu,
    "jet": cmd_jet,
    "phi": cmd_phi,
    "ope": cmd_ope,
    "basis": cmd_basis,
    "sl2": cmd_sl2,
    "generators": cmd_generators,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lattice-commutant",
        description="Exact computations in the rank-one lattice vertex algebra and its dual.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--max-charge", type=int, default=6, help="in units of the fundamental weight")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--osc", choices=("w", "a"), default="a", help="oscillator alphabet for rendered states")
    p.add_argument("--suite", choices=tuple(identities.SUITES) + ("all",), default="all")
    p.add_argument("--n", type=int, help="index: phi_n, mode for ope, generator cutoff for commutant/duality")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--ring", help="RW, RC or a JSON file {\"vars\": [[name, weight], ...], \"rels\": [...]}")
    p.add_argument("--space")
    p.add_argument("--of", help="generators whose commutant is taken: W or C")
    p.add_argument("--in", help="ambient space: VA1 or VA1circ")
    p.add_argument("--quiet", action="store_true", help="suppress progress on stderr")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_weight < 0 or args.max_charge < 0:
        parser.error("--max-weight and --max-charge must be non-negative")
    out = Output(args.format, args.osc)
    try:
        HANDLERS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalBoundError as exc:
        print(f"internal bound exceeded: {exc}", file=sys.stderr)
        return 1
    text = out.render()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if out.ok else 1


if __name__ == "__main__":
    sys.exit(main())
