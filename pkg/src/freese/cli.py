"""Command-line front end.

Every verb prints ``key=value`` lines on standard output and diagnostics
on standard error.  Exit status: 0 success, 1 bad input, 2 a verified
identity failed, 3 a resource bound was hit.
"""

from __future__ import annotations

import argparse
import sys

from . import catalog
from .algebra import DEFAULT_MAX_CON, DEFAULT_MAX_UNIVERSE
from .errors import DomainError, FreeseError, LimitExceeded, VerificationError
from .io import emit_algebra, format_partition, parse_partition, read_algebra
from .lattice import (
    DEFAULT_MAX_LATTICE,
    FiniteLattice,
    con_lattice,
    is_join_sd,
    is_meet_sd,
    is_modular,
    is_subdirectly_irreducible,
    to_dot,
    whitman_w,
)
from .technique import (
    M3Config,
    PentagonConfig,
    build_m33,
    classify_pentagon,
    duplicate,
    find_m3s,
    find_pentagons,
    iterate_rods,
    lift_diamond,
    lift_pentagon,
    pentagon_condition,
    verify_doubling_lemma,
    verify_lemma1,
    verify_lemma2,
    verify_nozero,
    verify_permute,
)
from .terms import eval_inequality, holds_everywhere, parse_inequality, variables

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_LIMIT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def _bool(x) -> str:
    return "true" if x else "false"


def _lattice_lines(L: FiniteLattice, congruences=None) -> list:
    out = [f"size={len(L)}"]
    for i, label in enumerate(L.labels):
        line = f"element[{i}]={label}"
        if congruences is not None:
            line += f" partition={format_partition(congruences[i])}"
        out.append(line)
    for a, b in L.covers_list():
        out.append(f"cover={L.labels[a]}<{L.labels[b]}")
    return out


def _write_dot(path, L, name):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(to_dot(L, name))


def _load(args):
    if not args.algebra:
        raise DomainError("--algebra is required")
    return read_algebra(args.algebra)


def _partition(args, key, algebra, required=True):
    text = getattr(args, key)
    if text is None:
        if required:
            raise DomainError(f"--{key} is required")
        return None
    return parse_partition(text, algebra.size)


def _pentagon(args, algebra) -> PentagonConfig:
    if getattr(args, "pentagon", None) == "auto":
        found = find_pentagons(algebra, args.max_con)
        if not found:
            raise DomainError("no pentagon in the congruence lattice")
        return found[0]
    gamma = _partition(args, "gamma", algebra)
    alpha = _partition(args, "alpha", algebra)
    beta = _partition(args, "beta", algebra)
    cfg = PentagonConfig.from_parts(algebra, gamma, alpha, beta)
    zero = _partition(args, "zero", algebra, required=False)
    delta = _partition(args, "delta", algebra, required=False)
    if zero is not None and zero != cfg.zero:
        raise DomainError("--zero is not alpha ^ beta")
    if delta is not None and delta != cfg.delta:
        raise DomainError("--delta is not gamma v beta")
    return cfg


def _m3(args, algebra) -> M3Config:
    spec = args.m3 or "auto"
    if spec == "auto":
        found = find_m3s(algebra, args.max_con)
        permuting = [m for m in found if m.atoms_permute(2)]
        if not permuting:
            raise DomainError("no diamond of pairwise permuting congruences found")
        return permuting[0]
    parts = [p.strip() for p in spec.split(";")]
    if len(parts) != 3:
        raise DomainError("--m3 expects three partitions separated by ';'")
    a, b, c = (parse_partition(p, algebra.size) for p in parts)
    return M3Config.from_atoms(algebra, a, b, c)


# -- verbs -------------------------------------------------------------------

def cmd_con(args, out):
    A = _load(args)
    L, cons = con_lattice(A, args.max_con)
    out.append(f"algebra={A.name}")
    out.extend(_lattice_lines(L))
    _write_dot(args.dot, L, "Con")


def cmd_duplicate(args, out):
    A = _load(args)
    alpha = _partition(args, "alpha", A)
    dup = duplicate(A, alpha, args.max_universe)
    out.append(f"universe={dup.doubled.size}")
    out.append(f"eta_0={format_partition(dup.eta0)}")
    out.append(f"eta_1={format_partition(dup.eta1)}")
    for i, (a, b) in enumerate(dup.tuples):
        out.append(f"element[{i + 1}]=({a + 1},{b + 1})")
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(emit_algebra(dup.doubled))


def cmd_classify(args, out):
    A = _load(args)
    cfg = _pentagon(args, A)
    res = classify_pentagon(cfg, refine=not args.no_refine, max_universe=args.max_universe,
                            max_lattice=args.max_lattice)
    out.append(res.label or "unclassified")
    holds, w = pentagon_condition(res.used)
    out.append(f"refined={_bool(res.refined)}")
    out.append(f"quotiented={_bool(res.quotiented)}")
    out.extend(res.used.lines())
    line = f"relational_condition={_bool(holds)}"
    if w is not None:
        line += f" witness=({w[0] + 1},{w[1] + 1})"
    out.append(line)
    out.extend(_lattice_lines(res.lattice, res.congruences))
    _write_dot(args.dot, res.lattice, res.label or "L")


def cmd_find(args, out):
    A = _load(args)
    pents = find_pentagons(A, args.max_con)
    m3s = find_m3s(A, args.max_con)
    out.append(f"pentagons={len(pents)}")
    for i, p in enumerate(pents[: args.show]):
        out.append(f"pentagon[{i}] gamma={format_partition(p.gamma)} "
                   f"alpha={format_partition(p.alpha)} beta={format_partition(p.beta)}")
    out.append(f"m3s={len(m3s)}")
    for i, m in enumerate(m3s[: args.show]):
        out.append(f"m3[{i}] atoms={format_partition(m.a)};{format_partition(m.b)};"
                   f"{format_partition(m.c)} permuting={_bool(m.atoms_permute(2))}")


def cmd_m33(args, out):
    A = _load(args)
    cfg = _m3(args, A)
    res = build_m33(cfg, args.max_universe)
    out.append("M3,3 OK, all congruences permute")
    out.append(f"universe={res.lifts.dup.doubled.size}")
    out.extend(_lattice_lines(res.lattice, res.congruences))
    _write_dot(args.dot, res.lattice, "M33")


def _shape_name(shape: str, n: int, glue: str) -> str:
    if shape == "rod":
        return f"R{n}"
    if shape == "snake":
        return f"S{n}"
    return f"G:{glue}"


def cmd_rods(args, out):
    A = _load(args)
    cfg = _m3(args, A)
    steps = iterate_rods(cfg, args.n, args.shape, args.max_universe)
    last = steps[-1]
    alias = {1: " (= M3)", 2: " (= M3,3)"}.get(args.n, "")
    ok = all(s.report.ok for s in steps)
    if not ok:
        for s in steps:
            for line in s.report.lines():
                out.append(f"step={s.step} {line}")
        raise VerificationError(f"{_shape_name(args.shape, args.n, last.glue)} failed")
    out.append(f"{_shape_name(args.shape, args.n, last.glue)} OK{alias}, "
               "all congruences permute")
    for s in steps:
        out.append(f"step={s.step} universe={s.algebra.size} lattice={len(s.lattice)} "
                   f"shape=G:{s.glue}")
    out.extend(_lattice_lines(last.lattice))
    _write_dot(args.dot, last.lattice, "chain")


def cmd_check(args, out):
    if args.inequality:
        _check_inequality(args, out)
        return
    A = _load(args)
    reports = []
    if args.theta is not None:
        alpha = _partition(args, "alpha", A)
        theta = _partition(args, "theta", A)
        reports.append(verify_doubling_lemma(duplicate(A, alpha, args.max_universe), theta))
    if args.pentagon or args.beta is not None:
        cfg = _pentagon(args, A)
        lifts = lift_pentagon(cfg, args.max_universe)
        reports += [verify_lemma1(cfg, lifts), verify_lemma2(cfg, lifts)]
    if args.m3:
        cfg = _m3(args, A)
        lifts = lift_diamond(cfg, args.max_universe)
        reports += [verify_nozero(cfg, lifts), verify_permute(cfg, lifts)]
    if not reports:
        raise DomainError("nothing to check: give --theta/--alpha, a pentagon, or --m3")
    for rep in reports:
        for line in rep.lines():
            out.append(f"{rep.name}.{line}")
    if not all(r.ok for r in reports):
        raise VerificationError("a verified identity failed")


def _check_inequality(args, out):
    if not args.shape:
        raise DomainError("--inequality needs --shape")
    L = catalog.build(args.shape, allow_interpretation=args.allow_interpretation)
    p, q = parse_inequality(args.inequality)
    if args.assign:
        assign = {}
        for item in args.assign.split(","):
            name, _, label = item.partition("=")
            if label.strip() not in L.labels:
                raise DomainError(f"no element labelled {label.strip()!r} in {args.shape}")
            assign[name.strip()] = L.index(label.strip())
        out.append(f"holds={_bool(eval_inequality(p, q, L, assign))}")
        return
    holds, cex = holds_everywhere(p, q, L)
    out.append(f"holds={_bool(holds)}")
    if cex:
        out.append("counterexample=" + ",".join(f"{k}={L.labels[v]}" for k, v in cex.items()))
    out.append(f"variables={','.join(sorted(variables(p) | variables(q)))}")


def _lattice_for(args):
    if args.shape:
        return catalog.build(args.shape, allow_interpretation=args.allow_interpretation)
    A = _load(args)
    L, _ = con_lattice(A, args.max_con)
    return L


def cmd_props(args, out):
    L = _lattice_for(args)
    out.append(f"modular={_bool(is_modular(L))} sd_meet={_bool(is_meet_sd(L))} "
               f"sd_join={_bool(is_join_sd(L))} whitman={_bool(whitman_w(L))} "
               f"si={_bool(is_subdirectly_irreducible(L))}")


def cmd_shape(args, out):
    if not args.shape:
        raise DomainError("--shape is required")
    L = catalog.build(args.shape, allow_interpretation=args.allow_interpretation)
    out.append(f"shape={catalog.parse_shape(args.shape)}")
    out.extend(_lattice_lines(L))
    _write_dot(args.dot, L, "shape")


def cmd_dot(args, out):
    L = _lattice_for(args)
    text = to_dot(L, "L")
    if args.dot:
        _write_dot(args.dot, L, "L")
    else:
        out.append(text.rstrip("\n"))


VERBS = {
    "con": cmd_con, "duplicate": cmd_duplicate, "classify": cmd_classify, "find": cmd_find,
    "m33": cmd_m33, "rods": cmd_rods, "check": cmd_check, "props": cmd_props,
    "shape": cmd_shape, "dot": cmd_dot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="freese", description="Congruence lattices and duplication.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in VERBS:
        p = sub.add_parser(verb)
        p.add_argument("--algebra", help="algebra file")
        p.add_argument("--max-universe", type=int, default=DEFAULT_MAX_UNIVERSE)
        p.add_argument("--max-lattice", type=int, default=DEFAULT_MAX_LATTICE)
        p.add_argument("--max-con", type=int, default=DEFAULT_MAX_CON)
        p.add_argument("--dot", help="write a DOT Hasse diagram to this file")
        if verb in ("classify", "check", "duplicate"):
            for key in ("gamma", "alpha", "beta", "zero", "delta"):
                p.add_argument(f"--{key}", help="partition literal such as '|1,2|3,4|'")
        if verb in ("classify", "check"):
            p.add_argument("--pentagon", choices=["auto"])
        if verb == "classify":
            p.add_argument("--no-refine", action="store_true")
        if verb in ("m33", "rods", "check"):
            p.add_argument("--m3", help="'auto' or three atoms 'P;P;P'")
        if verb == "rods":
            p.add_argument("-n", type=int, required=True)
            p.add_argument("--shape", default="rod", help="rod, snake, or G:<letters>")
        if verb in ("props", "shape", "dot", "check"):
            p.add_argument("--shape", help="catalog shape such as K, M33, R3, G:RL")
            p.add_argument("--allow-interpretation", action="store_true")
        if verb == "check":
            p.add_argument("--theta")
            p.add_argument("--inequality")
            p.add_argument("--assign", help="x=label,y=label,...")
        if verb == "duplicate":
            p.add_argument("--emit", help="write A(alpha) as an algebra file")
        if verb == "find":
            p.add_argument("--show", type=int, default=10)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out = []
    code = EXIT_OK
    try:
        args = build_parser().parse_args(argv)
        VERBS[args.verb](args, out)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=stderr)
        code = EXIT_VERIFY
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=stderr)
        code = EXIT_LIMIT
    except (DomainError, FreeseError) as exc:
        print(f"error: {exc}", file=stderr)
        code = EXIT_DOMAIN
    for line in out:
        print(line, file=stdout)
    return code


def main(argv=None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
