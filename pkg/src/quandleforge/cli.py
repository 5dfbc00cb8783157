"""Command-line interface: ``quandleforge <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad file, failed axiom,
index out of range) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from typing import Sequence

from . import classify as cl
from .construct import (
    affine_quandle_fq,
    affine_quandle_zn,
    conjugation_rack,
    dihedral_quandle,
    homogeneous_quandle,
    make_field,
)
from .envgroup import (
    DEFAULT_MAX_COSETS,
    CosetOverflowError,
    abelian_invariants,
    enveloping_presentation,
    finite_enveloping_order,
    format_abelian,
)
from .homology import HomologySizeError, rack_homology, torsion_generators
from .perm import (
    CycleParseError,
    NotInGroupError,
    PermGroup,
    alternating_group,
    parse_cycles,
    parse_perm_list,
    symmetric_group,
)
from .rack import (
    RackError,
    RackTable,
    components,
    find_isomorphism,
    format_table,
    is_crossed_set,
    is_faithful,
    is_indecomposable,
    parse_table,
    translations,
)
from .transitive import MAX_DEGREE
from .typed import is_type_d

DOMAIN_ERRORS = (
    RackError,
    CycleParseError,
    NotInGroupError,
    cl.GroupDataError,
    cl.QuandleDBError,
    CosetOverflowError,
    HomologySizeError,
    OSError,
    ValueError,
    KeyError,
    IndexError,
)


class DomainError(Exception):
    pass


# ---------------------------------------------------------------- formatting


def gap_list(items) -> str:
    items = list(items)
    return "[ " + ", ".join(items) + " ]" if items else "[ ]"


def format_matrix(X: RackTable) -> str:
    """GAP-style matrix with right-aligned entries."""
    width = len(str(X.size)) + 1
    rows = ["[ " + ", ".join(f"{x + 1:>{width}}" for x in r) + " ]" for r in X.rows]
    lines = []
    for k, r in enumerate(rows):
        prefix = "[ " if k == 0 else "  "
        suffix = " ]" if k == len(rows) - 1 else ","
        lines.append(prefix + r + suffix)
    return "\n".join(lines)


def format_perms(X: RackTable) -> str:
    return gap_list(str(p) for p in translations(X))


def format_components(X: RackTable) -> str:
    return gap_list(gap_list(str(x) for x in block) for block in components(X))


def emit_rack(X: RackTable, args) -> str:
    if getattr(args, "table", False):
        return format_matrix(X)
    if getattr(args, "perms", False):
        return format_perms(X)
    return format_table(X).rstrip("\n")


# ---------------------------------------------------------------- inputs


_NAMED = re.compile(r"^\s*([SA])\s*(\d+)\s*$")


def parse_group(spec: str, degree: int | None) -> PermGroup:
    """``S5``, ``A4`` or a comma-separated generator list in cycle notation."""
    m = _NAMED.match(spec)
    if m:
        n = int(m.group(2))
        if n < 1:
            raise DomainError("group degree must be positive")
        return symmetric_group(n) if m.group(1) == "S" else alternating_group(n)
    if degree is None:
        points = [int(x) for x in re.findall(r"\d+", spec)]
        degree = max(points, default=1)
    return PermGroup(parse_perm_list(spec, degree), degree)


def load_rack(args) -> RackTable:
    path = getattr(args, "file", None) or getattr(args, "path", None)
    if path is None or path == "-":
        return parse_table(sys.stdin.read())
    with open(path) as fh:
        return parse_table(fh.read())


def db_path(args) -> str | None:
    return getattr(args, "db", None) or os.environ.get("QUANDLEFORGE_DB")


def group_db_for(n: int, args) -> cl.GroupDatabase | None:
    src = getattr(args, "groups", None)
    if src:
        path = os.path.join(src, f"trans{n}.grp") if os.path.isdir(src) else src
        return cl.load_group_db(path, n)
    if n > MAX_DEGREE and n > 1:
        raise DomainError(
            f"no transitive-group data for degree {n}; pass --groups (see scripts/transgrp_to_db.py)"
        )
    return None


def parse_sizes(spec: str) -> list[int]:
    out: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return sorted(set(out))


# ---------------------------------------------------------------- commands


def cmd_dihedral(args) -> str:
    return emit_rack(dihedral_quandle(args.n), args)


def cmd_affine(args) -> str:
    if args.field:
        n = args.n
        for p in range(2, n + 1):
            if n % p == 0:
                break
        k = 0
        m = n
        while m % p == 0:
            m //= p
            k += 1
        if m != 1:
            raise DomainError(f"{n} is not a prime power")
        F = make_field(p, k)
        return emit_rack(affine_quandle_fq(F, args.t), args)
    return emit_rack(affine_quandle_zn(args.n, args.t), args)


def cmd_conj(args) -> str:
    G = parse_group(args.group, args.degree)
    elems = [parse_cycles(e, G.degree) for e in args.elements]
    return emit_rack(conjugation_rack(G, elems), args)


def cmd_homogeneous(args) -> str:
    G = parse_group(args.group, args.degree)
    H = PermGroup(parse_perm_list(args.subgroup, G.degree), G.degree)
    z = parse_cycles(args.z, G.degree)
    return emit_rack(homogeneous_quandle(G, H, z), args)


def cmd_validate(args) -> str:
    X = load_rack(args)
    kind = "quandle" if X.is_quandle else "rack"
    return "\n".join([
        f"valid {kind} of size {X.size}",
        f"indecomposable = {str(is_indecomposable(X)).lower()}",
        f"crossed set = {str(is_crossed_set(X)).lower()}",
        f"faithful = {str(is_faithful(X)).lower()}",
    ])


def cmd_table(args) -> str:
    return format_matrix(load_rack(args))


def cmd_perms(args) -> str:
    return format_perms(load_rack(args))


def cmd_components(args) -> str:
    return format_components(load_rack(args))


def cmd_iso(args) -> str:
    with open(args.first) as fh:
        X = parse_table(fh.read())
    with open(args.second) as fh:
        Y = parse_table(fh.read())
    sigma = find_isomorphism(X, Y)
    return "fail" if sigma is None else str(sigma)


def cmd_classify(args) -> str:
    n = args.n
    groups = group_db_for(n, args) if n > 1 else None
    recs = cl.classify_indecomposable(n, groups, args.jobs)
    out = [f"q({n}) = {len(recs)}"]
    if args.db_out:
        cl.db_write(cl.QuandleDatabase(recs, sizes=[n]), args.db_out)
    if args.verbose:
        for r in recs:
            out.append(
                f"Q({n},{r.index}): |Inn| = {r.inner_order}, crossed = {str(r.crossed).lower()}, "
                f"faithful = {str(r.faithful).lower()}"
            )
    return "\n".join(out)


def _database(args, n: int) -> cl.QuandleDatabase:
    path = db_path(args)
    if path and os.path.exists(path):
        db = cl.db_read(path)
        if n in db:
            return db
    if n <= MAX_DEGREE or getattr(args, "groups", None):
        groups = group_db_for(n, args) if n > 1 else None
        return cl.QuandleDatabase(cl.classify_indecomposable(n, groups, args.jobs), sizes=[n])
    raise DomainError(f"size {n} is not in the database; build it with db-build")


def cmd_small(args) -> str:
    db = _database(args, args.n)
    return emit_rack(cl.small_quandle(db, args.n, args.i), args)


def cmd_homology(args) -> str:
    return str(rack_homology(load_rack(args), args.degree))


def cmd_torsion(args) -> str:
    gens = torsion_generators(load_rack(args), args.degree)
    return gap_list(gap_list(str(c) for c in v.coefficients) for v in gens)


def cmd_typed(args) -> str:
    w = is_type_d(load_rack(args))
    return "type-D: no" if w is None else f"type-D: yes (r={w.r}, s={w.s})"


def cmd_env_order(args) -> str:
    return f"|env| = {finite_enveloping_order(load_rack(args), args.max_cosets)}"


def cmd_ab(args) -> str:
    P = enveloping_presentation(load_rack(args), finite=not args.full)
    betti, torsion = abelian_invariants(P)
    return f"ab = {format_abelian(betti, torsion)}"


def cmd_groups_gen(args) -> str:
    db = cl.builtin_transitive_groups(args.n)
    text = cl.format_group_db(db)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        return f"degree {args.n}: {len(db)} groups -> {args.out}"
    return text.rstrip("\n")


def cmd_groups_check(args) -> str:
    from .known_values import TRANSITIVE_COUNTS

    db = cl.load_group_db(args.path, args.degree)
    lines = [f"degree = {db.degree}", f"groups = {len(db)}"]
    want = TRANSITIVE_COUNTS.get(db.degree)
    if want is not None:
        lines.append(f"expected = {want}")
        if len(db) != want:
            raise DomainError(f"degree {db.degree}: {len(db)} groups, expected {want}")
    if db.degree <= MAX_DEGREE:
        builtin = cl.builtin_transitive_groups(db.degree)
        orders = sorted(G.order() for G in db)
        if orders != sorted(G.order() for G in builtin):
            raise DomainError("group orders differ from the built-in enumeration")
    return "\n".join(lines)


def cmd_db_build(args) -> str:
    path = db_path(args)
    if not path:
        raise DomainError("no database path: pass --db or set QUANDLEFORGE_DB")
    sizes = parse_sizes(args.sizes)
    db = cl.QuandleDatabase()
    if os.path.exists(path) and not args.fresh:
        db = cl.db_read(path)
    out = []
    for n in sizes:
        groups = group_db_for(n, args) if n > 1 else None
        recs = cl.classify_indecomposable(n, groups, args.jobs)
        db.add_size(n, recs)
        out.append(f"q({n}) = {len(recs)}")
    cl.db_write(db, path)
    out.append(f"wrote {path}")
    return "\n".join(out)


def cmd_db_query(args) -> str:
    path = db_path(args)
    if not path:
        raise DomainError("no database path: pass --db or set QUANDLEFORGE_DB")
    db = cl.db_read(path)
    if args.n is None:
        return "\n".join(f"q({n}) = {db.count(n)}" for n in db.sizes)
    if args.i is None:
        return f"q({args.n}) = {db.count(args.n)}"
    r = db.get(args.n, args.i)
    return "\n".join([
        format_table(r.table).rstrip("\n"),
        f"|Inn| = {r.inner_order}",
        f"crossed = {str(r.crossed).lower()}",
        f"faithful = {str(r.faithful).lower()}",
    ])


def cmd_verify_tables(args) -> str:
    from .verify import run_checks

    failed = False
    for check in run_checks(args.groups, args.jobs, args.max_size):
        print(check.line(), flush=True)
        failed |= check.status == "FAIL"
    if failed:
        raise DomainError("some checks failed")
    return ""


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quandleforge", description="Finite racks and quandles.")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    def rack_out(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--table", action="store_true", help="print the operation table as a matrix")
        g.add_argument("--perms", action="store_true", help="print the translations")

    def rack_in(p):
        p.add_argument("path", nargs="?", help="rack table file (default: stdin)")
        p.add_argument("--file", help="rack table file")

    def jobs(p):
        p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = add("dihedral", cmd_dihedral, "dihedral quandle on Z_n")
    p.add_argument("n", type=int)
    rack_out(p)

    p = add("affine", cmd_affine, "affine quandle (1-t)a + tb on Z_n, or on GF(n) with --field")
    p.add_argument("n", type=int)
    p.add_argument("t", type=int, help="unit of Z_n, or field element code with --field")
    p.add_argument("--field", action="store_true", help="n is a prime power; t encodes a field element")
    rack_out(p)

    p = add("conj", cmd_conj, "conjugation quandle on the classes of the given elements")
    p.add_argument("group", help="S<n>, A<n> or generators like '(1,2),(1,2,3)'")
    p.add_argument("elements", nargs="+", help="elements in cycle notation")
    p.add_argument("--degree", type=int)
    rack_out(p)

    p = add("homogeneous", cmd_homogeneous, "homogeneous quandle (G, H, conjugation by z)")
    p.add_argument("group")
    p.add_argument("subgroup", help="generators of H ('()' for the trivial group)")
    p.add_argument("z")
    p.add_argument("--degree", type=int)
    rack_out(p)

    for name, func, text in [
        ("validate", cmd_validate, "check the rack axioms and report basic properties"),
        ("table", cmd_table, "print the operation table as a matrix"),
        ("perms", cmd_perms, "print the translations"),
        ("components", cmd_components, "print the components"),
        ("typed", cmd_typed, "decide whether the rack is of type D"),
    ]:
        rack_in(add(name, func, text))

    p = add("iso", cmd_iso, "find an isomorphism between two racks")
    p.add_argument("first")
    p.add_argument("second")

    p = add("classify", cmd_classify, "count indecomposable quandles of size n")
    p.add_argument("n", type=int)
    p.add_argument("--groups", help="group database file or directory of trans<n>.grp files")
    p.add_argument("--db-out", help="also write the records as a quandle database")
    p.add_argument("-v", "--verbose", action="store_true")
    jobs(p)

    p = add("small", cmd_small, "print the i-th indecomposable quandle of size n")
    p.add_argument("n", type=int)
    p.add_argument("i", type=int)
    p.add_argument("--db")
    p.add_argument("--groups")
    jobs(p)
    rack_out(p)

    for name, func, text in [
        ("homology", cmd_homology, "integer rack homology H_k"),
        ("torsion", cmd_torsion, "generators of the torsion of H_k"),
    ]:
        p = add(name, func, text)
        rack_in(p)
        p.add_argument("--degree", type=int, default=2, help="homology degree k (default 2)")

    p = add("env-order", cmd_env_order, "order of the finite enveloping group")
    rack_in(p)
    p.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)

    p = add("ab", cmd_ab, "abelianization of the finite enveloping group")
    rack_in(p)
    p.add_argument("--full", action="store_true", help="use the (infinite) enveloping group instead")

    p = add("groups-gen", cmd_groups_gen, "write the built-in transitive groups of a degree")
    p.add_argument("n", type=int)
    p.add_argument("--out")

    p = add("groups-check", cmd_groups_check, "load and check a group database file")
    p.add_argument("path")
    p.add_argument("--degree", type=int)

    p = add("db-build", cmd_db_build, "classify sizes and store them in the quandle database")
    p.add_argument("sizes", help="e.g. 1-8,12")
    p.add_argument("--db")
    p.add_argument("--groups", help="directory of trans<n>.grp files")
    p.add_argument("--fresh", action="store_true", help="ignore an existing database file")
    jobs(p)

    p = add("db-query", cmd_db_query, "query the quandle database")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("i", type=int, nargs="?")
    p.add_argument("--db")

    p = add("verify-tables", cmd_verify_tables, "recompute the reference tables")
    p.add_argument("--groups", help="directory of trans<n>.grp files")
    p.add_argument("--max-size", type=int, default=12)
    jobs(p)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except (DomainError, *DOMAIN_ERRORS) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"quandleforge: error: {msg}", file=sys.stderr)
        return 1
    if out:
        print(out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
