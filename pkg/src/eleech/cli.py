"""Command-line interface.

Reports are line-oriented ``key: value`` text ending in ``RESULT: PASS``
or ``RESULT: FAIL``.  Exit status: 0 all checks pass, 1 verification
failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .rings import Eis, THETA, OMEGA


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="eleech",
        description="Exact machinery for the Lorentzian Eisenstein Leech "
        "lattice, its 26-root diagram and reflection group.",
    )
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallelism degree (execution is sequential "
                        "and deterministic at any value)")
    sub = parser.add_subparsers(dest="cmd")

    p_codes = sub.add_parser("codes", help="ternary/binary code utilities")
    sub_codes = p_codes.add_subparsers(dest="sub")
    p_dump = sub_codes.add_parser("dump", help="emit the word list")
    p_dump.add_argument("--code", choices=("c4", "c12", "c24"), required=True)

    p_lat = sub.add_parser("lattice", help="lattice shells")
    sub_lat = p_lat.add_subparsers(dest="sub")
    p_shell = sub_lat.add_parser("shell", help="enumerate a shell")
    p_shell.add_argument("--lattice", choices=("leech", "e8"), required=True)
    p_shell.add_argument("--norm", type=int, required=True)
    p_shell.add_argument("--out", default=None)

    p_diag = sub.add_parser("diagram", help="the 26-root diagram")
    sub_diag = p_diag.add_subparsers(dest="sub")
    sub_diag.add_parser("dump", help="emit the 26 roots and incidence")
    sub_diag.add_parser("check", help="run all exact diagram identities")

    p_isom = sub.add_parser("isom", help="the explicit isomorphism")
    sub_isom = p_isom.add_subparsers(dest="sub")
    p_iv = sub_isom.add_parser("verify", help="verify E1/E2 and emit C")
    p_iv.add_argument("--e1", default=None, help="E1 matrix file (default: shipped)")
    p_iv.add_argument("--e2", default=None, help="E2 matrix file (default: built in)")
    p_iv.add_argument("--out", default=None, help="write C here (theta-cleared)")
    p_is = sub_isom.add_parser("search", help="rediscover a basis from the shell")
    p_is.add_argument("--shell", default=None, help="shell file (default: computed)")

    p_red = sub.add_parser("reduce", help="height-reduction certificates")
    sub_red = p_red.add_subparsers(dest="sub")
    p_rr = sub_red.add_parser("run", help="certify generators")
    p_rr.add_argument("--all", action="store_true")
    p_rr.add_argument("--out", default="certificates")
    p_rc = sub_red.add_parser("check", help="replay certificates from a directory")
    p_rc.add_argument("dir")

    p_rel = sub.add_parser("relations", help="spider / deflation / Coxeter table")
    sub_rel = p_rel.add_subparsers(dest="sub")
    p_rv = sub_rel.add_parser("verify")
    p_rv.add_argument("--all", action="store_true")

    sub.add_parser("verify-all", help="every verification at once")

    args = parser.parse_args(argv)
    if args.cmd is None:
        parser.print_help()
        return 2
    try:
        handler = {
            "codes": _cmd_codes,
            "lattice": _cmd_lattice,
            "diagram": _cmd_diagram,
            "isom": _cmd_isom,
            "reduce": _cmd_reduce,
            "relations": _cmd_relations,
            "verify-all": _cmd_verify_all,
        }[args.cmd]
    except KeyError:
        print(f"unknown subcommand: {args.cmd}", file=sys.stderr)
        return 2
    return handler(args)


def _report(lines, passed: bool) -> int:
    for k, v in lines:
        print(f"{k}: {v}")
    print(f"RESULT: {'PASS' if passed else 'FAIL'}")
    return 0 if passed else 1


def _cmd_codes(args) -> int:
    if args.sub != "dump":
        print("usage: eleech codes dump --code {c4,c12,c24}", file=sys.stderr)
        return 2
    from .codes import tetracode, golay12, qr_code

    code = {"c4": tetracode, "c12": golay12, "c24": lambda: qr_code(23)}[args.code]()
    for w in code.words():
        print(" ".join(str(d) for d in w))
    return 0


def _cmd_lattice(args) -> int:
    if args.sub != "shell":
        print("usage: eleech lattice shell ...", file=sys.stderr)
        return 2
    from . import lattices
    from .textio import format_vector

    if args.lattice == "e8":
        if args.norm != -3:
            print("only the first shell (norm -3) of E8 is supported", file=sys.stderr)
            return 2
        rows = lattices.shell_e8()
        text = "\n".join(format_vector(v) for v in rows) + "\n"
    else:
        if args.norm != -6:
            print("only the first shell (norm -6) of Leech is supported", file=sys.stderr)
            return 2
        rows = lattices.first_shell_by_shapes()
        text = "\n".join(
            format_vector(lattices.from_flat(f)) for f in sorted(rows)
        ) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
        print(f"count: {len(rows)}")
        print(f"out: {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_diagram(args) -> int:
    from .diagram import Diagram
    from .textio import format_vector

    d = Diagram()
    if args.sub == "dump":
        for node in d.nodes:
            print(f"{node.name} [{node.kind}] {format_vector(node.root)}")
        print("incidence:")
        adj = d.adjacency()
        for i in range(26):
            print("".join("1" if adj[i][j] else "." for j in range(26)))
        return 0
    if args.sub == "check":
        lines, ok = diagram_check_lines(d)
        return _report(lines, ok)
    print("usage: eleech diagram {dump,check}", file=sys.stderr)
    return 2


def diagram_check_lines(d):
    from .rings import SqrtThree, OMEGA2
    from .linalg import mat_det

    c = d.constants()
    checks = []
    checks.append(("norms", all(d.form.ip(n.root, n.root) == Eis(-3, 0) for n in d.nodes)))
    adj = d.adjacency()
    inc = all(
        adj[p.index][l.index] == (sum(a * b for a, b in zip(l.triple, p.triple)) % 3 == 0)
        for p in d.points
        for l in d.lines
    )
    checks.append(("adjacency_equals_incidence", inc))
    uniform = all(
        d.form.ip(p.root, l.root) == -OMEGA * THETA
        for p in d.points
        for l in d.lines
        if adj[p.index][l.index]
    )
    checks.append(("edge_value_minus_w_theta", uniform))
    checks.append(("w_p_norm_3", d.form.ip(c.w_p, c.w_p) == Eis(3, 0)))
    checks.append(
        ("ip_wp_wl", d.form.ip(c.w_p, c.w_l) == Eis(-4, 0) * THETA * OMEGA)
    )
    checks.append(("disc_F_39", c.fixed_lattice().discriminant() == 39))
    checks.append(
        ("rho_norm", d.form.ip12(c.rho_hat, c.rho_hat).to_sqrt3() == SqrtThree(-78, 104))
    )
    checks.append(
        ("ip_wp_rho", d.form.ip12(c.w_p, c.rho_hat).to_sqrt3() == SqrtThree(0, 13))
    )
    heights = all(d.height_sq(n.root) == SqrtThree(1, 0) for n in d.nodes)
    checks.append(("heights_one", heights))
    checks.append(("linear_relations", d.verify_linear_relations()))
    ok = all(v for _, v in checks)
    return [(k, "ok" if v else "FAIL") for k, v in checks], ok


def _cmd_isom(args) -> int:
    from .diagram import Diagram
    from .textio import parse_matrix, format_matrix
    from . import isomorphism as iso

    d = Diagram()
    if args.sub == "verify":
        e1 = parse_matrix(open(args.e1).read()) if args.e1 else iso.load_e1()
        e2 = parse_matrix(open(args.e2).read()) if args.e2 else iso.e2_matrix(d)
        try:
            chg = iso.ChangeOfBasis(e1, e2)
        except ValueError as exc:
            return _report([("error", str(exc))], False)
        from .reflections import aut_from_rational

        cmat = aut_from_rational(chg.mat)
        out_lines = [
            ("gram_equal", "ok"),
            ("lattice_bijection", "ok"),
            ("theta_power", cmat.k),
        ]
        text = f"# C * theta^{cmat.k}; apply to column vectors and divide\n"
        text += format_matrix(cmat.mat)
        if args.out:
            with open(args.out, "w") as f:
                f.write(text)
            out_lines.append(("out", args.out))
        else:
            sys.stdout.write(text)
        return _report(out_lines, True)
    if args.sub == "search":
        from . import lattices

        if args.shell:
            rows = parse_matrix(open(args.shell).read())
            shell = [lattices.to_flat(r) for r in rows]
        else:
            shell = lattices.first_shell_by_shapes()
        res = iso.run_search(shell, iso.e2_matrix(d), log=lambda *a: print(*a))
        return _report(
            [
                ("candidate_count", res.candidate_count),
                ("gram_matches_e2", "ok"),
            ],
            res.candidate_count == 8,
        )
    print("usage: eleech isom {verify,search}", file=sys.stderr)
    return 2


def _cmd_reduce(args) -> int:
    from .diagram import Diagram
    from .isomorphism import load_e1, e2_matrix, ChangeOfBasis
    from .reduction import (
        build_generators,
        certify_generators,
        check_certificate,
        ReductionCertificate,
    )

    d = Diagram()
    chg = ChangeOfBasis(load_e1(), e2_matrix(d))
    gens = build_generators(chg)
    if args.sub == "run":
        certs = certify_generators(d, gens)
        os.makedirs(args.out, exist_ok=True)
        for j, cert in enumerate(certs, start=1):
            with open(os.path.join(args.out, f"g{j:02d}.cert"), "w") as f:
                f.write(cert.serialize())
        lines = [
            ("certificates", len(certs)),
            ("max_perturbations", max(c.perturbation_count() for c in certs)),
            ("out", args.out),
        ]
        return _report(lines, max(c.perturbation_count() for c in certs) <= 1)
    if args.sub == "check":
        names = sorted(
            n for n in os.listdir(args.dir) if n.endswith(".cert")
        )
        if not names:
            print(f"no certificates in {args.dir}", file=sys.stderr)
            return 2
        bad = []
        for n in names:
            with open(os.path.join(args.dir, n)) as f:
                cert = ReductionCertificate.parse(f.read())
            if not check_certificate(cert, d, gens):
                bad.append(n)
        lines = [("checked", len(names)), ("failures", len(bad))]
        for n in bad:
            lines.append(("bad", n))
        return _report(lines, not bad)
    print("usage: eleech reduce {run,check}", file=sys.stderr)
    return 2


def _cmd_relations(args) -> int:
    from .diagram import Diagram
    from .relations import (
        spider_check,
        deflate_check,
        coxeter_table,
        verify_phi_flips,
        rad_m666_covers_d,
    )
    from .isomorphism import load_e1prime

    d = Diagram()
    lines = []
    ok = True
    sp, order = spider_check(d)
    lines.append(("spider_S20", "ok" if sp else "FAIL"))
    lines.append(("spider_true_order", order))
    ok &= sp
    rep = deflate_check(d)
    lines.append(("deflate_base", "ok" if rep["base"] else "FAIL"))
    lines.append(("deflate_A11", "ok" if rep["A11"] else "FAIL"))
    lines.append(("deflate_12gons", rep["distinct_12gons"]))
    lines.append(("deflate_transports", "ok" if rep["transports_ok"] else "FAIL"))
    ok &= rep["base"] and rep["A11"] and rep["transports_ok"]
    for name, exp, got, row_ok in coxeter_table(d):
        lines.append((f"coxeter_{name}", f"expected {exp} got {got}"))
        ok &= row_ok
    flips = verify_phi_flips(load_e1prime())
    for k, v in flips.items():
        lines.append((k, "ok" if v else "FAIL"))
        ok &= v
    adds = rad_m666_covers_d(d)
    lines.append(("rad_m666_covers_d", f"ok ({len(adds)} witnessed additions)"))
    return _report(lines, ok)


def _cmd_verify_all(args) -> int:
    from .codes import tetracode, golay12, qr_code
    from . import lattices
    from .diagram import Diagram
    from .isomorphism import load_e1, load_e1prime, e2_matrix, ChangeOfBasis, \
        m666_from_e1prime, m666_reference, gram_of
    from .linalg import FORM_LEECH_H, FORM_E8H
    from .reduction import build_generators, certify_generators, check_certificate, \
        min_height_scan
    from .reflections import canonical_root

    t_start = time.time()
    lines = []
    ok = True

    c4, c12 = tetracode(), golay12()
    codes_ok = (
        len(c4) == 9
        and len(c12) == 729
        and c12.weight_enumerator() == {0: 1, 6: 264, 9: 440, 12: 24}
        and qr_code(11).weight_enumerator() == c12.weight_enumerator()
    )
    lines.append(("codes", "ok" if codes_ok else "FAIL"))
    ok &= codes_ok

    d = Diagram()
    diag_lines, diag_ok = diagram_check_lines(d)
    lines.append(("diagram", "ok" if diag_ok else "FAIL"))
    ok &= diag_ok

    disc_ok = (
        lattices.lattice_leech_h().discriminant() == 2187
        and lattices.lattice_3e8_h().discriminant() == 2187
        and len(lattices.shell_e8()) == 240
    )
    lines.append(("lattices_fast", "ok" if disc_ok else "FAIL"))
    ok &= disc_ok

    shell = lattices.first_shell_by_shapes()
    other = lattices.first_shell_by_coset_search()
    shell_ok = len(shell) == 196560 and set(shell) == other
    lines.append(("leech_shell_196560_two_methods", "ok" if shell_ok else "FAIL"))
    ok &= shell_ok

    e1 = load_e1()
    e2 = e2_matrix(d)
    try:
        chg = ChangeOfBasis(e1, e2)
        isom_ok = True
    except ValueError:
        isom_ok = False
        chg = None
    m666p = m666_from_e1prime(load_e1prime())
    isom_ok = isom_ok and gram_of(m666p, FORM_LEECH_H) == gram_of(
        m666_reference(d), FORM_E8H
    )
    lines.append(("isomorphism", "ok" if isom_ok else "FAIL"))
    ok &= isom_ok

    if chg is not None:
        gens = build_generators(chg)
        certs = certify_generators(d, gens)
        red_ok = (
            len(certs) == 50
            and max(c.perturbation_count() for c in certs) <= 1
            and all(check_certificate(c, d, gens) for c in certs)
        )
    else:
        red_ok = False
    lines.append(("generation_50_certificates", "ok" if red_ok else "FAIL"))
    ok &= red_ok

    scan = min_height_scan(d)
    want = sorted(
        {canonical_root(n.root) for n in d.nodes},
        key=lambda v: tuple(x.key() for x in v),
    )
    scan_ok = scan == want
    lines.append(("min_height_26_nodes", "ok" if scan_ok else "FAIL"))
    ok &= scan_ok

    from .relations import spider_check, deflate_check, coxeter_table, verify_phi_flips

    sp, _ = spider_check(d)
    rep = deflate_check(d)
    table_ok = all(row[3] for row in coxeter_table(d))
    flips_ok = all(verify_phi_flips(load_e1prime()).values())
    rel_ok = sp and rep["base"] and rep["A11"] and rep["transports_ok"] and table_ok and flips_ok
    lines.append(("relations", "ok" if rel_ok else "FAIL"))
    ok &= rel_ok

    lines.append(("elapsed_seconds", f"{time.time() - t_start:.1f}"))
    return _report(lines, ok)


if __name__ == "__main__":
    sys.exit(main())
