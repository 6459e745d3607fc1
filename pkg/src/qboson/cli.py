"""Command-line front end: counting, fitting, Trotter, and block-encoding reports.

Subcommands: table1, count, fit, trotter, blockenc. Exit codes: 0 success,
2 input error, 3 size cap exceeded, 4 verification failure beyond tolerance.
CSV output is deterministic byte-for-byte for identical inputs.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys

from .blockenc import KINETIC, POTENTIAL, block_encode, verify_block_encoding
from .circuits import trotter_evolution, write_circuit
from .decompose import decompose_tensorized
from .errors import CapExceededError, SpecFileError, VerificationError
from .hamiltonian import (BasisChoice, HamiltonianSpec, expand_potential_zsum,
                          fock_potential, load_hamiltonian_spec, raw_string_count)
from .operators import FockParams, fock_p, fock_x
from .pauli import RELATIVE_PRUNE_TOL, count_strings, string_census
from .scaling import fit_scaling, series_from_csv
from .simulate import assemble_hamiltonian_matrix, trotter_error

TABLE1_MAX_Q = 14


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _rows_to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_table(header, rows, json_doc, args) -> None:
    if args.format == "json":
        _emit(json.dumps(json_doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(_rows_to_csv(header, rows), args.out)


def _census_cell(census) -> str:
    return ";".join(f"{l}:{census.by_length[l]}" for l in census.lengths())


def _respec_q(spec: HamiltonianSpec, q: int) -> HamiltonianSpec:
    config = dataclasses.replace(spec.config, qubits_per_boson=q)
    return dataclasses.replace(spec, config=config)


# -- subcommands --------------------------------------------------------------------

def cmd_table1(args) -> int:
    """Fock-basis x/p string counts against the Q * 2**(Q-1) formula."""
    params = FockParams()
    header = ["Q", "Lambda", "n_pauli_x", "n_pauli_p", "formula", "match"]
    rows = []
    for q in range(1, args.q_max + 1):
        cutoff = 1 << q
        nx = count_strings(decompose_tensorized(fock_x(cutoff, params), args.tol))
        np_ = count_strings(decompose_tensorized(fock_p(cutoff, params), args.tol))
        formula = q * (1 << (q - 1))
        rows.append([q, cutoff, nx, np_, formula, nx == np_ == formula])
    doc = {"rows": [dict(zip(header, r)) for r in rows]}
    _emit_table(header, rows, doc, args)
    return 0


def cmd_count(args) -> int:
    """Per-Q Pauli-string counts of the potential term in the spec's basis."""
    spec = load_hamiltonian_spec(args.spec)
    q_lo = args.q_min or spec.config.qubits_per_boson
    q_hi = args.q_max or q_lo
    if q_lo < 1 or q_hi < q_lo:
        raise SpecFileError(f"bad Q range [{q_lo}, {q_hi}]")
    header = ["Q", "basis", "n_pauli", "n_nontrivial", "raw_strings", "census"]
    rows = []
    for q in range(q_lo, q_hi + 1):
        sq = _respec_q(spec, q)
        if spec.basis is BasisChoice.FOCK:
            psum = decompose_tensorized(fock_potential(sq), args.tol)
            raw = ""
        else:
            psum = expand_potential_zsum(sq).prune(args.tol)
            raw = raw_string_count(sq.potential, q)
        census = string_census(psum)
        n_all = count_strings(psum)
        n_nontrivial = n_all - census.by_length.get(0, 0)
        rows.append([q, spec.basis.value, n_all, n_nontrivial, raw, _census_cell(census)])
    doc = {"spec": args.spec,
           "rows": [dict(zip(header, r)) for r in rows]}
    _emit_table(header, rows, doc, args)
    return 0


def cmd_fit(args) -> int:
    """Fit (1/Q) ln N = a + (b + c ln Q)/Q to a Q,n_pauli series CSV."""
    try:
        with open(args.series) as fh:
            series = series_from_csv(fh.read())
    except OSError as exc:
        raise SpecFileError(f"cannot read {args.series}: {exc}") from exc
    except ValueError as exc:
        raise SpecFileError(str(exc)) from exc
    result = fit_scaling(series)
    header = ["a", "b", "c", "residual_rms", "var_a", "var_b", "var_c"]
    row = [result.a, result.b, result.c, result.residual_rms, *result.covariance_diag]
    doc = {"a": result.a, "b": result.b, "c": result.c,
           "residual_rms": result.residual_rms,
           "covariance_diag": list(result.covariance_diag),
           "rows_fitted": len(series)}
    _emit_table(header, [row], doc, args)
    return 0


def cmd_trotter(args) -> int:
    """Emit a Trotter-evolution circuit plus its per-layer gate-count report."""
    spec = load_hamiltonian_spec(args.spec)
    circuit, report = trotter_evolution(spec, args.time, args.steps)
    if args.circuit_out:
        write_circuit(circuit, args.circuit_out)
    doc = report.to_dict()
    doc.update({"spec": args.spec, "time": args.time, "total_gates": len(circuit)})
    verify_rows = []
    if args.verify:
        err = trotter_error(spec, args.time, args.steps)
        doc["trotter_error"] = err
        verify_rows.append(["trotter_error", args.steps, err])
        if args.steps % 2 == 0 and args.steps >= 2:
            err_half = trotter_error(spec, args.time, args.steps // 2)
            ratio = err / err_half if err_half > 0 else float("nan")
            doc["trotter_error_half_steps"] = err_half
            doc["halving_ratio"] = ratio
            verify_rows.append(["trotter_error", args.steps // 2, err_half])
            verify_rows.append(["halving_ratio", "", ratio])
        if args.tol is not None and err > args.tol:
            _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
            raise VerificationError(f"trotter error {err:.3e} exceeds tol {args.tol:.3e}")
    if args.format == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        header = ["section", "name", "value"]
        rows = [["totals", "steps", report.steps],
                ["totals", "rotations", report.rotations],
                ["totals", "entangling", report.entangling],
                ["totals", "hadamards", report.hadamards],
                ["totals", "total", report.total],
                ["strings", "potential_merged", report.potential_strings_merged],
                ["strings", "potential_raw", report.potential_strings_raw]]
        for layer, counter in report.layers.items():
            for kind in sorted(counter):
                rows.append([f"layer:{layer}", kind, counter[kind]])
        for section, name, value in verify_rows:
            rows.append(["verify", f"{section}:{name}", value])
        _emit(_rows_to_csv(header, rows), args.out)
    return 0


def cmd_blockenc(args) -> int:
    """Report lambda / term counts / ancillas; optionally verify the encoding."""
    spec = load_hamiltonian_spec(args.spec)
    encoding = block_encode(spec)
    plan = encoding.plan
    doc = {
        "spec": args.spec,
        "lambda": plan.lam,
        "n_terms": plan.n_terms,
        "ancilla_count": plan.ancilla_count,
        "system_qubits": plan.n_system_qubits,
        "terms_potential": plan.count_tagged(POTENTIAL),
        "terms_kinetic": plan.count_tagged(KINETIC),
        # select cost is dominated by the potential branch count
        "dominant_subspace": POTENTIAL
        if plan.count_tagged(POTENTIAL) >= plan.count_tagged(KINETIC) else KINETIC,
    }
    if args.verify:
        err = verify_block_encoding(encoding, assemble_hamiltonian_matrix(spec))
        doc["verify_error"] = err
        if err > args.tol:
            _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
            raise VerificationError(f"block-encoding error {err:.3e} exceeds tol {args.tol:.3e}")
    if args.format == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        rows = [[k, v] for k, v in doc.items()]
        _emit(_rows_to_csv(["name", "value"], rows), args.out)
    return 0


# -- parser ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, tol_default, tol_help: str) -> None:
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--tol", type=float, default=tol_default, help=tol_help)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qboson",
        description="Pauli-string counting, Trotter circuits, and block encodings "
                    "for truncated bosonic Hamiltonians.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="Fock-basis x/p string counts vs Q*2^(Q-1)")
    p.add_argument("--q-max", type=int, default=TABLE1_MAX_Q,
                   help=f"largest Q (default {TABLE1_MAX_Q})")
    _add_common(p, RELATIVE_PRUNE_TOL, "relative pruning tolerance for coefficients")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("count", help="per-Q Pauli-string counts for a Hamiltonian spec")
    p.add_argument("spec", help="Hamiltonian spec file (JSON)")
    p.add_argument("--q-min", type=int, help="sweep start (default: spec's Q)")
    p.add_argument("--q-max", type=int, help="sweep end (default: q-min)")
    _add_common(p, RELATIVE_PRUNE_TOL, "relative pruning tolerance for coefficients")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("fit", help="fit the scaling ansatz to a Q,n_pauli CSV")
    p.add_argument("series", help="CSV with columns Q and n_pauli")
    _add_common(p, None, "unused; accepted for interface uniformity")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("trotter", help="emit a Trotter circuit and gate-count report")
    p.add_argument("spec", help="Hamiltonian spec file (JSON)")
    p.add_argument("--time", type=float, required=True, help="total evolution time")
    p.add_argument("--steps", type=int, required=True, help="number of Trotter steps")
    p.add_argument("--circuit-out", metavar="PATH", help="write the circuit text here")
    p.add_argument("--verify", action="store_true",
                   help="simulate against the exact propagator and print halving ratios")
    _add_common(p, None, "with --verify: fail (exit 4) when the error exceeds this")
    p.set_defaults(func=cmd_trotter)

    p = sub.add_parser("blockenc", help="LCU block-encoding report")
    p.add_argument("spec", help="Hamiltonian spec file (JSON)")
    p.add_argument("--verify", action="store_true",
                   help="check (<G|(x)I) U (|G>(x)I) = H/lambda numerically")
    _add_common(p, 1e-10, "with --verify: fail (exit 4) beyond this error")
    p.set_defaults(func=cmd_blockenc)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
