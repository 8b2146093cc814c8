"""Command line: parse a circuit file, simulate, print support and samples.

    abelsim simulate --circuit c.json [--epsilon 1/64] [--delta 10,10]
                     [--count 1000] [--seed 0] [--out samples.jsonl]
    abelsim validate --circuit c.json
    abelsim support --circuit c.json
    abelsim oracle-check --circuit c.json [--count 10000] [--seed 0]

Circuit files are JSON with every rational written as a "p/q" string:

    {"group": ["Z", "T", {"ZN": 4}],
     "input": ["0", "1/2", "3"],
     "gates": [{"type": "automorphism", "A": [["1", "0", "0"], ...]},
               {"type": "quadratic", "M": [[...]], "v": [...]},
               {"type": "fourier", "registers": [0, 2]}],
     "sampling": {"epsilon": "1/64", "delta": [10], "count": 1000, "seed": 0}}

Fourier registers are 0-based.  Exit codes: 0 ok, 1 parse error, 2 invalid
circuit, 3 internal inconsistency, 4 oracle mismatch.
"""

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction

from .exactalg import RationalMatrix, format_rational, parse_rational
from .groups import GroupMismatch, GroupSpec, canonicalize
from .homs import InvalidMatrixRep, NotInvertible, invert_automorphism, validate
from .quadratic import CompositionCheckFailed, InvalidQuadratic, make_quadratic
from .sampler import DEFAULT_DELTA, build_net, enumerate_net, sample
from .stabilizer import Automorphism, Circuit, Fourier, QuadraticPhase, fourier_group, run_circuit
from .support import InternalInconsistency, support

__all__ = [
    "CircuitParseError",
    "CircuitValidationError",
    "parse_circuit",
    "load_circuit",
    "circuit_to_json",
    "main",
]

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_INTERNAL, EXIT_MISMATCH = 0, 1, 2, 3, 4
DEFAULT_EPSILON = Fraction(1, 64)
DEFAULT_COUNT = 1000
ORACLE_COUNT = 10_000
CHI2_P = 1e-4


class CircuitParseError(Exception):
    """Malformed file; ``where`` is a JSON path such as gates[1].A[0][2]."""

    def __init__(self, where, msg):
        self.where = where
        super().__init__(f"{where}: {msg}" if where else msg)


class CircuitValidationError(Exception):
    pass


def _rational(x, where):
    if isinstance(x, float):
        raise CircuitParseError(where, f"float {x!r} is not exact; write it as a \"p/q\" string")
    try:
        return parse_rational(x)
    except ValueError as exc:
        raise CircuitParseError(where, str(exc)) from None


def _vector(obj, where):
    if not isinstance(obj, list):
        raise CircuitParseError(where, "expected a list of rationals")
    return [_rational(x, f"{where}[{i}]") for i, x in enumerate(obj)]


def _matrix(obj, ncols, where):
    if not isinstance(obj, list):
        raise CircuitParseError(where, "expected a list of rows")
    rows = []
    for i, r in enumerate(obj):
        row = _vector(r, f"{where}[{i}]")
        if len(row) != ncols:
            raise CircuitParseError(f"{where}[{i}]", f"row has {len(row)} entries, expected {ncols}")
        rows.append(row)
    return RationalMatrix(rows, ncols)


def _group(obj, where="group"):
    try:
        return GroupSpec.from_json(obj)
    except (ValueError, TypeError) as exc:
        raise CircuitParseError(where, str(exc)) from None


def _gate(obj, G, t):
    where = f"gates[{t}]"
    if not isinstance(obj, dict) or "type" not in obj:
        raise CircuitParseError(where, "gate must be an object with a \"type\"")
    kind = obj["type"]
    m = len(G)
    try:
        if kind == "automorphism":
            A = _matrix(obj.get("A"), m, f"{where}.A")
            if A.nrows != m:
                raise CircuitParseError(f"{where}.A", f"{A.nrows} rows, expected {m}")
            rep = validate(A, G, G)
            invert_automorphism(rep)
            return Automorphism(rep)
        if kind == "quadratic":
            M = _matrix(obj.get("M"), m, f"{where}.M")
            if M.nrows != m:
                raise CircuitParseError(f"{where}.M", f"{M.nrows} rows, expected {m}")
            v = _vector(obj.get("v"), f"{where}.v")
            if len(v) != m:
                raise CircuitParseError(f"{where}.v", f"{len(v)} entries, expected {m}")
            return QuadraticPhase(make_quadratic(M, v, G))
        if kind == "fourier":
            regs = obj.get("registers")
            if not isinstance(regs, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in regs):
                raise CircuitParseError(f"{where}.registers", "expected a list of register indices")
            gate = Fourier(tuple(regs))
            fourier_group(G, gate.registers)
            return gate
    except (InvalidMatrixRep, InvalidQuadratic, NotInvertible, GroupMismatch, IndexError) as exc:
        raise CircuitValidationError(f"gate {t} ({kind}) on {G}: {type(exc).__name__}: {exc}") from exc
    raise CircuitParseError(f"{where}.type", f"unknown gate type {kind!r}")


def _sampling(obj):
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise CircuitParseError("sampling", "expected an object")
    out = {}
    if "epsilon" in obj:
        out["epsilon"] = _rational(obj["epsilon"], "sampling.epsilon")
    if "delta" in obj:
        d = obj["delta"]
        d = d if isinstance(d, list) else [d]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in d):
            raise CircuitParseError("sampling.delta", "deltas must be integers")
        out["delta"] = d
    for key in ("count", "seed"):
        if key in obj:
            if not isinstance(obj[key], int) or isinstance(obj[key], bool):
                raise CircuitParseError(f"sampling.{key}", "expected an integer")
            out[key] = obj[key]
    return out


def parse_circuit(obj):
    """(Circuit, sampling dict) from decoded JSON.

    Raises CircuitParseError for schema problems and CircuitValidationError
    when the data is well formed but does not describe a valid circuit.
    """
    if not isinstance(obj, dict):
        raise CircuitParseError("", "circuit file must hold a JSON object")
    for key in ("group", "input", "gates"):
        if key not in obj:
            raise CircuitParseError("", f"missing key {key!r}")
    G0 = _group(obj["group"])
    x = _vector(obj["input"], "input")
    if len(x) != len(G0):
        raise CircuitParseError("input", f"{len(x)} coordinates for a group with {len(G0)} factors")
    try:
        g = canonicalize(x, G0)
    except ValueError as exc:
        raise CircuitValidationError(f"input: {exc}") from exc
    if any(f.kind == "R" for f in G0):
        raise CircuitValidationError("R factors are not allowed in circuits")
    if not isinstance(obj["gates"], list):
        raise CircuitParseError("gates", "expected a list")
    gates, G = [], G0
    for t, raw in enumerate(obj["gates"]):
        gate = _gate(raw, G, t)
        gates.append(gate)
        if isinstance(gate, Fourier):
            G = fourier_group(G, gate.registers)
    return Circuit(G0, g, tuple(gates)), _sampling(obj.get("sampling"))


def load_circuit(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise CircuitParseError("", f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CircuitParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse_circuit(obj)


def _mat_json(A):
    return [[format_rational(x) for x in r] for r in A.rows]


def circuit_to_json(circuit, sampling=None):
    gates = []
    for gate in circuit.gates:
        if isinstance(gate, Automorphism):
            gates.append({"type": "automorphism", "A": _mat_json(gate.rep.A)})
        elif isinstance(gate, QuadraticPhase):
            gates.append({"type": "quadratic", "M": _mat_json(gate.Q.M), "v": [format_rational(x) for x in gate.Q.v]})
        else:
            gates.append({"type": "fourier", "registers": list(gate.registers)})
    out = {"group": circuit.group0.to_json(), "input": circuit.input.to_json(), "gates": gates}
    if sampling:
        s = dict(sampling)
        if "epsilon" in s:
            s["epsilon"] = format_rational(s["epsilon"])
        out["sampling"] = s
    return out


def group_chain_lines(circuit):
    chain = [circuit.group0]
    for gate in circuit.gates:
        G = chain[-1]
        chain.append(fourier_group(G, gate.registers) if isinstance(gate, Fourier) else G)
    if all(G == chain[0] for G in chain):
        return [f"{chain[0]} (unchanged × {len(circuit.gates)} gates)"]
    return [f"G({t}) = {G}" for t, G in enumerate(chain)]


def _json_line(obj):
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"


def _write(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _deltas(arg):
    try:
        return [int(x) for x in arg.split(",") if x.strip()]
    except ValueError:
        raise CircuitParseError("--delta", f"expected comma separated integers, got {arg!r}") from None


def _options(args, sampling):
    e, d = getattr(args, "epsilon", None), getattr(args, "delta", None)
    eps = _rational(e, "--epsilon") if e is not None else sampling.get("epsilon", DEFAULT_EPSILON)
    deltas = _deltas(d) if d is not None else sampling.get("delta")
    count = args.count if args.count is not None else sampling.get("count", DEFAULT_COUNT)
    seed = args.seed if args.seed is not None else sampling.get("seed", 0)
    return eps, deltas, count, seed


def _net(circuit, eps, deltas):
    desc = support(run_circuit(circuit))
    if deltas is None:
        deltas = [DEFAULT_DELTA]
    try:
        net = build_net(desc.E_H, eps, deltas=deltas, offset=desc.x0)
    except ValueError as exc:
        raise CircuitValidationError(f"sampling options: {exc}") from exc
    return desc, net


def cmd_simulate(args):
    circuit, sampling = load_circuit(args.circuit)
    eps, deltas, count, seed = _options(args, sampling)
    if count < 0:
        raise CircuitValidationError("--count must be nonnegative")
    desc, net = _net(circuit, eps, deltas)
    lines = [_json_line({"support": desc.to_json(), "net": net.summary()})]
    lines += [_json_line({"sample": x.to_json()}) for x in sample(net, seed, count)]
    _write("".join(lines), args.out)
    return EXIT_OK


def cmd_validate(args):
    circuit, _ = load_circuit(args.circuit)
    _write("".join(line + "\n" for line in group_chain_lines(circuit)), args.out)
    return EXIT_OK


def cmd_support(args):
    circuit, _ = load_circuit(args.circuit)
    desc = support(run_circuit(circuit))
    _write(_json_line(desc.to_json()), args.out)
    return EXIT_OK


def _chi2_uniform(counts, n_cells):
    from scipy.stats import chisquare

    if n_cells < 2:
        return 1.0
    obs = list(counts) + [0] * (n_cells - len(counts))
    return float(chisquare(obs).pvalue)


def cmd_oracle_check(args):
    from .oracle import OracleError, dense_run, dense_support

    circuit, sampling = load_circuit(args.circuit)
    _, _, count, seed = _options(args, sampling)
    if args.count is None and "count" not in sampling:
        count = ORACLE_COUNT
    try:
        state = dense_run(circuit)
    except OracleError as exc:
        raise CircuitValidationError(f"oracle-check: {exc}") from exc
    dense = dense_support(state)

    desc, net = _net(circuit, DEFAULT_EPSILON, None)
    ours = set(enumerate_net(net))
    if ours != dense:
        diff = sorted(ours ^ dense, key=lambda e: e.coords)[0]
        side = "stabilizer pipeline" if diff in ours else "dense oracle"
        print(f"MISMATCH support: {diff.to_json()} only in the {side} "
              f"({len(ours)} vs {len(dense)} elements)", file=sys.stderr)
        return EXIT_MISMATCH

    draws = sample(net, seed, count)
    outside = [x for x in draws if x not in dense]
    if outside:
        print(f"MISMATCH sample {outside[0].to_json()} is outside the support", file=sys.stderr)
        return EXIT_MISMATCH
    p = _chi2_uniform(Counter(draws).values(), len(dense))
    if p < CHI2_P:
        print(f"MISMATCH sample frequencies are not uniform: chi-square p = {p:.3g}", file=sys.stderr)
        return EXIT_MISMATCH
    _write(_json_line({"support_size": len(dense), "samples": count, "chi2_p": p, "status": "ok"}), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # bad flags count as a parse error, not a circuit validation failure
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="abelsim", description="Simulate normalizer circuits over Z^a x T^b x Z_N.")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "simulate": (cmd_simulate, "support description followed by samples (JSON lines)"),
        "validate": (cmd_validate, "check a circuit file and print its group chain"),
        "support": (cmd_support, "print the support description"),
        "oracle-check": (cmd_oracle_check, "compare with a dense simulation (finite groups only)"),
    }
    for name, (fn, help_) in specs.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("--circuit", required=True, metavar="PATH")
        p.add_argument("--out", metavar="PATH")
        if name in ("simulate", "oracle-check"):
            p.add_argument("--count", type=int, metavar="N")
            p.add_argument("--seed", type=int, metavar="S")
        if name == "simulate":
            p.add_argument("--epsilon", metavar="P/Q")
            p.add_argument("--delta", metavar="D1,D2,...")
        p.set_defaults(func=fn)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CircuitParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CircuitValidationError as exc:
        print(f"invalid circuit: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InternalInconsistency, CompositionCheckFailed, AssertionError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # anything unexpected is a bug, not bad input
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
