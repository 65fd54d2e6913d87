"""Command-line front end: ``dickemps {state,mps,schmidt,circuit,verify} ...``.

Exit status is 0 on success, 1 when a verification check fails and 2 for
invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import circuit as circ
from . import mps, schmidt, verify
from .dicke import (
    DenseState,
    DomainError,
    dicke_state,
    occupation_vector,
    qudit_dicke_state,
    spin_dicke_state,
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int
    k: int | None = None
    two_s: int | None = None
    kvec: tuple[int, ...] | None = None
    cut: int | None = None
    tol: float = 1e-12
    format: str = "json"
    output: str | None = None
    simulate: bool = False
    strict: bool = False
    ti: bool = False
    state_output: str | None = None

    @property
    def family(self) -> str:
        if self.kvec is not None:
            if self.k is not None or self.two_s is not None:
                raise DomainError("--kvec cannot be combined with --k or --two-s")
            return "qudit"
        if self.k is None:
            raise DomainError("one of --k or --kvec is required")
        return "qubit" if self.two_s is None else "spin"


def _parse_kvec(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dickemps", description="Exact MPS and preparation circuits for Dicke states."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, required=True, help="number of sites")
        p.add_argument("--k", type=int, help="number of excitations (qubit or spin-s)")
        p.add_argument("--two-s", dest="two_s", type=int, help="twice the spin, d = two_s + 1")
        p.add_argument("--kvec", type=_parse_kvec, help="qudit occupations, e.g. 2,1,1")
        p.add_argument("--tol", type=float, default=1e-12)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", "-o", help="output file (default: stdout)")
        return p

    common(sub.add_parser("state", help="dense Dicke state"))
    p = common(sub.add_parser("mps", help="MPS tensors and canonicity residuals"))
    p.add_argument("--strict", action="store_true", help="strictly canonical qubit matrices")
    p.add_argument("--ti", action="store_true", help="translationally invariant spin-s matrices")
    p = common(sub.add_parser("schmidt", help="Schmidt spectrum by SVD"))
    p.add_argument("--cut", type=int, help="sites 1..cut vs the rest (default: every cut)")
    p = common(sub.add_parser("circuit", help="sequential preparation circuit (qubits)"))
    p.add_argument("--simulate", action="store_true", help="simulate and report fidelity")
    p.add_argument("--state-output", dest="state_output",
                   help="with --simulate, write the projected system state here")
    common(sub.add_parser("verify", help="run every invariant check for one instance"))
    return parser


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        command=args.command,
        n=args.n,
        k=args.k,
        two_s=args.two_s,
        kvec=args.kvec,
        cut=getattr(args, "cut", None),
        tol=args.tol,
        format=args.format,
        output=args.output,
        simulate=getattr(args, "simulate", False),
        strict=getattr(args, "strict", False),
        ti=getattr(args, "ti", False),
        state_output=getattr(args, "state_output", None),
    )


def _state(cfg: RunConfig) -> DenseState:
    family = cfg.family
    if family == "qubit":
        return dicke_state(cfg.n, cfg.k)
    if family == "spin":
        return spin_dicke_state(cfg.n, cfg.k, cfg.two_s)
    return qudit_dicke_state(cfg.n, cfg.kvec)


def _chain(cfg: RunConfig) -> mps.MpsChain:
    family = cfg.family
    if cfg.ti:
        if family == "qudit":
            raise DomainError("--ti applies to qubit and spin-s states only")
        return mps.ti_chain(cfg.n, cfg.k, cfg.two_s or 1)
    if family == "qubit":
        return mps.qubit_chain(cfg.n, cfg.k, strict=cfg.strict)
    if cfg.strict:
        raise DomainError("--strict applies to qubit states only")
    if family == "spin":
        return mps.spin_chain(cfg.n, cfg.k, cfg.two_s)
    return mps.qudit_chain(cfg.n, cfg.kvec)


def _render_state(state: DenseState, fmt: str) -> str:
    return state.to_json() + "\n" if fmt == "json" else state.to_csv()


def _cmd_mps(cfg: RunConfig) -> str:
    chain = _chain(cfg)
    residuals = mps.canonicity_residuals(chain)
    if cfg.format == "csv":
        rows = "".join(f"{i},{r!r}\n" for i, r in enumerate(residuals, start=1))
        return "site,residual\n" + rows
    obj = json.loads(chain.to_json())
    obj["residuals"] = residuals
    return json.dumps(obj) + "\n"


def _cmd_schmidt(cfg: RunConfig) -> str:
    state = _state(cfg)
    cuts = [cfg.cut] if cfg.cut is not None else list(range(1, state.n))
    spectra = [schmidt.schmidt_spectrum(state, c) for c in cuts]
    if cfg.format == "csv":
        return schmidt.spectra_to_csv(spectra)
    obj = [
        {"cut": s.cut, "rank": s.rank, "values": [float(v) for v in s.values]}
        for s in spectra
    ]
    return json.dumps(obj[0] if cfg.cut is not None else obj) + "\n"


def _cmd_circuit(cfg: RunConfig) -> str:
    if cfg.family != "qubit":
        raise DomainError("preparation circuits are built for qubit Dicke states only")
    if cfg.format != "json":
        raise DomainError("circuits are exported as JSON only")
    c = circ.build_circuit(cfg.n, cfg.k)
    if not cfg.simulate:
        return c.to_json() + "\n"
    final = circ.simulate(c)
    if cfg.state_output:
        projected = final.project_ancilla(c.k)
        with open(cfg.state_output, "w") as fh:
            fh.write(projected.to_json() + "\n")
    summary = {
        "n": c.n,
        "k": c.k,
        "chi": c.chi,
        "gates": len(c),
        "depth": circ.depth(c),
        "fidelity": circ.preparation_fidelity(final),
        "norm": final.norm,
        "circuit": json.loads(c.to_json()),
    }
    return json.dumps(summary) + "\n"


def _cmd_verify(cfg: RunConfig) -> tuple[str, bool]:
    family = cfg.family
    if family == "qubit":
        checks = verify.check_qubit(cfg.n, cfg.k)
    elif family == "spin":
        checks = verify.check_spin(cfg.n, cfg.k, cfg.two_s)
    else:
        checks = verify.check_qudit(cfg.n, occupation_vector(cfg.kvec, cfg.n))
    ok = all(c.passed for c in checks)
    if cfg.format == "json":
        text = json.dumps(
            {"passed": ok, "checks": [{"name": c.name, "passed": c.passed, "value": c.value, "tol": c.tol} for c in checks]}
        ) + "\n"
    else:
        text = "name,passed,value,tol\n" + "".join(
            f"\"{c.name}\",{c.passed},{c.value!r},{c.tol!r}\n" for c in checks
        )
    return text, ok


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ok = True
    try:
        if cfg.command == "state":
            text = _render_state(_state(cfg), cfg.format)
        elif cfg.command == "mps":
            text = _cmd_mps(cfg)
        elif cfg.command == "schmidt":
            text = _cmd_schmidt(cfg)
        elif cfg.command == "circuit":
            text = _cmd_circuit(cfg)
        elif cfg.command == "verify":
            text, ok = _cmd_verify(cfg)
        else:
            raise DomainError(f"unknown command {cfg.command!r}")
    except DomainError as exc:
        print(f"dickemps: error: {exc}", file=stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if not ok:
        print("dickemps: verification failed", file=stderr)
        return 1
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(config_from_args(argv))


if __name__ == "__main__":
    sys.exit(main())
