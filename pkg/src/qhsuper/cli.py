"""Command line entry point.

Configuration comes from a TOML file, from flags, or both (flags win).
Reports are JSON with a fixed key order so identical configurations give
byte-identical output.

Exit codes: 0 all checks passed, 1 a check failed or a computation raised,
2 configuration error, 3 an instance was refused by a scale guard.  Setting
QHSUPER_NO_GUARDS=1 lifts the guards.

TOML schema::

    output = "report.json"          # optional

    [datum]
    preset = "A2"                   # or the four inline fields below
    labels = [1, 2]
    cartan = [[2, -1], [-1, 2]]
    symmetrizers = [1, 1]
    parity = [0, 0]

    [[qparams]]                     # optional; default Q_ij = w^-a_ij + z^-a_ji
    i = 1
    j = 2
    r = 1
    s = 0
    t = "1"

    [run]
    command = "suite"               # flags may supply it instead
    check = "sl2"                   # for command = "verify"
    lambda = [1, 0]
    beta = [1, 1]
    word = "t1 x2 e(1,1)"
    n = 3
    i = 1
    j = 2
    height = 2
    max_degree = 12

    [guards]
    max_height = 4
    max_degree = 24
    word_length = 32
"""
import argparse
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
import json
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .cyclotomic import build_cyclotomic, engine, integrability_report, verify_qp_identity
from .foundations import (CartanDatum, FoundationsError, PRESETS, SuperScalar, as_root,
                          build_q_matrix, preset, roots_of_height, super_quantum_factorial)
from .groth import (compare_with_oracle, verify_boson_relation, verify_cyclotomic_ses,
                    verify_kernel_commutation, verify_mackey, verify_pi_invariance,
                    verify_sl2_commutation, verify_strong_perfect)
from .oracle import compare_graded_dims, multiplicity_table
from .qhsalg import (ScaleGuardError, check_guard, divided_power_character_direct,
                     graded_dim_total, intertwiner_failures, nil_braid_data, relation_failures)
from .repcat import crystal_data, simple_modules

COMMANDS = ("nf", "dim", "cyclo", "simples", "character", "oracle", "verify", "suite")
CHECKS = ("braid", "relations", "intertwiner", "qp", "sl2", "perfect", "mackey", "boson",
          "oracle-match", "integrability", "pi", "dims", "kernel", "ses")
DEFAULT_GUARDS = {"max_height": 4, "max_degree": 24, "word_length": 32}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    datum: CartanDatum
    qparams: object
    raw_qparams: list
    command: str
    check: str = None
    lam: tuple = None
    beta: tuple = None
    word: str = None
    n: int = None
    i: object = None
    j: object = None
    height: int = None
    max_degree: int = 12
    guards: dict = field(default_factory=lambda: dict(DEFAULT_GUARDS))
    output: str = None

    def to_json(self):
        d = self.datum
        return {
            "datum": {"name": d.name, "labels": [str(x) for x in d.labels],
                      "cartan": [list(r) for r in d.cartan],
                      "symmetrizers": list(d.symmetrizers), "parity": list(d.parity)},
            "qparams": self.qparams.to_json(),
            "command": self.command, "check": self.check,
            "lambda": None if self.lam is None else list(self.lam),
            "beta": None if self.beta is None else list(self.beta),
            "word": self.word, "n": self.n,
            "i": None if self.i is None else str(self.i),
            "j": None if self.j is None else str(self.j),
            "height": self.height, "max_degree": self.max_degree,
            "guards": dict(self.guards), "output": self.output,
        }


# ---------------------------------------------------------------- loading

def _int_list(value, path):
    if isinstance(value, str):
        try:
            value = [int(x) for x in value.replace(" ", "").split(",") if x]
        except ValueError:
            raise ConfigError(f"{path}: expected comma-separated integers, got {value!r}") from None
    if not isinstance(value, (list, tuple)) or not all(isinstance(x, int) for x in value):
        raise ConfigError(f"{path}: expected a list of integers")
    return tuple(value)


def _label(datum, value, path):
    if value is None:
        return None
    for lab in datum.labels:
        if str(lab) == str(value):
            return lab
    raise ConfigError(f"{path}: unknown index {value!r}; labels are {list(datum.labels)}")


def _datum(table):
    if not isinstance(table, dict):
        raise ConfigError("datum: expected a table")
    if "preset" in table:
        try:
            return preset(table["preset"])
        except FoundationsError as e:
            raise ConfigError(f"datum.preset: {e}") from None
    need = ("labels", "cartan", "symmetrizers", "parity")
    missing = [k for k in need if k not in table]
    if missing:
        raise ConfigError(f"datum: missing {', '.join(missing)} (or give a preset from {sorted(PRESETS)})")
    try:
        return CartanDatum(labels=tuple(table["labels"]),
                           cartan=tuple(tuple(r) for r in table["cartan"]),
                           symmetrizers=tuple(table["symmetrizers"]),
                           parity=tuple(table["parity"]), name=table.get("name", "custom"))
    except (FoundationsError, TypeError) as e:
        raise ConfigError(f"datum.cartan: {e}") from None


def _qparams(datum, entries):
    if entries is None:
        return build_q_matrix(datum, None), []
    raw = []
    for k, e in enumerate(entries):
        missing = [f for f in ("i", "j", "r", "s", "t") if f not in e]
        if missing:
            raise ConfigError(f"qparams[{k}]: missing {', '.join(missing)}")
        try:
            t = Fraction(str(e["t"]))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"qparams[{k}].t: not a rational number: {e['t']!r}") from None
        raw.append({"i": _label(datum, e["i"], f"qparams[{k}].i"),
                    "j": _label(datum, e["j"], f"qparams[{k}].j"),
                    "r": e["r"], "s": e["s"], "t": t})
    try:
        return build_q_matrix(datum, raw), raw
    except FoundationsError as e:
        raise ConfigError(f"qparams: {e}") from None


def _read_toml(path):
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{path}: {e}") from None


def build_config(raw, overrides=None):
    """Validate a parsed config table, with flag overrides applied on top."""
    raw = dict(raw or {})
    run = dict(raw.get("run", {}))
    for k, v in (overrides or {}).items():
        if v is not None:
            run[k] = v
    datum_table = dict(raw.get("datum", {}))
    if run.get("preset") is not None:
        datum_table = {"preset": run.pop("preset")}
    run.pop("preset", None)
    if not datum_table:
        raise ConfigError("datum: give a preset or inline Cartan data")
    datum = _datum(datum_table)
    qparams, raw_q = _qparams(datum, raw.get("qparams"))
    command = run.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"run.command: expected one of {list(COMMANDS)}, got {command!r}")
    check = run.get("check")
    if command == "verify" and check not in CHECKS:
        raise ConfigError(f"run.check: expected one of {list(CHECKS)}, got {check!r}")
    guards = dict(DEFAULT_GUARDS)
    for k, v in raw.get("guards", {}).items():
        if k not in guards:
            raise ConfigError(f"guards.{k}: unknown guard; known: {sorted(guards)}")
        if not isinstance(v, int) or v < 0:
            raise ConfigError(f"guards.{k}: expected a non-negative integer")
        guards[k] = v
    lam = beta = None
    if run.get("lambda") is not None:
        lam = _int_list(run["lambda"], "run.lambda")
        if len(lam) != datum.rank:
            raise ConfigError(f"run.lambda: expected {datum.rank} entries, got {len(lam)}")
        if any(c < 0 for c in lam):
            raise ConfigError("run.lambda: Lambda must be dominant")
    if run.get("beta") is not None:
        beta = _int_list(run["beta"], "run.beta")
        if len(beta) != datum.rank:
            raise ConfigError(f"run.beta: expected {datum.rank} entries, got {len(beta)}")
        if any(c < 0 for c in beta):
            raise ConfigError("run.beta: beta must lie in Q+")
    for k in ("n", "height", "max_degree"):
        v = run.get(k)
        if v is not None and (not isinstance(v, int) or v < 0):
            raise ConfigError(f"run.{k}: expected a non-negative integer")
    cfg = RunConfig(datum=datum, qparams=qparams, raw_qparams=raw_q, command=command, check=check,
                    lam=lam, beta=beta, word=run.get("word"), n=run.get("n"),
                    i=_label(datum, run.get("i"), "run.i"), j=_label(datum, run.get("j"), "run.j"),
                    height=run.get("height"), max_degree=run.get("max_degree", 12),
                    guards=guards, output=raw.get("output"))
    if overrides and overrides.get("output") is not None:
        cfg.output = overrides["output"]
    return cfg


def load_config(path, overrides=None):
    return build_config(_read_toml(path), overrides)


# ---------------------------------------------------------------- helpers

def _canon(obj):
    """JSON-ready copy with keys as strings, sorted numerically when they are
    all integers, so that dumps is byte-stable."""
    if isinstance(obj, SuperScalar):
        obj = obj.to_json()
    if hasattr(obj, "to_json") and not isinstance(obj, dict):
        obj = obj.to_json()
    if isinstance(obj, dict):
        keys = list(obj)
        if all(isinstance(k, int) and not isinstance(k, bool) for k in keys):
            order = sorted(keys)
        else:
            order = sorted(keys, key=str)
        return {str(k): _canon(obj[k]) for k in order}
    if isinstance(obj, (list, tuple)):
        return [_canon(x) for x in obj]
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def _need(cfg, *names):
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        flags = ", ".join("--L" if n == "lam" else f"--{n}" for n in missing)
        raise ConfigError(f"command {cfg.command!r} needs {flags}")


def _guard_height(cfg, h):
    check_guard(h, cfg.guards["max_height"], "height (guards.max_height)")


def _guard_degree(cfg, d):
    check_guard(d, cfg.guards["max_degree"], "degree (guards.max_degree)")


def _betas(cfg, default_height, low=0):
    """beta from the config, else every beta with low <= |beta| <= height."""
    if cfg.beta is not None:
        _guard_height(cfg, sum(cfg.beta))
        return [as_root(cfg.beta)]
    h = default_height if cfg.height is None else cfg.height
    _guard_height(cfg, h)
    return [b for k in range(low, h + 1) for b in roots_of_height(cfg.datum, k)]


def _labels(cfg, which="i"):
    v = getattr(cfg, which)
    return list(cfg.datum.labels) if v is None else [v]


def _summary(command, cfg, results):
    ok = all(r.get("pass", False) for r in results)
    failed = [r.get("check", command) for r in results if not r.get("pass", False)]
    return {"command": command, "config": cfg.to_json(), "results": results,
            "summary": {"checks": len(results), "failed": len(failed)}, "pass": ok}


# ---------------------------------------------------------------- commands

def cmd_nf(cfg):
    _need(cfg, "word")
    tokens = cfg.word.split()
    check_guard(len(tokens), cfg.guards["word_length"], "word length (guards.word_length)")
    alg = engine(cfg.datum, cfg.qparams)
    n = cfg.n
    if n is None:
        for t in tokens:
            if t.startswith("e("):
                n = len([s for s in t[2:-1].replace(",", " ").split() if s])
                break
    if n is None:
        raise ConfigError("command 'nf' needs --n when the word has no idempotent")
    _guard_height(cfg, n)
    elem = alg.normal_form(cfg.word, n)
    deg = alg.degree_of(elem)
    terms = []
    for (a, w, nu), c in sorted(elem.terms.items(), key=lambda t: _mono_sort(t[0])):
        terms.append({"x": list(a), "perm": list(w), "nu": [str(x) for x in nu], "coeff": c})
    return [{"check": "nf", "word": cfg.word, "n": n, "normal_form": alg.format(elem),
             "terms": terms, "degree": deg if isinstance(deg, str) else list(deg), "pass": True}]


def _mono_sort(m):
    from .qhsalg import mono_key
    return mono_key(m)


def cmd_dim(cfg):
    _need(cfg, "beta")
    _guard_height(cfg, sum(cfg.beta))
    _guard_degree(cfg, cfg.max_degree)
    alg = engine(cfg.datum, cfg.qparams)
    series = graded_dim_total(alg, cfg.beta, cfg.max_degree)
    return [{"check": "dim", "beta": list(cfg.beta), "max_degree": cfg.max_degree,
             "character": series, "dims": series.at_pi(1), "pass": True}]


def cmd_cyclo(cfg):
    _need(cfg, "lam", "beta")
    _guard_height(cfg, sum(cfg.beta))
    A = build_cyclotomic(cfg.datum, cfg.qparams, cfg.lam, cfg.beta)
    return [{"check": "cyclo", "lambda": list(cfg.lam), "beta": list(cfg.beta), "dim": A.dim,
             "dims": dict(A.graded_dims()), "character": A.character(),
             "dead_idempotents": sorted([str(x) for x in nu] for nu in A.dead), "pass": True}]


def cmd_simples(cfg):
    _need(cfg, "lam", "beta")
    _guard_height(cfg, sum(cfg.beta))
    A = build_cyclotomic(cfg.datum, cfg.qparams, cfg.lam, cfg.beta)
    out = []
    for k, rec in enumerate(simple_modules(A, cfg.qparams)):
        row = rec.to_json()
        row["index"] = k
        row["self_dual_shifts"] = list(rec.dual_shifts)
        crystal = {}
        for i in cfg.datum.labels:
            cd = crystal_data(rec.module, i)
            crystal[str(i)] = {"eps": cd["eps"], "f_tilde_dims": cd["f_tilde"].graded_dims()}
        row["crystal"] = crystal
        out.append(row)
    return [{"check": "simples", "lambda": list(cfg.lam), "beta": list(cfg.beta),
             "count": len(out), "simples": out, "pass": True}]


def cmd_character(cfg):
    _need(cfg, "beta")
    _guard_height(cfg, sum(cfg.beta))
    if cfg.lam is None:
        return cmd_dim(cfg)
    A = build_cyclotomic(cfg.datum, cfg.qparams, cfg.lam, cfg.beta)
    by_idem = {}
    for (a, w, nu), d, p in zip(A.basis, A.degrees, A.parities):
        key = ",".join(str(x) for x in nu)
        by_idem.setdefault(key, {})
        by_idem[key][(d, p)] = by_idem[key].get((d, p), 0) + 1
    simples = [rec.module.character() for rec in simple_modules(A, cfg.qparams)]
    return [{"check": "character", "lambda": list(cfg.lam), "beta": list(cfg.beta),
             "algebra": A.character(),
             "right_idempotents": {k: SuperScalar(v) for k, v in by_idem.items()},
             "simples": simples, "pass": True}]


def cmd_oracle(cfg):
    _need(cfg, "lam")
    h = 2 if cfg.height is None else cfg.height
    _guard_height(cfg, h)
    table = multiplicity_table(cfg.datum, cfg.lam, h)
    out = [{"check": "oracle", "lambda": list(cfg.lam), "height": h,
            "multiplicities": {",".join(map(str, b)): m for b, m in table.items()}, "pass": True}]
    if cfg.beta is not None:
        out.append(compare_graded_dims(cfg.datum, cfg.qparams, cfg.lam, cfg.beta))
    return out


# ---------------------------------------------------------------- checks

def check_braid(cfg):
    n_top = 3 if cfg.n is None else cfg.n
    _guard_height(cfg, n_top)
    _guard_degree(cfg, cfg.max_degree)
    alg = engine(cfg.datum, cfg.qparams)
    out = []
    for i in _labels(cfg):
        for n in range(1, n_top + 1):
            data = nil_braid_data(alg, i, n, cfg.max_degree)
            fac = super_quantum_factorial(cfg.datum, n, i)
            top = cfg.max_degree - fac.min_degree()
            lhs = graded_dim_total(alg, tuple(n if l == i else 0 for l in cfg.datum.labels),
                                   cfg.max_degree)
            rhs = (fac * divided_power_character_direct(alg, i, n, top)).truncate(cfg.max_degree)
            ok = data["braid_ok"] and data["idempotent_ok"] and lhs == rhs
            out.append({"check": "braid", "i": str(i), "n": n, "braid": data["braid_ok"],
                        "idempotent": data["idempotent_ok"], "divided_power": lhs == rhs,
                        "lhs": lhs, "rhs": rhs, "pass": ok})
    return out


def check_relations(cfg):
    n_top = 3 if cfg.n is None else cfg.n
    _guard_height(cfg, n_top)
    alg = engine(cfg.datum, cfg.qparams)
    out = []
    for n in range(1, n_top + 1):
        bad = relation_failures(alg, n)
        out.append({"check": "relations", "n": n, "failures": [str(b) for b in bad],
                    "pass": not bad})
    return out


def check_intertwiner(cfg):
    n = 3 if cfg.n is None else cfg.n
    _guard_height(cfg, n)
    alg = engine(cfg.datum, cfg.qparams)
    out = []
    for kind in ("phi", "g"):
        bad = intertwiner_failures(alg, n, kind)
        out.append({"check": "intertwiner", "kind": kind, "n": n, "failures": bad,
                    "pass": not bad})
    return out


def check_qp(cfg):
    _need(cfg, "lam")
    return [verify_qp_identity(cfg.datum, cfg.qparams, cfg.lam, b, i)
            for b in _betas(cfg, 2) for i in _labels(cfg)]


def check_sl2(cfg):
    _need(cfg, "lam")
    return [verify_sl2_commutation(cfg.datum, cfg.qparams, cfg.lam, b, i, j)
            for b in _betas(cfg, 2) for i in _labels(cfg) for j in _labels(cfg, "j")]


def check_perfect(cfg):
    _need(cfg, "lam")
    return [verify_strong_perfect(cfg.datum, cfg.qparams, cfg.lam, b, i)
            for b in _betas(cfg, 2, low=1) for i in _labels(cfg)]


def check_pi(cfg):
    _need(cfg, "lam")
    return [verify_pi_invariance(cfg.datum, cfg.qparams, cfg.lam, b) for b in _betas(cfg, 2)]


def check_mackey(cfg):
    h = 2 if cfg.height is None else cfg.height
    _guard_height(cfg, h)
    roots = [r for k in range(h + 1) for r in roots_of_height(cfg.datum, k)]
    out = []
    for a, b, a2 in product(roots, repeat=3):
        b2 = (a + b).minus(a2)
        if b2 is None or b2.height > h:
            continue
        out.append(verify_mackey(cfg.datum, cfg.qparams, a, b, a2, b2, max_deg=min(cfg.max_degree, 6)))
    return out


def check_boson(cfg):
    _need(cfg, "lam")
    out = []
    for b in _betas(cfg, 2):
        A = build_cyclotomic(cfg.datum, cfg.qparams, cfg.lam, b)
        for k, rec in enumerate(simple_modules(A, cfg.qparams)):
            for i in _labels(cfg):
                for j in _labels(cfg, "j"):
                    r = verify_boson_relation(rec.module, i, j)
                    r["instance"]["simple"] = k
                    out.append(r)
    return out


def check_oracle_match(cfg):
    _need(cfg, "lam")
    h = 2 if cfg.height is None else cfg.height
    _guard_height(cfg, h)
    return [compare_with_oracle(cfg.datum, cfg.qparams, cfg.lam, h)]


def check_integrability(cfg):
    _need(cfg, "lam")
    betas = [as_root(cfg.beta)] if cfg.beta is not None else _betas(cfg, 1)
    return [integrability_report(cfg.datum, cfg.qparams, cfg.lam, b, i)
            for b in betas for i in _labels(cfg)]


def check_dims(cfg):
    out = []
    for b in _betas(cfg, 2, low=1):
        out.append(compare_graded_dims(cfg.datum, cfg.qparams, cfg.lam, b))
    return out


def check_kernel(cfg):
    top = min(cfg.max_degree, 6)
    return [verify_kernel_commutation(cfg.datum, cfg.qparams, b, i, j, bar, top)
            for b in _betas(cfg, 2) for i in _labels(cfg) for j in _labels(cfg, "j")
            for bar in (False, True)]


def check_ses(cfg):
    _need(cfg, "lam")
    top = min(cfg.max_degree, 8)
    return [verify_cyclotomic_ses(cfg.datum, cfg.qparams, cfg.lam, b, i, top)
            for b in _betas(cfg, 2) for i in _labels(cfg)]


VERIFY = {"braid": check_braid, "relations": check_relations, "intertwiner": check_intertwiner,
          "qp": check_qp, "sl2": check_sl2, "perfect": check_perfect, "mackey": check_mackey,
          "boson": check_boson, "oracle-match": check_oracle_match,
          "integrability": check_integrability, "pi": check_pi, "dims": check_dims,
          "kernel": check_kernel, "ses": check_ses}


def cmd_suite(cfg):
    """Every check that applies to the configured datum and Lambda."""
    _need(cfg, "lam")
    h = 2 if cfg.height is None else cfg.height
    _guard_height(cfg, h)
    low = min(h, 2)

    def sub(**kw):
        c = RunConfig(**{**cfg.__dict__, **kw})
        return c

    out = []
    out += check_relations(sub(n=3, beta=None))
    out += check_braid(sub(n=3, i=None))
    out += check_intertwiner(sub(n=3))
    out += check_dims(sub(lam=None, beta=None, height=min(h, 3)))
    out += check_dims(sub(beta=None, height=low))
    out += check_qp(sub(beta=None, height=low, i=None))
    out += check_sl2(sub(beta=None, height=low, i=None, j=None))
    out += check_perfect(sub(beta=None, height=low, i=None))
    out += check_pi(sub(beta=None, height=h))
    out += check_oracle_match(sub(height=h))
    out += check_integrability(sub(beta=None, height=1, i=None))
    out += check_mackey(sub(height=low))
    out += check_boson(sub(beta=None, height=low, i=None, j=None))
    out += check_kernel(sub(beta=None, height=low, i=None, j=None))
    out += check_ses(sub(beta=None, height=low, i=None))
    return out


COMMAND_FUNCS = {"nf": cmd_nf, "dim": cmd_dim, "cyclo": cmd_cyclo, "simples": cmd_simples,
                 "character": cmd_character, "oracle": cmd_oracle, "suite": cmd_suite}


def run(cfg):
    """Execute a validated config; returns (exit code, report dict)."""
    if cfg.command == "verify":
        results = VERIFY[cfg.check](cfg)
        name = f"verify {cfg.check}"
    else:
        results = COMMAND_FUNCS[cfg.command](cfg)
        name = cfg.command
    report = _canon(_summary(name, cfg, results))
    return (0 if report["pass"] else 1), report


def dumps(report):
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- argv

def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML config file")
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--L", dest="lambda", metavar="COORDS",
                        help="Lambda in fundamental-weight coordinates, e.g. 1,0")
    common.add_argument("--beta", help="root-lattice coordinates, e.g. 1,1")
    common.add_argument("--word", help="word in e(nu), x<k>, t<a>, e.g. 't1 x2 e(1,1)'")
    common.add_argument("--n", type=int, help="number of strands")
    common.add_argument("--i", help="index label")
    common.add_argument("--j", help="second index label")
    common.add_argument("--height", type=int, help="height bound for sweeps")
    common.add_argument("--max-degree", dest="max_degree", type=int, help="degree truncation")
    common.add_argument("--output", help="write the JSON report here instead of stdout")
    p = argparse.ArgumentParser(prog="qhsuper",
                                description="Quiver Hecke superalgebras: rewriting, "
                                            "cyclotomic quotients and categorification checks.")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {"nf": "PBW normal form of a word", "dim": "graded dimension of R(beta)",
             "cyclo": "build R^Lambda(beta)", "simples": "self-dual simple modules",
             "character": "characters of R^Lambda(beta) and its simples",
             "oracle": "Freudenthal multiplicities (and brute-force dims with --beta)",
             "suite": "every applicable check"}
    for name in COMMANDS:
        if name == "verify":
            v = sub.add_parser("verify", parents=[common], help="run one family of checks")
            v.add_argument("check", choices=CHECKS)
        else:
            sub.add_parser(name, parents=[common], help=helps[name])
    return p


def main(argv=None):
    args = vars(_parser().parse_args(argv))
    config_path = args.pop("config")
    overrides = {k: v for k, v in args.items() if v is not None}
    command = overrides.get("command")
    try:
        raw = _read_toml(config_path) if config_path else {}
        cfg = build_config(raw, overrides)
    except ConfigError as e:
        sys.stderr.write(f"config error: {e}\n")
        return 2
    try:
        code, report = run(cfg)
    except ConfigError as e:
        sys.stderr.write(f"config error: {e}\n")
        return 2
    except ScaleGuardError as e:
        sys.stderr.write(f"{command}: refused by scale guard: {e}\n")
        return 3
    except (ValueError, ArithmeticError) as e:
        report = _canon({"command": command, "config": cfg.to_json(),
                         "error": f"{type(e).__name__}: {e}", "pass": False})
        code = 1
    text = dumps(report)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
