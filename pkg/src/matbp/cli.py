"""Command-line interface.

Subcommands: ``sample-data``, ``gradcheck``, ``train``, ``forward`` and
``rerun``. Exit codes: 0 success, 1 gradient check failure, 2 usage or I/O
error. ``MATBP_SEED`` supplies the default seed when ``--seed`` is omitted.
"""

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import io
from ._validation import CostDomainError, ShapeError
from .backprop import full_gradient
from .cost import CostKind, flatten, unflatten
from .datagen import MixtureConfig, sample_training_set
from .network import Activation, NetworkSpec, forward, init_weights
from .oracles import FiniteDiffConfig, chain_rule_full_gradient, finite_difference_gradient
from .training import TrainConfig, gradient_descent

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _floats(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _csv(values):
    return ",".join(repr(float(v)) if isinstance(v, float) else str(v) for v in values)


def _resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get("MATBP_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"MATBP_SEED must be an integer, got {env!r}") from None


def _network(args):
    try:
        spec = NetworkSpec(args.dims, Activation.parse(args.activation))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return spec


def _cost(args, spec):
    kind = CostKind.parse(args.cost)
    if kind is CostKind.CROSS_ENTROPY and spec.activation.name != "logistic":
        raise UsageError(
            f"cross-entropy cost needs outputs in (0, 1), which only the logistic activation "
            f"guarantees; got activation {spec.activation}"
        )
    return kind


def _write_manifest(path, command, config, artifacts):
    items = {"command": command}
    items.update(config)
    items["artifacts"] = ",".join(str(a) for a in artifacts)
    io.write_manifest(path, items)


def cmd_sample_data(args):
    seed = _resolve_seed(args.seed)
    cfg = MixtureConfig(n=args.n, mu0=args.mu0, mu1=args.mu1, sigma_scale=args.sigma_scale, rng_seed=seed)
    D = sample_training_set(cfg)
    out = Path(args.out)
    manifest = Path(args.manifest) if args.manifest else out.with_name(out.name + ".manifest")
    io.write_dataset(out, D)
    config = {
        "n": cfg.n, "mu0": _csv(cfg.mu0), "mu1": _csv(cfg.mu1),
        "sigma-scale": repr(cfg.sigma_scale), "seed": seed, "out": out,
    }
    _write_manifest(manifest, "sample-data", config, [out])
    print(f"wrote {cfg.n} exemplars to {out}")
    return EXIT_OK


def _gradcheck_point(spec, rng, x, y):
    if x is None:
        x = (0.2, 0.8) if spec.dims[0] == 2 else tuple(rng.standard_normal(spec.dims[0]))
    if y is None:
        y = tuple(1.0 if j == 0 else 0.0 for j in range(spec.dims[-1]))
    x, y = np.asarray(x, float), np.asarray(y, float)
    if x.size != spec.dims[0] or y.size != spec.dims[-1]:
        raise UsageError(f"--x must have {spec.dims[0]} entries and --y {spec.dims[-1]}")
    return x, y


def cmd_gradcheck(args):
    spec = _network(args)
    kind = _cost(args, spec)
    seed = _resolve_seed(args.seed)
    rng = np.random.default_rng(seed)
    weights = init_weights(spec, rng)
    if args.weights:
        wv = io.read_weights(args.weights)
        if wv.dims != spec.dims:
            raise UsageError(f"weights file has dims {wv.dims}, --dims gives {spec.dims}")
        weights = unflatten(wv)
    x, y = _gradcheck_point(spec, rng, args.x, args.y)

    bp = full_gradient(spec, weights, kind, x, y)
    chain = chain_rule_full_gradient(spec, weights, kind, x, y)
    fd = finite_difference_gradient(spec, weights, kind, x, y, FiniteDiffConfig(args.eps, "central"))

    print(f"{'layer':>5}  {'bp_vs_chain':>12}  {'bp_vs_fd':>12}")
    offset = 0
    for l, (m, n) in enumerate(spec.weight_shapes, start=1):
        s = slice(offset, offset + m * n)
        offset += m * n
        print(f"{l:>5}  {np.max(np.abs(bp[s] - chain[s])):12.3e}  {np.max(np.abs(bp[s] - fd[s])):12.3e}")
    err_chain = float(np.max(np.abs(bp - chain)))
    err_fd = float(np.max(np.abs(bp - fd)))
    print(f"{'all':>5}  {err_chain:12.3e}  {err_fd:12.3e}")
    ok = err_chain <= args.tol_chain and err_fd <= args.tol_fd
    print(f"{'PASS' if ok else 'FAIL'} (thresholds: chain {args.tol_chain:g}, fd {args.tol_fd:g})")

    if args.manifest:
        config = {
            "dims": _csv(spec.dims), "activation": spec.activation, "cost": kind, "seed": seed,
            "x": _csv(x), "y": _csv(y), "eps": repr(args.eps),
            "tol-chain": repr(args.tol_chain), "tol-fd": repr(args.tol_fd),
        }
        if args.weights:
            config["weights"] = args.weights
        _write_manifest(args.manifest, "gradcheck", config, [])
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_train(args):
    spec = _network(args)
    kind = _cost(args, spec)
    seed = _resolve_seed(args.seed)
    D = io.read_dataset(args.data)
    try:
        D.check_conforms(spec)
        cfg = TrainConfig(
            alpha=args.alpha,
            iterations=args.iters,
            mode="batch" if args.batch_size is None else "stochastic",
            batch_size=args.batch_size,
            rng_seed=seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    init = io.read_weights(args.init) if args.init else flatten(init_weights(spec, seed))

    final, record = gradient_descent(spec, init, kind, D, cfg)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "metrics": out / "metrics.csv",
        "displacement": out / "displacement.csv",
        "gradients": out / "gradients.csv",
        "weights": out / "weights.txt",
    }
    io.write_metrics(paths["metrics"], record)
    io.write_wide(paths["displacement"], record.displacement, "dw")
    io.write_wide(paths["gradients"], record.gradients, "g")
    io.write_weights(paths["weights"], final)
    config = {
        "data": args.data, "dims": _csv(spec.dims), "activation": spec.activation, "cost": kind,
        "alpha": repr(args.alpha), "iters": args.iters, "seed": seed, "out-dir": out,
    }
    if args.batch_size is not None:
        config["batch-size"] = args.batch_size
    if args.init:
        config["init"] = args.init
    _write_manifest(out / "manifest.txt", "train", config, paths.values())
    print(
        f"iter 0: cost {record.cost[0]:.6f} accuracy {record.accuracy[0]:.3f}; "
        f"iter {len(record) - 1}: cost {record.cost[-1]:.6f} accuracy {record.accuracy[-1]:.3f}"
    )
    return EXIT_OK


def cmd_forward(args):
    spec = _network(args)
    if args.weights:
        wv = io.read_weights(args.weights)
        if wv.dims != spec.dims:
            raise UsageError(f"weights file has dims {wv.dims}, --dims gives {spec.dims}")
        weights = unflatten(wv)
    else:
        weights = init_weights(spec, _resolve_seed(args.seed))
    trace = forward(spec, weights, args.x)
    k = spec.n_layers

    rows = []
    for l in range(k + 1):
        a = trace.a[l]
        if l < k:
            rows += [("a_aug", l, i + 1, v) for i, v in enumerate(np.append(a, 1.0))]
        else:
            rows += [("a", l, i + 1, v) for i, v in enumerate(a)]
        if l >= 1:
            rows += [("z", l, i + 1, v) for i, v in enumerate(trace.z[l - 1])]
    rows.sort(key=lambda r: (r[1], r[0] != "z"))
    if args.format == "csv":
        print("quantity,layer,index,value")
        for q, l, i, v in rows:
            print(f"{q},{l},{i},{io.fmt(v)}")
    else:
        for q, l, i, v in rows:
            print(f"{q:>6} {l:>3} {i:>3} {v: .16e}")
    if args.manifest:
        config = {"dims": _csv(spec.dims), "activation": spec.activation, "x": _csv(args.x), "format": args.format}
        if args.weights:
            config["weights"] = args.weights
        else:
            config["seed"] = _resolve_seed(args.seed)
        _write_manifest(args.manifest, "forward", config, [])
    return EXIT_OK


def cmd_rerun(args):
    items = io.read_manifest(args.manifest)
    command = items.pop("command", None)
    items.pop("artifacts", None)
    if command not in ("sample-data", "gradcheck", "train", "forward"):
        raise UsageError(f"manifest names unknown command {command!r}")
    if args.out_dir is not None:
        if command == "train":
            items["out-dir"] = args.out_dir
        elif command == "sample-data":
            items["out"] = str(Path(args.out_dir) / Path(items["out"]).name)
    argv = [command]
    for key, value in items.items():
        argv.append(f"--{key}={value}")
    return main(argv)


def build_parser():
    parser = argparse.ArgumentParser(prog="matbp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def network_flags(p, cost=True):
        p.add_argument("--dims", type=_ints, default=(2, 3, 3, 2), help="layer widths n0,...,nk")
        p.add_argument("--activation", default="logistic")
        if cost:
            p.add_argument("--cost", default="quadratic", choices=["quadratic", "cross-entropy"])
        p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("sample-data", help="sample the two-class Gaussian mixture")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--mu0", type=_floats, default=(-1.0, -1.0))
    p.add_argument("--mu1", type=_floats, default=(1.0, 1.0))
    p.add_argument("--sigma-scale", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", default=None, help="default: <out>.manifest")
    p.set_defaults(func=cmd_sample_data)

    p = sub.add_parser("gradcheck", help="compare backprop with chain-rule and finite-difference gradients")
    network_flags(p)
    p.add_argument("--weights", default=None, help="weights file; default N(0,1) from --seed")
    p.add_argument("--x", type=_floats, default=None)
    p.add_argument("--y", type=_floats, default=None)
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--tol-chain", type=float, default=1e-12)
    p.add_argument("--tol-fd", type=float, default=1e-5)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_gradcheck)

    p = sub.add_parser("train", help="gradient descent on a dataset CSV")
    network_flags(p)
    p.add_argument("--data", required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--batch-size", type=int, default=None, help="minibatch size; omit for batch descent")
    p.add_argument("--init", default=None, help="initial weights file; default N(0,1) from --seed")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("forward", help="print every potential and activation for one input")
    network_flags(p, cost=False)
    p.add_argument("--weights", default=None)
    p.add_argument("--x", type=_floats, required=True)
    p.add_argument("--format", choices=["csv", "text"], default="csv")
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("rerun", help="repeat a run recorded in a manifest")
    p.add_argument("manifest")
    p.add_argument("--out-dir", default=None, help="write artifacts here instead")
    p.set_defaults(func=cmd_rerun)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, io.FormatError, CostDomainError, ShapeError) as exc:
        print(f"matbp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"matbp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
