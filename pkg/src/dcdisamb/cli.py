"""Command-line interface: ``dcdisamb {stats,evaluate,train,predict,synth}``.

Exit status is 0 on success, 2 on usage errors and 1 on data or runtime
errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .classifier import TrainConfig, TrainingError, load_model, train_maxent
from .corpus import CorpusFormatError, Instance, Label, load_corpus, write_corpus
from .features import FEATURES, extract_features
from .lexicon import Lexicon, LexiconError, load_lexicon, match_connectives
from .pipeline import PER_CONNECTIVE_NOTE, prepare, run_evaluation, run_stats
from .report import Section, render, write_tables

DEFAULTS = {
    "folds": 10,
    "seed": 42,
    "l2": 0.01,
    "max_iter": 500,
    "tol": 1e-6,
    "min_freq": 20,
    "ablate": False,
    "stratify": False,
    "jobs": None,
    "figures": True,
}


class UsageError(Exception):
    pass


def _digest(path: Path) -> dict:
    files = sorted(p for p in path.iterdir() if p.is_file() and not p.name.startswith(".")) if path.is_dir() else [path]
    return {str(f): hashlib.sha256(f.read_bytes()).hexdigest() for f in files}


def _resolve(args, needed) -> dict:
    """Merge flags over the optional JSON config file over the defaults."""
    cfg = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config file {args.config}: {exc}")
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(cfg) - set(DEFAULTS) - {"corpus", "lexicon", "model", "out"}
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    out = {}
    for key in needed:
        val = getattr(args, key, None)
        if val is None:
            val = cfg.get(key, DEFAULTS.get(key))
        out[key] = val
    if "jobs" in out and out["jobs"] is None:
        out["jobs"] = os.cpu_count() or 1
    return out


def _require_path(opts, key):
    val = opts.get(key)
    if val is None or str(val).strip() == "":
        raise UsageError(f"--{key} is required and must not be empty")
    return Path(val)


def _train_config(opts) -> TrainConfig:
    try:
        return TrainConfig(l2=float(opts["l2"]), max_iterations=int(opts["max_iter"]), tol=float(opts["tol"]), seed=int(opts["seed"]))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc))


def _manifest(command, opts, inputs) -> dict:
    digests = {}
    for p in inputs:
        digests.update(_digest(Path(p)))
    config = {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(opts.items()) if k not in ("jobs", "out")}
    return {"command": command, "tool": "dcdisamb", "version": __version__, "config": config, "inputs": digests}


def _manifest_section(manifest) -> Section:
    s = Section("manifest").add("command", manifest["command"]).add("version", manifest["version"])
    for k, v in manifest["config"].items():
        s.add(f"config.{k}", v)
    for k, v in manifest["inputs"].items():
        s.add(f"sha256.{k}", v)
    return s


def _emit(sections, title, notes, opts, manifest, figures=None):
    text = render(sections + [_manifest_section(manifest)], title, notes)
    out = opts.get("out")
    if not out:
        sys.stdout.write(text)
        return
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.txt").write_text(text, encoding="utf-8")
    write_tables(sections, out)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    if figures is not None and opts.get("figures", True):
        figures(out)
    print(f"wrote report to {out}", file=sys.stderr)


def _load_inputs(opts):
    corpus_path = _require_path(opts, "corpus")
    lexicon_path = _require_path(opts, "lexicon")
    lexicon = load_lexicon(lexicon_path)
    docs = load_corpus(corpus_path)
    return corpus_path, lexicon_path, prepare(docs, lexicon)


def cmd_stats(args) -> int:
    opts = _resolve(args, ["corpus", "lexicon", "min_freq", "out", "figures"])
    corpus_path, lexicon_path, ds = _load_inputs(opts)
    result = run_stats(ds, int(opts["min_freq"]))
    manifest = _manifest("stats", opts, [corpus_path, lexicon_path])

    def figures(out):
        from .plotting import stats_figures

        stats_figures(result, out)

    _emit(result.sections(), "dcdisamb stats report", [], opts, manifest, figures)
    return 0


def cmd_evaluate(args) -> int:
    keys = ["corpus", "lexicon", "folds", "seed", "l2", "max_iter", "tol", "min_freq", "ablate", "stratify", "jobs", "out", "figures"]
    opts = _resolve(args, keys)
    k = int(opts["folds"])
    if k < 2:
        raise UsageError("--folds must be at least 2")
    config = _train_config(opts)
    corpus_path, lexicon_path, ds = _load_inputs(opts)
    result = run_evaluation(
        ds, k, config, bool(opts["ablate"]), bool(opts["stratify"]), int(opts["jobs"]), int(opts["min_freq"])
    )
    manifest = _manifest("evaluate", opts, [corpus_path, lexicon_path])

    def figures(out):
        from .plotting import evaluation_figures

        evaluation_figures(result, out)

    _emit(result.sections(), "dcdisamb evaluate report", [PER_CONNECTIVE_NOTE], opts, manifest, figures)
    return 0


def cmd_train(args) -> int:
    opts = _resolve(args, ["corpus", "lexicon", "model", "seed", "l2", "max_iter", "tol"])
    model_path = _require_path(opts, "model")
    config = _train_config(opts)
    corpus_path, lexicon_path, ds = _load_inputs(opts)
    if not ds.instances:
        raise TrainingError("corpus yields no instances")
    model = train_maxent(ds.vectors, ds.labels, config, FEATURES)
    model.lexicon = tuple(ds.lexicon.sorted_forms())
    model.save(model_path)
    manifest = _manifest("train", opts, [corpus_path, lexicon_path])
    manifest["model"] = {
        "path": str(model_path),
        "sha256": hashlib.sha256(model_path.read_bytes()).hexdigest(),
        "columns": model.index.n_columns,
        "iterations": model.iterations,
        "converged": model.converged,
    }
    Path(str(model_path) + ".manifest.json").write_text(json.dumps(manifest, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(
        f"trained on {len(ds.instances)} instances, {model.index.n_columns} columns, "
        f"{model.iterations} iterations (converged={model.converged}); wrote {model_path}",
        file=sys.stderr,
    )
    return 0


def cmd_predict(args) -> int:
    opts = _resolve(args, ["corpus", "model", "lexicon", "out"])
    model_path = _require_path(opts, "model")
    corpus_path = _require_path(opts, "corpus")
    model = load_model(model_path)
    if opts.get("lexicon"):
        lexicon = load_lexicon(opts["lexicon"])
    elif model.lexicon:
        lexicon = Lexicon.from_forms(model.lexicon)
    else:
        raise UsageError("model has no stored lexicon; pass --lexicon")

    skipped = []
    docs = load_corpus(corpus_path, on_error=skipped.append)
    for err in skipped:
        print(f"skipped: {err}", file=sys.stderr)

    predicted = {}
    n_cand = n_pos = 0
    for doc in docs:
        for si, sent in enumerate(doc.sentences):
            matches = match_connectives(sent.tokens, lexicon)
            n_cand += len(matches)
            if not matches:
                continue
            vectors = [
                extract_features(Instance(doc.doc_id, si, m.span, " ".join(m.form), Label.NON_DISCOURSE), sent)
                for m in matches
            ]
            spans = []
            for m, (label, p) in zip(matches, model.predict_many(vectors)):
                if label is Label.DISCOURSE:
                    spans.append((m.span[0], m.span[1], p))
            n_pos += len(spans)
            predicted[(doc.doc_id, si)] = spans

    out = opts.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            write_corpus(docs, fh, predicted)
    else:
        write_corpus(docs, sys.stdout, predicted)
    n_sent = sum(len(d.sentences) for d in docs)
    print(
        f"sentences={n_sent} candidates={n_cand} discourse={n_pos} skipped_records={len(skipped)}",
        file=sys.stderr,
    )
    return 0


def cmd_synth(args) -> int:
    from .synthetic import write_synthetic

    corpus, lexicon = write_synthetic(args.out_dir, args.sentences, args.seed, args.noise)
    print(corpus)
    print(lexicon)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcdisamb", description="Discourse connective disambiguation toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model=False, train=False, evaluate=False):
        p.add_argument("--corpus", help="corpus file or directory")
        p.add_argument("--lexicon", help="connective lexicon file")
        p.add_argument("--config", help="JSON file with option values (flags win)")
        if model:
            p.add_argument("--model", help="model file")
        if train:
            p.add_argument("--seed", type=int)
            p.add_argument("--l2", type=float)
            p.add_argument("--max-iter", dest="max_iter", type=int)
            p.add_argument("--tol", type=float)
        if evaluate:
            p.add_argument("--folds", type=int)
            p.add_argument("--ablate", action="store_true", default=None)
            p.add_argument("--stratify", action="store_true", default=None)
            p.add_argument("--jobs", type=int)

    p = sub.add_parser("stats", help="dataset size, frequency distribution and connective entropy")
    common(p)
    p.add_argument("--min-freq", dest="min_freq", type=int)
    p.add_argument("--out", help="output directory (report, TSV tables, figures)")
    p.add_argument("--no-figures", dest="figures", action="store_false", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("evaluate", help="cross-validated evaluation, feature analysis, per-connective report")
    common(p, train=True, evaluate=True)
    p.add_argument("--min-freq", dest="min_freq", type=int)
    p.add_argument("--out", help="output directory (report, TSV tables, figures)")
    p.add_argument("--no-figures", dest="figures", action="store_false", default=None)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("train", help="train on the whole corpus and save the model")
    common(p, model=True, train=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="annotate a corpus with predicted discourse connectives")
    common(p, model=True)
    p.add_argument("--out", help="output corpus file (default: stdout)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("synth", help="write a synthetic corpus and lexicon")
    p.add_argument("out_dir")
    p.add_argument("--sentences", type=int, default=240)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=0.02)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"dcdisamb: error: {exc}", file=sys.stderr)
        return 2
    except (CorpusFormatError, LexiconError, TrainingError, ValueError, OSError) as exc:
        print(f"dcdisamb: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
