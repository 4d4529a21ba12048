"""Command-line entry points.

Verbs:
  serve    run the WebSocket engine
  record   run the engine while teeing inbound records to a file
  train    fit the sequence classifier and write model + report artifacts
  eval     score a trained model on a dataset directory
  bench    compare template-matching and network classifiers
  replay   feed a recorded stream through the pipeline deterministically
  synth    write a synthetic gesture dataset

Report-producing verbs drop delimited output and rendered figures side by
side under --out.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import dtw, replay as replay_mod, reports
from .config import ConfigError, load_config
from .evaluate import model_classifier, run_eval
from .landmarks import Dataset, load_dataset, save_dataset, split_dataset
from .lstm import LstmClassifier, TrainConfig, load_model, train
from .sentences import TableGenerator, load_sentence_table
from .server import EngineServer
from .synth import SynthSpec, generate_dataset

log = logging.getLogger(__name__)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="signstream",
                                     description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("serve", help="run the WebSocket engine")
    _add_common(p)
    p.add_argument("--port", type=int, help="listen port (overrides config)")
    p.add_argument("--host", help="listen address (overrides config)")
    p.add_argument("--model", help="trained model file (overrides config)")

    p = sub.add_parser("record", help="serve while appending inbound records to a file")
    _add_common(p)
    p.add_argument("--port", type=int, help="listen port (overrides config)")
    p.add_argument("--host", help="listen address (overrides config)")
    p.add_argument("--model", help="trained model file (overrides config)")
    p.add_argument("--out", required=True, help="record file to write")

    p = sub.add_parser("train", help="fit the classifier")
    _add_common(p)
    p.add_argument("--data", help="dataset directory; omitted = synthesize one in memory")
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--val-split", type=float, default=0.0,
                   help="held-out fraction tracked during training")
    p.add_argument("--out", default="artifacts/train", help="output directory")

    p = sub.add_parser("eval", help="score a model on a dataset")
    _add_common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", default="artifacts/eval", help="output directory")

    p = sub.add_parser("bench", help="compare classifiers on a dataset")
    _add_common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("-k", type=int, default=1, help="neighbour count")
    p.add_argument("--band", type=int, default=None, help="alignment band half-width")
    p.add_argument("--out", default="artifacts/bench", help="output directory")

    p = sub.add_parser("replay", help="run a recorded stream through the pipeline")
    _add_common(p)
    p.add_argument("stream", help="newline-delimited record file")
    p.add_argument("--model", required=True)
    p.add_argument("--speed", type=float, default=None,
                   help="real-time pacing multiplier; omitted = as fast as possible")
    p.add_argument("--out", help="write the outbound event log here instead of stdout")

    p = sub.add_parser("synth", help="write a synthetic gesture dataset")
    _add_common(p)
    p.add_argument("--out", required=True, help="dataset directory to create")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=60, help="samples per class")
    p.add_argument("--frames", type=int, default=30, help="frames per sample")

    return parser


def _engine_config(args):
    try:
        return load_config(args.config)
    except ConfigError as exc:
        raise SystemExit(f"signstream: {exc}")


def _load_generator(cfg):
    if cfg.sentences_path:
        return TableGenerator(load_sentence_table(cfg.sentences_path))
    return TableGenerator()


def _require_model(path_arg, cfg):
    path = path_arg or cfg.model_path
    if not path:
        raise SystemExit("signstream: no model given (use --model or the config file)")
    return load_model(path)


def cmd_serve(args, record_out=None) -> int:
    cfg = _engine_config(args)
    model = _require_model(args.model, cfg)
    server = EngineServer(
        model,
        config=cfg.session_config(),
        generator=_load_generator(cfg),
        host=args.host or cfg.host,
        port=args.port if args.port is not None else cfg.port,
        record_path=record_out,
    )
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        log.info("interrupted")
    return 0


def cmd_record(args) -> int:
    return cmd_serve(args, record_out=args.out)


def _load_data(path, cfg, seed: int) -> Dataset:
    if path:
        return load_dataset(path, cfg.vocabulary())
    log.info("no --data given, generating the default synthetic dataset")
    spec = SynthSpec(vocabulary=cfg.vocabulary(), seed=seed,
                     frames=cfg.window_capacity, landmark_count=cfg.landmark_count)
    return generate_dataset(spec)


def cmd_train(args) -> int:
    cfg = _engine_config(args)
    data = _load_data(args.data, cfg, args.seed)
    model = LstmClassifier.initialized(
        cfg.vocabulary(),
        input_dim=data.samples[0].matrix.shape[1],
        seed=args.seed,
    )
    tc = TrainConfig(epochs=args.epochs, seed=args.seed, val_split=args.val_split)
    model, history = train(model, data, tc)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    model_path = out / "model.txt"
    model.save(model_path)
    paths = reports.write_training_report(history, out)
    last = history[-1]
    print(f"epoch {last.epoch}: loss {last.loss:.4f} accuracy {last.accuracy:.4f}")
    for p in [model_path, *paths]:
        print(f"wrote {p}")
    return 0


def cmd_eval(args) -> int:
    cfg = _engine_config(args)
    model = _require_model(args.model, cfg)
    data = load_dataset(args.data, model.vocabulary)
    report = run_eval(model_classifier(model), data)
    paths = reports.write_eval_report(report, args.out)
    print(report.to_text())
    for p in paths:
        print(f"wrote {p}")
    return 0


def cmd_bench(args) -> int:
    cfg = _engine_config(args)
    model = _require_model(args.model, cfg)
    data = load_dataset(args.data, model.vocabulary)
    options = dtw.DtwOptions(band=args.band)
    report = dtw.benchmark(data, model, k=args.k, options=options)
    paths = reports.write_benchmark_report(report, args.out)
    print(report.to_text())
    for p in paths:
        print(f"wrote {p}")
    return 0


def cmd_replay(args) -> int:
    cfg = _engine_config(args)
    model = _require_model(args.model, cfg)
    events = replay_mod.replay_file(
        args.stream, model,
        config=cfg.session_config(),
        generator=_load_generator(cfg),
        speed=args.speed,
    )
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text("".join(line + "\n" for line in events))
        print(f"wrote {args.out} ({len(events)} events)")
    else:
        for line in events:
            print(line)
    return 0


def cmd_synth(args) -> int:
    cfg = _engine_config(args)
    spec = SynthSpec(vocabulary=cfg.vocabulary(), seed=args.seed,
                     samples_per_class=args.samples, frames=args.frames,
                     landmark_count=cfg.landmark_count)
    data = generate_dataset(spec)
    save_dataset(args.out, data)
    print(f"wrote {len(data.samples)} samples under {args.out}")
    return 0


_COMMANDS = {
    "serve": cmd_serve,
    "record": cmd_record,
    "train": cmd_train,
    "eval": cmd_eval,
    "bench": cmd_bench,
    "replay": cmd_replay,
    "synth": cmd_synth,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    return _COMMANDS[args.verb](args)


if __name__ == "__main__":
    sys.exit(main())
