"""From-scratch LSTM sequence classifier.

Single unidirectional LSTM layer over the window rows (oldest to newest),
a dense output layer on the final hidden state, and softmax over the label
vocabulary. Training is backpropagation through time with Adam; gradients
are verifiable against central finite differences.

Gate preactivations are stacked along one axis in the order
input, forget, candidate, output, so each step is a single matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .landmarks import Dataset, Vocabulary

DEFAULT_HIDDEN_SIZE = 64


class ModelFormatError(ValueError):
    """Model file rejected: version, shape, or truncation problem."""


class TrainingDivergedError(RuntimeError):
    """Loss became non-finite; carries the offending epoch index."""

    def __init__(self, epoch: int):
        super().__init__(f"training diverged (non-finite loss) at epoch {epoch}")
        self.epoch = epoch


def sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


class LstmClassifier:
    """LSTM parameters plus output layer over an ordered label vocabulary.

    Immutable during inference; `train` works on a private copy.
    """

    PARAM_NAMES = ("w_x", "w_h", "b", "w_out", "b_out")

    def __init__(self, vocabulary: Vocabulary, input_dim: int, hidden_size: int,
                 w_x: np.ndarray, w_h: np.ndarray, b: np.ndarray,
                 w_out: np.ndarray, b_out: np.ndarray):
        self.vocabulary = vocabulary
        self.input_dim = int(input_dim)
        self.hidden_size = int(hidden_size)
        self.w_x = np.asarray(w_x, dtype=np.float64)
        self.w_h = np.asarray(w_h, dtype=np.float64)
        self.b = np.asarray(b, dtype=np.float64)
        self.w_out = np.asarray(w_out, dtype=np.float64)
        self.b_out = np.asarray(b_out, dtype=np.float64)
        self._check_shapes()

    def _check_shapes(self):
        d, h, c = self.input_dim, self.hidden_size, self.class_count
        expected = {
            "w_x": (4 * h, d),
            "w_h": (4 * h, h),
            "b": (4 * h,),
            "w_out": (c, h),
            "b_out": (c,),
        }
        for name, shape in expected.items():
            tensor = getattr(self, name)
            if tensor.shape != shape:
                raise ValueError(f"{name}: expected shape {shape}, got {tensor.shape}")
            if not np.all(np.isfinite(tensor)):
                raise ValueError(f"{name}: non-finite parameter values")

    @property
    def class_count(self) -> int:
        return len(self.vocabulary)

    @classmethod
    def initialized(cls, vocabulary: Vocabulary, input_dim: int,
                    hidden_size: int = DEFAULT_HIDDEN_SIZE, seed: int = 0
                    ) -> "LstmClassifier":
        """Fan-in-scaled uniform init; forget-gate bias starts at 1."""
        rng = np.random.default_rng(seed)
        h, d, c = hidden_size, input_dim, len(vocabulary)

        def uniform(shape, fan_in):
            bound = 1.0 / np.sqrt(fan_in)
            return rng.uniform(-bound, bound, size=shape)

        b = np.zeros(4 * h)
        b[h:2 * h] = 1.0
        return cls(
            vocabulary, d, h,
            w_x=uniform((4 * h, d), d),
            w_h=uniform((4 * h, h), h),
            b=b,
            w_out=uniform((c, h), h),
            b_out=np.zeros(c),
        )

    @classmethod
    def zeros(cls, vocabulary: Vocabulary, input_dim: int,
              hidden_size: int = DEFAULT_HIDDEN_SIZE) -> "LstmClassifier":
        h, d, c = hidden_size, input_dim, len(vocabulary)
        return cls(vocabulary, d, h,
                   w_x=np.zeros((4 * h, d)), w_h=np.zeros((4 * h, h)),
                   b=np.zeros(4 * h), w_out=np.zeros((c, h)), b_out=np.zeros(c))

    def parameters(self) -> dict[str, np.ndarray]:
        """Live views of the parameter tensors, keyed by name."""
        return {name: getattr(self, name) for name in self.PARAM_NAMES}

    def copy(self) -> "LstmClassifier":
        return type(self)(self.vocabulary, self.input_dim, self.hidden_size,
                          *(getattr(self, n).copy() for n in self.PARAM_NAMES))

    # --- inference ----------------------------------------------------------

    def _check_input(self, matrix: np.ndarray) -> np.ndarray:
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] < 1:
            raise ValueError(f"input must be a T x D matrix, got shape {matrix.shape}")
        if matrix.shape[1] != self.input_dim:
            raise ValueError(
                f"input has {matrix.shape[1]} features, model expects {self.input_dim}"
            )
        return matrix

    def forward(self, matrix: np.ndarray) -> np.ndarray:
        """Class probability distribution for one window matrix."""
        matrix = self._check_input(matrix)
        h = self.hidden_size
        xp = matrix @ self.w_x.T + self.b
        hidden = np.zeros(h)
        cell = np.zeros(h)
        for t in range(matrix.shape[0]):
            z = xp[t] + hidden @ self.w_h.T
            gi = sigmoid(z[:h])
            gf = sigmoid(z[h:2 * h])
            gc = np.tanh(z[2 * h:3 * h])
            go = sigmoid(z[3 * h:])
            cell = gf * cell + gi * gc
            hidden = go * np.tanh(cell)
        logits = self.w_out @ hidden + self.b_out
        if not np.all(np.isfinite(logits)):
            raise ArithmeticError("non-finite activations; model parameters corrupted")
        return softmax(logits)

    def predict(self, matrix: np.ndarray) -> tuple[str, float]:
        """Argmax label and its probability; ties go to the lowest index."""
        probs = self.forward(matrix)
        idx = int(np.argmax(probs))
        return self.vocabulary.labels[idx], float(probs[idx])

    # --- batched forward/backward (training path) ---------------------------

    def _forward_batch(self, x: np.ndarray) -> dict:
        """Run the recurrence over a (B, T, D) batch, caching activations."""
        bsz, t_len, _ = x.shape
        h = self.hidden_size
        xp = x.reshape(bsz * t_len, -1) @ self.w_x.T
        xp = xp.reshape(bsz, t_len, 4 * h) + self.b
        gates = np.empty((t_len, bsz, 4 * h))
        cells = np.empty((t_len, bsz, h))
        tanh_cells = np.empty((t_len, bsz, h))
        hiddens = np.zeros((t_len + 1, bsz, h))   # hiddens[t] enters step t
        cell = np.zeros((bsz, h))
        for t in range(t_len):
            z = xp[:, t] + hiddens[t] @ self.w_h.T
            g = np.empty_like(z)
            g[:, :2 * h] = sigmoid(z[:, :2 * h])
            g[:, 2 * h:3 * h] = np.tanh(z[:, 2 * h:3 * h])
            g[:, 3 * h:] = sigmoid(z[:, 3 * h:])
            cell = g[:, h:2 * h] * cell + g[:, :h] * g[:, 2 * h:3 * h]
            gates[t] = g
            cells[t] = cell
            tanh_cells[t] = np.tanh(cell)
            hiddens[t + 1] = g[:, 3 * h:] * tanh_cells[t]
        logits = hiddens[-1] @ self.w_out.T + self.b_out
        return {"x": x, "gates": gates, "cells": cells, "tanh_cells": tanh_cells,
                "hiddens": hiddens, "logits": logits, "probs": softmax(logits)}

    def _loss_and_grads(self, x: np.ndarray, y: np.ndarray
                        ) -> tuple[float, np.ndarray, dict[str, np.ndarray]]:
        """Mean cross-entropy over the batch plus gradients for every tensor."""
        cache = self._forward_batch(x)
        bsz, t_len, _ = x.shape
        h = self.hidden_size
        probs = cache["probs"]
        eps = 1e-12
        loss = float(-np.mean(np.log(probs[np.arange(bsz), y] + eps)))

        dlogits = probs.copy()
        dlogits[np.arange(bsz), y] -= 1.0
        dlogits /= bsz

        hiddens = cache["hiddens"]
        grads = {
            "w_out": dlogits.T @ hiddens[-1],
            "b_out": dlogits.sum(axis=0),
            "w_x": np.zeros_like(self.w_x),
            "w_h": np.zeros_like(self.w_h),
            "b": np.zeros_like(self.b),
        }
        dhidden = dlogits @ self.w_out
        dcell = np.zeros((bsz, h))
        gates, cells, tanh_cells = cache["gates"], cache["cells"], cache["tanh_cells"]
        for t in range(t_len - 1, -1, -1):
            g = gates[t]
            gi, gf, gc, go = g[:, :h], g[:, h:2 * h], g[:, 2 * h:3 * h], g[:, 3 * h:]
            prev_cell = cells[t - 1] if t > 0 else np.zeros((bsz, h))
            dcell = dcell + dhidden * go * (1.0 - tanh_cells[t] ** 2)
            dz = np.empty((bsz, 4 * h))
            dz[:, :h] = dcell * gc * gi * (1.0 - gi)
            dz[:, h:2 * h] = dcell * prev_cell * gf * (1.0 - gf)
            dz[:, 2 * h:3 * h] = dcell * gi * (1.0 - gc ** 2)
            dz[:, 3 * h:] = dhidden * tanh_cells[t] * go * (1.0 - go)
            grads["w_x"] += dz.T @ x[:, t]
            grads["w_h"] += dz.T @ cache["hiddens"][t]
            grads["b"] += dz.sum(axis=0)
            dhidden = dz @ self.w_h
            dcell = dcell * gf
        return loss, probs, grads

    # --- serialization -------------------------------------------------------

    FORMAT_VERSION = "v1"

    def save(self, path) -> None:
        """Write a self-describing full-precision text model file."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [
            f"signstream-lstm {self.FORMAT_VERSION}",
            "vocabulary " + " ".join(self.vocabulary.labels),
            f"idle_label {self.vocabulary.idle_label}",
            f"dims {self.input_dim} {self.hidden_size} {self.class_count}",
        ]
        for name in self.PARAM_NAMES:
            tensor = getattr(self, name)
            rows = tensor if tensor.ndim == 2 else tensor[None, :]
            lines.append(f"tensor {name} " + " ".join(str(s) for s in tensor.shape))
            for row in rows:
                lines.append(" ".join(repr(v) for v in row.tolist()))
        path.write_text("\n".join(lines) + "\n")


def save_model(model: LstmClassifier, path) -> None:
    model.save(path)


def load_model(path) -> LstmClassifier:
    """Parse a model file; rejects unknown versions and inconsistent shapes."""
    path = Path(path)

    def fail(msg: str):
        raise ModelFormatError(f"{path}: {msg}")

    lines = path.read_text().splitlines()
    pos = 0

    def next_line() -> str:
        nonlocal pos
        if pos >= len(lines):
            fail("truncated file")
        line = lines[pos]
        pos += 1
        return line

    header = next_line().split()
    if len(header) != 2 or header[0] != "signstream-lstm":
        fail("not a signstream-lstm model file")
    if header[1] != LstmClassifier.FORMAT_VERSION:
        fail(f"unsupported version {header[1]!r} "
             f"(expected {LstmClassifier.FORMAT_VERSION!r})")
    vocab_line = next_line().split()
    if vocab_line[0] != "vocabulary" or len(vocab_line) < 2:
        fail("missing vocabulary line")
    idle_line = next_line().split()
    if idle_line[0] != "idle_label" or len(idle_line) != 2:
        fail("missing idle_label line")
    try:
        vocabulary = Vocabulary(tuple(vocab_line[1:]), idle_line[1])
    except ValueError as exc:
        fail(str(exc))
    dims_line = next_line().split()
    if dims_line[0] != "dims" or len(dims_line) != 4:
        fail("missing dims line")
    try:
        d, h, c = (int(v) for v in dims_line[1:])
    except ValueError:
        fail(f"bad dims line {' '.join(dims_line)!r}")
    if c != len(vocabulary):
        fail(f"dims say {c} classes, vocabulary has {len(vocabulary)}")

    tensors: dict[str, np.ndarray] = {}
    for name in LstmClassifier.PARAM_NAMES:
        head = next_line().split()
        if head[0] != "tensor" or head[1] != name:
            fail(f"expected tensor {name!r}, got {' '.join(head)!r}")
        shape = tuple(int(v) for v in head[2:])
        n_rows = shape[0] if len(shape) == 2 else 1
        n_cols = shape[-1] if len(shape) == 2 else shape[0]
        rows = []
        for i in range(n_rows):
            fields = next_line().split()
            if len(fields) != n_cols:
                fail(f"tensor {name} row {i}: expected {n_cols} values, got {len(fields)}")
            try:
                rows.append([float(v) for v in fields])
            except ValueError:
                fail(f"tensor {name} row {i}: non-numeric entry")
        tensors[name] = np.array(rows).reshape(shape)
    try:
        return LstmClassifier(vocabulary, d, h, **tensors)
    except ValueError as exc:
        fail(str(exc))


# --- training ----------------------------------------------------------------


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 200
    learning_rate: float = 1e-3
    batch_size: int = 16
    seed: int = 0
    val_split: float = 0.0
    beta1: float = 0.9
    beta2: float = 0.999
    adam_eps: float = 1e-8

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning rate must be > 0, got {self.learning_rate}")
        if self.batch_size < 1:
            raise ValueError(f"batch size must be >= 1, got {self.batch_size}")
        if not 0.0 <= self.val_split < 1.0:
            raise ValueError(f"val_split must be in [0, 1), got {self.val_split}")


@dataclass
class EpochStats:
    epoch: int
    loss: float
    accuracy: float
    val_loss: float | None = None
    val_accuracy: float | None = None


class _Adam:
    def __init__(self, params: dict[str, np.ndarray], config: TrainConfig):
        self.config = config
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}
        self.t = 0

    def step(self, params: dict[str, np.ndarray], grads: dict[str, np.ndarray]):
        cfg = self.config
        self.t += 1
        for key, grad in grads.items():
            self.m[key] = cfg.beta1 * self.m[key] + (1 - cfg.beta1) * grad
            self.v[key] = cfg.beta2 * self.v[key] + (1 - cfg.beta2) * grad * grad
            m_hat = self.m[key] / (1 - cfg.beta1 ** self.t)
            v_hat = self.v[key] / (1 - cfg.beta2 ** self.t)
            params[key] -= cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.adam_eps)


def _batch_eval(model: LstmClassifier, x: np.ndarray, y: np.ndarray,
                batch_size: int = 64) -> tuple[float, float]:
    losses, correct = 0.0, 0
    eps = 1e-12
    for start in range(0, x.shape[0], batch_size):
        xb, yb = x[start:start + batch_size], y[start:start + batch_size]
        probs = model._forward_batch(xb)["probs"]
        losses += float(-np.log(probs[np.arange(len(yb)), yb] + eps).sum())
        correct += int((probs.argmax(axis=1) == yb).sum())
    return losses / x.shape[0], correct / x.shape[0]


def train(model: LstmClassifier, dataset: Dataset, config: TrainConfig | None = None
          ) -> tuple[LstmClassifier, list[EpochStats]]:
    """Train a copy of the model; returns it with per-epoch (loss, accuracy).

    Mean cross-entropy minimized by Adam over seeded shuffled mini-batches.
    Fully deterministic for a fixed config seed. Raises TrainingDivergedError
    if the loss leaves the finite range.
    """
    config = config or TrainConfig()
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    if dataset.dim != model.input_dim:
        raise ValueError(
            f"dataset dim {dataset.dim} does not match model dim {model.input_dim}"
        )
    x_all, y_all = dataset.stacked()
    rng = np.random.default_rng(config.seed)

    x_val = y_val = None
    if config.val_split > 0.0:
        n_val = int(round(x_all.shape[0] * config.val_split))
        perm = rng.permutation(x_all.shape[0])
        val_idx, train_idx = perm[:n_val], perm[n_val:]
        x_val, y_val = x_all[val_idx], y_all[val_idx]
        x_all, y_all = x_all[train_idx], y_all[train_idx]
        if x_all.shape[0] == 0:
            raise ValueError("val_split leaves no training samples")

    model = model.copy()
    params = model.parameters()
    optimizer = _Adam(params, config)
    n = x_all.shape[0]
    history: list[EpochStats] = []
    for epoch in range(config.epochs):
        perm = rng.permutation(n)
        epoch_loss, correct = 0.0, 0
        for start in range(0, n, config.batch_size):
            idx = perm[start:start + config.batch_size]
            loss, probs, grads = model._loss_and_grads(x_all[idx], y_all[idx])
            if not np.isfinite(loss):
                raise TrainingDivergedError(epoch)
            optimizer.step(params, grads)
            epoch_loss += loss * len(idx)
            correct += int((probs.argmax(axis=1) == y_all[idx]).sum())
        stats = EpochStats(epoch, epoch_loss / n, correct / n)
        if x_val is not None and len(x_val):
            stats.val_loss, stats.val_accuracy = _batch_eval(model, x_val, y_val)
        history.append(stats)
    return model, history


def training_accuracy(model: LstmClassifier, dataset: Dataset) -> float:
    """Fraction of dataset samples the model classifies correctly."""
    x, y = dataset.stacked()
    _, acc = _batch_eval(model, x, y)
    return acc


# --- gradient verification ----------------------------------------------------


def gradient_check(model: LstmClassifier, sample_x: np.ndarray, sample_y: int,
                   epsilon: float = 1e-5, n_params: int = 200, seed: int = 0
                   ) -> float:
    """Max relative error of BPTT gradients vs central finite differences.

    Checks a random subset of parameters (at least ``n_params`` when the
    model has that many). Intended for small models; each probed parameter
    costs two forward passes.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    x = np.asarray(sample_x, dtype=np.float64)[None, :, :]
    y = np.array([sample_y])
    _, _, grads = model._loss_and_grads(x, y)

    params = model.parameters()
    sizes = {name: tensor.size for name, tensor in params.items()}
    total = sum(sizes.values())
    rng = np.random.default_rng(seed)
    chosen = rng.choice(total, size=min(n_params, total), replace=False)

    def loss_at() -> float:
        cache = model._forward_batch(x)
        return float(-np.log(cache["probs"][0, sample_y] + 1e-12))

    bounds = []
    offset = 0
    for name in model.PARAM_NAMES:
        bounds.append((offset, offset + sizes[name], name))
        offset += sizes[name]

    max_rel = 0.0
    for flat in chosen:
        lo, _, name = next(b for b in bounds if b[0] <= flat < b[1])
        tensor = params[name]
        idx = np.unravel_index(flat - lo, tensor.shape)
        original = tensor[idx]
        tensor[idx] = original + epsilon
        loss_plus = loss_at()
        tensor[idx] = original - epsilon
        loss_minus = loss_at()
        tensor[idx] = original
        numeric = (loss_plus - loss_minus) / (2.0 * epsilon)
        analytic = grads[name][idx]
        denom = max(abs(analytic), abs(numeric), 1e-8)
        max_rel = max(max_rel, abs(analytic - numeric) / denom)
    return max_rel
