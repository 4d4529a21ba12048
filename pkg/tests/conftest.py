import pathlib
import time

import pytest

from signstream.landmarks import DEFAULT_LABELS, Vocabulary
from signstream.lstm import LstmClassifier, TrainConfig, train, training_accuracy
from signstream.synth import SynthSpec, generate_dataset

DATA_DIR = pathlib.Path(__file__).parent / "data"

# Epoch budget for the session-trained models. The default dataset
# converges well before this; kept comfortably under the 200-epoch cap.
TRAIN_EPOCHS = 40


@pytest.fixture(scope="session")
def vocab():
    return Vocabulary(labels=DEFAULT_LABELS)


@pytest.fixture(scope="session")
def small_spec(vocab):
    """Cheap generator settings for unit tests."""
    return SynthSpec(vocabulary=vocab, samples_per_class=4, frames=12,
                     landmark_count=8, seed=11)


@pytest.fixture(scope="session")
def small_dataset(small_spec):
    return generate_dataset(small_spec)


@pytest.fixture(scope="session")
def full_spec(vocab):
    """The default-size dataset the acceptance tests train on."""
    return SynthSpec(vocabulary=vocab, seed=0)


@pytest.fixture(scope="session")
def full_dataset(full_spec):
    return generate_dataset(full_spec)


class TrainedRun:
    """A finished training run plus the numbers the acceptance gate needs."""

    def __init__(self, model, history, wall_seconds, train_acc):
        self.model = model
        self.history = history
        self.wall_seconds = wall_seconds
        self.train_acc = train_acc


@pytest.fixture(scope="session")
def trained_run(full_spec, full_dataset):
    """Train once per session on the full dataset; reused everywhere."""
    model = LstmClassifier.initialized(full_spec.vocabulary,
                                       input_dim=full_spec.dim, seed=0)
    t0 = time.perf_counter()
    fitted, history = train(model, full_dataset,
                            TrainConfig(epochs=TRAIN_EPOCHS, seed=0))
    wall = time.perf_counter() - t0
    acc = training_accuracy(fitted, full_dataset)
    return TrainedRun(fitted, history, wall, acc)


@pytest.fixture(scope="session")
def trained_model(trained_run):
    return trained_run.model


@pytest.fixture(scope="session")
def golden_stream_path():
    return DATA_DIR / "golden_stream.jsonl"


class StubModel:
    """Scriptable stand-in for the classifier in service-layer tests."""

    def __init__(self, vocabulary, script=None, default=("blood", 0.9)):
        self.vocabulary = vocabulary
        self.input_dim = None
        self.script = list(script or [])
        self.default = default
        self.calls = 0

    def predict(self, matrix):
        self.calls += 1
        if self.script:
            return self.script.pop(0)
        return self.default


@pytest.fixture
def stub_model(vocab):
    return StubModel(vocab)
