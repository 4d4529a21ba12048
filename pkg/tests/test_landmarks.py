import numpy as np
import pytest

from signstream.landmarks import (
    DEFAULT_LABELS,
    Dataset,
    DatasetFormatError,
    FrameError,
    GestureSample,
    LandmarkFrame,
    SlidingWindow,
    Vocabulary,
    WindowNotFullError,
    load_dataset,
    load_sample,
    save_dataset,
    save_sample,
    split_dataset,
)


def test_default_vocabulary_has_eight_labels_with_idle_first():
    v = Vocabulary()
    assert len(v) == 8
    assert v.labels[0] == "not_signing"
    assert v.idle_label == "not_signing"
    assert v.signing_labels == DEFAULT_LABELS[1:]


def test_vocabulary_rejects_duplicates_and_missing_idle():
    with pytest.raises(ValueError):
        Vocabulary(labels=("a", "b", "a"), idle_label="a")
    with pytest.raises(ValueError):
        Vocabulary(labels=("a", "b"), idle_label="rest")
    with pytest.raises(ValueError):
        Vocabulary(labels=())


def test_vocabulary_index_and_membership():
    v = Vocabulary()
    assert v.index("blood") == 1
    assert "pain" in v
    assert "yawn" not in v
    with pytest.raises(KeyError):
        v.index("yawn")


def test_frame_accepts_flat_finite_coords_only():
    f = LandmarkFrame(120, [0.1, 0.2, 0.3, 0.4])
    assert f.dim == 4
    assert f.coords.dtype == np.float64
    with pytest.raises(FrameError):
        LandmarkFrame(0, [[0.1, 0.2]])
    with pytest.raises(FrameError):
        LandmarkFrame(0, [0.1, np.nan])
    with pytest.raises(FrameError):
        LandmarkFrame(0, [0.1, np.inf])


def test_window_fills_then_evicts_oldest():
    w = SlidingWindow(capacity=3)
    assert not w.full
    for i in range(3):
        full = w.push(LandmarkFrame(i, [float(i), 0.0]))
    assert full and w.full and len(w) == 3
    m = w.matrix()
    assert m.shape == (3, 2)
    assert m[:, 0].tolist() == [0.0, 1.0, 2.0]

    w.push(LandmarkFrame(3, [3.0, 0.0]))
    m = w.matrix()
    assert m[:, 0].tolist() == [1.0, 2.0, 3.0], "oldest frame must drop out"
    assert len(w) == 3


def test_window_matrix_requires_full():
    w = SlidingWindow(capacity=2)
    w.push(LandmarkFrame(0, [1.0]))
    with pytest.raises(WindowNotFullError):
        w.matrix()


def test_window_dimension_fixed_by_first_push():
    w = SlidingWindow(capacity=2)
    w.push(LandmarkFrame(0, [1.0, 2.0]))
    with pytest.raises(FrameError):
        w.push(LandmarkFrame(1, [1.0, 2.0, 3.0]))
    # clear keeps the established dimension
    w.clear()
    assert len(w) == 0 and w.dim == 2
    with pytest.raises(FrameError):
        w.push(LandmarkFrame(2, [1.0]))


def test_window_rejects_bad_capacity():
    with pytest.raises(ValueError):
        SlidingWindow(capacity=0)


def test_matrix_is_detached_from_later_pushes():
    w = SlidingWindow(capacity=2)
    w.push(LandmarkFrame(0, [1.0]))
    w.push(LandmarkFrame(1, [2.0]))
    m = w.matrix()
    w.push(LandmarkFrame(2, [3.0]))
    assert m[:, 0].tolist() == [1.0, 2.0]


def test_dataset_validates_labels_and_shapes(vocab):
    good = GestureSample("blood", np.zeros((4, 6)))
    with pytest.raises(ValueError):
        Dataset(vocab, [good, GestureSample("blood", np.zeros((5, 6)))])
    with pytest.raises(ValueError):
        Dataset(vocab, [GestureSample("sneeze", np.zeros((4, 6)))])


def test_dataset_stacked_and_counts(small_dataset, small_spec):
    x, y = small_dataset.stacked()
    n = len(small_spec.vocabulary) * small_spec.samples_per_class
    assert x.shape == (n, small_spec.frames, small_spec.dim)
    assert y.shape == (n,)
    assert set(y.tolist()) == set(range(len(small_spec.vocabulary)))
    counts = small_dataset.label_counts()
    assert all(c == small_spec.samples_per_class for c in counts.values())


def test_stacked_empty_dataset_raises(vocab):
    with pytest.raises(ValueError):
        Dataset(vocab, []).stacked()


def test_split_is_stratified_and_seeded(small_dataset):
    tr, te = split_dataset(small_dataset, test_fraction=0.25, seed=3)
    assert len(tr) + len(te) == len(small_dataset)
    for label, total in small_dataset.label_counts().items():
        assert te.label_counts()[label] == round(total * 0.25)
    tr2, te2 = split_dataset(small_dataset, test_fraction=0.25, seed=3)
    assert [s.label for s in te.samples] == [s.label for s in te2.samples]
    assert all(np.array_equal(a.matrix, b.matrix)
               for a, b in zip(te.samples, te2.samples))
    # different seed picks a different subset
    _, te3 = split_dataset(small_dataset, test_fraction=0.25, seed=4)
    assert any(not np.array_equal(a.matrix, b.matrix)
               for a, b in zip(te.samples, te3.samples))


def test_split_rejects_bad_fraction(small_dataset):
    with pytest.raises(ValueError):
        split_dataset(small_dataset, test_fraction=1.0)
    with pytest.raises(ValueError):
        split_dataset(small_dataset, test_fraction=-0.1)


def test_sample_file_round_trip_is_bit_identical(tmp_path):
    rng = np.random.default_rng(5)
    sample = GestureSample("pain", rng.normal(size=(7, 4)))
    path = tmp_path / "pain" / "0000.txt"
    save_sample(path, sample)
    back = load_sample(path)
    assert back.label == "pain"
    assert np.array_equal(back.matrix, sample.matrix), "repr round trip must be exact"


def test_dataset_directory_round_trip(tmp_path, small_dataset, vocab):
    save_dataset(tmp_path, small_dataset)
    back = load_dataset(tmp_path, vocab)
    assert back.label_counts() == small_dataset.label_counts()
    # loading groups by label directory; compare per-label sets exactly
    def by_label(ds):
        d = {}
        for s in ds.samples:
            d.setdefault(s.label, []).append(s.matrix)
        return d
    a, b = by_label(small_dataset), by_label(back)
    for label in a:
        assert len(a[label]) == len(b[label])
        for m1, m2 in zip(a[label], b[label]):
            assert np.array_equal(m1, m2)


def test_load_sample_errors_name_file_and_row(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("label blood\nshape 2 3\n1 2 3\n4 x 6\n")
    with pytest.raises(DatasetFormatError) as e:
        load_sample(p)
    assert "bad.txt" in str(e.value)
    assert "row 1" in str(e.value)


def test_load_sample_rejects_shape_mismatch(tmp_path):
    p = tmp_path / "short.txt"
    p.write_text("label blood\nshape 3 2\n1 2\n3 4\n")
    with pytest.raises(DatasetFormatError) as e:
        load_sample(p)
    assert "short.txt" in str(e.value)


def test_load_sample_rejects_unknown_label(tmp_path, vocab):
    p = tmp_path / "s.txt"
    p.write_text("label sneeze\nshape 1 2\n1 2\n")
    with pytest.raises(DatasetFormatError):
        load_sample(p, vocabulary=vocab)
    assert load_sample(p).label == "sneeze", "without a vocabulary any label loads"


def test_load_sample_rejects_non_finite(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("label blood\nshape 1 2\n1 inf\n")
    with pytest.raises(DatasetFormatError):
        load_sample(p)


def test_load_dataset_rejects_stray_label_directory(tmp_path, vocab):
    (tmp_path / "sneeze").mkdir()
    (tmp_path / "sneeze" / "0000.txt").write_text("label sneeze\nshape 1 2\n1 2\n")
    with pytest.raises(DatasetFormatError) as e:
        load_dataset(tmp_path, vocab)
    assert "sneeze" in str(e.value)


def test_load_dataset_missing_directory(tmp_path):
    with pytest.raises(DatasetFormatError):
        load_dataset(tmp_path / "nope")
