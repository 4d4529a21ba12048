import json

import pytest

from signstream.protocol import (
    E_PROTOCOL,
    E_SCHEMA,
    PROTOCOL_VERSION,
    Ack,
    Control,
    ErrorMsg,
    Frame,
    Hello,
    Keyword,
    Prediction,
    ProtocolError,
    Sentence,
    encode,
    parse_inbound,
)


def test_hello_round_trip():
    msg = Hello(protocol=1, landmarks=129, vocabulary=("a", "b"))
    line = encode(msg)
    assert parse_inbound(line) == msg
    record = json.loads(line)
    assert record["f"] == 129, "landmark count travels as wire field 'f'"


def test_hello_optional_fields_default():
    msg = parse_inbound('{"type":"hello"}')
    assert msg.protocol == PROTOCOL_VERSION
    assert msg.landmarks is None and msg.vocabulary is None


def test_frame_round_trip():
    msg = Frame(t=42, coords=(0.5, -1.25))
    assert parse_inbound(encode(msg)) == msg


def test_control_round_trip():
    for action in ("start", "stop", "generate", "reset"):
        assert parse_inbound(encode(Control(action))) == Control(action)


def test_unknown_action_is_protocol_error():
    with pytest.raises(ProtocolError) as e:
        parse_inbound('{"type":"control","action":"dance"}')
    assert e.value.code == E_PROTOCOL


def test_unknown_type_is_protocol_error():
    with pytest.raises(ProtocolError) as e:
        parse_inbound('{"type":"telemetry"}')
    assert e.value.code == E_PROTOCOL


def test_missing_type_is_schema_error():
    with pytest.raises(ProtocolError) as e:
        parse_inbound('{"t":1}')
    assert e.value.code == E_SCHEMA


def test_invalid_json_is_schema_error():
    with pytest.raises(ProtocolError) as e:
        parse_inbound("{nope")
    assert e.value.code == E_SCHEMA
    with pytest.raises(ProtocolError):
        parse_inbound("[1,2]")


@pytest.mark.parametrize("line", [
    '{"type":"frame","coords":[0.1]}',                 # missing t
    '{"type":"frame","t":"0","coords":[0.1]}',         # t not an int
    '{"type":"frame","t":true,"coords":[0.1]}',        # bool is not an int
    '{"type":"frame","t":0}',                          # missing coords
    '{"type":"frame","t":0,"coords":[]}',              # empty coords
    '{"type":"frame","t":0,"coords":["x"]}',           # non-numeric coord
    '{"type":"frame","t":0,"coords":[true]}',          # bool coord
    '{"type":"frame","t":0,"coords":[NaN]}',           # non-finite coord
    '{"type":"frame","t":0,"coords":[Infinity]}',
    '{"type":"control"}',                              # missing action
    '{"type":"hello","protocol":"one"}',
    '{"type":"hello","f":0}',
    '{"type":"hello","f":true}',
    '{"type":"hello","vocabulary":["a",3]}',
    '{"type":"hello","vocabulary":["a",""]}',
])
def test_schema_violations(line):
    with pytest.raises(ProtocolError) as e:
        parse_inbound(line)
    assert e.value.code == E_SCHEMA, line


def test_frame_accepts_integer_coords():
    msg = parse_inbound('{"type":"frame","t":0,"coords":[1,2]}')
    assert msg.coords == (1.0, 2.0)
    assert all(isinstance(v, float) for v in msg.coords)


def test_encoding_is_deterministic_and_compact():
    msg = Prediction(t=7, label="blood", confidence=0.25, window_full=True)
    line = encode(msg)
    assert line == encode(msg)
    assert " " not in line
    assert line == '{"type":"prediction","t":7,"label":"blood","confidence":0.25,"window_full":true}'


def test_encoding_keeps_non_ascii_text():
    line = encode(Sentence(t=1, text="ißue café", matched=False))
    assert "ißue café" in line


def test_outbound_encodings():
    assert encode(Keyword(t=3, label="blood", keywords=("blood",))) == \
        '{"type":"keyword","t":3,"label":"blood","keywords":["blood"]}'
    assert encode(ErrorMsg(code="schema", message="bad")) == \
        '{"type":"error","code":"schema","message":"bad"}'
    assert encode(Ack(of="start")) == '{"type":"ack","of":"start"}'


def test_encode_rejects_foreign_objects():
    with pytest.raises(TypeError):
        encode({"type": "hello"})
