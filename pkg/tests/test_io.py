import wave

import pytest

from qaudio.audio import AudioSignal
from qaudio.errors import RangeError, UsageError
from qaudio.io import format_csv, load_signal, parse_csv, read_wav, write_wav


def test_csv_with_header():
    sig = parse_csv("q=4\n1\n-2\n\n7\n")
    assert sig == AudioSignal((1, -2, 7), 4)


def test_csv_infers_q():
    assert parse_csv("3\n-2\n").q == 3
    assert parse_csv("0\n").q == 1


def test_csv_errors():
    with pytest.raises(UsageError):
        parse_csv("")
    with pytest.raises(UsageError):
        parse_csv("q=3\n")
    with pytest.raises(UsageError):
        parse_csv("1\nfoo\n")
    with pytest.raises(RangeError, match=r"indices \[1\]"):
        parse_csv("q=2\n1\n2\n")


def test_csv_round_trip():
    sig = AudioSignal((3, -4, 0), 3)
    assert parse_csv(format_csv(sig)) == sig


def test_wav_u8(tmp_path):
    path = tmp_path / "a.wav"
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(1)
        w.setframerate(8000)
        w.writeframes(bytes([0, 128, 255, 130]))
    sig = read_wav(path)
    assert sig == AudioSignal((-128, 0, 127, 2), 8)
    assert load_signal(path) == sig
    out = tmp_path / "b.wav"
    write_wav(out, sig)
    assert read_wav(out) == sig


def test_wav_rejects_16_bit(tmp_path):
    path = tmp_path / "a.wav"
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(8000)
        w.writeframes(b"\x00\x00")
    with pytest.raises(UsageError):
        read_wav(path)
