"""Sample-file readers and writers (CSV and 8-bit PCM WAV)."""
from __future__ import annotations

import wave
from pathlib import Path

from .audio import AudioSignal, min_resolution, resolution_to_amplitude
from .errors import RangeError, UsageError


def parse_csv(text: str, q: int | None = None) -> AudioSignal:
    """One signed integer per line, optional leading ``q=<int>`` header."""
    header_q = None
    samples = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("q="):
            if samples or header_q is not None:
                raise UsageError(f"line {lineno}: q= header must come first")
            header_q = int(line[2:])
            continue
        try:
            samples.append(int(line))
        except ValueError:
            raise UsageError(f"line {lineno}: not an integer: {line!r}") from None
    if not samples:
        raise UsageError("sample file holds no samples")
    q = q if q is not None else header_q
    if q is None:
        q = min_resolution(samples)
    return AudioSignal(tuple(samples), q)


def format_csv(signal: AudioSignal) -> str:
    return f"q={signal.q}\n" + "".join(f"{s}\n" for s in signal.samples)


def read_wav(path: str | Path) -> AudioSignal:
    with wave.open(str(path), "rb") as w:
        if w.getnchannels() != 1 or w.getsampwidth() != 1:
            raise UsageError("only mono unsigned 8-bit PCM WAV files are supported")
        frames = w.readframes(w.getnframes())
    if not frames:
        raise UsageError("WAV file holds no samples")
    return AudioSignal(tuple(resolution_to_amplitude(b, 8) for b in frames), 8)


def write_wav(path: str | Path, signal: AudioSignal, rate: int = 8000) -> None:
    if signal.q != 8:
        raise RangeError("WAV output requires q=8")
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(1)
        w.setframerate(rate)
        w.writeframes(bytes(s + 128 for s in signal.samples))


def load_signal(path: str | Path, q: int | None = None) -> AudioSignal:
    path = Path(path)
    if path.suffix.lower() == ".wav":
        sig = read_wav(path)
        return sig if q is None else sig.widen(q)
    return parse_csv(path.read_text(), q)
