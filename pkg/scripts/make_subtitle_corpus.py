#!/usr/bin/env python3
"""Generate the subtitle parser corpus under tests/data/subtitles/.

Valid files must round-trip losslessly through canonical SRT; malformed files
carry their expected error class and line number in manifest.json.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
OUT = REPO / "tests" / "data" / "subtitles"

VALID: dict[str, str] = {}
MALFORMED: dict[str, tuple[str, str, int]] = {}  # file -> (format, error, line)

VALID["v01_basic.srt"] = (
    "1\n00:00:01,000 --> 00:00:03,500\nHello world\n\n"
    "2\n00:00:04,000 --> 00:00:06,000\nSecond cue\n\n"
    "3\n00:00:06,500 --> 00:00:09,000\nThird cue here\n"
)

VALID["v02_multiline.srt"] = (
    "1\n00:00:01,000 --> 00:00:04,000\nFirst line of text\nsecond line of text\n\n"
    "2\n00:00:05,000 --> 00:00:08,000\nAnother\nmulti\nline cue\n"
)

VALID["v03_html_tags.srt"] = (
    "1\n00:00:01,000 --> 00:00:03,000\n<i>Italic opening</i> and plain\n\n"
    "2\n00:00:04,000 --> 00:00:06,000\n<font color=\"red\">Colored</font> words <b>bold</b>\n"
)

VALID["v04_bom.srt"] = (
    "﻿1\n00:00:01,000 --> 00:00:02,500\nStarts with a byte order mark\n"
)

VALID["v05_crlf.srt"] = (
    "1\r\n00:00:01,000 --> 00:00:03,000\r\nCarriage return endings\r\n\r\n"
    "2\r\n00:00:04,000 --> 00:00:05,500\r\nSecond cue\r\n"
)

VALID["v06_out_of_order.srt"] = (
    "1\n00:00:10,000 --> 00:00:12,000\nLater cue listed first\n\n"
    "2\n00:00:01,000 --> 00:00:03,000\nEarlier cue listed second\n"
)

VALID["v07_overlapping.srt"] = (
    "1\n00:00:01,000 --> 00:00:10,000\nLong background cue\n\n"
    "2\n00:00:02,000 --> 00:00:04,000\nOverlapping foreground cue\n\n"
    "3\n00:00:03,000 --> 00:00:12,000\nAnother overlap\n"
)

VALID["v08_empty_text.srt"] = (
    "1\n00:00:01,000 --> 00:00:02,000\nKept cue\n\n"
    "2\n00:00:03,000 --> 00:00:04,000\n<i></i>\n\n"
    "3\n00:00:05,000 --> 00:00:06,000\n   \n\n"
    "4\n00:00:07,000 --> 00:00:08,000\nAlso kept\n"
)

VALID["v09_weird_sequence.srt"] = (
    "7\n00:00:01,000 --> 00:00:02,000\nSequence numbers lie\n\n"
    "3\n00:00:03,000 --> 00:00:04,000\nThey are ignored\n\n"
    "999\n00:00:05,000 --> 00:00:06,000\nAnd re-indexed\n"
)

VALID["v10_duplicate_start.srt"] = (
    "1\n00:00:02,000 --> 00:00:04,000\nSame start first\n\n"
    "2\n00:00:02,000 --> 00:00:03,000\nSame start second\n"
)

VALID["v11_long.srt"] = "\n".join(
    f"{i + 1}\n00:{i // 30:02d}:{(i * 2) % 60:02d},000 --> 00:{(i * 2 + 1) // 60 + i // 30:02d}:{(i * 2 + 1) % 60:02d},500\nGenerated cue number {i + 1}\n"
    for i in range(40)
)

VALID["v12_gap_runs.srt"] = (
    "1\n00:00:01,000 --> 00:00:02,000\nRun one cue one\n\n"
    "2\n00:00:02,200 --> 00:00:03,000\nRun one cue two\n\n"
    "3\n00:00:20,000 --> 00:00:21,000\nRun two cue one\n\n"
    "4\n00:00:21,500 --> 00:00:22,500\nRun two cue two\n\n"
    "5\n00:01:00,000 --> 00:01:02,000\nRun three cue one\n"
)

VALID["v13_no_sequence.srt"] = (
    "00:00:01,000 --> 00:00:02,000\nNo sequence numbers at all\n\n"
    "00:00:03,000 --> 00:00:04,000\nStill parses\n"
)

VALID["v14_extra_blanks.srt"] = (
    "\n\n1\n00:00:01,000 --> 00:00:02,000\nSurrounded by blank lines\n\n\n\n"
    "2\n00:00:03,000 --> 00:00:04,000\nSecond cue\n\n\n"
)

VALID["v15_basic.vtt"] = (
    "WEBVTT\n\n"
    "00:00:01.000 --> 00:00:03.500\nHello world\n\n"
    "00:00:04.000 --> 00:00:06.000\nSecond cue\n"
)

VALID["v16_no_hours.vtt"] = (
    "WEBVTT\n\n00:01.000 --> 00:02.000\nhi\n\n00:03.500 --> 00:05.250\nShort timestamps\n"
)

VALID["v17_note.vtt"] = (
    "WEBVTT\nKind: captions\nLanguage: en\n\n"
    "NOTE\nThis note block is skipped entirely\n\n"
    "00:00:01.000 --> 00:00:02.000\nAfter the note\n\n"
    "NOTE inline comment\n\n"
    "00:00:03.000 --> 00:00:04.000\nSecond cue\n"
)

VALID["v18_style.vtt"] = (
    "WEBVTT\n\n"
    "STYLE\n::cue { color: yellow }\n\n"
    "00:00:01.000 --> 00:00:02.000\nStyled elsewhere\n"
)

VALID["v19_settings.vtt"] = (
    "WEBVTT\n\n"
    "00:00:01.000 --> 00:00:03.000 align:start position:0%\nSettings ignored\n\n"
    "00:00:04.000 --> 00:00:06.000 line:63%\nMore settings\n"
)

VALID["v20_identifiers.vtt"] = (
    "WEBVTT\n\n"
    "intro\n00:00:01.000 --> 00:00:02.000\nNamed cue\n\n"
    "chapter-2\n00:00:03.000 --> 00:00:04.000\nAnother named cue\n"
)

VALID["v21_bom_header.vtt"] = (
    "﻿WEBVTT - extra header text\nX-TIMESTAMP-MAP=LOCAL:00:00:00.000\n\n"
    "00:00:01.000 --> 00:00:02.000\nBody cue\n"
)

VALID["v22_timestamp_tags.vtt"] = (
    "WEBVTT\n\n"
    "00:00:01.000 --> 00:00:04.000\n<c>Word</c> by <00:00:02.000>word karaoke\n"
)

VALID["v23_signature_only.vtt"] = "WEBVTT\n"

VALID["v24_hours.vtt"] = (
    "WEBVTT\n\n"
    "01:02:03.456 --> 01:02:05.000\nAn hour in\n\n"
    "10:00:00.000 --> 10:00:02.250\nTen hours in\n"
)

MALFORMED["m01_bad_minutes.srt"] = ("srt", "MalformedTimestamp", 2)
VALID_M01 = "1\n00:0:01,000 --> 00:00:02,000\nbad minutes field\n"

MALFORMED["m02_missing_arrow.srt"] = ("srt", "MalformedTimestamp", 2)
VALID_M02 = "1\n00:00:01,000 00:00:02,000\nno arrow\n"

MALFORMED["m03_inverted.srt"] = ("srt", "InvertedRange", 2)
VALID_M03 = "1\n00:00:05,000 --> 00:00:02,000\nbad\n"

MALFORMED["m04_dot_millis.srt"] = ("srt", "MalformedTimestamp", 2)
VALID_M04 = "1\n00:00:01.000 --> 00:00:02.000\ndot separator in srt\n"

MALFORMED["m05_no_millis.srt"] = ("srt", "MalformedTimestamp", 2)
VALID_M05 = "1\n00:00:01 --> 00:00:02\nmissing millis\n"

MALFORMED["m06_missing_signature.vtt"] = ("vtt", "MissingSignature", 1)
VALID_M06 = "no signature\n\n00:00:01.000 --> 00:00:02.000\nhello\n"

MALFORMED["m07_comma_millis.vtt"] = ("vtt", "MalformedTimestamp", 3)
VALID_M07 = "WEBVTT\n\n00:00:01,000 --> 00:00:02,000\ncomma separator in vtt\n"

MALFORMED["m08_inverted.vtt"] = ("vtt", "InvertedRange", 3)
VALID_M08 = "WEBVTT\n\n00:00:05.000 --> 00:00:02.000\nbad\n"

MALFORMED["m09_one_digit_hour.srt"] = ("srt", "MalformedTimestamp", 2)
VALID_M09 = "1\n0:00:01,000 --> 0:00:02,000\none digit hour\n"

MALFORMED["m10_text_before_timing.srt"] = ("srt", "MalformedTimestamp", 2)
VALID_M10 = "1\nhello there\n00:00:01,000 --> 00:00:02,000\n"

MALFORMED["m11_equal_times.srt"] = ("srt", "InvertedRange", 6)
VALID_M11 = (
    "1\n00:00:01,000 --> 00:00:02,000\nfine cue\n\n"
    "2\n00:00:03,000 --> 00:00:03,000\nzero duration\n"
)

MALFORMED["m12_truncated.vtt"] = ("vtt", "MalformedTimestamp", 3)
VALID_M12 = "WEBVTT\n\n00:01.000 -->\ntruncated timing\n"

MALFORMED_BODIES = {
    "m01_bad_minutes.srt": VALID_M01,
    "m02_missing_arrow.srt": VALID_M02,
    "m03_inverted.srt": VALID_M03,
    "m04_dot_millis.srt": VALID_M04,
    "m05_no_millis.srt": VALID_M05,
    "m06_missing_signature.vtt": VALID_M06,
    "m07_comma_millis.vtt": VALID_M07,
    "m08_inverted.vtt": VALID_M08,
    "m09_one_digit_hour.srt": VALID_M09,
    "m10_text_before_timing.srt": VALID_M10,
    "m11_equal_times.srt": VALID_M11,
    "m12_truncated.vtt": VALID_M12,
}


def main() -> None:
    valid_dir = OUT / "valid"
    malformed_dir = OUT / "malformed"
    valid_dir.mkdir(parents=True, exist_ok=True)
    malformed_dir.mkdir(parents=True, exist_ok=True)

    for name, body in VALID.items():
        (valid_dir / name).write_text(body, encoding="utf-8")
    for name, body in MALFORMED_BODIES.items():
        (malformed_dir / name).write_text(body, encoding="utf-8")

    manifest = {
        "valid": sorted(VALID),
        "malformed": [
            {"file": name, "format": fmt, "error": error, "line": line}
            for name, (fmt, error, line) in sorted(MALFORMED.items())
        ],
    }
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", "utf-8")
    total = len(VALID) + len(MALFORMED_BODIES)
    print(f"wrote {total} corpus files under {OUT}")
    if total < 30:
        sys.exit("corpus must hold at least 30 files")


if __name__ == "__main__":
    main()
