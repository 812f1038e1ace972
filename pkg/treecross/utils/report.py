# treecross/utils/report.py
"""Report emitters.

CSV reports open with one `# {json}` provenance line and a mandatory header
row; JSON reports are one compact object per line with a "config" member.
Keys are written in insertion order and floats with repr, so identical runs
give identical bytes.
"""
import csv
import json

import click


def _json_line(obj):
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def provenance_line(provenance):
    return "# " + _json_line(provenance) + "\n"


def write_csv(stream, provenance, header, rows):
    stream.write(provenance_line(provenance))
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if isinstance(row, dict):
            row = [row[key] for key in header]
        writer.writerow([_cell(v) for v in row])


def write_json_lines(stream, provenance, objects):
    for obj in objects:
        stream.write(_json_line({**obj, "config": provenance}) + "\n")


class IntList(click.ParamType):
    """Comma separated integers, e.g. `--n-list 50,100,200`."""

    name = "int_list"

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return tuple(int(v) for v in value)
        try:
            items = tuple(int(part) for part in str(value).split(",") if part.strip())
        except ValueError:
            self.fail(f"{value!r} is not a comma separated list of integers", param, ctx)
        if not items:
            self.fail("the list is empty", param, ctx)
        return items


INT_LIST = IntList()


class Threads(click.ParamType):
    """A positive worker count or `auto` (physical cores)."""

    name = "threads"

    def convert(self, value, param, ctx):
        if isinstance(value, int) or value == "auto":
            return value
        text = str(value).strip().lower()
        if text == "auto":
            return "auto"
        try:
            count = int(text)
        except ValueError:
            self.fail(f"{value!r} is neither a positive integer nor 'auto'", param, ctx)
        if count < 1:
            self.fail(f"threads must be at least 1, got {count}", param, ctx)
        return count


THREADS = Threads()
