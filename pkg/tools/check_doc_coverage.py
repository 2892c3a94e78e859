"""Every ``# decision: ID`` tag in src/ must have a ``### ID`` entry in docs/notes.md."""

import pathlib
import re
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
TAG = re.compile(r"#\s*decision:\s*([A-Z0-9][A-Z0-9-]*)")
HEAD = re.compile(r"^###\s+([A-Z0-9][A-Z0-9-]*)\s*$", re.M)


def tags_in_source(src=ROOT / "src"):
    found = {}
    for path in sorted(src.rglob("*.py")):
        for lineno, line in enumerate(path.read_text().splitlines(), 1):
            for m in TAG.finditer(line):
                found.setdefault(m.group(1), []).append(f"{path.relative_to(ROOT)}:{lineno}")
    return found


def documented(notes=ROOT / "docs" / "notes.md"):
    return set(HEAD.findall(notes.read_text()))


def missing():
    docs = documented()
    return {tag: where for tag, where in tags_in_source().items() if tag not in docs}


def main():
    gaps = missing()
    for tag, where in sorted(gaps.items()):
        print(f"undocumented decision {tag} at {', '.join(where)}")
    if not gaps:
        print(f"{len(tags_in_source())} decisions documented")
    return 1 if gaps else 0


if __name__ == "__main__":
    sys.exit(main())
