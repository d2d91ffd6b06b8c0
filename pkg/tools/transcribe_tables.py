"""One-off converter from LaTeX table arrays to the TSV fixtures.

Usage:  python3 tools/transcribe_tables.py SOURCE.md
"""

import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "src" / "egr5" / "data"


def element(tex: str) -> str:
    s = tex.strip().replace(" ", "")
    s = s.replace("\\epsilon", "e").replace("\\e", "e")
    s = re.sub(r"(\d)e", r"\1*e", s)
    return s or "0"


def factored(tex: str) -> str:
    s = tex.strip().replace(" ", "")
    s = s.replace("\\epsilon", "\\e")
    m = re.fullmatch(
        r"([+-])(?:\\e(?:\^\{?(-?\d+)\}?)?)?(?:2\^\{?(\d+)\}?)?(?:\((.*)\)\^\{3\})?", s
    )
    if m is None:
        raise ValueError(f"cannot read factored form {tex!r}")
    sign, k, two, cube = m.groups()
    parts = []
    if "\\e" in s:
        parts.append(f"e^{k if k is not None else 1}")
    if two:
        parts.append(f"2^{two}")
    if cube is not None:
        parts.append(f"({element(cube)})^3")
    if not parts:
        parts.append("(1)")
    return sign + "*".join(parts)


def kodaira(tex: str) -> str:
    s = tex.strip().replace(" ", "")
    m = re.fullmatch(r"I\^\*_\{?(\d+)\}?", s)
    if m:
        return f"I{m.group(1)}*"
    s = s.replace("^*", "*")
    if s not in {"II", "III", "IV", "II*", "III*", "IV*"}:
        raise ValueError(f"unknown type {tex!r}")
    return s


def arrays(text: str, header: str) -> list[str]:
    out = []
    for m in re.finditer(r"\\begin\{array\}\{" + header + r"\}(.*?)\\end\{array\}", text, re.S):
        out.append(m.group(1))
    return out


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__, file=sys.stderr)
        return 2
    text = Path(sys.argv[1]).read_text()

    (body1,) = arrays(text, "rlcrl")
    cells = [c.strip() for c in body1.replace("\\\\", "&").split("&")]
    rows1 = []
    # header: t, (blank), code, j, (blank)
    cells = cells[5:]
    for i in range(0, len(cells) - 4, 5):
        t, tf, code, j, jf = cells[i : i + 5]
        rows1.append([element(t), factored(tf), code, element(j), factored(jf)])

    rows2 = []
    for body in arrays(text, "cccccclrc"):
        for line in body.strip().split("\\\\"):
            line = line.strip()
            if not line or line.startswith("a_1"):
                continue
            c = [x.strip() for x in line.split("&")]
            rows2.append([element(x) for x in c[:5]] + [factored(c[5]), kodaira(c[6]), c[7], c[8]])

    with open(OUT / "table1.tsv", "w") as fh:
        fh.write("# t\tt_factored\tcode\tj\tj_factored\n")
        for r in rows1:
            fh.write("\t".join(r) + "\n")
    with open(OUT / "table2.tsv", "w") as fh:
        fh.write("# a1\ta2\ta3\ta4\ta6\tdelta\ttype\tf\tcode\n")
        for r in rows2:
            fh.write("\t".join(r) + "\n")
    print(f"table1: {len(rows1)} rows, table2: {len(rows2)} rows")
    return 0


if __name__ == "__main__":
    sys.exit(main())
