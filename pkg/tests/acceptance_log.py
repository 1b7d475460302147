"""Shared record of acceptance outcomes, printed at the end of the pytest run."""

LINES: list[str] = []


def record(label: str, ok: bool, detail: str = "") -> str:
    line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else "")
    LINES.append(line)
    print(line)
    return line
