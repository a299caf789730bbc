#!/usr/bin/env python3
"""Derive the error line of every negative/*.lua script from Lua 5.4's
`load` and write negative/expected_lines.txt as "<file> <line>" rows.

    pip install lupa
    python3 check_negative.py
"""
import pathlib
import re

from lupa import lua54


def error_line(source: str) -> int:
    lua = lua54.LuaRuntime()
    loader = lua.eval("function(s) local f, err = load(s, '=script') return err end")
    message = loader(source)
    if message is None:
        raise ValueError("script compiled without error")
    # Lua 5.4 reports a stray `break` at end of input but names the line of
    # the `break` itself in the message; that line is the useful one.
    named = re.search(r"break outside loop at line (\d+)", message)
    if named:
        return int(named.group(1))
    match = re.match(r"script:(\d+):", message)
    return int(match.group(1))


def main() -> None:
    here = pathlib.Path(__file__).resolve().parent / "negative"
    rows = []
    for script in sorted(here.glob("*.lua")):
        rows.append(f"{script.name} {error_line(script.read_text())}")
    (here / "expected_lines.txt").write_text("".join(r + "\n" for r in rows))
    print("\n".join(rows))


if __name__ == "__main__":
    main()
