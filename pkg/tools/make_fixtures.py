"""Regenerate the JSON fixture corpus from the in-code constructors."""

from __future__ import annotations

from pathlib import Path

from triplekit import fixtures, io

OUT = Path(__file__).resolve().parents[1] / "src" / "triplekit" / "fixtures"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, make in fixtures.REGISTRY.items():
        path = OUT / f"{name}.json"
        io.write(make(), path)
        print(path.relative_to(OUT.parents[2]))


if __name__ == "__main__":
    main()
