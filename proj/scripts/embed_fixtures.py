#!/usr/bin/env python3
"""Regenerate src/fixtures_data.inc from fixtures/*.json.

The JSON files are the source of truth for the reconstructed state and
measurement-operator matrices; the .inc is a compiled-in copy so the library
works without a data directory. A unit test guards against drift between the
two copies.
"""
import glob
import json
import os

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def fmt(x):
    return repr(float(x))


def main():
    entries = []
    for path in sorted(glob.glob(os.path.join(ROOT, "fixtures", "*.json"))):
        stem = os.path.splitext(os.path.basename(path))[0]
        with open(path) as f:
            j = json.load(f)
        n = j["dim"]
        re = [fmt(v) for row in j["re"] for v in row]
        im = [fmt(v) for row in j["im"] for v in row]
        assert len(re) == n * n and len(im) == n * n, stem
        entries.append((stem, n, re, im))

    out = os.path.join(ROOT, "src", "fixtures_data.inc")
    with open(out, "w") as f:
        f.write("// Generated by scripts/embed_fixtures.py from"
                " fixtures/*.json. Do not edit.\n")
        f.write("// clang-format off\n")
        f.write("namespace {\n")
        f.write("struct RawFixture {\n")
        f.write("  const char* name;\n")
        f.write("  int dim;\n")
        f.write("  double re[16];\n")
        f.write("  double im[16];\n")
        f.write("};\n")
        f.write("constexpr RawFixture kRawFixtures[] = {\n")
        for stem, n, re, im in entries:
            f.write('  {"%s", %d,\n' % (stem, n))
            f.write("   {%s},\n" % ", ".join(re))
            f.write("   {%s}},\n" % ", ".join(im))
        f.write("};\n")
        f.write("}  // namespace\n")
        f.write("// clang-format on\n")
    print("wrote", out, "with", len(entries), "fixtures")


if __name__ == "__main__":
    main()
