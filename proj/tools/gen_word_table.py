#!/usr/bin/env python3
# Copyright 2026 The vaminer Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes src/word_table.inc: non-ASCII code point ranges matched by \\w.

Usage: tools/gen_word_table.py > src/word_table.inc
"""

import re
import sys
import unicodedata

WORD = re.compile(r"\w")

LICENSE = """\
// Copyright 2026 The vaminer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

"""


def ranges():
    out = []
    start = None
    for cp in range(0x80, 0x110000):
        ok = not 0xD800 <= cp <= 0xDFFF and WORD.match(chr(cp)) is not None
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, 0x10FFFF))
    return out


def main():
    rs = ranges()
    w = sys.stdout.write
    w(LICENSE)
    w("// Generated by tools/gen_word_table.py from Unicode %s (Python %s).\n"
      % (unicodedata.unidata_version, sys.version.split()[0]))
    w("// Do not edit.\n\n")
    w("// Sorted, disjoint [first, last] ranges of non-ASCII word characters.\n")
    w("constexpr char32_t kWordRanges[][2] = {\n")
    for i in range(0, len(rs), 4):
        w("    " + " ".join("{0x%X, 0x%X}," % r for r in rs[i:i + 4]) + "\n")
    w("};\n")


if __name__ == "__main__":
    main()
