#!/usr/bin/env python3
# -*- coding: utf-8 -*-
from __future__ import annotations

import sys

if sys.version_info < (3, 8):
    print(
        "The Python version " + ".".join(map(str, sys.version_info[:3])) + " is not supported.\n"
        "Use Python 3.8 or newer.",
        file=sys.stderr,
    )
    exit(1)

if __name__ == "__main__":
    try:
        from pycoium import main_cli
    except ImportError:
        from src.pycoium import main_cli

    exit(main_cli())
