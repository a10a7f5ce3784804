#!/usr/bin/env python3
# -*- coding: utf-8 -*-

if __name__ == "__main__":
    from . import main_cli as main

    exit(main())
