#!/usr/bin/env python3
"""
Run the monobs CLI from a source checkout without installing the package.
"""

import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from monobs.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
