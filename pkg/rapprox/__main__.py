# rapprox/__main__.py
from __future__ import annotations

import sys

from rapprox.cli.main import main

sys.exit(main())
