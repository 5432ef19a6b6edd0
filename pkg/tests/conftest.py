import sys
from pathlib import Path

try:
    import ptscatter  # noqa: F401
except ImportError:  # running from a source tree without installation
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
